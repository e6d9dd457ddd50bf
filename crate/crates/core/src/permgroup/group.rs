use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::permgroup::perm::{compose, compose_into, lcm, Perm};

/// Largest group enumerated unless the caller raises the cap.
pub const DEFAULT_ELEMENT_CAP: usize = 1 << 21;

const EMPTY: u32 = u32::MAX;

/// Flat store of enumerated elements with an open-addressing index on the image
/// lists.
struct ElementTable {
    degree: usize,
    data: Vec<u16>,
    len: usize,
    slots: Vec<u32>,
}

fn hash_images(img: &[u16]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &x in img {
        h = (h.rotate_left(5) ^ x as u64).wrapping_mul(0x5851_f42d_4c95_7f2d);
    }
    h ^ (h >> 29)
}

impl ElementTable {
    fn new(degree: usize) -> Self {
        ElementTable {
            degree,
            data: Vec::new(),
            len: 0,
            slots: vec![EMPTY; 64],
        }
    }

    #[inline]
    fn get(&self, i: usize) -> &[u16] {
        &self.data[i * self.degree..(i + 1) * self.degree]
    }

    fn find(&self, img: &[u16]) -> Option<usize> {
        let mask = self.slots.len() - 1;
        let mut s = hash_images(img) as usize & mask;
        loop {
            let v = self.slots[s];
            if v == EMPTY {
                return None;
            }
            if self.get(v as usize) == img {
                return Some(v as usize);
            }
            s = (s + 1) & mask;
        }
    }

    fn insert(&mut self, img: &[u16]) -> (usize, bool) {
        if let Some(i) = self.find(img) {
            return (i, false);
        }
        if 2 * (self.len + 1) > self.slots.len() {
            self.grow();
        }
        let idx = self.len;
        self.data.extend_from_slice(img);
        self.len += 1;
        self.place(idx);
        (idx, true)
    }

    fn place(&mut self, idx: usize) {
        let mask = self.slots.len() - 1;
        let mut s = hash_images(self.get(idx)) as usize & mask;
        while self.slots[s] != EMPTY {
            s = (s + 1) & mask;
        }
        self.slots[s] = idx as u32;
    }

    fn grow(&mut self) {
        self.slots = vec![EMPTY; self.slots.len() * 2];
        for i in 0..self.len {
            self.place(i);
        }
    }
}

/// Conjugacy class summary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjClass {
    pub representative: Perm,
    /// Index of the representative in the group's enumeration order.
    pub rep_index: usize,
    pub size: usize,
    pub centralizer_order: usize,
}

struct ClassData {
    classes: Vec<ConjClass>,
    class_of: Vec<u32>,
    members: Vec<Vec<u32>>,
}

/// A permutation group with all elements enumerated.
///
/// Element 0 is the identity; the rest follow breadth-first order of right
/// multiplication by the generators, so indices are deterministic.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    table: ElementTable,
    classes: OnceLock<ClassData>,
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        Self::with_cap(degree, generators, DEFAULT_ELEMENT_CAP)
    }

    /// Enumerates the group, failing once more than `cap` elements are found.
    pub fn with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<Self> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidPermutation(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let mut table = ElementTable::new(degree);
        table.insert(Perm::identity(degree).images());
        let mut buf = Vec::with_capacity(degree);
        let mut i = 0;
        while i < table.len {
            for g in &generators {
                compose_into(table.get(i), g.images(), &mut buf);
                let (_, fresh) = table.insert(&buf);
                if fresh && table.len > cap {
                    return Err(Error::OrderCapExceeded { cap });
                }
            }
            i += 1;
        }
        Ok(PermGroup {
            degree,
            generators,
            table,
            classes: OnceLock::new(),
        })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_generators(degree, Vec::new()).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.table.len
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn element(&self, i: usize) -> Perm {
        Perm::from_raw(self.table.get(i).to_vec())
    }

    pub fn element_images(&self, i: usize) -> &[u16] {
        self.table.get(i)
    }

    pub fn elements(&self) -> impl Iterator<Item = Perm> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    pub fn index_of(&self, g: &Perm) -> Option<usize> {
        if g.degree() != self.degree {
            return None;
        }
        self.table.find(g.images())
    }

    pub fn index_of_images(&self, img: &[u16]) -> Option<usize> {
        self.table.find(img)
    }

    pub fn contains(&self, g: &Perm) -> bool {
        self.index_of(g).is_some()
    }

    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|a| gens.iter().all(|b| a.commutes_with(b)))
    }

    /// Index of `elements[a] * elements[b]`.
    pub fn mul_index(&self, a: usize, b: usize) -> usize {
        let prod = compose(self.table.get(a), self.table.get(b));
        self.table.find(&prod).expect("closed under products")
    }

    fn mul_index_buf(&self, a: usize, b: usize, buf: &mut Vec<u16>) -> usize {
        compose_into(self.table.get(a), self.table.get(b), buf);
        self.table.find(buf).expect("closed under products")
    }

    pub fn inverse_index(&self, a: usize) -> usize {
        let img = self.table.get(a);
        let mut inv = vec![0u16; self.degree];
        for (i, &x) in img.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        self.table.find(&inv).expect("closed under inverses")
    }

    pub fn element_order(&self, i: usize) -> u64 {
        Perm::from_raw(self.table.get(i).to_vec()).order()
    }

    /// Least common multiple of element orders.
    pub fn exponent(&self) -> u64 {
        self.classes()
            .iter()
            .fold(1, |acc, c| lcm(acc, c.representative.order()))
    }

    fn class_data(&self) -> &ClassData {
        self.classes.get_or_init(|| self.compute_classes())
    }

    fn compute_classes(&self) -> ClassData {
        let n = self.order();
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], mut x: u32) -> u32 {
            while parent[x as usize] != x {
                let up = parent[parent[x as usize] as usize];
                parent[x as usize] = up;
                x = up;
            }
            x
        }
        let gen_inv: Vec<Vec<u16>> = self.generators.iter().map(|g| g.inverse().images().to_vec()).collect();
        let mut buf = Vec::with_capacity(self.degree);
        let mut tmp = Vec::with_capacity(self.degree);
        for x in 0..n {
            for (g, ginv) in self.generators.iter().zip(&gen_inv) {
                compose_into(ginv, self.table.get(x), &mut tmp);
                compose_into(&tmp, g.images(), &mut buf);
                let y = self.table.find(&buf).expect("closed under conjugation");
                let (rx, ry) = (find(&mut parent, x as u32), find(&mut parent, y as u32));
                if rx != ry {
                    // smaller index becomes the root, so roots are least members
                    let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
                    parent[hi as usize] = lo;
                }
            }
        }
        let mut class_of = vec![0u32; n];
        let mut root_to_class: std::collections::HashMap<u32, u32> = Default::default();
        let mut members: Vec<Vec<u32>> = Vec::new();
        for x in 0..n {
            let r = find(&mut parent, x as u32);
            let c = *root_to_class.entry(r).or_insert_with(|| {
                members.push(Vec::new());
                (members.len() - 1) as u32
            });
            class_of[x] = c;
            members[c as usize].push(x as u32);
        }
        let classes = members
            .iter()
            .map(|m| ConjClass {
                representative: self.element(m[0] as usize),
                rep_index: m[0] as usize,
                size: m.len(),
                centralizer_order: n / m.len(),
            })
            .collect();
        ClassData {
            classes,
            class_of,
            members,
        }
    }

    /// Conjugacy classes ordered by representative, each representative being
    /// the least member in enumeration order.
    pub fn classes(&self) -> &[ConjClass] {
        &self.class_data().classes
    }

    pub fn num_classes(&self) -> usize {
        self.classes().len()
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.class_data().class_of[i] as usize
    }

    pub fn class_members(&self, c: usize) -> &[u32] {
        &self.class_data().members[c]
    }

    /// Indices of the class-wise inverse: `inverse_class[c]` contains the inverses
    /// of the members of class `c`.
    pub fn inverse_classes(&self) -> Vec<usize> {
        self.classes()
            .iter()
            .map(|c| self.class_of(self.inverse_index(c.rep_index)))
            .collect()
    }

    /// Elements commuting with element `i`, by full scan.
    pub fn centralizer_indices(&self, i: usize) -> Vec<usize> {
        let g = self.table.get(i);
        (0..self.order())
            .filter(|&x| {
                let h = self.table.get(x);
                h.iter().zip(g).all(|(&hx, &gx)| g[hx as usize] == h[gx as usize])
            })
            .collect()
    }

    /// Elements commuting with every listed element.
    pub fn centralizer_of_set(&self, set: &[usize]) -> Vec<usize> {
        (0..self.order())
            .filter(|&x| {
                let h = self.table.get(x);
                set.iter().all(|&s| {
                    let g = self.table.get(s);
                    h.iter().zip(g).all(|(&hx, &gx)| g[hx as usize] == h[gx as usize])
                })
            })
            .collect()
    }

    pub fn centralizer(&self, g: &Perm) -> Result<PermGroup> {
        let i = self.index_of(g).ok_or(Error::NotAMember)?;
        Ok(self.subgroup_from_indices(&self.centralizer_indices(i)))
    }

    /// Closure of the given elements under multiplication.
    pub fn closure(&self, gens: &[usize]) -> IndexSubgroup {
        let mut s = IndexSubgroup::trivial(self.order());
        for &g in gens {
            s.extend(self, g);
        }
        s
    }

    /// Builds a standalone group from a subgroup given by element indices.
    /// Generators are picked greedily in index order.
    pub fn subgroup_from_indices(&self, elems: &[usize]) -> PermGroup {
        let sub = self.index_subgroup(elems);
        let gens = sub.gens.iter().map(|&g| self.element(g as usize)).collect();
        PermGroup::from_generators(self.degree, gens).expect("subgroup is below the cap")
    }

    /// Indexed subgroup for a set of element indices that is closed under products.
    pub fn index_subgroup(&self, elems: &[usize]) -> IndexSubgroup {
        let mut s = IndexSubgroup::trivial(self.order());
        for &e in elems {
            if !s.member[e] {
                s.extend(self, e);
            }
        }
        debug_assert_eq!(s.elems.len(), elems.len(), "index set is a subgroup");
        s
    }

    /// Elements `x` with `x^-1 H x = H` for the subgroup given by generating indices.
    pub fn normalizer_indices(&self, member: &[bool], gens: &[usize]) -> Vec<usize> {
        let mut buf = Vec::with_capacity(self.degree);
        let mut tmp = Vec::with_capacity(self.degree);
        let mut inv = vec![0u16; self.degree];
        (0..self.order())
            .filter(|&x| {
                let xi = self.table.get(x);
                for (i, &v) in xi.iter().enumerate() {
                    inv[v as usize] = i as u16;
                }
                gens.iter().all(|&h| {
                    compose_into(&inv, self.table.get(h), &mut tmp);
                    compose_into(&tmp, xi, &mut buf);
                    self.table.find(&buf).is_some_and(|c| member[c])
                })
            })
            .collect()
    }

    pub fn normalizer(&self, h: &PermGroup) -> Result<PermGroup> {
        let sub = self.embed(h)?;
        let n = self.normalizer_indices(&sub.member, &sub.gens_usize());
        Ok(self.subgroup_from_indices(&n))
    }

    /// Maps a group on the same points into this group's indexing.
    pub fn embed(&self, h: &PermGroup) -> Result<IndexSubgroup> {
        if h.degree != self.degree {
            return Err(Error::NotASubgroup);
        }
        let gens: Vec<usize> = h
            .generators
            .iter()
            .map(|g| self.index_of(g).ok_or(Error::NotASubgroup))
            .collect::<Result<_>>()?;
        Ok(self.closure(&gens))
    }

    /// A Sylow p-subgroup grown one step at a time inside successive normalizers,
    /// as element indices.
    pub fn sylow_indices(&self, p: u64) -> IndexSubgroup {
        let target = p_part(self.order() as u64, p) as usize;
        let mut sub = IndexSubgroup::trivial(self.order());
        let mut buf = Vec::with_capacity(self.degree);
        while sub.elems.len() < target {
            let norm = self.normalizer_indices(&sub.member, &sub.gens_usize());
            let step = norm.iter().find_map(|&x| {
                if sub.member[x] {
                    return None;
                }
                // order of x modulo the current subgroup
                let mut y = x;
                let mut j = 1u64;
                while !sub.member[y] {
                    y = self.mul_index_buf(y, x, &mut buf);
                    j += 1;
                }
                if j % p != 0 {
                    return None;
                }
                let mut z = 0;
                for _ in 0..j / p {
                    z = self.mul_index_buf(z, x, &mut buf);
                }
                Some(z)
            });
            let z = step.expect("a p-subgroup below Sylow order grows inside its normalizer");
            sub.extend(self, z);
        }
        sub
    }

    pub fn sylow_subgroup(&self, p: u64) -> PermGroup {
        let sub = self.sylow_indices(p);
        let gens = sub.gens.iter().map(|&g| self.element(g as usize)).collect();
        PermGroup::from_generators(self.degree, gens).expect("subgroup is below the cap")
    }

    /// `d` with `H / [H,H]H^p ≅ (C_p)^d` for the subgroup `sub`.
    pub fn p_rank_of(&self, sub: &IndexSubgroup, p: u64) -> u32 {
        let order = sub.elems.len() as u64;
        if order % p != 0 {
            return 0;
        }
        let gens = sub.gens_usize();
        let mut buf = Vec::with_capacity(self.degree);
        let mut seeds = Vec::new();
        for (a, &x) in gens.iter().enumerate() {
            let mut pw = 0;
            for _ in 0..p {
                pw = self.mul_index_buf(pw, x, &mut buf);
            }
            seeds.push(pw);
            for &y in &gens[a + 1..] {
                let xy = self.mul_index_buf(x, y, &mut buf);
                let yx = self.mul_index_buf(y, x, &mut buf);
                seeds.push(self.mul_index_buf(xy, self.inverse_index(yx), &mut buf));
            }
        }
        let mut n = IndexSubgroup::trivial(self.order());
        for s in seeds {
            if !n.member[s] {
                n.extend(self, s);
            }
        }
        // normal closure under conjugation by the generators of H
        let inv_gens: Vec<usize> = gens.iter().map(|&h| self.inverse_index(h)).collect();
        let mut k = 0;
        while k < n.gens.len() {
            let w = n.gens[k] as usize;
            for (&h, &hi) in gens.iter().zip(&inv_gens) {
                let t = self.mul_index_buf(hi, w, &mut buf);
                let c = self.mul_index_buf(t, h, &mut buf);
                if !n.member[c] {
                    n.extend(self, c);
                }
            }
            k += 1;
        }
        let index = order / n.elems.len() as u64;
        let mut d = 0;
        let mut q = 1;
        while q < index {
            q *= p;
            d += 1;
        }
        debug_assert_eq!(q, index, "quotient is an elementary abelian p-group");
        d
    }

    /// Rank of the largest elementary abelian p-quotient of this group.
    pub fn p_rank_abelianization(&self, p: u64) -> u32 {
        let all = IndexSubgroup::whole(self);
        self.p_rank_of(&all, p)
    }
}

/// A subgroup of an enumerated group, held as element indices.
#[derive(Clone, Debug)]
pub struct IndexSubgroup {
    pub elems: Vec<u32>,
    pub member: Vec<bool>,
    pub gens: Vec<u32>,
}

impl IndexSubgroup {
    pub fn trivial(ambient_order: usize) -> Self {
        let mut member = vec![false; ambient_order];
        member[0] = true;
        IndexSubgroup {
            elems: vec![0],
            member,
            gens: Vec::new(),
        }
    }

    pub fn whole(g: &PermGroup) -> Self {
        let gens = g
            .generators
            .iter()
            .map(|x| g.index_of(x).expect("generator is a member") as u32)
            .collect();
        IndexSubgroup {
            elems: (0..g.order() as u32).collect(),
            member: vec![true; g.order()],
            gens,
        }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn gens_usize(&self) -> Vec<usize> {
        self.gens.iter().map(|&g| g as usize).collect()
    }

    /// Adds a generator and closes under right multiplication.
    pub fn extend(&mut self, g: &PermGroup, new_gen: usize) {
        if self.member[new_gen] && !self.gens.is_empty() {
            return;
        }
        self.gens.push(new_gen as u32);
        let mut buf = Vec::with_capacity(g.degree);
        let old = self.elems.len();
        // old elements only need the new generator; new elements need all of them
        for i in 0..old {
            let y = g.mul_index_buf(self.elems[i] as usize, new_gen, &mut buf);
            if !self.member[y] {
                self.member[y] = true;
                self.elems.push(y as u32);
            }
        }
        let mut i = old;
        while i < self.elems.len() {
            let x = self.elems[i] as usize;
            for k in 0..self.gens.len() {
                let y = g.mul_index_buf(x, self.gens[k] as usize, &mut buf);
                if !self.member[y] {
                    self.member[y] = true;
                    self.elems.push(y as u32);
                }
            }
            i += 1;
        }
    }
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n > 0 && n % p == 0 {
        n /= p;
        out *= p;
    }
    out
}

/// p-adic valuation.
pub fn valuation(mut n: u64, p: u64) -> u32 {
    let mut v = 0;
    while n > 0 && n % p == 0 {
        n /= p;
        v += 1;
    }
    v
}

/// `G × H` acting on the disjoint union of the point sets.
pub fn direct_product(g: &PermGroup, h: &PermGroup) -> Result<PermGroup> {
    direct_product_capped(g, h, DEFAULT_ELEMENT_CAP)
}

pub fn direct_product_capped(g: &PermGroup, h: &PermGroup, cap: usize) -> Result<PermGroup> {
    let (dg, dh) = (g.degree(), h.degree());
    let n = dg + dh;
    let mut gens = Vec::new();
    for x in g.generators() {
        let mut img: Vec<usize> = x.images().iter().map(|&v| v as usize).collect();
        img.extend(dg..n);
        gens.push(Perm::new(img)?);
    }
    for y in h.generators() {
        let mut img: Vec<usize> = (0..dg).collect();
        img.extend(y.images().iter().map(|&v| v as usize + dg));
        gens.push(Perm::new(img)?);
    }
    PermGroup::with_cap(n, gens, cap)
}
