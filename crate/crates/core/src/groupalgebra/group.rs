use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ffield::{Elem, FieldSpec};
use crate::groupalgebra::algebra::{SparseVec, StructAlgebra};
use crate::groupalgebra::blocks::primitive_idempotents;
use crate::permgroup::perm::lcm;
use crate::permgroup::{valuation, PermGroup};

/// Largest group whose full group algebra is materialised.
pub const GROUP_ALGEBRA_CAP: usize = 512;

fn multiplicative_order(p: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    let mut x = p % n;
    let mut k = 1;
    while x != 1 {
        x = (x as u128 * p as u128 % n as u128) as u64;
        k += 1;
    }
    k
}

/// Degree `m` such that GF(p^m) splits the center of kG.
///
/// The first choice is the order of `p` modulo the p'-part of the exponent. When
/// that field is too large to represent, the center is decomposed over GF(p)
/// and `m` is the lcm of the residue field degrees of its local factors.
pub fn splitting_degree(g: &PermGroup, p: u64) -> Result<u32> {
    let e = g.exponent();
    let e_prime = e / crate::permgroup::p_part(e, p);
    let m = multiplicative_order(p, e_prime);
    if m <= 16 && FieldSpec::new(p, m as u32).is_ok() {
        return Ok(m as u32);
    }
    let prime = FieldSpec::new(p, 1)?;
    let z = center_of_group(g, &prime).algebra();
    let split = primitive_idempotents(&z, crate::groupalgebra::DEFAULT_SEED, false)?;
    let m = split.iter().fold(1u64, |acc, s| lcm(acc, s.residue_degree as u64));
    match u32::try_from(m).ok().filter(|&m| FieldSpec::new(p, m).is_ok()) {
        Some(m) => Ok(m),
        None => Err(Error::SplitFieldTooSmall {
            p: p as u32,
            m: m.min(u32::MAX as u64) as u32,
        }),
    }
}

/// kG over GF(p^m) with `m` from [`splitting_degree`]. Basis element `i` is the
/// group element with index `i`.
pub fn group_algebra(g: &PermGroup, p: u64) -> Result<StructAlgebra> {
    let m = splitting_degree(g, p)?;
    group_algebra_over(g, &FieldSpec::new(p, m)?)
}

pub fn group_algebra_over(g: &PermGroup, field: &FieldSpec) -> Result<StructAlgebra> {
    let n = g.order();
    if n > GROUP_ALGEBRA_CAP {
        return Err(Error::OrderCapExceeded { cap: GROUP_ALGEBRA_CAP });
    }
    let labels = g.elements().map(|x| x.to_string()).collect();
    let mut unit = vec![0; n];
    unit[0] = field.one();
    StructAlgebra::from_fn(field.clone(), labels, unit, |i, j| {
        vec![(g.mul_index(i, j) as u32, field.one())]
    })
}

/// Z(kG) in the basis of class sums, classes in the group's class order.
#[derive(Clone, Debug)]
pub struct CenterBasis {
    field: FieldSpec,
    class_sizes: Vec<usize>,
    sc: Vec<SparseVec>,
}

impl CenterBasis {
    pub fn dim(&self) -> usize {
        self.class_sizes.len()
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn class_sizes(&self) -> &[usize] {
        &self.class_sizes
    }

    /// `Ĉ_i Ĉ_j` in class-sum coordinates.
    pub fn product(&self, i: usize, j: usize) -> &[(u32, Elem)] {
        &self.sc[i * self.dim() + j]
    }

    /// Coordinates of `Ĉ_c` in kG.
    pub fn class_sum(&self, g: &PermGroup, c: usize) -> Vec<Elem> {
        let mut v = vec![0; g.order()];
        for &x in g.class_members(c) {
            v[x as usize] = self.field.one();
        }
        v
    }

    /// The center as a commutative algebra in its own right.
    pub fn algebra(&self) -> StructAlgebra {
        let r = self.dim();
        let labels = (0..r).map(|c| format!("C{c}")).collect();
        let mut unit = vec![0; r];
        unit[0] = self.field.one();
        StructAlgebra::new(self.field.clone(), labels, self.sc.clone(), unit).expect("valid shape")
    }

    /// Expands class-sum coordinates into kG coordinates.
    pub fn to_group_algebra(&self, g: &PermGroup, coords: &[Elem]) -> Vec<Elem> {
        (0..g.order()).map(|x| coords[g.class_of(x)]).collect()
    }
}

/// Class-sum structure constants: for each class `k` with representative `z`,
/// every `x` contributes to the pair `(class(x), class(x^-1 z))`.
pub fn center_of_group(g: &PermGroup, field: &FieldSpec) -> CenterBasis {
    let r = g.num_classes();
    let n = g.order();
    let inv: Vec<usize> = (0..n).map(|x| g.inverse_index(x)).collect();
    let p = field.p() as u64;
    let columns: Vec<Vec<u64>> = g
        .classes()
        .par_iter()
        .map(|ck| {
            let z = ck.rep_index;
            let mut counts = vec![0u64; r * r];
            for (x, &xi) in inv.iter().enumerate() {
                let y = g.mul_index(xi, z);
                counts[g.class_of(x) * r + g.class_of(y)] += 1;
            }
            counts
        })
        .collect();
    let mut sc = vec![Vec::new(); r * r];
    for (k, counts) in columns.iter().enumerate() {
        for (ij, &c) in counts.iter().enumerate() {
            let c = c % p;
            if c != 0 {
                sc[ij].push((k as u32, field.from_int(c as i64)));
            }
        }
    }
    CenterBasis {
        field: field.clone(),
        class_sizes: g.classes().iter().map(|c| c.size).collect(),
        sc,
    }
}

/// The center of a group algebra built by [`group_algebra`].
pub fn center(a: &StructAlgebra, g: &PermGroup) -> Result<CenterBasis> {
    if a.dim() != g.order() {
        return Err(Error::Shape(format!(
            "algebra of dimension {} is not kG for |G| = {}",
            a.dim(),
            g.order()
        )));
    }
    Ok(center_of_group(g, a.field()))
}

/// ν_p(|C_G(x)|) for each class.
pub(crate) fn centralizer_valuations(g: &PermGroup, p: u64) -> Vec<u32> {
    g.classes()
        .iter()
        .map(|c| valuation(c.centralizer_order as u64, p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroup::named::{alternating, by_name, cyclic, klein_four, symmetric};

    #[test]
    fn splitting_degree_examples() {
        assert_eq!(splitting_degree(&symmetric(3), 3).unwrap(), 1);
        assert_eq!(splitting_degree(&cyclic(3), 2).unwrap(), 2);
        assert_eq!(splitting_degree(&cyclic(2), 2).unwrap(), 1);
        assert_eq!(splitting_degree(&cyclic(7), 2).unwrap(), 3);
    }

    #[test]
    fn group_algebra_examples() {
        let a = group_algebra(&cyclic(2), 2).unwrap();
        assert_eq!(a.dim(), 2);
        assert_eq!(a.product(1, 1), &[(0, 1)]);
        let s3 = group_algebra(&symmetric(3), 3).unwrap();
        assert_eq!((s3.dim(), s3.field().m()), (6, 1));
        assert!(s3.check_associative(0, 0) && s3.check_unit());
        let c3 = group_algebra(&cyclic(3), 2).unwrap();
        assert_eq!((c3.dim(), c3.field().order()), (3, 4));
    }

    #[test]
    fn center_examples() {
        for (g, dim) in [(symmetric(3), 3), (klein_four(), 4), (alternating(4), 4)] {
            let a = group_algebra(&g, 2).unwrap();
            let z = center(&a, &g).unwrap();
            assert_eq!(z.dim(), dim);
            let za = z.algebra();
            assert!(za.is_commutative() && za.check_associative(0, 0) && za.check_unit());
            // class sums multiply in kG as the structure constants say
            for i in 0..z.dim() {
                for j in 0..z.dim() {
                    let prod = a.mul(&z.class_sum(&g, i), &z.class_sum(&g, j));
                    let mut coords = vec![0; z.dim()];
                    for &(k, c) in z.product(i, j) {
                        coords[k as usize] = c;
                    }
                    assert_eq!(prod, z.to_group_algebra(&g, &coords));
                }
            }
        }
        let q8 = by_name("Q8").unwrap();
        assert_eq!(center_of_group(&q8, &FieldSpec::new(3, 1).unwrap()).dim(), 5);
    }

    #[test]
    fn oversized_group_algebra_is_refused() {
        let s6 = symmetric(6);
        assert!(matches!(group_algebra(&s6, 2), Err(Error::OrderCapExceeded { .. })));
    }
}
