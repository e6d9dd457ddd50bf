use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffield::{Elem, FieldSpec};

/// Sparse vector: `(index, coefficient)` sorted by index, no zero coefficients.
pub type SparseVec = Vec<(u32, Elem)>;

/// A finite-dimensional associative algebra given by structure constants
/// `e_i * e_j = sum_k c^k_ij e_k`.
#[derive(Clone, Debug)]
pub struct StructAlgebra {
    field: FieldSpec,
    labels: Vec<String>,
    table: Vec<SparseVec>,
    unit: Vec<Elem>,
}

pub(crate) fn normalize(field: &FieldSpec, mut v: Vec<(u32, Elem)>) -> SparseVec {
    v.sort_unstable_by_key(|e| e.0);
    let mut out: SparseVec = Vec::with_capacity(v.len());
    for (i, c) in v {
        match out.last_mut() {
            Some(last) if last.0 == i => last.1 = field.add(last.1, c),
            _ => out.push((i, c)),
        }
    }
    out.retain(|e| e.1 != 0);
    out
}

pub(crate) fn to_sparse(v: &[Elem]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|e| *e.1 != 0)
        .map(|(i, &c)| (i as u32, c))
        .collect()
}

impl StructAlgebra {
    /// `table[i * dim + j]` holds the product `e_i * e_j`.
    pub fn new(field: FieldSpec, labels: Vec<String>, table: Vec<SparseVec>, unit: Vec<Elem>) -> Result<Self> {
        let n = labels.len();
        if table.len() != n * n || unit.len() != n {
            return Err(Error::Shape(format!(
                "dimension {n} needs {} products and a unit of length {n}",
                n * n
            )));
        }
        if table.iter().flatten().any(|&(k, _)| k as usize >= n) {
            return Err(Error::Shape("product index out of range".into()));
        }
        let table = table.into_iter().map(|v| normalize(&field, v)).collect();
        Ok(StructAlgebra {
            field,
            labels,
            table,
            unit,
        })
    }

    /// Builds the table by calling `prod(i, j)` for every basis pair.
    pub fn from_fn(
        field: FieldSpec,
        labels: Vec<String>,
        unit: Vec<Elem>,
        mut prod: impl FnMut(usize, usize) -> SparseVec,
    ) -> Result<Self> {
        let n = labels.len();
        let mut table = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                table.push(prod(i, j));
            }
        }
        Self::new(field, labels, table, unit)
    }

    /// The one-dimensional algebra `k`.
    pub fn ground(field: &FieldSpec) -> Self {
        StructAlgebra {
            field: field.clone(),
            labels: vec!["1".into()],
            table: vec![vec![(0, field.one())]],
            unit: vec![field.one()],
        }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    #[inline]
    pub fn product(&self, i: usize, j: usize) -> &[(u32, Elem)] {
        &self.table[i * self.dim() + j]
    }

    /// Structure constant `c^k_ij`.
    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> Elem {
        self.product(i, j)
            .iter()
            .find(|e| e.0 as usize == k)
            .map_or(0, |e| e.1)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![0; self.dim()];
        v[i] = self.field.one();
        v
    }

    /// Product of two dense coordinate vectors.
    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        let k = &self.field;
        let mut out = vec![0; self.dim()];
        let bs = to_sparse(b);
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for &(j, y) in &bs {
                let c = k.mul(x, y);
                for &(t, s) in self.product(i, j as usize) {
                    out[t as usize] = k.add(out[t as usize], k.mul(c, s));
                }
            }
        }
        out
    }

    /// Accumulates `c * e_i * v` into `out`.
    pub(crate) fn add_left_basis_mul(&self, out: &mut [Elem], c: Elem, i: usize, v: &[(u32, Elem)]) {
        let k = &self.field;
        for &(j, y) in v {
            let cy = k.mul(c, y);
            for &(t, s) in self.product(i, j as usize) {
                out[t as usize] = k.add(out[t as usize], k.mul(cy, s));
            }
        }
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// Two-sided unit law on every basis element.
    pub fn check_unit(&self) -> bool {
        (0..self.dim()).all(|i| {
            let e = self.basis_vector(i);
            self.mul(&self.unit, &e) == e && self.mul(&e, &self.unit) == e
        })
    }

    /// Associativity on all basis triples for `dim <= 64`, otherwise on
    /// `samples` random triples drawn from a generator seeded with `seed`.
    pub fn check_associative(&self, samples: usize, seed: u64) -> bool {
        let n = self.dim();
        let triple = |i: usize, j: usize, l: usize| {
            let ij = self.product(i, j);
            let mut left = vec![0; n];
            for &(t, c) in ij {
                self.add_left_basis_mul(&mut left, c, t as usize, &[(l as u32, self.field.one())]);
            }
            let jl = self.product(j, l);
            let mut right = vec![0; n];
            self.add_left_basis_mul(&mut right, self.field.one(), i, jl);
            left == right
        };
        if n <= 64 {
            (0..n).all(|i| (0..n).all(|j| (0..n).all(|l| triple(i, j, l))))
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..samples).all(|_| triple(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n)))
        }
    }

    /// Same algebra with the basis relabelled; `perm[i]` is the new index of `e_i`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let n = self.dim();
        let mut table = vec![Vec::new(); n * n];
        let mut labels = vec![String::new(); n];
        let mut unit = vec![0; n];
        for i in 0..n {
            labels[perm[i]] = self.labels[i].clone();
            unit[perm[i]] = self.unit[i];
            for j in 0..n {
                let v = self.product(i, j).iter().map(|&(k, c)| (perm[k as usize] as u32, c)).collect();
                table[perm[i] * n + perm[j]] = normalize(&self.field, v);
            }
        }
        StructAlgebra {
            field: self.field.clone(),
            labels,
            table,
            unit,
        }
    }

    /// Exact equality of field, structure constants and unit (labels ignored).
    pub fn same_structure(&self, other: &StructAlgebra) -> bool {
        self.field == other.field && self.table == other.table && self.unit == other.unit
    }

    /// The algebra written in a new basis. Rows of `basis` must span a
    /// subalgebra and be in reduced echelon form with the given pivots.
    pub(crate) fn restrict_to_rref(&self, basis: &[Vec<Elem>], pivots: &[usize], unit: Vec<Elem>, labels: Vec<String>) -> Result<Self> {
        let n = self.dim();
        let sparse: Vec<SparseVec> = basis.iter().map(|v| to_sparse(v)).collect();
        let d = basis.len();
        let mut table = Vec::with_capacity(d * d);
        for a in &sparse {
            for b in &sparse {
                let mut prod = vec![0; n];
                for &(i, x) in a {
                    self.add_left_basis_mul(&mut prod, x, i as usize, b);
                }
                // coordinates of an element of the span are its pivot entries
                let coords: SparseVec = pivots
                    .iter()
                    .enumerate()
                    .filter(|e| prod[*e.1] != 0)
                    .map(|(s, &pc)| (s as u32, prod[pc]))
                    .collect();
                table.push(coords);
            }
        }
        let unit_coords = pivots.iter().map(|&pc| unit[pc]).collect();
        StructAlgebra::new(self.field.clone(), labels, table, unit_coords)
    }
}

/// `A ⊗ B` with basis pairs `(i, j)` at index `i * dim B + j`.
pub fn tensor_algebra(a: &StructAlgebra, b: &StructAlgebra) -> Result<StructAlgebra> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let k = &a.field;
    let (na, nb) = (a.dim(), b.dim());
    let mut labels = Vec::with_capacity(na * nb);
    let mut unit = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            labels.push(format!("{}⊗{}", a.labels[i], b.labels[j]));
            unit.push(k.mul(a.unit[i], b.unit[j]));
        }
    }
    let mut table = Vec::with_capacity(na * nb * na * nb);
    for i1 in 0..na {
        for j1 in 0..nb {
            for i2 in 0..na {
                for j2 in 0..nb {
                    let mut v = Vec::new();
                    for &(s, x) in a.product(i1, i2) {
                        for &(t, y) in b.product(j1, j2) {
                            v.push((s * nb as u32 + t, k.mul(x, y)));
                        }
                    }
                    table.push(v);
                }
            }
        }
    }
    Ok(StructAlgebra {
        field: k.clone(),
        labels,
        table,
        unit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// k[x]/(x^2) over GF(p).
    fn dual_numbers(p: u64) -> StructAlgebra {
        let k = FieldSpec::new(p, 1).unwrap();
        StructAlgebra::from_fn(k.clone(), vec!["1".into(), "x".into()], vec![1, 0], |i, j| {
            if i + j < 2 {
                vec![((i + j) as u32, 1)]
            } else {
                Vec::new()
            }
        })
        .unwrap()
    }

    #[test]
    fn unit_and_associativity() {
        let a = dual_numbers(3);
        assert!(a.check_unit());
        assert!(a.check_associative(0, 0));
        assert!(a.is_commutative());
        assert_eq!(a.structure_constant(0, 1, 1), 1);
        assert_eq!(a.mul(&[0, 1], &[0, 1]), vec![0, 0]);
    }

    #[test]
    fn rejects_bad_shapes() {
        let k = FieldSpec::new(2, 1).unwrap();
        assert!(StructAlgebra::new(k.clone(), vec!["a".into()], vec![], vec![1]).is_err());
        assert!(StructAlgebra::new(k, vec!["a".into()], vec![vec![(3, 1)]], vec![1]).is_err());
    }

    #[test]
    fn tensor_with_ground_field() {
        let a = dual_numbers(5);
        let t = tensor_algebra(&a, &StructAlgebra::ground(a.field())).unwrap();
        assert!(t.same_structure(&a));
        let b = StructAlgebra::ground(&FieldSpec::new(2, 1).unwrap());
        assert_eq!(tensor_algebra(&a, &b).unwrap_err(), Error::FieldMismatch);
        let aa = tensor_algebra(&a, &a).unwrap();
        assert_eq!(aa.dim(), 4);
        assert!(aa.check_associative(0, 0) && aa.check_unit());
    }
}
