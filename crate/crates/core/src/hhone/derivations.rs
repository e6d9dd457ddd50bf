use crate::error::{Error, Result};
use crate::ffield::{rank_nullspace, DenseSpan, Elem, Eliminator, FieldSpec, SparseMatrix};
use crate::groupalgebra::algebra::normalize;
use crate::groupalgebra::StructAlgebra;

/// Largest algebra handed to the derivation solver by default.
pub const DEFAULT_DER_CAP: usize = 256;

/// Der(A), Z(A) and HH¹(A) = Der(A)/Inn(A).
///
/// A derivation `D` is stored as the row-major `n × n` matrix with
/// `D(e_i) = sum_l D[i*n + l] e_l`.
#[derive(Clone, Debug)]
pub struct DerivationSpace<'a> {
    pub algebra: &'a StructAlgebra,
    pub der_dim: usize,
    pub center_dim: usize,
    pub hh1_dim: usize,
    /// Reduced echelon basis of Der(A).
    pub basis: Vec<Vec<Elem>>,
    pub center_basis: Vec<Vec<Elem>>,
    /// Basis indices generating A as a (non-unital) algebra.
    pub generators: Vec<usize>,
}

impl DerivationSpace<'_> {
    pub fn inner_dim(&self) -> usize {
        self.algebra.dim() - self.center_dim
    }

    /// Checks the Leibniz rule for `D` on every pair of basis elements.
    pub fn satisfies_leibniz(&self, d: &[Elem]) -> bool {
        is_derivation(self.algebra, d)
    }
}

/// Applies the matrix `d` to a dense vector.
pub fn apply(field: &FieldSpec, d: &[Elem], v: &[Elem]) -> Vec<Elem> {
    let n = v.len();
    let mut out = vec![0; n];
    for (i, &x) in v.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (o, &y) in out.iter_mut().zip(&d[i * n..(i + 1) * n]) {
            if y != 0 {
                *o = field.add(*o, field.mul(x, y));
            }
        }
    }
    out
}

pub fn is_derivation(a: &StructAlgebra, d: &[Elem]) -> bool {
    let k = a.field();
    let n = a.dim();
    let images: Vec<Vec<Elem>> = (0..n).map(|i| d[i * n..(i + 1) * n].to_vec()).collect();
    (0..n).all(|i| {
        (0..n).all(|j| {
            let mut prod = vec![0; n];
            for &(t, c) in a.product(i, j) {
                prod[t as usize] = c;
            }
            let lhs = apply(k, d, &prod);
            let r1 = a.mul(&images[i], &a.basis_vector(j));
            let r2 = a.mul(&a.basis_vector(i), &images[j]);
            lhs.iter().zip(r1.iter().zip(&r2)).all(|(&l, (&x, &y))| l == k.add(x, y))
        })
    })
}

/// Greedy basis subset generating A under multiplication: a basis element is
/// taken when it lies outside the subalgebra generated by those before it.
pub fn algebra_generators(a: &StructAlgebra) -> Vec<usize> {
    let n = a.dim();
    let k = a.field();
    let mut span = DenseSpan::new(k, n);
    let mut spanning: Vec<Vec<Elem>> = Vec::new();
    let mut gens: Vec<usize> = Vec::new();
    for i in 0..n {
        if span.len() == n {
            break;
        }
        let e = a.basis_vector(i);
        if span.contains(&e) {
            continue;
        }
        gens.push(i);
        // words ending in the new generator, then close everything up
        let mut queue: Vec<Vec<Elem>> = vec![e.clone()];
        for w in &spanning {
            queue.push(a.mul(w, &e));
        }
        while let Some(v) = queue.pop() {
            if !span.insert(&v) {
                continue;
            }
            for &g in &gens {
                queue.push(a.mul(&v, &a.basis_vector(g)));
            }
            spanning.push(v);
        }
    }
    gens
}

/// Solves the Leibniz system for Der(A) and the commutant system for Z(A).
pub fn derivation_space(a: &StructAlgebra) -> Result<DerivationSpace<'_>> {
    derivation_space_capped(a, DEFAULT_DER_CAP)
}

pub fn derivation_space_capped(a: &StructAlgebra, cap: usize) -> Result<DerivationSpace<'_>> {
    let n = a.dim();
    if n > cap {
        return Err(Error::DimCapExceeded { dim: n, cap });
    }
    let k = a.field();
    let gens = algebra_generators(a);
    let var = |i: usize, l: usize| (i * n + l) as u32;
    let mut elim = Eliminator::new(k, n * n);
    let mut rows: Vec<Vec<(u32, Elem)>> = vec![Vec::new(); n];
    for &s in &gens {
        for j in 0..n {
            // D(e_s e_j) - D(e_s) e_j - e_s D(e_j) = 0, one row per output coordinate t
            for &(kk, c) in a.product(s, j) {
                for (t, row) in rows.iter_mut().enumerate() {
                    row.push((var(kk as usize, t), c));
                }
            }
            for l in 0..n {
                for &(t, c) in a.product(l, j) {
                    rows[t as usize].push((var(s, l), k.neg(c)));
                }
                for &(t, c) in a.product(s, l) {
                    rows[t as usize].push((var(j, l), k.neg(c)));
                }
            }
            for row in rows.iter_mut() {
                let r = normalize(k, std::mem::take(row));
                if !r.is_empty() {
                    elim.push(&r);
                }
            }
        }
    }
    let basis = elim.nullspace();
    let (center_dim, center_basis) = commutant(a, &gens);
    let der_dim = basis.len();
    let inner = n - center_dim;
    let hh1_dim = der_dim
        .checked_sub(inner)
        .expect("inner derivations are derivations");
    Ok(DerivationSpace {
        algebra: a,
        der_dim,
        center_dim,
        hh1_dim,
        basis,
        center_basis,
        generators: gens,
    })
}

/// Elements commuting with every listed basis element.
fn commutant(a: &StructAlgebra, gens: &[usize]) -> (usize, Vec<Vec<Elem>>) {
    let n = a.dim();
    let k = a.field();
    let mut trip = Vec::new();
    for (g_pos, &s) in gens.iter().enumerate() {
        for i in 0..n {
            for &(t, c) in a.product(i, s) {
                trip.push((g_pos * n + t as usize, i, c));
            }
            for &(t, c) in a.product(s, i) {
                trip.push((g_pos * n + t as usize, i, k.neg(c)));
            }
        }
    }
    let m = SparseMatrix::from_triplets(k, gens.len() * n, n, trip).expect("in bounds");
    let (_, null) = rank_nullspace(k, &m);
    (null.len(), null)
}

/// The inner derivation `x ↦ a x - x a` as a matrix.
pub fn inner_derivation(alg: &StructAlgebra, a: &[Elem]) -> Vec<Elem> {
    let n = alg.dim();
    let k = alg.field();
    let mut d = vec![0; n * n];
    for i in 0..n {
        let e = alg.basis_vector(i);
        let left = alg.mul(a, &e);
        let right = alg.mul(&e, a);
        for l in 0..n {
            d[i * n + l] = k.sub(left[l], right[l]);
        }
    }
    d
}
