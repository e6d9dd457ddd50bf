use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::{rank_nullspace, DenseSpan, Elem, FieldSpec, SparseMatrix};
use crate::hhone::derivations::{inner_derivation, DerivationSpace};

/// Largest algebra whose HH¹ bracket is computed.
pub const LIE_DIM_CAP: usize = 64;

/// HH¹ as a Lie algebra in a basis of derivation classes.
#[derive(Clone, Debug, Serialize)]
pub struct LieStructure {
    /// Derivations (row-major matrices) representing the basis of HH¹.
    #[serde(skip)]
    pub hh1_basis: Vec<Vec<Elem>>,
    /// `brackets[a][b]` holds the coordinates of `[x_a, x_b]`.
    pub brackets: Vec<Vec<Vec<Elem>>>,
    pub solvable: bool,
    pub abelian: bool,
    /// Dimensions of the derived series, starting with dim HH¹.
    pub derived_series_lengths: Vec<usize>,
}

/// Coefficients expressing `target` in the independent `vectors`.
fn solve_combination(k: &FieldSpec, vectors: &[Vec<Elem>], target: &[Elem]) -> Option<Vec<Elem>> {
    let h = vectors.len();
    let mut trip = Vec::new();
    for (c, v) in vectors.iter().chain(std::iter::once(&target.to_vec())).enumerate() {
        for (r, &x) in v.iter().enumerate() {
            if x != 0 {
                trip.push((r, c, x));
            }
        }
    }
    let m = SparseMatrix::from_triplets(k, target.len(), h + 1, trip).expect("in bounds");
    let (_, null) = rank_nullspace(k, &m);
    let v = null.into_iter().find(|v| v[h] != 0)?;
    let scale = k.neg(k.inv(v[h]).expect("nonzero"));
    Some(v[..h].iter().map(|&x| k.mul(x, scale)).collect())
}

fn matmul(k: &FieldSpec, n: usize, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
    let mut out = vec![0; n * n];
    for i in 0..n {
        for l in 0..n {
            let x = a[i * n + l];
            if x == 0 {
                continue;
            }
            for t in 0..n {
                let y = b[l * n + t];
                if y != 0 {
                    out[i * n + t] = k.add(out[i * n + t], k.mul(x, y));
                }
            }
        }
    }
    out
}

/// Commutator `D∘D' - D'∘D` of derivation matrices. With the row-major
/// convention `D∘D'` is the matrix product `D' D`.
pub fn commutator(k: &FieldSpec, n: usize, d: &[Elem], e: &[Elem]) -> Vec<Elem> {
    let de = matmul(k, n, e, d);
    let ed = matmul(k, n, d, e);
    de.iter().zip(&ed).map(|(&x, &y)| k.sub(x, y)).collect()
}

/// Bracket of coordinate vectors through the structure constants.
pub fn bracket_coords(k: &FieldSpec, brackets: &[Vec<Vec<Elem>>], x: &[Elem], y: &[Elem]) -> Vec<Elem> {
    let h = brackets.len();
    let mut out = vec![0; h];
    for a in 0..h {
        if x[a] == 0 {
            continue;
        }
        for b in 0..h {
            if y[b] == 0 {
                continue;
            }
            let c = k.mul(x[a], y[b]);
            for (o, &s) in out.iter_mut().zip(&brackets[a][b]) {
                *o = k.add(*o, k.mul(c, s));
            }
        }
    }
    out
}

pub fn lie_structure(d: &DerivationSpace) -> Result<LieStructure> {
    let alg = d.algebra;
    let n = alg.dim();
    if n > LIE_DIM_CAP {
        return Err(Error::DimCapExceeded { dim: n, cap: LIE_DIM_CAP });
    }
    let k = alg.field();
    let mut inner = DenseSpan::new(k, n * n);
    for i in 0..n {
        inner.insert(&inner_derivation(alg, &alg.basis_vector(i)));
    }
    // complement of Inn taken from the echelon basis of Der, in order
    let mut reps = Vec::new();
    let mut residues = Vec::new();
    let mut span = inner.clone();
    for v in &d.basis {
        if span.insert(v) {
            residues.push(inner.reduce(v));
            reps.push(v.clone());
        }
    }
    let h = reps.len();
    debug_assert_eq!(h, d.hh1_dim);
    let mut brackets = vec![vec![vec![0; h]; h]; h];
    for a in 0..h {
        for b in (a + 1)..h {
            let c = commutator(k, n, &reps[a], &reps[b]);
            let coords = solve_combination(k, &residues, &inner.reduce(&c))
                .expect("bracket of derivations is a derivation");
            brackets[b][a] = coords.iter().map(|&x| k.neg(x)).collect();
            brackets[a][b] = coords;
        }
    }
    let abelian = brackets.iter().flatten().flatten().all(|&x| x == 0);
    let mut lengths = vec![h];
    let mut current: Vec<Vec<Elem>> = (0..h)
        .map(|i| {
            let mut v = vec![0; h];
            v[i] = k.one();
            v
        })
        .collect();
    while !current.is_empty() {
        let mut next = DenseSpan::new(k, h);
        for x in &current {
            for y in &current {
                next.insert(&bracket_coords(k, &brackets, x, y));
            }
        }
        if next.len() == current.len() {
            break;
        }
        current = next.basis().to_vec();
        lengths.push(current.len());
    }
    Ok(LieStructure {
        hh1_basis: reps,
        solvable: current.is_empty(),
        abelian,
        brackets,
        derived_series_lengths: lengths,
    })
}

impl LieStructure {
    pub fn dim(&self) -> usize {
        self.brackets.len()
    }

    pub fn is_antisymmetric(&self, k: &FieldSpec) -> bool {
        let h = self.dim();
        (0..h).all(|a| {
            (0..h).all(|b| {
                self.brackets[a][b]
                    .iter()
                    .zip(&self.brackets[b][a])
                    .all(|(&x, &y)| k.add(x, y) == 0)
            }) && self.brackets[a][a].iter().all(|&x| x == 0)
        })
    }

    /// `[x,[y,z]] + [y,[z,x]] + [z,[x,y]] = 0` on all basis triples.
    pub fn satisfies_jacobi(&self, k: &FieldSpec) -> bool {
        let h = self.dim();
        let unit = |i: usize| {
            let mut v = vec![0; h];
            v[i] = k.one();
            v
        };
        let br = |x: &[Elem], y: &[Elem]| bracket_coords(k, &self.brackets, x, y);
        (0..h).all(|a| {
            (0..h).all(|b| {
                (0..h).all(|c| {
                    let (x, y, z) = (unit(a), unit(b), unit(c));
                    let t1 = br(&x, &br(&y, &z));
                    let t2 = br(&y, &br(&z, &x));
                    let t3 = br(&z, &br(&x, &y));
                    (0..h).all(|i| k.add(k.add(t1[i], t2[i]), t3[i]) == 0)
                })
            })
        })
    }
}
