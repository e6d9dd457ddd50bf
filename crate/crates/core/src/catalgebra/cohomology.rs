use std::collections::HashMap;

use serde::Serialize;

use crate::catalgebra::category::{CatFunctor, FinCategory};
use crate::error::{Error, Result};
use crate::ffield::{rank, rank_nullspace, Elem, Eliminator, FieldSpec, SparseMatrix};
use crate::groupalgebra::StructAlgebra;

/// Largest number of nondegenerate chains in any one nerve degree.
pub const NERVE_CAP: usize = 1_000_000;
/// Bar complex limits: algebra dimension and top degree.
pub const BAR_DIM_CAP: usize = 12;
pub const BAR_DEGREE_CAP: usize = 4;

/// Nondegenerate chains `x_0 → x_1 → … → x_q` of non-identity morphisms,
/// degree by degree. Degree 0 lists the objects.
struct Nerve {
    chains: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
}

impl Nerve {
    fn build(c: &FinCategory, top: usize) -> Result<Self> {
        let arrows: Vec<usize> = (0..c.num_morphisms()).filter(|&f| !c.is_identity(f)).collect();
        let mut chains: Vec<Vec<Vec<u32>>> = vec![(0..c.num_objects() as u32).map(|x| vec![x]).collect()];
        let mut cur: Vec<Vec<u32>> = arrows.iter().map(|&f| vec![f as u32]).collect();
        for q in 1..=top {
            if cur.len() > NERVE_CAP {
                return Err(Error::NerveCapExceeded {
                    degree: q,
                    count: cur.len(),
                    cap: NERVE_CAP,
                });
            }
            let next: Vec<Vec<u32>> = if q < top {
                let mut v = Vec::new();
                for ch in &cur {
                    let end = c.morphisms()[*ch.last().expect("nonempty") as usize].cod;
                    for &f in &arrows {
                        if c.morphisms()[f].dom == end {
                            let mut e = ch.clone();
                            e.push(f as u32);
                            v.push(e);
                        }
                    }
                    if v.len() > NERVE_CAP {
                        return Err(Error::NerveCapExceeded {
                            degree: q + 1,
                            count: v.len(),
                            cap: NERVE_CAP,
                        });
                    }
                }
                v
            } else {
                Vec::new()
            };
            chains.push(std::mem::replace(&mut cur, next));
        }
        let index = chains
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, ch)| (ch.clone(), i)).collect())
            .collect();
        Ok(Nerve { chains, index })
    }

    fn size(&self, q: usize) -> usize {
        self.chains[q].len()
    }

    /// Faces `d_i` of a chain in degree `q + 1` with signs; degenerate faces
    /// are dropped since normalized cochains vanish on them.
    fn faces(&self, c: &FinCategory, q1: usize, ch: &[u32]) -> Vec<(usize, bool)> {
        let mut out = Vec::with_capacity(q1 + 1);
        if q1 == 1 {
            let m = &c.morphisms()[ch[0] as usize];
            // d_0 f = cod, d_1 f = dom
            out.push((m.cod, true));
            out.push((m.dom, false));
            return out;
        }
        for i in 0..=q1 {
            let face: Option<Vec<u32>> = if i == 0 {
                Some(ch[1..].to_vec())
            } else if i == q1 {
                Some(ch[..q1 - 1].to_vec())
            } else {
                let gf = c.compose(ch[i] as usize, ch[i - 1] as usize).expect("composable chain");
                if c.is_identity(gf) {
                    None
                } else {
                    let mut v = ch[..i - 1].to_vec();
                    v.push(gf as u32);
                    v.extend_from_slice(&ch[i + 1..]);
                    Some(v)
                }
            };
            if let Some(f) = face {
                out.push((self.index[q1 - 1][&f], i % 2 == 0));
            }
        }
        out
    }

    /// Coboundary `δ^q` as a matrix with rows the degree `q + 1` chains.
    fn coboundary(&self, c: &FinCategory, field: &FieldSpec, q: usize) -> SparseMatrix {
        let rows = self.size(q + 1);
        let cols = self.size(q);
        let mut trip = Vec::new();
        for (r, ch) in self.chains[q + 1].iter().enumerate() {
            for (col, plus) in self.faces(c, q + 1, ch) {
                trip.push((r, col, if plus { field.one() } else { field.neg(field.one()) }));
            }
        }
        SparseMatrix::from_triplets(field, rows, cols, trip).expect("in bounds")
    }
}

/// dim Hⁿ(C, k) for `0 ≤ n ≤ top`, from normalized cochains on the nerve.
pub fn nerve_cohomology(c: &FinCategory, field: &FieldSpec, top: usize) -> Result<Vec<usize>> {
    let nerve = Nerve::build(c, top + 1)?;
    let ranks: Vec<usize> = (0..=top).map(|q| rank(field, &nerve.coboundary(c, field, q))).collect();
    Ok((0..=top)
        .map(|q| nerve.size(q) - ranks[q] - if q > 0 { ranks[q - 1] } else { 0 })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RestrictionDegree {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub rank: usize,
    pub injective: bool,
}

/// The map `H^q(T, k) → H^q(S, k)` induced by a functor `π: S → T`, degree by
/// degree. Its rank is `rank(π* Z_T + B_S) - rank(B_S)`.
pub fn restriction_map(pi: &CatFunctor, field: &FieldSpec, top: usize) -> Result<Vec<RestrictionDegree>> {
    let (s, t) = (pi.source, pi.target);
    let ns = Nerve::build(s, top + 1)?;
    let nt = Nerve::build(t, top + 1)?;
    let hs = nerve_cohomology(s, field, top)?;
    let ht = nerve_cohomology(t, field, top)?;
    let mut out = Vec::with_capacity(top + 1);
    for q in 0..=top {
        // cocycles on the target
        let (_, cocycles) = rank_nullspace(field, &nt.coboundary(t, field, q));
        let mut elim = Eliminator::new(field, ns.size(q));
        if q > 0 {
            let d = ns.coboundary(s, field, q - 1).transpose();
            for row in d.row_lists() {
                elim.push(&row);
            }
        }
        let boundary_rank = elim.rank();
        for z in &cocycles {
            // (π* z)(σ) = z(π σ), zero when π σ is degenerate
            let mut v = Vec::new();
            for (i, ch) in ns.chains[q].iter().enumerate() {
                let image: Option<Vec<u32>> = if q == 0 {
                    Some(vec![pi.object_map[ch[0] as usize] as u32])
                } else {
                    ch.iter()
                        .map(|&f| {
                            let g = pi.morphism_map[f as usize];
                            (!t.is_identity(g)).then_some(g as u32)
                        })
                        .collect()
                };
                if let Some(img) = image {
                    let x = z[nt.index[q][&img]];
                    if x != 0 {
                        v.push((i as u32, x));
                    }
                }
            }
            elim.push(&v);
        }
        let r = elim.rank() - boundary_rank;
        out.push(RestrictionDegree {
            degree: q,
            source_dim: ht[q],
            target_dim: hs[q],
            rank: r,
            injective: r == ht[q],
        });
    }
    Ok(out)
}

/// Change of basis putting the unit first: returns the new basis vectors (the
/// unit, then every old basis vector except one at a nonzero unit position).
fn unit_first_basis(a: &StructAlgebra) -> StructAlgebra {
    let n = a.dim();
    let k = a.field();
    let pivot = a.unit().iter().position(|&x| x != 0).expect("nonzero unit");
    let mut basis: Vec<Vec<Elem>> = vec![a.unit().to_vec()];
    basis.extend((0..n).filter(|&i| i != pivot).map(|i| a.basis_vector(i)));
    // coordinates in the new basis: v = c_0 u + sum c_i e_i, with c_0 = v_pivot / u_pivot
    let up_inv = k.inv(a.unit()[pivot]).expect("nonzero");
    let coords = |v: &[Elem]| -> Vec<(u32, Elem)> {
        let c0 = k.mul(v[pivot], up_inv);
        let mut out = Vec::new();
        if c0 != 0 {
            out.push((0u32, c0));
        }
        let mut pos = 1u32;
        for i in 0..n {
            if i == pivot {
                continue;
            }
            let ci = k.sub(v[i], k.mul(c0, a.unit()[i]));
            if ci != 0 {
                out.push((pos, ci));
            }
            pos += 1;
        }
        out
    };
    let labels = std::iter::once("1".to_string())
        .chain((0..n).filter(|&i| i != pivot).map(|i| a.labels()[i].clone()))
        .collect();
    let mut unit = vec![0; n];
    unit[0] = k.one();
    StructAlgebra::from_fn(k.clone(), labels, unit, |i, j| coords(&a.mul(&basis[i], &basis[j]))).expect("valid shape")
}

/// dim HHⁿ(A) for `0 ≤ n ≤ top` from the normalized bar complex
/// `Hom(Ā^{⊗q}, A)` with `Ā = A / k·1`.
pub fn bar_hh(a: &StructAlgebra, top: usize) -> Result<Vec<usize>> {
    let n = a.dim();
    if n > BAR_DIM_CAP {
        return Err(Error::DimCapExceeded { dim: n, cap: BAR_DIM_CAP });
    }
    if top > BAR_DEGREE_CAP {
        return Err(Error::DimCapExceeded {
            dim: top,
            cap: BAR_DEGREE_CAP,
        });
    }
    let b = unit_first_basis(a);
    let k = b.field().clone();
    let nb = n - 1;
    let pow = |q: usize| nb.pow(q as u32);
    // cochain f: (w_1..w_q) ↦ e_t has index word * n + t, word in base nb
    let ranks: Vec<usize> = (0..=top)
        .map(|q| {
            let rows = pow(q + 1) * n;
            let cols = pow(q) * n;
            let mut trip: Vec<(usize, usize, Elem)> = Vec::new();
            let mut word = vec![0usize; q + 1];
            for w in 0..pow(q + 1) {
                let mut r = w;
                for x in word.iter_mut().rev() {
                    *x = r % nb.max(1);
                    r /= nb.max(1);
                }
                let enc = |ws: &[usize]| ws.iter().fold(0usize, |acc, &x| acc * nb + x);
                // a_1 f(a_2..): contributes e_{a_1} e_t at coordinate s
                let rest = enc(&word[1..]);
                for t in 0..n {
                    for &(s, c) in b.product(word[0] + 1, t) {
                        trip.push((w * n + s as usize, rest * n + t, c));
                    }
                }
                // (-1)^i f(.., a_i a_{i+1}, ..), products projected to Ā
                for i in 0..q {
                    let sign_neg = i % 2 == 0;
                    for &(s, c) in b.product(word[i] + 1, word[i + 1] + 1) {
                        if s == 0 {
                            continue;
                        }
                        let mut merged: Vec<usize> = word[..i].to_vec();
                        merged.push(s as usize - 1);
                        merged.extend_from_slice(&word[i + 2..]);
                        let col = enc(&merged);
                        let c = if sign_neg { k.neg(c) } else { c };
                        for t in 0..n {
                            trip.push((w * n + t, col * n + t, c));
                        }
                    }
                }
                // (-1)^{q+1} f(a_1..a_q) a_{q+1}
                let head = enc(&word[..q]);
                let neg = q % 2 == 0;
                for t in 0..n {
                    for &(s, c) in b.product(t, word[q] + 1) {
                        let c = if neg { k.neg(c) } else { c };
                        trip.push((w * n + s as usize, head * n + t, c));
                    }
                }
            }
            if nb == 0 {
                return 0;
            }
            rank(&k, &SparseMatrix::from_triplets(&k, rows, cols, trip).expect("in bounds"))
        })
        .collect();
    Ok((0..=top)
        .map(|q| pow(q) * n - ranks[q] - if q > 0 { ranks[q - 1] } else { 0 })
        .collect())
}
