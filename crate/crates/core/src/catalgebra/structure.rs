use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::linalg::dense_rank;
use crate::ffield::{rank_nullspace, Elem, SparseMatrix};
use crate::groupalgebra::StructAlgebra;

/// Largest algebra probed for a Frobenius form or a radical.
pub const STRUCTURE_DIM_CAP: usize = 256;
/// Largest prime-field dimension whose radical is computed.
pub const RADICAL_DIM_CAP: usize = 64;
/// Functional spaces up to this size are searched exhaustively.
const EXHAUSTIVE_LIMIT: u64 = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CertificateSource {
    /// Sum of coefficients on the support of the unit.
    Canonical,
    Search,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusCertificate {
    /// Values `λ(e_i)` on the basis.
    pub functional: Vec<Elem>,
    pub symmetric: bool,
    pub source: CertificateSource,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusSearch {
    pub certificate: Option<FrobeniusCertificate>,
    /// Number of functionals tried.
    pub trials: u64,
    /// Every functional was tried, so a missing certificate proves the algebra
    /// has no nondegenerate associative form.
    pub exhaustive: bool,
}

/// Gram matrix `λ(e_i e_j)`.
pub fn gram_matrix(a: &StructAlgebra, lambda: &[Elem]) -> Vec<Vec<Elem>> {
    let k = a.field();
    let n = a.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| a.product(i, j).iter().fold(0, |acc, &(t, c)| k.add(acc, k.mul(c, lambda[t as usize]))))
                .collect()
        })
        .collect()
}

/// Independent check of a certificate: the Gram matrix is nonsingular, and
/// symmetric when the certificate says so.
pub fn verify_certificate(a: &StructAlgebra, cert: &FrobeniusCertificate) -> bool {
    let g = gram_matrix(a, &cert.functional);
    let n = a.dim();
    let symmetric = (0..n).all(|i| (0..i).all(|j| g[i][j] == g[j][i]));
    dense_rank(a.field(), &g) == n && (!cert.symmetric || symmetric)
}

fn certify(a: &StructAlgebra, lambda: Vec<Elem>, source: CertificateSource) -> Option<FrobeniusCertificate> {
    let g = gram_matrix(a, &lambda);
    let n = a.dim();
    if dense_rank(a.field(), &g) != n {
        return None;
    }
    let symmetric = (0..n).all(|i| (0..i).all(|j| g[i][j] == g[j][i]));
    Some(FrobeniusCertificate {
        functional: lambda,
        symmetric,
        source,
    })
}

/// Looks for `λ` with nonsingular Gram matrix: first the canonical functional
/// reading off the coefficients on the unit's support (the symmetric form of
/// group and groupoid algebras), then every functional when there are few
/// enough, otherwise `trials` random ones.
pub fn frobenius_certificate(a: &StructAlgebra, seed: u64, trials: u64) -> Result<FrobeniusSearch> {
    let n = a.dim();
    if n > STRUCTURE_DIM_CAP {
        return Err(Error::DimCapExceeded {
            dim: n,
            cap: STRUCTURE_DIM_CAP,
        });
    }
    let k = a.field();
    let canonical: Vec<Elem> = a.unit().iter().map(|&u| if u != 0 { k.one() } else { 0 }).collect();
    if let Some(c) = certify(a, canonical, CertificateSource::Canonical) {
        return Ok(FrobeniusSearch {
            certificate: Some(c),
            trials: 1,
            exhaustive: false,
        });
    }
    let q = k.order() as u64;
    let total = (q as u128).checked_pow(n as u32).filter(|&t| t <= EXHAUSTIVE_LIMIT as u128);
    if let Some(total) = total {
        for code in 0..total as u64 {
            let mut r = code;
            let lambda: Vec<Elem> = (0..n)
                .map(|_| {
                    let x = (r % q) as Elem;
                    r /= q;
                    x
                })
                .collect();
            if let Some(c) = certify(a, lambda, CertificateSource::Search) {
                return Ok(FrobeniusSearch {
                    certificate: Some(c),
                    trials: code + 2,
                    exhaustive: false,
                });
            }
        }
        return Ok(FrobeniusSearch {
            certificate: None,
            trials: total as u64 + 1,
            exhaustive: true,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for t in 0..trials {
        let lambda: Vec<Elem> = (0..n).map(|_| rng.gen_range(0..k.order())).collect();
        if let Some(c) = certify(a, lambda, CertificateSource::Search) {
            return Ok(FrobeniusSearch {
                certificate: Some(c),
                trials: t + 2,
                exhaustive: false,
            });
        }
    }
    Ok(FrobeniusSearch {
        certificate: None,
        trials: trials + 1,
        exhaustive: false,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadicalInfo {
    pub radical_dim: usize,
    pub semisimple: bool,
}

/// Left regular representation of `A` viewed as an algebra over the prime
/// field: basis `t^r e_i`, each matrix acting on column vectors.
fn regular_rep_prime(a: &StructAlgebra) -> Vec<Vec<u64>> {
    let k = a.field();
    let n = a.dim();
    let m = k.m() as usize;
    let big = n * m;
    let t = k.generator_t();
    let tp: Vec<Elem> = (0..2 * m).map(|r| k.pow(t, r as u64)).collect();
    let mut mats = Vec::with_capacity(big);
    for i in 0..n {
        for r in 0..m {
            let mut mat = vec![0u64; big * big];
            for j in 0..n {
                for s in 0..m {
                    let col = j * m + s;
                    for &(l, c) in a.product(i, j) {
                        let v = k.mul(c, tp[r + s]);
                        for (u, &x) in k.coeffs(v).iter().enumerate() {
                            mat[(l as usize * m + u) * big + col] = x as u64;
                        }
                    }
                }
            }
            mats.push(mat);
        }
    }
    mats
}

fn mat_mul_mod(a: &[u64], b: &[u64], n: usize, modulus: u64) -> Vec<u64> {
    let mut out = vec![0u64; n * n];
    for i in 0..n {
        for l in 0..n {
            let x = a[i * n + l];
            if x == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] = (out[i * n + j] + x * b[l * n + j]) % modulus;
            }
        }
    }
    out
}

/// `Tr(M^(p^i)) / p^i mod p` for an integer lift `M`.
fn lifted_trace(m: &[u64], n: usize, p: u64, i: u32) -> u64 {
    let modulus = p.pow(i + 1);
    let mut acc = m.iter().map(|&x| x % modulus).collect::<Vec<_>>();
    for _ in 0..i {
        // raise to the p-th power
        let base = acc.clone();
        for _ in 1..p {
            acc = mat_mul_mod(&acc, &base, n, modulus);
        }
    }
    let tr = (0..n).map(|d| acc[d * n + d]).sum::<u64>() % modulus;
    debug_assert_eq!(tr % p.pow(i), 0);
    tr / p.pow(i)
}

/// Jacobson radical by the trace-form iteration over the prime field:
/// `I_{-1} = A`, `I_i = {a ∈ I_{i-1} : g_i(a b) = 0 for all b}`, with `g_i` the
/// lifted trace of the `p^i`-th power, ending at `i = ⌊log_p N⌋`.
pub fn radical_and_semisimplicity(a: &StructAlgebra) -> Result<RadicalInfo> {
    let n = a.dim();
    let k = a.field();
    if n * k.m() as usize > RADICAL_DIM_CAP {
        return Err(Error::DimCapExceeded {
            dim: n * k.m() as usize,
            cap: RADICAL_DIM_CAP,
        });
    }
    let p = k.p() as u64;
    let fp = k.prime_field();
    let mats = regular_rep_prime(a);
    let big = mats.len();
    let mut steps = 0u32;
    while p.pow(steps + 1) <= big as u64 {
        steps += 1;
    }
    // current ideal as coefficient vectors over the prime-field basis
    let mut ideal: Vec<Vec<u64>> = (0..big)
        .map(|i| {
            let mut v = vec![0; big];
            v[i] = 1;
            v
        })
        .collect();
    let combine = |v: &[u64]| -> Vec<u64> {
        let mut out = vec![0u64; big * big];
        for (c, m) in v.iter().zip(&mats) {
            if *c != 0 {
                for (o, x) in out.iter_mut().zip(m) {
                    *o = (*o + c * x) % p;
                }
            }
        }
        out
    };
    for i in 0..=steps {
        if ideal.is_empty() {
            break;
        }
        let elems: Vec<Vec<u64>> = ideal.iter().map(|v| combine(v)).collect();
        // g_i(x_s b_t) for basis x_s of the ideal and basis b_t of A
        let mut trip = Vec::new();
        for (t, bt) in mats.iter().enumerate() {
            for (s, xs) in elems.iter().enumerate() {
                let prod = mat_mul_mod(xs, bt, big, p);
                let g = lifted_trace(&prod, big, p, i);
                if g != 0 {
                    trip.push((t, s, g as Elem));
                }
            }
        }
        let m = SparseMatrix::from_triplets(&fp, big, ideal.len(), trip).expect("in bounds");
        let (_, null) = rank_nullspace(&fp, &m);
        ideal = null
            .iter()
            .map(|c| {
                let mut v = vec![0u64; big];
                for (coef, basis) in c.iter().zip(&ideal) {
                    if *coef != 0 {
                        for (o, x) in v.iter_mut().zip(basis) {
                            *o = (*o + *coef as u64 * x) % p;
                        }
                    }
                }
                v
            })
            .collect();
    }
    let radical_dim = ideal.len() / k.m() as usize;
    Ok(RadicalInfo {
        radical_dim,
        semisimple: radical_dim == 0,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalgebra::category::{category_algebra, transporter_category, FinCategory, GSet};
    use crate::ffield::FieldSpec;
    use crate::groupalgebra::group_algebra;
    use crate::permgroup::named::{by_name, cyclic, symmetric};
    use crate::permgroup::Perm;

    #[test]
    fn radical_examples() {
        let r = |a: &StructAlgebra| radical_and_semisimplicity(a).unwrap().radical_dim;
        assert_eq!(r(&group_algebra(&cyclic(3), 2).unwrap()), 0);
        assert_eq!(r(&group_algebra(&cyclic(2), 2).unwrap()), 1);
        assert_eq!(r(&group_algebra(&symmetric(3), 3).unwrap()), 4);
        assert_eq!(r(&group_algebra(&cyclic(4), 2).unwrap()), 3);
        assert_eq!(r(&group_algebra(&by_name("A4").unwrap(), 2).unwrap()), 9);
        let poset = FinCategory::parse("objects 2\nmorphism 1a 0 0 identity\nmorphism 1b 1 1 identity\nmorphism f 0 1\n").unwrap();
        assert_eq!(r(&category_algebra(&poset, &FieldSpec::new(5, 1).unwrap())), 1);
    }

    #[test]
    fn maschke_on_small_groups() {
        for name in ["C2", "C3", "V4", "S3", "D8", "Q8", "A4"] {
            let g = by_name(name).unwrap();
            for p in [2u64, 3, 5] {
                let a = group_algebra(&g, p).unwrap();
                let info = radical_and_semisimplicity(&a).unwrap();
                assert_eq!(info.semisimple, g.order() as u64 % p != 0, "{name} p={p}");
            }
        }
    }

    #[test]
    fn swap_groupoid_is_semisimple_at_three() {
        let c2 = cyclic(2);
        let x = GSet {
            points: 2,
            generator_images: vec![Perm::from_cycles(2, &[&[0, 1]]).unwrap()],
        };
        let t = transporter_category(&c2, &x).unwrap();
        let a = category_algebra(&t, &FieldSpec::new(3, 1).unwrap());
        assert_eq!(a.dim(), 4);
        assert!(radical_and_semisimplicity(&a).unwrap().semisimple);
    }

    #[test]
    fn certificates() {
        let a = group_algebra(&symmetric(3), 2).unwrap();
        let s = frobenius_certificate(&a, 1, 10).unwrap();
        let c = s.certificate.unwrap();
        assert!(c.symmetric && c.source == CertificateSource::Canonical);
        assert!(verify_certificate(&a, &c));

        let c2 = cyclic(2);
        let t = transporter_category(&c2, &GSet::trivial(&c2, 3)).unwrap();
        let a = category_algebra(&t, &FieldSpec::new(2, 1).unwrap());
        let c = frobenius_certificate(&a, 1, 10).unwrap().certificate.unwrap();
        assert!(c.symmetric && verify_certificate(&a, &c));

        let poset = FinCategory::parse("objects 2\nmorphism 1a 0 0 identity\nmorphism 1b 1 1 identity\nmorphism f 0 1\n").unwrap();
        for p in [2, 3, 5] {
            let a = category_algebra(&poset, &FieldSpec::new(p, 1).unwrap());
            let s = frobenius_certificate(&a, 1, 10).unwrap();
            assert!(s.certificate.is_none() && s.exhaustive);
        }
    }
}
