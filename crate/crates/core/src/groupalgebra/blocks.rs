use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ffield::linalg::rref;
use crate::ffield::poly::{self, Poly};
use crate::ffield::{rank_nullspace, DenseSpan, Elem, FieldSpec, SparseMatrix};
use crate::groupalgebra::algebra::{to_sparse, StructAlgebra};
use crate::groupalgebra::group::{center, center_of_group, centralizer_valuations, CenterBasis, GROUP_ALGEBRA_CAP};
use crate::permgroup::PermGroup;

/// Minimal polynomial of `a` inside the algebra with unit `e` (monic, low
/// coefficient first).
pub fn minimal_polynomial(alg: &StructAlgebra, a: &[Elem], e: &[Elem]) -> Poly {
    let k = alg.field();
    let mut powers = vec![e.to_vec()];
    let mut span = DenseSpan::new(k, alg.dim());
    span.insert(e);
    loop {
        let next = alg.mul(a, powers.last().expect("nonempty"));
        if span.contains(&next) {
            powers.push(next);
            break;
        }
        span.insert(&next);
        powers.push(next);
    }
    // columns are the powers; the kernel is one-dimensional
    let d = powers.len();
    let trip = powers
        .iter()
        .enumerate()
        .flat_map(|(c, v)| v.iter().enumerate().map(move |(r, &x)| (r, c, x)));
    let m = SparseMatrix::from_triplets(k, alg.dim(), d, trip).expect("in bounds");
    let (_, null) = rank_nullspace(k, &m);
    poly::monic(k, &null[0])
}

/// Evaluates `f(a)` with constants read as multiples of `e`.
pub fn eval_in(alg: &StructAlgebra, f: &[Elem], a: &[Elem], e: &[Elem]) -> Vec<Elem> {
    let k = alg.field();
    let mut acc = vec![0; alg.dim()];
    for &c in f.iter().rev() {
        acc = alg.mul(&acc, a);
        if c != 0 {
            for (x, &y) in acc.iter_mut().zip(e) {
                *x = k.add(*x, k.mul(c, y));
            }
        }
    }
    acc
}

/// A primitive idempotent of a commutative algebra and the degree of its
/// residue field over the base field.
#[derive(Clone, Debug)]
pub struct LocalFactor {
    pub idempotent: Vec<Elem>,
    pub residue_degree: usize,
}

/// Splits the unit of a commutative algebra into primitive orthogonal
/// idempotents by refining along each basis element's minimal polynomial.
///
/// With `require_split`, a residue field larger than the base field is an
/// error, since then the idempotents are not primitive over the closure.
pub fn primitive_idempotents(z: &StructAlgebra, seed: u64, require_split: bool) -> Result<Vec<LocalFactor>> {
    let k = z.field();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idems = vec![z.unit().to_vec()];
    for c in 0..z.dim() {
        let basis = z.basis_vector(c);
        let mut next = Vec::new();
        for e in idems {
            let a = z.mul(&basis, &e);
            let mu = minimal_polynomial(z, &a, &e);
            let factors = poly::factor(k, &mu, &mut rng);
            if factors.len() == 1 {
                next.push(e);
                continue;
            }
            for (f, mult) in &factors {
                let mut g: Poly = vec![1];
                for _ in 0..*mult {
                    g = poly::mul(k, &g, f);
                }
                let h = poly::divrem(k, &mu, &g).0;
                let u = poly::inverse_mod(k, &h, &g).expect("coprime factors");
                let sel = poly::rem(k, &poly::mul(k, &u, &h), &mu);
                next.push(eval_in(z, &sel, &a, &e));
            }
        }
        idems = next;
    }
    let mut out = Vec::with_capacity(idems.len());
    for e in idems {
        let mut residue_degree = 1;
        for c in 0..z.dim() {
            let a = z.mul(&z.basis_vector(c), &e);
            let mu = minimal_polynomial(z, &a, &e);
            let factors = poly::factor(k, &mu, &mut rng);
            debug_assert_eq!(factors.len(), 1, "idempotent is primitive");
            let d = poly::degree(&factors[0].0).unwrap_or(1);
            residue_degree = crate::permgroup::perm::lcm(residue_degree as u64, d as u64) as usize;
        }
        if require_split && residue_degree > 1 {
            return Err(Error::SplitFieldTooSmall { p: k.p(), m: k.m() });
        }
        out.push(LocalFactor {
            idempotent: e,
            residue_degree,
        });
    }
    Ok(out)
}

/// One block of kG.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockData {
    /// Coordinates of the block idempotent in kG.
    pub idempotent: Vec<Elem>,
    /// The same idempotent in the class-sum basis of the center.
    pub class_coefficients: Vec<Elem>,
    /// dim kGb, when the group algebra is small enough to materialise.
    pub dim: Option<usize>,
    /// Value of the central character on each class sum.
    pub central_character: Vec<Elem>,
    pub defect: u32,
    pub is_principal: bool,
    pub hh1_dim: Option<u64>,
}

/// Blocks of kG from the center alone; `with_dims` also computes dim kGb by a
/// rank computation (only for groups within the group-algebra cap).
pub fn blocks_from_center(
    g: &PermGroup,
    z: &CenterBasis,
    seed: u64,
    with_dims: bool,
) -> Result<Vec<BlockData>> {
    let k = z.field();
    let p = k.p() as u64;
    let za = z.algebra();
    let local = primitive_idempotents(&za, seed, true)?;
    let vals = centralizer_valuations(g, p);
    let trivial: Vec<Elem> = z.class_sizes().iter().map(|&s| k.from_int((s as u64 % p) as i64)).collect();
    let mut blocks = Vec::with_capacity(local.len());
    for lf in local {
        let e = lf.idempotent;
        let central_character: Vec<Elem> = (0..z.dim())
            .map(|c| {
                let a = za.mul(&za.basis_vector(c), &e);
                // minimal polynomial is a power of (t - λ)
                let mu = minimal_polynomial(&za, &a, &e);
                let root = central_root(k, &mu);
                root.expect("split block has a rational central character")
            })
            .collect();
        let defect = central_character
            .iter()
            .zip(&vals)
            .filter(|(&w, _)| w != 0)
            .map(|(_, &v)| v)
            .min()
            .expect("identity class has nonzero character");
        let idempotent = z.to_group_algebra(g, &e);
        let dim = (with_dims && g.order() <= GROUP_ALGEBRA_CAP).then(|| block_dim(g, k, &idempotent));
        blocks.push(BlockData {
            is_principal: central_character == trivial,
            idempotent,
            class_coefficients: e,
            dim,
            central_character,
            defect,
            hh1_dim: None,
        });
    }
    blocks.sort_by(|a, b| {
        (!a.is_principal, a.dim.is_none(), a.dim, &a.class_coefficients).cmp(&(
            !b.is_principal,
            b.dim.is_none(),
            b.dim,
            &b.class_coefficients,
        ))
    });
    Ok(blocks)
}

/// The unique root of a power of a linear polynomial.
fn central_root(k: &FieldSpec, mu: &[Elem]) -> Option<Elem> {
    let d = poly::degree(mu)?;
    // (t - λ)^d has t^(d-1) coefficient -dλ; factor instead when p divides d
    let c = mu[d - 1];
    let dd = k.from_int((d as u64 % k.p() as u64) as i64);
    if dd != 0 {
        let lambda = k.neg(k.div(c, dd).expect("nonzero"));
        return (poly::eval(k, mu, lambda) == 0).then_some(lambda);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let f = poly::factor(k, mu, &mut rng);
    (f.len() == 1 && f[0].0.len() == 2).then(|| k.neg(f[0].0[0]))
}

/// dim kGb as the rank of `{x b : x ∈ G}`.
fn block_dim(g: &PermGroup, k: &FieldSpec, b: &[Elem]) -> usize {
    let n = g.order();
    let support: Vec<(usize, Elem)> = b.iter().copied().enumerate().filter(|e| e.1 != 0).collect();
    let mut rows: Vec<Vec<Elem>> = (0..n)
        .map(|x| {
            let mut v = vec![0; n];
            for &(y, c) in &support {
                v[g.mul_index(x, y)] = c;
            }
            v
        })
        .collect();
    rref(k, &mut rows).len()
}

/// Block decomposition of a group algebra built by
/// [`crate::groupalgebra::group_algebra`].
pub fn block_decompose(a: &StructAlgebra, g: &PermGroup, seed: u64) -> Result<Vec<BlockData>> {
    let z = center(a, g)?;
    blocks_from_center(g, &z, seed, true)
}

/// Blocks over a given field without materialising kG.
pub fn block_decompose_over(g: &PermGroup, field: &FieldSpec, seed: u64) -> Result<Vec<BlockData>> {
    let z = center_of_group(g, field);
    blocks_from_center(g, &z, seed, true)
}

/// The block algebra kGb with basis the reduced echelon basis of `A b`.
pub fn block_algebra(a: &StructAlgebra, b: &BlockData) -> Result<StructAlgebra> {
    if b.idempotent.len() != a.dim() {
        return Err(Error::Shape("idempotent does not belong to this algebra".into()));
    }
    if b.idempotent == a.unit() {
        return Ok(a.clone());
    }
    let n = a.dim();
    let k = a.field();
    let bs = to_sparse(&b.idempotent);
    let mut rows: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            a.add_left_basis_mul(&mut v, k.one(), i, &bs);
            v
        })
        .collect();
    let pivots = rref(k, &mut rows);
    rows.truncate(pivots.len());
    let labels = pivots.iter().map(|&pc| format!("{}·b", a.labels()[pc])).collect();
    a.restrict_to_rref(&rows, &pivots, b.idempotent.clone(), labels)
}

/// Number of p-regular classes (upper bound for the number of blocks).
pub fn p_regular_classes(g: &PermGroup, p: u64) -> usize {
    g.classes()
        .iter()
        .filter(|c| c.representative.order() % p != 0)
        .count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupalgebra::{group_algebra, tensor_algebra, DEFAULT_SEED};
    use crate::permgroup::direct_product;
    use crate::permgroup::named::{alternating, by_name, cyclic, klein_four, symmetric};

    fn blocks(g: &PermGroup, p: u64) -> (StructAlgebra, Vec<BlockData>) {
        let a = group_algebra(g, p).unwrap();
        let b = block_decompose(&a, g, DEFAULT_SEED).unwrap();
        (a, b)
    }

    fn dims(bs: &[BlockData]) -> Vec<usize> {
        bs.iter().map(|b| b.dim.unwrap()).collect()
    }

    #[test]
    fn block_examples() {
        let (_, b) = blocks(&symmetric(3), 3);
        assert_eq!(dims(&b), vec![6]);
        let (_, b) = blocks(&symmetric(3), 2);
        assert_eq!(dims(&b), vec![2, 4]);
        assert!(b[0].is_principal && !b[1].is_principal);
        assert_eq!((b[0].defect, b[1].defect), (1, 0));
        let (_, b) = blocks(&cyclic(3), 2);
        assert_eq!(dims(&b), vec![1, 1, 1]);
        let (_, b) = blocks(&alternating(4), 2);
        assert_eq!(dims(&b), vec![12]);
        assert_eq!(b[0].defect, 2);
        let (_, b) = blocks(&symmetric(3), 5);
        assert_eq!(b.len(), 3);
        assert!(b.iter().all(|x| x.defect == 0));
    }

    #[test]
    fn idempotent_laws() {
        for name in ["S3", "D8", "A4", "S4", "C2xS3", "Q8"] {
            let g = by_name(name).unwrap();
            for p in [2, 3, 5] {
                let (a, bs) = blocks(&g, p);
                let k = a.field();
                let mut sum = vec![0; a.dim()];
                for (i, b) in bs.iter().enumerate() {
                    for (j, c) in bs.iter().enumerate() {
                        let prod = a.mul(&b.idempotent, &c.idempotent);
                        if i == j {
                            assert_eq!(prod, b.idempotent, "{name} p={p}");
                        } else {
                            assert!(prod.iter().all(|&x| x == 0), "{name} p={p}");
                        }
                    }
                    for (s, &x) in sum.iter_mut().zip(&b.idempotent) {
                        *s = k.add(*s, x);
                    }
                }
                assert_eq!(sum, a.unit());
                assert_eq!(dims(&bs).iter().sum::<usize>(), g.order());
                assert!(bs.len() <= p_regular_classes(&g, p));
                assert_eq!(bs.iter().filter(|b| b.is_principal).count(), 1);
                if g.order() as u64 % p != 0 {
                    assert!(bs.iter().all(|b| b.defect == 0));
                }
            }
        }
    }

    #[test]
    fn central_characters_are_multiplicative() {
        let g = symmetric(4);
        let a = group_algebra(&g, 3).unwrap();
        let z = center(&a, &g).unwrap();
        let k = a.field();
        for b in block_decompose(&a, &g, DEFAULT_SEED).unwrap() {
            let w = &b.central_character;
            for i in 0..z.dim() {
                for j in 0..z.dim() {
                    let lhs = z.product(i, j).iter().fold(0, |acc, &(t, c)| k.add(acc, k.mul(c, w[t as usize])));
                    assert_eq!(lhs, k.mul(w[i], w[j]));
                }
            }
        }
    }

    #[test]
    fn block_algebra_examples() {
        let (a, b) = blocks(&symmetric(3), 3);
        assert!(block_algebra(&a, &b[0]).unwrap().same_structure(&a));
        let (a, b) = blocks(&symmetric(3), 2);
        let principal = block_algebra(&a, &b[0]).unwrap();
        assert_eq!(principal.dim(), 2);
        assert!(principal.check_unit() && principal.check_associative(0, 0));
        let matrix = block_algebra(&a, &b[1]).unwrap();
        assert_eq!(matrix.dim(), 4);
        assert!(matrix.check_unit() && !matrix.is_commutative());
    }

    #[test]
    fn tensor_matches_product_group() {
        let c2 = cyclic(2);
        let a = group_algebra(&c2, 2).unwrap();
        let t = tensor_algebra(&a, &a).unwrap();
        let v4 = klein_four();
        let kv4 = group_algebra(&v4, 2).unwrap();
        // match (i, j) with the element acting as the i-th and j-th generator power
        let x = v4.index_of(&v4.generators()[0]).unwrap();
        let y = v4.index_of(&v4.generators()[1]).unwrap();
        let perm: Vec<usize> = vec![0, y, x, v4.mul_index(x, y)];
        assert!(t.relabel(&perm).same_structure(&kv4));

        let s3 = symmetric(3);
        let ks3 = group_algebra(&s3, 2).unwrap();
        let tt = tensor_algebra(&ks3, &ks3).unwrap();
        let g = direct_product(&s3, &s3).unwrap();
        let bs = block_decompose(&group_algebra(&g, 2).unwrap(), &g, DEFAULT_SEED).unwrap();
        assert_eq!(dims(&bs), vec![4, 8, 8, 16]);
        assert_eq!(tt.dim(), 36);
    }
}
