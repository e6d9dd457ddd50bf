//! Dense univariate polynomials over a [`FieldSpec`], lowest coefficient first.
//!
//! Only what the idempotent splitter needs: Euclid, modular powers, and
//! factorisation by distinct-degree plus Cantor–Zassenhaus equal-degree splitting.

use rand::Rng;

use crate::ffield::field::{prime_factors, Elem, FieldSpec};

pub type Poly = Vec<Elem>;

pub fn trim(f: &mut Poly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

pub fn degree(f: &[Elem]) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

pub fn is_zero(f: &[Elem]) -> bool {
    degree(f).is_none()
}

pub fn x() -> Poly {
    vec![0, 1]
}

pub fn add(k: &FieldSpec, a: &[Elem], b: &[Elem]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| k.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut out);
    out
}

pub fn sub(k: &FieldSpec, a: &[Elem], b: &[Elem]) -> Poly {
    let n = a.len().max(b.len());
    let mut out: Poly = (0..n)
        .map(|i| k.sub(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
        .collect();
    trim(&mut out);
    out
}

pub fn scale(k: &FieldSpec, a: &[Elem], c: Elem) -> Poly {
    let mut out: Poly = a.iter().map(|&x| k.mul(x, c)).collect();
    trim(&mut out);
    out
}

pub fn mul(k: &FieldSpec, a: &[Elem], b: &[Elem]) -> Poly {
    let (Some(da), Some(db)) = (degree(a), degree(b)) else {
        return Vec::new();
    };
    let mut out = vec![0; da + db + 1];
    for (i, &x) in a[..=da].iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b[..=db].iter().enumerate() {
            out[i + j] = k.add(out[i + j], k.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder; panics on division by the zero polynomial.
pub fn divrem(k: &FieldSpec, a: &[Elem], b: &[Elem]) -> (Poly, Poly) {
    let db = degree(b).expect("division by zero polynomial");
    let lead_inv = k.inv(b[db]).expect("nonzero leading coefficient");
    let mut r: Poly = a.to_vec();
    trim(&mut r);
    let Some(da) = degree(&r) else {
        return (Vec::new(), Vec::new());
    };
    if da < db {
        return (Vec::new(), r);
    }
    let mut q = vec![0; da - db + 1];
    for d in (db..=da).rev() {
        let c = r[d];
        if c == 0 {
            continue;
        }
        let factor = k.mul(c, lead_inv);
        q[d - db] = factor;
        for (j, &bj) in b[..=db].iter().enumerate() {
            let t = d - db + j;
            r[t] = k.sub(r[t], k.mul(factor, bj));
        }
    }
    trim(&mut q);
    trim(&mut r);
    (q, r)
}

pub fn rem(k: &FieldSpec, a: &[Elem], b: &[Elem]) -> Poly {
    divrem(k, a, b).1
}

pub fn monic(k: &FieldSpec, f: &[Elem]) -> Poly {
    match degree(f) {
        None => Vec::new(),
        Some(d) => {
            let inv = k.inv(f[d]).expect("nonzero");
            scale(k, &f[..=d], inv)
        }
    }
}

/// Monic gcd (zero if both inputs are zero).
pub fn gcd(k: &FieldSpec, a: &[Elem], b: &[Elem]) -> Poly {
    let mut a: Poly = a.to_vec();
    let mut b: Poly = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(k, &a, &b);
        a = b;
        b = r;
    }
    monic(k, &a)
}

/// `u` with `u * a ≡ 1 (mod m)`, if `a` is a unit modulo `m`.
pub fn inverse_mod(k: &FieldSpec, a: &[Elem], m: &[Elem]) -> Option<Poly> {
    // invariant: r0 ≡ s0 * a, r1 ≡ s1 * a (mod m)
    let (mut r0, mut r1) = (m.to_vec(), rem(k, a, m));
    let (mut s0, mut s1): (Poly, Poly) = (Vec::new(), vec![1]);
    trim(&mut r0);
    while !r1.is_empty() {
        let (q, r) = divrem(k, &r0, &r1);
        let s = sub(k, &s0, &mul(k, &q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let inv = k.inv(r0[0]).expect("nonzero");
    Some(rem(k, &scale(k, &s0, inv), m))
}

pub fn mulmod(k: &FieldSpec, a: &[Elem], b: &[Elem], m: &[Elem]) -> Poly {
    rem(k, &mul(k, a, b), m)
}

pub fn powmod(k: &FieldSpec, base: &[Elem], mut e: u64, m: &[Elem]) -> Poly {
    let mut acc: Poly = rem(k, &[1], m);
    let mut b = rem(k, base, m);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(k, &acc, &b, m);
        }
        b = mulmod(k, &b, &b, m);
        e >>= 1;
    }
    acc
}

pub fn eval(k: &FieldSpec, f: &[Elem], x: Elem) -> Elem {
    f.iter().rev().fold(0, |acc, &c| k.add(k.mul(acc, x), c))
}

/// Rabin's irreducibility test for a polynomial of degree >= 1.
pub fn is_irreducible(k: &FieldSpec, f: &[Elem]) -> bool {
    let Some(n) = degree(f) else {
        return false;
    };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let q = k.order() as u64;
    let xm = rem(k, &x(), f);
    let mut powers = Vec::with_capacity(n + 1);
    let mut h = xm.clone();
    powers.push(h.clone());
    for _ in 0..n {
        h = powmod(k, &h, q, f);
        powers.push(h.clone());
    }
    // powers[i] = x^(q^i) mod f
    if sub(k, &powers[n], &xm).iter().any(|&c| c != 0) {
        return false;
    }
    for r in prime_factors(n as u64) {
        let d = n / r as usize;
        let g = gcd(k, f, &sub(k, &powers[d], &xm));
        if degree(&g) != Some(0) {
            return false;
        }
    }
    true
}

/// Distinct-degree factorisation of a monic polynomial: returns `(g_d, d)` where
/// `g_d` is the product of the *distinct* monic irreducible factors of degree `d`.
/// Repeated factors are reported once.
pub fn distinct_degree(k: &FieldSpec, f: &[Elem]) -> Vec<(Poly, usize)> {
    let mut rest = monic(k, f);
    let mut out = Vec::new();
    let q = k.order() as u64;
    let mut h = rem(k, &x(), &rest);
    let mut d = 0;
    while degree(&rest).unwrap_or(0) > 0 {
        d += 1;
        h = powmod(k, &h, q, &rest);
        let g = gcd(k, &rest, &sub(k, &h, &x()));
        if degree(&g).unwrap_or(0) > 0 {
            // g is squarefree; strip every power of its factors from rest
            loop {
                let common = gcd(k, &rest, &g);
                if degree(&common).unwrap_or(0) == 0 {
                    break;
                }
                rest = divrem(k, &rest, &common).0;
            }
            out.push((g, d));
            h = rem(k, &h, &rest);
        }
    }
    out
}

/// Splits a squarefree product of irreducibles of common degree `d`.
pub fn equal_degree<R: Rng>(k: &FieldSpec, g: &[Elem], d: usize, rng: &mut R) -> Vec<Poly> {
    let n = degree(g).unwrap_or(0);
    if n <= d {
        return vec![monic(k, g)];
    }
    let q = k.order() as u64;
    loop {
        let a: Poly = {
            let mut a: Poly = (0..n).map(|_| rng.gen_range(0..k.order())).collect();
            trim(&mut a);
            a
        };
        if degree(&a).unwrap_or(0) == 0 {
            continue;
        }
        let b = if k.p() == 2 {
            // absolute trace to GF(2) of the degree-d extension
            let steps = k.m() as usize * d;
            let mut t = rem(k, &a, g);
            let mut acc = t.clone();
            for _ in 1..steps {
                t = mulmod(k, &t, &t, g);
                acc = add(k, &acc, &t);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (prod_{i<d} a^(q^i))^((q-1)/2)
            let mut t = rem(k, &a, g);
            let mut norm = t.clone();
            for _ in 1..d {
                t = powmod(k, &t, q, g);
                norm = mulmod(k, &norm, &t, g);
            }
            sub(k, &powmod(k, &norm, (q - 1) / 2, g), &[1])
        };
        let h = gcd(k, g, &b);
        let dh = degree(&h).unwrap_or(0);
        if dh > 0 && dh < n {
            let (other, _) = divrem(k, g, &h);
            let mut out = equal_degree(k, &h, d, rng);
            out.extend(equal_degree(k, &other, d, rng));
            return out;
        }
    }
}

/// Full factorisation into monic irreducibles with multiplicities, sorted by
/// degree then coefficients.
pub fn factor<R: Rng>(k: &FieldSpec, f: &[Elem], rng: &mut R) -> Vec<(Poly, usize)> {
    let f = monic(k, f);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(k, &f) {
        for u in equal_degree(k, &g, d, rng) {
            let mut mult = 0;
            let mut rest = f.clone();
            loop {
                let (quo, r) = divrem(k, &rest, &u);
                if !is_zero(&r) {
                    break;
                }
                mult += 1;
                rest = quo;
            }
            out.push((u, mult));
        }
    }
    out.sort_by(|a, b| {
        (a.0.len(), a.0.iter().rev().collect::<Vec<_>>()).cmp(&(b.0.len(), b.0.iter().rev().collect::<Vec<_>>()))
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn prod(k: &FieldSpec, fs: &[(Poly, usize)]) -> Poly {
        let mut acc = vec![1];
        for (f, e) in fs {
            for _ in 0..*e {
                acc = mul(k, &acc, f);
            }
        }
        acc
    }

    #[test]
    fn divrem_reconstructs() {
        let k = FieldSpec::new(5, 1).unwrap();
        let a = vec![1, 2, 3, 4, 1];
        let b = vec![2, 0, 1];
        let (q, r) = divrem(&k, &a, &b);
        assert!(degree(&r).map_or(true, |d| d < 2));
        assert_eq!(add(&k, &mul(&k, &q, &b), &r), a);
    }

    #[test]
    fn irreducibility_matches_root_search_for_cubics() {
        let k = FieldSpec::new(3, 1).unwrap();
        for n in 0..27u32 {
            let f = vec![n % 3, (n / 3) % 3, n / 9, 1];
            let has_root = (0..3).any(|x| eval(&k, &f, x) == 0);
            assert_eq!(is_irreducible(&k, &f), !has_root, "{f:?}");
        }
    }

    #[test]
    fn factorisation_recovers_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (p, m) in [(2, 1), (3, 1), (2, 2), (3, 2), (5, 1)] {
            let k = FieldSpec::new(p, m).unwrap();
            // (x - a)^2 (x - b) (irreducible quadratic) for distinct a, b
            let q = k.order();
            let lin = |a: Elem| vec![k.neg(a), 1];
            let irr = (0..q * q)
                .map(|n| vec![n % q, n / q, 1])
                .find(|f| is_irreducible(&k, f))
                .unwrap();
            let parts = vec![(lin(0), 2), (lin(1), 1), (irr.clone(), 3)];
            let f = prod(&k, &parts);
            let got = factor(&k, &f, &mut rng);
            assert_eq!(prod(&k, &got), monic(&k, &f));
            let mut degs: Vec<(usize, usize)> = got.iter().map(|(g, e)| (degree(g).unwrap(), *e)).collect();
            degs.sort();
            assert_eq!(degs, vec![(1, 1), (1, 2), (2, 3)]);
            for (g, _) in &got {
                assert!(is_irreducible(&k, g));
            }
        }
    }

    #[test]
    fn splits_many_linear_factors() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let k = FieldSpec::new(2, 4).unwrap();
        let mut f = vec![1];
        for a in 0..16 {
            f = mul(&k, &f, &[a, 1]);
        }
        let got = factor(&k, &f, &mut rng);
        assert_eq!(got.len(), 16);
        assert!(got.iter().all(|(g, e)| degree(g) == Some(1) && *e == 1));
    }

    #[test]
    fn inverse_mod_agrees_with_products() {
        let k = FieldSpec::new(2, 2).unwrap();
        let m = vec![1, 1, 0, 1];
        for a0 in 0..4 {
            for a1 in 0..4 {
                let a = vec![a0, a1, 1];
                match inverse_mod(&k, &a, &m) {
                    Some(u) => assert_eq!(mulmod(&k, &u, &a, &m), vec![1]),
                    None => assert!(degree(&gcd(&k, &a, &m)).unwrap() > 0),
                }
            }
        }
        assert!(inverse_mod(&k, &[1, 1], &[1, 0, 1]).is_none());
    }
}
