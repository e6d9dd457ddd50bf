use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffield::poly;

/// Raw element encoding: the coefficient vector `c_0 + c_1 t + ... + c_{m-1} t^{m-1}`
/// packed as the integer `sum c_i p^i`. Zero is `0`, one is `1`.
pub type Elem = u32;

/// Fields up to this order get log/antilog tables.
const TABLE_LIMIT: u64 = 1 << 16;

/// A finite field GF(p^m) with a fixed, deterministically chosen modulus.
///
/// Cloning is cheap (shared tables). Two specs compare equal iff they have the
/// same characteristic and modulus.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

struct Inner {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<Elem>,
    kind: Kind,
}

enum Kind {
    Prime,
    Table {
        exp: Vec<u32>,
        log: Vec<u32>,
        // zech[n] = log(1 + g^n), NO_LOG when 1 + g^n = 0
        zech: Vec<u32>,
    },
    Poly,
}

const NO_LOG: u32 = u32::MAX;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FieldSpec {
    /// Builds GF(p^m). The modulus is the least monic irreducible of degree `m`,
    /// where candidates `t^m + c_{m-1} t^{m-1} + ... + c_0` are ordered by the
    /// integer `sum c_i p^i`.
    pub fn new(p: u64, m: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !(1..=16).contains(&m) {
            return Err(Error::DegreeOutOfRange(m));
        }
        let q = (p as u128).checked_pow(m).filter(|&q| q < (1u128 << 32));
        let Some(q) = q else {
            return Err(Error::FieldTooLarge { p, m });
        };
        let prime = FieldSpec(Arc::new(Inner {
            p: p as u32,
            m: 1,
            q: p as u32,
            modulus: vec![0, 1],
            kind: Kind::Prime,
        }));
        if m == 1 {
            return Ok(prime);
        }
        let modulus = least_irreducible(&prime, m as usize);
        let mut inner = Inner {
            p: p as u32,
            m,
            q: q as u32,
            modulus,
            kind: Kind::Poly,
        };
        if q as u64 <= TABLE_LIMIT {
            inner.kind = build_tables(&inner);
        }
        Ok(FieldSpec(Arc::new(inner)))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn m(&self) -> u32 {
        self.0.m
    }

    /// Field order p^m.
    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Monic modulus, lowest coefficient first (length m + 1).
    pub fn modulus(&self) -> &[Elem] {
        &self.0.modulus
    }

    pub fn prime_field(&self) -> FieldSpec {
        FieldSpec::new(self.p() as u64, 1).expect("characteristic is prime")
    }

    #[inline]
    pub fn zero(&self) -> Elem {
        0
    }

    #[inline]
    pub fn one(&self) -> Elem {
        1
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, n: i64) -> Elem {
        n.rem_euclid(self.0.p as i64) as Elem
    }

    /// All field elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.0.q
    }

    pub fn coeffs(&self, a: Elem) -> Vec<u32> {
        let p = self.0.p;
        let mut a = a;
        (0..self.0.m)
            .map(|_| {
                let c = a % p;
                a /= p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Elem {
        let p = self.0.p;
        let mut x: u64 = 0;
        for &ci in c.iter().take(self.0.m as usize).rev() {
            x = x * p as u64 + (ci % p) as u64;
        }
        x as Elem
    }

    /// The class of `t` in GF(p)[t]/(modulus); `1` for a prime field.
    pub fn generator_t(&self) -> Elem {
        if self.0.m == 1 {
            1
        } else {
            self.0.p
        }
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let inner = &*self.0;
        match &inner.kind {
            Kind::Prime => {
                let s = a as u64 + b as u64;
                let p = inner.p as u64;
                (if s >= p { s - p } else { s }) as Elem
            }
            _ if inner.p == 2 => a ^ b,
            Kind::Table { exp, log, zech } => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let n = inner.q - 1;
                let la = log[a as usize];
                let lb = log[b as usize];
                let d = if lb >= la { lb - la } else { lb + n - la };
                let z = zech[d as usize];
                if z == NO_LOG {
                    0
                } else {
                    let e = la + z;
                    exp[(if e >= n { e - n } else { e }) as usize]
                }
            }
            Kind::Poly => self.digitwise(a, b, |x, y, p| (x + y) % p),
        }
    }

    fn digitwise(&self, a: Elem, b: Elem, f: impl Fn(u32, u32, u32) -> u32) -> Elem {
        let p = self.0.p;
        let (mut a, mut b) = (a, b);
        let mut out: u64 = 0;
        let mut place: u64 = 1;
        for _ in 0..self.0.m {
            out += f(a % p, b % p, p) as u64 * place;
            a /= p;
            b /= p;
            place *= p as u64;
        }
        out as Elem
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        let inner = &*self.0;
        if a == 0 || inner.p == 2 {
            return a;
        }
        match &inner.kind {
            Kind::Prime => inner.p - a,
            _ => self.digitwise(a, 0, |x, _, p| (p - x) % p),
        }
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        let inner = &*self.0;
        match &inner.kind {
            Kind::Prime => ((a as u64 * b as u64) % inner.p as u64) as Elem,
            Kind::Table { exp, log, .. } => {
                let n = inner.q - 1;
                let e = log[a as usize] + log[b as usize];
                exp[(if e >= n { e - n } else { e }) as usize]
            }
            Kind::Poly => self.poly_mul(a, b),
        }
    }

    fn poly_mul(&self, a: Elem, b: Elem) -> Elem {
        let p = self.0.p as u64;
        let m = self.0.m as usize;
        let ca = self.coeffs(a);
        let cb = self.coeffs(b);
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in ca.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in cb.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        let modulus = &self.0.modulus;
        for d in (m..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            for (k, &mk) in modulus.iter().enumerate().take(m) {
                let t = d - m + k;
                prod[t] = (prod[t] + (p - c) * mk as u64) % p;
            }
            prod[d] = 0;
        }
        let low: Vec<u32> = prod[..m].iter().map(|&c| c as u32).collect();
        self.from_coeffs(&low)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        if let Kind::Table { exp, log, .. } = &self.0.kind {
            if a == 0 {
                return if e == 0 { 1 } else { 0 };
            }
            let n = (self.0.q - 1) as u64;
            let l = (log[a as usize] as u64 * (e % n)) % n;
            return exp[l as usize];
        }
        let mut base = a;
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0.kind {
            Kind::Table { exp, log, .. } => {
                let n = self.0.q - 1;
                let l = log[a as usize];
                exp[(if l == 0 { 0 } else { n - l }) as usize]
            }
            _ => self.pow(a, self.0.q as u64 - 2),
        })
    }

    #[inline]
    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn frobenius(&self, a: Elem) -> Elem {
        self.pow(a, self.0.p as u64)
    }

    /// Wraps a raw value as a checked element.
    pub fn elem(&self, raw: Elem) -> FieldElement {
        debug_assert!(raw < self.0.q);
        FieldElement {
            field: self.clone(),
            raw,
        }
    }

    pub fn format(&self, a: Elem) -> String {
        if self.0.m == 1 {
            return a.to_string();
        }
        let terms: Vec<String> = self
            .coeffs(a)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| match (i, c) {
                (0, c) => c.to_string(),
                (1, 1) => "t".to_string(),
                (1, c) => format!("{c}t"),
                (i, 1) => format!("t^{i}"),
                (i, c) => format!("{c}t^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {:?}", self.0.p, self.0.m, self.0.modulus)
    }
}

fn least_irreducible(prime: &FieldSpec, m: usize) -> Vec<Elem> {
    let p = prime.p() as u64;
    let count = p.pow(m as u32);
    for n in 0..count {
        let mut f = Vec::with_capacity(m + 1);
        let mut x = n;
        for _ in 0..m {
            f.push((x % p) as Elem);
            x /= p;
        }
        f.push(1);
        if f[0] != 0 && poly::is_irreducible(prime, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

fn build_tables(inner: &Inner) -> Kind {
    // Temporary poly-arithmetic view of the same field to build the tables.
    let view = FieldSpec(Arc::new(Inner {
        p: inner.p,
        m: inner.m,
        q: inner.q,
        modulus: inner.modulus.clone(),
        kind: Kind::Poly,
    }));
    let q = inner.q;
    let n = q - 1;
    let factors = prime_factors(n as u64);
    let g = (2..q)
        .find(|&g| factors.iter().all(|&r| view.pow(g, n as u64 / r) != 1))
        .unwrap_or(1);
    let mut exp = vec![0u32; n as usize];
    let mut log = vec![NO_LOG; q as usize];
    let mut x: Elem = 1;
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = x;
        log[x as usize] = i as u32;
        x = view.mul(x, g);
    }
    let zech = (0..n)
        .map(|i| {
            let s = view.add(1, exp[i as usize]);
            if s == 0 {
                NO_LOG
            } else {
                log[s as usize]
            }
        })
        .collect();
    Kind::Table { exp, log, zech }
}

/// A field element bound to its field; arithmetic is checked for field agreement.
#[derive(Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: FieldSpec,
    raw: Elem,
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn raw(&self) -> Elem {
        self.raw
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.field.coeffs(self.raw)
    }

    pub fn is_zero(&self) -> bool {
        self.raw == 0
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.elem(self.field.add(self.raw, other.raw)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.elem(self.field.sub(self.raw, other.raw)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.elem(self.field.mul(self.raw, other.raw)))
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.field.elem(self.field.div(self.raw, other.raw)?))
    }

    pub fn neg(&self) -> FieldElement {
        self.field.elem(self.field.neg(self.raw))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(self.field.elem(self.field.inv(self.raw)?))
    }

    pub fn pow(&self, e: u64) -> FieldElement {
        self.field.elem(self.field.pow(self.raw, e))
    }

    pub fn frobenius(&self) -> FieldElement {
        self.field.elem(self.field.frobenius(self.raw))
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.field.format(self.raw))
    }
}
