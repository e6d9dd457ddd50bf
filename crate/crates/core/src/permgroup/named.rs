//! Small named groups used by the corpus, examples and tests.

use crate::permgroup::group::{direct_product, PermGroup};
use crate::permgroup::perm::Perm;

fn perm(images: Vec<usize>) -> Perm {
    Perm::new(images).expect("valid permutation")
}

/// Cyclic group of order `n` on `n` points.
pub fn cyclic(n: usize) -> PermGroup {
    let gens = if n > 1 {
        vec![perm((0..n).map(|i| (i + 1) % n).collect())]
    } else {
        Vec::new()
    };
    PermGroup::from_generators(n.max(1), gens).expect("small group")
}

pub fn symmetric(n: usize) -> PermGroup {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(perm((0..n).map(|i| (i + 1) % n).collect()));
        let mut t: Vec<usize> = (0..n).collect();
        t.swap(0, 1);
        gens.push(perm(t));
    }
    PermGroup::from_generators(n.max(1), gens).expect("small group")
}

/// Alternating group generated by the 3-cycles `(0 1 k)`.
pub fn alternating(n: usize) -> PermGroup {
    let gens = (2..n)
        .map(|k| Perm::from_cycles(n, &[&[0, 1, k]]).expect("3-cycle"))
        .collect();
    PermGroup::from_generators(n.max(1), gens).expect("small group")
}

/// Dihedral group of order `2n` acting on the `n`-gon.
pub fn dihedral(n: usize) -> PermGroup {
    let r = perm((0..n).map(|i| (i + 1) % n).collect());
    let s = perm((0..n).map(|i| (n - i) % n).collect());
    PermGroup::from_generators(n, vec![r, s]).expect("small group")
}

pub fn klein_four() -> PermGroup {
    let a = Perm::from_cycles(4, &[&[0, 1], &[2, 3]]).expect("valid");
    let b = Perm::from_cycles(4, &[&[0, 2], &[1, 3]]).expect("valid");
    PermGroup::from_generators(4, vec![a, b]).expect("small group")
}

/// Quaternion group in its regular representation. Points `0..4` are
/// `1, i, j, k` and `4..8` their negatives.
pub fn quaternion() -> PermGroup {
    // unit products: TABLE[a][b] = (sign, unit) for a*b with a, b in {1,i,j,k}
    const TABLE: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let mul = |x: usize, y: usize| {
        let (s, u) = TABLE[x % 4][y % 4];
        let neg = (x >= 4) ^ (y >= 4) ^ s;
        u + if neg { 4 } else { 0 }
    };
    // right multiplication by i and by j
    let gens = [1, 2]
        .iter()
        .map(|&g| perm((0..8).map(|x| mul(x, g)).collect()))
        .collect();
    PermGroup::from_generators(8, gens).expect("small group")
}

/// Looks up a corpus name such as `S3`, `C2xS3` or `S3xS3`.
pub fn by_name(name: &str) -> Option<PermGroup> {
    if let Some((a, b)) = name.split_once(['x', '×']) {
        return direct_product(&by_name(a)?, &by_name(b)?).ok();
    }
    let (kind, n) = name.split_at(1);
    let n: usize = n.parse().ok()?;
    match (kind, n) {
        ("C", 1..=64) => Some(cyclic(n)),
        ("S", 1..=9) => Some(symmetric(n)),
        ("A", 3..=7) => Some(alternating(n)),
        ("D", 4..=64) if n % 2 == 0 => Some(dihedral(n / 2)),
        ("V", 4) => Some(klein_four()),
        ("Q", 8) => Some(quaternion()),
        _ => None,
    }
}
