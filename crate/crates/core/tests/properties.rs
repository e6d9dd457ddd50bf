use proptest::prelude::*;

use hh1lab::catalgebra::{
    bar_hh, category_algebra, frobenius_certificate, nerve_cohomology, radical_and_semisimplicity,
    transporter_category, verify_certificate, FinCategory, GSet,
};
use hh1lab::ffield::linalg::dense_rank;
use hh1lab::ffield::{rank_nullspace, FieldSpec, SparseMatrix};
use hh1lab::groupalgebra::{block_decompose_over, group_algebra_over, splitting_degree, DEFAULT_SEED};
use hh1lab::hhone::{additive_oracle, derivation_space, lie_structure};
use hh1lab::permgroup::{Perm, PermGroup};

fn perm(degree: usize) -> impl Strategy<Value = Perm> {
    Just((0..degree).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Perm::new(v).unwrap())
}

/// Subgroups of S_n for n ≤ 4 from one or two random generators.
fn small_group() -> impl Strategy<Value = PermGroup> {
    (2usize..=4)
        .prop_flat_map(|n| (Just(n), prop::collection::vec(perm(n), 1..=2)))
        .prop_map(|(n, gens)| PermGroup::from_generators(n, gens).unwrap())
}

fn prime() -> impl Strategy<Value = u64> {
    prop::sample::select(vec![2u64, 3, 5])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn field_axioms(p in prime(), m in 1u32..=3, a in 0u32..1000, b in 0u32..1000, c in 0u32..1000) {
        let k = FieldSpec::new(p, m).unwrap();
        let q = k.order();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(k.mul(a, k.add(b, c)), k.add(k.mul(a, b), k.mul(a, c)));
        prop_assert_eq!(k.mul(a, b), k.mul(b, a));
        prop_assert_eq!(k.add(a, k.neg(a)), 0);
        if a != 0 {
            prop_assert_eq!(k.mul(a, k.inv(a).unwrap()), k.one());
        }
        prop_assert_eq!(k.frobenius(k.add(a, b)), k.add(k.frobenius(a), k.frobenius(b)));
    }

    #[test]
    fn sparse_rank_matches_dense(p in prop::sample::select(vec![2u64, 3]), rows in 1usize..9, cols in 1usize..9, seed in any::<u64>()) {
        let k = FieldSpec::new(p, 1).unwrap();
        let mut x = seed;
        let dense: Vec<Vec<u32>> = (0..rows)
            .map(|_| (0..cols).map(|_| { x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407); ((x >> 33) % p) as u32 }).collect())
            .collect();
        let m = SparseMatrix::from_dense(&dense, cols);
        let (r, null) = rank_nullspace(&k, &m);
        prop_assert_eq!(r, dense_rank(&k, &dense));
        prop_assert_eq!(r + null.len(), cols);
        for v in &null {
            prop_assert!(m.mul_vec(&k, v).iter().all(|&e| e == 0));
        }
    }

    #[test]
    fn orbit_stabilizer(g in small_group()) {
        let total: usize = g.classes().iter().map(|c| c.size).sum();
        prop_assert_eq!(total, g.order());
        for c in g.classes() {
            prop_assert_eq!(c.size * c.centralizer_order, g.order());
        }
    }

    #[test]
    fn oracle_matches_solver(g in small_group(), p in prime()) {
        let a = group_algebra_over(&g, &FieldSpec::new(p, 1).unwrap()).unwrap();
        let d = derivation_space(&a).unwrap();
        prop_assert_eq!(additive_oracle(&g, p), d.hh1_dim as u64);
        prop_assert_eq!(d.center_dim, g.num_classes());
        for v in &d.basis {
            prop_assert!(d.satisfies_leibniz(v));
        }
    }

    #[test]
    fn blocks_partition_the_algebra(g in small_group(), p in prime()) {
        let f = FieldSpec::new(p, splitting_degree(&g, p).unwrap()).unwrap();
        let a = group_algebra_over(&g, &f).unwrap();
        let blocks = block_decompose_over(&g, &f, DEFAULT_SEED).unwrap();
        let mut sum = vec![0; g.order()];
        for (i, b) in blocks.iter().enumerate() {
            prop_assert_eq!(a.mul(&b.idempotent, &b.idempotent), b.idempotent.clone());
            for c in &blocks[i + 1..] {
                prop_assert!(a.mul(&b.idempotent, &c.idempotent).iter().all(|&x| x == 0));
            }
            for (s, &x) in sum.iter_mut().zip(&b.idempotent) {
                *s = f.add(*s, x);
            }
        }
        prop_assert_eq!(sum, a.unit().to_vec());
        prop_assert_eq!(blocks.iter().map(|b| b.dim.unwrap()).sum::<usize>(), g.order());
        prop_assert_eq!(blocks.iter().filter(|b| b.is_principal).count(), 1);
    }

    #[test]
    fn maschke(g in small_group(), p in prime()) {
        let a = group_algebra_over(&g, &FieldSpec::new(p, 1).unwrap()).unwrap();
        let info = radical_and_semisimplicity(&a).unwrap();
        prop_assert_eq!(info.semisimple, g.order() as u64 % p != 0);
        let s = frobenius_certificate(&a, DEFAULT_SEED, 16).unwrap();
        let c = s.certificate.unwrap();
        prop_assert!(c.symmetric && verify_certificate(&a, &c));
    }

    #[test]
    fn lie_bracket_axioms(g in small_group(), p in prime()) {
        prop_assume!(g.order() <= 12);
        let a = group_algebra_over(&g, &FieldSpec::new(p, 1).unwrap()).unwrap();
        let l = lie_structure(&derivation_space(&a).unwrap()).unwrap();
        prop_assert!(l.is_antisymmetric(a.field()));
        prop_assert!(l.satisfies_jacobi(a.field()));
        prop_assert!(l.derived_series_lengths.windows(2).all(|w| w[1] < w[0]));
        prop_assert_eq!(l.solvable, l.derived_series_lengths.last() == Some(&0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn bar_complex_low_degrees(g in small_group(), p in prime()) {
        prop_assume!(g.order() <= 8);
        let a = group_algebra_over(&g, &FieldSpec::new(p, 1).unwrap()).unwrap();
        let d = derivation_space(&a).unwrap();
        let h = bar_hh(&a, 1).unwrap();
        prop_assert_eq!(h, vec![d.center_dim, d.hh1_dim]);
    }

    #[test]
    fn summand_inequality_on_transporters(g in small_group(), points in 1usize..=3, natural in any::<bool>(), p in prime()) {
        let x = if natural { GSet::natural(&g) } else { GSet::trivial(&g, points) };
        let t = transporter_category(&g, &x).unwrap();
        prop_assume!(t.num_morphisms() <= 12);
        let k = FieldSpec::new(p, 1).unwrap();
        let n = nerve_cohomology(&t, &k, 2).unwrap();
        prop_assert_eq!(n[0], t.components());
        let hh = bar_hh(&category_algebra(&t, &k), 2).unwrap();
        for (a, b) in n.iter().zip(&hh) {
            prop_assert!(a <= b);
        }
        let a = category_algebra(&t, &k);
        let c = frobenius_certificate(&a, DEFAULT_SEED, 16).unwrap().certificate.unwrap();
        prop_assert!(c.symmetric);
    }

    #[test]
    fn discrete_categories(n in 1usize..6, p in prime()) {
        let k = FieldSpec::new(p, 1).unwrap();
        let c = FinCategory::discrete(n);
        prop_assert_eq!(nerve_cohomology(&c, &k, 2).unwrap(), vec![n, 0, 0]);
        prop_assert!(radical_and_semisimplicity(&category_algebra(&c, &k)).unwrap().semisimple);
    }
}
