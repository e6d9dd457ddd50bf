use serde::Serialize;

use crate::catalgebra::category::{category_algebra, CatFunctor, FinCategory};
use crate::catalgebra::cohomology::{bar_hh, nerve_cohomology, restriction_map, RestrictionDegree};
use crate::catalgebra::structure::{frobenius_certificate, radical_and_semisimplicity, FrobeniusSearch};
use crate::error::Result;
use crate::ffield::FieldSpec;
use crate::groupalgebra::StructAlgebra;
use crate::hhone::derivation_space;

/// Random functionals tried when the canonical one fails.
pub const FROBENIUS_TRIALS: u64 = 256;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GlobalDimension {
    Zero,
    Infinite,
    Unknown,
}

#[derive(Clone, Debug, Serialize)]
pub struct HappelVerdict {
    #[serde(skip)]
    pub algebra: StructAlgebra,
    pub prime: u64,
    pub algebra_dim: usize,
    pub frobenius: FrobeniusSearch,
    pub radical_dim: usize,
    pub semisimple: bool,
    pub gldim: GlobalDimension,
    /// `dim HHⁿ(k𝒞)` for `0 ≤ n ≤ N`.
    pub hh_dims: Vec<usize>,
    /// `dim Hⁿ(𝒞, k)` for `0 ≤ n ≤ N`.
    pub nerve_dims: Vec<usize>,
    pub summand_inequality: bool,
    pub restriction: Option<Vec<RestrictionDegree>>,
    /// Least `n ≥ 1` with `HHⁿ ≠ 0`, if any within range.
    pub first_positive_nonvanishing: Option<usize>,
    /// Frobenius with an injective restriction, when a functor was given.
    pub hypotheses_hold: Option<bool>,
    pub happel_consistent: bool,
}

/// Builds `k𝒞` over the prime field and runs every structural check up to
/// degree `top`. With a functor to a one-object category, also records the
/// restriction ranks along it.
pub fn happel_probe(
    c: &FinCategory,
    p: u64,
    top: usize,
    functor: Option<&CatFunctor>,
    seed: u64,
) -> Result<HappelVerdict> {
    let field = FieldSpec::new(p, 1)?;
    let a = category_algebra(c, &field);
    let frobenius = frobenius_certificate(&a, seed, FROBENIUS_TRIALS)?;
    let radical = radical_and_semisimplicity(&a)?;
    let gldim = if radical.semisimple {
        GlobalDimension::Zero
    } else if frobenius.certificate.is_some() {
        GlobalDimension::Infinite
    } else {
        GlobalDimension::Unknown
    };
    let hh_dims = bar_hh(&a, top)?;
    let nerve_dims = nerve_cohomology(c, &field, top)?;
    let summand_inequality = nerve_dims.iter().zip(&hh_dims).all(|(h, hh)| h <= hh);
    let restriction = functor.map(|f| restriction_map(f, &field, top)).transpose()?;
    let first_positive_nonvanishing = (1..hh_dims.len()).find(|&n| hh_dims[n] > 0);
    let semisimple_pattern = !radical.semisimple
        || (hh_dims[0] == derivation_space(&a)?.center_dim && hh_dims[1..].iter().all(|&d| d == 0));
    let infinite_pattern = gldim != GlobalDimension::Infinite || first_positive_nonvanishing.is_some();
    let hypotheses_hold = restriction
        .as_ref()
        .map(|r| frobenius.certificate.is_some() && r.iter().all(|d| d.injective));
    Ok(HappelVerdict {
        prime: p,
        algebra_dim: a.dim(),
        algebra: a,
        frobenius,
        radical_dim: radical.radical_dim,
        semisimple: radical.semisimple,
        gldim,
        hh_dims,
        nerve_dims,
        summand_inequality,
        restriction,
        first_positive_nonvanishing,
        hypotheses_hold,
        happel_consistent: summand_inequality && semisimple_pattern && infinite_pattern,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalgebra::category::{transporter_category, transporter_projection, GSet};
    use crate::groupalgebra::DEFAULT_SEED;
    use crate::permgroup::named::cyclic;

    #[test]
    fn group_category() {
        let c = FinCategory::from_group(&cyclic(2));
        let v = happel_probe(&c, 2, 4, None, DEFAULT_SEED).unwrap();
        assert!(v.frobenius.certificate.is_some() && !v.semisimple);
        assert_eq!(v.gldim, GlobalDimension::Infinite);
        assert_eq!(v.hh_dims, vec![2; 5]);
        assert_eq!(v.first_positive_nonvanishing, Some(1));
        assert!(v.happel_consistent);
    }

    #[test]
    fn transporter_on_three_points() {
        let g = cyclic(2);
        let t = transporter_category(&g, &GSet::trivial(&g, 3)).unwrap();
        let target = FinCategory::from_group(&g);
        let pi = transporter_projection(&g, &t, &target).unwrap();
        let v = happel_probe(&t, 2, 3, Some(&pi), DEFAULT_SEED).unwrap();
        assert!(v.frobenius.certificate.as_ref().unwrap().symmetric);
        assert_eq!(v.gldim, GlobalDimension::Infinite);
        assert!(v.restriction.as_ref().unwrap().iter().all(|d| d.injective));
        assert!(v.summand_inequality && v.happel_consistent);
        assert_eq!(v.hypotheses_hold, Some(true));
        assert_eq!(v.hh_dims[1], 6);
    }

    #[test]
    fn discrete_is_vacuous() {
        for p in [2, 3, 7] {
            let v = happel_probe(&FinCategory::discrete(3), p, 3, None, DEFAULT_SEED).unwrap();
            assert!(v.semisimple && v.gldim == GlobalDimension::Zero);
            assert_eq!(v.hh_dims, vec![3, 0, 0, 0]);
            assert_eq!(v.first_positive_nonvanishing, None);
            assert!(v.happel_consistent);
        }
    }

    #[test]
    fn poset_has_no_certificate() {
        let c = FinCategory::parse("objects 2\nmorphism 1a 0 0 identity\nmorphism 1b 1 1 identity\nmorphism f 0 1\n").unwrap();
        let v = happel_probe(&c, 2, 3, None, DEFAULT_SEED).unwrap();
        assert!(v.frobenius.certificate.is_none());
        assert_eq!(v.gldim, GlobalDimension::Unknown);
        assert_eq!(v.hh_dims, vec![1, 0, 0, 0]);
        assert!(v.summand_inequality);
    }
}
