use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::groupalgebra::{
    block_algebra, block_decompose_over, group_algebra_over, splitting_degree, BlockData, DEFAULT_SEED,
    GROUP_ALGEBRA_CAP,
};
use crate::hhone::derivations::{derivation_space_capped, DEFAULT_DER_CAP};
use crate::hhone::oracle::additive_oracle;
use crate::permgroup::PermGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Direct,
    Oracle,
    Both,
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "oracle" => Ok(Method::Oracle),
            "both" => Ok(Method::Both),
            _ => Err(Error::Parse {
                line: 0,
                msg: format!("unknown method `{s}` (direct, oracle, both)"),
            }),
        }
    }
}

impl Method {
    fn direct(self) -> bool {
        self != Method::Oracle
    }

    fn oracle(self) -> bool {
        self != Method::Direct
    }
}

#[derive(Clone, Debug)]
pub struct HH1Options {
    pub method: Method,
    pub seed: u64,
    pub der_cap: usize,
}

impl Default for HH1Options {
    fn default() -> Self {
        HH1Options {
            method: Method::Both,
            seed: DEFAULT_SEED,
            der_cap: DEFAULT_DER_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub index: usize,
    pub dim: Option<usize>,
    pub defect: u32,
    pub principal: bool,
    pub hh1_dim: Option<u64>,
    pub center_dim: Option<u64>,
    pub methods: Vec<String>,
    /// `Some(hh1 > 0)` for blocks of positive defect, `None` when exempt or unknown.
    pub verdict: Option<bool>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Consistency {
    pub oracle_matches_solver: Option<bool>,
    pub block_sum_matches_whole: Option<bool>,
    pub block_dims_sum_to_order: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HH1Report {
    pub group: String,
    pub order: usize,
    pub prime: u64,
    pub field_degree: u32,
    pub method: Method,
    pub blocks: Vec<BlockReport>,
    pub total_hh1: Option<u64>,
    pub whole_algebra_hh1: Option<u64>,
    pub oracle_hh1: Option<u64>,
    pub consistency: Consistency,
    pub counterexample: bool,
    pub errors: Vec<String>,
}

impl HH1Report {
    /// All computed cross-checks agree.
    pub fn consistent(&self) -> bool {
        let c = &self.consistency;
        [c.oracle_matches_solver, c.block_sum_matches_whole, c.block_dims_sum_to_order]
            .iter()
            .all(|x| *x != Some(false))
    }
}

/// Decomposes kG into blocks and computes HH¹ per block, for the whole
/// algebra, and by the centralizer oracle, as `opts.method` asks.
pub fn hh1_blocks(g: &PermGroup, p: u64, name: &str, opts: &HH1Options) -> Result<HH1Report> {
    let m = splitting_degree(g, p)?;
    let field = FieldSpec::new(p, m)?;
    let blocks = block_decompose_over(g, &field, opts.seed)?;
    let mut errors = Vec::new();
    let mut whole = None;
    let mut per_block: Vec<(Option<u64>, Option<u64>, Option<String>)> = vec![(None, None, None); blocks.len()];
    if opts.method.direct() {
        if g.order() > GROUP_ALGEBRA_CAP {
            errors.push(Error::OrderCapExceeded { cap: GROUP_ALGEBRA_CAP }.to_string());
        } else {
            let a = group_algebra_over(g, &field)?;
            let cap = opts.der_cap;
            per_block = blocks
                .par_iter()
                .map(|b: &BlockData| {
                    let run = || -> Result<(u64, u64)> {
                        let ab = block_algebra(&a, b)?;
                        let d = derivation_space_capped(&ab, cap)?;
                        Ok((d.hh1_dim as u64, d.center_dim as u64))
                    };
                    match run() {
                        Ok((h, z)) => (Some(h), Some(z), None),
                        Err(e) => (None, None, Some(e.to_string())),
                    }
                })
                .collect();
            match derivation_space_capped(&a, cap) {
                Ok(d) => whole = Some(d.hh1_dim as u64),
                Err(e) => errors.push(format!("whole algebra: {e}")),
            }
        }
    }
    let oracle = opts.method.oracle().then(|| additive_oracle(g, p));
    let reports: Vec<BlockReport> = blocks
        .iter()
        .zip(per_block)
        .enumerate()
        .map(|(index, (b, (hh1, z, error)))| {
            let mut methods = Vec::new();
            if hh1.is_some() {
                methods.push("derivations".to_string());
            }
            let verdict = if b.defect == 0 { None } else { hh1.map(|h| h > 0) };
            BlockReport {
                index,
                dim: b.dim,
                defect: b.defect,
                principal: b.is_principal,
                hh1_dim: hh1,
                center_dim: z,
                methods,
                verdict,
                error,
            }
        })
        .collect();
    let block_sum: Option<u64> = reports.iter().map(|r| r.hh1_dim).sum();
    let consistency = Consistency {
        oracle_matches_solver: match (oracle, whole.or(block_sum)) {
            (Some(o), Some(s)) => Some(o == s),
            _ => None,
        },
        block_sum_matches_whole: match (block_sum, whole) {
            (Some(b), Some(w)) => Some(b == w),
            _ => None,
        },
        block_dims_sum_to_order: reports
            .iter()
            .map(|r| r.dim)
            .sum::<Option<usize>>()
            .map(|s| s == g.order()),
    };
    let counterexample = reports.iter().any(|r| r.verdict == Some(false));
    Ok(HH1Report {
        group: name.to_string(),
        order: g.order(),
        prime: p,
        field_degree: m,
        method: opts.method,
        blocks: reports,
        total_hh1: whole.or(block_sum).or(oracle),
        whole_algebra_hh1: whole,
        oracle_hh1: oracle,
        consistency,
        counterexample,
        errors,
    })
}

/// Question 1.1 harness for one group and prime: every block of positive
/// defect must have nonzero HH¹.
pub fn nonvanishing_report(g: &PermGroup, p: u64, name: &str) -> Result<HH1Report> {
    hh1_blocks(g, p, name, &HH1Options::default())
}
