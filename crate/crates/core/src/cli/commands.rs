use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::catalgebra::{
    euler_characteristic, happel_probe, transporter_category, transporter_projection, FinCategory, GSet,
    BAR_DEGREE_CAP,
};
use crate::cli::cache::{cache_key, Cache};
use crate::cli::corpus::{resolve_group, CorpusEntry, CorpusManifest};
use crate::error::{Error, Result};
use crate::ffield::FieldSpec;
use crate::groupalgebra::{
    block_decompose_over, group_algebra_over, p_regular_classes, splitting_degree, tensor_algebra, GROUP_ALGEBRA_CAP,
};
use crate::hhone::{derivation_space_capped, hh1_blocks, kuenneth_hh1, HH1Options, Method, DEFAULT_DER_CAP};
use crate::permgroup::{direct_product_capped, PermGroup, DEFAULT_ELEMENT_CAP};

pub const SCHEMA_VERSION: u32 = 1;
/// Element cap without `--allow-large`.
pub const STANDARD_ELEMENT_CAP: usize = 1 << 15;

/// One command's output. Keys serialize sorted, and nothing depends on
/// timing, so identical inputs give byte-identical documents.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub errors: Vec<String>,
    pub counterexample: bool,
}

impl ReportDocument {
    fn new(command: &str, inputs: Value, result: Value) -> Self {
        let errors = result
            .get("errors")
            .and_then(Value::as_array)
            .map(|e| e.iter().filter_map(|s| s.as_str().map(str::to_string)).collect())
            .unwrap_or_default();
        let counterexample = result.get("counterexample").and_then(Value::as_bool).unwrap_or(false);
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            result,
            errors,
            counterexample,
        }
    }

    fn failed(command: &str, inputs: Value, e: Error) -> Self {
        ReportDocument {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            inputs,
            result: Value::Null,
            errors: vec![e.to_string()],
            counterexample: false,
        }
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let v = serde_json::to_value(self).expect("document serializes");
        let mut s = serde_json::to_string_pretty(&v).expect("value serializes");
        s.push('\n');
        s
    }

    pub fn exit_code(&self) -> i32 {
        if self.errors.is_empty() && !self.counterexample {
            0
        } else {
            1
        }
    }
}

/// Settings shared by every command.
#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub allow_large: bool,
    pub der_cap: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: crate::groupalgebra::DEFAULT_SEED,
            allow_large: false,
            der_cap: DEFAULT_DER_CAP,
        }
    }
}

impl RunOptions {
    pub fn element_cap(&self) -> usize {
        if self.allow_large {
            DEFAULT_ELEMENT_CAP
        } else {
            STANDARD_ELEMENT_CAP
        }
    }

    fn caps(&self) -> Value {
        json!({
            "elements": self.element_cap(),
            "derivation_dim": self.der_cap,
            "group_algebra": GROUP_ALGEBRA_CAP,
        })
    }
}

/// Upper bound in bytes for enumerating `cap` elements of degree `degree`:
/// the element table plus its hash index.
pub fn memory_estimate(degree: usize, cap: usize) -> u64 {
    cap as u64 * (2 * degree as u64 + 16)
}

fn key_for(command: &str, entry: &CorpusEntry, prime: u64, extra: &str, opts: &RunOptions) -> String {
    cache_key(&[
        &SCHEMA_VERSION.to_string(),
        command,
        &entry.file.to_text(),
        &prime.to_string(),
        &opts.caps().to_string(),
        &opts.seed.to_string(),
        extra,
    ])
}

fn check_prime(p: u64) -> Result<()> {
    FieldSpec::new(p, 1).map(|_| ())
}

fn blocks_value(entry: &CorpusEntry, g: &PermGroup, p: u64, seed: u64) -> Result<Value> {
    let m = splitting_degree(g, p)?;
    let field = FieldSpec::new(p, m)?;
    let blocks = block_decompose_over(g, &field, seed)?;
    let rows: Vec<Value> = blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            json!({
                "index": i,
                "dim": b.dim,
                "defect": b.defect,
                "principal": b.is_principal,
            })
        })
        .collect();
    let dims_sum: Option<usize> = blocks.iter().map(|b| b.dim).sum();
    Ok(json!({
        "group": entry.name,
        "order": g.order(),
        "field_degree": m,
        "num_blocks": blocks.len(),
        "p_regular_classes": p_regular_classes(g, p),
        "blocks": rows,
        "block_dims_sum_to_order": dims_sum.map(|s| s == g.order()),
        "errors": Vec::<String>::new(),
    }))
}

/// Block dimensions, defects and the principal flag of kG.
pub fn cmd_blocks(group: &str, prime: u64, opts: &RunOptions, cache: &Cache) -> ReportDocument {
    let inputs = json!({"group": group, "prime": prime, "seed": opts.seed, "caps": opts.caps()});
    let run = || -> Result<Value> {
        check_prime(prime)?;
        let entry = resolve_group(group)?;
        let key = key_for("blocks", &entry, prime, "", opts);
        cache.get_or_compute(&key, || {
            entry
                .build(opts.element_cap())
                .and_then(|g| blocks_value(&entry, &g, prime, opts.seed))
                .unwrap_or_else(|e| json!({"errors": [e.to_string()]}))
        })
    };
    match run() {
        Ok(v) => ReportDocument::new("blocks", inputs, v),
        Err(e) => ReportDocument::failed("blocks", inputs, e),
    }
}

fn hh1_value(entry: &CorpusEntry, g: &PermGroup, p: u64, method: Method, opts: &RunOptions) -> Value {
    let hopts = HH1Options {
        method,
        seed: opts.seed,
        der_cap: opts.der_cap,
    };
    match hh1_blocks(g, p, &entry.name, &hopts) {
        Ok(r) => {
            let mut v = serde_json::to_value(&r).expect("report serializes");
            let mut errors = r.errors.clone();
            errors.extend(r.blocks.iter().filter_map(|b| b.error.as_ref().map(|e| format!("block {}: {e}", b.index))));
            if !r.consistent() {
                errors.push(format!("{} at p={p}: cross-checks disagree", entry.name));
            }
            v["errors"] = json!(errors);
            v
        }
        Err(e) => json!({"group": entry.name, "prime": p, "errors": [e.to_string()], "counterexample": false}),
    }
}

fn hh1_cached(entry: &CorpusEntry, p: u64, method: Method, opts: &RunOptions, cache: &Cache) -> Result<Value> {
    check_prime(p)?;
    let key = key_for("hh1", entry, p, &format!("{method:?}"), opts);
    cache.get_or_compute(&key, || match entry.build(opts.element_cap()) {
        Ok(g) => hh1_value(entry, &g, p, method, opts),
        Err(e) => json!({"group": entry.name, "prime": p, "errors": [e.to_string()], "counterexample": false}),
    })
}

/// Per-block HH¹ with verdicts and the oracle comparison.
pub fn cmd_hh1(group: &str, prime: u64, method: Method, opts: &RunOptions, cache: &Cache) -> ReportDocument {
    let inputs = json!({
        "group": group,
        "prime": prime,
        "method": method,
        "seed": opts.seed,
        "caps": opts.caps(),
    });
    match resolve_group(group).and_then(|e| hh1_cached(&e, prime, method, opts, cache)) {
        Ok(v) => ReportDocument::new("hh1", inputs, v),
        Err(e) => ReportDocument::failed("hh1", inputs, e),
    }
}

/// The category handed to `happel`.
#[derive(Clone, Debug)]
pub enum CategoryInput {
    File(PathBuf),
    /// A group acting on points; `natural` uses its permutation action,
    /// otherwise the action is trivial.
    Transporter { group: String, points: Option<usize>, natural: bool },
    GroupAsCategory(String),
}

/// Frobenius, semisimplicity, HHⁿ, Hⁿ(𝒞,k) and the restriction to the group.
pub fn cmd_happel(input: &CategoryInput, prime: u64, degrees: usize, opts: &RunOptions) -> ReportDocument {
    let described = match input {
        CategoryInput::File(p) => json!({"category": p.display().to_string()}),
        CategoryInput::Transporter { group, points, natural } => {
            json!({"transporter": group, "points": points, "action": if *natural { "natural" } else { "trivial" }})
        }
        CategoryInput::GroupAsCategory(g) => json!({"group_as_category": g}),
    };
    let inputs = json!({"input": described, "prime": prime, "degrees": degrees, "seed": opts.seed});
    let run = || -> Result<Value> {
        check_prime(prime)?;
        if degrees > BAR_DEGREE_CAP {
            return Err(Error::DimCapExceeded {
                dim: degrees,
                cap: BAR_DEGREE_CAP,
            });
        }
        let mut extra = serde_json::Map::new();
        let verdict = match input {
            CategoryInput::File(path) => happel_probe(&FinCategory::read(path)?, prime, degrees, None, opts.seed)?,
            CategoryInput::GroupAsCategory(name) => {
                let g = resolve_group(name)?.build(opts.element_cap())?;
                happel_probe(&FinCategory::from_group(&g), prime, degrees, None, opts.seed)?
            }
            CategoryInput::Transporter { group, points, natural } => {
                let g = resolve_group(group)?.build(opts.element_cap())?;
                let x = if *natural {
                    GSet::natural(&g)
                } else {
                    GSet::trivial(&g, points.unwrap_or(1))
                };
                let (chi, invertible) = euler_characteristic(x.points, prime);
                extra.insert("euler_characteristic".into(), json!(chi));
                extra.insert("euler_invertible".into(), json!(invertible));
                let t = transporter_category(&g, &x)?;
                let target = FinCategory::from_group(&g);
                let pi = transporter_projection(&g, &t, &target)?;
                happel_probe(&t, prime, degrees, Some(&pi), opts.seed)?
            }
        };
        let mut v = serde_json::to_value(&verdict).expect("verdict serializes");
        let obj = v.as_object_mut().expect("verdict is an object");
        let euler_invertible = extra.get("euler_invertible") == Some(&json!(true));
        obj.extend(extra);
        let mut errors: Vec<String> = Vec::new();
        if !verdict.happel_consistent {
            errors.push("Happel checks are inconsistent".into());
        }
        let injective = verdict.restriction.as_ref().map(|r| r.iter().all(|d| d.injective));
        if euler_invertible && injective == Some(false) {
            errors.push("restriction is not injective although the Euler characteristic is invertible".into());
        }
        obj.insert("errors".into(), json!(errors));
        Ok(v)
    };
    match run() {
        Ok(v) => ReportDocument::new("happel", inputs, v),
        Err(e) => ReportDocument::failed("happel", inputs, e),
    }
}

/// HH¹ of kG ⊗ kH three ways: the Künneth formula from the factors, the
/// solver on the tensor algebra, and the solver on k(G×H).
pub fn cmd_tensor(left: &str, right: &str, prime: u64, opts: &RunOptions) -> ReportDocument {
    let inputs = json!({"groups": [left, right], "prime": prime, "caps": opts.caps()});
    let run = || -> Result<Value> {
        check_prime(prime)?;
        let (el, er) = (resolve_group(left)?, resolve_group(right)?);
        let (g, h) = (el.build(opts.element_cap())?, er.build(opts.element_cap())?);
        let k = FieldSpec::new(prime, 1)?;
        let (a, b) = (group_algebra_over(&g, &k)?, group_algebra_over(&h, &k)?);
        let (da, db) = (derivation_space_capped(&a, opts.der_cap)?, derivation_space_capped(&b, opts.der_cap)?);
        let formula = kuenneth_hh1(da.hh1_dim as u64, da.center_dim as u64, db.hh1_dim as u64, db.center_dim as u64);
        let t = tensor_algebra(&a, &b)?;
        let tensor = derivation_space_capped(&t, opts.der_cap)?.hh1_dim as u64;
        let gh = direct_product_capped(&g, &h, opts.element_cap())?;
        let product = derivation_space_capped(&group_algebra_over(&gh, &k)?, opts.der_cap)?.hh1_dim as u64;
        let agree = formula == tensor && tensor == product;
        let errors: Vec<String> = if agree {
            Vec::new()
        } else {
            vec![format!("formula {formula}, tensor {tensor}, product {product} disagree")]
        };
        Ok(json!({
            "left": {"group": el.name, "hh1": da.hh1_dim, "center": da.center_dim},
            "right": {"group": er.name, "hh1": db.hh1_dim, "center": db.center_dim},
            "kuenneth": formula,
            "tensor_solver": tensor,
            "product_group_solver": product,
            "agree": agree,
            "errors": errors,
        }))
    };
    match run() {
        Ok(v) => ReportDocument::new("tensor", inputs, v),
        Err(e) => ReportDocument::failed("tensor", inputs, e),
    }
}

/// Runs `hh1` over every manifest entry and prime, concurrently, assembling
/// rows in manifest order.
pub fn cmd_report(manifest: &CorpusManifest, primes: &[u64], method: Method, opts: &RunOptions, cache: &Cache) -> ReportDocument {
    let names: Vec<&str> = manifest.entries.iter().map(|e| e.name.as_str()).collect();
    let inputs = json!({
        "groups": names,
        "primes": primes,
        "method": method,
        "seed": opts.seed,
        "caps": opts.caps(),
    });
    let jobs: Vec<(&CorpusEntry, u64)> = manifest
        .entries
        .iter()
        .flat_map(|e| primes.iter().map(move |&p| (e, p)))
        .collect();
    let rows: Vec<Value> = jobs
        .par_iter()
        .map(|&(e, p)| match hh1_cached(e, p, method, opts, cache) {
            Ok(v) => {
                let errors = v.get("errors").cloned().unwrap_or(json!([]));
                let ok = errors.as_array().is_some_and(|a| a.is_empty());
                let blocks: Vec<Value> = v
                    .get("blocks")
                    .and_then(Value::as_array)
                    .map(|bs| {
                        bs.iter()
                            .map(|b| json!({"defect": b["defect"], "dim": b["dim"], "hh1": b["hh1_dim"], "verdict": b["verdict"]}))
                            .collect()
                    })
                    .unwrap_or_default();
                json!({
                    "group": e.name,
                    "prime": p,
                    "status": if ok { "ok" } else { "error" },
                    "total_hh1": v.get("total_hh1").cloned().unwrap_or(Value::Null),
                    "oracle_hh1": v.get("oracle_hh1").cloned().unwrap_or(Value::Null),
                    "blocks": blocks,
                    "counterexample": v.get("counterexample").cloned().unwrap_or(json!(false)),
                    "errors": errors,
                })
            }
            Err(err) => json!({
                "group": e.name,
                "prime": p,
                "status": "error",
                "blocks": [],
                "counterexample": false,
                "errors": [err.to_string()],
            }),
        })
        .collect();
    let mut errors = Vec::new();
    let mut counterexamples = Vec::new();
    for r in &rows {
        let tag = format!("{} p={}", r["group"].as_str().unwrap_or("?"), r["prime"]);
        for e in r["errors"].as_array().into_iter().flatten() {
            errors.push(format!("{tag}: {}", e.as_str().unwrap_or_default()));
        }
        if r["counterexample"] == json!(true) {
            counterexamples.push(tag);
        }
    }
    let positive: usize = rows
        .iter()
        .flat_map(|r| r["blocks"].as_array().into_iter().flatten())
        .filter(|b| b["defect"].as_u64().is_some_and(|d| d > 0))
        .count();
    let result = json!({
        "entries": rows,
        "positive_defect_blocks": positive,
        "counterexamples": counterexamples,
        "counterexample": !counterexamples.is_empty(),
        "errors": errors,
    });
    ReportDocument::new("report", inputs, result)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> RunOptions {
        RunOptions::default()
    }

    #[test]
    fn blocks_examples() {
        let c = Cache::disabled();
        let d = cmd_blocks("S3", 2, &opts(), &c);
        assert_eq!(d.exit_code(), 0);
        let dims: Vec<u64> = d.result["blocks"].as_array().unwrap().iter().map(|b| b["dim"].as_u64().unwrap()).collect();
        assert_eq!(dims, vec![2, 4]);
        let d = cmd_blocks("S3", 5, &opts(), &c);
        assert_eq!(d.result["num_blocks"], 3);
        let d = cmd_blocks("A4", 2, &opts(), &c);
        assert_eq!(d.result["blocks"][0]["defect"], 2);
        assert_eq!(cmd_blocks("S3", 4, &opts(), &c).exit_code(), 1);
    }

    #[test]
    fn hh1_examples() {
        let c = Cache::disabled();
        let d = cmd_hh1("V4", 2, Method::Both, &opts(), &c);
        assert_eq!(d.result["total_hh1"], 8);
        assert_eq!(d.exit_code(), 0);
        let d = cmd_hh1("S3", 3, Method::Both, &opts(), &c);
        assert_eq!(d.result["blocks"][0]["verdict"], true);
    }

    #[test]
    fn happel_examples() {
        let d = cmd_happel(
            &CategoryInput::Transporter {
                group: "C2".into(),
                points: Some(3),
                natural: false,
            },
            2,
            3,
            &opts(),
        );
        assert_eq!(d.exit_code(), 0);
        assert_eq!(d.result["frobenius"]["certificate"]["symmetric"], true);
        assert_eq!(d.result["euler_invertible"], true);
        let d = cmd_happel(&CategoryInput::GroupAsCategory("C2".into()), 2, 4, &opts());
        assert_eq!(d.result["hh_dims"], json!([2, 2, 2, 2, 2]));
        let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data/poset_a_to_b.cat");
        let d = cmd_happel(&CategoryInput::File(path), 2, 3, &opts());
        assert_eq!(d.result["frobenius"]["certificate"], Value::Null);
        assert_eq!(d.exit_code(), 0);
    }

    #[test]
    fn tensor_example() {
        let d = cmd_tensor("C2", "C2", 2, &opts());
        assert_eq!(d.result["kuenneth"], 8);
        assert_eq!(d.exit_code(), 0);
        assert_eq!(cmd_tensor("C2", "C3", 2, &opts()).exit_code(), 0);
    }

    #[test]
    fn report_is_deterministic_and_cached() {
        let dir = tempfile::tempdir().unwrap();
        let mut m = CorpusManifest::default_corpus();
        m.entries.truncate(5);
        let c = Cache::new(dir.path());
        let a = cmd_report(&m, &[2, 3], Method::Both, &opts(), &c).to_json();
        assert_eq!((c.hits(), c.misses()), (0, 10));
        let b = cmd_report(&m, &[2, 3], Method::Both, &opts(), &c).to_json();
        assert_eq!(c.hits(), 10);
        assert_eq!(a, b);
        let empty = cmd_report(&CorpusManifest::default(), &[2, 3], Method::Both, &opts(), &c);
        assert_eq!(empty.exit_code(), 0);
    }
}
