//! Block decomposition of k(S3 x S3) at p = 2 next to the blocks of kS3.

use hh1lab::ffield::FieldSpec;
use hh1lab::groupalgebra::{block_decompose_over, splitting_degree, DEFAULT_SEED};
use hh1lab::permgroup::named::by_name;

fn main() -> hh1lab::Result<()> {
    for name in ["S3", "S3xS3", "A4", "S4"] {
        let g = by_name(name).expect("known group");
        for p in [2, 3] {
            let field = FieldSpec::new(p, splitting_degree(&g, p)?)?;
            let blocks = block_decompose_over(&g, &field, DEFAULT_SEED)?;
            let rows: Vec<String> = blocks
                .iter()
                .map(|b| {
                    let tag = if b.is_principal { "*" } else { "" };
                    format!("dim {:?} defect {}{tag}", b.dim.unwrap_or(0), b.defect)
                })
                .collect();
            println!("{name} p={p} over GF({p}^{}): {}", field.m(), rows.join(", "));
        }
    }
    Ok(())
}
