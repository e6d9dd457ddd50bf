//! Every block of positive defect in the default corpus has nonzero HH¹.

use hh1lab::cli::CorpusManifest;
use hh1lab::hhone::nonvanishing_report;
use hh1lab::permgroup::DEFAULT_ELEMENT_CAP;

fn main() -> hh1lab::Result<()> {
    let mut counterexamples = 0;
    for e in CorpusManifest::default_corpus().entries {
        let g = e.build(DEFAULT_ELEMENT_CAP)?;
        for p in [2, 3, 5] {
            let r = nonvanishing_report(&g, p, &e.name)?;
            let cells: Vec<String> = r
                .blocks
                .iter()
                .map(|b| format!("d{}:{}", b.defect, b.hh1_dim.map_or("?".into(), |h| h.to_string())))
                .collect();
            println!("{:6} p={p}: {}", e.name, cells.join(" "));
            counterexamples += r.counterexample as usize;
        }
    }
    println!("counterexamples: {counterexamples}");
    Ok(())
}
