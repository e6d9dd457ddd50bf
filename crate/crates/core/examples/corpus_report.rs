//! A cached corpus report, run twice to show the cache serving the rerun.

use hh1lab::cli::{cmd_report, Cache, CorpusManifest, RunOptions};
use hh1lab::hhone::Method;

fn main() {
    let dir = std::env::temp_dir().join("hh1lab-example-cache");
    let cache = Cache::new(&dir);
    let opts = RunOptions::default();
    let manifest = CorpusManifest::default_corpus();
    let first = cmd_report(&manifest, &[2, 3], Method::Both, &opts, &cache);
    let second = cmd_report(&manifest, &[2, 3], Method::Both, &opts, &cache);
    println!("{}", first.to_json());
    println!(
        "cache at {}: {} hits, {} misses, identical reruns: {}, exit code {}",
        dir.display(),
        cache.hits(),
        cache.misses(),
        first.to_json() == second.to_json(),
        first.exit_code()
    );
}
