//! HH¹(kG) from centralizers against the derivation solver, with the
//! inertial quotient of the principal block.

use hh1lab::groupalgebra::group_algebra;
use hh1lab::hhone::{additive_oracle, derivation_space, oracle_terms, principal_inertial_quotient};
use hh1lab::permgroup::named::by_name;

fn main() -> hh1lab::Result<()> {
    for (name, p) in [("S3", 2), ("D8", 2), ("A4", 2), ("A4", 3), ("S4", 2), ("S4", 3), ("S3xS3", 3)] {
        let g = by_name(name).expect("known group");
        let solver = derivation_space(&group_algebra(&g, p)?)?.hh1_dim;
        println!(
            "{name} p={p}: oracle {} (terms {:?}), solver {solver}, |E| = {}",
            additive_oracle(&g, p),
            oracle_terms(&g, p),
            principal_inertial_quotient(&g, p)?
        );
    }
    Ok(())
}
