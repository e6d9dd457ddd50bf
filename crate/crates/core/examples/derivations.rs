//! HH¹ of small group algebras by solving the Leibniz system, and the Lie
//! bracket on it.

use hh1lab::groupalgebra::group_algebra;
use hh1lab::hhone::{derivation_space, lie_structure};
use hh1lab::permgroup::named::by_name;

fn main() -> hh1lab::Result<()> {
    for (name, p) in [("C2", 2), ("C3", 3), ("V4", 2), ("S3", 3), ("C4", 2), ("D8", 2)] {
        let a = group_algebra(&by_name(name).expect("known group"), p)?;
        let d = derivation_space(&a)?;
        let l = lie_structure(&d)?;
        println!(
            "k{name}, p={p}: dim Der {}, dim Inn {}, dim HH¹ {}, abelian {}, solvable {}, derived series {:?}",
            d.der_dim,
            d.inner_dim(),
            d.hh1_dim,
            l.abelian,
            l.solvable,
            l.derived_series_lengths
        );
    }
    Ok(())
}
