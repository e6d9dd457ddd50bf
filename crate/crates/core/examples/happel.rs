//! The Happel probe on a group, a transporter category, a discrete category
//! and the arrow poset.

use hh1lab::catalgebra::{happel_probe, transporter_category, transporter_projection, FinCategory, GSet};
use hh1lab::groupalgebra::DEFAULT_SEED;
use hh1lab::permgroup::named::cyclic;

fn main() -> hh1lab::Result<()> {
    let c2 = cyclic(2);
    let gcat = FinCategory::from_group(&c2);
    let t = transporter_category(&c2, &GSet::trivial(&c2, 3))?;
    let pi = transporter_projection(&c2, &t, &gcat)?;
    let c3 = cyclic(3);
    let natural = transporter_category(&c3, &GSet::natural(&c3))?;
    let poset = FinCategory::parse("objects 2\nmorphism 1a 0 0 identity\nmorphism 1b 1 1 identity\nmorphism f 0 1\n")?;
    let cases = [
        ("C2 as a category", &gcat, None),
        ("C2 on 3 points", &t, Some(&pi)),
        ("C3 on 3 points", &natural, None),
        ("discrete, 3 objects", &FinCategory::discrete(3), None),
        ("arrow poset", &poset, None),
    ];
    for (name, c, f) in cases {
        for p in [2, 3] {
            let v = happel_probe(c, p, 3, f, DEFAULT_SEED)?;
            println!(
                "{name}, p={p}: frobenius {}, radical {}, gldim {:?}, HH {:?}, H {:?}, consistent {}",
                v.frobenius.certificate.is_some(),
                v.radical_dim,
                v.gldim,
                v.hh_dims,
                v.nerve_dims,
                v.happel_consistent
            );
        }
    }
    Ok(())
}
