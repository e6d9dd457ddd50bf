//! Nerve cohomology, bar-complex Hochschild cohomology and restriction along
//! the projection of a transporter category.

use hh1lab::catalgebra::{
    bar_hh, category_algebra, nerve_cohomology, restriction_map, transporter_category, transporter_projection,
    FinCategory, GSet,
};
use hh1lab::ffield::FieldSpec;
use hh1lab::permgroup::named::cyclic;

fn main() -> hh1lab::Result<()> {
    let k = FieldSpec::new(2, 1)?;
    let c2 = cyclic(2);
    let g = FinCategory::from_group(&c2);
    println!("H*(C2, k) up to 3: {:?}", nerve_cohomology(&g, &k, 3)?);
    println!("HH*(kC2) up to 4: {:?}", bar_hh(&category_algebra(&g, &k), 4)?);

    let t = transporter_category(&c2, &GSet::trivial(&c2, 3))?;
    let pi = transporter_projection(&c2, &t, &g)?;
    for d in restriction_map(&pi, &k, 3)? {
        println!(
            "degree {}: H(G) {} -> H(C) {}, rank {}, injective {}",
            d.degree, d.source_dim, d.target_dim, d.rank, d.injective
        );
    }

    let poset = FinCategory::parse("objects 2\nmorphism 1a 0 0 identity\nmorphism 1b 1 1 identity\nmorphism f 0 1\n")?;
    println!("poset: H* {:?}, HH* {:?}", nerve_cohomology(&poset, &k, 3)?, bar_hh(&category_algebra(&poset, &k), 3)?);
    Ok(())
}
