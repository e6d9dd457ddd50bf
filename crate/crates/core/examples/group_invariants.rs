//! Classes, centralizers, Sylow subgroups and abelianization ranks.

use hh1lab::permgroup::named::by_name;

fn main() {
    for name in ["S4", "A4", "D8", "Q8"] {
        let g = by_name(name).expect("known group");
        println!("{name}: order {}, exponent {}", g.order(), g.exponent());
        for c in g.classes() {
            println!(
                "  class of {:?}: size {}, |C_G(g)| = {}",
                c.representative.cycles(),
                c.size,
                c.centralizer_order
            );
        }
        for p in [2, 3] {
            println!(
                "  p={p}: |Sylow| = {}, p-rank of G/G' = {}",
                g.sylow_subgroup(p).order(),
                g.p_rank_abelianization(p)
            );
        }
    }
}
