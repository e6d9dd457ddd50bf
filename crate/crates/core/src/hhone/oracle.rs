use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::permgroup::{IndexSubgroup, PermGroup};

/// dim HH¹(kG) as the sum over classes `[g]` of the p-rank of the
/// abelianization of `C_G(g)`.
pub fn additive_oracle(g: &PermGroup, p: u64) -> u64 {
    oracle_terms(g, p).iter().map(|&d| d as u64).sum()
}

/// The per-class summands of [`additive_oracle`], in class order.
pub fn oracle_terms(g: &PermGroup, p: u64) -> Vec<u32> {
    g.classes()
        .par_iter()
        .map(|c| {
            let sub = if c.rep_index == 0 {
                IndexSubgroup::whole(g)
            } else {
                g.index_subgroup(&g.centralizer_indices(c.rep_index))
            };
            g.p_rank_of(&sub, p)
        })
        .collect()
}

/// `|N_G(P)| / |P C_G(P)|` for a Sylow p-subgroup `P`.
pub fn principal_inertial_quotient(g: &PermGroup, p: u64) -> Result<u64> {
    let sylow = g.sylow_indices(p);
    if sylow.order() == 1 {
        return Err(Error::TrivialSylow(p as u32));
    }
    let gens = sylow.gens_usize();
    let normalizer = g.normalizer_indices(&sylow.member, &gens).len() as u64;
    let cent = g.centralizer_of_set(&gens);
    let meet = cent.iter().filter(|&&x| sylow.member[x]).count() as u64;
    let pc = sylow.order() as u64 * cent.len() as u64 / meet;
    Ok(normalizer / pc)
}
