//! The Künneth formula for HH¹ against the solver on kG ⊗ kH and on k(G x H).

use hh1lab::ffield::FieldSpec;
use hh1lab::groupalgebra::{group_algebra_over, tensor_algebra};
use hh1lab::hhone::{derivation_space, kuenneth_hh1};
use hh1lab::permgroup::direct_product;
use hh1lab::permgroup::named::by_name;

fn main() -> hh1lab::Result<()> {
    for (l, r, p) in [("C2", "C2", 2), ("C2", "S3", 2), ("C3", "S3", 3), ("C2", "C4", 2)] {
        let (g, h) = (by_name(l).expect("known"), by_name(r).expect("known"));
        let k = FieldSpec::new(p, 1)?;
        let (a, b) = (group_algebra_over(&g, &k)?, group_algebra_over(&h, &k)?);
        let (da, db) = (derivation_space(&a)?, derivation_space(&b)?);
        let formula = kuenneth_hh1(da.hh1_dim as u64, da.center_dim as u64, db.hh1_dim as u64, db.center_dim as u64);
        let t = derivation_space(&tensor_algebra(&a, &b)?)?.hh1_dim;
        let gh = derivation_space(&group_algebra_over(&direct_product(&g, &h)?, &k)?)?.hh1_dim;
        println!("k{l} ⊗ k{r}, p={p}: formula {formula}, tensor {t}, k({l}x{r}) {gh}");
    }
    Ok(())
}
