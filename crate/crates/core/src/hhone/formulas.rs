use crate::error::{Error, Result};

/// dim HH¹(A ⊗ B) = dim HH¹(A)·dim Z(B) + dim Z(A)·dim HH¹(B).
pub fn kuenneth_hh1(hh1_a: u64, z_a: u64, hh1_b: u64, z_b: u64) -> u64 {
    hh1_a * z_b + z_a * hh1_b
}

/// `(|P| - 1) / |E|` for a block with cyclic defect group `P` and inertial
/// quotient `E`. For `E = 1` the block kC_p actually has dim HH¹ = p, so this
/// is a predictor only.
pub fn cyclic_formula(p_order: u64, e_order: u64) -> Result<u64> {
    let value = p_order.saturating_sub(1);
    if e_order == 0 || value % e_order != 0 {
        return Err(Error::NonDivisor {
            value,
            divisor: e_order,
        });
    }
    Ok(value / e_order)
}

/// `total - sum(known)`.
pub fn bookkeeping_subtract(total: u64, known: &[u64]) -> Result<u64> {
    let known_sum: u64 = known.iter().sum();
    total.checked_sub(known_sum).ok_or(Error::NegativeResult {
        total,
        known: known_sum,
    })
}

/// dim HH¹ of a block with Klein-four defect group and `l` simple modules.
pub fn klein_four_dims(l: u32) -> Result<u64> {
    match l {
        1 => Ok(8),
        3 => Ok(2),
        _ => Err(Error::InvalidL(l)),
    }
}
