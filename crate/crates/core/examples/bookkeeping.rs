//! The closed-form identities: subtraction of known block contributions, the
//! cyclic defect formula and the Klein-four values.

use hh1lab::hhone::{bookkeeping_subtract, cyclic_formula, klein_four_dims};

fn main() -> hh1lab::Result<()> {
    println!("7 - (1 + 1 + 1) = {}", bookkeeping_subtract(7, &[1, 1, 1])?);
    println!("17 - 8 = {}", bookkeeping_subtract(17, &[8])?);
    println!("(3 - 1) / 2 = {}", cyclic_formula(3, 2)?);
    println!("(7 - 1) / 3 = {}", cyclic_formula(7, 3)?);
    println!("Klein four, l = 1: {}; l = 3: {}", klein_four_dims(1)?, klein_four_dims(3)?);
    match bookkeeping_subtract(1, &[2]) {
        Ok(v) => println!("unexpected {v}"),
        Err(e) => println!("1 - 2: {e}"),
    }
    Ok(())
}
