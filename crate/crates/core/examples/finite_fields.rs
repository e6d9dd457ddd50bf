//! Arithmetic in GF(9) and a null space over GF(2).

use hh1lab::ffield::{rank_nullspace, FieldSpec, SparseMatrix};

fn main() -> hh1lab::Result<()> {
    let k = FieldSpec::new(3, 2)?;
    println!("GF(9) modulus (low degree first): {:?}", k.modulus());
    let t = k.generator_t();
    let g = k.add(t, k.one());
    for e in 0..8 {
        println!("(t+1)^{e} = {}", k.format(k.pow(g, e)));
    }
    println!("frobenius(t) = {}", k.format(k.frobenius(t)));

    let f2 = FieldSpec::new(2, 1)?;
    let m = SparseMatrix::from_dense(&[vec![1, 1, 0], vec![0, 1, 1]], 3);
    let (rank, null) = rank_nullspace(&f2, &m);
    println!("rank {rank}, null space {null:?}");
    Ok(())
}
