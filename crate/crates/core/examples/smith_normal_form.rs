//! Smith normal form, torsion and integer solving.

use num_bigint::BigInt;
use posettop::linalg::{in_integer_image, smith_normal_form, IntMatrix};

fn main() -> posettop::Result<()> {
    let a = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
    let s = smith_normal_form(&a);
    println!("diagonal {:?}, rank {}", s.diagonal.iter().map(BigInt::to_string).collect::<Vec<_>>(), s.rank());
    assert_eq!(s.u.mul(&a)?.mul(&s.v)?, s.d);

    let b: Vec<BigInt> = [2, -6, 10].map(BigInt::from).to_vec();
    println!(
        "solve A x = (2,-6,10): {:?}",
        in_integer_image(&a, &b)?.map(|x| x.iter().map(BigInt::to_string).collect::<Vec<_>>())
    );
    let odd: Vec<BigInt> = [1, 0, 0].map(BigInt::from).to_vec();
    println!("solve A x = (1,0,0): {:?}", in_integer_image(&a, &odd)?);
    print!("{}", a.to_matrix_market());
    Ok(())
}
