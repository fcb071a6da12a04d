//! The worked 3x3 example over `Q[z1, z2, z3]` with divisor `z1 - z2`,
//! together with every intermediate value of its factorization.

use crate::matrix::PolyMatrix;
use crate::poly::{Poly, PolyRing, Ring};

pub fn example1_ring() -> Ring {
    PolyRing::lex(&["z1", "z2", "z3"]).expect("valid ring")
}

fn grid(rows: &[[&str; 3]; 3]) -> PolyMatrix {
    let ring = example1_ring();
    let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
    PolyMatrix::parse(&ring, &rows).expect("valid example matrix")
}

pub const EXAMPLE1_F: [[&str; 3]; 3] = [
    [
        "z1*z2 - z1 - z2^2 - z2*z3",
        "z1*z3 + z1 - z2*z3 - z2 - z3^2 - z3",
        "-z1*z2 + z1*z3 + 2*z1 + z2^2 - z2 - z3^2 - 2*z3 - 1",
    ],
    ["-z1*z2 - z1*z3 + z2 + z3", "z2 + z3", "z1*z2 + z1*z3"],
    ["z1", "-z1 + z2 + z3", "-2*z1 + z2 + z3 + 1"],
];

pub fn example1_f() -> PolyMatrix {
    grid(&EXAMPLE1_F)
}

/// `F` with `z1 -> z2`.
pub fn example1_f_hat() -> PolyMatrix {
    grid(&[
        ["-z2*(z3 + 1)", "-z3*(z3 + 1)", "-(z3 - z2 + 1)*(z3 + 1)"],
        ["(1 - z2)*(z2 + z3)", "z2 + z3", "z2*(z2 + z3)"],
        ["z2", "z3", "z3 - z2 + 1"],
    ])
}

pub fn example1_divisor_poly() -> Poly {
    Poly::parse("z1 - z2", &example1_ring()).expect("valid")
}

pub fn example1_u() -> PolyMatrix {
    grid(&[["1", "0", "z3 + 1"], ["0", "1", "0"], ["0", "0", "1"]])
}

pub fn example1_v() -> PolyMatrix {
    grid(&[["1", "0", "-(z3 + 1)"], ["0", "1", "0"], ["0", "0", "1"]])
}

pub fn example1_g1() -> PolyMatrix {
    grid(&[["z1 - z2", "0", "-z3 - 1"], ["0", "1", "0"], ["0", "0", "1"]])
}

pub fn example1_f1() -> PolyMatrix {
    grid(&[
        ["z2 + z3", "0", "-z2 - z3"],
        ["-z1*z2 - z1*z3 + z2 + z3", "z2 + z3", "z1*z2 + z1*z3"],
        ["z1", "-z1 + z2 + z3", "-2*z1 + z2 + z3 + 1"],
    ])
}
