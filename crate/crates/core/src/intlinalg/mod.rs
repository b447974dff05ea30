//! Exact integer linear algebra: dense bigint matrices, Hermite and Smith
//! normal forms, integer lattices and linear Diophantine systems.

mod lattice;
mod matrix;
mod normal_form;
mod solve;

pub use lattice::Lattice;
pub use matrix::IntMatrix;
pub use normal_form::{hnf, snf, SmithForm};
pub use solve::{kernel_basis, solve, Solution};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

/// Greatest common divisor, nonnegative.
pub fn gcd(a: &BigInt, b: &BigInt) -> BigInt {
    a.gcd(b)
}

/// Residue of `x` in `[0, m)` for `m > 0`; identity when `m == 0`.
pub fn residue(x: &BigInt, m: &BigInt) -> BigInt {
    if m.is_zero() {
        x.clone()
    } else {
        x.mod_floor(m)
    }
}
