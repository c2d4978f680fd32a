//! Quadratic-lattice polynomials used by the Hahn and Jacobi constructions.

use crate::poly::Polynomial;
use crate::rational::{int, Rational};

/// `s_{j,u}(x) = (-1)^j prod_{i<j} [x + i(u - i)]`, with `s_{0,u} = 1`.
pub fn s_ju(j: usize, u: &Rational) -> Polynomial {
    let prod = (0..j).fold(Polynomial::one(), |acc, i| {
        let i = int(i as i64);
        &acc * &Polynomial::linear(&i * (u - &i))
    });
    if j % 2 == 1 {
        -prod
    } else {
        prod
    }
}
