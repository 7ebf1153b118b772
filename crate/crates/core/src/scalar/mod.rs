//! Exact scalar arithmetic: rationals, polynomials, Laurent polynomials and
//! rational functions in a single variable `z`.

mod lpoly;
mod poly;
pub mod rat;
mod ratfun;

pub use lpoly::LPoly;
pub use poly::Poly;
pub use rat::Rat;
pub use ratfun::{RatFun, RootPoint, Valuation};

/// Valuation of `f` at `at` (`+inf` for the zero function).
pub fn valuation(f: &RatFun, at: &RootPoint) -> Valuation {
    f.valuation(at)
}

/// `p = (z - a)^nu * cofactor` with `cofactor(a) != 0`.
pub fn split_at_point(p: &Poly, a: &Rat) -> (usize, Poly) {
    p.split_at_point(a)
}

pub fn lpoly_star(p: &LPoly) -> LPoly {
    p.star()
}
