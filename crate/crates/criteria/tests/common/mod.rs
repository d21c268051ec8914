#![allow(dead_code)]

use gwa_core::cli::parse::parse_poly;
use gwa_core::{GwaParams, LaurentPoly, PoissonElement, Scalar};

pub const P: [&str; 8] = [
    "h + 1",
    "h^2 + 1",
    "h^2 + h",
    "(h - 1)^2",
    "h^3 + h",
    "h^3 + h + 1",
    "h^-1 + h",
    "(h^2 + 1)^2",
];

pub fn poly(text: &str) -> LaurentPoly {
    parse_poly(text, 8).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn params(text: &str) -> GwaParams {
    params_at(text, 1)
}

pub fn params_at(text: &str, conductor: u32) -> GwaParams {
    GwaParams::with_conductor(poly(text), conductor).unwrap_or_else(|e| panic!("{text}: {e}"))
}

pub fn all_params() -> Vec<GwaParams> {
    P.iter().map(|t| params(t)).collect()
}

pub fn m(c: i64, h: i32, x: u32, y: u32) -> PoissonElement {
    PoissonElement::monomial(Scalar::from(c), h, x, y)
}

/// `-a'(h)·h` computed from the coefficients of `a`.
pub fn minus_a_prime_h(params: &GwaParams) -> PoissonElement {
    params
        .a()
        .terms()
        .fold(PoissonElement::zero(), |acc, (e, c)| {
            let k = e[0];
            let t = PoissonElement::monomial(-&(c * &Scalar::from(k as i64)), k, 0, 0);
            &acc + &t
        })
}
