//! Seeded random inputs for randomized checks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::endo::Endomorphism;
use crate::ore::{GwaParams, OreElement, OreMonomial};
use crate::poisson::PoissonElement;
use crate::poly::{support_data, LaurentPoly, Var};
use crate::scalar::Scalar;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 3`, never zero.
pub fn nonzero_rational<R: Rng>(rng: &mut R) -> Scalar {
    let p = loop {
        let p: i64 = rng.gen_range(-5..=5);
        if p != 0 {
            break p;
        }
    };
    Scalar::ratio(p, rng.gen_range(1..=3))
}

/// A nonzero rational multiple of a root of unity in `Q(ζ_N)`.
pub fn nonzero_scalar<R: Rng>(rng: &mut R, conductor: u32) -> Scalar {
    let j = rng.gen_range(0..conductor.max(1) as i64);
    &nonzero_rational(rng) * &Scalar::zeta_pow(conductor.max(1), j)
}

/// Up to `terms` monomials `c·h^e`, `|e| ≤ 3`.
pub fn h_poly<R: Rng>(rng: &mut R, conductor: u32, terms: usize) -> LaurentPoly {
    LaurentPoly::from_terms(
        &[Var::H],
        (0..terms).map(|_| (vec![rng.gen_range(-3..=3)], nonzero_scalar(rng, conductor))),
    )
}

/// `c·h^e x^i y^j` with `|e| ≤ 3`, `i, j ≤ 3`.
pub fn poisson_monomial<R: Rng>(rng: &mut R) -> PoissonElement {
    PoissonElement::monomial(
        nonzero_rational(rng),
        rng.gen_range(-3..=3),
        rng.gen_range(0..=3),
        rng.gen_range(0..=3),
    )
}

pub fn poisson_element<R: Rng>(rng: &mut R, terms: usize) -> PoissonElement {
    (0..terms).fold(PoissonElement::zero(), |acc, _| &acc + &poisson_monomial(rng))
}

/// A nonzero element of `W_k`: `f(h)·x^k` for `k ≥ 0`, `f(h)·y^{-k}` else.
pub fn homogeneous<R: Rng>(rng: &mut R, k: i32, terms: usize) -> PoissonElement {
    loop {
        let f = (0..terms.max(1)).fold(PoissonElement::zero(), |acc, _| {
            let (x, y) = if k >= 0 { (k as u32, 0) } else { (0, k.unsigned_abs()) };
            &acc + &PoissonElement::monomial(nonzero_rational(rng), rng.gen_range(-3..=3), x, y)
        });
        if !f.is_zero() {
            return f;
        }
    }
}

/// `c·t^a h^b x^i y^j` with small exponents.
pub fn ore_monomial<R: Rng>(rng: &mut R) -> OreElement {
    OreElement::monomial(
        nonzero_rational(rng),
        OreMonomial::new(
            rng.gen_range(-2..=2),
            rng.gen_range(-2..=2),
            rng.gen_range(0..=2),
            rng.gen_range(0..=2),
        ),
    )
}

pub fn ore_element<R: Rng>(rng: &mut R, terms: usize) -> OreElement {
    (0..terms).fold(OreElement::zero(), |acc, _| &acc + &ore_monomial(rng))
}

/// A positive endomorphism with `γ` a random `k`-th root of unity.
pub fn positive_endo<R: Rng>(rng: &mut R, params: &GwaParams) -> Endomorphism {
    let k = support_data(params.a())
        .ok()
        .and_then(|s| s.k)
        .expect("a has at least two terms");
    Endomorphism::Positive {
        gamma: Scalar::zeta_pow(k, rng.gen_range(0..k as i64)),
        b: nonzero_rational(rng),
        n: rng.gen_range(-3..=3),
    }
}
