//! Commutative Poisson layer: `B₁ = C[h^{±1}, x, y]` with a bracket fixed by
//! its values on generator pairs, and the quotient
//! `A₁ = B₁/⟨xy - a(h)⟩` with its ℤ-grading `deg h = 0, deg x = 1, deg y = -1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::ore::GwaParams;
use crate::poly::{LaurentPoly, PolyError, Var};
use crate::scalar::Scalar;

pub const HXY: &[Var] = &[Var::H, Var::X, Var::Y];

/// An element of `C[h^{±1}, x, y]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonElement(LaurentPoly);

impl PoissonElement {
    pub fn zero() -> Self {
        Self(LaurentPoly::zero(HXY))
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self(LaurentPoly::constant(HXY, c))
    }

    pub fn monomial(c: Scalar, h: i32, x: u32, y: u32) -> Self {
        Self(LaurentPoly::monomial(HXY, vec![h, x as i32, y as i32], c))
    }

    pub fn h_pow(k: i32) -> Self {
        Self::monomial(Scalar::one(), k, 0, 0)
    }

    pub fn h() -> Self {
        Self::h_pow(1)
    }

    pub fn x() -> Self {
        Self::monomial(Scalar::one(), 0, 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(Scalar::one(), 0, 0, 1)
    }

    /// Accepts any polynomial in a subset of `h, x, y` with `x, y` exponents
    /// non-negative.
    pub fn from_poly(p: &LaurentPoly) -> Result<Self, PolyError> {
        let p = p.embed(HXY)?;
        for (e, _) in p.terms() {
            if e[1] < 0 {
                return Err(PolyError::UnknownVariable(Var::X));
            }
            if e[2] < 0 {
                return Err(PolyError::UnknownVariable(Var::Y));
            }
        }
        Ok(Self(p))
    }

    pub fn as_poly(&self) -> &LaurentPoly {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self(self.0.scale(c))
    }

    pub fn partial(&self, v: Var) -> Self {
        Self(self.0.derivative(v).expect("h, x, y are present"))
    }

    /// Terms as `(h, x, y)` exponents.
    pub fn terms(&self) -> impl Iterator<Item = ((i32, u32, u32), &Scalar)> {
        self.0
            .terms()
            .map(|(e, c)| ((e[0], e[1] as u32, e[2] as u32), c))
    }

    pub fn pow(&self, n: u32) -> Self {
        Self(self.0.pow(n))
    }

    /// The image of a univariate `p(h)`.
    pub fn from_h_poly(p: &LaurentPoly) -> Self {
        Self::from_poly(p).expect("polynomial in h")
    }

    /// Read back a polynomial in `h` alone.
    pub fn to_h_poly(&self) -> Option<LaurentPoly> {
        self.0.restrict(&[Var::H]).ok()
    }
}

impl Add for &PoissonElement {
    type Output = PoissonElement;
    fn add(self, rhs: &PoissonElement) -> PoissonElement {
        PoissonElement(&self.0 + &rhs.0)
    }
}

impl Sub for &PoissonElement {
    type Output = PoissonElement;
    fn sub(self, rhs: &PoissonElement) -> PoissonElement {
        PoissonElement(&self.0 - &rhs.0)
    }
}

impl Mul for &PoissonElement {
    type Output = PoissonElement;
    fn mul(self, rhs: &PoissonElement) -> PoissonElement {
        PoissonElement(&self.0 * &rhs.0)
    }
}

impl Neg for &PoissonElement {
    type Output = PoissonElement;
    fn neg(self) -> PoissonElement {
        PoissonElement(-&self.0)
    }
}

impl fmt::Display for PoissonElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Bracket values on generator pairs; the others follow by antisymmetry and
/// brackets with constants vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketSpec {
    pub xh: PoissonElement,
    pub yh: PoissonElement,
    pub yx: PoissonElement,
}

impl BracketSpec {
    /// `{x,h} = hx`, `{y,h} = -hy`, `{y,x} = -a'(h)h`.
    pub fn gwa(params: &GwaParams) -> Self {
        let a_prime_h = params.a_prime().shift(Var::H, 1).expect("h present");
        Self {
            xh: PoissonElement::monomial(Scalar::one(), 1, 1, 0),
            yh: PoissonElement::monomial(Scalar::from(-1), 1, 0, 1),
            yx: -&PoissonElement::from_h_poly(&a_prime_h),
        }
    }

    pub fn zero() -> Self {
        Self {
            xh: PoissonElement::zero(),
            yh: PoissonElement::zero(),
            yx: PoissonElement::zero(),
        }
    }

    /// `{u, v}` for generators.
    pub fn generator_bracket(&self, u: Var, v: Var) -> PoissonElement {
        match (u, v) {
            (Var::X, Var::H) => self.xh.clone(),
            (Var::H, Var::X) => -&self.xh,
            (Var::Y, Var::H) => self.yh.clone(),
            (Var::H, Var::Y) => -&self.yh,
            (Var::Y, Var::X) => self.yx.clone(),
            (Var::X, Var::Y) => -&self.yx,
            _ => PoissonElement::zero(),
        }
    }
}

/// The unique biderivation extending `spec`:
/// `{f, g} = Σ (∂f/∂u)(∂g/∂v){u, v}` over `u, v ∈ {h, x, y}`.
pub fn bracket(f: &PoissonElement, g: &PoissonElement, spec: &BracketSpec) -> PoissonElement {
    let df: Vec<PoissonElement> = HXY.iter().map(|&v| f.partial(v)).collect();
    let dg: Vec<PoissonElement> = HXY.iter().map(|&v| g.partial(v)).collect();
    let mut out = PoissonElement::zero();
    for (i, &u) in HXY.iter().enumerate() {
        if df[i].is_zero() {
            continue;
        }
        for (j, &v) in HXY.iter().enumerate() {
            if i == j || dg[j].is_zero() {
                continue;
            }
            let uv = spec.generator_bracket(u, v);
            if uv.is_zero() {
                continue;
            }
            out = &out + &(&(&df[i] * &dg[j]) * &uv);
        }
    }
    out
}

/// `J(h, x, y)` for the spec's bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JacobiReport {
    pub residual: PoissonElement,
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        self.residual.is_zero()
    }
}

/// Jacobiator on `(h, x, y)`; for a biderivation on a polynomial ring it is
/// a triderivation, so vanishing on the generator triple is enough.
pub fn jacobi_check(spec: &BracketSpec) -> JacobiReport {
    let (h, x, y) = (PoissonElement::h(), PoissonElement::x(), PoissonElement::y());
    let br = |a: &PoissonElement, b: &PoissonElement| bracket(a, b, spec);
    let residual = &(&br(&h, &br(&x, &y)) + &br(&x, &br(&y, &h))) + &br(&y, &br(&h, &x));
    JacobiReport { residual }
}

/// A derivation of `C[h^{±1}, x, y]` given by its values on generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub h: PoissonElement,
    pub x: PoissonElement,
    pub y: PoissonElement,
}

impl Derivation {
    pub fn zero() -> Self {
        Self {
            h: PoissonElement::zero(),
            x: PoissonElement::zero(),
            y: PoissonElement::zero(),
        }
    }

    /// A derivation of the base `C[h^{±1}][x]` (no `y`).
    pub fn on_base(h: PoissonElement, x: PoissonElement) -> Self {
        Self {
            h,
            x,
            y: PoissonElement::zero(),
        }
    }

    pub fn apply(&self, f: &PoissonElement) -> PoissonElement {
        let parts = [(Var::H, &self.h), (Var::X, &self.x), (Var::Y, &self.y)];
        parts.iter().fold(PoissonElement::zero(), |acc, (v, img)| {
            if img.is_zero() {
                acc
            } else {
                &acc + &(&f.partial(*v) * img)
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PskeReport {
    /// `(condition, pair, residual)` for every failing generator pair.
    pub failures: Vec<(&'static str, String, PoissonElement)>,
}

impl PskeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Check that `(α, δ)` makes `A[z]` a Poisson polynomial extension with
/// `{z, a} = α(a)z + δ(a)`, over the base generated by `h^{±1}` and `x`:
///
/// * `α({a,b}) = {α(a),b} + {a,α(b)}`
/// * `δ({a,b}) - {δ(a),b} - {a,δ(b)} = α(a)δ(b) - δ(a)α(b)`
///
/// Both defects are biderivations in `(a, b)`, so generator pairs suffice.
pub fn pske_check(spec: &BracketSpec, alpha: &Derivation, delta: &Derivation) -> PskeReport {
    let gens = [("h", PoissonElement::h()), ("x", PoissonElement::x())];
    let br = |a: &PoissonElement, b: &PoissonElement| bracket(a, b, spec);
    let mut failures = Vec::new();
    for (na, a) in &gens {
        for (nb, b) in &gens {
            let pair = format!("({na}, {nb})");
            let ab = br(a, b);
            let alpha_defect =
                &(&alpha.apply(&ab) - &br(&alpha.apply(a), b)) - &br(a, &alpha.apply(b));
            if !alpha_defect.is_zero() {
                failures.push(("alpha is a Poisson derivation", pair.clone(), alpha_defect));
            }
            let lhs = &(&delta.apply(&ab) - &br(&delta.apply(a), b)) - &br(a, &delta.apply(b));
            let rhs = &(&alpha.apply(a) * &delta.apply(b)) - &(&delta.apply(a) * &alpha.apply(b));
            let residual = &lhs - &rhs;
            if !residual.is_zero() {
                failures.push(("compatibility of (alpha, delta)", pair, residual));
            }
        }
    }
    PskeReport { failures }
}

/// `{f, h} = 0`, `{f, x} = 0`, `{f, y} = 0`.
pub fn is_poisson_central(f: &PoissonElement, spec: &BracketSpec) -> bool {
    [PoissonElement::h(), PoissonElement::x(), PoissonElement::y()]
        .iter()
        .all(|g| bracket(f, g, spec).is_zero())
}

/// Canonical coset representative in `A₁`: no monomial contains both `x`
/// and `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GwaElement(PoissonElement);

impl GwaElement {
    pub fn zero() -> Self {
        Self(PoissonElement::zero())
    }

    pub fn as_poisson(&self) -> &PoissonElement {
        &self.0
    }

    pub fn into_poisson(self) -> PoissonElement {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Homogeneous of the given degree (zero counts as homogeneous).
    pub fn is_homogeneous(&self, k: i32) -> bool {
        self.0.terms().all(|((_, x, y), _)| x as i32 - y as i32 == k)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self(self.0.scale(c))
    }
}

impl Add for &GwaElement {
    type Output = GwaElement;
    fn add(self, rhs: &GwaElement) -> GwaElement {
        GwaElement(&self.0 + &rhs.0)
    }
}

impl Sub for &GwaElement {
    type Output = GwaElement;
    fn sub(self, rhs: &GwaElement) -> GwaElement {
        GwaElement(&self.0 - &rhs.0)
    }
}

impl fmt::Display for GwaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Replace `h^k x^i y^j` by `a(h)^m h^k x^{i-m} y^{j-m}`, `m = min(i, j)`.
pub fn gwa_reduce(f: &PoissonElement, params: &GwaParams) -> GwaElement {
    let a = PoissonElement::from_h_poly(params.a());
    let mut powers: Vec<PoissonElement> = vec![PoissonElement::one()];
    let mut out = PoissonElement::zero();
    for ((h, x, y), c) in f.terms() {
        let m = x.min(y);
        while powers.len() <= m as usize {
            let next = powers.last().expect("non-empty") * &a;
            powers.push(next);
        }
        let rest = PoissonElement::monomial(c.clone(), h, x - m, y - m);
        out = &out + &(&rest * &powers[m as usize]);
    }
    GwaElement(out)
}

/// Product in `A₁`.
pub fn gwa_mul(f: &GwaElement, g: &GwaElement, params: &GwaParams) -> GwaElement {
    gwa_reduce(&(&f.0 * &g.0), params)
}

/// Bracket in `A₁`: the `B₁` bracket followed by reduction. Well defined
/// because `xy - a(h)` is Poisson central.
pub fn gwa_bracket(f: &GwaElement, g: &GwaElement, params: &GwaParams) -> GwaElement {
    gwa_reduce(&bracket(&f.0, &g.0, &BracketSpec::gwa(params)), params)
}

/// Lift a reduced element; `f` must already be mixed-monomial free.
pub fn gwa_element(f: &PoissonElement, params: &GwaParams) -> GwaElement {
    gwa_reduce(f, params)
}

/// Split into homogeneous components `W_k`, `k = deg_x - deg_y`.
pub fn grade_decompose(f: &GwaElement) -> BTreeMap<i32, GwaElement> {
    let mut parts: BTreeMap<i32, Vec<(crate::poly::Exponents, Scalar)>> = BTreeMap::new();
    for ((h, x, y), c) in f.0.terms() {
        parts
            .entry(x as i32 - y as i32)
            .or_default()
            .push((vec![h, x as i32, y as i32], c.clone()));
    }
    parts
        .into_iter()
        .map(|(k, terms)| (k, GwaElement(PoissonElement(LaurentPoly::from_terms(HXY, terms)))))
        .collect()
}

/// `w ↦ {w, h}·h^{-1}`; acts on `W_k` as multiplication by `k`.
pub fn eigen_map(f: &GwaElement, params: &GwaParams) -> GwaElement {
    let h = GwaElement(PoissonElement::h());
    let b = gwa_bracket(f, &h, params);
    GwaElement(&b.0 * &PoissonElement::h_pow(-1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(terms: &[(i32, i64)]) -> GwaParams {
        GwaParams::new(LaurentPoly::from_terms(
            &[Var::H],
            terms.iter().map(|&(e, c)| (vec![e], Scalar::from(c))),
        ))
        .unwrap()
    }

    fn m(c: i64, h: i32, x: u32, y: u32) -> PoissonElement {
        PoissonElement::monomial(Scalar::from(c), h, x, y)
    }

    fn g(p: &PoissonElement, params: &GwaParams) -> GwaElement {
        gwa_reduce(p, params)
    }

    #[test]
    fn bracket_examples() {
        let p = params(&[(2, 1), (0, 1)]);
        let spec = BracketSpec::gwa(&p);
        assert_eq!(bracket(&PoissonElement::x(), &PoissonElement::h(), &spec), m(1, 1, 1, 0));
        assert_eq!(bracket(&PoissonElement::x(), &m(1, 2, 0, 0), &spec), m(2, 2, 1, 0));
        let f = &(&m(3, 2, 1, 0) + &m(-1, -1, 0, 2)) + &m(5, 0, 1, 1);
        assert!(bracket(&f, &f, &spec).is_zero());
    }

    #[test]
    fn jacobi_examples() {
        let p = params(&[(2, 1), (0, 1)]);
        assert!(jacobi_check(&BracketSpec::gwa(&p)).passed());
        let mut bad = BracketSpec::gwa(&p);
        bad.yx = PoissonElement::x();
        let r = jacobi_check(&bad);
        assert!(!r.passed());
        assert_eq!(r.residual, m(1, 1, 1, 0));
        assert!(jacobi_check(&BracketSpec::zero()).passed());
    }

    #[test]
    fn pske_examples() {
        let p = params(&[(2, 1), (0, 1)]);
        let spec = BracketSpec::gwa(&p);
        let beta1 = Derivation::on_base(m(-1, 1, 0, 0), PoissonElement::zero());
        let delta1 = Derivation::on_base(PoissonElement::zero(), spec.yx.clone());
        assert!(pske_check(&spec, &beta1, &delta1).passed());
        assert!(pske_check(&spec, &Derivation::zero(), &Derivation::zero()).passed());
        let bad_delta = Derivation::on_base(PoissonElement::zero(), PoissonElement::x());
        let r = pske_check(&spec, &beta1, &bad_delta);
        assert!(!r.passed());
        let bad_alpha = Derivation::on_base(PoissonElement::one(), PoissonElement::zero());
        assert!(!pske_check(&spec, &bad_alpha, &delta1).passed());
    }

    #[test]
    fn reduce_examples() {
        let p = params(&[(2, 1), (0, 1)]);
        assert_eq!(g(&m(1, 0, 1, 1), &p).as_poisson(), &PoissonElement::from_h_poly(p.a()));
        let expected = &m(1, 2, 1, 0) + &m(1, 0, 1, 0);
        assert_eq!(g(&m(1, 0, 2, 1), &p).as_poisson(), &expected);
        assert_eq!(g(&m(1, 0, 3, 0), &p).as_poisson(), &m(1, 0, 3, 0));
    }

    #[test]
    fn gwa_bracket_examples() {
        let p = params(&[(2, 1), (1, 1)]);
        let r = gwa_bracket(&g(&PoissonElement::y(), &p), &g(&PoissonElement::x(), &p), &p);
        assert_eq!(r.as_poisson(), &(&m(-2, 2, 0, 0) + &m(-1, 1, 0, 0)));
        assert!(gwa_bracket(&g(&PoissonElement::h(), &p), &g(&m(1, -3, 0, 0), &p), &p).is_zero());
        let p = params(&[(2, 1), (0, 1)]);
        let r = gwa_bracket(&g(&PoissonElement::x(), &p), &g(&m(1, 0, 0, 2), &p), &p);
        assert_eq!(r.as_poisson(), &m(4, 2, 0, 1));
    }

    #[test]
    fn grading_examples() {
        let p = params(&[(2, 1), (0, 1)]);
        let f = g(&(&m(1, 2, 1, 0) + &m(1, 1, 0, 1)), &p);
        let parts = grade_decompose(&f);
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[&1].as_poisson(), &m(1, 2, 1, 0));
        assert_eq!(parts[&-1].as_poisson(), &m(1, 1, 0, 1));
        let parts = grade_decompose(&g(&m(1, 4, 0, 0), &p));
        assert_eq!(parts.keys().copied().collect::<Vec<_>>(), vec![0]);
        assert!(grade_decompose(&GwaElement::zero()).is_empty());
    }

    #[test]
    fn eigen_examples() {
        let p = params(&[(2, 1), (0, 1)]);
        let x = g(&PoissonElement::x(), &p);
        assert_eq!(eigen_map(&x, &p), x);
        assert!(eigen_map(&g(&m(1, 3, 0, 0), &p), &p).is_zero());
        assert_eq!(eigen_map(&g(&m(1, 1, 0, 2), &p), &p).as_poisson(), &m(-2, 1, 0, 2));
    }

    #[test]
    fn poisson_centrality() {
        let p = params(&[(2, 1), (0, 1)]);
        let spec = BracketSpec::gwa(&p);
        let casimir = &m(1, 0, 1, 1) - &PoissonElement::from_h_poly(p.a());
        assert!(is_poisson_central(&casimir, &spec));
        assert!(is_poisson_central(&PoissonElement::constant(Scalar::from(5)), &spec));
        assert!(!is_poisson_central(&PoissonElement::x(), &spec));
    }
}
