//! Poisson endomorphisms of `A₁ = C[h^{±1}, x, y]/⟨xy - a(h)⟩`.
//!
//! Three shapes occur:
//!
//! * positive: `h ↦ γh`, `x ↦ b h^n x`, `y ↦ γ^d b^{-1} h^{-n} y` with `γ^k = 1`;
//! * zero: `h ↦ γ`, `x, y ↦ 0` with `γ` a multiple root of `a`;
//! * negative: `h ↦ γh^{-1}`, `x ↦ c h^v y`, `y ↦ b h^u x` with
//!   `bc·h^{u+v}·a(h) = a(γh^{-1})`.
//!
//! Roots are searched in a cyclotomic working field; anything not found is
//! returned as a residual polynomial.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::ore::GwaParams;
use crate::poisson::{bracket, gwa_reduce, BracketSpec, GwaElement, PoissonElement};
use crate::poly::{laurent_gcd, support_data, DensePoly, LaurentPoly, PolyError, Var};
use crate::scalar::{lcm, Scalar, ScalarError};

#[derive(Debug, Error)]
pub enum EndoError {
    #[error("a(h) needs at least two terms")]
    TooFewTerms,
    #[error("zero-type endomorphisms are not injective")]
    NotInvertible,
    #[error("images do not have the shape of a Poisson endomorphism: {0}")]
    Unclassifiable(String),
    #[error("constructed endomorphism fails the defining relations: {0}")]
    Unsound(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Support `i₁ < … < i_m` of `a`, its coefficients, `d = i_m`, and
/// `k = gcd(d - i₁, …, d - i_{m-1})` when `m ≥ 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupportData {
    pub exponents: Vec<i32>,
    pub coeffs: Vec<Scalar>,
    pub d: i32,
    pub m: usize,
    pub k: Option<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Positive,
    Zero,
    Negative,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Positive => "positive",
            Kind::Zero => "zero",
            Kind::Negative => "negative",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Endomorphism {
    Positive { gamma: Scalar, b: Scalar, n: i32 },
    Zero { gamma: Scalar },
    Negative { gamma: Scalar, b: Scalar, c: Scalar, u: i32, v: i32 },
}

impl Endomorphism {
    pub fn identity() -> Self {
        Endomorphism::Positive {
            gamma: Scalar::one(),
            b: Scalar::one(),
            n: 0,
        }
    }

    pub fn kind(&self) -> Kind {
        match self {
            Endomorphism::Positive { .. } => Kind::Positive,
            Endomorphism::Zero { .. } => Kind::Zero,
            Endomorphism::Negative { .. } => Kind::Negative,
        }
    }

    pub fn gamma(&self) -> &Scalar {
        match self {
            Endomorphism::Positive { gamma, .. }
            | Endomorphism::Zero { gamma }
            | Endomorphism::Negative { gamma, .. } => gamma,
        }
    }

    /// Images of `h, x, y`; `d` is the top exponent of `a`.
    pub fn images(&self, params: &GwaParams) -> Result<PoissonMap, EndoError> {
        let m = |c: Scalar, h: i32, x: u32, y: u32| PoissonElement::monomial(c, h, x, y);
        Ok(match self {
            Endomorphism::Positive { gamma, b, n } => {
                let d = support_data(params.a())?.d;
                let cy = &gamma.pow(d as i64)? * &b.inv()?;
                PoissonMap {
                    h: m(gamma.clone(), 1, 0, 0),
                    x: m(b.clone(), *n, 1, 0),
                    y: m(cy, n.checked_neg().expect("exponent overflow"), 0, 1),
                }
            }
            Endomorphism::Zero { gamma } => PoissonMap {
                h: PoissonElement::constant(gamma.clone()),
                x: PoissonElement::zero(),
                y: PoissonElement::zero(),
            },
            Endomorphism::Negative { gamma, b, c, u, v } => PoissonMap {
                h: m(gamma.clone(), -1, 0, 0),
                x: m(c.clone(), *v, 0, 1),
                y: m(b.clone(), *u, 1, 0),
            },
        })
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Endomorphism::Positive { gamma, b, n } => {
                write!(f, "positive(gamma = {gamma}, b = {b}, n = {n})")
            }
            Endomorphism::Zero { gamma } => write!(f, "zero(gamma = {gamma})"),
            Endomorphism::Negative { gamma, b, c, u, v } => {
                write!(f, "negative(gamma = {gamma}, b = {b}, c = {c}, u = {u}, v = {v})")
            }
        }
    }
}

/// An algebra map `A₁ → A₁` given by images of `h, x, y`; `h` must map to
/// a unit or a nonzero constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonMap {
    pub h: PoissonElement,
    pub x: PoissonElement,
    pub y: PoissonElement,
}

fn unit_pow(u: &PoissonElement, k: i32) -> Option<PoissonElement> {
    if k >= 0 {
        return Some(u.pow(k as u32));
    }
    let p = u.as_poly().pow_signed(k).ok()?;
    PoissonElement::from_poly(&p).ok()
}

impl PoissonMap {
    /// `ψ(f)` reduced in `A₁`. Panics if `f` has negative powers of `h`
    /// and `ψ(h)` is not a unit.
    pub fn apply(&self, f: &PoissonElement, params: &GwaParams) -> GwaElement {
        let mut out = PoissonElement::zero();
        for ((h, x, y), c) in f.terms() {
            let ph = unit_pow(&self.h, h).expect("image of h is invertible");
            let t = &(&ph * &self.x.pow(x)) * &self.y.pow(y);
            out = &out + &t.scale(c);
        }
        gwa_reduce(&out, params)
    }

    /// `ψ₁ ∘ ψ₂` where `self = ψ₁`.
    pub fn after(&self, inner: &PoissonMap, params: &GwaParams) -> PoissonMap {
        PoissonMap {
            h: self.apply(&inner.h, params).into_poisson(),
            x: self.apply(&inner.x, params).into_poisson(),
            y: self.apply(&inner.y, params).into_poisson(),
        }
    }

    /// Recognize one of the three shapes.
    pub fn classify(&self, params: &GwaParams) -> Option<Endomorphism> {
        let single = |p: &PoissonElement| -> Option<((i32, u32, u32), Scalar)> {
            let mut it = p.terms();
            let (e, c) = it.next()?;
            it.next().is_none().then(|| (e, c.clone()))
        };
        let candidate = if self.x.is_zero() && self.y.is_zero() {
            let gamma = self.h.to_h_poly()?.as_constant()?;
            Endomorphism::Zero { gamma }
        } else {
            let ((eh, 0, 0), gamma) = single(&self.h)? else {
                return None;
            };
            let ((ex, ix, jx), cx) = single(&self.x)?;
            let ((ey, iy, jy), cy) = single(&self.y)?;
            match (eh, (ix, jx), (iy, jy)) {
                (1, (1, 0), (0, 1)) => Endomorphism::Positive {
                    gamma,
                    b: cx,
                    n: ex,
                },
                (-1, (0, 1), (1, 0)) => Endomorphism::Negative {
                    gamma,
                    b: cy,
                    c: cx,
                    u: ey,
                    v: ex,
                },
                _ => return None,
            }
        };
        (candidate.images(params).ok()? == *self).then_some(candidate)
    }
}

impl fmt::Display for PoissonMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "h -> {}, x -> {}, y -> {}", self.h, self.x, self.y)
    }
}

/// Residuals of the four defining relations under `ψ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndoReport {
    pub failures: Vec<(&'static str, GwaElement)>,
}

impl EndoReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Names of the defining relations, in checking order.
pub const RELATIONS: [&str; 4] = ["{x,h} = hx", "{y,h} = -hy", "{y,x} = -a'(h)h", "xy = a(h)"];

/// Check `{x,h} = hx`, `{y,h} = -hy`, `{y,x} = -a'(h)h`, `xy = a(h)` on the
/// images, all modulo `xy - a(h)`.
pub fn check_map(psi: &PoissonMap, params: &GwaParams) -> EndoReport {
    let spec = BracketSpec::gwa(params);
    let a = PoissonElement::from_h_poly(params.a());
    let br = |u: &PoissonElement, v: &PoissonElement| gwa_reduce(&bracket(u, v, &spec), params);
    let checks = [
        (RELATIONS[0], br(&psi.x, &psi.h), &spec.xh),
        (RELATIONS[1], br(&psi.y, &psi.h), &spec.yh),
        (RELATIONS[2], br(&psi.y, &psi.x), &spec.yx),
        (RELATIONS[3], gwa_reduce(&(&psi.x * &psi.y), params), &a),
    ];
    let failures = checks
        .into_iter()
        .filter_map(|(name, lhs, rhs)| {
            let r = &lhs - &psi.apply(rhs, params);
            (!r.is_zero()).then_some((name, r))
        })
        .collect();
    EndoReport { failures }
}

pub fn check_endomorphism(psi: &Endomorphism, params: &GwaParams) -> Result<EndoReport, EndoError> {
    Ok(check_map(&psi.images(params)?, params))
}

/// `ψ₁ ∘ ψ₂`.
pub fn compose(
    psi1: &Endomorphism,
    psi2: &Endomorphism,
    params: &GwaParams,
) -> Result<Endomorphism, EndoError> {
    let map = psi1.images(params)?.after(&psi2.images(params)?, params);
    map.classify(params)
        .ok_or_else(|| EndoError::Unclassifiable(map.to_string()))
}

/// Two-sided inverse of a positive or negative endomorphism.
pub fn invert(psi: &Endomorphism) -> Result<Endomorphism, EndoError> {
    match psi {
        Endomorphism::Positive { gamma, b, n } => Ok(Endomorphism::Positive {
            gamma: gamma.inv()?,
            b: &gamma.pow(*n as i64)? * &b.inv()?,
            n: n.checked_neg().expect("exponent overflow"),
        }),
        Endomorphism::Negative { gamma, b, c, u, v } => Ok(Endomorphism::Negative {
            gamma: gamma.clone(),
            b: &gamma.pow(-(*v as i64))? * &c.inv()?,
            c: &gamma.pow(-(*u as i64))? * &b.inv()?,
            u: *v,
            v: *u,
        }),
        Endomorphism::Zero { .. } => Err(EndoError::NotInvertible),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Simplicity {
    pub simple: bool,
    pub witness: LaurentPoly,
}

/// `A₁` is Poisson simple iff `a` has no repeated root; the witness is
/// `gcd(a, a')`.
pub fn simplicity_test(params: &GwaParams) -> Result<Simplicity, EndoError> {
    let witness = laurent_gcd(params.a(), &params.a_prime())?;
    Ok(Simplicity {
        simple: witness.is_unit(),
        witness,
    })
}

/// The positive family and its instances at the sampled `(b, n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveFamily {
    pub k: u32,
    pub d: i32,
    /// `lcm(N, k)`, where the `k`-th roots of unity live.
    pub conductor: u32,
    /// `ζ_k^j` for `j = 0, …, k-1`.
    pub gammas: Vec<Scalar>,
    pub instances: Vec<Endomorphism>,
}

impl PositiveFamily {
    pub fn describe(&self) -> String {
        format!(
            "h -> gamma*h, x -> b*h^n*x, y -> gamma^{}*b^-1*h^-n*y with gamma^{} = 1, b != 0, n in Z",
            self.d, self.k
        )
    }
}

/// Every `k`-th root of unity, crossed with each sample `(b, n)`; each
/// instance is verified before it is returned.
pub fn enumerate_positive(
    params: &GwaParams,
    samples: &[(Scalar, i32)],
) -> Result<PositiveFamily, EndoError> {
    let sd = support_data(params.a())?;
    let k = sd.k.ok_or(EndoError::TooFewTerms)?;
    let conductor = lcm(params.conductor(), k);
    let gammas: Vec<Scalar> = (0..k as i64).map(|j| Scalar::zeta_pow(k, j)).collect();
    let mut instances = Vec::new();
    for gamma in &gammas {
        for (b, n) in samples {
            let psi = Endomorphism::Positive {
                gamma: gamma.clone(),
                b: b.clone(),
                n: *n,
            };
            ensure_sound(&psi, params)?;
            instances.push(psi);
        }
    }
    Ok(PositiveFamily {
        k,
        d: sd.d,
        conductor,
        gammas,
        instances,
    })
}

fn ensure_sound(psi: &Endomorphism, params: &GwaParams) -> Result<(), EndoError> {
    if check_endomorphism(psi, params)?.passed() {
        Ok(())
    } else {
        Err(EndoError::Unsound(psi.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTypeResult {
    /// `gcd(a, a')`, monic with zero `h`-content.
    pub certificate: LaurentPoly,
    pub exact_roots: Vec<Scalar>,
    /// Factor of the certificate whose roots were not found.
    pub residual: LaurentPoly,
    pub endomorphisms: Vec<Endomorphism>,
}

/// Zero-type endomorphisms are the roots of `gcd(a, a')`, searched at the
/// working conductor.
pub fn find_zero_type(params: &GwaParams) -> Result<ZeroTypeResult, EndoError> {
    let certificate = laurent_gcd(params.a(), &params.a_prime())?;
    let (dense, _) = DensePoly::from_laurent(&certificate)?;
    let (exact_roots, residual) = extract_roots(&dense, params.conductor());
    let mut endomorphisms = Vec::new();
    for gamma in &exact_roots {
        let psi = Endomorphism::Zero {
            gamma: gamma.clone(),
        };
        ensure_sound(&psi, params)?;
        endomorphisms.push(psi);
    }
    Ok(ZeroTypeResult {
        certificate,
        exact_roots,
        residual: residual.to_laurent(Var::H),
        endomorphisms,
    })
}

/// One admissible `γ` with its forced `bc`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeSolution {
    pub gamma: Scalar,
    pub bc: Scalar,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NegativeSolutionSet {
    pub feasible: bool,
    /// Why no solution exists, when infeasible.
    pub reason: Option<String>,
    /// `u + v = -(i₁ + i_m)`.
    pub s: Option<i32>,
    /// Admissible `γ` solve `γ^g = c₀`.
    pub g: Option<u32>,
    pub c0: Option<Scalar>,
    /// `bc = β₀·γ^e` as `(β₀, e)`.
    pub beta_rule: Option<(Scalar, i32)>,
    /// Field in which `γ` was searched.
    pub conductor: u32,
    pub solutions: Vec<NegativeSolution>,
    /// Factor of `z^g - c₀` whose roots were not found.
    pub residual: Option<LaurentPoly>,
}

impl NegativeSolutionSet {
    fn infeasible(reason: String, conductor: u32, s: Option<i32>) -> Self {
        Self {
            feasible: false,
            reason: Some(reason),
            s,
            g: None,
            c0: None,
            beta_rule: None,
            conductor,
            solutions: Vec::new(),
            residual: None,
        }
    }

    /// One representative per solution: `b = 1`, `c = bc`, `u = 0`, `v = s`.
    pub fn endomorphisms(&self) -> Vec<Endomorphism> {
        let s = self.s.unwrap_or(0);
        self.solutions
            .iter()
            .map(|sol| Endomorphism::Negative {
                gamma: sol.gamma.clone(),
                b: Scalar::one(),
                c: sol.bc.clone(),
                u: 0,
                v: s,
            })
            .collect()
    }
}

/// Solve `bc·h^s·a(h) = a(γh^{-1})` for `(γ, bc, s)`.
///
/// Matching supports forces `s = -(i₁ + i_m)` and a symmetric support.
/// Matching coefficients gives `bc·a_i = a_{i'}γ^{i'}` with
/// `i' = i₁ + i_m - i`; dividing by the equation at `i₁` leaves
/// `γ^{i_j - i₁} = a_{i'}a_{i₁}/(a_{i_j}a_{i_m})`, which a Bezout
/// combination folds into `γ^g = c₀`.
pub fn solve_negative(params: &GwaParams) -> Result<NegativeSolutionSet, EndoError> {
    let sd = support_data(params.a())?;
    if sd.m < 2 {
        return Err(EndoError::TooFewTerms);
    }
    let n = params.conductor();
    let ex = &sd.exponents;
    let (i1, im) = (ex[0], ex[sd.m - 1]);
    let sum = i1.checked_add(im).expect("exponent overflow");
    if (0..sd.m).any(|j| ex[j] + ex[sd.m - 1 - j] != sum) {
        return Ok(NegativeSolutionSet::infeasible(
            format!("support {ex:?} is not symmetric"),
            n,
            None,
        ));
    }
    let s = -sum;
    let coeff = |i: i32| &sd.coeffs[ex.binary_search(&i).expect("symmetric support")];
    let (a1, am) = (coeff(i1), coeff(im));
    let mut constraints: Vec<(u32, Scalar)> = Vec::new();
    for &ij in &ex[1..] {
        let ip = sum - ij;
        let num = coeff(ip) * a1;
        let den = coeff(ij) * am;
        constraints.push(((ij - i1) as u32, num.try_div(&den)?));
    }
    // Bezout: g = Σ x_j e_j, so γ^g = Π c_j^{x_j}.
    let (mut g, mut c0) = (0u32, Scalar::one());
    for (e, c) in &constraints {
        let ext = (g as i64).extended_gcd(&(*e as i64));
        c0 = &c0.pow(ext.x)? * &c.pow(ext.y)?;
        g = ext.gcd as u32;
    }
    for (e, c) in &constraints {
        if c0.pow((e / g) as i64)? != *c {
            return Ok(NegativeSolutionSet::infeasible(
                format!("gamma^{e} = {c} is incompatible with gamma^{g} = {c0}"),
                n,
                Some(s),
            ));
        }
    }
    let beta0 = am.try_div(a1)?;
    let mut conductor = lcm(n, g);
    if let Some(o) = c0.root_of_unity_order() {
        conductor = lcm(conductor, g * o);
    }
    let binomial = {
        let mut coeffs = vec![Scalar::zero(); g as usize + 1];
        coeffs[0] = -&c0;
        coeffs[g as usize] = Scalar::one();
        DensePoly::new(coeffs)
    };
    let (roots, residual) = extract_roots(&binomial, conductor);
    let mut solutions = Vec::new();
    for gamma in roots {
        let bc = &beta0 * &gamma.pow(im as i64)?;
        let lhs = params.a().shift(Var::H, s)?.scale(&bc);
        let rhs = params.a().substitute_h(&gamma, -1)?;
        if lhs != rhs {
            return Err(EndoError::Unsound(format!("gamma = {gamma}, bc = {bc}")));
        }
        solutions.push(NegativeSolution { gamma, bc });
    }
    let out = NegativeSolutionSet {
        feasible: true,
        reason: None,
        s: Some(s),
        g: Some(g),
        c0: Some(c0),
        beta_rule: Some((beta0, im)),
        conductor,
        solutions,
        residual: (residual.degree() != Some(0)).then(|| residual.to_laurent(Var::H)),
    };
    for psi in out.endomorphisms() {
        ensure_sound(&psi, params)?;
    }
    Ok(out)
}

/// Best-effort roots of `p` in `Q(ζ_N)`: returns the distinct roots found
/// and the monic cofactor left over.
pub fn extract_roots(p: &DensePoly, conductor: u32) -> (Vec<Scalar>, DensePoly) {
    let mut rest = p.monic();
    let mut roots = Vec::new();
    loop {
        let root = match rest.degree() {
            None | Some(0) => break,
            Some(1) => -&rest.coeffs()[0],
            Some(_) => match find_root(&rest, conductor) {
                Some(r) => r,
                None => break,
            },
        };
        let linear = DensePoly::new(vec![-&root, Scalar::one()]);
        while rest.degree().is_some_and(|d| d > 0) && rest.eval(&root).is_zero() {
            rest = rest.divrem(&linear).0;
        }
        roots.push(root);
    }
    (roots, rest)
}

const RATIONAL_SEARCH_LIMIT: u64 = 1_000_000_000_000;

fn find_root(p: &DensePoly, conductor: u32) -> Option<Scalar> {
    let is_root = |r: &Scalar| p.eval(r).is_zero();
    if let Some(r) = rational_candidates(p).into_iter().find(|r| is_root(r)) {
        return Some(r);
    }
    let l = lcm(2, conductor);
    let unity: Vec<Scalar> = (0..l as i64).map(|j| Scalar::zeta_pow(l, j)).collect();
    if let Some(r) = unity.iter().find(|r| is_root(r)) {
        return Some(r.clone());
    }
    binomial_candidates(p, &unity).into_iter().find(|r| is_root(r))
}

/// `±p/q` with `p | a₀`, `q | a_n`, positive first.
fn rational_candidates(p: &DensePoly) -> Vec<Scalar> {
    let Some(coeffs) = p
        .coeffs()
        .iter()
        .map(Scalar::as_rational)
        .collect::<Option<Vec<BigRational>>>()
    else {
        return Vec::new();
    };
    let den = coeffs.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &den).to_integer()).collect();
    let (Some(a0), Some(an)) = (ints.iter().find(|c| !c.is_zero()), ints.last()) else {
        return Vec::new();
    };
    let (Some(ps), Some(qs)) = (small_divisors(a0), small_divisors(an)) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    for &q in &qs {
        for &pp in &ps {
            let r = Scalar::from_rational(BigRational::new(BigInt::from(pp), BigInt::from(q)));
            out.push(r.clone());
            out.push(-r);
        }
    }
    out
}

fn small_divisors(n: &BigInt) -> Option<Vec<u64>> {
    let n = n.abs().to_u64()?;
    if n > RATIONAL_SEARCH_LIMIT {
        return None;
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Some(small)
}

/// For `z^g - c` with `c = q·ω`, `q` rational and `ω` a root of unity of
/// the working field: candidates `q^{1/g}·ζ` when `|q|` has a rational
/// `g`-th root.
fn binomial_candidates(p: &DensePoly, unity: &[Scalar]) -> Vec<Scalar> {
    let g = p.degree().expect("nonconstant");
    if p.coeffs()[1..g].iter().any(|c| !c.is_zero()) {
        return Vec::new();
    }
    let c = -&p.coeffs()[0];
    let Some(q) = unity
        .iter()
        .find_map(|w| c.try_div(w).ok().and_then(|r| r.as_rational()))
    else {
        return Vec::new();
    };
    let Some(r) = rational_root(&q.abs(), g as u32) else {
        return Vec::new();
    };
    let r = Scalar::from_rational(r);
    unity.iter().map(|w| &r * w).collect()
}

fn rational_root(q: &BigRational, g: u32) -> Option<BigRational> {
    let root = |n: &BigInt| {
        let r = n.nth_root(g);
        (r.pow(g) == *n).then_some(r)
    };
    Some(BigRational::new(root(q.numer())?, root(q.denom())?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hpoly(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(&[Var::H], terms.iter().map(|&(e, c)| (vec![e], Scalar::from(c))))
    }

    fn params(terms: &[(i32, i64)]) -> GwaParams {
        GwaParams::new(hpoly(terms)).unwrap()
    }

    fn positive(gamma: Scalar, b: i64, n: i32) -> Endomorphism {
        Endomorphism::Positive {
            gamma,
            b: Scalar::from(b),
            n,
        }
    }

    #[test]
    fn simplicity_examples() {
        let r = simplicity_test(&params(&[(1, 1), (0, 1)])).unwrap();
        assert!(r.simple);
        assert_eq!(r.witness, hpoly(&[(0, 1)]));
        let r = simplicity_test(&params(&[(2, 1), (1, -2), (0, 1)])).unwrap();
        assert!(!r.simple);
        assert_eq!(r.witness, hpoly(&[(1, 1), (0, -1)]));
        assert!(simplicity_test(&params(&[(2, 1), (1, 1)])).unwrap().simple);
    }

    #[test]
    fn check_examples() {
        let p = params(&[(2, 1), (0, 1)]);
        assert!(check_endomorphism(&Endomorphism::identity(), &p).unwrap().passed());
        let zero = Endomorphism::Zero {
            gamma: Scalar::one(),
        };
        assert!(check_endomorphism(&zero, &params(&[(2, 1), (1, -2), (0, 1)])).unwrap().passed());
        let flip = positive(Scalar::from(-1), 1, 0);
        assert!(check_endomorphism(&flip, &p).unwrap().passed());
        let q = params(&[(3, 1), (2, 1), (0, 1)]);
        let r = check_endomorphism(&flip, &q).unwrap();
        assert!(!r.passed());
        assert!(r.failures.iter().any(|(name, _)| *name == "xy = a(h)"));
    }

    #[test]
    fn positive_examples() {
        let samples = [(Scalar::one(), 0), (Scalar::from(3), -2)];
        let f = enumerate_positive(&params(&[(2, 1), (0, 1)]), &samples).unwrap();
        assert_eq!(f.k, 2);
        assert_eq!(f.gammas, vec![Scalar::one(), Scalar::from(-1)]);
        assert_eq!(f.instances.len(), 4);
        assert_eq!(enumerate_positive(&params(&[(3, 1), (1, 1)]), &samples).unwrap().k, 2);
        let f = enumerate_positive(&params(&[(1, 1), (0, 1)]), &samples).unwrap();
        assert_eq!(f.gammas, vec![Scalar::one()]);
        let f = enumerate_positive(&params(&[(4, 1), (0, 1)]), &samples).unwrap();
        assert_eq!(f.conductor, 4);
        assert_eq!(f.instances.len(), 8);
    }

    #[test]
    fn zero_type_examples() {
        let r = find_zero_type(&params(&[(2, 1), (1, -2), (0, 1)])).unwrap();
        assert_eq!(r.exact_roots, vec![Scalar::one()]);
        assert_eq!(r.residual, hpoly(&[(0, 1)]));
        let r = find_zero_type(&params(&[(2, 1), (0, 1)])).unwrap();
        assert!(r.exact_roots.is_empty());
        assert!(r.certificate.is_unit());
        let sq = GwaParams::with_conductor(hpoly(&[(4, 1), (2, 2), (0, 1)]), 4).unwrap();
        let r = find_zero_type(&sq).unwrap();
        assert_eq!(r.exact_roots, vec![Scalar::zeta(4), -Scalar::zeta(4)]);
        assert_eq!(r.residual, hpoly(&[(0, 1)]));
        let r = find_zero_type(&params(&[(4, 1), (2, 2), (0, 1)])).unwrap();
        assert!(r.exact_roots.is_empty());
        assert_eq!(r.residual, hpoly(&[(2, 1), (0, 1)]));
    }

    #[test]
    fn negative_examples() {
        let r = solve_negative(&params(&[(2, 1), (0, 1)])).unwrap();
        assert!(r.feasible);
        assert_eq!(r.s, Some(-2));
        assert_eq!(r.g, Some(2));
        let gammas: Vec<_> = r.solutions.iter().map(|s| s.gamma.clone()).collect();
        assert_eq!(gammas, vec![Scalar::one(), Scalar::from(-1)]);
        assert!(r.solutions.iter().all(|s| s.bc.is_one()));
        let r = solve_negative(&params(&[(2, 1), (1, 1)])).unwrap();
        assert_eq!(r.s, Some(-3));
        assert_eq!(r.solutions, vec![NegativeSolution { gamma: Scalar::one(), bc: Scalar::one() }]);
        let r = solve_negative(&params(&[(3, 1), (1, 1), (0, 1)])).unwrap();
        assert!(!r.feasible);
    }

    #[test]
    fn negative_rational_roots() {
        let r = solve_negative(&params(&[(2, 1), (0, 4)])).unwrap();
        assert!(r.feasible);
        assert_eq!(r.c0, Some(Scalar::from(16)));
        let gammas: Vec<_> = r.solutions.iter().map(|s| s.gamma.clone()).collect();
        assert_eq!(gammas, vec![Scalar::from(4), Scalar::from(-4)]);
        assert!(r.solutions.iter().all(|s| s.bc == Scalar::from(4)));
    }

    #[test]
    fn inverses_and_composition() {
        let p = params(&[(2, 1), (0, 1)]);
        let psi = positive(Scalar::from(-1), 5, 3);
        let inv = invert(&psi).unwrap();
        assert_eq!(compose(&psi, &inv, &p).unwrap(), Endomorphism::identity());
        assert_eq!(compose(&inv, &psi, &p).unwrap(), Endomorphism::identity());
        assert_eq!(invert(&Endomorphism::identity()).unwrap(), Endomorphism::identity());
        let negs = solve_negative(&p).unwrap().endomorphisms();
        for n in &negs {
            let inv = invert(n).unwrap();
            assert!(check_endomorphism(&inv, &p).unwrap().passed());
            assert_eq!(compose(n, &inv, &p).unwrap(), Endomorphism::identity());
        }
        assert_eq!(compose(&negs[0], &negs[1], &p).unwrap().kind(), Kind::Positive);
        let zero = Endomorphism::Zero { gamma: Scalar::one() };
        assert!(matches!(invert(&zero), Err(EndoError::NotInvertible)));
    }
}
