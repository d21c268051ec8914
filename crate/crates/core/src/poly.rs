//! Sparse Laurent polynomials with [`Scalar`] coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vectors aligned with the
//! polynomial's variable list, so iteration order (and therefore display) is
//! deterministic. Zero coefficients are never stored.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;

use crate::endo::SupportData;
use crate::scalar::{Scalar, ScalarError};

/// Variables that can appear in this engine's polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    T,
    H,
    X,
    Y,
}

impl Var {
    pub fn name(self) -> &'static str {
        match self {
            Var::T => "t",
            Var::H => "h",
            Var::X => "x",
            Var::Y => "y",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VarMismatch(Vec<Var>, Vec<Var>),
    #[error("variable {0} is not in the polynomial's variable list")]
    UnknownVariable(Var),
    #[error("polynomial is not divisible by t - 1")]
    NotDivisibleByTMinus1,
    #[error("zero polynomial")]
    ZeroPolynomial,
    #[error("cannot substitute zero for an invertible variable")]
    ZeroSubstitution,
    #[error("expected a univariate polynomial")]
    NotUnivariate,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

pub type Exponents = Vec<i32>;

pub(crate) fn add_exp(a: i32, b: i32) -> i32 {
    a.checked_add(b).expect("exponent overflow")
}

pub(crate) fn mul_exp(a: i32, b: i32) -> i32 {
    a.checked_mul(b).expect("exponent overflow")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPoly {
    vars: Vec<Var>,
    terms: BTreeMap<Exponents, Scalar>,
}

impl LaurentPoly {
    pub fn zero(vars: &[Var]) -> Self {
        Self {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(vars: &[Var]) -> Self {
        Self::constant(vars, Scalar::one())
    }

    pub fn constant(vars: &[Var], c: Scalar) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn monomial(vars: &[Var], exps: Exponents, c: Scalar) -> Self {
        assert_eq!(exps.len(), vars.len(), "exponent vector length");
        let mut p = Self::zero(vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    /// The polynomial `v^e`.
    pub fn var_pow(vars: &[Var], v: Var, e: i32) -> Result<Self, PolyError> {
        let i = index_of(vars, v)?;
        let mut exps = vec![0; vars.len()];
        exps[i] = e;
        Ok(Self::monomial(vars, exps, Scalar::one()))
    }

    /// Collect `(exponents, coefficient)` pairs, summing duplicates.
    pub fn from_terms<I>(vars: &[Var], terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponents, Scalar)>,
    {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: Scalar) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &[Var] {
        &self.vars
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Units of a Laurent ring are exactly the nonzero single-term elements.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn coeff(&self, exps: &[i32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Constant term as a scalar, if the polynomial is constant.
    pub fn as_constant(&self) -> Option<Scalar> {
        if self.is_constant() {
            Some(self.coeff(&vec![0; self.vars.len()]))
        } else {
            None
        }
    }

    pub fn index(&self, v: Var) -> Result<usize, PolyError> {
        index_of(&self.vars, v)
    }

    /// Least and greatest exponent of `v` among the terms.
    pub fn exponent_range(&self, v: Var) -> Result<Option<(i32, i32)>, PolyError> {
        let i = self.index(v)?;
        let mut it = self.terms.keys().map(|e| e[i]);
        Ok(it.next().map(|first| {
            it.fold((first, first), |(lo, hi), x| (lo.min(x), hi.max(x)))
        }))
    }

    fn check_vars(&self, other: &Self) -> Result<(), PolyError> {
        if self.vars == other.vars {
            Ok(())
        } else {
            Err(PolyError::VarMismatch(self.vars.clone(), other.vars.clone()))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e = e1.iter().zip(e2).map(|(&a, &b)| add_exp(a, b)).collect();
                out.add_term(e, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(&self.vars);
        }
        Self {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiply by the monomial `v^k`.
    pub fn shift(&self, v: Var, k: i32) -> Result<Self, PolyError> {
        let i = self.index(v)?;
        Ok(Self {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[i] = add_exp(e[i], k);
                    (e, c.clone())
                })
                .collect(),
        })
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(&self.vars);
        let mut sq = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        acc
    }

    /// Integer power, negative exponents allowed for units only.
    pub fn pow_signed(&self, n: i32) -> Result<Self, PolyError> {
        if n >= 0 {
            return Ok(self.pow(n as u32));
        }
        let inv = self.unit_inverse()?;
        Ok(inv.pow(n.unsigned_abs()))
    }

    /// Inverse of a single-term polynomial.
    pub fn unit_inverse(&self) -> Result<Self, PolyError> {
        if !self.is_unit() {
            return Err(PolyError::ZeroSubstitution);
        }
        let (e, c) = self.terms.iter().next().expect("unit has a term");
        let e = e.iter().map(|&x| x.checked_neg().expect("exponent overflow")).collect();
        Ok(Self::monomial(&self.vars, e, c.inv()?))
    }

    /// Rewrite over a larger (or reordered) variable list.
    pub fn embed(&self, vars: &[Var]) -> Result<Self, PolyError> {
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|&v| index_of(vars, v))
            .collect::<Result<_, _>>()?;
        let mut out = Self::zero(vars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; vars.len()];
            for (k, &i) in map.iter().enumerate() {
                ne[i] = e[k];
            }
            out.terms.insert(ne, c.clone());
        }
        Ok(out)
    }

    /// Drop variables that do not occur, keeping the listed ones.
    pub fn restrict(&self, vars: &[Var]) -> Result<Self, PolyError> {
        let keep: Vec<usize> = vars.iter().map(|&v| self.index(v)).collect::<Result<_, _>>()?;
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                if x != 0 && !keep.contains(&i) {
                    return Err(PolyError::UnknownVariable(self.vars[i]));
                }
            }
        }
        Ok(Self {
            vars: vars.to_vec(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone()))
                .collect(),
        })
    }

    /// Formal partial derivative; `c·v^n ↦ c·n·v^{n-1}` for every integer `n`.
    pub fn derivative(&self, v: Var) -> Result<Self, PolyError> {
        let i = self.index(v)?;
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut ne = e.clone();
            ne[i] = add_exp(e[i], -1);
            out.add_term(ne, c * &Scalar::from_integer(e[i] as i64));
        }
        Ok(out)
    }

    /// `h^n ↦ γ^n h^{sign·n}` for `sign = ±1`.
    pub fn substitute_h(&self, gamma: &Scalar, sign: i32) -> Result<Self, PolyError> {
        assert!(sign == 1 || sign == -1, "sign must be ±1");
        if gamma.is_zero() {
            return Err(PolyError::ZeroSubstitution);
        }
        let i = self.index(Var::H)?;
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            ne[i] = mul_exp(e[i], sign);
            out.add_term(ne, c * &gamma.pow(e[i] as i64)?);
        }
        Ok(out)
    }

    /// `h^n ↦ t^{k·n} h^n`, i.e. `p(h) ↦ p(t^k h)`, over `(t, h, …)`.
    ///
    /// The result gains `t` as its first variable when `t` is absent.
    pub fn substitute_h_by_t_power(&self, k: i32) -> Result<Self, PolyError> {
        let target = if self.vars.contains(&Var::T) {
            self.clone()
        } else {
            let mut vars = vec![Var::T];
            vars.extend(self.vars.iter().copied());
            self.embed(&vars)?
        };
        let ti = target.index(Var::T)?;
        let hi = target.index(Var::H)?;
        let mut out = Self::zero(&target.vars);
        for (e, c) in &target.terms {
            let mut ne = e.clone();
            ne[ti] = add_exp(ne[ti], mul_exp(k, e[hi]));
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Evaluate `v = λ` and drop `v` from the variable list.
    pub fn evaluate(&self, v: Var, lambda: &Scalar) -> Result<Self, PolyError> {
        let i = self.index(v)?;
        if lambda.is_zero() && self.terms.keys().any(|e| e[i] < 0) {
            return Err(PolyError::ZeroSubstitution);
        }
        let vars: Vec<Var> = self.vars.iter().copied().filter(|&w| w != v).collect();
        let mut out = Self::zero(&vars);
        for (e, c) in &self.terms {
            let mut ne = e.clone();
            let k = ne.remove(i);
            out.add_term(ne, c * &lambda.pow(k as i64)?);
        }
        Ok(out)
    }

    /// `t ↦ λ`; `λ` must be nonzero since `t` is invertible.
    pub fn evaluate_t(&self, lambda: &Scalar) -> Result<Self, PolyError> {
        if lambda.is_zero() {
            return Err(PolyError::ZeroSubstitution);
        }
        self.evaluate(Var::T, lambda)
    }

    /// Value of a univariate polynomial at a nonzero (or, for polynomials
    /// without negative powers, any) point.
    pub fn eval_univariate(&self, at: &Scalar) -> Result<Scalar, PolyError> {
        if self.vars.len() != 1 {
            return Err(PolyError::NotUnivariate);
        }
        let v = self.vars[0];
        let p = self.evaluate(v, at)?;
        Ok(p.coeff(&[]))
    }

    /// Exact quotient by `t - 1`.
    ///
    /// Every fibre over a fixed monomial in the other variables is a Laurent
    /// polynomial in `t`; each is shifted to an ordinary polynomial and
    /// divided synthetically.
    pub fn divide_by_t_minus_1(&self) -> Result<Self, PolyError> {
        let ti = self.index(Var::T)?;
        let mut fibres: BTreeMap<Exponents, BTreeMap<i32, Scalar>> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            let k = rest.remove(ti);
            fibres.entry(rest).or_default().insert(k, c.clone());
        }
        let mut out = Self::zero(&self.vars);
        for (rest, fibre) in fibres {
            let lo = *fibre.keys().next().expect("non-empty fibre");
            let hi = *fibre.keys().next_back().expect("non-empty fibre");
            let len = (hi - lo) as usize + 1;
            let mut dense = vec![Scalar::zero(); len];
            for (k, c) in fibre {
                dense[(k - lo) as usize] = c;
            }
            // synthetic division by (t - 1), from the top
            let mut quot = vec![Scalar::zero(); len.saturating_sub(1)];
            let mut carry = Scalar::zero();
            for i in (1..len).rev() {
                carry = &carry + &dense[i];
                quot[i - 1] = carry.clone();
            }
            if !(&carry + &dense[0]).is_zero() {
                return Err(PolyError::NotDivisibleByTMinus1);
            }
            for (i, c) in quot.into_iter().enumerate() {
                let mut e = rest.clone();
                e.insert(ti, lo + i as i32);
                out.add_term(e, c);
            }
        }
        Ok(out)
    }
}

fn index_of(vars: &[Var], v: Var) -> Result<usize, PolyError> {
    vars.iter().position(|&w| w == v).ok_or(PolyError::UnknownVariable(v))
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    /// # Panics
    /// Panics on mismatched variable lists; see [`LaurentPoly::try_add`].
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Format one `coefficient·monomial` term. Returns `(negative, body)`.
pub(crate) fn format_term(c: &Scalar, atoms: &str) -> (bool, String) {
    let s = c.to_string();
    let single = c.display_components() <= 1;
    let (neg, mag) = match s.strip_prefix('-') {
        Some(rest) if single => (true, rest.to_string()),
        _ => (false, s),
    };
    let mag = if single { mag } else { format!("({mag})") };
    let body = if atoms.is_empty() {
        mag
    } else if mag == "1" {
        atoms.to_string()
    } else {
        format!("{mag}*{atoms}")
    };
    (neg, body)
}

pub(crate) fn write_terms<'a, I>(f: &mut fmt::Formatter<'_>, terms: I) -> fmt::Result
where
    I: Iterator<Item = (String, &'a Scalar)>,
{
    let mut first = true;
    for (atoms, c) in terms {
        let (neg, body) = format_term(c, &atoms);
        match (first, neg) {
            (true, true) => write!(f, "-{body}")?,
            (true, false) => write!(f, "{body}")?,
            (false, true) => write!(f, " - {body}")?,
            (false, false) => write!(f, " + {body}")?,
        }
        first = false;
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

pub(crate) fn format_atom(v: Var, e: i32) -> String {
    if e == 1 {
        v.name().to_string()
    } else {
        format!("{}^{}", v.name(), e)
    }
}

/// Terms in descending exponent order, atoms joined by `*`: `-2*h^2 + h^-1`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.terms.iter().rev().map(|(e, c)| {
                let atoms: Vec<String> = self
                    .vars
                    .iter()
                    .zip(e)
                    .filter(|(_, &k)| k != 0)
                    .map(|(&v, &k)| format_atom(v, k))
                    .collect();
                (atoms.join("*"), c)
            }),
        )
    }
}

/// Dense univariate polynomial over [`Scalar`], ascending coefficients.
///
/// Used for Euclidean gcd and root extraction once a Laurent polynomial has
/// been shifted to an ordinary polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DensePoly {
    coeffs: Vec<Scalar>,
}

impl DensePoly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(lead) => {
                let inv = lead.inv().expect("nonzero leading coefficient");
                Self::new(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(Vec::new());
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder; `other` must be nonzero.
    pub fn divrem(&self, other: &Self) -> (Self, Self) {
        let dd = other.degree().expect("division by zero polynomial");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::new(Vec::new()), self.clone());
        }
        let lead_inv = other.coeffs[dd].inv().expect("nonzero leading coefficient");
        let mut quot = vec![Scalar::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (i, d) in other.coeffs.iter().enumerate() {
                rem[k + i] = &rem[k + i] - &(&c * d);
            }
            quot[k] = c;
        }
        (Self::new(quot), Self::new(rem))
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        while !r1.is_zero() {
            let (_, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
        }
        r0.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * &Scalar::from_integer(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, c| &(&acc * x) + c)
    }

    /// Strip the `v`-content of a univariate Laurent polynomial: returns the
    /// ordinary polynomial with nonzero constant term and the removed shift.
    pub fn from_laurent(p: &LaurentPoly) -> Result<(Self, i32), PolyError> {
        if p.vars().len() != 1 {
            return Err(PolyError::NotUnivariate);
        }
        let Some((lo, hi)) = p.exponent_range(p.vars()[0])? else {
            return Ok((Self::new(Vec::new()), 0));
        };
        let mut dense = vec![Scalar::zero(); (hi - lo) as usize + 1];
        for (e, c) in p.terms() {
            dense[(e[0] - lo) as usize] = c.clone();
        }
        Ok((Self::new(dense), lo))
    }

    pub fn to_laurent(&self, v: Var) -> LaurentPoly {
        LaurentPoly::from_terms(
            &[v],
            self.coeffs.iter().enumerate().map(|(i, c)| (vec![i as i32], c.clone())),
        )
    }
}

/// Gcd in `C[h^{±1}]`, normalized monic with zero `h`-content.
///
/// Powers of the variable are units of the Laurent ring and never count as
/// common factors, so both inputs are shifted to ordinary polynomials with
/// nonzero constant term before the Euclidean algorithm runs.
pub fn laurent_gcd(p: &LaurentPoly, q: &LaurentPoly) -> Result<LaurentPoly, PolyError> {
    if p.is_zero() && q.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if p.vars() != q.vars() {
        return Err(PolyError::VarMismatch(p.vars().to_vec(), q.vars().to_vec()));
    }
    let (dp, _) = DensePoly::from_laurent(p)?;
    let (dq, _) = DensePoly::from_laurent(q)?;
    Ok(DensePoly::gcd(&dp, &dq).to_laurent(p.vars()[0]))
}

/// Sorted support of a nonzero univariate `a(h)` and the derived invariants.
pub fn support_data(a: &LaurentPoly) -> Result<SupportData, PolyError> {
    if a.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    if a.vars().len() != 1 {
        return Err(PolyError::NotUnivariate);
    }
    let (exponents, coeffs): (Vec<i32>, Vec<Scalar>) =
        a.terms().map(|(e, c)| (e[0], c.clone())).unzip();
    let d = *exponents.last().expect("nonzero polynomial");
    let m = exponents.len();
    let k = if m >= 2 {
        Some(
            exponents[..m - 1]
                .iter()
                .fold(0u32, |g, &i| g.gcd(&((d - i) as u32))),
        )
    } else {
        None
    };
    Ok(SupportData {
        exponents,
        coeffs,
        d,
        m,
        k,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const H: &[Var] = &[Var::H];
    const TH: &[Var] = &[Var::T, Var::H];

    fn hpoly(terms: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(H, terms.iter().map(|&(e, c)| (vec![e], Scalar::from(c))))
    }

    fn thpoly(terms: &[(i32, i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(
            TH,
            terms.iter().map(|&(a, b, c)| (vec![a, b], Scalar::from(c))),
        )
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(&hpoly(&[(1, 1), (0, 1)]) * &hpoly(&[(1, 1), (0, -1)]), hpoly(&[(2, 1), (0, -1)]));
        assert_eq!(&thpoly(&[(1, 0, 1), (0, 0, -1)]) * &thpoly(&[(1, 0, 1), (0, 0, 1)]), thpoly(&[(2, 0, 1), (0, 0, -1)]));
        assert_eq!(&hpoly(&[(-1, 1)]) * &hpoly(&[(1, 1)]), LaurentPoly::one(H));
        assert!(hpoly(&[(-3, 5)]).is_unit());
        assert!(!hpoly(&[(1, 1), (0, 1)]).is_unit());
    }

    #[test]
    fn mismatched_vars_error() {
        assert!(matches!(
            hpoly(&[(1, 1)]).try_add(&thpoly(&[(1, 0, 1)])),
            Err(PolyError::VarMismatch(..))
        ));
    }

    #[test]
    fn derivative_examples() {
        let d = hpoly(&[(2, 1), (0, 1)]).derivative(Var::H).unwrap();
        assert_eq!(d, hpoly(&[(1, 2)]));
        assert_eq!(hpoly(&[(-1, 1)]).derivative(Var::H).unwrap(), hpoly(&[(-2, -1)]));
        assert!(hpoly(&[(0, 5)]).derivative(Var::H).unwrap().is_zero());
        assert_eq!(hpoly(&[(0, 5)]).derivative(Var::T), Err(PolyError::UnknownVariable(Var::T)));
    }

    #[test]
    fn substitution_examples() {
        let a = hpoly(&[(2, 1), (0, 1)]);
        assert_eq!(a.substitute_h_by_t_power(1).unwrap(), thpoly(&[(2, 2, 1), (0, 0, 1)]));
        assert_eq!(a.substitute_h(&Scalar::one(), -1).unwrap(), hpoly(&[(-2, 1), (0, 1)]));
        let h = hpoly(&[(1, 1)]);
        assert_eq!(h.substitute_h(&Scalar::one(), 1).unwrap(), h);
        assert_eq!(h.substitute_h(&Scalar::zero(), 1), Err(PolyError::ZeroSubstitution));
        // a(2h) for a = h^2 + 1
        assert_eq!(a.substitute_h(&Scalar::from(2), 1).unwrap(), hpoly(&[(2, 4), (0, 1)]));
    }

    #[test]
    fn evaluate_examples() {
        let p = thpoly(&[(1, 1, 1), (-1, 0, 1)]);
        let expected = LaurentPoly::from_terms(H, [(vec![1], Scalar::from(2)), (vec![0], Scalar::ratio(1, 2))]);
        assert_eq!(p.evaluate_t(&Scalar::from(2)).unwrap(), expected);
        assert!(thpoly(&[(1, 1, 1), (0, 1, -1)]).evaluate_t(&Scalar::one()).unwrap().is_zero());
        assert_eq!(thpoly(&[(0, 2, 1)]).evaluate_t(&Scalar::from(7)).unwrap(), hpoly(&[(2, 1)]));
        assert_eq!(p.evaluate_t(&Scalar::zero()), Err(PolyError::ZeroSubstitution));
    }

    #[test]
    fn divide_examples() {
        assert_eq!(thpoly(&[(2, 0, 1), (0, 0, -1)]).divide_by_t_minus_1().unwrap(), thpoly(&[(1, 0, 1), (0, 0, 1)]));
        assert_eq!(thpoly(&[(1, 1, 1), (0, 1, -1)]).divide_by_t_minus_1().unwrap(), thpoly(&[(0, 1, 1)]));
        assert_eq!(thpoly(&[(1, 0, 1)]).divide_by_t_minus_1(), Err(PolyError::NotDivisibleByTMinus1));
        // negative t powers: t^-1 - 1 = -(t-1) t^-1
        assert_eq!(thpoly(&[(-1, 0, 1), (0, 0, -1)]).divide_by_t_minus_1().unwrap(), thpoly(&[(-1, 0, -1)]));
    }

    #[test]
    fn gcd_examples() {
        let g = laurent_gcd(&hpoly(&[(2, 1), (1, -2), (0, 1)]), &hpoly(&[(1, 2), (0, -2)])).unwrap();
        assert_eq!(g, hpoly(&[(1, 1), (0, -1)]));
        let g = laurent_gcd(&hpoly(&[(2, 1), (1, 1)]), &hpoly(&[(1, 2), (0, 1)])).unwrap();
        assert_eq!(g, LaurentPoly::one(H));
        let g = laurent_gcd(&hpoly(&[(1, 1)]), &hpoly(&[(3, 1)])).unwrap();
        assert_eq!(g, LaurentPoly::one(H));
        assert_eq!(laurent_gcd(&LaurentPoly::zero(H), &LaurentPoly::zero(H)), Err(PolyError::ZeroPolynomial));
    }

    #[test]
    fn support_examples() {
        let s = support_data(&hpoly(&[(2, 1), (0, 1)])).unwrap();
        assert_eq!((s.exponents.clone(), s.d, s.m, s.k), (vec![0, 2], 2, 2, Some(2)));
        let s = support_data(&hpoly(&[(3, 1), (1, 1)])).unwrap();
        assert_eq!((s.exponents.clone(), s.d, s.m), (vec![1, 3], 3, 2));
        let s = support_data(&hpoly(&[(5, 7)])).unwrap();
        assert_eq!((s.exponents.clone(), s.d, s.m, s.k), (vec![5], 5, 1, None));
        assert_eq!(support_data(&LaurentPoly::zero(H)).unwrap_err(), PolyError::ZeroPolynomial);
    }

    #[test]
    fn display() {
        assert_eq!(hpoly(&[(2, -2)]).to_string(), "-2*h^2");
        assert_eq!(hpoly(&[(1, 1), (0, -1)]).to_string(), "h - 1");
        assert_eq!(hpoly(&[(-1, 1), (3, 1)]).to_string(), "h^3 + h^-1");
        assert_eq!(LaurentPoly::zero(H).to_string(), "0");
        let z = LaurentPoly::constant(H, &Scalar::one() + &Scalar::zeta(4)).shift(Var::H, 2).unwrap();
        assert_eq!(z.to_string(), "(1 + z4)*h^2");
        let z = LaurentPoly::constant(H, -Scalar::zeta(4)).shift(Var::H, 1).unwrap();
        assert_eq!((&hpoly(&[(2, 1)]) + &z).to_string(), "h^2 - z4*h");
    }

    #[test]
    #[should_panic(expected = "exponent overflow")]
    fn exponent_overflow_is_fatal() {
        let p = hpoly(&[(i32::MAX, 1)]);
        let _ = &p * &hpoly(&[(1, 1)]);
    }
}
