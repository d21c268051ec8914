//! Exact arithmetic in cyclotomic fields `Q(ζ_N)`.
//!
//! A [`Scalar`] is a residue modulo the `N`-th cyclotomic polynomial `Φ_N`,
//! stored as `φ(N)` rational coordinates in the power basis
//! `1, ζ_N, …, ζ_N^{φ(N)-1}`. Operands living at different conductors are
//! promoted to the lcm of their conductors through `ζ_N ↦ ζ_L^{L/N}` before
//! they are combined.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
}

/// Positive divisors of `n` in ascending order.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut i = 1u32;
    while (i as u64) * (i as u64) <= n as u64 {
        if n.is_multiple_of(i) {
            small.push(i);
            if i != n / i {
                large.push(n / i);
            }
        }
        i += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

pub fn lcm(a: u32, b: u32) -> u32 {
    a.lcm(&b)
}

/// The `n`-th cyclotomic polynomial as ascending integer coefficients.
///
/// Computed by exact division of `z^n - 1` by `Φ_d` for every proper
/// divisor `d` of `n`. Results are cached process-wide.
///
/// # Panics
///
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    cyclotomic_cached(n).as_ref().clone()
}

fn cyclotomic_cached(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n >= 1, "cyclotomic polynomial index must be positive");
    static CACHE: OnceLock<RwLock<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.read().expect("cyclotomic cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in divisors(n) {
        if d < n {
            num = exact_div_monic(&num, &cyclotomic_cached(d));
        }
    }
    let p = Arc::new(num);
    cache
        .write()
        .expect("cyclotomic cache poisoned")
        .insert(n, Arc::clone(&p));
    p
}

fn exact_div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quot = vec![BigInt::zero(); num.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Euler's totient, read off as the degree of `Φ_n`.
pub fn totient(n: u32) -> usize {
    cyclotomic_cached(n).len() - 1
}

/// Reduce a dense rational polynomial in `ζ` modulo `Φ_n`.
fn reduce_mod_cyclotomic(mut v: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let phi = cyclotomic_cached(n);
    let deg = phi.len() - 1;
    while v.len() > deg {
        let c = v.pop().expect("non-empty");
        if c.is_zero() {
            continue;
        }
        // z^k = -(Φ - z^deg) z^{k-deg}
        let shift = v.len() - deg;
        for (i, p) in phi.iter().take(deg).enumerate() {
            if !p.is_zero() {
                v[shift + i] -= &c * BigRational::from_integer(p.clone());
            }
        }
    }
    v.resize(deg, BigRational::zero());
    v
}

// Dense polynomials over Q, used only for inversion.
fn qtrim(p: &mut Vec<BigRational>) {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
}

fn qdivrem(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = num.to_vec();
    qtrim(&mut rem);
    if rem.len() < den.len() {
        return (Vec::new(), rem);
    }
    let dn = den.len() - 1;
    let lead_inv = den[dn].recip();
    let mut quot = vec![BigRational::zero(); rem.len() - dn];
    for k in (0..quot.len()).rev() {
        let c = &rem[k + dn] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        for (i, d) in den.iter().enumerate() {
            rem[k + i] -= &c * d;
        }
        quot[k] = c;
    }
    qtrim(&mut rem);
    (quot, rem)
}

fn qmul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn qsub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    qtrim(&mut out);
    out
}

/// An exact element of `Q(ζ_N)`.
#[derive(Clone, Debug)]
pub struct Scalar {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

impl Scalar {
    pub fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Self {
            conductor: 1,
            coeffs: vec![q],
        }
    }

    /// `num / den` as a rational scalar.
    ///
    /// # Panics
    ///
    /// Panics if `den == 0`.
    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// The primitive root of unity `ζ_n = exp(2πi/n)`.
    pub fn zeta(n: u32) -> Self {
        Self::zeta_pow(n, 1)
    }

    /// `ζ_n^j`, any integer `j`.
    pub fn zeta_pow(n: u32, j: i64) -> Self {
        let e = j.rem_euclid(n as i64) as usize;
        let mut v = vec![BigRational::zero(); e + 1];
        v[e] = BigRational::one();
        Self::from_power_basis(n, v)
    }

    /// Build from coordinates in `1, ζ_n, ζ_n², …` (any length; reduced here).
    pub fn from_power_basis(n: u32, coeffs: Vec<BigRational>) -> Self {
        Self {
            conductor: n,
            coeffs: reduce_mod_cyclotomic(coeffs, n),
        }
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Reduced coordinates, length `φ(conductor)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The rational value, if every non-constant coordinate vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(Zero::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Re-express at conductor `m`, which must be a multiple of the current one.
    ///
    /// # Panics
    ///
    /// Panics if the current conductor does not divide `m`.
    pub fn promote(&self, m: u32) -> Scalar {
        assert!(
            m.is_multiple_of(self.conductor),
            "cannot promote conductor {} to {}",
            self.conductor,
            m
        );
        if m == self.conductor {
            return self.clone();
        }
        let step = (m / self.conductor) as usize;
        let mut v = vec![BigRational::zero(); (self.coeffs.len() - 1) * step + 1];
        for (j, c) in self.coeffs.iter().enumerate() {
            v[j * step] = c.clone();
        }
        Self::from_power_basis(m, v)
    }

    fn aligned(&self, other: &Scalar) -> (Scalar, Scalar) {
        if self.conductor == other.conductor {
            (self.clone(), other.clone())
        } else {
            let m = lcm(self.conductor, other.conductor);
            (self.promote(m), other.promote(m))
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        if self.conductor == 1 {
            return Ok(Self::from_rational(self.coeffs[0].recip()));
        }
        let modulus: Vec<BigRational> = cyclotomic_cached(self.conductor)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut s = self.coeffs.clone();
        qtrim(&mut s);
        // extended Euclid: t1 * s ≡ r1 (mod Φ)
        let (mut r0, mut r1) = (modulus, s);
        let (mut t0, mut t1) = (Vec::<BigRational>::new(), vec![BigRational::one()]);
        while !r1.is_empty() {
            let (q, r) = qdivrem(&r0, &r1);
            let t2 = qsub(&t0, &qmul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            t0 = std::mem::replace(&mut t1, t2);
        }
        // Φ irreducible, so r0 is a nonzero constant.
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        let v = t0.into_iter().map(|x| x * &c).collect();
        Ok(Self::from_power_basis(self.conductor, v))
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &other.inv()?)
    }

    /// Integer power; negative exponents require a nonzero base.
    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = Scalar::one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Least `e ≥ 1` with `self^e = 1`, if `self` is a root of unity.
    ///
    /// Roots of unity in `Q(ζ_N)` have order dividing `lcm(2, N)`, which
    /// bounds the search.
    pub fn root_of_unity_order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let bound = lcm(2, self.conductor);
        let mut p = self.clone();
        for e in 1..=bound {
            if p.is_one() {
                return Some(e);
            }
            p = &p * self;
        }
        None
    }

    /// Best-effort move to the smallest conductor whose field contains the
    /// value. Used for display.
    pub fn demote(&self) -> Scalar {
        if let Some(q) = self.as_rational() {
            return Scalar::from_rational(q);
        }
        for m in divisors(self.conductor) {
            if m == self.conductor {
                break;
            }
            if let Some(s) = self.express_in(m) {
                return s;
            }
        }
        self.clone()
    }

    // Solve for coordinates over Q(ζ_m) ⊂ Q(ζ_N) by exact Gaussian elimination.
    fn express_in(&self, m: u32) -> Option<Scalar> {
        let cols: Vec<Vec<BigRational>> = (0..totient(m))
            .map(|j| Scalar::zeta_pow(m, j as i64).promote(self.conductor).coeffs)
            .collect();
        let rows = self.coeffs.len();
        let ncols = cols.len();
        let mut mat: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = cols.iter().map(|c| c[r].clone()).collect();
                row.push(self.coeffs[r].clone());
                row
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
                continue;
            };
            mat.swap(r, p);
            let inv = mat[r][c].recip();
            for v in mat[r].iter_mut() {
                *v *= &inv;
            }
            let pivot = mat[r].clone();
            for (i, row) in mat.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, p) in row.iter_mut().zip(&pivot) {
                        *x -= &f * p;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if mat[r..].iter().any(|row| !row[ncols].is_zero()) {
            return None;
        }
        let mut sol = vec![BigRational::zero(); ncols];
        for (i, &c) in pivots.iter().enumerate() {
            sol[c] = mat[i][ncols].clone();
        }
        Some(Scalar::from_power_basis(m, sol))
    }

    /// Number of nonzero coordinates after demotion; display uses this to
    /// decide whether parentheses are needed.
    pub(crate) fn display_components(&self) -> usize {
        self.demote().coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_integer(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::from_rational(q)
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            self.coeffs == other.coeffs
        } else {
            let (a, b) = self.aligned(other);
            a.coeffs == b.coeffs
        }
    }
}

impl Eq for Scalar {}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let (mut a, b) = self.aligned(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        let (mut a, b) = self.aligned(rhs);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.conductor == 1 && rhs.conductor == 1 {
            return Scalar::from_rational(&self.coeffs[0] * &rhs.coeffs[0]);
        }
        let (a, b) = self.aligned(rhs);
        Scalar::from_power_basis(a.conductor, qmul(&a.coeffs, &b.coeffs))
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

/// Rationals print as `p/q`; roots of unity as `z{N}^{j}`, e.g. `3/2*z8^3`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = self.demote();
        if let Some(q) = s.as_rational() {
            return write!(f, "{q}");
        }
        let mut first = true;
        for (j, c) in s.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            if j == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            write!(f, "z{}", s.conductor)?;
            if j > 1 {
                write!(f, "^{j}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn cyclotomic_small_cases() {
        assert_eq!(cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_polynomial(12), ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn totients() {
        let expected = [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4];
        for (n, &phi) in (1..=12).zip(expected.iter()) {
            assert_eq!(totient(n), phi, "phi({n})");
        }
    }

    #[test]
    fn invert_zeta4() {
        let z = Scalar::zeta(4);
        assert_eq!(z.inv().unwrap(), -&z);
        assert_eq!(z.inv().unwrap(), Scalar::zeta_pow(4, 3));
    }

    #[test]
    fn rational_sum() {
        let s = &Scalar::ratio(1, 2) + &Scalar::ratio(1, 3);
        assert_eq!(s, Scalar::ratio(5, 6));
        assert_eq!(s.conductor(), 1);
    }

    #[test]
    fn zeta2_squared() {
        let z = Scalar::zeta(2);
        assert_eq!(&z * &z, Scalar::one());
        assert_eq!(z, Scalar::from_integer(-1));
    }

    #[test]
    fn divide_by_zero() {
        assert_eq!(Scalar::zero().inv(), Err(ScalarError::DivisionByZero));
        assert!(Scalar::zeta(5).try_div(&Scalar::zero()).is_err());
    }

    #[test]
    fn orders() {
        assert_eq!(Scalar::zeta(4).root_of_unity_order(), Some(4));
        assert_eq!(Scalar::from_integer(-1).root_of_unity_order(), Some(2));
        assert_eq!(Scalar::from_integer(2).root_of_unity_order(), None);
        assert_eq!(Scalar::zero().root_of_unity_order(), None);
        // -ζ₃ has order 6 even though it lives at conductor 3
        assert_eq!((-Scalar::zeta(3)).root_of_unity_order(), Some(6));
        assert_eq!((&Scalar::one() + &Scalar::zeta(4)).root_of_unity_order(), None);
    }

    #[test]
    fn zeta_powers_and_phi_vanish() {
        for n in 1..=12u32 {
            let z = Scalar::zeta(n);
            assert!(z.pow(n as i64).unwrap().is_one());
            for j in 1..n {
                assert!(!z.pow(j as i64).unwrap().is_one(), "zeta_{n}^{j}");
            }
            let phi = cyclotomic_polynomial(n);
            let mut acc = Scalar::zero();
            for (j, c) in phi.iter().enumerate() {
                let c = Scalar::from_rational(BigRational::from_integer(c.clone()));
                acc = acc + c * z.pow(j as i64).unwrap();
            }
            assert!(acc.is_zero(), "Phi_{n}(zeta_{n}) != 0");
        }
    }

    #[test]
    fn mixed_conductor_promotion() {
        // ζ₄ · ζ₃ = ζ₁₂^{3+4}
        let p = &Scalar::zeta(4) * &Scalar::zeta(3);
        assert_eq!(p.conductor(), 12);
        assert_eq!(p, Scalar::zeta_pow(12, 7));
        assert_eq!(Scalar::zeta(4).promote(8), Scalar::zeta_pow(8, 2));
    }

    #[test]
    fn demotion_for_display() {
        let z = Scalar::zeta_pow(8, 2);
        assert_eq!(z.demote().conductor(), 4);
        assert_eq!(z.to_string(), "z4");
        let w = Scalar::zeta(6);
        assert_eq!(w.demote().conductor(), 3);
        assert_eq!(w.demote(), w);
        assert_eq!(Scalar::zeta_pow(4, 2).to_string(), "-1");
        assert_eq!((&Scalar::ratio(3, 2) * &Scalar::zeta_pow(8, 3)).to_string(), "3/2*z8^3");
        assert_eq!((&Scalar::one() - &Scalar::zeta(4)).to_string(), "1 - z4");
    }
}
