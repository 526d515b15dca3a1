//! Exact truncated power series and the infinite products that serve as
//! generating functions.
//!
//! [`TruncatedSeries`] is generic over its coefficient ring; every operation
//! uses checked arithmetic so fixed-width rings report overflow instead of
//! wrapping. The crate root aliases the common instantiations.

use std::fmt;

use num_traits::{CheckedAdd, CheckedMul, CheckedSub, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::params::{check_j, FamilyParams};

/// Coefficient ring for [`TruncatedSeries`].
pub trait Coefficient:
    Clone + PartialEq + fmt::Debug + fmt::Display + Signed + CheckedAdd + CheckedSub + CheckedMul
{
}

impl<T> Coefficient for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + fmt::Display
        + Signed
        + CheckedAdd
        + CheckedSub
        + CheckedMul
{
}

/// Coefficients of `q^0, ..., q^bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries<C> {
    coeffs: Vec<C>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl<C: Coefficient> TruncatedSeries<C> {
    pub fn zero(bound: usize) -> Self {
        TruncatedSeries {
            coeffs: vec![C::zero(); bound + 1],
        }
    }

    pub fn one(bound: usize) -> Self {
        let mut s = Self::zero(bound);
        s.coeffs[0] = C::one();
        s
    }

    /// Pads with zeros or truncates to `bound`.
    pub fn from_coeffs(mut coeffs: Vec<C>, bound: usize) -> Self {
        coeffs.resize(bound + 1, C::zero());
        TruncatedSeries { coeffs }
    }

    pub fn bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, degree: usize) -> &C {
        &self.coeffs[degree]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Multiplies in place by `1 + sign q^e`.
    fn mul_binomial(&mut self, sign: Sign, e: usize) -> Result<()> {
        let bound = self.bound();
        if e > bound {
            return Ok(());
        }
        for d in (e..=bound).rev() {
            let shifted = self.coeffs[d - e].clone();
            let next = match sign {
                Sign::Plus => self.coeffs[d].checked_add(&shifted),
                Sign::Minus => self.coeffs[d].checked_sub(&shifted),
            };
            self.coeffs[d] = next.ok_or(Error::Overflow)?;
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.bound() != other.bound() {
            return Err(Error::BoundMismatch(self.bound(), other.bound()));
        }
        let bound = self.bound();
        let mut out = Self::zero(bound);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=bound - i].iter().enumerate() {
                let term = a.checked_mul(b).ok_or(Error::Overflow)?;
                out.coeffs[i + j] = out.coeffs[i + j]
                    .checked_add(&term)
                    .ok_or(Error::Overflow)?;
            }
        }
        Ok(out)
    }

    /// Multiplicative inverse; the constant term must be `1` or `-1`.
    pub fn inv(&self) -> Result<Self> {
        let c0 = self.coeffs[0].clone();
        if !(c0.is_one() || (-c0.clone()).is_one()) {
            return Err(Error::NonUnitConstant);
        }
        let bound = self.bound();
        let mut out = Self::zero(bound);
        // 1/c0 == c0 for a unit of Z
        out.coeffs[0] = c0.clone();
        for n in 1..=bound {
            let mut acc = C::zero();
            for i in 1..=n {
                let term = self.coeffs[i]
                    .checked_mul(&out.coeffs[n - i])
                    .ok_or(Error::Overflow)?;
                acc = acc.checked_add(&term).ok_or(Error::Overflow)?;
            }
            out.coeffs[n] = (-acc).checked_mul(&c0).ok_or(Error::Overflow)?;
        }
        Ok(out)
    }

    /// Coefficients converted to `i128`, when they fit.
    pub fn to_i128(&self) -> Option<Vec<i128>>
    where
        C: num_traits::ToPrimitive,
    {
        self.coeffs.iter().map(|c| c.to_i128()).collect()
    }

    pub fn to_json(&self) -> String {
        let inner: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        format!("[{}]", inner.join(","))
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,coefficient\n");
        for (d, c) in self.coeffs.iter().enumerate() {
            out.push_str(&format!("{d},{c}\n"));
        }
        out
    }
}

impl<C: Coefficient + Serialize> Serialize for TruncatedSeries<C> {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs.serialize(serializer)
    }
}

pub fn series_mul<C: Coefficient>(
    a: &TruncatedSeries<C>,
    b: &TruncatedSeries<C>,
) -> Result<TruncatedSeries<C>> {
    a.mul(b)
}

pub fn series_inv<C: Coefficient>(a: &TruncatedSeries<C>) -> Result<TruncatedSeries<C>> {
    a.inv()
}

/// `prod_{i >= 0} (1 + sign q^{a + i m})` truncated at `bound`.
///
/// `Sign::Plus` gives `(-q^a; q^m)_inf`, `Sign::Minus` gives `(q^a; q^m)_inf`.
pub fn product_factor<C: Coefficient>(
    sign: Sign,
    a: u64,
    m: u64,
    bound: usize,
) -> Result<TruncatedSeries<C>> {
    if a == 0 || m == 0 {
        return Err(Error::NonPositiveExponent(format!("a={a}, m={m}")));
    }
    let mut s = TruncatedSeries::one(bound);
    let mut e = a;
    while e as usize <= bound {
        s.mul_binomial(sign, e as usize)?;
        e += m;
    }
    Ok(s)
}

/// `numerator / 2`, checked for integrality and positivity.
fn half_exponent(name: &'static str, numerator: i64) -> Result<u64> {
    if numerator % 2 != 0 {
        return Err(Error::NonIntegralExponent(format!(
            "{name} = {numerator}/2"
        )));
    }
    match numerator / 2 {
        0 => Err(Error::DegenerateExponent(name)),
        e if e < 0 => Err(Error::NonPositiveExponent(format!("{name} = {e}"))),
        e => Ok(e as u64),
    }
}

/// `(-q^{alpha_1}, ..., -q^{alpha_lambda}; q^eta)_inf
///  (q^a, q^b, q^m; q^m)_inf / (q^eta; q^eta)_inf`
fn theta_quotient<C: Coefficient>(
    p: &FamilyParams,
    a: u64,
    b: u64,
    m: u64,
    extra_overline_eta: bool,
    bound: usize,
) -> Result<TruncatedSeries<C>> {
    let eta = p.eta();
    let mut acc = TruncatedSeries::<C>::one(bound);
    for &alpha in p.alphas() {
        acc = acc.mul(&product_factor(Sign::Plus, alpha, eta, bound)?)?;
    }
    if extra_overline_eta {
        acc = acc.mul(&product_factor(Sign::Plus, eta, eta, bound)?)?;
    }
    for e in [a, b, m] {
        acc = acc.mul(&product_factor(Sign::Minus, e, m, bound)?)?;
    }
    let euler = product_factor::<C>(Sign::Minus, eta, eta, bound)?;
    acc.mul(&euler.inv()?)
}

/// Product side of the generating function of the classical `B_j`.
///
/// Exponents `eta(r - lambda/2)`, `eta(2k - r - lambda/2 + j)` and modulus
/// `eta(2k - lambda + j)`.
pub fn gf_bj<C: Coefficient>(p: &FamilyParams, j: u8, bound: usize) -> Result<TruncatedSeries<C>> {
    check_j(j)?;
    let (eta, k, r, lambda, j) = (
        p.eta() as i64,
        p.k() as i64,
        p.r() as i64,
        p.lambda() as i64,
        j as i64,
    );
    let a = half_exponent("eta(r - lambda/2)", eta * (2 * r - lambda))?;
    let b = half_exponent(
        "eta(2k - r - lambda/2 + j)",
        eta * (4 * k - 2 * r - lambda + 2 * j),
    )?;
    let m = half_exponent("eta(2k - lambda + j)", 2 * eta * (2 * k - lambda + j))?;
    theta_quotient(p, a, b, m, false, bound)
}

/// Product side of the generating function of the overlined `A_0`.
///
/// Exponents `eta(r - lambda/2)`, `eta(2k - r - lambda/2 - 1)` and modulus
/// `eta(2k - lambda - 1)`, with the extra factor `(-q^eta; q^eta)_inf`.
pub fn gf_a0bar<C: Coefficient>(p: &FamilyParams, bound: usize) -> Result<TruncatedSeries<C>> {
    let (eta, k, r, lambda) = (
        p.eta() as i64,
        p.k() as i64,
        p.r() as i64,
        p.lambda() as i64,
    );
    let a = half_exponent("eta(r - lambda/2)", eta * (2 * r - lambda))?;
    let b = half_exponent(
        "eta(2k - r - lambda/2 - 1)",
        eta * (4 * k - 2 * r - lambda - 2),
    )?;
    let m = half_exponent("eta(2k - lambda - 1)", 2 * eta * (2 * k - lambda - 1))?;
    theta_quotient(p, a, b, m, true, bound)
}

/// `(-q^eta; q^eta)_inf` times the `B_1` product with `k` lowered by one.
pub fn gf_b0bar_factored<C: Coefficient>(
    p: &FamilyParams,
    bound: usize,
) -> Result<TruncatedSeries<C>> {
    let reduced = p.with_k(p.k() - 1)?;
    let overline = product_factor(Sign::Plus, p.eta(), p.eta(), bound)?;
    overline.mul(&gf_bj(&reduced, 1, bound)?)
}
