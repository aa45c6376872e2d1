//! Negative (Hirzebruch-Jung) continued fractions `a0 - 1/(a1 - 1/(a2 - …))`
//! with every `a_i ≤ -2`, their convergents, and the count `Φ = Π |a_i + 1|`.
//!
//! Everything is exact; there is no floating point in this module.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfracError {
    #[error("no terminating negative continued fraction for {0}: value must be < -1")]
    NotBelowMinusOne(String),
    #[error("coefficient list is empty")]
    Empty,
    #[error("division by zero while evaluating coefficient list at index {0}")]
    DivisionByZero(usize),
    #[error("coefficient a_{index} = {value} is not ≤ -2")]
    NonAdmissible { index: usize, value: String },
    #[error("coefficient stream ended after {got} terms, {needed} needed")]
    StreamTooShort { needed: usize, got: usize },
    #[error("slope {0} is outside (0, 1)")]
    SlopeOutOfRange(String),
    #[error("cannot parse {0:?} as a rational")]
    BadRational(String),
    #[error("cannot parse {0:?} as a coefficient list")]
    BadCoefficients(String),
}

/// A terminating negative continued fraction together with its exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegContFrac {
    coeffs: Vec<BigInt>,
    value: BigRational,
}

impl NegContFrac {
    /// Checks admissibility (`a_i ≤ -2`, nonempty) and evaluates.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self, CfracError> {
        check_admissible(&coeffs)?;
        let value = eval_cfrac(&coeffs)?;
        Ok(NegContFrac { coeffs, value })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn value(&self) -> &BigRational {
        &self.value
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn phi(&self) -> BigInt {
        phi(self)
    }
}

impl Serialize for NegContFrac {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("NegContFrac", 2)?;
        st.serialize_field("coeffs", &format_coeffs(&self.coeffs))?;
        st.serialize_field("value", &format_rational(&self.value))?;
        st.end()
    }
}

fn check_admissible(coeffs: &[BigInt]) -> Result<(), CfracError> {
    if coeffs.is_empty() {
        return Err(CfracError::Empty);
    }
    let minus_two = BigInt::from(-2);
    match coeffs.iter().position(|a| *a > minus_two) {
        Some(index) => Err(CfracError::NonAdmissible { index, value: coeffs[index].to_string() }),
        None => Ok(()),
    }
}

/// Expands `r < -1` by the ceiling algorithm: `a = -⌈-r⌉`, then continue with `1/(a - r)`.
pub fn neg_cfrac(r: &BigRational) -> Result<NegContFrac, CfracError> {
    if *r >= -BigRational::one() {
        return Err(CfracError::NotBelowMinusOne(format_rational(r)));
    }
    let mut coeffs = Vec::new();
    let mut x = r.clone();
    loop {
        let a = -(-&x).ceil();
        if x.is_integer() {
            coeffs.push(a.to_integer());
            break;
        }
        let rest = &a - &x;
        coeffs.push(a.to_integer());
        x = rest.recip();
    }
    Ok(NegContFrac { coeffs, value: r.clone() })
}

/// Back-substitution from the last coefficient.
pub fn eval_cfrac(coeffs: &[BigInt]) -> Result<BigRational, CfracError> {
    let (last, rest) = coeffs.split_last().ok_or(CfracError::Empty)?;
    let mut x = BigRational::from_integer(last.clone());
    for (i, a) in rest.iter().enumerate().rev() {
        if x.is_zero() {
            return Err(CfracError::DivisionByZero(i + 1));
        }
        x = BigRational::from_integer(a.clone()) - x.recip();
    }
    Ok(x)
}

/// Values of `[a0]`, `[a0, a1]`, …, `[a0, …, an]`, by the three-term recurrence.
pub fn convergents<I>(stream: I, n: usize) -> Result<Vec<BigRational>, CfracError>
where
    I: IntoIterator<Item = BigInt>,
{
    let coeffs: Vec<BigInt> = stream.into_iter().take(n + 1).collect();
    if coeffs.len() < n + 1 {
        return Err(CfracError::StreamTooShort { needed: n + 1, got: coeffs.len() });
    }
    check_admissible(&coeffs)?;
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (-BigInt::one(), BigInt::zero());
    let mut out = Vec::with_capacity(n + 1);
    for a in &coeffs {
        let h_next = a * &h - &h_prev;
        let k_next = a * &k - &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        out.push(BigRational::new(h.clone(), k.clone()));
    }
    Ok(out)
}

/// `Φ = |a0 + 1| |a1 + 1| ⋯ |ak + 1|`.
pub fn phi(f: &NegContFrac) -> BigInt {
    f.coeffs.iter().map(|a| (a + BigInt::one()).abs()).product()
}

/// One slope per closure component, each in lowest terms with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SlopeVector {
    pub slopes: Vec<BigRational>,
}

impl SlopeVector {
    pub fn new(slopes: Vec<BigRational>) -> Self {
        SlopeVector { slopes }
    }

    pub fn len(&self) -> usize {
        self.slopes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.slopes.is_empty()
    }

    pub fn concat(&self, other: &SlopeVector) -> SlopeVector {
        SlopeVector { slopes: self.slopes.iter().chain(&other.slopes).cloned().collect() }
    }
}

impl FromStr for SlopeVector {
    type Err = CfracError;

    /// Comma-separated slopes, each `p/q`, `n` or `n+p/q`.
    fn from_str(s: &str) -> Result<Self, CfracError> {
        let slopes = s.split(',').map(|t| parse_rational(t.trim())).collect::<Result<_, _>>()?;
        Ok(SlopeVector { slopes })
    }
}

impl fmt::Display for SlopeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.slopes.iter().map(format_rational).collect();
        f.write_str(&parts.join(","))
    }
}

/// `Φ(v) = Π Φ(-q_i/p_i)` for slopes `p_i/q_i ∈ (0, 1)`.
pub fn phi_vector(v: &SlopeVector) -> Result<BigInt, CfracError> {
    let mut total = BigInt::one();
    for s in &v.slopes {
        if !s.is_positive() || *s >= BigRational::one() {
            return Err(CfracError::SlopeOutOfRange(format_rational(s)));
        }
        total *= phi(&neg_cfrac(&-s.recip())?);
    }
    Ok(total)
}

/// Canonical `p/q` in lowest terms, always with an explicit denominator.
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `p/q`, an integer `n`, or a mixed `n+p/q`.
pub fn parse_rational(s: &str) -> Result<BigRational, CfracError> {
    let bad = || CfracError::BadRational(s.to_string());
    let simple = |t: &str| -> Result<BigRational, CfracError> {
        let t = t.trim();
        match t.split_once('/') {
            Some((p, q)) => {
                let p: BigInt = p.trim().parse().map_err(|_| bad())?;
                let q: BigInt = q.trim().parse().map_err(|_| bad())?;
                if q.is_zero() {
                    return Err(bad());
                }
                Ok(BigRational::new(p, q))
            }
            None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
        }
    };
    // a '+' after the first character separates the integer part
    match s.get(1..).and_then(|tail| tail.find('+')) {
        Some(i) => {
            let (whole, frac) = s.split_at(i + 1);
            let whole: BigInt = whole.trim().parse().map_err(|_| bad())?;
            let frac = simple(&frac[1..])?;
            if frac.is_negative() {
                return Err(bad());
            }
            Ok(BigRational::from_integer(whole) + frac)
        }
        None => simple(s),
    }
}

pub fn format_coeffs(coeffs: &[BigInt]) -> String {
    let parts: Vec<String> = coeffs.iter().map(BigInt::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// Parses `[a0,a1,…]`; the brackets are optional.
pub fn parse_coeffs(s: &str) -> Result<Vec<BigInt>, CfracError> {
    let inner = s.trim().trim_start_matches('[').trim_end_matches(']');
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| CfracError::BadCoefficients(s.to_string())))
        .collect()
}
