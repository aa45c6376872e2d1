//! Infinite continued-fraction towers: sign tuples over eventually periodic
//! coefficient streams, their blocks of basic slices, gluing matrices and
//! the slope at infinity, and the proper-isotopy classification.

use std::fmt;
use std::str::FromStr;

use num::{BigInt, BigRational, Integer, One, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use crate::braid::{BraidWord, Sign};
use crate::cfrac::{format_rational, CfracError, SlopeVector};
use crate::legendrian::{enumerate_weinstein, validate_weinstein, LegendrianError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LimitsError {
    #[error("coefficient {value} at index {index} is not <= -2")]
    NotAdmissible { index: usize, value: i64 },
    #[error("stream has no periodic part")]
    Finite,
    #[error("stream {0} ends in -2 forever, so its limit is rational")]
    NotIrrational(String),
    #[error("k_{index} = {value} is outside 1..={max}")]
    TupleEntry { index: usize, value: i64, max: i64 },
    #[error("periodic tail is empty")]
    EmptyTail,
    #[error("cannot parse coefficient stream {0:?}")]
    Parse(String),
    #[error(transparent)]
    Legendrian(#[from] LegendrianError),
    #[error(transparent)]
    Cfrac(#[from] CfracError),
}

/// `a_0, a_1, …` given as a finite prefix followed by a repeating period.
/// An empty period makes the stream finite.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CoeffStream {
    prefix: Vec<i64>,
    period: Vec<i64>,
}

impl CoeffStream {
    pub fn new(prefix: Vec<i64>, period: Vec<i64>) -> Result<Self, LimitsError> {
        for (index, &value) in prefix.iter().chain(&period).enumerate() {
            if value > -2 {
                return Err(LimitsError::NotAdmissible { index, value });
            }
        }
        Ok(CoeffStream { prefix, period })
    }

    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    pub fn period(&self) -> &[i64] {
        &self.period
    }

    pub fn is_infinite(&self) -> bool {
        !self.period.is_empty()
    }

    /// Infinite, and not eventually constant `-2`.
    pub fn is_irrational(&self) -> bool {
        self.period.iter().any(|&a| a <= -3)
    }

    pub fn get(&self, i: usize) -> Option<i64> {
        match self.prefix.get(i) {
            Some(&a) => Some(a),
            None if self.period.is_empty() => None,
            None => Some(self.period[(i - self.prefix.len()) % self.period.len()]),
        }
    }

    /// `a_0, …, a_n`; shorter if the stream is finite.
    pub fn take(&self, n: usize) -> Vec<BigInt> {
        (0..=n).map_while(|i| self.get(i)).map(BigInt::from).collect()
    }

    /// Shortest prefix and period describing the same sequence.
    pub fn canonical(&self) -> CoeffStream {
        if self.period.is_empty() {
            return self.clone();
        }
        let p = self.period.len();
        let period_len = (1..=p)
            .find(|&d| p % d == 0 && (0..p).all(|i| self.period[i] == self.period[i % d]))
            .expect("the full period always works");
        let mut prefix = self.prefix.clone();
        let mut period = self.period[..period_len].to_vec();
        while let Some(&last) = prefix.last() {
            if last != *period.last().expect("nonempty period") {
                break;
            }
            prefix.pop();
            period.rotate_right(1);
        }
        CoeffStream { prefix, period }
    }
}

impl fmt::Display for CoeffStream {
    /// `-3,-2(-4,-2)`: prefix, then the period in parentheses.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |xs: &[i64]| xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        f.write_str(&join(&self.prefix))?;
        if !self.period.is_empty() {
            write!(f, "({})", join(&self.period))?;
        }
        Ok(())
    }
}

impl FromStr for CoeffStream {
    type Err = LimitsError;

    fn from_str(s: &str) -> Result<Self, LimitsError> {
        let bad = || LimitsError::Parse(s.to_string());
        let list = |t: &str| -> Result<Vec<i64>, LimitsError> {
            let t = t.trim().trim_end_matches(',');
            if t.is_empty() {
                return Ok(Vec::new());
            }
            t.split(',').map(|x| x.trim().parse().map_err(|_| bad())).collect()
        };
        let s = s.trim();
        let (prefix, period) = match s.find('(') {
            Some(open) => {
                let inner = s[open + 1..].strip_suffix(')').ok_or_else(bad)?;
                let period = list(inner)?;
                if period.is_empty() {
                    return Err(bad());
                }
                (list(&s[..open])?, period)
            }
            None => (list(s)?, Vec::new()),
        };
        CoeffStream::new(prefix, period)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Tail {
    /// `k_i = 1` from the end of the prefix on.
    Ones,
    /// `k_i = |a_i + 1|` from the end of the prefix on.
    Max,
    /// The listed values, repeated.
    Periodic(Vec<i64>),
}

/// An infinite tuple `k = (k_0, k_1, …)` with `1 ≤ k_i ≤ |a_i + 1|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignTuple {
    pub prefix: Vec<i64>,
    pub tail: Tail,
}

impl SignTuple {
    pub fn new(prefix: Vec<i64>, tail: Tail) -> Self {
        SignTuple { prefix, tail }
    }

    pub fn get(&self, coeffs: &CoeffStream, i: usize) -> Option<i64> {
        if let Some(&k) = self.prefix.get(i) {
            return Some(k);
        }
        Some(match &self.tail {
            Tail::Ones => 1,
            Tail::Max => menu_size(coeffs.get(i)?),
            Tail::Periodic(p) => *p.get((i - self.prefix.len()) % p.len().max(1))?,
        })
    }

    fn tail_period(&self) -> usize {
        match &self.tail {
            Tail::Periodic(p) => p.len(),
            _ => 1,
        }
    }

    /// Checks the menu bounds at every index; the tuple and the stream are
    /// jointly periodic past both prefixes, so finitely many indices suffice.
    pub fn validate(&self, coeffs: &CoeffStream) -> Result<(), LimitsError> {
        if coeffs.period.is_empty() {
            return Err(LimitsError::Finite);
        }
        if matches!(&self.tail, Tail::Periodic(p) if p.is_empty()) {
            return Err(LimitsError::EmptyTail);
        }
        let start = self.prefix.len().max(coeffs.prefix.len());
        let end = start + coeffs.period.len().lcm(&self.tail_period());
        (0..end).try_for_each(|i| check_entry(coeffs, self, i))
    }

    /// `k(n) = (k_0, …, k_n)`.
    pub fn truncate(&self, coeffs: &CoeffStream, n: usize) -> Vec<i64> {
        (0..=n).map_while(|i| self.get(coeffs, i)).collect()
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }
}

fn menu_size(a: i64) -> i64 {
    (a + 1).abs()
}

fn check_entry(coeffs: &CoeffStream, k: &SignTuple, index: usize) -> Result<(), LimitsError> {
    let a = coeffs.get(index).ok_or(LimitsError::Finite)?;
    let value = k.get(coeffs, index).ok_or(LimitsError::EmptyTail)?;
    let max = menu_size(a);
    if (1..=max).contains(&value) {
        Ok(())
    } else {
        Err(LimitsError::TupleEntry { index, value, max })
    }
}

/// A continued-fraction block: `length` basic slices, `positives` of them positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Block {
    pub length: u64,
    pub positives: u64,
}

impl Block {
    /// Block holding the given slices, in any order.
    pub fn of_signs(signs: &[Sign]) -> Block {
        Block {
            length: signs.len() as u64,
            positives: signs.iter().filter(|&&s| s == Sign::Positive).count() as u64,
        }
    }

    /// Positive slices first.
    pub fn normal_form(&self) -> Vec<Sign> {
        let mut out = vec![Sign::Positive; self.positives as usize];
        out.resize(self.length as usize, Sign::Negative);
        out
    }

    /// `L + 1` shuffle classes.
    pub fn class_count(&self) -> u64 {
        self.length + 1
    }
}

/// Blocks `0..=n`: block `i` has `|a_i + 2|` slices, `k_i − 1` of them positive.
pub fn block_decomposition(coeffs: &CoeffStream, k: &SignTuple, n: usize) -> Result<Vec<Block>, LimitsError> {
    (0..=n)
        .map(|i| {
            check_entry(coeffs, k, i)?;
            let a = coeffs.get(i).expect("checked");
            let ki = k.get(coeffs, i).expect("checked");
            Ok(Block { length: (a + 2).unsigned_abs(), positives: (ki - 1) as u64 })
        })
        .collect()
}

pub fn shuffle_normal_form(blocks: &[Block]) -> Vec<Vec<Sign>> {
    blocks.iter().map(Block::normal_form).collect()
}

/// Each stabilization contributes one basic slice of its own sign.
pub fn stabilization_to_slices(stab_signs: &[Sign]) -> Vec<Sign> {
    stab_signs.to_vec()
}

/// `φ_i = [[0, −1], [1, −a_i]]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GluingMatrix {
    pub a: i64,
}

impl GluingMatrix {
    pub fn entries(&self) -> [[i64; 2]; 2] {
        [[0, -1], [1, -self.a]]
    }

    pub fn det(&self) -> i64 {
        let [[p, q], [r, s]] = self.entries();
        p * s - q * r
    }

    /// Acts on a column `(x, y)` of slope `y / x`; the slope map is `s ↦ a − 1/s`.
    pub fn apply(&self, v: [BigInt; 2]) -> [BigInt; 2] {
        let [x, y] = v;
        let a = BigInt::from(self.a);
        [-&y, x - a * y]
    }
}

/// Slope of `φ_0 φ_1 ⋯ φ_n (0, 1)ᵀ`, which reads `a_0` at level 0.
pub fn end_slope(coeffs: &CoeffStream, n: usize) -> Result<BigRational, LimitsError> {
    let mut v = [BigInt::zero(), BigInt::one()];
    for i in (0..=n).rev() {
        let a = coeffs.get(i).ok_or(CfracError::StreamTooShort { needed: n + 1, got: i })?;
        v = GluingMatrix { a }.apply(v);
    }
    let [x, y] = v;
    if x.is_zero() {
        return Err(CfracError::DivisionByZero(0).into());
    }
    Ok(BigRational::new(y, x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum TupleSign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
    #[serde(rename = "pm")]
    PlusMinus,
}

impl fmt::Display for TupleSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TupleSign::Plus => "+",
            TupleSign::Minus => "-",
            TupleSign::PlusMinus => "pm",
        })
    }
}

/// `+` if eventually `k_i = |a_i + 1|`, `−` if eventually `k_i = 1`, else `±`.
pub fn sign_of(coeffs: &CoeffStream, k: &SignTuple) -> Result<TupleSign, LimitsError> {
    if !coeffs.is_irrational() {
        return Err(LimitsError::NotIrrational(coeffs.to_string()));
    }
    k.validate(coeffs)?;
    let start = k.prefix.len().max(coeffs.prefix.len());
    let window = start..start + coeffs.period.len().lcm(&k.tail_period());
    let at = |i| (k.get(coeffs, i).expect("validated"), coeffs.get(i).expect("infinite"));
    if window.clone().all(|i| {
        let (ki, a) = at(i);
        ki == menu_size(a)
    }) {
        Ok(TupleSign::Plus)
    } else if window.clone().all(|i| at(i).0 == 1) {
        Ok(TupleSign::Minus)
    } else {
        Ok(TupleSign::PlusMinus)
    }
}

/// Same limit slope and tuples of the same sign.
pub fn properly_isotopic(r: &CoeffStream, k: &SignTuple, r2: &CoeffStream, k2: &SignTuple) -> Result<bool, LimitsError> {
    let (s, s2) = (sign_of(r, k)?, sign_of(r2, k2)?);
    Ok(r.canonical() == r2.canonical() && s == s2)
}

/// The level-`n` truncation as a finite surgery: slope `−1 / [a_0, …, a_n]`
/// on `β̂`, with `k(n)` picking the unknot rotations. `Ok(false)` when `k(n)`
/// leaves a menu or the menu sizes disagree with the block class counts.
pub fn truncation_consistency(beta: &BraidWord, coeffs: &CoeffStream, k: &SignTuple, n: usize) -> Result<bool, LimitsError> {
    let prefix = coeffs.take(n);
    if prefix.len() != n + 1 {
        return Err(CfracError::StreamTooShort { needed: n + 1, got: prefix.len() }.into());
    }
    let Ok(blocks) = block_decomposition(coeffs, k, n) else {
        return Ok(false);
    };
    let r_n = end_slope(coeffs, n)?;
    let v = SlopeVector::new(vec![-r_n.recip()]);
    let e = enumerate_weinstein(beta, &v)?;
    let classes: Vec<u64> = blocks.iter().map(Block::class_count).collect();
    if e.menu_sizes() != classes {
        return Ok(false);
    }
    let w = e.with_tuple(&k.truncate(coeffs, n))?;
    Ok(validate_weinstein(&w))
}

pub fn blocks_json(blocks: &[Block]) -> Value {
    Value::Array(
        blocks
            .iter()
            .map(|b| {
                let signs: String = b.normal_form().iter().map(ToString::to_string).collect();
                json!({ "length": b.length, "positives": b.positives, "normal_form": signs })
            })
            .collect(),
    )
}

pub fn slope_json(r: &BigRational) -> Value {
    Value::String(format_rational(r))
}
