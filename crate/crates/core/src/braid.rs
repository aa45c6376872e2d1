//! Braid words in the Artin generators, the strand permutation and closure
//! components, crossing statistics, and Dehornoy handle reduction.
//!
//! Generators are 1-based (`s1 .. s{m-1}`), matching the usual notation.
//! Strands, positions and components are 0-based everywhere else.

use std::fmt;
use std::str::FromStr;

use num::rational::Ratio;
use num::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraidError {
    #[error("a braid needs at least 2 strands, got {0}")]
    TooFewStrands(usize),
    #[error("generator s{generator} is out of range for B{strands}")]
    GeneratorOutOfRange { generator: usize, strands: usize },
    #[error("strand counts differ: B{0} vs B{1}")]
    StrandMismatch(usize, usize),
    #[error("parameter {name} = {value} is out of range")]
    ParameterOutOfRange { name: &'static str, value: i64 },
    #[error("handle reduction gave up after {steps} steps (word length {length})")]
    BudgetExceeded { steps: u64, length: usize },
    #[error(transparent)]
    Parse(#[from] ParseBraidError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ParseErrorKind {
    MissingHeader,
    BadHeader,
    MalformedToken,
    ZeroExponent,
    GeneratorOutOfRange,
}

/// A parse failure. `position` is the byte offset of the offending token.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{kind:?} at byte {position}: {token:?}")]
pub struct ParseBraidError {
    pub position: usize,
    pub token: String,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn of(x: i64) -> Sign {
        if x < 0 {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// One Artin generator `s_g` or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub sign: Sign,
}

impl Letter {
    pub fn pos(generator: usize) -> Self {
        Letter { generator, sign: Sign::Positive }
    }

    pub fn neg(generator: usize) -> Self {
        Letter { generator, sign: Sign::Negative }
    }

    pub fn inverse(self) -> Self {
        Letter { generator: self.generator, sign: self.sign.flip() }
    }

    fn encode(self) -> i64 {
        self.generator as i64 * self.sign.value()
    }

    fn decode(x: i64) -> Self {
        Letter { generator: x.unsigned_abs() as usize, sign: Sign::of(x) }
    }
}

/// A word in the Artin generators of the braid group on `strands` strands.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, letters: Vec<Letter>) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::TooFewStrands(strands));
        }
        if let Some(bad) = letters.iter().find(|l| l.generator == 0 || l.generator >= strands) {
            return Err(BraidError::GeneratorOutOfRange { generator: bad.generator, strands });
        }
        Ok(BraidWord { strands, letters })
    }

    /// Builds a word from signed generator indices, `-2` meaning `s2^-1`.
    pub fn from_signed(strands: usize, letters: &[i64]) -> Result<Self, BraidError> {
        if let Some(&z) = letters.iter().find(|&&x| x == 0) {
            return Err(BraidError::GeneratorOutOfRange { generator: z as usize, strands });
        }
        Self::new(strands, letters.iter().map(|&x| Letter::decode(x)).collect())
    }

    pub fn identity(strands: usize) -> Result<Self, BraidError> {
        Self::new(strands, Vec::new())
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn signed(&self) -> Vec<i64> {
        self.letters.iter().map(|l| l.encode()).collect()
    }

    pub fn c_plus(&self) -> usize {
        self.letters.iter().filter(|l| l.sign == Sign::Positive).count()
    }

    pub fn c_minus(&self) -> usize {
        self.letters.len() - self.c_plus()
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.sign.value()).sum()
    }

    pub fn compose(&self, other: &BraidWord) -> Result<BraidWord, BraidError> {
        if self.strands != other.strands {
            return Err(BraidError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    /// `k`-fold repetition; negative `k` repeats the inverse.
    pub fn power(&self, k: i64) -> BraidWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let reps = k.unsigned_abs() as usize;
        let mut letters = Vec::with_capacity(base.letters.len() * reps);
        for _ in 0..reps {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// Cancels adjacent `s_g s_g^-1` pairs.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverse()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// `Δ^{2ℓ} β`.
    pub fn delta_squared_times(&self, l: i64) -> BraidWord {
        let delta = garside(self.strands).expect("strand count already validated");
        let mut letters = delta.power(2 * l).letters;
        letters.extend_from_slice(&self.letters);
        BraidWord { strands: self.strands, letters }
    }

    pub fn permutation(&self) -> ComponentPartition {
        ComponentPartition::of(self)
    }

    pub fn crossing_stats(&self) -> CrossingStats {
        CrossingStats::of(self)
    }

    pub fn handle_reduce(&self) -> Result<BraidWord, BraidError> {
        self.handle_reduce_with(&ReductionBudget::default())
    }

    pub fn handle_reduce_with(&self, budget: &ReductionBudget) -> Result<BraidWord, BraidError> {
        let mut word = self.signed();
        reduce_handles(&mut word, budget)?;
        Ok(BraidWord {
            strands: self.strands,
            letters: word.into_iter().map(Letter::decode).collect(),
        })
    }

    /// Where the word sits relative to the identity in the Dehornoy order.
    pub fn sigma_sign(&self) -> Result<SigmaSign, BraidError> {
        Ok(sigma_sign_of_reduced(&self.handle_reduce()?))
    }

    pub fn is_trivial(&self) -> Result<bool, BraidError> {
        Ok(self.sigma_sign()? == SigmaSign::Trivial)
    }

    pub fn is_sigma_positive(&self) -> Result<bool, BraidError> {
        Ok(self.sigma_sign()? == SigmaSign::Positive)
    }

    /// Sound check of `[β]_D ≥ d`: true iff `β ⪰ Δ^{2d}` or `β⁻¹ ⪰ Δ^{2d}`,
    /// each tested as "`w Δ^{-2d}` is not σ-negative".
    pub fn dehornoy_floor_at_least(&self, d: u32) -> Result<bool, BraidError> {
        let d = i64::from(d);
        for w in [self.clone(), self.inverse()] {
            let shifted = w.delta_squared_times(-d);
            if shifted.sigma_sign()? != SigmaSign::Negative {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn check_hypothesis(&self, hyperbolic_asserted: bool) -> HypothesisReport {
        HypothesisReport::of(self, hyperbolic_asserted)
    }

    /// `m` odd and the square of the strand permutation is an `m`-cycle.
    pub fn square_knot_recipe(&self) -> bool {
        if self.strands % 2 == 0 {
            return false;
        }
        let p = self.permutation().permutation;
        let squared: Vec<usize> = (0..self.strands).map(|s| p[p[s]]).collect();
        cycles_of(&squared).len() == 1
    }
}

impl fmt::Display for BraidWord {
    /// Canonical form: `B<m>` followed by maximal runs `s<g>^<e>`, with `^1` omitted.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B{}", self.strands)?;
        let mut i = 0;
        while i < self.letters.len() {
            let l = self.letters[i];
            let mut j = i + 1;
            while j < self.letters.len() && self.letters[j] == l {
                j += 1;
            }
            let e = (j - i) as i64 * l.sign.value();
            if e == 1 {
                write!(f, " s{}", l.generator)?;
            } else {
                write!(f, " s{}^{}", l.generator, e)?;
            }
            i = j;
        }
        Ok(())
    }
}

impl FromStr for BraidWord {
    type Err = BraidError;

    fn from_str(text: &str) -> Result<Self, BraidError> {
        let mut tokens = tokens_with_offsets(text);
        let (pos, header) = tokens.next().ok_or_else(|| ParseBraidError {
            position: 0,
            token: String::new(),
            kind: ParseErrorKind::MissingHeader,
        })?;
        let strands = header
            .strip_prefix('B')
            .ok_or(ParseErrorKind::MissingHeader)
            .and_then(|s| s.parse::<usize>().map_err(|_| ParseErrorKind::BadHeader))
            .and_then(|m| if m >= 2 { Ok(m) } else { Err(ParseErrorKind::BadHeader) })
            .map_err(|kind| ParseBraidError { position: pos, token: header.to_string(), kind })?;

        let mut letters = Vec::new();
        for (pos, tok) in tokens {
            let err = |kind| ParseBraidError { position: pos, token: tok.to_string(), kind };
            let body = tok.strip_prefix('s').ok_or_else(|| err(ParseErrorKind::MalformedToken))?;
            let (gen, exp) = match body.split_once('^') {
                Some((g, e)) => (g, e.parse::<i64>().map_err(|_| err(ParseErrorKind::MalformedToken))?),
                None => (body, 1),
            };
            if !gen.bytes().all(|b| b.is_ascii_digit()) || gen.is_empty() {
                return Err(err(ParseErrorKind::MalformedToken).into());
            }
            let generator: usize = gen.parse().map_err(|_| err(ParseErrorKind::MalformedToken))?;
            if exp == 0 {
                return Err(err(ParseErrorKind::ZeroExponent).into());
            }
            if generator == 0 || generator >= strands {
                return Err(err(ParseErrorKind::GeneratorOutOfRange).into());
            }
            let letter = Letter { generator, sign: Sign::of(exp) };
            letters.extend(std::iter::repeat(letter).take(exp.unsigned_abs() as usize));
        }
        Ok(BraidWord { strands, letters })
    }
}

fn tokens_with_offsets(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.split_whitespace().map(move |tok| (tok.as_ptr() as usize - text.as_ptr() as usize, tok))
}

impl Serialize for BraidWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// The Garside element `Δ = (s1 … s_{m-1})(s1 … s_{m-2}) … (s1 s2)(s1)`.
pub fn garside(m: usize) -> Result<BraidWord, BraidError> {
    if m < 2 {
        return Err(BraidError::TooFewStrands(m));
    }
    let letters = (1..m).rev().flat_map(|top| (1..=top).map(Letter::pos)).collect();
    BraidWord::new(m, letters)
}

/// `s1^{2k+1} s2^-1` in `B3`, whose closure is the `(2k+1, 2)` torus knot.
pub fn example_braid(k: i64) -> Result<BraidWord, BraidError> {
    if k < 0 {
        return Err(BraidError::ParameterOutOfRange { name: "k", value: k });
    }
    let mut letters = vec![Letter::pos(1); (2 * k + 1) as usize];
    letters.push(Letter::neg(2));
    BraidWord::new(3, letters)
}

/// Closure components as cycles of the strand permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentPartition {
    /// `permutation[s]` is the bottom position reached by the strand starting at position `s`.
    pub permutation: Vec<usize>,
    /// Component index of the strand starting at each position.
    pub component_of: Vec<usize>,
    /// Cycles, each listed from its smallest strand; components are numbered in this order.
    pub cycles: Vec<Vec<usize>>,
    pub cycle_type: Vec<usize>,
}

impl ComponentPartition {
    fn of(w: &BraidWord) -> Self {
        let mut at: Vec<usize> = (0..w.strands).collect();
        for l in &w.letters {
            at.swap(l.generator - 1, l.generator);
        }
        // `at[p]` is the strand at bottom position p; invert it.
        let mut permutation = vec![0; w.strands];
        for (p, &s) in at.iter().enumerate() {
            permutation[s] = p;
        }
        let cycles = cycles_of(&permutation);
        let mut component_of = vec![0; w.strands];
        for (c, cycle) in cycles.iter().enumerate() {
            for &s in cycle {
                component_of[s] = c;
            }
        }
        let cycle_type = cycles.iter().map(Vec::len).collect();
        ComponentPartition { permutation, component_of, cycles, cycle_type }
    }

    pub fn components(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_knot(&self) -> bool {
        self.cycles.len() == 1
    }

    pub fn is_identity(&self) -> bool {
        self.permutation.iter().enumerate().all(|(i, &p)| i == p)
    }
}

fn cycles_of(perm: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; perm.len()];
    let mut cycles = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut s = start;
        while !seen[s] {
            seen[s] = true;
            cycle.push(s);
            s = perm[s];
        }
        cycles.push(cycle);
    }
    cycles
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct ComponentCrossings {
    pub plus: u64,
    pub minus: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CrossingStats {
    pub c_plus: u64,
    pub c_minus: u64,
    /// `(c_{i,+}, c_{i,-})` for crossings between two strands of the same component.
    pub per_component: Vec<ComponentCrossings>,
    /// `d_{i,j,-}`, symmetric, zero diagonal.
    pub inter_negative: Vec<Vec<u64>>,
    /// All crossings between components `i` and `j`, symmetric.
    pub inter_total: Vec<Vec<u64>>,
    /// `d_{i,-} = Σ_{j≠i} d_{i,j,-}`.
    pub d_minus: Vec<u64>,
    /// Pairwise linking numbers; the diagonal is zero.
    pub linking: Vec<Vec<i64>>,
    /// Linking number of each component with the braid axis, i.e. its strand count.
    pub axis_linking: Vec<u64>,
}

impl CrossingStats {
    fn of(w: &BraidWord) -> Self {
        let part = w.permutation();
        let n = part.components();
        let mut per_component = vec![ComponentCrossings::default(); n];
        let mut inter_negative = vec![vec![0u64; n]; n];
        let mut inter_total = vec![vec![0u64; n]; n];
        let mut inter_signed = vec![vec![0i64; n]; n];
        let mut at: Vec<usize> = (0..w.strands).collect();
        for l in &w.letters {
            let g = l.generator - 1;
            let (a, b) = (part.component_of[at[g]], part.component_of[at[g + 1]]);
            if a == b {
                match l.sign {
                    Sign::Positive => per_component[a].plus += 1,
                    Sign::Negative => per_component[a].minus += 1,
                }
            } else {
                for (i, j) in [(a, b), (b, a)] {
                    inter_total[i][j] += 1;
                    inter_signed[i][j] += l.sign.value();
                    if l.sign == Sign::Negative {
                        inter_negative[i][j] += 1;
                    }
                }
            }
            at.swap(g, g + 1);
        }
        let linking = inter_signed
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&s| {
                        let lk = Ratio::new(s, 2);
                        assert!(lk.is_integer(), "odd signed crossing count {s} between closure components");
                        lk.to_integer()
                    })
                    .collect()
            })
            .collect();
        let d_minus = inter_negative.iter().map(|row| row.iter().sum()).collect();
        let c_plus = w.c_plus() as u64;
        CrossingStats {
            c_plus,
            c_minus: w.len() as u64 - c_plus,
            per_component,
            inter_negative,
            inter_total,
            d_minus,
            linking,
            axis_linking: part.cycle_type.iter().map(|&m| m as u64).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Hyperbolicity {
    Asserted,
    Unknown,
}

/// The three braid conditions, plus the per-component link condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub is_knot: bool,
    /// `c_+ − 2c_− − m ≥ 1`
    pub cond_tb: bool,
    /// `c_+ + c_− ≡ m + 1 (mod 2)`
    pub cond_parity: bool,
    /// `c_{i,+} − 2c_{i,−} − d_{i,−} − m_i ≥ 1` per component.
    pub per_component_cond: Vec<bool>,
    pub hyperbolicity: Hyperbolicity,
}

impl HypothesisReport {
    fn of(w: &BraidWord, hyperbolic_asserted: bool) -> Self {
        let stats = w.crossing_stats();
        let m = w.strands as i64;
        let (cp, cm) = (stats.c_plus as i64, stats.c_minus as i64);
        let per_component_cond = stats
            .per_component
            .iter()
            .zip(&stats.d_minus)
            .zip(&stats.axis_linking)
            .map(|((c, &d), &mi)| c.plus as i64 - 2 * c.minus as i64 - d as i64 - mi as i64 >= 1)
            .collect();
        HypothesisReport {
            is_knot: stats.per_component.len() == 1,
            cond_tb: cp - 2 * cm - m >= 1,
            cond_parity: (cp + cm - m - 1).is_even(),
            per_component_cond,
            hyperbolicity: if hyperbolic_asserted { Hyperbolicity::Asserted } else { Hyperbolicity::Unknown },
        }
    }

    /// Knot, tb condition and parity condition all hold (hyperbolicity is the caller's claim).
    pub fn all_conditions(&self) -> bool {
        self.is_knot && self.cond_tb && self.cond_parity
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaSign {
    Trivial,
    Positive,
    Negative,
}

/// Limits for handle reduction. The effective step budget is
/// `min(hard_cap, 64 · 2^len)`, and the working word may not grow past `max_length`.
#[derive(Debug, Clone, Copy)]
pub struct ReductionBudget {
    pub hard_cap: u64,
    pub max_length: usize,
}

impl Default for ReductionBudget {
    fn default() -> Self {
        ReductionBudget { hard_cap: 20_000_000, max_length: 1 << 20 }
    }
}

impl ReductionBudget {
    fn steps_for(&self, len: usize) -> u64 {
        let exp = 64u64.saturating_mul(1u64 << len.min(57));
        exp.min(self.hard_cap)
    }
}

/// Repeatedly reduces the handle whose closing letter is leftmost. Such a
/// handle never contains a nested σ_{i+1}-handle, so it is always permitted.
fn reduce_handles(word: &mut Vec<i64>, budget: &ReductionBudget) -> Result<(), BraidError> {
    let max_steps = budget.steps_for(word.len());
    let mut steps = 0u64;
    let mut start = 0;
    while let Some((open, close)) = leftmost_handle(word, start) {
        steps += 1;
        if steps > max_steps || word.len() > budget.max_length {
            return Err(BraidError::BudgetExceeded { steps, length: word.len() });
        }
        let e = word[open].signum();
        let i = word[open].abs();
        let mut replacement = Vec::with_capacity(close - open);
        for &x in &word[open + 1..close] {
            if x.abs() == i + 1 {
                replacement.extend([-e * (i + 1), x.signum() * i, e * (i + 1)]);
            } else {
                replacement.push(x);
            }
        }
        word.splice(open..=close, replacement);
        // Nothing before `open` changed, so no handle closes there.
        start = open;
    }
    Ok(())
}

fn leftmost_handle(word: &[i64], start: usize) -> Option<(usize, usize)> {
    for close in start.max(1)..word.len() {
        let g = word[close].abs();
        for open in (0..close).rev() {
            let h = word[open].abs();
            if h < g {
                break;
            }
            if h == g {
                if word[open] == -word[close] {
                    return Some((open, close));
                }
                break;
            }
        }
    }
    None
}

fn sigma_sign_of_reduced(w: &BraidWord) -> SigmaSign {
    match w.letters.iter().min_by_key(|l| l.generator) {
        None => SigmaSign::Trivial,
        Some(l) => match l.sign {
            Sign::Positive => SigmaSign::Positive,
            Sign::Negative => SigmaSign::Negative,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(text: &str) -> BraidWord {
        text.parse().unwrap()
    }

    #[test]
    fn parse_expands_exponents() {
        let w = b("B3 s1^3 s2^-1");
        assert_eq!(w.len(), 4);
        assert_eq!((w.c_plus(), w.c_minus()), (3, 1));
        assert_eq!(w.to_string(), "B3 s1^3 s2^-1");
        assert!(b("B2").is_empty());
    }

    #[test]
    fn parse_errors_carry_position() {
        match "B3 s3".parse::<BraidWord>() {
            Err(BraidError::Parse(e)) => {
                assert_eq!(e.kind, ParseErrorKind::GeneratorOutOfRange);
                assert_eq!(e.position, 3);
            }
            other => panic!("unexpected {other:?}"),
        }
        let kind = |t: &str| match t.parse::<BraidWord>() {
            Err(BraidError::Parse(e)) => e.kind,
            other => panic!("unexpected {other:?}"),
        };
        assert_eq!(kind("s1 s2"), ParseErrorKind::MissingHeader);
        assert_eq!(kind(""), ParseErrorKind::MissingHeader);
        assert_eq!(kind("B1"), ParseErrorKind::BadHeader);
        assert_eq!(kind("Bx s1"), ParseErrorKind::BadHeader);
        assert_eq!(kind("B3 t1"), ParseErrorKind::MalformedToken);
        assert_eq!(kind("B3 s1^"), ParseErrorKind::MalformedToken);
        assert_eq!(kind("B3 s^2"), ParseErrorKind::MalformedToken);
        assert_eq!(kind("B3 s1^0"), ParseErrorKind::ZeroExponent);
        assert_eq!(kind("B3 s0"), ParseErrorKind::GeneratorOutOfRange);
    }

    #[test]
    fn canonical_format_merges_runs() {
        assert_eq!(b("B4 s1 s1 s2^-1 s2^-2 s3").to_string(), "B4 s1^2 s2^-3 s3");
        assert_eq!(b("B2 s1 s1^-1").to_string(), "B2 s1 s1^-1");
    }

    #[test]
    fn permutation_examples() {
        let p = b("B3 s1^3 s2^-1").permutation();
        assert!(p.is_knot());
        assert_eq!(p.cycle_type, vec![3]);
        let id = b("B4").permutation();
        assert_eq!(id.components(), 4);
        assert!(id.is_identity());
        let hopf = b("B2 s1^2").permutation();
        assert!(hopf.is_identity());
        assert_eq!(hopf.components(), 2);
    }

    #[test]
    fn crossing_stats_hopf_link() {
        let s = b("B2 s1^2").crossing_stats();
        assert_eq!(s.per_component, vec![ComponentCrossings::default(); 2]);
        assert_eq!(s.inter_total[0][1], 2);
        assert_eq!(s.linking, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(s.axis_linking, vec![1, 1]);
    }

    #[test]
    fn crossing_stats_knot() {
        let s = b("B3 s1^3 s2^-1").crossing_stats();
        assert_eq!(s.per_component, vec![ComponentCrossings { plus: 3, minus: 1 }]);
        assert_eq!(s.d_minus, vec![0]);
        assert_eq!(s.axis_linking, vec![3]);
    }

    #[test]
    fn crossing_stats_charges_negative_inter_crossings() {
        let w = b("B3 s1^-2 s2^2");
        let s = w.crossing_stats();
        assert_eq!(s.per_component.len(), 3);
        assert_eq!(s.inter_negative[0][1], 2);
        assert_eq!(s.d_minus, vec![2, 2, 0]);
        assert_eq!(s.linking[0][1], -1);
        assert_eq!(s.linking[1][2], 1);
    }

    #[test]
    fn garside_words() {
        assert_eq!(garside(3).unwrap().to_string(), "B3 s1 s2 s1");
        assert_eq!(garside(2).unwrap().to_string(), "B2 s1");
        let d4 = garside(4).unwrap();
        assert_eq!(d4.len(), 6);
        assert_eq!(d4.c_minus(), 0);
        assert!(garside(1).is_err());
    }

    #[test]
    fn compose_power_inverse() {
        let s1 = b("B2 s1");
        assert_eq!(s1.power(2), b("B2 s1 s1"));
        assert_eq!(s1.power(-2), b("B2 s1^-2"));
        assert_eq!(s1.power(0), b("B2"));
        let w = b("B3 s1 s2^-1 s1");
        assert!(w.compose(&w.inverse()).unwrap().free_reduce().is_empty());
        assert!(matches!(w.compose(&s1), Err(BraidError::StrandMismatch(3, 2))));
        let beta = b("B3 s1^3 s2^-1");
        assert_eq!(beta.delta_squared_times(2).len(), beta.len() + 2 * 2 * 3);
    }

    #[test]
    fn braid_relation_is_trivial() {
        assert!(b("B3 s1 s2 s1 s2^-1 s1^-1 s2^-1").is_trivial().unwrap());
        assert!(b("B4 s1 s3 s1^-1 s3^-1").is_trivial().unwrap());
        assert!(!b("B3 s1^3 s2^-1").is_trivial().unwrap());
        assert!(!b("B3 s1 s2 s1 s2^-1 s1^-1").is_trivial().unwrap());
    }

    #[test]
    fn delta_squared_is_central() {
        for m in 2..=5 {
            let d2 = garside(m).unwrap().power(2);
            for g in 1..m {
                let s = BraidWord::new(m, vec![Letter::pos(g)]).unwrap();
                let w = d2.compose(&s).unwrap().compose(&d2.inverse()).unwrap().compose(&s.inverse()).unwrap();
                assert!(w.is_trivial().unwrap(), "m={m} g={g}");
            }
        }
    }

    #[test]
    fn handle_reduction_output_is_handle_free() {
        let w = b("B4 s2 s1 s3^-1 s2^-1 s1^-1 s3 s2 s1^-1 s2");
        let r = w.handle_reduce().unwrap();
        assert!(leftmost_handle(&r.signed(), 0).is_none());
        assert_eq!(r.exponent_sum(), w.exponent_sum());
        assert_eq!(r.permutation(), w.permutation());
    }

    #[test]
    fn sigma_signs() {
        assert_eq!(b("B3 s2 s1 s2^-1").sigma_sign().unwrap(), SigmaSign::Positive);
        assert_eq!(b("B3 s2^-1 s1^-1 s2").sigma_sign().unwrap(), SigmaSign::Negative);
        assert_eq!(b("B3").sigma_sign().unwrap(), SigmaSign::Trivial);
        // s1 s2^-1 is σ1-positive even though it has a negative letter.
        assert!(b("B3 s1 s2^-1").is_sigma_positive().unwrap());
    }

    #[test]
    fn dehornoy_floor_examples() {
        let d6 = garside(3).unwrap().power(6);
        assert!(d6.dehornoy_floor_at_least(3).unwrap());
        assert!(!d6.dehornoy_floor_at_least(4).unwrap());
        assert!(d6.inverse().dehornoy_floor_at_least(3).unwrap());
        assert!(!b("B2 s1").dehornoy_floor_at_least(1).unwrap());
        assert!(b("B2 s1").dehornoy_floor_at_least(0).unwrap());
        assert!(b("B3").dehornoy_floor_at_least(0).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let tight = ReductionBudget { hard_cap: 1, max_length: 1000 };
        let w = b("B3 s1 s2 s1 s2^-1 s1^-1 s2^-1");
        assert!(matches!(w.handle_reduce_with(&tight), Err(BraidError::BudgetExceeded { .. })));
    }

    #[test]
    fn hypothesis_examples() {
        let h = b("B3 s1^7 s2^-1").check_hypothesis(false);
        assert!(h.is_knot && h.cond_tb && h.cond_parity);
        assert_eq!(h.hyperbolicity, Hyperbolicity::Unknown);
        let h = b("B3 s1^3 s2^-1").check_hypothesis(true);
        assert!(!h.cond_tb);
        assert_eq!(h.hyperbolicity, Hyperbolicity::Asserted);
        let h = b("B2 s1^5").check_hypothesis(false);
        assert!(h.is_knot && h.cond_tb && h.cond_parity);
        assert_eq!(h.per_component_cond, vec![true]);
    }

    #[test]
    fn square_knot_recipe_examples() {
        assert!(b("B3 s1 s2").square_knot_recipe());
        assert!(!b("B4 s1 s2 s3").square_knot_recipe());
        assert!(!b("B3 s1").square_knot_recipe());
    }

    #[test]
    fn example_braids() {
        assert_eq!(example_braid(1).unwrap().to_string(), "B3 s1^3 s2^-1");
        assert_eq!(example_braid(0).unwrap().to_string(), "B3 s1 s2^-1");
        assert_eq!(example_braid(2).unwrap().to_string(), "B3 s1^5 s2^-1");
        assert!(example_braid(-1).is_err());
    }
}
