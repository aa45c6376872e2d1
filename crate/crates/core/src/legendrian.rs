//! Legendrian bookkeeping for Weinstein-Kirby diagrams on braid closures:
//! front-diagram `tb`/`rot`, stabilizations, unknot menus, enumeration of
//! rotation tuples, and the `c1²` / `θ` invariants.
//!
//! Stabilizations lower `tb` by one; a positive one raises `rot` by one and a
//! negative one lowers it by one.

use std::collections::BTreeSet;
use std::sync::Arc;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive};
use serde_json::{json, Value};
use thiserror::Error;

use crate::braid::BraidWord;
use crate::cfrac::{format_rational, CfracError, SlopeVector};
use crate::linalg;
use crate::surgery::{ComponentKind, Framing, HomologyReport, SurgeryDiagram, SurgeryError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LegendrianError {
    #[error("the closure has {0} components; expected a knot")]
    NotAKnot(usize),
    #[error("component {component}: tb bound {tb_lower} is below the required {needed}")]
    HypothesisViolation { component: usize, tb_lower: i64, needed: i64 },
    #[error("cannot stabilize (tb {tb}, rot {rot}) to (tb {target_tb}, rot {target_rot})")]
    Infeasible { tb: i64, rot: i64, target_tb: i64, target_rot: i64 },
    #[error("no Legendrian unknot realizes framing {0}; need f <= -2")]
    FramingTooLarge(BigInt),
    #[error("slope {0} is not positive")]
    NonPositiveSlope(String),
    #[error("linking matrix is singular")]
    Singular,
    #[error("index {index} is out of range for {count} diagrams")]
    IndexOutOfRange { index: BigInt, count: BigInt },
    #[error("tuple has {got} entries, expected {expected}")]
    TupleLength { got: usize, expected: usize },
    #[error("tuple entry {index} = {value} is outside 1..={max}")]
    TupleEntry { index: usize, value: i64, max: u64 },
    #[error("isometry group order must be at least 1, got {0}")]
    BadIsometryOrder(i64),
    #[error(transparent)]
    Surgery(#[from] SurgeryError),
    #[error(transparent)]
    Cfrac(#[from] CfracError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct LegendrianComponent {
    pub tb: i64,
    pub rot: i64,
    pub cusps: u64,
    pub stab_pos: u64,
    pub stab_neg: u64,
}

impl LegendrianComponent {
    /// `tb`/`rot` before any recorded stabilization.
    pub fn initial(&self) -> (i64, i64) {
        let (p, n) = (self.stab_pos as i64, self.stab_neg as i64);
        (self.tb + p + n, self.rot - p + n)
    }
}

/// Front of a braid-closure knot, negative crossings resolved with a cusp pair each.
pub fn front_stats(beta: &BraidWord) -> Result<LegendrianComponent, LegendrianError> {
    let stats = beta.crossing_stats();
    if stats.per_component.len() != 1 {
        return Err(LegendrianError::NotAKnot(stats.per_component.len()));
    }
    let (cp, cm, m) = (stats.c_plus as i64, stats.c_minus as i64, beta.strands() as i64);
    Ok(LegendrianComponent {
        tb: cp - 2 * cm - m,
        rot: cm.mod_floor(&2),
        cusps: 2 * (m + cm) as u64,
        ..Default::default()
    })
}

/// Per-component fronts of a braid closure. A negative crossing between two
/// components puts its cusp pair on the lower-indexed one; the other gets a
/// zigzag per such crossing so every component sits exactly at
/// `c_{i,+} − 2c_{i,−} − d_{i,−} − m_i`.
pub fn link_front_stats(beta: &BraidWord) -> Vec<LegendrianComponent> {
    let stats = beta.crossing_stats();
    stats
        .per_component
        .iter()
        .zip(&stats.d_minus)
        .zip(&stats.axis_linking)
        .map(|((c, &d), &m)| {
            let pairs = (c.minus + d + m) as i64;
            LegendrianComponent {
                tb: c.plus as i64 - c.minus as i64 - pairs,
                rot: ((c.minus + d) % 2) as i64,
                cusps: 2 * pairs as u64,
                ..Default::default()
            }
        })
        .collect()
}

pub fn stabilize_to(c: &LegendrianComponent, target_tb: i64, target_rot: i64) -> Result<LegendrianComponent, LegendrianError> {
    let s = c.tb - target_tb;
    let shift = target_rot - c.rot;
    if s < 0 || shift.abs() > s || (s - shift).is_odd() {
        return Err(LegendrianError::Infeasible { tb: c.tb, rot: c.rot, target_tb, target_rot });
    }
    Ok(LegendrianComponent {
        tb: target_tb,
        rot: target_rot,
        cusps: c.cusps + 2 * s as u64,
        stab_pos: c.stab_pos + ((s + shift) / 2) as u64,
        stab_neg: c.stab_neg + ((s - shift) / 2) as u64,
    })
}

/// Legendrian unknots with `tb = f + 1`: `rot ∈ {f+2, f+4, …, −f−2}`.
pub fn unknot_menu(f: i64) -> Result<Vec<LegendrianComponent>, LegendrianError> {
    if f > -2 {
        return Err(LegendrianError::FramingTooLarge(f.into()));
    }
    let top = LegendrianComponent { tb: -1, rot: 0, cusps: 2, ..Default::default() };
    (0..-f - 1).map(|k| stabilize_to(&top, f + 1, f + 2 + 2 * k)).collect()
}

/// One Weinstein-Kirby diagram of an enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeinsteinDiagram {
    pub base: Arc<SurgeryDiagram>,
    pub legendrian: Vec<LegendrianComponent>,
    /// `rot` of each unknot component, in diagram order.
    pub rotation_tuple: Vec<i64>,
}

impl WeinsteinDiagram {
    pub fn to_json(&self) -> Value {
        let mut v = self.base.to_json();
        let field = |f: fn(&LegendrianComponent) -> Value| Value::Array(self.legendrian.iter().map(f).collect());
        v["tb"] = field(|c| c.tb.into());
        v["rot"] = field(|c| c.rot.into());
        v["stab_pos"] = field(|c| c.stab_pos.into());
        v["stab_neg"] = field(|c| c.stab_neg.into());
        v["rotation_tuple"] = json!(self.rotation_tuple);
        v
    }
}

/// All diagrams `ξ_{v,k}`: a fixed stabilized braid closure plus every
/// choice of Legendrian unknot on the chain components.
#[derive(Debug, Clone)]
pub struct WeinsteinEnumeration {
    base: Arc<SurgeryDiagram>,
    fixed: Vec<Option<LegendrianComponent>>,
    /// Positions of the unknot components and their framings.
    slots: Vec<(usize, i64)>,
    count: BigInt,
}

pub fn enumerate_weinstein(beta: &BraidWord, v: &SlopeVector) -> Result<WeinsteinEnumeration, LegendrianError> {
    for r in &v.slopes {
        if !r.is_positive() {
            return Err(LegendrianError::NonPositiveSlope(format_rational(r)));
        }
    }
    let base = SurgeryDiagram::rational_surgery(beta, v)?.slam_dunk_expand()?;
    let fronts = link_front_stats(beta);
    let mut fixed = Vec::with_capacity(base.len());
    let mut slots = Vec::new();
    for (pos, c) in base.components().iter().enumerate() {
        let f = c.framing.as_integer().expect("expanded diagrams are integral");
        let f = f.to_i64().ok_or_else(|| LegendrianError::FramingTooLarge(f.clone()))?;
        match c.kind {
            ComponentKind::Braid { index } => {
                let front = &fronts[index];
                if front.tb < f + 1 {
                    return Err(LegendrianError::HypothesisViolation { component: index, tb_lower: front.tb, needed: f + 1 });
                }
                // smallest |rot| of the right parity; 0 for a knot meeting the parity condition
                let rot = (front.rot + front.tb - f - 1).mod_floor(&2);
                fixed.push(Some(stabilize_to(front, f + 1, rot)?));
            }
            _ => {
                if f > -2 {
                    return Err(LegendrianError::FramingTooLarge(f.into()));
                }
                fixed.push(None);
                slots.push((pos, f));
            }
        }
    }
    let count = slots.iter().map(|&(_, f)| BigInt::from(-f - 1)).product();
    Ok(WeinsteinEnumeration { base: Arc::new(base), fixed, slots, count })
}

impl WeinsteinEnumeration {
    pub fn count(&self) -> &BigInt {
        &self.count
    }

    pub fn base(&self) -> &SurgeryDiagram {
        &self.base
    }

    /// Menu size `|f + 1|` of every unknot slot, in diagram order.
    pub fn menu_sizes(&self) -> Vec<u64> {
        self.slots.iter().map(|&(_, f)| (-f - 1) as u64).collect()
    }

    /// Diagram for 1-based menu indices `k`: slot `i` framed `f_i` gets `rot = 2k_i + f_i`.
    pub fn with_tuple(&self, k: &[i64]) -> Result<WeinsteinDiagram, LegendrianError> {
        if k.len() != self.slots.len() {
            return Err(LegendrianError::TupleLength { got: k.len(), expected: self.slots.len() });
        }
        let mut legendrian: Vec<LegendrianComponent> = self.fixed.iter().map(|c| c.unwrap_or_default()).collect();
        let mut rotation_tuple = Vec::with_capacity(k.len());
        for (i, (&(pos, f), &ki)) in self.slots.iter().zip(k).enumerate() {
            let max = (-f - 1) as u64;
            if ki < 1 || ki as u64 > max {
                return Err(LegendrianError::TupleEntry { index: i, value: ki, max });
            }
            let top = LegendrianComponent { tb: -1, rot: 0, cusps: 2, ..Default::default() };
            legendrian[pos] = stabilize_to(&top, f + 1, 2 * ki + f)?;
            rotation_tuple.push(2 * ki + f);
        }
        Ok(WeinsteinDiagram { base: Arc::clone(&self.base), legendrian, rotation_tuple })
    }

    /// The `index`-th diagram in lexicographic order of rotation tuples.
    pub fn nth(&self, index: &BigInt) -> Result<WeinsteinDiagram, LegendrianError> {
        if index.is_negative() || index >= &self.count {
            return Err(LegendrianError::IndexOutOfRange { index: index.clone(), count: self.count.clone() });
        }
        let mut rest = index.clone();
        let mut k = vec![0i64; self.slots.len()];
        for (i, size) in self.menu_sizes().into_iter().enumerate().rev() {
            let (q, r) = rest.div_rem(&BigInt::from(size));
            k[i] = r.to_i64().expect("menu index fits") + 1;
            rest = q;
        }
        self.with_tuple(&k)
    }

    pub fn iter(&self) -> WeinsteinIter<'_> {
        WeinsteinIter { enumeration: self, next: Some(vec![1; self.slots.len()]) }
    }
}

/// Odometer over the menus; the last unknot varies fastest.
pub struct WeinsteinIter<'a> {
    enumeration: &'a WeinsteinEnumeration,
    next: Option<Vec<i64>>,
}

impl Iterator for WeinsteinIter<'_> {
    type Item = WeinsteinDiagram;

    fn next(&mut self) -> Option<WeinsteinDiagram> {
        let k = self.next.take()?;
        let sizes = self.enumeration.menu_sizes();
        let mut succ = k.clone();
        let mut i = succ.len();
        self.next = loop {
            if i == 0 {
                break None;
            }
            i -= 1;
            if (succ[i] as u64) < sizes[i] {
                succ[i] += 1;
                break Some(succ);
            }
            succ[i] = 1;
        };
        Some(self.enumeration.with_tuple(&k).expect("odometer stays inside the menus"))
    }
}

pub fn validate_weinstein(w: &WeinsteinDiagram) -> bool {
    w.legendrian.len() == w.base.len()
        && w.base
            .components()
            .iter()
            .zip(&w.legendrian)
            .all(|(c, l)| c.framing == Framing::integer(l.tb - 1))
}

/// `⟨c1, h_i⟩` for each 2-handle: its attaching circle's rotation number.
pub fn c1_pairing(w: &WeinsteinDiagram) -> Vec<i64> {
    w.legendrian.iter().map(|c| c.rot).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThetaReport {
    pub c1_squared: BigRational,
    pub chi: i64,
    pub sigma: i64,
    pub theta: BigRational,
    /// `θ` classifies plane fields up to homotopy only when `|H1| = 1`.
    pub complete_invariant: bool,
}

impl ThetaReport {
    pub fn to_json(&self) -> Value {
        json!({
            "c1_squared": format_rational(&self.c1_squared),
            "chi": self.chi,
            "sigma": self.sigma,
            "theta": format_rational(&self.theta),
            "complete_invariant": self.complete_invariant,
        })
    }
}

/// `c1² = rᵀ Q⁻¹ r` with `r` the rotation vector.
pub fn c1_squared(base: &SurgeryDiagram, rot: &[i64]) -> Result<BigRational, LegendrianError> {
    let q = base.linking_matrix()?;
    let r: Vec<BigInt> = rot.iter().map(|&x| BigInt::from(x)).collect();
    let x = linalg::solve(&q, &r).ok_or(LegendrianError::Singular)?;
    Ok(r.iter().zip(&x).map(|(a, b)| b * BigRational::from_integer(a.clone())).sum())
}

pub fn theta(w: &WeinsteinDiagram) -> Result<ThetaReport, LegendrianError> {
    let c1_squared = c1_squared(&w.base, &c1_pairing(w))?;
    let HomologyReport { det, euler_char, signature, .. } = w.base.homology()?;
    let theta = &c1_squared - BigRational::from_integer((2 * euler_char + 3 * signature).into());
    Ok(ThetaReport { c1_squared, chi: euler_char, sigma: signature, theta, complete_invariant: det.abs().is_one() })
}

/// Number of distinct rotation tuples.
pub fn isotopy_class_count(ws: &[WeinsteinDiagram]) -> usize {
    ws.iter().map(|w| &w.rotation_tuple).collect::<BTreeSet<_>>().len()
}

/// `⌈count / c⌉` for an isometry group of order `c`.
pub fn contactomorphism_lower_bound(count: &BigInt, c: i64) -> Result<BigInt, LegendrianError> {
    if c < 1 {
        return Err(LegendrianError::BadIsometryOrder(c));
    }
    Ok(count.div_ceil(&BigInt::from(c)))
}
