//! Rational surgery diagrams on braid closures, the Kirby moves used to make
//! them integral (slam-dunks, Rolfsen twists), and the homological data of
//! the presented 3-manifold and of the 4-dimensional 2-handlebody.
//!
//! A diagram keeps an explicit symmetric matrix of pairwise linking numbers.
//! It is seeded from the braid (closure components and the axis) and from the
//! combinatorics of added unknots (each links its parent once), and Rolfsen
//! twists update it in place.

use std::fmt;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};
use serde_json::{json, Value};
use thiserror::Error;

use crate::braid::{BraidError, BraidWord};
use crate::cfrac::{format_rational, neg_cfrac, CfracError, SlopeVector};
use crate::linalg::{self, IntMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("slope vector has {slopes} entries but the closure has {components} components")]
    LengthMismatch { slopes: usize, components: usize },
    #[error("component {id} has non-integral framing {framing}")]
    NonIntegral { id: usize, framing: String },
    #[error("component {id} has nonpositive slope {framing}; expansion needs r > 0")]
    NonPositiveSlope { id: usize, framing: String },
    #[error("no component with id {0}")]
    UnknownComponent(usize),
    #[error("component {0} is not an unknot (meridian, chain unknot, axis)")]
    NotUnknot(usize),
    #[error("component {0} is not a meridian linked once with a single integrally framed component")]
    NotSlamDunkable(usize),
    #[error("the closure is not a knot")]
    NotAKnot,
    #[error("parameter {name} = {value} must be at least 1")]
    ParameterOutOfRange { name: &'static str, value: i64 },
    #[error("linking matrix is singular")]
    Singular,
    #[error(transparent)]
    Braid(#[from] BraidError),
    #[error(transparent)]
    Cfrac(#[from] CfracError),
}

/// A surgery coefficient; `Infinite` is the empty filling (the component can be erased).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Framing {
    Finite(BigRational),
    Infinite,
}

impl Framing {
    pub fn integer(n: i64) -> Self {
        Framing::Finite(BigRational::from_integer(n.into()))
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Framing::Finite(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    pub fn is_integral(&self) -> bool {
        self.as_integer().is_some()
    }
}

impl fmt::Display for Framing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Framing::Finite(r) => f.write_str(&format_rational(r)),
            Framing::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Framing {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ComponentKind {
    /// Closure component `index` of the braid.
    Braid { index: usize },
    /// A meridian of component `of`.
    Meridian { of: usize },
    /// The `depth`-th unknot of a chain hanging off a braid component.
    Chain { parent: usize, depth: usize },
    /// The braid axis.
    Axis,
    /// An unknot whose parent was erased by a move.
    Unknot,
}

impl ComponentKind {
    pub fn is_unknot(&self) -> bool {
        !matches!(self, ComponentKind::Braid { .. })
    }

    fn parent(&self) -> Option<usize> {
        match *self {
            ComponentKind::Meridian { of } => Some(of),
            ComponentKind::Chain { parent, .. } => Some(parent),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SurgeryComponent {
    pub id: usize,
    #[serde(flatten)]
    pub kind: ComponentKind,
    pub framing: Framing,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurgeryDiagram {
    braid: BraidWord,
    components: Vec<SurgeryComponent>,
    /// Pairwise linking numbers by component position; zero diagonal.
    linking: Vec<Vec<i64>>,
    next_id: usize,
}

/// How a `1/n` slope is made integral. Both present the same manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ExpansionForm {
    /// `K(1/n)`, `n ≥ 2`, becomes `K(0)` with a single meridian framed `-n`.
    #[default]
    SingleMeridian,
    /// Every slope goes through the continued-fraction chain.
    Chain,
}

impl SurgeryDiagram {
    /// Dehn filling of the closure components with the given slopes.
    pub fn rational_surgery(braid: &BraidWord, v: &SlopeVector) -> Result<Self, SurgeryError> {
        let stats = braid.crossing_stats();
        let n = stats.per_component.len();
        if v.len() != n {
            return Err(SurgeryError::LengthMismatch { slopes: v.len(), components: n });
        }
        let components = v
            .slopes
            .iter()
            .enumerate()
            .map(|(i, r)| SurgeryComponent {
                id: i,
                kind: ComponentKind::Braid { index: i },
                framing: Framing::Finite(r.clone()),
            })
            .collect();
        Ok(SurgeryDiagram { braid: braid.clone(), components, linking: stats.linking, next_id: n })
    }

    pub fn braid(&self) -> &BraidWord {
        &self.braid
    }

    pub fn components(&self) -> &[SurgeryComponent] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Pairwise linking numbers, by component position.
    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }

    pub fn position(&self, id: usize) -> Result<usize, SurgeryError> {
        self.components.iter().position(|c| c.id == id).ok_or(SurgeryError::UnknownComponent(id))
    }

    pub fn component(&self, id: usize) -> Result<&SurgeryComponent, SurgeryError> {
        Ok(&self.components[self.position(id)?])
    }

    pub fn is_integral(&self) -> bool {
        self.components.iter().all(|c| c.framing.is_integral())
    }

    fn push(&mut self, kind: ComponentKind, framing: Framing, links: &[(usize, i64)]) -> usize {
        let id = self.next_id;
        self.next_id += 1;
        for row in &mut self.linking {
            row.push(0);
        }
        self.linking.push(vec![0; self.components.len() + 1]);
        let me = self.components.len();
        for &(pos, lk) in links {
            self.linking[me][pos] = lk;
            self.linking[pos][me] = lk;
        }
        self.components.push(SurgeryComponent { id, kind, framing });
        id
    }

    /// Adds a meridian of `of`, linking it once. Returns the new id.
    pub fn add_meridian(&mut self, of: usize, framing: Framing) -> Result<usize, SurgeryError> {
        let pos = self.position(of)?;
        Ok(self.push(ComponentKind::Meridian { of }, framing, &[(pos, 1)]))
    }

    /// Adds the next unknot of a chain: a meridian of `parent`.
    pub fn add_chain_unknot(&mut self, parent: usize, depth: usize, framing: Framing) -> Result<usize, SurgeryError> {
        let pos = self.position(parent)?;
        Ok(self.push(ComponentKind::Chain { parent, depth }, framing, &[(pos, 1)]))
    }

    /// Adds the braid axis, which links closure component `i` exactly `m_i` times.
    pub fn add_axis(&mut self, framing: Framing) -> usize {
        let axis = self.braid.crossing_stats().axis_linking;
        let links: Vec<(usize, i64)> = self
            .components
            .iter()
            .enumerate()
            .filter_map(|(pos, c)| match c.kind {
                ComponentKind::Braid { index } => Some((pos, axis[index] as i64)),
                _ => None,
            })
            .collect();
        self.push(ComponentKind::Axis, framing, &links)
    }

    /// Same diagram with components listed in the given order of positions.
    pub fn reordered(&self, order: &[usize]) -> SurgeryDiagram {
        assert_eq!(order.len(), self.components.len(), "order must be a permutation of positions");
        SurgeryDiagram {
            braid: self.braid.clone(),
            components: order.iter().map(|&p| self.components[p].clone()).collect(),
            linking: order.iter().map(|&i| order.iter().map(|&j| self.linking[i][j]).collect()).collect(),
            next_id: self.next_id,
        }
    }

    fn remove_position(&mut self, pos: usize) {
        let gone = self.components.remove(pos).id;
        self.linking.remove(pos);
        for row in &mut self.linking {
            row.remove(pos);
        }
        for c in &mut self.components {
            if c.kind.parent() == Some(gone) {
                c.kind = ComponentKind::Unknot;
            }
        }
    }

    /// Framed linking matrix: framings on the diagonal, linking numbers off it.
    pub fn linking_matrix(&self) -> Result<IntMatrix, SurgeryError> {
        self.components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let f = c.framing.as_integer().ok_or_else(|| SurgeryError::NonIntegral {
                    id: c.id,
                    framing: c.framing.to_string(),
                })?;
                Ok(self.linking[i]
                    .iter()
                    .enumerate()
                    .map(|(j, &lk)| if i == j { f.clone() } else { BigInt::from(lk) })
                    .collect())
            })
            .collect()
    }

    pub fn slam_dunk_expand(&self) -> Result<SurgeryDiagram, SurgeryError> {
        self.slam_dunk_expand_with(ExpansionForm::default())
    }

    /// Makes every braid-component framing integral.
    ///
    /// `1/n` with `n ≥ 2` becomes `K(0)` plus one meridian framed `-n` (or
    /// the equivalent one-term chain). Any other `r > 0` is written `r = n + p/q` with
    /// `n = ⌊r⌋`: `K` is framed `n` and carries the chain
    /// `U_0, …, U_k` framed by the negative continued fraction of `-q/p`.
    pub fn slam_dunk_expand_with(&self, form: ExpansionForm) -> Result<SurgeryDiagram, SurgeryError> {
        let mut out = self.clone();
        let mut plan = Vec::new();
        for c in &self.components {
            let r = match (&c.kind, &c.framing) {
                (ComponentKind::Braid { .. }, Framing::Finite(r)) if r.is_positive() => r.clone(),
                (ComponentKind::Braid { .. }, f) => {
                    return Err(SurgeryError::NonPositiveSlope { id: c.id, framing: f.to_string() })
                }
                (_, f) if f.is_integral() => continue,
                (_, f) => return Err(SurgeryError::NonIntegral { id: c.id, framing: f.to_string() }),
            };
            plan.push((c.id, r));
        }
        for (id, r) in plan {
            let pos = out.position(id)?;
            if r.numer().is_one() && !r.is_integer() && form == ExpansionForm::SingleMeridian {
                out.components[pos].framing = Framing::integer(0);
                out.add_meridian(id, Framing::Finite(-BigRational::from_integer(r.denom().clone())))?;
                continue;
            }
            let whole = r.floor();
            let frac = &r - &whole;
            out.components[pos].framing = Framing::Finite(whole);
            if frac.is_zero() {
                continue;
            }
            let chain = neg_cfrac(&-frac.recip())?;
            let mut parent = id;
            for (depth, a) in chain.coeffs().iter().enumerate() {
                parent = out.add_chain_unknot(parent, depth, Framing::Finite(BigRational::from_integer(a.clone())))?;
            }
        }
        Ok(out)
    }

    /// Inverse slam-dunk: erases a meridian `μ(r)` of an integrally framed
    /// component `K(n)`, which becomes `K(n - 1/r)`.
    pub fn slam_dunk_collapse(&self, meridian: usize) -> Result<SurgeryDiagram, SurgeryError> {
        let pos = self.position(meridian)?;
        let c = &self.components[pos];
        let parent = c.kind.parent().ok_or(SurgeryError::NotSlamDunkable(meridian))?;
        let ppos = self.position(parent)?;
        let only_parent = self.linking[pos].iter().enumerate().all(|(j, &lk)| {
            if j == ppos {
                lk.abs() == 1
            } else {
                lk == 0
            }
        });
        let n = self.components[ppos].framing.as_integer();
        let (true, Some(n)) = (only_parent, n) else {
            return Err(SurgeryError::NotSlamDunkable(meridian));
        };
        let n = BigRational::from_integer(n);
        let framing = match &c.framing {
            Framing::Infinite => Framing::Finite(n),
            Framing::Finite(r) if r.is_zero() => Framing::Infinite,
            Framing::Finite(r) => Framing::Finite(n - r.recip()),
        };
        let mut out = self.clone();
        out.components[ppos].framing = framing;
        out.remove_position(pos);
        Ok(out)
    }

    /// `t` Rolfsen twists about the unknot `u`: `1/r ↦ 1/r + t` on `u`,
    /// `lk(c, u)² · t` added to every other framing, and `t · lk(a, u) lk(b, u)`
    /// added to every other linking number. A `u` that ends up with the empty
    /// filling is erased. Twisting about the axis replaces `β` by `Δ^{2t} β`.
    pub fn rolfsen_twist(&self, u: usize, t: i64) -> Result<SurgeryDiagram, SurgeryError> {
        let upos = self.position(u)?;
        if !self.components[upos].kind.is_unknot() {
            return Err(SurgeryError::NotUnknot(u));
        }
        let mut out = self.clone();
        if t == 0 {
            return Ok(out);
        }
        let tq = BigRational::from_integer(t.into());
        out.components[upos].framing = match &self.components[upos].framing {
            Framing::Infinite => Framing::Finite(tq.recip()),
            Framing::Finite(r) => {
                let denom = BigRational::one() + &tq * r;
                if denom.is_zero() {
                    Framing::Infinite
                } else {
                    Framing::Finite(r / denom)
                }
            }
        };
        let lu = &self.linking[upos];
        for (i, c) in out.components.iter_mut().enumerate() {
            if i == upos {
                continue;
            }
            if let Framing::Finite(f) = &mut c.framing {
                *f += BigRational::from_integer((t * lu[i] * lu[i]).into());
            }
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                if i != j && i != upos && j != upos {
                    out.linking[i][j] += t * lu[i] * lu[j];
                }
            }
        }
        if self.components[upos].kind == ComponentKind::Axis {
            out.braid = self.braid.delta_squared_times(t);
        }
        if out.components[upos].framing == Framing::Infinite {
            out.remove_position(upos);
        }
        Ok(out)
    }

    /// First homology of the presented 3-manifold; works for rational and
    /// empty fillings. Component `i` framed `p/q` contributes the relation
    /// `p μ_i + q Σ_j lk(i, j) μ_j = 0`.
    pub fn h1(&self) -> H1Group {
        let rows: IntMatrix = self
            .components
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let (p, q) = match &c.framing {
                    Framing::Finite(r) => (r.numer().clone(), r.denom().clone()),
                    Framing::Infinite => (BigInt::one(), BigInt::zero()),
                };
                self.linking[i]
                    .iter()
                    .enumerate()
                    .map(|(j, &lk)| if i == j { p.clone() } else { &q * lk })
                    .collect()
            })
            .collect();
        H1Group::from_presentation(&rows)
    }

    /// Homology of the 3-manifold plus the intersection data of the
    /// 2-handlebody `X` on an integral diagram.
    pub fn homology(&self) -> Result<HomologyReport, SurgeryError> {
        let q = self.linking_matrix()?;
        let det = linalg::determinant(&q);
        let group = H1Group::from_presentation(&q);
        Ok(HomologyReport {
            h1_order: group.order,
            elementary_divisors: group.elementary_divisors,
            free_rank: group.free_rank,
            signature: linalg::inertia(&q).signature(),
            euler_char: 1 + self.len() as i64,
            det,
        })
    }

    pub fn to_json(&self) -> Value {
        let matrix = self.linking_matrix().ok().map(|m| matrix_json(&m));
        json!({
            "braid": self.braid.to_string(),
            "components": self.components,
            "linking": self.linking,
            "linking_matrix": matrix,
        })
    }
}

pub fn matrix_json(m: &IntMatrix) -> Value {
    Value::Array(
        m.iter()
            .map(|row| {
                Value::Array(
                    row.iter()
                        .map(|x| x.to_i64().map_or_else(|| Value::String(x.to_string()), Value::from))
                        .collect(),
                )
            })
            .collect(),
    )
}

/// `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_k` with `d_1 | d_2 | …` and every `d_i ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct H1Group {
    /// Order of the group; zero encodes an infinite group.
    pub order: BigInt,
    pub elementary_divisors: Vec<BigInt>,
    pub free_rank: usize,
}

impl H1Group {
    pub fn from_presentation(rows: &IntMatrix) -> Self {
        let diag = linalg::smith_diagonal(rows);
        let free_rank = diag.iter().filter(|d| d.is_zero()).count();
        let elementary_divisors: Vec<BigInt> = diag.into_iter().filter(|d| *d > BigInt::one()).collect();
        let order = if free_rank > 0 { BigInt::zero() } else { elementary_divisors.iter().product() };
        H1Group { order, elementary_divisors, free_rank }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    /// `|H_1(M)|`, zero when infinite.
    pub h1_order: BigInt,
    pub elementary_divisors: Vec<BigInt>,
    pub free_rank: usize,
    pub signature: i64,
    pub euler_char: i64,
    pub det: BigInt,
}

impl HomologyReport {
    pub fn to_json(&self) -> Value {
        json!({
            "h1_order": self.h1_order.to_string(),
            "elementary_divisors": self.elementary_divisors.iter().map(ToString::to_string).collect::<Vec<_>>(),
            "free_rank": self.free_rank,
            "signature": self.signature,
            "euler_char": self.euler_char,
            "det": self.det.to_string(),
        })
    }
}

/// The `V ∪ U ∪ β̂` diagram framed `(ℓ, 0, k)`, with `V` a meridian of the axis `U`.
#[derive(Debug, Clone)]
pub struct LSpaceFamily {
    pub diagram: SurgeryDiagram,
    pub homology: HomologyReport,
    /// `|H1|` of `(0, k)` on `U ∪ β̂`, of the `ℓ` diagram and of the `ℓ + 1` diagram.
    pub orders: [BigInt; 3],
    /// `orders[0] + orders[1] == orders[2]`.
    pub additivity_check: bool,
}

fn axis_knot_diagram(braid: &BraidWord, k: i64) -> Result<(SurgeryDiagram, usize), SurgeryError> {
    let slope = SlopeVector::new(vec![BigRational::from_integer(k.into())]);
    let mut d = SurgeryDiagram::rational_surgery(braid, &slope)?;
    let axis = d.add_axis(Framing::integer(0));
    Ok((d, axis))
}

fn lspace_diagram(braid: &BraidWord, k: i64, l: i64) -> Result<SurgeryDiagram, SurgeryError> {
    let (mut d, axis) = axis_knot_diagram(braid, k)?;
    d.add_meridian(axis, Framing::integer(l))?;
    Ok(d.reordered(&[2, 1, 0]))
}

pub fn lspace_family_diagram(braid: &BraidWord, k: i64, l: i64) -> Result<LSpaceFamily, SurgeryError> {
    if !braid.permutation().is_knot() {
        return Err(SurgeryError::NotAKnot);
    }
    for (name, value) in [("k", k), ("l", l)] {
        if value < 1 {
            return Err(SurgeryError::ParameterOutOfRange { name, value });
        }
    }
    let base = axis_knot_diagram(braid, k)?.0.homology()?.h1_order;
    let diagram = lspace_diagram(braid, k, l)?;
    let homology = diagram.homology()?;
    let next = lspace_diagram(braid, k, l + 1)?.homology()?.h1_order;
    let additivity_check = &base + &homology.h1_order == next;
    Ok(LSpaceFamily {
        orders: [base, homology.h1_order.clone(), next],
        diagram,
        homology,
        additivity_check,
    })
}
