//! Points of the expanded base and the equivalences between them.
//!
//! A point of the base is recorded by exponent data: a [`BaseTuple`] lists the
//! order of vanishing `g_i` of each basis direction `t_i` along a discrete
//! valuation, and its height `k = Σ g_i` is the order of vanishing of
//! `t = t_1 ⋯ t_{n+1}`. Closed points of the base are recorded by
//! [`ClosedPoint`], where each entry is either zero or an abstract unit.
//!
//! Indices into tuples are 0-based throughout the crate; level `j` in the
//! documentation (1-based) is stored at index `j - 1`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Total order of vanishing of `t = xyz`; always at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Height(u64);

impl Height {
    pub fn new(k: u64) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidInput(
                "height 0 means no degeneration".to_string(),
            ));
        }
        Ok(Height(k))
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl TryFrom<u64> for Height {
    type Error = Error;

    fn try_from(k: u64) -> Result<Self> {
        Height::new(k)
    }
}

impl From<Height> for u64 {
    fn from(h: Height) -> u64 {
        h.0
    }
}

impl fmt::Display for Height {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Exponents `(g_1, …, g_{n+1})` of a point of `C[n]` over a valuation ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BaseTuple {
    exponents: Vec<u64>,
    height: u64,
}

impl BaseTuple {
    /// Builds a tuple, rejecting empty input and height zero.
    pub fn new(exponents: Vec<u64>) -> Result<Self> {
        let t = Self::new_allow_smooth(exponents)?;
        Height::new(t.height)?;
        Ok(t)
    }

    /// Like [`BaseTuple::new`] but lets a tuple of height zero (a smooth
    /// fibre) through.
    pub fn new_allow_smooth(exponents: Vec<u64>) -> Result<Self> {
        if exponents.is_empty() {
            return Err(Error::InvalidInput("empty base tuple".to_string()));
        }
        let height = exponents.iter().sum();
        Ok(BaseTuple { exponents, height })
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    pub fn height(&self) -> u64 {
        self.height
    }

    /// Number of torus factors; the tuple has `n + 1` entries.
    pub fn n(&self) -> usize {
        self.exponents.len() - 1
    }

    /// Partial sums `v_j = g_1 + … + g_j` for `j = 1..=n`. These are the
    /// tropical positions of the level-`j` Δ1-component (`a = v_j`) and of
    /// its paired Δ2-component (`b = k - v_j`).
    pub fn levels(&self) -> Vec<u64> {
        self.exponents[..self.n()]
            .iter()
            .scan(0, |acc, g| {
                *acc += g;
                Some(*acc)
            })
            .collect()
    }

    pub fn vanishing_pattern(&self) -> VanishingPattern {
        VanishingPattern {
            size: self.exponents.len(),
            vanishing: self
                .exponents
                .iter()
                .enumerate()
                .filter(|(_, g)| **g > 0)
                .map(|(i, _)| i)
                .collect(),
        }
    }

    pub fn normal_form(&self) -> Result<NormalForm> {
        normal_form(self)
    }
}

/// Which basis directions vanish at a point of the base.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VanishingPattern {
    pub size: usize,
    /// 0-based indices `i` with `t_{i+1} = 0`.
    pub vanishing: BTreeSet<usize>,
}

impl VanishingPattern {
    pub fn new(size: usize, vanishing: BTreeSet<usize>) -> Result<Self> {
        if size == 0 {
            return Err(Error::InvalidInput("empty vanishing pattern".to_string()));
        }
        if let Some(&i) = vanishing.iter().find(|&&i| i >= size) {
            return Err(Error::InvalidInput(format!(
                "index {i} out of range for pattern of size {size}"
            )));
        }
        Ok(VanishingPattern { size, vanishing })
    }

    pub fn is_vanishing(&self, i: usize) -> bool {
        self.vanishing.contains(&i)
    }

    /// Number of vanishing basis directions.
    pub fn base_codimension(&self) -> usize {
        self.vanishing.len()
    }
}

/// Canonical representative of a valued tuple: the height together with the
/// interior cut levels.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "NormalFormRepr", into = "NormalFormRepr")]
pub struct NormalForm {
    height: Height,
    cuts: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct NormalFormRepr {
    height: u64,
    cuts: Vec<u64>,
}

impl TryFrom<NormalFormRepr> for NormalForm {
    type Error = Error;

    fn try_from(r: NormalFormRepr) -> Result<Self> {
        NormalForm::new(r.height, r.cuts)
    }
}

impl From<NormalForm> for NormalFormRepr {
    fn from(nf: NormalForm) -> Self {
        NormalFormRepr {
            height: nf.height.get(),
            cuts: nf.cuts,
        }
    }
}

impl NormalForm {
    /// Cuts must be strictly increasing and lie in the open interval `(0, k)`.
    pub fn new(height: u64, cuts: Vec<u64>) -> Result<Self> {
        let height = Height::new(height)?;
        let k = height.get();
        if cuts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(format!(
                "cuts {cuts:?} are not strictly increasing"
            )));
        }
        if cuts.iter().any(|&s| s == 0 || s >= k) {
            return Err(Error::InvalidInput(format!(
                "cuts {cuts:?} must lie strictly between 0 and {k}"
            )));
        }
        Ok(NormalForm { height, cuts })
    }

    pub fn height(&self) -> u64 {
        self.height.get()
    }

    pub fn cuts(&self) -> &[u64] {
        &self.cuts
    }

    /// Number of expanded levels.
    pub fn n(&self) -> usize {
        self.cuts.len()
    }

    /// Base change of degree `factor`: multiplies the height and every cut.
    pub fn rescale(&self, factor: u64) -> Result<NormalForm> {
        if factor == 0 {
            return Err(Error::InvalidInput("rescale factor 0".to_string()));
        }
        NormalForm::new(
            self.height() * factor,
            self.cuts.iter().map(|s| s * factor).collect(),
        )
    }

    /// Both forms rescaled to the least common height.
    pub fn to_common_height(&self, other: &NormalForm) -> (NormalForm, NormalForm) {
        let l = self.height().lcm(&other.height());
        let a = self.rescale(l / self.height()).expect("positive factor");
        let b = other.rescale(l / other.height()).expect("positive factor");
        (a, b)
    }

    /// The presentation without unit entries: consecutive differences of
    /// `0 < s_1 < … < s_n < k`.
    pub fn canonical_tuple(&self) -> BaseTuple {
        let mut prev = 0;
        let mut exps = Vec::with_capacity(self.cuts.len() + 1);
        for &s in &self.cuts {
            exps.push(s - prev);
            prev = s;
        }
        exps.push(self.height() - prev);
        BaseTuple::new(exps).expect("normal form has positive height")
    }
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {{", self.height)?;
        for (i, s) in self.cuts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, "}})")
    }
}

pub fn make_base_tuple(exponents: Vec<u64>) -> Result<BaseTuple> {
    BaseTuple::new(exponents)
}

/// Distinct interior partial sums of the tuple.
pub fn normal_form(t: &BaseTuple) -> Result<NormalForm> {
    let k = t.height();
    let cuts: BTreeSet<u64> = t.levels().into_iter().filter(|&v| v > 0 && v < k).collect();
    NormalForm::new(k, cuts.into_iter().collect())
}

/// Inserts unit entries (exponent zero) so that they end up at `positions`
/// of the enlarged tuple.
pub fn standard_embed(t: &BaseTuple, positions: &BTreeSet<usize>) -> Result<BaseTuple> {
    let new_len = t.exponents().len() + positions.len();
    if let Some(&p) = positions.iter().find(|&&p| p >= new_len) {
        return Err(Error::InvalidInput(format!(
            "insertion position {p} out of range for length {new_len}"
        )));
    }
    let mut src = t.exponents().iter();
    let exps = (0..new_len)
        .map(|i| {
            if positions.contains(&i) {
                0
            } else {
                *src.next().expect("lengths agree")
            }
        })
        .collect();
    BaseTuple::new_allow_smooth(exps)
}

/// A unit value at a closed point. Integers multiply numerically; labels are
/// free symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum UnitValue {
    Int(i64),
    Label(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "EntryRepr", into = "EntryRepr")]
pub enum ClosedEntry {
    Zero,
    Unit(UnitValue),
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum EntryRepr {
    Zero { zero: bool },
    Unit { unit: UnitValue },
}

impl TryFrom<EntryRepr> for ClosedEntry {
    type Error = Error;

    fn try_from(r: EntryRepr) -> Result<Self> {
        match r {
            EntryRepr::Zero { zero: true } => Ok(ClosedEntry::Zero),
            EntryRepr::Zero { zero: false } => Err(Error::InvalidInput(
                "an entry marked zero=false must carry a unit".to_string(),
            )),
            EntryRepr::Unit {
                unit: UnitValue::Int(0),
            } => Err(Error::InvalidInput(
                "unit value 0 is not a unit; use {\"zero\": true}".to_string(),
            )),
            EntryRepr::Unit { unit } => Ok(ClosedEntry::Unit(unit)),
        }
    }
}

impl From<ClosedEntry> for EntryRepr {
    fn from(e: ClosedEntry) -> Self {
        match e {
            ClosedEntry::Zero => EntryRepr::Zero { zero: true },
            ClosedEntry::Unit(unit) => EntryRepr::Unit { unit },
        }
    }
}

impl ClosedEntry {
    pub fn is_zero(&self) -> bool {
        matches!(self, ClosedEntry::Zero)
    }
}

/// A closed point `(t_1, …, t_{n+1})` of the base with unit markers.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClosedPoint {
    pub entries: Vec<ClosedEntry>,
}

/// Product of unit markers: an integer coefficient times a monomial in the
/// symbolic labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitProduct {
    pub coefficient: i128,
    pub labels: BTreeMap<String, u32>,
}

impl ClosedPoint {
    pub fn new(entries: Vec<ClosedEntry>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::InvalidInput("empty closed point".to_string()));
        }
        if entries
            .iter()
            .any(|e| matches!(e, ClosedEntry::Unit(UnitValue::Int(0))))
        {
            return Err(Error::InvalidInput("unit value 0".to_string()));
        }
        Ok(ClosedPoint { entries })
    }

    /// Convenience constructor: `0` is a vanishing entry, anything else an
    /// integer unit.
    pub fn from_ints(values: &[i64]) -> Result<Self> {
        ClosedPoint::new(
            values
                .iter()
                .map(|&v| {
                    if v == 0 {
                        ClosedEntry::Zero
                    } else {
                        ClosedEntry::Unit(UnitValue::Int(v))
                    }
                })
                .collect(),
        )
    }

    pub fn vanishing_pattern(&self) -> VanishingPattern {
        VanishingPattern {
            size: self.entries.len(),
            vanishing: self
                .entries
                .iter()
                .enumerate()
                .filter(|(_, e)| e.is_zero())
                .map(|(i, _)| i)
                .collect(),
        }
    }

    /// Product of the non-vanishing entries.
    pub fn unit_product(&self) -> UnitProduct {
        let mut coefficient: i128 = 1;
        let mut labels = BTreeMap::new();
        for e in &self.entries {
            match e {
                ClosedEntry::Zero => {}
                ClosedEntry::Unit(UnitValue::Int(v)) => {
                    coefficient = coefficient.saturating_mul(*v as i128)
                }
                ClosedEntry::Unit(UnitValue::Label(s)) => {
                    *labels.entry(s.clone()).or_insert(0) += 1
                }
            }
        }
        UnitProduct {
            coefficient,
            labels,
        }
    }
}

/// Either kind of base point accepted by [`equivalent`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BasePoint {
    Valued(BaseTuple),
    Closed(ClosedPoint),
}

/// Equivalence in the stack of expansions.
///
/// Valued tuples are equivalent iff their normal forms agree after rescaling
/// to a common height. Closed points with a vanishing entry are equivalent iff
/// they have the same number of vanishing entries (τ-moves realign the zeros,
/// standard embeddings add or remove units and the torus is transitive on the
/// units); closed points with no vanishing entry are equivalent iff the
/// products of their entries agree.
pub fn equivalent(p: &BasePoint, q: &BasePoint) -> Result<bool> {
    match (p, q) {
        (BasePoint::Valued(p), BasePoint::Valued(q)) => {
            let (a, b) = normal_form(p)?.to_common_height(&normal_form(q)?);
            Ok(a == b)
        }
        (BasePoint::Closed(p), BasePoint::Closed(q)) => {
            let zp = p.vanishing_pattern().base_codimension();
            let zq = q.vanishing_pattern().base_codimension();
            if zp == 0 && zq == 0 {
                Ok(p.unit_product() == q.unit_product())
            } else {
                Ok(zp == zq)
            }
        }
        _ => Err(Error::InvalidComparison),
    }
}

/// The order preserving isomorphism `τ_{I,I'}` between the charts of the base
/// where the entries outside `I'` (resp. `I`) are units.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TauMove {
    size: usize,
    target: Vec<usize>,
    source: Vec<usize>,
}

impl TauMove {
    /// `target` is `I`, `source` is `I'`; both 0-based subsets of `0..size`
    /// of equal cardinality.
    pub fn new(size: usize, target: BTreeSet<usize>, source: BTreeSet<usize>) -> Result<Self> {
        if target.len() != source.len() {
            return Err(Error::InvalidInput(format!(
                "τ-move needs |I| = |I'|, got {} and {}",
                target.len(),
                source.len()
            )));
        }
        if target.iter().chain(source.iter()).any(|&i| i >= size) {
            return Err(Error::InvalidInput(format!(
                "τ-move index out of range for size {size}"
            )));
        }
        Ok(TauMove {
            size,
            target: target.into_iter().collect(),
            source: source.into_iter().collect(),
        })
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source
    }

    pub fn apply(&self, t: &ClosedPoint) -> Result<ClosedPoint> {
        if t.entries.len() != self.size {
            return Err(Error::SizeMismatch(format!(
                "τ-move on {} entries applied to a point with {}",
                self.size,
                t.entries.len()
            )));
        }
        let (src_in, src_out): (Vec<usize>, Vec<usize>) =
            (0..self.size).partition(|i| self.source.contains(i));
        if src_out.iter().any(|&i| t.entries[i].is_zero()) {
            return Err(Error::InvalidInput(
                "point lies outside the domain of the τ-move".to_string(),
            ));
        }
        let tgt_out: Vec<usize> = (0..self.size)
            .filter(|i| !self.target.contains(i))
            .collect();
        let mut entries = vec![ClosedEntry::Zero; self.size];
        for (&from, &to) in src_in.iter().zip(&self.target) {
            entries[to] = t.entries[from].clone();
        }
        for (&from, &to) in src_out.iter().zip(&tgt_out) {
            entries[to] = t.entries[from].clone();
        }
        Ok(ClosedPoint { entries })
    }
}
