//! Partial and signed partial matchings, the three orbit models and their
//! local (type G / U±) structure.
//!
//! A label is stored by its positive part only: a sorted list of arcs
//! `source > target` with positive sources. For signed matchings the negative
//! half is implied by `μ(-a) = -μ(a)`.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<(i32, i32)>", into = "Vec<(i32, i32)>")]
pub struct Matching {
    arcs: Vec<(i32, i32)>,
}

/// Labels of type II orbits.
pub type PartialMatching = Matching;
/// Labels of type I orbits.
pub type SignedPartialMatching = Matching;

impl From<Vec<(i32, i32)>> for Matching {
    fn from(arcs: Vec<(i32, i32)>) -> Self {
        Self::from_arcs(arcs)
    }
}

impl From<Matching> for Vec<(i32, i32)> {
    fn from(m: Matching) -> Self {
        m.arcs
    }
}

impl Matching {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Build from arcs, flipping arcs with a negative source. Panics on
    /// zero entries; use [`Matching::checked`] for untrusted input.
    pub fn from_arcs<I: IntoIterator<Item = (i32, i32)>>(arcs: I) -> Self {
        let mut arcs: Vec<(i32, i32)> = arcs
            .into_iter()
            .map(|(a, b)| {
                assert!(a != 0 && b != 0, "arc entries are nonzero");
                if a < 0 {
                    (-a, -b)
                } else {
                    (a, b)
                }
            })
            .collect();
        arcs.sort_unstable();
        Self { arcs }
    }

    /// Validate against a source range `1..=sources` and target range.
    pub fn checked(arcs: Vec<(i32, i32)>, sources: usize, targets: usize, signed: bool) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidInput(msg));
        for &(a, b) in &arcs {
            if a == 0 || a.unsigned_abs() as usize > sources {
                return bad(format!("source {a} out of range 1..={sources}"));
            }
            if b == 0 || b.unsigned_abs() as usize > targets {
                return bad(format!("target {b} out of range"));
            }
            if !signed && (a < 0 || b < 0) {
                return bad("negative entries need a signed model".into());
            }
        }
        let m = Self::from_arcs(arcs);
        for w in m.arcs.windows(2) {
            if w[0].0 == w[1].0 {
                return bad(format!("source {} used twice", w[0].0));
            }
        }
        let mut t: Vec<i32> = m.arcs.iter().map(|a| a.1.abs()).collect();
        t.sort_unstable();
        if t.windows(2).any(|w| w[0] == w[1]) {
            return bad("target used twice".into());
        }
        Ok(m)
    }

    pub fn arcs(&self) -> &[(i32, i32)] {
        &self.arcs
    }

    pub fn rank(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }

    /// `μ(a)` for a signed source `a`.
    pub fn target_of(&self, a: i32) -> Option<i32> {
        let s = a.signum();
        self.arcs.iter().find(|arc| arc.0 == a.abs()).map(|arc| s * arc.1)
    }

    /// `μ⁻¹(b)` for a signed target `b`.
    pub fn source_of(&self, b: i32) -> Option<i32> {
        self.arcs.iter().find_map(|&(a, t)| {
            if t == b {
                Some(a)
            } else if t == -b {
                Some(-a)
            } else {
                None
            }
        })
    }

    pub fn sources(&self) -> impl Iterator<Item = i32> + '_ {
        self.arcs.iter().map(|a| a.0)
    }

    /// Swap the roles of sources and targets (the inverse matching).
    pub fn inverse(&self) -> Self {
        Self::from_arcs(self.arcs.iter().map(|&(a, b)| (b, a)))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.arcs.is_empty() {
            return write!(f, "∅");
        }
        let s: Vec<String> = self.arcs.iter().map(|(a, b)| format!("{a}>{b}")).collect();
        write!(f, "{}", s.join(", "))
    }
}

impl fmt::Debug for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matching({self})")
    }
}

impl FromStr for Matching {
    type Err = Error;

    /// Accepts `2>1, 1>-1`; also `2->1` or `2↦1`. Empty input, `∅` and `{}` are the empty matching.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "{}" {
            return Ok(Self::empty());
        }
        let mut arcs = Vec::new();
        for part in s.split(',') {
            let norm = part.replace("->", ">").replace('↦', ">").replace('−', "-");
            let (a, b) = norm
                .split_once('>')
                .ok_or_else(|| Error::InvalidInput(format!("arc {part:?} lacks '>'")))?;
            let parse = |x: &str| {
                x.trim()
                    .parse::<i32>()
                    .map_err(|_| Error::InvalidInput(format!("bad integer {x:?} in arc {part:?}")))
            };
            let (a, b) = (parse(a)?, parse(b)?);
            if a == 0 || b == 0 {
                return Err(Error::InvalidInput(format!("zero in arc {part:?}")));
            }
            arcs.push((a, b));
        }
        Ok(Self::from_arcs(arcs))
    }
}

/// A signed permutation of `{±1..±k}`, given by the images of `1..=k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeylElement {
    images: Vec<i32>,
}

impl WeylElement {
    pub fn identity(k: usize) -> Self {
        Self { images: (1..=k as i32).collect() }
    }

    pub fn from_images(images: Vec<i32>) -> Result<Self> {
        let k = images.len();
        let mut seen = vec![false; k + 1];
        for &x in &images {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > k || seen[a] {
                return Err(Error::InvalidInput(format!("{images:?} is not a signed permutation")));
            }
            seen[a] = true;
        }
        Ok(Self { images })
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i32] {
        &self.images
    }

    /// A permutation (no sign changes).
    pub fn is_type_a(&self) -> bool {
        self.images.iter().all(|&x| x > 0)
    }

    pub fn apply(&self, a: i32) -> i32 {
        a.signum() * self.images[a.unsigned_abs() as usize - 1]
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        Self { images: other.images.iter().map(|&x| self.apply(x)).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            images[x.unsigned_abs() as usize - 1] = x.signum() * (i as i32 + 1);
        }
        Self { images }
    }

    /// Swap `i` and `i+1`.
    pub fn transposition(k: usize, i: usize) -> Self {
        let mut w = Self::identity(k);
        w.images.swap(i - 1, i);
        w
    }

    /// `i ↦ -i`.
    pub fn sign_change(k: usize, i: usize) -> Self {
        let mut w = Self::identity(k);
        w.images[i - 1] = -w.images[i - 1];
        w
    }

    /// `k-1 ↦ -k`, `k ↦ -(k-1)`: the extra type-D reflection.
    pub fn d_reflection(k: usize) -> Self {
        let mut w = Self::identity(k);
        w.images[k - 2] = -(k as i32);
        w.images[k - 1] = -(k as i32 - 1);
        w
    }

    pub fn order(&self) -> usize {
        let id = Self::identity(self.rank());
        let mut p = self.clone();
        let mut n = 1;
        while p != id {
            p = p.compose(self);
            n += 1;
        }
        n
    }
}

/// Simple reflections. `S(i)` lives on the first (orthogonal / `L1`) side,
/// `Sp(j)` on the second. In a signed second factor `Sp(n)` is the sign
/// change of `n`. `S(m)` is the type-D reflection in model 2, and `T` is the
/// length-zero element `t_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Refl {
    S(usize),
    Sp(usize),
    T,
}

impl fmt::Display for Refl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Refl::S(i) => write!(f, "s{i}"),
            Refl::Sp(j) => write!(f, "s'{j}"),
            Refl::T => write!(f, "t"),
        }
    }
}

impl FromStr for Refl {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let num = |x: &str| x.parse::<usize>().map_err(|_| Error::InvalidInput(format!("bad generator {s:?}")));
        if s == "t" {
            Ok(Refl::T)
        } else if let Some(r) = s.strip_prefix("s'") {
            Ok(Refl::Sp(num(r)?))
        } else if let Some(r) = s.strip_prefix('s') {
            Ok(Refl::S(num(r)?))
        } else {
            Err(Error::InvalidInput(format!("bad generator {s:?}")))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Side {
    First,
    Second,
}

impl Refl {
    pub fn side(self) -> Side {
        match self {
            Refl::S(_) | Refl::T => Side::First,
            Refl::Sp(_) => Side::Second,
        }
    }
}

/// The three spherical actions.
///
/// `m` is always the rank of the first group and `n` of the second. Labels of
/// `TypeII` are `PM(m,n)`, of `TypeIM1` are `SPM(m,n)`, and of `TypeIM2` are
/// `SPM(n,m)` (sources in `1..=n`, targets in `±1..±m`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Model {
    TypeII { m: usize, n: usize },
    TypeIM1 { m: usize, n: usize },
    TypeIM2 { m: usize, n: usize },
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Model::TypeII { m, n } => write!(f, "typeII({m},{n})"),
            Model::TypeIM1 { m, n } => write!(f, "typeI-m1({m},{n})"),
            Model::TypeIM2 { m, n } => write!(f, "typeI-m2({m},{n})"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Kind {
    G,
    UPlus,
    UMinus,
}

/// Values of `σ†` and `σ_†`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DagVal {
    Zero,
    Fin(i32),
    Infinity,
}

impl DagVal {
    /// Position in the orders `0 < 1 < … < n < -n < … < -1` and
    /// `1 < … < m < ∞ < -m < … < -1`.
    fn key(self) -> i64 {
        const BIG: i64 = 1 << 20;
        match self {
            DagVal::Zero => 0,
            DagVal::Fin(k) if k > 0 => k as i64,
            DagVal::Infinity => BIG,
            DagVal::Fin(k) => 2 * BIG + k as i64,
        }
    }

    pub fn lt(self, other: Self) -> bool {
        self.key() < other.key()
    }
}

fn compare(a: DagVal, b: DagVal) -> Kind {
    match a.key().cmp(&b.key()) {
        std::cmp::Ordering::Equal => Kind::G,
        std::cmp::Ordering::Less => Kind::UMinus,
        std::cmp::Ordering::Greater => Kind::UPlus,
    }
}

/// `σ†(a)`: the image of a source, or `0`.
pub fn sigma_dagger(sigma: &Matching, a: i32) -> DagVal {
    sigma.target_of(a).map_or(DagVal::Zero, DagVal::Fin)
}

/// `σ_†(b)`: the preimage of a target, or `∞`.
pub fn sigma_lower_dagger(sigma: &Matching, b: i32) -> DagVal {
    sigma.source_of(b).map_or(DagVal::Infinity, DagVal::Fin)
}

impl Model {
    pub fn m(&self) -> usize {
        match *self {
            Model::TypeII { m, .. } | Model::TypeIM1 { m, .. } | Model::TypeIM2 { m, .. } => m,
        }
    }

    pub fn n(&self) -> usize {
        match *self {
            Model::TypeII { n, .. } | Model::TypeIM1 { n, .. } | Model::TypeIM2 { n, .. } => n,
        }
    }

    pub fn is_signed(&self) -> bool {
        !matches!(self, Model::TypeII { .. })
    }

    /// Size of the source index range.
    pub fn source_rank(&self) -> usize {
        match *self {
            Model::TypeIM2 { n, .. } => n,
            _ => self.m(),
        }
    }

    pub fn target_rank(&self) -> usize {
        match *self {
            Model::TypeIM2 { m, .. } => m,
            _ => self.n(),
        }
    }

    /// Which side acts on sources.
    fn source_side(&self) -> Side {
        match self {
            Model::TypeIM2 { .. } => Side::Second,
            _ => Side::First,
        }
    }

    /// The classified simple reflections, first side then second.
    pub fn reflections(&self) -> Vec<Refl> {
        let (m, n) = (self.m(), self.n());
        let mut out: Vec<Refl> = (1..m).map(Refl::S).collect();
        if matches!(self, Model::TypeIM2 { .. }) && m >= 2 {
            out.push(Refl::S(m));
        }
        out.extend((1..n).map(Refl::Sp));
        if matches!(self, Model::TypeIM1 { .. }) && n >= 1 {
            out.push(Refl::Sp(n));
        }
        out
    }

    pub fn has_reflection(&self, s: Refl) -> bool {
        self.reflections().contains(&s)
    }

    /// The signed permutation of `s` on its side.
    pub fn refl_element(&self, s: Refl) -> Result<WeylElement> {
        let (m, n) = (self.m(), self.n());
        match s {
            Refl::S(i) if i >= 1 && i < m => Ok(WeylElement::transposition(m, i)),
            Refl::S(i) if i == m && m >= 2 && matches!(self, Model::TypeIM2 { .. }) => Ok(WeylElement::d_reflection(m)),
            Refl::T if m >= 1 && matches!(self, Model::TypeIM2 { .. }) => Ok(WeylElement::sign_change(m, m)),
            Refl::Sp(j) if j >= 1 && j < n => Ok(WeylElement::transposition(n, j)),
            Refl::Sp(j) if j == n && n >= 1 && self.is_signed() => Ok(WeylElement::sign_change(n, n)),
            _ => Err(Error::InvalidInput(format!("{s} is not a generator for {self}"))),
        }
    }

    /// All labels: by rank, then lexicographically.
    pub fn enumerate(&self) -> Vec<Matching> {
        let (sr, tr, signed) = (self.source_rank(), self.target_rank(), self.is_signed());
        let mut out = Vec::new();
        fn rec(a: usize, sr: usize, tr: usize, signed: bool, used: &mut Vec<bool>, cur: &mut Vec<(i32, i32)>, out: &mut Vec<Matching>) {
            if a > sr {
                out.push(Matching { arcs: cur.clone() });
                return;
            }
            rec(a + 1, sr, tr, signed, used, cur, out);
            for b in 1..=tr {
                if used[b] {
                    continue;
                }
                used[b] = true;
                for t in [b as i32, -(b as i32)] {
                    if t < 0 && !signed {
                        continue;
                    }
                    cur.push((a as i32, t));
                    rec(a + 1, sr, tr, signed, used, cur, out);
                    cur.pop();
                }
                used[b] = false;
            }
        }
        rec(1, sr, tr, signed, &mut vec![false; tr + 1], &mut Vec::new(), &mut out);
        out.sort_by(|x, y| (x.rank(), &x.arcs).cmp(&(y.rank(), &y.arcs)));
        out
    }

    /// `(w1, w2) * σ`.
    pub fn star_action(&self, w1: &WeylElement, w2: &WeylElement, sigma: &Matching) -> Result<Matching> {
        if w1.rank() != self.m() || w2.rank() != self.n() {
            return Err(Error::InvalidInput(format!("ranks ({},{}) do not match {self}", w1.rank(), w2.rank())));
        }
        if !self.is_signed() && !(w1.is_type_a() && w2.is_type_a()) {
            return Err(Error::InvalidInput("sign changes act only on signed models".into()));
        }
        let (ws, wt) = match self.source_side() {
            Side::First => (w1, w2),
            Side::Second => (w2, w1),
        };
        Ok(Matching::from_arcs(sigma.arcs.iter().map(|&(a, b)| (ws.apply(a), wt.apply(b)))))
    }

    /// `s * σ` for a generator.
    pub fn act_refl(&self, s: Refl, sigma: &Matching) -> Result<Matching> {
        let w = self.refl_element(s)?;
        let (w1, w2) = match s.side() {
            Side::First => (w, WeylElement::identity(self.n())),
            Side::Second => (WeylElement::identity(self.m()), w),
        };
        self.star_action(&w1, &w2, sigma)
    }

    /// Type G, U+ or U- of `(s, σ)`.
    pub fn classify(&self, s: Refl, sigma: &Matching) -> Result<Kind> {
        if s == Refl::T {
            return Err(Error::InvalidInput("t is not classified; it acts through the Fourier gluing".into()));
        }
        if !self.has_reflection(s) {
            return Err(Error::InvalidInput(format!("{s} is not a reflection of {self}")));
        }
        let on_sources = s.side() == self.source_side();
        let (i, paired) = match s {
            Refl::S(i) | Refl::Sp(i) => {
                let k = if s.side() == Side::First { self.m() } else { self.n() };
                if i < k {
                    (i as i32, i as i32 + 1)
                } else if matches!(self, Model::TypeIM2 { .. }) {
                    (i as i32 - 1, -(i as i32))
                } else {
                    (i as i32, -(i as i32))
                }
            }
            Refl::T => unreachable!(),
        };
        Ok(if on_sources {
            compare(sigma_dagger(sigma, i), sigma_dagger(sigma, paired))
        } else {
            compare(sigma_lower_dagger(sigma, i), sigma_lower_dagger(sigma, paired))
        })
    }

    pub fn companion(&self, s: Refl, sigma: &Matching) -> Result<Matching> {
        match self.classify(s, sigma)? {
            Kind::G => Err(Error::InvalidInput(format!("({s}, {sigma}) is of type G and has no companion"))),
            _ => self.act_refl(s, sigma),
        }
    }

    /// Descent set: reflections of type G or U+.
    pub fn descents(&self, sigma: &Matching) -> Vec<Refl> {
        self.reflections()
            .into_iter()
            .filter(|&s| self.classify(s, sigma).expect("own reflection") != Kind::UMinus)
            .collect()
    }

    /// The staircase label of rank `i`: `top-i+a ↦ a` on the top `i` sources.
    pub fn staircase(&self, i: usize) -> Matching {
        let sr = self.source_rank() as i32;
        Matching::from_arcs((1..=i as i32).map(|a| (sr - i as i32 + a, a)))
    }

    /// Labels whose representative lies in the linear span of the orbit of
    /// a minimal label `σ`: each source of `β` is a source of `σ`, and its
    /// target is `σ(a')` for some source `a' ≤ a` of `σ`.
    pub fn linear_closure(&self, sigma: &Matching) -> Vec<Matching> {
        self.enumerate()
            .into_iter()
            .filter(|beta| {
                beta.arcs.iter().all(|&(a, b)| {
                    sigma.target_of(a).is_some() && sigma.arcs.iter().any(|&(a2, t)| a2 <= a && t == b)
                })
            })
            .collect()
    }

    /// Dimension of the linear span of a minimal orbit.
    pub fn linear_dimension(sigma: &Matching) -> usize {
        sigma.arcs.iter().map(|&(a, _)| sigma.arcs.iter().filter(|&&(a2, _)| a2 <= a).count()).sum()
    }
}

/// Enumerated labels of a model with classification, companions and dimensions.
#[derive(Clone, Debug)]
pub struct OrbitTable {
    pub model: Model,
    pub labels: Vec<Matching>,
    pub reflections: Vec<Refl>,
    index: HashMap<Matching, usize>,
    /// `kinds[r][i]` for reflection `r` and label `i`.
    pub kinds: Vec<Vec<Kind>>,
    /// `action[r][i]`: index of `s_r * σ_i`.
    pub action: Vec<Vec<usize>>,
    pub dims: Vec<usize>,
    pub minimal: Vec<usize>,
}

impl OrbitTable {
    pub fn new(model: Model) -> Result<Self> {
        let labels = model.enumerate();
        let index: HashMap<Matching, usize> = labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        let reflections = model.reflections();
        let mut kinds = Vec::new();
        let mut action = Vec::new();
        for &s in &reflections {
            let mut k = Vec::with_capacity(labels.len());
            let mut a = Vec::with_capacity(labels.len());
            for (i, l) in labels.iter().enumerate() {
                let kind = model.classify(s, l)?;
                let img = index[&model.act_refl(s, l)?];
                if (kind == Kind::G) != (img == i) {
                    return Err(Error::Inconsistent(format!("{s} on {l}: type {kind:?} but s*σ = {}", labels[img])));
                }
                k.push(kind);
                a.push(img);
            }
            for i in 0..labels.len() {
                let j = a[i];
                let expect = match k[i] {
                    Kind::G => Kind::G,
                    Kind::UPlus => Kind::UMinus,
                    Kind::UMinus => Kind::UPlus,
                };
                if a[j] != i || k[j] != expect {
                    return Err(Error::Inconsistent(format!("{s}: companions {} and {} do not pair up", labels[i], labels[j])));
                }
            }
            kinds.push(k);
            action.push(a);
        }
        let minimal: Vec<usize> = (0..labels.len()).filter(|&i| kinds.iter().all(|k| k[i] != Kind::UPlus)).collect();

        let mut dims: Vec<Option<usize>> = vec![None; labels.len()];
        let mut queue = VecDeque::new();
        for &i in &minimal {
            dims[i] = Some(Model::linear_dimension(&labels[i]));
            queue.push_back(i);
        }
        while let Some(i) = queue.pop_front() {
            let d = dims[i].unwrap();
            for r in 0..reflections.len() {
                let j = action[r][i];
                let dj = match kinds[r][i] {
                    Kind::G => continue,
                    Kind::UMinus => d + 1,
                    Kind::UPlus => d.checked_sub(1).ok_or_else(|| {
                        Error::Inconsistent(format!("negative dimension below {}", labels[i]))
                    })?,
                };
                match dims[j] {
                    None => {
                        dims[j] = Some(dj);
                        queue.push_back(j);
                    }
                    Some(e) if e != dj => {
                        return Err(Error::Inconsistent(format!(
                            "dimension of {} is path dependent ({e} vs {dj})",
                            labels[j]
                        )))
                    }
                    Some(_) => {}
                }
            }
        }
        let dims = dims
            .into_iter()
            .enumerate()
            .map(|(i, d)| d.ok_or_else(|| Error::Inconsistent(format!("{} unreachable from minimal orbits", labels[i]))))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self { model, labels, reflections, index, kinds, action, dims, minimal })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, sigma: &Matching) -> Option<usize> {
        self.index.get(sigma).copied()
    }

    pub fn refl_index(&self, s: Refl) -> Option<usize> {
        self.reflections.iter().position(|&r| r == s)
    }

    pub fn dimension(&self, sigma: &Matching) -> Option<usize> {
        self.index_of(sigma).map(|i| self.dims[i])
    }

    /// Reflection indices in the descent set of label `i`.
    pub fn descent_indices(&self, i: usize) -> Vec<usize> {
        (0..self.reflections.len()).filter(|&r| self.kinds[r][i] != Kind::UMinus).collect()
    }

    pub fn minimal_orbits(&self) -> Vec<Matching> {
        self.minimal.iter().map(|&i| self.labels[i].clone()).collect()
    }
}

/// `Σ_k C(s,k) C(t,k) k! (2^k if signed)`.
pub fn count_labels(s: usize, t: usize, signed: bool) -> u128 {
    fn binom(n: usize, k: usize) -> u128 {
        (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
    }
    (0..=s.min(t))
        .map(|k| {
            let fact: u128 = (1..=k as u128).product();
            binom(s, k) * binom(t, k) * fact * if signed { 1u128 << k } else { 1 }
        })
        .sum()
}

/// `SPM(m,n)_♥`: the labels `σ_{i,j}` for `i + j ≤ min(m,n)`.
///
/// Sources are the top `i+j` indices; targets `1..i` then `-n..-(n-j+1)`,
/// matched in increasing order for `1 < … < n < -n < … < -1`.
pub fn heart_orbits_type_i(m: usize, n: usize) -> Vec<Matching> {
    let mut out = Vec::new();
    for l in 0..=m.min(n) {
        for i in 0..=l {
            let j = l - i;
            let sources = (m - l + 1..=m).map(|a| a as i32);
            let targets = (1..=i as i32).chain((n - j + 1..=n).rev().map(|b| -(b as i32)));
            out.push(Matching::from_arcs(sources.zip(targets)));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lab(s: &str) -> Matching {
        s.parse().unwrap()
    }

    const M1_21: Model = Model::TypeIM1 { m: 2, n: 1 };

    #[test]
    fn parse_and_display() {
        assert_eq!(lab("2>1, 1>-1").to_string(), "1>-1, 2>1");
        assert_eq!(lab("2->1"), lab("2↦1"));
        assert_eq!(lab("∅"), Matching::empty());
        assert!("2>".parse::<Matching>().is_err());
        assert!(Matching::checked(vec![(1, 1), (2, -1)], 2, 1, true).is_err());
    }

    #[test]
    fn counts_match_closed_form() {
        assert_eq!(Model::TypeII { m: 2, n: 2 }.enumerate().len(), 7);
        assert_eq!(M1_21.enumerate().len(), 5);
        assert_eq!(Model::TypeII { m: 0, n: 3 }.enumerate(), vec![Matching::empty()]);
        for m in 0..=4 {
            for n in 0..=4 {
                assert_eq!(Model::TypeII { m, n }.enumerate().len() as u128, count_labels(m, n, false));
                assert_eq!(Model::TypeIM1 { m, n }.enumerate().len() as u128, count_labels(m, n, true));
                assert_eq!(Model::TypeIM2 { m, n }.enumerate().len() as u128, count_labels(n, m, true));
            }
        }
    }

    #[test]
    fn star_examples() {
        assert_eq!(M1_21.act_refl(Refl::S(1), &lab("2>1")).unwrap(), lab("1>1"));
        assert_eq!(M1_21.act_refl(Refl::Sp(1), &lab("1>1")).unwrap(), lab("1>-1"));
        let (e1, e2) = (WeylElement::identity(2), WeylElement::identity(1));
        assert_eq!(M1_21.star_action(&e1, &e2, &lab("2>-1")).unwrap(), lab("2>-1"));
        assert!(M1_21.star_action(&e2, &e2, &lab("2>-1")).is_err());
    }

    #[test]
    fn daggers() {
        let s = lab("2>1");
        assert_eq!(sigma_dagger(&s, 1), DagVal::Zero);
        assert_eq!(sigma_dagger(&s, 2), DagVal::Fin(1));
        let t = lab("1>-1");
        assert_eq!(sigma_dagger(&t, 1), DagVal::Fin(-1));
        for v in [DagVal::Zero, DagVal::Fin(1), DagVal::Fin(2)] {
            assert!(v.lt(DagVal::Fin(-1)));
        }
        assert_eq!(sigma_lower_dagger(&s, 1), DagVal::Fin(2));
        assert_eq!(sigma_lower_dagger(&Matching::empty(), 1), DagVal::Infinity);
    }

    #[test]
    fn classification_examples() {
        assert_eq!(M1_21.classify(Refl::S(1), &lab("2>1")).unwrap(), Kind::UMinus);
        let t22 = Model::TypeII { m: 2, n: 2 };
        assert_eq!(t22.classify(Refl::S(1), &Matching::empty()).unwrap(), Kind::G);
        assert_eq!(t22.classify(Refl::Sp(1), &Matching::empty()).unwrap(), Kind::G);
        assert!(M1_21.classify(Refl::T, &Matching::empty()).is_err());
        assert_eq!(M1_21.descents(&lab("1>-1")), vec![Refl::S(1), Refl::Sp(1)]);
        assert!(M1_21.descents(&lab("2>1")).is_empty());
        assert_eq!(M1_21.companion(Refl::S(1), &lab("2>1")).unwrap(), lab("1>1"));
        assert_eq!(M1_21.companion(Refl::Sp(1), &lab("1>1")).unwrap(), lab("1>-1"));
        assert!(M1_21.companion(Refl::S(1), &Matching::empty()).is_err());
    }

    #[test]
    fn model_two_descents() {
        let m2 = Model::TypeIM2 { m: 2, n: 1 };
        let d = |s: &str| m2.descents(&lab(s));
        assert_eq!(d("1>2"), vec![Refl::S(1)]);
        assert_eq!(d("1>-2"), vec![Refl::S(2)]);
        assert_eq!(d("1>1"), vec![]);
        assert_eq!(d("∅"), vec![Refl::S(1), Refl::S(2)]);
        assert_eq!(d("1>-1"), vec![Refl::S(1), Refl::S(2)]);
    }

    #[test]
    fn dimensions_small() {
        let t = OrbitTable::new(M1_21).unwrap();
        let d = |s: &str| t.dimension(&lab(s)).unwrap();
        assert_eq!([d("∅"), d("2>1"), d("1>1"), d("2>-1"), d("1>-1")], [0, 1, 2, 2, 3]);
        let t = OrbitTable::new(Model::TypeII { m: 2, n: 2 }).unwrap();
        assert_eq!(t.dimension(&lab("1>2, 2>1")), Some(4));
        assert_eq!(t.dimension(&Matching::empty()), Some(0));
    }

    #[test]
    fn minimal_orbits_are_staircases() {
        for m in 0..=4 {
            for n in 0..=4 {
                for model in [Model::TypeII { m, n }, Model::TypeIM1 { m, n }] {
                    let t = OrbitTable::new(model).unwrap();
                    let expect: Vec<_> = (0..=m.min(n)).map(|i| model.staircase(i)).collect();
                    let mut got = t.minimal_orbits();
                    got.sort_by_key(Matching::rank);
                    assert_eq!(got, expect, "{model}");
                    for (i, s) in expect.iter().enumerate() {
                        assert_eq!(t.dimension(s), Some(i * (i + 1) / 2));
                    }
                }
            }
        }
    }

    #[test]
    fn all_tables_build() {
        for m in 0..=4 {
            for n in 0..=4 {
                for model in [Model::TypeII { m, n }, Model::TypeIM1 { m, n }, Model::TypeIM2 { m, n }] {
                    OrbitTable::new(model).unwrap_or_else(|e| panic!("{model}: {e}"));
                }
            }
        }
    }

    #[test]
    fn heart_orbits() {
        assert_eq!(heart_orbits_type_i(1, 1), vec![Matching::empty(), lab("1>-1"), lab("1>1")]);
        let h = heart_orbits_type_i(2, 1);
        assert_eq!(h, vec![Matching::empty(), lab("2>-1"), lab("2>1")]);
        assert_eq!(heart_orbits_type_i(3, 3).len(), 10);
    }

    #[test]
    fn weyl_orders() {
        let s1 = WeylElement::transposition(3, 1);
        let s2 = WeylElement::transposition(3, 2);
        assert_eq!(s1.compose(&s2).order(), 3);
        let t = WeylElement::sign_change(2, 2);
        assert_eq!(WeylElement::transposition(2, 1).compose(&t).order(), 4);
        let d = WeylElement::d_reflection(3);
        assert_eq!(d.compose(&s1).order(), 3);
        assert_eq!(d.compose(&WeylElement::transposition(3, 2)).order(), 2);
    }

    proptest! {
        #[test]
        fn star_by_reflection_is_involution(m in 0usize..4, n in 0usize..4, which in 0usize..3, pick in 0usize..10_000) {
            let model = [Model::TypeII { m, n }, Model::TypeIM1 { m, n }, Model::TypeIM2 { m, n }][which];
            let labels = model.enumerate();
            let sigma = &labels[pick % labels.len()];
            for s in model.reflections() {
                let once = model.act_refl(s, sigma).unwrap();
                prop_assert_eq!(&model.act_refl(s, &once).unwrap(), sigma);
            }
        }

        #[test]
        fn weyl_inverse(images in Just(()).prop_flat_map(|_| (1usize..6).prop_flat_map(|k| (Just(k), Just((1..=k as i32).collect::<Vec<_>>()).prop_shuffle(), prop::collection::vec(any::<bool>(), k))))) {
            let (_, perm, signs) = images;
            let w = WeylElement::from_images(perm.iter().zip(&signs).map(|(&x, &s)| if s { -x } else { x }).collect()).unwrap();
            prop_assert_eq!(w.compose(&w.inverse()), WeylElement::identity(w.rank()));
        }
    }
}
