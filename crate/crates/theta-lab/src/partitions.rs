//! Partitions, decorated bipartitions and the component-group bookkeeping
//! behind relevant pairs and relevant quintuples.

use std::collections::BTreeMap;
use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result};

/// A partition, stored weakly decreasing with zeros dropped.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl From<Vec<u32>> for Partition {
    fn from(v: Vec<u32>) -> Self {
        Self::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Self {
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Self { parts }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn total(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn multiplicity(&self, k: u32) -> usize {
        self.parts.iter().filter(|&&p| p == k).count()
    }

    /// Distinct parts, increasing.
    pub fn distinct_parts(&self) -> Vec<u32> {
        let mut d = self.parts.clone();
        d.dedup();
        d.reverse();
        d
    }

    /// Every even part has even multiplicity.
    pub fn is_orthogonal(&self) -> bool {
        self.distinct_parts().iter().all(|&k| k % 2 == 1 || self.multiplicity(k) % 2 == 0)
    }

    /// Every odd part has even multiplicity.
    pub fn is_symplectic(&self) -> bool {
        self.distinct_parts().iter().all(|&k| k % 2 == 0 || self.multiplicity(k) % 2 == 0)
    }

    pub fn transpose(&self) -> Self {
        let Some(&first) = self.parts.first() else {
            return Self::default();
        };
        Self::new((1..=first).map(|i| self.parts.iter().filter(|&&p| p >= i).count() as u32).collect())
    }

    /// All partitions of `k`, in reverse lexicographic order (`[k]` first).
    pub fn all(k: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, k, &mut Vec::new(), &mut out);
        out
    }

    pub fn orthogonal(k: u32) -> Vec<Partition> {
        Self::all(k).into_iter().filter(Partition::is_orthogonal).collect()
    }

    pub fn symplectic(k: u32) -> Vec<Partition> {
        Self::all(k).into_iter().filter(Partition::is_symplectic).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.parts.iter().map(u32::to_string).collect();
        write!(f, "[{}]", s.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Decoration {
    None,
    Plus,
    Minus,
}

impl Decoration {
    fn symbol(self) -> &'static str {
        match self {
            Decoration::None => "0",
            Decoration::Plus => "+",
            Decoration::Minus => "-",
        }
    }
}

/// One of `(k+1,k)`, `(k,k+1)` (undecorated, `k >= 0`) or `(k,k)^±` (`k >= 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DecoratedPair {
    pub x: u32,
    pub y: u32,
    pub decoration: Decoration,
}

impl DecoratedPair {
    pub fn new(x: u32, y: u32, decoration: Decoration) -> Result<Self> {
        let ok = match decoration {
            Decoration::None => x.abs_diff(y) == 1,
            _ => x == y && x >= 1,
        };
        if !ok {
            return Err(Error::InvalidInput(format!("({x},{y}) with decoration {} is not a decorated pair", decoration.symbol())));
        }
        Ok(Self { x, y, decoration })
    }

    fn unchecked(x: u32, y: u32, decoration: Decoration) -> Self {
        Self { x, y, decoration }
    }
}

impl fmt::Display for DecoratedPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.decoration {
            Decoration::None => write!(f, "({},{})", self.x, self.y),
            d => write!(f, "({},{}){}", self.x, self.y, d.symbol()),
        }
    }
}

impl Serialize for DecoratedPair {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        (self.x, self.y, self.decoration.symbol()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DecoratedPair {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (x, y, sym) = <(u32, u32, String)>::deserialize(d)?;
        let dec = match sym.as_str() {
            "0" => Decoration::None,
            "+" => Decoration::Plus,
            "-" => Decoration::Minus,
            other => return Err(D::Error::custom(format!("unknown decoration {other:?}"))),
        };
        DecoratedPair::new(x, y, dec).map_err(D::Error::custom)
    }
}

/// A multiset of decorated pairs, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<DecoratedPair>", into = "Vec<DecoratedPair>")]
pub struct DecoratedBipartition {
    pairs: Vec<DecoratedPair>,
}

impl From<Vec<DecoratedPair>> for DecoratedBipartition {
    fn from(v: Vec<DecoratedPair>) -> Self {
        Self::new(v)
    }
}

impl From<DecoratedBipartition> for Vec<DecoratedPair> {
    fn from(g: DecoratedBipartition) -> Self {
        g.pairs
    }
}

impl DecoratedBipartition {
    pub fn new(mut pairs: Vec<DecoratedPair>) -> Self {
        pairs.sort();
        Self { pairs }
    }

    pub fn pairs(&self) -> &[DecoratedPair] {
        &self.pairs
    }

    pub fn m(&self) -> u32 {
        self.pairs.iter().map(|p| p.x).sum()
    }

    pub fn n(&self) -> u32 {
        self.pairs.iter().map(|p| p.y).sum()
    }

    fn count(&self, x: u32, y: u32, d: Decoration) -> usize {
        self.pairs.iter().filter(|p| p.x == x && p.y == y && p.decoration == d).count()
    }

    fn has_shape(&self, x: u32, y: u32) -> bool {
        self.pairs.iter().any(|p| p.x == x && p.y == y)
    }

    /// No `k` has both `(k,k-1)` and `(k-1,k)`.
    pub fn is_relevant(&self) -> bool {
        !self.pairs.iter().any(|p| p.x == p.y + 1 && self.has_shape(p.y, p.x))
    }

    pub fn is_orthosymplectic(&self) -> bool {
        self.pairs.iter().all(|p| match p.decoration {
            Decoration::None if p.x % 2 == 0 => self.count(p.x, p.y, Decoration::None) % 2 == 0,
            Decoration::None => true,
            _ => self.count(p.x, p.x, Decoration::Plus) == self.count(p.x, p.x, Decoration::Minus),
        })
    }
}

impl fmt::Display for DecoratedBipartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.pairs.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", s.join(","))
    }
}

/// Every decorated bipartition with `Σx = m`, `Σy = n`.
pub fn enumerate_dp(m: u32, n: u32) -> Vec<DecoratedBipartition> {
    let mut shapes = Vec::new();
    for k in 0..=m.max(n) {
        if k + 1 <= m && k <= n {
            shapes.push(DecoratedPair::unchecked(k + 1, k, Decoration::None));
        }
        if k <= m && k + 1 <= n {
            shapes.push(DecoratedPair::unchecked(k, k + 1, Decoration::None));
        }
        if k >= 1 && k <= m.min(n) {
            shapes.push(DecoratedPair::unchecked(k, k, Decoration::Plus));
            shapes.push(DecoratedPair::unchecked(k, k, Decoration::Minus));
        }
    }
    shapes.sort();
    let mut out = Vec::new();
    fn rec(shapes: &[DecoratedPair], start: usize, m: u32, n: u32, cur: &mut Vec<DecoratedPair>, out: &mut Vec<DecoratedBipartition>) {
        if m == 0 && n == 0 {
            out.push(DecoratedBipartition::new(cur.clone()));
            return;
        }
        for i in start..shapes.len() {
            let p = shapes[i];
            if p.x <= m && p.y <= n {
                cur.push(p);
                rec(shapes, i, m - p.x, n - p.y, cur, out);
                cur.pop();
            }
        }
    }
    rec(&shapes, 0, m, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// The combinatorial moment map: the multisets of first and second coordinates.
pub fn moment_dagger(gamma: &DecoratedBipartition) -> (Partition, Partition) {
    (
        Partition::new(gamma.pairs.iter().map(|p| p.x).collect()),
        Partition::new(gamma.pairs.iter().map(|p| p.y).collect()),
    )
}

/// Zero-pad to a common length and pair off in decreasing order.
fn aligned(g1: &Partition, g2: &Partition) -> Vec<(u32, u32)> {
    let len = g1.len().max(g2.len());
    (0..len)
        .map(|i| (g1.parts.get(i).copied().unwrap_or(0), g2.parts.get(i).copied().unwrap_or(0)))
        .collect()
}

pub fn is_relevant_pair(g1: &Partition, g2: &Partition) -> bool {
    aligned(g1, g2).iter().all(|&(x, y)| x.abs_diff(y) <= 1)
}

/// `∏_k (λ_k + 1)` where `λ_k` counts aligned `(k,k)`; zero off the relevant locus.
pub fn multiplicity(g1: &Partition, g2: &Partition) -> u64 {
    if !is_relevant_pair(g1, g2) {
        return 0;
    }
    let mut diag: BTreeMap<u32, u64> = BTreeMap::new();
    for (x, y) in aligned(g1, g2) {
        if x == y {
            *diag.entry(x).or_default() += 1;
        }
    }
    diag.values().map(|l| l + 1).product()
}

/// All relevant decorated bipartitions over `(g1, g2)`.
pub fn fiber_rdp(g1: &Partition, g2: &Partition) -> Vec<DecoratedBipartition> {
    if !is_relevant_pair(g1, g2) {
        return Vec::new();
    }
    let mut base = Vec::new();
    let mut diag: BTreeMap<u32, usize> = BTreeMap::new();
    for (x, y) in aligned(g1, g2) {
        if x == y {
            *diag.entry(x).or_default() += 1;
        } else {
            base.push(DecoratedPair::unchecked(x, y, Decoration::None));
        }
    }
    let mut out = vec![base];
    for (&k, &lambda) in &diag {
        let mut next = Vec::new();
        for partial in &out {
            for plus in 0..=lambda {
                let mut g = partial.clone();
                g.extend((0..plus).map(|_| DecoratedPair::unchecked(k, k, Decoration::Plus)));
                g.extend((plus..lambda).map(|_| DecoratedPair::unchecked(k, k, Decoration::Minus)));
                next.push(g);
            }
        }
        out = next;
    }
    let mut res: Vec<_> = out.into_iter().map(DecoratedBipartition::new).collect();
    res.sort();
    res
}

/// The unique relevant ortho-symplectic bipartition over an
/// (orthogonal, symplectic) pair, if there is one.
pub fn fiber_rosp(g1: &Partition, g2: &Partition) -> Result<Option<DecoratedBipartition>> {
    if !g1.is_orthogonal() {
        return Err(Error::InvalidInput(format!("{g1} is not an orthogonal partition")));
    }
    if !g2.is_symplectic() {
        return Err(Error::InvalidInput(format!("{g2} is not a symplectic partition")));
    }
    if !is_relevant_pair(g1, g2) {
        return Ok(None);
    }
    let mut pairs = Vec::new();
    let mut diag: BTreeMap<u32, usize> = BTreeMap::new();
    for (x, y) in aligned(g1, g2) {
        if x == y {
            *diag.entry(x).or_default() += 1;
        } else {
            pairs.push(DecoratedPair::unchecked(x, y, Decoration::None));
        }
    }
    for (&k, &c) in &diag {
        if c % 2 != 0 {
            return Ok(None);
        }
        pairs.extend((0..c / 2).map(|_| DecoratedPair::unchecked(k, k, Decoration::Plus)));
        pairs.extend((0..c / 2).map(|_| DecoratedPair::unchecked(k, k, Decoration::Minus)));
    }
    let gamma = DecoratedBipartition::new(pairs);
    Ok(gamma.is_orthosymplectic().then_some(gamma))
}

/// A generator label of an elementary abelian 2-group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GenLabel {
    Part(u32),
    Pair(u32, u32),
}

impl fmt::Display for GenLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenLabel::Part(t) => write!(f, "a{t}"),
            GenLabel::Pair(x, y) => write!(f, "a({x},{y})"),
        }
    }
}

/// A character of a [`SignGroup`]: one sign per generator.
pub type SignChar = Vec<i8>;

/// `(Z/2)^r` on an ordered list of generators.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct SignGroup {
    pub generators: Vec<GenLabel>,
}

impl SignGroup {
    pub fn order(&self) -> usize {
        1 << self.generators.len()
    }

    pub fn index_of(&self, g: GenLabel) -> Option<usize> {
        self.generators.iter().position(|&h| h == g)
    }

    pub fn trivial_character(&self) -> SignChar {
        vec![1; self.generators.len()]
    }

    /// All characters; the trivial one first.
    pub fn characters(&self) -> Vec<SignChar> {
        let r = self.generators.len();
        (0..1usize << r)
            .map(|mask| (0..r).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect())
            .collect()
    }

    /// The component group of an orthogonal partition: one generator per distinct odd part.
    pub fn orthogonal(lambda: &Partition) -> Self {
        Self { generators: lambda.distinct_parts().into_iter().filter(|t| t % 2 == 1).map(GenLabel::Part).collect() }
    }

    /// The component group of a symplectic partition: one generator per distinct even part.
    pub fn symplectic(lambda: &Partition) -> Self {
        Self { generators: lambda.distinct_parts().into_iter().filter(|t| t % 2 == 0).map(GenLabel::Part).collect() }
    }
}

pub fn sign_group_of_orthosymplectic(gamma: &DecoratedBipartition) -> Result<SignGroup> {
    if !gamma.is_orthosymplectic() {
        return Err(Error::InvalidInput(format!("{gamma} is not ortho-symplectic")));
    }
    let mut gens: Vec<GenLabel> = gamma
        .pairs
        .iter()
        .filter(|p| p.x % 2 == 1 && p.y % 2 == 0)
        .map(|p| GenLabel::Pair(p.x, p.y))
        .collect();
    gens.dedup();
    Ok(SignGroup { generators: gens })
}

/// The map `S_γ → S_γ1 × S_γ2` on generators: each entry gives the index of
/// the image generator on either side, `None` for the identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeltaDagger {
    pub source: SignGroup,
    pub left: SignGroup,
    pub right: SignGroup,
    pub images: Vec<(Option<usize>, Option<usize>)>,
}

impl DeltaDagger {
    /// The pullback `(χ1 ⊗ χ2) ∘ Δ†` as a character of the source.
    pub fn pullback(&self, chi1: &[i8], chi2: &[i8]) -> SignChar {
        self.images
            .iter()
            .map(|&(a, b)| a.map_or(1, |i| chi1[i]) * b.map_or(1, |j| chi2[j]))
            .collect()
    }
}

pub fn delta_dagger(gamma: &DecoratedBipartition) -> Result<DeltaDagger> {
    let source = sign_group_of_orthosymplectic(gamma)?;
    let (g1, g2) = moment_dagger(gamma);
    let left = SignGroup::orthogonal(&g1);
    let right = SignGroup::symplectic(&g2);
    let images = source
        .generators
        .iter()
        .map(|&g| {
            let GenLabel::Pair(x, y) = g else { unreachable!("pair generators only") };
            (left.index_of(GenLabel::Part(x)), right.index_of(GenLabel::Part(y)))
        })
        .collect();
    Ok(DeltaDagger { source, left, right, images })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Quintuple {
    pub gamma: DecoratedBipartition,
    pub gamma1: Partition,
    pub chi1: SignChar,
    pub gamma2: Partition,
    pub chi2: SignChar,
}

/// Relevant quintuples over `ROSP(2m, 2n)`, ordered by `(γ1, γ2, χ1, χ2)`.
pub fn enumerate_rq(m: u32, n: u32) -> Vec<Quintuple> {
    let mut out = Vec::new();
    for g1 in Partition::orthogonal(2 * m) {
        for g2 in Partition::symplectic(2 * n) {
            let Some(gamma) = fiber_rosp(&g1, &g2).expect("inputs are orthogonal/symplectic") else {
                continue;
            };
            let delta = delta_dagger(&gamma).expect("fiber_rosp returns ortho-symplectic labels");
            for chi1 in delta.left.characters() {
                for chi2 in delta.right.characters() {
                    if delta.pullback(&chi1, &chi2).iter().all(|&s| s == 1) {
                        out.push(Quintuple { gamma: gamma.clone(), gamma1: g1.clone(), chi1: chi1.clone(), gamma2: g2.clone(), chi2 });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    fn dp(x: u32, y: u32, d: Decoration) -> DecoratedPair {
        DecoratedPair::new(x, y, d).unwrap()
    }

    #[test]
    fn canonical_form() {
        assert_eq!(p(&[1, 0, 3, 1]).parts(), &[3, 1, 1]);
        assert_eq!(p(&[3, 1, 1]).transpose(), p(&[3, 1, 1]));
        assert_eq!(p(&[4, 2]).transpose(), p(&[2, 2, 1, 1]));
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..8).map(|k| Partition::all(k).len()).collect();
        assert_eq!(counts, [1, 1, 2, 3, 5, 7, 11, 15]);
        assert_eq!(Partition::symplectic(4).len(), 4);
        assert_eq!(Partition::orthogonal(4).len(), 3);
    }

    #[test]
    fn orthogonal_symplectic_parity() {
        assert!(p(&[3, 1]).is_orthogonal());
        assert!(!p(&[3, 1]).is_symplectic());
        assert!(p(&[2, 2]).is_orthogonal() && p(&[2, 2]).is_symplectic());
        assert!(!p(&[2]).is_orthogonal() && p(&[2]).is_symplectic());
    }

    #[test]
    fn decorated_pair_shapes() {
        assert!(DecoratedPair::new(1, 0, Decoration::None).is_ok());
        assert!(DecoratedPair::new(2, 2, Decoration::Plus).is_ok());
        assert!(DecoratedPair::new(2, 2, Decoration::None).is_err());
        assert!(DecoratedPair::new(3, 1, Decoration::None).is_err());
        assert!(DecoratedPair::new(0, 0, Decoration::Minus).is_err());
    }

    #[test]
    fn worked_moment_map() {
        let g = DecoratedBipartition::new(vec![dp(4, 4, Decoration::Plus), dp(3, 3, Decoration::Plus), dp(1, 2, Decoration::None)]);
        assert_eq!(moment_dagger(&g), (p(&[4, 3, 1]), p(&[4, 3, 2])));
        let g = DecoratedBipartition::new(vec![dp(1, 2, Decoration::None), dp(1, 0, Decoration::None)]);
        assert_eq!(moment_dagger(&g), (p(&[1, 1]), p(&[2])));
        assert_eq!(moment_dagger(&DecoratedBipartition::default()), (p(&[]), p(&[])));
    }

    #[test]
    fn worked_fiber() {
        let (g1, g2) = (p(&[4, 3, 1]), p(&[4, 3, 2]));
        assert!(is_relevant_pair(&g1, &g2));
        assert_eq!(multiplicity(&g1, &g2), 4);
        let fib = fiber_rdp(&g1, &g2);
        assert_eq!(fib.len(), 4);
        assert!(fib.iter().all(|g| g.is_relevant() && moment_dagger(g) == (g1.clone(), g2.clone())));
        assert!(!is_relevant_pair(&p(&[3]), &p(&[1])));
        assert!(fiber_rdp(&p(&[3]), &p(&[1])).is_empty());
        assert_eq!(fiber_rdp(&p(&[1]), &p(&[1])).len(), 2);
    }

    #[test]
    fn rosp_fibers() {
        let g = fiber_rosp(&p(&[1, 1]), &p(&[1, 1])).unwrap().unwrap();
        assert_eq!(g.to_string(), "{(1,1)+,(1,1)-}");
        let g = fiber_rosp(&p(&[1, 1]), &p(&[2])).unwrap().unwrap();
        assert_eq!(g.to_string(), "{(1,0),(1,2)}");
        assert_eq!(fiber_rosp(&p(&[3, 1]), &p(&[1, 1])).unwrap(), None);
        assert!(fiber_rosp(&p(&[2]), &p(&[2])).is_err());
    }

    #[test]
    fn worked_component_group() {
        let g = DecoratedBipartition::new(vec![
            dp(3, 3, Decoration::Plus),
            dp(3, 3, Decoration::Minus),
            dp(3, 2, Decoration::None),
            dp(1, 2, Decoration::None),
        ]);
        let s = sign_group_of_orthosymplectic(&g).unwrap();
        assert_eq!(s.generators, vec![GenLabel::Pair(1, 2), GenLabel::Pair(3, 2)]);
        let d = delta_dagger(&g).unwrap();
        let a = |t| GenLabel::Part(t);
        for (gen, &(l, r)) in d.source.generators.iter().zip(&d.images) {
            let GenLabel::Pair(x, y) = *gen else { panic!() };
            assert_eq!(l.map(|i| d.left.generators[i]), Some(a(x)));
            assert_eq!(r.map(|i| d.right.generators[i]), Some(a(y)));
        }
    }

    #[test]
    fn zero_part_maps_to_identity() {
        let g = DecoratedBipartition::new(vec![dp(1, 2, Decoration::None), dp(1, 0, Decoration::None)]);
        let d = delta_dagger(&g).unwrap();
        let k = d.source.index_of(GenLabel::Pair(1, 0)).unwrap();
        assert_eq!(d.images[k].1, None);
        assert_eq!(d.images[k].0.map(|i| d.left.generators[i]), Some(GenLabel::Part(1)));
    }

    #[test]
    fn rq_small() {
        assert_eq!(enumerate_rq(0, 0).len(), 1);
        let rq = enumerate_rq(1, 1);
        assert_eq!(rq.len(), 3);
        assert_eq!(rq.iter().filter(|q| q.gamma2 == p(&[1, 1])).count(), 2);
    }

    #[test]
    fn json_shapes() {
        let g = DecoratedBipartition::new(vec![dp(1, 1, Decoration::Plus), dp(1, 0, Decoration::None)]);
        assert_eq!(serde_json::to_string(&g).unwrap(), r#"[[1,0,"0"],[1,1,"+"]]"#);
        let back: DecoratedBipartition = serde_json::from_str(r#"[[1,1,"+"],[1,0,"0"]]"#).unwrap();
        assert_eq!(back, g);
        assert_eq!(serde_json::to_string(&p(&[2, 1])).unwrap(), "[2,1]");
    }
}
