//! Characters of symmetric and hyperoctahedral groups, Springer labels, and
//! the character-level check of the theta decompositions.
//!
//! Hyperoctahedral conventions: `([k], ∅)` is trivial, `(∅, [k])` is `-1` on
//! sign changes and `+1` on transpositions, `([1^k], ∅)` is `-1` on
//! transpositions and `+1` on sign changes, and `(∅, [1^k])` is the Coxeter
//! sign. Conjugacy classes of `B_k` are signed cycle types `(λ, μ)`: `λ` lists
//! the positive cycles and `μ` the negative ones.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::fourier::{shared, GluedBimodule};
use crate::linalg::{imat_identity, imat_mul, unitriangular_inverse, IMat};
use crate::matchings::{Model, WeylElement};
use crate::partitions::{enumerate_rq, is_relevant_pair, multiplicity, Partition, SignChar, SignGroup};
use crate::{Error, Result};

/// One factor of a product of Weyl groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Factor {
    /// The symmetric group on `k` letters.
    Sym(usize),
    /// The hyperoctahedral group of rank `k`.
    Hyp(usize),
}

impl Factor {
    pub fn order(self) -> u64 {
        match self {
            Factor::Sym(k) => factorial(k),
            Factor::Hyp(k) => factorial(k) << k,
        }
    }

    pub fn classes(self) -> Vec<ClassLabel> {
        match self {
            Factor::Sym(k) => Partition::all(k as u32).into_iter().map(ClassLabel::Sym).collect(),
            Factor::Hyp(k) => bipartitions(k).into_iter().map(|(a, b)| ClassLabel::Hyp(a, b)).collect(),
        }
    }

    pub fn irreps(self) -> Vec<IrrepLabel> {
        match self {
            Factor::Sym(k) => Partition::all(k as u32).into_iter().map(IrrepLabel::A).collect(),
            Factor::Hyp(k) => bipartitions(k).into_iter().map(|(a, b)| IrrepLabel::B(a, b)).collect(),
        }
    }

    pub fn identity_class(self) -> ClassLabel {
        match self {
            Factor::Sym(k) => ClassLabel::Sym(Partition::new(vec![1; k])),
            Factor::Hyp(k) => ClassLabel::Hyp(Partition::new(vec![1; k]), Partition::default()),
        }
    }
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// Ordered pairs `(α, β)` with `|α| + |β| = k`.
pub fn bipartitions(k: usize) -> Vec<(Partition, Partition)> {
    let mut out = Vec::new();
    for a in (0..=k).rev() {
        for alpha in Partition::all(a as u32) {
            for beta in Partition::all((k - a) as u32) {
                out.push((alpha.clone(), beta));
            }
        }
    }
    out
}

/// A conjugacy class of one factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassLabel {
    Sym(Partition),
    Hyp(Partition, Partition),
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassLabel::Sym(l) => write!(f, "{l}"),
            ClassLabel::Hyp(l, m) => write!(f, "({l},{m})"),
        }
    }
}

/// `z_λ = ∏ i^{m_i} m_i!`.
fn z(lambda: &Partition) -> u64 {
    lambda
        .distinct_parts()
        .into_iter()
        .map(|i| {
            let mi = lambda.multiplicity(i);
            (i as u64).pow(mi as u32) * factorial(mi)
        })
        .product()
}

impl ClassLabel {
    pub fn size(&self) -> u64 {
        match self {
            ClassLabel::Sym(l) => factorial(l.total() as usize) / z(l),
            ClassLabel::Hyp(l, m) => {
                let k = (l.total() + m.total()) as usize;
                (factorial(k) << k) / (z(l) * z(m) << (l.len() + m.len()))
            }
        }
    }

    /// A representative: cycles on consecutive blocks, positive ones first;
    /// a negative cycle sends its last letter to minus its first.
    pub fn representative(&self) -> WeylElement {
        let (pos, neg) = match self {
            ClassLabel::Sym(l) => (l.clone(), Partition::default()),
            ClassLabel::Hyp(l, m) => (l.clone(), m.clone()),
        };
        let mut images = Vec::new();
        let mut start = 1i32;
        for (cycles, sign) in [(pos, 1), (neg, -1)] {
            for &r in cycles.parts() {
                let r = r as i32;
                for a in start..start + r - 1 {
                    images.push(a + 1);
                }
                images.push(sign * start);
                start += r;
            }
        }
        WeylElement::from_images(images).expect("block cycles form a signed permutation")
    }

    /// The class of `w`; `signed` selects the hyperoctahedral labelling.
    pub fn of(w: &WeylElement, signed: bool) -> Self {
        let k = w.rank();
        let mut seen = vec![false; k + 1];
        let (mut pos, mut neg) = (Vec::new(), Vec::new());
        for start in 1..=k {
            if seen[start] {
                continue;
            }
            let (mut len, mut sign, mut a) = (0u32, 1i32, start as i32);
            while !seen[a as usize] {
                seen[a as usize] = true;
                let img = w.apply(a);
                sign *= img.signum();
                a = img.abs();
                len += 1;
            }
            if sign > 0 || !signed {
                pos.push(len);
            } else {
                neg.push(len);
            }
        }
        if signed {
            ClassLabel::Hyp(Partition::new(pos), Partition::new(neg))
        } else {
            ClassLabel::Sym(Partition::new(pos))
        }
    }
}

/// An irreducible representation of one factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum IrrepLabel {
    A(Partition),
    B(Partition, Partition),
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::A(l) => write!(f, "{l}"),
            IrrepLabel::B(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Remove all `r`-rim hooks from `λ`, with leg-length signs.
fn rim_hooks(lambda: &Partition, r: u32) -> Vec<(Partition, i64)> {
    let len = lambda.len() as u32;
    let beta: Vec<u32> = lambda.parts().iter().enumerate().map(|(i, &p)| p + len - 1 - i as u32).collect();
    let mut out = Vec::new();
    for (idx, &b) in beta.iter().enumerate() {
        if b < r || beta.contains(&(b - r)) {
            continue;
        }
        let between = beta.iter().filter(|&&c| c > b - r && c < b).count();
        let mut nb = beta.clone();
        nb[idx] = b - r;
        nb.sort_unstable_by(|x, y| y.cmp(x));
        let parts: Vec<u32> = nb.iter().enumerate().map(|(i, &c)| c - (len - 1 - i as u32)).collect();
        out.push((Partition::new(parts), if between % 2 == 0 { 1 } else { -1 }));
    }
    out
}

type SymKey = (Partition, Vec<u32>);
type HypKey = (Partition, Partition, Vec<u32>, Vec<u32>);

fn mn_sym(lambda: &Partition, rho: &[u32], memo: &mut HashMap<SymKey, i64>) -> i64 {
    let Some((&r, rest)) = rho.split_first() else {
        return i64::from(lambda.is_empty());
    };
    let key = (lambda.clone(), rho.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let v = rim_hooks(lambda, r).iter().map(|(mu, s)| s * mn_sym(mu, rest, memo)).sum();
    memo.insert(key, v);
    v
}

fn mn_hyp(alpha: &Partition, beta: &Partition, pos: &[u32], neg: &[u32], memo: &mut HashMap<HypKey, i64>) -> i64 {
    let (r, sign, pos_rest, neg_rest) = match (pos.split_first(), neg.split_first()) {
        (Some((&r, rest)), _) => (r, 1, rest, neg),
        (None, Some((&r, rest))) => (r, -1, pos, rest),
        (None, None) => return i64::from(alpha.is_empty() && beta.is_empty()),
    };
    let key = (alpha.clone(), beta.clone(), pos.to_vec(), neg.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let mut v = 0;
    for (a2, s) in rim_hooks(alpha, r) {
        v += s * mn_hyp(&a2, beta, pos_rest, neg_rest, memo);
    }
    for (b2, s) in rim_hooks(beta, r) {
        v += sign * s * mn_hyp(alpha, &b2, pos_rest, neg_rest, memo);
    }
    memo.insert(key, v);
    v
}

/// Value of an irreducible character of one factor at one class.
pub fn character_value(irrep: &IrrepLabel, class: &ClassLabel) -> i64 {
    static SYM: OnceLock<Mutex<HashMap<SymKey, i64>>> = OnceLock::new();
    static HYP: OnceLock<Mutex<HashMap<HypKey, i64>>> = OnceLock::new();
    match (irrep, class) {
        (IrrepLabel::A(l), ClassLabel::Sym(rho)) => {
            if l.total() != rho.total() {
                return 0;
            }
            let mut memo = SYM.get_or_init(Mutex::default).lock().expect("poisoned");
            mn_sym(l, rho.parts(), &mut memo)
        }
        (IrrepLabel::B(a, b), ClassLabel::Hyp(l, m)) => {
            if a.total() + b.total() != l.total() + m.total() {
                return 0;
            }
            let mut memo = HYP.get_or_init(Mutex::default).lock().expect("poisoned");
            mn_hyp(a, b, l.parts(), m.parts(), &mut memo)
        }
        _ => 0,
    }
}

/// An integer-valued class function on a product of Weyl groups, with one
/// value per product class in the order of [`ClassFunction::classes`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassFunction {
    pub factors: Vec<Factor>,
    pub values: Vec<i64>,
}

fn product_classes(factors: &[Factor]) -> Vec<Vec<ClassLabel>> {
    let mut out: Vec<Vec<ClassLabel>> = vec![Vec::new()];
    for f in factors {
        let cs = f.classes();
        out = out
            .into_iter()
            .flat_map(|prefix| {
                cs.iter().map(move |c| {
                    let mut p = prefix.clone();
                    p.push(c.clone());
                    p
                })
            })
            .collect();
    }
    out
}

impl ClassFunction {
    pub fn from_fn(factors: Vec<Factor>, mut f: impl FnMut(&[ClassLabel]) -> i64) -> Self {
        let values = product_classes(&factors).iter().map(|c| f(c)).collect();
        Self { factors, values }
    }

    pub fn classes(&self) -> Vec<Vec<ClassLabel>> {
        product_classes(&self.factors)
    }

    pub fn group_order(&self) -> u64 {
        self.factors.iter().map(|f| f.order()).product()
    }

    fn class_sizes(&self) -> Vec<u64> {
        self.classes().iter().map(|c| c.iter().map(ClassLabel::size).product()).collect()
    }

    /// `⟨self, other⟩ = |G|⁻¹ Σ_g self(g) other(g)` (all characters here are real).
    pub fn inner(&self, other: &Self) -> Ratio<i64> {
        assert_eq!(self.factors, other.factors, "class functions on different groups");
        let s: i128 = self
            .class_sizes()
            .iter()
            .zip(self.values.iter().zip(&other.values))
            .map(|(&c, (&a, &b))| c as i128 * a as i128 * b as i128)
            .sum();
        Ratio::new(s as i64, self.group_order() as i64)
    }

    pub fn degree(&self) -> i64 {
        let id: Vec<ClassLabel> = self.factors.iter().map(|f| f.identity_class()).collect();
        let idx = self.classes().iter().position(|c| *c == id).expect("identity class");
        self.values[idx]
    }

    pub fn pointwise(&self, other: &Self) -> Self {
        assert_eq!(self.factors, other.factors);
        Self { factors: self.factors.clone(), values: self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect() }
    }

    pub fn add_scaled(&mut self, k: i64, other: &Self) {
        assert_eq!(self.factors, other.factors);
        for (a, b) in self.values.iter_mut().zip(&other.values) {
            *a += k * b;
        }
    }

    pub fn zero(factors: Vec<Factor>) -> Self {
        let n = product_classes(&factors).len();
        Self { factors, values: vec![0; n] }
    }

    /// `self ⊠ other` on the product group.
    pub fn outer(&self, other: &Self) -> Self {
        let mut factors = self.factors.clone();
        factors.extend(&other.factors);
        let mut values = Vec::with_capacity(self.values.len() * other.values.len());
        for a in &self.values {
            for b in &other.values {
                values.push(a * b);
            }
        }
        Self { factors, values }
    }

    /// Multiplicity of every irreducible with nonzero inner product.
    pub fn decompose(&self) -> Vec<(Vec<IrrepLabel>, Ratio<i64>)> {
        let mut irreps: Vec<Vec<IrrepLabel>> = vec![Vec::new()];
        for f in &self.factors {
            let next = f.irreps();
            irreps = irreps
                .into_iter()
                .flat_map(|p| {
                    next.iter().map(move |i| {
                        let mut q = p.clone();
                        q.push(i.clone());
                        q
                    })
                })
                .collect();
        }
        irreps
            .into_iter()
            .filter_map(|labels| {
                let c = product_character(&self.factors, &labels);
                let k = self.inner(&c);
                (k != Ratio::from_integer(0)).then_some((labels, k))
            })
            .collect()
    }

    /// The first class where the two functions differ.
    pub fn first_difference(&self, other: &Self) -> Option<(Vec<ClassLabel>, i64, i64)> {
        let classes = self.classes();
        (0..self.values.len())
            .find(|&i| self.values[i] != other.values[i])
            .map(|i| (classes[i].clone(), self.values[i], other.values[i]))
    }
}

pub fn char_symmetric(lambda: &Partition) -> ClassFunction {
    character(&IrrepLabel::A(lambda.clone()))
}

pub fn char_hyperoctahedral(alpha: &Partition, beta: &Partition) -> ClassFunction {
    character(&IrrepLabel::B(alpha.clone(), beta.clone()))
}

pub fn character(label: &IrrepLabel) -> ClassFunction {
    let f = match label {
        IrrepLabel::A(l) => Factor::Sym(l.total() as usize),
        IrrepLabel::B(a, b) => Factor::Hyp((a.total() + b.total()) as usize),
    };
    ClassFunction::from_fn(vec![f], |c| character_value(label, &c[0]))
}

pub fn product_character(factors: &[Factor], labels: &[IrrepLabel]) -> ClassFunction {
    ClassFunction::from_fn(factors.to_vec(), |c| c.iter().zip(labels).map(|(c, l)| character_value(l, c)).product())
}

/// The length-parity sign of a hyperoctahedral factor in which the last sign
/// change has length zero: `-1` on transpositions, `+1` on sign changes.
pub fn sign_length_zero_t(k: usize) -> IrrepLabel {
    IrrepLabel::B(Partition::new(vec![1; k]), Partition::default())
}

/// The Coxeter sign of a hyperoctahedral factor.
pub fn coxeter_sign_b(k: usize) -> IrrepLabel {
    IrrepLabel::B(Partition::default(), Partition::new(vec![1; k]))
}

/// Whether type-A Springer labels are the partition itself or its transpose.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TypeAConvention {
    Identity,
    Transpose,
}

/// Which of the two `B_m` irreducibles over a `D_m` irreducible is assigned
/// by the even orthogonal Springer map: the symbol pair as read, or swapped
/// (the twist by the character that is `-1` exactly on odd sign changes).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OEvenTwist {
    Direct,
    Twisted,
}

/// The frozen conventions; see [`calibrate`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpringerConventions {
    pub type_a: TypeAConvention,
    pub o_even: OEvenTwist,
}

impl Default for SpringerConventions {
    fn default() -> Self {
        Self { type_a: TypeAConvention::Identity, o_even: OEvenTwist::Direct }
    }
}

pub fn springer_gl(lambda: &Partition) -> IrrepLabel {
    springer_gl_with(lambda, TypeAConvention::Identity)
}

pub fn springer_gl_with(lambda: &Partition, conv: TypeAConvention) -> IrrepLabel {
    match conv {
        TypeAConvention::Identity => IrrepLabel::A(lambda.clone()),
        TypeAConvention::Transpose => IrrepLabel::A(lambda.transpose()),
    }
}

/// The symbol of `λ` with the entries of the parts in `flip` moved to the
/// other row. Parts are padded with zeros to `parity` mod 2 many, sorted
/// increasingly, and `x_i = λ_i + i - 1`; even `x` go to the top row.
fn symbol(lambda: &Partition, parity: usize, flip: &[u32]) -> Result<(Vec<u32>, Vec<u32>)> {
    let mut parts: Vec<u32> = lambda.parts().iter().rev().copied().collect();
    if parts.len() % 2 != parity {
        parts.insert(0, 0);
    }
    let (mut top, mut bot) = (Vec::new(), Vec::new());
    for (i, &p) in parts.iter().enumerate() {
        let x = p + i as u32;
        let even = x % 2 == 0;
        if even != flip.contains(&p) {
            top.push(x / 2);
        } else {
            bot.push(x / 2);
        }
    }
    for row in [&mut top, &mut bot] {
        row.sort_unstable();
        if row.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Inconsistent(format!("degenerate symbol for {lambda} with flips {flip:?}")));
        }
    }
    Ok((top, bot))
}

fn row_partition(row: &[u32]) -> Partition {
    Partition::new(row.iter().enumerate().map(|(i, &x)| x - i as u32).collect())
}

fn flipped_parts(group: &SignGroup, chi: &SignChar) -> Result<Vec<u32>> {
    if chi.len() != group.generators.len() || chi.iter().any(|&s| s != 1 && s != -1) {
        return Err(Error::InvalidInput(format!("{chi:?} is not a character of a group with {} generators", group.generators.len())));
    }
    Ok(group
        .generators
        .iter()
        .zip(chi)
        .filter(|(_, &s)| s == -1)
        .map(|(g, _)| match g {
            crate::partitions::GenLabel::Part(t) => *t,
            crate::partitions::GenLabel::Pair(..) => unreachable!("orbit groups have part generators"),
        })
        .collect())
}

/// Springer label for `Sp(2n)`; `None` off the image.
pub fn springer_sp(lambda: &Partition, chi: &SignChar) -> Result<Option<IrrepLabel>> {
    if !lambda.is_symplectic() {
        return Err(Error::InvalidInput(format!("{lambda} is not symplectic")));
    }
    let flips = flipped_parts(&SignGroup::symplectic(lambda), chi)?;
    let (top, bot) = symbol(lambda, 1, &flips)?;
    Ok((top.len() == bot.len() + 1).then(|| IrrepLabel::B(row_partition(&top), row_partition(&bot))))
}

/// Springer label for the full orthogonal group `O(2m)`; `None` off the image.
pub fn springer_o_even(lambda: &Partition, chi: &SignChar) -> Result<Option<IrrepLabel>> {
    springer_o_even_with(lambda, chi, OEvenTwist::Direct)
}

pub fn springer_o_even_with(lambda: &Partition, chi: &SignChar, twist: OEvenTwist) -> Result<Option<IrrepLabel>> {
    if !lambda.is_orthogonal() || lambda.total() % 2 != 0 {
        return Err(Error::InvalidInput(format!("{lambda} is not an even orthogonal partition")));
    }
    let flips = flipped_parts(&SignGroup::orthogonal(lambda), chi)?;
    let (top, bot) = symbol(lambda, 0, &flips)?;
    if top.len() != bot.len() {
        return Ok(None);
    }
    let (a, b) = (row_partition(&top), row_partition(&bot));
    Ok(Some(match twist {
        OEvenTwist::Direct => IrrepLabel::B(a, b),
        OEvenTwist::Twisted => IrrepLabel::B(b, a),
    }))
}

/// Fixed points of `(w1, w2)` on `PM(m,n)`, per class pair.
pub fn module_character_type_ii(m: usize, n: usize) -> ClassFunction {
    let model = Model::TypeII { m, n };
    let labels = model.enumerate();
    ClassFunction::from_fn(vec![Factor::Sym(m), Factor::Sym(n)], |c| {
        let (w1, w2) = (c[0].representative(), c[1].representative());
        labels
            .iter()
            .filter(|s| &model.star_action(&w1, &w2, s).expect("type A elements") == *s)
            .count() as i64
    })
}

/// `Σ_i Ind_{S_{m-i} × Δ(S_i) × S_{n-i}}^{S_m × S_n} 1` by the induced
/// character formula `|C_G(g)| · |H ∩ g^G| / |H|`.
pub fn induced_character_type_ii(m: usize, n: usize) -> ClassFunction {
    ClassFunction::from_fn(vec![Factor::Sym(m), Factor::Sym(n)], |c| {
        let (ClassLabel::Sym(l), ClassLabel::Sym(mu)) = (&c[0], &c[1]) else { unreachable!() };
        let centralizer = z(l) * z(mu);
        let mut total = Ratio::from_integer(0i64);
        for i in 0..=m.min(n) {
            let h = factorial(m - i) * factorial(i) * factorial(n - i);
            let mut hits = 0u64;
            for a in Partition::all((m - i) as u32) {
                for g in Partition::all(i as u32) {
                    for b in Partition::all((n - i) as u32) {
                        if union(&a, &g) == *l && union(&g, &b) == *mu {
                            hits += ClassLabel::Sym(a.clone()).size()
                                * ClassLabel::Sym(g.clone()).size()
                                * ClassLabel::Sym(b).size();
                        }
                    }
                }
            }
            total += Ratio::new((centralizer * hits) as i64, h as i64);
        }
        assert!(total.is_integer(), "induced character value is not an integer");
        total.to_integer()
    })
}

fn union(a: &Partition, b: &Partition) -> Partition {
    Partition::new(a.parts().iter().chain(b.parts()).copied().collect())
}

/// The `v = 1` action of `W_1 × W_2 = B_m × B_n` on the glued module, in
/// the standard basis of model 1.
#[derive(Clone, Debug)]
pub struct VOneAction {
    pub m: usize,
    pub n: usize,
    /// `T_{t_m}` at `v = 1`.
    pub t: IMat,
    glued: GluedBimodule,
}

fn perm_of(model: Model, labels: &[crate::matchings::Matching], index: &dyn Fn(&crate::matchings::Matching) -> usize, w1: &WeylElement, w2: &WeylElement) -> Vec<usize> {
    labels.iter().map(|s| index(&model.star_action(w1, w2, s).expect("valid element"))).collect()
}

impl VOneAction {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        let glued = shared().glued_bimodule(m, n)?;
        let size = glued.len();
        let table = &glued.model1;
        let dims: Vec<usize> = (0..size).map(|i| table.dim(i)).collect();
        let mut order: Vec<usize> = (0..size).collect();
        order.sort_by_key(|&i| (dims[i], i));
        // C in dimension order is upper unitriangular.
        let c: IMat = order
            .iter()
            .map(|&b| order.iter().map(|&s| table.cprime[s].coords[b].at_one()).collect())
            .collect();
        for (i, row) in c.iter().enumerate() {
            if row[i] != 1 || row[..i].iter().any(|&x| x != 0) {
                return Err(Error::Inconsistent("v = 1 base change is not unitriangular".into()));
            }
        }
        let c_inv = unitriangular_inverse(&c);
        let pos: Vec<usize> = {
            let mut p = vec![0; size];
            for (k, &i) in order.iter().enumerate() {
                p[i] = k;
            }
            p
        };
        let mut perm = vec![vec![0i64; size]; size];
        for s in 0..size {
            perm[pos[glued.iota[s]]][pos[s]] = 1;
        }
        let t_ord = imat_mul(&imat_mul(&c, &perm), &c_inv);
        let t: IMat = (0..size).map(|i| (0..size).map(|j| t_ord[pos[i]][pos[j]]).collect()).collect();
        let action = Self { m, n, t, glued };
        action.check_relations()?;
        Ok(action)
    }

    pub fn len(&self) -> usize {
        self.glued.len()
    }

    pub fn is_empty(&self) -> bool {
        self.glued.is_empty()
    }

    fn index(&self, s: &crate::matchings::Matching) -> usize {
        self.glued.model1.orbits.index_of(s).expect("label of model 1")
    }

    /// Permutation `j ↦ w·j` for `(w1, w2)` with `w1` a permutation.
    fn star_perm(&self, w1: &WeylElement, w2: &WeylElement) -> Vec<usize> {
        let model = Model::TypeIM1 { m: self.m, n: self.n };
        perm_of(model, self.glued.model1.labels(), &|s| self.index(s), w1, w2)
    }

    /// `T_{t_a}` as `π T π⁻¹` with `π` swapping `a` and `m`.
    fn sign_change_matrix(&self, a: usize) -> IMat {
        let mut images: Vec<i32> = (1..=self.m as i32).collect();
        images.swap(a - 1, self.m - 1);
        let pi = WeylElement::from_images(images).expect("transposition");
        let p = self.star_perm(&pi, &WeylElement::identity(self.n));
        let size = self.len();
        let mut out = vec![vec![0; size]; size];
        for i in 0..size {
            for j in 0..size {
                out[p[i]][p[j]] = self.t[i][j];
            }
        }
        out
    }

    /// The matrix of `(w1, w2)` on the standard basis.
    pub fn matrix(&self, w1: &WeylElement, w2: &WeylElement) -> IMat {
        let size = self.len();
        let perm_part = WeylElement::from_images(w1.images().iter().map(|x| x.abs()).collect()).expect("underlying permutation");
        let mut dense = imat_identity(size);
        for (a, &x) in w1.images().iter().enumerate() {
            if x < 0 {
                dense = imat_mul(&dense, &self.sign_change_matrix(a + 1));
            }
        }
        let p = self.star_perm(&perm_part, &WeylElement::identity(self.n));
        let q = self.star_perm(&WeylElement::identity(self.m), w2);
        // P · dense · Q with permutation matrices P e_j = e_{p(j)}.
        let mut out = vec![vec![0; size]; size];
        for (k, row) in dense.iter().enumerate() {
            for (l, &x) in row.iter().enumerate() {
                if x != 0 {
                    out[p[k]][l] += x;
                }
            }
        }
        let mut res = vec![vec![0; size]; size];
        for (i, row) in out.iter().enumerate() {
            for (l, &x) in row.iter().enumerate() {
                res[i][q[l]] += x;
            }
        }
        res
    }

    pub fn trace(&self, w1: &WeylElement, w2: &WeylElement) -> i64 {
        let m = self.matrix(w1, w2);
        (0..m.len()).map(|i| m[i][i]).sum()
    }

    /// Group relations of `B_m × B_n` at `v = 1`, including those of `t`.
    fn check_relations(&self) -> Result<()> {
        let (m, n) = (self.m, self.n);
        let size = self.len();
        let id = imat_identity(size);
        if m == 0 {
            return Ok(());
        }
        let err = |what: &str| Error::Inconsistent(format!("v = 1 relation fails: {what}"));
        if imat_mul(&self.t, &self.t) != id {
            return Err(err("t² = 1"));
        }
        let e2 = WeylElement::identity(n);
        let gens1: Vec<IMat> = (1..m).map(|i| self.matrix(&WeylElement::transposition(m, i), &e2)).collect();
        if m >= 2 {
            let ts = imat_mul(&self.t, &gens1[m - 2]);
            let sq = imat_mul(&ts, &ts);
            if imat_mul(&sq, &sq) != id {
                return Err(err("(t s_{m-1})⁴ = 1"));
            }
        }
        for g in gens1.iter().take(m.saturating_sub(2)) {
            if imat_mul(&self.t, g) != imat_mul(g, &self.t) {
                return Err(err("t commutes with s_i, i < m-1"));
            }
        }
        let e1 = WeylElement::identity(m);
        for j in 1..=n {
            let w = if j < n { WeylElement::transposition(n, j) } else { WeylElement::sign_change(n, n) };
            let g = self.matrix(&e1, &w);
            if imat_mul(&self.t, &g) != imat_mul(&g, &self.t) {
                return Err(err("t commutes with the second group"));
            }
        }
        Ok(())
    }

    /// Fixed points of `ι_m` on the `C'`-basis, which equals the trace of `T_{t_m}`.
    pub fn iota_fixed_points(&self) -> usize {
        (0..self.len()).filter(|&i| self.glued.iota[i] == i).count()
    }
}

/// The `v = 1` character of the glued module on `B_m × B_n`.
pub fn module_character_type_i(m: usize, n: usize) -> Result<ClassFunction> {
    let action = VOneAction::new(m, n)?;
    Ok(ClassFunction::from_fn(vec![Factor::Hyp(m), Factor::Hyp(n)], |c| {
        action.trace(&c[0].representative(), &c[1].representative())
    }))
}

/// One row of a decomposition.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecompEntry {
    pub label: String,
    pub multiplicity: i64,
}

/// Outcome of a character-level theta check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThetaReport {
    pub kind: String,
    pub m: usize,
    pub n: usize,
    pub module_dimension: i64,
    pub predicted_dimension: i64,
    /// `None` when only the dimension identity was checked.
    pub character_equal: Option<bool>,
    pub first_difference: Option<String>,
    pub lhs: Vec<DecompEntry>,
    pub rhs: Vec<DecompEntry>,
    /// Predicted summands dropped because a Springer label is zero.
    pub dropped: usize,
}

impl ThetaReport {
    pub fn passed(&self) -> bool {
        self.module_dimension == self.predicted_dimension && self.character_equal != Some(false)
    }

    pub fn to_table(&self) -> String {
        let mut s = format!("{} ({},{}): dim {} vs {}", self.kind, self.m, self.n, self.module_dimension, self.predicted_dimension);
        match self.character_equal {
            Some(true) => s.push_str(", characters equal\n"),
            Some(false) => s.push_str(&format!(", characters differ at {}\n", self.first_difference.as_deref().unwrap_or("?"))),
            None => s.push_str(", characters not compared\n"),
        }
        let width = self.lhs.iter().chain(&self.rhs).map(|e| e.label.chars().count()).max().unwrap_or(0);
        let mut labels: Vec<&String> = self.lhs.iter().chain(&self.rhs).map(|e| &e.label).collect();
        labels.sort();
        labels.dedup();
        let get = |v: &[DecompEntry], l: &str| v.iter().find(|e| e.label == l).map_or(0, |e| e.multiplicity);
        s.push_str(&format!("  {:<width$}  module  predicted\n", "irreducible"));
        for l in labels {
            s.push_str(&format!("  {:<width$}  {:>6}  {:>9}\n", l, get(&self.lhs, l), get(&self.rhs, l)));
        }
        s
    }
}

fn label_string(labels: &[IrrepLabel]) -> String {
    labels.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ⊠ ")
}

fn decomposition(f: &ClassFunction) -> Result<Vec<DecompEntry>> {
    f.decompose()
        .into_iter()
        .map(|(l, k)| {
            if !k.is_integer() || *k.numer() < 0 {
                return Err(Error::Inconsistent(format!("{} has multiplicity {k}", label_string(&l))));
            }
            Ok(DecompEntry { label: label_string(&l), multiplicity: k.to_integer() })
        })
        .collect()
}

fn summands(terms: &BTreeMap<Vec<IrrepLabel>, i64>) -> Vec<DecompEntry> {
    terms.iter().map(|(l, &k)| DecompEntry { label: label_string(l), multiplicity: k }).collect()
}

fn degree_of(label: &IrrepLabel) -> i64 {
    character(label).degree()
}

pub fn verify_theta_type_ii(m: usize, n: usize) -> Result<ThetaReport> {
    verify_theta_type_ii_with(m, n, TypeAConvention::Identity)
}

pub fn verify_theta_type_ii_with(m: usize, n: usize, conv: TypeAConvention) -> Result<ThetaReport> {
    let factors = vec![Factor::Sym(m), Factor::Sym(n)];
    let sgn = product_character(&factors, &[IrrepLabel::A(Partition::new(vec![1; m])), IrrepLabel::A(Partition::new(vec![1; n]))]);
    let lhs = module_character_type_ii(m, n).pointwise(&sgn);
    let mut rhs = ClassFunction::zero(factors.clone());
    let mut terms: BTreeMap<Vec<IrrepLabel>, i64> = BTreeMap::new();
    for g1 in Partition::all(m as u32) {
        for g2 in Partition::all(n as u32) {
            if !is_relevant_pair(&g1, &g2) {
                continue;
            }
            let k = multiplicity(&g1, &g2) as i64;
            let labels = vec![springer_gl_with(&g1, conv), springer_gl_with(&g2, conv)];
            rhs.add_scaled(k, &product_character(&factors, &labels));
            *terms.entry(labels).or_default() += k;
        }
    }
    Ok(ThetaReport {
        kind: "type II".into(),
        m,
        n,
        module_dimension: lhs.degree(),
        predicted_dimension: rhs.degree(),
        character_equal: Some(lhs == rhs),
        first_difference: lhs.first_difference(&rhs).map(|(c, a, b)| format!("{c:?}: {a} vs {b}")),
        lhs: decomposition(&lhs)?,
        rhs: summands(&terms),
        dropped: 0,
    })
}

/// The predicted summands `E_{γ1,χ1} ⊠ E_{γ2,χ2}` over the relevant
/// quintuples, and the number dropped for a zero label.
pub fn predicted_type_i(m: usize, n: usize, twist: OEvenTwist) -> Result<(BTreeMap<Vec<IrrepLabel>, i64>, usize)> {
    let mut terms = BTreeMap::new();
    let mut dropped = 0;
    for q in enumerate_rq(m as u32, n as u32) {
        let e1 = springer_o_even_with(&q.gamma1, &q.chi1, twist)?;
        let e2 = springer_sp(&q.gamma2, &q.chi2)?;
        match (e1, e2) {
            (Some(a), Some(b)) => *terms.entry(vec![a, b]).or_default() += 1,
            _ => dropped += 1,
        }
    }
    Ok((terms, dropped))
}

pub fn verify_theta_type_i(m: usize, n: usize) -> Result<ThetaReport> {
    verify_theta_type_i_with(m, n, OEvenTwist::Direct, true)
}

/// The dimension identity, and the character identity when `characters` is set.
pub fn verify_theta_type_i_with(m: usize, n: usize, twist: OEvenTwist, characters: bool) -> Result<ThetaReport> {
    let (terms, dropped) = predicted_type_i(m, n, twist)?;
    let predicted_dimension = terms.iter().map(|(l, &k)| k * degree_of(&l[0]) * degree_of(&l[1])).sum();
    let module_dimension = crate::matchings::count_labels(m, n, true) as i64;
    let mut report = ThetaReport {
        kind: "type I".into(),
        m,
        n,
        module_dimension,
        predicted_dimension,
        character_equal: None,
        first_difference: None,
        lhs: Vec::new(),
        rhs: summands(&terms),
        dropped,
    };
    if characters {
        let factors = vec![Factor::Hyp(m), Factor::Hyp(n)];
        let sgn = product_character(&factors, &[sign_length_zero_t(m), coxeter_sign_b(n)]);
        if m >= 1 {
            let t_class = WeylElement::sign_change(m, m);
            let sgn_t = character_value(&sign_length_zero_t(m), &ClassLabel::of(&t_class, true));
            if sgn_t != 1 {
                return Err(Error::Inconsistent("the sign twist must be +1 on t".into()));
            }
        }
        let module = module_character_type_i(m, n)?;
        if module.degree() != module_dimension {
            return Err(Error::Inconsistent("module character degree differs from the label count".into()));
        }
        let lhs = module.pointwise(&sgn);
        let mut rhs = ClassFunction::zero(factors.clone());
        for (l, &k) in &terms {
            rhs.add_scaled(k, &product_character(&factors, l));
        }
        report.character_equal = Some(lhs == rhs);
        report.first_difference = lhs.first_difference(&rhs).map(|(c, a, b)| format!("{c:?}: {a} vs {b}"));
        report.lhs = decomposition(&lhs)?;
    }
    Ok(report)
}

/// Outcome of trying every convention pair at small rank.
#[derive(Clone, Debug, Serialize)]
pub struct Calibration {
    pub type_a: Vec<(TypeAConvention, bool)>,
    pub o_even: Vec<(OEvenTwist, bool)>,
    /// The unique passing pair, if there is one.
    pub chosen: Option<SpringerConventions>,
}

/// Try both type-A conventions on the type II identity at `(2,1)` and both
/// orthogonal twists on the type I identities for `m, n ≤ 2`.
pub fn calibrate() -> Result<Calibration> {
    let mut type_a = Vec::new();
    for conv in [TypeAConvention::Identity, TypeAConvention::Transpose] {
        type_a.push((conv, verify_theta_type_ii_with(2, 1, conv)?.passed()));
    }
    let mut o_even = Vec::new();
    for twist in [OEvenTwist::Direct, OEvenTwist::Twisted] {
        let mut ok = true;
        for m in 0..=2 {
            for n in 0..=2 {
                ok &= verify_theta_type_i_with(m, n, twist, true)?.passed();
            }
        }
        o_even.push((twist, ok));
    }
    let pass_a: Vec<_> = type_a.iter().filter(|x| x.1).map(|x| x.0).collect();
    let pass_o: Vec<_> = o_even.iter().filter(|x| x.1).map(|x| x.0).collect();
    let chosen = (pass_a.len() == 1 && pass_o.len() == 1).then(|| SpringerConventions { type_a: pass_a[0], o_even: pass_o[0] });
    Ok(Calibration { type_a, o_even, chosen })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec())
    }

    #[test]
    fn symmetric_values() {
        let chi = char_symmetric(&p(&[2, 1]));
        let at = |c: &[u32]| chi.values[chi.classes().iter().position(|x| x[0] == ClassLabel::Sym(p(c))).unwrap()];
        assert_eq!(at(&[1, 1, 1]), 2);
        assert_eq!(at(&[2, 1]), 0);
        assert_eq!(at(&[3]), -1);
        let sgn = char_symmetric(&p(&[1, 1]));
        assert_eq!(sgn.values[sgn.classes().iter().position(|x| x[0] == ClassLabel::Sym(p(&[2]))).unwrap()], -1);
    }

    #[test]
    fn tables_are_orthonormal() {
        for k in 0..=4 {
            for f in [Factor::Sym(k), Factor::Hyp(k)] {
                let chars: Vec<_> = f.irreps().iter().map(character).collect();
                let sizes: u64 = f.classes().iter().map(ClassLabel::size).sum();
                assert_eq!(sizes, f.order());
                for (i, a) in chars.iter().enumerate() {
                    for (j, b) in chars.iter().enumerate() {
                        assert_eq!(a.inner(b), Ratio::from_integer(i64::from(i == j)), "{f:?}");
                    }
                }
            }
        }
        let degrees: Vec<i64> = Factor::Hyp(2).irreps().iter().map(|l| character(l).degree()).collect();
        let mut d = degrees.clone();
        d.sort_unstable();
        assert_eq!(d, vec![1, 1, 1, 1, 2]);
    }

    #[test]
    fn linear_characters_of_b() {
        for k in 1..=4 {
            let t = ClassLabel::of(&WeylElement::sign_change(k, k), true);
            let triv = IrrepLabel::B(p(&[k as u32]), p(&[]));
            assert_eq!(character_value(&triv, &t), 1);
            assert_eq!(character_value(&sign_length_zero_t(k), &t), 1);
            assert_eq!(character_value(&coxeter_sign_b(k), &t), -1);
            if k >= 2 {
                let s = ClassLabel::of(&WeylElement::transposition(k, 1), true);
                assert_eq!(character_value(&sign_length_zero_t(k), &s), -1);
                assert_eq!(character_value(&coxeter_sign_b(k), &s), -1);
            }
        }
    }

    #[test]
    fn representatives_have_their_class() {
        for k in 0..=4 {
            for c in Factor::Hyp(k).classes() {
                assert_eq!(ClassLabel::of(&c.representative(), true), c);
            }
            for c in Factor::Sym(k).classes() {
                assert_eq!(ClassLabel::of(&c.representative(), false), c);
            }
        }
    }

    #[test]
    fn small_springer_cases() {
        let triv = |k: usize| IrrepLabel::B(Partition::new(vec![k as u32]), p(&[]));
        assert_eq!(springer_sp(&p(&[1, 1]), &vec![]).unwrap(), Some(coxeter_sign_b(1)));
        assert_eq!(springer_sp(&p(&[2]), &vec![1]).unwrap(), Some(triv(1)));
        assert_eq!(springer_sp(&p(&[2]), &vec![-1]).unwrap(), None);
        assert_eq!(springer_o_even(&p(&[1, 1]), &vec![1]).unwrap(), Some(triv(1)));
        assert_eq!(springer_o_even(&p(&[1, 1]), &vec![-1]).unwrap(), Some(IrrepLabel::B(p(&[]), p(&[1]))));
        assert_eq!(springer_o_even(&p(&[1, 1, 1, 1]), &vec![1]).unwrap(), Some(sign_length_zero_t(2)));
        assert_eq!(springer_gl(&p(&[1, 1])), IrrepLabel::A(p(&[1, 1])));
    }

    #[test]
    fn type_ii_small() {
        let chi = module_character_type_ii(2, 1);
        assert_eq!(chi.degree(), 3);
        assert_eq!(chi, induced_character_type_ii(2, 1));
        let r = verify_theta_type_ii(1, 1).unwrap();
        assert!(r.passed());
        assert_eq!(r.lhs, vec![DecompEntry { label: "[1] ⊠ [1]".into(), multiplicity: 2 }]);
    }

    #[test]
    fn type_i_small() {
        let r = verify_theta_type_i(1, 1).unwrap();
        assert_eq!((r.module_dimension, r.predicted_dimension), (3, 3));
        assert!(r.passed(), "{}", r.to_table());
        let a = VOneAction::new(2, 1).unwrap();
        assert_eq!(a.iota_fixed_points(), 3);
        assert_eq!(a.trace(&WeylElement::sign_change(2, 2), &WeylElement::identity(1)), 3);
    }
}
