//! Fourier bijections between orbit labels.
//!
//! `Ψ_{m,n}: PM(m,n) → PM(n,m)` is computed from the conormal geometry: for
//! the representative `x_σ` (an `n × m` matrix) the fiber of the conormal
//! bundle is `{Y ∈ Mat_{m×n} : x_σ Y and Y x_σ strictly upper triangular}`,
//! and `Ψ(σ)` is the orbit of a generic `Y` in that fiber. On staircase pairs
//! there is a closed formula ([`psi_bullet`]) and the two are cross-checked.
//!
//! `Φ: SPM(m,n) → SPM(n,m)` is assembled from `Ψ` on the positive part after
//! removing the negative arcs, and `ι_m = Φ⁻¹ ∘ t_m ∘ Φ` supplies the action
//! of the length-zero generator on the first model.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::hecke::{braid_word, ts_plus_one_idx, HeckeAlgebra, HeckeType, ModuleVector};
use crate::kl::{cells_of, edge_weight, kl_table, KLTable, WEdge, WGraph};
use crate::linalg::{next_prime, nullspace, rank, Fp, Mat};
use crate::matchings::{Matching, Model, Refl, Side};
use crate::{Error, LaurentPoly, Result};

/// A pair `(I, J)` with `I ⊆ {1..m}`, `J ⊆ {1..n}`, `|I| = |J|`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StaircasePair {
    pub m: usize,
    pub n: usize,
    pub i: Vec<usize>,
    pub j: Vec<usize>,
}

impl StaircasePair {
    pub fn new(m: usize, n: usize, mut i: Vec<usize>, mut j: Vec<usize>) -> Result<Self> {
        i.sort_unstable();
        j.sort_unstable();
        let distinct = |v: &[usize]| v.windows(2).all(|w| w[0] < w[1]);
        if i.len() != j.len() {
            return Err(Error::InvalidInput(format!("|I| = {} but |J| = {}", i.len(), j.len())));
        }
        if !distinct(&i) || !distinct(&j) {
            return Err(Error::InvalidInput("repeated index in a staircase pair".into()));
        }
        if i.iter().any(|&x| x == 0 || x > m) || j.iter().any(|&x| x == 0 || x > n) {
            return Err(Error::InvalidInput(format!("staircase pair out of range for ({m},{n})")));
        }
        Ok(Self { m, n, i, j })
    }

    /// All of `PP(m,n)`.
    pub fn enumerate(m: usize, n: usize) -> Vec<Self> {
        let subsets = |k: usize| -> Vec<Vec<usize>> {
            (0u32..1 << k)
                .map(|mask| (1..=k).filter(|&x| mask >> (x - 1) & 1 == 1).collect())
                .collect()
        };
        let (si, sj) = (subsets(m), subsets(n));
        let mut out = Vec::new();
        for i in &si {
            for j in sj.iter().filter(|j| j.len() == i.len()) {
                out.push(Self { m, n, i: i.clone(), j: j.clone() });
            }
        }
        out.sort();
        out
    }
}

fn cyclic_shift(x: &[usize], k: usize, up: bool) -> Vec<usize> {
    let mut v: Vec<usize> = x
        .iter()
        .map(|&a| if up { a % k + 1 } else if a == 1 { k } else { a - 1 })
        .collect();
    v.sort_unstable();
    v
}

/// `Ψ•: PP(m,n) → PP(n,m)`.
pub fn psi_bullet(mu: &StaircasePair) -> StaircasePair {
    let (m, n) = (mu.m, mu.n);
    if m == 0 || n == 0 {
        return StaircasePair { m: n, n: m, i: Vec::new(), j: Vec::new() };
    }
    let mut q = cyclic_shift(&mu.j, n, true);
    let mut p = cyclic_shift(&mu.i, m, false);
    let one_in_i = mu.i.contains(&1);
    let n_in_j = mu.j.contains(&n);
    if !one_in_i && !n_in_j {
        q.push(1);
        p.push(m);
    } else if one_in_i && n_in_j {
        q.retain(|&x| x != 1);
        p.retain(|&x| x != m);
    }
    q.sort_unstable();
    p.sort_unstable();
    StaircasePair { m: n, n: m, i: q, j: p }
}

/// The label of the generic orbit in the linear subspace of `μ`:
/// push the `J`-runs on a stack and pop them against the `I`-runs.
pub fn pp_to_pm(mu: &StaircasePair) -> Matching {
    let k = mu.i.len();
    let mut stack = Vec::new();
    let mut arcs = Vec::new();
    let mut prev_j = 0;
    for p in 0..k {
        stack.extend(prev_j + 1..=mu.j[p]);
        prev_j = mu.j[p];
        let next_i = if p + 1 < k { mu.i[p + 1] } else { mu.m + 1 };
        for x in mu.i[p]..next_i {
            match stack.pop() {
                Some(y) => arcs.push((x as i32, y as i32)),
                None => break,
            }
        }
    }
    Matching::from_arcs(arcs)
}

/// Recover a partial matching from a `rows × cols` matrix: source `b`
/// (a column) goes to target `a` (a row) iff the mixed second difference of
/// `r(a,b) = rank Y[a.., ..b]` at `(a,b)` is one.
pub fn identify_orbit(f: Fp, y: &Mat, rows: usize, cols: usize) -> Matching {
    let r = |a: usize, b: usize| -> i64 {
        if a > rows || b == 0 {
            return 0;
        }
        let sub: Mat = y[a - 1..rows].iter().map(|row| row[..b].to_vec()).collect();
        rank(f, &sub) as i64
    };
    let mut table = vec![vec![0i64; cols + 1]; rows + 2];
    for (a, row) in table.iter_mut().enumerate().take(rows + 1).skip(1) {
        for (b, x) in row.iter_mut().enumerate().skip(1) {
            *x = r(a, b);
        }
    }
    let mut arcs = Vec::new();
    for b in 1..=cols {
        for a in 1..=rows {
            let d = table[a][b] - table[a][b - 1] - table[a + 1][b] + table[a + 1][b - 1];
            if d == 1 {
                arcs.push((b as i32, a as i32));
            }
        }
    }
    Matching::from_arcs(arcs)
}

/// Dimension of the `B × B`-orbit of a `rows × cols` matrix `Y` under
/// `Y ↦ b Y b'⁻¹`: the rank of `(A, A') ↦ A Y − Y A'` on upper-triangular pairs.
pub fn orbit_dimension(f: Fp, y: &Mat, rows: usize, cols: usize) -> usize {
    let mut gens: Mat = Vec::new();
    for i in 0..rows {
        for j in i..rows {
            // E_ij Y: row i of the result is row j of Y.
            let mut v = vec![0; rows * cols];
            for c in 0..cols {
                v[i * cols + c] = y[j][c];
            }
            gens.push(v);
        }
    }
    for i in 0..cols {
        for j in i..cols {
            // Y E_ij: column j of the result is column i of Y.
            let mut v = vec![0; rows * cols];
            for r in 0..rows {
                v[r * cols + j] = y[r][i];
            }
            gens.push(v);
        }
    }
    if gens.is_empty() {
        return 0;
    }
    rank(f, &gens)
}

/// Sampling parameters for the conormal oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConormalOracle {
    pub prime: u64,
    pub samples: usize,
    pub seed: u64,
    /// Number of prime enlargements before giving up.
    pub retries: usize,
}

impl Default for ConormalOracle {
    fn default() -> Self {
        Self { prime: 10007, samples: 5, seed: 0x7e7a_1ab5, retries: 4 }
    }
}

/// Outcome of one conormal query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConormalAnswer {
    pub label: Matching,
    pub orbit_dim: usize,
    pub fiber_dim: usize,
    pub prime: u64,
    pub attempts: usize,
}

fn query_seed(seed: u64, sigma: &Matching, m: usize, n: usize) -> u64 {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    let mut mix = |x: u64| {
        h ^= x.wrapping_add(0x9e37_79b9_7f4a_7c15).wrapping_add(h << 6).wrapping_add(h >> 2);
    };
    mix(m as u64);
    mix(n as u64);
    for &(a, b) in sigma.arcs() {
        mix(a as u64);
        mix(b as i64 as u64);
    }
    h
}

impl ConormalOracle {
    /// `Ψ_{m,n}(σ)` for `σ ∈ PM(m,n)`.
    pub fn psi(&self, sigma: &Matching, m: usize, n: usize) -> Result<Matching> {
        Ok(self.query(sigma, m, n)?.label)
    }

    pub fn query(&self, sigma: &Matching, m: usize, n: usize) -> Result<ConormalAnswer> {
        let sigma = Matching::checked(sigma.arcs().to_vec(), m, n, false)?;
        let mut prime = if crate::linalg::is_prime(self.prime) { self.prime } else { next_prime(self.prime) };
        let mut rng = ChaCha8Rng::seed_from_u64(query_seed(self.seed, &sigma, m, n));
        for attempt in 0..=self.retries {
            let f = Fp::new(prime);
            let basis = conormal_fiber(f, &sigma, m, n);
            let mut seen: Vec<(Matching, usize)> = Vec::new();
            for _ in 0..self.samples.max(1) {
                let mut y = vec![vec![0u64; n]; m];
                for b in &basis {
                    let c = rng.gen_range(0..prime);
                    for k in 0..m {
                        for l in 0..n {
                            y[k][l] = f.add(y[k][l], f.mul(c, b[k * n + l]));
                        }
                    }
                }
                let label = identify_orbit(f, &y, m, n);
                let dim = orbit_dimension(f, &y, m, n);
                seen.push((label, dim));
            }
            let best = seen.iter().map(|s| s.1).max().unwrap_or(0);
            if seen.iter().all(|s| s == &seen[0]) {
                return Ok(ConormalAnswer {
                    label: seen[0].0.clone(),
                    orbit_dim: best,
                    fiber_dim: basis.len(),
                    prime,
                    attempts: attempt + 1,
                });
            }
            prime = next_prime(prime * 2);
        }
        Err(Error::Inconsistent(format!(
            "conormal samples for {sigma} in PM({m},{n}) disagree after {} primes",
            self.retries + 1
        )))
    }
}

/// Basis of `{Y ∈ Mat_{m×n} : x_σ Y, Y x_σ strictly upper triangular}`,
/// flattened row-major.
fn conormal_fiber(f: Fp, sigma: &Matching, m: usize, n: usize) -> Vec<Vec<u64>> {
    // x_σ is n × m with x[μ(i)][i] = 1.
    let mut x = vec![vec![0u64; m]; n];
    for &(a, b) in sigma.arcs() {
        x[b as usize - 1][a as usize - 1] = 1;
    }
    let var = |k: usize, l: usize| k * n + l;
    let mut eqs: Mat = Vec::new();
    // (x Y)[r][c] = Σ_k x[r][k] Y[k][c], for r ≥ c.
    for r in 0..n {
        for c in 0..=r {
            let mut row = vec![0; m * n];
            for k in 0..m {
                if x[r][k] != 0 {
                    row[var(k, c)] = f.add(row[var(k, c)], x[r][k]);
                }
            }
            eqs.push(row);
        }
    }
    // (Y x)[r][c] = Σ_k Y[r][k] x[k][c], for r ≥ c.
    for r in 0..m {
        for c in 0..=r {
            let mut row = vec![0; m * n];
            for k in 0..n {
                if x[k][c] != 0 {
                    row[var(r, k)] = f.add(row[var(r, k)], x[k][c]);
                }
            }
            eqs.push(row);
        }
    }
    eqs.retain(|r| r.iter().any(|&v| v != 0));
    nullspace(f, &eqs, m * n)
}

/// `Ψ_{m,n}(σ)` with the default oracle and the shared cache.
pub fn conormal_psi(sigma: &Matching, m: usize, n: usize) -> Result<Matching> {
    shared().psi(sigma, m, n)
}

/// `Φ(σ)` with the default oracle and the shared cache.
pub fn phi(sigma: &Matching, m: usize, n: usize) -> Result<Matching> {
    shared().phi(sigma, m, n)
}

pub fn phi_inverse(tau: &Matching, m: usize, n: usize) -> Result<Matching> {
    shared().phi_inverse(tau, m, n)
}

pub fn iota_m(sigma: &Matching, m: usize, n: usize) -> Result<Matching> {
    shared().iota_m(sigma, m, n)
}

static SHARED: OnceLock<Fourier> = OnceLock::new();

/// The process-wide [`Fourier`] instance; the default oracle unless
/// [`init_shared`] ran first.
pub fn shared() -> &'static Fourier {
    SHARED.get_or_init(|| Fourier::new(ConormalOracle::default()))
}

/// Fix the oracle of the shared instance. Fails if it is already in use
/// with different parameters.
pub fn init_shared(oracle: ConormalOracle) -> Result<&'static Fourier> {
    let f = SHARED.get_or_init(|| Fourier::new(oracle));
    if f.oracle != oracle {
        return Err(Error::InvalidInput("the shared Fourier instance is already initialised".into()));
    }
    Ok(f)
}

/// `Φ` on all of `SPM(m,n)` with its inverse.
#[derive(Clone, Debug, Serialize)]
pub struct PhiTable {
    pub m: usize,
    pub n: usize,
    pub pairs: Vec<(Matching, Matching)>,
    #[serde(skip)]
    forward: HashMap<Matching, Matching>,
    #[serde(skip)]
    backward: HashMap<Matching, Matching>,
}

impl PhiTable {
    pub fn get(&self, sigma: &Matching) -> Option<&Matching> {
        self.forward.get(sigma)
    }

    pub fn inverse(&self, tau: &Matching) -> Option<&Matching> {
        self.backward.get(tau)
    }
}

/// Memoizing front end for `Ψ`, `Φ` and `ι_m`. Safe to share between threads.
#[derive(Debug)]
pub struct Fourier {
    pub oracle: ConormalOracle,
    psi_cache: Mutex<HashMap<(usize, usize, Matching), Matching>>,
    phi_cache: Mutex<HashMap<(usize, usize), Arc<PhiTable>>>,
}

impl Fourier {
    pub fn new(oracle: ConormalOracle) -> Self {
        Self { oracle, psi_cache: Mutex::default(), phi_cache: Mutex::default() }
    }

    pub fn psi(&self, sigma: &Matching, m: usize, n: usize) -> Result<Matching> {
        let key = (m, n, sigma.clone());
        if let Some(v) = self.psi_cache.lock().expect("poisoned").get(&key) {
            return Ok(v.clone());
        }
        let v = self.oracle.psi(sigma, m, n)?;
        self.psi_cache.lock().expect("poisoned").insert(key, v.clone());
        Ok(v)
    }

    /// Preload `Ψ` values, e.g. from an on-disk cache.
    pub fn seed_psi(&self, m: usize, n: usize, pairs: impl IntoIterator<Item = (Matching, Matching)>) {
        let mut c = self.psi_cache.lock().expect("poisoned");
        for (a, b) in pairs {
            c.insert((m, n, a), b);
        }
    }

    /// All cached `Ψ` values as `(m, n, σ, Ψ(σ))`.
    pub fn psi_entries(&self) -> Vec<(usize, usize, Matching, Matching)> {
        let c = self.psi_cache.lock().expect("poisoned");
        let mut v: Vec<_> = c.iter().map(|((m, n, a), b)| (*m, *n, a.clone(), b.clone())).collect();
        v.sort();
        v
    }

    /// `Ψ_{m,n}` on every label, in enumeration order.
    pub fn psi_table(&self, m: usize, n: usize) -> Result<Vec<(Matching, Matching)>> {
        Model::TypeII { m, n }
            .enumerate()
            .into_iter()
            .map(|s| {
                let t = self.psi(&s, m, n)?;
                Ok((s, t))
            })
            .collect()
    }

    pub fn phi(&self, sigma: &Matching, m: usize, n: usize) -> Result<Matching> {
        let sigma = Matching::checked(sigma.arcs().to_vec(), m, n, true)?;
        let neg: Vec<(i32, i32)> = sigma.arcs().iter().copied().filter(|a| a.1 < 0).collect();
        let i2: Vec<i32> = neg.iter().map(|a| a.0).collect();
        let j2: Vec<i32> = neg.iter().map(|a| -a.1).collect();
        let s1: Vec<i32> = (1..=m as i32).filter(|x| !i2.contains(x)).collect();
        let s2: Vec<i32> = (1..=n as i32).filter(|x| !j2.contains(x)).collect();
        let pos = |v: &[i32], x: i32| v.iter().position(|&y| y == x).expect("index in Σ") as i32 + 1;
        let plus = Matching::from_arcs(sigma.arcs().iter().filter(|a| a.1 > 0).map(|&(a, b)| (pos(&s1, a), pos(&s2, b))));
        let image = self.psi(&plus, s1.len(), s2.len())?;
        let mut arcs: Vec<(i32, i32)> =
            image.arcs().iter().map(|&(q, p)| (s2[q as usize - 1], s1[p as usize - 1])).collect();
        arcs.extend(neg.iter().map(|&(a, b)| (-b, -a)));
        Ok(Matching::from_arcs(arcs))
    }

    pub fn phi_table(&self, m: usize, n: usize) -> Result<Arc<PhiTable>> {
        if let Some(t) = self.phi_cache.lock().expect("poisoned").get(&(m, n)) {
            return Ok(t.clone());
        }
        let mut pairs = Vec::new();
        let (mut forward, mut backward) = (HashMap::new(), HashMap::new());
        for s in (Model::TypeIM1 { m, n }).enumerate() {
            let t = self.phi(&s, m, n)?;
            if let Some(prev) = backward.insert(t.clone(), s.clone()) {
                return Err(Error::Inconsistent(format!("Φ is not injective: {prev} and {s} both map to {t}")));
            }
            forward.insert(s.clone(), t.clone());
            pairs.push((s, t));
        }
        let table = Arc::new(PhiTable { m, n, pairs, forward, backward });
        self.phi_cache.lock().expect("poisoned").insert((m, n), table.clone());
        Ok(table)
    }

    pub fn phi_inverse(&self, tau: &Matching, m: usize, n: usize) -> Result<Matching> {
        let tau = Matching::checked(tau.arcs().to_vec(), n, m, true)?;
        self.phi_table(m, n)?
            .inverse(&tau)
            .cloned()
            .ok_or_else(|| Error::Inconsistent(format!("{tau} has no preimage under Φ")))
    }

    /// `ι_m(σ) = Φ⁻¹(t_m * Φ(σ))`.
    pub fn iota_m(&self, sigma: &Matching, m: usize, n: usize) -> Result<Matching> {
        if m == 0 {
            return Err(Error::InvalidInput("ι_m needs m ≥ 1".into()));
        }
        let table = self.phi_table(m, n)?;
        let tau = table
            .get(sigma)
            .ok_or_else(|| Error::InvalidInput(format!("{sigma} is not in SPM({m},{n})")))?;
        let flipped = Model::TypeIM2 { m, n }.act_refl(Refl::T, tau)?;
        table
            .inverse(&flipped)
            .cloned()
            .ok_or_else(|| Error::Inconsistent(format!("{flipped} has no preimage under Φ")))
    }

    pub fn glued_bimodule(&self, m: usize, n: usize) -> Result<GluedBimodule> {
        GluedBimodule::build(self, m, n)
    }
}

/// Both KL tables of the type I pair glued along `Φ`, with the length-zero
/// generator acting by `ι_m` on the `C'`-basis.
#[derive(Clone, Debug)]
pub struct GluedBimodule {
    pub m: usize,
    pub n: usize,
    pub model1: KLTable,
    pub model2: KLTable,
    /// Index in `model1` to index in `model2`.
    pub phi: Vec<usize>,
    /// `ι_m` on `model1` indices; the identity when `m = 0`.
    pub iota: Vec<usize>,
    /// Vertices are the `model1` labels.
    pub graph: WGraph,
}

fn reflections_of(model: Model) -> Vec<Refl> {
    model.reflections()
}

impl GluedBimodule {
    fn build(fourier: &Fourier, m: usize, n: usize) -> Result<Self> {
        let model1 = kl_table(Model::TypeIM1 { m, n })?;
        let model2 = kl_table(Model::TypeIM2 { m, n })?;
        let size = model1.len();
        if model2.len() != size {
            return Err(Error::Inconsistent("the two models have different sizes".into()));
        }
        let table = fourier.phi_table(m, n)?;
        let phi: Vec<usize> = model1
            .labels()
            .iter()
            .map(|s| {
                let t = table.get(s).expect("Φ is total");
                model2.orbits.index_of(t).expect("Φ lands in the second model")
            })
            .collect();
        let iota: Vec<usize> = if m == 0 {
            (0..size).collect()
        } else {
            model1
                .labels()
                .iter()
                .map(|s| Ok(model1.orbits.index_of(&fourier.iota_m(s, m, n)?).expect("ι stays in the model")))
                .collect::<Result<_>>()?
        };
        for (i, &j) in iota.iter().enumerate() {
            if iota[j] != i {
                return Err(Error::Inconsistent(format!("ι_m is not an involution at {}", model1.labels()[i])));
            }
        }

        // Descents.
        let r1 = reflections_of(model1.model());
        let r2 = reflections_of(model2.model());
        let mut descents = Vec::with_capacity(size);
        for a in 0..size {
            let d1 = model1.descent_set(a);
            let d2 = model2.descent_set(phi[a]);
            for s in r1.iter().filter(|s| r2.contains(s)) {
                if d1.contains(s) != d2.contains(s) {
                    return Err(Error::Inconsistent(format!(
                        "descent sets disagree on {s} at {}",
                        model1.labels()[a]
                    )));
                }
            }
            let mut d: Vec<Refl> = d1.into_iter().chain(d2).collect();
            d.sort();
            d.dedup();
            descents.push(d);
        }

        // Edges: E₁ ∪ Φ⁻¹E₂ with a single μ.
        let subset = |x: &[Refl], y: &[Refl]| x.iter().all(|s| y.contains(s));
        let mut edges = Vec::new();
        for a in 0..size {
            for b in 0..size {
                if a == b {
                    continue;
                }
                let in1 = !subset(&model1.descent_set(b), &model1.descent_set(a));
                let in2 = !subset(&model2.descent_set(phi[b]), &model2.descent_set(phi[a]));
                let mu1 = if in1 { edge_weight(&model1, a, b) } else { 0 };
                let mu2 = if in2 { edge_weight(&model2, phi[a], phi[b]) } else { 0 };
                if mu1 != 0 && mu2 != 0 && mu1 != mu2 {
                    return Err(Error::Inconsistent(format!(
                        "μ is not well defined on {} → {}",
                        model1.labels()[a],
                        model1.labels()[b]
                    )));
                }
                let mu = if mu1 != 0 { mu1 } else { mu2 };
                if mu != 0 {
                    edges.push(WEdge { from: a, to: b, mu });
                }
            }
        }
        let graph = WGraph { vertices: model1.labels().to_vec(), descents, edges };
        let glued = Self { m, n, model1, model2, phi, iota, graph };
        glued.check_iota_symmetry()?;
        glued.check_action()?;
        Ok(glued)
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn mu(&self, a: usize, b: usize) -> i64 {
        self.graph.edges.iter().find(|e| e.from == a && e.to == b).map_or(0, |e| e.mu)
    }

    fn check_iota_symmetry(&self) -> Result<()> {
        for e in &self.graph.edges {
            if self.mu(self.iota[e.from], self.iota[e.to]) != e.mu {
                return Err(Error::Inconsistent(format!(
                    "μ is not ι_m-symmetric on {} → {}",
                    self.graph.vertices[e.from], self.graph.vertices[e.to]
                )));
            }
        }
        Ok(())
    }

    /// Generators of the two algebras acting on the glued module.
    pub fn generators(&self) -> (Vec<Refl>, Vec<Refl>) {
        (
            HeckeAlgebra::new(HeckeType::OEven(self.m), Side::First).generators,
            HeckeAlgebra::new(HeckeType::BC(self.n), Side::Second).generators,
        )
    }

    /// `T_s` on a vector written in the `C'`-basis, from the glued graph.
    pub fn act(&self, s: Refl, x: &ModuleVector) -> ModuleVector {
        let size = self.len();
        let mut out = ModuleVector::zero(size);
        for a in x.support() {
            let c = &x.coords[a];
            if s == Refl::T {
                out.coords[self.iota[a]] += c;
            } else if self.graph.descents[a].contains(&s) {
                out.coords[a] += &(c * &LaurentPoly::v_pow(2));
            } else {
                out.coords[a] -= c;
                for e in self.graph.edges.iter().filter(|e| e.from == a && self.graph.descents[e.to].contains(&s)) {
                    out.coords[e.to] += &(c * &LaurentPoly::monomial(e.mu, 1));
                }
            }
        }
        out
    }

    pub fn act_word(&self, word: &[Refl], x: &ModuleVector) -> ModuleVector {
        word.iter().rev().fold(x.clone(), |acc, &s| self.act(s, &acc))
    }

    /// The glued formulas agree with the geometric action of every
    /// length-one generator, computed in whichever model it lives in. For the
    /// shared generators this says `Φ` carries `C'` to `C'` as modules.
    fn check_action(&self) -> Result<()> {
        let size = self.len();
        for (table, map) in [(&self.model1, None), (&self.model2, Some(&self.phi))] {
            for (r, &s) in table.orbits.reflections.iter().enumerate() {
                for a in 0..size {
                    let ia = map.map_or(a, |p| p[a]);
                    let c = &table.cprime[ia];
                    let lhs = ts_plus_one_idx(&table.orbits, r, c).sub(c);
                    let coeffs = self.act(s, &ModuleVector::basis(size, a));
                    let mut rhs = ModuleVector::zero(size);
                    for b in coeffs.support() {
                        let ib = map.map_or(b, |p| p[b]);
                        rhs.add_scaled(&coeffs.coords[b], &table.cprime[ib]);
                    }
                    if lhs != rhs {
                        return Err(Error::Inconsistent(format!(
                            "glued action of {s} disagrees with {} at {}",
                            table.model(),
                            self.graph.vertices[a]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Quadratic, braid and commutation relations of both algebras,
    /// including those involving `T_{t_m}`, on every basis vector.
    pub fn check_relations(&self) -> Result<()> {
        let size = self.len();
        let (h1, h2) = self.generators();
        let alg1 = HeckeAlgebra::new(HeckeType::OEven(self.m), Side::First);
        let alg2 = HeckeAlgebra::new(HeckeType::BC(self.n), Side::Second);
        let all: Vec<Refl> = h1.iter().chain(&h2).copied().collect();
        let fail = |what: String, a: usize| Error::Inconsistent(format!("{what} fails on C'_{}", self.graph.vertices[a]));
        for a in 0..size {
            let e = ModuleVector::basis(size, a);
            for &s in &all {
                let q = if s == Refl::T { LaurentPoly::one() } else { LaurentPoly::v_pow(2) };
                let t = self.act(s, &e);
                let lhs = self.act(s, &t.sub(&e.scale(&q))).add(&t.sub(&e.scale(&q)));
                if !lhs.is_zero() {
                    return Err(fail(format!("quadratic relation of {s}"), a));
                }
            }
            let mut pairs: Vec<(Refl, Refl, usize)> = alg1.braid_relations();
            pairs.extend(alg2.braid_relations());
            for &x in &h1 {
                for &y in &h2 {
                    pairs.push((x, y, 2));
                }
            }
            if self.m >= 1 {
                for i in 1..self.m.saturating_sub(1) {
                    pairs.push((Refl::T, Refl::S(i), 2));
                }
            }
            for (x, y, k) in pairs {
                if self.act_word(&braid_word(x, y, k), &e) != self.act_word(&braid_word(y, x, k), &e) {
                    return Err(fail(format!("braid relation ({x},{y}) of order {k}"), a));
                }
            }
            if self.m >= 2 {
                let m = self.m;
                let lhs = self.act_word(&[Refl::T, Refl::S(m - 1), Refl::T], &e);
                if lhs != self.act(Refl::S(m), &e) {
                    return Err(fail(format!("T_t T_s{} T_t = T_s{m}", m - 1), a));
                }
            }
        }
        Ok(())
    }

    /// Cells of the glued graph; the `ι_m` pairs are not edges.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        cells_of(self.len(), self.graph.edges.iter().map(|e| (e.from, e.to)))
    }

    /// Unordered `ι_m`-orbits of size two.
    pub fn iota_swaps(&self) -> Vec<(usize, usize)> {
        (0..self.len()).filter(|&a| self.iota[a] > a).map(|a| (a, self.iota[a])).collect()
    }

    pub fn to_dot(&self) -> String {
        self.graph.to_dot(&format!("glued_{}_{}", self.m, self.n), &self.iota_swaps())
    }
}

/// Comparison of the two KL tables of a type I pair across `Φ`.
#[derive(Clone, Debug, Serialize)]
pub struct TransportReport {
    pub m: usize,
    pub n: usize,
    /// Pairs `(β, σ)` of the first model compared.
    pub pairs: usize,
    /// `(β, σ, P^{M1}_{β,σ}, P^{M2}_{Φβ,Φσ})` wherever the two differ.
    pub standard_mismatches: Vec<(Matching, Matching, String, String)>,
    /// Labels with `dim O_σ ≠ dim O_{Φσ}`.
    pub dimension_shifts: usize,
    /// Whether `C'_σ ↦ C'_{Φσ}` intertwines the two Hecke actions.
    pub cprime_transport: bool,
    pub cprime_error: Option<String>,
}

impl TransportReport {
    pub fn standard_equal(&self) -> bool {
        self.standard_mismatches.is_empty()
    }
}

/// Compare `P^{M1}_{β,σ}` with `P^{M2}_{Φβ,Φσ}` for every pair, and check
/// that `Φ` transports the `C'`-bases.
pub fn kl_transport(fourier: &Fourier, m: usize, n: usize) -> Result<TransportReport> {
    let t1 = kl_table(Model::TypeIM1 { m, n })?;
    let t2 = kl_table(Model::TypeIM2 { m, n })?;
    let table = fourier.phi_table(m, n)?;
    let image = |s: &Matching| -> Result<usize> {
        let t = table.get(s).ok_or_else(|| Error::Inconsistent(format!("Φ undefined on {s}")))?;
        t2.orbits.index_of(t).ok_or_else(|| Error::Inconsistent(format!("{t} is not a label of {}", t2.model())))
    };
    let phi: Vec<usize> = t1.labels().iter().map(image).collect::<Result<_>>()?;
    let mut standard_mismatches = Vec::new();
    for b in 0..t1.len() {
        for s in 0..t1.len() {
            let (p1, p2) = (t1.poly(b, s), t2.poly(phi[b], phi[s]));
            if p1 != p2 {
                standard_mismatches.push((t1.labels()[b].clone(), t1.labels()[s].clone(), p1.to_string(), p2.to_string()));
            }
        }
    }
    let dimension_shifts = (0..t1.len()).filter(|&i| t1.dim(i) != t2.dim(phi[i])).count();
    let glued = fourier.glued_bimodule(m, n);
    Ok(TransportReport {
        m,
        n,
        pairs: t1.len() * t1.len(),
        standard_mismatches,
        dimension_shifts,
        cprime_transport: glued.is_ok(),
        cprime_error: glued.err().map(|e| e.to_string()),
    })
}

/// `glued_bimodule(m, n)` through the shared [`Fourier`] instance.
pub fn glued_bimodule(m: usize, n: usize) -> Result<GluedBimodule> {
    shared().glued_bimodule(m, n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mt(s: &str) -> Matching {
        s.parse().unwrap()
    }

    #[test]
    fn staircase_examples() {
        let e = StaircasePair::new(2, 2, vec![], vec![]).unwrap();
        let image = psi_bullet(&e);
        assert_eq!((image.i.clone(), image.j.clone()), (vec![1], vec![2]));
        assert_eq!(pp_to_pm(&image), mt("1>2, 2>1"));
        assert!(pp_to_pm(&e).is_empty());
        assert_eq!(pp_to_pm(&StaircasePair::new(1, 1, vec![1], vec![1]).unwrap()), mt("1>1"));
        let shrink = StaircasePair::new(2, 2, vec![1], vec![2]).unwrap();
        assert!(psi_bullet(&shrink).i.is_empty());
        assert!(StaircasePair::new(2, 2, vec![1], vec![]).is_err());
    }

    #[test]
    fn psi_bullet_is_involutive() {
        for m in 0..=4 {
            for n in 0..=4 {
                for mu in StaircasePair::enumerate(m, n) {
                    assert_eq!(psi_bullet(&psi_bullet(&mu)), mu);
                }
            }
        }
    }

    #[test]
    fn conormal_examples() {
        assert_eq!(conormal_psi(&Matching::empty(), 2, 2).unwrap(), mt("1>2, 2>1"));
        assert_eq!(conormal_psi(&mt("2>1"), 2, 1).unwrap(), mt("1>1"));
        assert_eq!(conormal_psi(&Matching::empty(), 2, 1).unwrap(), mt("1>2"));
    }

    #[test]
    fn phi_small_table() {
        let expect = [("∅", "1>2"), ("2>1", "1>1"), ("1>1", "∅"), ("2>-1", "1>-2"), ("1>-1", "1>-1")];
        for (a, b) in expect {
            assert_eq!(phi(&mt(a), 2, 1).unwrap(), mt(b), "Φ({a})");
        }
        assert_eq!(iota_m(&Matching::empty(), 2, 1).unwrap(), mt("2>-1"));
        assert_eq!(iota_m(&mt("2>-1"), 2, 1).unwrap(), Matching::empty());
        assert_eq!(iota_m(&mt("1>1"), 2, 1).unwrap(), mt("1>1"));
    }

    #[test]
    fn glued_small() {
        let g = glued_bimodule(2, 1).unwrap();
        assert_eq!(g.cells().len(), 5);
        let i = g.model1.orbits.index_of(&mt("1>-1")).unwrap();
        assert_eq!(g.graph.descents[i], vec![Refl::S(1), Refl::S(2), Refl::Sp(1)]);
        g.check_relations().unwrap();
    }
}
