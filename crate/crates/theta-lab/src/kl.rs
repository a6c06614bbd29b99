//! Kazhdan-Lusztig bases of the spherical modules, W-graphs and cells.
//!
//! `C'_σ` is built level by level in dimension. Minimal orbits have smooth
//! linear closures, so `C'_σ = v^{-d} Σ 1_β` over the closure. Every other
//! label is `s * σ'` for some `(s, σ')` of type U-, and
//! `v^{-1}(T_s + 1) C'_{σ'} = C'_σ + Σ μ_β C'_β`; the `μ_β` are peeled off in
//! decreasing dimension.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;
use serde::{Deserialize, Serialize};

use crate::hecke::{ts_plus_one_idx, LaurentPoly, ModuleVector};
use crate::matchings::{Kind, Matching, Model, OrbitTable, Refl};
use crate::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlStats {
    /// Nonzero `μ_β` peeled off during the recursion.
    pub mu_extractions: usize,
    /// Labels whose `C'` was recomputed along a second U- predecessor.
    pub alternate_paths_checked: usize,
    /// Individual polynomial checks (degree, parity, positivity, constant term).
    pub polynomial_checks: usize,
}

#[derive(Clone, Debug)]
pub struct KLTable {
    pub orbits: OrbitTable,
    /// `C'_σ` for every label index.
    pub cprime: Vec<ModuleVector>,
    pub stats: KlStats,
}

impl KLTable {
    pub fn model(&self) -> Model {
        self.orbits.model
    }

    pub fn len(&self) -> usize {
        self.orbits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orbits.is_empty()
    }

    pub fn labels(&self) -> &[Matching] {
        &self.orbits.labels
    }

    pub fn dim(&self, i: usize) -> usize {
        self.orbits.dims[i]
    }

    /// `P_{β,σ}(v) = v^{d_σ} · [1_β] C'_σ`, by index.
    pub fn poly(&self, beta: usize, sigma: usize) -> LaurentPoly {
        self.cprime[sigma].coords[beta].shift(self.dim(sigma) as i32)
    }

    pub fn kl_poly(&self, beta: &Matching, sigma: &Matching) -> Result<LaurentPoly> {
        Ok(self.poly(self.idx(beta)?, self.idx(sigma)?))
    }

    fn idx(&self, x: &Matching) -> Result<usize> {
        self.orbits
            .index_of(x)
            .ok_or_else(|| Error::InvalidInput(format!("{x} is not a label of {}", self.model())))
    }

    pub fn descent_set(&self, i: usize) -> Vec<Refl> {
        self.orbits.descent_indices(i).into_iter().map(|r| self.orbits.reflections[r]).collect()
    }

    /// Indices `β` with `P_{β,σ} ≠ 0`.
    pub fn lower_set(&self, sigma: usize) -> Vec<usize> {
        self.cprime[sigma].support().collect()
    }

    pub fn leq_idx(&self, beta: usize, sigma: usize) -> bool {
        !self.cprime[sigma].coords[beta].is_zero()
    }

    pub fn to_json(&self) -> KlTableJson {
        let labels = self.labels();
        KlTableJson {
            model: self.model(),
            orbits: (0..self.len())
                .map(|i| KlEntryJson {
                    label: labels[i].clone(),
                    dim: self.dim(i),
                    descents: self.descent_set(i).iter().map(ToString::to_string).collect(),
                    kl_polys: self
                        .lower_set(i)
                        .into_iter()
                        .map(|b| (labels[b].to_string(), self.poly(b, i)))
                        .collect(),
                })
                .collect(),
            stats: self.stats.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlEntryJson {
    pub label: Matching,
    pub dim: usize,
    pub descents: Vec<String>,
    /// `P_{β,σ}` keyed by `β`, as exponent → coefficient maps in `v`.
    pub kl_polys: BTreeMap<String, LaurentPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KlTableJson {
    pub model: Model,
    pub orbits: Vec<KlEntryJson>,
    pub stats: KlStats,
}

fn check_column(orbits: &OrbitTable, sigma: usize, c: &ModuleVector, stats: &mut KlStats) -> Result<()> {
    let ds = orbits.dims[sigma] as i32;
    let name = &orbits.labels[sigma];
    if c.coords[sigma] != LaurentPoly::v_pow(-ds) {
        return Err(Error::Inconsistent(format!("C'_{name} has diagonal coefficient {}", c.coords[sigma])));
    }
    for b in c.support() {
        if b == sigma {
            continue;
        }
        let p = c.coords[b].shift(ds);
        let db = orbits.dims[b] as i32;
        let bad = |why: &str| Error::Inconsistent(format!("P_{{{},{name}}} = {p}: {why}", orbits.labels[b]));
        if p.min_exp() != Some(0) || p.coeff(0) != 1 {
            return Err(bad("constant term is not 1"));
        }
        if p.max_exp().unwrap() > ds - db - 1 {
            return Err(bad("degree bound violated"));
        }
        if p.terms().any(|(e, c)| c < 0 || e % 2 != 0) {
            return Err(bad("negative or odd-degree coefficient"));
        }
        stats.polynomial_checks += 1;
    }
    Ok(())
}

/// `v^{-1}(T_s+1) C'_{σ'}` minus the lower KL terms.
fn step(orbits: &OrbitTable, cprime: &[Option<ModuleVector>], order: &[usize], r: usize, from: usize, to: usize, stats: &mut KlStats) -> Result<ModuleVector> {
    let src = cprime[from].as_ref().expect("predecessor computed first");
    let mut d = ts_plus_one_idx(orbits, r, src).shift(-1);
    let dt = orbits.dims[to];
    for &b in order.iter().rev() {
        if b == to || orbits.dims[b] >= dt {
            continue;
        }
        let mu = d.coords[b].coeff(-(orbits.dims[b] as i32));
        if mu == 0 {
            continue;
        }
        let s = orbits.reflections[r];
        if mu < 0 {
            return Err(Error::Inconsistent(format!("μ = {mu} < 0 at {} building {} via {s}", orbits.labels[b], orbits.labels[to])));
        }
        if orbits.kinds[r][b] == Kind::UMinus {
            return Err(Error::Inconsistent(format!("μ = {mu} at {} but {s} is not a descent there", orbits.labels[b])));
        }
        let cb = cprime[b].as_ref().expect("lower dimension computed");
        d.add_scaled(&LaurentPoly::from(-mu), cb);
        stats.mu_extractions += 1;
    }
    Ok(d)
}

pub fn kl_table(model: Model) -> Result<KLTable> {
    let orbits = OrbitTable::new(model)?;
    let n = orbits.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| (orbits.dims[i], i));
    let mut cprime: Vec<Option<ModuleVector>> = vec![None; n];
    let mut stats = KlStats::default();

    for &s in &orbits.minimal {
        let sigma = &orbits.labels[s];
        let mut c = ModuleVector::zero(n);
        let d = orbits.dims[s] as i32;
        for beta in orbits.model.linear_closure(sigma) {
            c.coords[orbits.index_of(&beta).expect("closure inside labels")] = LaurentPoly::v_pow(-d);
        }
        check_column(&orbits, s, &c, &mut stats)?;
        cprime[s] = Some(c);
    }

    let mut preds: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for r in 0..orbits.reflections.len() {
        for i in 0..n {
            if orbits.kinds[r][i] == Kind::UMinus {
                preds[orbits.action[r][i]].push((r, i));
            }
        }
    }

    for &sigma in &order {
        if cprime[sigma].is_some() {
            continue;
        }
        let (&(r, from), rest) = preds[sigma]
            .split_first()
            .ok_or_else(|| Error::Inconsistent(format!("{} is neither minimal nor a U- companion", orbits.labels[sigma])))?;
        let c = step(&orbits, &cprime, &order, r, from, sigma, &mut stats)?;
        check_column(&orbits, sigma, &c, &mut stats)?;
        for &(r2, from2) in rest {
            let alt = step(&orbits, &cprime, &order, r2, from2, sigma, &mut stats)?;
            if alt != c {
                return Err(Error::Inconsistent(format!(
                    "C'_{} depends on the path ({} from {} vs {} from {})",
                    orbits.labels[sigma], orbits.reflections[r], orbits.labels[from], orbits.reflections[r2], orbits.labels[from2]
                )));
            }
        }
        if !rest.is_empty() {
            stats.alternate_paths_checked += 1;
        }
        cprime[sigma] = Some(c);
    }

    Ok(KLTable { orbits, cprime: cprime.into_iter().map(Option::unwrap).collect(), stats })
}

pub fn bruhat_leq(table: &KLTable, beta: &Matching, sigma: &Matching) -> Result<bool> {
    Ok(!table.kl_poly(beta, sigma)?.is_zero())
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WEdge {
    pub from: usize,
    pub to: usize,
    pub mu: i64,
}

/// A W-graph: descent sets on vertices and μ-weighted directed edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WGraph {
    pub vertices: Vec<Matching>,
    pub descents: Vec<Vec<Refl>>,
    pub edges: Vec<WEdge>,
}

fn subset(a: &[Refl], b: &[Refl]) -> bool {
    a.iter().all(|x| b.contains(x))
}

/// `μ(α → β)` from the degree condition, or 0.
pub(crate) fn edge_weight(table: &KLTable, alpha: usize, beta: usize) -> i64 {
    let (da, db) = (table.dim(alpha) as i32, table.dim(beta) as i32);
    if table.leq_idx(beta, alpha) {
        let p = table.poly(beta, alpha);
        if p.max_exp() == Some(da - db - 1) {
            return p.coeff(da - db - 1);
        }
    } else if table.leq_idx(alpha, beta) {
        let p = table.poly(alpha, beta);
        if p.max_exp() == Some(db - da - 1) {
            return p.coeff(db - da - 1);
        }
    }
    0
}

/// Build the W-graph and verify the action formulas
/// `T_s C'_α = v² C'_α` for `s ∈ D(α)` and
/// `T_s C'_α = -C'_α + v Σ_{α→β, s∈D(β)} μ C'_β` otherwise.
pub fn w_graph(table: &KLTable) -> Result<WGraph> {
    let n = table.len();
    let descents: Vec<Vec<Refl>> = (0..n).map(|i| table.descent_set(i)).collect();
    let mut edges = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a == b || subset(&descents[b], &descents[a]) {
                continue;
            }
            let mu = edge_weight(table, a, b);
            if mu != 0 {
                edges.push(WEdge { from: a, to: b, mu });
            }
        }
    }
    let g = WGraph { vertices: table.labels().to_vec(), descents, edges };
    verify_action(table, &g)?;
    Ok(g)
}

fn verify_action(table: &KLTable, g: &WGraph) -> Result<()> {
    let orbits = &table.orbits;
    for (r, &s) in orbits.reflections.iter().enumerate() {
        for a in 0..table.len() {
            let c = &table.cprime[a];
            let lhs = ts_plus_one_idx(orbits, r, c).sub(c);
            let rhs = if g.descents[a].contains(&s) {
                c.shift(2)
            } else {
                let mut acc = ModuleVector::zero(table.len()).sub(c);
                for e in g.edges.iter().filter(|e| e.from == a && g.descents[e.to].contains(&s)) {
                    acc.add_scaled(&LaurentPoly::monomial(e.mu, 1), &table.cprime[e.to]);
                }
                acc
            };
            if lhs != rhs {
                return Err(Error::Inconsistent(format!("W-graph action formula fails for {s} on C'_{}", orbits.labels[a])));
            }
        }
    }
    Ok(())
}

impl WGraph {
    /// Strongly connected components of the edge relation, each sorted,
    /// ordered by smallest member.
    pub fn cells(&self) -> Vec<Vec<usize>> {
        cells_of(self.vertices.len(), self.edges.iter().map(|e| (e.from, e.to)))
    }

    pub fn edge_set(&self) -> Vec<(Matching, Matching, i64)> {
        let mut v: Vec<_> = self
            .edges
            .iter()
            .map(|e| (self.vertices[e.from].clone(), self.vertices[e.to].clone(), e.mu))
            .collect();
        v.sort();
        v
    }

    /// Graphviz rendering with deterministic ordering. Pairs in `swaps`
    /// are drawn as dashed two-headed edges.
    pub fn to_dot(&self, name: &str, swaps: &[(usize, usize)]) -> String {
        let mut s = format!("digraph \"{name}\" {{\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let d: Vec<String> = self.descents[i].iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "  n{i} [label=\"{v}\\n{{{}}}\"];", d.join(","));
        }
        let mut edges = self.edges.clone();
        edges.sort();
        for e in &edges {
            let _ = writeln!(s, "  n{} -> n{} [label=\"{}\"];", e.from, e.to, e.mu);
        }
        for &(a, b) in swaps {
            let _ = writeln!(s, "  n{a} -> n{b} [dir=both, style=dashed];");
        }
        s.push_str("}\n");
        s
    }
}

pub fn cells(graph: &WGraph) -> Vec<Vec<usize>> {
    graph.cells()
}

pub(crate) fn cells_of(n: usize, edges: impl Iterator<Item = (usize, usize)>) -> Vec<Vec<usize>> {
    let mut g = DiGraph::<(), ()>::new();
    let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
    for (a, b) in edges {
        g.add_edge(nodes[a], nodes[b], ());
    }
    let mut out: Vec<Vec<usize>> = tarjan_scc(&g)
        .into_iter()
        .map(|c| {
            let mut v: Vec<usize> = c.into_iter().map(|x| x.index()).collect();
            v.sort_unstable();
            v
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(s: &str) -> Matching {
        s.parse().unwrap()
    }

    fn poly_1_t2() -> LaurentPoly {
        LaurentPoly::from_terms([(0, 1), (2, 1)])
    }

    #[test]
    fn type_two_example() {
        let t = kl_table(Model::TypeII { m: 2, n: 2 }).unwrap();
        let top = lab("1>2");
        for (b, beta) in t.labels().iter().enumerate() {
            for (s, sigma) in t.labels().iter().enumerate() {
                let p = t.poly(b, s);
                if p.is_zero() {
                    continue;
                }
                if beta.is_empty() && *sigma == top {
                    assert_eq!(p, poly_1_t2());
                } else {
                    assert_eq!(p, LaurentPoly::one(), "P_{{{beta},{sigma}}}");
                }
            }
            assert!(t.leq_idx(t.orbits.index_of(&Matching::empty()).unwrap(), b));
        }
        let g = w_graph(&t).unwrap();
        assert!(g.edges.iter().all(|e| e.mu == 1));
        assert_eq!(g.cells().len(), 7);
    }

    #[test]
    fn model_one_example() {
        let t = kl_table(Model::TypeIM1 { m: 2, n: 1 }).unwrap();
        assert_eq!(t.kl_poly(&Matching::empty(), &lab("1>-1")).unwrap(), poly_1_t2());
        assert!(bruhat_leq(&t, &lab("1>1"), &lab("1>-1")).unwrap());
        assert!(!bruhat_leq(&t, &lab("2>-1"), &lab("1>1")).unwrap());
        let g = w_graph(&t).unwrap();
        let mut edges: Vec<(String, String)> = g.edge_set().into_iter().map(|(a, b, _)| (a.to_string(), b.to_string())).collect();
        edges.sort();
        let expect = [("1>1", "1>-1"), ("2>-1", "1>-1"), ("2>1", "∅"), ("2>1", "1>1"), ("2>1", "2>-1")];
        let mut expect: Vec<(String, String)> = expect.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
        expect.sort();
        assert_eq!(edges, expect);
    }

    #[test]
    fn trivial_model() {
        let t = kl_table(Model::TypeII { m: 0, n: 2 }).unwrap();
        assert_eq!(t.cprime[0], ModuleVector::basis(1, 0));
        let g = w_graph(&t).unwrap();
        assert!(g.edges.is_empty());
        assert_eq!(g.cells(), vec![vec![0]]);
        assert!(cells_of(0, std::iter::empty()).is_empty());
    }

    #[test]
    fn all_small_tables() {
        for m in 0..=3 {
            for n in 0..=3 {
                for model in [Model::TypeII { m, n }, Model::TypeIM1 { m, n }, Model::TypeIM2 { m, n }] {
                    let t = kl_table(model).unwrap_or_else(|e| panic!("{model}: {e}"));
                    w_graph(&t).unwrap_or_else(|e| panic!("{model}: {e}"));
                }
            }
        }
    }

    #[test]
    fn dot_is_stable() {
        let t = kl_table(Model::TypeIM1 { m: 2, n: 1 }).unwrap();
        let g = w_graph(&t).unwrap();
        let a = g.to_dot("g", &[]);
        assert_eq!(a, g.to_dot("g", &[]));
        assert!(a.starts_with("digraph \"g\" {\n") && a.ends_with("}\n"));
        assert_eq!(a.matches("->").count(), g.edges.len());
    }
}
