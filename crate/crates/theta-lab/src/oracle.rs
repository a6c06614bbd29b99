//! Brute-force checks over a prime field `F_q`.
//!
//! Points are matrices whose rows index the target basis and whose columns
//! index the source basis. For a form space the target basis is ordered
//! `f_1, …, f_r, f_{-r}, …, f_{-1}` with `⟨f_i, f_{-i}⟩ = 1`, so the standard
//! Borel is upper triangular. The row group acts by `X ↦ gX` and the column
//! group by `X ↦ Xa⁻¹`.
//!
//! * [`enumerate_orbits_fq`]: union-find closure under Borel generators
//! * [`convolution_check`]: `1_{P_s} * 1_α` against the symbolic `(T_s + 1) 1_α` at `v² = q`
//! * [`finite_fourier_check`]: staircase subspaces, intertwining and the double transform on `Hom(L1, L2)`

use num_rational::Ratio;
use serde::Serialize;

use crate::fourier::{orbit_dimension, pp_to_pm, psi_bullet, StaircasePair};
use crate::hecke::{specialize, ts_plus_one, ModuleVector, Specialization};
use crate::linalg::{identity, is_prime, mat_inverse, mat_mul, Fp, Mat};
use crate::matchings::{Matching, Model, OrbitTable, Refl, Side};
use crate::{Error, Result};

/// Largest ambient point count any check will enumerate.
pub const POINT_BUDGET: u64 = 10_000_000;

/// Largest ambient size for the full transform matrices.
const TRANSFORM_BUDGET: u64 = 200_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Form {
    Linear,
    Symplectic,
    Orthogonal,
}

/// An acting group with its standard Borel.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Group {
    form: Form,
    rank: usize,
}

type RootEntries = Vec<(i32, i32, i64)>;

impl Group {
    fn dim(self) -> usize {
        match self.form {
            Form::Linear => self.rank,
            _ => 2 * self.rank,
        }
    }

    fn pos(self, a: i32) -> usize {
        if a > 0 {
            a as usize - 1
        } else {
            2 * self.rank - a.unsigned_abs() as usize
        }
    }

    fn gram(self, f: Fp) -> Option<Mat> {
        let d = self.dim();
        let mut g = vec![vec![0; d]; d];
        let back = match self.form {
            Form::Linear => return None,
            Form::Symplectic => f.neg(1),
            Form::Orthogonal => 1,
        };
        for i in 1..=self.rank as i32 {
            g[self.pos(i)][self.pos(-i)] = 1;
            g[self.pos(-i)][self.pos(i)] = back;
        }
        Some(g)
    }

    /// `1 + c Σ sign·E_{ab}`, where `E_{ab}` sends `f_b` to `f_a`.
    fn root_element(self, f: Fp, c: u64, entries: &[(i32, i32, i64)]) -> Mat {
        let mut g = identity(self.dim());
        for &(a, b, s) in entries {
            let (i, j) = (self.pos(a), self.pos(b));
            g[i][j] = f.add(g[i][j], f.mul(c, f.of(s)));
        }
        g
    }

    fn positive_roots(self) -> Vec<RootEntries> {
        let r = self.rank as i32;
        let mut out = Vec::new();
        for i in 1..=r {
            for j in i + 1..=r {
                match self.form {
                    Form::Linear => out.push(vec![(i, j, 1)]),
                    Form::Symplectic => {
                        out.push(vec![(i, j, 1), (-j, -i, -1)]);
                        out.push(vec![(i, -j, 1), (j, -i, 1)]);
                    }
                    Form::Orthogonal => {
                        out.push(vec![(i, j, 1), (-j, -i, -1)]);
                        out.push(vec![(i, -j, 1), (j, -i, -1)]);
                    }
                }
            }
            if self.form == Form::Symplectic {
                out.push(vec![(i, -i, 1)]);
            }
        }
        out
    }

    fn simple_root(self, i: usize) -> Option<RootEntries> {
        let (r, k) = (self.rank, i as i32);
        match self.form {
            _ if i >= 1 && i < r => Some(match self.form {
                Form::Linear => vec![(k, k + 1, 1)],
                _ => vec![(k, k + 1, 1), (-(k + 1), -k, -1)],
            }),
            Form::Symplectic if i == r && r >= 1 => Some(vec![(k, -k, 1)]),
            Form::Orthogonal if i == r && r >= 2 => Some(vec![(k - 1, -k, 1), (k, -(k - 1), -1)]),
            _ => None,
        }
    }

    /// Matrix sending `f_from` to `sign·f_to` for each listed triple, identity elsewhere.
    fn monomial(self, f: Fp, moves: &[(i32, i32, i64)]) -> Mat {
        let d = self.dim();
        let mut g = identity(d);
        for &(from, _, _) in moves {
            g[self.pos(from)][self.pos(from)] = 0;
        }
        for &(from, to, s) in moves {
            g[self.pos(to)][self.pos(from)] = f.of(s);
        }
        g
    }

    /// A representative of the simple reflection `i` in the normaliser of the torus.
    fn weyl_rep(self, f: Fp, i: usize) -> Mat {
        let (r, k) = (self.rank, i as i32);
        if i < r {
            let mut moves = vec![(k, k + 1, 1), (k + 1, k, 1)];
            if self.form != Form::Linear {
                moves.extend([(-k, -(k + 1), 1), (-(k + 1), -k, 1)]);
            }
            return self.monomial(f, &moves);
        }
        match self.form {
            Form::Symplectic => self.monomial(f, &[(k, -k, 1), (-k, k, -1)]),
            Form::Orthogonal => self.monomial(f, &[(k - 1, -k, 1), (-k, k - 1, 1), (k, -(k - 1), 1), (-(k - 1), k, 1)]),
            Form::Linear => unreachable!("no reflection {i} in GL_{r}"),
        }
    }

    /// The orthogonal reflection `f_r ↔ f_{-r}`.
    fn t_rep(self, f: Fp) -> Mat {
        let r = self.rank as i32;
        self.monomial(f, &[(r, -r, 1), (-r, r, 1)])
    }

    fn borel_generators(self, f: Fp) -> Vec<Mat> {
        let g = f.primitive_root();
        let ginv = f.inv(g);
        let mut out = Vec::new();
        for i in 1..=self.rank as i32 {
            let mut t = identity(self.dim());
            t[self.pos(i)][self.pos(i)] = g;
            if self.form != Form::Linear {
                t[self.pos(-i)][self.pos(-i)] = ginv;
            }
            out.push(t);
        }
        out.extend(self.positive_roots().iter().map(|e| self.root_element(f, 1, e)));
        out
    }

    fn preserves(self, f: Fp, g: &Mat) -> bool {
        let Some(j) = self.gram(f) else {
            return mat_inverse(f, g).is_some();
        };
        let d = self.dim();
        let gt: Mat = (0..d).map(|a| (0..d).map(|b| g[b][a]).collect()).collect();
        mat_mul(f, &mat_mul(f, &gt, &j), g) == j
    }

    fn in_borel(self, f: Fp, g: &Mat) -> bool {
        self.preserves(f, g) && (0..self.dim()).all(|i| (0..i).all(|j| g[i][j] == 0))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum SpaceKind {
    /// `Hom(L1, L2)`.
    Hom,
    /// The cone in `Hom(L1, V2)` with isotropic image.
    ConeL1,
    /// The cone in `Hom(L2, V1)` with isotropic image.
    ConeL2,
}

#[derive(Clone, Debug)]
enum Action {
    Rows(Mat),
    Cols(Mat),
}

/// The points of one of the three spaces over `F_q`, with its acting Borel pair.
#[derive(Clone, Debug)]
pub struct FiniteFieldSpace {
    pub model: Model,
    pub q: u64,
    pub kind: SpaceKind,
    f: Fp,
    row_group: Group,
    col_group: Group,
    gram: Option<Mat>,
}

impl FiniteFieldSpace {
    pub fn new(model: Model, q: u64) -> Result<Self> {
        if q % 2 == 0 || !is_prime(q) || q >= 1 << 31 {
            return Err(Error::InvalidInput(format!("q = {q} must be an odd prime (prime powers are not supported)")));
        }
        let f = Fp::new(q);
        let g = |form, rank| Group { form, rank };
        let (kind, row_group, col_group) = match model {
            Model::TypeII { m, n } => (SpaceKind::Hom, g(Form::Linear, n), g(Form::Linear, m)),
            Model::TypeIM1 { m, n } => (SpaceKind::ConeL1, g(Form::Symplectic, n), g(Form::Linear, m)),
            Model::TypeIM2 { m, n } => (SpaceKind::ConeL2, g(Form::Orthogonal, m), g(Form::Linear, n)),
        };
        let space = Self { model, q, kind, f, row_group, col_group, gram: row_group.gram(f) };
        let cells = (space.rows() * space.cols()) as u32;
        match q.checked_pow(cells) {
            Some(n) if n <= POINT_BUDGET => Ok(space),
            _ => Err(Error::Budget(format!("{model} over F_{q} has q^{cells} ambient points (limit {POINT_BUDGET})"))),
        }
    }

    pub fn field(&self) -> Fp {
        self.f
    }

    pub fn rows(&self) -> usize {
        self.row_group.dim()
    }

    pub fn cols(&self) -> usize {
        self.col_group.dim()
    }

    pub fn ambient_size(&self) -> u64 {
        self.q.pow((self.rows() * self.cols()) as u32)
    }

    pub fn decode(&self, mut idx: u64) -> Mat {
        let mut x = vec![vec![0; self.cols()]; self.rows()];
        for row in x.iter_mut() {
            for e in row.iter_mut() {
                *e = idx % self.q;
                idx /= self.q;
            }
        }
        x
    }

    pub fn encode(&self, x: &Mat) -> u64 {
        x.iter().flatten().rev().fold(0, |acc, &e| acc * self.q + e)
    }

    /// Membership in the space: every matrix for `Hom`, isotropic image for a cone.
    pub fn contains(&self, x: &Mat) -> bool {
        let Some(j) = &self.gram else {
            return true;
        };
        let (rows, cols) = (self.rows(), self.cols());
        (0..cols).all(|a| {
            (0..cols).all(|b| {
                let mut s = 0;
                for r in 0..rows {
                    if x[r][a] == 0 {
                        continue;
                    }
                    for c in 0..rows {
                        if j[r][c] != 0 && x[c][b] != 0 {
                            s = self.f.add(s, self.f.mul(x[r][a], self.f.mul(j[r][c], x[c][b])));
                        }
                    }
                }
                s == 0
            })
        })
    }

    /// `x_σ`: source `a` goes to the basis vector of `σ(a)`.
    pub fn representative(&self, sigma: &Matching) -> Mat {
        let mut x = vec![vec![0; self.cols()]; self.rows()];
        for &(a, b) in sigma.arcs() {
            x[self.row_group.pos(b)][a as usize - 1] = 1;
        }
        x
    }

    fn apply(&self, act: &Action, x: &Mat) -> Mat {
        match act {
            Action::Rows(g) => mat_mul(self.f, g, x),
            Action::Cols(a) => mat_mul(self.f, x, a),
        }
    }

    fn generators(&self) -> Vec<Action> {
        let mut out: Vec<Action> = self.row_group.borel_generators(self.f).into_iter().map(Action::Rows).collect();
        out.extend(self.col_group.borel_generators(self.f).into_iter().map(Action::Cols));
        for a in &out {
            let (grp, g) = match a {
                Action::Rows(g) => (self.row_group, g),
                Action::Cols(g) => (self.col_group, g),
            };
            assert!(grp.in_borel(self.f, g), "generator outside the Borel");
        }
        out
    }

    /// Which group a generator belongs to: rows or columns.
    fn group_of(&self, s: Refl) -> (bool, Group) {
        let first_is_rows = matches!(self.model, Model::TypeIM2 { .. });
        let rows = (s.side() == Side::First) == first_is_rows;
        (rows, if rows { self.row_group } else { self.col_group })
    }

    /// Representatives `g` with `P_s = ⊔ g B`: `u_{-α}(c)` for `c ∈ F_q` and `ṡ`.
    /// For `t` the single element `t`.
    fn parabolic_cosets(&self, s: Refl) -> Result<Vec<Action>> {
        if !self.model.has_reflection(s) && !(s == Refl::T && matches!(self.model, Model::TypeIM2 { m, .. } if m >= 1)) {
            return Err(Error::InvalidInput(format!("{s} is not a generator for {}", self.model)));
        }
        let (rows, grp) = self.group_of(s);
        let wrap = |g: Mat| if rows { Action::Rows(g) } else { Action::Cols(g) };
        let f = self.f;
        if s == Refl::T {
            let t = grp.t_rep(f);
            assert!(grp.preserves(f, &t));
            return Ok(vec![wrap(t)]);
        }
        let i = match s {
            Refl::S(i) | Refl::Sp(i) => i,
            Refl::T => unreachable!(),
        };
        let root = grp.simple_root(i).expect("generator has a simple root");
        let w = grp.weyl_rep(f, i);
        let winv = mat_inverse(f, &w).expect("monomial matrices are invertible");
        let mut reps: Vec<Mat> = (0..self.q)
            .map(|c| mat_mul(f, &mat_mul(f, &w, &grp.root_element(f, c, &root)), &winv))
            .collect();
        reps.push(w);
        for (k, a) in reps.iter().enumerate() {
            assert!(grp.preserves(f, a), "coset representative leaves the group");
            let ainv = mat_inverse(f, a).expect("invertible");
            for b in &reps[..k] {
                assert!(!grp.in_borel(f, &mat_mul(f, &ainv, b)), "two representatives share a coset");
            }
        }
        Ok(reps.into_iter().map(wrap).collect())
    }
}

/// One Borel orbit over `F_q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FqOrbit {
    pub label: Matching,
    pub size: u64,
    pub representative: Mat,
}

/// All Borel orbits of a space, in the label order of the model.
#[derive(Clone, Debug)]
pub struct OrbitEnumeration {
    pub space: FiniteFieldSpace,
    /// Number of points of the space (not of the ambient matrix space).
    pub points: u64,
    pub orbits: Vec<FqOrbit>,
    orbit_of: Vec<u32>,
}

impl OrbitEnumeration {
    /// Orbit index of an encoded point; `None` off the cone.
    pub fn orbit_of(&self, idx: u64) -> Option<usize> {
        let o = self.orbit_of[idx as usize];
        (o != u32::MAX).then_some(o as usize)
    }

    fn locate(&self, x: &Mat) -> usize {
        self.orbit_of(self.space.encode(x)).expect("group action preserves the space")
    }

    pub fn index_of(&self, sigma: &Matching) -> Option<usize> {
        self.orbits.iter().position(|o| &o.label == sigma)
    }
}

fn find(parent: &mut [u32], mut x: u32) -> u32 {
    while parent[x as usize] != x {
        let p = parent[x as usize];
        parent[x as usize] = parent[p as usize];
        x = p;
    }
    x
}

/// Union-find closure of the space under the Borel generators; every orbit
/// must contain exactly one `x_σ`.
pub fn enumerate_orbits_fq(space: &FiniteFieldSpace) -> Result<OrbitEnumeration> {
    let n = space.ambient_size();
    let gens = space.generators();
    let mut parent: Vec<u32> = (0..n as u32).collect();
    let mut inside = vec![false; n as usize];
    let mut points = 0;
    for idx in 0..n {
        let x = space.decode(idx);
        if !space.contains(&x) {
            continue;
        }
        inside[idx as usize] = true;
        points += 1;
        for g in &gens {
            let y = space.encode(&space.apply(g, &x));
            let (a, b) = (find(&mut parent, idx as u32), find(&mut parent, y as u32));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    let labels = space.model.enumerate();
    let mut root_label = std::collections::HashMap::new();
    for (i, sigma) in labels.iter().enumerate() {
        let x = space.representative(sigma);
        if !space.contains(&x) {
            return Err(Error::Inconsistent(format!("x_{sigma} is not in the space")));
        }
        let r = find(&mut parent, space.encode(&x) as u32);
        if let Some(j) = root_label.insert(r, i) {
            return Err(Error::Inconsistent(format!("x_{} and x_{sigma} lie in one orbit", labels[j])));
        }
    }
    let mut orbit_of = vec![u32::MAX; n as usize];
    let mut sizes = vec![0u64; labels.len()];
    for idx in 0..n as usize {
        if !inside[idx] {
            continue;
        }
        let r = find(&mut parent, idx as u32);
        let Some(&i) = root_label.get(&r) else {
            return Err(Error::Inconsistent(format!(
                "the orbit of {:?} contains no x_σ",
                space.decode(idx as u64)
            )));
        };
        orbit_of[idx] = i as u32;
        sizes[i] += 1;
    }
    let orbits = labels
        .into_iter()
        .zip(sizes)
        .map(|(label, size)| {
            let representative = space.representative(&label);
            FqOrbit { label, size, representative }
        })
        .collect();
    Ok(OrbitEnumeration { space: space.clone(), points, orbits, orbit_of })
}

/// `A[β][α] = (1_{P_s} * 1_α)(x_β) = #{g ∈ P_s/B : g x_β ∈ O_α}`. For `t`
/// the matrix of `1_{tB}`.
pub fn convolution_matrix(orbits: &OrbitEnumeration, s: Refl) -> Result<Vec<Vec<i64>>> {
    let space = &orbits.space;
    let reps = space.parabolic_cosets(s)?;
    let k = orbits.orbits.len();
    let mut a = vec![vec![0i64; k]; k];
    for (beta, o) in orbits.orbits.iter().enumerate() {
        for g in &reps {
            a[beta][orbits.locate(&space.apply(g, &o.representative))] += 1;
        }
    }
    Ok(a)
}

/// The identity double coset: convolution with `1_B`.
pub fn identity_convolution(orbits: &OrbitEnumeration) -> Vec<Vec<i64>> {
    let k = orbits.orbits.len();
    let mut a = vec![vec![0i64; k]; k];
    for (beta, o) in orbits.orbits.iter().enumerate() {
        a[beta][orbits.locate(&o.representative)] += 1;
    }
    a
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConvolutionMismatch {
    pub generator: String,
    pub sigma: Matching,
    pub coordinate: Matching,
    pub symbolic: String,
    pub convolution: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConvolutionReport {
    pub model: String,
    pub q: u64,
    pub points: u64,
    pub orbit_sizes: Vec<(Matching, u64)>,
    pub generators: Vec<String>,
    pub entries_checked: usize,
    pub mismatches: Vec<ConvolutionMismatch>,
    pub passed: bool,
}

/// Compare the convolution action of every generator with the symbolic
/// action specialized at `v² = q`, entry by entry.
pub fn convolution_check(model: Model, q: u64) -> Result<ConvolutionReport> {
    let space = FiniteFieldSpace::new(model, q)?;
    let orbits = enumerate_orbits_fq(&space)?;
    let table = OrbitTable::new(model)?;
    let k = orbits.orbits.len();
    if k != table.len() {
        return Err(Error::Inconsistent(format!("{k} orbits over F_{q} but {} labels", table.len())));
    }
    let mut gens = table.reflections.clone();
    if matches!(model, Model::TypeIM2 { m, .. } if m >= 1) {
        gens.push(Refl::T);
    }
    let mut mismatches = Vec::new();
    let mut checked = 0;
    for &s in &gens {
        let conv = convolution_matrix(&orbits, s)?;
        for (alpha, oa) in orbits.orbits.iter().enumerate() {
            let ia = table.index_of(&oa.label).expect("same label set");
            let symbolic: Vec<Ratio<i64>> = if s == Refl::T {
                let img = table.index_of(&model.act_refl(Refl::T, &oa.label)?).expect("t permutes labels");
                (0..k).map(|b| Ratio::from_integer(i64::from(b == img))).collect()
            } else {
                let v = ts_plus_one(&table, s, &ModuleVector::basis(k, ia))?;
                specialize(&v, Specialization::Q(q as i64))
                    .ok_or_else(|| Error::Inconsistent(format!("odd power of v in (T_{s} + 1) 1_{}", oa.label)))?
            };
            for (beta, ob) in orbits.orbits.iter().enumerate() {
                let ib = table.index_of(&ob.label).expect("same label set");
                checked += 1;
                if symbolic[ib] != Ratio::from_integer(conv[beta][alpha]) {
                    mismatches.push(ConvolutionMismatch {
                        generator: s.to_string(),
                        sigma: oa.label.clone(),
                        coordinate: ob.label.clone(),
                        symbolic: symbolic[ib].to_string(),
                        convolution: conv[beta][alpha],
                    });
                }
            }
        }
    }
    Ok(ConvolutionReport {
        model: model.to_string(),
        q,
        points: orbits.points,
        orbit_sizes: orbits.orbits.iter().map(|o| (o.label.clone(), o.size)).collect(),
        generators: gens.iter().map(ToString::to_string).collect(),
        entries_checked: checked,
        passed: mismatches.is_empty(),
        mismatches,
    })
}

/// An element of `Z[ζ_p]`, stored by coefficients of `1, ζ, …, ζ^{p-1}`
/// and reduced modulo `1 + ζ + … + ζ^{p-1}` so that the last one is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cyclotomic {
    coeffs: Vec<i64>,
}

impl Cyclotomic {
    /// `Σ_k hist[k] ζ^k`.
    pub fn from_histogram(hist: &[i64]) -> Self {
        let last = *hist.last().expect("p ≥ 2");
        Self { coeffs: hist.iter().map(|c| c - last).collect() }
    }

    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }
}

/// Free coordinates `(row, col)` of the staircase subspace of a pair:
/// the target-`b` / source-`a` entry is free iff `#{i ∈ I : i ≤ a} > #{j ∈ J : j < b}`.
pub fn staircase_cells(mu: &StaircasePair) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for b in 1..=mu.n {
        for a in 1..=mu.m {
            let ia = mu.i.iter().filter(|&&i| i <= a).count();
            let jb = mu.j.iter().filter(|&&j| j < b).count();
            if ia > jb {
                out.push((b - 1, a - 1));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceCheck {
    pub pair: StaircasePair,
    pub annihilator: StaircasePair,
    pub dimension: usize,
    pub borel_stable: bool,
    /// `FT(1_S) = |S| · 1_{S^⊥}` at every orbit of the dual space.
    pub transform_matches: bool,
    /// Label of the unique open orbit in `S`, if unique.
    pub generic_label: Option<Matching>,
    pub expected_label: Matching,
}

impl SubspaceCheck {
    pub fn passed(&self) -> bool {
        self.borel_stable && self.transform_matches && self.generic_label.as_ref() == Some(&self.expected_label)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct FourierReport {
    pub m: usize,
    pub n: usize,
    pub q: u64,
    pub psi: u64,
    pub subspaces: Vec<SubspaceCheck>,
    /// `FT(1_0)` is the constant function 1.
    pub delta_to_constant: Option<bool>,
    /// `FT ∘ (1_{P_s} *) = (1_{P_s} *) ∘ FT` on orbit indicators.
    pub intertwining: Option<bool>,
    /// `FT' ∘ FT = q^{mn} · (−1)^*`, which is `q^{mn}` on invariant functions.
    pub double_transform: Option<bool>,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// `C[β][α] = FT(1_α)(y_β) = Σ_{x ∈ O_α} ψ(tr(y_β x))`.
fn transform_matrix(src: &OrbitEnumeration, dst: &OrbitEnumeration, psi: u64) -> Result<Vec<Vec<i64>>> {
    let f = src.space.field();
    let p = f.p as usize;
    let (k_src, k_dst) = (src.orbits.len(), dst.orbits.len());
    let arcs: Vec<Vec<(usize, usize)>> = dst
        .orbits
        .iter()
        .map(|o| o.label.arcs().iter().map(|&(b, a)| (b as usize - 1, a as usize - 1)).collect())
        .collect();
    let mut hist = vec![vec![vec![0i64; p]; k_src]; k_dst];
    for idx in 0..src.space.ambient_size() {
        let Some(alpha) = src.orbit_of(idx) else { continue };
        let x = src.space.decode(idx);
        for (beta, arcs) in arcs.iter().enumerate() {
            let t = arcs.iter().fold(0, |acc, &(b, a)| f.add(acc, x[b][a]));
            hist[beta][alpha][f.mul(t, psi) as usize] += 1;
        }
    }
    hist.iter()
        .enumerate()
        .map(|(beta, row)| {
            row.iter()
                .enumerate()
                .map(|(alpha, h)| {
                    Cyclotomic::from_histogram(h).as_integer().ok_or_else(|| {
                        Error::Inconsistent(format!(
                            "FT(1_{})(y_{}) is not rational",
                            src.orbits[alpha].label, dst.orbits[beta].label
                        ))
                    })
                })
                .collect()
        })
        .collect()
}

fn int_mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    a.iter()
        .map(|row| (0..b[0].len()).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect())
        .collect()
}

fn swap_sides(s: Refl) -> Refl {
    match s {
        Refl::S(i) => Refl::Sp(i),
        Refl::Sp(j) => Refl::S(j),
        Refl::T => Refl::T,
    }
}

/// Fourier checks on `Hom(L1, L2)` with `ψ(t) = ζ^{psi·t}`.
///
/// The staircase checks run whenever the space fits [`POINT_BUDGET`]; the
/// full transform matrices (intertwining, double transform) only for at most
/// 200 000 points and otherwise report `None`.
pub fn finite_fourier_check(m: usize, n: usize, q: u64, psi: u64) -> Result<FourierReport> {
    let space = FiniteFieldSpace::new(Model::TypeII { m, n }, q)?;
    let dual = FiniteFieldSpace::new(Model::TypeII { m: n, n: m }, q)?;
    let f = space.field();
    if psi % q == 0 {
        return Err(Error::InvalidInput("the additive character must be nontrivial".into()));
    }
    let p = q as usize;
    let mut failures = Vec::new();
    let dual_labels = dual.space_labels();
    let dual_reps: Vec<Mat> = dual_labels.iter().map(|l| dual.representative(l)).collect();
    let gens = space.generators();
    let labels = space.space_labels();

    let mut subspaces = Vec::new();
    for mu in StaircasePair::enumerate(m, n) {
        let nu = psi_bullet(&mu);
        let cells = staircase_cells(&mu);
        let dual_cells = staircase_cells(&nu);
        let free = |cs: &[(usize, usize)], r: usize, c: usize| cs.contains(&(r, c));

        let borel_stable = cells.iter().all(|&(r, c)| {
            let mut e = vec![vec![0; m]; n];
            e[r][c] = 1;
            gens.iter().all(|g| {
                let y = space.apply(g, &e);
                (0..n).all(|i| (0..m).all(|j| y[i][j] == 0 || free(&cells, i, j)))
            })
        });

        // FT(1_S)(y_τ) by enumerating S with an odometer over the free cells.
        let touches: Vec<Vec<usize>> = dual_labels
            .iter()
            .map(|tau| {
                tau.arcs()
                    .iter()
                    .filter_map(|&(b, a)| cells.iter().position(|&c| c == (b as usize - 1, a as usize - 1)))
                    .collect()
            })
            .collect();
        let mut hist = vec![vec![0i64; p]; dual_labels.len()];
        let mut digits = vec![0u64; cells.len()];
        loop {
            for (tau, t) in touches.iter().enumerate() {
                let v = t.iter().fold(0, |acc, &k| f.add(acc, digits[k]));
                hist[tau][f.mul(v, psi) as usize] += 1;
            }
            let Some(k) = digits.iter().position(|&d| d + 1 < q) else { break };
            digits[k] += 1;
            digits[..k].iter_mut().for_each(|d| *d = 0);
        }
        let size = q.pow(cells.len() as u32) as i64;
        let transform_matches = dual_labels.iter().enumerate().all(|(tau, _)| {
            let inside = dual_reps[tau]
                .iter()
                .enumerate()
                .all(|(r, row)| row.iter().enumerate().all(|(c, &e)| e == 0 || free(&dual_cells, r, c)));
            Cyclotomic::from_histogram(&hist[tau]).as_integer() == Some(if inside { size } else { 0 })
        });

        let in_s: Vec<(Matching, usize)> = labels
            .iter()
            .filter_map(|sigma| {
                let x = space.representative(sigma);
                let inside = (0..n).all(|i| (0..m).all(|j| x[i][j] == 0 || free(&cells, i, j)));
                inside.then(|| (sigma.clone(), orbit_dimension(f, &x, n, m)))
            })
            .collect();
        let top = in_s.iter().map(|x| x.1).max().unwrap_or(0);
        let open: Vec<&Matching> = in_s.iter().filter(|x| x.1 == top && top == cells.len()).map(|x| &x.0).collect();
        let check = SubspaceCheck {
            annihilator: nu.clone(),
            dimension: cells.len(),
            borel_stable,
            transform_matches,
            generic_label: (open.len() == 1).then(|| open[0].clone()),
            expected_label: pp_to_pm(&mu),
            pair: mu,
        };
        if !check.passed() {
            failures.push(format!("staircase pair I={:?} J={:?}", check.pair.i, check.pair.j));
        }
        subspaces.push(check);
    }

    let (mut delta_to_constant, mut intertwining, mut double_transform) = (None, None, None);
    if space.ambient_size() <= TRANSFORM_BUDGET {
        let src = enumerate_orbits_fq(&space)?;
        let dst = enumerate_orbits_fq(&dual)?;
        let c = transform_matrix(&src, &dst, psi)?;
        let c_back = transform_matrix(&dst, &src, psi)?;
        let zero = src.index_of(&Matching::empty()).expect("zero orbit");
        let d = c.iter().all(|row| row[zero] == 1);
        delta_to_constant = Some(d);
        if !d {
            failures.push("FT(1_0) is not constant".into());
        }
        let total = space.ambient_size() as i64;
        let back = int_mat_mul(&c_back, &c);
        let dt = back.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &v)| v == if i == j { total } else { 0 }));
        double_transform = Some(dt);
        if !dt {
            failures.push("FT' ∘ FT is not q^{mn} on orbit indicators".into());
        }
        let mut ok = true;
        for s in space.model.reflections() {
            let a = convolution_matrix(&src, s)?;
            let a_dual = convolution_matrix(&dst, swap_sides(s))?;
            let lhs = int_mat_mul(&c, &a);
            let rhs = int_mat_mul(&a_dual, &c);
            if lhs != rhs {
                ok = false;
                failures.push(format!("FT does not intertwine {s}"));
            }
        }
        intertwining = Some(ok);
    }

    Ok(FourierReport {
        m,
        n,
        q,
        psi,
        passed: failures.is_empty(),
        subspaces,
        delta_to_constant,
        intertwining,
        double_transform,
        failures,
    })
}

impl FiniteFieldSpace {
    fn space_labels(&self) -> Vec<Matching> {
        self.model.enumerate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn groups_preserve_their_forms() {
        let f = Fp::new(5);
        for form in [Form::Linear, Form::Symplectic, Form::Orthogonal] {
            for rank in 1..=3 {
                let g = Group { form, rank };
                for x in g.borel_generators(f) {
                    assert!(g.in_borel(f, &x), "{form:?} {rank}");
                }
                let top = match form {
                    Form::Linear => rank - 1,
                    Form::Symplectic => rank,
                    Form::Orthogonal if rank >= 2 => rank,
                    Form::Orthogonal => 0,
                };
                for i in 1..=top {
                    assert!(g.preserves(f, &g.weyl_rep(f, i)), "{form:?} {rank} s{i}");
                    assert!(g.in_borel(f, &g.root_element(f, 1, &g.simple_root(i).unwrap())));
                }
                if form == Form::Orthogonal {
                    assert!(g.preserves(f, &g.t_rep(f)));
                }
            }
        }
    }

    #[test]
    fn small_orbit_counts() {
        let count = |model, q| {
            let e = enumerate_orbits_fq(&FiniteFieldSpace::new(model, q).unwrap()).unwrap();
            assert_eq!(e.orbits.iter().map(|o| o.size).sum::<u64>(), e.points);
            e.orbits.len()
        };
        assert_eq!(count(Model::TypeIM1 { m: 2, n: 1 }, 3), 5);
        assert_eq!(count(Model::TypeII { m: 2, n: 2 }, 3), 7);
        assert_eq!(count(Model::TypeII { m: 0, n: 2 }, 3), 1);
        assert_eq!(count(Model::TypeIM2 { m: 1, n: 1 }, 3), 3);
    }

    #[test]
    fn zero_space() {
        let e = enumerate_orbits_fq(&FiniteFieldSpace::new(Model::TypeIM1 { m: 0, n: 0 }, 3).unwrap()).unwrap();
        assert_eq!(e.orbits.len(), 1);
        assert_eq!(e.orbits[0].size, 1);
    }

    #[test]
    fn identity_coset_is_identity() {
        let e = enumerate_orbits_fq(&FiniteFieldSpace::new(Model::TypeIM1 { m: 1, n: 1 }, 3).unwrap()).unwrap();
        let a = identity_convolution(&e);
        for (i, row) in a.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                assert_eq!(x, i64::from(i == j));
            }
        }
    }

    #[test]
    fn small_convolutions() {
        for model in [Model::TypeIM1 { m: 1, n: 1 }, Model::TypeII { m: 1, n: 2 }, Model::TypeIM2 { m: 2, n: 1 }] {
            let r = convolution_check(model, 3).unwrap();
            assert!(r.passed, "{model}: {:?}", r.mismatches.first());
        }
    }

    #[test]
    fn rejects_bad_fields() {
        assert!(FiniteFieldSpace::new(Model::TypeII { m: 1, n: 1 }, 9).is_err());
        assert!(FiniteFieldSpace::new(Model::TypeII { m: 1, n: 1 }, 2).is_err());
        assert!(matches!(FiniteFieldSpace::new(Model::TypeII { m: 5, n: 5 }, 3), Err(Error::Budget(_))));
    }

    #[test]
    fn cyclotomic_reduction() {
        assert_eq!(Cyclotomic::from_histogram(&[4, 1, 1]).as_integer(), Some(3));
        assert_eq!(Cyclotomic::from_histogram(&[1, 2, 1]).as_integer(), None);
    }

    #[test]
    fn small_fourier() {
        let r = finite_fourier_check(2, 1, 3, 1).unwrap();
        assert!(r.passed, "{:?}", r.failures);
        assert_eq!(r.intertwining, Some(true));
        let r = finite_fourier_check(1, 1, 5, 2).unwrap();
        assert!(r.passed, "{:?}", r.failures);
    }
}
