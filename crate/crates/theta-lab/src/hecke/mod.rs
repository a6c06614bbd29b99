//! Generic Hecke algebras and their action on the standard bases of the
//! spherical modules.

mod laurent;

pub use laurent::LaurentPoly;

use std::collections::BTreeMap;

use serde::Serialize;

use crate::matchings::{Kind, Matching, OrbitTable, Refl, Side, WeylElement};
use crate::{Error, Result};

/// A vector in a spherical module, dense over the labels of an [`OrbitTable`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleVector {
    pub coords: Vec<LaurentPoly>,
}

impl ModuleVector {
    pub fn zero(len: usize) -> Self {
        Self { coords: vec![LaurentPoly::zero(); len] }
    }

    /// The indicator `1_α` of label index `i`.
    pub fn basis(len: usize, i: usize) -> Self {
        let mut v = Self::zero(len);
        v.coords[i] = LaurentPoly::one();
        v
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(LaurentPoly::is_zero)
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coords.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i)
    }

    pub fn add(&self, other: &Self) -> Self {
        Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self { coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect() }
    }

    pub fn add_scaled(&mut self, c: &LaurentPoly, other: &Self) {
        for i in other.support() {
            self.coords[i] += &(c * &other.coords[i]);
        }
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        Self { coords: self.coords.iter().map(|a| a * c).collect() }
    }

    /// Multiply every coordinate by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        Self { coords: self.coords.iter().map(|a| a.shift(k)).collect() }
    }

    /// Specialize at `v = 1`.
    pub fn at_one(&self) -> Vec<i64> {
        self.coords.iter().map(LaurentPoly::at_one).collect()
    }

    /// `{label: polynomial}` over the nonzero coordinates.
    pub fn to_map(&self, table: &OrbitTable) -> BTreeMap<String, LaurentPoly> {
        self.support().map(|i| (table.labels[i].to_string(), self.coords[i].clone())).collect()
    }
}

fn refl_index(table: &OrbitTable, s: Refl) -> Result<usize> {
    table
        .refl_index(s)
        .ok_or_else(|| Error::InvalidInput(format!("{s} does not act on {} through the classifier", table.model)))
}

/// `(T_s + 1)` on a vector, from the type G / U± formulas.
pub fn ts_plus_one(table: &OrbitTable, s: Refl, vec: &ModuleVector) -> Result<ModuleVector> {
    Ok(ts_plus_one_idx(table, refl_index(table, s)?, vec))
}

pub(crate) fn ts_plus_one_idx(table: &OrbitTable, r: usize, vec: &ModuleVector) -> ModuleVector {
    let v2 = LaurentPoly::v_pow(2);
    let g = LaurentPoly::from_terms([(0, 1), (2, 1)]);
    let mut out = ModuleVector::zero(vec.len());
    for i in vec.support() {
        let c = &vec.coords[i];
        let j = table.action[r][i];
        match table.kinds[r][i] {
            Kind::G => out.coords[i] += &(&g * c),
            Kind::UMinus => {
                out.coords[i] += c;
                out.coords[j] += c;
            }
            Kind::UPlus => {
                let t = &v2 * c;
                out.coords[i] += &t;
                out.coords[j] += &t;
            }
        }
    }
    out
}

/// `T_s` on a vector.
pub fn ts(table: &OrbitTable, s: Refl, vec: &ModuleVector) -> Result<ModuleVector> {
    Ok(ts_plus_one(table, s, vec)?.sub(vec))
}

/// `T_{w_1} ⋯ T_{w_k} · vec`; the rightmost generator acts first.
pub fn act_word(table: &OrbitTable, word: &[Refl], vec: &ModuleVector) -> Result<ModuleVector> {
    let idx = word.iter().map(|&s| refl_index(table, s)).collect::<Result<Vec<_>>>()?;
    let mut out = vec.clone();
    for &r in idx.iter().rev() {
        out = ts_plus_one_idx(table, r, &out).sub(&out);
    }
    Ok(out)
}

/// The `v = 1` action of `s` on integer coordinates: `1_α ↦ 1_{s*α}`.
pub fn weyl_action_at_one(table: &OrbitTable, s: Refl, vec: &[i64]) -> Result<Vec<i64>> {
    let r = refl_index(table, s)?;
    let mut out = vec![0; vec.len()];
    for (i, &c) in vec.iter().enumerate() {
        out[table.action[r][i]] += c;
    }
    Ok(out)
}

/// Specialization targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Specialization {
    VOne,
    /// `v² = q` for an integer `q`.
    Q(i64),
}

/// Specialize a vector; `None` if an odd power of `v` blocks `v² = q`.
pub fn specialize(vec: &ModuleVector, at: Specialization) -> Option<Vec<num_rational::Ratio<i64>>> {
    vec.coords
        .iter()
        .map(|c| match at {
            Specialization::VOne => Some(num_rational::Ratio::from_integer(c.at_one())),
            Specialization::Q(q) => c.eval_q(q),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HeckeType {
    /// Type `A_{k-1}` (a symmetric group on `k` letters).
    A(usize),
    /// Type `B_k = C_k`, generated by adjacent transpositions and the sign change of `k`.
    BC(usize),
    /// The extended type-D algebra of an even orthogonal group of rank `k`:
    /// type `D_k` generators plus the length-zero `t`.
    OEven(usize),
}

/// A generic Hecke algebra given by generators and quadratic relations
/// `(T_s + 1)(T_s - v^{2ℓ(s)}) = 0`.
#[derive(Clone, Debug, Serialize)]
pub struct HeckeAlgebra {
    pub kind: HeckeType,
    pub side: Side,
    pub generators: Vec<Refl>,
}

impl HeckeAlgebra {
    pub fn new(kind: HeckeType, side: Side) -> Self {
        let mk = |i: usize| if side == Side::First { Refl::S(i) } else { Refl::Sp(i) };
        let generators = match kind {
            HeckeType::A(k) => (1..k).map(mk).collect(),
            HeckeType::BC(k) => (1..=k).map(mk).collect(),
            HeckeType::OEven(k) => {
                let mut g: Vec<Refl> = (1..k).map(Refl::S).collect();
                if k >= 2 {
                    g.push(Refl::S(k));
                }
                if k >= 1 {
                    g.push(Refl::T);
                }
                g
            }
        };
        Self { kind, side, generators }
    }

    pub fn rank(&self) -> usize {
        match self.kind {
            HeckeType::A(k) | HeckeType::BC(k) | HeckeType::OEven(k) => k,
        }
    }

    pub fn length(&self, g: Refl) -> u32 {
        u32::from(g != Refl::T)
    }

    /// `v^{2ℓ(s)}`.
    pub fn quadratic_parameter(&self, g: Refl) -> LaurentPoly {
        LaurentPoly::v_pow(2 * self.length(g) as i32)
    }

    /// `sgn(T_s) = (-1)^{ℓ(s)}`.
    pub fn sign_character(&self, g: Refl) -> i64 {
        if self.length(g) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// The generator as a signed permutation of the rank.
    pub fn element(&self, g: Refl) -> WeylElement {
        let k = self.rank();
        match (self.kind, g) {
            (HeckeType::BC(_), Refl::S(i) | Refl::Sp(i)) if i == k => WeylElement::sign_change(k, k),
            (HeckeType::OEven(_), Refl::S(i)) if i == k => WeylElement::d_reflection(k),
            (HeckeType::OEven(_), Refl::T) => WeylElement::sign_change(k, k),
            (_, Refl::S(i) | Refl::Sp(i)) => WeylElement::transposition(k, i),
            _ => unreachable!("not a generator"),
        }
    }

    /// Braid order `m(a,b)` between two length-one generators.
    pub fn braid_order(&self, a: Refl, b: Refl) -> usize {
        self.element(a).compose(&self.element(b)).order()
    }

    /// Braid pairs `(a, b, m(a,b))` among length-one generators, `a < b`.
    pub fn braid_relations(&self) -> Vec<(Refl, Refl, usize)> {
        let ones: Vec<Refl> = self.generators.iter().copied().filter(|&g| self.length(g) == 1).collect();
        let mut out = Vec::new();
        for (i, &a) in ones.iter().enumerate() {
            for &b in &ones[i + 1..] {
                out.push((a, b, self.braid_order(a, b)));
            }
        }
        out
    }
}

/// The alternating braid word `a b a …` of length `k`.
pub fn braid_word(a: Refl, b: Refl, k: usize) -> Vec<Refl> {
    (0..k).map(|i| if i % 2 == 0 { a } else { b }).collect()
}

/// Check `(T_s+1)(T_s-v²) = 0` and all braid relations among the model's
/// reflections on every basis vector. Returns the first failure.
pub fn check_relations(table: &OrbitTable) -> Result<()> {
    let n = table.len();
    let v2 = LaurentPoly::v_pow(2);
    for i in 0..n {
        let e = ModuleVector::basis(n, i);
        for (r, &s) in table.reflections.iter().enumerate() {
            let t_plus = ts_plus_one_idx(table, r, &e);
            let t = t_plus.sub(&e);
            let lhs = ts_plus_one_idx(table, r, &t.sub(&e.scale(&v2)));
            if !lhs.is_zero() {
                return Err(Error::Inconsistent(format!("quadratic relation fails for {s} on {}", table.labels[i])));
            }
        }
        for (a_i, &a) in table.reflections.iter().enumerate() {
            for &b in &table.reflections[a_i + 1..] {
                let k = if a.side() == b.side() {
                    let model = table.model;
                    model.refl_element(a)?.compose(&model.refl_element(b)?).order()
                } else {
                    2
                };
                let lhs = act_word(table, &braid_word(a, b, k), &e)?;
                let rhs = act_word(table, &braid_word(b, a, k), &e)?;
                if lhs != rhs {
                    return Err(Error::Inconsistent(format!("braid relation of order {k} fails for {a},{b} on {}", table.labels[i])));
                }
            }
        }
    }
    Ok(())
}

/// Label lookup helper for callers holding strings.
pub fn basis_of(table: &OrbitTable, sigma: &Matching) -> Result<ModuleVector> {
    let i = table
        .index_of(sigma)
        .ok_or_else(|| Error::InvalidInput(format!("{sigma} is not a label of {}", table.model)))?;
    Ok(ModuleVector::basis(table.len(), i))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matchings::Model;

    fn table(model: Model) -> OrbitTable {
        OrbitTable::new(model).unwrap()
    }

    #[test]
    fn type_g_formula() {
        let t = table(Model::TypeII { m: 2, n: 2 });
        let e = basis_of(&t, &Matching::empty()).unwrap();
        let out = ts_plus_one(&t, Refl::S(1), &e).unwrap();
        assert_eq!(out, e.scale(&LaurentPoly::from_terms([(0, 1), (2, 1)])));
    }

    #[test]
    fn u_minus_formula() {
        let t = table(Model::TypeIM1 { m: 2, n: 1 });
        let e = basis_of(&t, &"2>1".parse().unwrap()).unwrap();
        let f = basis_of(&t, &"1>1".parse().unwrap()).unwrap();
        assert_eq!(ts_plus_one(&t, Refl::S(1), &e).unwrap(), e.add(&f));
        let z = ModuleVector::zero(t.len());
        assert_eq!(ts_plus_one(&t, Refl::S(1), &z).unwrap(), z);
    }

    #[test]
    fn v_one_is_permutation() {
        let t = table(Model::TypeIM1 { m: 2, n: 2 });
        for s in t.reflections.clone() {
            for i in 0..t.len() {
                let e = ModuleVector::basis(t.len(), i);
                let acted = ts(&t, s, &e).unwrap().at_one();
                assert_eq!(acted, weyl_action_at_one(&t, s, &e.at_one()).unwrap());
            }
        }
    }

    #[test]
    fn relations_hold_small() {
        for m in 0..=2 {
            for n in 0..=2 {
                for model in [Model::TypeII { m, n }, Model::TypeIM1 { m, n }, Model::TypeIM2 { m, n }] {
                    check_relations(&table(model)).unwrap_or_else(|e| panic!("{model}: {e}"));
                }
            }
        }
    }

    #[test]
    fn algebra_data() {
        let h = HeckeAlgebra::new(HeckeType::OEven(3), Side::First);
        assert_eq!(h.generators, vec![Refl::S(1), Refl::S(2), Refl::S(3), Refl::T]);
        assert_eq!(h.sign_character(Refl::S(1)), -1);
        assert_eq!(h.sign_character(Refl::T), 1);
        assert_eq!(h.quadratic_parameter(Refl::T), LaurentPoly::one());
        assert_eq!(h.braid_order(Refl::S(1), Refl::S(3)), 3);
        assert_eq!(h.braid_order(Refl::S(2), Refl::S(3)), 2);
        let b = HeckeAlgebra::new(HeckeType::BC(2), Side::Second);
        assert_eq!(b.braid_relations(), vec![(Refl::Sp(1), Refl::Sp(2), 4)]);
    }

    #[test]
    fn specialization() {
        let t = table(Model::TypeII { m: 1, n: 1 });
        let e = ModuleVector::basis(t.len(), 0).scale(&LaurentPoly::from_terms([(0, 1), (2, 1)]));
        assert_eq!(specialize(&e, Specialization::Q(5)).unwrap()[0], num_rational::Ratio::from_integer(6));
        assert_eq!(specialize(&e, Specialization::VOne).unwrap()[0], num_rational::Ratio::from_integer(2));
    }
}
