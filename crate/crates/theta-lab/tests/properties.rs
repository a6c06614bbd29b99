use proptest::prelude::*;

use theta_lab::fourier::{pp_to_pm, psi_bullet, shared, StaircasePair};
use theta_lab::hecke::{act_word, ts, ModuleVector};
use theta_lab::kl::{kl_table, w_graph, KlTableJson};
use theta_lab::matchings::{Kind, Matching, Model, OrbitTable, Refl};
use theta_lab::partitions::{multiplicity, Partition};
use theta_lab::LaurentPoly;

fn poly() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i32..5, -3i64..4), 0..5).prop_map(LaurentPoly::from_terms)
}

fn model() -> impl Strategy<Value = Model> {
    (0usize..4, 0usize..4, 0usize..3).prop_map(|(m, n, k)| match k {
        0 => Model::TypeII { m, n },
        1 => Model::TypeIM1 { m, n },
        _ => Model::TypeIM2 { m, n },
    })
}

fn labelled() -> impl Strategy<Value = (Model, Matching)> {
    model().prop_flat_map(|md| {
        let labels = md.enumerate();
        (Just(md), prop::sample::select(labels))
    })
}

fn partition(max: u32) -> impl Strategy<Value = Partition> {
    (0..=max).prop_flat_map(|k| prop::sample::select(Partition::all(k)))
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn laurent_ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a * &b).at_one(), a.at_one() * b.at_one());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn labels_round_trip_through_text((md, sigma) in labelled()) {
        let text = sigma.to_string();
        prop_assert_eq!(text.parse::<Matching>().unwrap(), sigma.clone());
        let json = serde_json::to_string(&sigma).unwrap();
        prop_assert_eq!(serde_json::from_str::<Matching>(&json).unwrap(), sigma.clone());
        prop_assert!(md.enumerate().contains(&sigma));
    }

    #[test]
    fn companions_shift_dimension_by_one((md, sigma) in labelled()) {
        let t = OrbitTable::new(md).unwrap();
        let i = t.index_of(&sigma).unwrap();
        for (r, _) in t.reflections.iter().enumerate() {
            let j = t.action[r][i];
            match t.kinds[r][i] {
                Kind::G => prop_assert_eq!(j, i),
                Kind::UMinus => prop_assert_eq!(t.dims[j], t.dims[i] + 1),
                Kind::UPlus => prop_assert_eq!(t.dims[j] + 1, t.dims[i]),
            }
            prop_assert_eq!(t.action[r][j], i);
        }
    }

    #[test]
    fn quadratic_relation_on_random_vectors(md in model(), coeffs in prop::collection::vec(poly(), 1..40)) {
        let t = OrbitTable::new(md).unwrap();
        let mut v = ModuleVector::zero(t.len());
        for (i, c) in coeffs.iter().enumerate().take(t.len()) {
            v.coords[i] = c.clone();
        }
        for &s in &t.reflections {
            let tv = ts(&t, s, &v).unwrap();
            let ttv = ts(&t, s, &tv).unwrap();
            let expect = v.scale(&LaurentPoly::v_pow(2)).add(&tv.scale(&LaurentPoly::from_terms([(0, -1), (2, 1)])));
            prop_assert_eq!(ttv, expect);
            prop_assert_eq!(act_word(&t, &[s, s], &v).unwrap(), act_word(&t, &[s], &tv).unwrap());
        }
    }

    #[test]
    fn kl_polynomial_shape(md in model()) {
        let t = kl_table(md).unwrap();
        for s in 0..t.len() {
            for b in t.lower_set(s) {
                let p = t.poly(b, s);
                prop_assert_eq!(p.coeff(0), 1);
                prop_assert!(p.terms().all(|(e, c)| e >= 0 && e % 2 == 0 && c > 0));
                if b != s {
                    prop_assert!(p.max_exp().unwrap() < (t.dim(s) - t.dim(b)) as i32);
                } else {
                    prop_assert_eq!(p, LaurentPoly::one());
                }
            }
        }
        let json = serde_json::to_string(&t.to_json()).unwrap();
        prop_assert_eq!(serde_json::from_str::<KlTableJson>(&json).unwrap(), t.to_json());
    }

    #[test]
    fn cells_partition_the_vertices(md in model()) {
        let g = w_graph(&kl_table(md).unwrap()).unwrap();
        let mut seen: Vec<usize> = g.cells().concat();
        seen.sort_unstable();
        prop_assert_eq!(seen, (0..g.vertices.len()).collect::<Vec<_>>());
        prop_assert_eq!(g.to_dot("x", &[]), g.to_dot("x", &[]));
    }

    #[test]
    fn psi_is_an_involution(m in 0usize..4, n in 0usize..4, pick in any::<prop::sample::Index>()) {
        let labels = Model::TypeII { m, n }.enumerate();
        let sigma = pick.get(&labels);
        let f = shared();
        let tau = f.psi(sigma, m, n).unwrap();
        prop_assert_eq!(&f.psi(&tau, n, m).unwrap(), sigma);
    }

    #[test]
    fn phi_and_iota_are_involutive(m in 1usize..4, n in 0usize..4, pick in any::<prop::sample::Index>()) {
        let labels = Model::TypeIM1 { m, n }.enumerate();
        let sigma = pick.get(&labels);
        let f = shared();
        let tau = f.phi(sigma, m, n).unwrap();
        prop_assert_eq!(&f.phi_inverse(&tau, m, n).unwrap(), sigma);
        let i = f.iota_m(sigma, m, n).unwrap();
        prop_assert_eq!(&f.iota_m(&i, m, n).unwrap(), sigma);
    }

    #[test]
    fn staircase_transform_is_involutive(m in 0usize..6, n in 0usize..6, pick in any::<prop::sample::Index>()) {
        let pairs = StaircasePair::enumerate(m, n);
        let mu = pick.get(&pairs);
        prop_assert_eq!(&psi_bullet(&psi_bullet(mu)), mu);
    }

    #[test]
    fn multiplicity_is_symmetric(a in partition(7), b in partition(7)) {
        prop_assert_eq!(multiplicity(&a, &b), multiplicity(&b, &a));
    }
}

#[test]
fn staircase_labels_are_distinct() {
    for m in 0..=5 {
        for n in 0..=5 {
            let pairs = StaircasePair::enumerate(m, n);
            let labels: std::collections::BTreeSet<Matching> = pairs.iter().map(pp_to_pm).collect();
            assert_eq!(labels.len(), pairs.len(), "({m},{n})");
        }
    }
}

#[test]
fn generators_parse_back() {
    for s in [Refl::S(1), Refl::Sp(3), Refl::T] {
        assert_eq!(s.to_string().parse::<Refl>().unwrap(), s);
    }
}
