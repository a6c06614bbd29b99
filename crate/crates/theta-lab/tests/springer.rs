//! The Springer labels for `Sp(2k)` and `O(2k)` are bijections from the
//! pairs `(λ, χ)` that land in the image onto the bipartitions of `k`,
//! for `k ≤ 3`. The block-flip rule stops being injective at `k = 4`.

use std::collections::BTreeSet;

use theta_lab::partitions::{Partition, SignGroup};
use theta_lab::weylreps::{bipartitions, springer_o_even, springer_sp, IrrepLabel};

fn images(k: u32, orthogonal: bool) -> Vec<IrrepLabel> {
    let mut out = Vec::new();
    let parts = if orthogonal { Partition::orthogonal(2 * k) } else { Partition::symplectic(2 * k) };
    for lambda in parts {
        let group = if orthogonal { SignGroup::orthogonal(&lambda) } else { SignGroup::symplectic(&lambda) };
        for chi in group.characters() {
            let label = if orthogonal { springer_o_even(&lambda, &chi) } else { springer_sp(&lambda, &chi) };
            if let Some(l) = label.unwrap() {
                out.push(l);
            }
        }
    }
    out
}

fn all_bipartitions(k: usize) -> BTreeSet<IrrepLabel> {
    bipartitions(k).into_iter().map(|(a, b)| IrrepLabel::B(a, b)).collect()
}

#[test]
fn bijective_up_to_rank_three() {
    for k in 0..=3u32 {
        for orthogonal in [false, true] {
            let v = images(k, orthogonal);
            let set: BTreeSet<IrrepLabel> = v.iter().cloned().collect();
            assert_eq!(set.len(), v.len(), "k={k} orthogonal={orthogonal}: repeated label");
            assert_eq!(set, all_bipartitions(k as usize), "k={k} orthogonal={orthogonal}");
        }
    }
}

#[test]
fn rank_four_collides() {
    for orthogonal in [false, true] {
        let v = images(4, orthogonal);
        let set: BTreeSet<IrrepLabel> = v.iter().cloned().collect();
        assert!(set.len() < v.len(), "orthogonal={orthogonal}");
        assert!(set != all_bipartitions(4));
    }
}
