use nalgebra::{Isometry3, Translation3, UnitQuaternion, Vector3};
use peelkit::catalog;
use peelkit::classify::{classify, pattern_classes};
use peelkit::peel::{peel, start_pairs, Handedness, PeelConfig};
use peelkit::Polyhedron;
use proptest::prelude::*;

fn solid(i: usize) -> &'static Polyhedron {
    let all = catalog::all();
    &all[i % all.len()].polyhedron
}

fn pair(p: &Polyhedron, k: usize) -> (usize, usize) {
    let pairs = start_pairs(p);
    pairs[k % pairs.len()]
}

fn rigid_motion() -> impl Strategy<Value = Isometry3<f64>> {
    (
        prop::array::uniform3(-1.0f64..1.0),
        0.1f64..std::f64::consts::PI,
        prop::array::uniform3(-5.0f64..5.0),
    )
        .prop_filter("axis must not vanish", |(a, _, _)| {
            Vector3::from(*a).norm() > 1e-3
        })
        .prop_map(|(axis, angle, shift)| {
            let axis = Vector3::from(axis).normalize();
            Isometry3::from_parts(
                Translation3::from(Vector3::from(shift)),
                UnitQuaternion::from_scaled_axis(axis * angle),
            )
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rigid_motion_keeps_the_sequence(i in 0usize..31, k in 0usize..1000, iso in rigid_motion()) {
        let p = solid(i);
        let (f1, f2) = pair(p, k);
        let cfg = PeelConfig::default();
        let a = peel(p, f1, f2, &cfg).unwrap();
        let b = peel(&p.transformed(&iso), f1, f2, &cfg).unwrap();
        prop_assert_eq!(a.order(), b.order());
        prop_assert_eq!(a.outcome, b.outcome);
    }

    #[test]
    fn peel_is_deterministic(i in 0usize..31, k in 0usize..1000) {
        let p = solid(i);
        let (f1, f2) = pair(p, k);
        let cfg = PeelConfig::with_handedness(Handedness::Left);
        prop_assert_eq!(peel(p, f1, f2, &cfg).unwrap(), peel(p, f1, f2, &cfg).unwrap());
    }

    #[test]
    fn left_hand_is_right_hand_on_the_mirror(i in 0usize..31, k in 0usize..1000) {
        let p = solid(i);
        let (f1, f2) = pair(p, k);
        let left = peel(p, f1, f2, &PeelConfig::with_handedness(Handedness::Left)).unwrap();
        let right = peel(&p.mirror(), f1, f2, &PeelConfig::default()).unwrap();
        prop_assert_eq!(left.order(), right.order());
        prop_assert_eq!(left.outcome, right.outcome);
    }

    #[test]
    fn sequence_is_an_adjacent_chain(i in 0usize..31, k in 0usize..1000, left in any::<bool>()) {
        let p = solid(i);
        let (f1, f2) = pair(p, k);
        let hand = if left { Handedness::Left } else { Handedness::Right };
        let run = peel(p, f1, f2, &PeelConfig::with_handedness(hand)).unwrap();
        let order = run.order();
        prop_assert_eq!(&order[..2], &[f1, f2]);
        for w in order.windows(2) {
            prop_assert!(p.adjacency().are_adjacent(w[0], w[1]));
        }
        let mut all: Vec<usize> = order.iter().chain(&run.remaining).copied().collect();
        all.sort_unstable();
        prop_assert_eq!(all, (0..p.face_count()).collect::<Vec<_>>());
        prop_assert_eq!(run.is_complete(), run.remaining.is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn pattern_classes_ignore_run_order(i in 0usize..31, seed in any::<u64>()) {
        let p = solid(i);
        let mut runs = peelkit::peel_all_pairs(p, &PeelConfig::default()).unwrap();
        let before = pattern_classes(p, &runs);
        // deterministic shuffle from the seed
        let mut s = seed | 1;
        for j in (1..runs.len()).rev() {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            runs.swap(j, (s % (j as u64 + 1)) as usize);
        }
        prop_assert_eq!(before, pattern_classes(p, &runs));
    }

    #[test]
    fn verdict_survives_rigid_motion(i in 0usize..31, iso in rigid_motion()) {
        let p = solid(i);
        let cfg = PeelConfig::default();
        let a = classify(p, &cfg).unwrap();
        let b = classify(&p.transformed(&iso), &cfg).unwrap();
        prop_assert_eq!(a.verdict, b.verdict);
        prop_assert_eq!(a.complete, b.complete);
    }
}
