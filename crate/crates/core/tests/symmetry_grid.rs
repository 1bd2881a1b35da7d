use std::sync::Arc;

use geneuler::chars::{character, enumerate_characters};
use geneuler::grid::{run_grid, CharacterSelection, Execution, GridSpec};
use geneuler::symmetry::{
    corollary2_side, multiplication_side, theorem1_side, theorem3_side, verify, CheckMode, Identity, Orientation,
    Perturbation, SymmetryParams, VerifyOptions, Witness,
};
use geneuler::Error;
use proptest::prelude::*;

fn params(d: u64, index: usize, w1: u64, w2: u64, m: u64, n: usize) -> SymmetryParams {
    SymmetryParams::new(Arc::new(character(d, index).unwrap()), w1, w2, m, n).unwrap()
}

#[test]
fn sides_exchange_under_weight_swap() {
    for chi in enumerate_characters(5).unwrap() {
        let p = SymmetryParams::new(Arc::new(chi), 3, 7, 2, 4).unwrap();
        let q = p.swapped();
        assert_eq!(theorem1_side(&p, Orientation::Left), theorem1_side(&q, Orientation::Right));
        assert_eq!(theorem3_side(&p, Orientation::Right), theorem3_side(&q, Orientation::Left));
        assert_eq!(corollary2_side(&p, Orientation::Left), corollary2_side(&q, Orientation::Right));
        assert_eq!(multiplication_side(&p, Orientation::Left), multiplication_side(&q, Orientation::Right));
    }
}

#[test]
fn corollary_is_the_y_free_part_of_the_theorem() {
    for chi in enumerate_characters(7).unwrap() {
        let p = SymmetryParams::new(Arc::new(chi), 1, 5, 1, 5).unwrap();
        for side in [Orientation::Left, Orientation::Right] {
            assert_eq!(theorem1_side(&p, side).y_constant_slice(), corollary2_side(&p, side));
            assert_eq!(theorem3_side(&p, side).y_constant_slice(), multiplication_side(&p, side));
        }
    }
}

#[test]
fn bivariate_sides_have_total_degree_n() {
    let p = params(5, 1, 3, 5, 2, 6);
    for side in [theorem1_side(&p, Orientation::Left), theorem3_side(&p, Orientation::Right)] {
        assert_eq!(side.total_degree(), Some(6));
    }
}

#[test]
fn order_zero_and_even_weights_rejected() {
    let chi = Arc::new(character(3, 1).unwrap());
    assert_eq!(SymmetryParams::new(chi.clone(), 1, 3, 0, 2).unwrap_err(), Error::InvalidOrder);
    assert_eq!(SymmetryParams::new(chi.clone(), 4, 3, 1, 2).unwrap_err(), Error::InvalidWeight(4));
    assert_eq!(SymmetryParams::new(chi, 1, 0, 1, 2).unwrap_err(), Error::InvalidWeight(0));
}

#[test]
fn identities_hold_on_a_mixed_grid() {
    for identity in [
        Identity::Theorem1,
        Identity::Theorem3,
        Identity::Corollary2,
        Identity::Multiplication,
        Identity::Cross,
    ] {
        let spec = GridSpec {
            identity,
            moduli: vec![9, 15],
            characters: CharacterSelection::All,
            weight_pairs: vec![(1, 5), (7, 3)],
            orders: vec![1, 2],
            max_n: 3,
            multipliers: vec![],
        };
        let reports = run_grid(&spec.tasks().unwrap(), &VerifyOptions::default(), Execution::Parallel(0)).unwrap();
        for r in reports {
            assert!(r.is_equal(), "{}", serde_json::to_string(&r).unwrap());
        }
    }
}

#[test]
fn every_perturbation_is_caught_somewhere() {
    for identity in [
        Identity::Theorem1,
        Identity::Theorem3,
        Identity::Corollary2,
        Identity::Multiplication,
        Identity::Cross,
    ] {
        for perturbation in [Perturbation::DropAlternatingSign, Perturbation::OffByOneWeight] {
            let opts = VerifyOptions {
                mode: CheckMode::Symbolic,
                perturbation,
            };
            let caught = (0..=4).any(|n| {
                enumerate_characters(3).unwrap().into_iter().any(|chi| {
                    let p = SymmetryParams::new(Arc::new(chi), 1, 3, 1, n).unwrap();
                    verify(identity, &p, &opts).unwrap().is_violation()
                })
            });
            assert!(caught, "{identity} with {perturbation:?}");
        }
    }
}

#[test]
fn witnesses_point_at_a_real_difference() {
    let opts = VerifyOptions {
        mode: CheckMode::Symbolic,
        perturbation: Perturbation::DropAlternatingSign,
    };
    let mut found = 0;
    for index in 0..4 {
        for n in 0..=4 {
            let p = params(5, index, 1, 3, 2, n);
            let r = verify(Identity::Theorem3, &p, &opts).unwrap();
            match r.witness {
                Some(Witness::Coefficient {
                    x_degree,
                    y_degree,
                    lhs,
                    rhs,
                    ..
                }) => {
                    assert_ne!(lhs, rhs);
                    assert!(x_degree + y_degree <= n);
                    found += 1;
                }
                Some(other) => panic!("expected a coefficient witness, got {other:?}"),
                None => assert!(r.is_equal()),
            }
        }
    }
    assert!(found > 0);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn sample_mode_agrees_with_symbolic(
        d in prop::sample::select(vec![1u64, 3, 5, 7]),
        seed in 0usize..16,
        w1 in prop::sample::select(vec![1u64, 3, 5]),
        w2 in prop::sample::select(vec![1u64, 3, 7]),
        m in 1u64..3,
        n in 0usize..5,
        drop_sign in any::<bool>(),
        identity in prop::sample::select(vec![Identity::Theorem1, Identity::Theorem3, Identity::Cross]),
    ) {
        let chars = enumerate_characters(d).unwrap();
        let chi = chars[seed % chars.len()].clone();
        let p = SymmetryParams::new(Arc::new(chi), w1, w2, m, n).unwrap();
        let perturbation = if drop_sign { Perturbation::DropAlternatingSign } else { Perturbation::None };
        let symbolic = verify(identity, &p, &VerifyOptions { mode: CheckMode::Symbolic, perturbation }).unwrap();
        let sampled = verify(identity, &p, &VerifyOptions { mode: CheckMode::Sample, perturbation }).unwrap();
        prop_assert_eq!(symbolic.verdict, sampled.verdict);
        if !drop_sign {
            prop_assert!(symbolic.is_equal());
        }
    }
}
