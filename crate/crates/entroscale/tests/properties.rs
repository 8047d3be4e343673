//! Randomized invariants over the public surface.

use entroscale::attention::{
    attend, build_mask, temperature, AttentionSpec, MaskSpec, TemperatureSchedule,
};
use entroscale::entropy::entropy_estimate_closed;
use entroscale::numerics::matrix::{dot, norm};
use entroscale::numerics::rng::{sample_hypersphere, sample_spherical_cap, SeededRng};
use entroscale::positional::{rope_rotate, PositionalScheme, DEFAULT_ROPE_BASE};
use entroscale::sweeps::cos_histogram;
use entroscale::theory::eta_star_theoretical;
use proptest::prelude::*;

fn schedule_strategy(d: usize) -> impl Strategy<Value = TemperatureSchedule> {
    prop_oneof![
        Just(TemperatureSchedule::Vanilla),
        Just(TemperatureSchedule::LogLength),
        (64usize..=512).prop_map(|base_len| TemperatureSchedule::SoftmaxPlus { base_len }),
        (8usize..=128).prop_map(|n_tr| TemperatureSchedule::YarnPreSoftmax { n_tr }),
        ((8usize..=128), -0.5f64..0.5).prop_map(move |(n_tr, epsilon)| {
            TemperatureSchedule::InfoScale {
                n_tr,
                d_k: d,
                epsilon,
            }
        }),
        (0.25f64..4.0).prop_map(|value| TemperatureSchedule::Fixed { value }),
    ]
}

fn mask_strategy(n: usize) -> impl Strategy<Value = MaskSpec> {
    // sinks + w <= n, which build_mask requires
    let sink_window = move || (1..=n).prop_flat_map(move |w| (Just(w), 0..=(n - w).min(3)));
    prop_oneof![
        Just(MaskSpec::Full),
        Just(MaskSpec::Causal),
        (1..=n).prop_map(|w| MaskSpec::Windowed { w }),
        sink_window().prop_map(|(w, sinks)| MaskSpec::SinkWindow { sinks, w }),
        sink_window().prop_map(|(w, sinks)| MaskSpec::LambdaShaped { sinks, w }),
    ]
}

fn positional_strategy() -> impl Strategy<Value = PositionalScheme> {
    prop_oneof![
        Just(PositionalScheme::NoPe),
        Just(PositionalScheme::rope()),
        (1.0f64..8.0).prop_map(|factor| PositionalScheme::PiRope {
            base: DEFAULT_ROPE_BASE,
            factor,
        }),
        (1usize..=64).prop_map(|window| PositionalScheme::ReRope {
            base: DEFAULT_ROPE_BASE,
            window,
        }),
        prop::sample::select(vec![1usize, 2, 4, 8, 16])
            .prop_map(|head_count| PositionalScheme::Alibi { head_count }),
    ]
}

fn spec_strategy() -> impl Strategy<Value = (AttentionSpec, u64)> {
    ((2usize..=20), (2usize..=8), any::<u64>()).prop_flat_map(|(n, half_d, seed)| {
        let d = 2 * half_d;
        (
            Just(n),
            Just(d),
            schedule_strategy(d),
            mask_strategy(n),
            positional_strategy(),
            any::<bool>(),
            1.0f64..64.0,
            Just(seed),
        )
            .prop_map(
                |(n, d_k, schedule, mask, positional, cosine, cos_scale, seed)| {
                    (
                        AttentionSpec {
                            n,
                            d_k,
                            schedule,
                            mask,
                            positional,
                            cosine,
                            cos_scale,
                        },
                        seed,
                    )
                },
            )
    })
}

fn unit_pair_strategy() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    (1usize..=16).prop_flat_map(|half_d| {
        let d = 2 * half_d;
        (
            prop::collection::vec(-2.0f64..2.0, d..=d),
            prop::collection::vec(-2.0f64..2.0, d..=d),
        )
    })
}

proptest! {
    #[test]
    fn attention_rows_are_masked_distributions((spec, seed) in spec_strategy()) {
        let mut rng = SeededRng::new(seed).stream(0);
        let x = sample_hypersphere(&mut rng, spec.d_k, (spec.d_k as f64).sqrt(), spec.n).unwrap();
        let (_, probs) = attend(&x, &x, &x, &spec).unwrap();
        let mask = build_mask(&spec.mask, spec.n).unwrap();
        for i in 0..spec.n {
            let sum: f64 = probs.row(i).iter().sum();
            prop_assert!((sum - 1.0).abs() <= 1e-10, "row {i} sums to {sum}");
            for j in 0..spec.n {
                let p = probs.get(i, j);
                prop_assert!(p >= 0.0);
                if mask.get(i, j) != 0.0 {
                    prop_assert!(p == 0.0, "masked cell ({i}, {j}) holds {p}");
                }
            }
        }
    }

    #[test]
    fn rope_rotation_preserves_norm(
        (x, _) in unit_pair_strategy(),
        position in 0u64..4096,
        base in 100.0f64..100_000.0,
    ) {
        let rotated = rope_rotate(&x, position, base).unwrap();
        let before = norm(&x);
        let after = norm(&rotated);
        prop_assert!((after - before).abs() <= 1e-12 * (1.0 + before));
    }

    #[test]
    fn rope_scores_depend_only_on_relative_position(
        (q, k) in unit_pair_strategy(),
        i in 0u64..512,
        j in 0u64..512,
        shift in 0u64..512,
    ) {
        let base = DEFAULT_ROPE_BASE;
        let here = dot(
            &rope_rotate(&q, i, base).unwrap(),
            &rope_rotate(&k, j, base).unwrap(),
        );
        let there = dot(
            &rope_rotate(&q, i + shift, base).unwrap(),
            &rope_rotate(&k, j + shift, base).unwrap(),
        );
        prop_assert!((here - there).abs() <= 1e-9 * (1.0 + here.abs()));
    }

    #[test]
    fn infoscale_multiplier_grows_with_length(
        n_tr in 4usize..=256,
        d in 2usize..=256,
        epsilon in -0.5f64..0.5,
        a in 0usize..2048,
        b in 0usize..2048,
    ) {
        let schedule = TemperatureSchedule::InfoScale { n_tr, d_k: d, epsilon };
        let near = temperature(&schedule, n_tr + a.min(b), d).unwrap();
        let far = temperature(&schedule, n_tr + a.max(b), d).unwrap();
        prop_assert!(far >= near);
        let calibrated = temperature(&schedule, n_tr, d).unwrap();
        prop_assert_eq!(calibrated, 1.0);
    }

    #[test]
    fn eta_star_is_stationary(alpha in 0.05f64..400.0, d in 3usize..=256) {
        let eta = eta_star_theoretical(alpha, d);
        prop_assert!(eta > 0.0 && eta <= 1.0);
        if d == 3 {
            prop_assert_eq!(eta, 1.0);
        } else {
            prop_assert!(eta < 1.0);
            let residual = alpha * (1.0 - eta * eta) - (d as f64 - 3.0) * eta;
            prop_assert!(residual.abs() <= 1e-9 * (alpha + d as f64));
        }
    }

    #[test]
    fn histogram_conserves_counts(
        values in prop::collection::vec(-1.0f64..=1.0, 1..400),
        bins in 2usize..=32,
    ) {
        let (edges, counts) = cos_histogram(&values, bins).unwrap();
        prop_assert_eq!(counts.iter().sum::<usize>(), values.len());
        prop_assert_eq!(edges.len(), bins + 1);
        for pair in edges.windows(2) {
            prop_assert!(pair[0] < pair[1]);
        }
    }

    #[test]
    fn closed_entropy_forms_are_ordered(
        lambda in 0.0f64..0.9,
        d in 2usize..=128,
        n in 2usize..=4096,
    ) {
        let (exact, taylor) = entropy_estimate_closed(lambda, 1.0, d, n).unwrap();
        let ln_n = (n as f64).ln();
        prop_assert!(exact <= ln_n + 1e-12);
        prop_assert!(taylor <= exact + 1e-12);
    }

    #[test]
    fn cap_samples_stay_near_the_axis(
        seed in any::<u64>(),
        d in 2usize..=32,
        delta in 0.0f64..0.9,
        n in 1usize..16,
    ) {
        let mut rng = SeededRng::new(seed);
        let (axis, points) = sample_spherical_cap(&mut rng, d, delta, n).unwrap();
        for i in 0..n {
            let row = points.row(i);
            prop_assert!((norm(row) - 1.0).abs() <= 1e-9);
            prop_assert!(dot(row, &axis) >= 1.0 - delta - 1e-9);
        }
    }
}
