use hychroma::verify::{verify_coloring, Counterexample, Strategy};
use hychroma::{ColoringCertificate, ColoringMode, Guard};
use proptest::prelude::*;

fn recheck(cert: &ColoringCertificate, ce: &Counterexample) {
    match *ce {
        Counterexample::Pair { u, v, distance } => {
            assert_ne!(u, v);
            assert_eq!((u ^ v).count_ones(), distance);
            assert_eq!(cert.color(u), cert.color(v));
            match cert.mode() {
                ColoringMode::AtMostD => assert!(distance <= cert.d()),
                ColoringMode::ExactD => assert_eq!(distance, cert.d()),
            }
        }
        Counterexample::ColorOutOfRange { vertex, color } => {
            assert_eq!(cert.color(vertex), color);
            assert!(color >= cert.color_count());
        }
        Counterexample::UnusedColor { color } => {
            assert!(cert.assignment().iter().all(|&c| c != color));
        }
        ref other => panic!("unexpected counterexample for a coloring: {other:?}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn strategies_agree_on_random_colorings(
        n in 1usize..=10,
        d_seed in 0u32..10,
        colors in 1u32..40,
        exact in any::<bool>(),
        seed in any::<u64>(),
    ) {
        let d = d_seed % n as u32 + 1;
        let mode = if exact { ColoringMode::ExactD } else { ColoringMode::AtMostD };
        let mut state = seed | 1;
        let assignment: Vec<u32> = (0..1u64 << n)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                (state % colors as u64) as u32
            })
            .collect();
        let cert = ColoringCertificate::new(n, d, mode, colors, assignment, "random").unwrap();
        let a = verify_coloring(&cert, Strategy::Neighbor, Guard::Enforce).unwrap();
        let b = verify_coloring(&cert, Strategy::Pairwise, Guard::Enforce).unwrap();
        prop_assert_eq!(a.passed, b.passed);
        for r in [&a, &b] {
            prop_assert_eq!(r.passed, r.counterexample.is_none());
            if let Some(ce) = &r.counterexample {
                recheck(&cert, ce);
            }
        }
    }
}

#[test]
fn proper_colorings_pass_both_strategies() {
    for n in 1..=10usize {
        // color by vertex index: every class is a singleton
        let cert = ColoringCertificate::new(n, n as u32, ColoringMode::AtMostD, 1 << n, (0..1u32 << n).collect(), "singletons").unwrap();
        for s in [Strategy::Neighbor, Strategy::Pairwise, Strategy::Auto] {
            assert!(verify_coloring(&cert, s, Guard::Enforce).unwrap().passed, "n={n} {s}");
        }
    }
}
