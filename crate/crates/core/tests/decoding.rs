mod common;

use berman::code::{generator_matrix, is_codeword, CodeSpec, Family};
use berman::decode::{
    berman_cost_factor, decode, decode_berman_counted, decode_dual_berman_counted, dual_berman_cost_factor,
    md_oracle_decode,
};
use berman::BitVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Errors of weight below this are always corrected.
fn radius(spec: &CodeSpec) -> usize {
    match spec.family() {
        Family::Berman => 1 << spec.r(),
        Family::DualBerman => spec.n().pow((spec.m() - spec.r()) as u32).div_ceil(2),
    }
}

fn small_specs() -> Vec<CodeSpec> {
    let mut out = Vec::new();
    for n in 2..=3 {
        for m in 1..=3 {
            for r in 0..=m {
                out.push(CodeSpec::berman(n, r, m).unwrap());
                out.push(CodeSpec::dual_berman(n, r, m).unwrap());
            }
        }
    }
    out
}

#[test]
fn random_inputs_always_decode_to_codewords() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for spec in [
        CodeSpec::berman(3, 1, 2).unwrap(),
        CodeSpec::dual_berman(3, 1, 2).unwrap(),
        CodeSpec::berman(3, 1, 3).unwrap(),
        CodeSpec::dual_berman(3, 1, 3).unwrap(),
        CodeSpec::berman(4, 1, 2).unwrap(),
        CodeSpec::dual_berman(4, 1, 2).unwrap(),
    ] {
        for _ in 0..10_000 {
            let y = common::random_word(&mut rng, spec.length());
            let out = decode(&spec, &y).unwrap();
            assert!(is_codeword(&spec, &out.codeword).unwrap(), "{spec}");
        }
    }
}

#[test]
fn bounded_distance_guarantee_small_codes() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for spec in small_specs() {
        let g = generator_matrix(&spec);
        let len = spec.length();
        let words: Vec<BitVector> = if g.num_rows() <= 12 {
            common::codebook(&g)
        } else {
            (0..64).map(|_| common::random_codeword(&mut rng, &g)).collect()
        };
        for w in 0..radius(&spec).min(len + 1) {
            let count = (0..w).fold(1u128, |acc, i| acc * (len - i) as u128 / (i + 1) as u128);
            if count * words.len() as u128 <= 200_000 {
                for c in &words {
                    for e in common::all_errors(len, w) {
                        let out = decode(&spec, &c.xor(&e)).unwrap();
                        assert_eq!(&out.codeword, c, "{spec} error weight {w}");
                    }
                }
            } else {
                // Too many patterns to enumerate; sample (codeword, error) pairs.
                for t in 0..2000 {
                    let c = &words[t % words.len()];
                    let e = common::random_error(&mut rng, len, w);
                    let out = decode(&spec, &c.xor(&e)).unwrap();
                    assert_eq!(&out.codeword, c, "{spec} error weight {w}");
                }
            }
        }
    }
}

#[test]
fn recursive_decoders_agree_with_oracle_inside_radius() {
    for spec in [
        CodeSpec::berman(3, 1, 2).unwrap(),
        CodeSpec::dual_berman(3, 1, 2).unwrap(),
    ] {
        let book = common::codebook(&generator_matrix(&spec));
        for c in &book {
            for w in 0..radius(&spec) {
                for e in common::all_errors(9, w) {
                    let y = c.xor(&e);
                    assert_eq!(
                        decode(&spec, &y).unwrap().codeword,
                        md_oracle_decode(&spec, &y).unwrap()
                    );
                }
            }
        }
    }
}

#[test]
fn berman_weight_three_errors_in_d3_2_3() {
    let spec = CodeSpec::berman(3, 2, 3).unwrap();
    let g = generator_matrix(&spec);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..1000 {
        let c = common::random_codeword(&mut rng, &g);
        let e = common::random_error(&mut rng, 27, 3);
        assert_eq!(decode(&spec, &c.xor(&e)).unwrap().codeword, c);
    }
}

#[test]
fn operation_counts_respect_recursive_bounds() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let n = 3usize;
    let exp_dual = 1.0 + 2f64.ln() / 3f64.ln();
    let exp_berman = 1.0 + (2.0 + 1.0 / 3.0f64).ln() / 3f64.ln();
    let mut ratios_dual = Vec::new();
    let mut ratios_berman = Vec::new();
    for m in 3..=7 {
        let len = n.pow(m as u32);
        let big_n = len as f64;
        let (mut worst_dual, mut worst_berman) = (0u64, 0u64);
        for r in 0..=m {
            for _ in 0..3 {
                let y = common::random_word(&mut rng, len);
                let (_, ops) = decode_dual_berman_counted(&CodeSpec::dual_berman(n, r, m).unwrap(), &y).unwrap();
                assert!(
                    ops as f64 <= dual_berman_cost_factor(n, m) * big_n,
                    "dual r={r} m={m}: {ops}"
                );
                worst_dual = worst_dual.max(ops);
                let (_, ops) = decode_berman_counted(&CodeSpec::berman(n, r, m).unwrap(), &y).unwrap();
                assert!(
                    ops as f64 <= berman_cost_factor(n, m) * big_n,
                    "berman r={r} m={m}: {ops}"
                );
                worst_berman = worst_berman.max(ops);
            }
        }
        ratios_dual.push(worst_dual as f64 / big_n.powf(exp_dual));
        ratios_berman.push(worst_berman as f64 / big_n.powf(exp_berman));
    }
    // A single constant per decoder must cover every m, so the normalized
    // counts may not keep growing.
    for ratios in [&ratios_dual, &ratios_berman] {
        for w in ratios.windows(2) {
            assert!(w[1] <= 1.5 * w[0], "normalized cost jumps: {ratios:?}");
        }
        assert!(
            ratios[ratios.len() - 1] <= 2.5 * ratios[0],
            "normalized cost drifts: {ratios:?}"
        );
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    fn spec_strategy() -> impl Strategy<Value = CodeSpec> {
        (2usize..=4, 1usize..=3, any::<bool>())
            .prop_flat_map(|(n, m, b)| (Just(n), 0..=m, Just(m), Just(b)))
            .prop_map(|(n, r, m, b)| {
                CodeSpec::new(n, r, m, if b { Family::Berman } else { Family::DualBerman }).unwrap()
            })
    }

    proptest! {
        #[test]
        fn output_is_a_codeword_and_corrections_are_the_difference(
            spec in spec_strategy(),
            bits in proptest::collection::vec(any::<bool>(), 64),
        ) {
            let y = BitVector::from_bits(&bits[..spec.length()]);
            let out = decode(&spec, &y).unwrap();
            prop_assert!(is_codeword(&spec, &out.codeword).unwrap());
            let diff: Vec<usize> = y.xor(&out.codeword).iter_ones().collect();
            prop_assert_eq!(diff, out.corrected_positions);
        }

        #[test]
        fn errors_inside_radius_are_corrected(spec in spec_strategy(), seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = common::random_codeword(&mut rng, &generator_matrix(&spec));
            let w = rand::Rng::gen_range(&mut rng, 0..radius(&spec).min(spec.length() + 1));
            let e = common::random_error(&mut rng, spec.length(), w);
            prop_assert_eq!(decode(&spec, &c.xor(&e)).unwrap().codeword, c);
        }
    }
}
