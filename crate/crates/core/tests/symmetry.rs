mod common;

use berman::code::{generator_matrix, parity_check_matrix, CodeSpec, Family};
use berman::symmetry::{puncture_code, punctured_spec, CoordinateAutomorphism, DirectProductSubset};
use berman::{BitVector, CoordSpace};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_automorphism<R: Rng>(rng: &mut R, n: usize, m: usize, per_coordinate: bool) -> CoordinateAutomorphism {
    if per_coordinate {
        CoordinateAutomorphism::PerCoordinate(
            (0..m)
                .map(|_| {
                    let mut p: Vec<usize> = (0..n).collect();
                    p.shuffle(rng);
                    p
                })
                .collect(),
        )
    } else {
        let mut g: Vec<usize> = (0..m).collect();
        g.shuffle(rng);
        CoordinateAutomorphism::PositionPermutation(g)
    }
}

#[test]
fn automorphisms_preserve_both_families() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for n in 2..=4 {
        for m in 1..=3 {
            for r in 0..=m {
                for f in [Family::Berman, Family::DualBerman] {
                    let spec = CodeSpec::new(n, r, m, f).unwrap();
                    let g = generator_matrix(&spec);
                    let h = parity_check_matrix(&spec);
                    for kind in [true, false] {
                        for _ in 0..50 {
                            let a = random_automorphism(&mut rng, n, m, kind);
                            for row in g.rows() {
                                let image = a.apply(row, n, m).unwrap();
                                assert!(h.mul_vec(&image).unwrap().is_zero(), "{spec} {a:?}");
                            }
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn code_is_transitive_on_coordinates() {
    let (n, m) = (3, 2);
    let space = CoordSpace::new(n, m).unwrap();
    for spec in [
        CodeSpec::berman(n, 1, m).unwrap(),
        CodeSpec::dual_berman(n, 1, m).unwrap(),
    ] {
        let g = generator_matrix(&spec);
        let h = parity_check_matrix(&spec);
        for i in space.tuples() {
            for j in space.tuples() {
                let a = CoordinateAutomorphism::moving(n, &i, &j).unwrap();
                assert_eq!(a.map_tuple(&i), j);
                let moved = a.apply(&BitVector::unit(9, space.index(&i).unwrap()), n, m).unwrap();
                assert_eq!(moved, BitVector::unit(9, space.index(&j).unwrap()));
                for row in g.rows() {
                    assert!(h.mul_vec(&a.apply(row, n, m).unwrap()).unwrap().is_zero());
                }
            }
        }
    }
}

#[test]
fn inverse_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (n, m) = (3, 3);
    for t in 0..1000 {
        let a = random_automorphism(&mut rng, n, m, t % 2 == 0);
        let v = common::random_word(&mut rng, 27);
        let back = a.inverse().apply(&a.apply(&v, n, m).unwrap(), n, m).unwrap();
        assert_eq!(back, v);
    }
}

fn subsets(m: usize, max: usize) -> Vec<Vec<usize>> {
    (0u32..(1 << m))
        .filter(|s| s.count_ones() as usize <= max)
        .map(|s| (0..m).filter(|k| s >> k & 1 == 1).collect())
        .collect()
}

fn assignments(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p| (0..n).map(move |b| [p.clone(), vec![b]].concat()))
            .collect();
    }
    out
}

#[test]
fn puncturing_lands_in_the_family() {
    let n = 3;
    for m in 1..=3 {
        for k in subsets(m, 2) {
            if k.len() >= m {
                continue;
            }
            for b in assignments(n, k.len()) {
                let h = DirectProductSubset::new(n, m, &k, &b).unwrap();
                for r in 0..=m {
                    for f in [Family::Berman, Family::DualBerman] {
                        let spec = CodeSpec::new(n, r, m, f).unwrap();
                        let admissible = match f {
                            Family::DualBerman => r <= m - k.len(),
                            Family::Berman => r >= k.len(),
                        };
                        let got = puncture_code(&spec, &h);
                        if !admissible {
                            assert!(got.is_err());
                            continue;
                        }
                        let target = if k.is_empty() {
                            spec
                        } else {
                            punctured_spec(&spec, &h).unwrap()
                        };
                        assert!(
                            got.unwrap().row_space_equal(&generator_matrix(&target)).unwrap(),
                            "{spec} K={k:?} b={b:?}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn puncturing_composes() {
    // Pinning two positions at once equals pinning one, then the other.
    let n = 3;
    let m = 3;
    let spec = CodeSpec::dual_berman(n, 1, m).unwrap();
    for (b0, b2) in [(0, 0), (1, 2), (2, 1)] {
        let both = DirectProductSubset::new(n, m, &[0, 2], &[b0, b2]).unwrap();
        let once = puncture_code(&spec, &both).unwrap();

        let first = DirectProductSubset::new(n, m, &[2], &[b2]).unwrap();
        let inner = punctured_spec(&spec, &first).unwrap();
        let step = puncture_code(&spec, &first).unwrap();
        assert!(step.row_space_equal(&generator_matrix(&inner)).unwrap());
        let second = DirectProductSubset::new(n, m - 1, &[0], &[b0]).unwrap();
        let cols = second.indices(&inner.space());
        let twice = step.select_columns(&cols).unwrap();
        assert!(once.row_space_equal(&twice).unwrap());
        assert!(once
            .row_space_equal(&generator_matrix(&CodeSpec::dual_berman(n, 1, 1).unwrap()))
            .unwrap());
    }
}

mod properties {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn automorphism_images_stay_in_code(n in 2usize..=4, m in 1usize..=3, r in 0usize..=3, dual in any::<bool>(), seed in any::<u64>()) {
            let r = r.min(m);
            let spec = CodeSpec::new(n, r, m, if dual { Family::DualBerman } else { Family::Berman }).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let a = random_automorphism(&mut rng, n, m, seed % 2 == 0);
            let c = common::random_codeword(&mut rng, &generator_matrix(&spec));
            let image = a.apply(&c, n, m).unwrap();
            prop_assert!(parity_check_matrix(&spec).mul_vec(&image).unwrap().is_zero());
            prop_assert_eq!(image.weight(), c.weight());
        }
    }
}
