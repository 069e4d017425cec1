//! The Haar module against literal sums over atoms.

use hsframes_core::constructions::haar_hs_basis;
use hsframes_core::haar::{haar_atom, haar_dual_coefficient, haar_partial_sum, normalized_atom};
use hsframes_core::hs::{factorization_check, pair_operator};
use hsframes_core::{Exponent, HaarIndex, StepFunction};

fn idx(n: usize) -> HaarIndex {
    HaarIndex::new(n).unwrap()
}

#[test]
fn biorthogonal_through_level_six() {
    let level = 6;
    let cells = 1usize << level;
    for m in 1..=cells {
        let atom = haar_atom(idx(m), level).unwrap();
        for n in 1..=cells {
            let c = haar_dual_coefficient(&atom, idx(n)).unwrap();
            assert_eq!(c, if m == n { 1.0 } else { 0.0 }, "m={m} n={n}");
        }
    }
}

#[test]
fn partial_sums_match_literal_expansion() {
    let level = 5;
    let f = StepFunction::from_midpoints(level, |t| (7.0 * t).sin() + t * t).unwrap();
    let cells = 1usize << level;
    let mut literal = vec![0.0; cells];
    for m in 1..=cells {
        let c = haar_dual_coefficient(&f, idx(m)).unwrap();
        for (acc, h) in literal.iter_mut().zip(haar_atom(idx(m), level).unwrap().values()) {
            *acc += c * h;
        }
        let fast = haar_partial_sum(&f, m).unwrap();
        for (a, b) in fast.values().iter().zip(&literal) {
            assert!((a - b).abs() <= 1e-12, "m={m}");
        }
    }
}

#[test]
fn identity_function_is_recovered_at_full_span() {
    for level in 1..=8 {
        let f = StepFunction::from_midpoints(level, |t| t).unwrap();
        let s = haar_partial_sum(&f, 1 << level).unwrap();
        assert_eq!(s, f);
    }
}

#[test]
fn operator_maps_normalized_atoms_to_dual_atoms() {
    let p = Exponent::new(1.5).unwrap();
    let q = p.conjugate();
    let (pair, h) = haar_hs_basis(4, p).unwrap();
    assert!(h.defining_defect() <= 1e-12);
    assert!(factorization_check(&h) <= 1e-12);
    assert!(h.op().max_abs_diff(&pair_operator(&pair)).unwrap() <= 1e-12);
    // The same statement on functions: pairing dual atom m with normalized
    // atom n by integration gives δ_mn.
    for m in 1..=16 {
        let dual = normalized_atom(idx(m), q, 4).unwrap();
        for n in 1..=16 {
            let x = normalized_atom(idx(n), p, 4).unwrap();
            let v = dual.integral_product(&x).unwrap();
            let expect = if m == n { 1.0 } else { 0.0 };
            assert!((v - expect).abs() <= 1e-12, "m={m} n={n}: {v}");
        }
    }
}
