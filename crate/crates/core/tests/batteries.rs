//! Every shipped HS-frame through every battery.

use hsframes_core::constructions::{
    haar_hs_basis, hilbert_frame_hs, lp_unit_basis_hs, mercedes_benz, random_hilbert_frame,
};
use hsframes_core::frames::{partial_sum_reconstruct, FramePair};
use hsframes_core::hs::{
    analysis_operator, bessel_bound_check, check_structure, eq1_max_relative_error,
    factorization_check, hilbert_embedding_diagnostic, local_duality_curve, uniqueness_probe,
    verify_hs_frame, HsfOperator, ProbeKind, UniquenessReport, DEFAULT_TOL,
};
use hsframes_core::rng::normal_samples;
use hsframes_core::{EstimatorConfig, Exponent, SeqVec};

fn e(p: f64) -> Exponent {
    Exponent::new(p).unwrap()
}

fn shipped() -> Vec<(&'static str, FramePair, HsfOperator)> {
    let mut out = Vec::new();
    for p in [1.0, 1.25, 1.5, 2.0] {
        let (pair, h) = lp_unit_basis_hs(8, e(p)).unwrap();
        out.push(("lp_basis", pair, h));
    }
    for p in [1.25, 1.5, 2.0] {
        let (pair, h) = haar_hs_basis(3, e(p)).unwrap();
        out.push(("haar", pair, h));
    }
    let (pair, h) = hilbert_frame_hs(&mercedes_benz()).unwrap();
    out.push(("mercedes_benz", pair, h));
    let (pair, h) = hilbert_frame_hs(&random_hilbert_frame(5, 10, 7).unwrap()).unwrap();
    out.push(("hilbert_frame", pair, h));
    out
}

#[test]
fn structure_holds_for_every_construction() {
    for (name, _, h) in shipped() {
        let r = check_structure(&h, 200, 0).unwrap();
        assert!(r.symmetric && r.positive, "{name}: {r:?}");
        assert!(r.sigma_min > 0.0, "{name}");
        assert!(r.sampled_min_ratio >= r.min_eigenvalue - 1e-12, "{name}");
    }
}

#[test]
fn quadratic_form_identity_on_ten_thousand_samples() {
    for (name, _, h) in shipped() {
        let err = eq1_max_relative_error(&h, 10_000, 0).unwrap();
        assert!(err <= 1e-9, "{name}: {err}");
    }
}

#[test]
fn bessel_and_analysis_bounds() {
    let cfg = EstimatorConfig::new(16, 0);
    for (name, _, h) in shipped() {
        let rep = bessel_bound_check(&h, 2000, 0, &cfg).unwrap();
        if let Some(exact) = h.exact_norm() {
            assert_eq!(rep.holds, Some(true), "{name}");
            let a = analysis_operator(&h).norm_estimate(&cfg).unwrap();
            assert!(a <= exact.sqrt() + 1e-6, "{name}: {a} vs {exact}");
        } else {
            assert_eq!(rep.holds, None);
            assert!(!rep.s_norm_is_exact);
        }
    }
}

#[test]
fn factorization_and_reconstruction() {
    for (name, pair, h) in shipped() {
        assert!(factorization_check(&h) <= 1e-12, "{name}");
        for c in normal_samples(11, 0, 1000, pair.dim()) {
            let x = SeqVec::new(c, pair.exponent());
            let r = partial_sum_reconstruct(&pair, &x, pair.len()).unwrap();
            for (a, b) in x.coeffs().iter().zip(r.coeffs()) {
                assert!((a - b).abs() <= 1e-10, "{name}");
            }
        }
    }
}

#[test]
fn local_duality_closes_at_full_span() {
    for (name, pair, h) in shipped() {
        for n in 1..=pair.len() {
            let curve = local_duality_curve(&h, n).unwrap();
            assert!(curve.last().unwrap().1 <= 1e-10, "{name} n={n}");
        }
    }
}

#[test]
fn pairs_verify_and_are_self_unique() {
    for (name, pair, _) in shipped() {
        assert!(verify_hs_frame(&pair, DEFAULT_TOL).is_ok(), "{name}");
        for kind in [ProbeKind::SharedVectors, ProbeKind::SharedFunctionals] {
            match uniqueness_probe(&pair, &pair.clone(), kind, DEFAULT_TOL) {
                UniquenessReport::Applicable {
                    sequence_defect,
                    operator_defect,
                } => assert!(sequence_defect == 0.0 && operator_defect == 0.0),
                other => panic!("{name}: {other:?}"),
            }
        }
    }
}

#[test]
fn haar_pair_is_unique_across_representation_levels() {
    let p = e(1.5);
    let (direct, _) = haar_hs_basis(3, p).unwrap();
    let assembled = hsframes_core::constructions::haar_pair_from_atoms(3, p, 6).unwrap();
    match uniqueness_probe(&direct, &assembled, ProbeKind::SharedVectors, 1e-12) {
        UniquenessReport::Applicable {
            sequence_defect,
            operator_defect,
        } => assert!(sequence_defect <= 1e-12 && operator_defect <= 1e-12),
        other => panic!("{other:?}"),
    }
}

#[test]
fn embedding_curves() {
    let cfg = EstimatorConfig::default();
    let ns = [2, 4, 8, 16];
    let flat: Vec<HsfOperator> = ns.iter().map(|&n| lp_unit_basis_hs(n, Exponent::TWO).unwrap().1).collect();
    for (_, v) in hilbert_embedding_diagnostic(&flat, &cfg).unwrap() {
        assert!((v - 1.0).abs() <= 1e-12);
    }
    let p = e(1.5);
    let family: Vec<HsfOperator> = ns.iter().map(|&n| lp_unit_basis_hs(n, p).unwrap().1).collect();
    let curve = hilbert_embedding_diagnostic(&family, &cfg).unwrap();
    for w in curve.windows(2) {
        assert!(w[1].1 < w[0].1);
    }
    for (n, v) in curve {
        let oracle = (n as f64).powf(0.5 - 1.0 / 1.5);
        assert!((v - oracle).abs() <= 1e-3, "N={n}: {v} vs {oracle}");
    }
}
