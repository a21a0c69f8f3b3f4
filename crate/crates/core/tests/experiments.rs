use pivotgrowth::experiments::{
    column_relative_deviation, exact_intermediates, exponential_model_neighbor_stats, growth_pairs, histogram2d,
    neighborhood_study, summarize, verify_suite, verify_suite_with, ExpModel, GrowthPair, Moments, SampleEnsemble,
};
use pivotgrowth::models;
use pivotgrowth::randgen::{haar_orthogonal, RngStream};
use pivotgrowth::search::StepKind;
use pivotgrowth::{Error, Matrix};

fn gp(gepp: f64, gecp: f64) -> GrowthPair {
    GrowthPair { gepp, gecp }
}

#[test]
fn summary_of_a_hand_built_sample() {
    let pairs = [gp(1.0, 2.0), gp(2.0, 2.01), gp(3.0, 1.0), gp(1.5, 1.5), gp(4.0, 2.0)];
    let s = summarize(&pairs, 0.05).unwrap();
    assert_eq!((s.p_less, s.p_equal, s.p_greater), (0.2, 0.4, 0.4));
    assert_eq!(s.gepp.median, 2.0);
    assert_eq!(s.gepp.mean, 2.3);
    // sample variance of 1, 2, 3, 1.5, 4 is 5.8 / 4
    assert!((s.gepp.std - 1.45f64.sqrt()).abs() < 1e-15);
    assert_eq!(Moments::of(&[3.0, 1.0, 2.0, 10.0]).unwrap().median, 2.5);
    assert!(summarize(&[], 0.05).is_err());
}

#[test]
fn histogram_bins_by_row_and_column() {
    let pairs = [gp(1.0, 1.0), gp(1.9, 1.1), gp(1.0, 2.0), gp(5.0, -3.0)];
    let h = histogram2d(&pairs, 2, Some(((1.0, 2.0), (1.0, 2.0)))).unwrap();
    assert_eq!(h.get(0, 0), 0.25);
    // out-of-range samples clamp into the edge bins
    assert_eq!(h.get(1, 0), 0.5);
    assert_eq!(h.get(0, 1), 0.25);
    assert_eq!(h.get(1, 1), 0.0);
    assert_eq!(h.gepp_axis.center(0), 1.25);
    assert_eq!(h.band_mass(0.1), 0.25);
    let m = h.to_matrix().unwrap();
    assert_eq!((m.rows(), m.cols()), (2, 2));
    assert!(histogram2d(&pairs, 0, None).is_err());
    assert!(histogram2d(&pairs, 4, Some(((2.0, 1.0), (1.0, 2.0)))).is_err());
}

#[test]
fn sampling_is_deterministic_in_the_seed() {
    let rng = RngStream::new(9, 0);
    let a = growth_pairs(SampleEnsemble::Ginibre, 4, 64, &rng).unwrap();
    let b = growth_pairs(SampleEnsemble::Ginibre, 4, 64, &rng).unwrap();
    assert_eq!(a, b);
    assert_eq!(a.pairs.len() + a.failures, 64);
    let c = growth_pairs(SampleEnsemble::Ginibre, 4, 64, &RngStream::new(10, 0)).unwrap();
    assert_ne!(a.pairs, c.pairs);
    // a prefix of a larger run matches the smaller run
    let d = growth_pairs(SampleEnsemble::Ginibre, 4, 128, &rng).unwrap();
    assert_eq!(&d.pairs[..64], &a.pairs[..]);
}

#[test]
fn orthogonal_two_by_two_growth_pairs_agree() {
    // for n = 2 on O(2) both strategies pick the same pivot
    let s = growth_pairs(SampleEnsemble::Haar, 2, 500, &RngStream::new(11, 0)).unwrap();
    for p in &s.pairs {
        assert!((p.gepp - p.gecp).abs() < 1e-12, "{p:?}");
    }
}

#[test]
fn tiny_neighborhoods_stay_near_the_anchor() {
    // a generic matrix has no pivot ties, so both growth factors are continuous there
    let q = haar_orthogonal(5, &mut RngStream::new(12, 2)).unwrap();
    let base = GrowthPair::of(&q).unwrap();
    let r = neighborhood_study(&q, 1e-9, 200, StepKind::Orthogonal, &[base.gepp], &[base.gecp], &RngStream::new(12, 0))
        .unwrap();
    assert_eq!(r.gepp_anchors[0].within_fine, 1.0);
    assert_eq!(r.gecp_anchors[0].within_fine, 1.0);
    assert!(neighborhood_study(&q, 1e-3, 0, StepKind::Gaussian, &[], &[], &RngStream::new(12, 1)).is_err());
}

#[test]
fn neighbor_difference_statistics_are_well_formed() {
    let s = exponential_model_neighbor_stats(ExpModel::An, 6, 1e-3, 400, &RngStream::new(13, 0)).unwrap();
    assert_eq!(s.base_gecp, 2.0);
    assert_eq!(s.count + s.failures, 400);
    assert!((0.0..=1.0).contains(&s.p_zero));
    assert!(exponential_model_neighbor_stats(ExpModel::Qn, 1, 1e-3, 10, &RngStream::new(13, 1)).is_err());
}

#[test]
fn exact_replay_of_a_small_matrix() {
    let a = Matrix::new(3, 3, vec![2.0, 1.0, 1.0, 4.0, 3.0, 3.0, 8.0, 7.0, 9.0]).unwrap();
    let steps = exact_intermediates(&a).unwrap();
    assert_eq!(steps[0], a);
    let want1 = Matrix::new(3, 3, vec![2.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 3.0, 5.0]).unwrap();
    let want2 = Matrix::new(3, 3, vec![2.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0, 0.0, 2.0]).unwrap();
    assert_eq!(steps[1], want1);
    assert_eq!(steps[2], want2);
    let singular = Matrix::new(2, 2, vec![0.0, 1.0, 1.0, 0.0]).unwrap();
    assert!(matches!(exact_intermediates(&singular), Err(Error::ZeroPivot { .. })));
}

#[test]
fn column_relative_deviation_scales_per_column() {
    let b = Matrix::new(2, 2, vec![100.0, 1.0, 50.0, 0.5]).unwrap();
    let a = Matrix::new(2, 2, vec![101.0, 1.0, 50.0, 0.6]).unwrap();
    // column 0: 1 / 100, column 1: 0.1 / 1
    assert!((column_relative_deviation(&a, &b) - 0.1).abs() < 1e-15);
}

#[test]
fn verify_suite_passes_and_catches_a_corrupted_closed_form() {
    let good = verify_suite(2..=12);
    assert!(good.iter().all(|c| c.passed), "{good:?}");
    let corrupted = |n: usize| {
        let mut q = models::qn_closed_form(n)?;
        q[(n - 1, 0)] += 1e-6;
        Ok(q)
    };
    let bad = verify_suite_with(2..=12, &corrupted);
    let failed: Vec<&str> = bad.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    assert!(failed.iter().any(|n| n.contains("matches QR")), "{failed:?}");
    assert!(failed.iter().any(|n| n.contains("intermediates")), "{failed:?}");
}
