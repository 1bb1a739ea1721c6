//! Distributional checks on the unstructured generator.

use qap_generators::gen_uniform_random;

/// Chi-square goodness of fit against the uniform law on {0, ..., 999}.
///
/// 40x40 matrices give 1600 draws each; ten equal bins leave nine
/// degrees of freedom, whose 0.1% critical value is 27.877. The seed is
/// fixed, so the check is deterministic.
#[test]
fn entries_pass_a_chi_square_uniformity_check() {
    let inst = gen_uniform_random(40, 999, false, 20240817).unwrap();
    for (name, m) in [("distance", inst.a()), ("flow", inst.b())] {
        let mut counts = [0usize; 10];
        for &v in m.iter() {
            counts[(v as usize) / 100] += 1;
        }
        let expected = (m.len() / 10) as f64;
        let chi2: f64 = counts
            .iter()
            .map(|&c| {
                let d = c as f64 - expected;
                d * d / expected
            })
            .sum();
        assert!(chi2 < 27.877, "{name} chi-square {chi2} exceeds the 0.1% critical value");
    }
}

/// The sample mean of 1600 uniform draws has standard error
/// 999/sqrt(12)/40 ≈ 7.2; a 4-sigma band around 499.5 is ±28.8.
#[test]
fn sample_means_sit_near_the_population_mean() {
    let inst = gen_uniform_random(40, 999, false, 987654321).unwrap();
    for m in [inst.a(), inst.b()] {
        let mean = m.mean().unwrap();
        assert!((mean - 499.5).abs() < 28.8, "sample mean {mean} too far from 499.5");
    }
}
