use crate::problem::domain::BoxDomain;
use crate::samplers::source::RandomSource;

/// One point uniform on the box (independent per coordinate). Zero-width
/// coordinates collapse to their single feasible value.
pub fn sample_box_uniform(domain: &BoxDomain, rng: &mut RandomSource) -> Vec<f64> {
    domain
        .lower()
        .iter()
        .zip(domain.upper())
        .map(|(lo, hi)| lo + rng.next_f64() * (hi - lo))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn samples_fill_the_box_uniformly() {
        let b = BoxDomain::new(vec![-1.0, 2.0], vec![1.0, 2.5]).unwrap();
        let mut rng = RandomSource::new(71);
        let n = 40_000;
        let mut sums = [0.0f64; 2];
        let mut in_left_half = 0usize;
        for _ in 0..n {
            let x = sample_box_uniform(&b, &mut rng);
            assert!(b.contains(&x));
            sums[0] += x[0];
            sums[1] += x[1];
            if x[0] < 0.0 {
                in_left_half += 1;
            }
        }
        assert!((sums[0] / n as f64).abs() < 0.02);
        assert!((sums[1] / n as f64 - 2.25).abs() < 0.01);
        let frac = in_left_half as f64 / n as f64;
        assert!((frac - 0.5).abs() < 0.02, "left-half fraction {frac}");
    }

    #[test]
    fn degenerate_coordinate_is_pinned() {
        let b = BoxDomain::new(vec![0.0, 3.0], vec![1.0, 3.0]).unwrap();
        let mut rng = RandomSource::new(72);
        for _ in 0..20 {
            let x = sample_box_uniform(&b, &mut rng);
            assert_eq!(x[1], 3.0);
        }
    }
}
