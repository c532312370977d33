//! Derivative-free 1-D searches used to locate zeros and extrema of spectra.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Goal {
    Minimize,
    Maximize,
}

/// Result of a bracketing search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refined {
    pub x: f64,
    pub value: f64,
    /// Width of the final bracket.
    pub width: f64,
}

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search on [a, b] until the bracket is narrower than `tol`.
/// Converges to a local optimum; for a unimodal `f` that is the global one,
/// and an optimum on the boundary is approached from inside.
pub fn golden_section<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: f64,
    goal: Goal,
) -> Refined {
    let sign = match goal {
        Goal::Minimize => 1.0,
        Goal::Maximize => -1.0,
    };
    let mut g = |x: f64| sign * f(x);
    let (mut lo, mut hi) = if a <= b { (a, b) } else { (b, a) };
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = g(x1);
    let mut f2 = g(x2);
    // 200 iterations shrink any finite bracket below f64 resolution.
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = g(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = g(x2);
        }
    }
    let (x, value) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    Refined {
        x,
        value: sign * value,
        width: hi - lo,
    }
}

/// Interior indices where `values` has a local optimum of the given kind. A
/// flat run counts once, at its first sample, when both neighbours of the run
/// are strictly worse. NaN samples never take part.
pub fn local_optima(values: &[f64], goal: Goal) -> Vec<usize> {
    let better = |a: f64, b: f64| match goal {
        Goal::Minimize => a < b,
        Goal::Maximize => a > b,
    };
    (1..values.len().saturating_sub(1))
        .filter(|&i| {
            let here = values[i];
            if !better(here, values[i - 1]) {
                return false;
            }
            values[i + 1..]
                .iter()
                .find(|&&next| next != here)
                .is_some_and(|&next| better(here, next))
        })
        .collect()
}

/// Evenly spaced points covering [a, b] with spacing at most `max_step`,
/// capped at `max_points`.
pub fn covering_grid(a: f64, b: f64, max_step: f64, max_points: usize) -> Vec<f64> {
    let span = b - a;
    let intervals = if span > 0.0 && max_step > 0.0 {
        ((span / max_step).ceil() as usize).clamp(1, max_points.saturating_sub(1).max(1))
    } else {
        1
    };
    crate::scattering::linspace(a, b, intervals + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let r = golden_section(|x| (x - 0.3).powi(2), -2.0, 2.0, 1e-10, Goal::Minimize);
        assert!((r.x - 0.3).abs() < 1e-9);
        assert!(r.value < 1e-18);
        assert!(r.width <= 1e-10);

        let r = golden_section(|x| -(x + 1.25).powi(2), -3.0, 0.0, 1e-10, Goal::Maximize);
        assert!((r.x + 1.25).abs() < 1e-9);
    }

    #[test]
    fn golden_section_resolves_a_kink_tightly() {
        let r = golden_section(|x: f64| (x - 0.123_456_789).abs(), 0.0, 1.0, 1e-13, Goal::Minimize);
        assert!((r.x - 0.123_456_789).abs() < 1e-12);
    }

    #[test]
    fn boundary_optimum_is_approached() {
        let r = golden_section(|x| x, 1.0, 2.0, 1e-12, Goal::Minimize);
        assert!((r.x - 1.0).abs() < 1e-11);
    }

    #[test]
    fn optima_detection() {
        let v = [3.0, 1.0, 2.0, 2.0, 5.0, 4.0, 4.0, 6.0];
        assert_eq!(local_optima(&v, Goal::Minimize), vec![1, 5]);
        assert_eq!(local_optima(&v, Goal::Maximize), vec![4]);
        assert!(local_optima(&[0.0; 5], Goal::Maximize).is_empty());
        assert!(local_optima(&[1.0, f64::NAN, 0.0], Goal::Minimize).is_empty());
    }

    #[test]
    fn covering_grid_respects_step_and_cap() {
        let g = covering_grid(-1.0, 1.0, 0.3, 1000);
        assert_eq!(g.first(), Some(&-1.0));
        assert_eq!(g.last(), Some(&1.0));
        assert!(g.windows(2).all(|w| w[1] - w[0] <= 0.3 + 1e-15));
        assert_eq!(covering_grid(0.0, 1.0, 1e-9, 11).len(), 11);
    }
}
