//! Bracketing root search for the scalar stationarity equations.
//!
//! The equations mix powers and Gaussian tails and are not monotone in
//! general, so roots are located by a uniform sign-change scan and each
//! bracket is then bisected.

use alloc::vec::Vec;

/// Bisection stops once the bracket is narrower than this.
pub(crate) const BISECTION_WIDTH: f64 = 1e-12;

/// Scan nodes used for the one-dimensional (edge) equations.
pub(crate) const EDGE_SCAN_POINTS: usize = 512;

fn nodes(lo: f64, hi: f64, points: usize) -> impl Iterator<Item = f64> {
    // keep clear of the endpoints, where the derivatives can blow up
    let pad = 1e-13 * (hi - lo).max(1.0);
    let n = points.max(2) - 1;
    (0..=n).map(move |k| {
        if k == 0 {
            lo + pad
        } else if k == n {
            hi - pad
        } else {
            lo + (hi - lo) * k as f64 / n as f64
        }
    })
}

/// Bisect a bracket `[a, b]` with `fa` the value at `a` and opposite sign at `b`.
pub(crate) fn bisect(mut f: impl FnMut(f64) -> f64, mut a: f64, mut b: f64, mut fa: f64) -> f64 {
    for _ in 0..200 {
        if (b - a).abs() <= BISECTION_WIDTH {
            break;
        }
        let mid = 0.5 * (a + b);
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (fa < 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

/// Every root of `f` on `(lo, hi)` that shows up as a sign change between
/// neighbouring scan nodes (or an exact zero at a node), in ascending order.
pub(crate) fn scan_roots(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    if !(hi > lo) {
        return roots;
    }
    let mut prev: Option<(f64, f64)> = None;
    for x in nodes(lo, hi, points) {
        let fx = f(x);
        if fx.is_nan() {
            prev = None;
            continue;
        }
        if fx == 0.0 {
            if !matches!(prev, Some((_, p)) if p == 0.0) {
                roots.push(x);
            }
        } else if let Some((px, pf)) = prev {
            if pf != 0.0 && (pf < 0.0) != (fx < 0.0) {
                roots.push(bisect(&mut f, px, x, pf));
            }
        }
        prev = Some((x, fx));
    }
    roots
}

/// The smallest root found by [`scan_roots`], if any.
pub(crate) fn first_root(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, points: usize) -> Option<f64> {
    if !(hi > lo) {
        return None;
    }
    let mut prev: Option<(f64, f64)> = None;
    for x in nodes(lo, hi, points) {
        let fx = f(x);
        if fx.is_nan() {
            prev = None;
            continue;
        }
        if fx == 0.0 {
            return Some(x);
        }
        if let Some((px, pf)) = prev {
            if (pf < 0.0) != (fx < 0.0) {
                return Some(bisect(&mut f, px, x, pf));
            }
        }
        prev = Some((x, fx));
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_all_cubic_roots() {
        let f = |x: f64| (x - 0.1) * (x - 0.5) * (x - 0.9);
        let roots = scan_roots(f, 0.0, 1.0, 512);
        assert_eq!(roots.len(), 3);
        for (r, want) in roots.iter().zip([0.1, 0.5, 0.9]) {
            assert!((r - want).abs() < 1e-11, "{r}");
        }
        assert!((first_root(f, 0.0, 1.0, 64).unwrap() - 0.1).abs() < 1e-11);
    }

    #[test]
    fn no_sign_change_means_no_root() {
        assert!(scan_roots(|x| x * x + 1.0, -1.0, 1.0, 512).is_empty());
        assert!(first_root(|x| x + 2.0, 0.0, 1.0, 16).is_none());
        assert!(scan_roots(|x| x, 1.0, 1.0, 16).is_empty());
    }
}
