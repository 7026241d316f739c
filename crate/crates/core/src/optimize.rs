//! One-dimensional minimization used for local refinement.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimum of `f` on `[a, b]`.
///
/// Returns the best point seen (including both endpoints), so the result is
/// never worse than the bracket ends even when `f` is not unimodal.
pub(crate) fn golden_min<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (a.min(b), a.max(b));
    let mut best = (lo, f(lo));
    let fb = f(hi);
    if fb < best.1 {
        best = (hi, fb);
    }
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    for _ in 0..200 {
        if hi - lo <= tol {
            break;
        }
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
        for (x, fx) in [(c, fc), (d, fd)] {
            if fx < best.1 {
                best = (x, fx);
            }
        }
    }
    best
}

/// Compass search maximizing `f` from `start`.
///
/// Polls every coordinate direction and every signed pair of coordinates,
/// accepting the first improvement. The step multiplier starts at 1 (scaled
/// per coordinate by `scales`) and halves after each unsuccessful poll, down
/// to `t_min`.
///
/// `f` returns `None` at infeasible points. It may also move the trial point
/// in place (for instance back onto a constraint boundary); the moved point
/// is what gets accepted. Without such a repair the search stalls wherever
/// the cone of improving feasible directions is narrower than the poll set.
pub(crate) fn pattern_max<F: FnMut(&mut [f64]) -> Option<f64>>(
    mut f: F,
    start: Vec<f64>,
    start_val: f64,
    scales: &[f64],
    t_min: f64,
    max_evals: usize,
) -> (Vec<f64>, f64) {
    let n = start.len();
    let mut moves: Vec<Vec<(usize, f64)>> = Vec::new();
    for i in 0..n {
        for s in [1.0, -1.0] {
            moves.push(vec![(i, s)]);
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for (si, sj) in [(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)] {
                moves.push(vec![(i, si), (j, sj)]);
            }
        }
    }
    let (mut best, mut best_val) = (start, start_val);
    let mut t = 1.0;
    let mut evals = 0;
    let mut trial = best.clone();
    while t >= t_min && evals < max_evals && n > 0 {
        let mut improved = false;
        for m in &moves {
            trial.copy_from_slice(&best);
            for &(i, s) in m {
                trial[i] += s * t * scales[i];
            }
            evals += 1;
            if let Some(v) = f(&mut trial) {
                if v > best_val {
                    best_val = v;
                    best.copy_from_slice(&trial);
                    improved = true;
                    break;
                }
            }
        }
        if !improved {
            t *= 0.5;
        }
    }
    (best, best_val)
}
