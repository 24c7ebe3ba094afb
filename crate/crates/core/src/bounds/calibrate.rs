//! Smallest main constant that makes a theorem hold on a dataset.

use super::{theorem_bound_with_c, BoundConfig, BoundInput, Theorem};
use crate::error::{Error, Result};

const TOL: f64 = 1e-6;
const C_CEILING: f64 = 1e9;

/// `true` iff every input satisfies the theorem at constant `c`. Inputs are
/// split into contiguous chunks across `workers` threads.
fn all_hold(
    data: &[BoundInput],
    th: Theorem,
    c: f64,
    cfg: &BoundConfig,
    workers: usize,
) -> Result<bool> {
    let check = |chunk: &[BoundInput]| -> Result<bool> {
        for x in chunk {
            if !theorem_bound_with_c(th, x, c, cfg)?.holds {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let workers = workers.max(1);
    if workers == 1 || data.len() < 2 * workers {
        return check(data);
    }
    let size = data.len().div_ceil(workers);
    std::thread::scope(|s| {
        let handles: Vec<_> = data
            .chunks(size)
            .map(|ch| s.spawn(move || check(ch)))
            .collect();
        let mut ok = true;
        for h in handles {
            ok &= h.join().expect("worker panicked")?;
        }
        Ok(ok)
    })
}

/// Binary search on the monotone predicate "every triple holds" to width
/// 1e-6; returns the upper end of the final bracket (0 if `C = 0` suffices).
pub fn empirical_min_c(
    data: &[BoundInput],
    th: Theorem,
    cfg: &BoundConfig,
    workers: usize,
) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::EmptyDataset);
    }
    if all_hold(data, th, 0.0, cfg, workers)? {
        return Ok(0.0);
    }
    // small-radical inputs ignore C, so a failure there cannot be repaired
    let g_min = cfg.g_min.ln();
    for x in data {
        if x.log_g <= g_min && !theorem_bound_with_c(th, x, 0.0, cfg)?.holds {
            return Err(Error::Unattainable(format!(
                "G = {:.6} is in the small-radical regime and fails at every C",
                x.log_g.exp()
            )));
        }
    }
    let (mut lo, mut hi) = (0.0, 1.0);
    while !all_hold(data, th, hi, cfg, workers)? {
        lo = hi;
        hi *= 2.0;
        if hi > C_CEILING {
            return Err(Error::Unattainable(format!("no C below {C_CEILING:e}")));
        }
    }
    while hi - lo > TOL {
        let mid = 0.5 * (lo + hi);
        if all_hold(data, th, mid, cfg, workers)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
