//! Bracketed scalar root finding: bisection followed by a guarded secant
//! polish.

/// A root located inside `[lo, hi]`, with the function value at `x`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub x: f64,
    pub value: f64,
    pub lo: f64,
    pub hi: f64,
    pub iterations: usize,
}

/// Grow `hi = base * 2^m`, `m = 1..=max_doublings`, until `f(hi)` has the
/// sign `target_sign`. Returns `None` when the sign never flips.
pub fn grow_bracket<F>(f: F, base: f64, max_doublings: u32, target_sign: f64) -> Option<f64>
where
    F: Fn(f64) -> f64,
{
    let mut hi = base;
    for _ in 0..max_doublings {
        hi *= 2.0;
        let v = f(hi);
        if v * target_sign > 0.0 {
            return Some(hi);
        }
    }
    None
}

/// Bisection on a sign-changing bracket, then up to a few secant steps that
/// are rejected whenever they leave the final bracket.
///
/// Returns `None` if `f(lo)` and `f(hi)` share a sign.
pub fn bisect_secant<F>(f: F, lo: f64, hi: f64) -> Option<Root>
where
    F: Fn(f64) -> f64,
{
    let (mut a, mut b) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(Root {
            x: a,
            value: 0.0,
            lo: a,
            hi: a,
            iterations: 0,
        });
    }
    if fb == 0.0 {
        return Some(Root {
            x: b,
            value: 0.0,
            lo: b,
            hi: b,
            iterations: 0,
        });
    }
    if fa.signum() == fb.signum() {
        return None;
    }

    let mut iterations = 0;
    while iterations < 400 {
        let mid = 0.5 * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        iterations += 1;
        let fm = f(mid);
        if fm == 0.0 {
            return Some(Root {
                x: mid,
                value: 0.0,
                lo: mid,
                hi: mid,
                iterations,
            });
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }

    // Bracket is now a couple of ulps wide; pick the endpoint with the
    // smaller residual and let the secant step try to do better.
    let fb = f(b);
    let (mut x, mut fx) = if fa.abs() <= fb.abs() {
        (a, fa)
    } else {
        (b, fb)
    };
    if fb != fa {
        let s = b - fb * (b - a) / (fb - fa);
        if s >= a && s <= b {
            let fs = f(s);
            if fs.abs() < fx.abs() {
                x = s;
                fx = fs;
            }
        }
    }
    Some(Root {
        x,
        value: fx,
        lo: a,
        hi: b,
        iterations,
    })
}
