use crate::error::{Error, Result};

/// A sign-change bracket `[lo, hi]` with the function values at both ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RootBracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl RootBracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self> {
        let invalid = Error::InvalidBracket { lo, hi, f_lo, f_hi };
        if !(lo < hi) || !f_lo.is_finite() || !f_hi.is_finite() {
            return Err(invalid);
        }
        if f_lo * f_hi > 0.0 {
            return Err(invalid);
        }
        Ok(Self { lo, hi, f_lo, f_hi })
    }

    /// Evaluates `f` at both ends and validates the bracket.
    pub fn evaluate(f: &mut impl FnMut(f64) -> f64, lo: f64, hi: f64) -> Result<Self> {
        let f_lo = f(lo);
        let f_hi = f(hi);
        Self::new(lo, hi, f_lo, f_hi)
    }
}

/// Brent's method. Terminates once the bracket is narrower than `tol`; the
/// returned root always lies inside the original bracket.
pub fn find_root(mut f: impl FnMut(f64) -> f64, bracket: RootBracket, tol: f64) -> Result<f64> {
    let RootBracket { lo, hi, f_lo, f_hi } = RootBracket::new(bracket.lo, bracket.hi, bracket.f_lo, bracket.f_hi)?;
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    let tol = tol.max(0.0);
    let (mut a, mut b, mut fa, mut fb) = (lo, hi, f_lo, f_hi);
    let (mut c, mut fc) = (b, fb);
    let (mut d, mut e) = (b - a, b - a);

    for _ in 0..200 {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol1 = 2.0 * f64::EPSILON * b.abs() + 0.5 * tol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol1 || fb == 0.0 {
            return Ok(b.clamp(lo, hi));
        }
        if e.abs() >= tol1 && fa.abs() > fb.abs() {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            let min1 = 3.0 * xm * q - (tol1 * q).abs();
            let min2 = (e * q).abs();
            if 2.0 * p < min1.min(min2) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol1 { d } else { tol1.copysign(xm) };
        fb = f(b);
    }

    // Brent stalled; finish by bisection on the last sign-change pair.
    let (mut x0, mut x1, mut f0) = if (fb > 0.0) != (fc > 0.0) {
        (b.min(c), b.max(c), if b < c { fb } else { fc })
    } else {
        (lo, hi, f_lo)
    };
    while x1 - x0 > tol && x1 - x0 > 2.0 * f64::EPSILON * x0.abs().max(x1.abs()) {
        let m = 0.5 * (x0 + x1);
        let fm = f(m);
        if fm == 0.0 {
            return Ok(m);
        }
        if (fm > 0.0) == (f0 > 0.0) {
            x0 = m;
            f0 = fm;
        } else {
            x1 = m;
        }
    }
    Ok((0.5 * (x0 + x1)).clamp(lo, hi))
}

/// Scans `n` equal steps on [lo, hi] and refines every sign change of `f`.
/// Roots come back sorted ascending.
pub fn find_all_roots(mut f: impl FnMut(f64) -> f64, lo: f64, hi: f64, n: usize, tol: f64) -> Vec<f64> {
    let n = n.max(1);
    let step = (hi - lo) / n as f64;
    let mut roots = Vec::new();
    let mut x0 = lo;
    let mut f0 = f(x0);
    for k in 1..=n {
        let x1 = if k == n { hi } else { lo + step * k as f64 };
        let f1 = f(x1);
        if f0.is_finite() && f1.is_finite() && f0 * f1 <= 0.0 && !(f0 == 0.0 && k > 1) {
            if let Ok(br) = RootBracket::new(x0, x1, f0, f1) {
                if let Ok(r) = find_root(&mut f, br, tol) {
                    roots.push(r);
                }
            }
        }
        x0 = x1;
        f0 = f1;
    }
    roots
}
