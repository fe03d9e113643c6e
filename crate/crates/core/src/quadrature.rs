//! Adaptive Gauss–Kronrod integration over the spheres in angular
//! coordinates. This is a numeric route to sphere integrals that shares
//! nothing with the closed-form moments, used to cross-check them.
//!
//! Normalized volume forms:
//! - S¹: `dθ / 2π`
//! - S²: `sin ψ dψ dφ / 4π` at `(cos ψ, sin ψ e^{iφ})`
//! - S³: `sin 2φ dφ dθ₁ dθ₂ / 4π²` at `(cos φ e^{iθ₁}, sin φ e^{iθ₂})`

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;

use crate::sphere::{PointS1, PointS2, PointS3};

// 15-point Kronrod nodes and weights, 7-point Gauss weights (QUADPACK).
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss weights for XGK[1], XGK[3], XGK[5], XGK[7]
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

const MAX_DEPTH: u32 = 40;

/// Integral value with an absolute error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: Complex64,
    pub error: f64,
}

/// One 15-point Kronrod panel. The integrand returns its own value and an
/// error estimate (nonzero when it is itself a numeric integral); those
/// errors are integrated with the Kronrod weights.
fn kronrod_panel<F>(f: &mut F, a: f64, b: f64) -> (Complex64, f64, f64)
where
    F: FnMut(f64) -> Estimate,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv = [Complex64::new(0.0, 0.0); 15];
    let mut inner_err = 0.0;
    for (n, (&x, &w)) in XGK.iter().zip(&WGK).enumerate() {
        if n == 7 {
            let e = f(center);
            fv[7] = e.value;
            inner_err += w * e.error;
        } else {
            let lo = f(center - half * x);
            let hi = f(center + half * x);
            fv[n] = lo.value;
            fv[14 - n] = hi.value;
            inner_err += w * (lo.error + hi.error);
        }
    }
    let kronrod: Complex64 = (0..7)
        .map(|n| (fv[n] + fv[14 - n]) * WGK[n])
        .sum::<Complex64>()
        + fv[7] * WGK[7];
    let gauss: Complex64 = [1usize, 3, 5]
        .iter()
        .zip(&WG)
        .map(|(&n, &w)| (fv[n] + fv[14 - n]) * w)
        .sum::<Complex64>()
        + fv[7] * WG[3];
    let mean = kronrod * 0.5;
    let resasc: f64 = (0..15)
        .map(|n| WGK[if n < 8 { n } else { 14 - n }] * (fv[n] - mean).norm())
        .sum::<f64>()
        * half.abs();
    let resabs: f64 = (0..15)
        .map(|n| WGK[if n < 8 { n } else { 14 - n }] * fv[n].norm())
        .sum::<f64>()
        * half.abs();
    let mut err = ((kronrod - gauss) * half).norm();
    if resasc > 0.0 && err > 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    err = err.max(50.0 * f64::EPSILON * resabs);
    (kronrod * half, err, inner_err * half.abs())
}

fn adaptive<F>(f: &mut F, a: f64, b: f64, tol: f64, depth: u32) -> Estimate
where
    F: FnMut(f64) -> Estimate,
{
    let (value, err, inner) = kronrod_panel(f, a, b);
    if err <= tol || depth >= MAX_DEPTH {
        return Estimate {
            value,
            error: err + inner,
        };
    }
    let mid = 0.5 * (a + b);
    let left = adaptive(f, a, mid, 0.5 * tol, depth + 1);
    let right = adaptive(f, mid, b, 0.5 * tol, depth + 1);
    Estimate {
        value: left.value + right.value,
        error: left.error + right.error,
    }
}

/// `∫_a^b f` to absolute tolerance `tol`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, tol: f64) -> Estimate
where
    F: FnMut(f64) -> Complex64,
{
    let mut g = |x: f64| Estimate {
        value: f(x),
        error: 0.0,
    };
    adaptive(&mut g, a, b, tol, 0)
}

fn integrate_nested<F>(mut f: F, a: f64, b: f64, tol: f64) -> Estimate
where
    F: FnMut(f64) -> Estimate,
{
    adaptive(&mut f, a, b, tol, 0)
}

/// Points that can be integrated over in angular coordinates.
pub trait AngularIntegral: Sized {
    /// Normalized-measure integral of `f` over the whole sphere; `tol` is
    /// the per-dimension absolute tolerance.
    fn sphere_integral<F: Fn(&Self) -> Complex64>(f: F, tol: f64) -> Estimate;
}

impl AngularIntegral for PointS1 {
    fn sphere_integral<F: Fn(&Self) -> Complex64>(f: F, tol: f64) -> Estimate {
        let e = integrate(|t| f(&PointS1::from_angle(t)), 0.0, 2.0 * PI, tol);
        scale(e, 1.0 / (2.0 * PI))
    }
}

impl AngularIntegral for PointS2 {
    fn sphere_integral<F: Fn(&Self) -> Complex64>(f: F, tol: f64) -> Estimate {
        let e = integrate_nested(
            |psi| {
                let (s, c) = psi.sin_cos();
                let inner = integrate(
                    |phi| f(&PointS2::new_unchecked(c, Complex64::from_polar(s, phi))),
                    0.0,
                    2.0 * PI,
                    tol,
                );
                scale(inner, s)
            },
            0.0,
            PI,
            tol,
        );
        scale(e, 1.0 / (4.0 * PI))
    }
}

impl AngularIntegral for PointS3 {
    fn sphere_integral<F: Fn(&Self) -> Complex64>(f: F, tol: f64) -> Estimate {
        let e = integrate_nested(
            |phi| {
                let (s, c) = phi.sin_cos();
                let middle = integrate_nested(
                    |t1| {
                        let a = Complex64::from_polar(c, t1);
                        integrate(
                            |t2| f(&PointS3::new_unchecked(a, Complex64::from_polar(s, t2))),
                            0.0,
                            2.0 * PI,
                            tol,
                        )
                    },
                    0.0,
                    2.0 * PI,
                    tol,
                );
                scale(middle, (2.0 * phi).sin())
            },
            0.0,
            FRAC_PI_2,
            tol,
        );
        scale(e, 1.0 / (4.0 * PI * PI))
    }
}

fn scale(e: Estimate, s: f64) -> Estimate {
    Estimate {
        value: e.value * s,
        error: e.error * s.abs(),
    }
}
