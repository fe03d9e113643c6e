//! The Hopf fibration `π: S³ → S²`, `(a, b) ↦ (|a|² − |b|², 2ab)`, with the
//! right S¹-action `(a, b)·z = (az, b z̄)` acting simply transitively on
//! each fiber.
//!
//! Besides the bundle maps this module carries the symbolic fiber average
//! `I_π` (pushforward) and pullback `π*` on monomials. `I_π` sends a degree-n
//! monomial on S³ to a polynomial of degree at most ⌊n/2⌋ on S², and
//! `I_π ∘ π*` is the identity on functions on S².

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::polynomial::{PolynomialS2, PolynomialS3};
use crate::sphere::{moment_s3, MonomialS2, MonomialS3, PointS1, PointS2, PointS3};

pub fn hopf_map(x: &PointS3) -> PointS2 {
    let (a, b) = (x.a(), x.b());
    PointS2::new_unchecked(a.norm_sqr() - b.norm_sqr(), 2.0 * a * b)
}

/// Right action of S¹ on S³.
pub fn act(x: &PointS3, z: &PointS1) -> PointS3 {
    PointS3::new_unchecked(x.a() * z.z(), x.b() * z.z().conj())
}

/// A choice of base point `s_y` in every fiber, assembled from the two
/// standard local trivializations over `ξ ≠ −1` and `ξ ≠ 1`.
///
/// Points with `ξ > threshold` use the chart regular at the north pole,
/// the rest use the one regular at the south pole. No global continuous
/// section exists, so the result jumps across the threshold.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Section {
    threshold: f64,
}

impl Default for Section {
    fn default() -> Self {
        Self { threshold: 0.0 }
    }
}

impl Section {
    pub fn new(threshold: f64) -> Result<Self> {
        if threshold.is_finite() && threshold.abs() < 1.0 {
            Ok(Self { threshold })
        } else {
            Err(Error::InvalidArgument(format!(
                "chart threshold must lie in (-1, 1), got {threshold}"
            )))
        }
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn base_point(&self, y: &PointS2) -> PointS3 {
        let (xi, eta) = (y.xi(), y.eta());
        if xi > self.threshold {
            let up = 1.0 + xi;
            PointS3::new_unchecked(
                Complex64::new((up / 2.0).sqrt(), 0.0),
                eta / (2.0 * up).sqrt(),
            )
        } else {
            let down = 1.0 - xi;
            PointS3::new_unchecked(
                eta / (2.0 * down).sqrt(),
                Complex64::new((down / 2.0).sqrt(), 0.0),
            )
        }
    }
}

pub fn section(y: &PointS2, cfg: &Section) -> PointS3 {
    cfg.base_point(y)
}

/// `s_y · z`: the fiber over `y` parameterized by S¹.
pub fn fiber_point(y: &PointS2, z: &PointS1, cfg: &Section) -> PointS3 {
    act(&cfg.base_point(y), z)
}

fn pow2(e: u32) -> BigInt {
    BigInt::from(2u32).pow(e)
}

/// Fiber average `I_π f_{ijkl}` of `a^i ā^j b^k b̄^l` as a polynomial on S².
///
/// Zero unless `i + l = j + k`. Otherwise, with `m = (i+j+k+l)/2`, it is
/// `2^{−m} (1+ξ)^{i−k} η^k η̄^l` when `i ≥ k` and
/// `2^{−m} (1−ξ)^{k−i} η^i η̄^j` when `i ≤ k`.
pub fn pushforward_monomial(m: MonomialS3) -> PolynomialS2 {
    if m.i + m.l != m.j + m.k {
        return PolynomialS2::zero();
    }
    let half = (m.i + m.j + m.k + m.l) / 2;
    let scale = BigRational::new(BigInt::one(), pow2(half));
    let (base, eta) = if m.i >= m.k {
        (
            PolynomialS2::one_plus_xi_pow(1, m.i - m.k),
            MonomialS2::new(0, m.k, m.l),
        )
    } else {
        (
            PolynomialS2::one_plus_xi_pow(-1, m.k - m.i),
            MonomialS2::new(0, m.i, m.j),
        )
    };
    base.mul(&PolynomialS2::monomial(eta)).scale(&scale)
}

pub fn pushforward(f: &PolynomialS3) -> PolynomialS2 {
    f.terms().fold(PolynomialS2::zero(), |acc, (m, c)| {
        acc.add(&pushforward_monomial(*m).scale(c))
    })
}

/// `π* (ξ^p η^q η̄^r) = 2^{q+r} (aā − bb̄)^p a^q ā^r b^q b̄^r`.
pub fn pullback_monomial(m: MonomialS2) -> PolynomialS3 {
    let mut height = PolynomialS3::monomial(MonomialS3::new(1, 1, 0, 0));
    height.add_term(-BigRational::one(), MonomialS3::new(0, 0, 1, 1));
    let phase = PolynomialS3::term(
        BigRational::from(pow2(m.q + m.r)),
        MonomialS3::new(m.q, m.r, m.q, m.r),
    );
    height.pow(m.p).mul(&phase)
}

pub fn pullback(h: &PolynomialS2) -> PolynomialS3 {
    h.terms().fold(PolynomialS3::zero(), |acc, (m, c)| {
        acc.add(&pullback_monomial(*m).scale(c))
    })
}

/// Numeric fiber average of `f` over `π⁻¹(y)`, sampled on the regular
/// `n`-gon. Exact for monomials of degree below `n`.
pub fn fiber_quadrature<F>(f: F, y: &PointS2, n: usize, cfg: &Section) -> Result<Complex64>
where
    F: Fn(&PointS3) -> Complex64,
{
    if n == 0 {
        return Err(Error::InvalidArgument(
            "fiber quadrature needs n >= 1".into(),
        ));
    }
    let base = cfg.base_point(y);
    let sum: Complex64 = (0..n)
        .map(|k| {
            let z = PointS1::from_angle(2.0 * PI * k as f64 / n as f64);
            f(&act(&base, &z))
        })
        .sum();
    Ok(sum / n as f64)
}

/// `∫_{S³} f − ∫_{S²} I_π f` computed exactly; zero for every monomial.
pub fn fubini_defect(m: MonomialS3) -> BigRational {
    moment_s3(m) - pushforward_monomial(m).integral()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::{Monomial, MonomialS1, SpherePoint};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn s3(a: Complex64, b: Complex64) -> PointS3 {
        PointS3::new(a, b).unwrap()
    }

    fn s2(xi: f64, eta: Complex64) -> PointS2 {
        PointS2::new(xi, eta).unwrap()
    }

    fn close(x: &[f64], y: &[f64], tol: f64) -> bool {
        x.iter().zip(y).all(|(a, b)| (a - b).abs() < tol)
    }

    #[test]
    fn hopf_map_examples() {
        let one = c(1.0, 0.0);
        let zero = c(0.0, 0.0);
        assert_eq!(hopf_map(&s3(one, zero)).coords(), vec![1.0, 0.0, 0.0]);
        assert_eq!(hopf_map(&s3(zero, one)).coords(), vec![-1.0, 0.0, 0.0]);
        let h = c(FRAC_1_SQRT_2, 0.0);
        assert!(close(
            &hopf_map(&s3(h, h)).coords(),
            &[0.0, 1.0, 0.0],
            1e-15
        ));
    }

    #[test]
    fn act_examples() {
        let i = PointS1::new(c(0.0, 1.0)).unwrap();
        let x = act(&s3(c(1.0, 0.0), c(0.0, 0.0)), &i);
        assert_eq!(x.coords(), vec![0.0, 1.0, 0.0, 0.0]);
        let x = act(&s3(c(0.0, 0.0), c(1.0, 0.0)), &i);
        assert_eq!(x.coords(), vec![0.0, 0.0, 0.0, -1.0]);
        let y = s3(c(0.6, 0.0), c(0.0, 0.8));
        assert_eq!(act(&y, &PointS1::one()), y);
    }

    #[test]
    fn section_examples() {
        let cfg = Section::default();
        let north = section(&s2(1.0, c(0.0, 0.0)), &cfg);
        assert_eq!(north.coords(), vec![1.0, 0.0, 0.0, 0.0]);
        let south = section(&s2(-1.0, c(0.0, 0.0)), &cfg);
        assert_eq!(south.coords(), vec![0.0, 0.0, 1.0, 0.0]);
        let y = s2(0.0, c(1.0, 0.0));
        let eq = section(&y, &cfg);
        assert!(close(
            &eq.coords(),
            &[FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2, 0.0],
            1e-15
        ));
        assert!(close(&hopf_map(&eq).coords(), &y.coords(), 1e-15));
        assert!(Section::new(1.0).is_err());
        assert!(Section::new(-0.5).is_ok());
    }

    #[test]
    fn fiber_point_examples() {
        let cfg = Section::default();
        let w = PointS1::from_angle(2.0 * PI / 3.0);
        let x = fiber_point(&s2(1.0, c(0.0, 0.0)), &w, &cfg);
        assert!(close(&x.coords(), &[w.z().re, w.z().im, 0.0, 0.0], 1e-15));
        let x = fiber_point(&s2(-1.0, c(0.0, 0.0)), &w, &cfg);
        assert!(close(&x.coords(), &[0.0, 0.0, w.z().re, -w.z().im], 1e-15));
        let y = s2(0.6, c(0.0, 0.8));
        assert_eq!(fiber_point(&y, &PointS1::one(), &cfg), section(&y, &cfg));
    }

    #[test]
    fn pushforward_examples() {
        assert_eq!(
            pushforward_monomial(MonomialS3::new(0, 0, 0, 0)).to_string(),
            "1"
        );
        assert!(pushforward_monomial(MonomialS3::new(1, 0, 0, 1)).is_zero());
        assert_eq!(
            pushforward_monomial(MonomialS3::new(1, 1, 0, 0)).to_string(),
            "1/2 + 1/2·ξ"
        );
        assert_eq!(
            pushforward_monomial(MonomialS3::new(0, 0, 1, 1)).to_string(),
            "1/2 - 1/2·ξ"
        );
        let sum = pushforward_monomial(MonomialS3::new(1, 1, 0, 0))
            .add(&pushforward_monomial(MonomialS3::new(0, 0, 1, 1)));
        assert_eq!(sum.to_string(), "1");
    }

    #[test]
    fn pullback_examples() {
        assert_eq!(pullback_monomial(MonomialS2::new(0, 0, 0)).to_string(), "1");
        assert_eq!(
            pullback_monomial(MonomialS2::new(1, 0, 0)).to_string(),
            "a·ā - b·b̄"
        );
        assert_eq!(
            pullback_monomial(MonomialS2::new(0, 1, 0)).to_string(),
            "2·a·b"
        );
    }

    #[test]
    fn pullback_degree_is_doubled() {
        for m in MonomialS2::basis(5) {
            assert_eq!(pullback_monomial(m).degree(), Some(2 * m.degree()), "{m}");
        }
    }

    #[test]
    fn pullback_matches_composition_with_hopf_map() {
        let x = s3(c(0.3, -0.5), c(0.1, (1.0f64 - 0.35).sqrt()));
        let y = hopf_map(&x);
        for m in MonomialS2::basis(4) {
            let d = pullback_monomial(m).eval(&x) - m.eval(&y);
            assert!(d.norm() < 1e-13, "{m}");
        }
    }

    #[test]
    fn pushforward_degree_bound() {
        for m in MonomialS3::basis(8) {
            if let Some(d) = pushforward_monomial(m).degree() {
                assert!(d <= m.degree() / 2, "{m}");
            }
        }
    }

    #[test]
    fn fiber_quadrature_examples() {
        let cfg = Section::default();
        let y = s2(0.0, c(1.0, 0.0));
        let f = |x: &PointS3| MonomialS3::new(1, 1, 0, 0).eval(x);
        let v = fiber_quadrature(f, &y, 8, &cfg).unwrap();
        assert!((v - c(0.5, 0.0)).norm() < 1e-15);
        let one = fiber_quadrature(|_| c(1.0, 0.0), &s2(0.6, c(0.0, 0.8)), 1, &cfg).unwrap();
        assert_eq!(one, c(1.0, 0.0));
        let a = |x: &PointS3| x.a();
        for n in 2..6 {
            let v = fiber_quadrature(a, &s2(0.6, c(0.0, 0.8)), n, &cfg).unwrap();
            assert!(v.norm() < 1e-15);
        }
        assert!(fiber_quadrature(a, &y, 0, &cfg).is_err());
    }

    #[test]
    fn fubini_defect_vanishes() {
        for m in MonomialS3::basis(6) {
            assert_eq!(fubini_defect(m), BigRational::from(BigInt::from(0)), "{m}");
        }
    }

    fn arb_s2() -> impl Strategy<Value = PointS2> {
        (-1.0f64..=1.0, 0.0..2.0 * PI)
            .prop_map(|(xi, phi)| PointS2::from_height_azimuth(xi, phi).unwrap())
    }

    fn arb_s3() -> impl Strategy<Value = PointS3> {
        (0.0f64..=PI / 2.0, 0.0..2.0 * PI, 0.0..2.0 * PI).prop_map(|(v, t1, t2)| {
            PointS3::new(
                Complex64::from_polar(v.cos(), t1),
                Complex64::from_polar(v.sin(), t2),
            )
            .unwrap()
        })
    }

    fn arb_s1() -> impl Strategy<Value = PointS1> {
        (0.0f64..2.0 * PI).prop_map(PointS1::from_angle)
    }

    proptest! {
        #[test]
        fn action_is_a_right_action(x in arb_s3(), z in arb_s1(), w in arb_s1()) {
            let lhs = act(&act(&x, &z), &w);
            let rhs = act(&x, &z.mul(&w));
            prop_assert!(lhs.distance(&rhs) < 1e-14);
        }

        #[test]
        fn fiber_restriction_is_a_monomial(y in arb_s2(), z in arb_s1(), t in 0u32..4, u in 0u32..4, v in 0u32..4, w in 0u32..4) {
            let cfg = Section::default();
            let m = MonomialS3::new(t, u, v, w);
            let base = m.eval(&fiber_point(&y, &PointS1::one(), &cfg));
            prop_assume!(base.norm() > 1e-6);
            let ratio = m.eval(&fiber_point(&y, &z, &cfg)) / base;
            let expected = MonomialS1::new(m.fiber_charge()).eval(&z);
            prop_assert!((ratio - expected).norm() < 1e-9);
        }

        #[test]
        fn section_tracks_threshold(y in arb_s2(), thr in -0.9f64..0.9) {
            let cfg = Section::new(thr).unwrap();
            let back = hopf_map(&section(&y, &cfg));
            prop_assert!(back.distance(&y) < 1e-12);
        }
    }
}
