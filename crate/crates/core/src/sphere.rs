//! Points on S¹ ⊂ ℂ, S² ⊂ ℝ×ℂ and S³ ⊂ ℂ², the monomials that span polynomial
//! spaces on them, exact moments under the normalized (probability) measures,
//! and weighted point sets.
//!
//! Monomials are written in the complex ambient coordinates: `z^d` on S¹,
//! `ξ^p η^q η̄^r` on S², and `a^i ā^j b^k b̄^l` on S³. The sets returned by
//! [`Monomial::basis`] span `P_t` but are not linearly independent on the
//! sphere (for instance `ξ² + ηη̄ = 1` on S²), which is harmless for design
//! verification.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `|x|² − 1` accepted when constructing a point.
pub const UNIT_TOL: f64 = 1e-12;
/// Tolerance on `Σ weights − 1` for a normalized weighted design.
pub const WEIGHT_SUM_TOL: f64 = 1e-10;
/// Designs whose `max/min − 1` weight ratio is below this are equal-weight.
pub const EQUAL_WEIGHT_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sphere {
    S1,
    S2,
    S3,
}

impl Sphere {
    /// Number of real coordinates per point in the design file format.
    pub fn coord_len(self) -> usize {
        match self {
            Sphere::S1 => 2,
            Sphere::S2 => 3,
            Sphere::S3 => 4,
        }
    }
}

impl fmt::Display for Sphere {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sphere::S1 => "s1",
            Sphere::S2 => "s2",
            Sphere::S3 => "s3",
        })
    }
}

impl FromStr for Sphere {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "s1" => Ok(Sphere::S1),
            "s2" => Ok(Sphere::S2),
            "s3" => Ok(Sphere::S3),
            other => Err(Error::Parse(format!("unknown sphere {other:?}"))),
        }
    }
}

fn check_unit(sphere: Sphere, norm_sq: f64) -> Result<()> {
    if norm_sq.is_finite() && (norm_sq - 1.0).abs() <= UNIT_TOL {
        Ok(())
    } else {
        Err(Error::OffSphere {
            sphere,
            index: 0,
            norm_sq,
            tol: UNIT_TOL,
        })
    }
}

fn projection_scale(sphere: Sphere, norm_sq: f64) -> Result<f64> {
    if norm_sq.is_finite() && norm_sq > 0.0 {
        Ok(norm_sq.sqrt().recip())
    } else {
        Err(Error::OffSphere {
            sphere,
            index: 0,
            norm_sq,
            tol: UNIT_TOL,
        })
    }
}

/// A point of a unit sphere with a fixed real coordinate layout.
pub trait SpherePoint: Copy + fmt::Debug + PartialEq + Send + Sync + 'static {
    type Monomial: Monomial<Point = Self>;
    const SPHERE: Sphere;

    /// Real coordinates in design-file order.
    fn coords(&self) -> Vec<f64>;

    /// Builds a point from design-file coordinates. Off-sphere input is
    /// rejected unless `renormalize` is set, in which case it is projected.
    fn from_coords(coords: &[f64], renormalize: bool) -> Result<Self>;

    /// Complex ambient variables, in the order used by [`Monomial::eval_cached`].
    fn variables(&self) -> Vec<Complex64>;

    fn distance(&self, other: &Self) -> f64 {
        self.coords()
            .iter()
            .zip(other.coords())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }
}

/// A monomial in the complex ambient coordinates of one sphere.
pub trait Monomial: Copy + Ord + std::hash::Hash + fmt::Debug + fmt::Display + Send + Sync {
    type Point: SpherePoint<Monomial = Self>;

    fn degree(&self) -> usize;

    /// Integral over the sphere against the normalized measure.
    fn moment(&self) -> BigRational;

    fn eval(&self, x: &Self::Point) -> Complex64;

    /// Evaluates from a cache where `powers[v * stride + e]` holds variable `v`
    /// (see [`SpherePoint::variables`]) raised to `e`.
    fn eval_cached(&self, powers: &[Complex64], stride: usize) -> Complex64;

    /// All monomials of total degree at most `max_degree`, sorted by degree.
    fn basis(max_degree: usize) -> Vec<Self>;

    /// The monomial whose value is the complex conjugate of this one.
    fn conjugate(&self) -> Self;

    fn product(&self, other: &Self) -> Self;

    fn one() -> Self;
}

// ---------------------------------------------------------------- points

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointS1 {
    z: Complex64,
}

impl PointS1 {
    pub fn new(z: Complex64) -> Result<Self> {
        check_unit(Sphere::S1, z.norm_sqr())?;
        Ok(Self { z })
    }

    pub fn from_angle(theta: f64) -> Self {
        Self {
            z: Complex64::from_polar(1.0, theta),
        }
    }

    pub fn one() -> Self {
        Self {
            z: Complex64::one(),
        }
    }

    pub(crate) fn new_unchecked(z: Complex64) -> Self {
        Self { z }
    }

    pub fn z(&self) -> Complex64 {
        self.z
    }

    /// Group product on S¹.
    pub fn mul(&self, other: &Self) -> Self {
        Self {
            z: self.z * other.z,
        }
    }
}

impl SpherePoint for PointS1 {
    type Monomial = MonomialS1;
    const SPHERE: Sphere = Sphere::S1;

    fn coords(&self) -> Vec<f64> {
        vec![self.z.re, self.z.im]
    }

    fn from_coords(coords: &[f64], renormalize: bool) -> Result<Self> {
        let z = Complex64::new(coords[0], coords[1]);
        if renormalize {
            Ok(Self::new_unchecked(
                z * projection_scale(Sphere::S1, z.norm_sqr())?,
            ))
        } else {
            Self::new(z)
        }
    }

    fn variables(&self) -> Vec<Complex64> {
        vec![self.z]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointS2 {
    xi: f64,
    eta: Complex64,
}

impl PointS2 {
    pub fn new(xi: f64, eta: Complex64) -> Result<Self> {
        check_unit(Sphere::S2, xi * xi + eta.norm_sqr())?;
        Ok(Self { xi, eta })
    }

    pub(crate) fn new_unchecked(xi: f64, eta: Complex64) -> Self {
        Self { xi, eta }
    }

    /// Point at height `xi` and azimuth `phi`.
    pub fn from_height_azimuth(xi: f64, phi: f64) -> Result<Self> {
        if !(-1.0..=1.0).contains(&xi) {
            return Err(Error::InvalidArgument(format!(
                "height {xi} outside [-1, 1]"
            )));
        }
        Ok(Self {
            xi,
            eta: Complex64::from_polar((1.0 - xi * xi).sqrt(), phi),
        })
    }

    pub fn xi(&self) -> f64 {
        self.xi
    }

    pub fn eta(&self) -> Complex64 {
        self.eta
    }
}

impl SpherePoint for PointS2 {
    type Monomial = MonomialS2;
    const SPHERE: Sphere = Sphere::S2;

    fn coords(&self) -> Vec<f64> {
        vec![self.xi, self.eta.re, self.eta.im]
    }

    fn from_coords(coords: &[f64], renormalize: bool) -> Result<Self> {
        let (xi, eta) = (coords[0], Complex64::new(coords[1], coords[2]));
        if renormalize {
            let s = projection_scale(Sphere::S2, xi * xi + eta.norm_sqr())?;
            Ok(Self::new_unchecked(xi * s, eta * s))
        } else {
            Self::new(xi, eta)
        }
    }

    fn variables(&self) -> Vec<Complex64> {
        vec![Complex64::new(self.xi, 0.0), self.eta]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointS3 {
    a: Complex64,
    b: Complex64,
}

impl PointS3 {
    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        check_unit(Sphere::S3, a.norm_sqr() + b.norm_sqr())?;
        Ok(Self { a, b })
    }

    pub(crate) fn new_unchecked(a: Complex64, b: Complex64) -> Self {
        Self { a, b }
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }
}

impl SpherePoint for PointS3 {
    type Monomial = MonomialS3;
    const SPHERE: Sphere = Sphere::S3;

    fn coords(&self) -> Vec<f64> {
        vec![self.a.re, self.a.im, self.b.re, self.b.im]
    }

    fn from_coords(coords: &[f64], renormalize: bool) -> Result<Self> {
        let a = Complex64::new(coords[0], coords[1]);
        let b = Complex64::new(coords[2], coords[3]);
        if renormalize {
            let s = projection_scale(Sphere::S3, a.norm_sqr() + b.norm_sqr())?;
            Ok(Self::new_unchecked(a * s, b * s))
        } else {
            Self::new(a, b)
        }
    }

    fn variables(&self) -> Vec<Complex64> {
        vec![self.a, self.b]
    }
}

// ------------------------------------------------------------- monomials

/// `z^d` on S¹; negative `d` stands for `z̄^{−d}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialS1 {
    pub d: i64,
}

/// `ξ^p η^q η̄^r` on S².
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialS2 {
    pub p: u32,
    pub q: u32,
    pub r: u32,
}

/// `a^i ā^j b^k b̄^l` on S³.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MonomialS3 {
    pub i: u32,
    pub j: u32,
    pub k: u32,
    pub l: u32,
}

impl MonomialS1 {
    pub fn new(d: i64) -> Self {
        Self { d }
    }
}

impl MonomialS2 {
    pub fn new(p: u32, q: u32, r: u32) -> Self {
        Self { p, q, r }
    }
}

impl MonomialS3 {
    pub fn new(i: u32, j: u32, k: u32, l: u32) -> Self {
        Self { i, j, k, l }
    }

    /// Weight of the S¹-action: `f(x·z) = z^{i−j−k+l} f(x)`.
    pub fn fiber_charge(&self) -> i64 {
        self.i as i64 - self.j as i64 - self.k as i64 + self.l as i64
    }
}

// Degree first, then so that e.g. ξ precedes η precedes η̄.
impl Ord for MonomialS1 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.d.unsigned_abs(), self.d).cmp(&(other.d.unsigned_abs(), other.d))
    }
}

impl PartialOrd for MonomialS1 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonomialS2 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Reverse;
        (self.degree(), Reverse((self.p, self.q, self.r)))
            .cmp(&(other.degree(), Reverse((other.p, other.q, other.r))))
    }
}

impl PartialOrd for MonomialS2 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MonomialS3 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Reverse;
        (self.degree(), Reverse((self.i, self.j, self.k, self.l))).cmp(&(
            other.degree(),
            Reverse((other.i, other.j, other.k, other.l)),
        ))
    }
}

impl PartialOrd for MonomialS3 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

fn write_factor(f: &mut fmt::Formatter<'_>, first: &mut bool, var: &str, exp: u64) -> fmt::Result {
    if exp == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str("·")?;
    }
    *first = false;
    if exp == 1 {
        f.write_str(var)
    } else {
        write!(f, "{var}^{exp}")
    }
}

impl fmt::Display for MonomialS1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.d {
            0 => f.write_str("1"),
            d if d > 0 => write_factor(f, &mut true, "z", d as u64),
            d => write_factor(f, &mut true, "z̄", d.unsigned_abs()),
        }
    }
}

impl fmt::Display for MonomialS2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        write_factor(f, &mut first, "ξ", self.p.into())?;
        write_factor(f, &mut first, "η", self.q.into())?;
        write_factor(f, &mut first, "η̄", self.r.into())
    }
}

impl fmt::Display for MonomialS3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() == 0 {
            return f.write_str("1");
        }
        let mut first = true;
        write_factor(f, &mut first, "a", self.i.into())?;
        write_factor(f, &mut first, "ā", self.j.into())?;
        write_factor(f, &mut first, "b", self.k.into())?;
        write_factor(f, &mut first, "b̄", self.l.into())
    }
}

fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, s| {
        acc * BigInt::from(n - s) / BigInt::from(s + 1)
    })
}

/// `∫_{S¹} z^d dμ`: 1 for `d = 0`, otherwise 0.
pub fn moment_s1(m: MonomialS1) -> BigRational {
    if m.d == 0 {
        BigRational::one()
    } else {
        BigRational::zero()
    }
}

/// `∫_{S²} ξ^p η^q η̄^r dμ`. Under the normalized measure ξ is uniform on
/// [−1, 1] and the phase of η is uniform and independent, so the integral
/// vanishes unless `q = r` and `p` is even, and then equals
/// `½∫ ξ^p (1 − ξ²)^q dξ = Σ_s C(q, s) (−1)^s / (p + 2s + 1)`.
pub fn moment_s2(m: MonomialS2) -> BigRational {
    if m.q != m.r || m.p % 2 == 1 {
        return BigRational::zero();
    }
    (0..=m.q).fold(BigRational::zero(), |acc, s| {
        let sign = if s % 2 == 0 { 1 } else { -1 };
        let term = BigRational::new(
            binomial(m.q, s) * BigInt::from(sign),
            BigInt::from(m.p + 2 * s + 1),
        );
        acc + term
    })
}

/// `∫_{S³} a^i ā^j b^k b̄^l dμ`: zero unless `i = j` and `k = l`, in which
/// case it is `i! k! / (i + k + 1)!`.
pub fn moment_s3(m: MonomialS3) -> BigRational {
    if m.i != m.j || m.k != m.l {
        return BigRational::zero();
    }
    BigRational::new(factorial(m.i) * factorial(m.k), factorial(m.i + m.k + 1))
}

#[inline]
fn real_power(powers: &[Complex64], e: u32) -> f64 {
    powers[e as usize].re
}

impl Monomial for MonomialS1 {
    type Point = PointS1;

    fn degree(&self) -> usize {
        self.d.unsigned_abs() as usize
    }

    fn moment(&self) -> BigRational {
        moment_s1(*self)
    }

    fn eval(&self, x: &PointS1) -> Complex64 {
        if self.d >= 0 {
            x.z.powi(self.d as i32)
        } else {
            x.z.conj().powi(-self.d as i32)
        }
    }

    #[inline]
    fn eval_cached(&self, powers: &[Complex64], _stride: usize) -> Complex64 {
        if self.d >= 0 {
            powers[self.d as usize]
        } else {
            powers[self.d.unsigned_abs() as usize].conj()
        }
    }

    fn basis(max_degree: usize) -> Vec<Self> {
        let t = max_degree as i64;
        let mut out: Vec<Self> = (-t..=t).map(MonomialS1::new).collect();
        out.sort();
        out
    }

    fn conjugate(&self) -> Self {
        Self { d: -self.d }
    }

    fn product(&self, other: &Self) -> Self {
        Self {
            d: self.d + other.d,
        }
    }

    fn one() -> Self {
        Self { d: 0 }
    }
}

impl Monomial for MonomialS2 {
    type Point = PointS2;

    fn degree(&self) -> usize {
        (self.p + self.q + self.r) as usize
    }

    fn moment(&self) -> BigRational {
        moment_s2(*self)
    }

    fn eval(&self, x: &PointS2) -> Complex64 {
        x.xi.powi(self.p as i32) * x.eta.powi(self.q as i32) * x.eta.conj().powi(self.r as i32)
    }

    #[inline]
    fn eval_cached(&self, powers: &[Complex64], stride: usize) -> Complex64 {
        let eta = &powers[stride..];
        real_power(powers, self.p) * eta[self.q as usize] * eta[self.r as usize].conj()
    }

    fn basis(max_degree: usize) -> Vec<Self> {
        let t = max_degree as u32;
        let mut out = Vec::new();
        for p in 0..=t {
            for q in 0..=t - p {
                for r in 0..=t - p - q {
                    out.push(MonomialS2::new(p, q, r));
                }
            }
        }
        out.sort();
        out
    }

    fn conjugate(&self) -> Self {
        Self {
            p: self.p,
            q: self.r,
            r: self.q,
        }
    }

    fn product(&self, other: &Self) -> Self {
        Self::new(self.p + other.p, self.q + other.q, self.r + other.r)
    }

    fn one() -> Self {
        Self::new(0, 0, 0)
    }
}

impl Monomial for MonomialS3 {
    type Point = PointS3;

    fn degree(&self) -> usize {
        (self.i + self.j + self.k + self.l) as usize
    }

    fn moment(&self) -> BigRational {
        moment_s3(*self)
    }

    fn eval(&self, x: &PointS3) -> Complex64 {
        x.a.powi(self.i as i32)
            * x.a.conj().powi(self.j as i32)
            * x.b.powi(self.k as i32)
            * x.b.conj().powi(self.l as i32)
    }

    #[inline]
    fn eval_cached(&self, powers: &[Complex64], stride: usize) -> Complex64 {
        let b = &powers[stride..];
        powers[self.i as usize]
            * powers[self.j as usize].conj()
            * b[self.k as usize]
            * b[self.l as usize].conj()
    }

    fn basis(max_degree: usize) -> Vec<Self> {
        let t = max_degree as u32;
        let mut out = Vec::new();
        for i in 0..=t {
            for j in 0..=t - i {
                for k in 0..=t - i - j {
                    for l in 0..=t - i - j - k {
                        out.push(MonomialS3::new(i, j, k, l));
                    }
                }
            }
        }
        out.sort();
        out
    }

    fn conjugate(&self) -> Self {
        Self::new(self.j, self.i, self.l, self.k)
    }

    fn product(&self, other: &Self) -> Self {
        Self::new(
            self.i + other.i,
            self.j + other.j,
            self.k + other.k,
            self.l + other.l,
        )
    }

    fn one() -> Self {
        Self::new(0, 0, 0, 0)
    }
}

/// Monomials of total degree at most `max_degree` on the sphere of `P`.
pub fn basis_monomials<P: SpherePoint>(max_degree: usize) -> Vec<P::Monomial> {
    P::Monomial::basis(max_degree)
}

/// `dim P_t(S^d) = C(t+d, d) + C(t+d−1, d)`: on the sphere every polynomial
/// of degree ≤ t is a sum of homogeneous ones of degree t and t−1.
pub fn polynomial_space_dim(d: u32, t: u32) -> BigInt {
    if t == 0 {
        return BigInt::one();
    }
    binomial(t + d, d) + binomial(t + d - 1, d)
}

// ---------------------------------------------------------------- designs

/// A finite point set with positive weights summing to one.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedDesign<P> {
    points: Vec<P>,
    weights: Vec<f64>,
}

impl<P: SpherePoint> WeightedDesign<P> {
    pub fn new(points: Vec<P>, weights: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidDesign("design has no points".into()));
        }
        if points.len() != weights.len() {
            return Err(Error::InvalidDesign(format!(
                "{} points but {} weights",
                points.len(),
                weights.len()
            )));
        }
        if let Some(i) = weights.iter().position(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(Error::InvalidDesign(format!(
                "weight {i} is not positive: {}",
                weights[i]
            )));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidDesign(format!(
                "weights sum to {total}, expected 1"
            )));
        }
        Ok(Self { points, weights })
    }

    /// Equal weights `1/|X|`.
    pub fn equal_weight(points: Vec<P>) -> Result<Self> {
        let w = 1.0 / points.len() as f64;
        let weights = vec![w; points.len()];
        Self::new(points, weights)
    }

    pub fn points(&self) -> &[P] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn is_equal_weight(&self) -> bool {
        let (lo, hi) = self
            .weights
            .iter()
            .fold((f64::INFINITY, 0.0_f64), |(lo, hi), &w| {
                (lo.min(w), hi.max(w))
            });
        hi / lo - 1.0 < EQUAL_WEIGHT_TOL
    }

    pub fn iter(&self) -> impl Iterator<Item = (&P, f64)> + '_ {
        self.points.iter().zip(self.weights.iter().copied())
    }

    pub fn into_parts(self) -> (Vec<P>, Vec<f64>) {
        (self.points, self.weights)
    }
}
