//! Design certification against exact sphere moments.
//!
//! A weighted design `(X, λ)` has strength t when `Σ λ(x) f(x) = ∫ f dμ` for
//! every polynomial of degree ≤ t. It suffices to test the monomial spanning
//! set of each degree; the residual of a monomial is
//! `|Σ λ(x) m(x) − moment(m)|` and a degree passes when its largest residual
//! is within the absolute tolerance.

use std::fmt;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::AngularIntegral;
use crate::sphere::{Monomial, Sphere, SpherePoint, WeightedDesign};

pub const DEFAULT_TOL: f64 = 1e-9;

/// Per-degree quadrature error estimate accepted by the numeric oracle.
pub const QUADRATURE_LIMIT: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StrengthReport {
    pub sphere: Sphere,
    pub points: usize,
    pub equal_weight: bool,
    pub tol: f64,
    pub max_degree: usize,
    /// Largest monomial residual among monomials of exactly degree `d`.
    pub residuals: Vec<f64>,
    /// Number of monomials of exactly degree `d`.
    pub basis_sizes: Vec<usize>,
    /// Largest t with every degree ≤ t within `tol`; `None` if degree 0 fails.
    pub certified_strength: Option<usize>,
}

impl StrengthReport {
    fn from_residuals<P: SpherePoint>(
        x: &WeightedDesign<P>,
        tol: f64,
        residuals: Vec<f64>,
        basis_sizes: Vec<usize>,
    ) -> Self {
        let passing = residuals.iter().take_while(|r| **r <= tol).count();
        Self {
            sphere: P::SPHERE,
            points: x.len(),
            equal_weight: x.is_equal_weight(),
            tol,
            max_degree: residuals.len().saturating_sub(1),
            residuals,
            basis_sizes,
            certified_strength: passing.checked_sub(1),
        }
    }

    /// True when every examined degree passed, so the strength may be higher.
    pub fn is_lower_bound(&self) -> bool {
        self.certified_strength == Some(self.max_degree)
    }

    pub fn residual(&self, degree: usize) -> Option<f64> {
        self.residuals.get(degree).copied()
    }

    /// Largest residual over degrees `0..=degree`.
    pub fn max_residual_through(&self, degree: usize) -> f64 {
        self.residuals
            .iter()
            .take(degree + 1)
            .copied()
            .fold(0.0, f64::max)
    }
}

impl fmt::Display for StrengthReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "sphere: {}  points: {}  equal-weight: {}  tol: {:e}",
            self.sphere,
            self.points,
            if self.equal_weight { "yes" } else { "no" },
            self.tol
        )?;
        writeln!(
            f,
            "{:>6}  {:>7}  {:>12}  status",
            "degree", "basis", "max-residual"
        )?;
        for (d, (r, n)) in self.residuals.iter().zip(&self.basis_sizes).enumerate() {
            let status = if *r <= self.tol { "ok" } else { "FAIL" };
            writeln!(f, "{d:>6}  {n:>7}  {r:>12.3e}  {status}")?;
        }
        match self.certified_strength {
            Some(t) if self.is_lower_bound() => write!(f, "certified strength: >= {t}"),
            Some(t) => write!(f, "certified strength: {t}"),
            None => write!(f, "certified strength: none (degree 0 fails)"),
        }
    }
}

/// `|Σ λ(x) m(x) − moment(m)|`.
pub fn residual<P: SpherePoint>(x: &WeightedDesign<P>, m: &P::Monomial) -> f64 {
    let sum: Complex64 = x.iter().map(|(p, w)| m.eval(p) * w).sum();
    (sum - Complex64::new(m.moment().to_f64().unwrap_or(f64::NAN), 0.0)).norm()
}

/// Powers of every point's ambient variables, cached for fast monomial sums.
struct PowerCache {
    data: Vec<Complex64>,
    weights: Vec<f64>,
    stride: usize,
    block: usize,
}

impl PowerCache {
    fn new<P: SpherePoint>(x: &WeightedDesign<P>, max_degree: usize) -> Self {
        let stride = max_degree + 1;
        let nvars = x.points()[0].variables().len();
        let block = nvars * stride;
        let mut data = Vec::with_capacity(block * x.len());
        for p in x.points() {
            for v in p.variables() {
                let mut acc = Complex64::new(1.0, 0.0);
                for _ in 0..stride {
                    data.push(acc);
                    acc *= v;
                }
            }
        }
        Self {
            data,
            weights: x.weights().to_vec(),
            stride,
            block,
        }
    }

    fn weighted_sum<M: Monomial>(&self, m: &M) -> Complex64 {
        self.data
            .chunks_exact(self.block)
            .zip(&self.weights)
            .map(|(powers, w)| m.eval_cached(powers, self.stride) * *w)
            .sum()
    }
}

fn by_degree<M: Monomial>(max_degree: usize) -> Vec<Vec<M>> {
    let mut groups = vec![Vec::new(); max_degree + 1];
    for m in M::basis(max_degree) {
        groups[m.degree()].push(m);
    }
    groups
}

fn degree_residual<M: Monomial>(cache: &PowerCache, monomials: &[M]) -> f64 {
    monomials
        .par_iter()
        .map(|m| {
            let exact = m.moment().to_f64().unwrap_or(f64::NAN);
            (cache.weighted_sum(m) - Complex64::new(exact, 0.0)).norm()
        })
        .reduce(|| 0.0, f64::max)
}

/// Residuals for every degree up to `max_degree` and the certified strength.
pub fn certify<P: SpherePoint>(
    x: &WeightedDesign<P>,
    max_degree: usize,
    tol: f64,
) -> StrengthReport {
    let cache = PowerCache::new(x, max_degree);
    let groups = by_degree::<P::Monomial>(max_degree);
    let residuals = groups.iter().map(|g| degree_residual(&cache, g)).collect();
    let sizes = groups.iter().map(Vec::len).collect();
    StrengthReport::from_residuals(x, tol, residuals, sizes)
}

/// Like [`certify`] but stops at the first failing degree, so the report's
/// tables end there.
pub fn certify_until_failure<P: SpherePoint>(
    x: &WeightedDesign<P>,
    max_degree: usize,
    tol: f64,
) -> StrengthReport {
    let cache = PowerCache::new(x, max_degree);
    let groups = by_degree::<P::Monomial>(max_degree);
    let mut residuals = Vec::new();
    let mut sizes = Vec::new();
    for g in &groups {
        let r = degree_residual(&cache, g);
        residuals.push(r);
        sizes.push(g.len());
        if r > tol {
            break;
        }
    }
    StrengthReport::from_residuals(x, tol, residuals, sizes)
}

/// Sphere integral of a monomial from adaptive quadrature in angular
/// coordinates, with its error estimate.
pub fn numeric_moment<P>(m: &P::Monomial) -> Result<Complex64>
where
    P: SpherePoint + AngularIntegral,
{
    let e = P::sphere_integral(|x: &P| m.eval(x), 1e-12);
    if e.error > QUADRATURE_LIMIT {
        return Err(Error::QuadratureFailure {
            estimate: e.error,
            limit: QUADRATURE_LIMIT,
        });
    }
    Ok(e.value)
}

/// Independent certification: same contract as [`certify`] with moments
/// from numeric quadrature instead of closed forms. Limited to degree 6 and
/// 1000 points.
pub fn brute_force_certify<P>(x: &WeightedDesign<P>, t: usize, tol: f64) -> Result<StrengthReport>
where
    P: SpherePoint + AngularIntegral,
{
    if t > 6 || x.len() > 1000 {
        return Err(Error::InvalidArgument(format!(
            "brute-force certification supports degree <= 6 and <= 1000 points (got {t}, {})",
            x.len()
        )));
    }
    let groups = by_degree::<P::Monomial>(t);
    let mut residuals = Vec::with_capacity(groups.len());
    for g in &groups {
        let per: Vec<f64> = g
            .par_iter()
            .map(|m| {
                let exact = numeric_moment::<P>(m)?;
                let sum: Complex64 = x.iter().map(|(p, w)| m.eval(p) * w).sum();
                Ok((sum - exact).norm())
            })
            .collect::<Result<_>>()?;
        residuals.push(per.into_iter().fold(0.0, f64::max));
    }
    let sizes = groups.iter().map(Vec::len).collect();
    Ok(StrengthReport::from_residuals(x, tol, residuals, sizes))
}
