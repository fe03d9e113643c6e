//! Input designs for the lift: regular gons on S¹, the antipodal pair on S²,
//! equal-weight interval designs on (−1, 1) and the latitude-circle product
//! construction of t-designs on S².

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sphere::{PointS1, PointS2, WeightedDesign};

/// Residual required of every returned interval design.
pub const INTERVAL_TOL: f64 = 1e-12;

/// `{e^{i(phase + 2πk/n)}}` with weights `1/n`; an (n−1)-design on S¹.
pub fn regular_gon(n: usize, phase: f64) -> Result<WeightedDesign<PointS1>> {
    if n == 0 {
        return Err(Error::InvalidArgument("gon size must be >= 1".into()));
    }
    let points = (0..n)
        .map(|k| PointS1::from_angle(phase + 2.0 * PI * k as f64 / n as f64))
        .collect();
    WeightedDesign::equal_weight(points)
}

/// `{(±1, 0)}`, a 1-design on S².
pub fn antipodal_pair() -> WeightedDesign<PointS2> {
    let points = vec![
        PointS2::new_unchecked(1.0, 0.0.into()),
        PointS2::new_unchecked(-1.0, 0.0.into()),
    ];
    WeightedDesign::equal_weight(points).expect("two points, equal weights")
}

/// Equal-weight node set on (−1, 1) reproducing the moments of the uniform
/// probability measure up to some degree.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalDesign {
    nodes: Vec<f64>,
}

impl IntervalDesign {
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight(&self) -> f64 {
        1.0 / self.nodes.len() as f64
    }

    /// `|mean(ξ^k) − ∫ξ^k dξ/2|`.
    pub fn moment_residual(&self, k: u32) -> f64 {
        let mean = self.nodes.iter().map(|x| x.powi(k as i32)).sum::<f64>() / self.len() as f64;
        (mean - uniform_moment(k)).abs()
    }

    pub fn max_residual(&self, t: usize) -> f64 {
        (1..=t as u32)
            .map(|k| self.moment_residual(k))
            .fold(0.0, f64::max)
    }
}

/// Nodes and positive weights summing to one, exact for the uniform
/// measure on (−1, 1) up to some degree.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedIntervalRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

fn uniform_moment(k: u32) -> f64 {
    if k % 2 == 1 {
        0.0
    } else {
        1.0 / (k as f64 + 1.0)
    }
}

/// Legendre `P_n(x)` and `P_n'(x)` by the three-term recurrence.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

/// Gauss–Legendre nodes (ascending) and weights on [−1, 1]; weights sum to 2.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut x = ((i as f64 + 0.75) / (n as f64 + 0.5) * PI).cos();
        for _ in 0..100 {
            let (p, dp) = legendre(n, x);
            let step = p / dp;
            x -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Default node-count hint for an interval t-design: 1 for `t = 0`, else the
/// smallest even number that is at least `⌊(t+2)/2⌋`.
pub fn default_node_hint(t: usize) -> usize {
    if t == 0 {
        1
    } else {
        let base = (t + 2) / 2;
        base + base % 2
    }
}

/// Settings for the equal-weight interval solver.
#[derive(Clone, Copy, Debug)]
pub struct IntervalSolver {
    /// Largest node count tried, as a multiple of the starting count.
    pub cap_factor: usize,
    pub max_iterations: usize,
}

impl Default for IntervalSolver {
    fn default() -> Self {
        Self {
            cap_factor: 8,
            max_iterations: 200,
        }
    }
}

impl IntervalSolver {
    /// Searches node counts `M, M+1, …, cap_factor·M` for a symmetric
    /// equal-weight interval t-design and returns the first one found.
    pub fn solve(&self, t: usize, hint: usize) -> Result<IntervalDesign> {
        let start = hint.max(1);
        let cap = start * self.cap_factor.max(1);
        for m in start..=cap {
            if let Some(d) = self.solve_fixed(t, m) {
                return Ok(d);
            }
        }
        Err(Error::NoConvergence { t, max_nodes: cap })
    }

    /// Symmetric ansatz with exactly `m` nodes: pairs `±x` plus a node at 0
    /// when `m` is odd. Odd moments vanish identically, so only the even
    /// moments 2, 4, …, ≤ t enter the (generally underdetermined) system,
    /// which is solved by damped minimum-norm Newton steps.
    pub fn solve_fixed(&self, t: usize, m: usize) -> Option<IntervalDesign> {
        let pairs = m / 2;
        let orders: Vec<i32> = (2..=t as i32).step_by(2).collect();
        if pairs == 0 && !orders.is_empty() {
            return None;
        }
        let starts = [gauss_legendre(m).0, midpoint_nodes(m)];
        for start in starts {
            let mut x: Vec<f64> = start.iter().copied().filter(|v| *v > 0.0).collect();
            x.truncate(pairs);
            if let Some(x) = self.newton(&orders, x, m) {
                let design = assemble(&x, m);
                if design.max_residual(t) < INTERVAL_TOL {
                    return Some(design);
                }
            }
        }
        None
    }

    fn newton(&self, orders: &[i32], mut x: Vec<f64>, m: usize) -> Option<Vec<f64>> {
        if orders.is_empty() {
            return Some(x);
        }
        let inv_m = 1.0 / m as f64;
        let residual = |x: &[f64]| -> DVector<f64> {
            DVector::from_iterator(
                orders.len(),
                orders.iter().map(|&k| {
                    2.0 * inv_m * x.iter().map(|v| v.powi(k)).sum::<f64>() - 1.0 / (k as f64 + 1.0)
                }),
            )
        };
        let mut f = residual(&x);
        for _ in 0..self.max_iterations {
            if f.amax() < 1e-15 {
                break;
            }
            let jac = DMatrix::from_fn(orders.len(), x.len(), |r, c| {
                let k = orders[r];
                2.0 * inv_m * k as f64 * x[c].powi(k - 1)
            });
            let step = jac.svd(true, true).solve(&(-&f), 1e-14).ok()?;
            let mut lambda = 1.0;
            let norm = f.norm();
            loop {
                let trial: Vec<f64> = x
                    .iter()
                    .zip(step.iter())
                    .map(|(a, d)| a + lambda * d)
                    .collect();
                let inside = trial.iter().all(|v| *v > 0.0 && *v < 1.0);
                if inside {
                    let ft = residual(&trial);
                    if ft.norm() < norm {
                        x = trial;
                        f = ft;
                        break;
                    }
                }
                lambda *= 0.5;
                if lambda < 1e-8 {
                    return (f.amax() < 1e-14).then_some(x);
                }
            }
        }
        (f.amax() < 1e-14).then_some(x)
    }
}

fn midpoint_nodes(m: usize) -> Vec<f64> {
    (0..m)
        .map(|i| -1.0 + (2 * i + 1) as f64 / m as f64)
        .collect()
}

fn assemble(half: &[f64], m: usize) -> IntervalDesign {
    let mut nodes: Vec<f64> = half.iter().flat_map(|&v| [v, -v]).collect();
    if m % 2 == 1 {
        nodes.push(0.0);
    }
    nodes.sort_by(f64::total_cmp);
    IntervalDesign { nodes }
}

/// Equal-weight interval t-design with the default solver, starting the node
/// search at `hint`.
pub fn interval_design(t: usize, hint: usize) -> Result<IntervalDesign> {
    IntervalSolver::default().solve(t, hint)
}

/// Gauss–Legendre rule exact to degree `t`, with weights normalized to one.
/// Used when no equal-weight interval design is available.
pub fn weighted_interval_rule(t: usize) -> WeightedIntervalRule {
    let (nodes, weights) = gauss_legendre(t / 2 + 1);
    let weights = weights.into_iter().map(|w| w / 2.0).collect();
    WeightedIntervalRule { nodes, weights }
}

/// Phases of the latitude gons in the product construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum LatitudePhases {
    #[default]
    Zero,
    /// Phase of circle `i` drawn from a stream keyed by `(seed, i)`.
    Random { seed: u64 },
}

impl LatitudePhases {
    fn phase(&self, index: usize) -> f64 {
        match self {
            LatitudePhases::Zero => 0.0,
            LatitudePhases::Random { seed } => stream_angle(*seed, index as u64),
        }
    }
}

/// Uniform angle in [0, 2π) determined by `(seed, index)` alone.
pub(crate) fn stream_angle(seed: u64, index: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng.random_range(0.0..2.0 * PI)
}

/// Union of regular `(t+1)`-gons on the latitude circles `ξ = ξ_i`, one for
/// each node of the rule, each point carrying `w_i/(t+1)`. A t-design on S²
/// whenever the rule is exact to degree t for the uniform measure.
pub fn latitude_product(
    nodes: &[f64],
    weights: &[f64],
    t: usize,
    phases: LatitudePhases,
) -> Result<WeightedDesign<PointS2>> {
    let gon = t + 1;
    let mut points = Vec::with_capacity(nodes.len() * gon);
    let mut out_weights = Vec::with_capacity(nodes.len() * gon);
    for (i, (&xi, &w)) in nodes.iter().zip(weights).enumerate() {
        let phase = phases.phase(i);
        for k in 0..gon {
            let phi = phase + 2.0 * PI * k as f64 / gon as f64;
            points.push(PointS2::from_height_azimuth(xi, phi)?);
            out_weights.push(w / gon as f64);
        }
    }
    WeightedDesign::new(points, out_weights)
}

/// Equal-weight t-design on S² from an equal-weight interval t-design.
pub fn product_design_s2(t: usize, phases: LatitudePhases) -> Result<WeightedDesign<PointS2>> {
    product_design_s2_with(t, default_node_hint(t), phases)
}

pub fn product_design_s2_with(
    t: usize,
    hint: usize,
    phases: LatitudePhases,
) -> Result<WeightedDesign<PointS2>> {
    let interval = interval_design(t, hint)?;
    let w = vec![interval.weight(); interval.len()];
    latitude_product(interval.nodes(), &w, t, phases)
}

/// Weighted t-design on S² built on Gauss–Legendre latitudes.
pub fn weighted_product_design_s2(
    t: usize,
    phases: LatitudePhases,
) -> Result<WeightedDesign<PointS2>> {
    let rule = weighted_interval_rule(t);
    latitude_product(&rule.nodes, &rule.weights, t, phases)
}
