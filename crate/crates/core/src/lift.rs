//! Lifting designs on S² to designs on S³ through the Hopf map.
//!
//! Over every point `y` of a design `Y` on S² a design `Γ_y` on the fiber
//! `π⁻¹(y) ≅ S¹` is placed, starting from the base point `s_y`. If `Y` is a
//! t-design and every `Γ_y` is a 2t-design (resp. (2t+1)-design) on S¹, the
//! union is a 2t-design (resp. (2t+1)-design) on S³ of size `Σ |Γ_y|`. With
//! weights, the point `s_y·γ` carries `λ_Y(y)·λ_Γ(γ)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::generators::{regular_gon, stream_angle};
use crate::hopf::{act, Section};
use crate::sphere::{PointS1, PointS2, PointS3, SpherePoint, WeightedDesign};

/// Rotation applied to the gon in each fiber.
#[derive(Clone, Debug, PartialEq, Default)]
pub enum PhaseMode {
    #[default]
    Zero,
    /// Phase of fiber `i` derived from `(seed, i)` alone.
    Random { seed: u64 },
    /// One phase per point of the base design.
    Explicit(Vec<f64>),
}

#[derive(Clone, Debug, PartialEq)]
pub struct LiftConfig {
    pub gon_size: usize,
    pub phase_mode: PhaseMode,
    pub section: Section,
    /// Merge coincident output points, summing their weights.
    pub merge: bool,
}

impl LiftConfig {
    pub fn new(gon_size: usize) -> Self {
        Self {
            gon_size,
            phase_mode: PhaseMode::Zero,
            section: Section::default(),
            merge: false,
        }
    }

    /// Gon size `2t+1`, enough for a 2t-design from a t-design.
    pub fn for_degree(t: usize) -> Self {
        Self::new(2 * t + 1)
    }

    pub fn with_phases(mut self, phase_mode: PhaseMode) -> Self {
        self.phase_mode = phase_mode;
        self
    }

    pub fn with_section(mut self, section: Section) -> Self {
        self.section = section;
        self
    }

    pub fn with_merge(mut self, merge: bool) -> Self {
        self.merge = merge;
        self
    }

    fn phase(&self, index: usize) -> f64 {
        match &self.phase_mode {
            PhaseMode::Zero => 0.0,
            PhaseMode::Random { seed } => stream_angle(*seed, index as u64),
            PhaseMode::Explicit(list) => list[index],
        }
    }
}

/// Lifts `y` with one regular gon of `cfg.gon_size` points per fiber.
pub fn lift_design(
    y: &WeightedDesign<PointS2>,
    cfg: &LiftConfig,
) -> Result<WeightedDesign<PointS3>> {
    if cfg.gon_size == 0 {
        return Err(Error::InvalidArgument("gon size must be >= 1".into()));
    }
    if let PhaseMode::Explicit(list) = &cfg.phase_mode {
        if list.len() != y.len() {
            return Err(Error::InvalidArgument(format!(
                "{} explicit phases for {} base points",
                list.len(),
                y.len()
            )));
        }
    }
    let fibers = (0..y.len())
        .map(|i| regular_gon(cfg.gon_size, cfg.phase(i)))
        .collect::<Result<Vec<_>>>()?;
    let x = lift_with_fibers(y, &fibers, &cfg.section)?;
    Ok(if cfg.merge {
        merge_duplicates(&x, 1e-12)
    } else {
        x
    })
}

/// General weighted lift: `fibers[i]` is the design placed on the fiber over
/// the i-th point of `y`, measured from its base point. Fibers may differ in
/// size and weights.
pub fn lift_with_fibers(
    y: &WeightedDesign<PointS2>,
    fibers: &[WeightedDesign<PointS1>],
    section: &Section,
) -> Result<WeightedDesign<PointS3>> {
    if fibers.len() != y.len() {
        return Err(Error::InvalidArgument(format!(
            "{} fiber designs for {} base points",
            fibers.len(),
            y.len()
        )));
    }
    let total: usize = fibers.iter().map(WeightedDesign::len).sum();
    let mut points = Vec::with_capacity(total);
    let mut weights = Vec::with_capacity(total);
    for ((base, wy), gamma) in y.iter().zip(fibers) {
        let s = section.base_point(base);
        for (z, wz) in gamma.iter() {
            points.push(act(&s, z));
            weights.push(wy * wz);
        }
    }
    WeightedDesign::new(points, weights)
}

/// Collapses points closer than `tol` into one, summing weights. Only
/// duplicated base points can produce coincidences.
pub fn merge_duplicates<P: SpherePoint>(x: &WeightedDesign<P>, tol: f64) -> WeightedDesign<P> {
    let coords: Vec<Vec<f64>> = x.points().iter().map(SpherePoint::coords).collect();
    let mut order: Vec<usize> = (0..x.len()).collect();
    order.sort_by(|&i, &j| coords[i][0].total_cmp(&coords[j][0]));
    let mut owner: Vec<usize> = (0..x.len()).collect();
    for (pos, &i) in order.iter().enumerate() {
        if owner[i] != i {
            continue;
        }
        for &j in &order[pos + 1..] {
            if coords[j][0] - coords[i][0] > tol {
                break;
            }
            if owner[j] == j && x.points()[i].distance(&x.points()[j]) <= tol {
                owner[j] = i;
            }
        }
    }
    let mut points = Vec::new();
    let mut weights = Vec::new();
    let mut slot = vec![usize::MAX; x.len()];
    for (i, (p, w)) in x.iter().enumerate() {
        let root = owner[i];
        if slot[root] == usize::MAX {
            slot[root] = points.len();
            points.push(*p);
            weights.push(0.0);
        }
        weights[slot[root]] += w;
    }
    WeightedDesign::new(points, weights).expect("merging preserves positive weights and their sum")
}

/// Size of a lifted design against the upper bounds
/// `N(2t) ≤ (2t+1)(t+1)²` and `N(2t+1) ≤ 2(t+1)³` obtained from
/// `(t+1)²`-point t-designs on S².
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CardinalityReport {
    pub t: usize,
    pub size: usize,
    pub even_bound: u128,
    pub odd_bound: u128,
    pub within_even_bound: bool,
    pub within_odd_bound: bool,
}

pub fn cardinality_report(t: usize, x: &WeightedDesign<PointS3>) -> CardinalityReport {
    let n = t as u128 + 1;
    let even_bound = (2 * t as u128 + 1) * n * n;
    let odd_bound = 2 * n * n * n;
    let size = x.len();
    CardinalityReport {
        t,
        size,
        even_bound,
        odd_bound,
        within_even_bound: size as u128 <= even_bound,
        within_odd_bound: size as u128 <= odd_bound,
    }
}

impl fmt::Display for CardinalityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "holds" } else { "exceeded" };
        writeln!(f, "points: {}", self.size)?;
        writeln!(
            f,
            "(2t+1)(t+1)^2 = {} for t = {}: {}",
            self.even_bound,
            self.t,
            mark(self.within_even_bound)
        )?;
        write!(
            f,
            "2(t+1)^3 = {} for t = {}: {}",
            self.odd_bound,
            self.t,
            mark(self.within_odd_bound)
        )
    }
}
