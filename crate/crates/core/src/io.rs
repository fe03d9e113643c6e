//! JSON design files.
//!
//! ```json
//! {
//!   "sphere": "s3",
//!   "points": [[re_a, im_a, re_b, im_b], ...],
//!   "weights": [0.5, ...],
//!   "meta": { ... }
//! }
//! ```
//!
//! S¹ points are `[re, im]`, S² points `[xi, re_eta, im_eta]`. `weights` is
//! optional and defaults to `1/|X|`; `meta` is free-form. Numbers are written
//! with 17 significant digits so files re-read bit-exactly.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::Deserialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::sphere::{PointS1, PointS2, PointS3, Sphere, SpherePoint, WeightedDesign};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct DesignFile {
    sphere: Sphere,
    points: Vec<Vec<f64>>,
    #[serde(default)]
    weights: Option<Vec<f64>>,
    #[serde(default)]
    meta: Option<Value>,
}

/// A design on any of the three spheres, as read from a file.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyDesign {
    S1(WeightedDesign<PointS1>),
    S2(WeightedDesign<PointS2>),
    S3(WeightedDesign<PointS3>),
}

impl AnyDesign {
    pub fn sphere(&self) -> Sphere {
        match self {
            AnyDesign::S1(_) => Sphere::S1,
            AnyDesign::S2(_) => Sphere::S2,
            AnyDesign::S3(_) => Sphere::S3,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            AnyDesign::S1(d) => d.len(),
            AnyDesign::S2(d) => d.len(),
            AnyDesign::S3(d) => d.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Parsed design together with its `meta` field.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignDocument {
    pub design: AnyDesign,
    pub meta: Option<Value>,
}

fn build<P: SpherePoint>(file: DesignFile, renormalize: bool) -> Result<WeightedDesign<P>> {
    let width = P::SPHERE.coord_len();
    let mut points = Vec::with_capacity(file.points.len());
    for (index, c) in file.points.iter().enumerate() {
        if c.len() != width {
            return Err(Error::Parse(format!(
                "point {index} has {} coordinates, {} expects {width}",
                c.len(),
                P::SPHERE
            )));
        }
        let p = P::from_coords(c, renormalize).map_err(|e| match e {
            Error::OffSphere {
                sphere,
                norm_sq,
                tol,
                ..
            } => Error::OffSphere {
                sphere,
                index,
                norm_sq,
                tol,
            },
            other => other,
        })?;
        points.push(p);
    }
    match file.weights {
        Some(w) => WeightedDesign::new(points, w),
        None => WeightedDesign::equal_weight(points),
    }
}

pub fn parse_design(text: &str, renormalize: bool) -> Result<DesignDocument> {
    let file: DesignFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let meta = file.meta.clone();
    let design = match file.sphere {
        Sphere::S1 => AnyDesign::S1(build(file, renormalize)?),
        Sphere::S2 => AnyDesign::S2(build(file, renormalize)?),
        Sphere::S3 => AnyDesign::S3(build(file, renormalize)?),
    };
    Ok(DesignDocument { design, meta })
}

pub fn read_design(path: &Path, renormalize: bool) -> Result<DesignDocument> {
    parse_design(&fs::read_to_string(path)?, renormalize)
}

/// Reads a design that must live on the sphere of `P`.
pub fn ingest_design<P: SpherePoint>(path: &Path, renormalize: bool) -> Result<WeightedDesign<P>> {
    let text = fs::read_to_string(path)?;
    let file: DesignFile = serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
    if file.sphere != P::SPHERE {
        return Err(Error::Parse(format!(
            "expected a {} design, file holds {}",
            P::SPHERE,
            file.sphere
        )));
    }
    build(file, renormalize)
}

fn number(out: &mut String, v: f64) {
    write!(out, "{v:.16e}").expect("writing to a String");
}

fn number_list(out: &mut String, values: &[f64]) {
    out.push('[');
    for (i, v) in values.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        number(out, *v);
    }
    out.push(']');
}

/// Serializes a design; weights are written only when they are not all equal.
pub fn design_to_json<P: SpherePoint>(design: &WeightedDesign<P>, meta: Option<&Value>) -> String {
    let mut out = String::new();
    out.push_str("{\n");
    writeln!(out, "  \"sphere\": \"{}\",", P::SPHERE).expect("writing to a String");
    out.push_str("  \"points\": [\n");
    for (i, p) in design.points().iter().enumerate() {
        out.push_str("    ");
        number_list(&mut out, &p.coords());
        out.push_str(if i + 1 < design.len() { ",\n" } else { "\n" });
    }
    out.push_str("  ]");
    if !design.is_equal_weight() {
        out.push_str(",\n  \"weights\": ");
        number_list(&mut out, design.weights());
    }
    if let Some(meta) = meta {
        out.push_str(",\n  \"meta\": ");
        out.push_str(&serde_json::to_string(meta).expect("JSON values serialize"));
    }
    out.push_str("\n}\n");
    out
}

pub fn any_design_to_json(design: &AnyDesign, meta: Option<&Value>) -> String {
    match design {
        AnyDesign::S1(d) => design_to_json(d, meta),
        AnyDesign::S2(d) => design_to_json(d, meta),
        AnyDesign::S3(d) => design_to_json(d, meta),
    }
}

pub fn write_design<P: SpherePoint>(
    path: &Path,
    design: &WeightedDesign<P>,
    meta: Option<&Value>,
) -> Result<()> {
    fs::write(path, design_to_json(design, meta))?;
    Ok(())
}
