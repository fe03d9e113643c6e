//! Spherical designs on S³ built from designs on S² through the Hopf map.
//!
//! A t-design on S² together with a 2t-design (a regular (2t+1)-gon) placed
//! on each fiber of `π: S³ → S²` over its points gives a 2t-design on S³;
//! with (2t+2)-gons the result is a (2t+1)-design. This crate provides
//!
//! - [`sphere`]: points, monomials and exact moments on S¹, S², S³,
//! - [`hopf`]: the Hopf map, the circle action, sections, and the symbolic
//!   fiber average and pullback,
//! - [`generators`]: gons, the antipodal pair and latitude-product designs
//!   on S² built from equal-weight interval designs,
//! - [`lift`]: the lift itself, weighted or equal-weight,
//! - [`verify`]: strength certification against exact moments, plus a
//!   quadrature-based cross-check,
//! - [`io`] and [`cli`]: JSON design files and the command-line tool.
//!
//! ```
//! use hopf_designs::generators::{product_design_s2, LatitudePhases};
//! use hopf_designs::lift::{lift_design, LiftConfig};
//! use hopf_designs::verify::{certify, DEFAULT_TOL};
//!
//! let y = product_design_s2(3, LatitudePhases::Zero).unwrap();
//! let x = lift_design(&y, &LiftConfig::for_degree(3)).unwrap();
//! assert_eq!(x.len(), y.len() * 7);
//! assert!(certify(&x, 6, DEFAULT_TOL).certified_strength >= Some(6));
//! ```

pub mod cli;
pub mod error;
pub mod generators;
pub mod hopf;
pub mod io;
pub mod lift;
pub mod polynomial;
pub mod quadrature;
pub mod sphere;
pub mod verify;

pub use error::{Error, Result};
pub use sphere::{PointS1, PointS2, PointS3, WeightedDesign};
