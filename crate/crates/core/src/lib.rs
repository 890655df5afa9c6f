//! 2-D level set shape optimization with topology and feature-size preservation.
//!
//! A shape `D` is represented implicitly as `{x : phi(x) > 0}` for a scalar
//! field `phi` kept close to the signed distance to the boundary `∂D`. Cost
//! functionals over `∂D` or `D` are minimized by steepest descent on the
//! boundary, while a logarithmic barrier over two probe sets (points offset by
//! `d` inward and `l` outward from every boundary point) penalizes any motion
//! that would merge components, pinch holes, or shrink features below the
//! probe distances. The barrier diverges before a forbidden change can occur,
//! so the topology present in the initial shape survives the whole run.
//!
//! Module map:
//! - [`grid`]: uniform square-grid scalar fields, interpolation, stencils.
//! - [`contour`]: zero-set extraction on a triangulated grid, line integrals.
//! - [`redistance`]: narrow-band reinitialization to a signed distance field.
//! - [`barrier`]: probe evaluation, barrier value `H` and its gradients.
//! - [`functionals`]: perimeter / domain-integral costs, area constraint.
//! - [`optimizer`]: the descent loop with the step bound and feasibility
//!   backtracking.
//! - [`topology`]: independent component/gap/thickness oracles for
//!   verification; never consulted by the optimizer dynamics.
//! - [`shapes`]: initial shape construction and named presets.

pub mod barrier;
pub mod contour;
pub mod error;
pub mod functionals;
pub mod grid;
pub mod optimizer;
pub mod redistance;
pub mod shapes;
pub mod topology;
pub mod vec2;

pub use error::{Error, Result};
pub use vec2::Vec2;
