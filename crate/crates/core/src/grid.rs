//! Uniform square-grid scalar fields: storage, bilinear interpolation,
//! central-difference gradients, the 5-point Laplacian, and the 5-point
//! averaging stencil.
//!
//! Node `(i, j)` sits at `origin + (i*h, j*h)` and is stored at flat index
//! `j*nx + i` (row-major). This layout is part of the text file format and
//! must not change.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::vec2::Vec2;

/// Geometry of a uniform square grid of nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    /// Node spacing, identical along both axes.
    pub h: f64,
    /// World coordinates of node (0, 0).
    pub origin: (f64, f64),
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize, h: f64, origin: (f64, f64)) -> Result<Self> {
        if nx < 3 || ny < 3 {
            return Err(Error::InvalidGrid(format!(
                "need at least 3 nodes per axis, got {nx} x {ny}"
            )));
        }
        if !(h > 0.0) || !h.is_finite() {
            return Err(Error::InvalidGrid(format!("spacing h = {h} must be positive")));
        }
        if !origin.0.is_finite() || !origin.1.is_finite() {
            return Err(Error::InvalidGrid("origin must be finite".into()));
        }
        Ok(Self { nx, ny, h, origin })
    }

    /// Grid covering `[x0, x1] x [y0, y1]` with spacing `h` (extents are
    /// rounded outward to a whole number of cells).
    pub fn covering(x0: f64, y0: f64, x1: f64, y1: f64, h: f64) -> Result<Self> {
        let nx = ((x1 - x0) / h).round() as usize + 1;
        let ny = ((y1 - y0) / h).round() as usize + 1;
        Self::new(nx, ny, h, (x0, y0))
    }

    pub fn node_count(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < self.nx && j < self.ny);
        j * self.nx + i
    }

    #[inline]
    pub fn node_pos(&self, i: usize, j: usize) -> Vec2 {
        Vec2::new(
            self.origin.0 + i as f64 * self.h,
            self.origin.1 + j as f64 * self.h,
        )
    }

    /// World-coordinate corners `(min, max)` of the covered rectangle.
    pub fn extent(&self) -> (Vec2, Vec2) {
        let min = Vec2::new(self.origin.0, self.origin.1);
        let max = Vec2::new(
            self.origin.0 + (self.nx - 1) as f64 * self.h,
            self.origin.1 + (self.ny - 1) as f64 * self.h,
        );
        (min, max)
    }

    pub fn contains(&self, p: Vec2) -> bool {
        let (min, max) = self.extent();
        p.x >= min.x && p.x <= max.x && p.y >= min.y && p.y <= max.y
    }
}

/// Nodal scalar data over a [`GridSpec`]; all values finite.
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    spec: GridSpec,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn new(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.node_count() {
            return Err(Error::InvalidField(format!(
                "expected {} values, got {}",
                spec.node_count(),
                values.len()
            )));
        }
        if let Some(v) = values.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidField(format!("non-finite value {v}")));
        }
        Ok(Self { spec, values })
    }

    pub fn constant(spec: GridSpec, c: f64) -> Self {
        Self {
            spec,
            values: vec![c; spec.node_count()],
        }
    }

    /// Evaluate `f(x, y)` at every node.
    pub fn from_fn(spec: GridSpec, f: impl Fn(f64, f64) -> f64) -> Self {
        let mut values = Vec::with_capacity(spec.node_count());
        for j in 0..spec.ny {
            for i in 0..spec.nx {
                let p = spec.node_pos(i, j);
                values.push(f(p.x, p.y));
            }
        }
        Self { spec, values }
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.spec.idx(i, j)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let idx = self.spec.idx(i, j);
        self.values[idx] = v;
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `self + alpha * other` (same grid).
    pub fn add_scaled(&self, alpha: f64, other: &ScalarField) -> ScalarField {
        assert_eq!(self.spec, other.spec, "field grids differ");
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + alpha * b)
            .collect();
        ScalarField {
            spec: self.spec,
            values,
        }
    }

    /// `self + c` at every node.
    pub fn shifted(&self, c: f64) -> ScalarField {
        ScalarField {
            spec: self.spec,
            values: self.values.iter().map(|v| v + c).collect(),
        }
    }

    /// Bilinear interpolation of nodal values at `p`; exact for fields that
    /// are affine in `(x, y)`.
    pub fn sample(&self, p: Vec2) -> Result<f64> {
        if !self.spec.contains(p) {
            return Err(Error::OutOfBounds {
                x: p.x,
                y: p.y,
                context: "sample point outside grid extent",
            });
        }
        let (i, j, tx, ty) = self.cell_of(p);
        let f00 = self.at(i, j);
        let f10 = self.at(i + 1, j);
        let f01 = self.at(i, j + 1);
        let f11 = self.at(i + 1, j + 1);
        Ok(f00 * (1.0 - tx) * (1.0 - ty)
            + f10 * tx * (1.0 - ty)
            + f01 * (1.0 - tx) * ty
            + f11 * tx * ty)
    }

    /// Central-difference nodal gradients bilinearly interpolated to `p`.
    /// `p` must be at least one cell away from the grid border.
    pub fn gradient_at(&self, p: Vec2) -> Result<Vec2> {
        let (min, max) = self.spec.extent();
        let h = self.spec.h;
        if p.x < min.x + h || p.x > max.x - h || p.y < min.y + h || p.y > max.y - h {
            return Err(Error::OutOfBounds {
                x: p.x,
                y: p.y,
                context: "gradient needs one cell of margin from the border",
            });
        }
        Ok(self.gradient_interp(p))
    }

    /// Gradient with `p` clamped into the valid interior margin first. Used
    /// for contour vertices that may sit on or next to the border.
    pub(crate) fn gradient_at_clamped(&self, p: Vec2) -> Vec2 {
        let (min, max) = self.spec.extent();
        let h = self.spec.h;
        let q = Vec2::new(
            p.x.clamp(min.x + h, max.x - h),
            p.y.clamp(min.y + h, max.y - h),
        );
        self.gradient_interp(q)
    }

    fn gradient_interp(&self, p: Vec2) -> Vec2 {
        let (i, j, tx, ty) = self.cell_of(p);
        let g00 = self.node_gradient(i, j);
        let g10 = self.node_gradient(i + 1, j);
        let g01 = self.node_gradient(i, j + 1);
        let g11 = self.node_gradient(i + 1, j + 1);
        g00 * ((1.0 - tx) * (1.0 - ty))
            + g10 * (tx * (1.0 - ty))
            + g01 * ((1.0 - tx) * ty)
            + g11 * (tx * ty)
    }

    /// Central differences at interior nodes, one-sided on the border.
    pub fn node_gradient(&self, i: usize, j: usize) -> Vec2 {
        let h = self.spec.h;
        let nx = self.spec.nx;
        let ny = self.spec.ny;
        let gx = if i == 0 {
            (self.at(1, j) - self.at(0, j)) / h
        } else if i == nx - 1 {
            (self.at(nx - 1, j) - self.at(nx - 2, j)) / h
        } else {
            (self.at(i + 1, j) - self.at(i - 1, j)) / (2.0 * h)
        };
        let gy = if j == 0 {
            (self.at(i, 1) - self.at(i, 0)) / h
        } else if j == ny - 1 {
            (self.at(i, ny - 1) - self.at(i, ny - 2)) / h
        } else {
            (self.at(i, j + 1) - self.at(i, j - 1)) / (2.0 * h)
        };
        Vec2::new(gx, gy)
    }

    /// 5-point Laplacian at interior nodes; border nodes copy the nearest
    /// interior value.
    pub fn laplacian(&self) -> ScalarField {
        let spec = self.spec;
        let h2 = spec.h * spec.h;
        let mut out = vec![0.0; spec.node_count()];
        for j in 1..spec.ny - 1 {
            for i in 1..spec.nx - 1 {
                out[spec.idx(i, j)] = (self.at(i - 1, j)
                    + self.at(i + 1, j)
                    + self.at(i, j - 1)
                    + self.at(i, j + 1)
                    - 4.0 * self.at(i, j))
                    / h2;
            }
        }
        for j in 0..spec.ny {
            for i in 0..spec.nx {
                let ic = i.clamp(1, spec.nx - 2);
                let jc = j.clamp(1, spec.ny - 2);
                if ic != i || jc != j {
                    out[spec.idx(i, j)] = out[spec.idx(ic, jc)];
                }
            }
        }
        ScalarField { spec, values: out }
    }

    /// 5-point average applied `passes` times; border nodes average only
    /// their in-grid neighbors with a matching divisor.
    pub fn smooth(&self, passes: usize) -> ScalarField {
        let spec = self.spec;
        let mut cur = self.values.clone();
        let mut next = vec![0.0; cur.len()];
        for _ in 0..passes {
            for j in 0..spec.ny {
                for i in 0..spec.nx {
                    let mut sum = cur[spec.idx(i, j)];
                    let mut count = 1.0;
                    if i > 0 {
                        sum += cur[spec.idx(i - 1, j)];
                        count += 1.0;
                    }
                    if i + 1 < spec.nx {
                        sum += cur[spec.idx(i + 1, j)];
                        count += 1.0;
                    }
                    if j > 0 {
                        sum += cur[spec.idx(i, j - 1)];
                        count += 1.0;
                    }
                    if j + 1 < spec.ny {
                        sum += cur[spec.idx(i, j + 1)];
                        count += 1.0;
                    }
                    next[spec.idx(i, j)] = sum / count;
                }
            }
            std::mem::swap(&mut cur, &mut next);
        }
        ScalarField { spec, values: cur }
    }

    /// Text format: header `nx ny h x0 y0`, then `nx*ny` values in row-major
    /// node order. Floats are written in shortest round-trip form.
    pub fn write_text<W: Write>(&self, w: &mut W) -> Result<()> {
        let s = &self.spec;
        writeln!(w, "{} {} {} {} {}", s.nx, s.ny, s.h, s.origin.0, s.origin.1)?;
        for j in 0..s.ny {
            let row: Vec<String> = (0..s.nx).map(|i| self.at(i, j).to_string()).collect();
            writeln!(w, "{}", row.join(" "))?;
        }
        Ok(())
    }

    pub fn read_text<R: BufRead>(r: &mut R) -> Result<Self> {
        let mut header = String::new();
        r.read_line(&mut header)?;
        let parts: Vec<&str> = header.split_whitespace().collect();
        if parts.len() != 5 {
            return Err(Error::Parse(format!(
                "field header needs `nx ny h x0 y0`, got {} tokens",
                parts.len()
            )));
        }
        let nx: usize = parse_tok(parts[0], "nx")?;
        let ny: usize = parse_tok(parts[1], "ny")?;
        let h: f64 = parse_tok(parts[2], "h")?;
        let x0: f64 = parse_tok(parts[3], "x0")?;
        let y0: f64 = parse_tok(parts[4], "y0")?;
        let spec = GridSpec::new(nx, ny, h, (x0, y0))?;
        let mut values = Vec::with_capacity(spec.node_count());
        let mut line = String::new();
        while values.len() < spec.node_count() {
            line.clear();
            if r.read_line(&mut line)? == 0 {
                return Err(Error::Parse(format!(
                    "expected {} values, file ended after {}",
                    spec.node_count(),
                    values.len()
                )));
            }
            for tok in line.split_whitespace() {
                values.push(parse_tok(tok, "field value")?);
            }
        }
        ScalarField::new(spec, values)
    }
}

fn parse_tok<T: std::str::FromStr>(tok: &str, what: &str) -> Result<T> {
    tok.parse()
        .map_err(|_| Error::Parse(format!("bad {what}: `{tok}`")))
}

impl ScalarField {
    /// Cell index and in-cell coordinates for `p`; `p` must be inside the
    /// extent (clamped to the last cell on the upper edges).
    #[inline]
    fn cell_of(&self, p: Vec2) -> (usize, usize, f64, f64) {
        let s = &self.spec;
        let fx = (p.x - s.origin.0) / s.h;
        let fy = (p.y - s.origin.1) / s.h;
        let i = (fx.floor() as isize).clamp(0, s.nx as isize - 2) as usize;
        let j = (fy.floor() as isize).clamp(0, s.ny as isize - 2) as usize;
        (i, j, fx - i as f64, fy - j as f64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(n: usize, h: f64, org: f64) -> GridSpec {
        GridSpec::new(n, n, h, (org, org)).unwrap()
    }

    #[test]
    fn sample_is_exact_on_affine_fields() {
        let f = ScalarField::from_fn(grid(11, 0.1, 0.0), |x, y| 3.0 * x - 2.0 * y);
        let v = f.sample(Vec2::new(0.37, 0.61)).unwrap();
        assert!((v - (-0.11)).abs() < 1e-12, "got {v}");
    }

    #[test]
    fn sample_constant_and_node_identity() {
        let spec = grid(7, 0.5, -1.0);
        let c = ScalarField::constant(spec, 4.25);
        assert_eq!(c.sample(Vec2::new(0.13, 0.77)).unwrap(), 4.25);

        let f = ScalarField::from_fn(spec, |x, y| x * y);
        let p = spec.node_pos(3, 4);
        assert_eq!(f.sample(p).unwrap(), f.at(3, 4));
    }

    #[test]
    fn sample_rejects_outside_points() {
        let f = ScalarField::constant(grid(5, 0.25, 0.0), 0.0);
        assert!(matches!(
            f.sample(Vec2::new(1.01, 0.5)),
            Err(Error::OutOfBounds { .. })
        ));
    }

    #[test]
    fn gradient_exact_on_affine_and_zero_on_constant() {
        let f = ScalarField::from_fn(grid(21, 0.1, -1.0), |x, y| 3.0 * x - 2.0 * y);
        let g = f.gradient_at(Vec2::new(-0.33, 0.47)).unwrap();
        assert!((g.x - 3.0).abs() < 1e-12 && (g.y + 2.0).abs() < 1e-12);

        let c = ScalarField::constant(grid(21, 0.1, -1.0), 7.0);
        let g = c.gradient_at(Vec2::new(0.0, 0.0)).unwrap();
        assert_eq!((g.x, g.y), (0.0, 0.0));
    }

    #[test]
    fn gradient_matches_radial_field() {
        // phi = R - sqrt(x^2 + y^2), gradient at (1, 0) is (-1, 0).
        let spec = GridSpec::covering(-3.0, -3.0, 3.0, 3.0, 0.05).unwrap();
        let f = ScalarField::from_fn(spec, |x, y| 2.0 - x.hypot(y));
        let g = f.gradient_at(Vec2::new(1.0, 0.0)).unwrap();
        assert!((g.x + 1.0).abs() < 2e-3, "gx = {}", g.x);
        assert!(g.y.abs() < 2e-3, "gy = {}", g.y);
    }

    #[test]
    fn gradient_needs_margin() {
        let f = ScalarField::constant(grid(5, 0.25, 0.0), 0.0);
        assert!(f.gradient_at(Vec2::new(0.1, 0.5)).is_err());
        assert!(f.gradient_at(Vec2::new(0.25, 0.5)).is_ok());
    }

    #[test]
    fn laplacian_of_quadratic_is_four() {
        let f = ScalarField::from_fn(grid(9, 0.5, -2.0), |x, y| x * x + y * y);
        let lap = f.laplacian();
        for j in 1..8 {
            for i in 1..8 {
                assert!((lap.at(i, j) - 4.0).abs() < 1e-10);
            }
        }
        // Border copies nearest interior value.
        assert_eq!(lap.at(0, 3), lap.at(1, 3));
        assert_eq!(lap.at(0, 0), lap.at(1, 1));
    }

    #[test]
    fn laplacian_of_affine_is_zero() {
        let f = ScalarField::from_fn(grid(9, 0.5, -2.0), |x, y| 1.5 * x - 0.5 * y + 2.0);
        let lap = f.laplacian();
        assert!(lap.max_abs() < 1e-12);
    }

    #[test]
    fn laplacian_of_circle_sdf_matches_curvature() {
        // Laplacian of (R - r) is -1/r; check at radius 1, far from both the
        // center kink and the boundary.
        let spec = GridSpec::covering(-3.0, -3.0, 3.0, 3.0, 0.05).unwrap();
        let f = ScalarField::from_fn(spec, |x, y| 2.0 - x.hypot(y));
        let lap = f.laplacian();
        let v = lap.sample(Vec2::new(1.0, 0.0)).unwrap();
        assert!((v + 1.0).abs() < 5e-2, "lap = {v}");
        let v = lap.sample(Vec2::new(0.6, 0.8)).unwrap();
        assert!((v + 1.0).abs() < 5e-2, "lap = {v}");
    }

    #[test]
    fn smooth_impulse_spreads_fifth() {
        let spec = grid(9, 1.0, 0.0);
        let mut f = ScalarField::constant(spec, 0.0);
        f.set(4, 4, 1.0);
        let s = f.smooth(1);
        assert_eq!(s.at(4, 4), 0.2);
        assert_eq!(s.at(3, 4), 0.2);
        assert_eq!(s.at(4, 5), 0.2);
        assert_eq!(s.at(3, 3), 0.0);
    }

    #[test]
    fn smooth_fixes_constants_and_interior_affine() {
        let spec = grid(9, 0.5, 0.0);
        let c = ScalarField::constant(spec, 3.0);
        assert_eq!(c.smooth(4).values(), c.values());

        let f = ScalarField::from_fn(spec, |x, y| 2.0 * x + y - 1.0);
        let s = f.smooth(1);
        for j in 1..8 {
            for i in 1..8 {
                assert!((s.at(i, j) - f.at(i, j)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn text_round_trip_is_exact() {
        let spec = grid(5, 0.05, -1.25);
        let f = ScalarField::from_fn(spec, |x, y| (x * 17.3).sin() + y / 3.0);
        let mut buf = Vec::new();
        f.write_text(&mut buf).unwrap();
        let g = ScalarField::read_text(&mut buf.as_slice()).unwrap();
        assert_eq!(f, g);
    }

    proptest! {
        #[test]
        fn smooth_is_linear(a in -3.0f64..3.0, b in -3.0f64..3.0, seed in 0u64..1000) {
            let spec = grid(8, 0.5, 0.0);
            let f = ScalarField::from_fn(spec, |x, y| ((x * 12.9898 + y * 78.233) * (seed as f64 + 1.0)).sin());
            let g = ScalarField::from_fn(spec, |x, y| ((x * 3.7 - y * 9.1) * (seed as f64 + 2.0)).cos());
            let combo = ScalarField::new(
                spec,
                f.values().iter().zip(g.values()).map(|(u, v)| a * u + b * v).collect(),
            ).unwrap();
            let lhs = combo.smooth(1);
            let sf = f.smooth(1);
            let sg = g.smooth(1);
            for k in 0..spec.node_count() {
                let rhs = a * sf.values()[k] + b * sg.values()[k];
                prop_assert!((lhs.values()[k] - rhs).abs() < 1e-12);
            }
        }

        #[test]
        fn smooth_never_increases_max_abs(seed in 0u64..1000) {
            let spec = grid(8, 0.5, 0.0);
            let f = ScalarField::from_fn(spec, |x, y| ((x * 5.1 + y * 2.3) * (seed as f64 + 1.0)).sin());
            prop_assert!(f.smooth(3).max_abs() <= f.max_abs() + 1e-15);
        }
    }
}
