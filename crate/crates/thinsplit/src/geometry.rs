//! Rectangular observation windows with toroidal geometry.
//!
//! The window `[0, width) x [0, height)` is identified with a torus by
//! wrapping opposite edges. On the torus no edge correction is needed for
//! the distance-based statistics: the disc of radius `d` around any point
//! has area exactly `pi d^2` as long as `d` stays at or below half the
//! shorter window side, which is why distance grids are capped there.

use rand::Rng;

use crate::error::{Error, Result};
use crate::numeric::linspace;

/// A planar location. Patterns own points inside their window's half-open
/// coordinate ranges.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Rectangular sampling window with positive, finite sides.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RectWindow {
    width: f64,
    height: f64,
}

impl RectWindow {
    pub fn new(width: f64, height: f64) -> Result<Self> {
        if !(width.is_finite() && height.is_finite() && width > 0.0 && height > 0.0) {
            return Err(Error::InvalidWindow(format!(
                "sides must be positive and finite, got {width} x {height}"
            )));
        }
        Ok(Self { width, height })
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn area(&self) -> f64 {
        self.width * self.height
    }

    /// Half the shorter side; the largest usable statistic distance.
    pub fn half_min_side(&self) -> f64 {
        0.5 * self.width.min(self.height)
    }

    /// Whether `p` lies in `[0, width) x [0, height)`.
    pub fn contains(&self, p: Point) -> bool {
        p.x.is_finite()
            && p.y.is_finite()
            && (0.0..self.width).contains(&p.x)
            && (0.0..self.height).contains(&p.y)
    }

    /// Reduce arbitrary finite coordinates into the window by wrapping.
    /// Points exactly on the far edges land on the identified near edges.
    pub fn wrap_point(&self, p: Point) -> Point {
        Point::new(wrap_coord(p.x, self.width), wrap_coord(p.y, self.height))
    }

    fn check_inside(&self, p: Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::PointOutsideWindow {
                x: p.x,
                y: p.y,
                width: self.width,
                height: self.height,
            })
        }
    }

    /// Squared toroidal distance; callers guarantee both points are inside.
    #[inline]
    pub(crate) fn torus_dist_sq(&self, a: Point, b: Point) -> f64 {
        let mut dx = (a.x - b.x).abs();
        if dx > self.width - dx {
            dx = self.width - dx;
        }
        let mut dy = (a.y - b.y).abs();
        if dy > self.height - dy {
            dy = self.height - dy;
        }
        dx * dx + dy * dy
    }
}

#[inline]
fn wrap_coord(v: f64, period: f64) -> f64 {
    let w = v.rem_euclid(period);
    // rem_euclid can return `period` itself when v is a tiny negative number.
    if w >= period {
        w - period
    } else {
        w
    }
}

/// Shortest distance between `a` and `b` on the torus obtained from `w`:
/// the minimum over the nine wrapped translates of `b` of the Euclidean
/// distance to `a`. Never exceeds the plain Euclidean distance.
pub fn torus_distance(a: Point, b: Point, w: &RectWindow) -> Result<f64> {
    w.check_inside(a)?;
    w.check_inside(b)?;
    Ok(w.torus_dist_sq(a, b).sqrt())
}

/// Translate `p` by `shift` and wrap the result back into the window.
/// Negative and oversized shifts are reduced modulo the window sides.
pub fn wrap_translate(p: Point, shift: (f64, f64), w: &RectWindow) -> Result<Point> {
    w.check_inside(p)?;
    Ok(w.wrap_point(Point::new(p.x + shift.0, p.y + shift.1)))
}

/// `n` i.i.d. uniform points in the window.
pub fn uniform_points<R: Rng + ?Sized>(n: usize, w: &RectWindow, rng: &mut R) -> Vec<Point> {
    (0..n)
        .map(|_| {
            let x = rng.random_range(0.0..w.width());
            let y = rng.random_range(0.0..w.height());
            Point::new(x, y)
        })
        .collect()
}

/// Ordered distances at which the test functions are evaluated.
///
/// Strictly increasing, all positive, all at most half the shorter window
/// side so toroidal discs never self-overlap.
#[derive(Debug, Clone, PartialEq)]
pub struct DistanceGrid {
    distances: Vec<f64>,
}

impl DistanceGrid {
    pub fn new(distances: Vec<f64>, w: &RectWindow) -> Result<Self> {
        if distances.is_empty() {
            return Err(Error::InvalidGrid("grid is empty".into()));
        }
        let cap = w.half_min_side();
        for (i, &d) in distances.iter().enumerate() {
            if !d.is_finite() || d <= 0.0 {
                return Err(Error::InvalidGrid(format!(
                    "entry {i} is {d}; distances must be positive and finite"
                )));
            }
            if d > cap {
                return Err(Error::InvalidGrid(format!(
                    "entry {i} = {d} exceeds half the shorter window side ({cap})"
                )));
            }
            if i > 0 && distances[i - 1] >= d {
                return Err(Error::InvalidGrid(format!(
                    "entries must be strictly increasing (entry {i})"
                )));
            }
        }
        Ok(Self { distances })
    }

    /// Evenly spaced grid from `d_min` to `d_max` with `steps` points.
    pub fn linspace(d_min: f64, d_max: f64, steps: usize, w: &RectWindow) -> Result<Self> {
        if steps == 0 {
            return Err(Error::InvalidGrid("steps must be at least 1".into()));
        }
        if !(d_min.is_finite() && d_max.is_finite()) || d_min <= 0.0 || d_max < d_min {
            return Err(Error::InvalidGrid(format!(
                "need 0 < d_min <= d_max, got [{d_min}, {d_max}]"
            )));
        }
        if steps == 1 {
            return Self::new(vec![d_max], w);
        }
        Self::new(linspace(d_min, d_max, steps), w)
    }

    pub fn distances(&self) -> &[f64] {
        &self.distances
    }

    pub fn len(&self) -> usize {
        self.distances.len()
    }

    pub fn is_empty(&self) -> bool {
        self.distances.is_empty()
    }

    pub fn max(&self) -> f64 {
        *self.distances.last().expect("grid is never empty")
    }

    /// First `len` entries as a new grid. A prefix of a valid grid is valid.
    pub(crate) fn prefix(&self, len: usize) -> Self {
        debug_assert!(len >= 1 && len <= self.distances.len());
        Self {
            distances: self.distances[..len].to_vec(),
        }
    }
}
