//! The model-space contract and the quantities derived from it.
//!
//! A [`Model`] is a proper CAT(−1) space together with its ideal boundary,
//! its geodesic lines and a group of isometries. Everything in
//! [`product`](crate::product), [`geodesic`](crate::geodesic) and
//! [`group`](crate::group) is written against this trait only.
//!
//! Mixing points of different models is a type error: each model has its own
//! associated point, ideal-point and isometry types.

use alloc::vec::Vec;
use core::fmt::Debug;

use crate::{Extended, Result, Scalar};

/// A proper CAT(−1) model space with a distinguished base point `o`.
pub trait Model: Clone + Debug + Send + Sync {
    type Scalar: Scalar;
    type Point: Clone + Debug + Send + Sync;
    type Ideal: Clone + Debug + Send + Sync;
    type Isometry: Clone + Debug + Send + Sync;
    /// A geodesic line with a canonical unit-speed parametrization whose
    /// time 0 is the point of the line nearest to `o`.
    type Line: Clone + Debug + Send + Sync;

    /// Short model name used in error messages and reports.
    const NAME: &'static str;

    /// The base point `o`.
    fn origin(&self) -> Self::Point;

    fn distance(&self, x: &Self::Point, y: &Self::Point) -> Self::Scalar;

    /// Equality of points: exact for exact models, within tolerance otherwise.
    fn points_eq(&self, x: &Self::Point, y: &Self::Point) -> bool;

    /// Equality of ideal points: their visual distance is zero (within the
    /// model's angular tolerance for floating-point models).
    fn ideals_eq(&self, a: &Self::Ideal, b: &Self::Ideal) -> bool;

    /// Equality of real values at the model's algebraic tolerance.
    fn scalars_eq(&self, a: &Self::Scalar, b: &Self::Scalar) -> bool;

    /// Tolerance for quantities obtained as limits; zero for exact models.
    fn limit_tol(&self) -> f64 {
        0.0
    }

    /// The Busemann function `β^p_ξ(x)`, normalized so that `β^p_ξ(p) = 0`.
    fn busemann(&self, normalizer: &Self::Point, xi: &Self::Ideal, x: &Self::Point) -> Self::Scalar;

    /// Gromov product of two ideal points seen from `base`; infinite exactly
    /// when the two ideal points coincide.
    fn gromov_product_ideal(&self, xi: &Self::Ideal, eta: &Self::Ideal, base: &Self::Point) -> Extended<Self::Scalar>;

    /// The point at distance `t` from `x` on the segment towards `y`.
    /// `t` is clamped to `[0, d(x, y)]`.
    fn segment_point(&self, x: &Self::Point, y: &Self::Point, t: &Self::Scalar) -> Self::Point;

    /// The point at distance `t >= 0` from `origin` on the ray towards `xi`.
    fn ray_point(&self, origin: &Self::Point, xi: &Self::Ideal, t: &Self::Scalar) -> Result<Self::Point>;

    /// The unique line from `minus` (at time −∞) to `plus` (at time +∞).
    fn geodesic_line(&self, plus: &Self::Ideal, minus: &Self::Ideal) -> Result<Self::Line>;

    /// Canonical parametrization of a line.
    fn line_point(&self, line: &Self::Line, t: &Self::Scalar) -> Result<Self::Point>;

    /// `(line(+∞), line(−∞))`.
    fn line_ends(&self, line: &Self::Line) -> (Self::Ideal, Self::Ideal);

    /// A metric on the ideal boundary inducing its topology.
    fn visual_distance(&self, a: &Self::Ideal, b: &Self::Ideal) -> f64;

    /// How far a point is from converging to `xi`, measured in the same
    /// visual units as [`Model::visual_distance`].
    fn visual_gap(&self, x: &Self::Point, xi: &Self::Ideal) -> f64;

    /// Endpoint of the ray from `o` through `x`, used as the boundary estimate
    /// of a far-away point.
    fn radial_endpoint(&self, x: &Self::Point) -> Self::Ideal;

    /// A deterministic spread of `count` points within `radius` of `o`.
    fn standard_points(&self, radius: &Self::Scalar, count: usize) -> Vec<Self::Point>;

    fn identity(&self) -> Self::Isometry;

    /// `g ∘ h`.
    fn compose(&self, g: &Self::Isometry, h: &Self::Isometry) -> Self::Isometry;

    fn inverse(&self, g: &Self::Isometry) -> Self::Isometry;

    fn isometries_eq(&self, g: &Self::Isometry, h: &Self::Isometry) -> bool;

    fn apply(&self, g: &Self::Isometry, x: &Self::Point) -> Result<Self::Point>;

    /// Continuous extension of `g` to the ideal boundary.
    fn apply_ideal(&self, g: &Self::Isometry, xi: &Self::Ideal) -> Self::Ideal;

    /// `(attracting, repelling)` fixed points of a hyperbolic isometry, or
    /// `None` when `g` has no such pair.
    fn fixed_points(&self, g: &Self::Isometry) -> Option<(Self::Ideal, Self::Ideal)>;

    /// The point at distance `t` along the ray from `origin` to `xi`, in
    /// whichever form keeps the most precision.
    fn ray_located(&self, origin: &Self::Point, xi: &Self::Ideal, t: &Self::Scalar) -> Result<Located<Self>> {
        Ok(Located::At(self.ray_point(origin, xi, t)?))
    }

    /// [`Model::line_point`] in whichever form keeps the most precision.
    fn line_located(&self, line: &Self::Line, t: &Self::Scalar) -> Result<Located<Self>> {
        Ok(Located::At(self.line_point(line, t)?))
    }

    /// `d(g·x, z)`. Models whose coordinates lose precision far from `o`
    /// override this with a formula that never materializes `g·x`.
    fn distance_after(&self, g: &Self::Isometry, x: &Self::Point, z: &Self::Point) -> Result<Self::Scalar> {
        Ok(self.distance(&self.apply(g, x)?, z))
    }

    /// [`Model::radial_endpoint`] of `g·x`, with the same precision caveat as
    /// [`Model::distance_after`].
    fn radial_endpoint_after(&self, g: &Self::Isometry, x: &Self::Point) -> Result<Self::Ideal> {
        Ok(self.radial_endpoint(&self.apply(g, x)?))
    }

    /// Midpoint of two located points, with the same precision caveat as
    /// [`Model::distance_after`].
    fn located_midpoint(&self, x: &Located<Self>, y: &Located<Self>) -> Result<Self::Point> {
        Ok(midpoint(self, &x.resolve(self)?, &y.resolve(self)?))
    }
}

/// A point given either directly or as the image of a point under an
/// isometry. Orbit sequences and far ray points use the second form.
#[derive(Debug, Clone)]
pub enum Located<M: Model> {
    At(M::Point),
    Image(M::Isometry, M::Point),
}

impl<M: Model> Located<M> {
    pub fn distance_to(&self, model: &M, z: &M::Point) -> Result<M::Scalar> {
        match self {
            Located::At(x) => Ok(model.distance(x, z)),
            Located::Image(g, x) => model.distance_after(g, x, z),
        }
    }

    pub fn radial_endpoint(&self, model: &M) -> Result<M::Ideal> {
        match self {
            Located::At(x) => Ok(model.radial_endpoint(x)),
            Located::Image(g, x) => model.radial_endpoint_after(g, x),
        }
    }

    pub fn resolve(&self, model: &M) -> Result<M::Point> {
        match self {
            Located::At(x) => Ok(x.clone()),
            Located::Image(g, x) => model.apply(g, x),
        }
    }
}

/// `(x|y)_base = ½ (d(base, x) + d(base, y) − d(x, y))`.
pub fn gromov_product<M: Model>(model: &M, x: &M::Point, y: &M::Point, base: &M::Point) -> M::Scalar {
    (model.distance(base, x) + model.distance(base, y) - model.distance(x, y)).half()
}

/// Unit-speed geodesic segment with a closed-form evaluator.
#[derive(Debug, Clone)]
pub struct Segment<M: Model> {
    start: M::Point,
    end: M::Point,
    length: M::Scalar,
}

impl<M: Model> Segment<M> {
    pub fn new(model: &M, start: M::Point, end: M::Point) -> Self {
        let length = model.distance(&start, &end);
        Segment { start, end, length }
    }

    pub fn start(&self) -> &M::Point {
        &self.start
    }

    pub fn end(&self) -> &M::Point {
        &self.end
    }

    pub fn length(&self) -> &M::Scalar {
        &self.length
    }

    /// Point at parameter `t ∈ [0, length]`.
    pub fn eval(&self, model: &M, t: &M::Scalar) -> Result<M::Point> {
        if *t < M::Scalar::zero() || *t > self.length {
            return Err(crate::Error::ParameterOutOfRange);
        }
        Ok(model.segment_point(&self.start, &self.end, t))
    }
}

/// Unit-speed geodesic ray from a point to an ideal point.
#[derive(Debug, Clone)]
pub struct Ray<M: Model> {
    pub origin: M::Point,
    pub target: M::Ideal,
}

impl<M: Model> Ray<M> {
    pub fn new(origin: M::Point, target: M::Ideal) -> Self {
        Ray { origin, target }
    }

    pub fn eval(&self, model: &M, t: &M::Scalar) -> Result<M::Point> {
        if *t < M::Scalar::zero() {
            return Err(crate::Error::ParameterOutOfRange);
        }
        model.ray_point(&self.origin, &self.target, t)
    }
}

pub fn segment<M: Model>(model: &M, x: &M::Point, y: &M::Point) -> Segment<M> {
    Segment::new(model, x.clone(), y.clone())
}

pub fn ray<M: Model>(origin: &M::Point, xi: &M::Ideal) -> Ray<M> {
    Ray::new(origin.clone(), xi.clone())
}

/// Midpoint of the segment from `x` to `y`.
pub fn midpoint<M: Model>(model: &M, x: &M::Point, y: &M::Point) -> M::Point {
    let half = model.distance(x, y).half();
    model.segment_point(x, y, &half)
}
