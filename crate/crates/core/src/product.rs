//! The product `X × X` with the max metric and its horofunction boundary.
//!
//! Boundary points are stored by coordinates, normalized at `O = (o, o)`:
//!
//! - `Singular { factor, xi }` is the horofunction `z ↦ β^o_ξ(z_factor)`;
//! - `Regular { xi, xi_prime, c }` is the horofunction
//!   `z ↦ max{β^o_ξ(z), β^o_ξ′(z′) − c} − max{0, −c}`, the limit of any
//!   sequence `(x_n, y_n)` with `x_n → ξ`, `y_n → ξ′` and
//!   `d(x_n, o) − d(y_n, o) → c`.
//!
//! Sequences are structured descriptors whose limits follow from their
//! parameters; finite samples of them only serve the empirical checks.

use alloc::vec::Vec;

use crate::geodesic::ParamGeodesic;
use crate::space::{Located, Model, Ray};
use crate::{Error, Result, Scalar};

/// A point `(x, y)` of `X × X`.
#[derive(Debug, Clone)]
pub struct ProductPoint<M: Model> {
    pub first: M::Point,
    pub second: M::Point,
}

impl<M: Model> ProductPoint<M> {
    pub fn new(first: M::Point, second: M::Point) -> Self {
        ProductPoint { first, second }
    }

    /// `O = (o, o)`.
    pub fn origin(model: &M) -> Self {
        ProductPoint::new(model.origin(), model.origin())
    }

    /// `(x, x)`.
    pub fn diagonal(x: M::Point) -> Self {
        ProductPoint::new(x.clone(), x)
    }
}

/// Which factor of `X × X` a singular boundary point lives over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Factor {
    First,
    Second,
}

impl Factor {
    /// `1` or `2`.
    pub fn index(self) -> u8 {
        match self {
            Factor::First => 1,
            Factor::Second => 2,
        }
    }

    pub fn from_index(i: u8) -> Option<Factor> {
        match i {
            1 => Some(Factor::First),
            2 => Some(Factor::Second),
            _ => None,
        }
    }
}

/// A point of the horofunction boundary of `(X × X, d_max)`.
#[derive(Debug, Clone)]
pub enum MaxBoundaryPoint<M: Model> {
    Singular { factor: Factor, xi: M::Ideal },
    Regular { xi: M::Ideal, xi_prime: M::Ideal, c: M::Scalar },
}

impl<M: Model> MaxBoundaryPoint<M> {
    pub fn is_regular(&self) -> bool {
        matches!(self, MaxBoundaryPoint::Regular { .. })
    }

    /// Coordinate equality at the model's tolerances.
    pub fn approx_eq(&self, model: &M, other: &Self) -> bool {
        match (self, other) {
            (MaxBoundaryPoint::Singular { factor: f1, xi: x1 }, MaxBoundaryPoint::Singular { factor: f2, xi: x2 }) => {
                f1 == f2 && model.ideals_eq(x1, x2)
            }
            (
                MaxBoundaryPoint::Regular { xi: x1, xi_prime: y1, c: c1 },
                MaxBoundaryPoint::Regular { xi: x2, xi_prime: y2, c: c2 },
            ) => model.ideals_eq(x1, x2) && model.ideals_eq(y1, y2) && model.scalars_eq(c1, c2),
            _ => false,
        }
    }
}

/// `max{d(x, x′), d(y, y′)}`.
pub fn d_max<M: Model>(model: &M, p: &ProductPoint<M>, q: &ProductPoint<M>) -> M::Scalar {
    M::Scalar::max_of(model.distance(&p.first, &q.first), model.distance(&p.second, &q.second))
}

/// Value at `z` of the horofunction with coordinates `b`; zero at `O`.
pub fn horofunction_eval<M: Model>(model: &M, b: &MaxBoundaryPoint<M>, z: &ProductPoint<M>) -> M::Scalar {
    let o = model.origin();
    match b {
        MaxBoundaryPoint::Singular { factor: Factor::First, xi } => model.busemann(&o, xi, &z.first),
        MaxBoundaryPoint::Singular { factor: Factor::Second, xi } => model.busemann(&o, xi, &z.second),
        MaxBoundaryPoint::Regular { xi, xi_prime, c } => {
            let first = model.busemann(&o, xi, &z.first);
            let second = model.busemann(&o, xi_prime, &z.second) - c.clone();
            M::Scalar::max_of(first, second) - M::Scalar::max_of(M::Scalar::zero(), -c.clone())
        }
    }
}

/// The regular boundary point in the class of `z ↦ max{β^p_ξ(z), β^p′_ξ′(z′)}`.
pub fn renormalize<M: Model>(
    model: &M,
    xi: &M::Ideal,
    p: &M::Point,
    xi_prime: &M::Ideal,
    p_prime: &M::Point,
) -> MaxBoundaryPoint<M> {
    let o = model.origin();
    let c = model.busemann(&o, xi_prime, p_prime) - model.busemann(&o, xi, p);
    MaxBoundaryPoint::Regular { xi: xi.clone(), xi_prime: xi_prime.clone(), c }
}

/// Regular with distinct ideal coordinates.
pub fn in_omega<M: Model>(model: &M, b: &MaxBoundaryPoint<M>) -> bool {
    match b {
        MaxBoundaryPoint::Singular { .. } => false,
        MaxBoundaryPoint::Regular { xi, xi_prime, .. } => !model.ideals_eq(xi, xi_prime),
    }
}

pub fn phi_sing<M: Model>(b: &MaxBoundaryPoint<M>) -> Result<(Factor, M::Ideal)> {
    match b {
        MaxBoundaryPoint::Singular { factor, xi } => Ok((*factor, xi.clone())),
        MaxBoundaryPoint::Regular { .. } => Err(Error::WrongVariant { expected: "singular" }),
    }
}

pub fn phi_sing_inverse<M: Model>(factor: Factor, xi: M::Ideal) -> MaxBoundaryPoint<M> {
    MaxBoundaryPoint::Singular { factor, xi }
}

pub fn phi_reg<M: Model>(b: &MaxBoundaryPoint<M>) -> Result<(M::Ideal, M::Ideal, M::Scalar)> {
    match b {
        MaxBoundaryPoint::Regular { xi, xi_prime, c } => Ok((xi.clone(), xi_prime.clone(), c.clone())),
        MaxBoundaryPoint::Singular { .. } => Err(Error::WrongVariant { expected: "regular" }),
    }
}

pub fn phi_reg_inverse<M: Model>(xi: M::Ideal, xi_prime: M::Ideal, c: M::Scalar) -> MaxBoundaryPoint<M> {
    MaxBoundaryPoint::Regular { xi, xi_prime, c }
}

/// A divergent sequence of `X × X` given by a closed-form description.
#[derive(Debug, Clone)]
pub enum StructuredSequence<M: Model> {
    /// `(r₁(s₁ n), r₂(s₂ n))` for two rays and nonnegative speeds.
    RayPair { first: Ray<M>, first_speed: M::Scalar, second: Ray<M>, second_speed: M::Scalar },
    /// `(g(n), g(−n))`.
    GeodesicPair(ParamGeodesic<M>),
    /// `(γⁿ x, γⁿ y)`.
    Orbit { generator: M::Isometry, seed: ProductPoint<M> },
    /// `(anchor, r(n))`.
    BoundedFirst { anchor: M::Point, ray: Ray<M> },
}

impl<M: Model> StructuredSequence<M> {
    /// The `n`-th term.
    pub fn term(&self, model: &M, n: u32) -> Result<(Located<M>, Located<M>)> {
        let n_s = M::Scalar::from_i64(n as i64);
        match self {
            StructuredSequence::RayPair { first, first_speed, second, second_speed } => Ok((
                model.ray_located(&first.origin, &first.target, &(first_speed.clone() * n_s.clone()))?,
                model.ray_located(&second.origin, &second.target, &(second_speed.clone() * n_s))?,
            )),
            StructuredSequence::GeodesicPair(g) => Ok((g.located(model, &n_s)?, g.located(model, &(-n_s))?)),
            StructuredSequence::Orbit { generator, seed } => {
                let power = isometry_power(model, generator, n);
                Ok((Located::Image(power.clone(), seed.first.clone()), Located::Image(power, seed.second.clone())))
            }
            StructuredSequence::BoundedFirst { anchor, ray } => {
                Ok((Located::At(anchor.clone()), model.ray_located(&ray.origin, &ray.target, &n_s)?))
            }
        }
    }
}

/// `gⁿ` by repeated squaring.
pub fn isometry_power<M: Model>(model: &M, g: &M::Isometry, n: u32) -> M::Isometry {
    let mut result = model.identity();
    let mut base = g.clone();
    let mut k = n;
    while k > 0 {
        if k & 1 == 1 {
            result = model.compose(&result, &base);
        }
        base = model.compose(&base, &base);
        k >>= 1;
    }
    result
}

/// The three alternatives for a divergent sequence `(x_n, y_n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// One coordinate stays bounded.
    I,
    /// `d(x_n, o) − d(y_n, o)` converges.
    II,
    /// `d(x_n, o) − d(y_n, o)` diverges.
    III,
    /// The analytic prediction failed its empirical check.
    Undetermined,
}

/// Outcome of [`classify`]. `permuted` marks the alternatives in which the
/// roles of the two factors are swapped.
#[derive(Debug, Clone)]
pub struct Classification<M: Model> {
    pub case: Case,
    pub permuted: bool,
    pub limit: Option<MaxBoundaryPoint<M>>,
}

/// An orbit's analytic limit is confirmed at the first power of two whose
/// term lies this far from `O`, on a grid of this many points.
pub const ORBIT_CHECK_DISPLACEMENT: i64 = 30;
pub const ORBIT_CHECK_GRID: usize = 8;
const ORBIT_CHECK_MAX_INDEX: u32 = 1 << 12;

/// A deterministic set of `count` product points within `d_max`-distance
/// `radius` of `O`.
pub fn standard_grid<M: Model>(model: &M, radius: &M::Scalar, count: usize) -> Vec<ProductPoint<M>> {
    let mut side = 1;
    while side * side < count {
        side += 1;
    }
    let pts = model.standard_points(radius, side);
    let mut grid = Vec::with_capacity(count);
    'outer: for shift in 0..pts.len() {
        for i in 0..pts.len() {
            if grid.len() == count {
                break 'outer;
            }
            grid.push(ProductPoint::new(pts[i].clone(), pts[(i + shift) % pts.len()].clone()));
        }
    }
    grid
}

/// Case and limit of a structured sequence, read off its parameters.
pub fn classify<M: Model>(model: &M, seq: &StructuredSequence<M>) -> Result<Classification<M>> {
    let o = model.origin();
    let zero = M::Scalar::zero();
    let singular = |case, permuted, factor, xi: &M::Ideal| Classification {
        case,
        permuted,
        limit: Some(MaxBoundaryPoint::Singular { factor, xi: xi.clone() }),
    };
    match seq {
        StructuredSequence::GeodesicPair(g) => {
            Ok(Classification { case: Case::II, permuted: false, limit: Some(g.to_boundary(model)?) })
        }
        StructuredSequence::BoundedFirst { ray, .. } => Ok(singular(Case::I, false, Factor::Second, &ray.target)),
        StructuredSequence::RayPair { first, first_speed: s1, second, second_speed: s2 } => {
            if *s1 < zero || *s2 < zero {
                return Err(Error::ParameterOutOfRange);
            }
            match (s1.is_zero(), s2.is_zero()) {
                (true, true) => Err(Error::NotDivergent),
                (true, false) => Ok(singular(Case::I, false, Factor::Second, &second.target)),
                (false, true) => Ok(singular(Case::I, true, Factor::First, &first.target)),
                _ if s1 > s2 => Ok(singular(Case::III, false, Factor::First, &first.target)),
                _ if s1 < s2 => Ok(singular(Case::III, true, Factor::Second, &second.target)),
                _ => Ok(Classification {
                    case: Case::II,
                    permuted: false,
                    limit: Some(renormalize(model, &first.target, &first.origin, &second.target, &second.origin)),
                }),
            }
        }
        StructuredSequence::Orbit { generator, seed } => {
            if model.isometries_eq(generator, &model.identity()) {
                return Err(Error::NotDivergent);
            }
            let Some((attract, repel)) = model.fixed_points(generator) else {
                return Ok(Classification { case: Case::Undetermined, permuted: false, limit: None });
            };
            let c = model.busemann(&o, &repel, &seed.first) - model.busemann(&o, &repel, &seed.second);
            let limit = MaxBoundaryPoint::Regular { xi: attract.clone(), xi_prime: attract, c };
            let grid = standard_grid(model, &M::Scalar::from_i64(1), ORBIT_CHECK_GRID);
            let far = M::Scalar::from_i64(ORBIT_CHECK_DISPLACEMENT);
            let mut n = 1;
            while n < ORBIT_CHECK_MAX_INDEX && model.distance_after(&isometry_power(model, generator, n), &o, &o)? < far
            {
                n *= 2;
            }
            let err = empirical_limit_check(model, seq, &limit, &grid, n)?;
            let case = if err.to_f64() <= model.limit_tol() { Case::II } else { Case::Undetermined };
            Ok(Classification { case, permuted: false, limit: Some(limit) })
        }
    }
}

/// `sup_z |d_max(P_n, z) − d_max(P_n, O) − h_b(z)|` over `grid`, where
/// `P_n` is the `n`-th term of `seq`.
pub fn empirical_limit_check<M: Model>(
    model: &M,
    seq: &StructuredSequence<M>,
    b: &MaxBoundaryPoint<M>,
    grid: &[ProductPoint<M>],
    n: u32,
) -> Result<M::Scalar> {
    let (x, y) = seq.term(model, n)?;
    located_limit_error(model, &x, &y, b, grid)
}

/// [`empirical_limit_check`] for an explicit term `(x, y)`.
pub fn located_limit_error<M: Model>(
    model: &M,
    x: &Located<M>,
    y: &Located<M>,
    b: &MaxBoundaryPoint<M>,
    grid: &[ProductPoint<M>],
) -> Result<M::Scalar> {
    let o = model.origin();
    let base = M::Scalar::max_of(x.distance_to(model, &o)?, y.distance_to(model, &o)?);
    let mut sup = M::Scalar::zero();
    for z in grid {
        let d = M::Scalar::max_of(x.distance_to(model, &z.first)?, y.distance_to(model, &z.second)?);
        let err = (d - base.clone() - horofunction_eval(model, b, z)).abs();
        sup = M::Scalar::max_of(sup, err);
    }
    Ok(sup)
}

#[cfg(test)]
mod tests;
