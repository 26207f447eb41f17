//! Parametrized geodesics and their correspondence with the ideal domain Ω.
//!
//! A [`ParamGeodesic`] is a line plus a time offset, so reparametrizing is
//! arithmetic. Along a line both Busemann functions of its ends are affine
//! of slope ∓1, which makes every map here closed-form:
//!
//! - `f(g) = Regular(g(+∞), g(−∞), β^o_{g(−∞)}(g(0)) − β^o_{g(+∞)}(g(0)))`;
//! - `hopf(g) = (g(+∞), g(−∞), β^{g(0)}_{g(+∞)}(o))`;
//! - `h(ξ₊, ξ₋, r) = (ξ₊, ξ₋, 2(r − (ξ₊|ξ₋)_o))`, with `h ∘ hopf = φ_reg ∘ f`.

use crate::product::{MaxBoundaryPoint, ProductPoint, StructuredSequence};
use crate::space::{midpoint, Located, Model};
use crate::{Error, Extended, Result, Scalar};

/// `g(t) = line(t + offset)`.
#[derive(Debug, Clone)]
pub struct ParamGeodesic<M: Model> {
    line: M::Line,
    offset: M::Scalar,
    plus: M::Ideal,
    minus: M::Ideal,
}

impl<M: Model> ParamGeodesic<M> {
    /// The geodesic from `minus` to `plus` whose time 0 sits `offset` past
    /// the point of the line nearest `o`.
    pub fn new(model: &M, plus: &M::Ideal, minus: &M::Ideal, offset: M::Scalar) -> Result<Self> {
        let line = model.geodesic_line(plus, minus)?;
        Ok(ParamGeodesic { line, offset, plus: plus.clone(), minus: minus.clone() })
    }

    pub fn plus(&self) -> &M::Ideal {
        &self.plus
    }

    pub fn minus(&self) -> &M::Ideal {
        &self.minus
    }

    pub fn offset(&self) -> &M::Scalar {
        &self.offset
    }

    pub fn line(&self) -> &M::Line {
        &self.line
    }

    pub fn point(&self, model: &M, t: &M::Scalar) -> Result<M::Point> {
        model.line_point(&self.line, &(t.clone() + self.offset.clone()))
    }

    pub fn located(&self, model: &M, t: &M::Scalar) -> Result<Located<M>> {
        model.line_located(&self.line, &(t.clone() + self.offset.clone()))
    }

    /// `g(0)`.
    pub fn base_point(&self, model: &M) -> Result<M::Point> {
        self.point(model, &M::Scalar::zero())
    }

    /// `t ↦ g(t + s)`.
    pub fn shifted(&self, s: &M::Scalar) -> Self {
        ParamGeodesic { offset: self.offset.clone() + s.clone(), ..self.clone() }
    }

    /// `β^o_{g(−∞)}(g(0)) − β^o_{g(+∞)}(g(0))`, computed at the canonical
    /// point of the line and carried along it with slope 2.
    pub fn busemann_gap(&self, model: &M) -> Result<M::Scalar> {
        let o = model.origin();
        let c = model.line_point(&self.line, &M::Scalar::zero())?;
        let gap = model.busemann(&o, &self.minus, &c) - model.busemann(&o, &self.plus, &c);
        Ok(gap + self.offset.clone() + self.offset.clone())
    }

    /// The limit of `(g(n), g(−n))`.
    pub fn to_boundary(&self, model: &M) -> Result<MaxBoundaryPoint<M>> {
        let c = self.busemann_gap(model)?;
        Ok(MaxBoundaryPoint::Regular { xi: self.plus.clone(), xi_prime: self.minus.clone(), c })
    }
}

/// The parameter at which `p` sits on `line`, assuming it lies on it.
pub fn locate_on_line<M: Model>(model: &M, line: &M::Line, p: &M::Point) -> Result<M::Scalar> {
    let (plus, minus) = model.line_ends(line);
    let c = model.line_point(line, &M::Scalar::zero())?;
    Ok((model.busemann(&c, &minus, p) - model.busemann(&c, &plus, p)).half())
}

/// `g ↦ lim (g(n), g(−n))`, a point of Ω.
pub fn f<M: Model>(model: &M, g: &ParamGeodesic<M>) -> Result<MaxBoundaryPoint<M>> {
    g.to_boundary(model)
}

/// The geodesic `g` with `f(g) = Regular(plus, minus, r)`.
pub fn f_inverse<M: Model>(model: &M, plus: &M::Ideal, minus: &M::Ideal, r: &M::Scalar) -> Result<ParamGeodesic<M>> {
    let canonical = ParamGeodesic::new(model, plus, minus, M::Scalar::zero())?;
    let c0 = canonical.busemann_gap(model)?;
    Ok(canonical.shifted(&(r.clone() - c0).half()))
}

/// [`f_inverse`] applied to a boundary point; fails outside Ω.
pub fn geodesic_of<M: Model>(model: &M, b: &MaxBoundaryPoint<M>) -> Result<ParamGeodesic<M>> {
    match b {
        MaxBoundaryPoint::Regular { xi, xi_prime, c } if !model.ideals_eq(xi, xi_prime) => {
            f_inverse(model, xi, xi_prime, c)
        }
        _ => Err(Error::OutsideOmega),
    }
}

/// Hopf coordinates `(g(+∞), g(−∞), β^{g(0)}_{g(+∞)}(o))`.
pub fn hopf<M: Model>(model: &M, g: &ParamGeodesic<M>) -> Result<(M::Ideal, M::Ideal, M::Scalar)> {
    let p = g.base_point(model)?;
    let r = model.busemann(&p, &g.plus, &model.origin());
    Ok((g.plus.clone(), g.minus.clone(), r))
}

/// `(ξ₊, ξ₋, r) ↦ (ξ₊, ξ₋, 2(r − (ξ₊|ξ₋)_o))`, defined off the diagonal.
pub fn h_map<M: Model>(
    model: &M,
    plus: &M::Ideal,
    minus: &M::Ideal,
    r: &M::Scalar,
) -> Result<(M::Ideal, M::Ideal, M::Scalar)> {
    match model.gromov_product_ideal(plus, minus, &model.origin()) {
        Extended::Infinite => Err(Error::DegenerateLine),
        Extended::Finite(gp) => {
            let d = r.clone() - gp;
            Ok((plus.clone(), minus.clone(), d.clone() + d))
        }
    }
}

/// `γ · g`, parametrized so that `(γ·g)(0) = γ(g(0))`.
pub fn apply_isometry<M: Model>(model: &M, gamma: &M::Isometry, g: &ParamGeodesic<M>) -> Result<ParamGeodesic<M>> {
    let plus = model.apply_ideal(gamma, &g.plus);
    let minus = model.apply_ideal(gamma, &g.minus);
    let line = model.geodesic_line(&plus, &minus)?;
    let image = model.apply(gamma, &g.base_point(model)?)?;
    let offset = locate_on_line(model, &line, &image)?;
    Ok(ParamGeodesic { line, offset, plus, minus })
}

/// How far the `n`-th term of a sequence is from satisfying the three
/// convergence conditions towards `g`.
#[derive(Debug, Clone)]
pub struct Residuals<S> {
    /// Visual distance from `x_n` to `g(+∞)`.
    pub first: f64,
    /// Visual distance from `y_n` to `g(−∞)`.
    pub second: f64,
    /// `|d(x_n, o) − d(y_n, o) − (β^o_{g(−∞)}(g(0)) − β^o_{g(+∞)}(g(0)))|`.
    pub constant: S,
}

pub fn converges_to<M: Model>(
    model: &M,
    seq: &StructuredSequence<M>,
    g: &ParamGeodesic<M>,
    n: u32,
) -> Result<Residuals<M::Scalar>> {
    let (x, y) = seq.term(model, n)?;
    let o = model.origin();
    let target = g.busemann_gap(model)?;
    let diff = x.distance_to(model, &o)? - y.distance_to(model, &o)?;
    Ok(Residuals {
        first: located_visual_gap(model, &x, &g.plus)?,
        second: located_visual_gap(model, &y, &g.minus)?,
        constant: (diff - target).abs(),
    })
}

fn located_visual_gap<M: Model>(model: &M, x: &Located<M>, xi: &M::Ideal) -> Result<f64> {
    match x {
        Located::At(p) => Ok(model.visual_gap(p, xi)),
        Located::Image(..) => Ok(model.visual_distance(&x.radial_endpoint(model)?, xi)),
    }
}

/// Nearest point of the diagonal to `(x, y)` for `d_max`: `(m, m)` with `m`
/// the midpoint of `x` and `y`.
pub fn project_diagonal<M: Model>(model: &M, p: &ProductPoint<M>) -> M::Point {
    midpoint(model, &p.first, &p.second)
}

/// [`project_diagonal`] for a term given by located points.
pub fn project_located<M: Model>(model: &M, x: &Located<M>, y: &Located<M>) -> Result<M::Point> {
    model.located_midpoint(x, y)
}

/// A point of `X × X ∪ Ω`, the latter given by its geodesic.
#[derive(Debug, Clone)]
pub enum ExtendedPoint<M: Model> {
    Finite(ProductPoint<M>),
    Ideal(ParamGeodesic<M>),
}

/// The diagonal projection extended to Ω by `g ↦ g(0)`.
pub fn rho_tilde<M: Model>(model: &M, p: &ExtendedPoint<M>) -> Result<M::Point> {
    match p {
        ExtendedPoint::Finite(q) => Ok(project_diagonal(model, q)),
        ExtendedPoint::Ideal(g) => g.base_point(model),
    }
}

/// `γ` acting diagonally on `X × X` and through geodesics on Ω.
pub fn act<M: Model>(model: &M, gamma: &M::Isometry, p: &ExtendedPoint<M>) -> Result<ExtendedPoint<M>> {
    match p {
        ExtendedPoint::Finite(q) => {
            Ok(ExtendedPoint::Finite(ProductPoint::new(model.apply(gamma, &q.first)?, model.apply(gamma, &q.second)?)))
        }
        ExtendedPoint::Ideal(g) => Ok(ExtendedPoint::Ideal(apply_isometry(model, gamma, g)?)),
    }
}
