//! The Poincaré disk: the hyperbolic plane of curvature −1 in floating point.
//!
//! Points are complex coordinates of modulus below `1 - BOUNDARY_CLAMP`,
//! ideal points are angles, and isometries are `SU(1,1)` matrices
//! `[[a, b], [b̄, ā]]` acting by `z ↦ (a z + b) / (b̄ z + ā)`, optionally
//! preceded by complex conjugation.
//!
//! Busemann functions and Gromov products of ideal points are evaluated in
//! closed form at the center and carried to other base points by the
//! isometry that moves the base point to the center.

use alloc::vec::Vec;
use core::f64::consts::{PI, TAU};

use num_complex::Complex64;
use num_traits::Float;

use crate::space::{Located, Model};
use crate::{Error, Extended, Result};

/// Points whose modulus exceeds `1 - BOUNDARY_CLAMP` are rejected.
pub const BOUNDARY_CLAMP: f64 = 1e-12;

/// Tolerance for algebraic identities.
pub const ALGEBRAIC_TOL: f64 = 1e-9;

/// Tolerance for quantities obtained as limits.
pub const LIMIT_TOL: f64 = 1e-6;

/// Angular tolerance for equality of ideal points.
pub const ANGLE_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(re: f64, im: f64) -> Result<Self> {
        Self::from_complex(Complex64::new(re, im))
    }

    pub fn from_complex(z: Complex64) -> Result<Self> {
        if !z.re.is_finite() || !z.im.is_finite() {
            return Err(Error::NonFinite);
        }
        let modulus = z.norm();
        if modulus > 1.0 - BOUNDARY_CLAMP {
            return Err(Error::OutsideDisk { modulus });
        }
        Ok(DiskPoint(z))
    }

    /// Point at hyperbolic distance `r` from the center in direction `angle`.
    pub fn polar(r: f64, angle: f64) -> Result<Self> {
        Self::from_complex(Complex64::from_polar((0.5 * r).tanh(), angle))
    }

    pub fn center() -> Self {
        DiskPoint(Complex64::new(0.0, 0.0))
    }

    pub fn z(&self) -> Complex64 {
        self.0
    }

    /// `1 - |z|²`, computed as `(1 - |z|)(1 + |z|)`.
    fn conformal(&self) -> f64 {
        let r = self.0.norm();
        (1.0 - r) * (1.0 + r)
    }
}

/// A point of the unit circle, stored by its angle in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskIdeal {
    angle: f64,
}

impl DiskIdeal {
    pub fn new(angle: f64) -> Self {
        let mut a = wrap(angle);
        if a >= TAU {
            a = 0.0;
        }
        DiskIdeal { angle: a }
    }

    fn from_unit(w: Complex64) -> Self {
        Self::new(w.arg())
    }

    pub fn angle(&self) -> f64 {
        self.angle
    }

    pub fn unit(&self) -> Complex64 {
        Complex64::from_polar(1.0, self.angle)
    }
}

/// `z ↦ (a w + b) / (b̄ w + ā)` with `w = z̄` when `reversing`, else `w = z`,
/// normalized so that `|a|² − |b|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskIsometry {
    a: Complex64,
    b: Complex64,
    reversing: bool,
}

impl DiskIsometry {
    pub fn identity() -> Self {
        DiskIsometry { a: Complex64::new(1.0, 0.0), b: Complex64::new(0.0, 0.0), reversing: false }
    }

    /// Builds `[[a, b], [b̄, ā]]` after rescaling to unit determinant.
    pub fn from_entries(a: Complex64, b: Complex64, reversing: bool) -> Result<Self> {
        let det = a.norm_sqr() - b.norm_sqr();
        if !det.is_finite() || det <= 0.0 {
            return Err(Error::NonFinite);
        }
        let s = det.sqrt();
        Ok(DiskIsometry { a: a / s, b: b / s, reversing })
    }

    /// Rotation about the center by `alpha`.
    pub fn rotation(alpha: f64) -> Self {
        DiskIsometry { a: Complex64::from_polar(1.0, 0.5 * alpha), b: Complex64::new(0.0, 0.0), reversing: false }
    }

    /// Translation of length `length` along the real diameter, towards `+1`.
    pub fn translation(length: f64) -> Self {
        DiskIsometry {
            a: Complex64::new((0.5 * length).cosh(), 0.0),
            b: Complex64::new((0.5 * length).sinh(), 0.0),
            reversing: false,
        }
    }

    /// Translation of length `length` along the diameter at `angle`, moving
    /// the center towards `e^{i angle}`.
    pub fn translation_toward(angle: f64, length: f64) -> Self {
        let c = (0.5 * length).cosh();
        let s = (0.5 * length).sinh();
        DiskIsometry { a: Complex64::new(c, 0.0), b: Complex64::from_polar(s, angle), reversing: false }
    }

    /// Complex conjugation `z ↦ z̄`.
    pub fn conjugation() -> Self {
        DiskIsometry { reversing: true, ..Self::identity() }
    }

    /// The isometry sending `p` to the center: `z ↦ (z − p) / (1 − p̄ z)`.
    pub fn to_center(p: &DiskPoint) -> Self {
        let s = p.conformal().sqrt();
        DiskIsometry { a: Complex64::new(1.0 / s, 0.0), b: -p.0 / s, reversing: false }
    }

    /// The isometry sending the center to `p`.
    pub fn from_center(p: &DiskPoint) -> Self {
        let s = p.conformal().sqrt();
        DiskIsometry { a: Complex64::new(1.0 / s, 0.0), b: p.0 / s, reversing: false }
    }

    pub fn entries(&self) -> (Complex64, Complex64) {
        (self.a, self.b)
    }

    pub fn is_reversing(&self) -> bool {
        self.reversing
    }

    /// `|tr| = 2 |Re a|`; greater than 2 exactly for hyperbolic elements.
    pub fn trace_abs(&self) -> f64 {
        2.0 * self.a.re.abs()
    }

    /// Translation length `2 arccosh(|Re a|)` of a hyperbolic element.
    pub fn translation_length(&self) -> f64 {
        2.0 * self.a.re.abs().max(1.0).acosh()
    }

    fn conj_entries(&self) -> (Complex64, Complex64) {
        (self.a.conj(), self.b.conj())
    }

    fn prepare(&self, z: Complex64) -> Complex64 {
        if self.reversing {
            z.conj()
        } else {
            z
        }
    }

    /// Numerator and denominator of the Möbius action on `z`.
    fn parts(&self, z: Complex64) -> (Complex64, Complex64) {
        let w = self.prepare(z);
        (self.a * w + self.b, self.b.conj() * w + self.a.conj())
    }

    fn act(&self, z: Complex64) -> Complex64 {
        let (n, d) = self.parts(z);
        n / d
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiskIsometry) -> DiskIsometry {
        let (a2, b2) = if self.reversing { other.conj_entries() } else { (other.a, other.b) };
        let a = self.a * a2 + self.b * b2.conj();
        let b = self.a * b2 + self.b * a2.conj();
        DiskIsometry { a, b, reversing: self.reversing ^ other.reversing }
    }

    pub fn inverse(&self) -> DiskIsometry {
        let (a, b) = (self.a.conj(), -self.b);
        if self.reversing {
            DiskIsometry { a: a.conj(), b: b.conj(), reversing: true }
        } else {
            DiskIsometry { a, b, reversing: false }
        }
    }

    pub fn approx_eq(&self, other: &DiskIsometry, tol: f64) -> bool {
        if self.reversing != other.reversing {
            return false;
        }
        let scale = 1.0 + self.a.norm().max(other.a.norm());
        let same = (self.a - other.a).norm() + (self.b - other.b).norm();
        let opposite = (self.a + other.a).norm() + (self.b + other.b).norm();
        same.min(opposite) <= tol * scale
    }
}

/// A geodesic line, stored by its point `base` nearest the center and the unit
/// direction `dir = T(ξ₊)` where `T` moves `base` to the center.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskLine {
    base: DiskPoint,
    dir: Complex64,
    plus: DiskIdeal,
    minus: DiskIdeal,
}

impl DiskLine {
    pub fn base(&self) -> DiskPoint {
        self.base
    }
}

/// `a mod 2π` in `[0, 2π]`.
fn wrap(a: f64) -> f64 {
    a - TAU * (a / TAU).floor()
}

/// Signed difference `a − b` wrapped into `(−π, π]`.
fn signed_angle(a: f64, b: f64) -> f64 {
    let mut d = wrap(a - b);
    if d > PI {
        d -= TAU;
    }
    d
}

fn angular_distance(a: f64, b: f64) -> f64 {
    signed_angle(a, b).abs()
}

/// `β^0_θ(y) = log(|e^{iθ} − y|² / (1 − |y|²))`.
fn busemann_at_center(unit: Complex64, y: &DiskPoint) -> f64 {
    ((unit - y.0).norm_sqr() / y.conformal()).ln()
}

/// The Poincaré disk model with its tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoincareDisk {
    /// Tolerance for point and isometry equality.
    pub tol: f64,
    /// Angular tolerance for equality of ideal points.
    pub angle_tol: f64,
    /// Tolerance for quantities obtained as limits.
    pub limit_tol: f64,
}

impl Default for PoincareDisk {
    fn default() -> Self {
        PoincareDisk { tol: ALGEBRAIC_TOL, angle_tol: ANGLE_TOL, limit_tol: LIMIT_TOL }
    }
}

impl PoincareDisk {
    pub fn new() -> Self {
        Self::default()
    }

    fn checked(&self, z: Complex64) -> Result<DiskPoint> {
        DiskPoint::from_complex(z)
    }

    /// Interior points produced by convex operations on valid points; the
    /// result is within the convex hull so only rounding can move it.
    fn interior(&self, z: Complex64) -> DiskPoint {
        let r = z.norm();
        if r > 1.0 - BOUNDARY_CLAMP {
            DiskPoint(z * ((1.0 - BOUNDARY_CLAMP) / r))
        } else {
            DiskPoint(z)
        }
    }
}

impl Model for PoincareDisk {
    type Scalar = f64;
    type Point = DiskPoint;
    type Ideal = DiskIdeal;
    type Isometry = DiskIsometry;
    type Line = DiskLine;

    const NAME: &'static str = "disk";

    fn origin(&self) -> DiskPoint {
        DiskPoint::center()
    }

    /// `d = 2 asinh(|z − w| / sqrt((1 − |z|²)(1 − |w|²)))`, the arccosh form
    /// `cosh d = 1 + 2|z − w|² / ((1 − |z|²)(1 − |w|²))` rewritten through
    /// `sinh(d/2)`.
    fn distance(&self, x: &DiskPoint, y: &DiskPoint) -> f64 {
        let num = (x.0 - y.0).norm();
        if num == 0.0 {
            return 0.0;
        }
        2.0 * (num / (x.conformal() * y.conformal()).sqrt()).asinh()
    }

    fn points_eq(&self, x: &DiskPoint, y: &DiskPoint) -> bool {
        self.distance(x, y) <= self.tol
    }

    fn ideals_eq(&self, a: &DiskIdeal, b: &DiskIdeal) -> bool {
        angular_distance(a.angle, b.angle) <= self.angle_tol
    }

    fn scalars_eq(&self, a: &f64, b: &f64) -> bool {
        (a - b).abs() <= self.tol
    }

    fn limit_tol(&self) -> f64 {
        self.limit_tol
    }

    fn busemann(&self, normalizer: &DiskPoint, xi: &DiskIdeal, x: &DiskPoint) -> f64 {
        let t = DiskIsometry::to_center(normalizer);
        let unit = t.act(xi.unit());
        let unit = unit / unit.norm();
        busemann_at_center(unit, &self.interior(t.act(x.0)))
    }

    /// `(ξ|η)_0 = −log(|ξ − η| / 2)`, transported to `base`.
    fn gromov_product_ideal(&self, xi: &DiskIdeal, eta: &DiskIdeal, base: &DiskPoint) -> Extended<f64> {
        if self.ideals_eq(xi, eta) {
            return Extended::Infinite;
        }
        let t = DiskIsometry::to_center(base);
        let u = self.apply_ideal(&t, xi);
        let v = self.apply_ideal(&t, eta);
        let half_angle = 0.5 * angular_distance(u.angle, v.angle);
        Extended::Finite(-half_angle.sin().ln())
    }

    fn segment_point(&self, x: &DiskPoint, y: &DiskPoint, t: &f64) -> DiskPoint {
        let t = t.max(0.0).min(self.distance(x, y));
        if t == 0.0 {
            return *x;
        }
        let to = DiskIsometry::to_center(x);
        let y0 = to.act(y.0);
        let r = y0.norm();
        if r == 0.0 {
            return *x;
        }
        let w = y0 * ((0.5 * t).tanh() / r);
        self.interior(DiskIsometry::from_center(x).act(w))
    }

    fn ray_point(&self, origin: &DiskPoint, xi: &DiskIdeal, t: &f64) -> Result<DiskPoint> {
        if t.is_nan() || *t < 0.0 {
            return Err(Error::ParameterOutOfRange);
        }
        let to = DiskIsometry::to_center(origin);
        let u = to.act(xi.unit());
        let w = u * ((0.5 * t).tanh() / u.norm());
        self.checked(DiskIsometry::from_center(origin).act(w))
    }

    /// `from_center(origin) ∘ translation(t)`, applied to the center.
    fn ray_located(&self, origin: &DiskPoint, xi: &DiskIdeal, t: &f64) -> Result<Located<Self>> {
        if t.is_nan() || *t < 0.0 {
            return Err(Error::ParameterOutOfRange);
        }
        let u = DiskIsometry::to_center(origin).act(xi.unit());
        let g = DiskIsometry::from_center(origin).compose(&DiskIsometry::translation_toward(u.arg(), *t));
        Ok(Located::Image(g, DiskPoint::center()))
    }

    fn line_located(&self, line: &DiskLine, t: &f64) -> Result<Located<Self>> {
        let g = DiskIsometry::from_center(&line.base).compose(&DiskIsometry::translation_toward(line.dir.arg(), *t));
        Ok(Located::Image(g, DiskPoint::center()))
    }

    fn geodesic_line(&self, plus: &DiskIdeal, minus: &DiskIdeal) -> Result<DiskLine> {
        if self.ideals_eq(plus, minus) {
            return Err(Error::DegenerateLine);
        }
        let delta = signed_angle(plus.angle, minus.angle);
        let half = 0.5 * delta.abs();
        let mid = minus.angle + 0.5 * delta;
        // nearest point to the center: cosh(dist) = 1 / sin(Δ/2)
        let r = half.cos() / (1.0 + half.sin());
        let base = self.checked(Complex64::from_polar(r, mid))?;
        let dir = DiskIsometry::to_center(&base).act(plus.unit());
        Ok(DiskLine { base, dir: dir / dir.norm(), plus: *plus, minus: *minus })
    }

    fn line_point(&self, line: &DiskLine, t: &f64) -> Result<DiskPoint> {
        let w = line.dir * (0.5 * t).tanh();
        self.checked(DiskIsometry::from_center(&line.base).act(w))
    }

    fn line_ends(&self, line: &DiskLine) -> (DiskIdeal, DiskIdeal) {
        (line.plus, line.minus)
    }

    fn visual_distance(&self, a: &DiskIdeal, b: &DiskIdeal) -> f64 {
        angular_distance(a.angle, b.angle)
    }

    fn visual_gap(&self, x: &DiskPoint, xi: &DiskIdeal) -> f64 {
        if x.0.norm() == 0.0 {
            return PI;
        }
        angular_distance(x.0.arg(), xi.angle)
    }

    fn radial_endpoint(&self, x: &DiskPoint) -> DiskIdeal {
        if x.0.norm() == 0.0 {
            DiskIdeal::new(0.0)
        } else {
            DiskIdeal::from_unit(x.0)
        }
    }

    /// Golden-angle spiral, area-uniform in hyperbolic radius, starting at the
    /// center.
    fn standard_points(&self, radius: &f64, count: usize) -> Vec<DiskPoint> {
        let golden = PI * (3.0 - 5.0.sqrt());
        let area = |r: f64| (0.5 * r).sinh().powi(2);
        let total = area(*radius);
        (0..count)
            .map(|k| {
                let frac = if count <= 1 { 0.0 } else { k as f64 / (count - 1) as f64 };
                let rho = 2.0 * (total * frac).sqrt().asinh();
                self.interior(Complex64::from_polar((0.5 * rho).tanh(), golden * k as f64))
            })
            .collect()
    }

    fn identity(&self) -> DiskIsometry {
        DiskIsometry::identity()
    }

    fn compose(&self, g: &DiskIsometry, h: &DiskIsometry) -> DiskIsometry {
        g.compose(h)
    }

    fn inverse(&self, g: &DiskIsometry) -> DiskIsometry {
        g.inverse()
    }

    fn isometries_eq(&self, g: &DiskIsometry, h: &DiskIsometry) -> bool {
        g.approx_eq(h, self.tol)
    }

    fn apply(&self, g: &DiskIsometry, x: &DiskPoint) -> Result<DiskPoint> {
        self.checked(g.act(x.0))
    }

    fn apply_ideal(&self, g: &DiskIsometry, xi: &DiskIdeal) -> DiskIdeal {
        let (n, d) = g.parts(xi.unit());
        DiskIdeal::new(n.arg() - d.arg())
    }

    fn fixed_points(&self, g: &DiskIsometry) -> Option<(DiskIdeal, DiskIdeal)> {
        if g.reversing || g.a.re.abs() <= 1.0 + self.tol || g.b.norm() == 0.0 {
            return None;
        }
        // b̄ z² + (ā − a) z − b = 0
        let (a, b) = (g.a, g.b);
        let p = a - a.conj();
        let disc = (p * p + 4.0 * b.norm_sqr()).sqrt();
        let roots = [(p + disc) / (2.0 * b.conj()), (p - disc) / (2.0 * b.conj())];
        let derivative = |z: Complex64| 1.0 / (b.conj() * z + a.conj()).norm_sqr();
        let (attract, repel) =
            if derivative(roots[0]) < derivative(roots[1]) { (roots[0], roots[1]) } else { (roots[1], roots[0]) };
        Some((DiskIdeal::from_unit(attract), DiskIdeal::from_unit(repel)))
    }

    /// `d(g·x, z) = 2 asinh(|a' x + b'| / sqrt(1 − |x|²))` where
    /// `[[a', b'], ·] = T_z ∘ g` and `T_z` moves `z` to the center. Sums of
    /// moduli only, so far images of `x` keep their precision.
    fn distance_after(&self, g: &DiskIsometry, x: &DiskPoint, z: &DiskPoint) -> Result<f64> {
        let h = DiskIsometry::to_center(z).compose(g);
        let w = h.prepare(x.0);
        let num = (h.a * w + h.b).norm();
        Ok(2.0 * (num / x.conformal().sqrt()).asinh())
    }

    fn radial_endpoint_after(&self, g: &DiskIsometry, x: &DiskPoint) -> Result<DiskIdeal> {
        let (n, d) = g.parts(x.0);
        if n.norm() == 0.0 {
            return Ok(DiskIdeal::new(0.0));
        }
        Ok(DiskIdeal::new(n.arg() - d.arg()))
    }

    /// Hyperboloid midpoint `(X + Y) / |X + Y|` from each point's distance
    /// and direction seen from the center, scaled by `e^{−max d}`.
    fn located_midpoint(&self, x: &Located<Self>, y: &Located<Self>) -> Result<DiskPoint> {
        let o = DiskPoint::center();
        let (dx, dy) = (x.distance_to(self, &o)?, y.distance_to(self, &o)?);
        let s = dx.max(dy);
        let lift = |d: f64, angle: f64| {
            let (up, down) = (Float::exp(d - s), Float::exp(-d - s));
            (0.5 * (up + down), Complex64::from_polar(0.5 * (up - down), angle))
        };
        let (x0, xv) = lift(dx, x.radial_endpoint(self)?.angle);
        let (y0, yv) = lift(dy, y.radial_endpoint(self)?.angle);
        let (m0, mv) = (x0 + y0, xv + yv);
        let norm = Float::sqrt((m0 - mv.norm()) * (m0 + mv.norm()));
        Ok(self.interior(mv / (norm + m0)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{gromov_product, midpoint, segment};

    fn disk() -> PoincareDisk {
        PoincareDisk::default()
    }

    fn pt(re: f64, im: f64) -> DiskPoint {
        DiskPoint::new(re, im).unwrap()
    }

    /// Hyperbolic length of the real diameter from 0 to `r` by midpoint-rule
    /// quadrature of the metric `2 / (1 − x²)`.
    fn quadrature_length(r: f64) -> f64 {
        let n = 200_000;
        let h = r / n as f64;
        (0..n)
            .map(|i| {
                let x = (i as f64 + 0.5) * h;
                2.0 / (1.0 - x * x) * h
            })
            .sum()
    }

    #[test]
    fn distance_examples() {
        let m = disk();
        assert_eq!(m.distance(&DiskPoint::center(), &DiskPoint::center()), 0.0);
        let d = m.distance(&DiskPoint::center(), &pt(0.5, 0.0));
        assert!((d - 3f64.ln()).abs() < 1e-12);
        assert!((quadrature_length(0.5) - 3f64.ln()).abs() < 1e-9);
        // midpoint doubling: d(0, 0.5) = 2 d(0, tanh(log(3)/4))
        let q = pt((0.25 * 3f64.ln()).tanh(), 0.0);
        assert!((d - 2.0 * m.distance(&DiskPoint::center(), &q)).abs() < 1e-12);
    }

    #[test]
    fn clamp_is_an_error() {
        assert!(matches!(DiskPoint::new(1.0, 0.0), Err(Error::OutsideDisk { .. })));
        assert!(DiskPoint::new(1.0 - 1e-13, 0.0).is_err());
        assert!(DiskPoint::new(1.0 - 1e-11, 0.0).is_ok());
        assert!(matches!(DiskPoint::new(f64::NAN, 0.0), Err(Error::NonFinite)));
    }

    #[test]
    fn busemann_examples() {
        let m = disk();
        let o = DiskPoint::center();
        let east = DiskIdeal::new(0.0);
        assert_eq!(m.busemann(&o, &east, &o), 0.0);
        assert!((m.busemann(&o, &east, &pt(0.5, 0.0)) + 3f64.ln()).abs() < 1e-12);
        assert!((m.busemann(&o, &east, &pt(-0.5, 0.0)) - 3f64.ln()).abs() < 1e-12);
        let p = pt(0.1, -0.3);
        assert!(m.busemann(&p, &DiskIdeal::new(2.0), &p).abs() < 1e-12);
    }

    #[test]
    fn gromov_product_ideal_examples() {
        let m = disk();
        let o = DiskPoint::center();
        let a = DiskIdeal::new(0.0);
        let gp = m.gromov_product_ideal(&a, &DiskIdeal::new(PI), &o).finite().unwrap();
        assert!(gp.abs() < 1e-12);
        let gp = m.gromov_product_ideal(&a, &DiskIdeal::new(0.5 * PI), &o).finite().unwrap();
        assert!((gp - 0.5 * 2f64.ln()).abs() < 1e-12);
        assert!(m.gromov_product_ideal(&a, &a, &o).is_infinite());
    }

    #[test]
    fn ideal_gromov_product_is_a_limit_of_finite_products() {
        let m = disk();
        let o = DiskPoint::center();
        let base = pt(0.2, 0.35);
        let (xi, eta) = (DiskIdeal::new(0.3), DiskIdeal::new(2.2));
        let closed = m.gromov_product_ideal(&xi, &eta, &base).finite().unwrap();
        let t = 24.0;
        let x = m.ray_point(&o, &xi, &t).unwrap();
        let y = m.ray_point(&o, &eta, &t).unwrap();
        assert!((gromov_product(&m, &x, &y, &base) - closed).abs() < 1e-6);
    }

    #[test]
    fn ray_from_center_is_tanh() {
        let m = disk();
        let o = DiskPoint::center();
        for t in [0.0, 0.5, 1.0, 3.0, 10.0] {
            let p = m.ray_point(&o, &DiskIdeal::new(0.0), &t).unwrap();
            assert!((p.z() - Complex64::new((0.5 * t).tanh(), 0.0)).norm() < 1e-15);
            assert!((m.distance(&o, &p) - t).abs() < 1e-9);
        }
    }

    #[test]
    fn segment_and_midpoint() {
        let m = disk();
        let (x, y) = (pt(0.5, 0.0), pt(-0.5, 0.0));
        assert!(m.points_eq(&midpoint(&m, &x, &y), &DiskPoint::center()));
        let s = segment(&m, &x, &x);
        assert_eq!(*s.length(), 0.0);
        let (x, y) = (pt(0.3, 0.4), pt(-0.6, 0.1));
        let s = segment(&m, &x, &y);
        let len = *s.length();
        assert!(m.points_eq(&s.eval(&m, &0.0).unwrap(), &x));
        assert!(m.points_eq(&s.eval(&m, &len).unwrap(), &y));
        assert!(s.eval(&m, &(len + 1.0)).is_err());
        for (a, b) in [(0.1, 0.7), (0.0, len), (0.4, 0.4 + 1e-7)] {
            let pa = s.eval(&m, &a).unwrap();
            let pb = s.eval(&m, &b).unwrap();
            assert!((m.distance(&pa, &pb) - (b - a)).abs() < 1e-9);
        }
    }

    #[test]
    fn lines() {
        let m = disk();
        let line = m.geodesic_line(&DiskIdeal::new(0.0), &DiskIdeal::new(PI)).unwrap();
        for t in [-2.0, 0.0, 0.7, 3.0] {
            let p = m.line_point(&line, &t).unwrap();
            assert!((p.z() - Complex64::new((0.5 * t).tanh(), 0.0)).norm() < 1e-14);
        }
        let theta = 1.1;
        let line = m.geodesic_line(&DiskIdeal::new(theta + PI), &DiskIdeal::new(theta)).unwrap();
        assert!(line.base().z().norm() < 1e-15);
        let p = m.line_point(&line, &1.0).unwrap();
        assert!((p.z().arg() - (theta + PI - TAU)).abs() < 1e-12);

        let line = m.geodesic_line(&DiskIdeal::new(0.0), &DiskIdeal::new(0.5 * PI)).unwrap();
        let ts = [-3.0, -1.0, 0.0, 0.5, 2.0];
        for s in ts {
            for t in ts {
                let ps = m.line_point(&line, &s).unwrap();
                let pt = m.line_point(&line, &t).unwrap();
                assert!((m.distance(&ps, &pt) - (s - t).abs()).abs() < 1e-9);
            }
        }
        // the base point sits on the line and realizes the distance to it
        let o = m.origin();
        let c = line.base();
        let gp = m.gromov_product_ideal(&DiskIdeal::new(0.0), &DiskIdeal::new(0.5 * PI), &c);
        assert!(gp.finite().unwrap().abs() < 1e-9);
        let dc = m.distance(&o, &c);
        for t in [-0.3, -0.01, 0.01, 0.3] {
            assert!(m.distance(&o, &m.line_point(&line, &t).unwrap()) > dc);
        }
        // ends
        let far = m.line_point(&line, &25.0).unwrap();
        assert!(m.visual_gap(&far, &DiskIdeal::new(0.0)) < 1e-9);
        let far = m.line_point(&line, &-25.0).unwrap();
        assert!(m.visual_gap(&far, &DiskIdeal::new(0.5 * PI)) < 1e-9);

        assert_eq!(m.geodesic_line(&DiskIdeal::new(1.0), &DiskIdeal::new(1.0)).unwrap_err(), Error::DegenerateLine);
    }

    #[test]
    fn isometry_examples() {
        let m = disk();
        let id = m.identity();
        let x = pt(0.2, -0.4);
        assert!(m.points_eq(&m.apply(&id, &x).unwrap(), &x));
        let rot = DiskIsometry::rotation(0.7);
        let xi = m.apply_ideal(&rot, &DiskIdeal::new(1.0));
        assert!((xi.angle() - 1.7).abs() < 1e-12);
        let tr = DiskIsometry::translation(1.3);
        assert!(m.ideals_eq(&m.apply_ideal(&tr, &DiskIdeal::new(0.0)), &DiskIdeal::new(0.0)));
        assert!(m.ideals_eq(&m.apply_ideal(&tr, &DiskIdeal::new(PI)), &DiskIdeal::new(PI)));
        let (attract, repel) = m.fixed_points(&tr).unwrap();
        assert!(m.ideals_eq(&attract, &DiskIdeal::new(0.0)));
        assert!(m.ideals_eq(&repel, &DiskIdeal::new(PI)));
        assert!(m.fixed_points(&rot).is_none());
        assert!((tr.translation_length() - 1.3).abs() < 1e-12);

        let g = DiskIsometry::translation_toward(0.4, 2.0).compose(&DiskIsometry::rotation(1.0));
        let y = pt(-0.3, 0.5);
        let gx = m.apply(&g, &x).unwrap();
        let gy = m.apply(&g, &y).unwrap();
        assert!((m.distance(&gx, &gy) - m.distance(&x, &y)).abs() < 1e-9);
        let back = m.apply(&g.inverse(), &gx).unwrap();
        assert!(m.points_eq(&back, &x));
        assert!(m.isometries_eq(&g.compose(&g.inverse()), &id));
        assert!((m.distance_after(&g, &x, &y).unwrap() - m.distance(&gx, &y)).abs() < 1e-9);

        let c = DiskIsometry::conjugation();
        let cg = c.compose(&g);
        let cgx = m.apply(&cg, &x).unwrap();
        assert!((cgx.z() - gx.z().conj()).norm() < 1e-12);
        assert!(m.isometries_eq(&cg.compose(&cg.inverse()), &id));
        let cx = m.apply(&cg.inverse(), &cgx).unwrap();
        assert!(m.points_eq(&cx, &x));
    }

    #[test]
    fn distance_after_keeps_precision_far_out() {
        let m = disk();
        let g = DiskIsometry::translation(60.0);
        let x = pt(0.1, 0.2);
        // the image is far beyond the clamp, yet d(g x, g o) = d(x, o)
        assert!(m.apply(&g, &x).is_err());
        let d = m.distance_after(&g, &x, &m.origin()).unwrap();
        let d0 = m.distance_after(&g, &m.origin(), &m.origin()).unwrap();
        assert!((d0 - 60.0).abs() < 1e-9);
        assert!((d - d0).abs() <= m.distance(&x, &m.origin()) + 1e-9);
        let xi = m.radial_endpoint_after(&g, &x).unwrap();
        assert!(m.visual_distance(&xi, &DiskIdeal::new(0.0)) < 1e-20);
    }

    #[test]
    fn located_midpoint_of_far_points() {
        let m = disk();
        let o = m.origin();
        for angle in [0.0, 1.0, 2.5, 4.0] {
            // opposite rays of lengths 25 and 24 meet at distance 1/2 along the longer one
            let x = m.ray_located(&o, &DiskIdeal::new(angle), &25.0).unwrap();
            let y = m.ray_located(&o, &DiskIdeal::new(angle + PI), &24.0).unwrap();
            let mid = m.located_midpoint(&x, &y).unwrap();
            let expected = DiskPoint::polar(0.5, angle).unwrap();
            assert!(m.distance(&mid, &expected) < 1e-12);
        }
        let (x, y) = (pt(0.3, -0.1), pt(-0.2, 0.4));
        let mid = m.located_midpoint(&Located::At(x), &Located::At(y)).unwrap();
        assert!(m.distance(&mid, &midpoint(&m, &x, &y)) < 1e-12);
    }

    #[test]
    fn standard_points_stay_in_radius() {
        let m = disk();
        let pts = m.standard_points(&1.0, 20);
        assert_eq!(pts.len(), 20);
        assert_eq!(pts[0], DiskPoint::center());
        for p in &pts {
            assert!(m.distance(&m.origin(), p) <= 1.0 + 1e-12);
        }
    }

    /// Hyperboloid-model coordinates of a disk point.
    fn hyperboloid(z: Complex64) -> [f64; 3] {
        let k = 1.0 - z.norm_sqr();
        [(1.0 + z.norm_sqr()) / k, 2.0 * z.re / k, 2.0 * z.im / k]
    }

    fn minkowski(x: [f64; 3], y: [f64; 3]) -> f64 {
        -x[0] * y[0] + x[1] * y[1] + x[2] * y[2]
    }

    /// `d(x, c(T)) − T` for the unit-speed ray `c` from `p` towards angle
    /// `theta`, evaluated on the hyperboloid.
    fn hyperboloid_busemann_stage(p: Complex64, theta: f64, x: Complex64, t: f64) -> f64 {
        let (pp, xx) = (hyperboloid(p), hyperboloid(x));
        let null = [1.0, theta.cos(), theta.sin()];
        let k = -minkowski(pp, null);
        let v = [null[0] / k - pp[0], null[1] / k - pp[1], null[2] / k - pp[2]];
        let (a, b) = (-minkowski(xx, pp), -minkowski(xx, v));
        let e = (-2.0 * t).exp();
        // u e^{−T} with u = cosh(T) a + sinh(T) b = cosh d(x, c(T))
        let scaled = 0.5 * (a * (1.0 + e) + b * (1.0 - e));
        (scaled + (scaled * scaled - e).sqrt()).ln()
    }

    fn arb_point() -> impl Strategy<Value = DiskPoint> {
        (0.0..3.0f64, 0.0..TAU).prop_map(|(r, a)| DiskPoint::polar(r, a).unwrap())
    }

    fn arb_ideal() -> impl Strategy<Value = DiskIdeal> {
        (0.0..TAU).prop_map(DiskIdeal::new)
    }

    fn arb_isometry() -> impl Strategy<Value = DiskIsometry> {
        (0.0..TAU, 0.0..3.0f64, 0.0..TAU, any::<bool>()).prop_map(|(a, l, r, rev)| {
            let g = DiskIsometry::translation_toward(a, l).compose(&DiskIsometry::rotation(r));
            if rev {
                g.compose(&DiskIsometry::conjugation())
            } else {
                g
            }
        })
    }

    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]

        #[test]
        fn busemann_closed_form_matches_limit(p in arb_point(), xi in arb_ideal(), x in arb_point()) {
            let m = disk();
            let t = 30.0;
            let stage = hyperboloid_busemann_stage(p.z(), xi.angle(), x.z(), t);
            let closed = m.busemann(&p, &xi, &x);
            prop_assert!((closed - stage).abs() <= 2.0 * (-t).exp() + 1e-8, "{closed} vs {stage}");
        }

        #[test]
        fn hyperboloid_distance_agrees(x in arb_point(), y in arb_point()) {
            let d = (-minkowski(hyperboloid(x.z()), hyperboloid(y.z()))).max(1.0).acosh();
            prop_assert!((disk().distance(&x, &y) - d).abs() < 1e-7);
        }

        #[test]
        fn isometry_invariance(g in arb_isometry(), x in arb_point(), y in arb_point(), xi in arb_ideal()) {
            let m = disk();
            let (gx, gy) = (m.apply(&g, &x).unwrap(), m.apply(&g, &y).unwrap());
            prop_assert!((m.distance(&gx, &gy) - m.distance(&x, &y)).abs() < 1e-8);
            let gxi = m.apply_ideal(&g, &xi);
            prop_assert!((m.busemann(&gx, &gxi, &gy) - m.busemann(&x, &xi, &y)).abs() < 1e-8);
            prop_assert!(m.points_eq(&m.apply(&g.inverse(), &gx).unwrap(), &x));
            prop_assert!(m.ideals_eq(&m.apply_ideal(&g.inverse(), &gxi), &xi));
            prop_assert!((m.distance_after(&g, &x, &y).unwrap() - m.distance(&gx, &y)).abs() < 1e-8);
        }

        #[test]
        fn unit_speed_rays_and_lines(x in arb_point(), xi in arb_ideal(), eta in arb_ideal(), s in 0.0..6.0f64, t in 0.0..6.0f64) {
            let m = disk();
            let ps = m.ray_point(&x, &xi, &s).unwrap();
            let pt = m.ray_point(&x, &xi, &t).unwrap();
            prop_assert!((m.distance(&ps, &pt) - (s - t).abs()).abs() < 1e-8);
            prop_assert!((m.busemann(&x, &xi, &ps) + s).abs() < 1e-8);
            prop_assume!(m.visual_distance(&xi, &eta) > 1e-3);
            let line = m.geodesic_line(&xi, &eta).unwrap();
            let ls = m.line_point(&line, &(s - 3.0)).unwrap();
            let lt = m.line_point(&line, &(t - 3.0)).unwrap();
            prop_assert!((m.distance(&ls, &lt) - (s - t).abs()).abs() < 1e-8);
            let gp = m.gromov_product_ideal(&xi, &eta, &line.base()).finite().unwrap();
            prop_assert!(gp.abs() < 1e-8);
        }

        #[test]
        fn busemann_antisymmetry_and_lipschitz(x in arb_point(), y in arb_point(), xi in arb_ideal()) {
            let m = disk();
            let o = m.origin();
            prop_assert!((m.busemann(&o, &xi, &y) + m.busemann(&y, &xi, &o)).abs() < 1e-9);
            let diff = (m.busemann(&o, &xi, &x) - m.busemann(&o, &xi, &y)).abs();
            prop_assert!(diff <= m.distance(&x, &y) + 1e-9);
        }

        #[test]
        fn busemann_is_a_sequence_limit(x in arb_point(), y in arb_point(), xi in arb_ideal()) {
            let m = disk();
            let o = m.origin();
            let xn = m.ray_point(&x, &xi, &25.0).unwrap();
            let stage = m.distance(&xn, &y) - m.distance(&xn, &o);
            prop_assert!((stage - m.busemann(&o, &xi, &y)).abs() < 1e-6);
        }

        #[test]
        fn midpoint_minimizes_max_distance(x in arb_point(), y in arb_point(), a in arb_point()) {
            let m = disk();
            let mid = midpoint(&m, &x, &y);
            let at_mid = m.distance(&x, &mid).max(m.distance(&y, &mid));
            prop_assert!((m.distance(&x, &mid) - m.distance(&y, &mid)).abs() < 1e-8);
            prop_assert!(m.distance(&x, &a).max(m.distance(&y, &a)) >= at_mid - 1e-9);
        }
    }
}
