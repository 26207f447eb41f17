//! Seeded random inputs for both models, and their text forms.

use std::f64::consts::TAU;

use horobound::disk::{DiskIdeal, DiskIsometry, DiskPoint, PoincareDisk};
use horobound::geodesic::ParamGeodesic;
use horobound::group::{free_group_action, octagon_group, GroupPresentation};
use horobound::product::{Factor, MaxBoundaryPoint, ProductPoint};
use horobound::tree::{CayleyTree, Letter, TreeIdeal, TreeIsometry, TreePoint, Word};
use horobound::{Model, Scalar};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{RunConfig, UsageError};

/// The generator for a named stream: independent of every other stream and
/// of the order in which streams are drawn.
pub fn rng_for(seed: u64, stream: &str) -> ChaCha8Rng {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in stream.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    let mut key = [0u8; 32];
    key[..8].copy_from_slice(&seed.to_le_bytes());
    key[8..16].copy_from_slice(&h.to_le_bytes());
    ChaCha8Rng::from_seed(key)
}

/// What the harness needs from a model beyond [`Model`].
pub trait HarnessModel: Model + 'static {
    const EXACT: bool;

    fn build(cfg: &RunConfig) -> Self;

    fn group(&self) -> GroupPresentation<Self>;

    /// A point within roughly `radius` of `o`.
    fn random_point(&self, rng: &mut ChaCha8Rng, radius: f64) -> Self::Point;

    fn random_ideal(&self, rng: &mut ChaCha8Rng) -> Self::Ideal;

    /// A value in `[lo, hi]`; multiples of 1/4 in exact models.
    fn random_scalar(&self, rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Self::Scalar;

    /// `x`, rounded to a multiple of 1/64 in exact models.
    fn scalar(&self, x: f64) -> Self::Scalar;

    /// An ideal point clearly apart from `xi`.
    fn far_ideal(&self, xi: &Self::Ideal) -> Self::Ideal;

    /// Index at which limits are compared: convergence is complete up to
    /// rounding in the disk and exactly stabilized in the tree.
    fn settle_index(&self) -> u32;

    /// How far `g` is from acting trivially: the entrywise distance of its
    /// matrix to `±1` in the disk, and `0` or `1` in the tree.
    fn identity_gap(&self, g: &Self::Isometry) -> f64;

    /// The threshold to use: `disk` for floating-point models, zero otherwise.
    fn threshold(disk: f64) -> f64 {
        if Self::EXACT {
            0.0
        } else {
            disk
        }
    }

    fn parse_point(&self, s: &str) -> Result<Self::Point, UsageError>;
    fn parse_ideal(&self, s: &str) -> Result<Self::Ideal, UsageError>;
    fn parse_scalar(&self, s: &str) -> Result<Self::Scalar, UsageError>;
    fn show_point(&self, p: &Self::Point) -> String;
    fn show_ideal(&self, xi: &Self::Ideal) -> String;
    fn show_scalar(&self, x: &Self::Scalar) -> String;
}

/// Floats in reports, with 17 significant digits.
pub fn show_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn parse_f64(s: &str) -> Result<f64, UsageError> {
    let x: f64 = s.trim().parse().map_err(|_| UsageError(format!("{s:?} is not a number")))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(UsageError(format!("{s:?} is not finite")))
    }
}

impl HarnessModel for PoincareDisk {
    const EXACT: bool = false;

    fn build(cfg: &RunConfig) -> Self {
        PoincareDisk { tol: cfg.tol, limit_tol: cfg.limit_tol, ..PoincareDisk::default() }
    }

    fn group(&self) -> GroupPresentation<Self> {
        octagon_group()
    }

    fn random_point(&self, rng: &mut ChaCha8Rng, radius: f64) -> DiskPoint {
        DiskPoint::polar(rng.gen_range(0.0..=radius), rng.gen_range(0.0..TAU)).expect("radius is small")
    }

    fn random_ideal(&self, rng: &mut ChaCha8Rng) -> DiskIdeal {
        DiskIdeal::new(rng.gen_range(0.0..TAU))
    }

    fn random_scalar(&self, rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
        rng.gen_range(lo..=hi)
    }

    fn scalar(&self, x: f64) -> f64 {
        x
    }

    fn far_ideal(&self, xi: &DiskIdeal) -> DiskIdeal {
        DiskIdeal::new(xi.angle() + 0.5 * std::f64::consts::PI)
    }

    fn settle_index(&self) -> u32 {
        25
    }

    fn identity_gap(&self, g: &DiskIsometry) -> f64 {
        let (a, b) = g.entries();
        let off = if g.is_reversing() { f64::INFINITY } else { b.norm() };
        off.max((a - 1.0).norm().min((a + 1.0).norm()))
    }

    fn parse_point(&self, s: &str) -> Result<DiskPoint, UsageError> {
        let (re, im) =
            s.split_once(',').ok_or_else(|| UsageError(format!("disk point {s:?} is not of the form re,im")))?;
        Ok(DiskPoint::new(parse_f64(re)?, parse_f64(im)?)?)
    }

    fn parse_ideal(&self, s: &str) -> Result<DiskIdeal, UsageError> {
        Ok(DiskIdeal::new(parse_f64(s)?))
    }

    fn parse_scalar(&self, s: &str) -> Result<f64, UsageError> {
        parse_f64(s)
    }

    fn show_point(&self, p: &DiskPoint) -> String {
        format!("{},{}", show_f64(p.z().re), show_f64(p.z().im))
    }

    fn show_ideal(&self, xi: &DiskIdeal) -> String {
        show_f64(xi.angle())
    }

    fn show_scalar(&self, x: &f64) -> String {
        show_f64(*x)
    }
}

fn random_tree_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::ALL[rng.gen_range(0..4)];
        if letters.last() != Some(&l.inverse()) {
            letters.push(l);
        }
    }
    Word::from_reduced(letters).expect("reduced by construction")
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl HarnessModel for CayleyTree {
    const EXACT: bool = true;

    fn build(_: &RunConfig) -> Self {
        CayleyTree
    }

    fn group(&self) -> GroupPresentation<Self> {
        free_group_action()
    }

    /// A vertex at depth `< radius` and, half the time, a point `k/8` along
    /// one of its edges.
    fn random_point(&self, rng: &mut ChaCha8Rng, radius: f64) -> TreePoint {
        let depth = rng.gen_range(0..=radius.max(0.0) as usize);
        let w = random_tree_word(rng, depth);
        if depth as f64 + 1.0 > radius || rng.gen_bool(0.5) {
            return TreePoint::vertex(w);
        }
        let l = Letter::ALL[rng.gen_range(0..4)];
        TreePoint::on_edge(w.clone(), l, q(rng.gen_range(1..8), 8)).unwrap_or(TreePoint::vertex(w))
    }

    fn random_ideal(&self, rng: &mut ChaCha8Rng) -> TreeIdeal {
        let (h, c) = (rng.gen_range(0..=3), rng.gen_range(1..=3));
        let head = random_tree_word(rng, h);
        let cycle = random_tree_word(rng, c);
        TreeIdeal::new(head, cycle).expect("nonempty cycle")
    }

    fn random_scalar(&self, rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> BigRational {
        let (a, b) = ((lo * 4.0).ceil() as i64, (hi * 4.0).floor() as i64);
        q(rng.gen_range(a..=b.max(a)), 4)
    }

    fn scalar(&self, x: f64) -> BigRational {
        q((x * 64.0).round() as i64, 64)
    }

    fn far_ideal(&self, xi: &TreeIdeal) -> TreeIdeal {
        let first = xi.letter_at(0);
        let other = Letter::ALL.into_iter().find(|&l| l != first).expect("four letters");
        TreeIdeal::power(other)
    }

    fn settle_index(&self) -> u32 {
        40
    }

    fn identity_gap(&self, g: &TreeIsometry) -> f64 {
        if g.word().is_empty() {
            0.0
        } else {
            1.0
        }
    }

    fn parse_point(&self, s: &str) -> Result<TreePoint, UsageError> {
        Ok(TreePoint::parse(s.trim())?)
    }

    fn parse_ideal(&self, s: &str) -> Result<TreeIdeal, UsageError> {
        Ok(TreeIdeal::parse(s.trim())?)
    }

    fn parse_scalar(&self, s: &str) -> Result<BigRational, UsageError> {
        let s = s.trim();
        let bad = || UsageError(format!("{s:?} is not a rational number p/q"));
        let (n, d) = s.split_once('/').unwrap_or((s, "1"));
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d == BigInt::from(0) {
            return Err(bad());
        }
        Ok(BigRational::new(n, d))
    }

    fn show_point(&self, p: &TreePoint) -> String {
        p.to_string()
    }

    fn show_ideal(&self, xi: &TreeIdeal) -> String {
        xi.to_string()
    }

    fn show_scalar(&self, x: &BigRational) -> String {
        x.to_string()
    }
}

/// Two ideal points at visual distance at least `min_gap` (in the model's
/// visual units), so the line between them passes near `o`.
pub fn random_ideal_pair<M: HarnessModel>(model: &M, rng: &mut ChaCha8Rng, min_gap: f64) -> (M::Ideal, M::Ideal) {
    loop {
        let (a, b) = (model.random_ideal(rng), model.random_ideal(rng));
        if model.visual_distance(&a, &b) >= min_gap {
            return (a, b);
        }
    }
}

/// A geodesic whose time 0 lies within `radius` of `o`.
pub fn random_geodesic<M: HarnessModel>(model: &M, rng: &mut ChaCha8Rng, radius: f64) -> ParamGeodesic<M> {
    let o = model.origin();
    loop {
        let (plus, minus) = random_ideal_pair(model, rng, 0.1);
        let offset = model.random_scalar(rng, -radius, radius);
        if let Ok(g) = ParamGeodesic::new(model, &plus, &minus, offset) {
            if let Ok(p) = g.base_point(model) {
                if model.distance(&p, &o).to_f64() <= radius {
                    return g;
                }
            }
        }
    }
}

pub fn random_product_point<M: HarnessModel>(model: &M, rng: &mut ChaCha8Rng, radius: f64) -> ProductPoint<M> {
    ProductPoint::new(model.random_point(rng, radius), model.random_point(rng, radius))
}

/// A regular boundary point with `|C| ≤ 3`, or a singular one a third of
/// the time.
pub fn random_boundary_point<M: HarnessModel>(model: &M, rng: &mut ChaCha8Rng) -> MaxBoundaryPoint<M> {
    if rng.gen_range(0..3) == 0 {
        let factor = if rng.gen_bool(0.5) { Factor::First } else { Factor::Second };
        MaxBoundaryPoint::Singular { factor, xi: model.random_ideal(rng) }
    } else {
        MaxBoundaryPoint::Regular {
            xi: model.random_ideal(rng),
            xi_prime: model.random_ideal(rng),
            c: model.random_scalar(rng, -3.0, 3.0),
        }
    }
}

/// A freely reduced word of exactly `len` letters.
pub fn random_word<M: Model>(group: &GroupPresentation<M>, rng: &mut ChaCha8Rng, len: usize) -> Vec<u8> {
    let mut w: Vec<u8> = Vec::with_capacity(len);
    while w.len() < len {
        let i = rng.gen_range(0..group.rank()) as u8;
        if w.last().map_or(true, |&l| group.inverse_index(l) != i) {
            w.push(i);
        }
    }
    w
}
