//! The Cayley tree of the free group `F₂ = ⟨a, b⟩` with unit edges, in exact
//! rational arithmetic.
//!
//! A point is addressed by the reduced word of the vertex at its start plus,
//! for points inside an edge, the letter leading away from `o` and a rational
//! offset in `(0, 1)`. Reading the letters of that address from `o` gives the
//! path from `o` to the point, so every metric quantity reduces to a
//! longest-common-prefix computation.
//!
//! Ideal points are eventually periodic reduced words `head · cycle^∞`, kept in
//! a canonical form (primitive cycle, shortest head) so that equality is
//! structural.

mod word;

use alloc::collections::VecDeque;
use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use word::{Letter, Word};

use crate::space::Model;
use crate::{Error, Extended, Result};

fn rational(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Parse(alloc::format!("bad rational {s:?}")))
}

/// A point of the tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TreePoint {
    vertex: Word,
    step: Option<(Letter, BigRational)>,
}

impl TreePoint {
    pub fn vertex(word: Word) -> TreePoint {
        TreePoint { vertex: word, step: None }
    }

    pub fn origin() -> TreePoint {
        TreePoint::vertex(Word::identity())
    }

    /// The point at `offset ∈ [0, 1)` along the edge from `vertex` to
    /// `vertex · direction`, where `direction` must lead away from `o`.
    pub fn on_edge(vertex: Word, direction: Letter, offset: BigRational) -> Result<TreePoint> {
        if vertex.last() == Some(direction.inverse()) {
            return Err(Error::InvalidAddress("direction cancels the last letter".to_string()));
        }
        if offset.is_negative() || offset >= BigRational::one() {
            return Err(Error::InvalidAddress("offset must lie in [0, 1)".to_string()));
        }
        if offset.is_zero() {
            return Ok(TreePoint::vertex(vertex));
        }
        Ok(TreePoint { vertex, step: Some((direction, offset)) })
    }

    /// The point at rational distance `depth` from `o` along `letters`,
    /// which must be reduced and at least `ceil(depth)` long.
    fn along(letters: &[Letter], depth: &BigRational) -> TreePoint {
        let whole = depth.floor();
        let n: usize = whole.to_integer().try_into().unwrap_or(0);
        let frac = depth - &whole;
        let vertex = Word::from_reduced(letters[..n].to_vec()).unwrap_or_default();
        if frac.is_zero() {
            TreePoint::vertex(vertex)
        } else {
            TreePoint { vertex, step: Some((letters[n], frac)) }
        }
    }

    pub fn base_vertex(&self) -> &Word {
        &self.vertex
    }

    pub fn step(&self) -> Option<&(Letter, BigRational)> {
        self.step.as_ref()
    }

    /// Letters of the path from `o`, including the partially travelled edge.
    pub fn path(&self) -> Vec<Letter> {
        let mut v = self.vertex.letters().to_vec();
        if let Some((l, _)) = &self.step {
            v.push(*l);
        }
        v
    }

    /// `d(o, x)`.
    pub fn depth(&self) -> BigRational {
        let mut d = rational(self.vertex.len());
        if let Some((_, t)) = &self.step {
            d += t;
        }
        d
    }

    /// Parses `w` for a vertex or `w+l@p/q` for a point inside an edge.
    pub fn parse(s: &str) -> Result<TreePoint> {
        match s.split_once('+') {
            None => Ok(TreePoint::vertex(Word::parse(s)?)),
            Some((w, rest)) => {
                let (l, off) =
                    rest.split_once('@').ok_or_else(|| Error::Parse(alloc::format!("missing '@' in {s:?}")))?;
                let mut chars = l.trim().chars();
                let letter = match (chars.next().and_then(Letter::from_char), chars.next()) {
                    (Some(l), None) => l,
                    _ => return Err(Error::Parse(alloc::format!("bad direction in {s:?}"))),
                };
                TreePoint::on_edge(Word::parse(w)?, letter, parse_rational(off)?)
            }
        }
    }
}

impl fmt::Display for TreePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertex)?;
        if let Some((l, t)) = &self.step {
            write!(f, "+{}@{}", l.to_char(), t)?;
        }
        Ok(())
    }
}

/// The ideal point `head · cycle^∞`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeIdeal {
    head: Word,
    cycle: Word,
}

impl TreeIdeal {
    /// `head · cycle^∞` for arbitrary words, brought to canonical form.
    pub fn new(head: Word, cycle: Word) -> Result<TreeIdeal> {
        if cycle.is_empty() {
            return Err(Error::InvalidAddress("ideal point needs a nonempty cycle".to_string()));
        }
        let (u, c) = cycle.cyclic_decomposition();
        let mut head = head.mul(&u);
        let mut c = c;
        while head.last().is_some() && head.last() == c.first().map(Letter::inverse) {
            head = head.prefix(head.len() - 1);
            c = c.rotate_left();
        }
        Ok(TreeIdeal::canonical(head, c))
    }

    /// Assumes `head · cycle^∞` is already reduced.
    fn canonical(mut head: Word, cycle: Word) -> TreeIdeal {
        let mut cycle = cycle.primitive_root();
        while head.last().is_some() && head.last() == cycle.last() {
            head = head.prefix(head.len() - 1);
            cycle = cycle.rotate_right();
        }
        TreeIdeal { head, cycle }
    }

    /// `l^∞`.
    pub fn power(l: Letter) -> TreeIdeal {
        TreeIdeal { head: Word::identity(), cycle: Word::reduce([l]) }
    }

    pub fn head(&self) -> &Word {
        &self.head
    }

    pub fn cycle(&self) -> &Word {
        &self.cycle
    }

    pub fn letter_at(&self, i: usize) -> Letter {
        let h = self.head.letters();
        if i < h.len() {
            h[i]
        } else {
            let c = self.cycle.letters();
            c[(i - h.len()) % c.len()]
        }
    }

    /// First `n` letters.
    pub fn prefix(&self, n: usize) -> Vec<Letter> {
        (0..n).map(|i| self.letter_at(i)).collect()
    }

    /// Length of the common prefix with a finite path.
    pub fn common_prefix_with(&self, letters: &[Letter]) -> usize {
        letters.iter().enumerate().take_while(|(i, l)| self.letter_at(*i) == **l).count()
    }

    /// Length of the common prefix of two ideal points, `None` if they are
    /// equal.
    pub fn common_prefix(&self, other: &TreeIdeal) -> Option<usize> {
        if self == other {
            return None;
        }
        // two distinct eventually periodic words differ within this bound
        let bound = self.head.len().max(other.head.len()) + self.cycle.len() + other.cycle.len();
        (0..=bound).find(|&i| self.letter_at(i) != other.letter_at(i))
    }

    /// Parses `head,(cycle)`, e.g. `,(a)` for `a^∞` or `a,(b)` for `a b^∞`.
    pub fn parse(s: &str) -> Result<TreeIdeal> {
        let bad = || Error::Parse(alloc::format!("ideal point {s:?} is not of the form head,(cycle)"));
        let (head, rest) = s.split_once(',').ok_or_else(bad)?;
        let cycle = rest.trim().strip_prefix('(').and_then(|r| r.strip_suffix(')')).ok_or_else(bad)?;
        let head = Word::parse(head)?;
        let cycle = Word::parse(cycle)?;
        if cycle.is_empty() {
            return Err(bad());
        }
        TreeIdeal::new(head, cycle)
    }
}

impl fmt::Display for TreeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},({})", self.head.letters_string(), self.cycle.letters_string())
    }
}

/// Left multiplication by a reduced word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TreeIsometry(pub Word);

impl TreeIsometry {
    pub fn word(&self) -> &Word {
        &self.0
    }
}

/// The bi-infinite path from `minus` to `plus`, through the vertex where
/// their words diverge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TreeLine {
    plus: TreeIdeal,
    minus: TreeIdeal,
    split: usize,
}

impl TreeLine {
    /// The vertex of the line nearest `o`.
    pub fn base(&self) -> TreePoint {
        TreePoint::vertex(Word::from_reduced(self.plus.prefix(self.split)).unwrap_or_default())
    }
}

/// The Cayley tree of `F₂`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct CayleyTree;

impl CayleyTree {
    /// `(x|ξ)_o`: depth at which the path to `x` leaves the ray to `ξ`.
    pub fn gromov_product_at_origin(&self, x: &TreePoint, xi: &TreeIdeal) -> BigRational {
        let k = rational(xi.common_prefix_with(&x.path()));
        let depth = x.depth();
        if k < depth {
            k
        } else {
            depth
        }
    }

    fn busemann_at_origin(&self, xi: &TreeIdeal, x: &TreePoint) -> BigRational {
        x.depth() - self.gromov_product_at_origin(x, xi) * BigInt::from(2)
    }

    /// `min(common prefix of paths, depth x, depth y)`.
    fn shared_depth(&self, x: &TreePoint, y: &TreePoint) -> BigRational {
        let (px, py) = (x.path(), y.path());
        let k = px.iter().zip(py.iter()).take_while(|(a, b)| a == b).count();
        let mut s = rational(k);
        for d in [x.depth(), y.depth()] {
            if d < s {
                s = d;
            }
        }
        s
    }
}

impl Model for CayleyTree {
    type Scalar = BigRational;
    type Point = TreePoint;
    type Ideal = TreeIdeal;
    type Isometry = TreeIsometry;
    type Line = TreeLine;

    const NAME: &'static str = "tree";

    fn origin(&self) -> TreePoint {
        TreePoint::origin()
    }

    fn distance(&self, x: &TreePoint, y: &TreePoint) -> BigRational {
        x.depth() + y.depth() - self.shared_depth(x, y) * BigInt::from(2)
    }

    fn points_eq(&self, x: &TreePoint, y: &TreePoint) -> bool {
        x == y
    }

    fn ideals_eq(&self, a: &TreeIdeal, b: &TreeIdeal) -> bool {
        a == b
    }

    fn scalars_eq(&self, a: &BigRational, b: &BigRational) -> bool {
        a == b
    }

    fn busemann(&self, normalizer: &TreePoint, xi: &TreeIdeal, x: &TreePoint) -> BigRational {
        self.busemann_at_origin(xi, x) - self.busemann_at_origin(xi, normalizer)
    }

    /// Distance from `base` to the line joining the two ideal points, via
    /// `(ξ|η)_p = ½ (β^v_ξ(p) + β^v_η(p))` for `v` on that line.
    fn gromov_product_ideal(&self, xi: &TreeIdeal, eta: &TreeIdeal, base: &TreePoint) -> Extended<BigRational> {
        let Some(k) = xi.common_prefix(eta) else {
            return Extended::Infinite;
        };
        let v = TreePoint::vertex(Word::from_reduced(xi.prefix(k)).unwrap_or_default());
        let sum = self.busemann(&v, xi, base) + self.busemann(&v, eta, base);
        Extended::Finite(sum / BigInt::from(2))
    }

    fn segment_point(&self, x: &TreePoint, y: &TreePoint, t: &BigRational) -> TreePoint {
        let total = self.distance(x, y);
        let t = if t.is_negative() {
            BigRational::zero()
        } else if *t > total {
            total
        } else {
            t.clone()
        };
        let shared = self.shared_depth(x, y);
        let up = x.depth() - &shared;
        if t <= up {
            TreePoint::along(&x.path(), &(x.depth() - t))
        } else {
            TreePoint::along(&y.path(), &(shared + t - up))
        }
    }

    fn ray_point(&self, origin: &TreePoint, xi: &TreeIdeal, t: &BigRational) -> Result<TreePoint> {
        if t.is_negative() {
            return Err(Error::ParameterOutOfRange);
        }
        let shared = self.gromov_product_at_origin(origin, xi);
        let up = origin.depth() - &shared;
        if *t <= up {
            Ok(TreePoint::along(&origin.path(), &(origin.depth() - t)))
        } else {
            let depth = shared + t - up;
            let n: usize = depth.ceil().to_integer().try_into().map_err(|_| Error::ParameterOutOfRange)?;
            Ok(TreePoint::along(&xi.prefix(n), &depth))
        }
    }

    fn geodesic_line(&self, plus: &TreeIdeal, minus: &TreeIdeal) -> Result<TreeLine> {
        let split = plus.common_prefix(minus).ok_or(Error::DegenerateLine)?;
        Ok(TreeLine { plus: plus.clone(), minus: minus.clone(), split })
    }

    fn line_point(&self, line: &TreeLine, t: &BigRational) -> Result<TreePoint> {
        let (end, s) = if t.is_negative() { (&line.minus, -t) } else { (&line.plus, t.clone()) };
        let depth = rational(line.split) + s;
        let n: usize = depth.ceil().to_integer().try_into().map_err(|_| Error::ParameterOutOfRange)?;
        Ok(TreePoint::along(&end.prefix(n), &depth))
    }

    fn line_ends(&self, line: &TreeLine) -> (TreeIdeal, TreeIdeal) {
        (line.plus.clone(), line.minus.clone())
    }

    /// `2^{−(ξ|η)_o}`.
    fn visual_distance(&self, a: &TreeIdeal, b: &TreeIdeal) -> f64 {
        match a.common_prefix(b) {
            None => 0.0,
            Some(k) => num_traits::Float::powi(2f64, -(k.min(2000) as i32)),
        }
    }

    fn visual_gap(&self, x: &TreePoint, xi: &TreeIdeal) -> f64 {
        let k = crate::Scalar::to_f64(&self.gromov_product_at_origin(x, xi));
        num_traits::Float::powf(2f64, -k)
    }

    fn radial_endpoint(&self, x: &TreePoint) -> TreeIdeal {
        let path = x.path();
        match path.last() {
            None => TreeIdeal::power(Letter::A),
            Some(&l) => TreeIdeal::canonical(Word::reduce(path.iter().copied()), Word::reduce([l])),
        }
    }

    /// Points at half-integer depths up to `radius`, in breadth-first order.
    fn standard_points(&self, radius: &BigRational, count: usize) -> Vec<TreePoint> {
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let mut out = Vec::new();
        let mut queue = VecDeque::from([TreePoint::origin()]);
        while let Some(p) = queue.pop_front() {
            if out.len() == count {
                break;
            }
            out.push(p.clone());
            let nexts: Vec<TreePoint> = match &p.step {
                Some((l, _)) => Vec::from([TreePoint::vertex(p.vertex.push(*l))]),
                None => Letter::ALL
                    .iter()
                    .filter(|l| p.vertex.last() != Some(l.inverse()))
                    .map(|l| TreePoint { vertex: p.vertex.clone(), step: Some((*l, half.clone())) })
                    .collect(),
            };
            queue.extend(nexts.into_iter().filter(|q| q.depth() <= *radius));
        }
        out
    }

    fn identity(&self) -> TreeIsometry {
        TreeIsometry(Word::identity())
    }

    fn compose(&self, g: &TreeIsometry, h: &TreeIsometry) -> TreeIsometry {
        TreeIsometry(g.0.mul(&h.0))
    }

    fn inverse(&self, g: &TreeIsometry) -> TreeIsometry {
        TreeIsometry(g.0.inverse())
    }

    fn isometries_eq(&self, g: &TreeIsometry, h: &TreeIsometry) -> bool {
        g == h
    }

    fn apply(&self, g: &TreeIsometry, x: &TreePoint) -> Result<TreePoint> {
        let u = g.0.mul(&x.vertex);
        match &x.step {
            None => Ok(TreePoint::vertex(u)),
            Some((l, t)) => {
                if u.last() == Some(l.inverse()) {
                    // the image edge points back towards o
                    let base = u.prefix(u.len() - 1);
                    Ok(TreePoint { vertex: base, step: Some((l.inverse(), BigRational::one() - t)) })
                } else {
                    Ok(TreePoint { vertex: u, step: Some((*l, t.clone())) })
                }
            }
        }
    }

    fn apply_ideal(&self, g: &TreeIsometry, xi: &TreeIdeal) -> TreeIdeal {
        let head = g.0.mul(&xi.head);
        TreeIdeal::new(head, xi.cycle.clone()).unwrap_or_else(|_| xi.clone())
    }

    fn fixed_points(&self, g: &TreeIsometry) -> Option<(TreeIdeal, TreeIdeal)> {
        if g.0.is_empty() {
            return None;
        }
        let (u, c) = g.0.cyclic_decomposition();
        let attract = TreeIdeal::new(u.clone(), c.clone()).ok()?;
        let repel = TreeIdeal::new(u, c.inverse()).ok()?;
        Some((attract, repel))
    }
}
