//! Cocompact groups acting on the model spaces, and the experiments run
//! against their diagonal action on `X × X ∪ Ω`.
//!
//! Two groups are bundled: the genus-two surface group generated by the
//! side pairings of the regular octagon with vertex angle π/4, acting on the
//! disk, and the free group on `a`, `b` acting on its Cayley tree. Both are
//! described by a [`GroupPresentation`]: a symmetric generating set whose
//! Dirichlet domain at `o` is cut out by the generators alone.
//!
//! Group elements are words over the generator indices. Enumeration walks
//! freely reduced words depth-first and never materializes the whole ball.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::PI;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Float;

use crate::disk::{DiskIsometry, PoincareDisk};
use crate::geodesic::{act, apply_isometry, geodesic_of, rho_tilde, ExtendedPoint, ParamGeodesic};
use crate::product::{isometry_power, MaxBoundaryPoint, ProductPoint};
use crate::space::Model;
use crate::tree::{CayleyTree, TreeIsometry, Word};
use crate::{Error, Result, Scalar};

pub const OCTAGON: &str = "octagon-genus2";
pub const FREE: &str = "free-rank2";

/// `arccosh(cot(π/8))`, the inradius of the regular octagon with vertex
/// angle π/4. Its side pairings translate by twice this.
pub fn octagon_inradius() -> f64 {
    Float::acosh(1.0 + Float::sqrt(2f64))
}

/// `arccosh(cot²(π/8))`, the distance from the octagon's center to a vertex.
pub fn octagon_circumradius() -> f64 {
    let c = 1.0 + Float::sqrt(2f64);
    Float::acosh(c * c)
}

/// A symmetric generating set with its relators and fundamental domain.
#[derive(Debug, Clone)]
pub struct GroupPresentation<M: Model> {
    name: &'static str,
    letters: Vec<char>,
    generators: Vec<M::Isometry>,
    inverse_of: Vec<u8>,
    relators: Vec<Vec<u8>>,
    domain_radius: M::Scalar,
}

impl<M: Model> GroupPresentation<M> {
    /// `inverse_of[i]` is the index of the inverse of generator `i`.
    pub fn new(
        name: &'static str,
        letters: Vec<char>,
        generators: Vec<M::Isometry>,
        inverse_of: Vec<u8>,
        relators: Vec<Vec<u8>>,
        domain_radius: M::Scalar,
    ) -> Self {
        GroupPresentation { name, letters, generators, inverse_of, relators, domain_radius }
    }

    pub fn name(&self) -> &'static str {
        self.name
    }

    pub fn generators(&self) -> &[M::Isometry] {
        &self.generators
    }

    pub fn letters(&self) -> &[char] {
        &self.letters
    }

    pub fn relators(&self) -> &[Vec<u8>] {
        &self.relators
    }

    pub fn inverse_index(&self, i: u8) -> u8 {
        self.inverse_of[i as usize]
    }

    /// Every point of the fundamental domain lies within this distance of `o`.
    pub fn domain_radius(&self) -> &M::Scalar {
        &self.domain_radius
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Letters to generator indices; `e` or the empty string is the identity.
    pub fn parse_word(&self, s: &str) -> Result<Vec<u8>> {
        let s = s.trim();
        if s == "e" {
            return Ok(Vec::new());
        }
        s.chars()
            .map(|c| {
                self.letters
                    .iter()
                    .position(|&l| l == c)
                    .map(|i| i as u8)
                    .ok_or_else(|| Error::Parse(alloc::format!("letter {c:?} is not a generator of {}", self.name)))
            })
            .collect()
    }

    pub fn word_string(&self, word: &[u8]) -> String {
        if word.is_empty() {
            return String::from("e");
        }
        word.iter().map(|&i| self.letters[i as usize]).collect()
    }

    /// Free reduction: cancels adjacent generator/inverse pairs.
    pub fn reduce(&self, word: &[u8]) -> Vec<u8> {
        let mut out: Vec<u8> = Vec::with_capacity(word.len());
        for &i in word {
            if out.last() == Some(&self.inverse_of[i as usize]) {
                out.pop();
            } else {
                out.push(i);
            }
        }
        out
    }

    pub fn inverse_word(&self, word: &[u8]) -> Vec<u8> {
        word.iter().rev().map(|&i| self.inverse_of[i as usize]).collect()
    }

    /// The isometry `g_{w₁} ∘ ⋯ ∘ g_{wₙ}`.
    pub fn evaluate(&self, model: &M, word: &[u8]) -> M::Isometry {
        word.iter().fold(model.identity(), |acc, &i| model.compose(&acc, &self.generators[i as usize]))
    }
}

/// The surface group of genus two: `g_k` translates by twice the inradius
/// towards angle `kπ/4`, so `g_{k+4} = g_k⁻¹`. Letters `a b c d` are
/// `g_0 … g_3` and their capitals the inverses.
pub fn octagon_group() -> GroupPresentation<PoincareDisk> {
    let length = 2.0 * octagon_inradius();
    let generators = (0..8).map(|k| DiskIsometry::translation_toward(k as f64 * PI / 4.0, length)).collect();
    let letters = vec!['a', 'b', 'c', 'd', 'A', 'B', 'C', 'D'];
    let inverse_of = (0..8).map(|k| (k + 4) % 8).collect();
    // g_0 g_3 g_6 g_1 g_4 g_7 g_2 g_5
    let relators = vec![vec![0, 3, 6, 1, 4, 7, 2, 5]];
    GroupPresentation::new(OCTAGON, letters, generators, inverse_of, relators, octagon_circumradius())
}

/// The free group on `a`, `b` acting on its Cayley tree by left
/// multiplication. Its fundamental domain is the star of `o` cut at the
/// midpoints of the four edges.
pub fn free_group_action() -> GroupPresentation<CayleyTree> {
    let letters = vec!['a', 'b', 'A', 'B'];
    let generators =
        letters.iter().map(|&c| TreeIsometry(Word::parse(&String::from(c)).expect("generator letter"))).collect();
    GroupPresentation::new(
        FREE,
        letters,
        generators,
        vec![2, 3, 0, 1],
        Vec::new(),
        BigRational::new(BigInt::from(1), BigInt::from(2)),
    )
}

/// A group element as one of the words representing it.
#[derive(Debug, Clone)]
pub struct Element<M: Model> {
    pub word: Vec<u8>,
    pub isometry: M::Isometry,
}

/// Calls `visit` on every freely reduced word of length `≤ max_len`, in
/// depth-first order, with its isometry. Words are not deduplicated.
pub fn for_each_word<M: Model, F>(model: &M, group: &GroupPresentation<M>, max_len: usize, mut visit: F) -> Result<()>
where
    F: FnMut(&[u8], &M::Isometry) -> Result<()>,
{
    let mut word = Vec::with_capacity(max_len);
    let mut stack = Vec::with_capacity(max_len + 1);
    stack.push(model.identity());
    walk(model, group, max_len, &mut word, &mut stack, &mut visit)
}

fn walk<M: Model, F>(
    model: &M,
    group: &GroupPresentation<M>,
    max_len: usize,
    word: &mut Vec<u8>,
    stack: &mut Vec<M::Isometry>,
    visit: &mut F,
) -> Result<()>
where
    F: FnMut(&[u8], &M::Isometry) -> Result<()>,
{
    visit(word, stack.last().expect("nonempty stack"))?;
    if word.len() == max_len {
        return Ok(());
    }
    for i in 0..group.rank() as u8 {
        if word.last().is_some_and(|&l| group.inverse_index(l) == i) {
            continue;
        }
        let next = model.compose(stack.last().expect("nonempty stack"), &group.generators[i as usize]);
        word.push(i);
        stack.push(next);
        walk(model, group, max_len, word, stack, visit)?;
        stack.pop();
        word.pop();
    }
    Ok(())
}

/// Distinct group elements of word length `≤ r`, each with a shortest word,
/// ordered by displacement of `o`.
pub fn ball<M: Model>(model: &M, group: &GroupPresentation<M>, r: usize) -> Result<Vec<Element<M>>> {
    let o = model.origin();
    let mut all: Vec<(f64, Element<M>)> = Vec::new();
    for_each_word(model, group, r, |w, g| {
        let key = model.distance_after(g, &o, &o)?.to_f64();
        all.push((key, Element { word: w.to_vec(), isometry: g.clone() }));
        Ok(())
    })?;
    all.sort_by(|x, y| {
        x.0.partial_cmp(&y.0).unwrap_or(core::cmp::Ordering::Equal).then(x.1.word.len().cmp(&y.1.word.len()))
    });
    Ok(dedup(model, all))
}

fn dedup<M: Model>(model: &M, sorted: Vec<(f64, Element<M>)>) -> Vec<Element<M>> {
    const KEY_WINDOW: f64 = 1e-6;
    let mut kept: Vec<(f64, Element<M>)> = Vec::new();
    for (key, e) in sorted {
        let duplicate = kept
            .iter()
            .rev()
            .take_while(|(k, _)| key - *k <= KEY_WINDOW)
            .any(|(_, f)| model.isometries_eq(&f.isometry, &e.isometry));
        if !duplicate {
            kept.push((key, e));
        }
    }
    kept.into_iter().map(|(_, e)| e).collect()
}

/// Whether every relator evaluates to the identity.
pub fn relators_hold<M: Model>(model: &M, group: &GroupPresentation<M>) -> bool {
    group.relators.iter().all(|r| model.isometries_eq(&group.evaluate(model, r), &model.identity()))
}

/// Whether `x` lies in the Dirichlet domain of the generators at `o`:
/// `d(x, o) ≤ d(x, g o)` for every generator `g`, up to the model's
/// algebraic tolerance.
pub fn in_domain<M: Model>(model: &M, group: &GroupPresentation<M>, x: &M::Point) -> Result<bool> {
    let o = model.origin();
    let here = model.distance(x, &o);
    for g in &group.generators {
        let there = model.distance_after(g, &o, x)?;
        if here > there && !model.scalars_eq(&here, &there) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Outcome of [`reduce_into_domain`]: `isometry · x` lies in the domain
/// when `reached` holds.
#[derive(Debug, Clone)]
pub struct Reduction<M: Model> {
    pub word: Vec<u8>,
    pub isometry: M::Isometry,
    pub point: M::Point,
    pub reached: bool,
}

/// Moves `x` towards `o` one generator at a time, always taking the
/// generator that brings it closest, for at most `max_steps` steps.
pub fn reduce_into_domain<M: Model>(
    model: &M,
    group: &GroupPresentation<M>,
    x: &M::Point,
    max_steps: usize,
) -> Result<Reduction<M>> {
    let o = model.origin();
    let mut word: Vec<u8> = Vec::new();
    let mut isometry = model.identity();
    let mut point = x.clone();
    loop {
        let here = model.distance(&point, &o);
        let mut best: Option<(u8, M::Scalar)> = None;
        for (i, g) in group.generators.iter().enumerate() {
            let d = model.distance_after(g, &point, &o)?;
            if best.as_ref().map_or(true, |(_, b)| d < *b) {
                best = Some((i as u8, d));
            }
        }
        let improves = matches!(&best, Some((_, d)) if *d < here && !model.scalars_eq(d, &here));
        if !improves {
            return Ok(Reduction { word, isometry, point, reached: true });
        }
        if word.len() == max_steps {
            return Ok(Reduction { word, isometry, point, reached: false });
        }
        let (i, _) = best.expect("some generator");
        let g = &group.generators[i as usize];
        point = model.apply(g, &point)?;
        isometry = model.compose(g, &isometry);
        word.insert(0, i);
    }
}

/// One row of an orbit sample: the `n`-th prefix `γ_n` of a word applied
/// to a seed `(x, y)`.
#[derive(Debug, Clone)]
pub struct OrbitSample<M: Model> {
    pub n: usize,
    pub xi_first: M::Ideal,
    pub xi_second: M::Ideal,
    pub visual_gap: f64,
    /// `d(γ_n x, o) − d(γ_n y, o)`.
    pub c: M::Scalar,
    /// Whether `|c| ≤ d(x, y)`.
    pub within_bound: bool,
}

/// Boundary estimates of `(γ_n x, γ_n y)` for every prefix `γ_n` of `word`.
pub fn limit_set_sample<M: Model>(
    model: &M,
    group: &GroupPresentation<M>,
    seed: &ProductPoint<M>,
    word: &[u8],
) -> Result<Vec<OrbitSample<M>>> {
    let o = model.origin();
    let bound = model.distance(&seed.first, &seed.second);
    let mut g = model.identity();
    let mut out = Vec::with_capacity(word.len());
    for (k, &i) in word.iter().enumerate() {
        g = model.compose(&g, &group.generators[i as usize]);
        out.push(orbit_sample(model, &g, seed, &bound, &o, k + 1)?);
    }
    Ok(out)
}

/// [`limit_set_sample`] along the powers `u, u², …, uᴺ` of one element.
pub fn power_sample<M: Model>(
    model: &M,
    u: &M::Isometry,
    seed: &ProductPoint<M>,
    powers: &[u32],
) -> Result<Vec<OrbitSample<M>>> {
    let o = model.origin();
    let bound = model.distance(&seed.first, &seed.second);
    powers.iter().map(|&n| orbit_sample(model, &isometry_power(model, u, n), seed, &bound, &o, n as usize)).collect()
}

fn orbit_sample<M: Model>(
    model: &M,
    g: &M::Isometry,
    seed: &ProductPoint<M>,
    bound: &M::Scalar,
    o: &M::Point,
    n: usize,
) -> Result<OrbitSample<M>> {
    let xi_first = model.radial_endpoint_after(g, &seed.first)?;
    let xi_second = model.radial_endpoint_after(g, &seed.second)?;
    let c = model.distance_after(g, &seed.first, o)? - model.distance_after(g, &seed.second, o)?;
    let size = c.abs();
    let within_bound = size <= *bound || model.scalars_eq(&size, bound);
    Ok(OrbitSample {
        n,
        visual_gap: model.visual_distance(&xi_first, &xi_second),
        xi_first,
        xi_second,
        c,
        within_bound,
    })
}

/// A seed `(x, y)` on the ray from `o` to `xi_prime` with
/// `β^o_{ξ′}(x) − β^o_{ξ′}(y) = c`. If `γ_n → ξ` and `γ_n⁻¹ → ξ′`, the orbit
/// `(γ_n x, γ_n y)` converges to `Regular(ξ, ξ, c)`.
pub fn target_seed<M: Model>(model: &M, xi_prime: &M::Ideal, c: &M::Scalar) -> Result<ProductPoint<M>> {
    let o = model.origin();
    let t = c.abs();
    let s = t.clone() + c.clone();
    Ok(ProductPoint::new(model.ray_point(&o, xi_prime, &t)?, model.ray_point(&o, xi_prime, &s)?))
}

/// The seed realizing `Regular(ξ, ξ, c)` through the powers of `u`, where
/// `ξ` is the attracting fixed point of `u`. Returns the seed and `ξ`.
pub fn realize_target<M: Model>(model: &M, u: &M::Isometry, c: &M::Scalar) -> Result<(ProductPoint<M>, M::Ideal)> {
    let (attract, repel) = model.fixed_points(u).ok_or(Error::NotDivergent)?;
    Ok((target_seed(model, &repel, c)?, attract))
}

/// `γ · b` for `b ∈ Ω`, computed by moving the geodesic of `b`.
pub fn act_on_boundary<M: Model>(
    model: &M,
    gamma: &M::Isometry,
    b: &MaxBoundaryPoint<M>,
) -> Result<MaxBoundaryPoint<M>> {
    let g = geodesic_of(model, b)?;
    apply_isometry(model, gamma, &g)?.to_boundary(model)
}

/// A compact subset of `X × X ∪ Ω`: the closed `d_max`-ball of `radius`
/// about `O` together with finitely many points of Ω.
#[derive(Debug, Clone)]
pub struct CompactRegion<M: Model> {
    pub radius: M::Scalar,
    pub ideal: Vec<ParamGeodesic<M>>,
}

/// Whether `ρ̃(K)` meets `γ ρ̃(K)`. The projection of the ball is the ball
/// of the same radius about `o` and each geodesic projects to `g(0)`.
pub fn region_meets_translate<M: Model>(model: &M, region: &CompactRegion<M>, gamma: &M::Isometry) -> Result<bool> {
    let o = model.origin();
    let r = &region.radius;
    let le = |d: M::Scalar, bound: &M::Scalar| d <= *bound || model.scalars_eq(&d, bound);
    if le(model.distance_after(gamma, &o, &o)?, &(r.clone() + r.clone())) {
        return Ok(true);
    }
    let points: Vec<M::Point> = region.ideal.iter().map(|g| g.base_point(model)).collect::<Result<_>>()?;
    for s in &points {
        if le(model.distance_after(gamma, s, &o)?, r) || le(model.distance_after(gamma, &o, s)?, r) {
            return Ok(true);
        }
        for t in &points {
            if model.scalars_eq(&model.distance_after(gamma, s, t)?, &M::Scalar::zero()) {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// Elements `γ` with `γK ∩ K ≠ ∅` found among words of length `≤ r` and
/// `≤ r + 2`.
#[derive(Debug, Clone)]
pub struct DiscontinuityReport<M: Model> {
    pub radius: usize,
    pub survivors: Vec<Element<M>>,
    pub survivors_wider: usize,
    /// The survivor sets at `r` and `r + 2` coincide.
    pub stable: bool,
    pub words_examined: u64,
}

pub fn proper_discontinuity_report<M: Model>(
    model: &M,
    group: &GroupPresentation<M>,
    region: &CompactRegion<M>,
    r: usize,
) -> Result<DiscontinuityReport<M>> {
    let o = model.origin();
    let mut narrow = Vec::new();
    let mut wide = Vec::new();
    let mut words_examined = 0u64;
    for_each_word(model, group, r + 2, |w, g| {
        words_examined += 1;
        if region_meets_translate(model, region, g)? {
            let key = model.distance_after(g, &o, &o)?.to_f64();
            let e = Element { word: w.to_vec(), isometry: g.clone() };
            if w.len() <= r {
                narrow.push((key, e.clone()));
            }
            wide.push((key, e));
        }
        Ok(())
    })?;
    let by_key = |x: &(f64, Element<M>), y: &(f64, Element<M>)| {
        x.0.partial_cmp(&y.0).unwrap_or(core::cmp::Ordering::Equal).then(x.1.word.len().cmp(&y.1.word.len()))
    };
    narrow.sort_by(by_key);
    wide.sort_by(by_key);
    let survivors = dedup(model, narrow);
    let wider = dedup(model, wide);
    let stable = survivors.len() == wider.len()
        && wider.iter().all(|e| survivors.iter().any(|f| model.isometries_eq(&e.isometry, &f.isometry)));
    Ok(DiscontinuityReport { radius: r, survivors_wider: wider.len(), survivors, stable, words_examined })
}

/// Outcome of [`cocompactness_check`].
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CocompactnessOutcome {
    pub samples: usize,
    pub failures: usize,
    /// Longest word used by a successful sample.
    pub longest_word: usize,
}

/// For each sample `p`, looks for `γ` of word length `≤ r_max` with
/// `ρ̃(γ p) ∈ K`, where `K` is the fundamental domain. The search first
/// moves `ρ̃(p)` into `K` through the action on `X`, then confirms the
/// result by acting on `p` itself.
pub fn cocompactness_check<M: Model>(
    model: &M,
    group: &GroupPresentation<M>,
    samples: &[ExtendedPoint<M>],
    r_max: usize,
) -> Result<CocompactnessOutcome> {
    let mut out = CocompactnessOutcome { samples: samples.len(), ..Default::default() };
    for p in samples {
        match cover_sample(model, group, p, r_max)? {
            Some(len) => out.longest_word = out.longest_word.max(len),
            None => out.failures += 1,
        }
    }
    Ok(out)
}

/// Word length of an element moving `ρ̃(p)` into the fundamental domain, if
/// one of length `≤ r_max` is found.
pub fn cover_sample<M: Model>(
    model: &M,
    group: &GroupPresentation<M>,
    p: &ExtendedPoint<M>,
    r_max: usize,
) -> Result<Option<usize>> {
    let x = rho_tilde(model, p)?;
    let red = reduce_into_domain(model, group, &x, r_max)?;
    if !red.reached {
        return Ok(None);
    }
    let moved = rho_tilde(model, &act(model, &red.isometry, p)?)?;
    Ok(in_domain(model, group, &moved)?.then_some(red.word.len()))
}

/// Whether every point is carried into the fundamental domain by the
/// inverse of some element of `candidates`; returns the uncovered points.
pub fn uncovered<M: Model>(
    model: &M,
    group: &GroupPresentation<M>,
    candidates: &[Element<M>],
    points: &[M::Point],
) -> Result<Vec<M::Point>> {
    let inverses: Vec<M::Isometry> = candidates.iter().map(|e| model.inverse(&e.isometry)).collect();
    let mut out = Vec::new();
    'points: for x in points {
        for g in &inverses {
            if in_domain(model, group, &model.apply(g, x)?)? {
                continue 'points;
            }
        }
        out.push(x.clone());
    }
    Ok(out)
}
