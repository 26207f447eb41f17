//! The verification catalog: one check per invariant, each drawing its
//! inputs from its own seeded stream.

use std::time::Instant;

use horobound::geodesic::{
    converges_to, f, f_inverse, geodesic_of, h_map, hopf, project_diagonal, project_located, ExtendedPoint,
};
use horobound::group::{
    act_on_boundary, ball, cocompactness_check, limit_set_sample, power_sample, proper_discontinuity_report,
    realize_target, uncovered, CompactRegion, GroupPresentation,
};
use horobound::product::{
    classify, empirical_limit_check, horofunction_eval, in_omega, isometry_power, phi_reg, phi_reg_inverse, phi_sing,
    phi_sing_inverse, standard_grid, Case, MaxBoundaryPoint, ProductPoint, StructuredSequence,
};
use horobound::space::{gromov_product, midpoint, ray, segment};
use horobound::{Error, Extended, Model, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::RunConfig;
use crate::report::Record;
use crate::sampling::{
    random_boundary_point, random_geodesic, random_ideal_pair, random_product_point, random_word, rng_for, HarnessModel,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Both,
    Disk,
    Tree,
}

#[derive(Debug, Clone, Copy)]
pub struct CheckEntry {
    pub name: &'static str,
    pub anchor: &'static str,
    pub scope: Scope,
}

const fn entry(name: &'static str, scope: Scope, anchor: &'static str) -> CheckEntry {
    CheckEntry { name, anchor, scope }
}

use Scope::{Both, Disk, Tree};

pub const CATALOG: &[CheckEntry] = &[
    entry("disk.busemann_closed_form", Disk, "the Busemann function is the limit of d(x, c(T)) − T along a ray"),
    entry("disk.line_gromov_zero", Disk, "(ξ₊|ξ₋)_p = 0 for every point p on the line from ξ₋ to ξ₊"),
    entry("geodesic.bijection", Both, "f is a bijection from parametrized geodesics onto Ω"),
    entry("geodesic.commuting_diagram", Both, "h ∘ Hopf = φ_reg ∘ f on parametrized geodesics"),
    entry(
        "geodesic.gromov_identity",
        Both,
        "β^o_{g(−∞)}(g(0)) − β^o_{g(+∞)}(g(0)) = −2(β^o_{g(+∞)}(g(0)) + (g(+∞)|g(−∞))_o)",
    ),
    entry(
        "geodesic.midpoint_optimality",
        Both,
        "the nearest diagonal point to (x, y) for d_max is (m, m), m the midpoint",
    ),
    entry("geodesic.rho_continuity", Both, "the extended diagonal projection is continuous at Ω"),
    entry("geodesic.segment_limit", Both, "segments from g(−n) to g(n) converge to the geodesic g"),
    entry("group.cocompactness", Both, "translates of the preimage of the diagonal window cover X × X ∪ Ω"),
    entry("group.domain_cover", Both, "translates of the fundamental domain cover a ball about o"),
    entry("group.equivariance", Both, "f(γ g) = γ f(g) for every group element γ"),
    entry("group.hyperbolic_generators", Both, "every generator is a hyperbolic isometry"),
    entry("group.isometry_action", Both, "the group acts by isometries"),
    entry("group.limit_set_merge", Both, "limits of diagonal orbits lie over the diagonal of the boundary"),
    entry("group.limit_set_targets", Both, "every (ξ, ξ, C) is the limit of a diagonal orbit"),
    entry("group.omega_preserved", Both, "the group permutes Ω"),
    entry("group.proper_discontinuity", Both, "a compact set meets only finitely many of its translates"),
    entry("group.relators", Both, "each relator evaluates to the identity, up to sign in SU(1,1)"),
    entry("product.classification", Both, "every divergent sequence in X × X has one of three limit behaviours"),
    entry("product.distinctness", Both, "distinct regular coordinates give distinct horofunctions"),
    entry("product.orbit_bound", Both, "|d(γx, o) − d(γy, o)| ≤ d(x, y)"),
    entry("product.phi_round_trips", Both, "φ_reg and φ_sing are bijective coordinate charts"),
    entry("space.busemann_antisymmetry", Both, "β^o_ξ(y) = −β^y_ξ(o)"),
    entry("space.busemann_lipschitz", Both, "Busemann functions are 1-Lipschitz"),
    entry("space.busemann_sequence_limit", Both, "β^o_ξ(y) = lim d(x_n, y) − d(x_n, o) as x_n → ξ"),
    entry("space.gromov_ideal_continuity", Both, "(x_i|y_j)_o → (ξ|ξ′)_o as x_i → ξ and y_j → ξ′"),
    entry("space.midpoint_oracle", Both, "the midpoint minimizes max{d(x, a), d(y, a)}"),
    entry("space.unit_speed", Both, "segments and rays are unit-speed geodesics"),
    entry("tree.busemann_stabilization", Tree, "the tree Busemann function equals d(x, c(T)) − T past the merge point"),
    entry("tree.gromov_segment_distance", Tree, "(x|y)_z is the distance from z to the segment [x, y]"),
];

/// Catalog entries that apply to the configured model, in name order.
pub fn catalog_for(cfg: &RunConfig) -> Vec<&'static CheckEntry> {
    use crate::config::ModelKind;
    let mut out: Vec<_> = CATALOG
        .iter()
        .filter(|s| matches!((s.scope, cfg.model), (Both, _) | (Disk, ModelKind::Disk) | (Tree, ModelKind::Tree)))
        .collect();
    out.sort_by_key(|s| s.name);
    out
}

pub struct Ctx<M: HarnessModel> {
    pub model: M,
    pub group: GroupPresentation<M>,
    pub cfg: RunConfig,
}

impl<M: HarnessModel> Ctx<M> {
    pub fn new(cfg: &RunConfig) -> Self {
        let model = M::build(cfg);
        let group = model.group();
        Ctx { model, group, cfg: cfg.clone() }
    }

    fn n(&self, nominal: usize) -> usize {
        self.cfg.scaled(nominal)
    }

    fn tol(&self) -> f64 {
        M::threshold(self.cfg.tol)
    }
}

/// Runs every applicable check in parallel; the records come back sorted.
pub fn run_all<M: HarnessModel>(ctx: &Ctx<M>) -> Vec<Record> {
    catalog_for(&ctx.cfg).par_iter().map(|s| run_one(ctx, s)).collect()
}

pub fn run_one<M: HarnessModel>(ctx: &Ctx<M>, entry: &CheckEntry) -> Record {
    let mut rng = rng_for(ctx.cfg.seed, entry.name);
    let start = Instant::now();
    let mut rec =
        dispatch(ctx, entry, &mut rng).unwrap_or_else(|e| Record::failed(entry.name, entry.anchor, e.to_string()));
    if ctx.cfg.timings {
        rec.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    rec
}

type Out = Result<Record, Error>;

fn dispatch<M: HarnessModel>(ctx: &Ctx<M>, s: &CheckEntry, rng: &mut ChaCha8Rng) -> Out {
    let (name, anchor) = (s.name, s.anchor);
    match name {
        "disk.busemann_closed_form" => busemann_closed_form(ctx, rng, name, anchor),
        "disk.line_gromov_zero" => line_gromov_zero(ctx, rng, name, anchor),
        "geodesic.bijection" => bijection(ctx, rng, name, anchor),
        "geodesic.commuting_diagram" => commuting_diagram(ctx, rng, name, anchor),
        "geodesic.gromov_identity" => gromov_identity(ctx, rng, name, anchor),
        "geodesic.midpoint_optimality" => midpoint_optimality(ctx, rng, name, anchor),
        "geodesic.rho_continuity" => rho_continuity(ctx, rng, name, anchor),
        "geodesic.segment_limit" => segment_limit(ctx, rng, name, anchor),
        "group.cocompactness" => cocompactness(ctx, rng, name, anchor),
        "group.domain_cover" => domain_cover(ctx, name, anchor),
        "group.equivariance" => equivariance(ctx, rng, name, anchor),
        "group.hyperbolic_generators" => hyperbolic_generators(ctx, name, anchor),
        "group.isometry_action" => isometry_action(ctx, rng, name, anchor),
        "group.limit_set_merge" => limit_set_merge(ctx, rng, name, anchor),
        "group.limit_set_targets" => limit_set_targets(ctx, rng, name, anchor),
        "group.omega_preserved" => omega_preserved(ctx, rng, name, anchor),
        "group.proper_discontinuity" => proper_discontinuity(ctx, name, anchor),
        "group.relators" => relators(ctx, name, anchor),
        "product.classification" => classification(ctx, rng, name, anchor),
        "product.distinctness" => distinctness(ctx, rng, name, anchor),
        "product.orbit_bound" => orbit_bound(ctx, rng, name, anchor),
        "product.phi_round_trips" => phi_round_trips(ctx, rng, name, anchor),
        "space.busemann_antisymmetry" => busemann_antisymmetry(ctx, rng, name, anchor),
        "space.busemann_lipschitz" => busemann_lipschitz(ctx, rng, name, anchor),
        "space.busemann_sequence_limit" => busemann_sequence_limit(ctx, rng, name, anchor),
        "space.gromov_ideal_continuity" => gromov_ideal_continuity(ctx, rng, name, anchor),
        "space.midpoint_oracle" => midpoint_oracle(ctx, rng, name, anchor),
        "space.unit_speed" => unit_speed(ctx, rng, name, anchor),
        "tree.busemann_stabilization" => busemann_stabilization(ctx, rng, name, anchor),
        "tree.gromov_segment_distance" => gromov_segment_distance(ctx, rng, name, anchor),
        other => Err(Error::Parse(format!("no check named {other}"))),
    }
}

fn f64_of<S: Scalar>(x: S) -> f64 {
    x.to_f64()
}

fn abs_diff<S: Scalar>(a: S, b: S) -> f64 {
    (a - b).abs().to_f64()
}

/// Parameter of the settled term: `settle_index` as a scalar.
fn settle<M: HarnessModel>(m: &M) -> M::Scalar {
    M::Scalar::from_i64(m.settle_index() as i64)
}

fn unit_speed<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let mut sup = 0f64;
    for _ in 0..ctx.n(100) {
        let (x, y) = (m.random_point(rng, 3.0), m.random_point(rng, 3.0));
        let seg = segment(m, &x, &y);
        let s = m.random_scalar(rng, 0.0, 1.0) * seg.length().clone();
        let t = m.random_scalar(rng, 0.0, 1.0) * seg.length().clone();
        let d = m.distance(&seg.eval(m, &s)?, &seg.eval(m, &t)?);
        sup = sup.max(abs_diff(d, (s - t).abs()));

        let (p, xi) = (m.random_point(rng, 3.0), m.random_ideal(rng));
        let (s, t) = (m.random_scalar(rng, 0.0, 6.0), m.random_scalar(rng, 0.0, 6.0));
        let r = ray(&p, &xi);
        let d = m.distance(&r.eval(m, &s)?, &r.eval(m, &t)?);
        sup = sup.max(abs_diff(d, (s - t).abs()));
    }
    Ok(Record::at_most(name, anchor, sup, M::threshold(1e-8)))
}

fn busemann_antisymmetry<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let mut sup = 0f64;
    for _ in 0..ctx.n(100) {
        let (o, y, xi) = (m.random_point(rng, 3.0), m.random_point(rng, 3.0), m.random_ideal(rng));
        sup = sup.max(f64_of((m.busemann(&o, &xi, &y) + m.busemann(&y, &xi, &o)).abs()));
    }
    Ok(Record::at_most(name, anchor, sup, ctx.tol()))
}

fn busemann_lipschitz<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let mut sup = 0f64;
    for _ in 0..ctx.n(100) {
        let (p, x, y) = (m.random_point(rng, 3.0), m.random_point(rng, 3.0), m.random_point(rng, 3.0));
        let xi = m.random_ideal(rng);
        let gap = (m.busemann(&p, &xi, &x) - m.busemann(&p, &xi, &y)).abs() - m.distance(&x, &y);
        sup = sup.max(f64_of(gap).max(0.0));
    }
    Ok(Record::at_most(name, anchor, sup, ctx.tol()))
}

fn busemann_sequence_limit<M: HarnessModel>(
    ctx: &Ctx<M>,
    rng: &mut ChaCha8Rng,
    name: &str,
    anchor: &'static str,
) -> Out {
    let m = &ctx.model;
    let o = m.origin();
    let t = settle(m);
    let mut sup = 0f64;
    for _ in 0..ctx.n(100) {
        let (p, y, xi) = (m.random_point(rng, 2.0), m.random_point(rng, 2.0), m.random_ideal(rng));
        let x = m.ray_located(&p, &xi, &t)?;
        let approx = x.distance_to(m, &y)? - x.distance_to(m, &o)?;
        sup = sup.max(abs_diff(approx, m.busemann(&o, &xi, &y)));
    }
    Ok(Record::at_most(name, anchor, sup, M::threshold(1e-8)))
}

fn gromov_ideal_continuity<M: HarnessModel>(
    ctx: &Ctx<M>,
    rng: &mut ChaCha8Rng,
    name: &str,
    anchor: &'static str,
) -> Out {
    let m = &ctx.model;
    let o = m.origin();
    let t = if M::EXACT { settle(m) } else { M::Scalar::from_i64(15) };
    let mut sup = 0f64;
    for _ in 0..ctx.n(100) {
        let (xi, eta) = random_ideal_pair(m, rng, 0.1);
        let Extended::Finite(ideal) = m.gromov_product_ideal(&xi, &eta, &o) else {
            return Err(Error::DegenerateLine);
        };
        let (x, y) = (m.ray_point(&o, &xi, &t)?, m.ray_point(&o, &eta, &t)?);
        sup = sup.max(abs_diff(gromov_product(m, &x, &y, &o), ideal));
    }
    Ok(Record::at_most(name, anchor, sup, M::threshold(1e-8)))
}

fn midpoint_oracle<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let grid = m.standard_points(&m.scalar(4.0), 100);
    let mut sup = 0f64;
    for _ in 0..ctx.n(100) {
        let (x, y) = (m.random_point(rng, 3.0), m.random_point(rng, 3.0));
        let mid = midpoint(m, &x, &y);
        let best = M::Scalar::max_of(m.distance(&x, &mid), m.distance(&y, &mid));
        for a in &grid {
            let other = M::Scalar::max_of(m.distance(&x, a), m.distance(&y, a));
            sup = sup.max(f64_of(best.clone() - other).max(0.0));
        }
    }
    Ok(Record::at_most(name, anchor, sup, M::threshold(1e-10)))
}

fn busemann_closed_form<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let t = 30.0;
    let mut sup = 0f64;
    for _ in 0..ctx.n(100) {
        let (p, x, xi) = (m.random_point(rng, 2.0), m.random_point(rng, 2.0), m.random_ideal(rng));
        let c = m.ray_located(&p, &xi, &m.scalar(t))?;
        let truncated = c.distance_to(m, &x)?.to_f64() - t;
        let err = (m.busemann(&p, &xi, &x).to_f64() - truncated).abs();
        sup = sup.max(err - 2.0 * (-t).exp());
    }
    Ok(Record::at_most(name, anchor, sup.max(0.0), 1e-8))
}

fn line_gromov_zero<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let mut sup = 0f64;
    for _ in 0..ctx.n(100) {
        let (plus, minus) = random_ideal_pair(m, rng, 0.1);
        let line = m.geodesic_line(&plus, &minus)?;
        let p = m.line_point(&line, &m.random_scalar(rng, -3.0, 3.0))?;
        match m.gromov_product_ideal(&plus, &minus, &p) {
            Extended::Finite(v) => sup = sup.max(v.abs().to_f64()),
            Extended::Infinite => return Err(Error::DegenerateLine),
        }
    }
    Ok(Record::at_most(name, anchor, sup, ctx.tol()))
}

fn busemann_stabilization<M: HarnessModel>(
    ctx: &Ctx<M>,
    rng: &mut ChaCha8Rng,
    name: &str,
    anchor: &'static str,
) -> Out {
    let m = &ctx.model;
    let mut sup = 0f64;
    for _ in 0..ctx.n(100) {
        let (p, x, xi) = (m.random_point(rng, 3.0), m.random_point(rng, 3.0), m.random_ideal(rng));
        let b = m.busemann(&p, &xi, &x);
        // the rays from p and x towards ξ have merged by depth 3 + 3 + 3 + 3
        for t in [m.scalar(16.0), m.scalar(16.25), m.scalar(23.5), m.scalar(40.0)] {
            let c = m.ray_point(&p, &xi, &t)?;
            sup = sup.max(abs_diff(m.distance(&x, &c) - t, b.clone()));
        }
    }
    Ok(Record::at_most(name, anchor, sup, 0.0))
}

fn gromov_segment_distance<M: HarnessModel>(
    ctx: &Ctx<M>,
    rng: &mut ChaCha8Rng,
    name: &str,
    anchor: &'static str,
) -> Out {
    let m = &ctx.model;
    let mut sup = 0f64;
    let eighth = m.scalar(0.125);
    for _ in 0..ctx.n(100) {
        let (x, y, z) = (m.random_point(rng, 3.0), m.random_point(rng, 3.0), m.random_point(rng, 3.0));
        let seg = segment(m, &x, &y);
        // random points sit at multiples of 1/8, so the nearest point of the
        // segment is among its points at multiples of 1/8
        let mut best: Option<M::Scalar> = None;
        let mut s = M::Scalar::zero();
        while s <= *seg.length() {
            let d = m.distance(&z, &seg.eval(m, &s)?);
            if best.as_ref().map_or(true, |b| d < *b) {
                best = Some(d);
            }
            s = s + eighth.clone();
        }
        let best = best.expect("segment has a start");
        sup = sup.max(abs_diff(gromov_product(m, &x, &y, &z), best));
    }
    Ok(Record::at_most(name, anchor, sup, 0.0))
}

/// The three cases, with the sequences that realize them.
fn case_sequences<M: HarnessModel>(
    ctx: &Ctx<M>,
    rng: &mut ChaCha8Rng,
    case: Case,
) -> Result<Vec<StructuredSequence<M>>, Error> {
    let m = &ctx.model;
    let one = M::Scalar::from_i64(1);
    let mut out = Vec::new();
    for k in 0..ctx.n(30) {
        let p = m.random_point(rng, 2.0);
        let q = m.random_point(rng, 2.0);
        let (xi, eta) = (m.random_ideal(rng), m.random_ideal(rng));
        let seq = match (case, k % 3) {
            (Case::I, 0) => StructuredSequence::BoundedFirst { anchor: p, ray: ray(&q, &xi) },
            (Case::I, 1) => StructuredSequence::RayPair {
                first: ray(&p, &xi),
                first_speed: M::Scalar::zero(),
                second: ray(&q, &eta),
                second_speed: one.clone(),
            },
            (Case::I, _) => StructuredSequence::RayPair {
                first: ray(&p, &xi),
                first_speed: one.clone(),
                second: ray(&q, &eta),
                second_speed: M::Scalar::zero(),
            },
            (Case::II, 0) => StructuredSequence::GeodesicPair(random_geodesic(m, rng, 2.0)),
            (Case::II, 1) => StructuredSequence::RayPair {
                first: ray(&p, &xi),
                first_speed: one.clone(),
                second: ray(&q, &eta),
                second_speed: one.clone(),
            },
            (Case::II, _) => {
                let len = rng.gen_range(1..=3);
                let w = random_word(&ctx.group, rng, len);
                let generator = ctx.group.evaluate(m, &w);
                let seed = ProductPoint::new(m.random_point(rng, 1.0), m.random_point(rng, 1.0));
                StructuredSequence::Orbit { generator, seed }
            }
            (_, parity) => {
                let (s1, s2) = if parity % 2 == 0 { (2, 1) } else { (1, 2) };
                StructuredSequence::RayPair {
                    first: ray(&p, &xi),
                    first_speed: M::Scalar::from_i64(s1),
                    second: ray(&q, &eta),
                    second_speed: M::Scalar::from_i64(s2),
                }
            }
        };
        out.push(seq);
    }
    Ok(out)
}

/// A boundary point whose horofunction differs from that of `b` by order one.
fn wrong_target<M: HarnessModel>(m: &M, b: &MaxBoundaryPoint<M>) -> MaxBoundaryPoint<M> {
    match b {
        MaxBoundaryPoint::Singular { factor, xi } => {
            MaxBoundaryPoint::Singular { factor: *factor, xi: m.far_ideal(xi) }
        }
        MaxBoundaryPoint::Regular { xi, xi_prime, c } => MaxBoundaryPoint::Regular {
            xi: m.far_ideal(xi),
            xi_prime: m.far_ideal(xi_prime),
            c: c.clone() + M::Scalar::from_i64(1),
        },
    }
}

fn classification<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let grid = standard_grid(m, &M::Scalar::from_i64(1), 20);
    let n = m.settle_index();
    let (mut sup, mut min_wrong, mut misclassified, mut total) = (0f64, f64::INFINITY, 0usize, 0usize);
    for case in [Case::I, Case::II, Case::III] {
        for seq in case_sequences(ctx, rng, case)? {
            total += 1;
            let cl = classify(m, &seq)?;
            if cl.case != case {
                misclassified += 1;
                continue;
            }
            let limit = cl.limit.ok_or(Error::NotDivergent)?;
            sup = sup.max(empirical_limit_check(m, &seq, &limit, &grid, n)?.to_f64());
            let wrong = empirical_limit_check(m, &seq, &wrong_target(m, &limit), &grid, n)?.to_f64();
            min_wrong = min_wrong.min(wrong);
        }
    }
    Ok(Record::at_most(name, anchor, sup, M::threshold(1e-5))
        .and(misclassified == 0, format!("{misclassified} of {total} sequences misclassified"))
        .and(min_wrong > 1e-2, format!("smallest error against a wrong target {min_wrong:.3e}")))
}

fn orbit_bound<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let o = m.origin();
    let mut sup = 0f64;
    for _ in 0..ctx.n(100) {
        let (x, y) = (m.random_point(rng, 2.0), m.random_point(rng, 2.0));
        let len = rng.gen_range(1..=20);
        let g = ctx.group.evaluate(m, &random_word(&ctx.group, rng, len));
        let c = m.distance_after(&g, &x, &o)? - m.distance_after(&g, &y, &o)?;
        sup = sup.max(f64_of(c.abs() - m.distance(&x, &y)).max(0.0));
    }
    Ok(Record::at_most(name, anchor, sup, ctx.tol()))
}

fn boundary_gap<M: HarnessModel>(m: &M, a: &MaxBoundaryPoint<M>, b: &MaxBoundaryPoint<M>) -> f64 {
    match (a, b) {
        (MaxBoundaryPoint::Singular { factor: f1, xi: x1 }, MaxBoundaryPoint::Singular { factor: f2, xi: x2 })
            if f1 == f2 =>
        {
            m.visual_distance(x1, x2)
        }
        (
            MaxBoundaryPoint::Regular { xi: x1, xi_prime: y1, c: c1 },
            MaxBoundaryPoint::Regular { xi: x2, xi_prime: y2, c: c2 },
        ) => m.visual_distance(x1, x2).max(m.visual_distance(y1, y2)).max(abs_diff(c1.clone(), c2.clone())),
        _ => f64::INFINITY,
    }
}

fn phi_round_trips<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let mut sup = 0f64;
    let mut wrong_chart = 0;
    for _ in 0..ctx.n(200) {
        let b = random_boundary_point(m, rng);
        let back = match &b {
            MaxBoundaryPoint::Singular { .. } => {
                wrong_chart += usize::from(phi_reg(&b).is_ok());
                let (factor, xi) = phi_sing(&b)?;
                phi_sing_inverse::<M>(factor, xi)
            }
            MaxBoundaryPoint::Regular { .. } => {
                wrong_chart += usize::from(phi_sing(&b).is_ok());
                let (xi, eta, c) = phi_reg(&b)?;
                phi_reg_inverse::<M>(xi, eta, c)
            }
        };
        sup = sup.max(boundary_gap(m, &b, &back));
        let (xi, eta, c) = (m.random_ideal(rng), m.random_ideal(rng), m.random_scalar(rng, -3.0, 3.0));
        let (xi2, eta2, c2) = phi_reg(&phi_reg_inverse::<M>(xi.clone(), eta.clone(), c.clone()))?;
        sup = sup.max(m.visual_distance(&xi, &xi2)).max(m.visual_distance(&eta, &eta2)).max(abs_diff(c, c2));
    }
    Ok(Record::at_most(name, anchor, sup, ctx.tol()).and(wrong_chart == 0, ""))
}

fn distinctness<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let o = m.origin();
    let mut min_sup = f64::INFINITY;
    for _ in 0..ctx.n(100) {
        let u = random_regular(m, rng);
        let v = random_regular(m, rng);
        if u.approx_eq(m, &v) {
            continue;
        }
        // probes along the rays from o towards every ideal coordinate involved
        let mut probes = Vec::new();
        for b in [&u, &v] {
            let (x, y, _) = phi_reg(b)?;
            for xi in [x, y] {
                for k in 0..=10 {
                    probes.push(m.ray_point(&o, &xi, &M::Scalar::from_i64(k).half())?);
                }
            }
        }
        let mut sup = 0f64;
        for z in &probes {
            for w in &probes {
                let p = ProductPoint::new(z.clone(), w.clone());
                sup = sup.max(abs_diff(horofunction_eval(m, &u, &p), horofunction_eval(m, &v, &p)));
            }
        }
        min_sup = min_sup.min(sup);
    }
    let threshold = if M::EXACT { 1e-12 } else { 1e-6 };
    Ok(Record::at_least(name, anchor, min_sup, threshold))
}

fn random_regular<M: HarnessModel>(m: &M, rng: &mut ChaCha8Rng) -> MaxBoundaryPoint<M> {
    MaxBoundaryPoint::Regular {
        xi: m.random_ideal(rng),
        xi_prime: m.random_ideal(rng),
        c: m.random_scalar(rng, -3.0, 3.0),
    }
}

fn bijection<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let mut sup = 0f64;
    for _ in 0..ctx.n(200) {
        let g = random_geodesic(m, rng, 3.0);
        let (plus, minus, c) = phi_reg(&f(m, &g)?)?;
        let back = f_inverse(m, &plus, &minus, &c)?;
        sup = sup.max(abs_diff(back.offset().clone(), g.offset().clone()));
        sup = sup.max(m.distance(&back.base_point(m)?, &g.base_point(m)?).to_f64());

        let (xi, eta) = random_ideal_pair(m, rng, 0.1);
        let c = m.random_scalar(rng, -4.0, 4.0);
        let (xi2, eta2, c2) = phi_reg(&f(m, &f_inverse(m, &xi, &eta, &c)?)?)?;
        sup = sup.max(m.visual_distance(&xi, &xi2)).max(m.visual_distance(&eta, &eta2)).max(abs_diff(c, c2));
    }
    Ok(Record::at_most(name, anchor, sup, M::threshold(1e-8)))
}

fn commuting_diagram<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let mut sup = 0f64;
    for _ in 0..ctx.n(200) {
        let g = random_geodesic(m, rng, 3.0);
        let (plus, minus, c) = phi_reg(&f(m, &g)?)?;
        let (hp, hm, r) = hopf(m, &g)?;
        let (p2, m2, c2) = h_map(m, &hp, &hm, &r)?;
        sup = sup.max(m.visual_distance(&plus, &p2)).max(m.visual_distance(&minus, &m2)).max(abs_diff(c, c2));
    }
    Ok(Record::at_most(name, anchor, sup, M::threshold(1e-8)))
}

fn gromov_identity<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let o = m.origin();
    let mut sup = 0f64;
    for _ in 0..ctx.n(200) {
        let g = random_geodesic(m, rng, 3.0);
        let p = g.base_point(m)?;
        let lhs = m.busemann(&o, g.minus(), &p) - m.busemann(&o, g.plus(), &p);
        let Extended::Finite(gp) = m.gromov_product_ideal(g.plus(), g.minus(), &o) else {
            return Err(Error::DegenerateLine);
        };
        let inner = m.busemann(&o, g.plus(), &p) + gp;
        let rhs = -(inner.clone() + inner);
        sup = sup.max(abs_diff(lhs, rhs));
    }
    Ok(Record::at_most(name, anchor, sup, M::threshold(1e-8)))
}

fn diagonal_cost<M: Model>(m: &M, p: &ProductPoint<M>, a: &M::Point) -> M::Scalar {
    M::Scalar::max_of(m.distance(&p.first, a), m.distance(&p.second, a))
}

fn midpoint_optimality<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let mut sup = 0f64;
    for _ in 0..ctx.n(100) {
        let p = random_product_point(m, rng, 3.0);
        let mid = project_diagonal(m, &p);
        let best = diagonal_cost(m, &p, &mid);
        for k in 0..200 {
            let a = if k < 150 {
                // competitors close to the midpoint
                let z = m.random_point(rng, 4.0);
                let t = m.random_scalar(rng, 0.0, 1.0);
                m.segment_point(&mid, &z, &t)
            } else {
                m.random_point(rng, 3.0)
            };
            sup = sup.max(f64_of(best.clone() - diagonal_cost(m, &p, &a)).max(0.0));
        }
    }
    Ok(Record::at_most(name, anchor, sup, M::threshold(1e-10)))
}

fn rho_continuity<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let n = m.settle_index();
    let one = M::Scalar::from_i64(1);
    let (mut sup, mut sup_constant) = (0f64, 0f64);
    for _ in 0..ctx.n(50) {
        let g = random_geodesic(m, rng, 0.5);
        // rays towards the two ends, started off the line near g(±1)
        let near = |rng: &mut ChaCha8Rng, t: &M::Scalar| -> Result<M::Point, Error> {
            let z = m.random_point(rng, 3.0);
            let s = m.random_scalar(rng, 0.0, 0.5);
            Ok(m.segment_point(&g.point(m, t)?, &z, &s))
        };
        let p1 = near(rng, &one)?;
        let p2 = near(rng, &-one.clone())?;
        let seq = StructuredSequence::RayPair {
            first: ray(&p1, g.plus()),
            first_speed: one.clone(),
            second: ray(&p2, g.minus()),
            second_speed: one.clone(),
        };
        let limit = classify(m, &seq)?.limit.ok_or(Error::NotDivergent)?;
        let target = geodesic_of(m, &limit)?;
        let (x, y) = seq.term(m, n)?;
        let projected = project_located(m, &x, &y)?;
        sup = sup.max(m.distance(&projected, &target.base_point(m)?).to_f64());
        sup_constant = sup_constant.max(converges_to(m, &seq, &target, n)?.constant.to_f64());
    }
    let thr = M::threshold(1e-5);
    Ok(Record::at_most(name, anchor, sup, thr)
        .and(sup_constant <= thr, format!("largest distance-difference residual {sup_constant:.3e}")))
}

fn segment_limit<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let n = if M::EXACT { settle(m) } else { M::Scalar::from_i64(12) };
    let mut sup = 0f64;
    for _ in 0..ctx.n(100) {
        let g = random_geodesic(m, rng, 1.0);
        let s = m.random_scalar(rng, -2.0, 2.0);
        let (x, y) = (g.point(m, &n)?, g.point(m, &-n.clone())?);
        let p = segment(m, &y, &x).eval(m, &(n.clone() + s.clone()))?;
        sup = sup.max(m.distance(&p, &g.point(m, &s)?).to_f64());
    }
    Ok(Record::at_most(name, anchor, sup, M::threshold(1e-6)))
}

fn isometry_action<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let mut sup = 0f64;
    for _ in 0..ctx.n(100) {
        let len = rng.gen_range(0..=4);
        let g = ctx.group.evaluate(m, &random_word(&ctx.group, rng, len));
        let (x, y) = (m.random_point(rng, 2.0), m.random_point(rng, 2.0));
        let moved = m.distance_after(&g, &x, &m.apply(&g, &y)?)?;
        sup = sup.max(abs_diff(moved, m.distance(&x, &y)));
    }
    Ok(Record::at_most(name, anchor, sup, ctx.tol()))
}

fn relators<M: HarnessModel>(ctx: &Ctx<M>, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let mut sup = 0f64;
    for r in ctx.group.relators() {
        sup = sup.max(m.identity_gap(&ctx.group.evaluate(m, r)));
    }
    let count = ctx.group.relators().len();
    Ok(Record::at_most(name, anchor, sup, ctx.tol()).and(true, format!("{count} relator(s)")))
}

fn hyperbolic_generators<M: HarnessModel>(ctx: &Ctx<M>, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let o = m.origin();
    let mut bad = 0;
    let mut shortest = f64::INFINITY;
    for g in ctx.group.generators() {
        let moves = m.distance_after(g, &o, &o)?.to_f64();
        shortest = shortest.min(moves);
        if m.fixed_points(g).is_none() || moves <= 0.0 {
            bad += 1;
        }
    }
    Ok(Record::at_most(name, anchor, bad as f64, 0.0)
        .and(true, format!("{} generators, smallest displacement of o {shortest:.6}", ctx.group.rank())))
}

fn domain_cover<M: HarnessModel>(ctx: &Ctx<M>, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let (radius, depth) = if M::EXACT { (3.0, 4) } else { (1.5, 2) };
    let candidates = ball(m, &ctx.group, depth)?;
    let points = m.standard_points(&m.scalar(radius), 500);
    let missed = uncovered(m, &ctx.group, &candidates, &points)?.len();
    Ok(Record::at_most(name, anchor, missed as f64, 0.0).and(
        true,
        format!("{} points within {radius} of o, {} elements of word length ≤ {depth}", points.len(), candidates.len()),
    ))
}

fn limit_set_merge<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let mut sup = 0f64;
    let mut unbounded = 0;
    for _ in 0..ctx.n(100) {
        let seed = random_product_point(m, rng, 2.0);
        let w = random_word(&ctx.group, rng, 20);
        let rows = limit_set_sample(m, &ctx.group, &seed, &w)?;
        unbounded += rows.iter().filter(|s| !s.within_bound).count();
        sup = sup.max(rows.last().expect("twenty rows").visual_gap);
    }
    // tree: heads agree to depth 10
    let thr = if M::EXACT { 2f64.powi(-10) } else { 1e-4 };
    Ok(Record::at_most(name, anchor, sup, thr).and(unbounded == 0, format!("{unbounded} rows exceed |C| ≤ d(x, y)")))
}

/// The first power of two at which `u^n` moves `o` at least 30.
fn far_power<M: Model>(m: &M, u: &M::Isometry) -> Result<u32, Error> {
    let o = m.origin();
    let mut n = 1;
    while n < 4096 && m.distance_after(&isometry_power(m, u, n), &o, &o)?.to_f64() < 30.0 {
        n *= 2;
    }
    Ok(n)
}

fn limit_set_targets<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let (mut sup, mut sup_visual) = (0f64, 0f64);
    for c in -2..=2 {
        for _ in 0..ctx.n(5) {
            let len = rng.gen_range(1..=4);
            let u = ctx.group.evaluate(m, &random_word(&ctx.group, rng, len));
            let target = M::Scalar::from_i64(c);
            let (seed, xi) = realize_target(m, &u, &target)?;
            let n = far_power(m, &u)?;
            let row = &power_sample(m, &u, &seed, &[n])?[0];
            sup = sup.max(abs_diff(row.c.clone(), target));
            sup_visual = sup_visual.max(row.visual_gap).max(m.visual_distance(&row.xi_first, &xi));
        }
    }
    let thr_visual = if M::EXACT { 2f64.powi(-10) } else { 1e-4 };
    Ok(Record::at_most(name, anchor, sup, M::threshold(1e-4))
        .and(sup_visual <= thr_visual, format!("largest visual gap {sup_visual:.3e}")))
}

fn equivariance<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let mut words: Vec<Vec<u8>> = (0..ctx.group.rank() as u8).map(|i| vec![i]).collect();
    for _ in 0..ctx.n(50) {
        let len = rng.gen_range(1..=6);
        words.push(random_word(&ctx.group, rng, len));
    }
    let mut sup = 0f64;
    for w in &words {
        let gamma = ctx.group.evaluate(m, w);
        let g = random_geodesic(m, rng, 2.0);
        let moved = horobound::geodesic::apply_isometry(m, &gamma, &g)?;
        let lhs = f(m, &moved)?;
        let rhs = act_on_boundary(m, &gamma, &f(m, &g)?)?;
        sup = sup.max(boundary_gap(m, &lhs, &rhs));
    }
    Ok(Record::at_most(name, anchor, sup, M::threshold(1e-7)).and(true, format!("{} elements", words.len())))
}

fn omega_preserved<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let mut escaped = 0;
    let mut identity_moves = 0f64;
    for _ in 0..ctx.n(100) {
        let (xi, eta) = random_ideal_pair(m, rng, 0.1);
        let b = MaxBoundaryPoint::Regular { xi, xi_prime: eta, c: m.random_scalar(rng, -3.0, 3.0) };
        let len = rng.gen_range(1..=6);
        let gamma = ctx.group.evaluate(m, &random_word(&ctx.group, rng, len));
        if !in_omega(m, &act_on_boundary(m, &gamma, &b)?) {
            escaped += 1;
        }
        identity_moves = identity_moves.max(boundary_gap(m, &b, &act_on_boundary(m, &m.identity(), &b)?));
    }
    Ok(Record::at_most(name, anchor, escaped as f64, 0.0)
        .and(identity_moves <= M::threshold(1e-8), format!("identity moves points by {identity_moves:.3e}")))
}

/// The unit `d_max`-ball about `O`.
pub fn unit_window<M: Model>() -> CompactRegion<M> {
    CompactRegion { radius: M::Scalar::from_i64(1), ideal: Vec::new() }
}

fn proper_discontinuity<M: HarnessModel>(ctx: &Ctx<M>, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let r = ctx.cfg.rmax.saturating_sub(2);
    let rep = proper_discontinuity_report(m, &ctx.group, &unit_window(), r)?;
    Ok(Record::at_most(name, anchor, rep.survivors.len() as f64, f64::INFINITY).and(
        rep.stable,
        format!(
            "{} survivors at word length {r}, {} at {}; {} words examined",
            rep.survivors.len(),
            rep.survivors_wider,
            r + 2,
            rep.words_examined
        ),
    ))
}

/// Half finite points of `X × X`, half points of Ω.
pub fn cocompact_samples<M: HarnessModel>(m: &M, rng: &mut ChaCha8Rng, count: usize) -> Vec<ExtendedPoint<M>> {
    (0..count)
        .map(|k| {
            if k % 2 == 0 {
                ExtendedPoint::Finite(random_product_point(m, rng, 6.0))
            } else {
                ExtendedPoint::Ideal(random_geodesic(m, rng, 6.0))
            }
        })
        .collect()
}

fn cocompactness<M: HarnessModel>(ctx: &Ctx<M>, rng: &mut ChaCha8Rng, name: &str, anchor: &'static str) -> Out {
    let m = &ctx.model;
    let samples = cocompact_samples(m, rng, ctx.n(1000));
    let out = cocompactness_check(m, &ctx.group, &samples, ctx.cfg.rmax)?;
    Ok(Record::at_most(name, anchor, out.failures as f64, 0.0).and(
        true,
        format!("{} samples, longest word used {}, word length limit {}", out.samples, out.longest_word, ctx.cfg.rmax),
    ))
}
