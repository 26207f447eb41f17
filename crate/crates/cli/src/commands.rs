use horobound::disk::PoincareDisk;
use horobound::group::{limit_set_sample, power_sample, OrbitSample};
use horobound::product::{
    classify, empirical_limit_check, phi_reg, phi_reg_inverse, phi_sing, phi_sing_inverse, standard_grid, Case,
    MaxBoundaryPoint,
};
use horobound::tree::CayleyTree;
use horobound::Scalar;
use serde_json::{json, Value};

use crate::checks::{self, Ctx, CATALOG};
use crate::config::{Format, ModelKind, RunConfig, UsageError};
use crate::descriptor::{parse_seed, parse_sequence, parse_stream, WordStream};
use crate::report::{csv_cell, Report};
use crate::sampling::{random_boundary_point, rng_for, show_f64, HarnessModel};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Verify,
    Classify { sequence: String },
    Orbit { seed: String, stream: String },
    Cocompact,
    BoundaryMap,
}

/// Text for stdout and whether every check passed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub pass: bool,
}

pub fn run(cfg: &RunConfig, cmd: &Command) -> Result<Output, UsageError> {
    cfg.validate()?;
    match cfg.model {
        ModelKind::Disk => run_in::<PoincareDisk>(cfg, cmd),
        ModelKind::Tree => run_in::<CayleyTree>(cfg, cmd),
    }
}

fn run_in<M: HarnessModel>(cfg: &RunConfig, cmd: &Command) -> Result<Output, UsageError> {
    let ctx = Ctx::<M>::new(cfg);
    match cmd {
        Command::Verify => Ok(report_output(cfg, Report::new("verify", cfg, checks::run_all(&ctx)))),
        Command::Cocompact => {
            let records = ["group.proper_discontinuity", "group.cocompactness"]
                .iter()
                .map(|name| {
                    let entry = CATALOG.iter().find(|s| s.name == *name).expect("catalog entry");
                    checks::run_one(&ctx, entry)
                })
                .collect();
            Ok(report_output(cfg, Report::new("cocompact", cfg, records)))
        }
        Command::Classify { sequence } => classify_cmd(&ctx, sequence),
        Command::Orbit { seed, stream } => orbit_cmd(&ctx, seed, stream),
        Command::BoundaryMap => Ok(boundary_map(&ctx)),
    }
}

fn report_output(cfg: &RunConfig, report: Report) -> Output {
    let text = match cfg.format {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    Output { text, pass: report.passed() }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

pub fn boundary_json<M: HarnessModel>(m: &M, b: &MaxBoundaryPoint<M>) -> Value {
    match b {
        MaxBoundaryPoint::Singular { factor, xi } => {
            json!({ "kind": "singular", "factor": factor.index().to_string(), "xi": m.show_ideal(xi) })
        }
        MaxBoundaryPoint::Regular { xi, xi_prime, c } => json!({
            "kind": "regular",
            "xi": m.show_ideal(xi),
            "xi_prime": m.show_ideal(xi_prime),
            "c": m.show_scalar(c),
        }),
    }
}

fn case_name(case: Case) -> &'static str {
    match case {
        Case::I => "I",
        Case::II => "II",
        Case::III => "III",
        Case::Undetermined => "undetermined",
    }
}

fn classify_cmd<M: HarnessModel>(ctx: &Ctx<M>, text: &str) -> Result<Output, UsageError> {
    let m = &ctx.model;
    let seq = parse_sequence(m, &ctx.group, text)?;
    let cl = classify(m, &seq)?;
    let grid = standard_grid(m, &M::Scalar::from_i64(1), 20);
    let mut residuals = Vec::new();
    if let Some(limit) = &cl.limit {
        for n in 1..=m.settle_index() {
            let err = empirical_limit_check(m, &seq, limit, &grid, n)?;
            residuals.push(json!({ "n": n.to_string(), "error": m.show_scalar(&err) }));
        }
    }
    let v = json!({
        "command": "classify",
        "model": ctx.cfg.model.name(),
        "sequence": text,
        "case": case_name(cl.case),
        "permuted": cl.permuted.to_string(),
        "limit": cl.limit.as_ref().map(|b| boundary_json(m, b)),
        "residuals": residuals,
    });
    Ok(Output { text: pretty(&v), pass: cl.case != Case::Undetermined })
}

fn orbit_cmd<M: HarnessModel>(ctx: &Ctx<M>, seed: &str, stream: &str) -> Result<Output, UsageError> {
    let m = &ctx.model;
    let seed = parse_seed(m, seed)?;
    let mut rng = rng_for(ctx.cfg.seed, "orbit");
    let rows = match parse_stream(&ctx.group, stream, &mut rng)? {
        WordStream::Word(w) => limit_set_sample(m, &ctx.group, &seed, &w)?,
        WordStream::Power(w, count) => {
            let u = ctx.group.evaluate(m, &w);
            power_sample(m, &u, &seed, &(1..=count).collect::<Vec<_>>())?
        }
    };
    Ok(Output { text: orbit_csv(m, &rows), pass: true })
}

/// Orbit rows as CSV; the columns are described in `schema/orbit_csv.md`.
pub fn orbit_csv<M: HarnessModel>(m: &M, rows: &[OrbitSample<M>]) -> String {
    let mut out = String::from("n,xi_first,xi_second,visual_gap,c\n");
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.n,
            csv_cell(&m.show_ideal(&r.xi_first)),
            csv_cell(&m.show_ideal(&r.xi_second)),
            show_f64(r.visual_gap),
            csv_cell(&m.show_scalar(&r.c)),
        ));
    }
    out
}

/// Round trips of random boundary points through their charts.
fn boundary_map<M: HarnessModel>(ctx: &Ctx<M>) -> Output {
    let m = &ctx.model;
    let mut rng = rng_for(ctx.cfg.seed, "boundary-map");
    let mut rows = Vec::new();
    let mut pass = true;
    for _ in 0..ctx.cfg.scaled(200) {
        let b = random_boundary_point(m, &mut rng);
        let (chart, coords, back) = match &b {
            MaxBoundaryPoint::Singular { .. } => {
                let (factor, xi) = phi_sing(&b).expect("singular point");
                let coords = vec![factor.index().to_string(), m.show_ideal(&xi)];
                ("phi_sing", coords, phi_sing_inverse::<M>(factor, xi))
            }
            MaxBoundaryPoint::Regular { .. } => {
                let (xi, eta, c) = phi_reg(&b).expect("regular point");
                let coords = vec![m.show_ideal(&xi), m.show_ideal(&eta), m.show_scalar(&c)];
                ("phi_reg", coords, phi_reg_inverse::<M>(xi, eta, c))
            }
        };
        let ok = b.approx_eq(m, &back);
        pass &= ok;
        rows.push((chart, boundary_json(m, &b), coords, ok));
    }
    let text = match ctx.cfg.format {
        Format::Json => pretty(&json!({
            "command": "boundary-map",
            "model": ctx.cfg.model.name(),
            "seed": ctx.cfg.seed.to_string(),
            "pass": pass.to_string(),
            "points": rows
                .iter()
                .map(|(chart, point, coords, ok)| json!({
                    "chart": chart,
                    "point": point,
                    "coordinates": coords,
                    "round_trip": ok.to_string(),
                }))
                .collect::<Vec<_>>(),
        })),
        Format::Csv => {
            let mut out = String::from("chart,point,coordinates,round_trip\n");
            for (chart, point, coords, ok) in &rows {
                out.push_str(&format!(
                    "{chart},{},{},{ok}\n",
                    csv_cell(&serde_json::to_string(point).expect("json values serialize")),
                    csv_cell(&coords.join(";")),
                ));
            }
            out
        }
    };
    Output { text, pass }
}
