use std::time::Duration;

use hopfpi_core::colorlie::{
    decide_envelope_pi, graded_delta_report, tlsabw_search, tlsabw_verify, validate_color_axioms, SearchOutcome,
    DEFAULT_DIM_CAP,
};
use hopfpi_core::groups::{character_kernel, DEFAULT_SUBGROUP_CAP};
use hopfpi_core::pilab::{
    ad_orbit_dim, bilinear_image_dim, evaluate_identity, min_multilinear_degree, multilinear_identity_kernel, Bilinear,
    IdentityStatus, IdentityTarget, MatrixTarget, Mode, DEFAULT_KERNEL_DEGREE_CAP, DEFAULT_ORBIT_CAP,
};
use hopfpi_core::presented::{
    decide_hfin_datum, decide_hfin_presentation, decide_pi_datum, decide_pi_presentation, parse_element, Presentation,
};
use hopfpi_core::rep::{check_rep_relations, module_vn, module_vn_dim};
use hopfpi_core::{Error, FieldCtx, Result, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::session::{parse_input, FieldSpec, SessionSpec};
use crate::Args;

pub const DEFAULT_SEED: u64 = 20240601;
const DEFAULT_HFIN_CAP: usize = 10;

pub struct Outcome {
    pub json: Value,
    pub code: u8,
    pub diagnostic: Option<String>,
}

/// Flags merged with the `[command]` section; flags win.
struct Opts {
    command: String,
    cap: Option<usize>,
    seed: u64,
    mode: String,
    budget: Option<u64>,
    element: Option<String>,
    h: Option<String>,
    standard: Option<usize>,
    target: Option<String>,
    n: Option<usize>,
    degree: Option<usize>,
    max: Option<usize>,
    bound: Option<u32>,
}

impl Opts {
    fn merge(args: &Args, spec: Option<&SessionSpec>) -> Opts {
        let c = spec.and_then(|s| s.command.clone()).unwrap_or_default();
        let command = if args.command == "run" { c.name.clone().unwrap_or_default() } else { args.command.clone() };
        Opts {
            command,
            cap: args.cap.or(c.cap),
            seed: args.seed.or(c.seed).unwrap_or(DEFAULT_SEED),
            mode: args.mode.clone().or(c.mode).unwrap_or_else(|| "exhaustive".into()),
            budget: args.budget,
            element: args.element.clone().or(c.element),
            h: args.h.clone().or(c.h),
            standard: args.standard.or(c.standard),
            target: args.target.clone().or(c.target),
            n: args.n.or(c.n),
            degree: args.degree.or(c.degree),
            max: args.max.or(c.max),
            bound: args.bound.or(c.bound),
        }
    }

    fn mode(&self) -> Result<Mode> {
        if self.mode == "exhaustive" {
            return Ok(Mode::Exhaustive {
                budget: self.budget.map(Duration::from_secs),
            });
        }
        let count = self
            .mode
            .strip_prefix("sample:")
            .and_then(|k| k.parse().ok())
            .ok_or_else(|| Error::invalid_input(format!("mode must be exhaustive or sample:k, got {}", self.mode)))?;
        Ok(Mode::Sample { count, seed: self.seed })
    }
}

fn error_json(command: &str, e: &Error) -> (Value, u8) {
    let code = if matches!(e, Error::Inconclusive(_)) { 3 } else { 2 };
    let mut err = json!({ "message": e.to_string() });
    if let Error::Syntax { column, .. } = e {
        err["column"] = json!(column);
    }
    (json!({ "command": command, "error": err, "exit_code": code }), code)
}

pub fn run(args: &Args) -> Outcome {
    let spec = match &args.input {
        Some(path) => {
            let text = match std::fs::read_to_string(path) {
                Ok(t) => t,
                Err(e) => {
                    let msg = format!("cannot read {}: {e}", path.display());
                    return Outcome {
                        json: json!({ "command": args.command, "error": { "message": msg }, "exit_code": 2 }),
                        code: 2,
                        diagnostic: Some(msg),
                    };
                }
            };
            match parse_input(&text) {
                Ok(s) => Some(s),
                Err(e) => {
                    return Outcome {
                        json: json!({
                            "command": args.command,
                            "error": { "message": e.message, "line": e.line, "column": e.column },
                            "exit_code": 2,
                        }),
                        code: 2,
                        diagnostic: Some(format!("{}: {e}", path.display())),
                    }
                }
            }
        }
        None => None,
    };
    let opts = Opts::merge(args, spec.as_ref());
    let provenance = json!({
        "cap": opts.cap,
        "seed": opts.seed,
        "mode": opts.mode,
        "budget_secs": opts.budget,
    });
    match dispatch(&opts, spec.as_ref()) {
        Ok((result, code)) => Outcome {
            json: json!({
                "command": opts.command,
                "result": result,
                "provenance": provenance,
                "exit_code": code,
            }),
            code,
            diagnostic: None,
        },
        Err(e) => {
            let (mut v, code) = error_json(&opts.command, &e);
            v["provenance"] = provenance;
            Outcome {
                json: v,
                code,
                diagnostic: Some(e.to_string()),
            }
        }
    }
}

fn need<'a>(spec: Option<&'a SessionSpec>) -> Result<&'a SessionSpec> {
    spec.ok_or_else(|| Error::invalid_input("this command needs --input"))
}

fn need_opt<T: Clone>(v: &Option<T>, flag: &str) -> Result<T> {
    v.clone().ok_or_else(|| Error::invalid_input(format!("missing --{flag}")))
}

fn to_json<T: serde::Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::Unsupported(e.to_string()))
}

fn dispatch(o: &Opts, spec: Option<&SessionSpec>) -> Result<(Value, u8)> {
    match o.command.as_str() {
        "normalize" => {
            let s = need(spec)?;
            let p = s.presentation(s.ctx()?)?;
            let text = need_opt(&o.element, "element")?;
            let e = p.normalize(&parse_element(&text, &p)?);
            Ok((json!({ "input": text, "normal_form": p.format(&e) }), 0))
        }
        "adjoint" => {
            let s = need(spec)?;
            let p = s.presentation(s.ctx()?)?;
            let h = need_opt(&o.h, "h")?;
            let y = need_opt(&o.element, "element")?;
            let r = p.ad(&parse_element(&h, &p)?, &parse_element(&y, &p)?)?;
            Ok((json!({ "h": h, "element": y, "result": p.format(&r) }), 0))
        }
        "delta-dim" => delta_dim(o, need(spec)?),
        "identity-check" => identity_check(o, spec),
        "identity-kernel" => {
            let m = matrix_target(o, spec)?;
            let d = need_opt(&o.degree.or(o.standard), "degree")?;
            let r = multilinear_identity_kernel(&m, d, o.cap.unwrap_or(DEFAULT_KERNEL_DEGREE_CAP))?;
            Ok((to_json(&r)?, 0))
        }
        "min-identity-degree" => {
            let m = matrix_target(o, spec)?;
            let cap = o.cap.unwrap_or(DEFAULT_KERNEL_DEGREE_CAP);
            let r = min_multilinear_degree(&m, o.max.unwrap_or(cap), cap)?;
            let code = if r.min_degree.is_some() { 0 } else { 3 };
            Ok((to_json(&r)?, code))
        }
        "pi-decide" => {
            let s = need(spec)?;
            let ctx = s.ctx()?;
            if s.datum.is_some() && s.algebra.is_none() {
                return Ok((to_json(&decide_pi_datum(&s.cartan_datum(ctx)?))?, 0));
            }
            if s.colorlie.is_some() && s.algebra.is_none() {
                let r = decide_envelope_pi(&s.color_lie(ctx)?)?;
                let code = if matches!(r, SearchOutcome::NoneFound { .. }) { 3 } else { 0 };
                return Ok((to_json(&r)?, code));
            }
            Ok((to_json(&decide_pi_presentation(&s.presentation(ctx)?))?, 0))
        }
        "hfin-decide" => {
            let s = need(spec)?;
            let ctx = s.ctx()?;
            let cap = o.cap.unwrap_or(DEFAULT_HFIN_CAP);
            if s.datum.is_some() && s.algebra.is_none() {
                return Ok((to_json(&decide_hfin_datum(&s.cartan_datum(ctx)?, cap))?, 0));
            }
            Ok((to_json(&decide_hfin_presentation(&s.presentation(ctx)?, cap))?, 0))
        }
        "datum-validate" => {
            let s = need(spec)?;
            let r = s.cartan_datum(s.ctx()?)?.validate();
            let code = if r.valid { 0 } else { 1 };
            Ok((to_json(&r)?, code))
        }
        "char-kernel" => {
            let s = need(spec)?;
            let (gamma, chars) = s.characters(s.ctx()?)?;
            let k = character_kernel(&chars, &gamma)?;
            Ok((to_json(&k)?, 0))
        }
        "group-profile" => {
            let s = need(spec)?;
            let g = s
                .group
                .as_ref()
                .ok_or_else(|| Error::invalid_input("missing [group] section"))?
                .build()?;
            Ok((to_json(&g.conjugacy_profile())?, 0))
        }
        "colorlie-validate" => {
            let s = need(spec)?;
            let r = validate_color_axioms(&s.color_lie(s.ctx()?)?);
            let code = if r.valid() { 0 } else { 1 };
            Ok((to_json(&r)?, code))
        }
        "tlsabw-verify" => {
            let s = need(spec)?;
            let ctx = s.ctx()?;
            let l = s.color_lie(ctx)?;
            let g = s.action(ctx, &l)?;
            let (m, a) = s.witness(ctx, &l)?;
            let v = tlsabw_verify(&l, &g, &m, &a);
            let code = if v.pi { 0 } else { 1 };
            Ok((to_json(&v)?, code))
        }
        "tlsabw-search" => {
            let s = need(spec)?;
            let ctx = s.ctx()?;
            let l = s.color_lie(ctx)?;
            let g = s.action(ctx, &l)?;
            let r = tlsabw_search(&l, &g, DEFAULT_DIM_CAP, o.cap.unwrap_or(DEFAULT_SUBGROUP_CAP))?;
            let code = if matches!(r, SearchOutcome::NoneFound { .. }) { 3 } else { 0 };
            Ok((to_json(&r)?, code))
        }
        "rep-check" => {
            let s = need(spec)?;
            let ctx = s.ctx()?;
            let p = s.presentation(ctx)?;
            let r = check_rep_relations(&s.rep(ctx)?, &p)?;
            let code = if r.passes() { 0 } else { 1 };
            Ok((to_json(&r)?, code))
        }
        "bilinear-bound" => bilinear_bound(o, spec),
        "" => Err(Error::invalid_input("`run` needs a [command] section with a name")),
        other => Err(Error::invalid_input(format!("unknown command {other}"))),
    }
}

fn delta_dim(o: &Opts, s: &SessionSpec) -> Result<(Value, u8)> {
    let ctx = s.ctx()?;
    let text = need_opt(&o.element, "element")?;
    if s.colorlie.is_some() && s.algebra.is_none() && s.datum.is_none() {
        let l = s.color_lie(ctx)?;
        let i = l
            .names()
            .iter()
            .position(|n| *n == text)
            .ok_or_else(|| Error::invalid_input(format!("unknown basis element {text}")))?;
        let r = graded_delta_report(&l, &l.unit(i))?;
        return Ok((json!({ "element": text, "dim": r.total, "graded": to_json(&r)? }), 0));
    }
    let p = s.presentation(ctx)?;
    let h = parse_element(&text, &p)?;
    let r = ad_orbit_dim(&p, &h, o.cap.unwrap_or(DEFAULT_ORBIT_CAP))?;
    let code = if r.exceeds_cap { 3 } else { 0 };
    Ok((to_json(&r)?, code))
}

/// `q` of order `n` in the field of the session, or in `Q(ζ_n)` without one.
fn vn_module(o: &Opts, spec: Option<&SessionSpec>) -> Result<hopfpi_core::rep::MatrixRep<Scalar>> {
    let ctx = match spec {
        Some(s) => s.ctx()?,
        None => {
            let n = need_opt(&o.n, "n")?;
            FieldCtx::cyclotomic(n as u32)?
        }
    };
    if let (None, Some(s)) = (o.n, spec) {
        if let Some(q) = s.algebra.as_ref().and_then(|a| a.q.as_deref()) {
            return module_vn(&ctx, &ctx.parse(q)?);
        }
    }
    let n = need_opt(&o.n, "n")? as u64;
    let m = ctx.torsion_exponent();
    if n == 0 || m % n != 0 {
        return Err(Error::FieldMismatch(format!("{ctx} has no primitive root of unity of order {n}")));
    }
    let q = ctx.torsion_generator().pow((m / n) as i64);
    module_vn_dim(&q, n as usize)
}

fn matrix_target(o: &Opts, spec: Option<&SessionSpec>) -> Result<MatrixTarget> {
    let target = o.target.clone().unwrap_or_else(|| {
        if spec.is_some_and(|s| s.rep.is_some()) {
            "rep".into()
        } else {
            "matrices".into()
        }
    });
    match target.as_str() {
        "vn" => Ok(MatrixTarget::from_rep(&vn_module(o, spec)?)),
        "matrices" => Ok(MatrixTarget::full(need_opt(&o.n, "n")?)),
        "rep" => {
            let s = need(spec)?;
            Ok(MatrixTarget::from_rep(&s.rep(s.ctx()?)?))
        }
        other => Err(Error::invalid_input(format!("target {other} is not a matrix algebra"))),
    }
}

fn identity_check(o: &Opts, spec: Option<&SessionSpec>) -> Result<(Value, u8)> {
    let ctx = match spec {
        Some(s) => s.ctx()?,
        None => FieldCtx::rational(),
    };
    let empty = SessionSpec {
        field: FieldSpec::Rational,
        algebra: None,
        datum: None,
        group: None,
        characters: None,
        colorlie: None,
        action: None,
        witness: None,
        rep: None,
        tensor: None,
        identity: None,
        command: None,
    };
    let (t, shape) = spec.unwrap_or(&empty).template(ctx, o.standard)?;
    let mode = o.mode()?;
    let verdict = if o.target.as_deref() == Some("algebra") {
        let s = need(spec)?;
        let p: Presentation = s.presentation(ctx)?;
        let bound = o.bound.unwrap_or(t.degree() as u32);
        evaluate_identity(&t, &shape, &IdentityTarget::Presentation { p: &p, bound }, mode)?
    } else {
        let m = matrix_target(o, spec)?;
        evaluate_identity(&t, &shape, &IdentityTarget::Matrices(&m), mode)?
    };
    let code = match verdict.status {
        IdentityStatus::HoldsExact | IdentityStatus::HoldsOnSample => 0,
        IdentityStatus::Fails { .. } => 1,
        IdentityStatus::Inconclusive { .. } => 3,
    };
    Ok((to_json(&verdict)?, code))
}

/// Checks the given tensor, or `--n` random tensors (default 100) with dimensions
/// at most `--max` (default 5).
fn bilinear_bound(o: &Opts, spec: Option<&SessionSpec>) -> Result<(Value, u8)> {
    let trials = o.cap.unwrap_or(20);
    if let Some(s) = spec {
        if let Some((f, t)) = s.tensor(s.ctx()?)? {
            let r = bilinear_image_dim(&f, t.unwrap_or(trials), o.seed);
            let code = if r.bound_holds { 0 } else { 1 };
            return Ok((to_json(&r)?, code));
        }
    }
    let count = o.n.unwrap_or(100);
    let max_dim = o.max.unwrap_or(5).max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(o.seed);
    let mut violations = Vec::new();
    let mut max_ratio = 0.0f64;
    for k in 0..count {
        let (du, dv, dw) = (
            rng.gen_range(1..=max_dim),
            rng.gen_range(1..=max_dim),
            rng.gen_range(1..=max_dim),
        );
        let t = (0..du)
            .map(|_| {
                (0..dv)
                    .map(|_| {
                        (0..dw)
                            .map(|_| if rng.gen_bool(0.4) { Scalar::from_int(rng.gen_range(-3..=3)) } else { Scalar::zero() })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        let r = bilinear_image_dim(&Bilinear::new(t)?, trials, o.seed.wrapping_add(k as u64));
        if r.m * r.n > 0 {
            max_ratio = max_ratio.max(r.image_dim as f64 / (r.m * r.n) as f64);
        }
        if !r.bound_holds {
            violations.push(json!({ "index": k, "dims": [du, dv, dw], "report": to_json(&r)? }));
        }
    }
    let code = if violations.is_empty() { 0 } else { 1 };
    Ok((
        json!({ "tensors": count, "max_dim": max_dim, "violations": violations, "max_image_ratio": max_ratio }),
        code,
    ))
}
