//! The four commands: body, invariants, limits, verify. Each computes all
//! artifacts in memory first, so a failing run writes nothing.

use num_bigint::BigInt;
use serde_json::json;

use okounkov_core::bodies::{
    okounkov_body, sequence_limits, slice_weighted, to_quad_body, volume_function, Body,
    BodySequence, Polytope,
};
use okounkov_core::error::Error;
use okounkov_core::field::{scalar_to_quad, ExactField, Quad};
use okounkov_core::filtration::{invariant_report, JumpingTable};
use okounkov_core::models::predicted_body;
use okounkov_core::verify::run_all;
use okounkov_core::wfield::{Rat, WeightBasis, WeightVector};

use crate::config::{self, Model, Resolved};
use crate::output;
use crate::{Artifact, CliError};

fn core_err(module: &str, e: Error) -> CliError {
    match e {
        Error::TruncationInsufficient { order } => CliError::truncation(format!(
            "{module}: truncation insufficient at order {order} (raise the cap or lower M)"
        )),
        other => CliError::config(format!("{module}: {other:?}")),
    }
}

struct ComputedBody {
    /// Hull of normalized values, exact rational vertices.
    computed: Polytope<Rat>,
    /// Nodal prediction, when the weight is off the chamber walls.
    predicted: Option<Body>,
    /// Slice direction in the value lattice.
    direction: WeightVector,
    truncation_order: Option<u32>,
}

fn compute_body(cfg: &Resolved) -> Result<ComputedBody, CliError> {
    match config::build_model(cfg)? {
        Model::Toric(model) => {
            let (w, flag) = config::toric_functionals(cfg)?;
            let gam = model
                .gamma_upto(&w, &flag, cfg.level_cap)
                .map_err(|e| core_err("models/toric", e))?;
            let computed = okounkov_body(&gam, 2).map_err(|e| core_err("bodies", e))?;
            let direction = WeightVector::rational(&[Rat::from(BigInt::from(1))])
                .map_err(|e| core_err("wfield", e))?;
            Ok(ComputedBody { computed, predicted: None, direction, truncation_order: None })
        }
        Model::Nodal(mut model) => {
            let alpha = config::weight_vector(cfg)?;
            let computed = model
                .body(cfg.level_cap, &alpha, cfg.tiebreak)
                .map_err(|e| core_err("models/nodal", e))?;
            let predicted = predicted_body(&alpha).ok();
            Ok(ComputedBody {
                computed,
                predicted,
                direction: alpha,
                truncation_order: Some(model.order()),
            })
        }
    }
}

pub fn cmd_body(cfg: &Resolved) -> Result<Vec<Artifact>, CliError> {
    let result = compute_body(cfg)?;
    let mut artifacts = Vec::new();
    let mut body_doc = output::body_json_rat(&result.computed, cfg.level_cap);
    if let Some(order) = result.truncation_order {
        body_doc["truncation_order"] = json!(order);
    }
    artifacts.push(Artifact {
        name: "body.json".into(),
        content: output::to_pretty(&body_doc),
    });
    if let Some(pred) = &result.predicted {
        artifacts.push(Artifact {
            name: "predicted.json".into(),
            content: output::to_pretty(&output::body_json_quad(pred, cfg.level_cap)),
        });
    }
    if !cfg.slices.is_empty() {
        let quad_body = to_quad_body(&result.computed);
        let mut slices = Vec::new();
        for t in &cfg.slices {
            let ts = result
                .direction
                .basis()
                .rational_scalar(t.clone())
                .map_err(|e| core_err("wfield", e))?;
            let s = slice_weighted(&quad_body, &result.direction, &ts)
                .map_err(|e| core_err("bodies", e))?;
            slices.push(json!({
                "t": output::rat_str(t),
                "body": output::body_json_quad(&s, cfg.level_cap),
                "volume": output::quad_str(&s.volume()),
            }));
        }
        artifacts.push(Artifact {
            name: "slices.json".into(),
            content: output::to_pretty(&serde_json::Value::Array(slices)),
        });
    }
    if cfg.svg && result.computed.ambient_dim() == 2 {
        let mut layers = vec![output::layer_rat(
            "computed",
            &result.computed,
            "#1f77b4",
            "#1f77b4",
            false,
        )];
        if let Some(pred) = &result.predicted {
            layers.push(output::layer_quad("predicted", pred, "none", "#d62728", true));
        }
        artifacts.push(Artifact {
            name: "body.svg".into(),
            content: output::render_svg(&layers),
        });
    }
    Ok(artifacts)
}

pub fn cmd_invariants(cfg: &Resolved) -> Result<Vec<Artifact>, CliError> {
    // The jumping table at degrees up to m_max, the exact body route at
    // the level cap, and the log-discrepancy normalization.
    let (label, table, a, body, direction, truncation_order, toric_certified) =
        match config::build_model(cfg)? {
            Model::Toric(model) => {
                let (w, flag) = config::toric_functionals(cfg)?;
                let gam = model
                    .gamma_upto(&w, &flag, cfg.m_max)
                    .map_err(|e| core_err("models/toric", e))?;
                let alpha = WeightVector::rational(&[Rat::from(BigInt::from(1))])
                    .map_err(|e| core_err("wfield", e))?;
                let table =
                    JumpingTable::from_gamma(&gam, &alpha).map_err(|e| core_err("filtration", e))?;
                let body_gam = model
                    .gamma_upto(&w, &flag, cfg.level_cap)
                    .map_err(|e| core_err("models/toric", e))?;
                let body =
                    to_quad_body(&okounkov_body(&body_gam, 2).map_err(|e| core_err("bodies", e))?);
                let a_sum: i64 = w.iter().sum();
                let a = WeightBasis::rationals()
                    .rational_scalar(Rat::from(BigInt::from(a_sum)))
                    .map_err(|e| core_err("wfield", e))?;
                let dir = vec![Quad::one(), Quad::zero()];
                (format!("toric w={w:?}"), table, a, body, dir, None, true)
            }
            Model::Nodal(mut model) => {
                let alpha = config::weight_vector(cfg)?;
                let gam = model
                    .gamma_upto(cfg.m_max, &alpha, cfg.tiebreak)
                    .map_err(|e| core_err("models/nodal", e))?;
                let table =
                    JumpingTable::from_gamma(&gam, &alpha).map_err(|e| core_err("filtration", e))?;
                let body = to_quad_body(
                    &model
                        .body(cfg.level_cap, &alpha, cfg.tiebreak)
                        .map_err(|e| core_err("models/nodal", e))?,
                );
                let mut a = alpha.basis().zero();
                for e in alpha.entries() {
                    a = a.add(e).map_err(|e| core_err("wfield", e))?;
                }
                let dir: Vec<Quad> = alpha
                    .entries()
                    .iter()
                    .map(scalar_to_quad)
                    .collect::<Result<_, _>>()
                    .map_err(|e| core_err("field", e))?;
                let order = model.order();
                (
                    "nodal".to_string(),
                    table,
                    a,
                    body,
                    dir,
                    Some(order),
                    false,
                )
            }
        };
    let vf = volume_function(&body, &direction).map_err(|e| core_err("bodies", e))?;
    let vol = body.volume();
    let mut rep = invariant_report(&label, &a, &table, Some((&vf, &vol)), &cfg.taus)
        .map_err(|e| core_err("filtration", e))?;
    rep.toric_certified = toric_certified;
    rep.truncation_order = truncation_order;
    let mut artifacts = vec![Artifact {
        name: "invariants.json".into(),
        content: output::to_pretty(&output::report_json(&rep, cfg.precision_cap)),
    }];
    for tau in &cfg.taus {
        let csv = output::convergence_csv(&table, &a, tau).map_err(|e| core_err("filtration", e))?;
        let tag = output::rat_str(tau).replace('/', "_");
        artifacts.push(Artifact { name: format!("convergence_tau_{tag}.csv"), content: csv });
    }
    Ok(artifacts)
}

fn parse_points(raw: &[Vec<String>], what: &str) -> Result<Vec<Vec<Rat>>, CliError> {
    raw.iter()
        .map(|v| {
            v.iter()
                .map(|c| {
                    config::parse_rat(c)
                        .map_err(|e| CliError::config(format!("config: {what} {c:?}: {e}")))
                })
                .collect()
        })
        .collect()
}

pub fn cmd_limits(cfg: &Resolved) -> Result<Vec<Artifact>, CliError> {
    let spec = cfg
        .file
        .limits
        .as_ref()
        .ok_or_else(|| CliError::config("config: missing [limits] section"))?;
    match spec.mode.as_str() {
        "affine" | "constant" => {
            let dim = spec.dim.unwrap_or(2);
            let base = parse_points(
                spec.base
                    .as_ref()
                    .ok_or_else(|| CliError::config("config: limits need base points"))?,
                "base point",
            )?;
            let seq = if spec.mode == "constant" {
                let tail = Polytope::hull(dim, &base)
                    .map_err(|e| core_err("bodies", e))?;
                BodySequence::EventuallyConstant { prefix: Vec::new(), tail }
            } else {
                let slope = parse_points(
                    spec.slope
                        .as_ref()
                        .ok_or_else(|| CliError::config("config: affine limits need slopes"))?,
                    "slope",
                )?;
                if slope.len() != base.len() {
                    return Err(CliError::config("config: base/slope length mismatch"));
                }
                BodySequence::AffineTail { dim, base, slope }
            };
            let rep = sequence_limits(&seq).map_err(|e| core_err("bodies", e))?;
            Ok(vec![Artifact {
                name: "limits.json".into(),
                content: output::to_pretty(&output::limits_json(&rep)),
            }])
        }
        "sweep" => {
            let model = match config::build_model(cfg)? {
                Model::Nodal(m) => m,
                Model::Toric(_) => {
                    return Err(CliError::config(
                        "config: chamber sweep needs a nodal model",
                    ))
                }
            };
            let ratios = spec
                .ratios
                .as_ref()
                .ok_or_else(|| CliError::config("config: sweep needs ratios"))?;
            let alphas: Vec<WeightVector> = ratios
                .iter()
                .map(|s| {
                    let r = config::parse_rat(s)
                        .map_err(|e| CliError::config(format!("config: ratio {s:?}: {e}")))?;
                    WeightVector::rational(&[r, Rat::from(BigInt::from(1))])
                        .map_err(|e| core_err("wfield", e))
                })
                .collect::<Result<_, _>>()?;
            let results = crate::pool::run_ordered(alphas.len(), |i| {
                let mut m = model.clone();
                m.gamma_upto(cfg.m_max, &alphas[i], cfg.tiebreak)
            });
            let mut gammas = Vec::with_capacity(results.len());
            for r in results {
                let mut g = r.map_err(|e| core_err("models/nodal", e))?;
                for pts in g.values_mut() {
                    pts.sort();
                }
                gammas.push(g);
            }
            let n = gammas.len();
            let matrix: Vec<Vec<bool>> = (0..n)
                .map(|i| (0..n).map(|j| gammas[i] == gammas[j]).collect())
                .collect();
            let all_equal = matrix.iter().flatten().all(|&b| b);
            let doc = json!({
                "ratios": ratios,
                "m_max": cfg.m_max,
                "all_equal": all_equal,
                "matrix": matrix,
                "gamma": gammas.iter().zip(ratios.iter()).map(|(g, r)| json!({
                    "ratio": r,
                    "levels": g.iter().map(|(m, pts)| json!([m, pts])).collect::<Vec<_>>(),
                })).collect::<Vec<_>>(),
            });
            Ok(vec![Artifact {
                name: "sweep.json".into(),
                content: output::to_pretty(&doc),
            }])
        }
        other => Err(CliError::config(format!(
            "config: unknown limits mode {other:?}"
        ))),
    }
}

pub fn cmd_verify(
    cfg: &Resolved,
    criteria: Option<&[String]>,
) -> Result<(Vec<Artifact>, bool), CliError> {
    if let Some(list) = criteria {
        for c in list {
            if !okounkov_core::verify::CRITERIA.contains(&c.as_str()) {
                return Err(CliError::config(format!("config: unknown criterion {c:?}")));
            }
        }
    }
    let outcomes = run_all(criteria, cfg.seed);
    let mut all_pass = true;
    for o in &outcomes {
        let status = if o.pass { "PASS" } else { "FAIL" };
        println!("{} {}: {}", o.id, status, o.detail);
        all_pass &= o.pass;
    }
    let doc = json!({
        "seed": cfg.seed,
        "criteria": outcomes.iter().map(|o| json!({
            "id": o.id,
            "pass": o.pass,
            "detail": o.detail,
        })).collect::<Vec<_>>(),
        "all_pass": all_pass,
    });
    Ok((
        vec![Artifact {
            name: "verify.json".into(),
            content: output::to_pretty(&doc),
        }],
        all_pass,
    ))
}
