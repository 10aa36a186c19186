//! Artifact construction: exact JSON bodies and reports, exact-rational
//! CSV tables, and display-only SVG renderings.

use num_traits::Zero;
use serde_json::{json, Value};

use okounkov_core::bodies::{Body, LimitReport, Polytope};
use okounkov_core::field::Quad;
use okounkov_core::filtration::{InvariantReport, JumpingTable, TableRouteReport};
use okounkov_core::wfield::{rat_to_f64, Rat, WeightScalar};

pub fn rat_str(q: &Rat) -> String {
    if q.denom() == &num_bigint::BigInt::from(1) {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

pub fn scalar_str(s: &WeightScalar) -> String {
    if let Some(r) = s.as_rational() {
        return rat_str(&r);
    }
    // One-surd bases: a + b*sqrt(d).
    if let Some(d) = s.basis().quadratic_d() {
        let unit = s.basis().unit_index().unwrap_or(0);
        let a = &s.coords()[unit];
        let b = &s.coords()[1 - unit];
        return format!("{}+{}*sqrt({})", rat_str(a), rat_str(b), d);
    }
    format!("{s:?}")
}

pub fn quad_str(q: &Quad) -> String {
    if let Some(r) = q.as_rational() {
        rat_str(&r)
    } else {
        format!("{}+{}*sqrt({})", rat_str(&q.a), rat_str(&q.b), q.d)
    }
}

fn rat_pair(q: &Rat) -> Value {
    json!([q.numer().to_string(), q.denom().to_string()])
}

/// `{dim, field, vertices, level_cap}` for a rational-vertex polytope.
pub fn body_json_rat(p: &Polytope<Rat>, level_cap: u32) -> Value {
    let vertices: Vec<Value> = p
        .vertices()
        .iter()
        .map(|v| Value::Array(v.iter().map(rat_pair).collect()))
        .collect();
    json!({
        "dim": p.ambient_dim(),
        "field": {"kind": "rational"},
        "vertices": vertices,
        "level_cap": level_cap,
    })
}

/// Same document for quadratic-field vertices; falls back to the rational
/// encoding when every coordinate is rational.
pub fn body_json_quad(p: &Body, level_cap: u32) -> Value {
    let d = p
        .vertices()
        .iter()
        .flatten()
        .find(|c| !c.b.is_zero())
        .map(|c| c.d);
    match d {
        None => {
            let vertices: Vec<Value> = p
                .vertices()
                .iter()
                .map(|v| {
                    Value::Array(
                        v.iter().map(|c| rat_pair(&c.a)).collect(),
                    )
                })
                .collect();
            json!({
                "dim": p.ambient_dim(),
                "field": {"kind": "rational"},
                "vertices": vertices,
                "level_cap": level_cap,
            })
        }
        Some(d) => {
            let vertices: Vec<Value> = p
                .vertices()
                .iter()
                .map(|v| {
                    Value::Array(
                        v.iter()
                            .map(|c| json!({"a": rat_pair(&c.a), "b": rat_pair(&c.b)}))
                            .collect(),
                    )
                })
                .collect();
            json!({
                "dim": p.ambient_dim(),
                "field": {"kind": "quadratic", "D": d},
                "vertices": vertices,
                "level_cap": level_cap,
            })
        }
    }
}

fn route_json(r: &TableRouteReport) -> Value {
    json!({
        "raw": {"m": r.raw.m, "k": r.raw.k, "value": scalar_str(&r.raw.value)},
        "extrapolated": r.extrapolated.as_ref().map(scalar_str),
    })
}

pub fn report_json(rep: &InvariantReport, precision_cap: u32) -> Value {
    json!({
        "label": rep.label,
        "log_discrepancy": scalar_str(&rep.a),
        "T": rep.t.as_ref().map(scalar_str),
        "T_m": rep.t_m.iter()
            .map(|(m, v)| json!([m, scalar_str(v)]))
            .collect::<Vec<_>>(),
        "alpha_m": rep.alpha_m.iter()
            .map(|(m, v)| json!([m, scalar_str(v)]))
            .collect::<Vec<_>>(),
        "tau": rep.tau_entries.iter().map(|e| json!({
            "tau": rat_str(&e.tau),
            "Q_tau": e.q_tau.as_ref().map(scalar_str),
            "S_body": e.s_body.as_ref().map(scalar_str),
            "S_table": e.s_table.as_ref().map(route_json),
            "delta": e.delta.as_ref().map(scalar_str),
        })).collect::<Vec<_>>(),
        "toric_certified": rep.toric_certified,
        "truncation_order": rep.truncation_order,
        "precision_cap": precision_cap,
    })
}

pub fn limits_json(rep: &LimitReport<Rat>) -> Value {
    json!({
        "pointwise": body_json_rat(&rep.pointwise, 0),
        "cofinite": body_json_rat(&rep.cofinite, 0),
        "pointwise_volume": rat_str(&rep.pointwise.volume()),
        "cofinite_volume": rat_str(&rep.cofinite.volume()),
        "volumes_equal": rep.equal_volume,
        "exact": rep.exact,
        "cofinite_closed": rep.cofinite_closed,
    })
}

/// Convergence CSV with exact rational-string columns
/// `m, T_m, S_{m,k}, alpha_m, delta_m, bound_2A_over_m` for one tau.
pub fn convergence_csv(
    table: &JumpingTable,
    a: &WeightScalar,
    tau: &Rat,
) -> Result<String, okounkov_core::error::Error> {
    let mut out = String::from("m,T_m,S_{m,k},alpha_m,delta_m,bound_2A_over_m\n");
    let two_a = a.scale(&Rat::from(num_bigint::BigInt::from(2)));
    let degrees: Vec<u32> = table.degrees().collect();
    for m in degrees {
        let n = table.n_m(m);
        if n == 0 {
            continue;
        }
        let row = table.row(m).unwrap();
        let t_m = row[0].scale(&Rat::new(1.into(), m.into()));
        let k = if Zero::is_zero(tau) {
            1
        } else {
            let k = (tau * Rat::from(num_bigint::BigInt::from(n as i64)))
                .ceil()
                .to_integer();
            usize::try_from(k).unwrap_or(1).clamp(1, n)
        };
        let s = table.s_mk(m, k)?;
        let alpha_m = if t_m.is_zero() {
            String::new()
        } else {
            scalar_str(&okounkov_core::filtration::div_scalars(a, &t_m)?)
        };
        let delta_m = if s.is_zero() {
            String::new()
        } else {
            scalar_str(&okounkov_core::filtration::div_scalars(a, &s)?)
        };
        let bound = two_a.scale(&Rat::new(1.into(), m.into()));
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            m,
            scalar_str(&t_m),
            scalar_str(&s),
            alpha_m,
            delta_m,
            scalar_str(&bound),
        ));
    }
    Ok(out)
}

pub struct SvgLayer {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    /// Fill color or "none".
    pub fill: String,
    pub stroke: String,
    pub dashed: bool,
}

pub fn layer_rat(label: &str, p: &Polytope<Rat>, fill: &str, stroke: &str, dashed: bool) -> SvgLayer {
    SvgLayer {
        label: label.into(),
        points: p
            .vertices()
            .iter()
            .map(|v| (rat_to_f64(&v[0]), rat_to_f64(&v[1])))
            .collect(),
        fill: fill.into(),
        stroke: stroke.into(),
        dashed,
    }
}

pub fn layer_quad(label: &str, p: &Body, fill: &str, stroke: &str, dashed: bool) -> SvgLayer {
    use okounkov_core::field::ExactField;
    SvgLayer {
        label: label.into(),
        points: p
            .vertices()
            .iter()
            .map(|v| (v[0].approx(), v[1].approx()))
            .collect(),
        fill: fill.into(),
        stroke: stroke.into(),
        dashed,
    }
}

/// Timestamp-free SVG of planar bodies; coordinates are display-only at 12
/// digits, exact values live in the JSON artifacts.
pub fn render_svg(layers: &[SvgLayer]) -> String {
    let (mut x0, mut y0, mut x1, mut y1) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for l in layers {
        for (x, y) in &l.points {
            x0 = x0.min(*x);
            y0 = y0.min(*y);
            x1 = x1.max(*x);
            y1 = y1.max(*y);
        }
    }
    if x0 > x1 {
        (x0, y0, x1, y1) = (0.0, 0.0, 1.0, 1.0);
    }
    let pad = 0.08 * ((x1 - x0).max(y1 - y0).max(1e-9));
    let (x0, y0, x1, y1) = (x0 - pad, y0 - pad, x1 + pad, y1 + pad);
    let mut s = String::new();
    s.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"480\" height=\"480\" \
         viewBox=\"{:.12} {:.12} {:.12} {:.12}\">\n",
        x0,
        -y1,
        x1 - x0,
        y1 - y0
    ));
    s.push_str("<desc>display-only coordinates (12 digits); exact values in JSON</desc>\n");
    for l in layers {
        let pts: Vec<String> = l
            .points
            .iter()
            .map(|(x, y)| format!("{:.12},{:.12}", x, -y))
            .collect();
        let dash = if l.dashed {
            " stroke-dasharray=\"0.04,0.02\""
        } else {
            ""
        };
        s.push_str(&format!(
            "<polygon points=\"{}\" fill=\"{}\" fill-opacity=\"0.35\" stroke=\"{}\" \
             stroke-width=\"0.01\" vector-effect=\"non-scaling-stroke\"{}>\
             <title>{}</title></polygon>\n",
            pts.join(" "),
            l.fill,
            l.stroke,
            dash,
            l.label
        ));
    }
    s.push_str("</svg>\n");
    s
}

pub fn to_pretty(v: &Value) -> String {
    let mut out = serde_json::to_string_pretty(v).expect("serializable");
    out.push('\n');
    out
}
