//! Run configuration: TOML/JSON file schema, command-line overrides, and
//! conversion into exact core types.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Deserialize;

use okounkov_core::models::{NodalCubicModel, ToricSurfaceModel};
use okounkov_core::series::TieBreak;
use okounkov_core::wfield::{Rat, WeightBasis, WeightScalar, WeightVector};

use crate::CliError;

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct FileConfig {
    pub model: Option<ModelSpec>,
    pub valuation: Option<ValuationSpec>,
    #[serde(default)]
    pub run: RunSpec,
    pub limits: Option<LimitsSpec>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModelSpec {
    pub kind: String,
    /// Toric: polygon vertices, rational strings per coordinate.
    pub vertices: Option<Vec<Vec<String>>>,
    /// Nodal: homogeneous cubic terms; omitted means y^2 z = x^2 z + x^3.
    pub cubic: Option<Vec<CubicTerm>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CubicTerm {
    pub exponents: [u32; 3],
    pub coeff: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ValuationSpec {
    /// Quasi-monomial weights (nodal models); "p/q" or "a+b*sqrt(D)".
    pub weights: Option<Vec<String>>,
    /// Torus-invariant valuation functional (toric models).
    pub w: Option<Vec<i64>>,
    /// Torus-invariant flag functional (toric models).
    pub flag: Option<Vec<i64>>,
    pub tiebreak: Option<String>,
}

#[derive(Debug, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub m_max: Option<u32>,
    pub level_cap: Option<u32>,
    pub tau: Option<Vec<String>>,
    pub precision_cap: Option<u32>,
    pub seed: Option<u64>,
    pub svg: Option<bool>,
    /// Slice thresholds for the body command, rational strings.
    pub slices: Option<Vec<String>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsSpec {
    /// "affine" (vertex_j(i) = base_j + slope_j / i), "constant", or
    /// "sweep" (chamber sweep over weight ratios).
    pub mode: String,
    pub dim: Option<usize>,
    pub base: Option<Vec<Vec<String>>>,
    pub slope: Option<Vec<Vec<String>>>,
    /// Sweep mode: alpha_1 / alpha_2 ratios, rational strings.
    pub ratios: Option<Vec<String>>,
}

/// Everything a command needs, fully validated.
pub struct Resolved {
    pub file: FileConfig,
    pub m_max: u32,
    pub level_cap: u32,
    pub taus: Vec<Rat>,
    pub tiebreak: TieBreak,
    pub precision_cap: u32,
    pub seed: u64,
    pub svg: bool,
    pub slices: Vec<Rat>,
}

pub struct Overrides {
    pub m_max: Option<u32>,
    pub level_cap: Option<u32>,
    pub tau: Option<Vec<String>>,
    pub tiebreak: Option<String>,
    pub precision_cap: Option<u32>,
    pub seed: Option<u64>,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError::config(msg.into())
}

pub fn load(path: Option<&Path>, ov: &Overrides) -> Result<Resolved, CliError> {
    let file: FileConfig = match path {
        None => FileConfig::default(),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| config_err(format!("config: cannot read {}: {e}", p.display())))?;
            let is_json = p
                .extension()
                .map(|e| e.eq_ignore_ascii_case("json"))
                .unwrap_or(false);
            if is_json {
                serde_json::from_str(&text)
                    .map_err(|e| config_err(format!("config: invalid JSON: {e}")))?
            } else {
                toml::from_str(&text)
                    .map_err(|e| config_err(format!("config: invalid TOML: {e}")))?
            }
        }
    };
    let m_max = ov.m_max.or(file.run.m_max).unwrap_or(8);
    let level_cap = ov.level_cap.or(file.run.level_cap).unwrap_or(4);
    if m_max == 0 || level_cap == 0 {
        return Err(config_err("config: caps must be positive"));
    }
    let tau_strings = ov
        .tau
        .clone()
        .or_else(|| file.run.tau.clone())
        .unwrap_or_else(|| vec!["0".into(), "1/4".into(), "1/2".into(), "1".into()]);
    let mut taus = Vec::with_capacity(tau_strings.len());
    for s in &tau_strings {
        let t = parse_rat(s).map_err(|e| config_err(format!("config: tau {s:?}: {e}")))?;
        if t < Rat::zero() || t > Rat::from(BigInt::from(1)) {
            return Err(config_err(format!("config: tau {s:?} outside [0, 1]")));
        }
        taus.push(t);
    }
    let tiebreak = match ov
        .tiebreak
        .clone()
        .or_else(|| file.valuation.as_ref().and_then(|v| v.tiebreak.clone()))
        .unwrap_or_else(|| "lex".into())
        .as_str()
    {
        "lex" => TieBreak::Lex,
        "strict" => TieBreak::Strict,
        other => return Err(config_err(format!("config: unknown tiebreak {other:?}"))),
    };
    let precision_cap = ov.precision_cap.or(file.run.precision_cap).unwrap_or(4096);
    if precision_cap == 0 {
        return Err(config_err("config: precision cap must be positive"));
    }
    let seed = ov.seed.or(file.run.seed).unwrap_or(0x5eed);
    let svg = file.run.svg.unwrap_or(false);
    let mut slices = Vec::new();
    for s in file.run.slices.clone().unwrap_or_default() {
        slices.push(parse_rat(&s).map_err(|e| config_err(format!("config: slice {s:?}: {e}")))?);
    }
    Ok(Resolved {
        file,
        m_max,
        level_cap,
        taus,
        tiebreak,
        precision_cap,
        seed,
        svg,
        slices,
    })
}

/// The validated model from the config, as one of the two core models.
pub enum Model {
    Toric(ToricSurfaceModel),
    Nodal(NodalCubicModel),
}

pub fn build_model(cfg: &Resolved) -> Result<Model, CliError> {
    let spec = cfg
        .file
        .model
        .as_ref()
        .ok_or_else(|| config_err("config: missing [model] section"))?;
    match spec.kind.as_str() {
        "toric" => {
            let raw = spec
                .vertices
                .as_ref()
                .ok_or_else(|| config_err("config: toric model needs vertices"))?;
            let mut verts = Vec::with_capacity(raw.len());
            for v in raw {
                let mut row = Vec::with_capacity(v.len());
                for c in v {
                    row.push(
                        parse_rat(c)
                            .map_err(|e| config_err(format!("config: vertex {c:?}: {e}")))?,
                    );
                }
                verts.push(row);
            }
            let model = ToricSurfaceModel::new(&verts)
                .map_err(|e| config_err(format!("models/toric: {e:?}")))?;
            Ok(Model::Toric(model))
        }
        "nodal" => {
            let model = match &spec.cubic {
                None => NodalCubicModel::standard(),
                Some(terms) => {
                    let mut parsed = Vec::with_capacity(terms.len());
                    for t in terms {
                        let c = parse_rat(&t.coeff)
                            .map_err(|e| config_err(format!("config: coeff {:?}: {e}", t.coeff)))?;
                        parsed.push((t.exponents, c));
                    }
                    NodalCubicModel::new(&parsed)
                }
            }
            .map_err(|e| config_err(format!("models/nodal: {e:?}")))?;
            Ok(Model::Nodal(model))
        }
        other => Err(config_err(format!("config: unknown model kind {other:?}"))),
    }
}

pub fn weight_vector(cfg: &Resolved) -> Result<WeightVector, CliError> {
    let spec = cfg
        .file
        .valuation
        .as_ref()
        .ok_or_else(|| config_err("config: missing [valuation] section"))?;
    let raw = spec
        .weights
        .as_ref()
        .ok_or_else(|| config_err("config: valuation needs weights"))?;
    let parsed: Vec<(Rat, Rat, Option<u64>)> = raw
        .iter()
        .map(|s| parse_scalar(s).map_err(|e| config_err(format!("config: weight {s:?}: {e}"))))
        .collect::<Result<_, _>>()?;
    let d = parsed.iter().find_map(|(_, _, d)| *d);
    for (_, b, di) in &parsed {
        if di.is_some() && *di != d && !b.is_zero() {
            return Err(config_err("config: weights mix distinct square roots"));
        }
    }
    let entries: Result<Vec<WeightScalar>, _> = match d {
        None => {
            let basis = WeightBasis::rationals();
            parsed
                .iter()
                .map(|(a, _, _)| basis.rational_scalar(a.clone()))
                .collect()
        }
        Some(d) => {
            let basis =
                WeightBasis::with_sqrt(d).map_err(|e| config_err(format!("wfield: {e:?}")))?;
            parsed
                .iter()
                .map(|(a, b, _)| basis.scalar(vec![a.clone(), b.clone()]))
                .collect()
        }
    };
    let entries = entries.map_err(|e| config_err(format!("wfield: {e:?}")))?;
    WeightVector::new(entries).map_err(|e| config_err(format!("wfield: {e:?}")))
}

pub fn toric_functionals(cfg: &Resolved) -> Result<(Vec<i64>, Vec<i64>), CliError> {
    let spec = cfg
        .file
        .valuation
        .as_ref()
        .ok_or_else(|| config_err("config: missing [valuation] section"))?;
    let w = spec
        .w
        .clone()
        .ok_or_else(|| config_err("config: toric valuation needs w"))?;
    let flag = spec
        .flag
        .clone()
        .ok_or_else(|| config_err("config: toric valuation needs flag"))?;
    Ok((w, flag))
}

/// "p", "-p/q".
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        None => (s, "1"),
        Some((n, d)) => (n, d),
    };
    let n: BigInt = num.trim().parse().map_err(|_| format!("bad integer {num:?}"))?;
    let d: BigInt = den.trim().parse().map_err(|_| format!("bad integer {den:?}"))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rat::new(n, d))
}

/// "p/q", "a+b*sqrt(D)", "b*sqrt(D)", "sqrt(D)" with optional signs.
/// Returns (rational part, surd coefficient, D).
pub fn parse_scalar(s: &str) -> Result<(Rat, Rat, Option<u64>), String> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    match s.find("sqrt(") {
        None => Ok((parse_rat(&s)?, Rat::zero(), None)),
        Some(pos) => {
            if !s.ends_with(')') {
                return Err("unterminated sqrt".into());
            }
            let d: u64 = s[pos + 5..s.len() - 1]
                .parse()
                .map_err(|_| "bad radicand".to_string())?;
            let head = &s[..pos];
            // head is "", "-", "b*", "a+b*", "a-b*", "a+", "a-".
            let (a_str, b_str) = match head.rfind(['+', '-']) {
                Some(i) if i > 0 => (&head[..i], &head[i..]),
                _ => ("0", head),
            };
            let b_core = b_str.strip_suffix('*').unwrap_or(b_str);
            let b = match b_core {
                "" | "+" => Rat::from(BigInt::from(1)),
                "-" => Rat::from(BigInt::from(-1)),
                other => parse_rat(other)?,
            };
            Ok((parse_rat(a_str)?, b, Some(d)))
        }
    }
}
