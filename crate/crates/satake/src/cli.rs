//! Batch front end: every operation is driven by a [`JobConfig`] and produces
//! a canonical JSON document (config echo included), so identical configs
//! give byte-identical output. Timing goes to stderr, never into the payload.

use crate::dl_algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::padic_oracle;
use crate::root_datum::{Gcm, RootDatum};
use crate::spherical_gk::{self, StabilizationReport, TruncatedSeries};
use crate::verify;
use crate::vpoly::{Rational, VPoly};
use crate::weyl::{BaseCoweight, WeylGroup};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

/// A fully reproducible job description; every run is determined by it.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct JobConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub gcm: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub depth: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ball: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub q: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub chain: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub precision: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub word: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cfunction_exponent: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub out: Option<String>,
}

/// `"formal"` keeps coefficients in `Z[v, v^-1]`; a rational string such as
/// `"2"` or `"5/2"` evaluates at `v = q^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QSpec {
    Formal,
    Rational(Rational),
}

pub fn parse_q(spec: &str) -> Result<QSpec> {
    if spec == "formal" {
        return Ok(QSpec::Formal);
    }
    let parse_int = |s: &str| {
        s.trim()
            .parse::<i64>()
            .map_err(|_| Error::ParseError(format!("bad rational component {s:?}")))
    };
    let q = match spec.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den == 0 {
                return Err(Error::ParseError("zero denominator".into()));
            }
            Rational::new(parse_int(num)?, den)
        }
        None => Rational::from_integer(parse_int(spec)?),
    };
    if q <= Rational::from_integer(1) {
        return Err(Error::ParseError("q must exceed 1".into()));
    }
    Ok(QSpec::Rational(q))
}

fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| Error::ParseError(format!("bad integer {part:?}")))
        })
        .collect()
}

fn parse_word(s: &str) -> Result<Vec<usize>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| Error::ParseError(format!("bad generator index {part:?}")))
        })
        .collect()
}

fn parse_chain(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';').map(parse_int_list).collect()
}

/// Accepts a file path or inline JSON; the JSON is either a bare matrix or
/// `{"cartan": [[..]], "labels": [..]}`.
pub fn resolve_gcm(spec: &str) -> Result<Gcm> {
    let text = if std::path::Path::new(spec).exists() {
        std::fs::read_to_string(spec)
            .map_err(|e| Error::ParseError(format!("cannot read {spec}: {e}")))?
    } else {
        spec.to_string()
    };
    let value: Value = serde_json::from_str(&text)
        .map_err(|e| Error::ParseError(format!("bad GCM JSON: {e}")))?;
    let (matrix_value, labels) = match &value {
        Value::Object(map) => {
            let cartan = map
                .get("cartan")
                .ok_or_else(|| Error::ParseError("missing \"cartan\" field".into()))?;
            let labels = match map.get("labels") {
                Some(l) => Some(
                    serde_json::from_value::<Vec<String>>(l.clone())
                        .map_err(|e| Error::ParseError(format!("bad labels: {e}")))?,
                ),
                None => None,
            };
            (cartan.clone(), labels)
        }
        _ => (value.clone(), None),
    };
    let entries: Vec<Vec<i64>> = serde_json::from_value(matrix_value)
        .map_err(|e| Error::ParseError(format!("bad Cartan matrix: {e}")))?;
    match labels {
        Some(labels) => Gcm::with_labels(entries, labels),
        None => Gcm::new(entries),
    }
}

fn require<T: Clone>(opt: &Option<T>, flag: &str) -> Result<T> {
    opt.clone().ok_or_else(|| Error::ParseError(format!("missing --{flag}")))
}

fn datum_from(config: &JobConfig) -> Result<RootDatum> {
    Ok(RootDatum::new(resolve_gcm(&require(&config.gcm, "gcm")?)?))
}

fn coeff_string(coeff: &VPoly, q: QSpec) -> String {
    match q {
        QSpec::Formal => coeff.to_string(),
        QSpec::Rational(q) => coeff.eval(Rational::from_integer(1) / q).to_string(),
    }
}

fn series_json(series: &TruncatedSeries, q: QSpec) -> Value {
    let terms: Vec<Value> = series
        .element
        .terms()
        .iter()
        .map(|(offset, coeff)| {
            json!({ "offset": offset.0, "coeff": coeff_string(coeff, q) })
        })
        .collect();
    json!({
        "base": { "pairings": series.element.base().pairings },
        "depth": series.depth,
        "terms": terms,
        "exact": series.exact,
        "omitted_factors": series.omitted_factors,
    })
}

fn element_json(element: &AlgebraElement, q: QSpec) -> Value {
    let mut doc = element.to_json();
    if let QSpec::Rational(qv) = q {
        let values: Vec<Value> = element
            .terms()
            .iter()
            .map(|(offset, coeff)| {
                json!({
                    "offset": offset.0,
                    "value": coeff.eval(Rational::from_integer(1) / qv).to_string(),
                })
            })
            .collect();
        doc["values"] = Value::Array(values);
    }
    doc
}

fn report_json(report: &StabilizationReport, q: QSpec) -> Value {
    let probes: Vec<Value> = report
        .probes
        .iter()
        .map(|p| {
            json!({
                "offset": p.offset.0,
                "trace": p.values.iter().map(|v| coeff_string(v, q)).collect::<Vec<_>>(),
                "first_stable": p.first_stable,
                "matches_upsilon": p.matches_upsilon,
            })
        })
        .collect();
    json!({
        "window": report.window,
        "chain": report.chain.iter().map(|l| l.pairings.clone()).collect::<Vec<_>>(),
        "probes": probes,
        "all_stabilized": report.all_stabilized,
        "upsilon_compared": report.upsilon_compared,
        "omitted_factors": report.omitted_factors,
    })
}

fn q_spec(config: &JobConfig) -> Result<QSpec> {
    match &config.q {
        None => Ok(QSpec::Formal),
        Some(spec) => parse_q(spec),
    }
}

fn q_rational(config: &JobConfig) -> Result<Rational> {
    match q_spec(config)? {
        QSpec::Rational(q) => Ok(q),
        QSpec::Formal => Err(Error::ParseError("this command needs a rational --q".into())),
    }
}

fn q_integer(config: &JobConfig) -> Result<u32> {
    let q = q_rational(config)?;
    if !q.is_integer() || q < Rational::from_integer(2) {
        return Err(Error::ParseError("the oracle needs an integer q >= 2".into()));
    }
    Ok(q.to_integer() as u32)
}

fn lambda_base(config: &JobConfig) -> Result<BaseCoweight> {
    Ok(BaseCoweight::new(parse_int_list(&require(&config.lambda, "lambda")?)?))
}

fn lambda_scalar(config: &JobConfig) -> Result<i64> {
    let values = parse_int_list(&require(&config.lambda, "lambda")?)?;
    if values.len() != 1 {
        return Err(Error::ParseError("the SL2 oracle takes a single lambda integer".into()));
    }
    Ok(values[0])
}

/// Executes one job; the returned document contains the tool version, the
/// config echo, and the result.
pub fn run(config: &JobConfig) -> Result<Value> {
    let result = dispatch(config)?;
    Ok(json!({
        "version": env!("CARGO_PKG_VERSION"),
        "config": serde_json::to_value(config).expect("config serializes"),
        "result": result,
    }))
}

fn dispatch(config: &JobConfig) -> Result<Value> {
    match config.command.as_str() {
        "classify" => {
            let datum = datum_from(config)?;
            Ok(json!({ "blocks": datum.classification().blocks.iter().map(|b| {
                json!({ "indices": b.indices, "kind": format!("{:?}", b.kind) })
            }).collect::<Vec<_>>() }))
        }
        "roots" => {
            let datum = datum_from(config)?;
            let depth = require(&config.depth, "depth")?;
            let table = datum.root_table(depth)?;
            Ok(json!({
                "height_bound": depth,
                "rows": table.rows.iter().map(|r| json!({
                    "root": r.root.0, "mult": r.mult, "real": r.real
                })).collect::<Vec<_>>(),
            }))
        }
        "weyl-ball" => {
            let datum = datum_from(config)?;
            let bound = require(&config.ball, "ball")?;
            let weyl = WeylGroup::new(&datum);
            Ok(json!({
                "bound": bound,
                "elements": weyl.ball(bound).iter().map(|w| json!({
                    "word": w.word(), "length": w.length(), "offset": w.beta().0
                })).collect::<Vec<_>>(),
            }))
        }
        "dl-apply" => {
            let datum = datum_from(config)?;
            let lambda = lambda_base(config)?;
            let word = parse_word(&require(&config.word, "word")?)?;
            let q = q_spec(config)?;
            let out = AlgebraElement::unit(lambda).apply_t_word(&datum, &word)?;
            Ok(element_json(&out, q))
        }
        "integral" => {
            let datum = datum_from(config)?;
            let lambda = lambda_base(config)?;
            let word = parse_word(&require(&config.word, "word")?)?;
            let q = q_spec(config)?;
            let weyl = WeylGroup::new(&datum);
            let w = weyl.element_from_word(&word)?;
            let out = crate::dl_algebra::integral_i(&datum, &w, &lambda)?;
            Ok(element_json(&out, q))
        }
        "satake" => {
            let datum = datum_from(config)?;
            let lambda = lambda_base(config)?;
            let depth = require(&config.depth, "depth")?;
            let ball = config.ball.unwrap_or(16);
            let q = q_spec(config)?;
            let series = spherical_gk::satake_normalized(&datum, &lambda, depth, ball)?;
            Ok(series_json(&series, q))
        }
        "upsilon" => {
            let datum = datum_from(config)?;
            let depth = require(&config.depth, "depth")?;
            let q = q_spec(config)?;
            let series = spherical_gk::upsilon(&datum, depth)?;
            Ok(series_json(&series, q))
        }
        "gk-shift" => {
            let datum = datum_from(config)?;
            let depth = require(&config.depth, "depth")?;
            let lambda = lambda_base(config)?;
            let q = q_spec(config)?;
            let g0 = spherical_gk::upsilon(&datum, depth)?;
            let shifted = spherical_gk::gk_shift(&lambda, &g0);
            Ok(series_json(&shifted, q))
        }
        "approx-check" => {
            let datum = datum_from(config)?;
            let depth = require(&config.depth, "depth")?;
            let ball = config.ball.unwrap_or(16);
            let q = q_spec(config)?;
            let chain: Vec<BaseCoweight> = parse_chain(&require(&config.chain, "chain")?)?
                .into_iter()
                .map(BaseCoweight::new)
                .collect();
            let report = spherical_gk::approximation_check(&datum, &chain, depth, ball)?;
            Ok(report_json(&report, q))
        }
        "cfunction" => {
            let datum = datum_from(config)?;
            let q = q_rational(config)?;
            let exponent = config.cfunction_exponent.unwrap_or(1);
            let assign = move |_: &crate::root_datum::CorootVector| exponent;
            let value = spherical_gk::finite_cfunction(&datum, &assign, q)?;
            Ok(json!({ "value": value.to_string() }))
        }
        "oracle-spherical" => {
            let lambda = lambda_scalar(config)?;
            let precision = require(&config.precision, "precision")?;
            let q = q_integer(config)?;
            Ok(padic_oracle::spherical_census(lambda, precision, q)?.to_json())
        }
        "oracle-gk" => {
            let k_max = require(&config.k_max, "k-max")?;
            let precision = require(&config.precision, "precision")?;
            let q = q_integer(config)?;
            Ok(padic_oracle::gk_census(k_max, precision, q)?.to_json())
        }
        "oracle-iwahori" => {
            let lambda = lambda_scalar(config)?;
            let precision = require(&config.precision, "precision")?;
            let q = q_integer(config)?;
            let refined = padic_oracle::iwahori_census(lambda, precision, q)?;
            if !refined.sums_match_spherical || !refined.omega_bound_respected {
                return Err(Error::CheckFailure(
                    serde_json::to_string(&refined.to_json()).unwrap(),
                ));
            }
            Ok(refined.to_json())
        }
        "verify-all" => {
            let results = verify::run_all();
            let all_passed = results.iter().all(|r| r.passed);
            let doc = json!({
                "criteria": results.iter().map(|r| json!({
                    "id": r.id, "name": r.name, "passed": r.passed, "details": r.details
                })).collect::<Vec<_>>(),
                "all_passed": all_passed,
            });
            if !all_passed {
                return Err(Error::CheckFailure(serde_json::to_string(&doc).unwrap()));
            }
            Ok(doc)
        }
        other => Err(Error::ParseError(format!("unknown command {other:?}"))),
    }
}

/// Exit status for an error, per the interface contract: check failures exit
/// 1, configuration and domain errors exit 2.
pub fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::CheckFailure(_) => 1,
        _ => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q_parsing() {
        assert_eq!(parse_q("formal").unwrap(), QSpec::Formal);
        assert_eq!(parse_q("2").unwrap(), QSpec::Rational(Rational::from_integer(2)));
        assert_eq!(parse_q("5/2").unwrap(), QSpec::Rational(Rational::new(5, 2)));
        assert!(parse_q("1").is_err());
        assert!(parse_q("x").is_err());
    }

    #[test]
    fn gcm_resolution() {
        let gcm = resolve_gcm("[[2,-1],[-1,2]]").unwrap();
        assert_eq!(gcm.size(), 2);
        let gcm = resolve_gcm("{\"cartan\": [[2]], \"labels\": [\"x\"]}").unwrap();
        assert_eq!(gcm.labels(), &["x".to_string()]);
        assert!(resolve_gcm("{\"labels\": []}").is_err());
    }

    #[test]
    fn classify_command() {
        let config = JobConfig {
            command: "classify".into(),
            gcm: Some("[[2,-1],[-1,2]]".into()),
            ..Default::default()
        };
        let doc = run(&config).unwrap();
        assert_eq!(doc["result"]["blocks"][0]["kind"], "Finite");
    }

    #[test]
    fn dl_apply_rejects_non_reduced_words() {
        let config = JobConfig {
            command: "dl-apply".into(),
            gcm: Some("[[2]]".into()),
            lambda: Some("2".into()),
            word: Some("0,0".into()),
            ..Default::default()
        };
        let err = run(&config).unwrap_err();
        assert_eq!(err, Error::NonReducedWord);
        assert_eq!(exit_code_for(&err), 2);
    }

    #[test]
    fn satake_command_renders_rational_coefficients() {
        let config = JobConfig {
            command: "satake".into(),
            gcm: Some("[[2]]".into()),
            lambda: Some("2".into()),
            depth: Some(2),
            q: Some("2".into()),
            ..Default::default()
        };
        let doc = run(&config).unwrap();
        let terms = doc["result"]["terms"].as_array().unwrap();
        assert_eq!(terms.len(), 3);
        assert_eq!(terms[1]["coeff"], "1/2");
        assert_eq!(doc["result"]["exact"], true);
    }

    #[test]
    fn byte_identical_reruns() {
        let config = JobConfig {
            command: "upsilon".into(),
            gcm: Some("[[2,-2],[-2,2]]".into()),
            depth: Some(3),
            ..Default::default()
        };
        let a = serde_json::to_string(&run(&config).unwrap()).unwrap();
        let b = serde_json::to_string(&run(&config).unwrap()).unwrap();
        assert_eq!(a, b);
    }
}
