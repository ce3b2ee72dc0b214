//! JSON and CSV renderings of a [`SuiteReport`].
//!
//! Keys are sorted, reals carry 17 significant digits and non-finite reals
//! become `null`.

use std::str::FromStr;

use qsf_core::catalog::{Params, Verdict};
use serde_json::{Map, Number, Value};

use crate::error::{HarnessError, Result};
use crate::suite::{EntryReport, SuiteConfig, SuiteReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

pub fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let s = format!("{x:.16e}");
    Value::Number(Number::from_str(&s).expect("scientific literal"))
}

fn params_value(p: &Params) -> Value {
    Value::Object(p.iter().map(|(k, v)| (k.clone(), real(*v))).collect())
}

fn strings(v: &[String]) -> Value {
    Value::Array(v.iter().cloned().map(Value::String).collect())
}

fn config_value(c: &SuiteConfig) -> Value {
    let mut m = Map::new();
    m.insert("seed".into(), Value::Number(c.seed.into()));
    m.insert("samples_per_entry".into(), Value::Number(c.samples_per_entry.into()));
    m.insert("q_min".into(), real(c.q_min));
    m.insert("q_max".into(), real(c.q_max));
    m.insert("eps".into(), real(c.eps));
    m.insert("include".into(), strings(&c.include));
    m.insert("exclude".into(), strings(&c.exclude));
    m.insert("parallelism".into(), Value::Number(c.parallelism.into()));
    Value::Object(m)
}

fn entry_value(e: &EntryReport) -> Value {
    let mut m = Map::new();
    m.insert("id".into(), Value::String(e.id.clone()));
    m.insert("count".into(), Value::Number(e.count.into()));
    m.insert("pass".into(), Value::Number(e.pass.into()));
    m.insert("fail".into(), Value::Number(e.fail.into()));
    m.insert("inconclusive".into(), Value::Number(e.inconclusive.into()));
    m.insert("min_margin".into(), e.min_margin.map_or(Value::Null, real));
    m.insert("argmin_params".into(), e.argmin_params.as_ref().map_or(Value::Null, params_value));
    m.insert("failing_params".into(), Value::Array(e.failing_params.iter().map(params_value).collect()));
    Value::Object(m)
}

pub fn to_value(r: &SuiteReport) -> Value {
    let mut m = Map::new();
    m.insert("config".into(), config_value(&r.config));
    m.insert("entries".into(), Value::Array(r.entries.iter().map(entry_value).collect()));
    m.insert("verdict".into(), Value::String(r.verdict.as_str().into()));
    m.insert("wall_time_s".into(), real(r.wall_time_s));
    Value::Object(m)
}

pub fn to_json(r: &SuiteReport) -> Result<String> {
    let mut s = serde_json::to_string_pretty(&to_value(r))?;
    s.push('\n');
    Ok(s)
}

pub fn to_csv(r: &SuiteReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["check_id", "count", "pass", "fail", "inconclusive", "min_margin"])?;
    for e in &r.entries {
        let margin = e.min_margin.map_or(String::new(), |m| format!("{m:.16e}"));
        w.write_record([
            e.id.clone(),
            e.count.to_string(),
            e.pass.to_string(),
            e.fail.to_string(),
            e.inconclusive.to_string(),
            margin,
        ])?;
    }
    let bytes = w.into_inner().map_err(|e| HarnessError::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn serialize_report(r: &SuiteReport, format: Format) -> Result<Vec<u8>> {
    Ok(match format {
        Format::Json => to_json(r)?,
        Format::Csv => to_csv(r)?,
    }
    .into_bytes())
}

fn malformed(what: &str) -> HarnessError {
    HarnessError::Report(what.to_string())
}

fn get<'a>(m: &'a Map<String, Value>, key: &str) -> Result<&'a Value> {
    m.get(key).ok_or_else(|| malformed(key))
}

fn as_real(v: &Value) -> Result<f64> {
    match v {
        Value::Null => Ok(f64::NAN),
        Value::Number(n) => n.as_f64().ok_or_else(|| malformed("number")),
        _ => Err(malformed("expected a number")),
    }
}

fn as_usize(v: &Value) -> Result<usize> {
    v.as_u64().map(|n| n as usize).ok_or_else(|| malformed("expected a count"))
}

fn as_object(v: &Value) -> Result<&Map<String, Value>> {
    v.as_object().ok_or_else(|| malformed("expected an object"))
}

fn as_params(v: &Value) -> Result<Params> {
    as_object(v)?.iter().map(|(k, x)| Ok((k.clone(), as_real(x)?))).collect()
}

fn as_strings(v: &Value) -> Result<Vec<String>> {
    v.as_array()
        .ok_or_else(|| malformed("expected a list"))?
        .iter()
        .map(|s| s.as_str().map(String::from).ok_or_else(|| malformed("expected a string")))
        .collect()
}

fn parse_verdict(s: &str) -> Result<Verdict> {
    match s {
        "pass" => Ok(Verdict::Pass),
        "fail" => Ok(Verdict::Fail),
        "inconclusive" => Ok(Verdict::Inconclusive),
        _ => Err(malformed("verdict")),
    }
}

fn entry_from(v: &Value) -> Result<EntryReport> {
    let m = as_object(v)?;
    let opt = |key: &str| -> Result<Option<&Value>> {
        Ok(match get(m, key)? {
            Value::Null => None,
            x => Some(x),
        })
    };
    Ok(EntryReport {
        id: get(m, "id")?.as_str().ok_or_else(|| malformed("id"))?.to_string(),
        count: as_usize(get(m, "count")?)?,
        pass: as_usize(get(m, "pass")?)?,
        fail: as_usize(get(m, "fail")?)?,
        inconclusive: as_usize(get(m, "inconclusive")?)?,
        min_margin: opt("min_margin")?.map(as_real).transpose()?,
        argmin_params: opt("argmin_params")?.map(as_params).transpose()?,
        failing_params: get(m, "failing_params")?
            .as_array()
            .ok_or_else(|| malformed("failing_params"))?
            .iter()
            .map(as_params)
            .collect::<Result<_>>()?,
    })
}

pub fn from_json(s: &str) -> Result<SuiteReport> {
    let v: Value = serde_json::from_str(s)?;
    let m = as_object(&v)?;
    let c = as_object(get(m, "config")?)?;
    let config = SuiteConfig {
        seed: get(c, "seed")?.as_u64().ok_or_else(|| malformed("seed"))?,
        samples_per_entry: as_usize(get(c, "samples_per_entry")?)?,
        q_min: as_real(get(c, "q_min")?)?,
        q_max: as_real(get(c, "q_max")?)?,
        eps: as_real(get(c, "eps")?)?,
        include: as_strings(get(c, "include")?)?,
        exclude: as_strings(get(c, "exclude")?)?,
        parallelism: as_usize(get(c, "parallelism")?)?,
    };
    Ok(SuiteReport {
        config,
        entries: get(m, "entries")?
            .as_array()
            .ok_or_else(|| malformed("entries"))?
            .iter()
            .map(entry_from)
            .collect::<Result<_>>()?,
        verdict: parse_verdict(get(m, "verdict")?.as_str().ok_or_else(|| malformed("verdict"))?)?,
        wall_time_s: as_real(get(m, "wall_time_s")?)?,
    })
}
