//! Structured reports behind the command line front end.
//!
//! Every command returns a [`Report`] whose JSON form is deterministic:
//! struct fields serialize in declaration order, maps are sorted, and
//! rationals are printed exactly as `p/q`. Wall time is only recorded when
//! asked for.

use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bundles::{named_bundle, normal_bundle, whitney_check};
use crate::chow::{
    build_presentation, full_flag_presentation, kernel_report, levi_presentation,
    siegel_presentation, symmetric_identity_sides, verify_symmetric_identity,
};
use crate::error::{Error, Result};
use crate::intersection::verify_theorem;
use crate::roots::{simple_roots, ParabolicSubset, Weight};

/// Largest ranks accepted by each command; beyond these the exact linear
/// algebra takes minutes to hours.
pub mod budget {
    pub const SIEGEL: usize = 6;
    pub const LEVI: usize = 7;
    pub const FULL: usize = 4;
    pub const CUSTOM: usize = 5;
    pub const CHERN: usize = 6;
    pub const THEOREM: usize = 6;
    pub const CHERN_VANISHING: usize = 6;
    pub const SYMMETRIC_LEMMA: usize = 12;
    pub const KERNEL: usize = 5;
    pub const TABLE: usize = 6;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }

    fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    Siegel,
    Levi,
    Full,
}

impl Space {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "siegel" => Ok(Space::Siegel),
            "levi" => Ok(Space::Levi),
            "full" => Ok(Space::Full),
            other => Err(Error::Unsupported(format!(
                "unknown space {other:?}; expected siegel, levi or full"
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Space::Siegel => "siegel",
            Space::Levi => "levi",
            Space::Full => "full",
        }
    }

    fn budget(self) -> usize {
        match self {
            Space::Siegel => budget::SIEGEL,
            Space::Levi => budget::LEVI,
            Space::Full => budget::FULL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Check {
    Theorem,
    ChernVanishing,
    SymmLemma,
    Kernel,
    All,
}

impl Check {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "theorem" => Ok(Check::Theorem),
            "chern-vanishing" => Ok(Check::ChernVanishing),
            "symm-lemma" => Ok(Check::SymmLemma),
            "kernel" => Ok(Check::Kernel),
            "all" => Ok(Check::All),
            other => Err(Error::Unsupported(format!(
                "unknown check {other:?}; expected theorem, chern-vanishing, symm-lemma, kernel or all"
            ))),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Check::Theorem => "theorem",
            Check::ChernVanishing => "chern-vanishing",
            Check::SymmLemma => "symm-lemma",
            Check::Kernel => "kernel",
            Check::All => "all",
        }
    }
}

/// Outcome of one command.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Report {
    pub command: String,
    pub parameters: Map<String, Value>,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub message: Option<String>,
    pub payload: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_time_ms: Option<u128>,
}

impl Report {
    fn new(command: &str, parameters: Value) -> Self {
        let parameters = match parameters {
            Value::Object(m) => m,
            _ => Map::new(),
        };
        Report {
            command: command.to_string(),
            parameters,
            status: Status::Pass,
            message: None,
            payload: Value::Null,
            wall_time_ms: None,
        }
    }

    fn fail_with(mut self, e: &Error) -> Self {
        self.status = Status::Error;
        self.message = Some(e.to_string());
        self
    }

    fn finish(mut self, outcome: Result<(Status, Value)>) -> Self {
        match outcome {
            Ok((status, payload)) => {
                self.status = status;
                self.payload = payload;
                self
            }
            Err(e) => self.fail_with(&e),
        }
    }

    /// Runs `f` and records its wall time in the report.
    pub fn timed<F: FnOnce() -> Report>(f: F) -> Report {
        let start = Instant::now();
        let mut r = f();
        r.wall_time_ms = Some(start.elapsed().as_millis());
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let params: Vec<String> = self
            .parameters
            .iter()
            .map(|(k, v)| format!("{k}={}", plain(v)))
            .collect();
        let _ = writeln!(out, "{} {}", self.command, params.join(" "));
        let _ = writeln!(out, "status: {}", self.status.as_str());
        if let Some(m) = &self.message {
            let _ = writeln!(out, "message: {m}");
        }
        if self.command == "table" {
            render_table(&self.payload, &mut out);
        } else {
            render_value(&self.payload, 0, &mut out);
        }
        if let Some(t) = self.wall_time_ms {
            let _ = writeln!(out, "wall time: {t} ms");
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn render_value(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                match x {
                    Value::Object(_) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_value(x, indent + 1, out);
                    }
                    Value::Array(items) if items.iter().any(|i| i.is_object()) => {
                        let _ = writeln!(out, "{pad}{k}:");
                        render_value(x, indent + 1, out);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{k}: {}", inline(x));
                    }
                }
            }
        }
        Value::Array(items) => {
            for (i, x) in items.iter().enumerate() {
                if x.is_object() {
                    let _ = writeln!(out, "{pad}[{i}]");
                    render_value(x, indent + 1, out);
                } else {
                    let _ = writeln!(out, "{pad}{}", inline(x));
                }
            }
        }
        Value::Null => {}
        other => {
            let _ = writeln!(out, "{pad}{}", inline(other));
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(inline).collect();
            format!("[{}]", parts.join(", "))
        }
        other => plain(other),
    }
}

fn render_table(payload: &Value, out: &mut String) {
    let Some(rows) = payload.get("rows").and_then(Value::as_array) else {
        return;
    };
    let header = ["g", "dim", "a", "lambda coeff", "sign"];
    let cells: Vec<[String; 5]> = rows
        .iter()
        .map(|r| {
            [
                plain(&r["g"]),
                plain(&r["dimension"]),
                plain(&r["a"]),
                plain(&r["lambda_coefficient"]),
                plain(&r["sign"]),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &cells {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cols: &[String]| {
        cols.iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let _ = writeln!(out, "{}", line(&header.map(String::from)));
    for row in &cells {
        let _ = writeln!(out, "{}", line(row));
    }
}

fn check_rank(what: &'static str, g: usize, max: usize) -> Result<()> {
    if g < 1 || g > max {
        return Err(Error::OutOfRange {
            what,
            value: g as i64,
            min: 1,
            max: max as i64,
        });
    }
    Ok(())
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

/// Parses a comma separated list of simple roots, given either as 1-based
/// indices (`1,3`) or as weights (`e1-e2, 2e3`). The empty string is the
/// empty subset.
pub fn parse_subset(g: usize, s: &str) -> Result<ParabolicSubset> {
    let roots = simple_roots(g)?;
    let mut idx = Vec::new();
    for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        let k = if let Ok(n) = item.parse::<usize>() {
            if n == 0 || n > g {
                return Err(Error::InvalidRootIndex { index: n, rank: g });
            }
            n - 1
        } else {
            let w = Weight::parse(item, g)?;
            roots
                .roots()
                .iter()
                .position(|r| *r == w)
                .ok_or_else(|| Error::Unsupported(format!("{item} is not a simple root")))?
        };
        idx.push(k);
    }
    ParabolicSubset::new(g, idx)
}

fn present_payload(g: usize, group: &ParabolicSubset, parabolic: &ParabolicSubset) -> Result<Value> {
    let pres = build_presentation(g, group, parabolic)?;
    let mut v = to_value(&pres.report());
    v["expected_total_dimension"] = json!(pres.expected_total_dimension().to_string());
    Ok(v)
}

/// Presentation of a named space.
pub fn cmd_present(g: usize, space: Space) -> Report {
    let r = Report::new("present", json!({"g": g, "space": space.as_str()}));
    let outcome = (|| {
        check_rank("g", g, space.budget())?;
        let pres = match space {
            Space::Siegel => siegel_presentation(g)?,
            Space::Levi => levi_presentation(g)?,
            Space::Full => full_flag_presentation(g)?,
        };
        let payload = present_payload(g, pres.group(), pres.parabolic())?;
        Ok((Status::Pass, payload))
    })();
    r.finish(outcome)
}

/// Presentation of `L_group / L_group ∩ P_parabolic` for explicit subsets.
pub fn cmd_present_subsets(g: usize, group: &str, parabolic: &str) -> Report {
    let r = Report::new(
        "present",
        json!({"g": g, "group": group, "parabolic": parabolic}),
    );
    let outcome = (|| {
        check_rank("g", g, budget::CUSTOM)?;
        let k = parse_subset(g, group)?;
        let m = parse_subset(g, parabolic)?;
        Ok((Status::Pass, present_payload(g, &k, &m)?))
    })();
    r.finish(outcome)
}

pub fn cmd_chern(g: usize, bundle: &str) -> Report {
    let r = Report::new("chern", json!({"g": g, "bundle": bundle}));
    let outcome = (|| {
        check_rank("g", g, budget::CHERN)?;
        let b = named_bundle(g, bundle)?;
        Ok((Status::Pass, to_value(&b.report())))
    })();
    r.finish(outcome)
}

type CheckFn = fn(usize) -> Result<(bool, Value)>;

fn verify_theorem_value(g: usize) -> Result<(bool, Value)> {
    check_rank("g", g, budget::THEOREM)?;
    let (_, report) = verify_theorem(g)?;
    Ok((report.pass, to_value(&report)))
}

fn verify_chern_value(g: usize) -> Result<(bool, Value)> {
    check_rank("g", g, budget::CHERN_VANISHING)?;
    let levi = levi_presentation(g)?;
    let i = ParabolicSubset::siegel_i(g)?;
    let j = ParabolicSubset::siegel_j(g)?;
    let n = normal_bundle(g, &i, &j)?;
    let top = n.top_chern_class();
    let reduced = levi.normal_form(&top)?;
    let ok = reduced.is_zero();
    Ok((
        ok,
        json!({
            "weights": n.weights().iter().map(Weight::to_string).collect::<Vec<_>>(),
            "top_chern_class": top.to_string(),
            "reduced": reduced.to_string(),
            "whitney": whitney_check(g, &i, &j)?,
            "pass": ok,
        }),
    ))
}

fn verify_symmetric_value(g: usize) -> Result<(bool, Value)> {
    check_rank("g", g, budget::SYMMETRIC_LEMMA)?;
    let mut cases = Vec::new();
    let mut ok = true;
    for l in 1..g {
        let pass = verify_symmetric_identity(g, l)?;
        ok &= pass;
        let mut case = json!({"l": l, "pass": pass});
        if !pass {
            let (lhs, rhs) = symmetric_identity_sides(g, l);
            case["lhs"] = json!(lhs.to_string());
            case["rhs"] = json!(rhs.to_string());
        }
        cases.push(case);
    }
    Ok((ok, json!({"cases": cases, "pass": ok})))
}

fn verify_kernel_value(g: usize) -> Result<(bool, Value)> {
    check_rank("g", g, budget::KERNEL)?;
    let amb = siegel_presentation(g)?;
    let sub = levi_presentation(g)?;
    let degrees = kernel_report(&amb, &sub, amb.top_degree())?;
    let ok = degrees.iter().all(|d| d.surjective && d.kernel_matches);
    Ok((ok, json!({"degrees": to_value(&degrees), "pass": ok})))
}

pub fn cmd_verify(g: usize, which: Check) -> Report {
    let r = Report::new("verify", json!({"g": g, "which": which.as_str()}));
    let outcome = (|| {
        let runs: Vec<(&str, CheckFn)> = match which {
            Check::Theorem => vec![("theorem", verify_theorem_value)],
            Check::ChernVanishing => vec![("chern-vanishing", verify_chern_value)],
            Check::SymmLemma => vec![("symm-lemma", verify_symmetric_value)],
            Check::Kernel => vec![("kernel", verify_kernel_value)],
            Check::All => vec![
                ("theorem", verify_theorem_value),
                ("chern-vanishing", verify_chern_value),
                ("symm-lemma", verify_symmetric_value),
                ("kernel", verify_kernel_value),
            ],
        };
        let mut payload = Map::new();
        let mut all = true;
        for (name, run) in runs {
            let (ok, v) = run(g)?;
            all &= ok;
            payload.insert(name.to_string(), v);
        }
        Ok((Status::from_bool(all), Value::Object(payload)))
    })();
    r.finish(outcome)
}

/// `a_{J,g}` and the sign verdict for every rank from 2 to `gmax`.
pub fn cmd_table(gmax: usize) -> Report {
    let r = Report::new("table", json!({"gmax": gmax}));
    let outcome = (|| {
        if !(2..=budget::TABLE).contains(&gmax) {
            return Err(Error::OutOfRange {
                what: "gmax",
                value: gmax as i64,
                min: 2,
                max: budget::TABLE as i64,
            });
        }
        let mut rows = Vec::new();
        let mut ok = true;
        for g in 2..=gmax {
            let (push, report) = verify_theorem(g)?;
            ok &= report.pass;
            let sign = match &push.a {
                Some(a) if num_traits::Signed::is_positive(a) => "+",
                Some(a) if num_traits::Signed::is_negative(a) => "-",
                _ => "0",
            };
            rows.push(json!({
                "g": g,
                "dimension": report.dimension,
                "a": report.a,
                "lambda_coefficient": report.lambda_coefficient,
                "sign": sign,
                "sign_ok": report.sign_ok,
            }));
        }
        Ok((Status::from_bool(ok), json!({ "rows": rows })))
    })();
    r.finish(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn present_examples() {
        let r = cmd_present(2, Space::Siegel);
        assert_eq!(r.status, Status::Pass);
        assert_eq!(r.payload["relations"], json!(["l1^2 - 2*l2", "l2^2"]));
        assert_eq!(r.payload["graded_dimensions"], json!([1, 1, 1, 1]));
        let r1 = cmd_present(1, Space::Siegel);
        assert_eq!(r1.payload["relations"], json!(["l1^2"]));
        assert_eq!(r1.payload["graded_dimensions"], json!([1, 1]));
        let levi = cmd_present(3, Space::Levi);
        let names: Vec<&str> = levi.payload["generators"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x["name"].as_str().unwrap())
            .collect();
        assert_eq!(names, ["e1", "lt1", "lt2"]);
    }

    #[test]
    fn present_budget_and_subsets() {
        let r = cmd_present(5, Space::Full);
        assert_eq!(r.status, Status::Error);
        assert!(r.message.unwrap().contains("out of range"));
        let custom = cmd_present_subsets(3, "1,2,3", "e1-e2, e2-e3");
        assert_eq!(custom.status, Status::Pass);
        assert_eq!(custom.payload, cmd_present(3, Space::Siegel).payload);
        assert_eq!(cmd_present_subsets(3, "1,2", "3").status, Status::Error);
        assert_eq!(cmd_present_subsets(3, "e1+e2", "").status, Status::Error);
        assert_eq!(cmd_present_subsets(3, "4", "").status, Status::Error);
    }

    #[test]
    fn chern_examples() {
        let r = cmd_chern(2, "normal");
        assert_eq!(r.payload["weights"], json!(["2e1", "e1+e2"]));
        assert_eq!(r.payload["chern_classes"][2], json!("2*e1^2 + 2*e1*e2"));
        assert_eq!(cmd_chern(1, "tangent").payload["chern_classes"][1], json!("2*e1"));
        let h = cmd_chern(3, "hodge");
        assert_eq!(h.payload["chern_classes"][3], json!("e1*e2*e3"));
        assert_eq!(cmd_chern(2, "dual").status, Status::Error);
    }

    #[test]
    fn verify_examples() {
        assert_eq!(cmd_verify(2, Check::All).status, Status::Pass);
        let t = cmd_verify(4, Check::Theorem);
        assert_eq!(t.status, Status::Pass);
        assert_eq!(t.payload["theorem"]["a"], json!("1"));
        let one = cmd_verify(1, Check::Theorem);
        assert_eq!(one.status, Status::Error);
        assert!(one.message.unwrap().contains("precondition"));
        assert_eq!(cmd_verify(13, Check::SymmLemma).status, Status::Error);
    }

    #[test]
    fn table_rows_and_signs() {
        let r = cmd_table(3);
        let rows = r.payload["rows"].as_array().unwrap();
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0]["sign"], json!("+"));
        assert_eq!(rows[1]["sign"], json!("-"));
        assert_eq!(cmd_table(2).payload["rows"].as_array().unwrap().len(), 1);
        assert_eq!(cmd_table(1).status, Status::Error);
        assert_eq!(cmd_table(7).status, Status::Error);
        let text = r.to_text();
        assert!(text.contains("lambda coeff"));
    }

    #[test]
    fn reports_are_deterministic() {
        assert_eq!(cmd_table(3).to_json(), cmd_table(3).to_json());
        assert!(!cmd_table(3).to_json().contains("wall_time"));
        let timed = Report::timed(|| cmd_chern(2, "hodge"));
        assert!(timed.wall_time_ms.is_some());
    }

    #[test]
    fn parse_subset_forms() {
        assert_eq!(parse_subset(3, "").unwrap(), ParabolicSubset::empty(3).unwrap());
        assert_eq!(parse_subset(3, "2e3").unwrap(), ParabolicSubset::new(3, [2]).unwrap());
        assert!(parse_subset(3, "e1+e2").is_err());
        assert!(parse_subset(3, "0").is_err());
    }
}
