//! End-to-end pipeline: model → adjoint matrix → spectrum → ladders →
//! commutator table → (optionally) eigenfunction ladders, rendered as JSON,
//! text or CSV.

use crate::adjoint::{adjoint_matrix, exact_json, validate_quadratic, ComplexMatrix, QuadraticHamiltonian};
use crate::bateman::{build_hd, dimensionless_b, psi0, psi1, BatemanParams};
use crate::dsl::parse_hamiltonian;
use crate::error::{Error, Result};
use crate::ladders::{build_ladders, commutator_table, CommutatorTable, LadderOperator};
use crate::scalar::{fmt_cq, fmt_rat, parse_rational, ComplexRational};
use crate::spectral::{eigen_decompose_with, CharPoly, SpectralResult, Tolerances};
use crate::wavefn::{annihilation_check, ladder_spectrum, SpectrumFamily};
use crate::weyl::SymbolStyle;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};
use std::fmt::Write as _;

/// Where the Hamiltonian comes from.
#[derive(Clone, Debug, PartialEq)]
pub enum ModelInput {
    Bateman(BatemanParams),
    DimensionlessB(BigRational),
    Expression(String),
}

fn rational_from_json(v: &Value, what: &str) -> Result<BigRational> {
    let bad = || Error::Input(format!("{what}: expected an integer, a \"a/b\" string or [num, den]"));
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(BigRational::from_integer(i.into())),
            None => parse_rational(&n.to_string()).ok_or_else(bad),
        },
        Value::String(s) => parse_rational(s).ok_or_else(bad),
        Value::Array(pair) if pair.len() == 2 => {
            let num = pair[0].as_i64().ok_or_else(bad)?;
            let den = pair[1].as_i64().ok_or_else(bad)?;
            if den == 0 {
                return Err(bad());
            }
            Ok(BigRational::new(num.into(), den.into()))
        }
        _ => Err(bad()),
    }
}

impl ModelInput {
    /// Accepts `{"bateman": {"m", "gamma", "omega"[, "hbar"]}}`,
    /// `{"b": [num, den]}` or `{"expression": "..."}`.
    pub fn from_json(v: &Value) -> Result<ModelInput> {
        if let Some(p) = v.get("bateman") {
            let field = |name: &str| {
                p.get(name)
                    .ok_or_else(|| Error::Input(format!("bateman model is missing \"{name}\"")))
                    .and_then(|x| rational_from_json(x, name))
            };
            let hbar = match p.get("hbar") {
                Some(h) => rational_from_json(h, "hbar")?,
                None => BigRational::from_integer(1.into()),
            };
            let params = BatemanParams::with_hbar(field("m")?, field("gamma")?, field("omega")?, hbar)?;
            return Ok(ModelInput::Bateman(params));
        }
        if let Some(b) = v.get("b") {
            return Ok(ModelInput::DimensionlessB(rational_from_json(b, "b")?));
        }
        if let Some(e) = v.get("expression") {
            let text = e.as_str().ok_or_else(|| Error::Input("\"expression\" must be a string".into()))?;
            return Ok(ModelInput::Expression(text.to_string()));
        }
        Err(Error::Input("model JSON needs one of \"bateman\", \"b\" or \"expression\"".into()))
    }

    /// Parses the `--bateman` flag value: `b=<rat>` or
    /// `m=<rat>,gamma=<rat>,omega=<rat>[,hbar=<rat>]`.
    pub fn from_bateman_flag(text: &str) -> Result<ModelInput> {
        let mut b = None;
        let (mut m, mut gamma, mut omega, mut hbar) = (None, None, None, None);
        for part in text.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Input(format!("--bateman: expected key=value, got \"{part}\"")))?;
            let r = parse_rational(value)
                .ok_or_else(|| Error::Input(format!("--bateman: \"{value}\" is not a rational number")))?;
            match key.trim() {
                "b" => b = Some(r),
                "m" => m = Some(r),
                "gamma" => gamma = Some(r),
                "omega" => omega = Some(r),
                "hbar" => hbar = Some(r),
                other => return Err(Error::Input(format!("--bateman: unknown parameter \"{other}\""))),
            }
        }
        match (b, m, gamma, omega) {
            (Some(b), None, None, None) if hbar.is_none() => Ok(ModelInput::DimensionlessB(b)),
            (None, Some(m), Some(gamma), Some(omega)) => {
                let hbar = hbar.unwrap_or_else(|| BigRational::from_integer(1.into()));
                Ok(ModelInput::Bateman(BatemanParams::with_hbar(m, gamma, omega, hbar)?))
            }
            _ => Err(Error::Input("--bateman takes either b=<rat> or m=,gamma=,omega=".into())),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReportConfig {
    pub model: ModelInput,
    pub ladder_states: Option<u32>,
    pub tolerances: Tolerances,
}

impl ReportConfig {
    pub fn new(model: ModelInput) -> Self {
        ReportConfig { model, ladder_states: None, tolerances: Tolerances::default() }
    }
}

/// A ladder family together with which ladders annihilate each state.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyReport {
    pub family: SpectrumFamily,
    pub raising: (String, String),
    /// Ladder names annihilating each entry, aligned with `family.entries`.
    pub annihilated_by: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub b: Option<BigRational>,
    pub params: Option<BatemanParams>,
    pub hamiltonian: QuadraticHamiltonian,
    pub style: SymbolStyle,
    pub matrix: ComplexMatrix,
    pub spectrum: SpectralResult,
    pub ladders: std::result::Result<Vec<LadderOperator>, String>,
    pub table: Option<CommutatorTable>,
    pub families: Vec<FamilyReport>,
}

pub fn ladder_name(i: usize) -> String {
    format!("Z{}", i + 1)
}

pub fn run_report(config: &ReportConfig) -> Result<Report> {
    let (b, params, hamiltonian, style) = match &config.model {
        ModelInput::Bateman(p) => {
            let b = dimensionless_b(p)?;
            (Some(b.clone()), Some(p.clone()), build_hd(&b), SymbolStyle::Alias)
        }
        ModelInput::DimensionlessB(b) => (Some(b.clone()), None, build_hd(b), SymbolStyle::Alias),
        ModelInput::Expression(text) => {
            let parsed = parse_hamiltonian(text)?;
            let h = validate_quadratic(parsed.to_polynomial())?;
            (None, None, h, parsed.style)
        }
    };
    let matrix = adjoint_matrix(&hamiltonian)?;
    let spectrum = eigen_decompose_with(&matrix, config.tolerances)?;
    let ladders = match build_ladders(&hamiltonian, &spectrum) {
        Ok(l) => Ok(l),
        Err(e @ Error::UnsupportedDefective { .. }) => Err(e.to_string()),
        Err(e) => return Err(e),
    };
    let table = match &ladders {
        Ok(l) => Some(commutator_table(l)?),
        Err(_) => None,
    };

    let mut families = Vec::new();
    if let Some(n_max) = config.ladder_states {
        if b.is_none() {
            return Err(Error::Input("--ladder-states needs a Bateman model (the vacua are model-specific)".into()));
        }
        let all = ladders.as_ref().map_err(|e| Error::Input(e.clone()))?;
        let pick = |positive: bool| -> Result<(usize, usize)> {
            let idx: Vec<usize> = all
                .iter()
                .enumerate()
                .filter(|(_, l)| {
                    let re = l.lambda().exact.as_ref().map(|z| z.re.clone()).unwrap_or_else(BigRational::zero);
                    if positive { re.is_positive() } else { re.is_negative() }
                })
                .map(|(i, _)| i)
                .collect();
            match idx.as_slice() {
                [a, b] => Ok((*a, *b)),
                _ => Err(Error::Verification {
                    stage: "report",
                    detail: "expected two exact ladders on each side of the spectrum".into(),
                }),
            }
        };
        // ψ₀ is raised by the Re λ > 0 ladders, ψ₁ by the Re λ < 0 ones.
        for (label, vacuum, positive) in [("vacuum0", psi0(), true), ("vacuum1", psi1(), false)] {
            let (a, c) = pick(positive)?;
            let family = ladder_spectrum(label, &hamiltonian, &vacuum, &all[a], &all[c], n_max, n_max)?;
            let mut annihilated_by = Vec::with_capacity(family.entries.len());
            for entry in &family.entries {
                let mut names = Vec::new();
                for (i, l) in all.iter().enumerate() {
                    if annihilation_check(l, &entry.function)? {
                        names.push(ladder_name(i));
                    }
                }
                annihilated_by.push(names);
            }
            families.push(FamilyReport { family, raising: (ladder_name(a), ladder_name(c)), annihilated_by });
        }
    }

    Ok(Report { b, params, hamiltonian, style, matrix, spectrum, ladders, table, families })
}

/// Runs the pipeline for every `b` in `values`, concurrently, keeping the
/// input order.
pub fn run_sweep(values: &[BigRational], ladder_states: Option<u32>, tolerances: Tolerances) -> Result<Vec<Report>> {
    std::thread::scope(|scope| {
        let handles: Vec<_> = values
            .iter()
            .map(|b| {
                let config = ReportConfig {
                    model: ModelInput::DimensionlessB(b.clone()),
                    ladder_states,
                    tolerances,
                };
                scope.spawn(move || run_report(&config))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("sweep worker panicked"))
            .collect()
    })
}

/// `b=<start>..<end>:<step>`, inclusive of `end` when it lies on the grid.
pub fn parse_sweep(text: &str) -> Result<Vec<BigRational>> {
    let bad = || Error::Input(format!("--sweep: expected b=<start>..<end>:<step>, got \"{text}\""));
    let range = text.trim().strip_prefix("b=").ok_or_else(bad)?;
    let (span, step) = range.split_once(':').ok_or_else(bad)?;
    let (start, end) = span.split_once("..").ok_or_else(bad)?;
    let (start, end, step) = (
        parse_rational(start).ok_or_else(bad)?,
        parse_rational(end).ok_or_else(bad)?,
        parse_rational(step).ok_or_else(bad)?,
    );
    if !step.is_positive() || end < start {
        return Err(Error::Input("--sweep: need step > 0 and end >= start".into()));
    }
    let mut out = Vec::new();
    let mut b = start;
    while b <= end {
        out.push(b.clone());
        b += &step;
        if out.len() > 10_000 {
            return Err(Error::Input("--sweep: more than 10000 points".into()));
        }
    }
    Ok(out)
}

/// One row per natural frequency per sweep point:
/// `b,re_lambda,im_lambda,algebraic,geometric,exact`.
pub fn sweep_csv(reports: &[Report]) -> String {
    let mut out = String::from("b,re_lambda,im_lambda,algebraic,geometric,exact\n");
    for r in reports {
        let b = r.b.as_ref().map(fmt_rat).unwrap_or_default();
        for f in &r.spectrum.frequencies {
            let exact = f.lambda_exact.as_ref().map(fmt_cq).unwrap_or_default();
            let _ = writeln!(
                out,
                "{b},{},{},{},{},\"{exact}\"",
                f.lambda.re, f.lambda.im, f.algebraic_multiplicity, f.geometric_multiplicity
            );
        }
    }
    out
}

fn cq_pair(z: &num_complex::Complex64) -> Value {
    json!([z.re, z.im])
}

impl Report {
    pub fn to_json(&self) -> Value {
        let h = self.hamiltonian.op();
        let ladders = match &self.ladders {
            Ok(list) => Value::Array(
                list.iter()
                    .enumerate()
                    .map(|(i, l)| {
                        let mut v = l.to_json(self.style);
                        v["name"] = json!(ladder_name(i));
                        v
                    })
                    .collect(),
            ),
            Err(_) => Value::Null,
        };
        let nonzero = self.table.as_ref().map(|t| {
            t.nonzero_upper()
                .into_iter()
                .map(|(a, b, v)| {
                    json!({
                        "pair": [ladder_name(a), ladder_name(b)],
                        "value": cq_pair(&v.approx),
                        "exact": v.exact.as_ref().map(exact_json),
                    })
                })
                .collect::<Vec<_>>()
        });
        let families: Vec<Value> = self
            .families
            .iter()
            .map(|f| {
                let mut v = f.family.to_json();
                v["raising"] = json!([f.raising.0, f.raising.1]);
                if let Some(entries) = v["entries"].as_array_mut() {
                    for (e, names) in entries.iter_mut().zip(&f.annihilated_by) {
                        e["annihilated_by"] = json!(names);
                    }
                }
                v
            })
            .collect();
        let mut out = json!({
            "num_modes": h.num_modes(),
            "hamiltonian": h.render(self.style),
            "energy_offset": exact_json(self.hamiltonian.offset()),
            "adjoint_matrix": self.matrix.to_json(),
            "spectrum": self.spectrum.to_json(),
            "ladders": ladders,
            "ladders_error": self.ladders.as_ref().err(),
            "commutator_table": self.table.as_ref().map(CommutatorTable::to_json),
            "nonzero_commutators": nonzero,
        });
        if let Some(b) = &self.b {
            out["b"] = json!(fmt_rat(b));
        }
        if let Some(p) = &self.params {
            out["physical"] = json!({
                "m": fmt_rat(&p.m),
                "gamma": fmt_rat(&p.gamma),
                "omega": fmt_rat(&p.omega),
                "hbar": fmt_rat(&p.hbar),
                "alpha_squared": fmt_rat(&p.alpha_squared()),
                "energy_unit": fmt_rat(&p.energy_unit()),
            });
        }
        if !families.is_empty() {
            out["ladder_states"] = Value::Array(families);
        }
        out
    }

    /// Byte-stable pretty JSON with a trailing newline.
    pub fn to_json_string(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report JSON serializes");
        s.push('\n');
        s
    }

    /// `family,n,m,re_E,im_E,square_integrable,annihilated_by` rows.
    pub fn spectrum_csv(&self) -> String {
        let mut out = String::from("family,n,m,re_E,im_E,square_integrable,annihilated_by\n");
        for f in &self.families {
            for (e, names) in f.family.entries.iter().zip(&f.annihilated_by) {
                let z = crate::scalar::to_c64(&e.energy);
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{}",
                    f.family.label,
                    e.n,
                    e.m,
                    z.re,
                    z.im,
                    e.square_integrable,
                    names.join(";")
                );
            }
        }
        out
    }

    pub fn to_text(&self, color: bool) -> String {
        let head = |s: &str| if color { format!("\x1b[1m{s}\x1b[0m") } else { s.to_string() };
        let mut out = String::new();
        if let Some(b) = &self.b {
            let _ = writeln!(out, "{} {}", head("b ="), fmt_rat(b));
        }
        if let Some(p) = &self.params {
            let _ = writeln!(
                out,
                "physical: m = {}, gamma = {}, omega = {}, hbar = {} (alpha^2 = {}, energy unit = {})",
                fmt_rat(&p.m),
                fmt_rat(&p.gamma),
                fmt_rat(&p.omega),
                fmt_rat(&p.hbar),
                fmt_rat(&p.alpha_squared()),
                fmt_rat(&p.energy_unit())
            );
        }
        let _ = writeln!(out, "{} {}", head("H ="), self.hamiltonian.op().render(self.style));
        if !self.hamiltonian.offset().is_zero() {
            let _ = writeln!(out, "energy offset: {}", fmt_cq(self.hamiltonian.offset()));
        }

        let _ = writeln!(out, "\n{}", head("adjoint matrix"));
        let n = self.matrix.rows();
        for i in 0..n {
            let row: Vec<String> = (0..n)
                .map(|j| match self.matrix.exact_get(i, j) {
                    Some(z) => fmt_cq(z),
                    None => format!("{}", self.matrix.get(i, j)),
                })
                .collect();
            let _ = writeln!(out, "  [{}]", row.join(", "));
        }

        let _ = writeln!(out, "\n{}", head("characteristic polynomial det(H - lambda I)"));
        let _ = writeln!(out, "  {}", render_char_poly(&self.spectrum.char_poly));

        let _ = writeln!(out, "\n{}", head("natural frequencies"));
        for f in &self.spectrum.frequencies {
            let value = match &f.lambda_exact {
                Some(z) => fmt_cq(z),
                None => format!("{:.12}", f.lambda),
            };
            let _ = writeln!(
                out,
                "  lambda = {value}  (algebraic {}, geometric {})",
                f.algebraic_multiplicity, f.geometric_multiplicity
            );
        }
        let _ = writeln!(out, "  defective: {}", self.spectrum.defective);

        let _ = writeln!(out, "\n{}", head("ladder operators"));
        match &self.ladders {
            Ok(list) => {
                for (i, l) in list.iter().enumerate() {
                    let _ = writeln!(out, "  {} = {}    [H, {}] = {} {}", ladder_name(i), l.render(self.style), ladder_name(i), l.lambda(), ladder_name(i));
                }
            }
            Err(e) => {
                let _ = writeln!(out, "  unavailable: {e}");
            }
        }
        if let Some(t) = &self.table {
            let _ = writeln!(out, "\n{}", head("nonzero commutators"));
            let nz = t.nonzero_upper();
            if nz.is_empty() {
                let _ = writeln!(out, "  none");
            }
            for (a, b, v) in nz {
                let _ = writeln!(out, "  [{}, {}] = {}", ladder_name(a), ladder_name(b), v);
            }
        }
        for f in &self.families {
            let _ = writeln!(
                out,
                "\n{} (vacuum energy {}, raised by {} and {})",
                head(&format!("ladder states: {}", f.family.label)),
                fmt_cq(&f.family.vacuum_energy),
                f.raising.0,
                f.raising.1
            );
            for (e, names) in f.family.entries.iter().zip(&f.annihilated_by) {
                let _ = writeln!(
                    out,
                    "  n={} m={}  E = {:<16} square-integrable: {:<5}  annihilated by: {}",
                    e.n,
                    e.m,
                    fmt_cq(&e.energy),
                    e.square_integrable,
                    if names.is_empty() { "-".to_string() } else { names.join(", ") }
                );
            }
            if !f.family.annihilated.is_empty() {
                let pts: Vec<String> = f.family.annihilated.iter().map(|(n, m)| format!("({n},{m})")).collect();
                let _ = writeln!(out, "  zero states at {}", pts.join(" "));
            }
        }
        out
    }
}

fn render_char_poly(p: &CharPoly) -> String {
    let power = |k: usize| match k {
        0 => String::new(),
        1 => "lambda".to_string(),
        _ => format!("lambda^{k}"),
    };
    match p {
        CharPoly::Exact(u) => {
            let mut out = String::new();
            for (k, c) in u.coeffs().iter().enumerate().rev().filter(|(_, c)| !c.is_zero()) {
                let c: &ComplexRational = c;
                let (negative, body) = if c.im.is_zero() {
                    (c.re.is_negative(), fmt_rat(&c.re.abs()))
                } else {
                    (false, fmt_cq(c))
                };
                let sign = match (out.is_empty(), negative) {
                    (true, true) => "-",
                    (true, false) => "",
                    (false, true) => " - ",
                    (false, false) => " + ",
                };
                let term = match (body.as_str(), k) {
                    (_, 0) => body.clone(),
                    ("1", _) => power(k),
                    _ => format!("{body}*{}", power(k)),
                };
                out.push_str(sign);
                out.push_str(&term);
            }
            if out.is_empty() { "0".into() } else { out }
        }
        CharPoly::Approximate(c) => {
            let terms: Vec<String> = c
                .iter()
                .enumerate()
                .rev()
                .map(|(k, z)| if k == 0 { format!("({z})") } else { format!("({z})*{}", power(k)) })
                .collect();
            format!("{} (floating point)", terms.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn bateman_flag_forms() {
        assert_eq!(ModelInput::from_bateman_flag("b=1/2").unwrap(), ModelInput::DimensionlessB(rat(1, 2)));
        match ModelInput::from_bateman_flag("m=2,gamma=3,omega=1/2").unwrap() {
            ModelInput::Bateman(p) => assert_eq!(dimensionless_b(&p).unwrap(), int(3)),
            other => panic!("{other:?}"),
        }
        assert!(ModelInput::from_bateman_flag("m=1,gamma=1").is_err());
        assert!(ModelInput::from_bateman_flag("b=x").is_err());
        assert!(ModelInput::from_bateman_flag("m=0,gamma=1,omega=1").is_err());
    }

    #[test]
    fn model_json_forms() {
        let m = ModelInput::from_json(&json!({"b": [1, 2]})).unwrap();
        assert_eq!(m, ModelInput::DimensionlessB(rat(1, 2)));
        let m = ModelInput::from_json(&json!({"bateman": {"m": 1, "gamma": "1/2", "omega": [2, 1]}})).unwrap();
        assert!(matches!(m, ModelInput::Bateman(_)));
        let m = ModelInput::from_json(&json!({"expression": "x1^2 + p1^2"})).unwrap();
        assert_eq!(m, ModelInput::Expression("x1^2 + p1^2".into()));
        assert!(ModelInput::from_json(&json!({"nothing": 1})).is_err());
    }

    #[test]
    fn sweep_reports_keep_order() {
        let bs = parse_sweep("b=0..2:1").unwrap();
        let reports = run_sweep(&bs, None, Tolerances::default()).unwrap();
        let got: Vec<_> = reports.iter().map(|r| r.b.clone().unwrap()).collect();
        assert_eq!(got, bs);
        let csv = sweep_csv(&reports);
        assert_eq!(csv.lines().count(), 1 + 2 + 4 + 4);
        assert!(csv.lines().any(|l| l.starts_with("2,1,1,1,1,")));
    }

    #[test]
    fn char_poly_text() {
        let r = run_report(&ReportConfig::new(ModelInput::DimensionlessB(int(1)))).unwrap();
        assert!(r.to_text(false).contains("lambda^4 - 3/2*lambda^2 + 25/16"));
    }

    #[test]
    fn sweep_grid() {
        assert_eq!(parse_sweep("b=0..1:1/2").unwrap(), vec![int(0), rat(1, 2), int(1)]);
        assert_eq!(parse_sweep("b=0..1:2/3").unwrap(), vec![int(0), rat(2, 3)]);
        assert!(parse_sweep("b=1..0:1").is_err());
        assert!(parse_sweep("c=0..1:1").is_err());
    }

    #[test]
    fn defective_model_reports_instead_of_failing() {
        let r = run_report(&ReportConfig::new(ModelInput::Expression("1/2*p1^2".into()))).unwrap();
        assert!(r.spectrum.defective);
        assert!(r.ladders.is_err());
        assert!(r.to_text(false).contains("unavailable"));
        assert_eq!(r.to_json()["ladders"], Value::Null);
    }

    #[test]
    fn ladder_states_need_bateman() {
        let mut c = ReportConfig::new(ModelInput::Expression("1/2*p1^2 + 1/2*x1^2".into()));
        c.ladder_states = Some(1);
        assert!(matches!(run_report(&c), Err(Error::Input(_))));
    }

    #[test]
    fn non_quadratic_expression_is_a_validation_error() {
        let e = run_report(&ReportConfig::new(ModelInput::Expression("x1^3".into()))).unwrap_err();
        assert!(matches!(e, Error::NotQuadratic { .. }));
        assert_eq!(e.exit_code(), 2);
    }
}
