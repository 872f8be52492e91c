//! Reports printed by every verb, as text or JSON.

use std::fmt::Write as _;
use std::time::Instant;

use jacobi_core::extcalc::{DiffForm, MultiVector};
use jacobi_core::residual::Residual;
use jacobi_core::{Chart, Expr};
use serde::Serialize;

/// A named expression: a tensor component (`"12"`), a residual label, or the
/// result of a computation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Item {
    pub key: String,
    pub value: String,
}

impl Item {
    pub fn new(key: impl Into<String>, value: impl Into<String>) -> Item {
        Item {
            key: key.into(),
            value: value.into(),
        }
    }
}

pub fn expr_items(key: &str, e: &Expr, chart: &Chart) -> Vec<Item> {
    vec![Item::new(key, e.to_string_on(chart))]
}

pub fn multivector_items(m: &MultiVector) -> Vec<Item> {
    m.to_strings().into_iter().map(|(k, v)| Item::new(k, v)).collect()
}

pub fn form_items(m: &DiffForm) -> Vec<Item> {
    m.to_strings().into_iter().map(|(k, v)| Item::new(k, v)).collect()
}

/// Residuals listed per verdict in text reports; JSON lists all of them.
pub const TEXT_RESIDUALS: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
    /// Nonzero residuals, in the expression grammar.
    pub residuals: Vec<Item>,
    /// Seeds of the trials that produced the residuals.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub seeds: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub millis: Option<f64>,
}

impl Verdict {
    /// Passes iff every item is zero; only nonzero items are kept.
    pub fn from_items(name: impl Into<String>, items: Vec<Item>) -> Verdict {
        let residuals: Vec<Item> = items.into_iter().filter(|i| i.value != "0").collect();
        Verdict {
            name: name.into(),
            pass: residuals.is_empty(),
            residuals,
            seeds: vec![],
            trials: None,
            millis: None,
        }
    }

    /// A sampled check: passes iff every residual is zero.
    pub fn from_residuals(name: impl Into<String>, rs: &[Residual], chart: &Chart) -> Verdict {
        let bad: Vec<&Residual> = rs.iter().filter(|r| !r.is_zero()).collect();
        Verdict {
            name: name.into(),
            pass: bad.is_empty(),
            residuals: bad.iter().map(|r| Item::new(&r.check, r.value.to_string_on(chart))).collect(),
            seeds: bad.iter().map(|r| r.seed).collect(),
            trials: Some(rs.len()),
            millis: None,
        }
    }

    pub fn flag(name: impl Into<String>, pass: bool, detail: Vec<Item>) -> Verdict {
        Verdict {
            name: name.into(),
            pass,
            residuals: detail,
            seeds: vec![],
            trials: None,
            millis: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub structure: String,
    pub kind: String,
    pub chart: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    /// Computed values, such as a bracket or the components of a field.
    pub results: Vec<(String, Vec<Item>)>,
    pub verdicts: Vec<Verdict>,
    pub overall: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub total_millis: Option<f64>,
    #[serde(skip)]
    timings: Option<Instant>,
}

impl Report {
    pub fn new(command: &str, structure: &str, kind: &str, chart: &Chart, timings: bool) -> Report {
        Report {
            command: command.into(),
            structure: structure.into(),
            kind: kind.into(),
            chart: chart.names().to_vec(),
            seed: None,
            trials: None,
            degree: None,
            results: vec![],
            verdicts: vec![],
            overall: true,
            total_millis: None,
            timings: timings.then(Instant::now),
        }
    }

    pub fn result(&mut self, label: impl Into<String>, items: Vec<Item>) {
        self.results.push((label.into(), items));
    }

    /// Runs `check` and records its verdict, timed when timings are on.
    pub fn run(&mut self, check: impl FnOnce() -> Verdict) {
        let start = Instant::now();
        let mut v = check();
        if self.timings.is_some() {
            v.millis = Some(start.elapsed().as_secs_f64() * 1e3);
        }
        self.overall &= v.pass;
        self.verdicts.push(v);
    }

    pub fn finish(&mut self) {
        if let Some(start) = self.timings {
            self.total_millis = Some(start.elapsed().as_secs_f64() * 1e3);
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "{} {} ({} on {})", self.command, self.structure, self.kind, self.chart.join(", "));
        let params: Vec<String> = [
            self.seed.map(|v| format!("seed {v}")),
            self.trials.map(|v| format!("trials {v}")),
            self.degree.map(|v| format!("degree {v}")),
        ]
        .into_iter()
        .flatten()
        .collect();
        if !params.is_empty() {
            let _ = writeln!(s, "{}", params.join(", "));
        }
        for (label, items) in &self.results {
            if let [one] = items.as_slice() {
                if one.key == label.as_str() {
                    let _ = writeln!(s, "{label} = {}", one.value);
                    continue;
                }
            }
            let _ = writeln!(s, "{label}:");
            if items.is_empty() {
                let _ = writeln!(s, "  0");
            }
            for i in items {
                let _ = writeln!(s, "  {} = {}", i.key, i.value);
            }
        }
        for v in &self.verdicts {
            let _ = write!(s, "{} {}", if v.pass { "PASS" } else { "FAIL" }, v.name);
            if let Some(t) = v.trials {
                let _ = write!(s, " ({t} trials)");
            }
            if let Some(ms) = v.millis {
                let _ = write!(s, " [{ms:.1} ms]");
            }
            s.push('\n');
            for (n, i) in v.residuals.iter().enumerate().take(TEXT_RESIDUALS) {
                match v.seeds.get(n) {
                    Some(seed) => {
                        let _ = writeln!(s, "  {} [trial seed {seed}] = {}", i.key, i.value);
                    }
                    None => {
                        let _ = writeln!(s, "  {} = {}", i.key, i.value);
                    }
                }
            }
            if v.residuals.len() > TEXT_RESIDUALS {
                let _ = writeln!(s, "  ... {} more nonzero residuals (see --json)", v.residuals.len() - TEXT_RESIDUALS);
            }
        }
        if !self.verdicts.is_empty() {
            let _ = writeln!(s, "overall: {}", if self.overall { "PASS" } else { "FAIL" });
        }
        if let Some(ms) = self.total_millis {
            let _ = writeln!(s, "total: {ms:.1} ms");
        }
        s
    }
}
