use std::io::{self, Write};

use serde::Serialize;
use serde_json::value::RawValue;

/// One check: `computed` against `target` within `tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct Entry {
    pub name: String,
    pub target: Option<f64>,
    pub computed: Option<f64>,
    pub tol: Option<f64>,
    pub pass: bool,
}

impl Entry {
    /// Passes when `|computed - target| <= tol`.
    pub fn compare(name: impl Into<String>, target: f64, computed: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            target: Some(target),
            computed: Some(computed),
            tol: Some(tol),
            pass: (computed - target).abs() <= tol,
        }
    }

    pub fn failed(name: impl Into<String>, reason: &str) -> Self {
        Self {
            name: format!("{} [{reason}]", name.into()),
            target: None,
            computed: None,
            tol: None,
            pass: false,
        }
    }

    /// Marks a passing comparison as failed when the underlying quadrature
    /// did not converge.
    pub fn require_converged(mut self, converged: bool) -> Self {
        if !converged {
            self.pass = false;
            self.name.push_str(" [not converged]");
        }
        self
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub suite: String,
    pub entries: Vec<Entry>,
    pub seconds: Option<f64>,
}

impl Report {
    pub fn new(suite: impl Into<String>, entries: Vec<Entry>) -> Self {
        Self {
            suite: suite.into(),
            entries,
            seconds: None,
        }
    }

    pub fn pass(&self) -> bool {
        !self.entries.is_empty() && self.entries.iter().all(|e| e.pass)
    }

    pub fn write_json(&self, out: &mut dyn Write) -> io::Result<()> {
        let wire = WireReport {
            suite: &self.suite,
            entries: self
                .entries
                .iter()
                .map(|e| WireEntry {
                    name: &e.name,
                    target: e.target.and_then(number),
                    computed: e.computed.and_then(number),
                    tol: e.tol.and_then(number),
                    pass: e.pass,
                })
                .collect(),
            pass: self.pass(),
            seconds: self.seconds.and_then(number),
        };
        serde_json::to_writer_pretty(&mut *out, &wire)?;
        writeln!(out)
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> io::Result<()> {
        writeln!(out, "name,target,computed,tol,pass")?;
        for e in &self.entries {
            writeln!(
                out,
                "{},{},{},{},{}",
                csv_field(&e.name),
                cell(e.target),
                cell(e.computed),
                cell(e.tol),
                e.pass
            )?;
        }
        Ok(())
    }
}

#[derive(Serialize)]
struct WireEntry<'a> {
    name: &'a str,
    target: Option<Box<RawValue>>,
    computed: Option<Box<RawValue>>,
    tol: Option<Box<RawValue>>,
    pass: bool,
}

#[derive(Serialize)]
struct WireReport<'a> {
    suite: &'a str,
    entries: Vec<WireEntry<'a>>,
    pass: bool,
    seconds: Option<Box<RawValue>>,
}

/// 17 significant digits, so values round-trip exactly.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Non-finite values become `null`.
fn number(v: f64) -> Option<Box<RawValue>> {
    v.is_finite()
        .then(|| RawValue::from_string(fmt_float(v)).expect("formatted float is valid JSON"))
}

fn cell(v: Option<f64>) -> String {
    v.map(fmt_float).unwrap_or_default()
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_owned()
    }
}
