use std::fmt::Write as _;
use std::time::Duration;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessKind {
    Failure,
    Equality,
    Data,
}

impl WitnessKind {
    pub fn name(self) -> &'static str {
        match self {
            WitnessKind::Failure => "failure",
            WitnessKind::Equality => "equality",
            WitnessKind::Data => "data",
        }
    }
}

/// A graph plus the values that make it interesting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub kind: WitnessKind,
    pub graph6: String,
    pub params: String,
    pub values: String,
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub id: String,
    pub universe: String,
    pub seed: Option<u64>,
    pub instances: u64,
    pub passed: bool,
    pub notes: Vec<String>,
    pub witnesses: Vec<Witness>,
    pub runtime: Duration,
}

impl TheoremReport {
    pub(crate) fn new(id: impl Into<String>, universe: impl Into<String>) -> Self {
        TheoremReport {
            id: id.into(),
            universe: universe.into(),
            seed: None,
            instances: 0,
            passed: true,
            notes: Vec::new(),
            witnesses: Vec::new(),
            runtime: Duration::ZERO,
        }
    }

    pub(crate) fn witness(&mut self, kind: WitnessKind, graph6: impl Into<String>, params: impl Into<String>, values: impl Into<String>) {
        if kind == WitnessKind::Failure {
            self.passed = false;
        }
        self.witnesses.push(Witness {
            kind,
            graph6: graph6.into(),
            params: params.into(),
            values: values.into(),
        });
    }

    pub fn failures(&self) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(|w| w.kind == WitnessKind::Failure)
    }

    pub fn witnesses_of(&self, kind: WitnessKind) -> impl Iterator<Item = &Witness> {
        self.witnesses.iter().filter(move |w| w.kind == kind)
    }

    /// Human-readable report. Runtime is left out so that reruns compare equal.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "== {} ==", self.id);
        let _ = writeln!(out, "universe: {}", self.universe);
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed: {seed}");
        }
        let _ = writeln!(out, "instances: {}", self.instances);
        let _ = writeln!(out, "result: {}", if self.passed { "PASS" } else { "FAIL" });
        for note in &self.notes {
            let _ = writeln!(out, "note: {note}");
        }
        for w in &self.witnesses {
            let params = if w.params.is_empty() { String::new() } else { format!(" [{}]", w.params) };
            let _ = writeln!(out, "{} {}{} {}", w.kind.name(), w.graph6, params, w.values);
        }
        out
    }

    /// CSV rows without header: theorem, kind, graph6, params, values.
    pub fn csv_rows(&self) -> Vec<String> {
        self.witnesses
            .iter()
            .map(|w| {
                [self.id.as_str(), w.kind.name(), &w.graph6, &w.params, &w.values]
                    .iter()
                    .map(|f| csv_field(f))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect()
    }
}

pub const CSV_HEADER: &str = "theorem,kind,graph6,params,values";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
