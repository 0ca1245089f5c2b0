//! Report structure shared by every subcommand.

use serde::Serialize;

use fzeta_core::laurent::Comparison;
use fzeta_core::motive::ResidualReport;
use fzeta_core::special::AT_SLOT_CONVENTION;

use crate::config::RunConfig;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Nothing contradicts the identity, but the certified floor is below the requirement.
    Incomparable,
    Error,
}

impl Status {
    pub fn label(self) -> &'static str {
        match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Incomparable => "INCOMPARABLE",
            Status::Error => "ERROR",
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Status::Fail | Status::Error)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub runtime_ms: Option<u64>,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Check { name: name.into(), status, detail: detail.into(), runtime_ms: None }
    }

    pub fn from_bool(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail }, detail)
    }

    pub fn error(name: impl Into<String>, err: impl std::fmt::Display) -> Self {
        Self::new(name, Status::Error, err.to_string())
    }

    /// An identity compared to precision, required to hold to `O(z^required)`.
    pub fn from_comparison(name: impl Into<String>, cmp: &Comparison, required: i64) -> Self {
        match *cmp {
            Comparison::Equal { precision: None } => Self::new(name, Status::Pass, "equal exactly"),
            Comparison::Equal { precision: Some(p) } if p >= required => {
                Self::new(name, Status::Pass, format!("equal to O(z^{p})"))
            }
            Comparison::Equal { precision: Some(p) } => Self::new(
                name,
                Status::Incomparable,
                format!("incomparable precision: equal to O(z^{p}), need O(z^{required})"),
            ),
            Comparison::Unequal { exponent } => {
                Self::new(name, Status::Fail, format!("first difference at z^{exponent}"))
            }
            Comparison::Incomparable { precision } => Self::new(
                name,
                Status::Incomparable,
                format!("incomparable precision: no overlap below O(z^{precision})"),
            ),
        }
    }

    /// A negative control: the comparison must find a located difference.
    /// A negative control passes when the comparison locates a difference.
    /// Agreement only counts against it once the window reaches `required`.
    pub fn control_from_comparison(name: impl Into<String>, cmp: &Comparison, required: i64) -> Self {
        match *cmp {
            Comparison::Unequal { exponent } => {
                Self::new(name, Status::Pass, format!("perturbation detected at z^{exponent}"))
            }
            Comparison::Equal { precision: Some(pr) } if pr < required => Self::new(
                name,
                Status::Incomparable,
                format!("incomparable precision: agreement to O(z^{pr}), below required {required}"),
            ),
            Comparison::Equal { precision } => Self::new(
                name,
                Status::Fail,
                format!("perturbation not detected (equal to {})", fmt_floor(precision)),
            ),
            Comparison::Incomparable { precision } => Self::new(
                name,
                Status::Incomparable,
                format!("incomparable precision: no overlap below O(z^{precision})"),
            ),
        }
    }

    pub fn from_residual(name: impl Into<String>, r: &ResidualReport) -> Self {
        if r.passed() {
            return Self::new(name, Status::Pass, format!("residual vanishes to floor {}", fmt_floor(r.floor)));
        }
        if let Some((row, col, k, v)) = r.witness() {
            return Self::new(
                name,
                Status::Fail,
                format!("residual entry ({row},{col}) nonzero at t^{k} z^{v}"),
            );
        }
        Self::new(
            name,
            Status::Incomparable,
            format!("incomparable precision: floor {} below required {}", fmt_floor(r.floor), r.required),
        )
    }
}

pub fn fmt_floor(p: Option<i64>) -> String {
    match p {
        Some(p) => format!("O(z^{p})"),
        None => "exact".into(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Conventions {
    pub uniformizer: &'static str,
    pub at_slot: &'static str,
    pub twisted_form: &'static str,
    pub field_modulus: &'static str,
}

pub fn conventions() -> Conventions {
    Conventions {
        uniformizer: "z = (-theta)^(-1/(q-1)); theta = -z^-(q-1); the fixed root (-theta)^(1/(q-1)) is z^-1",
        at_slot: AT_SLOT_CONVENTION,
        twisted_form: "Frobenius equations are verified as Psi = Phi^(l) Psi^(l) (and Psi = Phi'^(ls) Psi^(ls)); no negative twists",
        field_modulus: "F_(p^m) uses the lexicographically least monic irreducible modulus; embeddings use the least root",
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub config: RunConfig,
    pub conventions: Conventions,
    pub checks: Vec<Check>,
    pub results: Vec<serde_json::Value>,
}

impl Report {
    pub fn new(command: &str, config: &RunConfig) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            command: command.into(),
            config: config.clone(),
            conventions: conventions(),
            checks: Vec::new(),
            results: Vec::new(),
        }
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status.is_failure())
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() {
            1
        } else {
            0
        }
    }

    pub fn counts(&self) -> [usize; 4] {
        let mut n = [0; 4];
        for c in &self.checks {
            n[c.status as usize] += 1;
        }
        n
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("fzeta {} (schema {})\n", self.command, self.schema_version);
        let c = &self.conventions;
        out += &format!("uniformizer: {}\nat slot: {}\ntwisted form: {}\nfield modulus: {}\n", c.uniformizer, c.at_slot, c.twisted_form, c.field_modulus);
        for r in &self.results {
            out += &format!("{}\n", serde_json::to_string(r).expect("result serializes"));
        }
        for ch in &self.checks {
            out += &format!("{:<12} {}: {}", ch.status.label(), ch.name, ch.detail);
            if let Some(ms) = ch.runtime_ms {
                out += &format!(" [{ms} ms]");
            }
            out.push('\n');
        }
        let [pass, fail, inc, err] = self.counts();
        out += &format!("{} checks: {pass} pass, {fail} fail, {inc} incomparable, {err} error\n", self.checks.len());
        out
    }
}
