//! Run reports: one structure serving both the human-readable table and the
//! `--json` machine form.

use serde::Serialize;

use entwit_core::criteria::CriterionReport;

#[derive(Debug, Clone, Serialize)]
pub struct CriterionRow {
    pub criterion: String,
    pub verdict: String,
    pub score: f64,
    pub detail: String,
}

impl From<&CriterionReport> for CriterionRow {
    fn from(r: &CriterionReport) -> Self {
        Self {
            criterion: r.criterion.name().to_string(),
            verdict: r.verdict.name().to_string(),
            score: r.score,
            detail: r.detail.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ThresholdRow {
    pub criterion: String,
    pub lambda_c: f64,
    pub detected: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub lambda: f64,
    pub ppt_score: f64,
    pub reduction1_score: f64,
    pub reduction2_score: f64,
    pub phi_score: f64,
    pub realign_excess: f64,
    pub major_violation: f64,
    pub witness_expectation: f64,
}

pub const SWEEP_CSV_HEADER: &str =
    "lambda,ppt_score,reduction1_score,reduction2_score,phi_score,realign_excess,major_violation,witness_expectation";

impl SweepRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            self.lambda,
            self.ppt_score,
            self.reduction1_score,
            self.reduction2_score,
            self.phi_score,
            self.realign_excess,
            self.major_violation,
            self.witness_expectation
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OptimalitySection {
    pub span_rank: usize,
    pub space_dim: usize,
    pub theta_residual: f64,
    pub theta_invariant: bool,
    /// Mixture parameter of the nondecomposability exhibit, `1/(N+2)`.
    pub exhibit_lambda: f64,
    pub exhibit_ppt_min_eigenvalue: f64,
    pub exhibit_witness_expectation: f64,
    pub confirmed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRow {
    pub criterion: String,
    pub detections: usize,
    pub samples: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input_digest: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_file: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_digest: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub criteria: Vec<CriterionRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_expectation: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ppt_min_eigenvalue: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub thresholds: Option<Vec<ThresholdRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sweep: Option<Vec<SweepRow>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub optimality: Option<OptimalitySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bench: Option<Vec<BenchRow>>,
    pub wall_ms: f64,
}

impl RunReport {
    pub fn new(command: impl Into<String>) -> Self {
        Self {
            command: command.into(),
            input_digest: None,
            output_file: None,
            output_digest: None,
            criteria: Vec::new(),
            witness_expectation: None,
            ppt_min_eigenvalue: None,
            thresholds: None,
            sweep: None,
            optimality: None,
            bench: None,
            wall_ms: 0.0,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    /// Render for a terminal. Sweep rows are emitted as the CSV itself when
    /// the command did not already write them to a file.
    pub fn render_human(&self) -> String {
        let mut out = String::new();
        let mut push = |line: &str| {
            out.push_str(line);
            out.push('\n');
        };

        if let Some(rows) = &self.sweep {
            if self.output_file.is_none() {
                push(SWEEP_CSV_HEADER);
                for row in rows {
                    push(&row.to_csv());
                }
                return out;
            }
        }

        push(&format!("command: {}", self.command));
        if let Some(digest) = &self.input_digest {
            push(&format!("input:   {digest}"));
        }
        if let Some(file) = &self.output_file {
            push(&format!("wrote:   {file}"));
        }

        if !self.criteria.is_empty() {
            push("");
            push(&format!(
                "{:<14} {:<13} {:>14}  detail",
                "criterion", "verdict", "score"
            ));
            for row in &self.criteria {
                push(&format!(
                    "{:<14} {:<13} {:>14.6e}  {}",
                    row.criterion, row.verdict, row.score, row.detail
                ));
            }
        }
        if let Some(value) = self.witness_expectation {
            push(&format!("witness expectation tr(Wρ): {value:.12}"));
        }
        if let Some(value) = self.ppt_min_eigenvalue {
            push(&format!("partial transpose min eigenvalue: {value:.6e}"));
        }
        if let Some(rows) = &self.thresholds {
            push("");
            push(&format!("{:<14} {:>10}  detected", "criterion", "lambda_c"));
            for row in rows {
                push(&format!(
                    "{:<14} {:>10.6}  {}",
                    row.criterion, row.lambda_c, row.detected
                ));
            }
        }
        if let Some(section) = &self.optimality {
            push("");
            push(&format!(
                "span rank: {}/{}",
                section.span_rank, section.space_dim
            ));
            push(&format!(
                "partial time reversal residual: {:.3e} (invariant: {})",
                section.theta_residual, section.theta_invariant
            ));
            push(&format!(
                "exhibit at λ = {:.6}: PPT min eigenvalue {:.3e}, tr(Wρ) = {:.6}",
                section.exhibit_lambda,
                section.exhibit_ppt_min_eigenvalue,
                section.exhibit_witness_expectation
            ));
            push(&format!(
                "optimality confirmed: {}",
                if section.confirmed { "yes" } else { "no" }
            ));
        }
        if let Some(rows) = &self.bench {
            push("");
            push(&format!(
                "{:<14} {:>10} {:>10}",
                "criterion", "detections", "samples"
            ));
            for row in rows {
                push(&format!(
                    "{:<14} {:>10} {:>10}",
                    row.criterion, row.detections, row.samples
                ));
            }
        }
        push(&format!("wall time: {:.1} ms", self.wall_ms));
        out
    }
}
