//! Deterministic report construction for the CLI: every report is a
//! serializable struct with a plain-text rendering. Identical input always
//! produces byte-identical output; rationals appear as exact strings in
//! both renderings.

use serde::Serialize;

use crate::catalog::{CatalogEntry, Payload, Provenance};
use crate::chain::LcReport;
use crate::contraction::{ContractionError, ContractionModel};
use crate::exactnum::{AffineRational, Rational};
use crate::picard::DivisorClass;
use crate::verify::{CheckStatus, VerifyReport};
use crate::wps::BetaReport;

fn push_line(out: &mut String, line: impl AsRef<str>) {
    out.push_str(line.as_ref());
    out.push('\n');
}

#[derive(Debug, Serialize)]
pub struct LinesReport {
    pub n: usize,
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<DivisorClass>>,
}

impl LinesReport {
    pub fn text(&self) -> String {
        let mut out = String::new();
        push_line(
            &mut out,
            format!(
                "lines on the blow-up of the plane at n={} points: {}",
                self.n, self.count
            ),
        );
        if let Some(classes) = &self.classes {
            for c in classes {
                push_line(&mut out, format!("  {c}"));
            }
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct OrbitRow {
    pub multiplicity: u64,
    pub representative: DivisorClass,
    pub pullback_coeffs: Vec<Rational>,
}

#[derive(Debug, Serialize)]
pub struct OrbitsReport {
    pub model: String,
    pub ade_type: String,
    pub orbit_count: usize,
    pub line_total: u64,
    pub orbits: Vec<OrbitRow>,
}

impl OrbitsReport {
    pub fn build(label: &str, model: &ContractionModel) -> Result<Self, ContractionError> {
        let orbits = model.line_orbits()?;
        let line_total = orbits.iter().map(|o| o.multiplicity).sum();
        Ok(OrbitsReport {
            model: label.to_string(),
            ade_type: model.ade_type().to_string(),
            orbit_count: orbits.len(),
            line_total,
            orbits: orbits
                .into_iter()
                .map(|o| OrbitRow {
                    multiplicity: o.multiplicity,
                    representative: o.representative,
                    pullback_coeffs: o.pullback_coeffs,
                })
                .collect(),
        })
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        push_line(
            &mut out,
            format!(
                "model {}: type {}, {} orbits covering {} lines",
                self.model, self.ade_type, self.orbit_count, self.line_total
            ),
        );
        for o in &self.orbits {
            let coeffs: Vec<String> = o.pullback_coeffs.iter().map(|c| c.to_string()).collect();
            push_line(
                &mut out,
                format!(
                    "  multiplicity {:>3}  representative {}  pull-back [{}]",
                    o.multiplicity,
                    o.representative,
                    coeffs.join(", ")
                ),
            );
        }
        out
    }
}

#[derive(Debug, Serialize)]
pub struct PullbackReport {
    pub model: String,
    pub class: DivisorClass,
    pub coefficients: Vec<(DivisorClass, Rational)>,
}

impl PullbackReport {
    pub fn build(
        label: &str,
        model: &ContractionModel,
        class: DivisorClass,
    ) -> Result<Self, ContractionError> {
        let coeffs = model.mumford_pullback(&class)?;
        Ok(PullbackReport {
            model: label.to_string(),
            coefficients: model.roots().iter().cloned().zip(coeffs).collect(),
            class,
        })
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        push_line(
            &mut out,
            format!("model {}: pull-back of {}", self.model, self.class),
        );
        for (root, coeff) in &self.coefficients {
            push_line(&mut out, format!("  {coeff} on {root}"));
        }
        out
    }
}

/// Threshold scan of a contraction model over `(0, cmax)`.
#[derive(Debug, Serialize)]
pub struct ContractionLctReport {
    pub model: String,
    pub variant: String,
    pub ade_type: String,
    pub cmax: Rational,
    pub roots: Vec<(DivisorClass, AffineRational)>,
    /// Minimum over the contraction exceptionals (not a minimal log
    /// discrepancy over all valuations).
    pub min_over_exceptionals: AffineRational,
    pub threshold: Option<Rational>,
    pub verdict: String,
}

impl ContractionLctReport {
    pub fn build(
        label: &str,
        variant: &str,
        model: &ContractionModel,
        cmax: &Rational,
    ) -> Result<Self, String> {
        let a = model
            .boundary_log_discrepancies()
            .map_err(|e| e.to_string())?;
        let min = crate::verify::minimum_over_interval(&a, cmax)?;
        let threshold = model
            .instability_threshold(cmax)
            .map_err(|e| e.to_string())?;
        let verdict = match &threshold {
            Some(t) => format!(
                "destabilized: min A over contraction exceptionals reaches 0 at c = {t} < {cmax}; A < 0 strictly above the threshold"
            ),
            None => format!("A >= 0 over the contraction exceptionals on all of (0, {cmax})"),
        };
        Ok(ContractionLctReport {
            model: label.to_string(),
            variant: variant.to_string(),
            ade_type: model.ade_type().to_string(),
            cmax: cmax.clone(),
            roots: model.roots().iter().cloned().zip(a).collect(),
            min_over_exceptionals: min,
            threshold,
            verdict,
        })
    }

    pub fn negative(&self) -> bool {
        self.threshold.is_some()
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        push_line(
            &mut out,
            format!(
                "model {} [{}]: type {}, interval (0, {})",
                self.model, self.variant, self.ade_type, self.cmax
            ),
        );
        for (root, a) in &self.roots {
            push_line(&mut out, format!("  A = {a}  on {root}"));
        }
        push_line(
            &mut out,
            format!(
                "  min over contraction exceptionals: {}",
                self.min_over_exceptionals
            ),
        );
        push_line(&mut out, format!("  verdict: {}", self.verdict));
        out
    }
}

/// Chain log-canonicity report over `(0, cmax)`.
#[derive(Debug, Serialize)]
pub struct ChainLctReport {
    pub model: String,
    pub variant: String,
    pub cmax: Rational,
    #[serde(flatten)]
    pub lc: LcReport,
    pub verdict: String,
}

impl ChainLctReport {
    pub fn build(label: &str, variant: &str, lc: LcReport, cmax: &Rational) -> Self {
        let verdict = if lc.holds_on_interval {
            format!("log canonical on all of (0, {cmax})")
        } else {
            format!(
                "log canonical only on (0, {}); binding constraint {} = {} reaches 0 there",
                lc.lc_below, lc.binding_name, lc.binding
            )
        };
        ChainLctReport {
            model: label.to_string(),
            variant: variant.to_string(),
            cmax: cmax.clone(),
            lc,
            verdict,
        }
    }

    pub fn negative(&self) -> bool {
        !self.lc.holds_on_interval
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        push_line(
            &mut out,
            format!(
                "model {} [{}]: interval (0, {})",
                self.model, self.variant, self.cmax
            ),
        );
        for (label, a) in &self.lc.exceptionals {
            push_line(&mut out, format!("  A({label}) = {a}"));
        }
        for name in &self.lc.coefficient_violations {
            push_line(
                &mut out,
                format!("  WARNING: coefficient of {name} leaves [0, 1]"),
            );
        }
        push_line(
            &mut out,
            format!(
                "  binding constraint: {} = {}",
                self.lc.binding_name, self.lc.binding
            ),
        );
        push_line(&mut out, format!("  verdict: {}", self.verdict));
        out
    }
}

#[derive(Debug, Serialize)]
pub struct BetaReportRendered {
    pub model: String,
    pub variant: String,
    pub cmax: Rational,
    #[serde(flatten)]
    pub report: BetaReport,
}

impl BetaReportRendered {
    pub fn build(label: &str, variant: &str, report: BetaReport, cmax: &Rational) -> Self {
        BetaReportRendered {
            model: label.to_string(),
            variant: variant.to_string(),
            cmax: cmax.clone(),
            report,
        }
    }

    pub fn negative(&self) -> bool {
        !matches!(
            self.report.verdict,
            crate::wps::WpsVerdict::PolystableCandidate
        )
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        push_line(
            &mut out,
            format!(
                "model {} [{}]: interval (0, {})",
                self.model, self.variant, self.cmax
            ),
        );
        for row in &self.report.rows {
            let sign = if row.beta.is_zero() {
                "identically zero".to_string()
            } else {
                row.beta_positivity.to_string()
            };
            push_line(
                &mut out,
                format!(
                    "  {}{}: A = {}, S = {}, beta = {} ({})",
                    row.divisor,
                    if row.horizontal { " (horizontal)" } else { "" },
                    row.a,
                    row.s,
                    row.beta,
                    sign
                ),
            );
        }
        push_line(
            &mut out,
            format!("  verdict: {} [{}]", self.report.verdict, self.report.scope),
        );
        out
    }
}

#[derive(Debug, Serialize)]
pub struct WallsRow {
    pub id: String,
    pub variant: String,
    pub kind: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold: Option<Rational>,
}

#[derive(Debug, Serialize)]
pub struct WallsReport {
    pub degree: i64,
    pub cmax: Option<Rational>,
    pub rows: Vec<WallsRow>,
    pub summary: String,
}

impl WallsReport {
    pub fn build(degree: i64, entries: &[&CatalogEntry]) -> Self {
        let mut rows = Vec::new();
        let mut candidates: Vec<Rational> = Vec::new();
        let cmax = entries.first().map(|e| e.cmax.clone());
        for entry in entries {
            for variant in &entry.variants {
                let (status, threshold) = match &variant.payload {
                    Payload::Contraction(m) => match m.instability_threshold(&entry.cmax) {
                        Ok(Some(t)) => {
                            candidates.push(t.clone());
                            (
                                format!("wall candidate at c = {t} (A < 0 strictly above it)"),
                                Some(t),
                            )
                        }
                        Ok(None) => (format!("no wall candidate below {}", entry.cmax), None),
                        Err(e) => (format!("engine error: {e}"), None),
                    },
                    Payload::Chain(chain) => match chain.lc_verdict(&entry.cmax) {
                        Ok(lc) if lc.holds_on_interval => {
                            (format!("no wall candidate below {}", entry.cmax), None)
                        }
                        Ok(lc) => {
                            candidates.push(lc.lc_below.clone());
                            (
                                format!("lc fails at c = {} ({})", lc.lc_below, lc.binding_name),
                                Some(lc.lc_below),
                            )
                        }
                        Err(e) => (format!("engine error: {e}"), None),
                    },
                    Payload::Wps { .. } => (
                        "hypothesis-conditional (beta verdict per hypothesis; no unconditional wall candidate)"
                            .to_string(),
                        None,
                    ),
                };
                rows.push(WallsRow {
                    id: entry.id.to_string(),
                    variant: variant.label.to_string(),
                    kind: variant.payload.kind().to_string(),
                    status,
                    threshold,
                });
            }
        }
        candidates.sort();
        candidates.dedup();
        let summary = if candidates.is_empty() {
            match &cmax {
                Some(c) => format!("no wall candidates below {c} for degree {degree}"),
                None => format!("no catalog entries of degree {degree}"),
            }
        } else {
            let list: Vec<String> = candidates.iter().map(|c| c.to_string()).collect();
            format!("wall candidates for degree {degree}: {}", list.join(", "))
        };
        WallsReport {
            degree,
            cmax,
            rows,
            summary,
        }
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        push_line(&mut out, format!("degree {} scan", self.degree));
        for row in &self.rows {
            push_line(
                &mut out,
                format!(
                    "  {} [{}] ({}): {}",
                    row.id, row.variant, row.kind, row.status
                ),
            );
        }
        push_line(&mut out, self.summary.clone());
        out
    }
}

pub fn verify_text(report: &VerifyReport) -> String {
    let mut out = String::new();
    for check in &report.checks {
        let status = match check.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Warn => "WARN",
            CheckStatus::Fail => "FAIL",
        };
        let provenance = match check.provenance {
            Provenance::Source => "source",
            Provenance::SourceConflicted => "source-conflicted",
            Provenance::Derived => "derived",
        };
        let mut line = format!(
            "{status} {}/{} {}: engine {}",
            check.entry, check.variant, check.quantity, check.engine
        );
        if check.status == CheckStatus::Fail {
            line.push_str(&format!(" (expected {} [{provenance}])", check.expected));
        }
        if check.status == CheckStatus::Warn {
            line.push_str(&format!(" [{provenance}; informational]"));
        }
        if !check.note.is_empty() {
            line.push_str(&format!("  -- {}", check.note));
        }
        push_line(&mut out, line);
    }
    let (pass, warn, fail) = report.counts();
    push_line(
        &mut out,
        format!("{pass} passed, {warn} warnings, {fail} failed"),
    );
    out
}

#[derive(Debug, Serialize)]
pub struct InterpolateRow {
    pub variant: String,
    pub kind: String,
    pub holds: Option<bool>,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct InterpolateReport {
    pub model: String,
    pub r: i64,
    pub interval_end: Rational,
    pub rows: Vec<InterpolateRow>,
    pub applicable: bool,
    pub verdict: String,
}

impl InterpolateReport {
    pub fn build(entry: &CatalogEntry, r: i64) -> Self {
        let end = Rational::ratio(1, r);
        let mut rows = Vec::new();
        let mut all_hold = true;
        let mut any_evidence = false;
        for variant in &entry.variants {
            let row = match &variant.payload {
                Payload::Contraction(m) => match m.boundary_log_discrepancies() {
                    Ok(a) => {
                        let holds = a
                            .iter()
                            .all(|f| !f.constant.is_negative() && !f.evaluate(&end).is_negative());
                        let detail = if holds {
                            format!("A >= 0 on (0, {end}] over the contraction exceptionals")
                        } else {
                            let bad = a
                                .iter()
                                .find(|f| f.evaluate(&end).is_negative())
                                .map(|f| f.to_string())
                                .unwrap_or_default();
                            format!("A = {bad} is negative at c = {end}")
                        };
                        any_evidence = true;
                        all_hold &= holds;
                        InterpolateRow {
                            variant: variant.label.to_string(),
                            kind: "contraction".to_string(),
                            holds: Some(holds),
                            detail,
                        }
                    }
                    Err(e) => {
                        all_hold = false;
                        InterpolateRow {
                            variant: variant.label.to_string(),
                            kind: "contraction".to_string(),
                            holds: Some(false),
                            detail: format!("engine error: {e}"),
                        }
                    }
                },
                Payload::Chain(chain) => match chain.lc_verdict(&end) {
                    Ok(lc) => {
                        any_evidence = true;
                        all_hold &= lc.holds_on_interval;
                        InterpolateRow {
                            variant: variant.label.to_string(),
                            kind: "chain".to_string(),
                            holds: Some(lc.holds_on_interval),
                            detail: if lc.holds_on_interval {
                                format!("log canonical on (0, {end})")
                            } else {
                                format!("lc fails at {} ({})", lc.lc_below, lc.binding_name)
                            },
                        }
                    }
                    Err(e) => {
                        all_hold = false;
                        InterpolateRow {
                            variant: variant.label.to_string(),
                            kind: "chain".to_string(),
                            holds: Some(false),
                            detail: format!("engine error: {e}"),
                        }
                    }
                },
                Payload::Wps { .. } => InterpolateRow {
                    variant: variant.label.to_string(),
                    kind: "wps".to_string(),
                    holds: None,
                    detail: "beta-based; not an lc certificate (see the beta command)".to_string(),
                },
            };
            rows.push(row);
        }
        let applicable = entry.base_k_semistable && any_evidence && all_hold;
        let verdict = if applicable {
            format!(
                "K-semistable for every c in (0, {end}) -- conditional on the interpolation theorem for log Fano pairs, on the lc evidence above (checked divisors only), and on: {}",
                entry.base_note
            )
        } else if !any_evidence {
            "no lc evidence among the entry's variants; interpolation not applicable".to_string()
        } else {
            "interpolation not applicable: the lc hypothesis fails before 1/r".to_string()
        };
        InterpolateReport {
            model: entry.id.to_string(),
            r,
            interval_end: end,
            rows,
            applicable,
            verdict,
        }
    }

    pub fn negative(&self) -> bool {
        !self.applicable
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        push_line(
            &mut out,
            format!("model {}: interpolation up to 1/{}", self.model, self.r),
        );
        for row in &self.rows {
            let mark = match row.holds {
                Some(true) => "ok",
                Some(false) => "FAIL",
                None => "n/a",
            };
            push_line(
                &mut out,
                format!(
                    "  [{}] {} ({}): {}",
                    mark, row.variant, row.kind, row.detail
                ),
            );
        }
        push_line(&mut out, format!("  verdict: {}", self.verdict));
        out
    }
}
