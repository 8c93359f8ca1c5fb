//! The regression runner: recomputes every expected quantity of a catalog
//! entry with the engine and compares exactly.
//!
//! Quantities whose provenance is conflicted are reported as warnings
//! (informational; the conflicting variants are encoded side by side), never
//! as failures. Any other mismatch, and any engine error, is a failure.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::catalog::{
    line_total, Catalog, CatalogEntry, CatalogVariant, Payload, Provenance, Quantity,
};
use crate::contraction::ContractionModel;
use crate::exactnum::{AffineRational, Rational};
use crate::wps::{InvariantDivisor, WpsVerdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CheckStatus {
    Pass,
    Warn,
    Fail,
}

/// One verified quantity of one variant.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub entry: String,
    pub variant: String,
    pub quantity: String,
    pub status: CheckStatus,
    pub engine: String,
    pub expected: String,
    pub provenance: Provenance,
    pub note: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }

    pub fn counts(&self) -> (usize, usize, usize) {
        let mut pass = 0;
        let mut warn = 0;
        let mut fail = 0;
        for c in &self.checks {
            match c.status {
                CheckStatus::Pass => pass += 1,
                CheckStatus::Warn => warn += 1,
                CheckStatus::Fail => fail += 1,
            }
        }
        (pass, warn, fail)
    }
}

/// Runs every expectation of every variant of the entry.
pub fn verify_entry(entry: &CatalogEntry) -> VerifyReport {
    let mut checks = Vec::new();
    for variant in &entry.variants {
        for expectation in &variant.expected {
            let quantity = &expectation.quantity;
            let outcome = compute(entry, variant, quantity);
            let (engine_repr, matches) = match outcome {
                Ok((repr, eq)) => (repr, eq),
                Err(message) => (format!("engine error: {message}"), false),
            };
            let status = match (matches, expectation.provenance) {
                (true, Provenance::SourceConflicted) => CheckStatus::Warn,
                (true, _) => CheckStatus::Pass,
                (false, _) => CheckStatus::Fail,
            };
            checks.push(Check {
                entry: entry.id.to_string(),
                variant: variant.label.to_string(),
                quantity: quantity.name(),
                status,
                engine: engine_repr,
                expected: expected_repr(quantity),
                provenance: expectation.provenance,
                note: expectation.note.to_string(),
            });
        }
    }
    VerifyReport { checks }
}

/// Runs the whole catalog, ordered by entry id.
pub fn verify_all(catalog: &Catalog) -> VerifyReport {
    let mut checks = Vec::new();
    for entry in catalog.entries() {
        checks.extend(verify_entry(entry).checks);
    }
    VerifyReport { checks }
}

fn multiset_repr(ms: &BTreeMap<u64, u64>) -> String {
    let parts: Vec<String> = ms
        .iter()
        .map(|(mult, count)| format!("{mult}x{count}"))
        .collect();
    format!("{{{}}}", parts.join(", "))
}

fn affine_list_repr(list: &[AffineRational]) -> String {
    let parts: Vec<String> = list.iter().map(|a| a.to_string()).collect();
    format!("({})", parts.join(", "))
}

fn pullback_repr(table: &[(u64, Vec<Rational>)]) -> String {
    let parts: Vec<String> = table
        .iter()
        .map(|(m, coeffs)| {
            let cs: Vec<String> = coeffs.iter().map(|c| c.to_string()).collect();
            format!("mult {m}: [{}]", cs.join(", "))
        })
        .collect();
    parts.join("; ")
}

fn threshold_repr(t: &Option<Rational>) -> String {
    match t {
        Some(v) => format!("wall candidate at {v}"),
        None => "no wall candidate below cmax".to_string(),
    }
}

fn expected_repr(q: &Quantity) -> String {
    match q {
        Quantity::AdeType(s) => s.clone(),
        Quantity::OrbitMultiplicities(ms) | Quantity::LineMultiset(ms) => multiset_repr(ms),
        Quantity::LogDiscrepancies(list) | Quantity::ChainDiscrepancies(list) => {
            affine_list_repr(list)
        }
        Quantity::MinLogDiscrepancy(a)
        | Quantity::BindingConstraint(a)
        | Quantity::SInvariant(_, a)
        | Quantity::AInvariant(_, a)
        | Quantity::BetaInvariant(_, a) => a.to_string(),
        Quantity::WallThreshold(t) => threshold_repr(t),
        Quantity::PullbackTable(t) => pullback_repr(t),
        Quantity::LcHoldsOnInterval(b) => b.to_string(),
        Quantity::BetaVerdict(s) => s.clone(),
    }
}

/// Computes the engine-side value for the quantity and compares it with the
/// expectation; returns the engine representation and the comparison result.
fn compute(
    entry: &CatalogEntry,
    variant: &CatalogVariant,
    quantity: &Quantity,
) -> Result<(String, bool), String> {
    match (quantity, &variant.payload) {
        (Quantity::AdeType(expected), Payload::Contraction(m)) => {
            let engine = m.ade_type().to_string();
            let eq = engine == *expected;
            Ok((engine, eq))
        }
        (Quantity::OrbitMultiplicities(expected), Payload::Contraction(m)) => {
            let engine = orbit_multiset(m)?;
            let eq = engine == *expected;
            Ok((multiset_repr(&engine), eq))
        }
        (Quantity::LogDiscrepancies(expected), Payload::Contraction(m)) => {
            let engine = m.boundary_log_discrepancies().map_err(|e| e.to_string())?;
            let eq = engine == *expected;
            Ok((affine_list_repr(&engine), eq))
        }
        (Quantity::MinLogDiscrepancy(expected), Payload::Contraction(m)) => {
            let engine = minimum_over_interval(
                &m.boundary_log_discrepancies().map_err(|e| e.to_string())?,
                &entry.cmax,
            )?;
            let eq = engine == *expected;
            Ok((engine.to_string(), eq))
        }
        (Quantity::WallThreshold(expected), Payload::Contraction(m)) => {
            let engine = m
                .instability_threshold(&entry.cmax)
                .map_err(|e| e.to_string())?;
            let eq = engine == *expected;
            Ok((threshold_repr(&engine), eq))
        }
        (Quantity::PullbackTable(expected), Payload::Contraction(m)) => {
            let engine = pullback_table(m)?;
            let eq = engine == *expected;
            Ok((pullback_repr(&engine), eq))
        }
        (Quantity::ChainDiscrepancies(expected), Payload::Chain(chain)) => {
            let engine = chain.log_discrepancies().map_err(|e| e.to_string())?;
            let eq = engine == *expected;
            Ok((affine_list_repr(&engine), eq))
        }
        (Quantity::BindingConstraint(expected), Payload::Chain(chain)) => {
            let report = chain.lc_verdict(&entry.cmax).map_err(|e| e.to_string())?;
            let eq = report.binding == *expected;
            Ok((format!("{} ({})", report.binding, report.binding_name), eq))
        }
        (Quantity::LcHoldsOnInterval(expected), Payload::Chain(chain)) => {
            let report = chain.lc_verdict(&entry.cmax).map_err(|e| e.to_string())?;
            let eq = report.holds_on_interval == *expected;
            Ok((
                format!(
                    "lc on (0, {}){}",
                    report.lc_below,
                    if report.holds_on_interval {
                        " = the whole interval"
                    } else {
                        ""
                    }
                ),
                eq,
            ))
        }
        (Quantity::LineMultiset(expected), payload) => {
            let total: u64 = expected.iter().map(|(m, c)| m * c).sum();
            match payload {
                Payload::Contraction(m) => {
                    let engine = orbit_multiset(m)?;
                    let eq = engine == *expected;
                    Ok((multiset_repr(&engine), eq))
                }
                _ => {
                    // arrangement data; check the weighted sum against the
                    // degree's line total
                    let want = line_total(entry.degree)
                        .ok_or_else(|| format!("no line total for degree {}", entry.degree))?;
                    Ok((format!("sum of multiplicities = {total}"), total == want))
                }
            }
        }
        (Quantity::SInvariant(name, expected), Payload::Wps { pair, divisors }) => {
            let d = find_divisor(divisors, name)?;
            let engine = pair
                .s_invariant(d, &entry.cmax)
                .map_err(|e| e.to_string())?;
            let eq = engine == *expected;
            Ok((engine.to_string(), eq))
        }
        (Quantity::AInvariant(name, expected), Payload::Wps { pair, divisors }) => {
            let d = find_divisor(divisors, name)?;
            let engine = pair.a_invariant(d).map_err(|e| e.to_string())?;
            let eq = engine == *expected;
            Ok((engine.to_string(), eq))
        }
        (Quantity::BetaInvariant(name, expected), Payload::Wps { pair, divisors }) => {
            let d = find_divisor(divisors, name)?;
            let engine = pair.beta(d, &entry.cmax).map_err(|e| e.to_string())?;
            let eq = engine == *expected;
            Ok((engine.to_string(), eq))
        }
        (Quantity::BetaVerdict(expected), Payload::Wps { pair, divisors }) => {
            let report = pair
                .beta_report(divisors, &entry.cmax)
                .map_err(|e| e.to_string())?;
            let engine = match &report.verdict {
                WpsVerdict::PolystableCandidate => "polystable-candidate".to_string(),
                WpsVerdict::Unstable { .. } => "unstable".to_string(),
            };
            let eq = engine == *expected;
            Ok((report.verdict.to_string(), eq))
        }
        (q, payload) => Err(format!(
            "quantity {} does not apply to a {} payload",
            q.name(),
            payload.kind()
        )),
    }
}

fn find_divisor<'a>(
    divisors: &'a [InvariantDivisor],
    name: &str,
) -> Result<&'a InvariantDivisor, String> {
    divisors
        .iter()
        .find(|d| d.name == name)
        .ok_or_else(|| format!("divisor {name:?} not in the variant's divisor list"))
}

pub fn orbit_multiset(model: &ContractionModel) -> Result<BTreeMap<u64, u64>, String> {
    let mut out: BTreeMap<u64, u64> = BTreeMap::new();
    for orbit in model.line_orbits().map_err(|e| e.to_string())? {
        *out.entry(orbit.multiplicity).or_insert(0) += 1;
    }
    Ok(out)
}

pub fn pullback_table(model: &ContractionModel) -> Result<Vec<(u64, Vec<Rational>)>, String> {
    let mut table: Vec<(u64, Vec<Rational>)> = model
        .line_orbits()
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|orbit| {
            let mut coeffs = orbit.pullback_coeffs;
            coeffs.sort();
            (orbit.multiplicity, coeffs)
        })
        .collect();
    table.sort();
    Ok(table)
}

/// Pointwise minimum of affine functions over `(0, cmax)`, verified to be
/// a genuine minimum at three interior sample points.
pub fn minimum_over_interval(
    values: &[AffineRational],
    cmax: &Rational,
) -> Result<AffineRational, String> {
    let samples: Vec<Rational> = [(1i64, 4i64), (1, 2), (3, 4)]
        .into_iter()
        .map(|(n, d)| cmax * &Rational::ratio(n, d))
        .collect();
    let mid = &samples[1];
    let min = values
        .iter()
        .min_by(|a, b| a.evaluate(mid).cmp(&b.evaluate(mid)))
        .ok_or_else(|| "empty list has no minimum".to_string())?;
    for f in values {
        for c in &samples {
            if min.evaluate(c) > f.evaluate(c) {
                return Err(format!(
                    "no pointwise minimum on the interval: {min} exceeds {f} at c = {c}"
                ));
            }
        }
    }
    Ok(min.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    #[test]
    fn every_catalog_expectation_passes_or_warns() {
        let catalog = Catalog::new();
        let report = verify_all(&catalog);
        let failures: Vec<&Check> = report
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .collect();
        assert!(
            failures.is_empty(),
            "failing checks: {:#?}",
            failures
                .iter()
                .map(|c| format!(
                    "{}/{} {}: engine={} expected={}",
                    c.entry, c.variant, c.quantity, c.engine, c.expected
                ))
                .collect::<Vec<_>>()
        );
        assert!(report.passed());
    }

    #[test]
    fn conflicted_records_surface_as_warnings() {
        let catalog = Catalog::new();
        let report = verify_entry(catalog.get("dp2-3nodes").unwrap());
        let warns = report
            .checks
            .iter()
            .filter(|c| c.status == CheckStatus::Warn)
            .count();
        assert!(warns >= 2, "both conflicted variants should warn");
        assert!(report.passed());
    }

    #[test]
    fn minimum_over_interval_detects_order() {
        let f = AffineRational::new(Rational::one(), Rational::from_int(-288));
        let g = AffineRational::new(Rational::one(), Rational::from_int(-148));
        let min = minimum_over_interval(&[g.clone(), f.clone()], &Rational::ratio(1, 240)).unwrap();
        assert_eq!(min, f);
    }
}
