//! Built-in, named encodings of every configuration the verification suite
//! covers, each bundled with its expected values for regression.
//!
//! Entry ids follow the degree of the underlying surface: `cubic-*`
//! (degree 3), `quartic-*` (degree 4), `dp2-*` (degree 2), `dp1-*`
//! (degree 1), plus `baseline-P2`. An entry may carry several variants
//! (alternative encodings of the same configuration, or the two sides of a
//! conflicted source value); every variant has its own payload and
//! expectation list.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::chain::{BlowupChain, BoundaryComponent, ChainCenter, VertexStart};
use crate::contraction::ContractionModel;
use crate::exactnum::{AffineRational, Rational};
use crate::picard::{DivisorClass, PicardLattice};
use crate::wps::{InvariantDivisor, WeightedPlane, WpsBoundary, WpsPair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("unknown catalog id {0:?}")]
    UnknownId(String),
    #[error("unknown variant {variant:?} for catalog entry {id:?}")]
    UnknownVariant { id: String, variant: String },
}

/// Where an expected value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Stated by the source computation this entry encodes.
    Source,
    /// The source states two irreconcilable values; each variant carries
    /// one side. Reported as informational, never as a failure.
    SourceConflicted,
    /// Derived independently (hand computation or documented resolution).
    Derived,
}

/// An expected quantity with its value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Quantity {
    AdeType(String),
    /// Orbit multiplicity -> number of orbits with that multiplicity.
    OrbitMultiplicities(BTreeMap<u64, u64>),
    /// Per-root boundary log discrepancies, model root order.
    LogDiscrepancies(Vec<AffineRational>),
    /// Minimum over the contraction's exceptional divisors.
    MinLogDiscrepancy(AffineRational),
    WallThreshold(Option<Rational>),
    /// Sorted (multiplicity, sorted pull-back coefficients) per orbit.
    PullbackTable(Vec<(u64, Vec<Rational>)>),
    /// Chain exceptional log discrepancies, vertex first.
    ChainDiscrepancies(Vec<AffineRational>),
    BindingConstraint(AffineRational),
    LcHoldsOnInterval(bool),
    /// Line multiplicity -> count of lines with that multiplicity.
    /// Contraction payloads must reproduce it exactly; for other payloads
    /// the weighted sum is checked against the degree's line total.
    LineMultiset(BTreeMap<u64, u64>),
    SInvariant(String, AffineRational),
    AInvariant(String, AffineRational),
    BetaInvariant(String, AffineRational),
    /// "polystable-candidate" or "unstable".
    BetaVerdict(String),
}

impl Quantity {
    pub fn name(&self) -> String {
        match self {
            Quantity::AdeType(_) => "ade-type".into(),
            Quantity::OrbitMultiplicities(_) => "orbit-multiplicities".into(),
            Quantity::LogDiscrepancies(_) => "log-discrepancies".into(),
            Quantity::MinLogDiscrepancy(_) => "min-log-discrepancy".into(),
            Quantity::WallThreshold(_) => "wall-threshold".into(),
            Quantity::PullbackTable(_) => "pullback-table".into(),
            Quantity::ChainDiscrepancies(_) => "chain-discrepancies".into(),
            Quantity::BindingConstraint(_) => "binding-constraint".into(),
            Quantity::LcHoldsOnInterval(_) => "lc-holds-on-interval".into(),
            Quantity::LineMultiset(_) => "line-multiset".into(),
            Quantity::SInvariant(d, _) => format!("S[{d}]"),
            Quantity::AInvariant(d, _) => format!("A[{d}]"),
            Quantity::BetaInvariant(d, _) => format!("beta[{d}]"),
            Quantity::BetaVerdict(_) => "beta-verdict".into(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Expectation {
    pub quantity: Quantity,
    pub provenance: Provenance,
    pub note: &'static str,
}

/// The computational payload of a catalog variant.
#[derive(Debug, Clone)]
pub enum Payload {
    Contraction(ContractionModel),
    Chain(BlowupChain),
    Wps {
        pair: WpsPair,
        divisors: Vec<InvariantDivisor>,
    },
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Contraction(_) => "contraction",
            Payload::Chain(_) => "chain",
            Payload::Wps { .. } => "wps",
        }
    }

    pub fn name(&self) -> &str {
        match self {
            Payload::Contraction(m) => m.name(),
            Payload::Chain(c) => &c.name,
            Payload::Wps { pair, .. } => &pair.name,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogVariant {
    pub label: &'static str,
    pub payload: Payload,
    pub expected: Vec<Expectation>,
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub id: &'static str,
    /// Anticanonical degree of the underlying surface.
    pub degree: i64,
    /// The lines sum to `-r K`; the working interval is `(0, 1/r)`.
    pub r: i64,
    pub cmax: Rational,
    /// The boundary-free central fiber is K-(semi/poly)stable; required by
    /// the interpolation combinator.
    pub base_k_semistable: bool,
    pub base_note: &'static str,
    pub variants: Vec<CatalogVariant>,
}

impl CatalogEntry {
    pub fn variant(&self, label: &str) -> Result<&CatalogVariant, CatalogError> {
        self.variants
            .iter()
            .find(|v| v.label == label)
            .ok_or_else(|| CatalogError::UnknownVariant {
                id: self.id.to_string(),
                variant: label.to_string(),
            })
    }
}

pub struct Catalog {
    entries: Vec<CatalogEntry>,
}

/// Total line count (with multiplicity) on a degree-`d` del Pezzo surface,
/// for the degrees this catalog covers.
pub fn line_total(degree: i64) -> Option<u64> {
    match degree {
        1 => Some(240),
        2 => Some(28),
        3 => Some(27),
        4 => Some(16),
        _ => None,
    }
}

impl Catalog {
    pub fn new() -> Self {
        Catalog {
            entries: build_entries(),
        }
    }

    pub fn ids(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.id).collect()
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Result<&CatalogEntry, CatalogError> {
        self.entries
            .iter()
            .find(|e| e.id == id)
            .ok_or_else(|| CatalogError::UnknownId(id.to_string()))
    }

    /// Runs every payload's structural validation: ADE typing for
    /// contractions, chain well-formedness, log-Fano positivity for
    /// weighted-plane pairs.
    pub fn validate_all(&self) -> Vec<StructuralCheck> {
        let mut out = Vec::new();
        for entry in &self.entries {
            for variant in &entry.variants {
                let summary = match &variant.payload {
                    Payload::Contraction(m) => Ok(format!(
                        "contraction: type {}, {} roots on n = {}",
                        m.ade_type(),
                        m.roots().len(),
                        m.lattice().n()
                    )),
                    Payload::Chain(chain) => chain
                        .validate()
                        .map(|()| {
                            format!(
                                "chain: {} components, {} centers{}",
                                chain.components.len(),
                                chain.centers.len(),
                                match &chain.vertex {
                                    Some(v) => format!(", 1/{}(1,1) vertex", v.n),
                                    None => String::new(),
                                }
                            )
                        })
                        .map_err(|e| e.to_string()),
                    Payload::Wps { pair, divisors } => pair
                        .require_log_fano(&entry.cmax)
                        .map(|l| {
                            let (a0, a1, a2) = pair.plane.weights;
                            format!(
                                "wps: P({a0},{a1},{a2}), log degree {l} positive on (0, {}), {} divisors",
                                entry.cmax,
                                divisors.len()
                            )
                        })
                        .map_err(|e| e.to_string()),
                };
                out.push(StructuralCheck {
                    entry: entry.id.to_string(),
                    variant: variant.label.to_string(),
                    summary,
                });
            }
        }
        out
    }
}

/// One line of [`Catalog::validate_all`]'s report.
#[derive(Debug, Clone)]
pub struct StructuralCheck {
    pub entry: String,
    pub variant: String,
    pub summary: Result<String, String>,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::new()
    }
}

fn r(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn af(cn: i64, cd: i64, sn: i64, sd: i64) -> AffineRational {
    AffineRational::new(r(cn, cd), r(sn, sd))
}

/// `1 - k c`.
fn one_minus(k: i64) -> AffineRational {
    af(1, 1, -k, 1)
}

fn cls(h: i64, e: &[i64]) -> DivisorClass {
    DivisorClass::new(h, e.to_vec())
}

fn contraction(name: &str, n: usize, roots: Vec<DivisorClass>) -> Payload {
    let lattice = PicardLattice::new(n).expect("catalog lattice");
    Payload::Contraction(
        ContractionModel::new(name, lattice, roots).expect("catalog model validates"),
    )
}

fn comp(name: &str, coefficient: AffineRational) -> BoundaryComponent {
    BoundaryComponent::new(name, coefficient)
}

fn comp_n(name: &str, coefficient: AffineRational, count: u64) -> BoundaryComponent {
    BoundaryComponent::with_count(name, coefficient, count)
}

fn center(id: u32, on: &[u32], mults: &[(&str, u64)]) -> ChainCenter {
    ChainCenter {
        id,
        on_exceptionals: on.to_vec(),
        mults: mults.iter().map(|(n, m)| (n.to_string(), *m)).collect(),
    }
}

fn counts(pairs: &[(u64, u64)]) -> BTreeMap<u64, u64> {
    pairs.iter().copied().collect()
}

fn expect(quantity: Quantity, provenance: Provenance, note: &'static str) -> Expectation {
    Expectation {
        quantity,
        provenance,
        note,
    }
}

fn build_entries() -> Vec<CatalogEntry> {
    vec![
        baseline_p2(),
        cubic_3a2(),
        quartic_1a1(),
        quartic_2a1(),
        quartic_3a1(),
        quartic_4a1(),
        dp2_cateye(),
        dp2_ox(),
        dp2_4lines(),
        dp2_3nodes(),
        dp2_3cusps(),
        dp2_node2cusps(),
        dp2_cusp2nodes(),
        dp2_p114_vertex(),
        dp2_p114_tacnode(),
        dp1_a7(),
        dp1_2d4(),
        dp1_p129(),
    ]
}

// ---------------------------------------------------------------------------
// baseline
// ---------------------------------------------------------------------------

fn baseline_p2() -> CatalogEntry {
    use Provenance::*;
    let pair = WpsPair {
        name: "baseline-P2".to_string(),
        plane: WeightedPlane::new(1, 1, 1).expect("weights"),
        boundary: vec![],
    };
    let divisors = vec![InvariantDivisor::new("line", 1, false).expect("divisor")];
    CatalogEntry {
        id: "baseline-P2",
        degree: 9,
        r: 1,
        cmax: r(1, 1),
        base_k_semistable: true,
        base_note: "the plane is K-polystable (Kaehler-Einstein)",
        variants: vec![CatalogVariant {
            label: "default",
            payload: Payload::Wps { pair, divisors },
            expected: vec![
                expect(
                    Quantity::SInvariant("line".into(), af(1, 1, 0, 1)),
                    Derived,
                    "S of a line on the bare plane",
                ),
                expect(
                    Quantity::AInvariant("line".into(), af(1, 1, 0, 1)),
                    Derived,
                    "",
                ),
                expect(
                    Quantity::BetaInvariant("line".into(), AffineRational::zero()),
                    Derived,
                    "K-semistable baseline with equality",
                ),
                expect(
                    Quantity::BetaVerdict("polystable-candidate".into()),
                    Derived,
                    "",
                ),
            ],
        }],
    }
}

// ---------------------------------------------------------------------------
// degree 3
// ---------------------------------------------------------------------------

/// The strictly polystable cubic: three tangent-vector blow-ups, three A2
/// points. Basis slots per tangent vector i: (E_i, F_i) at (2i-1, 2i).
/// Roots are listed as three A2 pairs.
fn cubic_3a2() -> CatalogEntry {
    use Provenance::*;
    let roots = vec![
        cls(0, &[1, -1, 0, 0, 0, 0]),   // first exceptional proper transform
        cls(1, &[-1, 0, 0, 0, -1, -1]), // tangent line through points 3 and 1
        cls(1, &[-1, -1, -1, 0, 0, 0]), // tangent line through points 1 and 2
        cls(0, &[0, 0, 1, -1, 0, 0]),
        cls(0, &[0, 0, 0, 0, 1, -1]),
        cls(1, &[0, 0, -1, -1, -1, 0]), // tangent line through points 2 and 3
    ];
    let pullback_row = (
        9u64,
        vec![r(0, 1), r(0, 1), r(1, 3), r(1, 3), r(2, 3), r(2, 3)],
    );
    let chain = BlowupChain {
        name: "cubic-3A2-a2-crossing".to_string(),
        components: vec![
            comp("leg-a", AffineRational::multiple_of_c(r(9, 1))),
            comp("leg-b", AffineRational::multiple_of_c(r(9, 1))),
        ],
        vertex: None,
        centers: vec![center(1, &[], &[("leg-a", 1), ("leg-b", 1)])],
    };
    CatalogEntry {
        id: "cubic-3A2",
        degree: 3,
        r: 9,
        cmax: r(1, 9),
        base_k_semistable: true,
        base_note: "GIT-semistable cubic surfaces are K-semistable",
        variants: vec![
            CatalogVariant {
                label: "contraction",
                payload: contraction("cubic-3A2", 6, roots),
                expected: vec![
                    expect(
                        Quantity::AdeType("3A2".into()),
                        Source,
                        "three A2 singularities",
                    ),
                    expect(
                        Quantity::OrbitMultiplicities(counts(&[(9, 3)])),
                        Source,
                        "27 lines land on three curves of multiplicity 9",
                    ),
                    expect(
                        Quantity::LogDiscrepancies(vec![one_minus(9); 6]),
                        Source,
                        "every contracted curve carries A = 1 - 9c",
                    ),
                    expect(Quantity::MinLogDiscrepancy(one_minus(9)), Source, ""),
                    expect(
                        Quantity::WallThreshold(None),
                        Source,
                        "A reaches zero only at 1/9, not inside (0, 1/9)",
                    ),
                    expect(
                        Quantity::PullbackTable(vec![pullback_row; 3]),
                        Source,
                        "each orbit pulls back with coefficients 1/3 and 2/3 on two A2 pairs",
                    ),
                ],
            },
            CatalogVariant {
                label: "a2-crossing-chain",
                payload: Payload::Chain(chain),
                expected: vec![
                    expect(
                        Quantity::ChainDiscrepancies(vec![af(2, 1, -18, 1)]),
                        Derived,
                        "blow-up at the crossing of the two 9c-curves on the resolution",
                    ),
                    expect(Quantity::BindingConstraint(one_minus(9)), Source, ""),
                    expect(Quantity::LcHoldsOnInterval(true), Source, "lc on (0, 1/9)"),
                ],
            },
        ],
    }
}

// ---------------------------------------------------------------------------
// degree 4
// ---------------------------------------------------------------------------

fn quartic_entry(
    id: &'static str,
    roots: Vec<DivisorClass>,
    orbit_mults: &[(u64, u64)],
    extra_variant: Option<CatalogVariant>,
) -> CatalogEntry {
    use Provenance::*;
    let k = roots.len();
    let mut variants = vec![CatalogVariant {
        label: "contraction",
        payload: contraction(id, 5, roots),
        expected: vec![
            expect(
                Quantity::AdeType(if k == 1 {
                    "A1".into()
                } else {
                    format!("{k}A1")
                }),
                Source,
                "",
            ),
            expect(
                Quantity::OrbitMultiplicities(counts(orbit_mults)),
                Source,
                "",
            ),
            expect(
                Quantity::LogDiscrepancies(vec![one_minus(4); k]),
                Source,
                "each node carries A = 1 - 4c",
            ),
            expect(Quantity::MinLogDiscrepancy(one_minus(4)), Source, ""),
            expect(Quantity::WallThreshold(None), Source, "zero only at 1/4"),
        ],
    }];
    variants.extend(extra_variant);
    CatalogEntry {
        id,
        degree: 4,
        r: 4,
        cmax: r(1, 4),
        base_k_semistable: true,
        base_note: "nodal quartic del Pezzo surfaces are K-semistable",
        variants,
    }
}

/// One tangent-vector pair among five points: a single node.
fn quartic_1a1() -> CatalogEntry {
    use Provenance::*;
    let node_chain = BlowupChain {
        name: "quartic-1A1-node-vertex".to_string(),
        components: vec![comp_n(
            "double-lines",
            AffineRational::multiple_of_c(r(2, 1)),
            4,
        )],
        vertex: Some(VertexStart {
            n: 2,
            ords: [("double-lines".to_string(), r(1, 2))]
                .into_iter()
                .collect(),
        }),
        centers: vec![],
    };
    quartic_entry(
        "quartic-1A1",
        vec![cls(0, &[0, 0, 0, 1, -1])],
        &[(2, 4), (1, 8)],
        Some(CatalogVariant {
            label: "node-vertex-chain",
            payload: Payload::Chain(node_chain),
            expected: vec![
                expect(
                    Quantity::ChainDiscrepancies(vec![one_minus(4)]),
                    Derived,
                    "four double lines of coefficient 2c, each of order 1/2 at the node",
                ),
                expect(Quantity::BindingConstraint(one_minus(4)), Derived, ""),
                expect(Quantity::LcHoldsOnInterval(true), Derived, ""),
            ],
        }),
    )
}

fn quartic_2a1() -> CatalogEntry {
    quartic_entry(
        "quartic-2A1",
        vec![cls(0, &[0, 1, -1, 0, 0]), cls(0, &[0, 0, 0, 1, -1])],
        &[(4, 1), (2, 4), (1, 4)],
        None,
    )
}

fn quartic_3a1() -> CatalogEntry {
    quartic_entry(
        "quartic-3A1",
        vec![
            cls(0, &[1, -1, 0, 0, 0]),
            cls(0, &[0, 0, 0, 1, -1]),
            cls(1, &[0, 0, -1, -1, -1]),
        ],
        &[(4, 2), (2, 4)],
        None,
    )
}

fn quartic_4a1() -> CatalogEntry {
    quartic_entry(
        "quartic-4A1",
        vec![
            cls(0, &[0, 1, -1, 0, 0]),
            cls(0, &[0, 0, 0, 1, -1]),
            cls(1, &[-1, -1, -1, 0, 0]),
            cls(1, &[-1, 0, 0, -1, -1]),
        ],
        &[(4, 4)],
        None,
    )
}

// ---------------------------------------------------------------------------
// degree 2 (plane chains)
// ---------------------------------------------------------------------------

fn dp2_entry(id: &'static str, variants: Vec<CatalogVariant>) -> CatalogEntry {
    CatalogEntry {
        id,
        degree: 2,
        r: 28,
        cmax: r(1, 28),
        base_k_semistable: true,
        base_note: "GIT-polystable branch quartics give K-polystable double covers",
        variants,
    }
}

fn chain_variant(
    label: &'static str,
    chain: BlowupChain,
    expected: Vec<Expectation>,
) -> CatalogVariant {
    CatalogVariant {
        label,
        payload: Payload::Chain(chain),
        expected,
    }
}

/// Two smooth conics tangent at two points; boundary lines 6L_p + 6L_q
/// + 16L_pq.
fn dp2_cateye() -> CatalogEntry {
    use Provenance::*;
    let chain = BlowupChain {
        name: "dp2-cateye".to_string(),
        components: vec![
            comp("C2", af(1, 2, 0, 1)),
            comp("C2'", af(1, 2, 0, 1)),
            comp("L_p", AffineRational::multiple_of_c(r(6, 1))),
            comp("L_q", AffineRational::multiple_of_c(r(6, 1))),
            comp("L_pq", AffineRational::multiple_of_c(r(16, 1))),
        ],
        vertex: None,
        centers: vec![
            center(1, &[], &[("C2", 1), ("C2'", 1), ("L_q", 1), ("L_pq", 1)]),
            center(2, &[1], &[("C2", 1), ("C2'", 1), ("L_q", 1)]),
        ],
    };
    dp2_entry(
        "dp2-cateye",
        vec![chain_variant(
            "default",
            chain,
            vec![
                expect(
                    Quantity::ChainDiscrepancies(vec![one_minus(22), one_minus(28)]),
                    Source,
                    "resolution at one tangency point",
                ),
                expect(Quantity::BindingConstraint(one_minus(28)), Source, ""),
                expect(Quantity::LcHoldsOnInterval(true), Source, "lc on (0, 1/28)"),
                expect(
                    Quantity::LineMultiset(counts(&[(6, 2), (16, 1)])),
                    Source,
                    "bitangent degeneration 6L_p + 6L_q + 16L_pq",
                ),
            ],
        )],
    )
}

/// A smooth conic with two tangent lines; same numbers as the cateye.
fn dp2_ox() -> CatalogEntry {
    use Provenance::*;
    let chain = BlowupChain {
        name: "dp2-ox".to_string(),
        components: vec![
            comp("C2", af(1, 2, 0, 1)),
            comp("M1", af(1, 2, 6, 1)),
            comp("M1'", af(1, 2, 6, 1)),
            comp("L_pq", AffineRational::multiple_of_c(r(16, 1))),
        ],
        vertex: None,
        centers: vec![
            center(1, &[], &[("C2", 1), ("M1'", 1), ("L_pq", 1)]),
            center(2, &[1], &[("C2", 1), ("M1'", 1)]),
        ],
    };
    dp2_entry(
        "dp2-ox",
        vec![chain_variant(
            "default",
            chain,
            vec![
                expect(
                    Quantity::ChainDiscrepancies(vec![one_minus(22), one_minus(28)]),
                    Source,
                    "tangency point of the conic with one of the lines",
                ),
                expect(Quantity::BindingConstraint(one_minus(28)), Source, ""),
                expect(Quantity::LcHoldsOnInterval(true), Source, ""),
                expect(
                    Quantity::LineMultiset(counts(&[(6, 2), (16, 1)])),
                    Source,
                    "the component lines absorb 6 apiece",
                ),
            ],
        )],
    )
}

/// Four general lines; the quartic is their union and the boundary is
/// 4(M_1 + ... + M_7).
fn dp2_4lines() -> CatalogEntry {
    use Provenance::*;
    let four_c = AffineRational::multiple_of_c(r(4, 1));
    let chain = BlowupChain {
        name: "dp2-4lines".to_string(),
        components: vec![
            comp("M1", af(1, 2, 4, 1)),
            comp("M2", af(1, 2, 4, 1)),
            comp_n("M3M4", af(1, 2, 4, 1), 2),
            comp("M5", four_c.clone()),
            comp_n("M6M7", four_c, 2),
        ],
        vertex: None,
        centers: vec![center(1, &[], &[("M1", 1), ("M2", 1), ("M5", 1)])],
    };
    dp2_entry(
        "dp2-4lines",
        vec![chain_variant(
            "default",
            chain,
            vec![
                expect(
                    Quantity::ChainDiscrepancies(vec![one_minus(12)]),
                    Source,
                    "one node of the arrangement; the six are symmetric",
                ),
                expect(Quantity::BindingConstraint(one_minus(12)), Source, ""),
                expect(Quantity::LcHoldsOnInterval(true), Source, ""),
                expect(
                    Quantity::LineMultiset(counts(&[(4, 7)])),
                    Source,
                    "all seven lines of multiplicity 4",
                ),
            ],
        )],
    )
}

/// Three-nodal quartic. The source computation pairs A(E) = 1 - 16c with a
/// count of 12 lines through the node; the two readings disagree, so both
/// are kept as variants and flagged as conflicted.
fn dp2_3nodes() -> CatalogEntry {
    use Provenance::*;
    let make_chain = |name: &str, through_node: u64, elsewhere: u64| {
        let mut components = vec![
            comp("C", af(1, 2, 0, 1)),
            comp_n(
                "node-lines",
                AffineRational::multiple_of_c(r(4, 1)),
                through_node,
            ),
            comp_n("tangent-lines", AffineRational::multiple_of_c(r(2, 1)), 2),
            comp_n(
                "other-node-lines",
                AffineRational::multiple_of_c(r(4, 1)),
                elsewhere,
            ),
            comp_n("other-tangents", AffineRational::multiple_of_c(r(2, 1)), 4),
            comp_n("bitangents", AffineRational::multiple_of_c(r(1, 1)), 4),
        ];
        components.retain(|c| c.count > 0);
        BlowupChain {
            name: name.to_string(),
            components,
            vertex: None,
            centers: vec![
                center(1, &[], &[("C", 2), ("node-lines", 1), ("tangent-lines", 1)]),
                center(2, &[1], &[("C", 1), ("tangent-lines", 1)]),
            ],
        }
    };
    let multiset = counts(&[(1, 4), (2, 6), (4, 3)]);
    dp2_entry(
        "dp2-3nodes",
        vec![
            chain_variant(
                "lines-12",
                make_chain("dp2-3nodes-12", 2, 1),
                vec![
                    expect(
                        Quantity::ChainDiscrepancies(vec![one_minus(12), af(3, 2, -16, 1)]),
                        SourceConflicted,
                        "12 lines through the node, 4c of them tangent",
                    ),
                    expect(
                        Quantity::BindingConstraint(one_minus(12)),
                        SourceConflicted,
                        "",
                    ),
                    expect(Quantity::LcHoldsOnInterval(true), Source, ""),
                    expect(Quantity::LineMultiset(multiset.clone()), Source, ""),
                ],
            ),
            chain_variant(
                "lines-16",
                make_chain("dp2-3nodes-16", 3, 0),
                vec![
                    expect(
                        Quantity::ChainDiscrepancies(vec![one_minus(16), af(3, 2, -20, 1)]),
                        SourceConflicted,
                        "16 lines through the node, 4c of them tangent",
                    ),
                    expect(
                        Quantity::BindingConstraint(one_minus(16)),
                        SourceConflicted,
                        "",
                    ),
                    expect(Quantity::LcHoldsOnInterval(true), Source, ""),
                    expect(Quantity::LineMultiset(multiset), Source, ""),
                ],
            ),
        ],
    )
}

/// Tricuspidal quartic: one cusp resolved by three blow-ups.
fn dp2_3cusps() -> CatalogEntry {
    use Provenance::*;
    let chain = BlowupChain {
        name: "dp2-3cusps".to_string(),
        components: vec![
            comp("C", af(1, 2, 0, 1)),
            comp_n("cusp-lines", AffineRational::multiple_of_c(r(9, 1)), 2),
            comp("far-line", AffineRational::multiple_of_c(r(9, 1))),
            comp("bitangent", AffineRational::multiple_of_c(r(1, 1))),
        ],
        vertex: None,
        centers: vec![
            center(1, &[], &[("C", 2), ("cusp-lines", 1)]),
            center(2, &[1], &[("C", 1)]),
            center(3, &[1, 2], &[("C", 1)]),
        ],
    };
    dp2_entry(
        "dp2-3cusps",
        vec![chain_variant(
            "default",
            chain,
            vec![
                expect(
                    Quantity::ChainDiscrepancies(vec![
                        one_minus(18),
                        af(3, 2, -18, 1),
                        af(2, 1, -36, 1),
                    ]),
                    Source,
                    "18c of lines through the cusp, none tangential",
                ),
                expect(Quantity::BindingConstraint(one_minus(18)), Derived, ""),
                expect(Quantity::LcHoldsOnInterval(true), Source, ""),
                expect(
                    Quantity::LineMultiset(counts(&[(1, 1), (9, 3)])),
                    Derived,
                    "three multiplicity-9 lines leave room for exactly one simple bitangent (1 + 27 = 28)",
                ),
            ],
        )],
    )
}

/// One node and two cusps; the chain resolves one cusp, then the node.
fn dp2_node2cusps() -> CatalogEntry {
    use Provenance::*;
    let chain = BlowupChain {
        name: "dp2-node2cusps".to_string(),
        components: vec![
            comp("C", af(1, 2, 0, 1)),
            comp("cusp-cusp-line", AffineRational::multiple_of_c(r(9, 1))),
            comp("cusp-node-line-a", AffineRational::multiple_of_c(r(6, 1))),
            comp("cusp-node-line-b", AffineRational::multiple_of_c(r(6, 1))),
            comp("tangent-at-cusp", AffineRational::multiple_of_c(r(3, 1))),
            comp("other-tangent", AffineRational::multiple_of_c(r(3, 1))),
            comp("bitangent", AffineRational::multiple_of_c(r(1, 1))),
        ],
        vertex: None,
        centers: vec![
            center(
                1,
                &[],
                &[
                    ("C", 2),
                    ("cusp-cusp-line", 1),
                    ("cusp-node-line-a", 1),
                    ("tangent-at-cusp", 1),
                ],
            ),
            center(2, &[1], &[("C", 1), ("tangent-at-cusp", 1)]),
            center(3, &[1, 2], &[("C", 1)]),
            center(
                4,
                &[],
                &[("C", 2), ("cusp-node-line-a", 1), ("cusp-node-line-b", 1)],
            ),
        ],
    };
    dp2_entry(
        "dp2-node2cusps",
        vec![chain_variant(
            "default",
            chain,
            vec![
                expect(
                    Quantity::ChainDiscrepancies(vec![
                        one_minus(18),
                        af(3, 2, -21, 1),
                        af(2, 1, -39, 1),
                        one_minus(12),
                    ]),
                    Source,
                    "cusp chain with 3c tangency, then the node",
                ),
                expect(Quantity::BindingConstraint(af(2, 1, -39, 1)), Derived, ""),
                expect(Quantity::LcHoldsOnInterval(true), Source, ""),
                expect(
                    Quantity::LineMultiset(counts(&[(1, 1), (3, 2), (6, 2), (9, 1)])),
                    Source,
                    "",
                ),
            ],
        )],
    )
}

/// One cusp and two nodes; worst tangency 6c at the cusp.
fn dp2_cusp2nodes() -> CatalogEntry {
    use Provenance::*;
    let chain = BlowupChain {
        name: "dp2-cusp2nodes".to_string(),
        components: vec![
            comp("C", af(1, 2, 0, 1)),
            comp("cusp-node-line-a", AffineRational::multiple_of_c(r(6, 1))),
            comp("cusp-node-line-b", AffineRational::multiple_of_c(r(6, 1))),
            comp_n(
                "tangents-at-cusp",
                AffineRational::multiple_of_c(r(3, 1)),
                2,
            ),
            comp("node-node-line", AffineRational::multiple_of_c(r(4, 1))),
            comp("tangent-at-node", AffineRational::multiple_of_c(r(2, 1))),
            comp("other-node-tangent", AffineRational::multiple_of_c(r(2, 1))),
            comp_n("bitangents", AffineRational::multiple_of_c(r(1, 1)), 2),
        ],
        vertex: None,
        centers: vec![
            center(
                1,
                &[],
                &[
                    ("C", 2),
                    ("cusp-node-line-a", 1),
                    ("cusp-node-line-b", 1),
                    ("tangents-at-cusp", 1),
                ],
            ),
            center(2, &[1], &[("C", 1), ("tangents-at-cusp", 1)]),
            center(3, &[1, 2], &[("C", 1)]),
            center(
                4,
                &[],
                &[
                    ("C", 2),
                    ("cusp-node-line-a", 1),
                    ("node-node-line", 1),
                    ("tangent-at-node", 1),
                ],
            ),
            center(5, &[4], &[("C", 1), ("tangent-at-node", 1)]),
        ],
    };
    dp2_entry(
        "dp2-cusp2nodes",
        vec![chain_variant(
            "default",
            chain,
            vec![
                expect(
                    Quantity::ChainDiscrepancies(vec![
                        one_minus(18),
                        af(3, 2, -24, 1),
                        af(2, 1, -42, 1),
                        one_minus(12),
                        af(3, 2, -14, 1),
                    ]),
                    Source,
                    "cusp chain with 6c tangency, then one node with 2c tangency",
                ),
                expect(Quantity::BindingConstraint(af(2, 1, -42, 1)), Derived, ""),
                expect(Quantity::LcHoldsOnInterval(true), Source, ""),
                expect(
                    Quantity::LineMultiset(counts(&[(1, 2), (2, 2), (3, 2), (4, 1), (6, 2)])),
                    Source,
                    "",
                ),
            ],
        )],
    )
}

/// The vertex of P(1,1,4) under a generic semistable octic: eight rulings
/// of multiplicity 7, each of order 1/4 along the vertex exceptional.
fn dp2_p114_vertex() -> CatalogEntry {
    use Provenance::*;
    let chain = BlowupChain {
        name: "dp2-P114-vertex".to_string(),
        components: vec![
            comp("C", af(1, 2, 0, 1)),
            comp_n("rulings", AffineRational::multiple_of_c(r(7, 1)), 8),
        ],
        vertex: Some(VertexStart {
            n: 4,
            ords: [("rulings".to_string(), r(1, 4))].into_iter().collect(),
        }),
        centers: vec![],
    };
    dp2_entry(
        "dp2-P114-vertex",
        vec![chain_variant(
            "default",
            chain,
            vec![
                expect(
                    Quantity::ChainDiscrepancies(vec![af(1, 2, -14, 1)]),
                    Source,
                    "A at the 1/4(1,1) vertex",
                ),
                expect(Quantity::BindingConstraint(af(1, 2, -14, 1)), Source, ""),
                expect(Quantity::LcHoldsOnInterval(true), Source, ""),
                expect(
                    Quantity::LineMultiset(counts(&[(1, 28)])),
                    Derived,
                    "28 bitangent pairs, each splitting into two rulings",
                ),
            ],
        )],
    )
}

/// A tacnodal point of the branch octic on P(1,1,4): the ruling through it
/// carries multiplicity 28.
fn dp2_p114_tacnode() -> CatalogEntry {
    use Provenance::*;
    let chain = BlowupChain {
        name: "dp2-P114-tacnode".to_string(),
        components: vec![
            comp("C", af(1, 2, 0, 1)),
            comp("R", AffineRational::multiple_of_c(r(28, 1))),
            comp_n("other-rulings", AffineRational::multiple_of_c(r(7, 1)), 4),
        ],
        vertex: Some(VertexStart {
            n: 4,
            ords: [
                ("R".to_string(), r(1, 4)),
                ("other-rulings".to_string(), r(1, 4)),
            ]
            .into_iter()
            .collect(),
        }),
        centers: vec![
            center(1, &[], &[("C", 2), ("R", 1)]),
            center(2, &[1], &[("C", 2)]),
        ],
    };
    dp2_entry(
        "dp2-P114-tacnode",
        vec![chain_variant(
            "default",
            chain,
            vec![
                expect(
                    Quantity::ChainDiscrepancies(vec![
                        af(1, 2, -14, 1),
                        one_minus(28),
                        one_minus(28),
                    ]),
                    Source,
                    "vertex plus the two-step tacnode resolution",
                ),
                expect(Quantity::BindingConstraint(af(1, 2, -14, 1)), Derived, ""),
                expect(Quantity::LcHoldsOnInterval(true), Source, ""),
                expect(Quantity::LineMultiset(counts(&[(1, 28)])), Derived, ""),
            ],
        )],
    )
}

// ---------------------------------------------------------------------------
// degree 1
// ---------------------------------------------------------------------------

/// Eight curvilinear points supported at a single point of a smooth cubic:
/// the A7 chain E_i - E_{i+1}.
fn dp1_a7() -> CatalogEntry {
    use Provenance::*;
    let roots: Vec<DivisorClass> = (0..7)
        .map(|i| {
            let mut e = vec![0i64; 8];
            e[i] = 1;
            e[i + 1] = -1;
            cls(0, &e)
        })
        .collect();
    let eighths: Vec<Rational> = (1..=7).map(|i| r(i, 8)).collect();
    let quarters = vec![
        r(1, 4),
        r(1, 2),
        r(3, 4),
        r(3, 4),
        r(1, 1),
        r(5, 4),
        r(3, 2),
    ];
    let mixed = vec![
        r(3, 8),
        r(5, 8),
        r(3, 4),
        r(9, 8),
        r(5, 4),
        r(3, 2),
        r(15, 8),
    ];
    let ones = vec![r(1, 1); 7];
    let pullbacks = vec![
        (8, eighths.clone()),
        (8, eighths),
        (28, quarters.clone()),
        (28, quarters),
        (56, mixed.clone()),
        (56, mixed),
        (56, ones),
    ];
    let discrepancies: Vec<AffineRational> = [148, 232, 288, 288, 288, 232, 148]
        .into_iter()
        .map(one_minus)
        .collect();
    CatalogEntry {
        id: "dp1-A7",
        degree: 1,
        r: 240,
        cmax: r(1, 240),
        base_k_semistable: true,
        base_note: "degree-1 del Pezzo surfaces with A_k singularities, k <= 7, are K-polystable",
        variants: vec![CatalogVariant {
            label: "default",
            payload: contraction("dp1-A7", 8, roots),
            expected: vec![
                expect(Quantity::AdeType("A7".into()), Source, "an A7 singularity"),
                expect(
                    Quantity::OrbitMultiplicities(counts(&[(8, 2), (28, 2), (56, 3)])),
                    Source,
                    "multiplicities 8, 28, 56, 56, 56, 28, 8 summing to 240",
                ),
                expect(
                    Quantity::PullbackTable(pullbacks),
                    Source,
                    "seven pull-back coefficient vectors of the line types",
                ),
                expect(Quantity::LogDiscrepancies(discrepancies), Derived, ""),
                expect(
                    Quantity::MinLogDiscrepancy(one_minus(288)),
                    Source,
                    "the three middle curves carry A = 1 - 288c",
                ),
                expect(
                    Quantity::WallThreshold(Some(r(1, 288))),
                    Source,
                    "K-unstable strictly above 1/288",
                ),
            ],
        }],
    }
}

/// Two D4 configurations: chains of lengths 2, 2, 1, 3 plus four root
/// lines, in total-transform coordinates
/// (a1, a2, b1, b2, c1, d1, d2, d3) = (E1, ..., E8). Root order: first D4
/// star (center then leaves), second D4 star.
fn dp1_2d4() -> CatalogEntry {
    use Provenance::*;
    let roots = vec![
        cls(1, &[-1, 0, -1, 0, -1, 0, 0, 0]), // h - a1 - b1 - c1 (center 1)
        cls(0, &[1, -1, 0, 0, 0, 0, 0, 0]),   // a1 - a2
        cls(0, &[0, 0, 1, -1, 0, 0, 0, 0]),   // b1 - b2
        cls(1, &[0, 0, 0, 0, 0, -1, -1, -1]), // h - d1 - d2 - d3
        cls(0, &[0, 0, 0, 0, 0, 1, -1, 0]),   // d1 - d2 (center 2)
        cls(1, &[-1, -1, 0, 0, 0, -1, 0, 0]), // h - a1 - a2 - d1
        cls(1, &[0, 0, -1, -1, 0, -1, 0, 0]), // h - b1 - b2 - d1
        cls(0, &[0, 0, 0, 0, 0, 0, 1, -1]),   // d2 - d3
    ];
    let discrepancies: Vec<AffineRational> = [240, 152, 152, 152, 240, 152, 152, 152]
        .into_iter()
        .map(one_minus)
        .collect();
    // sorted per-orbit coefficient multisets: the star centers carry 2,
    // their leaves 1; the paired-leaf orbits carry 1 on the met leaves and
    // the centers, 1/2 elsewhere
    let center_orbit = vec![
        r(0, 1),
        r(0, 1),
        r(0, 1),
        r(0, 1),
        r(1, 1),
        r(1, 1),
        r(1, 1),
        r(2, 1),
    ];
    let leaf_orbit = vec![
        r(1, 2),
        r(1, 2),
        r(1, 2),
        r(1, 2),
        r(1, 1),
        r(1, 1),
        r(1, 1),
        r(1, 1),
    ];
    let pullbacks = vec![
        (24, center_orbit.clone()),
        (24, center_orbit),
        (64, leaf_orbit.clone()),
        (64, leaf_orbit.clone()),
        (64, leaf_orbit),
    ];
    CatalogEntry {
        id: "dp1-2D4",
        degree: 1,
        r: 240,
        cmax: r(1, 240),
        base_k_semistable: true,
        base_note: "degree-1 del Pezzo surfaces with exactly two D4 singularities are K-polystable",
        variants: vec![CatalogVariant {
            label: "default",
            payload: contraction("dp1-2D4", 8, roots),
            expected: vec![
                expect(
                    Quantity::AdeType("2D4".into()),
                    Source,
                    "exactly two D4 singularities",
                ),
                expect(
                    Quantity::OrbitMultiplicities(counts(&[(24, 2), (64, 3)])),
                    Source,
                    "multiplicities 24, 24, 64, 64, 64",
                ),
                expect(Quantity::PullbackTable(pullbacks), Derived, ""),
                expect(Quantity::LogDiscrepancies(discrepancies), Derived, ""),
                expect(
                    Quantity::MinLogDiscrepancy(one_minus(240)),
                    Source,
                    "minimum over the contraction exceptionals",
                ),
                expect(Quantity::WallThreshold(None), Source, "no wall below 1/240"),
            ],
        }],
    }
}

/// The double cover of P(1,2,9) branched along v^9 = w^2, with 120 sextic
/// boundary curves whose distribution among u^6, u^4 v, u^2 v^2, v^3 is a
/// hypothesis. Each invariant sextic satisfies ord_u + 2 ord_v = 6, so
/// ord_u = 240 forces ord_v = 240.
fn dp1_p129() -> CatalogEntry {
    use Provenance::*;
    let make_pair = |name: &str, ord_u: i64, ord_v: i64| WpsPair {
        name: name.to_string(),
        plane: WeightedPlane::new(1, 2, 9).expect("weights"),
        boundary: vec![
            WpsBoundary {
                name: "branch".to_string(),
                degree: 18,
                coefficient: af(1, 2, 0, 1),
                ords: [
                    ("u".to_string(), r(0, 1)),
                    ("v".to_string(), r(0, 1)),
                    ("D_t".to_string(), r(0, 1)),
                ]
                .into_iter()
                .collect(),
            },
            WpsBoundary {
                name: "sextics".to_string(),
                degree: 720,
                coefficient: AffineRational::multiple_of_c(r(1, 1)),
                ords: [
                    ("u".to_string(), r(ord_u, 1)),
                    ("v".to_string(), r(ord_v, 1)),
                    ("D_t".to_string(), r(0, 1)),
                ]
                .into_iter()
                .collect(),
            },
        ],
    };
    let divisors = || {
        vec![
            InvariantDivisor::new("u", 1, true).expect("divisor"),
            InvariantDivisor::new("v", 2, false).expect("divisor"),
            InvariantDivisor::new("D_t", 18, false).expect("divisor"),
        ]
    };
    CatalogEntry {
        id: "dp1-P129",
        degree: 1,
        r: 240,
        cmax: r(1, 240),
        base_k_semistable: true,
        base_note: "the central surface with an A8 point and two 1/9(1,2) points is K-polystable",
        variants: vec![
            CatalogVariant {
                label: "ord-240",
                payload: Payload::Wps {
                    pair: make_pair("dp1-P129-ord240", 240, 240),
                    divisors: divisors(),
                },
                expected: vec![
                    expect(Quantity::SInvariant("u".into(), one_minus(240)), Source, ""),
                    expect(
                        Quantity::SInvariant("v".into(), af(1, 2, -120, 1)),
                        Source,
                        "half of 1 - 240c",
                    ),
                    expect(Quantity::AInvariant("u".into(), one_minus(240)), Source, ""),
                    expect(Quantity::AInvariant("v".into(), one_minus(240)), Source, ""),
                    expect(
                        Quantity::AInvariant("D_t".into(), af(1, 1, 0, 1)),
                        Source,
                        "",
                    ),
                    expect(
                        Quantity::BetaInvariant("u".into(), AffineRational::zero()),
                        Source,
                        "horizontal beta vanishes identically",
                    ),
                    expect(
                        Quantity::BetaInvariant("v".into(), af(1, 2, -120, 1)),
                        Derived,
                        "positive on (0, 1/240)",
                    ),
                    expect(
                        Quantity::BetaInvariant("D_t".into(), af(17, 18, 40, 3)),
                        Derived,
                        "1 - L/54 with L = 3 - 720c",
                    ),
                    expect(
                        Quantity::BetaVerdict("polystable-candidate".into()),
                        Source,
                        "",
                    ),
                ],
            },
            CatalogVariant {
                label: "ord-skew",
                payload: Payload::Wps {
                    pair: make_pair("dp1-P129-skew", 480, 120),
                    divisors: divisors(),
                },
                expected: vec![
                    expect(
                        Quantity::BetaInvariant(
                            "u".into(),
                            AffineRational::multiple_of_c(r(-240, 1)),
                        ),
                        Derived,
                        "all 120 sextics of type u^4 v",
                    ),
                    expect(
                        Quantity::BetaVerdict("unstable".into()),
                        Derived,
                        "nonzero horizontal beta",
                    ),
                ],
            },
        ],
    }
}
