//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the checked values. Everything is exact; the single numeric tolerance
//! (1e-6) belongs to the Riemann-sum oracle that cross-checks the closed
//! form of the S-invariant.

use std::collections::BTreeSet;
use std::time::Instant;

use kstab::catalog::{Catalog, Payload, Provenance, Quantity};
use kstab::chain::{BlowupChain, BoundaryComponent, ChainCenter};
use kstab::contraction::volume_bound_max_order;
use kstab::exactnum::{AffineRational, Rational};
use kstab::picard::enumerate_lines;
use kstab::verify::{self, CheckStatus};

fn r(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn one_minus(k: i64) -> AffineRational {
    AffineRational::new(Rational::one(), Rational::from_int(-k))
}

fn contraction_payload<'a>(
    catalog: &'a Catalog,
    id: &str,
) -> &'a kstab::contraction::ContractionModel {
    let entry = catalog.get(id).unwrap();
    entry
        .variants
        .iter()
        .find_map(|v| match &v.payload {
            Payload::Contraction(m) => Some(m),
            _ => None,
        })
        .unwrap_or_else(|| panic!("{id} has no contraction payload"))
}

fn chain_payload<'a>(catalog: &'a Catalog, id: &str, variant: &str) -> &'a BlowupChain {
    let entry = catalog.get(id).unwrap();
    match &entry.variant(variant).unwrap().payload {
        Payload::Chain(c) => c,
        _ => panic!("{id}/{variant} is not a chain"),
    }
}

#[test]
fn criterion_01_line_enumeration() {
    let start = Instant::now();
    let expected = [(5usize, 16usize), (6, 27), (7, 56), (8, 240)];
    for (n, count) in expected {
        let lines = enumerate_lines(n).unwrap();
        assert_eq!(lines.len(), count, "line count for n = {n}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "enumeration took {elapsed:?}");
    println!("PASS criterion 1: line counts 16/27/56/240 for n = 5..8 in {elapsed:?}");
}

#[test]
fn criterion_02_cubic_three_a2() {
    let catalog = Catalog::new();
    let model = contraction_payload(&catalog, "cubic-3A2");

    // pull-back of the contracted line's proper transform (second
    // exceptional over the first tangent vector)
    let f1 = kstab::DivisorClass::new(0, vec![0, 1, 0, 0, 0, 0]);
    let coeffs = model.mumford_pullback(&f1).unwrap();
    let mut sorted = coeffs.clone();
    sorted.sort();
    assert_eq!(
        sorted,
        vec![r(0, 1), r(0, 1), r(1, 3), r(1, 3), r(2, 3), r(2, 3)],
        "full coefficient multiset"
    );
    // per A2 pair (roots are listed pairwise): {1/3, 2/3}, {1/3, 2/3}, {0, 0}
    let pair_multisets: Vec<BTreeSet<Rational>> = coeffs
        .chunks(2)
        .map(|pair| pair.iter().cloned().collect())
        .collect();
    let third_two_thirds: BTreeSet<Rational> = [r(1, 3), r(2, 3)].into_iter().collect();
    let zeros: BTreeSet<Rational> = [r(0, 1)].into_iter().collect();
    assert_eq!(pair_multisets[0], third_two_thirds);
    assert_eq!(pair_multisets[1], third_two_thirds);
    assert_eq!(pair_multisets[2], zeros);

    let orbits = model.line_orbits().unwrap();
    assert_eq!(orbits.len(), 3);
    assert!(orbits.iter().all(|o| o.multiplicity == 9));

    let a = model.boundary_log_discrepancies().unwrap();
    assert_eq!(a, vec![one_minus(9); 6]);

    assert_eq!(model.instability_threshold(&r(1, 9)).unwrap(), None);
    println!(
        "PASS criterion 2: cubic pull-back (1/3, 2/3 pattern), 3 orbits of multiplicity 9, A = 1 - 9c, no wall below 1/9"
    );
}

#[test]
fn criterion_03_quartic_models() {
    let catalog = Catalog::new();
    let cases = [
        ("quartic-1A1", vec![(2u64, 4u64), (1, 8)]),
        ("quartic-2A1", vec![(4, 1), (2, 4), (1, 4)]),
        ("quartic-3A1", vec![(4, 2), (2, 4)]),
        ("quartic-4A1", vec![(4, 4)]),
    ];
    for (id, expected_multiset) in cases {
        let model = contraction_payload(&catalog, id);
        let multiset = verify::orbit_multiset(model).unwrap();
        let expected: std::collections::BTreeMap<u64, u64> =
            expected_multiset.into_iter().collect();
        assert_eq!(multiset, expected, "{id} orbit multiset");

        let a = model.boundary_log_discrepancies().unwrap();
        assert!(
            a.iter().all(|f| *f == one_minus(4)),
            "{id} binding A should be 1 - 4c on every root"
        );
        assert_eq!(
            model.instability_threshold(&r(1, 4)).unwrap(),
            None,
            "{id} threshold must not lie below 1/4"
        );

        // multiplicity = 2^(number of roots the representative meets)
        for orbit in model.line_orbits().unwrap() {
            let met = model
                .roots()
                .iter()
                .filter(|root| orbit.representative.pairing(root).unwrap() > 0)
                .count() as u32;
            assert_eq!(
                orbit.multiplicity,
                2u64.pow(met),
                "{id}: orbit of {} violates the 2^k law",
                orbit.representative
            );
        }
    }
    println!(
        "PASS criterion 3: quartic orbit multisets {{2:4,1:8}}, {{4:1,2:4,1:4}}, {{4:2,2:4}}, {{4:4}}; A = 1 - 4c; thresholds >= 1/4; 2^k law"
    );
}

#[test]
fn criterion_04_degree_two_chains() {
    let catalog = Catalog::new();
    let cmax = r(1, 28);
    let expectations: &[(&str, &str, Vec<AffineRational>)] = &[
        ("dp2-cateye", "default", vec![one_minus(22), one_minus(28)]),
        ("dp2-ox", "default", vec![one_minus(22), one_minus(28)]),
        ("dp2-4lines", "default", vec![one_minus(12)]),
        (
            "dp2-3cusps",
            "default",
            vec![
                one_minus(18),
                AffineRational::new(r(3, 2), r(-18, 1)),
                AffineRational::new(r(2, 1), r(-36, 1)),
            ],
        ),
        (
            "dp2-node2cusps",
            "default",
            vec![
                one_minus(18),
                AffineRational::new(r(3, 2), r(-21, 1)),
                AffineRational::new(r(2, 1), r(-39, 1)),
                one_minus(12),
            ],
        ),
        (
            "dp2-cusp2nodes",
            "default",
            vec![
                one_minus(18),
                AffineRational::new(r(3, 2), r(-24, 1)),
                AffineRational::new(r(2, 1), r(-42, 1)),
                one_minus(12),
                AffineRational::new(r(3, 2), r(-14, 1)),
            ],
        ),
        (
            "dp2-P114-vertex",
            "default",
            vec![AffineRational::new(r(1, 2), r(-14, 1))],
        ),
        (
            "dp2-P114-tacnode",
            "default",
            vec![
                AffineRational::new(r(1, 2), r(-14, 1)),
                one_minus(28),
                one_minus(28),
            ],
        ),
    ];
    for (id, variant, expected) in expectations {
        let chain = chain_payload(&catalog, id, variant);
        let a = chain.log_discrepancies().unwrap();
        assert_eq!(&a, expected, "{id} chain values");
        let report = chain.lc_verdict(&cmax).unwrap();
        assert!(
            report.holds_on_interval,
            "{id} must be lc on all of (0, 1/28)"
        );
    }

    // conflicted three-nodes entry: both variants, reported as conflicted,
    // both strictly positive on the open interval
    let twelve = chain_payload(&catalog, "dp2-3nodes", "lines-12");
    assert_eq!(twelve.log_discrepancies().unwrap()[0], one_minus(12));
    assert!(twelve.lc_verdict(&cmax).unwrap().holds_on_interval);
    let sixteen = chain_payload(&catalog, "dp2-3nodes", "lines-16");
    assert_eq!(sixteen.log_discrepancies().unwrap()[0], one_minus(16));
    assert!(sixteen.lc_verdict(&cmax).unwrap().holds_on_interval);
    for variant in [&twelve, &sixteen] {
        for a in variant.log_discrepancies().unwrap() {
            assert_eq!(a.positivity_on(&cmax), kstab::Positivity::Everywhere);
        }
    }
    let entry = catalog.get("dp2-3nodes").unwrap();
    for variant in &entry.variants {
        assert!(
            variant.expected.iter().any(|e| {
                e.provenance == Provenance::SourceConflicted
                    && matches!(e.quantity, Quantity::ChainDiscrepancies(_))
            }),
            "dp2-3nodes/{} must be tagged as a conflicted source value",
            variant.label
        );
    }
    let report = verify::verify_entry(entry);
    assert!(report.checks.iter().any(|c| c.status == CheckStatus::Warn));
    assert!(report.passed());

    println!(
        "PASS criterion 4: degree-2 chains exact (cateye/ox (1-22c, 1-28c); 4 lines 1-12c; cusps and nodes; vertex 1/2-14c; tacnode (1-28c, 1-28c)); all lc on (0, 1/28); 3-node variants 1-12c and 1-16c reported as conflicted"
    );
}

#[test]
fn criterion_05_degree_one_a7() {
    let catalog = Catalog::new();
    let model = contraction_payload(&catalog, "dp1-A7");

    let table = verify::pullback_table(model).unwrap();
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
    let expected = vec![
        (8u64, eighths.clone()),
        (8, eighths),
        (28, quarters.clone()),
        (28, quarters),
        (56, mixed.clone()),
        (56, mixed),
        (56, ones),
    ];
    assert_eq!(table, expected, "seven pull-back coefficient vectors");

    let orbits = model.line_orbits().unwrap();
    let mults: Vec<u64> = orbits.iter().map(|o| o.multiplicity).collect();
    assert_eq!(mults, vec![8, 8, 28, 28, 56, 56, 56]);
    assert_eq!(mults.iter().sum::<u64>(), 240);

    // the orbit representatives are exactly the seven degeneration line
    // types, transcribed from chain-curve notation into the orthogonal
    // basis (each squares to -1, which pins the transcription down)
    let mut reps: Vec<kstab::DivisorClass> =
        orbits.iter().map(|o| o.representative.clone()).collect();
    reps.sort();
    let mut expected_reps = vec![
        kstab::DivisorClass::new(0, vec![0, 0, 0, 0, 0, 0, 0, 1]),
        kstab::DivisorClass::new(1, vec![-1, -1, 0, 0, 0, 0, 0, 0]),
        kstab::DivisorClass::new(2, vec![-1, -1, -1, -1, -1, 0, 0, 0]),
        kstab::DivisorClass::new(3, vec![-2, -1, -1, -1, -1, -1, -1, 0]),
        kstab::DivisorClass::new(4, vec![-2, -2, -2, -1, -1, -1, -1, -1]),
        kstab::DivisorClass::new(5, vec![-2, -2, -2, -2, -2, -2, -1, -1]),
        kstab::DivisorClass::new(6, vec![-3, -2, -2, -2, -2, -2, -2, -2]),
    ];
    expected_reps.sort();
    assert_eq!(reps, expected_reps);

    let a = model.boundary_log_discrepancies().unwrap();
    assert_eq!(&a[2..5], &[one_minus(288), one_minus(288), one_minus(288)]);

    assert_eq!(
        model.instability_threshold(&r(1, 240)).unwrap(),
        Some(r(1, 288))
    );
    println!(
        "PASS criterion 5: A7 pull-back table (e.g. multiset 1/8..7/8), multiplicities (8,28,56,56,56,28,8) summing to 240, middle A = 1 - 288c, wall candidate exactly 1/288"
    );
}

#[test]
fn criterion_06_degree_one_two_d4() {
    let catalog = Catalog::new();
    let model = contraction_payload(&catalog, "dp1-2D4");
    assert_eq!(model.ade_type().to_string(), "2D4");

    let mults: Vec<u64> = model
        .line_orbits()
        .unwrap()
        .iter()
        .map(|o| o.multiplicity)
        .collect();
    assert_eq!(mults, vec![24, 24, 64, 64, 64]);

    let a = model.boundary_log_discrepancies().unwrap();
    let min = verify::minimum_over_interval(&a, &r(1, 240)).unwrap();
    assert_eq!(min, one_minus(240));

    assert_eq!(model.instability_threshold(&r(1, 240)).unwrap(), None);
    println!(
        "PASS criterion 6: 2D4 detected, orbit multiplicities {{24,24,64,64,64}}, min A = 1 - 240c, no wall below 1/240"
    );
}

#[test]
fn criterion_07_weighted_plane_p129() {
    let catalog = Catalog::new();
    let entry = catalog.get("dp1-P129").unwrap();
    let cmax = r(1, 240);
    let Payload::Wps { pair, divisors } = &entry.variant("ord-240").unwrap().payload else {
        panic!("dp1-P129/ord-240 is not a wps payload");
    };
    let u = divisors.iter().find(|d| d.name == "u").unwrap();
    let v = divisors.iter().find(|d| d.name == "v").unwrap();
    let dt = divisors.iter().find(|d| d.name == "D_t").unwrap();

    assert_eq!(pair.s_invariant(u, &cmax).unwrap(), one_minus(240));
    assert_eq!(
        pair.s_invariant(v, &cmax).unwrap(),
        AffineRational::new(r(1, 2), r(-120, 1))
    );

    let beta_u = pair.beta(u, &cmax).unwrap();
    assert!(
        beta_u.is_zero(),
        "beta of the horizontal divisor vanishes identically"
    );

    for (name, beta) in [
        ("v", pair.beta(v, &cmax).unwrap()),
        ("D_t", pair.beta(dt, &cmax).unwrap()),
    ] {
        assert_eq!(
            beta.positivity_on(&cmax),
            kstab::Positivity::Everywhere,
            "beta({name}) = {beta} must be strictly positive on the open interval (0, 1/240)"
        );
    }

    // Riemann-sum oracle for the S closed form: 10^6 midpoint steps of
    // the shifted-volume integral at five sample coefficients.
    let samples = [r(0, 1), r(1, 1000), r(1, 500), r(1, 300), r(1, 250)];
    for c in &samples {
        for divisor in [u, v, dt] {
            let closed = pair
                .s_invariant(divisor, &cmax)
                .unwrap()
                .evaluate(c)
                .to_f64();
            let l = pair.log_degree().evaluate(c).to_f64();
            let m = divisor.degree as f64;
            let steps = 1_000_000u32;
            let upper = l / m;
            let dt_step = upper / steps as f64;
            let mut integral = 0.0f64;
            for i in 0..steps {
                let t = (i as f64 + 0.5) * dt_step;
                let s = l - m * t;
                integral += s * s * dt_step;
            }
            let oracle = integral / (l * l);
            assert!(
                (closed - oracle).abs() < 1e-6,
                "closed form {closed} vs oracle {oracle} for {} at c = {c}",
                divisor.name
            );
        }
    }
    println!(
        "PASS criterion 7: S(u) = 1 - 240c, S(v) = (1 - 240c)/2, beta(u) = 0, beta(v) and beta(D_t) > 0 on (0, 1/240); closed-form S within 1e-6 of the Riemann oracle at 5 coefficients"
    );
}

#[test]
fn criterion_08_volume_bound() {
    let cases = [(3i64, 3i64), (4, 2), (2, 4), (1, 9)];
    for (degree, order) in cases {
        assert_eq!(
            volume_bound_max_order(degree).unwrap(),
            order,
            "degree {degree}"
        );
    }
    println!(
        "PASS criterion 8: volume-bound max quotient orders 3, 2, 4, 9 for degrees 3, 4, 2, 1"
    );
}

#[test]
fn criterion_09_cross_module_consistency() {
    let catalog = Catalog::new();
    let model = contraction_payload(&catalog, "quartic-1A1");
    let contraction_binding = &model.boundary_log_discrepancies().unwrap()[0];

    let chain = chain_payload(&catalog, "quartic-1A1", "node-vertex-chain");
    let report = chain.lc_verdict(&r(1, 4)).unwrap();
    assert_eq!(
        &report.binding, contraction_binding,
        "lattice route and chain route must agree"
    );
    assert_eq!(report.binding, one_minus(4));
    println!("PASS criterion 9: quartic-1A1 contraction and blow-up chain both bind at 1 - 4c (identical functions)");
}

#[test]
fn criterion_10_property_suites() {
    let catalog = Catalog::new();

    // pull-back orthogonality residuals exactly zero, orbit sums exact
    for entry in catalog.entries() {
        for variant in &entry.variants {
            let Payload::Contraction(model) = &variant.payload else {
                continue;
            };
            let orbits = model.line_orbits().unwrap();
            let total: u64 = orbits.iter().map(|o| o.multiplicity).sum();
            let lines = model.lattice().lines().unwrap();
            assert_eq!(
                total,
                lines.len() as u64,
                "{}: orbit partition sum",
                entry.id
            );
            for orbit in &orbits {
                let residuals = model
                    .residuals(&orbit.representative, &orbit.pullback_coeffs)
                    .unwrap();
                assert!(
                    residuals.iter().all(Rational::is_zero),
                    "{}: nonzero residual on {}",
                    entry.id,
                    orbit.representative
                );
                assert!(orbit.pullback_coeffs.iter().all(|c| !c.is_negative()));
            }
        }
    }

    // baseline beta on the plane
    let entry = catalog.get("baseline-P2").unwrap();
    let Payload::Wps { pair, divisors } = &entry.variant("default").unwrap().payload else {
        panic!("baseline payload");
    };
    let beta = pair.beta(&divisors[0], &entry.cmax).unwrap();
    assert!(
        beta.is_zero(),
        "beta of a line on the bare plane must vanish"
    );

    // chain monotonicity on 200 pseudo-random chains: bumping any
    // multiplicity weakly decreases every later log discrepancy
    let mut state = 0x9e3779b97f4a7c15u64;
    let mut next = move || {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        state
    };
    let c = r(1, 100);
    for case in 0..200 {
        let n_comps = 1 + (next() % 3) as usize;
        let components: Vec<BoundaryComponent> = (0..n_comps)
            .map(|i| {
                let const_part = r((next() % 3) as i64, 4);
                let slope = r((next() % 20) as i64, 1);
                BoundaryComponent::new(format!("c{i}"), AffineRational::new(const_part, slope))
            })
            .collect();
        let n_centers = 1 + (next() % 4) as usize;
        let centers: Vec<ChainCenter> = (1..=n_centers)
            .map(|id| {
                let mut on = Vec::new();
                if id > 1 && next() % 2 == 0 {
                    on.push((next() % (id as u64 - 1) + 1) as u32);
                    if id > 2 && next() % 3 == 0 {
                        let other = (next() % (id as u64 - 1) + 1) as u32;
                        if !on.contains(&other) {
                            on.push(other);
                        }
                    }
                }
                on.sort_unstable();
                ChainCenter {
                    id: id as u32,
                    on_exceptionals: on,
                    mults: components
                        .iter()
                        .map(|comp| (comp.name.clone(), next() % 3))
                        .collect(),
                }
            })
            .collect();
        let chain = BlowupChain {
            name: format!("random-{case}"),
            components: components.clone(),
            vertex: None,
            centers: centers.clone(),
        };
        let before: Vec<Rational> = chain
            .log_discrepancies()
            .unwrap()
            .iter()
            .map(|a| a.evaluate(&c))
            .collect();

        let bump_center = (next() % n_centers as u64) as usize;
        let bump_comp = (next() % n_comps as u64) as usize;
        let mut bumped = chain.clone();
        *bumped.centers[bump_center]
            .mults
            .get_mut(&components[bump_comp].name)
            .unwrap() += 1;
        let after: Vec<Rational> = bumped
            .log_discrepancies()
            .unwrap()
            .iter()
            .map(|a| a.evaluate(&c))
            .collect();
        for (b, a) in before.iter().zip(&after) {
            assert!(
                a <= b,
                "bumping a multiplicity must weakly decrease every A"
            );
        }
    }

    println!(
        "PASS criterion 10: zero pull-back residuals and exact orbit sums on every catalog model; baseline beta(plane, line) = 0; chain monotonicity on 200 random chains"
    );
}
