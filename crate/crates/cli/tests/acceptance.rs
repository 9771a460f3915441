//! Acceptance suite: one test per release criterion, each printing a
//! PASS line. Every value asserted here is exact; the only tolerances are
//! wall-clock budgets.

use std::time::{Duration, Instant};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use reidemeister::chartab::{self, Cyclotomic};
use reidemeister::congruence::{self, ArithmeticFunction};
use reidemeister::group;
use reidemeister::morphism::{self, from_generator_images, Endomorphism};
use reidemeister::twisted::{self, ReidemeisterMethod};
use reidemeister::FiniteGroup;

use reidemeister_cli::commands;
use reidemeister_cli::corpus::default_corpus;
use reidemeister_cli::verify::{self, VerifyOptions};

fn sorted(mut v: Vec<usize>) -> Vec<usize> {
    v.sort_unstable();
    v
}

fn run_properties(properties: &[&str]) -> verify::VerifyOutcome {
    let corpus = default_corpus();
    let opts = VerifyOptions {
        properties: Some(properties.iter().map(|s| s.to_string()).collect()),
        ..Default::default()
    };
    verify::run(&corpus, &opts).expect("verification runner")
}

fn assert_all_passed(outcome: &verify::VerifyOutcome, criterion: &str) {
    let failures: Vec<_> = outcome.records.iter().filter(|r| !r.passed()).collect();
    assert!(
        failures.is_empty(),
        "{criterion}: {} failing instances, first: {:?}",
        failures.len(),
        failures.first()
    );
}

/// Order-32 example group: exact golden values through every route.
#[test]
fn criterion_1_order_32_golden_values() {
    let started = Instant::now();

    let g = group::from_uri("builtin:paper32").unwrap();
    assert_eq!(g.order(), 32);
    let classes = g.classes();
    assert_eq!(classes.count(), 11);
    assert_eq!(
        sorted(classes.class_sizes.clone()),
        vec![1, 1, 2, 2, 2, 4, 4, 4, 4, 4, 4]
    );

    // x -> x, y -> x^6 y, z -> z.
    let psi = from_generator_images(&g, &[1, 8, 16], &[1, 14, 16]).unwrap();
    let classification = psi.classify();
    assert!(classification.is_automorphism);
    assert!(!classification.is_inner);
    assert!(classification.is_class_preserving);

    let id = Endomorphism::identity(&g);
    for method in ReidemeisterMethod::ALL {
        assert_eq!(
            twisted::reidemeister_number(&id, &psi, method).unwrap(),
            11,
            "{method:?}"
        );
    }
    assert_eq!(twisted::reidemeister_via_xi(&id, &psi).unwrap(), 11);
    let table = chartab::character_table(&g).unwrap();
    assert_eq!(chartab::dual_coincidence_count(&table, &id, &psi).unwrap(), 11);

    let partition = twisted::twisted_classes(&id, &psi).unwrap();
    assert_eq!(
        sorted(partition.class_sizes.clone()),
        vec![2, 2, 2, 2, 2, 2, 4, 4, 4, 4, 4]
    );

    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(5), "took {elapsed:?}");
    println!("acceptance criterion 1 (order-32 golden values): PASS in {elapsed:?}");
}

/// Orbits, Burnside, class-sum, and characters agree on every sampled pair
/// of every corpus group.
#[test]
fn criterion_2_method_agreement_sweep() {
    let started = Instant::now();
    let outcome = run_properties(&["method-agreement"]);
    assert_all_passed(&outcome, "criterion 2");
    assert_eq!(outcome.summary.groups.len(), 41, "expected the full corpus");
    let elapsed = started.elapsed();
    assert!(elapsed < Duration::from_secs(600), "took {elapsed:?}");
    println!(
        "acceptance criterion 2 (method agreement, {} pairs over {} groups): PASS in {elapsed:?}",
        outcome.summary.total,
        outcome.summary.groups.len()
    );
}

/// The theta decomposition and its inner-product identity hold exactly on
/// every sampled pair of every corpus group of order <= 32.
#[test]
fn criterion_3_character_identities() {
    let outcome = run_properties(&["theta-decomposition", "theta-inner-product"]);
    assert_all_passed(&outcome, "criterion 3");
    // Both properties must actually have run on the order <= 32 groups.
    let decomposition = outcome.summary.per_property.get("theta-decomposition").unwrap();
    let inner = outcome.summary.per_property.get("theta-inner-product").unwrap();
    assert!(decomposition.passed > 30_000);
    assert_eq!(decomposition.passed, inner.passed);
    println!(
        "acceptance criterion 3 (character identities on {} instances): PASS",
        outcome.summary.total
    );
}

/// R = 1, trivial fixed points, the regular character, and the dual fixed
/// rows all coincide, over every enumerated endomorphism/automorphism.
#[test]
fn criterion_4_fixed_point_criteria() {
    let outcome = run_properties(&[
        "fixed-class-count",
        "fixed-point-criterion",
        "regular-representation",
        "dual-fix",
    ]);
    assert_all_passed(&outcome, "criterion 4");
    // One aggregate record per group per property.
    assert_eq!(outcome.summary.total, 4 * 41);
    println!("acceptance criterion 4 (fixed-point criteria, all endomorphisms): PASS");
}

/// Power inequalities, the central sandwich, and the gap equivalence.
#[test]
fn criterion_5_inequalities_and_gap() {
    let outcome = run_properties(&["power-inequality", "central-bounds", "gap-theorem"]);
    assert_all_passed(&outcome, "criterion 5");
    let bounds = outcome.summary.per_property.get("central-bounds").unwrap();
    assert!(bounds.passed >= 100, "central subgroups actually enumerated");
    let gap = outcome.summary.per_property.get("gap-theorem").unwrap();
    assert!(gap.passed >= 20, "gap sweep covered the small groups");
    println!(
        "acceptance criterion 5 (inequalities and gap, {} instances): PASS",
        outcome.summary.total
    );
}

/// Parity on odd orders, the divisor-sum congruences, the prime-power
/// congruence, and the congruence on arbitrary random self-maps.
#[test]
fn criterion_6_parity_and_congruences() {
    let outcome = run_properties(&["parity", "gauss-congruence", "prime-congruence"]);
    assert_all_passed(&outcome, "criterion 6");
    let parity = outcome.summary.per_property.get("parity").unwrap();
    assert_eq!(parity.passed, 13, "every odd-order corpus group swept");

    // The lemma-level congruence on 100 seeded random self-maps.
    let mut rng = ChaCha8Rng::seed_from_u64(0xd01d);
    let thetas = [
        ArithmeticFunction::euler_phi(),
        ArithmeticFunction::moebius(),
        ArithmeticFunction::jordan(2),
    ];
    for case in 0..100 {
        let size = rng.random_range(1..=40usize);
        let f: Vec<usize> = (0..size).map(|_| rng.random_range(0..size)).collect();
        let n = rng.random_range(1..=12u64);
        for theta in &thetas {
            let report = congruence::self_map_congruence(&f, n, theta);
            assert!(report.passes, "case {case}: size {size}, n {n}, {}", theta.name());
        }
    }
    println!(
        "acceptance criterion 6 (parity and congruences, {} instances + 100 self-maps): PASS",
        outcome.summary.total
    );
}

/// Every corpus character table passes exact orthogonality, and the C2/C3
/// tables equal their unique known values.
#[test]
fn criterion_7_character_table_correctness() {
    let corpus = default_corpus();
    for entry in &corpus.entries {
        let table = chartab::character_table(&entry.group).unwrap();
        table.verify().unwrap_or_else(|e| panic!("table of {} invalid: {e}", entry.name));
        let classes = entry.group.classes();
        assert_eq!(table.rows().len(), classes.count());
        let degree_square_sum: usize = table.degrees().iter().map(|d| d * d).sum();
        assert_eq!(degree_square_sum, entry.group.order());
    }

    let c2 = FiniteGroup::builtin(reidemeister::BuiltinFamily::Cyclic(2)).unwrap();
    let t2 = chartab::character_table(&c2).unwrap();
    let one = Cyclotomic::one(2);
    let minus_one = Cyclotomic::from_integer(2, -1);
    assert_eq!(t2.row(0).values(), &[one.clone(), one.clone()]);
    assert_eq!(t2.row(1).values(), &[one, minus_one]);

    let c3 = FiniteGroup::builtin(reidemeister::BuiltinFamily::Cyclic(3)).unwrap();
    let t3 = chartab::character_table(&c3).unwrap();
    let one = Cyclotomic::one(3);
    let omega = Cyclotomic::root_of_unity(3, 1);
    let omega2 = Cyclotomic::root_of_unity(3, 2);
    let expected = [
        vec![one.clone(), one.clone(), one.clone()],
        vec![one.clone(), omega.clone(), omega2.clone()],
        vec![one.clone(), omega2, omega],
    ];
    for wanted in &expected {
        assert!(
            t3.rows().iter().any(|row| row.values() == wanted.as_slice()),
            "missing C3 row"
        );
    }
    println!(
        "acceptance criterion 7 (character tables of {} groups): PASS",
        corpus.entries.len()
    );
}

/// Fixed-point-free automorphisms force solvability; the obstruction
/// excludes them; A5 admits none among its 120 automorphisms.
#[test]
fn criterion_8_fpf_consistency() {
    let corpus = default_corpus();
    let report = commands::fpf_report(&corpus).unwrap();
    assert!(report.consistent);
    for group_report in &report.groups {
        if !group_report.fixed_point_free.is_empty() {
            assert!(group_report.solvable, "{} has an fpf automorphism", group_report.group);
        }
        if group_report.obstruction {
            assert!(group_report.fixed_point_free.is_empty());
        }
    }
    let a5 = report.groups.iter().find(|g| g.group == "A5").unwrap();
    assert_eq!(a5.automorphisms, 120);
    assert!(a5.fixed_point_free.is_empty());
    assert!(!a5.solvable);

    // The obstruction flag is consistent with direct enumeration on a
    // group that does admit one: C3 and inversion.
    let c3 = FiniteGroup::builtin(reidemeister::BuiltinFamily::Cyclic(3)).unwrap();
    let fpf: Vec<_> = morphism::automorphisms(&c3)
        .filter(|a| a.is_fixed_point_free())
        .collect();
    assert_eq!(fpf.len(), 1);
    println!(
        "acceptance criterion 8 (fpf consistency over {} groups): PASS",
        report.groups.len()
    );
}
