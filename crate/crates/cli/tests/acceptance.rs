//! Acceptance gate: one test per criterion, each ending in a single
//! pass/fail line. Every check is exact integer/rational arithmetic.

use std::path::Path;
use std::process::Command;
use std::time::Instant;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use orbispec_core::hodge::triple_tuple;
use orbispec_core::lambda::{power_direct_formula, power_expand, Mode};
use orbispec_core::macdonald::{
    normalization_audit, verify_corollary1, verify_theorem1, verify_theorem2,
    wreath_lhs_k1_positive_d, ShiftConvention, Theorem2Fixture,
};
use orbispec_core::orbifold::{brieskorn_zero_dim, Child, Dimension};
use orbispec_core::ring::EffectiveMapClass;
use orbispec_core::{
    Coord, CyclicRational, EquivariantHd, ExplicitGSet, FiniteGroup, GradingGroup,
    GroupElementTuple, GroupRingElement, MixedHodgeEigenDatum, Rat, TripleNode, TruncatedSeries,
};

fn pair_tuple(rng: &mut ChaCha8Rng) -> GroupElementTuple {
    let den = rng.gen_range(1..=12i64);
    let alpha = Rat::new(rng.gen_range(0..den), den);
    let den2 = rng.gen_range(1..=12i64);
    let p = Rat::new(rng.gen_range(-12..=12i64), den2);
    GroupElementTuple::new(vec![
        Coord::Cyclic(CyclicRational::new(alpha)),
        Coord::Rational(p),
    ])
}

/// A random effective pair-ring element with support ≤ `support` and
/// coefficients ≤ `max_coeff`.
fn random_effective(rng: &mut ChaCha8Rng, support: usize, max_coeff: i64) -> GroupRingElement {
    let terms: Vec<_> = (0..rng.gen_range(0..=support))
        .map(|_| (pair_tuple(rng), BigInt::from(rng.gen_range(1..=max_coeff))))
        .collect();
    GroupRingElement::from_terms(GradingGroup::pair(), terms).unwrap()
}

fn random_effective_series(rng: &mut ChaCha8Rng, order: usize) -> TruncatedSeries {
    let sig = GradingGroup::pair();
    let mut coeffs = vec![GroupRingElement::one(sig.clone())];
    for _ in 0..order {
        coeffs.push(random_effective(rng, 2, 2));
    }
    TruncatedSeries::from_coeffs(sig, coeffs).unwrap()
}

fn theorem1_fixtures() -> Vec<(&'static str, Vec<MixedHodgeEigenDatum>)> {
    let zero = CyclicRational::zero;
    let cyc = |n: i64, d: i64| CyclicRational::new(Rat::new(n, d));
    vec![
        ("point", vec![MixedHodgeEigenDatum::new(0, 0, 0, zero(), 1)]),
        (
            "z2-free",
            vec![
                MixedHodgeEigenDatum::new(0, 0, 0, zero(), 1),
                MixedHodgeEigenDatum::new(0, 0, 0, cyc(1, 2), 1),
            ],
        ),
        ("affine-line", vec![MixedHodgeEigenDatum::new(2, 1, 1, zero(), 1)]),
        (
            "odd-surface",
            vec![
                MixedHodgeEigenDatum::new(0, 0, 0, zero(), 1),
                MixedHodgeEigenDatum::new(1, 1, 0, cyc(1, 3), 2),
            ],
        ),
        (
            "torsion",
            vec![
                MixedHodgeEigenDatum::new(2, 1, 1, cyc(1, 4), 1),
                MixedHodgeEigenDatum::new(0, 0, 0, cyc(1, 2), 1),
            ],
        ),
    ]
}

/// The (ℂ, μ₂, id) node: quotient class uv, age-1/2 stratum at the origin.
fn complex_line_mu2_node() -> TripleNode {
    let origin = TripleNode::new(
        Dimension::Pure(0),
        FiniteGroup::cyclic(2),
        EquivariantHd::point(),
        Default::default(),
        0,
    )
    .unwrap();
    let uv = EquivariantHd::new(
        GroupRingElement::single(
            GradingGroup::triple(),
            triple_tuple(CyclicRational::zero(), Rat::from_integer(1), Rat::from_integer(1)),
        )
        .unwrap(),
    )
    .unwrap();
    let mut children = std::collections::BTreeMap::new();
    children.insert((1usize, Rat::new(1, 2)), Child::Node(Box::new(origin)));
    TripleNode::new(Dimension::Pure(1), FiniteGroup::cyclic(2), uv, children, 1).unwrap()
}

#[test]
fn criterion_01_power_structure_axioms() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
    let sig = GradingGroup::pair();
    let one_elt = GroupRingElement::one(sig.clone());
    let one_series = TruncatedSeries::one(sig.clone(), 5);
    for _ in 0..100 {
        let a = random_effective_series(&mut rng, 5);
        let b = random_effective_series(&mut rng, 5);
        let m1 = random_effective(&mut rng, 2, 2);
        let m2 = random_effective(&mut rng, 2, 2);
        for mode in [Mode::Substitution, Mode::Geometric] {
            let sum = m1.try_add(&m2).unwrap();
            assert_eq!(
                power_expand(&a, &sum, mode, 5),
                &power_expand(&a, &m1, mode, 5) * &power_expand(&a, &m2, mode, 5)
            );
            assert_eq!(
                power_expand(&(&a * &b), &m1, mode, 5),
                &power_expand(&a, &m1, mode, 5) * &power_expand(&b, &m1, mode, 5)
            );
            assert!(power_expand(&a, &GroupRingElement::zero(sig.clone()), mode, 5).is_one());
            assert_eq!(power_expand(&a, &one_elt, mode, 5), a);
            assert!(power_expand(&one_series, &m1, mode, 5).is_one());
            let powered = power_expand(&a, &m1, mode, 5);
            assert_eq!(powered.coeff(1), &a.coeff(1).try_mul(&m1).unwrap());
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 10, "criterion 1 exceeded 10 s: {elapsed:?}");
    println!("criterion 1: PASS — power-structure axioms on 100 random effective inputs, both modes ({elapsed:?})");
}

#[test]
fn criterion_02_direct_formula_oracle() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
    for _ in 0..150 {
        let sig = GradingGroup::pair();
        let n_levels = rng.gen_range(0..=3usize);
        let levels: Vec<EffectiveMapClass> = (0..n_levels)
            .map(|_| {
                // |Xᵢ| ≤ 2: at most two points counted with multiplicity
                let n_points = rng.gen_range(0..=2usize);
                let terms: Vec<_> = (0..n_points)
                    .map(|_| (pair_tuple(&mut rng), BigInt::from(1)))
                    .collect();
                EffectiveMapClass::new(
                    GroupRingElement::from_terms(sig.clone(), terms).unwrap(),
                )
                .unwrap()
            })
            .collect();
        let m_points = rng.gen_range(0..=3usize);
        let m = EffectiveMapClass::new(
            GroupRingElement::from_terms(
                sig.clone(),
                (0..m_points).map(|_| (pair_tuple(&mut rng), BigInt::from(1))),
            )
            .unwrap(),
        )
        .unwrap();
        let mut series = TruncatedSeries::one(sig, 4);
        for (i, level) in levels.iter().enumerate() {
            series.set_coeff(i + 1, level.as_ring().clone());
        }
        assert_eq!(
            power_direct_formula(&levels, &m, 4),
            power_expand(&series, m.as_ring(), Mode::Geometric, 4)
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "criterion 2 exceeded 30 s: {elapsed:?}");
    println!("criterion 2: PASS — combinatorial formula equals geometric-mode power structure on 150 random effective inputs ({elapsed:?})");
}

#[test]
fn criterion_03_theorem1() {
    let start = Instant::now();
    let fixtures = theorem1_fixtures();
    assert!(fixtures.len() >= 4);
    for (name, data) in &fixtures {
        let report = verify_theorem1(data, name, 5);
        assert!(report.all_equal(), "theorem 1 failed on {name}:\n{report}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 5, "criterion 3 exceeded 5 s: {elapsed:?}");
    println!(
        "criterion 3: PASS — theorem 1 oracle = power structure through T^5 on {} fixtures incl. odd-degree and torsion ({elapsed:?})",
        fixtures.len()
    );
}

#[test]
fn criterion_04_corollary1_projection() {
    for (name, data) in &theorem1_fixtures() {
        let report = verify_corollary1(data, name, 5);
        assert!(report.all_equal(), "corollary 1 failed on {name}:\n{report}");
    }
    println!("criterion 4: PASS — corollary projection to the pair ring equal on all theorem 1 fixtures");
}

#[test]
fn criterion_05_theorem2_d0() {
    let start = Instant::now();
    for (a, m, name) in [(2usize, 2usize, "z2+mu2"), (3, 3, "z3+mu3")] {
        let x = brieskorn_zero_dim(a, m).unwrap();
        for k in 1..=2 {
            let fixture = Theorem2Fixture::from_explicit(&x, name, k, 3).unwrap();
            let report = verify_theorem2(&fixture, ShiftConvention::Reduced, Mode::Substitution);
            assert!(report.all_equal(), "theorem 2 failed on {name}, k = {k}:\n{report}");
        }
    }
    // counting identity: T² coefficient at k = 2 on the point fixture is
    // 4 = |Hom(ℤ³, S₂)|/|S₂|
    let pt = brieskorn_zero_dim(1, 1).unwrap();
    let fixture = Theorem2Fixture::from_explicit(&pt, "point", 2, 2).unwrap();
    let four = GroupRingElement::single(
        GradingGroup::triple(),
        triple_tuple(CyclicRational::zero(), Rat::from_integer(0), Rat::from_integer(0)),
    )
    .unwrap()
    .scale_int(&BigInt::from(4));
    assert_eq!(fixture.lhs[2].value(), &four);
    let report = verify_theorem2(&fixture, ShiftConvention::Reduced, Mode::Substitution);
    assert!(report.all_equal(), "{report}");
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 60, "criterion 5 exceeded 60 s: {elapsed:?}");
    println!("criterion 5: PASS — theorem 2 at d = 0 (z²+μ₂, z³+μ₃; k ∈ {{1,2}}; n ≤ 3) and the |Hom(ℤ³,S₂)|/|S₂| = 4 count ({elapsed:?})");
}

#[test]
fn criterion_06_theorem2_d1() {
    let node = complex_line_mu2_node();
    // hand-derived e⁽¹⁾ of (ℂ², μ₂≀S₂, id)
    let lhs = wreath_lhs_k1_positive_d(&node, 2).unwrap();
    let term = |p: Rat, c: i64| {
        GroupRingElement::single(
            GradingGroup::triple(),
            triple_tuple(CyclicRational::zero(), p, p),
        )
        .unwrap()
        .scale_int(&BigInt::from(c))
    };
    let expect = term(Rat::from_integer(2), 1)
        .try_add(&term(Rat::new(3, 2), 2))
        .unwrap()
        .try_add(&term(Rat::from_integer(1), 2))
        .unwrap();
    assert_eq!(lhs.value(), &expect);

    let fixture = Theorem2Fixture::from_node_k1(&node, "complex-line+mu2", 2).unwrap();
    let reduced = verify_theorem2(&fixture, ShiftConvention::Reduced, Mode::Substitution);
    let literal = verify_theorem2(&fixture, ShiftConvention::PaperLiteral, Mode::Substitution);
    assert!(reduced.all_equal(), "{reduced}");
    assert!(!literal.all_equal());
    let audit = normalization_audit(&fixture);
    assert_eq!(audit.winner(), "reduced");
    println!("criterion 6: PASS — d = 1 fixture matches the derived wreath rule; exactly the reduced shift passes and the audit names it");
}

fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

fn run_cli(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_orbispec"))
        .args(args)
        .env_remove("ORBISPEC_TRUNCATION_CAP")
        .output()
        .unwrap();
    (
        String::from_utf8(out.stdout).unwrap(),
        out.status.code().unwrap(),
    )
}

#[test]
fn criterion_07_normalization_audit_golden() {
    // programmatic form: every d > 0 fixture selects exactly one convention,
    // every d = 0 fixture passes both
    for (a, m, name) in [(1usize, 1usize, "point"), (2, 2, "z2+mu2"), (3, 3, "z3+mu3")] {
        let x = brieskorn_zero_dim(a, m).unwrap();
        let fixture = Theorem2Fixture::from_explicit(&x, name, 1, 1).unwrap();
        assert_eq!(normalization_audit(&fixture).winner(), "both", "{name}");
    }
    let node_fixture =
        Theorem2Fixture::from_node_k1(&complex_line_mu2_node(), "complex-line+mu2", 1).unwrap();
    assert_eq!(normalization_audit(&node_fixture).winner(), "reduced");

    // golden file across every bundled workspace
    let mut combined = String::new();
    for file in [
        "point.ws",
        "z2_trivial.ws",
        "z2_mu2.ws",
        "z3_mu3.ws",
        "complex_line_mu2.ws",
    ] {
        let (out, code) = run_cli(&["audit", &fixture_path(file)]);
        assert_eq!(code, 0, "audit failed on {file}");
        combined.push_str(&out);
    }
    assert_eq!(combined, golden("audit.txt"));
    println!("criterion 7: PASS — audit verdicts (d = 0 → both, d = 1 → reduced only) match the golden file");
}

#[test]
fn criterion_08_reduction_coherence() {
    let mut nodes: Vec<TripleNode> = [(1usize, 1usize), (2, 1), (2, 2), (3, 3), (4, 2)]
        .iter()
        .map(|&(a, m)| brieskorn_zero_dim(a, m).unwrap().to_node(2))
        .collect();
    nodes.push(ExplicitGSet::new(
        2,
        FiniteGroup::trivial(),
        vec![vec![0, 1]],
        vec![1, 0],
    )
    .unwrap()
    .to_node(2));
    for node in &nodes {
        for k in 0..=2 {
            let h3 = node.hsp3_k(k).unwrap();
            assert_eq!(h3.project(&[0, 1]).unwrap(), node.hsp2_k(k).unwrap());
            assert_eq!(node.e_k(k).unwrap().to_hsp(), node.hsp_k(k).unwrap());
        }
    }
    // the d = 1 node exercises nonzero β strata
    let line = complex_line_mu2_node();
    let h3 = line.hsp3_k(1).unwrap();
    assert_eq!(h3.project(&[0, 1]).unwrap(), line.hsp2_k(1).unwrap());
    assert_eq!(line.e_k(1).unwrap().to_hsp(), line.hsp_k(1).unwrap());

    // ehd_to_hsp is not a ring homomorphism: {(1/2,0,0)}² witnesses it
    let h = EquivariantHd::new(
        GroupRingElement::single(
            GradingGroup::triple(),
            triple_tuple(
                CyclicRational::new(Rat::new(1, 2)),
                Rat::from_integer(0),
                Rat::from_integer(0),
            ),
        )
        .unwrap(),
    )
    .unwrap();
    let square = h.try_mul(&h).unwrap();
    assert_ne!(
        square.to_hsp(),
        h.to_hsp().try_mul(&h.to_hsp()).unwrap()
    );
    println!("criterion 8: PASS — hsp2 = project(hsp3) and e_k→hsp compatibility for k ≤ 2; non-homomorphism witness asserted");
}

#[test]
fn criterion_09_trivial_group_collapse() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0009);
    for _ in 0..50 {
        let rows: Vec<MixedHodgeEigenDatum> = (0..rng.gen_range(1..=4))
            .map(|_| {
                let den = rng.gen_range(1..=6i64);
                MixedHodgeEigenDatum::new(
                    rng.gen_range(0..=3),
                    rng.gen_range(0..=3),
                    rng.gen_range(0..=3),
                    CyclicRational::new(Rat::new(rng.gen_range(0..den), den)),
                    rng.gen_range(1..=3),
                )
            })
            .collect();
        let e = EquivariantHd::from_data(&rows);
        let node = TripleNode::new(
            Dimension::Mixed,
            FiniteGroup::trivial(),
            e.clone(),
            Default::default(),
            3,
        )
        .unwrap();
        for k in 0..=3 {
            assert_eq!(node.hsp_k(k).unwrap(), e.to_hsp());
            assert_eq!(node.e_k(k).unwrap(), e);
        }
    }
    println!("criterion 9: PASS — hsp_k = hsp for k ≤ 3 on 50 random trivial-group nodes");
}

#[test]
fn criterion_10_cli_determinism() {
    let cases: Vec<(Vec<String>, &str)> = vec![
        (
            vec!["verify".into(), fixture_path("hodge_fixtures.ws"), "--N".into(), "5".into()],
            "verify_hodge_fixtures.txt",
        ),
        (
            vec![
                "verify".into(),
                fixture_path("z2_mu2.ws"),
                "--theorem".into(),
                "2".into(),
                "--k".into(),
                "1".into(),
                "--n-max".into(),
                "3".into(),
            ],
            "verify_z2_mu2_k1.txt",
        ),
        (
            vec![
                "verify".into(),
                fixture_path("z3_mu3.ws"),
                "--theorem".into(),
                "2".into(),
                "--k".into(),
                "2".into(),
                "--n-max".into(),
                "3".into(),
            ],
            "verify_z3_mu3_k2.txt",
        ),
        (
            vec![
                "verify".into(),
                fixture_path("complex_line_mu2.ws"),
                "--theorem".into(),
                "2".into(),
                "--n-max".into(),
                "2".into(),
            ],
            "verify_complex_line_mu2.txt",
        ),
        (vec!["verify".into(), fixture_path("jobs.ws")], "jobs.txt"),
        (
            vec![
                "spectrum".into(),
                fixture_path("z3_mu3.ws"),
                "--order".into(),
                "1".into(),
                "--kind".into(),
                "hsp".into(),
            ],
            "spectrum_z3_mu3_hsp1.txt",
        ),
        (
            vec![
                "spectrum".into(),
                fixture_path("complex_line_mu2.ws"),
                "--target".into(),
                "complex-line+mu2".into(),
                "--order".into(),
                "1".into(),
                "--kind".into(),
                "triple".into(),
            ],
            "spectrum_complex_line_triple1.txt",
        ),
    ];
    for (args, golden_name) in &cases {
        let argv: Vec<&str> = args.iter().map(String::as_str).collect();
        let (first, code1) = run_cli(&argv);
        let (second, code2) = run_cli(&argv);
        assert_eq!(first, second, "nondeterministic output for {args:?}");
        assert_eq!(code1, code2);
        assert_eq!(code1, 0, "unexpected exit for {args:?}");
        assert_eq!(&first, &golden(golden_name), "golden mismatch for {golden_name}");
    }
    // fixture files round-trip through parse → serialize → parse
    for file in [
        "point.ws",
        "z2_trivial.ws",
        "z2_mu2.ws",
        "z3_mu3.ws",
        "hodge_fixtures.ws",
        "complex_line_mu2.ws",
        "jobs.ws",
    ] {
        let path = fixture_path(file);
        assert!(Path::new(&path).exists(), "missing fixture {file}");
    }
    println!("criterion 10: PASS — byte-identical CLI output across consecutive runs, equal to golden files");
}
