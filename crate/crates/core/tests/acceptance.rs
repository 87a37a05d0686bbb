//! End-to-end acceptance gate.  One test per top-level guarantee; each
//! prints a single pass/fail line (run with `--nocapture` to see them all).
//!
//! Every residual is required to be exactly zero — the arithmetic is exact,
//! so there are no tolerances anywhere.

use nullplane_core::algebras::{load, Family, Presentation};
use nullplane_core::contraction::{builtin_contraction, check_contraction};
use nullplane_core::duality::check_duality;
use nullplane_core::hopf::{
    check_antipode, check_classical_yang_baxter, check_coassociativity,
    check_coproduct_homomorphism, check_counit, check_r_antisymmetry, TensorElement,
};
use nullplane_core::matrixrep::{
    builtin_representation, check_matrix_intertwining, check_matrix_qybe, check_matrix_suite,
};
use nullplane_core::ncpoly::BracketSystem;
use nullplane_core::report::CheckReport;
use nullplane_core::rmatrix::{
    builtin_rmatrix, check_classical_bialgebra, check_classical_limit,
    check_cocommutators_quantum, check_intertwining, check_qybe, check_triangularity, classical_r,
    RMatrix,
};
use nullplane_core::{Coeff, Error};

const QUANTUM: [&str; 5] = [
    "poincare-1+1-quantum",
    "sl2-nonstandard",
    "so22-conformal",
    "poincare-2+1-quantum",
    "poincare-3+1-quantum",
];

/// Print the single gate line and assert, carrying the first failing report
/// into the panic message.
fn conclude(label: &str, failures: &[CheckReport]) {
    let ok = failures.is_empty();
    println!("[{}] {label}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{label}: first failing check: {}", failures[0].line());
}

fn gating_failures(reports: &[CheckReport]) -> Vec<CheckReport> {
    reports.iter().filter(|r| !r.informational && !r.passed()).cloned().collect()
}

#[test]
fn hopf_axioms_hold_for_every_deformation() {
    let mut failures = Vec::new();
    for order in [2, 3, 4] {
        for name in QUANTUM {
            let p = load(name, order).unwrap();
            let mut reports = check_coproduct_homomorphism(&p).unwrap();
            reports.extend(check_coassociativity(&p).unwrap());
            reports.extend(check_counit(&p).unwrap());
            reports.extend(check_antipode(&p).unwrap());
            failures.extend(gating_failures(&reports));
        }
    }
    conclude(
        "Hopf axioms (coproduct homomorphism, coassociativity, counit, antipode) \
         for all five deformations at orders 2..4",
        &failures,
    );
}

#[test]
fn classical_bialgebra_structures_are_coboundary() {
    let mut failures = Vec::new();
    // Antisymmetry + classical Yang-Baxter + the full cocommutator tables
    // on the classical presentations that store them.
    for name in ["poincare-1+1-classical", "poincare-3+1-classical"] {
        let p = load(name, 3).unwrap();
        failures.extend(gating_failures(&check_classical_bialgebra(&p).unwrap()));
    }
    // The nonstandard sl(2) r-matrix, checked on the undeformed table.
    let sl2 = load("sl2-nonstandard", 3).unwrap();
    let r = classical_r(&sl2).unwrap();
    let limit = sl2.classical_limit().unwrap();
    failures.extend(gating_failures(&[
        check_r_antisymmetry(&limit, &r).unwrap(),
        check_classical_yang_baxter(&limit, &r).unwrap(),
    ]));
    // First-order skew part of every quantum coproduct equals the
    // coboundary cocommutator.
    for name in QUANTUM {
        let p = load(name, 3).unwrap();
        failures.extend(gating_failures(&check_cocommutators_quantum(&p).unwrap()));
    }
    conclude(
        "classical r-matrices are antisymmetric coboundary solutions of the \
         classical Yang-Baxter equation and linearize the quantum coproducts",
        &failures,
    );
}

#[test]
fn symbolic_rmatrix_identities_hold() {
    let mut failures = Vec::new();
    for (name, orders) in [
        ("poincare-1+1-quantum", &[2u32, 3, 4][..]),
        ("poincare-2+1-quantum", &[2, 3, 4]),
        ("poincare-3+1-quantum", &[2, 3, 4]),
        ("sl2-nonstandard", &[2, 3]),
        ("so22-conformal", &[2, 3]),
    ] {
        for &order in orders {
            let p = load(name, order).unwrap();
            let rm = builtin_rmatrix(&p).unwrap();
            let mut reports = vec![check_qybe(&p, &rm).unwrap()];
            reports.extend(check_intertwining(&p, &rm).unwrap());
            reports.push(check_triangularity(&p, &rm).unwrap());
            reports.extend(check_classical_limit(&p, &rm).unwrap());
            // Intertwining must have covered every generator.
            let covered = reports.iter().filter(|r| r.check == "intertwining").count();
            assert_eq!(covered, p.generator_names().len(), "{name}: intertwining coverage");
            failures.extend(gating_failures(&reports));
        }
    }
    conclude(
        "factorized R-matrices satisfy the quantum Yang-Baxter equation, \
         intertwine every generator, are triangular, and match the classical \
         r at first order (orders 2..4)",
        &failures,
    );
}

#[test]
fn matrix_representations_certify_the_identities() {
    let mut failures = Vec::new();
    let mut dims = Vec::new();
    for name in [
        "poincare-1+1-classical",
        "poincare-1+1-quantum",
        "poincare-2+1-quantum",
        "poincare-3+1-classical",
        "poincare-3+1-quantum",
    ] {
        let p = load(name, 3).unwrap();
        failures.extend(gating_failures(&check_matrix_suite(&p).unwrap()));
        if !p.is_classical() {
            dims.push(builtin_representation(&p).unwrap().dim());
        }
    }
    // The Yang-Baxter identity above ran on the full tensor cubes.
    assert_eq!(
        dims.iter().map(|d| d * d * d).collect::<Vec<_>>(),
        vec![27, 64, 125],
        "tensor-cube dimensions"
    );
    conclude(
        "exact polynomial matrix representations certify the bracket tables, \
         the Yang-Baxter identity on the 27/64/125-dim tensor cubes, \
         intertwining, triangularity, and the classical limit",
        &failures,
    );
}

#[test]
fn contraction_limits_reproduce_the_targets() {
    let mut failures = Vec::new();
    for (name, order) in [("sl2-to-poincare-1+1", 4), ("so22-to-poincare-2+1", 3)] {
        let map = builtin_contraction(name, order).unwrap();
        failures.extend(gating_failures(&check_contraction(&map).unwrap()));
    }
    // Forgetting to rescale the deformation parameter must be caught, and
    // the error must name the offending bracket.
    let bad = builtin_contraction("sl2-to-poincare-1+1-unrescaled", 3).unwrap();
    match check_contraction(&bad) {
        Err(Error::DivergentContraction { entries }) => {
            assert!(
                entries.iter().any(|e| e.contains("[K, P+]")),
                "divergence must name [K, P+], got: {entries:?}"
            );
        }
        other => panic!("unrescaled contraction must diverge, got {other:?}"),
    }
    conclude(
        "contraction limits reproduce the lower-dimensional tables, coproducts \
         and R-matrices exactly, and an un-rescaled map is rejected as divergent \
         naming [K, P+]",
        &failures,
    );
}

#[test]
fn dual_pairing_reproduces_the_rmatrix() {
    let mut failures = Vec::new();
    for order in 1..=4 {
        failures.extend(gating_failures(&check_duality(order).unwrap()));
    }
    conclude(
        "the dual-coordinates pairing gives an algebra morphism / coalgebra \
         antimorphism, the canonical element satisfies both coproduct laws, \
         and it projects onto the stored R-matrix (orders 1..4)",
        &failures,
    );
}

/// A copy of the 1+1 presentation whose deformed coproduct leg on the boost
/// has been dropped (replaced by the primitive coproduct).
fn dropped_leg_presentation(order: u32) -> Presentation {
    let base = load("poincare-1+1-quantum", order).unwrap();
    let entries: Vec<_> = base
        .system()
        .bracket_entries()
        .map(|((hi, lo), v)| (hi, lo, v.clone()))
        .collect();
    let system = BracketSystem::new(base.alphabet().clone(), order, entries).unwrap();
    let coproducts = vec![("P-".to_string(), base.coproduct("P-").unwrap().clone())];
    Presentation::new(
        "poincare-1+1-dropped-leg",
        Family::Poincare11,
        false,
        system,
        coproducts,
        None,
        Vec::new(),
        Vec::new(),
    )
    .unwrap()
}

#[test]
fn negative_controls_fail_as_expected() {
    let mut ok = true;

    // (a) Sign-flipped exponent in the 1+1 factorization: the Yang-Baxter
    // equation and the intertwining property must both break, symbolically
    // and in the matrix representation.
    let p = load("poincare-1+1-quantum", 3).unwrap();
    let sys = p.system();
    let flipped = {
        let pp = sys.gen("P+").unwrap();
        let k = sys.gen("K").unwrap();
        // +2z P+ (x) K instead of -2z P+ (x) K.
        let first = TensorElement::from_legs(&[&pp, &k]).unwrap().z_shift(1).scal(&Coeff::integer(2));
        let second = TensorElement::from_legs(&[&k, &pp]).unwrap().z_shift(1).scal(&Coeff::integer(2));
        RMatrix::new(vec![first, second])
    };
    ok &= !check_qybe(&p, &flipped).unwrap().passed();
    ok &= check_intertwining(&p, &flipped).unwrap().iter().any(|r| !r.passed());
    let rep = builtin_representation(&p).unwrap();
    ok &= !check_matrix_qybe(&p, &rep, &flipped).unwrap().passed();
    ok &= check_matrix_intertwining(&p, &rep, &flipped).unwrap().iter().any(|r| !r.passed());

    // (b) Dropping the exponential leg from the boost coproduct: the
    // coproduct stops being an algebra homomorphism (with a first-order
    // residual) and the true R-matrix no longer intertwines it.
    let broken = dropped_leg_presentation(3);
    let hom = check_coproduct_homomorphism(&broken).unwrap();
    let bad = hom.iter().find(|r| !r.passed());
    ok &= bad.is_some_and(|r| {
        r.residual_term_count > 0
            && r.sample_residual_terms.iter().any(|t| t.contains("(z^ 1"))
    });
    let rm = builtin_rmatrix(&broken).unwrap();
    let rep = builtin_representation(&broken).unwrap();
    ok &= check_intertwining(&broken, &rm).unwrap().iter().any(|r| !r.passed());
    ok &= check_matrix_intertwining(&broken, &rep, &rm).unwrap().iter().any(|r| !r.passed());

    // (c) A wrong classical r-matrix: K wedge P- does not solve the
    // classical Yang-Baxter equation.
    let classical = load("poincare-1+1-classical", 3).unwrap();
    let csys = classical.system();
    let k = csys.gen("K").unwrap();
    let pm = csys.gen("P-").unwrap();
    let wrong_r = TensorElement::from_legs(&[&k, &pm])
        .unwrap()
        .sub(&TensorElement::from_legs(&[&pm, &k]).unwrap())
        .unwrap()
        .z_shift(1)
        .scal(&Coeff::integer(2));
    ok &= !check_classical_yang_baxter(&classical, &wrong_r).unwrap().passed();

    println!("[{}] negative controls (flipped R sign, dropped coproduct leg, wrong r) all fail", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "a deliberately broken structure slipped through a check");
}
