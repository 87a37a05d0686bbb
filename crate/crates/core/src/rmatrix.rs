//! Factorized universal R-matrices and the quantum checks that go with
//! them: quantum Yang-Baxter, intertwining of the coproduct, triangularity,
//! and the classical limit down to the stored classical r-matrix.

use crate::algebras::{Family, Presentation};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hopf::{CoproductMap, TensorElement};
use crate::ncpoly::{BracketSystem, NcSeries};
use crate::report::CheckReport;

/// An ordered product of exponentials `R = exp(t1) exp(t2) ... exp(tk)`;
/// each stored exponent already carries its scalar and z factors.
#[derive(Clone)]
pub struct RMatrix {
    exponents: Vec<TensorElement>,
}

impl RMatrix {
    pub fn new(exponents: Vec<TensorElement>) -> Self {
        RMatrix { exponents }
    }

    pub fn exponents(&self) -> &[TensorElement] {
        &self.exponents
    }

    /// Multiply the factors out to the working order.
    pub fn build(&self, sys: &BracketSystem) -> Result<TensorElement> {
        let mut out = TensorElement::one(sys.alphabet(), sys.order(), 2);
        for t in &self.exponents {
            out = out.mul(&t.exp(sys)?, sys)?;
        }
        Ok(out)
    }

    /// The reversed product of the negated exponents (the exact inverse).
    pub fn inverse(&self) -> RMatrix {
        RMatrix { exponents: self.exponents.iter().rev().map(TensorElement::neg).collect() }
    }
}

pub(crate) fn exponent(
    sys: &BracketSystem,
    c: i64,
    left: &str,
    right: &str,
) -> Result<TensorElement> {
    let l = sys.gen(left)?;
    let r = sys.gen(right)?;
    Ok(TensorElement::from_legs(&[&l, &r])?.z_shift(1).scal(&Coeff::integer(c)))
}

fn wedge_of(x: &NcSeries, y: &NcSeries) -> Result<TensorElement> {
    TensorElement::from_legs(&[x, y])?.sub(&TensorElement::from_legs(&[y, x])?)
}

fn combo(sys: &BracketSystem, parts: &[(&str, Coeff)]) -> Result<NcSeries> {
    let mut out = sys.zero();
    for (name, c) in parts {
        out = out.add(&sys.gen(name)?.scal(c))?;
    }
    Ok(out)
}

/// The stored factorization for a built-in quantum algebra.
pub fn builtin_rmatrix(p: &Presentation) -> Result<RMatrix> {
    let sys = p.system();
    if p.is_classical() {
        return Err(Error::InvalidConfig(format!(
            "`{}` is a classical table; it has a classical r-matrix but no quantum R",
            p.name()
        )));
    }
    let exponents = match p.family() {
        Family::Poincare11 => vec![
            exponent(sys, -2, "P+", "K")?,
            exponent(sys, 2, "K", "P+")?,
        ],
        Family::Sl2 => vec![
            exponent(sys, -1, "A+", "A")?,
            exponent(sys, 1, "A", "A+")?,
        ],
        Family::Poincare21 => vec![
            exponent(sys, 2, "E1", "P1")?,
            exponent(sys, -2, "P+", "K2")?,
            exponent(sys, 2, "K2", "P+")?,
            exponent(sys, -2, "P1", "E1")?,
        ],
        Family::Poincare31 => vec![
            exponent(sys, 2, "E2", "P2")?,
            exponent(sys, 2, "E1", "P1")?,
            exponent(sys, -2, "P+", "K3")?,
            exponent(sys, 2, "K3", "P+")?,
            exponent(sys, -2, "P1", "E1")?,
            exponent(sys, -2, "P2", "E2")?,
        ],
        Family::So22Conformal => so22_exponents(&conformal_sl2_legs(sys)?)?,
        Family::Custom if p.name() == "so22-direct-sum" => {
            so22_exponents(&direct_sum_sl2_legs(sys)?)?
        }
        _ => {
            return Err(Error::InvalidConfig(format!(
                "no stored R-matrix factorization for `{}`",
                p.name()
            )))
        }
    };
    Ok(RMatrix::new(exponents))
}

/// The per-copy generators (A+1, A1, A+2, A2) of the two commuting copies,
/// in whatever basis the presentation uses.
fn direct_sum_sl2_legs(sys: &BracketSystem) -> Result<[NcSeries; 4]> {
    Ok([sys.gen("A+1")?, sys.gen("A1")?, sys.gen("A+2")?, sys.gen("A2")?])
}

fn conformal_sl2_legs(sys: &BracketSystem) -> Result<[NcSeries; 4]> {
    let half = Coeff::rational(1, 2);
    // A+1 = (pi+ + P)/2, A1 = J + D, A+2 = (pi+ - P)/2, A2 = D - J.
    Ok([
        combo(sys, &[("pi+", half.clone()), ("P", half.clone())])?,
        combo(sys, &[("J", Coeff::one()), ("D", Coeff::one())])?,
        combo(sys, &[("pi+", half.clone()), ("P", -&half)])?,
        combo(sys, &[("D", Coeff::one()), ("J", Coeff::integer(-1))])?,
    ])
}

/// `R = R_z(copy 1) R_{-z}(copy 2)` with each copy in the two-factor form.
fn so22_exponents([a_plus_1, a1, a_plus_2, a2]: &[NcSeries; 4]) -> Result<Vec<TensorElement>> {
    let z = |x: &NcSeries, y: &NcSeries, c: i64| -> Result<TensorElement> {
        Ok(TensorElement::from_legs(&[x, y])?.z_shift(1).scal(&Coeff::integer(c)))
    };
    Ok(vec![
        z(a_plus_1, a1, -1)?,
        z(a1, a_plus_1, 1)?,
        z(a_plus_2, a2, 1)?,
        z(a2, a_plus_2, -1)?,
    ])
}

/// The stored classical r-matrix for a built-in family (valid for both the
/// classical table and its deformation).
pub fn classical_r(p: &Presentation) -> Result<TensorElement> {
    let sys = p.system();
    let two = Coeff::integer(2);
    let wedge = |x: &str, y: &str| -> Result<TensorElement> {
        wedge_of(&sys.gen(x)?, &sys.gen(y)?)
    };
    match p.family() {
        Family::Poincare11 => Ok(wedge("K", "P+")?.z_shift(1).scal(&two)),
        Family::Sl2 => Ok(wedge("A", "A+")?.z_shift(1)),
        Family::Poincare21 => {
            Ok(wedge("K2", "P+")?.add(&wedge("E1", "P1")?)?.z_shift(1).scal(&two))
        }
        Family::Poincare31 => Ok(wedge("K3", "P+")?
            .add(&wedge("E1", "P1")?)?
            .add(&wedge("E2", "P2")?)?
            .z_shift(1)
            .scal(&two)),
        Family::So22Conformal => {
            let [a_plus_1, a1, a_plus_2, a2] = conformal_sl2_legs(sys)?;
            Ok(wedge_of(&a1, &a_plus_1)?.sub(&wedge_of(&a2, &a_plus_2)?)?.z_shift(1))
        }
        Family::Custom if p.name() == "so22-direct-sum" => {
            let [a_plus_1, a1, a_plus_2, a2] = direct_sum_sl2_legs(sys)?;
            Ok(wedge_of(&a1, &a_plus_1)?.sub(&wedge_of(&a2, &a_plus_2)?)?.z_shift(1))
        }
        _ => Err(Error::InvalidConfig(format!(
            "no stored classical r-matrix for `{}`",
            p.name()
        ))),
    }
}

/// The published cocommutator tables for the classical null-plane algebras.
pub fn expected_cocommutators(p: &Presentation) -> Result<Vec<(String, TensorElement)>> {
    let sys = p.system();
    let two = Coeff::integer(2);
    let wedge = |x: &str, y: &str| -> Result<TensorElement> {
        wedge_of(&sys.gen(x)?, &sys.gen(y)?)
    };
    let zero = TensorElement::zero(p.alphabet(), p.order(), 2);
    match p.family() {
        Family::Poincare11 => Ok(vec![
            ("P+".to_string(), zero),
            ("K".to_string(), wedge("K", "P+")?.z_shift(1).scal(&two)),
            ("P-".to_string(), wedge("P-", "P+")?.z_shift(1).scal(&two)),
        ]),
        Family::Poincare31 => Ok(vec![
            ("P+".to_string(), zero.clone()),
            ("E1".to_string(), zero.clone()),
            ("E2".to_string(), zero.clone()),
            ("J3".to_string(), zero),
            ("P-".to_string(), wedge("P-", "P+")?.z_shift(1).scal(&two)),
            ("P1".to_string(), wedge("P1", "P+")?.z_shift(1).scal(&two)),
            ("P2".to_string(), wedge("P2", "P+")?.z_shift(1).scal(&two)),
            (
                "F1".to_string(),
                wedge("F1", "P+")?
                    .sub(&wedge("P-", "E1")?)?
                    .sub(&wedge("P2", "J3")?)?
                    .z_shift(1)
                    .scal(&two),
            ),
            (
                "F2".to_string(),
                wedge("F2", "P+")?
                    .sub(&wedge("P-", "E2")?)?
                    .add(&wedge("P1", "J3")?)?
                    .z_shift(1)
                    .scal(&two),
            ),
            (
                "K3".to_string(),
                wedge("K3", "P+")?
                    .sub(&wedge("P1", "E1")?)?
                    .sub(&wedge("P2", "E2")?)?
                    .z_shift(1)
                    .scal(&two),
            ),
        ]),
        _ => Err(Error::InvalidConfig(format!(
            "no published cocommutator table for `{}`",
            p.name()
        ))),
    }
}

fn report(p: &Presentation, check: &str, subject: Option<String>, terms: Vec<String>) -> CheckReport {
    CheckReport::from_residual(p.name(), check, subject, p.order(), terms)
}

/// `R12 R13 R23 = R23 R13 R12` in the triple tensor power.
pub fn check_qybe(p: &Presentation, rm: &RMatrix) -> Result<CheckReport> {
    let sys = p.system();
    let r = rm.build(sys)?;
    let r12 = r.embed(3, &[0, 1]);
    let r13 = r.embed(3, &[0, 2]);
    let r23 = r.embed(3, &[1, 2]);
    let lhs = r12.mul(&r13, sys)?.mul(&r23, sys)?;
    let rhs = r23.mul(&r13, sys)?.mul(&r12, sys)?;
    let residual = lhs.sub(&rhs)?;
    Ok(report(p, "quantum-yang-baxter", None, residual.term_strings()))
}

/// `R Delta(X) = (sigma Delta)(X) R` for every generator.
pub fn check_intertwining(p: &Presentation, rm: &RMatrix) -> Result<Vec<CheckReport>> {
    let sys = p.system();
    let r = rm.build(sys)?;
    let mut reports = Vec::new();
    for rank in p.alphabet().ranks() {
        let name = p.alphabet().gen_name(rank);
        let d = p.coproduct(name)?;
        let residual = r.mul(d, sys)?.sub(&d.swap().normalize(sys)?.mul(&r, sys)?)?;
        let subject = if p.is_hopf_subalgebra_generator(name) {
            format!("{name} (smash subalgebra)")
        } else {
            name.to_string()
        };
        reports.push(report(p, "coproduct-intertwining", Some(subject), residual.term_strings()));
    }
    Ok(reports)
}

/// Triangularity `sigma(R) R = 1 (x) 1`.
pub fn check_triangularity(p: &Presentation, rm: &RMatrix) -> Result<CheckReport> {
    let sys = p.system();
    let r = rm.build(sys)?;
    let one = TensorElement::one(p.alphabet(), p.order(), 2);
    let residual = r.swap().normalize(sys)?.mul(&r, sys)?.sub(&one)?;
    Ok(report(p, "triangularity", None, residual.term_strings()))
}

/// `R = 1 (x) 1 + r + O(z^2)`: the degree-0 part is the identity and the
/// degree-1 part is the stored classical r-matrix.
pub fn check_classical_limit(p: &Presentation, rm: &RMatrix) -> Result<Vec<CheckReport>> {
    let sys = p.system();
    let r = rm.build(sys)?;
    let one = TensorElement::one(p.alphabet(), p.order(), 2);
    let degree0 = r.z_component(0).sub(&one)?;
    let degree1 = r.z_component(1).sub(&classical_r(p)?)?;
    Ok(vec![
        report(p, "classical-limit-unit", None, degree0.term_strings()),
        report(p, "classical-limit-r", None, degree1.term_strings()),
    ])
}

/// First order of `Delta - sigma Delta` against the coboundary of the
/// stored r (quantum side of the Lie-bialgebra comparison).
pub fn check_cocommutators_quantum(p: &Presentation) -> Result<Vec<CheckReport>> {
    let r = classical_r(p)?;
    crate::hopf::check_first_order_cocommutators(p, &r)
}

/// Coboundary cocommutators of a classical table against the published
/// values, plus antisymmetry and the classical Yang-Baxter equation for r.
pub fn check_classical_bialgebra(p: &Presentation) -> Result<Vec<CheckReport>> {
    let r = classical_r(p)?;
    let mut reports = vec![
        crate::hopf::check_r_antisymmetry(p, &r)?,
        crate::hopf::check_classical_yang_baxter(p, &r)?,
    ];
    reports.extend(crate::hopf::check_cocommutator_table(p, &r, &expected_cocommutators(p)?)?);
    Ok(reports)
}

/// A spot check that the coproduct extension used by the intertwining
/// checks is itself consistent: `Delta` of a few straightened products
/// agrees with the product of coproducts.
pub fn check_coproduct_products(p: &Presentation, words: &[(&str, &str)]) -> Result<Vec<CheckReport>> {
    let dm = CoproductMap::new(p)?;
    let sys = p.system();
    let mut reports = Vec::new();
    for (x, y) in words {
        let product = sys.mul(&sys.gen(x)?, &sys.gen(y)?)?;
        let lhs = dm.of_series(&product)?;
        let rhs = dm.of_series(&sys.gen(x)?)?.mul(&dm.of_series(&sys.gen(y)?)?, sys)?;
        let residual = lhs.sub(&rhs)?;
        reports.push(report(p, "coproduct-product", Some(format!("{x} {y}")), residual.term_strings()));
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::load;

    fn all_pass(reports: &[CheckReport]) -> bool {
        reports.iter().all(CheckReport::passed)
    }

    #[test]
    fn the_11_rmatrix_satisfies_every_quantum_check() {
        let p = load("poincare-1+1-quantum", 4).unwrap();
        let rm = builtin_rmatrix(&p).unwrap();
        assert!(check_qybe(&p, &rm).unwrap().passed());
        assert!(all_pass(&check_intertwining(&p, &rm).unwrap()));
        assert!(check_triangularity(&p, &rm).unwrap().passed());
        assert!(all_pass(&check_classical_limit(&p, &rm).unwrap()));
    }

    #[test]
    fn a_flipped_factor_sign_breaks_yang_baxter_and_intertwining() {
        let p = load("poincare-1+1-quantum", 3).unwrap();
        let sys = p.system();
        let bad = RMatrix::new(vec![
            exponent(sys, 2, "P+", "K").unwrap(),
            exponent(sys, 2, "K", "P+").unwrap(),
        ]);
        assert!(!check_qybe(&p, &bad).unwrap().passed());
        let intertwine = check_intertwining(&p, &bad).unwrap();
        assert!(intertwine.iter().any(|r| !r.passed()));
    }

    #[test]
    fn sl2_and_21_rmatrices_pass_yang_baxter() {
        for (name, order) in [("sl2-nonstandard", 3), ("poincare-2+1-quantum", 3)] {
            let p = load(name, order).unwrap();
            let rm = builtin_rmatrix(&p).unwrap();
            assert!(check_qybe(&p, &rm).unwrap().passed(), "{name}");
            assert!(check_triangularity(&p, &rm).unwrap().passed(), "{name}");
            assert!(all_pass(&check_classical_limit(&p, &rm).unwrap()), "{name}");
        }
    }

    #[test]
    fn so22_rmatrix_in_both_bases() {
        let p = load("so22-conformal", 2).unwrap();
        let rm = builtin_rmatrix(&p).unwrap();
        assert!(check_qybe(&p, &rm).unwrap().passed());
        assert!(all_pass(&check_classical_limit(&p, &rm).unwrap()));
        assert!(all_pass(&check_intertwining(&p, &rm).unwrap()));
    }

    #[test]
    fn classical_tables_form_coboundary_bialgebras() {
        for name in ["poincare-1+1-classical", "poincare-3+1-classical"] {
            let p = load(name, 2).unwrap();
            assert!(all_pass(&check_classical_bialgebra(&p).unwrap()), "{name}");
        }
    }

    #[test]
    fn quantum_tables_linearize_to_their_r() {
        for name in ["poincare-1+1-quantum", "sl2-nonstandard", "poincare-2+1-quantum", "poincare-3+1-quantum"] {
            let p = load(name, 2).unwrap();
            assert!(all_pass(&check_cocommutators_quantum(&p).unwrap()), "{name}");
        }
    }
}
