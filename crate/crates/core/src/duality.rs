//! Duality between the 1+1 deformation and the quantum group of its dual
//! coordinates.
//!
//! The two Hopf algebras are paired through a canonical element
//! `T = exp(P+ (x) a+) exp(K (x) th)` living in the tensor product of the
//! enveloping side and the coordinate side.  The pairing map `phi` sends
//! `th -> 2z P+` and `a+ -> -2z K`; it is an algebra morphism and a
//! coalgebra antimorphism, and pushing the second leg of `T` through `phi`
//! reproduces the universal R-matrix.

use crate::algebras::{direct_sum, load, Presentation};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hopf::{CoproductMap, TensorElement};
use crate::ncpoly::{BracketSystem, Monomial, NcSeries};
use crate::report::CheckReport;
use crate::rmatrix::{exponent, RMatrix};

/// The two paired algebras combined into one presentation (the copies
/// commute, so tensor legs can hold elements of either side).
pub fn paired_presentation(order: u32) -> Result<Presentation> {
    let enveloping = load("poincare-1+1-quantum", order)?;
    let coordinates = load("funzS-1+1", order)?;
    direct_sum(&enveloping, &coordinates, "poincare-1+1-pairing")
}

/// The canonical element of the pairing, as an ordered product of
/// exponentials.  The dual coordinates carry their own grading, so the
/// exponents need no explicit power of z.
pub fn t_matrix(p: &Presentation) -> Result<RMatrix> {
    let sys = p.system();
    let t1 = TensorElement::from_legs(&[&sys.gen("P+")?, &sys.gen("a+")?])?;
    let t2 = TensorElement::from_legs(&[&sys.gen("K")?, &sys.gen("th")?])?;
    Ok(RMatrix::new(vec![t1, t2]))
}

/// `phi` on a single word of dual coordinates, extended multiplicatively.
fn phi_word(sys: &BracketSystem, w: &Monomial) -> Result<NcSeries> {
    let mut out = sys.one();
    for &letter in &w.0 {
        let image = match sys.alphabet().gen_name(letter) {
            "th" => sys.gen("P+")?.z_shift(1).scal(&Coeff::integer(2)),
            "a+" => sys.gen("K")?.z_shift(1).scal(&Coeff::integer(-2)),
            other => {
                return Err(Error::UnmappedGenerator { name: other.to_string() });
            }
        };
        out = sys.mul(&out, &image)?;
    }
    Ok(out)
}

fn phi_series(sys: &BracketSystem, s: &NcSeries) -> Result<NcSeries> {
    let mut out = sys.zero();
    for ((d, w), c) in s.terms() {
        out = out.add(&phi_word(sys, w)?.z_shift(*d).scal(c))?;
    }
    Ok(out)
}

fn report(p: &Presentation, check: &str, subject: Option<String>, terms: Vec<String>) -> CheckReport {
    CheckReport::from_residual(p.name(), check, subject, p.order(), terms)
}

/// `phi` transports the coordinate bracket onto the enveloping bracket:
/// `phi([a+, th]) = [phi(a+), phi(th)]`.
pub fn check_dual_algebra_morphism(p: &Presentation) -> Result<CheckReport> {
    let sys = p.system();
    let a_plus = p.alphabet().rank_of("a+")?;
    let th = p.alphabet().rank_of("th")?;
    let lhs = phi_series(sys, &sys.bracket_of(a_plus, th))?;
    let rhs = sys.comm(&phi_series(sys, &sys.gen("a+")?)?, &phi_series(sys, &sys.gen("th")?)?)?;
    let residual = lhs.add(&rhs.neg())?;
    Ok(report(p, "dual-algebra-morphism", Some("[a+, th]".to_string()), residual.term_strings()))
}

/// `(phi (x) phi) Delta_coord = sigma Delta_env phi` on the dual
/// coordinates.
pub fn check_dual_coalgebra_antimorphism(p: &Presentation) -> Result<Vec<CheckReport>> {
    let sys = p.system();
    let dm = CoproductMap::new(p)?;
    let f = |w: &Monomial| phi_word(sys, w);
    let mut reports = Vec::new();
    for name in ["th", "a+"] {
        let lhs = p.coproduct(name)?.map_legs(sys, &[Some(&f), Some(&f)])?;
        let rhs = dm.of_series(&phi_series(sys, &sys.gen(name)?)?)?.swap().normalize(sys)?;
        let residual = lhs.sub(&rhs)?;
        reports.push(report(
            p,
            "dual-coalgebra-antimorphism",
            Some(name.to_string()),
            residual.term_strings(),
        ));
    }
    Ok(reports)
}

/// The canonical-element laws of a Hopf pairing:
/// `(Delta (x) id) T = T13 T23` and `(id (x) Delta) T = T12 T13`.
pub fn check_t_coproduct_factorization(p: &Presentation) -> Result<Vec<CheckReport>> {
    let sys = p.system();
    let dm = CoproductMap::new(p)?;
    let t = t_matrix(p)?.build(sys)?;
    let t12 = t.embed(3, &[0, 1]);
    let t13 = t.embed(3, &[0, 2]);
    let t23 = t.embed(3, &[1, 2]);
    let delta = |w: &Monomial| dm.of_word(w).map(|d| (*d).clone());
    let left = t.expand_leg(0, 2, &delta)?.sub(&t13.mul(&t23, sys)?)?;
    let right = t.expand_leg(1, 2, &delta)?.sub(&t12.mul(&t13, sys)?)?;
    Ok(vec![
        report(p, "t-coproduct-factorization", Some("first leg".to_string()), left.term_strings()),
        report(p, "t-coproduct-factorization", Some("second leg".to_string()), right.term_strings()),
    ])
}

/// Pushing the coordinate leg of `T` through `phi` reproduces the stored
/// R-matrix factorization.
pub fn check_t_projects_to_r(p: &Presentation) -> Result<CheckReport> {
    let sys = p.system();
    let t = t_matrix(p)?.build(sys)?;
    let f = |w: &Monomial| phi_word(sys, w);
    let lhs = t.map_legs(sys, &[None, Some(&f)])?;
    let rhs = RMatrix::new(vec![exponent(sys, -2, "P+", "K")?, exponent(sys, 2, "K", "P+")?])
        .build(sys)?;
    let residual = lhs.sub(&rhs)?;
    Ok(report(p, "t-r-projection", None, residual.term_strings()))
}

/// Every duality check at one working order.
pub fn check_duality(order: u32) -> Result<Vec<CheckReport>> {
    let p = paired_presentation(order)?;
    let mut reports = vec![check_dual_algebra_morphism(&p)?];
    reports.extend(check_dual_coalgebra_antimorphism(&p)?);
    reports.extend(check_t_coproduct_factorization(&p)?);
    reports.push(check_t_projects_to_r(&p)?);
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_duality_check_passes_through_order_four() {
        for order in 1..=4 {
            let reports = check_duality(order).unwrap();
            assert_eq!(reports.len(), 6);
            for r in &reports {
                assert!(r.passed(), "order {order}: {}", r.line());
            }
        }
    }

    #[test]
    fn a_wrong_pairing_sign_breaks_the_projection_and_the_morphism() {
        let p = paired_presentation(3).unwrap();
        let sys = p.system();
        // phi with the sign of the a+ image flipped.
        let bad = |w: &Monomial| -> Result<NcSeries> {
            let mut out = sys.one();
            for &letter in &w.0 {
                let image = match sys.alphabet().gen_name(letter) {
                    "th" => sys.gen("P+")?.z_shift(1).scal(&Coeff::integer(2)),
                    "a+" => sys.gen("K")?.z_shift(1).scal(&Coeff::integer(2)),
                    other => return Err(Error::UnmappedGenerator { name: other.to_string() }),
                };
                out = sys.mul(&out, &image)?;
            }
            Ok(out)
        };
        let t = t_matrix(&p).unwrap().build(sys).unwrap();
        let lhs = t.map_legs(sys, &[None, Some(&bad)]).unwrap();
        let rhs = RMatrix::new(vec![
            exponent(sys, -2, "P+", "K").unwrap(),
            exponent(sys, 2, "K", "P+").unwrap(),
        ])
        .build(sys)
        .unwrap();
        assert!(!lhs.sub(&rhs).unwrap().is_zero());
        let wrong_bracket = sys
            .comm(
                &sys.gen("K").unwrap().z_shift(1).scal(&Coeff::integer(2)),
                &sys.gen("P+").unwrap().z_shift(1).scal(&Coeff::integer(2)),
            )
            .unwrap();
        let transported = {
            let a_plus = p.alphabet().rank_of("a+").unwrap();
            let th = p.alphabet().rank_of("th").unwrap();
            phi_series(sys, &sys.bracket_of(a_plus, th)).unwrap()
        };
        assert!(!transported.add(&wrong_bracket.neg()).unwrap().is_zero());
    }

    #[test]
    fn the_t_matrix_mixes_weights_and_z_powers_consistently() {
        let p = paired_presentation(3).unwrap();
        let sys = p.system();
        let t = t_matrix(&p).unwrap().build(sys).unwrap();
        // The degree-0 z-component holds all the weight-graded terms: its
        // first few are 1(x)1, P+(x)a+, K(x)th.
        let d0 = t.z_component(0);
        assert!(d0.term_count() > 3);
        let one = TensorElement::one(p.alphabet(), p.order(), 2);
        assert!(!d0.sub(&one).unwrap().is_zero());
    }
}
