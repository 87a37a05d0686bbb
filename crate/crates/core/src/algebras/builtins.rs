//! The built-in presentations: null-plane Poincare algebras in 1+1, 2+1 and
//! 3+1 dimensions (classical and quantum), the nonstandard sl(2) deformation,
//! the conformal so(2,2) basis of two commuting sl(2) copies, and the dual
//! coordinate Hopf algebra paired with the 1+1 deformation.
//!
//! All series-valued bracket entries are stored pre-expanded to the working
//! order.  PBW ranks put translation-type generators first so that every
//! bracket value is a combination of shorter words or words of strictly
//! higher deformation degree.

use crate::coeff::Coeff;
use crate::error::Result;
use crate::hopf::TensorElement;
use crate::ncpoly::{Alphabet, BracketSystem, GenInfo, Monomial, NcSeries};
use std::sync::Arc;

use super::transform::{change_basis, direct_sum, opposite_deformation, rename, LinearBasisChange};
use super::{Family, Presentation};

pub const BUILTIN_NAMES: [&str; 8] = [
    "poincare-1+1-classical",
    "poincare-1+1-quantum",
    "sl2-nonstandard",
    "so22-conformal",
    "poincare-2+1-quantum",
    "poincare-3+1-classical",
    "poincare-3+1-quantum",
    "funzS-1+1",
];

pub(crate) fn load_builtin(name: &str, order: u32) -> Result<Option<Presentation>> {
    Ok(Some(match name {
        "poincare-1+1-classical" => poincare11_classical(order)?,
        "poincare-1+1-quantum" => poincare11_quantum(order)?,
        "sl2-nonstandard" => sl2_nonstandard(order)?,
        "so22-conformal" => so22_conformal(order)?,
        "poincare-2+1-quantum" => poincare21_quantum(order)?,
        "poincare-3+1-classical" => poincare31_classical(order)?,
        "poincare-3+1-quantum" => poincare31_quantum(order)?,
        "funzS-1+1" => funz_s(order)?,
        _ => return Ok(None),
    }))
}

/// `(e^{c z X} - 1) / (divisor z)` expanded termwise for a single generator.
fn expm1_over_z(
    alphabet: &Arc<Alphabet>,
    order: u32,
    gen: &str,
    c: i64,
    divisor: i64,
) -> Result<NcSeries> {
    let rank = alphabet.rank_of(gen)?;
    let mut out = NcSeries::zero(alphabet, order);
    let mut coeff = Coeff::rational(1, divisor);
    for k in 1..=(order + 1) {
        coeff = &coeff * &Coeff::rational(c, i64::from(k));
        out.add_term(k - 1, Monomial::power(rank, k as usize), coeff.clone());
    }
    Ok(out)
}

/// `G e^{c z X}` in normal form, assuming `rank(X) < rank(G)` and `[X,G]=0`.
fn exp_tail(alphabet: &Arc<Alphabet>, order: u32, exp_gen: &str, c: i64, right: &str) -> Result<NcSeries> {
    let x = alphabet.rank_of(exp_gen)?;
    let g = alphabet.rank_of(right)?;
    let mut out = NcSeries::zero(alphabet, order);
    out.add_term(0, Monomial::gen(g), Coeff::one());
    let mut coeff = Coeff::one();
    for k in 1..=order {
        coeff = &coeff * &Coeff::rational(c, i64::from(k));
        let mut word = vec![x; k as usize];
        word.push(g);
        out.add_term(k, Monomial(word), coeff.clone());
    }
    Ok(out)
}

/// One generator as a single-term series.
fn gen_term(alphabet: &Arc<Alphabet>, order: u32, gen: &str, c: i64) -> Result<NcSeries> {
    let rank = alphabet.rank_of(gen)?;
    let mut out = NcSeries::zero(alphabet, order);
    out.add_term(0, Monomial::gen(rank), Coeff::integer(c));
    Ok(out)
}

/// `e^{c z X}` for a single generator inside a built system.
fn exp_of(sys: &BracketSystem, gen: &str, c: i64) -> Result<NcSeries> {
    sys.exp(&sys.gen(gen)?.z_shift(1).scal(&Coeff::integer(c)))
}

/// `1 (x) X + X (x) E`.
fn twisted_primitive(sys: &BracketSystem, gen: &str, e: &NcSeries) -> Result<TensorElement> {
    let x = sys.gen(gen)?;
    let one = sys.one();
    TensorElement::from_legs(&[&one, &x])?.add(&TensorElement::from_legs(&[&x, e])?)
}

/// `c z (A (x) B)` for series legs.
fn tail(a: &NcSeries, b: &NcSeries, c: i64) -> Result<TensorElement> {
    Ok(TensorElement::from_legs(&[a, b])?.z_shift(1).scal(&Coeff::integer(c)))
}

fn poincare11_alphabet(name: &str) -> Result<Arc<Alphabet>> {
    Alphabet::plain(name, &["P+", "P-", "K"], Some("z"))
}

fn poincare11_classical(order: u32) -> Result<Presentation> {
    let a = poincare11_alphabet("poincare-1+1-classical")?;
    let entries = vec![
        (2, 0, gen_term(&a, order, "P+", 1)?),
        (2, 1, gen_term(&a, order, "P-", -1)?),
    ];
    let system = BracketSystem::new(a, order, entries)?;
    Presentation::new(
        "poincare-1+1-classical",
        Family::Poincare11,
        true,
        system,
        Vec::new(),
        None,
        vec!["P+".into(), "K".into()],
        Vec::new(),
    )
}

fn poincare11_quantum(order: u32) -> Result<Presentation> {
    let a = poincare11_alphabet("poincare-1+1-quantum")?;
    let entries = vec![
        (2, 0, expm1_over_z(&a, order, "P+", 2, 2)?),
        (2, 1, gen_term(&a, order, "P-", -1)?),
    ];
    let system = BracketSystem::new(a, order, entries)?;
    let e = exp_of(&system, "P+", 2)?;
    let coproducts = vec![
        ("P-".to_string(), twisted_primitive(&system, "P-", &e)?),
        ("K".to_string(), twisted_primitive(&system, "K", &e)?),
    ];
    Presentation::new(
        "poincare-1+1-quantum",
        Family::Poincare11,
        false,
        system,
        coproducts,
        None,
        vec!["P+".into(), "K".into()],
        Vec::new(),
    )
}

fn sl2_nonstandard(order: u32) -> Result<Presentation> {
    let a = Alphabet::plain("sl2-nonstandard", &["A+", "A-", "A"], Some("z"))?;
    // [A, A-] = -2 A- + z A^2
    let mut a_minus_value = gen_term(&a, order, "A-", -2)?;
    a_minus_value.add_term(1, Monomial::power(2, 2), Coeff::one());
    let entries = vec![
        (2, 0, expm1_over_z(&a, order, "A+", 2, 1)?),
        (2, 1, a_minus_value),
        (1, 0, gen_term(&a, order, "A", -1)?),
    ];
    let system = BracketSystem::new(a, order, entries)?;
    let e = exp_of(&system, "A+", 2)?;
    let coproducts = vec![
        ("A".to_string(), twisted_primitive(&system, "A", &e)?),
        ("A-".to_string(), twisted_primitive(&system, "A-", &e)?),
    ];
    Presentation::new(
        "sl2-nonstandard",
        Family::Sl2,
        false,
        system,
        coproducts,
        None,
        vec!["A+".into(), "A".into()],
        Vec::new(),
    )
}

fn funz_s(order: u32) -> Result<Presentation> {
    let a = Alphabet::new(
        "funzS-1+1",
        vec![
            GenInfo { name: "th".into(), weight: 1 },
            GenInfo { name: "a+".into(), weight: 1 },
        ],
        Some("z"),
    )?;
    // [a+, th] = -2z (e^{th} - 1)
    let mut value = NcSeries::zero(&a, order);
    let mut coeff = Coeff::one();
    for k in 1..=order.max(1) {
        coeff = &coeff * &Coeff::rational(1, i64::from(k));
        value.add_term(1, Monomial::power(0, k as usize), &coeff * &Coeff::integer(-2));
    }
    let system = BracketSystem::new(a, order, vec![(1, 0, value)])?;
    // Delta(a+) = a+ (x) 1 + e^{th} (x) a+
    let e_th = system.exp(&system.gen("th")?)?;
    let a_plus = system.gen("a+")?;
    let one = system.one();
    let cop_a = TensorElement::from_legs(&[&a_plus, &one])?
        .add(&TensorElement::from_legs(&[&e_th, &a_plus])?)?;
    Presentation::new(
        "funzS-1+1",
        Family::DualGroup,
        false,
        system,
        vec![("a+".to_string(), cop_a)],
        None,
        vec!["th".into(), "a+".into()],
        Vec::new(),
    )
}

fn poincare21_quantum(order: u32) -> Result<Presentation> {
    let a = Alphabet::plain(
        "poincare-2+1-quantum",
        &["P+", "P1", "P-", "E1", "F1", "K2"],
        Some("w"),
    )?;
    // [K2, P-] = -P- - w P1^2 ; [F1, P1] = +P- + w P1^2
    let mut minus_val = gen_term(&a, order, "P-", -1)?;
    minus_val.add_term(1, Monomial::power(1, 2), Coeff::integer(-1));
    let plus_val = minus_val.neg();
    // [K2, F1] = -F1 - 2w P1 K2
    let mut f1_val = gen_term(&a, order, "F1", -1)?;
    f1_val.add_term(1, Monomial(vec![1, 5]), Coeff::integer(-2));
    let entries = vec![
        (5, 0, expm1_over_z(&a, order, "P+", 2, 2)?),
        (5, 2, minus_val),
        (5, 3, exp_tail(&a, order, "P+", 2, "E1")?),
        (5, 4, f1_val),
        (3, 1, expm1_over_z(&a, order, "P+", 2, 2)?),
        (4, 1, plus_val),
        (4, 3, gen_term(&a, order, "K2", -1)?),
        (4, 0, gen_term(&a, order, "P1", 1)?),
        (3, 2, gen_term(&a, order, "P1", 1)?),
    ];
    let system = BracketSystem::new(a, order, entries)?;
    let e = exp_of(&system, "P+", 2)?;
    let e_e1 = system.mul(&e, &system.gen("E1")?)?;
    let coproducts = vec![
        ("P-".to_string(), twisted_primitive(&system, "P-", &e)?),
        ("P1".to_string(), twisted_primitive(&system, "P1", &e)?),
        (
            "F1".to_string(),
            twisted_primitive(&system, "F1", &e)?
                .add(&tail(&system.gen("P-")?, &e_e1, -2)?)?,
        ),
        (
            "K2".to_string(),
            twisted_primitive(&system, "K2", &e)?
                .add(&tail(&system.gen("P1")?, &e_e1, -2)?)?,
        ),
    ];
    Presentation::new(
        "poincare-2+1-quantum",
        Family::Poincare21,
        false,
        system,
        coproducts,
        None,
        vec!["P+".into(), "P1".into(), "E1".into(), "K2".into()],
        Vec::new(),
    )
}

fn poincare31_alphabet(name: &str) -> Result<Arc<Alphabet>> {
    Alphabet::plain(
        name,
        &["P+", "P1", "P2", "P-", "E1", "E2", "J3", "F1", "F2", "K3"],
        Some("z"),
    )
}

fn poincare31_classical(order: u32) -> Result<Presentation> {
    let a = poincare31_alphabet("poincare-3+1-classical")?;
    let g = |name: &str, c: i64| gen_term(&a, order, name, c);
    let entries = vec![
        (9, 0, g("P+", 1)?),
        (9, 3, g("P-", -1)?),
        (9, 4, g("E1", 1)?),
        (9, 5, g("E2", 1)?),
        (9, 7, g("F1", -1)?),
        (9, 8, g("F2", -1)?),
        (6, 1, g("P2", -1)?),
        (6, 2, g("P1", 1)?),
        (6, 4, g("E2", -1)?),
        (6, 5, g("E1", 1)?),
        (7, 6, g("F2", 1)?),
        (8, 6, g("F1", -1)?),
        (4, 1, g("P+", 1)?),
        (5, 2, g("P+", 1)?),
        (7, 1, g("P-", 1)?),
        (8, 2, g("P-", 1)?),
        (7, 4, g("K3", -1)?),
        (8, 5, g("K3", -1)?),
        (8, 4, g("J3", -1)?),
        (7, 5, g("J3", 1)?),
        (7, 0, g("P1", 1)?),
        (8, 0, g("P2", 1)?),
        (4, 3, g("P1", 1)?),
        (5, 3, g("P2", 1)?),
    ];
    let system = BracketSystem::new(a, order, entries)?;
    Presentation::new(
        "poincare-3+1-classical",
        Family::Poincare31,
        true,
        system,
        Vec::new(),
        None,
        vec!["P+".into(), "P1".into(), "P2".into(), "E1".into(), "E2".into(), "K3".into()],
        vec![
            "P+".into(),
            "P1".into(),
            "P2".into(),
            "E1".into(),
            "E2".into(),
            "K3".into(),
            "J3".into(),
        ],
    )
}

fn poincare31_quantum(order: u32) -> Result<Presentation> {
    let a = poincare31_alphabet("poincare-3+1-quantum")?;
    let g = |name: &str, c: i64| gen_term(&a, order, name, c);
    // [K3, P-] = -P- - z P1^2 - z P2^2 ; [F_i, P_i] is its negative.
    let mut minus_val = g("P-", -1)?;
    minus_val.add_term(1, Monomial::power(1, 2), Coeff::integer(-1));
    minus_val.add_term(1, Monomial::power(2, 2), Coeff::integer(-1));
    let plus_val = minus_val.neg();
    // [K3, F_i] = -F_i - 2z P_i K3
    let mut f1_val = g("F1", -1)?;
    f1_val.add_term(1, Monomial(vec![1, 9]), Coeff::integer(-2));
    let mut f2_val = g("F2", -1)?;
    f2_val.add_term(1, Monomial(vec![2, 9]), Coeff::integer(-2));
    // [F2, F1] = 2z (P2 F1 - P1 F2)
    let mut ff_val = NcSeries::zero(&a, order);
    ff_val.add_term(1, Monomial(vec![2, 7]), Coeff::integer(2));
    ff_val.add_term(1, Monomial(vec![1, 8]), Coeff::integer(-2));
    let entries = vec![
        (9, 0, expm1_over_z(&a, order, "P+", 2, 2)?),
        (9, 3, minus_val),
        (9, 4, exp_tail(&a, order, "P+", 2, "E1")?),
        (9, 5, exp_tail(&a, order, "P+", 2, "E2")?),
        (9, 7, f1_val),
        (9, 8, f2_val),
        (6, 1, g("P2", -1)?),
        (6, 2, g("P1", 1)?),
        (6, 4, g("E2", -1)?),
        (6, 5, g("E1", 1)?),
        (7, 6, g("F2", 1)?),
        (8, 6, g("F1", -1)?),
        (4, 1, expm1_over_z(&a, order, "P+", 2, 2)?),
        (5, 2, expm1_over_z(&a, order, "P+", 2, 2)?),
        (7, 1, plus_val.truncated(order)),
        (8, 2, plus_val),
        (7, 4, g("K3", -1)?),
        (8, 5, g("K3", -1)?),
        (8, 4, exp_tail(&a, order, "P+", 2, "J3")?.neg()),
        (7, 5, exp_tail(&a, order, "P+", 2, "J3")?),
        (7, 0, g("P1", 1)?),
        (8, 0, g("P2", 1)?),
        (4, 3, g("P1", 1)?),
        (5, 3, g("P2", 1)?),
        (8, 7, ff_val),
    ];
    let system = BracketSystem::new(a, order, entries)?;
    let e = exp_of(&system, "P+", 2)?;
    let e1e = system.mul(&system.gen("E1")?, &e)?;
    let e2e = system.mul(&system.gen("E2")?, &e)?;
    let j3e = system.mul(&system.gen("J3")?, &e)?;
    let coproducts = vec![
        ("P-".to_string(), twisted_primitive(&system, "P-", &e)?),
        ("P1".to_string(), twisted_primitive(&system, "P1", &e)?),
        ("P2".to_string(), twisted_primitive(&system, "P2", &e)?),
        (
            "F1".to_string(),
            twisted_primitive(&system, "F1", &e)?
                .add(&tail(&system.gen("P-")?, &e1e, -2)?)?
                .add(&tail(&system.gen("P2")?, &j3e, -2)?)?,
        ),
        (
            "F2".to_string(),
            twisted_primitive(&system, "F2", &e)?
                .add(&tail(&system.gen("P-")?, &e2e, -2)?)?
                .add(&tail(&system.gen("P1")?, &j3e, 2)?)?,
        ),
        (
            "K3".to_string(),
            twisted_primitive(&system, "K3", &e)?
                .add(&tail(&system.gen("P1")?, &e1e, -2)?)?
                .add(&tail(&system.gen("P2")?, &e2e, -2)?)?,
        ),
    ];
    Presentation::new(
        "poincare-3+1-quantum",
        Family::Poincare31,
        false,
        system,
        coproducts,
        None,
        vec!["P+".into(), "P1".into(), "P2".into(), "E1".into(), "E2".into(), "K3".into()],
        vec![
            "P+".into(),
            "P1".into(),
            "P2".into(),
            "E1".into(),
            "E2".into(),
            "K3".into(),
            "J3".into(),
        ],
    )
}

/// Two commuting sl(2) copies with opposite deformation signs; the source of
/// the conformal basis and of the 2+1 contraction.
pub(crate) fn so22_direct_sum(order: u32) -> Result<Presentation> {
    let base = sl2_nonstandard(order)?;
    let copy1 = rename(&base, "sl2-copy-1", |g| format!("{g}1"))?;
    let copy2 = rename(&opposite_deformation(&base, "sl2-opposite")?, "sl2-copy-2", |g| {
        format!("{g}2")
    })?;
    direct_sum(&copy1, &copy2, "so22-direct-sum")
}

fn so22_conformal(order: u32) -> Result<Presentation> {
    let sum = so22_direct_sum(order)?;
    let target = Alphabet::plain(
        "so22-conformal",
        &["pi+", "P", "J", "D", "C1", "C2"],
        Some("z"),
    )?;
    let half = Coeff::rational(1, 2);
    let zero = Coeff::zero;
    let one = Coeff::one;
    // Rows over the direct-sum basis (A+1, A-1, A1, A+2, A-2, A2).
    let matrix = vec![
        vec![one(), zero(), zero(), one(), zero(), zero()], // pi+ = A+1 + A+2
        vec![one(), zero(), zero(), -&one(), zero(), zero()], // P = A+1 - A+2
        vec![zero(), zero(), half.clone(), zero(), zero(), -&half], // J = (A1 - A2)/2
        vec![zero(), zero(), half.clone(), zero(), zero(), half.clone()], // D = (A1 + A2)/2
        vec![zero(), -&one(), zero(), zero(), -&one(), zero()], // C1 = -A-1 - A-2
        vec![zero(), one(), zero(), zero(), -&one(), zero()], // C2 = A-1 - A-2
    ];
    let change = LinearBasisChange::new(target, matrix)?;
    change_basis(
        &sum,
        &change,
        "so22-conformal",
        Family::So22Conformal,
        vec!["pi+".into(), "P".into(), "J".into(), "D".into()],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::load;

    #[test]
    fn quantum_11_bracket_expands_the_stored_series() {
        let p = load("poincare-1+1-quantum", 3).unwrap();
        let v = p.comm(&p.gen("K").unwrap(), &p.gen("P+").unwrap()).unwrap();
        assert_eq!(v.coeff_of(0, &Monomial::power(0, 1)), Coeff::one());
        assert_eq!(v.coeff_of(1, &Monomial::power(0, 2)), Coeff::one());
        assert_eq!(v.coeff_of(2, &Monomial::power(0, 3)), Coeff::rational(2, 3));
        assert_eq!(v.coeff_of(3, &Monomial::power(0, 4)), Coeff::rational(1, 3));
    }

    #[test]
    fn quantum_31_has_the_deformed_rotation_sector() {
        let p = load("poincare-3+1-quantum", 2).unwrap();
        // [E1, F2] = J3 e^{2zP+}
        let v = p.comm(&p.gen("E1").unwrap(), &p.gen("F2").unwrap()).unwrap();
        assert_eq!(v.coeff_of(0, &Monomial::gen(6)), Coeff::one());
        assert_eq!(v.coeff_of(1, &Monomial(vec![0, 6])), Coeff::integer(2));
        // [F1, F2] = 2z (P1 F2 - P2 F1)
        let v = p.comm(&p.gen("F1").unwrap(), &p.gen("F2").unwrap()).unwrap();
        assert_eq!(v.coeff_of(1, &Monomial(vec![1, 8])), Coeff::integer(2));
        assert_eq!(v.coeff_of(1, &Monomial(vec![2, 7])), Coeff::integer(-2));
        assert_eq!(v.term_count(), 2);
    }

    #[test]
    fn coproduct_tails_carry_the_printed_signs() {
        let p = load("poincare-3+1-quantum", 2).unwrap();
        let d = p.coproduct("F2").unwrap();
        let one = Monomial::one();
        assert_eq!(d.coeff_of(0, &[one.clone(), Monomial::gen(8)]), Coeff::one());
        // -2z P- (x) E2 and +2z P1 (x) J3
        assert_eq!(d.coeff_of(1, &[Monomial::gen(3), Monomial::gen(5)]), Coeff::integer(-2));
        assert_eq!(d.coeff_of(1, &[Monomial::gen(1), Monomial::gen(6)]), Coeff::integer(2));
        let dk = p.coproduct("K3").unwrap();
        assert_eq!(dk.coeff_of(1, &[Monomial::gen(1), Monomial::gen(4)]), Coeff::integer(-2));
        assert_eq!(dk.coeff_of(1, &[Monomial::gen(9), Monomial::gen(0)]), Coeff::integer(2));
    }

    #[test]
    fn conformal_basis_closes_with_exact_tables() {
        let p = load("so22-conformal", 3).unwrap();
        // [C1, pi+] = 2D and [D, C1] = -C1 - 2z J D
        let c1 = p.gen("C1").unwrap();
        let pi = p.gen("pi+").unwrap();
        let v = p.comm(&c1, &pi).unwrap();
        assert_eq!(v, p.gen("D").unwrap().scal(&Coeff::integer(2)));
        let d = p.gen("D").unwrap();
        let v = p.comm(&d, &c1).unwrap();
        assert_eq!(v.coeff_of(0, &Monomial::gen(4)), Coeff::integer(-1));
        assert_eq!(v.coeff_of(1, &Monomial(vec![2, 3])), Coeff::integer(-2));
    }

    #[test]
    fn classical_limits_of_builtins_match_stored_classical_tables() {
        for (quantum, classical) in [
            ("poincare-1+1-quantum", "poincare-1+1-classical"),
            ("poincare-3+1-quantum", "poincare-3+1-classical"),
        ] {
            let q = load(quantum, 3).unwrap();
            let c = load(classical, 3).unwrap();
            let limit = q.classical_limit().unwrap();
            assert_eq!(limit.same_structure(&c).unwrap(), Vec::<String>::new());
        }
    }

    #[test]
    fn dual_group_relation_and_coproduct() {
        let p = load("funzS-1+1", 4).unwrap();
        let v = p.comm(&p.gen("a+").unwrap(), &p.gen("th").unwrap()).unwrap();
        // [a+, th] = -2z(e^th - 1)
        assert_eq!(v.coeff_of(1, &Monomial::power(0, 1)), Coeff::integer(-2));
        assert_eq!(v.coeff_of(1, &Monomial::power(0, 2)), Coeff::integer(-1));
        let d = p.coproduct("a+").unwrap();
        assert_eq!(d.coeff_of(0, &[Monomial::gen(0), Monomial::gen(1)]), Coeff::one());
        assert_eq!(
            d.coeff_of(0, &[Monomial::power(0, 2), Monomial::gen(1)]),
            Coeff::rational(1, 2)
        );
    }
}
