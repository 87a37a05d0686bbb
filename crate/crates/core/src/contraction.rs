//! Contraction limits connecting the deformations across dimensions.
//!
//! A contraction map rescales each generator of a deformation by a power of
//! a parameter `eps` (times a linear combination fixed by the map) and
//! rescales the deformation parameter itself.  All noncommutative products
//! are carried out exactly in the source algebra, rebased onto the scaled
//! generators; only the finished objects are pushed down, where every
//! normal-ordered term acquires a single power of `eps`.  The checks verify
//! that the limit `eps -> 0` exists and reproduces the stored brackets,
//! coproducts, classical r-matrix and R-matrix of the contracted
//! deformation; a map without the compensating parameter rescaling fails
//! with a divergence report naming the offending entries.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebras::{change_basis, load, Family, LinearBasisChange, Presentation};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hopf::TensorElement;
use crate::ncpoly::{Alphabet, NcSeries};
use crate::report::CheckReport;
use crate::rmatrix::{builtin_rmatrix, classical_r, RMatrix};

/// A Laurent polynomial in `eps` with series coefficients.
#[derive(Clone)]
pub struct EpsilonSeries {
    alphabet: Arc<Alphabet>,
    order: u32,
    parts: BTreeMap<i32, NcSeries>,
}

/// A Laurent polynomial in `eps` with tensor coefficients.
#[derive(Clone)]
pub struct EpsilonTensor {
    alphabet: Arc<Alphabet>,
    order: u32,
    rank: usize,
    parts: BTreeMap<i32, TensorElement>,
}

/// The outcome of `eps -> 0`: either the constant part or the most
/// negative surviving power with sample terms.
type Limit<T> = std::result::Result<T, (i32, Vec<String>)>;

impl EpsilonSeries {
    pub fn zero(alphabet: &Arc<Alphabet>, order: u32) -> Self {
        EpsilonSeries { alphabet: alphabet.clone(), order, parts: BTreeMap::new() }
    }

    fn add_part(&mut self, pow: i32, s: NcSeries) {
        if s.is_zero() {
            return;
        }
        let cur = self
            .parts
            .remove(&pow)
            .unwrap_or_else(|| NcSeries::zero(&self.alphabet, self.order));
        let sum = cur.add(&s).expect("matching alphabets");
        if !sum.is_zero() {
            self.parts.insert(pow, sum);
        }
    }

    /// Multiply by `eps^dp`.
    pub fn shift(mut self, dp: i32) -> EpsilonSeries {
        self.parts = self.parts.into_iter().map(|(p, s)| (p + dp, s)).collect();
        self
    }

    /// The value at `eps -> 0`; positive powers vanish, surviving negative
    /// powers are a divergence.
    pub fn limit(&self) -> Limit<NcSeries> {
        if let Some((&pow, part)) = self.parts.iter().next() {
            if pow < 0 {
                return Err((pow, part.term_strings()));
            }
        }
        Ok(self
            .parts
            .get(&0)
            .cloned()
            .unwrap_or_else(|| NcSeries::zero(&self.alphabet, self.order)))
    }
}

impl EpsilonTensor {
    pub fn zero(alphabet: &Arc<Alphabet>, order: u32, rank: usize) -> Self {
        EpsilonTensor { alphabet: alphabet.clone(), order, rank, parts: BTreeMap::new() }
    }

    fn add_part(&mut self, pow: i32, t: TensorElement) {
        if t.is_zero() {
            return;
        }
        let cur = self
            .parts
            .remove(&pow)
            .unwrap_or_else(|| TensorElement::zero(&self.alphabet, self.order, self.rank));
        let sum = cur.add(&t).expect("matching alphabets");
        if !sum.is_zero() {
            self.parts.insert(pow, sum);
        }
    }

    pub fn shift(mut self, dp: i32) -> EpsilonTensor {
        self.parts = self.parts.into_iter().map(|(p, t)| (p + dp, t)).collect();
        self
    }

    pub fn limit(&self) -> Limit<TensorElement> {
        if let Some((&pow, part)) = self.parts.iter().next() {
            if pow < 0 {
                return Err((pow, part.term_strings()));
            }
        }
        Ok(self
            .parts
            .get(&0)
            .cloned()
            .unwrap_or_else(|| TensorElement::zero(&self.alphabet, self.order, self.rank)))
    }
}

/// A linear contraction from a source deformation onto a target one.
///
/// The scaled generators (before the `eps` factors) form a second exact
/// presentation of the source algebra, so every product and exponential is
/// computed there; `eps` enters only through the final push, which sends a
/// normal word with `m` scaled letters at deformation degree `d` to
/// `eps^(param_power * d - sum of letter powers)` times the same word over
/// the target alphabet.
pub struct ContractionMap {
    name: String,
    source: Presentation,
    /// The source algebra presented on the scaled generators (target names,
    /// exact source arithmetic).
    rebased: Presentation,
    target: Presentation,
    /// Per generator: the power of eps scaling it in the contraction.
    powers: Vec<i32>,
    /// Per source rank: the scaled-basis combination replacing it.
    letter_combos: Vec<NcSeries>,
    /// The source deformation parameter equals
    /// `param_coeff * eps^param_power * (target deformation)`.
    param_power: i32,
    param_coeff: Coeff,
}

impl ContractionMap {
    /// `rows[i] = (eps power, coefficients over the source generators)` for
    /// target generator `i`.
    pub fn new(
        source: Presentation,
        target: Presentation,
        rows: &[(i32, Vec<Coeff>)],
        param_power: i32,
        param_coeff: Coeff,
    ) -> Result<Self> {
        let srank = source.alphabet().len();
        let trank = target.alphabet().len();
        if rows.len() != trank || rows.iter().any(|(_, r)| r.len() != srank) || srank != trank {
            return Err(Error::InvalidConfig(format!(
                "contraction of `{}` onto `{}` needs a square {}x{} coefficient table",
                source.name(),
                target.name(),
                trank,
                srank
            )));
        }
        if source.order() != target.order() {
            return Err(Error::InvalidConfig(
                "contraction endpoints must share the truncation order".to_string(),
            ));
        }
        let name = format!("{} -> {}", source.name(), target.name());
        let target_names: Vec<&str> =
            target.alphabet().ranks().map(|r| target.alphabet().gen_name(r)).collect();
        let scaled_alphabet = Alphabet::plain(
            &format!("{} (scaled)", source.name()),
            &target_names,
            Some(source.deformation()),
        )?;
        let matrix: Vec<Vec<Coeff>> = rows.iter().map(|(_, r)| r.clone()).collect();
        let change = LinearBasisChange::new(scaled_alphabet, matrix.clone())?;
        let rebased = change_basis(
            &source,
            &change,
            &format!("{} (scaled)", source.name()),
            Family::Custom,
            Vec::new(),
        )?;
        let inverse = crate::algebras::transform::invert_matrix(&matrix)?;
        let mut letter_combos = Vec::with_capacity(srank);
        for row in &inverse {
            let mut combo = rebased.system().zero();
            for (i, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    combo = combo.add(&rebased.system().gen_rank(i as u8).scal(c))?;
                }
            }
            letter_combos.push(combo);
        }
        let powers = rows.iter().map(|(p, _)| *p).collect();
        Ok(ContractionMap {
            name,
            source,
            rebased,
            target,
            powers,
            letter_combos,
            param_power,
            param_coeff,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &Presentation {
        &self.source
    }

    pub fn target(&self) -> &Presentation {
        &self.target
    }

    /// The source algebra on the scaled generators.
    pub fn rebased(&self) -> &Presentation {
        &self.rebased
    }

    fn word_power(&self, w: &crate::ncpoly::Monomial) -> i32 {
        -w.0.iter().map(|&l| self.powers[l as usize]).sum::<i32>()
    }

    /// Push a series over the scaled basis down to the target algebra.
    pub fn push_series(&self, s: &NcSeries) -> EpsilonSeries {
        let tgt = self.target.system();
        let mut out = EpsilonSeries::zero(tgt.alphabet(), tgt.order());
        for ((d, w), c) in s.terms() {
            let pow = self.param_power * (*d as i32) + self.word_power(w);
            let mut part = NcSeries::zero(tgt.alphabet(), tgt.order());
            part.add_term(*d, w.clone(), c * &self.param_coeff.pow(*d));
            out.add_part(pow, part);
        }
        out
    }

    /// Push a tensor over the scaled basis down to the target algebra.
    pub fn push_tensor(&self, t: &TensorElement) -> EpsilonTensor {
        let tgt = self.target.system();
        let mut out = EpsilonTensor::zero(tgt.alphabet(), tgt.order(), t.rank());
        for ((d, legs), c) in t.terms() {
            let pow = self.param_power * (*d as i32)
                + legs.iter().map(|w| self.word_power(w)).sum::<i32>();
            let mut part = TensorElement::zero(tgt.alphabet(), tgt.order(), t.rank());
            part.add_term(*d, legs.clone(), c * &self.param_coeff.pow(*d));
            out.add_part(pow, part);
        }
        out
    }

    /// Re-express a tensor over the original source generators in the
    /// scaled basis (exact source arithmetic, no `eps` involved).
    pub fn rebase_tensor(&self, t: &TensorElement) -> Result<TensorElement> {
        let sys = self.rebased.system();
        let rank = t.rank();
        let mut out = TensorElement::zero(sys.alphabet(), sys.order(), rank);
        for ((d, legs), c) in t.terms() {
            let mut leg_series = Vec::with_capacity(rank);
            for w in legs {
                let mut acc = sys.one();
                for &letter in &w.0 {
                    acc = sys.mul(&acc, &self.letter_combos[letter as usize])?;
                }
                leg_series.push(acc);
            }
            let refs: Vec<&NcSeries> = leg_series.iter().collect();
            out = out.add(&TensorElement::from_legs(&refs)?.z_shift(*d).scal(c))?;
        }
        Ok(out)
    }
}

fn report(map: &ContractionMap, check: &str, subject: String, terms: Vec<String>) -> CheckReport {
    CheckReport::from_residual(map.name(), check, Some(subject), map.target.order(), terms)
}

fn divergence_entry(subject: &str, pow: i32, samples: &[String]) -> String {
    let sample = samples.first().map(String::as_str).unwrap_or("0");
    format!("{subject} at eps^{pow}: {sample}")
}

/// Commutators of the scaled generators reproduce the stored target
/// brackets in the limit.
pub fn check_bracket_contraction(map: &ContractionMap) -> Result<Vec<CheckReport>> {
    let reb = map.rebased().system();
    let tgt = map.target().system();
    let ranks: Vec<u8> = tgt.alphabet().ranks().collect();
    let mut reports = Vec::new();
    let mut divergent = Vec::new();
    for &hi in &ranks {
        for &lo in &ranks {
            if lo >= hi {
                continue;
            }
            let subject =
                format!("[{}, {}]", tgt.alphabet().gen_name(hi), tgt.alphabet().gen_name(lo));
            let shift = map.powers[hi as usize] + map.powers[lo as usize];
            let pushed = map.push_series(&reb.bracket_of(hi, lo)).shift(shift);
            match pushed.limit() {
                Ok(lim) => {
                    let residual = lim.add(&tgt.bracket_of(hi, lo).neg())?;
                    reports.push(report(
                        map,
                        "bracket-contraction",
                        subject,
                        residual.term_strings(),
                    ));
                }
                Err((pow, samples)) => divergent.push(divergence_entry(&subject, pow, &samples)),
            }
        }
    }
    if !divergent.is_empty() {
        return Err(Error::DivergentContraction { entries: divergent });
    }
    Ok(reports)
}

/// Coproducts of the scaled generators reproduce the stored target
/// coproducts in the limit.
pub fn check_coproduct_contraction(map: &ContractionMap) -> Result<Vec<CheckReport>> {
    let tgt = map.target().system();
    let mut reports = Vec::new();
    let mut divergent = Vec::new();
    for rank in tgt.alphabet().ranks() {
        let name = tgt.alphabet().gen_name(rank);
        let pushed = map
            .push_tensor(map.rebased().coproduct(name)?)
            .shift(map.powers[rank as usize]);
        let subject = format!("coproduct of {name}");
        // The generator itself is scaled by eps^power, so both legs of its
        // coproduct together must absorb exactly that power.
        match pushed.limit() {
            Ok(lim) => {
                let residual = lim.sub(map.target().coproduct(name)?)?;
                reports.push(report(
                    map,
                    "coproduct-contraction",
                    subject,
                    residual.term_strings(),
                ));
            }
            Err((p, samples)) => divergent.push(divergence_entry(&subject, p, &samples)),
        }
    }
    if !divergent.is_empty() {
        return Err(Error::DivergentContraction { entries: divergent });
    }
    Ok(reports)
}

/// The classical r-matrix pushes onto the target classical r-matrix.
pub fn check_classical_r_contraction(map: &ContractionMap) -> Result<CheckReport> {
    let pushed = map.push_tensor(&map.rebase_tensor(&classical_r(map.source())?)?);
    match pushed.limit() {
        Ok(lim) => {
            let residual = lim.sub(&classical_r(map.target())?)?;
            Ok(report(map, "classical-r-contraction", "r".to_string(), residual.term_strings()))
        }
        Err((pow, samples)) => Err(Error::DivergentContraction {
            entries: vec![divergence_entry("r", pow, &samples)],
        }),
    }
}

/// The full factorized R-matrix pushes onto the target one.  The product
/// is assembled exactly in the scaled source basis before the push, so
/// divergences of individual factors may cancel across factors.  Also
/// confirms that the first deformation order of the contracted product is
/// the contracted classical r-matrix.
pub fn check_rmatrix_contraction(map: &ContractionMap) -> Result<Vec<CheckReport>> {
    let reb = map.rebased().system();
    let tgt = map.target().system();
    let src_rm = builtin_rmatrix(map.source())?;
    let rebased_exponents = src_rm
        .exponents()
        .iter()
        .map(|t| map.rebase_tensor(t))
        .collect::<Result<Vec<_>>>()?;
    let product = RMatrix::new(rebased_exponents).build(reb)?;
    match map.push_tensor(&product).limit() {
        Ok(lim) => {
            let target_r = builtin_rmatrix(map.target())?.build(tgt)?;
            let residual = lim.sub(&target_r)?;
            let contracted_r = map
                .push_tensor(&map.rebase_tensor(&classical_r(map.source())?)?)
                .limit()
                .map_err(|(pow, samples)| Error::DivergentContraction {
                    entries: vec![divergence_entry("r", pow, &samples)],
                })?;
            let first_order = lim.z_component(1).sub(&contracted_r)?;
            Ok(vec![
                report(map, "r-matrix-contraction", "R".to_string(), residual.term_strings()),
                report(
                    map,
                    "r-matrix-contraction",
                    "first order vs contracted r".to_string(),
                    first_order.term_strings(),
                ),
            ])
        }
        Err((pow, samples)) => Err(Error::DivergentContraction {
            entries: vec![divergence_entry("R", pow, &samples)],
        }),
    }
}

/// Every contraction check for one map.
pub fn check_contraction(map: &ContractionMap) -> Result<Vec<CheckReport>> {
    let mut reports = check_bracket_contraction(map)?;
    reports.extend(check_coproduct_contraction(map)?);
    reports.push(check_classical_r_contraction(map)?);
    reports.extend(check_rmatrix_contraction(map)?);
    Ok(reports)
}

pub const CONTRACTION_NAMES: [&str; 2] = ["sl2-to-poincare-1+1", "so22-to-poincare-2+1"];

/// The stored contraction maps.  `sl2-to-poincare-1+1` scales the
/// raising/lowering pair by eps and halves the remaining generator;
/// `so22-to-poincare-2+1` scales the conformal basis onto the 2+1 algebra.
/// The `-unrescaled` variant of the first map keeps the deformation
/// parameter fixed and is expected to diverge.
pub fn builtin_contraction(name: &str, order: u32) -> Result<ContractionMap> {
    let one = Coeff::one;
    let zero = Coeff::zero;
    match name {
        "sl2-to-poincare-1+1" | "sl2-to-poincare-1+1-unrescaled" => {
            let source = load("sl2-nonstandard", order)?;
            let target = load("poincare-1+1-quantum", order)?;
            // P+ = eps A+, P- = eps A-, K = A / 2.
            let rows = vec![
                (1, vec![one(), zero(), zero()]),
                (1, vec![zero(), one(), zero()]),
                (0, vec![zero(), zero(), Coeff::rational(1, 2)]),
            ];
            let (param_power, param_coeff) =
                if name.ends_with("-unrescaled") { (0, one()) } else { (1, one()) };
            ContractionMap::new(source, target, &rows, param_power, param_coeff)
        }
        "so22-to-poincare-2+1" => {
            let source = load("so22-conformal", order)?;
            let target = load("poincare-2+1-quantum", order)?;
            let h = Coeff::sqrt2_times(1, 2); // 1/sqrt(2)
            // Source columns: pi+, P, J, D, C1, C2.
            let rows = vec![
                // P+ = eps P / sqrt(2)
                (1, vec![zero(), h.clone(), zero(), zero(), zero(), zero()]),
                // P1 = eps J
                (1, vec![zero(), zero(), one(), zero(), zero(), zero()]),
                // P- = -eps C2 / sqrt(2)
                (1, vec![zero(), zero(), zero(), zero(), zero(), -&h]),
                // E1 = -pi+ / sqrt(2)
                (0, vec![-&h, zero(), zero(), zero(), zero(), zero()]),
                // F1 = C1 / sqrt(2)
                (0, vec![zero(), zero(), zero(), zero(), h.clone(), zero()]),
                // K2 = D
                (0, vec![zero(), zero(), zero(), one(), zero(), zero()]),
            ];
            ContractionMap::new(source, target, &rows, 1, Coeff::sqrt2())
        }
        _ => Err(Error::UnknownAlgebra { name: name.to_string() }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sl2_contracts_onto_the_11_deformation() {
        let map = builtin_contraction("sl2-to-poincare-1+1", 4).unwrap();
        let reports = check_contraction(&map).unwrap();
        assert!(!reports.is_empty());
        for r in &reports {
            assert!(r.passed(), "{}", r.line());
        }
    }

    #[test]
    fn so22_contracts_onto_the_21_deformation() {
        let map = builtin_contraction("so22-to-poincare-2+1", 3).unwrap();
        let reports = check_contraction(&map).unwrap();
        assert_eq!(reports.iter().filter(|r| r.check == "r-matrix-contraction").count(), 2);
        for r in &reports {
            assert!(r.passed(), "{}", r.line());
        }
    }

    #[test]
    fn forgetting_the_parameter_rescaling_diverges_on_the_boost_bracket() {
        let map = builtin_contraction("sl2-to-poincare-1+1-unrescaled", 3).unwrap();
        let err = check_bracket_contraction(&map).unwrap_err();
        match err {
            Error::DivergentContraction { entries } => {
                assert!(entries.iter().any(|e| e.contains("[K, P+]")), "entries: {entries:?}");
            }
            other => panic!("expected a divergence, got {other}"),
        }
    }

    #[test]
    fn individual_so22_factors_diverge_but_the_product_converges() {
        let map = builtin_contraction("so22-to-poincare-2+1", 3).unwrap();
        let reb = map.rebased().system();
        let src_rm = builtin_rmatrix(map.source()).unwrap();
        let mut some_factor_diverges = false;
        for t in src_rm.exponents() {
            let factor = map.rebase_tensor(t).unwrap().exp(reb).unwrap();
            if map.push_tensor(&factor).limit().is_err() {
                some_factor_diverges = true;
            }
        }
        assert!(some_factor_diverges);
        let reports = check_rmatrix_contraction(&map).unwrap();
        assert!(reports.iter().all(CheckReport::passed));
    }
}
