//! Structural transforms on presentations: renaming, direct sums, linear
//! changes of basis, and the opposite-deformation twist.
//!
//! A change of basis transports brackets and coproducts by computing the
//! source-side commutators and rewriting them through the inverse linear map.
//! The transported values are handed to the bracket-system constructor in raw
//! (possibly non-normal) form; construction normalizes them through the raw
//! table itself, and the Jacobi/confluence validation re-runs on the result.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hopf::TensorElement;
use crate::ncpoly::{Alphabet, BracketSystem, GenInfo, Monomial, NcSeries};
use std::sync::Arc;

use super::{Family, Presentation};

/// A target alphabet together with the matrix expressing each target
/// generator as a linear combination of source generators.
pub struct LinearBasisChange {
    pub target: Arc<Alphabet>,
    /// `matrix[i][j]` = coefficient of source generator `j` in target `i`.
    pub matrix: Vec<Vec<Coeff>>,
}

impl LinearBasisChange {
    pub fn new(target: Arc<Alphabet>, matrix: Vec<Vec<Coeff>>) -> Result<Self> {
        if matrix.len() != target.len() || matrix.iter().any(|row| row.len() != target.len()) {
            return Err(Error::InvalidConfig(
                "basis-change matrix must be square over the generator count".into(),
            ));
        }
        Ok(LinearBasisChange { target, matrix })
    }
}

/// Gauss-Jordan inverse over the exact coefficient field.
pub(crate) fn invert_matrix(m: &[Vec<Coeff>]) -> Result<Vec<Vec<Coeff>>> {
    let n = m.len();
    let mut a: Vec<Vec<Coeff>> = m.to_vec();
    let mut inv: Vec<Vec<Coeff>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { Coeff::one() } else { Coeff::zero() }).collect())
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(Error::SingularMap)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let scale = a[col][col].inv();
        for j in 0..n {
            a[col][j] = &a[col][j] * &scale;
            inv[col][j] = &inv[col][j] * &scale;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in 0..n {
                let av = &a[col][j] * &factor;
                let iv = &inv[col][j] * &factor;
                a[r][j] -= &av;
                inv[r][j] -= &iv;
            }
        }
    }
    Ok(inv)
}

/// Letter images for a linear substitution: `images[rank]` lists the
/// (target rank, coefficient) summands.
type LetterImages = Vec<Vec<(u8, Coeff)>>;

fn letter_images_from_matrix(inverse: &[Vec<Coeff>]) -> LetterImages {
    inverse
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (i as u8, c.clone()))
                .collect()
        })
        .collect()
}

/// Distribute a linear letter substitution over one word (no reordering).
fn substitute_word(word: &Monomial, images: &LetterImages) -> Vec<(Monomial, Coeff)> {
    let mut acc: Vec<(Vec<u8>, Coeff)> = vec![(Vec::with_capacity(word.len()), Coeff::one())];
    for &letter in &word.0 {
        let choices = &images[letter as usize];
        let mut next = Vec::with_capacity(acc.len() * choices.len().max(1));
        for (w, c) in &acc {
            for (target, tc) in choices {
                let mut nw = w.clone();
                nw.push(*target);
                next.push((nw, c * tc));
            }
        }
        acc = next;
    }
    acc.into_iter().map(|(w, c)| (Monomial(w), c)).collect()
}

/// Raw (unnormalized) linear substitution of a series into the target
/// alphabet.
fn substitute_series(
    s: &NcSeries,
    images: &LetterImages,
    target: &Arc<Alphabet>,
    order: u32,
) -> NcSeries {
    let mut out = NcSeries::zero(target, order);
    for ((d, word), c) in s.terms() {
        for (w, wc) in substitute_word(word, images) {
            out.add_term(*d, w, c * &wc);
        }
    }
    out
}

/// Raw linear substitution applied to every leg of a tensor.
fn substitute_tensor(
    t: &TensorElement,
    images: &LetterImages,
    target: &Arc<Alphabet>,
    order: u32,
) -> TensorElement {
    let mut out = TensorElement::zero(target, order, t.rank());
    for ((d, legs), c) in t.terms() {
        let mut acc: Vec<(Vec<Monomial>, Coeff)> =
            vec![(Vec::with_capacity(legs.len()), c.clone())];
        for leg in legs {
            let expanded = substitute_word(leg, images);
            let mut next = Vec::with_capacity(acc.len() * expanded.len().max(1));
            for (done, cc) in &acc {
                for (w, wc) in &expanded {
                    let mut nd = done.clone();
                    nd.push(w.clone());
                    next.push((nd, cc * wc));
                }
            }
            acc = next;
        }
        for (legs, cc) in acc {
            out.add_term(*d, legs, cc);
        }
    }
    out
}

/// Rebuild a series over an alphabet with identical rank structure,
/// optionally shifting letter ranks.
fn shift_series(s: &NcSeries, target: &Arc<Alphabet>, offset: u8, order: u32) -> NcSeries {
    let mut out = NcSeries::zero(target, order);
    for ((d, word), c) in s.terms() {
        out.add_term(*d, Monomial(word.0.iter().map(|l| l + offset).collect()), c.clone());
    }
    out
}

fn shift_tensor(t: &TensorElement, target: &Arc<Alphabet>, offset: u8, order: u32) -> TensorElement {
    let mut out = TensorElement::zero(target, order, t.rank());
    for ((d, legs), c) in t.terms() {
        let nw: Vec<Monomial> =
            legs.iter().map(|w| Monomial(w.0.iter().map(|l| l + offset).collect())).collect();
        out.add_term(*d, nw, c.clone());
    }
    out
}

fn negate_odd_tensor(t: &TensorElement) -> TensorElement {
    let mut out = TensorElement::zero(t.alphabet(), t.order(), t.rank());
    for ((d, legs), c) in t.terms() {
        let nc = if d % 2 == 1 { -c } else { c.clone() };
        out.add_term(*d, legs.clone(), nc);
    }
    out
}

/// Rename every generator through `f`, keeping ranks, weights, brackets and
/// coproducts.
pub fn rename(
    p: &Presentation,
    new_name: &str,
    f: impl Fn(&str) -> String,
) -> Result<Presentation> {
    let src = p.system().alphabet();
    let gens: Vec<GenInfo> = src
        .ranks()
        .map(|r| GenInfo { name: f(src.gen_name(r)), weight: src.weight(r) })
        .collect();
    let target = Alphabet::new(new_name, gens, src.deformation())?;
    let order = p.system().order();
    let entries: Vec<(u8, u8, NcSeries)> = p
        .system()
        .bracket_entries()
        .map(|((hi, lo), v)| (hi, lo, shift_series(v, &target, 0, order)))
        .collect();
    let system = BracketSystem::new(target.clone(), order, entries)?;
    let coproducts: Vec<(String, TensorElement)> = p
        .coproducts()
        .map(|(gen, t)| (f(gen), shift_tensor(t, &target, 0, order)))
        .collect();
    Presentation::new(
        new_name,
        p.family(),
        p.is_classical(),
        system,
        coproducts,
        None,
        p.hopf_subalgebra().iter().map(|g| f(g)).collect(),
        p.stability_subgroup().iter().map(|g| f(g)).collect(),
    )
}

/// Flip the sign of the deformation parameter: negate every odd z-degree in
/// brackets and coproducts.
pub fn opposite_deformation(p: &Presentation, new_name: &str) -> Result<Presentation> {
    let target = p.system().alphabet().clone();
    let order = p.system().order();
    let entries: Vec<(u8, u8, NcSeries)> =
        p.system().bracket_entries().map(|((hi, lo), v)| (hi, lo, v.negate_odd_z())).collect();
    let system = BracketSystem::new(target, order, entries)?;
    let coproducts: Vec<(String, TensorElement)> =
        p.coproducts().map(|(gen, t)| (gen.to_string(), negate_odd_tensor(t))).collect();
    Presentation::new(
        new_name,
        p.family(),
        p.is_classical(),
        system,
        coproducts,
        None,
        p.hopf_subalgebra().iter().map(|s| s.to_string()).collect(),
        p.stability_subgroup().iter().map(|s| s.to_string()).collect(),
    )
}

/// Two commuting copies side by side; generator names must stay distinct.
pub fn direct_sum(a: &Presentation, b: &Presentation, new_name: &str) -> Result<Presentation> {
    let (sa, sb) = (a.system().alphabet(), b.system().alphabet());
    let mut gens: Vec<GenInfo> =
        sa.ranks().map(|r| GenInfo { name: sa.gen_name(r).to_string(), weight: sa.weight(r) }).collect();
    for r in sb.ranks() {
        let name = sb.gen_name(r).to_string();
        if gens.iter().any(|g| g.name == name) {
            return Err(Error::NameCollision { name });
        }
        gens.push(GenInfo { name, weight: sb.weight(r) });
    }
    let target = Alphabet::new(new_name, gens, sa.deformation())?;
    let order = a.system().order().min(b.system().order());
    let offset = sa.len() as u8;
    let mut entries: Vec<(u8, u8, NcSeries)> = a
        .system()
        .bracket_entries()
        .map(|((hi, lo), v)| (hi, lo, shift_series(v, &target, 0, order)))
        .collect();
    entries.extend(
        b.system()
            .bracket_entries()
            .map(|((hi, lo), v)| (hi + offset, lo + offset, shift_series(v, &target, offset, order))),
    );
    let system = BracketSystem::new(target.clone(), order, entries)?;
    let mut coproducts: Vec<(String, TensorElement)> = a
        .coproducts()
        .map(|(gen, t)| (gen.to_string(), shift_tensor(t, &target, 0, order)))
        .collect();
    coproducts.extend(
        b.coproducts().map(|(gen, t)| (gen.to_string(), shift_tensor(t, &target, offset, order))),
    );
    let mut hopf: Vec<String> = a.hopf_subalgebra().iter().map(|s| s.to_string()).collect();
    hopf.extend(b.hopf_subalgebra().iter().map(|s| s.to_string()));
    Presentation::new(
        new_name,
        Family::Custom,
        a.is_classical() && b.is_classical(),
        system,
        coproducts,
        None,
        hopf,
        Vec::new(),
    )
}

/// Transport a presentation through an invertible linear change of
/// generators.
pub fn change_basis(
    p: &Presentation,
    change: &LinearBasisChange,
    new_name: &str,
    family: Family,
    hopf_subalgebra: Vec<String>,
) -> Result<Presentation> {
    let src = p.system();
    let order = src.order();
    if change.matrix.len() != src.alphabet().len() {
        return Err(Error::InvalidConfig(
            "basis change must cover every source generator".into(),
        ));
    }
    let inverse = invert_matrix(&change.matrix)?;
    let images = letter_images_from_matrix(&inverse);
    // Target generator images inside the source algebra.
    let target_in_source: Vec<NcSeries> = change
        .matrix
        .iter()
        .map(|row| {
            let mut s = src.zero();
            for (j, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    s.add_term(0, Monomial::gen(j as u8), c.clone());
                }
            }
            s
        })
        .collect();
    let n = change.target.len() as u8;
    let mut entries = Vec::new();
    for hi in 0..n {
        for lo in 0..hi {
            let value = src.comm(&target_in_source[hi as usize], &target_in_source[lo as usize])?;
            if value.is_zero() {
                continue;
            }
            let raw = substitute_series(&value, &images, &change.target, order);
            entries.push((hi, lo, raw));
        }
    }
    let system = BracketSystem::new(change.target.clone(), order, entries)?;
    let coproducts: Vec<(String, TensorElement)> = if p.is_classical() {
        Vec::new()
    } else {
        let mut out = Vec::new();
        for i in 0..n {
            let row = &change.matrix[i as usize];
            let mut acc = TensorElement::zero(src.alphabet(), order, 2);
            for (j, c) in row.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let d = p.coproduct(src.alphabet().gen_name(j as u8))?;
                acc = acc.add(&d.scal(c))?;
            }
            let raw = substitute_tensor(&acc, &images, &change.target, order);
            out.push((change.target.gen_name(i).to_string(), raw));
        }
        out
    };
    Presentation::new(
        new_name,
        family,
        p.is_classical(),
        system,
        coproducts,
        None,
        hopf_subalgebra,
        Vec::new(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::load;

    #[test]
    fn matrix_inverse_round_trips() {
        let half = Coeff::rational(1, 2);
        let m = vec![
            vec![half.clone(), half.clone()],
            vec![half.clone(), -&half],
        ];
        let inv = invert_matrix(&m).unwrap();
        let product: Vec<Vec<Coeff>> = m
            .iter()
            .map(|m_row| {
                (0..2)
                    .map(|j| {
                        let mut sum = Coeff::zero();
                        for (k, a) in m_row.iter().enumerate() {
                            sum += &(a * &inv[k][j]);
                        }
                        sum
                    })
                    .collect()
            })
            .collect();
        let identity = vec![
            vec![Coeff::one(), Coeff::zero()],
            vec![Coeff::zero(), Coeff::one()],
        ];
        assert_eq!(product, identity);
        let singular = vec![vec![Coeff::one(), Coeff::one()], vec![Coeff::one(), Coeff::one()]];
        assert!(matches!(invert_matrix(&singular), Err(Error::SingularMap)));
    }

    #[test]
    fn rename_then_direct_sum_keeps_copies_commuting() {
        let a = load("poincare-1+1-classical", 3).unwrap();
        let c1 = rename(&a, "copy1", |g| format!("{g}1")).unwrap();
        let c2 = rename(&a, "copy2", |g| format!("{g}2")).unwrap();
        let sum = direct_sum(&c1, &c2, "pair").unwrap();
        let k1 = sum.gen("K1").unwrap();
        let p2 = sum.gen("P+2").unwrap();
        assert!(sum.comm(&k1, &p2).unwrap().is_zero());
        let p1 = sum.gen("P+1").unwrap();
        assert_eq!(sum.comm(&k1, &p1).unwrap(), p1);
        assert!(matches!(
            direct_sum(&c1, &c1, "clash"),
            Err(Error::NameCollision { .. })
        ));
    }

    #[test]
    fn identity_basis_change_preserves_tables() {
        let p = load("poincare-1+1-quantum", 3).unwrap();
        let target = p.system().alphabet().clone();
        let n = target.len();
        let matrix: Vec<Vec<Coeff>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { Coeff::one() } else { Coeff::zero() }).collect())
            .collect();
        let change = LinearBasisChange::new(target, matrix).unwrap();
        let q = change_basis(&p, &change, "same", Family::Custom, Vec::new()).unwrap();
        assert!(p.same_structure(&q).unwrap().is_empty());
    }

    #[test]
    fn opposite_deformation_flips_odd_degrees() {
        let p = load("poincare-1+1-quantum", 3).unwrap();
        let q = opposite_deformation(&p, "opposite").unwrap();
        let k = p.gen("K").unwrap();
        let pp = p.gen("P+").unwrap();
        let orig = p.comm(&k, &pp).unwrap();
        let flipped = q.comm(&q.gen("K").unwrap(), &q.gen("P+").unwrap()).unwrap();
        assert_eq!(flipped.remap(p.system().alphabet(), 3).unwrap(), orig.negate_odd_z());
    }
}
