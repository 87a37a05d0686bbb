//! Noncommutative polynomial arithmetic: truncated formal power series in a
//! central deformation parameter `z` over words in a finite ordered alphabet
//! of generators, with exact coefficients in Q(sqrt 2).
//!
//! A term is `c * z^d * g_{i_1} ... g_{i_k}`.  Series are truncated by
//! *effective degree*: the z-degree plus the sum of the letter weights of the
//! word.  Ordinary enveloping-algebra generators have weight 0, so the cut is
//! the plain z-order; dual-group coordinates carry weight 1, which makes the
//! word-length budget of the dual pairing one and the same truncation.

mod expr;
mod rewrite;

pub use expr::{parse_expr, parse_series, print_series, print_term, Expr};
pub use rewrite::{BracketSystem, ParamScale, Strategy, DEFAULT_STEP_BUDGET};

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// One generator: a display name and a truncation weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenInfo {
    pub name: String,
    pub weight: u32,
}

/// An ordered generator alphabet.  The position of a generator in `gens` is
/// its PBW rank: normal words are weakly increasing in rank.
#[derive(Debug, PartialEq, Eq)]
pub struct Alphabet {
    name: String,
    gens: Vec<GenInfo>,
    deformation: Option<String>,
}

impl Alphabet {
    pub fn new(name: &str, gens: Vec<GenInfo>, deformation: Option<&str>) -> Result<Arc<Self>> {
        assert!(gens.len() <= u8::MAX as usize, "alphabet too large");
        for (i, g) in gens.iter().enumerate() {
            if gens[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::NameCollision { name: g.name.clone() });
            }
        }
        Ok(Arc::new(Alphabet {
            name: name.to_string(),
            gens,
            deformation: deformation.map(str::to_string),
        }))
    }

    /// Alphabet with the given generator names, all of weight 0.
    pub fn plain(name: &str, gen_names: &[&str], deformation: Option<&str>) -> Result<Arc<Self>> {
        Self::new(
            name,
            gen_names.iter().map(|n| GenInfo { name: n.to_string(), weight: 0 }).collect(),
            deformation,
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gen_name(&self, rank: u8) -> &str {
        &self.gens[rank as usize].name
    }

    pub fn weight(&self, rank: u8) -> u32 {
        self.gens[rank as usize].weight
    }

    pub fn deformation(&self) -> Option<&str> {
        self.deformation.as_deref()
    }

    pub fn rank_of(&self, name: &str) -> Result<u8> {
        self.gens
            .iter()
            .position(|g| g.name == name)
            .map(|i| i as u8)
            .ok_or_else(|| Error::UnknownGenerator { name: name.to_string(), algebra: self.name.clone() })
    }

    pub fn ranks(&self) -> impl Iterator<Item = u8> + '_ {
        0..self.gens.len() as u8
    }

    /// Structural compatibility: same generators (names, weights) in the same
    /// rank order.  The algebra name may differ.
    pub fn compatible(&self, other: &Alphabet) -> bool {
        self.gens == other.gens
    }
}

pub(crate) fn check_same_alphabet(a: &Alphabet, b: &Alphabet) -> Result<()> {
    if a.compatible(b) {
        Ok(())
    } else {
        Err(Error::AlphabetMismatch { left: a.name.clone(), right: b.name.clone() })
    }
}

/// A word in the generators; letters are PBW ranks.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Monomial(pub Vec<u8>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn gen(rank: u8) -> Self {
        Monomial(vec![rank])
    }

    pub fn power(rank: u8, k: usize) -> Self {
        Monomial(vec![rank; k])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self, alphabet: &Alphabet) -> u32 {
        self.0.iter().map(|&l| alphabet.weight(l)).sum()
    }

    /// Position `k` of the first adjacent pair with rank(w[k]) > rank(w[k+1]),
    /// or None when the word is PBW-normal.
    pub fn first_inversion(&self) -> Option<usize> {
        self.0.windows(2).position(|p| p[0] > p[1])
    }

    pub fn last_inversion(&self) -> Option<usize> {
        (0..self.0.len().saturating_sub(1)).rev().find(|&k| self.0[k] > self.0[k + 1])
    }

    pub fn is_normal(&self) -> bool {
        self.first_inversion().is_none()
    }

    pub fn concat(&self, other: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Monomial(v)
    }

    /// Replace the two letters at `pos`, `pos + 1` by the word `mid`.
    pub fn splice_pair(&self, pos: usize, mid: &Monomial) -> Monomial {
        let mut v = Vec::with_capacity(self.0.len() + mid.0.len() - 2);
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(&mid.0);
        v.extend_from_slice(&self.0[pos + 2..]);
        Monomial(v)
    }

    pub fn display<'a>(&'a self, alphabet: &'a Alphabet) -> impl fmt::Display + 'a {
        struct D<'a>(&'a Monomial, &'a Alphabet);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                if self.0.is_empty() {
                    return write!(f, "1");
                }
                for (i, &l) in self.0 .0.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{}", self.1.gen_name(l))?;
                }
                Ok(())
            }
        }
        D(self, alphabet)
    }
}

/// Key of one series term: z-degree and word.
pub type TermKey = (u32, Monomial);

/// A truncated series: finitely many terms `c * z^d * word`, all with
/// effective degree at most `order`.
#[derive(Clone, PartialEq, Eq)]
pub struct NcSeries {
    alphabet: Arc<Alphabet>,
    order: u32,
    terms: BTreeMap<TermKey, Coeff>,
}

impl NcSeries {
    pub fn zero(alphabet: &Arc<Alphabet>, order: u32) -> Self {
        NcSeries { alphabet: alphabet.clone(), order, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: &Arc<Alphabet>, order: u32) -> Self {
        let mut s = Self::zero(alphabet, order);
        s.terms.insert((0, Monomial::one()), Coeff::one());
        s
    }

    pub fn generator(alphabet: &Arc<Alphabet>, order: u32, rank: u8) -> Self {
        let mut s = Self::zero(alphabet, order);
        s.add_term(0, Monomial::gen(rank), Coeff::one());
        s
    }

    pub fn generator_named(alphabet: &Arc<Alphabet>, order: u32, name: &str) -> Result<Self> {
        Ok(Self::generator(alphabet, order, alphabet.rank_of(name)?))
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Coeff)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of `z^d * word` (zero when absent).
    pub fn coeff_of(&self, d: u32, word: &Monomial) -> Coeff {
        self.terms.get(&(d, word.clone())).cloned().unwrap_or_else(Coeff::zero)
    }

    /// Insert `c * z^d * word`, combining with an existing term and dropping
    /// zeros and anything beyond the truncation order.
    pub fn add_term(&mut self, d: u32, word: Monomial, c: Coeff) {
        if c.is_zero() || d + word.weight(&self.alphabet) > self.order {
            return;
        }
        let key = (d, word);
        if let Some(entry) = self.terms.get_mut(&key) {
            *entry += &c;
            if entry.is_zero() {
                self.terms.remove(&key);
            }
        } else {
            self.terms.insert(key, c);
        }
    }

    pub fn add(&self, other: &NcSeries) -> Result<NcSeries> {
        check_same_alphabet(&self.alphabet, &other.alphabet)?;
        let order = self.order.min(other.order);
        let mut out = self.truncated(order);
        for ((d, w), c) in &other.terms {
            out.add_term(*d, w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &NcSeries) -> Result<NcSeries> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> NcSeries {
        self.map_coeffs(|c| -c)
    }

    pub fn scal(&self, c: &Coeff) -> NcSeries {
        if c.is_zero() {
            return NcSeries::zero(&self.alphabet, self.order);
        }
        self.map_coeffs(|v| v * c)
    }

    fn map_coeffs(&self, f: impl Fn(&Coeff) -> Coeff) -> NcSeries {
        let mut out = NcSeries::zero(&self.alphabet, self.order);
        for ((d, w), c) in &self.terms {
            let nc = f(c);
            if !nc.is_zero() {
                out.terms.insert((*d, w.clone()), nc);
            }
        }
        out
    }

    /// Multiply by z^k.
    pub fn z_shift(&self, k: u32) -> NcSeries {
        let mut out = NcSeries::zero(&self.alphabet, self.order);
        for ((d, w), c) in &self.terms {
            out.add_term(d + k, w.clone(), c.clone());
        }
        out
    }

    /// The same series viewed at a (usually lower) truncation order.
    pub fn truncated(&self, order: u32) -> NcSeries {
        let mut out = NcSeries::zero(&self.alphabet, order);
        for ((d, w), c) in &self.terms {
            out.add_term(*d, w.clone(), c.clone());
        }
        out
    }

    /// Terms of exact z-degree `d`, as a series.
    pub fn z_component(&self, d: u32) -> NcSeries {
        let mut out = NcSeries::zero(&self.alphabet, self.order);
        for ((deg, w), c) in &self.terms {
            if *deg == d {
                out.terms.insert((*deg, w.clone()), c.clone());
            }
        }
        out
    }

    /// Smallest effective degree among the terms (None for the zero series).
    pub fn min_effective_degree(&self) -> Option<u32> {
        self.terms.iter().map(|((d, w), _)| d + w.weight(&self.alphabet)).min()
    }

    /// Canonical text for each term (used for residual samples in reports).
    pub fn term_strings(&self) -> Vec<String> {
        let mut terms: Vec<(&TermKey, &Coeff)> = self.terms.iter().collect();
        terms.sort_by(|x, y| expr::term_order(x.0, y.0));
        terms.iter().map(|((d, w), c)| expr::print_term(*d, w, c, &self.alphabet)).collect()
    }

    /// Negate the coefficient of every odd z-degree term (z -> -z).
    pub fn negate_odd_z(&self) -> NcSeries {
        let mut out = NcSeries::zero(&self.alphabet, self.order);
        for ((d, w), c) in &self.terms {
            let c = if d % 2 == 1 { -c } else { c.clone() };
            out.terms.insert((*d, w.clone()), c);
        }
        out
    }

    /// True when every coefficient is rational (no sqrt(2) component).
    pub fn is_rational(&self) -> bool {
        self.terms.values().all(Coeff::is_rational)
    }

    /// Rebuild this series over a compatible-by-name alphabet (same generator
    /// names, possibly different algebra name / rank order / weights).
    pub fn remap(&self, target: &Arc<Alphabet>, target_order: u32) -> Result<NcSeries> {
        let mut table = Vec::with_capacity(self.alphabet.len());
        for r in self.alphabet.ranks() {
            table.push(target.rank_of(self.alphabet.gen_name(r))?);
        }
        let mut out = NcSeries::zero(target, target_order);
        for ((d, w), c) in &self.terms {
            let word = Monomial(w.0.iter().map(|&l| table[l as usize]).collect());
            out.add_term(*d, word, c.clone());
        }
        Ok(out)
    }

    pub fn display(&self) -> String {
        print_series(self)
    }
}

impl fmt::Debug for NcSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

/// Test-only fixture: the 1+1 quantum bracket table built by hand, so lower
/// layers can be exercised without the full presentation machinery.
#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// [K, P+] = (e^{2 z P+} - 1)/(2 z), [K, P-] = -P-, [P+, P-] = 0,
    /// with ranks P+ < P- < K.
    pub(crate) fn quantum_11(order: u32) -> BracketSystem {
        let alph = Alphabet::plain("q11-test", &["P+", "P-", "K"], Some("z")).unwrap();
        let mut k_pplus = NcSeries::zero(&alph, order);
        let mut fact = 1i64;
        for k in 1..=(order + 1) {
            fact *= i64::from(k);
            let c = Coeff::rational(2i64.pow(k - 1), fact);
            k_pplus.add_term(k - 1, Monomial::power(0, k as usize), c);
        }
        let k_pminus = NcSeries::generator(&alph, order, 1).neg();
        BracketSystem::new(alph, order, vec![(2, 0, k_pplus), (2, 1, k_pminus)]).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alph() -> Arc<Alphabet> {
        Alphabet::plain("test", &["P+", "P-", "K"], Some("z")).unwrap()
    }

    #[test]
    fn rank_lookup_and_errors() {
        let a = alph();
        assert_eq!(a.rank_of("K").unwrap(), 2);
        assert!(matches!(a.rank_of("Q"), Err(Error::UnknownGenerator { .. })));
    }

    #[test]
    fn duplicate_names_rejected() {
        assert!(matches!(
            Alphabet::plain("bad", &["X", "X"], None),
            Err(Error::NameCollision { .. })
        ));
    }

    #[test]
    fn monomial_normal_detection() {
        assert!(Monomial(vec![0, 0, 2]).is_normal());
        assert_eq!(Monomial(vec![2, 0]).first_inversion(), Some(0));
        assert_eq!(Monomial(vec![0, 2, 1]).first_inversion(), Some(1));
        assert_eq!(Monomial(vec![2, 1, 0]).last_inversion(), Some(1));
    }

    #[test]
    fn add_term_truncates_and_cancels() {
        let a = alph();
        let mut s = NcSeries::zero(&a, 2);
        s.add_term(3, Monomial::gen(0), Coeff::one()); // beyond order: dropped
        assert!(s.is_zero());
        s.add_term(1, Monomial::gen(0), Coeff::one());
        s.add_term(1, Monomial::gen(0), Coeff::integer(-1));
        assert!(s.is_zero());
    }

    #[test]
    fn weighted_truncation_counts_letters() {
        let a = Alphabet::new(
            "dual",
            vec![
                GenInfo { name: "a+".into(), weight: 1 },
                GenInfo { name: "th".into(), weight: 1 },
            ],
            Some("z"),
        )
        .unwrap();
        let mut s = NcSeries::zero(&a, 2);
        s.add_term(1, Monomial(vec![0, 1]), Coeff::one()); // eff degree 3 > 2
        assert!(s.is_zero());
        s.add_term(0, Monomial(vec![0, 1]), Coeff::one()); // eff degree 2
        assert_eq!(s.term_count(), 1);
    }

    #[test]
    fn add_reconciles_orders_to_min() {
        let a = alph();
        let mut x = NcSeries::zero(&a, 4);
        x.add_term(3, Monomial::gen(0), Coeff::one());
        let y = NcSeries::one(&a, 2);
        let s = x.add(&y).unwrap();
        assert_eq!(s.order(), 2);
        assert_eq!(s.term_count(), 1); // the z^3 term fell below the cut
    }

    #[test]
    fn remap_between_compatible_alphabets() {
        let a = alph();
        let b = Alphabet::plain("other", &["K", "P+", "P-"], Some("z")).unwrap();
        let s = NcSeries::generator(&a, 3, 2); // K
        let t = s.remap(&b, 3).unwrap();
        assert_eq!(t.coeff_of(0, &Monomial::gen(0)), Coeff::one());
    }
}
