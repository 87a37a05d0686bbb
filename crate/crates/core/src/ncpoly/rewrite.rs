//! PBW normal ordering by term rewriting.
//!
//! A `BracketSystem` holds an ordered alphabet together with the commutators
//! `[x, y]` of all non-commuting generator pairs, each stored as a series that
//! is pre-expanded to the working truncation order.  An out-of-order adjacent
//! pair `x y` (rank(x) > rank(y)) rewrites to `y x + [x, y]`.
//!
//! Termination: a swap keeps the z-degree and word length and strictly lowers
//! the inversion count, and every admissible bracket value consists of words
//! that are either strictly shorter or carry strictly higher effective degree,
//! so the lexicographic measure (remaining degree budget, word length,
//! inversions) decreases.  A step budget still guards against user-supplied
//! tables that break the admissibility contract.

use super::{check_same_alphabet, Alphabet, Monomial, NcSeries};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

/// Default rewrite step budget.
pub const DEFAULT_STEP_BUDGET: u64 = 10_000_000;

/// Expansion of a single word into normal terms `(z-degree shift, word, coeff)`.
type Expansion = Vec<(u32, Monomial, Coeff)>;

/// Rewrite strategy; `Leftmost` is the production path, `Rightmost` exists so
/// tests can confirm that the normal form does not depend on rewrite order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

/// Scaling of the deformation parameter under substitution:
/// `z -> coeff * z'^power`.
#[derive(Clone, Debug)]
pub struct ParamScale {
    pub coeff: Coeff,
    pub power: u32,
}

impl ParamScale {
    pub fn identity() -> Self {
        ParamScale { coeff: Coeff::one(), power: 1 }
    }
}

/// An ordered alphabet with bracket table, truncation order and a
/// straightening cache.
///
/// `Debug` prints a compact header only; the cache is runtime state.
pub struct BracketSystem {
    alphabet: Arc<Alphabet>,
    order: u32,
    /// `[g_hi, g_lo]` keyed by `(hi, lo)` with `hi > lo`; absent pairs commute.
    brackets: BTreeMap<(u8, u8), NcSeries>,
    step_budget: u64,
    cache: Mutex<HashMap<Monomial, Arc<Expansion>>>,
}

impl std::fmt::Debug for BracketSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "BracketSystem({}, order {}, {} bracket pairs)",
            self.alphabet.name(),
            self.order,
            self.brackets.len()
        )
    }
}

impl BracketSystem {
    /// Build a system from bracket entries in either orientation.  Values are
    /// checked for admissibility (no term below the effective degree of the
    /// generator pair, which is what makes truncation a two-sided ideal) and
    /// then brought to normal form themselves.
    pub fn new(
        alphabet: Arc<Alphabet>,
        order: u32,
        entries: Vec<(u8, u8, NcSeries)>,
    ) -> Result<Self> {
        Self::new_with_budget(alphabet, order, entries, DEFAULT_STEP_BUDGET)
    }

    /// As `new`, with an explicit rewrite step budget (also applied to the
    /// construction-time normalization of the bracket values).
    pub fn new_with_budget(
        alphabet: Arc<Alphabet>,
        order: u32,
        entries: Vec<(u8, u8, NcSeries)>,
        step_budget: u64,
    ) -> Result<Self> {
        let mut brackets: BTreeMap<(u8, u8), NcSeries> = BTreeMap::new();
        for (i, j, value) in entries {
            if i == j {
                return Err(Error::InvalidConfig(format!(
                    "bracket [{x}, {x}] of a generator with itself",
                    x = alphabet.gen_name(i)
                )));
            }
            check_same_alphabet(&alphabet, value.alphabet())?;
            let (key, value) = if i > j { ((i, j), value.truncated(order)) } else { ((j, i), value.truncated(order).neg()) };
            if brackets.contains_key(&key) {
                return Err(Error::InvalidConfig(format!(
                    "bracket [{}, {}] specified twice",
                    alphabet.gen_name(key.0),
                    alphabet.gen_name(key.1)
                )));
            }
            let pair_weight = alphabet.weight(key.0) + alphabet.weight(key.1);
            for ((d, w), _) in value.terms() {
                if d + w.weight(&alphabet) < pair_weight {
                    return Err(Error::InvalidConfig(format!(
                        "bracket [{}, {}] has a term below the effective degree of the pair; \
                         truncation would not be an ideal",
                        alphabet.gen_name(key.0),
                        alphabet.gen_name(key.1)
                    )));
                }
            }
            if !value.is_zero() {
                brackets.insert(key, value);
            }
        }
        let mut sys = BracketSystem {
            alphabet,
            order,
            brackets,
            step_budget,
            cache: Mutex::new(HashMap::new()),
        };
        // Bring the stored values themselves to normal form.  Rewriting with
        // the raw values generates the same two-sided ideal, so the result is
        // the same normal form the finished system would produce.
        let keys: Vec<(u8, u8)> = sys.brackets.keys().cloned().collect();
        for key in keys {
            let value = sys.brackets[&key].clone();
            let normal = sys.normalize(&value)?;
            if normal.is_zero() {
                sys.brackets.remove(&key);
            } else {
                sys.brackets.insert(key, normal);
            }
        }
        sys.cache.lock().unwrap().clear();
        Ok(sys)
    }

    pub fn with_step_budget(mut self, budget: u64) -> Self {
        self.step_budget = budget;
        self
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    /// The stored bracket `[x, y]` for ranks `x > y`, if the pair does not
    /// commute.
    pub fn bracket(&self, hi: u8, lo: u8) -> Option<&NcSeries> {
        debug_assert!(hi > lo);
        self.brackets.get(&(hi, lo))
    }

    /// `[a, b]` of two generators in either orientation, as a series.
    pub fn bracket_of(&self, a: u8, b: u8) -> NcSeries {
        if a == b {
            return self.zero();
        }
        let (hi, lo, flip) = if a > b { (a, b, false) } else { (b, a, true) };
        match self.brackets.get(&(hi, lo)) {
            Some(v) => {
                if flip {
                    v.neg()
                } else {
                    v.clone()
                }
            }
            None => self.zero(),
        }
    }

    pub fn bracket_pairs(&self) -> impl Iterator<Item = (u8, u8)> + '_ {
        self.brackets.keys().cloned()
    }

    pub fn bracket_entries(&self) -> impl Iterator<Item = ((u8, u8), &NcSeries)> {
        self.brackets.iter().map(|(k, v)| (*k, v))
    }

    pub fn zero(&self) -> NcSeries {
        NcSeries::zero(&self.alphabet, self.order)
    }

    pub fn one(&self) -> NcSeries {
        NcSeries::one(&self.alphabet, self.order)
    }

    pub fn gen(&self, name: &str) -> Result<NcSeries> {
        NcSeries::generator_named(&self.alphabet, self.order, name)
    }

    pub fn gen_rank(&self, rank: u8) -> NcSeries {
        NcSeries::generator(&self.alphabet, self.order, rank)
    }

    /// Straighten a single word, memoized.  Entries are relative to z-degree
    /// zero; callers shift by the base degree and re-filter against the
    /// truncation order.
    pub fn expand(&self, word: &Monomial) -> Result<Arc<Expansion>> {
        if word.is_normal() {
            return Ok(Arc::new(vec![(0, word.clone(), Coeff::one())]));
        }
        if let Some(hit) = self.cache.lock().unwrap().get(word) {
            return Ok(hit.clone());
        }
        let expansion = self.straighten(word, Strategy::Leftmost)?;
        let arc = Arc::new(expansion);
        self.cache.lock().unwrap().insert(word.clone(), arc.clone());
        Ok(arc)
    }

    fn straighten(&self, word: &Monomial, strategy: Strategy) -> Result<Expansion> {
        let mut out: BTreeMap<(u32, Monomial), Coeff> = BTreeMap::new();
        let mut pending: Vec<(u32, Monomial, Coeff)> = vec![(0, word.clone(), Coeff::one())];
        let mut steps: u64 = 0;
        while let Some((d, u, c)) = pending.pop() {
            let pos = match strategy {
                Strategy::Leftmost => u.first_inversion(),
                Strategy::Rightmost => u.last_inversion(),
            };
            let Some(pos) = pos else {
                if d + u.weight(&self.alphabet) <= self.order {
                    let entry = out.entry((d, u)).or_insert_with(Coeff::zero);
                    *entry += &c;
                }
                continue;
            };
            steps += 1;
            if steps > self.step_budget {
                return Err(Error::TerminationBudget { budget: self.step_budget });
            }
            let (x, y) = (u.0[pos], u.0[pos + 1]);
            let mut swapped = u.clone();
            swapped.0.swap(pos, pos + 1);
            pending.push((d, swapped, c.clone()));
            if let Some(br) = self.bracket(x, y) {
                for ((bd, bw), bc) in br.terms() {
                    let nd = d + bd;
                    let nw = u.splice_pair(pos, bw);
                    if nd + nw.weight(&self.alphabet) > self.order {
                        continue;
                    }
                    pending.push((nd, nw, &c * bc));
                }
            }
        }
        Ok(out
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .map(|((d, w), c)| (d, w, c))
            .collect())
    }

    /// PBW normal form of a series.
    pub fn normalize(&self, s: &NcSeries) -> Result<NcSeries> {
        check_same_alphabet(&self.alphabet, s.alphabet())?;
        let order = s.order().min(self.order);
        let mut out = NcSeries::zero(&self.alphabet, order);
        for ((d, w), c) in s.terms() {
            if w.is_normal() {
                out.add_term(*d, w.clone(), c.clone());
                continue;
            }
            for (delta, nw, nc) in self.expand(w)?.iter() {
                out.add_term(d + delta, nw.clone(), c * nc);
            }
        }
        Ok(out)
    }

    /// Normal form computed with an explicit strategy, bypassing the cache.
    /// Exists so tests can compare rewrite orders.
    pub fn normalize_with_strategy(&self, s: &NcSeries, strategy: Strategy) -> Result<NcSeries> {
        check_same_alphabet(&self.alphabet, s.alphabet())?;
        let order = s.order().min(self.order);
        let mut out = NcSeries::zero(&self.alphabet, order);
        for ((d, w), c) in s.terms() {
            for (delta, nw, nc) in self.straighten(w, strategy)? {
                out.add_term(d + delta, nw.clone(), &c.clone() * &nc);
            }
        }
        Ok(out)
    }

    /// Normalized product.  Degree pruning happens before any straightening:
    /// a raw concatenation already past the truncation order is dropped.
    pub fn mul(&self, a: &NcSeries, b: &NcSeries) -> Result<NcSeries> {
        check_same_alphabet(&self.alphabet, a.alphabet())?;
        check_same_alphabet(&self.alphabet, b.alphabet())?;
        let order = self.order.min(a.order()).min(b.order());
        // Group the raw concatenations first so each distinct word is
        // straightened once.
        let mut raw: BTreeMap<(u32, Monomial), Coeff> = BTreeMap::new();
        for ((da, wa), ca) in a.terms() {
            for ((db, wb), cb) in b.terms() {
                let d = da + db;
                if d + wa.weight(&self.alphabet) + wb.weight(&self.alphabet) > order {
                    continue;
                }
                let c = ca * cb;
                if c.is_zero() {
                    continue;
                }
                let key = (d, wa.concat(wb));
                let entry = raw.entry(key).or_insert_with(Coeff::zero);
                *entry += &c;
            }
        }
        let mut out = NcSeries::zero(&self.alphabet, order);
        for ((d, w), c) in raw {
            if c.is_zero() {
                continue;
            }
            if w.is_normal() {
                out.add_term(d, w, c);
                continue;
            }
            for (delta, nw, nc) in self.expand(&w)?.iter() {
                out.add_term(d + delta, nw.clone(), &c * nc);
            }
        }
        Ok(out)
    }

    /// Commutator `a b - b a`, normalized.
    pub fn comm(&self, a: &NcSeries, b: &NcSeries) -> Result<NcSeries> {
        self.mul(a, b)?.sub(&self.mul(b, a)?)
    }

    pub fn pow(&self, a: &NcSeries, k: u32) -> Result<NcSeries> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// Exponential of a series whose every term has effective degree >= 1
    /// (anything else makes the exponential escape the truncation model).
    pub fn exp(&self, a: &NcSeries) -> Result<NcSeries> {
        check_same_alphabet(&self.alphabet, a.alphabet())?;
        if a.min_effective_degree() == Some(0) {
            return Err(Error::IllDefinedExponential);
        }
        let mut result = self.one();
        let mut term = self.one();
        for k in 1..=(self.order + 1) {
            term = self.mul(&term, a)?.scal(&Coeff::rational(1, i64::from(k)));
            if term.is_zero() {
                break;
            }
            result = result.add(&term)?;
        }
        Ok(result)
    }

    /// Homomorphic substitution: every generator is replaced by its image in
    /// `target` and `z` by `param.coeff * z^param.power`.  Images multiply in
    /// the order the letters appear.
    pub fn substitute(
        &self,
        a: &NcSeries,
        map: &BTreeMap<u8, NcSeries>,
        param: &ParamScale,
        target: &BracketSystem,
    ) -> Result<NcSeries> {
        check_same_alphabet(&self.alphabet, a.alphabet())?;
        let mut out = target.zero();
        for ((d, w), c) in a.terms() {
            let scale = c * &param.coeff.pow(*d);
            if scale.is_zero() {
                continue;
            }
            let mut acc = target.zero();
            acc.add_term(d * param.power, Monomial::one(), scale);
            for &letter in &w.0 {
                if acc.is_zero() {
                    break;
                }
                let img = map.get(&letter).ok_or_else(|| Error::UnmappedGenerator {
                    name: self.alphabet.gen_name(letter).to_string(),
                })?;
                acc = target.mul(&acc, img)?;
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Equality in the quotient: the normal form of `a - b` is empty.
    pub fn equal(&self, a: &NcSeries, b: &NcSeries) -> Result<bool> {
        Ok(self.normalize(&a.sub(b)?)?.is_zero())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::fixtures::quantum_11;
    use crate::ncpoly::GenInfo;

    #[test]
    fn straightening_matches_hand_expansion() {
        // K * P+ = P+ K + P+ + z P+^2 + 2/3 z^2 P+^3 at order 2.
        let sys = quantum_11(2);
        let prod = sys.mul(&sys.gen("K").unwrap(), &sys.gen("P+").unwrap()).unwrap();
        assert_eq!(prod.coeff_of(0, &Monomial(vec![0, 2])), Coeff::one());
        assert_eq!(prod.coeff_of(0, &Monomial(vec![0])), Coeff::one());
        assert_eq!(prod.coeff_of(1, &Monomial(vec![0, 0])), Coeff::one());
        assert_eq!(prod.coeff_of(2, &Monomial(vec![0, 0, 0])), Coeff::rational(2, 3));
        assert_eq!(prod.term_count(), 4);
    }

    #[test]
    fn normalize_is_idempotent() {
        let sys = quantum_11(3);
        let word = NcSeries::generator(&sys.alphabet, 3, 2); // K
        let prod = sys.mul(&word, &sys.mul(&sys.gen("P+").unwrap(), &sys.gen("P-").unwrap()).unwrap()).unwrap();
        let once = sys.normalize(&prod).unwrap();
        let twice = sys.normalize(&once).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn rewrite_strategies_agree() {
        let sys = quantum_11(3);
        let mut s = NcSeries::zero(&sys.alphabet, 3);
        s.add_term(0, Monomial(vec![2, 0, 2, 1]), Coeff::one()); // K P+ K P-
        s.add_term(1, Monomial(vec![2, 2, 0]), Coeff::rational(-1, 2)); // K K P+
        let left = sys.normalize_with_strategy(&s, Strategy::Leftmost).unwrap();
        let right = sys.normalize_with_strategy(&s, Strategy::Rightmost).unwrap();
        assert_eq!(left, right);
    }

    #[test]
    fn product_is_associative_on_samples() {
        let sys = quantum_11(3);
        let k = sys.gen("K").unwrap();
        let pp = sys.gen("P+").unwrap();
        let pm = sys.gen("P-").unwrap();
        let ab_c = sys.mul(&sys.mul(&k, &pp).unwrap(), &pm).unwrap();
        let a_bc = sys.mul(&k, &sys.mul(&pp, &pm).unwrap()).unwrap();
        assert_eq!(ab_c, a_bc);
    }

    #[test]
    fn exp_inverse_cancels() {
        let sys = quantum_11(4);
        let two_z_pplus = sys.gen("P+").unwrap().z_shift(1).scal(&Coeff::integer(2));
        let e = sys.exp(&two_z_pplus).unwrap();
        let e_inv = sys.exp(&two_z_pplus.neg()).unwrap();
        let prod = sys.mul(&e, &e_inv).unwrap();
        assert_eq!(prod, sys.one());
    }

    #[test]
    fn exp_of_degree_zero_is_rejected() {
        let sys = quantum_11(3);
        assert!(matches!(sys.exp(&sys.gen("K").unwrap()), Err(Error::IllDefinedExponential)));
    }

    #[test]
    fn nonterminating_table_hits_step_budget() {
        // [Y, X] = Y X keeps reintroducing the inversion it rewrites, so the
        // construction-time normalization of the value itself must trip the
        // budget.
        let alph = Alphabet::plain("bad", &["X", "Y"], Some("z")).unwrap();
        let mut val = NcSeries::zero(&alph, 2);
        val.add_term(0, Monomial(vec![1, 0]), Coeff::one());
        let err = BracketSystem::new_with_budget(alph, 2, vec![(1, 0, val)], 10_000).unwrap_err();
        assert!(matches!(err, Error::TerminationBudget { .. }));
    }

    #[test]
    fn substitution_is_homomorphic() {
        // A |-> 2K under the identity parameter map.
        let src = BracketSystem::new(
            Alphabet::plain("src", &["A"], Some("z")).unwrap(),
            3,
            vec![],
        )
        .unwrap();
        let dst = quantum_11(3);
        let a_sq = src.mul(&src.gen("A").unwrap(), &src.gen("A").unwrap()).unwrap();
        let mut map = BTreeMap::new();
        map.insert(0u8, dst.gen("K").unwrap().scal(&Coeff::integer(2)));
        let img = src.substitute(&a_sq, &map, &ParamScale::identity(), &dst).unwrap();
        assert_eq!(img.coeff_of(0, &Monomial(vec![2, 2])), Coeff::integer(4));
        assert_eq!(img.term_count(), 1);
    }

    #[test]
    fn weighted_alphabet_rewrites_under_length_budget() {
        // Dual-group pattern: [th, a+] = 2 z (e^th - 1), both letters weight 1.
        let alph = Alphabet::new(
            "dual-test",
            vec![GenInfo { name: "a+".into(), weight: 1 }, GenInfo { name: "th".into(), weight: 1 }],
            Some("z"),
        )
        .unwrap();
        let order = 4;
        let mut bracket = NcSeries::zero(&alph, order);
        let mut fact = 1i64;
        for k in 1..=order {
            fact *= i64::from(k);
            // 2 z th^k / k!, effective degree 1 + k.
            bracket.add_term(1, Monomial::power(1, k as usize), Coeff::rational(2, fact));
        }
        let sys = BracketSystem::new(alph, order, vec![(1, 0, bracket)]).unwrap();
        // th * a+ = a+ th + 2 z th + z th^2 + ...
        let prod = sys.mul(&sys.gen("th").unwrap(), &sys.gen("a+").unwrap()).unwrap();
        assert_eq!(prod.coeff_of(0, &Monomial(vec![0, 1])), Coeff::one());
        assert_eq!(prod.coeff_of(1, &Monomial(vec![1])), Coeff::integer(2));
        assert_eq!(prod.coeff_of(1, &Monomial(vec![1, 1])), Coeff::one());
        // Effective degree caps the expansion: 1 + 3 <= 4 keeps th^3, nothing longer.
        assert_eq!(prod.coeff_of(1, &Monomial(vec![1, 1, 1])), Coeff::rational(1, 3));
        assert_eq!(prod.coeff_of(1, &Monomial(vec![1, 1, 1, 1])), Coeff::zero());
    }
}
