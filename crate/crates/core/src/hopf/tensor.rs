//! Rank-k elements of the k-fold tensor power of an algebra.
//!
//! A term is `c * z^d * (w_1 (x) ... (x) w_k)` with each leg a word.  The
//! deformation parameter is shared across legs (it is central and counts once
//! toward the truncation), and the effective degree of a term is the z-degree
//! plus the total letter weight over all legs.

use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::ncpoly::{
    check_same_alphabet, print_term, Alphabet, BracketSystem, Expr, Monomial, NcSeries,
};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

/// Key of one tensor term: shared z-degree and the per-leg words.
pub type TensorKey = (u32, Vec<Monomial>);

#[derive(Clone, PartialEq, Eq)]
pub struct TensorElement {
    alphabet: Arc<Alphabet>,
    rank: usize,
    order: u32,
    terms: BTreeMap<TensorKey, Coeff>,
}

impl TensorElement {
    pub fn zero(alphabet: &Arc<Alphabet>, order: u32, rank: usize) -> Self {
        assert!(rank >= 1, "tensor rank must be positive");
        TensorElement { alphabet: alphabet.clone(), rank, order, terms: BTreeMap::new() }
    }

    pub fn one(alphabet: &Arc<Alphabet>, order: u32, rank: usize) -> Self {
        let mut t = Self::zero(alphabet, order, rank);
        t.terms.insert((0, vec![Monomial::one(); rank]), Coeff::one());
        t
    }

    /// The product tensor `legs[0] (x) legs[1] (x) ...`.
    pub fn from_legs(legs: &[&NcSeries]) -> Result<Self> {
        assert!(!legs.is_empty());
        let alphabet = legs[0].alphabet().clone();
        let mut order = legs[0].order();
        for leg in legs {
            check_same_alphabet(&alphabet, leg.alphabet())?;
            order = order.min(leg.order());
        }
        let mut out = Self::zero(&alphabet, order, legs.len());
        let mut acc: Vec<(u32, Vec<Monomial>, Coeff)> =
            vec![(0, Vec::with_capacity(legs.len()), Coeff::one())];
        for leg in legs {
            let mut next = Vec::with_capacity(acc.len() * leg.term_count().max(1));
            for (d, words, c) in &acc {
                for ((ld, lw), lc) in leg.terms() {
                    let nc = c * lc;
                    if nc.is_zero() {
                        continue;
                    }
                    let mut nw = words.clone();
                    nw.push(lw.clone());
                    next.push((d + ld, nw, nc));
                }
            }
            acc = next;
        }
        for (d, words, c) in acc {
            out.add_term(d, words, c);
        }
        Ok(out)
    }

    pub fn alphabet(&self) -> &Arc<Alphabet> {
        &self.alphabet
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TensorKey, &Coeff)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff_of(&self, d: u32, legs: &[Monomial]) -> Coeff {
        self.terms.get(&(d, legs.to_vec())).cloned().unwrap_or_else(Coeff::zero)
    }

    fn legs_weight(&self, legs: &[Monomial]) -> u32 {
        legs.iter().map(|w| w.weight(&self.alphabet)).sum()
    }

    pub fn add_term(&mut self, d: u32, legs: Vec<Monomial>, c: Coeff) {
        debug_assert_eq!(legs.len(), self.rank);
        if c.is_zero() || d + self.legs_weight(&legs) > self.order {
            return;
        }
        let key = (d, legs);
        if let Some(entry) = self.terms.get_mut(&key) {
            *entry += &c;
            if entry.is_zero() {
                self.terms.remove(&key);
            }
        } else {
            self.terms.insert(key, c);
        }
    }

    fn check_match(&self, other: &TensorElement) -> Result<()> {
        check_same_alphabet(&self.alphabet, &other.alphabet)?;
        if self.rank != other.rank {
            return Err(Error::RankMismatch { expected: self.rank, found: other.rank });
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElement) -> Result<TensorElement> {
        self.check_match(other)?;
        let order = self.order.min(other.order);
        let mut out = self.truncated(order);
        for ((d, legs), c) in &other.terms {
            out.add_term(*d, legs.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElement) -> Result<TensorElement> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TensorElement {
        let mut out = TensorElement::zero(&self.alphabet, self.order, self.rank);
        for ((d, legs), c) in &self.terms {
            out.terms.insert((*d, legs.clone()), -c);
        }
        out
    }

    pub fn scal(&self, c: &Coeff) -> TensorElement {
        let mut out = TensorElement::zero(&self.alphabet, self.order, self.rank);
        if c.is_zero() {
            return out;
        }
        for ((d, legs), v) in &self.terms {
            out.terms.insert((*d, legs.clone()), v * c);
        }
        out
    }

    pub fn z_shift(&self, k: u32) -> TensorElement {
        let mut out = TensorElement::zero(&self.alphabet, self.order, self.rank);
        for ((d, legs), c) in &self.terms {
            out.add_term(d + k, legs.clone(), c.clone());
        }
        out
    }

    pub fn truncated(&self, order: u32) -> TensorElement {
        let mut out = TensorElement::zero(&self.alphabet, order, self.rank);
        for ((d, legs), c) in &self.terms {
            out.add_term(*d, legs.clone(), c.clone());
        }
        out
    }

    /// Terms of exact z-degree `d`.
    pub fn z_component(&self, d: u32) -> TensorElement {
        let mut out = TensorElement::zero(&self.alphabet, self.order, self.rank);
        for ((deg, legs), c) in &self.terms {
            if *deg == d {
                out.terms.insert((*deg, legs.clone()), c.clone());
            }
        }
        out
    }

    pub fn min_effective_degree(&self) -> Option<u32> {
        self.terms.iter().map(|((d, legs), _)| d + self.legs_weight(legs)).min()
    }

    /// Leg-wise normalized product, with degree pruning before any
    /// straightening.
    pub fn mul(&self, other: &TensorElement, sys: &BracketSystem) -> Result<TensorElement> {
        self.check_match(other)?;
        check_same_alphabet(&self.alphabet, sys.alphabet())?;
        let order = self.order.min(other.order).min(sys.order());
        // Group raw leg-wise concatenations so each distinct tensor word is
        // straightened once.
        let mut raw: BTreeMap<TensorKey, Coeff> = BTreeMap::new();
        for ((da, la), ca) in &self.terms {
            for ((db, lb), cb) in &other.terms {
                let d = da + db;
                if d + self.legs_weight(la) + self.legs_weight(lb) > order {
                    continue;
                }
                let c = ca * cb;
                if c.is_zero() {
                    continue;
                }
                let legs: Vec<Monomial> =
                    la.iter().zip(lb.iter()).map(|(x, y)| x.concat(y)).collect();
                let entry = raw.entry((d, legs)).or_insert_with(Coeff::zero);
                *entry += &c;
            }
        }
        let mut out = TensorElement::zero(&self.alphabet, order, self.rank);
        for ((d, legs), c) in raw {
            if c.is_zero() {
                continue;
            }
            out.accumulate_normalized(d, &legs, c, sys)?;
        }
        Ok(out)
    }

    /// Straighten every leg of `legs` and accumulate `c z^d (normal form)`.
    fn accumulate_normalized(
        &mut self,
        d: u32,
        legs: &[Monomial],
        c: Coeff,
        sys: &BracketSystem,
    ) -> Result<()> {
        if legs.iter().all(Monomial::is_normal) {
            self.add_term(d, legs.to_vec(), c);
            return Ok(());
        }
        let mut acc: Vec<(u32, Vec<Monomial>, Coeff)> =
            vec![(d, Vec::with_capacity(legs.len()), c)];
        for leg in legs {
            let expansion = sys.expand(leg)?;
            let mut next = Vec::with_capacity(acc.len() * expansion.len());
            for (dcur, done, ccur) in &acc {
                for (delta, w, cw) in expansion.iter() {
                    let nd = dcur + delta;
                    if nd + w.weight(&self.alphabet) > self.order {
                        continue;
                    }
                    let nc = ccur * cw;
                    if nc.is_zero() {
                        continue;
                    }
                    let mut nw = done.clone();
                    nw.push(w.clone());
                    next.push((nd, nw, nc));
                }
            }
            acc = next;
        }
        for (nd, words, nc) in acc {
            self.add_term(nd, words, nc);
        }
        Ok(())
    }

    /// Leg-wise normal form.
    pub fn normalize(&self, sys: &BracketSystem) -> Result<TensorElement> {
        check_same_alphabet(&self.alphabet, sys.alphabet())?;
        let order = self.order.min(sys.order());
        let mut out = TensorElement::zero(&self.alphabet, order, self.rank);
        for ((d, legs), c) in &self.terms {
            out.accumulate_normalized(*d, legs, c.clone(), sys)?;
        }
        Ok(out)
    }

    /// Commutator `self * other - other * self`.
    pub fn comm(&self, other: &TensorElement, sys: &BracketSystem) -> Result<TensorElement> {
        self.mul(other, sys)?.sub(&other.mul(self, sys)?)
    }

    /// Exponential; every term of the exponent must have effective degree >= 1.
    pub fn exp(&self, sys: &BracketSystem) -> Result<TensorElement> {
        if self.min_effective_degree() == Some(0) {
            return Err(Error::IllDefinedExponential);
        }
        let mut result = TensorElement::one(&self.alphabet, self.order.min(sys.order()), self.rank);
        let mut term = result.clone();
        for k in 1..=(self.order + 1) {
            term = term.mul(self, sys)?.scal(&Coeff::rational(1, i64::from(k)));
            if term.is_zero() {
                break;
            }
            result = result.add(&term)?;
        }
        Ok(result)
    }

    /// Permute the legs: leg `i` of the result is leg `perm[i]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> TensorElement {
        assert_eq!(perm.len(), self.rank);
        let mut out = TensorElement::zero(&self.alphabet, self.order, self.rank);
        for ((d, legs), c) in &self.terms {
            let nw: Vec<Monomial> = perm.iter().map(|&i| legs[i].clone()).collect();
            out.terms.insert((*d, nw), c.clone());
        }
        out
    }

    /// The flip of a rank-2 tensor.
    pub fn swap(&self) -> TensorElement {
        assert_eq!(self.rank, 2, "swap applies to rank-2 tensors");
        self.permute(&[1, 0])
    }

    /// Embed into a higher rank: leg `i` of `self` goes to leg
    /// `positions[i]` of the result, all other legs are trivial.
    pub fn embed(&self, rank: usize, positions: &[usize]) -> TensorElement {
        assert_eq!(positions.len(), self.rank);
        assert!(positions.iter().all(|&p| p < rank));
        let mut out = TensorElement::zero(&self.alphabet, self.order, rank);
        for ((d, legs), c) in &self.terms {
            let mut nw = vec![Monomial::one(); rank];
            for (i, w) in legs.iter().enumerate() {
                nw[positions[i]] = w.clone();
            }
            out.terms.insert((*d, nw), c.clone());
        }
        out
    }

    /// Apply the counit to leg `leg` (keep terms whose word there is empty,
    /// drop that leg).
    pub fn apply_counit(&self, leg: usize) -> TensorElement {
        assert!(self.rank > 1 && leg < self.rank);
        let mut out = TensorElement::zero(&self.alphabet, self.order, self.rank - 1);
        for ((d, legs), c) in &self.terms {
            if !legs[leg].is_empty() {
                continue;
            }
            let mut nw = legs.clone();
            nw.remove(leg);
            out.add_term(*d, nw, c.clone());
        }
        out
    }

    /// View a rank-1 tensor as a series.
    pub fn into_series(&self) -> NcSeries {
        assert_eq!(self.rank, 1);
        let mut out = NcSeries::zero(&self.alphabet, self.order);
        for ((d, legs), c) in &self.terms {
            out.add_term(*d, legs[0].clone(), c.clone());
        }
        out
    }

    /// Promote a series to a rank-1 tensor.
    pub fn from_series(s: &NcSeries) -> TensorElement {
        let mut out = TensorElement::zero(s.alphabet(), s.order(), 1);
        for ((d, w), c) in s.terms() {
            out.terms.insert((*d, vec![w.clone()]), c.clone());
        }
        out
    }

    /// Multiply the legs of every term together (left to right), after
    /// applying `leg_maps[i]` to leg `i`.  `None` means the identity.
    #[allow(clippy::type_complexity)]
    pub fn fold_multiply(
        &self,
        sys: &BracketSystem,
        leg_maps: &[Option<&dyn Fn(&Monomial) -> Result<NcSeries>>],
    ) -> Result<NcSeries> {
        assert_eq!(leg_maps.len(), self.rank);
        let mut out = sys.zero();
        for ((d, legs), c) in &self.terms {
            let mut acc = sys.zero();
            acc.add_term(*d, Monomial::one(), c.clone());
            for (i, w) in legs.iter().enumerate() {
                if acc.is_zero() {
                    break;
                }
                acc = match leg_maps[i] {
                    None => {
                        let mut s = sys.zero();
                        s.add_term(0, w.clone(), Coeff::one());
                        sys.mul(&acc, &s)?
                    }
                    Some(f) => sys.mul(&acc, &f(w)?)?,
                };
            }
            out = out.add(&acc)?;
        }
        sys.normalize(&out)
    }

    /// Apply a series map to every leg independently (`None` = identity),
    /// multiplying out the images leg-wise.
    #[allow(clippy::type_complexity)]
    pub fn map_legs(
        &self,
        sys: &BracketSystem,
        leg_maps: &[Option<&dyn Fn(&Monomial) -> Result<NcSeries>>],
    ) -> Result<TensorElement> {
        assert_eq!(leg_maps.len(), self.rank);
        let mut out = TensorElement::zero(&self.alphabet, self.order.min(sys.order()), self.rank);
        for ((d, legs), c) in &self.terms {
            let mut acc: Vec<(u32, Vec<Monomial>, Coeff)> =
                vec![(*d, Vec::with_capacity(self.rank), c.clone())];
            for (i, w) in legs.iter().enumerate() {
                let image: NcSeries = match leg_maps[i] {
                    None => {
                        let mut s = sys.zero();
                        s.add_term(0, w.clone(), Coeff::one());
                        s
                    }
                    Some(f) => f(w)?,
                };
                let mut next = Vec::with_capacity(acc.len() * image.term_count().max(1));
                for (dcur, done, ccur) in &acc {
                    for ((ld, lw), lc) in image.terms() {
                        let nd = dcur + ld;
                        if nd + lw.weight(&self.alphabet) > out.order {
                            continue;
                        }
                        let nc = ccur * lc;
                        if nc.is_zero() {
                            continue;
                        }
                        let mut nw = done.clone();
                        nw.push(lw.clone());
                        next.push((nd, nw, nc));
                    }
                }
                acc = next;
            }
            for (nd, words, nc) in acc {
                out.add_term(nd, words, nc);
            }
        }
        out.normalize(sys)
    }

    /// Replace leg `leg` of every term by its image under a tensor-valued
    /// map of rank `image_rank` (e.g. a coproduct), splicing the image legs
    /// in place; the result has rank `self.rank - 1 + image_rank`.  Inputs
    /// and images are assumed normal, so no re-straightening happens here.
    pub fn expand_leg(
        &self,
        leg: usize,
        image_rank: usize,
        f: &dyn Fn(&Monomial) -> Result<TensorElement>,
    ) -> Result<TensorElement> {
        assert!(leg < self.rank);
        let rank = self.rank - 1 + image_rank;
        let mut out = TensorElement::zero(&self.alphabet, self.order, rank);
        for ((d, legs), c) in &self.terms {
            let image = f(&legs[leg])?;
            for ((di, li), ci) in image.terms() {
                let mut nw = Vec::with_capacity(rank);
                nw.extend_from_slice(&legs[..leg]);
                nw.extend(li.iter().cloned());
                nw.extend_from_slice(&legs[leg + 1..]);
                out.add_term(d + di, nw, c * ci);
            }
        }
        Ok(out)
    }

    /// Rebuild over a compatible-by-name alphabet.
    pub fn remap(&self, target: &Arc<Alphabet>, target_order: u32) -> Result<TensorElement> {
        let mut table = Vec::with_capacity(self.alphabet.len());
        for r in self.alphabet.ranks() {
            table.push(target.rank_of(self.alphabet.gen_name(r))?);
        }
        let mut out = TensorElement::zero(target, target_order, self.rank);
        for ((d, legs), c) in &self.terms {
            let nw: Vec<Monomial> = legs
                .iter()
                .map(|w| Monomial(w.0.iter().map(|&l| table[l as usize]).collect()))
                .collect();
            out.add_term(*d, nw, c.clone());
        }
        Ok(out)
    }

    /// Canonical text, one term per entry (for residual samples).
    pub fn term_strings(&self) -> Vec<String> {
        let mut terms: Vec<(&TensorKey, &Coeff)> = self.terms.iter().collect();
        terms.sort_by(|x, y| tensor_term_order(x.0, y.0));
        terms.iter().map(|((d, legs), c)| self.term_string(*d, legs, c)).collect()
    }

    fn term_string(&self, d: u32, legs: &[Monomial], c: &Coeff) -> String {
        let rendered: Vec<String> = legs
            .iter()
            .map(|w| {
                // Reuse the series printer for each leg by printing a bare term.
                print_term(0, w, &Coeff::one(), &self.alphabet)
            })
            .collect();
        let mut s = format!("(ten {})", rendered.join(" "));
        if d > 0 {
            s = format!("(z^ {d} {s})");
        }
        if !c.is_one() {
            s = format!("(scal {c} {s})");
        }
        s
    }

    pub fn display(&self) -> String {
        let rendered = self.term_strings();
        match rendered.len() {
            0 => "(scal 0 (ten ...))".to_string(),
            1 => rendered.into_iter().next().unwrap(),
            _ => format!("(+ {})", rendered.join(" ")),
        }
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display())
    }
}

fn tensor_term_order(a: &TensorKey, b: &TensorKey) -> std::cmp::Ordering {
    let la: usize = a.1.iter().map(Monomial::len).sum();
    let lb: usize = b.1.iter().map(Monomial::len).sum();
    a.0.cmp(&b.0).then_with(|| lb.cmp(&la)).then_with(|| a.1.cmp(&b.1))
}

/// `x (x) y - y (x) x` for two generators.
pub fn wedge(sys: &BracketSystem, x: &str, y: &str) -> Result<TensorElement> {
    let gx = sys.gen(x)?;
    let gy = sys.gen(y)?;
    TensorElement::from_legs(&[&gx, &gy])?.sub(&TensorElement::from_legs(&[&gy, &gx])?)
}

/// Evaluate an expression as a rank-`rank` tensor.
pub fn eval_tensor(expr: &Expr, sys: &BracketSystem, rank: usize) -> Result<TensorElement> {
    match expr {
        Expr::Sum(es) => {
            let mut acc = TensorElement::zero(sys.alphabet(), sys.order(), rank);
            for e in es {
                acc = acc.add(&eval_tensor(e, sys, rank)?)?;
            }
            Ok(acc)
        }
        Expr::Prod(es) => {
            let mut acc = TensorElement::one(sys.alphabet(), sys.order(), rank);
            for e in es {
                acc = acc.mul(&eval_tensor(e, sys, rank)?, sys)?;
            }
            Ok(acc)
        }
        Expr::Scal(c, e) => Ok(eval_tensor(e, sys, rank)?.scal(c)),
        Expr::ZPow(d, e) => Ok(eval_tensor(e, sys, rank)?.z_shift(*d)),
        Expr::Exp(e) => eval_tensor(e, sys, rank)?.exp(sys),
        Expr::Ten(es) => {
            if es.len() != rank {
                return Err(Error::RankMismatch { expected: rank, found: es.len() });
            }
            let legs: Vec<NcSeries> =
                es.iter().map(|e| e.eval_series(sys)).collect::<Result<_>>()?;
            let refs: Vec<&NcSeries> = legs.iter().collect();
            TensorElement::from_legs(&refs)?.normalize(sys)
        }
        Expr::Gen(_) | Expr::One => Err(Error::InvalidConfig(
            "series expression used where a tensor was expected; wrap legs in `(ten ...)`".into(),
        )),
    }
}

/// Parse and evaluate a tensor expression.
pub fn parse_tensor(text: &str, sys: &BracketSystem, rank: usize) -> Result<TensorElement> {
    eval_tensor(&crate::ncpoly::parse_expr(text)?, sys, rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::fixtures::quantum_11;

    #[test]
    fn from_legs_and_swap() {
        let sys = quantum_11(3);
        let t = wedge(&sys, "K", "P+").unwrap();
        assert_eq!(t.term_count(), 2);
        assert_eq!(t.swap(), t.neg());
    }

    #[test]
    fn mul_normalizes_leg_wise() {
        let sys = quantum_11(2);
        let k = TensorElement::from_legs(&[&sys.gen("K").unwrap(), &sys.one()]).unwrap();
        let p = TensorElement::from_legs(&[&sys.gen("P+").unwrap(), &sys.one()]).unwrap();
        let prod = k.mul(&p, &sys).unwrap();
        // First leg behaves exactly like the series product K * P+.
        let expect = sys.mul(&sys.gen("K").unwrap(), &sys.gen("P+").unwrap()).unwrap();
        for ((d, w), c) in expect.terms() {
            assert_eq!(&prod.coeff_of(*d, &[w.clone(), Monomial::one()]), c);
        }
        assert_eq!(prod.term_count(), expect.term_count());
    }

    #[test]
    fn embeddings_are_coherent() {
        let sys = quantum_11(3);
        let r = wedge(&sys, "K", "P+").unwrap();
        let r12 = r.embed(3, &[0, 1]);
        let r13 = r.embed(3, &[0, 2]);
        // Swapping legs 2 and 3 carries the (1,2) embedding to the (1,3) one.
        assert_eq!(r12.permute(&[0, 2, 1]), r13);
    }

    #[test]
    fn counit_contraction_picks_trivial_leg() {
        let sys = quantum_11(3);
        let k = sys.gen("K").unwrap();
        // 1 (x) K + K (x) P+
        let t = TensorElement::from_legs(&[&sys.one(), &k])
            .unwrap()
            .add(&TensorElement::from_legs(&[&k, &sys.gen("P+").unwrap()]).unwrap())
            .unwrap();
        let contracted = t.apply_counit(0).into_series();
        assert_eq!(contracted, k);
    }

    #[test]
    fn tensor_exp_matches_leg_product() {
        let sys = quantum_11(3);
        // exp(z K (x) P+) with commuting accumulation per leg.
        let e = TensorElement::from_legs(&[&sys.gen("K").unwrap(), &sys.gen("P+").unwrap()])
            .unwrap()
            .z_shift(1)
            .exp(&sys)
            .unwrap();
        assert_eq!(e.coeff_of(0, &[Monomial::one(), Monomial::one()]), Coeff::one());
        assert_eq!(e.coeff_of(1, &[Monomial(vec![2]), Monomial(vec![0])]), Coeff::one());
        assert_eq!(
            e.coeff_of(2, &[Monomial(vec![2, 2]), Monomial(vec![0, 0])]),
            Coeff::rational(1, 2)
        );
    }

    #[test]
    fn parse_tensor_round_trip() {
        let sys = quantum_11(3);
        let t = parse_tensor(
            "(+ (ten (one) (gen K)) (scal -2 (z^ 1 (ten (gen K) (exp (z^ 1 (scal 2 (gen P+))))))))",
            &sys,
            2,
        )
        .unwrap();
        let printed = t.display();
        let reparsed = parse_tensor(&printed, &sys, 2).unwrap();
        assert_eq!(t, reparsed);
        assert_eq!(printed, reparsed.display());
    }
}
