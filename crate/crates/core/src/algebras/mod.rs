//! Algebra presentations: generator alphabets, bracket tables, coproducts,
//! and the loader for the built-in and file-based presentations.
//!
//! A presentation is validated on construction: the bracket table is stored
//! in one orientation (antisymmetry is structural) and the Jacobi identity is
//! checked as rewrite confluence — straightening the word `x y w` with the
//! leftmost and the rightmost admissible rewrite must agree for every strict
//! rank triple.

mod builtins;
mod file;
mod kinematical;
pub(crate) mod transform;

pub use builtins::BUILTIN_NAMES;
pub use file::parse_presentation_file;
pub use kinematical::{kinematical_presentation, to_null_plane};
pub use transform::{change_basis, direct_sum, opposite_deformation, rename, LinearBasisChange};

use crate::error::{Error, Result};
use crate::hopf::TensorElement;
use crate::ncpoly::{BracketSystem, NcSeries, Strategy};
use serde::Serialize;
use std::collections::BTreeMap;
use std::ops::Deref;

/// Which built-in structure a presentation instantiates; drives suite
/// applicability and the lookup of R-matrix factorizations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Poincare11,
    Poincare21,
    Poincare31,
    Sl2,
    So22Conformal,
    /// Dual coordinate Hopf algebra paired with the 1+1 deformation.
    DualGroup,
    Custom,
}

/// A validated algebra presentation at a fixed truncation order.
pub struct Presentation {
    name: String,
    family: Family,
    classical: bool,
    system: BracketSystem,
    /// Rank-2 coproduct per generator rank, leg-wise normalized.
    coproducts: BTreeMap<u8, TensorElement>,
    /// Antipode table when supplied by a presentation file (derived on
    /// demand otherwise).
    antipode: Option<BTreeMap<u8, NcSeries>>,
    /// Generators spanning the Hopf subalgebra that carries the R-matrix.
    hopf_subalgebra: Vec<u8>,
    /// Stability-subgroup metadata (generators fixing the null plane).
    stability: Vec<u8>,
}

impl Deref for Presentation {
    type Target = BracketSystem;

    fn deref(&self) -> &BracketSystem {
        &self.system
    }
}

impl Presentation {
    /// Assemble and validate a presentation.  `coproducts` maps generator
    /// names to rank-2 tensors; generators without an entry get the
    /// primitive coproduct `X (x) 1 + 1 (x) X`.
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: &str,
        family: Family,
        classical: bool,
        system: BracketSystem,
        coproducts: Vec<(String, TensorElement)>,
        antipode: Option<Vec<(String, NcSeries)>>,
        hopf_subalgebra: Vec<String>,
        stability: Vec<String>,
    ) -> Result<Presentation> {
        let alphabet = system.alphabet().clone();
        let mut table: BTreeMap<u8, TensorElement> = BTreeMap::new();
        for (gen, value) in coproducts {
            let rank = alphabet.rank_of(&gen)?;
            if value.rank() != 2 {
                return Err(Error::RankMismatch { expected: 2, found: value.rank() });
            }
            let normalized = value.normalize(&system)?;
            if table.insert(rank, normalized).is_some() {
                return Err(Error::InvalidConfig(format!("duplicate coproduct entry for {gen}")));
            }
        }
        for rank in alphabet.ranks() {
            if table.contains_key(&rank) {
                continue;
            }
            let x = system.gen(alphabet.gen_name(rank))?;
            let one = system.one();
            let prim = TensorElement::from_legs(&[&x, &one])?
                .add(&TensorElement::from_legs(&[&one, &x])?)?;
            table.insert(rank, prim);
        }
        let antipode = match antipode {
            None => None,
            Some(entries) => {
                let mut t = BTreeMap::new();
                for (gen, value) in entries {
                    let rank = alphabet.rank_of(&gen)?;
                    if t.insert(rank, system.normalize(&value)?).is_some() {
                        return Err(Error::InvalidConfig(format!(
                            "duplicate antipode entry for {gen}"
                        )));
                    }
                }
                Some(t)
            }
        };
        let resolve = |names: Vec<String>| -> Result<Vec<u8>> {
            names.iter().map(|n| alphabet.rank_of(n)).collect()
        };
        let p = Presentation {
            name: name.to_string(),
            family,
            classical,
            system,
            coproducts: table,
            antipode,
            hopf_subalgebra: resolve(hopf_subalgebra)?,
            stability: resolve(stability)?,
        };
        p.check_jacobi()?;
        Ok(p)
    }

    /// Confluence check: both rewrite strategies must agree on `x y w` for
    /// every strict rank triple `x > y > w`.
    fn check_jacobi(&self) -> Result<()> {
        let alphabet = self.system.alphabet();
        let n = alphabet.len() as u8;
        for x in 0..n {
            for y in 0..x {
                for w in 0..y {
                    let mut word = NcSeries::zero(alphabet, self.system.order());
                    word.add_term(0, crate::ncpoly::Monomial(vec![x, y, w]), crate::Coeff::one());
                    let left = self.system.normalize_with_strategy(&word, Strategy::Leftmost)?;
                    let right = self.system.normalize_with_strategy(&word, Strategy::Rightmost)?;
                    if left != right {
                        return Err(Error::Jacobi {
                            x: alphabet.gen_name(x).to_string(),
                            y: alphabet.gen_name(y).to_string(),
                            w: alphabet.gen_name(w).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn is_classical(&self) -> bool {
        self.classical
    }

    pub fn system(&self) -> &BracketSystem {
        &self.system
    }

    /// Deformation symbol used in reports (`z`, `w`, ...).
    pub fn deformation(&self) -> &str {
        self.system.alphabet().deformation().unwrap_or("z")
    }

    pub fn generator_names(&self) -> Vec<&str> {
        let a = self.system.alphabet();
        a.ranks().map(|r| a.gen_name(r)).collect()
    }

    pub fn coproduct(&self, gen: &str) -> Result<&TensorElement> {
        let rank = self.system.alphabet().rank_of(gen)?;
        self.coproducts
            .get(&rank)
            .ok_or_else(|| Error::MissingCoproduct { name: gen.to_string() })
    }

    pub fn coproducts(&self) -> impl Iterator<Item = (&str, &TensorElement)> {
        self.coproducts.iter().map(|(r, t)| (self.system.alphabet().gen_name(*r), t))
    }

    pub fn stored_antipode(&self) -> Option<impl Iterator<Item = (&str, &NcSeries)>> {
        self.antipode
            .as_ref()
            .map(|t| t.iter().map(|(r, s)| (self.system.alphabet().gen_name(*r), s)))
    }

    pub fn hopf_subalgebra(&self) -> Vec<&str> {
        self.hopf_subalgebra.iter().map(|r| self.system.alphabet().gen_name(*r)).collect()
    }

    pub fn stability_subgroup(&self) -> Vec<&str> {
        self.stability.iter().map(|r| self.system.alphabet().gen_name(*r)).collect()
    }

    pub fn is_hopf_subalgebra_generator(&self, gen: &str) -> bool {
        match self.system.alphabet().rank_of(gen) {
            Ok(rank) => self.hopf_subalgebra.contains(&rank),
            Err(_) => false,
        }
    }

    /// Compare bracket tables and coproducts with another presentation over
    /// the same generator names.  Returns a list of mismatch descriptions
    /// (empty means structurally equal at the common order).
    pub fn same_structure(&self, other: &Presentation) -> Result<Vec<String>> {
        let a = self.system.alphabet();
        let b = other.system.alphabet();
        if !a.compatible(b) {
            return Err(Error::AlphabetMismatch {
                left: a.name().to_string(),
                right: b.name().to_string(),
            });
        }
        let order = self.system.order().min(other.system.order());
        let mut mismatches = Vec::new();
        let mut pairs: std::collections::BTreeSet<(u8, u8)> =
            self.system.bracket_pairs().collect();
        pairs.extend(other.system.bracket_pairs());
        for (hi, lo) in pairs {
            let mine = self.system.bracket(hi, lo).map(|v| v.truncated(order));
            let theirs = other
                .system
                .bracket(hi, lo)
                .map(|v| v.remap(a, order))
                .transpose()?;
            let equal = match (&mine, &theirs) {
                (None, None) => true,
                (Some(v), None) | (None, Some(v)) => v.is_zero(),
                (Some(x), Some(y)) => x == y,
            };
            if !equal {
                mismatches.push(format!("[{}, {}]", a.gen_name(hi), a.gen_name(lo)));
            }
        }
        for rank in a.ranks() {
            let gen = a.gen_name(rank);
            let mine = self.coproduct(gen)?.truncated(order);
            let theirs = other.coproduct(gen)?.remap(a, order)?;
            if mine != theirs {
                mismatches.push(format!("coproduct {gen}"));
            }
        }
        Ok(mismatches)
    }

    /// The bracket table with all positive deformation degrees dropped and
    /// primitive coproducts: the classical skeleton of a quantum
    /// presentation.
    pub fn classical_limit(&self) -> Result<Presentation> {
        let alphabet = self.system.alphabet();
        let entries: Vec<(u8, u8, NcSeries)> = self
            .system
            .bracket_entries()
            .map(|((hi, lo), value)| (hi, lo, value.z_component(0)))
            .collect();
        let system = BracketSystem::new(alphabet.clone(), self.system.order(), entries)?;
        Presentation::new(
            &self.name,
            self.family,
            true,
            system,
            Vec::new(),
            None,
            self.hopf_subalgebra().iter().map(|s| s.to_string()).collect(),
            self.stability_subgroup().iter().map(|s| s.to_string()).collect(),
        )
    }
}

impl std::fmt::Debug for Presentation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Presentation({}, {:?}, {}, order {})",
            self.name,
            self.family,
            if self.classical { "classical" } else { "quantum" },
            self.system.order()
        )
    }
}

/// Load a built-in presentation by name, or a presentation file by path.
pub fn load(name: &str, order: u32) -> Result<Presentation> {
    if let Some(p) = builtins::load_builtin(name, order)? {
        return Ok(p);
    }
    let path = std::path::Path::new(name);
    if path.exists() {
        let text = std::fs::read_to_string(path)?;
        return file::parse_presentation_file(&text, Some(order));
    }
    Err(Error::UnknownAlgebra { name: name.to_string() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name_is_reported() {
        let err = load("unknown-name", 3).unwrap_err();
        assert!(matches!(err, Error::UnknownAlgebra { .. }));
    }

    #[test]
    fn classical_11_matches_published_table() {
        let p = load("poincare-1+1-classical", 3).unwrap();
        assert!(p.is_classical());
        assert_eq!(p.generator_names(), vec!["P+", "P-", "K"]);
        let k = p.gen("K").unwrap();
        let pp = p.gen("P+").unwrap();
        let pm = p.gen("P-").unwrap();
        assert_eq!(p.comm(&k, &pp).unwrap(), pp);
        assert_eq!(p.comm(&k, &pm).unwrap(), pm.neg());
        assert!(p.comm(&pm, &pp).unwrap().is_zero());
    }

    #[test]
    fn jacobi_failure_names_the_triple() {
        use crate::ncpoly::Alphabet;
        let alphabet = Alphabet::plain("bad", &["X", "Y", "W"], Some("z")).unwrap();
        // [W,X]=X, [W,Y]=Y, [Y,X]=X has Jacobi residual -X on (W,Y,X).
        let gen = |r| NcSeries::generator(&alphabet, 3, r);
        let system = BracketSystem::new(
            alphabet.clone(),
            3,
            vec![(2, 0, gen(0)), (2, 1, gen(1)), (1, 0, gen(0))],
        )
        .unwrap();
        let err = Presentation::new(
            "bad",
            Family::Custom,
            true,
            system,
            Vec::new(),
            None,
            Vec::new(),
            Vec::new(),
        )
        .unwrap_err();
        match err {
            Error::Jacobi { x, y, w } => {
                assert_eq!((x.as_str(), y.as_str(), w.as_str()), ("W", "Y", "X"));
            }
            other => panic!("expected Jacobi error, got {other:?}"),
        }
    }
}
