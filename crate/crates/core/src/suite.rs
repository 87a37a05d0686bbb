//! Named check suites over the algebra catalogue.
//!
//! A suite is a bundle of related checks (`hopf`, `qybe`, `rep`, ...); not
//! every suite applies to every algebra — classical tables carry no
//! R-matrix, only some families store a matrix representation, and the
//! duality and contraction suites are keyed on fixed pairs of algebras
//! rather than a single presentation.  [`run`] expands a configuration into
//! independent work units, executes them (in parallel unless restricted),
//! and returns the reports in canonical order.
//!
//! Elapsed times are recorded per work unit (one suite on one algebra), so
//! every report from the same unit carries the same `elapsed_ms`.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::algebras::{load, Family, Presentation, BUILTIN_NAMES};
use crate::coeff::Coeff;
use crate::contraction::{builtin_contraction, check_contraction, CONTRACTION_NAMES};
use crate::duality::check_duality;
use crate::error::{Error, Result};
use crate::hopf::{
    check_antipode, check_coassociativity, check_coproduct_homomorphism, check_counit,
};
use crate::matrixrep::{check_matrix_suite, REPRESENTATION_BEARING};
use crate::ncpoly::{Monomial, NcSeries};
use crate::report::{sort_reports, CheckReport};
use crate::rmatrix::{
    builtin_rmatrix, check_classical_bialgebra, check_classical_limit,
    check_cocommutators_quantum, check_intertwining, check_qybe, check_triangularity,
};

/// Every suite name accepted by [`run`].
pub const SUITE_NAMES: [&str; 10] = [
    "hopf",
    "cybe",
    "cocommutators",
    "qybe",
    "intertwine",
    "triangular",
    "classical-limit",
    "duality",
    "contraction",
    "rep",
];

/// Builtins whose R-matrix factorization is stored.
const R_BEARING: [&str; 5] = [
    "poincare-1+1-quantum",
    "sl2-nonstandard",
    "so22-conformal",
    "poincare-2+1-quantum",
    "poincare-3+1-quantum",
];

/// Algebras whose pairing the `duality` suite exercises.
const DUALITY_ENDPOINTS: [&str; 2] = ["poincare-1+1-quantum", "funzS-1+1"];

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Restrict to one algebra: a builtin name or the name of the loaded
    /// definitions file.  `None` runs the whole catalogue.
    pub algebra: Option<String>,
    /// Suites to run; empty means every applicable suite.
    pub suites: Vec<String>,
    /// Truncation order for every symbolic check.
    pub order: u32,
    /// Worker threads; `None` leaves the rayon default in place.
    pub jobs: Option<usize>,
    /// Seed for the randomized normal-ordering associativity probe.
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { algebra: None, suites: Vec::new(), order: 3, jobs: None, seed: 0 }
    }
}

fn has_r(name: &str) -> bool {
    R_BEARING.contains(&name)
}

/// Classical presentations with a stored classical r-matrix and
/// cocommutator table.
fn has_classical_r(p: &Presentation) -> bool {
    p.is_classical() && matches!(p.family(), Family::Poincare11 | Family::Poincare31)
}

fn suite_applies(suite: &str, p: &Presentation) -> bool {
    let name = p.name();
    match suite {
        // Coproducts exist for every presentation (primitive by default),
        // so the Hopf axioms are checkable on the whole catalogue.
        "hopf" => true,
        "cybe" => has_classical_r(p),
        "cocommutators" => has_r(name) || has_classical_r(p),
        "qybe" | "intertwine" | "triangular" | "classical-limit" => has_r(name),
        // Representation checks need symbolic tables at order >= 2 to
        // evaluate exactly.
        "rep" => p.order() >= 2 && REPRESENTATION_BEARING.contains(&name),
        // duality and contraction are keyed on algebra pairs, not here.
        _ => false,
    }
}

fn contraction_endpoints(name: &str) -> [&str; 2] {
    match name {
        "sl2-to-poincare-1+1" => ["sl2-nonstandard", "poincare-1+1-quantum"],
        "so22-to-poincare-2+1" => ["so22-conformal", "poincare-2+1-quantum"],
        _ => ["", ""],
    }
}

/// Multiply random short words in both association orders and compare the
/// normal forms; the rewriting system is confluent, so they must agree.
fn associativity_probe(p: &Presentation, seed: u64) -> Result<CheckReport> {
    let sys = p.system();
    let alphabet = sys.alphabet();
    let n = alphabet.len() as u8;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let samples = 12;
    let mut residual_terms = Vec::new();
    for _ in 0..samples {
        let word = |rng: &mut ChaCha8Rng| {
            let len = rng.gen_range(1..=3usize);
            let letters: Vec<u8> = (0..len).map(|_| rng.gen_range(0..n)).collect();
            let mut s = NcSeries::zero(alphabet, sys.order());
            s.add_term(u32::from(rng.gen_range(0..2u8)), Monomial(letters), Coeff::one());
            s
        };
        let (a, b, c) = (word(&mut rng), word(&mut rng), word(&mut rng));
        let left = sys.mul(&sys.mul(&a, &b)?, &c)?;
        let right = sys.mul(&a, &sys.mul(&b, &c)?)?;
        let diff = left.add(&right.neg())?;
        if !diff.is_zero() && residual_terms.is_empty() {
            residual_terms = diff.term_strings();
        }
    }
    Ok(CheckReport::from_residual(
        p.name(),
        "normal-order-associativity",
        Some(format!("{samples} random triples, seed {seed}")),
        p.order(),
        residual_terms,
    ))
}

fn run_suite_on(p: &Presentation, suite: &str, seed: u64) -> Result<Vec<CheckReport>> {
    match suite {
        "hopf" => {
            let mut reports = check_coproduct_homomorphism(p)?;
            reports.extend(check_coassociativity(p)?);
            reports.extend(check_counit(p)?);
            reports.extend(check_antipode(p)?);
            reports.push(associativity_probe(p, seed)?);
            Ok(reports)
        }
        // The bialgebra bundle reports antisymmetry and the classical
        // Yang-Baxter equation under `cybe`; the cocommutator table is
        // reported under its own suite name.
        "cybe" => {
            let all = check_classical_bialgebra(p)?;
            Ok(all.into_iter().filter(|r| r.check != "cocommutator").collect())
        }
        "cocommutators" => {
            if p.is_classical() {
                let all = check_classical_bialgebra(p)?;
                Ok(all.into_iter().filter(|r| r.check == "cocommutator").collect())
            } else {
                check_cocommutators_quantum(p)
            }
        }
        "qybe" => Ok(vec![check_qybe(p, &builtin_rmatrix(p)?)?]),
        "intertwine" => check_intertwining(p, &builtin_rmatrix(p)?),
        "triangular" => Ok(vec![check_triangularity(p, &builtin_rmatrix(p)?)?]),
        "classical-limit" => check_classical_limit(p, &builtin_rmatrix(p)?),
        "rep" => check_matrix_suite(p),
        other => Err(Error::InvalidConfig(format!("unknown suite `{other}`"))),
    }
}

enum Task {
    Suite { presentation: Arc<Presentation>, suite: String },
    Duality,
    Contraction(&'static str),
}

impl Task {
    fn execute(&self, order: u32, seed: u64) -> Result<Vec<CheckReport>> {
        match self {
            Task::Suite { presentation, suite } => run_suite_on(presentation, suite, seed),
            Task::Duality => check_duality(order),
            Task::Contraction(name) => check_contraction(&builtin_contraction(name, order)?),
        }
    }
}

/// Expand a configuration into work units and run them all.
///
/// `definitions` optionally adds one presentation loaded from a user file
/// to the catalogue under its own name; it must already be truncated at
/// `config.order`.  Fails on unknown algebra or suite names, on an empty
/// selection, and on any structural error inside a check; individual check
/// failures are reported through [`CheckReport::passed`], not errors.
pub fn run(config: &SuiteConfig, definitions: Option<Presentation>) -> Result<Vec<CheckReport>> {
    let selected: Vec<String> = if config.suites.is_empty() {
        SUITE_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        for s in &config.suites {
            if !SUITE_NAMES.contains(&s.as_str()) {
                return Err(Error::InvalidConfig(format!(
                    "unknown suite `{s}` (expected one of: {})",
                    SUITE_NAMES.join(", ")
                )));
            }
        }
        config.suites.clone()
    };

    if let Some(p) = &definitions {
        if p.order() != config.order {
            return Err(Error::InvalidConfig(format!(
                "definitions were loaded at order {} but the run requests order {}",
                p.order(),
                config.order
            )));
        }
        if BUILTIN_NAMES.contains(&p.name()) {
            return Err(Error::NameCollision { name: p.name().to_string() });
        }
    }

    let mut catalogue: Vec<Arc<Presentation>> = Vec::new();
    for name in BUILTIN_NAMES {
        catalogue.push(Arc::new(load(name, config.order)?));
    }
    if let Some(p) = definitions {
        catalogue.push(Arc::new(p));
    }
    if let Some(wanted) = &config.algebra {
        if !catalogue.iter().any(|p| p.name() == wanted) {
            return Err(Error::UnknownAlgebra { name: wanted.clone() });
        }
    }
    let matches_filter =
        |name: &str| config.algebra.as_deref().is_none_or(|wanted| wanted == name);

    let mut tasks: Vec<Task> = Vec::new();
    for p in &catalogue {
        if !matches_filter(p.name()) {
            continue;
        }
        for suite in &selected {
            if suite_applies(suite, p) {
                tasks.push(Task::Suite {
                    presentation: Arc::clone(p),
                    suite: suite.clone(),
                });
            }
        }
    }
    if selected.iter().any(|s| s == "duality")
        && DUALITY_ENDPOINTS.iter().any(|name| matches_filter(name))
    {
        tasks.push(Task::Duality);
    }
    if selected.iter().any(|s| s == "contraction") {
        for name in CONTRACTION_NAMES {
            if contraction_endpoints(name).iter().any(|end| matches_filter(end)) {
                tasks.push(Task::Contraction(name));
            }
        }
    }
    if tasks.is_empty() {
        return Err(Error::InvalidConfig(
            "no applicable checks for this algebra/suite selection".to_string(),
        ));
    }

    let (order, seed) = (config.order, config.seed);
    let execute_all = || -> Result<Vec<CheckReport>> {
        let nested: Vec<Vec<CheckReport>> = tasks
            .par_iter()
            .map(|task| {
                let started = Instant::now();
                let mut reports = task.execute(order, seed)?;
                let elapsed = started.elapsed().as_millis();
                for r in &mut reports {
                    r.elapsed_ms = elapsed;
                }
                Ok(reports)
            })
            .collect::<Result<_>>()?;
        Ok(nested.into_iter().flatten().collect())
    };

    let mut reports = match config.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| Error::InvalidConfig(format!("cannot build a worker pool: {e}")))?
            .install(execute_all)?,
        None => execute_all()?,
    };
    sort_reports(&mut reports);
    Ok(reports)
}
