//! Exact finite-dimensional matrix representations.
//!
//! The null-plane deformations act on a light-cone-plus-affine column
//! space: the translations are nilpotent of order two, so every stored
//! series evaluates to a *polynomial* matrix in the deformation parameter
//! and all matrix-level checks are exact identities, not truncations.
//! Representation certificates compare commutators of the generator
//! matrices against the evaluated bracket table; the evaluated R-matrix is
//! checked against the quantum Yang-Baxter equation, coproduct
//! intertwining and triangularity on the doubled and tripled spaces.

use crate::algebras::{Family, Presentation};
use crate::coeff::Coeff;
use crate::error::{Error, Result};
use crate::hopf::TensorElement;
use crate::ncpoly::{Monomial, NcSeries};
use crate::report::CheckReport;
use crate::rmatrix::{builtin_rmatrix, classical_r, RMatrix};

/// A dense polynomial in the deformation parameter with exact
/// coefficients; index `k` holds the coefficient of the k-th power.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyZ(Vec<Coeff>);

impl PolyZ {
    pub fn zero() -> Self {
        PolyZ(Vec::new())
    }

    pub fn one() -> Self {
        PolyZ(vec![Coeff::one()])
    }

    pub fn constant(c: Coeff) -> Self {
        let mut p = PolyZ(vec![c]);
        p.trim();
        p
    }

    /// `c` times the d-th power of the parameter.
    pub fn monomial(d: u32, c: Coeff) -> Self {
        let mut v = vec![Coeff::zero(); d as usize + 1];
        v[d as usize] = c;
        let mut p = PolyZ(v);
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.0.last().is_some_and(Coeff::is_zero) {
            self.0.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, d: u32) -> Coeff {
        self.0.get(d as usize).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        if self.is_zero() { None } else { Some((self.0.len() - 1) as u32) }
    }

    pub fn add(&self, other: &PolyZ) -> PolyZ {
        let mut v = vec![Coeff::zero(); self.0.len().max(other.0.len())];
        for (i, c) in self.0.iter().enumerate() {
            v[i] = &v[i] + c;
        }
        for (i, c) in other.0.iter().enumerate() {
            v[i] = &v[i] + c;
        }
        let mut p = PolyZ(v);
        p.trim();
        p
    }

    pub fn neg(&self) -> PolyZ {
        PolyZ(self.0.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &PolyZ) -> PolyZ {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PolyZ) -> PolyZ {
        if self.is_zero() || other.is_zero() {
            return PolyZ::zero();
        }
        let mut v = vec![Coeff::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                v[i + j] = &v[i + j] + &(a * b);
            }
        }
        let mut p = PolyZ(v);
        p.trim();
        p
    }

    pub fn scal(&self, c: &Coeff) -> PolyZ {
        let mut p = PolyZ(self.0.iter().map(|a| a * c).collect());
        p.trim();
        p
    }
}

impl std::fmt::Display for PolyZ {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.0.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{d}")?,
            }
        }
        Ok(())
    }
}

/// A dense square matrix of exact polynomials.
#[derive(Clone, PartialEq, Eq)]
pub struct PMatrix {
    n: usize,
    e: Vec<PolyZ>,
}

impl PMatrix {
    pub fn zeros(n: usize) -> Self {
        PMatrix { n, e: vec![PolyZ::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = PMatrix::zeros(n);
        for i in 0..n {
            m.e[i * n + i] = PolyZ::one();
        }
        m
    }

    /// The elementary matrix with a single one at `(r, c)`.
    pub fn unit(n: usize, r: usize, c: usize) -> Self {
        let mut m = PMatrix::zeros(n);
        m.e[r * n + c] = PolyZ::one();
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, r: usize, c: usize) -> &PolyZ {
        &self.e[r * self.n + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: PolyZ) {
        self.e[r * self.n + c] = p;
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(PolyZ::is_zero)
    }

    pub fn add(&self, other: &PMatrix) -> PMatrix {
        assert_eq!(self.n, other.n);
        PMatrix {
            n: self.n,
            e: self.e.iter().zip(&other.e).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &PMatrix) -> PMatrix {
        assert_eq!(self.n, other.n);
        PMatrix {
            n: self.n,
            e: self.e.iter().zip(&other.e).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> PMatrix {
        PMatrix { n: self.n, e: self.e.iter().map(PolyZ::neg).collect() }
    }

    pub fn scal(&self, c: &Coeff) -> PMatrix {
        PMatrix { n: self.n, e: self.e.iter().map(|a| a.scal(c)).collect() }
    }

    pub fn scal_poly(&self, p: &PolyZ) -> PMatrix {
        PMatrix { n: self.n, e: self.e.iter().map(|a| a.mul(p)).collect() }
    }

    pub fn mul(&self, other: &PMatrix) -> PMatrix {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let mut out = PMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn kron(&self, other: &PMatrix) -> PMatrix {
        let n = self.n * other.n;
        let mut out = PMatrix::zeros(n);
        for i1 in 0..self.n {
            for j1 in 0..self.n {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..other.n {
                    for j2 in 0..other.n {
                        let b = other.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i1 * other.n + i2, j1 * other.n + j2, a.mul(b));
                    }
                }
            }
        }
        out
    }

    /// The operator exchanging the two factors of an `n (x) n` space.
    pub fn swap(n: usize) -> PMatrix {
        let mut out = PMatrix::zeros(n * n);
        for i in 0..n {
            for j in 0..n {
                out.set(i * n + j, j * n + i, PolyZ::one());
            }
        }
        out
    }

    /// `exp` of a nilpotent matrix; fails if powers do not vanish.
    pub fn exp_nilpotent(&self) -> Result<PMatrix> {
        let mut out = PMatrix::identity(self.n);
        let mut term = PMatrix::identity(self.n);
        for k in 1..=(self.n as u32 * self.n as u32 + 1) {
            term = term.mul(self).scal(&Coeff::rational(1, i64::from(k)));
            if term.is_zero() {
                return Ok(out);
            }
            out = out.add(&term);
        }
        Err(Error::IllDefinedExponential)
    }

    fn nonzero_entries(&self) -> Vec<String> {
        let mut out = Vec::new();
        for r in 0..self.n {
            for c in 0..self.n {
                let p = self.get(r, c);
                if !p.is_zero() {
                    out.push(format!("entry ({r}, {c}): {p}"));
                }
            }
        }
        out
    }
}

/// A representation: one exact matrix per generator, indexed by rank.
pub struct Representation {
    algebra: String,
    dim: usize,
    mats: Vec<PMatrix>,
}

impl Representation {
    pub fn algebra(&self) -> &str {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn matrix(&self, rank: u8) -> &PMatrix {
        &self.mats[rank as usize]
    }

    pub fn evaluate_word(&self, w: &Monomial) -> PMatrix {
        let mut out = PMatrix::identity(self.dim);
        for &letter in &w.0 {
            out = out.mul(&self.mats[letter as usize]);
        }
        out
    }

    pub fn evaluate_series(&self, s: &NcSeries) -> PMatrix {
        let mut out = PMatrix::zeros(self.dim);
        for ((d, w), c) in s.terms() {
            out = out.add(&self.evaluate_word(w).scal_poly(&PolyZ::monomial(*d, c.clone())));
        }
        out
    }

    pub fn evaluate_tensor(&self, t: &TensorElement) -> PMatrix {
        let n = self.dim.pow(t.rank() as u32);
        let mut out = PMatrix::zeros(n);
        for ((d, legs), c) in t.terms() {
            let mut m = PMatrix::identity(1);
            for w in legs {
                m = m.kron(&self.evaluate_word(w));
            }
            out = out.add(&m.scal_poly(&PolyZ::monomial(*d, c.clone())));
        }
        out
    }
}

/// Builtins carrying a stored matrix representation.
pub const REPRESENTATION_BEARING: [&str; 5] = [
    "poincare-1+1-classical",
    "poincare-1+1-quantum",
    "poincare-2+1-quantum",
    "poincare-3+1-classical",
    "poincare-3+1-quantum",
];

/// The light-cone-plus-affine representation for a built-in family:
/// dimension 3 in 1+1, 4 in 2+1, 5 in 3+1.  Basis order: light-cone pair,
/// then the transverse directions, then the affine column.
pub fn builtin_representation(p: &Presentation) -> Result<Representation> {
    let e = PMatrix::unit;
    let mats: Vec<PMatrix> = match p.family() {
        Family::Poincare11 => {
            // Generators P+, P-, K on (e+, e-, aff).
            let n = 3;
            let mut k = PMatrix::zeros(n);
            k.set(0, 0, PolyZ::one());
            k.set(1, 1, PolyZ::constant(Coeff::integer(-1)));
            vec![e(n, 0, 2), e(n, 1, 2), k]
        }
        Family::Poincare21 => {
            // Generators P+, P1, P-, E1, F1, K2 on (e+, e-, e1, aff).
            let n = 4;
            let mut k2 = PMatrix::zeros(n);
            k2.set(0, 0, PolyZ::one());
            k2.set(1, 1, PolyZ::constant(Coeff::integer(-1)));
            vec![
                e(n, 0, 3),
                e(n, 2, 3),
                e(n, 1, 3),
                e(n, 0, 2).add(&e(n, 2, 1)),
                e(n, 1, 2).add(&e(n, 2, 0)),
                k2,
            ]
        }
        Family::Poincare31 => {
            // Generators P+, P1, P2, P-, E1, E2, J3, F1, F2, K3 on
            // (e+, e-, e1, e2, aff).
            let n = 5;
            let mut k3 = PMatrix::zeros(n);
            k3.set(0, 0, PolyZ::one());
            k3.set(1, 1, PolyZ::constant(Coeff::integer(-1)));
            let j3 = e(n, 2, 3).sub(&e(n, 3, 2));
            vec![
                e(n, 0, 4),
                e(n, 2, 4),
                e(n, 3, 4),
                e(n, 1, 4),
                e(n, 0, 2).add(&e(n, 2, 1)),
                e(n, 0, 3).add(&e(n, 3, 1)),
                j3,
                e(n, 1, 2).add(&e(n, 2, 0)),
                e(n, 1, 3).add(&e(n, 3, 0)),
                k3,
            ]
        }
        _ => {
            return Err(Error::InvalidConfig(format!(
                "no stored matrix representation for `{}`",
                p.name()
            )))
        }
    };
    if p.order() < 2 {
        return Err(Error::InvalidConfig(
            "matrix checks need the symbolic tables at order 2 or higher".to_string(),
        ));
    }
    Ok(Representation { algebra: p.name().to_string(), dim: mats[0].dim(), mats })
}

fn report(p: &Presentation, check: &str, subject: Option<String>, m: &PMatrix) -> CheckReport {
    CheckReport::from_residual(p.name(), check, subject, p.order(), m.nonzero_entries())
}

/// Commutators of the generator matrices equal the evaluated bracket
/// table, entry by entry; the tails dropped by the symbolic truncation
/// vanish in the representation, so this is an exact certificate.
pub fn check_representation_certificate(
    p: &Presentation,
    rep: &Representation,
) -> Result<Vec<CheckReport>> {
    let alphabet = p.alphabet();
    let mut reports = Vec::new();
    let ranks: Vec<u8> = alphabet.ranks().collect();
    for &hi in &ranks {
        for &lo in &ranks {
            if lo >= hi {
                continue;
            }
            let a = rep.matrix(hi);
            let b = rep.matrix(lo);
            let value = rep.evaluate_series(&p.system().bracket_of(hi, lo));
            let residual = a.mul(b).sub(&b.mul(a)).sub(&value);
            let subject = format!("[{}, {}]", alphabet.gen_name(hi), alphabet.gen_name(lo));
            reports.push(report(p, "representation-certificate", Some(subject), &residual));
        }
    }
    Ok(reports)
}

/// The evaluated R-matrix: the product of the exponentials of the
/// evaluated exponents, all of which are nilpotent here.
pub fn evaluate_rmatrix(rep: &Representation, rm: &RMatrix) -> Result<PMatrix> {
    let mut out = PMatrix::identity(rep.dim() * rep.dim());
    for t in rm.exponents() {
        out = out.mul(&rep.evaluate_tensor(t).exp_nilpotent()?);
    }
    Ok(out)
}

/// Quantum Yang-Baxter for the evaluated R-matrix on the tripled space,
/// exact in the deformation parameter.
pub fn check_matrix_qybe(p: &Presentation, rep: &Representation, rm: &RMatrix) -> Result<CheckReport> {
    let n = rep.dim();
    let r = evaluate_rmatrix(rep, rm)?;
    let id = PMatrix::identity(n);
    let r12 = r.kron(&id);
    let r23 = id.kron(&r);
    let p23 = PMatrix::identity(n).kron(&PMatrix::swap(n));
    let r13 = p23.mul(&r12).mul(&p23);
    let lhs = r12.mul(&r13).mul(&r23);
    let rhs = r23.mul(&r13).mul(&r12);
    Ok(report(p, "matrix-yang-baxter", None, &lhs.sub(&rhs)))
}

/// `R (rho (x) rho)(Delta X) = (rho (x) rho)(sigma Delta X) R` for every
/// generator.
pub fn check_matrix_intertwining(
    p: &Presentation,
    rep: &Representation,
    rm: &RMatrix,
) -> Result<Vec<CheckReport>> {
    let r = evaluate_rmatrix(rep, rm)?;
    let mut reports = Vec::new();
    for rank in p.alphabet().ranks() {
        let name = p.alphabet().gen_name(rank);
        let d = p.coproduct(name)?;
        let lhs = r.mul(&rep.evaluate_tensor(d));
        let rhs = rep.evaluate_tensor(&d.swap()).mul(&r);
        reports.push(report(
            p,
            "matrix-intertwining",
            Some(name.to_string()),
            &lhs.sub(&rhs),
        ));
    }
    Ok(reports)
}

/// Triangularity of the evaluated R-matrix: the flipped matrix is its
/// exact inverse.
pub fn check_matrix_triangularity(
    p: &Presentation,
    rep: &Representation,
    rm: &RMatrix,
) -> Result<CheckReport> {
    let n = rep.dim();
    let r = evaluate_rmatrix(rep, rm)?;
    let swap = PMatrix::swap(n);
    let flipped = swap.mul(&r).mul(&swap);
    let residual = flipped.mul(&r).sub(&PMatrix::identity(n * n));
    Ok(report(p, "matrix-triangularity", None, &residual))
}

/// The evaluated R-matrix is the identity at parameter zero, and its
/// first derivative there is the evaluated classical r-matrix.
pub fn check_matrix_classical_limit(
    p: &Presentation,
    rep: &Representation,
    rm: &RMatrix,
) -> Result<CheckReport> {
    let n = rep.dim();
    let r = evaluate_rmatrix(rep, rm)?;
    let r_classical = rep.evaluate_tensor(&classical_r(p)?);
    let mut residual = PMatrix::zeros(n * n);
    for row in 0..n * n {
        for col in 0..n * n {
            let value = r.get(row, col);
            let mut c0 = PolyZ::constant(value.coeff(0));
            if row == col {
                c0 = c0.sub(&PolyZ::one());
            }
            let c1 = PolyZ::constant(value.coeff(1)).sub(&PolyZ::constant(r_classical.get(row, col).coeff(1)));
            residual.set(row, col, c0.add(&c1.mul(&PolyZ::monomial(1, Coeff::one()))));
        }
    }
    Ok(report(p, "matrix-classical-limit", None, &residual))
}

/// Every matrix-level check for one presentation.
pub fn check_matrix_suite(p: &Presentation) -> Result<Vec<CheckReport>> {
    let rep = builtin_representation(p)?;
    let mut reports = check_representation_certificate(p, &rep)?;
    // Classical tables carry no R-matrix: the certificate is the whole suite.
    if !p.is_classical() {
        let rm = builtin_rmatrix(p)?;
        reports.push(check_matrix_qybe(p, &rep, &rm)?);
        reports.extend(check_matrix_intertwining(p, &rep, &rm)?);
        reports.push(check_matrix_triangularity(p, &rep, &rm)?);
        reports.push(check_matrix_classical_limit(p, &rep, &rm)?);
    }
    Ok(reports)
}

/// Serialize the generator matrices — and, for deformed presentations, the
/// evaluated R-matrix — as JSON.
pub fn dump_matrices(p: &Presentation, rep: &Representation) -> Result<String> {
    let r = if p.is_classical() {
        None
    } else {
        Some(evaluate_rmatrix(rep, &builtin_rmatrix(p)?)?)
    };
    let mut out = String::new();
    out.push_str("{\n");
    out.push_str(&format!("  \"algebra\": \"{}\",\n", p.name()));
    out.push_str(&format!("  \"dimension\": {},\n", rep.dim()));
    out.push_str(&format!("  \"parameter\": \"{}\",\n", p.deformation()));
    out.push_str("  \"generators\": {\n");
    let ranks: Vec<u8> = p.alphabet().ranks().collect();
    for (idx, &rank) in ranks.iter().enumerate() {
        let name = p.alphabet().gen_name(rank);
        out.push_str(&format!("    \"{name}\": "));
        push_matrix(&mut out, rep.matrix(rank), "    ");
        out.push_str(if idx + 1 < ranks.len() { ",\n" } else { "\n" });
    }
    match r {
        Some(r) => {
            out.push_str("  },\n");
            out.push_str("  \"r_matrix\": ");
            push_matrix(&mut out, &r, "  ");
            out.push('\n');
        }
        None => out.push_str("  }\n"),
    }
    out.push_str("}\n");
    Ok(out)
}

fn push_matrix(out: &mut String, m: &PMatrix, indent: &str) {
    out.push_str("[\n");
    for r in 0..m.dim() {
        out.push_str(indent);
        out.push_str("  [");
        for c in 0..m.dim() {
            if c > 0 {
                out.push_str(", ");
            }
            out.push('"');
            out.push_str(&m.get(r, c).to_string());
            out.push('"');
        }
        out.push(']');
        out.push_str(if r + 1 < m.dim() { ",\n" } else { "\n" });
    }
    out.push_str(indent);
    out.push(']');
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebras::load;

    #[test]
    fn certificates_hold_for_every_builtin_family() {
        for name in [
            "poincare-1+1-classical",
            "poincare-1+1-quantum",
            "poincare-2+1-quantum",
            "poincare-3+1-classical",
            "poincare-3+1-quantum",
        ] {
            let p = load(name, 2).unwrap();
            let rep = builtin_representation(&p).unwrap();
            let reports = check_representation_certificate(&p, &rep).unwrap();
            for r in &reports {
                assert!(r.passed(), "{name}: {}", r.line());
            }
        }
    }

    #[test]
    fn matrix_quantum_checks_hold_in_all_three_dimensions() {
        for name in ["poincare-1+1-quantum", "poincare-2+1-quantum", "poincare-3+1-quantum"] {
            let p = load(name, 2).unwrap();
            let reports = check_matrix_suite(&p).unwrap();
            for r in &reports {
                assert!(r.passed(), "{name}: {}", r.line());
            }
        }
    }

    #[test]
    fn a_flipped_exponent_sign_fails_the_matrix_checks() {
        let p = load("poincare-1+1-quantum", 2).unwrap();
        let rep = builtin_representation(&p).unwrap();
        let sys = p.system();
        let bad = RMatrix::new(vec![
            crate::rmatrix::exponent(sys, 2, "P+", "K").unwrap(),
            crate::rmatrix::exponent(sys, 2, "K", "P+").unwrap(),
        ]);
        assert!(!check_matrix_qybe(&p, &rep, &bad).unwrap().passed());
        let intertwine = check_matrix_intertwining(&p, &rep, &bad).unwrap();
        assert!(intertwine.iter().any(|r| !r.passed()));
    }

    #[test]
    fn the_evaluated_r_matrix_is_unipotent_upper_triangular_like() {
        let p = load("poincare-1+1-quantum", 2).unwrap();
        let rep = builtin_representation(&p).unwrap();
        let rm = builtin_rmatrix(&p).unwrap();
        let r = evaluate_rmatrix(&rep, &rm).unwrap();
        for i in 0..r.dim() {
            assert_eq!(r.get(i, i), &PolyZ::one());
        }
        assert!(!r.sub(&PMatrix::identity(r.dim())).is_zero());
    }

    #[test]
    fn dumps_are_valid_json_shaped_text() {
        let p = load("poincare-2+1-quantum", 2).unwrap();
        let rep = builtin_representation(&p).unwrap();
        let text = dump_matrices(&p, &rep).unwrap();
        assert!(text.contains("\"dimension\": 4"));
        assert!(text.contains("\"E1\""));
        assert!(text.starts_with('{') && text.trim_end().ends_with('}'));
    }

    #[test]
    fn polynomial_arithmetic_is_exact() {
        let p = PolyZ::monomial(1, Coeff::integer(2)).add(&PolyZ::one());
        let q = p.mul(&p);
        assert_eq!(q.coeff(0), Coeff::one());
        assert_eq!(q.coeff(1), Coeff::integer(4));
        assert_eq!(q.coeff(2), Coeff::integer(4));
        assert_eq!(q.degree(), Some(2));
    }
}
