//! The 3+1 classical table transported to the kinematical basis
//! (energy-momentum `P0..P3`, boosts `K1..K3`, rotations `J1..J3`),
//! with the null-plane generators given by
//! `P+ = (P0+P3)/2`, `P- = P0-P3`, `E1 = (K1+J2)/2`, `F1 = K1-J2`,
//! `E2 = (K2-J1)/2`, `F2 = K2+J1`.

use crate::coeff::Coeff;
use crate::error::Result;
use crate::ncpoly::Alphabet;

use super::builtins::load_builtin;
use super::transform::{change_basis, LinearBasisChange};
use super::{Family, Presentation};

const KINEMATICAL: [&str; 10] =
    ["P0", "P1", "P2", "P3", "K1", "K2", "K3", "J1", "J2", "J3"];

/// `(row, entries)` where each entry is `(column, numerator, denominator)`.
type SparseRow<'a> = (usize, &'a [(usize, i64, i64)]);

fn rows(spec: &[SparseRow], dim: usize) -> Vec<Vec<Coeff>> {
    let mut m = vec![vec![Coeff::zero(); dim]; dim];
    for (row, cols) in spec {
        for (col, p, q) in cols.iter() {
            m[*row][*col] = Coeff::rational(*p, *q);
        }
    }
    m
}

/// Kinematical generators over the null-plane basis
/// (P+, P1, P2, P-, E1, E2, J3, F1, F2, K3).
fn kinematical_matrix() -> Vec<Vec<Coeff>> {
    rows(
        &[
            (0, &[(0, 1, 1), (3, 1, 2)]),  // P0 = P+ + P-/2
            (1, &[(1, 1, 1)]),
            (2, &[(2, 1, 1)]),
            (3, &[(0, 1, 1), (3, -1, 2)]), // P3 = P+ - P-/2
            (4, &[(4, 1, 1), (7, 1, 2)]),  // K1 = E1 + F1/2
            (5, &[(5, 1, 1), (8, 1, 2)]),  // K2 = E2 + F2/2
            (6, &[(9, 1, 1)]),             // K3
            (7, &[(8, 1, 2), (5, -1, 1)]), // J1 = F2/2 - E2
            (8, &[(4, 1, 1), (7, -1, 2)]), // J2 = E1 - F1/2
            (9, &[(6, 1, 1)]),             // J3
        ],
        10,
    )
}

/// Null-plane generators over the kinematical basis
/// (P0, P1, P2, P3, K1, K2, K3, J1, J2, J3); inverse of the map above.
fn null_plane_matrix() -> Vec<Vec<Coeff>> {
    rows(
        &[
            (0, &[(0, 1, 2), (3, 1, 2)]),  // P+ = (P0 + P3)/2
            (1, &[(1, 1, 1)]),
            (2, &[(2, 1, 1)]),
            (3, &[(0, 1, 1), (3, -1, 1)]), // P- = P0 - P3
            (4, &[(4, 1, 2), (8, 1, 2)]),  // E1 = (K1 + J2)/2
            (5, &[(5, 1, 2), (7, -1, 2)]), // E2 = (K2 - J1)/2
            (6, &[(9, 1, 1)]),             // J3
            (7, &[(4, 1, 1), (8, -1, 1)]), // F1 = K1 - J2
            (8, &[(5, 1, 1), (7, 1, 1)]),  // F2 = K2 + J1
            (9, &[(6, 1, 1)]),             // K3
        ],
        10,
    )
}

/// The 3+1 classical table in kinematical generators.
pub fn kinematical_presentation(order: u32) -> Result<Presentation> {
    let source = load_builtin("poincare-3+1-classical", order)?
        .expect("the 3+1 classical table is built in");
    let target =
        Alphabet::plain("poincare-3+1-kinematical", &KINEMATICAL, Some("z"))?;
    let change = LinearBasisChange::new(target, kinematical_matrix())?;
    change_basis(&source, &change, "poincare-3+1-kinematical", Family::Custom, Vec::new())
}

/// Transport a kinematical-basis presentation back to null-plane generators.
pub fn to_null_plane(p: &Presentation, new_name: &str) -> Result<Presentation> {
    let target = Alphabet::plain(
        new_name,
        &["P+", "P1", "P2", "P-", "E1", "E2", "J3", "F1", "F2", "K3"],
        Some("z"),
    )?;
    let change = LinearBasisChange::new(target, null_plane_matrix())?;
    change_basis(p, &change, new_name, Family::Poincare31, Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ncpoly::Monomial;

    // Oracles below were computed by hand from the null-plane table and the
    // basis map, e.g. [K1, P0] = [E1 + F1/2, P+ + P-/2]
    //                          = [E1, P-]/2 + [F1, P+]/2 = P1/2 + P1/2 = P1.
    #[test]
    fn kinematical_table_matches_hand_transport() {
        let p = kinematical_presentation(2).unwrap();
        let g = |n: &str| p.gen(n).unwrap();
        let eq = |v: crate::ncpoly::NcSeries, w: crate::ncpoly::NcSeries| {
            assert_eq!(v, w);
        };
        // Rotations act on momenta; boosts mix energy and momentum.
        eq(p.comm(&g("J3"), &g("P1")).unwrap(), g("P2").neg());
        eq(p.comm(&g("K3"), &g("P0")).unwrap(), g("P3"));
        eq(p.comm(&g("K3"), &g("P3")).unwrap(), g("P0"));
        eq(p.comm(&g("K1"), &g("P0")).unwrap(), g("P1"));
        // Translations commute; J2 leaves P0 alone.
        assert!(p.comm(&g("P0"), &g("P3")).unwrap().is_zero());
        assert!(p.comm(&g("J2"), &g("P0")).unwrap().is_zero());
        // Mixed boost/rotation sector, signs fixed by [Ei, Fj] ([K1, K2] =
        // [E1, F2]/2 + [F1, E2]/2 = J3, [J1, J2] = [F2, E1]/2 + [E2, F1]/2).
        eq(p.comm(&g("K1"), &g("K2")).unwrap(), g("J3"));
        eq(p.comm(&g("J1"), &g("J2")).unwrap(), g("J3").neg());
        eq(p.comm(&g("J1"), &g("K2")).unwrap(), g("K3").neg());
    }

    #[test]
    fn round_trip_restores_the_null_plane_table() {
        let kin = kinematical_presentation(3).unwrap();
        let back = to_null_plane(&kin, "round-trip").unwrap();
        let reference = load_builtin("poincare-3+1-classical", 3).unwrap().unwrap();
        assert_eq!(back.same_structure(&reference).unwrap(), Vec::<String>::new());
        // And the bracket values are single letters again, e.g. [E1, P-] = P1.
        let v = back.bracket(4, 3).unwrap();
        assert_eq!(v.coeff_of(0, &Monomial::gen(1)), crate::coeff::Coeff::one());
    }
}
