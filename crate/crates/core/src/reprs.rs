//! Regular representation, characters and duality for commutative
//! hypergroups.
//!
//! Characters are the joint eigenvectors of the operators
//! `(R_b f)(a) = sum_c lambda[a][b][c] f(c)`. These operators satisfy
//! `R_b^* = R_{b*}` for the Haar-weighted inner product, so a random
//! Hermitian combination conjugated by `diag(sqrt(mu))` is a Hermitian
//! matrix whose eigenvectors are the characters.

use std::cmp::Ordering;

use nalgebra::{Complex, DMatrix, SymmetricEigen};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HyperError, Result};
use crate::hypergroup::{find_isomorphism, HypergroupTable};
use crate::tensor::Tensor3;

pub type C64 = Complex<f64>;

/// Seed used when none is given.
pub const DEFAULT_SEED: u64 = 0xC0FFEE;

const MAX_RETRIES: usize = 16;
const EIGENVALUE_GAP: f64 = 1e-8;
const CHARACTER_TOL: f64 = 1e-7;

/// Right multiplication by each basis element on coefficient vectors:
/// column `a` of `matrices[b]` is `lambda[a][b][..]`. The transpose acts on
/// functions as `(R_b f)(a) = sum_c lambda[a][b][c] f(c)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularRep {
    pub matrices: Vec<DMatrix<f64>>,
}

impl RegularRep {
    /// Whether all matrices commute pairwise within `tol`.
    pub fn commuting(&self, tol: f64) -> bool {
        let k = self.matrices.len();
        (0..k).all(|i| {
            (i + 1..k).all(|j| {
                let (a, b) = (&self.matrices[i], &self.matrices[j]);
                (a * b - b * a).amax() <= tol
            })
        })
    }
}

pub fn regular_representation(table: &HypergroupTable) -> RegularRep {
    let n = table.size();
    let matrices = (0..n)
        .map(|b| DMatrix::from_fn(n, n, |c, a| table.coeff(a, b, c)))
        .collect();
    RegularRep { matrices }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CharacterTable {
    /// Labels of the hypergroup elements (columns).
    pub labels: Vec<String>,
    /// `chars[m][a]`: value of character `m` on element `a`.
    pub chars: Vec<Vec<C64>>,
    pub haar_weights: Vec<f64>,
    /// `<chi_m, chi_m>_H^-1` in the normalized Haar inner product.
    pub dual_weights: Vec<f64>,
}

impl CharacterTable {
    pub fn size(&self) -> usize {
        self.chars.len()
    }

    /// Normalized Haar inner product `(f, g)_H`.
    pub fn inner(&self, f: &[C64], g: &[C64]) -> C64 {
        haar_inner(&self.haar_weights, f, g)
    }
}

fn haar_inner(mu: &[f64], f: &[C64], g: &[C64]) -> C64 {
    let total: f64 = mu.iter().sum();
    let s: C64 = mu
        .iter()
        .zip(f.iter().zip(g))
        .map(|(m, (x, y))| x.conj() * y * *m)
        .sum();
    s / total
}

pub fn characters(table: &HypergroupTable, tol: f64) -> Result<CharacterTable> {
    characters_seeded(table, tol, DEFAULT_SEED)
}

pub fn characters_seeded(table: &HypergroupTable, tol: f64, seed: u64) -> Result<CharacterTable> {
    if !table.is_commutative(tol) {
        return Err(HyperError::Precondition("hypergroup is not commutative".into()));
    }
    let n = table.size();
    let u = table.unit();
    let inv = table.involution();
    let mu = table.weights(tol)?;
    let sqrt_mu: Vec<f64> = mu.iter().map(|m| m.sqrt()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    for _attempt in 0..=MAX_RETRIES {
        let mut h = DMatrix::<C64>::zeros(n, n);
        for b in 0..n {
            let re: f64 = rng.random_range(-1.0..1.0);
            let im: f64 = rng.random_range(-1.0..1.0);
            let bs = inv[b];
            for a in 0..n {
                for c in 0..n {
                    let x = table.coeff(a, b, c);
                    let y = table.coeff(a, bs, c);
                    h[(a, c)] += C64::new(re * (x + y), im * (x - y));
                }
            }
        }
        let a = DMatrix::from_fn(n, n, |r, c| h[(r, c)] * (sqrt_mu[r] / sqrt_mu[c]));
        let a = (&a + a.adjoint()) * C64::new(0.5, 0.0);
        let eig = SymmetricEigen::new(a);

        let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
        values.sort_by(f64::total_cmp);
        let min_gap = values
            .windows(2)
            .map(|w| w[1] - w[0])
            .fold(f64::INFINITY, f64::min);
        if min_gap < EIGENVALUE_GAP {
            continue;
        }

        let mut chars: Vec<Vec<C64>> = (0..n)
            .map(|m| {
                let col = eig.eigenvectors.column(m);
                let f: Vec<C64> = (0..n).map(|r| col[r] / sqrt_mu[r]).collect();
                let f_unit = f[u];
                f.iter().map(|x| clean(x / f_unit)).collect()
            })
            .collect();

        // trivial character first, forced to exact ones
        let trivial = (0..n)
            .min_by(|&x, &y| {
                distance_to_ones(&chars[x]).total_cmp(&distance_to_ones(&chars[y]))
            })
            .expect("nonempty");
        let mut rest: Vec<Vec<C64>> = chars
            .drain(..)
            .enumerate()
            .filter(|(m, _)| *m != trivial)
            .map(|(_, c)| c)
            .collect();
        rest.sort_by(|x, y| lex_cmp(x, y));
        let mut chars = vec![vec![C64::new(1.0, 0.0); n]];
        chars.extend(rest);
        for row in chars.iter_mut() {
            row[u] = C64::new(1.0, 0.0);
        }

        let dual_weights = chars
            .iter()
            .map(|c| 1.0 / haar_inner(&mu, c, c).re)
            .collect();
        let ct = CharacterTable {
            labels: table.labels().to_vec(),
            chars,
            haar_weights: mu,
            dual_weights,
        };
        check_character_table(table, &ct)?;
        return Ok(ct);
    }
    Err(HyperError::Numerical(format!(
        "eigenvalues stayed degenerate after {MAX_RETRIES} retries"
    )))
}

fn clean(z: C64) -> C64 {
    let snap = |x: f64| if x.abs() < 1e-13 { 0.0 } else { x };
    C64::new(snap(z.re), snap(z.im))
}

fn distance_to_ones(row: &[C64]) -> f64 {
    row.iter()
        .map(|z| (z - C64::new(1.0, 0.0)).norm())
        .fold(0.0, f64::max)
}

/// Lexicographic order on value vectors after rounding to a 1e-9 grid.
fn lex_cmp(x: &[C64], y: &[C64]) -> Ordering {
    let key = |v: f64| (v * 1e9).round() as i64;
    for (a, b) in x.iter().zip(y) {
        let ord = key(a.re)
            .cmp(&key(b.re))
            .then_with(|| key(a.im).cmp(&key(b.im)));
        if ord != Ordering::Equal {
            return ord;
        }
    }
    Ordering::Equal
}

/// Verifies multiplicativity, conjugation symmetry and Haar orthogonality.
pub fn check_character_table(table: &HypergroupTable, ct: &CharacterTable) -> Result<()> {
    let n = table.size();
    let inv = table.involution();
    for (m, chi) in ct.chars.iter().enumerate() {
        for a in 0..n {
            if (chi[inv[a]] - chi[a].conj()).norm() > CHARACTER_TOL {
                return Err(HyperError::Numerical(format!(
                    "character {m} is not conjugation-symmetric at {a}"
                )));
            }
            for b in 0..n {
                let rhs: C64 = (0..n).map(|c| chi[c] * table.coeff(a, b, c)).sum();
                if (chi[a] * chi[b] - rhs).norm() > CHARACTER_TOL {
                    return Err(HyperError::Numerical(format!(
                        "character {m} is not multiplicative at ({a},{b})"
                    )));
                }
            }
        }
    }
    for m in 0..n {
        for m2 in m + 1..n {
            let ip = ct.inner(&ct.chars[m], &ct.chars[m2]);
            if ip.norm() > CHARACTER_TOL {
                return Err(HyperError::Numerical(format!(
                    "characters {m} and {m2} are not orthogonal ({:.3e})",
                    ip.norm()
                )));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport {
    /// `s_matrix[m][a] = sqrt(mu_a w_m / sum mu) chi_m(a)`.
    pub s_matrix: Vec<Vec<C64>>,
    /// `max |(S^* S - I)_{xy}|`.
    pub unitarity_defect: f64,
}

pub fn orthogonality_check(table: &HypergroupTable, tol: f64) -> Result<DualityReport> {
    let ct = characters(table, tol)?;
    Ok(orthogonality_from(&ct))
}

pub fn orthogonality_from(ct: &CharacterTable) -> DualityReport {
    let n = ct.size();
    let total: f64 = ct.haar_weights.iter().sum();
    let s = DMatrix::from_fn(n, n, |m, a| {
        ct.chars[m][a] * (ct.haar_weights[a] * ct.dual_weights[m] / total).sqrt()
    });
    let defect = (s.adjoint() * &s - DMatrix::<C64>::identity(n, n))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let s_matrix = (0..n).map(|m| (0..n).map(|a| s[(m, a)]).collect()).collect();
    DualityReport {
        s_matrix,
        unitarity_defect: defect,
    }
}

/// Structure constants of the character basis under pointwise products,
/// `c[m][m'][p] = <chi_p, chi_m chi_m'>_H / <chi_p, chi_p>_H`. The result is
/// a hypergroup only when all constants are nonnegative.
pub fn dual_hypergroup(table: &HypergroupTable, tol: f64) -> Result<HypergroupTable> {
    let ct = characters(table, tol)?;
    dual_from_characters(&ct, tol)
}

pub fn dual_from_characters(ct: &CharacterTable, tol: f64) -> Result<HypergroupTable> {
    let n = ct.size();
    let mut lam = Tensor3::zeros(n, n, n);
    for m in 0..n {
        for m2 in 0..n {
            let prod: Vec<C64> = ct.chars[m]
                .iter()
                .zip(&ct.chars[m2])
                .map(|(x, y)| x * y)
                .collect();
            for p in 0..n {
                let c = ct.inner(&ct.chars[p], &prod) * ct.dual_weights[p];
                if c.im.abs() > CHARACTER_TOL {
                    return Err(HyperError::Numerical(format!(
                        "dual coefficient ({m},{m2},{p}) has imaginary part {:.3e}",
                        c.im
                    )));
                }
                if c.re < -tol {
                    return Err(HyperError::DualNotHypergroup {
                        triple: (m, m2, p),
                        value: c.re,
                    });
                }
                lam.set(m, m2, p, c.re);
            }
        }
    }
    let involution = (0..n)
        .map(|m| {
            let conj: Vec<C64> = ct.chars[m].iter().map(|z| z.conj()).collect();
            (0..n)
                .min_by(|&x, &y| {
                    row_distance(&ct.chars[x], &conj).total_cmp(&row_distance(&ct.chars[y], &conj))
                })
                .expect("nonempty")
        })
        .collect();
    let labels = (0..n).map(|m| format!("chi{m}")).collect();
    let mut dual = HypergroupTable::new(labels, 0, involution, lam)?;
    dual.normalize(tol);
    dual.validate(tol.max(CHARACTER_TOL)).into_result()?;
    Ok(dual)
}

fn row_distance(x: &[C64], y: &[C64]) -> f64 {
    x.iter().zip(y).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
}

/// Matches the rows of two character tables up to a permutation of rows and
/// the column relabelling `columns` (element `a` of the first table is
/// element `columns[a]` of the second). Returns the row permutation.
pub fn match_character_rows(
    first: &CharacterTable,
    second: &CharacterTable,
    columns: &[usize],
    tol: f64,
) -> Option<Vec<usize>> {
    let n = first.size();
    if second.size() != n || columns.len() != n {
        return None;
    }
    let mut used = vec![false; n];
    let mut perm = Vec::with_capacity(n);
    for row in &first.chars {
        let found = (0..n).find(|&r| {
            !used[r] && (0..n).all(|a| (second.chars[r][columns[a]] - row[a]).norm() <= tol)
        })?;
        used[found] = true;
        perm.push(found);
    }
    Some(perm)
}

/// Whether `dual(dual(table))` is isomorphic to `table`.
pub fn double_dual_isomorphic(table: &HypergroupTable, tol: f64, iso_tol: f64) -> Result<bool> {
    let dual = dual_hypergroup(table, tol)?;
    let double = dual_hypergroup(&dual, tol)?;
    Ok(find_isomorphism(table, &double, iso_tol).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{conjugacy_class_hypergroup, group_hypergroup, two_element};
    use crate::group::{cyclic, symmetric};
    use crate::hypergroup::DEFAULT_TOL;

    fn real_rows(ct: &CharacterTable) -> Vec<Vec<f64>> {
        ct.chars
            .iter()
            .map(|r| {
                r.iter()
                    .map(|z| {
                        assert!(z.im.abs() < 1e-9);
                        z.re
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn z2_characters() {
        let ct = characters(&group_hypergroup(&cyclic(2)), DEFAULT_TOL).unwrap();
        let rows = real_rows(&ct);
        assert_eq!(rows[0], vec![1.0, 1.0]);
        assert!((rows[1][1] + 1.0).abs() < 1e-12);
    }

    #[test]
    fn ghj_regular_representation() {
        let s3 = 3f64.sqrt();
        let rep = regular_representation(&two_element(2.0 - s3).unwrap());
        let r1 = &rep.matrices[1];
        assert_eq!(r1[(0, 0)], 0.0);
        assert_eq!(r1[(1, 0)], 1.0);
        assert!((r1[(0, 1)] - (2.0 - s3)).abs() < 1e-15);
        assert!((r1[(1, 1)] - (s3 - 1.0)).abs() < 1e-15);
        assert_eq!(rep.matrices[0], DMatrix::identity(2, 2));
    }

    #[test]
    fn z3_has_complex_characters() {
        let ct = characters(&group_hypergroup(&cyclic(3)), DEFAULT_TOL).unwrap();
        let w = C64::from_polar(1.0, 2.0 * std::f64::consts::PI / 3.0);
        let found = ct
            .chars
            .iter()
            .any(|r| (r[1] - w).norm() < 1e-12 && (r[2] - w.conj()).norm() < 1e-12);
        assert!(found);
        let dual = dual_from_characters(&ct, DEFAULT_TOL).unwrap();
        assert!(find_isomorphism(&group_hypergroup(&cyclic(3)), &dual, 1e-9).is_some());
    }

    #[test]
    fn noncommutative_is_rejected() {
        let err = characters(&group_hypergroup(&symmetric(3)), DEFAULT_TOL);
        assert!(matches!(err, Err(HyperError::Precondition(_))));
    }

    #[test]
    fn conj_s3_rows() {
        let ct = characters(&conjugacy_class_hypergroup(&symmetric(3)), DEFAULT_TOL).unwrap();
        let rows = real_rows(&ct);
        let expected = [[1.0, 1.0, 1.0], [1.0, -1.0, 1.0], [1.0, 0.0, -0.5]];
        for (row, exp) in rows.iter().zip(expected) {
            for (x, y) in row.iter().zip(exp) {
                assert!((x - y).abs() < 1e-12, "{rows:?}");
            }
        }
        assert!((ct.dual_weights[2] - 4.0).abs() < 1e-9);
    }

    #[test]
    fn seeded_runs_are_identical() {
        let t = conjugacy_class_hypergroup(&symmetric(4));
        let a = characters_seeded(&t, DEFAULT_TOL, 7).unwrap();
        let b = characters_seeded(&t, DEFAULT_TOL, 7).unwrap();
        assert_eq!(a, b);
    }
}
