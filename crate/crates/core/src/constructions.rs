//! Hypergroups built from groups and the two-element family.
//!
//! Class and double-coset constructions count products exactly in the group
//! algebra and divide only when writing the final table.

use crate::error::{HyperError, Result};
use crate::group::CayleyGroup;
use crate::hypergroup::{HypergroupTable, DEFAULT_TOL};
use crate::tensor::Tensor3;

/// The group itself: `lambda[i][j][l] = 1` iff `ij = l`.
pub fn group_hypergroup(g: &CayleyGroup) -> HypergroupTable {
    let n = g.order();
    let mut lam = Tensor3::zeros(n, n, n);
    for i in 0..n {
        for j in 0..n {
            lam.set(i, j, g.mul(i, j), 1.0);
        }
    }
    let involution = (0..n).map(|i| g.inverse(i)).collect();
    HypergroupTable::new(g.labels().to_vec(), g.identity(), involution, lam)
        .expect("group table has consistent shape")
}

/// Hypergroup of normalized conjugacy class sums.
pub fn conjugacy_class_hypergroup(g: &CayleyGroup) -> HypergroupTable {
    let classes = g.conjugacy_classes();
    block_hypergroup(g, &classes)
}

/// Hypergroup of normalized double coset sums `H g H`.
pub fn double_coset_hypergroup(g: &CayleyGroup, subgroup: &[usize]) -> Result<HypergroupTable> {
    let h = g.subgroup(subgroup)?;
    let cosets = g.double_cosets(&h, &h);
    Ok(block_hypergroup(g, &cosets))
}

/// Integer product counts `count[i][j][k] = #{(x, y) in D_i x D_j : xy = z_k}`
/// for the first element `z_k` of each block.
pub(crate) fn block_counts(
    g: &CayleyGroup,
    left: &[Vec<usize>],
    right: &[Vec<usize>],
    target: &[Vec<usize>],
) -> Vec<Vec<Vec<u64>>> {
    let mut block_of = vec![usize::MAX; g.order()];
    for (k, block) in target.iter().enumerate() {
        for &z in block {
            block_of[z] = k;
        }
    }
    let mut counts = vec![vec![vec![0u64; target.len()]; right.len()]; left.len()];
    for (i, di) in left.iter().enumerate() {
        for (j, dj) in right.iter().enumerate() {
            for &x in di {
                for &y in dj {
                    let z = g.mul(x, y);
                    let k = block_of[z];
                    if target[k][0] == z {
                        counts[i][j][k] += 1;
                    }
                }
            }
        }
    }
    counts
}

/// Converts representative counts to coefficients of normalized block sums:
/// `count * |D_k| / (|D_i| |D_j|)`.
pub(crate) fn block_coefficients(
    counts: &[Vec<Vec<u64>>],
    left: &[Vec<usize>],
    right: &[Vec<usize>],
    target: &[Vec<usize>],
) -> Tensor3 {
    let mut t = Tensor3::zeros(left.len(), right.len(), target.len());
    for (i, di) in left.iter().enumerate() {
        for (j, dj) in right.iter().enumerate() {
            let den = (di.len() * dj.len()) as u64;
            for (k, dk) in target.iter().enumerate() {
                let num = counts[i][j][k] * dk.len() as u64;
                t.set(i, j, k, num as f64 / den as f64);
            }
        }
    }
    t
}

fn block_hypergroup(g: &CayleyGroup, blocks: &[Vec<usize>]) -> HypergroupTable {
    let counts = block_counts(g, blocks, blocks, blocks);
    let lam = block_coefficients(&counts, blocks, blocks, blocks);
    let block_of = |x: usize| blocks.iter().position(|b| b.contains(&x)).unwrap();
    let unit = block_of(g.identity());
    let involution = blocks.iter().map(|b| block_of(g.inverse(b[0]))).collect();
    let labels = blocks
        .iter()
        .map(|b| format!("[{}]", g.labels()[b[0]]))
        .collect();
    HypergroupTable::new(labels, unit, involution, lam).expect("block table has consistent shape")
}

/// `k1^2 = lam k0 + (1 - lam) k1` for `0 < lam <= 1`.
pub fn two_element(lam: f64) -> Result<HypergroupTable> {
    if !(lam > 0.0 && lam <= 1.0) {
        return Err(HyperError::Precondition(format!(
            "two-element parameter must lie in (0, 1], got {lam}"
        )));
    }
    let mut t = Tensor3::zeros(2, 2, 2);
    t.set(0, 0, 0, 1.0);
    t.set(0, 1, 1, 1.0);
    t.set(1, 0, 1, 1.0);
    t.set(1, 1, 0, lam);
    t.set(1, 1, 1, 1.0 - lam);
    HypergroupTable::new(vec!["k0".into(), "k1".into()], 0, vec![0, 1], t)
}

/// Unit coefficient of the rescaled two-element relation
/// `f1^2 = n0 f0 + n1 f1`, in closed form
/// `1 + r/2 - r sqrt(1/4 + 1/r)` with `r = n1^2 / n0`.
pub fn two_element_unit_coefficient(n0: u64, n1: u64) -> f64 {
    assert!(n0 >= 1);
    if n1 == 0 {
        return 1.0;
    }
    let r = (n1 * n1) as f64 / n0 as f64;
    1.0 + 0.5 * r - r * (0.25 + 1.0 / r).sqrt()
}

/// Searches integer relations `f1^2 = n0 f0 + n1 f1` with `1 <= n0 <= max_n0`
/// and `0 <= n1 <= max_n1`, lexicographically in `(n0, n1)`, whose rescaled
/// unit coefficient equals `lam` within `tol`.
pub fn two_element_integral_relation(
    lam: f64,
    max_n0: u64,
    max_n1: u64,
    tol: f64,
) -> Option<(u64, u64)> {
    (1..=max_n0)
        .flat_map(|n0| (0..=max_n1).map(move |n1| (n0, n1)))
        .find(|&(n0, n1)| (two_element_unit_coefficient(n0, n1) - lam).abs() <= tol)
}

/// Whether the two-element hypergroup with parameter `lam` is the rescaling
/// of a fusion algebra `f1^2 = f0 + n f1` with `n <= search_bound`.
/// Returns `(n_11^0, n_11^1) = (1, n)` for the first match.
pub fn fusion_realizable_two_element(lam: f64, search_bound: u64) -> Option<(u64, u64)> {
    fusion_realizable_two_element_tol(lam, search_bound, DEFAULT_TOL)
}

pub fn fusion_realizable_two_element_tol(lam: f64, search_bound: u64, tol: f64) -> Option<(u64, u64)> {
    // A fusion algebra has n_11^0 = 1; larger n_11^0 are only rescaled
    // integral relations, not fusion rules.
    two_element_integral_relation(lam, 1, search_bound, tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic, symmetric};

    #[test]
    fn z3_involution_swaps_generators() {
        let t = group_hypergroup(&cyclic(3));
        assert_eq!(t.involution(), &[0, 2, 1]);
        assert!(t.validate(DEFAULT_TOL).passed());
    }

    #[test]
    fn s3_classes() {
        let t = conjugacy_class_hypergroup(&symmetric(3));
        assert_eq!(t.labels(), &["[e]", "[(23)]", "[(123)]"]);
        let tt = t.multiply(1, 1).unwrap();
        assert!((tt.coeffs()[0] - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(tt.coeffs()[1], 0.0);
        assert!((tt.coeffs()[2] - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(t.multiply(1, 2).unwrap().coeffs(), &[0.0, 1.0, 0.0]);
    }

    #[test]
    fn double_coset_edge_cases() {
        let g = symmetric(3);
        let trivial = double_coset_hypergroup(&g, &[0]).unwrap();
        let direct = group_hypergroup(&g);
        assert_eq!(trivial.lambda(), direct.lambda());
        assert_eq!(trivial.involution(), direct.involution());
        assert_eq!(trivial.label(1), "[(23)]");
        let whole: Vec<usize> = (0..6).collect();
        assert_eq!(double_coset_hypergroup(&g, &whole).unwrap().size(), 1);
        let t = g.index_of("(12)").unwrap();
        let dc = double_coset_hypergroup(&g, &[0, t]).unwrap();
        assert_eq!(dc.size(), 2);
        assert_eq!(dc.multiply(1, 1).unwrap().coeffs(), &[0.5, 0.5]);
        let c = g.index_of("(123)").unwrap();
        assert!(double_coset_hypergroup(&g, &[0, c]).is_err());
    }

    #[test]
    fn two_element_range() {
        assert!(two_element(0.0).is_err());
        assert!(two_element(1.5).is_err());
        assert_eq!(two_element(1.0).unwrap().multiply(1, 1).unwrap().coeffs(), &[1.0, 0.0]);
    }

    #[test]
    fn closed_form_matches_dimension_route() {
        // lambda = n0 / d^2 with d the positive root of d^2 = n0 + n1 d
        for n0 in 1..6u64 {
            for n1 in 0..10u64 {
                let d = (n1 as f64 + ((n1 * n1 + 4 * n0) as f64).sqrt()) / 2.0;
                let lam = n0 as f64 / (d * d);
                assert!((two_element_unit_coefficient(n0, n1) - lam).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn realizability() {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert_eq!(fusion_realizable_two_element(1.0 / (phi * phi), 64), Some((1, 1)));
        assert_eq!(fusion_realizable_two_element(2.0 - 3f64.sqrt(), 64), None);
        assert_eq!(fusion_realizable_two_element(1.0, 64), Some((1, 0)));
        // GHJ is the rescaling of f1^2 = 2 f0 + 2 f1, which is not a fusion rule
        assert_eq!(
            two_element_integral_relation(2.0 - 3f64.sqrt(), 64, 64, DEFAULT_TOL),
            Some((2, 2))
        );
    }
}
