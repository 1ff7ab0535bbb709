//! Admissible subfactor indices of the form `1 + sum of Jones indices`.
//!
//! Below 4 the Jones indices are `4 cos^2(pi/n)`, `n >= 3`; from 4 on they
//! form a continuum. Any continuum summand pushes the total to at least 5,
//! so continuum contributions are carried as the interval `[5, bound]`.

use std::f64::consts::PI;

use crate::error::{HyperError, Result};
use crate::hypergroup::DEFAULT_TOL;

pub const DEFAULT_NMAX: u32 = 100;

/// Lower end of the part of the admissible set generated by continuum
/// summands.
pub const CONTINUUM_TOTAL: f64 = 5.0;

#[derive(Debug, Clone, PartialEq)]
pub struct JonesSpectrum {
    /// `(n, 4 cos^2(pi/n))` for `n = 3..=n_max`, strictly increasing.
    pub discrete: Vec<(u32, f64)>,
    pub continuum_start: f64,
}

pub fn jones_value(n: u32) -> f64 {
    let c = (PI / n as f64).cos();
    4.0 * c * c
}

pub fn jones_spectrum(n_max: u32) -> Result<JonesSpectrum> {
    if n_max < 3 {
        return Err(HyperError::Precondition(format!("n_max must be at least 3, got {n_max}")));
    }
    Ok(JonesSpectrum {
        discrete: (3..=n_max).map(|n| (n, jones_value(n))).collect(),
        continuum_start: 4.0,
    })
}

/// Returns the `n` with `4 cos^2(pi/n) = value` within `tol`, if any.
pub fn jones_member(value: f64, n_max: u32, tol: f64) -> Option<u32> {
    (3..=n_max).find(|&n| (jones_value(n) - value).abs() <= tol)
}

/// The nontrivial subsector of the GHJ subfactor has dimension `2 + sqrt 3`;
/// checks that it is the Jones index `(2 cos(pi/12))^2`.
pub fn check_ghj_dimension() -> bool {
    let d = 2.0 + 3f64.sqrt();
    let c = 2.0 * (PI / 12.0).cos();
    (d - c * c).abs() <= DEFAULT_TOL && jones_member(d, DEFAULT_NMAX, DEFAULT_TOL) == Some(12)
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibleValue {
    pub value: f64,
    /// Jones `n` of each summand, nondecreasing.
    pub witness: Vec<u32>,
}

impl AdmissibleValue {
    pub fn reconstruct(&self) -> f64 {
        1.0 + self.witness.iter().map(|&n| jones_value(n)).sum::<f64>()
    }

    pub fn is_integer(&self, tol: f64) -> bool {
        (self.value - self.value.round()).abs() <= tol
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdmissibleIndexSet {
    pub bound: f64,
    pub n_max: u32,
    /// Sorted and deduplicated within tolerance.
    pub values: Vec<AdmissibleValue>,
    /// `[5, bound]` when `bound >= 5`: every value there is reached by a
    /// continuum summand.
    pub continuum: Option<(f64, f64)>,
}

impl AdmissibleIndexSet {
    pub fn non_integers(&self, tol: f64) -> Vec<&AdmissibleValue> {
        self.values.iter().filter(|v| !v.is_integer(tol)).collect()
    }

    pub fn contains(&self, x: f64, tol: f64) -> bool {
        self.values.iter().any(|v| (v.value - x).abs() <= tol)
            || self
                .continuum
                .is_some_and(|(lo, hi)| x >= lo - tol && x <= hi + tol)
    }
}

pub fn enumerate_admissible(bound: f64, n_max: u32) -> Result<AdmissibleIndexSet> {
    enumerate_admissible_tol(bound, n_max, DEFAULT_TOL)
}

pub fn enumerate_admissible_tol(bound: f64, n_max: u32, tol: f64) -> Result<AdmissibleIndexSet> {
    if bound.is_nan() || bound <= 1.0 || !bound.is_finite() {
        return Err(HyperError::Precondition(format!("bound must exceed 1, got {bound}")));
    }
    let spectrum = jones_spectrum(n_max)?;
    let summands = &spectrum.discrete;

    // Depth-first over nondecreasing index sequences; values increase with n.
    let mut found: Vec<AdmissibleValue> = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn walk(
        start: usize,
        total: f64,
        bound: f64,
        tol: f64,
        summands: &[(u32, f64)],
        stack: &mut Vec<u32>,
        found: &mut Vec<AdmissibleValue>,
    ) {
        found.push(AdmissibleValue {
            value: total,
            witness: stack.clone(),
        });
        for (idx, &(n, v)) in summands.iter().enumerate().skip(start) {
            if total + v > bound + tol {
                break;
            }
            stack.push(n);
            walk(idx, total + v, bound, tol, summands, stack, found);
            stack.pop();
        }
    }
    walk(0, 1.0, bound, tol, summands, &mut stack, &mut found);

    // Sort by value; among near-equal values keep the shortest witness,
    // then the lexicographically smallest.
    found.sort_by(|a, b| {
        a.value
            .total_cmp(&b.value)
            .then_with(|| a.witness.len().cmp(&b.witness.len()))
            .then_with(|| a.witness.cmp(&b.witness))
    });
    let mut values: Vec<AdmissibleValue> = Vec::new();
    for v in found {
        match values.last_mut() {
            Some(last) if (v.value - last.value).abs() <= tol => {
                let better = (v.witness.len(), &v.witness) < (last.witness.len(), &last.witness);
                if better {
                    *last = v;
                }
            }
            _ => values.push(v),
        }
    }

    let continuum = (bound >= CONTINUUM_TOTAL).then_some((CONTINUUM_TOTAL, bound));
    Ok(AdmissibleIndexSet {
        bound,
        n_max,
        values,
        continuum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spectrum_values() {
        let s = jones_spectrum(6).unwrap();
        assert_eq!(s.discrete.len(), 4);
        assert!((s.discrete[0].1 - 1.0).abs() < 1e-15);
        assert!((s.discrete[2].1 - (3.0 + 5f64.sqrt()) / 2.0).abs() < 1e-14);
        assert!((s.discrete[3].1 - 3.0).abs() < 1e-14);
        assert!(jones_spectrum(2).is_err());
    }

    #[test]
    fn spectrum_is_increasing_below_four() {
        let s = jones_spectrum(200).unwrap();
        assert!(s.discrete.windows(2).all(|w| w[0].1 < w[1].1));
        assert!(s.discrete.last().unwrap().1 < 4.0);
    }

    #[test]
    fn bound_two() {
        let set = enumerate_admissible(2.0, 100).unwrap();
        let values: Vec<f64> = set.values.iter().map(|v| v.value).collect();
        assert_eq!(values.len(), 2);
        assert!((values[0] - 1.0).abs() < 1e-12 && (values[1] - 2.0).abs() < 1e-12);
        assert!(set.continuum.is_none());
    }

    #[test]
    fn witnesses_are_shortest() {
        let set = enumerate_admissible(4.0, 100).unwrap();
        let three = set.values.iter().find(|v| (v.value - 3.0).abs() < 1e-9).unwrap();
        assert_eq!(three.witness, vec![4]);
        let four = set.values.iter().find(|v| (v.value - 4.0).abs() < 1e-9).unwrap();
        assert_eq!(four.witness, vec![6]);
    }

    #[test]
    fn golden_value_is_a_jones_index() {
        assert_eq!(jones_member((3.0 + 5f64.sqrt()) / 2.0, 100, 1e-9), Some(5));
        assert_eq!(jones_member(2.0 + 3f64.sqrt() + 0.01, 100, 1e-9), None);
        assert!(check_ghj_dimension());
    }

    #[test]
    fn bad_bound() {
        assert!(enumerate_admissible(1.0, 10).is_err());
        assert!(enumerate_admissible(f64::NAN, 10).is_err());
    }
}
