//! Finite hypergroup tables.
//!
//! A table holds the structure constants `lambda[i][j][l]` of the product
//! `k_i k_j = sum_l lambda[i][j][l] k_l` together with the neutral element and
//! the involution `i -> i*`. Every operation here is a pure function of an
//! immutable table.

use std::fmt;

use crate::error::{check_index, HyperError, Result};
use crate::tensor::Tensor3;

/// Default absolute tolerance for all scalar comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    Nonnegativity,
    Convexity,
    UnitLaw,
    Associativity,
    Involution,
    InvolutionLaw,
    WeightSymmetry,
    /// Used by the fusion ring and group validators.
    Integrality,
    FrobeniusSymmetry,
    LatinSquare,
    Inverse,
    Closure,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::Nonnegativity => "nonnegativity",
            Axiom::Convexity => "convexity",
            Axiom::UnitLaw => "unit law",
            Axiom::Associativity => "associativity",
            Axiom::Involution => "involution",
            Axiom::InvolutionLaw => "involution law",
            Axiom::WeightSymmetry => "weight symmetry",
            Axiom::Integrality => "integrality",
            Axiom::FrobeniusSymmetry => "frobenius symmetry",
            Axiom::LatinSquare => "latin square",
            Axiom::Inverse => "inverse",
            Axiom::Closure => "closure",
        }
    }

    pub fn from_name(name: &str) -> Option<Axiom> {
        const ALL: [Axiom; 12] = [
            Axiom::Nonnegativity,
            Axiom::Convexity,
            Axiom::UnitLaw,
            Axiom::Associativity,
            Axiom::Involution,
            Axiom::InvolutionLaw,
            Axiom::WeightSymmetry,
            Axiom::Integrality,
            Axiom::FrobeniusSymmetry,
            Axiom::LatinSquare,
            Axiom::Inverse,
            Axiom::Closure,
        ];
        ALL.into_iter().find(|a| a.name() == name)
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub axiom: Axiom,
    pub indices: Vec<usize>,
    pub magnitude: f64,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let idx: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(
            f,
            "{} at ({}) by {:.3e}",
            self.axiom,
            idx.join(","),
            self.magnitude
        )
    }
}

/// Outcome of an axiom check. Warnings never affect `passed`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub warnings: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: Axiom, indices: Vec<usize>, magnitude: f64) {
        self.violations.push(Violation {
            axiom,
            indices,
            magnitude,
        });
    }

    pub fn warn(&mut self, axiom: Axiom, indices: Vec<usize>, magnitude: f64) {
        self.warnings.push(Violation {
            axiom,
            indices,
            magnitude,
        });
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn into_result(self) -> Result<()> {
        if self.passed() {
            Ok(())
        } else {
            Err(HyperError::Axiom(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "passed")?;
        } else {
            write!(f, "failed with {} violation(s)", self.violations.len())?;
            for v in self.violations.iter().take(8) {
                write!(f, "; {v}")?;
            }
            if self.violations.len() > 8 {
                write!(f, "; ...")?;
            }
        }
        Ok(())
    }
}

/// A convex combination of basis elements.
#[derive(Debug, Clone, PartialEq)]
pub struct Mixture {
    coeffs: Vec<f64>,
}

impl Mixture {
    /// Checks nonnegativity and total mass within `tol`.
    pub fn new(coeffs: Vec<f64>, tol: f64) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(HyperError::Structural("empty mixture".into()));
        }
        if let Some((i, c)) = coeffs.iter().enumerate().find(|(_, c)| **c < -tol) {
            return Err(HyperError::Precondition(format!(
                "mixture coefficient {i} is negative ({c})"
            )));
        }
        let total: f64 = coeffs.iter().sum();
        if (total - 1.0).abs() > tol {
            return Err(HyperError::Precondition(format!(
                "mixture coefficients sum to {total}, not 1"
            )));
        }
        Ok(Self { coeffs })
    }

    /// The point mass on basis element `index`.
    pub fn point(size: usize, index: usize) -> Result<Self> {
        check_index(index, size)?;
        let mut coeffs = vec![0.0; size];
        coeffs[index] = 1.0;
        Ok(Self { coeffs })
    }

    pub fn uniform(size: usize) -> Self {
        assert!(size > 0);
        Self {
            coeffs: vec![1.0 / size as f64; size],
        }
    }

    pub(crate) fn from_raw(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_abs_diff(&self, other: &Mixture) -> f64 {
        assert_eq!(self.len(), other.len());
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Bilinear extension of a structure tensor to mixtures.
pub(crate) fn bilinear(t: &Tensor3, p: &[f64], q: &[f64]) -> Vec<f64> {
    let [d0, d1, d2] = t.dims();
    debug_assert!(p.len() == d0 && q.len() == d1);
    let mut out = vec![0.0; d2];
    for (i, &pi) in p.iter().enumerate() {
        if pi == 0.0 {
            continue;
        }
        for (j, &qj) in q.iter().enumerate() {
            let w = pi * qj;
            if w == 0.0 {
                continue;
            }
            for (o, &l) in out.iter_mut().zip(t.row(i, j)) {
                *o += w * l;
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
pub struct HypergroupTable {
    labels: Vec<String>,
    unit: usize,
    involution: Vec<usize>,
    lambda: Tensor3,
}

impl HypergroupTable {
    /// Builds a table after structural checks only; axioms are not checked.
    pub fn new(
        labels: Vec<String>,
        unit: usize,
        involution: Vec<usize>,
        lambda: Tensor3,
    ) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(HyperError::Structural("hypergroup needs at least one element".into()));
        }
        if unit >= n {
            return Err(HyperError::Structural(format!("unit {unit} out of range for {n} elements")));
        }
        if involution.len() != n {
            return Err(HyperError::Structural(format!(
                "involution has length {}, expected {n}",
                involution.len()
            )));
        }
        if let Some(&bad) = involution.iter().find(|&&j| j >= n) {
            return Err(HyperError::Structural(format!("involution entry {bad} out of range")));
        }
        if lambda.dims() != [n, n, n] {
            return Err(HyperError::Structural(format!(
                "structure tensor has shape {:?}, expected [{n}, {n}, {n}]",
                lambda.dims()
            )));
        }
        Ok(Self {
            labels,
            unit,
            involution,
            lambda,
        })
    }

    /// `new` followed by `validate`; axiom violations become an error.
    pub fn checked(
        labels: Vec<String>,
        unit: usize,
        involution: Vec<usize>,
        lambda: Tensor3,
        tol: f64,
    ) -> Result<Self> {
        let table = Self::new(labels, unit, involution, lambda)?;
        table.validate(tol).into_result()?;
        Ok(table)
    }

    /// Builds a table whose involution is read off from the positions of the
    /// unit coefficient.
    pub fn with_inferred_involution(
        labels: Vec<String>,
        unit: usize,
        lambda: Tensor3,
        tol: f64,
    ) -> Result<Self> {
        let n = labels.len();
        if unit >= n || lambda.dims() != [n, n, n] {
            return Err(HyperError::Structural(
                "cannot infer involution from a malformed table".into(),
            ));
        }
        let involution = infer_involution(&lambda, unit, tol)?;
        Self::new(labels, unit, involution, lambda)
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn involution(&self) -> &[usize] {
        &self.involution
    }

    pub fn lambda(&self) -> &Tensor3 {
        &self.lambda
    }

    pub fn coeff(&self, i: usize, j: usize, l: usize) -> f64 {
        self.lambda.get(i, j, l)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size() {
            return Err(HyperError::Structural("label count mismatch".into()));
        }
        self.labels = labels;
        Ok(self)
    }

    /// Clamps entries in `[-tol, 0)` to zero and rescales every row to unit mass.
    pub fn normalize(&mut self, tol: f64) {
        let n = self.size();
        for i in 0..n {
            for j in 0..n {
                let row = self.lambda.row_mut(i, j);
                for x in row.iter_mut() {
                    if *x < 0.0 && *x >= -tol {
                        *x = 0.0;
                    }
                }
                let s: f64 = row.iter().sum();
                if s > 0.0 {
                    row.iter_mut().for_each(|x| *x /= s);
                }
            }
        }
    }

    /// Checks every hypergroup axiom and reports all violations beyond `tol`.
    pub fn validate(&self, tol: f64) -> ValidationReport {
        let n = self.size();
        let u = self.unit;
        let lam = &self.lambda;
        let mut report = ValidationReport::default();

        for i in 0..n {
            for j in 0..n {
                let row = lam.row(i, j);
                for (l, &x) in row.iter().enumerate() {
                    if x < -tol {
                        report.push(Axiom::Nonnegativity, vec![i, j, l], -x);
                    }
                }
                let s: f64 = row.iter().sum();
                if (s - 1.0).abs() > tol {
                    report.push(Axiom::Convexity, vec![i, j], (s - 1.0).abs());
                }
            }
        }

        for j in 0..n {
            for l in 0..n {
                let delta = if j == l { 1.0 } else { 0.0 };
                let left = (lam.get(u, j, l) - delta).abs();
                if left > tol {
                    report.push(Axiom::UnitLaw, vec![u, j, l], left);
                }
                let right = (lam.get(j, u, l) - delta).abs();
                if right > tol {
                    report.push(Axiom::UnitLaw, vec![j, u, l], right);
                }
            }
        }

        // (k_i k_j) k_l against k_i (k_j k_l)
        for i in 0..n {
            for j in 0..n {
                let ij = lam.row(i, j);
                for l in 0..n {
                    let jl = lam.row(j, l);
                    let mut worst = (0usize, 0.0f64);
                    for p in 0..n {
                        let lhs: f64 = (0..n).map(|m| ij[m] * lam.get(m, l, p)).sum();
                        let rhs: f64 = (0..n).map(|m| jl[m] * lam.get(i, m, p)).sum();
                        let d = (lhs - rhs).abs();
                        if d > worst.1 {
                            worst = (p, d);
                        }
                    }
                    if worst.1 > tol {
                        report.push(Axiom::Associativity, vec![i, j, l, worst.0], worst.1);
                    }
                }
            }
        }

        let inv = &self.involution;
        let mut involution_ok = true;
        for i in 0..n {
            if inv[inv[i]] != i {
                involution_ok = false;
                report.push(Axiom::Involution, vec![i], 1.0);
            }
        }
        if inv[u] != u {
            involution_ok = false;
            report.push(Axiom::Involution, vec![u], 1.0);
        }

        for i in 0..n {
            for j in 0..n {
                let x = lam.get(i, j, u);
                if j == inv[i] {
                    if x <= tol {
                        report.push(Axiom::InvolutionLaw, vec![i, j], tol - x);
                    }
                } else if x > tol {
                    report.push(Axiom::InvolutionLaw, vec![i, j], x);
                }
            }
        }

        if involution_ok {
            for i in 0..n {
                let a = lam.get(i, inv[i], u);
                let b = lam.get(inv[i], i, u);
                if a > tol && b > tol {
                    let (mi, mj) = (1.0 / a, 1.0 / b);
                    let d = (mi - mj).abs();
                    if d > tol * mi.max(mj).max(1.0) {
                        report.push(Axiom::WeightSymmetry, vec![i, inv[i]], d);
                    }
                }
            }
        }

        report
    }

    /// The convex vector `lambda[a][b][..]`.
    pub fn multiply(&self, a: usize, b: usize) -> Result<Mixture> {
        check_index(a, self.size())?;
        check_index(b, self.size())?;
        Ok(Mixture::from_raw(self.lambda.row(a, b).to_vec()))
    }

    pub fn multiply_mixtures(&self, p: &Mixture, q: &Mixture) -> Result<Mixture> {
        let n = self.size();
        if p.len() != n || q.len() != n {
            return Err(HyperError::Mismatch(format!(
                "mixtures of length {} and {} over a table of size {n}",
                p.len(),
                q.len()
            )));
        }
        Ok(Mixture::from_raw(bilinear(&self.lambda, p.coeffs(), q.coeffs())))
    }

    /// `mu_i = 1 / lambda[i][i*][unit]`.
    pub fn weights(&self, tol: f64) -> Result<Vec<f64>> {
        (0..self.size())
            .map(|i| {
                let c = self.lambda.get(i, self.involution[i], self.unit);
                if c <= tol {
                    let mut report = ValidationReport::default();
                    report.push(Axiom::InvolutionLaw, vec![i, self.involution[i]], tol - c);
                    Err(HyperError::Axiom(report))
                } else {
                    Ok(1.0 / c)
                }
            })
            .collect()
    }

    /// Haar measure `H = (sum mu)^-1 sum mu_i k_i`.
    pub fn haar(&self, tol: f64) -> Result<Mixture> {
        let mu = self.weights(tol)?;
        let total: f64 = mu.iter().sum();
        Ok(Mixture::from_raw(mu.iter().map(|m| m / total).collect()))
    }

    pub fn is_commutative(&self, tol: f64) -> bool {
        let n = self.size();
        (0..n).all(|i| {
            (i + 1..n).all(|j| {
                self.lambda
                    .row(i, j)
                    .iter()
                    .zip(self.lambda.row(j, i))
                    .all(|(a, b)| (a - b).abs() <= tol)
            })
        })
    }

    /// The left-multiplication operator of `b` on functions over the basis,
    /// `(R_b f)(a) = sum_c lambda[a][b][c] f(c)`, as a row-major matrix with
    /// entry `(a, c)`.
    pub fn right_action_matrix(&self, b: usize) -> Vec<Vec<f64>> {
        let n = self.size();
        (0..n)
            .map(|a| (0..n).map(|c| self.lambda.get(a, b, c)).collect())
            .collect()
    }
}

/// Reads the involution off the unit column: `i* ` is the unique `j` with
/// `lambda[i][j][unit] > tol`.
pub fn infer_involution(lambda: &Tensor3, unit: usize, tol: f64) -> Result<Vec<usize>> {
    let n = lambda.dims()[0];
    (0..n)
        .map(|i| {
            let candidates: Vec<usize> = (0..n).filter(|&j| lambda.get(i, j, unit) > tol).collect();
            match candidates.as_slice() {
                [j] => Ok(*j),
                [] => Err(HyperError::Parse(format!(
                    "cannot infer involution: element {i} has no partner"
                ))),
                _ => Err(HyperError::Parse(format!(
                    "cannot infer involution: element {i} has partners {candidates:?}"
                ))),
            }
        })
        .collect()
}

/// Searches for a relabelling `pi` with `b[pi i][pi j][pi l] = a[i][j][l]`
/// within `tol`. Returns `pi` as a vector indexed by elements of `a`.
pub fn find_isomorphism(a: &HypergroupTable, b: &HypergroupTable, tol: f64) -> Option<Vec<usize>> {
    let n = a.size();
    if b.size() != n {
        return None;
    }
    let wa = a.weights(tol).ok()?;
    let wb = b.weights(tol).ok()?;
    let close = |x: f64, y: f64| (x - y).abs() <= tol * x.abs().max(y.abs()).max(1.0);

    // Order: unit first, then the rest of `a` in index order.
    let mut order = vec![a.unit()];
    order.extend((0..n).filter(|&i| i != a.unit()));

    let mut pi = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn consistent(
        a: &HypergroupTable,
        b: &HypergroupTable,
        pi: &[usize],
        assigned: &[usize],
        tol: f64,
    ) -> bool {
        for &i in assigned {
            for &j in assigned {
                for &l in assigned {
                    if (a.coeff(i, j, l) - b.coeff(pi[i], pi[j], pi[l])).abs() > tol {
                        return false;
                    }
                }
            }
        }
        true
    }

    #[allow(clippy::too_many_arguments)]
    fn search(
        depth: usize,
        order: &[usize],
        a: &HypergroupTable,
        b: &HypergroupTable,
        pi: &mut Vec<usize>,
        used: &mut Vec<bool>,
        candidates: &dyn Fn(usize, usize) -> bool,
        tol: f64,
    ) -> bool {
        if depth == order.len() {
            return true;
        }
        let i = order[depth];
        for cand in 0..b.size() {
            if used[cand] || !candidates(i, cand) {
                continue;
            }
            pi[i] = cand;
            used[cand] = true;
            if consistent(a, b, pi, &order[..=depth], tol)
                && search(depth + 1, order, a, b, pi, used, candidates, tol)
            {
                return true;
            }
            used[cand] = false;
            pi[i] = usize::MAX;
        }
        false
    }

    let candidates = |i: usize, c: usize| -> bool {
        if i == a.unit() {
            return c == b.unit();
        }
        c != b.unit() && close(wa[i], wb[c])
    };
    if search(0, &order, a, b, &mut pi, &mut used, &candidates, tol) {
        Some(pi)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z2() -> HypergroupTable {
        let mut lam = Tensor3::zeros(2, 2, 2);
        lam.set(0, 0, 0, 1.0);
        lam.set(0, 1, 1, 1.0);
        lam.set(1, 0, 1, 1.0);
        lam.set(1, 1, 0, 1.0);
        HypergroupTable::new(vec!["e".into(), "g".into()], 0, vec![0, 1], lam).unwrap()
    }

    fn ghj() -> HypergroupTable {
        let s3 = 3f64.sqrt();
        let mut lam = Tensor3::zeros(2, 2, 2);
        lam.set(0, 0, 0, 1.0);
        lam.set(0, 1, 1, 1.0);
        lam.set(1, 0, 1, 1.0);
        lam.set(1, 1, 0, 2.0 - s3);
        lam.set(1, 1, 1, s3 - 1.0);
        HypergroupTable::new(vec!["a0".into(), "a1".into()], 0, vec![0, 1], lam).unwrap()
    }

    #[test]
    fn z2_and_ghj_validate() {
        assert!(z2().validate(DEFAULT_TOL).passed());
        assert!(ghj().validate(DEFAULT_TOL).passed());
    }

    #[test]
    fn zeroed_unit_coefficient_breaks_involution_law() {
        let t = ghj();
        let mut lam = t.lambda().clone();
        lam.set(1, 1, 0, 0.0);
        let broken = HypergroupTable::new(t.labels().to_vec(), 0, vec![0, 1], lam).unwrap();
        let report = broken.validate(DEFAULT_TOL);
        assert!(!report.passed());
        let v = report
            .violations
            .iter()
            .find(|v| v.axiom == Axiom::InvolutionLaw)
            .expect("involution law violation");
        assert_eq!(v.indices, vec![1, 1]);
        // every broken axiom is listed, not just the first
        assert!(report.has(Axiom::Convexity));
    }

    #[test]
    fn structural_errors_are_not_axiom_errors() {
        let err = HypergroupTable::new(vec!["e".into()], 0, vec![0], Tensor3::zeros(1, 1, 2));
        assert!(matches!(err, Err(HyperError::Structural(_))));
        let err = HypergroupTable::new(vec!["e".into()], 3, vec![0], Tensor3::zeros(1, 1, 1));
        assert!(matches!(err, Err(HyperError::Structural(_))));
    }

    #[test]
    fn ghj_weights_and_haar() {
        let s3 = 3f64.sqrt();
        let t = ghj();
        let mu = t.weights(DEFAULT_TOL).unwrap();
        assert!((mu[0] - 1.0).abs() < 1e-12);
        assert!((mu[1] - (2.0 + s3)).abs() < 1e-12);
        let h = t.haar(DEFAULT_TOL).unwrap();
        let norm = 1.0 / (3.0 + s3);
        assert!((h.coeffs()[0] - norm).abs() < 1e-12);
        assert!((h.coeffs()[1] - norm * (2.0 + s3)).abs() < 1e-12);
        let absorbed = t
            .multiply_mixtures(&h, &Mixture::point(2, 1).unwrap())
            .unwrap();
        assert!(absorbed.max_abs_diff(&h) < 1e-12);
    }

    #[test]
    fn multiply_rejects_out_of_range() {
        assert!(matches!(
            z2().multiply(0, 2),
            Err(HyperError::IndexOutOfRange { index: 2, size: 2 })
        ));
    }

    #[test]
    fn uniform_on_z2_squares_to_itself() {
        let t = z2();
        let u = Mixture::uniform(2);
        let sq = t.multiply_mixtures(&u, &u).unwrap();
        assert!(sq.max_abs_diff(&u) < 1e-15);
    }

    #[test]
    fn mixtures_of_wrong_size_are_rejected() {
        let t = z2();
        let p = Mixture::uniform(3);
        assert!(matches!(
            t.multiply_mixtures(&p, &p),
            Err(HyperError::Mismatch(_))
        ));
    }

    #[test]
    fn weights_fail_without_unit_coefficient() {
        let t = ghj();
        let mut lam = t.lambda().clone();
        lam.set(1, 1, 0, 0.0);
        lam.set(1, 1, 1, 1.0);
        let broken = HypergroupTable::new(t.labels().to_vec(), 0, vec![0, 1], lam).unwrap();
        assert!(matches!(broken.weights(DEFAULT_TOL), Err(HyperError::Axiom(_))));
    }

    #[test]
    fn involution_is_inferred() {
        assert_eq!(infer_involution(z2().lambda(), 0, DEFAULT_TOL).unwrap(), vec![0, 1]);
        let mut lam = z2().lambda().clone();
        lam.set(1, 0, 0, 0.5);
        assert!(matches!(
            infer_involution(&lam, 0, DEFAULT_TOL),
            Err(HyperError::Parse(_))
        ));
    }

    #[test]
    fn normalize_clamps_tiny_negatives() {
        let t = ghj();
        let mut lam = t.lambda().clone();
        lam.set(0, 1, 0, -1e-12);
        let mut t = HypergroupTable::new(t.labels().to_vec(), 0, vec![0, 1], lam).unwrap();
        t.normalize(DEFAULT_TOL);
        assert_eq!(t.coeff(0, 1, 0), 0.0);
        assert!(t.validate(DEFAULT_TOL).passed());
    }

    #[test]
    fn isomorphism_relabels() {
        let t = ghj();
        assert_eq!(find_isomorphism(&t, &t, 1e-9), Some(vec![0, 1]));
        assert!(find_isomorphism(&t, &z2(), 1e-9).is_none());
    }
}
