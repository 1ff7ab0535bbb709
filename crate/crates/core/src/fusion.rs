//! Fusion rings, their Perron-Frobenius dimensions, and the rescaled
//! hypergroup `k_i = f_i / dim_i`.

use crate::error::{check_index, HyperError, Result};
use crate::group::CayleyGroup;
use crate::hypergroup::{Axiom, HypergroupTable, ValidationReport, DEFAULT_TOL};
use crate::tensor::Tensor3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FusionRing {
    labels: Vec<String>,
    unit: usize,
    conjugation: Vec<usize>,
    /// `n[i][j][l]` is the multiplicity of `f_l` in `f_i f_j`.
    n: Vec<Vec<Vec<u64>>>,
}

impl FusionRing {
    /// Builds a ring and rejects it if any hard axiom fails. Frobenius
    /// symmetry failures are only warnings (see [`FusionRing::validate`]).
    pub fn new(
        labels: Vec<String>,
        unit: usize,
        conjugation: Vec<usize>,
        n: Vec<Vec<Vec<u64>>>,
    ) -> Result<Self> {
        let ring = Self::unchecked(labels, unit, conjugation, n)?;
        ring.validate().into_result()?;
        Ok(ring)
    }

    pub fn unchecked(
        labels: Vec<String>,
        unit: usize,
        conjugation: Vec<usize>,
        n: Vec<Vec<Vec<u64>>>,
    ) -> Result<Self> {
        let size = labels.len();
        if size == 0 {
            return Err(HyperError::Structural("fusion ring needs at least one element".into()));
        }
        check_index(unit, size)?;
        if conjugation.len() != size || conjugation.iter().any(|&c| c >= size) {
            return Err(HyperError::Structural("conjugation is not a map on the basis".into()));
        }
        let shape_ok = n.len() == size
            && n.iter()
                .all(|p| p.len() == size && p.iter().all(|r| r.len() == size));
        if !shape_ok {
            return Err(HyperError::Structural(format!(
                "fusion coefficients must have shape [{size}, {size}, {size}]"
            )));
        }
        Ok(Self {
            labels,
            unit,
            conjugation,
            n,
        })
    }

    /// Group ring: `f_g f_h = f_{gh}`.
    pub fn group_ring(g: &CayleyGroup) -> Self {
        let size = g.order();
        let mut n = vec![vec![vec![0u64; size]; size]; size];
        for (i, plane) in n.iter_mut().enumerate() {
            for (j, row) in plane.iter_mut().enumerate() {
                row[g.mul(i, j)] = 1;
            }
        }
        let conjugation = (0..size).map(|i| g.inverse(i)).collect();
        Self::new(g.labels().to_vec(), g.identity(), conjugation, n).expect("group ring is valid")
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn conjugation(&self) -> &[usize] {
        &self.conjugation
    }

    pub fn coefficients(&self) -> &[Vec<Vec<u64>>] {
        &self.n
    }

    pub fn coeff(&self, i: usize, j: usize, l: usize) -> u64 {
        self.n[i][j][l]
    }

    pub fn validate(&self) -> ValidationReport {
        let size = self.size();
        let u = self.unit;
        let conj = &self.conjugation;
        let n = &self.n;
        let mut report = ValidationReport::default();

        for i in 0..size {
            if conj[conj[i]] != i {
                report.push(Axiom::Involution, vec![i], 1.0);
            }
            for l in 0..size {
                let delta = u64::from(i == l);
                if n[u][i][l] != delta || n[i][u][l] != delta {
                    report.push(Axiom::UnitLaw, vec![i, l], 1.0);
                }
            }
            for j in 0..size {
                let expected = u64::from(j == conj[i]);
                if n[i][j][u] != expected {
                    report.push(
                        Axiom::InvolutionLaw,
                        vec![i, j],
                        n[i][j][u].abs_diff(expected) as f64,
                    );
                }
            }
        }

        for i in 0..size {
            for j in 0..size {
                for l in 0..size {
                    for p in 0..size {
                        let lhs: u64 = (0..size).map(|m| n[i][j][m] * n[m][l][p]).sum();
                        let rhs: u64 = (0..size).map(|m| n[j][l][m] * n[i][m][p]).sum();
                        if lhs != rhs {
                            report.push(Axiom::Associativity, vec![i, j, l, p], lhs.abs_diff(rhs) as f64);
                        }
                    }
                }
            }
        }

        for i in 0..size {
            for j in 0..size {
                for l in 0..size {
                    let a = n[i][j][l];
                    let b = n[conj[i]][l][j];
                    if a != b {
                        report.warn(Axiom::FrobeniusSymmetry, vec![i, j, l], a.abs_diff(b) as f64);
                    }
                }
            }
        }
        report
    }

    /// The left multiplication matrix `(N_i)_{l m} = n[i][m][l]`.
    pub fn left_matrix(&self, i: usize) -> Vec<Vec<f64>> {
        let size = self.size();
        (0..size)
            .map(|l| (0..size).map(|m| self.n[i][m][l] as f64).collect())
            .collect()
    }

    /// Whether `sum_i N_i` is irreducible, i.e. its support graph is
    /// strongly connected.
    pub fn fusion_graph_irreducible(&self) -> bool {
        let size = self.size();
        let adjacent = |m: usize, l: usize| (0..size).any(|i| self.n[i][m][l] > 0);
        let reach = |forward: bool| {
            let mut seen = vec![false; size];
            seen[0] = true;
            let mut stack = vec![0];
            while let Some(x) = stack.pop() {
                for y in 0..size {
                    let edge = if forward { adjacent(x, y) } else { adjacent(y, x) };
                    if edge && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
            seen.into_iter().all(|s| s)
        };
        reach(true) && reach(false)
    }
}

/// Perron-Frobenius dimensions of a fusion ring.
#[derive(Debug, Clone, PartialEq)]
pub struct DimensionVector {
    pub dims: Vec<f64>,
}

#[derive(Debug, Clone, Copy)]
pub struct PowerIteration {
    pub max_iterations: usize,
    pub residual: f64,
}

impl Default for PowerIteration {
    fn default() -> Self {
        Self {
            max_iterations: 100_000,
            residual: 1e-12,
        }
    }
}

/// Spectral radius of a nonnegative matrix by power iteration on `A + I`,
/// starting from the all-ones vector. The shift removes periodicity, and
/// `rho(A + I) = rho(A) + 1` for nonnegative `A`.
pub fn spectral_radius(a: &[Vec<f64>], opts: PowerIteration) -> Result<f64> {
    let size = a.len();
    let apply = |v: &[f64]| -> Vec<f64> {
        a.iter()
            .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
            .collect()
    };
    let mut v = vec![1.0; size];
    for _ in 0..opts.max_iterations {
        let av = apply(&v);
        let rho = av.iter().zip(&v).map(|(x, y)| x * y).sum::<f64>()
            / v.iter().map(|x| x * x).sum::<f64>();
        let residual = av
            .iter()
            .zip(&v)
            .map(|(x, y)| (x - rho * y).abs())
            .fold(0.0, f64::max);
        if residual <= opts.residual * rho.max(1.0) {
            return Ok(rho);
        }
        let mut next: Vec<f64> = av.iter().zip(&v).map(|(x, y)| x + y).collect();
        let scale = next.iter().cloned().fold(0.0, f64::max);
        next.iter_mut().for_each(|x| *x /= scale);
        v = next;
    }
    Err(HyperError::Numerical(format!(
        "power iteration did not reach residual {:e} in {} iterations",
        opts.residual, opts.max_iterations
    )))
}

pub fn pf_dimensions(ring: &FusionRing) -> Result<DimensionVector> {
    pf_dimensions_with(ring, PowerIteration::default())
}

pub fn pf_dimensions_with(ring: &FusionRing, opts: PowerIteration) -> Result<DimensionVector> {
    if !ring.fusion_graph_irreducible() {
        return Err(HyperError::Precondition("fusion graph is reducible".into()));
    }
    let dims = (0..ring.size())
        .map(|i| spectral_radius(&ring.left_matrix(i), opts))
        .collect::<Result<Vec<f64>>>()?;
    let dv = DimensionVector { dims };
    let defect = dimension_defect(ring, &dv);
    if defect > 1e-7 {
        return Err(HyperError::Numerical(format!(
            "dimensions are not multiplicative (defect {defect:.3e})"
        )));
    }
    Ok(dv)
}

/// `max |d_i d_j - sum_l n_ij^l d_l|`.
pub fn dimension_defect(ring: &FusionRing, dims: &DimensionVector) -> f64 {
    let d = &dims.dims;
    let size = ring.size();
    let mut worst = 0.0f64;
    for i in 0..size {
        for j in 0..size {
            let rhs: f64 = (0..size).map(|l| ring.coeff(i, j, l) as f64 * d[l]).sum();
            worst = worst.max((d[i] * d[j] - rhs).abs());
        }
    }
    worst
}

/// `lambda[i][j][l] = n_ij^l d_l / (d_i d_j)`.
pub fn from_fusion_ring(ring: &FusionRing) -> Result<HypergroupTable> {
    let dims = pf_dimensions(ring)?;
    rescale(ring, &dims)
}

pub fn rescale(ring: &FusionRing, dims: &DimensionVector) -> Result<HypergroupTable> {
    let size = ring.size();
    let d = &dims.dims;
    let mut lam = Tensor3::zeros(size, size, size);
    for i in 0..size {
        for j in 0..size {
            for l in 0..size {
                let nij = ring.coeff(i, j, l);
                if nij > 0 {
                    lam.set(i, j, l, nij as f64 * d[l] / (d[i] * d[j]));
                }
            }
        }
    }
    let mut table = HypergroupTable::new(
        ring.labels().to_vec(),
        ring.unit(),
        ring.conjugation().to_vec(),
        lam,
    )?;
    table.normalize(DEFAULT_TOL);
    table.validate(DEFAULT_TOL).into_result()?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::cyclic;

    fn fibonacci() -> FusionRing {
        FusionRing::new(
            vec!["1".into(), "t".into()],
            0,
            vec![0, 1],
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![1, 1]]],
        )
        .unwrap()
    }

    #[test]
    fn group_ring_dimensions_are_one() {
        let d = pf_dimensions(&FusionRing::group_ring(&cyclic(2))).unwrap();
        assert_eq!(d.dims.len(), 2);
        assert!(d.dims.iter().all(|x| (x - 1.0).abs() < 1e-12));
    }

    #[test]
    fn golden_ratio() {
        let d = pf_dimensions(&fibonacci()).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((d.dims[1] - phi).abs() < 1e-12);
    }

    #[test]
    fn periodic_matrix_converges() {
        // bipartite adjacency, eigenvalues +-sqrt 2 and 0
        let a = vec![
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ];
        let rho = spectral_radius(&a, PowerIteration::default()).unwrap();
        assert!((rho - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn iteration_budget_is_enforced() {
        let a = vec![vec![1.0, 1.0], vec![1.0, 0.0]];
        let opts = PowerIteration {
            max_iterations: 2,
            residual: 1e-15,
        };
        assert!(matches!(spectral_radius(&a, opts), Err(HyperError::Numerical(_))));
    }

    #[test]
    fn broken_unit_is_rejected() {
        let err = FusionRing::new(
            vec!["1".into(), "t".into()],
            0,
            vec![0, 1],
            vec![vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1], vec![2, 1]]],
        );
        assert!(matches!(err, Err(HyperError::Axiom(_))));
    }
}
