//! Hypergroupoids of boundary conditions and their juxtaposition.
//!
//! Objects are phases. An arrow in `Mor(Y, X)` is a boundary condition with
//! phase `X` on the left and phase `Y` on the right; it is stored under the
//! ordered pair `(X, Y)`. Composing `a` in `Mor(Y, X)` with `b` in
//! `Mor(Z, Y)` gives a convex mixture over `Mor(Z, X)`.

use crate::constructions::{block_coefficients, block_counts};
use crate::error::{check_index, HyperError, Result};
use crate::group::CayleyGroup;
use crate::hypergroup::{bilinear, Axiom, HypergroupTable, ValidationReport};
use crate::tensor::Tensor3;

#[derive(Debug, Clone, PartialEq)]
pub struct Hypergroupoid {
    objects: Vec<String>,
    /// `mor[x][y]`: arrow labels of `Mor(y, x)`.
    mor: Vec<Vec<Vec<String>>>,
    /// `comp[x][y][z]`: tensor indexed by `Mor(y,x) x Mor(z,y) x Mor(z,x)`.
    comp: Vec<Vec<Vec<Tensor3>>>,
    /// `star[x][y][a]`: index in `mor[y][x]` of the reverse of arrow `a`.
    star: Vec<Vec<Vec<usize>>>,
    /// Identity arrow of each object, an index into `mor[x][x]`.
    unit: Vec<usize>,
}

/// A mixture of boundary conditions between two phases.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryState {
    /// Phase on the left (target of the arrows).
    pub to: usize,
    /// Phase on the right (source of the arrows).
    pub from: usize,
    pub coeffs: Vec<f64>,
}

impl BoundaryState {
    pub fn max_abs_diff(&self, other: &BoundaryState) -> f64 {
        assert_eq!((self.to, self.from), (other.to, other.from));
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

impl Hypergroupoid {
    pub fn new(
        objects: Vec<String>,
        mor: Vec<Vec<Vec<String>>>,
        comp: Vec<Vec<Vec<Tensor3>>>,
        star: Vec<Vec<Vec<usize>>>,
        unit: Vec<usize>,
    ) -> Result<Self> {
        let k = objects.len();
        if k == 0 {
            return Err(HyperError::Structural("groupoid needs at least one object".into()));
        }
        let square = |len: usize, inner: &dyn Fn(usize) -> usize| len == k && (0..k).all(|x| inner(x) == k);
        if !square(mor.len(), &|x| mor[x].len()) || !square(star.len(), &|x| star[x].len()) {
            return Err(HyperError::Structural("arrow tables must be indexed by object pairs".into()));
        }
        if unit.len() != k {
            return Err(HyperError::Structural("one unit arrow per object required".into()));
        }
        if comp.len() != k || comp.iter().any(|p| p.len() != k || p.iter().any(|r| r.len() != k)) {
            return Err(HyperError::Structural("composition must be indexed by object triples".into()));
        }
        for x in 0..k {
            check_index(unit[x], mor[x][x].len())?;
            for y in 0..k {
                let here = mor[x][y].len();
                let back = mor[y][x].len();
                if star[x][y].len() != here || star[x][y].iter().any(|&s| s >= back) {
                    return Err(HyperError::Structural(format!(
                        "star on Mor({}, {}) is malformed",
                        objects[y], objects[x]
                    )));
                }
                for z in 0..k {
                    let want = [here, mor[y][z].len(), mor[x][z].len()];
                    if comp[x][y][z].dims() != want {
                        return Err(HyperError::Structural(format!(
                            "composition ({x},{y},{z}) has shape {:?}, expected {want:?}",
                            comp[x][y][z].dims()
                        )));
                    }
                }
            }
        }
        Ok(Self {
            objects,
            mor,
            comp,
            star,
            unit,
        })
    }

    /// The one-object groupoid of a hypergroup.
    pub fn from_hypergroup(table: &HypergroupTable) -> Self {
        Self::from_hypergroup_named(table, "B")
    }

    pub fn from_hypergroup_named(table: &HypergroupTable, object: &str) -> Self {
        Self::new(
            vec![object.to_string()],
            vec![vec![table.labels().to_vec()]],
            vec![vec![vec![table.lambda().clone()]]],
            vec![vec![table.involution().to_vec()]],
            vec![table.unit()],
        )
        .expect("hypergroup tables have consistent shapes")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_index(&self, name: &str) -> Option<usize> {
        self.objects.iter().position(|o| o == name)
    }

    /// Labels of `Mor(from, to)`.
    pub fn arrows(&self, to: usize, from: usize) -> &[String] {
        &self.mor[to][from]
    }

    pub fn mor(&self) -> &[Vec<Vec<String>>] {
        &self.mor
    }

    pub fn comp(&self) -> &[Vec<Vec<Tensor3>>] {
        &self.comp
    }

    pub fn comp_tensor(&self, x: usize, y: usize, z: usize) -> &Tensor3 {
        &self.comp[x][y][z]
    }

    pub fn star(&self) -> &[Vec<Vec<usize>>] {
        &self.star
    }

    pub fn units(&self) -> &[usize] {
        &self.unit
    }

    /// Finds an arrow by label. Accepts `label` when it is unique across the
    /// groupoid, or the qualified form `TO<FROM:label`.
    pub fn find_arrow(&self, spec: &str) -> Result<(usize, usize, usize)> {
        if let Some((objs, label)) = spec.split_once(':') {
            if let Some((to, from)) = objs.split_once('<') {
                let x = self
                    .object_index(to)
                    .ok_or_else(|| HyperError::Mismatch(format!("unknown object {to:?}")))?;
                let y = self
                    .object_index(from)
                    .ok_or_else(|| HyperError::Mismatch(format!("unknown object {from:?}")))?;
                let a = self.mor[x][y]
                    .iter()
                    .position(|l| l == label)
                    .ok_or_else(|| HyperError::Mismatch(format!("no arrow {label:?} in Mor({from}, {to})")))?;
                return Ok((x, y, a));
            }
        }
        let k = self.objects.len();
        let hits: Vec<(usize, usize, usize)> = (0..k)
            .flat_map(|x| (0..k).map(move |y| (x, y)))
            .filter_map(|(x, y)| {
                self.mor[x][y]
                    .iter()
                    .position(|l| l == spec)
                    .map(|a| (x, y, a))
            })
            .collect();
        match hits.as_slice() {
            [hit] => Ok(*hit),
            [] => Err(HyperError::Mismatch(format!("no arrow labelled {spec:?}"))),
            _ => Err(HyperError::Mismatch(format!(
                "arrow label {spec:?} is ambiguous; qualify it as TO<FROM:{spec}"
            ))),
        }
    }

    /// Point mass on a single arrow of `Mor(from, to)`.
    pub fn state(&self, to: usize, from: usize, arrow: usize) -> Result<BoundaryState> {
        check_index(to, self.objects.len())?;
        check_index(from, self.objects.len())?;
        let n = self.mor[to][from].len();
        check_index(arrow, n)?;
        let mut coeffs = vec![0.0; n];
        coeffs[arrow] = 1.0;
        Ok(BoundaryState { to, from, coeffs })
    }

    pub fn state_for(&self, spec: &str) -> Result<BoundaryState> {
        let (x, y, a) = self.find_arrow(spec)?;
        self.state(x, y, a)
    }

    /// Checks a mixture against the arrow space it claims to live on.
    pub fn check_state(&self, s: &BoundaryState, tol: f64) -> Result<()> {
        check_index(s.to, self.objects.len())?;
        check_index(s.from, self.objects.len())?;
        if s.coeffs.len() != self.mor[s.to][s.from].len() {
            return Err(HyperError::Mismatch("state has the wrong number of coefficients".into()));
        }
        if s.coeffs.iter().any(|&c| c < -tol) || (s.coeffs.iter().sum::<f64>() - 1.0).abs() > tol {
            return Err(HyperError::Precondition("state is not a convex mixture".into()));
        }
        Ok(())
    }

    /// Juxtaposition of `left` (phases `L | M`) and `right` (phases `M | R`).
    pub fn compose(&self, left: &BoundaryState, right: &BoundaryState) -> Result<BoundaryState> {
        if left.from != right.to {
            return Err(HyperError::Mismatch(format!(
                "cannot juxtapose: left boundary ends in {} but right boundary starts from {}",
                self.objects[left.from], self.objects[right.to]
            )));
        }
        let (x, y, z) = (left.to, left.from, right.from);
        let t = &self.comp[x][y][z];
        let [d0, d1, _] = t.dims();
        if left.coeffs.len() != d0 || right.coeffs.len() != d1 {
            return Err(HyperError::Mismatch("state length does not match its arrow space".into()));
        }
        Ok(BoundaryState {
            to: x,
            from: z,
            coeffs: bilinear(t, &left.coeffs, &right.coeffs),
        })
    }

    /// Left-to-right fold of [`Hypergroupoid::compose`].
    pub fn juxtapose_chain(&self, states: &[BoundaryState]) -> Result<BoundaryState> {
        let (first, rest) = states
            .split_first()
            .ok_or_else(|| HyperError::Mismatch("empty chain".into()))?;
        rest.iter()
            .try_fold(first.clone(), |acc, s| self.compose(&acc, s))
    }

    /// Intermediate results after each juxtaposition, starting with the
    /// first state.
    pub fn juxtapose_steps(&self, states: &[BoundaryState]) -> Result<Vec<BoundaryState>> {
        let mut out: Vec<BoundaryState> = Vec::with_capacity(states.len());
        for s in states {
            let next = match out.last() {
                None => s.clone(),
                Some(acc) => self.compose(acc, s)?,
            };
            out.push(next);
        }
        if out.is_empty() {
            return Err(HyperError::Mismatch("empty chain".into()));
        }
        Ok(out)
    }

    /// `Mor(X, X)` as a hypergroup table.
    pub fn endo_table(&self, x: usize) -> Result<HypergroupTable> {
        check_index(x, self.objects.len())?;
        HypergroupTable::new(
            self.mor[x][x].clone(),
            self.unit[x],
            self.star[x][x].clone(),
            self.comp[x][x][x].clone(),
        )
    }

    pub fn validate(&self, tol: f64) -> ValidationReport {
        let k = self.objects.len();
        let mut report = ValidationReport::default();

        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    let t = &self.comp[x][y][z];
                    let [d0, d1, _] = t.dims();
                    for a in 0..d0 {
                        for b in 0..d1 {
                            let row = t.row(a, b);
                            for (c, &v) in row.iter().enumerate() {
                                if v < -tol {
                                    report.push(Axiom::Nonnegativity, vec![x, y, z, a, b, c], -v);
                                }
                            }
                            let s: f64 = row.iter().sum();
                            if (s - 1.0).abs() > tol {
                                report.push(Axiom::Convexity, vec![x, y, z, a, b], (s - 1.0).abs());
                            }
                        }
                    }
                }
            }
        }

        // unit laws: unit_X . b = b for b in Mor(Z, X); a . unit_Y = a for a in Mor(Y, X)
        for x in 0..k {
            for z in 0..k {
                let t = &self.comp[x][x][z];
                for b in 0..self.mor[x][z].len() {
                    for c in 0..self.mor[x][z].len() {
                        let d = (t.get(self.unit[x], b, c) - f64::from(u8::from(b == c))).abs();
                        if d > tol {
                            report.push(Axiom::UnitLaw, vec![x, x, z, self.unit[x], b, c], d);
                        }
                    }
                }
                let t = &self.comp[z][x][x];
                for a in 0..self.mor[z][x].len() {
                    for c in 0..self.mor[z][x].len() {
                        let d = (t.get(a, self.unit[x], c) - f64::from(u8::from(a == c))).abs();
                        if d > tol {
                            report.push(Axiom::UnitLaw, vec![z, x, x, a, self.unit[x], c], d);
                        }
                    }
                }
            }
        }

        // (a b) c = a (b c) for a in Mor(y,x), b in Mor(z,y), c in Mor(w,z)
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    for w in 0..k {
                        self.check_associativity(x, y, z, w, tol, &mut report);
                    }
                }
            }
        }

        for x in 0..k {
            for y in 0..k {
                for (a, &s) in self.star[x][y].iter().enumerate() {
                    if self.star[y][x][s] != a {
                        report.push(Axiom::Involution, vec![x, y, a], 1.0);
                    }
                }
            }
            if self.star[x][x][self.unit[x]] != self.unit[x] {
                report.push(Axiom::Involution, vec![x, x, self.unit[x]], 1.0);
            }
        }

        for x in 0..k {
            for y in 0..k {
                let t = &self.comp[x][y][x];
                for a in 0..self.mor[x][y].len() {
                    for b in 0..self.mor[y][x].len() {
                        let v = t.get(a, b, self.unit[x]);
                        if b == self.star[x][y][a] {
                            if v <= tol {
                                report.push(Axiom::InvolutionLaw, vec![x, y, a, b], tol - v);
                            }
                        } else if v > tol {
                            report.push(Axiom::InvolutionLaw, vec![x, y, a, b], v);
                        }
                    }
                }
            }
        }

        for x in 0..k {
            if let Ok(table) = self.endo_table(x) {
                for v in table.validate(tol).violations {
                    if v.axiom == Axiom::WeightSymmetry {
                        let mut indices = vec![x];
                        indices.extend(v.indices);
                        report.push(v.axiom, indices, v.magnitude);
                    }
                }
            }
        }
        report
    }

    fn check_associativity(
        &self,
        x: usize,
        y: usize,
        z: usize,
        w: usize,
        tol: f64,
        report: &mut ValidationReport,
    ) {
        let (na, nb, nc) = (
            self.mor[x][y].len(),
            self.mor[y][z].len(),
            self.mor[z][w].len(),
        );
        let out = self.mor[x][w].len();
        let ab_t = &self.comp[x][y][z];
        let abc_left = &self.comp[x][z][w];
        let bc_t = &self.comp[y][z][w];
        let abc_right = &self.comp[x][y][w];
        let n_xz = self.mor[x][z].len();
        let n_yw = self.mor[y][w].len();
        for a in 0..na {
            for b in 0..nb {
                let ab = ab_t.row(a, b);
                for c in 0..nc {
                    let bc = bc_t.row(b, c);
                    let mut worst = (0usize, 0.0f64);
                    for p in 0..out {
                        let lhs: f64 = (0..n_xz).map(|m| ab[m] * abc_left.get(m, c, p)).sum();
                        let rhs: f64 = (0..n_yw).map(|m| bc[m] * abc_right.get(a, m, p)).sum();
                        let d = (lhs - rhs).abs();
                        if d > worst.1 {
                            worst = (p, d);
                        }
                    }
                    if worst.1 > tol {
                        report.push(Axiom::Associativity, vec![x, y, z, w, a, b, c, worst.0], worst.1);
                    }
                }
            }
        }
    }
}

/// Groupoid of double cosets: one object per subgroup `H_X`, arrows of
/// `Mor(Y, X)` are the double cosets `H_X g H_Y`, composed as normalized
/// indicator sums in the group algebra.
pub fn double_coset_groupoid(
    g: &CayleyGroup,
    objects: &[(String, Vec<usize>)],
) -> Result<Hypergroupoid> {
    let k = objects.len();
    let subgroups = objects
        .iter()
        .map(|(_, h)| g.subgroup(h))
        .collect::<Result<Vec<_>>>()?;
    let blocks: Vec<Vec<Vec<Vec<usize>>>> = (0..k)
        .map(|x| {
            (0..k)
                .map(|y| g.double_cosets(&subgroups[x], &subgroups[y]))
                .collect()
        })
        .collect();
    let block_of = |x: usize, y: usize, e: usize| blocks[x][y].iter().position(|b| b.contains(&e)).unwrap();

    let mor = (0..k)
        .map(|x| {
            (0..k)
                .map(|y| {
                    blocks[x][y]
                        .iter()
                        .map(|b| format!("[{}]", g.labels()[b[0]]))
                        .collect()
                })
                .collect()
        })
        .collect();
    let comp = (0..k)
        .map(|x| {
            (0..k)
                .map(|y| {
                    (0..k)
                        .map(|z| {
                            let counts = block_counts(g, &blocks[x][y], &blocks[y][z], &blocks[x][z]);
                            block_coefficients(&counts, &blocks[x][y], &blocks[y][z], &blocks[x][z])
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let star = (0..k)
        .map(|x| {
            (0..k)
                .map(|y| {
                    blocks[x][y]
                        .iter()
                        .map(|b| block_of(y, x, g.inverse(b[0])))
                        .collect()
                })
                .collect()
        })
        .collect();
    let unit = (0..k).map(|x| block_of(x, x, g.identity())).collect();
    Hypergroupoid::new(
        objects.iter().map(|(name, _)| name.clone()).collect(),
        mor,
        comp,
        star,
        unit,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::two_element;
    use crate::group::symmetric;
    use crate::hypergroup::DEFAULT_TOL;

    fn coset_groupoid() -> Hypergroupoid {
        let g = symmetric(3);
        let t = g.index_of("(12)").unwrap();
        double_coset_groupoid(&g, &[("T".into(), vec![0]), ("P".into(), vec![0, t])]).unwrap()
    }

    #[test]
    fn one_object_ghj_validates() {
        let g = Hypergroupoid::from_hypergroup(&two_element(2.0 - 3f64.sqrt()).unwrap());
        assert!(g.validate(DEFAULT_TOL).passed());
    }

    #[test]
    fn two_object_groupoid_validates() {
        let g = coset_groupoid();
        let report = g.validate(DEFAULT_TOL);
        assert!(report.passed(), "{report}");
        assert_eq!(g.arrows(0, 0).len(), 6);
        assert_eq!(g.arrows(1, 1).len(), 2);
        assert_eq!(g.arrows(0, 1).len(), 3);
        assert_eq!(g.arrows(1, 0).len(), 3);
        for x in 0..2 {
            assert!(g.endo_table(x).unwrap().validate(DEFAULT_TOL).passed());
        }
    }

    #[test]
    fn bad_row_sum_is_a_convexity_violation() {
        let base = two_element(0.5).unwrap();
        let mut lam = base.lambda().clone();
        lam.set(1, 1, 1, 0.4);
        let table = HypergroupTable::new(base.labels().to_vec(), 0, vec![0, 1], lam).unwrap();
        let report = Hypergroupoid::from_hypergroup(&table).validate(DEFAULT_TOL);
        assert!(report.has(Axiom::Convexity));
    }

    #[test]
    fn mismatched_middle_phase_is_rejected() {
        let g = coset_groupoid();
        let a = g.state(0, 1, 0).unwrap();
        let b = g.state(0, 1, 0).unwrap();
        assert!(matches!(g.compose(&a, &b), Err(HyperError::Mismatch(_))));
    }

    #[test]
    fn arrow_lookup() {
        let g = coset_groupoid();
        assert!(matches!(g.find_arrow("[e]"), Err(HyperError::Mismatch(_))));
        let (x, y, a) = g.find_arrow("T<P:[e]").unwrap();
        assert_eq!((x, y), (0, 1));
        assert_eq!(g.arrows(0, 1)[a], "[e]");
    }

    #[test]
    fn arrow_and_its_star_reach_the_unit() {
        let g = coset_groupoid();
        for a in 0..g.arrows(0, 1).len() {
            let s = g.star()[0][1][a];
            let left = g.state(0, 1, a).unwrap();
            let right = g.state(1, 0, s).unwrap();
            let out = g.compose(&left, &right).unwrap();
            assert!(out.coeffs[g.units()[0]] > DEFAULT_TOL);
        }
    }
}
