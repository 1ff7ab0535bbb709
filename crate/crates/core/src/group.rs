//! Finite groups given by their Cayley table.

use crate::error::{check_index, HyperError, Result};
use crate::hypergroup::{Axiom, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyGroup {
    labels: Vec<String>,
    mul: Vec<Vec<usize>>,
    identity: usize,
}

impl CayleyGroup {
    /// Builds a group and checks the group axioms.
    pub fn new(labels: Vec<String>, mul: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let g = Self::unchecked(labels, mul, identity)?;
        g.validate().into_result()?;
        Ok(g)
    }

    /// Structural checks only.
    pub fn unchecked(labels: Vec<String>, mul: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(HyperError::Structural("group must be nonempty".into()));
        }
        if labels.len() != n {
            return Err(HyperError::Structural(format!(
                "{} labels for a table of order {n}",
                labels.len()
            )));
        }
        if mul.iter().any(|row| row.len() != n) {
            return Err(HyperError::Structural("Cayley table is not square".into()));
        }
        if mul.iter().flatten().any(|&x| x >= n) {
            return Err(HyperError::Structural("Cayley table entry out of range".into()));
        }
        check_index(identity, n)?;
        Ok(Self {
            labels,
            mul,
            identity,
        })
    }

    /// Latin square, identity law, inverses and associativity.
    pub fn validate(&self) -> ValidationReport {
        let n = self.order();
        let mut report = ValidationReport::default();
        for i in 0..n {
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for j in 0..n {
                row_seen[self.mul[i][j]] = true;
                col_seen[self.mul[j][i]] = true;
            }
            if row_seen.contains(&false) || col_seen.contains(&false) {
                report.push(Axiom::LatinSquare, vec![i], 1.0);
            }
        }
        for i in 0..n {
            if self.mul[self.identity][i] != i || self.mul[i][self.identity] != i {
                report.push(Axiom::UnitLaw, vec![i], 1.0);
            }
            let has_inverse = (0..n).any(|j| {
                self.mul[i][j] == self.identity && self.mul[j][i] == self.identity
            });
            if !has_inverse {
                report.push(Axiom::Inverse, vec![i], 1.0);
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul[a][b];
                for c in 0..n {
                    if self.mul[ab][c] != self.mul[a][self.mul[b][c]] {
                        report.push(Axiom::Associativity, vec![a, b, c], 1.0);
                    }
                }
            }
        }
        report
    }

    pub fn order(&self) -> usize {
        self.mul.len()
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.mul
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.mul[a]
            .iter()
            .position(|&x| x == self.identity)
            .expect("validated group has inverses")
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).all(|b| self.mul[a][b] == self.mul[b][a]))
    }

    /// Checks that `elements` is a subgroup and returns it sorted.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Vec<usize>> {
        let n = self.order();
        for &e in elements {
            check_index(e, n)?;
        }
        let mut member = vec![false; n];
        elements.iter().for_each(|&e| member[e] = true);
        if !member[self.identity] {
            return Err(HyperError::Precondition("subset does not contain the identity".into()));
        }
        for &a in elements {
            if !member[self.inverse(a)] {
                return Err(HyperError::Precondition(format!(
                    "subset is not closed under inverses ({})",
                    self.labels[a]
                )));
            }
            for &b in elements {
                if !member[self.mul(a, b)] {
                    return Err(HyperError::Precondition(format!(
                        "subset is not closed under multiplication ({} * {})",
                        self.labels[a], self.labels[b]
                    )));
                }
            }
        }
        Ok((0..n).filter(|&e| member[e]).collect())
    }

    /// The subgroup generated by `gens`.
    pub fn generated(&self, gens: &[usize]) -> Result<Vec<usize>> {
        let n = self.order();
        for &g in gens {
            check_index(g, n)?;
        }
        let mut member = vec![false; n];
        member[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    frontier.push(y);
                }
            }
        }
        Ok((0..n).filter(|&e| member[e]).collect())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Conjugacy classes by orbit enumeration; classes are ordered by their
    /// first element in index order, so the identity class comes first when
    /// the identity has index 0.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for g in 0..n {
            if class_of[g] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class = Vec::new();
            for h in 0..n {
                let c = self.mul(self.mul(h, g), self.inverse(h));
                if class_of[c] == usize::MAX {
                    class_of[c] = id;
                    class.push(c);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Double cosets `H g K`, ordered by first element.
    pub fn double_cosets(&self, left: &[usize], right: &[usize]) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut cosets = Vec::new();
        for g in 0..n {
            if seen[g] {
                continue;
            }
            let mut coset = Vec::new();
            for &h in left {
                let hg = self.mul(h, g);
                for &k in right {
                    let x = self.mul(hg, k);
                    if !seen[x] {
                        seen[x] = true;
                        coset.push(x);
                    }
                }
            }
            coset.sort_unstable();
            cosets.push(coset);
        }
        cosets
    }
}

/// Cyclic group of order `n`, elements `0..n` under addition mod `n`.
pub fn cyclic(n: usize) -> CayleyGroup {
    assert!(n >= 1);
    let labels = (0..n).map(|i| i.to_string()).collect();
    let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    CayleyGroup::new(labels, mul, 0).expect("cyclic group is valid")
}

/// Symmetric group on `k` points. Elements are permutations listed in
/// lexicographic order (identity first) and labelled in cycle notation;
/// the product `ab` applies `b` first.
pub fn symmetric(k: usize) -> CayleyGroup {
    let perms = permutations(k);
    let index = |p: &[usize]| perms.iter().position(|q| q == p).unwrap();
    let mul = perms
        .iter()
        .map(|a| {
            perms
                .iter()
                .map(|b| {
                    let ab: Vec<usize> = (0..k).map(|x| a[b[x]]).collect();
                    index(&ab)
                })
                .collect()
        })
        .collect();
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    CayleyGroup::new(labels, mul, 0).expect("symmetric group is valid")
}

/// Dihedral group of order `2m`: `r^i` then `s r^i`.
pub fn dihedral(m: usize) -> CayleyGroup {
    assert!(m >= 1);
    // element (f, i) = s^f r^i, index f*m + i; r^i s = s r^-i
    let n = 2 * m;
    let decode = |x: usize| (x / m, x % m);
    let encode = |f: usize, i: usize| f * m + i;
    let mul = (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let (fa, ia) = decode(a);
                    let (fb, ib) = decode(b);
                    let ia = if fb == 1 { (m - ia) % m } else { ia };
                    encode((fa + fb) % 2, (ia + ib) % m)
                })
                .collect()
        })
        .collect();
    let labels = (0..n)
        .map(|x| {
            let (f, i) = decode(x);
            match (f, i) {
                (0, 0) => "e".to_string(),
                (0, i) => format!("r{i}"),
                (_, 0) => "s".to_string(),
                (_, i) => format!("sr{i}"),
            }
        })
        .collect();
    CayleyGroup::new(labels, mul, 0).expect("dihedral group is valid")
}

/// Quaternion group `{1, -1, i, -i, j, -j, k, -k}`.
pub fn quaternion() -> CayleyGroup {
    // element = (sign, unit) with unit in {1, i, j, k}
    fn unit_mul(a: usize, b: usize) -> (bool, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (false, x),
            (x, y) if x == y => (true, 0),
            (1, 2) => (false, 3),
            (2, 3) => (false, 1),
            (3, 1) => (false, 2),
            (2, 1) => (true, 3),
            (3, 2) => (true, 1),
            (1, 3) => (true, 2),
            _ => unreachable!(),
        }
    }
    let names = ["1", "i", "j", "k"];
    let encode = |neg: bool, u: usize| 2 * u + usize::from(neg);
    let mul = (0..8)
        .map(|a| {
            (0..8)
                .map(|b| {
                    let (na, ua) = (a % 2 == 1, a / 2);
                    let (nb, ub) = (b % 2 == 1, b / 2);
                    let (nu, u) = unit_mul(ua, ub);
                    encode(na ^ nb ^ nu, u)
                })
                .collect()
        })
        .collect();
    let labels = (0..8)
        .map(|x| {
            let sign = if x % 2 == 1 { "-" } else { "" };
            format!("{sign}{}", names[x / 2])
        })
        .collect();
    CayleyGroup::new(labels, mul, 0).expect("quaternion group is valid")
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    loop {
        out.push(current.clone());
        // next lexicographic permutation
        let Some(i) = (0..k.saturating_sub(1)).rev().find(|&i| current[i] < current[i + 1]) else {
            break;
        };
        let j = (i + 1..k).rev().find(|&j| current[j] > current[i]).unwrap();
        current.swap(i, j);
        current[i + 1..].reverse();
    }
    out
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}
