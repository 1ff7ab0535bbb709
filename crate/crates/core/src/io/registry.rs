//! Named builtin groups, fusion rings, hypergroups and hypergroupoids.
//!
//! Every entry is validated when it is loaded.

use super::format::parse_hypergroup;
use crate::constructions::{conjugacy_class_hypergroup, double_coset_hypergroup, group_hypergroup};
use crate::error::{HyperError, Result};
use crate::fusion::{from_fusion_ring, FusionRing};
use crate::group::{cyclic, dihedral, quaternion, symmetric, CayleyGroup};
use crate::groupoid::{double_coset_groupoid, Hypergroupoid};
use crate::hypergroup::{HypergroupTable, DEFAULT_TOL};

pub const GROUPS: &[&str] = &["z2", "z3", "z4", "z5", "z6", "s3", "s4", "d4", "q8"];
pub const FUSION_RINGS: &[&str] = &["fibonacci", "ising", "s3-irreps"];
pub const TABLES: &[&str] = &[
    "z2",
    "z3",
    "s3-group",
    "conj-s3",
    "conj-s4",
    "conj-d4",
    "conj-q8",
    "s3-double-coset",
    "ghj",
    "fibonacci",
    "ising",
    "s3-irreps",
];
pub const GROUPOIDS: &[&str] = &["ghj", "ising", "conj-s3", "s3-cosets"];

/// The two-element hypergroup with `a1 a1 = (2 - sqrt 3) a0 + (sqrt 3 - 1) a1`,
/// written with exact literals.
pub const GHJ_DOCUMENT: &str = r#"{
  "kind": "hypergroup",
  "version": 1,
  "labels": ["a0", "a1"],
  "unit": 0,
  "involution": [0, 1],
  "lambda": [
    [[1, 0], [0, 1]],
    [[0, 1], [{"a": 2, "b": -1, "c": 1, "d": 3}, {"a": -1, "b": 1, "c": 1, "d": 3}]]
  ]
}"#;

fn unknown(what: &str, name: &str, known: &[&str]) -> HyperError {
    HyperError::Mismatch(format!(
        "unknown builtin {what} {name:?}; known: {}",
        known.join(", ")
    ))
}

/// `z<n>` for `1 <= n <= 64`, plus `s3`, `s4`, `d4`, `q8`.
pub fn builtin_group(name: &str) -> Result<CayleyGroup> {
    let g = match name {
        "s3" => symmetric(3),
        "s4" => symmetric(4),
        "d4" => dihedral(4),
        "q8" => quaternion(),
        _ => match name.strip_prefix('z').and_then(|n| n.parse::<usize>().ok()) {
            Some(n) if (1..=64).contains(&n) => cyclic(n),
            _ => return Err(unknown("group", name, GROUPS)),
        },
    };
    g.validate().into_result()?;
    Ok(g)
}

/// `(i, j, terms)`: `f_i f_j = f_j f_i = sum m f_l` over `(l, m)` in `terms`.
type Rule<'a> = (usize, usize, &'a [(usize, u64)]);

fn ring(labels: &[&str], conjugation: Vec<usize>, rules: &[Rule]) -> Result<FusionRing> {
    let n = labels.len();
    let mut coeffs = vec![vec![vec![0u64; n]; n]; n];
    for i in 0..n {
        coeffs[0][i][i] = 1;
        coeffs[i][0][i] = 1;
    }
    for &(i, j, terms) in rules {
        for &(l, m) in terms {
            coeffs[i][j][l] = m;
            coeffs[j][i][l] = m;
        }
    }
    FusionRing::new(labels.iter().map(|s| s.to_string()).collect(), 0, conjugation, coeffs)
}

pub fn builtin_fusion_ring(name: &str) -> Result<FusionRing> {
    match name {
        "fibonacci" => ring(&["1", "tau"], vec![0, 1], &[(1, 1, &[(0, 1), (1, 1)])]),
        "ising" => ring(
            &["1", "psi", "sigma"],
            vec![0, 1, 2],
            &[(1, 1, &[(0, 1)]), (1, 2, &[(2, 1)]), (2, 2, &[(0, 1), (1, 1)])],
        ),
        "s3-irreps" => ring(
            &["1", "1'", "2"],
            vec![0, 1, 2],
            &[(1, 1, &[(0, 1)]), (1, 2, &[(2, 1)]), (2, 2, &[(0, 1), (1, 1), (2, 1)])],
        ),
        _ => Err(unknown("fusion ring", name, FUSION_RINGS)),
    }
}

pub fn builtin_table(name: &str) -> Result<HypergroupTable> {
    let table = match name {
        "z2" => group_hypergroup(&cyclic(2)),
        "z3" => group_hypergroup(&cyclic(3)),
        "s3-group" => group_hypergroup(&symmetric(3)),
        "conj-s3" => conjugacy_class_hypergroup(&symmetric(3)),
        "conj-s4" => conjugacy_class_hypergroup(&symmetric(4)),
        "conj-d4" => conjugacy_class_hypergroup(&dihedral(4)),
        "conj-q8" => conjugacy_class_hypergroup(&quaternion()),
        "s3-double-coset" => {
            let g = symmetric(3);
            let t = g.index_of("(12)").expect("S3 contains (12)");
            double_coset_hypergroup(&g, &[g.identity(), t])?
        }
        "ghj" => parse_hypergroup(GHJ_DOCUMENT, DEFAULT_TOL)?,
        "fibonacci" | "ising" | "s3-irreps" => from_fusion_ring(&builtin_fusion_ring(name)?)?,
        _ => return Err(unknown("hypergroup", name, TABLES)),
    };
    table.validate(DEFAULT_TOL).into_result()?;
    Ok(table)
}

pub fn builtin_groupoid(name: &str) -> Result<Hypergroupoid> {
    let g = match name {
        "ghj" => Hypergroupoid::from_hypergroup_named(&builtin_table("ghj")?, "GHJ"),
        "ising" => {
            let labels = ["trivial", "fermionic", "dual"].map(String::from).to_vec();
            let table = builtin_table("ising")?.with_labels(labels)?;
            Hypergroupoid::from_hypergroup_named(&table, "Ising")
        }
        "conj-s3" => Hypergroupoid::from_hypergroup_named(&builtin_table("conj-s3")?, "S3"),
        "s3-cosets" => {
            let s3 = symmetric(3);
            let t = s3.index_of("(12)").expect("S3 contains (12)");
            double_coset_groupoid(
                &s3,
                &[("T".into(), vec![s3.identity()]), ("P".into(), vec![s3.identity(), t])],
            )?
        }
        _ => return Err(unknown("hypergroupoid", name, GROUPOIDS)),
    };
    g.validate(DEFAULT_TOL).into_result()?;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_loads() {
        for name in GROUPS {
            builtin_group(name).unwrap();
        }
        for name in FUSION_RINGS {
            builtin_fusion_ring(name).unwrap();
        }
        for name in TABLES {
            builtin_table(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
        for name in GROUPOIDS {
            builtin_groupoid(name).unwrap_or_else(|e| panic!("{name}: {e}"));
        }
    }

    #[test]
    fn unknown_names() {
        assert!(builtin_table("nope").is_err());
        assert!(builtin_group("z0").is_err());
        assert!(builtin_group("z65").is_err());
        assert_eq!(builtin_group("z12").unwrap().order(), 12);
    }

    #[test]
    fn ghj_matches_the_closed_form() {
        let t = builtin_table("ghj").unwrap();
        assert!((t.coeff(1, 1, 0) - (2.0 - 3f64.sqrt())).abs() < 1e-15);
        assert_eq!(t.labels(), &["a0".to_string(), "a1".to_string()]);
    }
}
