//! Built-in representations.
//!
//! Crystallographic entries use the Cartan-matrix representation
//! `s_i = I - e_i a_i`, with `a_i` row `i` of the Cartan matrix, so that
//! `s_i` is the reflection with `alpha_i = e_i`.

use serde::Serialize;
use thiserror::Error;

use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::repkit::Representation;
use crate::theoremlab::FailedCondition;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CatalogError {
    #[error("unknown catalog entry: {0}")]
    UnknownEntry(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expected {
    pub theorem_applies: bool,
    pub failure: Option<FailedCondition>,
}

impl Expected {
    fn applies() -> Self {
        Expected {
            theorem_applies: true,
            failure: None,
        }
    }

    fn fails(c: FailedCondition) -> Self {
        Expected {
            theorem_applies: false,
            failure: Some(c),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub representation: Representation,
    pub expected: Expected,
    pub notes: String,
}

const FIXED: &[&str] = &[
    "A2",
    "A3",
    "A4",
    "B2",
    "B3",
    "G2",
    "H2-5",
    "H3",
    "cond4-fail",
    "reducible-direct-sum",
    "redundant",
    "non-reflection",
];

/// Every entry name: the fixed entries followed by `dihedral-a-b` for
/// `a, b` in `0..=3`.
pub fn list_entries() -> Vec<String> {
    let mut names: Vec<String> = FIXED.iter().map(|s| s.to_string()).collect();
    for a in 0..=3 {
        for b in 0..=3 {
            names.push(format!("dihedral-{a}-{b}"));
        }
    }
    names
}

/// Looks up an entry. Any `dihedral-a-b` with non-negative integers is
/// accepted, not only the listed grid.
pub fn entry(name: &str) -> Result<CatalogEntry, CatalogError> {
    let unknown = || CatalogError::UnknownEntry(name.to_string());
    let make = |rep: Representation, expected: Expected, notes: &str| CatalogEntry {
        name: name.to_string(),
        representation: rep,
        expected,
        notes: notes.to_string(),
    };
    let phi = golden();
    let e = match name {
        "A2" => make(
            cartan(&[[2, -1], [-1, 2]]),
            Expected::applies(),
            "symmetric group S3 on the root span; (s1 s2)^3 = 1",
        ),
        "A3" => make(
            cartan(&[[2, -1, 0], [-1, 2, -1], [0, -1, 2]]),
            Expected::applies(),
            "symmetric group S4",
        ),
        "A4" => make(
            cartan(&[[2, -1, 0, 0], [-1, 2, -1, 0], [0, -1, 2, -1], [0, 0, -1, 2]]),
            Expected::applies(),
            "symmetric group S5",
        ),
        "B2" => make(
            cartan(&[[2, -2], [-1, 2]]),
            Expected::applies(),
            "dihedral group of order 8; s1 s2 has order 4",
        ),
        "B3" => make(
            cartan(&[[2, -1, 0], [-1, 2, -1], [0, -2, 2]]),
            Expected::applies(),
            "hyperoctahedral group of order 48",
        ),
        "G2" => make(
            cartan(&[[2, -3], [-1, 2]]),
            Expected::applies(),
            "dihedral group of order 12",
        ),
        "H2-5" => make(
            scalar_cartan(vec![
                vec![Scalar::int(2), -&phi],
                vec![-&phi, Scalar::int(2)],
            ]),
            Expected::applies(),
            "dihedral group of order 10 over Q(sqrt(5)); off-diagonal Cartan entries -(1+sqrt(5))/2",
        ),
        "H3" => make(
            scalar_cartan(vec![
                vec![Scalar::int(2), -&phi, Scalar::int(0)],
                vec![-&phi, Scalar::int(2), Scalar::int(-1)],
                vec![Scalar::int(0), Scalar::int(-1), Scalar::int(2)],
            ]),
            Expected::applies(),
            "icosahedral group of order 120 over Q(sqrt(5))",
        ),
        "cond4-fail" => make(
            rep(vec![
                Matrix::from_ints(&[[-1, 1], [0, 1]]),
                Matrix::from_ints(&[[1, 0], [0, -1]]),
            ]),
            Expected::fails(FailedCondition::Condition4),
            "s2 fixes alpha1 = (1,0) while s1 moves alpha2 = (0,1)",
        ),
        "reducible-direct-sum" => {
            let a2 = cartan(&[[2, -1], [-1, 2]]);
            let one = Matrix::identity(1);
            make(
                rep(a2.matrices().iter().map(|m| m.direct_sum(&one)).collect()),
                Expected::fails(FailedCondition::Condition3),
                "A2 plus a trivial summand; e3 spans an invariant line",
            )
        }
        "redundant" => {
            let a2 = cartan(&[[2, -1], [-1, 2]]).matrices();
            let third = &(&a2[0] * &a2[1]) * &a2[0].inverse().expect("invertible");
            make(
                rep(vec![a2[0].clone(), a2[1].clone(), third]),
                Expected::applies(),
                "A2 with the extra reflection s1 s2 s1^-1; three reflection vectors in dimension 2",
            )
        }
        "non-reflection" => make(
            rep(vec![
                Matrix::from_ints(&[[-1, 1], [0, 1]]),
                Matrix::from_ints(&[[1, 1], [0, 1]]),
            ]),
            Expected::fails(FailedCondition::Condition1),
            "second generator is a transvection",
        ),
        _ => {
            let (a, b) = parse_dihedral(name).ok_or_else(unknown)?;
            make(
                infinite_dihedral(&Scalar::int(a), &Scalar::int(b)),
                dihedral_expectation(a, b),
                "two reflections s1 = [[-1,a],[0,1]], s2 = [[1,0],[b,-1]]",
            )
        }
    };
    Ok(e)
}

fn parse_dihedral(name: &str) -> Option<(i64, i64)> {
    let rest = name.strip_prefix("dihedral-")?;
    let (a, b) = rest.split_once('-')?;
    let digits = |s: &str| !s.is_empty() && s.bytes().all(|c| c.is_ascii_digit());
    if !digits(a) || !digits(b) {
        return None;
    }
    Some((a.parse().ok()?, b.parse().ok()?))
}

/// The plane is reducible exactly when the generators share an eigenvector:
/// `e1` when `b = 0`, `e2` when `a = 0`, and the common fixed line when
/// `ab = 4`. Exactly one of `a, b` zero breaks the symmetry of fixing.
fn dihedral_expectation(a: i64, b: i64) -> Expected {
    if (a == 0) != (b == 0) {
        Expected::fails(FailedCondition::Condition4)
    } else if a == 0 || a * b == 4 {
        Expected::fails(FailedCondition::Condition3)
    } else {
        Expected::applies()
    }
}

/// `s1 = [[-1, a], [0, 1]]`, `s2 = [[1, 0], [b, -1]]`.
pub fn infinite_dihedral(a: &Scalar, b: &Scalar) -> Representation {
    let s1 = Matrix::from_rows(vec![vec![Scalar::int(-1), a.clone()], vec![Scalar::int(0), Scalar::int(1)]])
        .expect("well formed");
    let s2 = Matrix::from_rows(vec![vec![Scalar::int(1), Scalar::int(0)], vec![b.clone(), Scalar::int(-1)]])
        .expect("well formed");
    rep(vec![s1, s2])
}

/// `(1 + sqrt(5)) / 2`.
pub fn golden() -> Scalar {
    let half = Scalar::ratio(1, 2);
    &half + &(&half * &Scalar::sqrt(5).expect("5 is square-free"))
}

fn rep(matrices: Vec<Matrix>) -> Representation {
    Representation::from_matrices(matrices).expect("catalog generators are invertible")
}

fn cartan<const C: usize>(a: &[[i64; C]]) -> Representation {
    scalar_cartan(
        a.iter()
            .map(|row| row.iter().map(|&x| Scalar::int(x)).collect())
            .collect(),
    )
}

fn scalar_cartan(a: Vec<Vec<Scalar>>) -> Representation {
    let n = a.len();
    let gens = (0..n)
        .map(|i| {
            let mut m = Matrix::identity(n);
            for j in 0..n {
                m[(i, j)] = &m[(i, j)] - &a[i][j];
            }
            m
        })
        .collect();
    rep(gens)
}
