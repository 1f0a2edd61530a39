//! Named example structures. Labels in the definitions below are 1-based
//! cycle notation; the returned structures are 0-based.

use super::permutation::Permutation;
use super::qcycle::QCycleSet;
use super::solution::Solution;
use crate::error::{Error, Result};
use crate::extension::{family_extension, ExtensionFamily};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    QCycleSet(QCycleSet),
    Solution(Solution),
}

impl Fixture {
    /// The q-cycle set itself, or the one associated with a solution.
    pub fn into_qcycle_set(self) -> Result<QCycleSet> {
        match self {
            Fixture::QCycleSet(x) => Ok(x),
            Fixture::Solution(s) => super::solution::from_solution(&s),
        }
    }
}

/// Documented fixture names. Parametric families take their parameter in
/// parentheses or after a colon, e.g. `D2(3)` or `D2:3`.
pub const FIXTURE_NAMES: &[&str] = &[
    "simple4",
    "simple9",
    "nonsimple6",
    "primitive4",
    "J4",
    "base3",
    "D1",
    "D2(k)",
    "D3(p)",
    "SF(m)",
    "trivial(n)",
    "cyclic(n)",
];

pub fn fixture(name: &str) -> Result<Fixture> {
    let (base, param) = split_param(name)?;
    let need = |what: &str| param.ok_or_else(|| Error::UnknownFixture(format!("{name} (missing parameter {what})")));
    let q = |x: Result<QCycleSet>| x.map(Fixture::QCycleSet);
    match base {
        "simple4" => q(simple4()),
        "simple9" => q(simple9()),
        "nonsimple6" => q(nonsimple6()),
        "primitive4" => q(primitive4()),
        "base3" => q(base3()),
        "J4" | "j4" => j4().map(Fixture::Solution),
        "D1" | "d1" => q(family_extension(ExtensionFamily::D1).and_then(|(b, p)| p.build(&b))),
        "D2" | "d2" => {
            let k = need("k")?;
            q(family_extension(ExtensionFamily::D2(k)).and_then(|(b, p)| p.build(&b)))
        }
        "D3" | "d3" => {
            let p = need("p")?;
            q(family_extension(ExtensionFamily::D3(p)).and_then(|(b, pair)| pair.build(&b)))
        }
        "SF" | "sf" => {
            let m = need("m")?;
            q(family_extension(ExtensionFamily::SquareFree(m)).and_then(|(b, p)| p.build(&b)))
        }
        "trivial" => {
            let n = need("n")?;
            nonzero(n, name).map(|n| Fixture::QCycleSet(QCycleSet::trivial(n)))
        }
        "cyclic" => {
            let n = need("n")?;
            nonzero(n, name).map(|n| Fixture::QCycleSet(QCycleSet::cyclic(n)))
        }
        _ => Err(Error::UnknownFixture(name.to_string())),
    }
}

fn nonzero(n: usize, name: &str) -> Result<usize> {
    if n == 0 {
        Err(Error::UnknownFixture(format!("{name} (order must be positive)")))
    } else {
        Ok(n)
    }
}

fn split_param(name: &str) -> Result<(&str, Option<usize>)> {
    let name = name.trim();
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::UnknownFixture(name.to_string()))
    };
    if let Some(open) = name.find('(') {
        let inner = name[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::UnknownFixture(name.to_string()))?;
        return Ok((&name[..open], Some(parse(inner)?)));
    }
    if let Some((base, p)) = name.split_once(':') {
        return Ok((base, Some(parse(p)?)));
    }
    Ok((name, None))
}

fn perms(cycles: &[&str], n: usize) -> Vec<Permutation> {
    cycles
        .iter()
        .map(|c| Permutation::parse_cycles(c, n).expect("fixture cycle notation"))
        .collect()
}

fn with_identity_delta(cycles: &[&str]) -> Result<QCycleSet> {
    let n = cycles.len();
    let sigma = perms(cycles, n);
    QCycleSet::from_maps(&sigma, &vec![Permutation::identity(n); n])
}

/// Simple cycle set of order 4 with the single block system {{1,4},{2,3}}.
pub fn simple4() -> Result<QCycleSet> {
    QCycleSet::cycle_set_from_maps(&perms(&["(1 4)", "(1 3 4 2)", "(2 3)", "(1 2 4 3)"], 4))
}

/// Simple cycle set of order 9 with the single block system
/// {{1,4,9},{2,6,8},{3,5,7}}.
pub fn simple9() -> Result<QCycleSet> {
    QCycleSet::cycle_set_from_maps(&perms(
        &[
            "(1 3 8 4 5 2 9 7 6)",
            "(1 7 6 4 3 8 9 5 2)",
            "(1 7 8 4 3 2 9 5 6)",
            "(1 2 7 4 6 3 9 8 5)",
            "(1 8 5 4 2 7 9 6 3)",
            "(1 8 7 4 2 3 9 6 5)",
            "(1 9 4)(2 8 6)",
            "(1 9 4)(3 7 5)",
            "(2 8 6)(3 7 5)",
        ],
        9,
    ))
}

/// Indecomposable, non-simple q-cycle set of order 6 with `δ = id`.
pub fn nonsimple6() -> Result<QCycleSet> {
    with_identity_delta(&[
        "(2 4 5 3)",
        "(1 3 6 4)",
        "(1 5 6 2)",
        "(1 2 6 5)",
        "(1 4 6 3)",
        "(2 3 5 4)",
    ])
}

/// Primitive q-cycle set of order 4 with `δ = id`.
pub fn primitive4() -> Result<QCycleSet> {
    with_identity_delta(&["(2 4 3)", "(1 3 4)", "(1 4 2)", "(1 2 3)"])
}

/// Order-3 square-free base with `σ_1 = (2 3)`, `σ_2 = (1 3)`, `σ_3 = (1 2)`, `δ = id`.
pub fn base3() -> Result<QCycleSet> {
    with_identity_delta(&["(2 3)", "(1 3)", "(1 2)"])
}

/// Involutive solution of order 4 with `λ_1 = (2 3)`, `λ_2 = (1 4)`,
/// `λ_3 = (1 2 4 3)`, `λ_4 = (1 3 4 2)` and `ρ_y(x) = λ⁻¹_{λ_x(y)}(x)`.
pub fn j4() -> Result<Solution> {
    let lambda = perms(&["(2 3)", "(1 4)", "(1 2 4 3)", "(1 3 4 2)"], 4);
    let n = 4;
    let rho: Vec<Vec<usize>> = (0..n)
        .map(|y| (0..n).map(|x| lambda[lambda[x].apply(y)].inverse().apply(x)).collect())
        .collect();
    Solution::new(lambda.iter().map(|p| p.images().to_vec()).collect(), rho)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple4_tables() {
        let x = simple4().unwrap();
        assert_eq!(x.sigma(0).to_cycle_string(), "(1 4)");
        assert_eq!(x.sigma(1).to_cycle_string(), "(1 3 4 2)");
        assert_eq!(x.sigma(2).to_cycle_string(), "(2 3)");
        assert_eq!(x.sigma(3).to_cycle_string(), "(1 2 4 3)");
        assert!(x.is_cycle_set());
    }

    #[test]
    fn primitive4_tables() {
        let x = primitive4().unwrap();
        let sig: Vec<String> = x.sigmas().iter().map(|p| p.to_cycle_string()).collect();
        assert_eq!(sig, ["(2 4 3)", "(1 3 4)", "(1 4 2)", "(1 2 3)"]);
        assert!(x.is_left_self_distributive());
    }

    #[test]
    fn rho_of_j4() {
        let s = j4().unwrap();
        assert_eq!(s.rho(0).unwrap().to_cycle_string(), "(2 4)");
    }

    #[test]
    fn named_lookup() {
        assert!(matches!(fixture("simple4"), Ok(Fixture::QCycleSet(_))));
        assert!(matches!(fixture("J4"), Ok(Fixture::Solution(_))));
        assert_eq!(
            fixture("trivial(3)").unwrap(),
            Fixture::QCycleSet(QCycleSet::trivial(3))
        );
        assert_eq!(fixture("cyclic:5").unwrap(), Fixture::QCycleSet(QCycleSet::cyclic(5)));
        assert!(matches!(fixture("simple5"), Err(Error::UnknownFixture(_))));
        assert!(matches!(fixture("D2"), Err(Error::UnknownFixture(_))));
        assert!(matches!(fixture("trivial(0)"), Err(Error::UnknownFixture(_))));
    }

    #[test]
    fn every_fixture_is_a_regular_q_cycle_set() {
        for name in [
            "simple4",
            "simple9",
            "nonsimple6",
            "primitive4",
            "base3",
            "J4",
            "D1",
            "D2(2)",
            "D3(3)",
            "SF(1)",
        ] {
            let x = fixture(name).unwrap().into_qcycle_set().unwrap();
            let report = x.check_q_axioms();
            assert!(report.is_valid(), "{name}: {:?}", report.first());
            assert!(x.is_regular(), "{name}");
        }
    }
}
