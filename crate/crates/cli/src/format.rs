//! On-disk formats: JSON semigroup tables and modules, text presentations.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use zerocohom::abelian::FinAbGroup;
use zerocohom::module::{Bimodule, ZeroModule};
use zerocohom::semigroup::Semigroup;
use zerocohom::{AbGroup, BiModule, Int, IntMatrix, Module};

/// `{ "elements": [names], "zero": name?, "table": [[name]] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupFile {
    pub elements: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub zero: Option<String>,
    pub table: Vec<Vec<String>>,
}

/// Action matrices are given row by row and act on column vectors, so
/// column `j` is the image of the `j`-th generator. Elements missing from an
/// action map act as the identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleFile {
    pub invariant_factors: Vec<i64>,
    #[serde(default)]
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub right_action: Option<BTreeMap<String, Vec<Vec<i64>>>>,
}

/// Coefficients read from a module file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Coefficients {
    Left(Module),
    Both(BiModule),
}

impl Coefficients {
    pub fn group(&self) -> &AbGroup {
        match self {
            Coefficients::Left(m) => m.group(),
            Coefficients::Both(b) => b.group(),
        }
    }
}

pub fn parse_semigroup(text: &str) -> Result<Semigroup, String> {
    let file: SemigroupFile = serde_json::from_str(text).map_err(|e| format!("semigroup file: {e}"))?;
    semigroup_from_file(&file)
}

pub fn semigroup_from_file(file: &SemigroupFile) -> Result<Semigroup, String> {
    let names: Vec<&str> = file.elements.iter().map(String::as_str).collect();
    let rows: Vec<Vec<&str>> = file.table.iter().map(|r| r.iter().map(String::as_str).collect()).collect();
    let rows: Vec<&[&str]> = rows.iter().map(Vec::as_slice).collect();
    Semigroup::from_named_table(&names, &rows, file.zero.as_deref()).map_err(|e| format!("semigroup table: {e}"))
}

pub fn semigroup_to_file(s: &Semigroup) -> SemigroupFile {
    SemigroupFile {
        elements: s.names().to_vec(),
        zero: s.zero().map(|z| s.name(z).to_string()),
        table: s.table_rows().iter().map(|r| r.iter().map(|&x| s.name(x).to_string()).collect()).collect(),
    }
}

pub fn semigroup_to_json(s: &Semigroup) -> String {
    serde_json::to_string_pretty(&semigroup_to_file(s)).expect("plain data serializes")
}

fn group_from_factors(factors: &[i64]) -> Result<AbGroup, String> {
    if factors.iter().any(|&d| d < 0) {
        return Err("invariant factors must be non-negative".into());
    }
    FinAbGroup::from_invariant_factors(factors.iter().map(|&d| Int::from(d)).collect()).map_err(|e| format!("invariant factors: {e}"))
}

fn matrices(
    s: &Semigroup,
    k: usize,
    given: &BTreeMap<String, Vec<Vec<i64>>>,
    side: &str,
) -> Result<Vec<IntMatrix>, String> {
    for name in given.keys() {
        if s.index_of(name).is_none() {
            return Err(format!("{side}: unknown element {name:?}"));
        }
    }
    (0..s.len())
        .map(|x| match given.get(s.name(x)) {
            None => Ok(IntMatrix::identity(k)),
            Some(rows) => {
                if rows.len() != k || rows.iter().any(|r| r.len() != k) {
                    return Err(format!("{side}: matrix of {:?} must be {k}x{k}", s.name(x)));
                }
                Ok(IntMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect()))
            }
        })
        .collect()
}

/// Builds the coefficients and checks the action laws; a right action turns
/// the result into a bimodule.
pub fn module_from_file(s: &Semigroup, file: &ModuleFile) -> Result<Coefficients, String> {
    let group = group_from_factors(&file.invariant_factors)?;
    let k = group.ngens();
    let left = matrices(s, k, &file.action, "action")?;
    match &file.right_action {
        None => {
            let m = ZeroModule::new(s.clone(), group, left).map_err(|e| format!("module: {e}"))?;
            m.validate().map_err(|e| format!("module: {e}"))?;
            Ok(Coefficients::Left(m))
        }
        Some(r) => {
            let right = matrices(s, k, r, "right_action")?;
            let b = Bimodule::new(s.clone(), group, left, right).map_err(|e| format!("bimodule: {e}"))?;
            b.validate().map_err(|e| format!("bimodule: {e}"))?;
            Ok(Coefficients::Both(b))
        }
    }
}

pub fn parse_module(s: &Semigroup, text: &str) -> Result<Coefficients, String> {
    let file: ModuleFile = serde_json::from_str(text).map_err(|e| format!("module file: {e}"))?;
    module_from_file(s, &file)
}

fn small(v: &BigInt) -> i64 {
    i64::try_from(v).expect("module entries fit in i64")
}

fn matrix_rows(m: &IntMatrix) -> Vec<Vec<i64>> {
    m.to_rows().iter().map(|r| r.iter().map(small).collect()).collect()
}

pub fn module_to_file(c: &Coefficients) -> ModuleFile {
    let group = c.group();
    let invariant_factors = group.factors().iter().map(small).collect();
    let listed = |s: &Semigroup, f: &dyn Fn(usize) -> IntMatrix| -> BTreeMap<String, Vec<Vec<i64>>> {
        (0..s.len()).map(|x| (s.name(x).to_string(), matrix_rows(&f(x)))).collect()
    };
    match c {
        Coefficients::Left(m) => ModuleFile {
            invariant_factors,
            action: listed(m.semigroup(), &|x| m.action(x).clone()),
            right_action: None,
        },
        Coefficients::Both(b) => ModuleFile {
            invariant_factors,
            action: listed(b.semigroup(), &|x| b.left(x).clone()),
            right_action: Some(listed(b.semigroup(), &|x| b.right(x).clone())),
        },
    }
}

pub fn module_to_json(c: &Coefficients) -> String {
    serde_json::to_string_pretty(&module_to_file(c)).expect("plain data serializes")
}

/// Parses a comma-separated invariant-factor list such as `2,4` or `0`.
pub fn parse_group(text: &str) -> Result<AbGroup, String> {
    let factors = text
        .split(',')
        .map(|p| p.trim().parse::<i64>().map_err(|_| format!("group: {p:?} is not an integer")))
        .collect::<Result<Vec<_>, _>>()?;
    group_from_factors(&factors)
}

/// The Cayley table of a finite abelian group, elements named by their
/// coordinates (`0`, `1`, … for cyclic groups, `(a,b)` otherwise).
pub fn group_semigroup(a: &AbGroup) -> Result<Semigroup, String> {
    if !a.is_finite() {
        return Err("group must be finite".into());
    }
    let elements = a.elements();
    let name = |v: &Vec<Int>| {
        if v.len() == 1 {
            v[0].to_string()
        } else {
            format!("({})", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        }
    };
    let names = if elements.len() == 1 { vec!["e".to_string()] } else { elements.iter().map(name).collect() };
    let index: BTreeMap<Vec<Int>, usize> = elements.iter().cloned().enumerate().map(|(i, v)| (v, i)).collect();
    Semigroup::from_fn(names, None, |i, j| index[&a.add(&elements[i], &elements[j])]).map_err(|e| e.to_string())
}
