//! Machine-readable reports and the rendering helpers they share.

use std::collections::BTreeMap;
use std::path::Path;

use num_bigint::BigInt;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use zerocohom::schur::SemilatticeOfGroups;
use zerocohom::semigroup::Semigroup;
use zerocohom::{AbGroup, IntMatrix};

/// One report per invocation. Keys serialize in sorted order and nothing
/// time-dependent is included, so equal inputs give byte-equal output.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub args: BTreeMap<String, Value>,
    /// SHA-256 of every input file, keyed by flag.
    pub inputs: BTreeMap<String, String>,
    pub result: Value,
    pub witnesses: Value,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            args: BTreeMap::new(),
            inputs: BTreeMap::new(),
            result: Value::Null,
            witnesses: json!({}),
        }
    }

    pub fn arg(&mut self, name: &str, value: impl Into<Value>) {
        self.args.insert(name.to_string(), value.into());
    }

    /// Reads a file, recording its digest and echoing its path.
    pub fn read_input(&mut self, flag: &str, path: &Path) -> Result<String, crate::Failure> {
        let bytes = std::fs::read(path).map_err(|e| crate::Failure::Input(format!("{}: {e}", path.display())))?;
        self.inputs.insert(flag.to_string(), hex::encode(Sha256::digest(&bytes)));
        self.arg(flag, path.display().to_string());
        String::from_utf8(bytes).map_err(|_| crate::Failure::Input(format!("{}: not UTF-8", path.display())))
    }

    pub fn to_value(&self) -> Value {
        json!({
            "command": { "name": self.command, "args": self.args, "inputs": self.inputs },
            "result": self.result,
            "witnesses": self.witnesses,
            "version": env!("CARGO_PKG_VERSION"),
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).expect("values serialize");
        s.push('\n');
        s
    }
}

/// Integers as JSON numbers when they fit, strings otherwise.
pub fn int(v: &BigInt) -> Value {
    match i64::try_from(v) {
        Ok(x) => json!(x),
        Err(_) => json!(v.to_string()),
    }
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int).collect())
}

/// A group as its invariant-factor list, `0` standing for Z.
pub fn group(g: &AbGroup) -> Value {
    ints(g.factors())
}

pub fn matrix(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| ints(r)).collect())
}

pub fn names(s: &Semigroup, xs: &[usize]) -> Value {
    Value::Array(xs.iter().map(|&x| json!(s.name(x))).collect())
}

pub fn table(s: &Semigroup) -> Value {
    Value::Array(s.table_rows().iter().map(|r| names(s, r)).collect())
}

/// Components, links and indices of a strong semilattice of groups.
pub fn semilattice<I>(sl: &SemilatticeOfGroups<I>, index: impl Fn(&I) -> Value) -> Value {
    let components: Vec<Value> = sl
        .indices
        .iter()
        .zip(&sl.components)
        .map(|(i, g)| json!({ "index": index(i), "group": group(g) }))
        .collect();
    let links: Vec<Value> =
        sl.links.iter().map(|((a, b), h)| json!({ "from": a, "to": b, "matrix": matrix(h.matrix()) })).collect();
    json!({ "components": components, "links": links })
}
