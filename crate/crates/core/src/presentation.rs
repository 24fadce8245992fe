//! Finite presentations with zero relations: parsing, enumeration of the
//! presented semigroup or monoid, and the gown construction.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::semigroup::{validate_table, RawTable, Semigroup};

/// A word over the generators; empty only in monoid mode.
pub type Word = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown generator {name:?} at byte {position}")]
    UnknownGenerator { name: String, position: usize },
    #[error("invalid generator name {0:?}")]
    BadGeneratorName(String),
    #[error("the empty word is only allowed in monoid mode")]
    EmptyWord,
    #[error("generator {0:?} equals zero in the presented semigroup")]
    GeneratorIsZero(String),
    #[error("presentation has no zero")]
    NoZero,
    #[error("enumeration did not finish within the bound of {bound} elements")]
    Truncated { bound: usize },
}

/// Whether words may be empty (monoid) or not (semigroup).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Semigroup,
    Monoid,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<(Word, Word)>,
    pub zero_relations: Vec<Word>,
    pub has_zero: bool,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "0"
        && name != "1"
        && !name
            .chars()
            .any(|c| c.is_whitespace() || ",;=:".contains(c))
}

impl Presentation {
    pub fn new(
        generators: Vec<String>,
        relations: Vec<(Word, Word)>,
        zero_relations: Vec<Word>,
        has_zero: bool,
    ) -> Result<Self, PresentationError> {
        if let Some(bad) = generators.iter().find(|g| !valid_name(g)) {
            return Err(PresentationError::BadGeneratorName(bad.clone()));
        }
        let n = generators.len();
        let in_range = |w: &Word| w.iter().all(|&g| g < n);
        if !relations.iter().all(|(u, v)| in_range(u) && in_range(v))
            || !zero_relations.iter().all(in_range)
        {
            return Err(PresentationError::Syntax {
                position: 0,
                message: "generator index out of range".into(),
            });
        }
        let has_zero = has_zero || !zero_relations.is_empty();
        Ok(Presentation {
            generators,
            relations,
            zero_relations,
            has_zero,
        })
    }

    pub fn word_to_string(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let names: Vec<&str> = w.iter().map(|&g| self.generators[g].as_str()).collect();
        names.join(" ")
    }

    /// Text in the grammar accepted by [`parse_presentation`].
    pub fn to_text(&self) -> String {
        let mut out = format!("gens: {}", self.generators.join(" "));
        if !self.relations.is_empty() {
            let rels: Vec<String> = self
                .relations
                .iter()
                .map(|(u, v)| format!("{}={}", self.word_to_string(u), self.word_to_string(v)))
                .collect();
            out.push_str(&format!("; rels: {}", rels.join(", ")));
        }
        if self.has_zero {
            let zs: Vec<String> = self
                .zero_relations
                .iter()
                .map(|w| self.word_to_string(w))
                .collect();
            out.push_str(&format!("; zeros: {}", zs.join(", ")));
        }
        out
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_text())
    }
}

enum Side {
    Word(Word),
    Zero,
}

fn parse_side(text: &str, offset: usize, gens: &[String]) -> Result<Side, PresentationError> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    if trimmed.is_empty() {
        return Err(PresentationError::Syntax {
            position: offset,
            message: "empty word".into(),
        });
    }
    if trimmed == "0" {
        return Ok(Side::Zero);
    }
    let mut word = Vec::new();
    let mut pos = offset + lead;
    for token in trimmed.split_whitespace() {
        let start = pos + trimmed[pos - offset - lead..].find(token).unwrap_or(0);
        pos = start + token.len();
        if token == "1" {
            continue;
        }
        if let Some(g) = gens.iter().position(|n| n == token) {
            word.push(g);
            continue;
        }
        // juxtaposed names, longest match first
        let mut rest = token;
        let mut at = start;
        while !rest.is_empty() {
            let best = gens
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.len());
            match best {
                Some((g, n)) => {
                    word.push(g);
                    rest = &rest[n.len()..];
                    at += n.len();
                }
                None => {
                    return Err(PresentationError::UnknownGenerator {
                        name: rest.to_string(),
                        position: at,
                    });
                }
            }
        }
    }
    Ok(Side::Word(word))
}

/// Parses `gens: <names> ; rels: u=v, ... ; zeros: w, ...`.
///
/// Words are generator names separated by whitespace or juxtaposed
/// (longest match first); `1` is the empty word. A relation side `0` makes
/// it a zero relation, and chains `a=b=c` are allowed. Any `zeros` section,
/// even an empty one, declares a zero.
pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let mut generators: Option<Vec<String>> = None;
    let mut relations = Vec::new();
    let mut zero_relations = Vec::new();
    let mut has_zero = false;
    let mut offset = 0;
    for section in text.split(';') {
        let here = offset;
        offset += section.len() + 1;
        if section.trim().is_empty() {
            continue;
        }
        let colon = section.find(':').ok_or_else(|| PresentationError::Syntax {
            position: here,
            message: "expected `name:` at the start of a section".into(),
        })?;
        let key = section[..colon].trim();
        let body = &section[colon + 1..];
        let body_at = here + colon + 1;
        match key {
            "gens" => {
                if generators.is_some() {
                    return Err(PresentationError::Syntax {
                        position: here,
                        message: "duplicate gens section".into(),
                    });
                }
                let names: Vec<String> = body
                    .split(|c: char| c.is_whitespace() || c == ',')
                    .filter(|s| !s.is_empty())
                    .map(String::from)
                    .collect();
                if names.is_empty() {
                    return Err(PresentationError::Syntax {
                        position: body_at,
                        message: "no generators".into(),
                    });
                }
                for (i, n) in names.iter().enumerate() {
                    if !valid_name(n) || names[..i].contains(n) {
                        return Err(PresentationError::BadGeneratorName(n.clone()));
                    }
                }
                generators = Some(names);
            }
            "rels" | "zeros" => {
                let gens = generators.as_ref().ok_or(PresentationError::Syntax {
                    position: here,
                    message: "gens section must come first".into(),
                })?;
                if key == "zeros" {
                    has_zero = true;
                }
                let mut item_at = body_at;
                for item in body.split(',') {
                    let this_at = item_at;
                    item_at += item.len() + 1;
                    if item.trim().is_empty() {
                        if key == "zeros" {
                            continue;
                        }
                        return Err(PresentationError::Syntax {
                            position: this_at,
                            message: "empty relation".into(),
                        });
                    }
                    if key == "zeros" {
                        match parse_side(item, this_at, gens)? {
                            Side::Word(w) => zero_relations.push(w),
                            Side::Zero => {
                                return Err(PresentationError::Syntax {
                                    position: this_at,
                                    message: "`0` is not a zero word".into(),
                                })
                            }
                        }
                        continue;
                    }
                    let mut sides = Vec::new();
                    let mut side_at = this_at;
                    for part in item.split('=') {
                        sides.push(parse_side(part, side_at, gens)?);
                        side_at += part.len() + 1;
                    }
                    if sides.len() < 2 {
                        return Err(PresentationError::Syntax {
                            position: this_at,
                            message: "expected `=`".into(),
                        });
                    }
                    for pair in sides.windows(2) {
                        match (&pair[0], &pair[1]) {
                            (Side::Word(u), Side::Word(v)) => {
                                relations.push((u.clone(), v.clone()))
                            }
                            (Side::Word(w), Side::Zero) | (Side::Zero, Side::Word(w)) => {
                                has_zero = true;
                                zero_relations.push(w.clone());
                            }
                            (Side::Zero, Side::Zero) => {}
                        }
                    }
                }
            }
            other => {
                return Err(PresentationError::Syntax {
                    position: here,
                    message: format!("unknown section {other:?}"),
                });
            }
        }
    }
    let generators = generators.ok_or(PresentationError::Syntax {
        position: 0,
        message: "missing gens section".into(),
    })?;
    Presentation::new(generators, relations, zero_relations, has_zero)
}

/// A finished enumeration.
#[derive(Clone, Debug)]
pub struct Enumerated {
    pub semigroup: Semigroup,
    /// Shortlex-least word of every element; `None` for a zero that no word
    /// over the generators reaches.
    pub normal_forms: Vec<Option<Word>>,
    /// Element represented by each generator.
    pub generators: Vec<usize>,
}

impl Enumerated {
    /// Value of a word; the empty word maps to the identity in monoid mode.
    pub fn evaluate(&self, w: &[usize]) -> Option<usize> {
        let s = &self.semigroup;
        let mut cur: Option<usize> = None;
        for &g in w {
            let x = self.generators[g];
            cur = Some(match cur {
                None => x,
                Some(c) => s.mul(c, x),
            });
        }
        cur.or(s.identity())
    }
}

#[derive(Clone, Debug)]
pub enum Enumeration {
    Complete(Enumerated),
    /// The bound was exceeded; `discovered` lists words of distinct
    /// elements seen so far (at most `bound + 1`).
    Truncated {
        discovered: Vec<Word>,
    },
}

impl Enumeration {
    pub fn complete(self) -> Option<Enumerated> {
        match self {
            Enumeration::Complete(e) => Some(e),
            Enumeration::Truncated { .. } => None,
        }
    }
}

/// Coset-style enumeration of a monoid given by relations on words.
struct CosetTable {
    ngens: usize,
    rows: Vec<Vec<Option<usize>>>,
    forward: Vec<usize>,
    live: usize,
    limit: usize,
}

struct Overflow;

impl CosetTable {
    fn new(ngens: usize, limit: usize) -> Self {
        CosetTable {
            ngens,
            rows: vec![vec![None; ngens]],
            forward: vec![0],
            live: 1,
            limit,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        let mut root = x;
        while self.forward[root] != root {
            root = self.forward[root];
        }
        while self.forward[x] != root {
            let next = self.forward[x];
            self.forward[x] = root;
            x = next;
        }
        root
    }

    fn is_live(&self, x: usize) -> bool {
        self.forward[x] == x
    }

    fn edge(&mut self, x: usize, g: usize) -> Option<usize> {
        let t = self.rows[x][g]?;
        Some(self.find(t))
    }

    fn define(&mut self, x: usize, g: usize) -> Result<usize, Overflow> {
        if self.live >= self.limit {
            return Err(Overflow);
        }
        let n = self.rows.len();
        self.rows.push(vec![None; self.ngens]);
        self.forward.push(n);
        self.rows[x][g] = Some(n);
        self.live += 1;
        Ok(n)
    }

    fn trace_define(&mut self, mut x: usize, w: &[usize]) -> Result<usize, Overflow> {
        for &g in w {
            x = match self.edge(x, g) {
                Some(t) => t,
                None => self.define(x, g)?,
            };
        }
        Ok(x)
    }

    fn trace(&mut self, mut x: usize, w: &[usize]) -> Option<usize> {
        for &g in w {
            x = self.edge(x, g)?;
        }
        Some(x)
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((a, b)) = queue.pop_front() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, kill) = if a < b { (a, b) } else { (b, a) };
            self.forward[kill] = keep;
            self.live -= 1;
            for g in 0..self.ngens {
                if let Some(t) = self.rows[kill][g] {
                    match self.rows[keep][g] {
                        Some(s) => queue.push_back((s, t)),
                        None => self.rows[keep][g] = Some(t),
                    }
                }
            }
        }
    }

    fn enforce(&mut self, x: usize, rels: &[(Word, Word)]) -> Result<(), Overflow> {
        for (u, v) in rels {
            let x = self.find(x);
            let p = self.trace_define(x, u)?;
            let x = self.find(x);
            let q = self.trace_define(x, v)?;
            let (p, q) = (self.find(p), self.find(q));
            if p != q {
                self.coincidence(p, q);
            }
        }
        Ok(())
    }

    fn run(&mut self, rels: &[(Word, Word)]) -> Result<(), Overflow> {
        loop {
            let mut i = 0;
            while i < self.rows.len() {
                if self.is_live(i) {
                    self.enforce(i, rels)?;
                    if self.is_live(i) {
                        for g in 0..self.ngens {
                            if self.edge(i, g).is_none() {
                                self.define(i, g)?;
                            }
                        }
                    }
                }
                i += 1;
            }
            // every live node must now be closed and satisfy every relation
            let mut clean = true;
            for x in 0..self.rows.len() {
                if !self.is_live(x) {
                    continue;
                }
                for g in 0..self.ngens {
                    if self.edge(x, g).is_none() {
                        clean = false;
                    }
                }
                for (u, v) in rels {
                    if self.trace(x, u) != self.trace(x, v) {
                        clean = false;
                    }
                }
            }
            if clean {
                return Ok(());
            }
        }
    }

    /// Live nodes reachable from node 0 in shortlex order of their words,
    /// using only the first `letters` generators.
    fn shortlex(&mut self, letters: usize, cap: usize) -> Vec<(usize, Word)> {
        let mut seen = HashMap::new();
        let start = self.find(0);
        seen.insert(start, ());
        let mut out = vec![(start, Vec::new())];
        let mut head = 0;
        while head < out.len() && out.len() < cap {
            let (x, w) = out[head].clone();
            head += 1;
            for g in 0..letters {
                if let Some(t) = self.edge(x, g) {
                    if seen.insert(t, ()).is_none() {
                        let mut v = w.clone();
                        v.push(g);
                        out.push((t, v));
                    }
                }
            }
        }
        out
    }
}

fn element_name(p: &Presentation, w: &[usize]) -> String {
    if w.is_empty() {
        return "1".into();
    }
    let single = p.generators.iter().all(|g| g.chars().count() == 1);
    let names: Vec<&str> = w.iter().map(|&g| p.generators[g].as_str()).collect();
    if single {
        names.concat()
    } else {
        names.join("·")
    }
}

/// Enumerates the presented semigroup (or monoid), with a zero when the
/// presentation has one. Elements are ordered by the shortlex order of their
/// normal forms, the zero last.
pub fn enumerate(
    p: &Presentation,
    bound: usize,
    mode: Mode,
) -> Result<Enumeration, PresentationError> {
    assert!(bound >= 1, "bound must be positive");
    if mode == Mode::Semigroup {
        let empty = p
            .relations
            .iter()
            .any(|(u, v)| u.is_empty() || v.is_empty())
            || p.zero_relations.iter().any(Vec::is_empty);
        if empty {
            return Err(PresentationError::EmptyWord);
        }
    }
    let m = p.generators.len();
    let ngens = if p.has_zero { m + 1 } else { m };
    let z = m;
    let mut rels: Vec<(Word, Word)> = p.relations.clone();
    if p.has_zero {
        for w in &p.zero_relations {
            rels.push((w.clone(), vec![z]));
        }
        for g in 0..ngens {
            rels.push((vec![z, g], vec![z]));
            rels.push((vec![g, z], vec![z]));
        }
    }
    let limit = (1000 * bound).max(10_000);
    let mut table = CosetTable::new(ngens, limit);
    if table.run(&rels).is_err() {
        let discovered = table
            .shortlex(m, bound + 1)
            .into_iter()
            .map(|(_, w)| w)
            .collect();
        return Ok(Enumeration::Truncated { discovered });
    }
    // (node, word used to multiply by it, normal form if one exists)
    let mut order: Vec<(usize, Word, Option<Word>)> = table
        .shortlex(m, usize::MAX)
        .into_iter()
        .map(|(x, w)| (x, w.clone(), Some(w)))
        .collect();
    if mode == Mode::Semigroup {
        order.retain(|(_, w, _)| !w.is_empty());
    }
    let origin = table.find(0);
    let zero_node = if p.has_zero {
        Some(table.edge(origin, z).expect("complete table"))
    } else {
        None
    };
    if let Some(zn) = zero_node {
        match order.iter().position(|(x, _, _)| *x == zn) {
            Some(k) => {
                let entry = order.remove(k);
                order.push(entry);
            }
            None => order.push((zn, vec![z], None)),
        }
    }
    let count = order.len();
    if count > bound {
        let discovered = order
            .iter()
            .take(bound + 1)
            .map(|(_, w, _)| w.clone())
            .collect();
        return Ok(Enumeration::Truncated { discovered });
    }
    let index: HashMap<usize, usize> = order
        .iter()
        .enumerate()
        .map(|(i, (x, _, _))| (*x, i))
        .collect();
    let mut table_rows = Vec::with_capacity(count);
    for (x, _, _) in &order {
        let row = order
            .iter()
            .map(|(_, w, _)| {
                let t = table.trace(*x, w).expect("complete table");
                index[&table.find(t)]
            })
            .collect();
        table_rows.push(row);
    }
    let names: Vec<String> = order
        .iter()
        .map(|(x, w, _)| {
            if Some(*x) == zero_node {
                "0".to_string()
            } else {
                element_name(p, w)
            }
        })
        .collect();
    let zero = zero_node.map(|zn| index[&zn]);
    let semigroup = validate_table(RawTable {
        names,
        table: table_rows,
        zero,
    })
    .expect("enumerated table is a semigroup");
    let normal_forms = order.into_iter().map(|(_, _, nf)| nf).collect();
    let start = table.find(0);
    let generators = (0..m)
        .map(|g| {
            let t = table.edge(start, g).expect("complete table");
            index[&t]
        })
        .collect();
    Ok(Enumeration::Complete(Enumerated {
        semigroup,
        normal_forms,
        generators,
    }))
}

/// Drops the zero relations (and, when the presented semigroup can be
/// enumerated within `bound`, every relation whose sides evaluate to zero).
/// Fails if some generator is zero.
pub fn gown_presentation(
    p: &Presentation,
    bound: usize,
    mode: Mode,
) -> Result<Presentation, PresentationError> {
    if !p.has_zero {
        return Err(PresentationError::NoZero);
    }
    let mut relations = p.relations.clone();
    if let Enumeration::Complete(e) = enumerate(p, bound, mode)? {
        let zero = e.semigroup.zero();
        for (g, &x) in e.generators.iter().enumerate() {
            if Some(x) == zero {
                return Err(PresentationError::GeneratorIsZero(p.generators[g].clone()));
            }
        }
        relations.retain(|(u, _)| e.evaluate(u) != zero);
    }
    Ok(Presentation {
        generators: p.generators.clone(),
        relations,
        zero_relations: Vec::new(),
        has_zero: false,
    })
}

/// Zero-chained sequences over `S∖0` up to a length bound, partitioned by
/// the equivalence generated by the two elementary moves.
#[derive(Clone, Debug)]
pub struct GownClasses {
    pub length_bound: usize,
    pub sequences: Vec<Vec<usize>>,
    /// Class index of each sequence.
    pub class_of: Vec<usize>,
    /// Members of each class; the first member is the representative.
    pub classes: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    semigroup: Semigroup,
}

impl GownClasses {
    pub fn class_of_sequence(&self, seq: &[usize]) -> Option<usize> {
        self.index.get(seq).map(|&i| self.class_of[i])
    }

    /// Product of two classes computed on representatives; `None` when the
    /// result is longer than the bound.
    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        let x = &self.sequences[self.classes[a][0]];
        let y = &self.sequences[self.classes[b][0]];
        self.class_of_sequence(&gown_product(&self.semigroup, x, y))
    }

    /// Product computed on every pair of members; `None` if some product is
    /// out of range, `Some(false)` if representatives disagree.
    pub fn mul_is_consistent(&self, a: usize, b: usize) -> Option<bool> {
        let mut seen = None;
        for &i in &self.classes[a] {
            for &j in &self.classes[b] {
                let c = self.class_of_sequence(&gown_product(
                    &self.semigroup,
                    &self.sequences[i],
                    &self.sequences[j],
                ))?;
                match seen {
                    None => seen = Some(c),
                    Some(d) if d != c => return Some(false),
                    _ => {}
                }
            }
        }
        Some(true)
    }
}

/// `[x][y]` on sequences: merge the touching ends if their product is nonzero.
pub fn gown_product(s: &Semigroup, x: &[usize], y: &[usize]) -> Vec<usize> {
    let (last, first) = (*x.last().expect("nonempty"), y[0]);
    let p = s.mul(last, first);
    let mut out = x[..x.len() - 1].to_vec();
    if s.is_zero(p) {
        out.push(last);
        out.push(first);
    } else {
        out.push(p);
    }
    out.extend_from_slice(&y[1..]);
    out
}

fn union_find_root(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Enumerates gown sequences of length at most `length_bound` and their classes.
pub fn gown_sequences(
    s: &Semigroup,
    length_bound: usize,
) -> Result<GownClasses, PresentationError> {
    let zero = s.zero().ok_or(PresentationError::NoZero)?;
    let nz = s.nonzero();
    let mut sequences: Vec<Vec<usize>> = nz.iter().map(|&x| vec![x]).collect();
    let mut frontier = sequences.clone();
    for _ in 1..length_bound {
        let mut next = Vec::new();
        for seq in &frontier {
            let last = *seq.last().unwrap();
            for &x in &nz {
                if s.mul(last, x) == zero {
                    let mut t = seq.clone();
                    t.push(x);
                    next.push(t);
                }
            }
        }
        sequences.extend(next.iter().cloned());
        frontier = next;
    }
    let index: HashMap<Vec<usize>, usize> = sequences
        .iter()
        .enumerate()
        .map(|(i, q)| (q.clone(), i))
        .collect();
    let mut parent: Vec<usize> = (0..sequences.len()).collect();
    let all: Vec<usize> = (0..s.len()).collect();
    let link = |parent: &mut Vec<usize>, a: usize, t: &[usize]| {
        if let Some(&b) = index.get(t) {
            let (ra, rb) = (union_find_root(parent, a), union_find_root(parent, b));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    };
    for (k, x) in sequences.iter().enumerate() {
        let m = x.len();
        // move a right factor u of x_i onto x_{i+1}
        for i in 0..m.saturating_sub(1) {
            for &yi in &all {
                for &u in &all {
                    if s.mul(yi, u) != x[i] {
                        continue;
                    }
                    let mut y = x.clone();
                    y[i] = yi;
                    y[i + 1] = s.mul(u, x[i + 1]);
                    link(&mut parent, k, &y);
                }
            }
        }
        // absorb x_i = uv into its neighbours
        for i in 1..m.saturating_sub(1) {
            for &u in &all {
                for &v in &all {
                    if s.mul(u, v) != x[i] {
                        continue;
                    }
                    let mut y = x[..i - 1].to_vec();
                    y.push(s.mul(x[i - 1], u));
                    y.push(s.mul(v, x[i + 1]));
                    y.extend_from_slice(&x[i + 2..]);
                    link(&mut parent, k, &y);
                }
            }
        }
    }
    let mut class_of = vec![0; sequences.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class = HashMap::new();
    for i in 0..sequences.len() {
        let r = union_find_root(&mut parent, i);
        let c = *root_class.entry(r).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[c].push(i);
        class_of[i] = c;
    }
    Ok(GownClasses {
        length_bound,
        sequences,
        class_of,
        classes,
        index,
        semigroup: s.clone(),
    })
}
