//! Automaton files and Graphviz export.
//!
//! File format (`"format": 1`):
//!
//! ```json
//! {
//!   "format": 1,
//!   "p": 7,
//!   "initial": 1,
//!   "states": [ { "terms": [[0, 1, 1], [1, 2, 6]], "text": "6*y^2*x + y" } ],
//!   "outputs": [0],
//!   "transitions": [1, 1, 1, 1, 1, 1, 1]
//! }
//! ```
//!
//! State numbers are 1-based (`s[1]` is initial); `terms` are `[i, j, c]`
//! triples for `c x^i y^j` in ascending `(i, j)` order; `transitions` is the
//! row-major table, entry `(s - 1) * p + d` holding the target of state `s`
//! on digit `d`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis;
use crate::automaton::{Dfao, StateId};
use crate::{Error, PolyFp, Prime, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StateRecord {
    pub terms: Vec<[u32; 3]>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomatonFile {
    pub format: u32,
    pub p: u64,
    pub initial: usize,
    pub states: Vec<StateRecord>,
    pub outputs: Vec<u32>,
    pub transitions: Vec<usize>,
}

impl AutomatonFile {
    pub fn from_dfao(d: &Dfao) -> Self {
        AutomatonFile {
            format: FORMAT_VERSION,
            p: d.prime().get() as u64,
            initial: d.initial().label(),
            states: d
                .states()
                .iter()
                .map(|s| StateRecord {
                    terms: s.terms().map(|((i, j), c)| [i, j, c]).collect(),
                    text: s.to_string(),
                })
                .collect(),
            outputs: d.outputs().to_vec(),
            transitions: d.table().iter().map(|&t| t + 1).collect(),
        }
    }

    /// Rebuilds the machine, rejecting anything inconsistent: wrong version,
    /// non-prime base, out-of-range coefficients or targets, text or outputs
    /// that disagree with the stored terms.
    pub fn to_dfao(&self) -> Result<Dfao> {
        let bad = |msg: String| Err(Error::InvalidAutomaton(msg));
        if self.format != FORMAT_VERSION {
            return bad(format!("unsupported format version {}", self.format));
        }
        let p = Prime::new(self.p)?;
        if self.initial != 1 {
            return bad(format!("initial state must be s[1], found s[{}]", self.initial));
        }
        if self.outputs.len() != self.states.len() {
            return bad("outputs and states differ in length".into());
        }
        let mut states = Vec::with_capacity(self.states.len());
        for (i, rec) in self.states.iter().enumerate() {
            let mut seen = BTreeSet::new();
            for &[a, b, c] in &rec.terms {
                if c == 0 || c >= p.get() || !seen.insert((a, b)) {
                    return bad(format!("s[{}]: invalid term [{a}, {b}, {c}]", i + 1));
                }
            }
            let poly = PolyFp::from_terms(
                p,
                rec.terms.iter().map(|&[a, b, c]| ((a, b), c as i64)),
            );
            if poly.to_string() != rec.text {
                return bad(format!(
                    "s[{}]: text {:?} does not match terms ({poly})",
                    i + 1,
                    rec.text
                ));
            }
            if poly.eval_origin() != self.outputs[i] {
                return bad(format!(
                    "s[{}]: stored output {} but the polynomial evaluates to {}",
                    i + 1,
                    self.outputs[i],
                    poly.eval_origin()
                ));
            }
            states.push(poly);
        }
        let mut delta = Vec::with_capacity(self.transitions.len());
        for &t in &self.transitions {
            if t == 0 || t > states.len() {
                return bad(format!("transition target {t} out of range"));
            }
            delta.push(t - 1);
        }
        Dfao::from_parts(p, states, delta)
    }
}

pub fn to_json(d: &Dfao) -> String {
    let mut s = serde_json::to_string_pretty(&AutomatonFile::from_dfao(d)).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json(text: &str) -> Result<Dfao> {
    let file: AutomatonFile = serde_json::from_str(text)?;
    file.to_dfao()
}

pub fn load(path: &Path) -> Result<Dfao> {
    from_json(&fs::read_to_string(path)?)
}

/// Writes to a sibling temporary file and renames it over `path`.
pub fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path
        .parent()
        .filter(|d| !d.as_os_str().is_empty())
        .unwrap_or(Path::new("."));
    let name = path
        .file_name()
        .ok_or_else(|| std::io::Error::new(std::io::ErrorKind::InvalidInput, "path has no file name"))?;
    let tmp = dir.join(format!(".{}.tmp{}", name.to_string_lossy(), std::process::id()));
    fs::write(&tmp, contents)?;
    if let Err(e) = fs::rename(&tmp, path) {
        let _ = fs::remove_file(&tmp);
        return Err(e.into());
    }
    Ok(())
}

pub fn save(d: &Dfao, path: &Path) -> Result<()> {
    write_atomic(path, &to_json(d))
}

/// Which part of the state graph to draw.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subgraph {
    Full,
    /// States and edges on a path from `s[1]` to a zero-valued state that is
    /// the final state of some canonical digit string.
    ZeroPaths,
}

/// Zero-valued states reachable as the last state of a string whose most
/// significant digit is nonzero.
pub fn final_zero_states(d: &Dfao) -> BTreeSet<StateId> {
    let mut out = BTreeSet::new();
    for u in d.state_ids() {
        for c in 1..d.base() as u32 {
            let v = d.step(u, c);
            if d.output(v) == 0 {
                out.insert(v);
            }
        }
    }
    out
}

fn zero_path_states(d: &Dfao) -> BTreeSet<StateId> {
    // every state is reachable, so only co-reachability needs computing
    let targets = final_zero_states(d);
    let mut preds: Vec<Vec<StateId>> = vec![Vec::new(); d.len()];
    for u in d.state_ids() {
        for c in 0..d.base() as u32 {
            preds[d.step(u, c).0].push(u);
        }
    }
    let mut keep: BTreeSet<StateId> = targets.clone();
    let mut queue: VecDeque<StateId> = targets.into_iter().collect();
    while let Some(v) = queue.pop_front() {
        for &u in &preds[v.0] {
            if keep.insert(u) {
                queue.push_back(u);
            }
        }
    }
    keep
}

/// Edge label grouping: digits from one state to the same target, joined by
/// commas, or `all` when every digit goes there.
pub fn grouped_edges(d: &Dfao, keep: &BTreeSet<StateId>) -> Vec<(StateId, StateId, Vec<u32>)> {
    let mut out = Vec::new();
    for &u in keep {
        let mut groups: BTreeMap<StateId, Vec<u32>> = BTreeMap::new();
        for c in 0..d.base() as u32 {
            let v = d.step(u, c);
            if keep.contains(&v) {
                groups.entry(v).or_default().push(c);
            }
        }
        out.extend(groups.into_iter().map(|(v, digits)| (u, v, digits)));
    }
    out
}

fn label(digits: &[u32], base: usize) -> String {
    if digits.len() == base {
        return "all".to_string();
    }
    digits
        .iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// Graphviz source with nodes `s[i] (value)`; ordering is deterministic.
pub fn to_dot(d: &Dfao, which: Subgraph) -> String {
    let keep: BTreeSet<StateId> = match which {
        Subgraph::Full => d.state_ids().collect(),
        Subgraph::ZeroPaths => zero_path_states(d),
    };
    let loops = analysis::loop_states(d);
    let mut out = String::new();
    let p = d.prime();
    let _ = writeln!(out, "digraph motzkin_mod_{p} {{");
    let _ = writeln!(out, "  rankdir=LR;");
    let _ = writeln!(out, "  node [shape=circle];");
    let _ = writeln!(out, "  start [shape=point];");
    let _ = writeln!(out, "  start -> s1;");
    for &s in &keep {
        let shape = if loops.contains(&s) {
            " shape=doublecircle"
        } else {
            ""
        };
        let _ = writeln!(
            out,
            "  s{} [label=\"{} ({})\"{shape}];",
            s.label(),
            s,
            d.output(s)
        );
    }
    for (u, v, digits) in grouped_edges(d, &keep) {
        let _ = writeln!(
            out,
            "  s{} -> s{} [label=\"{}\"];",
            u.label(),
            v.label(),
            label(&digits, d.base())
        );
    }
    out.push_str("}\n");
    out
}
