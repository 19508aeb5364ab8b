//! The automaton with output computing `M_n mod p`.
//!
//! `h(x) = M(x) - 1` is algebraic with `F(x, h) = 0` where
//! `F(x, y) = x^2 y^2 + (2x^2 + x - 1) y + x^2 + x`. Writing
//! `P = -y F_y(xy, y)` and `Q = -F(xy, y) / y` gives `h = diag(P / Q)`. A
//! state is a numerator `u` standing for `u / Q`; reading digit `d` maps it to
//! `cartier_{d,d}(u * Q^(p-1))`, and the value of a state is `u(0, 0)`.
//!
//! Digits are read least significant first. The diagonal has a zero constant
//! term, so `n = 0` is answered directly with `M_0 = 1`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, PolyFp, Prime, Result};

/// Index of a state, 0-based internally and shown 1-based as `s[i]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StateId(pub usize);

impl StateId {
    /// The state printed as `s[label]`.
    pub fn from_label(label: usize) -> Self {
        assert!(label >= 1, "state labels start at 1");
        StateId(label - 1)
    }

    pub fn label(self) -> usize {
        self.0 + 1
    }
}

impl fmt::Display for StateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s[{}]", self.label())
    }
}

/// Canonical base-`p` expansion, least significant digit first, without
/// most-significant zeros. `n = 0` has no digits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digits {
    p: Prime,
    seq: Vec<u32>,
}

impl Digits {
    pub fn of_u64(mut n: u64, p: Prime) -> Self {
        let base = p.get() as u64;
        let mut seq = Vec::new();
        while n > 0 {
            seq.push((n % base) as u32);
            n /= base;
        }
        Digits { p, seq }
    }

    pub fn of_biguint(n: &BigUint, p: Prime) -> Self {
        let base = BigUint::from(p.get());
        let mut seq = Vec::new();
        let mut n = n.clone();
        while !n.is_zero() {
            let (q, r) = n.div_rem(&base);
            seq.push(r.to_u32().expect("digit below base"));
            n = q;
        }
        Digits { p, seq }
    }

    pub fn base(&self) -> Prime {
        self.p
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn value(&self) -> BigUint {
        self.seq
            .iter()
            .rev()
            .fold(BigUint::zero(), |acc, &d| acc * self.p.get() + d)
    }
}

/// Least-significant-first digits of `n` in base `p`.
pub fn digits_lsd(n: u64, p: Prime) -> Digits {
    Digits::of_u64(n, p)
}

/// The numerator `P` and denominator `Q` whose diagonal is `(0, M_1, M_2, ...)`,
/// reduced mod `p`.
pub fn base_representation(p: Prime) -> (PolyFp, PolyFp) {
    let num = PolyFp::from_terms(p, [((0, 1), 1), ((1, 2), -1), ((2, 3), -2), ((2, 4), -2)]);
    let den = PolyFp::from_terms(
        p,
        [
            ((0, 0), 1),
            ((1, 0), -1),
            ((1, 1), -1),
            ((2, 1), -1),
            ((2, 2), -2),
            ((2, 3), -1),
        ],
    );
    (num, den)
}

/// A complete deterministic automaton with output over base-`p` digits.
///
/// State 0 (`s[1]`) is initial. `delta[u * p + d]` is the successor of `u` on
/// digit `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfao {
    p: Prime,
    states: Vec<PolyFp>,
    delta: Vec<usize>,
    outputs: Vec<u32>,
}

impl Dfao {
    /// Assembles a machine from explicit parts, checking every invariant:
    /// total in-range transitions, distinct polynomials over `p`, and
    /// reachability of every state from `s[1]`.
    pub fn from_parts(p: Prime, states: Vec<PolyFp>, delta: Vec<usize>) -> Result<Self> {
        let n = states.len();
        let base = p.get() as usize;
        if n == 0 {
            return Err(Error::InvalidAutomaton("no states".into()));
        }
        if delta.len() != n * base {
            return Err(Error::InvalidAutomaton(format!(
                "transition table has {} entries, expected {}",
                delta.len(),
                n * base
            )));
        }
        if let Some(&t) = delta.iter().find(|&&t| t >= n) {
            return Err(Error::InvalidAutomaton(format!("target {t} out of range")));
        }
        let mut seen = HashMap::new();
        for (i, s) in states.iter().enumerate() {
            if s.modulus() != p.get() {
                return Err(Error::ModulusMismatch {
                    left: p.get(),
                    right: s.modulus(),
                });
            }
            if let Some(j) = seen.insert(s, i) {
                return Err(Error::InvalidAutomaton(format!(
                    "{} and {} carry the same polynomial",
                    StateId(j),
                    StateId(i)
                )));
            }
        }
        let outputs = states.iter().map(PolyFp::eval_origin).collect();
        let dfao = Dfao {
            p,
            states,
            delta,
            outputs,
        };
        let reach = dfao.reachable();
        if let Some(u) = reach.iter().position(|r| !r) {
            return Err(Error::InvalidAutomaton(format!(
                "{} is unreachable",
                StateId(u)
            )));
        }
        Ok(dfao)
    }

    pub fn prime(&self) -> Prime {
        self.p
    }

    pub fn base(&self) -> usize {
        self.p.get() as usize
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn initial(&self) -> StateId {
        StateId(0)
    }

    pub fn states(&self) -> &[PolyFp] {
        &self.states
    }

    pub fn state(&self, s: StateId) -> &PolyFp {
        &self.states[s.0]
    }

    pub fn outputs(&self) -> &[u32] {
        &self.outputs
    }

    pub fn output(&self, s: StateId) -> u32 {
        self.outputs[s.0]
    }

    /// Flat transition table, row-major by state.
    pub fn table(&self) -> &[usize] {
        &self.delta
    }

    #[inline]
    pub fn step(&self, s: StateId, digit: u32) -> StateId {
        StateId(self.delta[s.0 * self.base() + digit as usize])
    }

    pub fn state_ids(&self) -> impl Iterator<Item = StateId> {
        (0..self.states.len()).map(StateId)
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            for &v in &self.delta[u * self.base()..(u + 1) * self.base()] {
                if !seen[v] {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    /// Reads `digits` (least significant first) from `s[1]`.
    pub fn run(&self, digits: &[u32]) -> StateId {
        digits
            .iter()
            .fold(self.initial(), |s, &d| self.step(s, d))
    }

    /// The visited states, starting with `s[1]`.
    pub fn path(&self, digits: &[u32]) -> Vec<StateId> {
        let mut out = vec![self.initial()];
        let mut s = self.initial();
        for &d in digits {
            s = self.step(s, d);
            out.push(s);
        }
        out
    }

    /// `M_n mod p` for a canonical digit string; the empty string is `n = 0`.
    pub fn eval_digits(&self, digits: &Digits) -> u32 {
        if digits.is_empty() {
            return 1 % self.p.get();
        }
        self.output(self.run(digits.as_slice()))
    }

    /// `M_n mod p`.
    pub fn eval(&self, n: u64) -> u32 {
        self.eval_digits(&Digits::of_u64(n, self.p))
    }

    pub fn eval_big(&self, n: &BigUint) -> u32 {
        self.eval_digits(&Digits::of_biguint(n, self.p))
    }
}

/// Breadth-first closure of the seed numerator under the digit transitions.
/// Digits are tried in ascending order so the numbering is deterministic.
pub fn build_dfao(p: Prime) -> Dfao {
    let (num, den) = base_representation(p);
    let multiplier = den.pow(p.get() as u64 - 1);
    let base = p.get() as usize;

    let mut index: HashMap<PolyFp, usize> = HashMap::from([(num.clone(), 0)]);
    let mut states = vec![num];
    let mut delta = Vec::new();
    let mut u = 0;
    while u < states.len() {
        let product = states[u]
            .try_mul(&multiplier)
            .expect("same modulus by construction");
        for next in product.diagonal_sections() {
            let id = *index.entry(next.clone()).or_insert_with(|| {
                states.push(next);
                states.len() - 1
            });
            delta.push(id);
        }
        u += 1;
    }
    debug_assert_eq!(delta.len(), states.len() * base);
    let outputs = states.iter().map(PolyFp::eval_origin).collect();
    Dfao {
        p,
        states,
        delta,
        outputs,
    }
}

/// Moore partition refinement on (output, successor blocks). The quotient is
/// renumbered breadth-first from the initial block and each block keeps the
/// polynomial of its lowest-numbered member.
pub fn minimize(d: &Dfao) -> Dfao {
    let base = d.base();
    let n = d.len();
    let mut block: Vec<usize> = {
        let mut ids = BTreeMap::new();
        d.outputs
            .iter()
            .map(|o| {
                let next = ids.len();
                *ids.entry(*o).or_insert(next)
            })
            .collect()
    };
    let mut count = block.iter().max().map_or(0, |m| m + 1);
    loop {
        let mut ids: HashMap<(usize, Vec<usize>), usize> = HashMap::new();
        let refined: Vec<usize> = (0..n)
            .map(|u| {
                let sig: Vec<usize> = d.delta[u * base..(u + 1) * base]
                    .iter()
                    .map(|&v| block[v])
                    .collect();
                let next = ids.len();
                *ids.entry((block[u], sig)).or_insert(next)
            })
            .collect();
        let refined_count = ids.len();
        block = refined;
        if refined_count == count {
            break;
        }
        count = refined_count;
    }

    // Renumber blocks breadth-first from the initial state's block.
    let mut rep = vec![usize::MAX; count];
    for u in (0..n).rev() {
        rep[block[u]] = u;
    }
    let mut order = vec![usize::MAX; count];
    let mut reps = Vec::with_capacity(count);
    let mut queue = VecDeque::from([block[0]]);
    order[block[0]] = 0;
    reps.push(rep[block[0]]);
    while let Some(b) = queue.pop_front() {
        let u = rep[b];
        for &v in &d.delta[u * base..(u + 1) * base] {
            let bv = block[v];
            if order[bv] == usize::MAX {
                order[bv] = reps.len();
                reps.push(rep[bv]);
                queue.push_back(bv);
            }
        }
    }
    let states: Vec<PolyFp> = reps.iter().map(|&u| d.states[u].clone()).collect();
    let delta: Vec<usize> = reps
        .iter()
        .flat_map(|&u| {
            d.delta[u * base..(u + 1) * base]
                .iter()
                .map(|&v| order[block[v]])
        })
        .collect();
    let outputs = states.iter().map(PolyFp::eval_origin).collect();
    Dfao {
        p: d.p,
        states,
        delta,
        outputs,
    }
}
