//! Acceptors over least-significant-first digit strings.
//!
//! Every acceptor built here is padding invariant: appending zeros (at the
//! most significant end) never changes acceptance, so a machine describes a
//! set of integers and two machines can be compared without aligning lengths.

use std::collections::{HashMap, VecDeque};

use num_bigint::BigUint;
use num_traits::Zero;
use serde::Serialize;

use crate::analysis;
use crate::automaton::{Dfao, Digits};
use crate::seq;
use crate::{Error, Prime, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DigitDfa {
    p: Prime,
    delta: Vec<usize>,
    accepting: Vec<bool>,
}

impl DigitDfa {
    /// State 0 is initial; `delta[u * p + d]` is the successor on digit `d`.
    pub fn new(p: Prime, delta: Vec<usize>, accepting: Vec<bool>) -> Result<Self> {
        let n = accepting.len();
        if n == 0 || delta.len() != n * p.get() as usize || delta.iter().any(|&t| t >= n) {
            return Err(Error::InvalidAutomaton(
                "transition table is not total over the states".into(),
            ));
        }
        Ok(DigitDfa {
            p,
            delta,
            accepting,
        })
    }

    /// Accepts exactly the strings `accept_all` says, from one state.
    pub fn constant(p: Prime, accept_all: bool) -> Self {
        DigitDfa {
            p,
            delta: vec![0; p.get() as usize],
            accepting: vec![accept_all],
        }
    }

    /// Strings containing a nonzero digit, i.e. every `n >= 1`.
    pub fn positive(p: Prime) -> Self {
        let base = p.get() as usize;
        let mut delta = vec![1; 2 * base];
        delta[0] = 0;
        DigitDfa {
            p,
            delta,
            accepting: vec![false, true],
        }
    }

    pub fn base(&self) -> Prime {
        self.p
    }

    pub fn len(&self) -> usize {
        self.accepting.len()
    }

    pub fn is_empty(&self) -> bool {
        self.accepting.is_empty()
    }

    #[inline]
    pub fn step(&self, u: usize, digit: u32) -> usize {
        self.delta[u * self.p.get() as usize + digit as usize]
    }

    pub fn is_accepting(&self, u: usize) -> bool {
        self.accepting[u]
    }

    pub fn accepts(&self, digits: &[u32]) -> bool {
        self.accepting[digits.iter().fold(0, |u, &c| self.step(u, c))]
    }

    pub fn accepts_n(&self, n: u64) -> bool {
        self.accepts(Digits::of_u64(n, self.p).as_slice())
    }

    fn check_base(&self, other: &Self) -> Result<()> {
        if self.p != other.p {
            return Err(Error::BaseMismatch {
                left: self.p.get(),
                right: other.p.get(),
            });
        }
        Ok(())
    }

    /// Reachable part of the product machine with acceptance `combine`.
    pub fn product(&self, other: &Self, combine: impl Fn(bool, bool) -> bool) -> Result<Self> {
        self.check_base(other)?;
        let base = self.p.get();
        let mut index = HashMap::from([((0usize, 0usize), 0usize)]);
        let mut pairs = vec![(0usize, 0usize)];
        let mut delta = Vec::new();
        let mut i = 0;
        while i < pairs.len() {
            let (a, b) = pairs[i];
            for c in 0..base {
                let next = (self.step(a, c), other.step(b, c));
                let id = *index.entry(next).or_insert_with(|| {
                    pairs.push(next);
                    pairs.len() - 1
                });
                delta.push(id);
            }
            i += 1;
        }
        let accepting = pairs
            .iter()
            .map(|&(a, b)| combine(self.accepting[a], other.accepting[b]))
            .collect();
        Ok(DigitDfa {
            p: self.p,
            delta,
            accepting,
        })
    }

    pub fn union(&self, other: &Self) -> Result<Self> {
        self.product(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Self) -> Result<Self> {
        self.product(other, |a, b| a && b)
    }

    pub fn complement(&self) -> Self {
        DigitDfa {
            p: self.p,
            delta: self.delta.clone(),
            accepting: self.accepting.iter().map(|a| !a).collect(),
        }
    }

    /// A shortest accepted string, if any.
    pub fn shortest_accepted(&self) -> Option<Vec<u32>> {
        let base = self.p.get();
        let mut parent: Vec<Option<(usize, u32)>> = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(u) = queue.pop_front() {
            if self.accepting[u] {
                let mut word = Vec::new();
                let mut v = u;
                while let Some((prev, c)) = parent[v] {
                    word.push(c);
                    v = prev;
                }
                word.reverse();
                return Some(word);
            }
            for c in 0..base {
                let v = self.step(u, c);
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = Some((u, c));
                    queue.push_back(v);
                }
            }
        }
        None
    }

    pub fn accepts_nothing(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    /// Number of accepted strings of length exactly `len`, which under
    /// padding invariance is the number of accepted `n < p^len`.
    pub fn count_accepted(&self, len: usize) -> BigUint {
        let mut counts = vec![BigUint::zero(); self.len()];
        counts[0] = BigUint::from(1u32);
        for _ in 0..len {
            let mut next = vec![BigUint::zero(); self.len()];
            for (u, c) in counts.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for digit in 0..self.p.get() {
                    next[self.step(u, digit)] += c;
                }
            }
            counts = next;
        }
        counts
            .iter()
            .zip(&self.accepting)
            .filter(|(_, &a)| a)
            .map(|(c, _)| c)
            .sum()
    }

    /// True when every reachable state agrees with its 0-successor.
    pub fn is_padding_invariant(&self) -> bool {
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            if self.accepting[self.step(u, 0)] != self.accepting[u] {
                return false;
            }
            for c in 0..self.p.get() {
                let v = self.step(u, c);
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        true
    }
}

/// Outcome of a language comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Equivalence {
    Equivalent,
    Counterexample {
        /// Least significant digit first.
        digits: Vec<u32>,
        value: String,
        accepted_by_left: bool,
    },
}

impl Equivalence {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Equivalence::Equivalent)
    }
}

/// Compares two padding-invariant acceptors by searching the product for a
/// reachable pair that disagrees. The counterexample is a shortest one.
pub fn equivalent(a: &DigitDfa, b: &DigitDfa) -> Result<Equivalence> {
    let diff = a.product(b, |x, y| x != y)?;
    Ok(match diff.shortest_accepted() {
        None => Equivalence::Equivalent,
        Some(word) => {
            let value = word
                .iter()
                .rev()
                .fold(BigUint::zero(), |acc, &c| acc * a.p.get() + c);
            Equivalence::Counterexample {
                accepted_by_left: a.accepts(&word),
                digits: word,
                value: value.to_string(),
            }
        }
    })
}

/// The DFAO read as an acceptor of the strings whose output is 0. The empty
/// string stands for `n = 0` here only through the raw machine (value 0, not
/// `M_0`), so characterization checks intersect with [`DigitDfa::positive`].
pub fn zero_set_acceptor(d: &Dfao) -> DigitDfa {
    DigitDfa {
        p: d.prime(),
        delta: d.table().to_vec(),
        accepting: d.outputs().iter().map(|&o| o == 0).collect(),
    }
}

/// Required parity of the number of filler digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
    Any,
}

/// Strings `head, filler^m, c, tail` with `m` of the given parity, `c` in
/// `next` and `tail` arbitrary. Under padding, a string that stops after the
/// filler block is read as continuing with 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternForm {
    pub p: u32,
    pub head: u32,
    pub filler: u32,
    pub parity: Parity,
    pub next: Vec<u32>,
}

impl PatternForm {
    fn validate(&self) -> Result<Prime> {
        let p = Prime::new(self.p as u64)?;
        let bad = |c: &u32| *c >= self.p;
        if bad(&self.head) || bad(&self.filler) || self.next.iter().any(bad) {
            return Err(Error::InvalidPattern(format!("digit out of range in {self:?}")));
        }
        if self.next.is_empty() {
            return Err(Error::InvalidPattern("empty follow-up digit set".into()));
        }
        if self.next.contains(&self.filler) {
            return Err(Error::InvalidPattern(
                "follow-up digit equal to the filler makes the block ambiguous".into(),
            ));
        }
        Ok(p)
    }

    /// Readable digit form, most significant first, e.g. `<[i], 8, 10*even, 9>`.
    pub fn describe(&self) -> String {
        let next: Vec<String> = self.next.iter().map(|c| c.to_string()).collect();
        let parity = match self.parity {
            Parity::Even => "even",
            Parity::Odd => "odd",
            Parity::Any => "any",
        };
        format!(
            "<[i]_{}, {{{}}}, {}^({} count), {}>",
            self.p,
            next.join(","),
            self.filler,
            parity,
            self.head
        )
    }
}

/// Builds the acceptor for a [`PatternForm`].
///
/// States: 0 start, 1 reject, 2 accept (tail), 3 filler count even,
/// 4 filler count odd.
pub fn compile_pattern(form: &PatternForm) -> Result<DigitDfa> {
    let p = form.validate()?;
    const START: usize = 0;
    const REJECT: usize = 1;
    const ACCEPT: usize = 2;
    const EVEN: usize = 3;
    const ODD: usize = 4;
    let base = p.get();
    let mut delta = vec![REJECT; 5 * base as usize];
    let mut set = |u: usize, c: u32, v: usize| delta[u * base as usize + c as usize] = v;
    for c in 0..base {
        set(ACCEPT, c, ACCEPT);
    }
    set(START, form.head, EVEN);
    let parity_ok = |u: usize| match form.parity {
        Parity::Any => true,
        Parity::Even => u == EVEN,
        Parity::Odd => u == ODD,
    };
    for u in [EVEN, ODD] {
        set(u, form.filler, if u == EVEN { ODD } else { EVEN });
        if parity_ok(u) {
            for &c in &form.next {
                set(u, c, ACCEPT);
            }
        }
    }
    let mut accepting = vec![false; 5];
    accepting[ACCEPT] = true;
    for u in [EVEN, ODD] {
        accepting[u] = parity_ok(u) && form.next.contains(&0);
    }
    DigitDfa::new(p, delta, accepting)
}

/// The digit forms describing `{n >= 1 : M_n = 0 mod p}` for `p` in
/// `{11, 13, 23, 29}`.
pub fn characterization_forms(p: u32) -> Result<Vec<PatternForm>> {
    let top = p.checked_sub(1).unwrap_or(0);
    let form = |head, parity, next: &[u32]| PatternForm {
        p,
        head,
        filler: top,
        parity,
        next: next.to_vec(),
    };
    // The last two forms start with a run of p-1 digits; its first digit is
    // the head, so the filler parity is the run length minus one.
    Ok(match p {
        11 | 23 => vec![
            form(p - 2, Parity::Even, &[p - 3]),
            form(p - 2, Parity::Odd, &[0]),
            form(top, Parity::Even, &[1]),
            form(top, Parity::Odd, &[p - 2]),
        ],
        13 => vec![form(11, Parity::Any, &[0]), form(12, Parity::Any, &[11])],
        29 => vec![
            form(27, Parity::Even, &[13, 18, 26]),
            form(27, Parity::Odd, &[0]),
            form(28, Parity::Even, &[1, 9, 14]),
            form(28, Parity::Odd, &[27]),
        ],
        _ => {
            return Err(Error::Unsupported(format!(
                "no digit characterization is known for p = {p}"
            )))
        }
    })
}

/// Union of the compiled characterization forms.
pub fn characterization_acceptor(p: u32) -> Result<DigitDfa> {
    let forms = characterization_forms(p)?;
    let prime = Prime::new(p as u64)?;
    forms
        .iter()
        .try_fold(DigitDfa::constant(prime, false), |acc, f| {
            acc.union(&compile_pattern(f)?)
        })
}

#[derive(Clone, Debug, Serialize)]
pub struct CharacterizationReport {
    pub p: u32,
    pub forms: Vec<String>,
    pub equivalence: Equivalence,
    pub upto: u64,
    /// `n` in `1..=upto` with `M_n = 0 mod p` according to the exact values.
    pub oracle_count: usize,
    /// `n` in `1..=upto` accepted by the union of the forms.
    pub pattern_count: usize,
    /// First `n` where the oracle and the forms disagree.
    pub first_mismatch: Option<u64>,
}

impl CharacterizationReport {
    pub fn passed(&self) -> bool {
        self.equivalence.is_equivalent()
            && self.first_mismatch.is_none()
            && self.oracle_count == self.pattern_count
    }
}

/// Checks the digit characterization for `p` in `{11, 13, 23, 29}` by language
/// equivalence against the zero set of `d`, and by scanning `1..=upto`
/// against `oracle` (residues of `M_0 .. M_upto`, computed independently when
/// `None`).
pub fn verify_characterization(
    d: &Dfao,
    upto: u64,
    oracle: Option<&[u32]>,
) -> Result<CharacterizationReport> {
    let p = d.prime();
    let forms = characterization_forms(p.get())?;
    let patterns = characterization_acceptor(p.get())?;
    let zeros = zero_set_acceptor(d).intersection(&DigitDfa::positive(p))?;
    let equivalence = equivalent(&zeros, &patterns)?;

    let computed;
    let residues = match oracle {
        Some(r) => r,
        None => {
            computed = seq::motzkin_residue_tables(&[p], upto as usize + 1)
                .remove(&p)
                .expect("table for p");
            &computed[..]
        }
    };
    assert!(residues.len() as u64 > upto, "oracle table too short");
    let mut oracle_count = 0;
    let mut pattern_count = 0;
    let mut first_mismatch = None;
    for n in 1..=upto {
        let by_oracle = residues[n as usize] == 0;
        let by_pattern = patterns.accepts_n(n);
        oracle_count += by_oracle as usize;
        pattern_count += by_pattern as usize;
        if by_oracle != by_pattern && first_mismatch.is_none() {
            first_mismatch = Some(n);
        }
    }
    Ok(CharacterizationReport {
        p: p.get(),
        forms: forms.iter().map(PatternForm::describe).collect(),
        equivalence,
        upto,
        oracle_count,
        pattern_count,
        first_mismatch,
    })
}

/// Acceptor for the strings with at least two digits from the certificate's
/// absorbing set; used to check that such `n` all land on zero.
pub fn two_absorbing_digits(p: Prime, cert: &analysis::PartitionCertificate) -> DigitDfa {
    let base = p.get() as usize;
    let mut delta = vec![0; 3 * base];
    for u in 0..3 {
        for c in 0..base {
            let hit = cert.digits.contains(&(c as u32));
            delta[u * base + c] = if hit { (u + 1).min(2) } else { u };
        }
    }
    DigitDfa {
        p,
        delta,
        accepting: vec![false, false, true],
    }
}
