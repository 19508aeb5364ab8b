//! Structural analysis of a [`Dfao`]: loop states, zero-valued states,
//! absorbing-digit partitions, congruence families along `p^k - 1` and
//! `p^k - 2`, and the two-cycle motif that bounds the zero density from below.

use std::collections::{BTreeSet, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use crate::automaton::{Dfao, StateId};

/// States fixed by every digit.
pub fn loop_states(d: &Dfao) -> BTreeSet<StateId> {
    d.state_ids()
        .filter(|&s| (0..d.base() as u32).all(|digit| d.step(s, digit) == s))
        .collect()
}

pub fn zero_value_states(d: &Dfao) -> BTreeSet<StateId> {
    d.state_ids().filter(|&s| d.output(s) == 0).collect()
}

/// The unique loop state with output 0, if there is exactly one.
pub fn zero_loop_state(d: &Dfao) -> Option<StateId> {
    let mut zs = loop_states(d).into_iter().filter(|&s| d.output(s) == 0);
    match (zs.next(), zs.next()) {
        (Some(z), None) => Some(z),
        _ => None,
    }
}

/// Witness that two digits from `digits` anywhere in `n` force `M_n = 0`.
///
/// Outside `inside` (the set written `A`), any digit of `digits` jumps to the
/// zero loop state `sink`; inside, it leaves `A` for a state other than the
/// sink, and nothing outside `A` leads back into it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionCertificate {
    pub inside: BTreeSet<StateId>,
    pub digits: BTreeSet<u32>,
    pub sink: StateId,
}

impl PartitionCertificate {
    /// Re-checks every defining condition against `d`.
    pub fn holds(&self, d: &Dfao) -> bool {
        let z = self.sink;
        if d.output(z) != 0 || !(0..d.base() as u32).all(|c| d.step(z, c) == z) {
            return false;
        }
        if !self.inside.contains(&d.initial()) || self.inside.contains(&z) || self.digits.is_empty() {
            return false;
        }
        d.state_ids().all(|u| {
            if self.inside.contains(&u) {
                self.digits.iter().all(|&c| {
                    let v = d.step(u, c);
                    !self.inside.contains(&v) && v != z
                })
            } else {
                let absorbed = self.digits.iter().all(|&c| d.step(u, c) == z);
                let closed = (0..d.base() as u32).all(|c| !self.inside.contains(&d.step(u, c)));
                absorbed && closed
            }
        })
    }

    /// True when `digits` contains at least two entries from the absorbing set.
    pub fn forces_zero(&self, digits: &[u32]) -> bool {
        digits.iter().filter(|c| self.digits.contains(c)).count() >= 2
    }
}

/// Searches for the certificate with the largest absorbing digit set.
///
/// For each digit `c`, `absorbed(c)` is the set of states sent to the sink by
/// `c`. The outside set must lie in `absorbed(c)` for every chosen digit, so
/// the candidates for it are the intersections of those sets. For each
/// candidate every compatible digit is added, then the certificate is checked.
/// Ties in digit count go to the larger outside set.
pub fn find_absorbing_partition(d: &Dfao) -> Option<PartitionCertificate> {
    let z = zero_loop_state(d)?;
    let n = d.len();
    let base = d.base() as u32;

    let absorbed: Vec<Vec<bool>> = (0..base)
        .map(|c| d.state_ids().map(|u| d.step(u, c) == z).collect())
        .collect();

    let mut candidates: HashSet<Vec<bool>> = HashSet::new();
    let mut frontier: Vec<Vec<bool>> = absorbed
        .iter()
        .filter(|set| !set[d.initial().0])
        .cloned()
        .collect();
    while let Some(set) = frontier.pop() {
        if !candidates.insert(set.clone()) {
            continue;
        }
        for other in &absorbed {
            let meet: Vec<bool> = set.iter().zip(other).map(|(a, b)| *a && *b).collect();
            if !candidates.contains(&meet) {
                frontier.push(meet);
            }
        }
    }

    let mut best: Option<PartitionCertificate> = None;
    let mut ordered: Vec<_> = candidates.into_iter().collect();
    ordered.sort();
    for outside in ordered {
        if !outside[z.0] {
            continue;
        }
        let inside: BTreeSet<StateId> = (0..n).filter(|&u| !outside[u]).map(StateId).collect();
        let digits: BTreeSet<u32> = (0..base)
            .filter(|&c| {
                (0..n).all(|u| !outside[u] || absorbed[c as usize][u])
                    && inside.iter().all(|&u| {
                        let v = d.step(u, c);
                        outside[v.0] && v != z
                    })
            })
            .collect();
        if digits.is_empty() {
            continue;
        }
        let cert = PartitionCertificate {
            inside,
            digits,
            sink: z,
        };
        if !cert.holds(d) {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => {
                (cert.digits.len(), std::cmp::Reverse(cert.inside.len()))
                    > (b.digits.len(), std::cmp::Reverse(b.inside.len()))
            }
        };
        if better {
            best = Some(cert);
        }
    }
    best
}

/// `eval(p^k - offset)` for `k = 1..=kmax`, stepping through the digits
/// `[p - 1 - (offset - 1), p - 1, ..., p - 1]` without building `n`.
pub fn check_power_family(d: &Dfao, offset: u32, kmax: u32) -> Vec<u32> {
    assert!(offset == 1 || offset == 2, "offset must be 1 or 2");
    let top = d.base() as u32 - 1;
    let head = top + 1 - offset;
    let mut s = d.step(d.initial(), head);
    let mut out = Vec::with_capacity(kmax as usize);
    for k in 1..=kmax {
        if k > 1 {
            s = d.step(s, top);
        }
        out.push(d.output(s));
    }
    if head == 0 && kmax >= 1 {
        // p = 2, offset = 2: k = 1 is n = 0
        out[0] = 1 % d.base() as u32;
    }
    out
}

/// Which exponents a relation applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExponentParity {
    All,
    Even,
    Odd,
}

impl ExponentParity {
    pub fn admits(self, k: u32) -> bool {
        match self {
            ExponentParity::All => true,
            ExponentParity::Even => k % 2 == 0,
            ExponentParity::Odd => k % 2 == 1,
        }
    }
}

/// `M_{p^k - offset} = residue (mod p)` for every `k >= 1` of the given parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PowerRelation {
    pub offset: u32,
    pub parity: ExponentParity,
    pub residue: u32,
}

impl PowerRelation {
    pub fn describe(&self, p: u32) -> String {
        let exp = match self.parity {
            ExponentParity::All => "k".to_string(),
            ExponentParity::Even => "(2k)".to_string(),
            ExponentParity::Odd => "(2k-1)".to_string(),
        };
        format!(
            "M_n = {} mod {p} when n = {p}^{exp} - {}",
            self.residue, self.offset
        )
    }
}

/// The published relations along `p^k - 1` and `p^k - 2`.
pub fn table_relations(p: u32) -> Vec<PowerRelation> {
    use ExponentParity::*;
    let rel = |offset, parity, residue| PowerRelation {
        offset,
        parity,
        residue,
    };
    match p {
        7 => vec![rel(2, All, 0), rel(1, All, 2)],
        17 => vec![
            rel(2, Even, 0),
            rel(2, Odd, 16),
            rel(1, Even, 2),
            rel(1, Odd, 16),
        ],
        19 => vec![rel(2, All, 0), rel(1, All, 2)],
        _ => Vec::new(),
    }
}

/// Looks for two node-disjoint `(p-1)`-cycles of length 1 or 2 entered in one
/// step from the initial state, where every cycle node has at least one digit
/// leading straight to the zero loop state. Each cycle contributes numbers of
/// density `1/(p(p-1))`, so a match bounds the zero density below by
/// `2/(p(p-1))`.
pub fn motif_lower_bound(d: &Dfao) -> Option<BigRational> {
    find_motif(d).map(|_| {
        let p = d.base() as i64;
        BigRational::new(BigInt::from(2), BigInt::from(p * (p - 1)))
    })
}

/// A match of the two-cycle motif.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Motif {
    /// `(entry digit, cycle states)` for each branch.
    pub branches: [(u32, Vec<StateId>); 2],
    pub sink: StateId,
}

pub fn find_motif(d: &Dfao) -> Option<Motif> {
    let z = zero_loop_state(d)?;
    let init = d.initial();
    let top = d.base() as u32 - 1;
    let exits = |s: StateId| (0..=top).any(|c| c != top && d.step(s, c) == z);

    let mut branches: Vec<(u32, Vec<StateId>)> = Vec::new();
    for w in 0..=top {
        let b0 = d.step(init, w);
        let b1 = d.step(b0, top);
        let cycle = if b1 == b0 {
            vec![b0]
        } else if d.step(b1, top) == b0 {
            vec![b0, b1]
        } else {
            continue;
        };
        if cycle.iter().all(|&s| s != z && s != init && exits(s)) {
            branches.push((w, cycle));
        }
    }
    for (i, a) in branches.iter().enumerate() {
        for b in &branches[i + 1..] {
            if a.1.iter().all(|s| !b.1.contains(s)) {
                return Some(Motif {
                    branches: [a.clone(), b.clone()],
                    sink: z,
                });
            }
        }
    }
    None
}

/// Residues `M_n mod p` over all `n`: outputs of the states reached by a
/// string whose most significant digit is nonzero, plus `M_0`.
pub fn achieved_residues(d: &Dfao) -> BTreeSet<u32> {
    let mut out = BTreeSet::from([1 % d.base() as u32]);
    for u in d.state_ids() {
        for c in 1..d.base() as u32 {
            out.insert(d.output(d.step(u, c)));
        }
    }
    out
}
