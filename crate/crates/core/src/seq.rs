//! Exact Motzkin and Catalan numbers.
//!
//! `motzkin_exact` runs the three-term integer recurrence and is the
//! production path. `motzkin_via_sum` (binomial-Catalan sum) and
//! `motzkin_mod_table` (lattice-path height DP) are independent routes used to
//! cross-check it.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::Prime;

fn exact_div(num: BigUint, den: u64) -> BigUint {
    let (q, r) = num.div_rem(&BigUint::from(den));
    assert!(r.is_zero(), "inexact division by {den}");
    q
}

/// `C_k = binomial(2k, k) / (k + 1)`.
pub fn catalan_exact(k: u64) -> BigUint {
    let mut c = BigUint::one();
    for i in 0..k {
        c = exact_div(c * (2 * (2 * i + 1)), i + 2);
    }
    c
}

/// Iterator over `M_0, M_1, M_2, ...` using
/// `(n + 2) M_n = (2n + 1) M_{n-1} + 3 (n - 1) M_{n-2}`.
#[derive(Clone, Debug)]
pub struct MotzkinIter {
    n: u64,
    prev: BigUint,
    cur: BigUint,
}

impl MotzkinIter {
    pub fn new() -> Self {
        MotzkinIter {
            n: 0,
            prev: BigUint::one(),
            cur: BigUint::one(),
        }
    }
}

impl Default for MotzkinIter {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for MotzkinIter {
    type Item = BigUint;

    fn next(&mut self) -> Option<BigUint> {
        let out = self.cur.clone();
        let n = self.n;
        if n == 0 {
            // M_0 = M_1 = 1: the next value needs no recurrence step.
            self.n = 1;
            return Some(out);
        }
        let m = n + 1;
        let next = exact_div(
            &self.cur * (2 * m + 1) + &self.prev * (3 * (m - 1)),
            m + 2,
        );
        self.prev = std::mem::replace(&mut self.cur, next);
        self.n = m;
        Some(out)
    }
}

/// `M_n` by the integer recurrence.
pub fn motzkin_exact(n: u64) -> BigUint {
    MotzkinIter::new().nth(n as usize).expect("infinite iterator")
}

/// `M_n = sum_k binomial(n, 2k) C_k`, term by term.
pub fn motzkin_via_sum(n: u64) -> BigUint {
    let mut total = BigUint::zero();
    let mut binom = BigUint::one(); // binomial(n, 2k)
    let mut catalan = BigUint::one(); // C_k
    let mut k = 0u64;
    while 2 * k <= n {
        total += &binom * &catalan;
        if 2 * k + 2 > n {
            break;
        }
        let a = n - 2 * k;
        binom = exact_div(exact_div(binom * a * (a - 1), 2 * k + 1), 2 * k + 2);
        catalan = exact_div(catalan * (2 * (2 * k + 1)), k + 2);
        k += 1;
    }
    total
}

/// `M_n mod p` from the exact value.
pub fn motzkin_mod(n: u64, p: Prime) -> u32 {
    reduce(&motzkin_exact(n), p)
}

fn reduce(v: &BigUint, p: Prime) -> u32 {
    (v % p.get()).to_u32().expect("residue fits")
}

/// `[M_0 mod p, ..., M_{len-1} mod p]` by counting Motzkin paths modulo `p`.
///
/// The DP tracks the number of paths ending at each height; heights that can
/// no longer return to the axis before step `len - 1` are dropped.
pub fn motzkin_mod_table(p: Prime, len: usize) -> Vec<u32> {
    let m = p.get() as u64;
    let mut out = Vec::with_capacity(len);
    let mut row: Vec<u64> = vec![1];
    for step in 0..len {
        out.push(row[0] as u32);
        if step + 1 == len {
            break;
        }
        let remaining = len - 1 - (step + 1);
        let width = (row.len() + 1).min(remaining + 1);
        let mut next = vec![0u64; width];
        for (h, slot) in next.iter_mut().enumerate() {
            let mut v = 0;
            if h < row.len() {
                v += row[h];
            }
            if h >= 1 && h - 1 < row.len() {
                v += row[h - 1];
            }
            if h + 1 < row.len() {
                v += row[h + 1];
            }
            *slot = v % m;
        }
        row = next;
    }
    out
}

/// Residues of `M_0 .. M_{len-1}` for several primes from one pass of the
/// exact recurrence.
pub fn motzkin_residue_tables(primes: &[Prime], len: usize) -> BTreeMap<Prime, Vec<u32>> {
    let mut tables: BTreeMap<Prime, Vec<u32>> = primes
        .iter()
        .map(|&p| (p, Vec::with_capacity(len)))
        .collect();
    for value in MotzkinIter::new().take(len) {
        for (p, table) in tables.iter_mut() {
            table.push(reduce(&value, *p));
        }
    }
    tables
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime(p: u64) -> Prime {
        Prime::new(p).unwrap()
    }

    /// Number of balanced strings with `k` pairs, by brute-force enumeration.
    fn dyck_paths(k: u32) -> u64 {
        (0u32..1 << (2 * k))
            .filter(|bits| {
                let mut h = 0i32;
                for i in 0..2 * k {
                    h += if bits >> i & 1 == 1 { 1 } else { -1 };
                    if h < 0 {
                        return false;
                    }
                }
                h == 0
            })
            .count() as u64
    }

    #[test]
    fn catalan_small() {
        assert_eq!(catalan_exact(0), BigUint::from(1u32));
        assert_eq!(catalan_exact(1), BigUint::from(1u32));
        for k in 0..8 {
            assert_eq!(catalan_exact(k as u64), BigUint::from(dyck_paths(k)), "k={k}");
        }
        assert_eq!(catalan_exact(3), BigUint::from(5u32));
    }

    #[test]
    fn motzkin_small_values() {
        assert_eq!(motzkin_exact(0), BigUint::from(1u32));
        assert_eq!(motzkin_exact(2), BigUint::from(2u32));
        assert_eq!(motzkin_exact(11), BigUint::from(5798u32));
        assert_eq!(motzkin_via_sum(0), BigUint::from(1u32));
        assert_eq!(motzkin_via_sum(4), BigUint::from(9u32));
        assert_eq!(motzkin_via_sum(5), BigUint::from(21u32));
        assert_eq!(motzkin_via_sum(11), BigUint::from(5798u32));
    }

    #[test]
    fn recurrence_matches_sum_up_to_500() {
        for (n, m) in MotzkinIter::new().take(501).enumerate() {
            assert_eq!(m, motzkin_via_sum(n as u64), "n={n}");
        }
    }

    #[test]
    fn strictly_increasing_from_one() {
        let values: Vec<_> = MotzkinIter::new().take(300).collect();
        for n in 1..values.len() - 1 {
            assert!(values[n + 1] > values[n]);
        }
    }

    #[test]
    fn residues_from_listed_congruences() {
        assert_eq!(motzkin_mod(5, prime(7)), 0);
        assert_eq!(motzkin_mod(48, prime(7)), 2);
        assert_eq!(motzkin_mod(11, prime(13)), 0);
    }

    #[test]
    fn path_table_examples() {
        assert_eq!(motzkin_mod_table(prime(7), 7), vec![1, 1, 2, 4, 2, 0, 2]);
        assert_eq!(motzkin_mod_table(prime(11), 3), vec![1, 1, 2]);
        assert_eq!(*motzkin_mod_table(prime(13), 12).last().unwrap(), 0);
        assert_eq!(motzkin_mod_table(prime(3), 1), vec![1]);
    }

    #[test]
    fn path_table_agrees_with_recurrence() {
        let primes: Vec<Prime> = [3, 5, 7, 11, 13, 17, 19, 23, 29].map(prime).to_vec();
        let len = 2001;
        let tables = motzkin_residue_tables(&primes, len);
        for p in primes {
            assert_eq!(motzkin_mod_table(p, len), tables[&p], "p={p}");
        }
    }
}
