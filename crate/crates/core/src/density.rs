//! Exact residue counts and natural densities.
//!
//! Counting runs a forward DP over all `p^K` digit strings of length `K`.
//! Because reading a most-significant 0 never changes the output, those
//! strings stand for exactly the integers `0 <= n < p^K`; the only correction
//! needed is for `n = 0`, whose string reaches a zero-valued state although
//! `M_0 = 1`.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::Serialize;

use crate::automaton::Dfao;
use crate::langops::{compile_pattern, characterization_forms};
use crate::{Error, Result};

/// Which of the two geometric digit-pattern families a set belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `{(q i + r) q^(s j + t) : i, j >= 0}`
    S,
    /// Same with `j >= 1`.
    SPrime,
}

/// `{(q i + r) q^(s j + t) - shift}` with `i >= 0` and `j >= 0` (`S`) or
/// `j >= 1` (`S'`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PatternSet {
    pub q: u64,
    pub r: u64,
    pub s: u32,
    pub t: u32,
    pub variant: Variant,
    pub shift: u64,
}

impl PatternSet {
    pub fn new(q: u64, r: u64, s: u32, t: u32, variant: Variant, shift: u64) -> Result<Self> {
        let set = PatternSet {
            q,
            r,
            s,
            t,
            variant,
            shift,
        };
        set.validate()?;
        Ok(set)
    }

    fn validate(&self) -> Result<()> {
        if self.q < 2 {
            return Err(Error::InvalidPattern(format!("base q = {} must be at least 2", self.q)));
        }
        if self.r == 0 || self.r >= self.q {
            return Err(Error::InvalidPattern(format!(
                "residue r = {} must satisfy 0 < r < q",
                self.r
            )));
        }
        if self.s == 0 {
            return Err(Error::InvalidPattern("period s must be positive".into()));
        }
        if self.shift > 2 {
            return Err(Error::InvalidPattern("shift must be 0, 1 or 2".into()));
        }
        Ok(())
    }

    fn min_j(&self) -> u32 {
        match self.variant {
            Variant::S => 0,
            Variant::SPrime => 1,
        }
    }

    /// Membership by arithmetic on `n + shift`: since `r != 0`, the exponent
    /// is exactly the `q`-adic valuation.
    pub fn contains(&self, n: u64) -> bool {
        let Some(mut m) = n.checked_add(self.shift) else {
            return false;
        };
        if m == 0 {
            return false;
        }
        let mut e = 0u32;
        while m % self.q == 0 {
            m /= self.q;
            e += 1;
        }
        if m % self.q != self.r || e < self.t {
            return false;
        }
        let rest = e - self.t;
        rest % self.s == 0 && rest / self.s >= self.min_j()
    }

    pub fn describe(&self) -> String {
        let exp = match (self.variant, self.s, self.t) {
            (Variant::S, s, t) => format!("{s}j+{t}"),
            (Variant::SPrime, s, t) => format!("{s}j+{t}, j>=1"),
        };
        let shift = if self.shift > 0 {
            format!(" - {}", self.shift)
        } else {
            String::new()
        };
        format!("({}i + {}) {}^({exp}){shift}", self.q, self.r, self.q)
    }
}

fn big(v: u64) -> BigInt {
    BigInt::from(v)
}

fn pow(q: u64, e: u32) -> BigInt {
    Pow::pow(big(q), e)
}

/// Natural density of a [`PatternSet`]: `1 / (q^(t+1-s) (q^s - 1))` for `S`
/// and `1 / (q^(t+1) (q^s - 1))` for `S'`. The shift does not matter.
pub fn pattern_density(ps: &PatternSet) -> Result<BigRational> {
    ps.validate()?;
    let geometric = pow(ps.q, ps.s) - 1;
    let exp = match ps.variant {
        Variant::S => ps.t as i64 + 1 - ps.s as i64,
        Variant::SPrime => ps.t as i64 + 1,
    };
    let scale = if exp >= 0 {
        BigRational::from_integer(pow(ps.q, exp as u32))
    } else {
        BigRational::new(BigInt::one(), pow(ps.q, (-exp) as u32))
    };
    Ok((scale * BigRational::from_integer(geometric)).recip())
}

/// The arithmetic forms of the zero-set characterizations, grouped the same
/// way as [`characterization_forms`] (one group per digit form).
pub fn characterization_sets(p: u32) -> Result<Vec<Vec<PatternSet>>> {
    use Variant::{SPrime, S};
    let q = p as u64;
    let set = |r, s, t, v, shift| PatternSet::new(q, r, s, t, v, shift);
    Ok(match p {
        11 | 23 => vec![
            vec![set(q - 2, 2, 1, S, 2)?],
            vec![set(1, 2, 0, SPrime, 2)?],
            vec![set(2, 2, 1, S, 1)?],
            vec![set(q - 1, 2, 0, SPrime, 1)?],
        ],
        13 => vec![
            vec![set(1, 1, 0, SPrime, 2)?],
            vec![set(12, 1, 0, SPrime, 1)?],
        ],
        29 => vec![
            [13, 18, 26]
                .iter()
                .map(|a| set(a + 1, 2, 1, S, 2))
                .collect::<Result<_>>()?,
            vec![set(1, 2, 0, SPrime, 2)?],
            [1, 9, 14]
                .iter()
                .map(|b| set(b + 1, 2, 1, S, 1))
                .collect::<Result<_>>()?,
            vec![set(28, 2, 0, SPrime, 1)?],
        ],
        _ => {
            return Err(Error::Unsupported(format!(
                "no closed-form density is known for p = {p}"
            )))
        }
    })
}

/// Sum of the densities of the characterization forms for `p` in
/// `{11, 13, 23, 29}`, after checking with the digit acceptors that the forms
/// are pairwise disjoint.
pub fn characterization_density(p: u32) -> Result<BigRational> {
    let acceptors = characterization_forms(p)?
        .iter()
        .map(compile_pattern)
        .collect::<Result<Vec<_>>>()?;
    for i in 0..acceptors.len() {
        for j in i + 1..acceptors.len() {
            if let Some(w) = acceptors[i].intersection(&acceptors[j])?.shortest_accepted() {
                return Err(Error::NotDisjoint(format!(
                    "forms {} and {} share the digit string {w:?}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    let mut total = BigRational::zero();
    for group in characterization_sets(p)? {
        for ps in &group {
            total += pattern_density(ps)?;
        }
    }
    Ok(total)
}

/// Exact counts of `{0 <= n < p^K : M_n = r (mod p)}` for every residue `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CountVector {
    pub p: u32,
    pub depth: usize,
    #[serde(serialize_with = "serialize_counts")]
    pub counts: Vec<BigUint>,
}

fn serialize_counts<S: serde::Serializer>(v: &[BigUint], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl CountVector {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn fraction(&self, residue: u32) -> BigRational {
        BigRational::new(
            BigInt::from(self.counts[residue as usize].clone()),
            BigInt::from(self.total()),
        )
    }
}

/// Number of length-`depth` strings ending in each state.
pub fn state_distribution(d: &Dfao, depth: usize) -> Vec<BigUint> {
    let mut counts = vec![BigUint::zero(); d.len()];
    counts[0] = BigUint::one();
    for _ in 0..depth {
        counts = advance(d, &counts);
    }
    counts
}

fn advance(d: &Dfao, counts: &[BigUint]) -> Vec<BigUint> {
    let base = d.base();
    let table = d.table();
    let mut next = vec![BigUint::zero(); counts.len()];
    for (u, c) in counts.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for &v in &table[u * base..(u + 1) * base] {
            next[v] += c;
        }
    }
    next
}

fn to_residues(d: &Dfao, depth: usize, by_state: &[BigUint]) -> CountVector {
    let p = d.prime().get();
    let mut counts = vec![BigUint::zero(); p as usize];
    for (u, c) in by_state.iter().enumerate() {
        counts[d.outputs()[u] as usize] += c;
    }
    // n = 0: its all-zero string reached some state; it belongs to M_0 = 1.
    let zero_string = d.run(&vec![0; depth]);
    counts[d.output(zero_string) as usize] -= 1u32;
    counts[(1 % p) as usize] += 1u32;
    CountVector { p, depth, counts }
}

pub fn count_residues(d: &Dfao, depth: usize) -> CountVector {
    assert!(depth >= 1, "depth must be positive");
    to_residues(d, depth, &state_distribution(d, depth))
}

/// [`count_residues`] for every depth in `1..=max_depth`, in one DP pass.
pub fn count_residues_by_depth(d: &Dfao, max_depth: usize) -> Vec<CountVector> {
    let mut counts = state_distribution(d, 0);
    (1..=max_depth)
        .map(|k| {
            counts = advance(d, &counts);
            to_residues(d, k, &counts)
        })
        .collect()
}

/// `#{n < p^K : M_n = r} / p^K`.
pub fn density_estimate(d: &Dfao, residue: u32, depth: usize) -> BigRational {
    count_residues(d, depth).fraction(residue)
}

/// Lossy conversion for display and tolerance checks.
pub fn to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Empirical evidence that the zero set has density 1.
#[derive(Clone, Debug, Serialize)]
pub struct DensityOneReport {
    pub p: u32,
    pub min_depth: usize,
    pub max_depth: usize,
    /// `c(K + 1) / c(K)` for `K` in `min_depth..max_depth`, where `c(K)`
    /// counts `n < p^K` with `M_n` nonzero mod `p`.
    pub ratios: Vec<f64>,
    pub max_ratio: f64,
    pub ratio_bound: f64,
    /// Residue-0 fraction at `max_depth`.
    pub zero_fraction: f64,
    pub certified: bool,
}

/// Observes the growth of the nonzero-residue count. Certified when every
/// observed ratio stays at most `p - 1/2` and at least 99% of `n < p^Kmax`
/// have `M_n = 0`. This is numerical evidence, not a proof.
pub fn density_one_certificate(d: &Dfao, min_depth: usize, max_depth: usize) -> DensityOneReport {
    assert!(1 <= min_depth && min_depth < max_depth, "need 1 <= Kmin < Kmax");
    let p = d.prime().get();
    let by_depth = count_residues_by_depth(d, max_depth);
    let nonzero = |k: usize| -> BigUint {
        let cv = &by_depth[k - 1];
        cv.total() - &cv.counts[0]
    };
    let ratios: Vec<f64> = (min_depth..max_depth)
        .map(|k| {
            let (a, b) = (nonzero(k + 1), nonzero(k));
            to_f64(&BigRational::new(BigInt::from(a), BigInt::from(b)))
        })
        .collect();
    let max_ratio = ratios.iter().copied().fold(f64::MIN, f64::max);
    let ratio_bound = p as f64 - 0.5;
    let zero_fraction = to_f64(&by_depth[max_depth - 1].fraction(0));
    DensityOneReport {
        p,
        min_depth,
        max_depth,
        certified: max_ratio <= ratio_bound && zero_fraction > 0.99,
        ratios,
        max_ratio,
        ratio_bound,
        zero_fraction,
    }
}
