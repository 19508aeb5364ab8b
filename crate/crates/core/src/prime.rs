use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A validated prime modulus below `2^31`.
///
/// This is the only place primality is checked; every API that needs a prime
/// takes a `Prime`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct Prime(u32);

/// The primes whose automata are listed in full in the literature this crate
/// reproduces.
pub const LISTED_PRIMES: [u32; 7] = [7, 11, 13, 17, 19, 23, 29];

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 31 {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p as u32))
    }

    /// For moduli that were validated when a value carrying them was built.
    pub(crate) fn new_unchecked(p: u32) -> Self {
        debug_assert!(is_prime(p as u64));
        Prime(p)
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

impl TryFrom<u64> for Prime {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        Prime::new(p)
    }
}

impl From<Prime> for u64 {
    fn from(p: Prime) -> u64 {
        p.0 as u64
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
