//! Sparse bivariate polynomials over `Z/pZ`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::{Error, Prime, Result};

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Exponent = (u32, u32);

/// A polynomial in `x` and `y` with coefficients in the prime field.
///
/// Terms are kept in a `BTreeMap` keyed by `(i, j)` and never store a zero
/// coefficient, so structural equality, ordering and hashing coincide with
/// polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PolyFp {
    modulus: u32,
    terms: BTreeMap<Exponent, u32>,
}

impl PolyFp {
    pub fn zero(p: Prime) -> Self {
        PolyFp {
            modulus: p.get(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(p: Prime, c: i64) -> Self {
        Self::from_terms(p, [((0, 0), c)])
    }

    pub fn one(p: Prime) -> Self {
        Self::constant(p, 1)
    }

    pub fn x(p: Prime) -> Self {
        Self::from_terms(p, [((1, 0), 1)])
    }

    pub fn y(p: Prime) -> Self {
        Self::from_terms(p, [((0, 1), 1)])
    }

    /// Builds a polynomial from `((i, j), c)` pairs; coefficients may be
    /// negative or unreduced and repeated exponents are summed.
    pub fn from_terms<I>(p: Prime, terms: I) -> Self
    where
        I: IntoIterator<Item = (Exponent, i64)>,
    {
        let m = p.get() as i64;
        let mut out = Self::zero(p);
        for (e, c) in terms {
            out.add_term(e, c.rem_euclid(m) as u32);
        }
        out
    }

    fn add_term(&mut self, e: Exponent, c: u32) {
        if c == 0 {
            return;
        }
        let m = self.modulus as u64;
        let entry = self.terms.entry(e).or_insert(0);
        *entry = ((*entry as u64 + c as u64) % m) as u32;
        if *entry == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn prime(&self) -> Prime {
        Prime::new_unchecked(self.modulus)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending `(i, j)` order, coefficients in `[1, p)`.
    pub fn terms(&self) -> impl Iterator<Item = (Exponent, u32)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> u32 {
        self.terms.get(&(i, j)).copied().unwrap_or(0)
    }

    /// Degree in `x`; `None` for the zero polynomial.
    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.0).max()
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.1).max()
    }

    /// Value at `x = y = 0`.
    pub fn eval_origin(&self) -> u32 {
        self.coeff(0, 0)
    }

    fn check_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus != other.modulus {
            return Err(Error::ModulusMismatch {
                left: self.modulus,
                right: other.modulus,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        let m = self.modulus;
        PolyFp {
            modulus: m,
            terms: self.terms.iter().map(|(&e, &c)| (e, m - c)).collect(),
        }
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.neg())
    }

    pub fn scale(&self, c: u32) -> Self {
        let m = self.modulus as u64;
        let c = c as u64 % m;
        let mut out = PolyFp {
            modulus: self.modulus,
            terms: BTreeMap::new(),
        };
        if c != 0 {
            out.terms = self
                .terms
                .iter()
                .map(|(&e, &v)| (e, (v as u64 * c % m) as u32))
                .collect();
        }
        out
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn mul_unchecked(&self, other: &Self) -> Self {
        let m = self.modulus as u64;
        let mut out = PolyFp {
            modulus: self.modulus,
            terms: BTreeMap::new(),
        };
        let (Some(ax), Some(ay), Some(bx), Some(by)) =
            (self.deg_x(), self.deg_y(), other.deg_x(), other.deg_y())
        else {
            return out;
        };
        let width = (ay + by + 1) as usize;
        let height = (ax + bx + 1) as usize;
        if let Some(cells) = width.checked_mul(height).filter(|&n| n <= 1 << 22) {
            let mut acc = vec![0u64; cells];
            for (&(i1, j1), &c1) in &self.terms {
                for (&(i2, j2), &c2) in &other.terms {
                    let k = (i1 + i2) as usize * width + (j1 + j2) as usize;
                    acc[k] = (acc[k] + c1 as u64 * c2 as u64) % m;
                }
            }
            for (k, v) in acc.into_iter().enumerate() {
                if v != 0 {
                    out.terms
                        .insert(((k / width) as u32, (k % width) as u32), v as u32);
                }
            }
        } else {
            for (&(i1, j1), &c1) in &self.terms {
                for (&(i2, j2), &c2) in &other.terms {
                    out.add_term((i1 + i2, j1 + j2), (c1 as u64 * c2 as u64 % m) as u32);
                }
            }
        }
        out
    }

    /// `self^e` by repeated squaring; `self^0 = 1`.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = PolyFp {
            modulus: self.modulus,
            terms: BTreeMap::from([((0, 0), 1)]),
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Section operator: keeps the monomials `x^i y^j` with `i = r` and
    /// `j = s (mod p)` and maps them to `x^((i-r)/p) y^((j-s)/p)`.
    pub fn cartier(&self, r: u32, s: u32) -> Self {
        let p = self.modulus;
        PolyFp {
            modulus: p,
            terms: self
                .terms
                .iter()
                .filter(|(&(i, j), _)| i % p == r && j % p == s)
                .map(|(&(i, j), &c)| (((i - r) / p, (j - s) / p), c))
                .collect(),
        }
    }

    /// All diagonal sections at once: element `d` is `cartier(d, d)`.
    pub fn diagonal_sections(&self) -> Vec<Self> {
        let p = self.modulus;
        let mut out = vec![
            PolyFp {
                modulus: p,
                terms: BTreeMap::new(),
            };
            p as usize
        ];
        for (&(i, j), &c) in &self.terms {
            let d = i % p;
            if j % p == d {
                out[d as usize]
                    .terms
                    .insert(((i - d) / p, (j - d) / p), c);
            }
        }
        out
    }

    /// Substitutes `x -> x^p`, `y -> y^p`. Over the prime field this equals the
    /// Frobenius map `a -> a^p`.
    pub fn inflate(&self) -> Self {
        let p = self.modulus;
        PolyFp {
            modulus: p,
            terms: self
                .terms
                .iter()
                .map(|(&(i, j), &c)| ((i * p, j * p), c))
                .collect(),
        }
    }

    /// Multiplies by the monomial `x^i y^j`.
    pub fn shift(&self, i: u32, j: u32) -> Self {
        PolyFp {
            modulus: self.modulus,
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), &c)| ((a + i, b + j), c))
                .collect(),
        }
    }
}

impl fmt::Debug for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PolyFp[mod {}]({})", self.modulus, self)
    }
}

/// Renders as a polynomial in `x` whose coefficients are polynomials in `y`,
/// highest powers first, e.g. `(5*y^4 + 5*y^3)*x^2 + 6*y^2*x + y`.
impl fmt::Display for PolyFp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut by_x: BTreeMap<u32, Vec<(u32, u32)>> = BTreeMap::new();
        for (&(i, j), &c) in &self.terms {
            by_x.entry(i).or_default().push((j, c));
        }
        let mut parts = Vec::with_capacity(by_x.len());
        for (&i, ys) in by_x.iter().rev() {
            let y_terms: Vec<String> = ys.iter().rev().map(|&(j, c)| y_term(j, c)).collect();
            let coeff = y_terms.join(" + ");
            let xpow = match i {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            };
            let mut part = String::new();
            if i == 0 {
                part.push_str(&coeff);
            } else if y_terms.len() > 1 {
                write!(part, "({coeff})*{xpow}")?;
            } else if coeff == "1" {
                part.push_str(&xpow);
            } else {
                write!(part, "{coeff}*{xpow}")?;
            }
            parts.push(part);
        }
        f.write_str(&parts.join(" + "))
    }
}

fn y_term(j: u32, c: u32) -> String {
    let ypow = match j {
        0 => return c.to_string(),
        1 => "y".to_string(),
        _ => format!("y^{j}"),
    };
    if c == 1 {
        ypow
    } else {
        format!("{c}*{ypow}")
    }
}
