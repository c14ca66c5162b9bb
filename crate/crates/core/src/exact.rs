//! Exact scalars, binomial coefficients and sparse bivariate polynomials.
//!
//! Integers and rationals are `num-bigint` / `num-rational` values; rationals
//! are kept in lowest terms with a positive denominator by construction.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// `C(n, k)`, zero outside `0 <= k <= n`.
///
/// Multiplicative formula with an exact division after every step, so the
/// running value is always a binomial coefficient itself.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn integer(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

pub fn pow(base: &BigRational, e: u32) -> BigRational {
    Pow::pow(base, e)
}

/// Parses `7`, `-3/4` or a terminating decimal such as `0.125` exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((int_part, frac_part)) = s.split_once('.') {
        if frac_part.is_empty() || !frac_part.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int_part.starts_with('-');
        let digits = int_part.trim_start_matches(['-', '+']);
        let whole = if digits.is_empty() {
            BigInt::zero()
        } else {
            BigInt::from_str(digits).map_err(|_| bad())?
        };
        let scale = BigInt::from(10u32).pow(frac_part.len() as u32);
        let frac = BigInt::from_str(frac_part).map_err(|_| bad())?;
        let value = BigRational::new(whole * &scale + frac, scale);
        return Ok(if negative { -value } else { value });
    }
    BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| bad())
}

/// Nearest `f64` to an exact rational (round half to even).
///
/// Exact for results in the normal range; values below it are rounded twice.
pub fn to_f64(q: &BigRational) -> f64 {
    let num = q.numer().abs();
    let den = q.denom().clone();
    if num.is_zero() {
        return 0.0;
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };

    // Scale so the integer quotient carries 54 or 55 significant bits.
    let shift = 54 - (num.bits() as i64 - den.bits() as i64);
    let (a, b) = if shift >= 0 {
        (num << shift as usize, den)
    } else {
        (num, den << (-shift) as usize)
    };
    let (quot, rem) = a.div_rem(&b);
    let sticky = !rem.is_zero();
    let extra = quot.bits() - 53;
    let mut mantissa = (&quot >> extra as usize).to_u64().expect("53-bit mantissa");
    let low = (&quot & ((BigInt::one() << extra as usize) - 1u32))
        .to_u64()
        .expect("small remainder");
    let half = 1u64 << (extra - 1);
    if low > half || (low == half && (sticky || mantissa & 1 == 1)) {
        mantissa += 1;
    }
    let exp = extra as i64 - shift;
    sign * scale_by_pow2(mantissa as f64, exp)
}

fn scale_by_pow2(mut v: f64, mut exp: i64) -> f64 {
    // Stepping keeps each factor representable.
    while exp > 1000 {
        v *= 2f64.powi(1000);
        exp -= 1000;
        if v.is_infinite() {
            return v;
        }
    }
    while exp < -1000 {
        v *= 2f64.powi(-1000);
        exp += 1000;
        if v == 0.0 {
            return v;
        }
    }
    v * 2f64.powi(exp as i32)
}

/// Natural logarithm of a positive integer of any size.
pub fn ln_bigint(a: &BigInt) -> f64 {
    debug_assert!(a.is_positive());
    let bits = a.bits();
    if bits <= 63 {
        return a.to_f64().expect("small integer").ln();
    }
    // a = m * 2^(bits-1) with m in [1, 2)
    let top = (a >> (bits - 64) as usize).to_u64().expect("64 top bits");
    let mantissa = top as f64 / 2f64.powi(63);
    mantissa.ln() + (bits - 1) as f64 * std::f64::consts::LN_2
}

/// Natural logarithm of a positive rational, without converting either side to `f64`.
pub fn ln_rational(q: &BigRational) -> Result<f64> {
    if !q.is_positive() {
        return Err(Error::Domain(format!("logarithm of non-positive value {q}")));
    }
    Ok(ln_bigint(q.numer()) - ln_bigint(q.denom()))
}

/// Sparse polynomial in `x` and `y` with integer coefficients.
///
/// Keys are `(x-exponent, y-exponent)`; zero coefficients are never stored,
/// so derived equality is polynomial equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), BigInt>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0, 0)
    }

    pub fn x() -> Self {
        Self::monomial(BigInt::one(), 1, 0)
    }

    pub fn y() -> Self {
        Self::monomial(BigInt::one(), 0, 1)
    }

    pub fn monomial(coeff: impl Into<BigInt>, x_exp: u32, y_exp: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(coeff.into(), x_exp, y_exp);
        p
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (C, u32, u32)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (c, i, j) in terms {
            p.add_term(c.into(), i, j);
        }
        p
    }

    /// Adds `coeff * x^i * y^j`, dropping the entry if it cancels.
    pub fn add_term(&mut self, coeff: BigInt, x_exp: u32, y_exp: u32) {
        if coeff.is_zero() {
            return;
        }
        let key = (x_exp, y_exp);
        match self.terms.get_mut(&key) {
            Some(c) => {
                *c += coeff;
                if c.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, coeff);
            }
        }
    }

    pub fn coeff(&self, x_exp: u32, y_exp: u32) -> BigInt {
        self.terms.get(&(x_exp, y_exp)).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Terms in ascending `(x-exponent, y-exponent)` order.
    pub fn terms(&self) -> impl Iterator<Item = ((u32, u32), &BigInt)> + '_ {
        self.terms.iter().map(|(&k, c)| (k, c))
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }

    /// Exact value at `(x, y)`.
    pub fn eval(&self, x: &BigRational, y: &BigRational) -> BigRational {
        let x_pows = powers(x, self.degree_x().unwrap_or(0));
        let y_pows = powers(y, self.degree_y().unwrap_or(0));
        let mut acc = BigRational::zero();
        for (&(i, j), c) in &self.terms {
            acc += &x_pows[i as usize] * &y_pows[j as usize] * c;
        }
        acc
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_variables(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect(),
        }
    }
}

fn powers(base: &BigRational, max: u32) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(max as usize + 1);
    out.push(BigRational::one());
    for k in 1..=max as usize {
        let next = &out[k - 1] * base;
        out.push(next);
    }
    out
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;

    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(c.clone(), i, j);
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;

    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        self + &(-rhs)
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;

    fn neg(self) -> BivariatePoly {
        BivariatePoly {
            terms: self.terms.iter().map(|(&k, c)| (k, -c)).collect(),
        }
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;

    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                out.add_term(c1 * c2, i1 + i2, j1 + j2);
            }
        }
        out
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for BivariatePoly {
            type Output = BivariatePoly;
            fn $method(self, rhs: BivariatePoly) -> BivariatePoly {
                (&self).$method(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (n, (&(i, j), c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if n == 0 {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            let mut factors = Vec::new();
            if !magnitude.is_one() || (i == 0 && j == 0) {
                factors.push(magnitude.to_string());
            }
            for (var, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            f.write_str(&factors.join("*"))?;
        }
        Ok(())
    }
}
