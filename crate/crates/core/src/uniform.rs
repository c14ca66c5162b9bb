//! Closed-form Tutte polynomial of the uniform matroid `U_{n,r}`.
//!
//! For `0 < r < n`:
//!
//! ```text
//! T(x, y) = sum_{i=1}^{r} C(n-i-1, n-r-1) x^i + sum_{j=1}^{n-r} C(n-j-1, r-1) y^j
//! ```
//!
//! and `T = x^n` for `r = n`, `T = y^n` for `r = 0`.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{BigInt, BigRational, BivariatePoly};

/// Uniform matroid on `n` elements whose bases are all `r`-subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UniformMatroid {
    n: u32,
    r: u32,
}

impl UniformMatroid {
    pub fn new(n: u32, r: u32) -> Result<Self> {
        if r > n {
            return Err(Error::InvalidParameters(format!(
                "rank {r} exceeds ground-set size {n}"
            )));
        }
        Ok(Self { n, r })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    /// `U_{n,n-r}`.
    pub fn dual(&self) -> Self {
        Self {
            n: self.n,
            r: self.n - self.r,
        }
    }

    /// Coefficients of the x-sum, `C(n-i-1, n-r-1)` for `i = 1..=r`.
    fn x_coefficients(&self) -> Vec<BigInt> {
        descending_coefficients(self.n, self.r)
    }

    /// Coefficients of the y-sum, `C(n-j-1, r-1)` for `j = 1..=n-r`.
    fn y_coefficients(&self) -> Vec<BigInt> {
        descending_coefficients(self.n, self.n - self.r)
    }
}

/// `C(n-i-1, n-len-1)` for `i = 1..=len`, built from the top index down by
/// exact ratio steps. Requires `0 < len < n`.
fn descending_coefficients(n: u32, len: u32) -> Vec<BigInt> {
    let (n, len) = (n as u64, len as u64);
    let mut out = vec![BigInt::zero(); len as usize];
    // i = len gives C(n-len-1, n-len-1) = 1.
    let mut c = BigInt::one();
    out[len as usize - 1] = c.clone();
    for i in (1..len).rev() {
        // C(n-i-1, t) = C(n-i-2, t) * (n-i-1) / (len-i), t = n-len-1
        c *= n - i - 1;
        c /= len - i;
        out[i as usize - 1] = c.clone();
    }
    out
}

/// `T_{U_{n,r}}(x, y)` as an explicit polynomial.
pub fn uniform_tutte_poly(m: UniformMatroid) -> BivariatePoly {
    let (n, r) = (m.n, m.r);
    if r == n {
        return BivariatePoly::monomial(1, n, 0);
    }
    if r == 0 {
        return BivariatePoly::monomial(1, 0, n);
    }
    let mut p = BivariatePoly::zero();
    for (i, c) in (1..).zip(m.x_coefficients()) {
        p.add_term(c, i, 0);
    }
    for (j, c) in (1..).zip(m.y_coefficients()) {
        p.add_term(c, 0, j);
    }
    p
}

/// `sum_{i=1}^{len} coeffs[i-1] * t^i`, evaluated over the integers.
///
/// With `t = p/q` the sum equals `p * H / q^len`, where `H` is an integer
/// Horner recurrence; only one rational reduction happens at the end.
fn horner_from_one(coeffs: &[BigInt], t: &BigRational) -> BigRational {
    if coeffs.is_empty() || t.is_zero() {
        return BigRational::zero();
    }
    let (p, q) = (t.numer(), t.denom());
    let mut acc = coeffs[coeffs.len() - 1].clone();
    let mut q_pow = BigInt::one();
    for c in coeffs[..coeffs.len() - 1].iter().rev() {
        q_pow *= q;
        acc = acc * p + c * &q_pow;
    }
    // acc = q^(len-1) * sum_i c_i t^(i-1)
    BigRational::new(acc * p, q_pow * q)
}

/// Exact `T_{U_{n,r}}(x, y)` by summing the closed form directly.
pub fn uniform_tutte_eval(m: UniformMatroid, x: &BigRational, y: &BigRational) -> BigRational {
    let (n, r) = (m.n, m.r);
    if r == n {
        return crate::exact::pow(x, n);
    }
    if r == 0 {
        return crate::exact::pow(y, n);
    }
    horner_from_one(&m.x_coefficients(), x) + horner_from_one(&m.y_coefficients(), y)
}

/// `T_{U_{n,r}}(x, 0)`. Zero when `r = 0 < n`, and `x^n` when `r = n`.
pub fn uniform_eval_x_axis(m: UniformMatroid, x: &BigRational) -> BigRational {
    if m.r == 0 {
        return if m.n == 0 {
            BigRational::one()
        } else {
            BigRational::zero()
        };
    }
    if m.r == m.n {
        return crate::exact::pow(x, m.n);
    }
    horner_from_one(&m.x_coefficients(), x)
}

/// Index `i` maximizing `C(n-i-1, n-r-1) x^i` over `1..=r`.
///
/// Consecutive terms satisfy `term(i) >= term(i+1)` iff `(n-i-1)/(r-i) >= x`,
/// so the maximum sits at `ceil((x r - (n-1)) / (x-1))`, clamped into range.
pub fn dominant_index(m: UniformMatroid, x: f64) -> Result<u32> {
    if x.is_nan() || x <= 1.0 {
        return Err(Error::Domain(format!("dominant index needs x > 1, got {x}")));
    }
    if m.r == 0 || m.r >= m.n {
        return Err(Error::InvalidParameters(format!(
            "dominant index needs 0 < r < n, got n = {}, r = {}",
            m.n, m.r
        )));
    }
    let (n, r) = (m.n as f64, m.r as f64);
    let raw = ((x * r - (n - 1.0)) / (x - 1.0)).ceil();
    Ok(raw.clamp(1.0, r) as u32)
}
