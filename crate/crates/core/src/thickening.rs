//! Tutte evaluations of k-thickened uniform matroids and Merino-Welsh reports.
//!
//! Replacing each element of `M` by `k` parallel copies gives
//!
//! ```text
//! T_{M^(k)}(x, y) = s^r(M) * T_M((s - 1 + x) / s, y^k),   s = 1 + y + ... + y^(k-1)
//! ```

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, binomial, integer, BigRational};
use crate::uniform::{uniform_eval_x_axis, uniform_tutte_eval, UniformMatroid};

/// `U_{n,r}` with every element replaced by `k` parallel copies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThickenedUniform {
    base: UniformMatroid,
    k: u32,
}

impl ThickenedUniform {
    pub fn new(base: UniformMatroid, k: u32) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidParameters(
                "thickening multiplicity must be at least 1".into(),
            ));
        }
        Ok(Self { base, k })
    }

    pub fn from_params(n: u32, r: u32, k: u32) -> Result<Self> {
        Self::new(UniformMatroid::new(n, r)?, k)
    }

    pub fn base(&self) -> UniformMatroid {
        self.base
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn rank(&self) -> u32 {
        self.base.r()
    }

    pub fn element_count(&self) -> u64 {
        self.k as u64 * self.base.n() as u64
    }

    /// A loop needs rank zero; a coloop needs `r = n` with singleton parallel classes.
    pub fn has_loops_or_coloops(&self) -> bool {
        let (n, r) = (self.base.n(), self.base.r());
        n > 0 && (r == 0 || (r == n && self.k == 1))
    }
}

/// Specialized evaluation points for the 2-thickening shortcuts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    /// `T(x, 0)`
    XAxis,
    /// `T(0, x)`
    YAxis,
    /// `T(1, 1)`; the argument is ignored.
    Diagonal11,
}

/// Exact `T_{M^(k)}(x, y)` for `M = U_{n,r}`.
pub fn thickened_eval(t: ThickenedUniform, x: &BigRational, y: &BigRational) -> Result<BigRational> {
    // s = 1 + y + ... + y^(k-1)
    let mut s = BigRational::zero();
    let mut y_pow = BigRational::one();
    for _ in 0..t.k {
        s += &y_pow;
        y_pow *= y;
    }
    // y_pow is now y^k
    if s.is_zero() {
        return Err(Error::DegenerateDenominator {
            k: t.k,
            y: y.to_string(),
        });
    }
    let shifted_x = (&s - BigRational::one() + x) / &s;
    Ok(exact::pow(&s, t.rank()) * uniform_tutte_eval(t.base, &shifted_x, &y_pow))
}

/// 2-thickening shortcuts on the axes and at `(1, 1)`; other `k` go through
/// [`thickened_eval`].
pub fn thickened_eval_axis(t: ThickenedUniform, x: &BigRational, axis: Axis) -> Result<BigRational> {
    if t.k != 2 {
        let zero = BigRational::zero();
        let one = BigRational::one();
        return match axis {
            Axis::XAxis => thickened_eval(t, x, &zero),
            Axis::YAxis => thickened_eval(t, &zero, x),
            Axis::Diagonal11 => thickened_eval(t, &one, &one),
        };
    }
    let r = t.rank();
    match axis {
        Axis::XAxis => Ok(uniform_eval_x_axis(t.base, x)),
        Axis::YAxis => {
            let x_plus_one = x + BigRational::one();
            if x_plus_one.is_zero() {
                return Err(Error::DegenerateDenominator { k: 2, y: x.to_string() });
            }
            let arg = x / &x_plus_one;
            Ok(exact::pow(&x_plus_one, r) * uniform_tutte_eval(t.base, &arg, &(x * x)))
        }
        Axis::Diagonal11 => {
            let bases = binomial(t.base.n() as u64, r as i64);
            Ok(integer(bases << r as usize))
        }
    }
}

/// The three Merino-Welsh evaluations at a point and which inequalities hold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MwReport {
    #[serde(with = "rational_string")]
    pub x: BigRational,
    /// `T(x, 0)`
    #[serde(with = "rational_string")]
    pub t_x0: BigRational,
    /// `T(0, x)`
    #[serde(with = "rational_string")]
    pub t_0x: BigRational,
    /// `T(1, 1)`
    #[serde(with = "rational_string")]
    pub t_11: BigRational,
    /// `T(x,0) T(0,x) / T(1,1)^2`
    #[serde(with = "rational_string")]
    pub ratio_mult: BigRational,
    pub ratio_mult_real: f64,
    /// `T(x,0) T(0,x) >= T(1,1)^2`
    pub status_mult: bool,
    /// `T(x,0) + T(0,x) >= 2 T(1,1)`
    pub status_add: bool,
    /// `max(T(x,0), T(0,x)) >= T(1,1)`
    pub status_max: bool,
}

impl MwReport {
    pub fn from_values(x: BigRational, t_x0: BigRational, t_0x: BigRational, t_11: BigRational) -> Self {
        let product = &t_x0 * &t_0x;
        let square = &t_11 * &t_11;
        let status_mult = product >= square;
        let status_add = &t_x0 + &t_0x >= &t_11 * integer(2);
        let status_max = std::cmp::max(&t_x0, &t_0x) >= &t_11;
        let ratio_mult = if square.is_zero() {
            // T(1,1) counts bases and is never zero for a matroid.
            BigRational::zero()
        } else {
            product / square
        };
        let ratio_mult_real = exact::to_f64(&ratio_mult);
        Self {
            x,
            t_x0,
            t_0x,
            t_11,
            ratio_mult,
            ratio_mult_real,
            status_mult,
            status_add,
            status_max,
        }
    }

    /// `mult => add => max`, valid whenever the values are non-negative.
    pub fn implication_chain_holds(&self) -> bool {
        (!self.status_mult || self.status_add) && (!self.status_add || self.status_max)
    }

    /// Compares the multiplicative sides exactly: `Less` is a counterexample.
    pub fn mult_ordering(&self) -> Ordering {
        (&self.t_x0 * &self.t_0x).cmp(&(&self.t_11 * &self.t_11))
    }
}

fn check_report_preconditions(t: ThickenedUniform, x: &BigRational) -> Result<()> {
    if x.is_negative() {
        return Err(Error::Domain(format!("evaluation point must be >= 0, got {x}")));
    }
    if t.has_loops_or_coloops() {
        return Err(Error::LoopsOrColoops(format!(
            "U({},{}) thickened {} times",
            t.base.n(),
            t.base.r(),
            t.k
        )));
    }
    Ok(())
}

fn mw_values(t: ThickenedUniform, x: &BigRational) -> Result<(BigRational, BigRational, BigRational)> {
    check_report_preconditions(t, x)?;
    Ok((
        thickened_eval_axis(t, x, Axis::XAxis)?,
        thickened_eval_axis(t, x, Axis::YAxis)?,
        thickened_eval_axis(t, x, Axis::Diagonal11)?,
    ))
}

/// Merino-Welsh report for `M = U^(k)_{n,r}` at `x >= 0`.
pub fn mw_report(t: ThickenedUniform, x: &BigRational) -> Result<MwReport> {
    let (a, b, c) = mw_values(t, x)?;
    Ok(MwReport::from_values(x.clone(), a, b, c))
}

/// Report for `N = M + M*` (direct sum with the dual).
///
/// `T_N(a, b) = T_M(a, b) T_M(b, a)`, so `T_N(x,0) = T_N(0,x) = T_M(x,0) T_M(0,x)`
/// and `T_N(1,1) = T_M(1,1)^2`: the maximum inequality for `N` is the
/// multiplicative one for `M`.
pub fn direct_sum_dual_report(t: ThickenedUniform, x: &BigRational) -> Result<MwReport> {
    let (a, b, c) = mw_values(t, x)?;
    let product = &a * &b;
    Ok(MwReport::from_values(x.clone(), product.clone(), product, &c * &c))
}

mod rational_string {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::exact::{parse_rational, BigRational};

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(q)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}
