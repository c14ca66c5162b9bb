//! Exponential growth rates for the thickened uniform family.
//!
//! Everything here is per-element log growth in double precision, except
//! [`empirical_exponent`], which takes the logarithm of an exact ratio.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::exact::{self, integer, BigRational};
use crate::thickening::{thickened_eval_axis, Axis, ThickenedUniform};

/// Relative slack on the domain boundaries of the growth formulas.
const BOUNDARY_SLACK: f64 = 1e-12;

/// An evaluation point together with a rank density `r/n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticParams {
    x: f64,
    alpha: f64,
}

impl AsymptoticParams {
    pub fn new(x: f64, alpha: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::Domain(format!("density must lie in (0, 1), got {alpha}")));
        }
        if !x.is_finite() || x < 0.0 {
            return Err(Error::Domain(format!("x must be a finite value >= 0, got {x}")));
        }
        Ok(Self { x, alpha })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }
}

/// Binary entropy in nats, `0` at the endpoints.
pub fn entropy(alpha: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::Domain(format!("entropy needs 0 <= alpha <= 1, got {alpha}")));
    }
    if alpha == 0.0 || alpha == 1.0 {
        return Ok(0.0);
    }
    Ok(-alpha * alpha.ln() - (1.0 - alpha) * (1.0 - alpha).ln())
}

/// `lim (1/n) ln T_{U_{n, alpha n}}(x, 0)` for `x > 1`.
///
/// Below `x = 1/alpha` the first term dominates and the rate is `H(alpha)`;
/// from there on it is `ln x + (alpha - 1) ln(x - 1)`.
pub fn growth_rate_x_axis(p: AsymptoticParams) -> Result<f64> {
    let (x, alpha) = (p.x, p.alpha);
    if x.is_nan() || x <= 1.0 {
        return Err(Error::Domain(format!("growth rate needs x > 1, got {x}")));
    }
    if x < 1.0 / alpha {
        entropy(alpha)
    } else {
        Ok(x.ln() + (alpha - 1.0) * (x - 1.0).ln())
    }
}

/// `ln(4^alpha / (alpha^(2 alpha) (1-alpha)^(2(1-alpha))))`, the log basis-count
/// growth of `U^(2)_{n, alpha n}` counted twice.
fn log_squared_basis_rate(alpha: f64) -> f64 {
    2.0 * alpha * std::f64::consts::LN_2 - 2.0 * alpha * alpha.ln() - 2.0 * (1.0 - alpha) * (1.0 - alpha).ln()
}

/// Growth exponent of `T(1,1)^2 / (T(x,0) T(0,x))` for `U^(2)_{n, alpha n}`.
///
/// Positive means the multiplicative inequality eventually fails. Requires
/// `x >= 1/alpha` and `x^2 >= 1/(1-alpha)`, where both axis evaluations sit on
/// their polynomial branch.
pub fn mw_exponent(p: AsymptoticParams) -> Result<f64> {
    let (x, alpha) = (p.x, p.alpha);
    let lower_x = 1.0 / alpha;
    let lower_x2 = 1.0 / (1.0 - alpha);
    if x < lower_x * (1.0 - BOUNDARY_SLACK) {
        return Err(Error::Domain(format!(
            "exponent needs x >= 1/alpha = {lower_x}, got {x}"
        )));
    }
    if x * x < lower_x2 * (1.0 - BOUNDARY_SLACK) {
        return Err(Error::Domain(format!(
            "exponent needs x^2 >= 1/(1-alpha) = {lower_x2}, got x^2 = {}",
            x * x
        )));
    }
    Ok(log_squared_basis_rate(alpha) + (x - 1.0).ln() - 3.0 * x.ln())
}

/// Maximizer of `4^alpha / (alpha^(2 alpha) (1-alpha)^(2(1-alpha)))` on `(0, 1)`
/// and the maximum value.
///
/// The log of the target is strictly concave, so the sign of its derivative
/// `2 ln(2 (1 - alpha) / alpha)` brackets the maximizer.
pub fn optimal_alpha() -> (f64, f64) {
    let slope = |a: f64| 2.0 * (2.0 * (1.0 - a) / a).ln();
    let (mut lo, mut hi) = (1e-9, 1.0 - 1e-9);
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if slope(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let arg = 0.5 * (lo + hi);
    (arg, log_squared_basis_rate(arg).exp())
}

/// Maximizes a unimodal function on `[lo, hi]` by golden-section search.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, tol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - inv_phi * (hi - lo);
    let mut d = lo + inv_phi * (hi - lo);
    let (mut fc, mut fd) = (f(c), f(d));
    while hi - lo > tol {
        if fc > fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    0.5 * (lo + hi)
}

/// `x^3 - 9(x - 1)`.
pub fn threshold_cubic(x: f64) -> f64 {
    x * x * x - 9.0 * (x - 1.0)
}

/// Largest root of `x^3 - 9(x - 1)`, by bisection on `[2, 3]`.
///
/// The cubic is `-1` at 2 and `9` at 3, and its other two roots are below 2.
pub fn threshold_x0(tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let (mut lo, mut hi) = (2.0f64, 3.0f64);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if threshold_cubic(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `(1/n) ln(T(1,1)^2 / (T(x,0) T(0,x)))` for `M = U^(2)_{n, 2n/3}`, from exact values.
pub fn empirical_exponent(n: u32, x: &BigRational) -> Result<f64> {
    if n < 9 || !n.is_multiple_of(3) {
        return Err(Error::Domain(format!("n must be a multiple of 3 with n >= 9, got {n}")));
    }
    // Domain at density 2/3: x >= 3/2 and x^2 >= 3.
    if x.is_negative() || *x < exact::rational(3, 2) || x * x < integer(3) {
        return Err(Error::Domain(format!("x must satisfy x >= 3/2 and x^2 >= 3, got {x}")));
    }
    let t = ThickenedUniform::from_params(n, 2 * n / 3, 2)?;
    let t_x0 = thickened_eval_axis(t, x, Axis::XAxis)?;
    let t_0x = thickened_eval_axis(t, x, Axis::YAxis)?;
    let t_11 = thickened_eval_axis(t, x, Axis::Diagonal11)?;
    let ratio = &t_11 * &t_11 / (t_x0 * t_0x);
    Ok(exact::ln_rational(&ratio)? / n as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::binomial;
    use crate::uniform::{uniform_eval_x_axis, UniformMatroid};

    fn params(x: f64, alpha: f64) -> AsymptoticParams {
        AsymptoticParams::new(x, alpha).unwrap()
    }

    #[test]
    fn entropy_values() {
        assert!((entropy(0.5).unwrap() - std::f64::consts::LN_2).abs() < 1e-15);
        let two_thirds = 3f64.ln() - 2.0 / 3.0 * 2f64.ln();
        assert!((entropy(2.0 / 3.0).unwrap() - two_thirds).abs() < 1e-15);
        assert!((two_thirds - 0.6365).abs() < 1e-4);
        assert_eq!(entropy(0.0).unwrap(), 0.0);
        assert_eq!(entropy(1.0).unwrap(), 0.0);
        assert!(entropy(1.5).is_err());
        assert!(entropy(-0.1).is_err());
    }

    #[test]
    fn entropy_against_log_binomial() {
        let n = 3000u64;
        for alpha in [1.0 / 3.0, 0.5, 2.0 / 3.0] {
            let k = (alpha * n as f64).round() as i64;
            let empirical = exact::ln_bigint(&binomial(n, k)) / n as f64;
            let bound = 2.0 * (n as f64).ln() / n as f64;
            assert!((entropy(alpha).unwrap() - empirical).abs() <= bound, "alpha={alpha}");
        }
    }

    #[test]
    fn params_validation() {
        assert!(AsymptoticParams::new(2.0, 0.0).is_err());
        assert!(AsymptoticParams::new(2.0, 1.0).is_err());
        assert!(AsymptoticParams::new(-1.0, 0.5).is_err());
        assert!(AsymptoticParams::new(f64::NAN, 0.5).is_err());
    }

    #[test]
    fn growth_branches_meet() {
        for alpha in [0.4, 0.5, 2.0 / 3.0, 0.75] {
            let x = 1.0 / alpha;
            let h = entropy(alpha).unwrap();
            let poly_branch = x.ln() + (alpha - 1.0) * (x - 1.0).ln();
            assert!((h - poly_branch).abs() < 1e-12, "alpha={alpha}");
            assert!((growth_rate_x_axis(params(x, alpha)).unwrap() - h).abs() < 1e-12);
        }
        assert!(growth_rate_x_axis(params(1.0, 0.5)).is_err());
        assert_eq!(growth_rate_x_axis(params(1.2, 0.5)).unwrap(), entropy(0.5).unwrap());
    }

    #[test]
    fn growth_rate_at_two() {
        let rate = growth_rate_x_axis(params(2.0, 2.0 / 3.0)).unwrap();
        assert!((rate - std::f64::consts::LN_2).abs() < 1e-15);
        let n = 600;
        let m = UniformMatroid::new(n, 2 * n / 3).unwrap();
        let value = uniform_eval_x_axis(m, &integer(2));
        let empirical = exact::ln_rational(&value).unwrap() / n as f64;
        assert!((empirical - rate).abs() < 0.02, "empirical {empirical}");
    }

    #[test]
    fn exponent_values() {
        let at_two = mw_exponent(params(2.0, 2.0 / 3.0)).unwrap();
        assert!((at_two - (9.0f64 / 8.0).ln()).abs() < 1e-14);
        assert!((at_two - 0.11778).abs() < 1e-5);
        let at_three = mw_exponent(params(3.0, 2.0 / 3.0)).unwrap();
        assert!((at_three - (18.0f64 / 27.0).ln()).abs() < 1e-14);
        assert!(at_three < 0.0);
        let cli_alpha = mw_exponent(params(2.0, 0.6666666667)).unwrap();
        assert!((cli_alpha - 0.11778).abs() < 1e-5);
        // Boundaries: x = 1/alpha and x^2 = 1/(1-alpha).
        assert!(mw_exponent(params(1.5, 2.0 / 3.0)).is_err()); // x^2 = 2.25 < 3
        assert!(mw_exponent(params(2.0, 0.4)).is_err()); // x < 2.5
        assert!(mw_exponent(params(3f64.sqrt(), 2.0 / 3.0)).is_ok());
    }

    #[test]
    fn exponent_identity_at_two_thirds() {
        // Deterministic spread of 100 points over [1.75, 3].
        for i in 0..100 {
            let x = 1.75 + 1.25 * (i as f64 + 0.5) / 100.0;
            let closed = (9.0 * (x - 1.0) / (x * x * x)).ln();
            assert!(
                (mw_exponent(params(x, 2.0 / 3.0)).unwrap() - closed).abs() < 1e-13,
                "x={x}"
            );
        }
    }

    #[test]
    fn exponent_sign_structure() {
        for x in [2.0, 2.1, 2.2] {
            assert!(mw_exponent(params(x, 2.0 / 3.0)).unwrap() > 0.0, "x={x}");
        }
        for x in [2.3, 2.5, 3.0] {
            assert!(mw_exponent(params(x, 2.0 / 3.0)).unwrap() < 0.0, "x={x}");
        }
    }

    #[test]
    fn optimal_density() {
        let (arg, value) = optimal_alpha();
        assert!((arg - 2.0 / 3.0).abs() < 1e-9);
        assert!((value - 9.0).abs() < 1e-9);
        // Independent route: golden-section on the function value itself.
        let f = |a: f64| 4f64.powf(a) / (a.powf(2.0 * a) * (1.0 - a).powf(2.0 * (1.0 - a)));
        let golden = golden_section_max(f, 0.01, 0.99, 1e-12);
        assert!((golden - arg).abs() < 1e-6);
        assert!((f(0.5) - 8.0).abs() < 1e-12);
    }

    #[test]
    fn threshold_root() {
        let x0 = threshold_x0(1e-9).unwrap();
        // numpy.roots([1, 0, -9, 9]) gives 2.2266816 for the largest root.
        assert_eq!(format!("{x0:.6}"), "2.226682");
        assert!(threshold_cubic(x0).abs() < 1e-8);
        assert!(mw_exponent(params(x0, 2.0 / 3.0)).unwrap().abs() < 1e-8);
        assert!(threshold_x0(0.0).is_err());
        // Tolerance below float spacing still terminates.
        let tight = threshold_x0(1e-30).unwrap();
        assert!((tight - x0).abs() < 1e-9);
    }

    #[test]
    fn empirical_small_case() {
        // From T(2,0)=8374746166, T(0,2)=64127582356390782814, T(1,1)=811751838842880.
        let ratio = 811751838842880f64.powi(2) / (8374746166f64 * 64127582356390782814f64);
        let expected = ratio.ln() / 33.0;
        let got = empirical_exponent(33, &integer(2)).unwrap();
        assert!((got - expected).abs() < 1e-12);
        assert!((got - 0.0062).abs() < 5e-5);
        assert!(empirical_exponent(34, &integer(2)).is_err());
        assert!(empirical_exponent(6, &integer(2)).is_err());
        assert!(empirical_exponent(33, &exact::rational(3, 2)).is_err());
    }
}
