//! Cross-validation of the closed forms against the brute-force oracle.

use crate::error::{check_size, Result};
use crate::exact::{integer, rational, BigRational};
use crate::oracle::{direct_sum, dual_matroid, lift_subset, thicken_exchange_graph, thicken_matroid, uniform_oracle};
use crate::thickening::{thickened_eval, ThickenedUniform};
use crate::uniform::{uniform_tutte_poly, UniformMatroid};

pub const MAX_CHECK_N: usize = 12;

/// Rational points used by the thickening comparison. None of them makes
/// `1 + y + ... + y^(k-1)` vanish for `k <= 3`.
pub fn rational_grid() -> Vec<(BigRational, BigRational)> {
    vec![
        (integer(0), integer(2)),
        (integer(2), integer(0)),
        (integer(1), integer(1)),
        (rational(1, 2), integer(3)),
        (rational(-2, 3), rational(5, 4)),
        (integer(3), rational(-1, 2)),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub instances: usize,
}

/// Runs every suite up to `max_n`; the inner error names the first mismatch.
pub fn oracle_check(max_n: usize) -> Result<std::result::Result<Vec<SuiteResult>, String>> {
    check_size("oracle-check max n", max_n, MAX_CHECK_N)?;
    let suites: [Suite; 5] = [
        ("closed form vs subset expansion", closed_form),
        ("rank axioms of constructions", axioms),
        ("duality swaps arguments", duality),
        ("thickening identity vs explicit thickening", thickening),
        ("local basis exchange graphs", exchange_graphs),
    ];
    let mut results = Vec::new();
    for (name, suite) in suites {
        match suite(max_n)? {
            Ok(instances) => results.push(SuiteResult { name, instances }),
            Err(msg) => return Ok(Err(format!("{name}: {msg}"))),
        }
    }
    Ok(Ok(results))
}

type SuiteOutcome = Result<std::result::Result<usize, String>>;
type Suite = (&'static str, fn(usize) -> SuiteOutcome);

fn closed_form(max_n: usize) -> SuiteOutcome {
    let mut count = 0;
    for n in 0..=max_n {
        for r in 0..=n {
            let oracle = uniform_oracle(n, r)?.subset_expansion_tutte()?;
            let closed = uniform_tutte_poly(UniformMatroid::new(n as u32, r as u32)?);
            if oracle != closed {
                return Ok(Err(format!("U({n},{r}): oracle {oracle} != closed form {closed}")));
            }
            count += 1;
        }
    }
    Ok(Ok(count))
}

fn axioms(max_n: usize) -> SuiteOutcome {
    let mut count = 0;
    for n in 0..=max_n {
        for r in 0..=n {
            let m = uniform_oracle(n, r)?;
            let mut built = vec![("uniform", m.clone()), ("dual", dual_matroid(&m)?)];
            if 2 * n <= max_n {
                built.push(("2-thickening", thicken_matroid(&m, 2)?));
                built.push(("direct sum", direct_sum(&m, &uniform_oracle(n, n / 2)?)?));
            }
            for (what, matroid) in built {
                if !matroid.rank_axioms_check()? {
                    return Ok(Err(format!("{what} of U({n},{r}) violates the rank axioms")));
                }
                count += 1;
            }
        }
    }
    Ok(Ok(count))
}

fn duality(max_n: usize) -> SuiteOutcome {
    let limit = max_n.min(10);
    let mut count = 0;
    for n in 0..=limit {
        for r in 0..=n {
            for k in 1..=2 {
                if n * k > limit {
                    continue;
                }
                let m = thicken_matroid(&uniform_oracle(n, r)?, k)?;
                let lhs = dual_matroid(&m)?.subset_expansion_tutte()?;
                let rhs = m.subset_expansion_tutte()?.swap_variables();
                if lhs != rhs {
                    return Ok(Err(format!("U({n},{r}) thickened {k}x: {lhs} != {rhs}")));
                }
                count += 1;
            }
        }
    }
    Ok(Ok(count))
}

fn thickening(max_n: usize) -> SuiteOutcome {
    let grid = rational_grid();
    let mut count = 0;
    for n in 1..=max_n {
        for k in 1..=3 {
            if n * k > max_n {
                continue;
            }
            for r in 0..=n {
                let poly = thicken_matroid(&uniform_oracle(n, r)?, k)?.subset_expansion_tutte()?;
                let t = ThickenedUniform::from_params(n as u32, r as u32, k as u32)?;
                for (x, y) in &grid {
                    let oracle = poly.eval(x, y);
                    let fast = thickened_eval(t, x, y)?;
                    if oracle != fast {
                        return Ok(Err(format!(
                            "U({n},{r}) thickened {k}x at ({x},{y}): oracle {oracle} != identity {fast}"
                        )));
                    }
                    count += 1;
                }
            }
        }
    }
    Ok(Ok(count))
}

fn exchange_graphs(max_n: usize) -> SuiteOutcome {
    let mut count = 0;
    for n in 0..=max_n.min(8) {
        for r in 0..=n {
            let m = uniform_oracle(n, r)?;
            let thick = if n <= 5 { Some(thicken_matroid(&m, 2)?) } else { None };
            for b in m.bases()? {
                let g = m.exchange_graph(b)?;
                if g.left_labels().len() != r || g.right_labels().len() != n - r || !g.is_complete_bipartite() {
                    return Ok(Err(format!("U({n},{r}) at basis {b:#b} is not K({r},{})", n - r)));
                }
                if let Some(thick) = &thick {
                    let expected = thicken_exchange_graph(&g);
                    let actual = thick.exchange_graph(lift_subset(b, 2))?;
                    if !expected.is_isomorphic(&actual) {
                        return Ok(Err(format!(
                            "U({n},{r}) at basis {b:#b}: pendant/twin transform differs from the thickened graph"
                        )));
                    }
                }
                count += 1;
            }
        }
    }
    Ok(Ok(count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn passes_at_eight() {
        let suites = oracle_check(8).unwrap().unwrap();
        assert_eq!(suites.len(), 5);
        assert!(suites.iter().all(|s| s.instances > 0));
    }

    #[test]
    fn refuses_large_sizes() {
        assert!(matches!(oracle_check(30), Err(Error::SizeLimit { .. })));
    }
}
