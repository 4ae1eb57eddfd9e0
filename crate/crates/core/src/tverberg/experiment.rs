use serde::Serialize;

use crate::error::Result;
use crate::rational::{format_rational, frac, int, Rational};

use super::{check_colorful_intersection, find_tverberg, ColorSystem, WitnessView};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// Some family admits a Tverberg k-partition.
    Success,
    /// Colorful intersection, `d >= m`, or the size bound fails.
    HypothesisNotMet,
    /// All hypotheses hold, k is a prime power, and no family succeeds.
    TheoremViolation,
    /// All hypotheses hold except that k is not a prime power; no family succeeds.
    ConjectureCounterexample,
}

impl Verdict {
    /// Only a theorem violation is a hard failure.
    pub fn is_failure(self) -> bool {
        self == Verdict::TheoremViolation
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyOutcome {
    pub label: String,
    pub witness: Option<WitnessView>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Theorem1Report {
    pub d: usize,
    pub m: usize,
    pub k: usize,
    pub n: usize,
    pub colorful: bool,
    pub colorful_violation: Option<Vec<usize>>,
    /// `(d/m + 1)(k - 1)` as an exact rational string.
    pub size_bound: String,
    pub size_hypothesis: bool,
    pub dimension_hypothesis: bool,
    pub k_prime_power: bool,
    pub families: Vec<FamilyOutcome>,
    pub verdict: Verdict,
}

pub fn is_prime_power(k: usize) -> bool {
    if k < 2 {
        return false;
    }
    let mut n = k;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            return n == 1;
        }
        p += 1;
    }
    true
}

fn size_bound(d: usize, m: usize, k: usize) -> Rational {
    (frac(d as i64, m as i64) + int(1)) * int(k as i64 - 1)
}

/// Run every family's Tverberg search and classify the outcome.
///
/// Hypotheses are checked first: if any fails the verdict is
/// `HypothesisNotMet` regardless of what the searches found.
pub fn theorem1_experiment(system: &ColorSystem, k: usize) -> Result<Theorem1Report> {
    let d = system.dimension();
    let m = system.m();
    let n = system.n();
    let violation = check_colorful_intersection(system)?;
    let bound = size_bound(d, m, k);
    let size_hypothesis = int(n as i64) > bound;
    let dimension_hypothesis = d >= m && m >= 1;
    let k_prime_power = is_prime_power(k);

    let mut families = Vec::with_capacity(m);
    for f in system.families() {
        let w = find_tverberg(f, k)?;
        families.push(FamilyOutcome { label: f.label.clone(), witness: w.map(|w| w.view()) });
    }
    let any_success = families.iter().any(|f| f.witness.is_some());

    let verdict = if violation.is_some() || !size_hypothesis || !dimension_hypothesis {
        Verdict::HypothesisNotMet
    } else if any_success {
        Verdict::Success
    } else if k_prime_power {
        Verdict::TheoremViolation
    } else {
        Verdict::ConjectureCounterexample
    };

    Ok(Theorem1Report {
        d,
        m,
        k,
        n,
        colorful: violation.is_none(),
        colorful_violation: violation,
        size_bound: format_rational(&bound),
        size_hypothesis,
        dimension_hypothesis,
        k_prime_power,
        families,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoinBoundReport {
    pub d: usize,
    pub m: usize,
    pub k: usize,
    pub n: usize,
    /// `(d/m + 1)(k - 1)`.
    pub size_bound: String,
    pub size_hypothesis: bool,
    /// `m(n - k + 1) - 2`.
    pub join_connectivity: i64,
    /// `d(k - 1) - 2`.
    pub sphere_bound: i64,
    pub join_inequality: bool,
    pub equivalent: bool,
}

/// Compare the size hypothesis `n > (d/m+1)(k-1)` with the join
/// connectivity inequality `m(n-k+1) - 2 > d(k-1) - 2`.
pub fn join_bound_check(d: usize, m: usize, k: usize, n: usize) -> JoinBoundReport {
    assert!(m >= 1, "m must be positive");
    let bound = size_bound(d, m, k);
    let size_hypothesis = int(n as i64) > bound;
    let join_connectivity = m as i64 * (n as i64 - k as i64 + 1) - 2;
    let sphere_bound = d as i64 * (k as i64 - 1) - 2;
    let join_inequality = join_connectivity > sphere_bound;
    JoinBoundReport {
        d,
        m,
        k,
        n,
        size_bound: format_rational(&bound),
        size_hypothesis,
        join_connectivity,
        sphere_bound,
        join_inequality,
        equivalent: size_hypothesis == join_inequality,
    }
}
