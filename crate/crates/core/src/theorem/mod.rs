//! Parameter tuples for exact products `X = HK` with `H ~ D_2n`, `K ~ D_2m`
//! (`m`, `n` odd), their admissibility conditions, and enumeration.
//!
//! A tuple `(m, n, m1, n1, a, b, c, r, s, t)` describes the group
//!
//! ```text
//! < x, y, z, w | x^n = y^2 = z^m = w^2 = [x,z] = 1, x^y = x^-1, z^w = z^-1,
//!                [x,w] = x^(s n1) z^(b m1), [z,y] = x^(r n1) z^(a m1),
//!                [y,w] = x^(t n1) z^(c m1) >
//! ```
//!
//! where `<x>` has core `<x^n1>` and `<z>` has core `<z^m1>`. The residues
//! `a, b, c` live in `Z_(m/m1)` and `r, s, t` in `Z_(n/n1)`; they are always
//! stored as least non-negative representatives.

mod checks;
mod construct;
mod gap;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use checks::{structural_checks, verify_cores, verify_exact_product, Check, Verdict};
pub use construct::{construct_group, relation_checks, ExactProductGroup, NormalForm};
pub use gap::gap_script;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("{0}")]
    InvalidInput(String),
    #[error("{0}")]
    InvalidTuple(String),
    #[error("inadmissible tuple: {0}")]
    InadmissibleTuple(String),
    #[error("construction inconsistent: {0}")]
    ConstructionInconsistent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ParameterTuple {
    pub m: u64,
    pub n: u64,
    pub m1: u64,
    pub n1: u64,
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub r: u64,
    pub s: u64,
    pub t: u64,
}

impl fmt::Display for ParameterTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(m={},n={},m1={},n1={},a={},b={},c={},r={},s={},t={})",
            self.m, self.n, self.m1, self.n1, self.a, self.b, self.c, self.r, self.s, self.t
        )
    }
}

/// Checks that `m` and `n` are odd and at least 3.
pub fn validate_degrees(m: u64, n: u64) -> Result<(), TheoremError> {
    for (name, v) in [("m", m), ("n", n)] {
        if v < 3 || v % 2 == 0 {
            return Err(TheoremError::InvalidInput(format!("{name} must be odd and >= 3")));
        }
    }
    Ok(())
}

impl ParameterTuple {
    /// Tuple with every residue zero.
    pub fn zero(m: u64, n: u64, m1: u64, n1: u64) -> Self {
        ParameterTuple { m, n, m1, n1, a: 0, b: 0, c: 0, r: 0, s: 0, t: 0 }
    }

    /// The modulus `m / m1` of `a`, `b`, `c`.
    pub fn k_modulus(&self) -> u64 {
        self.m / self.m1
    }

    /// The modulus `n / n1` of `r`, `s`, `t`.
    pub fn h_modulus(&self) -> u64 {
        self.n / self.n1
    }

    /// `u = 1 + m1 a` reduced modulo `m / m1`; `z^(m1)` is conjugated to its
    /// `u`-th power by `y`.
    pub fn u(&self) -> u64 {
        (1 + self.m1 * self.a) % self.k_modulus()
    }

    pub fn validate(&self) -> Result<(), TheoremError> {
        validate_degrees(self.m, self.n).map_err(|e| TheoremError::InvalidTuple(e.to_string()))?;
        if self.m1 == 0 || !self.m.is_multiple_of(self.m1) {
            return Err(TheoremError::InvalidTuple("m1 must divide m".into()));
        }
        if self.n1 == 0 || !self.n.is_multiple_of(self.n1) {
            return Err(TheoremError::InvalidTuple("n1 must divide n".into()));
        }
        let (q, p) = (self.k_modulus(), self.h_modulus());
        for (name, v, bound, text) in [
            ("a", self.a, q, "m/m1"),
            ("b", self.b, q, "m/m1"),
            ("c", self.c, q, "m/m1"),
            ("r", self.r, p, "n/n1"),
            ("s", self.s, p, "n/n1"),
            ("t", self.t, p, "n/n1"),
        ] {
            if v >= bound {
                return Err(TheoremError::InvalidTuple(format!("{name} must lie in [0, {text}) = [0, {bound})")));
            }
        }
        Ok(())
    }

    /// Parses `m1=1,n1=3,a=1,...`; `m1` and `n1` are mandatory, the residues
    /// default to 0.
    pub fn from_assignments(m: u64, n: u64, text: &str) -> Result<Self, TheoremError> {
        let mut values: BTreeMap<&str, u64> = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| TheoremError::InvalidTuple(format!("expected key=value, found `{part}`")))?;
            let key = key.trim();
            if !["m1", "n1", "a", "b", "c", "r", "s", "t"].contains(&key) {
                return Err(TheoremError::InvalidTuple(format!("unknown tuple key `{key}`")));
            }
            let value: u64 = value
                .trim()
                .parse()
                .map_err(|_| TheoremError::InvalidTuple(format!("`{key}` needs a non-negative integer")))?;
            if values.insert(key, value).is_some() {
                return Err(TheoremError::InvalidTuple(format!("`{key}` given twice")));
            }
        }
        let get = |k: &str| values.get(k).copied().unwrap_or(0);
        for key in ["m1", "n1"] {
            if !values.contains_key(key) {
                return Err(TheoremError::InvalidTuple(format!("`{key}` is mandatory")));
            }
        }
        let tuple = ParameterTuple {
            m,
            n,
            m1: get("m1"),
            n1: get("n1"),
            a: get("a"),
            b: get("b"),
            c: get("c"),
            r: get("r"),
            s: get("s"),
            t: get("t"),
        };
        tuple.validate()?;
        Ok(tuple)
    }

    /// The tuple describing the same group with the roles of `(H, x, y, n)`
    /// and `(K, z, w, m)` exchanged. Since `[w, y] = [y, w]^-1`, the residues
    /// `c` and `t` change sign as well as place.
    pub fn swap_factors(&self) -> Self {
        let (q, p) = (self.k_modulus(), self.h_modulus());
        ParameterTuple {
            m: self.n,
            n: self.m,
            m1: self.n1,
            n1: self.m1,
            a: self.s,
            b: self.r,
            c: (p - self.t) % p,
            r: self.b,
            s: self.a,
            t: (q - self.c) % q,
        }
    }
}

/// Result of [`check_conditions`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub passed: bool,
    /// Keys `"a"`, `"b"`, `"c"`, `"d"`.
    pub per_condition: BTreeMap<String, bool>,
    /// For a failed `"c"` or `"d"`, the smallest `k >= 0` on which the two
    /// sides of the biconditional disagree.
    pub witnesses: BTreeMap<String, u64>,
}

impl ConditionReport {
    pub fn failed(&self) -> Vec<&str> {
        self.per_condition
            .iter()
            .filter(|(_, &ok)| !ok)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    /// Human-readable summary of the failed conditions.
    pub fn describe_failures(&self) -> String {
        self.failed()
            .into_iter()
            .map(|c| match self.witnesses.get(c) {
                Some(k) => format!("condition ({c}) fails, witness k={k}"),
                None => format!("condition ({c}) fails"),
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `value * k == 0 (mod modulus)  <=>  k == 0 (mod period)` for every integer
/// `k`, decided by comparing the additive order of `value` in `Z_modulus`
/// with `period`.
pub fn order_criterion(value: u64, modulus: u64, period: u64) -> bool {
    modulus == period * gcd(value, modulus)
}

/// Literal scan of the same biconditional over `k in [0, modulus * period)`;
/// both sides are periodic in `k` with that period. Returns the first `k`
/// where they disagree.
pub fn biconditional_witness(value: u64, modulus: u64, period: u64) -> Option<u64> {
    (0..modulus * period).find(|&k| (value * k).is_multiple_of(modulus) != (k % period == 0))
}

/// `x (2 + d) == 0 (mod modulus)` for each `x` in `values`.
fn annihilated(values: [u64; 3], d: u64, modulus: u64) -> bool {
    values.iter().all(|&v| (v * (2 + d)).is_multiple_of(modulus))
}

fn k_side_conditions(t: &ParameterTuple) -> (bool, bool) {
    let q = t.k_modulus();
    let cond_a = annihilated([t.a, t.b, t.c], t.a * t.m1, q);
    let cond_c = order_criterion(t.b, q, t.n1);
    (cond_a, cond_c)
}

fn h_side_conditions(t: &ParameterTuple) -> (bool, bool) {
    let p = t.h_modulus();
    let cond_b = annihilated([t.r, t.s, t.t], t.s * t.n1, p);
    let cond_d = order_criterion(t.r, p, t.m1);
    (cond_b, cond_d)
}

/// Evaluates conditions (a)-(d) on a tuple.
pub fn check_conditions(t: &ParameterTuple) -> Result<ConditionReport, TheoremError> {
    t.validate()?;
    let (cond_a, cond_c) = k_side_conditions(t);
    let (cond_b, cond_d) = h_side_conditions(t);
    let mut witnesses = BTreeMap::new();
    if !cond_c {
        let k = biconditional_witness(t.b, t.k_modulus(), t.n1).expect("failed order criterion has a witness");
        witnesses.insert("c".to_string(), k);
    }
    if !cond_d {
        let k = biconditional_witness(t.r, t.h_modulus(), t.m1).expect("failed order criterion has a witness");
        witnesses.insert("d".to_string(), k);
    }
    let per_condition = BTreeMap::from([
        ("a".to_string(), cond_a),
        ("b".to_string(), cond_b),
        ("c".to_string(), cond_c),
        ("d".to_string(), cond_d),
    ]);
    Ok(ConditionReport {
        passed: cond_a && cond_b && cond_c && cond_d,
        per_condition,
        witnesses,
    })
}

pub fn divisors(v: u64) -> Vec<u64> {
    (1..=v).filter(|d| v.is_multiple_of(*d)).collect()
}

/// Every admissible tuple for `(m, n)`, in lexicographic order of
/// `(m1, n1, a, b, c, r, s, t)`.
pub fn admissible_tuples(m: u64, n: u64) -> Result<Vec<ParameterTuple>, TheoremError> {
    validate_degrees(m, n)?;
    let mut out = Vec::new();
    for m1 in divisors(m) {
        for n1 in divisors(n) {
            let (q, p) = (m / m1, n / n1);
            let base = ParameterTuple::zero(m, n, m1, n1);
            // (a) and (c) only involve a, b, c; (b) and (d) only r, s, t.
            let mut k_side = Vec::new();
            for a in 0..q {
                for b in 0..q {
                    for c in 0..q {
                        let cand = ParameterTuple { a, b, c, ..base };
                        if k_side_conditions(&cand) == (true, true) {
                            k_side.push((a, b, c));
                        }
                    }
                }
            }
            let mut h_side = Vec::new();
            for r in 0..p {
                for s in 0..p {
                    for t in 0..p {
                        let cand = ParameterTuple { r, s, t, ..base };
                        if h_side_conditions(&cand) == (true, true) {
                            h_side.push((r, s, t));
                        }
                    }
                }
            }
            for &(a, b, c) in &k_side {
                for &(r, s, t) in &h_side {
                    let tuple = ParameterTuple { a, b, c, r, s, t, ..base };
                    assert!(
                        (m / m1).is_multiple_of(n1) && (n / n1).is_multiple_of(m1),
                        "admissible tuple {tuple} violates n1 | m/m1 or m1 | n/n1"
                    );
                    out.push(tuple);
                }
            }
        }
    }
    Ok(out)
}

/// Tuple counts per `(m1, n1)` stratum, keyed `"m1,n1"`, including empty strata.
pub fn stratum_counts(m: u64, n: u64, tuples: &[ParameterTuple]) -> BTreeMap<(u64, u64), usize> {
    let mut counts: BTreeMap<(u64, u64), usize> = BTreeMap::new();
    for m1 in divisors(m) {
        for n1 in divisors(n) {
            counts.insert((m1, n1), 0);
        }
    }
    for t in tuples {
        *counts.entry((t.m1, t.n1)).or_insert(0) += 1;
    }
    counts
}
