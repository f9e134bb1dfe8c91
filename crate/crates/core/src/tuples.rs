//! Admissibility checking for k-tuples of linear forms `A_i n + B_i` and the
//! proven almost-prime exponents for admissible tuples.

use crate::error::{Error, Result};
use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFormTuple {
    /// (A, B) with A positive.
    pub forms: Vec<(u64, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Assumption {
    Unconditional,
    Geh,
}

/// Proven bounds: `Omega(prod L_i(n)) <= rho` infinitely often.
/// Unconditional row, k = 3..10.
const RHO_UNCONDITIONAL: [u32; 8] = [7, 11, 14, 18, 22, 26, 30, 34];
/// Conditional row (k = 4..10); k = 3 has no separate conditional value.
const RHO_GEH: [u32; 7] = [10, 13, 17, 20, 24, 28, 32];

impl LinearFormTuple {
    pub fn new(forms: Vec<(u64, i64)>) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::InvalidParams("empty tuple".into()));
        }
        if forms.iter().any(|&(a, _)| a == 0) {
            return Err(Error::InvalidParams("A_i must be positive".into()));
        }
        for i in 0..forms.len() {
            for j in i + 1..forms.len() {
                let (a1, b1) = forms[i];
                let (a2, b2) = forms[j];
                if a1 as i128 * b2 as i128 == a2 as i128 * b1 as i128 {
                    return Err(Error::InvalidParams(format!(
                        "forms {i} and {j} are proportional"
                    )));
                }
            }
        }
        Ok(LinearFormTuple { forms })
    }

    /// Shift shorthand: "0,2,6" means `{n, n+2, n+6}`.
    pub fn from_shifts(spec: &str) -> Result<Self> {
        let forms = spec
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<i64>()
                    .map(|b| (1u64, b))
                    .map_err(|_| Error::Parse(format!("bad shift {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        LinearFormTuple::new(forms)
    }

    /// Full form list: "1:0,1:2,1:6" meaning `A:B` pairs.
    pub fn from_forms(spec: &str) -> Result<Self> {
        let forms = spec
            .split(',')
            .map(|s| {
                let (a, b) = s
                    .trim()
                    .split_once(':')
                    .ok_or_else(|| Error::Parse(format!("bad form {s:?}, expected A:B")))?;
                let a: u64 = a
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad A in {s:?}")))?;
                let b: i64 = b
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad B in {s:?}")))?;
                Ok((a, b))
            })
            .collect::<Result<Vec<_>>>()?;
        LinearFormTuple::new(forms)
    }

    pub fn k(&self) -> usize {
        self.forms.len()
    }

    /// Number of residues `n mod p` with `prod (A_i n + B_i) = 0 mod p`.
    pub fn nu_p(&self, p: u64) -> u64 {
        let p_i = p as i128;
        (0..p_i)
            .filter(|&n| {
                self.forms
                    .iter()
                    .any(|&(a, b)| (a as i128 * n + b as i128).rem_euclid(p_i) == 0)
            })
            .count() as u64
    }

    /// Primes that can possibly cover all residues: beyond
    /// `max(k, p | A_i, p | A_i B_j - A_j B_i)` each form kills at most one
    /// residue and no two forms collide, so `nu_p <= k < p`.
    pub fn prime_bound(&self) -> u64 {
        let mut bound = self.k() as u64;
        let mut track = |m: u64| {
            for p in prime_factors(m) {
                bound = bound.max(p);
            }
        };
        for &(a, _) in &self.forms {
            track(a);
        }
        for i in 0..self.forms.len() {
            for j in i + 1..self.forms.len() {
                let (a1, b1) = self.forms[i];
                let (a2, b2) = self.forms[j];
                let res = (a1 as i128 * b2 as i128 - a2 as i128 * b1 as i128).unsigned_abs();
                track(res as u64);
            }
        }
        bound
    }

    /// `(true, None)` when admissible, otherwise the first covering prime.
    pub fn is_admissible(&self) -> (bool, Option<u64>) {
        let bound = self.prime_bound();
        for p in primes_up_to(bound) {
            if self.nu_p(p) >= p {
                return (false, Some(p));
            }
        }
        (true, None)
    }

    /// Whether the coefficient normalization (every `A_i` built from the same
    /// primes, none dividing any `B_i`) holds; informational only.
    pub fn normalization_ok(&self) -> bool {
        let mut a_primes: Vec<u64> = Vec::new();
        for &(a, _) in &self.forms {
            for p in prime_factors(a) {
                if !a_primes.contains(&p) {
                    a_primes.push(p);
                }
            }
        }
        for &(a, b) in &self.forms {
            for &p in &a_primes {
                if a % p != 0 || (b.unsigned_abs() % p == 0 && b != 0) {
                    return false;
                }
            }
        }
        true
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RhoReport {
    pub k: usize,
    pub admissible: bool,
    pub witness: Option<u64>,
    pub rho_unconditional: Option<u32>,
    pub rho_geh: Option<u32>,
    pub statement: String,
    pub normalization_warning: Option<String>,
}

/// Bound report for an admissible tuple with `3 <= k <= 10`.
pub fn rho_report(tuple: &LinearFormTuple, assumption: Assumption) -> Result<RhoReport> {
    let k = tuple.k();
    if !(3..=10).contains(&k) {
        return Err(Error::InvalidParams(format!(
            "rho table covers 3 <= k <= 10, got k = {k}"
        )));
    }
    let (admissible, witness) = tuple.is_admissible();
    if !admissible {
        return Err(Error::InadmissibleTuple(witness.unwrap()));
    }
    let rho_unc = RHO_UNCONDITIONAL[k - 3];
    let rho_geh = if k >= 4 {
        Some(RHO_GEH[k - 4])
    } else {
        None
    };
    let statement = match assumption {
        Assumption::Unconditional => format!(
            "Omega(P(n)) <= {rho_unc} infinitely often (unconditional)"
        ),
        Assumption::Geh => match rho_geh {
            Some(r) => format!("Omega(P(n)) <= {r} infinitely often (under GEH)"),
            None => format!(
                "no separate conditional value for k = 3; unconditional bound {rho_unc}"
            ),
        },
    };
    let normalization_warning = if tuple.normalization_ok() {
        None
    } else {
        Some("coefficients are not in the normalized shape (shared A-primes, none dividing B)".into())
    };
    Ok(RhoReport {
        k,
        admissible,
        witness,
        rho_unconditional: Some(rho_unc),
        rho_geh,
        statement,
        normalization_warning,
    })
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n as usize + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut p = 2usize;
    while p * p <= n as usize {
        if sieve[p] {
            let mut q = p * p;
            while q <= n as usize {
                sieve[q] = false;
                q += p;
            }
        }
        p += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter(|(_, &b)| b)
        .map(|(i, _)| i as u64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_p_examples() {
        let t = LinearFormTuple::from_shifts("0,2,4").unwrap();
        assert_eq!(t.nu_p(3), 3);
        let t = LinearFormTuple::from_shifts("0,2,6").unwrap();
        assert_eq!(t.nu_p(3), 2);
        let t = LinearFormTuple::from_shifts("0,4,6,10,12").unwrap();
        assert_eq!(t.nu_p(5), 4);
    }

    #[test]
    fn admissibility_examples() {
        assert_eq!(
            LinearFormTuple::from_shifts("0,2,4").unwrap().is_admissible(),
            (false, Some(3))
        );
        assert_eq!(
            LinearFormTuple::from_shifts("0,2,6").unwrap().is_admissible(),
            (true, None)
        );
        assert_eq!(
            LinearFormTuple::from_shifts("0,4,6,10,12")
                .unwrap()
                .is_admissible(),
            (true, None)
        );
    }

    #[test]
    fn rho_values() {
        let t5 = LinearFormTuple::from_shifts("0,4,6,10,12").unwrap();
        let r = rho_report(&t5, Assumption::Unconditional).unwrap();
        assert_eq!(r.rho_unconditional, Some(14));
        let r = rho_report(&t5, Assumption::Geh).unwrap();
        assert_eq!(r.rho_geh, Some(13));
        let t3 = LinearFormTuple::from_shifts("0,2,6").unwrap();
        let r = rho_report(&t3, Assumption::Unconditional).unwrap();
        assert_eq!(r.rho_unconditional, Some(7));
    }

    #[test]
    fn inadmissible_is_refused() {
        let t = LinearFormTuple::from_shifts("0,2,4").unwrap();
        assert!(matches!(
            rho_report(&t, Assumption::Unconditional),
            Err(Error::InadmissibleTuple(3))
        ));
    }

    #[test]
    fn nu_p_bounds_and_shift_invariance() {
        let t = LinearFormTuple::from_shifts("0,2,6,8").unwrap();
        for p in [2u64, 3, 5, 7, 11, 13] {
            let v = t.nu_p(p);
            assert!(v <= (t.k() as u64).min(p));
        }
        // shifting every B by A*c preserves nu_p
        let shifted = LinearFormTuple::new(
            t.forms.iter().map(|&(a, b)| (a, b + a as i64 * 30)).collect(),
        )
        .unwrap();
        for p in [2u64, 3, 5, 7, 11] {
            assert_eq!(t.nu_p(p), shifted.nu_p(p));
        }
    }

    #[test]
    fn prime_bound_sound_beyond() {
        let t = LinearFormTuple::from_forms("2:1,4:3,6:5").unwrap();
        let bound = t.prime_bound();
        for p in primes_up_to(10 * bound) {
            if p > bound {
                assert!(t.nu_p(p) < p, "nu_{p} = p beyond the bound");
            }
        }
    }

    #[test]
    fn proportional_forms_rejected() {
        assert!(LinearFormTuple::new(vec![(1, 2), (2, 4)]).is_err());
    }
}
