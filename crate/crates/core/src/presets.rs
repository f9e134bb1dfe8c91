//! Named weight polynomials: the headline k = 5 weight, its k = 3 analogue,
//! and the published near-optimal families for k = 3..10.

use crate::error::{Error, Result};
use crate::sympoly::SymmetricPolynomial;

/// `11 + 85 (1-P_1) + 170 (1-P_1)^2` on five variables.
pub fn headline5() -> SymmetricPolynomial {
    SymmetricPolynomial::from_shifted_p1_coeffs(5, &[11, 85, 170])
}

/// `256 + 819 (1-P_1) + 833 (1-P_1)^2` on three variables.
pub fn remark3() -> SymmetricPolynomial {
    SymmetricPolynomial::from_shifted_p1_coeffs(3, &[256, 819, 833])
}

/// Cubic-in-`P_1` family, one row per k.
const F1_RAW: [(usize, [i64; 4]); 8] = [
    (3, [529, -877, 567, -189]),
    (4, [17950, -36681, 28786, -9510]),
    (5, [15566, -35617, 30136, -9807]),
    (6, [12739, -31508, 28087, -9178]),
    (7, [11754, -30703, 28386, -9354]),
    (8, [11131, -30235, 28687, -9531]),
    (9, [6710, -18690, 18003, -6001]),
    (10, [6573, -18606, 18072, -6024]),
];

/// Family with the additional `P_2` and `P_1 P_2` terms:
/// `(c0, c1, c2, c3, cP2, cP1P2)`.
const F2_RAW: [(usize, [i64; 6]); 8] = [
    (3, [1846, -3225, 2203, -727, 228, -223]),
    (4, [20875, -43615, 33273, -10000, 4867, -4649]),
    (5, [17195, -40385, 33413, -10000, 5366, -5148]),
    (6, [11908, -30242, 26486, -8071, 4310, -4162]),
    (7, [11091, -29705, 27075, -8420, 4322, -4197]),
    (8, [10523, -29241, 27419, -8679, 4232, -4128]),
    (9, [9528, -27175, 26009, -8351, 3857, -3775]),
    (10, [9726, -1513, 712, -1, 4548, -3828]),
];

pub fn table_c_f1(k: usize) -> SymmetricPolynomial {
    let row = F1_RAW
        .iter()
        .find(|(kk, _)| *kk == k)
        .unwrap_or_else(|| panic!("no F1 row for k = {k}"));
    SymmetricPolynomial::from_raw_terms(
        k,
        &[
            (row.1[0], &[]),
            (row.1[1], &[(1, 1)]),
            (row.1[2], &[(1, 2)]),
            (row.1[3], &[(1, 3)]),
        ],
    )
}

pub fn table_c_f2(k: usize) -> SymmetricPolynomial {
    let row = F2_RAW
        .iter()
        .find(|(kk, _)| *kk == k)
        .unwrap_or_else(|| panic!("no F2 row for k = {k}"));
    SymmetricPolynomial::from_raw_terms(
        k,
        &[
            (row.1[0], &[]),
            (row.1[1], &[(1, 1)]),
            (row.1[2], &[(1, 2)]),
            (row.1[3], &[(1, 3)]),
            (row.1[4], &[(2, 1)]),
            (row.1[5], &[(1, 1), (2, 1)]),
        ],
    )
}

pub fn by_name(name: &str) -> Result<SymmetricPolynomial> {
    if name == "headline5" {
        return Ok(headline5());
    }
    if name == "remark3" {
        return Ok(remark3());
    }
    // tableC_F1_k5 / tableC_F2_k10
    if let Some(rest) = name.strip_prefix("tableC_F") {
        let mut it = rest.splitn(2, "_k");
        let fam = it.next().unwrap_or("");
        let k: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Parse(format!("bad preset name {name:?}")))?;
        if !(3..=10).contains(&k) {
            return Err(Error::Parse(format!("preset k out of range in {name:?}")));
        }
        return match fam {
            "1" => Ok(table_c_f1(k)),
            "2" => Ok(table_c_f2(k)),
            _ => Err(Error::Parse(format!("bad preset family in {name:?}"))),
        };
    }
    Err(Error::Parse(format!(
        "unknown preset {name:?}; known: headline5, remark3, tableC_F1_k3..10, tableC_F2_k3..10"
    )))
}

pub fn preset_names() -> Vec<String> {
    let mut names = vec!["headline5".to_string(), "remark3".to_string()];
    for k in 3..=10 {
        names.push(format!("tableC_F1_k{k}"));
        names.push(format!("tableC_F2_k{k}"));
    }
    names
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f1_is_diagonal_f2_is_not() {
        assert!(table_c_f1(5).is_diagonal());
        assert!(!table_c_f2(5).is_diagonal());
    }

    #[test]
    fn preset_lookup() {
        assert!(by_name("headline5").is_ok());
        assert!(by_name("tableC_F2_k10").is_ok());
        assert!(by_name("tableC_F3_k5").is_err());
        assert!(by_name("nope").is_err());
    }

    #[test]
    fn headline_equals_its_own_f_family_shape() {
        // the headline weight is diagonal with degree 2
        let f = headline5();
        assert!(f.is_diagonal());
        assert_eq!(f.degree(), 2);
    }
}
