//! Closed-form bounds and achievability predicates: the Hasse-Weil-Serre
//! bound, Deuring's N_q(1), Serre's N_q(2), the Deuring-Waterhouse
//! classification of admissible group orders, the Legendre achievability
//! criterion, the Legendre-form test for a cubic with distinct rational
//! roots, and the characteristic-3 gap guarantee.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::arith::{gcd, isqrt, odd_prime_power, prime_power};
use crate::error::{Error, Result};
use crate::finite_field::{FieldElement, FieldSpec};

/// floor(2 sqrt(q)), computed as the exact integer square root of 4q.
pub fn floor_two_sqrt(q: u64) -> u64 {
    isqrt(4 * q)
}

/// Hasse-Weil-Serre bound N_q(g) <= q + 1 + g [2 sqrt(q)].
pub fn hws_bound(q: u64, g: u64) -> u64 {
    q + 1 + g * floor_two_sqrt(q)
}

/// Closed-form bounds for one field size.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct BoundsRecord {
    pub q: u64,
    pub m: u64,
    pub hws_g3: u64,
    pub nq1: u64,
    pub nq2: u64,
}

pub fn bounds_record(q: u64) -> Result<BoundsRecord> {
    Ok(BoundsRecord { q, m: floor_two_sqrt(q), hws_g3: hws_bound(q, 3), nq1: nq1(q)?, nq2: nq2(q)? })
}

/// Deuring's N_q(1): q + 1 + m, except q + m when q = p^n with n >= 3 odd
/// and p | m.
pub fn nq1(q: u64) -> Result<u64> {
    let (p, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let m = floor_two_sqrt(q);
    let exceptional = n >= 3 && n % 2 == 1 && m.is_multiple_of(p);
    Ok(q + 1 + m - u64::from(exceptional))
}

/// Serre's N_q(2), full case analysis.
pub fn nq2(q: u64) -> Result<u64> {
    let (_, n) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let m = floor_two_sqrt(q);
    match q {
        4 => return Ok(10),
        9 => return Ok(20),
        _ => {}
    }
    if n % 2 == 0 {
        return Ok(q + 1 + 2 * m); // q a square, q != 4, 9
    }
    let special = gcd(q, m) > 1 || is_special_form(q);
    if !special {
        return Ok(q + 1 + 2 * m);
    }
    if golden_ratio_test(q, m) {
        Ok(q + 2 * m)
    } else {
        Ok(q + 2 * m - 1)
    }
}

/// q of the form k^2 + 1, k^2 + k + 1 or k^2 + k + 2.
fn is_special_form(q: u64) -> bool {
    let k = isqrt(q);
    for c in k.saturating_sub(2)..=k + 1 {
        if c * c + 1 == q || c * c + c + 1 == q || c * c + c + 2 == q {
            return true;
        }
    }
    false
}

/// Exact integer test for 2 sqrt(q) - m >= (sqrt(5) - 1) / 2, where
/// m = [2 sqrt(q)] and q is not a perfect square of a rational in the
/// branches that reach here.
///
/// Derivation, with s = 2 sqrt(q):
///   s - m >= (sqrt 5 - 1)/2
///   <=> 2s - 2m + 1 >= sqrt 5            (both sides positive)
///   <=> 4 s^2 + (2m-1)^2 - 2 (2m-1) 2s >= 5
///   <=> 16q + (2m-1)^2 - 5 >= 4 (2m-1) s
///   <=> A >= 0  and  A^2 >= 16 (2m-1)^2 s^2 = 64 q (2m-1)^2
/// with A = 16q + (2m-1)^2 - 5. Equality never occurs because sqrt 5 and
/// (for non-square q) sqrt q are irrational, so >= and > agree.
fn golden_ratio_test(q: u64, m: u64) -> bool {
    let a = 16 * q as i128 + (2 * m as i128 - 1).pow(2) - 5;
    if a < 0 {
        return false;
    }
    a * a >= 64 * q as i128 * (2 * m as i128 - 1).pow(2)
}

/// The set of orders of elliptic curves over F_q (odd q): {q + 1 - t} over
/// the admissible Frobenius traces of the Deuring-Waterhouse classification.
pub fn admissible_group_orders(q: u64) -> Result<BTreeSet<u64>> {
    let (p, n) = odd_prime_power(q).ok_or(Error::NotOddPrimePower(q))?;
    let m = floor_two_sqrt(q);
    let mut traces: BTreeSet<i64> = BTreeSet::new();
    // (a) gcd(t, p) = 1 with t^2 <= 4q
    for t in 0..=m as i64 {
        if !(t as u64).is_multiple_of(p) {
            traces.insert(t);
            traces.insert(-t);
        }
    }
    let half_pow = |k: u32| (0..k).fold(1u64, |acc, _| acc * p);
    if n % 2 == 0 {
        let r = half_pow(n / 2);
        // (b) t = +-2 p^{n/2}
        traces.insert(2 * r as i64);
        traces.insert(-2 * (r as i64));
        // (c) p != 1 mod 3: t = +-p^{n/2}
        if p % 3 != 1 {
            traces.insert(r as i64);
            traces.insert(-(r as i64));
        }
        // (e) p != 1 mod 4: t = 0
        if p % 4 != 1 {
            traces.insert(0);
        }
    } else {
        // (f) t = 0
        traces.insert(0);
        // (d) p = 3: t = +-3^{(n+1)/2}
        if p == 3 {
            let r = half_pow(n.div_ceil(2));
            traces.insert(r as i64);
            traces.insert(-(r as i64));
        }
    }
    Ok(traces.into_iter().map(|t| (q as i64 + 1 - t) as u64).collect())
}

/// Why a target count is or is not reachable by a Legendre curve.
#[derive(Debug, Clone, Copy, Serialize, PartialEq, Eq)]
#[serde(rename_all = "kebab-case")]
pub enum Reason {
    #[serde(rename = "not-mult-4")]
    NotMult4,
    OutsideHasse,
    TraceInadmissible,
    SquareException,
    Ok,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct AchievabilityVerdict {
    pub q: u64,
    pub target_count: u64,
    pub achievable: bool,
    pub reason: Reason,
}

/// Whether some Legendre curve over F_q has exactly `target` points:
/// target must be a multiple of 4, an admissible group order, and not the
/// square exception q = r^2 with r = 1 mod 4 (r possibly negative) and
/// target = q + 1 + 2r. First failing check wins.
pub fn legendre_achievable(q: u64, target: u64) -> Result<AchievabilityVerdict> {
    odd_prime_power(q).ok_or(Error::NotOddPrimePower(q))?;
    let verdict = |achievable, reason| {
        Ok(AchievabilityVerdict { q, target_count: target, achievable, reason })
    };
    if !target.is_multiple_of(4) {
        return verdict(false, Reason::NotMult4);
    }
    let t = q as i64 + 1 - target as i64;
    if t * t > 4 * q as i64 {
        return verdict(false, Reason::OutsideHasse);
    }
    if !admissible_group_orders(q)?.contains(&target) {
        return verdict(false, Reason::TraceInadmissible);
    }
    let r0 = isqrt(q);
    if r0 * r0 == q {
        // q odd square: exactly one of +-r0 is = 1 mod 4
        let r: i64 = if r0 % 4 == 1 { r0 as i64 } else { -(r0 as i64) };
        if target as i64 == q as i64 + 1 + 2 * r {
            return verdict(false, Reason::SquareException);
        }
    }
    verdict(true, Reason::Ok)
}

/// Legendre form of y^2 = (x-a)(x-b)(x-c) with a, b, c distinct rational
/// abscissas: tries the six orderings (u, v, w), in lexicographic order of
/// their canonical index triples, for one with chi(u - v) = +1, and returns
/// lambda = (w - v)/(u - v). None when no difference (either sign) is a
/// square.
pub fn legendre_parameter(
    spec: &FieldSpec,
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
) -> Result<Option<FieldElement>> {
    if a == b || b == c || a == c {
        return Err(Error::NonDistinct);
    }
    let mut orderings: Vec<[&FieldElement; 3]> = vec![
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ];
    orderings.sort_by_key(|[u, v, w]| (spec.index(u), spec.index(v), spec.index(w)));
    for [u, v, w] in orderings {
        let d = spec.sub(u, v);
        if spec.quad_char(&d) == 1 {
            let lambda = spec.mul(&spec.sub(w, v), &spec.inv(&d)?);
            return Ok(Some(lambda));
        }
    }
    Ok(None)
}

/// Guaranteed gap between the Hasse-Weil-Serre bound and N_{3^n}(3):
/// 0 when n = 2 mod 4, 12 when n = 0 mod 4, 21 when n odd.
pub fn char3_guaranteed_gap(n: u32) -> u64 {
    if n % 2 == 1 {
        21
    } else if n % 4 == 2 {
        0
    } else {
        12
    }
}
