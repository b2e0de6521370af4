//! Point counting for Legendre curves E_lambda: y^2 = x(x-1)(x-lambda),
//! their quadratic twists, and the genus-3 plane quartics
//! x^4 + y^4 + z^4 = (lambda+1)(x^2 y^2 + y^2 z^2 + z^2 x^2),
//! tied together by the identity #C = 3 #E^(lambda+3) - 2q - 2.
//!
//! Counting is character-sum based: after the one-time chi table the cost is
//! O(q) per curve and no point arithmetic is ever needed. Everything here is
//! exact integer arithmetic.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finite_field::Field;

/// Default budget for the O(q^2) quartic verification sweep.
pub const QUARTIC_CAP_DEFAULT: u64 = 1 << 13;

/// One counted curve: (q, lambda, twist, point count, trace). For elliptic
/// records trace = q + 1 - count; for quartic records it is the jacobian
/// trace 3t'.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct CurveCount {
    pub q: u64,
    pub lambda: u64,
    pub twist: u64,
    pub count: u64,
    pub trace: i64,
}

fn check_lambda(field: &Field, lambda: u64) -> Result<()> {
    if lambda >= field.q() {
        return Err(Error::BadIndex(lambda));
    }
    if lambda == 0 || lambda == 1 {
        return Err(Error::SingularLambda);
    }
    Ok(())
}

/// Exact number of projective points of E_lambda over F_q, the point at
/// infinity included: q + 1 + sum_x chi(x (x-1) (x-lambda)).
pub fn legendre_count(field: &Field, lambda: u64) -> Result<u64> {
    check_lambda(field, lambda)?;
    let q = field.q();
    let mut sum: i64 = 0;
    if field.n() == 1 {
        // prime field: indices are residues
        let p = q;
        for x in 0..p {
            let a = field.chi(x) as i64;
            if a == 0 {
                continue;
            }
            let x1 = if x == 0 { p - 1 } else { x - 1 };
            let xl = if x >= lambda { x - lambda } else { x + p - lambda };
            sum += a * field.chi(x1) as i64 * field.chi(xl) as i64;
        }
    } else {
        // chi is multiplicative, so chi(x(x-1)(x-lambda)) splits into three
        // table lookups per x
        for x in 0..q {
            let a = field.chi(x) as i64;
            if a == 0 {
                continue;
            }
            let x1 = field.dec_idx(x);
            let xl = field.sub_idx(x, lambda);
            sum += a * field.chi(x1) as i64 * field.chi(xl) as i64;
        }
    }
    Ok((q as i64 + 1 + sum) as u64)
}

/// Point count of the quadratic twist d y^2 = x(x-1)(x-lambda):
/// equals #E_lambda when d is a square, else 2q + 2 - #E_lambda.
pub fn twisted_count(field: &Field, lambda: u64, d: u64) -> Result<u64> {
    if d == 0 {
        return Err(Error::ZeroTwist);
    }
    if d >= field.q() {
        return Err(Error::BadIndex(d));
    }
    let n = legendre_count(field, lambda)?;
    Ok(if field.chi(d) == 1 { n } else { 2 * field.q() + 2 - n })
}

/// Twist of E_lambda by lambda + 3, the member of the paper's family.
/// lambda = -3 is excluded (zero twist; in characteristic 3 this is
/// lambda = 0, which is already singular).
pub fn family_count(field: &Field, lambda: u64) -> Result<u64> {
    check_quartic_lambda(field, lambda)?;
    let d = field.add_idx(lambda, field.index_of_int(3));
    twisted_count(field, lambda, d)
}

fn check_quartic_lambda(field: &Field, lambda: u64) -> Result<()> {
    if lambda >= field.q() {
        return Err(Error::BadIndex(lambda));
    }
    if lambda == 0 || lambda == 1 || lambda == field.minus_three() {
        return Err(Error::SingularQuartic);
    }
    Ok(())
}

/// Exact count of projective points on the quartic C_lambda by a full P^2
/// sweep: (x, y, 1) over q^2 pairs, then (x, 1, 0) over q values, then
/// [1:0:0]. Verification oracle only; O(q^2).
pub fn quartic_count(field: &Field, lambda: u64) -> Result<u64> {
    quartic_count_capped(field, lambda, QUARTIC_CAP_DEFAULT)
}

pub fn quartic_count_capped(field: &Field, lambda: u64, cap: u64) -> Result<u64> {
    check_quartic_lambda(field, lambda)?;
    let q = field.q();
    if q > cap {
        return Err(Error::QuarticCap(q, cap));
    }
    let lp1 = field.add_idx(lambda, 1);
    let mut count = 0u64;
    if field.n() == 1 {
        let p = q;
        let sq: Vec<u64> = (0..p).map(|x| x * x % p).collect();
        let qu: Vec<u64> = (0..p).map(|x| sq[x as usize] * sq[x as usize] % p).collect();
        // affine chart z = 1
        for x in 0..p as usize {
            let x2 = sq[x];
            let x4 = qu[x];
            for y in 0..p as usize {
                let lhs = (x4 + qu[y] + 1) % p;
                let mid = (x2 * sq[y] + sq[y] + x2) % p;
                if lhs == lp1 * mid % p {
                    count += 1;
                }
            }
        }
        // line at infinity, z = 0, y = 1
        for x in 0..p as usize {
            if (qu[x] + 1) % p == lp1 * sq[x] % p {
                count += 1;
            }
        }
        // [1:0:0]: 1 = 0 never holds, checked for completeness
        if 1 % p == 0 {
            count += 1;
        }
    } else {
        let sq: Vec<u64> = (0..q).map(|x| field.mul_idx(x, x)).collect();
        let qu: Vec<u64> = (0..q).map(|x| field.mul_idx(sq[x as usize], sq[x as usize])).collect();
        for x in 0..q as usize {
            let x2 = sq[x];
            let x4 = qu[x];
            for y in 0..q as usize {
                let lhs = field.add_idx(field.add_idx(x4, qu[y]), 1);
                let mid = field.add_idx(field.add_idx(field.mul_idx(x2, sq[y]), sq[y]), x2);
                if lhs == field.mul_idx(lp1, mid) {
                    count += 1;
                }
            }
        }
        for x in 0..q as usize {
            let lhs = field.add_idx(qu[x], 1);
            if lhs == field.mul_idx(lp1, sq[x]) {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// The paper's identity: #C_lambda = 3 #E_lambda^(lambda+3) - 2q - 2.
/// Scales to any q the elliptic sweep can handle.
pub fn predicted_quartic_count(field: &Field, lambda: u64) -> Result<u64> {
    let e = family_count(field, lambda)?;
    let v = 3 * e as i128 - 2 * field.q() as i128 - 2;
    debug_assert!(v >= 0, "the jacobian identity forces a nonnegative count");
    Ok(v as u64)
}

/// Trace of Frobenius from a point count: q + 1 - count.
pub fn frobenius_trace(q: u64, count: u64) -> i64 {
    q as i64 + 1 - count as i64
}

/// Assembles the CLI record for an elliptic family member.
pub fn curve_record(field: &Field, lambda: u64, twist: u64, count: u64) -> CurveCount {
    CurveCount { q: field.q(), lambda, twist, count, trace: frobenius_trace(field.q(), count) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{isqrt, odd_prime_power};
    use crate::finite_field::Field;

    /// Independent oracle: count points of y^2 = x(x-1)(x-lambda) by
    /// enumerating all (x, y) pairs, plus the point at infinity. Never
    /// touches the quadratic character.
    fn legendre_count_bruteforce(field: &Field, lambda: u64) -> u64 {
        let spec = field.spec();
        let lam = spec.element_from_index(lambda).unwrap();
        let mut count = 1u64; // infinity
        for x in spec.elements() {
            let fx = spec.mul(
                &spec.mul(&x, &spec.sub(&x, &spec.one())),
                &spec.sub(&x, &lam),
            );
            for y in spec.elements() {
                if spec.mul(&y, &y) == fx {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn legendre_examples() {
        let f7 = Field::for_params(7, 1).unwrap();
        assert_eq!(legendre_count(&f7, 3).unwrap(), 4);
        let f5 = Field::for_params(5, 1).unwrap();
        assert_eq!(legendre_count(&f5, 2).unwrap(), 8);
        let f3 = Field::for_params(3, 1).unwrap();
        assert_eq!(legendre_count(&f3, 2).unwrap(), 4); // supersingular, q+1
        assert_eq!(legendre_count(&f3, 0).unwrap_err(), Error::SingularLambda);
        assert_eq!(legendre_count(&f3, 1).unwrap_err(), Error::SingularLambda);
    }

    #[test]
    fn legendre_matches_bruteforce() {
        for (p, n) in [(3u64, 1usize), (5, 1), (7, 1), (11, 1), (3, 2), (13, 1), (5, 2), (3, 3)] {
            let field = Field::for_params(p, n).unwrap();
            for lambda in 2..field.q() {
                assert_eq!(
                    legendre_count(&field, lambda).unwrap(),
                    legendre_count_bruteforce(&field, lambda),
                    "q={} lambda={lambda}",
                    field.q()
                );
            }
        }
    }

    #[test]
    fn counts_divisible_by_four_and_hasse() {
        for q in crate::arith::odd_prime_powers(400) {
            let (p, n) = odd_prime_power(q).unwrap();
            let field = Field::for_params(p, n as usize).unwrap();
            let m = isqrt(4 * q);
            for lambda in 2..q {
                let c = legendre_count(&field, lambda).unwrap();
                assert_eq!(c % 4, 0, "full 2-torsion forces 4 | #E, q={q}");
                assert!(frobenius_trace(q, c).unsigned_abs() <= m, "Hasse bound, q={q}");
            }
        }
    }

    #[test]
    fn twist_examples() {
        let f7 = Field::for_params(7, 1).unwrap();
        assert_eq!(twisted_count(&f7, 3, 6).unwrap(), 12); // chi_7(6) = -1
        assert_eq!(twisted_count(&f7, 3, 2).unwrap(), 4); // 2 is a square mod 7
        let f5 = Field::for_params(5, 1).unwrap();
        assert_eq!(twisted_count(&f5, 4, 2).unwrap(), 4); // chi_5(2) = -1, 12 - 8
        assert_eq!(twisted_count(&f5, 4, 0).unwrap_err(), Error::ZeroTwist);
    }

    #[test]
    fn quartic_examples() {
        let f7 = Field::for_params(7, 1).unwrap();
        assert_eq!(quartic_count(&f7, 3).unwrap(), 20);
        assert_eq!(predicted_quartic_count(&f7, 3).unwrap(), 20); // 3*12 - 16
        let f3 = Field::for_params(3, 1).unwrap();
        assert_eq!(quartic_count(&f3, 2).unwrap(), 4); // 3*4 - 8
        let f5 = Field::for_params(5, 1).unwrap();
        assert_eq!(predicted_quartic_count(&f5, 4).unwrap(), 0); // 3*4 - 12
        let f9 = Field::for_params(3, 2).unwrap();
        let minus_one = f9.index_of_int(-1);
        assert_eq!(quartic_count(&f9, minus_one).unwrap(), 28); // Fermat quartic
        assert_eq!(predicted_quartic_count(&f9, minus_one).unwrap(), 28);
    }

    #[test]
    fn quartic_excluded_lambdas() {
        let f7 = Field::for_params(7, 1).unwrap();
        for bad in [0u64, 1, 4] {
            // 4 = -3 mod 7
            assert_eq!(quartic_count(&f7, bad).unwrap_err(), Error::SingularQuartic);
        }
        let f3 = Field::for_params(3, 1).unwrap();
        // in characteristic 3, -3 = 0: only lambda in {0, 1} is excluded
        assert!(quartic_count(&f3, 2).is_ok());
    }

    #[test]
    fn central_identity_small_fields() {
        for (p, n) in [(3u64, 1usize), (5, 1), (7, 1), (3, 2), (11, 1), (13, 1)] {
            let field = Field::for_params(p, n).unwrap();
            let m3 = field.minus_three();
            for lambda in 2..field.q() {
                if lambda == m3 {
                    continue;
                }
                assert_eq!(
                    quartic_count(&field, lambda).unwrap(),
                    predicted_quartic_count(&field, lambda).unwrap(),
                    "q={} lambda={lambda}",
                    field.q()
                );
            }
        }
    }

    #[test]
    fn automorphism_invariance() {
        // the solution set in P^2 is closed under sigma: (x,y,z) -> (y,z,x)
        // and tau: (x,y,z) -> (y,-x,z)
        for (p, n) in [(3u64, 1usize), (5, 1), (7, 1), (3, 2), (5, 2), (7, 2)] {
            let field = Field::for_params(p, n).unwrap();
            let spec = field.spec();
            let m3 = field.minus_three();
            for lambda in (2..field.q()).take(6) {
                if lambda == m3 {
                    continue;
                }
                let lam = spec.element_from_index(lambda).unwrap();
                let lp1 = spec.add(&lam, &spec.one());
                let on_curve = |x: &crate::finite_field::FieldElement,
                                y: &crate::finite_field::FieldElement,
                                z: &crate::finite_field::FieldElement| {
                    let x2 = spec.mul(x, x);
                    let y2 = spec.mul(y, y);
                    let z2 = spec.mul(z, z);
                    let lhs = spec.add(
                        &spec.add(&spec.mul(&x2, &x2), &spec.mul(&y2, &y2)),
                        &spec.mul(&z2, &z2),
                    );
                    let mid = spec.add(
                        &spec.add(&spec.mul(&x2, &y2), &spec.mul(&y2, &z2)),
                        &spec.mul(&z2, &x2),
                    );
                    lhs == spec.mul(&lp1, &mid)
                };
                for x in spec.elements() {
                    for y in spec.elements() {
                        for z in [spec.zero(), spec.one()] {
                            if on_curve(&x, &y, &z) {
                                assert!(on_curve(&y, &z, &x), "sigma");
                                assert!(on_curve(&y, &spec.neg(&x), &z), "tau");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn char3_family_is_inverse_legendre() {
        // lambda + 3 = lambda in characteristic 3, and E_lambda^(lambda) is
        // isomorphic to E_{1/lambda}
        for n in 1..=6usize {
            let field = Field::for_params(3, n).unwrap();
            let spec = field.spec();
            for lambda in 2..field.q() {
                let lam = spec.element_from_index(lambda).unwrap();
                let inv = spec.index(&spec.inv(&lam).unwrap());
                assert_eq!(
                    family_count(&field, lambda).unwrap(),
                    legendre_count(&field, inv).unwrap(),
                    "q={} lambda={lambda}",
                    field.q()
                );
            }
        }
    }
}
