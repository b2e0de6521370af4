//! Dense univariate polynomial arithmetic over F_p, plus the Hasse
//! polynomial H_p and the root finding it needs.
//!
//! H_p(x) = sum_{i=0}^{(p-1)/2} binom((p-1)/2, i)^2 x^i. Its value at lambda
//! determines the trace of the Legendre curve E_lambda mod p, and its roots
//! are exactly the supersingular Legendre parameters.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{is_prime, mulmod, powmod};
use crate::error::{Error, Result};
use crate::finite_field::{FieldElement, FieldSpec};

/// Largest prime accepted by the Hasse polynomial fast path.
pub const HASSE_PRIME_CAP: u64 = 1 << 20;

const KARATSUBA_THRESHOLD: usize = 512;

/// A polynomial over F_p, constant term first, no trailing zeros (the zero
/// polynomial has an empty coefficient list).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFp {
    p: u64,
    coeffs: Vec<u64>,
}

impl PolyFp {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> PolyFp {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        PolyFp { p, coeffs }
    }

    pub fn zero(p: u64) -> PolyFp {
        PolyFp { p, coeffs: vec![] }
    }

    pub fn constant(p: u64, c: u64) -> PolyFp {
        PolyFp::new(p, vec![c])
    }

    pub fn x(p: u64) -> PolyFp {
        PolyFp { p, coeffs: vec![0, 1] }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &PolyFp) -> PolyFp {
        let p = self.p;
        let mut coeffs = vec![0u64; self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            let s = a + b;
            *c = if s >= p { s - p } else { s };
        }
        PolyFp::new(p, coeffs)
    }

    pub fn sub(&self, other: &PolyFp) -> PolyFp {
        let p = self.p;
        let mut coeffs = vec![0u64; self.coeffs.len().max(other.coeffs.len())];
        for (i, c) in coeffs.iter_mut().enumerate() {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            *c = if a >= b { a - b } else { a + p - b };
        }
        PolyFp::new(p, coeffs)
    }

    pub fn scale(&self, k: u64) -> PolyFp {
        let p = self.p;
        PolyFp::new(p, self.coeffs.iter().map(|&c| mulmod(c, k, p)).collect())
    }

    pub fn mul(&self, other: &PolyFp) -> PolyFp {
        if self.is_zero() || other.is_zero() {
            return PolyFp::zero(self.p);
        }
        let coeffs = mul_slices(self.p, &self.coeffs, &other.coeffs);
        PolyFp::new(self.p, coeffs)
    }

    /// Quotient and remainder; the divisor must be nonzero.
    pub fn divrem(&self, divisor: &PolyFp) -> Result<(PolyFp, PolyFp)> {
        if divisor.is_zero() {
            return Err(Error::ZeroModulus);
        }
        let p = self.p;
        let dd = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= dd {
            return Ok((PolyFp::zero(p), self.clone()));
        }
        let lead_inv = powmod(divisor.coeffs[dd], p - 2, p);
        let mut rem = self.coeffs.clone();
        let mut quo = vec![0u64; rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let c = mulmod(rem[i], lead_inv, p);
            if c == 0 {
                continue;
            }
            quo[i - dd] = c;
            for (j, &dj) in divisor.coeffs.iter().enumerate() {
                let t = mulmod(c, dj, p);
                let cell = &mut rem[i - dd + j];
                *cell = if *cell >= t { *cell - t } else { *cell + p - t };
            }
        }
        rem.truncate(dd);
        Ok((PolyFp::new(p, quo), PolyFp::new(p, rem)))
    }

    pub fn rem(&self, modulus: &PolyFp) -> Result<PolyFp> {
        Ok(self.divrem(modulus)?.1)
    }

    pub fn mulmod(&self, other: &PolyFp, modulus: &PolyFp) -> Result<PolyFp> {
        self.mul(other).rem(modulus)
    }

    /// self^e mod modulus by square-and-multiply.
    pub fn powmod(&self, mut e: u64, modulus: &PolyFp) -> Result<PolyFp> {
        if modulus.is_zero() {
            return Err(Error::ZeroModulus);
        }
        let mut acc = PolyFp::constant(self.p, 1).rem(modulus)?;
        let mut base = self.rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, modulus)?;
            }
            base = base.mulmod(&base, modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn monic(&self) -> PolyFp {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => self.scale(powmod(lc, self.p - 2, self.p)),
        }
    }

    /// Monic greatest common divisor; gcd(a, 0) = monic(a).
    pub fn gcd(&self, other: &PolyFp) -> PolyFp {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Horner evaluation at a residue.
    pub fn eval(&self, x: u64) -> u64 {
        let p = self.p;
        let mut acc = 0u64;
        for &c in self.coeffs.iter().rev() {
            acc = (mulmod(acc, x, p) + c) % p;
        }
        acc
    }

    /// Horner evaluation at an element of an extension of F_p; the spec's
    /// characteristic must equal p.
    pub fn eval_in_field(&self, spec: &FieldSpec, x: &FieldElement) -> Result<FieldElement> {
        if spec.p() != self.p {
            return Err(Error::PrimeMismatch);
        }
        let mut acc = spec.zero();
        for &c in self.coeffs.iter().rev() {
            acc = spec.add(&spec.mul(&acc, x), &spec.from_int(c as i64));
        }
        Ok(acc)
    }
}

fn mul_slices(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.len().min(b.len()) > KARATSUBA_THRESHOLD {
        return karatsuba(p, a, b);
    }
    schoolbook(p, a, b)
}

fn schoolbook(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u128; a.len() + b.len() - 1];
    // p <= 2^20 on the fast path, but cap products defensively for large p
    let chunk = (u128::MAX / (p as u128 * p as u128)) as usize;
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            out[i + j] += ai as u128 * bj as u128;
            if (j + 1) % chunk == 0 {
                out[i + j] %= p as u128;
            }
        }
    }
    out.into_iter().map(|c| (c % p as u128) as u64).collect()
}

fn karatsuba(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let half = a.len().max(b.len()).div_ceil(2);
    if a.len() <= half || b.len() <= half {
        return schoolbook(p, a, b);
    }
    let (a0, a1) = a.split_at(half);
    let (b0, b1) = b.split_at(half);
    let z0 = mul_slices(p, a0, b0);
    let z2 = mul_slices(p, a1, b1);
    let asum = add_slices(p, a0, a1);
    let bsum = add_slices(p, b0, b1);
    let mut z1 = mul_slices(p, &asum, &bsum);
    for (i, z) in z1.iter_mut().enumerate() {
        let mut v = *z;
        if let Some(&c) = z0.get(i) {
            v = if v >= c { v - c } else { v + p - c };
        }
        if let Some(&c) = z2.get(i) {
            v = if v >= c { v - c } else { v + p - c };
        }
        *z = v;
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &c) in z0.iter().enumerate() {
        add_in(p, &mut out[i], c);
    }
    for (i, &c) in z1.iter().enumerate() {
        add_in(p, &mut out[half + i], c);
    }
    for (i, &c) in z2.iter().enumerate() {
        add_in(p, &mut out[2 * half + i], c);
    }
    out
}

fn add_slices(p: u64, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len().max(b.len())];
    for (i, o) in out.iter_mut().enumerate() {
        let s = a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0);
        *o = if s >= p { s - p } else { s };
    }
    out
}

#[inline]
fn add_in(p: u64, cell: &mut u64, c: u64) {
    let s = *cell + c;
    *cell = if s >= p { s - p } else { s };
}

/// The Hasse polynomial H_p: coefficient i is binom((p-1)/2, i)^2 mod p,
/// computed by the recursion c_{i+1} = c_i ((p-1)/2 - i)^2 / (i+1)^2.
pub fn hasse_polynomial(p: u64) -> Result<PolyFp> {
    if p < 3 || p.is_multiple_of(2) || !is_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if p > HASSE_PRIME_CAP {
        return Err(Error::PrimeCap(p));
    }
    let m = (p - 1) / 2;
    let mut coeffs = Vec::with_capacity(m as usize + 1);
    let mut c = 1u64;
    coeffs.push(c);
    for i in 0..m {
        let num = mulmod(m - i, m - i, p);
        let den = mulmod(i + 1, i + 1, p);
        c = mulmod(c, mulmod(num, powmod(den, p - 2, p), p), p);
        coeffs.push(c);
    }
    Ok(PolyFp::new(p, coeffs))
}

/// The exact set of roots of f in F_p.
///
/// First reduces to the product of distinct linear factors
/// g = gcd(f, x^p - x), then splits g with gcd(g, (x+c)^((p-1)/2) - 1) for
/// shifts c drawn from a ChaCha stream seeded by `seed`. The returned set is
/// seed-independent; only the internal splitting path depends on it.
pub fn poly_roots(f: &PolyFp, seed: u64) -> BTreeSet<u64> {
    assert!(!f.is_zero(), "poly_roots requires a nonzero polynomial");
    let p = f.p;
    if f.degree() == Some(0) {
        return BTreeSet::new();
    }
    let x = PolyFp::x(p);
    let xp = x.powmod(p, f).expect("nonzero modulus");
    let g = xp.sub(&x).gcd(f);
    let mut roots = BTreeSet::new();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    split_linear(&g, p, &mut rng, &mut roots);
    roots
}

/// g is monic, squarefree, and splits into distinct linear factors.
fn split_linear(g: &PolyFp, p: u64, rng: &mut ChaCha8Rng, roots: &mut BTreeSet<u64>) {
    match g.degree() {
        None | Some(0) => return,
        Some(1) => {
            // monic x + c0: root is -c0
            roots.insert((p - g.coeffs[0]) % p);
            return;
        }
        _ => {}
    }
    loop {
        let c = rng.gen_range(0..p);
        let shifted = PolyFp::new(p, vec![c, 1]);
        let h = shifted
            .powmod((p - 1) / 2, g)
            .expect("nonzero modulus")
            .sub(&PolyFp::constant(p, 1))
            .gcd(g);
        let d = h.degree().map(|d| d as i64).unwrap_or(-1);
        if d > 0 && (d as usize) < g.degree().unwrap() {
            let (quot, _) = g.divrem(&h).expect("nonzero divisor");
            split_linear(&h, p, rng, roots);
            split_linear(&quot, p, rng, roots);
            return;
        }
    }
}

/// Residue mod p of the Frobenius trace of E_lambda over F_p (e = 1) or
/// F_{p^2} (e = 1 + p), via ((-1)^((p-1)/2) H_p(lambda))^e.
pub fn hasse_trace_residue(spec: &FieldSpec, e: u64, lam: &FieldElement) -> Result<u64> {
    let p = spec.p();
    let expected_e = match spec.n() {
        1 => 1,
        2 => 1 + p,
        _ => return Err(Error::BadExponent),
    };
    if e != expected_e {
        return Err(Error::BadExponent);
    }
    if spec.is_zero(lam) || *lam == spec.one() {
        return Err(Error::SingularLambda);
    }
    let hp = hasse_polynomial(p)?;
    let h = hp.eval_in_field(spec, lam)?;
    let signed = if ((p - 1) / 2) % 2 == 1 { spec.neg(&h) } else { h };
    let v = spec.pow(&signed, e);
    // for e = 1 + p the result is a norm and lands in the prime subfield
    debug_assert!(v.coeffs().iter().skip(1).all(|&c| c == 0));
    Ok(v.coeffs()[0])
}
