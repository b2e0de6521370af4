//! Exact arithmetic in F_{p^n} for odd p, in polynomial-basis coordinates.
//!
//! Elements carry a canonical integer encoding `index(a) = sum coeffs[i] p^i`
//! which is the wire format for elements everywhere in the crate. Field
//! construction is deterministic: the reduction polynomial is always the
//! lexicographically smallest monic irreducible of the requested degree, so
//! element indices are reproducible across runs.

use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::poly_fp::PolyFp;

/// Fields larger than this are rejected outright; all intermediates then fit
/// in 128-bit products.
pub const FIELD_SIZE_CAP: u64 = 1 << 40;

/// Largest q for which per-field sweep tables (chi bitmap, decoded elements)
/// may be materialized.
pub const TABLE_CAP: u64 = 1 << 20;

const MAX_DEG: usize = 64;

/// A description of F_{p^n}: odd prime p, degree n, and the monic reduction
/// polynomial (constant term first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FieldSpec {
    p: u64,
    n: usize,
    q: u64,
    modulus: Vec<u64>,
}

/// An element of F_{p^n}: n coefficients in [0, p), coefficient i multiplying
/// alpha^i where alpha is the residue of the modulus root.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }
}

impl FieldSpec {
    /// Builds F_{p^n} with the lexicographically smallest monic irreducible
    /// modulus of degree n (constant term first in the comparison).
    pub fn new(p: u64, n: usize) -> Result<FieldSpec> {
        if p < 3 || p.is_multiple_of(2) || !arith::is_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        if n < 1 {
            return Err(Error::BadDegree);
        }
        let mut q: u64 = 1;
        for _ in 0..n {
            q = q.checked_mul(p).filter(|&v| v <= FIELD_SIZE_CAP).ok_or(Error::Overflow)?;
        }
        let modulus = if n == 1 {
            vec![0, 1] // degree-1 convention: modulus x, elements are residues
        } else {
            smallest_irreducible(p, n)
        };
        Ok(FieldSpec { p, n, q, modulus })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Reduction polynomial, constant term first, length n+1, monic.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { coeffs: vec![0; self.n] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Embeds an integer via the prime subfield.
    pub fn from_int(&self, k: i64) -> FieldElement {
        let mut coeffs = vec![0; self.n];
        coeffs[0] = k.rem_euclid(self.p as i64) as u64;
        FieldElement { coeffs }
    }

    /// Canonical integer encoding: sum coeffs[i] * p^i.
    pub fn index(&self, a: &FieldElement) -> u64 {
        debug_assert_eq!(a.coeffs.len(), self.n);
        let mut idx = 0u64;
        for &c in a.coeffs.iter().rev() {
            idx = idx * self.p + c;
        }
        idx
    }

    /// Decodes a canonical index back into coefficients.
    pub fn element_from_index(&self, mut idx: u64) -> Result<FieldElement> {
        if idx >= self.q {
            return Err(Error::BadIndex(idx));
        }
        let mut coeffs = vec![0; self.n];
        for c in coeffs.iter_mut() {
            *c = idx % self.p;
            idx /= self.p;
        }
        Ok(FieldElement { coeffs })
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.coeffs.len() != self.n || a.coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| {
                let s = x + y;
                if s >= self.p {
                    s - self.p
                } else {
                    s
                }
            })
            .collect();
        FieldElement { coeffs }
    }

    pub fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| if x >= y { x - y } else { x + self.p - y })
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        self.sub(&self.zero(), a)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let mut out = vec![0u64; self.n];
        self.mul_slices(&a.coeffs, &b.coeffs, &mut out);
        FieldElement { coeffs: out }
    }

    /// Schoolbook product of two coefficient slices reduced by the modulus.
    /// Intermediates stay below 2^86 so u128 accumulation is exact.
    pub(crate) fn mul_slices(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let n = self.n;
        if n == 1 {
            out[0] = arith::mulmod(a[0], b[0], self.p);
            return;
        }
        let mut buf = [0u128; 2 * MAX_DEG];
        let p128 = self.p as u128;
        for (i, &ai) in a.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in b.iter().enumerate() {
                let cell = &mut buf[i + j];
                *cell += ai as u128 * bj as u128;
                if *cell >= p128 << 80 {
                    *cell %= p128;
                }
            }
        }
        // reduce degrees 2n-2 .. n by the monic modulus
        for i in (n..=2 * n - 2).rev() {
            let c = buf[i] % p128;
            if c == 0 {
                continue;
            }
            for j in 0..n {
                let m = self.modulus[j] as u128;
                if m != 0 {
                    buf[i - n + j] += (p128 - m) * c;
                }
            }
        }
        for (o, &cell) in out.iter_mut().zip(buf.iter()) {
            *o = (cell % p128) as u64;
        }
    }

    /// a^e by square-and-multiply; e up to q-2 fits in a u64.
    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn is_zero(&self, a: &FieldElement) -> bool {
        a.coeffs.iter().all(|&c| c == 0)
    }

    /// Multiplicative inverse via a^(q-2).
    pub fn inv(&self, a: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        if self.is_zero(a) {
            return Err(Error::ZeroInverse);
        }
        Ok(self.pow(a, self.q - 2))
    }

    /// Quadratic character by Euler's criterion: 0 on zero, +1 on nonzero
    /// squares, -1 otherwise.
    pub fn quad_char(&self, a: &FieldElement) -> i32 {
        if self.is_zero(a) {
            return 0;
        }
        if self.pow(a, (self.q - 1) / 2) == self.one() {
            1
        } else {
            -1
        }
    }

    /// All q elements in increasing canonical-index order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.q).map(move |i| self.element_from_index(i).unwrap())
    }
}

/// Lexicographically smallest monic irreducible of degree n over F_p,
/// comparing coefficient lists constant term first.
fn smallest_irreducible(p: u64, n: usize) -> Vec<u64> {
    let total = (0..n).fold(1u64, |acc, _| acc * p);
    for idx in 0..total {
        // lexicographic order on (c0, c1, ..., c_{n-1}): c0 varies slowest
        let mut lex = vec![0u64; n + 1];
        let mut rem = idx;
        for k in (0..n).rev() {
            lex[k] = rem % p;
            rem /= p;
        }
        lex[n] = 1;
        let f = PolyFp::new(p, lex.clone());
        if is_irreducible(&f, p, n) {
            return lex;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

/// Full irreducibility test: x^{p^n} = x mod f and gcd(x^{p^{n/l}} - x, f) = 1
/// for every prime l dividing n.
fn is_irreducible(f: &PolyFp, p: u64, n: usize) -> bool {
    let x = PolyFp::x(p);
    let mut h = x.clone(); // x^{p^k} mod f, k = 0
    let mut powers = Vec::with_capacity(n);
    for _ in 0..n {
        h = h.powmod(p, f).expect("nonzero modulus");
        powers.push(h.clone()); // powers[k-1] = x^{p^k} mod f
    }
    if powers[n - 1] != x.rem(f).expect("nonzero modulus") {
        return false;
    }
    let mut m = n;
    let mut primes = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            primes.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    for l in primes {
        let k = n / l;
        let diff = powers[k - 1].sub(&x);
        let g = diff.gcd(f);
        if g.degree() != Some(0) {
            return false;
        }
    }
    true
}

/// A field together with the precomputed sweep tables: the chi bitmap over
/// canonical indices and the decoded coefficient table. Immutable after
/// construction and safe to share across workers.
pub struct Field {
    spec: FieldSpec,
    chi: Vec<i8>,
    elems: Vec<u64>, // flattened: element i occupies elems[i*n .. (i+1)*n]
    minus_three: u64,
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field> {
        if spec.q() > TABLE_CAP {
            return Err(Error::SweepCap(spec.q(), TABLE_CAP));
        }
        let q = spec.q();
        let n = spec.n();
        let p = spec.p();
        let mut elems = vec![0u64; (q as usize) * n];
        {
            // odometer fill: element i+1 increments element i
            let mut cur = vec![0u64; n];
            for i in 0..q as usize {
                elems[i * n..(i + 1) * n].copy_from_slice(&cur);
                for c in cur.iter_mut() {
                    *c += 1;
                    if *c == p {
                        *c = 0;
                    } else {
                        break;
                    }
                }
            }
        }
        let mut chi = vec![-1i8; q as usize];
        chi[0] = 0;
        let mut sq = vec![0u64; n];
        for i in 1..q {
            let a = &elems[(i as usize) * n..(i as usize + 1) * n];
            spec.mul_slices(a, a, &mut sq);
            let idx = encode(&sq, p);
            chi[idx as usize] = 1;
        }
        let minus_three = spec.index(&spec.from_int(-3));
        Ok(Field { spec, chi, elems, minus_three })
    }

    pub fn for_params(p: u64, n: usize) -> Result<Field> {
        Field::new(FieldSpec::new(p, n)?)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u64 {
        self.spec.p
    }

    pub fn n(&self) -> usize {
        self.spec.n
    }

    pub fn q(&self) -> u64 {
        self.spec.q
    }

    /// Canonical index of -3 (which is 0 in characteristic 3).
    pub fn minus_three(&self) -> u64 {
        self.minus_three
    }

    /// Quadratic character by table lookup.
    #[inline]
    pub fn chi(&self, idx: u64) -> i8 {
        self.chi[idx as usize]
    }

    #[inline]
    pub fn digits(&self, idx: u64) -> &[u64] {
        let n = self.spec.n;
        &self.elems[(idx as usize) * n..(idx as usize) * n + n]
    }

    pub fn add_idx(&self, i: u64, j: u64) -> u64 {
        let p = self.spec.p;
        let (a, b) = (self.digits(i), self.digits(j));
        let mut idx = 0u64;
        for k in (0..self.spec.n).rev() {
            let s = a[k] + b[k];
            idx = idx * p + if s >= p { s - p } else { s };
        }
        idx
    }

    pub fn sub_idx(&self, i: u64, j: u64) -> u64 {
        let p = self.spec.p;
        let (a, b) = (self.digits(i), self.digits(j));
        let mut idx = 0u64;
        for k in (0..self.spec.n).rev() {
            let s = if a[k] >= b[k] { a[k] - b[k] } else { a[k] + p - b[k] };
            idx = idx * p + s;
        }
        idx
    }

    /// Index of x - 1: only the constant digit moves.
    #[inline]
    pub fn dec_idx(&self, i: u64) -> u64 {
        if self.digits(i)[0] == 0 {
            i + self.spec.p - 1
        } else {
            i - 1
        }
    }

    pub fn mul_idx(&self, i: u64, j: u64) -> u64 {
        if i == 0 || j == 0 {
            return 0;
        }
        let n = self.spec.n;
        if n == 1 {
            return arith::mulmod(i, j, self.spec.p);
        }
        let mut out = [0u64; MAX_DEG];
        let (a, b) = (self.digits(i), self.digits(j));
        self.spec.mul_slices(a, b, &mut out[..n]);
        encode(&out[..n], self.spec.p)
    }

    pub fn index_of_int(&self, k: i64) -> u64 {
        self.spec.index(&self.spec.from_int(k))
    }
}

fn encode(coeffs: &[u64], p: u64) -> u64 {
    let mut idx = 0u64;
    for &c in coeffs.iter().rev() {
        idx = idx * p + c;
    }
    idx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn make_field_examples() {
        let f7 = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f7.modulus(), &[0, 1]);
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.modulus(), &[1, 0, 1]); // x^2 + 1, no root mod 3
        for r in 0..3u64 {
            assert_ne!((r * r + 1) % 3, 0);
        }
        let f125 = FieldSpec::new(5, 3).unwrap();
        assert_eq!(f125.modulus().len(), 4);
        assert_eq!(f125.modulus()[3], 1);
        // independent oracle: exhaustive lexicographic scan for the smallest
        // monic cubic over F_5 with no root and not a product of an
        // irreducible quadratic and a linear (i.e. truly irreducible)
        let expected = scan_smallest_irreducible_cubic(5);
        assert_eq!(f125.modulus(), expected.as_slice());
        // no roots
        for r in 0..5u64 {
            let v = (f125.modulus()[0] + f125.modulus()[1] * r + f125.modulus()[2] * r * r
                + r * r * r)
                % 5;
            assert_ne!(v, 0);
        }
    }

    /// Brute-force oracle independent of the library's polynomial machinery:
    /// a monic cubic over F_p is irreducible iff it has no root in F_p.
    fn scan_smallest_irreducible_cubic(p: u64) -> Vec<u64> {
        for c0 in 0..p {
            for c1 in 0..p {
                for c2 in 0..p {
                    let has_root =
                        (0..p).any(|r| (c0 + c1 * r + c2 * r * r + r * r * r) % p == 0);
                    if !has_root {
                        return vec![c0, c1, c2, 1];
                    }
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn make_field_errors() {
        assert_eq!(FieldSpec::new(9, 1).unwrap_err(), Error::NotOddPrime(9));
        assert_eq!(FieldSpec::new(2, 5).unwrap_err(), Error::NotOddPrime(2));
        assert_eq!(FieldSpec::new(3, 0).unwrap_err(), Error::BadDegree);
        assert_eq!(FieldSpec::new(3, 26).unwrap_err(), Error::Overflow);
    }

    #[test]
    fn make_field_deterministic() {
        assert_eq!(FieldSpec::new(3, 4).unwrap(), FieldSpec::new(3, 4).unwrap());
        assert_eq!(FieldSpec::new(7, 2).unwrap(), FieldSpec::new(7, 2).unwrap());
    }

    #[test]
    fn arithmetic_examples() {
        let f7 = FieldSpec::new(7, 1).unwrap();
        let three = f7.from_int(3);
        let inv3 = f7.inv(&three).unwrap();
        assert_eq!(f7.index(&inv3), 5); // 3 * 5 = 15 = 1 mod 7

        let f9 = FieldSpec::new(3, 2).unwrap();
        let alpha = f9.element_from_index(3).unwrap(); // coeffs [0,1]
        assert_eq!(alpha.coeffs(), &[0, 1]);
        let sq = f9.mul(&alpha, &alpha);
        assert_eq!(sq.coeffs(), &[2, 0]); // alpha^2 = -1
    }

    #[test]
    fn lagrange_property() {
        for (p, n) in [(3u64, 2usize), (5, 2), (7, 1), (11, 1), (3, 3)] {
            let f = FieldSpec::new(p, n).unwrap();
            for a in f.elements().skip(1) {
                assert_eq!(f.pow(&a, f.q() - 1), f.one());
            }
        }
    }

    #[test]
    fn quad_char_examples() {
        let f7 = FieldSpec::new(7, 1).unwrap();
        assert_eq!(f7.quad_char(&f7.from_int(3)), -1); // 3^3 = 27 = -1 mod 7
        assert_eq!(f7.quad_char(&f7.one()), 1);
        assert_eq!(f7.quad_char(&f7.zero()), 0);
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.quad_char(&f9.from_int(-1)), 1); // (q-1)/2 = 4 even
    }

    #[test]
    fn chi_table_agrees_with_euler() {
        for (p, n) in [(3u64, 2usize), (5, 1), (7, 1), (3, 3), (13, 1), (5, 2)] {
            let field = Field::for_params(p, n).unwrap();
            for a in field.spec().elements() {
                let idx = field.spec().index(&a);
                assert_eq!(field.chi(idx) as i32, field.spec().quad_char(&a));
            }
        }
    }

    #[test]
    fn chi_multiplicative_and_balanced() {
        for (p, n) in [(3u64, 2usize), (7, 1), (5, 2), (17, 1), (3, 4)] {
            let field = Field::for_params(p, n).unwrap();
            let q = field.q();
            let plus: u64 = (1..q).filter(|&i| field.chi(i) == 1).count() as u64;
            assert_eq!(plus, (q - 1) / 2);
            for a in 1..q {
                for b in 1..q {
                    let ab = field.mul_idx(a, b);
                    assert_eq!(field.chi(ab), field.chi(a) * field.chi(b));
                }
            }
        }
    }

    #[test]
    fn frobenius_is_field_automorphism() {
        for (p, n) in [(3u64, 2usize), (5, 2), (3, 3), (7, 2)] {
            let f = FieldSpec::new(p, n).unwrap();
            let frob = |a: &FieldElement| f.pow(a, p);
            for a in f.elements() {
                // a^{p^n} = a
                assert_eq!(f.pow(&a, f.q()), a);
                for b in f.elements().step_by(3) {
                    assert_eq!(frob(&f.add(&a, &b)), f.add(&frob(&a), &frob(&b)));
                    assert_eq!(frob(&f.mul(&a, &b)), f.mul(&frob(&a), &frob(&b)));
                }
            }
        }
    }

    #[test]
    fn index_roundtrip_and_enumeration() {
        for (p, n) in [(3u64, 2usize), (5, 3), (19, 1)] {
            let f = FieldSpec::new(p, n).unwrap();
            let mut seen = 0u64;
            for (i, a) in f.elements().enumerate() {
                assert_eq!(f.index(&a), i as u64);
                seen += 1;
            }
            assert_eq!(seen, f.q());
        }
        let f9 = FieldSpec::new(3, 2).unwrap();
        assert_eq!(f9.element_from_index(3).unwrap().coeffs(), &[0, 1]);
    }

    #[test]
    fn index_ops_match_element_ops() {
        let field = Field::for_params(3, 3).unwrap();
        let spec = field.spec();
        for i in 0..field.q() {
            for j in 0..field.q() {
                let a = spec.element_from_index(i).unwrap();
                let b = spec.element_from_index(j).unwrap();
                assert_eq!(field.add_idx(i, j), spec.index(&spec.add(&a, &b)));
                assert_eq!(field.sub_idx(i, j), spec.index(&spec.sub(&a, &b)));
                assert_eq!(field.mul_idx(i, j), spec.index(&spec.mul(&a, &b)));
            }
            assert_eq!(field.dec_idx(i), field.sub_idx(i, 1));
        }
    }
}
