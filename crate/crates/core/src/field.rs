//! Exact arithmetic in GF(p^e).
//!
//! Elements are stored as a single integer "code" holding the little-endian
//! coefficient vector of the polynomial representative in base p: the element
//! `c_0 + c_1 x + ... + c_{e-1} x^{e-1}` has code `c_0 + c_1 p + ... `. The
//! arithmetic always goes through the coefficients (there are no log tables),
//! with bit-level shortcuts for prime fields and for characteristic 2.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Element code inside a [`FieldSpec`].
pub type Code = u32;

#[derive(Debug)]
struct FieldInner {
    p: u32,
    degree: u32,
    /// Monic, lowest degree first, length `degree + 1`.
    modulus: Vec<u32>,
    order: u64,
    /// Modulus as a bit polynomial when p = 2.
    modulus_bits: u64,
}

/// A finite field GF(p^e) given by an explicit irreducible modulus.
///
/// Cloning is cheap; equality compares `(p, e, modulus)`.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldInner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl std::hash::Hash for FieldSpec {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}) mod {}", self.0.p, self.0.degree, self.modulus_digits())
    }
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Writes `n` in base `p` as exactly `len` little-endian digits.
fn digits(mut n: u64, p: u32, len: usize) -> Vec<u32> {
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push((n % p as u64) as u32);
        n /= p as u64;
    }
    out
}

fn undigits(coeffs: &[u32], p: u32) -> u64 {
    coeffs.iter().rev().fold(0u64, |acc, &c| acc * p as u64 + c as u64)
}

/// Remainder of `a` modulo monic `m` over GF(p). Both lowest degree first.
fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    let dm = m.len() - 1;
    while r.len() > dm {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dm;
        if lead != 0 {
            for (i, &mc) in m.iter().enumerate() {
                let sub = (lead as u64 * mc as u64 % p as u64) as u32;
                r[shift + i] = (r[shift + i] + p - sub) % p;
            }
        }
        r.pop();
    }
    r
}

/// Trial division of monic `f` by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg <= 1 {
        return deg == 1;
    }
    if p == 2 {
        let fb = undigits(f, 2);
        for d in 1..=deg / 2 {
            for low in 0..(1u64 << d) {
                let g = (1u64 << d) | low;
                if bit_rem(fb, g) == 0 {
                    return false;
                }
            }
        }
        return true;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(low, p, d);
            g.push(1);
            if poly_rem(f, &g, p).iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn bit_degree(a: u64) -> i32 {
    63 - a.leading_zeros() as i32
}

fn bit_rem(mut a: u64, m: u64) -> u64 {
    let dm = bit_degree(m);
    while a != 0 && bit_degree(a) >= dm {
        a ^= m << (bit_degree(a) - dm);
    }
    a
}

fn clmul(a: u64, b: u64) -> u64 {
    let mut r = 0u64;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        a <<= 1;
        b >>= 1;
    }
    r
}

impl FieldSpec {
    /// Builds GF(p^e). Without an explicit modulus the least irreducible monic
    /// polynomial of degree e is used, where polynomials are ordered by their
    /// coefficient vectors read as base-p integers (highest degree most
    /// significant). For e = 1 this is `x`.
    pub fn new(p: u32, e: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrimeCharacteristic(p as u64));
        }
        if e == 0 {
            return Err(Error::OutOfRange("field degree must be at least 1".into()));
        }
        let order = (p as u64)
            .checked_pow(e)
            .filter(|&o| o <= u32::MAX as u64 + 1)
            .ok_or(Error::FieldTooLarge(p, e))?;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != e as usize + 1 || *m.last().unwrap() != 1 {
                    return Err(Error::InvalidModulus(format!(
                        "expected a monic polynomial of degree {e}"
                    )));
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::InvalidModulus(format!("coefficient not below {p}")));
                }
                if e == 1 && m[0] != 0 {
                    return Err(Error::InvalidModulus("prime fields use the modulus x".into()));
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => Self::least_irreducible(p, e),
        };
        let modulus_bits = if p == 2 { undigits(&modulus, 2) } else { 0 };
        Ok(FieldSpec(Arc::new(FieldInner { p, degree: e, modulus, order, modulus_bits })))
    }

    /// GF(q) for a prime power q, with the default modulus.
    pub fn of_order(q: u64) -> Result<Self> {
        if q < 2 {
            return Err(Error::OutOfRange(format!("{q} is not a prime power")));
        }
        let p = (2..=q).find(|d| q.is_multiple_of(*d)).unwrap();
        let mut e = 0u32;
        let mut rest = q;
        while rest.is_multiple_of(p) {
            rest /= p;
            e += 1;
        }
        if rest != 1 {
            return Err(Error::OutOfRange(format!("{q} is not a prime power")));
        }
        if p > u32::MAX as u64 {
            return Err(Error::FieldTooLarge(u32::MAX, e));
        }
        Self::new(p as u32, e, None)
    }

    fn least_irreducible(p: u32, e: u32) -> Vec<u32> {
        let count = (p as u64).pow(e);
        for low in 0..count {
            let mut f = digits(low, p, e as usize);
            f.push(1);
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.degree
    }

    /// q = p^e.
    pub fn order(&self) -> u64 {
        self.0.order
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn modulus_digits(&self) -> String {
        self.0.modulus.iter().map(|&d| digit_char(d)).collect()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.degree == 1
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { spec: self.clone(), code: 0 }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { spec: self.clone(), code: 1 }
    }

    /// The class of `x`. It generates the field over GF(p) when e ≥ 2; for
    /// prime fields it is zero.
    pub fn generator(&self) -> FieldElement {
        let code = if self.0.degree == 1 { 0 } else { self.0.p };
        FieldElement { spec: self.clone(), code }
    }

    pub fn element(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.0.degree as usize {
            return Err(Error::DimensionMismatch {
                expected: self.0.degree as usize,
                found: coeffs.len(),
            });
        }
        if coeffs.iter().any(|&c| c >= self.0.p) {
            return Err(Error::Parse(format!("coefficient not below {}", self.0.p)));
        }
        Ok(FieldElement { spec: self.clone(), code: undigits(coeffs, self.0.p) as Code })
    }

    pub fn from_code(&self, code: Code) -> Result<FieldElement> {
        if code as u64 >= self.0.order {
            return Err(Error::OutOfRange(format!("code {code} outside GF({})", self.0.order)));
        }
        Ok(FieldElement { spec: self.clone(), code })
    }

    /// All elements in code order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.0.order).map(move |c| FieldElement { spec: self.clone(), code: c as Code })
    }

    pub fn coeffs(&self, code: Code) -> Vec<u32> {
        digits(code as u64, self.0.p, self.0.degree as usize)
    }

    fn encode(&self, coeffs: &[u32]) -> Code {
        undigits(coeffs, self.0.p) as Code
    }

    // Raw arithmetic on codes. Callers guarantee codes are in range.

    pub fn add(&self, a: Code, b: Code) -> Code {
        let p = self.0.p;
        if p == 2 {
            return a ^ b;
        }
        if self.0.degree == 1 {
            return ((a as u64 + b as u64) % p as u64) as Code;
        }
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let s: Vec<u32> = x.iter().zip(&y).map(|(&u, &v)| (u + v) % p).collect();
        self.encode(&s)
    }

    pub fn neg(&self, a: Code) -> Code {
        let p = self.0.p;
        if p == 2 {
            return a;
        }
        if self.0.degree == 1 {
            return ((p - a % p) % p) as Code;
        }
        let s: Vec<u32> = self.coeffs(a).iter().map(|&u| (p - u) % p).collect();
        self.encode(&s)
    }

    pub fn sub(&self, a: Code, b: Code) -> Code {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Code, b: Code) -> Code {
        if a == 0 || b == 0 {
            return 0;
        }
        let p = self.0.p;
        if self.0.degree == 1 {
            return (a as u64 * b as u64 % p as u64) as Code;
        }
        if p == 2 {
            return bit_rem(clmul(a as u64, b as u64), self.0.modulus_bits) as Code;
        }
        let (x, y) = (self.coeffs(a), self.coeffs(b));
        let mut prod = vec![0u32; x.len() + y.len() - 1];
        for (i, &u) in x.iter().enumerate() {
            if u == 0 {
                continue;
            }
            for (j, &v) in y.iter().enumerate() {
                prod[i + j] = ((prod[i + j] as u64 + u as u64 * v as u64) % p as u64) as u32;
            }
        }
        let r = poly_rem(&prod, &self.0.modulus, p);
        self.encode(&r)
    }

    pub fn pow(&self, a: Code, mut m: u64) -> Code {
        let mut base = a;
        let mut acc: Code = 1;
        while m > 0 {
            if m & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            m >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: Code) -> Option<Code> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, self.0.order - 2))
        }
    }

    /// Little-endian digit string of an element code, e.g. GF(4) α+1 is "11".
    pub fn code_to_digits(&self, code: Code) -> String {
        self.coeffs(code).into_iter().map(digit_char).collect()
    }

    pub fn code_from_digits(&self, s: &str) -> Result<Code> {
        let coeffs = parse_digits(s, self.0.p)?;
        if coeffs.len() != self.0.degree as usize {
            return Err(Error::Parse(format!(
                "element \"{s}\" must have {} digits",
                self.0.degree
            )));
        }
        Ok(self.encode(&coeffs))
    }
}

pub(crate) fn digit_char(d: u32) -> char {
    std::char::from_digit(d, 36).expect("digit below 36")
}

pub(crate) fn parse_digits(s: &str, p: u32) -> Result<Vec<u32>> {
    s.chars()
        .map(|c| {
            c.to_digit(36)
                .filter(|&d| d < p)
                .ok_or_else(|| Error::Parse(format!("invalid digit '{c}' for characteristic {p}")))
        })
        .collect()
}

/// An element of a [`FieldSpec`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    spec: FieldSpec,
    code: Code,
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec.code_to_digits(self.code))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.spec.code_to_digits(self.code))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl FieldElement {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn code(&self) -> Code {
        self.code
    }

    pub fn coeffs(&self) -> Vec<u32> {
        self.spec.coeffs(self.code)
    }

    pub fn is_zero(&self) -> bool {
        self.code == 0
    }

    pub fn to_digits(&self) -> String {
        self.spec.code_to_digits(self.code)
    }

    pub fn arith(&self, op: ArithOp, rhs: &FieldElement) -> Result<FieldElement> {
        if self.spec != rhs.spec {
            return Err(Error::SpecMismatch);
        }
        let f = &self.spec;
        let code = match op {
            ArithOp::Add => f.add(self.code, rhs.code),
            ArithOp::Sub => f.sub(self.code, rhs.code),
            ArithOp::Mul => f.mul(self.code, rhs.code),
            ArithOp::Div => {
                let inv = f.inv(rhs.code).ok_or(Error::DivisionByZero)?;
                f.mul(self.code, inv)
            }
        };
        Ok(FieldElement { spec: f.clone(), code })
    }

    pub fn add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.arith(ArithOp::Add, rhs)
    }

    pub fn sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.arith(ArithOp::Sub, rhs)
    }

    pub fn mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.arith(ArithOp::Mul, rhs)
    }

    pub fn div(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.arith(ArithOp::Div, rhs)
    }

    /// `self^m`, with `0^0 = 1`.
    pub fn pow(&self, m: u64) -> FieldElement {
        FieldElement { spec: self.spec.clone(), code: self.spec.pow(self.code, m) }
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let code = self.spec.inv(self.code).ok_or(Error::DivisionByZero)?;
        Ok(FieldElement { spec: self.spec.clone(), code })
    }
}
