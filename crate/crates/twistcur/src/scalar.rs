//! Exact arithmetic in the cyclotomic field Q(zeta_N).
//!
//! Elements are stored in the power basis `1, z, ..., z^(phi(N)-1)` with
//! arbitrary-precision rational coefficients, fully reduced modulo the N-th
//! cyclotomic polynomial. Equality is coefficient-wise, so every value has a
//! unique representation and comparisons are exact.
//!
//! The conductor N is fixed per session by constructing a [`CycField`]; all
//! scalars carry a handle to their field and mixing conductors is an error.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

/// Euler's totient, by trial-division factorization.
fn euler_phi(n: u64) -> u64 {
    let mut m = n;
    let mut result = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

fn rat(i: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(i))
}

/// Quotient of exact polynomial division (panics if the division is inexact;
/// only used internally where divisibility is guaranteed).
fn poly_div_exact(num: &[BigRational], den: &[BigRational]) -> Vec<BigRational> {
    let mut rem: Vec<BigRational> = num.to_vec();
    let dd = den.len() - 1;
    let lead = &den[dd];
    assert!(!lead.is_zero());
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(dd)];
    while rem.len() > dd {
        let k = rem.len() - 1;
        let c = rem[k].clone() / lead.clone();
        if !c.is_zero() {
            quot[k - dd] = c.clone();
            for (j, d) in den.iter().enumerate() {
                let v = rem[k - dd + j].clone() - c.clone() * d.clone();
                rem[k - dd + j] = v;
            }
        }
        while rem.len() > 1 && rem.last().map(|v| v.is_zero()) == Some(true) {
            rem.pop();
        }
        if rem.len() <= dd {
            break;
        }
    }
    assert!(
        rem.iter().all(|v| v.is_zero()),
        "polynomial division left a remainder"
    );
    quot
}

/// Coefficients of the N-th cyclotomic polynomial, ascending, monic.
fn cyclotomic_polynomial(n: u64) -> Vec<BigRational> {
    // x^n - 1 divided by the product of Phi_d over proper divisors d of n.
    let mut phi_cache: Vec<(u64, Vec<BigRational>)> = Vec::new();
    for m in 1..=n {
        if n % m != 0 {
            continue;
        }
        let mut num = vec![BigRational::zero(); (m + 1) as usize];
        num[0] = rat(-1);
        num[m as usize] = rat(1);
        let mut acc = num;
        for (d, poly) in &phi_cache {
            if m % d == 0 && *d < m {
                acc = poly_div_exact(&acc, poly);
            }
        }
        phi_cache.push((m, acc));
    }
    phi_cache.pop().expect("n >= 1").1
}

struct FieldData {
    conductor: u64,
    degree: usize,
    /// Monic modulus coefficients, ascending, length degree + 1.
    modulus: Vec<BigRational>,
    /// reduction[t] = coefficients of z^(degree + t) in the power basis,
    /// for t = 0 .. degree - 2 (all powers a product of two reduced
    /// elements can reach).
    reduction: Vec<Vec<BigRational>>,
}

/// The cyclotomic field Q(zeta_N), shared by every scalar minted from it.
#[derive(Clone)]
pub struct CycField(Arc<FieldData>);

impl fmt::Debug for CycField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycField(N={})", self.0.conductor)
    }
}

impl PartialEq for CycField {
    fn eq(&self, other: &Self) -> bool {
        self.0.conductor == other.0.conductor
    }
}
impl Eq for CycField {}

impl CycField {
    pub fn new(conductor: u64) -> Result<CycField> {
        if conductor == 0 {
            return Err(Error::BadConductor(conductor));
        }
        let degree = euler_phi(conductor) as usize;
        let modulus = cyclotomic_polynomial(conductor);
        debug_assert_eq!(modulus.len(), degree + 1);
        // z^degree = -(m_0 + m_1 z + ... + m_{degree-1} z^{degree-1}).
        let mut reduction: Vec<Vec<BigRational>> = Vec::new();
        if degree >= 1 {
            let base: Vec<BigRational> = modulus[..degree].iter().map(|c| -c.clone()).collect();
            reduction.push(base);
            for _ in 1..degree.saturating_sub(1) {
                let prev = reduction.last().unwrap().clone();
                // multiply by z, then fold the overflow term through z^degree.
                let mut next = vec![BigRational::zero(); degree];
                let top = prev[degree - 1].clone();
                for i in 1..degree {
                    next[i] = prev[i - 1].clone();
                }
                for (i, r) in reduction[0].iter().enumerate() {
                    next[i] += top.clone() * r.clone();
                }
                reduction.push(next);
            }
        }
        Ok(CycField(Arc::new(FieldData {
            conductor,
            degree,
            modulus,
            reduction,
        })))
    }

    pub fn conductor(&self) -> u64 {
        self.0.conductor
    }

    /// Degree of the extension over Q, i.e. phi(N).
    pub fn degree(&self) -> usize {
        self.0.degree
    }

    pub fn zero(&self) -> CycScalar {
        CycScalar {
            field: self.clone(),
            coeffs: vec![BigRational::zero(); self.0.degree],
        }
    }

    pub fn one(&self) -> CycScalar {
        self.integer(1)
    }

    pub fn integer(&self, v: i64) -> CycScalar {
        let mut coeffs = vec![BigRational::zero(); self.0.degree];
        coeffs[0] = rat(v);
        CycScalar {
            field: self.clone(),
            coeffs,
        }
    }

    pub fn rational(&self, numer: i64, denom: i64) -> Result<CycScalar> {
        if denom == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut coeffs = vec![BigRational::zero(); self.0.degree];
        coeffs[0] = BigRational::new(BigInt::from(numer), BigInt::from(denom));
        Ok(CycScalar {
            field: self.clone(),
            coeffs,
        })
    }

    pub fn from_big_rational(&self, v: BigRational) -> CycScalar {
        let mut coeffs = vec![BigRational::zero(); self.0.degree];
        coeffs[0] = v;
        CycScalar {
            field: self.clone(),
            coeffs,
        }
    }

    /// The canonical primitive N-th root of unity `z`.
    pub fn zeta(&self) -> CycScalar {
        self.zeta_power(1)
    }

    /// `z^k`, reduced.
    pub fn zeta_power(&self, k: i64) -> CycScalar {
        let n = self.0.conductor as i64;
        let k = k.rem_euclid(n) as usize;
        let mut raw = vec![BigRational::zero(); k + 1];
        raw[k] = rat(1);
        self.reduce(raw)
    }

    /// A canonical primitive m-th root of unity, for m dividing the conductor.
    pub fn root_of_unity(&self, m: u64) -> Result<CycScalar> {
        if m == 0 || self.0.conductor % m != 0 {
            return Err(Error::RootNotInField {
                order: m,
                conductor: self.0.conductor,
            });
        }
        Ok(self.zeta_power((self.0.conductor / m) as i64))
    }

    /// Reduce raw power-basis coefficients (any length) modulo the modulus.
    fn reduce(&self, mut raw: Vec<BigRational>) -> CycScalar {
        let d = self.0.degree;
        while raw.len() > d {
            let k = raw.len() - 1;
            let c = raw.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            let t = k - d;
            if t < self.0.reduction.len() {
                for (i, r) in self.0.reduction[t].iter().enumerate() {
                    raw[i] += c.clone() * r.clone();
                }
            } else {
                // fold one step through z^degree and keep going.
                let mut again = vec![BigRational::zero(); k];
                for (i, v) in raw.iter().enumerate() {
                    again[i] = v.clone();
                }
                for (i, r) in self.0.reduction[0].iter().enumerate() {
                    again[k - d + i] += c.clone() * r.clone();
                }
                raw = again;
            }
        }
        raw.resize(d, BigRational::zero());
        CycScalar {
            field: self.clone(),
            coeffs: raw,
        }
    }
}

/// An element of Q(zeta_N) in reduced power-basis form.
#[derive(Clone)]
pub struct CycScalar {
    field: CycField,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycScalar {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.coeffs == other.coeffs
    }
}
impl Eq for CycScalar {}

impl Hash for CycScalar {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.conductor().hash(state);
        self.coeffs.hash(state);
    }
}

impl CycScalar {
    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational part, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &CycScalar) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ConductorMismatch {
                left: self.field.conductor(),
                right: other.field.conductor(),
            });
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &CycScalar) -> Result<CycScalar> {
        self.check_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycScalar {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_sub(&self, other: &CycScalar) -> Result<CycScalar> {
        self.check_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycScalar {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn checked_mul(&self, other: &CycScalar) -> Result<CycScalar> {
        self.check_same_field(other)?;
        let d = self.field.degree();
        if d == 0 {
            return Ok(self.field.zero());
        }
        let mut raw = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[i + j] += a * b;
            }
        }
        Ok(self.field.reduce(raw))
    }

    pub fn checked_div(&self, other: &CycScalar) -> Result<CycScalar> {
        self.check_same_field(other)?;
        let inv = other.inverse()?;
        self.checked_mul(&inv)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm against
    /// the (irreducible) modulus.
    pub fn inverse(&self) -> Result<CycScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // Bezout: s*a + t*modulus = gcd = nonzero constant.
        let mut r0: Vec<BigRational> = self.field.0.modulus.clone();
        let mut r1: Vec<BigRational> = trim(self.coeffs.clone());
        let mut s0: Vec<BigRational> = vec![BigRational::zero()];
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while poly_deg(&r1) > 0 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = r1;
            r1 = trim(r);
            s0 = s1;
            s1 = trim(s);
        }
        if r1.iter().all(|c| c.is_zero()) {
            // would mean the modulus divides self, impossible for nonzero input
            return Err(Error::DivisionByZero);
        }
        let c = r1[0].clone();
        let inv_c = BigRational::one() / c;
        let coeffs: Vec<BigRational> = s1.iter().map(|v| v * inv_c.clone()).collect();
        Ok(self.field.reduce(coeffs))
    }

    pub fn neg(&self) -> CycScalar {
        CycScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> CycScalar {
        CycScalar {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    pub fn add(&self, other: &CycScalar) -> CycScalar {
        self.checked_add(other).expect("conductor mismatch")
    }
    pub fn sub(&self, other: &CycScalar) -> CycScalar {
        self.checked_sub(other).expect("conductor mismatch")
    }
    pub fn mul(&self, other: &CycScalar) -> CycScalar {
        self.checked_mul(other).expect("conductor mismatch")
    }
}

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.len() > 1 && p.last().map(|v| v.is_zero()) == Some(true) {
        p.pop();
    }
    p
}

fn poly_deg(p: &[BigRational]) -> usize {
    let mut d = p.len() - 1;
    while d > 0 && p[d].is_zero() {
        d -= 1;
    }
    d
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let mut out = vec![BigRational::zero(); n];
    for (i, v) in a.iter().enumerate() {
        out[i] += v;
    }
    for (i, v) in b.iter().enumerate() {
        out[i] -= v;
    }
    out
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_divmod(num: &[BigRational], den: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let dd = poly_deg(den);
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    let mut quot = vec![BigRational::zero(); num.len()];
    loop {
        let dn = poly_deg(&rem);
        if dn < dd || rem.iter().all(|c| c.is_zero()) {
            break;
        }
        let c = rem[dn].clone() / lead.clone();
        quot[dn - dd] = c.clone();
        for j in 0..=dd {
            let v = rem[dn - dd + j].clone() - c.clone() * den[j].clone();
            rem[dn - dd + j] = v;
        }
    }
    (trim(quot), trim(rem))
}

/// The four rational operations, for the dispatch-style entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn scalar_arith(a: &CycScalar, b: &CycScalar, op: ScalarOp) -> Result<CycScalar> {
    match op {
        ScalarOp::Add => a.checked_add(b),
        ScalarOp::Sub => a.checked_sub(b),
        ScalarOp::Mul => a.checked_mul(b),
        ScalarOp::Div => a.checked_div(b),
    }
}

impl fmt::Display for CycScalar {
    /// Polynomial in `z`, highest power first, e.g. `1/2*z^2 - 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let show_coeff = k == 0 || !abs.is_one();
            if show_coeff {
                write!(f, "{}", abs)?;
            }
            if k > 0 {
                if show_coeff {
                    write!(f, "*")?;
                }
                if k == 1 {
                    write!(f, "z")?;
                } else {
                    write!(f, "z^{}", k)?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

// ---------------------------------------------------------------------------
// Text grammar: rationals "a/b" or "a", cyclotomic polynomials in z such as
// "1/2*z^2 - 3". Parsed relative to a fixed field and reduced on the spot.
// ---------------------------------------------------------------------------

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Z,
    Star,
    Slash,
    Caret,
    Plus,
    Minus,
    End,
}

impl<'a> Lexer<'a> {
    fn new(text: &'a str) -> Self {
        Lexer { text, pos: 0 }
    }

    fn next_tok(&mut self) -> Result<(Tok, usize)> {
        let bytes = self.text.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let at = self.pos;
        if self.pos >= bytes.len() {
            return Ok((Tok::End, at));
        }
        let c = bytes[self.pos];
        let tok = match c {
            b'z' => {
                self.pos += 1;
                Tok::Z
            }
            b'*' => {
                self.pos += 1;
                Tok::Star
            }
            b'/' => {
                self.pos += 1;
                Tok::Slash
            }
            b'^' => {
                self.pos += 1;
                Tok::Caret
            }
            b'+' => {
                self.pos += 1;
                Tok::Plus
            }
            b'-' => {
                self.pos += 1;
                Tok::Minus
            }
            b'0'..=b'9' => {
                let start = self.pos;
                while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = &self.text[start..self.pos];
                Tok::Int(digits.parse::<BigInt>().expect("digits"))
            }
            _ => {
                return Err(Error::ScalarParse {
                    text: self.text.to_string(),
                    pos: at,
                    reason: format!("unexpected character '{}'", c as char),
                })
            }
        };
        Ok((tok, at))
    }
}

/// Parse a scalar in the text grammar against `field`.
pub fn parse_scalar(field: &CycField, text: &str) -> Result<CycScalar> {
    let mut lx = Lexer::new(text);
    let mut acc = field.zero();
    let (mut tok, mut at) = lx.next_tok()?;
    if tok == Tok::End {
        return Err(Error::ScalarParse {
            text: text.to_string(),
            pos: at,
            reason: "empty scalar".into(),
        });
    }
    let mut sign = 1i64;
    // leading sign
    loop {
        match tok {
            Tok::Plus => {
                (tok, at) = lx.next_tok()?;
            }
            Tok::Minus => {
                sign = -sign;
                (tok, at) = lx.next_tok()?;
            }
            _ => break,
        }
    }
    loop {
        // one term: [int [/ int]] [* z [^ k]] | z [^ k]
        let mut coeff = BigRational::one();
        let mut have_coeff = false;
        if let Tok::Int(n) = &tok {
            let numer = n.clone();
            have_coeff = true;
            (tok, at) = lx.next_tok()?;
            let mut denom = BigInt::one();
            if tok == Tok::Slash {
                (tok, at) = lx.next_tok()?;
                if let Tok::Int(d) = &tok {
                    if d.is_zero() {
                        return Err(Error::ScalarParse {
                            text: text.to_string(),
                            pos: at,
                            reason: "zero denominator".into(),
                        });
                    }
                    denom = d.clone();
                    (tok, at) = lx.next_tok()?;
                } else {
                    return Err(Error::ScalarParse {
                        text: text.to_string(),
                        pos: at,
                        reason: "expected denominator".into(),
                    });
                }
            }
            coeff = BigRational::new(numer, denom);
            if tok == Tok::Star {
                (tok, at) = lx.next_tok()?;
                if tok != Tok::Z {
                    return Err(Error::ScalarParse {
                        text: text.to_string(),
                        pos: at,
                        reason: "expected z after '*'".into(),
                    });
                }
            }
        }
        let mut power = 0usize;
        if tok == Tok::Z {
            power = 1;
            (tok, at) = lx.next_tok()?;
            if tok == Tok::Caret {
                (tok, at) = lx.next_tok()?;
                if let Tok::Int(k) = &tok {
                    power = k.to_string().parse::<usize>().map_err(|_| Error::ScalarParse {
                        text: text.to_string(),
                        pos: at,
                        reason: "exponent too large".into(),
                    })?;
                    (tok, at) = lx.next_tok()?;
                } else {
                    return Err(Error::ScalarParse {
                        text: text.to_string(),
                        pos: at,
                        reason: "expected exponent".into(),
                    });
                }
            }
        } else if !have_coeff {
            return Err(Error::ScalarParse {
                text: text.to_string(),
                pos: at,
                reason: "expected a term".into(),
            });
        }
        let signed = if sign < 0 { -coeff } else { coeff };
        let term = if power == 0 {
            field.from_big_rational(signed)
        } else {
            field
                .zeta_power(power as i64)
                .mul_rational(&signed)
        };
        acc = acc.checked_add(&term)?;
        // separator
        match tok {
            Tok::End => break,
            Tok::Plus => {
                sign = 1;
                (tok, at) = lx.next_tok()?;
            }
            Tok::Minus => {
                sign = -1;
                (tok, at) = lx.next_tok()?;
            }
            _ => {
                return Err(Error::ScalarParse {
                    text: text.to_string(),
                    pos: at,
                    reason: "expected '+', '-', or end of input".into(),
                })
            }
        }
    }
    Ok(acc)
}
