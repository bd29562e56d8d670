//! Exact arithmetic in GF(p^m).
//!
//! A [`Field`] is a cheaply cloneable handle to a validated field
//! specification plus precomputed exp/log tables for the primitive element.
//! Elements are integers in `[0, q)` whose base-p digits are the polynomial
//! coefficients, constant term first (least significant digit).
//!
//! The extension field GF(q^n) built over a prime q doubles as the vector
//! space F_q^n through [`Field::to_digits`] / [`Field::from_digits`]; cyclic
//! subspace codes and spreads rely on that correspondence.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

/// Validated description of GF(p^m): characteristic, degree, order and
/// modulus polynomial (constant term first; empty for prime fields).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    m: u32,
    q: u64,
    modulus: Vec<u32>,
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn q(&self) -> u64 {
        self.q
    }
    /// Modulus coefficients, constant first, monic of degree m; empty for m = 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    /// Descriptor string used in file headers and CLI flags,
    /// e.g. `GF(2^6)/1,1,0,0,0,0,1` or `GF(7)` for a prime field.
    pub fn descriptor(&self) -> String {
        if self.m == 1 {
            format!("GF({})", self.p)
        } else {
            let coeffs: Vec<String> = self.modulus.iter().map(|c| c.to_string()).collect();
            format!("GF({}^{})/{}", self.p, self.m, coeffs.join(","))
        }
    }
}

struct FieldData {
    spec: FieldSpec,
    /// exp[i] = value of alpha^i for 0 <= i < q-1.
    exp: Vec<u32>,
    /// log[v] = i with exp[i] = v, for 1 <= v < q. log[0] is a sentinel.
    log: Vec<u32>,
}

/// A finite field GF(p^m) with its designated primitive element.
///
/// For m > 1 the primitive element alpha is the residue of x modulo the
/// (primitive) modulus polynomial; for m = 1 it is the smallest primitive
/// root modulo p.
#[derive(Clone)]
pub struct Field(Arc<FieldData>);

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self.spec().descriptor())
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.spec() == other.spec()
    }
}
impl Eq for Field {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Built-in primitive polynomials, lexicographically smallest for each (p, m)
/// when the coefficient vector (c_0, ..., c_{m-1}) is read as a base-p
/// integer. GF(2^6) uses x^6 + x + 1, which is also the smallest.
/// Coefficients are constant-term first and include the monic leading 1.
fn default_modulus(p: u32, m: u32) -> Option<Vec<u32>> {
    let table: &[(u32, u32, &[u32])] = &[
        (2, 2, &[1, 1, 1]),
        (2, 3, &[1, 1, 0, 1]),
        (2, 4, &[1, 1, 0, 0, 1]),
        (2, 5, &[1, 0, 1, 0, 0, 1]),
        (2, 6, &[1, 1, 0, 0, 0, 0, 1]),
        (2, 7, &[1, 1, 0, 0, 0, 0, 0, 1]),
        (2, 8, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
        (2, 9, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
        (2, 10, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
        (2, 11, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
        (2, 12, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
        (2, 13, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
        (2, 14, &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
        (2, 15, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
        (2, 16, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
        (3, 2, &[2, 1, 1]),
        (3, 3, &[1, 2, 0, 1]),
        (3, 4, &[2, 1, 0, 0, 1]),
        (3, 5, &[1, 2, 0, 0, 0, 1]),
        (3, 6, &[2, 1, 0, 0, 0, 0, 1]),
        (5, 2, &[2, 1, 1]),
        (5, 3, &[2, 3, 0, 1]),
        (5, 4, &[2, 2, 1, 0, 1]),
        (5, 5, &[2, 4, 0, 0, 0, 1]),
        (5, 6, &[2, 1, 0, 0, 0, 0, 1]),
        (7, 2, &[3, 1, 1]),
        (7, 3, &[2, 3, 0, 1]),
        (7, 4, &[5, 3, 1, 0, 1]),
        (7, 5, &[4, 1, 0, 0, 0, 1]),
        (7, 6, &[5, 1, 3, 0, 0, 0, 1]),
    ];
    table
        .iter()
        .find(|&&(tp, tm, _)| tp == p && tm == m)
        .map(|&(_, _, c)| c.to_vec())
}

/// Trial division of `poly` (monic, constant first) by all monic polynomials
/// of degree 1..=deg/2 over GF(p).
fn is_irreducible(poly: &[u32], p: u32) -> bool {
    let m = poly.len() - 1;
    if m == 1 {
        return true;
    }
    if poly[0] == 0 {
        return false; // divisible by x
    }
    for d in 1..=m / 2 {
        let count = (p as u64).pow(d as u32);
        for v in 0..count {
            let mut div = Vec::with_capacity(d + 1);
            let mut t = v;
            for _ in 0..d {
                div.push((t % p as u64) as u32);
                t /= p as u64;
            }
            div.push(1);
            if poly_rem_is_zero(poly, &div, p) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(poly: &[u32], div: &[u32], p: u32) -> bool {
    let d = div.len() - 1;
    let mut rem: Vec<u64> = poly.iter().map(|&c| c as u64).collect();
    let p = p as u64;
    for i in (d..rem.len()).rev() {
        let c = rem[i] % p;
        if c != 0 {
            for (j, &dj) in div.iter().enumerate() {
                let idx = i - d + j;
                rem[idx] = (rem[idx] + p * p - (c * dj as u64) % p) % p;
            }
        }
    }
    rem[..d].iter().all(|&c| c % p == 0)
}

fn smallest_primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let order = p - 1;
    let mut factors = Vec::new();
    let mut n = order;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            factors.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    'next: for g in 2..p {
        for &f in &factors {
            if mod_pow(g, order / f, p) == 1 {
                continue 'next;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root");
}

fn mod_pow(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1u64;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % modulus;
        }
        base = base * base % modulus;
        exp >>= 1;
    }
    acc
}

impl Field {
    /// Builds GF(p^m). When `modulus` is `None` the built-in table supplies a
    /// primitive polynomial (error [`Error::NoDefaultModulus`] outside the
    /// table). A provided modulus must be monic of degree m, irreducible and
    /// primitive over GF(p).
    pub fn new(p: u32, m: u32, modulus: Option<Vec<u32>>) -> Result<Field> {
        if !is_prime(p as u64) {
            return Err(Error::NonPrime(p as u64));
        }
        if m == 0 {
            return Err(Error::BadParams("extension degree must be >= 1".into()));
        }
        let mut q: u64 = 1;
        for _ in 0..m {
            q = q.checked_mul(p as u64).unwrap_or(u64::MAX);
            if q > MAX_FIELD_ORDER {
                return Err(Error::BadParams(format!(
                    "field order {}^{} exceeds cap {}",
                    p, m, MAX_FIELD_ORDER
                )));
            }
        }
        let modulus = if m == 1 {
            match modulus {
                None => Vec::new(),
                Some(v) if v.is_empty() => Vec::new(),
                Some(_) => {
                    return Err(Error::BadParams(
                        "prime fields take no modulus polynomial".into(),
                    ))
                }
            }
        } else {
            let v = match modulus {
                Some(v) => v,
                None => default_modulus(p, m).ok_or(Error::NoDefaultModulus { p, m })?,
            };
            if v.len() != m as usize + 1 || *v.last().unwrap() != 1 {
                return Err(Error::BadParams(format!(
                    "modulus must be monic of degree {}",
                    m
                )));
            }
            if v.iter().any(|&c| c >= p) {
                return Err(Error::BadParams(format!(
                    "modulus coefficients must lie in [0, {})",
                    p
                )));
            }
            if !is_irreducible(&v, p) {
                return Err(Error::NotIrreducible { p });
            }
            v
        };

        let spec = FieldSpec { p, m, q, modulus };
        let (exp, log) = build_tables(&spec)?;
        Ok(Field(Arc::new(FieldData { spec, exp, log })))
    }

    /// Parses a descriptor such as `GF(2^6)/1,1,0,0,0,0,1` or `GF(7)`.
    pub fn parse_descriptor(s: &str) -> Result<Field> {
        let err = |msg: &str| Error::ParseError {
            context: s.to_string(),
            message: msg.to_string(),
        };
        let body = s
            .trim()
            .strip_prefix("GF(")
            .ok_or_else(|| err("expected GF(...)"))?;
        let close = body.find(')').ok_or_else(|| err("missing ')'"))?;
        let head = &body[..close];
        let tail = &body[close + 1..];
        let (p, m) = match head.split_once('^') {
            Some((ps, ms)) => (
                ps.parse::<u32>().map_err(|_| err("bad characteristic"))?,
                ms.parse::<u32>().map_err(|_| err("bad degree"))?,
            ),
            None => (head.parse::<u32>().map_err(|_| err("bad prime"))?, 1),
        };
        let modulus = match tail.strip_prefix('/') {
            Some(rest) if !rest.is_empty() => {
                let coeffs: std::result::Result<Vec<u32>, _> =
                    rest.split(',').map(|c| c.trim().parse::<u32>()).collect();
                Some(coeffs.map_err(|_| err("bad modulus coefficient"))?)
            }
            _ => None,
        };
        Field::new(p, m, modulus)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0.spec
    }
    pub fn p(&self) -> u32 {
        self.0.spec.p
    }
    pub fn m(&self) -> u32 {
        self.0.spec.m
    }
    pub fn q(&self) -> u64 {
        self.0.spec.q
    }
    pub fn descriptor(&self) -> String {
        self.0.spec.descriptor()
    }

    /// All element values, 0..q.
    pub fn values(&self) -> impl Iterator<Item = u32> {
        0..self.q() as u32
    }

    fn check(&self, v: u32) -> u32 {
        debug_assert!((v as u64) < self.q(), "element out of range");
        v
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        self.check(a);
        self.check(b);
        let p = self.p() as u64;
        if p == 2 {
            return a ^ b;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 || b > 0 {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as u32
    }

    pub fn neg(&self, a: u32) -> u32 {
        self.check(a);
        let p = self.p() as u64;
        if p == 2 {
            return a;
        }
        let mut a = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        while a > 0 {
            out += (p - a % p) % p * place;
            a /= p;
            place *= p;
        }
        out as u32
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        self.check(a);
        self.check(b);
        if a == 0 || b == 0 {
            return 0;
        }
        let n = self.q() - 1;
        let i = (self.0.log[a as usize] as u64 + self.0.log[b as usize] as u64) % n;
        self.0.exp[i as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32> {
        self.check(a);
        if a == 0 {
            return Err(Error::DivisionByZero { q: self.q() });
        }
        let n = self.q() - 1;
        let i = (n - self.0.log[a as usize] as u64) % n;
        Ok(self.0.exp[i as usize])
    }

    /// a^e with 0^0 = 1; negative exponents invert (error on a = 0).
    pub fn pow(&self, a: u32, e: i64) -> Result<u32> {
        self.check(a);
        if a == 0 {
            return match e {
                0 => Ok(1),
                e if e > 0 => Ok(0),
                _ => Err(Error::DivisionByZero { q: self.q() }),
            };
        }
        let n = (self.q() - 1) as i64;
        let i = (self.0.log[a as usize] as i64 * (e % n)).rem_euclid(n);
        Ok(self.0.exp[i as usize])
    }

    /// alpha^i for the designated primitive element; i is taken mod q-1.
    pub fn primitive_power(&self, i: i64) -> u32 {
        let n = (self.q() - 1) as i64;
        self.0.exp[i.rem_euclid(n.max(1)) as usize]
    }

    /// Discrete log base alpha: the i in [0, q-2] with alpha^i = a.
    pub fn dlog(&self, a: u32) -> Result<u64> {
        self.check(a);
        if a == 0 {
            return Err(Error::LogOfZero);
        }
        Ok(self.0.log[a as usize] as u64)
    }

    /// Base-p digits of `a`, constant term first, length m. This is the
    /// vector-space coordinate map GF(p^m) -> F_p^m.
    pub fn to_digits(&self, a: u32) -> Vec<u32> {
        self.check(a);
        let p = self.p() as u64;
        let mut a = a as u64;
        let mut out = Vec::with_capacity(self.m() as usize);
        for _ in 0..self.m() {
            out.push((a % p) as u32);
            a /= p;
        }
        out
    }

    /// Inverse of [`Field::to_digits`]; the slice length must equal m.
    pub fn from_digits(&self, digits: &[u32]) -> Result<u32> {
        if digits.len() != self.m() as usize {
            return Err(Error::DimensionMismatch {
                expected: self.m() as usize,
                got: digits.len(),
            });
        }
        let p = self.p() as u64;
        let mut out = 0u64;
        for &d in digits.iter().rev() {
            if d as u64 >= p {
                return Err(Error::BadParams(format!("digit {} out of range", d)));
            }
            out = out * p + d as u64;
        }
        Ok(out as u32)
    }

    pub fn element(&self, value: u32) -> Result<FieldElement> {
        if value as u64 >= self.q() {
            return Err(Error::BadParams(format!(
                "value {} out of range for {}",
                value,
                self.descriptor()
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            value,
        })
    }
}

/// Builds exp/log tables and checks primitivity. For m > 1 the element x must
/// have multiplicative order q-1; for m = 1 the smallest primitive root is
/// raised to successive powers.
fn build_tables(spec: &FieldSpec) -> Result<(Vec<u32>, Vec<u32>)> {
    let q = spec.q;
    let group = q - 1;
    let mut exp = Vec::with_capacity(group.max(1) as usize);
    let mut log = vec![0u32; q as usize];
    if spec.m == 1 {
        let g = smallest_primitive_root(spec.p as u64);
        let mut cur = 1u64;
        for i in 0..group.max(1) {
            exp.push(cur as u32);
            log[cur as usize] = i as u32;
            cur = cur * g % spec.p as u64;
        }
        return Ok((exp, log));
    }
    let p = spec.p as u64;
    // modulus as digit vector without the monic term, for reduction
    let red: Vec<u64> = spec.modulus[..spec.m as usize]
        .iter()
        .map(|&c| c as u64)
        .collect();
    let m = spec.m as usize;
    let mut digits = vec![0u64; m];
    digits[0] = 1; // the element 1
    for i in 0..group {
        let mut val = 0u64;
        for &d in digits.iter().rev() {
            val = val * p + d;
        }
        if val == 1 && i > 0 {
            return Err(Error::NotPrimitive {
                order: i,
                group_order: group,
            });
        }
        exp.push(val as u32);
        log[val as usize] = i as u32;
        // multiply by x: shift digits, reduce the overflow with -red
        let carry = digits[m - 1];
        for j in (1..m).rev() {
            digits[j] = digits[j - 1];
        }
        digits[0] = 0;
        if carry != 0 {
            for j in 0..m {
                digits[j] = (digits[j] + (p - red[j] % p) % p * carry) % p;
            }
        }
    }
    // after q-1 steps we must be back at 1
    let mut val = 0u64;
    for &d in digits.iter().rev() {
        val = val * p + d;
    }
    if val != 1 {
        return Err(Error::NotPrimitive {
            order: group + 1,
            group_order: group,
        });
    }
    Ok((exp, log))
}

/// An element of a specific [`Field`]; carries its field so that mixed-field
/// arithmetic is rejected rather than silently computed.
#[derive(Debug, Clone)]
pub struct FieldElement {
    field: Field,
    value: u32,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}
impl Eq for FieldElement {}

impl FieldElement {
    pub fn value(&self) -> u32 {
        self.value
    }
    pub fn field(&self) -> &Field {
        &self.field
    }

    fn same_field(&self, rhs: &FieldElement) -> Result<()> {
        if self.field != rhs.field {
            return Err(Error::FieldMismatch {
                left: self.field.descriptor(),
                right: rhs.field.descriptor(),
            });
        }
        Ok(())
    }

    pub fn add(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        Ok(FieldElement {
            field: self.field.clone(),
            value: self.field.add(self.value, rhs.value),
        })
    }

    pub fn sub(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        Ok(FieldElement {
            field: self.field.clone(),
            value: self.field.sub(self.value, rhs.value),
        })
    }

    pub fn mul(&self, rhs: &FieldElement) -> Result<FieldElement> {
        self.same_field(rhs)?;
        Ok(FieldElement {
            field: self.field.clone(),
            value: self.field.mul(self.value, rhs.value),
        })
    }

    pub fn inv(&self) -> Result<FieldElement> {
        Ok(FieldElement {
            field: self.field.clone(),
            value: self.field.inv(self.value)?,
        })
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        Ok(FieldElement {
            field: self.field.clone(),
            value: self.field.pow(self.value, e)?,
        })
    }

    pub fn dlog(&self) -> Result<u64> {
        self.field.dlog(self.value)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
