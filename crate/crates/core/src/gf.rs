//! Arithmetic in GF(q) for any prime power q up to 2^16.
//!
//! Elements are plain `u32` encodings in `[0, q)`. For a prime field the
//! encoding is the residue; for an extension field GF(p^m) it is the base-p
//! packing `c_0 + c_1 p + ... + c_{m-1} p^{m-1}` of the coefficient vector in
//! the polynomial basis `1, x, ..., x^{m-1}`.
//!
//! The realization is canonical: the modulus is the lexicographically
//! smallest monic primitive polynomial (coefficients compared constant term
//! first), and the primitive element is the class of `x`. For a prime field
//! the primitive element is the smallest primitive root.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u32 = 1 << 16;

/// Fields up to this order get a full addition table.
const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GfError {
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("field order {0} exceeds the supported maximum of 65536")]
    TooLarge(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields (GF({left}) and GF({right}))")]
    FieldMismatch { left: u32, right: u32 },
    #[error("encoding {value} is out of range for GF({q})")]
    OutOfRange { value: u32, q: u32 },
}

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    /// Monic modulus, constant term first (length m + 1). Empty for m = 1.
    modulus: Vec<u32>,
    alpha: u32,
    /// `exp[j] = alpha^j` for `j` in `0..q-1`; `exp[q-1] = 1` as a wrap entry.
    exp: Vec<u32>,
    /// `log[x]` for nonzero x; `log[0]` is unused.
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

/// A concrete realization of GF(q). Cheap to clone; all clones share tables.
#[derive(Clone)]
pub struct FieldSpec {
    t: Arc<Tables>,
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.t.p)
            .field("m", &self.t.m)
            .field("modulus", &self.t.modulus)
            .field("alpha", &self.t.alpha)
            .finish()
    }
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.t, &other.t)
            || (self.t.p == other.t.p && self.t.m == other.t.m && self.t.modulus == other.t.modulus)
    }
}

impl Eq for FieldSpec {}

/// Splits `q` as `p^m`.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        // q itself is prime
        return Some((q as u32, 1));
    }
    let (mut rest, mut m) = (q, 0u32);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    (rest == 1).then_some((p as u32, m))
}

/// Builds the canonical realization of GF(q).
pub fn make_field(q: u64) -> Result<FieldSpec, GfError> {
    if q > MAX_ORDER as u64 {
        return Err(GfError::TooLarge(q));
    }
    let (p, m) = prime_power(q).ok_or(GfError::NotPrimePower(q))?;
    let q = q as u32;
    let (modulus, alpha, exp) = if m == 1 {
        let g = (1..p.max(2))
            .find_map(|g| cyclic_powers(q, g, |x| (x * g) % p))
            .expect("every prime field has a primitive root");
        (Vec::new(), g.0, g.1)
    } else {
        find_primitive_modulus(p, m)
    };
    let mut log = vec![0u32; q as usize];
    for (j, &x) in exp.iter().enumerate().take(q as usize - 1) {
        log[x as usize] = j as u32;
    }
    let mut t = Tables {
        p,
        m,
        q,
        modulus,
        alpha,
        exp,
        log,
        neg: Vec::new(),
        add: None,
    };
    t.neg = (0..q).map(|x| digitwise(&t, x, 0, |a, _| (p - a) % p)).collect();
    if q <= ADD_TABLE_LIMIT && p != 2 && m > 1 {
        let mut add = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                add[(a * q + b) as usize] = digitwise(&t, a, b, |x, y| (x + y) % p);
            }
        }
        t.add = Some(add);
    }
    Ok(FieldSpec { t: Arc::new(t) })
}

/// Powers `g^0, g^1, ..., g^{q-2}, 1` if `g` has multiplicative order `q-1`.
fn cyclic_powers(q: u32, g: u32, step: impl Fn(u32) -> u32) -> Option<(u32, Vec<u32>)> {
    let order = q - 1;
    let mut exp = Vec::with_capacity(q as usize);
    let mut x = 1u32;
    for j in 0..order {
        if j > 0 && x == 1 {
            return None;
        }
        exp.push(x);
        x = step(x);
    }
    (x == 1).then(|| {
        exp.push(1);
        (g, exp)
    })
}

/// Lexicographically smallest monic primitive polynomial of degree `m` over GF(p).
fn find_primitive_modulus(p: u32, m: u32) -> (Vec<u32>, u32, Vec<u32>) {
    let q = p.pow(m);
    // Low coefficients c_0..c_{m-1}; c_0 varies slowest.
    for idx in 0..q {
        let mut low = vec![0u32; m as usize];
        let mut rest = idx;
        for i in (0..m as usize).rev() {
            low[i] = rest % p;
            rest /= p;
        }
        if low[0] == 0 {
            continue;
        }
        let times_x = |x: u32| mul_by_x(x, &low, p, m);
        if let Some((_, exp)) = cyclic_powers(q, p, times_x) {
            let mut modulus = low;
            modulus.push(1);
            return (modulus, p, exp);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

/// Multiplies the packed polynomial `x_enc` by the indeterminate, reducing
/// modulo the monic polynomial with low coefficients `low`.
fn mul_by_x(x_enc: u32, low: &[u32], p: u32, m: u32) -> u32 {
    let top = x_enc / p.pow(m - 1);
    let shifted = (x_enc % p.pow(m - 1)) * p;
    // x^m = -(c_0 + c_1 x + ... + c_{m-1} x^{m-1})
    let mut out = 0u32;
    let mut place = 1u32;
    let mut s = shifted;
    for &c in low {
        let digit = (s % p + top * (p - c)) % p;
        out += digit * place;
        s /= p;
        place *= p;
    }
    out
}

fn digitwise(t: &Tables, a: u32, b: u32, f: impl Fn(u32, u32) -> u32) -> u32 {
    if t.m == 1 {
        return f(a, b);
    }
    let (mut a, mut b, mut out, mut place) = (a, b, 0u32, 1u32);
    for _ in 0..t.m {
        out += f(a % t.p, b % t.p) * place;
        a /= t.p;
        b /= t.p;
        place *= t.p;
    }
    out
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.t.p
    }

    pub fn m(&self) -> u32 {
        self.t.m
    }

    pub fn q(&self) -> u32 {
        self.t.q
    }

    /// Modulus coefficients, constant term first, including the leading 1.
    /// Empty for prime fields.
    pub fn modulus(&self) -> &[u32] {
        &self.t.modulus
    }

    /// The primitive element.
    pub fn alpha(&self) -> u32 {
        self.t.alpha
    }

    pub fn exp_table(&self) -> &[u32] {
        &self.t.exp
    }

    pub fn log_table(&self) -> &[u32] {
        &self.t.log
    }

    pub fn contains(&self, x: u32) -> bool {
        x < self.t.q
    }

    pub fn check(&self, x: u32) -> Result<u32, GfError> {
        if self.contains(x) {
            Ok(x)
        } else {
            Err(GfError::OutOfRange { value: x, q: self.t.q })
        }
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let t = &*self.t;
        if t.p == 2 {
            a ^ b
        } else if t.m == 1 {
            let s = a + b;
            if s >= t.p {
                s - t.p
            } else {
                s
            }
        } else if let Some(add) = &t.add {
            add[(a * t.q + b) as usize]
        } else {
            digitwise(t, a, b, |x, y| (x + y) % t.p)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.t.neg[a as usize]
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let t = &*self.t;
        let s = t.log[a as usize] + t.log[b as usize];
        let order = t.q - 1;
        t.exp[if s >= order { s - order } else { s } as usize]
    }

    pub fn inv(&self, a: u32) -> Result<u32, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let order = self.t.q - 1;
        Ok(self.t.exp[((order - self.t.log[a as usize]) % order) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.t.q - 1) as u64;
        let l = (self.t.log[a as usize] as u64 * (e % order)) % order;
        self.t.exp[l as usize]
    }

    /// `alpha^e` for any integer exponent, reduced mod `q - 1`.
    pub fn alpha_pow(&self, e: i64) -> u32 {
        let order = (self.t.q - 1) as i64;
        self.t.exp[e.rem_euclid(order) as usize]
    }

    /// Discrete logarithm base alpha, in `0..q-1`.
    pub fn log(&self, a: u32) -> Result<u32, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        Ok(self.t.log[a as usize])
    }

    /// Position of `x` in the entries-distribution ordering
    /// `(alpha^1, alpha^2, ..., alpha^{q-1}, 0)`.
    #[inline]
    pub fn slot(&self, x: u32) -> usize {
        let q = self.t.q as usize;
        if x == 0 {
            q - 1
        } else {
            (self.t.log[x as usize] as usize + q - 2) % (q - 1)
        }
    }

    /// Inner product of two vectors.
    pub fn dot(&self, a: &[u32], b: &[u32]) -> u32 {
        a.iter().zip(b).fold(0, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    pub fn element(&self, value: u32) -> Result<FieldElement<'_>, GfError> {
        Ok(FieldElement {
            field: self,
            value: self.check(value)?,
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement<'_>> + '_ {
        (0..self.t.q).map(move |value| FieldElement { field: self, value })
    }
}

/// An element bound to its field, with checked arithmetic.
#[derive(Clone, Copy)]
pub struct FieldElement<'f> {
    field: &'f FieldSpec,
    value: u32,
}

impl fmt::Debug for FieldElement<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@GF({})", self.value, self.field.q())
    }
}

impl PartialEq for FieldElement<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value && self.field == other.field
    }
}

impl Eq for FieldElement<'_> {}

impl<'f> FieldElement<'f> {
    pub fn value(self) -> u32 {
        self.value
    }

    pub fn field(self) -> &'f FieldSpec {
        self.field
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    fn same_field(self, other: Self) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch {
                left: self.field.q(),
                right: other.field.q(),
            })
        }
    }

    fn with(self, value: u32) -> Self {
        Self {
            field: self.field,
            value,
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.add(self.value, other.value)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(self, other: Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.sub(self.value, other.value)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Result<Self, GfError> {
        self.same_field(other)?;
        Ok(self.with(self.field.mul(self.value, other.value)))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Self {
        self.with(self.field.neg(self.value))
    }

    pub fn inv(self) -> Result<Self, GfError> {
        Ok(self.with(self.field.inv(self.value)?))
    }

    pub fn pow(self, e: u64) -> Self {
        self.with(self.field.pow(self.value, e))
    }
}
