//! Exact arithmetic in GF(q), q = p^m ≤ 2^16.
//!
//! Elements are encoded as integers in `[0, q)`: the element
//! `c_0 + c_1 α + … + c_{m-1} α^{m-1}` (α a root of the modulus) is stored as
//! `c_0 + c_1 p + … + c_{m-1} p^{m-1}`. Multiplication goes through log/antilog
//! tables built once per field; fields with q ≤ 256 additionally get full
//! addition tables.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub const MAX_ORDER: u64 = 1 << 16;

const ADD_TABLE_LIMIT: u32 = 256;

/// A finite field GF(p^m). Cheap to clone; all clones share the same tables.
#[derive(Clone)]
pub struct Field(Arc<Tables>);

struct Tables {
    p: u32,
    m: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

impl Field {
    /// GF(p^m) with the lexicographically least monic irreducible modulus.
    pub fn new(p: u32, m: u32) -> Result<Field> {
        Self::build(p, m, None)
    }

    /// GF(p^m) with an explicit modulus (ascending coefficients, monic, degree m).
    /// The modulus is ignored when m = 1.
    pub fn with_modulus(p: u32, m: u32, modulus: &[u32]) -> Result<Field> {
        Self::build(p, m, Some(modulus))
    }

    pub fn prime(p: u32) -> Result<Field> {
        Self::build(p, 1, None)
    }

    fn build(p: u32, m: u32, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!(
                "characteristic {p} is not prime"
            )));
        }
        if m == 0 {
            return Err(Error::InvalidField(
                "extension degree must be at least 1".into(),
            ));
        }
        let q = (p as u64)
            .checked_pow(m)
            .filter(|&q| q <= MAX_ORDER)
            .ok_or_else(|| Error::InvalidField(format!("order {p}^{m} exceeds 2^16")))?
            as u32;

        let modulus = if m == 1 {
            vec![0, 1]
        } else {
            match modulus {
                Some(f) => {
                    if f.len() != m as usize + 1 || f.iter().any(|&c| c >= p) {
                        return Err(Error::InvalidField(format!(
                            "modulus {f:?} is not a degree-{m} polynomial over GF({p})"
                        )));
                    }
                    if f[m as usize] != 1 {
                        return Err(Error::InvalidField(format!("modulus {f:?} is not monic")));
                    }
                    if !is_irreducible(p, f) {
                        return Err(Error::ReducibleModulus(f.to_vec()));
                    }
                    f.to_vec()
                }
                None => least_irreducible(p, m),
            }
        };

        let mut tables = Tables {
            p,
            m,
            q,
            modulus,
            exp: Vec::new(),
            log: vec![0; q as usize],
            neg: (0..q).map(|a| neg_slow(p, m, a)).collect(),
            add: None,
        };
        tables.build_log_tables();
        if q <= ADD_TABLE_LIMIT {
            let mut add = Vec::with_capacity((q * q) as usize);
            for a in 0..q {
                for b in 0..q {
                    add.push(add_slow(p, m, a, b));
                }
            }
            tables.add = Some(add);
        }
        Ok(Field(Arc::new(tables)))
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn m(&self) -> u32 {
        self.0.m
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let t = &self.0;
        if t.p == 2 {
            a ^ b
        } else if let Some(add) = &t.add {
            add[(a * t.q + b) as usize]
        } else {
            add_slow(t.p, t.m, a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        self.0.neg[a as usize]
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
        let t = &self.0;
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        let t = &self.0;
        let order = t.q - 1;
        Some(t.exp[((order - t.log[a as usize]) % order) as usize])
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &self.0;
        let order = (t.q - 1) as u64;
        t.exp[((t.log[a as usize] as u64 * (e % order)) % order) as usize]
    }

    /// Iterator over all elements in encoding order.
    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.q
    }

    /// Iterator over the nonzero elements in encoding order.
    pub fn nonzero(&self) -> std::ops::Range<u32> {
        1..self.0.q
    }

    pub fn element(&self, repr: u32) -> Result<FieldElement> {
        if repr >= self.0.q {
            return Err(Error::Invalid(format!(
                "{repr} is not an element of GF({})",
                self.0.q
            )));
        }
        Ok(FieldElement {
            field: self.clone(),
            repr,
        })
    }

    pub fn same_as(&self, other: &Field) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.m == other.0.m && self.0.modulus == other.0.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.m == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{}, {:?})", self.0.p, self.0.m, self.0.modulus)
        }
    }
}

impl Tables {
    fn build_log_tables(&mut self) {
        let order = self.q - 1;
        if order == 1 {
            // GF(2): the multiplicative group is trivial.
            self.exp = vec![1, 1];
            self.log[1] = 0;
            return;
        }
        for g in 2..self.q {
            let mut exp = Vec::with_capacity(2 * order as usize);
            let mut x = 1u32;
            let mut primitive = true;
            for i in 0..order {
                if i > 0 && x == 1 {
                    primitive = false;
                    break;
                }
                exp.push(x);
                x = mul_slow(self.p, &self.modulus, x, g);
            }
            if primitive && x == 1 {
                for i in 0..order {
                    let e = exp[i as usize];
                    exp.push(e);
                    self.log[e as usize] = i;
                }
                self.exp = exp;
                return;
            }
        }
        unreachable!("the multiplicative group of a finite field is cyclic");
    }
}

/// A field element tied to its field. Convenience wrapper for callers outside
/// the hot loops, which work on raw `u32` encodings.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    repr: u32,
}

impl FieldElement {
    pub fn repr(&self) -> u32 {
        self.repr
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn check(&self, other: &FieldElement) -> Result<()> {
        if self.field.same_as(&other.field) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    fn with(&self, repr: u32) -> FieldElement {
        FieldElement {
            field: self.field.clone(),
            repr,
        }
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.add(self.repr, other.repr)))
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.sub(self.repr, other.repr)))
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        self.check(other)?;
        Ok(self.with(self.field.mul(self.repr, other.repr)))
    }

    pub fn inverse(&self) -> Result<FieldElement> {
        self.field
            .inv(self.repr)
            .map(|r| self.with(r))
            .ok_or(Error::ZeroInverse)
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr && self.field.same_as(&other.field)
    }
}

impl Eq for FieldElement {}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn digits(p: u32, m: u32, mut a: u32) -> Vec<u32> {
    let mut out = vec![0; m as usize];
    for d in out.iter_mut() {
        *d = a % p;
        a /= p;
    }
    out
}

fn undigits(p: u32, ds: &[u32]) -> u32 {
    ds.iter().rev().fold(0, |acc, &d| acc * p + d)
}

fn add_slow(p: u32, m: u32, mut a: u32, mut b: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..m {
        out += ((a % p + b % p) % p) * place;
        a /= p;
        b /= p;
        place *= p;
    }
    out
}

fn neg_slow(p: u32, m: u32, mut a: u32) -> u32 {
    let mut out = 0;
    let mut place = 1;
    for _ in 0..m {
        out += ((p - a % p) % p) * place;
        a /= p;
        place *= p;
    }
    out
}

/// Multiply two encoded elements by schoolbook multiplication and reduction
/// modulo `modulus`. Only used while building the tables.
fn mul_slow(p: u32, modulus: &[u32], a: u32, b: u32) -> u32 {
    let m = (modulus.len() - 1) as u32;
    if m == 1 {
        return ((a as u64 * b as u64) % p as u64) as u32;
    }
    let da = digits(p, m, a);
    let db = digits(p, m, b);
    let mut prod = vec![0u64; 2 * m as usize - 1];
    for (i, &x) in da.iter().enumerate() {
        for (j, &y) in db.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut prod: Vec<u32> = prod.into_iter().map(|c| c as u32).collect();
    poly_rem_mod_p(p, &mut prod, modulus);
    prod.resize(m as usize, 0);
    undigits(p, &prod)
}

/// In-place remainder of `a` modulo the monic polynomial `f` over GF(p).
fn poly_rem_mod_p(p: u32, a: &mut Vec<u32>, f: &[u32]) {
    let df = f.len() - 1;
    while a.len() > df {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - df;
        if lead != 0 {
            for (i, &c) in f.iter().enumerate() {
                let sub = (lead as u64 * c as u64 % p as u64) as u32;
                a[shift + i] = (a[shift + i] + p - sub) % p;
            }
        }
        a.pop();
    }
}

/// Trial division by every monic polynomial of degree 1..=deg/2.
fn is_irreducible(p: u32, f: &[u32]) -> bool {
    let deg = f.len() - 1;
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut g = digits(p, d as u32, low as u32);
            g.push(1);
            let mut r = f.to_vec();
            poly_rem_mod_p(p, &mut r, &g);
            if r.iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn least_irreducible(p: u32, m: u32) -> Vec<u32> {
    let count = (p as u64).pow(m);
    for low in 0..count {
        let mut f = digits(p, m, low as u32);
        f.push(1);
        if is_irreducible(p, &f) {
            return f;
        }
    }
    unreachable!("irreducible polynomials of every degree exist over GF(p)")
}
