//! Arithmetic in the coefficient field `F_q`, `q = p^e`.
//!
//! Elements are stored as a compact index `sum_i a_i p^i` of their
//! coefficient vector `(a_0, …, a_{e-1})` in the generator `x` of the
//! extension `F_p[x]/(c(x))`.  For small `q` the field caches full
//! addition/multiplication tables; results are identical to direct
//! reduction in the quotient ring.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Largest `q` for which the `q × q` operation tables are materialised.
const TABLE_LIMIT: u64 = 512;

/// An element of `F_q`, stored as the index of its coefficient vector.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FqElement(pub u16);

impl FqElement {
    pub const ZERO: FqElement = FqElement(0);
    pub const ONE: FqElement = FqElement(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldError {
    NotPrime(u64),
    ReduciblePoly,
    /// Defining polynomial is not monic of the requested degree.
    BadDefiningPoly,
    DivisionByZero,
    /// Element index out of range for this field.
    NotInField,
    /// `q` exceeds the supported desk-scale range (2^16).
    FieldTooLarge,
}

impl fmt::Display for FieldError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldError::NotPrime(p) => write!(f, "{p} is not prime"),
            FieldError::ReduciblePoly => write!(f, "defining polynomial is reducible"),
            FieldError::BadDefiningPoly => {
                write!(f, "defining polynomial must be monic of the requested degree")
            }
            FieldError::DivisionByZero => write!(f, "division by zero"),
            FieldError::NotInField => write!(f, "element index out of range"),
            FieldError::FieldTooLarge => write!(f, "field size exceeds 2^16"),
        }
    }
}

impl core::error::Error for FieldError {}

/// The coefficient field `F_q = F_p[x]/(c(x))`.
///
/// Immutable after construction; all operations are pure.
#[derive(Clone, Debug)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub q: u32,
    /// Monic degree-`e` coefficient vector over `F_p`, little-endian,
    /// length `e + 1`.
    pub defining_poly: Vec<u32>,
    /// Cached multiplicative generator (smallest in index order).
    generator: FqElement,
    /// Discrete logs base `generator`; `dlog[i]` is defined for `i >= 1`.
    dlog: Vec<u32>,
    add_tab: Option<Vec<u16>>,
    mul_tab: Option<Vec<u16>>,
    inv_tab: Vec<u16>,
}

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.defining_poly == other.defining_poly
    }
}
impl Eq for FieldSpec {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime factors of `n` by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// --- dense polynomial arithmetic over F_p (construction-time helpers) ---

fn fp_poly_normalize(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_poly_mulmod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let p64 = p as u64;
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        for (j, &bj) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + ai as u64 * bj as u64) % p64;
        }
    }
    // reduce mod m (monic)
    let dm = m.len() - 1;
    let mut i = prod.len();
    while i > dm {
        i -= 1;
        let c = prod[i] % p64;
        if c != 0 {
            prod[i] = 0;
            for j in 0..dm {
                let sub = c * m[j] as u64 % p64;
                prod[i - dm + j] = (prod[i - dm + j] + p64 - sub) % p64;
            }
        }
    }
    let mut out: Vec<u32> = prod.iter().take(dm).map(|&c| c as u32).collect();
    fp_poly_normalize(&mut out);
    out
}

fn fp_poly_powmod(base: &[u32], mut exp: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = base.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            acc = fp_poly_mulmod(&acc, &b, m, p);
        }
        b = fp_poly_mulmod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

fn fp_poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    fp_poly_normalize(&mut a);
    fp_poly_normalize(&mut b);
    while !b.is_empty() {
        // a mod b
        let db = b.len() - 1;
        let lead_inv = fp_inv(b[db], p);
        while a.len() > db {
            let da = a.len() - 1;
            let c = a[da] as u64 * lead_inv as u64 % p as u64;
            if c != 0 {
                for j in 0..=db {
                    let sub = c * b[j] as u64 % p as u64;
                    let idx = da - db + j;
                    a[idx] = ((a[idx] as u64 + p as u64 - sub) % p as u64) as u32;
                }
            }
            fp_poly_normalize(&mut a);
            if a.is_empty() {
                break;
            }
        }
        if a.len() > db {
            // degenerate: b constant
            a.clear();
        }
        core::mem::swap(&mut a, &mut b);
    }
    a
}

fn fp_inv(a: u32, p: u32) -> u32 {
    // Fermat inverse; p prime, a != 0.
    let mut acc = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    acc as u32
}

/// Rabin irreducibility test for a monic polynomial over `F_p`.
fn fp_poly_is_irreducible(m: &[u32], p: u32) -> bool {
    let n = m.len() - 1;
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u32, 1];
    // x^(p^n) == x mod m
    let mut frob = x.clone();
    for _ in 0..n {
        frob = fp_poly_powmod(&frob, p as u64, m, p);
    }
    let mut diff = frob.clone();
    // diff -= x
    while diff.len() < 2 {
        diff.push(0);
    }
    diff[1] = (diff[1] + p - 1) % p;
    fp_poly_normalize(&mut diff);
    if !diff.is_empty() {
        return false;
    }
    for r in prime_factors(n as u64) {
        let k = n as u64 / r;
        let mut fr = x.clone();
        for _ in 0..k {
            fr = fp_poly_powmod(&fr, p as u64, m, p);
        }
        let mut diff = fr;
        while diff.len() < 2 {
            diff.push(0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        fp_poly_normalize(&mut diff);
        let g = fp_poly_gcd(&diff, m, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree `e` over `F_p`
/// (smallest index `sum c_i p^i` of the non-leading coefficients).
fn smallest_irreducible(p: u32, e: u32) -> Vec<u32> {
    let mut idx = 0u64;
    let bound = (p as u64).pow(e);
    while idx < bound {
        let mut m = Vec::with_capacity(e as usize + 1);
        let mut t = idx;
        for _ in 0..e {
            m.push((t % p as u64) as u32);
            t /= p as u64;
        }
        m.push(1);
        if fp_poly_is_irreducible(&m, p) {
            return m;
        }
        idx += 1;
    }
    unreachable!("an irreducible polynomial of every degree exists over F_p")
}

impl FieldSpec {
    fn index_to_coeffs(&self, a: FqElement) -> Vec<u32> {
        let mut v = Vec::with_capacity(self.e as usize);
        let mut t = a.0 as u32;
        for _ in 0..self.e {
            v.push(t % self.p);
            t /= self.p;
        }
        v
    }

    fn coeffs_to_index(&self, v: &[u32]) -> FqElement {
        let mut idx = 0u32;
        for &c in v.iter().rev() {
            idx = idx * self.p + c % self.p;
        }
        FqElement(idx as u16)
    }

    /// Coefficient vector `(a_0, …, a_{e-1})` over `F_p` of `a` in the
    /// generator `x` of the extension.
    pub fn coeffs(&self, a: FqElement) -> Vec<u32> {
        self.index_to_coeffs(a)
    }

    /// Element with the given coefficient vector (entries reduced mod `p`).
    pub fn from_coeffs(&self, v: &[u32]) -> FqElement {
        self.coeffs_to_index(v)
    }

    /// Element of the prime subfield from an integer (reduced mod `p`).
    pub fn from_int(&self, n: i64) -> FqElement {
        let r = n.rem_euclid(self.p as i64) as u32;
        self.coeffs_to_index(&[r])
    }

    fn add_direct(&self, a: FqElement, b: FqElement) -> FqElement {
        let va = self.index_to_coeffs(a);
        let vb = self.index_to_coeffs(b);
        let sum: Vec<u32> = va.iter().zip(&vb).map(|(x, y)| (x + y) % self.p).collect();
        self.coeffs_to_index(&sum)
    }

    fn mul_direct(&self, a: FqElement, b: FqElement) -> FqElement {
        let va = self.index_to_coeffs(a);
        let vb = self.index_to_coeffs(b);
        let prod = fp_poly_mulmod(&va, &vb, &self.defining_poly, self.p);
        self.coeffs_to_index(&prod)
    }

    pub fn add(&self, a: FqElement, b: FqElement) -> FqElement {
        match &self.add_tab {
            Some(t) => FqElement(t[a.0 as usize * self.q as usize + b.0 as usize]),
            None => self.add_direct(a, b),
        }
    }

    pub fn neg(&self, a: FqElement) -> FqElement {
        let v = self.index_to_coeffs(a);
        let nv: Vec<u32> = v.iter().map(|&c| (self.p - c) % self.p).collect();
        self.coeffs_to_index(&nv)
    }

    pub fn sub(&self, a: FqElement, b: FqElement) -> FqElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElement, b: FqElement) -> FqElement {
        match &self.mul_tab {
            Some(t) => FqElement(t[a.0 as usize * self.q as usize + b.0 as usize]),
            None => self.mul_direct(a, b),
        }
    }

    pub fn inv(&self, a: FqElement) -> Result<FqElement, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(FqElement(self.inv_tab[a.0 as usize]))
    }

    pub fn pow(&self, a: FqElement, mut e: u64) -> FqElement {
        let mut acc = FqElement::ONE;
        let mut b = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative generator, smallest in coefficient-index order.
    pub fn generator(&self) -> FqElement {
        self.generator
    }

    /// Discrete log of a nonzero element base [`FieldSpec::generator`].
    pub fn dlog(&self, a: FqElement) -> Result<u32, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(self.dlog[a.0 as usize])
    }

    /// All field elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = FqElement> {
        (0..self.q as u16).map(FqElement)
    }

    /// Renders an element: prime fields print the integer, extension fields
    /// print `0`, `1`, `a` or `a^k` in the canonical generator `a`.
    pub fn format_element(&self, a: FqElement) -> String {
        use alloc::format;
        if self.e == 1 {
            return format!("{}", a.0);
        }
        if a.is_zero() {
            return String::from("0");
        }
        match self.dlog[a.0 as usize] {
            0 => String::from("1"),
            1 => String::from("a"),
            k => format!("a^{k}"),
        }
    }
}

/// Constructs `F_q` with `q = p^e`.
///
/// If `defining_poly` is omitted, the lexicographically smallest monic
/// irreducible of degree `e` over `F_p` is selected.
pub fn make_field(p: u32, e: u32, defining_poly: Option<&[u32]>) -> Result<FieldSpec, FieldError> {
    if !is_prime(p as u64) {
        return Err(FieldError::NotPrime(p as u64));
    }
    if e == 0 {
        return Err(FieldError::BadDefiningPoly);
    }
    let q = (p as u64).checked_pow(e).ok_or(FieldError::FieldTooLarge)?;
    if q > 1 << 16 {
        return Err(FieldError::FieldTooLarge);
    }
    let defining = match defining_poly {
        Some(c) => {
            let mut c: Vec<u32> = c.iter().map(|&x| x % p).collect();
            fp_poly_normalize(&mut c);
            if c.len() != e as usize + 1 || c[e as usize] != 1 {
                return Err(FieldError::BadDefiningPoly);
            }
            if !fp_poly_is_irreducible(&c, p) {
                return Err(FieldError::ReduciblePoly);
            }
            c
        }
        None => smallest_irreducible(p, e),
    };

    let mut field = FieldSpec {
        p,
        e,
        q: q as u32,
        defining_poly: defining,
        generator: FqElement::ZERO,
        dlog: Vec::new(),
        add_tab: None,
        mul_tab: None,
        inv_tab: Vec::new(),
    };

    if q <= TABLE_LIMIT {
        let n = q as usize;
        let mut add = vec![0u16; n * n];
        let mut mul = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..=a {
                let s = field.add_direct(FqElement(a as u16), FqElement(b as u16)).0;
                let m = field.mul_direct(FqElement(a as u16), FqElement(b as u16)).0;
                add[a * n + b] = s;
                add[b * n + a] = s;
                mul[a * n + b] = m;
                mul[b * n + a] = m;
            }
        }
        field.add_tab = Some(add);
        field.mul_tab = Some(mul);
    }

    // Generator: smallest index with multiplicative order q - 1.
    let order = q - 1;
    let factors = prime_factors(order);
    let mut generator = FqElement::ONE;
    'outer: for idx in 2..q as u16 {
        let g = FqElement(idx);
        for &r in &factors {
            if field.pow(g, order / r) == FqElement::ONE {
                continue 'outer;
            }
        }
        generator = g;
        break;
    }
    if q == 2 {
        generator = FqElement::ONE;
    }
    field.generator = generator;

    // Discrete-log table base the generator.
    let mut dlog = vec![0u32; q as usize];
    let mut acc = FqElement::ONE;
    for k in 0..order {
        dlog[acc.0 as usize] = k as u32;
        acc = field.mul(acc, generator);
    }
    field.dlog = dlog;

    // Inverse table: g^k -> g^(order - k).
    let mut inv = vec![0u16; q as usize];
    for idx in 1..q as usize {
        let k = field.dlog[idx] as u64;
        inv[idx] = field.pow(generator, (order - k) % order).0;
    }
    field.inv_tab = inv;

    Ok(field)
}

/// Returns an element of multiplicative order `q - 1`, deterministic
/// (smallest in coefficient-index order).
pub fn find_generator(field: &FieldSpec) -> FqElement {
    field.generator()
}

/// Multiplicative order of a nonzero element.
pub fn element_order(field: &FieldSpec, a: FqElement) -> Result<u64, FieldError> {
    if a.is_zero() {
        return Err(FieldError::DivisionByZero);
    }
    let group = field.q as u64 - 1;
    let mut ord = group;
    for r in prime_factors(group) {
        while ord % r == 0 && field.pow(a, ord / r) == FqElement::ONE {
            ord /= r;
        }
    }
    Ok(ord)
}
