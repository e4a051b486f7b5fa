//! Polynomials over `F_q`: arithmetic, gcd, irreducibility, enumeration
//! and factorization.
//!
//! Enumeration order is fixed as a little-endian odometer over the
//! coefficient vector; every deterministic output in the crate depends
//! on this order.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::ffcore::{FieldSpec, FqElement};

/// Default enumeration budget (number of polynomials).
pub const DEFAULT_BUDGET: u64 = 200_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PolyError {
    DivisionByZero,
    ZeroPoly,
    ConstantPoly,
    ResourceLimit { needed: u64, budget: u64 },
}

impl fmt::Display for PolyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyError::DivisionByZero => write!(f, "division by zero polynomial"),
            PolyError::ZeroPoly => write!(f, "zero polynomial not allowed"),
            PolyError::ConstantPoly => write!(f, "constant polynomial not allowed"),
            PolyError::ResourceLimit { needed, budget } => {
                write!(f, "enumeration of {needed} polynomials exceeds budget {budget}")
            }
        }
    }
}

impl core::error::Error for PolyError {}

/// A polynomial in `F_q[t]`, little-endian coefficients, no trailing zeros.
/// The zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Poly {
    pub coeffs: Vec<FqElement>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly { coeffs: vec![FqElement::ONE] }
    }

    /// The monomial `t`.
    pub fn t() -> Poly {
        Poly { coeffs: vec![FqElement::ZERO, FqElement::ONE] }
    }

    pub fn constant(c: FqElement) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    pub fn from_coeffs(coeffs: Vec<FqElement>) -> Poly {
        let mut p = Poly { coeffs };
        p.normalize();
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElement::ONE
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    /// Degree as usize with the convention `deg 0 = 0` (callers must check
    /// [`Poly::is_zero`] where the distinction matters).
    pub fn deg(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> FqElement {
        *self.coeffs.last().unwrap_or(&FqElement::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == FqElement::ONE
    }

    pub fn coeff(&self, i: usize) -> FqElement {
        self.coeffs.get(i).copied().unwrap_or(FqElement::ZERO)
    }

    pub fn add(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.add(self.coeff(i), other.coeff(i)));
        }
        Poly::from_coeffs(out)
    }

    pub fn neg(&self, f: &FieldSpec) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn sub(&self, other: &Poly, f: &FieldSpec) -> Poly {
        self.add(&other.neg(f), f)
    }

    pub fn mul(&self, other: &Poly, f: &FieldSpec) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![FqElement::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, c: FqElement, f: &FieldSpec) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Quotient and remainder; errors on a zero divisor.
    pub fn divrem(&self, divisor: &Poly, f: &FieldSpec) -> Result<(Poly, Poly), PolyError> {
        if divisor.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let db = divisor.deg();
        let lead_inv = f.inv(divisor.leading()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        if rem.len() < divisor.coeffs.len() {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![FqElement::ZERO; rem.len() - db];
        for i in (db..rem.len()).rev() {
            let c = f.mul(rem[i], lead_inv);
            if !c.is_zero() {
                quot[i - db] = c;
                for j in 0..=db {
                    let sub = f.mul(c, divisor.coeff(j));
                    rem[i - db + j] = f.sub(rem[i - db + j], sub);
                }
            }
        }
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    pub fn rem(&self, divisor: &Poly, f: &FieldSpec) -> Result<Poly, PolyError> {
        Ok(self.divrem(divisor, f)?.1)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Poly, f: &FieldSpec) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b, f).expect("b nonzero");
            a = b;
            b = r;
        }
        if a.is_zero() {
            return a;
        }
        let inv = f.inv(a.leading()).expect("nonzero leading coefficient");
        a.scale(inv, f)
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, mut e: u64, m: &Poly, f: &FieldSpec) -> Result<Poly, PolyError> {
        if m.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let mut acc = Poly::one().rem(m, f)?;
        let mut base = self.rem(m, f)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f).rem(m, f)?;
            }
            base = base.mul(&base, f).rem(m, f)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Formal derivative.
    pub fn derivative(&self, f: &FieldSpec) -> Poly {
        if self.coeffs.len() <= 1 {
            return Poly::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (i, &c) in self.coeffs.iter().enumerate().skip(1) {
            let mut acc = FqElement::ZERO;
            for _ in 0..(i as u32 % f.p) {
                acc = f.add(acc, c);
            }
            out.push(acc);
        }
        Poly::from_coeffs(out)
    }

    pub fn eval(&self, x: FqElement, f: &FieldSpec) -> FqElement {
        let mut acc = FqElement::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Renders the polynomial in the variable `t`, highest degree first.
    pub fn format(&self, f: &FieldSpec) -> String {
        use alloc::format;
        if self.is_zero() {
            return String::from("0");
        }
        let mut parts: Vec<String> = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = f.format_element(c);
            let part = match i {
                0 => cs,
                1 if cs == "1" => String::from("t"),
                1 => format!("{cs}*t"),
                _ if cs == "1" => format!("t^{i}"),
                _ => format!("{cs}*t^{i}"),
            };
            parts.push(part);
        }
        parts.join("+")
    }
}

/// Packed base-`q` index of an arbitrary polynomial of degree `< width`
/// (all `width` coefficients, little-endian).
pub fn packed_index(f: &FieldSpec, p: &Poly, width: usize) -> u64 {
    debug_assert!(p.coeffs.len() <= width);
    let mut idx = 0u64;
    for i in (0..width).rev() {
        idx = idx * f.q as u64 + p.coeff(i).0 as u64;
    }
    idx
}

/// Inverse of [`packed_index`].
pub fn poly_from_packed(f: &FieldSpec, mut idx: u64, width: usize) -> Poly {
    let mut coeffs = Vec::with_capacity(width);
    for _ in 0..width {
        coeffs.push(FqElement((idx % f.q as u64) as u16));
        idx /= f.q as u64;
    }
    Poly::from_coeffs(coeffs)
}

/// Index of a monic polynomial of degree `n` among its `q^n` peers
/// (little-endian odometer over the non-leading coefficients).
pub fn monic_index(f: &FieldSpec, p: &Poly) -> u64 {
    debug_assert!(p.is_monic());
    let mut idx = 0u64;
    for i in (0..p.deg()).rev() {
        idx = idx * f.q as u64 + p.coeff(i).0 as u64;
    }
    idx
}

/// Monic polynomial of degree `n` with the given odometer index.
pub fn monic_from_index(f: &FieldSpec, n: usize, mut idx: u64) -> Poly {
    let mut coeffs = Vec::with_capacity(n + 1);
    for _ in 0..n {
        coeffs.push(FqElement((idx % f.q as u64) as u16));
        idx /= f.q as u64;
    }
    coeffs.push(FqElement::ONE);
    Poly::from_coeffs(coeffs)
}

/// Iterator over all monic polynomials of degree `n` in odometer order.
pub struct MonicIter<'a> {
    field: &'a FieldSpec,
    n: usize,
    idx: u64,
    count: u64,
}

impl<'a> Iterator for MonicIter<'a> {
    type Item = Poly;

    fn next(&mut self) -> Option<Poly> {
        if self.idx >= self.count {
            return None;
        }
        let p = monic_from_index(self.field, self.n, self.idx);
        self.idx += 1;
        Some(p)
    }
}

/// Enumerates the `q^n` monic polynomials of degree `n`.
pub fn enumerate_monic<'a>(
    field: &'a FieldSpec,
    n: usize,
    budget: u64,
) -> Result<MonicIter<'a>, PolyError> {
    let count = (field.q as u64)
        .checked_pow(n as u32)
        .ok_or(PolyError::ResourceLimit { needed: u64::MAX, budget })?;
    if count > budget {
        return Err(PolyError::ResourceLimit { needed: count, budget });
    }
    Ok(MonicIter { field, n, idx: 0, count })
}

/// Rabin irreducibility test.
pub fn is_irreducible(p: &Poly, field: &FieldSpec) -> Result<bool, PolyError> {
    let n = match p.degree() {
        None => return Err(PolyError::ZeroPoly),
        Some(0) => return Err(PolyError::ConstantPoly),
        Some(n) => n,
    };
    if n == 1 {
        return Ok(true);
    }
    let q = field.q as u64;
    let t = Poly::t();
    // t^(q^n) == t mod p
    let mut frob = t.clone();
    for _ in 0..n {
        frob = frob.pow_mod(q, p, field)?;
    }
    if !frob.sub(&t, field).rem(p, field)?.is_zero() {
        return Ok(false);
    }
    for r in crate::ffcore::prime_factors(n as u64) {
        let k = n as u64 / r;
        let mut fr = t.clone();
        for _ in 0..k {
            fr = fr.pow_mod(q, p, field)?;
        }
        let g = fr.sub(&t, field).gcd(p, field);
        if !g.is_one() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of monic irreducibles of degree `n`: `(1/n) sum_{d|n} mu(d) q^{n/d}`.
pub fn irreducible_count(q: u64, n: u64) -> u64 {
    let mut total: i64 = 0;
    for d in 1..=n {
        if n % d != 0 {
            continue;
        }
        let mu = moebius(d);
        if mu == 0 {
            continue;
        }
        total += mu as i64 * q.pow((n / d) as u32) as i64;
    }
    (total as u64) / n
}

fn moebius(n: u64) -> i8 {
    let mut n = n;
    let mut mu = 1i8;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            mu = -mu;
        }
        d += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Per-degree lists of monic irreducibles, built by a product sieve and
/// extended on demand.
pub struct IrreducibleTable {
    pub field: FieldSpec,
    /// `by_degree[d]` lists the monic irreducibles of degree `d`
    /// in odometer order; index 0 is unused.
    pub by_degree: Vec<Vec<Poly>>,
}

impl IrreducibleTable {
    pub fn for_field(field: &FieldSpec) -> IrreducibleTable {
        IrreducibleTable { field: field.clone(), by_degree: vec![Vec::new()] }
    }

    /// Ensures degrees up to `n` are populated.
    pub fn extend_to(&mut self, n: usize, budget: u64) -> Result<(), PolyError> {
        let q = self.field.q as u64;
        while self.by_degree.len() <= n {
            let m = self.by_degree.len();
            let total = q
                .checked_pow(m as u32)
                .ok_or(PolyError::ResourceLimit { needed: u64::MAX, budget })?;
            if total > budget {
                return Err(PolyError::ResourceLimit { needed: total, budget });
            }
            if m == 1 {
                let mut linears = Vec::with_capacity(q as usize);
                for idx in 0..q {
                    linears.push(monic_from_index(&self.field, 1, idx));
                }
                self.by_degree.push(linears);
                continue;
            }
            // Mark all products P * Q with P irreducible, deg P <= m/2.
            let mut composite = vec![false; total as usize];
            for d in 1..=m / 2 {
                let qd = q.pow((m - d) as u32);
                for pidx in 0..self.by_degree[d].len() {
                    let p = self.by_degree[d][pidx].clone();
                    for qi in 0..qd {
                        let qq = monic_from_index(&self.field, m - d, qi);
                        let prod = p.mul(&qq, &self.field);
                        composite[monic_index(&self.field, &prod) as usize] = true;
                    }
                }
            }
            let mut irr = Vec::new();
            for (idx, &c) in composite.iter().enumerate() {
                if !c {
                    irr.push(monic_from_index(&self.field, m, idx as u64));
                }
            }
            debug_assert_eq!(irr.len() as u64, irreducible_count(q, m as u64));
            self.by_degree.push(irr);
        }
        Ok(())
    }

    pub fn degree(&mut self, n: usize, budget: u64) -> Result<&[Poly], PolyError> {
        self.extend_to(n, budget)?;
        Ok(&self.by_degree[n])
    }

    /// Installs a precomputed list (used by callers with a persistent cache).
    /// The list must be complete and in odometer order; this is verified
    /// against the Moebius count.
    pub fn install(&mut self, n: usize, polys: Vec<Poly>) -> bool {
        if polys.len() as u64 != irreducible_count(self.field.q as u64, n as u64) {
            return false;
        }
        while self.by_degree.len() <= n {
            self.by_degree.push(Vec::new());
        }
        self.by_degree[n] = polys;
        true
    }

    pub fn is_populated(&self, n: usize) -> bool {
        n < self.by_degree.len() && (n == 0 || !self.by_degree[n].is_empty())
    }
}

/// All monic irreducibles of degree `n`, in odometer order.
pub fn enumerate_irreducibles(
    field: &FieldSpec,
    n: usize,
    budget: u64,
) -> Result<Vec<Poly>, PolyError> {
    if n == 0 {
        return Err(PolyError::ConstantPoly);
    }
    let mut table = IrreducibleTable::for_field(field);
    table.extend_to(n, budget)?;
    Ok(table.by_degree.swap_remove(n))
}

/// A canonical factorization `unit * prod factor_i ^ mult_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElement,
    /// Distinct monic irreducible factors with multiplicities, sorted by
    /// (degree, odometer index).
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    /// Number of irreducible factors with multiplicity.
    pub fn big_omega(&self) -> u32 {
        self.factors.iter().map(|&(_, m)| m).sum()
    }

    /// Number of distinct irreducible factors.
    pub fn small_omega(&self) -> u32 {
        self.factors.len() as u32
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, m)| m == 1)
    }

    /// Reconstructs the factored polynomial.
    pub fn product(&self, f: &FieldSpec) -> Poly {
        let mut acc = Poly::constant(self.unit);
        for (p, m) in &self.factors {
            for _ in 0..*m {
                acc = acc.mul(p, f);
            }
        }
        acc
    }
}

struct XorShift64 {
    s: u64,
}

impl XorShift64 {
    fn new(seed: u64) -> XorShift64 {
        XorShift64 { s: seed | 1 }
    }

    fn next(&mut self) -> u64 {
        let mut x = self.s;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.s = x;
        x.wrapping_mul(0x2545F4914F6CDD1D)
    }
}

/// Deterministic seed for the randomized equal-degree splitting.
pub const DEFAULT_FACTOR_SEED: u64 = 0x5eed_f00d_cafe_0001;

/// Factorizes a nonzero polynomial into monic irreducibles.
///
/// Degree at most 8 is handled by trial division against sieved
/// irreducibles; larger degrees use distinct-degree splitting followed by
/// seeded equal-degree splitting, so output is reproducible.
pub fn factorize(p: &Poly, field: &FieldSpec) -> Result<Factorization, PolyError> {
    factorize_seeded(p, field, DEFAULT_FACTOR_SEED)
}

pub fn factorize_seeded(
    p: &Poly,
    field: &FieldSpec,
    seed: u64,
) -> Result<Factorization, PolyError> {
    if p.is_zero() {
        return Err(PolyError::ZeroPoly);
    }
    let unit = p.leading();
    let monic = p.scale(field.inv(unit).expect("nonzero leading coefficient"), field);
    let mut factors: Vec<(Poly, u32)> = Vec::new();
    if monic.deg() > 0 {
        if monic.deg() <= 8 || field.p == 2 {
            trial_division(&monic, field, &mut factors)?;
        } else {
            let mut rng = XorShift64::new(seed);
            for (sqfree, mult) in squarefree_decomposition(&monic, field)? {
                for (irr, inner) in distinct_degree_split(&sqfree, field, &mut rng)? {
                    debug_assert_eq!(inner, 1);
                    factors.push((irr, mult));
                }
            }
        }
    }
    factors.sort_by_key(|(f, _)| (f.deg(), monic_index(field, f)));
    Ok(Factorization { unit, factors })
}

fn trial_division(
    monic: &Poly,
    field: &FieldSpec,
    out: &mut Vec<(Poly, u32)>,
) -> Result<(), PolyError> {
    let mut rest = monic.clone();
    let mut table = IrreducibleTable::for_field(field);
    let mut d = 1usize;
    while rest.deg() >= 2 * d {
        for p in table.degree(d, DEFAULT_BUDGET)?.to_vec() {
            if rest.deg() < 2 * d && rest.deg() != d {
                break;
            }
            let mut mult = 0u32;
            loop {
                let (q, r) = rest.divrem(&p, field)?;
                if r.is_zero() {
                    mult += 1;
                    rest = q;
                } else {
                    break;
                }
            }
            if mult > 0 {
                out.push((p, mult));
            }
        }
        d += 1;
    }
    if rest.deg() >= 1 {
        out.push((rest, 1));
    }
    Ok(())
}

/// Squarefree decomposition in characteristic `p`:
/// returns pairs (squarefree monic factor, multiplicity) with distinct
/// multiplicities and pairwise coprime factors.
fn squarefree_decomposition(
    monic: &Poly,
    field: &FieldSpec,
) -> Result<Vec<(Poly, u32)>, PolyError> {
    let mut out: Vec<(Poly, u32)> = Vec::new();
    collect_squarefree(monic, field, 1, &mut out)?;
    Ok(out)
}

fn collect_squarefree(
    monic: &Poly,
    field: &FieldSpec,
    outer_mult: u32,
    out: &mut Vec<(Poly, u32)>,
) -> Result<(), PolyError> {
    if monic.deg() == 0 {
        return Ok(());
    }
    let deriv = monic.derivative(field);
    if deriv.is_zero() {
        // monic = h(t^p): take the p-th root and recurse.
        let root = pth_root(monic, field);
        return collect_squarefree(&root, field, outer_mult * field.p, out);
    }
    let mut g = monic.gcd(&deriv, field);
    let mut w = monic.divrem(&g, field)?.0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&g, field);
        let fac = w.divrem(&y, field)?.0;
        if fac.deg() >= 1 {
            out.push((fac, i * outer_mult));
        }
        g = g.divrem(&y, field)?.0;
        w = y;
        i += 1;
    }
    if g.deg() >= 1 {
        // Remaining part is a p-th power.
        let root = pth_root(&g, field);
        collect_squarefree(&root, field, outer_mult * field.p, out)?;
    }
    Ok(())
}

/// For `h` with zero derivative (h = g(t^p)), returns g with coefficients
/// mapped through the inverse Frobenius.
fn pth_root(h: &Poly, field: &FieldSpec) -> Poly {
    let p = field.p as usize;
    // Inverse of x -> x^p on F_{p^e} is x -> x^(p^(e-1)).
    let inv_frob_exp = (field.p as u64).pow(field.e - 1);
    let mut coeffs = Vec::with_capacity(h.coeffs.len() / p + 1);
    let mut i = 0usize;
    while i < h.coeffs.len() {
        coeffs.push(field.pow(h.coeffs[i], inv_frob_exp));
        i += p;
    }
    Poly::from_coeffs(coeffs)
}

/// Distinct-degree then equal-degree splitting of a squarefree monic input.
fn distinct_degree_split(
    sqfree: &Poly,
    field: &FieldSpec,
    rng: &mut XorShift64,
) -> Result<Vec<(Poly, u32)>, PolyError> {
    let q = field.q as u64;
    let mut out = Vec::new();
    let mut rest = sqfree.clone();
    let t = Poly::t();
    let mut h = t.clone();
    let mut d = 0usize;
    while rest.deg() >= 1 {
        d += 1;
        if 2 * d > rest.deg() {
            out.push((rest.clone(), 1));
            break;
        }
        h = h.pow_mod(q, &rest, field)?;
        let g = h.sub(&t, field).gcd(&rest, field);
        if g.deg() >= 1 {
            let mut pieces = Vec::new();
            equal_degree_split(&g, d, field, rng, &mut pieces)?;
            for piece in pieces {
                out.push((piece, 1));
            }
            rest = rest.divrem(&g, field)?.0;
            h = h.rem(&rest, field)?;
        }
    }
    Ok(out)
}

/// Cantor–Zassenhaus splitting for odd q: all factors of `f` have degree `d`.
fn equal_degree_split(
    f: &Poly,
    d: usize,
    field: &FieldSpec,
    rng: &mut XorShift64,
    out: &mut Vec<Poly>,
) -> Result<(), PolyError> {
    if f.deg() == d {
        out.push(f.clone());
        return Ok(());
    }
    let q = field.q as u64;
    let exp = (q.pow(d as u32) - 1) / 2;
    loop {
        // Random nonconstant polynomial of degree < deg f.
        let mut coeffs = Vec::with_capacity(f.deg());
        for _ in 0..f.deg() {
            coeffs.push(FqElement((rng.next() % q) as u16));
        }
        let h = Poly::from_coeffs(coeffs);
        if h.deg() < 1 {
            continue;
        }
        let hp = h.pow_mod(exp, f, field)?;
        let g = hp.sub(&Poly::one(), field).gcd(f, field);
        if g.deg() >= 1 && g.deg() < f.deg() {
            let rest = f.divrem(&g, field)?.0;
            equal_degree_split(&g, d, field, rng, out)?;
            equal_degree_split(&rest, d, field, rng, out)?;
            return Ok(());
        }
    }
}

/// Convenience: `Omega(N)`, the number of irreducible factors with
/// multiplicity.
pub fn big_omega(p: &Poly, field: &FieldSpec) -> Result<u32, PolyError> {
    Ok(factorize(p, field)?.big_omega())
}

/// Convenience: `omega(N)`, the number of distinct irreducible factors.
pub fn small_omega(p: &Poly, field: &FieldSpec) -> Result<u32, PolyError> {
    Ok(factorize(p, field)?.small_omega())
}
