//! Exact counting of monic polynomials with `k` irreducible factors.
//!
//! Character sums `π_{f_k}(n,χ)` are computed two ways: through the
//! generating-function recursions driven by L-polynomial power sums, and by
//! brute-force enumeration (the oracle path). Class counts and the
//! normalized race series `Δ_{f_k}(X;M,A,B)` are assembled from them.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::characters::{CharError, Character, ModulusContext, ResidueSet};
use crate::ffcore::{FieldSpec, FqElement};
use crate::lfunc::{compute_l_polynomial, power_sums, LfuncError};
use crate::polyring::{
    enumerate_monic, factorize, monic_from_index, packed_index, IrreducibleTable, Poly,
    PolyError,
};

/// Which factor-counting function drives the race.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum CountFunction {
    /// `Ω`: irreducible factors counted with multiplicity.
    BigOmega,
    /// `ω`: distinct irreducible factors.
    SmallOmega,
}

impl CountFunction {
    pub fn label(self) -> &'static str {
        match self {
            CountFunction::BigOmega => "Omega",
            CountFunction::SmallOmega => "omega",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum CountError {
    ResourceLimit,
    /// A character-sum class count failed to round to an integer.
    NonIntegerCount { re: f64, im: f64 },
    Char(CharError),
    Lfunc(LfuncError),
    Poly(PolyError),
}

impl fmt::Display for CountError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CountError::ResourceLimit => write!(f, "enumeration budget exceeded"),
            CountError::NonIntegerCount { re, im } => {
                write!(f, "class count {re}+{im}i is not close to an integer")
            }
            CountError::Char(e) => write!(f, "{e}"),
            CountError::Lfunc(e) => write!(f, "{e}"),
            CountError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl From<CharError> for CountError {
    fn from(e: CharError) -> Self {
        CountError::Char(e)
    }
}

impl From<LfuncError> for CountError {
    fn from(e: LfuncError) -> Self {
        CountError::Lfunc(e)
    }
}

impl From<PolyError> for CountError {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::ResourceLimit { .. } => CountError::ResourceLimit,
            other => CountError::Poly(other),
        }
    }
}

/// A counting value: exact rational along real-character towers, complex
/// floating point otherwise. Mixing promotes to complex.
#[derive(Clone, Debug, PartialEq)]
pub enum CountValue {
    Exact(BigRational),
    Complex(Complex<f64>),
}

impl CountValue {
    pub fn zero() -> CountValue {
        CountValue::Exact(BigRational::zero())
    }

    pub fn one() -> CountValue {
        CountValue::Exact(BigRational::one())
    }

    pub fn from_bigint(v: BigInt) -> CountValue {
        CountValue::Exact(BigRational::from_integer(v))
    }

    pub fn from_i64(v: i64) -> CountValue {
        CountValue::from_bigint(BigInt::from(v))
    }

    pub fn to_complex(&self) -> Complex<f64> {
        match self {
            CountValue::Exact(r) => Complex::new(rational_to_f64(r), 0.0),
            CountValue::Complex(c) => *c,
        }
    }

    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            CountValue::Exact(r) => Some(r),
            CountValue::Complex(_) => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, CountValue::Exact(_))
    }

    pub fn add(&self, o: &CountValue) -> CountValue {
        match (self, o) {
            (CountValue::Exact(a), CountValue::Exact(b)) => CountValue::Exact(a + b),
            _ => CountValue::Complex(self.to_complex() + o.to_complex()),
        }
    }

    pub fn sub(&self, o: &CountValue) -> CountValue {
        match (self, o) {
            (CountValue::Exact(a), CountValue::Exact(b)) => CountValue::Exact(a - b),
            _ => CountValue::Complex(self.to_complex() - o.to_complex()),
        }
    }

    pub fn mul(&self, o: &CountValue) -> CountValue {
        match (self, o) {
            (CountValue::Exact(a), CountValue::Exact(b)) => CountValue::Exact(a * b),
            _ => CountValue::Complex(self.to_complex() * o.to_complex()),
        }
    }

    pub fn neg(&self) -> CountValue {
        match self {
            CountValue::Exact(a) => CountValue::Exact(-a),
            CountValue::Complex(c) => CountValue::Complex(-c),
        }
    }

    pub fn div_u64(&self, n: u64) -> CountValue {
        match self {
            CountValue::Exact(a) => {
                CountValue::Exact(a / BigRational::from_integer(BigInt::from(n)))
            }
            CountValue::Complex(c) => CountValue::Complex(c / n as f64),
        }
    }
}

fn rational_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Power sums of the inverse zeros in exact big-integer arithmetic
/// (Newton's identities on the integer L-coefficients). `psi[n-1] = ψ(n,χ)`.
fn psi_from_ints(ints: &[i64], n_max: usize) -> Vec<BigInt> {
    let mut deg = ints.len();
    while deg > 1 && ints[deg - 1] == 0 {
        deg -= 1;
    }
    let deg = deg - 1;
    let mut s: Vec<BigInt> = vec![BigInt::zero(); n_max + 1];
    for n in 1..=n_max {
        let mut acc = if n <= deg {
            BigInt::from(-(n as i64)) * BigInt::from(ints[n])
        } else {
            BigInt::zero()
        };
        for i in 1..n.min(deg + 1) {
            acc -= BigInt::from(ints[i]) * &s[n - i];
        }
        s[n] = acc;
    }
    s.drain(1..).map(|x| -x).collect()
}

enum PsiVec {
    Exact(Vec<BigInt>),
    Num(Vec<Complex<f64>>),
}

/// Memoizing evaluator for `S(n,χ)` and the `π_{f_k}(n,χ)` recursions over a
/// fixed modulus context.
pub struct CountEngine<'a> {
    pub ctx: &'a ModulusContext,
    psi_cache: BTreeMap<Vec<u64>, PsiVec>,
    s_cache: BTreeMap<(Vec<u64>, usize), CountValue>,
    pi_cache: BTreeMap<(u8, Vec<u64>, u32, usize), CountValue>,
}

impl<'a> CountEngine<'a> {
    pub fn new(ctx: &'a ModulusContext) -> CountEngine<'a> {
        CountEngine {
            ctx,
            psi_cache: BTreeMap::new(),
            s_cache: BTreeMap::new(),
            pi_cache: BTreeMap::new(),
        }
    }

    /// `ψ(n,χ) = Σ_{deg f = n, (f,M)=1} Λ(f)χ(f)`.
    ///
    /// For non-principal `χ` this comes from the L-polynomial power sums.
    /// When `χ` (or a power of the base character) is principal, the zeta
    /// side provides the value: `q^n − Σ_{P|M, deg P | n} deg P`.
    pub fn psi(&mut self, chi: &Character, n: usize) -> Result<CountValue, CountError> {
        if n == 0 {
            return Ok(CountValue::zero());
        }
        if chi.is_principal {
            let q = BigInt::from(self.ctx.field.q);
            let mut acc = q.pow(n as u32);
            for (p, _) in &self.ctx.factorization.factors {
                if n % p.deg() == 0 {
                    acc -= BigInt::from(p.deg());
                }
            }
            return Ok(CountValue::from_bigint(acc));
        }
        let key = chi.exponents.clone();
        let needs_fill = match self.psi_cache.get(&key) {
            Some(PsiVec::Exact(v)) => v.len() < n,
            Some(PsiVec::Num(v)) => v.len() < n,
            None => true,
        };
        if needs_fill {
            let l = compute_l_polynomial(self.ctx, chi)?;
            let n_fill = n.max(2 * self.ctx.modulus.deg());
            let entry = match &l.coeffs_int {
                Some(ints) => PsiVec::Exact(psi_from_ints(ints, n_fill)),
                None => PsiVec::Num(power_sums(&l, n_fill)),
            };
            self.psi_cache.insert(key.clone(), entry);
        }
        Ok(match self.psi_cache.get(&key).unwrap() {
            PsiVec::Exact(v) => CountValue::from_bigint(v[n - 1].clone()),
            PsiVec::Num(v) => CountValue::Complex(v[n - 1]),
        })
    }

    /// `S(n,χ) = Σ_{deg P = n, P∤M} χ(P)` by the triangular solve
    /// `n·S(n,χ) = ψ(n,χ) − Σ_{ℓ|n, ℓ<n} ℓ·S(ℓ, χ^{n/ℓ})`.
    pub fn s_value(&mut self, chi: &Character, n: usize) -> Result<CountValue, CountError> {
        debug_assert!(n >= 1);
        let key = (chi.exponents.clone(), n);
        if let Some(v) = self.s_cache.get(&key) {
            return Ok(v.clone());
        }
        let mut acc = self.psi(chi, n)?;
        for l in 1..n {
            if n % l != 0 {
                continue;
            }
            let power = self.ctx.char_pow(chi, (n / l) as u64);
            let s = self.s_value(&power, l)?;
            acc = acc.sub(&s.mul(&CountValue::from_i64(l as i64)));
        }
        let out = acc.div_u64(n as u64);
        self.s_cache.insert(key, out.clone());
        Ok(out)
    }

    /// `π_{f_1}(n,χ)` for `f = Ω`: the prime sum `S(n,χ)`.
    pub fn pi_f1(&mut self, chi: &Character, n: usize) -> Result<CountValue, CountError> {
        self.s_value(chi, n)
    }

    /// Coefficient of `u^n` in `F_{f_k}(u,χ)` by the recursions
    /// `F_{Ω_k} = (1/k) Σ_ℓ F_{Ω_{k−ℓ}}(u,χ) F_{Ω_1}(u^ℓ,χ^ℓ)` and
    /// `F_{ω_k} = (1/k) Σ_ℓ (−1)^{ℓ+1} F_{ω_{k−ℓ}}(u,χ) F̃(u,χ;ℓ)`.
    pub fn pi_fk(
        &mut self,
        chi: &Character,
        f: CountFunction,
        k: u32,
        n: usize,
    ) -> Result<CountValue, CountError> {
        if k == 0 {
            return Ok(if n == 0 { CountValue::one() } else { CountValue::zero() });
        }
        if n == 0 || (k as usize) > n {
            return Ok(CountValue::zero());
        }
        let key = (f as u8, chi.exponents.clone(), k, n);
        if let Some(v) = self.pi_cache.get(&key) {
            return Ok(v.clone());
        }
        let mut acc = CountValue::zero();
        match f {
            CountFunction::BigOmega => {
                for l in 1..=k as usize {
                    let power = self.ctx.char_pow(chi, l as u64);
                    for m in 1..=n / l {
                        let lower = self.pi_fk(chi, f, k - l as u32, n - l * m)?;
                        if lower == CountValue::zero() {
                            continue;
                        }
                        let s = self.s_value(&power, m)?;
                        acc = acc.add(&lower.mul(&s));
                    }
                }
            }
            CountFunction::SmallOmega => {
                for l in 1..=k as usize {
                    let mut term = CountValue::zero();
                    for r in l..=n {
                        let lower = self.pi_fk(chi, f, k - l as u32, n - r)?;
                        if lower == CountValue::zero() {
                            continue;
                        }
                        let ft = self.f_tilde(chi, l, r)?;
                        term = term.add(&lower.mul(&ft));
                    }
                    if l % 2 == 0 {
                        term = term.neg();
                    }
                    acc = acc.add(&term);
                }
            }
        }
        let out = acc.div_u64(k as u64);
        self.pi_cache.insert(key, out.clone());
        Ok(out)
    }

    /// Coefficient of `u^r` in
    /// `F̃(u,χ;ℓ) = Σ_P Σ_{j≥ℓ} C(j−1,ℓ−1) χ(P)^j u^{j·deg P}`.
    fn f_tilde(&mut self, chi: &Character, l: usize, r: usize) -> Result<CountValue, CountError> {
        let mut acc = CountValue::zero();
        for j in l..=r {
            if r % j != 0 {
                continue;
            }
            let power = self.ctx.char_pow(chi, j as u64);
            let s = self.s_value(&power, r / j)?;
            acc = acc.add(&s.mul(&CountValue::from_bigint(binomial(j - 1, l - 1))));
        }
        Ok(acc)
    }

    /// Table of `π_{f_k}(n,χ)` for `1 ≤ k ≤ k_max`, `1 ≤ n ≤ n_max`.
    pub fn count_table(
        &mut self,
        chi: &Character,
        f: CountFunction,
        k_max: u32,
        n_max: usize,
    ) -> Result<CountTable, CountError> {
        let mut values = Vec::with_capacity(k_max as usize);
        for k in 1..=k_max {
            let mut row = Vec::with_capacity(n_max);
            for n in 1..=n_max {
                row.push(self.pi_fk(chi, f, k, n)?);
            }
            values.push(row);
        }
        Ok(CountTable { f, provenance: Provenance::Recursion, values })
    }
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k.min(n - k) {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Provenance {
    Recursion,
    Enumeration,
}

/// `values[k-1][n-1] = π_{f_k}(n,χ)`.
pub struct CountTable {
    pub f: CountFunction,
    pub provenance: Provenance,
    pub values: Vec<Vec<CountValue>>,
}

/// Spec-shaped wrappers around a transient engine.
pub fn pi_f1_exact(
    ctx: &ModulusContext,
    chi: &Character,
    n: usize,
) -> Result<CountValue, CountError> {
    CountEngine::new(ctx).pi_f1(chi, n)
}

pub fn pi_omega_k(
    ctx: &ModulusContext,
    chi: &Character,
    n: usize,
    k: u32,
) -> Result<CountValue, CountError> {
    CountEngine::new(ctx).pi_fk(chi, CountFunction::BigOmega, k, n)
}

pub fn pi_small_omega_k(
    ctx: &ModulusContext,
    chi: &Character,
    n: usize,
    k: u32,
) -> Result<CountValue, CountError> {
    CountEngine::new(ctx).pi_fk(chi, CountFunction::SmallOmega, k, n)
}

fn round_to_integer(c: Complex<f64>, tol: f64) -> Result<i64, CountError> {
    let r = libm::round(c.re);
    if (c.re - r).abs() > tol || c.im.abs() > tol {
        return Err(CountError::NonIntegerCount { re: c.re, im: c.im });
    }
    Ok(r as i64)
}

/// Per-character weights `Σ_{a∈A} conj χ(a)` over the unit classes of a set.
fn class_weight(
    ctx: &ModulusContext,
    chi: &Character,
    set: &ResidueSet,
) -> Result<Complex<f64>, CountError> {
    let units = ctx.unit_table()?;
    let mut acc = Complex::new(0.0, 0.0);
    for ci in set.indices() {
        let dl = &units.dlogs[ci * units.stride..(ci + 1) * units.stride];
        acc += ctx.value_from_dlogs(chi, dl).conj().to_complex();
    }
    Ok(acc)
}

/// `π_{f_k}(n; M, A)` through the character-sum expansion
/// `(1/φ) Σ_χ (Σ_{a∈A} conj χ(a)) π_{f_k}(n,χ)`.
pub fn pi_fk_by_class(
    engine: &mut CountEngine,
    n: usize,
    k: u32,
    f: CountFunction,
    a: &ResidueSet,
) -> Result<i64, CountError> {
    let ctx = engine.ctx;
    let chars = ctx.all_characters()?;
    let mut acc = Complex::new(0.0, 0.0);
    for chi in &chars {
        let w = class_weight(ctx, chi, a)?;
        if w.norm() < 1e-12 {
            continue;
        }
        acc += w * engine.pi_fk(chi, f, k, n)?.to_complex();
    }
    round_to_integer(acc / ctx.phi as f64, 1e-6)
}

/// `π_{f_k}(n; M, A)` by enumerate → factorize → classify.
pub fn pi_fk_by_class_bruteforce(
    ctx: &ModulusContext,
    n: usize,
    k: u32,
    f: CountFunction,
    a: &ResidueSet,
    budget: u64,
) -> Result<u64, CountError> {
    let field = &ctx.field;
    let units = ctx.unit_table()?;
    let width = ctx.modulus.deg();
    let mut count = 0u64;
    for poly in enumerate_monic(field, n, budget)? {
        let r = poly.rem(&ctx.modulus, field)?;
        let idx = units.index_of[packed_index(field, &r, width) as usize];
        if idx == u32::MAX || !a.contains(idx as usize) {
            continue;
        }
        let fac = factorize(&poly, field)?;
        let stat = match f {
            CountFunction::BigOmega => fac.big_omega(),
            CountFunction::SmallOmega => fac.small_omega(),
        };
        if stat == k {
            count += 1;
        }
    }
    Ok(count)
}

/// `Ω` and `ω` for every monic polynomial of degree `n`, indexed by monic
/// index, via a divisor sieve (no per-polynomial factorization).
pub fn factor_count_tables(
    field: &FieldSpec,
    n: usize,
    budget: u64,
) -> Result<(Vec<u8>, Vec<u8>), CountError> {
    let q = field.q as u64;
    let total = q.checked_pow(n as u32).ok_or(CountError::ResourceLimit)?;
    if total > budget {
        return Err(CountError::ResourceLimit);
    }
    let mut big = vec![0u8; total as usize];
    let mut small = vec![0u8; total as usize];
    let add_tab: Vec<u64> = (0..q * q)
        .map(|i| field.add(FqElement((i / q) as u16), FqElement((i % q) as u16)).0 as u64)
        .collect();
    let mut table = IrreducibleTable::for_field(field);
    for d in 1..=n {
        let primes: Vec<Poly> = table.degree(d, budget)?.to_vec();
        for p in &primes {
            sieve_multiples(&mut small, p, n, field, &add_tab);
            let mut power = p.clone();
            loop {
                sieve_multiples(&mut big, &power, n, field, &add_tab);
                if power.deg() + d > n {
                    break;
                }
                power = power.mul(p, field);
            }
        }
    }
    Ok((big, small))
}

/// Adds 1 to `counts[monic_index(G·Q)]` for every monic `Q` with
/// `deg(G·Q) = n`. Products are tracked as packed digit vectors mod `t^n`,
/// combined digit-wise through the field-addition lookup.
fn sieve_multiples(
    counts: &mut [u8],
    g: &Poly,
    n: usize,
    field: &FieldSpec,
    add_tab: &[u64],
) {
    let q = field.q as u64;
    let m = n - g.deg();
    // shifted[i][c] = packed((c · t^i · G) mod t^n), i ≤ m; i = m uses c = 1
    // for the monic leading term of Q.
    let mut shifted: Vec<Vec<u64>> = Vec::with_capacity(m + 1);
    let mut ti_g = g.clone();
    for i in 0..=m {
        let mut per_c = Vec::with_capacity(q as usize);
        for c in 0..q {
            let scaled = ti_g.scale(FqElement(c as u16), field);
            let truncated = Poly::from_coeffs(
                scaled.coeffs.iter().take(n).copied().collect::<Vec<_>>(),
            );
            per_c.push(packed_index(field, &truncated, n));
        }
        shifted.push(per_c);
        if i < m {
            ti_g = ti_g.mul(&Poly::t(), field);
        }
    }
    let packed_add = |a: u64, b: u64| -> u64 {
        let mut out = 0u64;
        let mut mult = 1u64;
        let (mut a, mut b) = (a, b);
        for _ in 0..n {
            out += add_tab[((a % q) * q + b % q) as usize] * mult;
            a /= q;
            b /= q;
            mult *= q;
        }
        out
    };
    // DFS over the m free coefficients of Q.
    fn rec(
        counts: &mut [u8],
        shifted: &[Vec<u64>],
        packed_add: &dyn Fn(u64, u64) -> u64,
        q: u64,
        level: usize,
        acc: u64,
    ) {
        if level == 0 {
            counts[acc as usize] += 1;
            return;
        }
        for c in 0..q {
            rec(counts, shifted, packed_add, q, level - 1, packed_add(acc, shifted[level - 1][c as usize]));
        }
    }
    rec(counts, &shifted, &packed_add, q, m, shifted[m][1]);
}

/// Class-by-class counts of monic degree-`n` polynomials with each factor
/// count, shared between the oracle sweep and the CLI.
pub struct ClassCounts {
    pub n: usize,
    /// `big[class * (n+1) + k]` counts `Ω(N) = k` in the unit class.
    pub big: Vec<u32>,
    /// Same layout for `ω`.
    pub small: Vec<u32>,
}

impl ClassCounts {
    pub fn get(&self, f: CountFunction, class: usize, k: usize) -> u32 {
        let row = match f {
            CountFunction::BigOmega => &self.big,
            CountFunction::SmallOmega => &self.small,
        };
        row[class * (self.n + 1) + k]
    }
}

/// Buckets the sieve output of [`factor_count_tables`] by unit class modulo
/// the context's modulus. Residues of `N = t^d·A + B` (with `d = deg M`)
/// combine a precomputed table for the high part with the literal low part.
pub fn class_count_table(
    ctx: &ModulusContext,
    n: usize,
    big: &[u8],
    small: &[u8],
) -> Result<ClassCounts, CountError> {
    let field = &ctx.field;
    let q = field.q as u64;
    let d = ctx.modulus.deg();
    let units = ctx.unit_table()?;
    let classes = units.classes.len();
    let mut out = ClassCounts {
        n,
        big: vec![0u32; classes * (n + 1)],
        small: vec![0u32; classes * (n + 1)],
    };
    let add_tab: Vec<u64> = (0..q * q)
        .map(|i| field.add(FqElement((i / q) as u16), FqElement((i % q) as u16)).0 as u64)
        .collect();
    let total = q.pow(n as u32);
    if n < d {
        // The residue of a monic degree-n polynomial is itself; its packed
        // form needs the leading coefficient restored at position n.
        let lead = q.pow(n as u32);
        for packed in 0..total {
            let class = units.index_of[(packed + lead) as usize];
            if class == u32::MAX {
                continue;
            }
            let base = class as usize * (n + 1);
            out.big[base + big[packed as usize] as usize] += 1;
            out.small[base + small[packed as usize] as usize] += 1;
        }
        return Ok(out);
    }
    // high_res[A] = packed((A · t^d) mod M) for monic A of degree n − d.
    let q_d = q.pow(d as u32);
    let highs = q.pow((n - d) as u32);
    let mut high_res = Vec::with_capacity(highs as usize);
    let mut t_d_coeffs = vec![FqElement(0); d + 1];
    t_d_coeffs[d] = FqElement(1);
    let t_d = Poly::from_coeffs(t_d_coeffs);
    for a_idx in 0..highs {
        let a = monic_from_index(field, n - d, a_idx);
        let r = a.mul(&t_d, field).rem(&ctx.modulus, field)?;
        high_res.push(packed_index(field, &r, d));
    }
    let packed_add = |a: u64, b: u64| -> u64 {
        let mut out = 0u64;
        let mut mult = 1u64;
        let (mut a, mut b) = (a, b);
        for _ in 0..d {
            out += add_tab[((a % q) * q + b % q) as usize] * mult;
            a /= q;
            b /= q;
            mult *= q;
        }
        out
    };
    for packed in 0..total {
        let res = packed_add(high_res[(packed / q_d) as usize], packed % q_d);
        let class = units.index_of[res as usize];
        if class == u32::MAX {
            continue;
        }
        let base = class as usize * (n + 1);
        out.big[base + big[packed as usize] as usize] += 1;
        out.small[base + small[packed as usize] as usize] += 1;
    }
    Ok(out)
}

/// Brute-force `π_{f_k}(n,χ)` from bucketed class counts.
pub fn pi_fk_from_class_counts(
    ctx: &ModulusContext,
    cc: &ClassCounts,
    chi: &Character,
    f: CountFunction,
    k: usize,
) -> Result<Complex<f64>, CountError> {
    let units = ctx.unit_table()?;
    if k > cc.n {
        return Ok(Complex::new(0.0, 0.0));
    }
    let mut acc = Complex::new(0.0, 0.0);
    for ci in 0..units.classes.len() {
        let cnt = cc.get(f, ci, k);
        if cnt == 0 {
            continue;
        }
        let dl = &units.dlogs[ci * units.stride..(ci + 1) * units.stride];
        acc += ctx.value_from_dlogs(chi, dl).to_complex() * cnt as f64;
    }
    Ok(acc)
}

/// The normalized race `Δ_{f_k}(X; M, A, B)` for `X = 2..=x_max`.
pub struct RaceSeries {
    pub modulus: Poly,
    pub a_label: String,
    pub b_label: String,
    pub f: CountFunction,
    pub k: u32,
    /// `delta[i] = Δ_{f_k}(i + 2; M, A, B)`; natural logarithm throughout.
    pub delta: Vec<f64>,
}

impl RaceSeries {
    pub fn x_start(&self) -> usize {
        2
    }
}

fn factorial(k: u32) -> f64 {
    (1..=k as u64).fold(1.0, |acc, i| acc * i as f64)
}

/// Builds the race series from exact per-degree class counts (recursion
/// path). The normalization is singular at `X = 1` for `k ≥ 2`, so the
/// series starts at `X = 2`.
pub fn delta_fk_exact(
    engine: &mut CountEngine,
    a: &ResidueSet,
    b: &ResidueSet,
    f: CountFunction,
    k: u32,
    x_max: usize,
) -> Result<RaceSeries, CountError> {
    let ctx = engine.ctx;
    let q = ctx.field.q as f64;
    let chars = ctx.all_characters()?;
    let mut weights = Vec::with_capacity(chars.len());
    for chi in &chars {
        weights.push((class_weight(ctx, chi, a)?, class_weight(ctx, chi, b)?));
    }
    let mut cum_a = 0i64;
    let mut cum_b = 0i64;
    let mut delta = Vec::with_capacity(x_max.saturating_sub(1));
    let norm_fact = factorial(k.saturating_sub(1));
    for x in 1..=x_max {
        let mut acc_a = Complex::new(0.0, 0.0);
        let mut acc_b = Complex::new(0.0, 0.0);
        for (chi, (wa, wb)) in chars.iter().zip(&weights) {
            if wa.norm() < 1e-12 && wb.norm() < 1e-12 {
                continue;
            }
            let v = engine.pi_fk(chi, f, k, x)?.to_complex();
            acc_a += wa * v;
            acc_b += wb * v;
        }
        cum_a += round_to_integer(acc_a / ctx.phi as f64, 1e-6)?;
        cum_b += round_to_integer(acc_b / ctx.phi as f64, 1e-6)?;
        if x < 2 {
            continue;
        }
        let xf = x as f64;
        let norm = xf * norm_fact
            / (libm::pow(q, xf / 2.0) * libm::pow(libm::log(xf), (k - 1) as f64));
        delta.push(norm * (cum_a as f64 / a.len() as f64 - cum_b as f64 / b.len() as f64));
    }
    Ok(RaceSeries {
        modulus: engine.ctx.modulus.clone(),
        a_label: a.label.clone(),
        b_label: b.label.clone(),
        f,
        k,
        delta,
    })
}
