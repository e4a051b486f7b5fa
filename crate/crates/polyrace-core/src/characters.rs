//! The unit group `(F_q[t]/(M))^*` and its Dirichlet characters.
//!
//! The group is decomposed into cyclic factors per prime-power component of
//! `M`: a Teichmüller lift of a residue-field generator (order `q^d - 1`)
//! plus, for components `P^e` with `e > 1`, a basis of one-units
//! `1 + c t^b P^i` (p not dividing i) whose orders are powers of p. The
//! decomposition is verified at construction time by checking that products
//! over all exponent combinations enumerate the component's units exactly
//! once.
//!
//! Characters are exponent vectors with respect to the cyclic factors, and
//! values are exact exponents of a primitive root of unity of order the
//! group exponent, so real characters stay in `{0, ±1}` exactly.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex;

use crate::ffcore::{prime_factors, FieldSpec, FqElement};
use crate::polyring::{packed_index, poly_from_packed, Poly, PolyError};

/// Largest packed-residue space for which dense lookup tables are built.
pub const DENSE_LIMIT: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CharError {
    NonMonic,
    ConstantModulus,
    EvenCharacteristic,
    NotSquarefree,
    /// The requested operation needs dense tables that would exceed
    /// [`DENSE_LIMIT`] entries.
    TooLarge,
    /// Principal character where a non-principal one is required.
    PrincipalCharacter,
    Poly(PolyError),
}

impl fmt::Display for CharError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharError::NonMonic => write!(f, "modulus must be monic"),
            CharError::ConstantModulus => write!(f, "modulus must have degree >= 1"),
            CharError::EvenCharacteristic => {
                write!(f, "operation requires odd characteristic")
            }
            CharError::NotSquarefree => write!(f, "operation requires squarefree modulus"),
            CharError::TooLarge => write!(f, "modulus too large for dense tables"),
            CharError::PrincipalCharacter => {
                write!(f, "operation undefined for the principal character")
            }
            CharError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for CharError {}

impl From<PolyError> for CharError {
    fn from(e: PolyError) -> CharError {
        CharError::Poly(e)
    }
}

fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

/// One cyclic factor of a local unit group.
#[derive(Clone, Debug)]
pub struct CyclicFactor {
    /// Generator, reduced mod the component modulus.
    pub generator: Poly,
    pub order: u64,
}

enum DlogSupport {
    /// Packed residue (width = deg of component modulus) -> mixed-radix
    /// packed exponent vector; `u64::MAX` marks non-units.
    Dense(Vec<u64>),
    /// Baby-step/giant-step data for a single cyclic factor (e = 1).
    Bsgs { m: u64, baby: BTreeMap<u64, u64>, giant_step: Poly },
}

/// The unit group of one prime-power component `P^e` of the modulus.
pub struct LocalComponent {
    pub prime: Poly,
    pub exponent: u32,
    /// `P^e`.
    pub modulus: Poly,
    pub phi: u64,
    pub factors: Vec<CyclicFactor>,
    width: usize,
    support: DlogSupport,
}

impl LocalComponent {
    /// Discrete log of a residue already reduced mod the component modulus;
    /// `None` for non-units.
    pub fn dlog(&self, field: &FieldSpec, a: &Poly) -> Option<Vec<u64>> {
        match &self.support {
            DlogSupport::Dense(table) => {
                let code = table[packed_index(field, a, self.width) as usize];
                if code == u64::MAX {
                    return None;
                }
                Some(self.unpack(code))
            }
            DlogSupport::Bsgs { m, baby, giant_step } => {
                if a.rem(&self.prime, field).ok()?.is_zero() {
                    return None;
                }
                let order = self.factors[0].order;
                let mut cur = a.clone();
                let mut i = 0u64;
                while i * m <= order {
                    if let Some(&j) = baby.get(&packed_index(field, &cur, self.width)) {
                        return Some(vec![(i * m + j) % order]);
                    }
                    cur = cur.mul(giant_step, field).rem(&self.modulus, field).ok()?;
                    i += 1;
                }
                None
            }
        }
    }

    fn unpack(&self, mut code: u64) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.factors.len());
        for f in &self.factors {
            out.push(code % f.order);
            code /= f.order;
        }
        out
    }

    /// Dense per-residue discrete-log codes, when available.
    pub fn dense_table(&self) -> Option<&[u64]> {
        match &self.support {
            DlogSupport::Dense(t) => Some(t),
            DlogSupport::Bsgs { .. } => None,
        }
    }

    pub fn unpack_code(&self, code: u64) -> Vec<u64> {
        self.unpack(code)
    }
}

/// Dense enumeration of the unit classes mod M, built when `q^{deg M}` is
/// within [`DENSE_LIMIT`].
pub struct UnitTable {
    /// Packed residue of each unit class representative (degree < deg M),
    /// in odometer order.
    pub classes: Vec<u64>,
    /// Packed residue -> class index (`u32::MAX` for non-units).
    pub index_of: Vec<u32>,
    /// Flat discrete-log vectors, `stride` entries per class, concatenated
    /// over local components in order.
    pub dlogs: Vec<u64>,
    pub stride: usize,
}

/// The unit group `(F_q[t]/(M))^*` with its cyclic decomposition.
pub struct ModulusContext {
    pub field: FieldSpec,
    pub modulus: Poly,
    pub factorization: crate::polyring::Factorization,
    pub phi: u64,
    pub omega_m: u32,
    pub is_squarefree: bool,
    /// Group exponent: lcm of the cyclic factor orders.
    pub exponent: u64,
    pub components: Vec<LocalComponent>,
    pub units: Option<UnitTable>,
}

/// A Dirichlet character mod M as an exponent vector over the cyclic
/// factors (concatenated across components).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub exponents: Vec<u64>,
    pub order: u64,
    pub is_principal: bool,
    /// order divides 2
    pub is_real: bool,
}

/// An exact character value: zero or `e^{2 pi i num/den}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharValue {
    Zero,
    Root { num: u64, den: u64 },
}

impl CharValue {
    pub fn is_zero(self) -> bool {
        matches!(self, CharValue::Zero)
    }

    pub fn is_one(self) -> bool {
        matches!(self, CharValue::Root { num: 0, .. })
    }

    /// Exact integer value for zero/±1 values; `None` otherwise.
    pub fn as_int(self) -> Option<i64> {
        match self {
            CharValue::Zero => Some(0),
            CharValue::Root { num: 0, .. } => Some(1),
            CharValue::Root { num, den } => {
                if den % 2 == 0 && num == den / 2 {
                    Some(-1)
                } else {
                    None
                }
            }
        }
    }

    pub fn to_complex(self) -> Complex<f64> {
        match self {
            CharValue::Zero => Complex::new(0.0, 0.0),
            CharValue::Root { num, den } => {
                let theta = 2.0 * core::f64::consts::PI * (num as f64) / (den as f64);
                Complex::new(libm::cos(theta), libm::sin(theta))
            }
        }
    }

    pub fn conj(self) -> CharValue {
        match self {
            CharValue::Zero => CharValue::Zero,
            CharValue::Root { num, den } => {
                CharValue::Root { num: if num == 0 { 0 } else { den - num }, den }
            }
        }
    }
}

/// Builds the unit-group context for a monic modulus of degree >= 1.
pub fn make_context(field: &FieldSpec, m: &Poly) -> Result<ModulusContext, CharError> {
    if m.is_zero() || m.deg() == 0 {
        return Err(CharError::ConstantModulus);
    }
    if !m.is_monic() {
        return Err(CharError::NonMonic);
    }
    let factorization = crate::polyring::factorize(m, field)?;
    let mut components = Vec::new();
    let mut phi: u64 = 1;
    let mut exponent: u64 = 1;
    for (p, e) in &factorization.factors {
        let comp = build_component(field, p, *e)?;
        phi = phi
            .checked_mul(comp.phi)
            .ok_or(CharError::TooLarge)?;
        for f in &comp.factors {
            exponent = lcm_u64(exponent, f.order);
        }
        components.push(comp);
    }
    let omega_m = factorization.small_omega();
    let is_squarefree = factorization.is_squarefree();
    let mut ctx = ModulusContext {
        field: field.clone(),
        modulus: m.clone(),
        factorization,
        phi,
        omega_m,
        is_squarefree,
        exponent,
        components,
        units: None,
    };
    let space = (field.q as u64).checked_pow(m.deg() as u32);
    if let Some(space) = space {
        if space <= DENSE_LIMIT {
            ctx.units = Some(build_unit_table(&ctx, space));
        }
    }
    Ok(ctx)
}

fn build_component(field: &FieldSpec, prime: &Poly, e: u32) -> Result<LocalComponent, CharError> {
    let q = field.q as u64;
    let d = prime.deg();
    let mut modulus = Poly::one();
    for _ in 0..e {
        modulus = modulus.mul(prime, field);
    }
    let width = modulus.deg();
    let size = q.checked_pow(width as u32).ok_or(CharError::TooLarge)?;
    let phi = q.pow((d * e as usize) as u32) - q.pow((d * (e as usize - 1)) as u32);

    // Teichmüller factor: lift of a residue-field generator.
    let res_order = q.pow(d as u32) - 1;
    let gamma = residue_field_generator(field, prime, res_order)?;
    let tau = if e == 1 {
        gamma
    } else {
        let lift_exp = q.pow((d * (e as usize - 1)) as u32);
        gamma.pow_mod(lift_exp, &modulus, field)?
    };
    let mut factors = vec![CyclicFactor { generator: tau, order: res_order }];

    // One-unit basis for e > 1.
    if e > 1 {
        let p = field.p as u64;
        for i in 1..e as u64 {
            if i % p == 0 {
                continue;
            }
            // order = p^m with m minimal such that i * p^m >= e
            let mut ord = 1u64;
            let mut reach = i;
            while reach < e as u64 {
                reach *= p;
                ord *= p;
            }
            let mut p_pow_i = Poly::one();
            for _ in 0..i {
                p_pow_i = p_pow_i.mul(prime, field);
            }
            for b in 0..d {
                for a in 0..field.e {
                    // c = x^a as an F_p-basis element of F_q
                    let mut cv = vec![0u32; a as usize + 1];
                    cv[a as usize] = 1;
                    let c = field.from_coeffs(&cv);
                    let mut term = vec![FqElement::ZERO; b + 1];
                    term[b] = c;
                    let g = Poly::one()
                        .add(&Poly::from_coeffs(term).mul(&p_pow_i, field), field)
                        .rem(&modulus, field)?;
                    factors.push(CyclicFactor { generator: g, order: ord });
                }
            }
        }
    }

    let order_product: u64 = factors.iter().map(|f| f.order).product();
    assert_eq!(order_product, phi, "cyclic decomposition order mismatch");

    let support = if size <= DENSE_LIMIT {
        DlogSupport::Dense(fill_dense(field, &modulus, &factors, size, phi)?)
    } else if e == 1 {
        let m = isqrt_ceil(res_order);
        let mut baby = BTreeMap::new();
        let g = &factors[0].generator;
        let mut cur = Poly::one();
        for j in 0..m {
            baby.entry(packed_index(field, &cur, width)).or_insert(j);
            cur = cur.mul(g, field).rem(&modulus, field)?;
        }
        let giant_step = g.pow_mod(res_order - m, &modulus, field)?;
        DlogSupport::Bsgs { m, baby, giant_step }
    } else {
        return Err(CharError::TooLarge);
    };

    Ok(LocalComponent {
        prime: prime.clone(),
        exponent: e,
        modulus,
        phi,
        factors,
        width,
        support,
    })
}

fn isqrt_ceil(n: u64) -> u64 {
    let mut r = libm::sqrt(n as f64) as u64;
    while r * r < n {
        r += 1;
    }
    r.max(1)
}

fn residue_field_generator(
    field: &FieldSpec,
    prime: &Poly,
    order: u64,
) -> Result<Poly, CharError> {
    let facs = prime_factors(order);
    let width = prime.deg();
    let q = field.q as u64;
    let count = q.pow(width as u32);
    for idx in 1..count {
        let cand = poly_from_packed(field, idx, width);
        if cand.is_zero() {
            continue;
        }
        let mut ok = true;
        for &r in &facs {
            if cand.pow_mod(order / r, prime, field)?.is_one() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(cand);
        }
    }
    unreachable!("residue field of a finite field has a generator")
}

fn fill_dense(
    field: &FieldSpec,
    modulus: &Poly,
    factors: &[CyclicFactor],
    size: u64,
    phi: u64,
) -> Result<Vec<u64>, CharError> {
    let width = modulus.deg();
    let mut table = vec![u64::MAX; size as usize];
    // Depth-first product over all exponent combinations; the bijection
    // check below is what validates the one-unit basis.
    let mut stack: Vec<(usize, Poly, u64, u64)> = vec![(0, Poly::one(), 0, 1)];
    while let Some((idx, acc, code, mult)) = stack.pop() {
        if idx == factors.len() {
            let pi = packed_index(field, &acc, width) as usize;
            assert_eq!(table[pi], u64::MAX, "cyclic decomposition not a bijection");
            table[pi] = code;
            continue;
        }
        let f = &factors[idx];
        let mut cur = acc;
        for e in 0..f.order {
            stack.push((idx + 1, cur.clone(), code + mult * e, mult * f.order));
            if e + 1 < f.order {
                cur = cur.mul(&f.generator, field).rem(modulus, field)?;
            }
        }
    }
    let filled = table.iter().filter(|&&c| c != u64::MAX).count() as u64;
    assert_eq!(filled, phi, "unit count mismatch in dense table");
    Ok(table)
}

fn build_unit_table(ctx: &ModulusContext, space: u64) -> UnitTable {
    let field = &ctx.field;
    let width = ctx.modulus.deg();
    let stride: usize = ctx.components.iter().map(|c| c.factors.len()).sum();
    let mut classes = Vec::new();
    let mut index_of = vec![u32::MAX; space as usize];
    let mut dlogs = Vec::new();
    'outer: for packed in 0..space {
        let poly = poly_from_packed(field, packed, width);
        let mut vecs: Vec<u64> = Vec::with_capacity(stride);
        for comp in &ctx.components {
            let a = poly.rem(&comp.modulus, field).expect("nonzero modulus");
            match comp.dlog(field, &a) {
                Some(v) => vecs.extend(v),
                None => continue 'outer,
            }
        }
        index_of[packed as usize] = classes.len() as u32;
        classes.push(packed);
        dlogs.extend(vecs);
    }
    debug_assert_eq!(classes.len() as u64, ctx.phi);
    UnitTable { classes, index_of, dlogs, stride }
}

impl ModulusContext {
    /// Orders of the cyclic factors, concatenated across components.
    pub fn factor_orders(&self) -> Vec<u64> {
        self.components
            .iter()
            .flat_map(|c| c.factors.iter().map(|f| f.order))
            .collect()
    }

    pub fn make_character(&self, exponents: Vec<u64>) -> Character {
        let orders = self.factor_orders();
        debug_assert_eq!(exponents.len(), orders.len());
        let mut order = 1u64;
        for (&e, &o) in exponents.iter().zip(&orders) {
            let e = e % o;
            if e != 0 {
                order = lcm_u64(order, o / gcd_u64(e, o));
            }
        }
        Character {
            exponents: exponents
                .iter()
                .zip(&orders)
                .map(|(&e, &o)| e % o)
                .collect(),
            order,
            is_principal: order == 1,
            is_real: order <= 2,
        }
    }

    pub fn principal(&self) -> Character {
        self.make_character(vec![0; self.factor_orders().len()])
    }

    pub fn char_pow(&self, chi: &Character, j: u64) -> Character {
        let orders = self.factor_orders();
        self.make_character(
            chi.exponents
                .iter()
                .zip(&orders)
                .map(|(&e, &o)| ((e as u128 * j as u128) % o as u128) as u64)
                .collect(),
        )
    }

    pub fn char_mul(&self, a: &Character, b: &Character) -> Character {
        let orders = self.factor_orders();
        self.make_character(
            a.exponents
                .iter()
                .zip(&b.exponents)
                .zip(&orders)
                .map(|((&x, &y), &o)| (x + y) % o)
                .collect(),
        )
    }

    /// Discrete-log vector of `n` mod M, or `None` if `gcd(n, M) != 1`.
    pub fn dlog_vector(&self, n: &Poly) -> Option<Vec<u64>> {
        let mut out = Vec::new();
        for comp in &self.components {
            let a = n.rem(&comp.modulus, &self.field).ok()?;
            out.extend(comp.dlog(&self.field, &a)?);
        }
        Some(out)
    }

    /// Character value from a precomputed discrete-log vector.
    pub fn value_from_dlogs(&self, chi: &Character, dlogs: &[u64]) -> CharValue {
        let orders = self.factor_orders();
        let lam = self.exponent;
        let mut num: u64 = 0;
        for ((&e, &dl), &o) in chi.exponents.iter().zip(dlogs).zip(&orders) {
            let t = (e as u128 * dl as u128) % o as u128;
            let term = (t * (lam / o) as u128) % lam as u128;
            num = ((num as u128 + term) % lam as u128) as u64;
        }
        CharValue::Root { num, den: lam }
    }

    pub fn evaluate(&self, chi: &Character, n: &Poly) -> CharValue {
        match self.dlog_vector(n) {
            None => CharValue::Zero,
            Some(dl) => self.value_from_dlogs(chi, &dl),
        }
    }

    /// All φ(M) characters (dense contexts only).
    pub fn all_characters(&self) -> Result<Vec<Character>, CharError> {
        if self.phi > DENSE_LIMIT {
            return Err(CharError::TooLarge);
        }
        let orders = self.factor_orders();
        let mut out = Vec::with_capacity(self.phi as usize);
        let mut exps = vec![0u64; orders.len()];
        loop {
            out.push(self.make_character(exps.clone()));
            let mut i = 0;
            loop {
                if i == orders.len() {
                    debug_assert_eq!(out.len() as u64, self.phi);
                    return Ok(out);
                }
                exps[i] += 1;
                if exps[i] < orders[i] {
                    break;
                }
                exps[i] = 0;
                i += 1;
            }
        }
    }

    /// The 2^{ω(M)} - 1 quadratic characters of a squarefree modulus in odd
    /// characteristic, ordered by component subset mask (bit i of the mask
    /// selects component i).
    pub fn quadratic_characters(&self) -> Result<Vec<Character>, CharError> {
        if self.field.p == 2 {
            return Err(CharError::EvenCharacteristic);
        }
        if !self.is_squarefree {
            return Err(CharError::NotSquarefree);
        }
        let orders = self.factor_orders();
        let mut out = Vec::new();
        for mask in 1u64..(1 << self.components.len()) {
            let exps: Vec<u64> = orders
                .iter()
                .enumerate()
                .map(|(i, &o)| if mask >> i & 1 == 1 { o / 2 } else { 0 })
                .collect();
            out.push(self.make_character(exps));
        }
        Ok(out)
    }

    pub fn unit_table(&self) -> Result<&UnitTable, CharError> {
        self.units.as_ref().ok_or(CharError::TooLarge)
    }

    /// Per-packed-residue value exponents for `chi`: `u64::MAX` for
    /// non-units, otherwise the numerator of the root-of-unity exponent over
    /// the group exponent. Dense contexts only.
    pub fn character_exponent_table(&self, chi: &Character) -> Result<Vec<u64>, CharError> {
        let units = self.unit_table()?;
        let mut table = vec![u64::MAX; units.index_of.len()];
        for (ci, &packed) in units.classes.iter().enumerate() {
            let dl = &units.dlogs[ci * units.stride..(ci + 1) * units.stride];
            match self.value_from_dlogs(chi, dl) {
                CharValue::Root { num, .. } => table[packed as usize] = num,
                CharValue::Zero => unreachable!("unit class"),
            }
        }
        Ok(table)
    }
}

/// A subset of unit classes mod M (indices into the dense class list).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSet {
    pub label: String,
    bits: Vec<u64>,
    count: u64,
}

impl ResidueSet {
    pub fn empty(label: &str, classes: usize) -> ResidueSet {
        ResidueSet {
            label: String::from(label),
            bits: vec![0; classes.div_ceil(64)],
            count: 0,
        }
    }

    pub fn insert(&mut self, idx: usize) {
        let w = idx / 64;
        let b = 1u64 << (idx % 64);
        if self.bits[w] & b == 0 {
            self.bits[w] |= b;
            self.count += 1;
        }
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.bits[idx / 64] >> (idx % 64) & 1 == 1
    }

    pub fn len(&self) -> u64 {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        let cap = self.bits.len() * 64;
        (0..cap).filter(move |&i| self.contains(i))
    }
}

/// Squares and non-squares among the unit classes: `(□, ⊠)`.
pub fn quadratic_residues(
    ctx: &ModulusContext,
) -> Result<(ResidueSet, ResidueSet), CharError> {
    if ctx.field.p == 2 {
        return Err(CharError::EvenCharacteristic);
    }
    let units = ctx.unit_table()?;
    let n = units.classes.len();
    let width = ctx.modulus.deg();
    let mut squares = ResidueSet::empty("squares", n);
    for &packed in &units.classes {
        let a = poly_from_packed(&ctx.field, packed, width);
        let sq = a.mul(&a, &ctx.field).rem(&ctx.modulus, &ctx.field)?;
        let idx = units.index_of[packed_index(&ctx.field, &sq, width) as usize];
        squares.insert(idx as usize);
    }
    let mut nonsquares = ResidueSet::empty("nonsquares", n);
    for i in 0..n {
        if !squares.contains(i) {
            nonsquares.insert(i);
        }
    }
    Ok((squares, nonsquares))
}

/// The race coefficient
/// `c(χ,A,B) = (1/φ)((1/|A|) Σ_{a∈A} conj χ(a) − (1/|B|) Σ_{b∈B} conj χ(b))`.
pub fn c_coefficient(
    ctx: &ModulusContext,
    chi: &Character,
    a: &ResidueSet,
    b: &ResidueSet,
) -> Result<Complex<f64>, CharError> {
    let units = ctx.unit_table()?;
    let mut sum_a = Complex::new(0.0, 0.0);
    let mut sum_b = Complex::new(0.0, 0.0);
    for (ci, _) in units.classes.iter().enumerate() {
        let in_a = a.contains(ci);
        let in_b = b.contains(ci);
        if !in_a && !in_b {
            continue;
        }
        let dl = &units.dlogs[ci * units.stride..(ci + 1) * units.stride];
        let v = ctx.value_from_dlogs(chi, dl).conj().to_complex();
        if in_a {
            sum_a += v;
        }
        if in_b {
            sum_b += v;
        }
    }
    Ok((sum_a / a.len() as f64 - sum_b / b.len() as f64) / ctx.phi as f64)
}
