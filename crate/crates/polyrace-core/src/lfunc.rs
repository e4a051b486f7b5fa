//! Dirichlet L-polynomials `𝓛(u,χ)` and their inverse zeros.
//!
//! `𝓛` is computed by direct coefficient sums over monic polynomials of each
//! degree below `deg M`. Inverse zeros at `±√q` (central zeros) are
//! extracted exactly from integer coefficients — by sign-resolved synthetic
//! division when `q` is a square, and by division by `v² − q` in `ℤ[√q]`
//! otherwise — before the remaining spectrum is located numerically
//! (squarefree decomposition over ℚ, then Durand–Kerner with Newton
//! refinement).

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::characters::{CharError, Character, ModulusContext};
use crate::ffcore::{element_order, find_generator, FieldSpec, FqElement};
use crate::parse::PolyPattern;
use crate::polyring::{enumerate_irreducibles, packed_index, Poly, PolyError};

#[derive(Clone, Debug, PartialEq)]
pub enum LfuncError {
    PrincipalCharacter,
    /// A numeric inverse zero has norm near neither `√q` nor 1.
    ClassificationAmbiguous { norm: f64 },
    /// No field representation reproduces the expected L-polynomial.
    NoMatch,
    TooLarge,
    Char(CharError),
    Poly(PolyError),
}

impl fmt::Display for LfuncError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LfuncError::PrincipalCharacter => {
                write!(f, "L-polynomial undefined for the principal character")
            }
            LfuncError::ClassificationAmbiguous { norm } => {
                write!(f, "inverse zero norm {norm} is near neither sqrt(q) nor 1")
            }
            LfuncError::NoMatch => write!(f, "no field representation matches"),
            LfuncError::TooLarge => write!(f, "computation exceeds dense-table limits"),
            LfuncError::Char(e) => write!(f, "{e}"),
            LfuncError::Poly(e) => write!(f, "{e}"),
        }
    }
}

impl core::error::Error for LfuncError {}

impl From<CharError> for LfuncError {
    fn from(e: CharError) -> LfuncError {
        LfuncError::Char(e)
    }
}

impl From<PolyError> for LfuncError {
    fn from(e: PolyError) -> LfuncError {
        LfuncError::Poly(e)
    }
}

/// `𝓛(u,χ)` as an explicit polynomial in `u`.
#[derive(Clone, Debug, PartialEq)]
pub struct LPolynomial {
    /// Complex coefficients, index = power of `u`; always populated.
    pub coeffs: Vec<Complex<f64>>,
    /// Exact integer coefficients, present iff the character is real.
    pub coeffs_int: Option<Vec<i64>>,
    pub exact: bool,
}

impl LPolynomial {
    pub fn from_ints(coeffs: Vec<i64>) -> LPolynomial {
        LPolynomial {
            coeffs: coeffs.iter().map(|&c| Complex::new(c as f64, 0.0)).collect(),
            coeffs_int: Some(coeffs),
            exact: true,
        }
    }

    /// Degree after stripping trailing (numerically) zero coefficients.
    pub fn degree(&self) -> usize {
        if let Some(ints) = &self.coeffs_int {
            let mut d = ints.len();
            while d > 1 && ints[d - 1] == 0 {
                d -= 1;
            }
            return d - 1;
        }
        let mut d = self.coeffs.len();
        while d > 1 && self.coeffs[d - 1].norm() < 1e-9 {
            d -= 1;
        }
        d - 1
    }

    pub fn eval(&self, u: Complex<f64>) -> Complex<f64> {
        let mut acc = Complex::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * u + c;
        }
        acc
    }
}

/// Computes `𝓛(u,χ)` by summing `χ(f)` over monic `f` of each degree
/// `n < deg M`. Requires a non-principal character and a dense unit table
/// (use [`compute_quadratic_l_polynomials`] for larger squarefree moduli).
pub fn compute_l_polynomial(
    ctx: &ModulusContext,
    chi: &Character,
) -> Result<LPolynomial, LfuncError> {
    if chi.is_principal {
        return Err(LfuncError::PrincipalCharacter);
    }
    let deg_m = ctx.modulus.deg();
    if ctx.units.is_some() {
        let table = ctx.character_exponent_table(chi)?;
        let q = ctx.field.q as u64;
        let lam = ctx.exponent;
        if chi.is_real {
            let mut ints = Vec::with_capacity(deg_m);
            for n in 0..deg_m {
                let base = q.pow(n as u32);
                let mut acc: i64 = 0;
                for idx in 0..base {
                    match table[(base + idx) as usize] {
                        u64::MAX => {}
                        0 => acc += 1,
                        num => {
                            debug_assert_eq!(num, lam / 2);
                            acc -= 1;
                        }
                    }
                }
                ints.push(acc);
            }
            return Ok(LPolynomial::from_ints(ints));
        }
        let mut coeffs = Vec::with_capacity(deg_m);
        for n in 0..deg_m {
            let base = q.pow(n as u32);
            let mut acc = Complex::new(0.0, 0.0);
            for idx in 0..base {
                let num = table[(base + idx) as usize];
                if num != u64::MAX {
                    let theta = 2.0 * core::f64::consts::PI * num as f64 / lam as f64;
                    acc += Complex::new(libm::cos(theta), libm::sin(theta));
                }
            }
            coeffs.push(acc);
        }
        return Ok(LPolynomial { coeffs, coeffs_int: None, exact: false });
    }
    // Large modulus: only the quadratic family is supported; pick out the
    // requested character from the bulk computation.
    let quads = ctx.quadratic_characters()?;
    if let Some(pos) = quads.iter().position(|c| c == chi) {
        let mut all = compute_quadratic_l_polynomials(ctx)?;
        return Ok(all.swap_remove(pos));
    }
    Err(LfuncError::TooLarge)
}

/// Computes the L-polynomials of all `2^{ω(M)} − 1` quadratic characters of
/// a squarefree modulus in a single enumeration pass, sharing the residue
/// computation across characters. Output order matches
/// [`ModulusContext::quadratic_characters`].
pub fn compute_quadratic_l_polynomials(
    ctx: &ModulusContext,
) -> Result<Vec<LPolynomial>, LfuncError> {
    if !ctx.is_squarefree {
        return Err(LfuncError::Char(CharError::NotSquarefree));
    }
    if ctx.field.p == 2 {
        return Err(LfuncError::Char(CharError::EvenCharacteristic));
    }
    let field = &ctx.field;
    let q = field.q as u64;
    let deg_m = ctx.modulus.deg();
    let omega = ctx.components.len();
    if omega > 8 {
        return Err(LfuncError::TooLarge);
    }

    // Per-component quadratic symbol tables indexed by packed residue.
    let mut symbols: Vec<Vec<i8>> = Vec::with_capacity(omega);
    // Packed residues of c * t^j mod P_i for all scalars c and j <= deg M.
    let mut shifted: Vec<Vec<Vec<u64>>> = Vec::with_capacity(omega);
    let mut widths: Vec<usize> = Vec::with_capacity(omega);
    for comp in &ctx.components {
        let table = comp.dense_table().ok_or(LfuncError::TooLarge)?;
        let sym: Vec<i8> = table
            .iter()
            .map(|&code| {
                if code == u64::MAX {
                    0
                } else if code % 2 == 0 {
                    1
                } else {
                    -1
                }
            })
            .collect();
        symbols.push(sym);
        let width = comp.prime.deg();
        widths.push(width);
        let mut per_j = Vec::with_capacity(deg_m + 1);
        let mut tj = Poly::one();
        for _ in 0..=deg_m {
            let mut per_c = Vec::with_capacity(q as usize);
            for c in 0..q {
                let scaled = tj.scale(FqElement(c as u16), field);
                per_c.push(packed_index(field, &scaled, width));
            }
            per_j.push(per_c);
            tj = Poly::t().mul(&tj, field).rem(&comp.prime, field)?;
        }
        shifted.push(per_j);
    }

    let buckets = 3usize.pow(omega as u32);
    // counts[n][bucket]: number of monic degree-n polynomials whose symbol
    // vector lands in the bucket (digits s_i + 1 base 3).
    let mut counts = vec![vec![0i64; buckets]; deg_m];

    // DFS over coefficients c_{n-1}..c_0 with incremental packed residues.
    // Digit-wise addition must use field addition (componentwise mod p), so
    // work off a q x q lookup of element sums.
    let add_tab: Vec<u64> = (0..q * q)
        .map(|i| field.add(FqElement((i / q) as u16), FqElement((i % q) as u16)).0 as u64)
        .collect();

    struct Dfs<'a> {
        q: u64,
        omega: usize,
        widths: &'a [usize],
        symbols: &'a [Vec<i8>],
        shifted: &'a [Vec<Vec<u64>>],
        add_tab: &'a [u64],
    }

    impl Dfs<'_> {
        fn packed_add(&self, a: u64, b: u64, width: usize) -> u64 {
            let q = self.q;
            let mut out = 0u64;
            let mut mult = 1u64;
            let (mut a, mut b) = (a, b);
            for _ in 0..width {
                out += self.add_tab[((a % q) * q + b % q) as usize] * mult;
                a /= q;
                b /= q;
                mult *= q;
            }
            out
        }

        fn run(&self, j: usize, res: &[u64; 8], counts: &mut [i64]) {
            if j == 0 {
                // Constant coefficient: unrolled leaf loop.
                for c in 0..self.q {
                    let mut bucket = 0usize;
                    let mut mult = 1usize;
                    let mut r = *res;
                    for i in 0..self.omega {
                        r[i] = self.packed_add(
                            r[i],
                            self.shifted[i][0][c as usize],
                            self.widths[i],
                        );
                        bucket += (self.symbols[i][r[i] as usize] + 1) as usize * mult;
                        mult *= 3;
                    }
                    counts[bucket] += 1;
                }
                return;
            }
            for c in 0..self.q {
                let mut r = *res;
                for i in 0..self.omega {
                    r[i] = self.packed_add(
                        r[i],
                        self.shifted[i][j][c as usize],
                        self.widths[i],
                    );
                }
                self.run(j - 1, &r, counts);
            }
        }
    }

    let dfs = Dfs {
        q,
        omega,
        widths: &widths,
        symbols: &symbols,
        shifted: &shifted,
        add_tab: &add_tab,
    };
    for n in 0..deg_m {
        let mut res = [0u64; 8];
        for i in 0..omega {
            res[i] = shifted[i][n][1]; // t^n mod P_i (monic leading term)
        }
        if n == 0 {
            // The single constant monic polynomial is 1.
            let mut bucket = 0usize;
            let mut mult = 1usize;
            for i in 0..omega {
                bucket += (symbols[i][shifted[i][0][1] as usize] + 1) as usize * mult;
                mult *= 3;
            }
            counts[0][bucket] += 1;
        } else {
            dfs.run(n - 1, &res, &mut counts[n]);
        }
    }

    // Combine buckets into per-character coefficients.
    let mut out = Vec::with_capacity((1 << omega) - 1);
    for mask in 1u32..(1 << omega) {
        let mut ints = Vec::with_capacity(deg_m);
        for row in counts.iter() {
            let mut acc = 0i64;
            for (bucket, &cnt) in row.iter().enumerate() {
                if cnt == 0 {
                    continue;
                }
                let mut sign = 1i64;
                let mut b = bucket;
                for i in 0..omega {
                    let s = (b % 3) as i64 - 1;
                    b /= 3;
                    // Characters mod M vanish on any non-unit, including
                    // multiples of primes outside the mask.
                    if s == 0 {
                        sign = 0;
                        break;
                    }
                    if mask >> i & 1 == 1 {
                        sign *= s;
                    }
                }
                acc += sign * cnt;
            }
            ints.push(acc);
        }
        out.push(LPolynomial::from_ints(ints));
    }
    Ok(out)
}

/// Classified inverse zeros of an L-polynomial.
#[derive(Clone, Debug, PartialEq)]
pub struct ZeroData {
    /// Multiplicity of the inverse zero `+√q`.
    pub m_plus: u32,
    /// Multiplicity of `−√q`.
    pub m_minus: u32,
    /// Distinct non-real norm-`√q` inverse zeros `√q·e^{iγ}` with
    /// multiplicity. When `conjugates_implied` is set (real-coefficient
    /// L-polynomials) the angles lie in `(0,π)` and each entry stands for a
    /// conjugate pair; otherwise the angles are signed in `(−π,π)` and each
    /// entry is a single zero.
    pub spectral: Vec<(f64, u32)>,
    /// Whether each `spectral` entry represents a conjugate pair.
    pub conjugates_implied: bool,
    /// Inverse zeros of norm 1 (with multiplicity, listed individually).
    pub unit_zeros: Vec<Complex<f64>>,
    /// Number of distinct non-real norm-`√q` inverse zeros.
    pub d_chi: u32,
    /// Minimal angular gap `min{|γ_i − γ_j|, γ_i, π − γ_i}`; `+∞` when the
    /// spectral set is empty.
    pub gap: f64,
}

const NORM_TOL: f64 = 1e-6;

/// Extracts and classifies all inverse zeros.
pub fn extract_zeros(l: &LPolynomial, q: u32) -> Result<ZeroData, LfuncError> {
    let sqrt_q = libm::sqrt(q as f64);
    let deg = l.degree();
    let mut m_plus = 0u32;
    let mut m_minus = 0u32;
    let mut spectral: Vec<(f64, u32)> = Vec::new();
    let mut unit_zeros: Vec<Complex<f64>> = Vec::new();
    let mut paired = true;

    if let Some(ints) = &l.coeffs_int {
        // Reversed polynomial R(v) = v^deg L(1/v): roots are inverse zeros.
        let mut r: Vec<i128> = (0..=deg).map(|i| ints[deg - i] as i128).collect();
        let sq = integer_sqrt(q as u64);
        if let Some(s) = sq {
            // Square q: divide out (v - s) and (v + s) exactly.
            loop {
                match divide_linear(&r, s as i128) {
                    Some(next) => {
                        m_plus += 1;
                        r = next;
                    }
                    None => break,
                }
            }
            loop {
                match divide_linear(&r, -(s as i128)) {
                    Some(next) => {
                        m_minus += 1;
                        r = next;
                    }
                    None => break,
                }
            }
        } else {
            // Non-square q: conjugation forces m_plus = m_minus; divide out
            // v^2 - q while ±√q are roots (checked exactly in Z[√q]).
            loop {
                if !is_sqrtq_root(&r, q as i128) {
                    break;
                }
                r = divide_quadratic(&r, q as i128);
                m_plus += 1;
                m_minus += 1;
            }
        }
        // Remaining roots: squarefree decomposition over Q, then numeric
        // root finding per squarefree factor (all roots simple there).
        if r.len() > 1 {
            for (factor, mult) in rational_squarefree(&r) {
                let fc: Vec<Complex<f64>> =
                    factor.iter().map(|c| Complex::new(rational_to_f64(c), 0.0)).collect();
                let roots = durand_kerner(&fc);
                for root in roots {
                    let root = newton_refine(&fc, root);
                    classify_root(
                        root,
                        mult,
                        sqrt_q,
                        &mut spectral,
                        &mut unit_zeros,
                        true,
                    )?;
                }
            }
        }
    } else {
        // Complex path: find all roots of the reversed polynomial and
        // cluster them into multiplicity groups. Numerically real
        // coefficients keep the paired convention; genuinely complex ones
        // record each spectral zero individually with a signed angle.
        let mut r: Vec<Complex<f64>> = (0..=deg).map(|i| l.coeffs[deg - i]).collect();
        paired = l
            .coeffs
            .iter()
            .all(|c| c.im.abs() < 1e-9 * (1.0 + c.re.abs()));
        if r.len() > 1 {
            normalize_monic(&mut r);
            let roots = durand_kerner(&r);
            let clusters = cluster_roots(&roots, NORM_TOL * sqrt_q.max(1.0) * 10.0);
            for (center, count) in clusters {
                if (center - Complex::new(sqrt_q, 0.0)).norm() < 1e-4 * sqrt_q {
                    m_plus += count;
                } else if (center + Complex::new(sqrt_q, 0.0)).norm() < 1e-4 * sqrt_q {
                    m_minus += count;
                } else {
                    classify_root(
                        center,
                        count,
                        sqrt_q,
                        &mut spectral,
                        &mut unit_zeros,
                        paired,
                    )?;
                }
            }
        }
    }

    spectral.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite angles"));
    // Merge near-identical angles arising from different factors.
    let mut merged: Vec<(f64, u32)> = Vec::new();
    for (g, m) in spectral {
        if let Some(last) = merged.last_mut() {
            if (g - last.0).abs() < 1e-9 {
                last.1 += m;
                continue;
            }
        }
        merged.push((g, m));
    }
    let spectral = merged;

    let d_chi = spectral.len() as u32;
    let mut gap = f64::INFINITY;
    for (i, &(gi, _)) in spectral.iter().enumerate() {
        gap = gap.min(gi.abs()).min(core::f64::consts::PI - gi.abs());
        for &(gj, _) in spectral.iter().skip(i + 1) {
            gap = gap.min((gi - gj).abs());
        }
    }

    let per_entry = if paired { 2 } else { 1 };
    let accounted = m_plus
        + m_minus
        + per_entry * spectral.iter().map(|&(_, m)| m).sum::<u32>()
        + unit_zeros.len() as u32;
    if accounted as usize != deg {
        return Err(LfuncError::ClassificationAmbiguous { norm: f64::NAN });
    }

    Ok(ZeroData {
        m_plus,
        m_minus,
        spectral,
        conjugates_implied: paired,
        unit_zeros,
        d_chi,
        gap,
    })
}

fn classify_root(
    root: Complex<f64>,
    mult: u32,
    sqrt_q: f64,
    spectral: &mut Vec<(f64, u32)>,
    unit_zeros: &mut Vec<Complex<f64>>,
    conjugates_paired: bool,
) -> Result<(), LfuncError> {
    let norm = root.norm();
    if (libm::log(norm) - libm::log(sqrt_q)).abs() < NORM_TOL {
        if conjugates_paired {
            // Real-coefficient factor: record each conjugate pair once.
            if root.im > 1e-9 * sqrt_q {
                spectral.push((root.arg(), mult));
            } else if root.im < -1e-9 * sqrt_q {
                // conjugate of a recorded zero
            } else {
                // Real norm-√q root should have been extracted exactly.
                return Err(LfuncError::ClassificationAmbiguous { norm });
            }
        } else if root.im.abs() <= 1e-9 * sqrt_q {
            // Real norm-√q roots are handled exactly upstream.
            return Err(LfuncError::ClassificationAmbiguous { norm });
        } else {
            // Complex-coefficient L-polynomial: zeros need not come in
            // conjugate pairs, so record each with its signed angle.
            spectral.push((root.arg(), mult));
        }
        Ok(())
    } else if libm::log(norm).abs() < NORM_TOL {
        if conjugates_paired && root.im < -1e-9 {
            // conjugate of a root that is recorded separately
            return Ok(());
        }
        for _ in 0..mult {
            unit_zeros.push(root);
            if conjugates_paired && root.im > 1e-9 {
                unit_zeros.push(root.conj());
            }
        }
        Ok(())
    } else {
        Err(LfuncError::ClassificationAmbiguous { norm })
    }
}

fn integer_sqrt(n: u64) -> Option<u64> {
    let r = libm::sqrt(n as f64) as u64;
    for c in r.saturating_sub(1)..=r + 1 {
        if c * c == n {
            return Some(c);
        }
    }
    None
}

/// Divides a monic-leading integer polynomial (little-endian in v) by
/// `(v - root)`; returns the quotient if the division is exact.
fn divide_linear(r: &[i128], root: i128) -> Option<Vec<i128>> {
    if r.len() < 2 {
        return None;
    }
    let mut quot = vec![0i128; r.len() - 1];
    let mut carry: i128 = 0;
    for i in (0..r.len()).rev() {
        let cur = r[i] + carry;
        if i == 0 {
            if cur != 0 {
                return None;
            }
        } else {
            quot[i - 1] = cur;
            carry = cur * root;
        }
    }
    Some(quot)
}

/// True iff `±√q` are roots, i.e. `R(√q) = A + B√q = 0` exactly.
fn is_sqrtq_root(r: &[i128], q: i128) -> bool {
    // (√q)^i = q^{i/2} for even i, q^{(i−1)/2}·√q for odd i.
    let mut a: i128 = 0;
    let mut b: i128 = 0;
    for (i, &c) in r.iter().enumerate() {
        let qp = q.pow((i / 2) as u32);
        if i % 2 == 0 {
            a += c * qp;
        } else {
            b += c * qp;
        }
    }
    a == 0 && b == 0
}

/// Exact division by `v² − q` (caller must have verified divisibility).
fn divide_quadratic(r: &[i128], q: i128) -> Vec<i128> {
    let n = r.len() - 1; // degree
    let mut quot = vec![0i128; n - 1];
    let mut rem: Vec<i128> = r.to_vec();
    for i in (2..=n).rev() {
        let c = rem[i];
        quot[i - 2] = c;
        rem[i] = 0;
        rem[i - 2] += c * q;
    }
    debug_assert!(rem.iter().all(|&c| c == 0));
    quot
}

fn rational_to_f64(r: &BigRational) -> f64 {
    let num = bigint_to_f64(r.numer());
    let den = bigint_to_f64(r.denom());
    num / den
}

fn bigint_to_f64(n: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    n.to_f64().unwrap_or(f64::NAN)
}

/// Yun's squarefree decomposition over ℚ; returns (monic factor, mult).
fn rational_squarefree(r: &[i128]) -> Vec<(Vec<BigRational>, u32)> {
    let f: Vec<BigRational> = r
        .iter()
        .map(|&c| BigRational::from_integer(BigInt::from(c)))
        .collect();
    let mut out = Vec::new();
    let df = br_derivative(&f);
    let a = br_gcd(&f, &df);
    let mut b = br_div(&f, &a);
    let mut c = br_div(&df, &a);
    let mut i = 1u32;
    loop {
        let d = br_sub(&c, &br_derivative(&b));
        let g = br_gcd(&b, &d);
        if br_deg(&g) >= 1 {
            out.push((g.clone(), i));
        }
        b = br_div(&b, &g);
        if br_deg(&b) == 0 {
            break;
        }
        c = br_div(&d, &g);
        i += 1;
    }
    out
}

fn br_trim(v: &mut Vec<BigRational>) {
    while v.len() > 1 && v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

fn br_deg(v: &[BigRational]) -> usize {
    v.len().saturating_sub(1)
}

fn br_derivative(v: &[BigRational]) -> Vec<BigRational> {
    if v.len() <= 1 {
        return vec![BigRational::zero()];
    }
    let mut out: Vec<BigRational> = v
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
        .collect();
    br_trim(&mut out);
    out
}

fn br_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    br_trim(&mut out);
    out
}

fn br_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let db = br_deg(b);
    let lead = b.last().expect("nonzero divisor").clone();
    let mut rem: Vec<BigRational> = a.to_vec();
    br_trim(&mut rem);
    if br_deg(&rem) < db || (rem.len() == 1 && rem[0].is_zero()) {
        return (vec![BigRational::zero()], rem);
    }
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    for i in (db..rem.len()).rev() {
        let c = &rem[i] / &lead;
        if !c.is_zero() {
            quot[i - db] = c.clone();
            for j in 0..=db {
                let t = &c * &b[j];
                rem[i - db + j] = &rem[i - db + j] - &t;
            }
        }
    }
    br_trim(&mut rem);
    br_trim(&mut quot);
    (quot, rem)
}

fn br_div(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    br_divrem(a, b).0
}

/// Monic gcd over ℚ.
fn br_gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    br_trim(&mut x);
    br_trim(&mut y);
    while !(y.len() == 1 && y[0].is_zero()) {
        let (_, r) = br_divrem(&x, &y);
        x = y;
        y = r;
    }
    let lead = x.last().expect("nonzero").clone();
    if !lead.is_zero() && !lead.is_one() {
        for c in &mut x {
            *c = &*c / &lead;
        }
    }
    x
}

fn normalize_monic(v: &mut [Complex<f64>]) {
    let lead = *v.last().expect("nonempty");
    if (lead - Complex::new(1.0, 0.0)).norm() > 0.0 {
        for c in v.iter_mut() {
            *c /= lead;
        }
    }
}

fn poly_eval(c: &[Complex<f64>], z: Complex<f64>) -> Complex<f64> {
    let mut acc = Complex::new(0.0, 0.0);
    for &ci in c.iter().rev() {
        acc = acc * z + ci;
    }
    acc
}

/// Durand–Kerner root finder for a polynomial with nonzero degree.
fn durand_kerner(coeffs: &[Complex<f64>]) -> Vec<Complex<f64>> {
    let mut c: Vec<Complex<f64>> = coeffs.to_vec();
    normalize_monic(&mut c);
    let d = c.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let scale: f64 = 1.0
        + c.iter()
            .take(d)
            .map(|x| x.norm())
            .fold(0.0f64, f64::max);
    let seed = Complex::new(0.4, 0.9);
    let mut z: Vec<Complex<f64>> = (0..d)
        .map(|k| seed.powu(k as u32 + 1) * scale)
        .collect();
    for _ in 0..500 {
        let mut max_step = 0.0f64;
        for k in 0..d {
            let mut denom = Complex::new(1.0, 0.0);
            for j in 0..d {
                if j != k {
                    denom *= z[k] - z[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = poly_eval(&c, z[k]) / denom;
            z[k] -= step;
            max_step = max_step.max(step.norm());
        }
        if max_step < 1e-14 * scale {
            break;
        }
    }
    z
}

fn newton_refine(coeffs: &[Complex<f64>], mut z: Complex<f64>) -> Complex<f64> {
    let deriv: Vec<Complex<f64>> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &c)| c * i as f64)
        .collect();
    for _ in 0..50 {
        let f = poly_eval(coeffs, z);
        let df = poly_eval(&deriv, z);
        if df.norm() == 0.0 || f.norm() < 1e-15 {
            break;
        }
        let step = f / df;
        z -= step;
        if step.norm() < 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

fn cluster_roots(roots: &[Complex<f64>], radius: f64) -> Vec<(Complex<f64>, u32)> {
    let mut clusters: Vec<(Complex<f64>, u32)> = Vec::new();
    for &r in roots {
        let mut placed = false;
        for (center, count) in clusters.iter_mut() {
            if (r - *center).norm() < radius {
                // running mean keeps the center stable
                *center = (*center * (*count as f64) + r) / (*count as f64 + 1.0);
                *count += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            clusters.push((r, 1));
        }
    }
    clusters
}

/// Power sums `ψ(n,χ) = −Σ_j α_j^n` over all inverse zeros with
/// multiplicity, from the coefficients via Newton's identities.
pub fn power_sums(l: &LPolynomial, n_max: usize) -> Vec<Complex<f64>> {
    let deg = l.degree();
    let a = &l.coeffs;
    let mut s = vec![Complex::new(0.0, 0.0); n_max + 1];
    for n in 1..=n_max {
        let mut acc = if n <= deg { -(n as f64) * a[n] } else { Complex::new(0.0, 0.0) };
        for i in 1..n.min(deg + 1) {
            acc -= a[i] * s[n - i];
        }
        s[n] = acc;
    }
    s.drain(1..).map(|x| -x).collect()
}

/// Exact integer power sums for real characters.
pub fn power_sums_exact(l: &LPolynomial, n_max: usize) -> Option<Vec<i64>> {
    let ints = l.coeffs_int.as_ref()?;
    let deg = l.degree();
    let mut s = vec![0i128; n_max + 1];
    for n in 1..=n_max {
        let mut acc: i128 = if n <= deg { -(n as i128) * ints[n] as i128 } else { 0 };
        for i in 1..n.min(deg + 1) {
            acc -= ints[i] as i128 * s[n - i];
        }
        s[n] = acc;
    }
    Some(s.drain(1..).map(|x| (-x) as i64).collect())
}

/// Smallest monic divisor `D` of `M` such that `χ` is trivial on units
/// `≡ 1 mod D` (i.e. `χ` is induced from a character mod `D`).
pub fn conductor(ctx: &ModulusContext, chi: &Character) -> Result<Poly, LfuncError> {
    if chi.is_principal {
        return Err(LfuncError::PrincipalCharacter);
    }
    let units = ctx.unit_table()?;
    let field = &ctx.field;
    let width = ctx.modulus.deg();
    // All monic divisors of M, smallest (degree, then index) first.
    let mut divisors: Vec<Poly> = vec![Poly::one()];
    for (p, e) in &ctx.factorization.factors {
        let mut next = Vec::new();
        for d in &divisors {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..*e {
                cur = cur.mul(p, field);
                next.push(cur.clone());
            }
        }
        divisors = next;
    }
    divisors.sort_by_key(|d| {
        (d.deg(), d.coeffs.iter().rev().map(|c| c.0).collect::<Vec<u16>>())
    });
    'divisors: for d in &divisors {
        if d.deg() == 0 {
            continue; // principal characters were rejected above
        }
        for (ci, &packed) in units.classes.iter().enumerate() {
            let u = crate::polyring::poly_from_packed(field, packed, width);
            if u.sub(&Poly::one(), field).rem(d, field)?.is_zero() {
                let dl = &units.dlogs[ci * units.stride..(ci + 1) * units.stride];
                if !ctx.value_from_dlogs(chi, dl).is_one() {
                    continue 'divisors;
                }
            }
        }
        return Ok(d.clone());
    }
    Ok(ctx.modulus.clone())
}

/// Minimal spectral gap over the quadratic (race) character set; `+∞` when
/// no quadratic character has non-real norm-`√q` zeros.
pub fn gamma_m(ctx: &ModulusContext) -> Result<f64, LfuncError> {
    let ls = compute_quadratic_l_polynomials(ctx)?;
    let mut gap = f64::INFINITY;
    for l in &ls {
        let zd = extract_zeros(l, ctx.field.q)?;
        gap = gap.min(zd.gap);
    }
    Ok(gap)
}

/// Searches the finitely many (defining polynomial, generator) choices for
/// `F_{p^e}` and returns the first (in canonical order) under which the
/// modulus pattern yields the expected L-polynomial for the full quadratic
/// character. Returns (field, generator, modulus).
/// Exact division of an integer polynomial by `(1 - u)`; `None` if `1` is
/// not a root.
fn divide_one_minus_u(a: &[i64]) -> Option<Vec<i64>> {
    if a.len() < 2 || a.iter().sum::<i64>() != 0 {
        return None;
    }
    let n = a.len() - 1;
    let mut b = vec![0i64; n];
    b[0] = a[0];
    for i in 1..n {
        b[i] = a[i] + b[i - 1];
    }
    Some(b)
}

pub fn resolve_field_representation(
    p: u32,
    e: u32,
    pattern: &PolyPattern,
    expected: &[i64],
) -> Result<(FieldSpec, FqElement, Poly), LfuncError> {
    let defs: Vec<Vec<u32>> = if e == 1 {
        vec![Vec::new()]
    } else {
        let fp = crate::ffcore::make_field(p, 1, None).map_err(|_| LfuncError::NoMatch)?;
        enumerate_irreducibles(&fp, e as usize, 1 << 24)?
            .into_iter()
            .map(|poly| poly.coeffs.iter().map(|c| c.0 as u32).collect())
            .collect()
    };
    for def in &defs {
        let field = if e == 1 {
            crate::ffcore::make_field(p, 1, None)
        } else {
            crate::ffcore::make_field(p, e, Some(def))
        }
        .map_err(|_| LfuncError::NoMatch)?;
        let q1 = (field.q - 1) as u64;
        let gens: Vec<FqElement> = if pattern.uses_generator() {
            field
                .elements()
                .filter(|&a| !a.is_zero() && element_order(&field, a) == Ok(q1))
                .collect()
        } else {
            vec![find_generator(&field)]
        };
        for g in gens {
            let m = pattern.instantiate(&field, g);
            if m.is_zero() || m.deg() == 0 || !m.is_monic() {
                continue;
            }
            let ctx = match crate::characters::make_context(&field, &m) {
                Ok(c) => c,
                Err(_) => continue,
            };
            if !ctx.is_squarefree {
                continue;
            }
            let quads = match ctx.quadratic_characters() {
                Ok(q) => q,
                Err(_) => continue,
            };
            let full = quads.last().expect("at least one quadratic character");
            let l = match compute_l_polynomial(&ctx, full) {
                Ok(l) => l,
                Err(_) => continue,
            };
            if let Some(ints) = &l.coeffs_int {
                let mut got = ints.clone();
                while got.len() > 1 && got.last() == Some(&0) {
                    got.pop();
                }
                // An even character (trivial on the constants) contributes a
                // trivial zero at u = 1; strip that factor before comparing,
                // since completed values are quoted without it.
                let gen_const = Poly::constant(field.generator());
                if ctx.evaluate(full, &gen_const).as_int() == Some(1) {
                    if let Some(stripped) = divide_one_minus_u(&got) {
                        got = stripped;
                    }
                }
                let mut want = expected.to_vec();
                while want.len() > 1 && want.last() == Some(&0) {
                    want.pop();
                }
                if got == want {
                    return Ok((field, g, m));
                }
            }
        }
    }
    Err(LfuncError::NoMatch)
}
