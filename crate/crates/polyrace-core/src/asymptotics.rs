//! Explicit main terms for the races: the aggregated `Δ_{f_k}` main term
//! over characters, the per-character `π_{f_k}(n,χ)` expansion, and the
//! normalized geometric-logarithmic sums used to justify them.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex;

use crate::characters::{c_coefficient, CharError, ModulusContext, ResidueSet};
use crate::counting::CountFunction;
use crate::lfunc::{
    compute_l_polynomial, compute_quadratic_l_polynomials, extract_zeros, LfuncError, ZeroData,
};

#[derive(Clone, Debug, PartialEq)]
pub enum AsymError {
    /// Zero data could not be computed for a character with nonzero weight.
    MissingZeroData,
    Char(CharError),
    Lfunc(LfuncError),
}

impl fmt::Display for AsymError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AsymError::MissingZeroData => write!(f, "missing zero data for a weighted character"),
            AsymError::Char(e) => write!(f, "{e}"),
            AsymError::Lfunc(e) => write!(f, "{e}"),
        }
    }
}

impl From<CharError> for AsymError {
    fn from(e: CharError) -> Self {
        AsymError::Char(e)
    }
}

impl From<LfuncError> for AsymError {
    fn from(e: LfuncError) -> Self {
        AsymError::Lfunc(e)
    }
}

/// One oscillating component: contributes `2·Re(coeff · e^{iXγ})`.
#[derive(Clone, Debug)]
pub struct Oscillator {
    /// Angle in `(0, π)`.
    pub gamma: f64,
    pub coeff: Complex<f64>,
}

/// The explicit part of the `Δ_{f_k}` asymptotic:
/// `sign · (C0 + c1·(−1)^X + Σ_j 2·Re(c_j e^{iXγ_j}))`.
#[derive(Clone, Debug)]
pub struct MainTermSpec {
    pub constant: f64,
    pub alternating: f64,
    pub oscillators: Vec<Oscillator>,
    pub k: u32,
    pub f: CountFunction,
    /// `(−1)^k` prefactor, kept outside the coefficients.
    pub sign: f64,
    pub warnings: Vec<String>,
}

impl MainTermSpec {
    /// Prop-2.2-style support radius around the constant:
    /// `|c1| + Σ 2|c_j|`.
    pub fn oscillation_radius(&self) -> f64 {
        self.alternating.abs()
            + self.oscillators.iter().map(|o| 2.0 * o.coeff.norm()).sum::<f64>()
    }
}

/// Aggregates the explicit main term of the race over all characters with
/// nonzero race weight `c(χ,A,B)`. For `f = ω` the underlying expansion
/// requires `q ≥ 5`; smaller fields still evaluate but carry a warning.
pub fn build_main_term(
    ctx: &ModulusContext,
    a: &ResidueSet,
    b: &ResidueSet,
    f: CountFunction,
    k: u32,
) -> Result<MainTermSpec, AsymError> {
    let q = ctx.field.q as f64;
    let sqrt_q = libm::sqrt(q);
    let mut constant = Complex::new(0.0, 0.0);
    let mut alternating = Complex::new(0.0, 0.0);
    let mut oscillators: Vec<Oscillator> = Vec::new();
    let mut warnings = Vec::new();
    if f == CountFunction::SmallOmega && ctx.field.q < 5 {
        warnings.push(String::from(
            "the omega expansion assumes q >= 5; evaluated anyway",
        ));
    }
    let delta_sign = match f {
        CountFunction::BigOmega => 0.5,
        CountFunction::SmallOmega => -0.5,
    };
    for chi in ctx.all_characters()? {
        if chi.is_principal {
            continue;
        }
        let c = c_coefficient(ctx, &chi, a, b)?;
        if c.norm() < 1e-14 {
            continue;
        }
        let l = compute_l_polynomial(ctx, &chi)?;
        let zd = extract_zeros(&l, ctx.field.q)?;
        let delta = if chi.is_real { delta_sign } else { 0.0 };
        let plus = libm::pow(zd.m_plus as f64 + delta, k as f64);
        let minus = libm::pow(zd.m_minus as f64 + delta, k as f64);
        constant += c * plus * sqrt_q / (sqrt_q - 1.0);
        alternating += c * minus * sqrt_q / (sqrt_q + 1.0);
        for &(gamma, m) in &zd.spectral {
            let alpha = Complex::from_polar(sqrt_q, gamma);
            let w = c * libm::pow(m as f64, k as f64) * alpha / (alpha - 1.0);
            if zd.conjugates_implied {
                merge_oscillator(&mut oscillators, gamma, w);
            } else if gamma > 0.0 {
                // Signed singleton: its conjugate-character partner supplies
                // the matching half, so each contributes Re(w e^{iXγ}).
                merge_oscillator(&mut oscillators, gamma, 0.5 * w);
            } else {
                merge_oscillator(&mut oscillators, -gamma, 0.5 * w.conj());
            }
        }
    }
    if constant.im.abs() > 1e-9 || alternating.im.abs() > 1e-9 {
        warnings.push(String::from("aggregated coefficients had imaginary residue"));
    }
    oscillators.retain(|o| o.coeff.norm() > 1e-14);
    oscillators.sort_by(|x, y| x.gamma.partial_cmp(&y.gamma).expect("finite"));
    Ok(MainTermSpec {
        constant: constant.re,
        alternating: alternating.re,
        oscillators,
        k,
        f,
        sign: if k % 2 == 0 { 1.0 } else { -1.0 },
        warnings,
    })
}

/// Main term of the squares-vs-nonsquares race.
///
/// In that race every non-quadratic non-principal character has coefficient
/// zero and every quadratic character has the uniform coefficient `1/|⊠|`,
/// so the aggregation only needs the `2^ω − 1` quadratic L-polynomials. This
/// avoids the `O(φ²)` pass over the full character group and works for
/// moduli too large for a dense unit table.
pub fn build_quadratic_race_term(
    ctx: &ModulusContext,
    f: CountFunction,
    k: u32,
) -> Result<MainTermSpec, AsymError> {
    let q = ctx.field.q as f64;
    let sqrt_q = libm::sqrt(q);
    let mut constant = 0.0f64;
    let mut alternating = 0.0f64;
    let mut oscillators: Vec<Oscillator> = Vec::new();
    let mut warnings = Vec::new();
    if f == CountFunction::SmallOmega && ctx.field.q < 5 {
        warnings.push(String::from(
            "the omega expansion assumes q >= 5; evaluated anyway",
        ));
    }
    let delta = match f {
        CountFunction::BigOmega => 0.5,
        CountFunction::SmallOmega => -0.5,
    };
    // |⊠| = φ(1 − 2^{−ω}); exact because every cyclic factor order is even.
    let nonsquares = (ctx.phi - (ctx.phi >> ctx.omega_m)) as f64;
    let c = 1.0 / nonsquares;
    for l in compute_quadratic_l_polynomials(ctx).map_err(AsymError::Lfunc)? {
        let zd = extract_zeros(&l, ctx.field.q).map_err(AsymError::Lfunc)?;
        let plus = libm::pow(zd.m_plus as f64 + delta, k as f64);
        let minus = libm::pow(zd.m_minus as f64 + delta, k as f64);
        constant += c * plus * sqrt_q / (sqrt_q - 1.0);
        alternating += c * minus * sqrt_q / (sqrt_q + 1.0);
        for &(gamma, m) in &zd.spectral {
            let alpha = Complex::from_polar(sqrt_q, gamma);
            let w = c * libm::pow(m as f64, k as f64) * alpha / (alpha - 1.0);
            merge_oscillator(&mut oscillators, gamma, w);
        }
    }
    oscillators.retain(|o| o.coeff.norm() > 1e-14);
    oscillators.sort_by(|x, y| x.gamma.partial_cmp(&y.gamma).expect("finite"));
    Ok(MainTermSpec {
        constant,
        alternating,
        oscillators,
        k,
        f,
        sign: if k % 2 == 0 { 1.0 } else { -1.0 },
        warnings,
    })
}

fn merge_oscillator(oscillators: &mut Vec<Oscillator>, gamma: f64, w: Complex<f64>) {
    for o in oscillators.iter_mut() {
        if (o.gamma - gamma).abs() < 1e-9 {
            o.coeff += w;
            return;
        }
    }
    oscillators.push(Oscillator { gamma, coeff: w });
}

// 2π to double-double precision for the Cody–Waite style reduction.
const TWO_PI_HI: f64 = 6.283185307179586;
const TWO_PI_LO: f64 = 2.4492935982947064e-16;

/// `x·γ mod 2π` with the product carried in double-double form, so the
/// phase error stays below ~1e-9 radians for `x` up to a few billion.
pub fn reduce_angle(x: u64, gamma: f64) -> f64 {
    let xf = x as f64;
    let p_hi = xf * gamma;
    let p_lo = libm::fma(xf, gamma, -p_hi);
    let n = libm::round(p_hi / TWO_PI_HI);
    let mut r = libm::fma(-n, TWO_PI_HI, p_hi);
    r += p_lo;
    r -= n * TWO_PI_LO;
    // One wrap may remain after the compensated subtraction.
    while r > core::f64::consts::PI {
        r -= TWO_PI_HI;
    }
    while r < -core::f64::consts::PI {
        r += TWO_PI_HI;
    }
    r
}

/// Evaluates the explicit main term at integer `X`.
pub fn eval_main_term(spec: &MainTermSpec, x: u64) -> f64 {
    let mut acc = spec.constant;
    if x % 2 == 1 {
        acc -= spec.alternating;
    } else {
        acc += spec.alternating;
    }
    for o in &spec.oscillators {
        let phase = reduce_angle(x, o.gamma);
        acc += 2.0 * (o.coeff * Complex::from_polar(1.0, phase)).re;
    }
    spec.sign * acc
}

/// Per-character main term of `π_{f_k}(n,χ)` (explicit part only):
/// `((−1)^k/(k−1)!) { [(m₊ − ε_f δ/2)^k + (−1)^n (m₋ − ε_f δ/2)^k]
///  q^{n/2}(ln n)^{k−1}/n + Σ_j m_j^k α_j^n (ln n)^{k−1}/n }`,
/// with `ε_Ω = −1`, `ε_ω = +1`. The result is real (zero imaginary part)
/// for real characters.
pub fn pi_fk_asymptotic(
    zd: &ZeroData,
    q: u32,
    chi_is_real: bool,
    n: u64,
    k: u32,
    f: CountFunction,
) -> Complex<f64> {
    debug_assert!(n >= 3 && k >= 1);
    let sqrt_q = libm::sqrt(q as f64);
    let eps = match f {
        CountFunction::BigOmega => -1.0,
        CountFunction::SmallOmega => 1.0,
    };
    let delta = if chi_is_real { 1.0 } else { 0.0 };
    let shift = -eps * delta / 2.0;
    let plus = libm::pow(zd.m_plus as f64 + shift, k as f64);
    let minus = libm::pow(zd.m_minus as f64 + shift, k as f64);
    let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
    let q_half = libm::pow(sqrt_q, n as f64);
    let logn = libm::log(n as f64);
    let log_pow = libm::pow(logn, (k - 1) as f64);
    let mut acc = Complex::new((plus + parity * minus) * q_half * log_pow / n as f64, 0.0);
    for &(gamma, m) in &zd.spectral {
        let phase = reduce_angle(n, gamma);
        // Paired entries fold the conjugate: α^n + conj(α)^n = 2 q^{n/2} cos(nγ).
        let angular = if zd.conjugates_implied {
            Complex::new(2.0 * libm::cos(phase), 0.0)
        } else {
            Complex::from_polar(1.0, phase)
        };
        acc += libm::pow(m as f64, k as f64) * angular * q_half * log_pow / n as f64;
    }
    let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
    sign * acc / factorial(k - 1)
}

fn factorial(k: u32) -> f64 {
    (1..=k as u64).fold(1.0, |acc, i| acc * i as f64)
}

/// Normalized partial sums of `Σ_{n=1}^{X} α^n (log n)^k / n`.
#[derive(Clone, Debug)]
pub struct GeometricLogSum {
    /// `X/(α^X (log X)^k) · Σ_{n=1}^{X} α^n (log n)^k / n`, computed as a
    /// backward tail (terms with `α^{n−X}` below 1e-18 in modulus are
    /// dropped; they cannot move the result at double precision).
    pub normalized: Complex<f64>,
    /// The predicted limit `α/(α−1)`.
    pub limit: Complex<f64>,
}

/// Evaluates the normalized geometric-logarithmic sum for `|α| ≥ √2`.
pub fn geometric_log_sum(alpha: Complex<f64>, k: u32, x: u64) -> GeometricLogSum {
    debug_assert!(alpha.norm() >= libm::sqrt(2.0) - 1e-12 && x >= 3);
    let log_x = libm::log(x as f64);
    let norm_alpha = alpha.norm();
    // alpha^{-(x-n)} falls below 1e-18 once x-n exceeds this many steps.
    let window = (41.5 / libm::log(norm_alpha)) as u64 + 2;
    let start = x.saturating_sub(window).max(1);
    let inv = alpha.inv();
    let mut acc = Complex::new(0.0, 0.0);
    // Horner-style backward accumulation of Σ α^{n-x} (log n)^k / n.
    for n in (start..=x).rev() {
        let weight = libm::pow(libm::log(n as f64), k as f64) / n as f64;
        let steps = x - n;
        let mut factor = Complex::new(1.0, 0.0);
        let mut base = inv;
        let mut e = steps;
        while e > 0 {
            if e & 1 == 1 {
                factor *= base;
            }
            base *= base;
            e >>= 1;
        }
        acc += factor * weight;
    }
    let normalized = acc * x as f64 / libm::pow(log_x, k as f64);
    GeometricLogSum { normalized, limit: alpha / (alpha - 1.0) }
}
