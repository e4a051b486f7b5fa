//! Bias statistics for the races: sign densities of the explicit main term,
//! limiting-distribution summaries and Fourier transforms, k-limit
//! classification, Chebyshev-style lower bounds, the B/I invariants,
//! Gaussian-mixture comparison, modulus construction, and a heuristic scan
//! for rational relations among zero angles.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_complex::Complex;
use num_rational::Ratio;

use crate::asymptotics::{build_quadratic_race_term, eval_main_term, AsymError, MainTermSpec};
use crate::characters::{CharError, ModulusContext};
use crate::counting::CountFunction;
use crate::ffcore::FieldSpec;
use crate::lfunc::{compute_quadratic_l_polynomials, extract_zeros, LfuncError};
use crate::polyring::{factorize, is_irreducible, monic_from_index, Poly, PolyError};

#[derive(Clone, Debug, PartialEq)]
pub enum BiasError {
    Char(CharError),
    Lfunc(LfuncError),
    Asym(AsymError),
    Poly(PolyError),
    /// No distinct-degree partition of the requested size exists.
    InfeasiblePartition,
    /// The operation requires a squarefree modulus.
    NotSquarefree,
}

impl fmt::Display for BiasError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BiasError::Char(e) => write!(f, "{e}"),
            BiasError::Lfunc(e) => write!(f, "{e}"),
            BiasError::Asym(e) => write!(f, "{e}"),
            BiasError::Poly(e) => write!(f, "{e}"),
            BiasError::InfeasiblePartition => write!(f, "no distinct-degree partition exists"),
            BiasError::NotSquarefree => write!(f, "modulus must be squarefree"),
        }
    }
}

impl From<CharError> for BiasError {
    fn from(e: CharError) -> Self {
        BiasError::Char(e)
    }
}

impl From<LfuncError> for BiasError {
    fn from(e: LfuncError) -> Self {
        BiasError::Lfunc(e)
    }
}

impl From<AsymError> for BiasError {
    fn from(e: AsymError) -> Self {
        BiasError::Asym(e)
    }
}

impl From<PolyError> for BiasError {
    fn from(e: PolyError) -> Self {
        BiasError::Poly(e)
    }
}

/// Sign counts of the explicit main term over an integer scan.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    /// Number of points counted (the requested length, or one exact period
    /// when the angle set is purely rational-in-π).
    pub n: u64,
    pub positive: u64,
    pub negative: u64,
    pub zero: u64,
    /// `positive / n`, exact.
    pub density: Ratio<u64>,
    /// Points with `0 < |T(n)| < zero_tol` (numerically ambiguous signs).
    pub near_zero_flags: u64,
    /// The exact period when every angle is a rational multiple of π.
    pub period: Option<u64>,
}

/// Writes `gamma/π` as a reduced fraction `p/q` with `q ≤ 10^6` when the
/// continued-fraction expansion reproduces `gamma` to `1e-12`.
pub fn rational_angle(gamma: f64) -> Option<(i64, u64)> {
    let x = gamma / core::f64::consts::PI;
    let (mut p0, mut q0, mut p1, mut q1) = (1i64, 0u64, libm::floor(x) as i64, 1u64);
    let mut frac = x - libm::floor(x);
    for _ in 0..40 {
        if (p1 as f64 / q1 as f64 - x).abs() * core::f64::consts::PI <= 1e-12 {
            return Some((p1, q1));
        }
        if frac.abs() < 1e-15 {
            break;
        }
        let recip = 1.0 / frac;
        let a = libm::floor(recip) as i64;
        frac = recip - libm::floor(recip);
        let p2 = a * p1 + p0;
        let q2 = a as u64 * q1 + q0;
        if q2 > 1_000_000 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
    }
    None
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

/// Smallest period of `n ↦ e^{inγ}` for `γ = pπ/q` in lowest terms,
/// combined with the period-2 alternating part; `None` when any angle is
/// not a detected rational multiple of π or the combined period overflows.
fn spec_period(spec: &MainTermSpec) -> Option<u64> {
    let mut period: u64 = 2;
    for o in &spec.oscillators {
        let (p, q) = rational_angle(o.gamma)?;
        let t = 2 * q / gcd(p.unsigned_abs(), 2 * q);
        period = period.checked_mul(t / gcd(period, t))?;
        if period > 2_000_000_000 {
            return None;
        }
    }
    Some(period)
}

fn sign_with_tol(v: f64, tol: f64) -> i8 {
    if v > tol {
        1
    } else if v < -tol {
        -1
    } else {
        0
    }
}

fn zero_tolerance(spec: &MainTermSpec) -> f64 {
    1e-9 * (spec.constant.abs() + spec.oscillation_radius())
}

/// Counts the sign of the explicit main term over `X = 1..=n`. When every
/// oscillator angle is a rational multiple of π the scan is replaced by one
/// exact period and the density is exact.
pub fn density_scan(spec: &MainTermSpec, n: u64) -> DensityReport {
    let tol = zero_tolerance(spec);
    let (length, period) = match spec_period(spec) {
        Some(p) => (p, Some(p)),
        None => (n, None),
    };
    let mut positive = 0u64;
    let mut negative = 0u64;
    let mut near = 0u64;
    for x in 1..=length {
        let v = eval_main_term(spec, x);
        match sign_with_tol(v, tol) {
            1 => positive += 1,
            -1 => negative += 1,
            _ => {
                if v != 0.0 {
                    near += 1;
                }
            }
        }
    }
    DensityReport {
        n: length,
        positive,
        negative,
        zero: length - positive - negative,
        density: Ratio::new(positive, length.max(1)),
        near_zero_flags: near,
        period,
    }
}

/// Sign counts of the squares-vs-nonsquares race main term over `X ≤ n`.
pub fn race_sign_scan(
    ctx: &ModulusContext,
    f: CountFunction,
    k: u32,
    n: u64,
) -> Result<DensityReport, BiasError> {
    let spec = build_quadratic_race_term(ctx, f, k)?;
    Ok(density_scan(&spec, n))
}

/// Summary of the limiting distribution of the main-term values.
#[derive(Clone, Debug)]
pub struct DistributionSummary {
    pub mean: f64,
    pub variance: f64,
    /// Closed forms: mean `sign·C0` and variance `c1² + 2Σ|c_j|²`.
    pub closed_form_mean: f64,
    pub closed_form_variance: f64,
    /// `[mean − R, mean + R]` with `R = |c1| + 2Σ|c_j|`.
    pub support: (f64, f64),
    /// 512 uniform bins over the support interval.
    pub histogram: Vec<u64>,
    /// Histogram mass imbalance under mirroring about the center, in [0,1].
    pub symmetry_defect: f64,
}

pub const HISTOGRAM_BINS: usize = 512;

/// Empirical mean/variance/histogram of the main term over `X = 1..=n`,
/// with the closed-form moments for cross-checking.
pub fn distribution_stats(spec: &MainTermSpec, n: u64) -> DistributionSummary {
    let closed_mean = spec.sign * spec.constant;
    let radius = spec.oscillation_radius();
    let lo = closed_mean - radius;
    let hi = closed_mean + radius;
    let mut histogram = vec![0u64; HISTOGRAM_BINS];
    // Compensated accumulation in fixed-size chunks for reproducibility.
    let mut sum = 0.0f64;
    let mut sum_sq = 0.0f64;
    let mut chunk_sum = 0.0f64;
    let mut chunk_sq = 0.0f64;
    for x in 1..=n {
        let v = eval_main_term(spec, x);
        chunk_sum += v;
        chunk_sq += v * v;
        if x % 65536 == 0 {
            sum += chunk_sum;
            sum_sq += chunk_sq;
            chunk_sum = 0.0;
            chunk_sq = 0.0;
        }
        let width = hi - lo;
        let bin = if width > 0.0 {
            let b = ((v - lo) / width * HISTOGRAM_BINS as f64) as i64;
            b.clamp(0, HISTOGRAM_BINS as i64 - 1) as usize
        } else {
            HISTOGRAM_BINS / 2
        };
        histogram[bin] += 1;
    }
    sum += chunk_sum;
    sum_sq += chunk_sq;
    let mean = sum / n as f64;
    let variance = (sum_sq / n as f64 - mean * mean).max(0.0);
    let mut defect = 0.0f64;
    for i in 0..HISTOGRAM_BINS / 2 {
        defect += (histogram[i] as f64 - histogram[HISTOGRAM_BINS - 1 - i] as f64).abs();
    }
    let closed_var = spec.alternating * spec.alternating
        + 2.0 * spec.oscillators.iter().map(|o| o.coeff.norm_sqr()).sum::<f64>();
    DistributionSummary {
        mean,
        variance,
        closed_form_mean: closed_mean,
        closed_form_variance: closed_var,
        support: (lo, hi),
        histogram,
        symmetry_defect: defect / (2.0 * n as f64),
    }
}

/// Bessel function of the first kind `J₀`, absolute error below `1e-10`.
/// Power series up to `|z| ≤ 12`, asymptotic expansion beyond (the
/// crossover is placed where both sides meet the accuracy target).
pub fn bessel_j0(z: f64) -> f64 {
    let z = z.abs();
    if z <= 12.0 {
        let w = z * z / 4.0;
        let mut term = 1.0f64;
        let mut acc = 1.0f64;
        for m in 1..80 {
            term *= -w / ((m * m) as f64);
            acc += term;
            if term.abs() < 1e-18 {
                break;
            }
        }
        acc
    } else {
        // J0(z) ~ sqrt(2/(πz)) [P(z) cos(z − π/4) + Q(z) sin(z − π/4)]
        // with P = 1 − 9/(2(8z)²) + …, Q = 1/(8z) − 225/(6(8z)³) + ….
        let inv8z = 1.0 / (8.0 * z);
        let mut p = 0.0f64;
        let mut q = 0.0f64;
        let mut num = 1.0f64;
        let mut prev = f64::INFINITY;
        for k in 0..40u32 {
            let term = num;
            if term.abs() > prev {
                break;
            }
            prev = term.abs();
            let sign = if (k / 2) % 2 == 0 { 1.0 } else { -1.0 };
            if k % 2 == 0 {
                p += sign * term;
            } else {
                q += sign * term;
            }
            let odd = (2 * k + 1) as f64;
            num *= odd * odd * inv8z / (k + 1) as f64;
        }
        let omega = z - core::f64::consts::FRAC_PI_4;
        libm::sqrt(2.0 / (core::f64::consts::PI * z))
            * (p * libm::cos(omega) + q * libm::sin(omega))
    }
}

/// Fourier transform of the limiting distribution:
/// `μ̂(ξ) = e^{−i·mean·ξ} cos(c1 ξ) Π_j J₀(2|c_j| ξ)`,
/// valid when the angle set is linearly independent over the rationals
/// together with π (see [`li_heuristic_scan`]).
pub fn fourier_mu(spec: &MainTermSpec, xi: f64) -> Complex<f64> {
    let mean = spec.sign * spec.constant;
    let mut acc = Complex::from_polar(1.0, -mean * xi) * libm::cos(spec.alternating * xi);
    for o in &spec.oscillators {
        acc *= bessel_j0(2.0 * o.coeff.norm() * xi);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KLimitClass {
    /// Maximal multiplicity at non-real zeros: the bias dissipates.
    SymmetricDissipating,
    /// Maximal term from `m₊` alone: the bias becomes extreme.
    DiracExtreme,
    /// Maximal term from `m₋` alone: the race is asymptotically unbiased.
    HalfDiracUnbiased,
    /// Both real zero types achieve the maximum.
    MixedReal,
}

#[derive(Clone, Debug)]
pub struct KLimitReport {
    pub class: KLimitClass,
    /// `max{ m±(χ) − ε_f/2, m_j(χ) }` over quadratic characters.
    pub m_f_max: f64,
    /// Count of `(χ, +√q)` terms achieving the maximum.
    pub plus_at_max: u32,
    /// Count of `(χ, −√q)` terms achieving the maximum.
    pub minus_at_max: u32,
    /// Count of non-real zero terms achieving the maximum.
    pub spectral_at_max: u32,
}

/// Classifies the `k → ∞` behaviour of the squares-vs-nonsquares race from
/// the zeros of maximal multiplicity among quadratic characters.
pub fn k_limit_classify(ctx: &ModulusContext, f: CountFunction) -> Result<KLimitReport, BiasError> {
    let eps = match f {
        CountFunction::BigOmega => -1.0,
        CountFunction::SmallOmega => 1.0,
    };
    let shift = -eps * 0.5;
    let mut max = f64::NEG_INFINITY;
    let mut plus = 0u32;
    let mut minus = 0u32;
    let mut spectral = 0u32;
    for l in compute_quadratic_l_polynomials(ctx)? {
        let zd = extract_zeros(&l, ctx.field.q)?;
        let mut consider = |v: f64, which: u8| {
            if v > max + 1e-9 {
                max = v;
                plus = 0;
                minus = 0;
                spectral = 0;
            }
            if (v - max).abs() <= 1e-9 {
                match which {
                    0 => plus += 1,
                    1 => minus += 1,
                    _ => spectral += 1,
                }
            }
        };
        if zd.m_plus > 0 {
            consider(zd.m_plus as f64 + shift, 0);
        }
        if zd.m_minus > 0 {
            consider(zd.m_minus as f64 + shift, 1);
        }
        // A character with no zeros at all still contributes the constant
        // (0 + shift)^k terms; they only matter if nothing beats them.
        if zd.m_plus == 0 {
            consider(shift, 0);
        }
        if zd.m_minus == 0 {
            consider(shift, 1);
        }
        for &(_, m) in &zd.spectral {
            consider(m as f64, 2);
        }
    }
    let class = if spectral > 0 && plus == 0 && minus == 0 {
        KLimitClass::SymmetricDissipating
    } else if plus > 0 && minus == 0 && spectral == 0 {
        KLimitClass::DiracExtreme
    } else if minus > 0 && plus == 0 && spectral == 0 {
        KLimitClass::HalfDiracUnbiased
    } else {
        KLimitClass::MixedReal
    };
    Ok(KLimitReport { class, m_f_max: max, plus_at_max: plus, minus_at_max: minus, spectral_at_max: spectral })
}

/// `Var(ν_{M,k}) = (1/|⊠|²) Σ_γ ( Σ_χ m_γ^k(χ) |α/(α−1)| )²`, grouping the
/// spectral zeros of all quadratic characters by angle.
pub fn var_nu(ctx: &ModulusContext, k: u32) -> Result<f64, BiasError> {
    let sqrt_q = libm::sqrt(ctx.field.q as f64);
    let mut groups: Vec<(f64, f64)> = Vec::new();
    for l in compute_quadratic_l_polynomials(ctx)? {
        let zd = extract_zeros(&l, ctx.field.q)?;
        for &(gamma, m) in &zd.spectral {
            let alpha = Complex::from_polar(sqrt_q, gamma);
            let w = libm::pow(m as f64, k as f64) * (alpha / (alpha - 1.0)).norm();
            match groups.iter_mut().find(|(g, _)| (*g - gamma).abs() < 1e-9) {
                Some(entry) => entry.1 += w,
                None => groups.push((gamma, w)),
            }
        }
    }
    let boxtimes = nonsquare_count(ctx);
    Ok(groups.iter().map(|&(_, w)| w * w).sum::<f64>() / (boxtimes * boxtimes))
}

/// `|⊠| = φ(M)·(1 − 2^{−ω(M)})` for odd `q`.
fn nonsquare_count(ctx: &ModulusContext) -> f64 {
    let phi = ctx.phi as f64;
    phi * (1.0 - libm::pow(0.5, ctx.omega_m as f64))
}

/// Chebyshev-style lower bound on `dens((ε_f)^k Δ_{f_k} > 0)`:
/// `1 − Var(ν_{M,k}) / offset²` clamped to `[0,1]`, with the Dirac offset
/// `(2^ω −1)/(2^{k−1}|⊠|) · √q/(q−1)`. Requires squarefree `M`.
pub fn chebyshev_bound(
    ctx: &ModulusContext,
    k: u32,
    _f: CountFunction,
) -> Result<f64, BiasError> {
    if !factorize(&ctx.modulus, &ctx.field)?.is_squarefree() {
        return Err(BiasError::NotSquarefree);
    }
    let q = ctx.field.q as f64;
    let boxtimes = nonsquare_count(ctx);
    let offset = (libm::pow(2.0, ctx.omega_m as f64) - 1.0)
        / (libm::pow(2.0, (k - 1) as f64) * boxtimes)
        * libm::sqrt(q)
        / (q - 1.0);
    let var = var_nu(ctx, k)?;
    Ok((1.0 - var / (offset * offset)).clamp(0.0, 1.0))
}

/// The `B(M)`/`I(M)` invariants controlling the central-limit behaviour.
#[derive(Clone, Debug)]
pub struct BIReport {
    /// `|E μ| / √Var(ν)` computed from the explicit main term (f = Ω).
    pub b: f64,
    /// `Σ_χ Σ_j |α_j/(α_j−1)|²` over non-real norm-√q zeros only
    /// (conjugates and multiplicities counted).
    pub i_spectral: f64,
    /// Same sum with the real central zeros `±√q` included.
    pub i_with_central: f64,
    /// The closed approximation `q/(q−1)·(2^ω−1)·(deg M′ − 4)/2`.
    pub i_approx: f64,
}

pub fn b_i_report(ctx: &ModulusContext, k: u32) -> Result<BIReport, BiasError> {
    let q = ctx.field.q as f64;
    let sqrt_q = libm::sqrt(q);
    let mut i_spec = 0.0f64;
    let mut i_central = 0.0f64;
    for l in compute_quadratic_l_polynomials(ctx)? {
        let zd = extract_zeros(&l, ctx.field.q)?;
        for &(gamma, m) in &zd.spectral {
            let alpha = Complex::from_polar(sqrt_q, gamma);
            // One term per zero: a conjugate pair contributes twice.
            i_spec += 2.0 * m as f64 * (alpha / (alpha - 1.0)).norm_sqr();
        }
        i_central += zd.m_plus as f64 * libm::pow(sqrt_q / (sqrt_q - 1.0), 2.0);
        i_central += zd.m_minus as f64 * libm::pow(sqrt_q / (sqrt_q + 1.0), 2.0);
    }
    let squarefree_deg: f64 = factorize(&ctx.modulus, &ctx.field)?
        .factors
        .iter()
        .map(|(p, _)| p.deg() as f64)
        .sum();
    let i_approx = q / (q - 1.0)
        * (libm::pow(2.0, ctx.omega_m as f64) - 1.0)
        * (squarefree_deg - 4.0)
        / 2.0;
    let spec = build_quadratic_race_term(ctx, CountFunction::BigOmega, k)?;
    let var = var_nu(ctx, k)?;
    let b = if var > 0.0 { spec.constant.abs() / libm::sqrt(var) } else { f64::INFINITY };
    Ok(BIReport { b, i_spectral: i_spec, i_with_central: i_central + i_spec, i_approx })
}

fn normal_cdf(x: f64) -> f64 {
    0.5 * (1.0 + libm::erf(x / core::f64::consts::SQRT_2))
}

/// Kolmogorov–Smirnov distance between the empirical distribution of the
/// normalized race `(ε_f)^k Δ_{f_k} / √Var(ν)` over `X ≤ n` and the limit
/// mixture `½(δ_{2b/(√q+1)} + δ_{2b√q/(√q+1)}) ∗ N(0,1)`.
pub fn gaussian_mixture_distance(spec: &MainTermSpec, n: u64, b: f64, q: u32) -> f64 {
    let var: f64 = spec.oscillators.iter().map(|o| o.coeff.norm_sqr()).sum();
    let scale = if var > 0.0 { 1.0 / libm::sqrt(var) } else { 1.0 };
    let eps = match spec.f {
        CountFunction::BigOmega => -1.0f64,
        CountFunction::SmallOmega => 1.0,
    };
    let flip = libm::pow(eps, spec.k as f64);
    let mut values: Vec<f64> = (1..=n).map(|x| flip * eval_main_term(spec, x) * scale).collect();
    values.sort_by(|a, c| a.partial_cmp(c).expect("finite"));
    let sqrt_q = libm::sqrt(q as f64);
    let mu1 = 2.0 * b / (sqrt_q + 1.0);
    let mu2 = 2.0 * b * sqrt_q / (sqrt_q + 1.0);
    let mixture = |x: f64| 0.5 * (normal_cdf(x - mu1) + normal_cdf(x - mu2));
    let mut ks = 0.0f64;
    for (i, &v) in values.iter().enumerate() {
        let f = mixture(v);
        ks = ks.max((i as f64 / n as f64 - f).abs());
        ks = ks.max(((i + 1) as f64 / n as f64 - f).abs());
    }
    ks
}

/// Theorem-style normalization constant
/// `|⊠|√(q−1) / √(q·2^{ω−1}·deg M)` for the race main term.
pub fn delta_normalization(ctx: &ModulusContext) -> f64 {
    let q = ctx.field.q as f64;
    nonsquare_count(ctx) * libm::sqrt(q - 1.0)
        / libm::sqrt(q * libm::pow(2.0, (ctx.omega_m - 1) as f64) * ctx.modulus.deg() as f64)
}

/// Builds a squarefree modulus with `omega` irreducible factors of distinct
/// degrees summing to `⌊2^omega / c⌋`: degrees `1, 2, …, omega−1` and the
/// remainder on the last factor, each factor the smallest monic irreducible
/// of its degree.
pub fn construct_modulus(
    field: &FieldSpec,
    c: f64,
    omega: u32,
    budget: u64,
) -> Result<Poly, BiasError> {
    if omega < 2 || !(c > 0.0) {
        return Err(BiasError::InfeasiblePartition);
    }
    let total = libm::floor(libm::pow(2.0, omega as f64) / c) as u64;
    let prefix: u64 = (1..omega as u64).sum();
    if total < prefix + omega as u64 {
        // The last part must exceed omega − 1 to keep the degrees distinct.
        return Err(BiasError::InfeasiblePartition);
    }
    let mut degrees: Vec<usize> = (1..omega as usize).collect();
    degrees.push((total - prefix) as usize);
    let mut m = Poly::one();
    for d in degrees {
        m = m.mul(&smallest_irreducible(field, d, budget)?, field);
    }
    Ok(m)
}

fn smallest_irreducible(field: &FieldSpec, d: usize, budget: u64) -> Result<Poly, BiasError> {
    let count = (field.q as u64).pow(d as u32).min(budget);
    for idx in 0..count {
        let p = monic_from_index(field, d, idx);
        if is_irreducible(&p, field)? {
            return Ok(p);
        }
    }
    Err(BiasError::Poly(PolyError::ResourceLimit { needed: count, budget }))
}

/// Exhaustive scan for integer relations `Σ a_i γ_i = 0` with
/// `0 < max|a_i| ≤ q_bound`, at tolerance `1e-10·Σ|a_i|`. Returned
/// relations are primitive with positive leading coefficient; an empty
/// result means no relation was found up to the bound (not a proof of
/// independence).
pub fn li_heuristic_scan(angles: &[f64], q_bound: i64) -> Vec<Vec<i64>> {
    let n = angles.len();
    let mut found: Vec<Vec<i64>> = Vec::new();
    if n == 0 {
        return found;
    }
    if n == 1 {
        if angles[0].abs() <= 1e-10 {
            found.push(vec![1]);
        }
        return found;
    }
    let last = angles[n - 1];
    let mut coeffs = vec![-q_bound; n - 1];
    loop {
        let s: f64 = coeffs.iter().zip(angles).map(|(&a, &g)| a as f64 * g).sum();
        let candidates: &[i64] = if last.abs() > 1e-300 {
            &[libm::round(-s / last) as i64]
        } else {
            &[0]
        };
        for &an in candidates {
            if an.unsigned_abs() as i64 <= q_bound {
                let total_abs: i64 = coeffs.iter().map(|a| a.abs()).sum::<i64>() + an.abs();
                if total_abs > 0 && (s + an as f64 * last).abs() <= 1e-10 * total_abs as f64 {
                    let mut rel: Vec<i64> = coeffs.clone();
                    rel.push(an);
                    normalize_relation(&mut rel);
                    if !found.contains(&rel) {
                        found.push(rel);
                        if found.len() >= 64 {
                            return found;
                        }
                    }
                }
            }
        }
        // Advance the odometer over the first n-1 coefficients.
        let mut i = 0;
        loop {
            if i == n - 1 {
                return found;
            }
            coeffs[i] += 1;
            if coeffs[i] <= q_bound {
                break;
            }
            coeffs[i] = -q_bound;
            i += 1;
        }
    }
}

fn normalize_relation(rel: &mut [i64]) {
    let mut g = 0u64;
    for &a in rel.iter() {
        g = gcd(g, a.unsigned_abs());
    }
    if g > 1 {
        for a in rel.iter_mut() {
            *a /= g as i64;
        }
    }
    if let Some(&first) = rel.iter().find(|&&a| a != 0) {
        if first < 0 {
            for a in rel.iter_mut() {
                *a = -*a;
            }
        }
    }
}

/// The oscillator angles of a spec together with π, as scanned for linear
/// independence.
pub fn spec_angles(spec: &MainTermSpec) -> Vec<f64> {
    let mut angles = vec![core::f64::consts::PI];
    angles.extend(spec.oscillators.iter().map(|o| o.gamma));
    angles
}
