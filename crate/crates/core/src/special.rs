//! Error-function family and standard normal helpers.
//!
//! The complementary error function and its scaled form follow Cody's
//! rational Chebyshev approximations. Normal tail probabilities are built
//! from the scaled form `erfcx` and an exponent evaluated with an exact
//! product error term, so relative accuracy holds deep into the tails
//! (down to the underflow threshold near `z = -38`).

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};

const FRAC_1_SQRT_PI: f64 = 0.564_189_583_547_756_3;
/// `1 / sqrt(2 pi)`.
pub const FRAC_1_SQRT_2PI: f64 = 0.398_942_280_401_432_7;
/// `ln(sqrt(2 pi))`.
const LN_SQRT_2PI: f64 = 0.918_938_533_204_672_8;

const CODY_THRESHOLD: f64 = 0.46875;

const A: [f64; 5] = [
    3.161_123_743_870_565_6,
    113.864_154_151_050_16,
    377.485_237_685_302,
    3_209.377_589_138_469_5,
    0.185_777_706_184_603_15,
];
const B: [f64; 4] = [
    23.601_290_952_344_12,
    244.024_637_934_444_17,
    1_282.616_526_077_372_3,
    2_844.236_833_439_170_6,
];
const C: [f64; 9] = [
    0.564_188_496_988_670_1,
    8.883_149_794_388_376,
    66.119_190_637_141_63,
    298.635_138_197_400_1,
    881.952_221_241_769_1,
    1_712.047_612_634_070_6,
    2_051.078_377_826_071_5,
    1_230.339_354_797_997_2,
    2.153_115_354_744_038_5e-8,
];
const D: [f64; 8] = [
    15.744_926_110_709_835,
    117.693_950_891_312_5,
    537.181_101_862_009_9,
    1_621.389_574_566_690_2,
    3_290.799_235_733_459_6,
    4_362.619_090_143_247,
    3_439.367_674_143_721_6,
    1_230.339_354_803_749_4,
];
const P: [f64; 6] = [
    0.305_326_634_961_232_36,
    0.360_344_899_949_804_45,
    0.125_781_726_111_229_26,
    0.016_083_785_148_742_275,
    6.587_491_615_298_378e-4,
    0.016_315_387_137_302_097,
];
const Q: [f64; 5] = [
    2.568_520_192_289_822_4,
    1.872_952_849_923_460_4,
    0.527_905_102_951_428_4,
    0.060_518_341_312_441_32,
    0.002_335_204_976_268_691_8,
];

/// `erf(x) / x` rational form on `|x| <= 0.46875`, argument `z = x^2`.
fn cody_small(z: f64) -> f64 {
    ((((A[4] * z + A[0]) * z + A[1]) * z + A[2]) * z + A[3])
        / ((((z + B[0]) * z + B[1]) * z + B[2]) * z + B[3])
}

/// `erfcx` on `0.46875 < y <= 4`.
fn cody_mid(y: f64) -> f64 {
    let mut num = C[8] * y;
    let mut den = y;
    for i in 0..7 {
        num = (num + C[i]) * y;
        den = (den + D[i]) * y;
    }
    (num + C[7]) / (den + D[7])
}

/// `erfcx` on `y > 4`.
fn cody_large(y: f64) -> f64 {
    let z = 1.0 / (y * y);
    let mut num = P[5] * z;
    let mut den = z;
    for i in 0..4 {
        num = (num + P[i]) * z;
        den = (den + Q[i]) * z;
    }
    let r = z * (num + P[4]) / (den + Q[4]);
    (FRAC_1_SQRT_PI - r) / y
}

/// `exp(-x^2)` with the rounding error of `x^2` folded back in.
fn exp_neg_square(x: f64) -> f64 {
    let hi = x * x;
    let lo = x.mul_add(x, -hi);
    (-hi).exp() * (-lo).exp()
}

/// Error function.
pub fn erf(x: f64) -> f64 {
    let y = x.abs();
    if y <= CODY_THRESHOLD {
        return x * cody_small(y * y);
    }
    let tail = erfc(y);
    if x < 0.0 {
        tail - 1.0
    } else {
        1.0 - tail
    }
}

/// Complementary error function `1 - erf(x)`.
pub fn erfc(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let y = x.abs();
    if y <= CODY_THRESHOLD {
        return 1.0 - x * cody_small(y * y);
    }
    let tail = if y >= 26.55 {
        0.0
    } else {
        erfcx_positive(y) * exp_neg_square(y)
    };
    if x < 0.0 {
        2.0 - tail
    } else {
        tail
    }
}

fn erfcx_positive(y: f64) -> f64 {
    debug_assert!(y > CODY_THRESHOLD);
    if y <= 4.0 {
        cody_mid(y)
    } else if y < 1e8 {
        cody_large(y)
    } else {
        FRAC_1_SQRT_PI / y
    }
}

/// Scaled complementary error function `exp(x^2) erfc(x)`.
pub fn erfcx(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    let y = x.abs();
    if y <= CODY_THRESHOLD {
        let z = y * y;
        return z.exp() * (1.0 - x * cody_small(z));
    }
    if x > 0.0 {
        return erfcx_positive(y);
    }
    if x < -26.7 {
        return f64::INFINITY;
    }
    2.0 * (1.0 / exp_neg_square(y)) - erfcx_positive(y)
}

/// Standard normal density.
pub fn std_normal_pdf(z: f64) -> f64 {
    // exp(-z^2/2) == exp_neg_square(z / sqrt 2) loses the exact split; use halves directly
    let hi = z * z;
    let lo = z.mul_add(z, -hi);
    FRAC_1_SQRT_2PI * (-0.5 * hi).exp() * (-0.5 * lo).exp()
}

/// Upper tail `Q(z) = P{N(0,1) > z}`.
pub fn std_normal_sf(z: f64) -> f64 {
    if z.is_nan() {
        return f64::NAN;
    }
    if z < 0.0 {
        return 1.0 - std_normal_sf(-z);
    }
    if z > 38.5 {
        return 0.0;
    }
    let hi = z * z;
    let lo = z.mul_add(z, -hi);
    0.5 * erfcx(z * FRAC_1_SQRT_2) * (-0.5 * hi).exp() * (-0.5 * lo).exp()
}

/// Lower tail `Phi(z)`.
pub fn std_normal_cdf(z: f64) -> f64 {
    std_normal_sf(-z)
}

/// `ln Q(z)`, finite for every finite `z`.
pub fn std_normal_log_sf(z: f64) -> f64 {
    if z < 0.0 {
        return (-std_normal_sf(-z)).ln_1p();
    }
    let hi = z * z;
    let lo = z.mul_add(z, -hi);
    (0.5 * erfcx(z * FRAC_1_SQRT_2)).ln() - 0.5 * hi - 0.5 * lo
}

/// `ln Phi(z)`.
pub fn std_normal_log_cdf(z: f64) -> f64 {
    std_normal_log_sf(-z)
}

/// `ln phi(z)`.
pub fn std_normal_log_pdf(z: f64) -> f64 {
    -0.5 * z * z - LN_SQRT_2PI
}

/// `Phi(b) - Phi(a)` for `a <= b`, accurate for narrow and far-tail
/// intervals alike.
pub fn std_normal_interval(a: f64, b: f64) -> f64 {
    if !(a < b) {
        return 0.0;
    }
    if a >= 0.0 {
        // both in the upper half
        let qa = std_normal_sf(a);
        if qa == 0.0 {
            return 0.0;
        }
        return -qa * ratio_minus_one_sf(a, b);
    }
    if b <= 0.0 {
        let pb = std_normal_sf(-b);
        if pb == 0.0 {
            return 0.0;
        }
        return -pb * ratio_minus_one_sf(-b, -a);
    }
    central(b) + central(-a)
}

/// `Phi(z) - 1/2` for `z >= 0`.
fn central(z: f64) -> f64 {
    let y = z * FRAC_1_SQRT_2;
    if y <= CODY_THRESHOLD {
        0.5 * y * cody_small(y * y)
    } else {
        0.5 - std_normal_sf(z)
    }
}

/// `Q(b)/Q(a) - 1` for `0 <= a < b`.
fn ratio_minus_one_sf(a: f64, b: f64) -> f64 {
    // ln(Q(b)/Q(a)) = -(b-a)(b+a)/2 + ln(erfcx(b')/erfcx(a'))
    let log_ratio =
        -0.5 * (b - a) * (b + a) + (erfcx(b * FRAC_1_SQRT_2) / erfcx(a * FRAC_1_SQRT_2)).ln();
    log_ratio.exp_m1()
}

/// `ln(Phi(b) - Phi(a))` for `a < b`; `-inf` when the interval carries no
/// representable mass.
pub fn std_normal_log_interval(a: f64, b: f64) -> f64 {
    if !(a < b) {
        return f64::NEG_INFINITY;
    }
    if a >= 0.0 {
        return std_normal_log_sf(a) + (-ratio_minus_one_sf_checked(a, b)).ln();
    }
    if b <= 0.0 {
        return std_normal_log_sf(-b) + (-ratio_minus_one_sf_checked(-b, -a)).ln();
    }
    (central(b) + central(-a)).ln()
}

fn ratio_minus_one_sf_checked(a: f64, b: f64) -> f64 {
    if b.is_infinite() {
        -1.0
    } else {
        ratio_minus_one_sf(a, b)
    }
}

/// Acklam's rational approximation to the standard normal quantile,
/// relative error below `1.2e-9`.
fn acklam(p: f64) -> f64 {
    const A: [f64; 6] = [
        -3.969_683_028_665_376e1,
        2.209_460_984_245_205e2,
        -2.759_285_104_469_687e2,
        1.383_577_518_672_69e2,
        -3.066_479_806_614_716e1,
        2.506_628_277_459_239,
    ];
    const B: [f64; 5] = [
        -5.447_609_879_822_406e1,
        1.615_858_368_580_409e2,
        -1.556_989_798_598_866e2,
        6.680_131_188_771_972e1,
        -1.328_068_155_288_572e1,
    ];
    const C: [f64; 6] = [
        -7.784_894_002_430_293e-3,
        -3.223_964_580_411_365e-1,
        -2.400_758_277_161_838,
        -2.549_732_539_343_734,
        4.374_664_141_464_968,
        2.938_163_982_698_783,
    ];
    const D: [f64; 4] = [
        7.784_695_709_041_462e-3,
        3.224_671_290_700_398e-1,
        2.445_134_137_142_996,
        3.754_408_661_907_416,
    ];
    const P_LOW: f64 = 0.024_25;
    if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    }
}

/// Standard normal quantile `Phi^{-1}(p)` for `p` in `(0, 1)`.
///
/// Returns `-inf`/`+inf` at the endpoints and NaN outside `[0, 1]`.
pub fn std_normal_quantile(p: f64) -> f64 {
    if !(0.0..=1.0).contains(&p) {
        return f64::NAN;
    }
    if p == 0.0 {
        return f64::NEG_INFINITY;
    }
    if p == 1.0 {
        return f64::INFINITY;
    }
    if p > 0.5 {
        return -lower_quantile(1.0 - p);
    }
    lower_quantile(p)
}

/// `-Phi^{-1}(s)`: the point whose upper tail probability is `s`.
pub fn std_normal_quantile_upper(s: f64) -> f64 {
    if !(0.0..=1.0).contains(&s) {
        return f64::NAN;
    }
    if s == 0.0 {
        return f64::INFINITY;
    }
    if s == 1.0 {
        return f64::NEG_INFINITY;
    }
    if s > 0.5 {
        return lower_quantile(1.0 - s);
    }
    -lower_quantile(s)
}

/// The point whose upper tail probability is `exp(log_s)`, for any
/// `log_s <= 0`, including levels far below the double range.
pub fn std_normal_quantile_upper_log(log_s: f64) -> f64 {
    if log_s.is_nan() || log_s > 0.0 {
        return f64::NAN;
    }
    if log_s == f64::NEG_INFINITY {
        return f64::INFINITY;
    }
    if log_s >= -700.0 {
        return std_normal_quantile_upper(log_s.exp());
    }
    // Q(z) ~ φ(z)/z: start from -2 ln Q = z² + ln(2π z²)
    let t = -2.0 * log_s;
    let mut z = (t - (2.0 * PI * t).ln()).sqrt();
    for _ in 0..8 {
        // d/dz ln Q(z) = -1 / R(z), R the Mills ratio
        let mills = (PI / 2.0).sqrt() * erfcx(z / SQRT_2);
        let step = (std_normal_log_sf(z) - log_s) * mills;
        z += step;
        if step.abs() <= 1e-16 * z {
            break;
        }
    }
    z
}

/// Quantile for `p <= 1/2` (plus a rounding margin), polished by Newton
/// steps on `ln Phi` so the answer is accurate to the last few ulps even
/// for subnormal `p`.
fn lower_quantile(p: f64) -> f64 {
    let mut z = acklam(p);
    if p > 0.25 {
        // direct residual is well conditioned near the center
        for _ in 0..3 {
            let r = std_normal_cdf(z) - p;
            let step = r / std_normal_pdf(z);
            z -= step;
            if step.abs() <= 1e-17 * z.abs().max(1.0) {
                break;
            }
        }
        return z;
    }
    let target = p.ln();
    for _ in 0..4 {
        let log_cdf = std_normal_log_cdf(z);
        // d/dz ln Phi(z) = phi(z)/Phi(z) = 1 / (sqrt(pi/2) erfcx(-z/sqrt2))
        let hazard = 1.0 / ((PI / 2.0).sqrt() * erfcx(-z / SQRT_2));
        let step = (log_cdf - target) / hazard;
        z -= step;
        if step.abs() <= 1e-16 * z.abs().max(1.0) {
            break;
        }
    }
    z
}
