//! Small numerical kernels shared by the backends: double-double arithmetic,
//! compensated summation and log-gamma based combinatorics.

use std::ops::{Add, Mul, Neg, Sub};

/// Unevaluated sum `hi + lo` with `|lo| <= ulp(hi) / 2`.
///
/// Only the handful of operations needed by the alternating closed form and
/// the Legendre recurrence are provided.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DoubleDouble {
    pub hi: f64,
    pub lo: f64,
}

#[inline]
fn two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    let bb = s - a;
    (s, (a - (s - bb)) + (b - bb))
}

#[inline]
fn quick_two_sum(a: f64, b: f64) -> (f64, f64) {
    let s = a + b;
    (s, b - (s - a))
}

#[inline]
fn two_prod(a: f64, b: f64) -> (f64, f64) {
    let p = a * b;
    (p, a.mul_add(b, -p))
}

impl DoubleDouble {
    pub const ZERO: DoubleDouble = DoubleDouble { hi: 0.0, lo: 0.0 };
    pub const ONE: DoubleDouble = DoubleDouble { hi: 1.0, lo: 0.0 };

    pub fn from_f64(v: f64) -> Self {
        DoubleDouble { hi: v, lo: 0.0 }
    }

    /// Exact `a - b` for doubles.
    pub fn diff(a: f64, b: f64) -> Self {
        let (hi, lo) = two_sum(a, -b);
        DoubleDouble { hi, lo }
    }

    /// Nearest double.
    pub fn to_f64(self) -> f64 {
        self.hi + self.lo
    }

    pub fn abs(self) -> Self {
        if self.hi < 0.0 {
            -self
        } else {
            self
        }
    }

    pub fn mul_f64(self, b: f64) -> Self {
        let (p, e) = two_prod(self.hi, b);
        let (hi, lo) = quick_two_sum(p, e + self.lo * b);
        DoubleDouble { hi, lo }
    }

    pub fn div_f64(self, b: f64) -> Self {
        let q1 = self.hi / b;
        let (p, e) = two_prod(q1, b);
        let (s, mut r) = two_sum(self.hi, -p);
        r -= e;
        r += self.lo;
        let q2 = (s + r) / b;
        let (hi, lo) = quick_two_sum(q1, q2);
        DoubleDouble { hi, lo }
    }
}

impl Add for DoubleDouble {
    type Output = DoubleDouble;
    fn add(self, b: DoubleDouble) -> DoubleDouble {
        let (s, e) = two_sum(self.hi, b.hi);
        let (t, f) = two_sum(self.lo, b.lo);
        let (s, e) = quick_two_sum(s, e + t);
        let (hi, lo) = quick_two_sum(s, e + f);
        DoubleDouble { hi, lo }
    }
}

impl Sub for DoubleDouble {
    type Output = DoubleDouble;
    fn sub(self, b: DoubleDouble) -> DoubleDouble {
        self + (-b)
    }
}

impl Neg for DoubleDouble {
    type Output = DoubleDouble;
    fn neg(self) -> DoubleDouble {
        DoubleDouble {
            hi: -self.hi,
            lo: -self.lo,
        }
    }
}

impl Mul for DoubleDouble {
    type Output = DoubleDouble;
    fn mul(self, b: DoubleDouble) -> DoubleDouble {
        let (p, e) = two_prod(self.hi, b.hi);
        let e = e + (self.hi * b.lo + self.lo * b.hi);
        let (hi, lo) = quick_two_sum(p, e);
        DoubleDouble { hi, lo }
    }
}

/// Kahan-Babuska-Neumaier running sum.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierSum {
    sum: f64,
    comp: f64,
}

impl NeumaierSum {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for NeumaierSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut s = NeumaierSum::new();
        for v in iter {
            s.add(v);
        }
        s
    }
}

pub fn ln_gamma(v: f64) -> f64 {
    libm::lgamma(v)
}

pub fn ln_factorial(k: u64) -> f64 {
    ln_gamma(k as f64 + 1.0)
}

/// `ln C(n, k)` for integers `0 <= k <= n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    debug_assert!(k <= n);
    if k == 0 || k == n {
        return 0.0;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// `k * ln(y)` with the convention `0 * ln(0) = 0`.
#[inline]
pub fn xlogy(k: f64, y: f64) -> f64 {
    if k == 0.0 {
        0.0
    } else {
        k * y.ln()
    }
}

/// `stirlerr(k/2)` for `k = 0..=30`; entry 0 is unused.
#[allow(clippy::excessive_precision)]
const STIRLERR_HALVES: [f64; 31] = [
    0.0,
    0.153_426_409_720_027_345_291_383_9,
    0.081_061_466_795_327_258_219_670_26,
    0.054_814_121_051_917_653_896_138_7,
    0.041_340_695_955_409_294_093_822_08,
    0.033_162_873_519_936_287_485_110_51,
    0.027_677_925_684_998_339_148_789_29,
    0.023_746_163_656_297_495_971_330_28,
    0.020_790_672_103_765_093_111_522_77,
    0.018_488_450_532_673_185_230_779_36,
    0.016_644_691_189_821_192_163_194_87,
    0.015_134_973_221_917_378_873_513_84,
    0.013_876_128_823_070_747_998_745_73,
    0.012_810_465_242_920_226_924_250_66,
    0.011_896_709_945_891_770_095_055_72,
    0.011_104_559_758_206_917_326_630_76,
    0.010_411_265_261_972_096_497_478_57,
    0.009_799_416_126_158_803_298_390_373,
    0.009_255_462_182_712_732_917_728_637,
    0.008_768_700_134_139_385_462_955_047,
    0.008_330_563_433_362_871_256_469_319,
    0.007_934_114_564_314_020_547_249_562,
    0.007_573_675_487_951_840_794_972_024,
    0.007_244_554_301_320_383_179_546_197,
    0.006_942_840_107_209_529_865_664_153,
    0.006_665_247_032_707_682_442_356_181,
    0.006_408_994_188_004_207_068_439_631,
    0.006_171_712_263_039_457_647_534_605,
    0.005_951_370_112_758_847_735_624_416,
    0.005_746_216_513_010_115_682_026_102,
    0.005_554_733_551_962_801_371_038_69,
];

/// `ln Gamma(v + 1) - ((v + 1/2) ln v - v + ln sqrt(2 pi))`, the error of
/// Stirling's approximation, for `v > 0`.
pub fn stirlerr(v: f64) -> f64 {
    const S0: f64 = 1.0 / 12.0;
    const S1: f64 = 1.0 / 360.0;
    const S2: f64 = 1.0 / 1260.0;
    const S3: f64 = 1.0 / 1680.0;
    const S4: f64 = 1.0 / 1188.0;
    if v <= 15.0 {
        let twice = v + v;
        if twice == twice.floor() {
            return STIRLERR_HALVES[twice as usize];
        }
        // stirlerr(v) = stirlerr(v + 1) + (v + 1/2) ln(1 + 1/v) - 1
        let mut acc = 0.0;
        let mut w = v;
        while w <= 15.0 {
            acc += (w + 0.5) * (1.0 / w).ln_1p() - 1.0;
            w += 1.0;
        }
        return acc + stirlerr(w);
    }
    let vv = v * v;
    if v > 500.0 {
        (S0 - S1 / vv) / v
    } else if v > 80.0 {
        (S0 - (S1 - S2 / vv) / vv) / v
    } else if v > 35.0 {
        (S0 - (S1 - (S2 - S3 / vv) / vv) / vv) / v
    } else {
        (S0 - (S1 - (S2 - (S3 - S4 / vv) / vv) / vv) / vv) / v
    }
}

/// Deviance term `x ln(x / m) + m - x`, accurate when `x` is close to `m`.
pub fn bd0(x: f64, m: f64) -> f64 {
    if (x - m).abs() < 0.1 * (x + m) {
        let v = (x - m) / (x + m);
        let v2 = v * v;
        let mut s = (x - m) * v;
        let mut ej = 2.0 * x * v;
        let mut j = 1.0;
        loop {
            ej *= v2;
            let next = s + ej / (2.0 * j + 1.0);
            if next == s {
                return next;
            }
            s = next;
            j += 1.0;
        }
    }
    xlogy(x, x / m) + m - x
}

/// `C(n, k) p^k q^(n-k)` for real `0 <= k <= n` with `q = 1 - p` supplied
/// separately, by the saddle-point expansion.
pub fn binomial_density(k: f64, n: f64, p: f64, q: f64) -> f64 {
    if p == 0.0 {
        return if k == 0.0 { 1.0 } else { 0.0 };
    }
    if q == 0.0 {
        return if k == n { 1.0 } else { 0.0 };
    }
    if k < 0.0 || k > n {
        return 0.0;
    }
    if k == 0.0 {
        if n == 0.0 {
            return 1.0;
        }
        let lc = if p < 0.1 { -bd0(n, n * q) - n * p } else { n * q.ln() };
        return lc.exp();
    }
    if k == n {
        let lc = if q < 0.1 { -bd0(n, n * p) - n * q } else { n * p.ln() };
        return lc.exp();
    }
    let lc = stirlerr(n) - stirlerr(k) - stirlerr(n - k) - bd0(k, n * p) - bd0(n - k, n * q);
    let lf = (2.0 * std::f64::consts::PI).ln() + k.ln() + (-k / n).ln_1p();
    (lc - 0.5 * lf).exp()
}

/// `m^k e^(-m) / k!`.
pub fn poisson_density(k: f64, m: f64) -> f64 {
    if m == 0.0 {
        return if k == 0.0 { 1.0 } else { 0.0 };
    }
    if k == 0.0 {
        return (-m).exp();
    }
    (-stirlerr(k) - bd0(k, m)).exp() / (2.0 * std::f64::consts::PI * k).sqrt()
}

/// `Gamma(a + k) / (Gamma(a) k!) p^a q^k` with `q = 1 - p`, for real `a > 0`.
pub fn neg_binomial_density(k: f64, a: f64, p: f64, q: f64) -> f64 {
    if k == 0.0 {
        return binomial_density(a, a, p, q);
    }
    a / (a + k) * binomial_density(a, a + k, p, q)
}

/// `C(2k, k) / 4^k` for `k = 0..=kmax`, built by the ratio `(2k - 1) / (2k)`.
pub fn central_binomial_ratios(kmax: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(kmax + 1);
    let mut a = 1.0_f64;
    out.push(a);
    for k in 1..=kmax {
        a *= (2 * k - 1) as f64 / (2 * k) as f64;
        out.push(a);
    }
    out
}

/// Returns `Some(k)` when `v` is a non-negative integer up to a relative
/// slack of `1e-9`.
pub fn as_whole(v: f64) -> Option<u64> {
    if !v.is_finite() || v < 0.0 {
        return None;
    }
    let r = v.round();
    if (v - r).abs() <= 1e-9 * r.max(1.0) && r <= 9.0e15 {
        Some(r as u64)
    } else {
        None
    }
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_double_captures_rounding_error() {
        let third = DoubleDouble::ONE.div_f64(3.0);
        let back = third.mul_f64(3.0);
        assert_eq!(back.to_f64(), 1.0);
        assert!((back - DoubleDouble::ONE).hi.abs() < 1e-31);

        let d = DoubleDouble::diff(1.0, 1e-17);
        assert_eq!(d.hi, 1.0);
        assert_eq!(d.lo, -1e-17);
    }

    #[test]
    fn neumaier_recovers_small_terms() {
        let s: NeumaierSum = [1.0, 1e100, 1.0, -1e100].into_iter().collect();
        assert_eq!(s.value(), 2.0);
    }

    #[test]
    fn central_ratios() {
        let a = central_binomial_ratios(4);
        assert_eq!(a, vec![1.0, 0.5, 0.375, 0.3125, 0.2734375]);
    }

    #[test]
    fn whole_numbers() {
        assert_eq!(as_whole(3.0), Some(3));
        assert_eq!(as_whole(5.0 / 1e-6 * 1e-6), Some(5));
        assert_eq!(as_whole(1.5), None);
        assert_eq!(as_whole(-1.0), None);
        assert_eq!(as_whole(f64::NAN), None);
    }

    #[test]
    #[allow(clippy::excessive_precision)]
    fn stirling_error_matches_high_precision_values() {
        // 40-digit reference values
        let cases = [
            (0.3, 0.236_064_900_748_215_581_37),
            (7.25, 0.011_487_002_684_428_696_791),
            (14.9, 0.005_592_002_512_250_830_317_2),
            (15.1, 0.005_517_958_003_163_080_018_1),
            (35.5, 0.002_347_355_765_761_607_217_8),
            (80.5, 0.001_035_191_362_724_942_094_2),
            (500.5, 0.000_166_500_144_344_503_103_31),
            (2000.0, 0.000_041_666_666_319_444_469_246),
        ];
        for (v, want) in cases {
            assert!((stirlerr(v) - want).abs() <= 5e-16, "v = {v}: {}", stirlerr(v));
        }
    }

    #[test]
    fn saddle_point_densities() {
        assert!((binomial_density(1.0, 2.0, 0.25, 0.75) - 0.375).abs() < 1e-15);
        assert!((binomial_density(0.0, 3.0, 0.5, 0.5) - 0.125).abs() < 1e-16);
        assert!((poisson_density(2.0, 1.5) - 1.125 * (-1.5f64).exp()).abs() < 1e-15);
        // geometric law: (1/2)^(k+1)
        for k in 0..10 {
            let want = 0.5f64.powi(k + 1);
            assert!((neg_binomial_density(k as f64, 1.0, 0.5, 0.5) - want).abs() <= 1e-15 * want);
        }
        assert!(bd0(10.0, 10.0).abs() < 1e-300);
    }

    #[test]
    fn log_binomial_small() {
        assert!((ln_binomial(5, 2).exp() - 10.0).abs() < 1e-13);
        assert_eq!(ln_binomial(7, 0), 0.0);
    }
}
