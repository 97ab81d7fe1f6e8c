//! Complex arithmetic backends for the fixed-point sums.
//!
//! [`DoubleBackend`] works in `f64` with Neumaier-compensated summation.
//! [`MultiBackend`] carries an arbitrary binary precision on top of
//! `astro-float`. Algorithms are written once against [`Backend`].

use astro_float::{BigFloat, Consts, RoundingMode, Sign};
use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_traits::Zero;

/// Significand width of `f64`.
pub const DOUBLE_PRECISION: u32 = 53;

pub trait Backend: Send + Sync {
    type Value: Clone + Send + Sync;

    /// Precision in bits that results are trusted to.
    fn precision(&self) -> u32;
    fn lift_int(&self, value: i64) -> Self::Value;
    fn lift_complex(&self, value: Complex64) -> Self::Value;
    /// `exp(2πi k / order)`.
    fn root_of_unity(&self, k: u64, order: u64) -> Self::Value;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn to_c64(&self, value: &Self::Value) -> Complex64;
    /// Sums `terms` in the order given.
    fn sum(&self, terms: &[Self::Value]) -> Self::Value;
    /// Nearest integer to the real part, `|Re - rounded|`, and `|Im|`.
    fn round_real(&self, value: &Self::Value) -> (BigInt, f64, f64);

    fn zero(&self) -> Self::Value {
        self.lift_int(0)
    }

    fn one(&self) -> Self::Value {
        self.lift_int(1)
    }

    fn pow(&self, base: &Self::Value, mut exponent: u64) -> Self::Value {
        let mut result = self.one();
        let mut square = base.clone();
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = self.mul(&result, &square);
            }
            exponent >>= 1;
            if exponent > 0 {
                square = self.mul(&square, &square);
            }
        }
        result
    }

    fn product<'a>(&self, values: impl IntoIterator<Item = &'a Self::Value>) -> Self::Value
    where
        Self::Value: 'a,
    {
        values
            .into_iter()
            .fold(self.one(), |acc, v| self.mul(&acc, v))
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DoubleBackend;

fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut compensation = 0.0f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            compensation += (sum - t) + x;
        } else {
            compensation += (x - t) + sum;
        }
        sum = t;
    }
    sum + compensation
}

impl Backend for DoubleBackend {
    type Value = Complex64;

    fn precision(&self) -> u32 {
        DOUBLE_PRECISION
    }

    fn lift_int(&self, value: i64) -> Complex64 {
        Complex64::new(value as f64, 0.0)
    }

    fn lift_complex(&self, value: Complex64) -> Complex64 {
        value
    }

    fn root_of_unity(&self, k: u64, order: u64) -> Complex64 {
        let k = k % order;
        // Quarter turns are exact.
        if (4 * k).is_multiple_of(order) {
            return match 4 * k / order {
                0 => Complex64::new(1.0, 0.0),
                1 => Complex64::new(0.0, 1.0),
                2 => Complex64::new(-1.0, 0.0),
                _ => Complex64::new(0.0, -1.0),
            };
        }
        let angle = std::f64::consts::TAU * k as f64 / order as f64;
        Complex64::from_polar(1.0, angle)
    }

    fn add(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a + b
    }

    fn sub(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a - b
    }

    fn mul(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a * b
    }

    fn div(&self, a: &Complex64, b: &Complex64) -> Complex64 {
        a / b
    }

    fn to_c64(&self, value: &Complex64) -> Complex64 {
        *value
    }

    fn sum(&self, terms: &[Complex64]) -> Complex64 {
        Complex64::new(
            neumaier(terms.iter().map(|z| z.re)),
            neumaier(terms.iter().map(|z| z.im)),
        )
    }

    fn round_real(&self, value: &Complex64) -> (BigInt, f64, f64) {
        let rounded = value.re.round();
        let integer = BigInt::from(rounded as i128);
        (integer, (value.re - rounded).abs(), value.im.abs())
    }
}

/// Complex number with `astro-float` parts.
#[derive(Debug, Clone)]
pub struct BigComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

/// Arbitrary-precision backend. Intermediate values carry 32 guard bits on
/// top of the requested precision.
#[derive(Debug, Clone, Copy)]
pub struct MultiBackend {
    bits: u32,
}

const ROUNDING: RoundingMode = RoundingMode::ToEven;

impl MultiBackend {
    pub fn new(bits: u32) -> Self {
        Self {
            bits: bits.max(DOUBLE_PRECISION),
        }
    }

    fn working(&self) -> usize {
        self.bits as usize + 32
    }

    fn real(&self, value: BigFloat) -> BigComplex {
        BigComplex {
            re: value,
            im: BigFloat::from_i64(0, self.working()),
        }
    }
}

/// Exact conversion of an integral `BigFloat` to `BigInt`.
fn integral_to_bigint(value: &BigFloat) -> BigInt {
    let Some((words, _, sign, exponent, _)) = value.as_raw_parts() else {
        return BigInt::zero();
    };
    if words.is_empty() {
        return BigInt::zero();
    }
    let mantissa = BigUint::from_slice(
        &words
            .iter()
            .flat_map(|w| [*w as u32, (*w >> 32) as u32])
            .collect::<Vec<_>>(),
    );
    let shift = i64::from(exponent) - 64 * words.len() as i64;
    let magnitude = if shift >= 0 {
        mantissa << shift as usize
    } else {
        mantissa >> (-shift) as usize
    };
    let magnitude = BigInt::from(magnitude);
    match sign {
        Sign::Neg => -magnitude,
        Sign::Pos => magnitude,
    }
}

fn to_f64(value: &BigFloat) -> f64 {
    let Some((words, _, sign, exponent, _)) = value.as_raw_parts() else {
        return f64::NAN;
    };
    let top = match words.last() {
        Some(&w) => w,
        None => return 0.0,
    };
    let next = if words.len() > 1 {
        words[words.len() - 2]
    } else {
        0
    };
    // Two leading words give more than 53 significant bits.
    let fraction = top as f64 / 2f64.powi(64) + next as f64 / 2f64.powi(128);
    let magnitude = fraction * 2f64.powi(exponent);
    match sign {
        Sign::Neg => -magnitude,
        Sign::Pos => magnitude,
    }
}

impl Backend for MultiBackend {
    type Value = BigComplex;

    fn precision(&self) -> u32 {
        self.bits
    }

    fn lift_int(&self, value: i64) -> BigComplex {
        self.real(BigFloat::from_i64(value, self.working()))
    }

    fn lift_complex(&self, value: Complex64) -> BigComplex {
        BigComplex {
            re: BigFloat::from_f64(value.re, self.working()),
            im: BigFloat::from_f64(value.im, self.working()),
        }
    }

    fn root_of_unity(&self, k: u64, order: u64) -> BigComplex {
        let p = self.working();
        let mut cc = Consts::new().expect("constants cache");
        let two_pi = cc
            .pi(p, ROUNDING)
            .mul(&BigFloat::from_i64(2, p), p, ROUNDING);
        let angle = two_pi
            .mul(&BigFloat::from_u64(k % order, p), p, ROUNDING)
            .div(&BigFloat::from_u64(order, p), p, ROUNDING);
        BigComplex {
            re: angle.cos(p, ROUNDING, &mut cc),
            im: angle.sin(p, ROUNDING, &mut cc),
        }
    }

    fn add(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        let p = self.working();
        BigComplex {
            re: a.re.add(&b.re, p, ROUNDING),
            im: a.im.add(&b.im, p, ROUNDING),
        }
    }

    fn sub(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        let p = self.working();
        BigComplex {
            re: a.re.sub(&b.re, p, ROUNDING),
            im: a.im.sub(&b.im, p, ROUNDING),
        }
    }

    fn mul(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        let p = self.working();
        let rr = a.re.mul(&b.re, p, ROUNDING);
        let ii = a.im.mul(&b.im, p, ROUNDING);
        let ri = a.re.mul(&b.im, p, ROUNDING);
        let ir = a.im.mul(&b.re, p, ROUNDING);
        BigComplex {
            re: rr.sub(&ii, p, ROUNDING),
            im: ri.add(&ir, p, ROUNDING),
        }
    }

    fn div(&self, a: &BigComplex, b: &BigComplex) -> BigComplex {
        let p = self.working();
        let norm =
            b.re.mul(&b.re, p, ROUNDING)
                .add(&b.im.mul(&b.im, p, ROUNDING), p, ROUNDING);
        let conj = BigComplex {
            re: b.re.clone(),
            im: b.im.neg(),
        };
        let num = self.mul(a, &conj);
        BigComplex {
            re: num.re.div(&norm, p, ROUNDING),
            im: num.im.div(&norm, p, ROUNDING),
        }
    }

    fn to_c64(&self, value: &BigComplex) -> Complex64 {
        Complex64::new(to_f64(&value.re), to_f64(&value.im))
    }

    fn sum(&self, terms: &[BigComplex]) -> BigComplex {
        terms.iter().fold(self.zero(), |acc, t| self.add(&acc, t))
    }

    fn round_real(&self, value: &BigComplex) -> (BigInt, f64, f64) {
        let p = self.working();
        let rounded = value.re.round(0, ROUNDING);
        let residual = value.re.sub(&rounded, p, ROUNDING);
        (
            integral_to_bigint(&rounded),
            to_f64(&residual).abs(),
            to_f64(&value.im).abs(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    #[test]
    fn double_roots_are_exact_on_quarter_turns() {
        let b = DoubleBackend;
        assert_eq!(b.root_of_unity(1, 4), Complex64::new(0.0, 1.0));
        assert_eq!(b.root_of_unity(6, 4), Complex64::new(-1.0, 0.0));
        let z = b.root_of_unity(1, 8);
        assert!((z.norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn compensated_sum_recovers_small_terms() {
        let b = DoubleBackend;
        let terms: Vec<Complex64> = [1e16, 1.0, -1e16, 1.0]
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        assert_eq!(b.sum(&terms).re, 2.0);
    }

    #[test]
    fn multi_conversions() {
        let b = MultiBackend::new(128);
        let x = b.lift_complex(Complex64::new(3.5, -0.75));
        assert_eq!(b.to_c64(&x), Complex64::new(3.5, -0.75));
        let (rounded, residual, imag) = b.round_real(&b.lift_complex(Complex64::new(-2.6, 0.0)));
        assert_eq!(rounded, BigInt::from(-3));
        assert!((residual - 0.4).abs() < 1e-12);
        assert_eq!(imag, 0.0);

        let big = b.pow(&b.lift_int(3), 60);
        let (rounded, residual, _) = b.round_real(&big);
        assert_eq!(rounded, BigInt::from(3u8).pow(60));
        assert_eq!(residual, 0.0);
    }

    #[test]
    fn multi_roots_match_double() {
        let multi = MultiBackend::new(200);
        for k in 0..12 {
            let a = multi.to_c64(&multi.root_of_unity(k, 12));
            let b = DoubleBackend.root_of_unity(k, 12);
            assert!((a - b).norm() < 1e-15, "k={k}: {a} vs {b}");
        }
        let z = multi.root_of_unity(1, 7);
        let (rounded, residual, imag) = multi.round_real(&multi.pow(&z, 7));
        assert_eq!(rounded, BigInt::from(1));
        assert!(residual < 1e-50 && imag < 1e-50);
    }

    #[test]
    fn pow_and_division() {
        let b = DoubleBackend;
        let z = Complex64::new(0.0, 1.0);
        assert_eq!(b.pow(&z, 4), Complex64::new(1.0, 0.0));
        assert_eq!(b.pow(&z, 0), Complex64::new(1.0, 0.0));
        let m = MultiBackend::new(100);
        let q = m.div(&m.lift_int(1), &m.lift_complex(Complex64::new(0.0, 2.0)));
        assert!((m.to_c64(&q) - Complex64::new(0.0, -0.5)).norm() < 1e-15);
        assert!(b.round_real(&Complex64::new(7.0, 0.0)).0.to_i64() == Some(7));
    }
}
