//! Arbitrary-precision ball arithmetic.
//!
//! Every analytic value in the library is a ball: an arbitrary-precision
//! dyadic midpoint together with an error radius that is always rounded
//! outward. The contract for every operation here is containment: the
//! result ball contains every exact result of points taken in the input
//! balls.

pub mod elem;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use std::cmp::Ordering;

/// A dyadic float `±mag · 2^exp` with unbounded mantissa.
///
/// `Dy` values are exact; rounding happens only in the `*_round` helpers,
/// which report the rounding error so callers can fold it into a radius.
#[derive(Clone, PartialEq, Eq)]
pub struct Dy {
    pub neg: bool,
    pub mag: BigUint,
    pub exp: i64,
}

/// A low-precision nonnegative magnitude `man · 2^exp` used for radii.
///
/// All `Mag` arithmetic rounds up, so a `Mag` is always a valid upper
/// bound after any chain of operations. Mantissas are kept below 2^32.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Mag {
    pub man: u64,
    pub exp: i64,
}

impl Mag {
    pub const ZERO: Mag = Mag { man: 0, exp: 0 };

    pub fn is_zero(&self) -> bool {
        self.man == 0
    }

    pub fn two_pow(e: i64) -> Mag {
        Mag {
            man: 1 << 31,
            exp: e - 31,
        }
    }

    pub fn from_u64(v: u64) -> Mag {
        Mag::normalize_up(u128::from(v), 0)
    }

    fn normalize_up(mut man: u128, mut exp: i64) -> Mag {
        if man == 0 {
            return Mag::ZERO;
        }
        while man >= (1u128 << 32) {
            let dropped = man & 1;
            man >>= 1;
            man += u128::from(dropped != 0);
            exp += 1;
        }
        // keep mantissas wide so the +1 round-up slop stays ~2^-31 relative
        while man < (1u128 << 31) {
            man <<= 1;
            exp -= 1;
        }
        Mag {
            man: man as u64,
            exp,
        }
    }

    pub fn add(self, other: Mag) -> Mag {
        if self.man == 0 {
            return other;
        }
        if other.man == 0 {
            return self;
        }
        let (hi, lo) = if self.log2_upper() >= other.log2_upper() {
            (self, other)
        } else {
            (other, self)
        };
        let diff = hi.exp - lo.exp;
        if diff >= 64 {
            return Mag::normalize_up(u128::from(hi.man) + 1, hi.exp);
        }
        if diff >= 0 {
            let shifted = if diff == 0 { lo.man } else { (lo.man >> diff) + 1 };
            Mag::normalize_up(u128::from(hi.man) + u128::from(shifted), hi.exp)
        } else {
            // hi has larger value but smaller exp: align to lo.exp going up
            let d = (-diff) as u32;
            if d >= 64 {
                return Mag::normalize_up(u128::from(lo.man) + 1, lo.exp);
            }
            Mag::normalize_up(
                (u128::from(hi.man) << d) + u128::from(lo.man),
                lo.exp - i64::from(d),
            )
        }
    }

    pub fn mul(self, other: Mag) -> Mag {
        if self.man == 0 || other.man == 0 {
            return Mag::ZERO;
        }
        // mantissa product is exact; normalize_up rounds any dropped bits up
        Mag::normalize_up(
            u128::from(self.man) * u128::from(other.man),
            self.exp + other.exp,
        )
    }

    pub fn mul_2exp(self, e: i64) -> Mag {
        if self.man == 0 {
            return self;
        }
        Mag {
            man: self.man,
            exp: self.exp + e,
        }
    }

    /// Upper bound on log2 of the value (for comparisons/diagnostics).
    pub fn log2_upper(&self) -> i64 {
        if self.man == 0 {
            return i64::MIN / 2;
        }
        self.exp + 64 - i64::from(self.man.leading_zeros())
    }

    pub fn cmp_mag(&self, other: &Mag) -> Ordering {
        if self.man == 0 && other.man == 0 {
            return Ordering::Equal;
        }
        if self.man == 0 {
            return Ordering::Less;
        }
        if other.man == 0 {
            return Ordering::Greater;
        }
        let la = self.log2_upper();
        let lb = other.log2_upper();
        if la != lb {
            return la.cmp(&lb);
        }
        // same top bit position: align mantissas
        let sa = u128::from(self.man) << 32;
        let sb = u128::from(other.man) << 32;
        let shift = self.exp - other.exp;
        if shift >= 0 {
            (sa << shift.min(96)).cmp(&sb)
        } else {
            sa.cmp(&(sb << (-shift).min(96)))
        }
    }

    pub fn max(self, other: Mag) -> Mag {
        if self.cmp_mag(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }

    /// Division upper bound.
    pub fn div_up(self, other: Mag) -> Mag {
        assert!(other.man != 0, "Mag::div_up by zero");
        if self.man == 0 {
            return Mag::ZERO;
        }
        let num = u128::from(self.man) << 64;
        let q = num / u128::from(other.man) + 1;
        Mag::normalize_up(q, self.exp - other.exp - 64)
    }

    pub fn to_f64(&self) -> f64 {
        if self.man == 0 {
            return 0.0;
        }
        let e = self.exp.clamp(-2000, 2000) as i32;
        self.man as f64 * 2f64.powi(e)
    }

    pub fn from_f64_upper(x: f64) -> Mag {
        assert!(x >= 0.0 && x.is_finite());
        if x == 0.0 {
            return Mag::ZERO;
        }
        let bits = x.to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64 - 1075;
        let man = if exp == -1075 {
            bits & ((1 << 52) - 1)
        } else {
            (bits & ((1 << 52) - 1)) | (1 << 52)
        };
        let adj_exp = if exp == -1075 { -1074 } else { exp };
        Mag::normalize_up(u128::from(man) + 1, adj_exp)
    }
}

impl Dy {
    pub fn zero() -> Dy {
        Dy {
            neg: false,
            mag: BigUint::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Dy {
        Dy {
            neg: false,
            mag: BigUint::one(),
            exp: 0,
        }
    }

    pub fn from_i64(v: i64) -> Dy {
        Dy {
            neg: v < 0,
            mag: BigUint::from(v.unsigned_abs()),
            exp: 0,
        }
    }

    pub fn from_bigint(v: &num_bigint::BigInt) -> Dy {
        Dy {
            neg: v.sign() == num_bigint::Sign::Minus,
            mag: v.magnitude().clone(),
            exp: 0,
        }
    }

    /// `m · 2^e` for small m.
    pub fn from_i64_2exp(m: i64, e: i64) -> Dy {
        let mut d = Dy::from_i64(m);
        d.exp = e;
        d.normalize();
        d
    }

    pub fn is_zero(&self) -> bool {
        self.mag.is_zero()
    }

    pub fn bits(&self) -> u64 {
        self.mag.bits()
    }

    /// log2 of |value|, within 1.
    pub fn log2_approx(&self) -> i64 {
        if self.is_zero() {
            return i64::MIN / 2;
        }
        self.exp + self.bits() as i64 - 1
    }

    fn normalize(&mut self) {
        if self.mag.is_zero() {
            self.neg = false;
            self.exp = 0;
            return;
        }
        let tz = self.mag.trailing_zeros().unwrap_or(0);
        if tz > 0 {
            self.mag >>= tz;
            self.exp += tz as i64;
        }
    }

    pub fn neg(&self) -> Dy {
        if self.is_zero() {
            return self.clone();
        }
        Dy {
            neg: !self.neg,
            mag: self.mag.clone(),
            exp: self.exp,
        }
    }

    pub fn mul_2exp(&self, e: i64) -> Dy {
        if self.is_zero() {
            return self.clone();
        }
        Dy {
            neg: self.neg,
            mag: self.mag.clone(),
            exp: self.exp + e,
        }
    }

    pub fn abs(&self) -> Dy {
        Dy {
            neg: false,
            mag: self.mag.clone(),
            exp: self.exp,
        }
    }

    /// Exact addition.
    pub fn add_exact(&self, other: &Dy) -> Dy {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let ma = &self.mag << (self.exp - e) as u64;
        let mb = &other.mag << (other.exp - e) as u64;
        let (neg, mag) = if self.neg == other.neg {
            (self.neg, ma + mb)
        } else {
            match ma.cmp(&mb) {
                Ordering::Equal => return Dy::zero(),
                Ordering::Greater => (self.neg, ma - mb),
                Ordering::Less => (other.neg, mb - ma),
            }
        };
        let mut r = Dy { neg, mag, exp: e };
        r.normalize();
        r
    }

    pub fn sub_exact(&self, other: &Dy) -> Dy {
        self.add_exact(&other.neg())
    }

    /// Exact multiplication.
    pub fn mul_exact(&self, other: &Dy) -> Dy {
        if self.is_zero() || other.is_zero() {
            return Dy::zero();
        }
        Dy {
            neg: self.neg != other.neg,
            mag: &self.mag * &other.mag,
            exp: self.exp + other.exp,
        }
    }

    /// Round to `prec` significant bits (to nearest); returns the error bound.
    pub fn round(&self, prec: u32) -> (Dy, Mag) {
        let bits = self.bits();
        if bits <= u64::from(prec) {
            return (self.clone(), Mag::ZERO);
        }
        let shift = bits - u64::from(prec);
        let mut kept = &self.mag >> shift;
        // round to nearest on the dropped part
        let round_bit = (&self.mag >> (shift - 1)) & BigUint::one();
        if !round_bit.is_zero() {
            kept += 1u32;
        }
        let mut r = Dy {
            neg: self.neg,
            mag: kept,
            exp: self.exp + shift as i64,
        };
        r.normalize();
        (r, Mag::two_pow(self.exp + shift as i64 - 1))
    }

    pub fn add_round(&self, other: &Dy, prec: u32) -> (Dy, Mag) {
        // Skip exact work when one operand is negligible at this precision.
        if !self.is_zero() && !other.is_zero() {
            let la = self.log2_approx();
            let lb = other.log2_approx();
            let cutoff = i64::from(prec) + 8;
            if la - lb > cutoff && other.bits() > 0 {
                let (r, e) = self.round(prec);
                return (r, e.add(other.abs_mag_upper()));
            }
            if lb - la > cutoff {
                let (r, e) = other.round(prec);
                return (r, e.add(self.abs_mag_upper()));
            }
        }
        self.add_exact(other).round(prec)
    }

    pub fn mul_round(&self, other: &Dy, prec: u32) -> (Dy, Mag) {
        self.mul_exact(other).round(prec)
    }

    /// Quotient correct to ~prec bits; error bound returned.
    pub fn div_round(&self, other: &Dy, prec: u32) -> (Dy, Mag) {
        assert!(!other.is_zero(), "Dy::div_round by zero");
        if self.is_zero() {
            return (Dy::zero(), Mag::ZERO);
        }
        let want = u64::from(prec) + 2;
        // choose shift so quotient has ~want bits
        let nb = self.bits() as i64;
        let db = other.bits() as i64;
        let shift = (want as i64 + db - nb).max(0) as u64;
        let q = (&self.mag << shift) / &other.mag;
        let qexp = self.exp - shift as i64 - other.exp;
        let mut r = Dy {
            neg: self.neg != other.neg,
            mag: q,
            exp: qexp,
        };
        r.normalize();
        // truncation error at most 1 ulp of 2^qexp
        (r, Mag::two_pow(qexp))
    }

    /// Upper bound on |self| as a Mag.
    pub fn abs_mag_upper(&self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let bits = self.bits();
        if bits <= 32 {
            let m: u64 = self.mag.iter_u64_digits().next().unwrap_or(0);
            Mag { man: m, exp: self.exp }
        } else {
            let shift = bits - 32;
            let top = (&self.mag >> shift).iter_u64_digits().next().unwrap_or(0);
            Mag::normalize_up(u128::from(top) + 1, self.exp + shift as i64)
        }
    }

    /// Lower bound on |self| as a Mag (rounded down).
    pub fn abs_mag_lower(&self) -> Mag {
        if self.is_zero() {
            return Mag::ZERO;
        }
        let bits = self.bits();
        if bits <= 32 {
            let m: u64 = self.mag.iter_u64_digits().next().unwrap_or(0);
            Mag { man: m, exp: self.exp }
        } else {
            let shift = bits - 32;
            let top = (&self.mag >> shift).iter_u64_digits().next().unwrap_or(0);
            Mag {
                man: top,
                exp: self.exp + shift as i64,
            }
        }
    }

    pub fn cmp_value(&self, other: &Dy) -> Ordering {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Ordering::Equal,
            (true, false) => {
                return if other.neg {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
            (false, true) => return if self.neg { Ordering::Less } else { Ordering::Greater },
            _ => {}
        }
        if self.neg != other.neg {
            return if self.neg { Ordering::Less } else { Ordering::Greater };
        }
        let mag_cmp = {
            let la = self.log2_approx();
            let lb = other.log2_approx();
            if la != lb {
                la.cmp(&lb)
            } else {
                let e = self.exp.min(other.exp);
                let ma = &self.mag << (self.exp - e) as u64;
                let mb = &other.mag << (other.exp - e) as u64;
                ma.cmp(&mb)
            }
        };
        if self.neg {
            mag_cmp.reverse()
        } else {
            mag_cmp
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let bits = self.bits();
        let (top, e) = if bits > 53 {
            let shift = bits - 53;
            (
                (&self.mag >> shift).iter_u64_digits().next().unwrap_or(0),
                self.exp + shift as i64,
            )
        } else {
            (self.mag.iter_u64_digits().next().unwrap_or(0), self.exp)
        };
        let v = top as f64 * 2f64.powi(e.clamp(-2000, 2000) as i32);
        if self.neg {
            -v
        } else {
            v
        }
    }

    /// (mantissa in [0.5,1), binary exponent) view, for scale-aware f64 work.
    pub fn to_f64_exp(&self) -> (f64, i64) {
        if self.is_zero() {
            return (0.0, 0);
        }
        let bits = self.bits() as i64;
        let top_bits = bits.min(53);
        let shift = bits - top_bits;
        let top = (&self.mag >> shift as u64).iter_u64_digits().next().unwrap_or(0);
        let m = top as f64 / 2f64.powi(top_bits as i32);
        let e = self.exp + shift + top_bits;
        (if self.neg { -m } else { m }, e)
    }

    pub fn from_f64(x: f64) -> Dy {
        assert!(x.is_finite());
        if x == 0.0 {
            return Dy::zero();
        }
        let bits = x.abs().to_bits();
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1 << 52) - 1);
        let (man, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1 << 52), exp - 1075)
        };
        let mut d = Dy {
            neg: x < 0.0,
            mag: BigUint::from(man),
            exp: e,
        };
        d.normalize();
        d
    }
}

impl std::fmt::Debug for Dy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:e}", self.to_f64())
    }
}

/// Real ball: midpoint with absolute error radius.
#[derive(Clone, Debug)]
pub struct BallReal {
    pub mid: Dy,
    pub rad: Mag,
}

impl BallReal {
    pub fn zero() -> BallReal {
        BallReal {
            mid: Dy::zero(),
            rad: Mag::ZERO,
        }
    }

    pub fn exact(mid: Dy) -> BallReal {
        BallReal {
            mid,
            rad: Mag::ZERO,
        }
    }

    pub fn from_i64(v: i64) -> BallReal {
        BallReal::exact(Dy::from_i64(v))
    }

    pub fn from_f64(v: f64) -> BallReal {
        BallReal::exact(Dy::from_f64(v))
    }

    pub fn from_rational(num: &num_bigint::BigInt, den: &num_bigint::BigInt, prec: u32) -> BallReal {
        let n = Dy::from_bigint(num);
        let d = Dy::from_bigint(den);
        let (q, e) = n.div_round(&d, prec);
        BallReal { mid: q, rad: e }
    }

    pub fn neg(&self) -> BallReal {
        BallReal {
            mid: self.mid.neg(),
            rad: self.rad,
        }
    }

    pub fn add(&self, other: &BallReal, prec: u32) -> BallReal {
        let (mid, e) = self.mid.add_round(&other.mid, prec);
        BallReal {
            mid,
            rad: self.rad.add(other.rad).add(e),
        }
    }

    pub fn sub(&self, other: &BallReal, prec: u32) -> BallReal {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &BallReal, prec: u32) -> BallReal {
        let (mid, e) = self.mid.mul_round(&other.mid, prec);
        let rad = self
            .rad
            .mul(other.mid.abs_mag_upper())
            .add(other.rad.mul(self.mid.abs_mag_upper()))
            .add(self.rad.mul(other.rad))
            .add(e);
        BallReal { mid, rad }
    }

    pub fn mul_2exp(&self, e: i64) -> BallReal {
        BallReal {
            mid: self.mid.mul_2exp(e),
            rad: self.rad.mul_2exp(e),
        }
    }

    pub fn mul_i64(&self, k: i64, prec: u32) -> BallReal {
        self.mul(&BallReal::from_i64(k), prec)
    }

    /// Reciprocal; requires the ball to exclude zero.
    pub fn inv(&self, prec: u32) -> Option<BallReal> {
        let lo = self.abs_lower();
        if lo.is_zero() {
            return None;
        }
        let (q, e) = Dy::one().div_round(&self.mid, prec);
        // |1/x - 1/m| <= r / (|m| (|m|-r)) for |x-m| <= r < |m|
        let mlo = self.mid.abs_mag_lower();
        let denom = mlo.mul(lo);
        let prop = self.rad.div_up(denom_floor(denom));
        Some(BallReal {
            mid: q,
            rad: e.add(prop),
        })
    }

    pub fn div(&self, other: &BallReal, prec: u32) -> Option<BallReal> {
        Some(self.mul(&other.inv(prec)?, prec))
    }

    /// Lower bound for |value| over the ball (0 if it may contain 0).
    pub fn abs_lower(&self) -> Mag {
        let m = self.mid.abs_mag_lower();
        mag_sub_lower(m, self.rad)
    }

    /// Upper bound for |value| over the ball.
    pub fn abs_upper(&self) -> Mag {
        self.mid.abs_mag_upper().add(self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    /// Certified: every point of the ball is > 0.
    pub fn is_positive(&self) -> bool {
        !self.mid.neg && !self.mid.is_zero() && !self.contains_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.mid.neg && !self.contains_zero()
    }

    pub fn contains(&self, other: &BallReal) -> bool {
        // |m1 - m2| + r2 <= r1
        let d = self.mid.sub_exact(&other.mid).abs_mag_upper();
        d.add(other.rad).cmp_mag(&self.rad) != Ordering::Greater
    }

    pub fn contains_dy(&self, x: &Dy) -> bool {
        let d = self.mid.sub_exact(x).abs_mag_upper();
        d.cmp_mag(&self.rad) != Ordering::Greater
    }

    pub fn to_f64(&self) -> f64 {
        self.mid.to_f64()
    }

    /// Square root; ball must be nonnegative-compatible.
    pub fn sqrt(&self, prec: u32) -> Option<BallReal> {
        if self.mid.neg && !self.contains_zero() {
            return None;
        }
        if self.mid.is_zero() && self.rad.is_zero() {
            return Some(BallReal::zero());
        }
        // upper bound of the range
        let hi = self.abs_upper();
        let lo = if self.mid.neg { Mag::ZERO } else { self.abs_lower() };
        // midpoint sqrt via integer sqrt at prec+2 bits
        let m = if self.mid.neg { Dy::zero() } else { self.mid.clone() };
        let want = 2 * (u64::from(prec) + 2);
        let bits = m.bits();
        let mut shift = want.saturating_sub(bits);
        if (m.exp - shift as i64) % 2 != 0 {
            shift += 1;
        }
        let scaled = &m.mag << shift;
        let root = scaled.sqrt();
        let mut mid = Dy {
            neg: false,
            mag: root,
            exp: (m.exp - shift as i64) / 2,
        };
        mid.normalize();
        let trunc_err = Mag::two_pow((m.exp - shift as i64) / 2);
        // radius propagation: sqrt range is [sqrt(lo), sqrt(hi)]
        let prop = if lo.is_zero() {
            // enclose [0, sqrt(hi)] crudely: rad = sqrt(hi)
            mag_sqrt_upper(hi)
        } else {
            // |sqrt(x)-sqrt(m)| <= r / (2 sqrt(lo))
            self.rad.div_up(denom_floor(mag_sqrt_lower(lo).mul_2exp(1)))
        };
        Some(BallReal {
            mid,
            rad: trunc_err.add(prop),
        })
    }
}

fn denom_floor(m: Mag) -> Mag {
    // Mag ops round up; for use in denominators we must round down.
    // Drop one ulp to be safe.
    if m.man <= 1 {
        Mag { man: 1, exp: m.exp - 1 }
    } else {
        Mag {
            man: m.man - 1,
            exp: m.exp,
        }
    }
}

pub fn mag_sub_lower(a: Mag, b: Mag) -> Mag {
    if a.cmp_mag(&b) != Ordering::Greater {
        return Mag::ZERO;
    }
    if b.is_zero() {
        return a;
    }
    // normalize (exact upscaling) so mantissa surgery below keeps precision
    let a = Mag::normalize_up(u128::from(a.man), a.exp);
    let b = Mag::normalize_up(u128::from(b.man), b.exp);
    let e = a.exp.min(b.exp);
    let sa = a.exp - e;
    let sb = b.exp - e;
    if sa > 90 || sb > 90 {
        // b is negligible next to a: drop one ulp from a's (normalized) mantissa
        return Mag {
            man: a.man - 1,
            exp: a.exp,
        };
    }
    let va = u128::from(a.man) << sa;
    let vb = u128::from(b.man) << sb;
    if va <= vb {
        return Mag::ZERO;
    }
    let mut d = va - vb;
    let mut exp = e;
    while d >= (1 << 32) {
        d >>= 1; // rounds down
        exp += 1;
    }
    Mag { man: d as u64, exp }
}

pub fn mag_sqrt_upper(m: Mag) -> Mag {
    if m.is_zero() {
        return Mag::ZERO;
    }
    let (man, exp) = if m.exp % 2 != 0 {
        (u128::from(m.man) << 1, m.exp - 1)
    } else {
        (u128::from(m.man), m.exp)
    };
    let scaled = man << 32;
    let root = int_sqrt_u128(scaled) + 1;
    Mag::normalize_up(root, (exp - 32) / 2)
}

pub fn mag_sqrt_lower(m: Mag) -> Mag {
    if m.is_zero() {
        return Mag::ZERO;
    }
    let (man, exp) = if m.exp % 2 != 0 {
        (u128::from(m.man) << 1, m.exp - 1)
    } else {
        (u128::from(m.man), m.exp)
    };
    let scaled = man << 32;
    let root = int_sqrt_u128(scaled);
    let mut r = root;
    let mut e = (exp - 32) / 2;
    while r >= (1 << 32) {
        r >>= 1;
        e += 1;
    }
    Mag { man: r as u64, exp: e }
}

fn int_sqrt_u128(n: u128) -> u128 {
    if n == 0 {
        return 0;
    }
    let mut x = 1u128 << ((128 - n.leading_zeros()).div_ceil(2));
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Complex ball: disk with dyadic center and Mag radius.
#[derive(Clone, Debug)]
pub struct BallComplex {
    pub re: Dy,
    pub im: Dy,
    pub rad: Mag,
}

impl BallComplex {
    pub fn zero() -> BallComplex {
        BallComplex {
            re: Dy::zero(),
            im: Dy::zero(),
            rad: Mag::ZERO,
        }
    }

    pub fn one() -> BallComplex {
        BallComplex {
            re: Dy::one(),
            im: Dy::zero(),
            rad: Mag::ZERO,
        }
    }

    pub fn exact(re: Dy, im: Dy) -> BallComplex {
        BallComplex {
            re,
            im,
            rad: Mag::ZERO,
        }
    }

    pub fn from_i64(re: i64, im: i64) -> BallComplex {
        BallComplex::exact(Dy::from_i64(re), Dy::from_i64(im))
    }

    pub fn from_f64(re: f64, im: f64) -> BallComplex {
        BallComplex::exact(Dy::from_f64(re), Dy::from_f64(im))
    }

    pub fn from_real(r: &BallReal) -> BallComplex {
        BallComplex {
            re: r.mid.clone(),
            im: Dy::zero(),
            rad: r.rad,
        }
    }

    pub fn real_part(&self) -> BallReal {
        BallReal {
            mid: self.re.clone(),
            rad: self.rad,
        }
    }

    pub fn imag_part(&self) -> BallReal {
        BallReal {
            mid: self.im.clone(),
            rad: self.rad,
        }
    }

    pub fn conj(&self) -> BallComplex {
        BallComplex {
            re: self.re.clone(),
            im: self.im.neg(),
            rad: self.rad,
        }
    }

    pub fn neg(&self) -> BallComplex {
        BallComplex {
            re: self.re.neg(),
            im: self.im.neg(),
            rad: self.rad,
        }
    }

    pub fn mul_i(&self) -> BallComplex {
        BallComplex {
            re: self.im.neg(),
            im: self.re.clone(),
            rad: self.rad,
        }
    }

    pub fn add(&self, other: &BallComplex, prec: u32) -> BallComplex {
        let (re, e1) = self.re.add_round(&other.re, prec);
        let (im, e2) = self.im.add_round(&other.im, prec);
        BallComplex {
            re,
            im,
            rad: self.rad.add(other.rad).add(e1.max(e2)),
        }
    }

    pub fn sub(&self, other: &BallComplex, prec: u32) -> BallComplex {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &BallComplex, prec: u32) -> BallComplex {
        // exact complex product of midpoints, single rounding per component
        let rr = self.re.mul_exact(&other.re);
        let ii = self.im.mul_exact(&other.im);
        let ri = self.re.mul_exact(&other.im);
        let ir = self.im.mul_exact(&other.re);
        let (re, e1) = rr.sub_exact(&ii).round(prec);
        let (im, e2) = ri.add_exact(&ir).round(prec);
        let a1 = self.abs_upper();
        let a2 = other.abs_upper();
        let rad = self
            .rad
            .mul(a2)
            .add(other.rad.mul(a1))
            .add(self.rad.mul(other.rad))
            .add(e1.max(e2));
        BallComplex { re, im, rad }
    }

    pub fn mul_real(&self, other: &BallReal, prec: u32) -> BallComplex {
        let (re, e1) = self.re.mul_round(&other.mid, prec);
        let (im, e2) = self.im.mul_round(&other.mid, prec);
        let rad = self
            .rad
            .mul(other.abs_upper())
            .add(other.rad.mul(self.center_abs_upper()))
            .add(e1.max(e2));
        BallComplex { re, im, rad }
    }

    pub fn mul_2exp(&self, e: i64) -> BallComplex {
        BallComplex {
            re: self.re.mul_2exp(e),
            im: self.im.mul_2exp(e),
            rad: self.rad.mul_2exp(e),
        }
    }

    pub fn mul_i64(&self, k: i64, prec: u32) -> BallComplex {
        self.mul_real(&BallReal::from_i64(k), prec)
    }

    /// Upper bound for |center|.
    pub fn center_abs_upper(&self) -> Mag {
        let rr = self.re.abs_mag_upper();
        let ii = self.im.abs_mag_upper();
        mag_sqrt_upper(rr.mul(rr).add(ii.mul(ii)))
    }

    fn center_abs_lower(&self) -> Mag {
        let rr = self.re.abs_mag_lower();
        let ii = self.im.abs_mag_lower();
        mag_sqrt_lower(rr.mul_lower_crude(rr).add_lower(ii.mul_lower_crude(ii)))
    }

    /// Upper bound for |value| over the disk.
    pub fn abs_upper(&self) -> Mag {
        self.center_abs_upper().add(self.rad)
    }

    /// Lower bound for |value| over the disk (0 if disk may contain 0).
    pub fn abs_lower(&self) -> Mag {
        mag_sub_lower(self.center_abs_lower(), self.rad)
    }

    pub fn contains_zero(&self) -> bool {
        self.abs_lower().is_zero()
    }

    pub fn contains(&self, other: &BallComplex) -> bool {
        let dre = self.re.sub_exact(&other.re);
        let dim = self.im.sub_exact(&other.im);
        let d = BallComplex::exact(dre, dim).center_abs_upper();
        d.add(other.rad).cmp_mag(&self.rad) != Ordering::Greater
    }

    pub fn inv(&self, prec: u32) -> Option<BallComplex> {
        let lo = self.abs_lower();
        if lo.is_zero() {
            return None;
        }
        // 1/z = conj(z)/|z|^2 on midpoints
        let n2 = self
            .re
            .mul_exact(&self.re)
            .add_exact(&self.im.mul_exact(&self.im));
        let (qre, e1) = self.re.div_round(&n2, prec);
        let (qim, e2) = self.im.neg().div_round(&n2, prec);
        let mlo = self.center_abs_lower();
        let prop = self.rad.div_up(denom_floor(mlo.mul_lower_crude(lo)));
        Some(BallComplex {
            re: qre,
            im: qim,
            rad: e1.max(e2).mul_2exp(1).add(prop),
        })
    }

    pub fn div(&self, other: &BallComplex, prec: u32) -> Option<BallComplex> {
        Some(self.mul(&other.inv(prec)?, prec))
    }

    /// |z| as a real ball.
    pub fn abs_ball(&self, prec: u32) -> BallReal {
        let re = self.real_part();
        let im = self.imag_part();
        let s = re.mul(&re, prec).add(&im.mul(&im, prec), prec);
        s.sqrt(prec).unwrap_or_else(|| BallReal {
            mid: Dy::zero(),
            rad: self.abs_upper(),
        })
    }

    pub fn to_f64s(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Round midpoint to prec bits, folding error into the radius.
    pub fn round_mid(&self, prec: u32) -> BallComplex {
        let (re, e1) = self.re.round(prec);
        let (im, e2) = self.im.round(prec);
        BallComplex {
            re,
            im,
            rad: self.rad.add(e1.max(e2).mul_2exp(1)),
        }
    }

    pub fn inflate(&self, extra: Mag) -> BallComplex {
        BallComplex {
            re: self.re.clone(),
            im: self.im.clone(),
            rad: self.rad.add(extra),
        }
    }
}

impl Mag {
    /// Product rounded DOWN (for lower-bound computations).
    pub fn mul_lower_crude(self, other: Mag) -> Mag {
        if self.man == 0 || other.man == 0 {
            return Mag::ZERO;
        }
        let mut p = u128::from(self.man) * u128::from(other.man);
        let mut exp = self.exp + other.exp;
        while p >= (1 << 32) {
            p >>= 1;
            exp += 1;
        }
        Mag { man: p as u64, exp }
    }

    /// Sum rounded DOWN (for lower-bound computations).
    pub fn add_lower(self, other: Mag) -> Mag {
        if self.man == 0 {
            return other;
        }
        if other.man == 0 {
            return self;
        }
        let (hi, lo) = if self.log2_upper() >= other.log2_upper() {
            (self, other)
        } else {
            (other, self)
        };
        let diff = hi.exp - lo.exp;
        if !(0..64).contains(&diff) {
            // either lo negligible or exotic alignment; hi alone is a valid lower bound
            return hi;
        }
        let mut s = u128::from(hi.man) + (u128::from(lo.man) >> diff);
        let mut exp = hi.exp;
        while s >= (1 << 32) {
            s >>= 1;
            exp += 1;
        }
        Mag { man: s as u64, exp }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(x: f64) -> BallReal {
        BallReal::from_f64(x)
    }

    #[test]
    fn dyadic_round_trip() {
        let x = Dy::from_f64(3.75);
        assert_eq!(x.to_f64(), 3.75);
        let y = Dy::from_f64(-0.1);
        assert!((y.to_f64() + 0.1).abs() < 1e-16);
    }

    #[test]
    fn add_and_mul_contain_exact() {
        let a = br(1.25);
        let b = br(-2.5);
        let s = a.add(&b, 64);
        assert!(s.contains_dy(&Dy::from_f64(-1.25)));
        let p = a.mul(&b, 64);
        assert!(p.contains_dy(&Dy::from_f64(-3.125)));
    }

    #[test]
    fn rounding_error_tracked() {
        // 1/3 at 32 bits must contain the true value
        let third = BallReal::from_rational(
            &num_bigint::BigInt::from(1),
            &num_bigint::BigInt::from(3),
            32,
        );
        let approx = Dy::from_f64(1.0 / 3.0);
        // true 1/3 differs from f64 approx by < 1e-16; ball radius ~2^-33
        assert!(third.rad.to_f64() < 1e-9);
        assert!(third.rad.to_f64() > 0.0);
        let d = third.mid.sub_exact(&approx).abs_mag_upper();
        assert!(d.to_f64() < 1e-9);
    }

    #[test]
    fn inv_contains() {
        let a = br(3.0);
        let inv = a.inv(64).unwrap();
        let third = BallReal::from_rational(
            &num_bigint::BigInt::from(1),
            &num_bigint::BigInt::from(3),
            128,
        );
        assert!(inv.contains_dy(&third.mid));
    }

    #[test]
    fn complex_mul_contains() {
        let a = BallComplex::from_f64(1.5, -2.0);
        let b = BallComplex::from_f64(0.25, 3.0);
        let p = a.mul(&b, 64);
        // (1.5 - 2i)(0.25 + 3i) = 0.375 + 6 + i(4.5 - 0.5) = 6.375 + 4i
        assert!((p.re.to_f64() - 6.375).abs() < 1e-12);
        assert!((p.im.to_f64() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn complex_inv_round_trip() {
        let a = BallComplex::from_f64(1.5, -2.0);
        let inv = a.inv(96).unwrap();
        let prod = a.mul(&inv, 96);
        assert!(prod.sub(&BallComplex::one(), 96).abs_upper().to_f64() < 1e-20);
    }

    #[test]
    fn sqrt_contains() {
        let a = br(2.0);
        let s = a.sqrt(96).unwrap();
        let s2 = s.mul(&s, 96);
        assert!(s2.contains_dy(&Dy::from_i64(2)));
    }

    #[test]
    fn mag_ordering() {
        let a = Mag { man: 3, exp: 0 };
        let b = Mag { man: 1, exp: 2 };
        assert_eq!(a.cmp_mag(&b), Ordering::Less);
        let c = a.add(b);
        assert!(c.to_f64() >= 7.0);
    }

    #[test]
    fn ball_subtraction_cancellation() {
        let a = br(1.0);
        let tiny = BallReal {
            mid: Dy::from_f64(1.0),
            rad: Mag::two_pow(-100),
        };
        let d = a.sub(&tiny, 128);
        assert!(d.contains_zero());
        assert!(d.abs_upper().to_f64() <= 2.0 * 2f64.powi(-100));
    }
}
