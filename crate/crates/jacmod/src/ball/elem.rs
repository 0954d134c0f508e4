//! Elementary functions over balls.
//!
//! Each function reduces its argument with exact ball arithmetic, runs a
//! truncated Taylor kernel whose tail is bounded explicitly, and lets the
//! ball operations carry all rounding. Constants are cached per precision
//! bucket.

use super::{BallComplex, BallReal, Dy, Mag};
use std::collections::HashMap;
use std::sync::Mutex;

static CONSTS: Mutex<Option<HashMap<(&'static str, u32), BallReal>>> = Mutex::new(None);

fn bucket(prec: u32) -> u32 {
    prec.next_multiple_of(64).max(64)
}

fn cached(name: &'static str, prec: u32, compute: impl Fn(u32) -> BallReal) -> BallReal {
    let b = bucket(prec);
    let mut guard = CONSTS.lock().unwrap();
    let map = guard.get_or_insert_with(HashMap::new);
    if let Some(v) = map.get(&(name, b)) {
        return v.clone();
    }
    let v = compute(b + 32);
    map.insert((name, b), v.clone());
    v
}

/// atan Taylor for |t| <= 0.25; alternating series, tail <= first omitted term.
fn atan_taylor(t: &BallReal, prec: u32) -> BallReal {
    let t2 = t.mul(t, prec);
    let mut term = t.clone(); // t^(2k+1)
    let mut sum = BallReal::zero();
    let mut k: i64 = 0;
    loop {
        let contrib = term.div(&BallReal::from_i64(2 * k + 1), prec).unwrap();
        sum = if k % 2 == 0 {
            sum.add(&contrib, prec)
        } else {
            sum.sub(&contrib, prec)
        };
        term = term.mul(&t2, prec);
        let next = term.abs_upper();
        if next.log2_upper() < -(i64::from(prec) + 4) {
            sum.rad = sum.rad.add(next);
            return sum;
        }
        k += 1;
        assert!(k < 10_000_000, "atan_taylor: argument not small enough");
    }
}

/// atanh Taylor for |t| <= 0.4; tail bounded by geometric series.
fn atanh_taylor(t: &BallReal, prec: u32) -> BallReal {
    let t2 = t.mul(t, prec);
    let ratio = t2.abs_upper();
    assert!(ratio.to_f64() < 0.2, "atanh_taylor: argument too large");
    let mut term = t.clone();
    let mut sum = BallReal::zero();
    let mut k: i64 = 0;
    loop {
        let contrib = term.div(&BallReal::from_i64(2 * k + 1), prec).unwrap();
        sum = sum.add(&contrib, prec);
        term = term.mul(&t2, prec);
        let next = term.abs_upper();
        if next.log2_upper() < -(i64::from(prec) + 4) {
            // tail <= next/(1-ratio) <= 2*next since ratio < 1/2
            sum.rad = sum.rad.add(next.mul_2exp(1));
            return sum;
        }
        k += 1;
        assert!(k < 10_000_000, "atanh_taylor: diverging");
    }
}

pub fn ln2(prec: u32) -> BallReal {
    cached("ln2", prec, |wp| {
        let third = BallReal::from_rational(
            &num_bigint::BigInt::from(1),
            &num_bigint::BigInt::from(3),
            wp,
        );
        atanh_taylor(&third, wp).mul_2exp(1)
    })
}

pub fn pi(prec: u32) -> BallReal {
    cached("pi", prec, |wp| {
        let fifth = BallReal::from_rational(
            &num_bigint::BigInt::from(1),
            &num_bigint::BigInt::from(5),
            wp,
        );
        let f239 = BallReal::from_rational(
            &num_bigint::BigInt::from(1),
            &num_bigint::BigInt::from(239),
            wp,
        );
        let a = atan_taylor(&fifth, wp).mul_i64(16, wp);
        let b = atan_taylor(&f239, wp).mul_i64(4, wp);
        a.sub(&b, wp)
    })
}

/// exp Taylor for |x| <= 0.1; tail bounded geometrically.
fn exp_taylor(x: &BallReal, prec: u32) -> BallReal {
    let mut term = BallReal::from_i64(1);
    let mut sum = BallReal::from_i64(1);
    let mut k: i64 = 1;
    loop {
        term = term.mul(x, prec).div(&BallReal::from_i64(k), prec).unwrap();
        sum = sum.add(&term, prec);
        let next = term.abs_upper();
        if next.log2_upper() < -(i64::from(prec) + 4) {
            sum.rad = sum.rad.add(next.mul_2exp(1));
            return sum;
        }
        k += 1;
        assert!(k < 10_000_000, "exp_taylor: argument not reduced");
    }
}

pub fn exp_real(x: &BallReal, prec: u32) -> BallReal {
    let wp = prec + 48;
    let xf = x.mid.to_f64();
    assert!(
        xf.abs() < 1e15,
        "exp_real: argument magnitude out of supported range"
    );
    let l2 = ln2(wp);
    let k = (xf / std::f64::consts::LN_2).round() as i64;
    let r = x.sub(&l2.mul_i64(k, wp), wp);
    // now |r| <= ln2/2 + slop; halve 3 times
    let h = 3;
    let rh = r.mul_2exp(-h);
    let mut v = exp_taylor(&rh, wp);
    for _ in 0..h {
        v = v.mul(&v, wp);
    }
    let mut out = v.mul_2exp(k);
    let (mid, e) = out.mid.round(prec);
    out.rad = out.rad.add(e);
    out.mid = mid;
    out
}

/// Natural log; requires a ball certified positive.
pub fn ln_real(x: &BallReal, prec: u32) -> Option<BallReal> {
    if !x.is_positive() {
        return None;
    }
    let wp = prec + 48;
    // scale x by 2^-e so midpoint is in [0.75, 1.5]
    let e = x.mid.log2_approx();
    let m0 = x.mul_2exp(-e);
    let (m, e) = if m0.mid.to_f64() > 1.5 {
        (m0.mul_2exp(-1), e + 1)
    } else {
        (m0, e)
    };
    let num = m.sub(&BallReal::from_i64(1), wp);
    let den = m.add(&BallReal::from_i64(1), wp);
    let t = num.div(&den, wp)?;
    let lnm = atanh_taylor(&t, wp).mul_2exp(1);
    Some(lnm.add(&ln2(wp).mul_i64(e, wp), prec))
}

/// sin and cos by direct Taylor after range reduction to |x| <= ~pi.
pub fn sin_cos(x: &BallReal, prec: u32) -> (BallReal, BallReal) {
    let wp = prec + 48;
    let xf = x.mid.to_f64();
    assert!(xf.abs() < 1e12, "sin_cos: argument out of supported range");
    let two_pi = pi(wp).mul_2exp(1);
    let n = (xf / (2.0 * std::f64::consts::PI)).round() as i64;
    let r = if n != 0 {
        x.sub(&two_pi.mul_i64(n, wp), wp)
    } else {
        x.clone()
    };
    // |r| <= pi + slop <= 3.2; halve twice for faster convergence
    let h = 2;
    let rh = r.mul_2exp(-h);
    let (mut s, mut c) = sin_cos_taylor(&rh, wp);
    for _ in 0..h {
        // sin 2a = 2 s c ; cos 2a = 1 - 2 s^2
        let s2 = s.mul(&c, wp).mul_2exp(1);
        let c2 = BallReal::from_i64(1).sub(&s.mul(&s, wp).mul_2exp(1), wp);
        s = s2;
        c = c2;
    }
    (round_ball(s, prec), round_ball(c, prec))
}

fn round_ball(mut b: BallReal, prec: u32) -> BallReal {
    let (m, e) = b.mid.round(prec);
    b.mid = m;
    b.rad = b.rad.add(e);
    b
}

fn sin_cos_taylor(x: &BallReal, prec: u32) -> (BallReal, BallReal) {
    // |x| <= 0.9: alternating series for both
    let x2 = x.mul(x, prec);
    let mut s = x.clone();
    let mut c = BallReal::from_i64(1);
    let mut term_s = x.clone();
    let mut term_c = BallReal::from_i64(1);
    let mut k: i64 = 1;
    loop {
        // next cos term: (-1)^k x^(2k)/(2k)!
        term_c = term_c
            .mul(&x2, prec)
            .div(&BallReal::from_i64((2 * k - 1) * 2 * k), prec)
            .unwrap();
        // next sin term: (-1)^k x^(2k+1)/(2k+1)!
        term_s = term_s
            .mul(&x2, prec)
            .div(&BallReal::from_i64(2 * k * (2 * k + 1)), prec)
            .unwrap();
        if k % 2 == 1 {
            c = c.sub(&term_c, prec);
            s = s.sub(&term_s, prec);
        } else {
            c = c.add(&term_c, prec);
            s = s.add(&term_s, prec);
        }
        let w = term_c.abs_upper().max(term_s.abs_upper());
        if w.log2_upper() < -(i64::from(prec) + 4) {
            s.rad = s.rad.add(w);
            c.rad = c.rad.add(w);
            return (s, c);
        }
        k += 1;
        assert!(k < 10_000_000, "sin_cos_taylor: not reduced");
    }
}

/// atan for any real ball.
pub fn atan_real(x: &BallReal, prec: u32) -> BallReal {
    let wp = prec + 48;
    let xa = x.mid.to_f64().abs();
    if xa > 1.0 {
        // atan(x) = sign(x) pi/2 - atan(1/x)
        let inv = BallReal::from_i64(1).div(x, wp).unwrap();
        let half_pi = pi(wp).mul_2exp(-1);
        let base = if x.mid.neg { half_pi.neg() } else { half_pi };
        return round_ball(base.sub(&atan_small(&inv, wp), wp), prec);
    }
    round_ball(atan_small(x, wp), prec)
}

fn atan_small(x: &BallReal, prec: u32) -> BallReal {
    // |x| <= ~1.1; two halvings: atan(x) = 2 atan(x / (1 + sqrt(1+x^2)))
    let mut t = x.clone();
    for _ in 0..2 {
        let s = BallReal::from_i64(1)
            .add(&t.mul(&t, prec), prec)
            .sqrt(prec)
            .expect("1+t^2 positive");
        t = t
            .div(&BallReal::from_i64(1).add(&s, prec), prec)
            .expect("denominator >= 1");
    }
    atan_taylor(&t, prec).mul_2exp(2)
}

/// Principal argument of a complex ball certified away from 0.
///
/// Returns None when the ball straddles the branch cut (negative real axis)
/// or contains the origin.
pub fn arg_principal(z: &BallComplex, prec: u32) -> Option<BallReal> {
    if z.contains_zero() {
        return None;
    }
    let wp = prec + 48;
    let re = z.real_part();
    let im = z.imag_part();
    let r = z.abs_ball(wp);
    if !re.is_negative() {
        // arg = 2 atan(im / (r + re)); r + re > 0 certified since re >= -|z| strictly
        let den = r.add(&re, wp);
        if !den.is_positive() {
            // very close to the negative axis; fall through to half-plane form
            return arg_left_half(z, &r, prec);
        }
        let t = im.div(&den, wp)?;
        return Some(round_ball(atan_real(&t, wp).mul_2exp(1), prec));
    }
    arg_left_half(z, &r, prec)
}

fn arg_left_half(z: &BallComplex, r: &BallReal, prec: u32) -> Option<BallReal> {
    let wp = prec + 48;
    let im = z.imag_part();
    let re = z.real_part();
    // tan((pi - theta)/2) = im/(r - re), valid for im > 0; mirror for im < 0.
    // A definite sign of im keeps us off the branch cut.
    if im.is_positive() {
        let den = r.sub(&re, wp);
        let q = im.div(&den, wp)?;
        Some(round_ball(
            pi(wp).sub(&atan_real(&q, wp).mul_2exp(1), wp),
            prec,
        ))
    } else if im.is_negative() {
        let den = r.sub(&re, wp);
        let q = im.neg().div(&den, wp)?;
        Some(round_ball(
            pi(wp).neg().add(&atan_real(&q, wp).mul_2exp(1), wp),
            prec,
        ))
    } else {
        None
    }
}

/// Complex exponential.
pub fn exp_complex(z: &BallComplex, prec: u32) -> BallComplex {
    let wp = prec + 16;
    let ex = exp_real(&z.real_part(), wp);
    let (s, c) = sin_cos(&z.imag_part(), wp);
    let re = ex.mul(&c, wp);
    let im = ex.mul(&s, wp);
    pack_complex(re, im, prec)
}

/// Principal complex log (arg in (-pi, pi]); None on branch-cut straddle.
pub fn log_complex(z: &BallComplex, prec: u32) -> Option<BallComplex> {
    let wp = prec + 32;
    let r = z.abs_ball(wp);
    let lr = ln_real(&r, wp)?;
    let th = arg_principal(z, wp)?;
    Some(pack_complex(lr, th, prec))
}

/// A complex log valid up to adding a multiple of 2*pi*i: if the principal
/// branch is blocked by the cut, rotate by pi and compensate.
pub fn log_complex_any_branch(z: &BallComplex, prec: u32) -> Option<BallComplex> {
    if let Some(l) = log_complex(z, prec) {
        return Some(l);
    }
    let wp = prec + 32;
    let l = log_complex(&z.neg(), wp)?;
    let p = pi(wp);
    Some(l.add(
        &BallComplex::from_real(&p).mul_i(),
        prec,
    ))
}

pub fn pack_complex(re: BallReal, im: BallReal, prec: u32) -> BallComplex {
    let (r, e1) = re.mid.round(prec);
    let (i, e2) = im.mid.round(prec);
    // disk radius containing the box: sqrt(r1^2+r2^2) <= r1+r2
    BallComplex {
        re: r,
        im: i,
        rad: re.rad.add(im.rad).add(e1.max(e2)),
    }
}

/// Integer power by binary powering.
pub fn pow_ui_complex(z: &BallComplex, mut n: u64, prec: u32) -> BallComplex {
    let mut base = z.clone();
    let mut acc = BallComplex::one();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base, prec);
        }
        n >>= 1;
        if n > 0 {
            base = base.mul(&base, prec);
        }
    }
    acc
}

pub fn pow_ui_real(x: &BallReal, mut n: u64, prec: u32) -> BallReal {
    let mut base = x.clone();
    let mut acc = BallReal::from_i64(1);
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base, prec);
        }
        n >>= 1;
        if n > 0 {
            base = base.mul(&base, prec);
        }
    }
    acc
}

/// exp(x) upper bound as Mag for a real ball (used in tail bounds).
pub fn exp_upper(x: &BallReal, prec: u32) -> Mag {
    let up = exp_real(x, prec);
    up.abs_upper()
}

/// Parse decimal scientific string into a ball at given precision.
pub fn ball_real_from_decimal(s: &str, prec: u32) -> Result<BallReal, String> {
    let s = s.trim();
    let (mant_str, exp10) = match s.find(['e', 'E']) {
        Some(i) => {
            let e: i64 = s[i + 1..].parse().map_err(|_| format!("bad exponent in {s}"))?;
            (&s[..i], e)
        }
        None => (s, 0),
    };
    let neg = mant_str.starts_with('-');
    let digits = mant_str.trim_start_matches(['-', '+']);
    let (int_part, frac_part) = match digits.find('.') {
        Some(i) => (&digits[..i], &digits[i + 1..]),
        None => (digits, ""),
    };
    let all: String = format!("{int_part}{frac_part}");
    if all.is_empty() || !all.bytes().all(|b| b.is_ascii_digit()) {
        return Err(format!("bad decimal {s}"));
    }
    let n = num_bigint::BigInt::parse_bytes(all.as_bytes(), 10).ok_or("parse fail")?;
    let e10 = exp10 - frac_part.len() as i64;
    let num = if neg { -n } else { n };
    let wp = prec + 16;
    // value = num * 10^e10
    let ten = num_bigint::BigInt::from(10);
    let mut val = BallReal::exact(Dy::from_bigint(&num));
    if e10 > 0 {
        let p = ten.pow(e10 as u32);
        val = val.mul(&BallReal::exact(Dy::from_bigint(&p)), wp);
    } else if e10 < 0 {
        let p = ten.pow((-e10) as u32);
        val = val
            .div(&BallReal::exact(Dy::from_bigint(&p)), wp)
            .expect("power of ten nonzero");
    }
    Ok(round_ball(val, prec))
}

/// Render the midpoint of a ball as decimal-scientific with `digits` digits.
pub fn dy_to_decimal(x: &Dy, digits: u32) -> String {
    if x.is_zero() {
        return "0".into();
    }
    // q = round(|value| * 10^k), k chosen so q has about `digits` digits
    let point = ((x.log2_approx() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let k = i64::from(digits) - 1 - point;
    let ten = num_bigint::BigInt::from(10);
    let two = num_bigint::BigInt::from(2);
    let mut num = num_bigint::BigInt::from_biguint(num_bigint::Sign::Plus, x.mag.clone());
    if k > 0 {
        num *= ten.pow(k as u32);
    }
    if x.exp > 0 {
        num *= two.pow(x.exp as u32);
    }
    let mut den = num_bigint::BigInt::from(1);
    if k < 0 {
        den *= ten.pow((-k) as u32);
    }
    if x.exp < 0 {
        den *= two.pow((-x.exp) as u32);
    }
    let q = (&num + &den / num_bigint::BigInt::from(2)) / &den;
    let qs = q.to_string();
    let sign = if x.neg { "-" } else { "" };
    // |value| ~= qs * 10^-k : exponent of the leading digit is len(qs)-1-k
    let e = qs.len() as i64 - 1 - k;
    if qs.len() == 1 {
        format!("{sign}{qs}e{e}")
    } else {
        format!("{sign}{}.{}e{}", &qs[..1], &qs[1..], e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_value() {
        let p = pi(128);
        assert!((p.to_f64() - std::f64::consts::PI).abs() < 1e-15);
        assert!(p.rad.log2_upper() < -120);
    }

    #[test]
    fn ln2_value() {
        let l = ln2(128);
        assert!((l.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
        assert!(l.rad.log2_upper() < -120);
    }

    #[test]
    fn exp_matches_f64() {
        for &x in &[0.0, 1.0, -1.0, 3.25, -7.5, 0.001, 20.0, -35.0] {
            let b = exp_real(&BallReal::from_f64(x), 96);
            let rel = (b.to_f64() - x.exp()).abs() / x.exp();
            assert!(rel < 1e-13, "exp({x}) = {} vs {}", b.to_f64(), x.exp());
            assert!(b.rad.log2_upper() < b.mid.log2_approx() - 80);
        }
    }

    #[test]
    fn ln_matches_f64() {
        for &x in &[1.0, 2.0, 0.5, 3.14159, 1e-6, 123456.0] {
            let b = ln_real(&BallReal::from_f64(x), 96).unwrap();
            assert!((b.to_f64() - x.ln()).abs() < 1e-12 * (1.0 + x.ln().abs()));
        }
    }

    #[test]
    fn exp_ln_round_trip() {
        let x = BallReal::from_f64(0.7352);
        let e = exp_real(&x, 128);
        let l = ln_real(&e, 128).unwrap();
        assert!((l.to_f64() - 0.7352).abs() < 1e-25);
    }

    #[test]
    fn sincos_matches_f64() {
        for &x in &[0.0, 0.5, -1.2, 3.0, -3.1, 6.8, 100.0] {
            let (s, c) = sin_cos(&BallReal::from_f64(x), 96);
            assert!((s.to_f64() - x.sin()).abs() < 1e-12, "sin({x})");
            assert!((c.to_f64() - x.cos()).abs() < 1e-12, "cos({x})");
        }
    }

    #[test]
    fn atan_matches_f64() {
        for &x in &[0.0, 0.3, -0.9, 2.5, -10.0] {
            let a = atan_real(&BallReal::from_f64(x), 96);
            assert!((a.to_f64() - x.atan()).abs() < 1e-12, "atan({x})");
        }
    }

    #[test]
    fn complex_exp_log_round_trip() {
        let z = BallComplex::from_f64(0.3, -1.2);
        let e = exp_complex(&z, 128);
        let l = log_complex(&e, 128).unwrap();
        let d = l.sub(&z, 128);
        assert!(d.abs_upper().to_f64() < 1e-25);
    }

    #[test]
    fn arg_quadrants() {
        let cases = [
            (1.0, 1.0, std::f64::consts::FRAC_PI_4),
            (-1.0, 1.0, 3.0 * std::f64::consts::FRAC_PI_4),
            (-1.0, -1.0, -3.0 * std::f64::consts::FRAC_PI_4),
            (1.0, -1.0, -std::f64::consts::FRAC_PI_4),
        ];
        for (x, y, want) in cases {
            let a = arg_principal(&BallComplex::from_f64(x, y), 96).unwrap();
            assert!((a.to_f64() - want).abs() < 1e-12, "arg({x},{y})");
        }
    }

    #[test]
    fn decimal_round_trip() {
        let b = ball_real_from_decimal("3.14159265358979e0", 128).unwrap();
        assert!((b.to_f64() - 3.14159265358979).abs() < 1e-14);
        let s = dy_to_decimal(&b.mid, 15);
        let b2 = ball_real_from_decimal(&s, 128).unwrap();
        assert!((b2.to_f64() - 3.14159265358979).abs() < 1e-13);
    }
}
