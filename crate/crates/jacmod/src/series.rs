//! Truncated power series with coefficient-growth certificates.
//!
//! A `BoundedSeries` stores finitely many coefficient balls together with a
//! `Grandeur` certificate `(A, n)` asserting `|f_k| <= A * prod (k_m+1)^n_m`
//! for every multi-index, stored or not. The certificate is what makes
//! truncation sound: tails are bounded from `(A, n)` alone.

use crate::ball::{BallComplex, BallReal, Mag};
use crate::error::{Error, Result};
use std::collections::BTreeMap;

/// Coefficient-growth certificate: `|f_k| <= A * prod_m (k_m + 1)^{n_m}`.
#[derive(Clone, Debug)]
pub struct Grandeur {
    /// Upper bound A >= 1.
    pub a: Mag,
    /// Per-variable exponents, each >= 1.
    pub n: Vec<u32>,
}

impl Grandeur {
    pub fn new(a: Mag, n: Vec<u32>) -> Grandeur {
        assert!(n.iter().all(|&x| x >= 1), "Grandeur exponents must be >= 1");
        let one = Mag { man: 1, exp: 0 };
        let a = a.max(one);
        Grandeur { a, n }
    }

    pub fn nvars(&self) -> usize {
        self.n.len()
    }

    pub fn n_inf(&self) -> u32 {
        *self.n.iter().max().unwrap()
    }

    pub fn n_l1(&self) -> u64 {
        self.n.iter().map(|&x| u64::from(x)).sum()
    }

    /// Bound on |f_k| for one multi-index.
    pub fn coeff_bound(&self, k: &[u32]) -> Mag {
        let mut b = self.a;
        for (m, &km) in k.iter().enumerate() {
            b = b.mul(mag_pow_u64(
                Mag {
                    man: u64::from(km) + 1,
                    exp: 0,
                },
                u64::from(self.n[m]),
            ));
        }
        b
    }
}

pub fn mag_pow_u64(base: Mag, mut e: u64) -> Mag {
    let mut acc = Mag { man: 1, exp: 0 };
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(b);
        }
        e >>= 1;
        if e > 0 {
            b = b.mul(b);
        }
    }
    acc
}

pub fn mag_factorial(n: u64) -> Mag {
    let mut acc = Mag { man: 1, exp: 0 };
    for k in 2..=n {
        acc = acc.mul(Mag { man: k, exp: 0 });
    }
    acc
}

#[derive(Clone, Debug)]
enum Repr {
    Uni(Vec<BallComplex>),
    Multi(BTreeMap<Vec<u32>, BallComplex>),
}

/// Power series truncated at total degree `trunc`, with growth certificate.
#[derive(Clone, Debug)]
pub struct BoundedSeries {
    nvars: usize,
    /// Coefficients are stored for |k|_1 < trunc.
    pub trunc: u32,
    repr: Repr,
    pub grandeur: Grandeur,
}

impl BoundedSeries {
    /// One-variable series from dense coefficients.
    pub fn from_coeffs(coeffs: Vec<BallComplex>, grandeur: Grandeur) -> BoundedSeries {
        assert_eq!(grandeur.nvars(), 1);
        let trunc = coeffs.len() as u32;
        let mut s = BoundedSeries {
            nvars: 1,
            trunc,
            repr: Repr::Uni(coeffs),
            grandeur,
        };
        s.absorb_ball_slop();
        s
    }

    pub fn from_map(
        nvars: usize,
        trunc: u32,
        coeffs: BTreeMap<Vec<u32>, BallComplex>,
        grandeur: Grandeur,
    ) -> BoundedSeries {
        assert_eq!(grandeur.nvars(), nvars);
        if nvars == 1 {
            let mut v = vec![BallComplex::zero(); trunc as usize];
            for (k, c) in coeffs {
                let i = k[0] as usize;
                if i < v.len() {
                    v[i] = c;
                }
            }
            return BoundedSeries::from_coeffs(v, grandeur);
        }
        let mut s = BoundedSeries {
            nvars,
            trunc,
            repr: Repr::Multi(coeffs),
            grandeur,
        };
        s.absorb_ball_slop();
        s
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Stored coefficient (zero ball when absent / beyond truncation).
    pub fn coeff(&self, k: &[u32]) -> BallComplex {
        match &self.repr {
            Repr::Uni(v) => {
                let i = k[0] as usize;
                v.get(i).cloned().unwrap_or_else(BallComplex::zero)
            }
            Repr::Multi(m) => m.get(k).cloned().unwrap_or_else(BallComplex::zero),
        }
    }

    pub fn coeffs_uni(&self) -> &[BallComplex] {
        match &self.repr {
            Repr::Uni(v) => v,
            Repr::Multi(_) => panic!("coeffs_uni on multivariate series"),
        }
    }

    pub fn iter_coeffs(&self) -> Box<dyn Iterator<Item = (Vec<u32>, &BallComplex)> + '_> {
        match &self.repr {
            Repr::Uni(v) => Box::new(
                v.iter()
                    .enumerate()
                    .map(|(i, c)| (vec![i as u32], c)),
            ),
            Repr::Multi(m) => Box::new(m.iter().map(|(k, c)| (k.clone(), c))),
        }
    }

    /// The stored coefficient balls must respect the certificate; rounding in
    /// ball arithmetic can push |mid|+rad a hair over the exact bound, so the
    /// certificate absorbs the slop (sound: A only grows).
    fn absorb_ball_slop(&mut self) {
        let mut worst: Option<Mag> = None;
        let entries: Vec<(Vec<u32>, Mag)> = self
            .iter_coeffs()
            .map(|(k, c)| (k, c.abs_upper()))
            .collect();
        for (k, up) in entries {
            let bound = self.grandeur.coeff_bound(&k);
            if up.cmp_mag(&bound) == std::cmp::Ordering::Greater {
                // ratio up/bound, rounded up
                let ratio = up.div_up(bound);
                worst = Some(match worst {
                    None => ratio,
                    Some(w) => w.max(ratio),
                });
            }
        }
        if let Some(w) = worst {
            self.grandeur.a = self.grandeur.a.mul(w);
        }
    }

    /// Check the certificate on stored coefficients (diagnostic).
    pub fn grandeur_holds(&self) -> bool {
        self.iter_coeffs().all(|(k, c)| {
            c.abs_upper().cmp_mag(&self.grandeur.coeff_bound(&k)) != std::cmp::Ordering::Greater
        })
    }

    /// Product; result truncation is the min of the operands'.
    pub fn mul(&self, other: &BoundedSeries, prec: u32) -> BoundedSeries {
        assert_eq!(self.nvars, other.nvars, "series_mul: nvars mismatch");
        let trunc = self.trunc.min(other.trunc);
        let g = Grandeur::new(
            self.grandeur.a.mul(other.grandeur.a),
            self.grandeur
                .n
                .iter()
                .zip(&other.grandeur.n)
                .map(|(&a, &b)| a + b + 1)
                .collect(),
        );
        match (&self.repr, &other.repr) {
            (Repr::Uni(a), Repr::Uni(b)) => {
                let n = trunc as usize;
                let mut out = vec![BallComplex::zero(); n];
                for (i, ai) in a.iter().enumerate().take(n) {
                    if ai.re.is_zero() && ai.im.is_zero() && ai.rad.is_zero() {
                        continue;
                    }
                    for (j, bj) in b.iter().enumerate().take(n - i) {
                        out[i + j] = out[i + j].add(&ai.mul(bj, prec), prec);
                    }
                }
                BoundedSeries::from_coeffs(out, g)
            }
            _ => {
                let mut map: BTreeMap<Vec<u32>, BallComplex> = BTreeMap::new();
                for (ka, ca) in self.iter_coeffs() {
                    for (kb, cb) in other.iter_coeffs() {
                        let k: Vec<u32> = ka.iter().zip(&kb).map(|(&x, &y)| x + y).collect();
                        let deg: u64 = k.iter().map(|&x| u64::from(x)).sum();
                        if deg >= u64::from(trunc) {
                            continue;
                        }
                        let term = ca.mul(cb, prec);
                        map.entry(k)
                            .and_modify(|e| *e = e.add(&term, prec))
                            .or_insert(term);
                    }
                }
                BoundedSeries::from_map(self.nvars, trunc, map, g)
            }
        }
    }

    /// d-th derivative of a one-variable series.
    pub fn derivative(&self, d: u32, prec: u32) -> BoundedSeries {
        assert_eq!(self.nvars, 1, "derivative: one-variable only");
        assert!(d >= 1);
        let m = self.grandeur.n[0];
        let coeffs = self.coeffs_uni();
        let new_len = coeffs.len().saturating_sub(d as usize);
        let mut out = Vec::with_capacity(new_len);
        for k in 0..new_len {
            // (k+d)! / k! = (k+1)(k+2)...(k+d)
            let mut fac = num_bigint::BigInt::from(1);
            for j in 1..=d as u64 {
                fac *= num_bigint::BigInt::from(k as u64 + j);
            }
            let f = crate::ball::Dy::from_bigint(&fac);
            out.push(coeffs[k + d as usize].mul(&BallComplex::exact(f, crate::ball::Dy::zero()), prec));
        }
        // (A 2^{dm + d(d-1)/2}, m+d)
        let e = u64::from(d) * u64::from(m) + u64::from(d) * (u64::from(d) - 1) / 2;
        let g = Grandeur::new(self.grandeur.a.mul_2exp(e as i64), vec![m + d]);
        BoundedSeries::from_coeffs(out, g)
    }

    /// Uniform bound for the order-u tail on the closed polydisk of radius R.
    ///
    /// `B (u+1)^{(n+1)g} R^u` with `n = |n|_inf`, `B = n! 2 A g / (1-R)^{g+|n|_1}`.
    pub fn tail_bound(&self, u: u32, r_upper: Mag) -> Result<Mag> {
        if r_upper.cmp_mag(&Mag { man: 1, exp: 0 }) != std::cmp::Ordering::Less {
            return Err(Error::Domain("tail_bound requires R < 1".into()));
        }
        let g = self.nvars as u64;
        let n_inf = u64::from(self.grandeur.n_inf());
        let n_l1 = self.grandeur.n_l1();
        // n! means the multi-index factorial prod n_m!
        let mut nfact = Mag { man: 1, exp: 0 };
        for &nm in &self.grandeur.n {
            nfact = nfact.mul(mag_factorial(u64::from(nm)));
        }
        let one_minus_r = crate::ball::mag_sub_lower(Mag { man: 1, exp: 0 }, r_upper);
        if one_minus_r.is_zero() {
            return Err(Error::Domain("tail_bound: R too close to 1".into()));
        }
        let denom = mag_pow_lower(one_minus_r, g + n_l1);
        let b = nfact
            .mul(Mag { man: 2, exp: 0 })
            .mul(self.grandeur.a)
            .mul(Mag { man: g, exp: 0 })
            .div_up(denom);
        let poly = mag_pow_u64(
            Mag {
                man: u64::from(u) + 1,
                exp: 0,
            },
            (n_inf + 1) * g,
        );
        Ok(b.mul(poly).mul(mag_pow_u64(r_upper, u64::from(u))))
    }

    /// Smallest truncation order that certifies a tail below `kappa` on
    /// radius R, following the second clause of the remainder lemma, then
    /// verified a posteriori.
    pub fn order_for_tail(&self, r_upper: Mag, kappa: Mag) -> Result<u32> {
        let rf = r_upper.to_f64();
        if !(0.0..1.0).contains(&rf) {
            return Err(Error::Domain("order_for_tail: R must be in (0,1)".into()));
        }
        let g = self.nvars as f64;
        let n = f64::from(self.grandeur.n_inf());
        let logr = rf.ln();
        let b = self.tail_bound(0, r_upper)?; // B * 1 * 1 >= B
        let logb = b.log2_upper() as f64 * std::f64::consts::LN_2;
        let logk = kappa.log2_upper() as f64 * std::f64::consts::LN_2;
        let u1 = 16.0 * (n * g) * (n * g) / (logr * logr);
        let u2 = 2.0 * (logk - logb) / logr;
        let mut u = (u1.max(u2).max(1.0) * 1.05) as u32 + 4;
        loop {
            if self.tail_bound(u, r_upper)?.cmp_mag(&kappa) != std::cmp::Ordering::Greater {
                return Ok(u);
            }
            u = u.saturating_mul(2);
            if u > 1 << 26 {
                return Err(Error::Truncation(
                    "order_for_tail: no feasible truncation".into(),
                ));
            }
        }
    }

    /// Evaluate with a certified tail: requires |z|+rad <= R < 1 per variable.
    pub fn eval_with_bound(&self, z: &[BallComplex], r_upper: Mag, prec: u32) -> Result<BallComplex> {
        assert_eq!(z.len(), self.nvars);
        for zi in z {
            if zi.abs_upper().cmp_mag(&r_upper) == std::cmp::Ordering::Greater {
                return Err(Error::Domain(
                    "eval_with_bound: point outside certified polydisk".into(),
                ));
            }
        }
        let tail = self.tail_bound(self.trunc, r_upper)?;
        let mut v = match &self.repr {
            Repr::Uni(coeffs) => horner(coeffs, &z[0], prec),
            Repr::Multi(m) => {
                let mut acc = BallComplex::zero();
                for (k, c) in m {
                    let mut term = c.clone();
                    for (i, &ki) in k.iter().enumerate() {
                        term = term.mul(&crate::ball::elem::pow_ui_complex(&z[i], u64::from(ki), prec), prec);
                    }
                    acc = acc.add(&term, prec);
                }
                acc
            }
        };
        v.rad = v.rad.add(tail);
        Ok(v)
    }

    /// Recentered series `F_c(y) = f(c + y * (1 - |c|))` for one variable.
    ///
    /// The new coefficients are computed from the stored ones, with the
    /// discarded tail's contribution to each derivative bounded explicitly;
    /// the certificate follows the recentering lemma.
    pub fn recenter(&self, c: &BallComplex, new_trunc: u32, prec: u32) -> Result<BoundedSeries> {
        assert_eq!(self.nvars, 1, "recenter implemented for one variable");
        let x = c.abs_upper(); // |c| upper
        if x.cmp_mag(&Mag { man: 1, exp: 0 }) != std::cmp::Ordering::Less {
            return Err(Error::Domain("recenter: |c| must be < 1".into()));
        }
        let one_minus = crate::ball::mag_sub_lower(Mag { man: 1, exp: 0 }, x);
        // scale = (1 - |c|) as a ball (interval arithmetic on |c|)
        let abs_c = c.abs_ball(prec);
        let scale = BallReal::from_i64(1).sub(&abs_c, prec);
        let coeffs = self.coeffs_uni();
        let u0 = coeffs.len();
        let n = u64::from(self.grandeur.n[0]);
        let a = self.grandeur.a;
        let mut out = Vec::with_capacity(new_trunc as usize);
        // binomial row: C(k, j) computed incrementally per j
        for j in 0..new_trunc as usize {
            // F_j = (1-|c|)^j * sum_{k>=j} f_k C(k,j) c^{k-j}
            let mut acc = BallComplex::zero();
            let mut cpow = BallComplex::one(); // c^{k-j}
            let mut binom = num_bigint::BigInt::from(1); // C(j, j)
            for k in j..u0 {
                if k > j {
                    // C(k,j) = C(k-1,j) * k / (k-j)
                    binom = &binom * num_bigint::BigInt::from(k as u64);
                    binom /= num_bigint::BigInt::from((k - j) as u64);
                    cpow = cpow.mul(c, prec);
                }
                let b = BallComplex::exact(crate::ball::Dy::from_bigint(&binom), crate::ball::Dy::zero());
                acc = acc.add(&coeffs[k].mul(&b, prec).mul(&cpow, prec), prec);
            }
            // tail over k >= max(u0, j+1): |f_k| C(k,j) x^{k-j} <= A (k+1)^n C(k,j) x^{k-j}
            let tail = recenter_tail(a, n, j as u64, u0.max(j + 1) as u64, x)?;
            acc.rad = acc.rad.add(tail);
            // multiply by scale^j
            let sc = crate::ball::elem::pow_ui_real(&scale, j as u64, prec);
            out.push(acc.mul_real(&sc, prec));
        }
        // Grandeur: A_c = n! A e^{1+n} 2^{1+n} (1-|c|)^{-n-2}, exponents n+1
        let nfact = mag_factorial(n);
        let e_up = crate::ball::elem::exp_upper(&BallReal::from_i64(1), 32);
        let a_c = nfact
            .mul(a)
            .mul(mag_pow_u64(e_up, n + 1))
            .mul_2exp((n + 1) as i64)
            .div_up(mag_pow_lower(one_minus, n + 2));
        Ok(BoundedSeries::from_coeffs(
            out,
            Grandeur::new(a_c, vec![self.grandeur.n[0] + 1]),
        ))
    }

    /// Constant series 1 (one variable).
    pub fn one(trunc: u32) -> BoundedSeries {
        let mut v = vec![BallComplex::zero(); trunc as usize];
        if trunc > 0 {
            v[0] = BallComplex::one();
        }
        BoundedSeries::from_coeffs(v, Grandeur::new(Mag { man: 1, exp: 0 }, vec![1]))
    }
}

/// Bound sum_{k >= k0} A (k+1)^n C(k,j) x^{k-j} by explicit Mag summation
/// up to the index where the term ratio certifiably drops below (1+x)/2,
/// then a geometric tail.
fn recenter_tail(a: Mag, n: u64, j: u64, k0: u64, x: Mag) -> Result<Mag> {
    if x.is_zero() {
        return Ok(Mag::ZERO);
    }
    let xf = x.to_f64();
    if xf >= 1.0 {
        return Err(Error::Domain("recenter_tail: |c| >= 1".into()));
    }
    // ratio at k: ((k+2)/(k+1))^n * (k+1)/(k+1-j) * x ; find K with ratio <= (1+x)/2
    let target = (1.0 + xf) / 2.0;
    let mut kstar = k0.max(j + 1);
    loop {
        let kf = kstar as f64;
        let ratio = ((kf + 2.0) / (kf + 1.0)).powf(n as f64) * ((kf + 1.0) / (kf + 1.0 - j as f64)) * xf;
        if ratio <= target * 0.999 {
            break;
        }
        kstar += (kstar / 4).max(8);
        if kstar > (1 << 40) {
            return Err(Error::Truncation("recenter_tail: no convergence".into()));
        }
    }
    // sum terms k0..=kstar explicitly (Mag, rounds up), then geometric tail
    let mut sum = Mag::ZERO;
    let mut term = term_mag(a, n, j, k0, x);
    let mut k = k0;
    while k <= kstar {
        sum = sum.add(term);
        // advance ratio exactly in Mag arithmetic (upper)
        let num = Mag { man: k + 2, exp: 0 }; // (k+2)
        let num_n = mag_pow_u64(num, n);
        let den_n = mag_pow_lower(Mag { man: k + 1, exp: 0 }, n);
        let r1 = num_n.div_up(den_n);
        let r2 = Mag { man: k + 1, exp: 0 }.div_up(Mag {
            man: k + 1 - j,
            exp: 0,
        });
        term = term.mul(r1).mul(r2).mul(x);
        k += 1;
    }
    // geometric: term_k* summed with ratio (1+x)/2 <= (1+xf)/2 < 1
    let gm = Mag::from_f64_upper(1.0 / (1.0 - target) + 1e-9);
    Ok(sum.add(term.mul(gm)))
}

fn term_mag(a: Mag, n: u64, j: u64, k: u64, x: Mag) -> Mag {
    // A (k+1)^n C(k,j) x^{k-j}
    let mut b = num_bigint::BigUint::from(1u32);
    for t in 1..=j {
        b *= num_bigint::BigUint::from(k - j + t);
        b /= num_bigint::BigUint::from(t);
    }
    let binom = crate::ball::Dy {
        neg: false,
        mag: b,
        exp: 0,
    }
    .abs_mag_upper();
    a.mul(mag_pow_u64(Mag { man: k + 1, exp: 0 }, n))
        .mul(binom)
        .mul(mag_pow_u64(x, k - j))
}

pub fn mag_pow_lower(base: Mag, e: u64) -> Mag {
    let mut acc = Mag { man: 1, exp: 0 };
    for _ in 0..e {
        acc = acc.mul_lower_crude(base);
    }
    acc
}

pub fn horner(coeffs: &[BallComplex], z: &BallComplex, prec: u32) -> BallComplex {
    let mut acc = BallComplex::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(z, prec).add(c, prec);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ball::Dy;

    fn uni(vals: &[(f64, f64)], a: f64, n: u32) -> BoundedSeries {
        BoundedSeries::from_coeffs(
            vals.iter()
                .map(|&(r, i)| BallComplex::from_f64(r, i))
                .collect(),
            Grandeur::new(Mag::from_f64_upper(a), vec![n]),
        )
    }

    #[test]
    fn mul_grandeur_combines() {
        // (1,1) x (1,1) -> (1,3)
        let f = uni(&[(1.0, 0.0), (1.0, 0.0)], 1.0, 1);
        let h = uni(&[(1.0, 0.0), (1.0, 0.0)], 1.0, 1);
        let p = f.mul(&h, 64);
        assert_eq!(p.grandeur.n, vec![3]);
        assert!(p.grandeur.a.to_f64() < 1.0 + 1e-8);
    }

    #[test]
    fn mul_identity_coefficients() {
        let f = uni(&[(2.0, 1.0), (0.5, -3.0), (4.0, 0.0)], 8.0, 2);
        let one = BoundedSeries::one(3);
        let p = f.mul(&one, 64);
        for k in 0..3u32 {
            let d = p.coeff(&[k]).sub(&f.coeff(&[k]), 64);
            assert!(d.abs_upper().to_f64() < 1e-12);
        }
        assert_eq!(p.grandeur.n, vec![4]); // n + 1 + 1... n=2 + b=1 + 1
    }

    #[test]
    fn mul_exact_small() {
        // (1+z)(1-z) = 1 - z^2
        let f = uni(&[(1.0, 0.0), (1.0, 0.0), (0.0, 0.0)], 1.0, 1);
        let h = uni(&[(1.0, 0.0), (-1.0, 0.0), (0.0, 0.0)], 1.0, 1);
        let p = f.mul(&h, 64);
        let expect = [(1.0, 0.0), (0.0, 0.0), (-1.0, 0.0)];
        for (k, &(r, _)) in expect.iter().enumerate() {
            let c = p.coeff(&[k as u32]);
            assert!((c.re.to_f64() - r).abs() < 1e-12);
        }
    }

    #[test]
    fn derivative_formula_and_grandeur() {
        // derivative of 1 + 2z + 3z^2 is 2 + 6z
        let f = uni(&[(1.0, 0.0), (2.0, 0.0), (3.0, 0.0)], 4.0, 2);
        let d = f.derivative(1, 64);
        assert!((d.coeff(&[0]).re.to_f64() - 2.0).abs() < 1e-12);
        assert!((d.coeff(&[1]).re.to_f64() - 6.0).abs() < 1e-12);
        // grandeur: (A 2^{1*2+0}, 2+1) = (4A, 3)
        assert_eq!(d.grandeur.n, vec![3]);
        assert!((d.grandeur.a.to_f64() - 16.0).abs() < 1.0);
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let f = uni(&[(5.0, 0.0)], 5.0, 1);
        let d = f.derivative(1, 64);
        assert_eq!(d.coeffs_uni().len(), 0);
    }

    #[test]
    fn tail_bound_example() {
        // one variable, A=1, n=1, u=0, R=1/2 -> B = 1! * 2 * 1 * 1 / (1/2)^2 = 8
        let f = uni(&[(1.0, 0.0)], 1.0, 1);
        let b = f.tail_bound(0, Mag::from_f64_upper(0.5)).unwrap();
        let bf = b.to_f64();
        assert!(bf >= 8.0 && bf < 8.5, "B = {bf}");
        // soundness against the worst-case series f_k = (k+1): sum (k+1) 2^-k = 4
        assert!(bf >= 4.0);
    }

    #[test]
    fn tail_bound_to_zero() {
        let f = uni(&[(1.0, 0.0)], 1.0, 1);
        let b1 = f.tail_bound(4, Mag::from_f64_upper(1e-3)).unwrap();
        assert!(b1.to_f64() < 1e-9);
    }

    #[test]
    fn order_for_tail_certifies() {
        let f = uni(&[(1.0, 0.0)], 1.0, 1);
        let r = Mag::from_f64_upper(0.5);
        let kappa = Mag::two_pow(-64);
        let u = f.order_for_tail(r, kappa).unwrap();
        let t = f.tail_bound(u, r).unwrap();
        assert!(t.cmp_mag(&kappa) != std::cmp::Ordering::Greater);
    }

    #[test]
    fn eval_geometric_series() {
        // f = 1/(1-z) truncated at 50, grandeur (1,1); f(0.1) ~ 1.1111...
        let coeffs: Vec<BallComplex> = (0..50).map(|_| BallComplex::one()).collect();
        let f = BoundedSeries::from_coeffs(coeffs, Grandeur::new(Mag { man: 1, exp: 0 }, vec![1]));
        let z = BallComplex::from_f64(0.1, 0.0);
        let v = f
            .eval_with_bound(std::slice::from_ref(&z), Mag::from_f64_upper(0.2), 96)
            .unwrap();
        assert!((v.re.to_f64() - 1.0 / 0.9).abs() < 1e-12);
        // radius accounts for the tail at R=0.2
        assert!(v.rad.to_f64() < 1e-20);
        assert!(v.rad.to_f64() > 0.0);
    }

    #[test]
    fn eval_rejects_outside() {
        let f = BoundedSeries::one(4);
        let z = BallComplex::from_f64(0.9, 0.0);
        assert!(f
            .eval_with_bound(std::slice::from_ref(&z), Mag::from_f64_upper(0.5), 64)
            .is_err());
    }

    #[test]
    fn recenter_affine() {
        // f = z stored to order 60, c = 1/2: F(y) = 1/2 + y/2.
        // The certificate allows unseen tail coefficients, so the radii are
        // governed by the tail of (A, n) at |c|; a wide truncation makes
        // them small.
        let mut cs = vec![BallComplex::zero(); 60];
        cs[1] = BallComplex::one();
        let f = BoundedSeries::from_coeffs(cs, Grandeur::new(Mag { man: 1, exp: 0 }, vec![1]));
        let c = BallComplex::from_f64(0.5, 0.0);
        let g = f.recenter(&c, 3, 96).unwrap();
        assert!(g.coeff(&[0]).contains(&BallComplex::from_f64(0.5, 0.0)));
        assert!(g.coeff(&[1]).contains(&BallComplex::from_f64(0.5, 0.0)));
        assert!(g.coeff(&[0]).rad.to_f64() < 1e-9);
        assert!(g.coeff(&[1]).rad.to_f64() < 1e-7);
        assert!(g.coeff(&[2]).abs_upper().to_f64() < 1e-6);
    }

    #[test]
    fn recenter_constant() {
        let f = uni(&[(1.0, 0.0)], 1.0, 1);
        let c = BallComplex::from_f64(0.3, -0.2);
        let g = f.recenter(&c, 2, 96).unwrap();
        assert!((g.coeff(&[0]).re.to_f64() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn recenter_at_zero_matches_formula() {
        // A_0 = n! A e^{n+1} 2^{n+1} for c=0, exponent n+1
        let f = uni(&[(1.0, 0.0), (1.0, 0.0)], 1.0, 1);
        let g = f.recenter(&BallComplex::zero(), 2, 96).unwrap();
        assert_eq!(g.grandeur.n, vec![2]);
        let want = 1.0 * (1.0f64.exp()).powi(2) * 4.0;
        let got = g.grandeur.a.to_f64();
        assert!(got >= want * 0.99 && got < want * 1.2, "A_0 = {got} vs {want}");
        // and F_0 = f: coefficients preserved
        assert!(g.coeff(&[1]).contains(&BallComplex::from_f64(1.0, 0.0)));
    }

    #[test]
    fn grandeur_soundness_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let n = rng.gen_range(1..4u32);
            let a = rng.gen_range(1.0..50.0f64);
            let len = rng.gen_range(1..12usize);
            let coeffs: Vec<BallComplex> = (0..len)
                .map(|k| {
                    let bound = a * ((k + 1) as f64).powi(n as i32);
                    let m = rng.gen_range(-bound..bound) * 0.7;
                    BallComplex::from_f64(m, rng.gen_range(-0.1..0.1))
                })
                .collect();
            let f = BoundedSeries::from_coeffs(coeffs, Grandeur::new(Mag::from_f64_upper(a), vec![n]));
            assert!(f.grandeur_holds());
            let h = f.mul(&f, 64);
            assert!(h.grandeur_holds());
            if h.coeffs_uni().len() > 1 {
                assert!(h.derivative(1, 64).grandeur_holds());
            }
        }
    }

    #[test]
    fn zero_series_eval() {
        let f = uni(&[(0.0, 0.0), (0.0, 0.0)], 1.0, 1);
        let v = f
            .eval_with_bound(
                &[BallComplex::from_f64(0.1, 0.0)],
                Mag::from_f64_upper(0.3),
                64,
            )
            .unwrap();
        assert!(v.re.is_zero() || v.re.to_f64().abs() < 1e-15);
        assert!(v.rad.to_f64() > 0.0); // tail bound present
        let _ = Dy::zero();
    }
}
