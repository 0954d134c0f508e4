//! Polynomial root machinery: fast heuristic localization (Aberth) plus
//! certified counting (winding numbers), certified refinement (interval
//! Newton) and Weyl quadrisection as the fully certified isolator.

use crate::ball::elem::arg_principal;
use crate::ball::{BallComplex, BallReal, Dy, Mag};
use crate::error::{Error, Result};

/// Dense polynomial with ball coefficients, low degree first.
#[derive(Clone, Debug)]
pub struct BallPoly {
    pub coeffs: Vec<BallComplex>,
}

impl BallPoly {
    pub fn new(coeffs: Vec<BallComplex>) -> BallPoly {
        BallPoly { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn eval(&self, z: &BallComplex, prec: u32) -> BallComplex {
        crate::series::horner(&self.coeffs, z, prec)
    }

    pub fn derivative(&self, prec: u32) -> BallPoly {
        let mut out = Vec::with_capacity(self.coeffs.len().saturating_sub(1));
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c.mul_i64(k as i64, prec));
        }
        BallPoly::new(out)
    }

    /// Upper bound on all root moduli (Cauchy bound), requires leading
    /// coefficient certified nonzero.
    pub fn cauchy_root_bound(&self) -> Result<f64> {
        let lead = self
            .coeffs
            .last()
            .ok_or_else(|| Error::Invalid("empty polynomial".into()))?;
        let lo = lead.abs_lower();
        if lo.is_zero() {
            return Err(Error::Invalid(
                "leading coefficient indistinct from zero".into(),
            ));
        }
        let mut m = 0f64;
        for c in &self.coeffs[..self.coeffs.len() - 1] {
            let r = c.abs_upper().div_up(lo).to_f64();
            m = m.max(r);
        }
        Ok(1.0 + m)
    }
}

/// Minimal complex f64 helper for the heuristic root finder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct C64 {
    pub re: f64,
    pub im: f64,
}

impl C64 {
    pub fn new(re: f64, im: f64) -> C64 {
        C64 { re, im }
    }
    pub fn zero() -> C64 {
        C64::new(0.0, 0.0)
    }
    pub fn add(self, o: C64) -> C64 {
        C64::new(self.re + o.re, self.im + o.im)
    }
    pub fn sub(self, o: C64) -> C64 {
        C64::new(self.re - o.re, self.im - o.im)
    }
    pub fn mul(self, o: C64) -> C64 {
        C64::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
    pub fn div(self, o: C64) -> C64 {
        let d = o.re * o.re + o.im * o.im;
        C64::new(
            (self.re * o.re + self.im * o.im) / d,
            (self.im * o.re - self.re * o.im) / d,
        )
    }
    pub fn norm(self) -> f64 {
        self.re.hypot(self.im)
    }
}

/// Aberth-Ehrlich simultaneous iteration in f64. Heuristic only: outputs
/// feed the certified refinement/counting stages.
pub fn aberth_roots(coeffs: &[C64], max_iter: usize) -> Vec<C64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    // drop exactly-zero leading coefficients would be caller's job; here we
    // assume a nonzero leading coefficient.
    let lead = coeffs[n];
    // initial guesses on a slightly eccentric circle scaled by a rough
    // root-size estimate
    let mut scale: f64 = 0.0;
    for (k, c) in coeffs.iter().enumerate().take(n) {
        if c.norm() > 0.0 {
            let r = (c.norm() / lead.norm()).powf(1.0 / (n - k) as f64);
            scale = scale.max(r);
        }
    }
    if scale == 0.0 || !scale.is_finite() {
        scale = 1.0;
    }
    let mut z: Vec<C64> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            C64::new(
                scale * 1.05 * th.cos() + 0.001,
                scale * 1.05 * th.sin() + 0.0007,
            )
        })
        .collect();
    let eval = |x: C64| -> (C64, C64) {
        // value and derivative by Horner
        let mut v = C64::zero();
        let mut d = C64::zero();
        for c in coeffs.iter().rev() {
            d = d.mul(x).add(v);
            v = v.mul(x).add(*c);
        }
        (v, d)
    };
    for _ in 0..max_iter {
        let mut moved: f64 = 0.0;
        let zs = z.clone();
        for i in 0..n {
            let (v, d) = eval(z[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let newton = if d.norm() > 0.0 { v.div(d) } else { C64::new(1e-3, 0.0) };
            let mut rep = C64::zero();
            for (j, other) in zs.iter().enumerate() {
                if j != i {
                    let diff = z[i].sub(*other);
                    if diff.norm() > 1e-300 {
                        rep = rep.add(C64::new(1.0, 0.0).div(diff));
                    }
                }
            }
            let denom = C64::new(1.0, 0.0).sub(newton.mul(rep));
            let step = if denom.norm() > 1e-300 {
                newton.div(denom)
            } else {
                newton
            };
            if step.norm().is_finite() {
                z[i] = z[i].sub(step);
                moved = moved.max(step.norm() / (1.0 + z[i].norm()));
            }
        }
        if moved < 1e-14 {
            break;
        }
    }
    z
}

/// Certified winding number of `f` along the circle |z - c| = r.
///
/// `f` evaluates the function on a complex ball at the given precision.
/// Returns None when certification fails at this precision/subdivision cap.
pub fn winding_number<F>(f: &F, center: &BallComplex, radius: &BallReal, prec: u32) -> Option<i64>
where
    F: Fn(&BallComplex, u32) -> Option<BallComplex>,
{
    // adaptive arcs: stack of [t0, t1) angle intervals in turns
    #[derive(Clone)]
    struct Arc {
        t0: f64,
        t1: f64,
    }
    let two_pi = crate::ball::elem::pi(prec).mul_2exp(1);
    let point_at = |t: f64, prec: u32| -> BallComplex {
        let ang = two_pi.mul(&BallReal::from_f64(t), prec);
        let (s, c) = crate::ball::elem::sin_cos(&ang, prec);
        let dir = crate::ball::elem::pack_complex(c, s, prec);
        center.add(&dir.mul_real(radius, prec), prec)
    };
    let arc_ball = |t0: f64, t1: f64, prec: u32| -> BallComplex {
        // enclosure of the arc: center point at midpoint angle, radius
        // r * |Delta theta| (chord+sagitta bound, generous)
        let tm = 0.5 * (t0 + t1);
        let mut p = point_at(tm, prec);
        let dtheta = (t1 - t0) * 2.0 * std::f64::consts::PI;
        let extra = radius
            .abs_upper()
            .mul(Mag::from_f64_upper(dtheta * 0.51));
        p.rad = p.rad.add(extra);
        p
    };
    let mut arcs = vec![Arc { t0: 0.0, t1: 1.0 }];
    let mut certified: Vec<(f64, f64)> = Vec::new();
    let mut work = 0usize;
    // subdivide until each arc image excludes zero
    while let Some(a) = arcs.pop() {
        work += 1;
        if work > 100_000 {
            return None;
        }
        let img = f(&arc_ball(a.t0, a.t1, prec), prec)?;
        if img.contains_zero() {
            if a.t1 - a.t0 < 1e-9 {
                return None;
            }
            let tm = 0.5 * (a.t0 + a.t1);
            arcs.push(Arc { t0: a.t0, t1: tm });
            arcs.push(Arc { t0: tm, t1: a.t1 });
        } else {
            certified.push((a.t0, a.t1));
        }
    }
    certified.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    // sum principal args of quotients at arc endpoints
    let mut total = BallReal::zero();
    let mut t_points: Vec<f64> = certified.iter().map(|x| x.0).collect();
    t_points.push(1.0);
    let mut vals: Vec<BallComplex> = Vec::with_capacity(t_points.len());
    for &t in &t_points {
        vals.push(f(&point_at(t, prec), prec)?);
    }
    for w in vals.windows(2) {
        let q = w[1].mul(&w[0].conj(), prec);
        let d = arg_principal(&q, prec)?;
        total = total.add(&d, prec);
    }
    // winding = total / 2pi must contain exactly one integer
    let turns = total.div(&two_pi, prec)?;
    let lo = turns.mid.to_f64() - turns.rad.to_f64();
    let hi = turns.mid.to_f64() + turns.rad.to_f64();
    let k = turns.mid.to_f64().round() as i64;
    if (k as f64) > lo - 0.5 && (k as f64) < hi + 0.5 && hi - lo < 0.9 {
        // certified: the ball contains exactly one integer
        if (k as f64 - turns.mid.to_f64()).abs() + turns.rad.to_f64() < 0.49 {
            return Some(k);
        }
    }
    None
}

/// Interval-Newton refinement: given a ball B and function/derivative
/// evaluators, contract toward the unique zero. Certified: if the Newton
/// image is contained in the interior of B, B contains exactly one zero
/// and the image encloses it.
pub fn newton_refine<F, D>(
    f: &F,
    df: &D,
    start: &BallComplex,
    target_prec: u32,
    prec: u32,
) -> Option<BallComplex>
where
    F: Fn(&BallComplex, u32) -> Option<BallComplex>,
    D: Fn(&BallComplex, u32) -> Option<BallComplex>,
{
    let mut b = start.clone();
    let mut contracted = false;
    for _ in 0..64 {
        let c = BallComplex::exact(b.re.clone(), b.im.clone());
        let fc = f(&c, prec)?;
        let dfb = df(&b, prec)?;
        if dfb.contains_zero() {
            return None;
        }
        let step = fc.div(&dfb, prec)?;
        let n = c.sub(&step, prec);
        // contraction test: N(B) strictly inside B
        let strictly_inside = {
            let d = BallComplex::exact(
                b.re.sub_exact(&n.re),
                b.im.sub_exact(&n.im),
            )
            .center_abs_upper();
            d.add(n.rad).cmp_mag(&b.rad) == std::cmp::Ordering::Less
        };
        if strictly_inside {
            contracted = true;
        }
        if contracted {
            // intersect-ish: adopt the Newton image
            let prev = b.rad;
            b = n;
            if b.rad.log2_upper() <= -(i64::from(target_prec)) {
                return Some(b);
            }
            if b.rad.cmp_mag(&prev) != std::cmp::Ordering::Less && b.rad.log2_upper() > -(i64::from(prec) - 8) {
                // stagnated above target: give up at this precision
                return None;
            }
        } else {
            // not yet certified: shrink heuristically toward the Newton point
            // while keeping the certificate honest (no claim until contraction)
            let nm = n;
            b = BallComplex {
                re: nm.re,
                im: nm.im,
                rad: b.rad,
            };
        }
    }
    None
}

/// A located root cluster: enclosing ball plus certified multiplicity.
#[derive(Clone, Debug)]
pub struct RootCluster {
    pub ball: BallComplex,
    pub multiplicity: i64,
}

/// Certified root clusters of an analytic function inside a box, by Weyl
/// quadrisection over a certified evaluator.
///
/// Returns clusters covering every zero in the box; each cluster carries a
/// winding-certified multiplicity. Zeros just outside the box boundary may
/// also be reported (callers filter).
pub fn quadrisect_zeros<F>(
    f: &F,
    center: C64,
    half_width: f64,
    stop_radius: f64,
    prec: u32,
) -> Result<Vec<RootCluster>>
where
    F: Fn(&BallComplex, u32) -> Option<BallComplex>,
{
    #[derive(Clone)]
    struct Box {
        cx: f64,
        cy: f64,
        h: f64, // half width
    }
    let eval_ball = |b: &Box, prec: u32| -> Option<BallComplex> {
        let mut z = BallComplex::from_f64(b.cx, b.cy);
        z.rad = z.rad.add(Mag::from_f64_upper(b.h * std::f64::consts::SQRT_2 * 1.01));
        f(&z, prec)
    };
    let mut todo = vec![Box {
        cx: center.re,
        cy: center.im,
        h: half_width,
    }];
    let mut small: Vec<Box> = Vec::new();
    let mut work = 0usize;
    while let Some(b) = todo.pop() {
        work += 1;
        if work > 4_000_000 {
            return Err(Error::PrecisionExhausted {
                prec,
                what: "quadrisection budget".into(),
            });
        }
        let v = eval_ball(&b, prec).ok_or(Error::PrecisionExhausted {
            prec,
            what: "evaluator failed in quadrisection".into(),
        })?;
        if !v.contains_zero() {
            continue;
        }
        if b.h <= stop_radius {
            small.push(b);
            continue;
        }
        let h = b.h / 2.0;
        for (sx, sy) in [(-1.0, -1.0), (-1.0, 1.0), (1.0, -1.0), (1.0, 1.0)] {
            todo.push(Box {
                cx: b.cx + sx * h,
                cy: b.cy + sy * h,
                h,
            });
        }
    }
    // cluster surviving boxes by adjacency
    let n = small.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
            r
        } else {
            i
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let d = (small[i].cx - small[j].cx).hypot(small[i].cy - small[j].cy);
            if d <= (small[i].h + small[j].h) * 2.2 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        groups.entry(r).or_default().push(i);
    }
    let mut out = Vec::new();
    let evalf = f;
    let _ = &evalf;
    for (_, idxs) in groups {
        let cx = idxs.iter().map(|&i| small[i].cx).sum::<f64>() / idxs.len() as f64;
        let cy = idxs.iter().map(|&i| small[i].cy).sum::<f64>() / idxs.len() as f64;
        let mut spread = 0f64;
        for &i in &idxs {
            spread = spread.max(
                (small[i].cx - cx).hypot(small[i].cy - cy) + small[i].h * std::f64::consts::SQRT_2,
            );
        }
        // certified multiplicity by winding on circles around the cluster
        let mut mult = None;
        let mut rball = spread * 1.8 + stop_radius;
        for _ in 0..6 {
            if let Some(m) = winding_number(
                &evalf,
                &BallComplex::from_f64(cx, cy),
                &BallReal::from_f64(rball),
                prec,
            ) {
                mult = Some(m);
                break;
            }
            rball *= 1.6;
        }
        let Some(m) = mult else {
            return Err(Error::PrecisionExhausted {
                prec,
                what: "cluster winding uncertified".into(),
            });
        };
        if m < 0 {
            return Err(Error::Invalid("negative winding (bad input poly)".into()));
        }
        if m == 0 {
            continue; // spurious boxes without a root
        }
        let mut ball = BallComplex::from_f64(cx, cy);
        ball.rad = ball.rad.add(Mag::from_f64_upper(rball));
        out.push(RootCluster {
            ball,
            multiplicity: m,
        });
    }
    Ok(out)
}

/// The certified complex root isolator used for small polynomials
/// (eigenvalue embeddings, test oracles): all roots, with multiplicity,
/// to 2^-target_prec radius.
pub fn poly_roots(poly: &BallPoly, target_prec: u32) -> Result<Vec<BallComplex>> {
    let lead = poly
        .coeffs
        .last()
        .ok_or_else(|| Error::Invalid("empty polynomial".into()))?;
    if lead.abs_lower().is_zero() {
        return Err(Error::Invalid(
            "leading coefficient indistinct from zero".into(),
        ));
    }
    let deg = poly.degree();
    if deg == 0 {
        return Ok(Vec::new());
    }
    let bound = poly.cauchy_root_bound()?;
    let mut prec = (2 * target_prec).max(64);
    loop {
        match poly_roots_at(poly, target_prec, bound, prec) {
            Ok(mut roots) => {
                roots.sort_by(|a, b| {
                    let (ar, ai) = a.to_f64s();
                    let (br, bi) = b.to_f64s();
                    ar.partial_cmp(&br)
                        .unwrap()
                        .then(ai.partial_cmp(&bi).unwrap())
                });
                return Ok(roots);
            }
            Err(Error::PrecisionExhausted { .. }) if prec < 1 << 16 => {
                prec = crate::escalate(prec);
            }
            Err(e) => return Err(e),
        }
    }
}

fn poly_roots_at(
    poly: &BallPoly,
    target_prec: u32,
    bound: f64,
    prec: u32,
) -> Result<Vec<BallComplex>> {
    let deg = poly.degree();
    let stop = (2f64.powi(-(target_prec as i32))).max(1e-240) / 8.0;
    // quadrisect first at a coarse stop radius, then refine
    let coarse_stop = (bound * 2f64.powi(-((prec / 3) as i32))).max(stop / 1024.0);
    let pf = |z: &BallComplex, p: u32| -> Option<BallComplex> { Some(poly.eval(z, p)) };
    let clusters = quadrisect_zeros(&pf, C64::zero(), bound * 1.05, coarse_stop, prec)?;
    let total: i64 = clusters.iter().map(|c| c.multiplicity).sum();
    if total != deg as i64 {
        return Err(Error::PrecisionExhausted {
            prec,
            what: format!("found {total} of {deg} roots"),
        });
    }
    let dpoly = poly.derivative(prec);
    let f = |z: &BallComplex, p: u32| -> Option<BallComplex> { Some(poly.eval(z, p)) };
    let df = |z: &BallComplex, p: u32| -> Option<BallComplex> { Some(dpoly.eval(z, p)) };
    let mut out = Vec::new();
    for cl in clusters {
        if cl.ball.rad.to_f64() <= 2f64.powi(-(target_prec as i32)) {
            for _ in 0..cl.multiplicity {
                out.push(cl.ball.clone());
            }
            continue;
        }
        if cl.multiplicity == 1 {
            if let Some(b) = newton_refine(&f, &df, &cl.ball, target_prec, prec) {
                out.push(b);
                continue;
            }
        }
        // multiple or stubborn: local quadrisection to the target radius
        let (cx, cy) = cl.ball.to_f64s();
        let sub = quadrisect_zeros(
            &pf,
            C64::new(cx, cy),
            cl.ball.rad.to_f64() * 1.2,
            stop,
            prec,
        )?;
        let subtotal: i64 = sub.iter().map(|c| c.multiplicity).sum();
        if subtotal != cl.multiplicity {
            return Err(Error::PrecisionExhausted {
                prec,
                what: "cluster split lost roots".into(),
            });
        }
        for s in sub {
            if s.ball.rad.to_f64() > 2f64.powi(-(target_prec as i32)) {
                return Err(Error::PrecisionExhausted {
                    prec,
                    what: "cluster not separable at this precision".into(),
                });
            }
            for _ in 0..s.multiplicity {
                out.push(s.ball.clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly_i64(cs: &[(i64, i64)]) -> BallPoly {
        BallPoly::new(cs.iter().map(|&(r, i)| BallComplex::from_i64(r, i)).collect())
    }

    #[test]
    fn aberth_quadratic() {
        // z^2 - 1
        let roots = aberth_roots(
            &[C64::new(-1.0, 0.0), C64::zero(), C64::new(1.0, 0.0)],
            100,
        );
        let mut rs: Vec<f64> = roots.iter().map(|r| r.re).collect();
        rs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((rs[0] + 1.0).abs() < 1e-10);
        assert!((rs[1] - 1.0).abs() < 1e-10);
    }

    #[test]
    fn winding_of_monomial() {
        // f = z^3 around origin: winding 3
        let f = |z: &BallComplex, p: u32| -> Option<BallComplex> {
            Some(crate::ball::elem::pow_ui_complex(z, 3, p))
        };
        let w = winding_number(
            &f,
            &BallComplex::zero(),
            &BallReal::from_f64(1.0),
            96,
        );
        assert_eq!(w, Some(3));
    }

    #[test]
    fn winding_no_root() {
        let f = |z: &BallComplex, p: u32| -> Option<BallComplex> {
            Some(z.sub(&BallComplex::from_f64(5.0, 0.0), p))
        };
        let w = winding_number(
            &f,
            &BallComplex::zero(),
            &BallReal::from_f64(1.0),
            96,
        );
        assert_eq!(w, Some(0));
    }

    #[test]
    fn roots_of_unity() {
        // z^2 + 1 -> {i, -i}
        let p = poly_i64(&[(1, 0), (0, 0), (1, 0)]);
        let roots = poly_roots(&p, 64).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            let v = p.eval(r, 128);
            assert!(v.contains_zero() || v.abs_upper().to_f64() < 1e-15);
        }
        let ims: Vec<f64> = roots.iter().map(|r| r.to_f64s().1).collect();
        assert!(ims.iter().any(|&x| (x - 1.0).abs() < 1e-15));
        assert!(ims.iter().any(|&x| (x + 1.0).abs() < 1e-15));
    }

    #[test]
    fn quadratic_pm_one() {
        let p = poly_i64(&[(-1, 0), (0, 0), (1, 0)]);
        let roots = poly_roots(&p, 80).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!(r.rad.log2_upper() <= -80);
        }
    }

    #[test]
    fn wilkinson_like() {
        // prod_{k=1..10} (z - k/20): build with exact dyadic-ish rationals
        let mut coeffs = vec![BallComplex::one()];
        for k in 1..=10i64 {
            // multiply by (z - k/20)
            let root = BallComplex::from_real(&BallReal::from_rational(
                &num_bigint::BigInt::from(k),
                &num_bigint::BigInt::from(20),
                192,
            ));
            let mut next = vec![BallComplex::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c, 192);
                next[i] = next[i].sub(&c.mul(&root, 192), 192);
            }
            coeffs = next;
        }
        let p = BallPoly::new(coeffs);
        let roots = poly_roots(&p, 64).unwrap();
        assert_eq!(roots.len(), 10);
        let mut res: Vec<f64> = roots.iter().map(|r| r.to_f64s().0).collect();
        res.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (k, r) in res.iter().enumerate() {
            let want = (k as f64 + 1.0) / 20.0;
            assert!((r - want).abs() < 1e-12, "root {k}: {r} vs {want}");
        }
    }

    #[test]
    fn double_root_multiplicity() {
        // (z - 1/2)^2 = z^2 - z + 1/4
        let quarter = BallComplex::from_real(&BallReal::from_rational(
            &num_bigint::BigInt::from(1),
            &num_bigint::BigInt::from(4),
            128,
        ));
        let p = BallPoly::new(vec![
            quarter,
            BallComplex::from_i64(-1, 0),
            BallComplex::one(),
        ]);
        let roots = poly_roots(&p, 48).unwrap();
        assert_eq!(roots.len(), 2);
        for r in &roots {
            assert!((r.to_f64s().0 - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn newton_refine_simple() {
        // z^2 - 2 near 1.4
        let p = poly_i64(&[(-2, 0), (0, 0), (1, 0)]);
        let dp = p.derivative(96);
        let f = |z: &BallComplex, pr: u32| Some(p.eval(z, pr));
        let df = |z: &BallComplex, pr: u32| Some(dp.eval(z, pr));
        let mut start = BallComplex::from_f64(1.4, 0.0);
        start.rad = Mag::from_f64_upper(0.1);
        let r = newton_refine(&f, &df, &start, 100, 160).unwrap();
        assert!((r.to_f64s().0 - std::f64::consts::SQRT_2).abs() < 1e-14);
        assert!(r.rad.log2_upper() <= -100);
    }

    #[test]
    fn rejects_zero_leading() {
        let p = BallPoly::new(vec![
            BallComplex::one(),
            BallComplex {
                re: Dy::zero(),
                im: Dy::zero(),
                rad: Mag::two_pow(-3),
            },
        ]);
        assert!(poly_roots(&p, 32).is_err());
    }
}
