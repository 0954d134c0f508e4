//! Certified localization, counting and stability of zeros of one-variable
//! analytic series carrying an (A, n) growth certificate.
//!
//! The working constants of the underlying lemmas are configuration (they
//! default to 1); soundness never rests on them. Every claim returned by
//! these operations is re-certified a posteriori by ball evaluation:
//! domination inequalities for zero counts, winding numbers for located
//! zeros, explicit sup bounds for uniform smallness.

pub mod poly;

use crate::ball::{BallComplex, BallReal, Mag};
use crate::error::{Error, Result};
use crate::series::{mag_pow_u64, BoundedSeries, Grandeur};
use poly::{aberth_roots, quadrisect_zeros, winding_number, BallPoly, C64};

const LN3: f64 = 1.0986122886681098;
const LN4: f64 = 1.3862943611198906;
/// Safety slack absorbing f64 noise in hull/slope comparisons; the log-3
/// margins of the polygon lemma dwarf it.
const SLACK: f64 = 1e-6;

/// Lower convex hull of the Newton cloud (k, -log|f_k|), with certified
/// slope intervals.
#[derive(Clone, Debug)]
pub struct NewtonPolygon {
    /// Hull vertices as (k, N(k)): N values are f64 midpoints certified to
    /// width below SLACK.
    pub vertices: Vec<(u32, f64)>,
    /// Certified slope enclosures, strictly increasing.
    pub slopes: Vec<(f64, f64)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MarginKind {
    P3,
    P4,
}

/// A log-radius certified to keep its distance from every Newton slope.
#[derive(Clone, Copy, Debug)]
pub struct SafeAngle {
    pub alpha: f64,
    pub kind: MarginKind,
}

#[derive(Clone, Debug)]
pub enum ZeroOutcome {
    ZeroFound { xi: BallComplex },
    UniformlySmall { bound: Mag },
}

/// Result of a zero search; `count`, `roots` and `circle_radius` are
/// populated by the global search.
#[derive(Clone, Debug)]
pub struct ZeroReport {
    pub outcome: ZeroOutcome,
    pub count: Option<u32>,
    /// Root balls repeated with multiplicity.
    pub roots: Vec<BallComplex>,
    pub circle_radius: Option<f64>,
}

struct CoeffCloud {
    /// (k, |f_k| lower, |f_k| upper) for stored coefficients.
    pts: Vec<(u32, Mag, Mag)>,
}

fn cloud(f: &BoundedSeries) -> CoeffCloud {
    let pts = f
        .coeffs_uni()
        .iter()
        .enumerate()
        .map(|(k, c)| (k as u32, c.abs_lower(), c.abs_upper()))
        .collect();
    CoeffCloud { pts }
}

fn mag_ln_f64(m: Mag) -> f64 {
    // log of a Mag within f64 noise: man * 2^exp
    (m.man as f64).ln() + (m.exp as f64) * std::f64::consts::LN_2
}

/// Newton polygon of a normalized series (f_0 = 1), certified for all
/// slopes at most `slope_cutoff`.
pub fn newton_polygon(f: &BoundedSeries, slope_cutoff: f64) -> Result<NewtonPolygon> {
    assert_eq!(f.nvars(), 1);
    let c = cloud(f);
    if c.pts.is_empty() {
        return Err(Error::Invalid("empty series".into()));
    }
    let f0 = &c.pts[0];
    if f0.1.is_zero() {
        return Err(Error::Invalid("newton_polygon: f_0 not certified nonzero".into()));
    }
    let w0 = mag_ln_f64(f0.2) - mag_ln_f64(f0.1);
    if w0 > SLACK {
        return Err(Error::Truncation(
            "newton_polygon: f_0 interval too wide".into(),
        ));
    }
    if mag_ln_f64(f0.2).abs() > SLACK {
        return Err(Error::Invalid("newton_polygon: series not normalized to f_0 = 1".into()));
    }
    // cloud points (k, y interval): y = -ln|f_k|; lower extreme from upper bound
    struct Pt {
        k: u32,
        ylo: f64,
        yhi: f64, // +inf when |f_k| may vanish
    }
    let mut pts: Vec<Pt> = Vec::new();
    for &(k, lo, hi) in &c.pts {
        if hi.is_zero() {
            continue; // exactly-zero coefficient: absent from the cloud
        }
        let ylo = -mag_ln_f64(hi);
        let yhi = if lo.is_zero() {
            f64::INFINITY
        } else {
            -mag_ln_f64(lo)
        };
        pts.push(Pt { k, ylo, yhi });
    }
    // lower hull on the optimistic (lowest) positions
    let hull = lower_hull(&pts.iter().map(|p| (p.k, p.ylo)).collect::<Vec<_>>());
    // certify: vertices have tight intervals; slope enclosures from interval ends
    let mut vertices = Vec::new();
    let mut slopes: Vec<(f64, f64)> = Vec::new();
    for win in hull.windows(2) {
        let (k1, y1) = win[0];
        let (k2, y2) = win[1];
        let p1 = pts.iter().find(|p| p.k == k1).unwrap();
        let p2 = pts.iter().find(|p| p.k == k2).unwrap();
        let s_lo = (p2.ylo - p1.yhi) / f64::from(k2 - k1);
        let s_hi = (p2.yhi - p1.ylo) / f64::from(k2 - k1);
        let s_mid = (y2 - y1) / f64::from(k2 - k1);
        if s_mid > slope_cutoff + LN4 + 1.0 {
            break; // beyond the certified range of interest
        }
        if !(s_lo.is_finite() && s_hi.is_finite()) || s_hi - s_lo > SLACK {
            return Err(Error::Truncation(
                "newton_polygon: slope not determined at this precision".into(),
            ));
        }
        slopes.push((s_lo - SLACK, s_hi + SLACK));
    }
    for &(k, y) in &hull {
        vertices.push((k, y));
    }
    // tail certification: Grandeur line must stay above every certified
    // supporting line; only slopes <= cutoff matter.
    let a = mag_ln_f64(f.grandeur.a);
    let n = f64::from(f.grandeur.n[0]);
    let u0 = f.coeffs_uni().len() as u32;
    for (i, win) in hull.windows(2).enumerate() {
        if i >= slopes.len() {
            break;
        }
        let (k1, y1) = win[0];
        let s = slopes[i].1; // steepest admissible slope
        if s >= -1e-12 {
            // nonnegative slopes cannot be certified against a Grandeur tail
            if s <= slope_cutoff {
                return Err(Error::Truncation(
                    "newton_polygon: nonnegative slope within cutoff".into(),
                ));
            }
            continue;
        }
        // line L(m) = y1 + s (m - k1); need -ln A - n ln(m+1) >= L(m) + margin
        // for all m >= u0; check up to the index where the line certifiably
        // dominates.
        let m_stop = (u0 as f64 + n / (-s) + 16.0) as u32 + 2;
        for m in u0..=m_stop {
            let line = y1 + s * (f64::from(m) - f64::from(k1));
            let gr = -a - n * (f64::from(m) + 1.0).ln();
            if gr < line + SLACK {
                return Err(Error::Truncation(
                    "newton_polygon: truncation insufficient for tail certification".into(),
                ));
            }
        }
    }
    Ok(NewtonPolygon { vertices, slopes })
}

fn lower_hull(pts: &[(u32, f64)]) -> Vec<(u32, f64)> {
    let mut hull: Vec<(u32, f64)> = Vec::new();
    for &(x, y) in pts {
        if !y.is_finite() {
            continue;
        }
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // remove if (x2,y2) is above or on the segment (x1,y1)-(x,y)
            let cross = (f64::from(x2 - x1)) * (y - y1) - (f64::from(x - x1)) * (y2 - y1);
            if cross <= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((x, y));
    }
    hull
}

impl SafeAngle {
    /// Certify that `alpha` keeps the lemma's margin from every Newton slope.
    pub fn certify(f: &BoundedSeries, alpha: f64, kind: MarginKind) -> Result<SafeAngle> {
        let margin = match kind {
            MarginKind::P3 => LN3,
            MarginKind::P4 => LN4,
        };
        let np = newton_polygon(f, alpha + margin + 0.5)?;
        for &(lo, hi) in &np.slopes {
            if alpha >= lo - margin - SLACK && alpha <= hi + margin + SLACK {
                return Err(Error::Domain(format!(
                    "alpha {alpha} within log-margin of slope [{lo}, {hi}]"
                )));
            }
        }
        // The Grandeur certificate only yields radius of convergence >= 1 and
        // tail domination for alpha < -ln 3; stay in the certified range.
        if alpha >= -margin {
            return Err(Error::Domain(
                "alpha not certified against the series tail".into(),
            ));
        }
        Ok(SafeAngle { alpha, kind })
    }
}

/// Internal: the domination certificate behind zero counting. Finds the
/// dominant cloud index k* at log-radius alpha and certifies
/// |f_m| e^{alpha m} <= |f_k*| e^{alpha k*} base^{-|m-k*|} for every other m,
/// stored or in the certified tail.
fn dominant_vertex(f: &BoundedSeries, alpha: f64, base: f64) -> Result<u32> {
    let c = cloud(f);
    // pick k* by midpoint weight
    let mut kstar = 0u32;
    let mut best = f64::NEG_INFINITY;
    for &(k, _, hi) in &c.pts {
        if hi.is_zero() {
            continue;
        }
        let w = mag_ln_f64(hi) + alpha * f64::from(k);
        if w > best {
            best = w;
            kstar = k;
        }
    }
    let lo_k = c.pts[kstar as usize].1;
    if lo_k.is_zero() {
        return Err(Error::Truncation("dominant coefficient not certified nonzero".into()));
    }
    let wk = mag_ln_f64(lo_k) + alpha * f64::from(kstar);
    let lb = base.ln();
    for &(m, _, hi) in &c.pts {
        if m == kstar || hi.is_zero() {
            continue;
        }
        let wm = mag_ln_f64(hi) + alpha * f64::from(m);
        let gap = f64::from(if m > kstar { m - kstar } else { kstar - m }) * lb;
        if wm > wk - gap - SLACK {
            return Err(Error::Domain(format!(
                "domination fails at m={m} (alpha={alpha})"
            )));
        }
    }
    // tail: A (m+1)^n e^{alpha m} <= e^{wk} base^{-(m-k*)} for m >= trunc
    let a = mag_ln_f64(f.grandeur.a);
    let n = f64::from(f.grandeur.n[0]);
    let u0 = f.coeffs_uni().len() as f64;
    if alpha + lb >= -1e-9 {
        return Err(Error::Domain(
            "alpha too large to dominate a Grandeur tail".into(),
        ));
    }
    // term(m) = a + n ln(m+1) + alpha m + (m-k*) ln(base) - wk decreasing for
    // m >= m1 := n/(-alpha-lb); check up to m1.
    let m1 = (u0 + n / (-(alpha + lb)) + 8.0) as u32 + 2;
    for m in (u0 as u32)..=m1 {
        let t = a + n * (f64::from(m) + 1.0).ln() + alpha * f64::from(m)
            + (f64::from(m) - f64::from(kstar)) * lb
            - wk;
        if t > -SLACK {
            return Err(Error::Truncation(
                "tail domination fails; increase truncation or precision".into(),
            ));
        }
    }
    Ok(kstar)
}

/// Number of zeros of f in the open disk D(0, exp(alpha)), counted with
/// multiplicity, for a P3-certified angle.
pub fn count_zeros(f: &BoundedSeries, angle: &SafeAngle) -> Result<u32> {
    if angle.kind != MarginKind::P3 && angle.kind != MarginKind::P4 {
        unreachable!();
    }
    dominant_vertex(f, angle.alpha, 3.0)
}

/// Lower bound exp(k alpha)/3 for |f| on the circle |z| = exp(alpha),
/// for a P4-certified angle. Requires the dominant coefficient certified
/// >= 1 (true for normalized series on negative-slope ranges).
pub fn circle_lower_bound(f: &BoundedSeries, angle: &SafeAngle) -> Result<f64> {
    if angle.kind != MarginKind::P4 {
        return Err(Error::Domain("circle_lower_bound requires a P4 angle".into()));
    }
    let k = dominant_vertex(f, angle.alpha, 4.0)?;
    let lo = f.coeffs_uni()[k as usize].abs_lower();
    if mag_ln_f64(lo) < -SLACK {
        return Err(Error::Domain(
            "dominant coefficient below 1; bound exp(k alpha)/3 not certified".into(),
        ));
    }
    Ok((f64::from(k) * angle.alpha).exp() / 3.0 * (1.0 - 1e-9))
}

/// g with g(z^2) = f(z) f(-z): zero moduli are squared, slopes spread apart.
pub fn clarify_slopes(f: &BoundedSeries, prec: u32) -> BoundedSeries {
    assert_eq!(f.nvars(), 1);
    let n = f.grandeur.n[0];
    let fm = BoundedSeries::from_coeffs(
        f.coeffs_uni()
            .iter()
            .enumerate()
            .map(|(k, c)| if k % 2 == 1 { c.neg() } else { c.clone() })
            .collect(),
        f.grandeur.clone(),
    );
    let p = f.mul(&fm, prec);
    let m = p.coeffs_uni();
    let half = m.len().div_ceil(2);
    let mut even = Vec::with_capacity(half);
    for j in 0..half {
        even.push(m[2 * j].clone());
    }
    // |g_j| = |p_{2j}| <= A^2 (2j+1)^{2n+1} <= A^2 2^{2n+1} (j+1)^{2n+1}
    let g = Grandeur::new(
        f.grandeur
            .a
            .mul(f.grandeur.a)
            .mul_2exp(i64::from(2 * n + 1)),
        vec![2 * n + 1],
    );
    BoundedSeries::from_coeffs(even, g)
}

/// Certified sup of |f| on the closed disk of radius `r_upper` (< 1).
pub fn sup_bound_on_disk(f: &BoundedSeries, r_upper: Mag) -> Result<Mag> {
    let mut s = Mag::ZERO;
    let mut rp = Mag { man: 1, exp: 0 };
    for c in f.coeffs_uni() {
        s = s.add(c.abs_upper().mul(rp));
        rp = rp.mul(r_upper);
    }
    Ok(s.add(f.tail_bound(f.coeffs_uni().len() as u32, r_upper)?))
}

/// Working constants for the stability lemmas; the defaults are 1 and all
/// conclusions are re-certified, so these only shape preconditions.
#[derive(Clone, Copy, Debug)]
pub struct ZeroConstants {
    pub c12: f64,
    pub c13: f64,
    pub c14: f64,
    pub c16: f64,
}

impl Default for ZeroConstants {
    fn default() -> Self {
        ZeroConstants {
            c12: 1.0,
            c13: 1.0,
            c14: 1.0,
            c16: 1.0,
        }
    }
}

/// Smallest-zero dichotomy: either f has a zero xi with
/// log|xi| <= -sqrt(-log|F_0|), or |f| <= exp(-sqrt(-log|F_0|)/200) on
/// D(0, 1/2).
pub fn smallest_zero(f: &BoundedSeries, consts: &ZeroConstants, prec: u32) -> Result<ZeroReport> {
    assert_eq!(f.nvars(), 1);
    let coeffs = f.coeffs_uni();
    if coeffs.len() < 2 {
        return Err(Error::Invalid("smallest_zero: constant series".into()));
    }
    let f0 = &coeffs[0];
    let hi = f0.abs_upper();
    if hi.cmp_mag(&Mag { man: 1, exp: 0 }) != std::cmp::Ordering::Less {
        return Err(Error::Hypothesis("smallest_zero: |F_0| < 1 fails".into()));
    }
    let s = (-mag_ln_f64(hi)).sqrt();
    let a = mag_ln_f64(f.grandeur.a).max(0.0);
    let n = f64::from(f.grandeur.n[0]);
    if s < consts.c13 * (n * n + a) {
        return Err(Error::Hypothesis(format!(
            "smallest_zero: sqrt(-log|F_0|) = {s:.3} below c13 (n^2 + log A)"
        )));
    }
    // Branch: look for a certified zero of modulus <= exp(-s).
    if let Some(report) = try_small_zero(f, s, prec)? {
        return Ok(report);
    }
    // Branch: uniform smallness on D(0,1/2) at the lemma's bound.
    let kappa = Mag::from_f64_upper((-s / 200.0).exp());
    let sup = sup_bound_on_disk(f, Mag::from_f64_upper(0.5))?;
    if sup.cmp_mag(&kappa) != std::cmp::Ordering::Greater {
        return Ok(ZeroReport {
            outcome: ZeroOutcome::UniformlySmall { bound: kappa },
            count: None,
            roots: Vec::new(),
            circle_radius: None,
        });
    }
    Err(Error::PrecisionExhausted {
        prec,
        what: "smallest_zero: neither branch certified".into(),
    })
}

/// Attempt to certify and locate a zero of modulus <= exp(-s).
fn try_small_zero(f: &BoundedSeries, s: f64, prec: u32) -> Result<Option<ZeroReport>> {
    // normalize to f/F_0 for the domination test
    let f0 = &f.coeffs_uni()[0];
    let inv = match f0.inv(prec) {
        Some(v) => v,
        None => return Ok(None), // F_0 ball touches zero: cannot normalize here
    };
    let normalized = BoundedSeries::from_coeffs(
        f.coeffs_uni().iter().map(|c| c.mul(&inv, prec)).collect(),
        Grandeur::new(
            f.grandeur.a.mul(inv.abs_upper()),
            f.grandeur.n.clone(),
        ),
    );
    // candidate angles: scan a few values at and below -s
    let mut alpha = -s;
    for _ in 0..40 {
        if let Ok(k) = dominant_vertex(&normalized, alpha, 3.0) {
            if k == 0 {
                // no zero inside exp(alpha); try smaller radius? a smaller
                // disk has no more zeros; the small-zero branch fails.
                return Ok(None);
            }
            // locate the zeros inside |z| <= exp(alpha) and return one
            let xi = locate_in_disk(f, alpha, k, prec)?;
            return Ok(Some(ZeroReport {
                outcome: ZeroOutcome::ZeroFound { xi },
                count: Some(k),
                roots: Vec::new(),
                circle_radius: None,
            }));
        }
        alpha -= 0.7;
        if alpha < -s * 400.0 - 5000.0 {
            break;
        }
    }
    Ok(None)
}

/// Locate one zero of f inside |z| < exp(alpha) given a certified count
/// k >= 1 there; returns a ball around a zero.
fn locate_in_disk(f: &BoundedSeries, alpha: f64, _count: u32, prec: u32) -> Result<BallComplex> {
    let r = alpha.exp();
    let r_up = Mag::from_f64_upper(r * 1.5);
    let evalf = |z: &BallComplex, p: u32| -> Option<BallComplex> {
        f.eval_with_bound(std::slice::from_ref(z), r_up, p).ok()
    };
    let clusters = quadrisect_zeros(&evalf, C64::zero(), r * 1.02, r / 64.0, prec)?;
    let mut best: Option<BallComplex> = None;
    for c in clusters {
        if c.multiplicity > 0 {
            let keep = match &best {
                None => true,
                Some(b) => c.ball.center_abs_upper().cmp_mag(&b.center_abs_upper())
                    == std::cmp::Ordering::Less,
            };
            if keep {
                best = Some(c.ball);
            }
        }
    }
    best.ok_or(Error::PrecisionExhausted {
        prec,
        what: "certified count positive but no cluster located".into(),
    })
}

/// Child disk of the equilibrated disk centered at c (radius (1-|c|)/2):
/// center moves toward 0, radius grows by 5/4; below |c| <= 1/5 the child
/// is D(0, 1/2).
pub fn child_disk(c: (f64, f64)) -> ((f64, f64), f64) {
    let (x, y) = c;
    let m = x.hypot(y);
    let r = (1.0 - m) / 2.0;
    if m <= 0.2 {
        ((0.0, 0.0), 0.5)
    } else {
        let m2 = m - r / 2.0;
        ((x * m2 / m, y * m2 / m), 1.25 * r)
    }
}

/// Propagate a certified smallness bound from an equilibrated disk to its
/// child: if |f| <= eps on D_c, returns eps^(1/20) certified on the child.
pub fn propagate_small(
    f: &BoundedSeries,
    c: (f64, f64),
    eps: Mag,
    consts: &ZeroConstants,
    _prec: u32,
) -> Result<Mag> {
    let m = c.0.hypot(c.1);
    if m >= 1.0 {
        return Err(Error::Domain("propagate_small: center outside unit disk".into()));
    }
    let r = (1.0 - m) / 2.0;
    let eps_ln = mag_ln_f64(eps);
    let a = mag_ln_f64(f.grandeur.a).max(0.0);
    let n = f64::from(f.grandeur.n[0]);
    if -eps_ln < consts.c12 * (a + n * n * (r.ln().abs() + 1.0)) {
        return Err(Error::Hypothesis(
            "propagate_small: -log eps below c12 (log A + n^2 |log r|)".into(),
        ));
    }
    let (child_c, _child_r) = child_disk(c);
    // A_{c'} for the series recentered at the child center
    let mc = child_c.0.hypot(child_c.1);
    let nfact = crate::series::mag_factorial(n as u64);
    let e_up = crate::ball::elem::exp_upper(&BallReal::from_i64(1), 32);
    let one_minus = crate::ball::mag_sub_lower(
        Mag { man: 1, exp: 0 },
        Mag::from_f64_upper(mc),
    );
    let a_c = nfact
        .mul(f.grandeur.a)
        .mul(mag_pow_u64(e_up, n as u64 + 1))
        .mul_2exp(n as i64 + 1)
        .div_up(crate::series::mag_pow_lower(one_minus, n as u64 + 2));
    let g_c = Grandeur::new(a_c, vec![f.grandeur.n[0] + 1]);
    // bound(u) = eps (5/2)^u + tail_{u}(recentered grandeur at radius 1/2)
    let target = Mag::from_f64_upper((eps_ln / 20.0).exp());
    let half = Mag::from_f64_upper(0.5);
    let five_halves = Mag::from_f64_upper(2.5);
    let mut u = 1u32;
    let mut best = Mag::from_f64_upper(f64::MAX / 4.0);
    while u < 1 << 22 {
        let p_part = eps.mul(mag_pow_u64(five_halves, u64::from(u)));
        let t_part = grandeur_tail_bound(&g_c, u, half)?;
        let b = p_part.add(t_part);
        if b.cmp_mag(&best) == std::cmp::Ordering::Less {
            best = b;
        }
        if p_part.cmp_mag(&t_part) == std::cmp::Ordering::Greater {
            break; // increasing u only makes it worse from here
        }
        u = (u * 3).div_ceil(2);
    }
    if best.cmp_mag(&target) != std::cmp::Ordering::Greater {
        Ok(target)
    } else {
        Err(Error::Hypothesis(format!(
            "propagate_small: certified child bound 2^{} exceeds eps^(1/20) = 2^{}",
            best.log2_upper(),
            target.log2_upper()
        )))
    }
}

/// Tail bound from a Grandeur certificate alone (one variable).
pub fn grandeur_tail_bound(g: &Grandeur, u: u32, r_upper: Mag) -> Result<Mag> {
    let dummy = BoundedSeries::from_coeffs(Vec::new(), g.clone());
    dummy.tail_bound(u, r_upper)
}

/// Zero near a point: if |f(c)| is small, either a certified zero lies
/// within exp(-sqrt(-log|f(c)|)) of c, or f is uniformly small on D(0,1/2).
pub fn zero_near(
    f: &BoundedSeries,
    c: &BallComplex,
    consts: &ZeroConstants,
    prec: u32,
) -> Result<ZeroReport> {
    let recentered_trunc = f.coeffs_uni().len() as u32;
    let fc = f.recenter(c, recentered_trunc, prec)?;
    let eps = fc.coeffs_uni()[0].abs_upper();
    if eps.cmp_mag(&Mag { man: 1, exp: 0 }) != std::cmp::Ordering::Less {
        return Err(Error::Hypothesis("zero_near: |f(c)| < 1 fails".into()));
    }
    let (cx, cy) = c.to_f64s();
    let abs_c = cx.hypot(cy);
    let scale = 1.0 - abs_c;
    // stability-lemma precondition at the working constant
    let eps_ln = mag_ln_f64(eps);
    let nu_ln = -(scale.powi(14)) * (-eps_ln).sqrt() / consts.c14;
    let a = mag_ln_f64(f.grandeur.a).max(0.0);
    let n = f64::from(f.grandeur.n[0]);
    if -nu_ln < consts.c14 * (a + n * n * (1.0 + scale.ln().abs())) {
        return Err(Error::Hypothesis(
            "zero_near: -log nu below c14 (log A + n^2 (1 + |log(1-|c|)|))".into(),
        ));
    }
    match smallest_zero(&fc, consts, prec)? {
        ZeroReport {
            outcome: ZeroOutcome::ZeroFound { xi },
            ..
        } => {
            // xi is in recentered coordinates: z = c + y (1 - |c|)
            let scale_ball = BallReal::from_i64(1).sub(&c.abs_ball(prec), prec);
            let z = c.add(&xi.mul_real(&scale_ball, prec), prec);
            Ok(ZeroReport {
                outcome: ZeroOutcome::ZeroFound { xi: z },
                count: None,
                roots: Vec::new(),
                circle_radius: None,
            })
        }
        ZeroReport {
            outcome: ZeroOutcome::UniformlySmall { bound },
            ..
        } => {
            // propagate from D_c to D(0,1/2) through child disks
            let mut center = (cx, cy);
            let mut b = bound;
            let steps = ((-(scale.ln())) / (1.25f64).ln()).ceil() as usize + 1;
            for _ in 0..steps {
                b = propagate_small(f, center, b, consts, prec)?;
                let (nc, _) = child_disk(center);
                center = nc;
                if center.0.hypot(center.1) <= 0.2 {
                    b = propagate_small(f, center, b, consts, prec)?;
                    break;
                }
            }
            Ok(ZeroReport {
                outcome: ZeroOutcome::UniformlySmall { bound: b },
                count: None,
                roots: Vec::new(),
                circle_radius: None,
            })
        }
    }
}

/// Global zero search on D(0, R') for an adaptively chosen R' in
/// [r - 4 u rho, r]: certified count and root balls of radius ~4 rho.
pub fn find_zeros(
    f: &BoundedSeries,
    r: f64,
    rho: f64,
    consts: &ZeroConstants,
    prec: u32,
) -> Result<ZeroReport> {
    assert_eq!(f.nvars(), 1);
    if !(0.5..1.0).contains(&r) || !(0.0..1.0).contains(&rho) {
        return Err(Error::Invalid("find_zeros: need 1/2 <= r < 1, 0 < rho < 1".into()));
    }
    // eps = exp(-(log rho)^2); u the smallest integer >= 4 |log eps| / |log r|
    let log_rho = rho.ln();
    let log_eps = -(log_rho * log_rho);
    let mut u = ((4.0 * (-log_eps) / (-(r.ln()))).ceil() as u32).max(4);
    let eps_mag = Mag::from_f64_upper((log_eps).exp() * (1.0 + 1e-12));
    let r_up = Mag::from_f64_upper(r * (1.0 + 1e-12));
    // certify the tail at u (bump if needed)
    loop {
        if u as usize > f.coeffs_uni().len() {
            return Err(Error::Truncation(format!(
                "find_zeros: need {u} stored coefficients, have {}",
                f.coeffs_uni().len()
            )));
        }
        let t = f.tail_bound(u, r_up)?;
        if t.cmp_mag(&eps_mag) != std::cmp::Ordering::Greater {
            break;
        }
        if (u as usize) == f.coeffs_uni().len() {
            return Err(Error::Truncation(
                "find_zeros: stored truncation cannot reach the required tail".into(),
            ));
        }
        u = (u + u / 4 + 1).min(f.coeffs_uni().len() as u32);
    }
    // uniform smallness short-circuit at the lemma's branch-1 bound
    let branch1 = Mag::from_f64_upper(((1.0 - r).powi(14) * log_rho / consts.c16).exp());
    if let Ok(sup) = sup_bound_on_disk(f, Mag::from_f64_upper(0.5)) {
        if sup.cmp_mag(&branch1) != std::cmp::Ordering::Greater {
            return Ok(ZeroReport {
                outcome: ZeroOutcome::UniformlySmall { bound: branch1 },
                count: None,
                roots: Vec::new(),
                circle_radius: None,
            });
        }
    }
    // principal part roots (heuristic), then certified selection of R' and
    // winding-certified counts
    let pu = BallPoly::new(f.coeffs_uni()[..u as usize].to_vec());
    let cf: Vec<C64> = pu
        .coeffs
        .iter()
        .map(|c| {
            let (re, im) = c.to_f64s();
            C64::new(re, im)
        })
        .collect();
    let approx = aberth_roots(&cf, 60 + u as usize / 4);
    // choose R' in [r - 4 u rho, r] away from approximate root moduli
    let lo_r = (r - 4.0 * f64::from(u) * rho).max(r * 0.5).max(2.0 * rho);
    let mut moduli: Vec<f64> = approx
        .iter()
        .map(|z| z.norm())
        .filter(|&m| (lo_r - 0.1..=r + 0.1).contains(&m))
        .collect();
    moduli.push(lo_r);
    moduli.push(r);
    moduli.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mut best_gap = (0.0, lo_r);
    for w in moduli.windows(2) {
        if w[1] - w[0] > best_gap.0 {
            best_gap = (w[1] - w[0], 0.5 * (w[0] + w[1]));
        }
    }
    let r_prime = best_gap.1.clamp(lo_r, r);
    let evalf = |z: &BallComplex, p: u32| -> Option<BallComplex> {
        f.eval_with_bound(std::slice::from_ref(z), r_up, p).ok()
    };
    let count = winding_number(
        &evalf,
        &BallComplex::zero(),
        &BallReal::from_f64(r_prime),
        prec,
    )
    .ok_or(Error::PrecisionExhausted {
        prec,
        what: "find_zeros: boundary winding not certified".into(),
    })?;
    if count < 0 {
        return Err(Error::Invalid("negative winding".into()));
    }
    // cluster the approximate roots inside R' and certify each cluster
    let inside: Vec<C64> = approx
        .iter()
        .copied()
        .filter(|z| z.norm() < r_prime)
        .collect();
    let clusters = cluster_points(&inside, 4.0 * rho);
    let mut roots = Vec::new();
    let mut certified_total = 0i64;
    for cl in &clusters {
        let (cx, cy, spread) = *cl;
        let mut ring = (spread + rho).max(rho * 0.5);
        let mut mult = None;
        for _ in 0..5 {
            if let Some(m) = winding_number(
                &evalf,
                &BallComplex::from_f64(cx, cy),
                &BallReal::from_f64(ring),
                prec,
            ) {
                mult = Some(m);
                break;
            }
            ring *= 1.7;
        }
        let Some(m) = mult else {
            return Err(Error::PrecisionExhausted {
                prec,
                what: "find_zeros: cluster winding not certified".into(),
            });
        };
        if m > 0 {
            let mut ball = BallComplex::from_f64(cx, cy);
            ball.rad = ball.rad.add(Mag::from_f64_upper(ring));
            certified_total += m;
            for _ in 0..m {
                roots.push(ball.clone());
            }
        }
    }
    if certified_total != count {
        return Err(Error::PrecisionExhausted {
            prec,
            what: format!(
                "find_zeros: cluster multiplicities {certified_total} do not reach boundary count {count}"
            ),
        });
    }
    Ok(ZeroReport {
        outcome: match roots.first() {
            Some(b) => ZeroOutcome::ZeroFound { xi: b.clone() },
            None => ZeroOutcome::UniformlySmall {
                bound: sup_bound_on_disk(f, Mag::from_f64_upper(0.5))?,
            },
        },
        count: Some(count as u32),
        roots,
        circle_radius: Some(r_prime),
    })
}

fn cluster_points(pts: &[C64], dist: f64) -> Vec<(f64, f64, f64)> {
    let n = pts.len();
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
            if pts[i].sub(pts[j]).norm() <= dist {
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
    groups
        .values()
        .map(|idxs| {
            let cx = idxs.iter().map(|&i| pts[i].re).sum::<f64>() / idxs.len() as f64;
            let cy = idxs.iter().map(|&i| pts[i].im).sum::<f64>() / idxs.len() as f64;
            let spread = idxs
                .iter()
                .map(|&i| (pts[i].re - cx).hypot(pts[i].im - cy))
                .fold(0.0, f64::max);
            (cx, cy, spread)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Series from exact small-integer/rational coefficients, padded.
    fn series_pad(coeffs: &[(f64, f64)], pad_to: usize, a: f64, n: u32) -> BoundedSeries {
        let mut v: Vec<BallComplex> = coeffs
            .iter()
            .map(|&(re, im)| BallComplex::from_f64(re, im))
            .collect();
        v.resize(pad_to, BallComplex::zero());
        BoundedSeries::from_coeffs(v, Grandeur::new(Mag::from_f64_upper(a), vec![n]))
    }

    #[test]
    fn polygon_one_minus_z() {
        let f = series_pad(&[(1.0, 0.0), (-1.0, 0.0)], 40, 1.0, 1);
        let np = newton_polygon(&f, 1.0).unwrap();
        assert_eq!(np.vertices.len(), 2);
        assert_eq!(np.vertices[0].0, 0);
        assert_eq!(np.vertices[1].0, 1);
        assert_eq!(np.slopes.len(), 1);
        assert!(np.slopes[0].0.abs() < 1e-3 && np.slopes[0].1.abs() < 1e-3);
    }

    #[test]
    fn polygon_quadratic() {
        // 1 - 3z + 2z^2: vertices (0,0),(1,-ln3),(2,-ln2); slopes -ln3, ln(3/2)
        let f = series_pad(&[(1.0, 0.0), (-3.0, 0.0), (2.0, 0.0)], 40, 3.0, 1);
        let np = newton_polygon(&f, 2.0).unwrap();
        assert_eq!(
            np.vertices.iter().map(|v| v.0).collect::<Vec<_>>(),
            vec![0, 1, 2]
        );
        assert!((np.vertices[1].1 + 3f64.ln()).abs() < 1e-6);
        assert!((np.slopes[0].0 + 3f64.ln()).abs() < 1e-3);
        assert!((np.slopes[1].0 - 1.5f64.ln()).abs() < 1e-3);
        // zero moduli 1/2 and 1 are within log 3 of some slope
        for m in [0.5f64, 1.0] {
            let lm = m.ln();
            assert!(np
                .slopes
                .iter()
                .any(|&(lo, hi)| lm >= lo - LN3 - 1e-6 && lm <= hi + LN3 + 1e-6));
        }
    }

    #[test]
    fn polygon_even_gap() {
        // 1 + z^2: f_1 = 0 absent; single segment slope 0
        let f = series_pad(&[(1.0, 0.0), (0.0, 0.0), (1.0, 0.0)], 40, 1.0, 1);
        let np = newton_polygon(&f, 1.0).unwrap();
        assert_eq!(
            np.vertices.iter().map(|v| v.0).collect::<Vec<_>>(),
            vec![0, 2]
        );
        assert!(np.slopes[0].0.abs() < 1e-3);
    }

    #[test]
    fn count_zeros_basic() {
        // 1 - z at alpha = -2: no zeros in D(0, e^-2)
        let f = series_pad(&[(1.0, 0.0), (-1.0, 0.0)], 40, 1.0, 1);
        let ang = SafeAngle::certify(&f, -2.0, MarginKind::P3).unwrap();
        assert_eq!(count_zeros(&f, &ang).unwrap(), 0);
    }

    #[test]
    fn count_zeros_quadratic() {
        // roots 1/2 and 1: alpha = -2.3 certifies and counts... e^-2.3 = 0.1: 0 zeros.
        let f = series_pad(&[(1.0, 0.0), (-3.0, 0.0), (2.0, 0.0)], 60, 3.0, 1);
        let ang = SafeAngle::certify(&f, -2.3, MarginKind::P3).unwrap();
        assert_eq!(count_zeros(&f, &ang).unwrap(), 0);
        // between the roots with margin: need alpha with distance > ln3 from
        // slopes -ln3=-1.0986 and ln1.5=0.405: e.g. alpha in
        // (-1.0986+1.0986, ...) is empty below 0... use clarified series.
        let g = clarify_slopes(&f, 96);
        // g has roots 1/4 and 1: slopes -ln4 and ln(4): alpha = -ln(2.soft)
        // distance to -1.386 and 1.386 > 1.0986: alpha in (-0.288, ...) no...
        // alpha must also be < -ln3: distance from -ln4 is 0.288 < ln3. Use
        // one more clarification: roots 1/16 and 1, slopes -ln16, ln16.
        let g2 = clarify_slopes(&g, 96);
        let ang2 = SafeAngle::certify(&g2, -1.35, MarginKind::P3).unwrap();
        // D(0, e^-1.35 = 0.259): contains 1/16, not 1
        assert_eq!(count_zeros(&g2, &ang2).unwrap(), 1);
    }

    #[test]
    fn clarify_squares_roots() {
        // f = 1 - 3z + 2z^2 (roots 1/2, 1) -> g roots 1/4, 1
        let f = series_pad(&[(1.0, 0.0), (-3.0, 0.0), (2.0, 0.0)], 8, 3.0, 1);
        let g = clarify_slopes(&f, 96);
        // g(z) = (1 - 3w + 2w^2)(1 + 3w + 2w^2) even part with w^2 = z:
        // product = 1 - 9w^2 + 4w^2 + ... compute: 1 - 5z + 4z^2 (roots 1/4, 1)
        assert!((g.coeff(&[0]).re.to_f64() - 1.0).abs() < 1e-12);
        assert!((g.coeff(&[1]).re.to_f64() + 5.0).abs() < 1e-12);
        assert!((g.coeff(&[2]).re.to_f64() - 4.0).abs() < 1e-12);
    }

    #[test]
    fn circle_bound_sound() {
        // f = 1 - z at alpha = -3 (P4): bound 1/3; true min over circle is
        // 1 - e^-3 ~ 0.95
        let f = series_pad(&[(1.0, 0.0), (-1.0, 0.0)], 40, 1.0, 1);
        let ang = SafeAngle::certify(&f, -3.0, MarginKind::P4).unwrap();
        let b = circle_lower_bound(&f, &ang).unwrap();
        assert!((b - 1.0 / 3.0).abs() < 1e-6);
        // sampled min
        let mut minv = f64::MAX;
        for i in 0..1000 {
            let th = 2.0 * std::f64::consts::PI * (i as f64) / 1000.0;
            let z = C64::new((-3.0f64).exp() * th.cos(), (-3.0f64).exp() * th.sin());
            let v = C64::new(1.0, 0.0).sub(z);
            minv = minv.min(v.norm());
        }
        assert!(b <= minv);
    }

    #[test]
    fn smallest_zero_planted() {
        // F = 1e-100 + z: tiny root at -1e-100
        let mut coeffs = vec![BallComplex::from_f64(1e-100, 0.0), BallComplex::one()];
        coeffs.resize(40, BallComplex::zero());
        let f = BoundedSeries::from_coeffs(coeffs, Grandeur::new(Mag { man: 1, exp: 0 }, vec![1]));
        let rep = smallest_zero(&f, &ZeroConstants::default(), 128).unwrap();
        match rep.outcome {
            ZeroOutcome::ZeroFound { xi } => {
                // |xi| <= e^{-sqrt(100 ln 10)} ~ e^{-15.2}; actual 1e-100
                let up = xi.abs_upper().to_f64();
                assert!(up.ln() <= -(100.0 * 10f64.ln()).sqrt() + 1e-6, "up = {up:e}");
            }
            _ => panic!("expected a located zero"),
        }
    }

    #[test]
    fn smallest_zero_uniformly_small() {
        // F = 1e-100 (1 + z/4): no small zero; uniformly small
        let mut coeffs = vec![
            BallComplex::from_f64(1e-100, 0.0),
            BallComplex::from_f64(0.25e-100, 0.0),
        ];
        coeffs.resize(8, BallComplex::zero());
        let f = BoundedSeries::from_coeffs(coeffs, Grandeur::new(Mag { man: 1, exp: 0 }, vec![1]));
        let rep = smallest_zero(&f, &ZeroConstants::default(), 128).unwrap();
        match rep.outcome {
            ZeroOutcome::UniformlySmall { bound } => {
                let s = (100.0 * 10f64.ln()).sqrt();
                assert!(bound.to_f64() <= (-s / 200.0).exp() * 1.0001);
            }
            _ => panic!("expected uniform smallness"),
        }
    }

    #[test]
    fn smallest_zero_rejects_big_f0() {
        let f = series_pad(&[(1.0, 0.0), (1.0, 0.0)], 8, 1.0, 1);
        assert!(matches!(
            smallest_zero(&f, &ZeroConstants::default(), 64),
            Err(Error::Hypothesis(_))
        ));
    }

    #[test]
    fn zero_near_exact_root() {
        // f = z - 1/4, c = 1/4 + 1e-30: root at exactly 1/4
        let quarter = BallReal::from_rational(
            &num_bigint::BigInt::from(1),
            &num_bigint::BigInt::from(4),
            192,
        );
        let mut coeffs = vec![
            BallComplex::from_real(&quarter.neg()),
            BallComplex::one(),
        ];
        coeffs.resize(60, BallComplex::zero());
        let f = BoundedSeries::from_coeffs(coeffs, Grandeur::new(Mag { man: 1, exp: 0 }, vec![1]));
        let c = BallComplex::from_real(&quarter.add(&BallReal::from_f64(1e-30), 192));
        let rep = zero_near(&f, &c, &ZeroConstants::default(), 192).unwrap();
        match rep.outcome {
            ZeroOutcome::ZeroFound { xi } => {
                assert!(xi.contains(&BallComplex::from_real(&quarter)) ||
                    xi.sub(&BallComplex::from_real(&quarter), 192).abs_upper().to_f64() < 1e-12);
            }
            _ => panic!("expected zero"),
        }
    }

    #[test]
    fn find_zeros_planted_roots() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        // product of 6 random roots inside |z| < 0.4
        let roots: Vec<(f64, f64)> = (0..6)
            .map(|_| {
                let r = rng.gen_range(0.05..0.4);
                let t = rng.gen_range(0.0..std::f64::consts::TAU);
                (r * t.cos(), r * t.sin())
            })
            .collect();
        let mut coeffs = vec![BallComplex::one()];
        for &(x, y) in &roots {
            let root = BallComplex::from_f64(x, y);
            let mut next = vec![BallComplex::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c, 128);
                next[i] = next[i].sub(&c.mul(&root, 128), 128);
            }
            coeffs = next;
        }
        // normalize leading-to-constant ordering: currently monic in z
        let pad = 400usize;
        coeffs.resize(pad, BallComplex::zero());
        let f = BoundedSeries::from_coeffs(
            coeffs,
            Grandeur::new(Mag::from_f64_upper(2.0), vec![1]),
        );
        let rho = 2e-3;
        let rep = find_zeros(&f, 0.9, rho, &ZeroConstants::default(), 96).unwrap();
        assert_eq!(rep.count, Some(6));
        assert_eq!(rep.roots.len(), 6);
        for &(x, y) in &roots {
            let hit = rep.roots.iter().any(|b| {
                let (bx, by) = b.to_f64s();
                (bx - x).hypot(by - y) <= 4.0 * rho + b.rad.to_f64()
            });
            assert!(hit, "root ({x},{y}) not recovered");
        }
    }

    #[test]
    fn find_zeros_entire_no_roots() {
        // exp-like series sum z^k/k!: no zeros anywhere
        let mut coeffs = Vec::new();
        let mut inv_fact = BallReal::from_i64(1);
        for k in 0..60u32 {
            if k > 0 {
                inv_fact = inv_fact
                    .div(&BallReal::from_i64(i64::from(k)), 128)
                    .unwrap();
            }
            coeffs.push(BallComplex::from_real(&inv_fact));
        }
        let f = BoundedSeries::from_coeffs(coeffs, Grandeur::new(Mag { man: 1, exp: 0 }, vec![1]));
        let rep = find_zeros(&f, 0.9, 5e-3, &ZeroConstants::default(), 96).unwrap();
        assert_eq!(rep.count, Some(0));
    }
}
