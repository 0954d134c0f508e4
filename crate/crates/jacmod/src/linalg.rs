//! Exact linear algebra over Q, Z and Z[i].
//!
//! Everything here is exact: rational Gauss elimination for kernels and
//! solving, Faddeev-LeVerrier for characteristic polynomials, Hermite
//! normal form for integer row lattices, a small textbook LLL for the
//! low-rank lattices this library reduces, and a fraction-free kernel over
//! the Gaussian integers used by the dualization pipeline.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub fn q_from_i64(v: i64) -> Q {
    Q::from_integer(BigInt::from(v))
}

/// Row-major dense rational matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct QMat {
    pub rows: usize,
    pub cols: usize,
    pub a: Vec<Vec<Q>>,
}

impl QMat {
    pub fn new(a: Vec<Vec<Q>>) -> QMat {
        let rows = a.len();
        let cols = if rows > 0 { a[0].len() } else { 0 };
        assert!(a.iter().all(|r| r.len() == cols));
        QMat { rows, cols, a }
    }

    pub fn zero(rows: usize, cols: usize) -> QMat {
        QMat {
            rows,
            cols,
            a: vec![vec![Q::zero(); cols]; rows],
        }
    }

    pub fn identity(n: usize) -> QMat {
        let mut m = QMat::zero(n, n);
        for i in 0..n {
            m.a[i][i] = Q::one();
        }
        m
    }

    pub fn from_int_rows(rows: &[Vec<BigInt>]) -> QMat {
        QMat::new(
            rows.iter()
                .map(|r| r.iter().map(|x| Q::from_integer(x.clone())).collect())
                .collect(),
        )
    }

    pub fn mul(&self, other: &QMat) -> QMat {
        assert_eq!(self.cols, other.rows);
        let mut out = QMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self.a[i][k].is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    if other.a[k][j].is_zero() {
                        continue;
                    }
                    let t = &self.a[i][k] * &other.a[k][j];
                    out.a[i][j] += t;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        self.a
            .iter()
            .map(|row| {
                let mut s = Q::zero();
                for (x, y) in row.iter().zip(v) {
                    if !x.is_zero() && !y.is_zero() {
                        s += x * y;
                    }
                }
                s
            })
            .collect()
    }

    pub fn transpose(&self) -> QMat {
        let mut out = QMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.a[j][i] = self.a[i][j].clone();
            }
        }
        out
    }

    pub fn trace(&self) -> Q {
        (0..self.rows.min(self.cols)).map(|i| self.a[i][i].clone()).sum()
    }

    /// Reduced row echelon form in place; returns pivot column indices.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let piv = (r..self.rows).find(|&i| !self.a[i][c].is_zero());
            let Some(p) = piv else { continue };
            self.a.swap(r, p);
            let inv = self.a[r][c].clone();
            for x in self.a[r].iter_mut() {
                if !x.is_zero() {
                    *x = &*x / &inv;
                }
            }
            for i in 0..self.rows {
                if i != r && !self.a[i][c].is_zero() {
                    let f = self.a[i][c].clone();
                    for j in 0..self.cols {
                        if !self.a[r][j].is_zero() {
                            let t = &f * &self.a[r][j];
                            self.a[i][j] -= t;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref().len()
    }

    /// Basis of the right kernel {v : A v = 0}.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![Q::zero(); self.cols];
            v[f] = Q::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.a[r][f].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Solve A x = b (one solution) if consistent.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let mut m = QMat::zero(self.rows, self.cols + 1);
        for i in 0..self.rows {
            m.a[i][..self.cols].clone_from_slice(&self.a[i]);
            m.a[i][self.cols] = b[i].clone();
        }
        let pivots = m.rref();
        if pivots.contains(&self.cols) {
            return None; // inconsistent
        }
        let mut x = vec![Q::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = m.a[r][self.cols].clone();
        }
        Some(x)
    }

    /// Inverse (square, nonsingular).
    pub fn inverse(&self) -> Option<QMat> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m = QMat::zero(n, 2 * n);
        for i in 0..n {
            m.a[i][..n].clone_from_slice(&self.a[i]);
            m.a[i][n + i] = Q::one();
        }
        let pivots = m.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        let mut out = QMat::zero(n, n);
        for i in 0..n {
            out.a[i].clone_from_slice(&m.a[i][n..]);
        }
        Some(out)
    }

    /// Characteristic polynomial, monic, coefficients low degree first.
    /// Faddeev-LeVerrier: fine at the small dimensions used here.
    pub fn charpoly(&self) -> Vec<Q> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut c = vec![Q::zero(); n + 1];
        c[n] = Q::one();
        let mut m = QMat::identity(n);
        for k in 1..=n {
            m = self.mul(&m);
            let ck = -(m.trace() / q_from_i64(k as i64));
            c[n - k] = ck.clone();
            for i in 0..n {
                m.a[i][i] += &ck;
            }
        }
        c
    }

    pub fn det(&self) -> Q {
        let cp = self.charpoly();
        let d = cp[0].clone();
        if self.rows % 2 == 1 {
            -d
        } else {
            d
        }
    }
}

/// Hermite normal form of the row lattice (lower-left style); returns the
/// nonzero basis rows.
pub fn hnf_row_basis(rows: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let cols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows.to_vec();
    let mut row = 0;
    for col in 0..cols {
        if row >= m.len() {
            break;
        }
        // gcd-reduce all entries in this column below `row` into one pivot
        loop {
            let mut best: Option<usize> = None;
            for i in row..m.len() {
                if !m[i][col].is_zero() {
                    best = Some(match best {
                        None => i,
                        Some(b) => {
                            if m[i][col].abs() < m[b][col].abs() {
                                i
                            } else {
                                b
                            }
                        }
                    });
                }
            }
            let Some(b) = best else { break };
            m.swap(row, b);
            let mut any = false;
            let pivot = m[row][col].clone();
            for i in row + 1..m.len() {
                if !m[i][col].is_zero() {
                    let q = div_round(&m[i][col], &pivot);
                    if !q.is_zero() {
                        for j in 0..cols {
                            let t = &q * &m[row][j];
                            m[i][j] -= t;
                        }
                    }
                    if !m[i][col].is_zero() {
                        any = true;
                    }
                }
            }
            if !any {
                break;
            }
        }
        if !m[row][col].is_zero() {
            if m[row][col].is_negative() {
                for x in m[row].iter_mut() {
                    *x = -&*x;
                }
            }
            // reduce rows above
            let pivot = m[row][col].clone();
            for i in 0..row {
                let q = div_floor_bi(&m[i][col], &pivot);
                if !q.is_zero() {
                    for j in 0..cols {
                        let t = &q * &m[row][j];
                        m[i][j] -= t;
                    }
                }
            }
            row += 1;
        }
    }
    m.truncate(row);
    m
}

fn div_round(a: &BigInt, b: &BigInt) -> BigInt {
    // nearest integer of a/b
    let two_a = a * 2;
    let q = num_integer::Integer::div_floor(&two_a, b);
    num_integer::Integer::div_floor(&(q + 1), &BigInt::from(2))
}

fn div_floor_bi(a: &BigInt, b: &BigInt) -> BigInt {
    num_integer::Integer::div_floor(a, b)
}

/// Textbook LLL (delta = 3/4) on integer rows; small ranks only.
pub fn lll_int(basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut b: Vec<Vec<BigInt>> = basis.to_vec();
    let n = b.len();
    if n <= 1 {
        return b;
    }
    let dot = |x: &[BigInt], y: &[BigInt]| -> Q {
        let mut s = BigInt::zero();
        for (a, c) in x.iter().zip(y) {
            s += a * c;
        }
        Q::from_integer(s)
    };
    // rational GSO data, recomputed incrementally
    let compute_gso = |b: &Vec<Vec<BigInt>>| -> (Vec<Vec<Q>>, Vec<Q>) {
        let n = b.len();
        let mut mu = vec![vec![Q::zero(); n]; n];
        let mut nsq = vec![Q::zero(); n];
        let mut star: Vec<Vec<Q>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut v: Vec<Q> = b[i].iter().map(|x| Q::from_integer(x.clone())).collect();
            for j in 0..i {
                let m = if nsq[j].is_zero() {
                    Q::zero()
                } else {
                    let mut num = Q::zero();
                    for (x, y) in b[i].iter().zip(&star[j]) {
                        num += Q::from_integer(x.clone()) * y;
                    }
                    num / nsq[j].clone()
                };
                mu[i][j] = m.clone();
                for (t, s) in v.iter_mut().zip(&star[j]) {
                    *t -= &m * s;
                }
            }
            let mut s = Q::zero();
            for t in &v {
                s += t * t;
            }
            nsq[i] = s;
            star.push(v);
        }
        (mu, nsq)
    };
    let (mut mu, mut nsq) = compute_gso(&b);
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let delta = Q::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        assert!(guard < 1_000_000, "lll_int: too many iterations");
        // size-reduce b_k against b_{k-1}..b_0
        for j in (0..k).rev() {
            if mu[k][j].clone().abs() > half {
                let q = round_q(&mu[k][j]);
                if !q.is_zero() {
                    for t in 0..b[k].len() {
                        let d = &q * &b[j][t];
                        b[k][t] -= d;
                    }
                    let (m2, n2) = compute_gso(&b);
                    mu = m2;
                    nsq = n2;
                }
            }
        }
        // Lovasz condition
        let lhs = nsq[k].clone();
        let rhs = (delta.clone() - &mu[k][k - 1] * &mu[k][k - 1]) * nsq[k - 1].clone();
        if lhs < rhs {
            b.swap(k, k - 1);
            let (m2, n2) = compute_gso(&b);
            mu = m2;
            nsq = n2;
            k = k.saturating_sub(1).max(1);
        } else {
            k += 1;
        }
    }
    b
}

fn round_q(q: &Q) -> BigInt {
    let two = BigInt::from(2);
    num_integer::Integer::div_floor(&(q.numer() * &two + q.denom()), &(q.denom() * &two))
}

/// Gaussian integer.
#[derive(Clone, Debug, PartialEq)]
pub struct Gi {
    pub re: BigInt,
    pub im: BigInt,
}

impl Gi {
    pub fn zero() -> Gi {
        Gi {
            re: BigInt::zero(),
            im: BigInt::zero(),
        }
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn mul(&self, o: &Gi) -> Gi {
        Gi {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
    pub fn sub(&self, o: &Gi) -> Gi {
        Gi {
            re: &self.re - &o.re,
            im: &self.im - &o.im,
        }
    }
    /// Exact division (panics if not divisible — used only where theory
    /// guarantees divisibility, i.e. Bareiss pivots).
    pub fn div_exact(&self, o: &Gi) -> Gi {
        let n = &o.re * &o.re + &o.im * &o.im;
        let re_num = &self.re * &o.re + &self.im * &o.im;
        let im_num = &self.im * &o.re - &self.re * &o.im;
        let (qr, rr) = num_integer::Integer::div_rem(&re_num, &n);
        let (qi, ri) = num_integer::Integer::div_rem(&im_num, &n);
        assert!(rr.is_zero() && ri.is_zero(), "Gi::div_exact: not divisible");
        Gi { re: qr, im: qi }
    }
}

/// One kernel vector of an r x c matrix over Z[i] with r < c, by
/// fraction-free (Bareiss) elimination. Returns a vector with entries in
/// Z[i], not all zero, in the exact kernel.
pub fn gaussian_kernel_vector(m: &[Vec<Gi>]) -> Vec<Gi> {
    let rows = m.len();
    let cols = m[0].len();
    assert!(rows < cols, "gaussian_kernel_vector: need a wide matrix");
    let mut a: Vec<Vec<Gi>> = m.to_vec();
    let mut prev = Gi {
        re: BigInt::one(),
        im: BigInt::zero(),
    };
    let mut pivot_cols: Vec<usize> = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let piv = (r..rows).find(|&i| !a[i][c].is_zero());
        let Some(p) = piv else { continue };
        a.swap(r, p);
        let pivot = a[r][c].clone();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let f = a[i][c].clone();
            for j in 0..cols {
                // Bareiss: (pivot*a[i][j] - f*a[r][j]) / prev
                let t = pivot.mul(&a[i][j]).sub(&f.mul(&a[r][j]));
                a[i][j] = t.div_exact(&prev);
            }
        }
        prev = pivot;
        pivot_cols.push(c);
        r += 1;
    }
    // pick a free column and back-substitute via the echelon structure
    let pivot_set: std::collections::HashSet<usize> = pivot_cols.iter().copied().collect();
    let free = (0..cols).find(|c| !pivot_set.contains(c)).expect("kernel exists");
    // After full (Gauss-Jordan style) elimination above, each pivot row has
    // zeros in all other pivot columns: row i reads p_i * x_{c_i} + m[i][free] * x_free = 0
    // with p_i the current pivot entry.
    let mut v = vec![Gi::zero(); cols];
    // common multiplier: product of pivots
    let mut prod = Gi {
        re: BigInt::one(),
        im: BigInt::zero(),
    };
    for (i, &pc) in pivot_cols.iter().enumerate() {
        prod = prod.mul(&a[i][pc]);
    }
    v[free] = prod.clone();
    for (i, &pc) in pivot_cols.iter().enumerate() {
        // x_pc = -m[i][free]/p_i * x_free
        let others = prod.div_exact(&a[i][pc]);
        v[pc] = Gi::zero().sub(&a[i][free].mul(&others));
    }
    // sanity: A v = 0 exactly
    for row in m {
        let mut s = Gi::zero();
        for (x, y) in row.iter().zip(&v) {
            s = Gi {
                re: s.re + x.mul(y).re,
                im: s.im + x.mul(y).im,
            };
        }
        assert!(s.is_zero(), "gaussian_kernel_vector: residual nonzero");
    }
    // divide out the content to keep numbers small
    let mut g = BigInt::zero();
    for x in &v {
        g = num_integer::Integer::gcd(&g, &x.re);
        g = num_integer::Integer::gcd(&g, &x.im);
    }
    if !g.is_zero() && g != BigInt::one() {
        for x in v.iter_mut() {
            x.re = &x.re / &g;
            x.im = &x.im / &g;
        }
    }
    v
}

/// Polynomials over Q, dense, low degree first.
pub mod qpoly {
    use super::*;

    pub fn trim(p: &mut Vec<Q>) {
        while p.len() > 1 && p.last().map(|x| x.is_zero()) == Some(true) {
            p.pop();
        }
    }

    pub fn deg(p: &[Q]) -> usize {
        p.len().saturating_sub(1)
    }

    pub fn mul(a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        out
    }

    /// Division with remainder (b nonzero).
    pub fn divrem(a: &[Q], b: &[Q]) -> (Vec<Q>, Vec<Q>) {
        let mut r: Vec<Q> = a.to_vec();
        trim(&mut r);
        let mut bb = b.to_vec();
        trim(&mut bb);
        let db = deg(&bb);
        let lead = bb[db].clone();
        if r.len() < bb.len() {
            return (vec![Q::zero()], r);
        }
        let mut q = vec![Q::zero(); r.len() - bb.len() + 1];
        while deg(&r) >= db && !(r.len() == 1 && r[0].is_zero()) {
            let dr = deg(&r);
            let f = &r[dr] / &lead;
            let shift = dr - db;
            q[shift] = f.clone();
            for i in 0..=db {
                let t = &f * &bb[i];
                r[shift + i] -= t;
            }
            trim(&mut r);
            if dr == 0 {
                break;
            }
        }
        (q, r)
    }

    pub fn gcd(a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        while !(y.len() == 1 && y[0].is_zero()) {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
        }
        // monic normalize
        let d = deg(&x);
        if !x[d].is_zero() {
            let lead = x[d].clone();
            for c in x.iter_mut() {
                *c = &*c / &lead;
            }
        }
        x
    }

    pub fn derivative(p: &[Q]) -> Vec<Q> {
        if p.len() <= 1 {
            return vec![Q::zero()];
        }
        (1..p.len())
            .map(|i| &p[i] * Q::from_integer(BigInt::from(i as u64)))
            .collect()
    }

    pub fn eval_q(p: &[Q], x: &Q) -> Q {
        let mut acc = Q::zero();
        for c in p.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qm(rows: Vec<Vec<i64>>) -> QMat {
        QMat::new(
            rows.into_iter()
                .map(|r| r.into_iter().map(q_from_i64).collect())
                .collect(),
        )
    }

    #[test]
    fn kernel_and_solve() {
        let m = qm(vec![vec![1, 2, 3], vec![2, 4, 6]]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            let r = m.mul_vec(v);
            assert!(r.iter().all(|x| x.is_zero()));
        }
        let m2 = qm(vec![vec![2, 1], vec![1, 3]]);
        let x = m2.solve(&[q_from_i64(5), q_from_i64(10)]).unwrap();
        assert_eq!(&x[0] * q_from_i64(2) + &x[1], q_from_i64(5));
    }

    #[test]
    fn charpoly_small() {
        // [[2,1],[1,2]] has charpoly x^2 - 4x + 3
        let m = qm(vec![vec![2, 1], vec![1, 2]]);
        let c = m.charpoly();
        assert_eq!(c, vec![q_from_i64(3), q_from_i64(-4), q_from_i64(1)]);
        assert_eq!(m.det(), q_from_i64(3));
    }

    #[test]
    fn inverse_round_trip() {
        let m = qm(vec![vec![2, 1, 0], vec![1, 3, 1], vec![0, 1, 4]]);
        let inv = m.inverse().unwrap();
        let id = m.mul(&inv);
        assert_eq!(id, QMat::identity(3));
    }

    #[test]
    fn hnf_basic() {
        let rows = vec![
            vec![BigInt::from(2), BigInt::from(0)],
            vec![BigInt::from(0), BigInt::from(2)],
            vec![BigInt::from(1), BigInt::from(1)],
        ];
        let h = hnf_row_basis(&rows);
        assert_eq!(h.len(), 2);
        // lattice index: |det| of the 2x2 basis should be 2
        let det = &h[0][0] * &h[1][1] - &h[0][1] * &h[1][0];
        assert_eq!(det.abs(), BigInt::from(2));
    }

    #[test]
    fn lll_reduces_skewed_basis() {
        let rows = vec![
            vec![BigInt::from(1), BigInt::from(0)],
            vec![BigInt::from(1000), BigInt::from(1)],
        ];
        let r = lll_int(&rows);
        // shortest vectors of this lattice have norm 1
        let n0: BigInt = r[0].iter().map(|x| x * x).sum();
        assert!(n0 <= BigInt::from(2));
    }

    #[test]
    fn gaussian_kernel() {
        // 1x2: [2+i, 1-i]: kernel (1-i, -(2+i)) up to scale
        let m = vec![vec![
            Gi {
                re: BigInt::from(2),
                im: BigInt::from(1),
            },
            Gi {
                re: BigInt::from(1),
                im: BigInt::from(-1),
            },
        ]];
        let v = gaussian_kernel_vector(&m);
        assert!(!v.iter().all(|x| x.is_zero()));
    }

    #[test]
    fn qpoly_gcd_and_div() {
        use qpoly::*;
        // (x-1)(x-2) and (x-1)(x-3): gcd = x-1
        let a = mul(&[q_from_i64(-1), q_from_i64(1)], &[q_from_i64(-2), q_from_i64(1)]);
        let b = mul(&[q_from_i64(-1), q_from_i64(1)], &[q_from_i64(-3), q_from_i64(1)]);
        let g = gcd(&a, &b);
        assert_eq!(g, vec![q_from_i64(-1), q_from_i64(1)]);
        let (q, r) = divrem(&a, &g);
        assert!(r.iter().all(|x| x.is_zero()) || r == vec![Q::zero()]);
        assert_eq!(q, vec![q_from_i64(-2), q_from_i64(1)]);
    }
}
