//! Real symmetric tridiagonal eigenproblems: Sturm-sequence bisection for
//! selected eigenvalues and inverse iteration for their eigenvectors.

#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    diag: Vec<f64>,
    off: Vec<f64>,
}

impl SymTridiagonal {
    /// `off[i]` couples rows `i` and `i + 1`.
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(!diag.is_empty(), "empty matrix");
        assert_eq!(off.len() + 1, diag.len(), "off-diagonal length must be n - 1");
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    pub fn diag(&self) -> &[f64] {
        &self.diag
    }

    pub fn off(&self) -> &[f64] {
        &self.off
    }

    /// Gershgorin interval containing the whole spectrum.
    pub fn gershgorin_bounds(&self) -> (f64, f64) {
        let n = self.len();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (Sylvester inertia of
    /// `T − xI` through its LDLᵀ pivots).
    pub fn count_below(&self, x: f64) -> usize {
        let (lo, hi) = self.gershgorin_bounds();
        let tiny = f64::MIN_POSITIVE.sqrt() * (hi - lo).abs().max(1.0);
        let mut count = 0;
        let mut q = self.diag[0] - x;
        for i in 0..self.len() {
            if i > 0 {
                let e = self.off[i - 1];
                q = self.diag[i] - x - e * e / q;
            }
            if q.abs() < tiny {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (zero-based), by bisection to full
    /// working precision.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.len(), "eigenvalue index out of range");
        let (mut lo, mut hi) = self.gershgorin_bounds();
        let pad = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
        lo -= pad;
        hi += pad;
        for _ in 0..2000 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// The `count` smallest eigenvalues in ascending order.
    pub fn lowest_eigenvalues(&self, count: usize) -> Vec<f64> {
        (0..count.min(self.len())).map(|k| self.eigenvalue(k)).collect()
    }

    /// Unit eigenvector for an (accurately known) eigenvalue.
    pub fn eigenvector(&self, eigenvalue: f64) -> Vec<f64> {
        let n = self.len();
        let mut v = vec![1.0 / (n as f64).sqrt(); n];
        for _ in 0..4 {
            let mut w = self.shifted_solve(eigenvalue, &v);
            let norm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
            if !(norm > 0.0 && norm.is_finite()) {
                break;
            }
            w.iter_mut().for_each(|x| *x /= norm);
            v = w;
        }
        // Fix the overall sign so the first significant component is positive.
        let scale = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
        if let Some(first) = v.iter().find(|x| x.abs() > 1e-8 * scale) {
            if *first < 0.0 {
                v.iter_mut().for_each(|x| *x = -*x);
            }
        }
        v
    }

    /// Solves `(T − σI) y = rhs` by Gaussian elimination with partial
    /// pivoting; exact zero pivots are replaced by a tiny value.
    fn shifted_solve(&self, sigma: f64, rhs: &[f64]) -> Vec<f64> {
        let n = self.len();
        let (glo, ghi) = self.gershgorin_bounds();
        let tiny = f64::EPSILON * (ghi - glo).abs().max(f64::MIN_POSITIVE);

        // Row i of U occupies columns i, i+1, i+2.
        let mut d: Vec<f64> = self.diag.iter().map(|x| x - sigma).collect();
        let mut du: Vec<f64> = self.off.clone();
        du.push(0.0);
        let mut du2 = vec![0.0; n];
        let dl = &self.off;
        let mut b = rhs.to_vec();

        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let factor = dl[i] / d[i];
                d[i + 1] -= factor * du[i];
                b[i + 1] -= factor * b[i];
            } else {
                let factor = d[i] / dl[i];
                let (old_du, old_next_d, old_next_du) = (du[i], d[i + 1], du[i + 1]);
                d[i] = dl[i];
                du[i] = old_next_d;
                du2[i] = old_next_du;
                d[i + 1] = old_du - factor * old_next_d;
                du[i + 1] = -factor * old_next_du;
                b.swap(i, i + 1);
                b[i + 1] -= factor * b[i];
            }
        }
        if d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }

        let mut y = vec![0.0; n];
        for i in (0..n).rev() {
            let mut acc = b[i];
            if i + 1 < n {
                acc -= du[i] * y[i + 1];
            }
            if i + 2 < n {
                acc -= du2[i] * y[i + 2];
            }
            y[i] = acc / d[i];
        }
        y
    }
}

/// Sign changes in a sampled function, ignoring entries below
/// `rel_floor · max|v|`.
pub fn count_sign_changes(values: &[f64], rel_floor: f64) -> usize {
    let scale = values.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let floor = rel_floor * scale;
    let mut last_sign = 0.0;
    let mut changes = 0;
    for &v in values {
        if v.abs() <= floor {
            continue;
        }
        let sign = v.signum();
        if last_sign != 0.0 && sign != last_sign {
            changes += 1;
        }
        last_sign = sign;
    }
    changes
}
