//! Dense linear algebra over a prime field F_q, sized for class-matrix work:
//! characteristic polynomials via Hessenberg reduction, kernels by Gaussian
//! elimination, and simultaneous eigenspace splitting for a commuting family.

use crate::numth::{mod_inv, mulmod};

#[derive(Clone, Copy, Debug)]
pub struct Fq {
    pub q: u64,
}

impl Fq {
    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mulmod(a, b, self.q)
    }

    pub fn inv(&self, a: u64) -> u64 {
        mod_inv(a, self.q)
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        crate::numth::mod_pow(a, e, self.q)
    }
}

pub type Mat = Vec<Vec<u64>>;

pub fn mat_vec(fq: &Fq, m: &Mat, v: &[u64]) -> Vec<u64> {
    m.iter()
        .map(|row| {
            let mut acc = 0u64;
            for (x, y) in row.iter().zip(v) {
                acc = fq.add(acc, fq.mul(*x, *y));
            }
            acc
        })
        .collect()
}

/// Characteristic polynomial det(xI − A), monic, coefficients ascending.
pub fn charpoly(fq: &Fq, a: &Mat) -> Vec<u64> {
    let n = a.len();
    if n == 0 {
        return vec![1];
    }
    // similarity reduction to upper Hessenberg with pivoting
    let mut h = a.clone();
    for col in 0..n.saturating_sub(2) {
        let pivot = ((col + 1)..n).find(|&r| h[r][col] != 0);
        let Some(pivot) = pivot else { continue };
        if pivot != col + 1 {
            h.swap(pivot, col + 1);
            for row in h.iter_mut() {
                row.swap(pivot, col + 1);
            }
        }
        let inv = fq.inv(h[col + 1][col]);
        for r in (col + 2)..n {
            if h[r][col] == 0 {
                continue;
            }
            let f = fq.mul(h[r][col], inv);
            for j in 0..n {
                let t = fq.mul(f, h[col + 1][j]);
                h[r][j] = fq.sub(h[r][j], t);
            }
            // column operation completing the similarity
            for i in 0..n {
                let t = fq.mul(f, h[i][r]);
                h[i][col + 1] = fq.add(h[i][col + 1], t);
            }
        }
    }
    // p_i(x) = (x − h_ii) p_{i−1}(x) − Σ_r h_{r,i} (β_{r+1}⋯β_i) p_{r−1}(x)
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for i in 1..=n {
        let mut p = poly_shift_mul(fq, &polys[i - 1], h[i - 1][i - 1]);
        let mut beta_prod = 1u64; // β_{r+1}⋯β_i accumulated downward from r = i−1
        for r in (1..i).rev() {
            beta_prod = fq.mul(beta_prod, h[r][r - 1]);
            if beta_prod == 0 {
                break;
            }
            let coef = fq.mul(h[r - 1][i - 1], beta_prod);
            if coef == 0 {
                continue;
            }
            for (k, c) in polys[r - 1].iter().enumerate() {
                let t = fq.mul(coef, *c);
                p[k] = fq.sub(p[k], t);
            }
        }
        polys.push(p);
    }
    polys.pop().unwrap()
}

/// (x − c) · p
fn poly_shift_mul(fq: &Fq, p: &[u64], c: u64) -> Vec<u64> {
    let mut out = vec![0u64; p.len() + 1];
    for (k, &a) in p.iter().enumerate() {
        out[k + 1] = fq.add(out[k + 1], a);
        let t = fq.mul(c, a);
        out[k] = fq.sub(out[k], t);
    }
    out
}

pub fn poly_eval(fq: &Fq, p: &[u64], x: u64) -> u64 {
    let mut acc = 0u64;
    for &c in p.iter().rev() {
        acc = fq.add(fq.mul(acc, x), c);
    }
    acc
}

/// Kernel basis of (A − λI), vectors of length n, reduced echelon form.
pub fn eigenspace(fq: &Fq, a: &Mat, lambda: u64) -> Vec<Vec<u64>> {
    let mut m = a.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = fq.sub(row[i], lambda);
    }
    kernel(fq, &mut m)
}

/// Kernel basis of the matrix (destructive), reduced echelon form.
pub fn kernel(fq: &Fq, m: &mut Mat) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    debug_assert!(m.iter().all(|r| r.len() == cols));
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| m[r][col] != 0);
        let Some(pivot) = pivot else { continue };
        m.swap(rank, pivot);
        let inv = fq.inv(m[rank][col]);
        for j in 0..cols {
            m[rank][j] = fq.mul(m[rank][j], inv);
        }
        for r in 0..rows {
            if r != rank && m[r][col] != 0 {
                let f = m[r][col];
                for j in 0..cols {
                    let t = fq.mul(f, m[rank][j]);
                    m[r][j] = fq.sub(m[r][j], t);
                }
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    let free_cols: Vec<usize> = (0..cols).filter(|c| !pivot_cols.contains(c)).collect();
    let mut basis = Vec::with_capacity(free_cols.len());
    for &fc in &free_cols {
        let mut v = vec![0u64; cols];
        v[fc] = 1;
        for (r, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = fq.sub(0, m[r][fc]);
        }
        basis.push(v);
    }
    basis
}

/// A subspace of F_q^k kept as a reduced-echelon list of spanning vectors.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub vectors: Vec<Vec<u64>>,
    pub pivots: Vec<usize>,
}

impl Subspace {
    pub fn full(k: usize) -> Self {
        let vectors = (0..k)
            .map(|i| {
                let mut v = vec![0u64; k];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { vectors, pivots: (0..k).collect() }
    }

    pub fn from_vectors(fq: &Fq, vecs: Vec<Vec<u64>>) -> Self {
        let mut vectors: Vec<Vec<u64>> = Vec::new();
        let mut pivots: Vec<usize> = Vec::new();
        for mut v in vecs {
            for (b, &p) in vectors.iter().zip(&pivots) {
                if v[p] != 0 {
                    let f = v[p];
                    for (x, y) in v.iter_mut().zip(b) {
                        let t = fq.mul(f, *y);
                        *x = fq.sub(*x, t);
                    }
                }
            }
            if let Some(p) = v.iter().position(|&c| c != 0) {
                let inv = fq.inv(v[p]);
                for x in v.iter_mut() {
                    *x = fq.mul(*x, inv);
                }
                // clear this pivot from earlier vectors to keep RREF
                for (b, _) in vectors.iter_mut().zip(&pivots) {
                    if b[p] != 0 {
                        let f = b[p];
                        for (x, y) in b.iter_mut().zip(&v) {
                            let t = fq.mul(f, *y);
                            *x = fq.sub(*x, t);
                        }
                    }
                }
                vectors.push(v);
                pivots.push(p);
            }
        }
        // deterministic order: sort by pivot
        let mut order: Vec<usize> = (0..pivots.len()).collect();
        order.sort_by_key(|&i| pivots[i]);
        let vectors = order.iter().map(|&i| vectors[i].clone()).collect();
        let pivots = order.iter().map(|&i| pivots[i]).collect();
        Subspace { vectors, pivots }
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    /// Coordinates of `v` (assumed in the span) w.r.t. the RREF basis.
    fn coordinates(&self, fq: &Fq, v: &[u64]) -> Vec<u64> {
        let coords: Vec<u64> = self.pivots.iter().map(|&p| v[p]).collect();
        debug_assert!({
            let mut residual = v.to_vec();
            for (c, b) in coords.iter().zip(&self.vectors) {
                for (x, y) in residual.iter_mut().zip(b) {
                    let t = fq.mul(*c, *y);
                    *x = fq.sub(*x, t);
                }
            }
            residual.iter().all(|&x| x == 0)
        });
        coords
    }

    /// Splits this (assumed invariant) subspace into the eigenspaces of the
    /// operator `b` restricted to it. Subspaces come back ordered by
    /// eigenvalue, which keeps the whole computation deterministic.
    pub fn split_by(&self, fq: &Fq, b: &Mat) -> Vec<Subspace> {
        let d = self.dim();
        if d <= 1 {
            return vec![self.clone()];
        }
        // restriction matrix R[i][j]: coords of B·w_j
        let mut r = vec![vec![0u64; d]; d];
        for j in 0..d {
            let img = mat_vec(fq, b, &self.vectors[j]);
            let coords = self.coordinates(fq, &img);
            for i in 0..d {
                r[i][j] = coords[i];
            }
        }
        let cp = charpoly(fq, &r);
        let mut out = Vec::new();
        let mut seen_dim = 0usize;
        for lambda in 0..fq.q {
            if seen_dim == d {
                break;
            }
            if poly_eval(fq, &cp, lambda) != 0 {
                continue;
            }
            let ker = eigenspace(fq, &r, lambda);
            if ker.is_empty() {
                continue;
            }
            // map coordinate vectors back to ambient space
            let ambient: Vec<Vec<u64>> = ker
                .iter()
                .map(|c| {
                    let mut v = vec![0u64; self.vectors[0].len()];
                    for (ci, w) in c.iter().zip(&self.vectors) {
                        if *ci != 0 {
                            for (x, y) in v.iter_mut().zip(w) {
                                let t = fq.mul(*ci, *y);
                                *x = fq.add(*x, t);
                            }
                        }
                    }
                    v
                })
                .collect();
            seen_dim += ambient.len();
            out.push(Subspace::from_vectors(fq, ambient));
        }
        assert_eq!(
            seen_dim, d,
            "operator must act semisimply with eigenvalues in F_q"
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det_poly_eval_oracle(fq: &Fq, a: &Mat, x: u64) -> u64 {
        // det(xI − A) by Gaussian elimination
        let n = a.len();
        let mut m = vec![vec![0u64; n]; n];
        for i in 0..n {
            for j in 0..n {
                m[i][j] = fq.sub(if i == j { x } else { 0 }, a[i][j]);
            }
        }
        let mut det = 1u64;
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r][col] != 0);
            let Some(pivot) = pivot else { return 0 };
            if pivot != col {
                m.swap(pivot, col);
                det = fq.sub(0, det);
            }
            det = fq.mul(det, m[col][col]);
            let inv = fq.inv(m[col][col]);
            for r in (col + 1)..n {
                if m[r][col] != 0 {
                    let f = fq.mul(m[r][col], inv);
                    for j in col..n {
                        let t = fq.mul(f, m[col][j]);
                        m[r][j] = fq.sub(m[r][j], t);
                    }
                }
            }
        }
        det
    }

    #[test]
    fn charpoly_matches_determinant_oracle() {
        let fq = Fq { q: 101 };
        let mut state = 1u64;
        for n in 1..=6 {
            let mut a = vec![vec![0u64; n]; n];
            for row in a.iter_mut() {
                for x in row.iter_mut() {
                    state = crate::numth::splitmix64(state);
                    *x = state % fq.q;
                }
            }
            let cp = charpoly(&fq, &a);
            assert_eq!(cp.len(), n + 1);
            assert_eq!(cp[n], 1, "monic");
            for x in [0u64, 1, 2, 17, 55, 100] {
                assert_eq!(
                    poly_eval(&fq, &cp, x),
                    det_poly_eval_oracle(&fq, &a, x),
                    "n = {n}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn kernel_finds_null_vectors() {
        let fq = Fq { q: 7 };
        // rows are all multiples of (1,2,3) mod 7: rank 1, kernel dim 2
        let mut m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![3, 6, 2]];
        let basis = kernel(&fq, &mut m);
        assert_eq!(basis.len(), 2);
        let a = vec![vec![1, 2, 3], vec![2, 4, 6], vec![3, 6, 2]];
        for v in &basis {
            assert!(mat_vec(&fq, &a, v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn splitting_a_diagonalizable_operator() {
        let fq = Fq { q: 13 };
        // two eigenvalues: 3 (double) and 5 (single), conjugated by a shear
        let d = vec![vec![3, 1, 0], vec![0, 3, 0], vec![0, 0, 5]];
        // make it diagonalizable: use diag(3,3,5) directly
        let diag = vec![vec![3, 0, 0], vec![0, 3, 0], vec![0, 0, 5]];
        let full = Subspace::full(3);
        let parts = full.split_by(&fq, &diag);
        let dims: Vec<usize> = parts.iter().map(|s| s.dim()).collect();
        assert_eq!(dims, vec![2, 1]);
        let _ = d;
    }
}
