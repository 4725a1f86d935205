//! Small dense linear-algebra helpers: rank-revealing elimination, null spaces
//! and orthonormal bases of spans.

use crate::algebra::Vec5;

/// Relative pivot threshold used for every rank decision.
pub const PIVOT_TOL: f64 = 1e-10;

/// Result of reducing a matrix to reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Rref {
    /// The reduced matrix, row-major.
    pub rows: Vec<Vec<f64>>,
    /// Column index of each pivot, in row order.
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the null space: one vector per free column, normalised so its
    /// largest-magnitude entry equals `+1`.
    pub fn nullspace(&self) -> Vec<Vec<f64>> {
        let free: Vec<usize> = (0..self.ncols).filter(|c| !self.pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0.0; self.ncols];
                v[f] = 1.0;
                for (r, &p) in self.pivots.iter().enumerate() {
                    v[p] = -self.rows[r][f];
                }
                normalize_max_entry(&mut v);
                v
            })
            .collect()
    }
}

/// Scales `v` so that the entry of largest magnitude becomes `+1`
/// (ties resolved by the first occurrence).
pub fn normalize_max_entry(v: &mut [f64]) {
    let mut best = 0usize;
    for (i, x) in v.iter().enumerate() {
        if x.abs() > v[best].abs() {
            best = i;
        }
    }
    let s = v[best];
    if s != 0.0 {
        for x in v.iter_mut() {
            *x /= s;
            if *x == 0.0 {
                *x = 0.0; // drop negative zero
            }
        }
    }
}

/// Gauss–Jordan elimination with partial pivoting. A column is treated as
/// pivot-free when its best candidate is below `PIVOT_TOL` times the largest
/// absolute entry of the input.
pub fn rref(a: &[Vec<f64>], ncols: usize) -> Rref {
    let mut m: Vec<Vec<f64>> = a.to_vec();
    let scale = m.iter().flatten().fold(0.0_f64, |acc, x| acc.max(x.abs()));
    let thresh = if scale == 0.0 { f64::INFINITY } else { PIVOT_TOL * scale };
    let nrows = m.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let (best, val) = (r..nrows)
            .map(|i| (i, m[i][c].abs()))
            .fold((r, -1.0), |acc, x| if x.1 > acc.1 { x } else { acc });
        if val <= thresh {
            for row in m.iter_mut().skip(r) {
                row[c] = 0.0;
            }
            continue;
        }
        m.swap(r, best);
        let p = m[r][c];
        for x in m[r].iter_mut() {
            *x /= p;
        }
        for i in 0..nrows {
            if i != r {
                let f = m[i][c];
                if f != 0.0 {
                    for j in 0..ncols {
                        m[i][j] -= f * m[r][j];
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    Rref { rows: m, pivots, ncols }
}

/// Numerical rank of a row-major matrix.
pub fn rank(a: &[Vec<f64>], ncols: usize) -> usize {
    rref(a, ncols).rank()
}

/// Orthonormal basis of the span of `vs` (modified Gram–Schmidt with the same
/// relative threshold as [`rref`]).
pub fn independent_subset(vs: &[Vec5]) -> Vec<Vec5> {
    let scale = vs.iter().fold(0.0_f64, |m, v| m.max(v.norm()));
    if scale == 0.0 {
        return Vec::new();
    }
    let mut basis: Vec<Vec5> = Vec::new();
    for v in vs {
        let mut w = *v;
        for _ in 0..2 {
            for b in &basis {
                w -= b * b.dot(&w);
            }
        }
        let n = w.norm();
        if n > PIVOT_TOL * scale {
            basis.push(w / n);
        }
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nullspace_of_simple_system() {
        // x + y + z = 0 ; y - z = 0  → null vector ∝ (-2, 1, 1)
        let a = vec![vec![1.0, 1.0, 1.0], vec![0.0, 1.0, -1.0]];
        let r = rref(&a, 3);
        assert_eq!(r.rank(), 2);
        let ns = r.nullspace();
        assert_eq!(ns.len(), 1);
        // normalised so the largest-magnitude entry is +1
        assert!((ns[0][0] - 1.0).abs() < 1e-15);
        assert!((ns[0][1] + 0.5).abs() < 1e-15);
        assert!((ns[0][2] + 0.5).abs() < 1e-15);
    }

    #[test]
    fn zero_matrix_has_full_nullspace() {
        let a = vec![vec![0.0; 4]; 3];
        assert_eq!(rref(&a, 4).nullspace().len(), 4);
    }
}
