//! Reduction of inner products to representative form under
//! `ℝ^× Aut(g) · g · O(5)`, and construction of Milnor frames.
//!
//! An inner product `S` is realized by a matrix `g` whose columns are
//! `S`-orthonormal (`g⁻ᵀ g⁻¹ = S`). Reduction first brings `g` to
//! lower-triangular form `L = gQ`, then rotates inside the flag
//! (`W = L R`, `R ∈ O(5)`) until the bracket expressed in the columns of `W`
//! has the canonical sparse shape, and finally reads off the representative
//! `h` whose columns carry the same bracket up to an overall scale. The
//! composite `φ = h W⁻¹` is then a positive multiple of an automorphism.

use std::collections::BTreeMap;

use nalgebra::{Matrix4, SymmetricEigen, Vector4};

use crate::algebra::{unit, AlgebraId, Mat5, StructureConstants, Vec5, N};
use crate::frames::{self, Branch, FrameError, MilnorFrame};

/// Tolerance on `‖phi·g·q − h‖` and on the representative's shape.
pub const REDUCTION_TOL: f64 = 1e-8;
/// Threshold used to split the `A4,1+A1` families on the `(4,3)` entry.
pub const BRANCH_TOL: f64 = 1e-10;

#[derive(Debug, Clone, thiserror::Error)]
pub enum ModuliError {
    #[error("matrix is not symmetric (defect {0:.3e})")]
    NotSymmetric(f64),
    #[error("matrix is not positive definite: leading minor {minor} is {value:.3e}")]
    NotPositiveDefinite { minor: usize, value: f64 },
    #[error("matrix is singular (|det| = {0:.3e})")]
    Singular(f64),
    #[error("internal consistency failure: representative bracket differs by {residual:.3e}")]
    Inconsistent { residual: f64 },
    #[error(
        "the reduced metric lies outside the published representative family (extra entries of size {residual:.3e})"
    )]
    OutsidePublishedFamily { residual: f64, reduction: Box<Reduction> },
    #[error(transparent)]
    Frame(#[from] FrameError),
}

/// A positive-definite Gram matrix `S_ij = ⟨e_i, e_j⟩`.
#[derive(Clone, Debug, PartialEq)]
pub struct InnerProduct {
    gram: Mat5,
}

impl InnerProduct {
    pub fn new(gram: Mat5) -> Result<Self, ModuliError> {
        let defect = (gram - gram.transpose()).amax();
        if defect > 1e-12 {
            return Err(ModuliError::NotSymmetric(defect));
        }
        for k in 1..=N {
            let minor = gram.view((0, 0), (k, k)).determinant();
            if !(minor > 0.0) {
                return Err(ModuliError::NotPositiveDefinite { minor: k, value: minor });
            }
        }
        Ok(Self { gram })
    }

    pub fn standard() -> Self {
        Self { gram: Mat5::identity() }
    }

    pub fn gram(&self) -> &Mat5 {
        &self.gram
    }

    pub fn scaled(&self, s: f64) -> Result<Self, ModuliError> {
        Self::new(self.gram * s)
    }

    pub fn dot(&self, x: &Vec5, y: &Vec5) -> f64 {
        (x.transpose() * self.gram * y)[0]
    }
}

/// `g = LQᵀ` with `L` lower triangular with positive diagonal and `Q`
/// orthogonal; returned as `(L, Q)` so that `gQ = L`.
pub fn lq_decompose(g: &Mat5) -> Result<(Mat5, Mat5), ModuliError> {
    let det = g.determinant();
    if det.abs() <= 1e-12 {
        return Err(ModuliError::Singular(det.abs()));
    }
    // gᵀ = QR  ⇒  gQ = Rᵀ
    let qr = g.transpose().qr();
    let mut q = qr.q();
    let mut l = qr.r().transpose();
    for i in 0..N {
        if l[(i, i)] < 0.0 {
            l.column_mut(i).neg_mut();
            q.column_mut(i).neg_mut();
        }
    }
    // the upper triangle is zero up to rounding; make it exactly so
    for i in 0..N {
        for j in (i + 1)..N {
            l[(i, j)] = 0.0;
        }
    }
    Ok((l, q))
}

/// A matrix `g` with `g⁻ᵀ g⁻¹ = S`, i.e. whose columns are `S`-orthonormal.
pub fn gram_to_gl(s: &InnerProduct) -> Result<Mat5, ModuliError> {
    let chol = nalgebra::Cholesky::new(*s.gram()).ok_or_else(|| {
        // re-run the minor test to name the failing index
        match InnerProduct::new(*s.gram()) {
            Err(e) => e,
            Ok(_) => ModuliError::NotPositiveDefinite { minor: N, value: 0.0 },
        }
    })?;
    // S = M Mᵀ  ⇒  g = M⁻ᵀ
    let m = chol.l();
    let minv = m.try_inverse().ok_or(ModuliError::Singular(0.0))?;
    Ok(minv.transpose())
}

/// `max_{i<j} ‖φ[e_i,e_j] − [φe_i, φe_j]‖∞`.
pub fn automorphism_defect(sc: &StructureConstants, phi: &Mat5) -> f64 {
    let mut worst = 0.0_f64;
    for i in 0..N {
        for j in (i + 1)..N {
            let lhs = phi * sc.basis_bracket(i, j);
            let rhs = sc.bracket(&(phi * unit(i)), &(phi * unit(j)));
            worst = worst.max((lhs - rhs).amax());
        }
    }
    worst
}

pub fn is_automorphism(sc: &StructureConstants, phi: &Mat5, tol: f64) -> bool {
    automorphism_defect(sc, phi) <= tol
}

/// A point of the representative family, with any entries beyond the
/// published shape kept (and measured by `pattern_residual`).
#[derive(Clone, Debug, PartialEq)]
pub struct Representative {
    pub id: AlgebraId,
    pub branch: Option<Branch>,
    pub entries: BTreeMap<String, f64>,
    pub matrix: Mat5,
    /// Largest entry that the published shape requires to vanish.
    pub pattern_residual: f64,
}

/// `phi · g · q = rep.matrix`, with `phi / scale` an automorphism.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    pub phi: Mat5,
    pub q: Mat5,
    pub scale: f64,
    pub rep: Representative,
}

impl Reduction {
    /// The automorphism part `phi / scale`.
    pub fn automorphism(&self) -> Mat5 {
        self.phi / self.scale
    }
}

/// Positions `(row, col)` (0-based) allowed to be nonzero in the published
/// representative shape, besides the diagonal.
pub fn published_offdiagonal(id: AlgebraId, branch: Option<Branch>) -> &'static [(usize, usize)] {
    match id {
        AlgebraId::FiveA1 | AlgebraId::A31plus2A1 => &[],
        AlgebraId::A54 => &[(1, 0)],
        AlgebraId::A41plusA1 => match branch.unwrap_or(Branch::First) {
            Branch::First => &[(4, 2)],
            Branch::Second => &[(3, 2)],
        },
        AlgebraId::A56 => &[(1, 0), (3, 2)],
        AlgebraId::A55 => &[(3, 2), (4, 3)],
        AlgebraId::A53 => &[(1, 0), (3, 2)],
        AlgebraId::A51 => &[(4, 3)],
        AlgebraId::A52 => &[(2, 1)],
    }
}

/// Largest entry of `rep.matrix` outside the published shape, plus the
/// smallest diagonal entry (which must be positive).
pub fn published_shape_defect(rep: &Representative) -> (f64, f64) {
    let allowed = published_offdiagonal(rep.id, rep.branch);
    let mut off = 0.0_f64;
    let mut min_diag = f64::INFINITY;
    for r in 0..N {
        for c in 0..N {
            let x = rep.matrix[(r, c)];
            if r == c {
                min_diag = min_diag.min(x);
            } else if !allowed.contains(&(r, c)) {
                off = off.max(x.abs());
            }
        }
    }
    (off, min_diag)
}

struct Realized {
    /// Scale `c`: the bracket of `W` equals `c` times the bracket of `h`.
    c: f64,
    h: Mat5,
    entries: Vec<(&'static str, f64)>,
    branch: Option<Branch>,
    residual: f64,
}

fn set(h: &mut Mat5, entries: &[(&'static str, f64)]) {
    for &(name, v) in entries {
        let b = name.as_bytes();
        let r = (b[1] - b'1') as usize;
        let c = (b[2] - b'1') as usize;
        h[(r, c)] = v;
    }
}

/// Representative `h` for the bracket `k` of an `S`-orthonormal flag basis.
fn realize(id: AlgebraId, k: &StructureConstants) -> Realized {
    let g = |i: usize, j: usize, l: usize| k.get(i, j, l);
    let mut h = Mat5::identity();
    let (c, entries, branch, residual): (f64, Vec<(&'static str, f64)>, Option<Branch>, f64) = match id {
        AlgebraId::FiveA1 => (1.0, vec![], None, 0.0),
        AlgebraId::A31plus2A1 => (g(0, 1, 4), vec![("a55", 1.0)], None, 0.0),
        AlgebraId::A54 => {
            let (alpha, beta, gamma) = (g(0, 2, 4), g(0, 3, 4), g(1, 2, 4));
            let c = gamma;
            (c, vec![("a21", alpha / c), ("a44", beta / c), ("a55", 1.0)], None, 0.0)
        }
        AlgebraId::A41plusA1 => {
            let (alpha, g2, gamma, beta) = (g(0, 1, 2), g(0, 1, 3), g(0, 1, 4), g(0, 2, 4));
            let c = (alpha * beta).sqrt();
            let a33 = beta / c;
            let a43 = -(g2 / c) * a33;
            let a53 = -(gamma / c) * a33;
            let (branch, residual) = if a43.abs() <= BRANCH_TOL {
                (Branch::First, a43.abs())
            } else {
                (Branch::Second, a53.abs())
            };
            let entries = vec![("a33", a33), ("a43", a43), ("a53", a53), ("a55", 1.0)];
            (c, entries, Some(branch), residual)
        }
        AlgebraId::A56 => {
            let (alpha, beta, zeta) = (g(0, 1, 2), g(0, 1, 3), g(0, 1, 4));
            let (gamma, delta, eps, sigma) = (g(0, 2, 3), g(0, 2, 4), g(0, 3, 4), g(1, 2, 4));
            let c = (-alpha * gamma * gamma * eps * eps / sigma).powf(0.25);
            let a44 = eps / c;
            let a33 = gamma / c * a44;
            let a22 = -alpha / c * a33;
            let a43 = beta / c * a33 * a44 / a22;
            let a53 = zeta / c * a33 / a22;
            let a21 = (delta / c - a43) / a33;
            let entries = vec![
                ("a21", a21),
                ("a22", a22),
                ("a33", a33),
                ("a43", a43),
                ("a44", a44),
                ("a53", a53),
                ("a55", 1.0),
            ];
            (c, entries, None, a53.abs())
        }
        AlgebraId::A55 => {
            let (alpha, beta, gamma, delta, eps) = (g(0, 1, 3), g(0, 1, 4), g(0, 2, 4), g(1, 2, 4), g(1, 3, 4));
            let c = (alpha * eps).sqrt();
            let a44 = eps / c;
            let entries = vec![
                ("a33", gamma / c),
                ("a43", delta / c),
                ("a44", a44),
                ("a54", -beta / c * a44),
                ("a55", 1.0),
            ];
            (c, entries, None, 0.0)
        }
        AlgebraId::A53 => {
            let (alpha, beta, gamma, delta, eps) = (g(0, 1, 2), g(0, 1, 3), g(0, 2, 3), g(0, 2, 4), g(1, 2, 4));
            let c = (alpha * eps).sqrt();
            let a33 = eps / c;
            let a44 = a33 / (gamma / c);
            let entries = vec![
                ("a21", delta / c / a33),
                ("a33", a33),
                ("a43", -beta / c * a33 * a44),
                ("a44", a44),
                ("a55", 1.0),
            ];
            (c, entries, None, 0.0)
        }
        AlgebraId::A51 => {
            let (alpha, beta, gamma) = (g(0, 1, 3), g(0, 1, 4), g(0, 2, 4));
            let c = gamma;
            let a44 = c / alpha;
            (c, vec![("a44", a44), ("a54", -beta / c * a44), ("a55", 1.0)], None, 0.0)
        }
        AlgebraId::A52 => {
            let (alpha, beta, beta2) = (g(0, 1, 2), g(0, 1, 3), g(0, 1, 4));
            let (gamma, gamma2, delta) = (g(0, 2, 3), g(0, 2, 4), g(0, 3, 4));
            let c = (alpha * gamma * delta).cbrt();
            let a44 = delta / c;
            let a43 = gamma2 / c;
            let a42 = beta2 / c;
            let entries = vec![
                ("a32", alpha / c * a43 + beta / c * a44),
                ("a33", gamma / c * a44),
                ("a42", a42),
                ("a43", a43),
                ("a44", a44),
                ("a55", 1.0),
            ];
            (c, entries, None, a42.abs().max(a43.abs()))
        }
    };
    set(&mut h, &entries);
    Realized {
        c,
        h,
        entries,
        branch,
        residual,
    }
}

/// Flips column `col` of `r` if the `(i,j,k)` component of the bracket in
/// the basis `base·r` is negative.
fn fix_sign(sc: &StructureConstants, base: &Mat5, r: &mut Mat5, col: usize, (i, j, k): (usize, usize, usize)) {
    if let Some(t) = sc.in_basis(&(base * *r)) {
        if t.get(i, j, k) < 0.0 {
            r.column_mut(col).neg_mut();
        }
    }
}

fn embed(v: &[f64]) -> Vec5 {
    let mut out = Vec5::zeros();
    for (i, x) in v.iter().enumerate() {
        out[i] = *x;
    }
    out
}

/// Unit vector of `span(e_lo..e_hi)` orthogonal to `against`, chosen with the
/// largest residual (deterministic).
fn complement(against: &[Vec5], lo: usize, hi: usize) -> Vec5 {
    let mut best = Vec5::zeros();
    let mut best_norm = -1.0;
    for i in lo..hi {
        let mut w = unit(i);
        for _ in 0..2 {
            for a in against {
                w -= a * a.dot(&w);
            }
        }
        let n = w.norm();
        if n > best_norm {
            best_norm = n;
            best = w / n;
        }
    }
    best
}

/// Rotation `R ∈ O(5)` of the flag basis `l` after which the bracket has the
/// canonical shape of `id`.
fn canonical_rotation(id: AlgebraId, sc: &StructureConstants, l: &Mat5) -> Mat5 {
    let Some(c) = sc.in_basis(l) else {
        return Mat5::identity();
    };
    match id {
        AlgebraId::A54 => {
            let omega = Matrix4::from_fn(|i, j| c.get(i, j, 4));
            let eig = SymmetricEigen::new(omega.transpose() * omega);
            let top = eig.eigenvalues.imax();
            let v1: Vector4<f64> = eig.eigenvectors.column(top).into_owned();
            let w1 = omega * v1;
            let v4 = -w1 / w1.norm();
            let (e1, e4) = (embed(v1.as_slice()), embed(v4.as_slice()));
            let e2 = complement(&[e1, e4], 0, 4);
            let w2 = omega * Vector4::new(e2[0], e2[1], e2[2], e2[3]);
            let e3 = embed((-w2 / w2.norm()).as_slice());
            Mat5::from_columns(&[e1, e2, e3, e4, unit(4)])
        }
        AlgebraId::A55 => {
            let n = Vec5::new(c.get(0, 3, 4), c.get(1, 3, 4), c.get(2, 3, 4), 0.0, 0.0);
            let v2 = n / n.norm();
            let k1 = complement(&[v2], 0, 3);
            let k2 = complement(&[v2, k1], 0, 3);
            // component of [v2, y] along the fourth flag vector
            let f = |y: &Vec5| c.bracket(&v2, y)[3];
            let (f1, f2) = (f(&k1), f(&k2));
            let nf = f1.hypot(f2);
            let (v1, v3) = if nf > 1e-14 {
                ((k1 * f1 + k2 * f2) / nf, (k1 * f2 - k2 * f1) / nf)
            } else {
                (k2, k1)
            };
            let mut r = Mat5::from_columns(&[v1, v2, v3, unit(3), unit(4)]);
            fix_sign(sc, l, &mut r, 3, (1, 3, 4));
            fix_sign(sc, l, &mut r, 0, (0, 1, 3));
            fix_sign(sc, l, &mut r, 2, (0, 2, 4));
            r
        }
        AlgebraId::A53 => {
            let (w4, w5) = (c.get(0, 1, 3), c.get(0, 1, 4));
            let nw = w4.hypot(w5);
            let (v4, v5) = if nw > 1e-14 {
                (
                    Vec5::new(0.0, 0.0, 0.0, w4 / nw, w5 / nw),
                    Vec5::new(0.0, 0.0, 0.0, -w5 / nw, w4 / nw),
                )
            } else {
                (unit(3), unit(4))
            };
            let p: Vec<f64> = (0..2).map(|i| c.basis_bracket(i, 2).dot(&v4)).collect();
            let np = p[0].hypot(p[1]);
            let (v1, v2) = if np > 1e-14 {
                (
                    Vec5::new(p[0] / np, p[1] / np, 0.0, 0.0, 0.0),
                    Vec5::new(-p[1] / np, p[0] / np, 0.0, 0.0, 0.0),
                )
            } else {
                (unit(0), unit(1))
            };
            let mut r = Mat5::from_columns(&[v1, v2, unit(2), v4, v5]);
            fix_sign(sc, l, &mut r, 1, (0, 1, 2));
            fix_sign(sc, l, &mut r, 3, (0, 2, 3));
            fix_sign(sc, l, &mut r, 4, (1, 2, 4));
            r
        }
        _ => Mat5::identity(),
    }
}

/// Reduces `g` to the extended representative shape. Never fails on an
/// invertible `g`; the returned representative may carry entries outside the
/// published shape (see [`Representative::pattern_residual`]).
pub fn reduce_canonical(id: AlgebraId, g: &Mat5) -> Result<Reduction, ModuliError> {
    let (l, q) = lq_decompose(g)?;
    let sc = id.structure_constants();
    let r = canonical_rotation(id, &sc, &l);
    let w = l * r;
    let k = sc.in_basis(&w).ok_or(ModuliError::Singular(0.0))?;
    let real = realize(id, &k);
    let h_bracket = sc.in_basis(&real.h).ok_or(ModuliError::Singular(0.0))?;
    let consistency = h_bracket.max_diff(&k.scaled(1.0 / real.c));
    if !(consistency <= REDUCTION_TOL) {
        return Err(ModuliError::Inconsistent { residual: consistency });
    }
    let winv = w.try_inverse().ok_or(ModuliError::Singular(0.0))?;
    let rep = Representative {
        id,
        branch: real.branch,
        entries: real.entries.iter().map(|(n, v)| (n.to_string(), *v)).collect(),
        matrix: real.h,
        pattern_residual: real.residual,
    };
    Ok(Reduction {
        phi: real.h * winv,
        q: q * r,
        scale: 1.0 / real.c,
        rep,
    })
}

/// Reduces `g` into the published representative family of `id`.
pub fn reduce(id: AlgebraId, g: &Mat5) -> Result<Reduction, ModuliError> {
    let red = reduce_canonical(id, g)?;
    if red.rep.pattern_residual > REDUCTION_TOL {
        return Err(ModuliError::OutsidePublishedFamily {
            residual: red.rep.pattern_residual,
            reduction: Box::new(red),
        });
    }
    Ok(red)
}

/// Frame vectors `V` (columns) and scale `eta` with `Vᵀ(ηS)V = I`, built
/// from the canonical reduction. The bracket in `V` has the extended shape.
pub fn frame_basis(id: AlgebraId, s: &InnerProduct) -> Result<(Mat5, f64), ModuliError> {
    let g = gram_to_gl(s)?;
    let red = reduce_canonical(id, &g)?;
    let aut_inv = red.automorphism().try_inverse().ok_or(ModuliError::Singular(0.0))?;
    let u = aut_inv * red.rep.matrix;
    let u1 = u.column(0).into_owned();
    let eta = 1.0 / s.dot(&u1, &u1);
    Ok((u, eta))
}

/// Milnor frame of `S` for the algebra `id`; fails if the frame bracket
/// leaves the published pattern.
pub fn milnor_frame(id: AlgebraId, s: &InnerProduct) -> Result<MilnorFrame, ModuliError> {
    let (v, eta) = frame_basis(id, s)?;
    let coeffs = frames::frame_coefficients(id, &v, &id.structure_constants())?;
    Ok(MilnorFrame { id, v, eta, coeffs })
}

/// Bracket of `S`'s canonical frame, whether or not it is in the published
/// pattern; this is what curvature computations consume.
pub fn frame_tensor(id: AlgebraId, s: &InnerProduct) -> Result<(StructureConstants, Mat5, f64), ModuliError> {
    let (v, eta) = frame_basis(id, s)?;
    let t = id
        .structure_constants()
        .in_basis(&v)
        .ok_or(ModuliError::Singular(0.0))?;
    Ok((t, v, eta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_g(rng: &mut ChaCha8Rng) -> Mat5 {
        loop {
            let g = Mat5::from_fn(|_, _| rng.gen_range(-1.0..1.0)) + Mat5::identity() * 0.5;
            if g.determinant().abs() > 1e-2 {
                return g;
            }
        }
    }

    #[test]
    fn lq_examples() {
        let (l, q) = lq_decompose(&Mat5::identity()).unwrap();
        assert_eq!((l, q), (Mat5::identity(), Mat5::identity()));
        let d = Mat5::from_diagonal(&Vec5::new(2.0, 3.0, 4.0, 5.0, 6.0));
        let (l, q) = lq_decompose(&d).unwrap();
        assert!((l - d).amax() < 1e-14 && (q - Mat5::identity()).amax() < 1e-14);
        assert!(matches!(lq_decompose(&Mat5::zeros()), Err(ModuliError::Singular(_))));
    }

    #[test]
    fn gram_to_gl_examples() {
        assert_eq!(gram_to_gl(&InnerProduct::standard()).unwrap(), Mat5::identity());
        let s = InnerProduct::new(Mat5::from_diagonal(&Vec5::new(4.0, 1.0, 1.0, 1.0, 1.0))).unwrap();
        let g = gram_to_gl(&s).unwrap();
        assert!((g - Mat5::from_diagonal(&Vec5::new(0.5, 1.0, 1.0, 1.0, 1.0))).amax() < 1e-15);
    }

    #[test]
    fn rejects_indefinite_gram() {
        let mut m = Mat5::identity();
        m[(2, 2)] = -1.0;
        match InnerProduct::new(m) {
            Err(ModuliError::NotPositiveDefinite { minor, .. }) => assert_eq!(minor, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn automorphism_examples() {
        let sc = AlgebraId::A54.structure_constants();
        let (a, b, c) = (1.5, 0.7, 2.0);
        let d = Mat5::from_diagonal(&Vec5::new(1.0 / a, 1.0 / b, 1.0 / c, a / (b * c), 1.0 / (b * c)));
        assert!(is_automorphism(&sc, &d, 1e-12));
        assert!(is_automorphism(&sc, &Mat5::identity(), 1e-12));
        let d = Mat5::from_diagonal(&Vec5::new(2.0, 1.0, 1.0, 1.0, 1.0));
        assert!(!is_automorphism(&sc, &d, 1e-8));
    }

    #[test]
    fn identity_reduces_to_reference_representative() {
        let red = reduce(AlgebraId::A54, &Mat5::identity()).unwrap();
        assert_eq!(red.rep.entries["a21"], 0.0);
        assert_eq!(red.rep.entries["a44"], 1.0);
        assert_eq!(red.rep.entries["a55"], 1.0);
    }

    #[test]
    fn abelian_representative_is_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let red = reduce(AlgebraId::FiveA1, &random_g(&mut rng)).unwrap();
        assert_eq!(red.rep.matrix, Mat5::identity());
    }

    #[test]
    fn canonical_reduction_invariants() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for id in AlgebraId::ALL {
            let sc = id.structure_constants();
            for _ in 0..20 {
                let g = random_g(&mut rng);
                let red = reduce_canonical(id, &g).unwrap();
                assert!((red.q.transpose() * red.q - Mat5::identity()).amax() < 1e-9, "{id}");
                assert!((red.phi * g * red.q - red.rep.matrix).amax() < 1e-8, "{id}");
                assert!(automorphism_defect(&sc, &red.automorphism()) < 1e-8, "{id}");
            }
        }
    }

    #[test]
    fn a31_diagonal_gram() {
        let s = InnerProduct::new(Mat5::from_diagonal(&Vec5::new(1.0, 1.0, 1.0, 1.0, 4.0))).unwrap();
        let f = milnor_frame(AlgebraId::A31plus2A1, &s).unwrap();
        assert!((f.coeffs.alpha.unwrap() - 1.0).abs() < 1e-12);
        assert!((f.eta - 4.0).abs() < 1e-12);
    }
}
