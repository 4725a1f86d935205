//! Ricci curvature of left-invariant metrics, computed from the bracket in an
//! orthonormal frame.
//!
//! Three evaluations are provided: the general Lie-group formula
//! ([`ricci_general`]), its nilpotent specialization ([`ricci_nilpotent`],
//! the reference implementation) and closed-form matrices in the Milnor
//! frames ([`closed_form_ricci`]).

use crate::algebra::{unit, AlgebraId, Mat5, StructureConstants, Vec5, N};
use crate::frames::{Branch, Coeff, FrameCoefficients, FrameError};
use crate::moduli::{self, InnerProduct, ModuliError};

/// Tolerance of the internal `tr(J_u J_v)` cross-check.
pub const J_TRACE_TOL: f64 = 1e-10;

/// `m[i][j] = ric(v_i, v_j)` in an orthonormal frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RicciMatrix {
    pub m: Mat5,
}

impl RicciMatrix {
    pub fn asymmetry(&self) -> f64 {
        (self.m - self.m.transpose()).amax()
    }

    pub fn max_diff(&self, other: &RicciMatrix) -> f64 {
        (self.m - other.m).amax()
    }

    /// Scalar curvature.
    pub fn trace(&self) -> f64 {
        self.m.trace()
    }
}

/// Killing form, mean curvature vector and `J` operators of a frame bracket.
#[derive(Clone, Debug)]
pub struct GeometrySnapshot {
    pub killing: Mat5,
    pub mean_curvature: Vec5,
    pub j_ops: Vec<Mat5>,
}

impl GeometrySnapshot {
    pub fn of(sc: &StructureConstants) -> Self {
        Self {
            killing: killing_form(sc),
            mean_curvature: mean_curvature(sc),
            j_ops: (0..N).map(|i| j_operator(sc, &unit(i))).collect(),
        }
    }
}

/// `J_u`, defined by `⟨J_u v, w⟩ = ⟨u, [v, w]⟩`.
pub fn j_operator(sc: &StructureConstants, u: &Vec5) -> Mat5 {
    Mat5::from_fn(|w, v| (0..N).map(|k| u[k] * sc.get(v, w, k)).sum())
}

/// `B(e_i, e_j) = tr(ad_i ∘ ad_j)`.
pub fn killing_form(sc: &StructureConstants) -> Mat5 {
    let ads: Vec<Mat5> = (0..N).map(|i| sc.ad(&unit(i))).collect();
    Mat5::from_fn(|i, j| (ads[i] * ads[j]).trace())
}

/// `H` with `⟨H, e_i⟩ = tr(ad_{e_i})`.
pub fn mean_curvature(sc: &StructureConstants) -> Vec5 {
    Vec5::from_fn(|i, _| sc.ad(&unit(i)).trace())
}

/// `tr(J_u J_v)` evaluated as `−Σ_{i,j} ⟨u,[e_i,e_j]⟩⟨v,[e_i,e_j]⟩`.
fn j_trace_by_sum(sc: &StructureConstants, u: usize, v: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in 0..N {
            s += sc.get(i, j, u) * sc.get(i, j, v);
        }
    }
    -s
}

/// Largest disagreement between the two evaluations of `tr(J_u J_v)`.
pub fn j_trace_defect(sc: &StructureConstants) -> f64 {
    let js: Vec<Mat5> = (0..N).map(|i| j_operator(sc, &unit(i))).collect();
    let mut worst = 0.0_f64;
    for u in 0..N {
        for v in 0..N {
            worst = worst.max(((js[u] * js[v]).trace() - j_trace_by_sum(sc, u, v)).abs());
        }
    }
    worst
}

fn symmetric_part_terms(sc: &StructureConstants) -> Mat5 {
    let ads: Vec<Mat5> = (0..N).map(|i| sc.ad(&unit(i))).collect();
    let js: Vec<Mat5> = (0..N).map(|i| j_operator(sc, &unit(i))).collect();
    Mat5::from_fn(|u, v| -0.5 * (ads[u] * ads[v].transpose()).trace() - 0.25 * (js[u] * js[v]).trace())
}

/// `ric(u,v) = −½B(u,v) − ½tr(ad_u ad_v*) − ¼tr(J_u J_v) − ½(⟨[H,u],v⟩ + ⟨[H,v],u⟩)`.
pub fn ricci_general(sc: &StructureConstants) -> RicciMatrix {
    let b = killing_form(sc);
    let h = mean_curvature(sc);
    let ad_h = sc.ad(&h);
    let mut m = symmetric_part_terms(sc) - b * 0.5;
    m -= (ad_h + ad_h.transpose()) * 0.5;
    RicciMatrix { m }
}

/// `ric(u,v) = −½tr(ad_u ad_v*) − ¼tr(J_u J_v)`; valid for nilpotent brackets.
pub fn ricci_nilpotent(sc: &StructureConstants) -> RicciMatrix {
    debug_assert!(j_trace_defect(sc) <= J_TRACE_TOL * (1.0 + sc.max_abs().powi(2)));
    RicciMatrix {
        m: symmetric_part_terms(sc),
    }
}

/// `−½ Σ_{i<j} ‖[v_i, v_j]‖²`, the scalar curvature of a nilpotent frame.
pub fn scalar_curvature_by_sum(sc: &StructureConstants) -> f64 {
    let mut s = 0.0;
    for i in 0..N {
        for j in (i + 1)..N {
            s += sc.basis_bracket(i, j).norm_squared();
        }
    }
    -0.5 * s
}

fn from_upper(entries: &[(usize, usize, f64)]) -> Mat5 {
    let mut m = Mat5::zeros();
    for &(i, j, v) in entries {
        m[(i - 1, j - 1)] = v;
        m[(j - 1, i - 1)] = v;
    }
    m
}

/// The matrix `M` with `Ric = −½ M` in the Milnor frame (1-based entries).
fn closed_form_m(f: &FrameCoefficients, printed: bool) -> Mat5 {
    let a = f.value(Coeff::Alpha);
    let b = f.value(Coeff::Beta);
    let g = f.value(Coeff::Gamma);
    let d = f.value(Coeff::Delta);
    let e = f.value(Coeff::Epsilon);
    let s = f.value(Coeff::Sigma);
    let (a2, b2, g2, d2, e2, s2) = (a * a, b * b, g * g, d * d, e * e, s * s);
    match f.id {
        AlgebraId::FiveA1 => Mat5::zeros(),
        AlgebraId::A54 => from_upper(&[
            (1, 1, a2 + b2),
            (1, 2, a * g),
            (2, 2, g2),
            (3, 3, a2 + g2),
            (3, 4, a * b),
            (4, 4, b2),
            (5, 5, -a2 - b2 - g2),
        ]),
        AlgebraId::A31plus2A1 => from_upper(&[(1, 1, a2), (2, 2, a2), (5, 5, -a2)]),
        AlgebraId::A41plusA1 => match f.case_tag.unwrap_or(Branch::First) {
            Branch::First => from_upper(&[
                (1, 1, a2 + b2 + g2),
                (2, 2, a2 + g2),
                (2, 3, b * g),
                (3, 3, b2 - a2),
                (3, 5, -a * g),
                (5, 5, -b2 - g2),
            ]),
            Branch::Second => from_upper(&[
                (1, 1, a2 + b2 + g2),
                (2, 2, a2 + g2),
                // printed with the opposite sign
                (3, 3, if printed { a2 - b2 } else { b2 - a2 }),
                (3, 4, -a * g),
                (4, 4, -g2),
                (5, 5, -b2),
            ]),
        },
        AlgebraId::A56 => from_upper(&[
            (1, 1, a2 + b2 + g2 + d2 + e2),
            (1, 2, d * s),
            // printed without the σ² term
            (2, 2, if printed { a2 + b2 } else { a2 + b2 + s2 }),
            (2, 3, b * g),
            (3, 3, g2 + d2 + s2 - a2),
            (3, 4, d * e - a * b),
            (4, 4, e2 - b2 - g2),
            (4, 5, -d * g),
            (5, 5, -d2 - e2 - s2),
        ]),
        AlgebraId::A55 => from_upper(&[
            (1, 1, a2 + b2 + g2),
            (1, 2, g * d),
            (1, 3, -b * d),
            (1, 4, -b * e),
            (2, 2, a2 + b2 + d2 + e2),
            (2, 3, b * g),
            (3, 3, g2 + d2),
            (3, 4, d * e),
            (4, 4, e2 - a2),
            (4, 5, -a * b),
            (5, 5, -b2 - g2 - d2 - e2),
        ]),
        AlgebraId::A53 => from_upper(&[
            (1, 1, a2 + b2 + g2 + d2),
            (1, 2, d * e),
            (2, 2, a2 + b2 + e2),
            (2, 3, b * g),
            (3, 3, g2 + d2 + e2 - a2),
            (3, 4, -a * b),
            (4, 4, -b2 - g2),
            (4, 5, -d * g),
            (5, 5, -d2 - e2),
        ]),
        AlgebraId::A51 => from_upper(&[
            (1, 1, a2 + b2 + g2),
            (2, 2, a2 + b2),
            (2, 3, b * g),
            (3, 3, g2),
            (4, 4, -a2),
            (4, 5, -a * b),
            (5, 5, -b2 - g2),
        ]),
        AlgebraId::A52 => from_upper(&[
            (1, 1, a2 + b2 + g2 + d2),
            (2, 2, a2 + b2),
            (2, 3, b * g),
            (3, 3, g2 - a2),
            (3, 4, -a * b),
            (4, 4, d2 - b2 - g2),
            (5, 5, -d2),
        ]),
    }
}

/// Closed-form Ricci matrix in the Milnor frame, with the two misprinted
/// entries of the commonly printed tables corrected (see `errata`).
pub fn closed_form_ricci(coeffs: &FrameCoefficients) -> Result<RicciMatrix, FrameError> {
    coeffs.validate()?;
    Ok(RicciMatrix {
        m: closed_form_m(coeffs, false) * -0.5,
    })
}

/// The closed forms exactly as commonly printed, kept for errata reporting.
pub fn published_closed_form_ricci(coeffs: &FrameCoefficients) -> Result<RicciMatrix, FrameError> {
    coeffs.validate()?;
    Ok(RicciMatrix {
        m: closed_form_m(coeffs, true) * -0.5,
    })
}

/// Ricci matrix of the metric `S` in its canonical frame, together with the
/// frame vectors and scale.
pub fn ricci_of_metric(id: AlgebraId, s: &InnerProduct) -> Result<(RicciMatrix, Mat5, f64), ModuliError> {
    let (t, v, eta) = moduli::frame_tensor(id, s)?;
    Ok((ricci_nilpotent(&t), v, eta))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::frame_structure_constants;
    use Coeff::*;

    fn f(id: AlgebraId, vals: &[(Coeff, f64)]) -> FrameCoefficients {
        FrameCoefficients::new(id, None, vals).unwrap()
    }

    #[test]
    fn a31_display_value() {
        let c = f(AlgebraId::A31plus2A1, &[(Alpha, 2.0)]);
        let r = closed_form_ricci(&c).unwrap();
        assert_eq!(r.m, Mat5::from_diagonal(&Vec5::new(-2.0, -2.0, 0.0, 0.0, 2.0)));
        let o = ricci_general(&frame_structure_constants(&c).unwrap());
        assert!(o.max_diff(&r) < 1e-12);
    }

    #[test]
    fn a54_unit_coefficients() {
        let c = f(AlgebraId::A54, &[(Alpha, 1.0), (Beta, 1.0), (Gamma, 1.0)]);
        let want = from_upper(&[
            (1, 1, 2.0),
            (1, 2, 1.0),
            (2, 2, 1.0),
            (3, 3, 2.0),
            (3, 4, 1.0),
            (4, 4, 1.0),
            (5, 5, -3.0),
        ]) * -0.5;
        let r = ricci_nilpotent(&frame_structure_constants(&c).unwrap());
        assert!((r.m - want).amax() < 1e-12);
    }

    #[test]
    fn a52_with_vanishing_beta() {
        let c = f(AlgebraId::A52, &[(Alpha, 1.0), (Beta, 0.0), (Gamma, 1.0), (Delta, 1.0)]);
        // δ² − β² − γ² vanishes at (4,4) for these values
        let want = Mat5::from_diagonal(&Vec5::new(3.0, 1.0, 0.0, 0.0, -1.0)) * -0.5;
        assert!((closed_form_ricci(&c).unwrap().m - want).amax() < 1e-15);
        let oracle = ricci_nilpotent(&frame_structure_constants(&c).unwrap());
        assert!((oracle.m - want).amax() < 1e-15);
    }

    #[test]
    fn j_of_central_direction_in_a31() {
        let j = j_operator(&AlgebraId::A31plus2A1.structure_constants(), &unit(4));
        let mut want = Mat5::zeros();
        want[(1, 0)] = 1.0;
        want[(0, 1)] = -1.0;
        assert_eq!(j, want);
        assert!(j_operator(&AlgebraId::A31plus2A1.structure_constants(), &unit(2)).amax() == 0.0);
    }

    #[test]
    fn printed_a41_second_case_disagrees() {
        let c = FrameCoefficients::new(
            AlgebraId::A41plusA1,
            Some(Branch::Second),
            &[(Alpha, 2.0), (Beta, 1.0), (Gamma, 0.5)],
        )
        .unwrap();
        let oracle = ricci_nilpotent(&frame_structure_constants(&c).unwrap());
        assert!(oracle.max_diff(&closed_form_ricci(&c).unwrap()) < 1e-12);
        assert!(oracle.max_diff(&published_closed_form_ricci(&c).unwrap()) > 1.0);
    }
}
