//! Milnor frames: orthonormal bases in which the bracket of each algebra takes
//! a sparse canonical shape with a handful of named coefficients.

use std::fmt;

use crate::algebra::{AlgebraId, Mat5, StructureConstants, N};

/// Absolute threshold for "this bracket component vanishes".
pub const PATTERN_TOL: f64 = 1e-8;

/// Name of a frame coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coeff {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Epsilon,
    Sigma,
}

impl Coeff {
    pub const ALL: [Coeff; 6] = [
        Coeff::Alpha,
        Coeff::Beta,
        Coeff::Gamma,
        Coeff::Delta,
        Coeff::Epsilon,
        Coeff::Sigma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Coeff::Alpha => "alpha",
            Coeff::Beta => "beta",
            Coeff::Gamma => "gamma",
            Coeff::Delta => "delta",
            Coeff::Epsilon => "epsilon",
            Coeff::Sigma => "sigma",
        }
    }

    pub fn from_name(s: &str) -> Option<Coeff> {
        let s = s.trim().to_ascii_lowercase();
        Coeff::ALL
            .into_iter()
            .find(|c| c.name() == s || (s.len() == 1 && c.name().starts_with(&s)))
            .or(match s.as_str() {
                "α" => Some(Coeff::Alpha),
                "β" => Some(Coeff::Beta),
                "γ" => Some(Coeff::Gamma),
                "δ" => Some(Coeff::Delta),
                "ε" => Some(Coeff::Epsilon),
                "σ" => Some(Coeff::Sigma),
                _ => None,
            })
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The two frame families of `A4,1+A1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Branch {
    /// `[v1,v2]=αv3+γv5`, `[v1,v3]=βv5`
    First,
    /// `[v1,v2]=αv3+γv4`, `[v1,v3]=βv5`
    Second,
}

impl Branch {
    pub fn name(self) -> &'static str {
        match self {
            Branch::First => "first",
            Branch::Second => "second",
        }
    }
}

/// Required sign of a coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SignDomain {
    Positive,
    Negative,
    Free,
}

impl SignDomain {
    pub fn admits(self, x: f64) -> bool {
        match self {
            SignDomain::Positive => x > 0.0,
            SignDomain::Negative => x < 0.0,
            SignDomain::Free => x.is_finite(),
        }
    }
}

/// One nonzero bracket slot `[v_i, v_j] ∋ coeff · v_k` (0-based, `i < j`).
pub type Slot = (usize, usize, usize, Coeff);

/// Bracket pattern of the frame family of `id` (and branch, for `A4,1+A1`).
pub fn pattern(id: AlgebraId, branch: Option<Branch>) -> &'static [Slot] {
    use Coeff::*;
    match id {
        AlgebraId::FiveA1 => &[],
        AlgebraId::A54 => &[(0, 2, 4, Alpha), (0, 3, 4, Beta), (1, 2, 4, Gamma)],
        AlgebraId::A31plus2A1 => &[(0, 1, 4, Alpha)],
        AlgebraId::A41plusA1 => match branch.unwrap_or(Branch::First) {
            Branch::First => &[(0, 1, 2, Alpha), (0, 1, 4, Gamma), (0, 2, 4, Beta)],
            Branch::Second => &[(0, 1, 2, Alpha), (0, 1, 3, Gamma), (0, 2, 4, Beta)],
        },
        AlgebraId::A56 => &[
            (0, 1, 2, Alpha),
            (0, 1, 3, Beta),
            (0, 2, 3, Gamma),
            (0, 2, 4, Delta),
            (0, 3, 4, Epsilon),
            (1, 2, 4, Sigma),
        ],
        AlgebraId::A55 => &[
            (0, 1, 3, Alpha),
            (0, 1, 4, Beta),
            (0, 2, 4, Gamma),
            (1, 2, 4, Delta),
            (1, 3, 4, Epsilon),
        ],
        AlgebraId::A53 => &[
            (0, 1, 2, Alpha),
            (0, 1, 3, Beta),
            (0, 2, 3, Gamma),
            (0, 2, 4, Delta),
            (1, 2, 4, Epsilon),
        ],
        AlgebraId::A51 => &[(0, 1, 3, Alpha), (0, 1, 4, Beta), (0, 2, 4, Gamma)],
        AlgebraId::A52 => &[(0, 1, 2, Alpha), (0, 1, 3, Beta), (0, 2, 3, Gamma), (0, 3, 4, Delta)],
    }
}

/// Sign constraints of the frame family of `id`.
pub fn sign_domain(id: AlgebraId, c: Coeff) -> SignDomain {
    use Coeff::*;
    use SignDomain::*;
    match (id, c) {
        (AlgebraId::A54, Beta | Gamma) => Positive,
        (AlgebraId::A31plus2A1, Alpha) => Positive,
        (AlgebraId::A41plusA1, Alpha | Beta) => Positive,
        (AlgebraId::A56, Alpha) => Negative,
        (AlgebraId::A56, Gamma | Epsilon | Sigma) => Positive,
        (AlgebraId::A55, Alpha | Gamma | Epsilon) => Positive,
        (AlgebraId::A53, Alpha | Gamma | Epsilon) => Positive,
        (AlgebraId::A51, Alpha | Gamma) => Positive,
        (AlgebraId::A52, Alpha | Gamma | Delta) => Positive,
        _ => Free,
    }
}

/// Coefficients used by the family of `id`, in canonical order.
pub fn coefficient_names(id: AlgebraId) -> Vec<Coeff> {
    let mut v: Vec<Coeff> = pattern(id, None).iter().map(|s| s.3).collect();
    v.sort();
    v
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FrameError {
    #[error("bracket component [v{i},v{j}] on v{k} is {value:.3e}, outside the {id} pattern", i = .i + 1, j = .j + 1, k = .k + 1)]
    PatternViolation {
        id: AlgebraId,
        i: usize,
        j: usize,
        k: usize,
        value: f64,
    },
    #[error("{coeff} = {value} violates the {id} sign domain ({domain:?})")]
    SignDomain {
        id: AlgebraId,
        coeff: Coeff,
        value: f64,
        domain: SignDomain,
    },
    #[error("{coeff} is not a coefficient of the {id} frame")]
    UnknownCoefficient { id: AlgebraId, coeff: Coeff },
    #[error("{coeff} is required by the {id} frame but missing")]
    MissingCoefficient { id: AlgebraId, coeff: Coeff },
    #[error("frame basis is singular")]
    Singular,
}

/// Named bracket coefficients of a Milnor frame.
#[derive(Clone, Debug, PartialEq)]
pub struct FrameCoefficients {
    pub id: AlgebraId,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub delta: Option<f64>,
    pub epsilon: Option<f64>,
    pub sigma: Option<f64>,
    /// Set only for `A4,1+A1`.
    pub case_tag: Option<Branch>,
}

impl FrameCoefficients {
    pub fn empty(id: AlgebraId) -> Self {
        Self {
            id,
            alpha: None,
            beta: None,
            gamma: None,
            delta: None,
            epsilon: None,
            sigma: None,
            case_tag: (id == AlgebraId::A41plusA1).then_some(Branch::First),
        }
    }

    /// Builds and validates a coefficient set from `(name, value)` pairs.
    pub fn new(id: AlgebraId, branch: Option<Branch>, values: &[(Coeff, f64)]) -> Result<Self, FrameError> {
        let mut out = Self::empty(id);
        if id == AlgebraId::A41plusA1 {
            out.case_tag = Some(branch.unwrap_or(Branch::First));
        }
        for &(c, v) in values {
            *out.slot_mut(c) = Some(v);
        }
        out.validate()?;
        Ok(out)
    }

    fn slot_mut(&mut self, c: Coeff) -> &mut Option<f64> {
        match c {
            Coeff::Alpha => &mut self.alpha,
            Coeff::Beta => &mut self.beta,
            Coeff::Gamma => &mut self.gamma,
            Coeff::Delta => &mut self.delta,
            Coeff::Epsilon => &mut self.epsilon,
            Coeff::Sigma => &mut self.sigma,
        }
    }

    pub fn get(&self, c: Coeff) -> Option<f64> {
        match c {
            Coeff::Alpha => self.alpha,
            Coeff::Beta => self.beta,
            Coeff::Gamma => self.gamma,
            Coeff::Delta => self.delta,
            Coeff::Epsilon => self.epsilon,
            Coeff::Sigma => self.sigma,
        }
    }

    /// Value of a used coefficient (0 if absent).
    pub fn value(&self, c: Coeff) -> f64 {
        self.get(c).unwrap_or(0.0)
    }

    pub fn set(&mut self, c: Coeff, v: f64) {
        *self.slot_mut(c) = Some(v);
    }

    /// Present coefficients in canonical order.
    pub fn entries(&self) -> Vec<(Coeff, f64)> {
        Coeff::ALL
            .into_iter()
            .filter_map(|c| self.get(c).map(|v| (c, v)))
            .collect()
    }

    /// Checks that exactly the coefficients of the family are present and
    /// that each lies in its sign domain.
    pub fn validate(&self) -> Result<(), FrameError> {
        let used = coefficient_names(self.id);
        for c in Coeff::ALL {
            match (used.contains(&c), self.get(c)) {
                (false, Some(_)) => return Err(FrameError::UnknownCoefficient { id: self.id, coeff: c }),
                (true, None) => return Err(FrameError::MissingCoefficient { id: self.id, coeff: c }),
                (true, Some(v)) => {
                    let domain = sign_domain(self.id, c);
                    if !domain.admits(v) {
                        return Err(FrameError::SignDomain {
                            id: self.id,
                            coeff: c,
                            value: v,
                            domain,
                        });
                    }
                }
                (false, None) => {}
            }
        }
        Ok(())
    }

    /// Multiplies every coefficient by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        let mut out = self.clone();
        for c in Coeff::ALL {
            if let Some(v) = out.get(c) {
                out.set(c, s * v);
            }
        }
        out
    }

    pub fn pattern(&self) -> &'static [Slot] {
        pattern(self.id, self.case_tag)
    }

    pub fn max_diff(&self, other: &FrameCoefficients) -> f64 {
        Coeff::ALL
            .into_iter()
            .map(|c| match (self.get(c), other.get(c)) {
                (Some(a), Some(b)) => (a - b).abs(),
                (None, None) => 0.0,
                _ => f64::INFINITY,
            })
            .fold(0.0, f64::max)
    }
}

/// An orthonormal frame (for `eta · S`) together with its coefficients.
#[derive(Clone, Debug)]
pub struct MilnorFrame {
    pub id: AlgebraId,
    /// Columns are the frame vectors in the reference basis.
    pub v: Mat5,
    pub eta: f64,
    pub coeffs: FrameCoefficients,
}

impl MilnorFrame {
    /// `‖Vᵀ(ηS)V − I‖∞` for the Gram matrix `S` the frame was built from.
    pub fn orthonormality_defect(&self, gram: &Mat5) -> f64 {
        (self.v.transpose() * (gram * self.eta) * self.v - Mat5::identity()).amax()
    }
}

/// Reads the frame coefficients of the basis `v` (columns) for the bracket
/// `sc`, rejecting any bracket component outside the family's pattern.
pub fn frame_coefficients(id: AlgebraId, v: &Mat5, sc: &StructureConstants) -> Result<FrameCoefficients, FrameError> {
    let c = sc.in_basis(v).ok_or(FrameError::Singular)?;
    coefficients_from_tensor(id, &c)
}

/// As [`frame_coefficients`] for a tensor already expressed in the frame.
pub fn coefficients_from_tensor(id: AlgebraId, c: &StructureConstants) -> Result<FrameCoefficients, FrameError> {
    let branch = if id == AlgebraId::A41plusA1 {
        // the two families differ only in where [v1,v2] leaves v3
        if c.get(0, 1, 3).abs() > PATTERN_TOL && c.get(0, 1, 4).abs() <= PATTERN_TOL {
            Some(Branch::Second)
        } else {
            Some(Branch::First)
        }
    } else {
        None
    };
    let pat = pattern(id, branch);
    for i in 0..N {
        for j in (i + 1)..N {
            for k in 0..N {
                let value = c.get(i, j, k);
                let listed = pat.iter().any(|s| (s.0, s.1, s.2) == (i, j, k));
                if !listed && value.abs() > PATTERN_TOL {
                    return Err(FrameError::PatternViolation { id, i, j, k, value });
                }
            }
        }
    }
    let values: Vec<(Coeff, f64)> = pat.iter().map(|s| (s.3, c.get(s.0, s.1, s.2))).collect();
    FrameCoefficients::new(id, branch, &values)
}

/// Bracket tensor of the frame family with the given coefficients.
pub fn frame_structure_constants(coeffs: &FrameCoefficients) -> Result<StructureConstants, FrameError> {
    coeffs.validate()?;
    Ok(pattern_tensor(coeffs))
}

/// Bracket tensor without sign-domain validation (absent coefficients read
/// as zero). Used by the solver while it is still searching for signs.
pub fn pattern_tensor(coeffs: &FrameCoefficients) -> StructureConstants {
    let mut sc = StructureConstants::zero();
    for &(i, j, k, name) in coeffs.pattern() {
        sc.add(i, j, k, coeffs.value(name));
    }
    sc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::jacobi_defect;

    fn coeffs(id: AlgebraId, vals: &[(Coeff, f64)]) -> FrameCoefficients {
        FrameCoefficients::new(id, None, vals).unwrap()
    }

    #[test]
    fn reference_basis_reads_catalog_values() {
        let f = frame_coefficients(AlgebraId::A54, &Mat5::identity(), &AlgebraId::A54.structure_constants()).unwrap();
        assert_eq!((f.alpha, f.beta, f.gamma), (Some(0.0), Some(1.0), Some(1.0)));
        let f = frame_coefficients(AlgebraId::A51, &Mat5::identity(), &AlgebraId::A51.structure_constants()).unwrap();
        assert_eq!((f.alpha, f.beta, f.gamma), (Some(1.0), Some(0.0), Some(1.0)));
    }

    #[test]
    fn frame_tensor_matches_catalog() {
        use Coeff::*;
        let f = coeffs(AlgebraId::A54, &[(Alpha, 0.0), (Beta, 1.0), (Gamma, 1.0)]);
        let sc = frame_structure_constants(&f).unwrap();
        assert_eq!(sc.max_diff(&AlgebraId::A54.structure_constants()), 0.0);
        let f = coeffs(
            AlgebraId::A56,
            &[
                (Alpha, -1.0),
                (Beta, 0.0),
                (Gamma, 1.0),
                (Delta, 0.0),
                (Epsilon, 1.0),
                (Sigma, 1.0),
            ],
        );
        let sc = frame_structure_constants(&f).unwrap();
        assert_eq!(sc.max_diff(&AlgebraId::A56.structure_constants()), 0.0);
    }

    #[test]
    fn a53_family_is_a_lie_bracket() {
        use Coeff::*;
        let f = coeffs(
            AlgebraId::A53,
            &[(Alpha, 1.0), (Beta, 1.0), (Gamma, 1.0), (Delta, 0.0), (Epsilon, 1.0)],
        );
        assert!(jacobi_defect(&frame_structure_constants(&f).unwrap()) <= 1e-10);
    }

    #[test]
    fn sign_domain_is_enforced() {
        let err = FrameCoefficients::new(
            AlgebraId::A56,
            None,
            &[
                (Coeff::Alpha, 1.0),
                (Coeff::Beta, 0.0),
                (Coeff::Gamma, 1.0),
                (Coeff::Delta, 0.0),
                (Coeff::Epsilon, 1.0),
                (Coeff::Sigma, 1.0),
            ],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            FrameError::SignDomain {
                coeff: Coeff::Alpha,
                ..
            }
        ));
    }

    #[test]
    fn off_pattern_component_is_reported() {
        let mut sc = AlgebraId::A54.structure_constants();
        sc.add(0, 1, 4, 0.5);
        match frame_coefficients(AlgebraId::A54, &Mat5::identity(), &sc) {
            Err(FrameError::PatternViolation {
                i: 0,
                j: 1,
                k: 4,
                value,
                ..
            }) => assert_eq!(value, 0.5),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn a41_branch_is_detected() {
        use Coeff::*;
        let f = FrameCoefficients::new(
            AlgebraId::A41plusA1,
            Some(Branch::Second),
            &[(Alpha, 1.0), (Beta, 2.0), (Gamma, 0.5)],
        )
        .unwrap();
        let sc = frame_structure_constants(&f).unwrap();
        let back = frame_coefficients(AlgebraId::A41plusA1, &Mat5::identity(), &sc).unwrap();
        assert_eq!(back, f);
    }
}
