//! The prescribed Ricci problem `Ric(g) = t²T` in a Milnor frame.
//!
//! Ricci curvature is quadratic in the frame coefficients, so solutions come
//! in families `(s·coeffs, s·t)`; [`solve`] returns the member with `t = 1`.
//! The diagonal of `Ric` is linear in the squared coefficients: it is solved
//! by elimination, the squares are checked against the sign domains, and the
//! remaining signs are fixed by enumeration and verified against
//! [`ricci_nilpotent`].

use std::collections::BTreeMap;

use crate::algebra::{AlgebraId, Mat5, N};
use crate::frames::{coefficient_names, pattern_tensor, sign_domain, Branch, Coeff, FrameCoefficients, SignDomain};
use crate::ricci::{ricci_nilpotent, RicciMatrix};

/// Strict inequalities must clear this margin.
pub const STRICT_TOL: f64 = 1e-10;
/// Equalities are accepted up to this residual.
pub const EQ_TOL: f64 = 1e-9;
/// Default acceptance threshold of a verified solution.
pub const VERIFY_TOL: f64 = 1e-8;
/// Pivot threshold of the elimination on the squared coefficients.
pub const PIVOT_TOL: f64 = 1e-12;
/// Pattern and symmetry tolerances of a prescribed tensor.
pub const PATTERN_TOL: f64 = 1e-10;
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Allowed nonzero entries `(row, col, name)` (0-based, `row ≤ col`) of `T`
/// for one frame family.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SparsityPattern {
    pub branch: Option<Branch>,
    pub entries: &'static [(usize, usize, &'static str)],
}

const DIAG5: [(usize, usize, &str); 5] = [(0, 0, "a"), (1, 1, "b"), (2, 2, "c"), (3, 3, "d"), (4, 4, "e")];

macro_rules! with_diag {
    ($($extra:expr),*) => {
        &[DIAG5[0], DIAG5[1], DIAG5[2], DIAG5[3], DIAG5[4] $(, $extra)*]
    };
}

/// The shapes `T` may take for `id` (two for `A4,1+A1`).
pub fn sparsity_pattern(id: AlgebraId) -> Vec<SparsityPattern> {
    let one = |entries| vec![SparsityPattern { branch: None, entries }];
    match id {
        AlgebraId::FiveA1 => one(&[]),
        AlgebraId::A54 => one(with_diag!((0, 1, "f"), (2, 3, "l"))),
        AlgebraId::A31plus2A1 => one(&[(0, 0, "a"), (1, 1, "b"), (4, 4, "c")]),
        AlgebraId::A41plusA1 => vec![
            SparsityPattern {
                branch: Some(Branch::First),
                entries: &[
                    (0, 0, "a"),
                    (1, 1, "b"),
                    (1, 2, "e"),
                    (2, 2, "c"),
                    (2, 4, "f"),
                    (4, 4, "d"),
                ],
            },
            SparsityPattern {
                branch: Some(Branch::Second),
                entries: with_diag!((2, 3, "f")),
            },
        ],
        AlgebraId::A56 => one(with_diag!((0, 1, "f"), (1, 2, "g"), (2, 3, "h"), (3, 4, "i"))),
        AlgebraId::A55 => one(with_diag!(
            (0, 1, "f"),
            (0, 2, "l"),
            (0, 3, "h"),
            (1, 2, "i"),
            (2, 3, "j"),
            (3, 4, "k")
        )),
        AlgebraId::A53 => one(with_diag!((0, 1, "f"), (1, 2, "l"), (2, 3, "h"), (3, 4, "i"))),
        AlgebraId::A51 => one(with_diag!((1, 2, "f"), (3, 4, "l"))),
        AlgebraId::A52 => one(with_diag!((1, 2, "f"), (2, 3, "l"))),
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolverError {
    #[error("tensor is not symmetric (defect {0:.3e})")]
    NotSymmetric(f64),
    #[error("entry ({row},{col}) = {value:.3e} is outside the {id} pattern", row = .row + 1, col = .col + 1)]
    PatternViolation {
        id: AlgebraId,
        row: usize,
        col: usize,
        value: f64,
    },
    #[error("`{name}` is not an entry of the {id} pattern")]
    UnknownEntry { id: AlgebraId, name: String },
}

/// A symmetric tensor in the sparsity pattern of `id`, with its entries
/// exposed under their letter names (one view per matching shape).
#[derive(Clone, Debug, PartialEq)]
pub struct PrescribedTensor {
    pub id: AlgebraId,
    pub m: Mat5,
    pub named: BTreeMap<String, f64>,
    pub views: Vec<(Option<Branch>, BTreeMap<String, f64>)>,
}

fn violation(pat: &SparsityPattern, m: &Mat5) -> Option<(usize, usize, f64)> {
    let mut worst: Option<(usize, usize, f64)> = None;
    for r in 0..N {
        for c in r..N {
            let allowed = pat.entries.iter().any(|e| (e.0, e.1) == (r, c));
            let v = m[(r, c)];
            if !allowed && v.abs() > PATTERN_TOL && worst.map_or(true, |w| v.abs() > w.2.abs()) {
                worst = Some((r, c, v));
            }
        }
    }
    worst
}

impl PrescribedTensor {
    pub fn new(id: AlgebraId, m: Mat5) -> Result<Self, SolverError> {
        let asym = (m - m.transpose()).amax();
        if asym > SYMMETRY_TOL {
            return Err(SolverError::NotSymmetric(asym));
        }
        let mut views = Vec::new();
        let mut first_violation = None;
        for pat in sparsity_pattern(id) {
            match violation(&pat, &m) {
                None => {
                    let named: BTreeMap<String, f64> =
                        pat.entries.iter().map(|e| (e.2.to_string(), m[(e.0, e.1)])).collect();
                    views.push((pat.branch, named));
                }
                Some(v) => {
                    first_violation.get_or_insert(v);
                }
            }
        }
        if views.is_empty() {
            let (row, col, value) = first_violation.unwrap_or((0, 0, 0.0));
            return Err(SolverError::PatternViolation { id, row, col, value });
        }
        Ok(Self {
            id,
            m,
            named: views[0].1.clone(),
            views,
        })
    }

    /// Builds `T` from letter names of the given shape.
    pub fn from_named(id: AlgebraId, branch: Option<Branch>, values: &[(&str, f64)]) -> Result<Self, SolverError> {
        let pats = sparsity_pattern(id);
        let pat = pats
            .iter()
            .find(|p| branch.is_none() || p.branch == branch)
            .unwrap_or(&pats[0]);
        let mut m = Mat5::zeros();
        for &(name, v) in values {
            let e = pat
                .entries
                .iter()
                .find(|e| e.2 == name)
                .ok_or_else(|| SolverError::UnknownEntry {
                    id,
                    name: name.to_string(),
                })?;
            m[(e.0, e.1)] = v;
            m[(e.1, e.0)] = v;
        }
        Self::new(id, m)
    }

    /// `T := Ric(coeffs)`, the tensor solved by `coeffs` at `t = 1`.
    pub fn forward(coeffs: &FrameCoefficients) -> Result<Self, SolverError> {
        let mut m = ricci_nilpotent(&pattern_tensor(coeffs)).m;
        m = (m + m.transpose()) * 0.5;
        Self::new(coeffs.id, m)
    }

    fn view(&self, branch: Option<Branch>) -> Option<&BTreeMap<String, f64>> {
        self.views.iter().find(|v| v.0 == branch).map(|v| &v.1)
    }
}

/// How a condition is judged.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Zero,
    Positive,
    NonNegative,
    Negative,
    NonPositive,
    NonZero,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionItem {
    pub name: String,
    pub satisfied: bool,
    /// Amount by which the condition is violated (0 when satisfied, except
    /// for equalities, where it is the absolute defect).
    pub residual: f64,
}

fn judge(name: &str, value: f64, rel: Relation) -> ConditionItem {
    if !value.is_finite() {
        return ConditionItem {
            name: name.to_string(),
            satisfied: false,
            residual: f64::INFINITY,
        };
    }
    let (satisfied, residual) = match rel {
        Relation::Zero => (value.abs() <= EQ_TOL, value.abs()),
        Relation::Positive => (value > STRICT_TOL, (STRICT_TOL - value).max(0.0)),
        Relation::NonNegative => (value >= -STRICT_TOL, (-value).max(0.0)),
        Relation::Negative => (value < -STRICT_TOL, (value + STRICT_TOL).max(0.0)),
        Relation::NonPositive => (value <= STRICT_TOL, value.max(0.0)),
        Relation::NonZero => (value.abs() > STRICT_TOL, (STRICT_TOL - value.abs()).max(0.0)),
    };
    ConditionItem {
        name: name.to_string(),
        satisfied,
        residual: if satisfied && rel != Relation::Zero {
            0.0
        } else {
            residual
        },
    }
}

/// Conditions for one shape of `T`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionSection {
    pub branch: Option<Branch>,
    /// `false` when `T` does not have this shape (items are then empty).
    pub applicable: bool,
    pub items: Vec<ConditionItem>,
    pub derived_quantities: BTreeMap<String, f64>,
}

impl ConditionSection {
    pub fn satisfied(&self) -> bool {
        self.applicable && self.items.iter().all(|i| i.satisfied)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionReport {
    pub id: AlgebraId,
    pub sections: Vec<ConditionSection>,
}

impl ConditionReport {
    /// True if `T` satisfies every condition of at least one shape.
    pub fn satisfied(&self) -> bool {
        self.sections.iter().any(|s| s.satisfied())
    }

    pub fn items(&self) -> impl Iterator<Item = &ConditionItem> {
        self.sections.iter().flat_map(|s| s.items.iter())
    }
}

struct Builder {
    items: Vec<ConditionItem>,
    derived: BTreeMap<String, f64>,
}

impl Builder {
    fn new() -> Self {
        Self {
            items: Vec::new(),
            derived: BTreeMap::new(),
        }
    }
    fn c(&mut self, name: &str, value: f64, rel: Relation) -> &mut Self {
        self.items.push(judge(name, value, rel));
        self
    }
    fn d(&mut self, name: &str, value: f64) -> f64 {
        self.derived.insert(name.to_string(), value);
        value
    }
}

/// Which condition list to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConditionSet {
    /// Necessary and sufficient conditions re-derived from the curvature
    /// formulas (see `errata` for how they differ from the printed lists).
    Corrected,
    /// The printed lists, evaluated verbatim.
    Published,
}

fn get(named: &BTreeMap<String, f64>, k: &str) -> f64 {
    named.get(k).copied().unwrap_or(0.0)
}

fn section(id: AlgebraId, branch: Option<Branch>, t: &PrescribedTensor, set: ConditionSet) -> ConditionSection {
    use Relation::*;
    // The printed second A4,1+A1 list is stated for the first shape of T.
    let layout = match (id, branch, set) {
        (AlgebraId::A41plusA1, Some(Branch::Second), ConditionSet::Published) => Some(Branch::First),
        _ => branch,
    };
    let Some(named) = t.view(layout) else {
        return ConditionSection {
            branch,
            applicable: false,
            items: vec![],
            derived_quantities: BTreeMap::new(),
        };
    };
    let v = |k: &str| get(named, k);
    let (a, b, c, d, e) = (v("a"), v("b"), v("c"), v("d"), v("e"));
    let (f, l, h, i) = (v("f"), v("l"), v("h"), v("i"));
    let mut s = Builder::new();
    let corrected = set == ConditionSet::Corrected;
    match id {
        AlgebraId::FiveA1 => {
            s.items.push(ConditionItem {
                name: "T=0".into(),
                satisfied: t.m.amax() <= PATTERN_TOL,
                residual: t.m.amax(),
            });
        }
        AlgebraId::A54 => {
            s.d("alpha^2", 2.0 * (b - c));
            s.d("beta^2", -2.0 * d);
            s.d("gamma^2", -2.0 * b);
            s.c("a+b+e=0", a + b + e, Zero);
            if corrected {
                s.c("c+d+e=0", c + d + e, Zero);
            }
            s.c("b<0", b, Negative)
                .c("d<0", d, Negative)
                .c("b-c>=0", b - c, NonNegative)
                .c("f^2=-b(b-c)", f * f + b * (b - c), Zero)
                .c("l^2=-d(b-c)", l * l + d * (b - c), Zero);
            if corrected {
                s.c("f*l>=0", f * l, NonNegative);
            }
        }
        AlgebraId::A31plus2A1 => {
            s.d("alpha^2", -2.0 * a);
            s.c("a<0", a, Negative).c("a=b", a - b, Zero).c("b=-c", b + c, Zero);
        }
        AlgebraId::A41plusA1 => match branch {
            Some(Branch::First) | None => {
                let big_a = s.d("A", a - 2.0 * b - c);
                let big_b = s.d("B", b - a);
                let big_c = s.d("C", a + d);
                s.c("b+c+d=0", b + c + d, Zero)
                    .c("A=a-2b-c>=0", big_a, NonNegative)
                    .c("B=b-a>0", big_b, Positive)
                    .c("C=a+d<0", big_c, Negative)
                    .c("e^2=AB", e * e - big_a * big_b, Zero)
                    .c("f^2=-AC", f * f + big_a * big_c, Zero);
                if corrected {
                    s.c("e*f<=0", e * f, NonPositive);
                }
            }
            Some(Branch::Second) => {
                if corrected {
                    s.c("2b+c+d-a=0", 2.0 * b + c + d - a, Zero);
                } else {
                    s.c("2b-c-a+d=0", 2.0 * b - c - a + d, Zero);
                }
                s.c("b-a-e=0", b - a - e, Zero)
                    .c("d>=0", d, NonNegative)
                    .c("e>0", e, Positive)
                    .c("b+d<0", b + d, Negative)
                    .c("f^2=-d(b+d)", f * f + d * (b + d), Zero);
            }
        },
        AlgebraId::A56 => {
            let g = v("g");
            if corrected {
                let ss = s.d("S", -2.0 * (b + c + d + e));
                let gg = s.d("G", -2.0 * (a + b + 2.0 * c + 2.0 * d + 3.0 * e));
                let dd = s.d("D", if ss > STRICT_TOL { 4.0 * f * f / ss } else { f64::NAN });
                let aa = s.d("A", dd - 2.0 * a - 4.0 * b - 4.0 * c - 6.0 * d - 8.0 * e);
                let bb = s.d("B", -dd + 2.0 * a + 4.0 * b + 6.0 * c + 8.0 * d + 10.0 * e);
                let ee = s.d("E", -dd + 2.0 * b + 2.0 * c + 2.0 * d + 4.0 * e);
                let (sigma, gamma) = (ss.max(0.0).sqrt(), gg.max(0.0).sqrt());
                let delta = -2.0 * f / sigma;
                let beta = -2.0 * g / gamma;
                let alpha = -aa.max(0.0).sqrt();
                let eps = ee.max(0.0).sqrt();
                s.c("S=-2(b+c+d+e)>0", ss, Positive)
                    .c("G=-2(a+b+2c+2d+3e)>0", gg, Positive)
                    .c("A=D-2a-4b-4c-6d-8e>0", aa, Positive)
                    .c("B=-D+2a+4b+6c+8d+10e>=0", bb, NonNegative)
                    .c("E=-D+2b+2c+2d+4e>0", ee, Positive)
                    .c("f^2*G=i^2*S", f * f * gg - i * i * ss, Zero)
                    .c("B*G=4g^2", bb * gg - 4.0 * g * g, Zero)
                    .c("f*i<=0", f * i, NonPositive)
                    .c(
                        "2h=alpha*beta-delta*epsilon",
                        2.0 * h - (alpha * beta - delta * eps),
                        Zero,
                    );
            } else {
                // printed with `l` for the (2,3) entry `g`
                let l = g;
                let aa = s.d("A", b + c - a);
                let bb = s.d("B", a - 2.0 * b - c);
                let cc = s.d("C", 2.0 * b + c + d - a);
                let q = i * i - f * f;
                let dd = s.d("D", f * f * cc / q);
                let ee = s.d("E", e - f * f * cc / q - q / cc);
                let x = e - dd - ee;
                let sq = |z: f64| z.max(0.0).sqrt();
                let h_res = [1.0, -1.0]
                    .iter()
                    .flat_map(|s1| {
                        [1.0, -1.0].map(|s2| (h + s1 * sq(x * ee) + s2 * sq((aa + dd - ee) * (bb - dd + ee))).abs())
                    })
                    .fold(f64::INFINITY, f64::min);
                s.c("b+c+d+e=0", b + c + d + e, Zero)
                    .c("i^2-f^2!=0", q, NonZero)
                    .c("A+D-E>0", aa + dd - ee, Positive)
                    .c("B-D+E>0", bb - dd + ee, Positive)
                    .c("C+D>0", cc + dd, Positive)
                    .c("e-D-E>=0", x, NonNegative)
                    .c("D>0", dd, Positive)
                    .c("E>0", ee, Positive)
                    .c(
                        "BC-DC+CE+BD+ED-D^2-g^2=0",
                        bb * cc - dd * cc + cc * ee + bb * dd + ee * dd - dd * dd - g * g,
                        Zero,
                    )
                    .c("l^2=(B-D+E)(C+D)", l * l - (bb - dd + ee) * (cc + dd), Zero)
                    .c("f^2=(e-D-E)D", f * f - x * dd, Zero)
                    .c("i^2=(e-D-E)(C+D)", i * i - x * (cc + dd), Zero)
                    .c("h+-sqrt((e-D-E)E)+-sqrt((A+D-E)(B-D+E))=0", h_res, Zero);
            }
        }
        AlgebraId::A55 => {
            let (j, k) = (v("j"), v("k"));
            let aa = s.d("A", -(a + b + c + 2.0 * d + 2.0 * e));
            let bb = s.d("B", a + d + e);
            let cc = s.d("C", -(a + c + d + e));
            let (dd, ee) = if corrected {
                (
                    s.d("D", a + b + 2.0 * c + 2.0 * d + 3.0 * e),
                    s.d("E", -(a + b + c + d + 2.0 * e)),
                )
            } else {
                (
                    s.d("D", a + 2.0 * c + 3.0 * d + 3.0 * e),
                    s.d("E", -(a + c + 2.0 * d + 2.0 * e)),
                )
            };
            s.c("A>0", aa, Positive)
                .c("B>=0", bb, NonNegative)
                .c("C>0", cc, Positive)
                .c("D>=0", dd, NonNegative)
                .c("E>0", ee, Positive)
                .c("f^2=BC", f * f - bb * cc, Zero)
                .c("l^2=BD", l * l - bb * dd, Zero)
                .c("h^2=AD", h * h - aa * dd, Zero)
                .c("i^2=DC", i * i - dd * cc, Zero)
                .c("j^2=AB", j * j - aa * bb, Zero)
                .c("k^2=DE", k * k - dd * ee, Zero);
            if corrected {
                s.c("h*k>=0", h * k, NonNegative)
                    .c("i*k<=0", i * k, NonPositive)
                    .c("f*j>=0", f * j, NonNegative)
                    .c("l*f*k<=0", l * f * k, NonPositive);
            }
        }
        AlgebraId::A53 => {
            let aa = s.d("A", -(b + c + d + e));
            let bb = s.d("B", b + c + d + 2.0 * e);
            let cc = s.d("C", -(a + b + 2.0 * c + 2.0 * d + 3.0 * e));
            let dd = s.d("D", a + b + 2.0 * c + 3.0 * d + 3.0 * e);
            let ee = s.d("E", -(a + b + c + 2.0 * d + 2.0 * e));
            s.c("A>0", aa, Positive)
                .c("B>=0", bb, NonNegative)
                .c("C>0", cc, Positive)
                .c("D>=0", dd, NonNegative)
                .c("E>0", ee, Positive)
                .c("f^2=AB", f * f - aa * bb, Zero);
            if corrected {
                s.c("l^2=CD", l * l - cc * dd, Zero);
            } else {
                s.c("l^2=BD", l * l - bb * dd, Zero);
            }
            s.c("h^2=DE", h * h - dd * ee, Zero).c("i^2=BC", i * i - bb * cc, Zero);
            if corrected {
                s.c("f*i<=0", f * i, NonPositive).c("l*h<=0", l * h, NonPositive);
            }
        }
        AlgebraId::A51 => {
            if corrected {
                s.c("a-b-c=0", a - b - c, Zero).c("b+c+d+e=0", b + c + d + e, Zero);
            } else {
                s.c("a+b+c=0", a + b + c, Zero);
            }
            s.c("d>0", d, Positive)
                .c("c<0", c, Negative)
                .c("b+d<=0", b + d, NonPositive)
                .c("f^2=c(b+d)", f * f - c * (b + d), Zero)
                .c("l^2=-d(b+d)", l * l + d * (b + d), Zero);
            if corrected {
                s.c("f*l<=0", f * l, NonPositive);
            }
        }
        AlgebraId::A52 => {
            let aa = s.d("A", a - b + e);
            let bb = s.d("B", a - b + d + 2.0 * e);
            let cc = s.d("C", a + d + 2.0 * e);
            s.c("b+c+d+e=0", b + c + d + e, Zero)
                .c("e>0", e, Positive)
                .c("A=a-b+e<0", aa, Negative)
                .c("B=a-b+d+2e>=0", bb, NonNegative)
                .c("C=a+d+2e<0", cc, Negative)
                .c("f^2=-AB", f * f + aa * bb, Zero)
                .c("l^2=-BC", l * l + bb * cc, Zero);
            if corrected {
                s.c("f*l<=0", f * l, NonPositive);
            }
        }
    }
    ConditionSection {
        branch,
        applicable: true,
        items: s.items,
        derived_quantities: s.derived,
    }
}

fn branches(id: AlgebraId) -> Vec<Option<Branch>> {
    sparsity_pattern(id).iter().map(|p| p.branch).collect()
}

/// Evaluates the necessary and sufficient conditions for `T`.
pub fn check_conditions(t: &PrescribedTensor) -> ConditionReport {
    conditions(t, ConditionSet::Corrected)
}

/// Evaluates the printed condition lists verbatim.
pub fn published_conditions(t: &PrescribedTensor) -> ConditionReport {
    conditions(t, ConditionSet::Published)
}

pub fn conditions(t: &PrescribedTensor, set: ConditionSet) -> ConditionReport {
    ConditionReport {
        id: t.id,
        sections: branches(t.id).into_iter().map(|b| section(t.id, b, t, set)).collect(),
    }
}

/// A verified solution at `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct Solution {
    pub coeffs: FrameCoefficients,
    pub t: f64,
    pub residual: f64,
    /// Set for `A5,6`, whose printed statement only claims sufficiency.
    pub sufficiency_only: bool,
    pub branch: Option<Branch>,
}

impl Solution {
    /// The member `(s·coeffs, s·t)` of the solution family.
    pub fn rescaled(&self, s: f64) -> Solution {
        Solution {
            coeffs: self.coeffs.scaled(s),
            t: self.t * s,
            ..self.clone()
        }
    }
}

/// Why no solution was produced.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum Unsolvable {
    #[error("diagonal system is incompatible (defect {residual:.3e})")]
    Incompatible { residual: f64 },
    #[error("{coeff}^2 would be {value:.3e}")]
    NegativeSquare { coeff: Coeff, value: f64 },
    #[error("{coeff} must be strictly signed but its square is {value:.3e}")]
    VanishingCoefficient { coeff: Coeff, value: f64 },
    #[error("degenerate case: {0}")]
    Degenerate(String),
    #[error("no sign choice reproduces T (best residual {best:.3e})")]
    NoSignPattern { best: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SolveAttempt {
    pub branch: Option<Branch>,
    pub outcome: Result<Solution, Unsolvable>,
}

/// `‖Ric(coeffs) − t²T‖∞`.
pub fn verify_solution(sol: &Solution, t: &PrescribedTensor) -> f64 {
    let ric = if sol.coeffs.id == AlgebraId::FiveA1 {
        RicciMatrix { m: Mat5::zeros() }
    } else {
        ricci_nilpotent(&pattern_tensor(&sol.coeffs))
    };
    (ric.m - t.m * (sol.t * sol.t)).amax()
}

struct Elimination {
    x: Vec<f64>,
    null: Vec<Vec<f64>>,
    inconsistency: f64,
}

/// Gauss–Jordan elimination with partial pivoting on `A x = b`.
fn eliminate(a: &[Vec<f64>], b: &[f64]) -> Elimination {
    let (rows, cols) = (a.len(), a[0].len());
    let mut m: Vec<Vec<f64>> = a
        .iter()
        .zip(b)
        .map(|(r, &y)| r.iter().copied().chain([y]).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let best = (r..rows)
            .max_by(|&i, &j| m[i][c].abs().total_cmp(&m[j][c].abs()))
            .unwrap();
        if m[best][c].abs() <= PIVOT_TOL {
            continue;
        }
        m.swap(r, best);
        let p = m[r][c];
        m[r].iter_mut().for_each(|x| *x /= p);
        for i in 0..rows {
            if i != r && m[i][c] != 0.0 {
                let f = m[i][c];
                for j in 0..=cols {
                    m[i][j] -= f * m[r][j];
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let inconsistency = m[r..].iter().map(|row| row[cols].abs()).fold(0.0, f64::max);
    let mut x = vec![0.0; cols];
    for (k, &p) in pivots.iter().enumerate() {
        x[p] = m[k][cols];
    }
    let null = (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|fc| {
            let mut v = vec![0.0; cols];
            v[fc] = 1.0;
            for (k, &p) in pivots.iter().enumerate() {
                v[p] = -m[k][fc];
            }
            v
        })
        .collect();
    Elimination { x, null, inconsistency }
}

fn unit_coeffs(id: AlgebraId, branch: Option<Branch>, names: &[Coeff], k: usize) -> FrameCoefficients {
    let mut f = FrameCoefficients::empty(id);
    f.case_tag = branch.or(f.case_tag);
    for (idx, &n) in names.iter().enumerate() {
        f.set(n, if idx == k { 1.0 } else { 0.0 });
    }
    f
}

fn solve_branch(id: AlgebraId, branch: Option<Branch>, t: &PrescribedTensor, tol: f64) -> Result<Solution, Unsolvable> {
    let names = coefficient_names(id);
    let n = names.len();
    // column k: diagonal of −2·Ric when only coefficient k equals 1
    let cols: Vec<Vec<f64>> = (0..n)
        .map(|k| {
            let m = ricci_nilpotent(&pattern_tensor(&unit_coeffs(id, branch, &names, k))).m;
            (0..N).map(|i| -2.0 * m[(i, i)]).collect()
        })
        .collect();
    let a: Vec<Vec<f64>> = (0..N).map(|i| (0..n).map(|k| cols[k][i]).collect()).collect();
    let rhs: Vec<f64> = (0..N).map(|i| -2.0 * t.m[(i, i)]).collect();
    let el = eliminate(&a, &rhs);
    if el.inconsistency > EQ_TOL {
        return Err(Unsolvable::Incompatible {
            residual: el.inconsistency,
        });
    }
    let mut sq = el.x.clone();
    if let Some(nv) = el.null.first() {
        // one free direction (A5,6): fixed by δσ = −2T(1,2)
        let di = names.iter().position(|&c| c == Coeff::Delta);
        let si = names.iter().position(|&c| c == Coeff::Sigma);
        let (Some(di), Some(si)) = (di, si) else {
            return Err(Unsolvable::Degenerate("underdetermined diagonal system".into()));
        };
        if el.null.len() > 1 || nv[si].abs() > PIVOT_TOL || nv[di].abs() <= PIVOT_TOL {
            return Err(Unsolvable::Degenerate("underdetermined diagonal system".into()));
        }
        let s2 = sq[si];
        if s2 / 2.0 <= STRICT_TOL {
            return Err(Unsolvable::VanishingCoefficient {
                coeff: Coeff::Sigma,
                value: s2,
            });
        }
        let f = t.m[(0, 1)];
        let tau = (4.0 * f * f / s2 - sq[di]) / nv[di];
        for (x, dv) in sq.iter_mut().zip(nv) {
            *x += tau * dv;
        }
    }
    let mut mags = vec![0.0; n];
    for (k, &c) in names.iter().enumerate() {
        let half = sq[k] / 2.0;
        let strict = sign_domain(id, c) != SignDomain::Free;
        if strict && half <= STRICT_TOL {
            return Err(if half < -STRICT_TOL {
                Unsolvable::NegativeSquare { coeff: c, value: sq[k] }
            } else {
                Unsolvable::VanishingCoefficient { coeff: c, value: sq[k] }
            });
        }
        if half < -STRICT_TOL {
            return Err(Unsolvable::NegativeSquare { coeff: c, value: sq[k] });
        }
        mags[k] = sq[k].max(0.0).sqrt();
    }
    let free: Vec<usize> = (0..n)
        .filter(|&k| sign_domain(id, names[k]) == SignDomain::Free && mags[k] > 0.0)
        .collect();
    let mut best = f64::INFINITY;
    for pattern in 0..(1usize << free.len()) {
        let mut coeffs = FrameCoefficients::empty(id);
        coeffs.case_tag = branch.or(coeffs.case_tag);
        for (k, &c) in names.iter().enumerate() {
            let sign = match sign_domain(id, c) {
                SignDomain::Negative => -1.0,
                SignDomain::Positive => 1.0,
                SignDomain::Free => match free.iter().position(|&fk| fk == k) {
                    Some(bit) if pattern >> bit & 1 == 1 => -1.0,
                    _ => 1.0,
                },
            };
            coeffs.set(c, sign * mags[k]);
        }
        if coeffs.validate().is_err() {
            continue;
        }
        let mut sol = Solution {
            coeffs,
            t: 1.0,
            residual: 0.0,
            sufficiency_only: id == AlgebraId::A56,
            branch,
        };
        sol.residual = verify_solution(&sol, t);
        if sol.residual <= tol {
            return Ok(sol);
        }
        best = best.min(sol.residual);
    }
    Err(Unsolvable::NoSignPattern { best })
}

/// Attempts every shape of `T`; see [`solve`].
pub fn solve_attempts(t: &PrescribedTensor, tol: f64) -> Vec<SolveAttempt> {
    if t.id == AlgebraId::FiveA1 {
        let norm = t.m.amax();
        let outcome = if norm <= PATTERN_TOL {
            Ok(Solution {
                coeffs: FrameCoefficients::empty(AlgebraId::FiveA1),
                t: 1.0,
                residual: norm,
                sufficiency_only: false,
                branch: None,
            })
        } else {
            Err(Unsolvable::Incompatible { residual: norm })
        };
        return vec![SolveAttempt { branch: None, outcome }];
    }
    t.views
        .iter()
        .map(|(branch, _)| SolveAttempt {
            branch: *branch,
            outcome: solve_branch(t.id, *branch, t, tol),
        })
        .collect()
}

/// Solves `Ric = t²T` with `t = 1`, returning the first verified solution
/// (residual ≤ `tol`) or the reason of the last failure.
pub fn solve_with_tolerance(t: &PrescribedTensor, tol: f64) -> Result<Solution, Unsolvable> {
    let mut last = Err(Unsolvable::Degenerate("no applicable shape".into()));
    for attempt in solve_attempts(t, tol) {
        if attempt.outcome.is_ok() {
            return attempt.outcome;
        }
        last = attempt.outcome;
    }
    last
}

pub fn solve(t: &PrescribedTensor) -> Option<Solution> {
    solve_with_tolerance(t, VERIFY_TOL).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use Coeff::*;

    fn diag(v: [f64; 5]) -> Mat5 {
        Mat5::from_diagonal(&nalgebra::Vector5::from(v))
    }

    #[test]
    fn a54_pattern_and_failing_d() {
        let t = PrescribedTensor::new(AlgebraId::A54, diag([-1.0, -1.0, 0.0, 0.0, 2.0])).unwrap();
        let rep = check_conditions(&t);
        let d = rep.items().find(|i| i.name == "d<0").unwrap();
        assert!(!d.satisfied);
        assert!(solve(&t).is_none());
    }

    #[test]
    fn a31_example() {
        let t = PrescribedTensor::new(AlgebraId::A31plus2A1, diag([-1.0, -1.0, 0.0, 0.0, 1.0])).unwrap();
        assert!(check_conditions(&t).satisfied());
        let sol = solve(&t).unwrap();
        assert!((sol.coeffs.alpha.unwrap() - 2f64.sqrt()).abs() < 1e-14);
        assert_eq!(sol.t, 1.0);
    }

    #[test]
    fn abelian_accepts_only_zero() {
        let t = PrescribedTensor::new(AlgebraId::FiveA1, Mat5::zeros()).unwrap();
        let sol = solve(&t).unwrap();
        assert_eq!(verify_solution(&sol, &t), 0.0);
        assert!(PrescribedTensor::new(AlgebraId::FiveA1, diag([1e-3, 0.0, 0.0, 0.0, 0.0])).is_err());
    }

    #[test]
    fn a54_round_trip() {
        let c = FrameCoefficients::new(AlgebraId::A54, None, &[(Alpha, 0.5), (Beta, 1.0), (Gamma, 2.0)]).unwrap();
        let t = PrescribedTensor::forward(&c).unwrap();
        assert!(check_conditions(&t).satisfied());
        let sol = solve(&t).unwrap();
        assert!(sol.residual <= 1e-10);
        assert!((sol.coeffs.alpha.unwrap().abs() - 0.5).abs() < 1e-12);
        assert!((sol.coeffs.beta.unwrap() - 1.0).abs() < 1e-12);
        assert!((sol.coeffs.gamma.unwrap() - 2.0).abs() < 1e-12);
        let mut bad = sol.clone();
        bad.coeffs.alpha = Some(sol.coeffs.alpha.unwrap() + 0.1);
        assert!(verify_solution(&bad, &t) > 1e-3);
    }

    #[test]
    fn trace_perturbation_is_rejected() {
        let c = FrameCoefficients::new(AlgebraId::A54, None, &[(Alpha, 0.5), (Beta, 1.0), (Gamma, 2.0)]).unwrap();
        let mut m = PrescribedTensor::forward(&c).unwrap().m;
        m[(0, 0)] += 1e-3;
        let t = PrescribedTensor::new(AlgebraId::A54, m).unwrap();
        assert!(!check_conditions(&t).satisfied());
        assert!(solve(&t).is_none());
    }

    #[test]
    fn a56_round_trip() {
        let c = FrameCoefficients::new(
            AlgebraId::A56,
            None,
            &[
                (Alpha, -0.7),
                (Beta, 0.3),
                (Gamma, 1.1),
                (Delta, -0.4),
                (Epsilon, 0.9),
                (Sigma, 1.3),
            ],
        )
        .unwrap();
        let t = PrescribedTensor::forward(&c).unwrap();
        assert!(check_conditions(&t).satisfied());
        let sol = solve(&t).unwrap();
        assert!(sol.sufficiency_only);
        assert!(sol.coeffs.max_diff(&c) < 1e-9);
        assert!(!published_conditions(&t).satisfied());
    }
}
