//! Structure constants, brackets and the catalog of the nine 5-dimensional
//! nilpotent Lie algebras.
//!
//! Indices are 0-based in code; documentation uses the 1-based labels
//! `e1 … e5` of the reference basis.

use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix5, Vector5};

use crate::linalg;

/// A vector in the reference basis `e1 … e5`.
pub type Vec5 = Vector5<f64>;
/// A 5×5 real matrix.
pub type Mat5 = Matrix5<f64>;

/// Dimension of every algebra handled by this crate.
pub const N: usize = 5;

/// The bracket tensor: `c[i][j][k]` is the coefficient of `e_k` in `[e_i, e_j]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StructureConstants {
    c: [[[f64; N]; N]; N],
}

impl Default for StructureConstants {
    fn default() -> Self {
        Self::zero()
    }
}

impl StructureConstants {
    pub fn zero() -> Self {
        Self { c: [[[0.0; N]; N]; N] }
    }

    /// Builds an antisymmetric tensor from `(i, j, k, value)` entries meaning
    /// `[e_i, e_j] += value · e_k`, with **1-based** indices as printed in tables.
    pub fn from_brackets(brackets: &[(usize, usize, usize, f64)]) -> Self {
        let mut sc = Self::zero();
        for &(i, j, k, v) in brackets {
            assert!(
                (1..=N).contains(&i) && (1..=N).contains(&j) && (1..=N).contains(&k),
                "bracket index out of range"
            );
            sc.add(i - 1, j - 1, k - 1, v);
        }
        sc
    }

    /// Adds `v` to `[e_i, e_j]_k` and the antisymmetric partner (0-based).
    pub fn add(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.c[i][j][k] += v;
        self.c[j][i][k] -= v;
    }

    /// Every component multiplied by `s`.
    pub fn scaled(&self, s: f64) -> Self {
        let mut out = *self;
        out.c.iter_mut().flatten().flatten().for_each(|x| *x *= s);
        out
    }

    /// Raw component access (0-based).
    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[i][j][k]
    }

    /// Raw component assignment without enforcing antisymmetry (0-based).
    /// Intended for constructing deliberately invalid tensors in validation code.
    pub fn set_raw(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.c[i][j][k] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.max_abs() == 0.0
    }

    pub fn max_abs(&self) -> f64 {
        self.c.iter().flatten().flatten().fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Largest violation of `c[i][j][k] = −c[j][i][k]`.
    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                for k in 0..N {
                    worst = worst.max((self.c[i][j][k] + self.c[j][i][k]).abs());
                }
            }
        }
        worst
    }

    /// `[x, y] = Σ x_i y_j c[i][j][·]`.
    pub fn bracket(&self, x: &Vec5, y: &Vec5) -> Vec5 {
        let mut out = Vec5::zeros();
        for i in 0..N {
            if x[i] == 0.0 {
                continue;
            }
            for j in 0..N {
                let w = x[i] * y[j];
                if w == 0.0 {
                    continue;
                }
                for k in 0..N {
                    out[k] += w * self.c[i][j][k];
                }
            }
        }
        out
    }

    /// `[e_i, e_j]` as a vector (0-based).
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec5 {
        Vec5::from_fn(|k, _| self.c[i][j][k])
    }

    /// Matrix of `ad_u`; column `j` is `[u, e_j]`.
    pub fn ad(&self, u: &Vec5) -> Mat5 {
        let mut m = Mat5::zeros();
        for j in 0..N {
            let col = self.bracket(u, &unit(j));
            m.set_column(j, &col);
        }
        m
    }

    /// Structure constants with respect to the basis formed by the columns of
    /// `basis`: `[b_i, b_j] = Σ_k c'[i][j][k] b_k`.
    ///
    /// Returns `None` if `basis` is singular.
    pub fn in_basis(&self, basis: &Mat5) -> Option<StructureConstants> {
        let lu = basis.lu();
        if !lu.is_invertible() {
            return None;
        }
        let mut out = Self::zero();
        for i in 0..N {
            for j in (i + 1)..N {
                let br = self.bracket(&basis.column(i).into_owned(), &basis.column(j).into_owned());
                let x = lu.solve(&br)?;
                for k in 0..N {
                    out.c[i][j][k] = x[k];
                    out.c[j][i][k] = -x[k];
                }
            }
        }
        Some(out)
    }

    /// Entry-wise maximum difference to another tensor.
    pub fn max_diff(&self, other: &StructureConstants) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..N {
            for j in 0..N {
                for k in 0..N {
                    worst = worst.max((self.c[i][j][k] - other.c[i][j][k]).abs());
                }
            }
        }
        worst
    }

    /// Nonzero brackets `[e_i,e_j] = Σ c e_k` for `i < j`, 1-based.
    pub fn nonzero_brackets(&self) -> Vec<(usize, usize, usize, f64)> {
        let mut out = Vec::new();
        for i in 0..N {
            for j in (i + 1)..N {
                for k in 0..N {
                    let v = self.c[i][j][k];
                    if v != 0.0 {
                        out.push((i + 1, j + 1, k + 1, v));
                    }
                }
            }
        }
        out
    }
}

/// Standard basis vector `e_{i+1}`.
pub fn unit(i: usize) -> Vec5 {
    let mut v = Vec5::zeros();
    v[i] = 1.0;
    v
}

/// Free-function form of [`StructureConstants::bracket`].
pub fn bracket(sc: &StructureConstants, x: &Vec5, y: &Vec5) -> Vec5 {
    sc.bracket(x, y)
}

/// Free-function form of [`StructureConstants::ad`].
pub fn ad(sc: &StructureConstants, u: &Vec5) -> Mat5 {
    sc.ad(u)
}

/// Maximum absolute value of the Jacobi expression
/// `Σ_m c[i][j][m] c[m][k][l] + c[j][k][m] c[m][i][l] + c[k][i][m] c[m][j][l]`
/// over all index quadruples.
pub fn jacobi_defect(sc: &StructureConstants) -> f64 {
    let c = &sc.c;
    let mut worst = 0.0_f64;
    for i in 0..N {
        for j in 0..N {
            for k in 0..N {
                for l in 0..N {
                    let mut s = 0.0;
                    for m in 0..N {
                        s += c[i][j][m] * c[m][k][l] + c[j][k][m] * c[m][i][l] + c[k][i][m] * c[m][j][l];
                    }
                    worst = worst.max(s.abs());
                }
            }
        }
    }
    worst
}

/// Dimensions of `g ⊇ [g,g] ⊇ [g,[g,g]] ⊇ …` until the sequence stabilises.
/// The final entry is 0 exactly when the algebra is nilpotent.
pub fn lower_central_series(sc: &StructureConstants) -> Vec<usize> {
    let mut span: Vec<Vec5> = (0..N).map(unit).collect();
    let mut dims = vec![N];
    loop {
        let mut gens = Vec::new();
        for i in 0..N {
            for w in &span {
                let b = sc.bracket(&unit(i), w);
                gens.push(b);
            }
        }
        let basis = linalg::independent_subset(&gens);
        let d = basis.len();
        let prev = *dims.last().unwrap();
        dims.push(d);
        if d == 0 || d == prev {
            break;
        }
        span = basis;
    }
    dims
}

/// The nine algebras of the classification table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AlgebraId {
    FiveA1,
    A54,
    A31plus2A1,
    A41plusA1,
    A56,
    A55,
    A53,
    A51,
    A52,
}

impl AlgebraId {
    pub const ALL: [AlgebraId; 9] = [
        AlgebraId::FiveA1,
        AlgebraId::A54,
        AlgebraId::A31plus2A1,
        AlgebraId::A41plusA1,
        AlgebraId::A56,
        AlgebraId::A55,
        AlgebraId::A53,
        AlgebraId::A51,
        AlgebraId::A52,
    ];

    /// Conventional display name, e.g. `A5,4` or `A3,1+2A1`.
    pub fn name(self) -> &'static str {
        match self {
            AlgebraId::FiveA1 => "5A1",
            AlgebraId::A54 => "A5,4",
            AlgebraId::A31plus2A1 => "A3,1+2A1",
            AlgebraId::A41plusA1 => "A4,1+A1",
            AlgebraId::A56 => "A5,6",
            AlgebraId::A55 => "A5,5",
            AlgebraId::A53 => "A5,3",
            AlgebraId::A51 => "A5,1",
            AlgebraId::A52 => "A5,2",
        }
    }

    /// Compact slug, e.g. `A54` or `A31+2A1`.
    pub fn slug(self) -> &'static str {
        match self {
            AlgebraId::FiveA1 => "5A1",
            AlgebraId::A54 => "A54",
            AlgebraId::A31plus2A1 => "A31+2A1",
            AlgebraId::A41plusA1 => "A41+A1",
            AlgebraId::A56 => "A56",
            AlgebraId::A55 => "A55",
            AlgebraId::A53 => "A53",
            AlgebraId::A51 => "A51",
            AlgebraId::A52 => "A52",
        }
    }

    /// Nonzero brackets `(i, j, k, c)` meaning `[e_i, e_j] = c·e_k`, 1-based.
    pub fn brackets(self) -> &'static [(usize, usize, usize, f64)] {
        match self {
            AlgebraId::FiveA1 => &[],
            AlgebraId::A54 => &[(1, 4, 5, 1.0), (2, 3, 5, 1.0)],
            AlgebraId::A31plus2A1 => &[(1, 2, 5, 1.0)],
            AlgebraId::A41plusA1 => &[(1, 2, 3, 1.0), (1, 3, 5, 1.0)],
            AlgebraId::A56 => &[(1, 2, 3, -1.0), (1, 3, 4, 1.0), (1, 4, 5, 1.0), (2, 3, 5, 1.0)],
            AlgebraId::A55 => &[(1, 2, 4, 1.0), (1, 3, 5, 1.0), (2, 4, 5, 1.0)],
            AlgebraId::A53 => &[(1, 2, 3, 1.0), (1, 3, 4, 1.0), (2, 3, 5, 1.0)],
            AlgebraId::A51 => &[(1, 2, 4, 1.0), (1, 3, 5, 1.0)],
            AlgebraId::A52 => &[(1, 2, 3, 1.0), (1, 3, 4, 1.0), (1, 4, 5, 1.0)],
        }
    }

    pub fn structure_constants(self) -> StructureConstants {
        StructureConstants::from_brackets(self.brackets())
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Error for unrecognised algebra names.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown algebra id `{0}` (expected one of 5A1, A5,4, A3,1+2A1, A4,1+A1, A5,6, A5,5, A5,3, A5,1, A5,2)")]
pub struct UnknownAlgebra(pub String);

impl FromStr for AlgebraId {
    type Err = UnknownAlgebra;

    /// Accepts display names (`A5,4`), slugs (`A54`), the enum spelling
    /// (`A31plus2A1`, `FiveA1`) and `⊕` for `+`; case and whitespace are ignored.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .trim()
            .to_lowercase()
            .replace('⊕', "+")
            .replace("plus", "+")
            .chars()
            .filter(|c| !c.is_whitespace() && *c != ',' && *c != '_' && *c != '{' && *c != '}')
            .collect();
        let id = match norm.as_str() {
            "5a1" | "fivea1" => AlgebraId::FiveA1,
            "a54" => AlgebraId::A54,
            "a31+2a1" => AlgebraId::A31plus2A1,
            "a41+a1" => AlgebraId::A41plusA1,
            "a56" => AlgebraId::A56,
            "a55" => AlgebraId::A55,
            "a53" => AlgebraId::A53,
            "a51" => AlgebraId::A51,
            "a52" => AlgebraId::A52,
            _ => return Err(UnknownAlgebra(s.to_string())),
        };
        Ok(id)
    }
}

/// One row of the classification table.
#[derive(Clone, Debug, PartialEq)]
pub struct CatalogEntry {
    pub id: AlgebraId,
    pub sc: StructureConstants,
    pub name: &'static str,
}

/// The nine algebras in table order.
pub fn catalog() -> Vec<CatalogEntry> {
    AlgebraId::ALL
        .iter()
        .map(|&id| CatalogEntry {
            id,
            sc: id.structure_constants(),
            name: id.name(),
        })
        .collect()
}

/// Human-readable bracket list such as `[e1,e4]=e5, [e2,e3]=e5`.
pub fn describe_brackets(sc: &StructureConstants) -> String {
    let mut parts = Vec::new();
    for i in 0..N {
        for j in (i + 1)..N {
            let terms: Vec<String> = (0..N)
                .filter(|&k| sc.get(i, j, k) != 0.0)
                .map(|k| {
                    let v = sc.get(i, j, k);
                    if v == 1.0 {
                        format!("e{}", k + 1)
                    } else if v == -1.0 {
                        format!("-e{}", k + 1)
                    } else {
                        format!("{}e{}", v, k + 1)
                    }
                })
                .collect();
            if !terms.is_empty() {
                parts.push(format!(
                    "[e{},e{}]={}",
                    i + 1,
                    j + 1,
                    terms.join("+").replace("+-", "-")
                ));
            }
        }
    }
    if parts.is_empty() {
        "none".to_string()
    } else {
        parts.join(", ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a52_bracket_by_bilinearity() {
        let sc = AlgebraId::A52.structure_constants();
        let v = sc.bracket(&unit(0), &(unit(1) + unit(2)));
        assert_eq!(v, unit(2) + unit(3));
    }

    #[test]
    fn ad_of_a31_e1_sends_e2_to_e5() {
        let m = AlgebraId::A31plus2A1.structure_constants().ad(&unit(0));
        let mut expected = Mat5::zeros();
        expected[(4, 1)] = 1.0;
        assert_eq!(m, expected);
    }

    #[test]
    fn central_series_examples() {
        assert_eq!(
            lower_central_series(&AlgebraId::FiveA1.structure_constants()),
            vec![5, 0]
        );
        assert_eq!(
            lower_central_series(&AlgebraId::A31plus2A1.structure_constants()),
            vec![5, 1, 0]
        );
        assert_eq!(
            lower_central_series(&AlgebraId::A52.structure_constants()),
            vec![5, 3, 2, 1, 0]
        );
    }

    #[test]
    fn id_parsing_accepts_names_and_slugs() {
        for id in AlgebraId::ALL {
            assert_eq!(id.name().parse::<AlgebraId>().unwrap(), id);
            assert_eq!(id.slug().parse::<AlgebraId>().unwrap(), id);
            assert_eq!(format!("{id:?}").parse::<AlgebraId>().unwrap(), id);
        }
        assert_eq!("A_{5,4}".parse::<AlgebraId>().unwrap(), AlgebraId::A54);
        assert!("A57".parse::<AlgebraId>().is_err());
    }

    #[test]
    fn describe_a54_row() {
        let s = describe_brackets(&AlgebraId::A54.structure_constants());
        assert_eq!(s, "[e1,e4]=e5, [e2,e3]=e5");
        assert_eq!(
            describe_brackets(&AlgebraId::A56.structure_constants()),
            "[e1,e2]=-e3, [e1,e3]=e4, [e1,e4]=e5, [e2,e3]=e5"
        );
    }
}
