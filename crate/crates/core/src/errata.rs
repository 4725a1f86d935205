//! Known misprints in the commonly quoted derivation forms, Ricci tables and
//! existence conditions, each confirmed against the defining equations
//! (derivation null space, brute-force Ricci, verified solver).

use crate::algebra::{AlgebraId, Mat5};
use crate::frames::{Branch, Coeff, FrameCoefficients};
use crate::solver::{check_conditions, published_conditions, solve, PrescribedTensor};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Topic {
    Derivations,
    Reduction,
    Ricci,
    Conditions,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Erratum {
    pub key: &'static str,
    pub algebra: Option<AlgebraId>,
    pub topic: Topic,
    pub printed: &'static str,
    pub corrected: &'static str,
}

macro_rules! erratum {
    ($key:expr, $alg:expr, $topic:ident, $printed:expr, $corrected:expr) => {
        Erratum {
            key: $key,
            algebra: $alg,
            topic: Topic::$topic,
            printed: $printed,
            corrected: $corrected,
        }
    };
}

use AlgebraId::*;

pub const ERRATA: &[Erratum] = &[
    erratum!("der-a55-21", Some(A55), Derivations, "D(2,1) = a21 free", "D(2,1) = 0"),
    erratum!(
        "der-a52-55",
        Some(A52),
        Derivations,
        "D(5,5) = 3a11",
        "D(5,5) = 3a11 + a22"
    ),
    erratum!(
        "red-scale",
        None,
        Reduction,
        "frame coefficients of S and 4S differ by a factor 2",
        "frame coefficients depend only on the homothety class of S"
    ),
    erratum!(
        "red-family-a41",
        Some(A41plusA1),
        Reduction,
        "every metric meets the two-parameter representative families",
        "the orbit space is three-dimensional; generic metrics leave a residual entry"
    ),
    erratum!(
        "red-family-a56",
        Some(A56),
        Reduction,
        "every metric meets the five-parameter representative family",
        "the orbit space is six-dimensional; generic metrics leave a residual entry"
    ),
    erratum!(
        "red-family-a52",
        Some(A52),
        Reduction,
        "every metric meets the three-parameter representative family",
        "the orbit space is five-dimensional; generic metrics leave residual entries"
    ),
    erratum!(
        "ric-a41-33",
        Some(A41plusA1),
        Ricci,
        "second case M(3,3) = α² − β²",
        "M(3,3) = β² − α²"
    ),
    erratum!(
        "ric-a56-22",
        Some(A56),
        Ricci,
        "M(2,2) = α² + β²",
        "M(2,2) = α² + β² + σ²"
    ),
    erratum!(
        "ric-a52-example",
        Some(A52),
        Ricci,
        "(α,β,γ,δ) = (1,0,1,1) gives −½diag(3,1,0,−1,−1)",
        "(α,β,γ,δ) = (1,0,1,1) gives −½diag(3,1,0,0,−1)"
    ),
    erratum!(
        "cond-a54-trace",
        Some(A54),
        Conditions,
        "a+b+e = 0 only",
        "a+b+e = 0 and c+d+e = 0"
    ),
    erratum!(
        "cond-a54-sign",
        Some(A54),
        Conditions,
        "f, l signs independent",
        "f·l ≥ 0"
    ),
    erratum!(
        "cond-a41-sign",
        Some(A41plusA1),
        Conditions,
        "e, f signs independent",
        "e·f ≤ 0"
    ),
    erratum!(
        "cond-a41-shape",
        Some(A41plusA1),
        Conditions,
        "second case uses the first-case shape of T",
        "second case: T diagonal plus T(3,4) = f"
    ),
    erratum!(
        "cond-a41-trace",
        Some(A41plusA1),
        Conditions,
        "2b − c − a + d = 0",
        "2b + c + d − a = 0"
    ),
    erratum!(
        "cond-a56",
        Some(A56),
        Conditions,
        "b+c+d+e = 0 together with conditions on D, E",
        "σ² = −2(b+c+d+e) > 0; D = 4f²/σ², with the sign-resolved list of the solver"
    ),
    erratum!(
        "cond-a55-de",
        Some(A55),
        Conditions,
        "D = a+2c+3d+3e, E = −(a+c+2d+2e)",
        "D = a+b+2c+2d+3e, E = −(a+b+c+d+2e)"
    ),
    erratum!(
        "cond-a55-sign",
        Some(A55),
        Conditions,
        "cross-term signs independent",
        "h·k ≥ 0, i·k ≤ 0, f·j ≥ 0, l·f·k ≤ 0"
    ),
    erratum!("cond-a53-l", Some(A53), Conditions, "l² = BD", "l² = CD"),
    erratum!(
        "cond-a53-sign",
        Some(A53),
        Conditions,
        "cross-term signs independent",
        "f·i ≤ 0, l·h ≤ 0"
    ),
    erratum!(
        "cond-a51-trace",
        Some(A51),
        Conditions,
        "a+b+c = 0",
        "a−b−c = 0 and b+c+d+e = 0"
    ),
    erratum!(
        "cond-a51-sign",
        Some(A51),
        Conditions,
        "f, l signs independent",
        "f·l ≤ 0"
    ),
    erratum!(
        "cond-a52-sign",
        Some(A52),
        Conditions,
        "f, l signs independent",
        "f·l ≤ 0"
    ),
];

/// Errata touching `id` under `topic` (global entries included).
pub fn errata_for(id: AlgebraId, topic: Topic) -> Vec<&'static Erratum> {
    ERRATA
        .iter()
        .filter(|e| e.topic == topic && e.algebra.map_or(true, |a| a == id))
        .collect()
}

/// A tensor on which the printed conditions and the solver disagree.
#[derive(Clone, Debug)]
pub struct Counterexample {
    pub key: &'static str,
    pub tensor: PrescribedTensor,
    pub published: bool,
    pub corrected: bool,
    pub solvable: bool,
}

fn forward(id: AlgebraId, branch: Option<Branch>, vals: &[(Coeff, f64)]) -> Mat5 {
    let c = FrameCoefficients::new(id, branch, vals).expect("admissible coefficients");
    PrescribedTensor::forward(&c).expect("forward tensor").m
}

fn flip(mut m: Mat5, r: usize, c: usize) -> Mat5 {
    m[(r, c)] = -m[(r, c)];
    m[(c, r)] = -m[(c, r)];
    m
}

/// One reproducible counterexample per condition erratum.
pub fn counterexamples() -> Vec<Counterexample> {
    use Coeff::*;
    let a54 = forward(A54, None, &[(Alpha, 0.5), (Beta, 1.0), (Gamma, 2.0)]);
    let mut a54_shift = a54;
    a54_shift[(4, 4)] += 0.1;
    a54_shift[(0, 0)] -= 0.1;
    let a41 = forward(
        A41plusA1,
        Some(Branch::First),
        &[(Alpha, 1.0), (Beta, 1.0), (Gamma, 0.5)],
    );
    let a41b = forward(
        A41plusA1,
        Some(Branch::Second),
        &[(Alpha, 1.0), (Beta, 0.8), (Gamma, 0.6)],
    );
    let a56 = forward(
        A56,
        None,
        &[
            (Alpha, -0.7),
            (Beta, 0.3),
            (Gamma, 1.1),
            (Delta, -0.4),
            (Epsilon, 0.9),
            (Sigma, 1.3),
        ],
    );
    let a55 = forward(
        A55,
        None,
        &[(Alpha, 1.0), (Beta, 0.5), (Gamma, 1.0), (Delta, 0.5), (Epsilon, 1.0)],
    );
    let a53 = forward(
        A53,
        None,
        &[(Alpha, 1.0), (Beta, 0.5), (Gamma, 2.0), (Delta, 0.5), (Epsilon, 1.0)],
    );
    // |δ| = γ makes B = C, so the printed l² test agrees with the corrected one
    let a53_bc = forward(
        A53,
        None,
        &[(Alpha, 1.0), (Beta, 0.5), (Gamma, 1.0), (Delta, 1.0), (Epsilon, 1.0)],
    );
    let a51 = forward(A51, None, &[(Alpha, 1.0), (Beta, 0.5), (Gamma, 1.0)]);
    let a52 = forward(A52, None, &[(Alpha, 1.0), (Beta, 0.5), (Gamma, 1.0), (Delta, 1.0)]);
    let cases: [(&str, AlgebraId, Mat5); 10] = [
        ("cond-a54-trace", A54, a54_shift),
        ("cond-a54-sign", A54, flip(a54, 2, 3)),
        ("cond-a41-sign", A41plusA1, flip(a41, 1, 2)),
        ("cond-a41-shape", A41plusA1, a41b),
        ("cond-a56", A56, a56),
        ("cond-a55-de", A55, a55),
        ("cond-a53-l", A53, a53),
        ("cond-a53-sign", A53, flip(a53_bc, 0, 1)),
        ("cond-a51-trace", A51, a51),
        ("cond-a52-sign", A52, flip(a52, 1, 2)),
    ];
    cases
        .into_iter()
        .map(|(key, id, m)| {
            let tensor = PrescribedTensor::new(id, m).expect("pattern tensor");
            Counterexample {
                key,
                published: published_conditions(&tensor).satisfied(),
                corrected: check_conditions(&tensor).satisfied(),
                solvable: solve(&tensor).is_some(),
                tensor,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counterexamples_separate_printed_and_corrected_lists() {
        for cx in counterexamples() {
            assert_ne!(cx.published, cx.solvable, "{}", cx.key);
            assert_eq!(cx.corrected, cx.solvable, "{}", cx.key);
        }
    }

    #[test]
    fn every_counterexample_has_an_entry() {
        for cx in counterexamples() {
            assert!(ERRATA.iter().any(|e| e.key == cx.key), "{}", cx.key);
        }
    }
}
