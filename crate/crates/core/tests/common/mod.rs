#![allow(dead_code)]

use nilmetric::frames::{coefficient_names, sign_domain, Branch, FrameCoefficients, SignDomain};
use nilmetric::solver::sparsity_pattern;
use nilmetric::{AlgebraId, Mat5};
use rand::Rng;

pub fn random_coeffs<R: Rng>(rng: &mut R, id: AlgebraId, branch: Option<Branch>) -> FrameCoefficients {
    let mut c = FrameCoefficients::empty(id);
    if branch.is_some() {
        c.case_tag = branch;
    }
    for name in coefficient_names(id) {
        let mag = rng.gen_range(0.2..2.0);
        let v = match sign_domain(id, name) {
            SignDomain::Positive => mag,
            SignDomain::Negative => -mag,
            SignDomain::Free if rng.gen_bool(0.5) => mag,
            SignDomain::Free => -mag,
        };
        c.set(name, v);
    }
    c
}

/// The frame families of `id` (both branches for A4,1+A1).
pub fn shapes(id: AlgebraId) -> Vec<Option<Branch>> {
    sparsity_pattern(id).iter().map(|p| p.branch).collect()
}

pub fn random_g<R: Rng>(rng: &mut R) -> Mat5 {
    loop {
        let g = Mat5::from_fn(|_, _| rng.gen_range(-1.0..1.0)) + Mat5::identity() * 0.5;
        if g.determinant().abs() > 1e-2 {
            return g;
        }
    }
}

pub fn random_spd<R: Rng>(rng: &mut R) -> Mat5 {
    let a = Mat5::from_fn(|_, _| rng.gen_range(-1.0..1.0));
    a.transpose() * a + Mat5::identity() * 0.3
}

/// A random symmetric tensor in the given shape.
pub fn random_pattern_tensor<R: Rng>(rng: &mut R, id: AlgebraId, branch: Option<Branch>) -> Mat5 {
    let pats = sparsity_pattern(id);
    let pat = pats.iter().find(|p| p.branch == branch).expect("shape");
    let mut m = Mat5::zeros();
    for e in pat.entries {
        let v = rng.gen_range(-2.0..2.0);
        m[(e.0, e.1)] = v;
        m[(e.1, e.0)] = v;
    }
    m
}

/// Golden CLI cases: name, arguments, expected exit code. Paths are
/// relative to the crate root.
pub const GOLDEN_CASES: &[(&str, &[&str], i32)] = &[
    ("algebras", &["algebras"], 0),
    ("derive_a54", &["derive", "A5,4"], 0),
    ("derive_unknown", &["derive", "A9,9"], 1),
    (
        "reduce_a54",
        &["reduce", "A54", "--gram", "tests/golden/inputs/gram_a54.json"],
        0,
    ),
    (
        "reduce_a52",
        &["reduce", "A52", "--gram", "tests/golden/inputs/gram_a52.json"],
        0,
    ),
    (
        "frame_a31",
        &["frame", "A3,1+2A1", "--gram", "tests/golden/inputs/gram_diag.json"],
        0,
    ),
    (
        "frame_a54",
        &["frame", "A54", "--gram", "tests/golden/inputs/gram_a54.json"],
        0,
    ),
    ("ricci_a31_coeffs", &["ricci", "A31+2A1", "--coeffs", "alpha=2"], 0),
    (
        "ricci_a41_second",
        &[
            "ricci",
            "A41+A1",
            "--coeffs",
            "alpha=1,beta=2,gamma=0.5",
            "--branch",
            "second",
        ],
        0,
    ),
    (
        "ricci_a54_gram",
        &["ricci", "A54", "--gram", "tests/golden/inputs/gram_a54.json"],
        0,
    ),
    (
        "ricci_a52_gram",
        &["ricci", "A52", "--gram", "tests/golden/inputs/gram_a52.json"],
        0,
    ),
    (
        "ricci_bad_sign",
        &["ricci", "A54", "--coeffs", "alpha=1,beta=-1,gamma=1"],
        1,
    ),
    (
        "solve_zero",
        &["solve", "5A1", "--tensor", "tests/golden/inputs/zero.json"],
        0,
    ),
    (
        "solve_a31",
        &["solve", "A31+2A1", "--tensor", "tests/golden/inputs/a31.json"],
        0,
    ),
    (
        "solve_a54_forward",
        &["solve", "A54", "--tensor", "tests/golden/inputs/a54_forward.json"],
        0,
    ),
    (
        "solve_a54_fails_d",
        &["solve", "A54", "--tensor", "tests/golden/inputs/a54_fails_d.json"],
        2,
    ),
    (
        "solve_off_pattern",
        &["solve", "A54", "--tensor", "tests/golden/inputs/a54_off_pattern.json"],
        1,
    ),
    ("solve_batch", &["solve", "--batch", "tests/golden/batch"], 2),
    (
        "verify_a54",
        &[
            "verify",
            "A54",
            "--tensor",
            "tests/golden/inputs/a54_forward.json",
            "--coeffs",
            "alpha=0.5,beta=1,gamma=2",
            "--t",
            "1",
        ],
        0,
    ),
    (
        "verify_a54_rescaled",
        &[
            "verify",
            "A54",
            "--tensor",
            "tests/golden/inputs/a54_forward.json",
            "--coeffs",
            "alpha=1,beta=2,gamma=4",
            "--t",
            "2",
        ],
        0,
    ),
    (
        "verify_a54_perturbed",
        &[
            "verify",
            "A54",
            "--tensor",
            "tests/golden/inputs/a54_forward.json",
            "--coeffs",
            "alpha=0.6,beta=1,gamma=2",
            "--t",
            "1",
        ],
        2,
    ),
];

/// Stdout, exit marker and stderr of one CLI run.
pub fn transcript(args: &[&str]) -> (i32, String) {
    let argv = std::iter::once("nilmetric").chain(args.iter().copied());
    let out = nilmetric::cli::run(argv, None);
    (
        out.code,
        format!("{}--- exit {} ---\n{}", out.stdout, out.code, out.stderr),
    )
}

pub fn golden_path(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden/expected")
        .join(format!("{name}.txt"))
}
