//! Golden-file tests: each command runs twice on fixed inputs and must
//! reproduce `tests/golden/expected/<name>.txt` byte for byte.
//! Set `UPDATE_GOLDEN=1` to rewrite the expected files.

mod common;

use std::fs;

use common::{golden_path, transcript, GOLDEN_CASES};
use nilmetric::cli::run;

#[test]
fn golden_outputs() {
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).unwrap();
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for &(name, args, code) in GOLDEN_CASES {
        let (c1, first) = transcript(args);
        let (_, second) = transcript(args);
        assert_eq!(first, second, "{name}: output differs between runs");
        assert_eq!(c1, code, "{name}: exit code\n{first}");
        let path = golden_path(name);
        if update {
            fs::write(&path, &first).unwrap();
        } else {
            let expected = fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
            assert_eq!(first, expected, "{name}: golden mismatch");
        }
    }
}

#[test]
fn tolerance_override_is_validated() {
    let args = ["nilmetric", "solve", "5A1", "--tensor", "tests/golden/inputs/zero.json"];
    std::env::set_current_dir(env!("CARGO_MANIFEST_DIR")).unwrap();
    assert_eq!(run(args, Some("abc")).code, 1);
    assert_eq!(run(args, Some("1e-6")).code, 0);
}
