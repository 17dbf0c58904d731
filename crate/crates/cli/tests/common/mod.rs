//! Golden-file cases shared by the golden and acceptance suites.

#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

pub struct Case {
    pub fixture: &'static str,
    pub command: &'static str,
    pub args: &'static [&'static str],
    /// Distinguishes several runs of one command on one fixture.
    pub tag: &'static str,
    pub exit: i32,
}

pub const fn case(fixture: &'static str, command: &'static str, exit: i32) -> Case {
    Case { fixture, command, args: &[], tag: "", exit }
}

const CYCLIC: [&str; 7] = ["aug1", "zeven", "rnt", "aug1_f2", "rnt_f2", "aug1_z", "rnt_f5"];
const ALGEBRA: [&str; 3] = ["sub2", "sub2_full", "f2_parity"];

pub fn cases() -> Vec<Case> {
    let mut out = Vec::new();
    for f in CYCLIC {
        out.push(case(f, "check-input", 0));
        out.push(case(f, "present", 0));
        out.push(Case { args: &["--deg-cap", "4", "--samples", "10", "--seed", "3"], ..case(f, "verify", 0) });
    }
    for f in ALGEBRA {
        out.push(case(f, "check-input", 0));
        out.push(case(f, "generate", 0));
        out.push(case(f, "reduce", 0));
    }
    out.extend([
        Case { args: &["--simplify"], tag: "simplified", ..case("aug1", "present", 0) },
        Case {
            args: &["--presentation", "tests/fixtures/golden/aug1.present.json", "--deg-cap", "5"],
            tag: "given",
            ..case("aug1", "verify", 0)
        },
        case("sub2_zero", "check-input", 0),
        case("sub2_zero", "reduce", 0),
        case("sub2_zero", "generate", 2),
        case("aug1_quotient", "present", 0),
        case("aug1_quotient", "restrict", 0),
        Case { args: &["--deg-cap", "0"], tag: "cap0", ..case("aug1_quotient", "restrict", 3) },
        case("zeven_explicit_u", "present", 0),
        case("sub2_rewrite", "generate", 0),
        case("parity_rewrite", "generate", 0),
        case("compose_example", "compose", 0),
        case("compose_idempotent", "compose", 0),
        Case { args: &["--deg-cap", "0"], tag: "cap0", ..case("compose_idempotent", "compose", 3) },
        case("rnt_invalid", "check-input", 2),
        case("rnt_invalid", "present", 2),
        case("malformed", "present", 2),
        case("unknown_field", "check-input", 2),
        case("sub2", "present", 2),
        case("rnt", "restrict", 0),
        case("rnt", "present", 0),
    ]);
    out
}

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn run(c: &Case) -> (i32, Vec<u8>) {
    let input = format!("tests/fixtures/problems/{}.json", c.fixture);
    let out = Command::new(env!("CARGO_BIN_EXE_corank"))
        .current_dir(root())
        .arg(c.command)
        .arg(&input)
        .args(c.args)
        .output()
        .expect("binary runs");
    (out.status.code().expect("exit code"), out.stdout)
}

pub fn golden_path(c: &Case) -> PathBuf {
    let tag = if c.tag.is_empty() { String::new() } else { format!(".{}", c.tag) };
    root().join("tests/fixtures/golden").join(format!("{}.{}{tag}.json", c.fixture, c.command))
}
