use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use diffalg::cli::run;

struct Outcome {
    code: i32,
    out: String,
    err: String,
}

fn diffalg(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("diffalg").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome {
        code,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

const B3_SPEC: &str = "\
family B
generators 3
sets
I 1 2
T-circle 3
params
x 1 = 1
x 2 = -1
g = 2
Lambda = 1
g_circle 1 = 3
";

const B3: &str = "\
generators 3
x 1 = 1
x 2 = -1
x 3 = 0
g 1 2 = 2
g 1 3 = 3
g 2 1 = 1
g 2 3 = 2
g 3 1 = 0
g 3 2 = 0
";

const MIXED: &str = "\
generators 4
x 1 = 1
x 2 = 2
x 3 = 3
x 4 = 4
g 1 2 = 1
g 2 1 = 1
g 1 3 = 1
g 3 1 = 1
g 2 3 = 1
g 3 2 = 1
g 1 4 = 1
g 2 4 = 2
g 3 4 = 3
";

#[test]
fn construct_then_check() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write(dir.path(), "b3.spec", B3_SPEC);
    let r = diffalg(&["construct", "--spec", spec.to_str().unwrap()]);
    assert_eq!((r.code, r.out.as_str()), (0, B3));
    let p = write(dir.path(), "b3.txt", &r.out);
    let r = diffalg(&["check", p.to_str().unwrap()]);
    assert_eq!((r.code, r.out.as_str()), (0, "PBW: yes, triples checked: 1\n"));
}

#[test]
fn failing_check_lists_triples() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "mixed.txt", MIXED);
    let r = diffalg(&["check", p.to_str().unwrap()]);
    assert_eq!(r.code, 1);
    let mut lines = r.out.lines();
    assert_eq!(lines.next(), Some("PBW: no, triples checked: 4"));
    let failing: Vec<&str> = lines.collect();
    assert!(!failing.is_empty());
    assert!(
        failing
            .iter()
            .all(|l| l.starts_with("failing triple: (") && l.contains(",4) difference: ")),
        "{failing:?}"
    );
    let r = diffalg(&["classify", p.to_str().unwrap()]);
    assert_eq!((r.code, r.out.as_str()), (1, "PBW: no\n"));
}

#[test]
fn classify_reports_are_stable() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "b3.txt", B3);
    let text = diffalg(&["classify", p.to_str().unwrap()]);
    assert_eq!(text.code, 0);
    assert_eq!(
        text.out,
        "family: B\nthree-generator type: B(3)\nI = {1 2}\nT-circle = {3}\nparameters:\n  x.1 = 1\n  x.2 = -1\n  g = 2\n  Lambda = 1\n  g_circle.1 = 3\nphysical: yes\n"
    );
    let structured = diffalg(&["classify", p.to_str().unwrap(), "--format", "structured"]);
    assert_eq!(
        structured.out,
        "family: B\nthree-type: B(3)\nn: 3\nset.I: 1 2\ncomponent.1: T-circle 3\nparam.x.1: 1\nparam.x.2: -1\nparam.g: 2\nparam.Lambda: 1\nparam.g_circle.1: 3\nphysical: true\nphysical.nonpositive-upper:\nphysical.negative-lower:\nphysical.inner-circle:\n"
    );
    assert_eq!(
        diffalg(&["classify", p.to_str().unwrap(), "--format", "structured"]).out,
        structured.out
    );
}

#[test]
fn normalize_prints_the_normal_form() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "b3.txt", B3);
    let r = diffalg(&["normalize", p.to_str().unwrap(), "1 2 3"]);
    assert_eq!((r.code, r.out.as_str()), (0, "-1/6 * D3\n"));
    let r = diffalg(&["normalize", p.to_str().unwrap(), "2 1"]);
    assert_eq!(r.out, "1 * D2 D1\n");
    let r = diffalg(&["normalize", p.to_str().unwrap(), "1 4"]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("out of range"));
}

#[test]
fn transforms() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "b3.txt", B3);
    let path = p.to_str().unwrap();
    let mirrored = diffalg(&["transform", path, "--mirror"]);
    assert_eq!(mirrored.code, 0);
    let m = write(dir.path(), "m.txt", &mirrored.out);
    let r = diffalg(&["classify", m.to_str().unwrap(), "--format", "structured"]);
    assert!(r.out.contains("three-type: B(4)\n"));
    assert_eq!(diffalg(&["transform", m.to_str().unwrap(), "--mirror"]).out, B3);

    let k = write(dir.path(), "kappa", "1 -1 2\n");
    let r = diffalg(&["transform", path, "--rescale", k.to_str().unwrap()]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("x 2 = 1\n"));

    let r = diffalg(&["transform", path, "--permute", "1 3 2"]);
    assert_eq!(r.code, 1);
    assert!(r.err.contains("ordering"));
    let r = diffalg(&["transform", path, "--shift-c"]);
    assert_eq!(r.code, 1);
    assert_eq!(diffalg(&["transform", path]).code, 2);
    assert_eq!(diffalg(&["transform", path, "--mirror", "--shift-c"]).code, 2);
}

const PLAN: &str = "\
block B(I,T-bullet)
generators 3
x 1 = 1
x 3 = 1
g 1 2 = 1
g 1 3 = 1
g 2 3 = 1
g 3 1 = -1
end
block B(I,T-bullet)
generators 3
x 1 = 1
x 3 = 1
g 1 2 = 2
g 1 3 = 1
g 2 3 = 3
g 3 1 = -1
end
interleaving I1 U2.1 U1.1 I2
";

#[test]
fn blend_and_enumerate() {
    let dir = tempfile::tempdir().unwrap();
    let plan = write(dir.path(), "plan", PLAN);
    let plan = plan.to_str().unwrap();
    let r = diffalg(&["enumerate", "--plan", plan, "--count-only"]);
    assert_eq!((r.code, r.out.as_str()), (0, "2\n"));
    let r = diffalg(&["enumerate", "--plan", plan]);
    assert_eq!(r.out, "I1 U1.1 U2.1 I2\nI1 U2.1 U1.1 I2\n");
    let r = diffalg(&["blend", "--plan", plan]);
    assert_eq!(r.code, 0, "{}", r.err);
    let blended = write(dir.path(), "blended", &r.out);
    let c = diffalg(&["classify", blended.to_str().unwrap(), "--format", "structured"]);
    assert!(
        c.out.contains("component.1: T-bullet 2\ncomponent.2: T-bullet 3\n"),
        "{}",
        c.out
    );

    let single = write(dir.path(), "single", &PLAN[..PLAN.find("end\n").unwrap() + 4]);
    let r = diffalg(&["enumerate", "--plan", single.to_str().unwrap(), "--count-only"]);
    assert_eq!(r.out, "1\n");
    assert_eq!(diffalg(&["blend", "--plan", single.to_str().unwrap()]).code, 2);
}

#[test]
fn grid_search_sample() {
    let r = diffalg(&["grid-search", "--sample", "300", "--seed", "3"]);
    assert_eq!(r.code, 0);
    assert!(r.out.starts_with("presentations: 300\npbw: "));
    assert!(r.out.ends_with("internal-inconsistencies: 0\n"));
    assert_eq!(diffalg(&["grid-search", "--sample", "300", "--seed", "3"]).out, r.out);
    assert_eq!(diffalg(&["grid-search", "--n", "4"]).code, 2);
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "generators 2\ng 1 2 = one\n");
    let r = diffalg(&["check", bad.to_str().unwrap()]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("line 2"), "{}", r.err);
    assert_eq!(
        diffalg(&["check", dir.path().join("missing").to_str().unwrap()]).code,
        2
    );
    assert_eq!(diffalg(&["frobnicate"]).code, 2);
    assert_eq!(diffalg(&[]).code, 2);
    let help = diffalg(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.out.contains("grid-search"));
}

#[test]
fn binary_reports_through_exit_status() {
    let dir = tempfile::tempdir().unwrap();
    let p = write(dir.path(), "mixed.txt", MIXED);
    let out = Command::new(env!("CARGO_BIN_EXE_diffalg"))
        .arg("check")
        .arg(&p)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stdout).starts_with("PBW: no"));
}
