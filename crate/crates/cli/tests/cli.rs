use std::path::{Path, PathBuf};
use std::process::{Command, Output, Stdio};

use std::io::Write as _;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn scratch_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hats-test-{}-{tag}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn hats(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hats"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden() -> Vec<(String, i32)> {
    std::fs::read_to_string(data("golden.txt"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let (f, c) = l.split_once(' ').unwrap();
            (f.to_string(), c.trim().parse().unwrap())
        })
        .collect()
}

#[test]
fn exit_codes_match_golden_verdicts() {
    for (file, want) in golden() {
        let out = hats(&["solve", &data(&file)]);
        assert_eq!(code(&out), want, "{file}: {}", stdout(&out));
    }
}

#[test]
fn solve_certificates_verify() {
    let dir = scratch_dir("cert");
    for (file, want) in golden() {
        if want != 0 {
            continue;
        }
        let cert = dir.join(format!("{file}.strategy")).display().to_string();
        let out = hats(&["solve", &data(&file), "--certificate", &cert]);
        assert_eq!(code(&out), 0, "{file}");
        let check = hats(&["verify", &data(&file), "--strategy", &cert]);
        assert_eq!(code(&check), 0, "{file}: {}", stdout(&check));
    }
}

#[test]
fn verify_reports_a_disprover() {
    let dir = scratch_dir("disprover");
    let strat = dir.join("same.strategy");
    std::fs::write(
        &strat,
        "plan p order=q\n0 -> 0\n1 -> 1\nplan q order=p\n0 -> 0\n1 -> 1\n",
    )
    .unwrap();
    let out = hats(&[
        "--json",
        "verify",
        &data("k2.hgf"),
        "--strategy",
        &strat.display().to_string(),
    ]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["wins"], false);
    let p = v["disprover"]["p"].as_u64().unwrap();
    let q = v["disprover"]["q"].as_u64().unwrap();
    assert_ne!(p, q);
}

#[test]
fn json_report_has_the_documented_fields() {
    let out = hats(&["--json", "solve", &data("c5_h3.hgf")]);
    assert_eq!(code(&out), 1);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "unwinnable");
    assert!(v["certificate_path"].is_null());
    assert_eq!(v["digest"].as_str().unwrap().len(), 64);
    for key in ["nodes", "colorings", "millis"] {
        assert!(v["stats"][key].is_u64());
    }
    let step = &v["trace"][0];
    assert!(step["rule"].is_string() && step["vertices"].is_array());
    assert!(step.get("rewrite").is_some());
}

#[test]
fn methods_and_job_counts_agree() {
    for (file, want) in golden() {
        if file == "k7.hgf" {
            continue;
        }
        for args in [
            vec!["solve", "--method", "oracle"],
            vec!["solve", "--method", "classify"],
            vec!["--jobs", "2", "solve", "--method", "oracle"],
        ] {
            let mut all = args.clone();
            let path = data(&file);
            all.push(&path);
            let got = code(&hats(&all));
            assert!(
                got == want || (got == 2 && args.contains(&"classify")),
                "{file} {args:?}: {got}"
            );
        }
    }
}

#[test]
fn reads_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_hats"))
        .args(["solve", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(b"vertex a h=2\nvertex b h=2\nedge a b\n")
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).starts_with("verdict: winnable"));
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(code(&hats(&["frobnicate"])), 64);
    assert_eq!(code(&hats(&["solve"])), 64);
    assert_eq!(
        code(&hats(&[
            "construct",
            "--op",
            "nope",
            "--in",
            &data("k2.hgf")
        ])),
        64
    );
    assert_eq!(code(&hats(&["solve", "/nonexistent/game.hgf"])), 64);

    let dir = scratch_dir("parse");
    let bad = dir.join("bad.hgf");
    std::fs::write(&bad, "vertex a h=2\nvertex b h=two\n").unwrap();
    let out = hats(&["--json", "solve", &bad.display().to_string()]);
    assert_eq!(code(&out), 65);
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "parse");
    assert!(err["error"]["message"].as_str().unwrap().contains("line 2"));

    std::fs::write(&bad, "vertex a h=2 g=2\n").unwrap();
    assert_eq!(code(&hats(&["solve", &bad.display().to_string()])), 65);
}

#[test]
fn pack_answers() {
    let out = hats(&[
        "pack",
        "--dims",
        "2,2",
        "--prism",
        "1,1",
        "--count",
        "5",
        "--overlap",
        "1",
    ]);
    assert_eq!(code(&out), 1);
    let out = hats(&[
        "pack",
        "--dims",
        "2,2",
        "--prism",
        "1,1",
        "--count",
        "4",
        "--overlap",
        "1",
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(
        stdout(&out).lines().filter(|l| l.contains(" x ")).count(),
        4
    );
}

#[test]
fn reduce_emits_the_residual() {
    let dir = scratch_dir("reduce");
    let res = dir.join("residual.hgf").display().to_string();
    let out = hats(&["reduce", &data("star_8.hgf"), "--emit", &res]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("latvian-2-leaf"));
    let residual = std::fs::read_to_string(&res).unwrap();
    assert_eq!(
        residual.lines().filter(|l| l.starts_with("vertex")).count(),
        2
    );
    assert_eq!(code(&hats(&["solve", &res])), 0);
}

#[test]
fn constructions_verify() {
    let dir = scratch_dir("construct");
    let path3 = dir.join("p3.hgf");
    std::fs::write(
        &path3,
        "vertex a h=2\nvertex b h=4\nvertex c h=2\nedge a b\nedge b c\n",
    )
    .unwrap();
    let game = dir.join("c4.hgf").display().to_string();
    let strat = dir.join("c4.strategy").display().to_string();
    let out = hats(&[
        "construct",
        "--op",
        "attach_hatness2",
        "--in",
        &path3.display().to_string(),
        "--args",
        "y=a,c",
        "--out",
        &game,
        "--strategy-out",
        &strat,
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    assert!(stdout(&out).contains("verified: yes"));
    assert_eq!(code(&hats(&["verify", &game, "--strategy", &strat])), 0);

    let left = dir.join("left.hgf");
    let right = dir.join("right.hgf");
    std::fs::write(&left, "vertex a h=2\nvertex b h=2\nedge a b\n").unwrap();
    std::fs::write(&right, "vertex b h=2\nvertex c h=2\nedge b c\n").unwrap();
    let out = hats(&[
        "--json",
        "construct",
        "--op",
        "product_single_point",
        "--in",
        &format!("{},{}", left.display(), right.display()),
        "--args",
        "a=b",
        "--tightness",
        "1",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verified"], true);
    assert!(v["game"].as_str().unwrap().contains("vertex b h=4"));
    assert_eq!(v["tightness"].as_array().unwrap().len(), 3);

    let out = hats(&[
        "construct",
        "--op",
        "attach_hatness2",
        "--in",
        &data("c5_h3.hgf"),
        "--args",
        "y=c0",
    ]);
    assert_eq!(code(&out), 64, "an unwinnable input is refused");
}

#[test]
fn bound_and_poly() {
    let out = hats(&["bound", &data("k3_444.hgf")]);
    assert_eq!(code(&out), 1);
    let out = hats(&["bound", &data("k2.hgf")]);
    assert_eq!(code(&out), 2);
    let out = hats(&[
        "--json",
        "poly",
        &data("dc5.hgf"),
        "--weights",
        "1/2,1/2,1/2,1/2,1/2",
    ]);
    assert_eq!(code(&out), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["acyclicity"], "1/16");
    assert!(v["independence"].is_null());
    let out = hats(&["poly", &data("k2.hgf"), "--weights", "1/2"]);
    assert_eq!(code(&out), 64);
}

#[test]
fn report_formats() {
    let out = hats(&["report", &data("path_2442.hgf")]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    assert!(text.contains("verdict: winnable") && text.contains("reduction:"));
    let out = hats(&["report", &data("path_2442.hgf"), "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(v["verdict"], "winnable");
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
}
