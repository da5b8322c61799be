use std::process::{Command, Output};

fn wilflab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wilflab"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn text(bytes: &[u8]) -> String {
    String::from_utf8(bytes.to_vec()).unwrap()
}

#[test]
fn payload_on_stdout_only() {
    let out = wilflab(&["cluster", "2314", "--set", "1,2,4"]);
    assert!(out.status.success());
    assert_eq!(text(&out.stdout), "2334414\n");
    assert!(out.stderr.is_empty());
}

#[test]
fn exit_codes_split_usage_from_domain_errors() {
    let domain = wilflab(&["cluster", "2314", "--set", "1,6"]);
    assert_eq!(domain.status.code(), Some(2));
    assert!(domain.stdout.is_empty());
    assert!(text(&domain.stderr).contains("gap 5"));

    let usage = wilflab(&["sstest", "12x", "21"]);
    assert_eq!(usage.status.code(), Some(1));
    assert!(usage.stdout.is_empty());

    assert_eq!(wilflab(&["nonsense"]).status.code(), Some(1));
    assert_eq!(wilflab(&["sstest", "123", "21"]).status.code(), Some(2));
    assert_eq!(wilflab(&["--version"]).status.code(), Some(0));
}

#[test]
fn thread_setting() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_wilflab"))
            .args(["enumerate", "7", "--relation", "ss", "--format", "json"])
            .env("WILFLAB_THREADS", threads)
            .output()
            .unwrap()
    };
    let one = run("1");
    let auto = run("0");
    assert!(one.status.success() && auto.status.success());
    assert_eq!(one.stdout, auto.stdout);
    assert_eq!(run("many").status.code(), Some(1));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["enumerate", "6", "--relation", "cross"][..],
        &["tree", "21365874", "--format", "dot"],
        &[
            "genfun",
            "2413",
            "--series",
            "A",
            "--max-len",
            "6",
            "--max-norm",
            "14",
        ],
    ] {
        assert_eq!(wilflab(args).stdout, wilflab(args).stdout, "{args:?}");
    }
}

#[test]
fn json_outputs_parse_back() {
    let tree: wilflab::tree::TreeExport =
        serde_json::from_slice(&wilflab(&["tree", "21365874", "--format", "json"]).stdout).unwrap();
    assert_eq!(tree.n, 8);
    assert_eq!(tree.classes.len(), 4);

    let doc: wilflab::enumeration::ClassesDocument = serde_json::from_slice(
        &wilflab(&["enumerate", "3", "--relation", "ss", "--format", "json"]).stdout,
    )
    .unwrap();
    assert_eq!(doc.histogram, [(2, 1), (4, 1)].into());

    let series: wilflab::TruncatedSeries = serde_json::from_slice(
        &wilflab(&[
            "genfun",
            "231",
            "--max-len",
            "4",
            "--max-norm",
            "9",
            "--format",
            "json",
        ])
        .stdout,
    )
    .unwrap();
    assert_eq!(series.coefficient(&[4, 9]), 19u32.into());

    let verdict: wilflab::Verdict = serde_json::from_slice(
        &wilflab(&["witness", "2351647", "6471532", "--format", "json"]).stdout,
    )
    .unwrap();
    assert!(verdict.is_refuted());

    let profile: wilflab::DifferenceProfile =
        serde_json::from_slice(&wilflab(&["profile", "21365874", "--format", "json"]).stdout)
            .unwrap();
    assert_eq!(
        profile,
        wilflab::difference_profile(&"21365874".parse().unwrap())
    );
}
