//! Each case runs the binary and compares stdout with `tests/golden/<name>.out`.
//! Set `UPDATE_GOLDEN=1` to rewrite the files.

use std::path::PathBuf;
use std::process::Command;

struct Case {
    name: &'static str,
    args: &'static [&'static str],
    env: &'static [(&'static str, &'static str)],
    exit: i32,
}

const fn case(name: &'static str, args: &'static [&'static str], exit: i32) -> Case {
    Case {
        name,
        args,
        env: &[],
        exit,
    }
}

const CASES: &[Case] = &[
    case("eval_tent", &["eval", "--system", "tent", "--x", "1/4"], 0),
    case(
        "eval_induced_baker_half",
        &["eval", "--system", "induced-baker", "--x", "1/2"],
        0,
    ),
    case(
        "orbit_tent_csv",
        &[
            "orbit",
            "--system",
            "induced-tent",
            "--x",
            "1/5",
            "--steps",
            "6",
        ],
        0,
    ),
    case(
        "orbit_baker_json",
        &[
            "orbit", "--system", "baker", "--x", "3/7", "--steps", "3", "--format", "json",
        ],
        0,
    ),
    case(
        "graph_orbit_k3",
        &[
            "graph-orbit",
            "--file",
            "@k3",
            "--start",
            "E2:1/3",
            "--steps",
            "5",
        ],
        0,
    ),
    case(
        "graph_orbit_path_json",
        &[
            "graph-orbit",
            "--file",
            "@path",
            "--start",
            "2:1/4",
            "--steps",
            "3",
            "--format",
            "json",
        ],
        0,
    ),
    case(
        "verify_baker_periodic_density",
        &[
            "verify",
            "--system",
            "baker",
            "--property",
            "periodic-density",
            "--max-period",
            "12",
            "--resolution",
            "7",
        ],
        0,
    ),
    case(
        "verify_tent_periodic_density_short",
        &[
            "verify",
            "--system",
            "tent",
            "--property",
            "periodic-density",
            "--max-period",
            "2",
            "--resolution",
            "3",
        ],
        1,
    ),
    case(
        "verify_tent_transitivity",
        &[
            "verify",
            "--system",
            "tent",
            "--property",
            "transitivity",
            "--resolution",
            "3",
        ],
        0,
    ),
    case(
        "verify_baker_dense_orbit",
        &[
            "verify",
            "--system",
            "baker",
            "--property",
            "dense-orbit",
            "--steps",
            "25000",
            "--resolution",
            "8",
        ],
        0,
    ),
    case(
        "verify_constant_sensitivity",
        &[
            "verify",
            "--system",
            "constant-control",
            "--property",
            "sensitivity",
            "--grid",
            "4",
        ],
        1,
    ),
    case(
        "verify_k3_lemma6",
        &[
            "verify",
            "--system",
            "graph",
            "--file",
            "@k3",
            "--property",
            "lemma6",
            "--max-period",
            "6",
            "--steps",
            "2000",
        ],
        0,
    ),
    case("conjugacy_10", &["conjugacy", "--length", "10"], 0),
    case("fiber_half", &["fiber", "--x", "1/2"], 0),
    case(
        "fiber_k3_node",
        &["fiber", "--x", "1", "--file", "@k3", "--arc", "E1"],
        0,
    ),
    case(
        "usage_out_of_range",
        &["eval", "--system", "tent", "--x", "3/2"],
        2,
    ),
    case(
        "usage_graph_without_file",
        &["verify", "--system", "graph", "--property", "lemma6"],
        2,
    ),
    Case {
        name: "usage_max_bits",
        args: &[
            "verify",
            "--system",
            "tent",
            "--property",
            "periodic-density",
        ],
        env: &[("SYMCHAOS_MAX_BITS", "8")],
        exit: 2,
    },
];

fn resolve(arg: &str) -> String {
    match arg.strip_prefix('@') {
        Some(name) => PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("../core/graphs")
            .join(format!("{name}.graph"))
            .display()
            .to_string(),
        None => arg.to_string(),
    }
}

fn run(case: &Case) -> (i32, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_symchaos"));
    cmd.args(case.args.iter().map(|a| resolve(a)));
    cmd.env_remove("SYMCHAOS_MAX_BITS");
    for (k, v) in case.env {
        cmd.env(k, v);
    }
    let out = cmd.output().expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

/// Timing is the only field allowed to differ between runs.
fn normalize(stdout: &str) -> String {
    stdout
        .lines()
        .map(|line| match line.find("\"elapsed_ms\":") {
            Some(at) => format!("{}\"elapsed_ms\": 0", &line[..at]),
            None => line.to_string(),
        })
        .map(|line| line + "\n")
        .collect()
}

#[test]
fn golden_outputs() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut failures = Vec::new();
    for case in CASES {
        let (code, stdout) = run(case);
        let got = normalize(&stdout);
        let path = dir.join(format!("{}.out", case.name));
        if update {
            std::fs::create_dir_all(&dir).unwrap();
            std::fs::write(&path, &got).unwrap();
        }
        let want = std::fs::read_to_string(&path)
            .unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        if code != case.exit {
            failures.push(format!(
                "{}: exit {code}, expected {}",
                case.name, case.exit
            ));
        }
        if got != want {
            failures.push(format!(
                "{}: stdout differs\n--- got\n{got}--- want\n{want}",
                case.name
            ));
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn repeated_runs_are_identical() {
    for name in ["verify_k3_lemma6", "graph_orbit_k3", "orbit_baker_json"] {
        let case = CASES.iter().find(|c| c.name == name).unwrap();
        assert_eq!(normalize(&run(case).1), normalize(&run(case).1), "{name}");
    }
}

#[test]
fn usage_errors_explain_themselves() {
    let case = CASES.iter().find(|c| c.name == "usage_max_bits").unwrap();
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_symchaos"));
    cmd.args(case.args).env("SYMCHAOS_MAX_BITS", "8");
    let out = cmd.output().unwrap();
    let stderr = String::from_utf8(out.stderr).unwrap();
    assert!(stderr.contains("exceeds"), "{stderr}");
}
