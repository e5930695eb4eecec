use std::path::Path;
use std::process::{Command, Output};

use momentlab_cli::{RunConfig, Settings};
use proptest::prelude::*;

fn momentlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_momentlab"))
        .args(args)
        .env_remove("MOMENTLAB_THREADS")
        .output()
        .expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn run_scan(out: &Path) -> Output {
    momentlab(&[
        "scan",
        "--q-list",
        "11,13,101,211",
        "--experiment",
        "cubic",
        "--omega1",
        "random:3",
        "--omega2",
        "random:3",
        "--out",
        out.to_str().unwrap(),
    ])
}

#[test]
fn scan_writes_header_and_one_row_per_modulus() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("scan.csv");
    let o = run_scan(&out);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[0], "q,ell,omega1_idx,omega2_idx,re,im,main_term,defect,seconds");
    for (line, q) in lines[1..].iter().zip(["11", "13", "101", "211"]) {
        let f: Vec<&str> = line.split(',').collect();
        assert_eq!(f.len(), 9);
        assert_eq!(f[0], q);
        assert_eq!(f[8], "0");
        // 17 significant digits in scientific notation
        let mantissa = f[4].trim_start_matches('-').split('e').next().unwrap();
        assert_eq!(mantissa.len(), 18, "{}", f[4]);
        assert!(f[4].parse::<f64>().is_ok());
    }
}

#[test]
fn repeated_scan_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.csv"), dir.path().join("b.csv"));
    assert_eq!(code(&run_scan(&a)), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_momentlab"))
        .args(["--threads", "1", "scan", "--q-list", "11,13,101,211", "--experiment", "cubic"])
        .args(["--omega1", "random:3", "--omega2", "random:3", "--out", b.to_str().unwrap()])
        .output()
        .unwrap();
    assert_eq!(code(&o), 0);
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn fixtures_record_is_idempotent() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("nested/derived.json");
    let args = ["fixtures", "record", "--suite", "derived", "--out", p.to_str().unwrap()];
    assert_eq!(code(&momentlab(&args)), 0);
    let first = std::fs::read(&p).unwrap();
    assert_eq!(code(&momentlab(&args)), 0);
    assert_eq!(first, std::fs::read(&p).unwrap());
    let v: serde_json::Value = serde_json::from_slice(&first).unwrap();
    assert!(v["13"]["central_hurwitz"][0].is_null());
    assert_eq!(v["tau"][1], "-24");
}

#[test]
fn exit_codes() {
    assert_eq!(code(&momentlab(&["verify", "identities", "--q", "13"])), 0);
    // impossible tolerance: a check fails
    assert_eq!(code(&momentlab(&["--tol", "identity=1e-300", "verify", "identities", "--q", "13"])), 1);
    assert_eq!(code(&momentlab(&["scan", "--q-list", "11", "--experiment", "cubic", "--bogus"])), 2);
    assert_eq!(code(&momentlab(&["frobnicate"])), 2);
    assert_eq!(code(&momentlab(&["--tol", "nonsense=1", "verify", "dft"])), 2);
    assert_eq!(code(&momentlab(&["moment", "dirichlet", "--q", "15"])), 2);
    assert_eq!(code(&momentlab(&["fixtures", "record", "--suite", "other"])), 2);
    assert_eq!(code(&momentlab(&["--help"])), 0);
    let o = Command::new(env!("CARGO_BIN_EXE_momentlab"))
        .args(["verify", "dft", "--q", "11"])
        .env("MOMENTLAB_THREADS", "0")
        .output()
        .unwrap();
    assert_eq!(code(&o), 2);
}

#[test]
fn failed_scan_leaves_no_output() {
    let o = momentlab(&["scan", "--q-list", "11,21", "--experiment", "cubic"]);
    assert_eq!(code(&o), 2);
    assert!(o.stdout.is_empty());
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# scan defaults\nthreads = 2\nq_list = 11, 13\ntol.dft = 1e-7\n").unwrap();
    let o = momentlab(&["--config", cfg.to_str().unwrap(), "scan", "--experiment", "census"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let text = String::from_utf8(o.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    assert!(text.lines().nth(1).unwrap().starts_with("11,dirichlet,"));

    std::fs::write(&cfg, "colour = blue\n").unwrap();
    assert_eq!(code(&momentlab(&["--config", cfg.to_str().unwrap(), "verify", "dft"])), 2);
}

#[test]
fn settings_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "threads = 3\nseed = 11\ndamping = 3\n").unwrap();
    let path = cfg.to_str().unwrap();
    let parse = |extra: &[&str]| {
        let mut v = vec!["momentlab", "--config", path];
        v.extend_from_slice(extra);
        v.extend_from_slice(&["verify", "dft"]);
        RunConfig::parse_from_args(v).unwrap()
    };
    let s = Settings::resolve(&parse(&[]), None).unwrap();
    assert_eq!((s.threads, s.seed, s.damping.width), (Some(3), 11, 3.0));
    let s = Settings::resolve(&parse(&[]), Some("5")).unwrap();
    assert_eq!(s.threads, Some(5));
    let s = Settings::resolve(&parse(&["--threads", "7", "--damping", "4"]), Some("5")).unwrap();
    assert_eq!((s.threads, s.damping.width), (Some(7), 4.0));
    assert!(Settings::resolve(&parse(&[]), Some("many")).is_err());
}

#[test]
fn cross_check_and_lvalue_succeed() {
    let o = momentlab(&["moment", "cross-check", "--q", "101", "--omega1", "3", "--omega2", "8", "--parity", "1"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let o = momentlab(&["lvalue", "--q", "13", "--chi", "3"]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let diff: f64 = text.lines().last().unwrap().split_whitespace().nth(1).unwrap().parse().unwrap();
    assert!(diff < 1e-10);
    // arithmetic expansion is refused above its size limit
    assert_eq!(code(&momentlab(&["moment", "cross-check", "--q", "307"])), 2);
}

fn round_trips(argv: &[String]) {
    let cfg = RunConfig::parse_from_args(argv).unwrap();
    let again = cfg.to_argv();
    assert_eq!(RunConfig::parse_from_args(&again).unwrap(), cfg, "{again:?}");
    assert_eq!(RunConfig::parse_from_args(&again).unwrap().to_argv(), again);
}

#[test]
fn every_subcommand_round_trips() {
    let cases = [
        "verify all --q 101",
        "--threads 4 --damping 3.5 --timing --tol afe=1e-7 --tol weil=0.001 verify weil",
        "moment dirichlet --q 211 --omega1 random:9 --omega2 5 --ell 2 --out x.csv",
        "moment cusp --q 101 --ell 3",
        "moment cross-check --q 101 --omega1 1 --omega2 2 --parity 1",
        "census --q 809 --seed 4",
        "census --q 101 --cusp --out c.csv",
        "scan --q-list 11,13 --experiment twist-sum --kernel kl3:completed --coeff divisor:2:0.5",
        "correlation scan --q 13 --kernel additive:2 --omega 3 --mode sample:50:1 --m 2.5",
        "twist-sum --q 211,401 --kernel mult:4 --coeff tau",
        "weil-scan --q 101 --rank 3 --twists 1,2,3",
        "lvalue --q 13 --chi 3 --cusp",
        "fixtures record --suite derived --out f/d.json",
        "--config run.cfg scan --experiment census",
    ];
    for c in cases {
        let argv: Vec<String> = std::iter::once("momentlab").chain(c.split(' ')).map(String::from).collect();
        round_trips(&argv);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scan_config_round_trips(
        qs in prop::collection::vec(3u64..5000, 1..5),
        t1 in 0usize..100, seed in any::<u64>(), ell in 1u64..50,
        width in 0.5f64..8.0, threads in prop::option::of(1usize..16),
        tol in 1e-14f64..1.0,
        exp in prop::sample::select(vec!["cubic", "census", "twist-sum"]),
    ) {
        let mut argv: Vec<String> = vec!["momentlab".into()];
        if let Some(n) = threads {
            argv.extend(["--threads".into(), n.to_string()]);
        }
        argv.extend(["--damping".into(), width.to_string(), "--tol".into(), format!("afe={tol}")]);
        let ql: Vec<String> = qs.iter().map(|q| q.to_string()).collect();
        argv.extend(["scan", "--q-list", &ql.join(","), "--experiment", exp].map(String::from));
        argv.extend(["--omega1".into(), t1.to_string(), "--omega2".into(), format!("random:{seed}")]);
        argv.extend(["--ell".into(), ell.to_string()]);
        round_trips(&argv);
    }
}
