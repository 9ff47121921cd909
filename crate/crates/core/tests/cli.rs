use std::collections::HashSet;
use std::path::PathBuf;
use std::process::Command as Process;

use sha2::{Digest, Sha256};
use subshift::complexity::{ComplexityProfile, DimensionMethod};
use subshift::construction::{BuildOptions, Construction, ConstructionParams};
use subshift::run::{run, run_selftest, selftest_on, Command, RunConfig, MANIFEST_FILE};
use subshift::symbol::{parse_word, word_to_string};

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("subshift-test-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn config(params: ConstructionParams, command: Command, name: &str) -> RunConfig {
    RunConfig {
        params,
        command,
        out_dir: scratch(name),
        json: false,
    }
}

fn read(cfg: &RunConfig, file: &str) -> String {
    std::fs::read_to_string(cfg.out_dir.join(file)).unwrap()
}

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_subshift"))
}

#[test]
fn construct_manifest_has_exact_arithmetic() {
    let cfg = config(
        ConstructionParams::desk(),
        Command::Construct { write_words: true },
        "construct",
    );
    let out = run(&cfg).unwrap();
    assert_eq!(out.exit_code, 0);
    let m: serde_json::Value = serde_json::from_str(&read(&cfg, "generations.json")).unwrap();
    assert_eq!(m["levels"][2]["word_length"], "75000");
    assert_eq!(m["levels"][2]["word_count"], "3628800");
    assert_eq!(m["levels"][1]["word_count"], "120");
    let words = read(&cfg, "words_level2.txt");
    assert_eq!(words.lines().count(), 120);
    assert_eq!(words.lines().collect::<HashSet<_>>().len(), 120);
}

#[test]
fn manifest_lists_every_file_with_its_digest() {
    let cfg = config(ConstructionParams::tiny(), Command::Construct { write_words: true }, "digest");
    run(&cfg).unwrap();
    let m: serde_json::Value = serde_json::from_str(&read(&cfg, MANIFEST_FILE)).unwrap();
    let files = m["files"].as_array().unwrap();
    let on_disk: HashSet<String> = std::fs::read_dir(&cfg.out_dir)
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter(|n| n != MANIFEST_FILE)
        .collect();
    assert_eq!(files.len(), on_disk.len());
    for f in files {
        let path = f["path"].as_str().unwrap();
        let digest = format!("{:x}", Sha256::digest(read(&cfg, path).as_bytes()));
        assert_eq!(f["sha256"], digest.as_str());
    }
    assert_eq!(m["complete"], true);
    assert_eq!(RunConfig::from_json(&read(&cfg, MANIFEST_FILE)).unwrap().params, cfg.params);
}

#[test]
fn runs_are_byte_identical() {
    let cmd = Command::Measure {
        words: vec!["001".into(), "0101".into()],
        length: 20_000,
    };
    let a = config(ConstructionParams::desk().with_rng_seed(3), cmd.clone(), "det-a");
    let mut b = a.clone();
    b.out_dir = scratch("det-b");
    run(&a).unwrap();
    run(&b).unwrap();
    assert_eq!(read(&a, "measure.csv"), read(&b, "measure.csv"));
    let strip = |s: String| s.replace(a.out_dir.to_str().unwrap(), "").replace(b.out_dir.to_str().unwrap(), "");
    assert_eq!(strip(read(&a, MANIFEST_FILE)), strip(read(&b, MANIFEST_FILE)));
}

#[test]
fn profile_csv_matches_window_counts() {
    let cfg = config(ConstructionParams::tiny(), Command::Profile { n_max: 50 }, "profile");
    run(&cfg).unwrap();
    let c = Construction::build(&ConstructionParams::tiny()).unwrap();
    let text = word_to_string(&c.limit_prefix(480).unwrap());
    let csv = read(&cfg, "profile.csv");
    for (n, line) in csv.lines().skip(1).enumerate() {
        let n = n + 1;
        let count: usize = line.split(',').nth(1).unwrap().parse().unwrap();
        let distinct = (0..=text.len() - n).map(|i| &text[i..i + n]).collect::<HashSet<_>>();
        assert_eq!(count, distinct.len(), "n = {n}");
    }
}

#[test]
fn dimension_from_a_profile_file() {
    let dir = scratch("synthetic");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("synthetic.csv");
    let p = ComplexityProfile::synthetic(4096, |n| n.powf(0.5));
    std::fs::write(&path, p.to_csv().unwrap()).unwrap();
    let cfg = config(
        ConstructionParams::tiny(),
        Command::Dimension {
            profile: Some(path),
            n_max: 0,
            method: Some(DimensionMethod::LogLogRegression),
        },
        "dimension",
    );
    run(&cfg).unwrap();
    let csv = read(&cfg, "dimension.csv");
    let row: Vec<&str> = csv.lines().nth(1).unwrap().split(',').collect();
    let (upper, lower): (f64, f64) = (row[1].parse().unwrap(), row[2].parse().unwrap());
    assert!((0.45..=0.55).contains(&upper), "{upper}");
    assert!((0.45..=0.55).contains(&lower), "{lower}");
}

#[test]
fn four_zeros_never_occur() {
    let cfg = config(
        ConstructionParams::desk(),
        Command::Measure {
            words: vec!["0000".into()],
            length: 50_000,
        },
        "zeros",
    );
    run(&cfg).unwrap();
    let csv = read(&cfg, "measure.csv");
    assert!(csv.lines().nth(1).unwrap().starts_with("0000,50000,0,0,"));
}

#[test]
fn selftest_names_the_broken_check() {
    assert!(run_selftest(true).passed());
    let params = ConstructionParams::tiny();
    let seeds = ["000000", "001011", "001101", "001110"]
        .iter()
        .map(|s| parse_word(s).unwrap())
        .collect();
    let broken = Construction::build_from_seeds(&params, seeds, BuildOptions::default()).unwrap();
    assert!(broken.warnings().iter().any(|w| w.contains("000000")));
    let report = selftest_on(&broken, true);
    assert_eq!(report.first_failure().unwrap().name, "alignment");
}

#[test]
fn binary_exit_codes() {
    let dir = scratch("bin");
    let status = |args: &[&str]| {
        bin()
            .args(args)
            .arg("--out")
            .arg(&dir)
            .env("SUBSHIFT_THREADS", "2")
            .output()
            .unwrap()
            .status
            .code()
    };
    assert_eq!(status(&["selftest", "--quick"]), Some(0));
    assert_eq!(status(&["construct", "--variant", "marker", "--l1", "4", "--n1", "4"]), Some(2));
    assert_eq!(status(&["construct", "--levels", "0"]), Some(2));
    assert_eq!(status(&["construct", "--alpha", "3/2"]), Some(2));
    // Level 3 is virtual, so a word listing of it is not attempted.
    assert_eq!(status(&["construct", "--l1", "25", "--n1", "25", "--levels", "3"]), Some(0));
    // A return longer than the budget is reported, not fatal.
    assert_eq!(
        status(&["return-time", "--l1", "6", "--n1", "4", "--n", "30", "--budget", "10"]),
        Some(1)
    );
    assert_eq!(status(&["measure", "--word", "0x1"]), Some(2));
    assert_eq!(
        status(&["measure", "--levels", "2", "--word", "001", "--length", "100000000000"]),
        Some(3)
    );
}

#[test]
fn config_round_trips() {
    for command in [
        Command::Chains {
            levels: vec![1, 2],
            offsets: vec![3],
            eta: 0.3,
        },
        Command::Rigidity {
            word: None,
            levels: vec![1],
            length: 10,
        },
        Command::Selftest { quick: true },
    ] {
        let cfg = config(ConstructionParams::desk().with_rng_seed(9), command, "roundtrip");
        assert_eq!(RunConfig::from_json(&cfg.to_json().unwrap()).unwrap(), cfg);
    }
    let text = r#"{"params": {"variant": "spacer", "alpha": "1/2", "l1": 6, "n1": 4},
                   "command": "profile", "n_max": 10, "out_dir": "x"}"#;
    let cfg = RunConfig::from_json(text).unwrap();
    assert_eq!(cfg.command, Command::Profile { n_max: 10 });
    assert_eq!(cfg.params.max_level, 3);
}
