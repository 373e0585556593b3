use std::process::Command;

fn data(name: &str) -> String {
    format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(env!("CARGO_BIN_EXE_koszulkit")).args(args).output().expect("binary runs");
    (String::from_utf8(out.stdout).unwrap() + &String::from_utf8(out.stderr).unwrap(), out.status.code().unwrap())
}

fn example_args(extra: &[&str]) -> Vec<String> {
    let mut v = vec!["--algebra".to_string(), data("example_delta.alg")];
    for i in 1..=4 {
        v.push("--module".into());
        v.push(data(&format!("example_t{i}.mod")));
    }
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

fn delta_a2_args(extra: &[&str]) -> Vec<String> {
    let mut v = vec!["--algebra".to_string(), data("delta_a2.alg")];
    for i in 1..=2 {
        v.push("--tilting".into());
        v.push(data(&format!("delta_a2_t{i}.mod")));
    }
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

fn with(cmd: &[&str], rest: Vec<String>) -> (String, i32) {
    let mut args: Vec<&str> = cmd.to_vec();
    args.extend(rest.iter().map(String::as_str));
    run(&args)
}

#[test]
fn build_summaries() {
    let (out, code) = run(&["build", "--algebra", &data("example_delta.alg")]);
    assert_eq!(code, 0);
    assert!(out.contains("dim 16, a = 1, symmetric, Λ₀ gldim 2"), "{out}");
    let (out, code) = run(&["build", "--algebra", &data("dual_numbers.alg")]);
    assert_eq!(code, 0);
    assert!(out.contains("dim 2, a = 1, symmetric"), "{out}");
}

#[test]
fn input_errors_exit_with_two() {
    let dir = std::env::temp_dir().join(format!("koszulkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.alg");
    std::fs::write(&bad, "algebra bad\nvertices 1\narrow x 1 1 1\nrelation x*x - x*x*x\nend\n").unwrap();
    assert_eq!(run(&["build", "--algebra", bad.to_str().unwrap()]).1, 2);
    assert_eq!(run(&["build", "--algebra", &data("missing.alg")]).1, 2);
    assert_eq!(run(&["verify", "no-such-theorem", "--algebra", &data("a2.alg")]).1, 2);
}

#[test]
fn ext_table_vanishes_off_the_diagonal() {
    let t1 = data("example_t1.mod");
    let (out, code) = run(&["ext", "--algebra", &data("example_delta.alg"), "--M", &t1, "--N", &t1, "--i-max", "6", "--json"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for row in v["details"]["support"].as_array().unwrap() {
        let (i, j) = (row[0].as_i64().unwrap(), row[1].as_i64().unwrap());
        assert_eq!(i, 2 * j, "{row}");
    }
}

#[test]
fn preprojective_of_a2() {
    let (out, code) = run(&["preprojective", "--algebra", &data("a2.alg"), "--n", "1", "--degree-max", "4"]);
    assert_eq!(code, 0);
    assert!(out.contains("dims 3,1,0,0,0"), "{out}");
}

#[test]
fn veronese_with_r_one_echoes_dims() {
    let (out, _) = run(&["veronese", "--algebra", &data("cubic.alg"), "--r", "1", "--degree-max", "3"]);
    assert!(out.contains("dims 1,1,1,0"), "{out}");
}

#[test]
fn verify_exit_codes() {
    assert_eq!(with(&["verify", "characterization"], example_args(&["--n", "2"])).1, 0);
    let (out, code) = with(&["verify", "nrepfin-char"], delta_a2_args(&["--n", "2", "--json"]));
    assert_eq!(code, 0, "{out}");
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["params"]["m"], serde_json::json!([0, 1]));
    assert_eq!(v["verdict"], "pass");
    assert_eq!(run(&["verify", "trivext-dual", "--algebra", &data("kronecker.alg"), "--n", "1", "--degree-max", "5"]).1, 0);
    // a failing n-T-Koszul check is a mathematical failure
    assert_eq!(with(&["koszul"], delta_a2_args(&["--n", "2"])).1, 1);
}

#[test]
fn reports_are_reproducible() {
    let args = example_args(&["--n", "2", "--json", "--seed", "7"]);
    let first = with(&["koszul", "--check", "params"], args.clone());
    let second = with(&["koszul", "--check", "params"], args);
    assert_eq!(first, second);
    let v: serde_json::Value = serde_json::from_str(&first.0).unwrap();
    assert!(v["bounds"].as_object().unwrap().contains_key("i_max"));
    assert!(v["probabilistic"].is_boolean());
}

#[test]
fn out_writes_the_report() {
    let path = std::env::temp_dir().join(format!("koszulkit-report-{}.json", std::process::id()));
    let (printed, code) = run(&["build", "--algebra", &data("cubic.alg"), "--json", "--out", path.to_str().unwrap()]);
    assert_eq!((printed.as_str(), code), ("", 0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["command"], "build");
    std::fs::remove_file(path).ok();
}
