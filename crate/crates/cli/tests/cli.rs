use erbalg_cli::{run, EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_USAGE};

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("erbalg").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn product_closed_form() {
    let (code, out, _) = call(&["product", "--kk", "-m", "1", "-n", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim_end(), "3*[1|1|1|1] + 2*lambda*[1|1|1] + 2*kappa*[1|1]");
    let (_, out, _) = call(&["product", "--kk", "-m", "2", "-n", "2", "--lambda", "1", "--kappa", "1"]);
    assert_eq!(
        out.trim_end(),
        "6*[1|1|1|1|1] + 6*[1|1|1|1] + 7*[1|1|1] + 2*[1|1] + [1]"
    );
}

#[test]
fn product_of_elements() {
    let (code, out, _) = call(&["product", "[x]", "[y]", "--generators", "x,y"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim_end(), "[x*y]");
    let (code, out, _) = call(&["product", "[1|x]", "[1]", "--generators", "x"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim_end(), "[1|x]");
}

#[test]
fn triangle_and_counts() {
    let (code, out, _) = call(&["delannoy", "--triangle", "4"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out, "1\n1, 1\n1, 4, 1\n1, 7, 7, 1\n1, 10, 22, 10, 1\n");
    let (_, out, _) = call(&["delannoy", "--triangle", "1", "--bfile"]);
    assert_eq!(out, "0 1\n1 1\n2 1\n");
    let (code, out, _) = call(&["delannoy", "--bridge", "2", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("22"), "{out}");
    let (code, out, _) = call(&["delannoy", "--enumerate", "1", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().last(), Some("4 paths"), "{out}");
    assert_eq!(out.lines().count(), 5, "{out}");
}

#[test]
fn enumeration_bound_is_a_usage_error() {
    let (code, _, err) = call(&["delannoy", "--enumerate", "9", "9"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn coproduct_and_antipode() {
    let (code, out, _) = call(&["coproduct", "-k", "1", "--counit"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("counit: -mu"), "{out}");
    let (code, out, _) = call(&["antipode", "-k", "1"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.trim_end(), "-[1|1] - 2*mu*[1]");
}

#[test]
fn verify_reports_seed_and_passes() {
    let (code, out, _) = call(&["verify", "--suite", "hopf", "--max-degree", "6", "--seed", "42"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.starts_with("seed 42 max-degree 6"), "{out}");
    assert!(out.contains("all passed"), "{out}");
}

#[test]
fn verify_is_deterministic() {
    let args = [
        "verify",
        "--suite",
        "shuffle",
        "--max-degree",
        "4",
        "--samples",
        "30",
        "--seed",
        "7",
    ];
    assert_eq!(call(&args), call(&args));
}

#[test]
fn operator_checks() {
    let (code, _, _) = call(&["ops", "jackson"]);
    assert_eq!(code, EXIT_OK);
    let (code, out, _) = call(&["ops", "laurent", "--a", "2", "--b", "3", "--lambda", "1"]);
    assert_eq!(code, EXIT_COUNTEREXAMPLE);
    assert!(out.contains("FAIL"), "{out}");
    let (code, out, _) = call(&["ops", "gallery"]);
    assert_eq!(code, EXIT_OK, "{out}");
}

#[test]
fn usage_errors() {
    assert_eq!(call(&["product", "-m", "1"]).0, EXIT_USAGE);
    assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
    assert_eq!(call(&["--help"]).0, EXIT_OK);
    let (code, _, err) = call(&["product", "[x", "[1]", "--generators", "x"]);
    assert_eq!(code, EXIT_USAGE);
    assert!(err.starts_with("error:"), "{err}");
}

#[test]
fn overflow_is_reported() {
    let (code, _, err) = call(&["ops", "jackson", "--probes", "6", "--dimension", "8"]);
    assert_eq!(code, EXIT_USAGE, "{err}");
    assert!(err.contains("overflow"), "{err}");
}

#[test]
fn convert_round_trip() {
    let (code, json, _) = call(&["convert", "--from-text", "2*[x|1] + lambda*[x^2]", "--generators", "x"]);
    assert_eq!(code, EXIT_OK);
    let path = std::env::temp_dir().join(format!("erbalg-cli-test-{}.json", std::process::id()));
    std::fs::write(&path, &json).unwrap();
    let (code, text, _) = call(&["convert", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, EXIT_OK);
    assert_eq!(text.trim_end(), "2*[x|1] + lambda*[x^2]");
    assert_eq!(
        call(&["convert", "--from-text", text.trim_end(), "--generators", "x"]).1,
        json
    );
}

#[test]
fn malformed_document() {
    let path = std::env::temp_dir().join(format!("erbalg-cli-bad-{}.json", std::process::id()));
    std::fs::write(&path, "{\"base\": ").unwrap();
    let (code, _, err) = call(&["convert", path.to_str().unwrap()]);
    std::fs::remove_file(&path).unwrap();
    assert_eq!(code, EXIT_USAGE);
    assert!(err.contains("malformed input at 1:"), "{err}");
}
