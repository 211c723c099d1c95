use std::process::Command;

use polyfun::cli::run;
use serde_json::Value;

fn polyfun(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polyfun")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let (code, out, err) = polyfun(&all);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

#[test]
fn dim_of_shifted_tensor_square() {
    let (code, out, _) = polyfun(&["dim", "--functor", "shift(2,tensor(id,id))", "--n", "3"]);
    assert_eq!((code, out.trim()), (0, "25"));
    assert_eq!(json(&["dim", "--functor", "sym(2,id)", "--n", "3"])["dim"], 6);
    assert_eq!(json(&["dim", "--functor", "ext(2,id)", "--n", "1"])["dim"], 0);
}

#[test]
fn dderiv_in_characteristic_five() {
    let (code, out, _) = polyfun(&[
        "--field",
        "fp:5",
        "dderiv",
        "--poly",
        "y^25*z^2 + x^10*y^25*z",
        "--w-vars",
        "x,y",
        "--dir",
        "1,1",
    ]);
    assert_eq!((code, out.trim()), (0, "2*x^5*y^25*z"));
    let v = json(&[
        "--field",
        "fp:5",
        "dderiv",
        "--poly",
        "y^25*z^2 + x^10*y^25*z",
        "--w-vars",
        "x,y",
        "--dir",
        "3,1",
    ]);
    // 2 * 3^5 = 486 = 1 mod 5.
    assert_eq!(v["derivative"], "x^5*y^25*z");
    assert_eq!(v["level"], 1);
    assert_eq!(v["status"], "dependent");
}

#[test]
fn dderiv_of_independent_polynomial_is_zero() {
    let v = json(&["dderiv", "--poly", "y^2 + 1", "--w-vars", "x", "--dir", "1"]);
    assert_eq!(v["status"], "independent");
    assert_eq!(v["derivative"], "0");
}

#[test]
fn example_rank1_json() {
    let v = json(&["example-rank1", "--n", "3", "--field", "q"]);
    assert_eq!(v["h"], "2*z_1_2");
    assert_eq!(v["delta"], 4);
    assert_eq!(v["e0"], 0);
    assert_eq!(v["r0"], "z_1_2=1");
    let cert = v["certificate"].as_object().unwrap();
    assert_eq!(cert.keys().collect::<Vec<_>>(), ["z_3_4", "z_3_5", "z_4_5"]);
    for entry in cert.values() {
        assert_eq!(entry["denominator"], "2*z_1_2");
        assert_eq!(entry["h_power"], 1);
    }
    assert!(v["k"]["1"]["2"].as_str().unwrap().contains("2*z_1_2*z_3_4"));
    for c in v["checks"].as_array().unwrap() {
        assert!(c["status"] == "pass" || c["status"] == "skipped", "{c}");
    }
}

#[test]
fn output_is_deterministic() {
    let a = polyfun(&["--seed", "9", "example-rank1", "--n", "3"]);
    let b = polyfun(&["--seed", "9", "example-rank1", "--n", "3"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0);
}

#[test]
fn exit_codes() {
    assert_eq!(polyfun(&["dim", "--functor", "sym(2,", "--n", "3"]).0, 2);
    assert_eq!(polyfun(&["nonsense"]).0, 2);
    assert_eq!(polyfun(&["--field", "fp:4", "dim", "--functor", "id", "--n", "1"]).0, 2);
    assert_eq!(polyfun(&["--field", "fp:2", "example-rank1", "--n", "3"]).0, 1);
    assert_eq!(polyfun(&["example-rank1", "--n", "1"]).0, 1);
    assert_eq!(
        polyfun(&["dderiv", "--poly", "x", "--w-vars", "x", "--dir", "1,2"]).0,
        2
    );
    // R of tensor(id,id) at u = 2 is summand 1; the generator has no z-coordinate.
    assert_eq!(
        polyfun(&[
            "proofstep",
            "--functor",
            "tensor(id,id)",
            "--u",
            "2",
            "--n",
            "2",
            "--poly",
            "y_1_1",
            "--r",
            "1"
        ])
        .0,
        1
    );
    assert_eq!(polyfun(&["--help"]).0, 0);
}

#[test]
fn proofstep_with_rank_one_sampler_and_ideal() {
    let ideal: Vec<String> = {
        let x = |a: usize, b: usize| format!("x_{a}_{b}");
        let mut g = Vec::new();
        let pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        for (a, b) in pairs {
            for (c, d) in pairs {
                g.push(format!("{}*{} - {}*{}", x(a, c), x(b, d), x(a, d), x(b, c)));
            }
        }
        g
    };
    let mut args = vec![
        "proofstep",
        "--functor",
        "tensor(id,id)",
        "--u",
        "2",
        "--n",
        "2",
        "--r",
        "1",
        "--poly",
        "y_1_1*y_2_2 - y_1_2^2 + z_1_2^2",
        "--sampler",
        "rank-one",
        "--samples",
        "20",
    ];
    for g in &ideal {
        args.push("--ideal");
        args.push(g);
    }
    let (code, out, err) = polyfun(&args);
    assert_eq!(code, 0, "{out}{err}");
    assert!(out.contains("h: 2*z_1_2"));
    assert!(out.contains("check certificate_in_ideal[z_3_4]: pass"), "{out}");
}

#[test]
fn rank_one_sampler_needs_tensor_square() {
    let (code, _, err) = polyfun(&[
        "proofstep",
        "--functor",
        "sym(2,id)",
        "--u",
        "2",
        "--n",
        "2",
        "--r",
        "0",
        "--poly",
        "x_1_1",
        "--sampler",
        "rank-one",
    ]);
    assert_eq!(code, 2, "{err}");
}

#[test]
fn delta_reports() {
    let v = json(&[
        "delta",
        "--functor",
        "tensor(id,id)",
        "--n",
        "2",
        "--r",
        "1",
        "--gen",
        "y_1_1*y_2_2 - y_1_2^2 + z_1_2^2",
    ]);
    assert_eq!(v["delta"], 4);
    let v = json(&[
        "delta",
        "--functor",
        "tensor(id,id)",
        "--n",
        "2",
        "--r",
        "1",
        "--gen",
        "z_1_2^2",
    ]);
    assert_eq!(v["delta"], 4);
    let v = json(&[
        "delta",
        "--functor",
        "tensor(id,id)",
        "--n",
        "2",
        "--r",
        "1",
        "--gen",
        "y_1_1",
        "--q-gen",
        "y_1_1",
    ]);
    assert_eq!(v["delta"], "infinite");
}

#[test]
fn structural_subcommands() {
    let v = json(&["decompose", "--functor", "shift(2,tensor(id,id))", "--n", "2"]);
    let dims: Vec<u64> = v["summands"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["dim"].as_u64().unwrap())
        .collect();
    assert_eq!(dims, [3, 1, 4, 4, 3, 1]);
    let v = json(&[
        "compare",
        "--left",
        "quot(shift(2,tensor(id,id)),5)",
        "--right",
        "tensor(id,id)",
    ]);
    assert_eq!(v["relation"], "lex-smaller");
    let v = json(&["induce", "--functor", "ext(2,id)", "--phi", "1,2,0;0,1,1;1,0,1"]);
    assert_eq!(v["matrix"][0], serde_json::json!(["1", "1", "2"]));
    let v = json(&["shift-check", "--functor", "sym(3,id)", "--u", "2", "--n", "3"]);
    assert_eq!((v["top_iso"].as_bool(), v["top_dim"].as_u64()), (Some(true), Some(10)));
    let v = json(&[
        "hasse", "--poly", "x^3*y", "--w-vars", "x", "--dir", "1", "--order", "2",
    ]);
    assert_eq!(v["derivative"], "3*x*y");
    let v = json(&["--field", "fp:2", "taylor", "--poly", "x^2", "--w-vars", "x"]);
    assert_eq!(v["coefficients"]["2"], "w_x^2");
}

#[test]
fn library_entry_point_matches_binary() {
    let r = run(["polyfun", "dim", "--functor", "sym(2,id)", "--n", "3"]);
    assert_eq!((r.code, r.stdout.as_str()), (0, "6\n"));
}
