//! End-to-end tests of the command line front end, mostly through the
//! in-process `execute` entry point. A few cases spawn the real binary to
//! cover stdin plumbing and environment validation.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Stdio};

use serde_json::Value;

use systolic_lab::actions::Automorphism;
use systolic_lab::cli::{execute, CliOutcome};
use systolic_lab::fixtures::{
    dihedral_spec, gen_double_cycle, gen_hex_patch, gen_wheel, triangle_action_spec,
};
use systolic_lab::io::{ActionJson, ComplexJson, DiscJson, LabeledSurfaceJson, SurfaceJson};
use systolic_lab::swaps::{edge_swap, swap_corpus};

fn run(args: &[&str], stdin: &str) -> CliOutcome {
    let mut argv = vec!["systolic-lab"];
    argv.extend_from_slice(args);
    execute(argv, stdin)
}

fn report(outcome: &CliOutcome) -> Value {
    serde_json::from_str(&outcome.stdout).expect("report is JSON")
}

fn temp_path(name: &str) -> PathBuf {
    std::env::temp_dir().join(format!("systolic-lab-cli-{}-{name}", std::process::id()))
}

fn pretty<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).unwrap();
    s.push('\n');
    s
}

fn gen(args: &[&str]) -> String {
    let outcome = run(args, "");
    assert_eq!(outcome.exit, 0, "{}", outcome.stderr);
    outcome.stdout
}

#[test]
fn gen_pipes_into_check_systolic() {
    let six = gen(&["gen", "chorded-wheel", "--n", "6"]);
    let parsed: ComplexJson = serde_json::from_str(&six).unwrap();
    assert_eq!(parsed.vertices.len(), 13);

    let ok = run(&["check-systolic"], &six);
    assert_eq!(ok.exit, 0);
    let rep = report(&ok);
    assert_eq!(rep["command"], "check-systolic");
    assert_eq!(rep["verdict"], "systolic");
    assert_eq!(rep["witnesses"], Value::Array(vec![]));
    assert!(rep["timings_ms"]["total"].is_u64());

    let five = gen(&["gen", "chorded-wheel", "--n", "5"]);
    let bad = run(&["check-systolic"], &five);
    assert_eq!(bad.exit, 1);
    let rep = report(&bad);
    assert_eq!(rep["verdict"], "not-locally-6-large");
    let witness = &rep["witnesses"][0];
    assert!(witness["vertex"].is_string());
    assert!(witness["link_cycle"].as_array().unwrap().len() >= 4);
}

#[test]
fn gen_requires_a_parameter_for_sized_families() {
    let outcome = run(&["gen", "wheel"], "");
    assert_eq!(outcome.exit, 2);
    assert!(outcome.stderr.contains("wheel"), "{}", outcome.stderr);

    let surface = gen(&["gen", "special-surface"]);
    let disc: DiscJson = serde_json::from_str(&surface).unwrap();
    assert_eq!(disc.vertices.len(), 14);
    assert_eq!(disc.triangles.len(), 16);
    assert_eq!(disc.boundary.len(), 10);
}

#[test]
fn input_and_output_flags_replace_the_standard_streams() {
    let complex = gen(&["gen", "wheel", "--n", "6"]);
    let in_path = temp_path("wheel-in.json");
    let out_path = temp_path("wheel-out.json");
    fs::write(&in_path, &complex).unwrap();

    let outcome = run(
        &[
            "check-systolic",
            "--input",
            in_path.to_str().unwrap(),
            "--output",
            out_path.to_str().unwrap(),
        ],
        "",
    );
    assert_eq!(outcome.exit, 0, "{}", outcome.stderr);
    assert!(outcome.stdout.is_empty());
    let written: Value = serde_json::from_str(&fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(written["verdict"], "systolic");

    fs::remove_file(&in_path).unwrap();
    fs::remove_file(&out_path).unwrap();

    let missing = run(&["check-systolic", "--input", "/nonexistent/in.json"], "");
    assert_eq!(missing.exit, 2);
    assert!(missing.stderr.contains("cannot read"));
}

#[test]
fn k_large_finds_the_rim_cycle() {
    let ten = gen(&["gen", "wheel", "--n", "10"]);
    let ok = run(&["k-large", "--k", "6"], &ten);
    assert_eq!(ok.exit, 0);
    assert_eq!(report(&ok)["verdict"], "k-large");

    let five = gen(&["gen", "wheel", "--n", "5"]);
    let found = run(&["k-large", "--k", "6"], &five);
    assert_eq!(found.exit, 1);
    let rep = report(&found);
    assert_eq!(rep["verdict"], "chordless-cycle-found");
    assert_eq!(rep["witnesses"][0]["cycle"].as_array().unwrap().len(), 5);

    // Largeness checks are implemented for k between 4 and 6.
    assert_eq!(run(&["k-large", "--k", "11"], &ten).exit, 2);
}

#[test]
fn fill_emits_surface_json_or_a_failure_report() {
    let wheel = gen(&["gen", "wheel", "--n", "10"]);
    let rim = "x0,x1,x2,x3,x4,x5,x6,x7,x8,x9";

    let filled = run(&["fill", "--cycle", rim], &wheel);
    assert_eq!(filled.exit, 0, "{}", filled.stderr);
    let surface: SurfaceJson = serde_json::from_str(&filled.stdout).unwrap();
    assert_eq!(surface.disc.triangles.len(), 10);
    assert_eq!(surface.embedding.len(), 11);

    let exhausted = run(&["fill", "--cycle", rim, "--budget", "3"], &wheel);
    assert_eq!(exhausted.exit, 1);
    assert_eq!(report(&exhausted)["verdict"], "budget-exhausted");

    // A bare hexagon has no triangles at all, so nothing fills its cycle.
    let hexagon = ComplexJson {
        vertices: (0..6).map(|i| format!("a{i}")).collect(),
        edges: (0..6).map(|i| (format!("a{i}"), format!("a{}", (i + 1) % 6))).collect(),
    };
    let none = run(&["fill", "--cycle", "a0,a1,a2,a3,a4,a5"], &pretty(&hexagon));
    assert_eq!(none.exit, 1);
    assert_eq!(report(&none)["verdict"], "no-filling");

    let unknown = run(&["fill", "--cycle", "a0,zz"], &pretty(&hexagon));
    assert_eq!(unknown.exit, 2);
}

#[test]
fn gauss_bonnet_sums_to_six_on_generated_discs() {
    for args in [vec!["gen", "special-surface"], vec!["gen", "hex-patch", "--r", "2"]] {
        let disc = gen(&args);
        let outcome = run(&["gauss-bonnet"], &disc);
        assert_eq!(outcome.exit, 0);
        let rep = report(&outcome);
        assert_eq!(rep["verdict"], "gauss-bonnet-holds");
        assert_eq!(rep["witnesses"][0]["sum"], 6);
    }
}

#[test]
fn defect_queries_one_vertex_a_path_or_the_whole_table() {
    let disc = gen_hex_patch(1).unwrap();
    let json = pretty(&DiscJson::from_disc(&disc));

    let center = run(&["defect", "--vertex", "h0_0"], &json);
    assert_eq!(center.exit, 0);
    let rep = report(&center);
    assert_eq!(rep["witnesses"][0]["vertex"], "h0_0");
    assert_eq!(rep["witnesses"][0]["defect"], 0);

    let boundary = disc.boundary_labeled();
    let path = format!("{},{},{}", boundary[0], boundary[1], boundary[2]);
    let along = run(&["defect", "--path", &path], &json);
    assert_eq!(along.exit, 0);
    let expected = disc.defect_along_names(&boundary[0..3].to_vec()).unwrap();
    assert_eq!(report(&along)["witnesses"][0]["defect_sum"], expected);

    let table = run(&["defect"], &json);
    assert_eq!(table.exit, 0);
    let rep = report(&table);
    assert_eq!(rep["verdict"], "computed");
    assert_eq!(rep["witnesses"].as_array().unwrap().len(), 7);

    let both = run(&["defect", "--vertex", "h0_0", "--path", &path], &json);
    assert_eq!(both.exit, 2);
    let unknown = run(&["defect", "--vertex", "nope"], &json);
    assert_eq!(unknown.exit, 2);
}

#[test]
fn invariance_set_reports_the_structural_clauses() {
    let x = gen_wheel(10).unwrap();
    let spec = dihedral_spec(&x, 10);
    let action_path = temp_path("dihedral-action.json");
    fs::write(&action_path, pretty(&ActionJson::from_spec(&x, &spec))).unwrap();
    let complex = pretty(&ComplexJson::from_complex(&x));

    let outcome = run(
        &["invariance-set", "--action", action_path.to_str().unwrap(), "--generator", "u"],
        &complex,
    );
    assert_eq!(outcome.exit, 0, "{}", outcome.stderr);
    let rep = report(&outcome);
    assert_eq!(rep["verdict"], "xu-holds");
    let witness = &rep["witnesses"][0];
    assert!(!witness["vertices"].as_array().unwrap().is_empty());
    assert_eq!(witness["ambient_systolic"], true);
    assert_eq!(witness["violations"], Value::Array(vec![]));

    let unknown = run(
        &["invariance-set", "--action", action_path.to_str().unwrap(), "--generator", "z"],
        &complex,
    );
    assert_eq!(unknown.exit, 2);

    fs::remove_file(&action_path).unwrap();
}

#[test]
fn orbit_lists_the_rim_orbit_sorted() {
    let x = gen_wheel(10).unwrap();
    let spec = dihedral_spec(&x, 10);
    let action_path = temp_path("orbit-action.json");
    fs::write(&action_path, pretty(&ActionJson::from_spec(&x, &spec))).unwrap();
    let complex = pretty(&ComplexJson::from_complex(&x));

    let outcome = run(
        &["orbit", "--action", action_path.to_str().unwrap(), "--seed", "x1"],
        &complex,
    );
    assert_eq!(outcome.exit, 0, "{}", outcome.stderr);
    let rep = report(&outcome);
    let orbit: Vec<&str> =
        rep["witnesses"][0]["orbit"].as_array().unwrap().iter().map(|v| v.as_str().unwrap()).collect();
    assert_eq!(orbit.len(), 10);
    assert!(!orbit.contains(&"c"));
    let mut sorted = orbit.clone();
    sorted.sort();
    assert_eq!(orbit, sorted);

    fs::remove_file(&action_path).unwrap();
}

#[test]
fn bicycle_reports_the_cycle_case_and_the_bound_violation() {
    let x = gen_wheel(10).unwrap();
    let spec = dihedral_spec(&x, 10);
    let action_path = temp_path("bicycle-action.json");
    fs::write(&action_path, pretty(&ActionJson::from_spec(&x, &spec))).unwrap();
    let complex = pretty(&ComplexJson::from_complex(&x));
    let action = action_path.to_str().unwrap().to_string();

    let cycle = run(&["bicycle", "--action", &action, "--seed", "x1"], &complex);
    assert_eq!(cycle.exit, 0, "{}", cycle.stderr);
    let rep = report(&cycle);
    assert_eq!(rep["verdict"], "cycle-case");
    assert_eq!(rep["witnesses"][0]["n"], 5);
    assert_eq!(rep["witnesses"][0]["n_within_bound"], true);
    assert_eq!(rep["witnesses"][1]["cycle"].as_array().unwrap().len(), 10);
    assert_eq!(rep["witnesses"][1]["witness"], "c");

    let outside = run(&["bicycle", "--action", &action, "--seed", "x3"], &complex);
    assert_eq!(outside.exit, 1);
    assert_eq!(report(&outside)["verdict"], "hypothesis-violated");
    fs::remove_file(&action_path).unwrap();

    // Composed rotation of order six: the dichotomy fails with a diagonal.
    let d6 = gen_double_cycle(6).unwrap();
    let spec12 = dihedral_spec(&d6, 12);
    let wide_path = temp_path("bicycle-wide-action.json");
    fs::write(&wide_path, pretty(&ActionJson::from_spec(&d6, &spec12))).unwrap();
    let wide = run(
        &["bicycle", "--action", wide_path.to_str().unwrap(), "--seed", "y1"],
        &pretty(&ComplexJson::from_complex(&d6)),
    );
    assert_eq!(wide.exit, 1);
    let rep = report(&wide);
    assert_eq!(rep["verdict"], "violation");
    assert_eq!(rep["witnesses"][0]["n"], 6);
    assert_eq!(rep["witnesses"][0]["n_within_bound"], false);
    assert_eq!(rep["witnesses"][1]["clause"], "cycle-has-diagonal");
    fs::remove_file(&wide_path).unwrap();
}

#[test]
fn fixed_simplex_finds_the_hub_and_respects_the_budget() {
    let x = gen_wheel(10).unwrap();
    let spec = dihedral_spec(&x, 10);
    let action_path = temp_path("fixed-action.json");
    fs::write(&action_path, pretty(&ActionJson::from_spec(&x, &spec))).unwrap();
    let complex = pretty(&ComplexJson::from_complex(&x));
    let action = action_path.to_str().unwrap().to_string();

    let found = run(&["fixed-simplex", "--action", &action], &complex);
    assert_eq!(found.exit, 0, "{}", found.stderr);
    let rep = report(&found);
    assert_eq!(rep["verdict"], "invariant-simplex");
    assert_eq!(rep["witnesses"][0]["simplex"], serde_json::json!(["c"]));

    let starved = run(&["fixed-simplex", "--action", &action, "--budget", "1"], &complex);
    assert_eq!(starved.exit, 1);
    assert_eq!(report(&starved)["verdict"], "budget-exhausted");

    fs::remove_file(&action_path).unwrap();
}

#[test]
fn triangle_surface_reports_the_degenerate_outcome() {
    let x = gen_wheel(10).unwrap();
    let id = Automorphism::identity(x.labels().len());
    let spec = triangle_action_spec(id.clone(), id.clone(), id, 4);
    let action_path = temp_path("triangle-action.json");
    fs::write(&action_path, pretty(&ActionJson::from_spec(&x, &spec))).unwrap();
    let complex = pretty(&ComplexJson::from_complex(&x));

    let outcome = run(
        &["triangle-surface", "--action", action_path.to_str().unwrap()],
        &complex,
    );
    assert_eq!(outcome.exit, 0, "{}", outcome.stderr);
    let rep = report(&outcome);
    assert_eq!(rep["verdict"], "degenerate-at-vertex");
    assert_eq!(rep["witnesses"][0]["vertex"], "c");
    assert_eq!(rep["witnesses"][0]["invariant_simplex"], serde_json::json!(["c"]));
    fs::remove_file(&action_path).unwrap();

    // Same action supplied through the preset instead of explicit relations.
    let preset = ActionJson {
        generators: ["r", "s", "t"]
            .into_iter()
            .map(|name| (name.to_string(), Default::default()))
            .collect(),
        relations: vec![],
        preset: Some("triangle-2-4-5".to_string()),
    };
    let preset_path = temp_path("triangle-preset.json");
    fs::write(&preset_path, pretty(&preset)).unwrap();
    let via_preset = run(
        &["triangle-surface", "--action", preset_path.to_str().unwrap()],
        &complex,
    );
    assert_eq!(via_preset.exit, 0, "{}", via_preset.stderr);
    assert_eq!(report(&via_preset)["verdict"], "degenerate-at-vertex");
    fs::remove_file(&preset_path).unwrap();
}

#[test]
fn swap_applies_a_corpus_move_and_reports_the_effect() {
    let case = swap_corpus().into_iter().next().unwrap();
    let ambient_path = temp_path("swap-ambient.json");
    fs::write(&ambient_path, pretty(&ComplexJson::from_complex(&case.ambient))).unwrap();
    let surface_json = pretty(&LabeledSurfaceJson::from_labeled(&case.ambient, &case.surface));
    let disc = case.surface.disc();
    let mv = format!(
        "{},{},{},{}",
        disc.label(case.mv.p),
        disc.label(case.mv.q),
        disc.label(case.mv.m),
        disc.label(case.mv.m_prime)
    );

    let outcome = run(
        &["swap", "--ambient", ambient_path.to_str().unwrap(), "--move", &mv],
        &surface_json,
    );
    assert_eq!(outcome.exit, 0, "{}", outcome.stderr);
    let rep = report(&outcome);
    assert_eq!(rep["verdict"], "swapped");
    let expected = edge_swap(&case.ambient, &case.surface, &case.mv).unwrap();
    assert_eq!(
        rep["witnesses"][0]["surface"],
        serde_json::to_value(LabeledSurfaceJson::from_labeled(&case.ambient, &expected)).unwrap()
    );
    assert_eq!(rep["witnesses"][1]["violations"], Value::Array(vec![]));

    // Roles permuted: the quadrilateral does not match any valid move.
    let scrambled = format!(
        "{},{},{},{}",
        disc.label(case.mv.m),
        disc.label(case.mv.m_prime),
        disc.label(case.mv.p),
        disc.label(case.mv.q)
    );
    let invalid = run(
        &["swap", "--ambient", ambient_path.to_str().unwrap(), "--move", &scrambled],
        &surface_json,
    );
    assert_eq!(invalid.exit, 1);
    assert_eq!(report(&invalid)["verdict"], "move-invalid");

    let short = run(
        &["swap", "--ambient", ambient_path.to_str().unwrap(), "--move", "a,b"],
        &surface_json,
    );
    assert_eq!(short.exit, 2);

    fs::remove_file(&ambient_path).unwrap();
}

#[test]
fn export_dot_renders_the_skeleton() {
    let triangle = ComplexJson {
        vertices: vec!["a".into(), "b".into(), "c".into()],
        edges: vec![("a".into(), "b".into()), ("b".into(), "c".into()), ("a".into(), "c".into())],
    };
    let outcome = run(&["export-dot"], &pretty(&triangle));
    assert_eq!(outcome.exit, 0);
    assert!(outcome.stdout.starts_with("graph skeleton {"));
    assert!(outcome.stdout.contains("\"a\" -- \"b\";"));
    assert!(outcome.stdout.trim_end().ends_with('}'));
}

#[test]
fn reports_are_deterministic_apart_from_timings() {
    let six = gen(&["gen", "chorded-wheel", "--n", "6"]);
    let mut first = report(&run(&["check-systolic"], &six));
    let mut second = report(&run(&["check-systolic"], &six));
    first.as_object_mut().unwrap().remove("timings_ms");
    second.as_object_mut().unwrap().remove("timings_ms");
    assert_eq!(first, second);

    let five = gen(&["gen", "chorded-wheel", "--n", "5"]);
    let quiet = run(&["check-systolic", "--quiet"], &five);
    assert_eq!(quiet.exit, 1);
    assert_eq!(report(&quiet)["witnesses"], Value::Array(vec![]));
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(run(&["no-such-command"], "").exit, 2);
    assert_eq!(run(&["k-large"], "").exit, 2);

    let garbage = run(&["check-systolic"], "not json");
    assert_eq!(garbage.exit, 2);
    assert!(garbage.stderr.contains("complex JSON"), "{}", garbage.stderr);

    let help = run(&["--help"], "");
    assert_eq!(help.exit, 0);
    assert!(help.stdout.contains("check-systolic"));
    assert!(run(&["--version"], "").exit == 0);
}

#[test]
fn binary_pipes_stdin_and_validates_the_thread_cap() {
    let bin = env!("CARGO_BIN_EXE_systolic-lab");

    let gen_out = Command::new(bin)
        .args(["gen", "chorded-wheel", "--n", "6"])
        .env("SYSTOLIC_LAB_THREADS", "4")
        .output()
        .unwrap();
    assert_eq!(gen_out.status.code(), Some(0));

    let mut check = Command::new(bin)
        .arg("check-systolic")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    check.stdin.as_mut().unwrap().write_all(&gen_out.stdout).unwrap();
    let out = check.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let rep: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(rep["verdict"], "systolic");

    let bogus = Command::new(bin)
        .args(["gen", "wheel", "--n", "6"])
        .env("SYSTOLIC_LAB_THREADS", "soon")
        .output()
        .unwrap();
    assert_eq!(bogus.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&bogus.stderr).contains("SYSTOLIC_LAB_THREADS"));
}
