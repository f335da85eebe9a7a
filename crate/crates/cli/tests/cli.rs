use std::path::PathBuf;
use std::process::{Command, Output};

use gentle_core::derived::Disk;
use gentle_core::linalg::rep::global_dimension;
use gentle_core::linalg::{Field, GlobalDimension};
use gentle_core::module_dct::{classify_weakly_drf, search_dct_module, IndecCatalog};
use gentle_core::surface::{algebra_from_dissection, disk_model, Dissection};
use gentle_core::BoundQuiverAlgebra;
use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    p.to_string_lossy().into_owned()
}

fn gentle(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gentle")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.extend(["--format", "json"]);
    let out = gentle(&all);
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn code(out: &Output) -> i32 {
    out.status.code().unwrap()
}

fn load(name: &str) -> BoundQuiverAlgebra {
    BoundQuiverAlgebra::parse(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

#[test]
fn check_reports_shape_and_global_dimension() {
    let v = json(&["check", &fixture("a3j2.quiver")]);
    assert_eq!(v["gentle"], true);
    assert_eq!(v["shape"], serde_json::to_value(load("a3j2.quiver").shape()).unwrap());
    let gldim = global_dimension(&load("a3j2.quiver"), Field::default(), 8).unwrap();
    assert_eq!(v["global_dimension"], serde_json::to_value(gldim).unwrap());
    assert_eq!(gldim, GlobalDimension::Finite(2));
    let k33 = json(&["check", &fixture("k33.quiver")]);
    assert_eq!(k33["gentle"], true);
    assert_eq!(k33["radical_square_zero"], false);
}

#[test]
fn exit_codes() {
    assert_eq!(code(&gentle(&["check", &fixture("a3j2.quiver")])), 0);
    assert_eq!(code(&gentle(&["check", &fixture("not_gentle.quiver")])), 1);
    assert_eq!(code(&gentle(&["check", &fixture("malformed.quiver")])), 2);
    assert_eq!(code(&gentle(&["check", "/nonexistent/file.quiver"])), 2);
    assert_eq!(code(&gentle(&["dct-mod", &fixture("a3j2.quiver"), "--d", "3"])), 1);
    assert_eq!(code(&gentle(&["dct-mod", &fixture("k33.quiver"), "--d", "2"])), 3);
    assert_eq!(code(&gentle(&["der", "search", "--n", "3", "--d", "2", "--window", "2"])), 3);
    assert_eq!(code(&gentle(&["der", "ar", &fixture("annulus.diss")])), 2);
    assert_eq!(code(&gentle(&["model", "dual", &fixture("punctured.diss")])), 2);

    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.diss");
    std::fs::write(&bad, "polygon A: B1 x+ x+\n").unwrap();
    assert_eq!(code(&gentle(&["model", "algebra", bad.to_str().unwrap()])), 2);
}

#[test]
fn classify_matches_library() {
    for name in ["a5j2.quiver", "tilde_a3_j2.quiver", "a3.quiver", "field.quiver"] {
        let v = json(&["classify", &fixture(name)]);
        let want = serde_json::to_value(classify_weakly_drf(&load(name)).unwrap()).unwrap();
        assert_eq!(v["weakly_d_representation_finite"], want, "{name}");
    }
    let a3 = json(&["classify", &fixture("a3.quiver")]);
    assert!(a3["obstruction"].is_object());
    let k = json(&["classify", &fixture("field.quiver")]);
    assert_eq!(k["derived_family"], "add{K[di]}");
}

#[test]
fn module_search_matches_library() {
    let alg = load("a3j2.quiver");
    let cat = IndecCatalog::new(&alg, Field::default(), 64, 2).unwrap();
    let want: Vec<Vec<String>> = search_dct_module(&cat, 2)
        .unwrap()
        .iter()
        .map(|u| u.members().iter().map(|&i| cat.label(i)).collect())
        .collect();
    let v = json(&["dct-mod", &fixture("a3j2.quiver"), "--d", "2"]);
    assert_eq!(v["subcategories"], serde_json::to_value(want).unwrap());
}

#[test]
fn module_ar_quiver_dot_boxes_the_subcategory() {
    let out = gentle(&["ar-mod", &fixture("a3j2.quiver"), "--d", "2", "--format", "dot"]);
    let dot = String::from_utf8(out.stdout).unwrap();
    assert_eq!(dot.matches("shape=box").count(), 4);
    assert_eq!(dot.matches("style=dashed").count(), 2);
    let k = json(&["ar-mod", &fixture("field.quiver")]);
    assert_eq!(k["nodes"].as_array().unwrap().len(), 1);
}

#[test]
fn model_commands_match_library() {
    let diss = Dissection::parse(&std::fs::read_to_string(fixture("disk_3.diss")).unwrap()).unwrap();
    let v = json(&["model", "algebra", &fixture("disk_3.diss")]);
    assert_eq!(v, serde_json::to_value(algebra_from_dissection(&diss).unwrap()).unwrap());
    let built = gentle(&["model", "build-disk", "--n", "3"]);
    assert_eq!(String::from_utf8(built.stdout).unwrap(), disk_model(3).unwrap().serialize());
    let svg1 = gentle(&["model", "render", &fixture("disk_3.diss"), "--format", "svg"]).stdout;
    let svg2 = gentle(&["model", "render", &fixture("disk_3.diss"), "--format", "svg"]).stdout;
    assert_eq!(svg1, svg2);
    assert!(String::from_utf8(svg1).unwrap().starts_with("<svg"));
}

#[test]
fn derived_commands_match_library() {
    let v = json(&["der", "hom", &fixture("disk_3.diss"), "--x", "arc(1,4)@0", "--y", "arc(3,4)@0", "--i", "2"]);
    assert_eq!(v["dim"], 1);

    let k = Disk::new(&disk_model(3).unwrap()).unwrap();
    let want: Vec<Vec<String>> = k
        .search_dct_derived(2, k.default_window(2))
        .unwrap()
        .iter()
        .map(|u| u.classes.iter().map(|c| c.arc.to_string()).collect())
        .collect();
    let v = json(&["der", "search", "--n", "3", "--d", "2"]);
    let got: Vec<Value> = v["subcategories"].as_array().unwrap().iter().map(|u| u["arcs"].clone()).collect();
    assert_eq!(serde_json::to_value(got).unwrap(), serde_json::to_value(want).unwrap());
    assert_eq!(got_len(&v), 2);

    let yes = gentle(&["der", "dct", "--n", "4", "--d", "3", "--from", "arc(4,5)@0"]);
    assert_eq!(code(&yes), 0);
    let no = json(&["der", "dct", "--n", "4", "--d", "2", "--from", "arc(4,5)@0"]);
    assert_eq!(no["cluster_tilting"], false);
    let listed = gentle(&["der", "dct", "--n", "3", "--d", "2", "--arcs", "arc(1,2)@0,arc(1,4)@0,arc(2,3)@0,arc(3,4)@0"]);
    assert_eq!(code(&listed), 0);
}

fn got_len(v: &Value) -> usize {
    v["subcategories"].as_array().unwrap().len()
}
