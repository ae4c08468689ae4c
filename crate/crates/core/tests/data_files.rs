use std::path::PathBuf;

use homcalc::algebra::DEFAULT_BASIS_CAP;
use homcalc::harness::corpus;
use homcalc::io::{load_algebra, load_module};
use homcalc::modrep::simple_module;

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

#[test]
fn shipped_algebras_match_the_corpus() {
    for c in corpus() {
        let n = c.name.to_lowercase();
        let raw = load_algebra(&data(&format!("{n}.json")), DEFAULT_BASIS_CAP).unwrap();
        let quiver = load_algebra(&data(&format!("{n}_quiver.json")), DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(raw.data(), c.algebra.data(), "{n}");
        assert_eq!(quiver.data(), c.algebra.data(), "{n}");
    }
}

#[test]
fn shipped_simples_resolve_their_algebra_reference() {
    let a2 = corpus().into_iter().find(|c| c.name == "A2PATH").unwrap().algebra;
    for i in 0..2 {
        let m = load_module(&data(&format!("s{}.json", i + 1)), None, DEFAULT_BASIS_CAP).unwrap();
        assert_eq!(m.actions(), simple_module(&a2, i).actions());
    }
}
