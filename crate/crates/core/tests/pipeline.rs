//! Load, desugar and reload every valid file in the corpus.

use sygus::session::{desugar, load};
use sygus::Options;

const CORPUS: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/corpus");

fn valid_files() -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for dir in ["examples", "reference", "oracle", "golden"] {
        for e in std::fs::read_dir(format!("{CORPUS}/{dir}")).unwrap() {
            let p = e.unwrap().path();
            if p.extension().is_some_and(|x| x == "sy") && !p.ends_with("ex13_oracle_constraints.sy") {
                out.push(p);
            }
        }
    }
    out.sort();
    out
}

#[test]
fn core_form_is_a_fixpoint() {
    let files = valid_files();
    assert!(files.len() > 30);
    for p in files {
        let text = std::fs::read_to_string(&p).unwrap();
        let l = load(&text, &Options::default());
        assert!(l.ok(), "{}: {:?}", p.display(), l.diagnostics);
        let once = desugar(&l.state, false);
        let again = load(&once, &Options::default());
        assert!(again.ok(), "{}: core form does not load: {:?}\n{once}", p.display(), again.diagnostics);
        assert_eq!(desugar(&again.state, false), once, "{}", p.display());
    }
}

#[test]
fn loading_is_deterministic() {
    for p in valid_files() {
        let text = std::fs::read_to_string(&p).unwrap();
        let a = desugar(&load(&text, &Options::default()).state, true);
        let b = desugar(&load(&text, &Options::default()).state, true);
        assert_eq!(a, b, "{}", p.display());
    }
}
