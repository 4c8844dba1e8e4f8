//! Cross-engine agreement on the smaller corpus problems.

use std::path::PathBuf;

use implicitize::budget::Budget;
use implicitize::direct::DirectOptions;
use implicitize::parse::{load_problem_file, ParamSystem};
use implicitize::ratpar::{rat_par, Engine};

const SMALL: [(&str, usize); 8] = [
    ("dandrea", 6),
    ("orecchia", 9),
    ("enneper", 57),
    ("buse1", 13),
    ("buse2", 56),
    ("dic1", 41),
    ("bohemian", 7),
    ("sine", 7),
];

fn problem(name: &str) -> ParamSystem {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus");
    load_problem_file(dir.join(format!("{name}.prob"))).unwrap()
}

#[test]
fn engines_agree_modulo_a_prime() {
    for (name, len) in SMALL {
        let par = problem(name).over_prime(32003).unwrap();
        let b = Budget::unlimited();
        let opts = DirectOptions::default();
        let e = rat_par(&par, Engine::ElimTh, &opts, &b).unwrap().generators;
        let d = rat_par(&par, Engine::Direct, &opts, &b).unwrap().generators;
        let c = rat_par(&par, Engine::Classical, &opts, &b).unwrap().generators;
        assert_eq!((e.len(), d.len(), c.len()), (1, 1, 1), "{name}");
        assert_eq!(e[0].len(), len, "{name}");
        assert!(e[0].is_scalar_multiple_of(&d[0]), "{name}");
        assert!(e[0].is_scalar_multiple_of(&c[0]), "{name}");
        assert!(par.vanishes_on(&e[0]).unwrap(), "{name}");
    }
}

#[test]
fn engines_agree_over_the_rationals() {
    for name in ["dandrea", "orecchia", "bohemian", "sine", "buse1"] {
        let sys = problem(name);
        let par = sys.over_rationals();
        let b = Budget::unlimited();
        let opts = DirectOptions::default();
        let e = rat_par(par, Engine::ElimTh, &opts, &b).unwrap().generators;
        let d = rat_par(par, Engine::Direct, &opts, &b).unwrap().generators;
        assert!(e[0].is_scalar_multiple_of(&d[0]), "{name}");
        assert!(par.vanishes_on(&e[0]).unwrap(), "{name}");
    }
}

#[test]
fn generators_are_monic() {
    for name in ["dandrea", "dic1"] {
        let par = problem(name).over_prime(32003).unwrap();
        let sigma = par.target_ring().default_ordering();
        for engine in [Engine::ElimTh, Engine::Direct] {
            let g = rat_par(&par, engine, &DirectOptions::default(), &Budget::unlimited()).unwrap().generator().unwrap().clone();
            assert_eq!(g, g.make_monic(&sigma), "{name} {engine}");
        }
    }
}
