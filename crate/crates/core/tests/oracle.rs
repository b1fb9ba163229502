mod common;

use std::collections::BTreeMap;

use common::{assignments, degree_holds, eval, oracle_max, oracle_min, q, truth_holds, Oracle};
use lfi_core::catalog::builtin_chain;
use lfi_core::operators::{max_op, min_op};
use lfi_core::semantics::{consequence, Mode, SearchConfig};
use lfi_core::suite::random_formula;
use lfi_core::{Chain, Evaluation, Rational as Q, Structure};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const FINITE: [&str; 8] = ["B2", "L3", "G3", "L5", "G5", "L3G3", "NM6", "W15"];
const STANDARD: [&str; 3] = ["LG", "LP", "LL"];

#[test]
fn finite_operation_tables() {
    for name in FINITE {
        let chain: Chain = builtin_chain(name).unwrap();
        let o = Oracle::builtin(name);
        assert_eq!(chain.elements().unwrap(), o.elements(), "{name}");
        for x in o.elements() {
            assert_eq!(chain.negation(x).unwrap(), o.neg(x), "{name} ~{x}");
            for y in o.elements() {
                assert_eq!(chain.tnorm(x, y).unwrap(), o.t(x, y), "{name} {x}&{y}");
                assert_eq!(chain.residuum(x, y).unwrap(), o.r(x, y), "{name} {x}->{y}");
            }
        }
    }
}

#[test]
fn standard_operations_at_grid_points() {
    for name in STANDARD {
        let chain: Chain = builtin_chain(name).unwrap();
        let o = Oracle::builtin(name);
        let pts: Vec<Q> = (0..=36).map(|i| q(i, 36)).collect();
        for x in &pts {
            for y in &pts {
                assert_eq!(chain.tnorm(x, y).unwrap(), o.t(x, y), "{name} {x}&{y}");
                assert_eq!(chain.residuum(x, y).unwrap(), o.r(x, y), "{name} {x}->{y}");
            }
        }
    }
}

#[test]
fn random_formulas_on_finite_chains() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for name in FINITE {
        let chain: Chain = builtin_chain(name).unwrap();
        let o = Oracle::builtin(name);
        let (lo, hi) = (min_op(&chain), max_op(&chain));
        let circ_min = |x: &Q| oracle_min(x);
        let circ_max = |x: &Q| oracle_max(&o, x);
        for _ in 0..150 {
            let f = random_formula(&mut rng, &["p", "q"], 4, true);
            for env in assignments(&["p".into(), "q".into()], o.elements()) {
                for (op, oracle_op) in [(&lo, &circ_min as common::Op), (&hi, &circ_max)] {
                    let ev = Evaluation::new(Structure::new(&chain).with_circ(op))
                        .set("p", env["p"].clone())
                        .set("q", env["q"].clone());
                    assert_eq!(ev.evaluate(&f).unwrap(), eval(&f, &o, Some(oracle_op), None, &env), "{name}: {f}");
                }
            }
        }
    }
}

#[test]
fn random_formulas_on_standard_chains() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for name in STANDARD {
        let chain: Chain = builtin_chain(name).unwrap();
        let o = Oracle::builtin(name);
        for _ in 0..400 {
            let f = random_formula(&mut rng, &["p", "q", "r"], 5, false);
            let env: BTreeMap<String, Q> = ["p", "q", "r"]
                .iter()
                .map(|v| {
                    let d = rng.gen_range(1..100);
                    (v.to_string(), q(rng.gen_range(0..=d), d))
                })
                .collect();
            let ev = env.iter().fold(Evaluation::new(Structure::new(&chain)), |ev, (k, v)| ev.set(k, v.clone()));
            assert_eq!(ev.evaluate(&f).unwrap(), eval(&f, &o, None, None, &env), "{name}: {f}");
        }
    }
}

#[test]
fn consequence_agrees_with_exhaustive_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let cfg = SearchConfig::default();
    for name in FINITE {
        let chain: Chain = builtin_chain(name).unwrap();
        let o = Oracle::builtin(name);
        let op = max_op(&chain);
        let circ = |x: &Q| oracle_max(&o, x);
        let s = Structure::new(&chain).with_circ(&op);
        for _ in 0..40 {
            let premises: Vec<_> =
                (0..rng.gen_range(0..3)).map(|_| random_formula(&mut rng, &["p", "q"], 3, true)).collect();
            let goal = random_formula(&mut rng, &["p", "q"], 3, true);
            let t = consequence(&[s], &premises, &goal, Mode::Truth, &cfg).unwrap();
            let d = consequence(&[s], &premises, &goal, Mode::Degree, &cfg).unwrap();
            assert_eq!(t.holds(), truth_holds(&o, Some(&circ), None, &premises, &goal), "{name} truth");
            assert_eq!(d.holds(), degree_holds(&o, Some(&circ), None, &premises, &goal), "{name} degree");
        }
    }
}
