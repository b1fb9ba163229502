//! The bundled reproduction suite: twelve checks over the built-in chains,
//! operators and proof fixtures.

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::{builtin_chain, FINITE_CHAINS};
use crate::chain::{Chain, Filter};
use crate::formula::{parse, var, Formula};
use crate::hilbert::fixtures::{FIXTURE_PROOFS, MUTATIONS};
use crate::hilbert::{applicable_models, soundness_bridge, verify_proof, ProofScript, TheoremStore};
use crate::operators::{
    crisp_op, dual, enumerate_ops, max_op, min_op, piecewise_op, table_op_indices, unique_op, validate_algebraic,
    validate_bullet, validate_c, ConsistencyOp, Interpolation,
};
use crate::scalar::Scalar;
use crate::semantics::{
    bridge_check, check_dat_axiom, check_lfi, check_propagation, classical_taut, local_deduction, pdat_search,
    truth_consequence, Connective, Evaluation, PdatOutcome, PowerKind, PropagationOutcome, SearchConfig, Structure,
    Verdict,
};
use crate::Rational;

type Q = Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub grid_denominator: usize,
    pub kmax: usize,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { grid_denominator: 60, kmax: 8, seed: 20_240_601 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Criterion {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

pub const TITLES: [&str; 12] = [
    "algebra laws",
    "postulates agree with the algebraic conditions",
    "unique operator on involutive chains",
    "extremal operators",
    "propagation",
    "DAT example on L+L",
    "PDAT on tautologies",
    "quotient of the WNM chain",
    "LFI clauses",
    "duality",
    "bridge and local deduction",
    "proof fixtures",
];

/// Run one check by number, `1..=12`.
pub fn run_criterion(id: usize, cfg: &SuiteConfig) -> Criterion {
    let (passed, detail) = match id {
        1 => algebra_laws(cfg),
        2 => lemma_equivalence(),
        3 => uniqueness(),
        4 => extremality(),
        5 => propagation(cfg),
        6 => dat_example(cfg),
        7 => pdat_tautologies(cfg),
        8 => quotient_remark(),
        9 => lfi_clauses(cfg),
        10 => duality(),
        11 => bridge_and_deduction(cfg),
        12 => proof_fixtures(),
        _ => panic!("criteria are numbered 1 to 12"),
    };
    Criterion { id, title: TITLES[id - 1], passed, detail }
}

pub fn run_suite(cfg: &SuiteConfig) -> Vec<Criterion> {
    (1..=12).map(|i| run_criterion(i, cfg)).collect()
}

fn chain(name: &str) -> Chain<Q> {
    builtin_chain(name).expect("built-in chain")
}

fn q(n: i64, d: i64) -> Q {
    Q::from_frac(n, d)
}

fn small_chains() -> Vec<Chain<Q>> {
    FINITE_CHAINS.iter().map(|n| chain(n)).filter(|c| c.size().unwrap() <= 5).collect()
}

fn standard_pairs() -> Vec<Chain<Q>> {
    ["LG", "LP", "LL"].iter().map(|n| chain(n)).collect()
}

fn algebra_laws(cfg: &SuiteConfig) -> (bool, String) {
    let finite = ["B2", "L3", "L5", "G3", "G5", "NM6", "W15"];
    let mut bad = Vec::new();
    for name in finite {
        if let Some((law, at)) = chain(name).finite().unwrap().law_violation() {
            bad.push(format!("{name}: {law} at {at:?}"));
        }
    }
    for (i, c) in standard_pairs().iter().enumerate() {
        if let Some((x, y, z)) = c.adjointness_sample(10_000, 1000, cfg.seed + i as u64) {
            bad.push(format!("{}: adjointness at ({x}, {y}, {z})", c.name));
        }
    }
    (bad.is_empty(), if bad.is_empty() { "7 finite chains exhaustive, 3x10000 triples".into() } else { bad.join("; ") })
}

fn all_maps(n: usize) -> impl ParallelIterator<Item = Vec<usize>> {
    (0..n.pow(n as u32)).into_par_iter().map(move |mut code| {
        let mut idx = vec![0; n];
        for slot in idx.iter_mut() {
            *slot = code % n;
            code /= n;
        }
        idx
    })
}

fn lemma_equivalence() -> (bool, String) {
    let mut total = 0;
    let mut bad = Vec::new();
    for c in small_chains() {
        let n = c.size().unwrap();
        let disagreements: Vec<Vec<usize>> = all_maps(n)
            .filter(|idx| {
                let op = table_op_indices(&c, "candidate", idx).unwrap();
                validate_c(&c, &op).unwrap().valid != validate_algebraic(&c, &op).unwrap().valid
            })
            .collect();
        total += n.pow(n as u32);
        bad.extend(disagreements.into_iter().map(|d| format!("{}: {d:?}", c.name)));
    }
    (bad.is_empty(), if bad.is_empty() { format!("{total} maps, 100% agreement") } else { bad.join("; ") })
}

fn uniqueness() -> (bool, String) {
    let counts: Vec<(String, usize)> =
        ["L3", "L5", "B2"].iter().map(|n| (n.to_string(), enumerate_ops(&chain(n)).unwrap().len())).collect();
    let ok = counts.iter().all(|(_, k)| *k == 1);
    (ok, counts.iter().map(|(n, k)| format!("{n}: {k}")).collect::<Vec<_>>().join(", "))
}

fn extremality() -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for c in small_chains() {
        let (lo, hi) = (min_op(&c), max_op(&c));
        for op in enumerate_ops(&c).unwrap() {
            checked += 1;
            for x in c.elements().unwrap() {
                let v = op.apply(&c, x);
                if v < lo.apply(&c, x) || v > hi.apply(&c, x) {
                    bad.push(format!("{} {} at {x}", c.name, op.name));
                }
            }
        }
    }
    (bad.is_empty(), if bad.is_empty() { format!("{checked} operators within [min, max]") } else { bad.join("; ") })
}

fn random_point(rng: &mut ChaCha8Rng) -> Q {
    let d = rng.gen_range(1..=240);
    q(rng.gen_range(0..=d), d)
}

fn standard_ops(c: &Chain<Q>) -> Vec<ConsistencyOp<Q>> {
    let mut ops =
        vec![min_op(c), max_op(c), crisp_op(c, &q(3, 4), true).unwrap(), crisp_op(c, &q(3, 4), false).unwrap()];
    if c.name == "LL" {
        ops.push(piecewise_op(c, &[(q(1, 2), q(1, 2)), (q(1, 1), q(1, 1))], Interpolation::Linear).unwrap());
    }
    ops
}

fn propagation(cfg: &SuiteConfig) -> (bool, String) {
    let mut bad = Vec::new();
    let mut finite_ops = 0;
    for c in small_chains() {
        for op in enumerate_ops(&c).unwrap() {
            finite_ops += 1;
            let s = Structure::new(&c).with_circ(&op);
            let mut conns = vec![Connective::And, Connective::Imp];
            if op.name == "min" || op.name == "max" {
                conns.push(Connective::Fuse);
            }
            for conn in conns {
                if !matches!(
                    check_propagation(&s, conn, cfg.grid_denominator, None),
                    Ok(PropagationOutcome::Holds { .. })
                ) {
                    bad.push(format!("{} {} {}", c.name, op.name, conn.symbol()));
                }
            }
        }
        for op in [min_op(&c), max_op(&c)] {
            let s = Structure::new(&c).with_circ(&op);
            if !matches!(
                check_propagation(&s, Connective::Fuse, cfg.grid_denominator, None),
                Ok(PropagationOutcome::Holds { .. })
            ) {
                bad.push(format!("{} {} &", c.name, op.name));
            }
        }
    }
    let mut pairs = 0;
    for (ci, c) in standard_pairs().iter().enumerate() {
        for op in standard_ops(c) {
            let s = Structure::new(c).with_circ(&op);
            let mut conns = vec![Connective::And, Connective::Imp];
            if op.name == "min" || op.name == "max" {
                conns.push(Connective::Fuse);
            }
            for conn in conns {
                let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (ci as u64) << 8);
                let pts: Vec<(Q, Q)> = (0..10_000).map(|_| (random_point(&mut rng), random_point(&mut rng))).collect();
                pairs += pts.len();
                let f = conn.propagation_formula();
                let fail = pts.par_iter().find_first(|(x, y)| {
                    let ev = Evaluation::new(s).set("p", x.clone()).set("q", y.clone());
                    !ev.evaluate(&f).unwrap().is_one()
                });
                if let Some((x, y)) = fail {
                    bad.push(format!("{} {} {} at ({x}, {y})", c.name, op.name, conn.symbol()));
                }
                if matches!(
                    check_propagation(&s, conn, cfg.grid_denominator, None),
                    Ok(PropagationOutcome::Counterpair { .. })
                ) {
                    bad.push(format!("{} {} {} refuted on the grid", c.name, op.name, conn.symbol()));
                }
            }
        }
    }
    let lp = chain("LP");
    let crisp = crisp_op(&lp, &q(3, 4), true).unwrap();
    let s = Structure::new(&lp).with_circ(&crisp);
    let example = check_propagation(&s, Connective::Fuse, cfg.grid_denominator, Some((q(5, 6), q(3, 4))));
    let counter = matches!(
        &example,
        Ok(PropagationOutcome::Counterpair { x, y: Some(y), value }) if *x == q(5, 6) && *y == q(3, 4) && value.is_zero()
    );
    let searched = matches!(
        check_propagation(&s, Connective::Fuse, cfg.grid_denominator, None),
        Ok(PropagationOutcome::Counterpair { .. })
    );
    if !counter || !searched {
        bad.push(format!("LP crisp:3/4 &: {example:?}"));
    }
    let ok = bad.is_empty();
    let detail = if ok {
        format!("{finite_ops} finite operators, {pairs} standard pairs, & fails on LP at (5/6, 3/4) with value 0")
    } else {
        bad.join("; ")
    };
    (ok, detail)
}

fn dat_example(cfg: &SuiteConfig) -> (bool, String) {
    let ll = chain("LL");
    let op = piecewise_op(&ll, &[(q(1, 2), q(1, 2)), (q(1, 1), q(1, 1))], Interpolation::Linear).unwrap();
    let s = Structure::new(&ll).with_circ(&op);
    let sc = SearchConfig { grid_denominator: cfg.grid_denominator, ..SearchConfig::default() };
    let mut bad = Vec::new();
    if !check_dat_axiom(&s).map(|d| d.holds).unwrap_or(false) {
        bad.push("DAT axiom fails".to_string());
    }
    let em = parse("p \\/ ~p").unwrap();
    let r1 = truth_consequence(&[s], &[], &var("p").circ().imp(em.clone()), &sc).unwrap();
    if r1.verdict == Verdict::Fails {
        bad.push("O p -> p \\/ ~p refuted".into());
    }
    let squared = var("p").circ().imp(em.clone().fuse(em.clone()));
    let r2 = truth_consequence(&[s], &[], &squared, &sc).unwrap();
    let at = Evaluation::new(s).set("p", q(3, 5)).evaluate(&squared).unwrap();
    if !r2.fails() || at != q(9, 10) {
        bad.push(format!("squared form: verdict {:?}, value at 3/5 = {at}", r2.verdict));
    }
    let k1 = pdat_search(&s, &em, cfg.kmax, PowerKind::Fuse, &sc).map(|o| o.k());
    let k2 = pdat_search(&s, &em.clone().fuse(em), cfg.kmax, PowerKind::Fuse, &sc).map(|o| o.k());
    if k1 != Ok(Some(1)) || k2 != Ok(Some(2)) {
        bad.push(format!("pdat k = {k1:?}, {k2:?}"));
    }
    let ok = bad.is_empty();
    (ok, if ok { "DAT holds, square refuted at p=3/5 with value 9/10, k = 1 and 2".into() } else { bad.join("; ") })
}

pub const PDAT_TAUTOLOGIES: [&str; 5] =
    ["p \\/ ~p", "(p -> q) \\/ (q -> p)", "((p -> q) -> p) -> p", "~(p /\\ ~p) \\/ (p \\/ ~p)", "p -> (q -> p)"];

fn pdat_tautologies(cfg: &SuiteConfig) -> (bool, String) {
    let b2 = chain("B2");
    let op = unique_op(&b2).unwrap();
    let s = Structure::new(&b2).with_circ(&op);
    let sc = SearchConfig::default();
    let mut bad = Vec::new();
    for text in PDAT_TAUTOLOGIES {
        let f = parse(text).unwrap();
        let k = pdat_search(&s, &f, cfg.kmax, PowerKind::Fuse, &sc).map(|o| o.k());
        if classical_taut(&f) != Ok(true) || k != Ok(Some(1)) {
            bad.push(format!("{text}: k = {k:?}"));
        }
    }
    let pq = parse("p -> q").unwrap();
    let none =
        matches!(pdat_search(&s, &pq, cfg.kmax, PowerKind::Fuse, &sc), Ok(PdatOutcome::NotFound { refuted: true, .. }));
    if classical_taut(&pq) != Ok(false) || !none {
        bad.push("p -> q".into());
    }
    let ok = bad.is_empty();
    (ok, if ok { format!("5 tautologies at k=1, p -> q fails for every k <= {}", cfg.kmax) } else { bad.join("; ") })
}

fn quotient_remark() -> (bool, String) {
    let w = chain("W15");
    let quasi = w.n_set().is_empty();
    let f: Vec<Q> = (12..=15).map(|i| q(i, 15)).collect();
    let result = Filter::new(&w, &f).and_then(|f| w.quotient_by_filter(&f));
    match result {
        Ok(quo) => {
            let fc = quo.chain.finite().unwrap();
            let lawful = fc.law_violation().is_none();
            let z = (0..fc.len()).find(|&i| i != fc.top() && fc.neg(i) == 0);
            let ok = quasi && lawful && z.is_some();
            let detail = format!(
                "W15 has N empty: {quasi}; quotient has {} classes, MTL laws: {lawful}, z = {}",
                fc.len(),
                z.map(|i| fc.value(i).to_string()).unwrap_or("none".into())
            );
            (ok, detail)
        }
        Err(e) => (false, e.to_string()),
    }
}

fn lfi_clauses(cfg: &SuiteConfig) -> (bool, String) {
    let sc = SearchConfig { grid_denominator: cfg.grid_denominator, ..SearchConfig::default() };
    let l3 = chain("L3");
    let lg = chain("LG");
    let lp = chain("LP");
    let g3 = chain("G3");
    let cases = [(&l3, unique_op(&l3).unwrap()), (&lg, max_op(&lg)), (&lp, crisp_op(&lp, &q(3, 4), true).unwrap())];
    let mut bad = Vec::new();
    for (c, op) in &cases {
        let r = check_lfi(&Structure::new(c).with_circ(op), &sc).unwrap();
        if !r.is_lfi() {
            bad.push(format!("{} is not an LFI here", r.structure));
        }
    }
    let g = min_op(&g3);
    let r = check_lfi(&Structure::new(&g3).with_circ(&g), &sc).unwrap();
    if r.clause(0).passed {
        bad.push("G3 clause (i) passes".into());
    }
    let ok = bad.is_empty();
    (ok, if ok { "L3, LG+max, LP+crisp:3/4 pass (i)-(iv); G3 fails (i)".into() } else { bad.join("; ") })
}

fn duality() -> (bool, String) {
    let mut checked = 0;
    let mut bad = Vec::new();
    for c in small_chains() {
        for op in enumerate_ops(&c).unwrap() {
            checked += 1;
            if !validate_bullet(&c, &dual(&c, &op)).unwrap().valid {
                bad.push(format!("{} {}", c.name, op.name));
            }
        }
    }
    (bad.is_empty(), if bad.is_empty() { format!("{checked} duals valid") } else { bad.join("; ") })
}

/// A random formula over `vars` of depth at most `depth`, in the language
/// `0, 1, ~, &, /\, \/, ->`, with `O` when `circ`.
pub fn random_formula(rng: &mut impl Rng, vars: &[&str], depth: usize, circ: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..10) {
            0 => Formula::Zero,
            1 => Formula::One,
            _ => var(vars[rng.gen_range(0..vars.len())]),
        };
    }
    let sub = |rng: &mut _| random_formula(rng, vars, depth - 1, circ);
    match rng.gen_range(0..if circ { 7 } else { 6 }) {
        0 => sub(rng).not(),
        1 => sub(rng).fuse(sub(rng)),
        2 => sub(rng).and(sub(rng)),
        3 => sub(rng).or(sub(rng)),
        4 | 5 => sub(rng).imp(sub(rng)),
        _ => sub(rng).circ(),
    }
}

fn bridge_and_deduction(cfg: &SuiteConfig) -> (bool, String) {
    let chains: Vec<Chain<Q>> = ["B2", "L3", "G3", "L5", "G5", "L3G3", "NM6"].iter().map(|n| chain(n)).collect();
    let ops: Vec<ConsistencyOp<Q>> = chains.iter().map(max_op).collect();
    let sc = SearchConfig::default();
    let vars = ["p", "q", "r"];
    let bridge_bad: Vec<String> = (0..1000u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_add(i));
            let k = i as usize % chains.len();
            let s = Structure::new(&chains[k]).with_circ(&ops[k]);
            let premises: Vec<Formula> =
                (0..rng.gen_range(0..3)).map(|_| random_formula(&mut rng, &vars, 3, true)).collect();
            let goal = random_formula(&mut rng, &vars, 3, true);
            (!bridge_check(&s, &premises, &goal, &sc).unwrap())
                .then(|| format!("{} {premises:?} {goal}", chains[k].name))
        })
        .collect();
    let dchains: Vec<Chain<Q>> = ["L3", "L5", "G3"].iter().map(|n| chain(n)).collect();
    let ded_bad: Vec<String> = (0..150u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed.wrapping_mul(31).wrapping_add(i));
            let c = &dchains[i as usize % dchains.len()];
            let s = Structure::new(c);
            let sigma: Vec<Formula> =
                (0..rng.gen_range(0..2)).map(|_| random_formula(&mut rng, &vars, 2, false)).collect();
            let phi = random_formula(&mut rng, &vars, 2, false);
            let psi = random_formula(&mut rng, &vars, 3, false);
            let r = local_deduction(&s, &sigma, &phi, &psi, &sc).unwrap();
            (!r.agrees()).then(|| format!("{} {sigma:?} {phi} {psi}", c.name))
        })
        .collect();
    let ok = bridge_bad.is_empty() && ded_bad.is_empty();
    let detail = if ok {
        "1000 bridge queries, 150 local deduction instances, 0 disagreements".into()
    } else {
        bridge_bad.into_iter().chain(ded_bad).take(3).collect::<Vec<_>>().join("; ")
    };
    (ok, detail)
}

fn proof_fixtures() -> (bool, String) {
    let store = TheoremStore::seeded();
    let mut bad = Vec::new();
    let mut bridged = 0;
    for (name, text) in FIXTURE_PROOFS {
        let outcome = text
            .parse::<ProofScript>()
            .map_err(|e| e.to_string())
            .and_then(|s| verify_proof(&s, &store).map_err(|e| e.to_string()))
            .and_then(|p| {
                let models = applicable_models::<Q>(&p.profile);
                let structures: Vec<Structure<Q>> = models.iter().map(|m| m.structure()).collect();
                bridged += structures.len();
                let report = soundness_bridge(&p, &structures).map_err(|e| e.to_string())?;
                if report.confirmed() && !structures.is_empty() {
                    Ok(())
                } else {
                    Err(format!("bridge: {:?}", report.violations))
                }
            });
        if let Err(e) = outcome {
            bad.push(format!("{name}: {e}"));
        }
    }
    for (name, text, line) in MUTATIONS {
        let got = text.parse::<ProofScript>().ok().and_then(|s| verify_proof(&s, &store).err()).and_then(|e| e.line());
        if got != Some(*line) {
            bad.push(format!("mutation {name}: rejected at {got:?}, expected line {line}"));
        }
    }
    let ok = bad.is_empty();
    let detail = if ok {
        format!(
            "{} proofs verified over {bridged} models, {} mutations rejected",
            FIXTURE_PROOFS.len(),
            MUTATIONS.len()
        )
    } else {
        bad.join("; ")
    };
    (ok, detail)
}
