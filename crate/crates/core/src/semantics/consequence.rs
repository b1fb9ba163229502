use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::algebra::{compile, Algebra, FiniteAlgebra, Program, StandardAlgebra};
use super::{Evaluation, SemanticsError, Structure};
use crate::formula::Formula;
use crate::scalar::{min_of, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Premises valued 1 force the conclusion to 1.
    Truth,
    /// Every lower bound of the premises bounds the conclusion.
    Degree,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Truth => "truth",
            Mode::Degree => "degree",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "truth" => Ok(Mode::Truth),
            "degree" => Ok(Mode::Degree),
            other => Err(format!("unknown mode `{other}` (expected truth or degree)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Unknown => "unknown",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SearchMethod {
    Exhaustive,
    Grid,
    Sampled,
}

impl fmt::Display for SearchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SearchMethod::Exhaustive => "exhaustive",
            SearchMethod::Grid => "grid",
            SearchMethod::Sampled => "sampled",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConfig {
    /// Standard chains are searched on `{i/d : 0 ≤ i ≤ d}`.
    pub grid_denominator: usize,
    /// Largest assignment space searched exhaustively.
    pub max_evaluations: u64,
    /// Random assignments tried when the space is too large.
    pub samples: u64,
    pub finite_var_cap: usize,
    pub standard_var_cap: usize,
    pub seed: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            grid_denominator: 60,
            max_evaluations: 1_000_000,
            samples: 100_000,
            finite_var_cap: 6,
            standard_var_cap: 4,
            seed: 0x5eed,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Countermodel<S> {
    pub chain: String,
    pub assignment: Vec<(String, S)>,
    /// Degree mode: the minimum of the premise values.
    pub witness_a: Option<S>,
    pub premise_values: Vec<S>,
    pub conclusion_value: S,
}

impl<S: Scalar> Countermodel<S> {
    pub fn value_of(&self, var: &str) -> Option<&S> {
        self.assignment.iter().find(|(v, _)| v == var).map(|(_, x)| x)
    }

    /// Re-evaluate by direct recursion and confirm the violation.
    pub fn verify(&self, s: &Structure<S>, premises: &[Formula], goal: &Formula, mode: Mode) -> bool {
        let mut ev = Evaluation::new(*s);
        for (v, x) in &self.assignment {
            ev = ev.set(v, x.clone());
        }
        let Ok(values) = premises.iter().map(|p| ev.evaluate(p)).collect::<Result<Vec<S>, _>>() else {
            return false;
        };
        let Ok(g) = ev.evaluate(goal) else {
            return false;
        };
        if values != self.premise_values || g != self.conclusion_value {
            return false;
        }
        match mode {
            Mode::Truth => values.iter().all(|v| v.is_one()) && !g.is_one(),
            Mode::Degree => {
                let a = values.iter().fold(S::one(), |acc, v| min_of(&acc, v));
                self.witness_a.as_ref() == Some(&a) && a > g
            }
        }
    }

    pub fn assignment_text(&self) -> String {
        let parts: Vec<String> = self.assignment.iter().map(|(v, x)| format!("{v}={x}")).collect();
        parts.join(" ")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsequenceResult<S> {
    pub verdict: Verdict,
    pub mode: Mode,
    pub countermodel: Option<Countermodel<S>>,
    pub method: SearchMethod,
    pub grid_denominator: Option<usize>,
    pub checked_count: u64,
}

impl<S: Scalar> ConsequenceResult<S> {
    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    pub fn fails(&self) -> bool {
        self.verdict == Verdict::Fails
    }

    pub fn records(&self) -> Vec<String> {
        let mut out = vec![format!("verdict {}", self.verdict), format!("mode {}", self.mode)];
        if let Some(cm) = &self.countermodel {
            out.push(format!("chain {}", cm.chain));
            out.push(format!("assignment {}", cm.assignment_text()).trim_end().to_string());
            if let Some(a) = &cm.witness_a {
                out.push(format!("witness_a={a}"));
            }
            out.push(format!("conclusion_value={}", cm.conclusion_value));
        }
        out.push(format!("method {}", self.method));
        if let Some(d) = self.grid_denominator {
            out.push(format!("grid_denominator {d}"));
        }
        out.push(format!("checked_count {}", self.checked_count));
        out
    }
}

struct Found<E> {
    env: Vec<E>,
    premises: Vec<E>,
    goal: E,
    a: Option<E>,
}

struct Outcome<E> {
    found: Option<Found<E>>,
    checked: u64,
    method: SearchMethod,
}

fn violation<A: Algebra>(
    alg: &A,
    premises: &[Program],
    goal: &Program,
    mode: Mode,
    env: &[A::Elem],
) -> Option<Found<A::Elem>> {
    let one = alg.one();
    let values: Vec<A::Elem> = premises.iter().map(|p| alg.run(p, env)).collect();
    match mode {
        Mode::Truth => {
            if values.iter().any(|v| *v != one) {
                return None;
            }
            let g = alg.run(goal, env);
            (g != one).then(|| Found { env: env.to_vec(), premises: values, goal: g, a: None })
        }
        Mode::Degree => {
            let a = values.iter().cloned().min().unwrap_or(one);
            let g = alg.run(goal, env);
            (a > g).then(|| Found { env: env.to_vec(), premises: values, goal: g, a: Some(a) })
        }
    }
}

fn decode<E: Clone>(points: &[E], k: usize, mut code: u64) -> Vec<E> {
    let n = points.len() as u64;
    let mut env = vec![points[0].clone(); k];
    for slot in env.iter_mut().rev() {
        *slot = points[(code % n) as usize].clone();
        code /= n;
    }
    env
}

fn search<A: Algebra>(
    alg: &A,
    points: &[A::Elem],
    k: usize,
    premises: &[Program],
    goal: &Program,
    mode: Mode,
    cap: usize,
    cfg: &SearchConfig,
) -> Outcome<A::Elem> {
    let total = (points.len() as u64).checked_pow(k as u32);
    match total {
        Some(total) if k <= cap && total <= cfg.max_evaluations => {
            let hit = (0..total).into_par_iter().find_map_first(|code| {
                violation(alg, premises, goal, mode, &decode(points, k, code)).map(|f| (code, f))
            });
            match hit {
                Some((code, f)) => Outcome { found: Some(f), checked: code + 1, method: SearchMethod::Exhaustive },
                None => Outcome { found: None, checked: total, method: SearchMethod::Exhaustive },
            }
        }
        _ => {
            let seed = cfg.seed;
            let hit = (0..cfg.samples).into_par_iter().find_map_first(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(i));
                let env: Vec<A::Elem> = (0..k).map(|_| points[rng.gen_range(0..points.len())].clone()).collect();
                violation(alg, premises, goal, mode, &env).map(|f| (i, f))
            });
            match hit {
                Some((i, f)) => Outcome { found: Some(f), checked: i + 1, method: SearchMethod::Sampled },
                None => Outcome { found: None, checked: cfg.samples, method: SearchMethod::Sampled },
            }
        }
    }
}

/// Decide `premises ⊨ goal` on every structure. A countermodel on any of
/// them refutes the consequence.
pub fn consequence<S: Scalar>(
    structures: &[Structure<S>],
    premises: &[Formula],
    goal: &Formula,
    mode: Mode,
    cfg: &SearchConfig,
) -> Result<ConsequenceResult<S>, SemanticsError> {
    let mut vars = goal.vars();
    for p in premises {
        p.collect_vars(&mut vars);
    }
    let vars: Vec<String> = vars.into_iter().collect();
    let k = vars.len();
    let progs: Vec<Program> = premises.iter().map(|p| compile(p, &vars)).collect::<Result<_, _>>()?;
    let goal_prog = compile(goal, &vars)?;
    let mut checked = 0;
    let mut verdict = Verdict::Holds;
    let mut method = SearchMethod::Exhaustive;
    let mut grid_denominator = None;
    for s in structures {
        let (found, outcome_checked, outcome_method, exact) = if s.chain.is_finite() {
            let alg = FiniteAlgebra::new(s)?;
            alg.check(&goal_prog)?;
            for p in &progs {
                alg.check(p)?;
            }
            let points: Vec<usize> = (0..alg.chain.len()).collect();
            let out = search(&alg, &points, k, &progs, &goal_prog, mode, cfg.finite_var_cap, cfg);
            let found = out.found.map(|f| Found {
                env: f.env.iter().map(|&i| alg.chain.value(i)).collect(),
                premises: f.premises.iter().map(|&i| alg.chain.value(i)).collect(),
                goal: alg.chain.value(f.goal),
                a: f.a.map(|i| alg.chain.value(i)),
            });
            (found, out.checked, out.method, out.method == SearchMethod::Exhaustive)
        } else {
            let alg = StandardAlgebra::new(s);
            alg.check(&goal_prog)?;
            for p in &progs {
                alg.check(p)?;
            }
            grid_denominator = Some(cfg.grid_denominator);
            let points = s.chain.sample_points(cfg.grid_denominator);
            let out = search(&alg, &points, k, &progs, &goal_prog, mode, cfg.standard_var_cap, cfg);
            let m = match out.method {
                SearchMethod::Exhaustive => SearchMethod::Grid,
                other => other,
            };
            (out.found, out.checked, m, k == 0 && out.method == SearchMethod::Exhaustive)
        };
        checked += outcome_checked;
        method = method.max(outcome_method);
        if let Some(f) = found {
            let cm = Countermodel {
                chain: s.label(),
                assignment: vars.iter().cloned().zip(f.env).collect(),
                witness_a: f.a,
                premise_values: f.premises,
                conclusion_value: f.goal,
            };
            return Ok(ConsequenceResult {
                verdict: Verdict::Fails,
                mode,
                countermodel: Some(cm),
                method,
                grid_denominator,
                checked_count: checked,
            });
        }
        if !exact {
            verdict = Verdict::Unknown;
        }
    }
    Ok(ConsequenceResult { verdict, mode, countermodel: None, method, grid_denominator, checked_count: checked })
}

pub fn truth_consequence<S: Scalar>(
    structures: &[Structure<S>],
    premises: &[Formula],
    goal: &Formula,
    cfg: &SearchConfig,
) -> Result<ConsequenceResult<S>, SemanticsError> {
    consequence(structures, premises, goal, Mode::Truth, cfg)
}

pub fn degree_consequence<S: Scalar>(
    structures: &[Structure<S>],
    premises: &[Formula],
    goal: &Formula,
    cfg: &SearchConfig,
) -> Result<ConsequenceResult<S>, SemanticsError> {
    consequence(structures, premises, goal, Mode::Degree, cfg)
}
