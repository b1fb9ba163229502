use std::fmt;

use rayon::prelude::*;

use super::algebra::{compile, Algebra, StandardAlgebra};
use super::consequence::{
    degree_consequence, truth_consequence, ConsequenceResult, Countermodel, SearchConfig, Verdict,
};
use super::{Evaluation, SemanticsError, Structure};
use crate::chain::Chain;
use crate::formula::{var, Formula};
use crate::operators::{validate_c, Method, OpKind, Repr, UnaryOp, STANDARD_GRID};
use crate::scalar::{max_of, min_of, Scalar};

/// One clause of the LFI definition, with the evidence found for it.
#[derive(Clone, Debug)]
pub struct LfiClause<S> {
    pub label: &'static str,
    pub passed: bool,
    /// Whether the verdict is a proof rather than a grid observation.
    pub certified: bool,
    pub countermodel: Option<Countermodel<S>>,
    /// Clause (iv): a point with `x ∧ ¬x ∧ ○x ≠ 0`.
    pub witness: Option<S>,
}

#[derive(Clone, Debug)]
pub struct LfiReport<S> {
    pub structure: String,
    pub clauses: Vec<LfiClause<S>>,
}

impl<S: Scalar> LfiReport<S> {
    pub fn is_lfi(&self) -> bool {
        self.clauses.iter().all(|c| c.passed)
    }

    pub fn clause(&self, i: usize) -> &LfiClause<S> {
        &self.clauses[i]
    }
}

fn p() -> Formula {
    var("p")
}

fn q() -> Formula {
    var("q")
}

fn non_explosion_clause<S: Scalar>(
    label: &'static str,
    s: &Structure<S>,
    premises: &[Formula],
    cfg: &SearchConfig,
) -> Result<LfiClause<S>, SemanticsError> {
    let r = degree_consequence(&[*s], premises, &q(), cfg)?;
    Ok(LfiClause {
        label,
        passed: r.fails(),
        certified: r.verdict != Verdict::Unknown,
        countermodel: r.countermodel,
        witness: None,
    })
}

/// Evaluate the four clauses of the LFI definition with `ψ` a fresh
/// variable.
pub fn check_lfi<S: Scalar>(s: &Structure<S>, cfg: &SearchConfig) -> Result<LfiReport<S>, SemanticsError> {
    let op = s.circ.ok_or(SemanticsError::NoOperator)?;
    let c = s.chain;
    let clauses = vec![
        non_explosion_clause("(i) p, ~p do not entail q", s, &[p(), p().not()], cfg)?,
        non_explosion_clause("(ii) O p, p do not entail q", s, &[p().circ(), p()], cfg)?,
        non_explosion_clause("(iii) O p, ~p do not entail q", s, &[p().circ(), p().not()], cfg)?,
        {
            let gentle = |x: &S| min_of(&min_of(x, &c.negation(x).unwrap()), &op.apply(c, x));
            let (witness, certified) = match c.elements() {
                Some(xs) => (xs.iter().find(|x| !gentle(x).is_zero()).cloned(), true),
                None => {
                    let report = validate_c(c, op)?;
                    let from_c1 = report
                        .violation
                        .as_ref()
                        .filter(|v| v.clause == crate::operators::Clause::C1)
                        .map(|v| v.witness[0].clone());
                    let witness = from_c1.or_else(|| probe_points(c, &op.0).into_iter().find(|x| !gentle(x).is_zero()));
                    (witness, report.valid && report.certified())
                }
            };
            LfiClause {
                label: "(iv) O p, p, ~p entail q",
                passed: witness.is_none(),
                certified: certified || witness.is_some(),
                countermodel: None,
                witness,
            }
        },
    ];
    Ok(LfiReport { structure: s.label(), clauses })
}

fn probe_points<S: Scalar>(c: &Chain<S>, op: &UnaryOp<S>) -> Vec<S> {
    let mut pts = c.sample_points(STANDARD_GRID);
    if let Some(s) = c.standard_parts() {
        pts.extend(s.breakpoints());
        pts.extend(op.breakpoints());
    }
    pts.sort();
    pts.dedup();
    pts
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Connective {
    And,
    Fuse,
    Imp,
    Not,
    Zero,
}

impl Connective {
    pub fn symbol(self) -> &'static str {
        match self {
            Connective::And => "/\\",
            Connective::Fuse => "&",
            Connective::Imp => "->",
            Connective::Not => "~",
            Connective::Zero => "0",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            Connective::And | Connective::Fuse | Connective::Imp => 2,
            Connective::Not => 1,
            Connective::Zero => 0,
        }
    }

    /// The propagation instance `(○p ∧ ○q) → ○(p # q)` and its unary and
    /// nullary analogues.
    pub fn propagation_formula(self) -> Formula {
        match self {
            Connective::And => p().circ().and(q().circ()).imp(p().and(q()).circ()),
            Connective::Fuse => p().circ().and(q().circ()).imp(p().fuse(q()).circ()),
            Connective::Imp => p().circ().and(q().circ()).imp(p().imp(q()).circ()),
            Connective::Not => p().circ().imp(p().not().circ()),
            Connective::Zero => Formula::Zero.circ(),
        }
    }
}

impl fmt::Display for Connective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

impl std::str::FromStr for Connective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "/\\" | "∧" | "and" | "meet" => Ok(Connective::And),
            "&" | "fuse" => Ok(Connective::Fuse),
            "->" | "→" | "imp" => Ok(Connective::Imp),
            "~" | "¬" | "not" => Ok(Connective::Not),
            "0" | "zero" => Ok(Connective::Zero),
            other => Err(format!("unknown connective `{other}`")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PropagationOutcome<S> {
    /// Exhaustive on a finite chain, or by the case analysis on standard
    /// chains.
    Holds {
        method: Method,
        checked: u64,
    },
    Counterpair {
        x: S,
        y: Option<S>,
        value: S,
    },
    /// Grid search found nothing and no argument covers the remaining points.
    NotRefuted {
        checked: u64,
    },
}

/// Whether the case analysis proves propagation of `conn` for `op`.
///
/// For a valid `○` on a chain: `○(x∧y)` is `○x` or `○y`; for `x > y`, `x→y`
/// lies in `N(A) ∪ {1}` whenever `y` does, and `y ∉ N(A) ∪ {0,1}` forces
/// `○y = 0`; `○0 = 1`. The extremal operators propagate `&` because
/// `{0,1}` and `N(A) ∪ {0,1}` are closed under `⊗`.
fn covered_by_case_analysis<S: Scalar>(conn: Connective, op: &UnaryOp<S>) -> bool {
    match conn {
        Connective::And | Connective::Imp | Connective::Not | Connective::Zero => true,
        Connective::Fuse => matches!(op.kind, OpKind::Min | OpKind::Max | OpKind::FromDelta),
    }
}

/// Check `(Prop*)` for one connective. With `at`, only that pair is
/// evaluated.
pub fn check_propagation<S: Scalar>(
    s: &Structure<S>,
    conn: Connective,
    grid_denominator: usize,
    at: Option<(S, S)>,
) -> Result<PropagationOutcome<S>, SemanticsError> {
    let op = s.circ.ok_or(SemanticsError::NoOperator)?;
    let formula = conn.propagation_formula();
    let c = s.chain;
    if let Some((x, y)) = at {
        let ev = Evaluation::new(*s).set("p", x.clone()).set("q", y.clone());
        let value = ev.evaluate(&formula)?;
        return Ok(if value.is_one() {
            PropagationOutcome::NotRefuted { checked: 1 }
        } else {
            PropagationOutcome::Counterpair { x, y: (conn.arity() == 2).then_some(y), value }
        });
    }
    if c.is_finite() {
        let cfg = SearchConfig::default();
        let r = truth_consequence(&[*s], &[], &formula, &cfg)?;
        return Ok(match r.countermodel {
            Some(cm) => PropagationOutcome::Counterpair {
                x: cm.value_of("p").cloned().unwrap_or_else(S::zero),
                y: cm.value_of("q").cloned(),
                value: cm.conclusion_value,
            },
            None => PropagationOutcome::Holds { method: Method::Exhaustive, checked: r.checked_count },
        });
    }
    let mut points = probe_points(c, &op.0);
    points.retain(|x| {
        x.grid_index(grid_denominator).is_some() || !x.is_unit_interval() || {
            c.standard_parts().is_some_and(|sp| sp.breakpoints().contains(x)) || op.breakpoints().contains(x)
        }
    });
    points.extend(c.sample_points(grid_denominator));
    points.sort();
    points.dedup();
    let arity = conn.arity();
    let vars: Vec<String> = ["p", "q"].iter().take(arity).map(|v| v.to_string()).collect();
    let prog = compile(&formula, &vars)?;
    let alg = StandardAlgebra::new(s);
    alg.check(&prog)?;
    let n = points.len() as u64;
    let total = n.pow(arity as u32);
    let hit = (0..total).into_par_iter().find_map_first(|code| {
        let env: Vec<S> = match arity {
            2 => vec![points[(code / n) as usize].clone(), points[(code % n) as usize].clone()],
            1 => vec![points[code as usize].clone()],
            _ => vec![],
        };
        let v = alg.run(&prog, &env);
        (!v.is_one()).then_some((env, v))
    });
    if let Some((env, value)) = hit {
        let mut it = env.into_iter();
        return Ok(PropagationOutcome::Counterpair { x: it.next().unwrap_or_else(S::zero), y: it.next(), value });
    }
    let valid = validate_c(c, op)?;
    if valid.valid && valid.certified() && covered_by_case_analysis(conn, op) {
        Ok(PropagationOutcome::Holds { method: Method::Analytic, checked: total })
    } else {
        Ok(PropagationOutcome::NotRefuted { checked: total })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DatOutcome<S> {
    pub holds: bool,
    /// A point with `○x > x ∨ ¬x`.
    pub witness: Option<S>,
    pub method: Method,
}

/// Pointwise check of `○x ≤ x ∨ ¬x`.
pub fn check_dat_axiom<S: Scalar>(s: &Structure<S>) -> Result<DatOutcome<S>, SemanticsError> {
    let op = s.circ.ok_or(SemanticsError::NoOperator)?;
    let c = s.chain;
    let excess = |x: &S| op.apply(c, x) - max_of(x, &c.negation(x).unwrap());
    if let Some(xs) = c.elements() {
        let witness = xs.iter().find(|x| excess(x).is_positive()).cloned();
        return Ok(DatOutcome { holds: witness.is_none(), witness, method: Method::Exhaustive });
    }
    let sp = c.standard_parts().expect("standard chain");
    let mut critical = sp.breakpoints();
    critical.extend(op.breakpoints());
    let first = &sp.components[0];
    critical.push(S::midpoint(&first.lo, &first.hi));
    critical.sort();
    critical.dedup();
    let linear = matches!(op.repr, Repr::Piecewise { .. });
    let witness = first_positive(&critical, &excess, linear);
    Ok(DatOutcome { holds: witness.is_none(), witness, method: if linear { Method::Analytic } else { Method::Grid } })
}

/// First point where `g > 0`, for `g` linear between consecutive critical
/// points when `linear` holds. Checks the critical points, two interior
/// points per gap, a uniform grid, and both one-sided limits at each
/// critical point.
fn first_positive<S: Scalar>(critical: &[S], g: &impl Fn(&S) -> S, linear: bool) -> Option<S> {
    let three = S::from_int(3);
    for w in critical.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        if g(a).is_positive() {
            return Some(a.clone());
        }
        let width = b.clone() - a.clone();
        let t1 = a.clone() + width.clone() / three.clone();
        let t2 = b.clone() - width / three.clone();
        let mut interior: Vec<S> =
            (1..STANDARD_GRID).map(|i| S::grid_point(i, STANDARD_GRID)).filter(|x| a < x && x < b).collect();
        interior.push(t1.clone());
        interior.push(t2.clone());
        interior.sort();
        if let Some(x) = interior.iter().find(|x| g(x).is_positive()) {
            return Some(x.clone());
        }
        if linear {
            let (g1, g2) = (g(&t1), g(&t2));
            let slope = (g2.clone() - g1.clone()) / (t2.clone() - t1.clone());
            let right = g1 - slope.clone() * (t1.clone() - a.clone());
            let left = g2 + slope * (b.clone() - t2.clone());
            for (limit, at, toward) in [(right, a, &t1), (left, b, &t2)] {
                if limit.is_positive() {
                    let mut x = toward.clone();
                    for _ in 0..256 {
                        if g(&x).is_positive() {
                            return Some(x);
                        }
                        x = S::midpoint(&x, at);
                    }
                }
            }
        }
    }
    critical.last().filter(|x| g(x).is_positive()).cloned()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerKind {
    /// `ψ & ... & ψ`.
    Fuse,
    /// `ψ ∧ ... ∧ ψ`.
    Meet,
}

#[derive(Clone, Debug)]
pub enum PdatOutcome<S> {
    /// Smallest `k` with `(⋀ ○pᵢ)ᵏ → φ` valid. On standard chains the
    /// validity is a grid observation unless `certified`.
    Found { k: usize, certified: bool, refutations: Vec<Countermodel<S>> },
    /// No `k ≤ k_max` succeeded; `refuted` when every one of them has a
    /// countermodel.
    NotFound { k_max: usize, refuted: bool, refutations: Vec<Countermodel<S>> },
}

impl<S> PdatOutcome<S> {
    pub fn k(&self) -> Option<usize> {
        match self {
            PdatOutcome::Found { k, .. } => Some(*k),
            PdatOutcome::NotFound { .. } => None,
        }
    }
}

/// `(⋀ᵢ ○pᵢ)ᵏ → φ` over the variables of `φ`.
pub fn pdat_formula(phi: &Formula, k: usize, power: PowerKind) -> Formula {
    let guard = Formula::conjunction(phi.vars().iter().map(|v| var(v).circ()));
    let powered = match power {
        PowerKind::Fuse => guard.power(k),
        PowerKind::Meet => (1..k).fold(guard.clone(), |acc, _| acc.and(guard.clone())),
    };
    powered.imp(phi.clone())
}

/// Search `k = 1, ..., k_max` for the first `k` making the PDAT implication
/// valid on the structure.
pub fn pdat_search<S: Scalar>(
    s: &Structure<S>,
    phi: &Formula,
    k_max: usize,
    power: PowerKind,
    cfg: &SearchConfig,
) -> Result<PdatOutcome<S>, SemanticsError> {
    if !phi.is_classical() {
        return Err(SemanticsError::NotClassical);
    }
    let dat = check_dat_axiom(s)?;
    if let Some(w) = dat.witness {
        return Err(SemanticsError::DatAxiomFails { witness: w.to_string() });
    }
    let mut refutations = Vec::new();
    let mut all_refuted = true;
    for k in 1..=k_max {
        let r: ConsequenceResult<S> = truth_consequence(&[*s], &[], &pdat_formula(phi, k, power), cfg)?;
        match r.verdict {
            Verdict::Holds => return Ok(PdatOutcome::Found { k, certified: true, refutations }),
            Verdict::Unknown if !s.chain.is_finite() => {
                return Ok(PdatOutcome::Found { k, certified: false, refutations })
            }
            Verdict::Unknown => all_refuted = false,
            Verdict::Fails => refutations.extend(r.countermodel),
        }
    }
    Ok(PdatOutcome::NotFound { k_max, refuted: all_refuted, refutations })
}

/// Truth-table check on the two-element Boolean algebra.
pub fn classical_taut(phi: &Formula) -> Result<bool, SemanticsError> {
    if !phi.is_classical() {
        return Err(SemanticsError::NotClassical);
    }
    let vars: Vec<String> = phi.vars().into_iter().collect();
    if vars.len() > 20 {
        return Err(SemanticsError::TooManyVariables { count: vars.len(), max: 20 });
    }
    fn eval(f: &Formula, vars: &[String], bits: u32) -> bool {
        use Formula::*;
        match f {
            Var(v) => bits >> vars.iter().position(|x| x == v).unwrap() & 1 == 1,
            Zero => false,
            One => true,
            Not(a) => !eval(a, vars, bits),
            And(a, b) | Fuse(a, b) => eval(a, vars, bits) && eval(b, vars, bits),
            Or(a, b) => eval(a, vars, bits) || eval(b, vars, bits),
            Imp(a, b) => !eval(a, vars, bits) || eval(b, vars, bits),
            Iff(a, b) => eval(a, vars, bits) == eval(b, vars, bits),
            Circ(_) | Bullet(_) | Delta(_) => unreachable!("classical formula"),
        }
    }
    Ok((0..1u32 << vars.len()).all(|bits| eval(phi, &vars, bits)))
}

/// Whether `Γ ⊨_degree φ` and `⊨_truth ⋀Γ → φ` agree on a finite chain.
pub fn bridge_check<S: Scalar>(
    s: &Structure<S>,
    premises: &[Formula],
    goal: &Formula,
    cfg: &SearchConfig,
) -> Result<bool, SemanticsError> {
    if !s.chain.is_finite() {
        return Err(SemanticsError::NotFinite);
    }
    let degree = degree_consequence(&[*s], premises, goal, cfg)?;
    let implication = Formula::conjunction(premises.iter().cloned()).imp(goal.clone());
    let truth = truth_consequence(&[*s], &[], &implication, cfg)?;
    Ok(degree.verdict == truth.verdict)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDeduction {
    /// `Σ ∪ {φ} ⊨ ψ`.
    pub with_premise: bool,
    /// Smallest `n ≤ |A|` with `Σ ⊨ φⁿ → ψ`.
    pub exponent: Option<usize>,
}

impl LocalDeduction {
    pub fn agrees(&self) -> bool {
        self.with_premise == self.exponent.is_some()
    }
}

/// The local deduction theorem, checked on one finite chain.
pub fn local_deduction<S: Scalar>(
    s: &Structure<S>,
    sigma: &[Formula],
    phi: &Formula,
    psi: &Formula,
    cfg: &SearchConfig,
) -> Result<LocalDeduction, SemanticsError> {
    let size = s.chain.size().ok_or(SemanticsError::NotFinite)?;
    let mut premises = sigma.to_vec();
    premises.push(phi.clone());
    let with_premise = truth_consequence(&[*s], &premises, psi, cfg)?.holds();
    let mut exponent = None;
    for n in 0..=size {
        if truth_consequence(&[*s], sigma, &phi.power(n).imp(psi.clone()), cfg)?.holds() {
            exponent = Some(n);
            break;
        }
    }
    Ok(LocalDeduction { with_premise, exponent })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{Component, Family};
    use crate::formula::parse;
    use crate::operators::{crisp_op, max_op, min_op, piecewise_op, unique_op, Interpolation};
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_frac(n, d)
    }

    fn f(s: &str) -> Formula {
        parse(s).unwrap()
    }

    fn two(family: Family) -> Chain<Q> {
        Chain::standard(
            "S",
            vec![Component::new(Family::Lukasiewicz, q(0, 1), q(1, 2)), Component::new(family, q(1, 2), q(1, 1))],
        )
        .unwrap()
    }

    #[test]
    fn lfi_on_l3_and_g3() {
        let cfg = SearchConfig::default();
        let l3 = Chain::<Q>::lukasiewicz(3).unwrap();
        let op = unique_op(&l3).unwrap();
        let r = check_lfi(&Structure::new(&l3).with_circ(&op), &cfg).unwrap();
        assert!(r.is_lfi());
        assert_eq!(r.clause(0).countermodel.as_ref().unwrap().value_of("p"), Some(&q(1, 2)));
        assert_eq!(r.clause(1).countermodel.as_ref().unwrap().value_of("p"), Some(&q(1, 1)));
        assert_eq!(r.clause(2).countermodel.as_ref().unwrap().value_of("p"), Some(&q(0, 1)));
        let g3 = Chain::<Q>::godel(3).unwrap();
        let op = min_op(&g3);
        let r = check_lfi(&Structure::new(&g3).with_circ(&op), &cfg).unwrap();
        assert!(!r.clause(0).passed);
        assert!(r.clause(0).certified);
    }

    #[test]
    fn product_counterpair() {
        let lp = two(Family::Product);
        let op = crisp_op(&lp, &q(3, 4), true).unwrap();
        let s = Structure::new(&lp).with_circ(&op);
        let out = check_propagation(&s, Connective::Fuse, 100, Some((q(5, 6), q(3, 4)))).unwrap();
        assert_eq!(out, PropagationOutcome::Counterpair { x: q(5, 6), y: Some(q(3, 4)), value: q(0, 1) });
        assert!(matches!(
            check_propagation(&s, Connective::Fuse, 100, None).unwrap(),
            PropagationOutcome::Counterpair { .. }
        ));
        for conn in [Connective::And, Connective::Imp, Connective::Not, Connective::Zero] {
            let out = check_propagation(&s, conn, 100, None).unwrap();
            assert!(matches!(out, PropagationOutcome::Holds { method: Method::Analytic, .. }), "{conn}");
        }
        let mx = max_op(&lp);
        let s = Structure::new(&lp).with_circ(&mx);
        assert!(matches!(check_propagation(&s, Connective::Fuse, 40, None).unwrap(), PropagationOutcome::Holds { .. }));
    }

    #[test]
    fn dat_axiom() {
        let ll = two(Family::Lukasiewicz);
        let ident = piecewise_op(&ll, &[(q(1, 2), q(1, 2)), (q(1, 1), q(1, 1))], Interpolation::Linear).unwrap();
        let d = check_dat_axiom(&Structure::new(&ll).with_circ(&ident)).unwrap();
        assert!(d.holds);
        assert_eq!(d.method, Method::Analytic);
        let lg = two(Family::Godel);
        let mx = max_op(&lg);
        let d = check_dat_axiom(&Structure::new(&lg).with_circ(&mx)).unwrap();
        assert_eq!(d.witness, Some(q(1, 2)));
        let mn = min_op(&lg);
        assert!(check_dat_axiom(&Structure::new(&lg).with_circ(&mn)).unwrap().holds);
    }

    #[test]
    fn pdat_on_upper_identity() {
        let ll = two(Family::Lukasiewicz);
        let ident = piecewise_op(&ll, &[(q(1, 2), q(1, 2)), (q(1, 1), q(1, 1))], Interpolation::Linear).unwrap();
        let s = Structure::new(&ll).with_circ(&ident);
        let cfg = SearchConfig::default();
        assert_eq!(pdat_search(&s, &f("p \\/ ~p"), 8, PowerKind::Fuse, &cfg).unwrap().k(), Some(1));
        let sq = f("(p \\/ ~p) & (p \\/ ~p)");
        match pdat_search(&s, &sq, 8, PowerKind::Fuse, &cfg).unwrap() {
            PdatOutcome::Found { k, refutations, .. } => {
                assert_eq!(k, 2);
                assert_eq!(refutations.len(), 1);
            }
            other => panic!("{other:?}"),
        }
        let lg = two(Family::Godel);
        let mx = max_op(&lg);
        let err = pdat_search(&Structure::new(&lg).with_circ(&mx), &sq, 8, PowerKind::Fuse, &cfg).unwrap_err();
        assert!(matches!(err, SemanticsError::DatAxiomFails { .. }));
    }

    #[test]
    fn classical_tautologies() {
        assert!(classical_taut(&f("p \\/ ~p")).unwrap());
        assert!(!classical_taut(&f("p -> q")).unwrap());
        assert!(classical_taut(&f("((p -> q) -> p) -> p")).unwrap());
        assert!(matches!(classical_taut(&f("O p")), Err(SemanticsError::NotClassical)));
    }

    #[test]
    fn bridge_and_deduction() {
        let cfg = SearchConfig::default();
        for c in [Chain::<Q>::lukasiewicz(3).unwrap(), Chain::<Q>::godel(3).unwrap()] {
            let s = Structure::new(&c);
            assert!(bridge_check(&s, &[f("p"), f("~p")], &f("q"), &cfg).unwrap());
            assert!(bridge_check(&s, &[], &f("p -> p"), &cfg).unwrap());
        }
        let l3 = Chain::<Q>::lukasiewicz(3).unwrap();
        let d = local_deduction(&Structure::new(&l3), &[], &f("p"), &f("p & p"), &cfg).unwrap();
        assert!(d.with_premise);
        assert_eq!(d.exponent, Some(2));
        assert!(d.agrees());
    }
}
