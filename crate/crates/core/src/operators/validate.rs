use std::fmt;

use super::{ConsistencyOp, InconsistencyOp, OpError, Repr, UnaryOp};
use crate::chain::{Chain, NSet};
use crate::scalar::{max_of, min_of, Scalar};

/// Grid resolution used alongside the analytic probes on standard chains.
pub const STANDARD_GRID: usize = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clause {
    C1,
    C2,
    C3,
    Alg1,
    Alg2,
    Alg3,
    B1,
    B2,
    B3,
}

impl Clause {
    /// ASCII identifier used in machine-readable output.
    pub fn id(self) -> &'static str {
        match self {
            Clause::C1 => "c1",
            Clause::C2 => "c2",
            Clause::C3 => "c3",
            Clause::Alg1 => "o1",
            Clause::Alg2 => "o2",
            Clause::Alg3 => "o3",
            Clause::B1 => "b1",
            Clause::B2 => "b2",
            Clause::B3 => "b3",
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Clause::C1 => "(c1)",
            Clause::C2 => "(c2)",
            Clause::C3 => "(c3)",
            Clause::Alg1 => "(○1)",
            Clause::Alg2 => "(○2)",
            Clause::Alg3 => "(○3)",
            Clause::B1 => "(•1)",
            Clause::B2 => "(•2)",
            Clause::B3 => "(•3)",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Exhaustive,
    /// Breakpoint and segment analysis plus a uniform grid.
    Analytic,
    /// Grid points only; a pass is not a proof.
    Grid,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Exhaustive => "exhaustive",
            Method::Analytic => "analytic",
            Method::Grid => "grid",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation<S> {
    pub clause: Clause,
    pub witness: Vec<S>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport<S> {
    pub valid: bool,
    pub violation: Option<Violation<S>>,
    pub method: Method,
    pub points_checked: usize,
}

impl<S: Scalar> ValidationReport<S> {
    /// Whether a pass is a proof.
    pub fn certified(&self) -> bool {
        !self.valid || self.method != Method::Grid
    }

    pub fn records(&self) -> Vec<String> {
        let mut out = vec![format!("verdict {}", if self.valid { "valid" } else { "invalid" })];
        if let Some(v) = &self.violation {
            out.push(format!("clause {}", v.clause.id()));
            let w: Vec<String> = v.witness.iter().map(|x| x.to_string()).collect();
            out.push(format!("witness {}", w.join(" ")));
        }
        out.push(format!("method {}", self.method));
        out.push(format!("checked_count {}", self.points_checked));
        out
    }

    fn pass(method: Method, points_checked: usize) -> Self {
        ValidationReport { valid: true, violation: None, method, points_checked }
    }

    fn fail(clause: Clause, witness: Vec<S>, method: Method, points_checked: usize) -> Self {
        ValidationReport { valid: false, violation: Some(Violation { clause, witness }), method, points_checked }
    }
}

fn neg<S: Scalar>(c: &Chain<S>, x: &S) -> S {
    c.negation(x).expect("value in carrier")
}

fn imp<S: Scalar>(c: &Chain<S>, x: &S, y: &S) -> S {
    c.residuum(x, y).expect("value in carrier")
}

fn in_upper_region<S: Scalar>(n: &NSet<S>, x: &S) -> bool {
    x.is_one() || n.contains(x)
}

/// Re-check a reported violation directly against the definitions.
pub fn is_genuine<S: Scalar>(chain: &Chain<S>, op: &UnaryOp<S>, v: &Violation<S>) -> bool {
    let f = |x: &S| op.apply(chain, x);
    let w = &v.witness;
    let zero = S::zero();
    match v.clause {
        Clause::C1 => min_of(&w[0], &neg(chain, &w[0])) != zero && f(&w[0]) != zero,
        Clause::C2 | Clause::Alg2 => (w[0].is_zero() || w[0].is_one()) && !f(&w[0]).is_one(),
        Clause::C3 => neg(chain, &w[0]).is_zero() && w[0] <= w[1] && f(&w[0]) > f(&w[1]),
        Clause::Alg1 => min_of(&min_of(&w[0], &neg(chain, &w[0])), &f(&w[0])) != zero,
        Clause::Alg3 => {
            let (x, y, z) = (&w[0], &w[1], &w[2]);
            let premise = max_of(&min_of(&neg(chain, &neg(chain, x)), &imp(chain, x, y)), z);
            let concl = max_of(&imp(chain, &f(x), &f(y)), z);
            premise.is_one() && !concl.is_one()
        }
        Clause::B1 => {
            let consistent = neg(chain, &min_of(&w[0], &neg(chain, &w[0])));
            !max_of(&consistent, &f(&w[0])).is_one()
        }
        Clause::B2 => (w[0].is_zero() || w[0].is_one()) && !f(&w[0]).is_zero(),
        Clause::B3 => neg(chain, &w[0]).is_zero() && w[0] <= w[1] && f(&w[1]) > f(&w[0]),
    }
}

#[derive(Clone, Debug)]
enum ProbeKind<S> {
    Exact,
    /// Limit from the right of `at`; realized by points between `at` and `toward`.
    RightOf {
        toward: S,
    },
    /// Limit from the left of `at`.
    LeftOf {
        toward: S,
    },
}

#[derive(Clone, Debug)]
struct Probe<S> {
    at: S,
    value: S,
    kind: ProbeKind<S>,
}

fn is_linear_between_breakpoints<S>(repr: &Repr<S>) -> bool {
    matches!(repr, Repr::Piecewise { .. })
}

/// Probe points for a standard-chain operator, in ascending order with
/// one-sided limits around each breakpoint. Returns whether the probes
/// decide the postulates exactly.
fn standard_probes<S: Scalar>(chain: &Chain<S>, op: &UnaryOp<S>) -> (Vec<Probe<S>>, bool) {
    let s = chain.standard_parts().expect("standard chain");
    let mut critical = s.breakpoints();
    critical.extend(op.breakpoints());
    if let Some((a, _)) = chain.n_set().lower_end() {
        critical.push(a);
    }
    critical.sort();
    critical.dedup();
    let linear = is_linear_between_breakpoints(&op.repr) || (matches!(op.repr, Repr::Negated(_)) && op.is_crisp());
    let f = |x: &S| op.apply(chain, x);
    let mut probes = Vec::new();
    let three = S::from_int(3);
    for w in critical.windows(2) {
        let (p, q) = (&w[0], &w[1]);
        probes.push(Probe { at: p.clone(), value: f(p), kind: ProbeKind::Exact });
        let width = q.clone() - p.clone();
        let t1 = p.clone() + width.clone() / three.clone();
        let t2 = q.clone() - width.clone() / three.clone();
        let (f1, f2) = (f(&t1), f(&t2));
        let slope = (f2.clone() - f1.clone()) / (t2.clone() - t1.clone());
        if linear {
            let right = f1.clone() - slope.clone() * (t1.clone() - p.clone());
            probes.push(Probe { at: p.clone(), value: right, kind: ProbeKind::RightOf { toward: t1.clone() } });
        }
        let mut interior: Vec<S> =
            (1..STANDARD_GRID).map(|i| S::grid_point(i, STANDARD_GRID)).filter(|x| p < x && x < q).collect();
        interior.push(t1.clone());
        interior.push(t2.clone());
        interior.sort();
        interior.dedup();
        for x in interior {
            let value = f(&x);
            probes.push(Probe { at: x, value, kind: ProbeKind::Exact });
        }
        if linear {
            let left = f2.clone() + slope * (q.clone() - t2.clone());
            probes.push(Probe { at: q.clone(), value: left, kind: ProbeKind::LeftOf { toward: t2 } });
        }
    }
    let one = S::one();
    probes.push(Probe { value: f(&one), at: one, kind: ProbeKind::Exact });
    (probes, linear)
}

/// A concrete point near a limit probe whose value is strictly above
/// (`above`) or below `bound`.
fn realize<S: Scalar>(chain: &Chain<S>, op: &UnaryOp<S>, probe: &Probe<S>, bound: &S, above: bool) -> S {
    let toward = match &probe.kind {
        ProbeKind::Exact => return probe.at.clone(),
        ProbeKind::RightOf { toward } | ProbeKind::LeftOf { toward } => toward.clone(),
    };
    let mut x = toward;
    for _ in 0..256 {
        let v = op.apply(chain, &x);
        if (above && v > *bound) || (!above && v < *bound) {
            return x;
        }
        x = S::midpoint(&x, &probe.at);
    }
    probe.at.clone()
}

/// Find `i < j` in the upper region with `value_i > value_j` (increasing)
/// or `value_i < value_j` (decreasing).
fn monotone_violation<S: Scalar>(probes: &[Probe<S>], n: &NSet<S>, increasing: bool) -> Option<(usize, usize)> {
    let region: Vec<usize> = (0..probes.len())
        .filter(|&i| {
            let p = &probes[i];
            match &p.kind {
                ProbeKind::Exact => in_upper_region(n, &p.at),
                ProbeKind::RightOf { toward } | ProbeKind::LeftOf { toward } => in_upper_region(n, toward),
            }
        })
        .collect();
    let mut best: Option<usize> = None;
    for &j in region.iter().rev() {
        if let Some(b) = best {
            let bad = if increasing { probes[j].value > probes[b].value } else { probes[j].value < probes[b].value };
            if bad {
                return Some((j, b));
            }
            let better = if increasing { probes[j].value < probes[b].value } else { probes[j].value > probes[b].value };
            if better {
                best = Some(j);
            }
        } else {
            best = Some(j);
        }
    }
    None
}

/// Decide `(c1)`–`(c3)`.
pub fn validate_c<S: Scalar>(chain: &Chain<S>, op: &ConsistencyOp<S>) -> Result<ValidationReport<S>, OpError> {
    op.check_host(chain)?;
    validate_pointwise(chain, op, false)
}

/// Decide `(•1)`–`(•3)`.
pub fn validate_bullet<S: Scalar>(chain: &Chain<S>, op: &InconsistencyOp<S>) -> Result<ValidationReport<S>, OpError> {
    op.check_host(chain)?;
    validate_pointwise(chain, op, true)
}

fn validate_pointwise<S: Scalar>(
    chain: &Chain<S>,
    op: &UnaryOp<S>,
    bullet: bool,
) -> Result<ValidationReport<S>, OpError> {
    let n = chain.n_set();
    let (probes, certified) = match chain.elements() {
        Some(xs) => {
            if let Repr::Table(_) = op.repr {
                op.index_table(chain)?;
            }
            let probes =
                xs.iter().map(|x| Probe { at: x.clone(), value: op.apply(chain, x), kind: ProbeKind::Exact }).collect();
            (probes, true)
        }
        None => standard_probes(chain, op),
    };
    let method = match (chain.is_finite(), certified) {
        (true, _) => Method::Exhaustive,
        (false, true) => Method::Analytic,
        (false, false) => Method::Grid,
    };
    let count = probes.len();
    let (c1, c2, c3) = if bullet { (Clause::B1, Clause::B2, Clause::B3) } else { (Clause::C1, Clause::C2, Clause::C3) };
    for p in probes.iter().filter(|p| matches!(p.kind, ProbeKind::Exact)) {
        let x = &p.at;
        let contradictory = !min_of(x, &neg(chain, x)).is_zero();
        let ok = if bullet {
            max_of(&neg(chain, &min_of(x, &neg(chain, x))), &p.value).is_one()
        } else {
            !contradictory || p.value.is_zero()
        };
        if !ok {
            return Ok(ValidationReport::fail(c1, vec![x.clone()], method, count));
        }
    }
    for x in [S::zero(), S::one()] {
        let v = op.apply(chain, &x);
        let ok = if bullet { v.is_zero() } else { v.is_one() };
        if !ok {
            return Ok(ValidationReport::fail(c2, vec![x], method, count));
        }
    }
    if let Some((i, j)) = monotone_violation(&probes, &n, !bullet) {
        let (pi, pj) = (&probes[i], &probes[j]);
        let (x, y) = if bullet {
            let y = realize(chain, op, pj, &pi.value, true);
            let x = realize(chain, op, pi, &op.apply(chain, &y), false);
            (x, y)
        } else {
            let x = realize(chain, op, pi, &pj.value, true);
            let y = realize(chain, op, pj, &op.apply(chain, &x), false);
            (x, y)
        };
        return Ok(ValidationReport::fail(c3, vec![x, y], method, count));
    }
    Ok(ValidationReport::pass(method, count))
}

/// Decide `(○1)`–`(○3)` by checking all `x, y, z` on a finite chain.
pub fn validate_algebraic<S: Scalar>(chain: &Chain<S>, op: &ConsistencyOp<S>) -> Result<ValidationReport<S>, OpError> {
    op.check_host(chain)?;
    let f = chain.finite().ok_or(OpError::StandardChainUnsupported)?;
    let o = op.index_table(chain)?;
    let n = f.len();
    let top = f.top();
    let fail = |clause, idx: &[usize]| {
        Ok(ValidationReport::fail(clause, idx.iter().map(|&i| f.value(i)).collect(), Method::Exhaustive, n * n * n))
    };
    if let Some(x) = (0..n).find(|&x| x.min(f.neg(x)).min(o[x]) != 0) {
        return fail(Clause::Alg1, &[x]);
    }
    for x in [0, top] {
        if o[x] != top {
            return fail(Clause::Alg2, &[x]);
        }
    }
    for x in 0..n {
        let nnx = f.neg(f.neg(x));
        for y in 0..n {
            let lhs = nnx.min(f.r(x, y));
            let concl = f.r(o[x], o[y]);
            for z in 0..n {
                if lhs.max(z) == top && concl.max(z) != top {
                    return fail(Clause::Alg3, &[x, y, z]);
                }
            }
        }
    }
    Ok(ValidationReport::pass(Method::Exhaustive, n * n * n))
}

/// A point where `¬¬○x ≠ ○x`, if any. `None` means the translation
/// `○ ↦ ¬• ↦ ¬¬○` returns the operator unchanged at every checked point.
pub fn dual_roundtrip_witness<S: Scalar>(chain: &Chain<S>, op: &ConsistencyOp<S>) -> Option<S> {
    let points: Vec<S> = match chain.elements() {
        Some(xs) => xs.to_vec(),
        None => standard_probes(chain, op)
            .0
            .into_iter()
            .filter(|p| matches!(p.kind, ProbeKind::Exact))
            .map(|p| p.at)
            .collect(),
    };
    points.into_iter().find(|x| {
        let v = op.apply(chain, x);
        neg(chain, &neg(chain, &v)) != v
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{Component, Family};
    use crate::operators::{crisp_op, dual, max_op, min_op, piecewise_op, table_op, Interpolation, Piece};
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_frac(n, d)
    }

    fn two(family: Family) -> Chain<Q> {
        Chain::standard(
            "S",
            vec![Component::new(Family::Lukasiewicz, q(0, 1), q(1, 2)), Component::new(family, q(1, 2), q(1, 1))],
        )
        .unwrap()
    }

    #[test]
    fn unique_operator_on_l3() {
        let l3 = Chain::<Q>::lukasiewicz(3).unwrap();
        let good = table_op(&l3, "u", vec![q(1, 1), q(0, 1), q(1, 1)]).unwrap();
        assert!(validate_c(&l3, &good).unwrap().valid);
        assert!(validate_algebraic(&l3, &good).unwrap().valid);
        let bad = table_op(&l3, "b", vec![q(1, 1), q(1, 1), q(1, 1)]).unwrap();
        let r = validate_c(&l3, &bad).unwrap();
        let v = r.violation.clone().unwrap();
        assert_eq!(v.clause, Clause::C1);
        assert_eq!(v.witness, vec![q(1, 2)]);
        assert!(is_genuine(&l3, &bad, &v));
    }

    #[test]
    fn algebraic_second_clause() {
        let g3 = Chain::<Q>::godel(3).unwrap();
        let op = table_op(&g3, "z", vec![q(0, 1), q(0, 1), q(1, 1)]).unwrap();
        let r = validate_algebraic(&g3, &op).unwrap();
        let v = r.violation.unwrap();
        assert_eq!(v.clause, Clause::Alg2);
        assert_eq!(v.witness, vec![q(0, 1)]);
    }

    #[test]
    fn standard_extremal_ops_are_valid() {
        for fam in [Family::Lukasiewicz, Family::Godel, Family::Product] {
            let c = two(fam);
            for op in [min_op(&c), max_op(&c)] {
                let r = validate_c(&c, &op).unwrap();
                assert!(r.valid, "{fam:?} {}", op.name);
                assert_eq!(r.method, Method::Analytic);
            }
        }
        let sl = Chain::<Q>::standard_family(Family::Lukasiewicz);
        assert_eq!(min_op(&sl).repr, max_op(&sl).repr);
    }

    #[test]
    fn standard_c3_violation_is_realized() {
        let ll = two(Family::Lukasiewicz);
        let mut op = piecewise_op(&ll, &[(q(1, 2), q(1, 2)), (q(1, 1), q(1, 1))], Interpolation::Linear).unwrap();
        assert!(validate_c(&ll, &op).unwrap().valid);
        // Decreasing linear piece on [1/2, 1).
        op.0.repr = Repr::Piecewise {
            at_zero: q(1, 1),
            at_one: q(1, 1),
            pieces: vec![Piece {
                lo: q(1, 2),
                lo_closed: false,
                hi: q(1, 1),
                hi_closed: false,
                start: q(1, 1),
                end: q(1, 2),
            }],
        };
        let r = validate_c(&ll, &op).unwrap();
        let v = r.violation.unwrap();
        assert_eq!(v.clause, Clause::C3);
        assert!(is_genuine(&ll, &op, &v), "{:?}", v.witness);
    }

    #[test]
    fn standard_c1_violation() {
        let lp = two(Family::Product);
        let mut op = crisp_op(&lp, &q(3, 4), true).unwrap();
        op.0.repr = Repr::Piecewise {
            at_zero: q(1, 1),
            at_one: q(1, 1),
            pieces: vec![Piece::constant(q(1, 4), true, q(1, 1), false, q(1, 1))],
        };
        let v = validate_c(&lp, &op).unwrap().violation.unwrap();
        assert_eq!(v.clause, Clause::C1);
        assert!(is_genuine(&lp, &op, &v));
    }

    #[test]
    fn duals_validate() {
        let lg = two(Family::Godel);
        let b = dual(&lg, &max_op(&lg));
        assert_eq!(b.apply(&lg, &q(1, 4)), q(1, 1));
        assert_eq!(b.apply(&lg, &q(3, 4)), q(0, 1));
        let r = validate_bullet(&lg, &b).unwrap();
        assert!(r.valid);
        assert_eq!(r.method, Method::Analytic);
        let l3 = Chain::<Q>::lukasiewicz(3).unwrap();
        let good = table_op(&l3, "u", vec![q(1, 1), q(0, 1), q(1, 1)]).unwrap();
        assert!(validate_bullet(&l3, &dual(&l3, &good)).unwrap().valid);
    }

    #[test]
    fn roundtrip_checker() {
        let ll = two(Family::Lukasiewicz);
        let crisp = max_op(&ll);
        assert_eq!(dual_roundtrip_witness(&ll, &crisp), None);
        let ident = piecewise_op(&ll, &[(q(1, 2), q(1, 2)), (q(1, 1), q(1, 1))], Interpolation::Linear).unwrap();
        let w = dual_roundtrip_witness(&ll, &ident).unwrap();
        assert!(w >= q(1, 2) && w < q(1, 1));
    }
}
