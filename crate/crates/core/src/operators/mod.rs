//! Consistency (`○`) and inconsistency (`•`) operators attached to a chain.

mod enumerate;
mod validate;

use std::fmt;
use std::ops::Deref;

use thiserror::Error;

use crate::chain::{Chain, ChainKind, NSet};
use crate::scalar::{min_of, Scalar};

pub use enumerate::{count_ops, enumerate_ops, unique_op, MAX_ENUMERATION_SIZE};
pub use validate::{
    dual_roundtrip_witness, is_genuine, validate_algebraic, validate_bullet, validate_c, Clause, Method,
    ValidationReport, Violation, STANDARD_GRID,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum OpError {
    #[error("operator `{op}` is hosted on `{host}`, not on `{chain}`")]
    HostMismatch { op: String, host: String, chain: String },
    #[error("threshold {0} is outside N(A) ∪ {{1}}")]
    ThresholdOutsideN(String),
    #[error("breakpoint {0} is outside N(A) ∪ {{1}}")]
    BreakpointOutsideN(String),
    #[error("breakpoint values are not nondecreasing at {0}")]
    NotNondecreasing(String),
    #[error("breakpoints must be strictly increasing (at {0})")]
    UnorderedBreakpoints(String),
    #[error("value {0} is not an element of the chain")]
    OffGrid(String),
    #[error("enumeration is capped at {max} elements, chain has {size}")]
    TooLarge { size: usize, max: usize },
    #[error("algebraic conditions are only decided on finite chains; use the chain postulates")]
    StandardChainUnsupported,
    #[error("operation needs a finite chain")]
    NotFinite,
    #[error("expected {expected} values, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("no unique operator on `{chain}`: {count} candidates")]
    NotUnique { chain: String, count: String },
}

/// Which construction produced an operator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpKind<S> {
    Min,
    Max,
    Crisp { threshold: S, closed: bool },
    Piecewise,
    FromDelta,
    Dual,
    General,
}

impl<S: Scalar> fmt::Display for OpKind<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpKind::Min => f.write_str("min"),
            OpKind::Max => f.write_str("max"),
            OpKind::Crisp { threshold, closed: true } => write!(f, "crisp [{threshold},1]"),
            OpKind::Crisp { threshold, closed: false } => write!(f, "crisp ({threshold},1]"),
            OpKind::Piecewise => f.write_str("piecewise"),
            OpKind::FromDelta => f.write_str("from-delta"),
            OpKind::Dual => f.write_str("dual"),
            OpKind::General => f.write_str("general"),
        }
    }
}

/// A linear segment over an interval with optionally included endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece<S> {
    pub lo: S,
    pub lo_closed: bool,
    pub hi: S,
    pub hi_closed: bool,
    pub start: S,
    pub end: S,
}

impl<S: Scalar> Piece<S> {
    pub fn constant(lo: S, lo_closed: bool, hi: S, hi_closed: bool, value: S) -> Self {
        Piece { lo, lo_closed, hi, hi_closed, start: value.clone(), end: value }
    }

    pub fn contains(&self, x: &S) -> bool {
        let above = *x > self.lo || (self.lo_closed && *x == self.lo);
        let below = *x < self.hi || (self.hi_closed && *x == self.hi);
        above && below
    }

    /// The linear interpolant, also outside the interval.
    pub fn at(&self, x: &S) -> S {
        if self.hi == self.lo || self.start == self.end {
            return self.start.clone();
        }
        self.start.clone()
            + (x.clone() - self.lo.clone()) * (self.end.clone() - self.start.clone())
                / (self.hi.clone() - self.lo.clone())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Repr<S> {
    /// Values on the elements of a finite chain, ascending.
    Table(Vec<S>),
    /// Exact values at `0` and `1`, linear pieces inside, `0` elsewhere.
    Piecewise { at_zero: S, at_one: S, pieces: Vec<Piece<S>> },
    /// Pointwise negation of the inner representation.
    Negated(Box<Repr<S>>),
}

/// A unary operator on the carrier of one chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnaryOp<S> {
    pub name: String,
    pub host: String,
    pub kind: OpKind<S>,
    pub repr: Repr<S>,
}

impl<S: Scalar> UnaryOp<S> {
    pub fn apply(&self, chain: &Chain<S>, x: &S) -> S {
        eval_repr(&self.repr, chain, x)
    }

    pub fn check_host(&self, chain: &Chain<S>) -> Result<(), OpError> {
        if self.host != chain.name {
            return Err(OpError::HostMismatch {
                op: self.name.clone(),
                host: self.host.clone(),
                chain: chain.name.clone(),
            });
        }
        if let (Repr::Table(v), Some(n)) = (&self.repr, chain.size()) {
            if v.len() != n {
                return Err(OpError::SizeMismatch { expected: n, found: v.len() });
            }
        }
        Ok(())
    }

    /// Values as element indices on a finite chain.
    pub fn index_table(&self, chain: &Chain<S>) -> Result<Vec<usize>, OpError> {
        let f = chain.finite().ok_or(OpError::NotFinite)?;
        f.values()
            .iter()
            .map(|x| {
                let v = self.apply(chain, x);
                f.index_of(&v).ok_or_else(|| OpError::OffGrid(v.to_string()))
            })
            .collect()
    }

    /// Whether every value is `0` or `1`.
    pub fn is_crisp(&self) -> bool {
        fn crisp<S: Scalar>(r: &Repr<S>) -> bool {
            match r {
                Repr::Table(v) => v.iter().all(|x| x.is_zero() || x.is_one()),
                Repr::Piecewise { at_zero, at_one, pieces } => {
                    [at_zero, at_one].iter().all(|x| x.is_zero() || x.is_one())
                        && pieces.iter().all(|p| p.start == p.end && (p.start.is_zero() || p.start.is_one()))
                }
                Repr::Negated(inner) => crisp(inner),
            }
        }
        crisp(&self.repr)
    }

    /// Points where the representation may change its formula.
    pub fn breakpoints(&self) -> Vec<S> {
        fn collect<S: Scalar>(r: &Repr<S>, out: &mut Vec<S>) {
            match r {
                Repr::Table(_) => {}
                Repr::Piecewise { pieces, .. } => {
                    for p in pieces {
                        out.push(p.lo.clone());
                        out.push(p.hi.clone());
                    }
                }
                Repr::Negated(inner) => collect(inner, out),
            }
        }
        let mut out = Vec::new();
        collect(&self.repr, &mut out);
        out
    }

    fn describe_values(&self, chain: &Chain<S>) -> String {
        match chain.elements() {
            Some(xs) => {
                let vals: Vec<String> = xs.iter().map(|x| self.apply(chain, x).to_string()).collect();
                format!("({})", vals.join(", "))
            }
            None => self.kind.to_string(),
        }
    }
}

fn eval_repr<S: Scalar>(repr: &Repr<S>, chain: &Chain<S>, x: &S) -> S {
    match repr {
        Repr::Table(values) => {
            let i = chain
                .finite()
                .and_then(|f| f.index_of(x))
                .expect("table operators are applied to elements of their chain");
            values[i].clone()
        }
        Repr::Piecewise { at_zero, at_one, pieces } => {
            if x.is_zero() {
                at_zero.clone()
            } else if x.is_one() {
                at_one.clone()
            } else {
                pieces.iter().find(|p| p.contains(x)).map(|p| p.at(x)).unwrap_or_else(S::zero)
            }
        }
        Repr::Negated(inner) => {
            chain.negation(&eval_repr(inner, chain, x)).expect("operator values lie in the carrier")
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyOp<S>(pub UnaryOp<S>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InconsistencyOp<S>(pub UnaryOp<S>);

impl<S> Deref for ConsistencyOp<S> {
    type Target = UnaryOp<S>;
    fn deref(&self) -> &UnaryOp<S> {
        &self.0
    }
}

impl<S> Deref for InconsistencyOp<S> {
    type Target = UnaryOp<S>;
    fn deref(&self) -> &UnaryOp<S> {
        &self.0
    }
}

impl<S: Scalar> ConsistencyOp<S> {
    pub fn describe(&self, chain: &Chain<S>) -> String {
        format!("○ `{}` on {} [{}]: {}", self.name, self.host, self.kind, self.describe_values(chain))
    }
}

impl<S: Scalar> InconsistencyOp<S> {
    pub fn describe(&self, chain: &Chain<S>) -> String {
        format!("• `{}` on {} [{}]: {}", self.name, self.host, self.kind, self.describe_values(chain))
    }
}

fn make<S: Scalar>(chain: &Chain<S>, name: &str, kind: OpKind<S>, repr: Repr<S>) -> ConsistencyOp<S> {
    ConsistencyOp(UnaryOp { name: name.to_string(), host: chain.name.clone(), kind, repr })
}

/// Tabulate `f` on a finite chain, or wrap the given piecewise form.
fn build<S: Scalar>(chain: &Chain<S>, name: &str, kind: OpKind<S>, pieces: Vec<Piece<S>>) -> ConsistencyOp<S> {
    let piecewise = Repr::Piecewise { at_zero: S::one(), at_one: S::one(), pieces };
    let repr = match chain.elements() {
        Some(xs) => Repr::Table(xs.iter().map(|x| eval_repr(&piecewise, chain, x)).collect()),
        None => piecewise,
    };
    make(chain, name, kind, repr)
}

/// `○(x) = 1` iff `x ∈ {0,1}`.
pub fn min_op<S: Scalar>(chain: &Chain<S>) -> ConsistencyOp<S> {
    build(chain, "min", OpKind::Min, vec![])
}

/// `○(x) = 1` iff `x ∈ {0,1} ∪ N(A)`.
pub fn max_op<S: Scalar>(chain: &Chain<S>) -> ConsistencyOp<S> {
    let pieces = match chain.n_set() {
        NSet::Interval { a, closed } => vec![Piece::constant(a, closed, S::one(), false, S::one())],
        NSet::Finite(xs) => xs.into_iter().map(|x| Piece::constant(x.clone(), true, x, true, S::one())).collect(),
        NSet::Empty => vec![],
    };
    build(chain, "max", OpKind::Max, pieces)
}

/// `○(x) = 1` on `{0} ∪ [t,1]` (closed) or `{0} ∪ (t,1]` (open), else `0`.
pub fn crisp_op<S: Scalar>(chain: &Chain<S>, threshold: &S, closed: bool) -> Result<ConsistencyOp<S>, OpError> {
    let n = chain.n_set();
    let lower_open_end = matches!(n.lower_end(), Some((a, false)) if a == *threshold);
    let allowed = threshold.is_one() || n.contains(threshold) || (!closed && lower_open_end);
    if !allowed || !chain.contains(threshold) {
        return Err(OpError::ThresholdOutsideN(threshold.to_string()));
    }
    let pieces = if threshold.is_one() {
        vec![]
    } else {
        vec![Piece::constant(threshold.clone(), closed, S::one(), false, S::one())]
    };
    let kind = OpKind::Crisp { threshold: threshold.clone(), closed };
    let t = threshold.to_string();
    let name = if closed { format!("crisp:{t}") } else { format!("crisp:{t}:open") };
    Ok(build(chain, &name, kind, pieces))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Interpolation {
    Step,
    Linear,
}

/// `○` given by breakpoints `(x, ○(x))` on `N(A) ∪ {1}`: `0` before the
/// first breakpoint, interpolated between breakpoints, constant after the
/// last one; `○(0) = ○(1) = 1`.
pub fn piecewise_op<S: Scalar>(
    chain: &Chain<S>,
    breakpoints: &[(S, S)],
    interpolation: Interpolation,
) -> Result<ConsistencyOp<S>, OpError> {
    let n = chain.n_set();
    for (i, (x, v)) in breakpoints.iter().enumerate() {
        if !(x.is_one() || n.contains(x)) {
            return Err(OpError::BreakpointOutsideN(x.to_string()));
        }
        if !v.is_unit_interval() || !chain.contains(v) {
            return Err(OpError::OffGrid(v.to_string()));
        }
        if i > 0 {
            let (px, pv) = &breakpoints[i - 1];
            if px >= x {
                return Err(OpError::UnorderedBreakpoints(x.to_string()));
            }
            if pv > v {
                return Err(OpError::NotNondecreasing(x.to_string()));
            }
        }
    }
    if breakpoints.is_empty() {
        let mut op = min_op(chain);
        op.0.kind = OpKind::Piecewise;
        op.0.name = "piecewise".into();
        return Ok(op);
    }
    let mut pieces = Vec::new();
    for w in breakpoints.windows(2) {
        let ((x0, v0), (x1, v1)) = (&w[0], &w[1]);
        let end = match interpolation {
            Interpolation::Linear => v1.clone(),
            Interpolation::Step => v0.clone(),
        };
        pieces.push(Piece {
            lo: x0.clone(),
            lo_closed: true,
            hi: x1.clone(),
            hi_closed: false,
            start: v0.clone(),
            end,
        });
    }
    let (xl, vl) = breakpoints.last().unwrap();
    if !xl.is_one() {
        pieces.push(Piece::constant(xl.clone(), true, S::one(), false, vl.clone()));
    }
    let op = build(chain, "piecewise", OpKind::Piecewise, pieces);
    if let Repr::Table(values) = &op.repr {
        if let Some(v) = values.iter().find(|v| !chain.contains(v)) {
            return Err(OpError::OffGrid(v.to_string()));
        }
    }
    Ok(op)
}

/// An arbitrary map on a finite chain, given by its values.
pub fn table_op<S: Scalar>(chain: &Chain<S>, name: &str, values: Vec<S>) -> Result<ConsistencyOp<S>, OpError> {
    let n = chain.size().ok_or(OpError::NotFinite)?;
    if values.len() != n {
        return Err(OpError::SizeMismatch { expected: n, found: values.len() });
    }
    if let Some(v) = values.iter().find(|v| !chain.contains(v)) {
        return Err(OpError::OffGrid(v.to_string()));
    }
    Ok(make(chain, name, OpKind::General, Repr::Table(values)))
}

pub fn table_op_indices<S: Scalar>(chain: &Chain<S>, name: &str, idx: &[usize]) -> Result<ConsistencyOp<S>, OpError> {
    let f = chain.finite().ok_or(OpError::NotFinite)?;
    if let Some(&i) = idx.iter().find(|&&i| i >= f.len()) {
        return Err(OpError::OffGrid(format!("index {i}")));
    }
    table_op(chain, name, idx.iter().map(|&i| f.value(i)).collect())
}

/// `○φ := Δ(φ ∨ ¬φ)`.
pub fn op_from_delta<S: Scalar>(chain: &Chain<S>) -> ConsistencyOp<S> {
    let mut op = match chain.elements() {
        Some(xs) => {
            let values = xs
                .iter()
                .map(|x| {
                    let em = chain.join(x, &chain.negation(x).unwrap()).unwrap();
                    chain.delta(&em).unwrap()
                })
                .collect();
            make(chain, "from-delta", OpKind::FromDelta, Repr::Table(values))
        }
        // On a standard chain x ∨ ¬x = 1 only at 0 and 1.
        None => min_op(chain),
    };
    op.0.kind = OpKind::FromDelta;
    op.0.name = "from-delta".into();
    op
}

/// `Δx := x ∧ ○x`.
pub fn delta_from_op<S: Scalar>(chain: &Chain<S>, op: &ConsistencyOp<S>, x: &S) -> S {
    min_of(&op.apply(chain, x), x)
}

/// `•x := ¬○x`.
pub fn dual<S: Scalar>(chain: &Chain<S>, op: &ConsistencyOp<S>) -> InconsistencyOp<S> {
    let repr = match (&op.repr, &chain.kind) {
        (Repr::Table(values), ChainKind::Finite(_)) => {
            Repr::Table(values.iter().map(|v| chain.negation(v).expect("value in carrier")).collect())
        }
        (other, _) => Repr::Negated(Box::new(other.clone())),
    };
    InconsistencyOp(UnaryOp { name: format!("dual({})", op.name), host: op.host.clone(), kind: OpKind::Dual, repr })
}

/// `○x := ¬•x`.
pub fn dual_of_bullet<S: Scalar>(chain: &Chain<S>, op: &InconsistencyOp<S>) -> ConsistencyOp<S> {
    let repr = match (&op.repr, &chain.kind) {
        (Repr::Table(values), ChainKind::Finite(_)) => {
            Repr::Table(values.iter().map(|v| chain.negation(v).expect("value in carrier")).collect())
        }
        (other, _) => Repr::Negated(Box::new(other.clone())),
    };
    ConsistencyOp(UnaryOp { name: format!("dual({})", op.name), host: op.host.clone(), kind: OpKind::Dual, repr })
}

/// A `•` given directly by its values on a finite chain.
pub fn bullet_table<S: Scalar>(chain: &Chain<S>, name: &str, values: Vec<S>) -> Result<InconsistencyOp<S>, OpError> {
    table_op(chain, name, values).map(|op| InconsistencyOp(op.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{Component, Family};
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
    fn extremal_ops_on_lg() {
        let lg = two(Family::Godel);
        let mx = max_op(&lg);
        let mn = min_op(&lg);
        for (x, hi, lo) in [((0, 1), 1, 1), ((1, 4), 0, 0), ((1, 2), 1, 0), ((3, 4), 1, 0), ((1, 1), 1, 1)] {
            let x = q(x.0, x.1);
            assert_eq!(mx.apply(&lg, &x), q(hi, 1), "max at {x}");
            assert_eq!(mn.apply(&lg, &x), q(lo, 1), "min at {x}");
        }
    }

    #[test]
    fn crisp_threshold_in_n() {
        let lp = two(Family::Product);
        let op = crisp_op(&lp, &q(3, 4), true).unwrap();
        assert_eq!(op.apply(&lp, &q(5, 6)), q(1, 1));
        assert_eq!(op.apply(&lp, &q(3, 4)), q(1, 1));
        assert_eq!(op.apply(&lp, &q(2, 3)), q(0, 1));
        assert!(matches!(crisp_op(&lp, &q(1, 4), true), Err(OpError::ThresholdOutsideN(_))));
        let lg = two(Family::Godel);
        assert_eq!(crisp_op(&lg, &q(1, 2), true).unwrap().repr, max_op(&lg).repr);
    }

    #[test]
    fn identity_on_upper_component() {
        let ll = two(Family::Lukasiewicz);
        let op = piecewise_op(&ll, &[(q(1, 2), q(1, 2)), (q(1, 1), q(1, 1))], Interpolation::Linear).unwrap();
        for x in [q(1, 2), q(3, 5), q(7, 8)] {
            assert_eq!(op.apply(&ll, &x), x);
        }
        assert_eq!(op.apply(&ll, &q(1, 3)), q(0, 1));
        assert_eq!(op.apply(&ll, &q(0, 1)), q(1, 1));
        let step = piecewise_op(&ll, &[(q(1, 2), q(1, 2)), (q(3, 4), q(3, 4))], Interpolation::Step).unwrap();
        assert_eq!(step.apply(&ll, &q(2, 3)), q(1, 2));
        assert_eq!(step.apply(&ll, &q(7, 8)), q(3, 4));
    }

    #[test]
    fn piecewise_errors() {
        let ll = two(Family::Lukasiewicz);
        let down = [(q(1, 2), q(3, 4)), (q(3, 4), q(1, 2))];
        assert!(matches!(piecewise_op(&ll, &down, Interpolation::Linear), Err(OpError::NotNondecreasing(_))));
        let outside = [(q(1, 4), q(1, 2))];
        assert!(matches!(piecewise_op(&ll, &outside, Interpolation::Linear), Err(OpError::BreakpointOutsideN(_))));
        let empty = piecewise_op(&ll, &[], Interpolation::Step).unwrap();
        assert_eq!(empty.repr, min_op(&ll).repr);
    }

    #[test]
    fn dual_on_three_element_chain() {
        let l3 = Chain::<Q>::lukasiewicz(3).unwrap();
        let op = table_op(&l3, "u", vec![q(1, 1), q(0, 1), q(1, 1)]).unwrap();
        let b = dual(&l3, &op);
        assert_eq!(b.repr, Repr::Table(vec![q(0, 1), q(1, 1), q(0, 1)]));
    }

    #[test]
    fn delta_translations() {
        let l3 = Chain::<Q>::lukasiewicz(3).unwrap();
        assert_eq!(op_from_delta(&l3).repr, min_op(&l3).repr);
        let mn = min_op(&l3);
        assert_eq!(delta_from_op(&l3, &mn, &q(1, 1)), q(1, 1));
        assert_eq!(delta_from_op(&l3, &mn, &q(1, 2)), q(0, 1));
    }

    #[test]
    fn host_is_checked() {
        let l3 = Chain::<Q>::lukasiewicz(3).unwrap();
        let g3 = Chain::<Q>::godel(3).unwrap();
        assert!(matches!(min_op(&l3).check_host(&g3), Err(OpError::HostMismatch { .. })));
    }
}
