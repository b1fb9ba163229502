//! Evaluation of formulas on chains with attached operators, consequence
//! checking by countermodel search, and semantic meta-checks.

mod algebra;
mod consequence;
mod meta;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::chain::{Chain, ChainError};
use crate::formula::Formula;
use crate::operators::{ConsistencyOp, InconsistencyOp, OpError};
use crate::scalar::{max_of, min_of, Scalar};

pub use algebra::{compile, Algebra, FiniteAlgebra, Program, StandardAlgebra};
pub use consequence::{
    consequence, degree_consequence, truth_consequence, ConsequenceResult, Countermodel, Mode, SearchConfig,
    SearchMethod, Verdict,
};
pub use meta::{
    bridge_check, check_dat_axiom, check_lfi, check_propagation, classical_taut, local_deduction, pdat_formula,
    pdat_search, Connective, DatOutcome, LfiClause, LfiReport, LocalDeduction, PdatOutcome, PowerKind,
    PropagationOutcome,
};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("variable `{0}` has no value")]
    UnboundVariable(String),
    #[error("formula uses {0} but no such operator is attached")]
    OperatorNotBound(&'static str),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Op(#[from] OpError),
    #[error("{count} variables exceed the limit of {max}")]
    TooManyVariables { count: usize, max: usize },
    #[error("formula must use only classical connectives")]
    NotClassical,
    #[error("(○EM) fails at {witness}; PDAT search needs it")]
    DatAxiomFails { witness: String },
    #[error("operation needs a finite chain")]
    NotFinite,
    #[error("no consistency operator attached")]
    NoOperator,
}

/// A chain together with the operators that interpret `○` and `•`.
#[derive(Debug)]
pub struct Structure<'a, S> {
    pub chain: &'a Chain<S>,
    pub circ: Option<&'a ConsistencyOp<S>>,
    pub bullet: Option<&'a InconsistencyOp<S>>,
}

impl<S> Clone for Structure<'_, S> {
    fn clone(&self) -> Self {
        *self
    }
}

impl<S> Copy for Structure<'_, S> {}

impl<'a, S: Scalar> Structure<'a, S> {
    pub fn new(chain: &'a Chain<S>) -> Self {
        Structure { chain, circ: None, bullet: None }
    }

    pub fn with_circ(mut self, op: &'a ConsistencyOp<S>) -> Self {
        self.circ = Some(op);
        self
    }

    pub fn with_bullet(mut self, op: &'a InconsistencyOp<S>) -> Self {
        self.bullet = Some(op);
        self
    }

    pub fn label(&self) -> String {
        match self.circ {
            Some(op) => format!("{}+{}", self.chain.name, op.name),
            None => self.chain.name.clone(),
        }
    }
}

/// An assignment of chain values to variables.
#[derive(Clone, Debug)]
pub struct Evaluation<'a, S> {
    pub structure: Structure<'a, S>,
    pub assignment: BTreeMap<String, S>,
}

impl<'a, S: Scalar> Evaluation<'a, S> {
    pub fn new(structure: Structure<'a, S>) -> Self {
        Evaluation { structure, assignment: BTreeMap::new() }
    }

    pub fn set(mut self, var: &str, value: S) -> Self {
        self.assignment.insert(var.to_string(), value);
        self
    }

    /// Value of `f` by direct recursion over the tree.
    pub fn evaluate(&self, f: &Formula) -> Result<S, EvalError> {
        use Formula::*;
        let c = self.structure.chain;
        let ev = |g: &Formula| self.evaluate(g);
        Ok(match f {
            Var(v) => {
                let x = self.assignment.get(v).cloned().ok_or_else(|| EvalError::UnboundVariable(v.clone()))?;
                if !c.contains(&x) {
                    return Err(ChainError::OutOfCarrier(x.to_string()).into());
                }
                x
            }
            Zero => S::zero(),
            One => S::one(),
            Not(a) => c.negation(&ev(a)?)?,
            Circ(a) => {
                let op = self.structure.circ.ok_or(EvalError::OperatorNotBound("○"))?;
                op.apply(c, &ev(a)?)
            }
            Bullet(a) => {
                let op = self.structure.bullet.ok_or(EvalError::OperatorNotBound("•"))?;
                op.apply(c, &ev(a)?)
            }
            Delta(a) => c.delta(&ev(a)?)?,
            And(a, b) => min_of(&ev(a)?, &ev(b)?),
            Fuse(a, b) => c.tnorm(&ev(a)?, &ev(b)?)?,
            Or(a, b) => max_of(&ev(a)?, &ev(b)?),
            Imp(a, b) => c.residuum(&ev(a)?, &ev(b)?)?,
            Iff(a, b) => {
                let (x, y) = (ev(a)?, ev(b)?);
                min_of(&c.residuum(&x, &y)?, &c.residuum(&y, &x)?)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::{Component, Family};
    use crate::formula::parse;
    use crate::operators::{crisp_op, piecewise_op, Interpolation};
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
    fn product_example_value() {
        let lp = two(Family::Product);
        let op = crisp_op(&lp, &q(3, 4), true).unwrap();
        let s = Structure::new(&lp).with_circ(&op);
        let f = parse("(O p /\\ O q) -> O (p & q)").unwrap();
        let v = Evaluation::new(s).set("p", q(5, 6)).set("q", q(3, 4)).evaluate(&f).unwrap();
        assert_eq!(v, q(0, 1));
    }

    #[test]
    fn squared_excluded_middle_value() {
        let ll = two(Family::Lukasiewicz);
        let op = piecewise_op(&ll, &[(q(1, 2), q(1, 2)), (q(1, 1), q(1, 1))], Interpolation::Linear).unwrap();
        let s = Structure::new(&ll).with_circ(&op);
        let f = parse("O p -> (p \\/ ~p) & (p \\/ ~p)").unwrap();
        let v = Evaluation::new(s).set("p", q(3, 5)).evaluate(&f).unwrap();
        assert_eq!(v, q(9, 10));
        assert_eq!(Evaluation::new(s).evaluate(&Formula::One).unwrap(), q(1, 1));
    }

    #[test]
    fn errors() {
        let l3 = Chain::<Q>::lukasiewicz(3).unwrap();
        let s = Structure::new(&l3);
        let e = Evaluation::new(s);
        assert_eq!(e.evaluate(&parse("p").unwrap()), Err(EvalError::UnboundVariable("p".into())));
        let e = e.set("p", q(1, 2));
        assert_eq!(e.evaluate(&parse("O p").unwrap()), Err(EvalError::OperatorNotBound("○")));
        assert_eq!(e.evaluate(&parse("#p").unwrap()), Err(EvalError::OperatorNotBound("•")));
        assert_eq!(e.evaluate(&parse("D p").unwrap()), Ok(q(0, 1)));
    }
}
