use super::{EvalError, Structure};
use crate::chain::{Chain, FiniteChain};
use crate::formula::Formula;
use crate::operators::UnaryOp;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Instr {
    Var(usize),
    Zero,
    One,
    Not,
    Circ,
    Bullet,
    Delta,
    And,
    Fuse,
    Or,
    Imp,
    Iff,
}

/// A formula flattened to postfix order over a fixed variable list.
#[derive(Clone, Debug)]
pub struct Program {
    code: Vec<Instr>,
    uses_circ: bool,
    uses_bullet: bool,
}

pub fn compile(f: &Formula, vars: &[String]) -> Result<Program, EvalError> {
    fn go(f: &Formula, vars: &[String], out: &mut Vec<Instr>) -> Result<(), EvalError> {
        use Formula::*;
        for c in f.children() {
            go(c, vars, out)?;
        }
        out.push(match f {
            Var(v) => {
                Instr::Var(vars.iter().position(|x| x == v).ok_or_else(|| EvalError::UnboundVariable(v.clone()))?)
            }
            Zero => Instr::Zero,
            One => Instr::One,
            Not(_) => Instr::Not,
            Circ(_) => Instr::Circ,
            Bullet(_) => Instr::Bullet,
            Delta(_) => Instr::Delta,
            And(..) => Instr::And,
            Fuse(..) => Instr::Fuse,
            Or(..) => Instr::Or,
            Imp(..) => Instr::Imp,
            Iff(..) => Instr::Iff,
        });
        Ok(())
    }
    let mut code = Vec::new();
    go(f, vars, &mut code)?;
    Ok(Program { code, uses_circ: f.uses_circ(), uses_bullet: f.uses_bullet() })
}

/// Operations needed to run a [`Program`].
pub trait Algebra: Sync {
    type Elem: Clone + Ord + Send + Sync + std::fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn tnorm(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn residuum(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn circ(&self, x: &Self::Elem) -> Self::Elem;
    fn bullet(&self, x: &Self::Elem) -> Self::Elem;
    fn has_circ(&self) -> bool;
    fn has_bullet(&self) -> bool;

    fn check(&self, p: &Program) -> Result<(), EvalError> {
        if p.uses_circ && !self.has_circ() {
            return Err(EvalError::OperatorNotBound("○"));
        }
        if p.uses_bullet && !self.has_bullet() {
            return Err(EvalError::OperatorNotBound("•"));
        }
        Ok(())
    }

    fn run(&self, p: &Program, env: &[Self::Elem]) -> Self::Elem {
        let mut stack: Vec<Self::Elem> = Vec::with_capacity(8);
        for ins in &p.code {
            let v = match ins {
                Instr::Var(i) => env[*i].clone(),
                Instr::Zero => self.zero(),
                Instr::One => self.one(),
                Instr::Not | Instr::Circ | Instr::Bullet | Instr::Delta => {
                    let a = stack.pop().unwrap();
                    match ins {
                        Instr::Not => self.residuum(&a, &self.zero()),
                        Instr::Circ => self.circ(&a),
                        Instr::Bullet => self.bullet(&a),
                        _ => {
                            if a == self.one() {
                                a
                            } else {
                                self.zero()
                            }
                        }
                    }
                }
                _ => {
                    let b = stack.pop().unwrap();
                    let a = stack.pop().unwrap();
                    match ins {
                        Instr::And => a.min(b),
                        Instr::Or => a.max(b),
                        Instr::Fuse => self.tnorm(&a, &b),
                        Instr::Imp => self.residuum(&a, &b),
                        _ => self.residuum(&a, &b).min(self.residuum(&b, &a)),
                    }
                }
            };
            stack.push(v);
        }
        stack.pop().expect("non-empty program")
    }
}

/// A finite chain with operators tabulated over element indices.
pub struct FiniteAlgebra<'a, S> {
    pub chain: &'a FiniteChain<S>,
    circ: Option<Vec<usize>>,
    bullet: Option<Vec<usize>>,
}

impl<'a, S: Scalar> FiniteAlgebra<'a, S> {
    pub fn new(s: &Structure<'a, S>) -> Result<Self, crate::operators::OpError> {
        let chain = s.chain.finite().ok_or(crate::operators::OpError::NotFinite)?;
        let circ = s.circ.map(|op| op.index_table(s.chain)).transpose()?;
        let bullet = s.bullet.map(|op| op.index_table(s.chain)).transpose()?;
        Ok(FiniteAlgebra { chain, circ, bullet })
    }
}

impl<S: Scalar> Algebra for FiniteAlgebra<'_, S> {
    type Elem = usize;

    fn zero(&self) -> usize {
        0
    }
    fn one(&self) -> usize {
        self.chain.top()
    }
    fn tnorm(&self, x: &usize, y: &usize) -> usize {
        self.chain.t(*x, *y)
    }
    fn residuum(&self, x: &usize, y: &usize) -> usize {
        self.chain.r(*x, *y)
    }
    fn circ(&self, x: &usize) -> usize {
        self.circ.as_ref().expect("checked before running")[*x]
    }
    fn bullet(&self, x: &usize) -> usize {
        self.bullet.as_ref().expect("checked before running")[*x]
    }
    fn has_circ(&self) -> bool {
        self.circ.is_some()
    }
    fn has_bullet(&self) -> bool {
        self.bullet.is_some()
    }
}

/// Any chain, evaluated directly on rational values.
pub struct StandardAlgebra<'a, S> {
    pub chain: &'a Chain<S>,
    circ: Option<&'a UnaryOp<S>>,
    bullet: Option<&'a UnaryOp<S>>,
}

impl<'a, S: Scalar> StandardAlgebra<'a, S> {
    pub fn new(s: &Structure<'a, S>) -> Self {
        StandardAlgebra { chain: s.chain, circ: s.circ.map(|op| &op.0), bullet: s.bullet.map(|op| &op.0) }
    }
}

impl<S: Scalar> Algebra for StandardAlgebra<'_, S> {
    type Elem = S;

    fn zero(&self) -> S {
        S::zero()
    }
    fn one(&self) -> S {
        S::one()
    }
    fn tnorm(&self, x: &S, y: &S) -> S {
        self.chain.tnorm(x, y).expect("values in carrier")
    }
    fn residuum(&self, x: &S, y: &S) -> S {
        self.chain.residuum(x, y).expect("values in carrier")
    }
    fn circ(&self, x: &S) -> S {
        self.circ.expect("checked before running").apply(self.chain, x)
    }
    fn bullet(&self, x: &S) -> S {
        self.bullet.expect("checked before running").apply(self.chain, x)
    }
    fn has_circ(&self) -> bool {
        self.circ.is_some()
    }
    fn has_bullet(&self) -> bool {
        self.bullet.is_some()
    }
}
