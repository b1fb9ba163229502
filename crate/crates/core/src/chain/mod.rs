//! MTL-chains: finite chains given by tables or families, and standard
//! chains on `[0,1]` built as ordinal sums of Łukasiewicz, Gödel and product
//! components.

mod finite;
mod quotient;
mod standard;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::scalar::{max_of, min_of, Scalar};

pub use finite::FiniteChain;
pub use quotient::{Filter, Quotient};
pub use standard::{Component, StandardChain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Lukasiewicz,
    Godel,
    Product,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::Lukasiewicz => "lukasiewicz",
            Family::Godel => "godel",
            Family::Product => "product",
        }
    }
}

impl std::str::FromStr for Family {
    type Err = ChainError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "lukasiewicz" | "luk" | "l" | "ł" => Ok(Family::Lukasiewicz),
            "godel" | "goedel" | "g" => Ok(Family::Godel),
            "product" | "pi" | "p" | "π" => Ok(Family::Product),
            other => Err(ChainError::UnknownFamily(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Law {
    Commutativity,
    Associativity,
    Unit,
    Monotonicity,
    Adjointness,
    Prelinearity,
}

impl fmt::Display for Law {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Law::Commutativity => "commutativity",
            Law::Associativity => "associativity",
            Law::Unit => "unit",
            Law::Monotonicity => "monotonicity",
            Law::Adjointness => "adjointness",
            Law::Prelinearity => "prelinearity",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("table is not a t-norm: {law} fails at ({})", .witness.join(", "))]
    TableNotTnorm { law: Law, witness: Vec<String> },
    #[error("negation is not order-reversing with n(0)=1, n(1)=0 (at {at})")]
    NegationNotDecreasing { at: String },
    #[error("size mismatch: expected {expected}, found {found}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("value {0} is outside the carrier")]
    OutOfCarrier(String),
    #[error("components do not tile [0,1]: {0}")]
    GapOrOverlap(String),
    #[error("endpoint `{0}` is not a rational p/q")]
    NonRationalEndpoint(String),
    #[error("not a filter: {0}")]
    NotAFilter(String),
    #[error("unknown t-norm family `{0}`")]
    UnknownFamily(String),
    #[error("finite chains need at least 2 elements (got {0})")]
    TooSmall(usize),
    #[error("{0} components have no finite version")]
    NoFiniteFamily(&'static str),
    #[error("operation needs a finite chain")]
    NotFinite,
}

#[derive(Clone, Debug)]
pub enum ChainKind<S> {
    Finite(FiniteChain<S>),
    Standard(StandardChain<S>),
}

/// The non-unit elements with zero negation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NSet<S> {
    /// Explicit members of a finite chain, ascending.
    Finite(Vec<S>),
    Empty,
    /// `[a,1)` when `closed`, otherwise `(a,1)`.
    Interval {
        a: S,
        closed: bool,
    },
}

impl<S: Scalar> NSet<S> {
    pub fn contains(&self, x: &S) -> bool {
        match self {
            NSet::Finite(xs) => xs.contains(x),
            NSet::Empty => false,
            NSet::Interval { a, closed } => *x < S::one() && (x > a || (*closed && x == a)),
        }
    }

    pub fn is_empty(&self) -> bool {
        match self {
            NSet::Finite(xs) => xs.is_empty(),
            NSet::Empty => true,
            NSet::Interval { .. } => false,
        }
    }

    /// Greatest lower bound and whether it is attained.
    pub fn lower_end(&self) -> Option<(S, bool)> {
        match self {
            NSet::Finite(xs) => xs.first().map(|x| (x.clone(), true)),
            NSet::Empty => None,
            NSet::Interval { a, closed } => Some((a.clone(), *closed)),
        }
    }
}

impl<S: Scalar> fmt::Display for NSet<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NSet::Finite(xs) => {
                let items: Vec<String> = xs.iter().map(|x| x.to_string()).collect();
                write!(f, "{{{}}}", items.join(", "))
            }
            NSet::Empty => f.write_str("{}"),
            NSet::Interval { a, closed: true } => write!(f, "[{a},1)"),
            NSet::Interval { a, closed: false } => write!(f, "({a},1)"),
        }
    }
}

/// A linearly ordered MTL-algebra with values in `[0,1] ∩ Q`.
#[derive(Clone, Debug)]
pub struct Chain<S> {
    pub name: String,
    pub kind: ChainKind<S>,
}

impl<S: Scalar> Chain<S> {
    pub fn lukasiewicz(n: usize) -> Result<Self, ChainError> {
        FiniteChain::family(Family::Lukasiewicz, n).map(|c| c.named(format!("L{n}")))
    }

    pub fn godel(n: usize) -> Result<Self, ChainError> {
        FiniteChain::family(Family::Godel, n).map(|c| c.named(format!("G{n}")))
    }

    /// Weak nilpotent minimum chain determined by the negation `n`, given as
    /// its values on the grid `{i/(len-1)}`.
    pub fn wnm(name: &str, negation: &[S]) -> Result<Self, ChainError> {
        FiniteChain::wnm(negation).map(|c| c.named(name))
    }

    pub fn from_table(name: &str, table: &[Vec<S>]) -> Result<Self, ChainError> {
        FiniteChain::from_table(table).map(|c| c.named(name))
    }

    /// Ordinal sum of finite components; `(family, size)` pairs, adjacent
    /// components sharing their endpoint.
    pub fn finite_ordinal_sum(name: &str, parts: &[(Family, usize)]) -> Result<Self, ChainError> {
        FiniteChain::ordinal_sum(parts).map(|c| c.named(name))
    }

    pub fn standard(name: &str, components: Vec<Component<S>>) -> Result<Self, ChainError> {
        Ok(Chain { name: name.to_string(), kind: ChainKind::Standard(StandardChain::new(components)?) })
    }

    pub fn standard_family(family: Family) -> Self {
        let name = match family {
            Family::Lukasiewicz => "[0,1]_L",
            Family::Godel => "[0,1]_G",
            Family::Product => "[0,1]_P",
        };
        Self::standard(name, vec![Component::new(family, S::zero(), S::one())]).expect("single component tiles [0,1]")
    }

    pub fn is_finite(&self) -> bool {
        matches!(self.kind, ChainKind::Finite(_))
    }

    pub fn finite(&self) -> Option<&FiniteChain<S>> {
        match &self.kind {
            ChainKind::Finite(f) => Some(f),
            ChainKind::Standard(_) => None,
        }
    }

    pub fn standard_parts(&self) -> Option<&StandardChain<S>> {
        match &self.kind {
            ChainKind::Standard(s) => Some(s),
            ChainKind::Finite(_) => None,
        }
    }

    pub fn size(&self) -> Option<usize> {
        self.finite().map(|f| f.len())
    }

    /// Elements of a finite chain, ascending.
    pub fn elements(&self) -> Option<&[S]> {
        self.finite().map(|f| f.values())
    }

    pub fn contains(&self, x: &S) -> bool {
        match &self.kind {
            ChainKind::Finite(f) => f.index_of(x).is_some(),
            ChainKind::Standard(_) => x.is_unit_interval(),
        }
    }

    fn check(&self, x: &S) -> Result<(), ChainError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(ChainError::OutOfCarrier(x.to_string()))
        }
    }

    pub fn tnorm(&self, x: &S, y: &S) -> Result<S, ChainError> {
        self.check(x)?;
        self.check(y)?;
        Ok(match &self.kind {
            ChainKind::Finite(f) => f.value(f.t(f.index_of(x).unwrap(), f.index_of(y).unwrap())),
            ChainKind::Standard(s) => s.tnorm(x, y),
        })
    }

    pub fn residuum(&self, x: &S, y: &S) -> Result<S, ChainError> {
        self.check(x)?;
        self.check(y)?;
        Ok(match &self.kind {
            ChainKind::Finite(f) => f.value(f.r(f.index_of(x).unwrap(), f.index_of(y).unwrap())),
            ChainKind::Standard(s) => s.residuum(x, y),
        })
    }

    pub fn meet(&self, x: &S, y: &S) -> Result<S, ChainError> {
        self.check(x)?;
        self.check(y)?;
        Ok(min_of(x, y))
    }

    pub fn join(&self, x: &S, y: &S) -> Result<S, ChainError> {
        self.check(x)?;
        self.check(y)?;
        Ok(max_of(x, y))
    }

    pub fn negation(&self, x: &S) -> Result<S, ChainError> {
        self.residuum(x, &S::zero())
    }

    pub fn delta(&self, x: &S) -> Result<S, ChainError> {
        self.check(x)?;
        Ok(if x.is_one() { S::one() } else { S::zero() })
    }

    /// `{x ≠ 1 : ¬x = 0}`.
    pub fn n_set(&self) -> NSet<S> {
        match &self.kind {
            ChainKind::Finite(f) => {
                NSet::Finite((0..f.len() - 1).filter(|&i| f.neg(i) == 0).map(|i| f.value(i)).collect())
            }
            ChainKind::Standard(s) => s.n_set(),
        }
    }

    /// `None` when `x ∧ ¬x = 0` everywhere, otherwise an element violating it.
    pub fn smtl_witness(&self) -> Option<S> {
        match &self.kind {
            ChainKind::Finite(f) => (0..f.len()).find(|&i| i.min(f.neg(i)) != 0).map(|i| f.value(i)),
            ChainKind::Standard(s) => s.smtl_witness(),
        }
    }

    pub fn is_smtl(&self) -> bool {
        self.smtl_witness().is_none()
    }

    /// Whether `¬¬x = x` for every element.
    pub fn is_involutive(&self) -> bool {
        match &self.kind {
            ChainKind::Finite(f) => (0..f.len()).all(|i| f.neg(f.neg(i)) == i),
            ChainKind::Standard(s) => s.components.len() == 1 && s.components[0].family == Family::Lukasiewicz,
        }
    }

    /// The uniform grid `{i/d}` for standard chains, the carrier for finite
    /// ones.
    pub fn sample_points(&self, denominator: usize) -> Vec<S> {
        match &self.kind {
            ChainKind::Finite(f) => f.values().to_vec(),
            ChainKind::Standard(_) => (0..=denominator).map(|i| S::grid_point(i, denominator)).collect(),
        }
    }

    /// Check adjointness `x⊗y ≤ z ⇔ x ≤ y→z` on `count` random rational
    /// triples with denominators up to `max_denominator`. Returns the first
    /// failing triple.
    pub fn adjointness_sample(&self, count: usize, max_denominator: i64, seed: u64) -> Option<(S, S, S)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let points = self.elements().map(|e| e.to_vec());
        let draw = |rng: &mut ChaCha8Rng| -> S {
            match &points {
                Some(p) => p[rng.gen_range(0..p.len())].clone(),
                None => {
                    let d = rng.gen_range(1..=max_denominator);
                    S::from_frac(rng.gen_range(0..=d), d)
                }
            }
        };
        for _ in 0..count {
            let (x, y, z) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
            let lhs = self.tnorm(&x, &y).unwrap() <= z;
            let rhs = x <= self.residuum(&y, &z).unwrap();
            if lhs != rhs {
                return Some((x, y, z));
            }
        }
        None
    }

    pub fn describe(&self) -> String {
        match &self.kind {
            ChainKind::Finite(f) => format!("{}: finite chain with {} elements ({})", self.name, f.len(), f.source),
            ChainKind::Standard(s) => {
                let parts: Vec<String> =
                    s.components.iter().map(|c| format!("{} [{},{}]", c.family.name(), c.lo, c.hi)).collect();
                format!("{}: standard chain, ordinal sum of {}", self.name, parts.join(" + "))
            }
        }
    }
}

impl<S: Scalar> FiniteChain<S> {
    fn named(self, name: impl Into<String>) -> Chain<S> {
        Chain { name: name.into(), kind: ChainKind::Finite(self) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_frac(n, d)
    }

    fn lp() -> Chain<Q> {
        Chain::standard(
            "LP",
            vec![
                Component::new(Family::Lukasiewicz, q(0, 1), q(1, 2)),
                Component::new(Family::Product, q(1, 2), q(1, 1)),
            ],
        )
        .unwrap()
    }

    fn ll() -> Chain<Q> {
        Chain::standard(
            "LL",
            vec![
                Component::new(Family::Lukasiewicz, q(0, 1), q(1, 2)),
                Component::new(Family::Lukasiewicz, q(1, 2), q(1, 1)),
            ],
        )
        .unwrap()
    }

    fn lg() -> Chain<Q> {
        Chain::standard(
            "LG",
            vec![
                Component::new(Family::Lukasiewicz, q(0, 1), q(1, 2)),
                Component::new(Family::Godel, q(1, 2), q(1, 1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn ordinal_sum_values() {
        assert_eq!(lp().tnorm(&q(5, 6), &q(3, 4)).unwrap(), q(2, 3));
        assert_eq!(ll().tnorm(&q(3, 5), &q(3, 5)).unwrap(), q(1, 2));
        assert_eq!(ll().residuum(&q(3, 5), &q(1, 2)).unwrap(), q(9, 10));
        assert_eq!(lg().residuum(&q(1, 4), &q(0, 1)).unwrap(), q(1, 4));
        assert_eq!(ll().negation(&q(3, 5)).unwrap(), q(0, 1));
    }

    #[test]
    fn lukasiewicz_three() {
        let l3 = Chain::<Q>::lukasiewicz(3).unwrap();
        assert_eq!(l3.tnorm(&q(1, 2), &q(1, 2)).unwrap(), q(0, 1));
        assert_eq!(l3.residuum(&q(1, 2), &q(0, 1)).unwrap(), q(1, 2));
        assert_eq!(l3.negation(&q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(l3.smtl_witness(), Some(q(1, 2)));
        assert!(l3.n_set().is_empty());
        assert!(matches!(l3.tnorm(&q(1, 3), &q(1, 1)), Err(ChainError::OutOfCarrier(_))));
    }

    #[test]
    fn n_sets() {
        assert_eq!(Chain::<Q>::standard_family(Family::Lukasiewicz).n_set(), NSet::Empty);
        assert_eq!(lg().n_set(), NSet::Interval { a: q(1, 2), closed: true });
        let gp = Chain::<Q>::standard_family(Family::Product);
        assert_eq!(gp.n_set(), NSet::Interval { a: q(0, 1), closed: false });
        let b2 = Chain::<Q>::godel(2).unwrap();
        assert!(b2.n_set().is_empty());
    }

    #[test]
    fn smtl() {
        assert!(Chain::<Q>::godel(3).unwrap().is_smtl());
        assert_eq!(lp().smtl_witness(), Some(q(1, 4)));
        assert!(Chain::<Q>::standard_family(Family::Product).is_smtl());
    }

    #[test]
    fn components_agree_at_shared_endpoints() {
        for c in [lp(), ll(), lg()] {
            let s = c.standard_parts().unwrap();
            let half = q(1, 2);
            for comp in &s.components {
                for y in [q(0, 1), q(1, 4), q(1, 2), q(3, 4), q(1, 1)] {
                    if comp.lo <= y && y <= comp.hi {
                        assert_eq!(comp.apply_tnorm(&half, &y), min_of(&half, &y));
                    }
                }
            }
        }
    }

    #[test]
    fn standard_adjointness_spot_checks() {
        for c in [lp(), ll(), lg()] {
            assert_eq!(c.adjointness_sample(2000, 40, 7), None, "{}", c.name);
        }
    }

    #[test]
    fn tiling_is_checked() {
        let gap = Chain::<Q>::standard(
            "bad",
            vec![
                Component::new(Family::Lukasiewicz, q(0, 1), q(1, 3)),
                Component::new(Family::Godel, q(1, 2), q(1, 1)),
            ],
        );
        assert!(matches!(gap, Err(ChainError::GapOrOverlap(_))));
    }
}
