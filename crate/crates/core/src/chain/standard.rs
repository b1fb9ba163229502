use super::{ChainError, Family, NSet};
use crate::scalar::{max_of, min_of, Scalar};

/// One summand `[lo,hi]` of an ordinal sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component<S> {
    pub family: Family,
    pub lo: S,
    pub hi: S,
}

impl<S: Scalar> Component<S> {
    pub fn new(family: Family, lo: S, hi: S) -> Self {
        Component { family, lo, hi }
    }

    pub fn contains(&self, x: &S) -> bool {
        self.lo <= *x && *x <= self.hi
    }

    /// The component t-norm rescaled onto `[lo,hi]`; both arguments must lie
    /// in the component.
    pub fn apply_tnorm(&self, x: &S, y: &S) -> S {
        match self.family {
            Family::Lukasiewicz => max_of(&self.lo, &(x.clone() + y.clone() - self.hi.clone())),
            Family::Godel => min_of(x, y),
            Family::Product => {
                let w = self.hi.clone() - self.lo.clone();
                self.lo.clone() + (x.clone() - self.lo.clone()) * (y.clone() - self.lo.clone()) / w
            }
        }
    }

    /// The component residuum for `x > y`, both in the component.
    fn apply_residuum_below(&self, x: &S, y: &S) -> S {
        match self.family {
            Family::Lukasiewicz => self.hi.clone() - x.clone() + y.clone(),
            Family::Godel => y.clone(),
            Family::Product => {
                let w = self.hi.clone() - self.lo.clone();
                self.lo.clone() + (y.clone() - self.lo.clone()) * w / (x.clone() - self.lo.clone())
            }
        }
    }
}

/// An ordinal sum of continuous t-norms tiling `[0,1]`.
#[derive(Clone, Debug)]
pub struct StandardChain<S> {
    pub components: Vec<Component<S>>,
}

impl<S: Scalar> StandardChain<S> {
    pub fn new(components: Vec<Component<S>>) -> Result<Self, ChainError> {
        let first = components.first().ok_or_else(|| ChainError::GapOrOverlap("no components".into()))?;
        if !first.lo.is_zero() {
            return Err(ChainError::GapOrOverlap(format!("first component starts at {}", first.lo)));
        }
        let last = components.last().unwrap();
        if !last.hi.is_one() {
            return Err(ChainError::GapOrOverlap(format!("last component ends at {}", last.hi)));
        }
        for c in &components {
            if c.lo >= c.hi {
                return Err(ChainError::GapOrOverlap(format!("empty component [{},{}]", c.lo, c.hi)));
            }
        }
        for pair in components.windows(2) {
            if pair[0].hi != pair[1].lo {
                return Err(ChainError::GapOrOverlap(format!("{} is followed by {}", pair[0].hi, pair[1].lo)));
            }
        }
        Ok(StandardChain { components })
    }

    fn shared_component(&self, x: &S, y: &S) -> Option<&Component<S>> {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        self.components.iter().find(|c| c.contains(lo) && c.contains(hi))
    }

    pub fn tnorm(&self, x: &S, y: &S) -> S {
        match self.shared_component(x, y) {
            Some(c) => c.apply_tnorm(x, y),
            None => min_of(x, y),
        }
    }

    pub fn residuum(&self, x: &S, y: &S) -> S {
        if x <= y {
            return S::one();
        }
        match self.shared_component(x, y) {
            Some(c) => c.apply_residuum_below(x, y),
            None => y.clone(),
        }
    }

    pub fn n_set(&self) -> NSet<S> {
        let first = &self.components[0];
        match first.family {
            Family::Lukasiewicz if first.hi.is_one() => NSet::Empty,
            Family::Lukasiewicz => NSet::Interval { a: first.hi.clone(), closed: true },
            Family::Godel | Family::Product => NSet::Interval { a: S::zero(), closed: false },
        }
    }

    pub fn smtl_witness(&self) -> Option<S> {
        let first = &self.components[0];
        match first.family {
            Family::Lukasiewicz => Some(first.hi.clone() / S::from_int(2)),
            Family::Godel | Family::Product => None,
        }
    }

    /// Points where the operations change their formula: `0`, `1` and all
    /// component endpoints.
    pub fn breakpoints(&self) -> Vec<S> {
        let mut pts: Vec<S> = self.components.iter().map(|c| c.lo.clone()).collect();
        pts.push(S::one());
        pts
    }
}
