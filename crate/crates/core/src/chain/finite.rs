use std::fmt;

use super::{ChainError, Family, Law};
use crate::scalar::Scalar;

/// How the t-norm of a finite chain was specified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FiniteSource {
    Family(Family),
    Wnm,
    Table,
    OrdinalSum(Vec<(Family, usize)>),
    Quotient,
}

impl fmt::Display for FiniteSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FiniteSource::Family(fam) => f.write_str(fam.name()),
            FiniteSource::Wnm => f.write_str("wnm"),
            FiniteSource::Table => f.write_str("table"),
            FiniteSource::Quotient => f.write_str("quotient"),
            FiniteSource::OrdinalSum(parts) => {
                let parts: Vec<String> = parts.iter().map(|(fam, n)| format!("{} {n}", fam.name())).collect();
                write!(f, "ordinal sum {}", parts.join(" + "))
            }
        }
    }
}

/// A finite chain on the grid `{0, 1/(n-1), ..., 1}` with precomputed
/// operation tables over element indices.
#[derive(Clone, Debug)]
pub struct FiniteChain<S> {
    values: Vec<S>,
    tnorm: Vec<usize>,
    residuum: Vec<usize>,
    neg: Vec<usize>,
    pub source: FiniteSource,
}

impl<S: Scalar> FiniteChain<S> {
    /// Build from an index table, validating the t-norm laws and computing
    /// the residuum.
    pub(crate) fn from_index_table(n: usize, table: Vec<usize>, source: FiniteSource) -> Result<Self, ChainError> {
        if n < 2 {
            return Err(ChainError::TooSmall(n));
        }
        if table.len() != n * n {
            return Err(ChainError::SizeMismatch { expected: n * n, found: table.len() });
        }
        let values: Vec<S> = (0..n).map(|i| S::grid_point(i, n - 1)).collect();
        let witness = |idx: &[usize]| idx.iter().map(|&i| values[i].to_string()).collect();
        let t = |i: usize, j: usize| table[i * n + j];
        if let Some(&v) = table.iter().find(|&&v| v >= n) {
            return Err(ChainError::OutOfCarrier(format!("index {v}")));
        }
        for i in 0..n {
            for j in 0..n {
                if t(i, j) != t(j, i) {
                    return Err(ChainError::TableNotTnorm { law: Law::Commutativity, witness: witness(&[i, j]) });
                }
            }
            if t(i, n - 1) != i {
                return Err(ChainError::TableNotTnorm { law: Law::Unit, witness: witness(&[i]) });
            }
        }
        for i in 0..n {
            for j in 0..n - 1 {
                for k in 0..n {
                    if t(i, j) > t(i, j + 1) {
                        return Err(ChainError::TableNotTnorm {
                            law: Law::Monotonicity,
                            witness: witness(&[i, j, j + 1]),
                        });
                    }
                    if t(t(i, j), k) != t(i, t(j, k)) {
                        return Err(ChainError::TableNotTnorm {
                            law: Law::Associativity,
                            witness: witness(&[i, j, k]),
                        });
                    }
                }
            }
        }
        let mut residuum = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                residuum[x * n + y] = (0..n).rev().find(|&z| t(x, z) <= y).unwrap_or(0);
            }
        }
        let neg = (0..n).map(|x| residuum[x * n]).collect();
        Ok(FiniteChain { values, tnorm: table, residuum, neg, source })
    }

    pub fn family(family: Family, n: usize) -> Result<Self, ChainError> {
        Self::ordinal_sum(&[(family, n)]).map(|mut c| {
            c.source = FiniteSource::Family(family);
            c
        })
    }

    pub fn ordinal_sum(parts: &[(Family, usize)]) -> Result<Self, ChainError> {
        if parts.is_empty() {
            return Err(ChainError::TooSmall(0));
        }
        let mut ranges = Vec::new();
        let mut start = 0;
        for &(fam, size) in parts {
            if size < 2 {
                return Err(ChainError::TooSmall(size));
            }
            if fam == Family::Product {
                return Err(ChainError::NoFiniteFamily("product"));
            }
            ranges.push((fam, start, start + size - 1));
            start += size - 1;
        }
        let n = start + 1;
        let mut table = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let (lo, hi) = (i.min(j), i.max(j));
                let comp = ranges.iter().find(|&&(_, s, e)| s <= lo && hi <= e);
                table[i * n + j] = match comp {
                    Some(&(Family::Lukasiewicz, s, e)) => (i + j).saturating_sub(e).max(s),
                    _ => lo,
                };
            }
        }
        Self::from_index_table(n, table, FiniteSource::OrdinalSum(parts.to_vec()))
    }

    /// `x⊗y = 0` if `y ≤ n(x)`, else `min(x,y)`.
    pub fn wnm(negation: &[S]) -> Result<Self, ChainError> {
        let n = negation.len();
        if n < 2 {
            return Err(ChainError::TooSmall(n));
        }
        let idx: Vec<usize> = negation
            .iter()
            .map(|v| v.grid_index(n - 1).ok_or_else(|| ChainError::OutOfCarrier(v.to_string())))
            .collect::<Result<_, _>>()?;
        if idx[0] != n - 1 {
            return Err(ChainError::NegationNotDecreasing { at: "0".into() });
        }
        if idx[n - 1] != 0 {
            return Err(ChainError::NegationNotDecreasing { at: "1".into() });
        }
        if let Some(i) = (1..n).find(|&i| idx[i] > idx[i - 1]) {
            return Err(ChainError::NegationNotDecreasing { at: S::grid_point(i, n - 1).to_string() });
        }
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                table[x * n + y] = if y <= idx[x] { 0 } else { x.min(y) };
            }
        }
        Self::from_index_table(n, table, FiniteSource::Wnm)
    }

    /// An explicit `n×n` table of values on the grid.
    pub fn from_table(rows: &[Vec<S>]) -> Result<Self, ChainError> {
        let n = rows.len();
        if n < 2 {
            return Err(ChainError::TooSmall(n));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(ChainError::SizeMismatch { expected: n, found: row.len() });
            }
            for v in row {
                table.push(v.grid_index(n - 1).ok_or_else(|| ChainError::OutOfCarrier(v.to_string()))?);
            }
        }
        Self::from_index_table(n, table, FiniteSource::Table)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn top(&self) -> usize {
        self.values.len() - 1
    }

    pub fn values(&self) -> &[S] {
        &self.values
    }

    pub fn value(&self, i: usize) -> S {
        self.values[i].clone()
    }

    pub fn index_of(&self, x: &S) -> Option<usize> {
        x.grid_index(self.len() - 1)
    }

    #[inline]
    pub fn t(&self, i: usize, j: usize) -> usize {
        self.tnorm[i * self.len() + j]
    }

    #[inline]
    pub fn r(&self, i: usize, j: usize) -> usize {
        self.residuum[i * self.len() + j]
    }

    #[inline]
    pub fn neg(&self, i: usize) -> usize {
        self.neg[i]
    }

    /// Exhaustive check of every law, including adjointness and
    /// prelinearity, which hold by construction.
    pub fn law_violation(&self) -> Option<(Law, Vec<usize>)> {
        let n = self.len();
        for x in 0..n {
            if self.t(x, n - 1) != x {
                return Some((Law::Unit, vec![x]));
            }
            for y in 0..n {
                if self.t(x, y) != self.t(y, x) {
                    return Some((Law::Commutativity, vec![x, y]));
                }
                if self.r(x, y).max(self.r(y, x)) != n - 1 {
                    return Some((Law::Prelinearity, vec![x, y]));
                }
                for z in 0..n {
                    if self.t(self.t(x, y), z) != self.t(x, self.t(y, z)) {
                        return Some((Law::Associativity, vec![x, y, z]));
                    }
                    if y <= z && self.t(x, y) > self.t(x, z) {
                        return Some((Law::Monotonicity, vec![x, y, z]));
                    }
                    if (self.t(x, y) <= z) != (x <= self.r(y, z)) {
                        return Some((Law::Adjointness, vec![x, y, z]));
                    }
                }
            }
        }
        None
    }

    pub fn is_zero_index(&self, i: usize) -> bool {
        self.values[i].is_zero()
    }

    pub fn is_top_index(&self, i: usize) -> bool {
        self.values[i].is_one()
    }
}
