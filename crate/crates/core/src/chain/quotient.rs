use super::finite::FiniteSource;
use super::{Chain, ChainError, ChainKind, FiniteChain};
use crate::scalar::Scalar;

/// An up-closed, ⊗-closed subset of a finite chain containing 1, stored as
/// element indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Filter {
    members: Vec<bool>,
}

impl Filter {
    pub fn new<S: Scalar>(chain: &Chain<S>, elements: &[S]) -> Result<Self, ChainError> {
        let f = chain.finite().ok_or(ChainError::NotFinite)?;
        let mut members = vec![false; f.len()];
        for x in elements {
            let i = f.index_of(x).ok_or_else(|| ChainError::OutOfCarrier(x.to_string()))?;
            members[i] = true;
        }
        if !members[f.top()] {
            return Err(ChainError::NotAFilter("1 is missing".into()));
        }
        for i in 0..f.len() - 1 {
            if members[i] && !members[i + 1] {
                return Err(ChainError::NotAFilter(format!("{} is in F but {} is not", f.value(i), f.value(i + 1))));
            }
        }
        for i in 0..f.len() {
            for j in i..f.len() {
                if members[i] && members[j] && !members[f.t(i, j)] {
                    return Err(ChainError::NotAFilter(format!(
                        "{} ⊗ {} = {} is not in F",
                        f.value(i),
                        f.value(j),
                        f.value(f.t(i, j))
                    )));
                }
            }
        }
        Ok(Filter { members })
    }

    /// `[x,1]`.
    pub fn principal<S: Scalar>(chain: &Chain<S>, x: &S) -> Result<Self, ChainError> {
        let f = chain.finite().ok_or(ChainError::NotFinite)?;
        let elements: Vec<S> = f.values().iter().filter(|v| *v >= x).cloned().collect();
        Self::new(chain, &elements)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.get(i).copied().unwrap_or(false)
    }
}

/// `C/≡_F` together with the canonical projection.
#[derive(Clone, Debug)]
pub struct Quotient<S> {
    pub chain: Chain<S>,
    /// Element index of the source chain to class index.
    pub projection: Vec<usize>,
    /// Members of each class, ascending.
    pub classes: Vec<Vec<usize>>,
}

impl<S: Scalar> Chain<S> {
    /// Identify `x ≡ y` iff `x→y ∈ F` and `y→x ∈ F`.
    pub fn quotient_by_filter(&self, filter: &Filter) -> Result<Quotient<S>, ChainError> {
        let f = self.finite().ok_or(ChainError::NotFinite)?;
        let n = f.len();
        let equiv = |i: usize, j: usize| filter.contains(f.r(i, j)) && filter.contains(f.r(j, i));
        let mut projection = vec![0; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            match classes.iter().position(|cls| equiv(cls[0], i)) {
                Some(k) => {
                    classes[k].push(i);
                    projection[i] = k;
                }
                None => {
                    projection[i] = classes.len();
                    classes.push(vec![i]);
                }
            }
        }
        let m = classes.len();
        let mut table = vec![0; m * m];
        for a in 0..m {
            for b in 0..m {
                let image = projection[f.t(classes[a][0], classes[b][0])];
                for &i in &classes[a] {
                    for &j in &classes[b] {
                        if projection[f.t(i, j)] != image {
                            return Err(ChainError::NotAFilter(format!(
                                "≡_F is not a congruence at ({}, {})",
                                f.value(i),
                                f.value(j)
                            )));
                        }
                    }
                }
                table[a * m + b] = image;
            }
        }
        let chain = FiniteChain::from_index_table(m, table, FiniteSource::Quotient)?;
        for i in 0..n {
            for j in 0..n {
                if projection[f.r(i, j)] != chain.r(projection[i], projection[j]) {
                    return Err(ChainError::NotAFilter(format!(
                        "projection does not preserve → at ({}, {})",
                        f.value(i),
                        f.value(j)
                    )));
                }
            }
        }
        Ok(Quotient {
            chain: Chain { name: format!("{}/F", self.name), kind: ChainKind::Finite(chain) },
            projection,
            classes,
        })
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

    #[test]
    fn trivial_filter_gives_copy() {
        let l5 = Chain::<Q>::lukasiewicz(5).unwrap();
        let quo = l5.quotient_by_filter(&Filter::new(&l5, &[q(1, 1)]).unwrap()).unwrap();
        assert_eq!(quo.projection, vec![0, 1, 2, 3, 4]);
        let a = l5.finite().unwrap();
        let b = quo.chain.finite().unwrap();
        for i in 0..5 {
            for j in 0..5 {
                assert_eq!(a.t(i, j), b.t(i, j));
            }
        }
    }

    #[test]
    fn closure_under_tnorm() {
        let l5 = Chain::<Q>::lukasiewicz(5).unwrap();
        let err = Filter::new(&l5, &[q(3, 4), q(1, 1)]).unwrap_err();
        assert!(matches!(err, ChainError::NotAFilter(_)));
        let err = Filter::new(&l5, &[q(1, 4), q(1, 1)]).unwrap_err();
        assert!(matches!(err, ChainError::NotAFilter(_)));
    }

    #[test]
    fn godel_filters_collapse_tops() {
        let g5 = Chain::<Q>::godel(5).unwrap();
        let fil = Filter::principal(&g5, &q(1, 2)).unwrap();
        let quo = g5.quotient_by_filter(&fil).unwrap();
        assert_eq!(quo.classes, vec![vec![0], vec![1], vec![2, 3, 4]]);
        assert_eq!(quo.chain.finite().unwrap().law_violation(), None);
    }
}
