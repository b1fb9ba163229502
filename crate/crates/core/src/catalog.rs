//! Built-in chains.

use crate::chain::{Chain, ChainError, Component, Family};
use crate::scalar::Scalar;

/// Names accepted by [`builtin_chain`], besides `L<n>` and `G<n>`.
pub const BUILTIN_CHAINS: &[&str] = &["B2", "L3", "L5", "G3", "G5", "NM6", "W15", "L3G3", "LG", "LP", "LL"];

/// The finite built-ins, smallest first.
pub const FINITE_CHAINS: &[&str] = &["B2", "L3", "G3", "L5", "G5", "L3G3", "NM6", "W15"];

pub fn builtin_chain<S: Scalar>(name: &str) -> Result<Chain<S>, ChainError> {
    let half = || S::from_frac(1, 2);
    let two_part = |second: Family| {
        Chain::standard(
            name,
            vec![Component::new(Family::Lukasiewicz, S::zero(), half()), Component::new(second, half(), S::one())],
        )
    };
    match name {
        "B2" => named(Chain::lukasiewicz(2)?, "B2"),
        "NM6" => {
            let neg: Vec<S> = (0..6).rev().map(|i| S::grid_point(i, 5)).collect();
            Chain::wnm("NM6", &neg)
        }
        "W15" => w15(),
        "L3G3" => Chain::finite_ordinal_sum("L3G3", &[(Family::Lukasiewicz, 3), (Family::Godel, 3)]),
        "LG" => two_part(Family::Godel),
        "LP" => two_part(Family::Product),
        "LL" => two_part(Family::Lukasiewicz),
        "SL" => Ok(Chain::standard_family(Family::Lukasiewicz)),
        "SG" => Ok(Chain::standard_family(Family::Godel)),
        "SP" => Ok(Chain::standard_family(Family::Product)),
        _ => {
            let size = |rest: &str| rest.parse::<usize>().map_err(|_| ChainError::UnknownFamily(name.to_string()));
            if let Some(rest) = name.strip_prefix('L') {
                Chain::lukasiewicz(size(rest)?)
            } else if let Some(rest) = name.strip_prefix('G') {
                Chain::godel(size(rest)?)
            } else {
                Err(ChainError::UnknownFamily(name.to_string()))
            }
        }
    }
}

fn named<S: Scalar>(mut c: Chain<S>, name: &str) -> Result<Chain<S>, ChainError> {
    c.name = name.to_string();
    Ok(c)
}

/// A 16-element WNM chain on `{i/15}` discretizing the negation
/// `1-x` on `[0,1/5] ∪ [4/5,1]`, `4/5-x` on `(1/5,3/5]`, `1/5` on `[3/5,4/5]`.
/// Every `x < 1` has `¬x > 0`.
pub fn w15<S: Scalar>() -> Result<Chain<S>, ChainError> {
    let idx: [i64; 16] = [15, 14, 13, 12, 8, 7, 6, 5, 4, 3, 3, 3, 3, 2, 1, 0];
    let neg: Vec<S> = idx.iter().map(|&i| S::from_frac(i, 15)).collect();
    Chain::wnm("W15", &neg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn all_builtins_load() {
        for name in BUILTIN_CHAINS {
            let c: Chain<Q> = builtin_chain(name).unwrap();
            assert_eq!(&c.name, name);
        }
        assert_eq!(builtin_chain::<Q>("L7").unwrap().size(), Some(7));
        assert!(builtin_chain::<Q>("X9").is_err());
    }

    #[test]
    fn finite_sizes() {
        let sizes: Vec<usize> = FINITE_CHAINS.iter().map(|n| builtin_chain::<Q>(n).unwrap().size().unwrap()).collect();
        assert_eq!(sizes, vec![2, 3, 3, 5, 5, 5, 6, 16]);
    }

    #[test]
    fn w15_has_no_zero_negation_below_top() {
        let w = w15::<Q>().unwrap();
        assert!(w.n_set().is_empty());
        assert!(!w.is_involutive());
    }
}
