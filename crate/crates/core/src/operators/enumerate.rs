use super::{min_op, table_op_indices, ConsistencyOp, OpError};
use crate::chain::Chain;
use crate::scalar::Scalar;

pub const MAX_ENUMERATION_SIZE: usize = 7;

/// Every operator satisfying `(c1)`–`(c3)` on a finite chain, in
/// lexicographic order of their value vectors.
///
/// Such an operator is `1` at `0` and `1`, `0` on the remaining elements
/// outside `N(A)`, and an arbitrary nondecreasing map on `N(A)`.
pub fn enumerate_ops<S: Scalar>(chain: &Chain<S>) -> Result<Vec<ConsistencyOp<S>>, OpError> {
    let f = chain.finite().ok_or(OpError::NotFinite)?;
    let n = f.len();
    if n > MAX_ENUMERATION_SIZE {
        return Err(OpError::TooLarge { size: n, max: MAX_ENUMERATION_SIZE });
    }
    let top = f.top();
    let free: Vec<usize> = (1..top).filter(|&i| f.neg(i) == 0).collect();
    let mut base = vec![0; n];
    base[0] = top;
    base[top] = top;
    let mut out = Vec::new();
    let mut current = vec![0usize; free.len()];
    loop {
        let mut values = base.clone();
        for (slot, &v) in free.iter().zip(&current) {
            values[*slot] = v;
        }
        let name = format!("op{}", out.len() + 1);
        out.push(table_op_indices(chain, &name, &values)?);
        if !advance(&mut current, top) {
            break;
        }
    }
    Ok(out)
}

/// Next nondecreasing sequence over `0..=max` in lexicographic order.
fn advance(seq: &mut [usize], max: usize) -> bool {
    let Some(pos) = seq.iter().rposition(|&v| v < max) else {
        return false;
    };
    let v = seq[pos] + 1;
    for slot in &mut seq[pos..] {
        *slot = v;
    }
    true
}

/// `C(n + m - 1, m)` with `m = |N(A)|`.
pub fn count_ops<S: Scalar>(chain: &Chain<S>) -> Result<u128, OpError> {
    let f = chain.finite().ok_or(OpError::NotFinite)?;
    let n = f.len() as u128;
    let m = (1..f.top()).filter(|&i| f.neg(i) == 0).count() as u128;
    let mut c: u128 = 1;
    for i in 0..m {
        c = c * (n + i) / (i + 1);
    }
    Ok(c)
}

/// The only operator on the chain, when there is exactly one.
pub fn unique_op<S: Scalar>(chain: &Chain<S>) -> Result<ConsistencyOp<S>, OpError> {
    if chain.is_finite() {
        let mut ops = enumerate_ops(chain)?;
        if ops.len() == 1 {
            let mut op = ops.pop().unwrap();
            op.0.name = "unique".into();
            return Ok(op);
        }
        return Err(OpError::NotUnique { chain: chain.name.clone(), count: ops.len().to_string() });
    }
    if chain.n_set().is_empty() {
        let mut op = min_op(chain);
        op.0.name = "unique".into();
        return Ok(op);
    }
    Err(OpError::NotUnique { chain: chain.name.clone(), count: "infinitely many".into() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Family;
    use crate::operators::validate_c;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn counts() {
        let l3 = Chain::<Q>::lukasiewicz(3).unwrap();
        let b2 = Chain::<Q>::lukasiewicz(2).unwrap();
        let g3 = Chain::<Q>::godel(3).unwrap();
        let lg = Chain::<Q>::finite_ordinal_sum("L3G3", &[(Family::Lukasiewicz, 3), (Family::Godel, 3)]).unwrap();
        assert_eq!(enumerate_ops(&l3).unwrap().len(), 1);
        assert_eq!(enumerate_ops(&b2).unwrap().len(), 1);
        assert_eq!(enumerate_ops(&g3).unwrap().len(), 3);
        assert_eq!(enumerate_ops(&lg).unwrap().len(), 15);
        assert_eq!(count_ops(&lg).unwrap(), 15);
    }

    #[test]
    fn enumerated_ops_are_valid_and_ordered() {
        let g5 = Chain::<Q>::godel(5).unwrap();
        let ops = enumerate_ops(&g5).unwrap();
        assert_eq!(ops.len() as u128, count_ops(&g5).unwrap());
        for op in &ops {
            assert!(validate_c(&g5, op).unwrap().valid);
        }
        let tables: Vec<Vec<usize>> = ops.iter().map(|o| o.index_table(&g5).unwrap()).collect();
        assert!(tables.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn size_cap() {
        let g8 = Chain::<Q>::godel(8).unwrap();
        assert!(matches!(enumerate_ops(&g8), Err(OpError::TooLarge { .. })));
    }

    #[test]
    fn auto_selection() {
        let l3 = Chain::<Q>::lukasiewicz(3).unwrap();
        assert!(unique_op(&l3).is_ok());
        let g3 = Chain::<Q>::godel(3).unwrap();
        assert!(matches!(unique_op(&g3), Err(OpError::NotUnique { .. })));
        let sl = Chain::<Q>::standard_family(Family::Lukasiewicz);
        assert!(unique_op(&sl).is_ok());
    }
}
