//! Named chains, operators and proofs, from files or the built-in catalog.

use std::collections::BTreeMap;
use std::path::Path;

use thiserror::Error;

use crate::catalog::builtin_chain;
use crate::chain::{Chain, ChainError};
use crate::files::{parse_file, FileError, Item, ProofSpec};
use crate::hilbert::{verify_proof, ProofError, TheoremStore, VerifiedProof};
use crate::operators::{
    crisp_op, max_op, min_op, op_from_delta, piecewise_op, table_op, unique_op, ConsistencyOp, Interpolation, OpError,
};
use crate::scalar::Scalar;

#[derive(Debug, Error)]
pub enum WorkspaceError {
    #[error(transparent)]
    File(#[from] FileError),
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{kind} `{name}` is already defined")]
    Duplicate { kind: &'static str, name: String },
    #[error("unknown chain `{0}`")]
    UnknownChain(String),
    #[error("unknown operator `{0}`")]
    UnknownOp(String),
    #[error("operator `{op}` is defined on `{host}`, not on `{chain}`")]
    OpHost { op: String, host: String, chain: String },
    #[error("bad operator spec `{0}`")]
    BadOpSpec(String),
    #[error(transparent)]
    Op(#[from] OpError),
    #[error(transparent)]
    Chain(#[from] ChainError),
}

#[derive(Clone, Debug)]
pub struct Workspace<S> {
    chains: BTreeMap<String, Chain<S>>,
    ops: BTreeMap<String, ConsistencyOp<S>>,
    proofs: Vec<ProofSpec>,
    pub theorems: TheoremStore,
}

impl<S: Scalar> Default for Workspace<S> {
    fn default() -> Self {
        Workspace { chains: BTreeMap::new(), ops: BTreeMap::new(), proofs: vec![], theorems: TheoremStore::seeded() }
    }
}

impl<S: Scalar> Workspace<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn load_path(&mut self, path: &Path) -> Result<(), WorkspaceError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| WorkspaceError::Io { path: path.display().to_string(), message: e.to_string() })?;
        self.load_str(&text)
    }

    pub fn load_str(&mut self, text: &str) -> Result<(), WorkspaceError> {
        for item in parse_file::<S>(text)? {
            match item {
                Item::Chain(c) => {
                    if self.chains.contains_key(&c.name) || builtin_chain::<S>(&c.name).is_ok() {
                        return Err(WorkspaceError::Duplicate { kind: "chain", name: c.name });
                    }
                    self.chains.insert(c.name.clone(), c);
                }
                Item::Op(spec) => {
                    if self.ops.contains_key(&spec.name) {
                        return Err(WorkspaceError::Duplicate { kind: "operator", name: spec.name });
                    }
                    let chain = self.chain(&spec.chain)?;
                    let op = spec.build(&chain)?;
                    self.ops.insert(spec.name.clone(), op);
                }
                Item::Proof(p) => {
                    if self.proofs.iter().any(|q| q.script.name == p.script.name) {
                        return Err(WorkspaceError::Duplicate { kind: "proof", name: p.script.name });
                    }
                    self.proofs.push(p);
                }
            }
        }
        Ok(())
    }

    /// A loaded chain, else a built-in one.
    pub fn chain(&self, name: &str) -> Result<Chain<S>, WorkspaceError> {
        if let Some(c) = self.chains.get(name) {
            return Ok(c.clone());
        }
        builtin_chain(name).map_err(|_| WorkspaceError::UnknownChain(name.to_string()))
    }

    pub fn chain_names(&self) -> impl Iterator<Item = &str> {
        self.chains.keys().map(String::as_str)
    }

    pub fn op_names(&self) -> impl Iterator<Item = &str> {
        self.ops.keys().map(String::as_str)
    }

    /// Resolve an operator spec on `chain`: `auto`, `min`, `max`, `delta`,
    /// `crisp:<t>[:open]`, `piecewise:<x>=<v>,...[:step]`, `table:<v>,...`,
    /// or the name of a loaded operator.
    pub fn op(&self, spec: &str, chain: &Chain<S>) -> Result<ConsistencyOp<S>, WorkspaceError> {
        let bad = || WorkspaceError::BadOpSpec(spec.to_string());
        let parse = |t: &str| S::parse_exact(t).ok_or_else(bad);
        let mut parts = spec.split(':');
        let head = parts.next().unwrap_or("");
        let args: Vec<&str> = parts.collect();
        let op = match (head, args.as_slice()) {
            ("auto", []) => unique_op(chain)?,
            ("min", []) => min_op(chain),
            ("max", []) => max_op(chain),
            ("delta", []) => op_from_delta(chain),
            ("crisp", [t]) => crisp_op(chain, &parse(t)?, true)?,
            ("crisp", [t, "open"]) => crisp_op(chain, &parse(t)?, false)?,
            ("piecewise", [pts, rest @ ..]) => {
                let interpolation = match rest {
                    [] | ["linear"] => Interpolation::Linear,
                    ["step"] => Interpolation::Step,
                    _ => return Err(bad()),
                };
                let breakpoints = pts
                    .split(',')
                    .filter(|p| !p.is_empty())
                    .map(|p| {
                        let (x, v) = p.split_once('=').ok_or_else(bad)?;
                        Ok((parse(x)?, parse(v)?))
                    })
                    .collect::<Result<Vec<_>, WorkspaceError>>()?;
                piecewise_op(chain, &breakpoints, interpolation)?
            }
            ("table", [vals]) => {
                let values = vals.split(',').map(parse).collect::<Result<Vec<_>, _>>()?;
                table_op(chain, "table", values)?
            }
            ("crisp" | "piecewise" | "table", _) => return Err(bad()),
            (name, []) => {
                let op = self.ops.get(name).ok_or_else(|| WorkspaceError::UnknownOp(name.to_string()))?;
                if op.host != chain.name {
                    return Err(WorkspaceError::OpHost {
                        op: name.to_string(),
                        host: op.host.clone(),
                        chain: chain.name.clone(),
                    });
                }
                op.clone()
            }
            _ => return Err(bad()),
        };
        Ok(op)
    }

    pub fn proofs(&self) -> &[ProofSpec] {
        &self.proofs
    }

    /// Verify loaded proofs in order, registering `theorem` blocks as they
    /// succeed so later proofs may cite them.
    pub fn verify_all(&mut self) -> Vec<(String, Result<VerifiedProof, ProofError>)> {
        let mut out = Vec::new();
        for spec in &self.proofs {
            let result = verify_proof(&spec.script, &self.theorems).and_then(|v| {
                if spec.register {
                    self.theorems.register_proof(&v)?;
                }
                Ok(v)
            });
            out.push((spec.script.name.clone(), result));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn op_specs() {
        let ws: Workspace<Q> = Workspace::new();
        let l3 = ws.chain("L3").unwrap();
        let lp = ws.chain("LP").unwrap();
        let ll = ws.chain("LL").unwrap();
        let half = Q::from_frac(1, 2);
        assert_eq!(ws.op("auto", &l3).unwrap().apply(&l3, &half), Q::from_int(0));
        assert!(matches!(ws.op("auto", &lp), Err(WorkspaceError::Op(OpError::NotUnique { .. }))));
        let c = ws.op("crisp:3/4", &lp).unwrap();
        assert_eq!(c.apply(&lp, &Q::from_frac(3, 4)), Q::from_int(1));
        assert!(ws.op("crisp:1/4", &lp).is_err());
        let id = ws.op("piecewise:1/2=1/2,1=1", &ll).unwrap();
        assert_eq!(id.apply(&ll, &Q::from_frac(3, 5)), Q::from_frac(3, 5));
        assert!(ws.op("table:1,0,1", &l3).is_ok());
        assert!(matches!(ws.op("nope", &l3), Err(WorkspaceError::UnknownOp(_))));
        assert!(matches!(ws.op("crisp", &l3), Err(WorkspaceError::BadOpSpec(_))));
    }

    #[test]
    fn loading_and_names() {
        let mut ws: Workspace<Q> = Workspace::new();
        ws.load_str("chain C4\nkind: finite\nfamily: godel\nsize: 4\n\nop top on C4\nkind: max\n").unwrap();
        let c4 = ws.chain("C4").unwrap();
        assert_eq!(ws.op("top", &c4).unwrap().name, "top");
        let g3 = ws.chain("G3").unwrap();
        assert!(matches!(ws.op("top", &g3), Err(WorkspaceError::OpHost { .. })));
        assert!(matches!(
            ws.load_str("chain C4\nkind: finite\nfamily: godel\nsize: 3\n"),
            Err(WorkspaceError::Duplicate { .. })
        ));
        assert!(matches!(
            ws.load_str("chain L3\nkind: finite\nfamily: godel\nsize: 3\n"),
            Err(WorkspaceError::Duplicate { .. })
        ));
        assert!(matches!(ws.load_str("op x on Nowhere\nkind: min\n"), Err(WorkspaceError::UnknownChain(_))));
    }

    #[test]
    fn registered_theorems_are_citable() {
        let mut ws: Workspace<Q> = Workspace::new();
        ws.load_str(
            "theorem swap in MTL\n1. p /\\ q -> q /\\ p | axiom A5\n\nproof use in MTL\n1. a /\\ b | premise 1\n2. a /\\ b -> b /\\ a | thm swap\n3. b /\\ a | mp 1 2\n\nproof elsewhere in G\n1. a /\\ b -> b /\\ a | thm swap\n",
        )
        .unwrap();
        let results = ws.verify_all();
        assert!(results[0].1.is_ok());
        assert!(results[1].1.is_ok());
        assert!(matches!(results[2].1, Err(ProofError::UnknownTheorem { .. })));
    }
}
