use rayon::prelude::*;

use super::profile::{LogicProfile, Variant};
use super::{ProofError, VerifiedProof};
use crate::catalog::{builtin_chain, FINITE_CHAINS};
use crate::chain::Chain;
use crate::formula::Formula;
use crate::operators::{
    dual, enumerate_ops, max_op, min_op, validate_bullet, validate_c, ConsistencyOp, InconsistencyOp,
    MAX_ENUMERATION_SIZE,
};
use crate::scalar::Scalar;
use crate::semantics::{consequence, Mode, SearchConfig, Structure};

/// An owned chain with its operators.
#[derive(Clone, Debug)]
pub struct Model<S> {
    pub chain: Chain<S>,
    pub circ: Option<ConsistencyOp<S>>,
    pub bullet: Option<InconsistencyOp<S>>,
}

impl<S: Scalar> Model<S> {
    pub fn plain(chain: Chain<S>) -> Self {
        Model { chain, circ: None, bullet: None }
    }

    pub fn structure(&self) -> Structure<'_, S> {
        Structure { chain: &self.chain, circ: self.circ.as_ref(), bullet: self.bullet.as_ref() }
    }

    pub fn label(&self) -> String {
        match (&self.circ, &self.bullet) {
            (_, Some(b)) => format!("{}+{}", self.chain.name, b.name),
            _ => self.structure().label(),
        }
    }
}

/// Why a structure is not a model of the profile's logic, if it is not.
pub fn structure_fits_profile<S: Scalar>(s: &Structure<S>, profile: &LogicProfile) -> Result<(), String> {
    let c = s.chain;
    let f = c.finite().ok_or("chain is not finite")?;
    if profile.has_circ() {
        let op = s.circ.ok_or("profile needs ○")?;
        if !validate_c(c, op).map_err(|e| e.to_string())?.valid {
            return Err(format!("{} violates (c1)-(c3)", op.name));
        }
    }
    if profile.has_bullet() {
        let op = s.bullet.ok_or("profile needs •")?;
        if !validate_bullet(c, op).map_err(|e| e.to_string())?.valid {
            return Err(format!("{} violates (•1)-(•3)", op.name));
        }
    }
    let cfg = SearchConfig::default();
    for ax in &profile.axioms {
        let r = consequence(&[*s], &[], &ax.schema.formula, Mode::Truth, &cfg).map_err(|e| e.to_string())?;
        if !r.holds() {
            return Err(format!("axiom {} fails", ax.id));
        }
    }
    let zero_neg: Vec<usize> = (0..f.len()).filter(|&i| f.neg(i) == 0).collect();
    let top = f.top();
    for rule in &profile.rules {
        let base = rule.id.trim_end_matches("-r");
        let ok = match base {
            "NN" => zero_neg == [top],
            "NNo" => {
                let t = s.circ.expect("checked").index_table(c).map_err(|e| e.to_string())?;
                zero_neg.iter().all(|&i| t[i] == top)
            }
            "NNi" => {
                let t = s.bullet.expect("checked").index_table(c).map_err(|e| e.to_string())?;
                zero_neg.iter().all(|&i| t[i] == 0)
            }
            _ => true,
        };
        if !ok {
            return Err(format!("rule {} is not sound here", rule.id));
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BridgeViolation {
    pub line: usize,
    pub structure: String,
}

#[derive(Clone, Debug, Default)]
pub struct BridgeReport {
    pub structures: Vec<String>,
    pub checks: usize,
    pub violations: Vec<BridgeViolation>,
}

impl BridgeReport {
    pub fn confirmed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// For every line, check that its premises entail it on every structure,
/// in the profile's mode.
pub fn soundness_bridge<S: Scalar>(
    proof: &VerifiedProof,
    structures: &[Structure<S>],
) -> Result<BridgeReport, ProofError> {
    let profile = &proof.profile;
    for s in structures {
        structure_fits_profile(s, profile).map_err(|reason| ProofError::ChainProfileMismatch {
            structure: s.label(),
            profile: profile.name.clone(),
            reason,
        })?;
    }
    let mode = if profile.degree { Mode::Degree } else { Mode::Truth };
    let cfg = SearchConfig::default();
    let jobs: Vec<(usize, usize)> =
        (0..proof.script.lines.len()).flat_map(|l| (0..structures.len()).map(move |s| (l, s))).collect();
    let results: Vec<Result<Option<BridgeViolation>, ProofError>> = jobs
        .par_iter()
        .map(|&(l, si)| {
            let s = structures[si];
            let premises: Vec<Formula> = proof.premise_formulas(&proof.deps[l]);
            let goal = &proof.script.lines[l].formula;
            let r = consequence(&[s], &premises, goal, mode, &cfg).map_err(|e| ProofError::ChainProfileMismatch {
                structure: s.label(),
                profile: profile.name.clone(),
                reason: e.to_string(),
            })?;
            Ok((!r.holds()).then(|| BridgeViolation { line: l + 1, structure: s.label() }))
        })
        .collect();
    let mut report = BridgeReport {
        structures: structures.iter().map(|s| s.label()).collect(),
        checks: jobs.len(),
        violations: vec![],
    };
    for r in results {
        report.violations.extend(r?);
    }
    Ok(report)
}

/// Finite built-in chains with every operator choice that fits the
/// profile: all enumerated `○` on small chains, the extremal ones on the
/// rest, and their duals for `•` profiles.
pub fn applicable_models<S: Scalar>(profile: &LogicProfile) -> Vec<Model<S>> {
    let mut out = Vec::new();
    for name in FINITE_CHAINS {
        let chain: Chain<S> = builtin_chain(name).expect("built-in chain");
        let candidates: Vec<Model<S>> = if profile.variant == Variant::Plain {
            vec![Model::plain(chain.clone())]
        } else {
            let ops = if chain.size().unwrap_or(0) <= MAX_ENUMERATION_SIZE {
                enumerate_ops(&chain).expect("small chain")
            } else {
                let mut v = vec![min_op(&chain), max_op(&chain)];
                v.dedup_by(|a, b| a.index_table(&chain).ok() == b.index_table(&chain).ok());
                v
            };
            ops.into_iter()
                .map(|op| {
                    if profile.has_bullet() {
                        let b = dual(&chain, &op);
                        Model { chain: chain.clone(), circ: None, bullet: Some(b) }
                    } else {
                        Model { chain: chain.clone(), circ: Some(op), bullet: None }
                    }
                })
                .collect()
        };
        out.extend(candidates.into_iter().filter(|m| structure_fits_profile(&m.structure(), profile).is_ok()));
    }
    out
}
