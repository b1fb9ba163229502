//! Hilbert-style proof checking for MTL, its axiomatic extensions and the
//! `○`, `•` and `Δ` expansions, in truth- and degree-preserving form.

mod bridge;
pub mod fixtures;
mod profile;
mod proof;
mod theorems;

use thiserror::Error;

pub use bridge::{applicable_models, soundness_bridge, structure_fits_profile, BridgeReport, BridgeViolation, Model};
pub use profile::{axiom_text, load_profile, profile_names, Axiom, BaseLogic, Flavor, LogicProfile, Rule, Variant};
pub use proof::{verify_proof, verify_with, Justification, ProofLine, ProofScript, ScriptError, VerifiedProof};
pub use theorems::{Scope, Theorem, TheoremStore};

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ProofError {
    #[error("unknown profile `{0}`")]
    UnknownProfile(String),
    #[error("proof has no lines")]
    EmptyProof,
    #[error("line {line}: numbered {found}")]
    LineNumbering { line: usize, found: usize },
    #[error("line {line}: {connective} is not in the language of {profile}")]
    LanguageMismatch { line: usize, connective: &'static str, profile: String },
    #[error("line {line}: formula is not an instance of {axiom}")]
    SchemaMismatch { line: usize, axiom: String },
    #[error("line {line}: {profile} has no axiom `{id}`")]
    UnknownAxiom { line: usize, id: String, profile: String },
    #[error("line {line}: {profile} has no rule `{id}`")]
    UnknownRule { line: usize, id: String, profile: String },
    #[error("line {line}: no theorem `{name}` is registered for {profile}")]
    UnknownTheorem { line: usize, name: String, profile: String },
    #[error("line {line}: {rule} takes {expected} premises, got {found}")]
    BadRuleArity { line: usize, rule: String, expected: usize, found: usize },
    #[error("line {line}: does not follow by {rule}")]
    RuleMismatch { line: usize, rule: String },
    #[error("line {line}: {rule} needs line {premise_line} to be a theorem, but it depends on premises")]
    RestrictedRuleOnHypothesis { line: usize, rule: String, premise_line: usize },
    #[error("line {line}: reference to line {target}")]
    BadReference { line: usize, target: usize },
    #[error("line {line}: premise {index} was already given as a different formula")]
    PremiseConflict { line: usize, index: usize },
    #[error("{structure} is not a model of {profile}: {reason}")]
    ChainProfileMismatch { structure: String, profile: String, reason: String },
    #[error("theorem `{0}` is already registered")]
    DuplicateTheorem(String),
    #[error("proof `{0}` depends on premises")]
    NotATheorem(String),
}

impl ProofError {
    /// The proof line at fault, when there is one.
    pub fn line(&self) -> Option<usize> {
        use ProofError::*;
        match self {
            LineNumbering { line, .. }
            | LanguageMismatch { line, .. }
            | SchemaMismatch { line, .. }
            | UnknownAxiom { line, .. }
            | UnknownRule { line, .. }
            | UnknownTheorem { line, .. }
            | BadRuleArity { line, .. }
            | RuleMismatch { line, .. }
            | RestrictedRuleOnHypothesis { line, .. }
            | BadReference { line, .. }
            | PremiseConflict { line, .. } => Some(*line),
            _ => None,
        }
    }
}
