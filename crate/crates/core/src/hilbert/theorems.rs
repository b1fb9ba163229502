use std::collections::BTreeMap;

use super::profile::{LogicProfile, Variant};
use super::{ProofError, VerifiedProof};
use crate::formula::{Formula, Schema};

/// Where a registered theorem may be cited.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scope {
    /// Every profile; used for theorems of MTL.
    Everywhere,
    Variants(Vec<Variant>),
    /// Profiles by name; degree companions share the theorems of their
    /// truth-preserving logic.
    Profiles(Vec<String>),
}

#[derive(Clone, Debug)]
pub struct Theorem {
    pub name: String,
    pub schema: Schema,
    pub scope: Scope,
}

impl Theorem {
    pub fn available_in(&self, profile: &LogicProfile) -> bool {
        match &self.scope {
            Scope::Everywhere => true,
            Scope::Variants(vs) => vs.contains(&profile.variant),
            Scope::Profiles(names) => names.contains(&profile.truth_companion().name),
        }
    }
}

const MTL_THEOREMS: &[(&str, &str)] = &[
    ("id", "phi -> phi"),
    ("K", "phi -> (psi -> phi)"),
    ("dn", "phi -> ~~phi"),
    ("contrapos", "(phi -> psi) -> (~psi -> ~phi)"),
    ("demorgan", "~(phi /\\ psi) <-> ~phi \\/ ~psi"),
    ("demorgan3", "~chi \\/ ~~phi \\/ ~phi -> ~(phi /\\ ~phi /\\ chi)"),
    ("or-mono", "(phi -> psi) -> (phi \\/ chi -> psi \\/ chi)"),
    ("or-mono-mid", "(phi -> psi) -> (chi \\/ phi \\/ delta -> chi \\/ psi \\/ delta)"),
    ("or-intro", "phi -> phi \\/ psi"),
    ("and-intro", "phi -> (psi -> phi /\\ psi)"),
    ("iff-refl", "phi <-> phi"),
    ("prelin", "(phi -> psi) \\/ (psi -> phi)"),
];

/// Named theorems that proof lines may cite with `thm`.
#[derive(Clone, Debug, Default)]
pub struct TheoremStore {
    theorems: BTreeMap<String, Theorem>,
}

impl TheoremStore {
    pub fn empty() -> Self {
        TheoremStore::default()
    }

    /// MTL theorems used in the derivations, plus the schemes shown
    /// provable in the `○` extensions.
    pub fn seeded() -> Self {
        let mut store = TheoremStore::empty();
        let mut add = |name: &str, text: &str, scope: Scope| {
            let schema = Schema::parse_all_meta(text).expect("seed parses");
            store.theorems.insert(name.to_string(), Theorem { name: name.to_string(), schema, scope });
        };
        for (name, text) in MTL_THEOREMS {
            add(name, text, Scope::Everywhere);
        }
        let nn = vec![Variant::CircNN, Variant::CircNNPlus];
        for id in ["B1", "B2", "B3", "B4"] {
            add(id, super::profile::axiom_text(id).unwrap(), Scope::Variants(nn.clone()));
        }
        add(
            "OEM",
            super::profile::axiom_text("OEM").unwrap(),
            Scope::Variants(vec![Variant::CircNN, Variant::CircNNPlus, Variant::CircMin, Variant::CircDat]),
        );
        add("c", super::profile::axiom_text("c").unwrap(), Scope::Variants(vec![Variant::CircC, Variant::CircMin]));
        store
    }

    pub fn get(&self, name: &str) -> Option<&Theorem> {
        self.theorems.get(name)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Theorem> {
        self.theorems.values()
    }

    pub fn len(&self) -> usize {
        self.theorems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.theorems.is_empty()
    }

    pub fn register(&mut self, theorem: Theorem) -> Result<(), ProofError> {
        if self.theorems.contains_key(&theorem.name) {
            return Err(ProofError::DuplicateTheorem(theorem.name));
        }
        self.theorems.insert(theorem.name.clone(), theorem);
        Ok(())
    }

    /// Register the conclusion of a premise-free proof, for its own
    /// truth-preserving logic only. Variables of the conclusion become
    /// metavariables.
    pub fn register_proof(&mut self, proof: &VerifiedProof) -> Result<(), ProofError> {
        if !proof.conclusion_deps().is_empty() {
            return Err(ProofError::NotATheorem(proof.script.name.clone()));
        }
        let formula: Formula = proof.conclusion().clone();
        let metavars = formula.vars();
        self.register(Theorem {
            name: proof.script.name.clone(),
            schema: Schema { formula, metavars },
            scope: Scope::Profiles(vec![proof.profile.truth_companion().name]),
        })
    }
}
