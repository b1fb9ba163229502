//! Proof scripts bundled with the crate.

/// Derivations that verify in their stated profile.
pub const FIXTURE_PROOFS: &[(&str, &str)] = &[
    ("01-identity", include_str!("../../fixtures/proofs/01-identity.proof")),
    ("02-weakening", include_str!("../../fixtures/proofs/02-weakening.proof")),
    ("03-modus-ponens", include_str!("../../fixtures/proofs/03-modus-ponens.proof")),
    ("04-syllogism", include_str!("../../fixtures/proofs/04-syllogism.proof")),
    ("05-ex-falso", include_str!("../../fixtures/proofs/05-ex-falso.proof")),
    ("06-and-elim", include_str!("../../fixtures/proofs/06-and-elim.proof")),
    ("07-involution", include_str!("../../fixtures/proofs/07-involution.proof")),
    ("08-contraction", include_str!("../../fixtures/proofs/08-contraction.proof")),
    ("09-pseudo-complement", include_str!("../../fixtures/proofs/09-pseudo-complement.proof")),
    ("10-delta", include_str!("../../fixtures/proofs/10-delta.proof")),
    ("11-circ-constants", include_str!("../../fixtures/proofs/11-circ-constants.proof")),
    ("12-cong-or-form", include_str!("../../fixtures/proofs/12-cong-or-form.proof")),
    ("13-coherence", include_str!("../../fixtures/proofs/13-coherence.proof")),
    ("14-b1-to-a1", include_str!("../../fixtures/proofs/14-b1-to-a1.proof")),
    ("15-cong-admissible", include_str!("../../fixtures/proofs/15-cong-admissible.proof")),
    ("16-double-negation", include_str!("../../fixtures/proofs/16-double-negation.proof")),
    ("17-crisp", include_str!("../../fixtures/proofs/17-crisp.proof")),
    ("18-min-excluded-middle", include_str!("../../fixtures/proofs/18-min-excluded-middle.proof")),
    ("19-max-rule", include_str!("../../fixtures/proofs/19-max-rule.proof")),
    ("20-bl-max-axiom", include_str!("../../fixtures/proofs/20-bl-max-axiom.proof")),
    ("21-dat-axiom", include_str!("../../fixtures/proofs/21-dat-axiom.proof")),
    ("22-degree-adjunction", include_str!("../../fixtures/proofs/22-degree-adjunction.proof")),
    ("23-degree-cong", include_str!("../../fixtures/proofs/23-degree-cong.proof")),
    ("24-degree-contradiction", include_str!("../../fixtures/proofs/24-degree-contradiction.proof")),
    ("25-bullet-cong", include_str!("../../fixtures/proofs/25-bullet-cong.proof")),
    ("26-bullet-max", include_str!("../../fixtures/proofs/26-bullet-max.proof")),
    ("27-bullet-coh", include_str!("../../fixtures/proofs/27-bullet-coh.proof")),
    ("28-restricted-mp", include_str!("../../fixtures/proofs/28-restricted-mp.proof")),
    ("29-wnm", include_str!("../../fixtures/proofs/29-wnm.proof")),
];

/// Broken derivations with the line the checker must reject.
pub const MUTATIONS: &[(&str, &str, usize)] = &[
    ("cong-admissible-line3", include_str!("../../fixtures/mutations/cong-admissible-line3.proof"), 3),
    ("identity-swapped-mp", include_str!("../../fixtures/mutations/identity-swapped-mp.proof"), 6),
    ("degree-mp-on-hypothesis", include_str!("../../fixtures/mutations/degree-mp-on-hypothesis.proof"), 3),
    ("b1-outside-profile", include_str!("../../fixtures/mutations/b1-outside-profile.proof"), 1),
    ("adjunction-arity", include_str!("../../fixtures/mutations/adjunction-arity.proof"), 3),
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{
        applicable_models, soundness_bridge, verify_proof, BaseLogic, LogicProfile, TheoremStore, Variant,
    };
    use crate::semantics::{consequence, Mode, SearchConfig, Structure};
    use num_rational::BigRational;

    type Q = BigRational;

    #[test]
    fn fixtures_verify_and_are_sound() {
        let store = TheoremStore::seeded();
        assert!(FIXTURE_PROOFS.len() >= 20);
        for (name, text) in FIXTURE_PROOFS {
            let script = text.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
            let proof = verify_proof(&script, &store).unwrap_or_else(|e| panic!("{name}: {e}"));
            let models = applicable_models::<Q>(&proof.profile);
            assert!(!models.is_empty(), "{name}");
            let structures: Vec<Structure<Q>> = models.iter().map(|m| m.structure()).collect();
            let report = soundness_bridge(&proof, &structures).unwrap();
            assert!(report.confirmed(), "{name}: {:?}", report.violations);
        }
    }

    #[test]
    fn mutations_fail_at_their_line() {
        let store = TheoremStore::seeded();
        for (name, text, line) in MUTATIONS {
            let script = text.parse().unwrap_or_else(|e| panic!("{name}: {e}"));
            let err = verify_proof(&script, &store).expect_err(name);
            assert_eq!(err.line(), Some(*line), "{name}: {err}");
        }
    }

    fn valid_on(models: &[crate::hilbert::Model<Q>], f: &crate::formula::Formula) -> bool {
        let cfg = SearchConfig::default();
        models.iter().all(|m| consequence(&[m.structure()], &[], f, Mode::Truth, &cfg).unwrap().holds())
    }

    #[test]
    fn seeded_theorems_are_valid_where_available() {
        let store = TheoremStore::seeded();
        for v in Variant::ALL {
            let p = LogicProfile::new(BaseLogic::Mtl, false, v, false);
            let models = applicable_models::<Q>(&p);
            for t in store.iter().filter(|t| t.available_in(&p)) {
                assert!(valid_on(&models, &t.schema.formula), "{} in {}", t.name, p.name);
            }
        }
    }

    #[test]
    fn circ_and_bullet_axiomatizations_correspond() {
        for v in Variant::ALL.into_iter().filter(|v| v.has_bullet() && v.dual().is_some()) {
            let bp = LogicProfile::new(BaseLogic::Mtl, false, v, false);
            let cp = bp.dual().unwrap();
            let cmodels = applicable_models::<Q>(&cp);
            let bmodels = applicable_models::<Q>(&bp);
            for ax in &bp.axioms {
                assert!(valid_on(&cmodels, &ax.schema.formula.bullet_to_circ()), "{} of {}", ax.id, bp.name);
            }
            for ax in &cp.axioms {
                assert!(valid_on(&bmodels, &ax.schema.formula.circ_to_bullet()), "{} of {}", ax.id, cp.name);
            }
        }
    }
}
