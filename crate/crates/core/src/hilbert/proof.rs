use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use super::profile::{load_profile, LogicProfile, Rule};
use super::theorems::TheoremStore;
use super::ProofError;
use crate::formula::{parse, Binding, Formula, Schema};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    Axiom(String),
    Premise(usize),
    /// `mp i j`: line `j` is `line i → this line`.
    Mp(usize, usize),
    Rule(String, Vec<usize>),
    Theorem(String),
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Axiom(id) => write!(f, "axiom {id}"),
            Justification::Premise(k) => write!(f, "premise {k}"),
            Justification::Mp(i, j) => write!(f, "mp {i} {j}"),
            Justification::Rule(id, refs) => {
                write!(f, "rule {id}")?;
                for r in refs {
                    write!(f, " {r}")?;
                }
                Ok(())
            }
            Justification::Theorem(name) => write!(f, "thm {name}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofLine {
    pub number: usize,
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub name: String,
    pub profile: String,
    pub lines: Vec<ProofLine>,
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("proof script line {line}: {message}")]
pub struct ScriptError {
    /// 1-based line of the input text.
    pub line: usize,
    pub message: String,
}

impl FromStr for ProofScript {
    type Err = ScriptError;

    /// ```text
    /// proof <name> in <profile>
    /// n. <formula> | axiom <id> | premise <k> | mp <i> <j> | rule <id> <i...> | thm <name>
    /// ```
    /// Blank lines and lines starting with `//` are skipped.
    fn from_str(text: &str) -> Result<Self, ScriptError> {
        let mut header: Option<(String, String)> = None;
        let mut lines = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let at = idx + 1;
            let err = |message: String| ScriptError { line: at, message };
            let line = raw.trim();
            if line.is_empty() || line.starts_with("//") {
                continue;
            }
            if header.is_none() {
                let rest =
                    line.strip_prefix("proof ").ok_or_else(|| err("expected `proof <name> in <profile>`".into()))?;
                let (name, profile) =
                    rest.rsplit_once(" in ").ok_or_else(|| err("expected `proof <name> in <profile>`".into()))?;
                header = Some((name.trim().to_string(), profile.trim().to_string()));
                continue;
            }
            let (num, rest) =
                line.split_once('.').ok_or_else(|| err("expected `n. <formula> | <justification>`".into()))?;
            let number: usize = num.trim().parse().map_err(|_| err(format!("bad line number `{}`", num.trim())))?;
            let (formula, just) =
                rest.split_once('|').ok_or_else(|| err("missing `|` before the justification".into()))?;
            let formula = parse(formula.trim()).map_err(|e| err(e.to_string()))?;
            let justification = parse_justification(just.trim()).map_err(err)?;
            lines.push(ProofLine { number, formula, justification });
        }
        let (name, profile) = header.ok_or(ScriptError { line: 0, message: "empty proof script".into() })?;
        Ok(ProofScript { name, profile, lines })
    }
}

fn parse_justification(text: &str) -> Result<Justification, String> {
    let words: Vec<&str> = text.split_whitespace().collect();
    let num = |s: &str| s.parse::<usize>().map_err(|_| format!("expected a line number, found `{s}`"));
    match words.as_slice() {
        ["axiom", id] => Ok(Justification::Axiom(id.to_string())),
        ["premise", k] => Ok(Justification::Premise(num(k)?)),
        ["mp", i, j] => Ok(Justification::Mp(num(i)?, num(j)?)),
        ["rule", id, refs @ ..] => {
            Ok(Justification::Rule(id.to_string(), refs.iter().map(|r| num(r)).collect::<Result<_, _>>()?))
        }
        ["thm", name] => Ok(Justification::Theorem(name.to_string())),
        _ => Err(format!("cannot read justification `{text}`")),
    }
}

impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "proof {} in {}", self.name, self.profile)?;
        for l in &self.lines {
            writeln!(f, "{}. {} | {}", l.number, l.formula, l.justification)?;
        }
        Ok(())
    }
}

/// A checked proof with the premise dependencies of every line.
#[derive(Clone, Debug)]
pub struct VerifiedProof {
    pub script: ProofScript,
    pub profile: LogicProfile,
    pub deps: Vec<BTreeSet<usize>>,
    pub premises: BTreeMap<usize, Formula>,
}

impl VerifiedProof {
    pub fn conclusion(&self) -> &Formula {
        &self.script.lines.last().expect("non-empty proof").formula
    }

    pub fn conclusion_deps(&self) -> &BTreeSet<usize> {
        self.deps.last().expect("non-empty proof")
    }

    pub fn premise_formulas(&self, deps: &BTreeSet<usize>) -> Vec<Formula> {
        deps.iter().map(|k| self.premises[k].clone()).collect()
    }
}

/// Match schemas against formulas under one binding, first syntactically,
/// then after expanding the defined connectives on both sides.
fn match_all(schemas: &[&Schema], formulas: &[&Formula]) -> bool {
    let attempt = |norm: bool| {
        let mut b = Binding::new();
        schemas.iter().zip(formulas).all(|(s, f)| {
            if norm {
                let s = Schema { formula: s.formula.normalize(), metavars: s.metavars.clone() };
                s.match_into(&f.normalize(), &mut b)
            } else {
                s.match_into(f, &mut b)
            }
        })
    };
    attempt(false) || attempt(true)
}

fn rule_matches(rule: &Rule, inputs: &[&Formula], output: &Formula) -> bool {
    let mut formulas: Vec<&Formula> = inputs.to_vec();
    formulas.push(output);
    let full: Vec<&Schema> = rule.premises.iter().chain(std::iter::once(&rule.conclusion)).collect();
    if match_all(&full, &formulas) {
        return true;
    }
    match &rule.plain {
        Some((premises, conclusion)) => {
            let plain: Vec<&Schema> = premises.iter().chain(std::iter::once(conclusion)).collect();
            match_all(&plain, &formulas)
        }
        None => false,
    }
}

/// Check a script against its declared profile.
pub fn verify_proof(script: &ProofScript, store: &TheoremStore) -> Result<VerifiedProof, ProofError> {
    let profile = load_profile(&script.profile)?;
    verify_with(script, &profile, store)
}

pub fn verify_with(
    script: &ProofScript,
    profile: &LogicProfile,
    store: &TheoremStore,
) -> Result<VerifiedProof, ProofError> {
    if script.lines.is_empty() {
        return Err(ProofError::EmptyProof);
    }
    let mut deps: Vec<BTreeSet<usize>> = Vec::with_capacity(script.lines.len());
    let mut premises: BTreeMap<usize, Formula> = BTreeMap::new();
    for (pos, l) in script.lines.iter().enumerate() {
        let line = pos + 1;
        if l.number != line {
            return Err(ProofError::LineNumbering { line, found: l.number });
        }
        if let Some(c) = profile.foreign_connective(&l.formula) {
            return Err(ProofError::LanguageMismatch { line, connective: c, profile: profile.name.clone() });
        }
        let earlier = |r: usize| -> Result<&ProofLine, ProofError> {
            if r == 0 || r >= line {
                Err(ProofError::BadReference { line, target: r })
            } else {
                Ok(&script.lines[r - 1])
            }
        };
        let d = match &l.justification {
            Justification::Axiom(id) => {
                let ax = profile.axiom(id).ok_or_else(|| ProofError::UnknownAxiom {
                    line,
                    id: id.clone(),
                    profile: profile.name.clone(),
                })?;
                if !match_all(&[&ax.schema], &[&l.formula]) {
                    return Err(ProofError::SchemaMismatch { line, axiom: id.clone() });
                }
                BTreeSet::new()
            }
            Justification::Theorem(name) => {
                let thm = store.get(name).filter(|t| t.available_in(profile)).ok_or_else(|| {
                    ProofError::UnknownTheorem { line, name: name.clone(), profile: profile.name.clone() }
                })?;
                if !match_all(&[&thm.schema], &[&l.formula]) {
                    return Err(ProofError::SchemaMismatch { line, axiom: name.clone() });
                }
                BTreeSet::new()
            }
            Justification::Premise(k) => {
                if let Some(prev) = premises.get(k) {
                    if *prev != l.formula {
                        return Err(ProofError::PremiseConflict { line, index: *k });
                    }
                }
                premises.insert(*k, l.formula.clone());
                BTreeSet::from([*k])
            }
            Justification::Mp(i, j) => {
                let id = if profile.degree { "MP-r" } else { "MP" };
                apply_rule(profile, id, &[*i, *j], line, &l.formula, &deps, &earlier)?
            }
            Justification::Rule(id, refs) => apply_rule(profile, id, refs, line, &l.formula, &deps, &earlier)?,
        };
        deps.push(d);
    }
    Ok(VerifiedProof { script: script.clone(), profile: profile.clone(), deps, premises })
}

fn apply_rule<'a>(
    profile: &LogicProfile,
    id: &str,
    refs: &[usize],
    line: usize,
    formula: &Formula,
    deps: &[BTreeSet<usize>],
    earlier: &dyn Fn(usize) -> Result<&'a ProofLine, ProofError>,
) -> Result<BTreeSet<usize>, ProofError> {
    let rule = profile.rule(id).ok_or_else(|| ProofError::UnknownRule {
        line,
        id: id.to_string(),
        profile: profile.name.clone(),
    })?;
    if refs.len() != rule.arity() {
        return Err(ProofError::BadRuleArity {
            line,
            rule: rule.id.clone(),
            expected: rule.arity(),
            found: refs.len(),
        });
    }
    let mut inputs = Vec::with_capacity(refs.len());
    for &r in refs {
        inputs.push(&earlier(r)?.formula);
    }
    for &k in &rule.theorem_premises {
        if !deps[refs[k] - 1].is_empty() {
            return Err(ProofError::RestrictedRuleOnHypothesis { line, rule: rule.id.clone(), premise_line: refs[k] });
        }
    }
    if !rule_matches(rule, &inputs, formula) {
        return Err(ProofError::RuleMismatch { line, rule: rule.id.clone() });
    }
    Ok(refs.iter().flat_map(|&r| deps[r - 1].iter().copied()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(text: &str) -> Result<VerifiedProof, ProofError> {
        verify_proof(&text.parse().unwrap(), &TheoremStore::seeded())
    }

    const IDENTITY: &str = "proof identity in MTL
1. 0 -> 0 | axiom A9
2. (0 -> 0) & p -> p & (0 -> 0) | axiom A3
3. p & (0 -> 0) -> p | axiom A2
4. ((0 -> 0) & p -> p & (0 -> 0)) -> ((p & (0 -> 0) -> p) -> ((0 -> 0) & p -> p)) | axiom A1
5. (p & (0 -> 0) -> p) -> ((0 -> 0) & p -> p) | mp 2 4
6. (0 -> 0) & p -> p | mp 3 5
7. ((0 -> 0) & p -> p) -> ((0 -> 0) -> (p -> p)) | axiom A7b
8. (0 -> 0) -> (p -> p) | mp 6 7
9. p -> p | mp 1 8
";

    #[test]
    fn identity_from_axioms() {
        let v = check(IDENTITY).unwrap();
        assert_eq!(v.conclusion().to_string(), "p -> p");
        assert!(v.conclusion_deps().is_empty());
    }

    #[test]
    fn script_roundtrip() {
        let s: ProofScript = IDENTITY.parse().unwrap();
        let again: ProofScript = s.to_string().parse().unwrap();
        assert_eq!(s, again);
    }

    #[test]
    fn dependencies_are_computed() {
        let v = check("proof mp in MTL\n1. p | premise 1\n2. p -> q | premise 2\n3. q | mp 1 2\n").unwrap();
        assert_eq!(v.conclusion_deps(), &BTreeSet::from([1, 2]));
    }

    #[test]
    fn restricted_modus_ponens() {
        let ok = "proof r in MTL<=\n1. p /\\ q | premise 1\n2. p /\\ q -> p | axiom A4\n3. p | mp 1 2\n";
        assert!(check(ok).is_ok());
        let bad = "proof r in MTL<=\n1. p | premise 1\n2. p -> q | premise 2\n3. q | mp 1 2\n";
        assert_eq!(check(bad).unwrap_err().line(), Some(3));
        assert!(matches!(check(bad), Err(ProofError::RestrictedRuleOnHypothesis { premise_line: 2, .. })));
    }

    #[test]
    fn or_form_and_plain_form() {
        let vee = "proof c in MTL_O\n1. (p <-> q) \\/ r | premise 1\n2. (O p <-> O q) \\/ r | rule Cong 1\n";
        assert!(check(vee).is_ok());
        let plain = "proof c in MTL_O\n1. p <-> q | premise 1\n2. O p <-> O q | rule Cong 1\n";
        assert!(check(plain).is_ok());
        let wrong = "proof c in MTL_O\n1. p <-> q | premise 1\n2. O q <-> O q | rule Cong 1\n";
        assert!(matches!(check(wrong), Err(ProofError::RuleMismatch { line: 2, .. })));
    }

    #[test]
    fn matching_modulo_definitions() {
        let v = check("proof n in IMTL\n1. ((p -> 0) -> 0) -> p | axiom Inv\n").unwrap();
        assert_eq!(v.script.lines.len(), 1);
    }

    #[test]
    fn errors_name_the_line() {
        let e = check("proof e in MTL\n1. ~~p -> p | axiom Inv\n").unwrap_err();
        assert!(matches!(e, ProofError::UnknownAxiom { line: 1, .. }));
        let e = check("proof e in MTL\n1. p | premise 1\n2. p | mp 1 3\n").unwrap_err();
        assert!(matches!(e, ProofError::BadReference { line: 2, target: 3 }));
        let e = check("proof e in MTL\n1. O p | premise 1\n").unwrap_err();
        assert!(matches!(e, ProofError::LanguageMismatch { line: 1, .. }));
        let e = check("proof e in MTL<=\n1. p | premise 1\n2. p | rule Adj 1\n").unwrap_err();
        assert!(matches!(e, ProofError::BadRuleArity { line: 2, expected: 2, found: 1, .. }));
        let e = check("proof e in MTL\n1. p | premise 1\n3. p | premise 1\n").unwrap_err();
        assert!(matches!(e, ProofError::LineNumbering { line: 2, found: 3 }));
        let e = check("proof e in MTL\n1. ~O p \\/ p \\/ ~p | thm B1\n").unwrap_err();
        assert!(e.line() == Some(1));
    }

    #[test]
    fn script_errors() {
        assert!("1. p | axiom A1".parse::<ProofScript>().is_err());
        assert!("proof x in MTL\n1. p axiom A1".parse::<ProofScript>().is_err());
        assert!("proof x in MTL\n1. p | frobnicate".parse::<ProofScript>().is_err());
    }
}
