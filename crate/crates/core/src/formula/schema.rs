use std::collections::{BTreeMap, BTreeSet};

use super::{parse, Formula, ParseError};

pub type Binding = BTreeMap<String, Formula>;

/// A formula whose variables named in `metavars` range over formulas.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Schema {
    pub formula: Formula,
    pub metavars: BTreeSet<String>,
}

impl Schema {
    pub fn new(formula: Formula, metavars: &[&str]) -> Self {
        Schema { formula, metavars: metavars.iter().map(|m| m.to_string()).collect() }
    }

    /// Parse `text`, treating every variable it contains as a metavariable.
    pub fn parse_all_meta(text: &str) -> Result<Self, ParseError> {
        let formula = parse(text)?;
        let metavars = formula.vars();
        Ok(Schema { formula, metavars })
    }

    pub fn matches(&self, f: &Formula) -> Option<Binding> {
        match_schema(self, f)
    }

    /// Extend `binding` so that this schema matches `f`. On failure the
    /// binding is left unchanged.
    pub fn match_into(&self, f: &Formula, binding: &mut Binding) -> bool {
        let mut scratch = binding.clone();
        if go(&self.formula, f, &self.metavars, &mut scratch) {
            *binding = scratch;
            true
        } else {
            false
        }
    }

    pub fn instantiate(&self, binding: &Binding) -> Formula {
        substitute(&self.formula, binding)
    }
}

pub fn match_schema(s: &Schema, f: &Formula) -> Option<Binding> {
    let mut binding = Binding::new();
    go(&s.formula, f, &s.metavars, &mut binding).then_some(binding)
}

fn go(s: &Formula, f: &Formula, metas: &BTreeSet<String>, b: &mut Binding) -> bool {
    use Formula::*;
    match (s, f) {
        (Var(m), _) if metas.contains(m) => match b.get(m) {
            Some(bound) => bound == f,
            None => {
                b.insert(m.clone(), f.clone());
                true
            }
        },
        (Var(x), Var(y)) => x == y,
        (Zero, Zero) | (One, One) => true,
        (Not(a), Not(x)) | (Circ(a), Circ(x)) | (Bullet(a), Bullet(x)) | (Delta(a), Delta(x)) => go(a, x, metas, b),
        (And(a1, a2), And(x1, x2))
        | (Fuse(a1, a2), Fuse(x1, x2))
        | (Or(a1, a2), Or(x1, x2))
        | (Imp(a1, a2), Imp(x1, x2))
        | (Iff(a1, a2), Iff(x1, x2)) => go(a1, x1, metas, b) && go(a2, x2, metas, b),
        _ => false,
    }
}

/// Replace every variable bound in `binding`; other variables are kept.
pub fn substitute(f: &Formula, binding: &Binding) -> Formula {
    f.map_bottom_up(&|node| match &node {
        Formula::Var(v) => binding.get(v).cloned().unwrap_or(node),
        _ => node,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schema(text: &str, metas: &[&str]) -> Schema {
        Schema::new(parse(text).unwrap(), metas)
    }

    #[test]
    fn excluded_middle_instance() {
        let s = schema("O x -> (x \\/ ~x)", &["x"]);
        let f = parse("O (p&q) -> ((p&q) \\/ ~(p&q))").unwrap();
        let b = match_schema(&s, &f).unwrap();
        assert_eq!(b.len(), 1);
        assert_eq!(b["x"], parse("p & q").unwrap());
        assert_eq!(s.instantiate(&b), f);
    }

    #[test]
    fn inconsistent_binding_fails() {
        let s = schema("x -> x", &["x"]);
        assert!(match_schema(&s, &parse("p -> q").unwrap()).is_none());
    }

    #[test]
    fn repeated_targets_allowed() {
        let s = schema("x & y -> x", &["x", "y"]);
        let b = match_schema(&s, &parse("p & p -> p").unwrap()).unwrap();
        assert_eq!(b["x"], parse("p").unwrap());
        assert_eq!(b["y"], parse("p").unwrap());
    }

    #[test]
    fn non_meta_variables_are_literal() {
        let s = schema("x -> q", &["x"]);
        assert!(s.matches(&parse("r -> q").unwrap()).is_some());
        assert!(s.matches(&parse("r -> s").unwrap()).is_none());
    }

    #[test]
    fn match_into_rolls_back() {
        let s = schema("x -> y", &["x", "y"]);
        let mut b = Binding::new();
        b.insert("x".into(), parse("p").unwrap());
        assert!(!s.match_into(&parse("q -> r").unwrap(), &mut b));
        assert_eq!(b.len(), 1);
        assert!(s.match_into(&parse("p -> r").unwrap(), &mut b));
        assert_eq!(b.len(), 2);
    }
}
