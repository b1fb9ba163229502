//! Propositional formulas over `0̄, ∧, &, →`, the defined connectives
//! `¬, ∨, ↔, 1̄` and the unary operators `○` (consistency), `•`
//! (inconsistency) and `Δ` (projection).

mod parse;
mod schema;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::{parse, ParseError};
pub use schema::{match_schema, substitute, Binding, Schema};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Zero,
    One,
    Not(Box<Formula>),
    Circ(Box<Formula>),
    Bullet(Box<Formula>),
    Delta(Box<Formula>),
    /// Weak conjunction `∧`.
    And(Box<Formula>, Box<Formula>),
    /// Strong conjunction `&`.
    Fuse(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

/// Output alphabet for [`Formula::render`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Notation {
    #[default]
    Ascii,
    Unicode,
}

pub fn var(name: &str) -> Formula {
    Formula::Var(name.to_string())
}

impl Formula {
    pub fn not(self) -> Formula {
        Formula::Not(Box::new(self))
    }
    pub fn circ(self) -> Formula {
        Formula::Circ(Box::new(self))
    }
    pub fn bullet(self) -> Formula {
        Formula::Bullet(Box::new(self))
    }
    pub fn delta(self) -> Formula {
        Formula::Delta(Box::new(self))
    }
    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }
    pub fn fuse(self, other: Formula) -> Formula {
        Formula::Fuse(Box::new(self), Box::new(other))
    }
    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }
    pub fn imp(self, other: Formula) -> Formula {
        Formula::Imp(Box::new(self), Box::new(other))
    }
    pub fn iff(self, other: Formula) -> Formula {
        Formula::Iff(Box::new(self), Box::new(other))
    }

    /// `⋀ items`, left nested; the empty conjunction is `1̄`.
    pub fn conjunction<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items.into_iter().reduce(|acc, f| acc.and(f)).unwrap_or(Formula::One)
    }

    /// `self & ... & self` with `n` copies, left nested. `n = 0` gives `1̄`.
    pub fn power(&self, n: usize) -> Formula {
        match n {
            0 => Formula::One,
            _ => (1..n).fold(self.clone(), |acc, _| acc.fuse(self.clone())),
        }
    }

    /// Rewrite into the core language `{Var, 0̄, ∧, &, →, ○, •, Δ}`.
    pub fn normalize(&self) -> Formula {
        use Formula::*;
        match self {
            Var(_) | Zero => self.clone(),
            One => Zero.imp(Zero),
            Not(f) => f.normalize().imp(Zero),
            Circ(f) => f.normalize().circ(),
            Bullet(f) => f.normalize().bullet(),
            Delta(f) => f.normalize().delta(),
            And(a, b) => a.normalize().and(b.normalize()),
            Fuse(a, b) => a.normalize().fuse(b.normalize()),
            Imp(a, b) => a.normalize().imp(b.normalize()),
            Or(a, b) => {
                let (a, b) = (a.normalize(), b.normalize());
                let left = a.clone().imp(b.clone()).imp(b.clone());
                let right = b.imp(a.clone()).imp(a);
                left.and(right)
            }
            Iff(a, b) => {
                let (a, b) = (a.normalize(), b.normalize());
                a.clone().imp(b.clone()).and(b.imp(a))
            }
        }
    }

    pub fn is_core(&self) -> bool {
        use Formula::*;
        match self {
            Var(_) | Zero => true,
            One | Not(_) | Or(..) | Iff(..) => false,
            Circ(f) | Bullet(f) | Delta(f) => f.is_core(),
            And(a, b) | Fuse(a, b) | Imp(a, b) => a.is_core() && b.is_core(),
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        use Formula::*;
        match self {
            Var(_) | Zero | One => vec![],
            Not(f) | Circ(f) | Bullet(f) | Delta(f) => vec![f],
            And(a, b) | Fuse(a, b) | Or(a, b) | Imp(a, b) | Iff(a, b) => vec![a, b],
        }
    }

    /// Variables in sorted order.
    pub fn vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    pub(crate) fn collect_vars(&self, out: &mut BTreeSet<String>) {
        if let Formula::Var(v) = self {
            out.insert(v.clone());
        }
        for c in self.children() {
            c.collect_vars(out);
        }
    }

    pub fn depth(&self) -> usize {
        1 + self.children().iter().map(|c| c.depth()).max().unwrap_or(0)
    }

    pub fn uses_circ(&self) -> bool {
        matches!(self, Formula::Circ(_)) || self.children().iter().any(|c| c.uses_circ())
    }

    pub fn uses_bullet(&self) -> bool {
        matches!(self, Formula::Bullet(_)) || self.children().iter().any(|c| c.uses_bullet())
    }

    pub fn uses_delta(&self) -> bool {
        matches!(self, Formula::Delta(_)) || self.children().iter().any(|c| c.uses_delta())
    }

    /// No `○`, `•` or `Δ` anywhere.
    pub fn is_classical(&self) -> bool {
        !self.uses_circ() && !self.uses_bullet() && !self.uses_delta()
    }

    /// Apply `f` bottom-up to every node.
    pub fn map_bottom_up(&self, f: &impl Fn(Formula) -> Formula) -> Formula {
        use Formula::*;
        let rebuilt = match self {
            Var(_) | Zero | One => self.clone(),
            Not(a) => a.map_bottom_up(f).not(),
            Circ(a) => a.map_bottom_up(f).circ(),
            Bullet(a) => a.map_bottom_up(f).bullet(),
            Delta(a) => a.map_bottom_up(f).delta(),
            And(a, b) => a.map_bottom_up(f).and(b.map_bottom_up(f)),
            Fuse(a, b) => a.map_bottom_up(f).fuse(b.map_bottom_up(f)),
            Or(a, b) => a.map_bottom_up(f).or(b.map_bottom_up(f)),
            Imp(a, b) => a.map_bottom_up(f).imp(b.map_bottom_up(f)),
            Iff(a, b) => a.map_bottom_up(f).iff(b.map_bottom_up(f)),
        };
        f(rebuilt)
    }

    /// Translation `○ ↦ ¬•`.
    pub fn circ_to_bullet(&self) -> Formula {
        self.map_bottom_up(&|f| match f {
            Formula::Circ(a) => Formula::Bullet(a).not(),
            other => other,
        })
    }

    /// Translation `• ↦ ¬○`.
    pub fn bullet_to_circ(&self) -> Formula {
        self.map_bottom_up(&|f| match f {
            Formula::Bullet(a) => Formula::Circ(a).not(),
            other => other,
        })
    }

    pub fn render(&self, notation: Notation) -> String {
        let mut out = String::new();
        self.write_to(&mut out, notation);
        out
    }

    fn precedence(&self) -> u8 {
        use Formula::*;
        match self {
            Imp(..) | Iff(..) => 1,
            Or(..) => 2,
            And(..) => 3,
            Fuse(..) => 4,
            Not(_) | Circ(_) | Bullet(_) | Delta(_) => 5,
            Var(_) | Zero | One => 6,
        }
    }

    fn write_to(&self, out: &mut String, notation: Notation) {
        use Formula::*;
        let uni = notation == Notation::Unicode;
        match self {
            Var(v) => out.push_str(v),
            Zero => out.push_str(if uni { "0̄" } else { "0" }),
            One => out.push_str(if uni { "1̄" } else { "1" }),
            Not(a) | Circ(a) | Bullet(a) | Delta(a) => {
                let sym = match (self, uni) {
                    (Not(_), false) => "~",
                    (Not(_), true) => "¬",
                    (Circ(_), false) => "O ",
                    (Circ(_), true) => "○",
                    (Bullet(_), false) => "#",
                    (Bullet(_), true) => "•",
                    (_, false) => "D ",
                    (_, true) => "Δ",
                };
                out.push_str(sym);
                write_child(a, out, notation, a.precedence() < 5);
            }
            And(a, b) | Fuse(a, b) | Or(a, b) => {
                let p = self.precedence();
                let sym = match (self, uni) {
                    (And(..), false) => " /\\ ",
                    (And(..), true) => " ∧ ",
                    (Fuse(..), _) => " & ",
                    (_, false) => " \\/ ",
                    (_, true) => " ∨ ",
                };
                write_child(a, out, notation, a.precedence() < p);
                out.push_str(sym);
                write_child(b, out, notation, b.precedence() <= p);
            }
            Imp(a, b) | Iff(a, b) => {
                let is_imp = matches!(self, Imp(..));
                let sym = match (is_imp, uni) {
                    (true, false) => " -> ",
                    (true, true) => " → ",
                    (false, false) => " <-> ",
                    (false, true) => " ↔ ",
                };
                write_child(a, out, notation, a.precedence() <= 1);
                out.push_str(sym);
                let same = matches!((is_imp, &**b), (true, Imp(..)) | (false, Iff(..)));
                write_child(b, out, notation, b.precedence() <= 1 && !same);
            }
        }
    }
}

fn write_child(f: &Formula, out: &mut String, notation: Notation, parens: bool) {
    if parens {
        out.push('(');
        f.write_to(out, notation);
        out.push(')');
    } else {
        f.write_to(out, notation);
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(Notation::Ascii))
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p() -> Formula {
        var("p")
    }
    fn q() -> Formula {
        var("q")
    }

    #[test]
    fn normalize_disjunction() {
        let expected = p().imp(q()).imp(q()).and(q().imp(p()).imp(p()));
        assert_eq!(p().or(q()).normalize(), expected);
    }

    #[test]
    fn normalize_negation_and_constants() {
        assert_eq!(p().not().normalize(), p().imp(Formula::Zero));
        assert_eq!(p().normalize(), p());
        assert_eq!(Formula::One.normalize(), Formula::Zero.imp(Formula::Zero));
        assert_eq!(p().iff(q()).normalize(), p().imp(q()).and(q().imp(p())));
    }

    #[test]
    fn normalize_is_idempotent_and_core() {
        let f: Formula = "O(p \\/ ~q) <-> D(1 & #r)".parse().unwrap();
        let n = f.normalize();
        assert!(n.is_core());
        assert_eq!(n.normalize(), n);
        assert_eq!(n.vars(), f.vars());
    }

    #[test]
    fn powers() {
        assert_eq!(p().power(0), Formula::One);
        assert_eq!(p().power(1), p());
        let em = p().or(p().not());
        assert_eq!(em.power(2), em.clone().fuse(em.clone()));
        assert_eq!(p().power(3), p().fuse(p()).fuse(p()));
    }

    #[test]
    fn render_minimal_parentheses() {
        let cases = [
            "p -> q -> r",
            "(p -> q) -> r",
            "p -> (q <-> r)",
            "p & q /\\ r",
            "p & (q /\\ r)",
            "~(p /\\ ~p /\\ O p)",
            "O (p & q) -> p & q \\/ ~(p & q)",
            "p /\\ (q /\\ r)",
            "~~p",
            "D O #p",
        ];
        for text in cases {
            let f = parse(text).unwrap();
            assert_eq!(f.to_string(), text, "{text}");
        }
    }

    #[test]
    fn unicode_rendering() {
        let f = parse("~(p /\\ ~p /\\ O p)").unwrap();
        assert_eq!(f.render(Notation::Unicode), "¬(p ∧ ¬p ∧ ○p)");
        assert_eq!(parse(&f.render(Notation::Unicode)).unwrap(), f);
    }

    #[test]
    fn translations_between_operators() {
        let f = parse("O p -> #q").unwrap();
        assert_eq!(f.circ_to_bullet(), parse("~#p -> #q").unwrap());
        assert_eq!(f.bullet_to_circ(), parse("O p -> ~O q").unwrap());
    }
}
