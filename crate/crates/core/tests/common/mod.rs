//! Reference semantics written directly from the textbook definitions, used
//! to cross-check the library.

#![allow(dead_code)]

use std::collections::BTreeMap;

use lfi_core::formula::Formula;
use lfi_core::Rational as Q;
use num_traits::{One, Zero};

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}

pub fn zero() -> Q {
    Q::zero()
}

pub fn one() -> Q {
    Q::one()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fam {
    L,
    G,
    P,
}

fn unit_t(f: Fam, x: &Q, y: &Q) -> Q {
    match f {
        Fam::L => (x + y - one()).max(zero()),
        Fam::G => x.min(y).clone(),
        Fam::P => x * y,
    }
}

fn unit_r(f: Fam, x: &Q, y: &Q) -> Q {
    if x <= y {
        return one();
    }
    match f {
        Fam::L => one() - x + y,
        Fam::G => y.clone(),
        Fam::P => y / x,
    }
}

#[derive(Clone, Debug)]
enum Kind {
    /// Components `(family, lo, hi)` tiling `[0,1]`; min across them.
    Sum(Vec<(Fam, Q, Q)>),
    /// Weak nilpotent minimum from its negation on the carrier.
    Wnm(BTreeMap<Q, Q>),
}

/// A chain given by its operations, with an optional finite carrier.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub name: String,
    pub carrier: Option<Vec<Q>>,
    kind: Kind,
}

fn grid(n: usize) -> Vec<Q> {
    (0..n).map(|i| q(i as i64, n as i64 - 1)).collect()
}

impl Oracle {
    pub fn luk(n: usize) -> Self {
        Oracle { name: format!("L{n}"), carrier: Some(grid(n)), kind: Kind::Sum(vec![(Fam::L, zero(), one())]) }
    }

    pub fn godel(n: usize) -> Self {
        Oracle { name: format!("G{n}"), carrier: Some(grid(n)), kind: Kind::Sum(vec![(Fam::G, zero(), one())]) }
    }

    pub fn standard(name: &str, parts: Vec<(Fam, Q, Q)>) -> Self {
        Oracle { name: name.into(), carrier: None, kind: Kind::Sum(parts) }
    }

    pub fn wnm(name: &str, negation_numerators: &[i64]) -> Self {
        let n = negation_numerators.len() as i64 - 1;
        let carrier: Vec<Q> = (0..=n).map(|i| q(i, n)).collect();
        let neg = carrier.iter().cloned().zip(negation_numerators.iter().map(|&k| q(k, n))).collect();
        Oracle { name: name.into(), carrier: Some(carrier), kind: Kind::Wnm(neg) }
    }

    /// The oracle for a built-in chain name.
    pub fn builtin(name: &str) -> Self {
        let half = q(1, 2);
        match name {
            "B2" => Oracle { name: "B2".into(), ..Oracle::luk(2) },
            "L3" => Oracle::luk(3),
            "L5" => Oracle::luk(5),
            "G3" => Oracle::godel(3),
            "G5" => Oracle::godel(5),
            "L3G3" => Oracle {
                name: "L3G3".into(),
                carrier: Some(grid(5)),
                kind: Kind::Sum(vec![(Fam::L, zero(), half.clone()), (Fam::G, half, one())]),
            },
            "NM6" => Oracle::wnm("NM6", &[5, 4, 3, 2, 1, 0]),
            "W15" => Oracle::wnm("W15", &[15, 14, 13, 12, 8, 7, 6, 5, 4, 3, 3, 3, 3, 2, 1, 0]),
            "LG" => Oracle::standard("LG", vec![(Fam::L, zero(), half.clone()), (Fam::G, half, one())]),
            "LP" => Oracle::standard("LP", vec![(Fam::L, zero(), half.clone()), (Fam::P, half, one())]),
            "LL" => Oracle::standard("LL", vec![(Fam::L, zero(), half.clone()), (Fam::L, half, one())]),
            other => panic!("no oracle for {other}"),
        }
    }

    pub fn t(&self, x: &Q, y: &Q) -> Q {
        match &self.kind {
            Kind::Sum(parts) => {
                for (f, a, b) in parts {
                    if a <= x && x <= b && a <= y && y <= b {
                        let w = b - a;
                        return a + &w * unit_t(*f, &((x - a) / &w), &((y - a) / &w));
                    }
                }
                x.min(y).clone()
            }
            Kind::Wnm(neg) => {
                if *x > neg[y] {
                    x.min(y).clone()
                } else {
                    zero()
                }
            }
        }
    }

    pub fn r(&self, x: &Q, y: &Q) -> Q {
        if x <= y {
            return one();
        }
        match (&self.carrier, &self.kind) {
            (Some(c), _) => c.iter().filter(|z| self.t(x, z) <= *y).max().unwrap().clone(),
            (None, Kind::Sum(parts)) => {
                for (f, a, b) in parts {
                    if a <= y && x <= b {
                        let w = b - a;
                        let v = unit_r(*f, &((x - a) / &w), &((y - a) / &w));
                        return a + &w * v;
                    }
                }
                y.clone()
            }
            (None, Kind::Wnm(_)) => unreachable!(),
        }
    }

    pub fn neg(&self, x: &Q) -> Q {
        self.r(x, &zero())
    }

    pub fn elements(&self) -> &[Q] {
        self.carrier.as_deref().expect("finite oracle")
    }
}

/// A unary operator as a plain function.
pub type Op<'a> = &'a dyn Fn(&Q) -> Q;

pub fn eval(f: &Formula, c: &Oracle, circ: Option<Op>, bullet: Option<Op>, env: &BTreeMap<String, Q>) -> Q {
    let ev = |g: &Formula| eval(g, c, circ, bullet, env);
    match f {
        Formula::Var(v) => env[v].clone(),
        Formula::Zero => zero(),
        Formula::One => one(),
        Formula::Not(a) => c.neg(&ev(a)),
        Formula::Circ(a) => circ.expect("circ")(&ev(a)),
        Formula::Bullet(a) => bullet.expect("bullet")(&ev(a)),
        Formula::Delta(a) => {
            if ev(a).is_one() {
                one()
            } else {
                zero()
            }
        }
        Formula::And(a, b) => ev(a).min(ev(b)),
        Formula::Fuse(a, b) => c.t(&ev(a), &ev(b)),
        Formula::Or(a, b) => ev(a).max(ev(b)),
        Formula::Imp(a, b) => c.r(&ev(a), &ev(b)),
        Formula::Iff(a, b) => {
            let (x, y) = (ev(a), ev(b));
            c.r(&x, &y).min(c.r(&y, &x))
        }
    }
}

/// Every assignment of the carrier to `vars`.
pub fn assignments(vars: &[String], carrier: &[Q]) -> Vec<BTreeMap<String, Q>> {
    let mut out = vec![BTreeMap::new()];
    for v in vars {
        out = out
            .into_iter()
            .flat_map(|m| {
                carrier.iter().map(move |x| {
                    let mut m = m.clone();
                    m.insert(v.clone(), x.clone());
                    m
                })
            })
            .collect();
    }
    out
}

fn vars_of(fs: &[&Formula]) -> Vec<String> {
    let mut vs: Vec<String> = fs.iter().flat_map(|f| f.vars()).collect();
    vs.sort();
    vs.dedup();
    vs
}

/// Exhaustive truth-preserving consequence on a finite oracle.
pub fn truth_holds(c: &Oracle, circ: Option<Op>, bullet: Option<Op>, premises: &[Formula], goal: &Formula) -> bool {
    let mut all: Vec<&Formula> = premises.iter().collect();
    all.push(goal);
    assignments(&vars_of(&all), c.elements()).iter().all(|env| {
        !premises.iter().all(|p| eval(p, c, circ, bullet, env).is_one()) || eval(goal, c, circ, bullet, env).is_one()
    })
}

/// Exhaustive degree-preserving consequence on a finite oracle.
pub fn degree_holds(c: &Oracle, circ: Option<Op>, bullet: Option<Op>, premises: &[Formula], goal: &Formula) -> bool {
    let mut all: Vec<&Formula> = premises.iter().collect();
    all.push(goal);
    assignments(&vars_of(&all), c.elements()).iter().all(|env| {
        let low = premises.iter().map(|p| eval(p, c, circ, bullet, env)).min().unwrap_or_else(one);
        low <= eval(goal, c, circ, bullet, env)
    })
}

/// Operation tables of a finite oracle, by element index.
pub struct Tables {
    pub n: usize,
    pub t: Vec<Vec<usize>>,
    pub r: Vec<Vec<usize>>,
    pub neg: Vec<usize>,
}

impl Tables {
    pub fn new(c: &Oracle) -> Self {
        let xs = c.elements();
        let n = xs.len();
        let idx = |v: Q| xs.iter().position(|x| *x == v).expect("closed under the operations");
        let t: Vec<Vec<usize>> = xs.iter().map(|x| xs.iter().map(|y| idx(c.t(x, y))).collect()).collect();
        let r: Vec<Vec<usize>> = xs.iter().map(|x| xs.iter().map(|y| idx(c.r(x, y))).collect()).collect();
        let neg = (0..n).map(|i| r[i][0]).collect();
        Tables { n, t, r, neg }
    }

    /// The postulates (c1)-(c3) for a map given by indices.
    pub fn postulates_c(&self, o: &[usize]) -> bool {
        let top = self.n - 1;
        let c1 = (0..self.n).all(|x| x.min(self.neg[x]) == 0 || o[x] == 0);
        let c2 = o[0] == top && o[top] == top;
        let c3 = (0..self.n).all(|x| self.neg[x] != 0 || (x..self.n).all(|y| o[x] <= o[y]));
        c1 && c2 && c3
    }

    /// The algebraic conditions (O1)-(O3), quantified over all `x, y, z`.
    pub fn conditions_algebraic(&self, o: &[usize]) -> bool {
        let top = self.n - 1;
        let a1 = (0..self.n).all(|x| x.min(self.neg[x]).min(o[x]) == 0);
        let a2 = o[0] == top && o[top] == top;
        let a3 = (0..self.n).all(|x| {
            (0..self.n).all(|y| {
                (0..self.n).all(|z| {
                    let premise = self.neg[self.neg[x]].min(self.r[x][y]).max(z);
                    premise != top || self.r[o[x]][o[y]].max(z) == top
                })
            })
        });
        a1 && a2 && a3
    }
}

/// The postulates (•1)-(•3).
pub fn postulates_bullet(c: &Oracle, b: &dyn Fn(&Q) -> Q) -> bool {
    let xs = c.elements();
    let b1 = xs.iter().all(|x| c.neg(x.min(&c.neg(x))).max(b(x)).is_one());
    let b2 = b(&zero()).is_zero() && b(&one()).is_zero();
    let b3 = xs.iter().all(|x| !c.neg(x).is_zero() || xs.iter().filter(|y| *y >= x).all(|y| b(y) <= b(x)));
    b1 && b2 && b3
}

pub fn oracle_min(x: &Q) -> Q {
    if x.is_zero() || x.is_one() {
        one()
    } else {
        zero()
    }
}

pub fn oracle_max(c: &Oracle, x: &Q) -> Q {
    if x.is_zero() || c.neg(x).is_zero() {
        one()
    } else {
        zero()
    }
}

/// Classical truth tables over `{0,1}`.
pub fn two_valued_taut(f: &Formula) -> bool {
    let b2 = Oracle::luk(2);
    let vars = vars_of(&[f]);
    assignments(&vars, b2.elements()).iter().all(|env| eval(f, &b2, None, None, env).is_one())
}
