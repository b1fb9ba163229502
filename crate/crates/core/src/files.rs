//! Line-oriented spec files for chains, operators and proofs.
//!
//! A file holds any number of blocks, each opened by a header line:
//!
//! ```text
//! chain C4
//! kind: finite
//! family: lukasiewicz
//! size: 4
//!
//! op half on LL
//! kind: piecewise
//! breakpoints: 1/2 1/2; 1 1
//! interpolation: linear
//!
//! proof swap in MTL
//! 1. p /\ q | premise 1
//! ...
//! ```
//!
//! A `theorem <name> in <profile>` header is a proof whose conclusion is
//! registered for later `thm` citations once it verifies.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::chain::{Chain, ChainError, Component, Family};
use crate::hilbert::ProofScript;
use crate::operators::{crisp_op, max_op, min_op, piecewise_op, table_op, ConsistencyOp, Interpolation, OpError};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum FileError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("chain `{name}`: {source}")]
    Chain { name: String, source: ChainError },
    #[error("op `{name}`: {source}")]
    Op { name: String, source: OpError },
}

fn syntax(line: usize, message: impl Into<String>) -> FileError {
    FileError::Syntax { line, message: message.into() }
}

/// An operator description, built once its host chain is known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpSpec<S> {
    pub name: String,
    pub chain: String,
    pub kind: OpSpecKind<S>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpSpecKind<S> {
    Min,
    Max,
    Crisp { threshold: S, closed: bool },
    Piecewise { breakpoints: Vec<(S, S)>, interpolation: Interpolation },
    Table(Vec<S>),
}

impl<S: Scalar> OpSpec<S> {
    pub fn build(&self, chain: &Chain<S>) -> Result<ConsistencyOp<S>, FileError> {
        let wrap = |source| FileError::Op { name: self.name.clone(), source };
        let mut op = match &self.kind {
            OpSpecKind::Min => min_op(chain),
            OpSpecKind::Max => max_op(chain),
            OpSpecKind::Crisp { threshold, closed } => crisp_op(chain, threshold, *closed).map_err(wrap)?,
            OpSpecKind::Piecewise { breakpoints, interpolation } => {
                piecewise_op(chain, breakpoints, *interpolation).map_err(wrap)?
            }
            OpSpecKind::Table(values) => table_op(chain, &self.name, values.clone()).map_err(wrap)?,
        };
        op.0.name = self.name.clone();
        Ok(op)
    }
}

#[derive(Clone, Debug)]
pub struct ProofSpec {
    pub script: ProofScript,
    pub register: bool,
}

#[derive(Clone, Debug)]
pub enum Item<S> {
    Chain(Chain<S>),
    Op(OpSpec<S>),
    Proof(ProofSpec),
}

struct Block<'a> {
    header_line: usize,
    header: &'a str,
    body: Vec<(usize, &'a str)>,
}

fn is_header(line: &str) -> bool {
    ["chain ", "op ", "proof ", "theorem "].iter().any(|h| line.starts_with(h))
}

fn blocks(text: &str) -> Result<Vec<Block<'_>>, FileError> {
    let mut out: Vec<Block> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if is_header(line) {
            out.push(Block { header_line: i + 1, header: line, body: vec![] });
        } else if line.is_empty() || line.starts_with("//") {
            if let Some(b) = out.last_mut() {
                b.body.push((i + 1, raw));
            }
        } else {
            match out.last_mut() {
                Some(b) => b.body.push((i + 1, raw)),
                None => return Err(syntax(i + 1, "expected `chain`, `op`, `proof` or `theorem` header")),
            }
        }
    }
    Ok(out)
}

/// Parse every block of a file.
pub fn parse_file<S: Scalar>(text: &str) -> Result<Vec<Item<S>>, FileError> {
    blocks(text)?
        .into_iter()
        .map(|b| {
            if let Some(rest) = b.header.strip_prefix("chain ") {
                parse_chain(rest.trim(), &b).map(Item::Chain)
            } else if let Some(rest) = b.header.strip_prefix("op ") {
                parse_op(rest, &b).map(Item::Op)
            } else {
                parse_proof(&b).map(Item::Proof)
            }
        })
        .collect()
}

fn rational<S: Scalar>(line: usize, text: &str) -> Result<S, FileError> {
    S::parse_exact(text).ok_or_else(|| syntax(line, format!("`{text}` is not a rational p/q")))
}

fn rationals<S: Scalar>(line: usize, text: &str) -> Result<Vec<S>, FileError> {
    text.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).map(|t| rational(line, t)).collect()
}

/// `key: value` pairs, with indented or bare continuation lines appended to
/// the previous key (used by `table:`).
fn fields<'a>(b: &Block<'a>) -> Result<BTreeMap<&'a str, (usize, Vec<&'a str>)>, FileError> {
    let mut map: BTreeMap<&str, (usize, Vec<&str>)> = BTreeMap::new();
    let mut last: Option<&str> = None;
    for &(n, raw) in &b.body {
        let line = raw.trim();
        if line.is_empty() || line.starts_with("//") {
            continue;
        }
        match line.split_once(':') {
            Some((k, v)) if k.trim().chars().all(|c| c.is_ascii_alphabetic()) && !k.trim().is_empty() => {
                let key = k.trim();
                if map.contains_key(key) {
                    return Err(syntax(n, format!("duplicate key `{key}`")));
                }
                let v = v.trim();
                map.insert(key, (n, if v.is_empty() { vec![] } else { vec![v] }));
                last = Some(key);
            }
            _ => match last {
                Some(k) => map.get_mut(k).unwrap().1.push(line),
                None => return Err(syntax(n, "expected `key: value`")),
            },
        }
    }
    Ok(map)
}

fn one<'a>(map: &BTreeMap<&str, (usize, Vec<&'a str>)>, key: &str, at: usize) -> Result<(usize, &'a str), FileError> {
    match map.get(key) {
        Some((n, v)) if v.len() == 1 => Ok((*n, v[0])),
        Some((n, _)) => Err(syntax(*n, format!("`{key}` takes one line"))),
        None => Err(syntax(at, format!("missing `{key}`"))),
    }
}

fn parse_chain<S: Scalar>(name: &str, b: &Block) -> Result<Chain<S>, FileError> {
    if name.is_empty() || name.contains(char::is_whitespace) {
        return Err(syntax(b.header_line, "chain name must be one word"));
    }
    let map = fields(b)?;
    let wrap = |source| FileError::Chain { name: name.to_string(), source };
    let (kn, kind) = one(&map, "kind", b.header_line)?;
    match kind {
        "finite" => {
            if let Some((n, rows)) = map.get("table") {
                let table = rows.iter().map(|r| rationals(*n, r)).collect::<Result<Vec<Vec<S>>, _>>()?;
                Chain::from_table(name, &table).map_err(wrap)
            } else if let Some((n, v)) = map.get("negation") {
                let neg = rationals(*n, &v.join(" "))?;
                Chain::wnm(name, &neg).map_err(wrap)
            } else if let Some((n, v)) = map.get("components") {
                let parts = v
                    .join(" ")
                    .split(';')
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| {
                        let w: Vec<&str> = p.split_whitespace().collect();
                        match w.as_slice() {
                            [fam, size] => {
                                let f: Family = fam.parse().map_err(wrap)?;
                                let k = size.parse().map_err(|_| syntax(*n, format!("bad size `{size}`")))?;
                                Ok((f, k))
                            }
                            _ => Err(syntax(*n, "finite components are `<family> <size>`")),
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Chain::finite_ordinal_sum(name, &parts).map_err(wrap)
            } else {
                let (fnum, fam) = one(&map, "family", kn)?;
                let (sn, size) = one(&map, "size", fnum)?;
                let size: usize = size.parse().map_err(|_| syntax(sn, format!("bad size `{size}`")))?;
                let mut c = match fam.parse::<Family>().map_err(wrap)? {
                    Family::Lukasiewicz => Chain::lukasiewicz(size),
                    Family::Godel => Chain::godel(size),
                    Family::Product => Err(ChainError::NoFiniteFamily("product")),
                }
                .map_err(wrap)?;
                c.name = name.to_string();
                Ok(c)
            }
        }
        "standard" => {
            if let Some((n, v)) = map.get("components") {
                let comps = v
                    .join(" ")
                    .split(';')
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| {
                        let w: Vec<&str> = p.split_whitespace().collect();
                        match w.as_slice() {
                            [fam, lo, hi] => {
                                Ok(Component::new(fam.parse().map_err(wrap)?, rational(*n, lo)?, rational(*n, hi)?))
                            }
                            _ => Err(syntax(*n, "standard components are `<family> <lo> <hi>`")),
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                Chain::standard(name, comps).map_err(wrap)
            } else {
                let (_, fam) = one(&map, "family", kn)?;
                let mut c = Chain::standard_family(fam.parse().map_err(wrap)?);
                c.name = name.to_string();
                Ok(c)
            }
        }
        other => Err(syntax(kn, format!("kind must be finite or standard, not `{other}`"))),
    }
}

fn parse_op<S: Scalar>(rest: &str, b: &Block) -> Result<OpSpec<S>, FileError> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    let (name, chain) = match words.as_slice() {
        [name, "on", chain] => (name.to_string(), chain.to_string()),
        _ => return Err(syntax(b.header_line, "expected `op <name> on <chain>`")),
    };
    let map = fields(b)?;
    let (kn, kind) = one(&map, "kind", b.header_line)?;
    let kind = match kind {
        "min" => OpSpecKind::Min,
        "max" => OpSpecKind::Max,
        "crisp" => {
            let (tn, t) = one(&map, "threshold", kn)?;
            let closed = match map.get("closed") {
                None => true,
                Some((n, v)) => match v.first().copied() {
                    Some("true") => true,
                    Some("false") => false,
                    _ => return Err(syntax(*n, "closed must be true or false")),
                },
            };
            OpSpecKind::Crisp { threshold: rational(tn, t)?, closed }
        }
        "piecewise" => {
            let breakpoints = match map.get("breakpoints") {
                None => vec![],
                Some((n, v)) => v
                    .join(" ")
                    .split(';')
                    .filter(|p| !p.trim().is_empty())
                    .map(|p| match rationals::<S>(*n, p)?.as_slice() {
                        [x, y] => Ok((x.clone(), y.clone())),
                        _ => Err(syntax(*n, "breakpoints are `x value` pairs separated by `;`")),
                    })
                    .collect::<Result<Vec<_>, _>>()?,
            };
            let interpolation = match map.get("interpolation").and_then(|(_, v)| v.first().copied()) {
                None | Some("linear") => Interpolation::Linear,
                Some("step") => Interpolation::Step,
                Some(other) => return Err(syntax(map["interpolation"].0, format!("unknown interpolation `{other}`"))),
            };
            OpSpecKind::Piecewise { breakpoints, interpolation }
        }
        "table" => {
            let (vn, v) =
                map.get("values").map(|(n, v)| (*n, v.join(" "))).ok_or_else(|| syntax(kn, "missing `values`"))?;
            OpSpecKind::Table(rationals(vn, &v)?)
        }
        other => return Err(syntax(kn, format!("unknown op kind `{other}`"))),
    };
    Ok(OpSpec { name, chain, kind })
}

fn parse_proof(b: &Block) -> Result<ProofSpec, FileError> {
    let (header, register) = match b.header.strip_prefix("theorem ") {
        Some(rest) => (format!("proof {rest}"), true),
        None => (b.header.to_string(), false),
    };
    let mut text = header;
    for (_, raw) in &b.body {
        text.push('\n');
        text.push_str(raw);
    }
    let script: ProofScript = text
        .parse()
        .map_err(|e: crate::hilbert::ScriptError| syntax(b.header_line + e.line.saturating_sub(1), e.message))?;
    Ok(ProofSpec { script, register })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::validate_c;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(n: i64, d: i64) -> Q {
        Q::from_frac(n, d)
    }

    #[test]
    fn chains_of_every_shape() {
        let text = "\
chain C4
kind: finite
family: lukasiewicz
size: 4

chain T3
kind: finite
table:
  0 0 0
  0 1/2 1/2
  0 1/2 1

chain N
kind: finite
negation: 1 1/2 0

chain S
kind: finite
components: lukasiewicz 3; godel 3

chain LPx
kind: standard
components: lukasiewicz 0 1/2; product 1/2 1

chain SLx
kind: standard
family: lukasiewicz
";
        let items: Vec<Item<Q>> = parse_file(text).unwrap();
        let chains: Vec<Chain<Q>> = items
            .into_iter()
            .map(|i| match i {
                Item::Chain(c) => c,
                _ => panic!(),
            })
            .collect();
        assert_eq!(
            chains.iter().map(|c| c.size()).collect::<Vec<_>>(),
            [Some(4), Some(3), Some(3), Some(5), None, None]
        );
        assert_eq!(chains[1].tnorm(&q(1, 2), &q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(chains[2].negation(&q(1, 2)).unwrap(), q(1, 2));
        assert_eq!(chains[4].tnorm(&q(3, 4), &q(3, 4)).unwrap(), q(5, 8));
        assert_eq!(chains[5].name, "SLx");
    }

    #[test]
    fn ops_and_proofs() {
        let text = "\
// operators on the built-ins
op id on LL
kind: piecewise
breakpoints: 1/2 1/2; 1 1
interpolation: linear

op lp on LP
kind: crisp
threshold: 3/4

op t on L3
kind: table
values: 1 0 1

theorem self in MTL
1. p -> p | thm id
";
        let items: Vec<Item<Q>> = parse_file(text).unwrap();
        assert_eq!(items.len(), 4);
        let Item::Op(spec) = &items[0] else { panic!() };
        let ll = crate::catalog::builtin_chain::<Q>("LL").unwrap();
        let op = spec.build(&ll).unwrap();
        assert_eq!(op.apply(&ll, &q(3, 5)), q(3, 5));
        assert!(validate_c(&ll, &op).unwrap().valid);
        let Item::Op(spec) = &items[1] else { panic!() };
        assert_eq!(spec.kind, OpSpecKind::Crisp { threshold: q(3, 4), closed: true });
        let Item::Proof(p) = &items[3] else { panic!() };
        assert!(p.register);
        assert_eq!(p.script.name, "self");
    }

    #[test]
    fn errors_carry_lines() {
        let e = parse_file::<Q>("chain A\nkind: finite\nfamily: godel\nsize: x\n").unwrap_err();
        assert_eq!(e, FileError::Syntax { line: 4, message: "bad size `x`".into() });
        assert!(matches!(parse_file::<Q>("kind: finite\n"), Err(FileError::Syntax { line: 1, .. })));
        assert!(matches!(
            parse_file::<Q>("op a on L3\nkind: crisp\nthreshold: 1/0\n"),
            Err(FileError::Syntax { line: 3, .. })
        ));
        assert!(matches!(parse_file::<Q>("chain B\nkind: finite\nnegation: 1 1 0\n"), Err(FileError::Chain { .. })));
        assert!(matches!(parse_file::<Q>("op x L3\n"), Err(FileError::Syntax { line: 1, .. })));
    }
}
