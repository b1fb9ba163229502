use anyhow::{anyhow, bail, Context, Result};
use lfi_core::chain::Filter;
use lfi_core::formula::{parse, Formula, Notation};
use lfi_core::hilbert::{applicable_models, load_profile, soundness_bridge, verify_with};
use lfi_core::operators::{dual, enumerate_ops, validate_algebraic, validate_bullet, validate_c};
use lfi_core::scalar::Scalar;
use lfi_core::semantics::{
    check_dat_axiom, check_lfi, check_propagation, consequence, pdat_search, Connective, ConsequenceResult, Mode,
    PdatOutcome, PowerKind, PropagationOutcome, SearchConfig, Verdict,
};
use lfi_core::suite::{run_suite, SuiteConfig};
use lfi_core::{Chain, ConsistencyOp, Evaluation, InconsistencyOp, Rational, Structure, Workspace};

use crate::report::{Report, EXIT_HOLDS, EXIT_REFUTED, EXIT_UNKNOWN};
use crate::{Command, Global, ModeArg, PowerArg};

type Q = Rational;

struct Ctx {
    ws: Workspace,
    cfg: SearchConfig,
}

impl Ctx {
    fn new(g: &Global) -> Result<Self> {
        let mut ws = Workspace::new();
        for path in &g.load {
            ws.load_path(path)?;
        }
        let cfg = SearchConfig { grid_denominator: g.grid_denominator, ..SearchConfig::default() };
        Ok(Ctx { ws, cfg })
    }

    fn chain(&self, g: &Global) -> Result<Chain> {
        let name = g.chain.as_deref().ok_or_else(|| anyhow!("--chain is required"))?;
        Ok(self.ws.chain(name)?)
    }

    fn op(&self, g: &Global, chain: &Chain) -> Result<Option<ConsistencyOp>> {
        g.op.as_deref().map(|spec| self.ws.op(spec, chain).map_err(Into::into)).transpose()
    }

    fn required_op(&self, g: &Global, chain: &Chain) -> Result<ConsistencyOp> {
        self.op(g, chain)?.ok_or_else(|| anyhow!("--op is required"))
    }
}

fn formula(text: &str) -> Result<Formula> {
    parse(text).with_context(|| format!("cannot parse `{text}`"))
}

fn formulas(text: &str) -> Result<Vec<Formula>> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty()).map(formula).collect()
}

fn rational(text: &str) -> Result<Q> {
    Q::parse_exact(text).ok_or_else(|| anyhow!("`{text}` is not a rational"))
}

fn structure<'a>(
    chain: &'a Chain,
    circ: Option<&'a ConsistencyOp>,
    bullet: Option<&'a InconsistencyOp>,
) -> Structure<'a> {
    let mut s = Structure::new(chain);
    if let Some(op) = circ {
        s = s.with_circ(op);
    }
    if let Some(b) = bullet {
        s = s.with_bullet(b);
    }
    s
}

pub fn run(g: &Global, cmd: &Command) -> Result<Report> {
    let ctx = Ctx::new(g)?;
    match cmd {
        Command::Parse { formula: text } => parse_cmd(text),
        Command::Eval { formula: text, assign } => eval_cmd(&ctx, g, text, assign),
        Command::Taut { formula: text } => {
            let chain = match &g.chain {
                Some(_) => ctx.chain(g)?,
                None => ctx.ws.chain("B2")?,
            };
            conseq_cmd(&ctx, g, &chain, Mode::Truth, &[], &formula(text)?)
        }
        Command::Conseq { mode, premises, goal } => {
            let mode = match mode {
                ModeArg::Truth => Mode::Truth,
                ModeArg::Degree => Mode::Degree,
            };
            conseq_cmd(&ctx, g, &ctx.chain(g)?, mode, &formulas(premises)?, &formula(goal)?)
        }
        Command::ValidateOp { algebraic, dual } => validate_cmd(&ctx, g, *algebraic, *dual),
        Command::EnumOps => enum_cmd(&ctx, g),
        Command::Quotient { filter, principal } => quotient_cmd(&ctx, g, filter.as_deref(), principal.as_deref()),
        Command::LfiReport => lfi_cmd(&ctx, g),
        Command::Propagation { connective, at } => propagation_cmd(&ctx, g, connective, at.as_deref()),
        Command::Dat => dat_cmd(&ctx, g),
        Command::Pdat { formula: text, power } => pdat_cmd(&ctx, g, text, *power),
        Command::Prove { files, bridge } => prove_cmd(ctx, g, files, *bridge),
        Command::Suite { .. } => suite_cmd(g),
    }
}

fn parse_cmd(text: &str) -> Result<Report> {
    let f = formula(text)?;
    let mut r = Report::new(EXIT_HOLDS);
    r.both(format!("ascii {}", f.render(Notation::Ascii)));
    r.both(format!("unicode {}", f.render(Notation::Unicode)));
    r.both(format!("normal {}", f.normalize().render(Notation::Ascii)));
    let vars: Vec<String> = f.vars().into_iter().collect();
    r.both(format!("vars {}", vars.join(" ")).trim_end().to_string());
    r.both(format!("depth {}", f.depth()));
    Ok(r)
}

fn eval_cmd(ctx: &Ctx, g: &Global, text: &str, assign: &str) -> Result<Report> {
    let f = formula(text)?;
    let chain = ctx.chain(g)?;
    let op = ctx.op(g, &chain)?;
    let bullet = op.as_ref().map(|o| dual(&chain, o));
    let mut ev = Evaluation::new(structure(&chain, op.as_ref(), bullet.as_ref()));
    for part in assign.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (v, x) = part.split_once('=').ok_or_else(|| anyhow!("expected `var=value`, found `{part}`"))?;
        let x = rational(x)?;
        if !chain.contains(&x) {
            bail!("{x} is not an element of {}", chain.name);
        }
        ev = ev.set(v.trim(), x);
    }
    let value = ev.evaluate(&f)?;
    let mut r = Report::new(EXIT_HOLDS);
    r.line(format!("{f} = {value} on {}", chain.name));
    r.record(format!("chain {}", chain.name)).record(format!("value={value}"));
    Ok(r)
}

fn conseq_cmd(
    ctx: &Ctx,
    g: &Global,
    chain: &Chain,
    mode: Mode,
    premises: &[Formula],
    goal: &Formula,
) -> Result<Report> {
    let op = ctx.op(g, chain)?;
    let bullet = op.as_ref().map(|o| dual(chain, o));
    let s = structure(chain, op.as_ref(), bullet.as_ref());
    let res = consequence(&[s], premises, goal, mode, &ctx.cfg)?;
    Ok(consequence_report(&s, premises, goal, &res))
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Holds => EXIT_HOLDS,
        Verdict::Fails => EXIT_REFUTED,
        Verdict::Unknown => EXIT_UNKNOWN,
    }
}

fn consequence_report(s: &Structure, premises: &[Formula], goal: &Formula, res: &ConsequenceResult<Q>) -> Report {
    let mut r = Report::new(verdict_code(res.verdict));
    let shown: Vec<String> = premises.iter().map(|p| p.to_string()).collect();
    r.line(format!("{} |= {}  [{} mode on {}]", shown.join(", "), goal, res.mode, s.label()));
    let scope = match res.grid_denominator {
        Some(d) => format!("{} on 1/{d}", res.method),
        None => res.method.to_string(),
    };
    r.line(format!("{}: {} assignments checked ({scope})", res.verdict, res.checked_count));
    if let Some(cm) = &res.countermodel {
        r.line(format!("countermodel {}", cm.assignment_text()));
        if let Some(a) = &cm.witness_a {
            r.line(format!("  a={a}"));
        }
        let vals: Vec<String> = cm.premise_values.iter().map(|v| v.to_string()).collect();
        r.line(format!("  premise values [{}], conclusion value {}", vals.join(", "), cm.conclusion_value));
    }
    r.records.push(format!("structure {}", s.label()));
    r.records.extend(res.records());
    r
}

fn validate_cmd(ctx: &Ctx, g: &Global, algebraic: bool, with_dual: bool) -> Result<Report> {
    let chain = ctx.chain(g)?;
    let op = ctx.required_op(g, &chain)?;
    let mut code = EXIT_HOLDS;
    let mut r = Report::new(EXIT_HOLDS);
    r.line(op.describe(&chain));
    let mut section = |r: &mut Report, label: &str, rep: lfi_core::operators::ValidationReport<Q>| {
        let verdict = match (rep.valid, rep.certified()) {
            (false, _) => {
                code = EXIT_REFUTED;
                "invalid"
            }
            (true, false) => {
                if code == EXIT_HOLDS {
                    code = EXIT_UNKNOWN;
                }
                "not refuted"
            }
            (true, true) => "valid",
        };
        let mut line = format!("{label}: {verdict} ({}, {} points)", rep.method, rep.points_checked);
        if let Some(v) = &rep.violation {
            let w: Vec<String> = v.witness.iter().map(|x| x.to_string()).collect();
            line.push_str(&format!(", fails {} at {}", v.clause.id(), w.join(", ")));
        }
        r.line(line);
        r.record(format!("check {label}"));
        r.records.extend(rep.records());
    };
    section(&mut r, "postulates", validate_c(&chain, &op)?);
    if algebraic {
        section(&mut r, "algebraic", validate_algebraic(&chain, &op)?);
    }
    if with_dual {
        let b = dual(&chain, &op);
        r.line(b.describe(&chain));
        section(&mut r, "dual", validate_bullet(&chain, &b)?);
    }
    r.code = code;
    Ok(r)
}

fn enum_cmd(ctx: &Ctx, g: &Global) -> Result<Report> {
    let chain = ctx.chain(g)?;
    let ops = enumerate_ops(&chain)?;
    let mut r = Report::new(EXIT_HOLDS);
    r.line(chain.describe());
    r.line(format!("N(A) = {}", chain.n_set()));
    r.both(format!("count {}", ops.len()));
    for op in &ops {
        let values: Vec<String> =
            chain.elements().unwrap_or(&[]).iter().map(|x| op.apply(&chain, x).to_string()).collect();
        r.line(format!("  {}", op.describe(&chain)));
        r.record(format!("op {} {}", op.name, values.join(" ")));
    }
    Ok(r)
}

fn quotient_cmd(ctx: &Ctx, g: &Global, filter: Option<&str>, principal: Option<&str>) -> Result<Report> {
    let chain = ctx.chain(g)?;
    let filter = match (filter, principal) {
        (Some(list), None) => {
            let xs = list.split(',').map(|t| rational(t.trim())).collect::<Result<Vec<_>>>()?;
            Filter::new(&chain, &xs)?
        }
        (None, Some(x)) => Filter::principal(&chain, &rational(x)?)?,
        _ => bail!("give --filter or --principal"),
    };
    let quot = chain.quotient_by_filter(&filter)?;
    let xs = chain.elements().expect("finite chain");
    let mut r = Report::new(EXIT_HOLDS);
    r.line(chain.describe());
    r.line(quot.chain.describe());
    r.record(format!("classes {}", quot.classes.len()));
    for (k, cls) in quot.classes.iter().enumerate() {
        let members: Vec<String> = cls.iter().map(|&i| xs[i].to_string()).collect();
        r.line(format!("  [{k}] {{{}}}", members.join(", ")));
        r.record(format!("class {k} {}", members.join(" ")));
    }
    Ok(r)
}

fn lfi_cmd(ctx: &Ctx, g: &Global) -> Result<Report> {
    let chain = ctx.chain(g)?;
    let op = ctx.required_op(g, &chain)?;
    let s = Structure::new(&chain).with_circ(&op);
    let rep = check_lfi(&s, &ctx.cfg)?;
    let code = if !rep.is_lfi() {
        EXIT_REFUTED
    } else if rep.clauses.iter().all(|c| c.certified) {
        EXIT_HOLDS
    } else {
        EXIT_UNKNOWN
    };
    let mut r = Report::new(code);
    r.line(format!("LFI clauses on {}", rep.structure));
    r.record(format!("structure {}", rep.structure));
    for c in &rep.clauses {
        let status = if !c.passed {
            "fails"
        } else if c.certified {
            "holds"
        } else {
            "not refuted"
        };
        r.line(format!("  {}: {status}", c.label));
        r.record(format!("clause {} {status}", c.label.split(' ').next().unwrap_or("")));
        if let Some(cm) = &c.countermodel {
            r.line(format!("    countermodel {}", cm.assignment_text()));
            r.record(format!("assignment {}", cm.assignment_text()));
        }
        if let Some(w) = &c.witness {
            r.line(format!("    witness x={w}"));
            r.record(format!("witness x={w}"));
        }
    }
    r.both(format!("lfi {}", rep.is_lfi()));
    Ok(r)
}

fn propagation_cmd(ctx: &Ctx, g: &Global, connective: &str, at: Option<&str>) -> Result<Report> {
    let chain = ctx.chain(g)?;
    let op = ctx.required_op(g, &chain)?;
    let conn: Connective = connective.parse().map_err(|e: String| anyhow!(e))?;
    let at = match at {
        Some(text) => {
            let (x, y) = text.split_once(',').unwrap_or((text, "0"));
            Some((rational(x.trim())?, rational(y.trim())?))
        }
        None => None,
    };
    let s = Structure::new(&chain).with_circ(&op);
    let out = check_propagation(&s, conn, g.grid_denominator, at)?;
    let mut r = Report::new(EXIT_HOLDS);
    r.line(format!("{}  on {}", conn.propagation_formula(), s.label()));
    match out {
        PropagationOutcome::Holds { method, checked } => {
            r.line(format!("holds ({method}, {checked} points)"));
            r.record("verdict holds").record(format!("method {method}")).record(format!("checked_count {checked}"));
        }
        PropagationOutcome::Counterpair { x, y, value } => {
            r.code = EXIT_REFUTED;
            let pair = match &y {
                Some(y) => format!("x={x} y={y}"),
                None => format!("x={x}"),
            };
            r.line(format!("fails at {pair}, value {value}"));
            r.record("verdict fails").record(format!("assignment {pair}")).record(format!("value={value}"));
        }
        PropagationOutcome::NotRefuted { checked } => {
            r.code = EXIT_UNKNOWN;
            r.line(format!("not refuted on grid 1/{} ({checked} points)", g.grid_denominator));
            r.record("verdict unknown")
                .record(format!("grid_denominator {}", g.grid_denominator))
                .record(format!("checked_count {checked}"));
        }
    }
    Ok(r)
}

fn dat_cmd(ctx: &Ctx, g: &Global) -> Result<Report> {
    let chain = ctx.chain(g)?;
    let op = ctx.required_op(g, &chain)?;
    let s = Structure::new(&chain).with_circ(&op);
    let out = check_dat_axiom(&s)?;
    let mut r = Report::new(if out.holds { EXIT_HOLDS } else { EXIT_REFUTED });
    r.line(format!("O x <= x \\/ ~x on {}", s.label()));
    r.record(format!("verdict {}", if out.holds { "holds" } else { "fails" }));
    match &out.witness {
        Some(w) => {
            r.line(format!("fails at x={w}: O x = {}", op.apply(&chain, w)));
            r.record(format!("witness x={w}"));
        }
        None => {
            r.line(format!("holds ({})", out.method));
        }
    }
    r.record(format!("method {}", out.method));
    Ok(r)
}

fn pdat_cmd(ctx: &Ctx, g: &Global, text: &str, power: PowerArg) -> Result<Report> {
    let phi = formula(text)?;
    let chain = ctx.chain(g)?;
    let op = ctx.required_op(g, &chain)?;
    let s = Structure::new(&chain).with_circ(&op);
    let power = match power {
        PowerArg::Fuse => PowerKind::Fuse,
        PowerArg::Meet => PowerKind::Meet,
    };
    let out = pdat_search(&s, &phi, g.kmax, power, &ctx.cfg)?;
    let mut r = Report::new(EXIT_HOLDS);
    r.line(format!("PDAT for {phi} on {}", s.label()));
    let refutations = match &out {
        PdatOutcome::Found { k, certified, refutations } => {
            if !certified {
                r.code = EXIT_UNKNOWN;
            }
            let how = if *certified { "valid" } else { "not refuted on the grid" };
            r.line(format!("k = {k}: {how}"));
            r.record(format!("verdict {}", if *certified { "holds" } else { "unknown" })).record(format!("k {k}"));
            refutations
        }
        PdatOutcome::NotFound { k_max, refuted, refutations } => {
            r.code = if *refuted { EXIT_REFUTED } else { EXIT_UNKNOWN };
            r.line(format!("no k <= {k_max}"));
            r.record(format!("verdict {}", if *refuted { "fails" } else { "unknown" })).record(format!("kmax {k_max}"));
            refutations
        }
    };
    for (i, cm) in refutations.iter().enumerate() {
        r.line(format!("  k = {} refuted by {}", i + 1, cm.assignment_text()));
        r.record(format!("refutation {} {}", i + 1, cm.assignment_text()));
    }
    Ok(r)
}

fn prove_cmd(mut ctx: Ctx, g: &Global, files: &[std::path::PathBuf], bridge: bool) -> Result<Report> {
    for path in files {
        ctx.ws.load_path(path)?;
    }
    let specs = ctx.ws.proofs().to_vec();
    if specs.is_empty() {
        bail!("no proofs given");
    }
    let mut r = Report::new(EXIT_HOLDS);
    for spec in specs {
        let name = spec.script.name.clone();
        let profile = load_profile(g.profile.as_deref().unwrap_or(&spec.script.profile))?;
        match verify_with(&spec.script, &profile, &ctx.ws.theorems) {
            Ok(v) => {
                let mut line = format!("{name}: verified in {}, concludes {}", profile.name, v.conclusion());
                r.record(format!("proof {name} verified"));
                if spec.register {
                    ctx.ws.theorems.register_proof(&v)?;
                    line.push_str(" (registered)");
                }
                r.line(line);
                if bridge {
                    let models = applicable_models::<Q>(&profile);
                    let structures: Vec<Structure> = models.iter().map(|m| m.structure()).collect();
                    let b = soundness_bridge(&v, &structures)?;
                    if !b.confirmed() {
                        r.code = EXIT_REFUTED;
                    }
                    let bad: Vec<String> =
                        b.violations.iter().map(|x| format!("line {} on {}", x.line, x.structure)).collect();
                    r.line(format!(
                        "  bridge: {} checks on {} models, {}",
                        b.checks,
                        b.structures.len(),
                        if bad.is_empty() { "all sound".to_string() } else { bad.join("; ") }
                    ));
                    r.record(format!("bridge {name} {}", if b.confirmed() { "confirmed" } else { "violated" }));
                }
            }
            Err(e) => {
                r.code = EXIT_REFUTED;
                r.line(format!("{name}: rejected: {e}"));
                r.record(format!("proof {name} rejected line={}", e.line().map_or("-".into(), |l| l.to_string())));
            }
        }
    }
    Ok(r)
}

fn suite_cmd(g: &Global) -> Result<Report> {
    let cfg = SuiteConfig { grid_denominator: g.grid_denominator, kmax: g.kmax, ..SuiteConfig::default() };
    let results = run_suite(&cfg);
    let passed = results.iter().filter(|c| c.passed).count();
    let mut r = Report::new(if passed == results.len() { EXIT_HOLDS } else { EXIT_REFUTED });
    r.line(format!("{:>3}  {:<6} {:<48} detail", "#", "result", "check"));
    for c in &results {
        let status = if c.passed { "PASS" } else { "FAIL" };
        r.line(format!("{:>3}  {:<6} {:<48} {}", c.id, status, c.title, c.detail));
        r.record(format!("criterion {} {}", c.id, status));
    }
    r.both(format!("passed {passed}/{}", results.len()));
    Ok(r)
}
