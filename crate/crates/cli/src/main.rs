use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use posring::cyclic::Horizon;
use posring::diagram::build_report;
use posring::exp::{accp_probe, AccpProbe, ExpSum};
use posring::kernel::{
    enumerate_factorizations, is_atom, AtomResult, Certificate, MonoidView, Payload, SearchBudget,
};
use posring::kernel::factorization::RenderedSet;
use posring::model::{SemiringModel, Side, ViewVisitor};
use posring::natpoly::factorizations_natpoly;
use posring::refute::{refute, Property, RefuteOutcome};
use posring::{Error, Result};

#[derive(Parser)]
#[command(name = "posring", version, about = "Atoms, factorizations and certificates in positive semirings")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Default)]
struct BudgetArgs {
    /// Maximum factorization length explored
    #[arg(long)]
    budget_length: Option<usize>,
    /// Maximum exponent or refinement depth
    #[arg(long)]
    budget_exponent: Option<u32>,
    /// Maximum candidates or search nodes
    #[arg(long)]
    budget_candidates: Option<usize>,
}

impl BudgetArgs {
    fn resolve(&self) -> Result<SearchBudget> {
        let base = SearchBudget::from_env()?;
        SearchBudget::new(
            self.budget_length.unwrap_or(base.max_length),
            self.budget_exponent.unwrap_or(base.max_exponent),
            self.budget_candidates.unwrap_or(base.max_candidates),
        )
    }
}

#[derive(Args, Clone)]
struct Common {
    /// Model spec, e.g. "N0[2/3]", "N0[x]", "ray(2)", "E(unitfrac<=7)"
    #[arg(long)]
    model: String,
    /// add or mul
    #[arg(long, default_value = "add")]
    side: String,
    /// Emit JSON
    #[arg(long)]
    json: bool,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Subcommand)]
enum Cmd {
    /// List atoms of one side, or the atoms dividing --element
    Atoms {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 6)]
        count: usize,
        #[arg(long)]
        element: Option<String>,
    },
    /// Enumerate factorizations of an element
    Factorize {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        element: String,
    },
    /// Length set of an element
    Lengths {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        element: String,
    },
    IsAtom {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        element: String,
    },
    IsMember {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        element: String,
    },
    /// Ascending chain of principal ideals that does not stabilize
    AccpChain {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10)]
        length: usize,
    },
    /// Look for a certificate that a property fails
    Refute {
        #[command(flatten)]
        common: Common,
        /// atomic, ACCP, BF, FF, HF or LF
        #[arg(long)]
        property: String,
    },
    /// Rebuild and re-verify every separation of the implication diagram
    VerifyDiagram {
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

struct Ctx {
    model: SemiringModel,
    side: Side,
    json: bool,
    budget: SearchBudget,
}

impl Ctx {
    fn new(c: &Common) -> Result<Ctx> {
        Ok(Ctx {
            model: SemiringModel::parse(&c.model)?,
            side: c.side.parse()?,
            json: c.json,
            budget: c.budget.resolve()?,
        })
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::InvalidInput(_) => 1,
        Error::Unsupported(_) | Error::Undecided(_) | Error::Budget(_) => 2,
        Error::Verification(_) => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.cmd) {
        Ok(out) => {
            let _ = writeln!(std::io::stdout(), "{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn emit(json: bool, v: Value, text: String) -> String {
    if json {
        serde_json::to_string_pretty(&v).expect("json")
    } else {
        text
    }
}

fn run(cmd: Cmd) -> Result<String> {
    match cmd {
        Cmd::Atoms { common, count, element } => {
            let ctx = Ctx::new(&common)?;
            let (atoms, complete, cert) = match &element {
                Some(e) => {
                    let (a, c) = ctx.model.with_view(
                        ctx.side,
                        AtomsDividing {
                            element: e,
                            budget: &ctx.budget,
                        },
                    )??;
                    (a, c, None)
                }
                None => atom_listing(&ctx, count)?,
            };
            let mut v = json!({
                "model": ctx.model.spec(),
                "side": ctx.side,
                "atoms": atoms,
                "complete": complete,
            });
            if let Some(e) = &element {
                v["element"] = json!(e);
            }
            if let Some(c) = &cert {
                v["certificate"] = serde_json::to_value(c).expect("json");
            }
            let mut text = atoms.join(", ");
            if text.is_empty() {
                text = "(no atoms)".into();
            }
            if !complete {
                text.push_str("\n(partial list)");
            }
            Ok(emit(ctx.json, v, text))
        }
        Cmd::Factorize { common, element } => {
            let ctx = Ctx::new(&common)?;
            let set = factorize(&ctx, &element)?;
            let mut text = String::new();
            for f in &set.factorizations {
                let parts: Vec<String> = f
                    .parts
                    .iter()
                    .map(|p| {
                        if p.count == 1 {
                            format!("({})", p.atom)
                        } else if ctx.side == Side::Add {
                            format!("{}×({})", p.count, p.atom)
                        } else {
                            format!("({})^{}", p.atom, p.count)
                        }
                    })
                    .collect();
                let op = if ctx.side == Side::Add { " + " } else { " · " };
                text.push_str(&format!("[{}] {}\n", f.length, parts.join(op)));
            }
            text.push_str(&format!(
                "{} factorization(s){}",
                set.factorizations.len(),
                if set.complete { "" } else { " (search truncated by budget)" }
            ));
            Ok(emit(ctx.json, serde_json::to_value(&set).expect("json"), text))
        }
        Cmd::Lengths { common, element } => {
            let ctx = Ctx::new(&common)?;
            let set = factorize(&ctx, &element)?;
            let v = json!({
                "model": ctx.model.spec(),
                "side": ctx.side,
                "element": set.target,
                "lengths": set.lengths,
                "complete": set.complete,
            });
            let l: Vec<String> = set.lengths.iter().map(|x| x.to_string()).collect();
            let text = format!(
                "L({}) = {{{}}}{}",
                set.target,
                l.join(", "),
                if set.complete { "" } else { " (search truncated by budget)" }
            );
            Ok(emit(ctx.json, v, text))
        }
        Cmd::IsAtom { common, element } => {
            let ctx = Ctx::new(&common)?;
            let (res, split) = ctx.model.with_view(
                ctx.side,
                IsAtom {
                    element: &element,
                    budget: &ctx.budget,
                },
            )??;
            let mut v = json!({
                "model": ctx.model.spec(),
                "side": ctx.side,
                "element": element,
                "result": res,
            });
            if let Some((a, b)) = &split {
                v["split"] = json!([a, b]);
            }
            let text = match (&res[..], &split) {
                ("not-atom", Some((a, b))) => {
                    let op = if ctx.side == Side::Add { "+" } else { "·" };
                    format!("not an atom: {element} = {a} {op} {b}")
                }
                (r, _) => r.replace('-', " "),
            };
            Ok(emit(ctx.json, v, text))
        }
        Cmd::IsMember { common, element } => {
            let ctx = Ctx::new(&common)?;
            let m = ctx.model.with_view(ctx.side, IsMember { element: &element })??;
            let v = json!({
                "model": ctx.model.spec(),
                "side": ctx.side,
                "element": element,
                "member": m,
            });
            Ok(emit(ctx.json, v, if m { "member".into() } else { "not a member".into() }))
        }
        Cmd::AccpChain { common, length } => {
            let ctx = Ctx::new(&common)?;
            let cert = accp_chain(&ctx, length)?;
            let text = match &cert.payload {
                Payload::AccpFailChain { chain, differences, .. } => {
                    let mut t = String::new();
                    for (i, x) in chain.iter().enumerate() {
                        t.push_str(&format!("x_{i} = {x}"));
                        if let Some(d) = differences.get(i) {
                            t.push_str(&format!("    x_{i} - x_{} = {d}", i + 1));
                        }
                        t.push('\n');
                    }
                    t.push_str("verified");
                    t
                }
                _ => unreachable!(),
            };
            Ok(emit(ctx.json, serde_json::to_value(&cert).expect("json"), text))
        }
        Cmd::Refute { common, property } => {
            let ctx = Ctx::new(&common)?;
            let p: Property = property.parse()?;
            let out = refute(&ctx.model, ctx.side, p, &ctx.budget)?;
            let text = match &out {
                RefuteOutcome::Refuted { certificate } => format!(
                    "{p} fails: {} certificate (verified = {})\n{}",
                    certificate.kind(),
                    certificate.verified,
                    serde_json::to_string_pretty(certificate).expect("json")
                ),
                RefuteOutcome::NotFound { reason, supporting } => {
                    let mut t = format!("no refutation of {p}: {reason}");
                    if let Some(c) = supporting {
                        t.push_str(&format!(
                            "\nsupporting {} certificate:\n{}",
                            c.kind(),
                            serde_json::to_string_pretty(c).expect("json")
                        ));
                    }
                    t
                }
            };
            Ok(emit(ctx.json, serde_json::to_value(&out).expect("json"), text))
        }
        Cmd::VerifyDiagram { json, budget } => {
            let b = budget.resolve()?;
            let report = build_report(&b)?;
            report.verify()?;
            if json {
                return Ok(report.to_json());
            }
            let mut t = String::new();
            for s in &report.separations {
                t.push_str(&format!(
                    "{:<38} {:<16} holds: {} ({})\n{:<38} {:<16} fails: {}\n",
                    s.implication,
                    s.model,
                    s.holds,
                    match s.evidence_mode {
                        posring::diagram::EvidenceMode::ClosedForm => "closed-form",
                        posring::diagram::EvidenceMode::Probe => "probe",
                    },
                    "",
                    "",
                    s.fails
                ));
                for c in &s.certificates {
                    t.push_str(&format!("{:<55} {} verified = {}\n", "", c.kind(), c.verified));
                }
            }
            t.push_str(&format!("all certificates verified: {}", report.all_verified));
            Ok(t)
        }
    }
}

fn factorize(ctx: &Ctx, element: &str) -> Result<RenderedSet> {
    if matches!(ctx.model, SemiringModel::NatPoly) && ctx.side == Side::Mul {
        let view = posring::natpoly::NatPolyMul;
        let x = view.parse_elem(element)?;
        return Ok(factorizations_natpoly(&x)?.render(&view));
    }
    ctx.model.with_view(
        ctx.side,
        Factorize {
            element,
            budget: &ctx.budget,
        },
    )?
}

fn accp_chain(ctx: &Ctx, length: usize) -> Result<Certificate> {
    match (&ctx.model, ctx.side) {
        (SemiringModel::CyclicRational(c), Side::Add) => match c.accp_fail_chain(length) {
            Ok(ch) => ch.certificate(&c.spec()),
            Err(e) => Err(Error::Unsupported(format!("no chain: {e}"))),
        },
        (SemiringModel::Exp(m), Side::Mul) => match accp_probe(m, length, &ctx.budget)? {
            AccpProbe::FailChain(c) => Ok(c),
            AccpProbe::StableUpTo { length, reason } => Err(Error::Unsupported(format!(
                "no failure chain up to length {length}: {reason}"
            ))),
        },
        _ => Err(Error::Unsupported(format!(
            "no chain construction for ({}, {})",
            ctx.model.spec(),
            ctx.side
        ))),
    }
}

/// Atom lists that do not need an element. Returns the atoms, whether the
/// list is complete, and an AtomListing certificate for complete lists.
fn atom_listing(ctx: &Ctx, count: usize) -> Result<(Vec<String>, bool, Option<Certificate>)> {
    let need_element = || {
        Err(Error::Unsupported(format!(
            "({}, {}) has infinitely many atoms without a simple enumeration; pass --element",
            ctx.model.spec(),
            ctx.side
        )))
    };
    let (atoms, complete): (Vec<String>, bool) = match (&ctx.model, ctx.side) {
        (SemiringModel::CyclicRational(c), Side::Add) => match c.atom_horizon() {
            Horizon::Finite { n, .. } => (
                c.additive_atoms(n.try_into().unwrap_or(usize::MAX)).iter().map(|x| x.to_string()).collect(),
                true,
            ),
            Horizon::Zero { .. } => (Vec::new(), true),
            _ => (c.additive_atoms(count).iter().map(|x| x.to_string()).collect(), false),
        },
        (SemiringModel::NatPoly, Side::Add) => (
            (0..count)
                .map(|k| match k {
                    0 => "1".to_string(),
                    1 => "x".to_string(),
                    _ => format!("x^{k}"),
                })
                .collect(),
            false,
        ),
        (SemiringModel::Exp(m), Side::Add) => {
            let mut members = Vec::new();
            let mut top = m.atoms().iter().max().cloned().expect("nonempty");
            while members.len() < count {
                members = m.members_up_to(&top).into_iter().take(count).collect();
                top = &top + &top;
            }
            (members.into_iter().map(|t| ExpSum::exp(t).to_string()).collect(), false)
        }
        (SemiringModel::Exp(m), Side::Mul) => (
            m.atoms().iter().map(|a| ExpSum::exp(a.clone()).to_string()).collect(),
            false,
        ),
        (SemiringModel::Numerical(n), Side::Add) => {
            (n.generators().iter().map(|g| g.to_string()).collect(), true)
        }
        (SemiringModel::Numerical(n), Side::Mul) => {
            let mut bound = 4 * n.multiplicity().max(2);
            let mut atoms = n.mult_atoms_up_to(bound)?;
            while atoms.len() < count && bound < 1 << 20 {
                bound *= 2;
                atoms = n.mult_atoms_up_to(bound)?;
            }
            atoms.truncate(count);
            (atoms.iter().map(|a| a.to_string()).collect(), false)
        }
        (SemiringModel::CyclicAlgebraic(_), Side::Add) | (SemiringModel::Rank2(_), Side::Add) => {
            let a = ctx.model.with_view(ctx.side, Finite)??;
            (a, true)
        }
        _ => return need_element(),
    };
    let cert = if complete {
        Some(Certificate::issue(Payload::AtomListing {
            model: ctx.model.spec(),
            side: ctx.side,
            atoms: atoms.clone(),
            non_atoms: Vec::new(),
        })?)
    } else {
        None
    };
    Ok((atoms, complete, cert))
}

struct Finite;

impl ViewVisitor for Finite {
    type Output = Result<Vec<String>>;
    fn visit<V: MonoidView>(self, view: &V) -> Self::Output {
        let a = view
            .finite_atoms()
            .ok_or_else(|| Error::Unsupported("no finite atom set".into()))?;
        Ok(a.iter().map(|x| view.render(x)).collect())
    }
}

struct AtomsDividing<'a> {
    element: &'a str,
    budget: &'a SearchBudget,
}

impl ViewVisitor for AtomsDividing<'_> {
    type Output = Result<(Vec<String>, bool)>;
    fn visit<V: MonoidView>(self, view: &V) -> Self::Output {
        let x = member(view, self.element)?;
        let c = view.atoms_dividing(&x, self.budget);
        Ok((c.items.iter().map(|a| view.render(a)).collect(), c.complete))
    }
}

struct Factorize<'a> {
    element: &'a str,
    budget: &'a SearchBudget,
}

impl ViewVisitor for Factorize<'_> {
    type Output = Result<RenderedSet>;
    fn visit<V: MonoidView>(self, view: &V) -> Self::Output {
        let x = member(view, self.element)?;
        Ok(enumerate_factorizations(view, &x, self.budget)?.render(view))
    }
}

struct IsAtom<'a> {
    element: &'a str,
    budget: &'a SearchBudget,
}

impl ViewVisitor for IsAtom<'_> {
    type Output = Result<(String, Option<(String, String)>)>;
    fn visit<V: MonoidView>(self, view: &V) -> Self::Output {
        let x = member(view, self.element)?;
        Ok(match is_atom(view, &x, self.budget)? {
            AtomResult::Atom => ("atom".into(), None),
            AtomResult::NotAtom(a, b) => ("not-atom".into(), Some((view.render(&a), view.render(&b)))),
            AtomResult::Unknown => ("unknown".into(), None),
        })
    }
}

struct IsMember<'a> {
    element: &'a str,
}

impl ViewVisitor for IsMember<'_> {
    type Output = Result<bool>;
    fn visit<V: MonoidView>(self, view: &V) -> Self::Output {
        match view.parse_elem(self.element) {
            Ok(x) => Ok(view.is_member(&x)),
            Err(Error::InvalidInput(_)) => Ok(false),
            Err(e) => Err(e),
        }
    }
}

fn member<V: MonoidView>(view: &V, s: &str) -> Result<V::Elem> {
    let x = view.parse_elem(s)?;
    if !view.is_member(&x) {
        return Err(Error::InvalidInput(format!("{s} is not a member of {}", view.describe())));
    }
    Ok(x)
}
