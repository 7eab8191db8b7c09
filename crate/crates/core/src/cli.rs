//! Command dispatch for the `blendkit` binary. Every command reads named
//! declarations from a document and reports text and JSON forms of its result.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::blend::{
    amalgamate, check_amalgamation_square, cocone_to_dot, find_diagram_model, lax_cocone_with_amalgamation,
    lax_sign_pushout, minimal_dom_theta0, AmalgamationVerdict, LaxCocone,
};
use crate::config::RunConfig;
use crate::dsl::json::summary;
use crate::dsl::{Base, Decl, Kind, Render, SpecDocument};
use crate::error::{Error, Result};
use crate::inclusion::{InclusiveCategory, Pushouts};
use crate::institution::{Mor, Obj};
use crate::laws::run_all;
use crate::partial::{compose, factorize_partial};
use crate::pl::Pl;
use crate::theory::{classify_32_theory_morphism, entails, Flag};
use crate::three_halves::{pmod_reduct, PartialOf};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Command {
    Validate,
    Compose,
    Factorize,
    Pushout,
    Blend,
    Reduct,
    Satisfy,
    Entails,
    ClassifyTheoryMorphism,
    Amalgamate,
    CheckSquare,
    VerifyLaws,
}

impl Command {
    pub const ALL: [Command; 12] = [
        Command::Validate,
        Command::Compose,
        Command::Factorize,
        Command::Pushout,
        Command::Blend,
        Command::Reduct,
        Command::Satisfy,
        Command::Entails,
        Command::ClassifyTheoryMorphism,
        Command::Amalgamate,
        Command::CheckSquare,
        Command::VerifyLaws,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Compose => "compose",
            Command::Factorize => "factorize",
            Command::Pushout => "pushout",
            Command::Blend => "blend",
            Command::Reduct => "reduct",
            Command::Satisfy => "satisfy",
            Command::Entails => "entails",
            Command::ClassifyTheoryMorphism => "classify-theory-morphism",
            Command::Amalgamate => "amalgamate",
            Command::CheckSquare => "check-square",
            Command::VerifyLaws => "verify-laws",
        }
    }

    pub fn usage(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Compose => "compose <morphism> <morphism>",
            Command::Factorize => "factorize <morphism>",
            Command::Pushout => "pushout <morphism> <morphism>",
            Command::Blend => "blend <span>",
            Command::Reduct => "reduct <morphism> <model>",
            Command::Satisfy => "satisfy <model> <sentence|theory>",
            Command::Entails => "entails <theory> <sentence>",
            Command::ClassifyTheoryMorphism => "classify-theory-morphism <morphism> <theory> <theory>",
            Command::Amalgamate => "amalgamate <span> <model> <model> <model> | amalgamate <diagram>",
            Command::CheckSquare => "check-square <square>",
            Command::VerifyLaws => "verify-laws",
        }
    }

    pub fn needs_document(self) -> bool {
        self != Command::VerifyLaws
    }
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Command {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Command::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Input(format!("unknown command {s}")))
    }
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Violation = 1,
    InputError = 2,
    ResourceCap = 3,
}

impl Status {
    pub fn of_error(e: &Error) -> Status {
        if e.is_resource() {
            Status::ResourceCap
        } else {
            Status::InputError
        }
    }

    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    /// Emit Graphviz text for `blend`.
    pub dot: bool,
    /// Use the least admissible domain for the apex leg in `amalgamate`.
    pub minimal: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub status: Status,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    fn new(status: Status, text: String, json: Value) -> Self {
        Outcome { status, text, json }
    }

    fn check(holds: bool, text: String, json: Value) -> Self {
        Self::new(if holds { Status::Ok } else { Status::Violation }, text, json)
    }

    /// The bytes printed on stdout.
    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            serde_json::to_string_pretty(&self.json).expect("values serialize") + "\n"
        } else {
            self.text.clone()
        }
    }
}

/// The error report for stdout under `--json`.
pub fn error_json(e: &Error) -> String {
    let v = json!({ "error": e.to_string(), "status": Status::of_error(e).code() });
    serde_json::to_string_pretty(&v).expect("values serialize") + "\n"
}

macro_rules! dispatch {
    ($doc:expr, $base:expr, $f:ident ( $($arg:expr),* )) => {
        match $base {
            Base::Pl => $f(&Pl::new(), $($arg),*),
            Base::Msa => $f(&$doc.msa(), $($arg),*),
        }
    };
}

fn args_for<const N: usize>(cmd: Command, args: &[String]) -> Result<[&str; N]> {
    if args.len() != N {
        return Err(Error::Input(format!("usage: blendkit {}", cmd.usage())));
    }
    Ok(std::array::from_fn(|i| args[i].as_str()))
}

fn base_of(doc: &SpecDocument, kinds: &[Kind], name: &str) -> Result<Base> {
    Ok(doc.find(kinds, name)?.decl.base())
}

pub fn run_command(cmd: Command, doc: &SpecDocument, args: &[String], opts: Options, cfg: &RunConfig) -> Result<Outcome> {
    cfg.validate()?;
    match cmd {
        Command::Validate => {
            args_for::<0>(cmd, args)?;
            validate(doc)
        }
        Command::Compose => {
            let [f, g] = args_for(cmd, args)?;
            dispatch!(doc, base_of(doc, &[Kind::Morphism], f)?, compose_cmd(doc, f, g))
        }
        Command::Factorize => {
            let [f] = args_for(cmd, args)?;
            dispatch!(doc, base_of(doc, &[Kind::Morphism], f)?, factorize_cmd(doc, f))
        }
        Command::Pushout => {
            let [f, g] = args_for(cmd, args)?;
            dispatch!(doc, base_of(doc, &[Kind::Morphism], f)?, pushout_cmd(doc, f, g))
        }
        Command::Blend => {
            let [s] = args_for(cmd, args)?;
            dispatch!(doc, base_of(doc, &[Kind::Span], s)?, blend_cmd(doc, s, opts))
        }
        Command::Reduct => {
            let [f, m] = args_for(cmd, args)?;
            dispatch!(doc, base_of(doc, &[Kind::Morphism], f)?, reduct_cmd(doc, f, m, cfg))
        }
        Command::Satisfy => {
            let [m, s] = args_for(cmd, args)?;
            dispatch!(doc, base_of(doc, &[Kind::Model], m)?, satisfy_cmd(doc, m, s))
        }
        Command::Entails => {
            let [t, s] = args_for(cmd, args)?;
            dispatch!(doc, base_of(doc, &[Kind::Theory, Kind::Signature], t)?, entails_cmd(doc, t, s, cfg))
        }
        Command::ClassifyTheoryMorphism => {
            let [f, t, u] = args_for(cmd, args)?;
            dispatch!(doc, base_of(doc, &[Kind::Morphism], f)?, classify_cmd(doc, f, t, u, cfg))
        }
        Command::Amalgamate => match args {
            [d] => dispatch!(doc, base_of(doc, &[Kind::Diagram], d)?, diagram_cmd(doc, d, cfg)),
            _ => {
                let [s, m0, m1, m2] = args_for(cmd, args)?;
                dispatch!(doc, base_of(doc, &[Kind::Span], s)?, amalgamate_cmd(doc, s, [m0, m1, m2], opts, cfg))
            }
        },
        Command::CheckSquare => {
            let [q] = args_for(cmd, args)?;
            dispatch!(doc, base_of(doc, &[Kind::Square], q)?, square_cmd(doc, q, cfg))
        }
        Command::VerifyLaws => {
            args_for::<0>(cmd, args)?;
            let rep = run_all(cfg.seed, cfg.iters, cfg)?;
            let json = serde_json::to_value(&rep).expect("reports serialize");
            Ok(Outcome::check(rep.passed(), rep.to_string(), json))
        }
    }
}

fn validate(doc: &SpecDocument) -> Result<Outcome> {
    let counts = summary(doc);
    let mut text = format!(
        "valid document: {} declarations, msa inclusions {}\n",
        doc.items().len(),
        doc.inclusions()
    );
    for (k, n) in &counts {
        writeln!(text, "  {k}: {n}").unwrap();
    }
    let json = json!({
        "valid": true,
        "declarations": doc.items().len(),
        "inclusions": doc.inclusions().to_string(),
        "counts": counts,
    });
    Ok(Outcome::new(Status::Ok, text, json))
}

fn partial_json<I: Render>(phi: &PartialOf<I>) -> Value {
    json!({
        "source": I::signature_text(phi.source()),
        "target": I::signature_text(phi.target()),
        "dom": I::signature_text(phi.dom()),
        "map": I::morphism_text(phi.total()),
        "total": phi.is_defined_everywhere(),
    })
}

fn total_json<I: Render>(inst: &I, m: &Mor<I>) -> Value {
    let cat = inst.category();
    json!({
        "source": I::signature_text(cat.source(m)),
        "target": I::signature_text(cat.target(m)),
        "map": I::morphism_text(m),
    })
}

fn total_text<I: Render>(inst: &I, m: &Mor<I>) -> String {
    let cat = inst.category();
    format!(
        "{} -> {} {}",
        I::signature_text(cat.source(m)),
        I::signature_text(cat.target(m)),
        I::morphism_text(m)
    )
}

fn compose_cmd<I: Render>(inst: &I, doc: &SpecDocument, f: &str, g: &str) -> Result<Outcome> {
    let c = compose(inst.category(), doc.partial::<I>(f)?, doc.partial::<I>(g)?)?;
    let text = format!("{f} ; {g} : {}\n", I::partial_text(&c));
    Ok(Outcome::new(Status::Ok, text, json!({ "composite": partial_json::<I>(&c) })))
}

fn factorize_cmd<I: Render>(inst: &I, doc: &SpecDocument, f: &str) -> Result<Outcome> {
    let phi = doc.partial::<I>(f)?;
    let declared_total = matches!(doc.get(Kind::Morphism, f).map(|i| &i.decl), Some(Decl::Morphism { partial: false, .. }));
    if declared_total {
        let fact = inst.category().factorize(phi.total())?;
        let text = format!(
            "image: {}\nsurjection: {}\ninclusion: {}\n",
            I::signature_text(&fact.image),
            total_text(inst, &fact.surjection),
            total_text(inst, &fact.inclusion)
        );
        let json = json!({
            "image": I::signature_text(&fact.image),
            "surjection": total_json(inst, &fact.surjection),
            "inclusion": total_json(inst, &fact.inclusion),
        });
        return Ok(Outcome::new(Status::Ok, text, json));
    }
    let fact = factorize_partial(inst.category(), phi)?;
    let text = format!(
        "image: {}\nsurjection: {}\ninclusion: {}\n",
        I::signature_text(&fact.image),
        I::partial_text(&fact.surjection),
        I::partial_text(&fact.inclusion)
    );
    let json = json!({
        "image": I::signature_text(&fact.image),
        "surjection": partial_json::<I>(&fact.surjection),
        "inclusion": partial_json::<I>(&fact.inclusion),
    });
    Ok(Outcome::new(Status::Ok, text, json))
}

fn defined_everywhere<I: Render>(doc: &SpecDocument, name: &str) -> Result<Mor<I>> {
    let phi = doc.partial::<I>(name)?;
    if !phi.is_defined_everywhere() {
        return Err(Error::Input(format!("{name} is not total")));
    }
    Ok(phi.total().clone())
}

fn pushout_cmd<I: Render>(inst: &I, doc: &SpecDocument, f: &str, g: &str) -> Result<Outcome> {
    let po = inst
        .category()
        .pushout(&defined_everywhere::<I>(doc, f)?, &defined_everywhere::<I>(doc, g)?)?;
    let apex = inst.category().target(&po.left);
    let text = format!(
        "apex: {}\nleft: {}\nright: {}\n",
        I::signature_text(apex),
        total_text(inst, &po.left),
        total_text(inst, &po.right)
    );
    let json = json!({
        "apex": I::signature_text(apex),
        "left": total_json(inst, &po.left),
        "right": total_json(inst, &po.right),
    });
    Ok(Outcome::new(Status::Ok, text, json))
}

fn cocone_report<I: Render>(c: &LaxCocone<Obj<I>, Mor<I>>) -> (String, Value) {
    let mut text = format!("apex: {}\n", I::signature_text(c.apex()));
    writeln!(text, "theta0: {}", I::partial_text(&c.theta0)).unwrap();
    writeln!(text, "theta1: {}", I::partial_text(&c.theta1)).unwrap();
    writeln!(text, "theta2: {}", I::partial_text(&c.theta2)).unwrap();
    writeln!(text, "below: {:?}, strict: {:?}", c.below, c.strict).unwrap();
    writeln!(text, "construction: {:?}", c.trace.kind).unwrap();
    writeln!(text, "theta0 domain: {}", I::signature_text(&c.trace.dom_theta0)).unwrap();
    let json = json!({
        "apex": I::signature_text(c.apex()),
        "theta0": partial_json::<I>(&c.theta0),
        "theta1": partial_json::<I>(&c.theta1),
        "theta2": partial_json::<I>(&c.theta2),
        "below": c.below,
        "strict": c.strict,
        "trace": {
            "kind": format!("{:?}", c.trace.kind),
            "dom_theta0": I::signature_text(&c.trace.dom_theta0),
            "first": c.trace.first.iter().map(|p| json!({
                "left": I::morphism_text(&p.left),
                "right": I::morphism_text(&p.right),
            })).collect::<Vec<_>>(),
            "second": {
                "left": I::morphism_text(&c.trace.second.left),
                "right": I::morphism_text(&c.trace.second.right),
            },
        },
    });
    (text, json)
}

fn span_names(doc: &SpecDocument, s: &str) -> [String; 3] {
    let Some(Decl::Span { left, right, .. }) = doc.get(Kind::Span, s).map(|i| &i.decl) else {
        return [String::new(), String::new(), String::new()];
    };
    let ends = |m: &str| match doc.get(Kind::Morphism, m).map(|i| &i.decl) {
        Some(Decl::Morphism { source, target, .. }) => (source.clone(), target.clone()),
        _ => (String::new(), String::new()),
    };
    let (src, l) = ends(left);
    let (_, r) = ends(right);
    [src, l, r]
}

fn blend_cmd<I: Render>(inst: &I, doc: &SpecDocument, s: &str, opts: Options) -> Result<Outcome>
where
    Obj<I>: fmt::Display,
{
    let span = doc.span::<I>(s)?;
    let c = lax_sign_pushout(inst.category(), &span)?;
    let (mut text, json) = cocone_report::<I>(&c);
    if opts.dot {
        let [a, b, d] = span_names(doc, s);
        let (b, d) = if b == d { (format!("{b}.1"), format!("{d}.2")) } else { (b, d) };
        text = cocone_to_dot(&c, [&a, &b, &d, "blend"]);
    }
    Ok(Outcome::new(Status::Ok, text, json))
}

fn reduct_cmd<I: Render>(inst: &I, doc: &SpecDocument, f: &str, m: &str, cfg: &RunConfig) -> Result<Outcome> {
    let phi = doc.partial::<I>(f)?;
    let rs = pmod_reduct(inst, phi, doc.model_of::<I>(m)?, cfg)?;
    let members: Vec<String> = rs.members.iter().map(I::model_text).collect();
    let mut text = format!("{} reducts of {m} along {f}", members.len());
    if let Some(k) = rs.bound {
        write!(text, " (carriers up to {k})").unwrap();
    }
    text.push('\n');
    for x in &members {
        writeln!(text, "  {x}").unwrap();
    }
    Ok(Outcome::new(Status::Ok, text, json!({ "members": members, "bound": rs.bound })))
}

fn satisfy_cmd<I: Render>(inst: &I, doc: &SpecDocument, m: &str, s: &str) -> Result<Outcome> {
    let model = doc.model_of::<I>(m)?;
    let (sig, sentences) = if doc.get(Kind::Sentence, s).is_some() {
        let Some(Decl::Sentence { signature, .. }) = doc.get(Kind::Sentence, s).map(|i| &i.decl) else {
            unreachable!()
        };
        (doc.signature_of::<I>(signature)?, vec![doc.sentence_of::<I>(s)?.clone()])
    } else {
        let t = doc.theory_of::<I>(s)?;
        (&t.signature, t.axioms.clone())
    };
    inst.check_model(sig, model)
        .map_err(|_| Error::Input(format!("model {m} is not over the signature of {s}")))?;
    let mut failed = Vec::new();
    for rho in &sentences {
        if !inst.satisfies(sig, model, rho)? {
            failed.push(I::sentence_text(sig, rho));
        }
    }
    let holds = failed.is_empty();
    let mut text = format!("{m} {} {s}\n", if holds { "satisfies" } else { "does not satisfy" });
    for f in &failed {
        writeln!(text, "  fails: {f}").unwrap();
    }
    Ok(Outcome::check(holds, text, json!({ "holds": holds, "failing": failed })))
}

fn entails_cmd<I: Render>(inst: &I, doc: &SpecDocument, t: &str, s: &str, cfg: &RunConfig) -> Result<Outcome> {
    let theory = doc.theory_or_signature::<I>(t)?;
    let rho = doc.sentence_of::<I>(s)?;
    let e = entails(inst, &theory, rho, cfg)?;
    let mut text = format!("{t} {} {s}", if e.holds { "entails" } else { "does not entail" });
    if let Some(k) = e.bound {
        write!(text, " (carriers up to {k})").unwrap();
    }
    text.push('\n');
    let counter = e.countermodel.as_ref().map(I::model_text);
    if let Some(c) = &counter {
        writeln!(text, "  countermodel: {c}").unwrap();
    }
    Ok(Outcome::check(e.holds, text, json!({ "holds": e.holds, "countermodel": counter, "bound": e.bound })))
}

fn flag_json<I: Render>(f: &Flag<I::Model>) -> Value {
    json!({ "holds": f.holds, "counterexample": f.counterexample.as_ref().map(I::model_text) })
}

fn classify_cmd<I: Render>(inst: &I, doc: &SpecDocument, f: &str, t: &str, u: &str, cfg: &RunConfig) -> Result<Outcome> {
    let phi = doc.partial::<I>(f)?;
    let src = doc.theory_or_signature::<I>(t)?;
    let tgt = doc.theory_or_signature::<I>(u)?;
    let rep = classify_32_theory_morphism(inst, phi, &src, &tgt, cfg)?;
    let rows = [
        ("theory morphism", &rep.plain),
        ("weak 3/2 theory morphism", &rep.weak32),
        ("strong 3/2 theory morphism", &rep.strong32),
        ("closed-partial theory morphism", &rep.closed_partial),
        ("strong-partial theory morphism", &rep.strong_partial),
    ];
    let mut text = format!("{f} : {t} -> {u}\n");
    for (label, flag) in rows {
        write!(text, "  {label}: {}", if flag.holds { "yes" } else { "no" }).unwrap();
        if let Some(c) = &flag.counterexample {
            write!(text, " (refuted by {})", I::model_text(c)).unwrap();
        }
        text.push('\n');
    }
    let nested = rep.nesting_holds();
    if !nested {
        text.push_str("  the notions fail to nest\n");
    }
    let json = json!({
        "plain": flag_json::<I>(&rep.plain),
        "weak32": flag_json::<I>(&rep.weak32),
        "strong32": flag_json::<I>(&rep.strong32),
        "closed_partial": flag_json::<I>(&rep.closed_partial),
        "strong_partial": flag_json::<I>(&rep.strong_partial),
        "nesting_holds": nested,
        "bound": rep.bound,
    });
    Ok(Outcome::check(nested, text, json))
}

fn amalgamate_cmd<I: Render>(
    inst: &I,
    doc: &SpecDocument,
    s: &str,
    models: [&str; 3],
    opts: Options,
    cfg: &RunConfig,
) -> Result<Outcome> {
    let span = doc.span::<I>(s)?;
    let d = if opts.minimal { Some(minimal_dom_theta0(inst.category(), &span)?) } else { None };
    let c = lax_cocone_with_amalgamation(inst.category(), &span, d.as_ref())?;
    let [m0, m1, m2] = [0, 1, 2].map(|i| doc.model_of::<I>(models[i]));
    let a = amalgamate(inst, &c, m0?, m1?, m2?, cfg)?;
    let (cocone_text, cocone_json) = cocone_report::<I>(&c);
    let model = I::model_text(&a.model);
    let mut text = format!("amalgam: {model}\ncompletions: {}", a.completions);
    if let Some(k) = a.bound {
        write!(text, " (carriers up to {k})").unwrap();
    }
    text.push('\n');
    text.push_str(&cocone_text);
    let json = json!({
        "model": model,
        "completions": a.completions,
        "unique": a.is_unique(),
        "bound": a.bound,
        "cocone": cocone_json,
    });
    Ok(Outcome::check(a.is_unique(), text, json))
}

fn diagram_cmd<I: Render>(inst: &I, doc: &SpecDocument, d: &str, cfg: &RunConfig) -> Result<Outcome> {
    let diagram = doc.diagram::<I>(d)?;
    let found = find_diagram_model(inst, &diagram, cfg)?;
    let Some(model) = found else {
        let text = format!("{d} has no model within the bounds\n");
        return Ok(Outcome::check(false, text, json!({ "consistent": false, "model": null })));
    };
    let mut text = format!("{d} is consistent; a model:\n");
    let mut nodes = serde_json::Map::new();
    for n in &diagram.nodes {
        let m = I::model_text(&model[&n.name]);
        writeln!(text, "  {}: {m}", n.name).unwrap();
        nodes.insert(n.name.clone(), Value::String(m));
    }
    Ok(Outcome::check(true, text, json!({ "consistent": true, "model": nodes })))
}

fn square_cmd<I: Render>(inst: &I, doc: &SpecDocument, q: &str, cfg: &RunConfig) -> Result<Outcome> {
    let sq = doc.square::<I>(q)?;
    let rep = check_amalgamation_square(inst, &sq, cfg)?;
    let mut text = format!("{q}: {} over {} span models", rep.verdict, rep.span_models);
    if let Some(k) = rep.bound {
        write!(text, " (carriers up to {k})").unwrap();
    }
    text.push('\n');
    let witness = rep.witness.as_ref().map(|(a, b, n)| json!([I::model_text(a), I::model_text(b), n]));
    if let Some((a, b, n)) = &rep.witness {
        writeln!(text, "  witness: {} and {} with {n} completions", I::model_text(a), I::model_text(b)).unwrap();
    }
    let json = json!({
        "verdict": rep.verdict,
        "span_models": rep.span_models,
        "witness": witness,
        "bound": rep.bound,
    });
    Ok(Outcome::check(rep.verdict == AmalgamationVerdict::Amalgamation, text, json))
}

/// Parses the document text and runs one command.
pub fn run_text(cmd: Command, text: Option<&str>, args: &[String], opts: Options, cfg: &RunConfig) -> Result<Outcome> {
    let doc = match text {
        Some(t) => crate::dsl::parse_any(t)?,
        None if cmd.needs_document() => return Err(Error::Input(format!("{cmd} needs a document (--file)"))),
        None => SpecDocument::default(),
    };
    run_command(cmd, &doc, args, opts, cfg)
}
