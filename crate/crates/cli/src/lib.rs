//! Dispatch from problem documents to the library, shared by the binary and
//! its tests.

use std::time::Instant;

use anyhow::{anyhow, bail, Context};
use corank::algebra::{parse_poly, Alphabet};
use corank::document::{
    CommandEcho, GenerationDoc, PresentationDoc, ProblemDocument, Representation, ResultDocument, RewriteDoc, Scalar,
    Status, ViolationDoc,
};
use corank::generation::{finite_generating_set, rewrite_member, GenerationSpec};
use corank::presentation::{
    compose_extension, present_quotient_subalgebra, present_right_ideal, restrict_ideal_generators, simplify,
    verify_presentation, Construction,
};
use corank::Error;
use serde_json::{json, Value};

pub const DEFAULT_DEG_CAP: usize = 5;
pub const DEFAULT_SAMPLES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Present,
    Generate,
    Reduce,
    Restrict,
    Compose,
    Verify,
    CheckInput,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Present => "present",
            Command::Generate => "generate",
            Command::Reduce => "reduce",
            Command::Restrict => "restrict",
            Command::Compose => "compose",
            Command::Verify => "verify",
            Command::CheckInput => "check-input",
        }
    }
}

/// Command-line overrides of the document parameters.
#[derive(Clone, Debug, Default)]
pub struct Options {
    pub deg_cap: Option<usize>,
    pub samples: Option<usize>,
    pub seed: Option<u64>,
    pub simplify: bool,
    pub timings: bool,
    /// Text of a presentation document (or of a `present` result) for `verify`.
    pub presentation: Option<String>,
}

/// A result document plus a short human-readable rendering.
pub struct Outcome {
    pub document: ResultDocument,
    pub text: String,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        self.document.status.exit_code()
    }
}

struct Done {
    status: Status,
    output: Value,
    text: String,
}

fn ok(output: Value, text: String) -> Done {
    Done { status: Status::Ok, output, text }
}

fn inconclusive(what: &str, cap: usize) -> Done {
    Done {
        status: Status::Inconclusive,
        output: Value::Null,
        text: format!("inconclusive: {what} not found with degree cap {cap}"),
    }
}

/// Runs one command on the text of a problem document.
pub fn run(command: Command, input: &str, opts: &Options) -> Outcome {
    let start = Instant::now();
    let parsed = ProblemDocument::from_json(input);
    let params = parsed.as_ref().map(|d| d.parameters.clone()).unwrap_or_default();
    let echo = CommandEcho {
        name: command.name().to_string(),
        deg_cap: opts.deg_cap.or(params.deg_cap).unwrap_or(DEFAULT_DEG_CAP),
        samples: opts.samples.or(params.samples).unwrap_or(DEFAULT_SAMPLES),
        seed: opts.seed.or(params.seed).unwrap_or(0),
        simplify: opts.simplify || params.simplify.unwrap_or(false),
    };
    let result = parsed.map_err(anyhow::Error::from).and_then(|doc| execute(command, &doc, &echo, opts));
    let timings = opts.timings.then(|| [("total_ms".to_string(), start.elapsed().as_secs_f64() * 1e3)].into());
    match result {
        Ok(done) => Outcome {
            document: ResultDocument {
                command: echo,
                status: done.status,
                output: (!done.output.is_null()).then_some(done.output),
                violations: vec![],
                diagnostics: match done.status {
                    Status::Ok => vec![],
                    _ => vec![done.text.trim_end().to_string()],
                },
                timings,
            },
            text: done.text,
        },
        Err(err) => failure(echo, err, timings),
    }
}

/// Maps an error to a result document: bad input and unmet hypotheses are
/// the caller's to fix, exhausted searches are inconclusive.
fn failure(echo: CommandEcho, err: anyhow::Error, timings: Option<std::collections::BTreeMap<String, f64>>) -> Outcome {
    let mut violations = vec![];
    let status = match err.downcast_ref::<Error>() {
        Some(Error::InvalidRep(v)) => {
            violations = v.iter().map(ViolationDoc::from).collect();
            Status::InvalidInput
        }
        Some(Error::SearchLimit(_)) => Status::Inconclusive,
        Some(Error::Internal(_)) | Some(Error::OutsideSpan(_)) => Status::Failed,
        _ => Status::InvalidInput,
    };
    let diagnostics: Vec<String> = err.chain().map(|e| e.to_string()).collect();
    let text = format!("{}: {}", status_word(status), diagnostics.join(": "));
    Outcome { document: ResultDocument { command: echo, status, output: None, violations, diagnostics, timings }, text }
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Ok => "ok",
        Status::Inconclusive => "inconclusive",
        Status::InvalidInput => "invalid input",
        Status::Failed => "failed",
    }
}

fn execute(command: Command, doc: &ProblemDocument, echo: &CommandEcho, opts: &Options) -> anyhow::Result<Done> {
    match command {
        Command::CheckInput => check_input(doc),
        Command::Present => present(doc, echo),
        Command::Generate => generate(doc),
        Command::Reduce => reduce(doc),
        Command::Restrict => restrict(doc, echo),
        Command::Compose => compose(doc, echo),
        Command::Verify => verify(doc, echo, opts),
    }
}

fn check_input(doc: &ProblemDocument) -> anyhow::Result<Done> {
    let (class, summary, corank) = match doc.representation()? {
        Representation::Cyclic(rep) => (rep.classify(), rep.summary(), rep.corank()),
        Representation::Algebra(rep) => (rep.classify(), rep.summary(), rep.corank()),
    };
    Ok(ok(json!({ "valid": true, "classification": class, "summary": summary, "corank": corank }), summary))
}

fn present(doc: &ProblemDocument, echo: &CommandEcho) -> anyhow::Result<Done> {
    let rep = doc.cyclic_rep()?;
    let params = &doc.parameters;
    let pres = if let Some(u) = &params.explicit_u {
        let ring = rep.ring();
        let u = u
            .iter()
            .map(|v| v.iter().map(|s| s.coeff(ring)).collect::<corank::Result<Vec<_>>>())
            .collect::<corank::Result<Vec<_>>>()?;
        Construction::new(&rep, Some(u))?.present()?
    } else if !params.i_generators.is_empty() {
        let gens = doc.polys(&params.i_generators).context("reading i_generators")?;
        match present_quotient_subalgebra(&rep, &gens, echo.deg_cap)? {
            Some(p) => p,
            None => return Ok(inconclusive("membership certificates for the restricted generators", echo.deg_cap)),
        }
    } else {
        present_right_ideal(&rep)?
    };
    let pres = if echo.simplify { simplify(&pres)? } else { pres };
    let text = pres.to_string();
    Ok(ok(serde_json::to_value(PresentationDoc::of(&pres))?, text))
}

fn y_indices(alphabet: &Alphabet, names: Option<&Vec<String>>) -> anyhow::Result<Vec<u32>> {
    match names {
        None => Ok((0..alphabet.len() as u32).collect()),
        Some(names) => names
            .iter()
            .map(|n| alphabet.index_of(n).ok_or_else(|| anyhow!("y_subset names unknown variable `{n}`")))
            .collect(),
    }
}

fn generate(doc: &ProblemDocument) -> anyhow::Result<Done> {
    let rep = doc.algebra_rep()?;
    let alphabet = rep.alphabet().clone();
    let y = y_indices(&alphabet, doc.parameters.y_subset.as_ref())?;
    let spec = GenerationSpec::new(rep, y.clone())?;
    let set = finite_generating_set(&spec)?;
    let gens = set.generators();
    let mut out = GenerationDoc::of(&alphabet, &y, &set);
    for target in &doc.parameters.rewrite {
        let p = doc.poly(target).with_context(|| format!("reading rewrite target `{target}`"))?;
        let combination = rewrite_member(&spec, &set, &p)?;
        out.rewrites.push(RewriteDoc { target: p.to_string(), combination: combination.render(&gens) });
    }
    let mut text = format!("{} generators ({} zero words dropped)\n", gens.len(), set.dropped);
    for g in &out.generators {
        text.push_str(&format!("  {g}\n"));
    }
    for r in &out.rewrites {
        text.push_str(&format!("{} = {}\n", r.target, r.combination));
    }
    Ok(ok(serde_json::to_value(out)?, text))
}

fn reduce(doc: &ProblemDocument) -> anyhow::Result<Done> {
    let rep = doc.algebra_rep()?;
    let reduced = rep.reduce_to_ideal()?;
    let vectors = |s: &corank::linalg::Submodule| -> Vec<Vec<Scalar>> {
        s.basis().iter().map(|v| v.iter().map(Scalar::of).collect()).collect()
    };
    let text = format!(
        "input: {}\nideal: {}, quotient rank {}\n",
        rep.summary(),
        reduced.rep.summary(),
        reduced.rep.rank()
    );
    Ok(ok(
        json!({
            "input_classification": rep.classify(),
            "h_prime": vectors(&reduced.h_prime),
            "j": vectors(&reduced.j),
            "reduced": ProblemDocument::from_algebra(&reduced.rep),
        }),
        text,
    ))
}

fn restrict(doc: &ProblemDocument, echo: &CommandEcho) -> anyhow::Result<Done> {
    let rep = doc.cyclic_rep()?;
    let gens = doc.polys(&doc.parameters.i_generators).context("reading i_generators")?;
    let c = Construction::new(&rep, None)?;
    let Some(res) = restrict_ideal_generators(&c, &gens, echo.deg_cap)? else {
        return Ok(inconclusive("membership certificates for the restricted generators", echo.deg_cap));
    };
    let mut text = format!("{} generators over the presentation symbols\n", res.generators.len());
    for (g, img) in res.generators.iter().zip(&res.images) {
        text.push_str(&format!("  {g}  ↦  {img}\n"));
    }
    Ok(ok(
        json!({
            "generator_names": c.y_alphabet().names(),
            "generators": res.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "images": res.images.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        }),
        text,
    ))
}

fn compose(doc: &ProblemDocument, echo: &CommandEcho) -> anyhow::Result<Done> {
    let Some(ext) = &doc.parameters.extension else {
        bail!(Error::Document("compose needs parameters.extension".into()));
    };
    let ring = doc.ring()?;
    let xalpha = doc.alphabet()?;
    let r_gens = ext
        .generators
        .iter()
        .map(|g| Ok((g.name.clone(), doc.poly(&g.witness)?)))
        .collect::<corank::Result<Vec<_>>>()?;
    let names = Alphabet::new(r_gens.iter().map(|(n, _)| n.clone()))?;
    let relations =
        ext.relations.iter().map(|r| parse_poly(r, &names, ring, false)).collect::<corank::Result<Vec<_>>>()?;
    let context = doc.polys(&ext.context)?;
    let Some(result) = compose_extension(ring, &xalpha, &r_gens, &relations, &context, echo.deg_cap)? else {
        return Ok(inconclusive("rewriting witnesses", echo.deg_cap));
    };
    let witnesses: Vec<Value> = result
        .witnesses
        .iter()
        .map(|w| {
            json!({
                "variable": xalpha.name(w.variable),
                "generator": names.name(w.generator),
                "left": w.left.to_string(),
                "right": w.right.to_string(),
            })
        })
        .collect();
    let i_gens: Vec<String> = result.i_generators.iter().map(|g| g.to_string()).collect();
    let text = format!("ideal generators:\n{}", i_gens.iter().map(|g| format!("  {g}\n")).collect::<String>());
    Ok(ok(
        json!({
            "i_generators": i_gens,
            "witnesses": witnesses,
            "presentation": PresentationDoc::of(&result.presentation),
        }),
        text,
    ))
}

/// Accepts a bare presentation document or the result of `present`.
fn read_presentation(text: &str) -> anyhow::Result<PresentationDoc> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))?;
    let inner = match value.get("output") {
        Some(out) => out.clone(),
        None => value,
    };
    Ok(serde_json::from_value(inner).map_err(|e| Error::Document(format!("presentation: {e}")))?)
}

fn verify(doc: &ProblemDocument, echo: &CommandEcho, opts: &Options) -> anyhow::Result<Done> {
    let rep = doc.cyclic_rep()?;
    let pres = match &opts.presentation {
        Some(text) => read_presentation(text)?.presentation()?,
        None => present_right_ideal(&rep)?,
    };
    let report = verify_presentation(&rep, &pres, echo.deg_cap, echo.samples, echo.seed)?;
    let status = if report.passed() { Status::Ok } else { Status::Failed };
    let text = format!(
        "sound: {}\nidentity samples: {} passed, {} failed\ncomplete up to degree {}: {}\n",
        report.sound,
        report.identity_passed,
        report.identity_failed,
        report.degree_cap,
        report.complete()
    );
    Ok(Done { status, output: serde_json::to_value(report)?, text })
}
