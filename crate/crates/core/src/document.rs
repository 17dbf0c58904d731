//! JSON problem and result documents.
//!
//! Polynomials travel as strings in the usual grammar and coefficients as
//! integers or `"a/b"` strings, so documents stay editable by hand.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse_poly, Alphabet, Polynomial};
use crate::error::{Error, Result, Violation};
use crate::generation::{GeneratingSet, Provenance};
use crate::linalg::Matrix;
use crate::presentation::{Presentation, PresentationStats, RelationKind};
use crate::quotient::{AlgebraRep, CyclicModuleRep};
use crate::ring::{parse_coeff, Coeff, Ring};

/// `{"kind": "Z" | "Q" | "Fp", "p": 5}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
}

impl RingSpec {
    pub fn of(ring: Ring) -> RingSpec {
        match ring {
            Ring::Integers => RingSpec { kind: "Z".into(), p: None },
            Ring::Rationals => RingSpec { kind: "Q".into(), p: None },
            Ring::PrimeField(p) => RingSpec { kind: "Fp".into(), p: Some(p as u64) },
        }
    }

    pub fn ring(&self) -> Result<Ring> {
        match (self.kind.as_str(), self.p) {
            ("Z", None) => Ok(Ring::Integers),
            ("Q", None) => Ok(Ring::Rationals),
            ("Fp", Some(p)) => Ring::prime_field(p),
            ("Fp", None) => Err(Error::Document("ring kind Fp needs a prime `p`".into())),
            (k, _) => Err(Error::Document(format!("unknown ring `{k}` (expected Z, Q or Fp with p)"))),
        }
    }
}

/// A coefficient written as a JSON integer or a string such as `"-3/4"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

impl Scalar {
    pub fn of(c: &Coeff) -> Scalar {
        match c.to_i64() {
            Some(n) => Scalar::Int(n),
            None => Scalar::Text(c.to_string()),
        }
    }

    pub fn coeff(&self, ring: Ring) -> Result<Coeff> {
        match self {
            Scalar::Int(n) => Ok(ring.from_i64(*n)),
            Scalar::Text(s) => parse_coeff(ring, s),
        }
    }
}

fn scalars(v: &[Coeff]) -> Vec<Scalar> {
    v.iter().map(Scalar::of).collect()
}

fn coeffs(ring: Ring, v: &[Scalar]) -> Result<Vec<Coeff>> {
    v.iter().map(|s| s.coeff(ring)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RepKind {
    CyclicModule,
    Algebra,
}

/// Generator names with witnesses for the extension combiner.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExtensionInput {
    pub generators: Vec<NamedPolynomial>,
    #[serde(default)]
    pub relations: Vec<String>,
    #[serde(default)]
    pub context: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedPolynomial {
    pub name: String,
    pub witness: String,
}

/// Command parameters. Command-line flags take precedence.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Parameters {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub deg_cap: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub simplify: Option<bool>,
    /// Generators of an ideal inside the right ideal, for `present` and `restrict`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub i_generators: Vec<String>,
    /// Names of the variables forming `Y`; all variables when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y_subset: Option<Vec<String>>,
    /// Members to rewrite over the generating set.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rewrite: Vec<String>,
    /// Vectors over the labels replacing the canonical `U`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub explicit_u: Option<Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extension: Option<ExtensionInput>,
}

/// A problem: ring, variables, one representation and parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDocument {
    pub ring: RingSpec,
    pub variables: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<RepKind>,
    /// Basis labels; for a cyclic module `"1"` followed by the labels `b`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub representatives: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub action: BTreeMap<String, Vec<Vec<Scalar>>>,
    /// `structure_constants[i][j]` is the coordinate vector of `q_i·q_j`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub structure_constants: Vec<Vec<Vec<Scalar>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub images: BTreeMap<String, Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub marked_submodule: Vec<Vec<Scalar>>,
    #[serde(default)]
    pub parameters: Parameters,
}

/// What a document's representation payload turned into.
#[derive(Clone, Debug)]
pub enum Representation {
    Cyclic(CyclicModuleRep),
    Algebra(AlgebraRep),
}

impl ProblemDocument {
    pub fn from_json(text: &str) -> Result<ProblemDocument> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn ring(&self) -> Result<Ring> {
        self.ring.ring()
    }

    pub fn alphabet(&self) -> Result<Alphabet> {
        Alphabet::new(self.variables.iter().cloned())
    }

    pub fn poly(&self, text: &str) -> Result<Polynomial> {
        parse_poly(text, &self.alphabet()?, self.ring()?, false)
    }

    pub fn polys(&self, texts: &[String]) -> Result<Vec<Polynomial>> {
        texts.iter().map(|t| self.poly(t)).collect()
    }

    /// Labels `b` without the leading `"1"`.
    fn labels(&self) -> Vec<String> {
        match self.basis.first().map(String::as_str) {
            Some("1") => self.basis[1..].to_vec(),
            _ => self.basis.clone(),
        }
    }

    fn per_variable<T: Clone>(&self, map: &BTreeMap<String, T>, what: &str) -> Result<Vec<T>> {
        if let Some(extra) = map.keys().find(|k| !self.variables.contains(k)) {
            return Err(Error::Document(format!("{what} given for unknown variable `{extra}`")));
        }
        self.variables
            .iter()
            .map(|v| map.get(v).cloned().ok_or_else(|| Error::Document(format!("{what} missing for variable `{v}`"))))
            .collect()
    }

    /// Builds the representation, reporting every violated invariant.
    pub fn representation(&self) -> Result<Representation> {
        match self.kind {
            Some(RepKind::CyclicModule) => self.cyclic_rep().map(Representation::Cyclic),
            Some(RepKind::Algebra) => self.algebra_rep().map(Representation::Algebra),
            None => Err(Error::Document("missing `kind` (cyclic_module or algebra)".into())),
        }
    }

    pub fn cyclic_rep(&self) -> Result<CyclicModuleRep> {
        if self.kind != Some(RepKind::CyclicModule) {
            return Err(Error::Document("expected a document of kind cyclic_module".into()));
        }
        let ring = self.ring()?;
        let alphabet = self.alphabet()?;
        let labels = self.labels();
        if let Some(extra) = self.representatives.keys().find(|k| !labels.contains(k)) {
            return Err(Error::Document(format!("representative given for unknown label `{extra}`")));
        }
        let reps = labels
            .iter()
            .map(|b| {
                let text = self
                    .representatives
                    .get(b)
                    .ok_or_else(|| Error::Document(format!("representative missing for label `{b}`")))?;
                parse_poly(text, &alphabet, ring, false)
            })
            .collect::<Result<Vec<_>>>()?;
        let relations = self.relations.iter().map(|v| coeffs(ring, v)).collect::<Result<Vec<_>>>()?;
        let dim = labels.len() + 1;
        let action = self
            .per_variable(&self.action, "action matrix")?
            .iter()
            .map(|rows| {
                let rows = rows.iter().map(|r| coeffs(ring, r)).collect::<Result<Vec<_>>>()?;
                Matrix::new(ring, dim, rows).map_err(|_| {
                    Error::InvalidRep(vec![Violation::new("shape", format!("action matrices must be {dim}×{dim}"))])
                })
            })
            .collect::<Result<Vec<_>>>()?;
        CyclicModuleRep::new(ring, alphabet, labels, reps, relations, action)
    }

    pub fn algebra_rep(&self) -> Result<AlgebraRep> {
        if self.kind != Some(RepKind::Algebra) {
            return Err(Error::Document("expected a document of kind algebra".into()));
        }
        let ring = self.ring()?;
        let rank = self.basis.len();
        let relations = self.relations.iter().map(|v| coeffs(ring, v)).collect::<Result<Vec<_>>>()?;
        let structure = self
            .structure_constants
            .iter()
            .map(|row| row.iter().map(|v| coeffs(ring, v)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let images = self
            .per_variable(&self.images, "image")?
            .iter()
            .map(|v| coeffs(ring, v))
            .collect::<Result<Vec<_>>>()?;
        let marked = self.marked_submodule.iter().map(|v| coeffs(ring, v)).collect::<Result<Vec<_>>>()?;
        AlgebraRep::new(ring, self.alphabet()?, rank, relations, structure, images, marked)
    }

    pub fn from_cyclic(rep: &CyclicModuleRep) -> ProblemDocument {
        let names = rep.alphabet().names();
        ProblemDocument {
            ring: RingSpec::of(rep.ring()),
            variables: names.to_vec(),
            kind: Some(RepKind::CyclicModule),
            basis: std::iter::once("1".to_string()).chain(rep.labels().iter().cloned()).collect(),
            representatives: rep.labels().iter().cloned().zip(rep.representatives().iter().map(|r| r.to_string())).collect(),
            relations: rep.relations().basis().iter().map(|v| scalars(v)).collect(),
            action: names
                .iter()
                .cloned()
                .zip(rep.action().iter().map(|m| m.rows().iter().map(|r| scalars(r)).collect()))
                .collect(),
            structure_constants: vec![],
            images: BTreeMap::new(),
            marked_submodule: vec![],
            parameters: Parameters::default(),
        }
    }

    /// Basis labels are `q1, q2, …`.
    pub fn from_algebra(rep: &AlgebraRep) -> ProblemDocument {
        let names = rep.alphabet().names();
        ProblemDocument {
            ring: RingSpec::of(rep.ring()),
            variables: names.to_vec(),
            kind: Some(RepKind::Algebra),
            basis: (1..=rep.rank()).map(|i| format!("q{i}")).collect(),
            representatives: BTreeMap::new(),
            relations: rep.relations().basis().iter().map(|v| scalars(v)).collect(),
            action: BTreeMap::new(),
            structure_constants: rep.structure().iter().map(|row| row.iter().map(|v| scalars(v)).collect()).collect(),
            images: names.iter().cloned().zip(rep.images().iter().map(|v| scalars(v))).collect(),
            marked_submodule: rep.marked().basis().iter().map(|v| scalars(v)).collect(),
            parameters: Parameters::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub name: String,
    pub witness: String,
}

/// A presentation as a document; round-trips through [`Presentation`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationDoc {
    pub ring: RingSpec,
    pub variables: Vec<String>,
    pub generators: Vec<GeneratorDoc>,
    pub relations: Vec<String>,
    pub relation_kinds: Vec<RelationKind>,
    /// Ideal of `K⟨X⟩` the relations vanish modulo, when not zero.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modulo: Vec<String>,
    pub stats: PresentationStats,
}

impl PresentationDoc {
    pub fn of(p: &Presentation) -> PresentationDoc {
        PresentationDoc {
            ring: RingSpec::of(p.ring),
            variables: p.variables.names().to_vec(),
            generators: p
                .generators
                .names()
                .iter()
                .zip(&p.witnesses)
                .map(|(n, w)| GeneratorDoc { name: n.clone(), witness: w.to_string() })
                .collect(),
            relations: p.relations.iter().map(|r| r.to_string()).collect(),
            relation_kinds: p.kinds.clone(),
            modulo: p.modulo.iter().map(|r| r.to_string()).collect(),
            stats: p.stats(),
        }
    }

    pub fn presentation(&self) -> Result<Presentation> {
        let ring = self.ring.ring()?;
        let variables = Alphabet::new(self.variables.iter().cloned())?;
        let generators = Alphabet::new(self.generators.iter().map(|g| g.name.clone()))?;
        let witnesses = self
            .generators
            .iter()
            .map(|g| parse_poly(&g.witness, &variables, ring, false))
            .collect::<Result<Vec<_>>>()?;
        let relations =
            self.relations.iter().map(|r| parse_poly(r, &generators, ring, false)).collect::<Result<Vec<_>>>()?;
        if self.relation_kinds.len() != relations.len() {
            return Err(Error::Document("relation_kinds must have one entry per relation".into()));
        }
        let modulo = self.modulo.iter().map(|r| parse_poly(r, &variables, ring, false)).collect::<Result<Vec<_>>>()?;
        Ok(Presentation { ring, variables, generators, witnesses, relations, kinds: self.relation_kinds.clone(), modulo })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ProvenanceKind {
    U,
    Z,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProvenanceDoc {
    /// The word `w` of a `w − γ(w)` generator.
    pub word: Option<String>,
    pub kind: ProvenanceKind,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteDoc {
    pub target: String,
    pub combination: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenerationDoc {
    pub y_subset: Vec<String>,
    pub generators: Vec<String>,
    pub provenance: Vec<ProvenanceDoc>,
    pub dropped: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub rewrites: Vec<RewriteDoc>,
}

impl GenerationDoc {
    pub fn of(alphabet: &Alphabet, y: &[u32], set: &GeneratingSet) -> GenerationDoc {
        GenerationDoc {
            y_subset: y.iter().map(|&i| alphabet.name(i).to_string()).collect(),
            generators: set.generators().iter().map(|g| g.to_string()).collect(),
            provenance: set
                .provenance()
                .into_iter()
                .map(|p| match p {
                    Provenance::U(w) => ProvenanceDoc { word: Some(w.render(alphabet)), kind: ProvenanceKind::U },
                    Provenance::Z(_) => ProvenanceDoc { word: None, kind: ProvenanceKind::Z },
                })
                .collect(),
            dropped: set.dropped,
            rewrites: vec![],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub invariant: String,
    pub detail: String,
}

impl From<&Violation> for ViolationDoc {
    fn from(v: &Violation) -> Self {
        ViolationDoc { invariant: v.invariant.clone(), detail: v.detail.clone() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Inconclusive,
    InvalidInput,
    /// The computation finished and found a defect, such as an unsound
    /// relation during verification.
    Failed,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::InvalidInput => 2,
            Status::Inconclusive => 3,
        }
    }
}

/// Effective settings of a run, echoed in its result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandEcho {
    pub name: String,
    pub deg_cap: usize,
    pub samples: usize,
    pub seed: u64,
    pub simplify: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub command: CommandEcho,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<serde_json::Value>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub violations: Vec<ViolationDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub diagnostics: Vec<String>,
    /// Wall-clock milliseconds per phase; only present on request since it
    /// breaks byte-for-byte reproducibility.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl ResultDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}
