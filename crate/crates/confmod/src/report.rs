//! Report structures shared by the engine and the CLI, with the versioned
//! plain-text and structured serializations. Reports are deterministic:
//! outcome order is canonical and independent of execution order.

use std::fmt;

use serde_json::{json, Value};

pub const GSB_SCHEMA: &str = "confmod.gsb-report/v1";
pub const FREEMOD_SCHEMA: &str = "confmod.freemod-report/v1";
pub const AXIOM_SCHEMA: &str = "confmod.axiom-report/v1";

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Verdict {
    Pass,
    PassWithinWindow,
    Fail,
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Pass => "PASS",
            Verdict::PassWithinWindow => "PASS_WITHIN_WINDOW",
            Verdict::Fail => "FAIL",
        };
        write!(f, "{s}")
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum CompositionKind {
    Inclusion,
    Intersection,
    LeftMultiplication,
}

impl fmt::Display for CompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CompositionKind::Inclusion => "inclusion",
            CompositionKind::Intersection => "intersection",
            CompositionKind::LeftMultiplication => "left-multiplication",
        };
        write!(f, "{s}")
    }
}

/// One checked composition: either it reduced to zero or the residual is
/// kept as the witness.
#[derive(Clone, Debug)]
pub struct CompositionOutcome {
    pub kind: CompositionKind,
    pub label: String,
    pub reduced_to_zero: bool,
    pub residual: Option<String>,
    pub steps: usize,
}

impl CompositionOutcome {
    fn to_json(&self) -> Value {
        json!({
            "kind": self.kind.to_string(),
            "label": self.label,
            "reduced_to_zero": self.reduced_to_zero,
            "residual": self.residual,
            "steps": self.steps,
        })
    }

    fn to_text_line(&self) -> String {
        if self.reduced_to_zero {
            format!("  {} -> 0 ({} steps)", self.label, self.steps)
        } else {
            format!(
                "  {} -> RESIDUAL {} ({} steps)",
                self.label,
                self.residual.as_deref().unwrap_or("?"),
                self.steps
            )
        }
    }
}

/// Soundness boundary of the finite left-multiplication check: when the
/// window end reaches the largest locality bound of any generator against
/// any relation monomial, every composition beyond the window is
/// identically zero and the verdict needs no window qualifier.
#[derive(Clone, Copy, Debug)]
pub struct ClosureCertificate {
    pub holds: bool,
    pub max_locality: u32,
    pub window_end: u32,
}

#[derive(Clone, Debug)]
pub struct GsbReport {
    pub preset: String,
    pub uniform_bound: u32,
    pub window: u32,
    pub relation_count: usize,
    pub outcomes: Vec<CompositionOutcome>,
    pub closure: ClosureCertificate,
    pub verdict: Verdict,
}

impl GsbReport {
    pub fn count(&self, kind: CompositionKind) -> usize {
        self.outcomes.iter().filter(|o| o.kind == kind).count()
    }

    pub fn failing(&self) -> impl Iterator<Item = &CompositionOutcome> {
        self.outcomes.iter().filter(|o| !o.reduced_to_zero)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("confmod gsb-report v1\n");
        out.push_str(&format!("presentation: {}\n", self.preset));
        out.push_str(&format!("uniform locality: {}\n", self.uniform_bound));
        out.push_str(&format!(
            "left-multiplication window: [{}, {}]\n",
            self.uniform_bound,
            self.uniform_bound + self.window
        ));
        out.push_str(&format!("relations: {}\n", self.relation_count));
        out.push_str(&format!(
            "compositions: {} inclusion, {} intersection, {} left-multiplication\n",
            self.count(CompositionKind::Inclusion),
            self.count(CompositionKind::Intersection),
            self.count(CompositionKind::LeftMultiplication)
        ));
        for o in &self.outcomes {
            out.push_str(&o.to_text_line());
            out.push('\n');
        }
        out.push_str(&format!(
            "closure certificate: {} (max locality {}, window end {})\n",
            if self.closure.holds { "holds" } else { "open" },
            self.closure.max_locality,
            self.closure.window_end
        ));
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": GSB_SCHEMA,
            "presentation": self.preset,
            "uniform_locality": self.uniform_bound,
            "window": self.window,
            "relations": self.relation_count,
            "outcomes": self.outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
            "closure_certificate": {
                "holds": self.closure.holds,
                "max_locality": self.closure.max_locality,
                "window_end": self.closure.window_end,
            },
            "verdict": self.verdict.to_string(),
        })
    }
}

/// Report of the free-module construction over a quotient algebra: the
/// bounded relation-action slice, its composition check, and the two
/// normal-form enumerations that must agree.
#[derive(Clone, Debug)]
pub struct FreeModReport {
    pub preset: String,
    pub max_len: u32,
    pub max_d: u32,
    pub d_free: bool,
    pub not_d_free_witness: Option<String>,
    pub r1_count: usize,
    pub r1_outcomes: Vec<CompositionOutcome>,
    pub brute_irr: Vec<String>,
    pub closed_irr: Vec<String>,
    pub irr_agree: Option<bool>,
    pub naive_irr_consistent: Option<bool>,
    pub inconsistency_witnesses: Vec<String>,
    pub quotient: Option<(String, String)>,
    pub verdict: Verdict,
}

impl FreeModReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("confmod freemod-report v1\n");
        out.push_str(&format!("presentation: {}\n", self.preset));
        out.push_str(&format!("bounds: max-len {}, max-d {}\n", self.max_len, self.max_d));
        if self.d_free {
            out.push_str("algebra relations: D-free\n");
            out.push_str(&format!("relation-action slice size: {}\n", self.r1_count));
            for o in &self.r1_outcomes {
                out.push_str(&o.to_text_line());
                out.push('\n');
            }
            out.push_str(&format!(
                "normal forms (brute force): {}\n",
                self.brute_irr.join(", ")
            ));
            out.push_str(&format!(
                "normal forms (closed form): {}\n",
                self.closed_irr.join(", ")
            ));
            out.push_str(&format!(
                "enumerations agree: {}\n",
                self.irr_agree.map_or("n/a".into(), |b| b.to_string())
            ));
        } else {
            out.push_str(&format!(
                "algebra relations: NOT D-free ({})\n",
                self.not_d_free_witness.as_deref().unwrap_or("?")
            ));
            out.push_str(&format!(
                "naive normal-form prediction: {}\n",
                self.closed_irr.join(", ")
            ));
            out.push_str(&format!(
                "naive prediction consistent: {}\n",
                self.naive_irr_consistent
                    .map_or("n/a".into(), |b| b.to_string())
            ));
            for w in &self.inconsistency_witnesses {
                out.push_str(&format!("  witness in the relation-action slice: {}\n", w));
            }
        }
        if let Some((input, nf)) = &self.quotient {
            out.push_str(&format!("quotient normal form: {} -> {}\n", input, nf));
        }
        out.push_str(&format!("verdict: {}\n", self.verdict));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": FREEMOD_SCHEMA,
            "presentation": self.preset,
            "max_len": self.max_len,
            "max_d": self.max_d,
            "d_free": self.d_free,
            "not_d_free_witness": self.not_d_free_witness,
            "r1_count": self.r1_count,
            "r1_outcomes": self.r1_outcomes.iter().map(|o| o.to_json()).collect::<Vec<_>>(),
            "brute_irr": self.brute_irr,
            "closed_irr": self.closed_irr,
            "irr_agree": self.irr_agree,
            "naive_irr_consistent": self.naive_irr_consistent,
            "inconsistency_witnesses": self.inconsistency_witnesses,
            "quotient": self.quotient.as_ref().map(|(i, nf)| json!({"input": i, "normal_form": nf})),
            "verdict": self.verdict.to_string(),
        })
    }
}

#[derive(Clone, Debug)]
pub struct IdentityStats {
    pub name: String,
    pub passed: u32,
    pub total: u32,
}

/// Outcome of the randomized identity suite on a presentation.
#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub preset: String,
    pub samples: u32,
    pub seed: u64,
    pub identities: Vec<IdentityStats>,
    pub counterexample: Option<String>,
    pub pass: bool,
}

impl AxiomReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str("confmod axiom-report v1\n");
        out.push_str(&format!("presentation: {}\n", self.preset));
        out.push_str(&format!("samples: {} (seed {})\n", self.samples, self.seed));
        for s in &self.identities {
            out.push_str(&format!("  {}: {}/{}\n", s.name, s.passed, s.total));
        }
        if let Some(ce) = &self.counterexample {
            out.push_str(&format!("counterexample: {}\n", ce));
        }
        out.push_str(&format!("verdict: {}\n", if self.pass { "PASS" } else { "FAIL" }));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "schema": AXIOM_SCHEMA,
            "presentation": self.preset,
            "samples": self.samples,
            "seed": self.seed,
            "identities": self.identities.iter().map(|s| json!({
                "name": s.name, "passed": s.passed, "total": s.total,
            })).collect::<Vec<_>>(),
            "counterexample": self.counterexample,
            "verdict": if self.pass { "PASS" } else { "FAIL" },
        })
    }
}
