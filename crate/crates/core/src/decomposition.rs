//! Verdicts and witnesses shared by every decomposition procedure.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// How strictly "non-trivial" is read when accepting a witness.
///
/// * `PaperLiteral`: factors must not be identity morphisms. Nothing else.
/// * `Nondegenerate`: additionally no factor may live on an empty or unit
///   object, and zero or scalar factors are rejected.
/// * `Essential`: additionally no factor may be an isomorphism (for
///   sequential splits of functions: neither factor may be injective or
///   surjective).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Policy {
    PaperLiteral,
    #[default]
    Nondegenerate,
    Essential,
}

impl Policy {
    pub const ALL: [Policy; 3] = [Policy::PaperLiteral, Policy::Nondegenerate, Policy::Essential];

    pub fn as_str(self) -> &'static str {
        match self {
            Policy::PaperLiteral => "paper_literal",
            Policy::Nondegenerate => "nondegenerate",
            Policy::Essential => "essential",
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Policy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "paper_literal" => Ok(Policy::PaperLiteral),
            "nondegenerate" => Ok(Policy::Nondegenerate),
            "essential" => Ok(Policy::Essential),
            other => Err(format!("unknown policy `{other}`")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Decomposable,
    NotDecomposable,
    /// Witnesses exist, but every one of them is degenerate under the
    /// requested policy (empty or unit factors, zero or scalar factors).
    DegenerateOnly,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Decomposable => "decomposable",
            Verdict::NotDecomposable => "not_decomposable",
            Verdict::DegenerateOnly => "degenerate_only",
        }
    }

    pub fn is_decomposable(self) -> bool {
        self == Verdict::Decomposable
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Result of a decomposition query.
///
/// For sequential queries `factors` is `(first, second)` with
/// `f = second ∘ first`, and `witness_isos` is empty. For parallel queries
/// `factors` is `(g₁, g₂)` and `witness_isos` is `(dom_iso, cod_iso)` with
/// `dom_iso: C₁ ⊗ C₂ → C` and `cod_iso: D₁ ⊗ D₂ → D`, so that
/// `g ∘ dom_iso = cod_iso ∘ (g₁ ⊗ g₂)`.
///
/// When the verdict is `DegenerateOnly` the factors, if present, are the
/// best degenerate witness found.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionOutcome<M> {
    pub verdict: Verdict,
    pub policy: Policy,
    pub factors: Option<(M, M)>,
    pub witness_isos: Option<(M, M)>,
}

impl<M> DecompositionOutcome<M> {
    pub fn negative(verdict: Verdict, policy: Policy) -> Self {
        DecompositionOutcome { verdict, policy, factors: None, witness_isos: None }
    }

    pub fn not_decomposable(policy: Policy) -> Self {
        Self::negative(Verdict::NotDecomposable, policy)
    }

    pub fn sequential(verdict: Verdict, policy: Policy, first: M, second: M) -> Self {
        DecompositionOutcome { verdict, policy, factors: Some((first, second)), witness_isos: None }
    }

    pub fn parallel(verdict: Verdict, policy: Policy, factors: (M, M), isos: (M, M)) -> Self {
        DecompositionOutcome { verdict, policy, factors: Some(factors), witness_isos: Some(isos) }
    }

    pub fn is_decomposable(&self) -> bool {
        self.verdict.is_decomposable()
    }

    pub fn map<N>(self, mut f: impl FnMut(M) -> N) -> DecompositionOutcome<N> {
        DecompositionOutcome {
            verdict: self.verdict,
            policy: self.policy,
            factors: self.factors.map(|(a, b)| (f(a), f(b))),
            witness_isos: self.witness_isos.map(|(a, b)| (f(a), f(b))),
        }
    }
}

/// Classification of one candidate witness, used to turn a set of
/// candidates into a verdict uniformly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct WitnessGrade {
    /// Some factor is an identity morphism. Never acceptable.
    pub identity: bool,
    /// Some factor is degenerate (empty/unit object, zero or scalar factor).
    pub degenerate: bool,
    /// Some factor is an isomorphism (or, for sequential set splits, mono or epi).
    pub trivial_iso: bool,
}

impl WitnessGrade {
    pub fn accepted(self, policy: Policy) -> bool {
        if self.identity {
            return false;
        }
        match policy {
            Policy::PaperLiteral => true,
            Policy::Nondegenerate => !self.degenerate,
            Policy::Essential => !self.degenerate && !self.trivial_iso,
        }
    }

    /// Would be accepted if degeneracy were ignored.
    pub fn accepted_up_to_degeneracy(self, policy: Policy) -> bool {
        WitnessGrade { degenerate: false, ..self }.accepted(policy)
    }
}

/// Verdict over a set of graded candidates, given the policy.
pub(crate) fn verdict_from_grades(grades: impl IntoIterator<Item = WitnessGrade>, policy: Policy) -> Verdict {
    let mut degenerate = false;
    for g in grades {
        if g.accepted(policy) {
            return Verdict::Decomposable;
        }
        degenerate |= g.accepted_up_to_degeneracy(policy);
    }
    if degenerate {
        Verdict::DegenerateOnly
    } else {
        Verdict::NotDecomposable
    }
}
