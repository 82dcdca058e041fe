use std::fmt;

use serde::Serialize;

/// The axiom (or structural requirement) a table failed.
///
/// Witness layouts, in order of the ids carried by [`Violation::witness`]:
///
/// | axiom | witness |
/// |---|---|
/// | order axioms | the elements involved, e.g. `(i, j, k)` for transitivity |
/// | `MissingJoin` / `MissingMeet` | the pair without a bound |
/// | table mismatches | `(i, j)` of the offending cell |
/// | lattice multiplication | `(a, b)` / `(a, b, c)` in lattice ids |
/// | module action | lattice ids first, then module ids, e.g. `(a, b, A)` for axiom ① |
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Axiom {
    EmptyCarrier,
    NonTotalTable,
    DanglingId,
    Reflexivity,
    Antisymmetry,
    Transitivity,
    MissingJoin,
    MissingMeet,
    JoinTableMismatch,
    MeetTableMismatch,
    TopMismatch,
    BottomMismatch,
    Commutativity,
    Associativity,
    Identity,
    JoinDistributivity,
    /// ① `(a ∨ b)A = aA ∨ bA`, also over sampled subsets.
    ScalarJoinDistributivity,
    /// ② `a(A ∨ B) = aA ∨ aB`, also over sampled subsets and the empty join.
    ElementJoinDistributivity,
    /// ③ `(ab)A = a(bA)`.
    ActionAssociativity,
    /// ④ `1A = A`.
    ActionIdentity,
    /// ⑤ `0A = O_M`.
    ActionAnnihilation,
}

impl Axiom {
    pub fn name(self) -> &'static str {
        match self {
            Axiom::EmptyCarrier => "empty carrier",
            Axiom::NonTotalTable => "non-total table",
            Axiom::DanglingId => "dangling element id",
            Axiom::Reflexivity => "reflexivity",
            Axiom::Antisymmetry => "antisymmetry",
            Axiom::Transitivity => "transitivity",
            Axiom::MissingJoin => "missing least upper bound",
            Axiom::MissingMeet => "missing greatest lower bound",
            Axiom::JoinTableMismatch => "join table disagrees with order",
            Axiom::MeetTableMismatch => "meet table disagrees with order",
            Axiom::TopMismatch => "declared top is not the greatest element",
            Axiom::BottomMismatch => "declared bottom is not the least element",
            Axiom::Commutativity => "commutativity",
            Axiom::Associativity => "associativity",
            Axiom::Identity => "multiplicative identity",
            Axiom::JoinDistributivity => "join-distributivity",
            Axiom::ScalarJoinDistributivity => "axiom ① (a∨b)A = aA∨bA",
            Axiom::ElementJoinDistributivity => "axiom ② a(A∨B) = aA∨aB",
            Axiom::ActionAssociativity => "axiom ③ (ab)A = a(bA)",
            Axiom::ActionIdentity => "axiom ④ 1A = A",
            Axiom::ActionAnnihilation => "axiom ⑤ 0A = O_M",
        }
    }
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One failed axiom instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: Vec<usize>,
    pub detail: String,
}

impl Violation {
    pub fn new(axiom: Axiom, witness: Vec<usize>, detail: impl Into<String>) -> Self {
        Violation {
            axiom,
            witness,
            detail: detail.into(),
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violated at {:?}", self.axiom, self.witness)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Whether validation stops at the first violation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ValidationMode {
    FirstViolation,
    #[default]
    AllViolations,
}

/// A non-empty list of violations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("{} axiom violation(s); first: {}", .violations.len(), .violations[0])]
pub struct ValidationError {
    pub violations: Vec<Violation>,
}

impl ValidationError {
    pub fn axioms(&self) -> Vec<Axiom> {
        let mut axioms: Vec<Axiom> = self.violations.iter().map(|v| v.axiom).collect();
        axioms.sort();
        axioms.dedup();
        axioms
    }
}

/// Accumulates violations according to a [`ValidationMode`].
#[derive(Debug)]
pub(crate) struct Collector {
    mode: ValidationMode,
    violations: Vec<Violation>,
}

impl Collector {
    pub(crate) fn new(mode: ValidationMode) -> Self {
        Collector {
            mode,
            violations: Vec::new(),
        }
    }

    pub(crate) fn push(&mut self, violation: Violation) {
        if !self.full() {
            self.violations.push(violation);
        }
    }

    /// True once no more violations will be recorded.
    pub(crate) fn full(&self) -> bool {
        self.mode == ValidationMode::FirstViolation && !self.violations.is_empty()
    }

    pub(crate) fn len(&self) -> usize {
        self.violations.len()
    }

    pub(crate) fn finish(self) -> Result<(), ValidationError> {
        if self.violations.is_empty() {
            Ok(())
        } else {
            Err(ValidationError {
                violations: self.violations,
            })
        }
    }
}
