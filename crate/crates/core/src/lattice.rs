//! Finite multiplicative lattices: validation, residuation, radicals and
//! element predicates.
//!
//! Every element of a finite lattice is compact (any cover of `a` already has
//! a finite subcover, namely itself), and so is every finite product of
//! compacts. The standing "compactly generated, 1 compact" hypotheses are
//! therefore automatic, and [`LElementFlags::compact`] is always `true`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::order::{FiniteLattice, OrderTables};
use crate::violation::{Axiom, Collector, ValidationError, ValidationMode, Violation};

/// Id of an element of a multiplicative lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LElem(pub usize);

impl LElem {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for LElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Unvalidated tables for a multiplicative lattice.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LatticeTables {
    pub order: OrderTables,
    /// Row-major, `mul[a * len + b] = a·b`.
    pub mul: Vec<usize>,
    pub labels: Vec<Option<String>>,
}

/// A validated finite multiplicative lattice.
///
/// Residuals, stable powers and radicals are tabulated at construction; all
/// queries afterwards are lookups or short scans.
#[derive(Clone, Debug)]
pub struct MultiplicativeLattice {
    order: FiniteLattice,
    mul: Vec<usize>,
    labels: Vec<Option<String>>,
    residual: Vec<usize>,
    stable_power: Vec<usize>,
    sqrt: Vec<usize>,
}

/// Per-element predicates of a lattice element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct LElementFlags {
    pub proper: bool,
    pub prime: bool,
    pub primary: bool,
    pub maximal: bool,
    pub principal: bool,
    pub compact: bool,
    pub sqrt: LElem,
}

/// Checks the order and multiplication axioms.
pub fn validate_lattice(
    tables: &LatticeTables,
    mode: ValidationMode,
) -> Result<MultiplicativeLattice, ValidationError> {
    let mut out = Collector::new(mode);
    let order = FiniteLattice::validate(&tables.order, &mut out);
    let Some(order) = order else {
        out.finish()?;
        unreachable!("order validation failed without a violation");
    };
    check_multiplication(&order, &tables.mul, &mut out);
    out.finish()?;
    let mut labels = tables.labels.clone();
    labels.resize(order.len(), None);
    Ok(MultiplicativeLattice::assemble(
        order,
        tables.mul.clone(),
        labels,
    ))
}

fn check_multiplication(order: &FiniteLattice, mul: &[usize], out: &mut Collector) {
    let n = order.len();
    if mul.len() != n * n {
        out.push(Violation::new(
            Axiom::NonTotalTable,
            vec![],
            format!(
                "multiplication table has {} cells, expected {}",
                mul.len(),
                n * n
            ),
        ));
        return;
    }
    if let Some(pos) = mul.iter().position(|&v| v >= n) {
        out.push(Violation::new(
            Axiom::DanglingId,
            vec![pos / n, pos % n],
            format!("product is {}, carrier has {n} elements", mul[pos]),
        ));
        return;
    }
    let m = |a: usize, b: usize| mul[a * n + b];
    let top = order.top();
    macro_rules! report {
        ($axiom:expr, $witness:expr, $($detail:tt)*) => {{
            out.push(Violation::new($axiom, $witness, format!($($detail)*)));
            if out.full() {
                return;
            }
        }};
    }
    for a in 0..n {
        if m(top, a) != a {
            report!(Axiom::Identity, vec![a], "1·{a} = {}", m(top, a));
        } else if m(a, top) != a {
            report!(Axiom::Identity, vec![a], "{a}·1 = {}", m(a, top));
        }
    }
    for a in 0..n {
        for b in a + 1..n {
            if m(a, b) != m(b, a) {
                report!(
                    Axiom::Commutativity,
                    vec![a, b],
                    "{a}·{b} = {} but {b}·{a} = {}",
                    m(a, b),
                    m(b, a)
                );
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let left = m(m(a, b), c);
                let right = m(a, m(b, c));
                if left != right {
                    report!(
                        Axiom::Associativity,
                        vec![a, b, c],
                        "({a}·{b})·{c} = {left} but {a}·({b}·{c}) = {right}"
                    );
                }
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in b..n {
                let left = m(a, order.join(b, c));
                let right = order.join(m(a, b), m(a, c));
                if left != right {
                    report!(
                        Axiom::JoinDistributivity,
                        vec![a, b, c],
                        "{a}·({b}∨{c}) = {left} but {a}·{b} ∨ {a}·{c} = {right}"
                    );
                }
            }
        }
    }
}

impl MultiplicativeLattice {
    pub(crate) fn assemble(
        order: FiniteLattice,
        mul: Vec<usize>,
        labels: Vec<Option<String>>,
    ) -> Self {
        let n = order.len();
        let mut residual = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                residual[a * n + b] =
                    order.join_all((0..n).filter(|&x| order.leq(mul[x * n + b], a)));
            }
        }
        let stable_power: Vec<usize> = (0..n)
            .map(|a| {
                let mut p = a;
                loop {
                    let next = mul[p * n + a];
                    if next == p {
                        break p;
                    }
                    p = next;
                }
            })
            .collect();
        let sqrt = (0..n)
            .map(|a| order.join_all((0..n).filter(|&x| order.leq(stable_power[x], a))))
            .collect();
        MultiplicativeLattice {
            order,
            mul,
            labels,
            residual,
            stable_power,
            sqrt,
        }
    }

    /// Number of elements in the carrier.
    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = LElem> + ExactSizeIterator + Clone {
        (0..self.len()).map(LElem)
    }

    pub fn order(&self) -> &FiniteLattice {
        &self.order
    }

    pub fn top(&self) -> LElem {
        LElem(self.order.top())
    }

    pub fn bottom(&self) -> LElem {
        LElem(self.order.bottom())
    }

    pub fn leq(&self, a: LElem, b: LElem) -> bool {
        self.order.leq(a.0, b.0)
    }

    pub fn lt(&self, a: LElem, b: LElem) -> bool {
        self.order.lt(a.0, b.0)
    }

    pub fn join(&self, a: LElem, b: LElem) -> LElem {
        LElem(self.order.join(a.0, b.0))
    }

    pub fn meet(&self, a: LElem, b: LElem) -> LElem {
        LElem(self.order.meet(a.0, b.0))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = LElem>) -> LElem {
        LElem(self.order.join_all(items.into_iter().map(|a| a.0)))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = LElem>) -> LElem {
        LElem(self.order.meet_all(items.into_iter().map(|a| a.0)))
    }

    pub fn mul(&self, a: LElem, b: LElem) -> LElem {
        LElem(self.mul[a.0 * self.len() + b.0])
    }

    /// `a^k` for `k ≥ 1`; `a^0` is the top.
    pub fn pow(&self, a: LElem, k: usize) -> LElem {
        (0..k).fold(self.top(), |acc, _| self.mul(acc, a))
    }

    /// The limit of `a ≥ a² ≥ a³ ≥ …`, reached within `len` steps.
    pub fn stable_power(&self, a: LElem) -> LElem {
        LElem(self.stable_power[a.0])
    }

    /// `(a : b)`, the join of all `x` with `x·b ≤ a`.
    pub fn residual(&self, a: LElem, b: LElem) -> LElem {
        LElem(self.residual[a.0 * self.len() + b.0])
    }

    /// `√a`, the join of all `x` with some power below `a`.
    pub fn sqrt(&self, a: LElem) -> LElem {
        LElem(self.sqrt[a.0])
    }

    pub fn label(&self, a: LElem) -> String {
        match self.labels.get(a.0) {
            Some(Some(label)) => label.clone(),
            _ => a.0.to_string(),
        }
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    /// Looks an element up by its label.
    pub fn find_label(&self, label: &str) -> Option<LElem> {
        self.labels
            .iter()
            .position(|l| l.as_deref() == Some(label))
            .map(LElem)
    }

    pub fn is_proper(&self, a: LElem) -> bool {
        a != self.top()
    }

    /// First `(x, y)` with `x·y ≤ p`, `x ≰ p`, `y ≰ p`, or `None` when `p` is prime.
    /// Non-proper elements are never prime; their witness is `(1, 1)`.
    pub fn prime_witness(&self, p: LElem) -> Option<(LElem, LElem)> {
        if !self.is_proper(p) {
            return Some((self.top(), self.top()));
        }
        self.pairs()
            .find(|&(x, y)| self.leq(self.mul(x, y), p) && !self.leq(x, p) && !self.leq(y, p))
    }

    pub fn is_prime(&self, p: LElem) -> bool {
        self.prime_witness(p).is_none()
    }

    /// First `(x, y)` with `x·y ≤ q`, `x ≰ q` and no power of `y` below `q`.
    pub fn primary_witness(&self, q: LElem) -> Option<(LElem, LElem)> {
        if !self.is_proper(q) {
            return Some((self.top(), self.top()));
        }
        self.pairs().find(|&(x, y)| {
            self.leq(self.mul(x, y), q) && !self.leq(x, q) && !self.leq(self.stable_power(y), q)
        })
    }

    pub fn is_primary(&self, q: LElem) -> bool {
        self.primary_witness(q).is_none()
    }

    /// `q` is primary with prime radical; returns that radical.
    pub fn p_primary(&self, q: LElem) -> Option<LElem> {
        let p = self.sqrt(q);
        (self.is_primary(q) && self.is_prime(p)).then_some(p)
    }

    /// A proper element covered by the top.
    pub fn is_maximal(&self, a: LElem) -> bool {
        self.is_proper(a) && self.order.covers(a.0, self.order.top())
    }

    /// `x ∧ y·e = ((x : e) ∧ y)·e` for all `x, y`.
    pub fn is_meet_principal(&self, e: LElem) -> bool {
        self.pairs().all(|(x, y)| {
            self.meet(x, self.mul(y, e)) == self.mul(self.meet(self.residual(x, e), y), e)
        })
    }

    /// `(x·e ∨ y) : e = (y : e) ∨ x` for all `x, y`.
    pub fn is_join_principal(&self, e: LElem) -> bool {
        self.pairs().all(|(x, y)| {
            self.residual(self.join(self.mul(x, e), y), e) == self.join(self.residual(y, e), x)
        })
    }

    pub fn is_principal(&self, e: LElem) -> bool {
        self.is_meet_principal(e) && self.is_join_principal(e)
    }

    pub fn flags(&self, a: LElem) -> LElementFlags {
        LElementFlags {
            proper: self.is_proper(a),
            prime: self.is_prime(a),
            primary: self.is_primary(a),
            maximal: self.is_maximal(a),
            principal: self.is_principal(a),
            compact: true,
            sqrt: self.sqrt(a),
        }
    }

    /// Every element is the join of the principal elements below it.
    pub fn is_pg(&self) -> bool {
        let principal: Vec<LElem> = self.elements().filter(|&e| self.is_principal(e)).collect();
        self.elements()
            .all(|a| self.join_all(principal.iter().copied().filter(|&e| self.leq(e, a))) == a)
    }

    /// The prime elements in id order.
    pub fn primes(&self) -> Vec<LElem> {
        self.elements().filter(|&p| self.is_prime(p)).collect()
    }

    /// Raw tables; `validate_lattice(&l.to_tables(), ..)` rebuilds `l`.
    pub fn to_tables(&self) -> LatticeTables {
        LatticeTables {
            order: OrderTables {
                len: self.len(),
                leq: self.order.leq_matrix().to_vec(),
                join: Some(self.order.join_table().to_vec()),
                meet: Some(self.order.meet_table().to_vec()),
                top: Some(self.order.top()),
                bottom: Some(self.order.bottom()),
            },
            mul: self.mul.clone(),
            labels: self.labels.clone(),
        }
    }

    fn pairs(&self) -> impl Iterator<Item = (LElem, LElem)> + '_ {
        self.elements()
            .flat_map(move |x| self.elements().map(move |y| (x, y)))
    }
}

impl PartialEq for MultiplicativeLattice {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul && self.labels == other.labels
    }
}

impl Eq for MultiplicativeLattice {}
