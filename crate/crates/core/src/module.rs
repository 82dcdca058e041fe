//! Finite lattice modules over a [`MultiplicativeLattice`].

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::lattice::{LElem, MultiplicativeLattice};
use crate::order::{FiniteLattice, OrderTables};
use crate::violation::{Axiom, Collector, ValidationError, ValidationMode, Violation};

/// Id of an element of a lattice module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MElem(pub usize);

impl MElem {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for MElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Precondition failures of element-level operations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ElementError {
    #[error("module element {0} is not proper")]
    NotProper(MElem),
    #[error("lattice element {0} is not prime")]
    NotPrimeInLattice(LElem),
    #[error("module element {0} is not prime")]
    NotPrime(MElem),
    #[error("module element {below} is not below {above}")]
    NotBelow { below: MElem, above: MElem },
}

/// Unvalidated tables for a module.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ModuleTables {
    pub order: OrderTables,
    /// Row-major over (lattice element, module element): `act[a * len + A] = aA`.
    pub act: Vec<usize>,
    pub labels: Vec<Option<String>>,
}

/// Knobs for [`validate_module`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModuleValidation {
    pub mode: ValidationMode,
    /// Random subsets tried for each of axioms ① and ②, on top of the binary
    /// and empty-join cases.
    pub subset_samples: usize,
    pub seed: u64,
}

impl Default for ModuleValidation {
    fn default() -> Self {
        ModuleValidation {
            mode: ValidationMode::AllViolations,
            subset_samples: 200,
            seed: 0,
        }
    }
}

/// A validated lattice module with its residual, prime and radical tables.
#[derive(Clone, Debug)]
pub struct LatticeModule {
    lattice: Arc<MultiplicativeLattice>,
    order: FiniteLattice,
    act: Vec<usize>,
    labels: Vec<Option<String>>,
    /// `(N : a)` at `N * |L| + a`.
    colon_scalar: Vec<usize>,
    /// `(A : B)` at `A * |M| + B`, a lattice id.
    colon_elem: Vec<usize>,
    prime: Vec<bool>,
    /// `rad(N)`; the entry for `I_M` is unused.
    rad: Vec<usize>,
}

/// Checks that `tables` describe an `L`-module.
pub fn validate_module(
    lattice: Arc<MultiplicativeLattice>,
    tables: &ModuleTables,
    options: ModuleValidation,
) -> Result<LatticeModule, ValidationError> {
    let mut out = Collector::new(options.mode);
    let Some(order) = FiniteLattice::validate(&tables.order, &mut out) else {
        out.finish()?;
        unreachable!("order validation failed without a violation");
    };
    check_action(&lattice, &order, &tables.act, options, &mut out);
    out.finish()?;
    let mut labels = tables.labels.clone();
    labels.resize(order.len(), None);
    Ok(LatticeModule::assemble(
        lattice,
        order,
        tables.act.clone(),
        labels,
    ))
}

fn check_action(
    l: &MultiplicativeLattice,
    order: &FiniteLattice,
    act: &[usize],
    options: ModuleValidation,
    out: &mut Collector,
) {
    let (ln, mn) = (l.len(), order.len());
    if act.len() != ln * mn {
        out.push(Violation::new(
            Axiom::NonTotalTable,
            vec![],
            format!("action table has {} cells, expected {}", act.len(), ln * mn),
        ));
        return;
    }
    if let Some(pos) = act.iter().position(|&v| v >= mn) {
        out.push(Violation::new(
            Axiom::DanglingId,
            vec![pos / mn, pos % mn],
            format!("product is {}, module has {mn} elements", act[pos]),
        ));
        return;
    }
    let ac = |a: usize, x: usize| act[a * mn + x];
    macro_rules! report {
        ($axiom:expr, $witness:expr, $($detail:tt)*) => {{
            out.push(Violation::new($axiom, $witness, format!($($detail)*)));
            if out.full() {
                return;
            }
        }};
    }
    let (one, zero) = (l.top().0, l.bottom().0);
    let om = order.bottom();

    for x in 0..mn {
        if ac(one, x) != x {
            report!(Axiom::ActionIdentity, vec![x], "1·{x} = {}", ac(one, x));
        }
    }
    for x in 0..mn {
        if ac(zero, x) != om {
            report!(
                Axiom::ActionAnnihilation,
                vec![x],
                "0·{x} = {}",
                ac(zero, x)
            );
        }
    }
    for a in 0..ln {
        for b in a..ln {
            let ab = l.join(LElem(a), LElem(b)).0;
            for x in 0..mn {
                let left = ac(ab, x);
                let right = order.join(ac(a, x), ac(b, x));
                if left != right {
                    report!(
                        Axiom::ScalarJoinDistributivity,
                        vec![a, b, x],
                        "({a}∨{b})·{x} = {left} but {right}"
                    );
                }
            }
        }
    }
    for a in 0..ln {
        if ac(a, om) != om {
            report!(
                Axiom::ElementJoinDistributivity,
                vec![a, om],
                "{a}·O_M = {}",
                ac(a, om)
            );
        }
        for x in 0..mn {
            for y in x..mn {
                let left = ac(a, order.join(x, y));
                let right = order.join(ac(a, x), ac(a, y));
                if left != right {
                    report!(
                        Axiom::ElementJoinDistributivity,
                        vec![a, x, y],
                        "{a}·({x}∨{y}) = {left} but {right}"
                    );
                }
            }
        }
    }
    for a in 0..ln {
        for b in 0..ln {
            let ab = l.mul(LElem(a), LElem(b)).0;
            for x in 0..mn {
                let left = ac(ab, x);
                let right = ac(a, ac(b, x));
                if left != right {
                    report!(
                        Axiom::ActionAssociativity,
                        vec![a, b, x],
                        "({a}·{b})·{x} = {left} but {right}"
                    );
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(options.seed);
    for _ in 0..options.subset_samples {
        let subset: Vec<usize> = (0..ln).filter(|_| rng.gen_bool(0.5)).collect();
        let x = rng.gen_range(0..mn);
        let left = ac(l.order().join_all(subset.iter().copied()), x);
        let right = order.join_all(subset.iter().map(|&a| ac(a, x)));
        if left != right {
            let mut witness = subset.clone();
            witness.push(x);
            report!(
                Axiom::ScalarJoinDistributivity,
                witness,
                "(∨{subset:?})·{x} = {left} but {right}"
            );
        }
        let subset: Vec<usize> = (0..mn).filter(|_| rng.gen_bool(0.5)).collect();
        let a = rng.gen_range(0..ln);
        let left = ac(a, order.join_all(subset.iter().copied()));
        let right = order.join_all(subset.iter().map(|&x| ac(a, x)));
        if left != right {
            let mut witness = vec![a];
            witness.extend(&subset);
            report!(
                Axiom::ElementJoinDistributivity,
                witness,
                "{a}·(∨{subset:?}) = {left} but {right}"
            );
        }
    }
}

impl LatticeModule {
    pub(crate) fn assemble(
        lattice: Arc<MultiplicativeLattice>,
        order: FiniteLattice,
        act: Vec<usize>,
        labels: Vec<Option<String>>,
    ) -> Self {
        let (ln, mn) = (lattice.len(), order.len());
        let mut colon_scalar = vec![0; mn * ln];
        for n in 0..mn {
            for a in 0..ln {
                colon_scalar[n * ln + a] =
                    order.join_all((0..mn).filter(|&x| order.leq(act[a * mn + x], n)));
            }
        }
        let mut colon_elem = vec![0; mn * mn];
        for a in 0..mn {
            for b in 0..mn {
                colon_elem[a * mn + b] = lattice
                    .join_all(
                        lattice
                            .elements()
                            .filter(|x| order.leq(act[x.0 * mn + b], a)),
                    )
                    .0;
            }
        }
        let mut module = LatticeModule {
            lattice,
            order,
            act,
            labels,
            colon_scalar,
            colon_elem,
            prime: Vec::new(),
            rad: Vec::new(),
        };
        module.prime = module
            .elements()
            .map(|n| module.prime_witness(n).is_none())
            .collect();
        let top = module.top();
        module.rad = module
            .elements()
            .map(|n| {
                if n == top {
                    top.0
                } else {
                    module.meet_all(module.variety_unchecked(n)).0
                }
            })
            .collect();
        module
    }

    /// `L` acting on itself by multiplication.
    pub fn self_module(lattice: Arc<MultiplicativeLattice>) -> LatticeModule {
        let tables = lattice.to_tables();
        let order = lattice.order().clone();
        LatticeModule::assemble(lattice, order, tables.mul, tables.labels)
    }

    pub fn lattice(&self) -> &Arc<MultiplicativeLattice> {
        &self.lattice
    }

    pub fn order(&self) -> &FiniteLattice {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn elements(&self) -> impl DoubleEndedIterator<Item = MElem> + ExactSizeIterator + Clone {
        (0..self.len()).map(MElem)
    }

    /// Elements other than `I_M`, in id order.
    pub fn proper_elements(&self) -> impl Iterator<Item = MElem> + Clone + '_ {
        self.elements().filter(move |&n| self.is_proper(n))
    }

    pub fn top(&self) -> MElem {
        MElem(self.order.top())
    }

    pub fn bottom(&self) -> MElem {
        MElem(self.order.bottom())
    }

    pub fn is_proper(&self, n: MElem) -> bool {
        n != self.top()
    }

    pub fn leq(&self, a: MElem, b: MElem) -> bool {
        self.order.leq(a.0, b.0)
    }

    pub fn lt(&self, a: MElem, b: MElem) -> bool {
        self.order.lt(a.0, b.0)
    }

    pub fn join(&self, a: MElem, b: MElem) -> MElem {
        MElem(self.order.join(a.0, b.0))
    }

    pub fn meet(&self, a: MElem, b: MElem) -> MElem {
        MElem(self.order.meet(a.0, b.0))
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = MElem>) -> MElem {
        MElem(self.order.join_all(items.into_iter().map(|a| a.0)))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = MElem>) -> MElem {
        MElem(self.order.meet_all(items.into_iter().map(|a| a.0)))
    }

    /// Scalar multiplication `aX`.
    pub fn act(&self, a: LElem, x: MElem) -> MElem {
        MElem(self.act[a.0 * self.len() + x.0])
    }

    /// `aI_M`.
    pub fn act_top(&self, a: LElem) -> MElem {
        self.act(a, self.top())
    }

    /// `(N : a)`, the join of all `X` with `aX ≤ N`.
    pub fn colon(&self, n: MElem, a: LElem) -> MElem {
        MElem(self.colon_scalar[n.0 * self.lattice.len() + a.0])
    }

    /// `(A : B)`, the join in `L` of all `x` with `xB ≤ A`.
    pub fn colon_elem(&self, a: MElem, b: MElem) -> LElem {
        LElem(self.colon_elem[a.0 * self.len() + b.0])
    }

    /// `(N : I_M)`.
    pub fn colon_top(&self, n: MElem) -> LElem {
        self.colon_elem(n, self.top())
    }

    pub fn label(&self, x: MElem) -> String {
        match self.labels.get(x.0) {
            Some(Some(label)) => label.clone(),
            _ => x.0.to_string(),
        }
    }

    pub fn labels(&self) -> &[Option<String>] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<MElem> {
        self.labels
            .iter()
            .position(|l| l.as_deref() == Some(label))
            .map(MElem)
    }

    /// First `(a, X)` with `aX ≤ N`, `X ≰ N` and `aI_M ≰ N`, scanning `a`
    /// then `X` in id order. Non-proper `N` yields `(1, I_M)`.
    pub fn prime_witness(&self, n: MElem) -> Option<(LElem, MElem)> {
        if !self.is_proper(n) {
            return Some((self.lattice.top(), self.top()));
        }
        for a in self.lattice.elements() {
            if self.leq(self.act_top(a), n) {
                continue;
            }
            for x in self.elements() {
                if self.leq(self.act(a, x), n) && !self.leq(x, n) {
                    return Some((a, x));
                }
            }
        }
        None
    }

    /// Tabulated primality; agrees with [`LatticeModule::prime_witness`].
    pub fn is_prime(&self, n: MElem) -> bool {
        self.prime[n.0]
    }

    /// Prime elements in id order.
    pub fn primes(&self) -> Vec<MElem> {
        self.elements().filter(|&p| self.is_prime(p)).collect()
    }

    /// A proper element whose only strict upper bound is `I_M`.
    pub fn is_maximal(&self, n: MElem) -> bool {
        self.is_proper(n) && self.order.covers(n.0, self.order.top())
    }

    fn variety_unchecked(&self, n: MElem) -> impl Iterator<Item = MElem> + '_ {
        self.elements()
            .filter(move |&p| self.prime[p.0] && self.leq(n, p))
    }

    /// `rad(N)`: the meet of the primes above `N`, or `I_M` if there are none.
    pub fn rad(&self, n: MElem) -> Result<MElem, ElementError> {
        self.require_proper(n)?;
        Ok(MElem(self.rad[n.0]))
    }

    /// `V(N)`: the primes above `N`.
    pub fn variety(&self, n: MElem) -> Result<Vec<MElem>, ElementError> {
        self.require_proper(n)?;
        Ok(self.variety_unchecked(n).collect())
    }

    /// `V((N : I_M))`: the primes of `L` above `(N : I_M)`.
    pub fn variety_l(&self, n: MElem) -> Result<Vec<LElem>, ElementError> {
        self.require_proper(n)?;
        let q = self.colon_top(n);
        let l = &self.lattice;
        Ok(l.elements()
            .filter(|&p| l.leq(q, p) && l.is_prime(p))
            .collect())
    }

    /// `S_p(N)`: the join of all `X` with `cX ≤ N` for some `c ≰ p`.
    ///
    /// Computed as the join of `(N : c)` over `c ≰ p`.
    pub fn saturation(&self, n: MElem, p: LElem) -> Result<MElem, ElementError> {
        self.require_proper(n)?;
        let l = &self.lattice;
        if !l.is_prime(p) {
            return Err(ElementError::NotPrimeInLattice(p));
        }
        Ok(self.join_all(
            l.elements()
                .filter(|&c| !l.leq(c, p))
                .map(|c| self.colon(n, c)),
        ))
    }

    /// `(O_M : I_M) = 0`.
    pub fn is_faithful(&self) -> bool {
        self.colon_top(self.bottom()) == self.lattice.bottom()
    }

    /// Every `N` is `aI_M` for some `a`; `a = (N : I_M)` is the only candidate
    /// that needs testing since `aI_M ≤ N` forces `a ≤ (N : I_M)`.
    pub fn is_multiplication_module(&self) -> bool {
        self.elements()
            .all(|n| self.act_top(self.colon_top(n)) == n)
    }

    /// `(b ∧ (B : N))N = bN ∧ B` for all `b, B`.
    pub fn is_meet_principal(&self, n: MElem) -> bool {
        let l = &self.lattice;
        l.elements().all(|b| {
            self.elements().all(|bb| {
                self.act(l.meet(b, self.colon_elem(bb, n)), n) == self.meet(self.act(b, n), bb)
            })
        })
    }

    /// `b ∨ (B : N) = ((bN ∨ B) : N)` for all `b, B`.
    pub fn is_join_principal(&self, n: MElem) -> bool {
        let l = &self.lattice;
        l.elements().all(|b| {
            self.elements().all(|bb| {
                l.join(b, self.colon_elem(bb, n))
                    == self.colon_elem(self.join(self.act(b, n), bb), n)
            })
        })
    }

    pub fn is_principal(&self, n: MElem) -> bool {
        self.is_meet_principal(n) && self.is_join_principal(n)
    }

    /// Every element is the join of the principal elements below it.
    pub fn is_pg(&self) -> bool {
        let principal: Vec<MElem> = self.elements().filter(|&e| self.is_principal(e)).collect();
        self.elements()
            .all(|a| self.join_all(principal.iter().copied().filter(|&e| self.leq(e, a))) == a)
    }

    /// Raw tables; `validate_module(l, &m.to_tables(), ..)` rebuilds `m`.
    pub fn to_tables(&self) -> ModuleTables {
        ModuleTables {
            order: OrderTables {
                len: self.len(),
                leq: self.order.leq_matrix().to_vec(),
                join: Some(self.order.join_table().to_vec()),
                meet: Some(self.order.meet_table().to_vec()),
                top: Some(self.order.top()),
                bottom: Some(self.order.bottom()),
            },
            act: self.act.clone(),
            labels: self.labels.clone(),
        }
    }

    pub(crate) fn require_proper(&self, n: MElem) -> Result<(), ElementError> {
        if self.is_proper(n) {
            Ok(())
        } else {
            Err(ElementError::NotProper(n))
        }
    }
}

impl PartialEq for LatticeModule {
    fn eq(&self, other: &Self) -> bool {
        *self.lattice == *other.lattice
            && self.order == other.order
            && self.act == other.act
            && self.labels == other.labels
    }
}

impl Eq for LatticeModule {}
