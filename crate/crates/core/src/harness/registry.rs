//! The check registry.
//!
//! Equivalences are checked in both directions by computing every side
//! independently and comparing. Definition sides read the classifier flags
//! from the context, so an injected classifier fault shows up here;
//! characterization sides are computed from residuals and lattice flags.

use super::{Context, Domain, Hypothesis, Outcome, Ref, TheoremCheck};
use crate::classify::Flag;
use crate::lattice::LElem;
use crate::module::MElem;

use Hypothesis::{
    CompactlyGenerated, FaithfulModule, MultiplicationModule, PgLattice, PgModule, TopCompact,
};

/// Selection alias for every implication-diagram arrow.
pub const FIG1_GROUP: &str = "fig1-implications";

/// PG lattice, faithful multiplication PG module, `I_M` compact.
const BUNDLE: &[Hypothesis] = &[
    PgLattice,
    FaithfulModule,
    MultiplicationModule,
    PgModule,
    TopCompact,
];
const MULT: &[Hypothesis] = &[MultiplicationModule];
const CG: &[Hypothesis] = &[CompactlyGenerated];
const NONE: &[Hypothesis] = &[];

pub fn registry() -> &'static [TheoremCheck] {
    REGISTRY
}

fn implies(antecedent: bool, consequent: bool, detail: impl FnOnce() -> String) -> Outcome {
    match (antecedent, consequent) {
        (false, _) => Outcome::Vacuous,
        (true, true) => Outcome::Holds,
        (true, false) => Outcome::Fails(detail()),
    }
}

fn equiv(sides: &[(&str, bool)]) -> Outcome {
    if sides.iter().all(|s| s.1 == sides[0].1) {
        Outcome::Holds
    } else {
        let parts: Vec<String> = sides
            .iter()
            .map(|(name, v)| format!("{name}={v}"))
            .collect();
        Outcome::Fails(parts.join(", "))
    }
}

fn holds(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Holds
    } else {
        Outcome::Fails(detail())
    }
}

fn n0(t: &[Ref]) -> MElem {
    t[0].m()
}

/// `N = qI_M` for some proper primary `q`.
fn is_qim_primary(c: &Context, n: MElem) -> bool {
    let l = c.lattice();
    l.elements()
        .any(|q| l.is_proper(q) && c.l_primary(q) && c.module().act_top(q) == n)
}

fn pp_colon_x(c: &Context, n: MElem) -> Option<MElem> {
    let m = c.module();
    let (colon, rad) = (m.colon_top(n), c.rad(n));
    m.proper_elements()
        .find(|&x| !m.leq(x, rad) && m.colon_elem(n, x) != colon)
}

fn pp_colon_a(c: &Context, n: MElem) -> Option<LElem> {
    let (m, l) = (c.module(), c.lattice());
    let (colon, rad) = (m.colon_top(n), c.rad(n));
    l.elements()
        .find(|&a| l.is_proper(a) && l.lt(colon, a) && !m.leq(m.colon(n, a), rad))
}

/// In a finite carrier every element is compact, so the compact-only
/// quantification ranges over everything.
fn pp_compact(c: &Context, n: MElem) -> Option<(LElem, MElem)> {
    let (m, l) = (c.module(), c.lattice());
    let (colon, rad) = (m.colon_top(n), c.rad(n));
    l.elements()
        .flat_map(|r| m.elements().map(move |k| (r, k)))
        .find(|&(r, k)| m.leq(m.act(r, k), n) && !l.leq(r, colon) && !m.leq(k, rad))
}

fn cp_colon_b(c: &Context, n: MElem) -> Option<MElem> {
    let m = c.module();
    m.proper_elements()
        .find(|&b| m.lt(n, b) && m.colon_elem(n, b) != m.colon_top(n))
}

fn cp_colon_x(c: &Context, n: MElem) -> Option<MElem> {
    let m = c.module();
    m.elements()
        .find(|&x| !m.leq(x, n) && m.colon_elem(n, x) != m.colon_top(n))
}

fn cp_colon_a(c: &Context, n: MElem) -> Option<LElem> {
    let (m, l) = (c.module(), c.lattice());
    l.elements()
        .find(|&a| l.is_proper(a) && l.lt(m.colon_top(n), a) && m.colon(n, a) != n)
}

/// The residual-product criterion over all `A, K, B`.
fn cp_residual_product(c: &Context, n: MElem) -> Option<(MElem, MElem, MElem)> {
    let (m, l) = (c.module(), c.lattice());
    for k in m.elements() {
        let nk = m.colon_elem(n, k);
        for a in m.elements() {
            let ak = m.colon_elem(a, k);
            for b in m.elements() {
                let bk = m.colon_elem(b, k);
                if l.leq(l.mul(ak, bk), nk) && !l.leq(ak, nk) && !l.leq(bk, nk) {
                    return Some((a, k, b));
                }
            }
        }
    }
    None
}

fn cp_colon_k_prime(c: &Context, n: MElem) -> Option<MElem> {
    let m = c.module();
    m.elements()
        .find(|&k| !m.leq(k, n) && !c.l_prime(m.colon_elem(n, k)))
}

fn cp_ab(c: &Context, n: MElem) -> Option<(LElem, LElem)> {
    let (m, l) = (c.module(), c.lattice());
    l.elements()
        .flat_map(|a| l.elements().map(move |b| (a, b)))
        .find(|&(a, b)| {
            let ab = m.colon(n, l.mul(a, b));
            ab != m.colon(n, a) && ab != m.colon(n, b)
        })
}

fn cp_compact(c: &Context, n: MElem) -> Option<(LElem, LElem, MElem)> {
    let (m, l) = (c.module(), c.lattice());
    l.elements()
        .flat_map(|r| {
            l.elements()
                .flat_map(move |s| m.elements().map(move |k| (r, s, k)))
        })
        .find(|&(r, s, k)| {
            m.leq(m.act(l.mul(r, s), k), n) && !m.leq(m.act(r, k), n) && !m.leq(m.act(s, k), n)
        })
}

fn pcp_colon_rx(c: &Context, n: MElem) -> Option<(LElem, MElem)> {
    let (m, l) = (c.module(), c.lattice());
    let rad = c.rad(n);
    l.elements()
        .flat_map(|r| m.elements().map(move |x| (r, x)))
        .find(|&(r, x)| {
            let rx = m.act(r, x);
            !m.leq(x, n) && !m.leq(rx, rad) && m.colon_elem(n, x) != m.colon_elem(n, rx)
        })
}

fn pcp_compact(c: &Context, n: MElem) -> Option<(LElem, LElem, MElem)> {
    let (m, l) = (c.module(), c.lattice());
    let rad = c.rad(n);
    l.elements()
        .flat_map(|r| {
            l.elements()
                .flat_map(move |s| m.elements().map(move |k| (r, s, k)))
        })
        .find(|&(r, s, k)| {
            m.leq(m.act(l.mul(r, s), k), n) && !m.leq(m.act(r, k), n) && !m.leq(m.act(s, k), rad)
        })
}

/// First pair of incomparable elements, or a non-prime one.
fn chain_of_primes(c: &Context, items: &[LElem]) -> Option<String> {
    let l = c.lattice();
    if let Some(&p) = items.iter().find(|&&p| !c.l_prime(p)) {
        return Some(format!("{} is not prime", c.ll(p)));
    }
    for (i, &p) in items.iter().enumerate() {
        if let Some(&q) = items[i + 1..]
            .iter()
            .find(|&&q| !l.leq(p, q) && !l.leq(q, p))
        {
            return Some(format!("{} and {} are incomparable", c.ll(p), c.ll(q)));
        }
    }
    None
}

fn chain_closed(c: &Context, t: &[Ref], flag: Flag) -> Outcome {
    let m = c.module();
    let chain: Vec<MElem> = t.iter().map(|r| r.m()).collect();
    let meet = m.meet_all(chain.iter().copied());
    let join = m.join_all(chain.iter().copied());
    holds(c.flag(meet, flag) && c.flag(join, flag), || {
        format!(
            "meet {} -> {}, join {} -> {}",
            c.ml(meet),
            c.flag(meet, flag),
            c.ml(join),
            c.flag(join, flag)
        )
    })
}

fn arrow(c: &Context, t: &[Ref], from: Flag, to: Flag) -> Outcome {
    let n = n0(t);
    implies(c.flag(n, from), c.flag(n, to), || {
        format!("{from} but not {to}")
    })
}

fn show<T: std::fmt::Debug>(w: Option<T>) -> String {
    w.map_or_else(|| "none".to_string(), |w| format!("{w:?}"))
}

static REGISTRY: &[TheoremCheck] = &[
    // Radicals.
    TheoremCheck {
        id: "sqrt-meet",
        description: "The radical of a meet of lattice elements is the meet of their radicals.",
        hypotheses: NONE,
        domain: Domain::LatticePairs,
        dashed: false,
        eval: |c, t| {
            let l = c.lattice();
            let (a, b) = (t[0].l(), t[1].l());
            let (lhs, rhs) = (l.meet(l.sqrt(a), l.sqrt(b)), l.sqrt(l.meet(a, b)));
            holds(lhs == rhs, || format!("meet of radicals {} vs radical of meet {}", c.ll(lhs), c.ll(rhs)))
        },
    },
    TheoremCheck {
        id: "prime-iff-colon-prime",
        description: "In a multiplication module, N is prime exactly when (N:I_M) is prime in L.",
        hypotheses: MULT,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            equiv(&[("prime", c.flag(n, Flag::Prime)), ("colon-prime", c.l_prime(c.module().colon_top(n)))])
        },
    },
    TheoremCheck {
        id: "sqrt-colon-le-rad-colon",
        description: "√(N:I_M) ≤ (rad(N):I_M) in any module.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let (m, l) = (c.module(), c.lattice());
            let n = n0(t);
            let (lhs, rhs) = (l.sqrt(m.colon_top(n)), m.colon_top(c.rad(n)));
            holds(l.leq(lhs, rhs), || format!("√(N:I_M)={} ≰ (rad(N):I_M)={}", c.ll(lhs), c.ll(rhs)))
        },
    },
    TheoremCheck {
        id: "thm-rad-eq",
        description: "Under the standard hypotheses, (rad(N):I_M) = √(N:I_M) for every proper N.",
        hypotheses: BUNDLE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let (m, l) = (c.module(), c.lattice());
            let n = n0(t);
            let (lhs, rhs) = (m.colon_top(c.rad(n)), l.sqrt(m.colon_top(n)));
            holds(lhs == rhs, || format!("(rad(N):I_M)={} but √(N:I_M)={}", c.ll(lhs), c.ll(rhs)))
        },
    },
    TheoremCheck {
        id: "rad-meet",
        description: "Under the standard hypotheses, rad commutes with meets of proper elements. \
                      Also stands in for the radical equality on multiplication modules, \
                      which rests on this identity.",
        hypotheses: BUNDLE,
        domain: Domain::ProperPairs,
        dashed: false,
        eval: |c, t| {
            let m = c.module();
            let (a, b) = (t[0].m(), t[1].m());
            let (lhs, rhs) = (m.meet(c.rad(a), c.rad(b)), c.rad(m.meet(a, b)));
            holds(lhs == rhs, || format!("rad(A)∧rad(B)={} but rad(A∧B)={}", c.ml(lhs), c.ml(rhs)))
        },
    },
    TheoremCheck {
        id: "rad-idempotent",
        description: "rad(rad(N)) = rad(N) whenever rad(N) is proper.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let m = c.module();
            let r = c.rad(n0(t));
            if !m.is_proper(r) {
                return Outcome::Vacuous;
            }
            let rr = c.rad(r);
            holds(rr == r, || format!("rad(rad(N))={} but rad(N)={}", c.ml(rr), c.ml(r)))
        },
    },
    TheoremCheck {
        id: "rad-meet-variety",
        description: "rad(N) is the meet of the prime elements above N.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let m = c.module();
            let n = n0(t);
            let meet = m.meet_all(m.elements().filter(|&p| m.leq(n, p) && c.flag(p, Flag::Prime)));
            let rad = c.rad(n);
            holds(meet == rad, || format!("meet of V(N) is {} but rad(N)={}", c.ml(meet), c.ml(rad)))
        },
    },
    TheoremCheck {
        id: "variety-nonempty",
        description: "Every proper element of a finite module lies below some prime element.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let m = c.module();
            let n = n0(t);
            holds(m.elements().any(|p| m.leq(n, p) && c.flag(p, Flag::Prime)), || "V(N) is empty".into())
        },
    },
    // Pseudo-primary elements.
    TheoremCheck {
        id: "pp-chain-closure",
        description: "Under the standard hypotheses, meets and joins of chains of pseudo-primary elements are pseudo-primary.",
        hypotheses: BUNDLE,
        domain: Domain::Chains(Flag::PseudoPrimary),
        dashed: false,
        eval: |c, t| chain_closed(c, t, Flag::PseudoPrimary),
    },
    TheoremCheck {
        id: "pp-char-colon-x",
        description: "In a CG module, N is pseudo-primary iff (N:I_M) = (N:X) for every proper X ≰ rad(N).",
        hypotheses: CG,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let w = pp_colon_x(c, n);
            match equiv(&[("pseudo-primary", c.flag(n, Flag::PseudoPrimary)), ("colon-x", w.is_none())]) {
                Outcome::Fails(d) => Outcome::Fails(format!("{d}; X={}", show(w.map(|x| c.ml(x))))),
                o => o,
            }
        },
    },
    TheoremCheck {
        id: "pp-char-colon-a",
        description: "In a CG module, N is pseudo-primary iff (N:a) ≤ rad(N) for every proper a > (N:I_M).",
        hypotheses: CG,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let w = pp_colon_a(c, n);
            match equiv(&[("pseudo-primary", c.flag(n, Flag::PseudoPrimary)), ("colon-a", w.is_none())]) {
                Outcome::Fails(d) => Outcome::Fails(format!("{d}; a={}", show(w.map(|a| c.ll(a))))),
                o => o,
            }
        },
    },
    TheoremCheck {
        id: "pp-char-compact",
        description: "In a CG module, pseudo-primary may be tested on compact r and K only.",
        hypotheses: CG,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            equiv(&[("pseudo-primary", c.flag(n, Flag::PseudoPrimary)), ("compact", pp_compact(c, n).is_none())])
        },
    },
    TheoremCheck {
        id: "radical-primary-implies-pp",
        description: "A radical element that is primary is pseudo-primary.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            implies(
                c.flag(n, Flag::RadicalElement) && c.flag(n, Flag::Primary),
                c.flag(n, Flag::PseudoPrimary),
                || "radical and primary but not pseudo-primary".into(),
            )
        },
    },
    TheoremCheck {
        id: "qim-primary",
        description: "Under the standard hypotheses, qI_M is primary for every proper primary q.",
        hypotheses: BUNDLE,
        domain: Domain::LatticeElements,
        dashed: false,
        eval: |c, t| qim(c, t[0].l(), |c, q| c.l_primary(q), Flag::Primary),
    },
    TheoremCheck {
        id: "qim-pseudo-primary",
        description: "Under the standard hypotheses, qI_M is pseudo-primary for every proper primary q.",
        hypotheses: BUNDLE,
        domain: Domain::LatticeElements,
        dashed: false,
        eval: |c, t| qim(c, t[0].l(), |c, q| c.l_primary(q), Flag::PseudoPrimary),
    },
    TheoremCheck {
        id: "qim-prime",
        description: "Under the standard hypotheses, qI_M is prime for every proper prime q.",
        hypotheses: BUNDLE,
        domain: Domain::LatticeElements,
        dashed: false,
        eval: |c, t| qim(c, t[0].l(), |c, q| c.l_prime(q), Flag::Prime),
    },
    TheoremCheck {
        id: "qim-pcp",
        description: "Under the standard hypotheses, qI_M is pseudo-classical primary for every proper primary q.",
        hypotheses: BUNDLE,
        domain: Domain::LatticeElements,
        dashed: false,
        eval: |c, t| qim(c, t[0].l(), |c, q| c.l_primary(q), Flag::PseudoClassicalPrimary),
    },
    TheoremCheck {
        id: "equiv-pseudo-primary-4way",
        description: "Under the standard hypotheses: N pseudo-primary, (N:I_M) primary, N = qI_M with q primary, and N primary are equivalent.",
        hypotheses: BUNDLE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            equiv(&[
                ("pseudo-primary", c.flag(n, Flag::PseudoPrimary)),
                ("colon-primary", c.l_primary(c.module().colon_top(n))),
                ("q-im", is_qim_primary(c, n)),
                ("primary", c.flag(n, Flag::Primary)),
            ])
        },
    },
    TheoremCheck {
        id: "pp-sqrt-prime",
        description: "Under the standard hypotheses, √(N:I_M) is prime for pseudo-primary N.",
        hypotheses: BUNDLE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let s = c.lattice().sqrt(c.module().colon_top(n));
            implies(c.flag(n, Flag::PseudoPrimary), c.l_prime(s), || format!("√(N:I_M)={} is not prime", c.ll(s)))
        },
    },
    TheoremCheck {
        id: "pp-rad-prime",
        description: "Under the standard hypotheses, rad(N) is prime for pseudo-primary N.",
        hypotheses: BUNDLE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let r = c.rad(n);
            implies(c.flag(n, Flag::PseudoPrimary), c.flag(r, Flag::Prime), || format!("rad(N)={} is not prime", c.ml(r)))
        },
    },
    TheoremCheck {
        id: "p-pp-rad-join",
        description: "Under the standard hypotheses, for p-pseudo-primary N, N ∨ pI_M equals rad(N) and is prime.",
        hypotheses: BUNDLE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let m = c.module();
            let n = n0(t);
            let Some(p) = c.class(n).and_then(|k| k.attachments.p_pseudo_primary) else {
                return Outcome::Vacuous;
            };
            let j = m.join(n, m.act_top(p));
            let r = c.rad(n);
            holds(j == r && c.flag(j, Flag::Prime), || {
                format!("N∨pI_M={} (prime={}), rad(N)={}", c.ml(j), c.flag(j, Flag::Prime), c.ml(r))
            })
        },
    },
    TheoremCheck {
        id: "p-pp-rad-eq",
        description: "Under the standard hypotheses, rad(N) = rad(N ∨ pI_M) for p-pseudo-primary N.",
        hypotheses: BUNDLE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let m = c.module();
            let n = n0(t);
            let Some(p) = c.class(n).and_then(|k| k.attachments.p_pseudo_primary) else {
                return Outcome::Vacuous;
            };
            let j = m.join(n, m.act_top(p));
            if !m.is_proper(j) {
                return Outcome::Fails("N∨pI_M = I_M".into());
            }
            let (lhs, rhs) = (c.rad(n), c.rad(j));
            holds(lhs == rhs, || format!("rad(N)={} but rad(N∨pI_M)={}", c.ml(lhs), c.ml(rhs)))
        },
    },
    TheoremCheck {
        id: "p-pp-rad-4way",
        description: "Under the standard hypotheses, with p = (N:I_M): N p-pseudo-primary, rad(N) p-prime, \
                      rad(N) p-primary and rad(N) p-pseudo-primary are equivalent.",
        hypotheses: BUNDLE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let p = Some(c.module().colon_top(n));
            let own = c.class(n).map(|k| k.attachments).unwrap_or_default();
            let rad = c.class(c.rad(n)).map(|k| k.attachments).unwrap_or_default();
            equiv(&[
                ("N p-pseudo-primary", own.p_pseudo_primary == p),
                ("rad p-prime", rad.p_prime == p),
                ("rad p-primary", rad.p_primary == p),
                ("rad p-pseudo-primary", rad.p_pseudo_primary == p),
            ])
        },
    },
    TheoremCheck {
        id: "pp-rad-3way",
        description: "Under the standard hypotheses, for pseudo-primary N and any p: rad(N) p-prime, \
                      p-primary and p-pseudo-primary are equivalent.",
        hypotheses: BUNDLE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            if !c.flag(n, Flag::PseudoPrimary) {
                return Outcome::Vacuous;
            }
            let rad = c.class(c.rad(n)).map(|k| k.attachments).unwrap_or_default();
            holds(rad.p_prime == rad.p_primary && rad.p_primary == rad.p_pseudo_primary, || {
                format!("p-prime {:?}, p-primary {:?}, p-pseudo-primary {:?}", rad.p_prime, rad.p_primary, rad.p_pseudo_primary)
            })
        },
    },
    TheoremCheck {
        id: "pp-colon-k",
        description: "Under the standard hypotheses, for pseudo-primary N every (N:K) with K ≰ rad(N) is primary \
                      and the radicals √(N:K) form a chain of primes.",
        hypotheses: BUNDLE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let (m, l) = (c.module(), c.lattice());
            let n = n0(t);
            if !c.flag(n, Flag::PseudoPrimary) {
                return Outcome::Vacuous;
            }
            let rad = c.rad(n);
            let ks: Vec<MElem> = m.elements().filter(|&k| !m.leq(k, rad)).collect();
            if let Some(&k) = ks.iter().find(|&&k| !c.l_primary(m.colon_elem(n, k))) {
                return Outcome::Fails(format!("(N:K) not primary at K={}", c.ml(k)));
            }
            let sqrts: Vec<LElem> = ks.iter().map(|&k| l.sqrt(m.colon_elem(n, k))).collect();
            match chain_of_primes(c, &sqrts) {
                Some(d) => Outcome::Fails(d),
                None => Outcome::Holds,
            }
        },
    },
    // Saturation.
    TheoremCheck {
        id: "sat-le-rad",
        description: "S_p(N) ≤ rad(N) for pseudo-primary N and every p in V((N:I_M)).",
        hypotheses: NONE,
        domain: Domain::ProperWithScalar,
        dashed: false,
        eval: |c, t| {
            let (m, l) = (c.module(), c.lattice());
            let (n, p) = (t[0].m(), t[1].l());
            if !(c.flag(n, Flag::PseudoPrimary) && c.l_prime(p) && l.leq(m.colon_top(n), p)) {
                return Outcome::Vacuous;
            }
            let s = m.saturation(n, p).expect("p is prime");
            let r = c.rad(n);
            holds(m.leq(s, r), || format!("S_p(N)={} ≰ rad(N)={}", c.ml(s), c.ml(r)))
        },
    },
    TheoremCheck {
        id: "sat-prime-rad-prime",
        description: "If N is pseudo-primary and S_p(N) is prime for some p in V((N:I_M)), then rad(N) is prime.",
        hypotheses: NONE,
        domain: Domain::ProperWithScalar,
        dashed: false,
        eval: |c, t| {
            let (m, l) = (c.module(), c.lattice());
            let (n, p) = (t[0].m(), t[1].l());
            if !(c.flag(n, Flag::PseudoPrimary) && c.l_prime(p) && l.leq(m.colon_top(n), p)) {
                return Outcome::Vacuous;
            }
            let s = m.saturation(n, p).expect("p is prime");
            let r = c.rad(n);
            implies(c.flag(s, Flag::Prime), c.flag(r, Flag::Prime), || format!("rad(N)={} is not prime", c.ml(r)))
        },
    },
    TheoremCheck {
        id: "rad-pp-iff-prime",
        description: "rad(N) is pseudo-primary exactly when it is prime.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let r = c.rad(n0(t));
            if !c.module().is_proper(r) {
                return Outcome::Vacuous;
            }
            equiv(&[("pseudo-primary", c.flag(r, Flag::PseudoPrimary)), ("prime", c.flag(r, Flag::Prime))])
        },
    },
    // Classical prime elements.
    TheoremCheck {
        id: "cp-char-colon-b",
        description: "In a multiplication module, N is classical prime iff (N:B) = (N:I_M) for every proper B > N.",
        hypotheses: MULT,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let w = cp_colon_b(c, n);
            match equiv(&[("classical-prime", c.flag(n, Flag::ClassicalPrime)), ("colon-b", w.is_none())]) {
                Outcome::Fails(d) => Outcome::Fails(format!("{d}; B={}", show(w.map(|x| c.ml(x))))),
                o => o,
            }
        },
    },
    TheoremCheck {
        id: "cp-char-colon-x",
        description: "In a multiplication module, N is classical prime iff (N:X) = (N:I_M) for every X ≰ N.",
        hypotheses: MULT,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let w = cp_colon_x(c, n);
            match equiv(&[("classical-prime", c.flag(n, Flag::ClassicalPrime)), ("colon-x", w.is_none())]) {
                Outcome::Fails(d) => Outcome::Fails(format!("{d}; X={}", show(w.map(|x| c.ml(x))))),
                o => o,
            }
        },
    },
    TheoremCheck {
        id: "cp-char-colon-a",
        description: "In a multiplication module, N is classical prime iff N = (N:a) for every proper a > (N:I_M).",
        hypotheses: MULT,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let w = cp_colon_a(c, n);
            match equiv(&[("classical-prime", c.flag(n, Flag::ClassicalPrime)), ("colon-a", w.is_none())]) {
                Outcome::Fails(d) => Outcome::Fails(format!("{d}; a={}", show(w.map(|a| c.ll(a))))),
                o => o,
            }
        },
    },
    TheoremCheck {
        id: "cp-faithful-zero",
        description: "In a faithful multiplication module whose zero is classical prime, (O_M:B) = 0 for every proper B ≠ O_M.",
        hypotheses: &[FaithfulModule, MultiplicationModule],
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let (m, l) = (c.module(), c.lattice());
            let b = n0(t);
            let zero = m.bottom();
            let colon = m.colon_elem(zero, b);
            implies(c.flag(zero, Flag::ClassicalPrime) && b != zero, colon == l.bottom(), || {
                format!("(O_M:B)={}", c.ll(colon))
            })
        },
    },
    TheoremCheck {
        id: "cp-residual-product",
        description: "In a multiplication module, N is classical prime iff (A:K)(B:K) ≤ (N:K) forces (A:K) ≤ (N:K) \
                      or (B:K) ≤ (N:K), over all A, K, B.",
        hypotheses: MULT,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let w = cp_residual_product(c, n);
            match equiv(&[("classical-prime", c.flag(n, Flag::ClassicalPrime)), ("residual-product", w.is_none())]) {
                Outcome::Fails(d) => Outcome::Fails(format!(
                    "{d}; (A,K,B)={}",
                    show(w.map(|(a, k, b)| (c.ml(a), c.ml(k), c.ml(b))))
                )),
                o => o,
            }
        },
    },
    TheoremCheck {
        id: "cp-colon-k-prime",
        description: "N is classical prime iff (N:K) is prime for every K ≰ N.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let w = cp_colon_k_prime(c, n);
            match equiv(&[("classical-prime", c.flag(n, Flag::ClassicalPrime)), ("colon-k-prime", w.is_none())]) {
                Outcome::Fails(d) => Outcome::Fails(format!("{d}; K={}", show(w.map(|x| c.ml(x))))),
                o => o,
            }
        },
    },
    TheoremCheck {
        id: "cp-colon-top-prime",
        description: "(N:I_M) is prime for classical prime N.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let colon = c.module().colon_top(n);
            implies(c.flag(n, Flag::ClassicalPrime), c.l_prime(colon), || format!("(N:I_M)={} is not prime", c.ll(colon)))
        },
    },
    TheoremCheck {
        id: "cp-colon-rk",
        description: "For classical prime N, (N:K) = (N:rK) for all proper r and K with rK ≰ N.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let (m, l) = (c.module(), c.lattice());
            let n = n0(t);
            if !c.flag(n, Flag::ClassicalPrime) {
                return Outcome::Vacuous;
            }
            let w = l.elements().filter(|&r| l.is_proper(r)).flat_map(|r| m.proper_elements().map(move |k| (r, k))).find(
                |&(r, k)| {
                    let rk = m.act(r, k);
                    !m.leq(rk, n) && m.colon_elem(n, k) != m.colon_elem(n, rk)
                },
            );
            holds(w.is_none(), || format!("(r,K)={}", show(w.map(|(r, k)| (c.ll(r), c.ml(k))))))
        },
    },
    TheoremCheck {
        id: "cp-colon-chain",
        description: "In a multiplication module, for classical prime N the residuals (N:K) with K ≰ N form a chain of primes.",
        hypotheses: MULT,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let m = c.module();
            let n = n0(t);
            if !c.flag(n, Flag::ClassicalPrime) {
                return Outcome::Vacuous;
            }
            let colons: Vec<LElem> = m.elements().filter(|&k| !m.leq(k, n)).map(|k| m.colon_elem(n, k)).collect();
            match chain_of_primes(c, &colons) {
                Some(d) => Outcome::Fails(d),
                None => Outcome::Holds,
            }
        },
    },
    TheoremCheck {
        id: "prime-iff-primary-cp",
        description: "N is prime iff it is both primary and classical prime.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            equiv(&[
                ("prime", c.flag(n, Flag::Prime)),
                ("primary-and-classical-prime", c.flag(n, Flag::Primary) && c.flag(n, Flag::ClassicalPrime)),
            ])
        },
    },
    TheoremCheck {
        id: "prime-iff-cp-mult",
        description: "In a multiplication module, prime and classical prime coincide.",
        hypotheses: MULT,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            equiv(&[("prime", c.flag(n, Flag::Prime)), ("classical-prime", c.flag(n, Flag::ClassicalPrime))])
        },
    },
    TheoremCheck {
        id: "maximal-implies-cp",
        description: "Every maximal element is classical prime.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| arrow(c, t, Flag::Maximal, Flag::ClassicalPrime),
    },
    TheoremCheck {
        id: "join-meet-criterion-cp",
        description: "If (N:X) ≠ (N:Y) always forces N = (N∨X) ∧ (N∨Y), then N is classical prime.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let m = c.module();
            let n = n0(t);
            let criterion = m.elements().all(|x| {
                m.elements().all(|y| m.colon_elem(n, x) == m.colon_elem(n, y) || m.meet(m.join(n, x), m.join(n, y)) == n)
            });
            implies(criterion, c.flag(n, Flag::ClassicalPrime), || "criterion holds but N is not classical prime".into())
        },
    },
    TheoremCheck {
        id: "cp-char-ab",
        description: "In a CG module, N is classical prime iff (N:ab) equals (N:a) or (N:b) for all a, b.",
        hypotheses: CG,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let w = cp_ab(c, n);
            match equiv(&[("classical-prime", c.flag(n, Flag::ClassicalPrime)), ("colon-ab", w.is_none())]) {
                Outcome::Fails(d) => Outcome::Fails(format!("{d}; (a,b)={}", show(w.map(|(a, b)| (c.ll(a), c.ll(b)))))),
                o => o,
            }
        },
    },
    TheoremCheck {
        id: "cp-char-compact",
        description: "In a CG module, classical prime may be tested on compact r, s and K only.",
        hypotheses: CG,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            equiv(&[("classical-prime", c.flag(n, Flag::ClassicalPrime)), ("compact", cp_compact(c, n).is_none())])
        },
    },
    TheoremCheck {
        id: "cp-chain-closure",
        description: "Meets of chains of classical prime elements are classical prime, and so are joins when I_M is compact.",
        hypotheses: &[TopCompact],
        domain: Domain::Chains(Flag::ClassicalPrime),
        dashed: false,
        eval: |c, t| chain_closed(c, t, Flag::ClassicalPrime),
    },
    TheoremCheck {
        id: "semiprime-iff-colon-prime",
        description: "N is semiprime iff (N:I_M) is prime.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            equiv(&[("semiprime", c.flag(n, Flag::Semiprime)), ("colon-prime", c.l_prime(c.module().colon_top(n)))])
        },
    },
    TheoremCheck {
        id: "mult-prime-4way",
        description: "In a multiplication module, prime, classical prime, semiprime and (N:I_M) prime are equivalent.",
        hypotheses: MULT,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            equiv(&[
                ("prime", c.flag(n, Flag::Prime)),
                ("classical-prime", c.flag(n, Flag::ClassicalPrime)),
                ("semiprime", c.flag(n, Flag::Semiprime)),
                ("colon-prime", c.l_prime(c.module().colon_top(n))),
            ])
        },
    },
    // Pseudo-classical primary elements.
    TheoremCheck {
        id: "pcp-char-colon-rx",
        description: "In a CG module, N is pseudo-classical primary iff (N:X) = (N:rX) whenever X ≰ N and rX ≰ rad(N), \
                      over all r and X.",
        hypotheses: CG,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let w = pcp_colon_rx(c, n);
            match equiv(&[("pcp", c.flag(n, Flag::PseudoClassicalPrimary)), ("colon-rx", w.is_none())]) {
                Outcome::Fails(d) => Outcome::Fails(format!("{d}; (r,X)={}", show(w.map(|(r, x)| (c.ll(r), c.ml(x)))))),
                o => o,
            }
        },
    },
    TheoremCheck {
        id: "pcp-char-compact",
        description: "In a CG module, pseudo-classical primary may be tested on compact r, s and K only.",
        hypotheses: CG,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            equiv(&[("pcp", c.flag(n, Flag::PseudoClassicalPrimary)), ("compact", pcp_compact(c, n).is_none())])
        },
    },
    TheoremCheck {
        id: "pcp-4way",
        description: "Under the standard hypotheses: N pseudo-classical primary, (N:I_M) primary, N = qI_M with q primary, \
                      and N primary are equivalent.",
        hypotheses: BUNDLE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            equiv(&[
                ("pcp", c.flag(n, Flag::PseudoClassicalPrimary)),
                ("colon-primary", c.l_primary(c.module().colon_top(n))),
                ("q-im", is_qim_primary(c, n)),
                ("primary", c.flag(n, Flag::Primary)),
            ])
        },
    },
    TheoremCheck {
        id: "pcp-rad-prime",
        description: "Under the standard hypotheses, rad(N) is prime for pseudo-classical primary N.",
        hypotheses: BUNDLE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            let r = c.rad(n);
            implies(c.flag(n, Flag::PseudoClassicalPrimary), c.flag(r, Flag::Prime), || {
                format!("rad(N)={} is not prime", c.ml(r))
            })
        },
    },
    TheoremCheck {
        id: "pp-implies-pcp",
        description: "Every pseudo-primary element is pseudo-classical primary.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| arrow(c, t, Flag::PseudoPrimary, Flag::PseudoClassicalPrimary),
    },
    TheoremCheck {
        id: "pp-pcp-5way",
        description: "Under the standard hypotheses: pseudo-primary, pseudo-classical primary, (N:I_M) primary, \
                      N = qI_M with q primary, and primary are equivalent.",
        hypotheses: BUNDLE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let n = n0(t);
            equiv(&[
                ("pseudo-primary", c.flag(n, Flag::PseudoPrimary)),
                ("pcp", c.flag(n, Flag::PseudoClassicalPrimary)),
                ("colon-primary", c.l_primary(c.module().colon_top(n))),
                ("q-im", is_qim_primary(c, n)),
                ("primary", c.flag(n, Flag::Primary)),
            ])
        },
    },
    TheoremCheck {
        id: "pcp-chain-closure",
        description: "Under the standard hypotheses, meets and joins of chains of pseudo-classical primary elements are \
                      pseudo-classical primary.",
        hypotheses: BUNDLE,
        domain: Domain::Chains(Flag::PseudoClassicalPrimary),
        dashed: false,
        eval: |c, t| chain_closed(c, t, Flag::PseudoClassicalPrimary),
    },
    TheoremCheck {
        id: "prime-colon-k",
        description: "For prime Q and proper K ≰ Q, (Q:K) is prime and √(X:K) ≤ (Q:K) for every X ≤ Q.",
        hypotheses: NONE,
        domain: Domain::ProperPairs,
        dashed: false,
        eval: |c, t| {
            let (m, l) = (c.module(), c.lattice());
            let (q, k) = (t[0].m(), t[1].m());
            if !c.flag(q, Flag::Prime) || m.leq(k, q) {
                return Outcome::Vacuous;
            }
            let qk = m.colon_elem(q, k);
            if !c.l_prime(qk) {
                return Outcome::Fails(format!("(Q:K)={} is not prime", c.ll(qk)));
            }
            let w = m.elements().find(|&x| m.leq(x, q) && !l.leq(l.sqrt(m.colon_elem(x, k)), qk));
            holds(w.is_none(), || format!("√(X:K) ≰ (Q:K) at X={}", show(w.map(|x| c.ml(x)))))
        },
    },
    TheoremCheck {
        id: "sqrt-colon-k-le-rad-colon-k",
        description: "√(N:K) ≤ (rad(N):K) for every proper K ≰ N.",
        hypotheses: NONE,
        domain: Domain::ProperPairs,
        dashed: false,
        eval: |c, t| {
            let (m, l) = (c.module(), c.lattice());
            let (n, k) = (t[0].m(), t[1].m());
            if m.leq(k, n) {
                return Outcome::Vacuous;
            }
            let (lhs, rhs) = (l.sqrt(m.colon_elem(n, k)), m.colon_elem(c.rad(n), k));
            holds(l.leq(lhs, rhs), || format!("√(N:K)={} ≰ (rad(N):K)={}", c.ll(lhs), c.ll(rhs)))
        },
    },
    TheoremCheck {
        id: "colon-k-primary-implies-pcp",
        description: "If (N:K) is primary for every K ≰ N, including K = I_M, then N is pseudo-classical primary.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| {
            let m = c.module();
            let n = n0(t);
            let all_primary = m.elements().filter(|&k| !m.leq(k, n)).all(|k| c.l_primary(m.colon_elem(n, k)));
            implies(all_primary, c.flag(n, Flag::PseudoClassicalPrimary), || {
                "every (N:K) is primary but N is not pseudo-classical primary".into()
            })
        },
    },
    TheoremCheck {
        id: "sqrt-q-im-le-rad",
        description: "Under the standard hypotheses, √q·I_M ≤ rad(qI_M) for every proper q with qI_M proper.",
        hypotheses: BUNDLE,
        domain: Domain::LatticeElements,
        dashed: false,
        eval: |c, t| {
            let (m, l) = (c.module(), c.lattice());
            let q = t[0].l();
            let qi = m.act_top(q);
            if !l.is_proper(q) || !m.is_proper(qi) {
                return Outcome::Vacuous;
            }
            let (lhs, rhs) = (m.act_top(l.sqrt(q)), c.rad(qi));
            holds(m.leq(lhs, rhs), || format!("√q·I_M={} ≰ rad(qI_M)={}", c.ml(lhs), c.ml(rhs)))
        },
    },
    // Implication diagram.
    TheoremCheck {
        id: "fig1-maximal-prime",
        description: "Implication diagram, dashed arrow: maximal implies prime. In finite modules this follows from X ∨ N = I_M.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: true,
        eval: |c, t| arrow(c, t, Flag::Maximal, Flag::Prime),
    },
    TheoremCheck {
        id: "fig1-prime-primary",
        description: "Implication diagram, dashed arrow: prime implies primary.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: true,
        eval: |c, t| arrow(c, t, Flag::Prime, Flag::Primary),
    },
    TheoremCheck {
        id: "fig1-classical-prime-two-absorbing",
        description: "Implication diagram, dashed arrow: classical prime implies 2-absorbing.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: true,
        eval: |c, t| arrow(c, t, Flag::ClassicalPrime, Flag::TwoAbsorbing),
    },
    TheoremCheck {
        id: "fig1-prime-semiprime",
        description: "Implication diagram: prime implies semiprime.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| arrow(c, t, Flag::Prime, Flag::Semiprime),
    },
    TheoremCheck {
        id: "fig1-prime-pseudo-primary",
        description: "Implication diagram: prime implies pseudo-primary.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| arrow(c, t, Flag::Prime, Flag::PseudoPrimary),
    },
    TheoremCheck {
        id: "fig1-pseudo-primary-pseudo-classical-primary",
        description: "Implication diagram: pseudo-primary implies pseudo-classical primary.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| arrow(c, t, Flag::PseudoPrimary, Flag::PseudoClassicalPrimary),
    },
    TheoremCheck {
        id: "fig1-prime-classical-prime",
        description: "Implication diagram: prime implies classical prime.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| arrow(c, t, Flag::Prime, Flag::ClassicalPrime),
    },
    TheoremCheck {
        id: "fig1-classical-prime-semiprime",
        description: "Implication diagram: classical prime implies semiprime.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| arrow(c, t, Flag::ClassicalPrime, Flag::Semiprime),
    },
    TheoremCheck {
        id: "fig1-classical-prime-pseudo-classical-primary",
        description: "Implication diagram: classical prime implies pseudo-classical primary.",
        hypotheses: NONE,
        domain: Domain::ProperElements,
        dashed: false,
        eval: |c, t| arrow(c, t, Flag::ClassicalPrime, Flag::PseudoClassicalPrimary),
    },
];

/// `q` proper with `has(q)` implies `qI_M` proper and carrying `flag`.
fn qim(c: &Context, q: LElem, has: fn(&Context, LElem) -> bool, flag: Flag) -> Outcome {
    let (m, l) = (c.module(), c.lattice());
    if !l.is_proper(q) || !has(c, q) {
        return Outcome::Vacuous;
    }
    let qi = m.act_top(q);
    holds(m.is_proper(qi) && c.flag(qi, flag), || {
        format!("qI_M={} is not {flag}", c.ml(qi))
    })
}
