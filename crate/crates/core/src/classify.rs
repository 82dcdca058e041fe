//! Element classifiers for lattice modules.
//!
//! Each predicate is evaluated straight from its definition by exhaustive
//! quantification, scanning quantified variables in ascending id order
//! (`a`, then `b`, then the module element). A failing predicate reports the
//! first counterexample found, so witnesses are deterministic.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::lattice::LElem;
use crate::module::{ElementError, LatticeModule, MElem};

/// A counterexample to one of the predicates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// `(a, X)` for the two-variable module predicates.
    Action { a: LElem, x: MElem },
    /// `(a, b)` for semiprime.
    Scalars { a: LElem, b: LElem },
    /// `(a, b, K)` for the three-variable predicates.
    Triple { a: LElem, b: LElem, k: MElem },
    /// An element strictly between `N` and `I_M`.
    Between { b: MElem },
    /// `(N : I_M) ≠ √(N : I_M)`.
    Unequal { colon: LElem, sqrt: LElem },
    /// The flag was overridden by an injected fault.
    Injected,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::Action { a, x } => write!(f, "a={a}, X={x}"),
            Witness::Scalars { a, b } => write!(f, "a={a}, b={b}"),
            Witness::Triple { a, b, k } => write!(f, "a={a}, b={b}, K={k}"),
            Witness::Between { b } => write!(f, "B={b}"),
            Witness::Unequal { colon, sqrt } => write!(f, "(N:I_M)={colon}, √(N:I_M)={sqrt}"),
            Witness::Injected => f.write_str("injected fault"),
        }
    }
}

impl Witness {
    /// Like `Display`, with element labels from `m` in place of ids.
    pub fn describe(&self, m: &LatticeModule) -> String {
        let l = m.lattice();
        match *self {
            Witness::Action { a, x } => format!("a={}, X={}", l.label(a), m.label(x)),
            Witness::Scalars { a, b } => format!("a={}, b={}", l.label(a), l.label(b)),
            Witness::Triple { a, b, k } => {
                format!("a={}, b={}, K={}", l.label(a), l.label(b), m.label(k))
            }
            Witness::Between { b } => format!("B={}", m.label(b)),
            Witness::Unequal { colon, sqrt } => {
                format!("(N:I_M)={}, √(N:I_M)={}", l.label(colon), l.label(sqrt))
            }
            Witness::Injected => self.to_string(),
        }
    }
}

/// Result of a predicate: it holds, or here is why not.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails(Witness),
}

impl Verdict {
    pub fn holds(self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(self) -> Option<Witness> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    fn from_witness(witness: Option<Witness>) -> Self {
        witness.map_or(Verdict::Holds, Verdict::Fails)
    }
}

/// The classification flags of a proper module element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flag {
    Prime,
    Primary,
    Maximal,
    Semiprime,
    RadicalElement,
    ClassicalPrime,
    TwoAbsorbing,
    PseudoPrimary,
    PseudoClassicalPrimary,
}

impl Flag {
    pub const ALL: [Flag; 9] = [
        Flag::Prime,
        Flag::Primary,
        Flag::Maximal,
        Flag::Semiprime,
        Flag::RadicalElement,
        Flag::ClassicalPrime,
        Flag::TwoAbsorbing,
        Flag::PseudoPrimary,
        Flag::PseudoClassicalPrimary,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Flag::Prime => "prime",
            Flag::Primary => "primary",
            Flag::Maximal => "maximal",
            Flag::Semiprime => "semiprime",
            Flag::RadicalElement => "radical-element",
            Flag::ClassicalPrime => "classical-prime",
            Flag::TwoAbsorbing => "two-absorbing",
            Flag::PseudoPrimary => "pseudo-primary",
            Flag::PseudoClassicalPrimary => "pseudo-classical-primary",
        }
    }

    pub fn parse(name: &str) -> Option<Flag> {
        Flag::ALL.into_iter().find(|f| f.name() == name)
    }
}

impl fmt::Display for Flag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub prime: bool,
    pub primary: bool,
    pub maximal: bool,
    pub semiprime: bool,
    pub radical_element: bool,
    pub classical_prime: bool,
    pub two_absorbing: bool,
    pub pseudo_primary: bool,
    pub pseudo_classical_primary: bool,
}

impl Flags {
    pub fn get(&self, flag: Flag) -> bool {
        match flag {
            Flag::Prime => self.prime,
            Flag::Primary => self.primary,
            Flag::Maximal => self.maximal,
            Flag::Semiprime => self.semiprime,
            Flag::RadicalElement => self.radical_element,
            Flag::ClassicalPrime => self.classical_prime,
            Flag::TwoAbsorbing => self.two_absorbing,
            Flag::PseudoPrimary => self.pseudo_primary,
            Flag::PseudoClassicalPrimary => self.pseudo_classical_primary,
        }
    }

    pub fn set(&mut self, flag: Flag, value: bool) {
        let slot = match flag {
            Flag::Prime => &mut self.prime,
            Flag::Primary => &mut self.primary,
            Flag::Maximal => &mut self.maximal,
            Flag::Semiprime => &mut self.semiprime,
            Flag::RadicalElement => &mut self.radical_element,
            Flag::ClassicalPrime => &mut self.classical_prime,
            Flag::TwoAbsorbing => &mut self.two_absorbing,
            Flag::PseudoPrimary => &mut self.pseudo_primary,
            Flag::PseudoClassicalPrimary => &mut self.pseudo_classical_primary,
        };
        *slot = value;
    }
}

/// The lattice primes attached to `N`, when defined.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Attachments {
    /// `N` prime and `p = (N : I_M)` prime.
    pub p_prime: Option<LElem>,
    /// `N` primary and `p = √(N : I_M)` prime.
    pub p_primary: Option<LElem>,
    /// `N` pseudo-primary and `p = √(N : I_M)` prime.
    pub p_pseudo_primary: Option<LElem>,
}

/// Everything the classifiers know about one proper element.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub element: MElem,
    pub label: String,
    /// `(N : I_M)`.
    pub colon_top: LElem,
    pub rad: MElem,
    pub flags: Flags,
    pub attachments: Attachments,
    /// The `X` over which `N` is a minimal prime; empty unless `N` is prime.
    pub minimal_prime_over: Vec<MElem>,
    /// One witness per false flag.
    pub witnesses: BTreeMap<Flag, Witness>,
}

fn first<T>(iter: impl IntoIterator<Item = T>, bad: impl Fn(&T) -> bool) -> Option<T> {
    iter.into_iter().find(|t| bad(t))
}

/// `aX ≤ N ⇒ X ≤ N or aI_M ≤ N`.
pub fn is_prime_m(m: &LatticeModule, n: MElem) -> Result<Verdict, ElementError> {
    m.require_proper(n)?;
    Ok(Verdict::from_witness(
        m.prime_witness(n).map(|(a, x)| Witness::Action { a, x }),
    ))
}

/// `aX ≤ N ⇒ X ≤ N or aⁿI_M ≤ N for some n`.
pub fn is_primary_m(m: &LatticeModule, n: MElem) -> Result<Verdict, ElementError> {
    m.require_proper(n)?;
    let l = m.lattice();
    let w = first(action_pairs(m), |&(a, x)| {
        m.leq(m.act(a, x), n) && !m.leq(x, n) && !m.leq(m.act_top(l.stable_power(a)), n)
    });
    Ok(Verdict::from_witness(
        w.map(|(a, x)| Witness::Action { a, x }),
    ))
}

/// `abI_M ≤ N ⇒ aI_M ≤ N or bI_M ≤ N`.
pub fn is_semiprime(m: &LatticeModule, n: MElem) -> Result<Verdict, ElementError> {
    m.require_proper(n)?;
    let l = m.lattice();
    let pairs = l.elements().flat_map(|a| l.elements().map(move |b| (a, b)));
    let w = first(pairs, |&(a, b)| {
        m.leq(m.act_top(l.mul(a, b)), n) && !m.leq(m.act_top(a), n) && !m.leq(m.act_top(b), n)
    });
    Ok(Verdict::from_witness(
        w.map(|(a, b)| Witness::Scalars { a, b }),
    ))
}

/// `(N : I_M) = √(N : I_M)`.
pub fn is_radical_element(m: &LatticeModule, n: MElem) -> Result<Verdict, ElementError> {
    m.require_proper(n)?;
    let colon = m.colon_top(n);
    let sqrt = m.lattice().sqrt(colon);
    Ok(if colon == sqrt {
        Verdict::Holds
    } else {
        Verdict::Fails(Witness::Unequal { colon, sqrt })
    })
}

/// `abK ≤ N ⇒ aK ≤ N or bK ≤ N`.
pub fn is_classical_prime(m: &LatticeModule, n: MElem) -> Result<Verdict, ElementError> {
    m.require_proper(n)?;
    let w = first(triples(m), |&(a, b, k)| {
        m.leq(m.act(a, m.act(b, k)), n) && !m.leq(m.act(a, k), n) && !m.leq(m.act(b, k), n)
    });
    Ok(Verdict::from_witness(w.map(|(a, b, k)| Witness::Triple {
        a,
        b,
        k,
    })))
}

/// `abK ≤ N ⇒ ab ≤ (N : I_M) or aK ≤ N or bK ≤ N`.
pub fn is_two_absorbing(m: &LatticeModule, n: MElem) -> Result<Verdict, ElementError> {
    m.require_proper(n)?;
    let l = m.lattice();
    let colon = m.colon_top(n);
    let w = first(triples(m), |&(a, b, k)| {
        m.leq(m.act(a, m.act(b, k)), n)
            && !l.leq(l.mul(a, b), colon)
            && !m.leq(m.act(a, k), n)
            && !m.leq(m.act(b, k), n)
    });
    Ok(Verdict::from_witness(w.map(|(a, b, k)| Witness::Triple {
        a,
        b,
        k,
    })))
}

/// `aX ≤ N ⇒ a ≤ (N : I_M) or X ≤ rad(N)`.
pub fn is_pseudo_primary(m: &LatticeModule, n: MElem) -> Result<Verdict, ElementError> {
    let rad = m.rad(n)?;
    let l = m.lattice();
    let colon = m.colon_top(n);
    let w = first(action_pairs(m), |&(a, x)| {
        m.leq(m.act(a, x), n) && !l.leq(a, colon) && !m.leq(x, rad)
    });
    Ok(Verdict::from_witness(
        w.map(|(a, x)| Witness::Action { a, x }),
    ))
}

/// `abK ≤ N ⇒ aK ≤ N or bK ≤ rad(N)`.
pub fn is_pseudo_classical_primary(m: &LatticeModule, n: MElem) -> Result<Verdict, ElementError> {
    let rad = m.rad(n)?;
    let w = first(triples(m), |&(a, b, k)| {
        m.leq(m.act(a, m.act(b, k)), n) && !m.leq(m.act(a, k), n) && !m.leq(m.act(b, k), rad)
    });
    Ok(Verdict::from_witness(w.map(|(a, b, k)| Witness::Triple {
        a,
        b,
        k,
    })))
}

/// No element strictly between `N` and `I_M`.
pub fn is_maximal_m(m: &LatticeModule, n: MElem) -> Result<Verdict, ElementError> {
    m.require_proper(n)?;
    let top = m.top();
    let w = first(m.elements(), |&b| m.lt(n, b) && b != top);
    Ok(Verdict::from_witness(w.map(|b| Witness::Between { b })))
}

/// Attachments computed from the definitions.
pub fn p_attachments(m: &LatticeModule, n: MElem) -> Result<Attachments, ElementError> {
    let prime = is_prime_m(m, n)?.holds();
    let primary = is_primary_m(m, n)?.holds();
    let pseudo_primary = is_pseudo_primary(m, n)?.holds();
    Ok(attachments_from(m, n, prime, primary, pseudo_primary))
}

fn attachments_from(
    m: &LatticeModule,
    n: MElem,
    prime: bool,
    primary: bool,
    pseudo_primary: bool,
) -> Attachments {
    let l = m.lattice();
    let colon = m.colon_top(n);
    let sqrt = l.sqrt(colon);
    let sqrt_prime = l.is_prime(sqrt);
    Attachments {
        p_prime: (prime && l.is_prime(colon)).then_some(colon),
        p_primary: (primary && sqrt_prime).then_some(sqrt),
        p_pseudo_primary: (pseudo_primary && sqrt_prime).then_some(sqrt),
    }
}

/// Whether the prime `N` is minimal among primes above `X`: no prime `Q`
/// satisfies `X ≤ Q < N`.
pub fn is_minimal_prime_over(m: &LatticeModule, n: MElem, x: MElem) -> Result<bool, ElementError> {
    m.require_proper(n)?;
    if !m.is_prime(n) {
        return Err(ElementError::NotPrime(n));
    }
    if !m.leq(x, n) {
        return Err(ElementError::NotBelow { below: x, above: n });
    }
    Ok(minimal_over(m, n, x))
}

fn minimal_over(m: &LatticeModule, n: MElem, x: MElem) -> bool {
    m.elements()
        .all(|q| !(m.is_prime(q) && m.leq(x, q) && m.lt(q, n)))
}

fn action_pairs(m: &LatticeModule) -> impl Iterator<Item = (LElem, MElem)> + '_ {
    m.lattice()
        .elements()
        .flat_map(move |a| m.elements().map(move |x| (a, x)))
}

fn triples(m: &LatticeModule) -> impl Iterator<Item = (LElem, LElem, MElem)> + '_ {
    let l = m.lattice();
    l.elements().flat_map(move |a| {
        l.elements()
            .flat_map(move |b| m.elements().map(move |k| (a, b, k)))
    })
}

/// Forces one flag to a fixed value on every classified element.
///
/// Only meant for exercising the failure paths of the theorem harness.
#[doc(hidden)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fault {
    pub flag: Flag,
    pub value: bool,
}

/// Runs every classifier on an element, optionally with an injected fault.
#[derive(Clone, Copy, Debug, Default)]
pub struct Classifier {
    fault: Option<Fault>,
}

impl Classifier {
    pub fn new() -> Self {
        Classifier::default()
    }

    #[doc(hidden)]
    pub fn with_fault(fault: Fault) -> Self {
        Classifier { fault: Some(fault) }
    }

    pub fn fault(&self) -> Option<Fault> {
        self.fault
    }

    pub fn classify(&self, m: &LatticeModule, n: MElem) -> Result<Classification, ElementError> {
        let rad = m.rad(n)?;
        let verdicts = [
            (Flag::Prime, is_prime_m(m, n)?),
            (Flag::Primary, is_primary_m(m, n)?),
            (Flag::Maximal, is_maximal_m(m, n)?),
            (Flag::Semiprime, is_semiprime(m, n)?),
            (Flag::RadicalElement, is_radical_element(m, n)?),
            (Flag::ClassicalPrime, is_classical_prime(m, n)?),
            (Flag::TwoAbsorbing, is_two_absorbing(m, n)?),
            (Flag::PseudoPrimary, is_pseudo_primary(m, n)?),
            (
                Flag::PseudoClassicalPrimary,
                is_pseudo_classical_primary(m, n)?,
            ),
        ];
        let mut flags = Flags::default();
        let mut witnesses = BTreeMap::new();
        for (flag, verdict) in verdicts {
            flags.set(flag, verdict.holds());
            if let Some(w) = verdict.witness() {
                witnesses.insert(flag, w);
            }
        }
        if let Some(fault) = self.fault {
            flags.set(fault.flag, fault.value);
            if fault.value {
                witnesses.remove(&fault.flag);
            } else {
                witnesses.insert(fault.flag, Witness::Injected);
            }
        }
        let minimal_prime_over = if flags.prime {
            m.elements()
                .filter(|&x| m.leq(x, n) && minimal_over(m, n, x))
                .collect()
        } else {
            Vec::new()
        };
        Ok(Classification {
            element: n,
            label: m.label(n),
            colon_top: m.colon_top(n),
            rad,
            flags,
            attachments: attachments_from(m, n, flags.prime, flags.primary, flags.pseudo_primary),
            minimal_prime_over,
            witnesses,
        })
    }

    /// Classifies every element in parallel; `I_M` maps to `None`.
    pub fn classify_all(&self, m: &LatticeModule) -> Vec<Option<Classification>> {
        (0..m.len())
            .into_par_iter()
            .map(|i| {
                let n = MElem(i);
                m.is_proper(n)
                    .then(|| self.classify(m, n).expect("proper element"))
            })
            .collect()
    }
}

/// [`Classifier::classify`] without faults.
pub fn classify(m: &LatticeModule, n: MElem) -> Result<Classification, ElementError> {
    Classifier::new().classify(m, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_zn_self_module, gen_zn_square_module};

    #[test]
    fn separation_fixture() {
        let m = gen_zn_square_module(8).unwrap();
        let l = m.lattice();
        let n = m.find_label("4Zx2Z").unwrap();
        let c = classify(&m, n).unwrap();
        assert!(c.flags.primary);
        assert!(!c.flags.pseudo_primary);
        assert!(c.flags.pseudo_classical_primary);
        assert!(!c.flags.classical_prime);
        assert!(!c.flags.semiprime);
        assert_eq!(m.label(c.rad), "2Zx2Z");
        assert_eq!(l.label(c.colon_top), "(4)");
        let Some(Witness::Action { a, x }) = c.witnesses.get(&Flag::PseudoPrimary).copied() else {
            panic!("missing witness");
        };
        assert_eq!(l.label(a), "(2)");
        assert_eq!(m.label(x), "<(2,1)>");
    }

    #[test]
    fn z8_self_module() {
        let m = gen_zn_self_module(8).unwrap();
        let four = m.find_label("(4)").unwrap();
        let w = is_prime_m(&m, four).unwrap().witness().unwrap();
        let two = m.find_label("(2)").unwrap();
        assert_eq!(
            w,
            Witness::Action {
                a: crate::LElem(two.0),
                x: two
            }
        );
        assert_eq!(m.rad(four).unwrap(), two);
    }

    #[test]
    fn z4_square_classical_prime_witness() {
        let m = gen_zn_square_module(4).unwrap();
        let n = m.find_label("2Zx0").unwrap();
        let Verdict::Fails(Witness::Triple { a, b, k }) = is_classical_prime(&m, n).unwrap() else {
            panic!("2Zx0 should not be classical prime");
        };
        let l = m.lattice();
        assert_eq!((l.label(a), l.label(b)), ("(2)".into(), "(2)".into()));
        // 0xZ is also a counterexample; <(1,1)> has the smaller id.
        assert_eq!(m.label(k), "<(1,1)>");
        let alt = m.find_label("0xZ").unwrap();
        assert!(m.leq(m.act(a, m.act(b, alt)), n) && !m.leq(m.act(a, alt), n));
        assert!(k < alt);
    }

    #[test]
    fn fault_overrides_one_flag() {
        let m = gen_zn_self_module(12).unwrap();
        let n = m.bottom();
        let c = Classifier::with_fault(Fault {
            flag: Flag::Prime,
            value: true,
        })
        .classify(&m, n)
        .unwrap();
        assert!(c.flags.prime);
        assert!(!c.witnesses.contains_key(&Flag::Prime));
        let all = Classifier::new().classify_all(&m);
        assert!(all.last().unwrap().is_none());
        assert_eq!(all.iter().flatten().count(), m.len() - 1);
    }

    #[test]
    fn top_is_rejected() {
        let m = gen_zn_self_module(6).unwrap();
        assert_eq!(
            classify(&m, m.top()).unwrap_err(),
            ElementError::NotProper(m.top())
        );
        let minimal = is_minimal_prime_over(&m, m.find_label("(2)").unwrap(), m.bottom()).unwrap();
        assert!(minimal);
    }
}
