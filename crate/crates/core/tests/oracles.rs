//! Generators and classifiers against the set-based oracle.

mod common;

use common::{elem, OracleFlags, SetModule};
use mlat::classify::{classify, is_minimal_prime_over};
use mlat::gen::{
    gen_zn_ideal_lattice, gen_zn_self_module, gen_zn_square_module, zn_square_subgroups,
};
use mlat::{Classifier, Flag, LElem, LatticeModule, Witness};

fn check_tables(m: &LatticeModule, oracle: &SetModule) {
    let l = m.lattice();
    let ids = oracle.match_lattice(m);
    let subs = oracle.match_module(m);
    assert_eq!(l.len(), oracle.ideals.len());
    assert_eq!(m.len(), oracle.subs.len());
    let mut seen = subs.clone();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), m.len(), "labels name distinct submodules");
    for a in l.elements() {
        for b in l.elements() {
            assert_eq!(l.leq(a, b), oracle.ileq(ids[a.0], ids[b.0]));
            assert_eq!(ids[l.mul(a, b).0], oracle.mul[ids[a.0]][ids[b.0]]);
        }
        for x in m.elements() {
            assert_eq!(
                subs[m.act(a, x).0],
                oracle.act[ids[a.0]][subs[x.0]],
                "{} · {}",
                l.label(a),
                m.label(x)
            );
        }
    }
    for x in m.elements() {
        for y in m.elements() {
            assert_eq!(m.leq(x, y), oracle.leq(subs[x.0], subs[y.0]));
            assert_eq!(
                ids[m.colon_elem(x, y).0],
                oracle.colon[subs[x.0]][subs[y.0]]
            );
        }
    }
}

#[test]
fn ideal_lattices_match_oracle() {
    for n in 1..=60 {
        check_tables(&gen_zn_self_module(n).unwrap(), &SetModule::new(n, 1));
        let l = gen_zn_ideal_lattice(n).unwrap();
        let oracle = SetModule::new(n, 1);
        for a in l.elements() {
            let o = oracle.ideal_by_label(&l.label(a));
            assert_eq!(
                oracle.ideal_by_label(&l.label(l.sqrt(a))),
                oracle.sqrt(o),
                "n={n}"
            );
            assert_eq!(l.is_prime(a), oracle.ideal_prime(o), "n={n} {}", l.label(a));
            assert_eq!(
                l.is_primary(a),
                oracle.ideal_primary(o),
                "n={n} {}",
                l.label(a)
            );
        }
    }
}

#[test]
fn square_modules_match_oracle() {
    for n in 1..=8 {
        check_tables(&gen_zn_square_module(n).unwrap(), &SetModule::new(n, 2));
    }
}

#[test]
fn subgroup_counts_match_oracle() {
    use common::Space;
    for (n, expected) in [(2, 5), (12, 90), (16, 83)] {
        assert_eq!(Space { n, dim: 2 }.subgroups().len(), expected);
        assert_eq!(zn_square_subgroups(n).len(), expected);
    }
    for n in 1..=10 {
        assert_eq!(
            zn_square_subgroups(n).len(),
            Space { n, dim: 2 }.subgroups().len(),
            "n={n}"
        );
    }
}

/// Checks that a classifier witness really refutes the flag in the oracle.
fn replay_witness(
    oracle: &SetModule,
    ids: &[usize],
    subs: &[usize],
    x: usize,
    flag: Flag,
    w: Witness,
) {
    let top = oracle.top();
    let le = |p: usize, q: usize| oracle.leq(p, q);
    let act = |a: LElem, k: usize| oracle.act[ids[a.0]][k];
    let rad = oracle.rad(x);
    let colon = oracle.colon_top(x);
    let ok = match (flag, w) {
        (Flag::Prime, Witness::Action { a, x: k }) => {
            le(act(a, subs[k.0]), x) && !le(subs[k.0], x) && !le(act(a, top), x)
        }
        (Flag::Primary, Witness::Action { a, x: k }) => {
            le(act(a, subs[k.0]), x)
                && !le(subs[k.0], x)
                && !oracle.ileq(ids[a.0], oracle.sqrt(colon))
        }
        (Flag::PseudoPrimary, Witness::Action { a, x: k }) => {
            le(act(a, subs[k.0]), x) && !oracle.ileq(ids[a.0], colon) && !le(subs[k.0], rad)
        }
        (Flag::Semiprime, Witness::Scalars { a, b }) => {
            let ab = oracle.mul[ids[a.0]][ids[b.0]];
            le(oracle.act[ab][top], x) && !le(act(a, top), x) && !le(act(b, top), x)
        }
        (
            Flag::ClassicalPrime | Flag::TwoAbsorbing | Flag::PseudoClassicalPrimary,
            Witness::Triple { a, b, k },
        ) => {
            let k = subs[k.0];
            let base = le(act(a, act(b, k)), x) && !le(act(a, k), x);
            match flag {
                Flag::ClassicalPrime => base && !le(act(b, k), x),
                Flag::TwoAbsorbing => {
                    base && !le(act(b, k), x) && !oracle.ileq(oracle.mul[ids[a.0]][ids[b.0]], colon)
                }
                _ => base && !le(act(b, k), rad),
            }
        }
        (Flag::Maximal, Witness::Between { b }) => {
            le(x, subs[b.0]) && subs[b.0] != x && subs[b.0] != top
        }
        (Flag::RadicalElement, Witness::Unequal { .. }) => colon != oracle.sqrt(colon),
        other => panic!("unexpected witness {other:?}"),
    };
    assert!(ok, "witness {w:?} does not refute {flag}");
}

fn check_classification(m: &LatticeModule, oracle: &SetModule) {
    let ids = oracle.match_lattice(m);
    let subs = oracle.match_module(m);
    for (n, class) in m.elements().zip(Classifier::new().classify_all(m)) {
        let Some(class) = class else {
            assert_eq!(n, m.top());
            continue;
        };
        let x = subs[n.0];
        let label = m.label(n);
        assert_eq!(
            OracleFlags::from_flags(&class.flags),
            oracle.flags(x),
            "{label}"
        );
        assert_eq!(subs[class.rad.0], oracle.rad(x), "rad {label}");
        assert_eq!(ids[class.colon_top.0], oracle.colon_top(x), "colon {label}");
        for (&flag, &w) in &class.witnesses {
            replay_witness(oracle, &ids, &subs, x, flag, w);
        }
    }
}

#[test]
fn self_module_classification_matches_oracle() {
    for n in 2..=30 {
        check_classification(&gen_zn_self_module(n).unwrap(), &SetModule::new(n, 1));
    }
}

#[test]
fn square_module_classification_matches_oracle() {
    for n in [2, 3, 4, 6, 8] {
        check_classification(&gen_zn_square_module(n).unwrap(), &SetModule::new(n, 2));
    }
}

#[test]
fn separation_fixture_values() {
    let m = gen_zn_square_module(8).unwrap();
    let oracle = SetModule::new(8, 2);
    let n = elem(&m, "4Zx2Z");
    let x = oracle.sub_by_label("4Zx2Z");
    let f = oracle.flags(x);
    assert!(
        f.primary
            && !f.pseudo_primary
            && f.pseudo_classical_primary
            && !f.classical_prime
            && !f.semiprime
    );
    assert_eq!(oracle.rad(x), oracle.sub_by_label("2Zx2Z"));

    // The reported witness is the first violation in (a, X) id order.
    let ids = oracle.match_lattice(&m);
    let subs = oracle.match_module(&m);
    let rad = oracle.rad(x);
    let colon = oracle.colon_top(x);
    let first = m
        .lattice()
        .elements()
        .flat_map(|a| m.elements().map(move |k| (a, k)))
        .find(|&(a, k)| {
            oracle.leq(oracle.act[ids[a.0]][subs[k.0]], x)
                && !oracle.ileq(ids[a.0], colon)
                && !oracle.leq(subs[k.0], rad)
        })
        .unwrap();
    let class = classify(&m, n).unwrap();
    assert_eq!(
        class.witnesses[&Flag::PseudoPrimary],
        Witness::Action {
            a: first.0,
            x: first.1
        }
    );
    assert_eq!(m.lattice().label(first.0), "(2)");
    assert_eq!(m.label(first.1), "<(2,1)>");
}

#[test]
fn z8_self_module_attachment() {
    let m = gen_zn_self_module(8).unwrap();
    let class = classify(&m, elem(&m, "(4)")).unwrap();
    assert_eq!(
        class.attachments.p_primary.map(|p| m.lattice().label(p)),
        Some("(2)".into())
    );
    assert_eq!(
        class.attachments.p_pseudo_primary,
        class.attachments.p_primary
    );
    assert_eq!(class.attachments.p_prime, None);
}

#[test]
fn z12_minimal_primes_over_zero() {
    let m = gen_zn_self_module(12).unwrap();
    let zero = m.bottom();
    let minimal: Vec<String> = m
        .elements()
        .filter(|&p| m.is_prime(p) && is_minimal_prime_over(&m, p, zero).unwrap())
        .map(|p| m.label(p))
        .collect();
    assert_eq!(minimal, ["(3)", "(2)"]);
    let two = elem(&m, "(2)");
    assert!(is_minimal_prime_over(&m, two, two).unwrap());
    assert!(is_minimal_prime_over(&m, elem(&m, "(4)"), zero).is_err());
}

#[test]
fn z4_square_classical_prime_witness_is_genuine() {
    let m = gen_zn_square_module(4).unwrap();
    let oracle = SetModule::new(4, 2);
    let n = elem(&m, "2Zx0");
    let class = classify(&m, n).unwrap();
    let Witness::Triple { a, b, k } = class.witnesses[&Flag::ClassicalPrime] else {
        panic!()
    };
    let l = m.lattice();
    assert_eq!((l.label(a), l.label(b)), ("(2)".into(), "(2)".into()));
    replay_witness(
        &oracle,
        &oracle.match_lattice(&m),
        &oracle.match_module(&m),
        oracle.sub_by_label("2Zx0"),
        Flag::ClassicalPrime,
        Witness::Triple { a, b, k },
    );
    // 0xZ refutes it as well, but comes later in id order.
    let alt = elem(&m, "0xZ");
    assert!(k < alt);
    assert!(m.leq(m.act(a, m.act(b, alt)), n) && !m.leq(m.act(a, alt), n));
}
