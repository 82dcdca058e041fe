use proptest::prelude::*;
use proptest::sample::Index;

use mlat::format::{parse_instance, Instance};
use mlat::gen::{gen_zn_ideal_lattice, gen_zn_self_module, gen_zn_square_module};
use mlat::{Classifier, Flag, LElem, LatticeModule, MElem};

fn module(square: bool, n: u64) -> LatticeModule {
    if square {
        gen_zn_square_module(n).unwrap()
    } else {
        gen_zn_self_module(n).unwrap()
    }
}

fn instance() -> impl Strategy<Value = (bool, u64)> {
    prop_oneof![(Just(false), 1..=40u64), (Just(true), 1..=8u64)]
}

fn l_at(m: &LatticeModule, i: &Index) -> LElem {
    LElem(i.index(m.lattice().len()))
}

fn m_at(m: &LatticeModule, i: &Index) -> MElem {
    MElem(i.index(m.len()))
}

proptest! {
    #[test]
    fn lattice_residual_is_right_adjoint(n in 1..=60u64, a: Index, b: Index, x: Index) {
        let l = gen_zn_ideal_lattice(n).unwrap();
        let (a, b, x) = (LElem(a.index(l.len())), LElem(b.index(l.len())), LElem(x.index(l.len())));
        prop_assert_eq!(l.leq(l.mul(x, b), a), l.leq(x, l.residual(a, b)));
    }

    #[test]
    fn module_residuals_are_adjoints((sq, n) in instance(), a: Index, x: Index, y: Index) {
        let m = module(sq, n);
        let (a, x, y) = (l_at(&m, &a), m_at(&m, &x), m_at(&m, &y));
        let l = m.lattice();
        prop_assert_eq!(m.leq(m.act(a, x), y), l.leq(a, m.colon_elem(y, x)));
        prop_assert_eq!(m.leq(m.act(a, x), y), m.leq(x, m.colon(y, a)));
    }

    #[test]
    fn sqrt_is_a_closure(n in 1..=60u64, a: Index, b: Index) {
        let l = gen_zn_ideal_lattice(n).unwrap();
        let (a, b) = (LElem(a.index(l.len())), LElem(b.index(l.len())));
        prop_assert!(l.leq(a, l.sqrt(a)));
        prop_assert_eq!(l.sqrt(l.sqrt(a)), l.sqrt(a));
        if l.leq(a, b) {
            prop_assert!(l.leq(l.sqrt(a), l.sqrt(b)));
        }
    }

    #[test]
    fn rad_is_a_closure((sq, n) in instance(), x: Index, y: Index) {
        let m = module(sq, n);
        prop_assume!(m.len() > 1);
        let (x, y) = (m_at(&m, &x), m_at(&m, &y));
        prop_assume!(m.is_proper(x) && m.is_proper(y));
        let r = m.rad(x).unwrap();
        prop_assert!(m.leq(x, r));
        if m.is_proper(r) {
            prop_assert_eq!(m.rad(r).unwrap(), r);
        }
        if m.leq(x, y) {
            prop_assert!(m.leq(r, m.rad(y).unwrap()));
        }
    }

    #[test]
    fn implication_diagram_holds((sq, n) in instance(), x: Index) {
        let m = module(sq, n);
        let x = m_at(&m, &x);
        prop_assume!(m.is_proper(x));
        let f = Classifier::new().classify(&m, x).unwrap().flags;
        let arrows = [
            (Flag::Maximal, Flag::Prime),
            (Flag::Prime, Flag::Primary),
            (Flag::Prime, Flag::Semiprime),
            (Flag::Prime, Flag::PseudoPrimary),
            (Flag::Prime, Flag::ClassicalPrime),
            (Flag::ClassicalPrime, Flag::Semiprime),
            (Flag::ClassicalPrime, Flag::TwoAbsorbing),
            (Flag::ClassicalPrime, Flag::PseudoClassicalPrimary),
            (Flag::PseudoPrimary, Flag::PseudoClassicalPrimary),
        ];
        for (from, to) in arrows {
            prop_assert!(!f.get(from) || f.get(to), "{} without {}", from, to);
        }
    }

    #[test]
    fn witnesses_exist_exactly_for_false_flags((sq, n) in instance(), x: Index) {
        let m = module(sq, n);
        let x = m_at(&m, &x);
        prop_assume!(m.is_proper(x));
        let c = Classifier::new().classify(&m, x).unwrap();
        for flag in Flag::ALL {
            prop_assert_eq!(c.flags.get(flag), !c.witnesses.contains_key(&flag), "{}", flag);
        }
        prop_assert_eq!(Classifier::new().classify(&m, x).unwrap(), c);
    }

    #[test]
    fn serialization_round_trips((sq, n) in instance()) {
        let inst = Instance::from_module(module(sq, n));
        let text = inst.to_text();
        let back = parse_instance(&text).unwrap();
        prop_assert_eq!(back.to_text(), text);
        prop_assert_eq!(back, inst);
    }

    #[test]
    fn line_deletions_never_panic(n in 1..=12u64, line: Index) {
        let text = Instance::from_module(gen_zn_self_module(n).unwrap()).to_text();
        let lines: Vec<&str> = text.lines().collect();
        let skip = line.index(lines.len());
        let cut: String = lines.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, l)| format!("{l}\n")).collect();
        if let Err(mlat::format::InstanceError::Parse(e)) = parse_instance(&cut) {
            prop_assert!(e.line >= 1 && e.line <= lines.len());
        }
    }

    #[test]
    fn arbitrary_text_never_panics(text in "(mlat 1\n)?((lattice|module|elements|mul|act|leq|top|bot|label)( [0-9]{1,2}){0,3}\n){0,12}") {
        let _ = parse_instance(&text);
    }
}
