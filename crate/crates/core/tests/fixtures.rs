//! Hand-written MLAT files: every parse error class, every axiom, and
//! round trips of the valid ones.

use std::fs;
use std::path::PathBuf;

use mlat::format::{
    parse_instance, parse_tables, serialize_instance, Instance, InstanceError, ParseErrorKind,
};
use mlat::gen::{gen_zn_ideal_lattice, gen_zn_self_module, gen_zn_square_module};
use mlat::Axiom;

fn read(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "fixtures", name]
        .iter()
        .collect();
    fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[derive(Debug)]
enum Expect {
    Valid {
        lattice: usize,
        module: Option<usize>,
    },
    Parse {
        kind: fn(&ParseErrorKind) -> bool,
        line: usize,
    },
    Lattice(Axiom, Option<usize>),
    Module(Axiom, Option<usize>),
}

const VALID: &[&str] = &[
    "chain2.mlat",
    "z4-ideals.mlat",
    "boolean-diamond.mlat",
    "z4-self.mlat",
    "chain2-over-chain2.mlat",
    "commented.mlat",
];

fn cases() -> Vec<(&'static str, Expect)> {
    use Expect::*;
    let syntax: fn(&ParseErrorKind) -> bool = |k| matches!(k, ParseErrorKind::Syntax(_));
    vec![
        (
            "chain2.mlat",
            Valid {
                lattice: 2,
                module: None,
            },
        ),
        (
            "z4-ideals.mlat",
            Valid {
                lattice: 3,
                module: None,
            },
        ),
        (
            "boolean-diamond.mlat",
            Valid {
                lattice: 4,
                module: None,
            },
        ),
        (
            "z4-self.mlat",
            Valid {
                lattice: 3,
                module: Some(3),
            },
        ),
        (
            "chain2-over-chain2.mlat",
            Valid {
                lattice: 2,
                module: Some(2),
            },
        ),
        (
            "commented.mlat",
            Valid {
                lattice: 3,
                module: None,
            },
        ),
        (
            "missing-header.mlat",
            Parse {
                kind: syntax,
                line: 1,
            },
        ),
        (
            "bad-version.mlat",
            Parse {
                kind: syntax,
                line: 1,
            },
        ),
        (
            "dangling-mul.mlat",
            Parse {
                kind: |k| matches!(k, ParseErrorKind::DanglingId { id: 7, len: 2 }),
                line: 12,
            },
        ),
        (
            "non-total.mlat",
            Parse {
                kind: |k| matches!(k, ParseErrorKind::NonTotal(_)),
                line: 2,
            },
        ),
        (
            "duplicate-cell.mlat",
            Parse {
                kind: |k| matches!(k, ParseErrorKind::Duplicate(_)),
                line: 13,
            },
        ),
        (
            "conflicting-cell.mlat",
            Parse {
                kind: |k| matches!(k, ParseErrorKind::Conflict(_)),
                line: 13,
            },
        ),
        (
            "module-before-lattice.mlat",
            Parse {
                kind: |k| matches!(k, ParseErrorKind::MissingBlock("lattice")),
                line: 2,
            },
        ),
        (
            "truncated.mlat",
            Parse {
                kind: syntax,
                line: 2,
            },
        ),
        (
            "bad-token.mlat",
            Parse {
                kind: syntax,
                line: 8,
            },
        ),
        (
            "duplicate-label.mlat",
            Parse {
                kind: |k| matches!(k, ParseErrorKind::Duplicate(_)),
                line: 5,
            },
        ),
        (
            "elements-not-first.mlat",
            Parse {
                kind: syntax,
                line: 3,
            },
        ),
        (
            "unknown-statement.mlat",
            Parse {
                kind: syntax,
                line: 13,
            },
        ),
        ("antisymmetry.mlat", Lattice(Axiom::Antisymmetry, Some(6))),
        ("missing-join.mlat", Lattice(Axiom::MissingJoin, None)),
        ("wrong-top.mlat", Lattice(Axiom::TopMismatch, Some(7))),
        (
            "non-commutative.mlat",
            Lattice(Axiom::Commutativity, Some(12)),
        ),
        (
            "non-associative.mlat",
            Lattice(Axiom::Associativity, Some(15)),
        ),
        ("no-identity.mlat", Lattice(Axiom::Identity, None)),
        (
            "not-distributive.mlat",
            Lattice(Axiom::JoinDistributivity, Some(14)),
        ),
        (
            "module-identity.mlat",
            Module(Axiom::ActionIdentity, Some(21)),
        ),
        (
            "module-annihilation.mlat",
            Module(Axiom::ActionAnnihilation, Some(19)),
        ),
        (
            "module-associativity.mlat",
            Module(Axiom::ActionAssociativity, Some(28)),
        ),
        (
            "module-scalar-distributivity.mlat",
            Module(Axiom::ScalarJoinDistributivity, Some(38)),
        ),
        (
            "module-element-distributivity.mlat",
            Module(Axiom::ElementJoinDistributivity, Some(36)),
        ),
    ]
}

#[test]
fn every_fixture_meets_expectation() {
    for (name, expect) in cases() {
        let result = parse_instance(&read(name));
        match (&expect, &result) {
            (Expect::Valid { lattice, module }, Ok(inst)) => {
                assert_eq!(inst.lattice.len(), *lattice, "{name}");
                assert_eq!(inst.module.as_ref().map(|m| m.len()), *module, "{name}");
            }
            (Expect::Parse { kind, line }, Err(InstanceError::Parse(e))) => {
                assert!(kind(&e.kind), "{name}: {e}");
                assert_eq!(e.line, *line, "{name}: {e}");
            }
            (Expect::Lattice(axiom, line), Err(InstanceError::Lattice(vs)))
            | (Expect::Module(axiom, line), Err(InstanceError::Module(vs))) => {
                assert_eq!(vs[0].violation.axiom, *axiom, "{name}: {}", vs[0]);
                assert_eq!(vs[0].line, *line, "{name}: {}", vs[0]);
            }
            _ => panic!("{name}: expected {expect:?}, got {result:?}"),
        }
    }
}

#[test]
fn parse_then_serialize_is_stable() {
    for name in VALID {
        let inst = parse_instance(&read(name)).unwrap();
        let text = inst.to_text();
        let again = parse_instance(&text).unwrap();
        assert_eq!(again, inst, "{name}");
        assert_eq!(again.to_text(), text, "{name}");
    }
}

#[test]
fn canonical_fixtures_serialize_to_themselves() {
    for name in [
        "chain2.mlat",
        "z4-ideals.mlat",
        "z4-self.mlat",
        "chain2-over-chain2.mlat",
    ] {
        let text = read(name);
        assert_eq!(parse_instance(&text).unwrap().to_text(), text, "{name}");
    }
}

fn generated() -> Vec<(String, Instance)> {
    let mut out = Vec::new();
    for n in 1..=30 {
        out.push((
            format!("zn-ideals {n}"),
            Instance::from_lattice(gen_zn_ideal_lattice(n).unwrap()),
        ));
        out.push((
            format!("zn-self {n}"),
            Instance::from_module(gen_zn_self_module(n).unwrap()),
        ));
    }
    for n in 1..=8 {
        out.push((
            format!("zn-square {n}"),
            Instance::from_module(gen_zn_square_module(n).unwrap()),
        ));
    }
    out
}

#[test]
fn generated_instances_round_trip() {
    for (name, inst) in generated() {
        let text = serialize_instance(&inst.lattice, inst.module.as_ref());
        let parsed = parse_instance(&text).unwrap();
        assert_eq!(parsed, inst, "{name}: parse ∘ serialize");
        assert_eq!(parsed.to_text(), text, "{name}: serialize ∘ parse");
        assert_eq!(parsed.fingerprint(), inst.fingerprint(), "{name}");
    }
}

#[test]
fn unvalidated_tables_survive_parsing() {
    // Axiom failures are a validation matter; the raw tables still parse.
    for name in ["non-commutative.mlat", "module-identity.mlat"] {
        assert!(parse_tables(&read(name)).is_ok(), "{name}");
    }
}
