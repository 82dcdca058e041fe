//! The MLAT text format.
//!
//! ```text
//! mlat 1
//! lattice
//! elements 2
//! label 0 (0)
//! bot 0
//! top 1
//! leq 0 1
//! mul 0 0 0
//! ...
//! module
//! elements 2
//! act 1 0 0
//! ...
//! ```
//!
//! `leq` pairs are closed reflexively and transitively, joins and meets are
//! derived from the resulting order, and `bot`/`top` are optional
//! declarations checked against it. `#` starts a comment. The canonical form
//! written by [`serialize_instance`] lists cover pairs and every table cell
//! in sorted order, so structurally equal instances serialize to identical
//! bytes.

use std::collections::{BTreeMap, HashMap};
use std::fmt::{self, Write as _};
use std::sync::Arc;

use sha2::{Digest, Sha256};

use crate::lattice::{validate_lattice, LatticeTables, MultiplicativeLattice};
use crate::module::{validate_module, LatticeModule, ModuleTables, ModuleValidation};
use crate::order::{closure_from_pairs, OrderTables};
use crate::violation::{Axiom, ValidationError, ValidationMode, Violation};

pub const FORMAT_HEADER: &str = "mlat 1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Syntax(String),
    DanglingId { id: usize, len: usize },
    NonTotal(String),
    Duplicate(String),
    Conflict(String),
    MissingBlock(&'static str),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::Syntax(msg) => write!(f, "syntax error: {msg}"),
            ParseErrorKind::DanglingId { id, len } => {
                write!(f, "dangling element id {id} (carrier has {len} elements)")
            }
            ParseErrorKind::NonTotal(msg) => write!(f, "non-total table: {msg}"),
            ParseErrorKind::Duplicate(msg) => write!(f, "duplicate: {msg}"),
            ParseErrorKind::Conflict(msg) => write!(f, "conflict: {msg}"),
            ParseErrorKind::MissingBlock(block) => write!(f, "missing `{block}` block"),
        }
    }
}

/// A parse failure at a 1-based line and column.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

/// A validator violation with the source line it is attributed to, if any.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocatedViolation {
    pub violation: Violation,
    pub line: Option<usize>,
}

impl fmt::Display for LocatedViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.violation),
            None => write!(f, "{}", self.violation),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InstanceError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid lattice: {} violation(s)", .0.len())]
    Lattice(Vec<LocatedViolation>),
    #[error("invalid module: {} violation(s)", .0.len())]
    Module(Vec<LocatedViolation>),
}

impl InstanceError {
    pub fn violations(&self) -> &[LocatedViolation] {
        match self {
            InstanceError::Parse(_) => &[],
            InstanceError::Lattice(v) | InstanceError::Module(v) => v,
        }
    }
}

/// Source lines of the statements in one block, for error attribution.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BlockLines {
    pub header: usize,
    pub leq: HashMap<(usize, usize), usize>,
    pub cells: HashMap<(usize, usize), usize>,
    pub top: Option<usize>,
    pub bot: Option<usize>,
}

/// Parsed but unvalidated tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParsedTables {
    pub lattice: LatticeTables,
    pub module: Option<ModuleTables>,
    pub lattice_lines: BlockLines,
    pub module_lines: Option<BlockLines>,
}

/// A validated instance: a lattice and optionally a module over it.
#[derive(Clone, Debug, PartialEq)]
pub struct Instance {
    pub lattice: Arc<MultiplicativeLattice>,
    pub module: Option<LatticeModule>,
}

impl Instance {
    pub fn from_module(module: LatticeModule) -> Self {
        Instance {
            lattice: module.lattice().clone(),
            module: Some(module),
        }
    }

    pub fn from_lattice(lattice: MultiplicativeLattice) -> Self {
        Instance {
            lattice: Arc::new(lattice),
            module: None,
        }
    }

    /// The module, or the lattice acting on itself when there is none.
    pub fn module_or_self(&self) -> LatticeModule {
        match &self.module {
            Some(m) => m.clone(),
            None => LatticeModule::self_module(self.lattice.clone()),
        }
    }

    pub fn to_text(&self) -> String {
        serialize_instance(&self.lattice, self.module.as_ref())
    }

    /// Hex SHA-256 of the canonical serialization.
    pub fn fingerprint(&self) -> String {
        format!("{:x}", Sha256::digest(self.to_text().as_bytes()))
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum BlockKind {
    Lattice,
    Module,
}

impl BlockKind {
    fn name(self) -> &'static str {
        match self {
            BlockKind::Lattice => "lattice",
            BlockKind::Module => "module",
        }
    }
}

struct Block {
    kind: BlockKind,
    len: Option<usize>,
    leq: Vec<(usize, usize)>,
    cells: BTreeMap<(usize, usize), usize>,
    labels: BTreeMap<usize, String>,
    top: Option<usize>,
    bot: Option<usize>,
    lines: BlockLines,
}

impl Block {
    fn new(kind: BlockKind, header: usize) -> Self {
        Block {
            kind,
            len: None,
            leq: Vec::new(),
            cells: BTreeMap::new(),
            labels: BTreeMap::new(),
            top: None,
            bot: None,
            lines: BlockLines {
                header,
                ..Default::default()
            },
        }
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (c.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            _ => {}
        }
    }
    out
}

/// Parses MLAT text into tables without checking any axioms.
pub fn parse_tables(text: &str) -> Result<ParsedTables, ParseError> {
    let mut header_seen = false;
    let mut blocks: Vec<Block> = Vec::new();
    let mut last_line = 0;

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        last_line = line_no;
        let err = |column: usize, kind: ParseErrorKind| ParseError {
            line: line_no,
            column,
            kind,
        };
        let trimmed = raw.trim_start();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let mut toks = tokens(raw);
        if let Some(pos) = toks.iter().position(|t| t.text.starts_with('#')) {
            if toks[0].text != "label" {
                toks.truncate(pos);
            }
        }
        let keyword = &toks[0];

        if !header_seen {
            if toks.len() == 2 && toks[0].text == "mlat" {
                if toks[1].text != "1" {
                    return Err(err(
                        toks[1].column,
                        ParseErrorKind::Syntax(format!("unsupported version {}", toks[1].text)),
                    ));
                }
                header_seen = true;
                continue;
            }
            return Err(err(
                keyword.column,
                ParseErrorKind::Syntax(format!("expected header `{FORMAT_HEADER}`")),
            ));
        }

        let block_kind = match keyword.text {
            "lattice" => Some(BlockKind::Lattice),
            "module" => Some(BlockKind::Module),
            _ => None,
        };
        if let Some(kind) = block_kind {
            if toks.len() != 1 {
                return Err(err(
                    toks[1].column,
                    ParseErrorKind::Syntax("unexpected token after block keyword".into()),
                ));
            }
            match (kind, blocks.len()) {
                (BlockKind::Lattice, 0) | (BlockKind::Module, 1) => {
                    blocks.push(Block::new(kind, line_no))
                }
                (BlockKind::Module, 0) => {
                    return Err(err(keyword.column, ParseErrorKind::MissingBlock("lattice")))
                }
                _ => {
                    return Err(err(
                        keyword.column,
                        ParseErrorKind::Duplicate(format!("second `{}` block", kind.name())),
                    ));
                }
            }
            continue;
        }

        let lattice_len = blocks.first().and_then(|b| b.len);
        let Some(block) = blocks.last_mut() else {
            return Err(err(
                keyword.column,
                ParseErrorKind::Syntax(format!("`{}` outside a block", keyword.text)),
            ));
        };

        let arity = |n: usize| -> Result<(), ParseError> {
            if toks.len() == n + 1 {
                Ok(())
            } else {
                let column = toks
                    .get(n + 1)
                    .map_or(raw.chars().count() + 1, |t| t.column);
                Err(err(
                    column,
                    ParseErrorKind::Syntax(format!("`{}` takes {n} argument(s)", keyword.text)),
                ))
            }
        };
        let number = |t: &Token| -> Result<usize, ParseError> {
            t.text.parse::<usize>().map_err(|_| {
                err(
                    t.column,
                    ParseErrorKind::Syntax(format!("expected a decimal id, found `{}`", t.text)),
                )
            })
        };
        let id_in = |t: &Token, len: usize| -> Result<usize, ParseError> {
            let id = number(t)?;
            if id < len {
                Ok(id)
            } else {
                Err(err(t.column, ParseErrorKind::DanglingId { id, len }))
            }
        };

        if keyword.text == "elements" {
            arity(1)?;
            if block.len.is_some() {
                return Err(err(
                    keyword.column,
                    ParseErrorKind::Duplicate("`elements` declared twice".into()),
                ));
            }
            let len = number(&toks[1])?;
            if len == 0 {
                return Err(err(
                    toks[1].column,
                    ParseErrorKind::Syntax("carrier must be non-empty".into()),
                ));
            }
            block.len = Some(len);
            continue;
        }
        let Some(len) = block.len else {
            return Err(err(
                keyword.column,
                ParseErrorKind::Syntax("`elements` must come first in a block".into()),
            ));
        };

        match (keyword.text, block.kind) {
            ("leq", _) => {
                arity(2)?;
                let (i, j) = (id_in(&toks[1], len)?, id_in(&toks[2], len)?);
                block.leq.push((i, j));
                block.lines.leq.entry((i, j)).or_insert(line_no);
            }
            ("top" | "bot", _) => {
                arity(1)?;
                let id = id_in(&toks[1], len)?;
                let (slot, line) = if keyword.text == "top" {
                    (&mut block.top, &mut block.lines.top)
                } else {
                    (&mut block.bot, &mut block.lines.bot)
                };
                if slot.is_some() {
                    return Err(err(
                        keyword.column,
                        ParseErrorKind::Duplicate(format!("`{}` declared twice", keyword.text)),
                    ));
                }
                *slot = Some(id);
                *line = Some(line_no);
            }
            ("label", _) => {
                if toks.len() < 3 {
                    return Err(err(
                        keyword.column,
                        ParseErrorKind::Syntax("`label` takes an id and a string".into()),
                    ));
                }
                let id = id_in(&toks[1], len)?;
                let start = raw
                    .char_indices()
                    .nth(toks[2].column - 1)
                    .map_or(raw.len(), |(i, _)| i);
                let label = raw[start..].trim_end().to_string();
                if block.labels.contains_key(&id) {
                    return Err(err(
                        keyword.column,
                        ParseErrorKind::Duplicate(format!("second label for element {id}")),
                    ));
                }
                if block.labels.values().any(|l| *l == label) {
                    return Err(err(
                        toks[2].column,
                        ParseErrorKind::Duplicate(format!("label `{label}` used twice")),
                    ));
                }
                block.labels.insert(id, label);
            }
            ("mul", BlockKind::Lattice) | ("act", BlockKind::Module) => {
                arity(3)?;
                let row_len = match block.kind {
                    BlockKind::Lattice => len,
                    BlockKind::Module => lattice_len.expect("lattice block has elements"),
                };
                let (i, j, k) = (
                    id_in(&toks[1], row_len)?,
                    id_in(&toks[2], len)?,
                    id_in(&toks[3], len)?,
                );
                match block.cells.insert((i, j), k) {
                    Some(prev) if prev == k => {
                        return Err(err(
                            keyword.column,
                            ParseErrorKind::Duplicate(format!("cell ({i}, {j}) given twice")),
                        ));
                    }
                    Some(prev) => {
                        return Err(err(
                            keyword.column,
                            ParseErrorKind::Conflict(format!("cell ({i}, {j}) is {prev} and {k}")),
                        ));
                    }
                    None => {
                        block.lines.cells.insert((i, j), line_no);
                    }
                }
            }
            (other, kind) => {
                return Err(err(
                    keyword.column,
                    ParseErrorKind::Syntax(format!(
                        "unknown statement `{other}` in {} block",
                        kind.name()
                    )),
                ));
            }
        }
    }

    let eof = |kind| ParseError {
        line: last_line.max(1),
        column: 1,
        kind,
    };
    if !header_seen {
        return Err(eof(ParseErrorKind::Syntax(format!(
            "expected header `{FORMAT_HEADER}`"
        ))));
    }
    let mut blocks = blocks.into_iter();
    let Some(lattice) = blocks.next() else {
        return Err(eof(ParseErrorKind::MissingBlock("lattice")));
    };
    let module = blocks.next();
    let lattice_len = lattice.len.ok_or_else(|| ParseError {
        line: lattice.lines.header,
        column: 1,
        kind: ParseErrorKind::Syntax("block has no `elements` statement".into()),
    })?;

    let (lattice_tables, lattice_lines) = finish_block(lattice, lattice_len)?;
    let (module_tables, module_lines) = match module {
        Some(block) => {
            let len = block.len.ok_or_else(|| ParseError {
                line: block.lines.header,
                column: 1,
                kind: ParseErrorKind::Syntax("block has no `elements` statement".into()),
            })?;
            let (tables, lines) = finish_block(block, lattice_len)?;
            let tables = ModuleTables {
                order: tables.order,
                act: tables.mul,
                labels: tables.labels,
            };
            debug_assert_eq!(tables.order.len, len);
            (Some(tables), Some(lines))
        }
        None => (None, None),
    };
    Ok(ParsedTables {
        lattice: lattice_tables,
        module: module_tables,
        lattice_lines,
        module_lines,
    })
}

/// Turns a block into tables; the module's action reuses the `mul` slot.
fn finish_block(block: Block, rows: usize) -> Result<(LatticeTables, BlockLines), ParseError> {
    let len = block.len.expect("checked by caller");
    let mut table = Vec::with_capacity(rows * len);
    for i in 0..rows {
        for j in 0..len {
            match block.cells.get(&(i, j)) {
                Some(&k) => table.push(k),
                None => {
                    let stmt = if block.kind == BlockKind::Lattice {
                        "mul"
                    } else {
                        "act"
                    };
                    return Err(ParseError {
                        line: block.lines.header,
                        column: 1,
                        kind: ParseErrorKind::NonTotal(format!(
                            "{} block has no `{stmt} {i} {j}` cell",
                            block.kind.name()
                        )),
                    });
                }
            }
        }
    }
    let order = OrderTables {
        len,
        leq: closure_from_pairs(len, block.leq.iter().copied()),
        join: None,
        meet: None,
        top: block.top,
        bottom: block.bot,
    };
    let mut labels = vec![None; len];
    for (id, label) in block.labels {
        labels[id] = Some(label);
    }
    Ok((
        LatticeTables {
            order,
            mul: table,
            labels,
        },
        block.lines,
    ))
}

fn locate(
    violations: Vec<Violation>,
    lines: &BlockLines,
    is_module: bool,
    one: usize,
    zero: usize,
) -> Vec<LocatedViolation> {
    violations
        .into_iter()
        .map(|violation| {
            let w = &violation.witness;
            let cell = |i: usize, j: usize| lines.cells.get(&(i, j)).copied();
            let line = match violation.axiom {
                Axiom::TopMismatch => lines.top,
                Axiom::BottomMismatch => lines.bot,
                Axiom::Antisymmetry if w.len() >= 2 => lines.leq.get(&(w[0], w[1])).copied(),
                Axiom::ActionIdentity if is_module => w.first().and_then(|&x| cell(one, x)),
                Axiom::ActionAnnihilation if is_module => w.first().and_then(|&x| cell(zero, x)),
                Axiom::DanglingId
                | Axiom::Commutativity
                | Axiom::Identity
                | Axiom::Associativity
                | Axiom::JoinDistributivity
                    if w.len() >= 2 =>
                {
                    cell(w[0], w[1])
                }
                Axiom::ScalarJoinDistributivity
                | Axiom::ElementJoinDistributivity
                | Axiom::ActionAssociativity
                    if w.len() >= 2 =>
                {
                    cell(w[0], w[w.len() - 1])
                }
                _ => None,
            };
            LocatedViolation { violation, line }
        })
        .collect()
}

/// Validates parsed tables.
pub fn validate_tables(
    parsed: &ParsedTables,
    mode: ValidationMode,
) -> Result<Instance, InstanceError> {
    let lattice = validate_lattice(&parsed.lattice, mode).map_err(|e: ValidationError| {
        InstanceError::Lattice(locate(e.violations, &parsed.lattice_lines, false, 0, 0))
    })?;
    let lattice = Arc::new(lattice);
    let module = match (&parsed.module, &parsed.module_lines) {
        (Some(tables), Some(lines)) => {
            let options = ModuleValidation {
                mode,
                ..Default::default()
            };
            let module = validate_module(lattice.clone(), tables, options).map_err(|e| {
                InstanceError::Module(locate(
                    e.violations,
                    lines,
                    true,
                    lattice.top().0,
                    lattice.bottom().0,
                ))
            })?;
            Some(module)
        }
        _ => None,
    };
    Ok(Instance { lattice, module })
}

/// Parses and validates, collecting every violation.
pub fn parse_instance(text: &str) -> Result<Instance, InstanceError> {
    validate_tables(&parse_tables(text)?, ValidationMode::AllViolations)
}

#[allow(clippy::too_many_arguments)]
fn write_block(
    out: &mut String,
    name: &str,
    stmt: &str,
    len: usize,
    labels: &[Option<String>],
    order: &crate::order::FiniteLattice,
    rows: usize,
    cell: impl Fn(usize, usize) -> usize,
) {
    let _ = writeln!(out, "{name}");
    let _ = writeln!(out, "elements {len}");
    for (i, label) in labels.iter().enumerate() {
        if let Some(label) = label {
            let _ = writeln!(out, "label {i} {label}");
        }
    }
    let _ = writeln!(out, "bot {}", order.bottom());
    let _ = writeln!(out, "top {}", order.top());
    for (i, j) in order.cover_pairs() {
        let _ = writeln!(out, "leq {i} {j}");
    }
    for i in 0..rows {
        for j in 0..len {
            let _ = writeln!(out, "{stmt} {i} {j} {}", cell(i, j));
        }
    }
}

/// Canonical text of a lattice and optional module.
pub fn serialize_instance(
    lattice: &MultiplicativeLattice,
    module: Option<&LatticeModule>,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{FORMAT_HEADER}");
    let n = lattice.len();
    let mul = |a, b| lattice.mul(crate::LElem(a), crate::LElem(b)).0;
    write_block(
        &mut out,
        "lattice",
        "mul",
        n,
        lattice.labels(),
        lattice.order(),
        n,
        mul,
    );
    if let Some(m) = module {
        let act = |a, x| m.act(crate::LElem(a), crate::MElem(x)).0;
        write_block(
            &mut out,
            "module",
            "act",
            m.len(),
            m.labels(),
            m.order(),
            n,
            act,
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gen::{gen_zn_ideal_lattice, gen_zn_square_module};

    const CHAIN2: &str =
        "mlat 1\nlattice\nelements 2\nleq 0 1\nmul 0 0 0\nmul 0 1 0\nmul 1 0 0\nmul 1 1 1\n";

    #[test]
    fn hand_written_chain() {
        let inst = parse_instance(CHAIN2).unwrap();
        assert!(inst.lattice.is_pg());
        assert!(inst.module.is_none());
        let canonical = inst.to_text();
        assert_eq!(parse_instance(&canonical).unwrap(), inst);
        assert!(canonical.contains("bot 0\ntop 1\n"));
    }

    #[test]
    fn round_trip_generated() {
        let l = gen_zn_ideal_lattice(12).unwrap();
        let text = serialize_instance(&l, None);
        let back = parse_instance(&text).unwrap();
        assert_eq!(*back.lattice, l);
        assert_eq!(back.to_text(), text);

        let m = gen_zn_square_module(4).unwrap();
        let inst = Instance::from_module(m);
        let back = parse_instance(&inst.to_text()).unwrap();
        assert_eq!(back, inst);
        assert_eq!(back.fingerprint(), inst.fingerprint());
    }

    #[test]
    fn dangling_mul_reports_line() {
        let text = CHAIN2.replace("mul 1 0 0", "mul 1 0 9");
        let err = parse_tables(&text).unwrap_err();
        assert_eq!(err.line, 7);
        assert_eq!(err.column, 9);
        assert_eq!(err.kind, ParseErrorKind::DanglingId { id: 9, len: 2 });
        assert!(err.to_string().contains("dangling element id"));
    }

    #[test]
    fn comments_and_labels() {
        let text = "# header comment\nmlat 1\nlattice  # trailing\nelements 2\nlabel 1 the # whole\nleq 0 1\nmul 0 0 0\nmul 0 1 0\nmul 1 0 0\nmul 1 1 1\n";
        let inst = parse_instance(text).unwrap();
        assert_eq!(inst.lattice.label(crate::LElem(1)), "the # whole");
    }

    #[test]
    fn axiom_violations_carry_lines() {
        let text = CHAIN2.replace("mul 0 1 0", "mul 0 1 1");
        let InstanceError::Lattice(v) = parse_instance(&text).unwrap_err() else {
            panic!("expected lattice violations");
        };
        assert!(v
            .iter()
            .any(|v| v.violation.axiom == Axiom::Commutativity && v.line == Some(6)));
    }
}
