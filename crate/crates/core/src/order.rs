//! Dense finite lattices on the carrier `0..len`.
//!
//! Both the multiplicative lattice and the module carrier are stored this
//! way: an `len × len` order matrix plus join and meet tables. The tables are
//! either supplied (and cross-checked) or derived from the order.

use crate::violation::{Axiom, Collector, Violation};

/// Raw order data before validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct OrderTables {
    pub len: usize,
    /// Row-major, `leq[i * len + j]` iff `i ≤ j`.
    pub leq: Vec<bool>,
    pub join: Option<Vec<usize>>,
    pub meet: Option<Vec<usize>>,
    pub top: Option<usize>,
    pub bottom: Option<usize>,
}

/// A validated finite lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice {
    len: usize,
    leq: Vec<bool>,
    join: Vec<usize>,
    meet: Vec<usize>,
    top: usize,
    bottom: usize,
}

impl FiniteLattice {
    /// Validates `tables`, deriving whatever join/meet/top/bottom data is absent.
    pub(crate) fn validate(tables: &OrderTables, out: &mut Collector) -> Option<FiniteLattice> {
        let n = tables.len;
        if n == 0 {
            out.push(Violation::new(
                Axiom::EmptyCarrier,
                vec![],
                "carrier has no elements",
            ));
            return None;
        }
        if tables.leq.len() != n * n {
            out.push(Violation::new(
                Axiom::NonTotalTable,
                vec![],
                format!(
                    "order matrix has {} cells, expected {}",
                    tables.leq.len(),
                    n * n
                ),
            ));
            return None;
        }
        let start = out.len();
        check_partial_order(n, &tables.leq, out);
        if out.len() > start {
            return None;
        }

        let leq = &tables.leq;
        let below = |i: usize, j: usize| leq[i * n + j];
        let down_size: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| below(i, j)).count())
            .collect();
        let up_size: Vec<usize> = (0..n)
            .map(|i| (0..n).filter(|&j| below(i, j)).count())
            .collect();

        let mut join = vec![0; n * n];
        let mut meet = vec![0; n * n];
        let mut complete = true;
        for i in 0..n {
            for j in i..n {
                match least_upper_bound(n, leq, &down_size, i, j) {
                    Some(u) => {
                        join[i * n + j] = u;
                        join[j * n + i] = u;
                    }
                    None => {
                        complete = false;
                        out.push(Violation::new(
                            Axiom::MissingJoin,
                            vec![i, j],
                            "no least upper bound",
                        ));
                        if out.full() {
                            return None;
                        }
                    }
                }
                match greatest_lower_bound(n, leq, &up_size, i, j) {
                    Some(l) => {
                        meet[i * n + j] = l;
                        meet[j * n + i] = l;
                    }
                    None => {
                        complete = false;
                        out.push(Violation::new(
                            Axiom::MissingMeet,
                            vec![i, j],
                            "no greatest lower bound",
                        ));
                        if out.full() {
                            return None;
                        }
                    }
                }
            }
        }
        if !complete {
            return None;
        }

        let top = (0..n).fold(0, |acc, x| join[acc * n + x]);
        let bottom = (0..n).fold(0, |acc, x| meet[acc * n + x]);

        let mut ok = true;
        for (given, axiom, derived) in [
            (tables.join.as_ref(), Axiom::JoinTableMismatch, &join),
            (tables.meet.as_ref(), Axiom::MeetTableMismatch, &meet),
        ] {
            let Some(given) = given else { continue };
            if given.len() != n * n {
                ok = false;
                out.push(Violation::new(
                    Axiom::NonTotalTable,
                    vec![],
                    format!("{axiom}: wrong table size"),
                ));
                continue;
            }
            for i in 0..n {
                for j in 0..n {
                    let g = given[i * n + j];
                    if g != derived[i * n + j] {
                        ok = false;
                        out.push(Violation::new(
                            axiom,
                            vec![i, j],
                            format!("table gives {g}, order gives {}", derived[i * n + j]),
                        ));
                        if out.full() {
                            return None;
                        }
                    }
                }
            }
        }
        if let Some(t) = tables.top {
            if t != top {
                ok = false;
                out.push(Violation::new(
                    Axiom::TopMismatch,
                    vec![t, top],
                    "declared top differs from greatest element",
                ));
            }
        }
        if let Some(b) = tables.bottom {
            if b != bottom {
                ok = false;
                out.push(Violation::new(
                    Axiom::BottomMismatch,
                    vec![b, bottom],
                    "declared bottom differs from least element",
                ));
            }
        }
        ok.then(|| FiniteLattice {
            len: n,
            leq: leq.clone(),
            join,
            meet,
            top,
            bottom,
        })
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len + j]
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    #[inline]
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i * self.len + j]
    }

    #[inline]
    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i * self.len + j]
    }

    #[inline]
    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn bottom(&self) -> usize {
        self.bottom
    }

    /// Join of an arbitrary family; the empty join is the bottom.
    pub fn join_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    /// Meet of an arbitrary family; the empty meet is the top.
    pub fn meet_all(&self, items: impl IntoIterator<Item = usize>) -> usize {
        items.into_iter().fold(self.top, |acc, x| self.meet(acc, x))
    }

    /// `j` covers `i`: `i < j` with nothing strictly between.
    pub fn covers(&self, i: usize, j: usize) -> bool {
        self.lt(i, j) && (0..self.len).all(|k| !(self.lt(i, k) && self.lt(k, j)))
    }

    /// Pairs `(i, j)` with `j` covering `i`, in ascending order.
    pub fn cover_pairs(&self) -> Vec<(usize, usize)> {
        let mut pairs = Vec::new();
        for i in 0..self.len {
            for j in 0..self.len {
                if self.covers(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        pairs
    }

    pub(crate) fn leq_matrix(&self) -> &[bool] {
        &self.leq
    }

    pub(crate) fn join_table(&self) -> &[usize] {
        &self.join
    }

    pub(crate) fn meet_table(&self) -> &[usize] {
        &self.meet
    }
}

fn check_partial_order(n: usize, leq: &[bool], out: &mut Collector) {
    let below = |i: usize, j: usize| leq[i * n + j];
    for i in 0..n {
        if !below(i, i) {
            out.push(Violation::new(
                Axiom::Reflexivity,
                vec![i],
                "element not below itself",
            ));
            if out.full() {
                return;
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            if below(i, j) && below(j, i) {
                out.push(Violation::new(
                    Axiom::Antisymmetry,
                    vec![i, j],
                    "distinct elements below each other",
                ));
                if out.full() {
                    return;
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if !below(i, j) {
                continue;
            }
            for k in 0..n {
                if below(j, k) && !below(i, k) {
                    out.push(Violation::new(
                        Axiom::Transitivity,
                        vec![i, j, k],
                        "i ≤ j ≤ k but not i ≤ k",
                    ));
                    if out.full() {
                        return;
                    }
                }
            }
        }
    }
}

fn least_upper_bound(
    n: usize,
    leq: &[bool],
    down_size: &[usize],
    i: usize,
    j: usize,
) -> Option<usize> {
    let uppers: Vec<usize> = (0..n)
        .filter(|&u| leq[i * n + u] && leq[j * n + u])
        .collect();
    let candidate = *uppers.iter().min_by_key(|&&u| down_size[u])?;
    uppers
        .iter()
        .all(|&u| leq[candidate * n + u])
        .then_some(candidate)
}

fn greatest_lower_bound(
    n: usize,
    leq: &[bool],
    up_size: &[usize],
    i: usize,
    j: usize,
) -> Option<usize> {
    let lowers: Vec<usize> = (0..n)
        .filter(|&l| leq[l * n + i] && leq[l * n + j])
        .collect();
    let candidate = *lowers.iter().min_by_key(|&&l| up_size[l])?;
    lowers
        .iter()
        .all(|&l| leq[l * n + candidate])
        .then_some(candidate)
}

/// Reflexive-transitive closure of a relation given as pairs `(i, j)` meaning `i ≤ j`.
pub fn closure_from_pairs(
    len: usize,
    pairs: impl IntoIterator<Item = (usize, usize)>,
) -> Vec<bool> {
    let mut leq = vec![false; len * len];
    for i in 0..len {
        leq[i * len + i] = true;
    }
    for (i, j) in pairs {
        leq[i * len + j] = true;
    }
    // Warshall
    for k in 0..len {
        for i in 0..len {
            if !leq[i * len + k] {
                continue;
            }
            for j in 0..len {
                if leq[k * len + j] {
                    leq[i * len + j] = true;
                }
            }
        }
    }
    leq
}
