//! Independent oracles for the `Z_n` instance families.
//!
//! Ideals and submodules are modelled as explicit point sets, products and
//! residuals are computed from ring arithmetic, and the element predicates are
//! evaluated straight from their definitions on those sets. Nothing here
//! reads the generator's tables except to match elements up by label.

#![allow(dead_code)]

use std::collections::HashMap;

use mlat::{LatticeModule, MElem};

/// A set of points of `Z_n^dim`, `n^dim ≤ 256`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bits([u64; 4]);

impl Bits {
    pub fn has(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn meet(&self, other: &Bits) -> Bits {
        Bits(std::array::from_fn(|i| self.0[i] & other.0[i]))
    }

    pub fn count(&self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }

    pub fn points(&self, len: usize) -> impl Iterator<Item = usize> + '_ {
        (0..len).filter(|&i| self.has(i))
    }
}

/// `Z_n^dim` with points encoded in base `n`.
#[derive(Clone, Copy, Debug)]
pub struct Space {
    pub n: u64,
    pub dim: u32,
}

impl Space {
    pub fn len(&self) -> usize {
        self.n.pow(self.dim) as usize
    }

    pub fn coords(&self, p: usize) -> Vec<u64> {
        let mut p = p as u64;
        let mut out = vec![0; self.dim as usize];
        for c in out.iter_mut().rev() {
            *c = p % self.n;
            p /= self.n;
        }
        out
    }

    pub fn encode(&self, coords: &[u64]) -> usize {
        coords.iter().fold(0, |acc, &c| acc * self.n + c % self.n) as usize
    }

    pub fn add(&self, p: usize, q: usize) -> usize {
        let n = self.n as usize;
        let (mut p, mut q, mut out, mut place) = (p, q, 0, 1);
        for _ in 0..self.dim {
            out += ((p % n + q % n) % n) * place;
            (p, q, place) = (p / n, q / n, place * n);
        }
        out
    }

    pub fn scale(&self, r: u64, p: usize) -> usize {
        let n = self.n as usize;
        let r = r as usize % n;
        let (mut p, mut out, mut place) = (p, 0, 1);
        for _ in 0..self.dim {
            out += (r * (p % n) % n) * place;
            (p, place) = (p / n, place * n);
        }
        out
    }

    /// The subgroup generated by `gens`.
    pub fn span(&self, gens: impl IntoIterator<Item = usize>) -> Bits {
        let gens: Vec<usize> = gens.into_iter().collect();
        let mut set = Bits::default();
        set.insert(0);
        let mut frontier = vec![0];
        while let Some(p) = frontier.pop() {
            for &g in &gens {
                let q = self.add(p, g);
                if !set.has(q) {
                    set.insert(q);
                    frontier.push(q);
                }
            }
        }
        set
    }

    pub fn everything(&self) -> Bits {
        let mut b = Bits::default();
        (0..self.len()).for_each(|i| b.insert(i));
        b
    }

    /// All subgroups, found as spans of at most two points.
    pub fn subgroups(&self) -> Vec<Bits> {
        let len = self.len();
        let mut seen: Vec<Bits> = Vec::new();
        let mut index: HashMap<Bits, ()> = HashMap::new();
        for p in 0..len {
            let qs: Vec<usize> = if self.dim == 1 {
                vec![0]
            } else {
                (0..len).collect()
            };
            for q in qs {
                let s = self.span([p, q]);
                if index.insert(s, ()).is_none() {
                    seen.push(s);
                }
            }
        }
        seen.sort_by_key(|s| (s.count(), *s));
        seen
    }
}

/// `Z_n^dim` over the ideals of `Z_n`, by sets.
pub struct SetModule {
    pub ring: Space,
    pub space: Space,
    pub ideals: Vec<Bits>,
    pub subs: Vec<Bits>,
    ideal_index: HashMap<Bits, usize>,
    sub_index: HashMap<Bits, usize>,
    /// `mul[a][b]`, `act[a][x]` and `colon[n][k]` in oracle ids.
    pub mul: Vec<Vec<usize>>,
    pub act: Vec<Vec<usize>>,
    pub colon: Vec<Vec<usize>>,
    pub prime: Vec<bool>,
}

impl SetModule {
    pub fn new(n: u64, dim: u32) -> Self {
        let ring = Space { n, dim: 1 };
        let space = Space { n, dim };
        let ideals = ring.subgroups();
        let subs = space.subgroups();
        let ideal_index: HashMap<Bits, usize> =
            ideals.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let sub_index: HashMap<Bits, usize> =
            subs.iter().enumerate().map(|(i, s)| (*s, i)).collect();

        let mul = ideals
            .iter()
            .map(|a| {
                ideals
                    .iter()
                    .map(|b| {
                        let prods = a
                            .points(ring.len())
                            .flat_map(|r| b.points(ring.len()).map(move |s| (r * s) % n as usize));
                        ideal_index[&ring.span(prods)]
                    })
                    .collect()
            })
            .collect();
        let act = ideals
            .iter()
            .map(|a| {
                subs.iter()
                    .map(|x| {
                        let prods: Vec<usize> = a
                            .points(ring.len())
                            .flat_map(|r| x.points(space.len()).map(move |p| (r, p)))
                            .map(|(r, p)| space.scale(r as u64, p))
                            .collect();
                        sub_index[&space.span(prods)]
                    })
                    .collect()
            })
            .collect();
        // (N : K) = {r : rK ⊆ N}.
        let colon = subs
            .iter()
            .map(|nset| {
                subs.iter()
                    .map(|k| {
                        let mut ideal = Bits::default();
                        for r in 0..n {
                            if k.points(space.len()).all(|p| nset.has(space.scale(r, p))) {
                                ideal.insert(r as usize);
                            }
                        }
                        ideal_index[&ideal]
                    })
                    .collect()
            })
            .collect();
        let mut m = SetModule {
            ring,
            space,
            ideals,
            subs,
            ideal_index,
            sub_index,
            mul,
            act,
            colon,
            prime: Vec::new(),
        };
        m.prime = (0..m.subs.len()).map(|x| m.is_prime(x)).collect();
        m
    }

    pub fn top(&self) -> usize {
        self.subs.len() - 1
    }

    pub fn ideal_top(&self) -> usize {
        self.ideals.len() - 1
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.subs[x].subset(&self.subs[y])
    }

    pub fn ileq(&self, a: usize, b: usize) -> bool {
        self.ideals[a].subset(&self.ideals[b])
    }

    pub fn colon_top(&self, x: usize) -> usize {
        self.colon[x][self.top()]
    }

    /// `{r : rᵏ ∈ a for some k}`.
    pub fn sqrt(&self, a: usize) -> usize {
        let n = self.ring.n;
        let mut out = Bits::default();
        for r in 0..n {
            let mut p = r % n;
            for _ in 0..=n {
                if self.ideals[a].has(p as usize) {
                    out.insert(r as usize);
                    break;
                }
                p = (p * r) % n;
            }
        }
        self.ideal_index[&out]
    }

    /// Ring-theoretic primality: proper and `rs ∈ p ⇒ r ∈ p or s ∈ p`.
    pub fn ideal_prime(&self, p: usize) -> bool {
        let n = self.ring.n as usize;
        let set = &self.ideals[p];
        p != self.ideal_top()
            && (0..n).all(|r| (0..n).all(|s| !set.has(r * s % n) || set.has(r) || set.has(s)))
    }

    /// `rs ∈ q, r ∉ q ⇒ s ∈ √q`.
    pub fn ideal_primary(&self, q: usize) -> bool {
        let n = self.ring.n as usize;
        let set = &self.ideals[q];
        let root = &self.ideals[self.sqrt(q)];
        q != self.ideal_top()
            && (0..n).all(|r| (0..n).all(|s| !set.has(r * s % n) || set.has(r) || root.has(s)))
    }

    fn is_prime(&self, x: usize) -> bool {
        let top = self.top();
        x != top
            && (0..self.ideals.len()).all(|a| {
                (0..self.subs.len()).all(|k| {
                    !self.leq(self.act[a][k], x) || self.leq(k, x) || self.leq(self.act[a][top], x)
                })
            })
    }

    /// Intersection of the primes above `x`, or the whole module.
    pub fn rad(&self, x: usize) -> usize {
        let mut acc = self.subs[self.top()];
        for p in 0..self.subs.len() {
            if self.prime[p] && self.leq(x, p) {
                acc = acc.meet(&self.subs[p]);
            }
        }
        self.sub_index[&acc]
    }

    pub fn flags(&self, x: usize) -> OracleFlags {
        let (ni, nm) = (self.ideals.len(), self.subs.len());
        let top = self.top();
        let colon = self.colon_top(x);
        let rad = self.rad(x);
        let root = self.sqrt(colon);
        let pairs = || (0..ni).flat_map(move |a| (0..nm).map(move |k| (a, k)));
        let triples = || {
            (0..ni).flat_map(move |a| (0..ni).flat_map(move |b| (0..nm).map(move |k| (a, b, k))))
        };
        let le = |p: usize, q: usize| self.leq(p, q);
        let abk = |a: usize, b: usize, k: usize| self.act[a][self.act[b][k]];
        OracleFlags {
            prime: self.prime[x],
            primary: pairs().all(|(a, k)| !le(self.act[a][k], x) || le(k, x) || self.ileq(a, root)),
            maximal: (0..nm).all(|y| !(le(x, y) && x != y && y != top)),
            semiprime: (0..ni).all(|a| {
                (0..ni).all(|b| {
                    !le(self.act[self.mul[a][b]][top], x)
                        || le(self.act[a][top], x)
                        || le(self.act[b][top], x)
                })
            }),
            radical_element: colon == root,
            classical_prime: triples().all(|(a, b, k)| {
                !le(abk(a, b, k), x) || le(self.act[a][k], x) || le(self.act[b][k], x)
            }),
            two_absorbing: triples().all(|(a, b, k)| {
                !le(abk(a, b, k), x)
                    || self.ileq(self.mul[a][b], colon)
                    || le(self.act[a][k], x)
                    || le(self.act[b][k], x)
            }),
            pseudo_primary: pairs()
                .all(|(a, k)| !le(self.act[a][k], x) || self.ileq(a, colon) || le(k, rad)),
            pseudo_classical_primary: triples().all(|(a, b, k)| {
                !le(abk(a, b, k), x) || le(self.act[a][k], x) || le(self.act[b][k], rad)
            }),
        }
    }

    /// Oracle ideal for a generator label `(d)`.
    pub fn ideal_by_label(&self, label: &str) -> usize {
        let d: u64 = label
            .trim_start_matches('(')
            .trim_end_matches(')')
            .parse()
            .expect("ideal label");
        let d = if d == 0 { self.ring.n } else { d };
        self.ideal_index[&self.ring.span([d as usize % self.ring.n as usize])]
    }

    /// Oracle submodule for a generator label.
    pub fn sub_by_label(&self, label: &str) -> usize {
        if self.space.dim == 1 {
            let d = self.ideal_by_label(label);
            return self.sub_index[&self.ideals[d]];
        }
        let sp = self.space;
        let n = sp.n;
        let set = if let Some(inner) = label.strip_prefix('<').and_then(|s| s.strip_suffix('>')) {
            let nums: Vec<u64> = inner
                .split(|c: char| !c.is_ascii_digit())
                .filter(|s| !s.is_empty())
                .map(|s| s.parse().unwrap())
                .collect();
            let gens: Vec<usize> = nums.chunks(2).map(|c| sp.encode(&[c[0], c[1]])).collect();
            sp.span(gens)
        } else {
            let (x, y) = label.split_once('x').expect("rectangular label");
            let comp = |s: &str| match s {
                "Z" => 1,
                "0" => n,
                s => s.trim_end_matches('Z').parse().unwrap(),
            };
            let (a, d) = (comp(x), comp(y));
            sp.span([sp.encode(&[a, 0]), sp.encode(&[0, d])])
        };
        self.sub_index[&set]
    }

    /// Oracle ids of the generator's module elements, by label.
    pub fn match_module(&self, m: &LatticeModule) -> Vec<usize> {
        m.elements()
            .map(|x| self.sub_by_label(&m.label(x)))
            .collect()
    }

    /// Oracle ids of the generator's lattice elements, by label.
    pub fn match_lattice(&self, m: &LatticeModule) -> Vec<usize> {
        let l = m.lattice();
        l.elements()
            .map(|a| self.ideal_by_label(&l.label(a)))
            .collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleFlags {
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

impl OracleFlags {
    pub fn from_flags(f: &mlat::Flags) -> Self {
        OracleFlags {
            prime: f.prime,
            primary: f.primary,
            maximal: f.maximal,
            semiprime: f.semiprime,
            radical_element: f.radical_element,
            classical_prime: f.classical_prime,
            two_absorbing: f.two_absorbing,
            pseudo_primary: f.pseudo_primary,
            pseudo_classical_primary: f.pseudo_classical_primary,
        }
    }
}

/// Element of `m` with the given label.
pub fn elem(m: &LatticeModule, label: &str) -> MElem {
    m.find_label(label)
        .unwrap_or_else(|| panic!("no element `{label}`"))
}
