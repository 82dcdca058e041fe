//! Canonical instances built from the rings `Z_n`.
//!
//! Ideal lattices list the divisors of `n` in descending order, so id 0 is
//! the zero ideal and the last id is the whole ring. Submodule lattices of
//! `Z_n ⊕ Z_n` list subgroups by size, then by their Hermite normal form.

use std::collections::HashMap;
use std::sync::Arc;

use crate::lattice::{validate_lattice, LatticeTables, MultiplicativeLattice};
use crate::module::{validate_module, LatticeModule, ModuleTables, ModuleValidation};
use crate::order::OrderTables;
use crate::violation::ValidationMode;

/// Largest modulus accepted by [`gen_zn_square_module`] unless overridden.
pub const DEFAULT_SQUARE_CAP: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GenError {
    #[error("modulus must be at least 1")]
    ZeroModulus,
    #[error("modulus {n} exceeds the zn-square cap {cap}")]
    OverCap { n: u64, cap: u64 },
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Divisors of `n` in id order of [`gen_zn_ideal_lattice`]: id `i` is the
/// ideal generated by the `i`-th entry.
pub fn zn_ideal_generators(n: u64) -> Vec<u64> {
    let mut divisors: Vec<u64> = (1..=n).filter(|&d| n.is_multiple_of(d)).collect();
    divisors.reverse();
    divisors
}

/// Label of the ideal `dZ_n`, writing the zero ideal as `(0)`.
pub fn ideal_label(n: u64, d: u64) -> String {
    if d == n && n > 1 {
        "(0)".to_string()
    } else {
        format!("({d})")
    }
}

/// The lattice of ideals of `Z_n` under the ideal product.
pub fn gen_zn_ideal_lattice(n: u64) -> Result<MultiplicativeLattice, GenError> {
    if n == 0 {
        return Err(GenError::ZeroModulus);
    }
    let gens = zn_ideal_generators(n);
    let k = gens.len();
    let index: HashMap<u64, usize> = gens.iter().enumerate().map(|(i, &d)| (d, i)).collect();
    let mut leq = vec![false; k * k];
    let mut mul = vec![0; k * k];
    for (i, &d) in gens.iter().enumerate() {
        for (j, &e) in gens.iter().enumerate() {
            leq[i * k + j] = d % e == 0;
            mul[i * k + j] = index[&gcd(d * e, n)];
        }
    }
    let tables = LatticeTables {
        order: OrderTables {
            len: k,
            leq,
            ..Default::default()
        },
        mul,
        labels: gens.iter().map(|&d| Some(ideal_label(n, d))).collect(),
    };
    Ok(validate_lattice(&tables, ValidationMode::FirstViolation)
        .expect("ideal lattice of Z_n is valid"))
}

/// `L(Z_n)` acting on itself.
pub fn gen_zn_self_module(n: u64) -> Result<LatticeModule, GenError> {
    Ok(LatticeModule::self_module(Arc::new(gen_zn_ideal_lattice(
        n,
    )?)))
}

/// A subgroup of `Z_n ⊕ Z_n` in Hermite normal form: generated by the rows
/// `(a, b)` and `(0, d)` with `a | n`, `d | n`, `0 ≤ b < d` and
/// `d | (n/a)·b`. Each subgroup has exactly one such form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hnf {
    pub a: u64,
    pub b: u64,
    pub d: u64,
}

impl Hnf {
    pub fn size(self, n: u64) -> u64 {
        (n / self.a) * (n / self.d)
    }

    /// Membership bitset over `Z_n²`, point `(x, y)` at bit `x·n + y`.
    pub fn points(self, n: u64) -> Vec<bool> {
        let mut set = vec![false; (n * n) as usize];
        for i in 0..n / self.a {
            for j in 0..n / self.d {
                let x = (i * self.a) % n;
                let y = (i * self.b + j * self.d) % n;
                set[(x * n + y) as usize] = true;
            }
        }
        set
    }

    fn label(self, n: u64) -> String {
        let component = |c: u64| match c {
            1 => "Z".to_string(),
            c if c == n => "0".to_string(),
            c => format!("{c}Z"),
        };
        if self.b == 0 {
            return format!("{}x{}", component(self.a), component(self.d));
        }
        // (0, d) lies in the span of (a, b) iff the multiple of (a, b) that
        // first returns to the y-axis reaches it.
        let k = n / self.a;
        let cyclic = gcd((k * self.b) % n, n) == self.d;
        if cyclic {
            format!("<({},{})>", self.a, self.b)
        } else {
            format!("<({},{}),(0,{})>", self.a, self.b, self.d)
        }
    }
}

/// Every subgroup of `Z_n²`, in the id order of [`gen_zn_square_module`].
pub fn zn_square_subgroups(n: u64) -> Vec<Hnf> {
    let divisors: Vec<u64> = (1..=n).filter(|&d| n.is_multiple_of(d)).collect();
    let mut out = Vec::new();
    for &a in &divisors {
        for &d in &divisors {
            for b in 0..d {
                if ((n / a) * b).is_multiple_of(d) {
                    out.push(Hnf { a, b, d });
                }
            }
        }
    }
    out.sort_by_key(|h| (h.size(n), h.a, h.b, h.d));
    out
}

/// Submodules of `Z_n ⊕ Z_n` over `L(Z_n)`, with `n` capped at
/// [`DEFAULT_SQUARE_CAP`].
pub fn gen_zn_square_module(n: u64) -> Result<LatticeModule, GenError> {
    gen_zn_square_module_with_cap(n, DEFAULT_SQUARE_CAP)
}

pub fn gen_zn_square_module_with_cap(n: u64, cap: u64) -> Result<LatticeModule, GenError> {
    if n == 0 {
        return Err(GenError::ZeroModulus);
    }
    if n > cap {
        return Err(GenError::OverCap { n, cap });
    }
    let lattice = Arc::new(gen_zn_ideal_lattice(n)?);
    let subgroups = zn_square_subgroups(n);
    let sets: Vec<Vec<bool>> = subgroups.iter().map(|h| h.points(n)).collect();
    let index: HashMap<&[bool], usize> = sets
        .iter()
        .enumerate()
        .map(|(i, s)| (s.as_slice(), i))
        .collect();
    let m = sets.len();

    let mut leq = vec![false; m * m];
    for i in 0..m {
        for j in 0..m {
            leq[i * m + j] = sets[i].iter().zip(&sets[j]).all(|(&x, &y)| !x || y);
        }
    }

    let gens = zn_ideal_generators(n);
    let mut act = vec![0; gens.len() * m];
    for (c_id, &c) in gens.iter().enumerate() {
        for (s_id, set) in sets.iter().enumerate() {
            let mut scaled = vec![false; (n * n) as usize];
            for (p, _) in set.iter().enumerate().filter(|(_, &x)| x) {
                let (x, y) = (p as u64 / n, p as u64 % n);
                scaled[(((c * x) % n) * n + (c * y) % n) as usize] = true;
            }
            act[c_id * m + s_id] = index[scaled.as_slice()];
        }
    }

    let tables = ModuleTables {
        order: OrderTables {
            len: m,
            leq,
            ..Default::default()
        },
        act,
        labels: subgroups.iter().map(|h| Some(h.label(n))).collect(),
    };
    let options = ModuleValidation {
        mode: ValidationMode::FirstViolation,
        ..Default::default()
    };
    Ok(validate_module(lattice, &tables, options).expect("submodule lattice of Z_n² is valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::LElem;

    #[test]
    fn z12_ideals() {
        let l = gen_zn_ideal_lattice(12).unwrap();
        assert_eq!(l.len(), 6);
        let names: Vec<String> = l.primes().into_iter().map(|p| l.label(p)).collect();
        assert_eq!(names, ["(3)", "(2)"]);
        assert_eq!(l.label(l.bottom()), "(0)");
        assert_eq!(l.label(l.top()), "(1)");
    }

    #[test]
    fn z8_is_a_chain() {
        let l = gen_zn_ideal_lattice(8).unwrap();
        let ids: Vec<LElem> = l.elements().collect();
        assert!(ids.windows(2).all(|w| l.lt(w[0], w[1])));
        let four = l.find_label("(4)").unwrap();
        assert_eq!(l.label(l.sqrt(four)), "(2)");
    }

    #[test]
    fn trivial_ring() {
        let l = gen_zn_ideal_lattice(1).unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l.label(l.top()), "(1)");
        assert_eq!(gen_zn_square_module(1).unwrap().len(), 1);
        assert_eq!(gen_zn_ideal_lattice(0).unwrap_err(), GenError::ZeroModulus);
    }

    #[test]
    fn square_counts_and_labels() {
        assert_eq!(gen_zn_square_module(2).unwrap().len(), 5);
        assert_eq!(zn_square_subgroups(16).len(), 83);
        assert_eq!(zn_square_subgroups(12).len(), 90);
        let m = gen_zn_square_module(8).unwrap();
        for label in ["4Zx2Z", "2Zx2Z", "ZxZ", "0x0", "<(2,1)>"] {
            assert!(m.find_label(label).is_some(), "{label}");
        }
        assert_eq!(m.label(m.top()), "ZxZ");
        assert_eq!(m.label(m.bottom()), "0x0");
    }

    #[test]
    fn square_cap() {
        assert_eq!(
            gen_zn_square_module(17).unwrap_err(),
            GenError::OverCap { n: 17, cap: 16 }
        );
        assert!(gen_zn_square_module_with_cap(3, 2).is_err());
    }

    #[test]
    fn labels_are_unique() {
        for n in 1..=16 {
            let mut labels: Vec<String> =
                zn_square_subgroups(n).iter().map(|h| h.label(n)).collect();
            labels.sort();
            let len = labels.len();
            labels.dedup();
            assert_eq!(labels.len(), len, "n={n}");
        }
    }
}
