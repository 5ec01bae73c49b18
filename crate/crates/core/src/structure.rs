//! Carriers, hyperoperation tables, and the two structure types.
//!
//! A table stores one entry per sorted tuple of element indices, so
//! commutativity holds by construction. The external action of a ring on a
//! module is keyed by a sorted scalar tuple paired with one module element.

use crate::sets::{self, SmallSet};
use std::sync::Arc;
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum StructureError {
    #[error("carrier size {0} exceeds the supported maximum of {max}", max = sets::MAX_CARRIER)]
    CarrierTooLarge(usize),
    #[error("ring must have at least 2 elements")]
    SingleElementRing,
    #[error("arity must be at least 2, got {0}")]
    BadArity(usize),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("zero and one must be distinct elements")]
    ZeroEqualsOne,
    #[error("table for `{op}` has {got} entries, expected {expected}")]
    WrongTableSize {
        op: &'static str,
        got: usize,
        expected: usize,
    },
    #[error("entry {tuple:?} of `{op}` is empty")]
    EmptyEntry { op: &'static str, tuple: Vec<usize> },
    #[error("entry {tuple:?} of `{op}` leaves the carrier")]
    EntryOutOfCarrier { op: &'static str, tuple: Vec<usize> },
    #[error("g' must be single-valued but {tuple:?} maps to a {len}-element set")]
    NotSingleValued { tuple: Vec<usize>, len: usize },
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum EvalError {
    #[error("expected {expected} arguments, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("argument {0} is empty")]
    EmptyArgument(usize),
    #[error("argument {0} contains elements outside the carrier")]
    OutOfCarrier(usize),
}

/// Total map from sorted `arity`-tuples of element indices to nonempty
/// element sets. Holds f, f' and (with singleton results) g'.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HyperOpTable {
    arity: usize,
    carrier_size: usize,
    entries: Vec<SmallSet>,
}

impl HyperOpTable {
    pub fn new(
        op: &'static str,
        arity: usize,
        carrier_size: usize,
        entries: Vec<SmallSet>,
    ) -> Result<Self, StructureError> {
        if carrier_size > sets::MAX_CARRIER {
            return Err(StructureError::CarrierTooLarge(carrier_size));
        }
        let expected = sets::multiset_count(carrier_size, arity);
        if entries.len() != expected {
            return Err(StructureError::WrongTableSize {
                op,
                got: entries.len(),
                expected,
            });
        }
        let carrier = SmallSet::full(carrier_size);
        let mut bad_empty = None;
        let mut bad_range = None;
        let mut rank = 0usize;
        sets::for_each_multiset(carrier_size, arity, |t| {
            let e = entries[rank];
            if e.is_empty() && bad_empty.is_none() {
                bad_empty = Some(t.to_vec());
            }
            if !e.is_subset(carrier) && bad_range.is_none() {
                bad_range = Some(t.to_vec());
            }
            rank += 1;
        });
        if let Some(tuple) = bad_empty {
            return Err(StructureError::EmptyEntry { op, tuple });
        }
        if let Some(tuple) = bad_range {
            return Err(StructureError::EntryOutOfCarrier { op, tuple });
        }
        Ok(HyperOpTable {
            arity,
            carrier_size,
            entries,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn carrier_size(&self) -> usize {
        self.carrier_size
    }

    pub fn entries(&self) -> &[SmallSet] {
        &self.entries
    }

    /// Lookup for an already sorted tuple.
    pub fn get_sorted(&self, sorted: &[usize]) -> SmallSet {
        debug_assert!(sorted.windows(2).all(|w| w[0] <= w[1]));
        self.entries[sets::multiset_rank(sorted)]
    }

    /// Lookup for a tuple in any order.
    pub fn get(&self, tuple: &[usize]) -> SmallSet {
        let mut t = tuple.to_vec();
        t.sort_unstable();
        self.get_sorted(&t)
    }

    /// Subset extension: the union of table entries over the cartesian
    /// product of the argument sets.
    pub fn eval(&self, args: &[SmallSet]) -> Result<SmallSet, EvalError> {
        if args.len() != self.arity {
            return Err(EvalError::ArityMismatch {
                expected: self.arity,
                got: args.len(),
            });
        }
        let carrier = SmallSet::full(self.carrier_size);
        for (i, a) in args.iter().enumerate() {
            if a.is_empty() {
                return Err(EvalError::EmptyArgument(i));
            }
            if !a.is_subset(carrier) {
                return Err(EvalError::OutOfCarrier(i));
            }
        }
        let mut acc = SmallSet::empty();
        let mut buf = vec![0usize; self.arity];
        sets::for_each_product(args, |t| {
            buf.copy_from_slice(t);
            buf.sort_unstable();
            acc = acc.union(self.get_sorted(&buf));
        });
        Ok(acc)
    }

    /// True when every entry is a singleton (an operation, not a
    /// hyperoperation).
    pub fn is_single_valued(&self) -> bool {
        self.entries.iter().all(|e| e.len() == 1)
    }
}

/// External action table: sorted (n-1)-tuples of ring scalars paired with one
/// module element, mapping to nonempty subsets of the module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActionTable {
    scalar_arity: usize,
    ring_size: usize,
    module_size: usize,
    entries: Vec<SmallSet>,
}

impl ActionTable {
    pub fn new(
        scalar_arity: usize,
        ring_size: usize,
        module_size: usize,
        entries: Vec<SmallSet>,
    ) -> Result<Self, StructureError> {
        let expected = sets::multiset_count(ring_size, scalar_arity) * module_size;
        if entries.len() != expected {
            return Err(StructureError::WrongTableSize {
                op: "g",
                got: entries.len(),
                expected,
            });
        }
        let carrier = SmallSet::full(module_size);
        for (i, e) in entries.iter().enumerate() {
            if e.is_empty() {
                return Err(StructureError::EmptyEntry {
                    op: "g",
                    tuple: vec![i],
                });
            }
            if !e.is_subset(carrier) {
                return Err(StructureError::EntryOutOfCarrier {
                    op: "g",
                    tuple: vec![i],
                });
            }
        }
        Ok(ActionTable {
            scalar_arity,
            ring_size,
            module_size,
            entries,
        })
    }

    pub fn scalar_arity(&self) -> usize {
        self.scalar_arity
    }

    pub fn entries(&self) -> &[SmallSet] {
        &self.entries
    }

    pub fn get_sorted(&self, scalars: &[usize], a: usize) -> SmallSet {
        debug_assert!(scalars.windows(2).all(|w| w[0] <= w[1]));
        self.entries[sets::multiset_rank(scalars) * self.module_size + a]
    }

    pub fn get(&self, scalars: &[usize], a: usize) -> SmallSet {
        let mut t = scalars.to_vec();
        t.sort_unstable();
        self.get_sorted(&t, a)
    }

    /// Subset extension over scalar sets and a module element set.
    pub fn eval(&self, scalar_sets: &[SmallSet], elems: SmallSet) -> Result<SmallSet, EvalError> {
        if scalar_sets.len() != self.scalar_arity {
            return Err(EvalError::ArityMismatch {
                expected: self.scalar_arity,
                got: scalar_sets.len(),
            });
        }
        let ring = SmallSet::full(self.ring_size);
        for (i, s) in scalar_sets.iter().enumerate() {
            if s.is_empty() {
                return Err(EvalError::EmptyArgument(i));
            }
            if !s.is_subset(ring) {
                return Err(EvalError::OutOfCarrier(i));
            }
        }
        if elems.is_empty() {
            return Err(EvalError::EmptyArgument(scalar_sets.len()));
        }
        if !elems.is_subset(SmallSet::full(self.module_size)) {
            return Err(EvalError::OutOfCarrier(scalar_sets.len()));
        }
        let mut acc = SmallSet::empty();
        let mut buf = vec![0usize; self.scalar_arity];
        sets::for_each_product(scalar_sets, |t| {
            buf.copy_from_slice(t);
            buf.sort_unstable();
            let rank = sets::multiset_rank(&buf);
            for a in elems.iter() {
                acc = acc.union(self.entries[rank * self.module_size + a]);
            }
        });
        Ok(acc)
    }
}

/// A finite commutative Krasner (m,n)-hyperring presented by tables.
#[derive(Debug, Clone)]
pub struct Hyperring {
    name: String,
    m: usize,
    n: usize,
    labels: Vec<String>,
    f: HyperOpTable,
    g: HyperOpTable,
    zero: usize,
    one: usize,
}

impl Hyperring {
    pub fn new(
        name: String,
        m: usize,
        n: usize,
        labels: Vec<String>,
        f: HyperOpTable,
        g: HyperOpTable,
        zero: usize,
        one: usize,
    ) -> Result<Self, StructureError> {
        if m < 2 {
            return Err(StructureError::BadArity(m));
        }
        if n < 2 {
            return Err(StructureError::BadArity(n));
        }
        if labels.len() < 2 {
            return Err(StructureError::SingleElementRing);
        }
        if labels.len() > sets::MAX_CARRIER {
            return Err(StructureError::CarrierTooLarge(labels.len()));
        }
        check_labels(&labels)?;
        if zero == one {
            return Err(StructureError::ZeroEqualsOne);
        }
        debug_assert_eq!(f.arity(), m);
        debug_assert_eq!(g.arity(), n);
        debug_assert_eq!(f.carrier_size(), labels.len());
        debug_assert_eq!(g.carrier_size(), labels.len());
        if let Some(rank) = g.entries().iter().position(|e| e.len() != 1) {
            let mut tuple = Vec::new();
            let mut k = 0usize;
            sets::for_each_multiset(labels.len(), n, |t| {
                if k == rank {
                    tuple = t.to_vec();
                }
                k += 1;
            });
            return Err(StructureError::NotSingleValued {
                len: g.entries()[rank].len(),
                tuple,
            });
        }
        Ok(Hyperring {
            name,
            m,
            n,
            labels,
            f,
            g,
            zero,
            one,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full_set(&self) -> SmallSet {
        SmallSet::full(self.size())
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    pub fn f(&self) -> &HyperOpTable {
        &self.f
    }

    pub fn g(&self) -> &HyperOpTable {
        &self.g
    }

    /// `g'(r, x, 1^(n-2))`, the unit-padded binary product.
    pub fn scalar_mul(&self, r: usize, x: usize) -> usize {
        let mut t = vec![self.one; self.n];
        t[0] = r;
        t[1] = x;
        t.sort_unstable();
        self.g
            .get_sorted(&t)
            .min_element()
            .expect("g' entries are nonempty singletons")
    }

    /// `g'` of a full n-tuple, as the single element it maps to.
    pub fn product(&self, tuple: &[usize]) -> usize {
        self.g
            .get(tuple)
            .min_element()
            .expect("g' entries are nonempty singletons")
    }

    /// For every element, the set of its f'-inverses: y with
    /// `0 in f'(x, y, 0^(m-2))`.
    pub fn inverse_sets(&self) -> Vec<SmallSet> {
        inverse_sets(&self.f, self.zero)
    }

    /// Structural equality ignoring the name: same arities, labels, tables
    /// and distinguished elements.
    pub fn same_tables(&self, other: &Hyperring) -> bool {
        self.m == other.m
            && self.n == other.n
            && self.labels == other.labels
            && self.zero == other.zero
            && self.one == other.one
            && self.f == other.f
            && self.g == other.g
    }
}

/// A finite (m,n)-hypermodule over a hyperring, presented by tables.
#[derive(Debug, Clone)]
pub struct Hypermodule {
    name: String,
    ring: Arc<Hyperring>,
    labels: Vec<String>,
    f: HyperOpTable,
    g: ActionTable,
    zero: usize,
    unital: bool,
}

impl Hypermodule {
    pub fn new(
        name: String,
        ring: Arc<Hyperring>,
        labels: Vec<String>,
        f: HyperOpTable,
        g: ActionTable,
        zero: usize,
        unital: bool,
    ) -> Result<Self, StructureError> {
        if labels.is_empty() || labels.len() > sets::MAX_CARRIER {
            return Err(StructureError::CarrierTooLarge(labels.len()));
        }
        check_labels(&labels)?;
        debug_assert_eq!(f.arity(), ring.m());
        debug_assert_eq!(f.carrier_size(), labels.len());
        debug_assert_eq!(g.scalar_arity(), ring.n() - 1);
        Ok(Hypermodule {
            name,
            ring,
            labels,
            f,
            g,
            zero,
            unital,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ring(&self) -> &Arc<Hyperring> {
        &self.ring
    }

    pub fn m(&self) -> usize {
        self.ring.m()
    }

    pub fn n(&self) -> usize {
        self.ring.n()
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn element_by_label(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full_set(&self) -> SmallSet {
        SmallSet::full(self.size())
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn unital(&self) -> bool {
        self.unital
    }

    pub fn f(&self) -> &HyperOpTable {
        &self.f
    }

    pub fn g(&self) -> &ActionTable {
        &self.g
    }

    /// `g(r, 1^(n-2), a)`: the single-scalar, unit-padded action.
    pub fn act_unit(&self, r: usize, a: usize) -> SmallSet {
        let mut scalars = vec![self.ring.one(); self.ring.n() - 1];
        scalars[0] = r;
        scalars.sort_unstable();
        self.g.get_sorted(&scalars, a)
    }

    /// `g(r, 1^(n-2), X)` for a set of module elements.
    pub fn act_unit_set(&self, r: usize, xs: SmallSet) -> SmallSet {
        let mut acc = SmallSet::empty();
        for a in xs.iter() {
            acc = acc.union(self.act_unit(r, a));
        }
        acc
    }

    /// The set of f-inverses of each element.
    pub fn inverse_sets(&self) -> Vec<SmallSet> {
        inverse_sets(&self.f, self.zero)
    }
}

fn check_labels(labels: &[String]) -> Result<(), StructureError> {
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(StructureError::DuplicateLabel(l.clone()));
        }
    }
    Ok(())
}

pub(crate) fn inverse_sets(f: &HyperOpTable, zero: usize) -> Vec<SmallSet> {
    let size = f.carrier_size();
    let mut out = vec![SmallSet::empty(); size];
    let mut t = vec![zero; f.arity()];
    for (x, slot) in out.iter_mut().enumerate() {
        for y in 0..size {
            t[0] = x;
            t[1] = y;
            for z in t.iter_mut().skip(2) {
                *z = zero;
            }
            t.sort_unstable();
            if f.get_sorted(&t).contains(zero) {
                *slot = slot.insert(y);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::for_each_multiset;

    fn z3_table(arity: usize) -> HyperOpTable {
        // f(t) = {sum of t mod 3}
        let mut entries = Vec::new();
        for_each_multiset(3, arity, |t| {
            entries.push(SmallSet::singleton(t.iter().sum::<usize>() % 3));
        });
        HyperOpTable::new("f", arity, 3, entries).unwrap()
    }

    #[test]
    fn singleton_eval_equals_lookup() {
        let f = z3_table(3);
        for_each_multiset(3, 3, |t| {
            let args: Vec<SmallSet> = t.iter().map(|&i| SmallSet::singleton(i)).collect();
            assert_eq!(f.eval(&args).unwrap(), f.get_sorted(t));
        });
    }

    #[test]
    fn eval_unions_over_products() {
        let f = z3_table(3);
        let args = [
            SmallSet::from_iter([0, 1]),
            SmallSet::singleton(1),
            SmallSet::singleton(2),
        ];
        // {0+1+2, 1+1+2} mod 3 = {0, 1}
        assert_eq!(f.eval(&args).unwrap(), SmallSet::from_iter([0, 1]));
    }

    #[test]
    fn eval_rejects_bad_arguments() {
        let f = z3_table(2);
        assert_eq!(
            f.eval(&[SmallSet::singleton(0)]),
            Err(EvalError::ArityMismatch {
                expected: 2,
                got: 1
            })
        );
        assert_eq!(
            f.eval(&[SmallSet::empty(), SmallSet::singleton(0)]),
            Err(EvalError::EmptyArgument(0))
        );
        assert_eq!(
            f.eval(&[SmallSet::singleton(0), SmallSet::singleton(5)]),
            Err(EvalError::OutOfCarrier(1))
        );
    }

    #[test]
    fn empty_entry_rejected() {
        let mut entries = Vec::new();
        for_each_multiset(2, 2, |_| entries.push(SmallSet::singleton(0)));
        entries[1] = SmallSet::empty();
        let err = HyperOpTable::new("f", 2, 2, entries).unwrap_err();
        assert!(matches!(err, StructureError::EmptyEntry { .. }));
    }
}
