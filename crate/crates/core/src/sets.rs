//! Bitmask element sets and sorted-tuple (multiset) indexing.
//!
//! Carriers are small (the corpus caps at 16, the representation allows 64),
//! so subsets are single `u64` masks and a sorted tuple of element indices is
//! addressed by its combinatorial rank.

use serde::Serialize;
use std::fmt;

/// A subset of a carrier of at most 64 elements.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize)]
pub struct SmallSet(u64);

/// Maximum carrier size representable by [`SmallSet`].
pub const MAX_CARRIER: usize = 64;

impl SmallSet {
    pub const EMPTY: SmallSet = SmallSet(0);

    pub fn empty() -> Self {
        SmallSet(0)
    }

    pub fn singleton(i: usize) -> Self {
        debug_assert!(i < MAX_CARRIER);
        SmallSet(1 << i)
    }

    /// The full carrier `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_CARRIER);
        if n == MAX_CARRIER {
            SmallSet(u64::MAX)
        } else {
            SmallSet((1u64 << n) - 1)
        }
    }

    pub fn from_bits(bits: u64) -> Self {
        SmallSet(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_CARRIER && self.0 >> i & 1 == 1
    }

    #[must_use]
    pub fn insert(self, i: usize) -> Self {
        debug_assert!(i < MAX_CARRIER);
        SmallSet(self.0 | 1 << i)
    }

    #[must_use]
    pub fn remove(self, i: usize) -> Self {
        SmallSet(self.0 & !(1 << i))
    }

    #[must_use]
    pub fn union(self, other: Self) -> Self {
        SmallSet(self.0 | other.0)
    }

    #[must_use]
    pub fn inter(self, other: Self) -> Self {
        SmallSet(self.0 & other.0)
    }

    #[must_use]
    pub fn diff(self, other: Self) -> Self {
        SmallSet(self.0 & !other.0)
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersects(self, other: Self) -> bool {
        self.0 & other.0 != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn min_element(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn iter(self) -> SetIter {
        SetIter(self.0)
    }

    /// Canonical order on subsets: smaller size first, then the sorted member
    /// list lexicographically. Enumeration output is sorted with this key.
    pub fn canonical_key(self) -> (usize, Vec<usize>) {
        (self.len(), self.iter().collect())
    }
}

impl FromIterator<usize> for SmallSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = SmallSet::empty();
        for i in iter {
            s = s.insert(i);
        }
        s
    }
}

pub struct SetIter(u64);

impl Iterator for SetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let i = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(i)
        }
    }
}

impl fmt::Debug for SmallSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: usize = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Number of sorted `arity`-tuples (multisets) over a carrier of `size`.
pub fn multiset_count(size: usize, arity: usize) -> usize {
    binomial(size + arity - 1, arity)
}

/// Colex rank of a sorted tuple among all sorted tuples of its length.
pub fn multiset_rank(sorted: &[usize]) -> usize {
    let mut rank = 0;
    for (i, &c) in sorted.iter().enumerate() {
        rank += binomial(c + i, i + 1);
    }
    rank
}

/// Visit every sorted `arity`-tuple over `{0, .., size-1}` in rank
/// (colex) order, so the k-th visited tuple has `multiset_rank` k.
pub fn for_each_multiset(size: usize, arity: usize, mut visit: impl FnMut(&[usize])) {
    if size == 0 {
        return;
    }
    let mut t = vec![0usize; arity];
    'outer: loop {
        visit(&t);
        for i in 0..arity {
            let limit = if i + 1 < arity { t[i + 1] } else { size - 1 };
            if t[i] < limit {
                t[i] += 1;
                for slot in t.iter_mut().take(i) {
                    *slot = 0;
                }
                continue 'outer;
            }
        }
        return;
    }
}

/// Visit every sorted `arity`-tuple drawn from the members of `set`.
pub fn for_each_multiset_in(set: SmallSet, arity: usize, mut visit: impl FnMut(&[usize])) {
    let members: Vec<usize> = set.iter().collect();
    if members.is_empty() {
        return;
    }
    for_each_multiset(members.len(), arity, |idx| {
        let t: Vec<usize> = idx.iter().map(|&i| members[i]).collect();
        visit(&t);
    });
}

/// Visit one representative tuple per assignment in the cartesian product of
/// `sets` (an odometer over the members of each set).
pub fn for_each_product(sets: &[SmallSet], mut visit: impl FnMut(&[usize])) {
    let members: Vec<Vec<usize>> = sets.iter().map(|s| s.iter().collect()).collect();
    if members.iter().any(|m| m.is_empty()) {
        return;
    }
    let mut pos = vec![0usize; sets.len()];
    let mut cur: Vec<usize> = members.iter().map(|m| m[0]).collect();
    loop {
        visit(&cur);
        let mut i = sets.len();
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if pos[i] + 1 < members[i].len() {
                pos[i] += 1;
                cur[i] = members[i][pos[i]];
                break;
            }
            pos[i] = 0;
            cur[i] = members[i][0];
        }
    }
}

/// All closed sets of a closure operator over `{0, .., size-1}`, via
/// Ganter's next-closure algorithm (lectic order). `cl` must be extensive,
/// monotone and idempotent.
pub fn closed_sets(size: usize, cl: impl Fn(SmallSet) -> SmallSet) -> Vec<SmallSet> {
    let full = SmallSet::full(size);
    let mut out = Vec::new();
    let mut a = cl(SmallSet::empty());
    out.push(a);
    while a != full {
        let mut advanced = false;
        for i in (0..size).rev() {
            if a.contains(i) {
                continue;
            }
            let below = SmallSet::from_bits(a.bits() & ((1u64 << i) - 1));
            let b = cl(below.insert(i));
            // lectic successor test: nothing new below position i
            if b.bits() & ((1u64 << i) - 1) & !a.bits() == 0 {
                a = b;
                out.push(a);
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    out
}
