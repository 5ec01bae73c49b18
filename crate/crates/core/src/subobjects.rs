//! Hyperideals, subhypermodules, and the colon-style scalar sets.
//!
//! Enumeration runs over the closed sets of a deterministic closure operator
//! (zero element, f-closure, scalar-action closure, forced unique inverses)
//! and filters by the full predicate; every subobject is closed under that
//! operator, so nothing is missed and whole intervals of non-closed subsets
//! are skipped. Output order is canonical: increasing size, then the sorted
//! member list lexicographically.

use crate::sets::{self, SmallSet};
use crate::structure::{Hypermodule, Hyperring};
use thiserror::Error;

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SubobjectError {
    #[error("subset is empty")]
    EmptySubset,
    #[error("subset leaves the carrier")]
    OutOfCarrier,
    #[error("element is the module zero")]
    ZeroElement,
    #[error("generated set {0:?} is not a hyperideal")]
    GeneratedNotIdeal(Vec<String>),
}

/// Role a verified subset plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubsetRole {
    Subset,
    Hyperideal,
    Subhypermodule,
}

/// A subset of one structure's carrier, tagged with the strongest verified
/// role.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SubsetHandle {
    pub parent: SmallSet,
    pub members: SmallSet,
    pub role: SubsetRole,
}

impl SubsetHandle {
    pub fn new(parent: SmallSet, members: SmallSet, role: SubsetRole) -> Self {
        debug_assert!(members.is_subset(parent));
        SubsetHandle {
            parent,
            members,
            role,
        }
    }
}

fn check_subset(full: SmallSet, s: SmallSet) -> Result<(), SubobjectError> {
    if s.is_empty() {
        return Err(SubobjectError::EmptySubset);
    }
    if !s.is_subset(full) {
        return Err(SubobjectError::OutOfCarrier);
    }
    Ok(())
}

/// (S, f) is an m-ary subhypergroup: contains zero, closed under f, and each
/// member has at least one f-inverse inside S.
fn is_subhypergroup(
    f: &crate::structure::HyperOpTable,
    inverses: &[SmallSet],
    zero: usize,
    s: SmallSet,
) -> bool {
    if !s.contains(zero) {
        return false;
    }
    let mut ok = true;
    sets::for_each_multiset_in(s, f.arity(), |t| {
        if ok && !f.get(t).is_subset(s) {
            ok = false;
        }
    });
    ok && s.iter().all(|x| inverses[x].intersects(s))
}

/// Is `i` a hyperideal of R: an m-ary subhypergroup absorbed by g' in every
/// slot.
pub fn is_hyperideal(r: &Hyperring, i: SmallSet) -> Result<bool, SubobjectError> {
    check_subset(r.full_set(), i)?;
    let inverses = r.inverse_sets();
    if !is_subhypergroup(r.f(), &inverses, r.zero(), i) {
        return Ok(false);
    }
    let mut ok = true;
    sets::for_each_multiset(r.size(), r.n() - 1, |t| {
        if !ok {
            return;
        }
        let mut args = vec![i];
        args.extend(t.iter().map(|&x| SmallSet::singleton(x)));
        if !r.g().eval(&args).expect("carrier args").is_subset(i) {
            ok = false;
        }
    });
    Ok(ok)
}

/// Is `n` a subhypermodule of M: an m-ary subhypergroup with
/// `g(R^(n-1), N)` contained in N.
pub fn is_subhypermodule(m: &Hypermodule, n: SmallSet) -> Result<bool, SubobjectError> {
    check_subset(m.full_set(), n)?;
    let inverses = m.inverse_sets();
    Ok(is_subhypergroup(m.f(), &inverses, m.zero(), n) && action_closed(m, n))
}

fn action_closed(m: &Hypermodule, n: SmallSet) -> bool {
    let scalars = vec![m.ring().full_set(); m.n() - 1];
    m.g()
        .eval(&scalars, n)
        .expect("carrier args")
        .is_subset(n)
}

fn canonical_sort(mut sets_found: Vec<SmallSet>) -> Vec<SmallSet> {
    sets_found.sort_by_key(|s| s.canonical_key());
    sets_found
}

/// All subhypermodules of M in canonical order (including `{0}` and M).
pub fn enumerate_subhypermodules(m: &Hypermodule) -> Vec<SubsetHandle> {
    let size = m.size();
    let inverses = m.inverse_sets();
    let forced: Vec<Option<usize>> = inverses
        .iter()
        .map(|inv| {
            if inv.len() == 1 {
                inv.min_element()
            } else {
                None
            }
        })
        .collect();
    let cl = |s: SmallSet| deterministic_module_closure(m, &forced, s);
    let candidates = sets::closed_sets(size, cl);
    let subs: Vec<SmallSet> = candidates
        .into_iter()
        .filter(|&s| {
            !s.is_empty()
                && is_subhypergroup(m.f(), &inverses, m.zero(), s)
                && action_closed(m, s)
        })
        .collect();
    canonical_sort(subs)
        .into_iter()
        .map(|s| SubsetHandle::new(m.full_set(), s, SubsetRole::Subhypermodule))
        .collect()
}

fn deterministic_module_closure(
    m: &Hypermodule,
    forced_inverses: &[Option<usize>],
    start: SmallSet,
) -> SmallSet {
    let mut s = start.insert(m.zero());
    loop {
        let mut next = s;
        sets::for_each_multiset_in(s, m.m(), |t| {
            next = next.union(m.f().get(t));
        });
        for x in s.iter() {
            for r in 0..m.ring().size() {
                next = next.union(m.act_unit(r, x));
            }
            if let Some(y) = forced_inverses[x] {
                next = next.insert(y);
            }
        }
        // single-scalar closure is not enough in general: close under the
        // full action of all scalar tuples
        let scalars = vec![m.ring().full_set(); m.n() - 1];
        next = next.union(m.g().eval(&scalars, s).expect("carrier args"));
        if next == s {
            return s;
        }
        s = next;
    }
}

/// All hyperideals of R in canonical order (including `{0}` and R).
pub fn enumerate_hyperideals(r: &Hyperring) -> Vec<SubsetHandle> {
    let size = r.size();
    let inverses = r.inverse_sets();
    let forced: Vec<Option<usize>> = inverses
        .iter()
        .map(|inv| {
            if inv.len() == 1 {
                inv.min_element()
            } else {
                None
            }
        })
        .collect();
    let cl = |s: SmallSet| deterministic_ideal_closure(r, &forced, s);
    let candidates = sets::closed_sets(size, cl);
    let ideals: Vec<SmallSet> = candidates
        .into_iter()
        .filter(|&s| !s.is_empty() && is_hyperideal(r, s).unwrap_or(false))
        .collect();
    canonical_sort(ideals)
        .into_iter()
        .map(|s| SubsetHandle::new(r.full_set(), s, SubsetRole::Hyperideal))
        .collect()
}

fn deterministic_ideal_closure(
    r: &Hyperring,
    forced_inverses: &[Option<usize>],
    start: SmallSet,
) -> SmallSet {
    let mut s = start.insert(r.zero());
    loop {
        let mut next = s;
        sets::for_each_multiset_in(s, r.m(), |t| {
            next = next.union(r.f().get(t));
        });
        for x in s.iter() {
            if let Some(y) = forced_inverses[x] {
                next = next.insert(y);
            }
        }
        let mut args = vec![s];
        args.extend(vec![r.full_set(); r.n() - 1]);
        next = next.union(r.g().eval(&args).expect("carrier args"));
        if next == s {
            return s;
        }
        s = next;
    }
}

/// The hyperideal generated by one element: `{g'(r, x, 1^(n-2)) | r in R}`.
pub fn generated_hyperideal(r: &Hyperring, x: usize) -> Result<SubsetHandle, SubobjectError> {
    if x >= r.size() {
        return Err(SubobjectError::OutOfCarrier);
    }
    let members: SmallSet = (0..r.size()).map(|s| r.scalar_mul(s, x)).collect();
    if !is_hyperideal(r, members)? {
        return Err(SubobjectError::GeneratedNotIdeal(
            members.iter().map(|i| r.label(i).to_string()).collect(),
        ));
    }
    Ok(SubsetHandle::new(
        r.full_set(),
        members,
        SubsetRole::Hyperideal,
    ))
}

fn tag_scalar_set(r: &Hyperring, members: SmallSet) -> SubsetHandle {
    let role = if !members.is_empty() && is_hyperideal(r, members).unwrap_or(false) {
        SubsetRole::Hyperideal
    } else {
        SubsetRole::Subset
    };
    SubsetHandle::new(r.full_set(), members, role)
}

/// `S_N = {r in R | g(r, 1^(n-2), M) <= N}` for any subset N of M.
pub fn colon_sn(m: &Hypermodule, n: SmallSet) -> SubsetHandle {
    let members: SmallSet = (0..m.ring().size())
        .filter(|&r| m.act_unit_set(r, m.full_set()).is_subset(n))
        .collect();
    tag_scalar_set(m.ring(), members)
}

/// `N_a = {r in R | g(r, 1^(n-2), a) <= N}`.
pub fn colon_na(m: &Hypermodule, n: SmallSet, a: usize) -> SubsetHandle {
    tag_scalar_set(m.ring(), colon_na_set(m, n, a))
}

pub(crate) fn colon_na_set(m: &Hypermodule, n: SmallSet, a: usize) -> SmallSet {
    (0..m.ring().size())
        .filter(|&r| m.act_unit(r, a).is_subset(n))
        .collect()
}

/// Colon of a subset X of M: scalars sending every element of X into N.
/// Equals the intersection of the per-element colon sets.
pub(crate) fn colon_subset(m: &Hypermodule, n: SmallSet, xs: SmallSet) -> SmallSet {
    (0..m.ring().size())
        .filter(|&r| m.act_unit_set(r, xs).is_subset(n))
        .collect()
}

/// Normalized torsion set of a nonzero element: `{0}` together with the
/// nonzero scalars whose unit-padded action on `a` contains the module zero.
pub fn torsion_fm(m: &Hypermodule, a: usize) -> Result<SubsetHandle, SubobjectError> {
    if a == m.zero() {
        return Err(SubobjectError::ZeroElement);
    }
    if a >= m.size() {
        return Err(SubobjectError::OutOfCarrier);
    }
    Ok(tag_scalar_set(m.ring(), torsion_set(m, a)))
}

pub(crate) fn torsion_set(m: &Hypermodule, a: usize) -> SmallSet {
    (0..m.ring().size())
        .filter(|&r| r == m.ring().zero() || m.act_unit(r, a).contains(m.zero()))
        .collect()
}

/// Torsion scalars of a subset, with the convention that the zero element
/// makes every scalar torsion.
pub(crate) fn torsion_subset(m: &Hypermodule, xs: SmallSet) -> SmallSet {
    (0..m.ring().size())
        .filter(|&r| r == m.ring().zero() || m.act_unit_set(r, xs).contains(m.zero()))
        .collect()
}

/// M is faithful when the normalized torsion set of every nonzero element is
/// exactly `{0}`.
pub fn is_faithful(m: &Hypermodule) -> bool {
    let zero_only = SmallSet::singleton(m.ring().zero());
    (0..m.size())
        .filter(|&a| a != m.zero())
        .all(|a| torsion_set(m, a) == zero_only)
}

/// Proper subhypermodules maximal under inclusion among proper ones.
pub fn maximal_subhypermodules(m: &Hypermodule) -> Vec<SubsetHandle> {
    let subs = enumerate_subhypermodules(m);
    let proper: Vec<SmallSet> = subs
        .iter()
        .map(|h| h.members)
        .filter(|&s| s != m.full_set())
        .collect();
    proper
        .iter()
        .filter(|&&s| {
            !proper
                .iter()
                .any(|&t| t != s && s.is_subset(t))
        })
        .map(|&s| SubsetHandle::new(m.full_set(), s, SubsetRole::Subhypermodule))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_structure;
    use crate::structure::Hypermodule;

    fn fix_a() -> Hypermodule {
        parse_structure(include_str!("../../../fixtures/fix_a.hyp"))
            .unwrap()
            .modules
            .remove(0)
    }

    fn fix_b() -> Hypermodule {
        parse_structure(include_str!("../../../fixtures/fix_b.hyp"))
            .unwrap()
            .modules
            .remove(0)
    }

    fn set(elems: &[usize]) -> SmallSet {
        elems.iter().copied().collect()
    }

    /// Brute-force filter over all subsets, for oracle comparisons.
    fn naive_subhypermodules(m: &Hypermodule) -> Vec<SmallSet> {
        let mut out: Vec<SmallSet> = (1..1u64 << m.size())
            .map(SmallSet::from_bits)
            .filter(|&s| is_subhypermodule(m, s).unwrap())
            .collect();
        out.sort_by_key(|s| s.canonical_key());
        out
    }

    fn naive_hyperideals(r: &Hyperring) -> Vec<SmallSet> {
        let mut out: Vec<SmallSet> = (1..1u64 << r.size())
            .map(SmallSet::from_bits)
            .filter(|&s| is_hyperideal(r, s).unwrap())
            .collect();
        out.sort_by_key(|s| s.canonical_key());
        out
    }

    #[test]
    fn example_hyperideals() {
        let m = fix_a();
        let r = m.ring();
        assert_eq!(is_hyperideal(r, set(&[0, 2])), Ok(true));
        assert_eq!(is_hyperideal(r, set(&[0])), Ok(true));
        assert_eq!(is_hyperideal(r, r.full_set()), Ok(true));
        assert_eq!(is_hyperideal(r, set(&[0, 1])), Ok(false));
        assert_eq!(
            is_hyperideal(r, SmallSet::empty()),
            Err(SubobjectError::EmptySubset)
        );
        let all: Vec<SmallSet> = enumerate_hyperideals(r).iter().map(|h| h.members).collect();
        assert_eq!(all, vec![set(&[0]), set(&[0, 2]), set(&[0, 1, 2])]);
    }

    #[test]
    fn example_subhypermodules() {
        let m = fix_a();
        assert_eq!(is_subhypermodule(&m, set(&[0, 2])), Ok(true));
        assert_eq!(is_subhypermodule(&m, set(&[0])), Ok(true));
        assert_eq!(is_subhypermodule(&m, set(&[0, 1])), Ok(false));
        let all: Vec<SmallSet> = enumerate_subhypermodules(&m)
            .iter()
            .map(|h| h.members)
            .collect();
        assert_eq!(
            all,
            vec![
                set(&[0]),
                set(&[0, 2]),
                set(&[0, 1, 2]),
                set(&[0, 2, 3]),
                set(&[0, 1, 2, 3]),
            ]
        );
    }

    #[test]
    fn enumeration_matches_naive_filter() {
        for m in [fix_a(), fix_b()] {
            let fast: Vec<SmallSet> = enumerate_subhypermodules(&m)
                .iter()
                .map(|h| h.members)
                .collect();
            assert_eq!(fast, naive_subhypermodules(&m), "module {}", m.name());
            let fast: Vec<SmallSet> = enumerate_hyperideals(m.ring())
                .iter()
                .map(|h| h.members)
                .collect();
            assert_eq!(fast, naive_hyperideals(m.ring()), "ring {}", m.ring().name());
        }
    }

    #[test]
    fn generated_ideals() {
        let m = fix_a();
        let r = m.ring();
        assert_eq!(generated_hyperideal(r, 2).unwrap().members, set(&[0, 2]));
        assert_eq!(generated_hyperideal(r, 0).unwrap().members, set(&[0]));
        assert_eq!(generated_hyperideal(r, 1).unwrap().members, r.full_set());
    }

    #[test]
    fn generated_ideal_is_smallest_containing() {
        let m = fix_a();
        let r = m.ring();
        let ideals: Vec<SmallSet> = enumerate_hyperideals(r).iter().map(|h| h.members).collect();
        for x in 0..r.size() {
            let gen = generated_hyperideal(r, x).unwrap().members;
            let smallest = ideals
                .iter()
                .filter(|i| i.contains(x))
                .min_by_key(|i| i.len())
                .unwrap();
            assert_eq!(gen, *smallest, "element {x}");
        }
    }

    #[test]
    fn colon_sets_on_the_example() {
        let m = fix_a();
        assert_eq!(colon_sn(&m, set(&[0, 2])).members, set(&[0, 1, 2]));
        assert_eq!(colon_sn(&m, set(&[0])).members, set(&[0]));
        assert_eq!(colon_sn(&m, m.full_set()).members, set(&[0, 1, 2]));
        assert_eq!(colon_na(&m, set(&[0, 2]), 1).members, set(&[0, 1, 2]));
        assert_eq!(colon_na(&m, set(&[0]), 1).members, set(&[0]));
        // a = 0 gives all of R for any subobject containing zero
        assert_eq!(colon_na(&m, set(&[0]), 0).members, set(&[0, 1, 2]));
    }

    #[test]
    fn sn_is_the_intersection_of_all_na() {
        for m in [fix_a(), fix_b()] {
            for h in enumerate_subhypermodules(&m) {
                let sn = colon_sn(&m, h.members).members;
                let mut inter = m.ring().full_set();
                for a in 0..m.size() {
                    inter = inter.inter(colon_na_set(&m, h.members, a));
                }
                assert_eq!(sn, inter);
            }
        }
    }

    #[test]
    fn colon_sets_are_monotone() {
        let m = fix_a();
        let subs: Vec<SmallSet> = enumerate_subhypermodules(&m)
            .iter()
            .map(|h| h.members)
            .collect();
        for &n1 in &subs {
            for &n2 in &subs {
                if n1.is_subset(n2) {
                    assert!(colon_sn(&m, n1).members.is_subset(colon_sn(&m, n2).members));
                    for a in 0..m.size() {
                        assert!(colon_na_set(&m, n1, a).is_subset(colon_na_set(&m, n2, a)));
                    }
                }
            }
        }
    }

    #[test]
    fn na_contains_sn_for_subhypermodules() {
        for m in [fix_a(), fix_b()] {
            for h in enumerate_subhypermodules(&m) {
                let sn = colon_sn(&m, h.members).members;
                for a in 0..m.size() {
                    assert!(sn.is_subset(colon_na_set(&m, h.members, a)));
                }
            }
        }
    }

    #[test]
    fn torsion_and_faithfulness() {
        let m = fix_a();
        assert_eq!(torsion_fm(&m, 1).unwrap().members, set(&[0]));
        assert!(is_faithful(&m));
        assert_eq!(torsion_fm(&m, 0), Err(SubobjectError::ZeroElement));
        let b = fix_b();
        assert_eq!(torsion_fm(&b, 1).unwrap().members, set(&[0]));
        assert!(is_faithful(&b));
    }

    #[test]
    fn maximal_subhypermodules_of_the_example() {
        let m = fix_a();
        let maxes: Vec<SmallSet> = maximal_subhypermodules(&m)
            .iter()
            .map(|h| h.members)
            .collect();
        assert_eq!(maxes, vec![set(&[0, 1, 2]), set(&[0, 2, 3])]);
    }
}
