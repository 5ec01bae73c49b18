//! The subhypermodule classes: n-ary prime, classical prime, weakly
//! classical prime, and phi-classical prime, together with classical
//! (m,n)-zeros, torsion freeness, and multiplication hypermodules.

use crate::sets::{self, SmallSet};
use crate::structure::Hypermodule;
use crate::subobjects;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum ClassifyError {
    #[error("subhypermodule must be proper")]
    NotProper,
    #[error("phi({q}) = {p} is not a subhypermodule")]
    PhiNotSub { q: String, p: String },
    #[error("the two prime definitions disagree on {n}: membership route {a}, colon route {b}")]
    DefinitionsDisagree { n: String, a: bool, b: bool },
    #[error("premise fails: g(I_1^(n-1), P) is not contained in Q")]
    PremiseFails,
    #[error("carrier size {size} exceeds the zero-search cap {cap}")]
    ZeroSearchCapExceeded { size: usize, cap: usize },
    #[error("expected {expected} factors, got {got}")]
    WrongPartCount { expected: usize, got: usize },
    #[error("module is not a multiplication hypermodule")]
    NotMultiplication,
}

/// Default bound on the carrier size for the classical-zero subset search.
pub const DEFAULT_ZERO_SEARCH_CAP: usize = 12;

/// A failing instance of one of the prime-style implications.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub scalars: Vec<usize>,
    pub a: usize,
}

/// How to read "the hyperproduct is zero" in the torsion-free condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TorsionReading {
    /// The hyperproduct is exactly `{0}`.
    Exact,
    /// The hyperproduct contains `0`.
    Contains,
}

/// A member of the phi registry: a total map from subhypermodules of a fixed
/// module to a subhypermodule or the empty-set marker (`None`).
#[derive(Clone)]
pub struct PhiFunction {
    pub name: String,
    rule: PhiRule,
}

#[derive(Clone)]
enum PhiRule {
    /// Constant empty set; reduces phi-classical prime to classical prime.
    Empty,
    /// Constant `{0}`; reduces to weakly classical prime.
    Zero,
    /// `phi(N) = g(S_N, 1^(n-2), N)`.
    Ideal,
    /// `phi(Q) = Q`.
    Identity,
    /// A fixed value, used for product-side instantiations.
    Constant(Option<SmallSet>),
    /// Explicit table over subhypermodule masks (quotient lifts).
    Table(BTreeMap<u64, Option<u64>>),
    /// Componentwise pair on a product module; empty off product subs.
    Product {
        left: Arc<Hypermodule>,
        right: Arc<Hypermodule>,
        left_phi: Box<PhiFunction>,
        right_phi: Box<PhiFunction>,
    },
}

impl PhiFunction {
    pub fn empty() -> Self {
        PhiFunction {
            name: "empty".into(),
            rule: PhiRule::Empty,
        }
    }

    pub fn zero() -> Self {
        PhiFunction {
            name: "zero".into(),
            rule: PhiRule::Zero,
        }
    }

    pub fn ideal() -> Self {
        PhiFunction {
            name: "ideal".into(),
            rule: PhiRule::Ideal,
        }
    }

    pub fn identity() -> Self {
        PhiFunction {
            name: "id".into(),
            rule: PhiRule::Identity,
        }
    }

    pub fn constant(name: impl Into<String>, value: Option<SmallSet>) -> Self {
        PhiFunction {
            name: name.into(),
            rule: PhiRule::Constant(value),
        }
    }

    pub fn from_table(name: impl Into<String>, table: BTreeMap<u64, Option<u64>>) -> Self {
        PhiFunction {
            name: name.into(),
            rule: PhiRule::Table(table),
        }
    }

    pub fn product(
        left: Arc<Hypermodule>,
        right: Arc<Hypermodule>,
        left_phi: PhiFunction,
        right_phi: PhiFunction,
    ) -> Self {
        PhiFunction {
            name: format!("{}x{}", left_phi.name, right_phi.name),
            rule: PhiRule::Product {
                left,
                right,
                left_phi: Box::new(left_phi),
                right_phi: Box::new(right_phi),
            },
        }
    }

    /// The four named members used throughout the property suite.
    pub fn registry() -> Vec<PhiFunction> {
        vec![
            PhiFunction::empty(),
            PhiFunction::zero(),
            PhiFunction::ideal(),
            PhiFunction::identity(),
        ]
    }

    pub fn by_name(name: &str) -> Option<PhiFunction> {
        match name {
            "empty" => Some(PhiFunction::empty()),
            "zero" => Some(PhiFunction::zero()),
            "ideal" => Some(PhiFunction::ideal()),
            "id" => Some(PhiFunction::identity()),
            _ => None,
        }
    }

    /// Evaluate on a subhypermodule; `None` is the empty-set marker.
    pub fn apply(&self, m: &Hypermodule, q: SmallSet) -> Option<SmallSet> {
        match &self.rule {
            PhiRule::Empty => None,
            PhiRule::Zero => Some(SmallSet::singleton(m.zero())),
            PhiRule::Identity => Some(q),
            PhiRule::Constant(v) => *v,
            PhiRule::Ideal => {
                let sn = subobjects::colon_sn(m, q).members;
                if sn.is_empty() || q.is_empty() {
                    return None;
                }
                let mut scalar_args = vec![sn];
                scalar_args.extend(vec![SmallSet::singleton(m.ring().one()); m.n() - 2]);
                Some(m.g().eval(&scalar_args, q).expect("carrier args"))
            }
            PhiRule::Table(map) => map.get(&q.bits()).copied().flatten().map(SmallSet::from_bits),
            PhiRule::Product {
                left,
                right,
                left_phi,
                right_phi,
            } => {
                let (q1, q2) = split_product_sub(left.size(), right.size(), q)?;
                let p1 = left_phi.apply(left, q1);
                let p2 = right_phi.apply(right, q2);
                match (p1, p2) {
                    (Some(p1), Some(p2)) => {
                        Some(pair_product(p1, p2, right.size()))
                    }
                    _ => None,
                }
            }
        }
    }
}

/// Pair index in a product carrier: `a * |M2| + b`.
pub fn pair_index(a: usize, b: usize, right_size: usize) -> usize {
    a * right_size + b
}

/// The product subset `A x B` inside a product carrier.
pub fn pair_product(a: SmallSet, b: SmallSet, right_size: usize) -> SmallSet {
    let mut out = SmallSet::empty();
    for x in a.iter() {
        for y in b.iter() {
            out = out.insert(pair_index(x, y, right_size));
        }
    }
    out
}

/// Decompose a subset of a product carrier as `A x B`, if it is one.
pub fn split_product_sub(
    left_size: usize,
    right_size: usize,
    w: SmallSet,
) -> Option<(SmallSet, SmallSet)> {
    let mut a = SmallSet::empty();
    let mut b = SmallSet::empty();
    for i in w.iter() {
        a = a.insert(i / right_size);
        b = b.insert(i % right_size);
    }
    let _ = left_size;
    if pair_product(a, b, right_size) == w {
        Some((a, b))
    } else {
        None
    }
}

fn require_proper(m: &Hypermodule, q: SmallSet) -> Result<(), ClassifyError> {
    if q == m.full_set() {
        Err(ClassifyError::NotProper)
    } else {
        Ok(())
    }
}

/// Evaluate `g` on a sorted scalar multiset and an element set.
fn act_multi(m: &Hypermodule, scalars: &[usize], xs: SmallSet) -> SmallSet {
    let mut acc = SmallSet::empty();
    for a in xs.iter() {
        acc = acc.union(m.g().get_sorted(scalars, a));
    }
    acc
}

/// Both routes of the n-ary prime definition: the membership form
/// (`a in M - N` forces `g(r, M) <= N`) and the colon form
/// (`a in N` or some `r_i in S_N`).
pub fn prime_routes(m: &Hypermodule, n: SmallSet) -> Result<(bool, bool), ClassifyError> {
    require_proper(m, n)?;
    let full = m.full_set();
    let sn = subobjects::colon_sn(m, n).members;
    let mut membership = true;
    let mut colon = true;
    sets::for_each_multiset(m.ring().size(), m.n() - 1, |rs| {
        let g_all = act_multi(m, rs, full);
        for a in 0..m.size() {
            if !m.g().get_sorted(rs, a).is_subset(n) {
                continue;
            }
            if !n.contains(a) && !g_all.is_subset(n) {
                membership = false;
            }
            if !n.contains(a) && !rs.iter().any(|&r| sn.contains(r)) {
                colon = false;
            }
        }
    });
    Ok((membership, colon))
}

/// Definition-level n-ary primeness; errs when the two equivalent forms
/// disagree (which would indicate a convention mismatch, not a property).
pub fn is_prime(m: &Hypermodule, n: SmallSet) -> Result<bool, ClassifyError> {
    let (a, b) = prime_routes(m, n)?;
    if a != b {
        return Err(ClassifyError::DefinitionsDisagree {
            n: crate::verify::fmt_set(m.labels(), n),
            a,
            b,
        });
    }
    Ok(a)
}

fn classical_scan(
    m: &Hypermodule,
    q: SmallSet,
    phi: Option<SmallSet>,
    weakly: bool,
) -> Option<Counterexample> {
    let mut cx: Option<Counterexample> = None;
    sets::for_each_multiset(m.ring().size(), m.n() - 1, |rs| {
        if cx.is_some() {
            return;
        }
        for a in 0..m.size() {
            let val = m.g().get_sorted(rs, a);
            if !val.is_subset(q) {
                continue;
            }
            if weakly && val.contains(m.zero()) {
                continue;
            }
            if let Some(p) = phi {
                if val.intersects(p) {
                    continue;
                }
            }
            if !rs.iter().any(|&r| m.act_unit(r, a).is_subset(q)) {
                cx = Some(Counterexample {
                    scalars: rs.to_vec(),
                    a,
                });
                return;
            }
        }
    });
    cx
}

/// First counterexample to Q being n-ary classical prime, in canonical scan
/// order, or `None` when Q is classical prime.
pub fn classical_prime_counterexample(
    m: &Hypermodule,
    q: SmallSet,
) -> Result<Option<Counterexample>, ClassifyError> {
    require_proper(m, q)?;
    Ok(classical_scan(m, q, None, false))
}

pub fn is_classical_prime(m: &Hypermodule, q: SmallSet) -> Result<bool, ClassifyError> {
    Ok(classical_prime_counterexample(m, q)?.is_none())
}

pub fn weakly_classical_prime_counterexample(
    m: &Hypermodule,
    q: SmallSet,
) -> Result<Option<Counterexample>, ClassifyError> {
    require_proper(m, q)?;
    Ok(classical_scan(m, q, None, true))
}

pub fn is_weakly_classical_prime(m: &Hypermodule, q: SmallSet) -> Result<bool, ClassifyError> {
    Ok(weakly_classical_prime_counterexample(m, q)?.is_none())
}

/// Resolve `phi(Q)`, verifying that a nonempty value is a subhypermodule.
pub fn phi_value(
    m: &Hypermodule,
    q: SmallSet,
    phi: &PhiFunction,
) -> Result<Option<SmallSet>, ClassifyError> {
    match phi.apply(m, q) {
        None => Ok(None),
        Some(p) => {
            if subobjects::is_subhypermodule(m, p).unwrap_or(false) {
                Ok(Some(p))
            } else {
                Err(ClassifyError::PhiNotSub {
                    q: crate::verify::fmt_set(m.labels(), q),
                    p: crate::verify::fmt_set(m.labels(), p),
                })
            }
        }
    }
}

pub fn phi_classical_prime_counterexample(
    m: &Hypermodule,
    q: SmallSet,
    phi: &PhiFunction,
) -> Result<Option<Counterexample>, ClassifyError> {
    require_proper(m, q)?;
    let p = phi_value(m, q, phi)?;
    Ok(classical_scan(m, q, p, false))
}

/// Q is phi-classical prime: hyperproducts inside `Q` and disjoint from
/// `phi(Q)` force a single-scalar action inside Q.
pub fn is_phi_classical_prime(
    m: &Hypermodule,
    q: SmallSet,
    phi: &PhiFunction,
) -> Result<bool, ClassifyError> {
    Ok(phi_classical_prime_counterexample(m, q, phi)?.is_none())
}

/// A scalar tuple and a subset witnessing why a weakly classical prime can
/// fail to be classical prime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassicalZeroWitness {
    pub scalars: Vec<usize>,
    pub subset: SmallSet,
}

/// All classical (m,n)-zeros of Q: scalar tuples and nonempty subsets X with
/// `0 in g(r, X) <= Q` while no single-scalar action lands inside Q.
pub fn find_classical_zeros(
    m: &Hypermodule,
    q: SmallSet,
    cap: usize,
) -> Result<Vec<ClassicalZeroWitness>, ClassifyError> {
    require_proper(m, q)?;
    if m.size() > cap {
        return Err(ClassifyError::ZeroSearchCapExceeded {
            size: m.size(),
            cap,
        });
    }
    let mut out = Vec::new();
    sets::for_each_multiset(m.ring().size(), m.n() - 1, |rs| {
        for mask in 1..1u64 << m.size() {
            let x = SmallSet::from_bits(mask);
            let val = act_multi(m, rs, x);
            if !val.contains(m.zero()) || !val.is_subset(q) {
                continue;
            }
            if rs.iter().all(|&r| !m.act_unit_set(r, x).is_subset(q)) {
                out.push(ClassicalZeroWitness {
                    scalars: rs.to_vec(),
                    subset: x,
                });
            }
        }
    });
    out.sort_by(|a, b| {
        a.scalars
            .cmp(&b.scalars)
            .then(a.subset.canonical_key().cmp(&b.subset.canonical_key()))
    });
    Ok(out)
}

/// Decide in O(|P|) whether some nonempty `X <= P` makes `(scalars, X)` a
/// classical zero of Q: X can be assembled from one element that hits zero,
/// plus one escape element per scalar, all drawn from the compatible part
/// of P.
pub fn has_classical_zero_within(
    m: &Hypermodule,
    q: SmallSet,
    scalars: &[usize],
    p: SmallSet,
) -> bool {
    let mut sorted = scalars.to_vec();
    sorted.sort_unstable();
    let compatible: SmallSet = p
        .iter()
        .filter(|&x| m.g().get_sorted(&sorted, x).is_subset(q))
        .collect();
    if compatible.is_empty() {
        return false;
    }
    let hits_zero = compatible
        .iter()
        .any(|x| m.g().get_sorted(&sorted, x).contains(m.zero()));
    if !hits_zero {
        return false;
    }
    let mut distinct = sorted.clone();
    distinct.dedup();
    distinct.iter().all(|&r| {
        compatible
            .iter()
            .any(|x| !m.act_unit(r, x).is_subset(q))
    })
}

/// Q is a free classical (m,n)-zero with respect to `g(I_1^(n-1), P)`: no
/// scalar tuple from the ideals and no nonempty subset of P witness a
/// classical zero.
pub fn is_free_classical_zero(
    m: &Hypermodule,
    q: SmallSet,
    ideals: &[SmallSet],
    p: SmallSet,
) -> Result<bool, ClassifyError> {
    require_proper(m, q)?;
    if ideals.len() != m.n() - 1 {
        return Err(ClassifyError::WrongPartCount {
            expected: m.n() - 1,
            got: ideals.len(),
        });
    }
    let premise = m.g().eval(ideals, p).expect("carrier args");
    if !premise.is_subset(q) {
        return Err(ClassifyError::PremiseFails);
    }
    let mut free = true;
    sets::for_each_product(ideals, |rs| {
        if free && has_classical_zero_within(m, q, rs, p) {
            free = false;
        }
    });
    Ok(free)
}

/// Element-level torsion freeness of `a` under the given reading.
pub fn is_torsion_free_element(m: &Hypermodule, a: usize, reading: TorsionReading) -> bool {
    let zero = SmallSet::singleton(m.zero());
    let mut ok = true;
    sets::for_each_multiset(m.ring().size(), m.n() - 1, |rs| {
        if !ok {
            return;
        }
        let val = m.g().get_sorted(rs, a);
        let is_zero = match reading {
            TorsionReading::Exact => val == zero,
            TorsionReading::Contains => val.contains(m.zero()),
        };
        if is_zero && !rs.contains(&m.ring().zero()) {
            ok = false;
        }
    });
    ok
}

/// M is torsion free when every nonzero element is.
pub fn is_torsion_free(m: &Hypermodule, reading: TorsionReading) -> bool {
    (0..m.size())
        .filter(|&a| a != m.zero())
        .all(|a| is_torsion_free_element(m, a, reading))
}

/// The canonical presenting hyperideal of K: `S_K`, the largest scalar set
/// with `g(S_K, 1^(n-2), M) <= K`.
pub fn presentation_ideal(m: &Hypermodule, k: SmallSet) -> SmallSet {
    subobjects::colon_sn(m, k).members
}

fn present(m: &Hypermodule, ideal: SmallSet, target: SmallSet) -> SmallSet {
    if ideal.is_empty() {
        return SmallSet::empty();
    }
    let mut scalar_args = vec![ideal];
    scalar_args.extend(vec![SmallSet::singleton(m.ring().one()); m.n() - 2]);
    m.g().eval(&scalar_args, target).expect("carrier args")
}

/// M is a multiplication hypermodule: every subhypermodule K is presented by
/// its canonical ideal, `K = g(S_K, 1^(n-2), M)`.
pub fn is_multiplication_module(m: &Hypermodule) -> bool {
    subobjects::enumerate_subhypermodules(m)
        .iter()
        .all(|h| present(m, presentation_ideal(m, h.members), m.full_set()) == h.members)
}

/// The n-fold product of subhypermodules of a multiplication module:
/// `g(K_1^n) = g(g'(I_1^n), 1^(n-2), M)` with `I_i` the presentation ideals.
pub fn submodule_product_full(
    m: &Hypermodule,
    parts: &[SmallSet],
) -> Result<SmallSet, ClassifyError> {
    if parts.len() != m.n() {
        return Err(ClassifyError::WrongPartCount {
            expected: m.n(),
            got: parts.len(),
        });
    }
    if !is_multiplication_module(m) {
        return Err(ClassifyError::NotMultiplication);
    }
    let ideals: Vec<SmallSet> = parts.iter().map(|&k| presentation_ideal(m, k)).collect();
    let scalar_set = m.ring().g().eval(&ideals).expect("carrier args");
    Ok(present(m, scalar_set, m.full_set()))
}

/// The (n-1)-fold product applied to one element: `g(K_1^(n-1), a) =
/// g(I_1^(n-1), a)`.
pub fn submodule_product_at(
    m: &Hypermodule,
    parts: &[SmallSet],
    a: usize,
) -> Result<SmallSet, ClassifyError> {
    if parts.len() != m.n() - 1 {
        return Err(ClassifyError::WrongPartCount {
            expected: m.n() - 1,
            got: parts.len(),
        });
    }
    if !is_multiplication_module(m) {
        return Err(ClassifyError::NotMultiplication);
    }
    let ideals: Vec<SmallSet> = parts.iter().map(|&k| presentation_ideal(m, k)).collect();
    Ok(m
        .g()
        .eval(&ideals, SmallSet::singleton(a))
        .expect("carrier args"))
}

/// `g(K_i, M^(n-2), a) = g(I_i, 1^(n-2), a)` for one factor.
pub fn submodule_action_at(m: &Hypermodule, k: SmallSet, a: usize) -> SmallSet {
    let ideal = presentation_ideal(m, k);
    if ideal.is_empty() {
        return SmallSet::empty();
    }
    let mut args = vec![ideal];
    args.extend(vec![SmallSet::singleton(m.ring().one()); m.n() - 2]);
    m.g()
        .eval(&args, SmallSet::singleton(a))
        .expect("carrier args")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_structure;
    use crate::subobjects::enumerate_subhypermodules;

    fn load(text: &str) -> Hypermodule {
        parse_structure(text).unwrap().modules.remove(0)
    }

    fn fix_a() -> Hypermodule {
        load(include_str!("../../../fixtures/fix_a.hyp"))
    }

    fn fix_b() -> Hypermodule {
        load(include_str!("../../../fixtures/fix_b.hyp"))
    }

    fn z2() -> Hypermodule {
        load(include_str!("../../../fixtures/z2.hyp"))
    }

    fn z4() -> Hypermodule {
        load(include_str!("../../../fixtures/z4.hyp"))
    }

    fn set(elems: &[usize]) -> SmallSet {
        elems.iter().copied().collect()
    }

    #[test]
    fn the_example_subhypermodule_is_classical_prime() {
        let m = fix_a();
        assert!(is_classical_prime(&m, set(&[0, 2])).unwrap());
    }

    #[test]
    fn zero_subhypermodule_of_the_example_is_classical_prime() {
        let m = fix_a();
        assert!(is_classical_prime(&m, set(&[0])).unwrap());
    }

    #[test]
    fn improper_subhypermodule_is_rejected() {
        let m = fix_a();
        assert!(matches!(
            is_classical_prime(&m, m.full_set()),
            Err(ClassifyError::NotProper)
        ));
        assert!(matches!(
            prime_routes(&m, m.full_set()),
            Err(ClassifyError::NotProper)
        ));
    }

    #[test]
    fn prime_on_one_dimensional_classical_module() {
        let m = z2();
        assert!(is_prime(&m, set(&[0])).unwrap());
    }

    #[test]
    fn zero_submodule_of_z4_is_not_classical_prime() {
        let m = z4();
        // 2*2*1 = 0 but neither 2*1 nor 2*1 lands in {0}
        let cx = classical_prime_counterexample(&m, set(&[0])).unwrap();
        assert_eq!(
            cx,
            Some(Counterexample {
                scalars: vec![2, 2],
                a: 1
            })
        );
        assert!(is_classical_prime(&m, set(&[0, 2])).unwrap());
    }

    #[test]
    fn klein_module_weakly_classical_prime() {
        let b = fix_b();
        // Q = {0, y}; y is element 2 in the xor encoding
        assert!(is_weakly_classical_prime(&b, set(&[0, 2])).unwrap());
    }

    #[test]
    fn zero_subhypermodule_is_always_weakly_classical_prime() {
        for m in [fix_a(), fix_b(), z2(), z4()] {
            assert!(is_weakly_classical_prime(&m, set(&[0])).unwrap(), "{}", m.name());
        }
    }

    #[test]
    fn identity_phi_is_vacuously_satisfied() {
        let m = z4();
        let id = PhiFunction::identity();
        for h in enumerate_subhypermodules(&m) {
            if h.members == m.full_set() {
                continue;
            }
            assert!(is_phi_classical_prime(&m, h.members, &id).unwrap());
        }
    }

    #[test]
    fn phi_reductions_match_the_plain_classes() {
        let empty = PhiFunction::empty();
        let zero = PhiFunction::zero();
        for m in [fix_a(), fix_b(), z2(), z4()] {
            for h in enumerate_subhypermodules(&m) {
                if h.members == m.full_set() {
                    continue;
                }
                assert_eq!(
                    is_phi_classical_prime(&m, h.members, &empty).unwrap(),
                    is_classical_prime(&m, h.members).unwrap(),
                );
                assert_eq!(
                    is_phi_classical_prime(&m, h.members, &zero).unwrap(),
                    is_weakly_classical_prime(&m, h.members).unwrap(),
                );
            }
        }
    }

    #[test]
    fn phi_monotone_in_the_excluded_region() {
        // larger phi(Q) weakens the premise, so the property can only gain
        for m in [fix_a(), fix_b(), z2(), z4()] {
            let registry = PhiFunction::registry();
            for h in enumerate_subhypermodules(&m) {
                if h.members == m.full_set() {
                    continue;
                }
                for p1 in &registry {
                    for p2 in &registry {
                        let v1 = p1.apply(&m, h.members).unwrap_or(SmallSet::empty());
                        let v2 = p2.apply(&m, h.members).unwrap_or(SmallSet::empty());
                        if v1.is_subset(v2)
                            && is_phi_classical_prime(&m, h.members, p1).unwrap()
                        {
                            assert!(is_phi_classical_prime(&m, h.members, p2).unwrap());
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn implication_chain_classical_weakly_phi() {
        for m in [fix_a(), fix_b(), z2(), z4()] {
            let zero = PhiFunction::zero();
            for h in enumerate_subhypermodules(&m) {
                if h.members == m.full_set() {
                    continue;
                }
                let classical = is_classical_prime(&m, h.members).unwrap();
                let weakly = is_weakly_classical_prime(&m, h.members).unwrap();
                let phi_zero = is_phi_classical_prime(&m, h.members, &zero).unwrap();
                if classical {
                    assert!(weakly);
                }
                if weakly {
                    assert!(phi_zero);
                }
            }
        }
    }

    #[test]
    fn classical_zeros_of_the_example_are_empty() {
        let m = fix_a();
        let zeros = find_classical_zeros(&m, set(&[0, 2]), DEFAULT_ZERO_SEARCH_CAP).unwrap();
        assert!(zeros.is_empty());
        let b = fix_b();
        let zeros = find_classical_zeros(&b, set(&[0, 2]), DEFAULT_ZERO_SEARCH_CAP).unwrap();
        assert!(zeros.is_empty());
    }

    #[test]
    fn zero_search_matches_fast_existence_check() {
        for m in [fix_a(), fix_b(), z2(), z4()] {
            for h in enumerate_subhypermodules(&m) {
                if h.members == m.full_set() {
                    continue;
                }
                let zeros =
                    find_classical_zeros(&m, h.members, DEFAULT_ZERO_SEARCH_CAP).unwrap();
                sets::for_each_multiset(m.ring().size(), m.n() - 1, |rs| {
                    let listed = zeros.iter().any(|w| w.scalars == rs);
                    let fast = has_classical_zero_within(&m, h.members, rs, m.full_set());
                    assert_eq!(listed, fast, "module {} rs {:?}", m.name(), rs);
                });
            }
        }
    }

    #[test]
    fn zero_scalars_make_free_classical_zeros() {
        let m = fix_a();
        let zero_ideal = set(&[0]);
        assert!(is_free_classical_zero(&m, set(&[0, 2]), &[zero_ideal, zero_ideal], set(&[0, 2]))
            .unwrap());
    }

    #[test]
    fn torsion_freeness() {
        // exhaustive scan: the example's action only reaches zero with a zero
        // scalar, so it is torsion free under both readings
        for reading in [TorsionReading::Exact, TorsionReading::Contains] {
            assert!(is_torsion_free(&fix_a(), reading));
            assert!(is_torsion_free(&fix_b(), reading));
            assert!(is_torsion_free(&z2(), reading));
            assert!(!is_torsion_free(&z4(), reading));
        }
    }

    #[test]
    fn multiplication_modules() {
        assert!(!is_multiplication_module(&fix_a()));
        assert!(!is_multiplication_module(&fix_b()));
        assert!(is_multiplication_module(&z2()));
        assert!(is_multiplication_module(&z4()));
    }

    #[test]
    fn one_element_module_is_multiplication() {
        let m = z2();
        let q = crate::construct::quotient(&m, m.full_set()).unwrap();
        assert_eq!(q.module.size(), 1);
        assert!(is_multiplication_module(&q.module));
    }

    #[test]
    fn submodule_products_on_z4() {
        let m = z4();
        let evens = set(&[0, 2]);
        // presentation ideal of 2Z4 is itself
        assert_eq!(presentation_ideal(&m, evens), evens);
        // (2Z4)^3 as an n-fold product collapses to {0}
        assert_eq!(
            submodule_product_full(&m, &[evens, evens, evens]).unwrap(),
            set(&[0])
        );
        // unit ideals: the full product is M again
        let full = m.full_set();
        assert_eq!(submodule_product_full(&m, &[full, full, full]).unwrap(), full);
        assert_eq!(
            submodule_product_full(&m, &[set(&[0]), full, full]).unwrap(),
            set(&[0])
        );
        // element form
        assert_eq!(submodule_product_at(&m, &[evens, evens], 1).unwrap(), set(&[0]));
        assert!(matches!(
            submodule_product_full(&fix_a(), &[set(&[0]); 3]),
            Err(ClassifyError::NotMultiplication)
        ));
    }
}
