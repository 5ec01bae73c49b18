//! Quotient hypermodules, the two cartesian product constructions, and
//! homomorphisms.
//!
//! The quotient carrier is the set of distinct cosets `f(a, N, 0^(m-2))`,
//! compared extensionally (cosets may overlap). Induced tables are computed
//! from the canonical (smallest) representative of each coset, and the
//! construction is re-verified; a verification failure is surfaced as an
//! error, never hidden.

use crate::sets::{self, SmallSet};
use crate::structure::{ActionTable, HyperOpTable, Hypermodule, Hyperring};
use crate::subobjects;
use crate::verify::{self, AxiomReport};
use std::sync::Arc;
use thiserror::Error;

#[derive(Error, Debug)]
pub enum ConstructError {
    #[error("subset is not a subhypermodule")]
    NotSub,
    #[error("quotient of {module} by {by} fails verification: {failures}")]
    QuotientAxiomFailure {
        module: String,
        by: String,
        failures: String,
    },
    #[error("product of {left} and {right} fails verification: {failures}")]
    ProductAxiomFailure {
        left: String,
        right: String,
        failures: String,
    },
    #[error("modules are not over the same ring")]
    RingMismatch,
    #[error("structures have different arities")]
    ArityMismatch,
    #[error("map is not total on the source carrier")]
    MapNotTotal,
    #[error("not a homomorphism: {witness}")]
    NotHom { witness: String },
    #[error(transparent)]
    Structure(#[from] crate::structure::StructureError),
}

/// A verified homomorphism of hypermodules over one ring.
#[derive(Debug, Clone)]
pub struct Homomorphism {
    pub source: String,
    pub target: String,
    pub map: Vec<usize>,
    source_size: usize,
    target_size: usize,
    target_zero: usize,
}

impl Homomorphism {
    pub fn image_of(&self, sub: SmallSet) -> SmallSet {
        sub.iter().map(|a| self.map[a]).collect()
    }

    pub fn preimage_of(&self, sub: SmallSet) -> SmallSet {
        (0..self.source_size)
            .filter(|&a| sub.contains(self.map[a]))
            .collect()
    }

    pub fn kernel(&self) -> SmallSet {
        self.preimage_of(SmallSet::singleton(self.target_zero))
    }

    pub fn is_epi(&self) -> bool {
        self.image_of(SmallSet::full(self.source_size)) == SmallSet::full(self.target_size)
    }

    pub fn is_mono(&self) -> bool {
        self.image_of(SmallSet::full(self.source_size)).len() == self.source_size
    }
}

/// Verify both homomorphism identities over all tuples and wrap the map.
pub fn check_homomorphism(
    map: &[usize],
    m1: &Hypermodule,
    m2: &Hypermodule,
) -> Result<Homomorphism, ConstructError> {
    if !m1.ring().same_tables(m2.ring()) {
        return Err(ConstructError::RingMismatch);
    }
    if map.len() != m1.size() || map.iter().any(|&b| b >= m2.size()) {
        return Err(ConstructError::MapNotTotal);
    }
    let image = |s: SmallSet| -> SmallSet { s.iter().map(|a| map[a]).collect() };
    let mut witness: Option<String> = None;
    sets::for_each_multiset(m1.size(), m1.m(), |t| {
        if witness.is_some() {
            return;
        }
        let lhs = image(m1.f().get_sorted(t));
        let mapped: Vec<SmallSet> = t.iter().map(|&a| SmallSet::singleton(map[a])).collect();
        let rhs = m2.f().eval(&mapped).expect("carrier args");
        if lhs != rhs {
            witness = Some(format!(
                "h(f({t})) = {l} but f(h..) = {r}",
                t = t
                    .iter()
                    .map(|&a| m1.label(a))
                    .collect::<Vec<_>>()
                    .join(","),
                l = verify::fmt_set(m2.labels(), lhs),
                r = verify::fmt_set(m2.labels(), rhs),
            ));
        }
    });
    if witness.is_none() {
        sets::for_each_multiset(m1.ring().size(), m1.n() - 1, |rs| {
            if witness.is_some() {
                return;
            }
            for a in 0..m1.size() {
                let lhs = image(m1.g().get_sorted(rs, a));
                let rhs = m2.g().get_sorted(rs, map[a]);
                if lhs != rhs {
                    witness = Some(format!(
                        "h(g({rs},{a})) = {l} but g({rs},h({a})) = {r}",
                        rs = rs
                            .iter()
                            .map(|&x| m1.ring().label(x))
                            .collect::<Vec<_>>()
                            .join(","),
                        a = m1.label(a),
                        l = verify::fmt_set(m2.labels(), lhs),
                        r = verify::fmt_set(m2.labels(), rhs),
                    ));
                    return;
                }
            }
        });
    }
    if let Some(witness) = witness {
        return Err(ConstructError::NotHom { witness });
    }
    Ok(Homomorphism {
        source: m1.name().to_string(),
        target: m2.name().to_string(),
        map: map.to_vec(),
        source_size: m1.size(),
        target_size: m2.size(),
        target_zero: m2.zero(),
    })
}

/// A quotient module together with the coset bookkeeping.
pub struct QuotientResult {
    pub module: Hypermodule,
    /// Member set of each coset, indexed like the quotient carrier.
    pub cosets: Vec<SmallSet>,
    /// Canonical representative of each coset.
    pub representatives: Vec<usize>,
    /// Coset index of every parent element.
    pub coset_of: Vec<usize>,
    /// The projection, when it verifies as a homomorphism. With overlapping
    /// cosets the representative-based quotient tables need not commute with
    /// the projection map, so this is not guaranteed.
    pub projection: Result<Homomorphism, String>,
    pub report: AxiomReport,
}

impl QuotientResult {
    /// Lift a parent subset to the quotient: the set of cosets of its
    /// members.
    pub fn lift(&self, sub: SmallSet) -> SmallSet {
        sub.iter().map(|a| self.coset_of[a]).collect()
    }

    /// Elements whose coset is the zero coset.
    pub fn projection_kernel(&self) -> SmallSet {
        self.coset_of
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c == self.module.zero())
            .map(|(a, _)| a)
            .collect()
    }
}

/// Build M/N from the single-representative cosets `f(a, N, 0^(m-2))`.
pub fn quotient(m: &Hypermodule, n: SmallSet) -> Result<QuotientResult, ConstructError> {
    if !subobjects::is_subhypermodule(m, n).unwrap_or(false) {
        return Err(ConstructError::NotSub);
    }
    let coset_members = |a: usize| -> SmallSet {
        let mut args = vec![SmallSet::singleton(a), n];
        args.extend(vec![SmallSet::singleton(m.zero()); m.m() - 2]);
        m.f().eval(&args).expect("carrier args")
    };
    let mut cosets: Vec<SmallSet> = Vec::new();
    let mut representatives: Vec<usize> = Vec::new();
    let mut coset_of = vec![0usize; m.size()];
    for a in 0..m.size() {
        let members = coset_members(a);
        match cosets.iter().position(|&c| c == members) {
            Some(i) => coset_of[a] = i,
            None => {
                cosets.push(members);
                representatives.push(a);
                coset_of[a] = cosets.len() - 1;
            }
        }
    }
    let size = cosets.len();
    let labels: Vec<String> = representatives
        .iter()
        .map(|&a| format!("c{}", m.label(a)))
        .collect();
    let mut f_entries = Vec::with_capacity(sets::multiset_count(size, m.m()));
    sets::for_each_multiset(size, m.m(), |t| {
        let reps: Vec<usize> = t.iter().map(|&c| representatives[c]).collect();
        let val = m.f().get(&reps);
        f_entries.push(val.iter().map(|x| coset_of[x]).collect());
    });
    let mut g_entries =
        Vec::with_capacity(sets::multiset_count(m.ring().size(), m.n() - 1) * size);
    sets::for_each_multiset(m.ring().size(), m.n() - 1, |rs| {
        for c in 0..size {
            let val = m.g().get_sorted(rs, representatives[c]);
            g_entries.push(val.iter().map(|x| coset_of[x]).collect());
        }
    });
    let f = HyperOpTable::new("f", m.m(), size, f_entries)?;
    let g = ActionTable::new(m.n() - 1, m.ring().size(), size, g_entries)?;
    let module = Hypermodule::new(
        format!("{}/{}", m.name(), verify::fmt_set(m.labels(), n)),
        m.ring().clone(),
        labels,
        f,
        g,
        coset_of[m.zero()],
        m.unital(),
    )?;
    let report = verify::verify_module_axioms_unchecked(&module);
    if !report.passed() {
        return Err(ConstructError::QuotientAxiomFailure {
            module: m.name().to_string(),
            by: verify::fmt_set(m.labels(), n),
            failures: report.failure_summary(),
        });
    }
    let projection =
        check_homomorphism(&coset_of, m, &module).map_err(|e| e.to_string());
    Ok(QuotientResult {
        module,
        cosets,
        representatives,
        coset_of,
        projection,
        report,
    })
}

fn product_labels(l1: &[String], l2: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(l1.len() * l2.len());
    for a in l1 {
        for b in l2 {
            out.push(format!("{a}.{b}"));
        }
    }
    out
}

fn product_table(
    op: &'static str,
    t1: &HyperOpTable,
    t2: &HyperOpTable,
    size2: usize,
) -> Result<HyperOpTable, ConstructError> {
    let arity = t1.arity();
    let size = t1.carrier_size() * size2;
    let mut entries = Vec::with_capacity(sets::multiset_count(size, arity));
    sets::for_each_multiset(size, arity, |t| {
        let left: Vec<usize> = t.iter().map(|&p| p / size2).collect();
        let right: Vec<usize> = t.iter().map(|&p| p % size2).collect();
        let v1 = t1.get(&left);
        let v2 = t2.get(&right);
        entries.push(crate::classify::pair_product(v1, v2, size2));
    });
    Ok(HyperOpTable::new(op, arity, size, entries)?)
}

/// Componentwise product of two modules over one ring.
pub fn product_same_ring(
    m1: &Hypermodule,
    m2: &Hypermodule,
) -> Result<Hypermodule, ConstructError> {
    if !m1.ring().same_tables(m2.ring()) {
        return Err(ConstructError::RingMismatch);
    }
    let size2 = m2.size();
    let f = product_table("f", m1.f(), m2.f(), size2)?;
    let size = m1.size() * size2;
    let mut g_entries =
        Vec::with_capacity(sets::multiset_count(m1.ring().size(), m1.n() - 1) * size);
    sets::for_each_multiset(m1.ring().size(), m1.n() - 1, |rs| {
        for p in 0..size {
            let v1 = m1.g().get_sorted(rs, p / size2);
            let v2 = m2.g().get_sorted(rs, p % size2);
            g_entries.push(crate::classify::pair_product(v1, v2, size2));
        }
    });
    let g = ActionTable::new(m1.n() - 1, m1.ring().size(), size, g_entries)?;
    let module = Hypermodule::new(
        format!("{}x{}", m1.name(), m2.name()),
        m1.ring().clone(),
        product_labels(m1.labels(), m2.labels()),
        f,
        g,
        crate::classify::pair_index(m1.zero(), m2.zero(), size2),
        m1.unital() && m2.unital(),
    )?;
    let report = verify::verify_module_axioms_unchecked(&module);
    if !report.passed() {
        return Err(ConstructError::ProductAxiomFailure {
            left: m1.name().to_string(),
            right: m2.name().to_string(),
            failures: report.failure_summary(),
        });
    }
    Ok(module)
}

/// Componentwise product ring with zero (0,0) and one (1,1).
pub fn product_rings(r1: &Hyperring, r2: &Hyperring) -> Result<Arc<Hyperring>, ConstructError> {
    if r1.m() != r2.m() || r1.n() != r2.n() {
        return Err(ConstructError::ArityMismatch);
    }
    let size2 = r2.size();
    let f = product_table("f'", r1.f(), r2.f(), size2)?;
    let g = product_table("g'", r1.g(), r2.g(), size2)?;
    let ring = Hyperring::new(
        format!("{}x{}", r1.name(), r2.name()),
        r1.m(),
        r1.n(),
        product_labels(r1.labels(), r2.labels()),
        f,
        g,
        crate::classify::pair_index(r1.zero(), r2.zero(), size2),
        crate::classify::pair_index(r1.one(), r2.one(), size2),
    )?;
    let report = verify::verify_ring_axioms(&ring);
    if !report.passed() {
        return Err(ConstructError::ProductAxiomFailure {
            left: r1.name().to_string(),
            right: r2.name().to_string(),
            failures: report.failure_summary(),
        });
    }
    Ok(Arc::new(ring))
}

/// Product of modules over different rings, as a module over the product
/// ring: scalars act componentwise.
pub fn product_module_over_product_ring(
    m1: &Hypermodule,
    m2: &Hypermodule,
) -> Result<Hypermodule, ConstructError> {
    if m1.m() != m2.m() || m1.n() != m2.n() {
        return Err(ConstructError::ArityMismatch);
    }
    let ring = product_rings(m1.ring(), m2.ring())?;
    let rsize2 = m2.ring().size();
    let size2 = m2.size();
    let size = m1.size() * size2;
    let f = product_table("f", m1.f(), m2.f(), size2)?;
    let mut g_entries = Vec::with_capacity(sets::multiset_count(ring.size(), m1.n() - 1) * size);
    sets::for_each_multiset(ring.size(), m1.n() - 1, |rs| {
        let left: Vec<usize> = rs.iter().map(|&p| p / rsize2).collect();
        let right: Vec<usize> = rs.iter().map(|&p| p % rsize2).collect();
        for p in 0..size {
            let v1 = m1.g().get(&left, p / size2);
            let v2 = m2.g().get(&right, p % size2);
            g_entries.push(crate::classify::pair_product(v1, v2, size2));
        }
    });
    let g = ActionTable::new(m1.n() - 1, ring.size(), size, g_entries)?;
    let module = Hypermodule::new(
        format!("{}x{}", m1.name(), m2.name()),
        ring,
        product_labels(m1.labels(), m2.labels()),
        f,
        g,
        crate::classify::pair_index(m1.zero(), m2.zero(), size2),
        m1.unital() && m2.unital(),
    )?;
    let report = verify::verify_module_axioms_unchecked(&module);
    if !report.passed() {
        return Err(ConstructError::ProductAxiomFailure {
            left: m1.name().to_string(),
            right: m2.name().to_string(),
            failures: report.failure_summary(),
        });
    }
    Ok(module)
}

/// The map `a -> (a, 0)` into a same-ring product.
pub fn injection_left(m1: &Hypermodule, m2: &Hypermodule) -> Vec<usize> {
    (0..m1.size())
        .map(|a| crate::classify::pair_index(a, m2.zero(), m2.size()))
        .collect()
}

/// The projection `(a, b) -> a` out of a same-ring product.
pub fn projection_left(m1: &Hypermodule, m2: &Hypermodule) -> Vec<usize> {
    (0..m1.size() * m2.size()).map(|p| p / m2.size()).collect()
}

/// The projection `(a, b) -> b` out of a same-ring product.
pub fn projection_right(m1: &Hypermodule, m2: &Hypermodule) -> Vec<usize> {
    (0..m1.size() * m2.size()).map(|p| p % m2.size()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_structure;

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

    fn z2() -> Hypermodule {
        parse_structure(include_str!("../../../fixtures/z2.hyp"))
            .unwrap()
            .modules
            .remove(0)
    }

    fn set(elems: &[usize]) -> SmallSet {
        elems.iter().copied().collect()
    }

    #[test]
    fn quotient_by_zero_is_isomorphic() {
        let m = fix_a();
        let q = quotient(&m, set(&[0])).unwrap();
        assert_eq!(q.module.size(), m.size());
        assert_eq!(q.module.f().entries(), m.f().entries());
        assert_eq!(q.module.g().entries(), m.g().entries());
        let h = q.projection.as_ref().unwrap();
        assert_eq!(h.kernel(), set(&[0]));
    }

    #[test]
    fn quotient_by_the_whole_module_has_one_coset() {
        let m = fix_a();
        let q = quotient(&m, m.full_set()).unwrap();
        assert_eq!(q.module.size(), 1);
    }

    #[test]
    fn quotient_of_the_example_by_its_prime() {
        let m = fix_a();
        let q = quotient(&m, set(&[0, 2])).unwrap();
        assert_eq!(q.cosets, vec![set(&[0, 2]), set(&[0, 1, 2]), set(&[0, 2, 3])]);
        // the cosets overlap, so the projection need not be a homomorphism
        assert!(q.projection.is_err());
        // but the kernel of the projection map still recovers the
        // subhypermodule
        assert_eq!(q.projection_kernel(), set(&[0, 2]));
    }

    #[test]
    fn quotient_rejects_non_subhypermodules() {
        let m = fix_a();
        assert!(matches!(
            quotient(&m, set(&[0, 1])),
            Err(ConstructError::NotSub)
        ));
    }

    #[test]
    fn klein_quotients_verify_and_project() {
        let b = fix_b();
        for h in crate::subobjects::enumerate_subhypermodules(&b) {
            let q = quotient(&b, h.members).unwrap();
            let proj = q.projection.as_ref().expect("singleton cosets project");
            assert_eq!(proj.kernel(), h.members);
        }
    }

    #[test]
    fn product_with_one_element_module_is_isomorphic() {
        let m = fix_a();
        let one = quotient(&m, m.full_set()).unwrap().module;
        let p = product_same_ring(&m, &one).unwrap();
        assert_eq!(p.size(), m.size());
        assert_eq!(p.f().entries(), m.f().entries());
        assert_eq!(p.g().entries(), m.g().entries());
    }

    #[test]
    fn same_ring_product_of_the_example_verifies() {
        let m = fix_a();
        let p = product_same_ring(&m, &m).unwrap();
        assert_eq!(p.size(), 16);
        // Q x M is a subhypermodule whenever Q is
        let q = crate::classify::pair_product(set(&[0, 2]), m.full_set(), m.size());
        assert_eq!(crate::subobjects::is_subhypermodule(&p, q), Ok(true));
    }

    #[test]
    fn product_ring_of_the_example_has_nine_elements() {
        let m = fix_a();
        let r = product_rings(m.ring(), m.ring()).unwrap();
        assert_eq!(r.size(), 9);
    }

    #[test]
    fn product_module_over_product_ring_verifies() {
        let a = fix_a();
        let b = z2();
        let p = product_module_over_product_ring(&a, &b).unwrap();
        assert_eq!(p.size(), 8);
        assert_eq!(p.ring().size(), 6);
    }

    #[test]
    fn ring_mismatch_is_rejected() {
        let a = fix_a();
        let b = z2();
        assert!(matches!(
            product_same_ring(&a, &b),
            Err(ConstructError::RingMismatch)
        ));
    }

    #[test]
    fn identity_and_zero_maps_are_homomorphisms() {
        let m = fix_a();
        let id: Vec<usize> = (0..m.size()).collect();
        let h = check_homomorphism(&id, &m, &m).unwrap();
        assert_eq!(h.kernel(), set(&[0]));
        assert!(h.is_epi() && h.is_mono());
        let zero = vec![m.zero(); m.size()];
        let h = check_homomorphism(&zero, &m, &m).unwrap();
        assert_eq!(h.kernel(), m.full_set());
    }

    #[test]
    fn product_injections_and_projections_are_homomorphisms() {
        let b = fix_b();
        let p = product_same_ring(&b, &b).unwrap();
        let inj = check_homomorphism(&injection_left(&b, &b), &b, &p).unwrap();
        assert!(inj.is_mono() && !inj.is_epi());
        let proj = check_homomorphism(&projection_left(&b, &b), &p, &b).unwrap();
        assert!(proj.is_epi() && !proj.is_mono());
    }

    #[test]
    fn non_homomorphism_is_reported_with_witness() {
        let m = fix_b();
        // swap 0 and x: not additive
        let map = vec![1, 0, 2, 3];
        match check_homomorphism(&map, &m, &m) {
            Err(ConstructError::NotHom { witness }) => {
                assert!(!witness.is_empty());
            }
            other => panic!("expected NotHom, got {other:?}"),
        }
    }
}
