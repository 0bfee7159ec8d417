//! Finite groups with two concrete models and the subgroup machinery the
//! averages need: conjugacy classes, derived subgroups, quotients, and the
//! normal p-complement test.

pub mod affine;
pub mod classes;
pub mod explicit;
pub mod spec;

use std::sync::OnceLock;

pub use affine::{AffineGroup, Matrix};
pub use classes::ConjugacyClassSet;
pub use explicit::{ExplicitGroup, EXPLICIT_LIMIT};

use crate::numth::lcm;
use crate::{Error, Result};

#[derive(Debug)]
enum Kind {
    Explicit(ExplicitGroup),
    Affine(AffineGroup),
}

/// A finite group with element ids `0..order` and the identity at 0.
/// Immutable after construction; class data is computed once on demand.
#[derive(Debug)]
pub struct FiniteGroup {
    kind: Kind,
    label: String,
    generators: OnceLock<Vec<u32>>,
    classes: OnceLock<ConjugacyClassSet>,
    exponent: OnceLock<u64>,
}

impl FiniteGroup {
    pub fn from_explicit(label: impl Into<String>, g: ExplicitGroup) -> Self {
        FiniteGroup {
            kind: Kind::Explicit(g),
            label: label.into(),
            generators: OnceLock::new(),
            classes: OnceLock::new(),
            exponent: OnceLock::new(),
        }
    }

    pub fn from_affine(label: impl Into<String>, g: AffineGroup) -> Self {
        FiniteGroup {
            kind: Kind::Affine(g),
            label: label.into(),
            generators: OnceLock::new(),
            classes: OnceLock::new(),
            exponent: OnceLock::new(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn model_name(&self) -> &'static str {
        match &self.kind {
            Kind::Explicit(_) => "explicit",
            Kind::Affine(_) => "affine",
        }
    }

    pub fn affine(&self) -> Option<&AffineGroup> {
        match &self.kind {
            Kind::Affine(g) => Some(g),
            Kind::Explicit(_) => None,
        }
    }

    pub fn order(&self) -> u64 {
        match &self.kind {
            Kind::Explicit(g) => g.order(),
            Kind::Affine(g) => g.order(),
        }
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        match &self.kind {
            Kind::Explicit(g) => g.mul(x, y),
            Kind::Affine(g) => g.mul(x, y),
        }
    }

    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        match &self.kind {
            Kind::Explicit(g) => g.inv(x),
            Kind::Affine(g) => g.inv(x),
        }
    }

    /// g x g^{-1}.
    #[inline]
    pub fn conjugate(&self, x: u32, g: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, x: u32, mut k: u64) -> u32 {
        let mut acc = 0u32;
        let mut base = x;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn element_order(&self, x: u32) -> u64 {
        match &self.kind {
            Kind::Explicit(g) => g.element_order(x),
            Kind::Affine(g) => g.element_order(x),
        }
    }

    /// Least common multiple of all element orders.
    pub fn exponent(&self) -> u64 {
        *self.exponent.get_or_init(|| match &self.kind {
            Kind::Explicit(g) => {
                (0..g.order() as u32).fold(1u64, |e, x| lcm(e, g.element_order(x)))
            }
            Kind::Affine(g) => g.exponent(),
        })
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&x| gens.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
    }

    /// A small generating set (greedy: each new generator at least doubles
    /// the generated subgroup, so the set has at most log2 |G| members).
    pub fn generators(&self) -> &[u32] {
        self.generators.get_or_init(|| match &self.kind {
            Kind::Affine(g) => g.generators(),
            Kind::Explicit(g) => {
                let n = g.order() as u32;
                let mut gens: Vec<u32> = Vec::new();
                let mut have = generated_set(|x, y| g.mul(x, y), &gens);
                for x in 1..n {
                    if !have.contains(&x) {
                        gens.push(x);
                        have = generated_set(|a, b| g.mul(a, b), &gens);
                        if have.len() as u64 == g.order() {
                            break;
                        }
                    }
                }
                gens
            }
        })
    }

    pub fn classes(&self) -> &ConjugacyClassSet {
        self.classes.get_or_init(|| classes::compute(self))
    }

    /// The same group re-modeled with an explicit multiplication table
    /// (identical element ids), for engine cross-checks.
    pub fn to_explicit(&self) -> Result<FiniteGroup> {
        match &self.kind {
            Kind::Explicit(_) => Err(Error::Precondition(
                "group already uses the explicit model".into(),
            )),
            Kind::Affine(g) => {
                let table = ExplicitGroup::from_fn(g.order(), |x, y| g.mul(x, y))?;
                Ok(FiniteGroup::from_explicit(format!("{}[explicit]", self.label), table))
            }
        }
    }

    /// Subgroup generated by `seed` elements.
    pub fn subgroup_generated(&self, seed: &[u32]) -> Subgroup {
        let set = generated_set(|x, y| self.mul(x, y), seed);
        let mut elements: Vec<u32> = set.into_iter().collect();
        elements.sort_unstable();
        Subgroup { parent_order: self.order(), elements }
    }

    /// Smallest normal subgroup containing `seed`.
    pub fn normal_closure(&self, seed: &[u32]) -> Subgroup {
        let mut gens: Vec<u32> = seed.to_vec();
        loop {
            let k = self.subgroup_generated(&gens);
            let mut grew = false;
            for &x in gens.clone().iter() {
                for &g in self.generators() {
                    let c = self.conjugate(x, g);
                    if !k.contains(c) {
                        gens.push(c);
                        grew = true;
                    }
                }
            }
            if !grew {
                return k;
            }
        }
    }

    /// Derived subgroup G'. For the affine model this uses the structural
    /// form G' = H' ⋉ [V, H] (with [V, H] the H-module closure of the images
    /// of M(h) − 1); for explicit groups it is the normal closure of the
    /// generator commutators.
    pub fn derived_subgroup(&self) -> Subgroup {
        match &self.kind {
            Kind::Explicit(g) => {
                let gens = self.generators();
                let mut seed = Vec::new();
                for &x in gens {
                    for &y in gens {
                        let c = g.mul(g.mul(g.inv(x), g.inv(y)), g.mul(x, y));
                        if c != 0 {
                            seed.push(c);
                        }
                    }
                }
                self.normal_closure(&seed)
            }
            Kind::Affine(g) => {
                let h_group = ExplicitGroup::from_fn(g.h_order() as u64, |x, y| {
                    g.h_mul(x as usize, y as usize) as u32
                })
                .expect("H fits the explicit model");
                let hg = FiniteGroup::from_explicit("H", h_group);
                let h_derived = hg.derived_subgroup();
                // [V, H]: H-module closure of the images of M(h) − 1
                let p = g.p;
                let mut basis: Vec<Vec<u32>> = Vec::new();
                for &hi in g.h_generator_indices() {
                    let m = &g.matrices()[hi as usize];
                    for i in 0..g.a {
                        let mut row: Vec<u32> = (0..g.a).map(|j| m.at(i, j)).collect();
                        row[i] = (row[i] + p - 1) % p;
                        affine::add_to_span(&mut basis, &row, p);
                    }
                }
                loop {
                    let mut grew = false;
                    let snapshot = basis.clone();
                    for b in &snapshot {
                        for &hi in g.h_generator_indices() {
                            let mut img = vec![0u32; g.a];
                            g.matrices()[hi as usize].apply_row(b, &mut img);
                            if affine::add_to_span(&mut basis, &img, p) {
                                grew = true;
                            }
                        }
                    }
                    if !grew {
                        break;
                    }
                }
                let u = enumerate_span(&basis, g.a, p);
                let mut elements = Vec::with_capacity(h_derived.order() as usize * u.len());
                for &hh in h_derived.elements() {
                    for v in &u {
                        elements.push(g.encode(hh as usize, g.encode_vec(v)));
                    }
                }
                elements.sort_unstable();
                Subgroup { parent_order: self.order(), elements }
            }
        }
    }

    /// Normal p-complement test: true iff the p'-elements form a subgroup.
    /// On success the witness subgroup is verified to be conjugation-stable
    /// and of index equal to the p-part of |G|.
    pub fn has_normal_p_complement(&self, p: u64) -> (bool, Option<Subgroup>) {
        assert!(crate::numth::is_prime(p), "p must be prime");
        let order = self.order();
        let target = p_prime_part(order, p);
        let n = order as u32;
        let mut s: Vec<u32> = Vec::new();
        for x in 0..n {
            if self.element_order(x) % p != 0 {
                s.push(x);
            }
        }
        if s.len() as u64 != target {
            return (false, None);
        }
        // Right size; S is a subgroup iff |⟨S⟩| = |S|.
        let mut gens: Vec<u32> = Vec::new();
        let mut have = generated_set(|x, y| self.mul(x, y), &gens);
        for &x in &s {
            if !have.contains(&x) {
                gens.push(x);
                have = generated_set(|a, b| self.mul(a, b), &gens);
                if have.len() as u64 > target {
                    return (false, None);
                }
            }
        }
        debug_assert_eq!(have.len(), s.len());
        let witness = Subgroup { parent_order: order, elements: s };
        let normal = gens.iter().all(|&k| {
            self.generators()
                .iter()
                .all(|&g| witness.contains(self.conjugate(k, g)))
        });
        assert!(normal, "the set of all p'-elements is conjugation-stable");
        assert_eq!(order / witness.order(), p_part(order, p));
        (true, Some(witness))
    }

    /// Quotient by a normal subgroup, as an explicit group on cosets, with
    /// the projection map. Requires |G| within the explicit limit.
    pub fn quotient(&self, n_sub: &Subgroup) -> Result<(FiniteGroup, Vec<u32>)> {
        if self.order() > EXPLICIT_LIMIT {
            return Err(Error::ExplicitTooLarge { order: self.order(), limit: EXPLICIT_LIMIT });
        }
        if !n_sub.is_normal(self) {
            return Err(Error::NotNormal);
        }
        let n = self.order() as usize;
        const UNSEEN: u32 = u32::MAX;
        let mut coset_of = vec![UNSEEN; n];
        let mut reps: Vec<u32> = Vec::new();
        for x in 0..n as u32 {
            if coset_of[x as usize] != UNSEEN {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &k in n_sub.elements() {
                coset_of[self.mul(x, k) as usize] = id;
            }
        }
        let m = reps.len();
        let table = ExplicitGroup::from_fn(m as u64, |i, j| {
            coset_of[self.mul(reps[i as usize], reps[j as usize]) as usize]
        })?;
        let q = FiniteGroup::from_explicit(format!("{}/N{}", self.label, n_sub.order()), table);
        Ok((q, coset_of))
    }

    /// All minimal nontrivial normal subgroups (small groups only).
    pub fn minimal_normal_subgroups(&self) -> Vec<Subgroup> {
        let mut closures: Vec<Subgroup> = Vec::new();
        for x in 1..self.order() as u32 {
            let c = self.normal_closure(&[x]);
            if !closures.iter().any(|k| k.elements == c.elements) {
                closures.push(c);
            }
        }
        closures
            .iter()
            .filter(|c| {
                !closures
                    .iter()
                    .any(|d| d.order() > 1 && d.order() < c.order() && d.is_subset_of(c))
            })
            .cloned()
            .collect()
    }
}

/// Elements generated by `seed` under the multiplication closure.
fn generated_set(
    mul: impl Fn(u32, u32) -> u32,
    seed: &[u32],
) -> std::collections::HashSet<u32> {
    let mut set = std::collections::HashSet::with_capacity(seed.len() * 2 + 1);
    set.insert(0u32);
    let mut frontier = vec![0u32];
    while let Some(x) = frontier.pop() {
        for &g in seed {
            let y = mul(x, g);
            if set.insert(y) {
                frontier.push(y);
            }
        }
    }
    set
}

fn enumerate_span(basis: &[Vec<u32>], a: usize, p: u32) -> Vec<Vec<u32>> {
    let mut out = vec![vec![0u32; a]];
    for b in basis {
        let mut next = Vec::with_capacity(out.len() * p as usize);
        for v in &out {
            for c in 0..p {
                let w: Vec<u32> = v.iter().zip(b).map(|(&x, &y)| (x + c * y) % p).collect();
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// A subgroup stored as a sorted element list of its parent group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent_order: u64,
    elements: Vec<u32>,
}

impl Subgroup {
    /// Wraps an element list, verifying closure, identity, and inverses.
    pub fn new(parent: &FiniteGroup, mut elements: Vec<u32>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let s = Subgroup { parent_order: parent.order(), elements };
        s.verify(parent)?;
        Ok(s)
    }

    pub(crate) fn from_sorted(parent_order: u64, elements: Vec<u32>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Subgroup { parent_order, elements }
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        Subgroup { parent_order: parent.order(), elements: vec![0] }
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Subgroup {
            parent_order: parent.order(),
            elements: (0..parent.order() as u32).collect(),
        }
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn contains(&self, x: u32) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            parent_order: self.parent_order,
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }

    /// Closure/identity/inverse check (quadratic; intended for small groups).
    pub fn verify(&self, parent: &FiniteGroup) -> Result<()> {
        if !self.contains(0) {
            return Err(Error::Precondition("subgroup misses the identity".into()));
        }
        for &x in &self.elements {
            if !self.contains(parent.inv(x)) {
                return Err(Error::Precondition("subgroup not inverse-closed".into()));
            }
            for &y in &self.elements {
                if !self.contains(parent.mul(x, y)) {
                    return Err(Error::Precondition("subgroup not closed".into()));
                }
            }
        }
        Ok(())
    }

    pub fn is_normal(&self, parent: &FiniteGroup) -> bool {
        parent.generators().iter().all(|&g| {
            self.elements
                .iter()
                .all(|&x| self.contains(parent.conjugate(x, g)))
        })
    }
}

pub fn make_cyclic(n: u64) -> Result<FiniteGroup> {
    Ok(FiniteGroup::from_explicit(format!("cyclic:{n}"), ExplicitGroup::cyclic(n)?))
}

pub fn make_elementary_abelian(p: u64, a: u32) -> Result<FiniteGroup> {
    Ok(FiniteGroup::from_explicit(
        format!("elab:{p}^{a}"),
        ExplicitGroup::elementary_abelian(p, a)?,
    ))
}

pub fn make_direct_product(g1: &FiniteGroup, g2: &FiniteGroup) -> Result<FiniteGroup> {
    let order = g1.order().checked_mul(g2.order()).ok_or(Error::ExplicitTooLarge {
        order: u64::MAX,
        limit: EXPLICIT_LIMIT,
    })?;
    if order > EXPLICIT_LIMIT {
        return Err(Error::ExplicitTooLarge { order, limit: EXPLICIT_LIMIT });
    }
    let n2 = g2.order() as u32;
    let table = ExplicitGroup::from_fn(order, |x, y| {
        let (x1, x2) = (x / n2, x % n2);
        let (y1, y2) = (y / n2, y % n2);
        g1.mul(x1, y1) * n2 + g2.mul(x2, y2)
    })?;
    Ok(FiniteGroup::from_explicit(
        format!("prod:{}*{}", g1.label(), g2.label()),
        table,
    ))
}

pub fn make_affine(
    p: u32,
    a: usize,
    generators: &[Matrix],
    require_irreducible: bool,
    require_faithful: bool,
) -> Result<FiniteGroup> {
    let g = AffineGroup::new(p, a, generators, require_irreducible, require_faithful)?;
    let label = spec::render_affine_spec(p, a, generators);
    Ok(FiniteGroup::from_affine(label, g))
}

pub fn p_part(order: u64, p: u64) -> u64 {
    let mut part = 1;
    let mut rest = order;
    while rest % p == 0 {
        rest /= p;
        part *= p;
    }
    part
}

pub fn p_prime_part(order: u64, p: u64) -> u64 {
    order / p_part(order, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_basics() {
        let g = make_cyclic(3).unwrap();
        assert!(g.is_abelian());
        assert_eq!(g.classes().class_count(), 3);
        assert_eq!(g.exponent(), 3);
    }

    #[test]
    fn elementary_abelian_basics() {
        let g = make_elementary_abelian(3, 2).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(g.exponent(), 3);
        assert_eq!(g.classes().class_count(), 9);
    }

    #[test]
    fn direct_product_matches_cyclic_statistics() {
        let c3 = make_cyclic(3).unwrap();
        let c7 = make_cyclic(7).unwrap();
        let g = make_direct_product(&c3, &c7).unwrap();
        let c21 = make_cyclic(21).unwrap();
        assert_eq!(g.order(), c21.order());
        assert_eq!(g.exponent(), c21.exponent());
        let mut s1 = g.classes().sizes.clone();
        let mut s2 = c21.classes().sizes.clone();
        s1.sort_unstable();
        s2.sort_unstable();
        assert_eq!(s1, s2);
    }

    #[test]
    fn abelian_has_normal_p_complement_for_every_p() {
        let g = make_cyclic(45).unwrap();
        for p in [3, 5, 7] {
            let (ok, witness) = g.has_normal_p_complement(p);
            assert!(ok);
            assert_eq!(witness.unwrap().order(), p_prime_part(45, p));
        }
    }

    #[test]
    fn quotient_respects_orders() {
        let g = make_cyclic(45).unwrap();
        let n = g.subgroup_generated(&[5]); // order 9
        assert_eq!(n.order(), 9);
        let (q, proj) = g.quotient(&n).unwrap();
        assert_eq!(q.order() * n.order(), g.order());
        assert_eq!(proj.len(), 45);
    }

    #[test]
    fn abelian_derived_subgroup_is_trivial() {
        let g = make_elementary_abelian(5, 2).unwrap();
        assert_eq!(g.derived_subgroup().order(), 1);
    }

    #[test]
    fn class_equation_on_small_groups() {
        for g in [make_cyclic(9).unwrap(), make_elementary_abelian(3, 2).unwrap()] {
            let cls = g.classes();
            assert_eq!(cls.sizes.iter().sum::<u64>(), g.order());
            for &s in &cls.sizes {
                assert_eq!(g.order() % s, 0);
            }
        }
    }
}
