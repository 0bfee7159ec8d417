//! Generators for the extremal group families and the H-orbit analysis on
//! Irr(V): Frobenius groups with cyclic complement acting by field
//! multiplication, the three tight example families, and curated instances
//! with nonabelian H.

use serde::Serialize;

use crate::chartab::clifford::{self, DualOrbit};
use crate::group::spec::GroupSpec;
use crate::group::{make_affine, FiniteGroup, Matrix};
use crate::numth::{divisors, factorize, is_prime};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// F_{p^a} as F_p[x]/(f), with just enough arithmetic to build matrices
// ---------------------------------------------------------------------------

/// Dense polynomial over F_p, ascending coefficients.
type Poly = Vec<u64>;

fn poly_trim(p: &mut Poly) {
    while p.last() == Some(&0) {
        p.pop();
    }
}

fn poly_rem(num: &Poly, den: &Poly, p: u64) -> Poly {
    let mut r = num.clone();
    poly_trim(&mut r);
    let dd = den.len() - 1;
    let lead_inv = crate::numth::mod_inv(den[dd], p);
    while r.len() > dd {
        let k = r.len() - 1 - dd;
        let f = r[r.len() - 1] * lead_inv % p;
        if f != 0 {
            for i in 0..=dd {
                let t = f * den[i] % p;
                r[k + i] = (r[k + i] + p - t) % p;
            }
        }
        r.pop();
        poly_trim(&mut r);
    }
    r
}

fn poly_mulmod(a: &Poly, b: &Poly, modulus: &Poly, p: u64) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    poly_rem(&prod, modulus, p)
}

fn poly_powmod(base: &Poly, mut e: u64, modulus: &Poly, p: u64) -> Poly {
    let mut acc = vec![1u64];
    let mut b = poly_rem(base, modulus, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_mulmod(&acc, &b, modulus, p);
        }
        b = poly_mulmod(&b, &b, modulus, p);
        e >>= 1;
    }
    acc
}

fn poly_gcd(a: &Poly, b: &Poly, p: u64) -> Poly {
    let (mut a, mut b) = (a.clone(), b.clone());
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// x^{p^e} − x reduced mod f, for the irreducibility test.
fn frobenius_power_minus_x(e: u32, f: &Poly, p: u64) -> Poly {
    let pe = p.pow(e);
    let x = vec![0u64, 1];
    let mut g = poly_powmod(&x, pe, f, p);
    if g.len() < 2 {
        g.resize(2, 0);
    }
    g[1] = (g[1] + p - 1) % p;
    poly_trim(&mut g);
    g
}

fn is_irreducible(f: &Poly, p: u64) -> bool {
    let a = (f.len() - 1) as u32;
    if a == 1 {
        return true;
    }
    if !frobenius_power_minus_x(a, f, p).is_empty() {
        return false;
    }
    for (r, _) in factorize(a as u64) {
        let g = frobenius_power_minus_x(a / r as u32, f, p);
        if poly_gcd(f, &g, p).len() != 1 {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree a.
fn smallest_irreducible(p: u64, a: u32) -> Poly {
    let mut coeffs = vec![0u64; a as usize];
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if f[0] != 0 && is_irreducible(&f, p) {
            return f;
        }
        let mut i = 0;
        loop {
            assert!(i < coeffs.len(), "no irreducible polynomial of degree {a} over F_{p}");
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}

/// A concrete model of F_{p^a}, enough to build multiplication and Frobenius
/// matrices over the prime field.
pub struct FieldModel {
    pub p: u64,
    pub a: u32,
    modulus: Poly,
}

impl FieldModel {
    pub fn new(p: u64, a: u32) -> Self {
        assert!(is_prime(p) && a >= 1);
        FieldModel { p, a, modulus: smallest_irreducible(p, a) }
    }

    fn mul(&self, x: &Poly, y: &Poly) -> Poly {
        poly_mulmod(x, y, &self.modulus, self.p)
    }

    fn pow(&self, x: &Poly, e: u64) -> Poly {
        poly_powmod(x, e, &self.modulus, self.p)
    }

    fn order_of(&self, x: &Poly) -> u64 {
        let full = self.p.pow(self.a) - 1;
        divisors(full)
            .into_iter()
            .find(|&d| self.pow(x, d) == vec![1])
            .expect("nonzero element order divides p^a − 1")
    }

    fn decode(&self, mut code: u64) -> Poly {
        let mut out = Vec::new();
        while code > 0 {
            out.push(code % self.p);
            code /= self.p;
        }
        out
    }

    /// Smallest generator of the multiplicative group in the coefficient
    /// encoding order.
    fn primitive_element(&self) -> Poly {
        let full = self.p.pow(self.a) - 1;
        for code in 1..self.p.pow(self.a) {
            let x = self.decode(code);
            if self.order_of(&x) == full {
                return x;
            }
        }
        unreachable!("the multiplicative group is cyclic")
    }

    /// Matrix (row convention) of multiplication by `g` in the basis
    /// 1, x, …, x^{a−1}.
    pub fn multiplication_matrix(&self, g: &Poly) -> Matrix {
        let a = self.a as usize;
        let mut m = Matrix::zero(a, self.p as u32);
        for i in 0..a {
            let mut xi = vec![0u64; i + 1];
            xi[i] = 1;
            let img = self.mul(&xi, g);
            for (j, &c) in img.iter().enumerate() {
                m.e[i * a + j] = c as u32;
            }
        }
        m
    }

    /// Matrix of the F_p-linear field map x ↦ x^{p^e}.
    pub fn frobenius_matrix(&self, e: u32) -> Matrix {
        let a = self.a as usize;
        let pe = self.p.pow(e);
        let mut m = Matrix::zero(a, self.p as u32);
        for i in 0..a {
            let mut xi = vec![0u64; i + 1];
            xi[i] = 1;
            let img = self.pow(&xi, pe);
            for (j, &c) in img.iter().enumerate() {
                m.e[i * a + j] = c as u32;
            }
        }
        m
    }

    /// An element of multiplicative order exactly h (requires h | p^a − 1).
    pub fn element_of_order(&self, h: u64) -> Poly {
        let full = self.p.pow(self.a) - 1;
        assert_eq!(full % h, 0);
        let g = self.primitive_element();
        self.pow(&g, full / h)
    }
}

// ---------------------------------------------------------------------------
// The families
// ---------------------------------------------------------------------------

/// Cyclic-complement Frobenius group of order h·p^a: H = ⟨multiplication by
/// an order-h element of F_{p^a}^×⟩ acting on V = F_p^a.
///
/// Preconditions: p odd prime; h odd, h > 1, h | p^a − 1; and the subfield
/// criterion for irreducibility (h ∤ p^b − 1 for every proper divisor b of a).
pub fn frobenius_cyclic(p: u32, a: u32, h: u64) -> Result<FiniteGroup> {
    if !is_prime(p as u64) || p == 2 {
        return Err(Error::Precondition(format!("p = {p} must be an odd prime")));
    }
    if h % 2 == 0 || h <= 1 {
        return Err(Error::Precondition(format!("h = {h} must be odd and > 1")));
    }
    let pa = (p as u64).pow(a);
    if (pa - 1) % h != 0 {
        return Err(Error::Precondition(format!(
            "h = {h} must divide p^a − 1 = {}",
            pa - 1
        )));
    }
    for b in 1..a {
        if a % b == 0 && ((p as u64).pow(b) - 1) % h == 0 {
            return Err(Error::ReducibleModule);
        }
    }
    let field = FieldModel::new(p as u64, a);
    let gamma = field.element_of_order(h);
    let m = field.multiplication_matrix(&gamma);
    let g = make_affine(p, a as usize, &[m], true, true)?;
    Ok(FiniteGroup::from_affine(
        format!("frob:{p},{a},{h}"),
        g.affine().unwrap().clone(),
    ))
}

/// Order 3p with p ≡ 1 (mod 3): the tight family for the acd bound
/// 3(p+2)/(p+8) and, over Q(ζ_p), for 3p/(p+2).
pub fn example1(p: u32) -> Result<FiniteGroup> {
    if p % 3 != 1 {
        return Err(Error::Precondition(format!(
            "example1 needs p ≡ 1 (mod 3), got {p}"
        )));
    }
    frobenius_cyclic(p, 1, 3)
}

/// Order 3p² with p ≡ 2 (mod 3), (p−1)/2 even: tight for 3(p²+2)/(p²+8)
/// and, over Q(ζ_p), for 3p²/(p²+2).
pub fn example2(p: u32) -> Result<FiniteGroup> {
    if p % 3 != 2 || ((p as u64 - 1) / 2) % 2 != 0 {
        return Err(Error::Precondition(format!(
            "example2 needs p ≡ 2 (mod 3) with (p−1)/2 even, got {p}"
        )));
    }
    frobenius_cyclic(p, 2, 3)
}

/// Order p(p−1)/2 with p ≡ 2 (mod 3), (p−1)/2 odd: tight for 3(p−1)/(p+3).
pub fn example3(p: u32) -> Result<FiniteGroup> {
    if p % 3 != 2 || ((p as u64 - 1) / 2) % 2 != 1 {
        return Err(Error::Precondition(format!(
            "example3 needs p ≡ 2 (mod 3) with (p−1)/2 odd, got {p}"
        )));
    }
    frobenius_cyclic(p, 1, (p as u64 - 1) / 2)
}

/// The Frobenius group of order 21 = C7 ⋊ C3 as matrices over F_p acting on
/// F_{p^6}: C7 embeds multiplicatively (ord_7(p) = 6 makes the module
/// irreducible already on C7) and the field map x ↦ x^{p²} normalizes it
/// with order 3.
fn f21_on_field_power_six(p: u32) -> Result<FiniteGroup> {
    assert_eq!(crate::numth::multiplicative_order(p as u64, 7), 6);
    let field = FieldModel::new(p as u64, 6);
    let gamma = field.element_of_order(7);
    let mul = field.multiplication_matrix(&gamma);
    let frob = field.frobenius_matrix(2);
    make_affine(p, 6, &[mul, frob], true, true)
}

/// Extraspecial group of order 27 (exponent 3) in its 3-dimensional
/// representation over F_7: coordinate shift and diag(1, ω, ω²), ω³ = 1.
fn extraspecial27_on_f7() -> Result<FiniteGroup> {
    let shift = Matrix { a: 3, p: 7, e: vec![0, 1, 0, 0, 0, 1, 1, 0, 0] };
    let omega = 2u32;
    let mut diag = Matrix::zero(3, 7);
    diag.e[0] = 1;
    diag.e[4] = omega;
    diag.e[8] = omega * omega % 7;
    make_affine(7, 3, &[shift, diag], true, true)
}

/// Curated instances with nonabelian H of odd order acting faithfully and
/// irreducibly, capped by `budget` on |G| = |H|·p^a. At minimum (budget
/// permitting): F21 on F_3^6 and on F_5^6, plus an extraspecial-27 instance.
pub fn nonabelian_h_instances(budget: u64) -> Result<Vec<FiniteGroup>> {
    let mut out = Vec::new();
    for p in [3u32, 5] {
        let order = 21 * (p as u64).pow(6);
        if order <= budget {
            out.push(f21_on_field_power_six(p)?);
        }
    }
    if 27 * 343 <= budget {
        out.push(extraspecial27_on_f7()?);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Orbit analysis
// ---------------------------------------------------------------------------

/// Per-orbit data for the H-action on Irr(V) ∖ {1_V}.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitAnalysis {
    pub group: String,
    pub p: u64,
    pub module_size: u64,
    pub orbit_lengths: Vec<u64>,
    pub stabilizer_orders: Vec<u64>,
    pub core_free: Vec<bool>,
    pub p_coprime_length: Vec<bool>,
}

pub fn orbit_analysis(g: &FiniteGroup) -> Result<OrbitAnalysis> {
    let aff = g
        .affine()
        .ok_or_else(|| Error::Precondition("orbit analysis needs the affine model".into()))?;
    let orbits = clifford::dual_orbits(aff);
    let hg = clifford::h_group(aff);
    let p = aff.p as u64;
    let core_free: Vec<bool> = orbits
        .iter()
        .map(|o| {
            let stab: Vec<u32> = o.stabilizer.iter().map(|&t| t as u32).collect();
            let core: Vec<u32> = stab
                .iter()
                .copied()
                .filter(|&t| {
                    (0..aff.h_order() as u32)
                        .all(|h| stab.binary_search(&hg.conjugate(t, h)).is_ok())
                })
                .collect();
            core.len() == 1
        })
        .collect();
    Ok(OrbitAnalysis {
        group: g.label().to_string(),
        p,
        module_size: aff.module_size(),
        orbit_lengths: orbits.iter().map(|o| o.length).collect(),
        stabilizer_orders: orbits.iter().map(|o| o.stabilizer.len() as u64).collect(),
        core_free,
        p_coprime_length: orbits.iter().map(|o| o.length % p != 0).collect(),
    })
}

/// Orbit lengths under the non-dual convention (w ↦ w·M(h)), sorted; the
/// statistics must agree with the dual convention.
pub fn direct_orbit_lengths(g: &FiniteGroup) -> Result<Vec<u64>> {
    let aff = g
        .affine()
        .ok_or_else(|| Error::Precondition("orbit analysis needs the affine model".into()))?;
    Ok(clifford::direct_orbit_lengths(aff))
}

pub fn dual_orbits_of(g: &FiniteGroup) -> Result<Vec<DualOrbit>> {
    let aff = g
        .affine()
        .ok_or_else(|| Error::Precondition("orbit analysis needs the affine model".into()))?;
    Ok(clifford::dual_orbits(aff))
}

// ---------------------------------------------------------------------------
// Spec building and the corpus manifest
// ---------------------------------------------------------------------------

/// Materializes a parsed group spec.
pub fn build_group(spec: &GroupSpec) -> Result<FiniteGroup> {
    match spec {
        GroupSpec::Cyclic(n) => crate::group::make_cyclic(*n),
        GroupSpec::Elab { p, a } => crate::group::make_elementary_abelian(*p, *a),
        GroupSpec::Frob { p, a, h } => frobenius_cyclic(*p, *a, *h),
        GroupSpec::Affine { p, a, gens } => make_affine(*p, *a, gens, false, true),
        GroupSpec::Prod(factors) => {
            let built: Vec<FiniteGroup> =
                factors.iter().map(build_group).collect::<Result<Vec<_>>>()?;
            let mut acc = explicit_copy(&built[0])?;
            for g in &built[1..] {
                let g = explicit_copy(g)?;
                acc = crate::group::make_direct_product(&acc, &g)?;
            }
            Ok(rename(acc, spec.render()))
        }
    }
}

fn explicit_copy(g: &FiniteGroup) -> Result<FiniteGroup> {
    match g.affine() {
        Some(_) => g.to_explicit(),
        None => {
            let table = crate::group::ExplicitGroup::from_fn(g.order(), |x, y| g.mul(x, y))?;
            Ok(FiniteGroup::from_explicit(g.label().to_string(), table))
        }
    }
}

fn rename(g: FiniteGroup, label: String) -> FiniteGroup {
    match g.affine() {
        Some(aff) => FiniteGroup::from_affine(label, aff.clone()),
        None => {
            let table = crate::group::ExplicitGroup::from_fn(g.order(), |x, y| g.mul(x, y))
                .expect("already explicit");
            FiniteGroup::from_explicit(label, table)
        }
    }
}

/// Builds a group from its spec string.
pub fn build_from_str(s: &str) -> Result<FiniteGroup> {
    build_group(&GroupSpec::parse(s)?)
}

/// All (p, a, h) with p^a ≤ cap admitting frobenius_cyclic: p odd prime,
/// h odd > 1 dividing p^a − 1, subfield criterion satisfied.
pub fn frobenius_family(cap_pa: u64) -> Vec<(u32, u32, u64)> {
    let mut out = Vec::new();
    for p in (3..=cap_pa).filter(|&p| is_prime(p)) {
        let mut a = 1u32;
        while p.pow(a) <= cap_pa {
            let pa = p.pow(a);
            for h in divisors(pa - 1) {
                if h > 1 && h % 2 == 1 {
                    let reducible =
                        (1..a).any(|b| a % b == 0 && (p.pow(b) - 1) % h == 0);
                    if !reducible {
                        out.push((p as u32, a, h));
                    }
                }
            }
            a += 1;
        }
    }
    out.sort_by_key(|&(p, a, h)| (p.pow(a), h, p));
    out
}

/// The default corpus: the tight example families, every cyclic-complement
/// Frobenius group with p^a ≤ 343 (this includes the characteristic-3
/// family up to a = 5), abelian and direct-product fillers, and the curated
/// nonabelian instances.
pub fn default_corpus() -> Vec<String> {
    let mut specs: Vec<String> = Vec::new();
    let mut push = |s: String| {
        if !specs.contains(&s) {
            specs.push(s);
        }
    };
    for p in [7u32, 13, 31] {
        push(format!("frob:{p},1,3"));
    }
    for p in [5u32, 17, 29] {
        push(format!("frob:{p},2,3"));
    }
    for p in [11u32, 23] {
        push(format!("frob:{p},1,{}", (p - 1) / 2));
    }
    for (p, a, h) in frobenius_family(343) {
        push(format!("frob:{p},{a},{h}"));
    }
    for n in [3u64, 9, 15, 21, 27, 45, 63, 81, 105, 135] {
        push(format!("cyclic:{n}"));
    }
    for (p, a) in [(3u64, 2u32), (3, 3), (5, 2), (7, 2), (11, 2)] {
        push(format!("elab:{p}^{a}"));
    }
    push("prod:cyclic:3*frob:7,1,3".to_string());
    push("prod:cyclic:5*frob:7,1,3".to_string());
    push("prod:cyclic:3*cyclic:9".to_string());
    if let Ok(instances) = nonabelian_h_instances(400_000) {
        for g in instances {
            push(g.label().to_string());
        }
    }
    specs
}

/// Parses a corpus manifest: one spec per line, `#` comments and blank
/// lines ignored.
pub fn parse_manifest(text: &str) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        GroupSpec::parse(line)?;
        out.push(line.to_string());
    }
    Ok(out)
}

pub fn render_manifest(specs: &[String]) -> String {
    let mut s = String::from("# corpus manifest: one group spec per line\n");
    for spec in specs {
        s.push_str(spec);
        s.push('\n');
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_cyclic_orders() {
        assert_eq!(frobenius_cyclic(7, 1, 3).unwrap().order(), 21);
        assert_eq!(frobenius_cyclic(5, 2, 3).unwrap().order(), 75);
        assert_eq!(frobenius_cyclic(11, 1, 5).unwrap().order(), 55);
        assert_eq!(frobenius_cyclic(3, 3, 13).unwrap().order(), 351);
    }

    #[test]
    fn frobenius_cyclic_rejects_bad_parameters() {
        assert!(frobenius_cyclic(7, 1, 2).is_err()); // even h
        assert!(frobenius_cyclic(7, 1, 5).is_err()); // 5 ∤ 6
        assert!(matches!(frobenius_cyclic(7, 2, 3), Err(Error::ReducibleModule)));
        assert!(frobenius_cyclic(2, 1, 3).is_err()); // even p
    }

    #[test]
    fn example_families() {
        assert_eq!(example1(7).unwrap().order(), 21);
        assert_eq!(example2(5).unwrap().order(), 75);
        assert_eq!(example3(11).unwrap().order(), 55);
        assert!(example1(5).is_err());
        assert!(example2(7).is_err());
        assert!(example3(5).is_err()); // (5−1)/2 = 2 is even
    }

    #[test]
    fn order21_conjugacy_classes() {
        let g = frobenius_cyclic(7, 1, 3).unwrap();
        let mut sizes = g.classes().sizes.clone();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 3, 7, 7]);
        assert_eq!(g.exponent(), 21);
        assert!(!g.is_abelian());
    }

    #[test]
    fn order21_derived_subgroup_is_v() {
        let g = frobenius_cyclic(7, 1, 3).unwrap();
        let d = g.derived_subgroup();
        assert_eq!(d.order(), 7);
        // brute-force oracle on the explicit model
        let e = g.to_explicit().unwrap();
        let mut seed = Vec::new();
        for x in 0..21u32 {
            for y in 0..21u32 {
                let c = e.mul(e.mul(e.inv(x), e.inv(y)), e.mul(x, y));
                if c != 0 {
                    seed.push(c);
                }
            }
        }
        let oracle = e.subgroup_generated(&seed);
        assert_eq!(d.elements(), oracle.elements());
    }

    #[test]
    fn order21_p_complements() {
        let g = frobenius_cyclic(7, 1, 3).unwrap();
        let (ok3, w3) = g.has_normal_p_complement(3);
        assert!(ok3);
        assert_eq!(w3.unwrap().order(), 7);
        let (ok7, w7) = g.has_normal_p_complement(7);
        assert!(!ok7 && w7.is_none());
    }

    #[test]
    fn order75_has_eleven_classes_and_cyclic_quotient() {
        let g = frobenius_cyclic(5, 2, 3).unwrap();
        assert_eq!(g.classes().class_count(), 11);
        let e = g.to_explicit().unwrap();
        let v = e.derived_subgroup();
        assert_eq!(v.order(), 25);
        let (q, _) = e.quotient(&v).unwrap();
        assert_eq!(q.order(), 3);
        assert!(q.is_abelian());
    }

    #[test]
    fn trivial_h_edge_case() {
        let m = Matrix::identity(1, 5);
        let g = make_affine(5, 1, &[m], false, true).unwrap();
        assert_eq!(g.order(), 5);
        assert!(g.is_abelian());
    }

    #[test]
    fn order351_two_orbits_of_thirteen() {
        let g = frobenius_cyclic(3, 3, 13).unwrap();
        let orbits = dual_orbits_of(&g).unwrap();
        let lengths: Vec<u64> = orbits.iter().map(|o| o.length).collect();
        assert_eq!(lengths, vec![13, 13]);
    }

    #[test]
    fn order21_orbits_match_hand_computation() {
        // ⟨2⟩ on F_7^*: orbits {1,2,4} and {3,5,6}
        let g = frobenius_cyclic(7, 1, 3).unwrap();
        let orbits = dual_orbits_of(&g).unwrap();
        let lengths: Vec<u64> = orbits.iter().map(|o| o.length).collect();
        assert_eq!(lengths, vec![3, 3]);
        assert_eq!(direct_orbit_lengths(&g).unwrap(), vec![3, 3]);
    }

    #[test]
    fn nonabelian_instances_respect_budget() {
        assert!(nonabelian_h_instances(1000).unwrap().is_empty());
        let orders: Vec<u64> =
            nonabelian_h_instances(400_000).unwrap().iter().map(|g| g.order()).collect();
        assert_eq!(orders, vec![15309, 328125, 9261]);
        for g in nonabelian_h_instances(400_000).unwrap() {
            assert_eq!(g.order() % 2, 1);
        }
    }

    #[test]
    fn multiplicative_order_oracles() {
        // ord_7(5) = 6 and ord_7(3) = 6 by direct modular exponentiation
        for p in [3u64, 5] {
            let mut acc = 1u64;
            let mut ord = 0;
            for k in 1..=6 {
                acc = acc * p % 7;
                if acc == 1 {
                    ord = k;
                    break;
                }
            }
            assert_eq!(ord, 6, "ord_7({p})");
        }
    }

    #[test]
    fn build_from_spec_strings() {
        assert_eq!(build_from_str("frob:7,1,3").unwrap().order(), 21);
        assert_eq!(build_from_str("cyclic:9").unwrap().order(), 9);
        assert_eq!(build_from_str("elab:3^2").unwrap().order(), 9);
        let g = build_from_str("prod:cyclic:3*frob:7,1,3").unwrap();
        assert_eq!(g.order(), 63);
        assert_eq!(g.label(), "prod:cyclic:3*frob:7,1,3");
    }

    #[test]
    fn frobenius_family_members() {
        let fam = frobenius_family(343);
        assert!(fam.contains(&(7, 1, 3)));
        assert!(fam.contains(&(3, 5, 121)));
        assert!(fam.contains(&(3, 5, 11)));
        assert!(fam.contains(&(7, 3, 9)));
        assert!(!fam.contains(&(7, 2, 3))); // reducible
        assert!(fam.iter().all(|&(p, a, _)| (p as u64).pow(a) <= 343));
    }

    #[test]
    fn manifest_round_trip() {
        let specs = vec!["frob:7,1,3".to_string(), "cyclic:9".to_string()];
        let text = render_manifest(&specs);
        assert_eq!(parse_manifest(&text).unwrap(), specs);
        assert!(parse_manifest("bogus:1\n").is_err());
    }
}
