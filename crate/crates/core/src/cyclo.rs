//! Exact arithmetic in cyclotomic fields Q(ζ_n).
//!
//! Every character value in this crate is a [`CyclotomicNumber`]: a rational
//! linear combination of roots of unity, stored in a canonical integral basis
//! so that equality of field elements is syntactic equality of the storage.
//!
//! # Canonical form
//!
//! For n = ∏ p^ν the field Q(ζ_n) is the tensor product of the prime-power
//! pieces Q(ζ_{p^ν}). Writing each exponent i (mod n) through the CRT as a
//! tuple of local exponents a_q ∈ [0, q) for q = p^ν ‖ n, the monomials ζ_n^i
//! whose every local exponent has top base-p digit different from p−1 form a
//! Q-basis of Q(ζ_n) (a Zumbroich-style tensor basis: per prime power it is
//! the power basis cut off below the degree of Φ_{p^ν}). A monomial outside
//! the basis is rewritten with the vanishing sum of p-th roots of unity,
//!
//!   ζ_n^i = −(ζ_n^{i + n/p} + ζ_n^{i + 2n/p} + … + ζ_n^{i + (p−1)n/p}),
//!
//! which fixes the offending prime in a single step and leaves the other
//! local exponents untouched. After reduction the value is re-based to the
//! smallest cyclotomic field containing it, so the stored `order` is always
//! the conductor and equal values have identical storage regardless of how
//! they were produced.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Zero};
use serde::Serialize;

use crate::numth::{factorize, gcd, lcm, mod_inv};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// An exact element of a cyclotomic field.
///
/// Invariants (maintained by every constructor):
/// - coefficients are the canonical-basis coordinates, zero coefficients
///   removed; zero is the empty map at order 1;
/// - `order` is the conductor of the value (so `order` never is ≡ 2 mod 4).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CyclotomicNumber {
    order: u64,
    coeffs: BTreeMap<u64, Rational>,
}

/// Per-prime reduction data for a fixed ambient order n.
struct PrimeLocal {
    p: u64,
    q: u64,        // p^ν
    top: u64,      // p^{ν−1}
    n_over_p: u64, // n / p
    inv_cofactor: u64, // (n/q)^{-1} mod q
}

fn prime_locals(n: u64) -> Vec<PrimeLocal> {
    factorize(n)
        .into_iter()
        .map(|(p, e)| {
            let q = p.pow(e);
            PrimeLocal {
                p,
                q,
                top: p.pow(e - 1),
                n_over_p: n / p,
                inv_cofactor: mod_inv((n / q) % q, q),
            }
        })
        .collect()
}

impl PrimeLocal {
    /// Local CRT exponent a_q of the monomial ζ_n^i.
    fn local(&self, i: u64) -> u64 {
        (i % self.q) * self.inv_cofactor % self.q
    }
}

impl CyclotomicNumber {
    pub fn zero() -> Self {
        CyclotomicNumber { order: 1, coeffs: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !r.is_zero() {
            coeffs.insert(0, r);
        }
        CyclotomicNumber { order: 1, coeffs }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(rational::int(n))
    }

    /// ζ_n^k.
    pub fn root_of_unity(n: u64, k: u64) -> Self {
        assert!(n >= 1);
        Self::from_terms(n, [(k, Rational::one())])
    }

    /// Builds and canonicalizes a value from raw (exponent, coefficient)
    /// terms over the ambient order `n`. This is the single normalization
    /// entry point; all arithmetic funnels through it.
    pub fn from_terms<I>(n: u64, terms: I) -> Self
    where
        I: IntoIterator<Item = (u64, Rational)>,
    {
        assert!(n >= 1);
        let locals = prime_locals(n);
        let mut acc: BTreeMap<u64, Rational> = BTreeMap::new();
        let mut work: Vec<(u64, Rational)> = Vec::new();
        for (e, c) in terms {
            if c.is_zero() {
                continue;
            }
            work.clear();
            work.push((e % n, c));
            for pl in &locals {
                let mut next = Vec::with_capacity(work.len());
                for (e, c) in work.drain(..) {
                    let a = pl.local(e);
                    if a / pl.top == pl.p - 1 {
                        // top digit p−1: expand by the vanishing p-th root sum
                        for step in 1..pl.p {
                            next.push(((e + step * pl.n_over_p) % n, -c.clone()));
                        }
                    } else {
                        next.push((e, c));
                    }
                }
                work = next;
            }
            for (e, c) in work.drain(..) {
                let entry = acc.entry(e).or_insert_with(Rational::zero);
                *entry += c;
            }
        }
        acc.retain(|_, c| !c.is_zero());
        Self::rebase_to_conductor(n, &locals, acc)
    }

    /// Shrinks the ambient order to the smallest cyclotomic field containing
    /// the (already basis-reduced) value.
    fn rebase_to_conductor(
        n: u64,
        locals: &[PrimeLocal],
        coeffs: BTreeMap<u64, Rational>,
    ) -> Self {
        if coeffs.is_empty() {
            return Self::zero();
        }
        let mut f = 1u64;
        for pl in locals {
            // needed local modulus p^μ: μ = ν − min_i v_p(a_q(i))
            let nu = {
                let mut nu = 0;
                let mut q = pl.q;
                while q % pl.p == 0 {
                    q /= pl.p;
                    nu += 1;
                }
                nu
            };
            let mut min_val = nu;
            for &i in coeffs.keys() {
                let a = pl.local(i);
                let mut v = 0u32;
                if a == 0 {
                    v = nu;
                } else {
                    let mut a = a;
                    while a % pl.p == 0 {
                        a /= pl.p;
                        v += 1;
                    }
                }
                min_val = min_val.min(v);
                if min_val == 0 {
                    break;
                }
            }
            f *= pl.p.pow(nu - min_val);
        }
        if f == n {
            return CyclotomicNumber { order: n, coeffs };
        }
        // Every surviving monomial is a root of unity of order dividing f,
        // so ζ_n^i = ζ_f^{i·f/n} exactly.
        let rebased: BTreeMap<u64, Rational> =
            coeffs.into_iter().map(|(i, c)| (i * f / n, c)).collect();
        debug_assert!({
            let fl = prime_locals(f);
            rebased
                .keys()
                .all(|&i| fl.iter().all(|pl| pl.local(i) / pl.top != pl.p - 1))
        });
        CyclotomicNumber { order: f, coeffs: rebased }
    }

    /// Conductor of the value: the least f with v ∈ Q(ζ_f). Canonical storage
    /// keeps the ambient order equal to the conductor.
    pub fn conductor(&self) -> u64 {
        self.order
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> &BTreeMap<u64, Rational> {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.is_zero() {
            return Some(Rational::zero());
        }
        if self.order == 1 {
            return self.coeffs.get(&0).cloned();
        }
        None
    }

    /// Whether the value lies in Q(ζ_m). Q(ζ_m) contains the roots of unity
    /// of order dividing lcm(2, m), so membership is conductor | lcm(2, m).
    pub fn in_cyclotomic_field(&self, m: u64) -> bool {
        lcm(2, m) % self.order == 0
    }

    /// The same value expressed over a multiple `n` of the current order.
    pub fn raw_terms_at(&self, n: u64) -> impl Iterator<Item = (u64, Rational)> + '_ {
        assert!(n % self.order == 0, "target order must be a multiple");
        let scale = n / self.order;
        self.coeffs.iter().map(move |(&e, c)| (e * scale, c.clone()))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = lcm(self.order, other.order);
        Self::from_terms(n, self.raw_terms_at(n).chain(other.raw_terms_at(n)))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let n = lcm(self.order, other.order);
        let a: Vec<(u64, Rational)> = self.raw_terms_at(n).collect();
        let b: Vec<(u64, Rational)> = other.raw_terms_at(n).collect();
        let mut terms = Vec::with_capacity(a.len() * b.len());
        for (e1, c1) in &a {
            for (e2, c2) in &b {
                terms.push(((e1 + e2) % n, c1 * c2));
            }
        }
        Self::from_terms(n, terms)
    }

    pub fn scale(&self, r: &Rational) -> Self {
        if r.is_zero() {
            return Self::zero();
        }
        CyclotomicNumber {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(&e, c)| (e, c * r)).collect(),
        }
    }

    /// Complex conjugation: the Galois map ζ ↦ ζ^{-1} at the value's order.
    pub fn conj(&self) -> Self {
        let n = self.order;
        let j = if n == 1 { 0 } else { n - 1 };
        GaloisAutomorphism::new(n, j)
            .expect("ζ ↦ ζ^{-1} is always an automorphism")
            .apply(self)
            .expect("order matches by construction")
    }

    /// Applies ζ_f ↦ ζ_f^{j mod f} where f is the stored order. Valid for any
    /// j coprime to a multiple of f (e.g. the group exponent).
    pub fn galois_exponent(&self, j: u64) -> Result<Self> {
        let f = self.order;
        GaloisAutomorphism::new(f, j % f)?.apply(self)
    }
}

impl fmt::Display for CyclotomicNumber {
    /// Renders `a0 + a1*z^1 + …` over the stored order; rationals print as
    /// `num/den` when not integral.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *e == 0 {
                write!(f, "{}", c)?;
            } else if c.is_one() {
                write!(f, "z^{}", e)?;
            } else {
                write!(f, "{}*z^{}", c, e)?;
            }
        }
        Ok(())
    }
}

/// Serialized form declares the ambient order alongside the rendering.
impl Serialize for CyclotomicNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CyclotomicNumber", 2)?;
        st.serialize_field("n", &self.order)?;
        st.serialize_field("value", &self.to_string())?;
        st.end()
    }
}

/// The automorphism σ_j of Q(ζ_n) with ζ_n ↦ ζ_n^j, gcd(j, n) = 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaloisAutomorphism {
    order: u64,
    exponent: u64,
}

impl GaloisAutomorphism {
    pub fn new(order: u64, exponent: u64) -> Result<Self> {
        assert!(order >= 1);
        if order == 1 {
            return Ok(GaloisAutomorphism { order, exponent: 0 });
        }
        let j = exponent % order;
        if gcd(j, order) != 1 {
            return Err(Error::Precondition(format!(
                "gcd({exponent}, {order}) != 1: not a Galois automorphism"
            )));
        }
        Ok(GaloisAutomorphism { order, exponent: j })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    /// Composition σ_{j1} ∘ σ_{j2} = σ_{j1·j2 mod n}.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.order != other.order {
            return Err(Error::Precondition("automorphism orders differ".into()));
        }
        Self::new(self.order, self.exponent * other.exponent % self.order.max(1))
    }

    /// Applies the automorphism; requires the value stored at this order.
    pub fn apply(&self, v: &CyclotomicNumber) -> Result<CyclotomicNumber> {
        if v.order() != self.order {
            return Err(Error::Precondition(format!(
                "automorphism of Q(ζ_{}) applied to a value of conductor {}",
                self.order,
                v.order()
            )));
        }
        Ok(CyclotomicNumber::from_terms(
            self.order,
            v.coeffs.iter().map(|(&e, c)| (e * self.exponent % self.order, c.clone())),
        ))
    }

    /// All automorphisms of Q(ζ_n).
    pub fn all(order: u64) -> Vec<Self> {
        if order == 1 {
            return vec![GaloisAutomorphism { order: 1, exponent: 0 }];
        }
        (1..order)
            .filter(|&j| gcd(j, order) == 1)
            .map(|j| GaloisAutomorphism { order, exponent: j })
            .collect()
    }
}

/// Sum of ζ_n^e over an iterator of exponents, each with coefficient 1.
pub fn root_sum<I: IntoIterator<Item = u64>>(n: u64, exps: I) -> CyclotomicNumber {
    CyclotomicNumber::from_terms(n, exps.into_iter().map(|e| (e, Rational::one())))
}

/// Sum of many values with a single normalization pass.
pub fn sum_values(values: &[CyclotomicNumber]) -> CyclotomicNumber {
    let n = values.iter().fold(1u64, |n, v| lcm(n, v.order()));
    CyclotomicNumber::from_terms(
        n,
        values.iter().flat_map(|v| v.raw_terms_at(n).collect::<Vec<_>>()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn zeta(n: u64, k: u64) -> CyclotomicNumber {
        CyclotomicNumber::root_of_unity(n, k)
    }

    #[test]
    fn vanishing_sum_of_cube_roots() {
        let v = zeta(3, 0).add(&zeta(3, 1)).add(&zeta(3, 2));
        assert!(v.is_zero());
        assert_eq!(v, CyclotomicNumber::zero());
    }

    #[test]
    fn zeta6_equals_minus_zeta3_squared() {
        // ζ_6 = −ζ_3², both embedded at order 6.
        let lhs = zeta(6, 1);
        let rhs = zeta(6, 4).neg(); // ζ_6^4 = ζ_3²
        assert_eq!(lhs, rhs);
        // conductor drops to 3 because Q(ζ_6) = Q(ζ_3)
        assert_eq!(lhs.conductor(), 3);
    }

    #[test]
    fn gauss_period_is_nonzero_with_expected_minimal_polynomial() {
        // η = ζ_7 + ζ_7² + ζ_7⁴. Oracle: expand the Galois-orbit product
        // ∏ (x − σ(η)) over the distinct conjugates; the result must be
        // x² + x + 2, which has no rational root, so η ≠ 0.
        let eta = root_sum(7, [1, 2, 4]);
        assert!(!eta.is_zero());
        let mut conjugates = Vec::new();
        for sigma in GaloisAutomorphism::all(7) {
            let c = sigma.apply(&eta).unwrap();
            if !conjugates.contains(&c) {
                conjugates.push(c);
            }
        }
        assert_eq!(conjugates.len(), 2);
        // (x − c0)(x − c1) = x² − (c0+c1) x + c0 c1
        let s = conjugates[0].add(&conjugates[1]);
        let p = conjugates[0].mul(&conjugates[1]);
        assert_eq!(s.as_rational(), Some(int(-1)));
        assert_eq!(p.as_rational(), Some(int(2)));
    }

    #[test]
    fn product_of_complementary_gauss_periods() {
        // Oracle (independent expansion): the 9 exponent sums of
        // {1,2,4}+{3,5,6} mod 7 are 4,6,0,5,0,1,0,2,3, i.e. 3 + (sum of all
        // nontrivial 7th roots) = 3 − 1 = 2.
        let a = root_sum(7, [1, 2, 4]);
        let b = root_sum(7, [3, 5, 6]);
        assert_eq!(a.mul(&b).as_rational(), Some(int(2)));
    }

    #[test]
    fn mul_of_cube_roots_is_one() {
        assert_eq!(zeta(3, 1).mul(&zeta(3, 2)), CyclotomicNumber::one());
    }

    #[test]
    fn galois_on_gauss_periods() {
        let eta = root_sum(7, [1, 2, 4]);
        let sigma2 = GaloisAutomorphism::new(7, 2).unwrap();
        assert_eq!(sigma2.apply(&eta).unwrap(), eta); // fixed by σ_2
        let sigma3 = GaloisAutomorphism::new(7, 3).unwrap();
        assert_eq!(sigma3.apply(&eta).unwrap(), root_sum(7, [3, 6, 5]));
    }

    #[test]
    fn galois_fixes_rationals() {
        let v = CyclotomicNumber::from_rational(rat(5, 3));
        for sigma in GaloisAutomorphism::all(1) {
            assert_eq!(sigma.apply(&v).unwrap(), v);
        }
        // at a larger ambient order the value still has conductor 1, so an
        // automorphism of that field does not even apply; check through sums
        let w = zeta(9, 1).add(&zeta(9, 1).neg()).add(&v);
        assert_eq!(w, v);
    }

    #[test]
    fn conductor_examples() {
        assert_eq!(CyclotomicNumber::from_rational(rat(5, 3)).conductor(), 1);
        assert_eq!(root_sum(7, [1, 2, 4]).conductor(), 7);
        assert_eq!(zeta(3, 1).conductor(), 3);
        // rebasing detects proper subfields through composite orders
        assert_eq!(zeta(15, 5).conductor(), 3); // ζ_15^5 = ζ_3
        assert_eq!(zeta(12, 3).conductor(), 4); // ζ_12^3 = i
    }

    /// Definitional conductor: least f such that v is fixed by every σ_j
    /// with j ≡ 1 (mod f), gcd(j, n) = 1, computed at an ambient order n.
    fn conductor_by_definition(v: &CyclotomicNumber, ambient: u64) -> u64 {
        assert!(ambient % v.order() == 0);
        let terms: Vec<_> = v.raw_terms_at(ambient).collect();
        let at_n = CyclotomicNumber::from_terms(ambient, terms.clone());
        assert_eq!(&at_n, v);
        for f in crate::numth::divisors(ambient) {
            let fixed = GaloisAutomorphism::all(ambient)
                .into_iter()
                .filter(|s| s.exponent() % f == 1 % f)
                .all(|s| {
                    CyclotomicNumber::from_terms(
                        ambient,
                        terms.iter().map(|(e, c)| (e * s.exponent() % ambient, c.clone())),
                    ) == *v
                });
            if fixed {
                return f;
            }
        }
        unreachable!("f = n always works")
    }

    #[test]
    fn conductor_matches_galois_fixedness_definition() {
        let eta = root_sum(7, [1, 2, 4]);
        assert_eq!(conductor_by_definition(&eta, 7), 7);
        assert_eq!(conductor_by_definition(&zeta(3, 1), 3), 3);
        assert_eq!(conductor_by_definition(&zeta(3, 1), 15), 3);
        let r = CyclotomicNumber::from_rational(rat(5, 3));
        assert_eq!(conductor_by_definition(&r, 21), 1);
        assert_eq!(conductor_by_definition(&zeta(15, 5), 15), 3);
    }

    #[test]
    fn field_membership() {
        let eta = root_sum(7, [1, 2, 4]);
        assert!(eta.in_cyclotomic_field(7)); // conductor 7 | 14
        assert!(!zeta(3, 1).in_cyclotomic_field(7)); // 3 ∤ 14
        assert!(CyclotomicNumber::from_rational(rat(9, 2)).in_cyclotomic_field(1));
        // parity convention: Q(ζ_m) = Q(ζ_2m) for odd m
        assert!(zeta(4, 1).in_cyclotomic_field(4));
        assert!(!zeta(4, 1).in_cyclotomic_field(7));
    }

    #[test]
    fn galois_rejects_non_coprime_exponent() {
        assert!(GaloisAutomorphism::new(6, 2).is_err());
        assert!(GaloisAutomorphism::new(6, 5).is_ok());
    }

    #[test]
    fn display_rendering() {
        assert_eq!(CyclotomicNumber::zero().to_string(), "0");
        let v = CyclotomicNumber::from_terms(7, [(0, int(1)), (2, rat(-1, 3))]);
        assert_eq!(v.to_string(), "1 + -1/3*z^2");
        assert_eq!(zeta(5, 2).to_string(), "z^2");
    }
}
