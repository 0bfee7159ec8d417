//! Field specifications, restricted character selections, exact degree
//! averages, and the kernel-intersection subgroups A^k(G) and A^p(G).

use serde::Serialize;

use crate::chartab::{Character, CharacterTable};
use crate::cyclo::CyclotomicNumber;
use crate::group::spec::GroupSpec;
use crate::group::{FiniteGroup, Subgroup};
use crate::numth::{gcd, lcm};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// The field k: all of C, or the cyclotomic field Q(ζ_m).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    FullComplex,
    Cyclotomic(u64),
}

impl FieldSpec {
    pub fn contains_value(&self, v: &CyclotomicNumber) -> bool {
        match self {
            FieldSpec::FullComplex => true,
            FieldSpec::Cyclotomic(m) => v.in_cyclotomic_field(*m),
        }
    }

    /// Whether k contains the primitive d-th roots of unity:
    /// d | lcm(2, m) for Q(ζ_m); always for C.
    pub fn contains_roots_of_order(&self, d: u64) -> bool {
        match self {
            FieldSpec::FullComplex => true,
            FieldSpec::Cyclotomic(m) => lcm(2, *m) % d == 0,
        }
    }

    pub fn label(&self) -> String {
        match self {
            FieldSpec::FullComplex => "full".to_string(),
            FieldSpec::Cyclotomic(m) => m.to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<FieldSpec> {
        let s = s.trim();
        if s == "full" {
            return Ok(FieldSpec::FullComplex);
        }
        let m: u64 = s
            .parse()
            .map_err(|_| Error::ParseSpec(format!("field `{s}`: expected integer or `full`")))?;
        if m == 0 {
            return Err(Error::ParseSpec("field m must be positive".into()));
        }
        Ok(FieldSpec::Cyclotomic(m))
    }
}

/// Character filters: odd prime for the p'-degree filter, field for the
/// value filter. The empty selection keeps everything.
#[derive(Clone, Debug, Default)]
pub struct RestrictedSelection {
    pub p: Option<u64>,
    pub field: Option<FieldSpec>,
}

impl RestrictedSelection {
    pub fn none() -> Self {
        RestrictedSelection::default()
    }

    pub fn p_prime(p: u64) -> Self {
        RestrictedSelection { p: Some(p), field: None }
    }

    pub fn in_field(k: FieldSpec) -> Self {
        RestrictedSelection { p: None, field: Some(k) }
    }

    pub fn both(p: u64, k: FieldSpec) -> Self {
        RestrictedSelection { p: Some(p), field: Some(k) }
    }

    pub fn admits(&self, chi: &Character) -> bool {
        if let Some(p) = self.p {
            if chi.degree % p == 0 {
                return false;
            }
        }
        if let Some(k) = &self.field {
            if !chi.values.iter().all(|v| k.contains_value(v)) {
                return false;
            }
        }
        true
    }
}

/// t: the lcm of the orders of roots of unity in k having order dividing
/// |G|. For k = Q(ζ_m) this is gcd(|G|, lcm(2, m)); for k = C the
/// convention here is t = |G| (every order dividing |G| occurs in C).
pub fn compute_t(order: u64, k: &FieldSpec) -> u64 {
    match k {
        FieldSpec::FullComplex => order,
        FieldSpec::Cyclotomic(m) => gcd(order, lcm(2, *m)),
    }
}

/// Brute-force form of the definition of t, for cross-checks: enumerate the
/// divisors d of |G| that are orders of roots of unity in k and take their
/// lcm.
pub fn compute_t_by_definition(order: u64, k: &FieldSpec) -> u64 {
    crate::numth::divisors(order)
        .into_iter()
        .filter(|&d| k.contains_roots_of_order(d))
        .fold(1, lcm)
}

/// Indices of the characters passing the selection.
pub fn select(table: &CharacterTable, sel: &RestrictedSelection) -> Vec<usize> {
    (0..table.characters.len())
        .filter(|&i| sel.admits(&table.characters[i]))
        .collect()
}

/// Exact average degree over the selection. The principal character always
/// passes both filters, so the count is at least 1.
pub fn acd(table: &CharacterTable, sel: &RestrictedSelection) -> (u64, u64, Rational) {
    let picked = select(table, sel);
    let count = picked.len() as u64;
    let degree_sum: u64 = picked.iter().map(|&i| table.characters[i].degree).sum();
    assert!(count >= 1, "the principal character always passes");
    (count, degree_sum, rational::uint(degree_sum) / rational::uint(count))
}

/// Report row for one (group, selection) average.
#[derive(Clone, Debug, Serialize)]
pub struct AcdReport {
    pub group: String,
    pub order: u64,
    #[serde(rename = "p")]
    pub prime: Option<u64>,
    pub field: String,
    pub t: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<u64>,
    pub count: u64,
    #[serde(rename = "degreeSum")]
    pub degree_sum: u64,
    pub acd: String,
    #[serde(rename = "pNilpotent")]
    pub p_nilpotent: Option<bool>,
    #[serde(skip)]
    pub acd_value: Rational,
}

/// Full report: average, t, the Frobenius fast-path l = gcd(t, |H|) when the
/// group is a frob:p,a,h instance, and p-nilpotence when a prime is given.
pub fn acd_report(g: &FiniteGroup, table: &CharacterTable, sel: &RestrictedSelection) -> AcdReport {
    let field = sel.field.clone().unwrap_or(FieldSpec::FullComplex);
    let t = compute_t(g.order(), &field);
    let l = match GroupSpec::parse(g.label()) {
        Ok(GroupSpec::Frob { h, .. }) => Some(gcd(t, h)),
        _ => None,
    };
    let (count, degree_sum, value) = acd(table, sel);
    let p_nilpotent = sel.p.map(|p| g.has_normal_p_complement(p).0);
    AcdReport {
        group: g.label().to_string(),
        order: g.order(),
        prime: sel.p,
        field: field.label(),
        t,
        l,
        count,
        degree_sum,
        acd: rational::render(&value),
        p_nilpotent,
        acd_value: value,
    }
}

/// The closed form h(l + p^a − 1) / (h l + p^a − 1) for the k-restricted
/// average of a cyclic-complement Frobenius group, l = |H : A^k(H)|.
pub fn frobenius_acd_formula(h: u64, p: u64, a: u32, l: u64) -> Result<Rational> {
    if h % 2 == 0 || h == 0 {
        return Err(Error::Precondition(format!("h = {h} must be odd")));
    }
    let pa = p.checked_pow(a).ok_or_else(|| Error::Precondition("p^a overflow".into()))?;
    if (pa - 1) % h != 0 {
        return Err(Error::Precondition(format!("h = {h} must divide p^a − 1")));
    }
    if l == 0 || h % l != 0 {
        return Err(Error::Precondition(format!("l = {l} must divide h = {h}")));
    }
    Ok(rational::uint(h) * rational::uint(l + pa - 1)
        / rational::uint(h * l + pa - 1))
}

/// A^k(G): intersection of the kernels of the linear characters with values
/// in k. |G : A^k(G)| equals the number of k-valued linear characters.
pub fn a_k(g: &FiniteGroup, table: &CharacterTable, k: &FieldSpec) -> Subgroup {
    let mut acc = Subgroup::whole(g);
    let mut count = 0u64;
    for chi in table.characters.iter().filter(|c| c.is_linear()) {
        if chi.values.iter().all(|v| k.contains_value(v)) {
            count += 1;
            acc = acc.intersection(&table.kernel_of(g, chi));
        }
    }
    assert_eq!(
        g.order() / acc.order(),
        count,
        "|G : A^k(G)| equals the number of k-valued linear characters"
    );
    acc
}

/// A^p(G): smallest normal subgroup with elementary abelian p-quotient,
/// computed as the intersection of the kernels of the linear characters of
/// order dividing p.
pub fn a_p(g: &FiniteGroup, table: &CharacterTable, p: u64) -> Subgroup {
    let one = CyclotomicNumber::one();
    let mut acc = Subgroup::whole(g);
    for chi in table.characters.iter().filter(|c| c.is_linear()) {
        if chi.pointwise_pow(p).iter().all(|v| *v == one) {
            acc = acc.intersection(&table.kernel_of(g, chi));
        }
    }
    // quotient must be elementary abelian of exponent p (or trivial)
    if g.order() <= crate::group::EXPLICIT_LIMIT {
        let (q, _) = g.quotient(&acc).expect("A^p(G) is normal");
        assert!(q.is_abelian());
        assert!(q.order() == 1 || q.exponent() == p);
    }
    acc
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs_order: u64,
    pub rhs_order: u64,
    pub pass: bool,
}

/// The kernel-intersection identities for odd-order groups:
/// A^C(G) = G′, A^Q(G) = A²(G) (= G), and A^{Q(ζ_p)}(G) = A²(G) ∩ A^p(G)
/// for odd primes p.
pub fn identity_checks(g: &FiniteGroup, table: &CharacterTable) -> Result<Vec<IdentityCheck>> {
    if g.order() % 2 == 0 {
        return Err(Error::EvenOrder(g.order()));
    }
    let mut out = Vec::new();
    let derived = g.derived_subgroup();
    let a_full = a_k(g, table, &FieldSpec::FullComplex);
    out.push(IdentityCheck {
        name: "A^C = G'".into(),
        lhs_order: a_full.order(),
        rhs_order: derived.order(),
        pass: a_full == derived,
    });
    let a_two = a_p(g, table, 2);
    let a_q = a_k(g, table, &FieldSpec::Cyclotomic(1));
    out.push(IdentityCheck {
        name: "A^Q = A^2".into(),
        lhs_order: a_q.order(),
        rhs_order: a_two.order(),
        pass: a_q == a_two,
    });
    let mut primes: Vec<u64> = crate::numth::factorize(g.order())
        .into_iter()
        .map(|(p, _)| p)
        .collect();
    for p in [3, 5, 7] {
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    for p in primes {
        let a_qp = a_k(g, table, &FieldSpec::Cyclotomic(p));
        let rhs = a_two.intersection(&a_p(g, table, p));
        out.push(IdentityCheck {
            name: format!("A^Q(ζ_{p}) = A^2 ∩ A^{p}"),
            lhs_order: a_qp.order(),
            rhs_order: rhs.order(),
            pass: a_qp == rhs,
        });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct QuotientMonotonicityRow {
    pub group: String,
    pub kernel_order: u64,
    pub acd_group: String,
    pub acd_quotient: String,
    pub pass: bool,
}

/// For every minimal normal K with K ∩ G′ = 1 (given the average is ≤ 3),
/// checks acd_{k,p'}(G/K) ≤ acd_{k,p'}(G).
pub fn quotient_monotonicity_check(
    g: &FiniteGroup,
    table: &CharacterTable,
    sel: &RestrictedSelection,
    seed: u64,
) -> Result<Vec<QuotientMonotonicityRow>> {
    let (_, _, whole) = acd(table, sel);
    if whole > rational::int(3) {
        return Err(Error::Precondition(format!(
            "hypothesis needs acd ≤ 3, got {whole}"
        )));
    }
    let derived = g.derived_subgroup();
    let mut rows = Vec::new();
    for k_sub in g.minimal_normal_subgroups() {
        if k_sub.order() == 1 || k_sub.intersection(&derived).order() != 1 {
            continue;
        }
        let (q, _) = g.quotient(&k_sub)?;
        let q_table = crate::chartab::dixon::generic_table(&q, seed)?;
        let (_, _, q_acd) = acd(&q_table, sel);
        rows.push(QuotientMonotonicityRow {
            group: g.label().to_string(),
            kernel_order: k_sub.order(),
            acd_group: rational::render(&whole),
            acd_quotient: rational::render(&q_acd),
            pass: q_acd <= whole,
        });
    }
    Ok(rows)
}

/// Thompson reformulation: acd_{p'}(G) = 1 implies a normal p-complement.
/// Returns (average, implied, complement-found, witness-verified).
pub fn thompson_check(g: &FiniteGroup, table: &CharacterTable, p: u64) -> (Rational, bool, bool) {
    let (_, _, avg) = acd(table, &RestrictedSelection::p_prime(p));
    let applies = avg == rational::int(1);
    if !applies {
        return (avg, false, true);
    }
    let (ok, witness) = g.has_normal_p_complement(p);
    let verified = ok
        && witness
            .map(|w| {
                w.order() == crate::group::p_prime_part(g.order(), p)
                    && (g.order() > 50_000 || (w.verify(g).is_ok() && w.is_normal(g)))
            })
            .unwrap_or(false);
    (avg, true, verified)
}
