//! The threshold functions and the hypothesis-case classifier.
//!
//! f(x) = x(x + P − 1)/(x² + P − 1) and g(x) = xP/(x + P − 1) with P = p^a
//! control the Frobenius averages; their minima over rational sweeps back the
//! case thresholds. The classifier maps (p, k) to the applicable threshold
//! cases, each carrying the metric it constrains.

use serde::Serialize;

use crate::avg::FieldSpec;
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// x(x + P − 1) / (x² + P − 1), P = p^a.
pub fn f_val(x: &Rational, p: u64, a: u32) -> Rational {
    let pa = rational::uint(p.pow(a));
    let one = rational::int(1);
    x.clone() * (x.clone() + pa.clone() - one.clone()) / (x.clone() * x.clone() + pa - one)
}

/// xP / (x + P − 1), P = p^a.
pub fn g_val(x: &Rational, p: u64, a: u32) -> Rational {
    let pa = rational::uint(p.pow(a));
    let one = rational::int(1);
    x.clone() * pa.clone() / (x.clone() + pa - one)
}

/// Sweep outcome for one minimum claim.
#[derive(Clone, Debug, Serialize)]
pub struct SweepReport {
    pub item: u8,
    pub pa: u64,
    pub denominator_bound: u64,
    pub interval: (String, String),
    pub stated_minimum: String,
    pub attained_at: String,
    pub sampled: u64,
    pub pass: bool,
    pub violations: Vec<String>,
}

struct ItemSpec {
    min_pa: u64,
    lo: fn(u64) -> Rational,
    hi: fn(u64) -> Rational,
    stated: fn(u64) -> Rational,
    attain: fn(u64) -> Rational,
    use_g: bool,
}

fn item_spec(item: u8) -> Result<ItemSpec> {
    Ok(match item {
        // min of f on [3, (P−1)/2] is 3(P+2)/(P+8), at the left endpoint
        1 => ItemSpec {
            min_pa: 7,
            lo: |_| rational::int(3),
            hi: |pa| rational::uint(pa - 1) / rational::int(2),
            stated: |pa| rational::int(3) * rational::uint(pa + 2) / rational::uint(pa + 8),
            attain: |_| rational::int(3),
            use_g: false,
        },
        // min of f on [5, (P−1)/2] is 3(P−1)/(P+3), at the right endpoint
        2 => ItemSpec {
            min_pa: 11,
            lo: |_| rational::int(5),
            hi: |pa| rational::uint(pa - 1) / rational::int(2),
            stated: |pa| rational::int(3) * rational::uint(pa - 1) / rational::uint(pa + 3),
            attain: |pa| rational::uint(pa - 1) / rational::int(2),
            use_g: false,
        },
        // min of f on [5, (P−1)/4] is 5(P+4)/(P+24), at the left endpoint
        3 => ItemSpec {
            min_pa: 29,
            lo: |_| rational::int(5),
            hi: |pa| rational::uint(pa - 1) / rational::int(4),
            stated: |pa| rational::int(5) * rational::uint(pa + 4) / rational::uint(pa + 24),
            attain: |_| rational::int(5),
            use_g: false,
        },
        // min of g on [3, (P−1)/2] is 3P/(P+2)
        4 => ItemSpec {
            min_pa: 11,
            lo: |_| rational::int(3),
            hi: |pa| rational::uint(pa - 1) / rational::int(2),
            stated: |pa| rational::int(3) * rational::uint(pa) / rational::uint(pa + 2),
            attain: |_| rational::int(3),
            use_g: true,
        },
        // min of g on [5, (P−1)/2] is 5P/(P+4)
        5 => ItemSpec {
            min_pa: 11,
            lo: |_| rational::int(5),
            hi: |pa| rational::uint(pa - 1) / rational::int(2),
            stated: |pa| rational::int(5) * rational::uint(pa) / rational::uint(pa + 4),
            attain: |_| rational::int(5),
            use_g: true,
        },
        _ => return Err(Error::Precondition(format!("item {item} must be 1..=5"))),
    })
}

/// Sweeps all rationals with denominator ≤ `d_bound` in the item's interval,
/// confirming the stated closed form is a lower bound attained at the stated
/// point. The hypothesis p^a ≥ min_pa is enforced.
pub fn verify_lemma_2_1(item: u8, p: u64, a: u32, d_bound: u64) -> Result<SweepReport> {
    let spec = item_spec(item)?;
    let pa = p.pow(a);
    if pa < spec.min_pa {
        return Err(Error::Precondition(format!(
            "item {item} requires p^a ≥ {}, got {pa}",
            spec.min_pa
        )));
    }
    let lo = (spec.lo)(pa);
    let hi = (spec.hi)(pa);
    let stated = (spec.stated)(pa);
    let attain = (spec.attain)(pa);
    let eval = |x: &Rational| if spec.use_g { g_val(x, p, a) } else { f_val(x, p, a) };

    let mut sampled = 0u64;
    let mut minimum: Option<(Rational, Rational)> = None;
    let mut violations = Vec::new();
    for den in 1..=d_bound {
        let den_r = rational::uint(den);
        // numerators with lo ≤ num/den ≤ hi
        let num_lo = rational::floor_u64(&(lo.clone() * den_r.clone()));
        let num_hi = rational::floor_u64(&(hi.clone() * den_r.clone()));
        for num in num_lo..=num_hi {
            let x = rational::uint(num) / den_r.clone();
            if x < lo || x > hi {
                continue;
            }
            let v = eval(&x);
            sampled += 1;
            if v < stated {
                violations.push(format!("f({}) = {} < stated", rational::render(&x), rational::render(&v)));
            }
            if minimum.as_ref().map(|(m, _)| v < *m).unwrap_or(true) {
                minimum = Some((v, x));
            }
        }
    }
    let (min_v, min_x) = minimum.expect("interval contains integers");
    let attained_ok = eval(&attain) == stated && min_v == stated;
    let pass = violations.is_empty() && attained_ok;
    Ok(SweepReport {
        item,
        pa,
        denominator_bound: d_bound,
        interval: (rational::render(&lo), rational::render(&hi)),
        stated_minimum: rational::render(&stated),
        attained_at: rational::render(if attained_ok { &attain } else { &min_x }),
        sampled,
        pass,
        violations,
    })
}

/// Monotonicity report for the exponent-direction functions.
#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityReport {
    pub which: char,
    pub p: u64,
    pub exponents: (u32, u32),
    pub increasing: bool,
    pub min_at_one: String,
    pub min_matches_closed_form: bool,
    pub pass: bool,
}

/// f(x) = 3(p^x+2)/(p^x+8), g(x) = 3p^x/(p^x+2), h(x) = 3(p^x−1)/(p^x+3)
/// on an integer exponent grid: strictly increasing, minimum at x = 1.
pub fn verify_lemma_2_2(which: char, p: u64, x_lo: u32, x_hi: u32) -> Result<MonotonicityReport> {
    if x_lo < 1 || x_hi < x_lo {
        return Err(Error::Precondition("need 1 ≤ x_lo ≤ x_hi".into()));
    }
    let eval = |x: u32| -> Result<Rational> {
        let px = rational::uint(
            p.checked_pow(x).ok_or_else(|| Error::Precondition("p^x overflow".into()))?,
        );
        let three = rational::int(3);
        Ok(match which {
            'f' => three * (px.clone() + rational::int(2)) / (px + rational::int(8)),
            'g' => three * px.clone() / (px + rational::int(2)),
            'h' => three * (px.clone() - rational::int(1)) / (px + rational::int(3)),
            _ => return Err(Error::Precondition(format!("unknown function `{which}`"))),
        })
    };
    let mut increasing = true;
    let mut prev = eval(x_lo)?;
    for x in (x_lo + 1)..=x_hi {
        let cur = eval(x)?;
        if cur <= prev {
            increasing = false;
        }
        prev = cur;
    }
    let at_one = eval(1)?;
    let closed = match which {
        'f' => rational::int(3) * rational::uint(p + 2) / rational::uint(p + 8),
        'g' => rational::int(3) * rational::uint(p) / rational::uint(p + 2),
        'h' => rational::int(3) * rational::uint(p - 1) / rational::uint(p + 3),
        _ => unreachable!(),
    };
    let min_matches = at_one == closed;
    Ok(MonotonicityReport {
        which,
        p,
        exponents: (x_lo, x_hi),
        increasing,
        min_at_one: rational::render(&at_one),
        min_matches_closed_form: min_matches,
        pass: increasing && min_matches,
    })
}

/// Which restricted average a case constrains.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Metric {
    /// acd_k(G)
    AcdK,
    /// acd_{k,3'}(G)
    AcdK3Prime,
}

impl Metric {
    pub fn label(&self) -> &'static str {
        match self {
            Metric::AcdK => "acd_k",
            Metric::AcdK3Prime => "acd_k_3'",
        }
    }
}

/// Applicability facts recorded with each case.
#[derive(Clone, Debug, Serialize)]
pub struct CaseConditions {
    pub p_mod_3: u64,
    pub contains_zeta3: bool,
    pub contains_half: Option<bool>,
    pub half_is_even: Option<bool>,
    pub contains_zeta13: Option<bool>,
}

/// One hypothesis case with its exact threshold.
#[derive(Clone, Debug, Serialize)]
pub struct ThresholdCase {
    pub id: String,
    pub metric: Metric,
    pub threshold_str: String,
    pub conditions: CaseConditions,
    #[serde(skip)]
    pub threshold: Rational,
}

fn case(id: u8, metric: Metric, threshold: Rational, conditions: CaseConditions) -> ThresholdCase {
    ThresholdCase {
        id: format!("T5.1-{id}"),
        metric,
        threshold_str: rational::render(&threshold),
        conditions,
        threshold,
    }
}

/// The case classifier: every hypothesis case applicable to (p, k), with its
/// exact rational threshold. Case conditions are evaluated literally;
/// "k contains the d-th roots of unity" means d | lcm(2, m) for k = Q(ζ_m)
/// and is always true for k = C.
pub fn classify(p: u64, k: &FieldSpec) -> Vec<ThresholdCase> {
    assert!(crate::numth::is_prime(p) && p % 2 == 1, "p must be an odd prime");
    let z3 = k.contains_roots_of_order(3);
    let mut out = Vec::new();
    if p == 3 {
        let z13 = k.contains_roots_of_order(13);
        let conditions = CaseConditions {
            p_mod_3: 0,
            contains_zeta3: z3,
            contains_half: None,
            half_is_even: None,
            contains_zeta13: Some(z13),
        };
        if z13 {
            out.push(case(6, Metric::AcdK3Prime, rational::rat(13, 5), conditions));
        } else {
            out.push(case(7, Metric::AcdK3Prime, rational::rat(182, 61), conditions));
        }
        return out;
    }
    let half = (p - 1) / 2;
    let z_half = k.contains_roots_of_order(half);
    let half_even = half % 2 == 0;
    let conditions = CaseConditions {
        p_mod_3: p % 3,
        contains_zeta3: z3,
        contains_half: Some(z_half),
        half_is_even: Some(half_even),
        contains_zeta13: None,
    };
    let three = rational::int(3);
    if p % 3 == 1 {
        if z3 {
            out.push(case(
                1,
                Metric::AcdK,
                three * rational::uint(p + 2) / rational::uint(p + 8),
                conditions,
            ));
        } else {
            out.push(case(
                4,
                Metric::AcdK,
                three * rational::uint(p) / rational::uint(p + 2),
                conditions,
            ));
        }
    } else {
        // p ≡ 2 (mod 3)
        if z_half && !half_even {
            out.push(case(
                3,
                Metric::AcdK,
                three * rational::uint(p - 1) / rational::uint(p + 3),
                conditions,
            ));
        } else if z3 {
            out.push(case(
                2,
                Metric::AcdK,
                three * rational::uint(p * p + 2) / rational::uint(p * p + 8),
                conditions,
            ));
        } else {
            out.push(case(
                5,
                Metric::AcdK,
                three * rational::uint(p * p) / rational::uint(p * p + 2),
                conditions,
            ));
        }
    }
    out
}

/// The strongest applicable case: maximum threshold. Hypotheses are per
/// metric and the applicable set never mixes metrics (cases 6–7 exist only
/// for p = 3, where cases 1–5 never apply).
pub fn effective_threshold(cases: &[ThresholdCase]) -> Result<&ThresholdCase> {
    let best = cases
        .iter()
        .max_by(|a, b| a.threshold.cmp(&b.threshold))
        .ok_or_else(|| Error::Precondition("no applicable case".into()))?;
    assert!(
        cases.iter().all(|c| c.metric == best.metric),
        "threshold cases must agree on the metric"
    );
    Ok(best)
}

/// The standing hypothesis of the nilpotence theorems: k ⊇ Q(ζ_p).
pub fn preamble_holds(p: u64, k: &FieldSpec) -> bool {
    k.contains_roots_of_order(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    #[test]
    fn f_and_g_values() {
        // f(3; P=7) = 3·9/15 = 9/5; also the Lemma 2.1(1) closed form at P=7
        assert_eq!(f_val(&int(3), 7, 1), rat(9, 5));
        // g(3; P=11) = 33/13
        assert_eq!(g_val(&int(3), 11, 1), rat(33, 13));
        for (p, a) in [(3u64, 1u32), (7, 1), (5, 2), (3, 5)] {
            assert_eq!(f_val(&int(1), p, a), int(1));
        }
    }

    #[test]
    fn lemma_2_1_sweeps() {
        let r = verify_lemma_2_1(1, 7, 1, 64).unwrap();
        assert!(r.pass, "{r:?}");
        assert_eq!(r.stated_minimum, "9/5");
        assert_eq!(r.attained_at, "3/1");

        let r = verify_lemma_2_1(4, 11, 1, 64).unwrap();
        assert!(r.pass);
        assert_eq!(r.stated_minimum, "33/13");
        assert_eq!(r.attained_at, "3/1");

        let r = verify_lemma_2_1(3, 29, 1, 64).unwrap();
        assert!(r.pass);
        assert_eq!(r.stated_minimum, "165/53");
        assert_eq!(r.attained_at, "5/1");

        // hypothesis violations are errors, not silent passes
        assert!(verify_lemma_2_1(3, 3, 3, 16).is_err()); // 27 < 29
        assert!(verify_lemma_2_1(1, 5, 1, 16).is_err()); // 5 < 7
        assert!(verify_lemma_2_1(9, 7, 1, 16).is_err());
    }

    #[test]
    fn lemma_2_2_monotonicity() {
        let r = verify_lemma_2_2('f', 5, 1, 8).unwrap();
        assert!(r.pass);
        assert_eq!(r.min_at_one, "21/13");
        let r = verify_lemma_2_2('g', 7, 1, 8).unwrap();
        assert!(r.pass);
        assert_eq!(r.min_at_one, "7/3");
        let r = verify_lemma_2_2('h', 11, 1, 8).unwrap();
        assert!(r.pass);
        assert_eq!(r.min_at_one, "15/7");
        assert!(verify_lemma_2_2('q', 3, 1, 4).is_err());
    }

    #[test]
    fn classify_examples() {
        let c = classify(7, &FieldSpec::FullComplex);
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].id, "T5.1-1");
        assert_eq!(c[0].threshold, rat(9, 5));
        assert_eq!(c[0].metric, Metric::AcdK);

        let c = classify(5, &FieldSpec::FullComplex);
        assert_eq!(c[0].id, "T5.1-2");
        assert_eq!(c[0].threshold, rat(27, 11));

        let c = classify(3, &FieldSpec::Cyclotomic(39));
        assert_eq!(c[0].id, "T5.1-6");
        assert_eq!(c[0].threshold, rat(13, 5));
        assert_eq!(c[0].metric, Metric::AcdK3Prime);
    }

    #[test]
    fn effective_threshold_examples() {
        let c = classify(11, &FieldSpec::FullComplex);
        let best = effective_threshold(&c).unwrap();
        assert_eq!(best.id, "T5.1-3");
        assert_eq!(best.threshold, rat(15, 7));

        let c = classify(7, &FieldSpec::Cyclotomic(7));
        let best = effective_threshold(&c).unwrap();
        assert_eq!(best.id, "T5.1-4");
        assert_eq!(best.threshold, rat(7, 3));

        let c = classify(3, &FieldSpec::Cyclotomic(1));
        let best = effective_threshold(&c).unwrap();
        assert_eq!(best.id, "T5.1-7");
        assert_eq!(best.threshold, rat(182, 61));

        assert!(effective_threshold(&[]).is_err());
    }

    #[test]
    fn classifier_is_total_and_thresholds_in_range() {
        let fields = [
            FieldSpec::FullComplex,
            FieldSpec::Cyclotomic(1),
            FieldSpec::Cyclotomic(3),
            FieldSpec::Cyclotomic(5),
            FieldSpec::Cyclotomic(13),
            FieldSpec::Cyclotomic(39),
            FieldSpec::Cyclotomic(105),
        ];
        for p in (3..=200u64).filter(|&p| crate::numth::is_prime(p)) {
            for k in &fields {
                let cases = classify(p, k);
                assert!(!cases.is_empty(), "no case for p={p}, k={}", k.label());
                for c in &cases {
                    assert!(c.threshold > int(1) && c.threshold <= int(3));
                    if c.id == "T5.1-6" || c.id == "T5.1-7" {
                        assert!(c.threshold < int(3));
                    }
                }
            }
        }
    }

    #[test]
    fn preamble() {
        assert!(preamble_holds(7, &FieldSpec::FullComplex));
        assert!(preamble_holds(7, &FieldSpec::Cyclotomic(7)));
        assert!(preamble_holds(7, &FieldSpec::Cyclotomic(21)));
        assert!(!preamble_holds(7, &FieldSpec::Cyclotomic(3)));
        assert!(!preamble_holds(3, &FieldSpec::Cyclotomic(1)));
    }
}
