//! Restricted-average behavior on the known small groups.

use charkit::avg::{
    a_k, a_p, acd, acd_report, compute_t, compute_t_by_definition, frobenius_acd_formula,
    identity_checks, quotient_monotonicity_check, select, thompson_check, FieldSpec,
    RestrictedSelection,
};
use charkit::chartab::table_for;
use charkit::constructions::{build_from_str, frobenius_cyclic};
use charkit::group::make_cyclic;
use charkit::rational::{int, rat};

#[test]
fn compute_t_examples() {
    assert_eq!(compute_t(21, &FieldSpec::Cyclotomic(7)), 7);
    assert_eq!(compute_t(21, &FieldSpec::FullComplex), 21);
    assert_eq!(compute_t(351, &FieldSpec::Cyclotomic(39)), 39);
}

#[test]
fn compute_t_matches_definition() {
    for order in [1u64, 9, 21, 55, 75, 105, 351, 891] {
        assert_eq!(
            compute_t(order, &FieldSpec::FullComplex),
            compute_t_by_definition(order, &FieldSpec::FullComplex),
            "order {order} full"
        );
        for m in 1..=100 {
            let k = FieldSpec::Cyclotomic(m);
            assert_eq!(
                compute_t(order, &k),
                compute_t_by_definition(order, &k),
                "order {order}, m = {m}"
            );
        }
    }
}

#[test]
fn selection_on_order21() {
    let g = frobenius_cyclic(7, 1, 3).unwrap();
    let t = table_for(&g, 0).unwrap();
    // p = 3, no field: only the three linear characters survive
    let sel = RestrictedSelection::p_prime(3);
    let picked = select(&t, &sel);
    assert_eq!(picked.len(), 3);
    assert!(picked.iter().all(|&i| t.characters[i].degree == 1));
    // field m = 7: one linear (principal) plus the two degree-3 characters
    let sel = RestrictedSelection::in_field(FieldSpec::Cyclotomic(7));
    let picked = select(&t, &sel);
    assert_eq!(picked.len(), 3);
    let degrees: Vec<u64> = picked.iter().map(|&i| t.characters[i].degree).collect();
    assert_eq!(degrees.iter().filter(|&&d| d == 1).count(), 1);
    assert_eq!(degrees.iter().filter(|&&d| d == 3).count(), 2);
    // empty selection keeps all
    assert_eq!(select(&t, &RestrictedSelection::none()).len(), 5);
}

#[test]
fn acd_tight_values() {
    let g21 = frobenius_cyclic(7, 1, 3).unwrap();
    let t21 = table_for(&g21, 0).unwrap();
    assert_eq!(acd(&t21, &RestrictedSelection::none()).2, rat(9, 5));
    assert_eq!(
        acd(&t21, &RestrictedSelection::in_field(FieldSpec::Cyclotomic(7))).2,
        rat(7, 3)
    );
    let g55 = frobenius_cyclic(11, 1, 5).unwrap();
    let t55 = table_for(&g55, 0).unwrap();
    assert_eq!(acd(&t55, &RestrictedSelection::none()).2, rat(15, 7));
}

#[test]
fn acd_on_abelian_groups_is_one() {
    for spec in ["cyclic:9", "elab:3^2", "cyclic:45"] {
        let g = build_from_str(spec).unwrap();
        let t = table_for(&g, 0).unwrap();
        assert_eq!(acd(&t, &RestrictedSelection::none()).2, int(1));
    }
}

#[test]
fn frobenius_formula_values() {
    assert_eq!(frobenius_acd_formula(3, 7, 1, 3).unwrap(), rat(9, 5));
    assert_eq!(frobenius_acd_formula(3, 7, 1, 1).unwrap(), rat(7, 3));
    assert_eq!(frobenius_acd_formula(13, 3, 3, 13).unwrap(), rat(13, 5));
    assert!(frobenius_acd_formula(4, 7, 1, 1).is_err()); // even h
    assert!(frobenius_acd_formula(3, 7, 1, 2).is_err()); // l ∤ h
}

#[test]
fn frobenius_consistency_formula_vs_engine() {
    // When ζ_p ∈ k, acd_k(table) = formula(|H|, p, a, gcd(t, h)) and the
    // p'-filter is a no-op on the k-valued set. When ζ_p ∉ k, no nonlinear
    // character of these groups is k-valued (its values generate a nontrivial
    // subfield of Q(ζ_p)), so the average degenerates to exactly 1.
    for (p, a, h) in [(7u32, 1u32, 3u64), (11, 1, 5), (5, 2, 3), (3, 3, 13), (19, 1, 9)] {
        let g = frobenius_cyclic(p, a, h).unwrap();
        let t = table_for(&g, 0).unwrap();
        for m in [1u64, 3, p as u64, 3 * p as u64, h, 3 * h] {
            let k = FieldSpec::Cyclotomic(m);
            let tval = compute_t(g.order(), &k);
            let l = charkit::numth::gcd(tval, h);
            let sel = RestrictedSelection::in_field(k.clone());
            let got = acd(&t, &sel).2;
            if k.contains_roots_of_order(p as u64) {
                let formula = frobenius_acd_formula(h, p as u64, a, l).unwrap();
                assert_eq!(got, formula, "frob:{p},{a},{h} m={m}");
                let sel_p = RestrictedSelection::both(p as u64, k);
                assert_eq!(acd(&t, &sel_p).2, formula, "p'-filter no-op fails");
            } else {
                assert_eq!(got, int(1), "frob:{p},{a},{h} m={m} degenerate case");
            }
        }
    }
}

#[test]
fn a_k_subgroups() {
    let g = frobenius_cyclic(7, 1, 3).unwrap();
    let t = table_for(&g, 0).unwrap();
    // k = C: A^k(G) = G'
    let full = a_k(&g, &t, &FieldSpec::FullComplex);
    assert_eq!(full.order(), 7);
    assert_eq!(full.elements(), g.derived_subgroup().elements());
    // k = Q(ζ_7): only the principal linear character is k-valued
    let q7 = a_k(&g, &t, &FieldSpec::Cyclotomic(7));
    assert_eq!(q7.order(), 21);
    // C3 over Q(ζ_3): every linear character is k-valued
    let c3 = make_cyclic(3).unwrap();
    let t3 = table_for(&c3, 0).unwrap();
    assert_eq!(a_k(&c3, &t3, &FieldSpec::Cyclotomic(3)).order(), 1);
}

#[test]
fn a_p_subgroups() {
    let g = frobenius_cyclic(7, 1, 3).unwrap();
    let t = table_for(&g, 0).unwrap();
    assert_eq!(a_p(&g, &t, 3).order(), 7);
    assert_eq!(a_p(&g, &t, 7).order(), 21);
    let e = build_from_str("elab:3^2").unwrap();
    let te = table_for(&e, 0).unwrap();
    assert_eq!(a_p(&e, &te, 3).order(), 1);
}

#[test]
fn kernel_identities_hold() {
    for spec in ["frob:7,1,3", "cyclic:9", "frob:5,2,3"] {
        let g = build_from_str(spec).unwrap();
        let t = table_for(&g, 0).unwrap();
        for check in identity_checks(&g, &t).unwrap() {
            assert!(check.pass, "{spec}: {} ({} vs {})", check.name, check.lhs_order, check.rhs_order);
        }
    }
}

#[test]
fn quotient_monotonicity_examples() {
    // C3 × F21, K = C3, p = 3, k = C
    let g = build_from_str("prod:cyclic:3*frob:7,1,3").unwrap();
    let t = table_for(&g, 0).unwrap();
    let rows =
        quotient_monotonicity_check(&g, &t, &RestrictedSelection::p_prime(3), 0).unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.pass));
    // abelian: both sides equal 1
    let a = build_from_str("cyclic:15").unwrap();
    let ta = table_for(&a, 0).unwrap();
    let rows = quotient_monotonicity_check(&a, &ta, &RestrictedSelection::none(), 0).unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.pass && r.acd_group == "1/1" && r.acd_quotient == "1/1"));
    // C5 × F21, K = C5, p = 7, m = 7
    let g5 = build_from_str("prod:cyclic:5*frob:7,1,3").unwrap();
    let t5 = table_for(&g5, 0).unwrap();
    let rows = quotient_monotonicity_check(
        &g5,
        &t5,
        &RestrictedSelection::both(7, FieldSpec::Cyclotomic(7)),
        0,
    )
    .unwrap();
    assert!(!rows.is_empty());
    assert!(rows.iter().all(|r| r.pass));
}

#[test]
fn thompson_reformulation_small() {
    // abelian groups: acd_{p'} = 1, complements exist for every p
    for spec in ["cyclic:45", "elab:3^2"] {
        let g = build_from_str(spec).unwrap();
        let t = table_for(&g, 0).unwrap();
        for p in [3, 5, 7] {
            let (avg, applies, verified) = thompson_check(&g, &t, p);
            assert_eq!(avg, int(1));
            assert!(applies && verified, "{spec} p={p}");
        }
    }
    // F21 with p = 3: nonlinear degrees are 3-divisible, average is 1
    let g = frobenius_cyclic(7, 1, 3).unwrap();
    let t = table_for(&g, 0).unwrap();
    let (avg, applies, verified) = thompson_check(&g, &t, 3);
    assert_eq!(avg, int(1));
    assert!(applies && verified);
}

#[test]
fn report_shapes() {
    let g = frobenius_cyclic(7, 1, 3).unwrap();
    let t = table_for(&g, 0).unwrap();
    let rep = acd_report(
        &g,
        &t,
        &RestrictedSelection::both(7, FieldSpec::Cyclotomic(7)),
    );
    assert_eq!(rep.t, 7);
    assert_eq!(rep.l, Some(1));
    assert_eq!(rep.acd, "7/3");
    assert_eq!(rep.p_nilpotent, Some(false));
    let json = serde_json::to_value(&rep).unwrap();
    for key in ["group", "order", "p", "field", "t", "count", "degreeSum", "acd", "pNilpotent"] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
}
