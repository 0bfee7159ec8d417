//! Cross-engine agreement and table-shape checks on the affine families.

use charkit::chartab::{clifford, cross_checked_table, dixon, table_for};
use charkit::constructions::{build_from_str, frobenius_cyclic, nonabelian_h_instances};
use charkit::cyclo::GaloisAutomorphism;
use charkit::numth::gcd;

#[test]
fn order21_degrees_and_cross_check() {
    let g = frobenius_cyclic(7, 1, 3).unwrap();
    let t = cross_checked_table(&g, 0).unwrap();
    assert_eq!(t.degrees(), vec![1, 1, 1, 3, 3]);
    t.verify_orthogonality().unwrap();
}

#[test]
fn order75_degrees() {
    let g = frobenius_cyclic(5, 2, 3).unwrap();
    let t = cross_checked_table(&g, 0).unwrap();
    let mut degrees = t.degrees();
    degrees.sort_unstable();
    assert_eq!(degrees, vec![1, 1, 1, 3, 3, 3, 3, 3, 3, 3, 3]);
    t.verify_orthogonality().unwrap();
}

#[test]
fn order351_degrees() {
    let g = frobenius_cyclic(3, 3, 13).unwrap();
    let t = cross_checked_table(&g, 0).unwrap();
    let mut degrees = t.degrees();
    degrees.sort_unstable();
    let mut expected = vec![1u64; 13];
    expected.extend([13, 13]);
    assert_eq!(degrees, expected);
    t.verify_orthogonality().unwrap();
}

#[test]
fn engines_agree_on_affine_groups_up_to_1000() {
    // covers several shapes: a = 1 and a > 1, h prime and h = 9 composite
    for (p, a, h) in [(7u32, 1u32, 3u64), (13, 1, 3), (11, 1, 5), (5, 2, 3), (19, 1, 9), (23, 1, 11)]
    {
        let g = frobenius_cyclic(p, a, h).unwrap();
        assert!(g.order() <= 1000);
        let t = cross_checked_table(&g, 0).unwrap();
        t.verify_orthogonality().unwrap();
    }
}

#[test]
fn frobenius_degree_counts() {
    // exactly h linear characters and (p^a − 1)/h of degree h
    for (p, a, h) in [(7u32, 1u32, 3u64), (11, 1, 5), (5, 2, 3), (3, 3, 13), (19, 1, 9)] {
        let g = frobenius_cyclic(p, a, h).unwrap();
        let t = table_for(&g, 0).unwrap();
        let pa = (p as u64).pow(a);
        let linear = t.characters.iter().filter(|c| c.degree == 1).count() as u64;
        let deg_h = t.characters.iter().filter(|c| c.degree == h).count() as u64;
        assert_eq!(linear, h, "linear count for frob:{p},{a},{h}");
        assert_eq!(deg_h - if h == 1 { linear } else { 0 }, (pa - 1) / h);
    }
}

#[test]
fn frobenius_nonlinear_characters_vanish_outside_v() {
    for (p, a, h) in [(7u32, 1u32, 3u64), (5, 2, 3), (3, 3, 13)] {
        let g = frobenius_cyclic(p, a, h).unwrap();
        let aff = g.affine().unwrap();
        let t = table_for(&g, 0).unwrap();
        let classes = g.classes();
        for chi in t.characters.iter().filter(|c| c.degree > 1) {
            for (ct, &rep) in classes.reps.iter().enumerate() {
                if aff.h_part(rep) != 0 {
                    assert!(
                        chi.values[ct].is_zero(),
                        "degree-{} character nonzero outside V",
                        chi.degree
                    );
                }
            }
        }
    }
}

#[test]
fn galois_closure_of_table_rows() {
    for spec in ["frob:7,1,3", "frob:5,2,3", "cyclic:15"] {
        let g = build_from_str(spec).unwrap();
        let t = table_for(&g, 0).unwrap();
        let rows = t.row_multiset();
        let exponent = g.exponent();
        for j in (2..exponent).filter(|&j| gcd(j, exponent) == 1) {
            for chi in &t.characters {
                let mapped: Vec<_> = chi
                    .values
                    .iter()
                    .map(|v| {
                        let f = v.order();
                        GaloisAutomorphism::new(f, j % f).unwrap().apply(v).unwrap()
                    })
                    .collect();
                let key = (
                    chi.degree,
                    mapped.iter().map(|v| format!("[{}]{}", v.order(), v)).collect::<Vec<_>>(),
                );
                assert!(rows.binary_search(&key).is_ok(), "σ_{j} image of a row is a row");
            }
        }
    }
}

#[test]
fn regular_character_decomposes_with_degree_multiplicities() {
    use charkit::chartab::Character;
    use charkit::cyclo::CyclotomicNumber;
    use charkit::rational;
    let g = build_from_str("frob:7,1,3").unwrap();
    let t = table_for(&g, 0).unwrap();
    // regular character: |G| at the identity class, 0 elsewhere
    let mut values = vec![CyclotomicNumber::zero(); t.class_count()];
    values[0] = CyclotomicNumber::from_rational(rational::uint(g.order()));
    let reg = Character { degree: g.order(), values };
    for chi in &t.characters {
        assert_eq!(t.inner_product(&reg, chi), rational::uint(chi.degree));
    }
}

#[test]
fn clifford_handles_nonabelian_h() {
    // the smallest curated instance: F21 on F_3^6, |G| = 15309
    let g = &nonabelian_h_instances(16_000).unwrap()[0];
    let t = clifford::clifford_table(g).unwrap();
    assert_eq!(t.order, 15309);
    let sum_sq: u64 = t.degrees().iter().map(|d| d * d).sum();
    assert_eq!(sum_sq, 15309);
}

#[test]
fn generic_engine_rejects_oversized_groups() {
    let g = frobenius_cyclic(3, 5, 121).unwrap(); // order 29403
    assert!(dixon::generic_table(&g, 0).is_err());
    // but the Clifford engine handles it
    let t = clifford::clifford_table(&g).unwrap();
    let mut degrees = t.degrees();
    degrees.sort_unstable();
    let mut expected = vec![1u64; 121];
    expected.extend([121, 121]);
    assert_eq!(degrees, expected);
}
