//! The generic class-algebra engine.
//!
//! Character values are found modulo a prime q ≡ 1 (mod exp(G)) with
//! q > 2√|G| as the common eigenvectors of the class-sum matrices, then
//! lifted exactly to cyclotomic integers through the discrete Fourier
//! formula on the root of unity z of order exp(G) in F_q.

use crate::cyclo::CyclotomicNumber;
use crate::group::{FiniteGroup, EXPLICIT_LIMIT};
use crate::numth::{is_prime, splitmix64};
use crate::rational::Rational;
use crate::{Error, Result};

use super::modular::{Fq, Mat, Subspace};
use super::{Character, CharacterTable, Provenance};

/// Search cap for the modulus prime.
const MODULUS_BOUND: u64 = 1 << 31;

/// Smallest prime q ≡ 1 (mod m) with q > min; reported as an error rather
/// than silently retried past the bound.
pub fn select_modulus(m: u64, min: u64) -> Result<u64> {
    let mut q = m + 1;
    while q <= min || !is_prime(q) {
        q = q
            .checked_add(m)
            .filter(|&q| q < MODULUS_BOUND)
            .ok_or(Error::ModulusSearch { m, min, bound: MODULUS_BOUND })?;
    }
    Ok(q)
}

/// Smallest integer of multiplicative order exactly m in F_q.
fn root_of_order(fq: &Fq, m: u64) -> u64 {
    if m == 1 {
        return 1;
    }
    'outer: for z in 2..fq.q {
        if fq.pow(z, m) != 1 {
            continue;
        }
        for (p, _) in crate::numth::factorize(m) {
            if fq.pow(z, m / p) == 1 {
                continue 'outer;
            }
        }
        return z;
    }
    unreachable!("F_q^* is cyclic of order divisible by m")
}

/// Complete exact character table of a group within the explicit limit.
///
/// `seed` permutes the order in which class matrices are used for the
/// eigenspace splitting; the output is canonical regardless (rows are sorted
/// by degree and value rendering), seed 0 uses the natural matrix order.
pub fn generic_table(g: &FiniteGroup, seed: u64) -> Result<CharacterTable> {
    if g.order() > EXPLICIT_LIMIT {
        return Err(Error::ExplicitTooLarge { order: g.order(), limit: EXPLICIT_LIMIT });
    }
    let classes = g.classes();
    let k = classes.class_count();
    let m = g.exponent();
    let order = g.order();
    let min = 2 * (order as f64).sqrt().ceil() as u64;
    let q = select_modulus(m, min)?;
    let fq = Fq { q };
    let z = root_of_order(&fq, m);

    let members = classes.members(order as usize);

    // class matrices: B_r[s][t] = #{(x, y) ∈ C_r × C_s : x y = rep_t}
    let class_matrix = |r: usize| -> Mat {
        let mut b = vec![vec![0u64; k]; k];
        for t in 0..k {
            let rep_t = classes.reps[t];
            for &x in &members[r] {
                let y = g.mul(g.inv(x), rep_t);
                let s = classes.class_of[y as usize] as usize;
                b[s][t] += 1;
            }
        }
        b
    };

    let mut matrix_order: Vec<usize> = (1..k).collect();
    if seed != 0 {
        let mut state = seed;
        for i in (1..matrix_order.len()).rev() {
            state = splitmix64(state);
            matrix_order.swap(i, (state % (i as u64 + 1)) as usize);
        }
    }

    let mut spaces = vec![Subspace::full(k)];
    for &r in &matrix_order {
        if spaces.iter().all(|s| s.dim() == 1) {
            break;
        }
        let b = class_matrix(r);
        let mut next = Vec::with_capacity(spaces.len());
        for s in spaces {
            if s.dim() == 1 {
                next.push(s);
            } else {
                next.extend(s.split_by(&fq, &b));
            }
        }
        spaces = next;
    }
    if !spaces.iter().all(|s| s.dim() == 1) {
        return Err(Error::BadTable(
            "class matrices failed to split the class algebra".into(),
        ));
    }

    // power-class tables for the value lift, shared across rows
    let power_classes: Vec<Vec<usize>> = (0..k)
        .map(|t| {
            let rep = classes.reps[t];
            let o = g.element_order(rep);
            let mut acc = 0u32;
            (0..o)
                .map(|_| {
                    let cls = classes.class_of[acc as usize] as usize;
                    acc = g.mul(acc, rep);
                    cls
                })
                .collect()
        })
        .collect();

    let isqrt = (order as f64).sqrt() as u64 + 1;
    let mut characters = Vec::with_capacity(k);
    for space in &spaces {
        let raw = &space.vectors[0];
        // normalize so the identity-class entry equals 1 (ω(K_0) = 1)
        let inv0 = fq.inv(raw[0]);
        let v: Vec<u64> = raw.iter().map(|&x| fq.mul(x, inv0)).collect();
        // degree from first orthogonality: d² = |G| / Σ_t v_t v_{t'} / |C_t|
        let mut c = 0u64;
        for t in 0..k {
            let tp = classes.inverse_class[t] as usize;
            let term = fq.mul(v[t], v[tp]);
            c = fq.add(c, fq.mul(term, fq.inv(classes.sizes[t] % q)));
        }
        if c == 0 {
            return Err(Error::BadTable("degenerate eigenvector norm".into()));
        }
        let d_sq = fq.mul(order % q, fq.inv(c));
        let degree = (1..=isqrt)
            .find(|&d| fq.mul(d % q, d % q) == d_sq)
            .ok_or_else(|| Error::BadTable("no degree matches d² mod q".into()))?;
        // values mod q: χ(g_t) = d · v_t / |C_t|
        let chi_mod: Vec<u64> = (0..k)
            .map(|t| fq.mul(fq.mul(degree % q, v[t]), fq.inv(classes.sizes[t] % q)))
            .collect();
        // exact lift: χ(g) = Σ_s μ_s ζ_o^s with
        // μ_s = (1/o) Σ_l χ(g^l) z_o^{-sl}, each μ_s a genuine integer in [0, d]
        let mut values = Vec::with_capacity(k);
        for t in 0..k {
            let o = g.element_order(classes.reps[t]);
            let z_o = fq.pow(z, m / o);
            let z_o_inv = fq.inv(z_o);
            let o_inv = fq.inv(o % q);
            let mut terms: Vec<(u64, Rational)> = Vec::new();
            for s in 0..o {
                let mut acc = 0u64;
                let step = fq.pow(z_o_inv, s);
                let mut w = 1u64;
                for l in 0..o {
                    let x = chi_mod[power_classes[t][l as usize]];
                    acc = fq.add(acc, fq.mul(x, w));
                    w = fq.mul(w, step);
                }
                let mu = fq.mul(acc, o_inv);
                if mu != 0 {
                    if mu > degree {
                        return Err(Error::BadTable(format!(
                            "lifted multiplicity {mu} exceeds degree {degree}"
                        )));
                    }
                    terms.push((s, crate::rational::uint(mu)));
                }
            }
            values.push(CyclotomicNumber::from_terms(o, terms));
        }
        characters.push(Character { degree, values });
    }

    CharacterTable::assemble(g, Provenance::Generic, characters)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_cyclic;

    #[test]
    fn modulus_selection_is_minimal() {
        // exponent 21, |G| = 21: need q ≡ 1 mod 21, q > 2√21 ≈ 9.2
        assert_eq!(select_modulus(21, 9).unwrap(), 43);
        assert_eq!(select_modulus(3, 18).unwrap(), 19);
        assert_eq!(select_modulus(1, 2).unwrap(), 3);
    }

    #[test]
    fn cyclic_three_table() {
        let g = make_cyclic(3).unwrap();
        let t = generic_table(&g, 0).unwrap();
        assert_eq!(t.degrees(), vec![1, 1, 1]);
        t.verify_orthogonality().unwrap();
        // rows are exactly {1, ζ_3^i, ζ_3^{2i}}: every non-principal value is
        // a primitive cube root monomial
        let nonprincipal: Vec<_> = t
            .characters
            .iter()
            .filter(|c| c.values.iter().any(|v| !v.is_rational()))
            .collect();
        assert_eq!(nonprincipal.len(), 2);
        for chi in nonprincipal {
            for v in &chi.values[1..] {
                assert_eq!(v.conductor(), 3);
            }
        }
    }

    #[test]
    fn cyclic_nine_has_nine_linear_characters() {
        let g = make_cyclic(9).unwrap();
        let t = generic_table(&g, 0).unwrap();
        assert_eq!(t.degrees(), vec![1; 9]);
        t.verify_orthogonality().unwrap();
    }

    #[test]
    fn seed_does_not_change_the_table() {
        let g = make_cyclic(15).unwrap();
        let t0 = generic_table(&g, 0).unwrap();
        let t1 = generic_table(&g, 0xfeed).unwrap();
        assert_eq!(t0.row_multiset(), t1.row_multiset());
        assert_eq!(
            serde_json::to_string(&t0.to_json()).unwrap(),
            serde_json::to_string(&t1.to_json()).unwrap()
        );
    }
}
