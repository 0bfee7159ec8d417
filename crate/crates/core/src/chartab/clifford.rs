//! The Clifford-theory engine for affine groups G = H ⋉ V.
//!
//! Irr(G) splits into the inflations of Irr(H) through G → G/V ≅ H and, for
//! each H-orbit representative α on Irr(V) ∖ {1_V}, the induced characters
//! (α×τ)^G for τ ∈ Irr(T_α), where T_α is the stabilizer of α in H and the
//! extension to T_α V is (α×τ)(tv) = τ(t)α(v). Values come from the standard
//! induction formula over coset representatives of T_α V in G, which can all
//! be taken inside H.

use crate::cyclo::{self, CyclotomicNumber};
use crate::group::{AffineGroup, ExplicitGroup, FiniteGroup};
use crate::{Error, Result};

use super::{dixon, Character, CharacterTable, Provenance};

/// One H-orbit on Irr(V) ∖ {1_V}, with the dual-vector representative, the
/// orbit length, and the stabilizer inside the H enumeration.
#[derive(Clone, Debug)]
pub struct DualOrbit {
    pub rep: u64,
    pub length: u64,
    pub stabilizer: Vec<u16>,
}

/// H-orbits on the dual module Irr(V) ≅ F_p^a under h·λ = λ ∘ (action of
/// h^{-1}), i.e. w ↦ w·M(h^{-1})^T on row vectors. Deterministic: orbit
/// representatives are the smallest unvisited vector indices in order.
pub fn dual_orbits(aff: &AffineGroup) -> Vec<DualOrbit> {
    let duals: Vec<crate::group::Matrix> = (0..aff.h_order())
        .map(|h| aff.matrices()[aff.h_inverse(h)].transpose())
        .collect();
    let gen_duals: Vec<&crate::group::Matrix> = aff
        .h_generator_indices()
        .iter()
        .map(|&h| &duals[h as usize])
        .collect();
    let pa = aff.module_size();
    let mut seen = vec![false; pa as usize];
    seen[0] = true;
    let mut orbits = Vec::new();
    let mut stack = Vec::new();
    for w0 in 1..pa {
        if seen[w0 as usize] {
            continue;
        }
        seen[w0 as usize] = true;
        stack.clear();
        stack.push(w0);
        let mut length = 1u64;
        while let Some(w) = stack.pop() {
            let wv = aff.decode_vec(w);
            let mut img = vec![0u32; aff.a];
            for d in &gen_duals {
                d.apply_row(&wv, &mut img);
                let wi = aff.encode_vec(&img);
                if !seen[wi as usize] {
                    seen[wi as usize] = true;
                    length += 1;
                    stack.push(wi);
                }
            }
        }
        let wv = aff.decode_vec(w0);
        let mut img = vec![0u32; aff.a];
        let stabilizer: Vec<u16> = (0..aff.h_order())
            .filter(|&h| {
                duals[h].apply_row(&wv, &mut img);
                aff.encode_vec(&img) == w0
            })
            .map(|h| h as u16)
            .collect();
        debug_assert_eq!(length * stabilizer.len() as u64, aff.h_order() as u64);
        orbits.push(DualOrbit { rep: w0, length, stabilizer });
    }
    orbits
}

/// H as an explicit-model group sharing the enumeration indices of `aff`.
pub fn h_group(aff: &AffineGroup) -> FiniteGroup {
    let table = ExplicitGroup::from_fn(aff.h_order() as u64, |x, y| {
        aff.h_mul(x as usize, y as usize) as u32
    })
    .expect("H is within the explicit limit");
    FiniteGroup::from_explicit("H", table)
}

/// A subgroup of H (by enumeration indices) as an explicit group, together
/// with the H-index → subgroup-index map.
pub fn subgroup_group(aff: &AffineGroup, members: &[u16]) -> (FiniteGroup, Vec<Option<u16>>) {
    let mut lookup: Vec<Option<u16>> = vec![None; aff.h_order()];
    for (i, &h) in members.iter().enumerate() {
        lookup[h as usize] = Some(i as u16);
    }
    let table = ExplicitGroup::from_fn(members.len() as u64, |x, y| {
        let z = aff.h_mul(members[x as usize] as usize, members[y as usize] as usize);
        lookup[z].expect("subgroup is closed") as u32
    })
    .expect("stabilizers are within the explicit limit");
    (FiniteGroup::from_explicit("T", table), lookup)
}

pub fn clifford_table(g: &FiniteGroup) -> Result<CharacterTable> {
    let aff = g
        .affine()
        .ok_or_else(|| Error::Precondition("Clifford engine needs the affine model".into()))?;
    let hg = h_group(aff);
    let h_table = dixon::generic_table(&hg, 0)?;
    let h_classes = hg.classes();
    let g_classes = g.classes();
    let k = g_classes.class_count();
    let p = aff.p as u64;

    // conjugates (h,0)·rep·(h,0)^{-1} for every class rep and every h ∈ H,
    // shared by all induced characters
    let conj: Vec<Vec<u32>> = g_classes
        .reps
        .iter()
        .map(|&rep| {
            (0..aff.h_order())
                .map(|h| {
                    let x = aff.encode(h, 0);
                    g.mul(g.mul(x, rep), g.inv(x))
                })
                .collect()
        })
        .collect();

    let mut characters: Vec<Character> = Vec::with_capacity(k);

    // inflations of Irr(H) through G → H
    for chi in &h_table.characters {
        let values = g_classes
            .reps
            .iter()
            .map(|&rep| chi.values[h_classes.class_of[aff.h_part(rep)] as usize].clone())
            .collect();
        characters.push(Character { degree: chi.degree, values });
    }

    // induced characters per orbit
    for orbit in dual_orbits(aff) {
        let w = aff.decode_vec(orbit.rep);
        let (tg, h_to_t) = subgroup_group(aff, &orbit.stabilizer);
        let t_table = dixon::generic_table(&tg, 0)?;
        let t_classes = tg.classes();
        // right-coset representatives of T in H
        let mut covered = vec![false; aff.h_order()];
        let mut coset_reps = Vec::with_capacity(orbit.length as usize);
        for h in 0..aff.h_order() {
            if covered[h] {
                continue;
            }
            coset_reps.push(h);
            for &t in &orbit.stabilizer {
                covered[aff.h_mul(t as usize, h)] = true;
            }
        }
        debug_assert_eq!(coset_reps.len() as u64, orbit.length);

        for tau in &t_table.characters {
            let degree = orbit.length * tau.degree;
            let mut values = Vec::with_capacity(k);
            for (ct, _) in g_classes.reps.iter().enumerate() {
                let mut summands: Vec<CyclotomicNumber> = Vec::new();
                for &c in &coset_reps {
                    let u = conj[ct][c];
                    let hu = aff.h_part(u);
                    let Some(ti) = h_to_t[hu] else { continue };
                    let vu = aff.decode_vec(aff.v_part(u));
                    let pairing: u64 = vu
                        .iter()
                        .zip(&w)
                        .map(|(&x, &y)| x as u64 * y as u64)
                        .sum::<u64>()
                        % p;
                    let tau_val = &tau.values[t_classes.class_of[ti as usize] as usize];
                    let root = CyclotomicNumber::root_of_unity(p, pairing);
                    summands.push(tau_val.mul(&root));
                }
                values.push(cyclo::sum_values(&summands));
            }
            characters.push(Character { degree, values });
        }
    }

    CharacterTable::assemble(g, Provenance::Clifford, characters)
}

/// Bookkeeping record mirroring how the Clifford engine counted characters;
/// used by the orbit-count cross-checks.
#[derive(Clone, Debug)]
pub struct CliffordBookkeeping {
    pub h_table: CharacterTable,
    pub orbits: Vec<DualOrbit>,
    pub stabilizer_tables: Vec<CharacterTable>,
}

pub fn bookkeeping(g: &FiniteGroup) -> Result<CliffordBookkeeping> {
    let aff = g
        .affine()
        .ok_or_else(|| Error::Precondition("Clifford engine needs the affine model".into()))?;
    let hg = h_group(aff);
    let h_table = dixon::generic_table(&hg, 0)?;
    let orbits = dual_orbits(aff);
    let stabilizer_tables = orbits
        .iter()
        .map(|o| {
            let (tg, _) = subgroup_group(aff, &o.stabilizer);
            dixon::generic_table(&tg, 0)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CliffordBookkeeping { h_table, orbits, stabilizer_tables })
}

/// Orbit lengths under the non-dual action (w ↦ w·M(h)), used to confirm
/// that the orbit-length statistics do not depend on the duality convention.
pub fn direct_orbit_lengths(aff: &AffineGroup) -> Vec<u64> {
    let gens: Vec<&crate::group::Matrix> = aff
        .h_generator_indices()
        .iter()
        .map(|&h| &aff.matrices()[h as usize])
        .collect();
    let pa = aff.module_size();
    let mut seen = vec![false; pa as usize];
    seen[0] = true;
    let mut lengths = Vec::new();
    let mut stack = Vec::new();
    for w0 in 1..pa {
        if seen[w0 as usize] {
            continue;
        }
        seen[w0 as usize] = true;
        stack.clear();
        stack.push(w0);
        let mut length = 1u64;
        while let Some(cur) = stack.pop() {
            let wv = aff.decode_vec(cur);
            let mut img = vec![0u32; aff.a];
            for m in &gens {
                m.apply_row(&wv, &mut img);
                let wi = aff.encode_vec(&img);
                if !seen[wi as usize] {
                    seen[wi as usize] = true;
                    length += 1;
                    stack.push(wi);
                }
            }
        }
        lengths.push(length);
    }
    lengths.sort_unstable();
    lengths
}
