//! Exact character tables by two independent routes: a class-algebra engine
//! for any group with a small explicit model, and a Clifford-theory engine
//! for affine groups H ⋉ V.

pub mod clifford;
pub mod dixon;
pub mod modular;

use num::{One, Zero};
use serde::Serialize;

use crate::cyclo::CyclotomicNumber;
use crate::group::{FiniteGroup, Subgroup};
use crate::rational::{self, Rational};
use crate::{Error, Result};

/// One exact irreducible character: values indexed by conjugacy class.
#[derive(Clone, Debug, Serialize)]
pub struct Character {
    pub degree: u64,
    pub values: Vec<CyclotomicNumber>,
}

impl Character {
    pub fn is_linear(&self) -> bool {
        self.degree == 1
    }

    /// Whether every value lies in Q(ζ_m).
    pub fn values_in_cyclotomic(&self, m: u64) -> bool {
        self.values.iter().all(|v| v.in_cyclotomic_field(m))
    }

    /// Value-wise k-th power (used on linear characters).
    pub fn pointwise_pow(&self, k: u64) -> Vec<CyclotomicNumber> {
        self.values
            .iter()
            .map(|v| {
                let mut acc = CyclotomicNumber::one();
                for _ in 0..k {
                    acc = acc.mul(v);
                }
                acc
            })
            .collect()
    }

    fn sort_key(&self) -> (u64, Vec<String>) {
        (
            self.degree,
            self.values.iter().map(|v| format!("[{}]{}", v.order(), v)).collect(),
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Provenance {
    Generic,
    Clifford,
}

/// A complete exact character table, carrying the class data it is indexed by.
#[derive(Clone, Debug, Serialize)]
pub struct CharacterTable {
    pub group_label: String,
    pub order: u64,
    pub provenance: Provenance,
    pub class_reps: Vec<u32>,
    pub class_sizes: Vec<u64>,
    pub class_rep_orders: Vec<u64>,
    pub inverse_class: Vec<u32>,
    pub characters: Vec<Character>,
}

impl CharacterTable {
    /// Assembles a table: captures class data, sorts rows canonically
    /// (degree, then value rendering), and verifies the basic identities
    /// (count = class count, Σ deg² = |G|, identity column, degree | |G|,
    /// and ⟨χ,χ⟩ = 1 for every row).
    pub fn assemble(
        g: &FiniteGroup,
        provenance: Provenance,
        mut characters: Vec<Character>,
    ) -> Result<CharacterTable> {
        let classes = g.classes();
        characters.sort_by_cached_key(|c| c.sort_key());
        let table = CharacterTable {
            group_label: g.label().to_string(),
            order: g.order(),
            provenance,
            class_reps: classes.reps.clone(),
            class_sizes: classes.sizes.clone(),
            class_rep_orders: classes.reps.iter().map(|&r| g.element_order(r)).collect(),
            inverse_class: classes.inverse_class.clone(),
            characters,
        };
        table.verify_basic()?;
        Ok(table)
    }

    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    fn verify_basic(&self) -> Result<()> {
        let k = self.class_count();
        if self.characters.len() != k {
            return Err(Error::BadTable(format!(
                "{} characters for {} classes",
                self.characters.len(),
                k
            )));
        }
        let mut degree_sq = 0u64;
        for chi in &self.characters {
            degree_sq += chi.degree * chi.degree;
            if self.order % chi.degree != 0 {
                return Err(Error::BadTable(format!(
                    "degree {} does not divide |G| = {}",
                    chi.degree, self.order
                )));
            }
            if chi.values.len() != k {
                return Err(Error::BadTable("row length mismatch".into()));
            }
            if chi.values[0].as_rational() != Some(rational::uint(chi.degree)) {
                return Err(Error::BadTable(format!(
                    "identity value {} differs from degree {}",
                    chi.values[0], chi.degree
                )));
            }
        }
        if degree_sq != self.order {
            return Err(Error::BadTable(format!(
                "Σ degree² = {} but |G| = {}",
                degree_sq, self.order
            )));
        }
        for (i, chi) in self.characters.iter().enumerate() {
            let norm = self.inner_product(chi, chi);
            if norm != Rational::one() {
                return Err(Error::BadTable(format!("⟨χ_{i},χ_{i}⟩ = {norm} ≠ 1")));
            }
        }
        Ok(())
    }

    /// ⟨χ, ψ⟩ = (1/|G|) Σ_t |C_t| χ(g_t) conj(ψ(g_t)), exact; conjugation is
    /// the Galois map ζ ↦ ζ^{-1}.
    pub fn inner_product(&self, chi: &Character, psi: &Character) -> Rational {
        let mut acc = CyclotomicNumber::zero();
        for t in 0..self.class_count() {
            let term = chi.values[t].mul(&psi.values[t].conj());
            acc = acc.add(&term.scale(&rational::uint(self.class_sizes[t])));
        }
        let r = acc
            .as_rational()
            .expect("class sums of χ·ψ̄ over a full table are rational");
        r / rational::uint(self.order)
    }

    /// Exact pairwise row orthogonality and column orthogonality. Quadratic
    /// in the class count times value size; intended for |G| ≤ 1000.
    pub fn verify_orthogonality(&self) -> Result<()> {
        let k = self.class_count();
        for i in 0..k {
            for j in 0..k {
                let expect = if i == j { Rational::one() } else { Rational::zero() };
                let got = self.inner_product(&self.characters[i], &self.characters[j]);
                if got != expect {
                    return Err(Error::BadTable(format!("⟨χ_{i},χ_{j}⟩ = {got}")));
                }
            }
        }
        for s in 0..k {
            for t in 0..k {
                let mut acc = CyclotomicNumber::zero();
                for chi in &self.characters {
                    acc = acc.add(&chi.values[s].mul(&chi.values[t].conj()));
                }
                let expect = if s == t {
                    rational::uint(self.order / self.class_sizes[s])
                } else {
                    Rational::zero()
                };
                if acc.as_rational() != Some(expect) {
                    return Err(Error::BadTable(format!(
                        "column orthogonality fails at ({s},{t})"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Kernel of a character: the elements where χ takes its degree value.
    /// Verified as a normal subgroup when the parent is small.
    pub fn kernel_of(&self, g: &FiniteGroup, chi: &Character) -> Subgroup {
        let deg = CyclotomicNumber::from_rational(rational::uint(chi.degree));
        let classes = g.classes();
        let mut elements: Vec<u32> = Vec::new();
        for x in 0..g.order() as u32 {
            if chi.values[classes.class_of[x as usize] as usize] == deg {
                elements.push(x);
            }
        }
        let sub = Subgroup::from_sorted(g.order(), elements);
        if g.order() <= 4096 {
            sub.verify(g).expect("character kernels are subgroups");
            assert!(sub.is_normal(g), "character kernels are normal");
        }
        sub
    }

    /// The multiset of (degree, value renderings) rows, for engine-agreement
    /// comparisons between tables built on the same class set.
    pub fn row_multiset(&self) -> Vec<(u64, Vec<String>)> {
        let mut rows: Vec<(u64, Vec<String>)> =
            self.characters.iter().map(|c| c.sort_key()).collect();
        rows.sort();
        rows
    }

    /// Deterministic JSON rendering of the table.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "group": self.group_label,
            "order": self.order,
            "provenance": format!("{:?}", self.provenance),
            "classes": (0..self.class_count()).map(|t| serde_json::json!({
                "rep": self.class_reps[t],
                "size": self.class_sizes[t],
                "repOrder": self.class_rep_orders[t],
            })).collect::<Vec<_>>(),
            "characters": self.characters.iter().map(|c| serde_json::json!({
                "degree": c.degree,
                "values": c.values.iter().map(|v| serde_json::json!({
                    "n": v.order(),
                    "value": v.to_string(),
                })).collect::<Vec<_>>(),
            })).collect::<Vec<_>>(),
        })
    }

    pub fn degrees(&self) -> Vec<u64> {
        self.characters.iter().map(|c| c.degree).collect()
    }
}

/// Engine dispatch: Clifford for affine groups, class-algebra otherwise.
pub fn table_for(g: &FiniteGroup, seed: u64) -> Result<CharacterTable> {
    match g.affine() {
        Some(_) => clifford::clifford_table(g),
        None => dixon::generic_table(g, seed),
    }
}

/// Computes the table with both engines and checks that the row multisets
/// agree; returns the Clifford table on success.
pub fn cross_checked_table(g: &FiniteGroup, seed: u64) -> Result<CharacterTable> {
    let aff = clifford::clifford_table(g)?;
    let explicit = g.to_explicit()?;
    let gen = dixon::generic_table(&explicit, seed)?;
    if aff.row_multiset() != gen.row_multiset() {
        return Err(Error::EngineMismatch(g.label().to_string()));
    }
    Ok(aff)
}
