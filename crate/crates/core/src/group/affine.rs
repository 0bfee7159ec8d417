//! The affine model: G = H ⋉ F_p^a for an enumerated matrix group H ≤ GL(a, p).
//!
//! Elements are pairs (h, v) encoded as `h_idx * p^a + v_idx` with v encoded
//! base p, least-significant coordinate first. Multiplication uses the right
//! action of H on row vectors:
//!
//!   (h1, v1) · (h2, v2) = (h1 h2, v1·M(h2) + v2).

use crate::numth::is_prime;
use crate::{Error, Result};

/// Cap on the number of matrices enumerated for H.
pub const H_ENUMERATION_CAP: usize = 10_000;

/// Dense a×a matrix over F_p, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub a: usize,
    pub p: u32,
    pub e: Vec<u32>,
}

impl Matrix {
    pub fn identity(a: usize, p: u32) -> Self {
        let mut e = vec![0; a * a];
        for i in 0..a {
            e[i * a + i] = 1;
        }
        Matrix { a, p, e }
    }

    pub fn zero(a: usize, p: u32) -> Self {
        Matrix { a, p, e: vec![0; a * a] }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> u32 {
        self.e[i * self.a + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        let a = self.a;
        let p = self.p as u64;
        let mut out = Matrix::zero(a, self.p);
        for i in 0..a {
            for k in 0..a {
                let x = self.at(i, k) as u64;
                if x == 0 {
                    continue;
                }
                for j in 0..a {
                    let cur = out.e[i * a + j] as u64;
                    out.e[i * a + j] = ((cur + x * other.at(k, j) as u64) % p) as u32;
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let p = self.p;
        Matrix {
            a: self.a,
            p,
            e: self.e.iter().zip(&other.e).map(|(&x, &y)| (x + y) % p).collect(),
        }
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u32], out: &mut [u32]) {
        let a = self.a;
        let p = self.p as u64;
        for j in 0..a {
            let mut acc = 0u64;
            for i in 0..a {
                acc += v[i] as u64 * self.at(i, j) as u64;
            }
            out[j] = (acc % p) as u32;
        }
    }

    pub fn transpose(&self) -> Self {
        let a = self.a;
        let mut out = Matrix::zero(a, self.p);
        for i in 0..a {
            for j in 0..a {
                out.e[j * a + i] = self.at(i, j);
            }
        }
        out
    }

    /// Inverse by Gaussian elimination; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        let a = self.a;
        let p = self.p as u64;
        let mut m: Vec<u64> = self.e.iter().map(|&x| x as u64).collect();
        let mut inv: Vec<u64> = Matrix::identity(a, self.p).e.iter().map(|&x| x as u64).collect();
        for col in 0..a {
            let pivot = (col..a).find(|&r| m[r * a + col] % p != 0)?;
            if pivot != col {
                for j in 0..a {
                    m.swap(col * a + j, pivot * a + j);
                    inv.swap(col * a + j, pivot * a + j);
                }
            }
            let pv = crate::numth::mod_inv(m[col * a + col] % p, p);
            for j in 0..a {
                m[col * a + j] = m[col * a + j] % p * pv % p;
                inv[col * a + j] = inv[col * a + j] % p * pv % p;
            }
            for r in 0..a {
                if r == col {
                    continue;
                }
                let f = m[r * a + col] % p;
                if f == 0 {
                    continue;
                }
                for j in 0..a {
                    m[r * a + j] = (m[r * a + j] + (p - f) * m[col * a + j]) % p;
                    inv[r * a + j] = (inv[r * a + j] + (p - f) * inv[col * a + j]) % p;
                }
            }
        }
        Some(Matrix { a, p: self.p, e: inv.into_iter().map(|x| x as u32).collect() })
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(self.a, self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|&x| x == 0)
    }
}

/// Enumerated matrix-group data for H together with the module dimension.
#[derive(Clone, Debug)]
pub struct AffineGroup {
    pub p: u32,
    pub a: usize,
    pa: u64,
    mats: Vec<Matrix>,
    h_mul: Vec<u16>,
    h_inv: Vec<u16>,
    h_orders: Vec<u32>,
    h_gens: Vec<u16>,
    /// For each h of order d: N_h = I + M(h) + … + M(h)^{d−1}, so that
    /// (h, v)^d = (1, v·N_h); the element order is d or d·p accordingly.
    norm_mats: Vec<Matrix>,
}

impl AffineGroup {
    /// Builds H ⋉ F_p^a from generator matrices.
    ///
    /// Checks: p odd prime, generators invertible, |H| within the enumeration
    /// cap, |G| odd, and (when demanded) irreducibility of the module by the
    /// spanning test: the H-orbit of every nonzero vector spans F_p^a.
    /// The matrix action is faithful by construction; `require_faithful` is
    /// accepted for API symmetry and admits the trivial-H edge case.
    pub fn new(
        p: u32,
        a: usize,
        generators: &[Matrix],
        require_irreducible: bool,
        _require_faithful: bool,
    ) -> Result<Self> {
        if !is_prime(p as u64) || p == 2 {
            return Err(Error::Precondition(format!("p = {p} must be an odd prime")));
        }
        if a == 0 {
            return Err(Error::Precondition("dimension a must be positive".into()));
        }
        for g in generators {
            if g.a != a || g.p != p {
                return Err(Error::Precondition("generator shape mismatch".into()));
            }
            if g.inverse().is_none() {
                return Err(Error::SingularGenerator { p });
            }
        }
        // enumerate H by BFS from the identity
        let mut mats = vec![Matrix::identity(a, p)];
        let mut index = std::collections::HashMap::new();
        index.insert(mats[0].clone(), 0u16);
        let mut frontier = vec![0usize];
        while let Some(i) = frontier.pop() {
            for g in generators {
                let m = mats[i].mul(g);
                if !index.contains_key(&m) {
                    if mats.len() >= H_ENUMERATION_CAP {
                        return Err(Error::HEnumerationCap { cap: H_ENUMERATION_CAP });
                    }
                    index.insert(m.clone(), mats.len() as u16);
                    frontier.push(mats.len());
                    mats.push(m);
                }
            }
        }
        let h = mats.len();
        let pa = (p as u64).pow(a as u32);
        let order = h as u64 * pa;
        if order % 2 == 0 {
            return Err(Error::EvenOrder(order));
        }
        let mut h_mul = vec![0u16; h * h];
        for i in 0..h {
            for j in 0..h {
                h_mul[i * h + j] = index[&mats[i].mul(&mats[j])];
            }
        }
        let mut h_inv = vec![0u16; h];
        let mut h_orders = vec![0u32; h];
        let mut norm_mats = Vec::with_capacity(h);
        for i in 0..h {
            let mut acc = i; // i^k for k = 1, 2, …
            let mut ord = 1u32;
            while acc != 0 {
                let next = h_mul[acc * h + i] as usize;
                if next == 0 {
                    h_inv[i] = acc as u16;
                }
                acc = next;
                ord += 1;
            }
            h_orders[i] = ord;
            let mut norm = Matrix::zero(a, p);
            let mut pow = Matrix::identity(a, p);
            for _ in 0..ord {
                norm = norm.add(&pow);
                pow = pow.mul(&mats[i]);
            }
            norm_mats.push(norm);
        }
        let h_gens: Vec<u16> = generators.iter().map(|g| index[g]).collect();
        let out = AffineGroup { p, a, pa, mats, h_mul, h_inv, h_orders, h_gens, norm_mats };
        if require_irreducible && !out.module_is_irreducible() {
            return Err(Error::ReducibleModule);
        }
        Ok(out)
    }

    /// Spanning test: every nonzero vector's H-orbit spans the module.
    pub fn module_is_irreducible(&self) -> bool {
        if self.a == 1 {
            return true;
        }
        let mut basis: Vec<Vec<u32>> = Vec::new();
        let mut image = vec![0u32; self.a];
        for v_idx in 1..self.pa {
            let v = self.decode_vec(v_idx);
            basis.clear();
            for m in &self.mats {
                m.apply_row(&v, &mut image);
                add_to_span(&mut basis, &image, self.p);
                if basis.len() == self.a {
                    break;
                }
            }
            if basis.len() < self.a {
                return false;
            }
        }
        true
    }

    pub fn h_order(&self) -> usize {
        self.mats.len()
    }

    pub fn order(&self) -> u64 {
        self.mats.len() as u64 * self.pa
    }

    pub fn module_size(&self) -> u64 {
        self.pa
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn h_generator_indices(&self) -> &[u16] {
        &self.h_gens
    }

    #[inline]
    pub fn encode(&self, h: usize, v_idx: u64) -> u32 {
        (h as u64 * self.pa + v_idx) as u32
    }

    #[inline]
    pub fn h_part(&self, x: u32) -> usize {
        (x as u64 / self.pa) as usize
    }

    #[inline]
    pub fn v_part(&self, x: u32) -> u64 {
        x as u64 % self.pa
    }

    pub fn decode_vec(&self, mut v_idx: u64) -> Vec<u32> {
        let mut v = vec![0u32; self.a];
        for slot in v.iter_mut() {
            *slot = (v_idx % self.p as u64) as u32;
            v_idx /= self.p as u64;
        }
        v
    }

    pub fn encode_vec(&self, v: &[u32]) -> u64 {
        let mut idx = 0u64;
        for &c in v.iter().rev() {
            idx = idx * self.p as u64 + c as u64;
        }
        idx
    }

    pub fn h_mul(&self, i: usize, j: usize) -> usize {
        self.h_mul[i * self.mats.len() + j] as usize
    }

    pub fn h_inverse(&self, i: usize) -> usize {
        self.h_inv[i] as usize
    }

    pub fn h_element_order(&self, i: usize) -> u32 {
        self.h_orders[i]
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let (h1, v1) = (self.h_part(x), self.v_part(x));
        let (h2, v2) = (self.h_part(y), self.v_part(y));
        let m2 = &self.mats[h2];
        let v1d = self.decode_vec(v1);
        let mut moved = vec![0u32; self.a];
        m2.apply_row(&v1d, &mut moved);
        let v2d = self.decode_vec(v2);
        for (m, w) in moved.iter_mut().zip(&v2d) {
            *m = (*m + *w) % self.p;
        }
        self.encode(self.h_mul(h1, h2), self.encode_vec(&moved))
    }

    pub fn inv(&self, x: u32) -> u32 {
        let (h, v) = (self.h_part(x), self.v_part(x));
        let hi = self.h_inverse(h);
        let vd = self.decode_vec(v);
        let mut moved = vec![0u32; self.a];
        self.mats[hi].apply_row(&vd, &mut moved);
        for m in moved.iter_mut() {
            *m = (self.p - *m) % self.p;
        }
        self.encode(hi, self.encode_vec(&moved))
    }

    pub fn element_order(&self, x: u32) -> u64 {
        let (h, v) = (self.h_part(x), self.v_part(x));
        let d = self.h_orders[h] as u64;
        let vd = self.decode_vec(v);
        let mut img = vec![0u32; self.a];
        self.norm_mats[h].apply_row(&vd, &mut img);
        if img.iter().all(|&c| c == 0) {
            d
        } else {
            d * self.p as u64
        }
    }

    pub fn exponent(&self) -> u64 {
        let mut e = 1u64;
        for (i, norm) in self.norm_mats.iter().enumerate() {
            let d = self.h_orders[i] as u64;
            e = crate::numth::lcm(e, d);
            if !norm.is_zero() {
                e = crate::numth::lcm(e, d * self.p as u64);
            }
        }
        e
    }

    /// Generators of G: lifted H generators plus the standard basis of V.
    pub fn generators(&self) -> Vec<u32> {
        let mut gens: Vec<u32> = self.h_gens.iter().map(|&h| self.encode(h as usize, 0)).collect();
        for i in 0..self.a {
            let mut v = vec![0u32; self.a];
            v[i] = 1;
            gens.push(self.encode(0, self.encode_vec(&v)));
        }
        gens
    }
}

/// Adds `v` to a row-echelon span; returns true if the rank grew.
pub fn add_to_span(basis: &mut Vec<Vec<u32>>, v: &[u32], p: u32) -> bool {
    let mut v = v.to_vec();
    let pl = p as u64;
    for b in basis.iter() {
        let lead = b.iter().position(|&c| c != 0).expect("basis rows are nonzero");
        if v[lead] != 0 {
            let f = v[lead] as u64 * crate::numth::mod_inv(b[lead] as u64, pl) % pl;
            for (x, y) in v.iter_mut().zip(b) {
                *x = ((*x as u64 + (pl - f) * *y as u64) % pl) as u32;
            }
        }
    }
    if v.iter().all(|&c| c == 0) {
        return false;
    }
    basis.push(v);
    // keep rows in pivot order for reduction stability
    basis.sort_by_key(|b| b.iter().position(|&c| c != 0));
    true
}
