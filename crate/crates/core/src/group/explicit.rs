//! The explicit multiplication-table model.

use crate::numth::splitmix64;
use crate::{Error, Result};

/// Largest order for which a dense multiplication table is kept.
pub const EXPLICIT_LIMIT: u64 = 4096;

/// A finite group given by its full multiplication table. Element ids are
/// `0..n` with the identity at 0.
#[derive(Clone, Debug)]
pub struct ExplicitGroup {
    n: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    orders: Vec<u32>,
}

impl ExplicitGroup {
    /// Builds a table from a multiplication closure and validates the group
    /// axioms: identity at 0, inverses (rows are permutations), and
    /// associativity spot-checked on pseudo-random triples.
    pub fn from_fn(n: u64, mul: impl Fn(u32, u32) -> u32) -> Result<Self> {
        if n == 0 || n > EXPLICIT_LIMIT {
            return Err(Error::ExplicitTooLarge { order: n, limit: EXPLICIT_LIMIT });
        }
        let n = n as usize;
        let mut table = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = mul(x as u32, y as u32);
                assert!((z as usize) < n, "multiplication out of range");
                table[x * n + y] = z as u16;
            }
        }
        Self::from_table(n, table)
    }

    pub fn from_table(n: usize, table: Vec<u16>) -> Result<Self> {
        assert_eq!(table.len(), n * n);
        for x in 0..n {
            if table[x * n] as usize != x || table[x] as usize != x {
                return Err(Error::Precondition(format!(
                    "element 0 is not a two-sided identity at {x}"
                )));
            }
        }
        let mut inv = vec![u16::MAX; n];
        for x in 0..n {
            let mut seen = vec![false; n];
            for y in 0..n {
                let z = table[x * n + y] as usize;
                if seen[z] {
                    return Err(Error::Precondition(format!("row {x} is not a permutation")));
                }
                seen[z] = true;
                if z == 0 {
                    inv[x] = y as u16;
                }
            }
        }
        // associativity fuzz on deterministic pseudo-random triples
        let mut state = 0x9e3779b97f4a7c15u64;
        let checks = (n as u64 * 8).clamp(64, 4096);
        for _ in 0..checks {
            state = splitmix64(state);
            let x = (state % n as u64) as usize;
            state = splitmix64(state);
            let y = (state % n as u64) as usize;
            state = splitmix64(state);
            let z = (state % n as u64) as usize;
            let xy_z = table[table[x * n + y] as usize * n + z];
            let x_yz = table[x * n + table[y * n + z] as usize];
            if xy_z != x_yz {
                return Err(Error::Precondition(format!(
                    "multiplication not associative at ({x},{y},{z})"
                )));
            }
        }
        let mut orders = vec![0u32; n];
        for x in 0..n {
            let mut acc = x;
            let mut k = 1u32;
            while acc != 0 {
                acc = table[acc * n + x] as usize;
                k += 1;
            }
            orders[x] = k;
        }
        Ok(ExplicitGroup { n, table, inv, orders })
    }

    pub fn order(&self) -> u64 {
        self.n as u64
    }

    #[inline]
    pub fn mul(&self, x: u32, y: u32) -> u32 {
        self.table[x as usize * self.n + y as usize] as u32
    }

    #[inline]
    pub fn inv(&self, x: u32) -> u32 {
        self.inv[x as usize] as u32
    }

    pub fn element_order(&self, x: u32) -> u64 {
        self.orders[x as usize] as u64
    }

    /// Cyclic group of order n (addition mod n).
    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 0 || n > EXPLICIT_LIMIT {
            return Err(Error::ExplicitTooLarge { order: n, limit: EXPLICIT_LIMIT });
        }
        Self::from_fn(n, |x, y| ((x as u64 + y as u64) % n) as u32)
    }

    /// Elementary abelian group of order p^a (vector addition over F_p).
    pub fn elementary_abelian(p: u64, a: u32) -> Result<Self> {
        if !crate::numth::is_prime(p) {
            return Err(Error::Precondition(format!("{p} is not prime")));
        }
        let n = p.checked_pow(a).filter(|&n| n <= EXPLICIT_LIMIT).ok_or(
            Error::ExplicitTooLarge { order: u64::MAX, limit: EXPLICIT_LIMIT },
        )?;
        if a == 0 {
            return Err(Error::Precondition("exponent a must be positive".into()));
        }
        Self::from_fn(n, |x, y| {
            let (mut x, mut y, mut out, mut mult) = (x as u64, y as u64, 0u64, 1u64);
            for _ in 0..a {
                out += (x % p + y % p) % p * mult;
                x /= p;
                y /= p;
                mult *= p;
            }
            out as u32
        })
    }
}
