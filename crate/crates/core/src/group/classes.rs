//! Conjugacy-class computation shared by both group models.

use super::FiniteGroup;
use crate::numth::factorize;

/// Complete conjugacy-class data: representatives (the smallest element id in
/// each class), class sizes, the element → class map, inverse classes, and
/// prime power maps.
#[derive(Clone, Debug)]
pub struct ConjugacyClassSet {
    pub reps: Vec<u32>,
    pub sizes: Vec<u64>,
    pub class_of: Vec<u32>,
    pub inverse_class: Vec<u32>,
    /// For each prime q dividing the exponent: class index → class of q-th powers.
    pub power_maps: Vec<(u64, Vec<u32>)>,
}

impl ConjugacyClassSet {
    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    /// Elements grouped by class, each group ascending.
    pub fn members(&self, n: usize) -> Vec<Vec<u32>> {
        let mut out = vec![Vec::new(); self.reps.len()];
        for x in 0..n {
            out[self.class_of[x] as usize].push(x as u32);
        }
        out
    }
}

pub(super) fn compute(g: &FiniteGroup) -> ConjugacyClassSet {
    let n = g.order() as usize;
    let gens = g.generators();
    const UNSEEN: u32 = u32::MAX;
    let mut class_of = vec![UNSEEN; n];
    let mut reps = Vec::new();
    let mut sizes = Vec::new();
    let mut queue = Vec::new();
    for x in 0..n as u32 {
        if class_of[x as usize] != UNSEEN {
            continue;
        }
        let k = reps.len() as u32;
        reps.push(x);
        class_of[x as usize] = k;
        queue.clear();
        queue.push(x);
        let mut size = 1u64;
        while let Some(y) = queue.pop() {
            for &gen in gens {
                let c = g.conjugate(y, gen);
                if class_of[c as usize] == UNSEEN {
                    class_of[c as usize] = k;
                    size += 1;
                    queue.push(c);
                }
            }
        }
        sizes.push(size);
    }

    let inverse_class = reps
        .iter()
        .map(|&r| class_of[g.inv(r) as usize])
        .collect();

    let power_maps = factorize(g.exponent())
        .into_iter()
        .map(|(q, _)| {
            let map = reps
                .iter()
                .map(|&r| class_of[g.pow(r, q) as usize])
                .collect();
            (q, map)
        })
        .collect();

    ConjugacyClassSet { reps, sizes, class_of, inverse_class, power_maps }
}
