//! Frobenius bounds for the multiples of `r` generated by a set of
//! coefficients.
//!
//! For `r = gcd(cs)` every large enough multiple `r·n` is a nonnegative
//! integer combination of `cs`. [`frobenius_bound`] returns the least `N` such
//! that this holds for all `n ≥ N`; [`residue_set`] lists the `n < N` for which
//! it holds anyway.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use num_integer::Integer;

use crate::error::{Error, Result};

/// Least representable value in each residue class modulo the smallest
/// reduced generator.
struct Residues {
    modulus: u64,
    least: Vec<u64>,
}

impl Residues {
    fn new(r: u64, cs: &[u64]) -> Result<Option<Self>> {
        let g = cs.iter().fold(0u64, |g, &c| g.gcd(&c));
        if g != r {
            return Err(Error::InvalidArgument(format!(
                "r = {r} is not the gcd {g} of {cs:?}"
            )));
        }
        if r == 0 {
            return Ok(None);
        }
        let gens: BTreeSet<u64> = cs.iter().filter(|&&c| c > 0).map(|&c| c / r).collect();
        let modulus = *gens.first().expect("some generator is positive");
        let mut least = vec![u64::MAX; modulus as usize];
        least[0] = 0;
        let mut heap = BinaryHeap::from([Reverse((0u64, 0usize))]);
        while let Some(Reverse((dist, res))) = heap.pop() {
            if dist > least[res] {
                continue;
            }
            for &g in gens.iter().skip(1) {
                let next = dist + g;
                let slot = (next % modulus) as usize;
                if next < least[slot] {
                    least[slot] = next;
                    heap.push(Reverse((next, slot)));
                }
            }
        }
        Ok(Some(Residues { modulus, least }))
    }

    fn representable(&self, n: u64) -> bool {
        self.least[(n % self.modulus) as usize] <= n
    }

    fn bound(&self) -> u64 {
        let max = *self.least.iter().max().expect("nonempty");
        (max + 1).saturating_sub(self.modulus)
    }
}

/// Least `N` with `r·n` representable over `cs` for every `n ≥ N`.
/// Requires `r = gcd(cs)`; `r = 0` gives `0`.
pub fn frobenius_bound(r: u64, cs: &[u64]) -> Result<u64> {
    Ok(Residues::new(r, cs)?.map_or(0, |res| res.bound()))
}

/// The `n < n_bound` with `r·n` representable over `cs`.
pub fn residue_set(r: u64, cs: &[u64], n_bound: u64) -> Result<BTreeSet<u64>> {
    Ok(match Residues::new(r, cs)? {
        None => BTreeSet::new(),
        Some(res) => (0..n_bound).filter(|&n| res.representable(n)).collect(),
    })
}
