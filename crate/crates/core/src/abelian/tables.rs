//! Index-based arithmetic for small abelian groups, used by the exhaustive
//! searches. Elements are their mixed-radix indices.

use super::FiniteAbelianGroup;
use crate::error::{Error, Result};

/// Largest group order for which an addition table is built.
pub(crate) const MAX_TABLE_GROUP: u64 = 1024;

pub(crate) struct Tables {
    pub group: FiniteAbelianGroup,
    pub n: usize,
    pub factors: Vec<u64>,
    strides: Vec<usize>,
    add: Vec<u16>,
    /// Index of the i-th canonical generator.
    pub gens: Vec<usize>,
}

impl Tables {
    pub fn new(group: &FiniteAbelianGroup) -> Result<Self> {
        let order = group.order();
        if order > MAX_TABLE_GROUP {
            return Err(Error::BoundExceeded {
                what: "group order for table arithmetic",
                value: order as u128,
                limit: MAX_TABLE_GROUP as u128,
            });
        }
        let n = order as usize;
        let factors = group.invariant_factors().to_vec();
        let k = factors.len();
        let mut strides = vec![1usize; k];
        for i in (0..k.saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * factors[i + 1] as usize;
        }
        let digits: Vec<Vec<u64>> = (0..n)
            .map(|x| (0..k).map(|i| (x / strides[i]) as u64 % factors[i]).collect())
            .collect();
        let mut add = vec![0u16; n * n];
        for x in 0..n {
            for y in 0..n {
                let mut z = 0;
                for i in 0..k {
                    z += ((digits[x][i] + digits[y][i]) % factors[i]) as usize * strides[i];
                }
                add[x * n + y] = z as u16;
            }
        }
        Ok(Tables {
            group: group.clone(),
            n,
            gens: strides.clone(),
            factors,
            strides,
            add,
        })
    }

    #[inline]
    pub fn add(&self, x: usize, y: usize) -> usize {
        self.add[x * self.n + y] as usize
    }

    #[inline]
    pub fn digit(&self, x: usize, i: usize) -> u64 {
        (x / self.strides[i]) as u64 % self.factors[i]
    }

    pub fn scale(&self, k: u64, x: usize) -> usize {
        (0..self.factors.len())
            .map(|i| {
                let d = self.factors[i];
                ((self.digit(x, i) * (k % d)) % d) as usize * self.strides[i]
            })
            .sum()
    }

    /// Elements `y` with `d * y = 0`, ascending.
    pub fn torsion(&self, d: u64) -> Vec<usize> {
        (0..self.n).filter(|&y| self.scale(d, y) == 0).collect()
    }

    /// Full table of the endomorphism sending generator `i` to `images[i]`.
    pub fn full_table(&self, images: &[usize]) -> Vec<u16> {
        let mut table = vec![0u16; self.n];
        let k = self.factors.len();
        for x in 1..self.n {
            // least significant nonzero digit
            let j = (0..k).rev().find(|&j| self.digit(x, j) != 0).expect("x != 0");
            let prev = table[x - self.strides[j]] as usize;
            table[x] = self.add(prev, images[j]) as u16;
        }
        table
    }
}
