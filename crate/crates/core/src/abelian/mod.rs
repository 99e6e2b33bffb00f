//! Finite abelian groups in invariant-factor normal form.
//!
//! A group is stored as its invariant factors `d1 | d2 | ... | dk` with
//! `d1 >= 2`; the trivial group has no factors and a single element, the
//! empty tuple. Elements are coordinate tuples with `coords[i] < d_i`. The
//! element index used by the enumeration helpers is the mixed-radix value of
//! the coordinates with the first coordinate most significant, so index order
//! coincides with lexicographic order of coordinates.

mod snf;
mod tables;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};

pub use snf::{smith_normal_form, IntegerMatrix, SmithForm};
pub(crate) use tables::Tables;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteAbelianGroup {
    factors: Arc<[u64]>,
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AbelianElement {
    group: FiniteAbelianGroup,
    coords: Vec<u64>,
}

/// Normalises an arbitrary list of cyclic orders to invariant factors.
fn invariant_factors_of(orders: &[u64]) -> Vec<u64> {
    let mut by_prime: BTreeMap<u64, Vec<u32>> = BTreeMap::new();
    for &n in orders {
        for (p, e) in arith::factorize(n) {
            by_prime.entry(p).or_default().push(e);
        }
    }
    let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
    let mut factors = vec![1u64; len];
    for (p, mut exps) in by_prime {
        exps.sort_unstable();
        // Largest exponents go to the largest (last) factors.
        let offset = len - exps.len();
        for (i, e) in exps.into_iter().enumerate() {
            factors[offset + i] *= p.pow(e);
        }
    }
    factors
}

impl FiniteAbelianGroup {
    /// The group `Z/n1 x Z/n2 x ...` in canonical invariant-factor form.
    pub fn new(orders: &[u64]) -> Result<Self> {
        if let Some(&bad) = orders.iter().find(|&&n| n == 0) {
            return Err(Error::InvalidFactor(bad));
        }
        Ok(FiniteAbelianGroup {
            factors: invariant_factors_of(orders).into(),
        })
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            factors: Arc::from(Vec::new()),
        }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    /// Parses `"2,2,2"`, `"4"`, `"1"` or `""`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Self::trivial());
        }
        let orders = s
            .trim_matches(|c| c == '[' || c == ']')
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad invariant factor {t:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(&orders)
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.factors.last().copied().unwrap_or(1)
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    pub fn identity(&self) -> AbelianElement {
        AbelianElement {
            group: self.clone(),
            coords: vec![0; self.rank()],
        }
    }

    /// Element with the given coordinates; each must lie in `[0, d_i)`.
    pub fn element(&self, coords: &[u64]) -> Result<AbelianElement> {
        if coords.len() != self.rank() {
            return Err(Error::ParentMismatch {
                element: fmt_tuple(coords),
                group: self.to_string(),
            });
        }
        for (&c, &d) in coords.iter().zip(self.factors.iter()) {
            if c >= d {
                return Err(Error::CoordinateOutOfRange { value: c, modulus: d });
            }
        }
        Ok(AbelianElement {
            group: self.clone(),
            coords: coords.to_vec(),
        })
    }

    /// Element from arbitrary integers, reduced into range.
    pub fn element_reduced(&self, coords: &[i64]) -> Result<AbelianElement> {
        if coords.len() != self.rank() {
            return Err(Error::ParentMismatch {
                element: format!("{coords:?}"),
                group: self.to_string(),
            });
        }
        Ok(AbelianElement {
            group: self.clone(),
            coords: coords
                .iter()
                .zip(self.factors.iter())
                .map(|(&c, &d)| c.rem_euclid(d as i64) as u64)
                .collect(),
        })
    }

    /// Parses an element literal such as `"(1,0,1)"`; a bare integer is
    /// accepted for cyclic groups.
    pub fn parse_element(&self, s: &str) -> Result<AbelianElement> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        let coords = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|t| {
                    t.trim()
                        .parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad element literal {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?
        };
        self.element_reduced(&coords)
    }

    /// Parses a list of element literals `"(1,0),(0,1)"`.
    pub fn parse_elements(&self, s: &str) -> Result<Vec<AbelianElement>> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Vec::new());
        }
        if !s.contains('(') {
            return s.split(',').map(|t| self.parse_element(t)).collect();
        }
        s.split(')')
            .map(|t| t.trim().trim_start_matches(',').trim())
            .filter(|t| !t.is_empty())
            .map(|t| self.parse_element(t))
            .collect()
    }

    /// The canonical generators `e_i`.
    pub fn generators(&self) -> Vec<AbelianElement> {
        (0..self.rank())
            .map(|i| {
                let mut coords = vec![0; self.rank()];
                coords[i] = 1;
                AbelianElement {
                    group: self.clone(),
                    coords,
                }
            })
            .collect()
    }

    pub fn index_of(&self, x: &AbelianElement) -> usize {
        self.index_of_coords(&x.coords)
    }

    pub(crate) fn index_of_coords(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(self.factors.iter())
            .fold(0usize, |acc, (&c, &d)| acc * d as usize + c as usize)
    }

    pub fn element_at(&self, mut index: usize) -> AbelianElement {
        let mut coords = vec![0; self.rank()];
        for i in (0..self.rank()).rev() {
            let d = self.factors[i] as usize;
            coords[i] = (index % d) as u64;
            index /= d;
        }
        AbelianElement {
            group: self.clone(),
            coords,
        }
    }

    /// All elements in lexicographic order of coordinates.
    pub fn elements(&self) -> impl Iterator<Item = AbelianElement> + '_ {
        (0..self.order() as usize).map(move |i| self.element_at(i))
    }

    fn check(&self, x: &AbelianElement) -> Result<()> {
        if x.group == *self {
            Ok(())
        } else {
            Err(Error::ParentMismatch {
                element: x.to_string(),
                group: self.to_string(),
            })
        }
    }

    /// Least `n >= 1` with `n*x = 0`.
    pub fn element_order(&self, x: &AbelianElement) -> Result<u64> {
        self.check(x)?;
        Ok(x.order())
    }

    /// Number of elements of order exactly 2.
    pub fn involution_count(&self) -> u64 {
        let even = self.factors.iter().filter(|d| *d % 2 == 0).count() as u32;
        2u64.pow(even) - 1
    }

    /// The subgroup generated by `gens`, sorted lexicographically.
    pub fn subgroup_closure(&self, gens: &[AbelianElement]) -> Result<Vec<AbelianElement>> {
        for g in gens {
            self.check(g)?;
        }
        let mut member = vec![false; self.order() as usize];
        let mut current = vec![self.identity()];
        member[0] = true;
        for g in gens {
            // Coset representatives g, 2g, ..., (m-1)g where m is the order of g
            // modulo the span so far.
            let mut reps = Vec::new();
            let mut step = g.clone();
            while !member[self.index_of(&step)] {
                reps.push(step.clone());
                step = step.add_unchecked(g);
            }
            let base = current.clone();
            for r in &reps {
                for h in &base {
                    let y = h.add_unchecked(r);
                    member[self.index_of(&y)] = true;
                    current.push(y);
                }
            }
        }
        let mut out: Vec<AbelianElement> = member
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| self.element_at(i))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Size of the subgroup generated by `gens`.
    pub fn subgroup_order(&self, gens: &[AbelianElement]) -> Result<u64> {
        Ok(self.subgroup_closure(gens)?.len() as u64)
    }

    /// `self / <gens>` computed from the Smith normal form of the relation
    /// matrix (the diagonal of invariant factors stacked on the generator rows).
    pub fn quotient(&self, gens: &[AbelianElement]) -> Result<Quotient> {
        for g in gens {
            self.check(g)?;
        }
        let k = self.rank();
        let mut rel = IntegerMatrix::zeros(k + gens.len(), k);
        for (i, &d) in self.factors.iter().enumerate() {
            rel.set(i, i, BigInt::from(d));
        }
        for (r, g) in gens.iter().enumerate() {
            for (j, &c) in g.coords.iter().enumerate() {
                rel.set(k + r, j, BigInt::from(c));
            }
        }
        let snf = smith_normal_form(&rel);
        let diag = snf.d.diagonal_entries();
        let mut kept_cols = Vec::new();
        let mut moduli = Vec::new();
        for (j, dj) in diag.iter().enumerate() {
            let dj = dj.to_u64().expect("invariant factor fits in u64");
            if dj > 1 {
                kept_cols.push(j);
                moduli.push(dj);
            }
        }
        let transform = (0..k)
            .map(|i| {
                kept_cols
                    .iter()
                    .zip(moduli.iter())
                    .map(|(&j, &m)| {
                        snf.v
                            .get(i, j)
                            .mod_floor(&BigInt::from(m))
                            .to_u64()
                            .expect("reduced entry")
                    })
                    .collect()
            })
            .collect();
        let target = FiniteAbelianGroup {
            factors: moduli.clone().into(),
        };
        debug_assert_eq!(target, FiniteAbelianGroup::new(&moduli).unwrap());
        Ok(Quotient {
            source: self.clone(),
            target,
            transform,
        })
    }

    /// The subgroup of elements killed by `p^∞`, as an abstract group.
    pub fn sylow(&self, p: u64) -> FiniteAbelianGroup {
        let parts: Vec<u64> = self
            .factors
            .iter()
            .map(|&d| p.pow(arith::valuation(d, p)))
            .collect();
        FiniteAbelianGroup::new(&parts).expect("positive")
    }

    /// `(p, exponents)` for each prime dividing the order, exponents ascending.
    pub fn primary_decomposition(&self) -> Vec<(u64, Vec<u32>)> {
        arith::prime_divisors(self.order())
            .into_iter()
            .map(|p| {
                let exps = self
                    .factors
                    .iter()
                    .map(|&d| arith::valuation(d, p))
                    .filter(|&e| e > 0)
                    .collect();
                (p, exps)
            })
            .collect()
    }
}

impl fmt::Debug for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteAbelianGroup{:?}", &*self.factors)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.factors.iter().map(u64::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for FiniteAbelianGroup {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.factors.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FiniteAbelianGroup {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let orders = Vec::<u64>::deserialize(d)?;
        FiniteAbelianGroup::new(&orders).map_err(serde::de::Error::custom)
    }
}

fn fmt_tuple(coords: &[u64]) -> String {
    let parts: Vec<String> = coords.iter().map(u64::to_string).collect();
    format!("({})", parts.join(","))
}

impl AbelianElement {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn index(&self) -> usize {
        self.group.index_of_coords(&self.coords)
    }

    pub fn add(&self, other: &AbelianElement) -> Result<AbelianElement> {
        self.group.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub(crate) fn add_unchecked(&self, other: &AbelianElement) -> AbelianElement {
        let coords = self
            .coords
            .iter()
            .zip(other.coords.iter())
            .zip(self.group.factors.iter())
            .map(|((&a, &b), &d)| (a + b) % d)
            .collect();
        AbelianElement {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> AbelianElement {
        let coords = self
            .coords
            .iter()
            .zip(self.group.factors.iter())
            .map(|(&a, &d)| (d - a) % d)
            .collect();
        AbelianElement {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &AbelianElement) -> Result<AbelianElement> {
        self.add(&other.neg())
    }

    /// `k * self` for any integer `k`.
    pub fn scale(&self, k: i64) -> AbelianElement {
        let coords = self
            .coords
            .iter()
            .zip(self.group.factors.iter())
            .map(|(&a, &d)| {
                let d = d as i128;
                ((a as i128 * k as i128).rem_euclid(d)) as u64
            })
            .collect();
        AbelianElement {
            group: self.group.clone(),
            coords,
        }
    }

    pub fn order(&self) -> u64 {
        self.coords
            .iter()
            .zip(self.group.factors.iter())
            .fold(1, |acc, (&c, &d)| arith::lcm(acc, d / arith::gcd(c, d)))
    }
}

impl fmt::Debug for AbelianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_tuple(&self.coords))
    }
}

impl fmt::Display for AbelianElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_tuple(&self.coords))
    }
}

/// A quotient `G / H` with its projection map.
///
/// The projection sends a coordinate row vector `x` of `G` to `x * V`,
/// restricted to the nonunit diagonal positions of the Smith form and reduced
/// modulo the corresponding invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    source: FiniteAbelianGroup,
    target: FiniteAbelianGroup,
    transform: Vec<Vec<u64>>,
}

impl Quotient {
    pub fn source(&self) -> &FiniteAbelianGroup {
        &self.source
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.target
    }

    pub fn project(&self, x: &AbelianElement) -> Result<AbelianElement> {
        self.source.check(x)?;
        let moduli = self.target.invariant_factors();
        let coords = (0..moduli.len())
            .map(|j| {
                let m = moduli[j] as u128;
                x.coords
                    .iter()
                    .zip(self.transform.iter())
                    .fold(0u128, |acc, (&c, row)| (acc + c as u128 * row[j] as u128) % m)
                    as u64
            })
            .collect();
        Ok(AbelianElement {
            group: self.target.clone(),
            coords,
        })
    }

    /// Elements of the source mapping to zero.
    pub fn kernel(&self) -> Vec<AbelianElement> {
        self.source
            .elements()
            .filter(|x| self.project(x).map(|y| y.is_identity()).unwrap_or(false))
            .collect()
    }
}
