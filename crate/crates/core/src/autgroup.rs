//! Endomorphisms and automorphisms of finite abelian groups, primitive roots
//! and cycle structure of automorphisms of cyclic groups.

use std::collections::HashMap;
use std::fmt;
use std::ops::{ControlFlow, Deref};

use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianElement, FiniteAbelianGroup, Tables};
use crate::arith;
use crate::error::{Error, Result};
use crate::groups::GroupTable;
use crate::limits::Limits;

/// A homomorphism `A -> A`, stored as the images of the canonical generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Endomorphism {
    group: FiniteAbelianGroup,
    images: Vec<AbelianElement>,
}

impl Endomorphism {
    /// Checks that `d_i * images[i] = 0` so the map extends linearly.
    pub fn new(group: &FiniteAbelianGroup, images: Vec<AbelianElement>) -> Result<Self> {
        if images.len() != group.rank() {
            return Err(Error::Parse(format!(
                "expected {} generator images, got {}",
                group.rank(),
                images.len()
            )));
        }
        for (i, (img, &d)) in images.iter().zip(group.invariant_factors()).enumerate() {
            if img.group() != group {
                return Err(Error::ParentMismatch {
                    element: img.to_string(),
                    group: group.to_string(),
                });
            }
            if !img.scale(d as i64).is_identity() {
                return Err(Error::IllDefinedEndomorphism { index: i, order: d });
            }
        }
        Ok(Endomorphism {
            group: group.clone(),
            images,
        })
    }

    pub(crate) fn from_indices(group: &FiniteAbelianGroup, images: &[usize]) -> Self {
        Endomorphism {
            group: group.clone(),
            images: images.iter().map(|&i| group.element_at(i)).collect(),
        }
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        Endomorphism {
            group: group.clone(),
            images: group.generators(),
        }
    }

    /// `x -> k x`.
    pub fn scalar(group: &FiniteAbelianGroup, k: i64) -> Self {
        Endomorphism {
            group: group.clone(),
            images: group.generators().iter().map(|g| g.scale(k)).collect(),
        }
    }

    /// Column `i` of `rows` is the image of the `i`-th generator, so the map
    /// is `x -> M x`. Entries are reduced modulo the invariant factor of
    /// their row.
    pub fn from_matrix(group: &FiniteAbelianGroup, rows: &[Vec<i64>]) -> Result<Self> {
        let k = group.rank();
        if rows.len() != k || rows.iter().any(|r| r.len() != k) {
            return Err(Error::Parse(format!(
                "endomorphism of {group} needs a {k}x{k} matrix"
            )));
        }
        let images = (0..k)
            .map(|i| {
                let col: Vec<i64> = rows.iter().map(|r| r[i]).collect();
                group.element_reduced(&col)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, images)
    }

    /// Parses `mul:k` or a matrix literal such as `[[1,0,0],[0,0,1],[0,1,1]]`.
    pub fn parse(group: &FiniteAbelianGroup, s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(k) = s.strip_prefix("mul:") {
            let k = k
                .trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad multiplier in {s:?}")))?;
            return Ok(Self::scalar(group, k));
        }
        let rows: Vec<Vec<i64>> = serde_json::from_str(s)
            .map_err(|e| Error::Parse(format!("bad endomorphism literal {s:?}: {e}")))?;
        Self::from_matrix(group, &rows)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn images(&self) -> &[AbelianElement] {
        &self.images
    }

    /// `rows[j][i]` is coordinate `j` of the image of generator `i`.
    pub fn matrix(&self) -> Vec<Vec<u64>> {
        let k = self.group.rank();
        (0..k)
            .map(|j| (0..k).map(|i| self.images[i].coords()[j]).collect())
            .collect()
    }

    pub fn apply(&self, x: &AbelianElement) -> Result<AbelianElement> {
        if x.group() != &self.group {
            return Err(Error::ParentMismatch {
                element: x.to_string(),
                group: self.group.to_string(),
            });
        }
        Ok(self.apply_unchecked(x))
    }

    pub(crate) fn apply_unchecked(&self, x: &AbelianElement) -> AbelianElement {
        let factors = self.group.invariant_factors();
        let mut out = vec![0u64; factors.len()];
        for (xi, img) in x.coords().iter().zip(&self.images) {
            if *xi == 0 {
                continue;
            }
            for (j, (o, &c)) in out.iter_mut().zip(img.coords()).enumerate() {
                let d = factors[j] as u128;
                *o = ((*o as u128 + *xi as u128 * c as u128) % d) as u64;
            }
        }
        self.group.element(&out).expect("reduced coordinates")
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        if self.group != other.group {
            return Err(Error::ParentMismatch {
                element: other.to_string(),
                group: self.group.to_string(),
            });
        }
        Ok(Endomorphism {
            group: self.group.clone(),
            images: other.images.iter().map(|y| self.apply_unchecked(y)).collect(),
        })
    }

    pub fn pow(&self, mut k: u64) -> Endomorphism {
        let mut acc = Endomorphism::identity(&self.group);
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.compose(&base).expect("same group");
            }
            base = base.compose(&base).expect("same group");
            k >>= 1;
        }
        acc
    }

    pub fn is_identity(&self) -> bool {
        self.images == self.group.generators()
    }

    /// Bijective iff the generator images generate the whole group.
    pub fn is_automorphism(&self) -> bool {
        self.group
            .subgroup_order(&self.images)
            .map_or(false, |n| n == self.group.order())
    }

    pub fn fixed_points(&self) -> Vec<AbelianElement> {
        self.group
            .elements()
            .filter(|x| self.apply_unchecked(x) == *x)
            .collect()
    }
}

impl fmt::Display for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .matrix()
            .iter()
            .map(|r| {
                let r: Vec<String> = r.iter().map(u64::to_string).collect();
                format!("[{}]", r.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// An endomorphism certified to be bijective.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Automorphism(Endomorphism);

impl Automorphism {
    pub fn new(e: Endomorphism) -> Result<Self> {
        if e.is_automorphism() {
            Ok(Automorphism(e))
        } else {
            Err(Error::NotAutomorphism)
        }
    }

    pub fn identity(group: &FiniteAbelianGroup) -> Self {
        Automorphism(Endomorphism::identity(group))
    }

    pub fn scalar(group: &FiniteAbelianGroup, k: i64) -> Result<Self> {
        Self::new(Endomorphism::scalar(group, k))
    }

    pub fn endomorphism(&self) -> &Endomorphism {
        &self.0
    }

    pub fn into_endomorphism(self) -> Endomorphism {
        self.0
    }

    pub fn compose(&self, other: &Automorphism) -> Result<Automorphism> {
        Ok(Automorphism(self.0.compose(&other.0)?))
    }

    pub fn pow(&self, k: u64) -> Automorphism {
        Automorphism(self.0.pow(k))
    }

    /// Least `k >= 1` with `f^k = id`.
    pub fn order(&self) -> u64 {
        let mut k = 1;
        let mut f = self.0.clone();
        while !f.is_identity() {
            f = f.compose(&self.0).expect("same group");
            k += 1;
        }
        k
    }

    pub fn inverse(&self) -> Automorphism {
        self.pow(self.order() - 1)
    }
}

impl Deref for Automorphism {
    type Target = Endomorphism;

    fn deref(&self) -> &Endomorphism {
        &self.0
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Order of `f` as an element of `Aut(A)`.
pub fn automorphism_order(f: &Endomorphism) -> Result<u64> {
    Ok(Automorphism::new(f.clone())?.order())
}

fn sat_pow(p: u128, e: u32) -> u128 {
    p.checked_pow(e).unwrap_or(u128::MAX)
}

/// `|Aut|` of the abelian p-group with cyclic factors `p^e_1, ..., p^e_n`,
/// `e` ascending.
fn p_group_aut_count(p: u64, e: &[u32]) -> u128 {
    let n = e.len();
    let p = p as u128;
    let d = |k: usize| (0..n).rev().find(|&l| e[l] == e[k]).unwrap() + 1;
    let c = |k: usize| (0..n).find(|&l| e[l] == e[k]).unwrap() + 1;
    let mut total: u128 = 1;
    for k in 0..n {
        let factor = sat_pow(p, d(k) as u32) - sat_pow(p, k as u32);
        total = total.saturating_mul(factor);
        total = total.saturating_mul(sat_pow(p, e[k] * (n - d(k)) as u32));
        total = total.saturating_mul(sat_pow(p, (e[k] - 1) * (n - c(k) + 1) as u32));
    }
    total
}

/// `|Aut(A)|` from the primary decomposition, saturating at `u128::MAX`.
pub fn automorphism_count(group: &FiniteAbelianGroup) -> u128 {
    group
        .primary_decomposition()
        .iter()
        .map(|(p, e)| p_group_aut_count(*p, e))
        .fold(1u128, u128::saturating_mul)
}

/// Streams every automorphism as the index list of its generator images, in
/// lexicographic order of that list.
///
/// Level `i` picks `y` of order exactly `d_i` such that `<y>` meets the span
/// of the earlier images trivially; this is tested on the order-`p` points
/// `(d_i/p) y` only. The final span then has order `|A|`, so the map is onto.
pub(crate) fn for_each_automorphism_index(
    t: &Tables,
    f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let k = t.factors.len();
    if k == 0 {
        return f(&[]);
    }
    let levels: Vec<(Vec<usize>, Vec<u64>)> = t
        .factors
        .iter()
        .map(|&d| {
            let cof = arith::prime_divisors(d).iter().map(|p| d / p).collect();
            (t.torsion(d), cof)
        })
        .collect();
    let mut member = vec![false; t.n];
    member[0] = true;
    let mut span = vec![0usize];
    let mut images = Vec::with_capacity(k);
    rec(t, &levels, 0, &mut member, &mut span, &mut images, f)
}

fn rec(
    t: &Tables,
    levels: &[(Vec<usize>, Vec<u64>)],
    level: usize,
    member: &mut Vec<bool>,
    span: &mut Vec<usize>,
    images: &mut Vec<usize>,
    f: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
) -> ControlFlow<()> {
    let (cands, cofactors) = &levels[level];
    let d = t.factors[level];
    for &y in cands {
        if cofactors.iter().any(|&c| member[t.scale(c, y)]) {
            continue;
        }
        images.push(y);
        if level + 1 == levels.len() {
            let flow = f(images);
            images.pop();
            flow?;
            continue;
        }
        let base = span.len();
        let mut step = y;
        for _ in 1..d {
            for h in 0..base {
                let z = t.add(span[h], step);
                member[z] = true;
                span.push(z);
            }
            step = t.add(step, y);
        }
        let flow = rec(t, levels, level + 1, member, span, images, f);
        for &z in &span[base..] {
            member[z] = false;
        }
        span.truncate(base);
        images.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// Every automorphism of `group`, with the default bounds.
pub fn enumerate_automorphisms(group: &FiniteAbelianGroup) -> Result<Vec<Automorphism>> {
    enumerate_automorphisms_with(group, &Limits::default())
}

/// Every automorphism of `group`, ordered lexicographically by the indices of
/// the generator images.
pub fn enumerate_automorphisms_with(
    group: &FiniteAbelianGroup,
    limits: &Limits,
) -> Result<Vec<Automorphism>> {
    Limits::check(
        "group order for automorphism enumeration",
        group.order() as u128,
        limits.max_aut_group_order as u128,
    )?;
    Limits::check(
        "number of automorphisms to list",
        automorphism_count(group),
        limits.max_listed_automorphisms,
    )?;
    let t = Tables::new(group)?;
    let mut out = Vec::new();
    let _ = for_each_automorphism_index(&t, &mut |imgs| {
        out.push(Automorphism(Endomorphism::from_indices(group, imgs)));
        ControlFlow::Continue(())
    });
    Ok(out)
}

/// Largest automorphism group turned into a Cayley table.
pub const MAX_AUT_TABLE: usize = 1024;

/// `Aut(group)` as a Cayley table; element `i` of the table is `auts[i]`.
pub fn aut_group_table(group: &FiniteAbelianGroup) -> Result<(GroupTable, Vec<Automorphism>)> {
    Limits::check(
        "automorphism group order for a Cayley table",
        automorphism_count(group),
        MAX_AUT_TABLE as u128,
    )?;
    let auts = enumerate_automorphisms(group)?;
    let t = Tables::new(group)?;
    let n = auts.len();
    let gen_images: Vec<Vec<usize>> = auts
        .iter()
        .map(|a| a.images().iter().map(|y| group.index_of(y)).collect())
        .collect();
    let full: Vec<Vec<u16>> = gen_images.iter().map(|g| t.full_table(g)).collect();
    let lookup: HashMap<&[usize], usize> = gen_images
        .iter()
        .enumerate()
        .map(|(i, g)| (g.as_slice(), i))
        .collect();
    let mut table = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let comp: Vec<usize> = gen_images[b].iter().map(|&y| full[a][y] as usize).collect();
            table[a * n + b] = lookup[comp.as_slice()];
        }
    }
    let identity = lookup[t.gens.as_slice()];
    let g = GroupTable::from_parts(n, table, identity, format!("aut:{group}"));
    Ok((g, auts))
}

/// Least primitive root modulo `q = p^n`, `p` an odd prime.
pub fn primitive_root(q: u64) -> Result<u64> {
    match arith::prime_power(q) {
        Some((p, _)) if p % 2 == 1 => {
            let phi = arith::euler_phi(q);
            Ok((2..q)
                .find(|&g| arith::multiplicative_order(g, q) == Some(phi))
                .expect("odd prime powers have primitive roots"))
        }
        _ => Err(Error::NotOddPrimePower(q)),
    }
}

/// Cycles of an automorphism of a cyclic group on the nonzero residues, each
/// starting at its least element, sorted by that element.
pub fn cycle_decomposition(f: &Automorphism) -> Result<Vec<Vec<u64>>> {
    let group = f.group();
    if !group.is_cyclic() {
        return Err(Error::NotCyclic(group.to_string()));
    }
    let m = group.order();
    let mut seen = vec![false; m as usize];
    let mut cycles = Vec::new();
    for start in 1..m {
        if seen[start as usize] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x as usize] {
            seen[x as usize] = true;
            cycle.push(x);
            x = f.apply_unchecked(&group.element(&[x]).expect("residue")).coords()[0];
        }
        cycles.push(cycle);
    }
    Ok(cycles)
}

/// Cycle data for `φ^n` where `φ: x -> a x` and `a` is the least primitive
/// root modulo `p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CycleSumReport {
    pub p: u64,
    pub n: u64,
    pub primitive_root: u64,
    /// `a^n mod p`, the multiplier of `φ^n`.
    pub multiplier: u64,
    pub cycles: Vec<Vec<u64>>,
    /// Integer sums of the cycles (not reduced).
    pub sums: Vec<u64>,
    /// `x (1 - a^(p-1)) / (1 - a^n) mod p` for the least element `x` of each cycle.
    pub geometric_sums: Vec<u64>,
    pub all_vanish: bool,
}

/// Checks that each cycle of `φ^n` on the nonzero residues sums to `0 mod p`
/// for a proper divisor `n` of `p - 1`.
pub fn cycle_sums_vanish(p: u64, n: u64) -> Result<CycleSumReport> {
    if !arith::is_prime(p) || p == 2 {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || (p - 1) % n != 0 || n == p - 1 {
        return Err(Error::NotProperDivisor { n, order: p - 1 });
    }
    let a = primitive_root(p)?;
    let group = FiniteAbelianGroup::cyclic(p)?;
    let phi = Automorphism::scalar(&group, a as i64)?;
    let multiplier = arith::pow_mod(a, n, p);
    let cycles = cycle_decomposition(&phi.pow(n))?;
    let sums: Vec<u64> = cycles.iter().map(|c| c.iter().sum()).collect();
    let denom_inv = arith::inv_mod((1 + p - multiplier) as i128 % p as i128, p as i128)
        .expect("a^n != 1 for a proper divisor n") as u64;
    let numer = (1 + p - arith::pow_mod(a, p - 1, p)) % p;
    let geometric_sums: Vec<u64> = cycles
        .iter()
        .map(|c| arith::mul_mod(arith::mul_mod(c[0], numer, p), denom_inv, p))
        .collect();
    let all_vanish = sums
        .iter()
        .zip(&geometric_sums)
        .all(|(&s, &g)| s % p == 0 && g == s % p);
    Ok(CycleSumReport {
        p,
        n,
        primitive_root: a,
        multiplier,
        cycles,
        sums,
        geometric_sums,
        all_vanish,
    })
}

/// The terms `α^(i(p-1)p^(n-2)) mod p^n` for `0 <= i < p` and their sum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerSumReport {
    pub p: u64,
    pub n: u32,
    pub alpha: u64,
    pub modulus: u64,
    pub terms: Vec<u64>,
    pub residue: u64,
}

pub fn power_sum_residue(p: u64, n: u32, alpha: u64) -> Result<PowerSumReport> {
    if !arith::is_prime(p) || p == 2 {
        return Err(Error::NotOddPrimePower(p));
    }
    if n < 2 {
        return Err(Error::Parse(format!("power sum needs n >= 2, got {n}")));
    }
    let modulus = p
        .checked_pow(n)
        .ok_or(Error::BoundExceeded {
            what: "p^n",
            value: u128::MAX,
            limit: u64::MAX as u128,
        })?;
    if arith::multiplicative_order(alpha, modulus) != Some(arith::euler_phi(modulus)) {
        return Err(Error::NotPrimitiveRoot { alpha, modulus });
    }
    let step = (p - 1) * p.pow(n - 2);
    let terms: Vec<u64> = (0..p)
        .map(|i| arith::pow_mod(alpha, i * step, modulus))
        .collect();
    let residue = terms.iter().fold(0, |acc, &t| (acc + t) % modulus);
    Ok(PowerSumReport {
        p,
        n,
        alpha,
        modulus,
        terms,
        residue,
    })
}
