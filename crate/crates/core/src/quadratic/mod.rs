//! Class groups of imaginary quadratic fields through reduced binary
//! quadratic forms.
//!
//! A primitive positive definite form `(a, b, c)` of discriminant `D`
//! corresponds to the ideal `aZ + ((-b + √D)/2)Z` of the maximal order of
//! `Q(√D)`. The engine only accepts fundamental discriminants.

mod chain;
mod ideal;

use std::collections::HashMap;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianElement, FiniteAbelianGroup};
use crate::arith;
use crate::error::{Error, Result};

pub use chain::{pid_chain, ChainStep};
pub use ideal::{
    factor_principal, galois_action_on_classgroup, kronecker, localize, localize_galois, prime_form,
    Ideal, Localization, PrimeIdealFactor, PrimeKind, QuadInteger,
};

/// Largest `|D|` accepted by [`class_group`].
pub const MAX_ABS_DISCRIMINANT: i64 = 1_000_000;

/// A negative fundamental discriminant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct Discriminant(i64);

impl Discriminant {
    pub fn new(d: i64) -> Result<Self> {
        if is_fundamental(d) {
            Ok(Discriminant(d))
        } else {
            Err(Error::NotFundamental(d))
        }
    }

    pub fn value(self) -> i64 {
        self.0
    }

    /// Squarefree `d` with `K = Q(√d)`.
    pub fn radicand(self) -> i64 {
        if self.0 % 4 == 0 {
            self.0 / 4
        } else {
            self.0
        }
    }
}

impl TryFrom<i64> for Discriminant {
    type Error = Error;

    fn try_from(d: i64) -> Result<Self> {
        Discriminant::new(d)
    }
}

impl From<Discriminant> for i64 {
    fn from(d: Discriminant) -> i64 {
        d.0
    }
}

impl fmt::Display for Discriminant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `d < 0` squarefree with `d = 1 mod 4`, or `d = 4m` with `m` squarefree
/// and `m = 2, 3 mod 4`.
pub fn is_fundamental(d: i64) -> bool {
    if d >= 0 {
        return false;
    }
    let m = d.unsigned_abs();
    match d.rem_euclid(4) {
        1 => arith::is_squarefree(m),
        0 => {
            let q = d / 4;
            matches!(q.rem_euclid(4), 2 | 3) && arith::is_squarefree(q.unsigned_abs())
        }
        _ => false,
    }
}

/// All negative fundamental discriminants with `|D| <= bound`, descending.
pub fn fundamental_discriminants(bound: i64) -> Vec<Discriminant> {
    (1..=bound)
        .map(|n| -n)
        .filter(|&d| is_fundamental(d))
        .map(Discriminant)
        .collect()
}

/// `a x^2 + b x y + c y^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadraticForm {
    pub fn new(a: i64, b: i64, c: i64) -> Self {
        QuadraticForm { a, b, c }
    }

    /// The form `(a, b, (b^2 - D) / 4a)`; requires `b^2 = D mod 4a`.
    pub fn from_ab(d: i64, a: i64, b: i64) -> Result<Self> {
        let num = b as i128 * b as i128 - d as i128;
        let den = 4 * a as i128;
        if a <= 0 || num % den != 0 {
            return Err(Error::Parse(format!("no form ({a}, {b}, ·) of discriminant {d}")));
        }
        let c = i64::try_from(num / den).map_err(|_| overflow())?;
        Ok(QuadraticForm { a, b, c })
    }

    /// The identity class `(1, b0, c0)`.
    pub fn principal(d: Discriminant) -> Self {
        let b = d.0.rem_euclid(2);
        QuadraticForm::from_ab(d.0, 1, b).expect("principal form exists")
    }

    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        arith::gcd(arith::gcd(self.a.unsigned_abs(), self.b.unsigned_abs()), self.c.unsigned_abs()) == 1
    }

    /// `|b| <= a <= c`, with `b >= 0` when `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let (a, b, c) = (self.a, self.b, self.c);
        b.abs() <= a && a <= c && !((b.abs() == a || a == c) && b < 0)
    }

    /// `(a, -b, c)`, the conjugate ideal and the inverse class.
    pub fn conjugate(&self) -> Self {
        QuadraticForm::new(self.a, -self.b, self.c)
    }

    /// Reduced form equivalent to `self` (positive definite input).
    pub fn reduce(&self) -> Self {
        let (mut a, mut b, mut c) = (self.a as i128, self.b as i128, self.c as i128);
        loop {
            // bring b into (-a, a]
            if b <= -a || b > a {
                let two_a = 2 * a;
                let mut r = b.rem_euclid(two_a);
                if r > a {
                    r -= two_a;
                }
                let k = (r - b) / two_a;
                c += k * b + k * k * a;
                b = r;
            }
            if a > c {
                std::mem::swap(&mut a, &mut c);
                b = -b;
                continue;
            }
            if (a == c || b == -a) && b < 0 {
                b = -b;
            }
            break;
        }
        QuadraticForm::new(a as i64, b as i64, c as i64)
    }

    /// Sort key: `a`, then `|b|`, then positive `b` before negative.
    pub fn canonical_key(&self) -> (i64, i64, bool) {
        (self.a, self.b.abs(), self.b < 0)
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

fn overflow() -> Error {
    Error::BoundExceeded {
        what: "quadratic form coefficient",
        value: u128::MAX,
        limit: i64::MAX as u128,
    }
}

/// Unreduced composition: returns `(d1, f3)` with
/// `I(f1) I(f2) = d1 · I(f3)` as ideals.
pub(crate) fn compose_raw(f1: &QuadraticForm, f2: &QuadraticForm) -> Result<(i64, QuadraticForm)> {
    let disc = f1.discriminant();
    if disc != f2.discriminant() {
        return Err(Error::DiscriminantMismatch(disc, f2.discriminant()));
    }
    let (f1, f2) = if f1.a > f2.a { (f2, f1) } else { (f1, f2) };
    let (a1, b1) = (f1.a as i128, f1.b as i128);
    let (a2, b2, c2) = (f2.a as i128, f2.b as i128, f2.c as i128);
    let s = (b1 + b2) / 2;
    let n = b2 - s;
    let (y1, d) = if a2 % a1 == 0 {
        (0, a1)
    } else {
        let e = a2.extended_gcd(&a1);
        (e.x, e.gcd)
    };
    let (x2, y2, d1) = if s % d == 0 {
        (0, -1, d)
    } else {
        let e = s.extended_gcd(&d);
        (e.x, -e.y, e.gcd)
    };
    let v1 = a1 / d1;
    let v2 = a2 / d1;
    let r = (y1 * y2 * n - x2 * c2).rem_euclid(v1);
    let b3 = b2 + 2 * v2 * r;
    let a3 = v1 * v2;
    let num = b3 * b3 - disc as i128;
    debug_assert_eq!(num % (4 * a3), 0);
    let c3 = num / (4 * a3);
    let conv = |x: i128| i64::try_from(x).map_err(|_| overflow());
    Ok((
        conv(d1)?,
        QuadraticForm::new(conv(a3)?, conv(b3)?, conv(c3)?),
    ))
}

/// Reduced representative of the product class.
pub fn compose(f1: &QuadraticForm, f2: &QuadraticForm) -> Result<QuadraticForm> {
    Ok(compose_raw(f1, f2)?.1.reduce())
}

/// Reduced `f^k`.
pub fn form_pow(f: &QuadraticForm, mut k: u64) -> QuadraticForm {
    let d = f.discriminant();
    let mut acc = QuadraticForm::principal(Discriminant(d));
    let mut base = f.reduce();
    while k > 0 {
        if k & 1 == 1 {
            acc = compose(&acc, &base).expect("same discriminant");
        }
        base = compose(&base, &base).expect("same discriminant");
        k >>= 1;
    }
    acc
}

/// Reduced forms by scanning `|b| <= a <= sqrt(|D|/3)`, in canonical order.
pub fn reduced_forms(d: Discriminant) -> Vec<QuadraticForm> {
    let dd = d.0;
    let amax = arith::isqrt((-dd / 3) as u64) as i64;
    let mut out = Vec::new();
    for a in 1..=amax {
        for b in -a + 1..=a {
            if (b - dd).rem_euclid(2) != 0 {
                continue;
            }
            let Ok(f) = QuadraticForm::from_ab(dd, a, b) else {
                continue;
            };
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
    }
    out.sort_by_key(QuadraticForm::canonical_key);
    out
}

/// Cl(D) with the isomorphism to its invariant-factor model.
#[derive(Clone, Debug)]
pub struct ClassGroupData {
    discriminant: Discriminant,
    forms: Vec<QuadraticForm>,
    group: FiniteAbelianGroup,
    generators: Vec<QuadraticForm>,
    coords: Vec<AbelianElement>,
    index: HashMap<QuadraticForm, usize>,
    by_coords: HashMap<AbelianElement, usize>,
}

impl ClassGroupData {
    pub fn discriminant(&self) -> Discriminant {
        self.discriminant
    }

    pub fn class_number(&self) -> usize {
        self.forms.len()
    }

    /// Reduced forms in canonical order.
    pub fn forms(&self) -> &[QuadraticForm] {
        &self.forms
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    /// Form mapped to the `i`-th canonical generator.
    pub fn generators(&self) -> &[QuadraticForm] {
        &self.generators
    }

    pub fn principal(&self) -> QuadraticForm {
        QuadraticForm::principal(self.discriminant)
    }

    /// Image of the class of `f` (reduced first).
    pub fn element_of(&self, f: &QuadraticForm) -> Result<AbelianElement> {
        if f.discriminant() != self.discriminant.0 {
            return Err(Error::DiscriminantMismatch(self.discriminant.0, f.discriminant()));
        }
        let r = f.reduce();
        self.index
            .get(&r)
            .map(|&i| self.coords[i].clone())
            .ok_or_else(|| Error::Parse(format!("{f} is not primitive")))
    }

    /// Reduced form of the class with coordinates `x`.
    pub fn form_of(&self, x: &AbelianElement) -> Result<QuadraticForm> {
        self.by_coords
            .get(x)
            .map(|&i| self.forms[i])
            .ok_or_else(|| Error::ParentMismatch {
                element: x.to_string(),
                group: self.group.to_string(),
            })
    }

    /// Order of the class of `f`.
    pub fn class_order(&self, f: &QuadraticForm) -> Result<u64> {
        Ok(self.element_of(f)?.order())
    }
}

/// Order of `f` in a group of exponent dividing `h`.
fn form_order(f: &QuadraticForm, h: u64) -> u64 {
    let mut order = h;
    for q in arith::prime_divisors(h) {
        while order % q == 0 && form_pow(f, order / q).a == 1 {
            order /= q;
        }
    }
    order
}

/// Class group of a fundamental discriminant `D < 0`.
pub fn class_group(d: i64) -> Result<ClassGroupData> {
    let disc = Discriminant::new(d)?;
    if d < -MAX_ABS_DISCRIMINANT {
        return Err(Error::BoundExceeded {
            what: "|D|",
            value: d.unsigned_abs() as u128,
            limit: MAX_ABS_DISCRIMINANT as u128,
        });
    }
    let forms = reduced_forms(disc);
    let h = forms.len() as u64;
    let index: HashMap<QuadraticForm, usize> =
        forms.iter().enumerate().map(|(i, f)| (*f, i)).collect();
    let orders: Vec<u64> = forms.iter().map(|f| form_order(f, h)).collect();

    // Per prime: basis of the p-Sylow subgroup with strictly chosen maximal
    // orders, built greedily.
    let mut prime_bases: Vec<(u64, Vec<(QuadraticForm, u64)>)> = Vec::new();
    for (p, v) in arith::factorize(h) {
        let sylow_order = p.pow(v);
        let sylow: Vec<usize> = (0..forms.len())
            .filter(|&i| sylow_order % orders[i] == 0)
            .collect();
        let mut basis: Vec<(QuadraticForm, u64)> = Vec::new();
        // span: form -> coordinates in the basis so far
        let mut span: HashMap<QuadraticForm, Vec<u64>> = HashMap::new();
        span.insert(forms[0], vec![]);
        while (span.len() as u64) < sylow_order {
            // element of maximal order modulo the span (first in canonical order)
            let mut best: Option<(usize, u64, QuadraticForm)> = None;
            for &i in &sylow {
                let (mut k, mut y) = (1u64, forms[i]);
                while !span.contains_key(&y) {
                    y = compose(&y, &forms[i])?;
                    k += 1;
                }
                if best.map_or(true, |(_, bk, _)| k > bk) {
                    best = Some((i, k, y));
                }
            }
            let (i, k, z) = best.expect("span is a proper subgroup");
            let cz = span[&z].clone();
            // y' = y - Σ (c_j / k) b_j has order k and <y'> meets the span trivially
            let mut lifted = forms[i];
            for ((b, _), c) in basis.iter().zip(&cz) {
                debug_assert_eq!(c % k, 0);
                let back = form_pow(&b.conjugate(), c / k);
                lifted = compose(&lifted, &back)?;
            }
            let old: Vec<(QuadraticForm, Vec<u64>)> =
                span.iter().map(|(f, c)| (*f, c.clone())).collect();
            let mut step = forms[0];
            for j in 0..k {
                for (f, c) in &old {
                    let g = compose(f, &step)?;
                    let mut cc = c.clone();
                    cc.push(j);
                    span.insert(g, cc);
                }
                step = compose(&step, &lifted)?;
            }
            basis.push((lifted, k));
        }
        // largest orders first
        basis.sort_by_key(|&(_, k)| std::cmp::Reverse(k));
        prime_bases.push((p, basis));
    }

    // Invariant factors: the j-th largest factor collects the j-th largest
    // basis element of every prime.
    let rank = prime_bases.iter().map(|(_, b)| b.len()).max().unwrap_or(0);
    let mut factors = vec![1u64; rank];
    let mut generators = vec![forms[0]; rank];
    for (_, basis) in &prime_bases {
        for (j, (f, k)) in basis.iter().enumerate() {
            factors[j] *= k;
            generators[j] = compose(&generators[j], f)?;
        }
    }
    factors.reverse();
    generators.reverse();
    let group = FiniteAbelianGroup::new(&factors)?;
    debug_assert_eq!(group.invariant_factors(), factors.as_slice());

    let mut coords = vec![group.identity(); forms.len()];
    let mut by_coords = HashMap::new();
    for (idx, x) in group.elements().enumerate() {
        let mut f = forms[0];
        for (g, &c) in generators.iter().zip(x.coords()) {
            f = compose(&f, &form_pow(g, c))?;
        }
        let i = index[&f];
        coords[i] = x.clone();
        by_coords.insert(x, i);
        debug_assert!(idx < forms.len());
    }
    if by_coords.len() != forms.len() {
        return Err(Error::Parse(format!(
            "class group structure recovery failed for D = {d}"
        )));
    }
    Ok(ClassGroupData {
        discriminant: disc,
        forms,
        group,
        generators,
        coords,
        index,
        by_coords,
    })
}
