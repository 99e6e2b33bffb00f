//! Elements, ideals, prime ideals and localizations of the maximal order.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::{class_group, compose_raw, ClassGroupData, Discriminant, QuadraticForm};
use crate::abelian::{AbelianElement, Quotient};
use crate::action::{self, NormLikeAction};
use crate::arith;
use crate::autgroup::Endomorphism;
use crate::error::{Error, Result};
use crate::groups::GroupTable;

/// `(s + t√d)/2` in the maximal order of `Q(√d)`, `d` the squarefree
/// radicand. For `d = 2, 3 mod 4` both `s` and `t` are even; for
/// `d = 1 mod 4` they have equal parity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuadInteger {
    pub d: i64,
    pub s: i64,
    pub t: i64,
}

impl QuadInteger {
    /// `(s + t√d)/2`, checked for integrality.
    pub fn from_halves(disc: Discriminant, s: i64, t: i64) -> Result<Self> {
        let d = disc.radicand();
        let ok = if d.rem_euclid(4) == 1 {
            (s - t) % 2 == 0
        } else {
            s % 2 == 0 && t % 2 == 0
        };
        if !ok {
            return Err(Error::NotIntegral);
        }
        Ok(QuadInteger { d, s, t })
    }

    /// `u + v√d`.
    pub fn new(disc: Discriminant, u: i64, v: i64) -> Self {
        QuadInteger {
            d: disc.radicand(),
            s: 2 * u,
            t: 2 * v,
        }
    }

    pub fn rational(disc: Discriminant, n: i64) -> Self {
        Self::new(disc, n, 0)
    }

    /// Parses `n` or `u,v` (meaning `u + v√d`).
    pub fn parse(disc: Discriminant, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let num = |t: &str| {
            t.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad integer {t:?} in element {s:?}")))
        };
        match parts.as_slice() {
            [n] => Ok(Self::rational(disc, num(n)?)),
            [u, v] => Ok(Self::new(disc, num(u)?, num(v)?)),
            _ => Err(Error::Parse(format!("element {s:?} is not `n` or `u,v`"))),
        }
    }

    pub fn norm(&self) -> i128 {
        let (s, t, d) = (self.s as i128, self.t as i128, self.d as i128);
        (s * s - d * t * t) / 4
    }

    pub fn conjugate(&self) -> Self {
        QuadInteger { t: -self.t, ..*self }
    }

    pub fn mul(&self, other: &QuadInteger) -> QuadInteger {
        let (s1, t1, s2, t2, d) = (
            self.s as i128,
            self.t as i128,
            other.s as i128,
            other.t as i128,
            self.d as i128,
        );
        QuadInteger {
            d: self.d,
            s: ((s1 * s2 + d * t1 * t2) / 2) as i64,
            t: ((s1 * t2 + s2 * t1) / 2) as i64,
        }
    }
}

impl fmt::Display for QuadInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (s, t, half) = if self.s % 2 == 0 && self.t % 2 == 0 {
            (self.s / 2, self.t / 2, false)
        } else {
            (self.s, self.t, true)
        };
        let coeff = if t.abs() == 1 { String::new() } else { t.abs().to_string() };
        let sign = if t < 0 { "-" } else { "+" };
        match (t, half) {
            (0, _) => write!(f, "{s}"),
            (_, false) if s == 0 => write!(f, "{}{coeff}√{}", if t < 0 { "-" } else { "" }, self.d),
            (_, false) => write!(f, "{s} {sign} {coeff}√{}", self.d),
            (_, true) => write!(f, "({s} {sign} {coeff}√{})/2", self.d),
        }
    }
}

/// `scale · (aZ + ((-b + √D)/2)Z)` for a form `(a, b, c)` of discriminant `D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ideal {
    pub disc: Discriminant,
    pub scale: i64,
    pub form: QuadraticForm,
}

impl Ideal {
    pub fn from_form(disc: Discriminant, form: QuadraticForm) -> Self {
        Ideal {
            disc,
            scale: 1,
            form,
        }
    }

    pub fn unit(disc: Discriminant) -> Self {
        Self::from_form(disc, QuadraticForm::principal(disc))
    }

    pub fn norm(&self) -> i128 {
        self.scale as i128 * self.scale as i128 * self.form.a as i128
    }

    pub fn mul(&self, other: &Ideal) -> Result<Ideal> {
        let (d1, form) = compose_raw(&self.form, &other.form)?;
        let scale = self
            .scale
            .checked_mul(other.scale)
            .and_then(|s| s.checked_mul(d1))
            .ok_or(Error::BoundExceeded {
                what: "ideal scale",
                value: u128::MAX,
                limit: i64::MAX as u128,
            })?;
        Ok(Ideal {
            disc: self.disc,
            scale,
            form,
        })
    }

    pub fn pow(&self, k: u32) -> Result<Ideal> {
        let mut acc = Ideal::unit(self.disc);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Whether `x` lies in the ideal: `x = m a + n (-b + k√d)/2` with
    /// integers `m, n` (`k = 2` when `D = 4d`, else 1).
    pub fn contains(&self, x: &QuadInteger) -> bool {
        let sc = self.scale;
        if x.s % sc != 0 || x.t % sc != 0 {
            return false;
        }
        let (s, t) = (x.s / sc, x.t / sc);
        if QuadInteger::from_halves(self.disc, s, t).is_err() {
            return false;
        }
        let k = if self.disc.value() % 4 == 0 { 2 } else { 1 };
        if t % k != 0 {
            return false;
        }
        let n = (t / k) as i128;
        let num = s as i128 + n * self.form.b as i128;
        num % (2 * self.form.a as i128) == 0
    }
}

/// Kronecker symbol `(D | p)` for a prime `p`.
pub fn kronecker(d: i64, p: u64) -> i32 {
    if p == 2 {
        return match d.rem_euclid(8) {
            0 | 2 | 4 | 6 => 0,
            1 | 7 => 1,
            _ => -1,
        };
    }
    let r = d.rem_euclid(p as i64) as u64;
    if r == 0 {
        0
    } else if arith::pow_mod(r, (p - 1) / 2, p) == 1 {
        1
    } else {
        -1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrimeKind {
    Split,
    Ramified,
    Inert,
}

/// A prime ideal `𝔭` above `p` together with an exponent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeIdealFactor {
    pub p: u64,
    pub kind: PrimeKind,
    /// `(p, b, c)` with `0 <= b <= p` (or its conjugate); the principal form
    /// for inert primes.
    pub form: QuadraticForm,
    /// Reduced form of the class of `𝔭`.
    pub class: QuadraticForm,
    pub exponent: u32,
}

impl PrimeIdealFactor {
    pub fn norm(&self) -> u64 {
        match self.kind {
            PrimeKind::Inert => self.p * self.p,
            _ => self.p,
        }
    }

    fn ideal(&self, disc: Discriminant) -> Ideal {
        match self.kind {
            PrimeKind::Inert => Ideal {
                disc,
                scale: self.p as i64,
                form: self.form,
            },
            _ => Ideal::from_form(disc, self.form),
        }
    }
}

/// The prime ideal above `p` with form `(p, b, c)`, `0 <= b <= p`; inert
/// primes get the principal form. Exponent is 1.
pub fn prime_form(d: i64, p: u64) -> Result<PrimeIdealFactor> {
    let disc = Discriminant::new(d)?;
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let principal = QuadraticForm::principal(disc);
    let kind = match kronecker(d, p) {
        0 => PrimeKind::Ramified,
        1 => PrimeKind::Split,
        _ => PrimeKind::Inert,
    };
    if kind == PrimeKind::Inert {
        return Ok(PrimeIdealFactor {
            p,
            kind,
            form: principal,
            class: principal,
            exponent: 1,
        });
    }
    let p_i = p as i64;
    let b = if p == 2 {
        (0..=2).find(|&b| (b * b - d).rem_euclid(8) == 0).expect("D is a square mod 8")
    } else {
        let r = arith::sqrt_mod_prime(d.rem_euclid(p_i) as u64, p).expect("D is a square mod p") as i64;
        if (r - d).rem_euclid(2) == 0 {
            r
        } else {
            p_i - r
        }
    };
    let form = QuadraticForm::from_ab(d, p_i, b)?;
    Ok(PrimeIdealFactor {
        p,
        kind,
        form,
        class: form.reduce(),
        exponent: 1,
    })
}

/// Largest `k` with `x ∈ I^k`, bounded by `max`.
fn valuation(ideal: &Ideal, x: &QuadInteger, max: u32) -> Result<u32> {
    let mut power = Ideal::unit(ideal.disc);
    for k in 0..max {
        power = power.mul(ideal)?;
        if !power.contains(x) {
            return Ok(k);
        }
    }
    Ok(max)
}

/// Prime ideal factorization of `(x)`, primes ascending, for each split
/// prime the form with `b >= 0` first.
pub fn factor_principal(d: i64, x: &QuadInteger) -> Result<Vec<PrimeIdealFactor>> {
    let disc = Discriminant::new(d)?;
    if x.d != disc.radicand() {
        return Err(Error::DiscriminantMismatch(d, x.d));
    }
    let n = x.norm();
    if n <= 1 {
        return Err(Error::ZeroOrUnit);
    }
    let n = u64::try_from(n).map_err(|_| Error::BoundExceeded {
        what: "norm",
        value: n as u128,
        limit: u64::MAX as u128,
    })?;
    let mut out = Vec::new();
    for (p, v) in arith::factorize(n) {
        let base = prime_form(d, p)?;
        match base.kind {
            PrimeKind::Inert => out.push(PrimeIdealFactor {
                exponent: v / 2,
                ..base
            }),
            PrimeKind::Ramified => out.push(PrimeIdealFactor { exponent: v, ..base }),
            PrimeKind::Split => {
                let e1 = valuation(&base.ideal(disc), x, v)?;
                let conj_form = base.form.conjugate();
                let conj = PrimeIdealFactor {
                    form: conj_form,
                    class: conj_form.reduce(),
                    ..base.clone()
                };
                let e2 = v - e1;
                debug_assert_eq!(valuation(&conj.ideal(disc), x, v)?, e2);
                if e1 > 0 {
                    out.push(PrimeIdealFactor { exponent: e1, ..base });
                }
                if e2 > 0 {
                    out.push(PrimeIdealFactor { exponent: e2, ..conj });
                }
            }
        }
    }
    Ok(out)
}

/// Class group of `O_K[1/x]` as a quotient of `Cl_K`.
#[derive(Clone, Debug)]
pub struct Localization {
    pub class_group: ClassGroupData,
    pub factors: Vec<PrimeIdealFactor>,
    /// Classes whose span is killed.
    pub killed: Vec<QuadraticForm>,
    pub quotient: Quotient,
}

impl Localization {
    pub fn invariant_factors(&self) -> &[u64] {
        self.quotient.group().invariant_factors()
    }

    /// Class of `f` in the localized class group.
    pub fn project(&self, f: &QuadraticForm) -> Result<AbelianElement> {
        self.quotient.project(&self.class_group.element_of(f)?)
    }
}

fn quotient_by(cg: ClassGroupData, factors: Vec<PrimeIdealFactor>, galois: bool) -> Result<Localization> {
    let mut killed: Vec<QuadraticForm> = Vec::new();
    for f in factors.iter().filter(|f| f.exponent > 0) {
        let mut classes = vec![f.class];
        if galois {
            classes.push(f.class.conjugate().reduce());
        }
        for c in classes {
            if !killed.contains(&c) {
                killed.push(c);
            }
        }
    }
    let gens = killed
        .iter()
        .map(|f| cg.element_of(f))
        .collect::<Result<Vec<_>>>()?;
    let quotient = cg.group().quotient(&gens)?;
    Ok(Localization {
        class_group: cg,
        factors,
        killed,
        quotient,
    })
}

/// `Cl(O_K[1/x]) = Cl_K / <classes of the primes dividing (x)>`.
pub fn localize(d: i64, x: &QuadInteger) -> Result<Localization> {
    let factors = factor_principal(d, x)?;
    quotient_by(class_group(d)?, factors, false)
}

/// Quotient by the prime classes of `(x)` and their conjugates; equals the
/// localization at `N(x)`.
pub fn localize_galois(d: i64, x: &QuadInteger) -> Result<Localization> {
    let factors = factor_principal(d, x)?;
    quotient_by(class_group(d)?, factors, true)
}

/// The order-2 group acting on `Cl_K` by conjugation `(a, b, c) -> (a, -b, c)`,
/// certified as a norm-like action.
pub fn galois_action_on_classgroup(d: i64) -> Result<NormLikeAction> {
    let cg = class_group(d)?;
    let a = cg.group().clone();
    let images = cg
        .generators()
        .iter()
        .map(|f| cg.element_of(&f.conjugate()))
        .collect::<Result<Vec<_>>>()?;
    let conj = Endomorphism::new(&a, images)?;
    // the induced map must agree with conjugation on every class
    for f in cg.forms() {
        if conj.apply(&cg.element_of(f)?)? != cg.element_of(&f.conjugate())? {
            return Err(Error::Parse(format!(
                "conjugation is not additive on the class group of {d}"
            )));
        }
    }
    let g = GroupTable::cyclic(2)?;
    action::verify(&g, &a, vec![Endomorphism::identity(&a), conj])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn disc(d: i64) -> Discriminant {
        Discriminant::new(d).unwrap()
    }

    #[test]
    fn prime_forms_at_minus_56() {
        let f3 = prime_form(-56, 3).unwrap();
        assert_eq!(f3.kind, PrimeKind::Split);
        assert_eq!(f3.form, QuadraticForm::new(3, 2, 5));
        let f2 = prime_form(-56, 2).unwrap();
        assert_eq!(f2.kind, PrimeKind::Ramified);
        assert_eq!(f2.form, QuadraticForm::new(2, 0, 7));
        assert_eq!(prime_form(-56, 11).unwrap().kind, PrimeKind::Inert);
        assert_eq!(prime_form(-56, 7).unwrap().form, QuadraticForm::new(7, 0, 2));
        assert!(prime_form(-56, 9).is_err());
        // D odd, p = 2 split when D = 1 mod 8
        let f = prime_form(-15, 2).unwrap();
        assert_eq!(f.kind, PrimeKind::Split);
        assert_eq!(f.form.b, 1);
    }

    #[test]
    fn membership() {
        let d = disc(-56);
        let p3 = Ideal::from_form(d, QuadraticForm::new(3, 2, 5));
        assert!(p3.contains(&QuadInteger::new(d, 3, 0)));
        assert!(p3.contains(&QuadInteger::new(d, -1, 1)));
        assert!(!p3.contains(&QuadInteger::new(d, 1, 1)));
        let q = Ideal::from_form(d, QuadraticForm::new(2, 0, 7));
        assert_eq!(q.pow(2).unwrap().norm(), 4);
        assert!(q.pow(2).unwrap().contains(&QuadInteger::rational(d, 2)));
        assert!(!q.pow(2).unwrap().contains(&QuadInteger::new(d, 0, 1)));
    }

    #[test]
    fn factorizations() {
        let d = disc(-56);
        let f = factor_principal(-56, &QuadInteger::new(d, 0, 1)).unwrap();
        let forms: Vec<(QuadraticForm, u32)> = f.iter().map(|x| (x.form, x.exponent)).collect();
        assert_eq!(
            forms,
            vec![(QuadraticForm::new(2, 0, 7), 1), (QuadraticForm::new(7, 0, 2), 1)]
        );
        let f = factor_principal(-56, &QuadInteger::rational(d, 2)).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].form, f[0].exponent), (QuadraticForm::new(2, 0, 7), 2));
        let f = factor_principal(-56, &QuadInteger::new(d, 5, 2)).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!((f[0].form, f[0].exponent), (QuadraticForm::new(3, -2, 5), 4));
        assert!(matches!(
            factor_principal(-56, &QuadInteger::rational(d, 1)),
            Err(Error::ZeroOrUnit)
        ));
        assert!(factor_principal(-56, &QuadInteger::rational(d, 0)).is_err());
    }

    #[test]
    fn localizations_at_minus_56() {
        let d = disc(-56);
        let at = |x: QuadInteger| localize(-56, &x).unwrap().invariant_factors().to_vec();
        assert_eq!(at(QuadInteger::rational(d, 2)), vec![2]);
        assert_eq!(at(QuadInteger::rational(d, 6)), Vec::<u64>::new());
        assert_eq!(at(QuadInteger::rational(d, 11)), vec![4]);
        let x = QuadInteger::new(d, 1, -1);
        assert_eq!(x.norm(), 15);
        assert!(localize_galois(-56, &x).unwrap().invariant_factors().is_empty());
        assert_eq!(
            localize_galois(-56, &QuadInteger::rational(d, 2)).unwrap().invariant_factors(),
            &[2]
        );
    }

    #[test]
    fn galois_actions_certify() {
        let act = galois_action_on_classgroup(-56).unwrap();
        let a = act.module().clone();
        assert_eq!(a.invariant_factors(), &[4]);
        assert_eq!(act.assignment()[1], Endomorphism::scalar(&a, -1));
        let trivial = galois_action_on_classgroup(-4).unwrap();
        assert!(trivial.module().is_trivial());
    }

    #[test]
    fn half_integer_elements() {
        let d = disc(-23);
        let x = QuadInteger::from_halves(d, 1, 1).unwrap();
        assert_eq!(x.norm(), 6);
        assert!(QuadInteger::from_halves(d, 1, 2).is_err());
        assert!(QuadInteger::from_halves(disc(-56), 1, 1).is_err());
        let f = factor_principal(-23, &x).unwrap();
        let n: u64 = f.iter().map(|p| p.norm().pow(p.exponent)).product();
        assert_eq!(n, 6);
        assert_eq!(x.to_string(), "(1 + √-23)/2");
    }
}
