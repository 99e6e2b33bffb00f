//! A chain of localizations `O_K ⊆ O_K[1/x_1] ⊆ ... ` ending in a PID, each
//! step killing a cyclic subgroup of prime order of the current class group.

use serde::{Deserialize, Serialize};

use super::ideal::{kronecker, prime_form, Ideal, PrimeIdealFactor, QuadInteger};
use super::{class_group, Discriminant, QuadraticForm};
use crate::abelian::AbelianElement;
use crate::arith;
use crate::error::{Error, Result};

/// Primes searched for a representative of a class.
const MAX_PRIME: u64 = 1_000_000;
/// Exponent tuples tried when writing `ell·[q]` in terms of earlier primes.
const MAX_EXPONENT_TUPLES: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    /// Rational prime below the newly inverted prime ideal.
    pub prime: u64,
    /// Prime form of that ideal.
    pub form: QuadraticForm,
    /// Order of its class in the class group before this step.
    pub ell: u64,
    /// Exponents of the previously inverted prime ideals in the generator.
    pub exponents: Vec<u32>,
    /// Generator of `q^ell · q_1^j_1 ···`; inverting it performs the step.
    pub element: QuadInteger,
    pub norm: i128,
    /// Invariant factors of the class group after the step.
    pub class_group_after: Vec<u64>,
}

/// Least prime with a prime ideal in the class of `target`, skipping `used`.
fn prime_in_class(
    d: i64,
    target: &AbelianElement,
    used: &[u64],
    element_of: &dyn Fn(&QuadraticForm) -> Result<AbelianElement>,
) -> Result<PrimeIdealFactor> {
    for p in 2..=MAX_PRIME {
        if !arith::is_prime(p) || used.contains(&p) || kronecker(d, p) == -1 {
            continue;
        }
        let f = prime_form(d, p)?;
        let mut candidates = vec![f.clone()];
        if f.form.b != 0 && f.form.b != p as i64 {
            let conj = f.form.conjugate();
            candidates.push(PrimeIdealFactor {
                form: conj,
                class: conj.reduce(),
                ..f
            });
        }
        candidates.sort_by_key(|c| c.form.canonical_key());
        for c in candidates {
            if element_of(&c.form)? == *target {
                return Ok(c);
            }
        }
    }
    Err(Error::BoundExceeded {
        what: "prime representing a class",
        value: MAX_PRIME as u128 + 1,
        limit: MAX_PRIME as u128,
    })
}

/// Element of norm `N(J)` lying in `J`, smallest `|t|` then `|s|`,
/// nonnegative first.
fn generator(disc: Discriminant, j: &Ideal) -> Option<QuadInteger> {
    let n = j.norm();
    let d = disc.radicand().unsigned_abs() as i128;
    let mut t: i128 = 0;
    while d * t * t <= 4 * n {
        let rest = 4 * n - d * t * t;
        let s = arith::isqrt(rest as u64) as i128;
        if s * s == rest {
            for tt in [t, -t] {
                for ss in [s, -s] {
                    if let Ok(x) = QuadInteger::from_halves(disc, ss as i64, tt as i64) {
                        if j.contains(&x) {
                            return Some(x);
                        }
                    }
                }
            }
        }
        t += 1;
    }
    None
}

/// Inverts one prime at a time until the class group is trivial. The number
/// of steps is the number of prime factors of `h` with multiplicity.
pub fn pid_chain(d: i64) -> Result<Vec<ChainStep>> {
    let disc = Discriminant::new(d)?;
    let cg = class_group(d)?;
    let element_of = |f: &QuadraticForm| cg.element_of(f);
    let mut inverted: Vec<PrimeIdealFactor> = Vec::new();
    let mut killed: Vec<AbelianElement> = Vec::new();
    let mut steps = Vec::new();
    loop {
        let q = cg.group().quotient(&killed)?;
        if q.group().is_trivial() {
            return Ok(steps);
        }
        let ell = arith::least_prime_factor(q.group().order()).expect("nontrivial quotient");
        // first class, in canonical order, of order ell in the quotient
        let mut target = None;
        for f in cg.forms() {
            let x = cg.element_of(f)?;
            if q.project(&x)?.order() == ell {
                target = Some(x);
                break;
            }
        }
        let target = target.expect("a group of order divisible by ell has an element of order ell");
        let used: Vec<u64> = inverted.iter().map(|f| f.p).collect();
        let prime = prime_in_class(d, &target, &used, &element_of)?;

        // smallest exponents with ell·[q] + Σ j_i [q_i] = 0
        let base = target.scale(ell as i64);
        let prev: Vec<AbelianElement> = inverted
            .iter()
            .map(|f| cg.element_of(&f.form))
            .collect::<Result<_>>()?;
        let orders: Vec<u64> = prev.iter().map(|x| x.order()).collect();
        let tuples: u64 = orders.iter().product();
        crate::limits::Limits::check(
            "exponent tuples",
            tuples as u128,
            MAX_EXPONENT_TUPLES as u128,
        )?;
        let mut best: Option<Vec<u32>> = None;
        let mut js = vec![0u64; prev.len()];
        for _ in 0..tuples {
            let mut sum = base.clone();
            for (x, &j) in prev.iter().zip(&js) {
                sum = sum.add(&x.scale(j as i64))?;
            }
            if sum.is_identity() {
                let cand: Vec<u32> = js.iter().map(|&j| j as u32).collect();
                let total = |v: &[u32]| v.iter().map(|&j| j as u64).sum::<u64>();
                if best.as_ref().map_or(true, |b| total(&cand) < total(b)) {
                    best = Some(cand);
                }
            }
            for (j, &o) in js.iter_mut().zip(&orders).rev() {
                *j += 1;
                if *j < o {
                    break;
                }
                *j = 0;
            }
        }
        let exponents = best.ok_or(Error::InconsistentGenerators)?;

        let mut ideal = Ideal::from_form(disc, prime.form).pow(ell as u32)?;
        for (f, &j) in inverted.iter().zip(&exponents) {
            ideal = ideal.mul(&Ideal::from_form(disc, f.form).pow(j)?)?;
        }
        let element = generator(disc, &ideal).ok_or(Error::InconsistentGenerators)?;

        killed.push(target);
        inverted.push(prime.clone());
        let after = cg.group().quotient(&killed)?;
        steps.push(ChainStep {
            prime: prime.p,
            form: prime.form,
            ell,
            exponents,
            element,
            norm: element.norm(),
            class_group_after: after.group().invariant_factors().to_vec(),
        });
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_for_minus_56() {
        let steps = pid_chain(-56).unwrap();
        assert_eq!(steps.len(), 2);
        assert_eq!(steps[0].prime, 2);
        assert_eq!(steps[0].form, QuadraticForm::new(2, 0, 7));
        assert_eq!(steps[0].norm, 4);
        assert_eq!(steps[0].class_group_after, vec![2]);
        assert_eq!(steps[1].prime, 3);
        assert_eq!(steps[1].form, QuadraticForm::new(3, 2, 5));
        assert_eq!(steps[1].exponents, vec![1]);
        assert_eq!(steps[1].norm, 18);
        assert_eq!(steps[1].element.to_string(), "2 + √-14");
        assert!(steps[1].class_group_after.is_empty());
    }

    #[test]
    fn chain_lengths() {
        assert!(pid_chain(-163).unwrap().is_empty());
        for d in [-23i64, -47, -84, -420, -260, -199] {
            let h = class_group(d).unwrap().class_number() as u64;
            assert_eq!(pid_chain(d).unwrap().len() as u32, arith::big_omega(h), "D = {d}");
        }
    }
}
