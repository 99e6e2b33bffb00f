//! Necessary conditions for a group `G` of order `n` to admit a norm-like
//! action on an abelian group `A`, and a feasibility verdict that combines
//! them with the exhaustive search.
//!
//! The predicates never assert that a number field exists; "not excluded"
//! only means none of them rules the pair out.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::abelian::{FiniteAbelianGroup, Tables};
use crate::action::{ActionOracle, ActionRecord, NormLikeAction};
use crate::arith;
use crate::autgroup;
use crate::error::{Error, Result};
use crate::groups::GroupTable;
use crate::limits::Limits;

/// `|G| = p^r`: excluded iff `h mod p` is neither 0 nor 1.
pub fn congruence_test(p: u64, r: u32, h: u64) -> Result<bool> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::Parse("prime power exponent must be at least 1".into()));
    }
    Ok(h % p > 1)
}

/// Excluded iff `1 < h < ` least prime factor of `n`.
pub fn min_order_test(n: u64, h: u64) -> bool {
    match arith::least_prime_factor(n) {
        Some(q) => 1 < h && h < q,
        None => false,
    }
}

/// `n` odd: excluded iff `A` has exactly one involution, i.e. its 2-Sylow
/// subgroup is cyclic and nontrivial.
pub fn unique_involution_test(n: u64, a: &FiniteAbelianGroup) -> Result<bool> {
    if n % 2 == 0 {
        return Err(Error::EvenDegree(n));
    }
    Ok(a.involution_count() == 1)
}

/// `|G| = p` an odd prime: excluded iff the `p`-Sylow subgroup of `A` is
/// cyclic of order at least `p^2`.
pub fn cyclic_prime_power_test(p: u64, a: &FiniteAbelianGroup) -> Result<bool> {
    if p % 2 == 0 || !arith::is_prime(p) {
        return Err(Error::NotOddPrimeDegree(p));
    }
    let sylow = a.sylow(p);
    Ok(sylow.is_cyclic() && sylow.order() >= p * p)
}

/// `|A| = p` prime: excluded iff `p ∤ n` and `gcd(p - 1, n) = 1`.
pub fn prime_class_number_test(n: u64, p: u64) -> Result<bool> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(n % p != 0 && arith::gcd(p - 1, n) == 1)
}

/// `|G| = p^r`: excluded iff some `q`-part of `|A|` with `q != p` is not
/// `1 mod p`.
pub fn sylow_congruence_test(p: u64, r: u32, a: &FiniteAbelianGroup) -> Result<bool> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if r == 0 {
        return Err(Error::Parse("prime power exponent must be at least 1".into()));
    }
    Ok(arith::factorize(a.order())
        .iter()
        .any(|&(q, e)| q != p && q.pow(e) % p != 1))
}

/// Half-factoriality read off the class group: HFD iff `|A| <= 2`, UFD iff
/// `A` is trivial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HfdStatus {
    pub hfd: bool,
    pub ufd: bool,
}

pub fn hfd_test(a: &FiniteAbelianGroup) -> HfdStatus {
    HfdStatus {
        hfd: a.order() <= 2,
        ufd: a.is_trivial(),
    }
}

/// Fixed-point argument through `Aut(A)`.
///
/// The image of `G` in `Aut(A)` has order dividing `g = gcd(n, |Aut(A)|)`.
/// If `g = 1` the action is trivial and the norm is `x -> n x`. If `g` is a
/// prime `ℓ`, the image is trivial or generated by one automorphism of order
/// `ℓ`; when every such automorphism fixes an element `x` with `n x != 0`,
/// that `x` has norm `n x != 0`. Returns `None` when `g` is composite or
/// `Aut(A)` is too large to scan.
pub fn fixed_point_test(n: u64, a: &FiniteAbelianGroup, limits: &Limits) -> Option<bool> {
    let aut = autgroup::automorphism_count(a);
    let g = arith::gcd(n, (aut % n as u128) as u64);
    let g = if g == 0 { n } else { g };
    let exponent_divides = n % a.exponent() == 0;
    if g == 1 {
        return Some(!exponent_divides);
    }
    if !arith::is_prime(g) || exponent_divides || aut > limits.max_automorphisms {
        return if exponent_divides { Some(false) } else { None };
    }
    let t = Tables::new(a).ok()?;
    let ell = g;
    let mut all_fix = true;
    let _ = autgroup::for_each_automorphism_index(&t, &mut |imgs| {
        let table = t.full_table(imgs);
        let is_identity = imgs == t.gens.as_slice();
        let order_ell = !is_identity
            && t.gens.iter().all(|&e| {
                let mut y = e;
                for _ in 0..ell {
                    y = table[y] as usize;
                }
                y == e
            });
        if order_ell {
            let fixes = (0..t.n).any(|x| table[x] as usize == x && t.scale(n, x) != 0);
            if !fixes {
                all_fix = false;
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    });
    Some(all_fix)
}

/// A predicate that ruled a pair out.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reason {
    pub id: String,
    pub statement: String,
}

impl Reason {
    fn new(id: &str, statement: String) -> Self {
        Reason {
            id: id.to_string(),
            statement,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Excluded,
    NotExcluded,
    FeasibleWitness,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "result")]
pub enum OracleOutcome {
    NotRun,
    Witness,
    Empty,
    Skipped { message: String },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OracleMode {
    Off,
    /// Run the search only when no predicate excludes the pair.
    #[default]
    IfNotExcluded,
    /// Always run the search, also to cross-check exclusions.
    Always,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FeasibilityVerdict {
    pub group: String,
    pub group_order: usize,
    pub class_group: Vec<u64>,
    pub status: Status,
    pub reasons: Vec<Reason>,
    pub hfd: HfdStatus,
    pub oracle: OracleOutcome,
    pub witness: Option<ActionRecord>,
}

impl FeasibilityVerdict {
    /// The witness, re-verified.
    pub fn witness_action(&self) -> Result<Option<NormLikeAction>> {
        self.witness.as_ref().map(ActionRecord::verify).transpose()
    }
}

/// Runs every applicable predicate on `(n, A)`.
pub fn exclusion_reasons(n: u64, a: &FiniteAbelianGroup, limits: &Limits) -> Vec<Reason> {
    let h = a.order();
    let mut out = Vec::new();
    if let Some((p, r)) = arith::prime_power(n) {
        if congruence_test(p, r, h) == Ok(true) {
            out.push(Reason::new(
                "orbit-congruence",
                format!("|G| = {p}^{r} forces |A| = 0 or 1 mod {p}, but |A| = {h} is {} mod {p}", h % p),
            ));
        }
        if sylow_congruence_test(p, r, a) == Ok(true) {
            out.push(Reason::new(
                "sylow-congruence",
                format!("|G| = {p}^{r} forces every prime-power part of |A| coprime to {p} to be 1 mod {p}; |A| = {h}"),
            ));
        }
    }
    if min_order_test(n, h) {
        out.push(Reason::new(
            "least-prime-bound",
            format!("a nontrivial A must have order at least the least prime factor of |G| = {n}; |A| = {h}"),
        ));
    }
    if unique_involution_test(n, a) == Ok(true) {
        out.push(Reason::new(
            "unique-involution",
            format!("for odd |G| = {n}, A cannot have a unique element of order 2"),
        ));
    }
    if arith::is_prime(n) && n % 2 == 1 && cyclic_prime_power_test(n, a) == Ok(true) {
        out.push(Reason::new(
            "cyclic-sylow-p",
            format!("for |G| = {n} prime, the {n}-Sylow subgroup of A cannot be cyclic of order >= {}", n * n),
        ));
    }
    if arith::is_prime(h) && prime_class_number_test(n, h) == Ok(true) {
        out.push(Reason::new(
            "prime-class-number",
            format!("|A| = {h} prime requires {h} | {n} or gcd({}, {n}) > 1", h - 1),
        ));
    }
    if fixed_point_test(n, a, limits) == Some(true) {
        out.push(Reason::new(
            "fixed-point",
            format!(
                "the image of G in Aut(A) has order dividing gcd({n}, |Aut(A)|) and fixes an element x with {n}x != 0"
            ),
        ));
    }
    out
}

/// Predicates first, then (depending on `mode`) the exhaustive search.
pub fn feasibility(
    g: &GroupTable,
    a: &FiniteAbelianGroup,
    mode: OracleMode,
    oracle: &ActionOracle,
) -> Result<FeasibilityVerdict> {
    let n = g.order() as u64;
    let reasons = exclusion_reasons(n, a, &oracle.options().limits);
    let excluded = !reasons.is_empty();
    let run = match mode {
        OracleMode::Off => false,
        OracleMode::IfNotExcluded => !excluded,
        OracleMode::Always => true,
    };
    let mut verdict = FeasibilityVerdict {
        group: g.label().to_string(),
        group_order: g.order(),
        class_group: a.invariant_factors().to_vec(),
        status: if excluded { Status::Excluded } else { Status::NotExcluded },
        reasons,
        hfd: hfd_test(a),
        oracle: OracleOutcome::NotRun,
        witness: None,
    };
    if !run {
        return Ok(verdict);
    }
    match oracle.find(g, a) {
        Ok(Some(w)) => {
            if let Some(r) = verdict.reasons.first() {
                return Err(Error::PredicateContradiction {
                    predicate: r.id.clone(),
                });
            }
            verdict.status = Status::FeasibleWitness;
            verdict.oracle = OracleOutcome::Witness;
            verdict.witness = Some(w.to_record());
        }
        Ok(None) => {
            verdict.oracle = OracleOutcome::Empty;
            if !excluded {
                verdict.status = Status::Excluded;
                verdict.reasons.push(Reason::new(
                    "oracle",
                    "exhaustive search found no norm-like action".into(),
                ));
            }
        }
        Err(Error::BoundExceeded { what, value, limit }) => {
            verdict.oracle = OracleOutcome::Skipped {
                message: format!("{what} is {value}, limit is {limit}"),
            };
        }
        Err(e) => return Err(e),
    }
    Ok(verdict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::GroupSpec;

    fn ab(f: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(f).unwrap()
    }

    #[test]
    fn predicate_examples() {
        assert!(congruence_test(3, 1, 5).unwrap());
        assert!(!congruence_test(3, 2, 7).unwrap());
        assert!((1..100).all(|h| !congruence_test(2, 1, h).unwrap()));
        assert!(congruence_test(4, 1, 5).is_err());

        assert!(min_order_test(5, 3));
        assert!(!min_order_test(6, 3));
        assert!(!min_order_test(9, 1));

        assert!(unique_involution_test(3, &ab(&[2])).unwrap());
        assert!(unique_involution_test(3, &ab(&[4])).unwrap());
        assert!(!unique_involution_test(3, &ab(&[2, 2])).unwrap());
        assert!(unique_involution_test(4, &ab(&[2])).is_err());

        assert!(cyclic_prime_power_test(3, &ab(&[9])).unwrap());
        assert!(cyclic_prime_power_test(3, &ab(&[45])).unwrap());
        assert!(!cyclic_prime_power_test(3, &ab(&[3, 3])).unwrap());
        assert!(cyclic_prime_power_test(9, &ab(&[9])).is_err());

        assert!(!prime_class_number_test(3, 13).unwrap());
        assert!(prime_class_number_test(3, 17).unwrap());
        assert!(!prime_class_number_test(17, 17).unwrap());

        assert!(sylow_congruence_test(3, 1, &ab(&[55])).unwrap());
        assert!(!sylow_congruence_test(3, 1, &ab(&[7])).unwrap());
        assert!(!sylow_congruence_test(3, 1, &ab(&[5, 5])).unwrap());

        assert_eq!(hfd_test(&ab(&[2])), HfdStatus { hfd: true, ufd: false });
        assert_eq!(hfd_test(&ab(&[])), HfdStatus { hfd: true, ufd: true });
        assert_eq!(hfd_test(&ab(&[4])), HfdStatus { hfd: false, ufd: false });
    }

    #[test]
    fn fixed_point_excludes_order_15_on_rank_3() {
        assert_eq!(fixed_point_test(15, &ab(&[2, 2, 2]), &Limits::default()), Some(true));
        assert_eq!(fixed_point_test(3, &ab(&[7]), &Limits::default()), Some(false));
        assert_eq!(fixed_point_test(3, &ab(&[5]), &Limits::default()), Some(true));
    }

    fn verdict(spec: &str, a: &[u64], mode: OracleMode) -> FeasibilityVerdict {
        let g = spec.parse::<GroupSpec>().unwrap().build().unwrap();
        feasibility(&g, &ab(a), mode, &ActionOracle::default()).unwrap()
    }

    #[test]
    fn feasibility_examples() {
        let v = verdict("cyclic:3", &[13], OracleMode::Always);
        assert_eq!(v.status, Status::FeasibleWitness);
        let w = v.witness_action().unwrap().unwrap();
        assert_eq!(w.assignment()[1].to_string(), "[[3]]");

        let v = verdict("cyclic:3", &[9], OracleMode::Always);
        assert_eq!(v.status, Status::Excluded);
        assert_eq!(v.oracle, OracleOutcome::Empty);
        assert!(v.reasons.iter().any(|r| r.id == "cyclic-sylow-p"));

        let v = verdict("product:cyclic:3+cyclic:5", &[2, 2, 2], OracleMode::Always);
        assert_eq!(v.status, Status::Excluded);
        assert_eq!(v.oracle, OracleOutcome::Empty);

        let v = verdict("cyclic:3", &[2, 2, 2], OracleMode::Always);
        assert_eq!(v.status, Status::Excluded);
        assert_eq!(v.oracle, OracleOutcome::Empty);
    }

    #[test]
    fn verdict_json_round_trip() {
        let v = verdict("cyclic:3", &[13], OracleMode::Always);
        let s = serde_json::to_string(&v).unwrap();
        assert!(s.contains("\"status\":\"feasible-witness\""));
        let back: FeasibilityVerdict = serde_json::from_str(&s).unwrap();
        assert_eq!(back, v);
    }
}
