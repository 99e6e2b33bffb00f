//! Acceptance suite: nine end-to-end checks with wall-clock limits. Prints one
//! PASS/FAIL line per check and exits nonzero if any fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use normlike::action::ActionOracle;
use normlike::autgroup::{
    aut_group_table, cycle_decomposition, cycle_sums_vanish, enumerate_automorphisms, power_sum_residue,
    primitive_root,
};
use normlike::groups::small_groups;
use normlike::quadratic::{
    class_group, compose, fundamental_discriminants, galois_action_on_classgroup, localize, localize_galois,
    pid_chain,
};
use normlike::theorems::{self, feasibility, OracleMode, OracleOutcome};
use normlike::{arith, Automorphism, Discriminant, FiniteAbelianGroup, GroupTable, QuadInteger, QuadraticForm};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ab(f: &[u64]) -> FiniteAbelianGroup {
    FiniteAbelianGroup::new(f).unwrap()
}

fn class_group_minus_56() -> Outcome {
    let cg = class_group(-56).map_err(|e| e.to_string())?;
    ensure(cg.class_number() == 4, || format!("h = {}", cg.class_number()))?;
    ensure(cg.group().invariant_factors() == [4], || format!("group {}", cg.group()))?;
    let p = QuadraticForm::new(3, 2, 5);
    let sq = compose(&p, &p).map_err(|e| e.to_string())?;
    ensure(sq == QuadraticForm::new(2, 0, 7), || format!("(3,2,5)^2 = {sq}"))?;
    let disc = Discriminant::new(-56).unwrap();
    let at2 = localize(-56, &QuadInteger::rational(disc, 2)).map_err(|e| e.to_string())?;
    ensure(at2.invariant_factors() == [2], || format!("inverting 2: {:?}", at2.invariant_factors()))?;
    let at6 = localize(-56, &QuadInteger::rational(disc, 6)).map_err(|e| e.to_string())?;
    ensure(at6.invariant_factors().is_empty(), || format!("inverting 6: {:?}", at6.invariant_factors()))?;
    Ok("h = 4, [4], (3,2,5)^2 ~ (2,0,7), [1/2] -> [2], [1/6] -> trivial".into())
}

fn chain_minus_56() -> Outcome {
    let steps = pid_chain(-56).map_err(|e| e.to_string())?;
    ensure(steps.len() == 2, || format!("{} steps", steps.len()))?;
    let orders: Vec<u64> = steps.iter().map(|s| s.class_group_after.iter().product()).collect();
    ensure(orders == [2, 1], || format!("quotient orders {orders:?}"))?;
    let primes: Vec<u64> = steps.iter().map(|s| s.prime).collect();
    ensure(primes == [2, 3], || format!("primes {primes:?}"))?;
    Ok(format!(
        "invert {} (norm {}) then {} (norm {}), quotient orders 2, 1",
        steps[0].element, steps[0].norm, steps[1].element, steps[1].norm
    ))
}

fn aut_z13() -> Outcome {
    let a = ab(&[13]);
    let phi = Automorphism::scalar(&a, 2).map_err(|e| e.to_string())?;
    ensure(phi.order() == 12, || format!("order {}", phi.order()))?;
    let (aut, _) = aut_group_table(&a).map_err(|e| e.to_string())?;
    ensure(aut.order() == 12, || format!("|Aut| = {}", aut.order()))?;
    ensure(primitive_root(13) == Ok(2), || "least primitive root is not 2".into())?;
    let cycles = cycle_decomposition(&phi.pow(4)).map_err(|e| e.to_string())?;
    let got: BTreeSet<BTreeSet<u64>> = cycles.iter().map(|c| c.iter().copied().collect()).collect();
    let want: BTreeSet<BTreeSet<u64>> = [[1, 3, 9], [2, 5, 6], [4, 10, 12], [7, 8, 11]]
        .iter()
        .map(|c| c.iter().copied().collect())
        .collect();
    ensure(got == want, || format!("cycles {cycles:?}"))?;
    let sums: Vec<u64> = cycles.iter().map(|c| c.iter().sum()).collect();
    ensure(sums.iter().all(|s| s % 13 == 0), || format!("sums {sums:?}"))?;
    Ok(format!("order 12, cycles {cycles:?}, sums {sums:?}"))
}

fn cycle_sums() -> Outcome {
    let mut cases = 0;
    for p in (3..=97u64).filter(|&p| arith::is_prime(p)) {
        for n in arith::divisors(p - 1).into_iter().filter(|&n| n < p - 1) {
            let r = cycle_sums_vanish(p, n).map_err(|e| format!("p = {p}, n = {n}: {e}"))?;
            let mut seen: Vec<u64> = r.cycles.iter().flatten().copied().collect();
            seen.sort_unstable();
            ensure(seen == (1..p).collect::<Vec<_>>(), || format!("p = {p}, n = {n}: not a partition"))?;
            ensure(r.cycles.iter().all(|c| c.iter().sum::<u64>() % p == 0), || {
                format!("p = {p}, n = {n}: sums {:?}", r.sums)
            })?;
            ensure(r.all_vanish, || format!("p = {p}, n = {n}: closed form disagrees"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (p, n) pairs"))
}

fn power_sums() -> Outcome {
    for (p, n) in [(3u64, 2u32), (3, 3), (5, 2), (7, 2)] {
        let q = p.pow(n);
        let alpha = primitive_root(q).map_err(|e| e.to_string())?;
        let r = power_sum_residue(p, n, alpha).map_err(|e| e.to_string())?;
        ensure(r.residue == p % q, || format!("({p},{n}): residue {}", r.residue))?;
        let got: BTreeSet<u64> = r.terms.iter().copied().collect();
        let want: BTreeSet<u64> = (0..p).map(|i| i * p.pow(n - 1) + 1).collect();
        ensure(got == want, || format!("({p},{n}): terms {got:?}"))?;
    }
    Ok("residue p mod p^n for (3,2) (3,3) (5,2) (7,2)".into())
}

fn gl3_f2() -> Outcome {
    let a = ab(&[2, 2, 2]);
    let auts = enumerate_automorphisms(&a).map_err(|e| e.to_string())?;
    ensure(auts.len() == 168, || format!("{} automorphisms", auts.len()))?;
    let order_three: Vec<&Automorphism> = auts.iter().filter(|f| f.order() == 3).collect();
    for f in &order_three {
        ensure(f.fixed_points().iter().any(|x| !x.is_identity()), || format!("{f} fixes only 0"))?;
    }
    let g = GroupTable::cyclic(3).unwrap();
    let v = feasibility(&g, &a, OracleMode::Always, &ActionOracle::default()).map_err(|e| e.to_string())?;
    ensure(v.oracle == OracleOutcome::Empty, || format!("oracle {:?}", v.oracle))?;
    Ok(format!("168 automorphisms, {} of order 3 each fix a vector, C3 oracle-empty", order_three.len()))
}

/// Every abelian group of order at most `max`.
fn abelian_groups(max: u64) -> Vec<FiniteAbelianGroup> {
    fn extend(prefix: &mut Vec<u64>, order: u64, max: u64, out: &mut Vec<FiniteAbelianGroup>) {
        out.push(FiniteAbelianGroup::new(prefix).unwrap());
        let start = prefix.last().copied().unwrap_or(2);
        let mut d = start;
        while order * d <= max {
            if d % start == 0 {
                prefix.push(d);
                extend(prefix, order * d, max, out);
                prefix.pop();
            }
            d += 1;
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max, &mut out);
    out
}

fn soundness_sweep() -> Outcome {
    let oracle = ActionOracle::default();
    let groups: Vec<GroupTable> = small_groups().iter().map(|s| s.build().unwrap()).collect();
    let modules = abelian_groups(40);
    let (mut pairs, mut excluded, mut witnesses) = (0, 0, 0);
    for g in &groups {
        let n = g.order() as u64;
        let odd_prime = n % 2 == 1 && arith::is_prime(n);
        for a in &modules {
            let v = feasibility(g, a, OracleMode::Always, &oracle).map_err(|e| format!("{} on {a}: {e}", g.label()))?;
            pairs += 1;
            match v.oracle {
                OracleOutcome::Witness => {
                    witnesses += 1;
                    ensure(v.reasons.is_empty(), || format!("{} on {a}: excluded but witnessed", g.label()))?;
                    let w = v.witness_action().map_err(|e| e.to_string())?;
                    ensure(w.is_some(), || format!("{} on {a}: witness does not verify", g.label()))?;
                    if odd_prime {
                        ensure(a.order() % n <= 1, || format!("{} on {a}: |A| mod {n} = {}", g.label(), a.order() % n))?;
                        ensure(a.involution_count() != 1, || format!("{} on {a}: unique involution", g.label()))?;
                    }
                }
                OracleOutcome::Empty => excluded += 1,
                ref other => return Err(format!("{} on {a}: oracle {other:?}", g.label())),
            }
        }
    }
    Ok(format!("{pairs} pairs, {witnesses} witnessed, {excluded} oracle-empty, no contradictions"))
}

fn quadratic_sanity() -> Outcome {
    let discs: Vec<i64> = fundamental_discriminants(2000).into_iter().map(|d| d.value()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for &d in &discs {
        let cg = class_group(d).map_err(|e| format!("{d}: {e}"))?;
        let forms = cg.forms();
        let e = cg.principal();
        for f in forms {
            ensure(compose(f, &e).unwrap() == *f, || format!("{d}: {f} * 1"))?;
            ensure(compose(f, &f.conjugate()).unwrap() == e, || format!("{d}: {f} * {f}^-1"))?;
            let x = cg.element_of(f).unwrap();
            for g in forms {
                let fg = compose(f, g).unwrap();
                ensure(fg == compose(g, f).unwrap(), || format!("{d}: {f} {g} do not commute"))?;
                let sum = x.add(&cg.element_of(g).unwrap()).unwrap();
                ensure(cg.element_of(&fg).unwrap() == sum, || format!("{d}: class map not additive at {f}, {g}"))?;
            }
        }
        let triples = if forms.len() <= 16 { forms.len().pow(3) } else { 4000 };
        for i in 0..triples {
            let mut pick = |k: usize| {
                if forms.len() <= 16 {
                    forms[k % forms.len()]
                } else {
                    forms[rng.gen_range(0..forms.len())]
                }
            };
            let (f, g, h) = (pick(i), pick(i / forms.len()), pick(i / forms.len() / forms.len().max(1)));
            let l = compose(&compose(&f, &g).unwrap(), &h).unwrap();
            let r = compose(&f, &compose(&g, &h).unwrap()).unwrap();
            ensure(l == r, || format!("{d}: ({f}{g}){h} != {f}({g}{h})"))?;
        }
        galois_action_on_classgroup(d).map_err(|e| format!("{d}: conjugation action: {e}"))?;
    }
    let mut sample = discs.clone();
    for i in 0..20 {
        let j = rng.gen_range(i..sample.len());
        sample.swap(i, j);
    }
    for &d in &sample[..20] {
        let disc = Discriminant::new(d).unwrap();
        let mut tried = 0;
        while tried < 100 {
            let Ok(x) = QuadInteger::from_halves(disc, rng.gen_range(-400..=400), rng.gen_range(-40..=40)) else {
                continue;
            };
            if x.norm() <= 1 || x.norm() > 1 << 40 {
                continue;
            }
            tried += 1;
            let lg = localize_galois(d, &x).map_err(|e| format!("{d}, {x}: {e}"))?;
            let ln = localize(d, &QuadInteger::rational(disc, x.norm() as i64)).map_err(|e| format!("{d}, {x}: {e}"))?;
            ensure(lg.invariant_factors() == ln.invariant_factors(), || {
                format!("{d}, {x}: {:?} vs {:?}", lg.invariant_factors(), ln.invariant_factors())
            })?;
        }
    }
    Ok(format!("{} discriminants, 20 x 100 sampled localizations", discs.len()))
}

fn prime_class_number_table() -> Outcome {
    for n in 1..=50u64 {
        let excluded = theorems::prime_class_number_test(n, 17).map_err(|e| e.to_string())?;
        let expected = arith::gcd(n, 2) == 1 && arith::gcd(n, 17) == 1;
        ensure(excluded == expected, || format!("n = {n}: excluded = {excluded}"))?;
    }
    Ok("Z/17 excluded exactly for odd n <= 50 prime to 17".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 9] = [
        ("class group of D = -56 and its localizations", Duration::from_secs(1), class_group_minus_56),
        ("PID chain for D = -56", Duration::from_secs(1), chain_minus_56),
        ("Aut(Z/13) and the cycles of x -> 16x", Duration::from_secs(1), aut_z13),
        ("cycle sums vanish for p <= 97", Duration::from_secs(10), cycle_sums),
        ("power sums mod p^n", Duration::from_secs(1), power_sums),
        ("GL_3(F_2) and C3 on (Z/2)^3", Duration::from_secs(5), gl3_f2),
        ("soundness sweep |G| <= 8, |A| <= 40", Duration::from_secs(300), soundness_sweep),
        ("quadratic sanity |D| <= 2000", Duration::from_secs(120), quadratic_sanity),
        ("prime class number 17 by degree", Duration::from_secs(1), prime_class_number_table),
    ];
    let mut failed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = run();
        let elapsed = t0.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if elapsed <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; too slow, limit {limit:?}")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {}: {} {name} [{:.3}s] {detail}",
            i + 1,
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64()
        );
    }
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
