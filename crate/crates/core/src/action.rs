//! Norm-like actions of a finite group `G` on a finite abelian group `A`.
//!
//! An assignment `g -> φ_g ∈ End(A)` is a norm-like action when
//!
//! 1. `φ_{gh} = φ_g ∘ φ_h`,
//! 2. `φ_e = id`,
//! 3. each `φ_g` is additive,
//! 4. `Σ_{g∈G} φ_g(a) = 0` for every `a ∈ A`.
//!
//! Condition 3 holds by construction for [`Endomorphism`] values. Condition 4
//! is additive in `a`, so it suffices to test it on generators of `A`.
//! Conditions 1 and 2 force every `φ_g` to be bijective, since
//! `φ_g ∘ φ_{g^-1} = φ_e = id`; the exhaustive search therefore draws
//! candidates from `Aut(A)`, with an endomorphism mode kept as a cross-check.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{ControlFlow, Deref};
use std::sync::{Arc, Mutex};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbelianElement, FiniteAbelianGroup, Tables};
use crate::arith;
use crate::autgroup::{self, Endomorphism};
use crate::error::{Error, Result};
use crate::groups::{GroupSpec, GroupTable};
use crate::limits::Limits;

/// The first failed axiom, with witnesses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `(g1 g2)·x != g1·(g2·x)`.
    Composition {
        g1: usize,
        g2: usize,
        x: AbelianElement,
    },
    /// `e·x != x`.
    Identity { x: AbelianElement },
    /// The literal for `g` does not define an additive map.
    Additivity { g: usize, index: usize, order: u64 },
    /// `Σ_g g·x = sum != 0`.
    Norm { x: AbelianElement, sum: AbelianElement },
}

impl Violation {
    pub fn condition(&self) -> u8 {
        match self {
            Violation::Composition { .. } => 1,
            Violation::Identity { .. } => 2,
            Violation::Additivity { .. } => 3,
            Violation::Norm { .. } => 4,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Composition { g1, g2, x } => write!(
                f,
                "condition 1 (composition) fails: (g{g1}*g{g2})·{x} != g{g1}·(g{g2}·{x})"
            ),
            Violation::Identity { x } => {
                write!(f, "condition 2 (identity) fails: e·{x} != {x}")
            }
            Violation::Additivity { g, index, order } => write!(
                f,
                "condition 3 (additivity) fails for g{g}: image of generator {index} is not killed by {order}"
            ),
            Violation::Norm { x, sum } => write!(
                f,
                "condition 4 (norm) fails: sum of g·{x} over G is {sum}, not 0"
            ),
        }
    }
}

impl From<Violation> for Error {
    fn from(v: Violation) -> Self {
        Error::ActionViolation(Box::new(v))
    }
}

/// An assignment satisfying conditions 1 to 3; condition 4 is not required.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearAction {
    g: GroupTable,
    a: FiniteAbelianGroup,
    assignment: Vec<Endomorphism>,
}

impl LinearAction {
    /// Checks conditions 1 and 2 (3 holds for endomorphisms).
    pub fn new(g: &GroupTable, a: &FiniteAbelianGroup, assignment: Vec<Endomorphism>) -> Result<Self> {
        if assignment.len() != g.order() {
            return Err(Error::AssignmentLength {
                expected: g.order(),
                got: assignment.len(),
            });
        }
        for f in &assignment {
            if f.group() != a {
                return Err(Error::ParentMismatch {
                    element: f.to_string(),
                    group: a.to_string(),
                });
            }
        }
        let gens = a.generators();
        for g1 in 0..g.order() {
            for g2 in 0..g.order() {
                let lhs = &assignment[g.mul(g1, g2)];
                for x in &gens {
                    let inner = assignment[g2].apply_unchecked(x);
                    if lhs.apply_unchecked(x) != assignment[g1].apply_unchecked(&inner) {
                        return Err(Violation::Composition { g1, g2, x: x.clone() }.into());
                    }
                }
            }
        }
        for x in &gens {
            if assignment[g.identity()].apply_unchecked(x) != *x {
                return Err(Violation::Identity { x: x.clone() }.into());
            }
        }
        Ok(LinearAction {
            g: g.clone(),
            a: a.clone(),
            assignment,
        })
    }

    /// Extends `φ` given on some elements of `G` (normally generators) along
    /// the Cayley table.
    pub fn from_generators(
        g: &GroupTable,
        a: &FiniteAbelianGroup,
        gen_images: &[(usize, Endomorphism)],
    ) -> Result<Self> {
        let mut assignment: Vec<Option<Endomorphism>> = vec![None; g.order()];
        assignment[g.identity()] = Some(Endomorphism::identity(a));
        let mut queue = VecDeque::from([g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (s, phi) in gen_images {
                let y = g.mul(x, *s);
                let img = assignment[x].as_ref().expect("assigned").compose(phi)?;
                match &assignment[y] {
                    Some(existing) if *existing != img => return Err(Error::InconsistentGenerators),
                    Some(_) => {}
                    None => {
                        assignment[y] = Some(img);
                        queue.push_back(y);
                    }
                }
            }
        }
        let assignment = assignment
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::Parse("listed elements do not generate G".into()))?;
        Self::new(g, a, assignment)
    }

    pub fn group(&self) -> &GroupTable {
        &self.g
    }

    pub fn module(&self) -> &FiniteAbelianGroup {
        &self.a
    }

    pub fn assignment(&self) -> &[Endomorphism] {
        &self.assignment
    }

    /// `g·x`.
    pub fn act(&self, g: usize, x: &AbelianElement) -> Result<AbelianElement> {
        self.assignment[g].apply(x)
    }

    /// `Σ_{g∈G} g·x`.
    pub fn norm(&self, x: &AbelianElement) -> AbelianElement {
        self.assignment
            .iter()
            .fold(self.a.identity(), |acc, f| acc.add_unchecked(&f.apply_unchecked(x)))
    }

    /// Condition 4 on the canonical generators of `A`.
    pub fn norm_check_on_generators(&self) -> bool {
        self.a.generators().iter().all(|x| self.norm(x).is_identity())
    }

    /// Condition 4 on every element of `A`.
    pub fn norm_check_full(&self) -> bool {
        self.a.elements().all(|x| self.norm(&x).is_identity())
    }

    /// Sorted orbit of `x`.
    pub fn orbit(&self, x: &AbelianElement) -> Result<Vec<AbelianElement>> {
        let mut out = self
            .assignment
            .iter()
            .map(|f| f.apply(x))
            .collect::<Result<Vec<_>>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Indices of `g` with `g·x = x`.
    pub fn stabilizer(&self, x: &AbelianElement) -> Result<Vec<usize>> {
        let mut out = Vec::new();
        for (g, f) in self.assignment.iter().enumerate() {
            if f.apply(x)? == *x {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// `H = {Σ_g g·a : a ∈ A}`, the image of the norm map.
    pub fn norm_subgroup(&self) -> Vec<AbelianElement> {
        let norms: Vec<AbelianElement> = self.a.generators().iter().map(|x| self.norm(x)).collect();
        self.a.subgroup_closure(&norms).expect("same group")
    }

    /// Elements fixed by all of `G`.
    pub fn trivial_orbit_elements(&self) -> Vec<AbelianElement> {
        self.a
            .elements()
            .filter(|x| self.assignment.iter().all(|f| f.apply_unchecked(x) == *x))
            .collect()
    }

    /// `{g : g·a = a for all a}`.
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.g.order())
            .filter(|&g| self.assignment[g].is_identity())
            .collect()
    }

    /// Certifies condition 4.
    pub fn certify(self) -> Result<NormLikeAction> {
        for x in self.a.generators() {
            let sum = self.norm(&x);
            if !sum.is_identity() {
                return Err(Violation::Norm { x, sum }.into());
            }
        }
        Ok(NormLikeAction(self))
    }
}

/// An assignment certified to satisfy conditions 1 to 4.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormLikeAction(LinearAction);

impl Deref for NormLikeAction {
    type Target = LinearAction;

    fn deref(&self) -> &LinearAction {
        &self.0
    }
}

impl NormLikeAction {
    pub fn into_linear(self) -> LinearAction {
        self.0
    }

    pub fn to_record(&self) -> ActionRecord {
        ActionRecord {
            group_spec: self.g.label().to_string(),
            abelian_factors: self.a.invariant_factors().to_vec(),
            assignment: self
                .assignment
                .iter()
                .map(|f| {
                    EndoLiteral::Matrix(
                        f.matrix()
                            .into_iter()
                            .map(|r| r.into_iter().map(|v| v as i64).collect())
                            .collect(),
                    )
                })
                .collect(),
        }
    }
}

/// Verifies all four conditions; the error names the first failed one.
pub fn verify(
    g: &GroupTable,
    a: &FiniteAbelianGroup,
    assignment: Vec<Endomorphism>,
) -> Result<NormLikeAction> {
    LinearAction::new(g, a, assignment)?.certify()
}

/// One entry of a serialized assignment: a matrix or a text literal such as
/// `mul:-1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum EndoLiteral {
    Matrix(Vec<Vec<i64>>),
    Text(String),
}

/// JSON form of an action.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionRecord {
    pub group_spec: String,
    pub abelian_factors: Vec<u64>,
    pub assignment: Vec<EndoLiteral>,
}

impl ActionRecord {
    /// Builds the groups, parses each literal and runs [`verify`].
    pub fn verify(&self) -> Result<NormLikeAction> {
        let g = self.group_spec.parse::<GroupSpec>()?.build()?;
        let a = FiniteAbelianGroup::new(&self.abelian_factors)?;
        if self.assignment.len() != g.order() {
            return Err(Error::AssignmentLength {
                expected: g.order(),
                got: self.assignment.len(),
            });
        }
        let mut endos = Vec::with_capacity(self.assignment.len());
        for (idx, lit) in self.assignment.iter().enumerate() {
            let parsed = match lit {
                EndoLiteral::Matrix(rows) => Endomorphism::from_matrix(&a, rows),
                EndoLiteral::Text(s) => Endomorphism::parse(&a, s),
            };
            match parsed {
                Ok(f) => endos.push(f),
                Err(Error::IllDefinedEndomorphism { index, order }) => {
                    return Err(Violation::Additivity { g: idx, index, order }.into())
                }
                Err(e) => return Err(e),
            }
        }
        verify(&g, &a, endos)
    }
}

/// Where the search draws the image of each generator of `G` from.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CandidateMode {
    /// Automorphisms `φ` with `φ^k = id`, `k` the generator's order.
    #[default]
    Automorphisms,
    /// All endomorphisms with `φ^k = id` (cross-check only; exponential).
    Endomorphisms,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchOptions {
    pub limits: Limits,
    pub mode: CandidateMode,
}

/// A candidate image: full table on element indices.
struct Candidate {
    table: Vec<u16>,
}

type CandidateList = Arc<Vec<Candidate>>;

/// Exhaustive search for norm-like actions, caching candidate lists per
/// `(A, k)` across calls.
pub struct ActionOracle {
    options: SearchOptions,
    cache: Mutex<HashMap<(FiniteAbelianGroup, u64), CandidateList>>,
}

impl Default for ActionOracle {
    fn default() -> Self {
        Self::new(SearchOptions::default())
    }
}

impl ActionOracle {
    pub fn new(options: SearchOptions) -> Self {
        ActionOracle {
            options,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn options(&self) -> &SearchOptions {
        &self.options
    }

    fn check_bounds(&self, g: &GroupTable, a: &FiniteAbelianGroup) -> Result<()> {
        let l = &self.options.limits;
        Limits::check("order of G", g.order() as u128, l.max_group_order as u128)?;
        Limits::check("order of A", a.order() as u128, l.max_module_order as u128)?;
        match self.options.mode {
            CandidateMode::Automorphisms => Limits::check(
                "number of automorphisms of A",
                autgroup::automorphism_count(a),
                l.max_automorphisms,
            ),
            CandidateMode::Endomorphisms => Limits::check(
                "number of endomorphisms of A",
                endomorphism_count(a),
                l.max_automorphisms,
            ),
        }
    }

    fn candidates(&self, t: &Tables, k: u64) -> CandidateList {
        let key = (t.group.clone(), k);
        if let Some(c) = self.cache.lock().expect("cache lock").get(&key) {
            return c.clone();
        }
        let list = Arc::new(build_candidates(t, k, self.options.mode));
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, list.clone());
        list
    }

    /// Some norm-like action, or `None` when the pair admits none.
    pub fn find(&self, g: &GroupTable, a: &FiniteAbelianGroup) -> Result<Option<NormLikeAction>> {
        self.check_bounds(g, a)?;
        let search = Search::new(self, g, a)?;
        Ok(search.find().map(|assign| search.to_action(&assign)))
    }

    /// All norm-like actions, in search order.
    pub fn enumerate(&self, g: &GroupTable, a: &FiniteAbelianGroup) -> Result<Vec<NormLikeAction>> {
        self.check_bounds(g, a)?;
        let search = Search::new(self, g, a)?;
        let max = self.options.limits.max_actions;
        let found = search.enumerate(max)?;
        Ok(found.iter().map(|assign| search.to_action(assign)).collect())
    }

    /// Number of norm-like actions.
    pub fn count(&self, g: &GroupTable, a: &FiniteAbelianGroup) -> Result<usize> {
        self.check_bounds(g, a)?;
        let search = Search::new(self, g, a)?;
        search.count()
    }
}

/// All norm-like actions of `g` on `a` with default bounds.
pub fn enumerate_actions(g: &GroupTable, a: &FiniteAbelianGroup) -> Result<Vec<NormLikeAction>> {
    ActionOracle::default().enumerate(g, a)
}

/// Some norm-like action of `g` on `a`, with default bounds.
pub fn find_action(g: &GroupTable, a: &FiniteAbelianGroup) -> Result<Option<NormLikeAction>> {
    ActionOracle::default().find(g, a)
}

/// `|End(A)| = Π_{i,j} gcd(d_i, d_j)`, saturating.
pub fn endomorphism_count(a: &FiniteAbelianGroup) -> u128 {
    let f = a.invariant_factors();
    f.iter()
        .flat_map(|&x| f.iter().map(move |&y| arith::gcd(x, y) as u128))
        .fold(1u128, u128::saturating_mul)
}

/// Units `u` modulo the exponent ordered `1, -1, 2, 3, ...`.
fn scalar_units(exponent: u64) -> Vec<u64> {
    let mut out = vec![1 % exponent.max(1)];
    if exponent > 2 {
        out.push(exponent - 1);
    }
    out.extend((2..exponent.saturating_sub(1)).filter(|&u| arith::gcd(u, exponent) == 1));
    out
}

fn has_order_dividing(t: &Tables, table: &[u16], k: u64) -> bool {
    t.gens.iter().all(|&e| {
        let mut y = e;
        for _ in 0..k {
            y = table[y] as usize;
        }
        y == e
    })
}

/// Candidate images for a generator of order `k`: scalars first (in the order
/// of [`scalar_units`]), then the remaining maps in enumeration order.
fn build_candidates(t: &Tables, k: u64, mode: CandidateMode) -> Vec<Candidate> {
    let mut out = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let exponent = t.group.exponent();
    for u in scalar_units(exponent) {
        let images: Vec<usize> = t.gens.iter().map(|&e| t.scale(u, e)).collect();
        let table = t.full_table(&images);
        if has_order_dividing(t, &table, k) && seen.insert(images) {
            out.push(Candidate { table });
        }
    }
    let mut push = |images: &[usize]| {
        if seen.contains(images) {
            return;
        }
        let table = t.full_table(images);
        if has_order_dividing(t, &table, k) {
            out.push(Candidate { table });
        }
    };
    match mode {
        CandidateMode::Automorphisms => {
            let _ = autgroup::for_each_automorphism_index(t, &mut |imgs| {
                push(imgs);
                ControlFlow::Continue(())
            });
        }
        CandidateMode::Endomorphisms => {
            let lists: Vec<Vec<usize>> = t.factors.iter().map(|&d| t.torsion(d)).collect();
            let mut choice = vec![0usize; lists.len()];
            loop {
                let images: Vec<usize> = choice.iter().zip(&lists).map(|(&c, l)| l[c]).collect();
                push(&images);
                let mut i = lists.len();
                loop {
                    if i == 0 {
                        return out;
                    }
                    i -= 1;
                    choice[i] += 1;
                    if choice[i] < lists[i].len() {
                        break;
                    }
                    choice[i] = 0;
                }
            }
        }
    }
    out
}

/// Search state shared by all partitions: generators of `G` and their
/// candidate lists.
struct Search<'a> {
    g: &'a GroupTable,
    t: Tables,
    gens: Vec<usize>,
    cands: Vec<CandidateList>,
    identity: Vec<u16>,
}

/// Index of the chosen candidate per generator.
type Choice = Vec<usize>;

impl<'a> Search<'a> {
    fn new(oracle: &ActionOracle, g: &'a GroupTable, a: &FiniteAbelianGroup) -> Result<Self> {
        let t = Tables::new(a)?;
        let gens = g.generating_set();
        let cands = gens
            .iter()
            .map(|&x| oracle.candidates(&t, g.element_order(x) as u64))
            .collect();
        let identity = (0..t.n as u16).collect();
        Ok(Search {
            g,
            t,
            gens,
            cands,
            identity,
        })
    }

    /// Assignment of the subgroup generated by the first `choice.len()`
    /// generators, or `None` if the choice violates a relation.
    fn closure(&self, choice: &[usize]) -> Option<Vec<Option<Vec<u16>>>> {
        let n = self.g.order();
        let mut assign: Vec<Option<Vec<u16>>> = vec![None; n];
        assign[self.g.identity()] = Some(self.identity.clone());
        let mut queue = VecDeque::from([self.g.identity()]);
        while let Some(x) = queue.pop_front() {
            for (j, &c) in choice.iter().enumerate() {
                let phi = &self.cands[j][c].table;
                let y = self.g.mul(x, self.gens[j]);
                let px = assign[x].as_ref().expect("assigned");
                if let Some(py) = &assign[y] {
                    if self.t.gens.iter().any(|&e| px[phi[e] as usize] != py[e]) {
                        return None;
                    }
                    continue;
                }
                let composed: Vec<u16> = phi.iter().map(|&z| px[z as usize]).collect();
                assign[y] = Some(composed);
                queue.push_back(y);
            }
        }
        Some(assign)
    }

    fn norm_ok(&self, assign: &[Option<Vec<u16>>]) -> bool {
        self.t.gens.iter().all(|&e| {
            let mut acc = 0usize;
            for f in assign.iter().flatten() {
                acc = self.t.add(acc, f[e] as usize);
            }
            acc == 0
        })
    }

    /// Depth-first walk below a fixed first-generator choice.
    fn walk(&self, choice: &mut Choice, visit: &mut dyn FnMut(&Choice) -> ControlFlow<()>) -> ControlFlow<()> {
        let Some(assign) = self.closure(choice) else {
            return ControlFlow::Continue(());
        };
        if choice.len() == self.gens.len() {
            if self.norm_ok(&assign) {
                return visit(choice);
            }
            return ControlFlow::Continue(());
        }
        let level = choice.len();
        for c in 0..self.cands[level].len() {
            choice.push(c);
            let flow = self.walk(choice, visit);
            choice.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    fn partitions(&self) -> usize {
        self.cands.first().map_or(1, |c| c.len())
    }

    fn walk_partition(&self, p: usize, visit: &mut dyn FnMut(&Choice) -> ControlFlow<()>) {
        let mut choice = if self.gens.is_empty() { vec![] } else { vec![p] };
        let _ = self.walk(&mut choice, visit);
    }

    fn find(&self) -> Option<Choice> {
        (0..self.partitions()).into_par_iter().find_map_first(|p| {
            let mut found = None;
            self.walk_partition(p, &mut |c| {
                found = Some(c.clone());
                ControlFlow::Break(())
            });
            found
        })
    }

    fn enumerate(&self, max: usize) -> Result<Vec<Choice>> {
        let parts: Vec<Result<Vec<Choice>>> = (0..self.partitions())
            .into_par_iter()
            .map(|p| {
                let mut out = Vec::new();
                let mut over = false;
                self.walk_partition(p, &mut |c| {
                    out.push(c.clone());
                    if out.len() > max {
                        over = true;
                        return ControlFlow::Break(());
                    }
                    ControlFlow::Continue(())
                });
                if over {
                    Err(bound_error(max))
                } else {
                    Ok(out)
                }
            })
            .collect();
        let mut all = Vec::new();
        for part in parts {
            all.extend(part?);
            if all.len() > max {
                return Err(bound_error(max));
            }
        }
        Ok(all)
    }

    fn count(&self) -> Result<usize> {
        Ok((0..self.partitions())
            .into_par_iter()
            .map(|p| {
                let mut n = 0usize;
                self.walk_partition(p, &mut |_| {
                    n += 1;
                    ControlFlow::Continue(())
                });
                n
            })
            .sum())
    }

    fn to_action(&self, choice: &Choice) -> NormLikeAction {
        let assign = self.closure(choice).expect("choice was accepted");
        let assignment = assign
            .into_iter()
            .map(|f| {
                let f = f.expect("generators generate G");
                let images: Vec<usize> = self.t.gens.iter().map(|&e| f[e] as usize).collect();
                Endomorphism::from_indices(&self.t.group, &images)
            })
            .collect();
        NormLikeAction(LinearAction {
            g: self.g.clone(),
            a: self.t.group.clone(),
            assignment,
        })
    }
}

fn bound_error(max: usize) -> Error {
    Error::BoundExceeded {
        what: "number of actions",
        value: max as u128 + 1,
        limit: max as u128,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab(f: &[u64]) -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(f).unwrap()
    }

    fn cyclic_action(n: usize, a: &FiniteAbelianGroup, lit: &str) -> Result<LinearAction> {
        let g = GroupTable::cyclic(n).unwrap();
        let phi = Endomorphism::parse(a, lit).unwrap();
        LinearAction::from_generators(&g, a, &[(1, phi)])
    }

    #[test]
    fn sign_action_is_norm_like() {
        for f in [vec![5], vec![2, 4], vec![3, 3], vec![]] {
            let a = ab(&f);
            let act = cyclic_action(2, &a, "mul:-1").unwrap();
            assert!(act.norm_check_on_generators());
            assert!(act.clone().certify().is_ok());
        }
    }

    #[test]
    fn cyclic_three_examples() {
        let z7 = ab(&[7]);
        let act = cyclic_action(3, &z7, "mul:2").unwrap().certify().unwrap();
        assert_eq!(
            act.orbit(&z7.element(&[1]).unwrap()).unwrap(),
            z7.parse_elements("1,2,4").unwrap()
        );
        assert_eq!(act.trivial_orbit_elements(), vec![z7.identity()]);
        assert!(act.norm_check_full());

        let z9 = ab(&[9]);
        let bad = cyclic_action(3, &z9, "mul:4").unwrap();
        assert!(!bad.norm_check_on_generators());
        assert!(!bad.norm_check_full());
        assert_eq!(bad.norm_subgroup(), z9.parse_elements("0,3,6").unwrap());
        match bad.certify() {
            Err(Error::ActionViolation(v)) => assert_eq!(v.condition(), 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trivial_group_norm_subgroup_is_everything() {
        let z4 = ab(&[4]);
        let act = LinearAction::new(&GroupTable::cyclic(1).unwrap(), &z4, vec![Endomorphism::identity(&z4)]).unwrap();
        assert_eq!(act.norm_subgroup().len(), 4);
    }

    #[test]
    fn composition_and_identity_violations() {
        let z5 = ab(&[5]);
        let g = GroupTable::cyclic(2).unwrap();
        // x -> 2x does not square to the identity
        let assignment = vec![Endomorphism::identity(&z5), Endomorphism::scalar(&z5, 2)];
        match verify(&g, &z5, assignment) {
            Err(Error::ActionViolation(v)) => assert_eq!(v.condition(), 1),
            other => panic!("unexpected {other:?}"),
        }
        let assignment = vec![Endomorphism::scalar(&z5, 0), Endomorphism::scalar(&z5, 0)];
        match verify(&g, &z5, assignment) {
            Err(Error::ActionViolation(v)) => assert!(v.condition() <= 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            verify(&g, &z5, vec![Endomorphism::identity(&z5)]),
            Err(Error::AssignmentLength { .. })
        ));
    }

    #[test]
    fn small_enumerations() {
        let c3 = GroupTable::cyclic(3).unwrap();
        assert!(enumerate_actions(&c3, &ab(&[5])).unwrap().is_empty());
        assert!(enumerate_actions(&c3, &ab(&[2, 2, 2])).unwrap().is_empty());
        let acts = enumerate_actions(&c3, &ab(&[7])).unwrap();
        // x -> 2x and x -> 4x
        assert_eq!(acts.len(), 2);
        let c2 = GroupTable::cyclic(2).unwrap();
        for n in 1..=20 {
            assert!(find_action(&c2, &ab(&[n])).unwrap().is_some(), "n={n}");
        }
        let w = find_action(&c3, &ab(&[13])).unwrap().unwrap();
        assert_eq!(w.assignment()[1].to_string(), "[[3]]");
    }

    #[test]
    fn record_round_trip() {
        let act = find_action(&GroupTable::cyclic(3).unwrap(), &ab(&[13])).unwrap().unwrap();
        let rec = act.to_record();
        let json = serde_json::to_string(&rec).unwrap();
        let back: ActionRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.verify().unwrap(), act);
        let text: ActionRecord = serde_json::from_str(
            r#"{"group_spec":"cyclic:2","abelian_factors":[4],"assignment":["mul:1","mul:-1"]}"#,
        )
        .unwrap();
        assert!(text.verify().is_ok());
        let ill: ActionRecord = serde_json::from_str(
            r#"{"group_spec":"cyclic:1","abelian_factors":[2,4],"assignment":[[[0,0],[1,1]]]}"#,
        )
        .unwrap();
        match ill.verify() {
            Err(Error::ActionViolation(v)) => assert_eq!(v.condition(), 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn endomorphism_mode_agrees() {
        let opts = SearchOptions {
            mode: CandidateMode::Endomorphisms,
            ..SearchOptions::default()
        };
        let end = ActionOracle::new(opts);
        let aut = ActionOracle::default();
        for spec in ["cyclic:2", "cyclic:3", "cyclic:4", "product:cyclic:2+cyclic:2", "dihedral:3"] {
            let g = spec.parse::<GroupSpec>().unwrap().build().unwrap();
            for f in [vec![2], vec![3], vec![4], vec![2, 2], vec![7], vec![2, 4]] {
                let a = ab(&f);
                assert_eq!(
                    end.count(&g, &a).unwrap(),
                    aut.count(&g, &a).unwrap(),
                    "{spec} on {a}"
                );
            }
        }
    }

    #[test]
    fn bounds_are_enforced() {
        let g = GroupTable::cyclic(25).unwrap();
        assert!(matches!(
            enumerate_actions(&g, &ab(&[2])),
            Err(Error::BoundExceeded { .. })
        ));
        let g = GroupTable::cyclic(2).unwrap();
        assert!(matches!(
            enumerate_actions(&g, &ab(&[512])),
            Err(Error::BoundExceeded { .. })
        ));
    }
}
