//! Finite groups given by Cayley tables.

use std::collections::VecDeque;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order for which associativity is verified (full triple loop).
pub const MAX_TABLE_ORDER: usize = 128;

/// A finite group as a Cayley table: `table[a * n + b]` is the index of `a*b`.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    n: usize,
    table: Vec<usize>,
    identity: usize,
    label: String,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupTable({}, order {})", self.label, self.n)
    }
}

impl GroupTable {
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("cyclic group of order 0".into()));
        }
        let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
        Ok(GroupTable {
            n,
            table,
            identity: 0,
            label: format!("cyclic:{n}"),
        })
    }

    /// Dihedral group of order `2n`; index `k + n*j` is `r^k s^j`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("dihedral group with n = 0".into()));
        }
        let order = 2 * n;
        let mut table = vec![0; order * order];
        for x in 0..order {
            let (a, i) = (x % n, x / n);
            for y in 0..order {
                let (b, j) = (y % n, y / n);
                let rot = if i == 0 { (a + b) % n } else { (a + n - b) % n };
                table[x * order + y] = rot + n * ((i + j) % 2);
            }
        }
        Ok(GroupTable {
            n: order,
            table,
            identity: 0,
            label: format!("dihedral:{n}"),
        })
    }

    /// Dicyclic group of order `4n`: `<a, x | a^2n = 1, x^2 = a^n, x a x^-1 = a^-1>`.
    /// `dicyclic(2)` is the quaternion group. Index `k + 2n*j` is `a^k x^j`.
    pub fn dicyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidTable("dicyclic group with n = 0".into()));
        }
        let m = 2 * n;
        let order = 2 * m;
        let mut table = vec![0; order * order];
        for x in 0..order {
            let (k, i) = (x % m, x / m);
            for y in 0..order {
                let (l, j) = (y % m, y / m);
                let idx = match (i, j) {
                    (0, _) => (k + l) % m + m * j,
                    (1, 0) => (k + m - l) % m + m,
                    // a^k x a^l x = a^(k-l) x^2 = a^(k-l+n)
                    _ => (k + m - l + n) % m,
                };
                table[x * order + y] = idx;
            }
        }
        Ok(GroupTable {
            n: order,
            table,
            identity: 0,
            label: format!("dicyclic:{n}"),
        })
    }

    /// Direct product; index `(a, b)` is `a * |h| + b`.
    pub fn product(g: &GroupTable, h: &GroupTable) -> GroupTable {
        let (n1, n2) = (g.n, h.n);
        let n = n1 * n2;
        let mut table = vec![0; n * n];
        for x in 0..n {
            for y in 0..n {
                let a = g.mul(x / n2, y / n2);
                let b = h.mul(x % n2, y % n2);
                table[x * n + y] = a * n2 + b;
            }
        }
        let label = match (g.label.strip_prefix("product:"), h.label.strip_prefix("product:")) {
            (Some(l), _) => format!("product:{l}+{}", h.label),
            _ => format!("product:{}+{}", g.label, h.label),
        };
        GroupTable {
            n,
            table,
            identity: g.identity * n2 + h.identity,
            label,
        }
    }

    /// Validates rows of a Cayley table: Latin square, identity, associativity.
    pub fn from_table(rows: &[Vec<usize>], label: impl Into<String>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > MAX_TABLE_ORDER {
            return Err(Error::BoundExceeded {
                what: "table order",
                value: n as u128,
                limit: MAX_TABLE_ORDER as u128,
            });
        }
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!(
                    "row {r} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if let Some(c) = row.iter().position(|&v| v >= n) {
                return Err(Error::InvalidTable(format!(
                    "cell ({r},{c}) = {} is out of range",
                    row[c]
                )));
            }
        }
        for r in 0..n {
            let mut seen = vec![false; n];
            for c in 0..n {
                if std::mem::replace(&mut seen[rows[r][c]], true) {
                    return Err(Error::InvalidTable(format!(
                        "not a Latin square: value {} repeats in row {r} at cell ({r},{c})",
                        rows[r][c]
                    )));
                }
            }
        }
        for c in 0..n {
            let mut seen = vec![false; n];
            for r in 0..n {
                if std::mem::replace(&mut seen[rows[r][c]], true) {
                    return Err(Error::InvalidTable(format!(
                        "not a Latin square: value {} repeats in column {c} at cell ({r},{c})",
                        rows[r][c]
                    )));
                }
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| rows[e][x] == x && rows[x][e] == x))
            .ok_or_else(|| Error::InvalidTable("no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                let ab = rows[a][b];
                for c in 0..n {
                    if rows[ab][c] != rows[a][rows[b][c]] {
                        return Err(Error::InvalidTable(format!(
                            "not associative: ({a}*{b})*{c} != {a}*({b}*{c})"
                        )));
                    }
                }
            }
        }
        Ok(GroupTable {
            n,
            table: rows.iter().flatten().copied().collect(),
            identity,
            label: label.into(),
        })
    }

    /// Trusted constructor for tables built from a known group law.
    pub(crate) fn from_parts(n: usize, table: Vec<usize>, identity: usize, label: String) -> Self {
        debug_assert_eq!(table.len(), n * n);
        GroupTable {
            n,
            table,
            identity,
            label,
        }
    }

    /// Reads a JSON array-of-arrays Cayley table.
    pub fn from_json_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let rows: Vec<Vec<usize>> = serde_json::from_str(&text)?;
        Self::from_table(&rows, format!("table:{}", path.display()))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.n + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.n)
            .find(|&b| self.mul(a, b) == self.identity)
            .expect("every element of a group table has an inverse")
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(<[usize]>::to_vec).collect()
    }

    /// Least `k >= 1` with `x^k = e`.
    pub fn element_order(&self, x: usize) -> usize {
        let mut k = 1;
        let mut y = x;
        while y != self.identity {
            y = self.mul(y, x);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Subgroup generated by `gens`, as a sorted index list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut member = vec![false; self.n];
        member[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.n).filter(|&i| member[i]).collect()
    }

    /// Greedy generating set: scan indices, keep any element outside the span
    /// of the ones kept so far.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.n];
        span[self.identity] = true;
        for x in 0..self.n {
            if !span[x] {
                gens.push(x);
                for y in self.closure(&gens) {
                    span[y] = true;
                }
            }
        }
        gens
    }

    /// Extends generator images to a homomorphism into `target`, if consistent.
    pub(crate) fn extend_hom(
        &self,
        gens: &[usize],
        images: &[usize],
        target: &GroupTable,
    ) -> Option<Vec<usize>> {
        let mut map = vec![usize::MAX; self.n];
        map[self.identity] = target.identity;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for (&g, &img) in gens.iter().zip(images) {
                let y = self.mul(x, g);
                let v = target.mul(map[x], img);
                if map[y] == usize::MAX {
                    map[y] = v;
                    queue.push_back(y);
                } else if map[y] != v {
                    return None;
                }
            }
        }
        Some(map)
    }
}

/// A homomorphism found by [`enumerate_homs`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Homomorphism {
    pub images: Vec<usize>,
    pub kernel_size: usize,
    pub image_size: usize,
}

/// All homomorphisms `g -> target`, without duplicates.
///
/// Images are chosen only for a greedy generating set of `g`, each among the
/// target elements whose order divides the generator's order; the relations
/// are then verified while extending along the Cayley table.
pub fn enumerate_homs(g: &GroupTable, target: &GroupTable) -> Vec<Homomorphism> {
    let gens = g.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&x| {
            let k = g.element_order(x);
            (0..target.order())
                .filter(|&y| k % target.element_order(y) == 0)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut choice = vec![0; gens.len()];
    loop {
        let images: Vec<usize> = choice.iter().zip(&candidates).map(|(&c, l)| l[c]).collect();
        if let Some(map) = g.extend_hom(&gens, &images, target) {
            let kernel_size = map.iter().filter(|&&y| y == target.identity()).count();
            let mut seen = vec![false; target.order()];
            for &y in &map {
                seen[y] = true;
            }
            out.push(Homomorphism {
                image_size: seen.iter().filter(|&&s| s).count(),
                kernel_size,
                images: map,
            });
        }
        // odometer over candidate choices
        let mut i = gens.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < candidates[i].len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Textual group specification.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Dicyclic(usize),
    Product(Vec<GroupSpec>),
    Table(PathBuf),
}

impl GroupSpec {
    pub fn build(&self) -> Result<GroupTable> {
        match self {
            GroupSpec::Cyclic(n) => GroupTable::cyclic(*n),
            GroupSpec::Dihedral(n) => GroupTable::dihedral(*n),
            GroupSpec::Dicyclic(n) => GroupTable::dicyclic(*n),
            GroupSpec::Product(parts) => {
                let mut acc: Option<GroupTable> = None;
                for part in parts {
                    let t = part.build()?;
                    acc = Some(match acc {
                        None => t,
                        Some(a) => GroupTable::product(&a, &t),
                    });
                }
                let mut g = acc.ok_or_else(|| Error::Parse("empty product".into()))?;
                g.label = self.to_string();
                Ok(g)
            }
            GroupSpec::Table(path) => GroupTable::from_json_file(path),
        }
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let parse_n = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad group order {t:?} in {s:?}")))
        };
        if s == "quaternion" {
            return Ok(GroupSpec::Dicyclic(2));
        }
        let (kind, rest) = s
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("group spec {s:?} has no ':'")))?;
        match kind {
            "cyclic" => Ok(GroupSpec::Cyclic(parse_n(rest)?)),
            "dihedral" => Ok(GroupSpec::Dihedral(parse_n(rest)?)),
            "dicyclic" => Ok(GroupSpec::Dicyclic(parse_n(rest)?)),
            "product" => {
                let parts = rest
                    .split('+')
                    .map(str::parse)
                    .collect::<Result<Vec<GroupSpec>>>()?;
                if parts.len() < 2 {
                    return Err(Error::Parse(format!("product needs two factors: {s:?}")));
                }
                Ok(GroupSpec::Product(parts))
            }
            "table" => Ok(GroupSpec::Table(PathBuf::from(rest))),
            _ => Err(Error::Parse(format!("unknown group family {kind:?}"))),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic:{n}"),
            GroupSpec::Product(parts) => {
                let parts: Vec<String> = parts.iter().map(ToString::to_string).collect();
                write!(f, "product:{}", parts.join("+"))
            }
            GroupSpec::Table(p) => write!(f, "table:{}", p.display()),
        }
    }
}

impl Serialize for GroupSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for GroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// One representative of every isomorphism type of order at most 8.
pub fn small_groups() -> Vec<GroupSpec> {
    use GroupSpec::*;
    vec![
        Cyclic(1),
        Cyclic(2),
        Cyclic(3),
        Cyclic(4),
        Product(vec![Cyclic(2), Cyclic(2)]),
        Cyclic(5),
        Cyclic(6),
        Dihedral(3),
        Cyclic(7),
        Cyclic(8),
        Product(vec![Cyclic(2), Cyclic(4)]),
        Product(vec![Cyclic(2), Cyclic(2), Cyclic(2)]),
        Dihedral(4),
        Dicyclic(2),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_group_axioms(g: &GroupTable) {
        let rows = g.rows();
        let rebuilt = GroupTable::from_table(&rows, "check").unwrap();
        assert_eq!(rebuilt.identity(), g.identity());
    }

    #[test]
    fn named_constructors_are_groups() {
        for spec in small_groups() {
            let g = spec.build().unwrap();
            check_group_axioms(&g);
        }
        for n in 1..7 {
            check_group_axioms(&GroupTable::dihedral(n).unwrap());
            check_group_axioms(&GroupTable::dicyclic(n).unwrap());
        }
    }

    #[test]
    fn orders_and_products() {
        assert_eq!(GroupTable::cyclic(3).unwrap().order(), 3);
        let c15: GroupSpec = "product:cyclic:3+cyclic:5".parse().unwrap();
        let g = c15.build().unwrap();
        assert_eq!(g.order(), 15);
        assert!(g.is_abelian());
        assert_eq!(g.label(), "product:cyclic:3+cyclic:5");
        assert!(!GroupTable::dihedral(3).unwrap().is_abelian());
        assert!(!GroupTable::dicyclic(2).unwrap().is_abelian());
    }

    #[test]
    fn element_orders() {
        let c6 = GroupTable::cyclic(6).unwrap();
        assert_eq!(c6.element_order(c6.identity()), 1);
        assert_eq!(c6.element_order(1), 6);
        let d4 = GroupTable::dihedral(4).unwrap();
        // index 4 is the reflection s
        assert_eq!(d4.element_order(4), 2);
        let mut y = 4;
        let mut k = 1;
        while y != d4.identity() {
            y = d4.mul(y, 4);
            k += 1;
        }
        assert_eq!(k, 2);
        let q8 = GroupTable::dicyclic(2).unwrap();
        let involutions = (0..8).filter(|&x| q8.element_order(x) == 2).count();
        assert_eq!(involutions, 1);
    }

    #[test]
    fn rejects_bad_tables() {
        let not_latin = vec![vec![0, 1], vec![0, 1]];
        let err = GroupTable::from_table(&not_latin, "x").unwrap_err();
        assert!(err.to_string().contains("Latin"), "{err}");
        // Latin square without associativity: a loop of order 5.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = GroupTable::from_table(&rows, "loop").unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
        assert!(GroupTable::from_table(&[vec![0, 5]], "x").is_err());
        assert!(GroupTable::cyclic(0).is_err());
    }

    #[test]
    fn spec_round_trip() {
        for s in ["cyclic:4", "dihedral:3", "dicyclic:2", "product:cyclic:2+cyclic:2+cyclic:2"] {
            let spec: GroupSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
        }
        assert_eq!("quaternion".parse::<GroupSpec>().unwrap(), GroupSpec::Dicyclic(2));
        assert!("cyclic".parse::<GroupSpec>().is_err());
        assert!("torus:3".parse::<GroupSpec>().is_err());
        assert!("product:cyclic:3".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn hom_counts() {
        let c3 = GroupTable::cyclic(3).unwrap();
        let c12 = GroupTable::cyclic(12).unwrap();
        assert_eq!(enumerate_homs(&c3, &c12).len(), 3);
        let c2 = GroupTable::cyclic(2).unwrap();
        let c4 = GroupTable::cyclic(4).unwrap();
        assert_eq!(enumerate_homs(&c2, &c4).len(), 2);
        let trivial = GroupTable::cyclic(1).unwrap();
        let d4 = GroupTable::dihedral(4).unwrap();
        assert_eq!(enumerate_homs(&d4, &trivial).len(), 1);
        for h in enumerate_homs(&d4, &c4) {
            assert_eq!(h.kernel_size * h.image_size, d4.order());
        }
    }

    #[test]
    fn generating_sets_generate() {
        for spec in small_groups() {
            let g = spec.build().unwrap();
            assert_eq!(g.closure(&g.generating_set()).len(), g.order());
        }
    }
}
