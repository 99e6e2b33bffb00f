#![allow(dead_code)]

use normlike::FiniteAbelianGroup;

/// Every abelian group of order at most `max`, as invariant factors
/// `d1 | d2 | ...` with each `d > 1`, plus the trivial group.
pub fn abelian_groups(max: u64) -> Vec<FiniteAbelianGroup> {
    fn extend(prefix: &mut Vec<u64>, order: u64, max: u64, out: &mut Vec<Vec<u64>>) {
        out.push(prefix.clone());
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
    out.iter().map(|f| FiniteAbelianGroup::new(f).unwrap()).collect()
}

/// `Z/d1 x ... ` coordinates of every element, first coordinate most significant.
pub fn coords(f: &[u64]) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for &d in f {
        out = out
            .into_iter()
            .flat_map(|v| (0..d).map(move |i| [v.clone(), vec![i]].concat()))
            .collect();
    }
    out
}
