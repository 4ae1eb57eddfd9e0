//! Discrete Morse matchings on graded posets: element matchings, patchwork
//! composition along order-preserving maps, the recursive matching on
//! `C(n,k)`, and the acyclicity check.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::complexes::{build_cnk, CellPoset, PartialSurjection};
use crate::error::{input_err, internal_err, Result};
use crate::poset::Poset;

/// Disjoint covering pairs `(lower, upper)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching<T> {
    pub pairs: Vec<(T, T)>,
}

impl<T> Default for Matching<T> {
    fn default() -> Self {
        Matching { pairs: Vec::new() }
    }
}

impl<T: Clone + Eq + Hash> Matching<T> {
    pub fn new(pairs: Vec<(T, T)>) -> Self {
        Matching { pairs }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Error unless every pair is a cover of `p` and no element repeats.
    pub fn validate(&self, p: &Poset<T>) -> Result<()>
    where
        T: fmt::Debug,
    {
        let mut seen = HashSet::new();
        for (a, b) in &self.pairs {
            if !p.is_cover(a, b) {
                return Err(input_err!("{a:?} ⋖ {b:?} is not a cover"));
            }
            if !seen.insert(a) || !seen.insert(b) {
                return Err(input_err!("matching uses an element twice near {a:?}"));
            }
        }
        Ok(())
    }
}

/// Subset of `[n]` as a bitmask (bit `i` = element `i + 1`).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SetMask(pub u64);

impl fmt::Display for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> =
            (0..64).filter(|i| self.0 & (1 << i) != 0).map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", items.join(","))
    }
}

impl fmt::Debug for SetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A family of subsets ordered by inclusion, graded by `|σ| - 1`.
pub fn set_family_poset(sets: &[u64]) -> Poset<SetMask> {
    let mut elems: Vec<SetMask> = sets.iter().copied().map(SetMask).collect();
    elems.sort_by_key(|s| (s.0.count_ones(), s.0));
    elems.dedup();
    let dims = elems.iter().map(|s| s.0.count_ones() as i32 - 1).collect();
    Poset::from_covers(elems, dims, |s| {
        (0..64).filter(|i| s.0 & (1 << i) == 0).map(|i| SetMask(s.0 | (1 << i))).collect()
    })
}

/// All subsets of `[n]`.
pub fn power_set(n: usize) -> Vec<u64> {
    (0..1u64 << n).collect()
}

/// `{(σ - x, σ + x)}` over all `σ` with both in the family; `x` is 1-based.
pub fn element_matching(p: &Poset<SetMask>, x: usize) -> Result<Matching<SetMask>> {
    if x == 0 || x > 64 {
        return Err(input_err!("element {x} outside [1, 64]"));
    }
    let bit = 1u64 << (x - 1);
    let pairs = p
        .elements()
        .iter()
        .filter(|s| s.0 & bit == 0 && p.contains(&SetMask(s.0 | bit)))
        .map(|s| (*s, SetMask(s.0 | bit)))
        .collect();
    let m = Matching::new(pairs);
    require_acyclic(p, &m)?;
    Ok(m)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalCell {
    pub cell: String,
    pub dim: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MorseReport {
    pub elements: usize,
    pub pairs: usize,
    pub acyclic: bool,
    /// A directed cycle when the matching is not acyclic.
    pub cycle: Option<Vec<String>>,
    pub critical: Vec<CriticalCell>,
    pub critical_by_dim: BTreeMap<i32, usize>,
    /// `Σ (-1)^dim` over critical cells.
    pub euler_critical: i64,
    /// `Σ (-1)^dim` over all elements, empty cell included.
    pub euler_all: i64,
    pub audit_balanced: bool,
}

/// Orient matched covers upward and the rest downward, then look for a
/// directed cycle.
pub fn verify_acyclic<T>(p: &Poset<T>, m: &Matching<T>) -> Result<MorseReport>
where
    T: Clone + Eq + Hash + fmt::Debug + fmt::Display,
{
    m.validate(p)?;
    let n = p.len();
    let mut partner = vec![usize::MAX; n];
    for (a, b) in &m.pairs {
        let (i, j) = (p.index_of(a).expect("validated"), p.index_of(b).expect("validated"));
        partner[i] = j;
        partner[j] = i;
    }
    // Out-neighbours: from x, go up to a matched partner, or down to any
    // lower cover that is not x's matched partner.
    let succ = |x: usize| -> Vec<usize> {
        let mut out = Vec::new();
        if partner[x] != usize::MAX && p.upper_covers(x).binary_search(&partner[x]).is_ok() {
            out.push(partner[x]);
        }
        for &y in p.lower_covers(x) {
            if partner[x] != y {
                out.push(y);
            }
        }
        out
    };
    let cycle = find_cycle(n, succ).map(|c| c.iter().map(|&i| p.element(i).to_string()).collect());

    let mut critical = Vec::new();
    let mut critical_by_dim = BTreeMap::new();
    let mut euler_critical = 0;
    for i in (0..n).filter(|&i| partner[i] == usize::MAX) {
        let dim = p.dim(i);
        critical.push(CriticalCell { cell: p.element(i).to_string(), dim });
        *critical_by_dim.entry(dim).or_insert(0) += 1;
        euler_critical += if dim.rem_euclid(2) == 0 { 1 } else { -1 };
    }
    let euler_all = p.euler_sum();
    Ok(MorseReport {
        elements: n,
        pairs: m.len(),
        acyclic: cycle.is_none(),
        cycle,
        critical,
        critical_by_dim,
        euler_critical,
        euler_all,
        audit_balanced: euler_critical == euler_all,
    })
}

fn require_acyclic<T>(p: &Poset<T>, m: &Matching<T>) -> Result<MorseReport>
where
    T: Clone + Eq + Hash + fmt::Debug + fmt::Display,
{
    let r = verify_acyclic(p, m)?;
    match &r.cycle {
        None => Ok(r),
        Some(c) => Err(internal_err!("matching has a directed cycle through {}", c.join(" -> "))),
    }
}

/// Iterative three-colour DFS; returns the vertices of one cycle.
fn find_cycle<F: Fn(usize) -> Vec<usize>>(n: usize, succ: F) -> Option<Vec<usize>> {
    const WHITE: u8 = 0;
    const GREY: u8 = 1;
    const BLACK: u8 = 2;
    let mut colour = vec![WHITE; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if colour[root] != WHITE {
            continue;
        }
        colour[root] = GREY;
        let mut stack = vec![(root, succ(root), 0usize)];
        while let Some((v, next, pos)) = stack.last_mut() {
            if *pos == next.len() {
                colour[*v] = BLACK;
                stack.pop();
                continue;
            }
            let w = next[*pos];
            *pos += 1;
            let v = *v;
            match colour[w] {
                WHITE => {
                    colour[w] = GREY;
                    parent[w] = v;
                    stack.push((w, succ(w), 0));
                }
                GREY => {
                    let mut cycle = vec![w];
                    let mut x = v;
                    while x != w {
                        cycle.push(x);
                        x = parent[x];
                    }
                    cycle.reverse();
                    cycle.rotate_right(1);
                    return Some(cycle);
                }
                _ => {}
            }
        }
    }
    None
}

/// Union of per-fiber matchings along an order-preserving `h: P -> Q`.
///
/// Checks that `h` preserves order on every cover of `p`, that each part
/// lives in its own fiber, that no fiber is given twice, and that the union
/// is acyclic.
pub fn patchwork_compose<T, Q, H, L>(
    p: &Poset<T>,
    h: H,
    q_leq: L,
    parts: Vec<(Q, Matching<T>)>,
) -> Result<Matching<T>>
where
    T: Clone + Eq + Hash + fmt::Debug + fmt::Display,
    Q: Clone + Eq + Hash + fmt::Debug,
    H: Fn(&T) -> Q,
    L: Fn(&Q, &Q) -> bool,
{
    let images: Vec<Q> = p.elements().iter().map(&h).collect();
    for (a, b) in p.hasse_edges() {
        if !q_leq(&images[a], &images[b]) {
            return Err(input_err!(
                "map is not order-preserving on {} ⋖ {}",
                p.element(a),
                p.element(b)
            ));
        }
    }
    let mut fibers = HashSet::new();
    let mut pairs = Vec::new();
    for (q, m) in parts {
        if !fibers.insert(q.clone()) {
            return Err(input_err!("fiber {q:?} given twice"));
        }
        for (a, b) in m.pairs {
            let (ia, ib) = match (p.index_of(&a), p.index_of(&b)) {
                (Some(x), Some(y)) => (x, y),
                _ => return Err(input_err!("pair ({a}, {b}) is outside the poset")),
            };
            if images[ia] != q || images[ib] != q {
                return Err(input_err!("pair ({a}, {b}) leaves fiber {q:?}"));
            }
            pairs.push((a, b));
        }
    }
    let m = Matching::new(pairs);
    require_acyclic(p, &m)?;
    Ok(m)
}

fn with_value_cleared(eta: &PartialSurjection, j: u8) -> Vec<u8> {
    eta.values().iter().map(|&v| if v == j { 0 } else { v }).collect()
}

fn extends(lower: &[u8], upper: &[u8]) -> bool {
    lower.iter().zip(upper).all(|(&a, &b)| a == 0 || a == b)
}

fn set_value(eta: &PartialSurjection, x: usize, v: u8) -> PartialSurjection {
    let mut vals = eta.values().to_vec();
    vals[x] = v;
    PartialSurjection::new(eta.k(), vals).expect("extension of a cell")
}

/// The recursive acyclic matching on `C(n,k)` whose critical cells are full
/// ordered partitions of `[n]`.
pub fn lemma8_matching(n: usize, k: usize) -> Result<(CellPoset, Matching<PartialSurjection>, MorseReport)> {
    if k == 0 || n <= k {
        return Err(input_err!("need n > k >= 1, got n = {n}, k = {k}"));
    }
    if n > 12 {
        return Err(input_err!("n = {n} is beyond desk scale"));
    }
    let c = build_cnk(n, k)?;
    let m = match_cnk(&c, n, k)?;
    let report = verify_acyclic(&c, &m)?;
    Ok((c, m, report))
}

fn match_cnk(c: &CellPoset, n: usize, k: usize) -> Result<Matching<PartialSurjection>> {
    let last = n - 1;
    if k == 1 {
        // C(n,1) is the power set of [n]; match on the element n.
        let pairs = c
            .elements()
            .iter()
            .filter(|eta| eta.values()[last] == 0)
            .map(|eta| (eta.clone(), set_value(eta, last, 1)))
            .collect();
        let m = Matching::new(pairs);
        require_acyclic(c, &m)?;
        return Ok(m);
    }
    let ku = k as u8;
    // h_1: a_i when n ∈ X_i for i < k, a_k otherwise; a_k lies below the rest.
    let h1 = |eta: &PartialSurjection| -> u8 {
        match eta.values()[last] {
            v if v != 0 && v < ku => v,
            _ => ku,
        }
    };
    let mut parts = Vec::with_capacity(k);
    for i in 1..ku {
        let a_i = c.restrict(|eta| h1(eta) == i);
        let mut fibers: HashMap<Vec<u8>, Vec<(PartialSurjection, PartialSurjection)>> = HashMap::new();
        for eta in a_i.elements() {
            // Y_i: elements of [n-1] outside the other blocks.
            let y_max = (0..last).rev().find(|&x| eta.values()[x] == 0 || eta.values()[x] == i);
            if let Some(x) = y_max {
                if eta.values()[x] == 0 {
                    fibers
                        .entry(with_value_cleared(eta, i))
                        .or_default()
                        .push((eta.clone(), set_value(eta, x, i)));
                }
            }
        }
        let fiber_parts = sorted_parts(fibers);
        let m_i = patchwork_compose(
            &a_i,
            |eta| with_value_cleared(eta, i),
            |a, b| extends(a, b),
            fiber_parts,
        )?;
        parts.push((i, m_i));
    }

    let a_k = c.restrict(|eta| h1(eta) == ku);
    // h_2: `false` (= a) when X_k = {n} or the cell is empty; a lies below b.
    let h2 = |eta: &PartialSurjection| -> bool {
        !(eta.is_empty_cell() || eta.block_mask(k) == 1 << last)
    };

    let sub = build_cnk(n - 1, k - 1)?;
    let sub_matching = match_cnk(&sub, n - 1, k - 1)?;
    let embed = |eta: &PartialSurjection| -> PartialSurjection {
        if eta.is_empty_cell() {
            PartialSurjection::empty(n, k)
        } else {
            let mut vals = eta.values().to_vec();
            vals.push(ku);
            PartialSurjection::new(k, vals).expect("adding the block {n}")
        }
    };
    let m_a = Matching::new(sub_matching.pairs.iter().map(|(x, y)| (embed(x), embed(y))).collect());

    let b = a_k.restrict(|eta| h2(eta));
    let mut fibers: HashMap<Vec<u8>, Vec<(PartialSurjection, PartialSurjection)>> = HashMap::new();
    for eta in b.elements().iter().filter(|eta| eta.values()[last] == 0) {
        fibers
            .entry(with_value_cleared(eta, ku))
            .or_default()
            .push((eta.clone(), set_value(eta, last, ku)));
    }
    let m_b = patchwork_compose(
        &b,
        |eta| with_value_cleared(eta, ku),
        |a, b| extends(a, b),
        sorted_parts(fibers),
    )?;
    let m_k = patchwork_compose(&a_k, h2, |a, b| a <= b, vec![(false, m_a), (true, m_b)])?;
    parts.push((ku, m_k));

    patchwork_compose(c, h1, |a, b| a == b || *a == ku, parts)
}

fn sorted_parts<T: Clone + Eq + Hash>(
    fibers: HashMap<Vec<u8>, Vec<(T, T)>>,
) -> Vec<(Vec<u8>, Matching<T>)> {
    let mut parts: Vec<_> = fibers.into_iter().map(|(q, p)| (q, Matching::new(p))).collect();
    parts.sort_by(|a, b| a.0.cmp(&b.0));
    parts
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::binomial;

    #[test]
    fn element_matching_power_set() {
        let p = set_family_poset(&power_set(2));
        let m = element_matching(&p, 2).unwrap();
        assert_eq!(m.pairs, vec![(SetMask(0), SetMask(2)), (SetMask(1), SetMask(3))]);
        let r = verify_acyclic(&p, &m).unwrap();
        assert!(r.acyclic && r.critical.is_empty());
    }

    #[test]
    fn element_matching_without_empty_set() {
        let p = set_family_poset(&[1]);
        let m = element_matching(&p, 1).unwrap();
        assert!(m.is_empty());
        let r = verify_acyclic(&p, &m).unwrap();
        assert_eq!(r.critical, vec![CriticalCell { cell: "{1}".into(), dim: 0 }]);
    }

    #[test]
    fn invalid_matchings_rejected() {
        let p = set_family_poset(&power_set(2));
        let m = Matching::new(vec![(SetMask(0), SetMask(3))]);
        assert!(verify_acyclic(&p, &m).is_err());
        let m = Matching::new(vec![(SetMask(0), SetMask(1)), (SetMask(0), SetMask(2))]);
        assert!(verify_acyclic(&p, &m).is_err());
    }

    #[test]
    fn single_point_patchwork_is_identity() {
        let p = set_family_poset(&power_set(3));
        let m = element_matching(&p, 3).unwrap();
        let out = patchwork_compose(&p, |_| (), |_, _| true, vec![((), m.clone())]).unwrap();
        assert_eq!(out, m);
    }

    #[test]
    fn patchwork_rejects_bad_input() {
        let p = set_family_poset(&power_set(2));
        // Cardinality reversed is not order-preserving.
        let bad = patchwork_compose(&p, |s| s.0.count_ones(), |a, b| a >= b, Vec::new());
        assert!(bad.is_err());
        let m = element_matching(&p, 2).unwrap();
        let leaves = patchwork_compose(&p, |s| s.0 & 2, |a, b| a <= b, vec![(0, m)]);
        assert!(leaves.is_err());
    }

    #[test]
    fn hexagon_rotation_is_cyclic() {
        let c = build_cnk(3, 2).unwrap();
        let vertices: Vec<usize> = (0..c.len()).filter(|&i| c.dim(i) == 0).collect();
        // Walk the hexagon, matching each vertex to the edge leaving it.
        let mut pairs = Vec::new();
        let (mut v, mut e) = (vertices[0], c.upper_covers(vertices[0])[0]);
        for _ in 0..6 {
            pairs.push((c.element(v).clone(), c.element(e).clone()));
            v = *c.lower_covers(e).iter().find(|&&w| w != v).unwrap();
            e = *c.upper_covers(v).iter().find(|&&f| f != e).unwrap();
        }
        let r = verify_acyclic(&c, &Matching::new(pairs)).unwrap();
        assert!(!r.acyclic);
        assert_eq!(r.cycle.unwrap().len(), 12);
    }

    #[test]
    fn lemma8_three_two() {
        let (c, m, r) = lemma8_matching(3, 2).unwrap();
        assert_eq!(c.len(), 13);
        assert_eq!(m.len(), 6);
        assert!(r.acyclic);
        assert_eq!(r.critical, vec![CriticalCell { cell: "(3|12)".into(), dim: 1 }]);
    }

    #[test]
    fn lemma8_four_two() {
        let (_, m, r) = lemma8_matching(4, 2).unwrap();
        assert_eq!(m.len(), 25);
        assert_eq!(r.critical_by_dim, BTreeMap::from([(2, 1)]));
        assert!(r.audit_balanced);
    }

    #[test]
    fn lemma8_k_one_is_complete() {
        for n in 2..=6 {
            let (c, m, r) = lemma8_matching(n, 1).unwrap();
            assert!(r.acyclic && r.critical.is_empty());
            assert_eq!(2 * m.len(), c.len());
        }
    }

    #[test]
    fn lemma8_critical_cells_are_full_partitions() {
        for n in 2..=6 {
            for k in 1..n.min(5) {
                let (c, _, r) = lemma8_matching(n, k).unwrap();
                assert!(r.acyclic, "({n},{k})");
                assert!(r.audit_balanced);
                let full = (n - k) as i32;
                assert!(r.critical.iter().all(|x| x.dim == full), "({n},{k}) {:?}", r.critical);
                assert_eq!(c.len() as u128, (0..=n).filter(|&s| s == 0 || s >= k).map(|s| {
                    if s == 0 { 1 } else { binomial(n, s) * crate::complexes::surjection_count(s, k) }
                }).sum::<u128>());
            }
        }
    }

    #[test]
    fn lemma8_rejects_bad_shape() {
        assert!(lemma8_matching(2, 2).is_err());
        assert!(lemma8_matching(3, 0).is_err());
    }
}
