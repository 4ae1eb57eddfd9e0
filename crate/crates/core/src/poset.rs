//! Finite graded posets stored by their Hasse diagrams.

use std::collections::HashMap;
use std::hash::Hash;

/// Elements with a dimension each and the covering relation in both
/// directions. Element order is the order given at construction.
#[derive(Clone, Debug)]
pub struct Poset<T> {
    elems: Vec<T>,
    index: HashMap<T, usize>,
    dims: Vec<i32>,
    up: Vec<Vec<usize>>,
    down: Vec<Vec<usize>>,
}

impl<T: Clone + Eq + Hash> Poset<T> {
    /// `upper_covers(x)` lists candidate covers of `x`; candidates that are
    /// not elements are ignored.
    pub fn from_covers<F>(elems: Vec<T>, dims: Vec<i32>, mut upper_covers: F) -> Self
    where
        F: FnMut(&T) -> Vec<T>,
    {
        assert_eq!(elems.len(), dims.len());
        let index: HashMap<T, usize> = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        assert_eq!(index.len(), elems.len(), "duplicate poset elements");
        let mut up = vec![Vec::new(); elems.len()];
        let mut down = vec![Vec::new(); elems.len()];
        for (i, e) in elems.iter().enumerate() {
            for c in upper_covers(e) {
                if let Some(&j) = index.get(&c) {
                    up[i].push(j);
                    down[j].push(i);
                }
            }
        }
        for v in up.iter_mut().chain(down.iter_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        Poset { elems, index, dims, up, down }
    }

    /// Induced subposet on the kept elements; its covers are the covers of
    /// `self` between kept elements.
    pub fn restrict<F: Fn(&T) -> bool>(&self, keep: F) -> Poset<T> {
        let kept: Vec<usize> = (0..self.len()).filter(|&i| keep(&self.elems[i])).collect();
        let mut remap = vec![usize::MAX; self.len()];
        for (new, &old) in kept.iter().enumerate() {
            remap[old] = new;
        }
        let elems: Vec<T> = kept.iter().map(|&i| self.elems[i].clone()).collect();
        let dims = kept.iter().map(|&i| self.dims[i]).collect();
        let index = elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
        let mut up = vec![Vec::new(); kept.len()];
        let mut down = vec![Vec::new(); kept.len()];
        for (new, &old) in kept.iter().enumerate() {
            for &j in &self.up[old] {
                if remap[j] != usize::MAX {
                    up[new].push(remap[j]);
                    down[remap[j]].push(new);
                }
            }
        }
        for v in down.iter_mut() {
            v.sort_unstable();
        }
        Poset { elems, index, dims, up, down }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn elements(&self) -> &[T] {
        &self.elems
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elems[i]
    }

    pub fn index_of(&self, e: &T) -> Option<usize> {
        self.index.get(e).copied()
    }

    pub fn contains(&self, e: &T) -> bool {
        self.index.contains_key(e)
    }

    pub fn dim(&self, i: usize) -> i32 {
        self.dims[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.up[i]
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.down[i]
    }

    pub fn is_cover(&self, lower: &T, upper: &T) -> bool {
        match (self.index_of(lower), self.index_of(upper)) {
            (Some(a), Some(b)) => self.up[a].binary_search(&b).is_ok(),
            _ => false,
        }
    }

    /// All covering pairs `(lower, upper)` by index.
    pub fn hasse_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.up.iter().enumerate().flat_map(|(i, ups)| ups.iter().map(move |&j| (i, j)))
    }

    pub fn edge_count(&self) -> usize {
        self.up.iter().map(Vec::len).sum()
    }

    /// Number of elements of each dimension, keyed by dimension.
    pub fn census(&self) -> std::collections::BTreeMap<i32, usize> {
        let mut out = std::collections::BTreeMap::new();
        for &d in &self.dims {
            *out.entry(d).or_insert(0) += 1;
        }
        out
    }

    /// `Σ (-1)^dim` over all elements.
    pub fn euler_sum(&self) -> i64 {
        self.dims.iter().map(|&d| if d.rem_euclid(2) == 0 { 1 } else { -1 }).sum()
    }

    /// Every nonempty chain among the elements accepted by `keep`, each
    /// listed bottom to top. These are the simplices of the order complex.
    pub fn chains<F: Fn(usize) -> bool>(&self, keep: F) -> Vec<Vec<usize>> {
        let n = self.len();
        // above[i]: everything strictly above i, from the transitive closure
        // of the covers, filled top-down by dimension.
        let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.dims[i]));
        for &i in &order {
            let mut mark = vec![false; n];
            for &j in &self.up[i] {
                mark[j] = true;
                for &l in &above[j] {
                    mark[l] = true;
                }
            }
            above[i] = (0..n).filter(|&j| mark[j] && keep(j)).collect();
        }
        let mut out = Vec::new();
        let mut stack = Vec::new();
        for i in (0..n).filter(|&i| keep(i)) {
            stack.push(i);
            grow_chains(&above, &mut stack, &mut out);
            stack.pop();
        }
        out
    }
}

fn grow_chains(above: &[Vec<usize>], stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    out.push(stack.clone());
    let top = *stack.last().expect("nonempty chain");
    for &j in &above[top] {
        stack.push(j);
        grow_chains(above, stack, out);
        stack.pop();
    }
}
