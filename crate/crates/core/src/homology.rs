//! Integral simplicial homology by Smith normal form of sparse boundary
//! matrices.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::hash::Hash;

use serde::Serialize;

use crate::complexes::{enumerate_faces_knk, SizeCaps};
use crate::error::{input_err, internal_err, Error, Result};
use crate::poset::Poset;

/// Abstract simplicial complex on vertices `0..vertex_count`, simplices
/// stored as sorted vertex lists grouped by dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Downward closure of `facets`, refusing beyond `cap` simplices.
    pub fn from_facets(facets: &[Vec<usize>], cap: usize) -> Result<Self> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if f.len() > 40 {
                return Err(Error::SizeCap(format!("facet with {} vertices", f.len())));
            }
            let size = f.len();
            for mask in 1u64..(1 << size) {
                let s: Vec<usize> = (0..size).filter(|i| mask & (1 << i) != 0).map(|i| f[i]).collect();
                seen.insert(s);
                if seen.len() > cap {
                    return Err(Error::SizeCap(format!("more than {cap} simplices")));
                }
            }
        }
        Self::from_faces(seen.into_iter().collect())
    }

    /// From an explicit face list, which must be closed under taking faces.
    pub fn from_faces(faces: Vec<Vec<usize>>) -> Result<Self> {
        let mut simplices: Vec<Vec<Vec<usize>>> = Vec::new();
        let mut vertex_count = 0;
        for mut f in faces {
            f.sort_unstable();
            f.dedup();
            if f.is_empty() {
                continue;
            }
            vertex_count = vertex_count.max(f[f.len() - 1] + 1);
            let d = f.len() - 1;
            if simplices.len() <= d {
                simplices.resize(d + 1, Vec::new());
            }
            simplices[d].push(f);
        }
        for level in simplices.iter_mut() {
            level.sort();
            level.dedup();
        }
        let c = SimplicialComplex { vertex_count, simplices };
        for d in 1..c.simplices.len() {
            let below: BTreeSet<&Vec<usize>> = c.simplices[d - 1].iter().collect();
            for s in &c.simplices[d] {
                for drop in 0..s.len() {
                    let face: Vec<usize> =
                        s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                    if !below.contains(&face) {
                        return Err(input_err!("face list is not closed: {s:?} lacks {face:?}"));
                    }
                }
            }
        }
        Ok(c)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    /// `-1` when there are no simplices.
    pub fn dim(&self) -> i32 {
        self.simplices.len() as i32 - 1
    }

    pub fn simplices(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], Vec::as_slice)
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn simplex_count(&self) -> usize {
        self.simplices.iter().map(Vec::len).sum()
    }

    /// `Σ (-1)^d f_d`.
    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, s)| if d % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) })
            .sum()
    }

    /// `∂_d : C_d -> C_{d-1}` as sparse columns `(row, ±1)`, `d >= 1`.
    pub fn boundary(&self, d: usize) -> SparseMatrix {
        let rows = self.simplices(d - 1);
        let index: HashMap<&[usize], usize> = rows.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let cols = self
            .simplices(d)
            .iter()
            .map(|s| {
                let mut col: Vec<(usize, i64)> = (0..s.len())
                    .map(|drop| {
                        let face: Vec<usize> =
                            s.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
                        (index[face.as_slice()], if drop % 2 == 0 { 1 } else { -1 })
                    })
                    .collect();
                col.sort_unstable();
                col
            })
            .collect();
        SparseMatrix { rows: rows.len(), cols }
    }
}

/// Column-major sparse integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: Vec<Vec<(usize, i64)>>,
}

impl SparseMatrix {
    /// `self · other`, with overflow reported.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        if other.rows != self.cols.len() {
            return Err(input_err!("shape mismatch in sparse product"));
        }
        let cols = other
            .cols
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, i64> = BTreeMap::new();
                for &(k, b) in col {
                    for &(r, a) in &self.cols[k] {
                        let e = acc.entry(r).or_insert(0);
                        *e = a.checked_mul(b).and_then(|p| e.checked_add(p)).ok_or_else(overflow)?;
                    }
                }
                Ok(acc.into_iter().filter(|&(_, v)| v != 0).collect())
            })
            .collect::<Result<_>>()?;
        Ok(SparseMatrix { rows: self.rows, cols })
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    /// Nonzero invariant factors; their count is the rank.
    pub fn invariant_factors(&self) -> Result<Vec<i64>> {
        smith_invariants(self)
    }
}

fn overflow() -> Error {
    internal_err!("integer overflow during elimination")
}

/// Eliminate unit pivots sparsely, then finish the remainder densely.
fn smith_invariants(m: &SparseMatrix) -> Result<Vec<i64>> {
    let ncols = m.cols.len();
    // Row-major copy for row operations, plus row sets per column.
    let mut rows: Vec<BTreeMap<usize, i64>> = vec![BTreeMap::new(); m.rows];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); ncols];
    for (c, col) in m.cols.iter().enumerate() {
        for &(r, v) in col {
            if v != 0 {
                rows[r].insert(c, v);
                col_rows[c].insert(r);
            }
        }
    }
    let mut factors = Vec::new();
    let mut alive_col = vec![true; ncols];
    let mut progress = true;
    while progress {
        progress = false;
        for c in 0..ncols {
            if !alive_col[c] || col_rows[c].is_empty() {
                continue;
            }
            let pivot_row = col_rows[c]
                .iter()
                .copied()
                .filter(|&r| rows[r][&c].abs() == 1)
                .min_by_key(|&r| rows[r].len());
            let Some(p) = pivot_row else { continue };
            let pv = rows[p][&c];
            let prow: Vec<(usize, i64)> = rows[p].iter().map(|(&k, &v)| (k, v)).collect();
            let others: Vec<usize> = col_rows[c].iter().copied().filter(|&r| r != p).collect();
            for r in others {
                let f = rows[r][&c] * pv;
                for &(k, v) in &prow {
                    let old = rows[r].get(&k).copied().unwrap_or(0);
                    let new = f.checked_mul(v).and_then(|x| old.checked_sub(x)).ok_or_else(overflow)?;
                    if new == 0 {
                        rows[r].remove(&k);
                        col_rows[k].remove(&r);
                    } else {
                        rows[r].insert(k, new);
                        col_rows[k].insert(r);
                    }
                }
            }
            for &(k, _) in &prow {
                col_rows[k].remove(&p);
            }
            rows[p].clear();
            alive_col[c] = false;
            factors.push(1);
            progress = true;
        }
    }
    // Dense remainder.
    let live_rows: Vec<usize> = (0..m.rows).filter(|&r| !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..ncols).filter(|&c| alive_col[c] && !col_rows[c].is_empty()).collect();
    if !live_rows.is_empty() {
        let cpos: HashMap<usize, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut dense = vec![vec![0i64; live_cols.len()]; live_rows.len()];
        for (i, &r) in live_rows.iter().enumerate() {
            for (&c, &v) in &rows[r] {
                dense[i][cpos[&c]] = v;
            }
        }
        factors.extend(dense_smith(dense)?);
    }
    factors.sort_unstable();
    Ok(factors)
}

/// Diagonal of the Smith normal form of a dense integer matrix (nonzero
/// entries only), pivoting on the smallest nonzero absolute value.
pub fn dense_smith(mut a: Vec<Vec<i64>>) -> Result<Vec<i64>> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                if q != 0 {
                    for j in t..cols {
                        a[i][j] = q.checked_mul(a[t][j]).and_then(|x| a[i][j].checked_sub(x)).ok_or_else(overflow)?;
                    }
                }
                if a[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                if q != 0 {
                    for i in t..rows {
                        a[i][j] = q.checked_mul(a[i][t]).and_then(|x| a[i][j].checked_sub(x)).ok_or_else(overflow)?;
                    }
                }
                if a[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // Divisibility of the rest by the pivot.
                let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
                match bad {
                    None => break,
                    Some((i, _)) => {
                        for j in t..cols {
                            a[t][j] = a[t][j].checked_add(a[i][j]).ok_or_else(overflow)?;
                        }
                        continue;
                    }
                }
            }
            // Move the smallest remaining entry of row/column t to the pivot.
            let mut best = (t, t);
            for i in t..rows {
                if a[i][t] != 0 && a[i][t].abs() < a[best.0][best.1].abs() {
                    best = (i, t);
                }
            }
            for j in t..cols {
                if a[t][j] != 0 && a[t][j].abs() < a[best.0][best.1].abs() {
                    best = (t, j);
                }
            }
            a.swap(t, best.0);
            for row in a.iter_mut() {
                row.swap(t, best.1);
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub f_vector: Vec<usize>,
    /// `betti[q]` for `q = 0..=top`, where `top` is the complex dimension or
    /// the requested maximum degree.
    pub betti: Vec<usize>,
    /// Torsion coefficients (invariant factors > 1) of `H_q`.
    pub torsion: Vec<Vec<i64>>,
    /// `betti` with one subtracted in degree 0.
    pub reduced_betti: Vec<usize>,
    /// Only present when every degree was computed.
    pub euler_characteristic: Option<i64>,
    pub truncated: bool,
}

impl HomologyReport {
    /// Reduced homology vanishes, torsion included, in degrees `0..=q`.
    pub fn reduced_vanishes_through(&self, q: usize) -> bool {
        let top = self.betti.len() - 1;
        if q > top && self.truncated {
            return false;
        }
        (0..=q.min(top)).all(|d| self.reduced_betti[d] == 0 && self.torsion[d].is_empty())
    }
}

/// Integral homology in degrees `0..=max_degree` (all degrees when `None`).
pub fn homology(x: &SimplicialComplex, max_degree: Option<usize>) -> Result<HomologyReport> {
    if x.dim() < 0 {
        return Err(input_err!("empty complex"));
    }
    let top = x.dim() as usize;
    let last = max_degree.map_or(top, |m| m.min(top));
    // ∂_q for q = 1..=last+1
    let boundaries: Vec<SparseMatrix> = (1..=last + 1).map(|q| x.boundary(q)).collect();
    for w in boundaries.windows(2) {
        if !w[0].mul(&w[1])?.is_zero() {
            return Err(internal_err!("boundary of a boundary is nonzero"));
        }
    }
    let factors: Vec<Vec<i64>> =
        boundaries.iter().map(SparseMatrix::invariant_factors).collect::<Result<_>>()?;
    let rank = |q: usize| -> usize {
        if q == 0 || q > factors.len() {
            0
        } else {
            factors[q - 1].len()
        }
    };
    let mut betti = Vec::with_capacity(last + 1);
    let mut torsion = Vec::with_capacity(last + 1);
    for q in 0..=last {
        betti.push(x.simplices(q).len() - rank(q) - rank(q + 1));
        torsion.push(factors[q].iter().copied().filter(|&f| f > 1).collect());
    }
    let mut reduced_betti = betti.clone();
    reduced_betti[0] -= 1;
    let truncated = last < top;
    Ok(HomologyReport {
        f_vector: x.f_vector(),
        euler_characteristic: (!truncated).then(|| x.euler_characteristic()),
        betti,
        torsion,
        reduced_betti,
        truncated,
    })
}

/// Order complex of `p` restricted to elements accepted by `keep`: vertices
/// are element indices, simplices are chains.
pub fn order_complex<T, F>(p: &Poset<T>, keep: F, cap: usize) -> Result<SimplicialComplex>
where
    T: Clone + Eq + Hash,
    F: Fn(usize) -> bool,
{
    let chains = p.chains(keep);
    if chains.len() > cap {
        return Err(Error::SizeCap(format!("order complex has {} chains, cap {cap}", chains.len())));
    }
    SimplicialComplex::from_faces(chains)
}

/// Order complex of a cell poset with its empty cell removed.
pub fn cell_poset_homology<T>(p: &Poset<T>, cap: usize, max_degree: Option<usize>) -> Result<HomologyReport>
where
    T: Clone + Eq + Hash + fmt::Debug,
{
    let oc = order_complex(p, |i| p.dim(i) >= 0, cap)?;
    homology(&oc, max_degree)
}

/// `K(n,k)` as a simplicial complex on the indices of `build_vnk(n, k)`.
pub fn knk_complex(n: usize, k: usize, caps: SizeCaps) -> Result<SimplicialComplex> {
    let (_, faces) = enumerate_faces_knk(n, k, caps.vertices, caps.simplices)?;
    SimplicialComplex::from_faces(faces)
}

/// `K(n,k)` restricted to faces of at most `max_dim + 1` vertices.
pub fn knk_skeleton(n: usize, k: usize, max_dim: usize, caps: SizeCaps) -> Result<SimplicialComplex> {
    let (_, faces) = crate::complexes::enumerate_faces_knk_upto(n, k, max_dim + 1, caps.vertices, caps.simplices)?;
    SimplicialComplex::from_faces(faces)
}
