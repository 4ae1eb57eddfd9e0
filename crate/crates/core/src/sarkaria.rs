//! Sarkaria's tensor lift into `Y ⊂ R^{(d+1)×k}`, equivariant separating
//! functionals for Tverberg-free families, and the check that facet images
//! avoid `B = e_{d+1} ⊗ R^k`.

use std::collections::HashMap;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::complexes::{build_vnk, facet_of, group_action, permutations, Surjection};
use crate::error::{input_err, internal_err, Error, Result};
use crate::geometry::{hulls_common_point, Point};
use crate::lp::{rank, solve_feasibility, FeasibilityResult};
use crate::rational::{format_rational, Rational, RationalMatrix};
use crate::tverberg::{find_tverberg, ColorSystem, Family, KPartition};

/// `v_i = e_i - (1/k)·1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisVector {
    /// 1-based.
    pub index: usize,
    pub entries: Vec<Rational>,
}

impl BasisVector {
    pub fn new(i: usize, k: usize) -> Result<Self> {
        if i == 0 || i > k {
            return Err(input_err!("basis index {i} outside [1, {k}]"));
        }
        let share = Rational::new(1.into(), k.into());
        let entries = (1..=k)
            .map(|c| if c == i { Rational::one() - &share } else { -share.clone() })
            .collect();
        Ok(BasisVector { index: i, entries })
    }
}

/// `⟨x,1⟩ ⊗ v_i` as a `(d+1)×k` matrix.
pub fn lift(x: &Point, i: usize, k: usize) -> Result<RationalMatrix> {
    let v = BasisVector::new(i, k)?;
    let mut entries = Vec::with_capacity((x.dim() + 1) * k);
    for r in x.coords().iter().chain(std::iter::once(&Rational::one())) {
        entries.extend(v.entries.iter().map(|c| r * c));
    }
    RationalMatrix::from_entries(x.dim() + 1, k, entries)
}

/// Every row sums to zero, i.e. the columns add up to the zero vector.
pub fn in_y(a: &RationalMatrix) -> bool {
    (0..a.rows()).all(|r| a.row(r).iter().sum::<Rational>().is_zero())
}

/// Orthogonal projection onto `Y`: subtract each row's mean.
pub fn project_to_y(a: &RationalMatrix) -> RationalMatrix {
    let k = Rational::from_integer(a.cols().into());
    let mut entries = Vec::with_capacity(a.entries().len());
    for r in 0..a.rows() {
        let mean = a.row(r).iter().sum::<Rational>() / &k;
        entries.extend(a.row(r).iter().map(|e| e - &mean));
    }
    RationalMatrix::from_entries(a.rows(), a.cols(), entries).expect("same shape")
}

/// Column `c` of `a` moves to column `g(c)`; this is `g·a`.
pub fn act_on_matrix(g: &[u8], a: &RationalMatrix) -> RationalMatrix {
    let target: Vec<usize> = g.iter().map(|&v| v as usize - 1).collect();
    a.permute_columns(&target)
}

/// Lifted vertices `L_{φ(i)}(v)` for every set `i`, ordered by block of the
/// partition, then set index, then canonical vertex.
fn lifted_columns(family: &Family, partition: &KPartition) -> Result<Vec<RationalMatrix>> {
    let k = partition.k();
    let mut out = Vec::new();
    for (j, block) in partition.blocks().iter().enumerate() {
        for &i in block {
            for v in family.sets()[i].canonical().vertices() {
                out.push(lift(v, j + 1, k)?);
            }
        }
    }
    Ok(out)
}

/// The LP `Σ λ_c L_c = 0, Σ λ_c = 1, λ >= 0` over lifted vertices.
fn zero_in_hull_lp(columns: &[RationalMatrix]) -> Result<FeasibilityResult> {
    let size = columns[0].entries().len();
    let mut rows = vec![Vec::with_capacity(columns.len()); size + 1];
    for col in columns {
        for (r, e) in col.entries().iter().enumerate() {
            rows[r].push(e.clone());
        }
        rows[size].push(Rational::one());
    }
    let mut b = vec![Rational::zero(); size];
    b.push(Rational::one());
    solve_feasibility(&RationalMatrix::from_rows(rows)?, &b)
}

/// Convex weights placing `0` in the hull of the lifted family, ordered as
/// block, set, canonical vertex.
pub fn sarkaria_zero_in_hull(family: &Family, partition: &KPartition) -> Result<Option<Vec<Rational>>> {
    if partition.n() != family.len() {
        return Err(input_err!("partition size {} != family size {}", partition.n(), family.len()));
    }
    let columns = lifted_columns(family, partition)?;
    Ok(zero_in_hull_lp(&columns)?.solution().map(<[Rational]>::to_vec))
}

/// A strictly separating functional `a_φ ∈ Y` for every surjection.
#[derive(Clone, Debug)]
pub struct SeparatorAssignment {
    pub k: usize,
    pub d: usize,
    /// All of `V(n,k)` in lexicographic order with their functionals.
    pub entries: Vec<(Surjection, RationalMatrix)>,
    /// Lexicographically minimal member of each orbit.
    pub representatives: Vec<Surjection>,
    index: HashMap<Surjection, usize>,
}

impl SeparatorAssignment {
    pub fn get(&self, phi: &Surjection) -> Option<&RationalMatrix> {
        self.index.get(phi).map(|&i| &self.entries[i].1)
    }
}

/// Orbit representative of `φ`: relabel values in order of first appearance.
pub fn orbit_representative(phi: &Surjection) -> Surjection {
    let mut relabel = vec![0u8; phi.k() + 1];
    let mut next = 1u8;
    let values = phi
        .values()
        .iter()
        .map(|&v| {
            if relabel[v as usize] == 0 {
                relabel[v as usize] = next;
                next += 1;
            }
            relabel[v as usize]
        })
        .collect();
    Surjection::new(phi.k(), values).expect("relabelled surjection")
}

fn separator_for(family: &Family, phi: &Surjection) -> Result<RationalMatrix> {
    let partition = KPartition::from_rgs(&phi.block_labels());
    let columns = lifted_columns(family, &partition)?;
    let y = match zero_in_hull_lp(&columns)? {
        FeasibilityResult::Infeasible(y) => y,
        FeasibilityResult::Feasible(_) => {
            return Err(Error::Precondition(format!("partition {partition} is Tverberg")))
        }
    };
    let (rows, cols) = (columns[0].rows(), columns[0].cols());
    let raw: Vec<Rational> = y[..rows * cols].iter().map(|v| -v).collect();
    Ok(project_to_y(&RationalMatrix::from_entries(rows, cols, raw)?))
}

/// Separating functionals for a Tverberg-free family, chosen once per
/// `S_k`-orbit and transported by the column action.
pub fn equivariant_separators(family: &Family, k: usize) -> Result<SeparatorAssignment> {
    if k < 2 || family.len() < k {
        return Err(input_err!("need 2 <= k <= n, got k = {k}, n = {}", family.len()));
    }
    if let Some(w) = find_tverberg(family, k)? {
        return Err(Error::Precondition(format!(
            "family {:?} has the Tverberg partition {}",
            family.label, w.partition
        )));
    }
    let verts = build_vnk(family.len(), k);
    let reps: Vec<Surjection> =
        verts.iter().filter(|p| orbit_representative(p) == **p).cloned().collect();
    let rep_maps: Vec<RationalMatrix> =
        reps.par_iter().map(|phi| separator_for(family, phi)).collect::<Result<_>>()?;

    let perms = permutations(k);
    let mut assigned: HashMap<Surjection, RationalMatrix> = HashMap::new();
    for (rep, a) in reps.iter().zip(&rep_maps) {
        for g in &perms {
            assigned.insert(group_action(g, rep)?, act_on_matrix(g, a));
        }
    }
    let mut entries = Vec::with_capacity(verts.len());
    for phi in &verts {
        let a = assigned
            .remove(phi)
            .ok_or_else(|| internal_err!("{phi} not reached from its orbit representative"))?;
        entries.push((phi.clone(), a));
    }
    let index = entries.iter().enumerate().map(|(i, (p, _))| (p.clone(), i)).collect();
    let out = SeparatorAssignment { k, d: family.dim(), entries, representatives: reps, index };
    verify_separators(family, &out)?;
    Ok(out)
}

/// `a_φ ∈ Y` and `a_φ · L_{φ(i)}(v) > 0` for every set `i` and vertex `v`.
pub fn verify_separators(family: &Family, s: &SeparatorAssignment) -> Result<()> {
    for (phi, a) in &s.entries {
        if !in_y(a) {
            return Err(internal_err!("a_{phi} is not in Y"));
        }
        for (i, set) in family.sets().iter().enumerate() {
            for v in set.vertices() {
                if !a.pairing(&lift(v, phi.at(i + 1), s.k)?).is_positive() {
                    return Err(internal_err!("a_{phi} fails to separate set {i}"));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Margin {
    pub family: usize,
    pub surjection: String,
    /// 1-based.
    pub j: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FacetReport {
    pub injections: Vec<Vec<usize>>,
    /// `x_j` for `j = 1..=k`.
    pub points: Vec<Vec<String>>,
    pub margins: Vec<Margin>,
    pub min_margin: String,
    pub all_positive: bool,
    /// No convex combination of the facet's functionals lies in `B`.
    pub hull_misses_b: bool,
}

/// Evaluate the functionals of the join facet `σ_1 * ⋯ * σ_m` on the colorful
/// points `x_j ∈ ∩_i C^{(i)}_{ρ_i(j)}`.
pub fn facet_avoids_b(
    system: &ColorSystem,
    injections: &[Vec<usize>],
    assignments: &[SeparatorAssignment],
) -> Result<FacetReport> {
    let (n, m) = (system.n(), system.m());
    if injections.len() != m || assignments.len() != m {
        return Err(input_err!("need one injection and one assignment per family ({m})"));
    }
    let k = injections[0].len();
    for rho in injections {
        let mut seen = vec![false; n + 1];
        if rho.len() != k || rho.iter().any(|&x| x == 0 || x > n || std::mem::replace(&mut seen[x], true)) {
            return Err(input_err!("{rho:?} is not an injection [1, {k}] -> [1, {n}]"));
        }
    }
    if assignments.iter().any(|a| a.k != k) {
        return Err(input_err!("assignments were built for a different k"));
    }

    let mut points = Vec::with_capacity(k);
    for j in 0..k {
        let parts: Vec<Vec<Point>> = system
            .families()
            .iter()
            .zip(injections)
            .map(|(f, rho)| f.sets()[rho[j] - 1].vertices().to_vec())
            .collect();
        let w = hulls_common_point(&parts)?.ok_or_else(|| {
            Error::Precondition(format!("colorful sets for j = {} do not meet", j + 1))
        })?;
        points.push(w.point);
    }
    let lifts: Vec<RationalMatrix> =
        points.iter().enumerate().map(|(j, x)| lift(x, j + 1, k)).collect::<Result<_>>()?;

    let mut margins = Vec::new();
    let mut functionals = Vec::new();
    let mut min_margin: Option<Rational> = None;
    for (fi, (rho, assignment)) in injections.iter().zip(assignments).enumerate() {
        for phi in facet_of(n, rho)? {
            let a = assignment.get(&phi).ok_or_else(|| input_err!("assignment lacks {phi}"))?;
            for (j, l) in lifts.iter().enumerate() {
                let value = a.pairing(l);
                if min_margin.as_ref().is_none_or(|m| value < *m) {
                    min_margin = Some(value.clone());
                }
                margins.push(Margin {
                    family: fi,
                    surjection: phi.to_string(),
                    j: j + 1,
                    value: format_rational(&value),
                });
            }
            functionals.push(a.clone());
        }
    }
    let min_margin = min_margin.expect("facets are nonempty");
    Ok(FacetReport {
        injections: injections.to_vec(),
        points: points.iter().map(Point::to_strings).collect(),
        all_positive: min_margin.is_positive(),
        min_margin: format_rational(&min_margin),
        margins,
        hull_misses_b: !hull_meets_b(&functionals)?,
    })
}

/// Whether some convex combination of `functionals` has zero rows `1..=d`.
fn hull_meets_b(functionals: &[RationalMatrix]) -> Result<bool> {
    let d = functionals[0].rows() - 1;
    let k = functionals[0].cols();
    let mut rows = vec![Vec::with_capacity(functionals.len()); d * k + 1];
    for a in functionals {
        for (r, e) in a.entries()[..d * k].iter().enumerate() {
            rows[r].push(e.clone());
        }
        rows[d * k].push(Rational::one());
    }
    let mut b = vec![Rational::zero(); d * k];
    b.push(Rational::one());
    Ok(solve_feasibility(&RationalMatrix::from_rows(rows)?, &b)?.is_feasible())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceDims {
    pub d: usize,
    pub k: usize,
    pub ambient: usize,
    pub dim_y: usize,
    pub dim_b: usize,
    pub dim_y_cap_b_perp: usize,
}

fn unit(d: usize, k: usize, r: usize, c: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); (d + 1) * k];
    v[r * k + c] = Rational::one();
    v
}

/// Dimensions of `Y`, `B` and `Y ∩ B^⊥` in `R^{(d+1)×k}`, each computed
/// twice: as the rank of a spanning set and as a nullity of the defining
/// equations. Disagreement is an internal error.
pub fn subspace_dims(d: usize, k: usize) -> Result<SubspaceDims> {
    if k == 0 {
        return Err(input_err!("k must be positive"));
    }
    let ambient = (d + 1) * k;
    let diff = |r: usize, c: usize| -> Vec<Rational> {
        let mut v = unit(d, k, r, c);
        v[r * k + k - 1] -= Rational::one();
        v
    };
    let y_span: Vec<Vec<Rational>> =
        (0..=d).flat_map(|r| (0..k - 1).map(move |c| (r, c))).map(|(r, c)| diff(r, c)).collect();
    let b_span: Vec<Vec<Rational>> = (0..k).map(|c| unit(d, k, d, c)).collect();
    let yb_span: Vec<Vec<Rational>> =
        (0..d).flat_map(|r| (0..k - 1).map(move |c| (r, c))).map(|(r, c)| diff(r, c)).collect();

    let row_sums: Vec<Vec<Rational>> = (0..=d)
        .map(|r| (0..ambient).map(|e| if e / k == r { Rational::one() } else { Rational::zero() }).collect())
        .collect();
    let last_row: Vec<Vec<Rational>> = (0..k).map(|c| unit(d, k, d, c)).collect();

    let span_rank = |rows: Vec<Vec<Rational>>| -> Result<usize> {
        if rows.is_empty() {
            Ok(0)
        } else {
            Ok(rank(&RationalMatrix::from_rows(rows)?))
        }
    };
    let dim_y = span_rank(y_span)?;
    let dim_b = span_rank(b_span)?;
    let dim_yb = span_rank(yb_span)?;

    let nullity_y = ambient - span_rank(row_sums.clone())?;
    let nullity_yb = ambient - span_rank(row_sums.into_iter().chain(last_row).collect())?;
    if nullity_y != dim_y || nullity_yb != dim_yb {
        return Err(internal_err!("spanning-set and equation dimensions disagree"));
    }
    Ok(SubspaceDims { d, k, ambient, dim_y, dim_b, dim_y_cap_b_perp: dim_yb })
}
