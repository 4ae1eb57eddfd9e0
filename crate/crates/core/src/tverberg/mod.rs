//! Statement-level objects: families of polytopes, colored systems, ordered
//! partitions, Tverberg witnesses, and the searches and experiments over them.

mod colorful;
mod experiment;
mod extremal;
mod partitions;
mod search;
mod transversal;

use std::fmt;

use num_traits::{One, Zero};
use serde::Serialize;

pub use colorful::check_colorful_intersection;
pub use experiment::{
    is_prime_power, join_bound_check, theorem1_experiment, FamilyOutcome, JoinBoundReport,
    Theorem1Report, Verdict,
};
pub use extremal::{build_extremal, random_tverberg_free_base};
pub use partitions::{enumerate_partitions, stirling2, PartitionIter};
pub use search::{find_tverberg, is_tverberg};
pub use transversal::{extract_flat_transversal, FlatTransversal};

use crate::error::{input_err, Result};
use crate::geometry::{combine, Point, VPolytope};
use crate::rational::{format_rational, Rational};

/// `n` convex sets in a common ambient dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub label: String,
    sets: Vec<VPolytope>,
}

impl Family {
    pub fn new(label: impl Into<String>, sets: Vec<VPolytope>) -> Result<Self> {
        let Some(first) = sets.first() else {
            return Err(input_err!("family needs at least one set"));
        };
        let d = first.dim();
        if sets.iter().any(|s| s.dim() != d) {
            return Err(input_err!("family sets have mixed dimensions"));
        }
        Ok(Family { label: label.into(), sets })
    }

    /// Family of single points.
    pub fn of_points(label: impl Into<String>, points: Vec<Point>) -> Result<Self> {
        Family::new(label, points.into_iter().map(VPolytope::point).collect())
    }

    pub fn sets(&self) -> &[VPolytope] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.sets[0].dim()
    }

    /// Canonical vertices of every set in `block`, concatenated in block order.
    pub(crate) fn pooled_vertices(&self, block: &[usize]) -> Vec<Point> {
        block.iter().flat_map(|&i| self.sets[i].canonical().vertices().to_vec()).collect()
    }
}

/// `m` families of equal size `n` in `R^d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColorSystem {
    dimension: usize,
    families: Vec<Family>,
}

impl ColorSystem {
    pub fn new(dimension: usize, families: Vec<Family>) -> Result<Self> {
        let Some(first) = families.first() else {
            return Err(input_err!("color system needs at least one family"));
        };
        let n = first.len();
        for f in &families {
            if f.len() != n {
                return Err(input_err!(
                    "family {:?} has {} sets, expected {n}",
                    f.label,
                    f.len()
                ));
            }
            if f.dim() != dimension {
                return Err(input_err!(
                    "family {:?} lives in dimension {}, expected {dimension}",
                    f.label,
                    f.dim()
                ));
            }
        }
        Ok(ColorSystem { dimension, families })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn m(&self) -> usize {
        self.families.len()
    }

    pub fn n(&self) -> usize {
        self.families[0].len()
    }
}

/// Ordered partition of `{0, …, n-1}` into nonempty blocks.
///
/// Stored canonically: each block ascending, blocks ordered by minimum.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KPartition {
    blocks: Vec<Vec<usize>>,
}

impl KPartition {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n];
        let mut blocks = blocks;
        for b in blocks.iter_mut() {
            if b.is_empty() {
                return Err(input_err!("partition has an empty block"));
            }
            b.sort_unstable();
            for &i in b.iter() {
                if i >= n {
                    return Err(input_err!("index {i} out of range for n = {n}"));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(input_err!("index {i} appears twice"));
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(input_err!("index {missing} is not covered"));
        }
        blocks.sort_by_key(|b| b[0]);
        Ok(KPartition { blocks })
    }

    /// From a restricted-growth string (`rgs[i]` = block of element `i`).
    pub fn from_rgs(rgs: &[usize]) -> Self {
        let k = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        KPartition { blocks }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    /// `labels[i]` = canonical block index of element `i`.
    pub fn block_labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n()];
        for (j, b) in self.blocks.iter().enumerate() {
            for &i in b {
                labels[i] = j;
            }
        }
        labels
    }
}

impl fmt::Debug for KPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for KPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|b| {
                let items: Vec<String> = b.iter().map(usize::to_string).collect();
                format!("{{{}}}", items.join(","))
            })
            .collect();
        write!(f, "{}", parts.join("|"))
    }
}

/// A Tverberg partition together with a common point of the pooled hulls.
///
/// `coefficients[j]` are convex weights over the canonical vertices of the
/// sets in block `j`, concatenated in ascending set order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TverbergWitness {
    pub partition: KPartition,
    pub point: Point,
    pub coefficients: Vec<Vec<Rational>>,
}

impl TverbergWitness {
    /// Exact re-check against `family`.
    pub fn verify(&self, family: &Family) -> bool {
        if self.partition.n() != family.len() || self.coefficients.len() != self.partition.k() {
            return false;
        }
        self.partition.blocks().iter().zip(&self.coefficients).all(|(block, lam)| {
            let pooled = family.pooled_vertices(block);
            pooled.len() == lam.len()
                && lam.iter().all(|l| *l >= Rational::zero())
                && lam.iter().sum::<Rational>() == Rational::one()
                && combine(&pooled.iter().collect::<Vec<_>>(), lam) == self.point
        })
    }

    /// Per-set weights: `out[i]` are the weights on set `i`'s canonical vertices.
    pub fn set_weights(&self, family: &Family) -> Vec<Vec<Rational>> {
        let mut out = vec![Vec::new(); family.len()];
        for (block, lam) in self.partition.blocks().iter().zip(&self.coefficients) {
            let mut offset = 0;
            for &i in block {
                let nv = family.sets()[i].canonical().vertices().len();
                out[i] = lam[offset..offset + nv].to_vec();
                offset += nv;
            }
        }
        out
    }

    pub fn view(&self) -> WitnessView {
        WitnessView {
            partition: self.partition.blocks().to_vec(),
            point: self.point.to_strings(),
            coefficients: self
                .coefficients
                .iter()
                .map(|c| c.iter().map(format_rational).collect())
                .collect(),
        }
    }
}

/// JSON shape of a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessView {
    pub partition: Vec<Vec<usize>>,
    pub point: Vec<String>,
    pub coefficients: Vec<Vec<String>>,
}
