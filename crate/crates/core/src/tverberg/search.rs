use rayon::prelude::*;

use crate::error::{input_err, internal_err, Result};
use crate::geometry::hulls_common_point;

use super::{enumerate_partitions, Family, KPartition, TverbergWitness};

/// Witness that `partition` is a Tverberg partition of `family`, if it is.
///
/// Each block is replaced by the pooled canonical vertices of its sets; the
/// blocks are taken in canonical order, so the witness does not depend on
/// how the caller ordered them.
pub fn is_tverberg(family: &Family, partition: &KPartition) -> Result<Option<TverbergWitness>> {
    if partition.n() != family.len() {
        return Err(input_err!(
            "partition covers {} indices but family has {} sets",
            partition.n(),
            family.len()
        ));
    }
    let parts: Vec<_> = partition.blocks().iter().map(|b| family.pooled_vertices(b)).collect();
    let Some(w) = hulls_common_point(&parts)? else {
        return Ok(None);
    };
    let witness = TverbergWitness {
        partition: partition.clone(),
        point: w.point,
        coefficients: w.coefficients,
    };
    if !witness.verify(family) {
        return Err(internal_err!("Tverberg witness failed re-verification"));
    }
    Ok(Some(witness))
}

/// First Tverberg `k`-partition in canonical enumeration order.
///
/// Partitions are tested in parallel; the reported one is always the
/// minimum-index success.
pub fn find_tverberg(family: &Family, k: usize) -> Result<Option<TverbergWitness>> {
    if k == 0 {
        return Err(input_err!("k must be at least 1"));
    }
    let candidates: Vec<KPartition> = enumerate_partitions(family.len(), k)?.collect();
    candidates
        .par_iter()
        .find_map_first(|p| match is_tverberg(family, p) {
            Ok(None) => None,
            Ok(Some(w)) => Some(Ok(w)),
            Err(e) => Some(Err(e)),
        })
        .transpose()
}
