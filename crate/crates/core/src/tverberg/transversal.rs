use num_traits::Zero;

use crate::error::{input_err, internal_err, Result};
use crate::geometry::{affine_flat_of, combine, flat_intersects_polytope, AffineFlat, Point};
use crate::rational::Rational;

use super::{Family, TverbergWitness};

#[derive(Clone, Debug)]
pub struct FlatTransversal {
    pub flat: AffineFlat,
    /// `anchors[i] ∈ C_i`, the points whose affine hull is `flat`.
    pub anchors: Vec<Point>,
    /// `n - k`; the flat's dimension never exceeds it.
    pub bound: usize,
    /// A point of `flat ∩ C_i` for every set, from an independent LP.
    pub hits: Vec<Point>,
}

/// Turn a Tverberg witness into an affine flat of dimension at most `n - k`
/// meeting every set of the family.
///
/// Each set with positive weight mass contributes its normalized weighted
/// vertex combination; weightless sets contribute their first canonical
/// vertex.
pub fn extract_flat_transversal(family: &Family, witness: &TverbergWitness) -> Result<FlatTransversal> {
    if !witness.verify(family) {
        return Err(input_err!("witness does not verify against family {:?}", family.label));
    }
    let n = family.len();
    let k = witness.partition.k();
    let bound = n - k;
    let weights = witness.set_weights(family);
    let anchors: Vec<Point> = family
        .sets()
        .iter()
        .zip(&weights)
        .map(|(set, w)| {
            let canon = set.canonical();
            let mass: Rational = w.iter().sum();
            if mass.is_zero() {
                canon.vertices()[0].clone()
            } else {
                let normalized: Vec<Rational> = w.iter().map(|x| x / &mass).collect();
                combine(&canon.vertices().iter().collect::<Vec<_>>(), &normalized)
            }
        })
        .collect();
    let flat = affine_flat_of(&anchors)?;
    if flat.dim() > bound {
        return Err(internal_err!("transversal has dimension {} > {bound}", flat.dim()));
    }
    let mut hits = Vec::with_capacity(n);
    for (i, set) in family.sets().iter().enumerate() {
        match flat_intersects_polytope(&flat, set)? {
            Some(p) => hits.push(p),
            None => return Err(internal_err!("transversal misses set {i}")),
        }
    }
    Ok(FlatTransversal { flat, anchors, bound, hits })
}
