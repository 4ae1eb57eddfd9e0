use num_traits::{One, Signed, Zero};

use crate::error::{input_err, internal_err, Result};
use crate::geometry::{Point, VPolytope};
use crate::rational::{int, Rational};
use crate::rng::SeededGenerator;

use super::{check_colorful_intersection, find_tverberg, ColorSystem, Family};

/// Seeded draw of `(t+1)(k-1)` integer points in `R^t` with no Tverberg
/// `k`-partition. Draws repeat until the exhaustive check passes.
pub fn random_tverberg_free_base(t: usize, k: usize, seed: u64) -> Result<Vec<Point>> {
    if k < 2 || t == 0 {
        return Err(input_err!("need t >= 1 and k >= 2"));
    }
    let count = (t + 1) * (k - 1);
    let radius = 3 + count as i64;
    let mut rng = SeededGenerator::new(seed);
    for _ in 0..10_000 {
        let pts: Vec<Point> = (0..count)
            .map(|_| Point::new((0..t).map(|_| int(rng.range_i64(-radius, radius))).collect()))
            .collect();
        let fam = Family::of_points("base", pts.clone())?;
        if find_tverberg(&fam, k)?.is_none() {
            return Ok(pts);
        }
    }
    Err(internal_err!("no Tverberg-free base found after 10000 draws"))
}

/// Tight example for the size bound when `m | d`.
///
/// With `t = d/m`, family `i` holds, for each base point `x`, the box whose
/// `i`-th block of `t` coordinates is pinned to `x` and whose other blocks
/// span `[-M, M]^t`, `M = 1 + max |coordinate of base|`. Every colorful choice
/// meets at the point assembled from the chosen base points, while a Tverberg
/// partition of a family would project to one of the base.
pub fn build_extremal(
    d: usize,
    m: usize,
    k: usize,
    base: Option<Vec<Point>>,
    seed: u64,
) -> Result<ColorSystem> {
    if m == 0 || d == 0 || !d.is_multiple_of(m) {
        return Err(input_err!("m = {m} must be positive and divide d = {d}"));
    }
    if k < 2 {
        return Err(input_err!("k must be at least 2"));
    }
    let t = d / m;
    let expected = (t + 1) * (k - 1);
    let base = match base {
        Some(pts) => {
            if pts.len() != expected {
                return Err(input_err!("base must have {expected} points, got {}", pts.len()));
            }
            if pts.iter().any(|p| p.dim() != t) {
                return Err(input_err!("base points must lie in R^{t}"));
            }
            let fam = Family::of_points("base", pts.clone())?;
            if let Some(w) = find_tverberg(&fam, k)? {
                return Err(input_err!("base admits the Tverberg partition {}", w.partition));
            }
            pts
        }
        None => random_tverberg_free_base(t, k, seed)?,
    };

    let max_abs = base
        .iter()
        .flat_map(|p| p.coords().iter().map(Signed::abs))
        .max()
        .unwrap_or_else(Rational::zero);
    let big = max_abs + Rational::one();

    let mut families = Vec::with_capacity(m);
    for i in 0..m {
        let sets = base
            .iter()
            .map(|x| {
                let mut lo = vec![-big.clone(); d];
                let mut hi = vec![big.clone(); d];
                for (c, v) in x.coords().iter().enumerate() {
                    lo[i * t + c] = v.clone();
                    hi[i * t + c] = v.clone();
                }
                VPolytope::boxed(&lo, &hi)
            })
            .collect::<Result<Vec<_>>>()?;
        families.push(Family::new(format!("F{}", i + 1), sets)?);
    }
    let system = ColorSystem::new(d, families)?;

    if let Some(v) = check_colorful_intersection(&system)? {
        return Err(internal_err!("extremal system fails colorful intersection at {v:?}"));
    }
    for f in system.families() {
        if let Some(w) = find_tverberg(f, k)? {
            return Err(internal_err!("extremal family {} admits {}", f.label, w.partition));
        }
    }
    Ok(system)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_two_by_two() {
        let base = vec![Point::from_ints(&[0]), Point::from_ints(&[1])];
        let s = build_extremal(2, 2, 2, Some(base), 0).unwrap();
        assert_eq!(s.n(), 2);
        // F1: x pinned, y spans [-2, 2].
        let f1 = &s.families()[0];
        assert_eq!(
            f1.sets()[1].vertices(),
            &[Point::from_ints(&[1, -2]), Point::from_ints(&[1, 2])]
        );
        let f2 = &s.families()[1];
        assert_eq!(
            f2.sets()[0].vertices(),
            &[Point::from_ints(&[-2, 0]), Point::from_ints(&[2, 0])]
        );
    }

    #[test]
    fn single_family_random_base() {
        let s = build_extremal(2, 1, 2, None, 11).unwrap();
        assert_eq!(s.m(), 1);
        assert_eq!(s.n(), 3);
    }

    #[test]
    fn four_dimensional_boxes() {
        let base = vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 0]), Point::from_ints(&[0, 1])];
        let s = build_extremal(4, 2, 2, Some(base), 0).unwrap();
        assert_eq!(s.n(), 3);
        // 2^{t(m-1)} vertices per box.
        assert!(s.families().iter().all(|f| f.sets().iter().all(|c| c.vertices().len() == 4)));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(build_extremal(3, 2, 2, None, 0).is_err());
        // Collinear triple has a Radon partition.
        let bad = vec![Point::from_ints(&[0, 0]), Point::from_ints(&[1, 1]), Point::from_ints(&[2, 2])];
        assert!(matches!(build_extremal(4, 2, 2, Some(bad), 0), Err(crate::Error::Input(_))));
    }
}
