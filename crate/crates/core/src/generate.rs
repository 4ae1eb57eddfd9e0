//! Seeded random color systems that have the colorful intersection property
//! by construction.

use std::fmt;
use std::str::FromStr;

use crate::error::{input_err, internal_err, Error, Result};
use crate::geometry::{Point, VPolytope};
use crate::rational::{frac, int, Rational};
use crate::rng::SeededGenerator;
use crate::tverberg::{check_colorful_intersection, ColorSystem, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// Family `i` pins its own coordinate group and spans the rest.
    AxisSlabs,
    /// Like slabs, with a thin interval on the own group and jittered wide
    /// intervals elsewhere.
    ShiftedBoxes,
    /// Hubs `z_τ` for `τ ∈ [n]^m`; set `j` of family `i` is the hull of the
    /// hubs with `τ_i = j` plus a few random points.
    RandomPointsFattened,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::AxisSlabs, Scheme::ShiftedBoxes, Scheme::RandomPointsFattened];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::AxisSlabs => "axis-slabs",
            Scheme::ShiftedBoxes => "shifted-boxes",
            Scheme::RandomPointsFattened => "random-points-fattened",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| input_err!("unknown scheme {s:?}; expected axis-slabs, shifted-boxes or random-points-fattened"))
    }
}

/// Coordinate group of family `i`: a contiguous, nearly even share of `[d]`.
/// A lone family pins nothing, so its sets share a common box.
fn coordinate_group(d: usize, m: usize, i: usize) -> std::ops::Range<usize> {
    if m == 1 {
        return 0..0;
    }
    (i * d / m)..((i + 1) * d / m)
}

/// `j` plus a jitter in `[-1/4, 1/4]` with denominator dividing 100.
fn jittered(rng: &mut SeededGenerator, j: usize) -> Rational {
    int(j as i64) + frac(rng.range_i64(-25, 25), 100)
}

/// `m` families of `n` sets in `R^d`. `k` is accepted for symmetry with the
/// experiment parameters and does not affect the construction.
pub fn generate_random_colorful_system(
    d: usize,
    m: usize,
    _k: usize,
    n: usize,
    seed: u64,
    scheme: Scheme,
) -> Result<ColorSystem> {
    generate_with(d, m, n, scheme, &mut SeededGenerator::new(seed))
}

/// Same construction driven by an existing generator.
pub fn generate_with(
    d: usize,
    m: usize,
    n: usize,
    scheme: Scheme,
    rng: &mut SeededGenerator,
) -> Result<ColorSystem> {
    if d == 0 || m == 0 || n == 0 {
        return Err(input_err!("d, m and n must be positive"));
    }
    if (n as u64).checked_pow(m as u32).is_none_or(|c| c > 100_000) {
        return Err(input_err!("n^m = {n}^{m} is too large"));
    }
    let families = match scheme {
        Scheme::AxisSlabs => slabs(d, m, n, rng, false)?,
        Scheme::ShiftedBoxes => slabs(d, m, n, rng, true)?,
        Scheme::RandomPointsFattened => fattened(d, m, n, rng)?,
    };
    let system = ColorSystem::new(d, families)?;
    if let Some(v) = check_colorful_intersection(&system)? {
        return Err(internal_err!("{scheme} instance misses the colorful property at {v:?}"));
    }
    Ok(system)
}

fn slabs(d: usize, m: usize, n: usize, rng: &mut SeededGenerator, shifted: bool) -> Result<Vec<Family>> {
    let wide = int(n as i64 + 2);
    let mut families = Vec::with_capacity(m);
    for i in 0..m {
        let own = coordinate_group(d, m, i);
        let sets = (0..n)
            .map(|j| {
                let mut lo = Vec::with_capacity(d);
                let mut hi = Vec::with_capacity(d);
                for c in 0..d {
                    if own.contains(&c) {
                        let centre = jittered(rng, j);
                        if shifted {
                            let half = frac(rng.range_i64(1, 10), 100);
                            lo.push(&centre - &half);
                            hi.push(&centre + &half);
                        } else {
                            lo.push(centre.clone());
                            hi.push(centre);
                        }
                    } else if shifted {
                        lo.push(-&wide - rng.rational_in(0, 1, 100));
                        hi.push(&wide + rng.rational_in(0, 1, 100));
                    } else {
                        lo.push(-wide.clone());
                        hi.push(wide.clone());
                    }
                }
                VPolytope::boxed(&lo, &hi)
            })
            .collect::<Result<Vec<_>>>()?;
        families.push(Family::new(format!("F{}", i + 1), sets)?);
    }
    Ok(families)
}

fn fattened(d: usize, m: usize, n: usize, rng: &mut SeededGenerator) -> Result<Vec<Family>> {
    let random_point = |rng: &mut SeededGenerator| {
        Point::new((0..d).map(|_| rng.rational_in(-10, 10, 100)).collect())
    };
    let count = n.pow(m as u32);
    let hubs: Vec<Point> = (0..count).map(|_| random_point(rng)).collect();
    let digit = |code: usize, i: usize| (code / n.pow((m - 1 - i) as u32)) % n;
    let mut families = Vec::with_capacity(m);
    for i in 0..m {
        let sets = (0..n)
            .map(|j| {
                let mut verts: Vec<Point> =
                    (0..count).filter(|&c| digit(c, i) == j).map(|c| hubs[c].clone()).collect();
                let extra = 1 + rng.below(2);
                verts.extend((0..extra).map(|_| random_point(rng)));
                VPolytope::new(verts)
            })
            .collect::<Result<Vec<_>>>()?;
        families.push(Family::new(format!("F{}", i + 1), sets)?);
    }
    Ok(families)
}

/// Seeded point set of `size` points in `R^d` with coordinates in `[-10, 10]`
/// and denominators at most `max_den`.
pub fn random_point_family(d: usize, size: usize, max_den: i64, rng: &mut SeededGenerator) -> Result<Family> {
    let pts = (0..size)
        .map(|_| Point::new((0..d).map(|_| rng.rational_in(-10, 10, max_den)).collect()))
        .collect();
    Family::of_points("points", pts)
}

/// Seeded family of small random polytopes: each set has one to three
/// vertices near a random centre.
pub fn random_polytope_family(d: usize, size: usize, rng: &mut SeededGenerator) -> Result<Family> {
    let sets = (0..size)
        .map(|_| {
            let centre: Vec<Rational> = (0..d).map(|_| rng.rational_in(-5, 5, 10)).collect();
            let count = 1 + rng.below(3);
            let verts = (0..count)
                .map(|_| {
                    Point::new(centre.iter().map(|c| c + rng.rational_in(-1, 1, 10)).collect())
                })
                .collect();
            VPolytope::new(verts)
        })
        .collect::<Result<Vec<_>>>()?;
    Family::new("random", sets)
}

/// `true` when every coordinate denominator of `system` is at most `bound`.
pub fn denominators_at_most(system: &ColorSystem, bound: i64) -> bool {
    let bound = num_bigint::BigInt::from(bound);
    system.families().iter().all(|f| {
        f.sets().iter().all(|s| {
            s.vertices().iter().all(|v| v.coords().iter().all(|c| c.denom() <= &bound))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::InstanceFile;
    use num_traits::Signed;

    #[test]
    fn crossing_grid_from_slabs() {
        let s = generate_random_colorful_system(2, 2, 2, 3, 1, Scheme::AxisSlabs).unwrap();
        // Family 1 pins x, family 2 pins y: three near-vertical and three
        // near-horizontal segments.
        for (i, f) in s.families().iter().enumerate() {
            for (j, set) in f.sets().iter().enumerate() {
                assert_eq!(set.vertices().len(), 2);
                let pinned = &set.vertices()[0].coords()[i];
                assert_eq!(pinned, &set.vertices()[1].coords()[i]);
                assert!((pinned - int(j as i64)).abs() <= frac(1, 4));
            }
        }
    }

    #[test]
    fn deterministic() {
        for scheme in Scheme::ALL {
            let a = generate_random_colorful_system(3, 2, 2, 3, 42, scheme).unwrap();
            let b = generate_random_colorful_system(3, 2, 2, 3, 42, scheme).unwrap();
            assert_eq!(InstanceFile::from_system(&a).to_json(), InstanceFile::from_system(&b).to_json());
            assert!(denominators_at_most(&a, 10_000));
        }
    }

    #[test]
    fn intervals_on_a_line() {
        for scheme in Scheme::ALL {
            let s = generate_random_colorful_system(1, 1, 2, 3, 5, scheme).unwrap();
            assert_eq!((s.m(), s.n(), s.dimension()), (1, 3, 1));
        }
        for scheme in [Scheme::AxisSlabs, Scheme::ShiftedBoxes] {
            let s = generate_random_colorful_system(1, 1, 2, 3, 5, scheme).unwrap();
            let parts: Vec<_> = s.families()[0].sets().iter().map(|c| c.vertices().to_vec()).collect();
            assert!(crate::geometry::hulls_common_point(&parts).unwrap().is_some());
        }
    }

    #[test]
    fn scheme_names() {
        for scheme in Scheme::ALL {
            assert_eq!(scheme.name().parse::<Scheme>().unwrap(), scheme);
        }
        assert!("grid".parse::<Scheme>().is_err());
    }
}
