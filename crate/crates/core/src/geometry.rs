//! Points, V-polytopes, affine flats, and the hull-intersection LPs built on
//! top of [`crate::lp`].

use std::fmt;

use num_traits::{One, Zero};

use crate::error::{input_err, internal_err, Result};
use crate::lp::{rank, solve_feasibility, FeasibilityResult};
use crate::rational::{format_rational, int, Rational, RationalMatrix};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Point(coords.iter().map(|&c| int(c)).collect())
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn sub(&self, other: &Point) -> Vec<Rational> {
        self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(format_rational).collect()
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// `Σ w_i p_i`.
pub fn combine(points: &[&Point], weights: &[Rational]) -> Point {
    assert_eq!(points.len(), weights.len());
    let dim = points.first().map_or(0, |p| p.dim());
    let mut acc = vec![Rational::zero(); dim];
    for (p, w) in points.iter().zip(weights) {
        if w.is_zero() {
            continue;
        }
        for (a, c) in acc.iter_mut().zip(&p.0) {
            *a += w * c;
        }
    }
    Point(acc)
}

/// Convex hull of a nonempty finite vertex list.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VPolytope {
    vertices: Vec<Point>,
}

impl VPolytope {
    pub fn new(vertices: Vec<Point>) -> Result<Self> {
        let Some(first) = vertices.first() else {
            return Err(input_err!("polytope needs at least one vertex"));
        };
        let d = first.dim();
        if vertices.iter().any(|v| v.dim() != d) {
            return Err(input_err!("polytope vertices have mixed dimensions"));
        }
        Ok(VPolytope { vertices })
    }

    pub fn point(p: Point) -> Self {
        VPolytope { vertices: vec![p] }
    }

    /// Axis-aligned box `Π [lo_i, hi_i]`; degenerate sides contribute a single value.
    pub fn boxed(lo: &[Rational], hi: &[Rational]) -> Result<Self> {
        if lo.len() != hi.len() {
            return Err(input_err!("box bounds differ in length"));
        }
        let mut verts = vec![Vec::new()];
        for (l, h) in lo.iter().zip(hi) {
            if l > h {
                return Err(input_err!("box has lower bound above upper bound"));
            }
            let choices: Vec<&Rational> = if l == h { vec![l] } else { vec![l, h] };
            verts = verts
                .into_iter()
                .flat_map(|prefix: Vec<Rational>| {
                    choices.iter().map(move |c| {
                        let mut v = prefix.clone();
                        v.push((*c).clone());
                        v
                    })
                })
                .collect();
        }
        VPolytope::new(verts.into_iter().map(Point).collect())
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    /// Deduplicated, lexicographically sorted copy.
    pub fn canonical(&self) -> VPolytope {
        let mut v = self.vertices.clone();
        v.sort();
        v.dedup();
        VPolytope { vertices: v }
    }

    pub fn contains(&self, p: &Point) -> Result<bool> {
        Ok(hulls_common_point(&[self.vertices.clone(), vec![p.clone()]])?.is_some())
    }
}

impl fmt::Debug for VPolytope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(&self.vertices).finish()
    }
}

/// `base + span(directions)` with linearly independent directions.
#[derive(Clone, PartialEq, Eq)]
pub struct AffineFlat {
    pub base: Point,
    pub directions: Vec<Vec<Rational>>,
}

impl AffineFlat {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.base.dim()
    }
}

impl fmt::Debug for AffineFlat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AffineFlat")
            .field("base", &self.base)
            .field("directions", &self.directions.iter().map(|d| Point(d.clone())).collect::<Vec<_>>())
            .finish()
    }
}

/// A common point of `conv(parts[0]) ∩ … ∩ conv(parts[k-1])` together with,
/// for each part, convex coefficients over that part's points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HullWitness {
    pub point: Point,
    pub coefficients: Vec<Vec<Rational>>,
}

impl HullWitness {
    /// Exact re-check against the parts it was computed for.
    pub fn verify(&self, parts: &[Vec<Point>]) -> bool {
        if parts.len() != self.coefficients.len() {
            return false;
        }
        parts.iter().zip(&self.coefficients).all(|(pts, lam)| {
            lam.len() == pts.len()
                && lam.iter().all(|l| *l >= Rational::zero())
                && lam.iter().sum::<Rational>() == Rational::one()
                && combine(&pts.iter().collect::<Vec<_>>(), lam) == self.point
        })
    }
}

fn common_dim(parts: &[Vec<Point>]) -> Result<usize> {
    let mut dim = None;
    for part in parts {
        if part.is_empty() {
            return Err(input_err!("empty part"));
        }
        for p in part {
            match dim {
                None => dim = Some(p.dim()),
                Some(d) if d != p.dim() => return Err(input_err!("mixed dimensions")),
                _ => {}
            }
        }
    }
    dim.ok_or_else(|| input_err!("no parts"))
}

/// Decide whether the convex hulls of `parts` share a point.
///
/// One standard-form LP: variables are the coefficients of every part in
/// order, rows equate part 0's combination with each later part's and pin
/// every part's coefficients to sum to one.
pub fn hulls_common_point(parts: &[Vec<Point>]) -> Result<Option<HullWitness>> {
    let d = common_dim(parts)?;
    let k = parts.len();
    let nvars: usize = parts.iter().map(Vec::len).sum();
    let offsets: Vec<usize> = parts
        .iter()
        .scan(0, |acc, p| {
            let o = *acc;
            *acc += p.len();
            Some(o)
        })
        .collect();
    let rows = d * (k - 1) + k;
    let mut a = RationalMatrix::zeros(rows, nvars);
    let mut b = vec![Rational::zero(); rows];
    for j in 1..k {
        for coord in 0..d {
            let r = (j - 1) * d + coord;
            for (i, p) in parts[0].iter().enumerate() {
                a[(r, offsets[0] + i)] = p.0[coord].clone();
            }
            for (i, p) in parts[j].iter().enumerate() {
                a[(r, offsets[j] + i)] = -&p.0[coord];
            }
        }
    }
    for j in 0..k {
        let r = d * (k - 1) + j;
        for i in 0..parts[j].len() {
            a[(r, offsets[j] + i)] = Rational::one();
        }
        b[r] = Rational::one();
    }
    match solve_feasibility(&a, &b)? {
        FeasibilityResult::Infeasible(_) => Ok(None),
        FeasibilityResult::Feasible(x) => {
            let coefficients: Vec<Vec<Rational>> = (0..k)
                .map(|j| x[offsets[j]..offsets[j] + parts[j].len()].to_vec())
                .collect();
            let point = combine(&parts[0].iter().collect::<Vec<_>>(), &coefficients[0]);
            let w = HullWitness { point, coefficients };
            if !w.verify(parts) {
                return Err(internal_err!("hull witness failed re-verification"));
            }
            Ok(Some(w))
        }
    }
}

/// Same decision as [`hulls_common_point`], solved on sorted, deduplicated
/// parts in sorted order so the witness point does not depend on the order
/// of the input. Coefficients are mapped back onto the caller's parts (a
/// duplicated vertex receives the weight on its first occurrence).
pub fn hulls_common_point_canonical(parts: &[Vec<Point>]) -> Result<Option<HullWitness>> {
    common_dim(parts)?;
    let canon: Vec<Vec<Point>> = parts
        .iter()
        .map(|p| {
            let mut v = p.clone();
            v.sort();
            v.dedup();
            v
        })
        .collect();
    let mut order: Vec<usize> = (0..parts.len()).collect();
    order.sort_by(|&i, &j| canon[i].cmp(&canon[j]).then(i.cmp(&j)));
    let sorted: Vec<Vec<Point>> = order.iter().map(|&i| canon[i].clone()).collect();
    let Some(w) = hulls_common_point(&sorted)? else {
        return Ok(None);
    };
    let mut coefficients = vec![Vec::new(); parts.len()];
    for (slot, &orig) in order.iter().enumerate() {
        let mut lam = vec![Rational::zero(); parts[orig].len()];
        for (cv, weight) in sorted[slot].iter().zip(&w.coefficients[slot]) {
            let pos = parts[orig].iter().position(|p| p == cv).expect("vertex from this part");
            lam[pos] = weight.clone();
        }
        coefficients[orig] = lam;
    }
    let out = HullWitness { point: w.point, coefficients };
    if !out.verify(parts) {
        return Err(internal_err!("canonical hull witness failed re-verification"));
    }
    Ok(Some(out))
}

/// Affine hull of a nonempty point list: base is the first point, directions
/// are a greedily chosen independent subset of the differences.
pub fn affine_flat_of(points: &[Point]) -> Result<AffineFlat> {
    let Some(base) = points.first() else {
        return Err(input_err!("affine hull of no points"));
    };
    if points.iter().any(|p| p.dim() != base.dim()) {
        return Err(input_err!("mixed dimensions"));
    }
    let mut directions: Vec<Vec<Rational>> = Vec::new();
    for p in &points[1..] {
        let diff = p.sub(base);
        if diff.iter().all(Zero::is_zero) {
            continue;
        }
        let mut trial = directions.clone();
        trial.push(diff.clone());
        let m = RationalMatrix::from_rows(trial).expect("equal lengths");
        if rank(&m) == directions.len() + 1 {
            directions.push(diff);
        }
    }
    Ok(AffineFlat { base: base.clone(), directions })
}

/// A point of `flat ∩ conv(P)`, if any.
///
/// Flat parameters are free, so each is split into a nonnegative pair.
pub fn flat_intersects_polytope(flat: &AffineFlat, poly: &VPolytope) -> Result<Option<Point>> {
    let d = flat.ambient_dim();
    if poly.dim() != d {
        return Err(input_err!(
            "flat lives in dimension {d} but polytope in dimension {}",
            poly.dim()
        ));
    }
    let nv = poly.vertices().len();
    let nd = flat.dim();
    // Σ λ_v v - Σ (t+ - t-) dir = base ; Σ λ = 1
    let mut a = RationalMatrix::zeros(d + 1, nv + 2 * nd);
    let mut b = vec![Rational::zero(); d + 1];
    for coord in 0..d {
        for (i, v) in poly.vertices().iter().enumerate() {
            a[(coord, i)] = v.0[coord].clone();
        }
        for (t, dir) in flat.directions.iter().enumerate() {
            a[(coord, nv + 2 * t)] = -&dir[coord];
            a[(coord, nv + 2 * t + 1)] = dir[coord].clone();
        }
        b[coord] = flat.base.0[coord].clone();
    }
    for i in 0..nv {
        a[(d, i)] = Rational::one();
    }
    b[d] = Rational::one();
    let FeasibilityResult::Feasible(x) = solve_feasibility(&a, &b)? else {
        return Ok(None);
    };
    let verts: Vec<&Point> = poly.vertices().iter().collect();
    let p = combine(&verts, &x[..nv]);
    let mut on_flat = flat.base.clone();
    for (t, dir) in flat.directions.iter().enumerate() {
        let s = &x[nv + 2 * t] - &x[nv + 2 * t + 1];
        for (c, dv) in on_flat.0.iter_mut().zip(dir) {
            *c += &s * dv;
        }
    }
    if p != on_flat {
        return Err(internal_err!("flat/polytope witness disagrees"));
    }
    Ok(Some(p))
}
