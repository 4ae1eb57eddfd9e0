//! The surjection complex `K(n,k)` and the partial-surjection cell complex
//! `C(n,k)`, with the `S_k` action and the order-reversing map between them.
//!
//! Elements of `[n]` and values in `[k]` are 1-based throughout, matching the
//! usual cell notation `(3|12)`. A partial surjection stores `0` for an
//! undefined entry.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{input_err, Error, Result};
use crate::poset::Poset;

/// Default cap on `|V(n,k)|` for face enumeration.
pub const DEFAULT_VERTEX_CAP: usize = 60;
/// Default cap on the number of simplices any homology run may build.
pub const DEFAULT_SIMPLEX_CAP: usize = 250_000;

/// Enumeration limits; `TVLAB_SIZE_CAP` overrides them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeCaps {
    pub vertices: usize,
    pub simplices: usize,
}

impl Default for SizeCaps {
    fn default() -> Self {
        SizeCaps { vertices: DEFAULT_VERTEX_CAP, simplices: DEFAULT_SIMPLEX_CAP }
    }
}

impl SizeCaps {
    /// Reads `TVLAB_SIZE_CAP`: either a bare number (vertex cap) or a
    /// comma list such as `vertices=200,simplices=500000`.
    pub fn from_env() -> Result<Self> {
        match std::env::var("TVLAB_SIZE_CAP") {
            Ok(v) => Self::parse(&v),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(spec: &str) -> Result<Self> {
        let mut caps = Self::default();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = item.split_once('=').unwrap_or(("vertices", item));
            let value: usize =
                value.trim().parse().map_err(|_| input_err!("bad size cap {item:?}"))?;
            match key.trim() {
                "vertices" => caps.vertices = value,
                "simplices" => caps.simplices = value,
                other => return Err(input_err!("unknown size cap key {other:?}")),
            }
        }
        Ok(caps)
    }
}

/// Surjection `[n] -> [k]`; `values[i]` is the image of `i + 1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Surjection {
    k: u8,
    values: Vec<u8>,
}

impl Surjection {
    pub fn new(k: usize, values: Vec<u8>) -> Result<Self> {
        let mut hit = vec![false; k];
        for &v in &values {
            if v == 0 || v as usize > k {
                return Err(input_err!("value {v} outside [1, {k}]"));
            }
            hit[v as usize - 1] = true;
        }
        if hit.iter().any(|h| !h) {
            return Err(input_err!("map {values:?} is not onto [1, {k}]"));
        }
        Ok(Surjection { k: k as u8, values })
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    /// Image of element `x` (1-based).
    pub fn at(&self, x: usize) -> usize {
        self.values[x - 1] as usize
    }

    /// Bitmask over elements (bit `i` = element `i + 1`) of `φ^{-1}(j)`.
    pub fn preimage_mask(&self, j: usize) -> u32 {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v as usize == j)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    pub fn as_partial(&self) -> PartialSurjection {
        PartialSurjection { k: self.k, values: self.values.clone() }
    }

    /// Block index of each element, 0-based, for the Tverberg side.
    pub fn block_labels(&self) -> Vec<usize> {
        self.values.iter().map(|&v| v as usize - 1).collect()
    }
}

impl fmt::Debug for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_partial())
    }
}

impl fmt::Display for Surjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_partial())
    }
}

/// Partial surjection `[n] -> [k]`; `0` marks an undefined entry. The
/// all-undefined map is the empty cell.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialSurjection {
    k: u8,
    values: Vec<u8>,
}

impl PartialSurjection {
    pub fn new(k: usize, values: Vec<u8>) -> Result<Self> {
        if values.iter().any(|&v| v as usize > k) {
            return Err(input_err!("value outside [0, {k}] in {values:?}"));
        }
        let p = PartialSurjection { k: k as u8, values };
        if !p.is_empty_cell() && (1..=k).any(|j| p.values.iter().all(|&v| v as usize != j)) {
            return Err(input_err!("partial map {:?} is not onto [1, {k}]", p.values));
        }
        Ok(p)
    }

    pub fn empty(n: usize, k: usize) -> Self {
        PartialSurjection { k: k as u8, values: vec![0; n] }
    }

    /// From blocks `X_1, …, X_k` of 1-based elements.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        let mut values = vec![0u8; n];
        for (j, b) in blocks.iter().enumerate() {
            for &x in b {
                if x == 0 || x > n || values[x - 1] != 0 {
                    return Err(input_err!("bad or repeated element {x}"));
                }
                values[x - 1] = (j + 1) as u8;
            }
        }
        PartialSurjection::new(blocks.len(), values)
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn k(&self) -> usize {
        self.k as usize
    }

    pub fn is_empty_cell(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn defined_count(&self) -> usize {
        self.values.iter().filter(|&&v| v != 0).count()
    }

    /// `|defined| - k`, and `-1` for the empty cell.
    pub fn dim(&self) -> i32 {
        if self.is_empty_cell() {
            -1
        } else {
            self.defined_count() as i32 - self.k as i32
        }
    }

    /// `X_j = η^{-1}(j)` as 1-based elements, `j = 1..=k`.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.k()];
        for (i, &v) in self.values.iter().enumerate() {
            if v != 0 {
                out[v as usize - 1].push(i + 1);
            }
        }
        out
    }

    pub fn block_mask(&self, j: usize) -> u32 {
        self.values
            .iter()
            .enumerate()
            .filter(|(_, &v)| v as usize == j)
            .fold(0, |m, (i, _)| m | (1 << i))
    }

    /// `other` agrees with `self` wherever `self` is defined.
    pub fn is_extended_by(&self, other: &PartialSurjection) -> bool {
        self.values.len() == other.values.len()
            && self.values.iter().zip(&other.values).all(|(&a, &b)| a == 0 || a == b)
    }

    /// Cells covering `self` in `C(n,k)`.
    pub fn upper_covers(&self) -> Vec<PartialSurjection> {
        if self.is_empty_cell() {
            return vertices_of_cnk(self.n(), self.k());
        }
        let mut out = Vec::new();
        for i in 0..self.values.len() {
            if self.values[i] == 0 {
                for v in 1..=self.k {
                    let mut vals = self.values.clone();
                    vals[i] = v;
                    out.push(PartialSurjection { k: self.k, values: vals });
                }
            }
        }
        out
    }
}

impl fmt::Display for PartialSurjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty_cell() {
            return write!(f, "(∅)");
        }
        let sep = if self.n() > 9 { "," } else { "" };
        let parts: Vec<String> = self
            .blocks()
            .iter()
            .map(|b| b.iter().map(usize::to_string).collect::<Vec<_>>().join(sep))
            .collect();
        write!(f, "({})", parts.join("|"))
    }
}

impl fmt::Debug for PartialSurjection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Vertices of `C(n,k)`: partial surjections defined on exactly `k` elements.
fn vertices_of_cnk(n: usize, k: usize) -> Vec<PartialSurjection> {
    all_partial_surjections(n, k).into_iter().filter(|p| p.defined_count() == k).collect()
}

/// Every map `[n] -> {0..=k}` that is onto `[k]` on its support, plus the empty cell.
fn all_partial_surjections(n: usize, k: usize) -> Vec<PartialSurjection> {
    let mut out = Vec::new();
    let mut vals = vec![0u8; n];
    loop {
        let p = PartialSurjection { k: k as u8, values: vals.clone() };
        if p.is_empty_cell() || (1..=k as u8).all(|j| vals.contains(&j)) {
            out.push(p);
        }
        // odometer over {0..=k}^n, last position fastest
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (vals[i] as usize) < k {
                vals[i] += 1;
                break;
            }
            vals[i] = 0;
        }
    }
}

/// All surjections `[n] -> [k]` in lexicographic order.
pub fn build_vnk(n: usize, k: usize) -> Vec<Surjection> {
    if k == 0 || n < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut vals = vec![1u8; n];
    loop {
        if (1..=k as u8).all(|j| vals.contains(&j)) {
            out.push(Surjection { k: k as u8, values: vals.clone() });
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if (vals[i] as usize) < k {
                vals[i] += 1;
                break;
            }
            vals[i] = 1;
        }
    }
}

/// All permutations of `[k]` (as `g[i-1] = g(i)`), lexicographic.
pub fn permutations(k: usize) -> Vec<Vec<u8>> {
    fn rec(cur: &mut Vec<u8>, used: &mut [bool], out: &mut Vec<Vec<u8>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                cur.push(v as u8 + 1);
                rec(cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

fn check_permutation(g: &[u8], k: usize) -> Result<()> {
    let mut seen = vec![false; k];
    if g.len() != k {
        return Err(input_err!("permutation has length {}, expected {k}", g.len()));
    }
    for &v in g {
        if v == 0 || v as usize > k || std::mem::replace(&mut seen[v as usize - 1], true) {
            return Err(input_err!("{g:?} is not a permutation of [1, {k}]"));
        }
    }
    Ok(())
}

/// `g·φ = g ∘ φ`: the part labelled `j` becomes the part labelled `g(j)`.
pub fn group_action(g: &[u8], phi: &Surjection) -> Result<Surjection> {
    check_permutation(g, phi.k())?;
    Ok(Surjection { k: phi.k, values: phi.values.iter().map(|&v| g[v as usize - 1]).collect() })
}

/// Same action on cells; the empty cell is fixed.
pub fn group_action_partial(g: &[u8], eta: &PartialSurjection) -> Result<PartialSurjection> {
    check_permutation(g, eta.k())?;
    Ok(PartialSurjection {
        k: eta.k,
        values: eta.values.iter().map(|&v| if v == 0 { 0 } else { g[v as usize - 1] }).collect(),
    })
}

/// A face of `K(n,k)`: its sorted vertices and the nonempty intersections
/// `X_j = ∩_φ φ^{-1}(j)` (1-based elements).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct KFace {
    pub vertices: Vec<Surjection>,
    pub x: Vec<Vec<usize>>,
}

impl KFace {
    /// The partial surjection with `η^{-1}(j) = X_j`.
    pub fn eta(&self) -> PartialSurjection {
        let n = self.vertices[0].n();
        PartialSurjection::from_blocks(n, &self.x).expect("face blocks are disjoint and nonempty")
    }
}

/// `Some(face)` iff every intersection `X_j` is nonempty.
pub fn face_check_knk(sigma: &[Surjection]) -> Result<Option<KFace>> {
    let Some(first) = sigma.first() else {
        return Ok(None);
    };
    let (n, k) = (first.n(), first.k());
    if sigma.iter().any(|p| p.n() != n || p.k() != k) {
        return Err(input_err!("surjections of different shapes"));
    }
    let mut x = Vec::with_capacity(k);
    for j in 1..=k {
        let mask = sigma.iter().fold(u32::MAX, |m, p| m & p.preimage_mask(j));
        if mask == 0 {
            return Ok(None);
        }
        x.push((0..n).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect());
    }
    let mut vertices = sigma.to_vec();
    vertices.sort();
    vertices.dedup();
    Ok(Some(KFace { vertices, x }))
}

/// Injection `ρ: [k] -> [n]` with its facet `{φ : φ∘ρ = id}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Facet {
    /// `rho[j-1] = ρ(j)`, 1-based.
    pub rho: Vec<usize>,
    pub vertices: Vec<Surjection>,
}

/// All injections `[k] -> [n]` in lexicographic order (1-based values).
pub fn injections(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for x in 1..=n {
            if !cur.contains(&x) {
                cur.push(x);
                rec(n, k, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out
}

/// Surjections `φ` with `φ(ρ(j)) = j`, lexicographic.
pub fn facet_of(n: usize, rho: &[usize]) -> Result<Vec<Surjection>> {
    let k = rho.len();
    let mut fixed = vec![0u8; n];
    for (j, &x) in rho.iter().enumerate() {
        if x == 0 || x > n || fixed[x - 1] != 0 {
            return Err(input_err!("{rho:?} is not an injection into [1, {n}]"));
        }
        fixed[x - 1] = (j + 1) as u8;
    }
    Ok(build_vnk(n, k)
        .into_iter()
        .filter(|p| p.values.iter().zip(&fixed).all(|(&v, &f)| f == 0 || v == f))
        .collect())
}

/// Facets of `K(n,k)`, one per injection, in lexicographic order of `ρ`.
/// `n = k` is accepted (each facet is a single bijection).
pub fn facets_knk(n: usize, k: usize) -> Vec<Facet> {
    injections(n, k)
        .into_iter()
        .map(|rho| {
            let vertices = facet_of(n, &rho).expect("valid injection");
            Facet { rho, vertices }
        })
        .collect()
}

/// Faces of `K(n,k)` as sorted vertex-index lists into `build_vnk(n, k)`,
/// in depth-first order. Refuses when `|V(n,k)|` exceeds `vertex_cap` or the
/// face count exceeds `face_cap`.
pub fn enumerate_faces_knk(
    n: usize,
    k: usize,
    vertex_cap: usize,
    face_cap: usize,
) -> Result<(Vec<Surjection>, Vec<Vec<usize>>)> {
    enumerate_faces_knk_upto(n, k, usize::MAX, vertex_cap, face_cap)
}

/// Faces with at most `max_size` vertices, otherwise as [`enumerate_faces_knk`].
pub fn enumerate_faces_knk_upto(
    n: usize,
    k: usize,
    max_size: usize,
    vertex_cap: usize,
    face_cap: usize,
) -> Result<(Vec<Surjection>, Vec<Vec<usize>>)> {
    if n > 32 {
        return Err(input_err!("n = {n} too large for bitmask faces"));
    }
    let verts = build_vnk(n, k);
    if verts.len() > vertex_cap {
        return Err(Error::SizeCap(format!(
            "|V({n},{k})| = {} exceeds vertex cap {vertex_cap}",
            verts.len()
        )));
    }
    let masks: Vec<Vec<u32>> =
        verts.iter().map(|p| (1..=k).map(|j| p.preimage_mask(j)).collect()).collect();
    let mut faces = Vec::new();
    let mut stack = Vec::new();
    let full = vec![if n == 32 { u32::MAX } else { (1u32 << n) - 1 }; k];
    grow_faces(&masks, 0, &full, max_size, &mut stack, &mut faces, face_cap)?;
    Ok((verts, faces))
}

fn grow_faces(
    masks: &[Vec<u32>],
    start: usize,
    x: &[u32],
    max_size: usize,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    for v in start..masks.len() {
        let y: Vec<u32> = x.iter().zip(&masks[v]).map(|(a, b)| a & b).collect();
        if y.iter().all(|&m| m != 0) {
            stack.push(v);
            out.push(stack.clone());
            if out.len() > cap {
                return Err(Error::SizeCap(format!("more than {cap} faces")));
            }
            if stack.len() < max_size {
                grow_faces(masks, v + 1, &y, max_size, stack, out, cap)?;
            }
            stack.pop();
        }
    }
    Ok(())
}

/// `C(n,k)` as a poset ordered by extension, empty cell included.
pub type CellPoset = Poset<PartialSurjection>;

/// Every cell of `C(n,k)` (sorted by dimension, then values) with covers
/// given by single-element extension and `∅ ⋖ vertex`.
pub fn build_cnk(n: usize, k: usize) -> Result<CellPoset> {
    if k == 0 || n < k {
        return Err(input_err!("C(n,k) needs n >= k >= 1, got n = {n}, k = {k}"));
    }
    let mut cells = all_partial_surjections(n, k);
    cells.sort_by(|a, b| a.dim().cmp(&b.dim()).then_with(|| a.values.cmp(&b.values)));
    let dims = cells.iter().map(PartialSurjection::dim).collect();
    Ok(Poset::from_covers(cells, dims, PartialSurjection::upper_covers))
}

/// Binomial coefficient.
pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of surjections `[s] -> [k]` by inclusion–exclusion.
pub fn surjection_count(s: usize, k: usize) -> u128 {
    let mut total: i128 = 0;
    for j in 0..=k {
        let term = binomial(k, j) as i128 * ((k - j) as i128).pow(s as u32);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total as u128
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComplexSummary {
    pub n: usize,
    pub k: usize,
    pub vnk_count: usize,
    pub facet_count: usize,
    pub facet_size: usize,
    /// Cells of `C(n,k)` by dimension (the empty cell at `-1`).
    pub cell_census: BTreeMap<i32, usize>,
    pub hasse_edges: usize,
}

pub fn summarize(n: usize, k: usize) -> Result<ComplexSummary> {
    let cnk = build_cnk(n, k)?;
    let facets = facets_knk(n, k);
    Ok(ComplexSummary {
        n,
        k,
        vnk_count: build_vnk(n, k).len(),
        facet_count: facets.len(),
        facet_size: facets.first().map_or(0, |f| f.vertices.len()),
        cell_census: cnk.census(),
        hasse_edges: cnk.edge_count(),
    })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct QuillenReport {
    pub n: usize,
    pub k: usize,
    pub vertices: usize,
    pub faces: usize,
    pub cells: usize,
    /// Every nonempty cell is `g(σ)` for some face.
    pub surjective: bool,
    pub order_reversing_violations: Vec<String>,
    pub fiber_violations: Vec<String>,
    /// Faces with `g·σ = σ` for some non-identity `g`.
    pub setwise_fixed_faces: usize,
}

impl QuillenReport {
    pub fn ok(&self) -> bool {
        self.surjective && self.order_reversing_violations.is_empty() && self.fiber_violations.is_empty()
    }
}

/// Check that `σ ↦ η_σ` reverses order and that the preimage of every upper
/// set `C_{⪰η}` (η nonempty) is exactly the nonempty subsets of
/// `σ_η = {φ : φ extends η}`.
pub fn quillen_map_and_fibers(n: usize, k: usize, caps: SizeCaps) -> Result<QuillenReport> {
    if n <= k || k == 0 {
        return Err(input_err!("need n > k >= 1"));
    }
    let (verts, faces) = enumerate_faces_knk(n, k, caps.vertices, caps.simplices)?;
    let cnk = build_cnk(n, k)?;
    let face_index: HashMap<&[usize], usize> =
        faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
    let etas: Vec<PartialSurjection> = faces
        .iter()
        .map(|f| {
            let sigma: Vec<Surjection> = f.iter().map(|&v| verts[v].clone()).collect();
            face_check_knk(&sigma).map(|o| o.expect("enumerated face").eta())
        })
        .collect::<Result<_>>()?;

    let mut report = QuillenReport {
        n,
        k,
        vertices: verts.len(),
        faces: faces.len(),
        cells: cnk.len(),
        ..Default::default()
    };

    // Order reversal on codimension-one pairs; longer chains follow.
    for (fi, face) in faces.iter().enumerate() {
        if face.len() < 2 {
            continue;
        }
        for drop in 0..face.len() {
            let sub: Vec<usize> =
                face.iter().enumerate().filter(|&(i, _)| i != drop).map(|(_, &v)| v).collect();
            let ti = face_index[sub.as_slice()];
            if !etas[fi].is_extended_by(&etas[ti]) {
                report
                    .order_reversing_violations
                    .push(format!("g({:?}) does not extend g({:?})", sub, face));
            }
        }
    }

    let images: std::collections::HashSet<&PartialSurjection> = etas.iter().collect();
    report.surjective = cnk.elements().iter().filter(|c| !c.is_empty_cell()).all(|c| images.contains(c));

    for eta in cnk.elements().iter().filter(|c| !c.is_empty_cell()) {
        let sigma_eta: Vec<usize> =
            (0..verts.len()).filter(|&v| eta.is_extended_by(&verts[v].as_partial())).collect();
        let fiber: Vec<usize> = (0..faces.len()).filter(|&f| eta.is_extended_by(&etas[f])).collect();
        let inside = fiber.iter().all(|&f| faces[f].iter().all(|v| sigma_eta.binary_search(v).is_ok()));
        let expected = (1u128 << sigma_eta.len()) - 1;
        if !inside || fiber.len() as u128 != expected {
            report.fiber_violations.push(format!(
                "fiber over {eta} has {} faces, expected {expected} subsets of {} vertices",
                fiber.len(),
                sigma_eta.len()
            ));
        }
    }

    let vindex: HashMap<&Surjection, usize> = verts.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let perms = permutations(k);
    for face in &faces {
        let fixed = perms.iter().skip(1).any(|g| {
            let mut moved: Vec<usize> = face
                .iter()
                .map(|&v| vindex[&group_action(g, &verts[v]).expect("valid permutation")])
                .collect();
            moved.sort_unstable();
            &moved == face
        });
        if fixed {
            report.setwise_fixed_faces += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tverberg::stirling2;

    fn factorial(n: usize) -> u128 {
        (1..=n as u128).product()
    }

    fn s(k: usize, v: &[u8]) -> Surjection {
        Surjection::new(k, v.to_vec()).unwrap()
    }

    #[test]
    fn vnk_counts() {
        assert_eq!(build_vnk(3, 2).len(), 6);
        assert_eq!(build_vnk(2, 2).len(), 2);
        assert_eq!(build_vnk(4, 2).len(), 14);
        assert!(build_vnk(2, 3).is_empty());
        for n in 1..=6 {
            for k in 1..=n {
                assert_eq!(build_vnk(n, k).len() as u128, factorial(k) * stirling2(n, k));
            }
        }
    }

    #[test]
    fn action_examples() {
        let phi = s(2, &[1, 1, 2]);
        assert_eq!(group_action(&[1, 2], &phi).unwrap(), phi);
        assert_eq!(group_action(&[2, 1], &phi).unwrap(), s(2, &[2, 2, 1]));
        assert!(group_action(&[1, 1], &phi).is_err());
    }

    #[test]
    fn action_axiom_and_freeness() {
        for n in 1..=5 {
            for k in 1..=3.min(n) {
                let perms = permutations(k);
                for phi in build_vnk(n, k) {
                    for (gi, g) in perms.iter().enumerate() {
                        let gphi = group_action(g, &phi).unwrap();
                        if gi != 0 {
                            assert_ne!(gphi, phi, "free on vertices");
                        }
                        for h in &perms {
                            let gh: Vec<u8> = h.iter().map(|&x| g[x as usize - 1]).collect();
                            let lhs = group_action(&gh, &phi).unwrap();
                            let rhs = group_action(g, &group_action(h, &phi).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn facets_small() {
        let f = facets_knk(3, 2);
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|x| x.vertices.len() == 2));
        // The facet graph is a 6-cycle.
        let verts = build_vnk(3, 2);
        let mut degree = vec![0; verts.len()];
        for x in &f {
            for v in &x.vertices {
                degree[verts.iter().position(|w| w == v).unwrap()] += 1;
            }
        }
        assert!(degree.iter().all(|&d| d == 2));
        let f = facets_knk(4, 2);
        assert_eq!(f.len(), 12);
        assert!(f.iter().all(|x| x.vertices.len() == 4));
        let f = facets_knk(4, 3);
        assert_eq!(f.len(), 24);
        assert!(f.iter().all(|x| x.vertices.len() == 3));
    }

    #[test]
    fn face_check_examples() {
        let phi = s(2, &[1, 2, 2]);
        let face = face_check_knk(std::slice::from_ref(&phi)).unwrap().unwrap();
        assert_eq!(face.x, vec![vec![1], vec![2, 3]]);
        assert!(face_check_knk(&[s(2, &[1, 2, 2]), s(2, &[2, 1, 2])]).unwrap().is_none());
        let face = face_check_knk(&[s(2, &[1, 2, 2]), s(2, &[1, 1, 2])]).unwrap().unwrap();
        assert_eq!(face.x, vec![vec![1], vec![3]]);
    }

    #[test]
    fn facets_pass_face_check() {
        for f in facets_knk(4, 2).into_iter().chain(facets_knk(5, 3)) {
            let face = face_check_knk(&f.vertices).unwrap().unwrap();
            // X_j collapses to {ρ(j)}
            let expect: Vec<Vec<usize>> = f.rho.iter().map(|&x| vec![x]).collect();
            assert_eq!(face.x, expect);
        }
    }

    #[test]
    fn cnk_small_counts() {
        let c = build_cnk(4, 2).unwrap();
        let census = c.census();
        assert_eq!(census[&0], 12);
        assert_eq!(census[&1], 24);
        assert_eq!(census[&2], 14);
        assert_eq!(census[&-1], 1);
        let c = build_cnk(3, 2).unwrap();
        assert_eq!(c.census()[&0], 6);
        assert_eq!(c.census()[&1], 6);
        // The 1-skeleton: every edge has two vertex faces.
        let vertex_edge_covers = c
            .hasse_edges()
            .filter(|&(a, b)| c.dim(a) == 0 && c.dim(b) == 1)
            .count();
        assert_eq!(vertex_edge_covers, 12);
    }

    #[test]
    fn figure_cell_dimension() {
        let cell = PartialSurjection::from_blocks(6, &[vec![1, 2, 5], vec![3], vec![4, 6]]).unwrap();
        assert_eq!(cell.dim(), 3);
        assert_eq!(cell.to_string(), "(125|3|46)");
    }

    #[test]
    fn cell_census_formula() {
        for n in 2..=6 {
            for k in 1..n.min(5) {
                let census = build_cnk(n, k).unwrap().census();
                for s in k..=n {
                    let expect = binomial(n, s) * surjection_count(s, k);
                    assert_eq!(census[&((s - k) as i32)] as u128, expect, "n={n} k={k} s={s}");
                }
            }
        }
    }

    #[test]
    fn quillen_small() {
        for (n, k) in [(3, 2), (4, 2), (4, 3)] {
            let r = quillen_map_and_fibers(n, k, SizeCaps::default()).unwrap();
            assert!(r.ok(), "{r:?}");
        }
        assert!(matches!(
            quillen_map_and_fibers(5, 3, SizeCaps::default()),
            Err(Error::SizeCap(_))
        ));
    }

    #[test]
    fn quillen_examples() {
        let f = &facets_knk(3, 2)[0];
        let eta = face_check_knk(&f.vertices).unwrap().unwrap().eta();
        // defined exactly on image(ρ) with η(ρ(j)) = j
        for (j, &x) in f.rho.iter().enumerate() {
            assert_eq!(eta.values()[x - 1] as usize, j + 1);
        }
        assert_eq!(eta.defined_count(), 2);
        let phi = s(2, &[2, 1, 1]);
        assert_eq!(face_check_knk(std::slice::from_ref(&phi)).unwrap().unwrap().eta(), phi.as_partial());
    }

    #[test]
    fn size_caps_parse() {
        assert_eq!(SizeCaps::parse("200").unwrap().vertices, 200);
        let c = SizeCaps::parse("vertices=10, simplices=99").unwrap();
        assert_eq!((c.vertices, c.simplices), (10, 99));
        assert!(SizeCaps::parse("cells=3").is_err());
    }
}
