//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::Instant;

use num_traits::{One, Signed, Zero};
use tvlab::complexes::{
    build_cnk, build_vnk, facets_knk, group_action, injections, permutations, quillen_map_and_fibers, summarize,
    SizeCaps,
};
use tvlab::generate::{generate_random_colorful_system, random_point_family, random_polytope_family, Scheme};
use tvlab::geometry::{AffineFlat, Point, VPolytope};
use tvlab::homology::{cell_poset_homology, homology, knk_complex, knk_skeleton};
use tvlab::lp::{solve_feasibility, FeasibilityResult};
use tvlab::morse::lemma8_matching;
use tvlab::rational::{frac, Rational, RationalMatrix};
use tvlab::rng::SeededGenerator;
use tvlab::sarkaria::{act_on_matrix, equivariant_separators, facet_avoids_b, sarkaria_zero_in_hull};
use tvlab::trials::run_trials;
use tvlab::tverberg::{
    build_extremal, check_colorful_intersection, enumerate_partitions, extract_flat_transversal, find_tverberg,
    is_tverberg, theorem1_experiment, ColorSystem, Family, Verdict,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: tvlab::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

const BIG_CAPS: SizeCaps = SizeCaps { vertices: 1_000, simplices: 2_000_000 };

// Plain loops, kept apart from the library's own checks.
fn affine_combination(points: &[&Point], weights: &[Rational]) -> Option<Vec<Rational>> {
    if points.len() != weights.len() || weights.iter().any(Signed::is_negative) {
        return None;
    }
    if weights.iter().fold(Rational::zero(), |s, w| s + w) != Rational::one() {
        return None;
    }
    let d = points.first()?.dim();
    let mut out = vec![Rational::zero(); d];
    for (p, w) in points.iter().zip(weights) {
        for (o, c) in out.iter_mut().zip(p.coords()) {
            *o += c * w;
        }
    }
    Some(out)
}

fn certificate_holds(a: &[Vec<Rational>], b: &[Rational], r: &FeasibilityResult) -> bool {
    let cols = a.first().map_or(0, Vec::len);
    match r {
        FeasibilityResult::Feasible(x) => {
            x.len() == cols
                && x.iter().all(|v| !v.is_negative())
                && a.iter().zip(b).all(|(row, bi)| {
                    row.iter().zip(x).fold(Rational::zero(), |s, (p, q)| s + p * q) == *bi
                })
        }
        FeasibilityResult::Infeasible(y) => {
            let yb = y.iter().zip(b).fold(Rational::zero(), |s, (p, q)| s + p * q);
            y.len() == a.len()
                && yb.is_positive()
                && (0..cols).all(|c| {
                    a.iter().zip(y).fold(Rational::zero(), |s, (row, yi)| s + &row[c] * yi) <= Rational::zero()
                })
        }
    }
}

/// Exact LP: `p ∈ conv(poly)`, with the weights re-checked by hand.
fn in_polytope(poly: &VPolytope, p: &Point) -> Result<bool, String> {
    let verts = poly.vertices();
    let d = p.dim();
    let mut rows: Vec<Vec<Rational>> = (0..d).map(|c| verts.iter().map(|v| v.coords()[c].clone()).collect()).collect();
    rows.push(vec![Rational::one(); verts.len()]);
    let mut b = p.coords().to_vec();
    b.push(Rational::one());
    let res = lib(solve_feasibility(&lib(RationalMatrix::from_rows(rows.clone()))?, &b))?;
    ensure!(certificate_holds(&rows, &b, &res), "membership certificate does not verify");
    Ok(res.is_feasible())
}

/// Exact LP: `p ∈ base + span(directions)`, with free multipliers split.
fn on_flat(flat: &AffineFlat, p: &Point) -> Result<bool, String> {
    let d = p.dim();
    let rows: Vec<Vec<Rational>> = (0..d)
        .map(|c| flat.directions.iter().flat_map(|v| [v[c].clone(), -v[c].clone()]).collect())
        .collect();
    let b: Vec<Rational> = (0..d).map(|c| &p.coords()[c] - &flat.base.coords()[c]).collect();
    if rows[0].is_empty() {
        return Ok(b.iter().all(Zero::is_zero));
    }
    let res = lib(solve_feasibility(&lib(RationalMatrix::from_rows(rows.clone()))?, &b))?;
    ensure!(certificate_holds(&rows, &b, &res), "flat certificate does not verify");
    Ok(res.is_feasible())
}

fn tverberg_guarantee() -> Outcome {
    let mut checked = 0;
    for (d, k) in [(1, 2), (2, 2), (2, 3), (3, 2)] {
        let size = (d + 1) * (k - 1) + 1;
        for trial in 0..200 {
            let mut rng = SeededGenerator::for_trial(1000 + d as u64 * 10 + k as u64, trial);
            let fam = lib(random_point_family(d, size, 20, &mut rng))?;
            let w = lib(find_tverberg(&fam, k))?.ok_or(format!("no partition for d={d} k={k} trial {trial}"))?;
            ensure!(w.verify(&fam), "witness fails library check at d={d} k={k} trial {trial}");
            for (block, lam) in w.partition.blocks().iter().zip(&w.coefficients) {
                let pts: Vec<&Point> = block.iter().map(|&i| &fam.sets()[i].vertices()[0]).collect();
                let q = affine_combination(&pts, lam);
                ensure!(q.as_deref() == Some(w.point.coords()), "witness point off block {block:?} at d={d} k={k}");
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} point sets, all witnesses re-verified"))
}

fn theorem_one() -> Outcome {
    let mut total = 0;
    for (d, m, k, n) in [(2, 2, 2, 3), (4, 2, 2, 4), (3, 3, 2, 3)] {
        let r = lib(run_trials(d, m, k, n, 2024, 100, &Scheme::ALL))?;
        for (s, scheme) in Scheme::ALL.iter().enumerate() {
            let recs = &r.records[s * 100..(s + 1) * 100];
            let ok = recs.iter().filter(|x| x.verdict == Verdict::Success).count();
            ensure!(ok == 100, "{scheme} at ({d},{m},{k},{n}): {ok}/100 SUCCESS");
        }
        ensure!(r.count(Verdict::TheoremViolation) == 0, "violation at ({d},{m},{k},{n})");
        total += r.records.len();
    }
    Ok(format!("{total} instances, all SUCCESS"))
}

fn extremal_instances() -> Result<Vec<(usize, usize, usize, ColorSystem)>, String> {
    [(2, 2, 2), (4, 2, 2), (2, 2, 3)]
        .into_iter()
        .map(|(d, m, k)| Ok((d, m, k, lib(build_extremal(d, m, k, None, 11))?)))
        .collect()
}

fn tightness() -> Outcome {
    let mut partitions = 0;
    for (d, m, k, system) in extremal_instances()? {
        ensure!(lib(check_colorful_intersection(&system))?.is_none(), "({d},{m},{k}) is not colorful");
        let expected = (d / m + 1) * (k - 1);
        ensure!(system.n() == expected, "({d},{m},{k}) has {} sets, expected {expected}", system.n());
        for fam in system.families() {
            for p in lib(enumerate_partitions(fam.len(), k))? {
                ensure!(lib(is_tverberg(fam, &p))?.is_none(), "({d},{m},{k}) family {} admits {p}", fam.label);
                partitions += 1;
            }
        }
    }
    Ok(format!("{partitions} partitions checked, none Tverberg"))
}

fn observation_five() -> Outcome {
    let mut rng = SeededGenerator::new(55);
    let mut cases = 0;
    for f in 0..50 {
        let d = 1 + rng.below(2);
        let n = 2 + rng.below(5);
        let fam: Family = if f % 2 == 0 {
            lib(random_point_family(d, n, 6, &mut rng))?
        } else {
            lib(random_polytope_family(d, n, &mut rng))?
        };
        for k in 2..=3.min(n) {
            for p in lib(enumerate_partitions(n, k))? {
                let lifted = lib(sarkaria_zero_in_hull(&fam, &p))?.is_some();
                let direct = lib(is_tverberg(&fam, &p))?.is_some();
                ensure!(lifted == direct, "family {f} partition {p}: lift {lifted}, direct {direct}");
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} partitions over 50 families agree"))
}

fn separators() -> Outcome {
    let mut facets = 0;
    for (d, m, k, system) in extremal_instances()? {
        let n = system.n();
        let mut assignments = Vec::new();
        for fam in system.families() {
            let a = lib(equivariant_separators(fam, k))?;
            for g in permutations(k) {
                for phi in build_vnk(n, k) {
                    let gphi = lib(group_action(&g, &phi))?;
                    let lhs = act_on_matrix(&g, a.get(&phi).ok_or("missing separator")?);
                    ensure!(Some(&lhs) == a.get(&gphi), "({d},{m},{k}) g={g:?} phi={phi}: not equivariant");
                }
            }
            assignments.push(a);
        }
        let rhos = injections(n, k);
        let mut choices: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for _ in 0..m {
            choices = choices
                .into_iter()
                .flat_map(|c| rhos.iter().map(move |r| [c.clone(), vec![r.clone()]].concat()))
                .collect();
        }
        for c in &choices {
            let r = lib(facet_avoids_b(&system, c, &assignments))?;
            ensure!(r.all_positive && r.hull_misses_b, "({d},{m},{k}) facet {c:?}: min margin {}", r.min_margin);
            facets += 1;
        }
    }
    Ok(format!("equivariant on 3 instances, {facets} facet choices strictly positive"))
}

fn transversal_pipeline() -> Outcome {
    let system = lib(generate_random_colorful_system(3, 2, 2, 3, 1, Scheme::AxisSlabs))?;
    let report = lib(theorem1_experiment(&system, 2))?;
    ensure!(report.verdict == Verdict::Success, "verdict {:?}", report.verdict);
    let label = &report.families.iter().find(|f| f.witness.is_some()).ok_or("no successful family")?.label;
    let fam = system.families().iter().find(|f| &f.label == label).ok_or("label lookup")?;
    let w = lib(find_tverberg(fam, 2))?.ok_or("search disagrees with report")?;
    let t = lib(extract_flat_transversal(fam, &w))?;
    ensure!(t.flat.dim() <= 1, "flat has dimension {}", t.flat.dim());
    for (i, (set, hit)) in fam.sets().iter().zip(&t.hits).enumerate() {
        ensure!(in_polytope(set, hit)?, "hit {i} outside its set");
        ensure!(on_flat(&t.flat, hit)?, "hit {i} off the flat");
    }
    Ok(format!("family {label}: flat of dimension {} meets all 3 sets", t.flat.dim()))
}

fn stirling(n: usize, k: usize) -> u128 {
    if n == 0 && k == 0 {
        return 1;
    }
    if n == 0 || k == 0 {
        return 0;
    }
    k as u128 * stirling(n - 1, k) + stirling(n - 1, k - 1)
}

fn choose(n: usize, r: usize) -> u128 {
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

fn combinatorics() -> Outcome {
    let mut pairs = 0;
    for n in 1..=6 {
        for k in 1..=4.min(n) {
            let s = lib(summarize(n, k))?;
            let vnk = factorial(k) * stirling(n, k);
            ensure!(s.vnk_count as u128 == vnk, "|V({n},{k})| = {}, expected {vnk}", s.vnk_count);
            let fc = factorial(n) / factorial(n - k);
            ensure!(s.facet_count as u128 == fc, "facets({n},{k}) = {}, expected {fc}", s.facet_count);
            let fs = (k as u128).pow((n - k) as u32);
            ensure!(s.facet_size as u128 == fs, "facet size ({n},{k}) = {}, expected {fs}", s.facet_size);
            ensure!(facets_knk(n, k).iter().all(|f| f.vertices.len() as u128 == fs), "uneven facets ({n},{k})");
            for size in k..=n {
                let want = choose(n, size) * factorial(k) * stirling(size, k);
                let got = s.cell_census.get(&((size - k) as i32)).copied().unwrap_or(0) as u128;
                ensure!(got == want, "C({n},{k}) has {got} cells with {size} defined, expected {want}");
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} (n,k) pairs match"))
}

fn trimmed(b: &[usize]) -> Vec<usize> {
    let mut v = b.to_vec();
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn quillen() -> Outcome {
    let mut notes = Vec::new();
    for (n, k) in [(3, 2), (4, 2), (4, 3)] {
        let q = lib(quillen_map_and_fibers(n, k, BIG_CAPS))?;
        ensure!(q.ok(), "Quillen check fails at ({n},{k}): {:?} {:?}", q.order_reversing_violations, q.fiber_violations);
        let kb = lib(homology(&lib(knk_complex(n, k, BIG_CAPS))?, None))?;
        let cb = lib(cell_poset_homology(&lib(build_cnk(n, k))?, BIG_CAPS.simplices, None))?;
        ensure!(trimmed(&kb.betti) == trimmed(&cb.betti), "({n},{k}): K {:?} vs C {:?}", kb.betti, cb.betti);
        ensure!(kb.torsion.iter().all(Vec::is_empty), "({n},{k}) has torsion");
        if (n, k) == (4, 2) {
            ensure!(trimmed(&kb.betti) == [1, 0, 1], "K(4,2) Betti {:?}", kb.betti);
        }
        notes.push(format!("K({n},{k}) {:?}", trimmed(&kb.betti)));
    }
    Ok(notes.join(", "))
}

fn lemma_eight() -> Outcome {
    let mut cells = 0;
    for n in 2..=6 {
        for k in 1..=4.min(n - 1) {
            let (p, _, r) = lib(lemma8_matching(n, k))?;
            ensure!(r.acyclic, "C({n},{k}) matching has a cycle");
            ensure!(r.audit_balanced, "C({n},{k}) Euler audit unbalanced");
            ensure!(r.critical.iter().all(|c| c.dim == (n - k) as i32), "C({n},{k}) critical dims {:?}", r.critical_by_dim);
            if k == 1 {
                ensure!(r.critical.is_empty(), "C({n},1) has critical cells");
            }
            if (n, k) == (6, 3) {
                ensure!(p.len() == 2101, "C(6,3) has {} elements", p.len());
            }
            cells += p.len();
        }
    }
    let (_, _, r) = lib(lemma8_matching(3, 2))?;
    let names: Vec<&str> = r.critical.iter().map(|c| c.cell.as_str()).collect();
    ensure!(names == ["(3|12)"], "C(3,2) critical {names:?}");
    let (_, _, r) = lib(lemma8_matching(4, 2))?;
    ensure!(r.critical.len() == 1 && r.critical[0].dim == 2, "C(4,2) critical {:?}", r.critical);
    Ok(format!("acyclic with critical dim n-k on {cells} cells"))
}

fn lemma_four() -> Outcome {
    let mut notes = Vec::new();
    for (n, k) in [(3, 2), (4, 2), (4, 3), (5, 3), (5, 4)] {
        let top = n - k - 1;
        let x = lib(knk_skeleton(n, k, n - k, BIG_CAPS))?;
        let h = lib(homology(&x, Some(top)))?;
        ensure!(h.reduced_vanishes_through(top), "K({n},{k}) reduced Betti {:?}", h.reduced_betti);
        notes.push(format!("K({n},{k}) through {top}"));
    }
    let h = lib(cell_poset_homology(&lib(build_cnk(3, 2))?, BIG_CAPS.simplices, None))?;
    ensure!(h.betti.get(1) == Some(&1), "C(3,2) Betti {:?}", h.betti);
    let k32 = lib(homology(&lib(knk_complex(3, 2, BIG_CAPS))?, None))?;
    ensure!(k32.betti == [1, 1], "K(3,2) Betti {:?}", k32.betti);
    Ok(format!("{}; hexagon Betti_1 = 1", notes.join(", ")))
}

fn lp_kernel() -> Outcome {
    let mut rng = SeededGenerator::new(11);
    let (mut feasible, mut infeasible) = (0, 0);
    for _ in 0..1000 {
        let rows = 1 + rng.below(8);
        let cols = 1 + rng.below(12);
        let entry = |rng: &mut SeededGenerator| frac(rng.range_i64(-6, 6), rng.range_i64(1, 4));
        let a: Vec<Vec<Rational>> = (0..rows).map(|_| (0..cols).map(|_| entry(&mut rng)).collect()).collect();
        let b: Vec<Rational> = (0..rows).map(|_| entry(&mut rng)).collect();
        let res = lib(solve_feasibility(&lib(RationalMatrix::from_rows(a.clone()))?, &b))?;
        ensure!(certificate_holds(&a, &b, &res), "certificate fails for {a:?} {b:?}");
        let scale: Vec<Rational> = (0..rows).map(|_| frac(rng.range_i64(1, 9), rng.range_i64(1, 9))).collect();
        let sa: Vec<Vec<Rational>> =
            a.iter().zip(&scale).map(|(row, s)| row.iter().map(|v| v * s).collect()).collect();
        let sb: Vec<Rational> = b.iter().zip(&scale).map(|(v, s)| v * s).collect();
        let scaled = lib(solve_feasibility(&lib(RationalMatrix::from_rows(sa.clone()))?, &sb))?;
        ensure!(certificate_holds(&sa, &sb, &scaled), "scaled certificate fails");
        ensure!(scaled.is_feasible() == res.is_feasible(), "row scaling changed the outcome");
        if res.is_feasible() {
            feasible += 1;
        } else {
            infeasible += 1;
        }
    }
    ensure!(feasible > 0 && infeasible > 0, "degenerate sample: {feasible} feasible, {infeasible} infeasible");
    Ok(format!("{feasible} feasible, {infeasible} infeasible, all certificates verify"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("tverberg guarantee", tverberg_guarantee),
        ("colorful experiment", theorem_one),
        ("tightness", tightness),
        ("lift equivalence", observation_five),
        ("separators", separators),
        ("flat transversal", transversal_pipeline),
        ("complex combinatorics", combinatorics),
        ("quillen fibers", quillen),
        ("morse matching", lemma_eight),
        ("connectivity", lemma_four),
        ("lp kernel", lp_kernel),
    ];
    let only: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("PASS {id:>2} {name} ({secs:.1}s): {msg}"),
            Err(msg) => {
                failed += 1;
                println!("FAIL {id:>2} {name} ({secs:.1}s): {msg}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
