use rayon::prelude::*;

use crate::error::Result;
use crate::geometry::hulls_common_point;

use super::ColorSystem;

/// Lexicographically first choice `(i_1, …, i_m)` whose sets fail to share a
/// point, or `None` when every one of the `n^m` choices intersects.
pub fn check_colorful_intersection(system: &ColorSystem) -> Result<Option<Vec<usize>>> {
    let n = system.n();
    let m = system.m();
    let total = (n as u64).checked_pow(m as u32).expect("n^m fits in u64");
    (0..total)
        .into_par_iter()
        .find_map_first(|code| {
            let choice = decode(code, n, m);
            let parts: Vec<_> = choice
                .iter()
                .zip(system.families())
                .map(|(&i, f)| f.sets()[i].vertices().to_vec())
                .collect();
            match hulls_common_point(&parts) {
                Ok(Some(_)) => None,
                Ok(None) => Some(Ok(choice)),
                Err(e) => Some(Err(e)),
            }
        })
        .transpose()
}

/// Mixed-radix digits of `code`, most significant first.
fn decode(mut code: u64, n: usize, m: usize) -> Vec<usize> {
    let mut out = vec![0; m];
    for slot in out.iter_mut().rev() {
        *slot = (code % n as u64) as usize;
        code /= n as u64;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{Point, VPolytope};
    use crate::tverberg::Family;

    fn seg(a: &[i64], b: &[i64]) -> VPolytope {
        VPolytope::new(vec![Point::from_ints(a), Point::from_ints(b)]).unwrap()
    }

    #[test]
    fn crossing_grid_is_colorful() {
        let h = Family::new("h", (0..3).map(|y| seg(&[-1, y], &[3, y])).collect()).unwrap();
        let v = Family::new("v", (0..3).map(|x| seg(&[x, -1], &[x, 3])).collect()).unwrap();
        let s = ColorSystem::new(2, vec![h, v]).unwrap();
        assert_eq!(check_colorful_intersection(&s).unwrap(), None);
    }

    #[test]
    fn disjoint_pair_is_reported() {
        let a = Family::new("a", vec![seg(&[0, 0], &[1, 0])]).unwrap();
        let b = Family::new("b", vec![seg(&[0, 1], &[1, 1])]).unwrap();
        let s = ColorSystem::new(2, vec![a, b]).unwrap();
        assert_eq!(check_colorful_intersection(&s).unwrap(), Some(vec![0, 0]));
    }

    #[test]
    fn first_violation_is_lexicographic() {
        // b's set 1 misses a's set 1 only; b's set 2 misses everything.
        let a = Family::new(
            "a",
            vec![seg(&[0, 0], &[4, 0]), seg(&[0, 0], &[1, 0]), seg(&[0, 0], &[5, 0])],
        )
        .unwrap();
        let b = Family::new(
            "b",
            vec![seg(&[0, -1], &[0, 1]), seg(&[3, -1], &[3, 1]), seg(&[9, -1], &[9, 1])],
        )
        .unwrap();
        let s = ColorSystem::new(2, vec![a, b]).unwrap();
        assert_eq!(check_colorful_intersection(&s).unwrap(), Some(vec![0, 2]));
    }

    #[test]
    fn decode_is_lexicographic() {
        assert_eq!(decode(0, 3, 2), vec![0, 0]);
        assert_eq!(decode(1, 3, 2), vec![0, 1]);
        assert_eq!(decode(5, 3, 2), vec![1, 2]);
    }
}
