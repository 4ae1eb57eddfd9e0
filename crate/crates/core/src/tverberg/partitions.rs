use crate::error::{input_err, Result};

use super::KPartition;

/// Stirling number of the second kind.
pub fn stirling2(n: usize, k: usize) -> u128 {
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// All partitions of `{0,…,n-1}` into exactly `k` blocks, in lexicographic
/// order of their restricted-growth strings.
pub fn enumerate_partitions(n: usize, k: usize) -> Result<PartitionIter> {
    if k == 0 {
        return Err(input_err!("k must be at least 1"));
    }
    let first = if k > n {
        None
    } else {
        let mut rgs = vec![0; n - k + 1];
        rgs.extend(1..k);
        Some(rgs)
    };
    Ok(PartitionIter { k, next: first })
}

pub struct PartitionIter {
    k: usize,
    next: Option<Vec<usize>>,
}

impl PartitionIter {
    fn successor(&self, a: &[usize]) -> Option<Vec<usize>> {
        let n = a.len();
        let k = self.k;
        // prefix_max[i] = max(a[0..i])
        let mut prefix_max = vec![0; n + 1];
        for i in 0..n {
            prefix_max[i + 1] = prefix_max[i].max(a[i]);
        }
        for i in (1..n).rev() {
            if a[i] + 1 >= k || a[i] > prefix_max[i] {
                continue;
            }
            let v = a[i] + 1;
            let m = prefix_max[i].max(v);
            let room = n - 1 - i;
            let missing = k - 1 - m;
            if missing > room {
                continue;
            }
            let mut out = a[..i].to_vec();
            out.push(v);
            out.extend(std::iter::repeat_n(0, room - missing));
            out.extend(m + 1..k);
            return Some(out);
        }
        None
    }
}

impl Iterator for PartitionIter {
    type Item = KPartition;

    fn next(&mut self) -> Option<KPartition> {
        let cur = self.next.take()?;
        self.next = self.successor(&cur);
        Some(KPartition::from_rgs(&cur))
    }
}
