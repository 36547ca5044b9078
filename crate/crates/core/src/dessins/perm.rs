//! Zero-based permutations stored as image arrays of `u8`.

pub type Perm = Vec<u8>;

pub fn identity(d: usize) -> Perm {
    (0..d as u8).collect()
}

/// `(a ∘ b)(x) = a(b(x))`.
pub fn compose(a: &[u8], b: &[u8]) -> Perm {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn inverse(a: &[u8]) -> Perm {
    let mut inv = vec![0u8; a.len()];
    for (x, &y) in a.iter().enumerate() {
        inv[y as usize] = x as u8;
    }
    inv
}

pub fn is_permutation(a: &[u8]) -> bool {
    let mut seen = vec![false; a.len()];
    for &y in a {
        match seen.get_mut(y as usize) {
            Some(s) if !*s => *s = true,
            _ => return false,
        }
    }
    true
}

/// Cycle lengths in descending order.
pub fn cycle_type(a: &[u8]) -> Vec<u32> {
    let mut seen = vec![false; a.len()];
    let mut lens = Vec::new();
    for start in 0..a.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = a[x] as usize;
            len += 1;
        }
        lens.push(len);
    }
    lens.sort_unstable_by(|a, b| b.cmp(a));
    lens
}

pub fn cycle_count(a: &[u8]) -> usize {
    cycle_type(a).len()
}

/// Whether `<a, b>` acts transitively on the points.
pub fn is_transitive(a: &[u8], b: &[u8]) -> bool {
    let d = a.len();
    if d == 0 {
        return false;
    }
    let mut seen = vec![false; d];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for y in [a[x] as usize, b[x] as usize] {
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == d
}

/// Partitions of `d` as descending part lists, in reverse lexicographic order.
pub fn partitions(d: usize) -> Vec<Vec<u32>> {
    fn go(rest: usize, max: usize, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=max.min(rest)).rev() {
            prefix.push(part as u32);
            go(rest - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(d, d, &mut Vec::new(), &mut out);
    out
}

/// The permutation whose cycles are consecutive blocks of the given lengths.
pub fn class_representative(parts: &[u32]) -> Perm {
    let d: u32 = parts.iter().sum();
    let mut p = vec![0u8; d as usize];
    let mut start = 0usize;
    for &len in parts {
        let len = len as usize;
        for k in 0..len {
            p[start + k] = (start + (k + 1) % len) as u8;
        }
        start += len;
    }
    p
}

/// Every permutation of `d` points, in lexicographic order.
pub fn all_permutations(d: usize) -> Vec<Perm> {
    let mut cur = identity(d);
    let mut out = vec![cur.clone()];
    // next_permutation
    loop {
        let Some(i) = (1..d).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..d).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (1..=8).map(|d| partitions(d).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn representative_has_requested_cycle_type() {
        for parts in partitions(7) {
            assert_eq!(cycle_type(&class_representative(&parts)), parts);
        }
    }

    #[test]
    fn permutation_listing() {
        let all = all_permutations(4);
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert!(all.iter().all(|p| is_permutation(p)));
    }

    #[test]
    fn compose_and_inverse() {
        let a = vec![1, 2, 0];
        assert_eq!(compose(&a, &inverse(&a)), identity(3));
        assert_eq!(compose(&a, &a), vec![2, 0, 1]);
    }

    #[test]
    fn transitivity() {
        assert!(!is_transitive(&[0, 1], &[0, 1]));
        assert!(is_transitive(&[1, 0], &[0, 1]));
        assert!(!is_transitive(&[1, 0, 3, 2], &[0, 1, 2, 3]));
    }
}
