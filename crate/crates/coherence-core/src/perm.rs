//! Permutations of `{1..n}` in 0-based one-line notation.

use alloc::vec::Vec;

/// All permutations of `{0..n-1}` in lexicographic order of one-line notation.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = alloc::vec![false; n];
    rec(n, &mut current, &mut used, &mut out);
    out
}

fn rec(n: usize, current: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
    if current.len() == n {
        out.push(current.clone());
        return;
    }
    for k in 0..n {
        if !used[k] {
            used[k] = true;
            current.push(k);
            rec(n, current, used, out);
            current.pop();
            used[k] = false;
        }
    }
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// The order-reversing (longest) permutation.
pub fn longest(n: usize) -> Vec<usize> {
    (0..n).rev().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_count_and_order() {
        let p3 = all_permutations(3);
        assert_eq!(p3.len(), 6);
        assert_eq!(p3[0], alloc::vec![0, 1, 2]);
        assert_eq!(p3[5], alloc::vec![2, 1, 0]);
        assert_eq!(all_permutations(4).len(), 24);
    }
}
