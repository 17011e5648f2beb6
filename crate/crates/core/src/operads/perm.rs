//! Permutations of `0..n` as image vectors.

/// All permutations of `0..n` in lexicographic order.
pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("successor exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

/// `(a∘b)(q) = a(b(q))`.
pub fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&q| a[q]).collect()
}

pub fn inverse(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        out[v] = i;
    }
    out
}

pub fn parity(p: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv % 2
}

pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// `π` with `keys[π[0]] < keys[π[1]] < …`: new position `p` holds old position `π[p]`.
pub fn argsort<T: Ord>(keys: &[T]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&a, &b| keys[a].cmp(&keys[b]));
    idx
}
