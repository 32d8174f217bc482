//! Small combinatorial helpers shared across modules.

/// All size-`t` subsets of `{0, .., k-1}` as sorted index vectors, in
/// lexicographic order.
pub fn subsets_lex(k: usize, t: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if t > k {
        return out;
    }
    let mut current: Vec<usize> = (0..t).collect();
    loop {
        out.push(current.clone());
        // advance to the next combination
        let mut i = t;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + k - t {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..t {
            current[j] = current[j - 1] + 1;
        }
    }
}

pub fn binomial(n: usize, r: usize) -> u128 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}
