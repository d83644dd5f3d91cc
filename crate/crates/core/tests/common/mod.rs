//! Slow, obviously-correct reference computations shared by the test targets.
//! Nothing here calls into the sumset engine.

#![allow(dead_code)]

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `mA` as a membership vector over `[0, m * max(A)]`, one summand at a time.
pub fn m_fold(a: &[u64], m: u64) -> Vec<bool> {
    let l = *a.last().unwrap();
    let mut cur = vec![false; (m * l + 1) as usize];
    for &x in a {
        cur[x as usize] = true;
    }
    for _ in 1..m {
        let mut next = vec![false; cur.len()];
        for (s, _) in cur.iter().enumerate().filter(|(_, &b)| b) {
            for &x in a {
                if s + (x as usize) < next.len() {
                    next[s + x as usize] = true;
                }
            }
        }
        cur = next;
    }
    cur
}

/// `mA` by listing every multiset of `m` elements (recursively).
pub fn m_fold_multisets(a: &[u64], m: u64) -> Vec<u64> {
    fn go(a: &[u64], start: usize, left: u64, sum: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(sum);
            return;
        }
        for i in start..a.len() {
            go(a, i, left - 1, sum + a[i], out);
        }
    }
    let mut out = Vec::new();
    go(a, 0, m, 0, &mut out);
    out.sort_unstable();
    out.dedup();
    out
}

/// Gaps of the semigroup generated by `a`, by the coin-change recurrence up
/// to `max(A)^2`, which exceeds every Frobenius number of a coprime set.
pub fn gaps(a: &[u64]) -> Vec<u64> {
    let l = *a.last().unwrap();
    let limit = (l * l + 2) as usize;
    let mut reach = vec![false; limit + 1];
    reach[0] = true;
    for z in 1..=limit {
        reach[z] = a.iter().any(|&x| x > 0 && x as usize <= z && reach[z - x as usize]);
    }
    (1..=limit as u64).filter(|&z| !reach[z as usize]).collect()
}

pub fn frobenius(a: &[u64]) -> i64 {
    gaps(a).last().map_or(-1, |&g| g as i64)
}

pub fn reflect(a: &[u64]) -> Vec<u64> {
    let l = *a.last().unwrap();
    let mut r: Vec<u64> = a.iter().map(|&x| l - x).collect();
    r.sort_unstable();
    r
}

/// `(k, r, M, Δ)` straight from the defining formulas.
pub fn shape(l: u64, n: u64) -> (i128, i128, i128, i128) {
    let (l, n) = (l as i128, n as i128);
    let (k, r) = ((l - 1) / (n - 2), (l - 1) % (n - 2));
    let big_m = l - n + 2;
    let delta = l * (k - 1) * (n - 3) + r * k * (n - 3) + r * r + k + 1;
    (k, r, big_m, delta)
}

/// Every `A` with `min 0`, `max l`, `|A| = n` and gcd 1, in no particular order.
pub fn sets(l: u64, n: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    if n < 2 || n > l + 1 {
        return out;
    }
    for mask in 0u64..1 << (l - 1) {
        if mask.count_ones() as u64 != n - 2 {
            continue;
        }
        let mut a = vec![0];
        a.extend((1..l).filter(|i| mask >> (i - 1) & 1 == 1));
        a.push(l);
        if a.iter().fold(0, |g, &x| gcd(g, x)) == 1 {
            out.push(a);
        }
    }
    out
}
