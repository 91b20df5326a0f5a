#![allow(dead_code)]

use heegaard::{Letter, Presentation, Sign, Word};
use rand::Rng;

pub fn names(m: usize) -> Vec<String> {
    (1..=m).map(|i| format!("x{i}")).collect()
}

pub fn presentation(m: usize, words: Vec<Vec<Letter>>) -> Presentation {
    Presentation::new(names(m), words.into_iter().map(Word::new).collect()).unwrap()
}

pub fn random_letter<R: Rng>(rng: &mut R, m: usize) -> Letter {
    let sign = if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    };
    Letter::new(rng.gen_range(0..m), sign)
}

/// Random words, possibly unreduced, with total length `1..=max_degree`.
pub fn random_raw<R: Rng>(
    rng: &mut R,
    m: usize,
    max_relators: usize,
    max_degree: usize,
) -> Presentation {
    let relators = rng.gen_range(1..=max_relators);
    let total = rng.gen_range(relators.max(1)..=max_degree.max(relators));
    let mut words = vec![Vec::new(); relators];
    for i in 0..total {
        let r = if i < relators {
            i
        } else {
            rng.gen_range(0..relators)
        };
        words[r].push(random_letter(rng, m));
    }
    presentation(m, words)
}

/// Random cyclically reduced words with total length at most `max_degree`.
pub fn random_reduced<R: Rng>(
    rng: &mut R,
    m: usize,
    max_relators: usize,
    max_degree: usize,
) -> Presentation {
    let relators = rng.gen_range(1..=max_relators);
    let words = (0..relators)
        .map(|_| {
            let len = rng.gen_range(1..=(max_degree / relators).max(1));
            let mut w: Vec<Letter> = Vec::with_capacity(len);
            while w.len() < len {
                let l = random_letter(rng, m);
                if w.last().is_some_and(|&p: &Letter| p.is_inverse_of(l)) {
                    continue;
                }
                if w.len() + 1 == len && len > 1 && w[0].is_inverse_of(l) {
                    continue;
                }
                w.push(l);
            }
            w
        })
        .collect();
    presentation(m, words)
}

/// Every single-relator presentation on `m` generators with one word of
/// length `1..=max_len`.
pub fn all_single_relators(m: usize, max_len: usize) -> Vec<Presentation> {
    let alphabet: Vec<Letter> = (0..m)
        .flat_map(|g| [Letter::pos(g), Letter::neg(g)])
        .collect();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| {
                alphabet.iter().map(move |&l| {
                    let mut w = w.clone();
                    w.push(l);
                    w
                })
            })
            .collect();
        out.extend(layer.iter().map(|w| presentation(m, vec![w.clone()])));
    }
    out
}

/// Product of the first `k` invariant factors equals the gcd of all `k×k`
/// minors. Independent of any elimination order.
pub fn determinantal_divisors(matrix: &[Vec<i64>]) -> Vec<i64> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for k in 1..=rows.min(cols) {
        let mut g = 0i64;
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| matrix[r][c]).collect())
                    .collect();
                g = gcd(g, det(&minor).abs());
            }
        }
        out.push(g);
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut with_last: Vec<Vec<usize>> = subsets(n - 1, k - 1);
    for s in &mut with_last {
        s.push(n - 1);
    }
    let mut out = subsets(n - 1, k);
    out.extend(with_last);
    out
}

fn det(a: &[Vec<i64>]) -> i64 {
    match a.len() {
        0 => 1,
        1 => a[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = a[1..]
                    .iter()
                    .map(|row| {
                        row.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &v)| v)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * a[0][j] * det(&minor)
            })
            .sum(),
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
