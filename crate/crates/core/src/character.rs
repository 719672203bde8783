//! Irreducible characters of the symmetric groups via Murnaghan–Nakayama.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::partition::Partition;

type Key = (Vec<usize>, Vec<usize>);

fn cache() -> &'static Mutex<HashMap<Key, i64>> {
    static CACHE: OnceLock<Mutex<HashMap<Key, i64>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `χ_μ(ρ)`: the character of `𝕊(μ)` on the class of cycle type `ρ`.
pub fn mn_character(mu: &Partition, rho: &Partition) -> Result<i64> {
    if mu.size() != rho.size() {
        return Err(Error::DegreeMismatch {
            left: mu.size(),
            right: rho.size(),
        });
    }
    Ok(chi(mu.parts(), rho.parts()))
}

fn chi(mu: &[usize], rho: &[usize]) -> i64 {
    let Some((&k, rest)) = rho.split_first() else {
        return 1;
    };
    let key = (mu.to_vec(), rho.to_vec());
    if let Some(&v) = cache().lock().unwrap().get(&key) {
        return v;
    }
    // beta numbers: distinct, decreasing
    let len = mu.len();
    let beta: Vec<usize> = mu.iter().enumerate().map(|(i, &p)| p + len - 1 - i).collect();
    let mut total = 0i64;
    for i in 0..len {
        let Some(target) = beta[i].checked_sub(k) else {
            continue;
        };
        if beta.contains(&target) {
            continue;
        }
        let between = beta.iter().filter(|&&b| b > target && b < beta[i]).count();
        let mut next = beta.clone();
        next[i] = target;
        next.sort_unstable_by(|a, b| b.cmp(a));
        let shape: Vec<usize> = next
            .iter()
            .enumerate()
            .map(|(j, &b)| b - (len - 1 - j))
            .filter(|&p| p > 0)
            .collect();
        let sign = if between % 2 == 0 { 1 } else { -1 };
        total += sign * chi(&shape, rest);
    }
    // benign race: two threads may compute and insert the same value
    cache().lock().unwrap().insert(key, total);
    total
}
