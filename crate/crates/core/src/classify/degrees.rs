//! Degree pairs `{m + 1, n + 1}` of the parameters of a Steenrod-closed
//! `C3`-invariant parameter ideal. Three families:
//!
//! ```text
//! A: (3k, 2l)                                  l >= 1, 1 <= k <= 2^t, 2^t || l
//! B: (3i + 2^(s+r+1) - 2^(s+1), 2^(s+r+1) - 2^s)   s >= 0, r >= 1, 0 <= i < 2^(s-1)
//! C: (2^j, 2^j)                                j >= 0
//! ```
//!
//! The bound on `i` in family B is read over the rationals: at `s = 0` it is
//! `i < 1/2`, which admits `i = 0`, the same as at `s = 1`.
//! Listed pairs are necessary degree conditions only; nothing here claims each
//! pair is realized by an ideal.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Family {
    A,
    B,
    C,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
        };
        f.write_str(name)
    }
}

/// An unordered pair stored as `(low, high)`, with every family producing it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct DegreePair {
    pub low: u64,
    pub high: u64,
    pub families: Vec<Family>,
}

impl DegreePair {
    /// Same unordered pair, in either order.
    pub fn matches(&self, p: u64, q: u64) -> bool {
        (self.low, self.high) == (p.min(q), p.max(q))
    }
}

fn insert(out: &mut BTreeMap<(u64, u64), Vec<Family>>, p: u64, q: u64, family: Family, bound: u64) {
    if p == 0 || q == 0 || p > bound || q > bound {
        return;
    }
    let families = out.entry((p.min(q), p.max(q))).or_default();
    if !families.contains(&family) {
        families.push(family);
        families.sort();
    }
}

/// All admissible unordered pairs with both entries at most `bound`, sorted.
pub fn admissible_pairs(bound: u64) -> Vec<DegreePair> {
    let mut out = BTreeMap::new();
    // A: (3k, 2l)
    for l in 1..=bound / 2 {
        let max_k = 1u64 << l.trailing_zeros();
        for k in 1..=max_k.min(bound / 3) {
            insert(&mut out, 3 * k, 2 * l, Family::A, bound);
        }
    }
    // B: with s = 0, the bound 2^(s-1) = 1/2 still admits i = 0.
    let mut s = 0u32;
    while (1u64 << s) * 3 <= bound {
        let mut r = 1u32;
        while let Some(top) = 1u64.checked_shl(s + r + 1) {
            let second = top - (1u64 << s);
            if second > bound {
                break;
            }
            let base = top - (1u64 << (s + 1));
            let mut i = 0u64;
            while 2 * i < (1u64 << s) && base + 3 * i <= bound {
                insert(&mut out, base + 3 * i, second, Family::B, bound);
                i += 1;
            }
            r += 1;
        }
        s += 1;
    }
    // C
    let mut p = 1u64;
    while p <= bound {
        insert(&mut out, p, p, Family::C, bound);
        p *= 2;
    }
    out.into_iter()
        .map(|((low, high), families)| DegreePair { low, high, families })
        .collect()
}

/// Ordered grid points `(m, n)` in `[0, r]^2` with `{m + 1, n + 1}` admissible,
/// as a fraction of `(r + 1)^2`.
pub fn pair_density(r: u64) -> Ratio<u64> {
    let pairs = admissible_pairs(r + 1);
    let ordered: u64 = pairs
        .iter()
        .map(|p| if p.low == p.high { 1 } else { 2 })
        .sum();
    Ratio::new(ordered, (r + 1) * (r + 1))
}

/// Family-C pairs with both entries at most `r + 1`.
pub fn family_c_count(r: u64) -> u64 {
    admissible_pairs(r + 1)
        .iter()
        .filter(|p| p.families.contains(&Family::C))
        .count() as u64
}

/// `m_plus_1,n_plus_1,families`, families joined by `|`.
pub fn pairs_to_csv(pairs: &[DegreePair]) -> String {
    let mut out = String::from("m_plus_1,n_plus_1,families\n");
    for p in pairs {
        let families: Vec<String> = p.families.iter().map(Family::to_string).collect();
        out.push_str(&format!("{},{},{}\n", p.low, p.high, families.join("|")));
    }
    out
}
