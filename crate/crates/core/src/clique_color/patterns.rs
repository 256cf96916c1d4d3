//! Coincidence patterns inside a vertex subset and the search for a subset
//! whose derived symbol set is large.

use rand::seq::index::sample;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::latin::LatinSquare;
use crate::rng::{mix, rng_from_seed};

/// `C(a, b)` above this is searched by random draws instead of enumeration.
pub const EXHAUSTIVE_LIMIT: u128 = 1_000_000;
/// Random `b`-subsets tried when enumeration is too large.
pub const SAMPLED_DRAWS: usize = 10_000;

/// `A' = { L[i][j] : i, j in A, i != j }` with the multiplicity of each symbol
/// over ordered pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedSymbols {
    /// `(symbol, r_x)`, sorted by symbol.
    pub multiplicities: Vec<(usize, usize)>,
}

impl DerivedSymbols {
    pub fn len(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }

    pub fn symbols(&self) -> impl Iterator<Item = usize> + '_ {
        self.multiplicities.iter().map(|&(s, _)| s)
    }

    /// `sum_x C(r_x, 2)`.
    pub fn coincidence_pairs(&self) -> u64 {
        self.multiplicities
            .iter()
            .map(|&(_, r)| (r as u64) * (r as u64).saturating_sub(1) / 2)
            .sum()
    }
}

fn check_subset(l: &LatinSquare, a: &[usize]) -> Result<Vec<bool>> {
    let n = l.order();
    let mut member = vec![false; n];
    for &v in a {
        if v >= n {
            return Err(Error::VertexIndex { vertex: v, n });
        }
        member[v] = true;
    }
    Ok(member)
}

fn dedup_sorted(a: &[usize]) -> Vec<usize> {
    let mut v = a.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

pub fn derived_symbols(l: &LatinSquare, a: &[usize]) -> Result<DerivedSymbols> {
    check_subset(l, a)?;
    let a = dedup_sorted(a);
    let mut counts = vec![0usize; l.order()];
    for &i in &a {
        for &j in &a {
            if i != j {
                counts[l.get(i, j)] += 1;
            }
        }
    }
    Ok(DerivedSymbols {
        multiplicities: counts
            .into_iter()
            .enumerate()
            .filter(|&(_, r)| r > 0)
            .collect(),
    })
}

/// `n2`: unordered pairs with `L[i][j] == L[j][i]`; `n3`: ordered distinct
/// triples with `L[i][j] == L[j][k]`; `n4`: unordered pairs of vertex-disjoint
/// ordered pairs with `L[i][j] == L[k][l]`. Together they account for every
/// coincidence among the ordered pairs of `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatternCounts {
    pub subset: Vec<usize>,
    pub derived: DerivedSymbols,
    pub n2: u64,
    pub n3: u64,
    pub n4: u64,
}

impl PatternCounts {
    /// `n2 + n3 + n4 == sum_x C(r_x, 2)`.
    pub fn identity_holds(&self) -> bool {
        self.n2 + self.n3 + self.n4 == self.derived.coincidence_pairs()
    }

    /// `n3 <= a(a-1)` and `n4 <= a(a-1)(a-2)/2`.
    pub fn within_bounds(&self) -> bool {
        let a = self.subset.len() as u64;
        let pairs = a * a.saturating_sub(1);
        self.n3 <= pairs && self.n4 <= pairs * a.saturating_sub(2) / 2
    }
}

/// Counts each pattern directly, using the row inverse of the square to find
/// the completing vertex; `O(a^3)`.
pub fn pattern_counts(l: &LatinSquare, a: &[usize]) -> Result<PatternCounts> {
    let member = check_subset(l, a)?;
    let a = dedup_sorted(a);
    let derived = derived_symbols(l, &a)?;

    let mut n2 = 0u64;
    let mut n3 = 0u64;
    let mut n4_ordered = 0u64;
    for (x, &i) in a.iter().enumerate() {
        for &j in &a[x + 1..] {
            if l.get(i, j) == l.get(j, i) {
                n2 += 1;
            }
        }
        for &j in &a {
            if i == j {
                continue;
            }
            let s = l.get(i, j);
            let k = l.column_of(j, s);
            if member[k] && k != i && k != j {
                n3 += 1;
            }
            for &k in &a {
                if k == i || k == j {
                    continue;
                }
                let m = l.column_of(k, s);
                if member[m] && m != i && m != j && m != k {
                    n4_ordered += 1;
                }
            }
        }
    }
    Ok(PatternCounts {
        subset: a,
        derived,
        n2,
        n3,
        n4: n4_ordered / 2,
    })
}

/// The subset-size guarantee without the `- n2(B)` term:
/// `b(b-1) (1 - (b-2)/(a-2) - (b-2)(b-3)/(2(a-3)))`, or `-inf` when `a < 4`
/// (the denominators degenerate and the guarantee is vacuous).
pub fn spread_bound(a: usize, b: usize) -> f64 {
    if a < 4 {
        return f64::NEG_INFINITY;
    }
    let (a, b) = (a as f64, b as f64);
    b * (b - 1.0) * (1.0 - (b - 2.0) / (a - 2.0) - (b - 2.0) * (b - 3.0) / (2.0 * (a - 3.0)))
}

/// Exact rational test of `derived + n2 >= spread_bound(a, b)`.
fn meets_bound(a: usize, b: usize, derived: usize, n2: u64) -> bool {
    if a < 4 {
        return true;
    }
    let (a, b) = (a as i128, b as i128);
    let lhs = (derived as i128 + n2 as i128) * 2 * (a - 2) * (a - 3);
    let rhs = b * (b - 1) * (2 * (a - 2) * (a - 3) - 2 * (b - 2) * (a - 3) - (b - 2) * (b - 3) * (a - 2));
    lhs >= rhs
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchMethod {
    Exhaustive,
    /// Random draws; the result is best-found and may miss the bound.
    Sampled { draws: usize },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpreadCertificate {
    pub subset: Vec<usize>,
    pub derived_size: usize,
    pub n2: u64,
    /// `spread_bound(a, b)`.
    pub bound: f64,
    /// `bound - n2`: what `derived_size` has to reach.
    pub required: f64,
    pub satisfied: bool,
    pub method: SearchMethod,
}

struct Scorer<'a> {
    l: &'a LatinSquare,
    seen: Vec<u32>,
    stamp: u32,
}

impl Scorer<'_> {
    /// `(|B'|, n2(B))`.
    fn score(&mut self, b: &[usize]) -> (usize, u64) {
        self.stamp += 1;
        let mut derived = 0;
        let mut n2 = 0;
        for (x, &i) in b.iter().enumerate() {
            for (y, &j) in b.iter().enumerate() {
                if x == y {
                    continue;
                }
                let s = self.l.get(i, j);
                if self.seen[s] != self.stamp {
                    self.seen[s] = self.stamp;
                    derived += 1;
                }
                if x < y && s == self.l.get(j, i) {
                    n2 += 1;
                }
            }
        }
        (derived, n2)
    }
}

fn binomial(a: usize, b: usize) -> u128 {
    let b = b.min(a - b);
    (0..b).fold(1u128, |acc, i| acc * (a - i) as u128 / (i + 1) as u128)
}

/// Finds `B ⊆ A`, `|B| = b`, with `|B'| >= spread_bound(a, b) - n2(B)`.
///
/// Enumerates all `b`-subsets in lexicographic order when there are at most
/// [`EXHAUSTIVE_LIMIT`] of them and returns the first that qualifies;
/// otherwise samples [`SAMPLED_DRAWS`] random subsets and returns the first
/// qualifying one or the best margin seen.
pub fn spread_subset(l: &LatinSquare, a: &[usize], b: usize) -> Result<SpreadCertificate> {
    check_subset(l, a)?;
    let a = dedup_sorted(a);
    let size = a.len();
    if b > size {
        return Err(Error::InvalidParameter {
            name: "b",
            value: b as f64,
            domain: "b <= |A|",
        });
    }
    let bound = spread_bound(size, b);
    let mut scorer = Scorer {
        l,
        seen: vec![0; l.order()],
        stamp: 0,
    };
    let certificate = |subset: Vec<usize>, derived: usize, n2: u64, method| SpreadCertificate {
        satisfied: meets_bound(size, b, derived, n2),
        required: bound - n2 as f64,
        subset,
        derived_size: derived,
        n2,
        bound,
        method,
    };
    let margin = |derived: usize, n2: u64| derived as f64 + n2 as f64 - bound;

    if binomial(size, b) <= EXHAUSTIVE_LIMIT {
        let mut idx: Vec<usize> = (0..b).collect();
        let mut best: Option<(f64, Vec<usize>, usize, u64)> = None;
        loop {
            let subset: Vec<usize> = idx.iter().map(|&x| a[x]).collect();
            let (derived, n2) = scorer.score(&subset);
            if meets_bound(size, b, derived, n2) {
                return Ok(certificate(subset, derived, n2, SearchMethod::Exhaustive));
            }
            let m = margin(derived, n2);
            if best.as_ref().is_none_or(|(bm, ..)| m > *bm) {
                best = Some((m, subset, derived, n2));
            }
            // next combination
            let mut pos = b;
            while pos > 0 && idx[pos - 1] == size - b + pos - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            for q in pos..b {
                idx[q] = idx[q - 1] + 1;
            }
        }
        let (_, subset, derived, n2) = best.expect("at least one subset exists");
        return Ok(certificate(subset, derived, n2, SearchMethod::Exhaustive));
    }

    let mut rng = rng_from_seed(mix(size as u64, b as u64));
    let method = SearchMethod::Sampled {
        draws: SAMPLED_DRAWS,
    };
    let mut best: Option<(f64, Vec<usize>, usize, u64)> = None;
    for _ in 0..SAMPLED_DRAWS {
        let mut subset: Vec<usize> = sample(&mut rng, size, b).into_iter().map(|x| a[x]).collect();
        subset.sort_unstable();
        let (derived, n2) = scorer.score(&subset);
        if meets_bound(size, b, derived, n2) {
            return Ok(certificate(subset, derived, n2, method));
        }
        let m = margin(derived, n2);
        if best.as_ref().is_none_or(|(bm, ..)| m > *bm) {
            best = Some((m, subset, derived, n2));
        }
    }
    let (_, subset, derived, n2) = best.expect("draw budget is positive");
    Ok(certificate(subset, derived, n2, method))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::latin::{cyclic_difference_table, random_latin_square};
    use proptest::prelude::*;

    /// Independent count straight from the set-builder definitions.
    fn naive_counts(l: &LatinSquare, a: &[usize]) -> (u64, u64, u64) {
        let mut n2 = 0;
        let mut n3 = 0;
        let mut n4 = 0;
        for &i in a {
            for &j in a {
                if i == j {
                    continue;
                }
                if i < j && l.get(i, j) == l.get(j, i) {
                    n2 += 1;
                }
                for &k in a {
                    if k == i || k == j {
                        continue;
                    }
                    if l.get(i, j) == l.get(j, k) {
                        n3 += 1;
                    }
                    for &m in a {
                        if m != i && m != j && m != k && l.get(i, j) == l.get(k, m) {
                            n4 += 1;
                        }
                    }
                }
            }
        }
        (n2, n3, n4 / 2)
    }

    #[test]
    fn derived_symbols_examples() {
        let l3 = cyclic_difference_table(3).unwrap();
        let d = derived_symbols(&l3, &[0, 1, 2]).unwrap();
        assert_eq!(d.multiplicities, vec![(1, 3), (2, 3)]);
        assert!(derived_symbols(&l3, &[1]).unwrap().is_empty());
        let l4 = cyclic_difference_table(4).unwrap();
        let d = derived_symbols(&l4, &[0, 1]).unwrap();
        assert_eq!(d.multiplicities, vec![(1, 1), (3, 1)]);
    }

    #[test]
    fn pattern_count_fixed_points() {
        let l3 = cyclic_difference_table(3).unwrap();
        let c = pattern_counts(&l3, &[0, 1, 2]).unwrap();
        assert_eq!((c.n2, c.n3, c.n4), (0, 6, 0));
        assert_eq!(c.derived.coincidence_pairs(), 6);

        let l4 = cyclic_difference_table(4).unwrap();
        let c = pattern_counts(&l4, &[0, 1, 2, 3]).unwrap();
        assert_eq!((c.n2, c.n3, c.n4), (2, 8, 8));
        assert_eq!(c.derived.coincidence_pairs(), 18);
        assert!(c.identity_holds());

        for a in [&[][..], &[2][..]] {
            let c = pattern_counts(&l4, a).unwrap();
            assert_eq!((c.n2, c.n3, c.n4), (0, 0, 0));
        }
    }

    #[test]
    fn spread_bound_degenerates_below_four() {
        assert_eq!(spread_bound(3, 2), f64::NEG_INFINITY);
        assert_eq!(spread_bound(2, 2), f64::NEG_INFINITY);
        assert_eq!(spread_bound(9, 2), 2.0);
    }

    #[test]
    fn spread_subset_examples() {
        let l4 = cyclic_difference_table(4).unwrap();
        let c = spread_subset(&l4, &[0, 1, 2, 3], 3).unwrap();
        assert!(c.satisfied);
        assert_eq!(c.subset, vec![0, 1, 2]);
        assert_eq!(c.derived_size, 3);
        assert_eq!(c.n2, 1);
        assert_eq!(c.required, 2.0);

        let c = spread_subset(&l4, &[0, 1, 2, 3], 4).unwrap();
        assert_eq!(c.subset, vec![0, 1, 2, 3]);
        assert!(c.satisfied);

        // b = 2: the requirement is 2 - n2(B)
        let l = random_latin_square(9, 5).unwrap();
        let all: Vec<usize> = (0..9).collect();
        let c = spread_subset(&l, &all, 2).unwrap();
        assert!(c.satisfied);
        assert_eq!(c.bound, 2.0);

        assert!(spread_subset(&l4, &[0, 1], 3).is_err());
    }

    #[test]
    fn rational_test_agrees_with_float_bound() {
        for a in 4..12 {
            for b in 0..=a {
                let bound = spread_bound(a, b);
                for value in 0..(b * b + 2) {
                    let exact = meets_bound(a, b, value, 0);
                    let float = value as f64 >= bound - 1e-9;
                    assert_eq!(exact, float, "a={a} b={b} value={value}");
                }
            }
        }
    }

    #[test]
    fn large_search_switches_to_sampling() {
        let l = cyclic_difference_table(40).unwrap();
        let all: Vec<usize> = (0..40).collect();
        let c = spread_subset(&l, &all, 10).unwrap();
        assert_eq!(c.method, SearchMethod::Sampled { draws: SAMPLED_DRAWS });
        assert!(c.satisfied);
        assert_eq!(c.subset.len(), 10);
    }

    proptest! {
        #[test]
        fn identity_and_bounds_match_naive_enumeration(
            n in 1usize..10, seed in any::<u64>(), mask in any::<u16>()
        ) {
            let l = random_latin_square(n, seed).unwrap();
            let a: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
            let c = pattern_counts(&l, &a).unwrap();
            prop_assert_eq!((c.n2, c.n3, c.n4), naive_counts(&l, &a));
            prop_assert!(c.identity_holds());
            prop_assert!(c.within_bounds());
        }
    }
}
