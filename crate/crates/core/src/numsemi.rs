//! Numerical semigroups and explicit gap sets.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("no generators given")]
    Empty,
    #[error("generators {0:?} have gcd {1} > 1, so the gap set is infinite")]
    NotCofinite(Vec<u64>, u64),
    #[error("generator 0 is not allowed")]
    ZeroGenerator,
    #[error("{0:?} is not the gap set of a numerical semigroup")]
    InvalidGapSet(Vec<u64>),
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Sorted set of positive integers whose complement is a submonoid of N.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GapSet {
    gaps: Vec<u64>,
}

impl GapSet {
    /// Validates `gaps` with [`is_cofinite_monoid`].
    pub fn new<I: IntoIterator<Item = u64>>(gaps: I) -> Result<Self, SemigroupError> {
        let set = Self::unchecked(gaps);
        if set.gaps.first() == Some(&0) || !is_cofinite_monoid(&set.gaps) {
            return Err(SemigroupError::InvalidGapSet(set.gaps));
        }
        Ok(set)
    }

    pub(crate) fn unchecked<I: IntoIterator<Item = u64>>(gaps: I) -> Self {
        let gaps: BTreeSet<u64> = gaps.into_iter().collect();
        Self {
            gaps: gaps.into_iter().collect(),
        }
    }

    pub fn gaps(&self) -> &[u64] {
        &self.gaps
    }

    pub fn genus(&self) -> usize {
        self.gaps.len()
    }

    /// Largest gap plus one; 0 when there are no gaps.
    pub fn conductor(&self) -> u64 {
        self.gaps.last().map_or(0, |g| g + 1)
    }

    pub fn contains_gap(&self, n: u64) -> bool {
        self.gaps.binary_search(&n).is_ok()
    }

    /// Minimal generators of the complement.
    pub fn minimal_generators(&self) -> Vec<u64> {
        let c = self.conductor();
        let members: Vec<u64> = (1..=c + c.max(1)).filter(|&n| !self.contains_gap(n)).collect();
        let mut gens: Vec<u64> = Vec::new();
        for &n in &members {
            let reachable = |target: u64, gens: &[u64]| -> bool {
                let mut ok = vec![false; target as usize + 1];
                ok[0] = true;
                for v in 1..=target as usize {
                    ok[v] = gens.iter().any(|&g| g as usize <= v && ok[v - g as usize]);
                }
                ok[target as usize]
            };
            if !reachable(n, &gens) {
                gens.push(n);
            }
        }
        gens
    }
}

/// Generator-presented numerical semigroup with its enumerated gaps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NumericalSemigroup {
    generators: Vec<u64>,
    gap_set: GapSet,
}

impl NumericalSemigroup {
    pub fn from_generators(gens: &[u64]) -> Result<Self, SemigroupError> {
        let generators: Vec<u64> = gens.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if generators.is_empty() {
            return Err(SemigroupError::Empty);
        }
        if generators[0] == 0 {
            return Err(SemigroupError::ZeroGenerator);
        }
        let g = generators.iter().fold(0, |acc, &x| gcd(acc, x));
        if g != 1 {
            return Err(SemigroupError::NotCofinite(generators, g));
        }
        // reachability until `generators[0]` consecutive members appear; from
        // there on every integer is a member
        let step = generators[0] as usize;
        let mut reach = vec![true];
        let mut run = 1usize;
        while run < step {
            let v = reach.len();
            let ok = generators
                .iter()
                .any(|&g| g as usize <= v && reach[v - g as usize]);
            reach.push(ok);
            run = if ok { run + 1 } else { 0 };
        }
        let bound = reach.len() - 1;
        let gap_set = GapSet::unchecked((1..=bound as u64).filter(|&v| !reach[v as usize]));
        Ok(Self { generators, gap_set })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn gap_set(&self) -> &GapSet {
        &self.gap_set
    }

    pub fn gaps(&self) -> &[u64] {
        self.gap_set.gaps()
    }

    pub fn genus(&self) -> usize {
        self.gap_set.genus()
    }

    pub fn conductor(&self) -> u64 {
        self.gap_set.conductor()
    }

    pub fn contains(&self, n: u64) -> bool {
        !self.gap_set.contains_gap(n)
    }
}

/// Whether the complement of `gaps` in the non-negative integers contains 0
/// and is closed under addition.
pub fn is_cofinite_monoid(gaps: &[u64]) -> bool {
    let set: BTreeSet<u64> = gaps.iter().copied().collect();
    if set.contains(&0) {
        return false;
    }
    let Some(&max) = set.iter().next_back() else {
        return true;
    };
    let members: Vec<u64> = (1..=max).filter(|n| !set.contains(n)).collect();
    // a + b with a, b non-gaps must avoid the gaps; sums above max are fine
    for (idx, &a) in members.iter().enumerate() {
        for &b in &members[idx..] {
            if a + b > max {
                break;
            }
            if set.contains(&(a + b)) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn semigroup_at_infinity_for_q9() {
        let s = NumericalSemigroup::from_generators(&[6, 9, 10]).unwrap();
        assert_eq!(s.gaps(), &[1, 2, 3, 4, 5, 7, 8, 11, 13, 14, 17, 23]);
        assert_eq!(s.genus(), 12);
        assert_eq!(s.conductor(), 24);
        assert!(s.contains(15));
        assert!(!s.contains(23));
        assert!(s.contains(0));
    }

    #[test]
    fn four_generator_example() {
        let s = NumericalSemigroup::from_generators(&[8, 9, 10, 14]).unwrap();
        assert_eq!(s.gaps(), &[1, 2, 3, 4, 5, 6, 7, 11, 12, 13, 15, 21]);
    }

    #[test]
    fn trivial_and_invalid_generators() {
        let s = NumericalSemigroup::from_generators(&[1]).unwrap();
        assert!(s.gaps().is_empty());
        assert_eq!(s.conductor(), 0);
        assert!(matches!(
            NumericalSemigroup::from_generators(&[4, 6]),
            Err(SemigroupError::NotCofinite(_, 2))
        ));
        assert!(NumericalSemigroup::from_generators(&[]).is_err());
    }

    #[test]
    fn cofinite_monoid_checks() {
        assert!(is_cofinite_monoid(&[1, 2, 3, 4, 5, 6, 7, 10, 11, 12, 13, 19]));
        assert!(!is_cofinite_monoid(&[2]));
        assert!(is_cofinite_monoid(&[]));
        assert!(GapSet::new([0, 1]).is_err());
    }

    #[test]
    fn minimal_generators_recovered() {
        let s = NumericalSemigroup::from_generators(&[6, 9, 10, 12, 15]).unwrap();
        assert_eq!(s.gap_set().minimal_generators(), vec![6, 9, 10]);
    }

    fn brute_gaps(gens: &[u64], limit: u64) -> Vec<u64> {
        // breadth-first closure over sums, independent of the DP above
        let mut seen = BTreeSet::from([0u64]);
        let mut frontier = vec![0u64];
        while let Some(v) = frontier.pop() {
            for &g in gens {
                let w = v + g;
                if w <= limit && seen.insert(w) {
                    frontier.push(w);
                }
            }
        }
        (1..=limit).filter(|n| !seen.contains(n)).collect()
    }

    proptest! {
        #[test]
        fn complement_is_closed_and_matches_closure(
            gens in proptest::collection::vec(2u64..30, 1..5).prop_map(|mut v| { v.push(31); v })
        ) {
            let s = NumericalSemigroup::from_generators(&gens).unwrap();
            prop_assert!(is_cofinite_monoid(s.gaps()));
            let limit = s.conductor() + 40;
            prop_assert_eq!(s.gaps().to_vec(), brute_gaps(&gens, limit));
        }
    }
}
