//! Exhaustive generation of (over)partitions of `n` and family counting.
//!
//! Parts are generated largest first. A [`SearchSpace`] fixes which parts
//! may appear; an optional prefix check prunes branches that can no longer
//! lead to a family member. Every pruning rule used by [`count_family`] is a
//! necessary condition for membership, so counts are exact.

use rayon::prelude::*;

use crate::error::Result;
use crate::families::{
    a0bar_core, a0bar_part_ok, aj_core, b0bar_core, b1_core, bbar_core, bj_core, is_in_deta,
    FamilyId,
};
use crate::overpartition::Overpartition;
use crate::params::FamilyParams;
use crate::part::Part;
use crate::partition::Partition;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Repeats {
    Any,
    /// Plain parts may repeat only when their size is a multiple of this.
    OnlyMultiplesOf(u64),
    Never,
}

/// The parts an enumeration may use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpace {
    eta: u64,
    residues: Vec<u64>,
    overlines: bool,
    plain_divisor: u64,
    repeats: Repeats,
}

impl SearchSpace {
    /// Overpartitions whose part sizes have one of `residues` modulo `eta`.
    pub fn overpartitions(residues: &[u64], eta: u64) -> Self {
        SearchSpace {
            eta,
            residues: residues.iter().map(|r| r % eta).collect(),
            overlines: true,
            plain_divisor: 1,
            repeats: Repeats::Any,
        }
    }

    /// Ordinary partitions whose part sizes have one of `residues` modulo `eta`.
    pub fn partitions(residues: &[u64], eta: u64) -> Self {
        SearchSpace {
            overlines: false,
            ..Self::overpartitions(residues, eta)
        }
    }

    /// Plain parts must be multiples of `d`.
    pub fn plain_multiples_of(mut self, d: u64) -> Self {
        self.plain_divisor = d;
        self
    }

    pub fn repeats(mut self, rule: Repeats) -> Self {
        self.repeats = rule;
        self
    }

    fn may_repeat(&self, size: u64) -> bool {
        match self.repeats {
            Repeats::Any => true,
            Repeats::OnlyMultiplesOf(d) => size.is_multiple_of(d),
            Repeats::Never => false,
        }
    }

    /// Candidate parts of size at most `n`, largest first in the part order.
    fn candidates(&self, n: u64) -> Vec<Part> {
        let mut out = Vec::new();
        for size in (1..=n).rev() {
            if !self.residues.contains(&(size % self.eta)) {
                continue;
            }
            if size % self.plain_divisor == 0 {
                out.push(Part::plain(size));
            }
            if self.overlines {
                out.push(Part::overlined(size));
            }
        }
        out
    }
}

struct Walker<'a, P, V> {
    space: &'a SearchSpace,
    cands: Vec<Part>,
    stack: Vec<Part>,
    prefix_ok: P,
    visit: V,
}

impl<P, V> Walker<'_, P, V>
where
    P: Fn(&[Part]) -> bool,
    V: FnMut(&[Part]),
{
    fn walk(&mut self, from: usize, remaining: u64) {
        if remaining == 0 {
            (self.visit)(&self.stack);
            return;
        }
        // candidates are sorted by decreasing size, so skip the oversized head
        let first = from + self.cands[from..].partition_point(|c| c.size() > remaining);
        for idx in first..self.cands.len() {
            let c = self.cands[idx];
            let next = if !c.is_overlined() && self.space.may_repeat(c.size()) {
                idx
            } else {
                idx + 1
            };
            self.stack.push(c);
            if (self.prefix_ok)(&self.stack) {
                self.walk(next, remaining - c.size());
            }
            self.stack.pop();
        }
    }
}

/// Calls `visit` on every sequence of weight `n` drawn from `space` whose
/// every prefix passes `prefix_ok`. Sequences are weakly decreasing in the
/// part order with at most one overlined part per size, and arrive in
/// reverse lexicographic order.
pub fn for_each_overpartition<P, V>(n: u64, space: &SearchSpace, prefix_ok: P, visit: V)
where
    P: Fn(&[Part]) -> bool,
    V: FnMut(&[Part]),
{
    let mut walker = Walker {
        space,
        cands: space.candidates(n),
        stack: Vec::new(),
        prefix_ok,
        visit,
    };
    walker.walk(0, n);
}

/// Every overpartition of `n` whose part sizes are congruent to one of
/// `residues` modulo `eta`.
pub fn enumerate_overpartitions(n: u64, residues: &[u64], eta: u64) -> Vec<Overpartition> {
    let mut out = Vec::new();
    let space = SearchSpace::overpartitions(residues, eta);
    for_each_overpartition(
        n,
        &space,
        |_| true,
        |parts| out.push(Overpartition::from_sorted_unchecked(parts.to_vec())),
    );
    out
}

/// Every partition of `n` whose part sizes are congruent to one of
/// `residues` modulo `eta`.
pub fn enumerate_partitions(n: u64, residues: &[u64], eta: u64) -> Vec<Partition> {
    let mut out = Vec::new();
    let space = SearchSpace::partitions(residues, eta);
    for_each_overpartition(n, &space, |_| true, |parts| out.push(to_partition(parts)));
    out
}

fn to_partition(parts: &[Part]) -> Partition {
    Partition::from_sorted_unchecked(parts.iter().map(|x| x.size()).collect())
}

/// The `k`-band condition on the last `k` parts and the bound on parts `<= eta`.
fn overpartition_band_prefix(parts: &[Part], k: usize, eta: u64, max_small: u64) -> bool {
    let len = parts.len();
    if len >= k {
        let head = parts[len - k];
        let reach = parts[len - 1].shifted(eta);
        let ok = if head.is_overlined() {
            head >= reach
        } else {
            head > reach
        };
        if !ok {
            return false;
        }
    }
    let small = parts
        .iter()
        .rev()
        .take_while(|&&x| x <= Part::plain(eta))
        .count();
    small as u64 <= max_small
}

/// The classical `k`-band condition on the last `k` parts and the bound on
/// parts `<= eta`.
fn classical_band_prefix(parts: &[Part], k: usize, eta: u64, max_small: u64) -> bool {
    let len = parts.len();
    if len >= k {
        let (head, tail) = (parts[len - k].size(), parts[len - 1].size());
        let ok = if head % eta == 0 {
            head > tail + eta
        } else {
            head >= tail + eta
        };
        if !ok {
            return false;
        }
    }
    let small = parts.iter().rev().take_while(|x| x.size() <= eta).count();
    small as u64 <= max_small
}

/// Number of weight-`n` members of family `f`, by exhaustive enumeration.
pub fn count_family(f: FamilyId, p: &FamilyParams, n: u64) -> Result<u64> {
    f.validate(p)?;
    Ok(count_unchecked(f, p, n))
}

/// `count_family` for every `n` in `0..=max_n`, one parallel task per `n`.
pub fn count_family_series(f: FamilyId, p: &FamilyParams, max_n: u64) -> Result<Vec<u64>> {
    f.validate(p)?;
    Ok((0..=max_n)
        .into_par_iter()
        .map(|n| count_unchecked(f, p, n))
        .collect())
}

/// Calls `visit` on each weight-`n` member of an overpartition family.
pub(crate) fn for_each_member(
    f: FamilyId,
    p: &FamilyParams,
    n: u64,
    mut visit: impl FnMut(Overpartition),
) {
    let eta = p.eta();
    let k = p.k() as usize;
    let r = p.r();
    let residues = p.residues();
    match f {
        FamilyId::Bbar | FamilyId::B0bar | FamilyId::B1 => {
            let space = SearchSpace::overpartitions(&residues, eta).plain_multiples_of(eta);
            let max_small = if f == FamilyId::B1 {
                r.saturating_sub(1)
            } else {
                r
            };
            let no_overlined_multiple = f == FamilyId::B1;
            let prefix = |parts: &[Part]| {
                let last = parts[parts.len() - 1];
                if no_overlined_multiple && last.is_overlined() && last.divisible_by(eta) {
                    return false;
                }
                overpartition_band_prefix(parts, k, eta, max_small)
            };
            for_each_overpartition(n, &space, prefix, |parts| {
                let pi = Overpartition::from_sorted_unchecked(parts.to_vec());
                let keep = match f {
                    FamilyId::Bbar => bbar_core(&pi, p),
                    FamilyId::B0bar => b0bar_core(&pi, p),
                    _ => b1_core(&pi, p),
                };
                if keep {
                    visit(pi);
                }
            });
        }
        FamilyId::A0bar => {
            let divisor = if p.lambda().is_multiple_of(2) {
                eta
            } else {
                eta / 2
            };
            let space = SearchSpace::overpartitions(&residues, eta).plain_multiples_of(divisor);
            let prefix = |parts: &[Part]| a0bar_part_ok(parts[parts.len() - 1], p);
            for_each_overpartition(n, &space, prefix, |parts| {
                let pi = Overpartition::from_sorted_unchecked(parts.to_vec());
                if a0bar_core(&pi, p) {
                    visit(pi);
                }
            });
        }
        _ => unreachable!("{f} is not an overpartition family"),
    }
}

/// Calls `visit` on each weight-`n` member of a classical family.
pub(crate) fn for_each_classical_member(
    f: FamilyId,
    p: &FamilyParams,
    n: u64,
    mut visit: impl FnMut(Partition),
) {
    let eta = p.eta();
    let residues = p.residues();
    match f {
        FamilyId::Aj(j) => {
            let divisor = if p.lambda().is_multiple_of(2) {
                eta
            } else {
                eta / 2
            };
            let space =
                SearchSpace::partitions(&residues, eta).repeats(Repeats::OnlyMultiplesOf(divisor));
            let prefix = |parts: &[Part]| {
                let last = parts[parts.len() - 1].size();
                aj_core(&Partition::from_sorted_unchecked(vec![last]), p, j)
            };
            for_each_overpartition(n, &space, prefix, |parts| {
                let pi = to_partition(parts);
                if aj_core(&pi, p, j) {
                    visit(pi);
                }
            });
        }
        FamilyId::Bj(j) => {
            let k = p.k() as usize;
            let max_small = p.r().saturating_sub(1);
            let space =
                SearchSpace::partitions(&residues, eta).repeats(Repeats::OnlyMultiplesOf(eta));
            let prefix = |parts: &[Part]| classical_band_prefix(parts, k, eta, max_small);
            for_each_overpartition(n, &space, prefix, |parts| {
                let pi = to_partition(parts);
                if bj_core(&pi, p, j) {
                    visit(pi);
                }
            });
        }
        FamilyId::Deta => {
            let space = SearchSpace::partitions(&[0], eta).repeats(Repeats::Never);
            for_each_overpartition(
                n,
                &space,
                |_| true,
                |parts| {
                    let pi = to_partition(parts);
                    if is_in_deta(&pi, eta) {
                        visit(pi);
                    }
                },
            );
        }
        _ => unreachable!("{f} is not a classical family"),
    }
}

fn count_unchecked(f: FamilyId, p: &FamilyParams, n: u64) -> u64 {
    let mut count = 0u64;
    if f.is_classical() {
        for_each_classical_member(f, p, n, |_| count += 1);
    } else {
        for_each_member(f, p, n, |_| count += 1);
    }
    count
}

/// Members of an overpartition family with weight exactly `n`.
pub fn family_members(f: FamilyId, p: &FamilyParams, n: u64) -> Result<Vec<Overpartition>> {
    f.validate(p)?;
    if f.is_classical() {
        return Err(crate::Error::InvalidParams(format!(
            "{f} is a family of ordinary partitions"
        )));
    }
    let mut out = Vec::new();
    for_each_member(f, p, n, |pi| out.push(pi));
    Ok(out)
}

/// Members of a classical family with weight exactly `n`.
pub fn classical_members(f: FamilyId, p: &FamilyParams, n: u64) -> Result<Vec<Partition>> {
    f.validate(p)?;
    if !f.is_classical() {
        return Err(crate::Error::InvalidParams(format!(
            "{f} is a family of overpartitions"
        )));
    }
    let mut out = Vec::new();
    for_each_classical_member(f, p, n, |pi| out.push(pi));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn params() -> FamilyParams {
        FamilyParams::new(vec![3, 7], 10, 5, 3).unwrap()
    }

    #[test]
    fn small_weights() {
        assert_eq!(
            enumerate_overpartitions(0, &[0, 3, 7], 10),
            vec![Overpartition::empty()]
        );
        let three: Vec<String> = enumerate_overpartitions(3, &[0, 3, 7], 10)
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(three, vec!["3", "3~"]);
        let ten: HashSet<String> = enumerate_overpartitions(10, &[0, 3, 7], 10)
            .iter()
            .map(|x| x.to_string())
            .collect();
        for s in ["10", "10~", "7,3", "7~,3", "7,3~", "7~,3~"] {
            assert!(ten.contains(s), "{s}");
        }
        // 10, 7+3 in four overline states, 10 in two
        assert_eq!(ten.len(), 6);
    }

    #[test]
    fn no_duplicates_and_canonical() {
        let all = enumerate_overpartitions(23, &[0, 3, 7], 10);
        let set: HashSet<_> = all.iter().cloned().collect();
        assert_eq!(set.len(), all.len());
        for pi in &all {
            assert_eq!(pi.weight(), 23);
            assert!(Overpartition::from_sorted(pi.parts().to_vec()).is_ok());
        }
    }

    #[test]
    fn plain_partition_counts() {
        let counts: Vec<usize> = (0..=8)
            .map(|n| enumerate_partitions(n, &[0], 1).len())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
    }

    #[test]
    fn b0bar_counts() {
        let p = params();
        let counts = count_family_series(FamilyId::B0bar, &p, 10).unwrap();
        let mut expected = vec![0u64; 11];
        expected[0] = 1;
        expected[3] = 1;
        expected[7] = 1;
        expected[10] = 3;
        assert_eq!(counts, expected);
        let ten: Vec<String> = family_members(FamilyId::B0bar, &p, 10)
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(ten, vec!["10", "10~", "7~,3~"]);
    }

    #[test]
    fn a0bar_ten() {
        let p = params();
        assert_eq!(count_family(FamilyId::A0bar, &p, 10).unwrap(), 3);
    }

    #[test]
    fn pruned_matches_unpruned_filter() {
        let p = params();
        for n in 0..=30 {
            let all = enumerate_overpartitions(n, &p.residues(), p.eta());
            let bbar = all.iter().filter(|x| bbar_core(x, &p)).count() as u64;
            let b0 = all.iter().filter(|x| b0bar_core(x, &p)).count() as u64;
            let a0 = all.iter().filter(|x| a0bar_core(x, &p)).count() as u64;
            assert_eq!(count_family(FamilyId::Bbar, &p, n).unwrap(), bbar, "n={n}");
            assert_eq!(count_family(FamilyId::B0bar, &p, n).unwrap(), b0, "n={n}");
            assert_eq!(count_family(FamilyId::A0bar, &p, n).unwrap(), a0, "n={n}");
            let reduced = p.with_k(4).unwrap();
            let b1 = all.iter().filter(|x| b1_core(x, &reduced)).count() as u64;
            assert_eq!(
                count_family(FamilyId::B1, &reduced, n).unwrap(),
                b1,
                "n={n}"
            );
            let plain = enumerate_partitions(n, &p.residues(), p.eta());
            for j in 0..=1 {
                let aj = plain.iter().filter(|x| aj_core(x, &p, j)).count() as u64;
                let bj = plain.iter().filter(|x| bj_core(x, &p, j)).count() as u64;
                assert_eq!(count_family(FamilyId::Aj(j), &p, n).unwrap(), aj, "n={n}");
                assert_eq!(count_family(FamilyId::Bj(j), &p, n).unwrap(), bj, "n={n}");
            }
        }
    }

    #[test]
    fn deta_counts() {
        let p = params();
        let counts = count_family_series(FamilyId::Deta, &p, 60).unwrap();
        assert_eq!(counts[30], 2);
        assert_eq!(counts[60], 4);
        assert_eq!(counts[5], 0);
    }
}
