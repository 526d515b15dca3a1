use std::collections::HashMap;

use bressoud::enumerate::family_members;
use bressoud::enumerate::{
    count_family, count_family_series, enumerate_overpartitions, enumerate_partitions,
};
use bressoud::families::{is_in_a0bar, is_in_b0bar, is_in_bbar, FamilyId};
use bressoud::invariants::check_all;
use bressoud::series::{gf_a0bar, gf_b0bar_factored, TruncatedSeries};
use bressoud::verify::{roundtrip_check, verify_identity, Identity};
use bressoud::FamilyParams;
use num_bigint::BigInt;

/// Overpartitions of `n` with sizes from `sizes[i..]`: each size contributes
/// any number of plain copies plus at most one overlined copy.
fn count_overpartitions(
    n: u64,
    sizes: &[u64],
    i: usize,
    memo: &mut HashMap<(u64, usize), u64>,
) -> u64 {
    if n == 0 {
        return 1;
    }
    if i == sizes.len() {
        return 0;
    }
    if let Some(&c) = memo.get(&(n, i)) {
        return c;
    }
    let s = sizes[i];
    let mut total = 0;
    let mut used = 0;
    while used <= n {
        total += count_overpartitions(n - used, sizes, i + 1, memo);
        if used + s <= n {
            total += count_overpartitions(n - used - s, sizes, i + 1, memo);
        }
        used += s;
    }
    memo.insert((n, i), total);
    total
}

fn sizes_with_residues(n: u64, residues: &[u64], eta: u64) -> Vec<u64> {
    (1..=n).filter(|s| residues.contains(&(s % eta))).collect()
}

#[test]
fn overpartition_enumeration_is_complete() {
    for (residues, eta, max_n) in [
        (vec![0, 3, 7], 10, 45),
        (vec![0, 1, 2], 3, 16),
        (vec![0, 3, 5, 7], 10, 40),
    ] {
        let sizes = sizes_with_residues(max_n, &residues, eta);
        let mut memo = HashMap::new();
        for n in 0..=max_n {
            let expected = count_overpartitions(n, &sizes, 0, &mut memo);
            assert_eq!(
                enumerate_overpartitions(n, &residues, eta).len() as u64,
                expected,
                "n={n} residues={residues:?}"
            );
        }
    }
}

#[test]
fn overpartition_numbers() {
    // 1, 2, 4, 8, 14, 24, 40, 64, 100 for unrestricted overpartitions
    let counts: Vec<usize> = (0..=8)
        .map(|n| enumerate_overpartitions(n, &[0], 1).len())
        .collect();
    assert_eq!(counts, vec![1, 2, 4, 8, 14, 24, 40, 64, 100]);
}

#[test]
fn partition_enumeration_matches_euler() {
    let euler: TruncatedSeries<i64> =
        bressoud::series::product_factor(bressoud::series::Sign::Minus, 1, 1, 30).unwrap();
    let p = euler.inv().unwrap();
    for n in 0..=30u64 {
        assert_eq!(
            enumerate_partitions(n, &[0], 1).len() as i64,
            *p.coeff(n as usize),
            "n={n}"
        );
    }
}

#[test]
fn pruned_counts_match_plain_filtering() {
    for p in [
        FamilyParams::new(vec![3, 7], 10, 5, 3).unwrap(),
        FamilyParams::new(vec![3, 5, 7], 10, 5, 4).unwrap(),
    ] {
        for n in 0..=40 {
            let all = enumerate_overpartitions(n, &p.residues(), p.eta());
            let bbar = all.iter().filter(|x| is_in_bbar(x, &p).unwrap()).count() as u64;
            let b0 = all.iter().filter(|x| is_in_b0bar(x, &p).unwrap()).count() as u64;
            let a0 = all.iter().filter(|x| is_in_a0bar(x, &p).unwrap()).count() as u64;
            assert_eq!(
                count_family(FamilyId::Bbar, &p, n).unwrap(),
                bbar,
                "{p} n={n}"
            );
            assert_eq!(
                count_family(FamilyId::B0bar, &p, n).unwrap(),
                b0,
                "{p} n={n}"
            );
            assert_eq!(
                count_family(FamilyId::A0bar, &p, n).unwrap(),
                a0,
                "{p} n={n}"
            );
        }
    }
}

#[test]
fn identities_hold_further_out() {
    for p in [
        FamilyParams::new(vec![3, 7], 10, 5, 3).unwrap(),
        FamilyParams::new(vec![3, 5, 7], 10, 5, 4).unwrap(),
    ] {
        for which in [
            Identity::A0barEqB0bar,
            Identity::B0barEqProduct,
            Identity::GfA0bar,
        ] {
            let rep = verify_identity(which, &p, 0, 120).unwrap();
            assert!(rep.overall, "{}", rep.to_plain());
        }
    }
    // other parameter shapes: lambda = 0, lambda = 1, larger k
    for (alphas, eta, k, r) in [
        (vec![], 2, 4, 1),
        (vec![1], 2, 4, 2),
        (vec![2, 3], 5, 6, 3),
        (vec![1, 3], 4, 4, 2),
    ] {
        let p = FamilyParams::new(alphas, eta, k, r).unwrap();
        for which in [
            Identity::A0barEqB0bar,
            Identity::B0barEqProduct,
            Identity::GfA0bar,
        ] {
            let rep = verify_identity(which, &p, 0, 40).unwrap();
            assert!(rep.overall, "{}", rep.to_plain());
        }
    }
}

#[test]
fn classical_identities_other_shapes() {
    for (alphas, eta, k, r) in [
        (vec![1, 2], 3, 4, 2),
        (vec![1, 2], 3, 3, 2),
        (vec![1], 2, 3, 1),
        (vec![], 2, 3, 1),
    ] {
        let p = FamilyParams::new(alphas, eta, k, r).unwrap();
        for j in 0..=1 {
            if p.require_classical_a(j).is_err() {
                continue;
            }
            for which in [Identity::AjEqBj, Identity::GfBj] {
                let rep = verify_identity(which, &p, j, 36).unwrap();
                assert!(rep.overall, "{}", rep.to_plain());
            }
        }
    }
}

#[test]
fn roundtrip_both_parameter_sets() {
    for p in [
        FamilyParams::new(vec![3, 7], 10, 5, 3).unwrap(),
        FamilyParams::new(vec![3, 5, 7], 10, 5, 4).unwrap(),
    ] {
        let rep = roundtrip_check(&p, 80).unwrap();
        assert!(rep.overall, "{:?}", rep.witnesses);
    }
    for (alphas, eta, k, r) in [(vec![], 2, 4, 1), (vec![1], 2, 4, 2), (vec![2, 3], 5, 6, 3)] {
        let p = FamilyParams::new(alphas, eta, k, r).unwrap();
        let rep = roundtrip_check(&p, 40).unwrap();
        assert!(rep.overall, "{p}: {:?}", rep.witnesses);
    }
}

#[test]
fn invariants_hold_further_out() {
    for (alphas, eta, k, r, max_n) in [
        (vec![3, 7], 10, 5, 3, 70),
        (vec![3, 5, 7], 10, 5, 4, 60),
        (vec![], 2, 4, 1, 30),
        (vec![1], 2, 4, 2, 30),
        (vec![2, 3], 5, 6, 3, 40),
    ] {
        let p = FamilyParams::new(alphas, eta, k, r).unwrap();
        for n in 0..=max_n {
            for pi in family_members(FamilyId::Bbar, &p, n).unwrap() {
                let v = check_all(&pi, &p);
                assert!(v.is_empty(), "{p}: {v:?}");
            }
        }
    }
}

#[test]
fn wide_coefficients_agree() {
    let p = FamilyParams::new(vec![3, 7], 10, 5, 3).unwrap();
    let small: TruncatedSeries<i64> = gf_a0bar(&p, 300).unwrap();
    let big: TruncatedSeries<BigInt> = gf_a0bar(&p, 300).unwrap();
    for d in 0..=300 {
        assert_eq!(BigInt::from(*small.coeff(d)), *big.coeff(d));
    }
    let wide: bressoud::WideSeries = gf_b0bar_factored(&p, 100).unwrap();
    let counts = count_family_series(FamilyId::B0bar, &p, 100).unwrap();
    for (d, &c) in counts.iter().enumerate() {
        assert_eq!(*wide.coeff(d), c as i128, "n={d}");
    }
}
