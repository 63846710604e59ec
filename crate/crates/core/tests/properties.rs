use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;

use excseq::cycle::{self, NonnegPartition};
use excseq::excseq::{self as seqs, ExceptionalSequence};
use excseq::genfun::{self, Recursion};
use excseq::{formulas, IndecCatalog, Quiver};

fn cat(spec: &str) -> IndecCatalog {
    IndecCatalog::new(&Quiver::parse(spec).unwrap()).unwrap()
}

fn orientation(bits: u32, len: usize) -> String {
    (0..len)
        .map(|i| if bits >> i & 1 == 1 { '>' } else { '<' })
        .collect()
}

#[test]
fn gf_is_orientation_invariant_for_a4() {
    let want = genfun::closed_form_a(4);
    for bits in 0..8 {
        let c = cat(&format!("A4:{}", orientation(bits, 3)));
        assert_eq!(seqs::tally(&c, 4, 1).unwrap().multivariate_gf(), want);
    }
}

#[test]
fn shuffle_rule_matches_enumeration() {
    for spec in [
        "A1:+A1:",
        "A1:+A2:<",
        "A2:>+A1:",
        "A1:+A1:+A1:",
        "A2:<+A2:>",
        "A1:+D4:<><",
    ] {
        let c = cat(spec);
        let enumerated = seqs::tally(&c, c.rank(), 1).unwrap().multivariate_gf();
        let q = Quiver::parse(spec).unwrap();
        assert_eq!(
            Recursion::without_memo().eval(&q).unwrap(),
            enumerated,
            "{spec}"
        );
        assert_eq!(Recursion::new().eval(&q).unwrap(), enumerated, "{spec}");
    }
}

fn reversed(ind: u32, len: usize) -> u32 {
    (0..len)
        .filter(|i| ind >> i & 1 == 1)
        .fold(0, |acc, i| acc | 1 << (len - 1 - i))
}

#[test]
fn injectivity_is_projectivity_on_the_opposite_quiver() {
    for spec in ["A3:<>", "A4:><<", "D4:>><", "A2:<+A1:"] {
        let q = Quiver::parse(spec).unwrap();
        let c = IndecCatalog::new(&q).unwrap();
        let op = IndecCatalog::new(&q.opposite()).unwrap();
        for len in 1..=c.rank() {
            let t = seqs::tally(&c, len, 1).unwrap();
            let u = seqs::tally(&op, len, 1).unwrap();
            let flipped: BTreeMap<u32, u64> = u
                .relproj
                .iter()
                .map(|(&a, &n)| (reversed(a, len), n))
                .collect();
            assert_eq!(t.relinj, flipped, "{spec} len {len}");
        }
    }
}

#[test]
fn perp_type_counts_for_every_orientation_up_to_a6() {
    for n in 1..=6usize {
        let h = n + 1;
        for bits in 0..1u32 << (n - 1) {
            if n == 6 && bits % 7 != 0 {
                continue;
            }
            let c = cat(&format!("A{n}:{}", orientation(bits, n - 1)));
            for k in 1..=n {
                let t = seqs::tally(&c, k, 1).unwrap();
                for (l, tc) in &t.by_type {
                    let lambda = NonnegPartition::new(l.clone());
                    let s = cycle::s_count_formula(h, &lambda).unwrap();
                    assert_eq!(
                        BigInt::from(tc.count),
                        s * num_traits::pow(BigInt::from(h), k - 1)
                    );
                    assert_eq!(
                        BigInt::from(tc.leftmost_proj),
                        formulas::np_lambda(h, k, &lambda.multiplicities())
                    );
                }
            }
        }
    }
}

#[test]
fn enumerated_sequences_are_exceptional_and_distinct() {
    let c = cat("A4:<><");
    let records = seqs::enumerate(&c, 3).unwrap();
    let mut seen = std::collections::HashSet::new();
    for r in &records {
        assert!(r.sequence.is_exceptional(&c));
        assert!(seen.insert(r.sequence.clone()));
    }
    assert_eq!(
        BigInt::from(records.len()),
        formulas::sequence_count_a(4, 3)
    );
    // a repeated term has Hom to itself
    assert!(!ExceptionalSequence(vec![0, 0]).is_exceptional(&c));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn jobs_never_change_the_tally(bits in 0u32..16, len in 0usize..=5, jobs in 2usize..6) {
        let c = cat(&format!("A5:{}", orientation(bits, 4)));
        prop_assert_eq!(seqs::tally(&c, len, 1).unwrap(), seqs::tally(&c, len, jobs).unwrap());
    }

    #[test]
    fn fusion_identity_holds(parts in proptest::collection::vec(0usize..5, 2..7)) {
        let l = NonnegPartition::new(parts);
        let ledger = cycle::fusion_check(l.h(), &l).unwrap();
        prop_assert_eq!(ledger.holds, Some(true));
        prop_assert_eq!(cycle::pair_sum_identity(&l), l.k() * l.h());
    }
}
