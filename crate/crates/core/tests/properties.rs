use std::collections::BTreeSet;

use mws::bounds::lower_bound;
use mws::io::{read_matrix, read_system, write_matrix, write_system};
use mws::{code_from_system, make_field, mws_via_characters, system_from_code, theta, ProjectiveSystem};
use num_bigint::BigUint;
use proptest::prelude::*;

fn arb_system() -> impl Strategy<Value = ProjectiveSystem> {
    (prop::sample::select(vec![2u64, 3, 4, 5]), 2usize..=3)
        .prop_flat_map(|(q, k)| {
            let count = (q.pow(k as u32) - 1) / (q - 1);
            (Just(q), Just(k), prop::collection::vec(0u64..6, count as usize))
        })
        .prop_filter_map("system must span", |(q, k, mults)| {
            let f = make_field(q).unwrap();
            let entries = mws::pg::points(f.q(), k)
                .zip(mults)
                .map(|(p, m)| (p.into_coords(), BigUint::from(m)));
            ProjectiveSystem::new(&f, k, entries).ok().filter(|s| s.spans())
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engines_agree(sys in arb_system()) {
        let report = mws_via_characters(&sys);
        let code = code_from_system(&sys).unwrap();
        let by_words: BTreeSet<usize> = code.codewords().unwrap().skip(1)
            .map(|c| c.iter().filter(|&&x| x != 0).count()).collect();
        let by_chars: BTreeSet<usize> = report.weights.iter().map(|w| usize::try_from(w).unwrap()).collect();
        prop_assert_eq!(&by_words, &by_chars);
        prop_assert_eq!(report.mws, code.is_mws().unwrap());
        if report.mws {
            prop_assert!(sys.n() >= &lower_bound(sys.q(), sys.k()));
        }
    }

    #[test]
    fn double_counting(sys in arb_system()) {
        let sum: BigUint = sys.characters().iter().sum();
        prop_assert_eq!(sum, sys.n() * theta(sys.q(), sys.k() as i64 - 2));
    }

    #[test]
    fn file_round_trips(sys in arb_system()) {
        let text = write_system(&sys);
        prop_assert_eq!(&read_system(&text).unwrap(), &sys);
        prop_assert_eq!(write_system(&read_system(&text).unwrap()), text);
        let code = code_from_system(&sys).unwrap();
        let m = write_matrix(&code);
        let back = read_matrix(&m).unwrap();
        prop_assert_eq!(&back, &code);
        prop_assert_eq!(&system_from_code(&back).unwrap(), &sys);
    }
}
