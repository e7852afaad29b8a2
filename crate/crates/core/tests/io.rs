use ordist::io::{parse_distance_matrix, parse_split_system, write_distance_matrix, write_split_system};
use ordist::random::{random_binary_tree, random_circular_system, random_weights};
use ordist::rational::ratio;
use ordist::{DistanceMatrix, GroundSet};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #[test]
    fn distance_round_trip(n in 1usize..9, values in prop::collection::vec((0i64..50, 1i64..7), 36)) {
        let mut it = values.into_iter();
        let d = DistanceMatrix::from_fn(GroundSet::alphabetic(n), |_, _| {
            let (a, b) = it.next().unwrap();
            ratio(a, b)
        }).unwrap();
        prop_assert_eq!(parse_distance_matrix(&write_distance_matrix(&d)).unwrap(), d);
    }

    #[test]
    fn split_system_round_trip(seed in any::<u64>(), n in 3usize..12, circular in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ws = if circular {
            random_circular_system(n, &mut rng).unwrap().1
        } else {
            random_weights(&random_binary_tree(n, &mut rng).unwrap(), &mut rng, true)
        };
        prop_assert_eq!(parse_split_system(&write_split_system(&ws)).unwrap(), ws);
    }
}

#[test]
fn decimal_entries_are_exact() {
    let text = "# three points\n3\na 0 1.5 2\nb 3/2 0 .25\nc 2 0.25 0\n";
    let d = parse_distance_matrix(text).unwrap();
    assert_eq!(d[(0, 1)], ratio(3, 2));
    assert_eq!(d[(1, 2)], ratio(1, 4));
}

#[test]
fn asymmetric_input_is_rejected() {
    assert!(parse_distance_matrix("2\na 0 1\nb 2 0\n").is_err());
}
