//! Independent oracle for the link radius label: enumerate distance pairs in
//! the defining order (increasing total distance, then increasing minimum)
//! and rank them starting at 2. The closed form must reproduce every rank.

use graph_core::{Graph, NodePoset};
use labeling::{drnl, drnl_value};

/// Rank of the unordered pair {dx, dy} in the enumeration by
/// (dx + dy ascending, min ascending), starting at 2.
fn enumeration_rank(dx: u32, dy: u32) -> i64 {
    let (a, b) = (dx.min(dy), dx.max(dy));
    let mut rank = 2;
    for d in 2..=a + b {
        for lo in 1..=d / 2 {
            if (lo, d - lo) == (a, b) {
                return rank;
            }
            rank += 1;
        }
    }
    unreachable!("pair ({a}, {b}) not reached by its own total distance");
}

#[test]
fn published_label_values_are_reproduced() {
    assert_eq!(drnl_value(1, 1), 2);
    assert_eq!(drnl_value(1, 2), 3);
    assert_eq!(drnl_value(2, 1), 3);
    assert_eq!(drnl_value(1, 3), 4);
    assert_eq!(drnl_value(2, 2), 5);
    assert_eq!(drnl_value(1, 4), 6);
    assert_eq!(drnl_value(2, 3), 7);
    assert_eq!(drnl_value(3, 4), 13);
}

#[test]
fn closed_form_equals_the_enumeration_rank() {
    for dx in 1..=19u32 {
        for dy in 1..=19u32 {
            if dx + dy <= 20 {
                assert_eq!(
                    drnl_value(dx, dy),
                    enumeration_rank(dx, dy),
                    "closed form diverges at ({dx}, {dy})"
                );
            }
        }
    }
}

#[test]
fn enumeration_ranks_are_distinct_per_unordered_pair() {
    let mut seen = std::collections::BTreeMap::new();
    for dx in 1..=19u32 {
        for dy in dx..=19u32 {
            if dx + dy <= 20 {
                let rank = enumeration_rank(dx, dy);
                if let Some(prev) = seen.insert(rank, (dx, dy)) {
                    panic!("rank {rank} assigned to both {prev:?} and ({dx}, {dy})");
                }
            }
        }
    }
}

#[test]
fn graph_labels_match_hand_counted_distances() {
    // 1-2-3-4-5 path, link {1, 5}: with 5 masked node 3 sits at (2, _) from 1,
    // with 1 masked at (_, 2) from 5.
    let g = Graph::path(5);
    let labels = drnl(&NodePoset::set_of([1, 5]), &g, true).unwrap();
    let flat: Vec<i64> = labels.iter().map(|l| l[0]).collect();
    assert_eq!(flat, vec![1, drnl_value(1, 3), drnl_value(2, 2), drnl_value(3, 1), 1]);
}
