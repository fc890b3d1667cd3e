//! Small named matroids used across the test suite and the examples in the
//! documentation. Element order is construction order and is part of the
//! contract: tests freeze expected vectors against it.

use crate::matroid::{GroundSet, Matroid};

fn edges(list: &[(&str, &str, &str)]) -> Vec<(String, String, String)> {
    list.iter()
        .map(|(u, v, l)| (u.to_string(), v.to_string(), l.to_string()))
        .collect()
}

/// U_{1,2} on {e1, e2}: two parallel elements, rank 1.
pub fn u12() -> Matroid {
    Matroid::uniform(1, 2).unwrap()
}

/// Triangle plus pendant: edges a = 01, b = 12, c = 02 form a 3-cycle and
/// d = 23 hangs off it. Bases are {a,b,d}, {a,c,d}, {b,c,d}.
pub fn tp() -> Matroid {
    Matroid::graphic(&edges(&[
        ("0", "1", "a"),
        ("1", "2", "b"),
        ("0", "2", "c"),
        ("2", "3", "d"),
    ]))
    .unwrap()
}

/// Cycle matroid of the complete graph K4. Elements in order:
/// 01, 02, 03, 12, 13, 23. Rank 3 with 16 bases.
pub fn k4() -> Matroid {
    Matroid::graphic(&edges(&[
        ("0", "1", "01"),
        ("0", "2", "02"),
        ("0", "3", "03"),
        ("1", "2", "12"),
        ("1", "3", "13"),
        ("2", "3", "23"),
    ]))
    .unwrap()
}

/// Path with three edges p1, p2, p3: a free matroid, every element a coloop.
pub fn path3() -> Matroid {
    Matroid::graphic(&edges(&[
        ("0", "1", "p1"),
        ("1", "2", "p2"),
        ("2", "3", "p3"),
    ]))
    .unwrap()
}

/// U_{2,4}: the smallest connected matroid whose dual is itself connected.
pub fn u24() -> Matroid {
    Matroid::uniform(2, 4).unwrap()
}

/// A single triangle: U_{2,3} as a graphic matroid on {a, b, c}.
pub fn triangle() -> Matroid {
    Matroid::graphic(&edges(&[("0", "1", "a"), ("1", "2", "b"), ("0", "2", "c")])).unwrap()
}

/// Ground set builder for ad-hoc tests.
pub fn ground(labels: &[&str]) -> GroundSet {
    GroundSet::new(labels.iter().map(|s| s.to_string()).collect()).unwrap()
}
