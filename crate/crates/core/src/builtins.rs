//! Built-in reference networks and codes.
//!
//! These small instances are used throughout the test suite and are
//! addressable by name on the command line (names resolve before file
//! paths). `fig2` is the five-edge two-source workhorse; `fig1_reconstruction`
//! exhibits a gap between the isolated-cut bound and the augmented-cut bound;
//! `reverse_butterfly` has a two-edge global cut right in front of the sink.

use crate::error::Error;
use crate::galois::FieldMatrix;
use crate::lincode::LinearCode;
use crate::netmodel::Network;
use crate::Result;

/// Catalog entry describing one built-in object.
#[derive(Debug, Clone)]
pub struct BuiltinInfo {
    pub name: &'static str,
    pub kind: &'static str,
    pub origin: &'static str,
    pub summary: &'static str,
}

/// Everything addressable by name.
pub fn catalog() -> Vec<BuiltinInfo> {
    vec![
        BuiltinInfo {
            name: "fig2",
            kind: "network",
            origin: "canonical",
            summary: "two sources, five edges, q = 2; carries the example2 rate-2 code",
        },
        BuiltinInfo {
            name: "fig1_reconstruction",
            kind: "network",
            origin: "reconstruction",
            summary: "two sources joined at a relay; isolated-cut and augmented-cut bounds differ",
        },
        BuiltinInfo {
            name: "reverse_butterfly",
            kind: "network",
            origin: "reconstruction",
            summary: "two sources, nine edges, two-edge global cut at the sink",
        },
        BuiltinInfo {
            name: "example2",
            kind: "code",
            origin: "canonical",
            summary: "keyless (l=2, n=1) code on fig2, secure against single-edge sum observers",
        },
    ]
}

/// Two sources s1, s2, a relay v, sink rho; q = 2, target x1 + x2.
///
/// ```text
/// s1 --e1--> rho      s1 --e2--> v
/// s2 --e3--> v        s2 --e4--> rho
/// v  --e5--> rho
/// ```
pub fn fig2() -> Network {
    Network::build(
        2,
        vec!["s1".into(), "s2".into(), "v".into(), "rho".into()],
        vec![
            ("e1".into(), "s1".into(), "rho".into()),
            ("e2".into(), "s1".into(), "v".into()),
            ("e3".into(), "s2".into(), "v".into()),
            ("e4".into(), "s2".into(), "rho".into()),
            ("e5".into(), "v".into(), "rho".into()),
        ],
        vec![("s1".into(), 1), ("s2".into(), 1)],
        "rho",
    )
    .expect("built-in network is valid")
}

/// Two sources feeding a relay w over unbalanced edge bundles.
///
/// ```text
/// s1 --e1,e2,e3--> w    s2 --e4--> w    s2 --e5,e6--> rho    w --e7--> rho
/// ```
///
/// The cheapest single-source cut is {e7} (size 1), but an observer of e7
/// can be fed by s2 through e4, so the augmented cut {e7, e4} has size 2.
pub fn fig1_reconstruction() -> Network {
    Network::build(
        2,
        vec!["s1".into(), "s2".into(), "w".into(), "rho".into()],
        vec![
            ("e1".into(), "s1".into(), "w".into()),
            ("e2".into(), "s1".into(), "w".into()),
            ("e3".into(), "s1".into(), "w".into()),
            ("e4".into(), "s2".into(), "w".into()),
            ("e5".into(), "s2".into(), "rho".into()),
            ("e6".into(), "s2".into(), "rho".into()),
            ("e7".into(), "w".into(), "rho".into()),
        ],
        vec![("s1".into(), 1), ("s2".into(), 1)],
        "rho",
    )
    .expect("built-in network is valid")
}

/// Butterfly run backwards: two sources, four relays, sink fed by exactly
/// two edges, so the global min cut is {e8, e9}.
///
/// ```text
/// s1 --e1--> n1    s1 --e2--> n2    s2 --e3--> n2    s2 --e4--> n3
/// n2 --e5--> n4    n4 --e6--> n1    n4 --e7--> n3
/// n1 --e8--> rho   n3 --e9--> rho
/// ```
pub fn reverse_butterfly() -> Network {
    Network::build(
        2,
        vec![
            "s1".into(),
            "s2".into(),
            "n1".into(),
            "n2".into(),
            "n3".into(),
            "n4".into(),
            "rho".into(),
        ],
        vec![
            ("e1".into(), "s1".into(), "n1".into()),
            ("e2".into(), "s1".into(), "n2".into()),
            ("e3".into(), "s2".into(), "n2".into()),
            ("e4".into(), "s2".into(), "n3".into()),
            ("e5".into(), "n2".into(), "n4".into()),
            ("e6".into(), "n4".into(), "n1".into()),
            ("e7".into(), "n4".into(), "n3".into()),
            ("e8".into(), "n1".into(), "rho".into()),
            ("e9".into(), "n3".into(), "rho".into()),
        ],
        vec![("s1".into(), 1), ("s2".into(), 1)],
        "rho",
    )
    .expect("built-in network is valid")
}

pub fn network_by_name(name: &str) -> Result<Network> {
    match name {
        "fig2" => Ok(fig2()),
        "fig1_reconstruction" => Ok(fig1_reconstruction()),
        "reverse_butterfly" => Ok(reverse_butterfly()),
        _ => Err(Error::UnknownName(format!("built-in network {name}"))),
    }
}

/// The keyless (l = 2, kappa = 0, n = 1) code on [`fig2`]:
///
/// ```text
/// e1: x1+x2   e2: x2   e3: y1   e4: y1+y2   e5: x2+y1
/// ```
///
/// The sink recovers (x1+y1, x2+y2) as (e1+e5, e4+e5). No single edge
/// reveals anything about the componentwise sum.
pub fn example2_code() -> LinearCode {
    let n = fig2();
    let f = n.field();
    let col = |v: [u64; 4]| {
        FieldMatrix::from_rows(f, &[vec![v[0]], vec![v[1]], vec![v[2]], vec![v[3]]], 1)
            .expect("column shape")
    };
    // Row order: x1, x2, y1, y2.
    let encodings = vec![
        ("e1".to_string(), col([1, 1, 0, 0])),
        ("e2".to_string(), col([0, 1, 0, 0])),
        ("e3".to_string(), col([0, 0, 1, 0])),
        ("e4".to_string(), col([0, 0, 1, 1])),
        ("e5".to_string(), col([0, 1, 1, 0])),
    ];
    LinearCode::from_parts(f, 2, 0, 1, 2, encodings).expect("built-in code is valid")
}

pub fn code_by_name(name: &str) -> Result<LinearCode> {
    match name {
        "example2" => Ok(example2_code()),
        _ => Err(Error::UnknownName(format!("built-in code {name}"))),
    }
}
