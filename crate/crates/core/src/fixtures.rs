//! Published reference data used by the verification suite and the tests.

use crate::domain::Domain;

/// The 19-order non-bipartite maximal peak-pit domain on six alternatives (orders best first).
pub const TABLE1_ORDERS: [&str; 19] = [
    "123456", "123546", "123564", "125346", "125364", "125634", "152346", "152364", "152634", "156234",
    "165234", "615234", "651234", "652134", "652314", "652341", "652431", "654231", "654321",
];

pub fn table1_domain() -> Domain {
    Domain::from_strs(6, &TABLE1_ORDERS).expect("fixture orders are valid")
}

/// Edges of the drawn median graph of the even scheme at n = 6 (42 vertices).
pub const EVEN6_GRAPH_EDGES: [(&str, &str); 71] = [
    ("123456", "123465"), ("123456", "123546"), ("123456", "124356"), ("123456", "132456"),
    ("123456", "213456"), ("123465", "124365"), ("123465", "132465"), ("123465", "213465"),
    ("123546", "123564"), ("123546", "125346"), ("123546", "132546"), ("123546", "213546"),
    ("123564", "125364"), ("123564", "132564"), ("123564", "213564"), ("124356", "124365"),
    ("124356", "214356"), ("124365", "214365"), ("125346", "125364"), ("125346", "215346"),
    ("125364", "125634"), ("125364", "215364"), ("125634", "215634"), ("132456", "132465"),
    ("132456", "132546"), ("132456", "134256"), ("132456", "312456"), ("132465", "134265"),
    ("132465", "312465"), ("132546", "132564"), ("132546", "135246"), ("132546", "312546"),
    ("132564", "135264"), ("132564", "312564"), ("134256", "134265"), ("134256", "314256"),
    ("134265", "314265"), ("135246", "135264"), ("135246", "315246"), ("135264", "135624"),
    ("135264", "315264"), ("135624", "315624"), ("213456", "213465"), ("213456", "213546"),
    ("213456", "214356"), ("213465", "214365"), ("213546", "213564"), ("213546", "215346"),
    ("213564", "215364"), ("214356", "214365"), ("215346", "215364"), ("215364", "215634"),
    ("312456", "312465"), ("312456", "312546"), ("312456", "314256"), ("312465", "314265"),
    ("312546", "312564"), ("312546", "315246"), ("312564", "315264"), ("314256", "314265"),
    ("314256", "341256"), ("314265", "341265"), ("315246", "315264"), ("315246", "351246"),
    ("315264", "315624"), ("315264", "351264"), ("315624", "351624"), ("341256", "341265"),
    ("351246", "351264"), ("351264", "351624"), ("351624", "356124"),
];

/// A maximal single-crossing domain on four alternatives: 1234 to 4321 by one swap at a time.
/// Triples 134 and 234 share midpoint 3 but carry never-bottom and never-top conditions.
pub const SINGLE_CROSSING4: [&str; 7] = ["1234", "2134", "2314", "2341", "2431", "4231", "4321"];

/// Sizes of the odd, even, truncated-even and Fishburn domains for n = 4..=20.
pub const SCHEME_SIZE_TABLE: [(usize, [u64; 4]); 17] = [
    (4, [9, 9, 8, 9]),
    (5, [19, 18, 19, 20]),
    (6, [42, 42, 39, 45]),
    (7, [91, 84, 91, 100]),
    (8, [202, 199, 190, 222]),
    (9, [437, 398, 437, 488]),
    (10, [973, 950, 922, 1069]),
    (11, [2102, 1900, 2102, 2324]),
    (12, [4690, 4554, 4464, 5034]),
    (13, [10122, 9108, 10122, 10840]),
    (14, [22617, 21884, 21587, 23266]),
    (15, [48779, 43768, 48779, 49704]),
    (16, [109104, 105323, 104322, 105884]),
    (17, [235197, 210646, 235197, 224720]),
    (18, [526441, 507398, 503966, 475773]),
    (19, [1134474, 1014796, 1134474, 1004212]),
    (20, [2540586, 2446022, 2434088, 2115186]),
];

/// Even-scheme sizes a(1..=8).
pub const EVEN_SEQUENCE_PREFIX: [u64; 8] = [1, 2, 4, 9, 18, 42, 84, 199];

/// Top-four segments of part two of the even scheme and their Dyck words.
pub const DYCK_TABLE: [(&str, &str); 5] =
    [("1324", "ududud"), ("1342", "uduudd"), ("3124", "uuddud"), ("3142", "uududd"), ("3412", "uuuddd")];

/// Midpoint-bipartite census rows `(size, count)` of maximal peak-pit domains, with the total.
pub const CENSUS_N4: (usize, &[(usize, usize)]) = (10, &[(9, 1), (8, 5)]);
pub const CENSUS_N5: (usize, &[(usize, usize)]) = (181, &[(20, 2), (19, 4), (18, 2), (16, 14)]);
