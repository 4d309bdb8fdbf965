//! Reference counting tables for chordal planar graphs and simple chordal
//! maps, transcribed digit for digit. These are golden data: the series
//! pipeline must reproduce every entry bit-exactly.

use num_bigint::BigInt;

/// (n, g_n, c_n, b_n): all / connected / 2-connected labelled chordal planar
/// graphs on n vertices, n = 1..=20.
pub const GRAPH_TABLE: [(u32, &str, &str, &str); 20] = [
    (1, "1", "1", "0"),
    (2, "2", "1", "1"),
    (3, "8", "4", "1"),
    (4, "61", "35", "7"),
    (5, "821", "540", "110"),
    (6, "17962", "13116", "2880"),
    (7, "589912", "462868", "108486"),
    (8, "26990539", "22189056", "5376448"),
    (9, "1611421595", "1364476032", "330554736"),
    (10, "119106036226", "102768330140", "24223100940"),
    (11, "10475032926304", "9150009283316", "2056900853260"),
    (12, "1064759262580675", "937871756182824", "198279609266376"),
    (
        13,
        "122455558249650523",
        "108501459033647056",
        "21365210239261824",
    ),
    (
        14,
        "15683814373288014514",
        "13957140054455406368",
        "2542622031178234096",
    ),
    (
        15,
        "2210104382919809469776",
        "1973316500054545453200",
        "331005569819483825280",
    ),
    (
        16,
        "339419270505312015418873",
        "303844760227083629476736",
        "46769563108388612386560",
    ),
    (
        17,
        "56377137858208036652271961",
        "50574398535605806604877952",
        "7125735843407702680130176",
    ),
    (
        18,
        "10064213826097447392585326650",
        "9043978529936559892024953936",
        "1164214191212133452455716432",
    ),
    (
        19,
        "1920763688236792486611031950040",
        "1728560464917767130397726200016",
        "203006967721530831955744610256",
    ),
    (
        20,
        "390147921384971528200998632189581",
        "351542184165686400289151814740320",
        "37624686779731200180043318035040",
    ),
];

/// (n, M_n, B_n): all / 2-connected rooted simple chordal maps with n edges,
/// n = 1..=20.
pub const MAP_TABLE: [(u32, &str, &str); 20] = [
    (1, "1", "1"),
    (2, "2", "0"),
    (3, "6", "1"),
    (4, "22", "0"),
    (5, "92", "5"),
    (6, "419", "1"),
    (7, "2025", "35"),
    (8, "10214", "16"),
    (9, "53192", "288"),
    (10, "283921", "210"),
    (11, "1545326", "2607"),
    (12, "8544766", "2612"),
    (13, "47867107", "25155"),
    (14, "271091848", "31885"),
    (15, "1549624321", "254255"),
    (16, "8929009486", "386672"),
    (17, "51807558686", "2663101"),
    (18, "302430309885", "4682253"),
    (19, "1774979731304", "28696460"),
    (20, "10467456794046", "56747900"),
];

pub fn big(s: &str) -> BigInt {
    s.parse().expect("table entry parses as an integer")
}

/// g_n for n in 1..=20.
pub fn graph_all(n: usize) -> BigInt {
    big(GRAPH_TABLE[n - 1].1)
}

/// c_n for n in 1..=20.
pub fn graph_connected(n: usize) -> BigInt {
    big(GRAPH_TABLE[n - 1].2)
}

/// b_n for n in 1..=20.
pub fn graph_two_connected(n: usize) -> BigInt {
    big(GRAPH_TABLE[n - 1].3)
}

/// M_n for n in 1..=20.
pub fn map_all(n: usize) -> BigInt {
    big(MAP_TABLE[n - 1].1)
}

/// B_n for n in 1..=20.
pub fn map_two_connected(n: usize) -> BigInt {
    big(MAP_TABLE[n - 1].2)
}
