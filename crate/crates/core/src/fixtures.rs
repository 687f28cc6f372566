//! Small reference networks with published expected values.
//!
//! Three static example networks (two complete, one partial) and the
//! ten-year illustrative ledger with its published BL and DHA expertise
//! matrices. Used by the test suites and the acceptance report.

use crate::hin::{Network, TopicTable};

/// Column order of the static comparison tables.
pub const TABLE_COLUMNS: [&str; 8] = ["BL", "HeteSim", "HA1", "HA2", "HA3", "WHA1", "WHA2", "WHA3"];

pub type TableRow = (&'static str, &'static str, [f64; 8]);

/// P1 = (A1, A2; M1), P2, P3 = (A1; M2), P4, P5 = (A2; M2).
pub fn network_one() -> Network {
    Network::builder()
        .paper("P1", &["A1", "A2"], &["M1"])
        .paper("P2", &["A1"], &["M2"])
        .paper("P3", &["A1"], &["M2"])
        .paper("P4", &["A2"], &["M2"])
        .paper("P5", &["A2"], &["M2"])
        .build()
        .expect("fixture is well-formed")
}

pub const TABLE_ONE: [TableRow; 4] = [
    ("A1", "M1", [0.577, 0.577, 0.577, 0.577, 0.577, 0.577, 0.577, 0.577]),
    ("A1", "M2", [0.816, 0.577, 0.577, 0.816, 0.816, 0.577, 0.816, 0.816]),
    ("A2", "M1", [0.577, 0.577, 0.577, 0.577, 0.577, 0.577, 0.577, 0.577]),
    ("A2", "M2", [0.816, 0.577, 0.577, 0.816, 0.816, 0.577, 0.816, 0.816]),
];

/// P1 = (A1; M1), P2 = (A1, A2; M1), P3..P5 = (A2; M1), P6 = (A3; M1),
/// P7 = (A3; M2).
pub fn network_two() -> Network {
    Network::builder()
        .paper("P1", &["A1"], &["M1"])
        .paper("P2", &["A1", "A2"], &["M1"])
        .paper("P3", &["A2"], &["M1"])
        .paper("P4", &["A2"], &["M1"])
        .paper("P5", &["A2"], &["M1"])
        .paper("P6", &["A3"], &["M1"])
        .paper("P7", &["A3"], &["M2"])
        .build()
        .expect("fixture is well-formed")
}

pub const TABLE_TWO: [TableRow; 6] = [
    ("A1", "M1", [1.0, 0.577, 0.632, 0.632, 0.816, 0.632, 0.632, 0.816]),
    ("A1", "M2", [0.0; 8]),
    ("A2", "M1", [1.0, 0.816, 0.894, 0.894, 0.973, 0.894, 0.894, 0.973]),
    ("A2", "M2", [0.0; 8]),
    ("A3", "M1", [0.707, 0.288, 0.707, 0.707, 0.707, 0.707, 0.707, 0.707]),
    ("A3", "M2", [0.707, 0.707, 0.707, 0.707, 0.707, 0.707, 0.707, 0.707]),
];

/// Partial reconstruction of the third example: P1 = (A1; M1),
/// P2 = (A1, A2; M1), P3 = (A2; M1, M2), mirrored for A3/A4 with M1 and M2
/// swapped.
pub fn network_three() -> Network {
    Network::builder()
        .paper("P1", &["A1"], &["M1"])
        .paper("P2", &["A1", "A2"], &["M1"])
        .paper("P3", &["A2"], &["M1", "M2"])
        .paper("P4", &["A3"], &["M2"])
        .paper("P5", &["A3", "A4"], &["M2"])
        .paper("P6", &["A4"], &["M2", "M1"])
        .build()
        .expect("fixture is well-formed")
}

pub const TABLE_THREE: [TableRow; 8] = [
    ("A1", "M1", [1.0, 0.943, 0.816, 0.816, 0.908, 0.943, 0.943, 0.971]),
    ("A1", "M2", [0.0; 8]),
    ("A2", "M1", [0.816, 0.707, 0.816, 0.816, 0.908, 0.707, 0.707, 0.828]),
    ("A2", "M2", [0.577, 0.236, 0.5, 0.5, 0.5, 0.316, 0.316, 0.316]),
    ("A3", "M1", [0.0; 8]),
    ("A3", "M2", [1.0, 0.943, 0.816, 0.816, 0.908, 0.943, 0.943, 0.971]),
    ("A4", "M1", [0.577, 0.236, 0.5, 0.5, 0.5, 0.316, 0.316, 0.316]),
    ("A4", "M2", [0.816, 0.707, 0.816, 0.816, 0.908, 0.707, 0.707, 0.828]),
];

pub const APPENDIX_AUTHORS: [&str; 4] = ["A1", "A2", "A3", "A4"];
pub const APPENDIX_CATEGORIES: [&str; 3] = ["M1", "M2", "M3"];

/// `(year, author, paper)` links of the ten-year illustrative ledger.
///
/// Years 1-5 repeat six solo papers. Years 6-10 hold six co-authored papers:
/// every collaboration appears twice per year, so each instance gets its own
/// label.
pub fn appendix_links() -> Vec<(i32, &'static str, &'static str)> {
    let solo = [
        ("A1", "P1"),
        ("A2", "P2"),
        ("A2", "P3"),
        ("A3", "P4"),
        ("A3", "P5"),
        ("A4", "P6"),
    ];
    let joint = [
        ("A1", "J1a"),
        ("A2", "J1a"),
        ("A1", "J1b"),
        ("A2", "J1b"),
        ("A2", "J2a"),
        ("A3", "J2a"),
        ("A2", "J2b"),
        ("A3", "J2b"),
        ("A3", "J3a"),
        ("A4", "J3a"),
        ("A3", "J3b"),
        ("A4", "J3b"),
    ];
    let mut links = Vec::new();
    for year in 1..=10 {
        let list: &[(&str, &str)] = if year <= 5 { &solo } else { &joint };
        links.extend(list.iter().map(|&(a, p)| (year, a, p)));
    }
    links
}

pub fn appendix_topics() -> TopicTable {
    [
        ("P1", "M2"),
        ("P1", "M3"),
        ("P2", "M1"),
        ("P2", "M3"),
        ("P3", "M1"),
        ("P4", "M2"),
        ("P4", "M3"),
        ("P5", "M2"),
        ("P6", "M1"),
        ("P6", "M3"),
        ("J1a", "M2"),
        ("J1a", "M3"),
        ("J1b", "M2"),
        ("J1b", "M3"),
        ("J2a", "M1"),
        ("J2a", "M2"),
        ("J2b", "M1"),
        ("J2b", "M2"),
        ("J3a", "M1"),
        ("J3a", "M3"),
        ("J3b", "M1"),
        ("J3b", "M3"),
    ]
    .into_iter()
    .collect()
}

pub type ExpertiseMatrix = [[f64; 3]; 4];

/// Published cumulative BL matrices, years 1..=10 (rows A1..A4, columns
/// M1..M3).
pub const APPENDIX_BL: [ExpertiseMatrix; 10] = [
    [[0., 1., 1.], [2., 0., 1.], [0., 2., 1.], [1., 0., 1.]],
    [[0., 2., 2.], [4., 0., 2.], [0., 4., 2.], [2., 0., 2.]],
    [[0., 3., 3.], [6., 0., 3.], [0., 6., 3.], [3., 0., 3.]],
    [[0., 4., 4.], [8., 0., 4.], [0., 8., 4.], [4., 0., 4.]],
    [[0., 5., 5.], [10., 0., 5.], [0., 10., 5.], [5., 0., 5.]],
    [[0., 7., 7.], [12., 4., 7.], [4., 12., 7.], [7., 0., 7.]],
    [[0., 9., 9.], [14., 8., 9.], [8., 14., 9.], [9., 0., 9.]],
    [[0., 11., 11.], [16., 12., 11.], [12., 16., 11.], [11., 0., 11.]],
    [[0., 13., 13.], [18., 16., 13.], [16., 18., 13.], [13., 0., 13.]],
    [[0., 15., 15.], [20., 20., 15.], [20., 20., 15.], [15., 0., 15.]],
];

/// Published cumulative DHA matrices, years 1..=10, as printed.
pub const APPENDIX_DHA: [ExpertiseMatrix; 10] = [
    [[0., 1., 1.], [2., 0., 1.], [0., 2., 1.], [1., 0., 1.]],
    [[0., 1.95, 1.95], [3.95, 0., 1.84], [0., 3.95, 1.84], [3.95, 0., 1.84]],
    [[0., 2.86, 2.86], [5.88, 0., 2.61], [0., 5.88, 2.61], [2.86, 0., 2.86]],
    [[0., 3.76, 3.76], [7.82, 0., 3.33], [0., 7.82, 3.33], [3.76, 0., 3.76]],
    [[0., 4.64, 4.64], [9.75, 0., 4.02], [0., 9.75, 4.02], [4.64, 0., 4.64]],
    [[0., 5.94, 5.79], [11.15, 0.34, 4.86], [0.34, 11.15, 4.86], [5.94, 0., 5.79]],
    [[0., 7.22, 6.93], [12.54, 0.72, 5.69], [0.72, 12.54, 5.69], [7.22, 0., 6.93]],
    [[0., 8.50, 8.05], [13.92, 1.14, 6.52], [1.14, 13.92, 6.52], [8.50, 0., 8.05]],
    [[0., 9.76, 9.15], [15.3, 1.61, 7.33], [1.61, 15.3, 7.33], [9.76, 0., 9.15]],
    [[0., 11.02, 10.25], [16.66, 2.12, 8.14], [2.12, 16.66, 8.14], [10.25, 0., 11.02]],
];
