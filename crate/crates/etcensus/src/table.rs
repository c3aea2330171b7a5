//! Published summary counts of connected edge-transitive graphs, orders 1 to 47.

use etcensus_core::census::TableRow;

/// `(n, [Tot, Reg, Bpte, VT, AT, Wthy])`.
pub const PUBLISHED: [(usize, [usize; 6]); 47] = [
    (1, [1, 1, 0, 1, 1, 1]),
    (2, [1, 1, 1, 1, 1, 1]),
    (3, [2, 1, 1, 1, 1, 1]),
    (4, [3, 2, 2, 2, 2, 1]),
    (5, [4, 2, 2, 2, 2, 2]),
    (6, [6, 4, 4, 4, 4, 2]),
    (7, [5, 2, 3, 2, 2, 2]),
    (8, [8, 5, 6, 5, 5, 3]),
    (9, [9, 4, 5, 4, 4, 3]),
    (10, [13, 8, 8, 8, 8, 6]),
    (11, [7, 2, 5, 2, 2, 2]),
    (12, [19, 11, 12, 11, 11, 6]),
    (13, [10, 4, 6, 4, 4, 4]),
    (14, [16, 8, 13, 8, 8, 6]),
    (15, [25, 10, 15, 10, 10, 11]),
    (16, [26, 15, 18, 15, 15, 11]),
    (17, [12, 4, 8, 4, 4, 4]),
    (18, [28, 14, 21, 14, 14, 8]),
    (19, [12, 3, 9, 3, 3, 3]),
    (20, [43, 24, 29, 22, 22, 15]),
    (21, [37, 13, 24, 13, 13, 15]),
    (22, [24, 8, 21, 8, 8, 7]),
    (23, [13, 2, 11, 2, 2, 2]),
    (24, [65, 36, 47, 34, 34, 23]),
    (25, [34, 11, 23, 11, 11, 12]),
    (26, [31, 13, 26, 13, 13, 10]),
    (27, [51, 21, 30, 21, 20, 21]),
    (28, [64, 27, 47, 26, 26, 25]),
    (29, [18, 4, 14, 4, 4, 4]),
    (30, [93, 41, 66, 41, 41, 30]),
    (31, [19, 4, 15, 4, 4, 4]),
    (32, [83, 45, 65, 42, 42, 32]),
    (33, [44, 8, 36, 8, 8, 8]),
    (34, [34, 10, 29, 10, 10, 7]),
    (35, [67, 15, 52, 15, 15, 19]),
    (36, [154, 75, 107, 69, 67, 67]),
    (37, [24, 6, 18, 6, 6, 6]),
    (38, [36, 10, 32, 10, 10, 6]),
    (39, [60, 14, 46, 14, 12, 14]),
    (40, [175, 79, 132, 71, 68, 71]),
    (41, [26, 6, 20, 6, 6, 6]),
    (42, [147, 58, 114, 56, 56, 55]),
    (43, [25, 4, 21, 4, 4, 4]),
    (44, [88, 17, 80, 16, 16, 17]),
    (45, [161, 42, 119, 42, 42, 59]),
    (46, [46, 7, 43, 7, 7, 7]),
    (47, [25, 2, 23, 2, 2, 2]),
];

/// Column totals over orders 1 to 47.
pub const PUBLISHED_TOTAL: [usize; 6] = [1894, 703, 1429, 678, 670, 625];

pub const COLUMNS: [&str; 6] = ["Tot", "Reg", "Bpte", "VT", "AT", "Wthy"];

pub fn published(n: usize) -> Option<TableRow> {
    PUBLISHED.iter().find(|(m, _)| *m == n).map(|(_, r)| TableRow {
        tot: r[0],
        reg: r[1],
        bpte: r[2],
        vt: r[3],
        at: r[4],
        wthy: r[5],
    })
}
