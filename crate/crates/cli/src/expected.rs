//! Reference classification tables: for each type, the number of maximal
//! classes, their common order, and one (invariants, discrete Weyl group) row
//! per class.

pub struct ExpectedTable {
    pub family: &'static str,
    pub rank: usize,
    pub classes: usize,
    pub order: u128,
    pub rows: &'static [(&'static str, &'static str)],
}

pub const TABLES: &[ExpectedTable] = &[
    ExpectedTable { family: "A", rank: 1, classes: 1, order: 2, rows: &[("(2)", "1")] },
    ExpectedTable { family: "A", rank: 2, classes: 1, order: 3, rows: &[("(3)", "2")] },
    ExpectedTable {
        family: "A",
        rank: 3,
        classes: 3,
        order: 4,
        rows: &[("(4)", "2"), ("(2,2)", "2"), ("(2,2)", "S_3")],
    },
    ExpectedTable { family: "A", rank: 4, classes: 1, order: 6, rows: &[("(2,3)", "2")] },
    ExpectedTable { family: "A", rank: 5, classes: 1, order: 9, rows: &[("(3,3)", "D_8")] },
    ExpectedTable {
        family: "A",
        rank: 6,
        classes: 3,
        order: 12,
        rows: &[("(3,4)", "2^2"), ("(2,2,3)", "2^2"), ("(2,2,3)", "D_12")],
    },
    ExpectedTable { family: "A", rank: 7, classes: 1, order: 18, rows: &[("(2,3,3)", "D_8")] },
    ExpectedTable { family: "A", rank: 8, classes: 1, order: 27, rows: &[("(3,3,3)", "2 x S_4")] },
    ExpectedTable { family: "B", rank: 2, classes: 3, order: 4, rows: &[("(4)", "2"), ("(2,2)", "2"), ("(2,2)", "2")] },
    ExpectedTable {
        family: "B",
        rank: 3,
        classes: 3,
        order: 8,
        rows: &[("(2,4)", "2"), ("(2,2,2)", "2"), ("(2,2,2)", "S_3")],
    },
    ExpectedTable {
        family: "B",
        rank: 4,
        classes: 6,
        order: 16,
        rows: &[
            ("(4,4)", "D_8"),
            ("(2,2,4)", "2^2"),
            ("(2,2,4)", "2^2"),
            ("(2,2,2,2)", "2^2"),
            ("(2,2,2,2)", "S_4"),
            ("(2,2,2,2)", "D_8"),
        ],
    },
    ExpectedTable {
        family: "B",
        rank: 5,
        classes: 6,
        order: 32,
        rows: &[
            ("(2,4,4)", "D_8"),
            ("(2,2,2,4)", "2^2"),
            ("(2,2,2,4)", "D_12"),
            ("(2,2,2,2,2)", "D_12"),
            ("(2,2,2,2,2)", "D_8"),
            ("(2,2,2,2,2)", "S_5"),
        ],
    },
    ExpectedTable {
        family: "B",
        rank: 6,
        classes: 10,
        order: 64,
        rows: &[
            ("(4,4,4)", "2 x S_4"),
            ("(2,2,4,4)", "2 x D_8"),
            ("(2,2,4,4)", "2 x D_8"),
            ("(2,2,2,2,4)", "2^3"),
            ("(2,2,2,2,4)", "2 x D_8"),
            ("(2,2,2,2,4)", "2 x S_4"),
            ("(2,2,2,2,2,2)", "2 x S_4"),
            ("(2,2,2,2,2,2)", "2 x D_8"),
            ("(2,2,2,2,2,2)", "S_6"),
            ("(2,2,2,2,2,2)", "2 x S_4"),
        ],
    },
    ExpectedTable {
        family: "B",
        rank: 7,
        classes: 10,
        order: 128,
        rows: &[
            ("(2,4,4,4)", "2 x S_4"),
            ("(2,2,2,4,4)", "2 x D_8"),
            ("(2,2,2,4,4)", "D_8 x S_3"),
            ("(2,2,2,2,2,4)", "2 x D_8"),
            ("(2,2,2,2,2,4)", "2^2 x S_3"),
            ("(2,2,2,2,2,4)", "2 x S_5"),
            ("(2,2,2,2,2,2,2)", "2 x S_5"),
            ("(2,2,2,2,2,2,2)", "D_8 x S_3"),
            ("(2,2,2,2,2,2,2)", "S_7"),
            ("(2,2,2,2,2,2,2)", "2 x S_4"),
        ],
    },
    ExpectedTable {
        family: "B",
        rank: 8,
        classes: 15,
        order: 256,
        rows: &[
            ("(4,4,4,4)", "((((2 x D_8):2):3):2):2"),
            ("(2,2,4,4,4)", "2^2 x S_4"),
            ("(2,2,4,4,4)", "2^2 x S_4"),
            ("(2,2,2,2,4,4)", "D_8 x D_8"),
            ("(2,2,2,2,4,4)", "2^2 x D_8"),
            ("(2,2,2,2,4,4)", "S_4 x D_8"),
            ("(2,2,2,2,2,2,4)", "2^2 x S_4"),
            ("(2,2,2,2,2,2,4)", "2^2 x D_8"),
            ("(2,2,2,2,2,2,4)", "2 x S_6"),
            ("(2,2,2,2,2,2,4)", "2^2 x S_4"),
            ("(2,2,2,2,2,2,2,2)", "S_8"),
            ("(2,2,2,2,2,2,2,2)", "2 x S_6"),
            ("(2,2,2,2,2,2,2,2)", "S_4 x D_8"),
            ("(2,2,2,2,2,2,2,2)", "2^2 x S_4"),
            ("(2,2,2,2,2,2,2,2)", "((((2 x D_8):2):3):2):2"),
        ],
    },
    ExpectedTable { family: "D", rank: 4, classes: 1, order: 16, rows: &[("(2,2,2,2)", "2^2")] },
    ExpectedTable {
        family: "D",
        rank: 5,
        classes: 6,
        order: 16,
        rows: &[
            ("(4,4)", "D_8"),
            ("(2,2,4)", "D_12"),
            ("(2,2,4)", "2^2"),
            ("(2,2,2,2)", "S_5"),
            ("(2,2,2,2)", "D_12"),
            ("(2,2,2,2)", "D_8"),
        ],
    },
    ExpectedTable { family: "D", rank: 6, classes: 1, order: 64, rows: &[("(2,2,2,2,2,2)", "S_4")] },
    ExpectedTable {
        family: "D",
        rank: 7,
        classes: 10,
        order: 64,
        rows: &[
            ("(4,4,4)", "2 x S_4"),
            ("(2,2,4,4)", "2 x D_8"),
            ("(2,2,4,4)", "D_8 x S_3"),
            ("(2,2,2,2,4)", "2 x D_8"),
            ("(2,2,2,2,4)", "2^2 x S_3"),
            ("(2,2,2,2,4)", "2 x S_5"),
            ("(2,2,2,2,2,2)", "2 x S_5"),
            ("(2,2,2,2,2,2)", "S_7"),
            ("(2,2,2,2,2,2)", "D_8 x S_3"),
            ("(2,2,2,2,2,2)", "2 x S_4"),
        ],
    },
    ExpectedTable {
        family: "D",
        rank: 8,
        classes: 1,
        order: 256,
        rows: &[("(2,2,2,2,2,2,2,2)", "(((2 x D_8):2):3):2")],
    },
    ExpectedTable { family: "E", rank: 6, classes: 1, order: 27, rows: &[("(3,3,3)", "2 x S_4")] },
    ExpectedTable { family: "E", rank: 7, classes: 1, order: 128, rows: &[("(2,2,2,2,2,2,2)", "PSL(3,2)")] },
    ExpectedTable { family: "E", rank: 8, classes: 1, order: 256, rows: &[("(2,2,2,2,2,2,2,2)", "2^3:PSL(3,2)")] },
    ExpectedTable { family: "F", rank: 4, classes: 1, order: 18, rows: &[("(2,3,3)", "2^2")] },
    ExpectedTable { family: "H", rank: 3, classes: 1, order: 10, rows: &[("(2,5)", "2")] },
    ExpectedTable { family: "H", rank: 4, classes: 1, order: 50, rows: &[("(2,5,5)", "D_8")] },
];

pub fn expected(family: &str, rank: usize) -> Option<&'static ExpectedTable> {
    TABLES.iter().find(|t| t.family == family && t.rank == rank)
}

impl ExpectedTable {
    /// Rows as a sorted multiset.
    pub fn sorted_rows(&self) -> Vec<(String, String)> {
        let mut v: Vec<(String, String)> = self.rows.iter().map(|&(a, b)| (a.to_string(), b.to_string())).collect();
        v.sort();
        v
    }

    pub fn header(&self) -> String {
        let noun = if self.classes == 1 { "class" } else { "classes" };
        format!("{} maximal {noun} of groups of order {}", self.classes, self.order)
    }
}
