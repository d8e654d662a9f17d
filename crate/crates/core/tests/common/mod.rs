/// Malformed inputs with the column each error must point at.
pub const NEGATIVE_CORPUS: &[(&str, usize)] = &[
    ("", 1),
    ("{", 1),
    ("{0|1", 1),
    ("0|1}", 2),
    ("{0|1}}", 6),
    ("{0|1|2}", 5),
    ("{0||1||2}", 6),
    ("{0,1}", 1),
    ("{0,|1}", 3),
    ("{,0|1}", 2),
    ("{0 1|}", 4),
    ("{0|1,}", 5),
    ("foo", 1),
    ("{0|bar}", 4),
    ("let x = 1 in y", 14),
    ("let = 1 in 2", 5),
    ("let x 1 in x", 7),
    ("let x = 1 x", 11),
    ("1 +", 4),
    ("(1 + 2", 7),
    ("1 + 2)", 6),
    ("3/4", 1),
    ("3o", 1),
    ("2x", 2),
    ("1 # 2", 3),
    ("99999999999999999999", 1),
    ("{0|1} {0|}", 7),
    ("·1", 1),
];
