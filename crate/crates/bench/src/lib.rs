//! Fixture matrices shared by the benchmarks.

use companion_core::pattern::base_matrix;
use companion_core::{Pattern, SymMatrix};

pub fn seven_by_seven() -> SymMatrix {
    SymMatrix::parse(
        "order 7\n\
         2 1 0 0 0 0 0\n\
         0 3 1 0 0 0 0\n\
         1 3 -2 1 0 0 0\n\
         4 0 2 -1 1 0 0\n\
         x5 1 -3 x2 x1 1 0\n\
         x7 x6 2 5 x3 3 1\n\
         1 0 4 x4 1 4 2\n",
    )
    .expect("valid matrix")
}

pub fn parametric_six_by_six() -> SymMatrix {
    SymMatrix::parse(
        "order 6\n\
         a11 1 0 0 0 0\n\
         a21 a22 1 0 0 0\n\
         a31 a32 a33 1 0 0\n\
         a41 a42 a43 a44 1 0\n\
         a51 x4 a53 x2 x1 1\n\
         x6 a62 x5 a64 x3 a66\n",
    )
    .expect("valid matrix")
}

/// Frobenius matrix of order `n`.
pub fn frobenius(n: usize) -> SymMatrix {
    base_matrix(&Pattern::from_rows(&vec![n; n]).expect("rows in range"))
}

/// Lower triangle filled with symbolic entries `a<i><j>`, superdiagonal ones.
pub fn generic_ulh(n: usize) -> SymMatrix {
    let mut text = format!("order {n}\n");
    for i in 1..=n {
        let row: Vec<String> = (1..=n)
            .map(|j| match j {
                j if j <= i => format!("a{i}_{j}"),
                j if j == i + 1 => "1".into(),
                _ => "0".into(),
            })
            .collect();
        text.push_str(&row.join(" "));
        text.push('\n');
    }
    SymMatrix::parse(&text).expect("valid matrix")
}
