//! Generic companion matrices over a pattern of G.

use crate::error::{Error, Result};
use crate::matrix::SymMatrix;
use crate::pattern::{base_matrix, classify_pattern, in_block, Cell, Pattern};
use crate::poly::Polynomial;

/// Parameter names `a, b, ..., z` without `x`, then `t26, t27, ...`.
pub fn param_name(index: usize) -> String {
    let letters: Vec<char> = ('a'..='z').filter(|&c| c != 'x').collect();
    match letters.get(index) {
        Some(c) => c.to_string(),
        None => format!("t{index}"),
    }
}

/// Fills the `i_1`-block of the base matrix so that each subdiagonal carries
/// its variable plus parameters summing to zero. On every subdiagonal all
/// parameter cells but the last (in placement order) are free; the last holds
/// minus their sum. A subdiagonal with a single parameter cell stays zero.
pub fn parameterize_g(p: &Pattern) -> Result<SymMatrix> {
    if !classify_pattern(p).sets.g {
        return Err(Error::NotInFamily("G"));
    }
    let n = p.order();
    let i1 = p.cell(1).i;
    let mut m = base_matrix(p);
    let mut next = 0;
    for d in 0..n {
        let cells: Vec<Cell> = (d + 1..=n)
            .map(|i| Cell::new(i, i - d))
            .filter(|c| in_block(i1, c.i, c.j) && p.variable_at(*c).is_none())
            .collect();
        if cells.len() < 2 {
            continue;
        }
        let mut sum = Polynomial::zero();
        for c in &cells[..cells.len() - 1] {
            let v = Polynomial::param(&param_name(next));
            next += 1;
            sum = &sum + &v;
            m.set(c.i - 1, c.j - 1, v);
        }
        let last = cells[cells.len() - 1];
        m.set(last.i - 1, last.j - 1, -sum);
    }
    Ok(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::companion::{g_hat_companion_test, is_companion_direct};
    use crate::matrix::subdiag_sum;
    use crate::parse::parse_expr;

    #[test]
    fn names_skip_x() {
        assert_eq!(param_name(0), "a");
        assert_eq!(param_name(22), "w");
        assert_eq!(param_name(23), "y");
        assert_eq!(param_name(25), "t25");
    }

    #[test]
    fn seven_by_seven_family() {
        let p = Pattern::from_rows(&[4, 4, 6, 5, 5, 7, 7]).unwrap();
        let m = parameterize_g(&p).unwrap();
        let expected = SymMatrix::parse(
            "order 7\n\
             0 1 0 0 0 0 0\n\
             0 0 1 0 0 0 0\n\
             0 0 0 1 0 0 0\n\
             b a x2 x1 1 0 0\n\
             x5 x4 -a 0 0 1 0\n\
             0 d c x3 0 0 1\n\
             x7 x6 -d -b-c 0 0 0\n",
        )
        .unwrap();
        assert_eq!(m, expected);
        let params: std::collections::BTreeSet<_> = m
            .entries()
            .flat_map(|(_, e)| e.variables())
            .filter(|v| v.is_param())
            .collect();
        assert_eq!(params.len(), 4);
        for k in 0..7 {
            assert_eq!(subdiag_sum(&m, k).unwrap(), Polynomial::x(k as u32 + 1));
        }
        assert!(is_companion_direct(&m).unwrap().verdict.is_yes());
        assert!(g_hat_companion_test(&m).unwrap().verdict.is_yes());
        assert_eq!(m.at(7, 4), &parse_expr("-b-c", 7).unwrap());
    }

    #[test]
    fn frobenius_has_no_parameters() {
        let p = Pattern::from_rows(&[5, 5, 5, 5, 5]).unwrap();
        assert_eq!(parameterize_g(&p).unwrap(), base_matrix(&p));
    }

    #[test]
    fn small_g_family() {
        let p = Pattern::from_rows(&[3, 4, 3, 5, 5]).unwrap();
        let m = parameterize_g(&p).unwrap();
        assert!(m.entries().any(|(_, e)| e.contains(|v| v.is_param())));
        assert!(is_companion_direct(&m).unwrap().verdict.is_yes());
    }

    #[test]
    fn rejects_c_minus_g() {
        let p = Pattern::from_rows(&[3, 4, 3, 4, 5]).unwrap();
        assert!(matches!(parameterize_g(&p), Err(Error::NotInFamily("G"))));
    }
}
