//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use companion_core::companion::{companion_residual, is_companion_structural, Witness};
use companion_core::enumerate::lower_cells;
use companion_core::matrix::{charpoly_oracle, subdiag_sum};
use companion_core::pattern::{base_matrix, classify_pattern, Cell};
use companion_core::pb::verdicts_equivalent;
use companion_core::*;
use rand::Rng;

type Check = std::result::Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn e(s: &str, n: usize) -> Polynomial {
    parse_expr(s, n).expect("valid expression")
}

fn mat(text: &str) -> SymMatrix {
    SymMatrix::parse(text).expect("valid matrix")
}

fn frobenius_reproduction() -> Check {
    for n in 1..=8 {
        let f = base_matrix(&Pattern::from_rows(&vec![n; n]).map_err(|e| e.to_string())?);
        let mut text = format!("lambda^{n}");
        for k in 1..=n {
            text.push_str(&format!(" - x{k}*lambda^{}", n - k));
        }
        let expected = e(&text, n);
        ensure(
            charpoly(&f) == expected,
            format!("charpoly mismatch at n={n}"),
        )?;
        ensure(
            charpoly_oracle(&f).unwrap() == expected,
            format!("oracle mismatch at n={n}"),
        )?;
    }
    Ok("n = 1..8".into())
}

fn oracle_equivalence() -> Check {
    let mut rng = common::rng(2);
    for case in 0..500 {
        let n = rng.gen_range(1..=6);
        let a = common::random_ulh(&mut rng, n);
        ensure(
            charpoly(&a) == charpoly_oracle(&a).unwrap(),
            format!("case {case} differs:\n{a}"),
        )?;
    }
    Ok("500 random ULH matrices".into())
}

fn seven_by_seven() -> SymMatrix {
    mat("order 7\n\
         2 1 0 0 0 0 0\n\
         0 3 1 0 0 0 0\n\
         1 3 -2 1 0 0 0\n\
         4 0 2 -1 1 0 0\n\
         x5 1 -3 x2 x1 1 0\n\
         x7 x6 2 5 x3 3 1\n\
         1 0 4 x4 1 4 2\n")
}

fn pb_worked_example() -> Check {
    let table: [[i64; 8]; 8] = [
        [-2, 1, 0, 0, 0, 0, 0, 0],
        [4, -4, 1, 0, 0, 0, 0, 0],
        [2, -5, 1, 0, 0, 0, 0, 0],
        [17, -7, -3, 1, 0, 0, 0, 0],
        [-2, -39, 44, -8, -4, 1, 0, 0],
        [34, -99, 46, 10, -8, 1, 0, 0],
        [2, 35, -123, 76, 0, -7, 1, 0],
        [208, -317, 168, -129, 73, 0, -7, 1],
    ];
    let r = is_pb_companion(&seven_by_seven()).map_err(|e| e.to_string())?;
    for (t, row) in table.iter().enumerate() {
        let expected: Vec<Polynomial> = row.iter().map(|&v| Polynomial::int(v)).collect();
        ensure(
            r.ma[t] == expected,
            format!(
                "row p{t} = {:?}",
                r.ma[t].iter().map(ToString::to_string).collect::<Vec<_>>()
            ),
        )?;
        let rebuilt: Polynomial = row
            .iter()
            .enumerate()
            .map(|(d, &c)| &Polynomial::int(c) * &Polynomial::lambda_pow(d as u32))
            .sum();
        ensure(r.basis[t] == rebuilt, format!("basis p{t} mismatch"))?;
    }
    let comps: Vec<(usize, usize)> = r.concat.iter().map(|c| (c.b, c.e)).collect();
    ensure(
        comps == vec![(0, 2), (3, 3), (4, 5), (6, 6), (7, 7)],
        format!("concatenation {comps:?}"),
    )?;
    ensure(r.verdict.is_yes(), format!("verdict {}", r.verdict))?;
    ensure(pb_via_blocks(&r).is_yes(), "block route disagrees")?;
    Ok("8x8 table, (0,1,2)(3)(4,5)(6)(7), PB-companion".into())
}

fn parametric_six_by_six() -> Check {
    let a = mat("order 6\n\
                 a11 1 0 0 0 0\n\
                 a21 a22 1 0 0 0\n\
                 a31 a32 a33 1 0 0\n\
                 a41 a42 a43 a44 1 0\n\
                 a51 x4 a53 x2 x1 1\n\
                 x6 a62 x5 a64 x3 a66\n");
    let expected: BTreeSet<Polynomial> = [e("a22-a66", 6), e("a44-a66", 6)]
        .iter()
        .map(Polynomial::normalized)
        .collect();
    let nonzero_set = |v: &Verdict| -> std::result::Result<BTreeSet<Polynomial>, String> {
        let c = v
            .conditions()
            .ok_or_else(|| format!("not conditional: {v}"))?;
        ensure(
            c.must_be_zero.is_empty(),
            "unexpected must-be-zero conditions",
        )?;
        Ok(c.must_be_nonzero
            .iter()
            .map(Polynomial::normalized)
            .collect())
    };
    let r = is_pb_companion(&a).map_err(|e| e.to_string())?;
    // Full determinant: a single polynomial, which must be the product of the
    // expected conditions.
    let full = nonzero_set(&r.verdict)?;
    let product: Polynomial = expected.iter().cloned().product();
    ensure(
        full.len() == 1 && full.iter().next().unwrap() == &product.normalized(),
        format!("full determinant route: {}", r.verdict),
    )?;
    let blocks = pb_via_blocks(&r);
    ensure(
        nonzero_set(&blocks)? == expected,
        format!("block route: {blocks}"),
    )?;
    ensure(
        verdicts_equivalent(&r.verdict, &blocks),
        "routes not equivalent",
    )?;
    let le2 = length_le2_criterion(&a).map_err(|e| e.to_string())?;
    let v = le2.verdict().ok_or("criterion not applicable")?;
    ensure(nonzero_set(v)? == expected, format!("criterion route: {v}"))?;
    Ok(format!(
        "conditions {{{}}}",
        expected
            .iter()
            .map(|p| format!("{p} != 0"))
            .collect::<Vec<_>>()
            .join(", ")
    ))
}

fn independent_c_count(n: usize) -> usize {
    // x_k at (i_k, i_k-k+1) with i_k-k+1 <= i_1 <= i_k.
    (1..=n)
        .map(|i1| {
            (2..=n)
                .map(|k| {
                    let lo = k.max(i1);
                    let hi = n.min(i1 + k - 1);
                    hi.saturating_sub(lo) + usize::from(hi >= lo)
                })
                .product::<usize>()
        })
        .sum()
}

fn brute_h_count(n: usize) -> usize {
    let cells = lower_cells(n);
    (0u32..(1 << cells.len()))
        .filter(|m| m.count_ones() as usize == n)
        .count()
}

fn h_minus_c_exhaustive() -> Check {
    let mut summary = Vec::new();
    for n in 1..=5 {
        let mut h = 0;
        let mut companions = 0;
        for p in enumerate_patterns(n, Family::H) {
            h += 1;
            let yes = is_companion_direct(&base_matrix(&p))
                .map_err(|e| e.to_string())?
                .verdict
                .is_yes();
            let in_c = classify_pattern(&p).sets.c;
            ensure(
                yes == in_c,
                format!("n={n} pattern {p}: companion={yes} in C={in_c}"),
            )?;
            companions += yes as usize;
        }
        ensure(
            h == brute_h_count(n),
            format!("H count {h} vs brute force at n={n}"),
        )?;
        let c = enumerate_patterns(n, Family::C).count();
        ensure(
            c == independent_c_count(n) && c == companions,
            format!(
                "C count {c}, recursive {}, companions {companions} at n={n}",
                independent_c_count(n)
            ),
        )?;
        summary.push(format!("n={n}: {companions}/{h}"));
    }
    Ok(summary.join(", "))
}

fn nilpotent_completion() -> Check {
    let partial = mat("order 6\n\
                       a 1 0 0 0 0\n\
                       c b 1 0 0 0\n\
                       0 0 0 1 0 0\n\
                       g f e d 1 0\n\
                       0 0 0 0 0 1\n\
                       0 0 0 0 0 0\n");
    let done = nilpotent_complete(&partial, &[3, 5, 6]).map_err(|e| e.to_string())?;
    let rows: [(usize, [&str; 6]); 3] = [
        (
            3,
            ["-a^3-2a*c-b*c", "-a^2-a*b-b^2-c", "-a-b", "1", "0", "0"],
        ),
        (
            5,
            [
                "a^3*e+2a*c*e-a*g+b*c*e-c*f-d*g",
                "a^2*e+a*b*e+b^2*e-b*f+c*e-d*f-g",
                "a*e+b*e-d*e-f",
                "-d^2-e",
                "-d",
                "1",
            ],
        ),
        (6, ["0", "0", "0", "0", "0", "0"]),
    ];
    for (r, expected) in rows {
        for (j, s) in expected.iter().enumerate() {
            ensure(
                done.at(r, j + 1) == &e(s, 6),
                format!("entry ({r},{}) = {}", j + 1, done.at(r, j + 1)),
            )?;
        }
    }
    ensure(
        nested_membership(&done, &NestedSpec::leading(6, &[3, 5, 6]))
            .unwrap()
            .is_yes(),
        "completed matrix not nested nilpotent",
    )?;
    Ok("rows 3, 5, 6 match".into())
}

fn j_conjugation() -> Check {
    let a = SymMatrix::from_ints(&[
        &[0, 1, 0, 0],
        &[3, -5, 1, 0],
        &[15, -28, 5, 1],
        &[0, 0, 0, 0],
    ]);
    let t = SymMatrix::from_ints(&[
        &[0, 1, 0, 0],
        &[0, 5, 1, 0],
        &[0, -28, -5, 1],
        &[0, 15, 3, 0],
    ]);
    ensure(
        j_conjugate_transpose(&a) == t,
        "image differs from the expected matrix",
    )?;
    ensure(j_conjugate_transpose(&t) == a, "not an involution")?;
    ensure(
        nested_membership(&t, &NestedSpec::trailing(4, &[1, 3, 4]))
            .unwrap()
            .is_yes(),
        "image not in N_T(1,3,4)",
    )?;
    Ok("image and involution".into())
}

fn c_tilde_pb() -> Check {
    let mut rng = common::rng(8);
    for case in 0..200 {
        let n = rng.gen_range(1..=6);
        let p = common::random_pattern(&mut rng, n, Family::C);
        let a = common::random_superpattern(&mut rng, &p, 0.5);
        let r = is_pb_companion(&a).map_err(|e| e.to_string())?;
        ensure(
            r.verdict.is_yes(),
            format!("case {case} not PB-companion:\n{a}"),
        )?;
    }
    Ok("200 random C~ superpatterns".into())
}

fn structural_vs_direct() -> Check {
    let values = [Polynomial::int(-1), Polynomial::int(1), Polynomial::int(2)];
    let mut checked = 0usize;
    let mut companions = 0usize;
    for n in 1..=4 {
        for p in enumerate_patterns(n, Family::C) {
            let base = base_matrix(&p);
            let free: Vec<Cell> = lower_cells(n)
                .into_iter()
                .filter(|c| base.at(c.i, c.j).is_zero())
                .collect();
            let total = 4usize.pow(free.len() as u32);
            for code in 0..total {
                let mut a = base.clone();
                let mut rest = code;
                for c in &free {
                    let digit = rest % 4;
                    rest /= 4;
                    if digit > 0 {
                        a.set(c.i - 1, c.j - 1, values[digit - 1].clone());
                    }
                }
                let d = is_companion_direct(&a).map_err(|e| e.to_string())?.verdict;
                let s = is_companion_structural(&a)
                    .map_err(|e| e.to_string())?
                    .verdict;
                ensure(d == s, format!("verdicts differ ({d} vs {s}) on\n{a}"))?;
                checked += 1;
                companions += d.is_yes() as usize;
            }
        }
    }
    Ok(format!("{checked} matrices, {companions} companion"))
}

fn fiedler_mixed_search() -> Check {
    let jobs = std::thread::available_parallelism().map_or(1, |n| n.get());
    let mut out = Vec::new();
    for n in [3, 4] {
        let r = fiedler_mixed_superpattern_search(n, None, jobs).map_err(|e| e.to_string())?;
        ensure(
            r.status == SearchStatus::Exhausted,
            format!("n={n} not exhausted"),
        )?;
        ensure(
            r.counterexamples.is_empty(),
            format!("n={n}: {} counterexamples", r.counterexamples.len()),
        )?;
        ensure(
            r.all_above_forced_zero,
            format!(
                "n={n}: {} cases without all above-superdiagonal parameters forced",
                r.examined - r.above_forced
            ),
        )?;
        out.push(format!("n={n}: {} cases", r.examined));
    }
    Ok(out.join(", "))
}

fn g_tilde_discrepancy() -> Check {
    let given = mat("order 7\n\
                       0 1 0 0 0 0 0\n\
                       0 0 1 0 0 0 0\n\
                       0 0 0 1 0 0 0\n\
                       b a x2 x1 1 0 0\n\
                       x5 x4 1-a 0 0 1 0\n\
                       0 d c x3 0 0 1\n\
                       x7 x6 1-d 1-b-c 0 0 0\n");
    let direct = is_companion_direct(&given).map_err(|e| e.to_string())?;
    ensure(direct.verdict.is_no(), "excess example reported companion")?;
    let residual = companion_residual(&given);
    ensure(
        residual == e("-lambda^4-lambda^3-lambda^2", 7),
        format!("residual {residual}"),
    )?;
    for k in [3usize, 4, 5] {
        let s = subdiag_sum(&given, k - 1).unwrap();
        ensure(
            s == &Polynomial::x(k as u32) + &Polynomial::one(),
            format!("s_{} = {s}", k - 1),
        )?;
    }
    let ghat = g_hat_companion_test(&given).map_err(|e| e.to_string())?;
    let ks: Vec<usize> = ghat
        .witnesses
        .iter()
        .filter_map(|w| match w {
            Witness::Subdiagonal { k, .. } => Some(*k),
            _ => None,
        })
        .collect();
    ensure(
        ks == vec![3, 4, 5],
        format!("g-hat witnesses at k = {ks:?}"),
    )?;
    let generated = parameterize_g(&Pattern::from_rows(&[4, 4, 6, 5, 5, 7, 7]).unwrap())
        .map_err(|e| e.to_string())?;
    ensure(
        is_companion_direct(&generated)
            .map_err(|e| e.to_string())?
            .verdict
            .is_yes(),
        "generated family not companion",
    )?;
    Ok(format!("residual {residual}; generated family companion"))
}

fn digraph_observation() -> Check {
    let h = Pattern::new(
        5,
        [(1, 1), (3, 3), (2, 1), (5, 4), (5, 2)]
            .iter()
            .map(|&(i, j)| Cell::new(i, j))
            .collect(),
    )
    .map_err(|e| e.to_string())?;
    let patterns = [
        h,
        Pattern::from_rows(&[3, 5, 3, 5, 5]).unwrap(),
        Pattern::from_rows(&[3, 4, 3, 4, 5]).unwrap(),
        Pattern::from_rows(&[3, 4, 3, 5, 5]).unwrap(),
        Pattern::from_rows(&[3, 4, 4, 4, 5]).unwrap(),
    ];
    let graphs: Vec<Digraph> = patterns
        .iter()
        .map(|p| build_digraph(&base_matrix(p)))
        .collect();
    for i in 0..5 {
        for j in i + 1..5 {
            ensure(
                !digraphs_isomorphic(&graphs[i], &graphs[j]).map_err(|e| e.to_string())?,
                format!("A{} and A{} isomorphic", i + 1, j + 1),
            )?;
        }
    }
    Ok("10 pairs non-isomorphic".into())
}

fn main() {
    let criteria: [Criterion; 12] = [
        (
            "Frobenius reproduction",
            Duration::from_secs(1),
            frobenius_reproduction,
        ),
        (
            "oracle equivalence",
            Duration::from_secs(30),
            oracle_equivalence,
        ),
        (
            "7x7 PB worked example",
            Duration::from_secs(1),
            pb_worked_example,
        ),
        (
            "6x6 parametric example, three routes",
            Duration::from_secs(1),
            parametric_six_by_six,
        ),
        (
            "H minus C exhaustive, n <= 5",
            Duration::from_secs(300),
            h_minus_c_exhaustive,
        ),
        (
            "nilpotent completion",
            Duration::from_secs(1),
            nilpotent_completion,
        ),
        ("J-conjugation", Duration::from_secs(1), j_conjugation),
        (
            "C~ implies PB-companion",
            Duration::from_secs(60),
            c_tilde_pb,
        ),
        (
            "structural equals direct, n <= 4",
            Duration::from_secs(300),
            structural_vs_direct,
        ),
        (
            "Fiedler mixed search, n = 3, 4",
            Duration::from_secs(600),
            fiedler_mixed_search,
        ),
        (
            "G~ excess example discrepancy",
            Duration::from_secs(1),
            g_tilde_discrepancy,
        ),
        (
            "digraph observation",
            Duration::from_secs(1),
            digraph_observation,
        ),
    ];
    let mut failed = 0;
    for (idx, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > *limit => {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            }
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name} [{elapsed:.2?}]: {detail}", idx + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} [{elapsed:.2?}]: {why}", idx + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
