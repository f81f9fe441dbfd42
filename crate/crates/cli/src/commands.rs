use std::fmt::Write as _;
use std::path::Path;

use companion_core::companion::{is_companion_structural, CompanionReport};
use companion_core::pattern::classify_matrix;
use companion_core::pb::Component;
use companion_core::{
    basis_polynomials, build_digraph, charpoly, concatenation, degree_profile_check,
    digraphs_isomorphic, enumerate_patterns, fiedler_below_diag_test,
    fiedler_mixed_superpattern_search, g_hat_companion_test, is_companion_direct, is_pb_companion,
    length_le2_criterion, ma_matrix, nested_membership, nilpotent_complete, parameterize_g,
    pb_via_blocks, Family, Indeterminate, Le2Outcome, NestedSpec, Pattern, Polynomial, Verdict,
};
use serde_json::{json, Value};

use crate::{CheckMethod, CliError, Command, Context, Output, PbReportKind, SearchKind};

pub fn dispatch(command: &Command, ctx: &mut Context) -> Result<Output, CliError> {
    match command {
        Command::Charpoly(f) => charpoly_cmd(ctx, &f.file),
        Command::Classify(f) => classify_cmd(ctx, &f.file),
        Command::Check { method, file } => {
            let a = ctx.load(file)?;
            let r = match method {
                CheckMethod::Direct => is_companion_direct(&a)?,
                CheckMethod::Structural => is_companion_structural(&a)?,
                CheckMethod::Ghat => g_hat_companion_test(&a)?,
            };
            Ok(companion_output(&r))
        }
        Command::Ghat { file, fiedler_base } => {
            let a = ctx.load(file)?;
            let r = match fiedler_base {
                Some(rows) => fiedler_below_diag_test(&a, &Pattern::from_rows(rows)?)?,
                None => g_hat_companion_test(&a)?,
            };
            Ok(companion_output(&r))
        }
        Command::NilpotentComplete { file, checkpoints } => complete_cmd(ctx, file, checkpoints),
        Command::Parameterize { set, indices } => parameterize_cmd(ctx, set, indices),
        Command::Pb { file, report } => pb_cmd(ctx, file, *report),
        Command::Enumerate {
            order,
            family,
            count,
            emit: _,
        } => enumerate_cmd(*order, family, *count),
        Command::Search {
            kind: SearchKind::FiedlerMixed { order, budget },
        } => search_cmd(ctx, *order, *budget),
        Command::Digraph { file, compare } => digraph_cmd(ctx, file, compare.as_deref()),
    }
}

fn to_value<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("serializable")
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(ToString::to_string).collect()
}

fn verdict_lines(v: &Verdict) -> String {
    let mut s = format!("verdict: {}\n", v.label());
    if let Some(c) = v.conditions() {
        for p in &c.must_be_zero {
            let _ = writeln!(s, "  require {p} = 0");
        }
        for p in &c.must_be_nonzero {
            let _ = writeln!(s, "  require {p} != 0");
        }
    }
    s
}

fn companion_output(r: &CompanionReport) -> Output {
    let mut text = verdict_lines(&r.verdict);
    for w in &r.witnesses {
        let _ = writeln!(text, "  witness: {w}");
    }
    Output {
        json: to_value(r),
        text,
    }
}

fn charpoly_cmd(ctx: &mut Context, file: &Path) -> Result<Output, CliError> {
    let a = ctx.load(file)?;
    let p = charpoly(&a);
    let coefficients: Vec<String> = (0..=a.order() as u32)
        .map(|d| p.lambda_coeff(d).to_string())
        .collect();
    Ok(Output {
        json: json!({ "order": a.order(), "charpoly": p.to_string(), "coefficients": coefficients }),
        text: format!("{p}\n"),
    })
}

fn classify_cmd(ctx: &mut Context, file: &Path) -> Result<Output, CliError> {
    let a = ctx.load(file)?;
    let c = classify_matrix(&a)?;
    let mut json = to_value(&c);
    json["pattern"] = Value::String(c.pattern.to_line());
    let s = &c.label.sets;
    let sets: Vec<&str> = [
        (s.h, "H"),
        (s.d, "D"),
        (s.c, "C"),
        (s.g, "G"),
        (s.f, "F"),
        (s.b, "B"),
    ]
    .iter()
    .filter(|(m, _)| *m)
    .map(|(_, n)| *n)
    .collect();
    let mut text = format!("pattern: {}\nsets: {}\n", c.pattern, sets.join(" "));
    let _ = writeln!(text, "tilde: {}\nhat: {}", c.tilde, c.hat);
    if let Some(i1) = c.label.i1 {
        let _ = writeln!(text, "i1: {i1}");
    }
    Ok(Output { json, text })
}

fn complete_cmd(ctx: &mut Context, file: &Path, checkpoints: &[usize]) -> Result<Output, CliError> {
    let partial = ctx.load(file)?;
    let done = nilpotent_complete(&partial, checkpoints)?;
    let membership = nested_membership(&done, &NestedSpec::leading(done.order(), checkpoints))?;
    let rows: Vec<Vec<String>> = done.rows().iter().map(|r| strings(r)).collect();
    let mut json = json!({ "checkpoints": checkpoints, "matrix": done.to_text(), "rows": rows });
    json["membership"] = to_value(&membership);
    Ok(Output {
        json,
        text: format!("{}{}", done.to_text(), verdict_lines(&membership)),
    })
}

fn parameterize_cmd(ctx: &mut Context, set: &str, indices: &[usize]) -> Result<Output, CliError> {
    let family: Family = set.parse()?;
    if family != Family::G {
        return Err(CliError::Input(format!(
            "parameterization is available for G only, got {family}"
        )));
    }
    let p = Pattern::from_rows(indices)?;
    let a = ctx.bind(&parameterize_g(&p)?);
    let r = is_companion_direct(&a)?;
    let params: Vec<String> = a
        .entries()
        .flat_map(|(_, e)| e.variables())
        .filter(Indeterminate::is_param)
        .map(|v| v.to_string())
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut json = to_value(&r);
    json["pattern"] = Value::String(p.to_line());
    json["matrix"] = Value::String(a.to_text());
    json["parameters"] = to_value(&params);
    let check = companion_output(&r);
    Ok(Output {
        json,
        text: format!("{}{}", a.to_text(), check.text),
    })
}

fn pb_cmd(ctx: &mut Context, file: &Path, kind: PbReportKind) -> Result<Output, CliError> {
    let a = ctx.load(file)?;
    match kind {
        PbReportKind::Full => {
            let r = is_pb_companion(&a)?;
            let blocks = pb_via_blocks(&r);
            let profile = degree_profile_check(&a)?;
            let mut json = to_value(&r);
            json["via_blocks"] = to_value(&blocks);
            json["degree_profile"] = to_value(&profile);
            let mut text = String::new();
            for (t, p) in r.basis.iter().enumerate() {
                let _ = writeln!(text, "p{t} = {p}");
            }
            let _ = writeln!(text, "concatenation: {}", concat_text(&r.concat));
            let _ = writeln!(text, "det = {}", r.det);
            text.push_str(&verdict_lines(&r.verdict));
            Ok(Output { json, text })
        }
        PbReportKind::Ma => {
            let basis = basis_polynomials(&a)?;
            let grid = ma_matrix(&basis);
            let n = a.order();
            let columns: Vec<String> = (0..=n).map(|d| format!("lambda^{d}")).collect();
            let rows: Vec<Value> = grid
                .iter()
                .enumerate()
                .map(|(t, row)| json!({ "label": format!("p{t}"), "coefficients": strings(row) }))
                .collect();
            let cells: Vec<Vec<String>> = grid.iter().map(|r| strings(r)).collect();
            let width = cells
                .iter()
                .flatten()
                .map(String::len)
                .chain(columns.iter().map(String::len))
                .max()
                .unwrap_or(1);
            let label_width = format!("p{n}").len();
            let mut text = format!("{:label_width$}", "");
            for c in &columns {
                let _ = write!(text, " {c:>width$}");
            }
            text.push('\n');
            for (t, row) in cells.iter().enumerate() {
                let _ = write!(text, "{:<label_width$}", format!("p{t}"));
                for c in row {
                    let _ = write!(text, " {c:>width$}");
                }
                text.push('\n');
            }
            Ok(Output {
                json: json!({ "columns": columns, "rows": rows }),
                text,
            })
        }
        PbReportKind::Concat => {
            let basis = basis_polynomials(&a)?;
            let concat = concatenation(&basis)?;
            let degrees: Vec<Option<u32>> = basis.iter().map(Polynomial::lambda_degree).collect();
            let components: Vec<Vec<usize>> =
                concat.iter().map(|c| (c.b..=c.e).collect()).collect();
            Ok(Output {
                json: json!({ "degrees": degrees, "components": components }),
                text: format!("{}\n", concat_text(&concat)),
            })
        }
        PbReportKind::Criterion => {
            let outcome = length_le2_criterion(&a)?;
            let text = match &outcome {
                Le2Outcome::Decided { verdict, cases } => {
                    let mut s = String::new();
                    for c in cases {
                        let _ = writeln!(s, "k={}: case {}", c.k, c.case);
                    }
                    s + &verdict_lines(verdict)
                }
                Le2Outcome::NotApplicable { longest } => {
                    format!("not applicable: a concatenation component has length {longest}\n")
                }
            };
            Ok(Output {
                json: to_value(&outcome),
                text,
            })
        }
    }
}

fn concat_text(concat: &[Component]) -> String {
    concat
        .iter()
        .map(|c| {
            let idx: Vec<String> = (c.b..=c.e).map(|t| t.to_string()).collect();
            format!("({})", idx.join(","))
        })
        .collect()
}

fn enumerate_cmd(order: usize, family: &str, count_only: bool) -> Result<Output, CliError> {
    let family: Family = family.parse()?;
    if count_only {
        let count = enumerate_patterns(order, family).count();
        return Ok(Output {
            json: json!({ "order": order, "family": family.to_string(), "count": count }),
            text: format!("{count}\n"),
        });
    }
    let lines: Vec<String> = enumerate_patterns(order, family)
        .map(|p| p.to_line())
        .collect();
    let mut text = lines.join("\n");
    text.push('\n');
    Ok(Output {
        json: json!({ "order": order, "family": family.to_string(), "count": lines.len(), "patterns": lines }),
        text,
    })
}

fn search_cmd(ctx: &mut Context, order: usize, budget: Option<usize>) -> Result<Output, CliError> {
    let r = fiedler_mixed_superpattern_search(order, budget, ctx.jobs())?;
    let mut text = format!(
        "order {}: {} patterns, {} of {} cases examined ({:?})\n",
        r.order, r.patterns, r.examined, r.total_cases, r.status
    );
    let _ = writeln!(
        text,
        "closed {}, above-superdiagonal forced {}, unresolved {}, counterexamples {}",
        r.closed,
        r.above_forced,
        r.unresolved,
        r.counterexamples.len()
    );
    for m in &r.counterexamples {
        text.push_str(&m.to_text());
    }
    Ok(Output {
        json: to_value(&r),
        text,
    })
}

fn digraph_cmd(ctx: &mut Context, file: &Path, compare: Option<&Path>) -> Result<Output, CliError> {
    let g = build_digraph(&ctx.load(file)?);
    let edges: Vec<[usize; 2]> = g.edges.iter().map(|&(a, b)| [a, b]).collect();
    let edge_text: Vec<String> = g.edges.iter().map(|(a, b)| format!("{a}->{b}")).collect();
    let mut json = json!({ "order": g.n, "edges": edges });
    let mut text = format!("{} vertices: {}\n", g.n, edge_text.join(" "));
    if let Some(other) = compare {
        let h = build_digraph(&ctx.load(other)?);
        let iso = digraphs_isomorphic(&g, &h)?;
        json["isomorphic"] = Value::Bool(iso);
        let _ = writeln!(text, "isomorphic: {iso}");
    }
    Ok(Output { json, text })
}
