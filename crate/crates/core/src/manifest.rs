//! Line-oriented manifest format for models.
//!
//! ```text
//! manifold kodaira-thurston
//! dim 4
//! gen e1 e2 e3 e4
//! d e4 = e2^e3
//! omega = e1^e2 + e3^e4
//! J e1 = e2
//! ...
//! ```

use std::collections::BTreeMap;

use crate::coeff::{CoeffOneForm, Scalar, SymbolKind, SymbolTable};
use crate::error::{Error, Result};
use crate::forms::{parse_form, render_form, ExprScope, InvariantForm};
use crate::linalg::Matrix;
use crate::model::ManifoldModel;

struct Line<'a> {
    number: usize,
    keyword: &'a str,
    /// Text after the keyword, and its 1-based column.
    rest: &'a str,
    rest_col: usize,
}

fn split_lines(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let indent = content.len() - trimmed.len();
        let kw_len = trimmed.find(char::is_whitespace).unwrap_or(trimmed.len());
        let keyword = &trimmed[..kw_len];
        let after = &trimmed[kw_len..];
        let rest = after.trim_start();
        let rest_col = indent + kw_len + (after.len() - rest.len()) + 1;
        out.push(Line { number: i + 1, keyword, rest: rest.trim_end(), rest_col });
    }
    out
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Splits `lhs = rhs`, returning the left tokens and the right text with its column.
fn split_assignment<'a>(line: &Line<'a>) -> Result<(Vec<&'a str>, &'a str, usize)> {
    let Some(eq) = line.rest.find('=') else {
        return Err(Error::parse(line.number, line.rest_col, format!("expected `=` in `{}` line", line.keyword)));
    };
    let lhs: Vec<&str> = line.rest[..eq].split_whitespace().collect();
    let after = &line.rest[eq + 1..];
    let rhs = after.trim_start();
    let col = line.rest_col + eq + 1 + (after.len() - rhs.len());
    if rhs.is_empty() {
        return Err(Error::parse(line.number, col, "missing expression after `=`"));
    }
    Ok((lhs, rhs, col))
}

fn shift(e: Error, line: usize, col: usize) -> Error {
    match e {
        Error::Parse { column, message, .. } => Error::parse(line, col + column - 1, message),
        other => other,
    }
}

/// Parses a manifest into a model. Validation is separate; see
/// [`ManifoldModel::validate`].
pub fn parse_manifest(text: &str) -> Result<ManifoldModel> {
    let lines = split_lines(text);
    let end_line = text.lines().count().max(1);

    let mut name: Option<String> = None;
    let mut dim: Option<(usize, usize)> = None;
    let mut generators: Vec<String> = Vec::new();
    let mut gen_line = None;
    let mut symbols = SymbolTable::new();

    for line in &lines {
        match line.keyword {
            "manifold" => {
                if name.is_some() {
                    return Err(Error::DuplicateDeclaration("manifold".into()));
                }
                if line.rest.is_empty() || line.rest.split_whitespace().count() != 1 {
                    return Err(Error::parse(line.number, line.rest_col, "expected a single model name"));
                }
                name = Some(line.rest.to_string());
            }
            "dim" => {
                if dim.is_some() {
                    return Err(Error::DuplicateDeclaration("dim".into()));
                }
                let d: usize = line
                    .rest
                    .parse()
                    .map_err(|_| Error::parse(line.number, line.rest_col, "expected a positive integer"))?;
                if d == 0 || d % 2 == 1 {
                    return Err(Error::parse(line.number, line.rest_col, "dimension must be positive and even"));
                }
                dim = Some((d, line.number));
            }
            "gen" => {
                if gen_line.is_some() {
                    return Err(Error::DuplicateDeclaration("gen".into()));
                }
                gen_line = Some(line.number);
                for g in line.rest.split_whitespace() {
                    if !is_identifier(g) {
                        return Err(Error::parse(line.number, line.rest_col, format!("invalid generator name `{g}`")));
                    }
                    if generators.iter().any(|x| x == g) || symbols.index_of(g).is_some() {
                        return Err(Error::DuplicateDeclaration(g.to_string()));
                    }
                    generators.push(g.to_string());
                }
            }
            "param" | "function" => {
                let kind = if line.keyword == "param" { SymbolKind::Parameter } else { SymbolKind::Function };
                if line.rest.is_empty() {
                    return Err(Error::parse(line.number, line.rest_col, "expected at least one symbol name"));
                }
                for s in line.rest.split_whitespace() {
                    if !is_identifier(s) {
                        return Err(Error::parse(line.number, line.rest_col, format!("invalid symbol name `{s}`")));
                    }
                    if generators.iter().any(|x| x == s) {
                        return Err(Error::DuplicateDeclaration(s.to_string()));
                    }
                    symbols.declare(s, kind)?;
                }
            }
            "diff" | "d" | "metric" | "omega" | "J" => {}
            other => return Err(Error::parse(line.number, 1, format!("unknown keyword `{other}`"))),
        }
    }

    let name = name.ok_or_else(|| Error::parse(end_line, 1, "missing required section `manifold`"))?;
    let (dim, dim_line) = dim.ok_or_else(|| Error::parse(end_line, 1, "missing required section `dim`"))?;
    if gen_line.is_none() {
        return Err(Error::parse(end_line, 1, "missing required section `gen`"));
    }
    if generators.len() != dim {
        return Err(Error::parse(
            dim_line,
            1,
            format!("dim {dim} does not match the {} declared generators", generators.len()),
        ));
    }
    // generators declared after a colliding symbol
    for g in &generators {
        if symbols.index_of(g).is_some() {
            return Err(Error::DuplicateDeclaration(g.clone()));
        }
    }

    let mut differentials: BTreeMap<usize, CoeffOneForm> = BTreeMap::new();
    let mut structure: Vec<Option<InvariantForm>> = vec![None; dim];
    let mut metric_entries: BTreeMap<(usize, usize), Scalar> = BTreeMap::new();
    let mut omega: Option<InvariantForm> = None;
    let mut j_rows: Vec<Option<InvariantForm>> = vec![None; dim];

    {
        let scope = ExprScope { generators: &generators, symbols: &symbols };
        let generator = |tok: &str| generators.iter().position(|g| g == tok);
        for line in &lines {
            match line.keyword {
                "diff" => {
                    let (lhs, rhs, col) = split_assignment(line)?;
                    let [f] = lhs[..] else {
                        return Err(Error::parse(line.number, line.rest_col, "expected `diff <function> = <1-form>`"));
                    };
                    let index = symbols.index_of(f).ok_or_else(|| Error::UndeclaredSymbol(f.to_string()))?;
                    if symbols.kind(index) != Some(SymbolKind::Function) {
                        return Err(Error::parse(line.number, line.rest_col, format!("`{f}` is not a function symbol")));
                    }
                    let form = parse_form(rhs, scope).map_err(|e| shift(e, line.number, col))?;
                    form.expect_degree(1).map_err(|_| Error::parse(line.number, col, "expected a 1-form"))?;
                    let one_form: CoeffOneForm =
                        form.terms().map(|(m, c)| (m.trailing_zeros() as usize, c.clone())).collect();
                    if differentials.insert(index, one_form).is_some() {
                        return Err(Error::DuplicateDeclaration(format!("diff {f}")));
                    }
                }
                "d" => {
                    let (lhs, rhs, col) = split_assignment(line)?;
                    let [g] = lhs[..] else {
                        return Err(Error::parse(line.number, line.rest_col, "expected `d <generator> = <2-form>`"));
                    };
                    let i = generator(g).ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
                    let form = parse_form(rhs, scope).map_err(|e| shift(e, line.number, col))?;
                    form.expect_degree(2).map_err(|_| Error::parse(line.number, col, "expected a 2-form"))?;
                    if structure[i].replace(form).is_some() {
                        return Err(Error::DuplicateDeclaration(format!("d {g}")));
                    }
                }
                "metric" => {
                    let (lhs, rhs, col) = split_assignment(line)?;
                    let [a, b] = lhs[..] else {
                        return Err(Error::parse(line.number, line.rest_col, "expected `metric <i> <j> = <scalar>`"));
                    };
                    let index = |tok: &str| -> Result<usize> {
                        if let Ok(k) = tok.parse::<usize>() {
                            if (1..=dim).contains(&k) {
                                return Ok(k - 1);
                            }
                            return Err(Error::parse(line.number, line.rest_col, format!("index {k} out of range")));
                        }
                        generator(tok).ok_or_else(|| Error::UnknownGenerator(tok.to_string()))
                    };
                    let (i, j) = (index(a)?, index(b)?);
                    let form = parse_form(rhs, scope).map_err(|e| shift(e, line.number, col))?;
                    let value = scalar_part(&form).ok_or_else(|| Error::parse(line.number, col, "expected a scalar"))?;
                    let key = (i.min(j), i.max(j));
                    if metric_entries.insert(key, value).is_some() {
                        return Err(Error::DuplicateDeclaration(format!("metric {a} {b}")));
                    }
                }
                "omega" => {
                    let (lhs, rhs, col) = split_assignment(line)?;
                    if !lhs.is_empty() {
                        return Err(Error::parse(line.number, line.rest_col, "expected `omega = <2-form>`"));
                    }
                    let form = parse_form(rhs, scope).map_err(|e| shift(e, line.number, col))?;
                    form.expect_degree(2).map_err(|_| Error::parse(line.number, col, "expected a 2-form"))?;
                    if omega.replace(form).is_some() {
                        return Err(Error::DuplicateDeclaration("omega".into()));
                    }
                }
                "J" => {
                    let (lhs, rhs, col) = split_assignment(line)?;
                    let [g] = lhs[..] else {
                        return Err(Error::parse(line.number, line.rest_col, "expected `J <generator> = <1-form>`"));
                    };
                    let i = generator(g).ok_or_else(|| Error::UnknownGenerator(g.to_string()))?;
                    let form = parse_form(rhs, scope).map_err(|e| shift(e, line.number, col))?;
                    form.expect_degree(1).map_err(|_| Error::parse(line.number, col, "expected a 1-form"))?;
                    if j_rows[i].replace(form).is_some() {
                        return Err(Error::DuplicateDeclaration(format!("J {g}")));
                    }
                }
                _ => {}
            }
        }
    }

    for (index, form) in differentials {
        symbols.set_differential(index, form)?;
    }
    let omega = omega.ok_or_else(|| Error::parse(end_line, 1, "missing required section `omega`"))?;
    let j_rows = j_rows
        .into_iter()
        .enumerate()
        .map(|(i, r)| r.ok_or_else(|| Error::parse(end_line, 1, format!("missing required line `J {}`", generators[i]))))
        .collect::<Result<Vec<_>>>()?;
    let structure = structure.into_iter().map(|s| s.unwrap_or_else(|| InvariantForm::zero(dim))).collect();
    let mut metric = Matrix::identity(dim);
    for ((i, j), v) in metric_entries {
        metric.set(i, j, v.clone());
        metric.set(j, i, v);
    }
    ManifoldModel::new(name, generators, symbols, structure, metric, omega, j_rows)
}

fn scalar_part(f: &InvariantForm) -> Option<Scalar> {
    if f.terms().all(|(m, _)| m == 0) {
        Some(f.coeff(0))
    } else {
        None
    }
}

/// Writes a model in manifest syntax; [`parse_manifest`] reads it back to an
/// equal model.
pub fn serialize_manifest(model: &ManifoldModel) -> String {
    let dim = model.dim();
    let names = model.generators();
    let symbols = model.symbols();
    let sym = |v: usize| symbols.name(v).to_string();
    let render = |f: &InvariantForm| render_form(f, names, &sym);
    let mut out = String::new();
    out.push_str(&format!("manifold {}\n", model.name()));
    out.push_str(&format!("dim {dim}\n"));
    out.push_str(&format!("gen {}\n", names.join(" ")));
    for s in symbols.symbols() {
        let kw = match s.kind {
            SymbolKind::Parameter => "param",
            SymbolKind::Function => "function",
        };
        out.push_str(&format!("{kw} {}\n", s.name));
    }
    for (i, s) in symbols.symbols().iter().enumerate() {
        if let Some(d) = symbols.differential(i) {
            let form = InvariantForm::from_terms(dim, d.iter().map(|(&g, c)| (1u32 << g, c.clone())));
            out.push_str(&format!("diff {} = {}\n", s.name, render(&form)));
        }
    }
    for (i, g) in names.iter().enumerate() {
        let f = model.structure(i);
        if !f.is_zero() {
            out.push_str(&format!("d {g} = {}\n", render(f)));
        }
    }
    let metric = model.metric();
    for i in 0..dim {
        for j in i..dim {
            let v = metric.get(i, j);
            let default = if i == j { Scalar::one() } else { Scalar::zero() };
            if *v != default {
                out.push_str(&format!("metric {} {} = {}\n", names[i], names[j], v.render(&sym)));
            }
        }
    }
    out.push_str(&format!("omega = {}\n", render(model.omega())));
    for (i, g) in names.iter().enumerate() {
        out.push_str(&format!("J {g} = {}\n", render(&model.j_rows()[i])));
    }
    out
}
