//! Model files: header lines, a metric given entrywise or as a line element,
//! and optional named vector fields and scalars. The grammar is documented in
//! `docs/model-format.md`.

use std::collections::BTreeSet;

use soliton_core::geometry::{ParamDecl, SpaceModel, VectorField};
use soliton_core::ExpPoly;

use crate::error::{Location, ParseError, ParseErrorKind};
use crate::eval::{eval_differential, eval_plain, Scope};
use crate::format::format_expoly;
use crate::lexer::{tokenize, Tok};
use crate::parser::Cursor;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Constraint {
    None,
    NonZero,
    /// ±1; only the sign symbol `eps` may carry it.
    Pm1,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelDocument {
    pub model: SpaceModel,
    pub fields: Vec<(String, VectorField)>,
    pub scalars: Vec<(String, ExpPoly)>,
}

impl ModelDocument {
    pub fn scope(&self) -> Scope {
        Scope::of_model(&self.model)
    }

    pub fn field(&self, name: &str) -> Option<&VectorField> {
        self.fields.iter().find(|(n, _)| n == name).map(|(_, f)| f)
    }
}

fn err(loc: Location, kind: ParseErrorKind) -> ParseError {
    ParseError::new(loc, kind)
}

struct Header {
    dim: Option<(usize, Location)>,
    coords: Option<(Vec<String>, Location)>,
    params: Vec<(String, Constraint)>,
    eps: bool,
}

fn read_index(cur: &mut Cursor, dim: usize) -> Result<usize, ParseError> {
    cur.expect(Tok::LBracket, "before an index")?;
    let (n, loc) = cur.expect_int("as index")?;
    cur.expect(Tok::RBracket, "after an index")?;
    let i: usize = n.try_into().unwrap_or(usize::MAX);
    if i == 0 || i > dim {
        return Err(err(loc, ParseErrorKind::IndexOutOfRange { index: i, dim }));
    }
    Ok(i - 1)
}

/// A header name, its location, and an optional `:constraint`.
type LineItem = (String, Location, Option<(String, Location)>);

/// Names up to the end of the current line.
fn line_items(cur: &mut Cursor) -> Vec<LineItem> {
    let mut out = Vec::new();
    loop {
        let t = cur.peek_raw().clone();
        match t.tok {
            Tok::Ident(name) => {
                cur.next_raw();
                let constraint = if cur.peek_raw().tok == Tok::Colon {
                    cur.next_raw();
                    match cur.peek_raw().clone() {
                        crate::lexer::Token { tok: Tok::Ident(c), loc } => {
                            cur.next_raw();
                            Some((c, loc))
                        }
                        other => Some((String::new(), other.loc)),
                    }
                } else {
                    None
                };
                out.push((name, t.loc, constraint));
            }
            _ => break,
        }
    }
    out
}

fn end_of_line(cur: &mut Cursor, what: &str) -> Result<(), ParseError> {
    let t = cur.peek_raw().clone();
    match t.tok {
        Tok::Newline | Tok::Eof => Ok(()),
        other => Err(ParseError::syntax(t.loc, format!("unexpected {} in `{what}` line", other.describe()))),
    }
}

const RESERVED: [&str; 8] = ["exp", "dim", "coords", "params", "metric", "line_element", "vectorfield", "scalar"];

impl Header {
    fn scope(&self, at: Location) -> Result<Scope, ParseError> {
        let (coords, _) = self.coords.clone().ok_or_else(|| err(at, ParseErrorKind::Missing("coords".into())))?;
        Ok(Scope { coords, params: self.params.iter().map(|p| p.0.clone()).collect(), eps: self.eps })
    }
}

pub fn parse_model(text: &str) -> Result<ModelDocument, ParseError> {
    let mut cur = Cursor::new(tokenize(text)?);
    let mut h = Header { dim: None, coords: None, params: Vec::new(), eps: false };
    let mut params_seen = false;
    let mut body_started = false;
    let mut metric: Option<Vec<Vec<Option<ExpPoly>>>> = None;
    let mut metric_loc = Location::default();
    let mut fields: Vec<(String, VectorField)> = Vec::new();
    let mut scalars: Vec<(String, ExpPoly)> = Vec::new();
    let mut names_used: BTreeSet<String> = BTreeSet::new();
    let mut scope: Option<Scope> = None;

    loop {
        let t = cur.advance();
        let (kw, loc) = match t.tok {
            Tok::Eof => break,
            Tok::Ident(s) => (s, t.loc),
            other => {
                return Err(ParseError::syntax(t.loc, format!("expected a statement, found {}", other.describe())))
            }
        };
        let header_kw = matches!(kw.as_str(), "dim" | "coords" | "params");
        if header_kw && body_started {
            return Err(ParseError::syntax(loc, format!("`{kw}` must come before metric and field blocks")));
        }
        match kw.as_str() {
            "dim" => {
                if h.dim.is_some() {
                    return Err(err(loc, ParseErrorKind::DuplicateEntry("dim".into())));
                }
                let (n, nloc) = cur.expect_int("after `dim`")?;
                let d: usize = n.try_into().unwrap_or(0);
                if d == 0 {
                    return Err(ParseError::syntax(nloc, "dimension must be a positive integer"));
                }
                h.dim = Some((d, nloc));
                end_of_line(&mut cur, "dim")?;
            }
            "coords" => {
                if h.coords.is_some() {
                    return Err(err(loc, ParseErrorKind::DuplicateEntry("coords".into())));
                }
                let mut names = Vec::new();
                for (name, nloc, c) in line_items(&mut cur) {
                    if let Some((_, cloc)) = c {
                        return Err(ParseError::syntax(cloc, "coordinates take no constraint"));
                    }
                    if RESERVED.contains(&name.as_str()) || name == "eps" || !names_used.insert(name.clone()) {
                        return Err(err(nloc, ParseErrorKind::DuplicateName(name)));
                    }
                    names.push(name);
                }
                end_of_line(&mut cur, "coords")?;
                if names.is_empty() {
                    return Err(ParseError::syntax(loc, "`coords` needs at least one name"));
                }
                h.coords = Some((names, loc));
            }
            "params" => {
                if params_seen {
                    return Err(err(loc, ParseErrorKind::DuplicateEntry("params".into())));
                }
                params_seen = true;
                for (name, nloc, c) in line_items(&mut cur) {
                    let constraint = match &c {
                        None => Constraint::None,
                        Some((s, _)) if s == "nonzero" => Constraint::NonZero,
                        Some((s, _)) if s == "pm1" => Constraint::Pm1,
                        Some((s, cloc)) => {
                            return Err(err(*cloc, ParseErrorKind::BadConstraint { name, constraint: s.clone() }));
                        }
                    };
                    if RESERVED.contains(&name.as_str()) || !names_used.insert(name.clone()) {
                        return Err(err(nloc, ParseErrorKind::DuplicateName(name)));
                    }
                    if name == "eps" {
                        if constraint == Constraint::NonZero {
                            return Err(err(
                                nloc,
                                ParseErrorKind::BadConstraint { name, constraint: "nonzero".into() },
                            ));
                        }
                        h.eps = true;
                    } else if constraint == Constraint::Pm1 {
                        return Err(err(nloc, ParseErrorKind::BadConstraint { name, constraint: "pm1".into() }));
                    } else {
                        h.params.push((name, constraint));
                    }
                }
                end_of_line(&mut cur, "params")?;
            }
            "metric" | "line_element" | "vectorfield" | "scalar" => {
                if !body_started {
                    body_started = true;
                    let (dim, dloc) = h.dim.ok_or_else(|| err(loc, ParseErrorKind::Missing("dim".into())))?;
                    let s = h.scope(loc)?;
                    if s.coords.len() != dim {
                        let cloc = h.coords.as_ref().map(|c| c.1).unwrap_or(dloc);
                        return Err(err(
                            cloc,
                            ParseErrorKind::DimensionMismatch { expected: dim, found: s.coords.len() },
                        ));
                    }
                    for c in &s.coords {
                        for p in s.params.iter().chain(s.coords.iter()) {
                            if p.strip_prefix('d') == Some(c.as_str()) {
                                return Err(err(
                                    loc,
                                    ParseErrorKind::DuplicateName(format!("{p} (differential of {c})")),
                                ));
                            }
                        }
                    }
                    scope = Some(s);
                }
                let s = scope.as_ref().expect("scope set");
                let dim = s.ncoords();
                match kw.as_str() {
                    "metric" | "line_element" => {
                        if metric.is_some() {
                            return Err(err(loc, ParseErrorKind::DuplicateEntry("metric".into())));
                        }
                        metric_loc = loc;
                        let mut g: Vec<Vec<Option<ExpPoly>>> = vec![vec![None; dim]; dim];
                        cur.expect(Tok::LBrace, &format!("after `{kw}`"))?;
                        if kw == "metric" {
                            while cur.peek().tok != Tok::RBrace {
                                let (name, nloc) = cur.expect_ident("in metric block")?;
                                if name != "g" {
                                    return Err(ParseError::syntax(
                                        nloc,
                                        format!("expected `g[i][j]`, found `{name}`"),
                                    ));
                                }
                                let i = read_index(&mut cur, dim)?;
                                let j = read_index(&mut cur, dim)?;
                                cur.expect(Tok::Eq, "after `g[i][j]`")?;
                                let e = cur.expr()?;
                                let v = eval_plain(&e, s)?;
                                cur.expect(Tok::Semi, "after a metric entry")?;
                                if g[i][j].is_some() {
                                    return Err(err(
                                        nloc,
                                        ParseErrorKind::DuplicateEntry(format!("g[{}][{}]", i + 1, j + 1)),
                                    ));
                                }
                                g[i][j] = Some(v.clone());
                                g[j][i] = Some(v);
                            }
                        } else {
                            let e = cur.expr()?;
                            if cur.peek().tok == Tok::Semi {
                                cur.advance();
                            }
                            let v = eval_differential(&e, s)?;
                            let half = soliton_core::ParamScalar::from_ratio(s.nparams(), 1, 2);
                            let mut acc = vec![vec![ExpPoly::zero(dim, s.nparams()); dim]; dim];
                            for (k, f) in &v.parts {
                                if k.len() != 2 {
                                    return Err(err(e.loc, ParseErrorKind::NotQuadratic(k.len())));
                                }
                                let (a, b) = (k[0], k[1]);
                                if a == b {
                                    acc[a][a] = &acc[a][a] + f;
                                } else {
                                    let hf = f.scale(&half);
                                    acc[a][b] = &acc[a][b] + &hf;
                                    acc[b][a] = &acc[b][a] + &hf;
                                }
                            }
                            g = acc.into_iter().map(|r| r.into_iter().map(Some).collect()).collect();
                        }
                        cur.expect(Tok::RBrace, &format!("to close `{kw}`"))?;
                        metric = Some(g);
                    }
                    "vectorfield" => {
                        let (name, nloc) = cur.expect_ident("after `vectorfield`")?;
                        if !names_used.insert(name.clone()) {
                            return Err(err(nloc, ParseErrorKind::DuplicateName(name)));
                        }
                        cur.expect(Tok::LBrace, "after the field name")?;
                        let mut comps: Vec<Option<ExpPoly>> = vec![None; dim];
                        while cur.peek().tok != Tok::RBrace {
                            let (x, xloc) = cur.expect_ident("in vectorfield block")?;
                            if x != "X" {
                                return Err(ParseError::syntax(xloc, format!("expected `X[i]`, found `{x}`")));
                            }
                            let i = read_index(&mut cur, dim)?;
                            cur.expect(Tok::Eq, "after `X[i]`")?;
                            let e = cur.expr()?;
                            let v = eval_plain(&e, s)?;
                            cur.expect(Tok::Semi, "after a component")?;
                            if comps[i].is_some() {
                                return Err(err(xloc, ParseErrorKind::DuplicateEntry(format!("X[{}]", i + 1))));
                            }
                            comps[i] = Some(v);
                        }
                        cur.expect(Tok::RBrace, "to close `vectorfield`")?;
                        let zero = ExpPoly::zero(dim, s.nparams());
                        fields
                            .push((name, VectorField(comps.into_iter().map(|c| c.unwrap_or(zero.clone())).collect())));
                    }
                    _ => {
                        let (name, nloc) = cur.expect_ident("after `scalar`")?;
                        if !names_used.insert(name.clone()) {
                            return Err(err(nloc, ParseErrorKind::DuplicateName(name)));
                        }
                        cur.expect(Tok::Eq, "after the scalar name")?;
                        let e = cur.expr()?;
                        let v = eval_plain(&e, s)?;
                        cur.expect(Tok::Semi, "after a scalar definition")?;
                        scalars.push((name, v));
                    }
                }
            }
            other => return Err(ParseError::syntax(loc, format!("unknown statement `{other}`"))),
        }
    }

    let eof = cur.peek().loc;
    let Some(g) = metric else {
        let what = if h.dim.is_none() { "dim" } else { "metric or line_element block" };
        return Err(err(eof, ParseErrorKind::Missing(what.into())));
    };
    let s = scope.expect("metric implies scope");
    let zero = ExpPoly::zero(s.ncoords(), s.nparams());
    let g: Vec<Vec<ExpPoly>> =
        g.into_iter().map(|r| r.into_iter().map(|e| e.unwrap_or(zero.clone())).collect()).collect();
    let params = h.params.iter().map(|(n, c)| ParamDecl::new(n, *c == Constraint::NonZero)).collect();
    let model = SpaceModel::new(s.coords.clone(), params, h.eps, g)
        .map_err(|e| err(metric_loc, ParseErrorKind::Metric(e.to_string())))?;
    Ok(ModelDocument { model, fields, scalars })
}

/// Canonical text of a model document; `parse_model` reads it back exactly.
pub fn format_model(doc: &ModelDocument) -> String {
    let m = &doc.model;
    let scope = doc.scope();
    let mut s = String::new();
    s.push_str(&format!("dim {}\n", m.dim()));
    s.push_str(&format!("coords {}\n", m.coords().join(" ")));
    let mut params: Vec<String> = Vec::new();
    if m.uses_eps() {
        params.push("eps:pm1".to_string());
    }
    for p in m.params() {
        params.push(if p.nonzero { format!("{}:nonzero", p.name) } else { p.name.clone() });
    }
    if !params.is_empty() {
        s.push_str(&format!("params {}\n", params.join(" ")));
    }
    s.push_str("metric {\n");
    for i in 0..m.dim() {
        for j in i..m.dim() {
            let e = m.g(i, j);
            if !e.is_zero() {
                s.push_str(&format!("  g[{}][{}] = {};\n", i + 1, j + 1, format_expoly(e, &scope)));
            }
        }
    }
    s.push_str("}\n");
    for (name, f) in &doc.fields {
        s.push_str(&format!("vectorfield {name} {{\n"));
        for (i, c) in f.0.iter().enumerate() {
            if !c.is_zero() {
                s.push_str(&format!("  X[{}] = {};\n", i + 1, format_expoly(c, &scope)));
            }
        }
        s.push_str("}\n");
    }
    for (name, e) in &doc.scalars {
        s.push_str(&format!("scalar {name} = {};\n", format_expoly(e, &scope)));
    }
    s
}

/// SHA-256 of the canonical text, hex encoded.
pub fn model_hash(doc: &ModelDocument) -> String {
    use sha2::{Digest, Sha256};
    let digest = Sha256::digest(format_model(doc).as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}
