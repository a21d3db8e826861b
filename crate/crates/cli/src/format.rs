//! Line-oriented document format.
//!
//! A document starts with `kind <kind>`, followed by body lines and
//! optional `[section]` blocks. Tokens are separated by whitespace except
//! inside `(...)` or `[...]`, so permutation names such as `(1 2)(3 4)`
//! stay whole. `#` starts a comment. See `docs/FORMAT.md` for the grammar.

use std::collections::HashMap;
use std::fmt;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use gpdkit::dblgpd::{Cube, DoubleGroupoidXM, EhInstance, LabeledSquare};
use gpdkit::group::{parse_cycles, Elem, FiniteGroup};
use gpdkit::groupoid::{Arrow, ArrowInfo, FiniteGroupoid, Obj};
use gpdkit::presentation::GroupoidPresentation;
use gpdkit::vankampen::{Complex2, Face, Subcomplex, SubcomplexCover};
use gpdkit::word::{Edge, Letter, Quiver, Word};
use gpdkit::xmod::CrossedModule;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    col: usize,
}

#[derive(Debug, Clone)]
struct Line<'a> {
    no: usize,
    toks: Vec<Tok<'a>>,
}

impl<'a> Line<'a> {
    fn err(&self, i: usize, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.no,
            column: self.toks.get(i).map(|t| t.col).unwrap_or(1),
            message: message.into(),
        }
    }

    fn key(&self) -> &'a str {
        self.toks[0].text
    }

    fn arg(&self, i: usize) -> Result<&'a str, ParseError> {
        self.toks
            .get(i)
            .map(|t| t.text)
            .ok_or_else(|| self.err(self.toks.len().saturating_sub(1), format!("`{}` needs more arguments", self.key())))
    }

    fn expect_len(&self, n: usize) -> Result<(), ParseError> {
        match self.toks.len().cmp(&n) {
            std::cmp::Ordering::Equal => Ok(()),
            std::cmp::Ordering::Less => Err(self.err(self.toks.len() - 1, format!("`{}` needs {} arguments", self.key(), n - 1))),
            std::cmp::Ordering::Greater => Err(self.err(n, "unexpected extra token")),
        }
    }

    fn number(&self, i: usize) -> Result<usize, ParseError> {
        self.arg(i)?
            .parse()
            .map_err(|_| self.err(i, format!("expected a number, found `{}`", self.toks[i].text)))
    }

    fn rest(&self, from: usize) -> Vec<&'a str> {
        self.toks[from.min(self.toks.len())..].iter().map(|t| t.text).collect()
    }
}

fn tokenize(text: &str) -> Result<Vec<Line<'_>>, ParseError> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let no = i + 1;
        let mut toks = Vec::new();
        let mut depth = 0i32;
        let mut start: Option<usize> = None;
        for (pos, ch) in raw.char_indices() {
            if depth == 0 && start.is_none() && ch == '#' {
                break;
            }
            match ch {
                '(' | '[' => depth += 1,
                ')' | ']' => {
                    depth -= 1;
                    if depth < 0 {
                        return Err(ParseError {
                            line: no,
                            column: raw[..pos].chars().count() + 1,
                            message: "unbalanced bracket".into(),
                        });
                    }
                }
                _ => {}
            }
            if ch.is_whitespace() && depth == 0 {
                if let Some(s) = start.take() {
                    toks.push(Tok {
                        text: &raw[s..pos],
                        col: raw[..s].chars().count() + 1,
                    });
                }
            } else if start.is_none() {
                start = Some(pos);
            }
        }
        if depth != 0 {
            return Err(ParseError {
                line: no,
                column: raw.chars().count() + 1,
                message: "unbalanced bracket".into(),
            });
        }
        if let Some(s) = start {
            toks.push(Tok {
                text: &raw[s..],
                col: raw[..s].chars().count() + 1,
            });
        }
        if !toks.is_empty() {
            out.push(Line { no, toks });
        }
    }
    Ok(out)
}

struct Section<'a> {
    name: String,
    arg: Option<String>,
    line: usize,
    lines: Vec<Line<'a>>,
}

struct Raw<'a> {
    kind: String,
    kind_line: Line<'a>,
    main: Vec<Line<'a>>,
    sections: Vec<Section<'a>>,
}

impl<'a> Raw<'a> {
    fn section(&self, name: &str) -> Option<&Section<'a>> {
        self.sections.iter().find(|s| s.name == name)
    }

    fn require(&self, name: &str) -> Result<&Section<'a>, ParseError> {
        self.section(name).ok_or_else(|| ParseError {
            line: self.kind_line.no,
            column: 1,
            message: format!("missing [{name}] section"),
        })
    }
}

fn split(text: &str) -> Result<Raw<'_>, ParseError> {
    let lines = tokenize(text)?;
    let mut it = lines.into_iter();
    let first = it.next().ok_or(ParseError {
        line: 1,
        column: 1,
        message: "empty document".into(),
    })?;
    if first.key() != "kind" {
        return Err(first.err(0, "document must start with `kind <kind>`"));
    }
    first.expect_len(2)?;
    let mut raw = Raw {
        kind: first.toks[1].text.to_string(),
        kind_line: first,
        main: Vec::new(),
        sections: Vec::new(),
    };
    for line in it {
        let t = line.toks[0].text;
        if line.toks.len() == 1 && t.starts_with('[') && t.ends_with(']') {
            let inner: Vec<&str> = t[1..t.len() - 1].split_whitespace().collect();
            if inner.is_empty() || inner.len() > 2 {
                return Err(line.err(0, "section header is `[name]` or `[name arg]`"));
            }
            raw.sections.push(Section {
                name: inner[0].to_string(),
                arg: inner.get(1).map(|s| s.to_string()),
                line: line.no,
                lines: Vec::new(),
            });
        } else if let Some(s) = raw.sections.last_mut() {
            s.lines.push(line);
        } else {
            raw.main.push(line);
        }
    }
    Ok(raw)
}

fn unknown_key(line: &Line<'_>) -> ParseError {
    line.err(0, format!("unexpected `{}`", line.key()))
}

/// A cube under construction: id, edges so far, which edges were given, header line.
type PendingCube<'a> = (String, Cube, [[[bool; 2]; 2]; 3], Line<'a>);

fn named(names: &[String], line: &Line<'_>, i: usize, what: &str) -> Result<usize, ParseError> {
    let t = line.arg(i)?;
    names
        .iter()
        .position(|n| n == t)
        .ok_or_else(|| line.err(i, format!("unknown {what} `{t}`")))
}

// ---- groups and groupoids ----

fn parse_group(lines: &[Line<'_>], at: usize) -> Result<FiniteGroup, ParseError> {
    let first = lines.first().ok_or(ParseError {
        line: at,
        column: 1,
        message: "empty group body".into(),
    })?;
    let wrap = |line: &Line<'_>, e: gpdkit::GroupError| line.err(0, e.to_string());
    let single = |n: usize| -> Result<(), ParseError> {
        if let Some(extra) = lines.get(n) {
            return Err(extra.err(0, "unexpected line after group definition"));
        }
        Ok(())
    };
    match first.key() {
        "trivial" => {
            first.expect_len(1)?;
            single(1)?;
            Ok(FiniteGroup::trivial())
        }
        "cyclic" | "symmetric" | "alternating" => {
            first.expect_len(2)?;
            single(1)?;
            let n = first.number(1)?;
            if n == 0 || (first.key() != "cyclic" && n > 7) {
                return Err(first.err(1, "order out of range"));
            }
            Ok(match first.key() {
                "cyclic" => FiniteGroup::cyclic(n),
                "symmetric" => FiniteGroup::symmetric(n),
                _ => FiniteGroup::alternating(n),
            })
        }
        "perm" => {
            first.expect_len(2)?;
            let degree = first.number(1)?;
            let mut gens = Vec::new();
            for line in &lines[1..] {
                if line.key() != "gen" {
                    return Err(unknown_key(line));
                }
                line.expect_len(2)?;
                gens.push(parse_cycles(line.toks[1].text, degree).map_err(|e| line.err(1, e.to_string()))?);
            }
            FiniteGroup::from_permutations(degree, &gens).map_err(|e| wrap(first, e))
        }
        "elements" => {
            let names: Vec<String> = first.rest(1).iter().map(|s| s.to_string()).collect();
            let mut table = Vec::new();
            for line in &lines[1..] {
                if line.key() != "row" {
                    return Err(unknown_key(line));
                }
                line.expect_len(names.len() + 1)?;
                let row = (1..line.toks.len())
                    .map(|i| named(&names, line, i, "element"))
                    .collect::<Result<Vec<_>, _>>()?;
                table.push(row);
            }
            if table.len() != names.len() {
                return Err(first.err(0, format!("expected {} rows, found {}", names.len(), table.len())));
            }
            FiniteGroup::from_table(names, table).map_err(|e| wrap(first, e))
        }
        _ => Err(unknown_key(first)),
    }
}

fn write_group(out: &mut String, g: &FiniteGroup) {
    let _ = writeln!(out, "elements {}", g.names().join(" "));
    for a in g.elements() {
        let row: Vec<&str> = g.elements().map(|b| g.name(g.mul(a, b))).collect();
        let _ = writeln!(out, "row {}", row.join(" "));
    }
}

fn parse_groupoid(lines: &[Line<'_>], at: usize) -> Result<FiniteGroupoid, ParseError> {
    let Some(first) = lines.first() else {
        return Err(ParseError {
            line: at,
            column: 1,
            message: "empty groupoid body".into(),
        });
    };
    match first.key() {
        "interval" => {
            first.expect_len(1)?;
            if let Some(extra) = lines.get(1) {
                return Err(extra.err(0, "unexpected line after `interval`"));
            }
            Ok(FiniteGroupoid::interval())
        }
        "objects" => {
            let objects: Vec<String> = first.rest(1).iter().map(|s| s.to_string()).collect();
            let mut arrows: Vec<ArrowInfo> = Vec::new();
            let mut names: Vec<String> = Vec::new();
            let mut table = HashMap::new();
            for line in &lines[1..] {
                match line.key() {
                    "arrow" => {
                        line.expect_len(4)?;
                        names.push(line.toks[1].text.to_string());
                        arrows.push(ArrowInfo {
                            name: line.toks[1].text.to_string(),
                            src: Obj(named(&objects, line, 2, "object")?),
                            tgt: Obj(named(&objects, line, 3, "object")?),
                        });
                    }
                    "compose" => {
                        line.expect_len(4)?;
                        let a = named(&names, line, 1, "arrow")?;
                        let b = named(&names, line, 2, "arrow")?;
                        let c = named(&names, line, 3, "arrow")?;
                        table.insert((a, b), c);
                    }
                    _ => return Err(unknown_key(line)),
                }
            }
            FiniteGroupoid::new(objects, arrows, |a, b| table.get(&(a.0, b.0)).map(|&c| Arrow(c)))
                .map_err(|e| first.err(0, e.to_string()))
        }
        _ => Ok(FiniteGroupoid::from_group(&parse_group(lines, at)?)),
    }
}

/// The group behind a one-object groupoid whose object is named `*`.
pub fn groupoid_as_group(g: &FiniteGroupoid) -> Option<FiniteGroup> {
    if g.object_count() != 1 || g.object_name(Obj(0)) != "*" {
        return None;
    }
    let names = g.arrows().map(|a| g.arrow_name(a).to_string()).collect();
    let grp = FiniteGroup::from_fn(names, |a, b| g.compose(Arrow(a), Arrow(b)).0).ok()?;
    (FiniteGroupoid::from_group(&grp) == *g).then_some(grp)
}

fn write_groupoid(out: &mut String, g: &FiniteGroupoid) {
    if let Some(grp) = groupoid_as_group(g) {
        write_group(out, &grp);
        return;
    }
    let objects: Vec<&str> = g.objects().map(|x| g.object_name(x)).collect();
    let _ = writeln!(out, "objects {}", objects.join(" "));
    for a in g.arrows() {
        let _ = writeln!(
            out,
            "arrow {} {} {}",
            g.arrow_name(a),
            g.object_name(g.src(a)),
            g.object_name(g.tgt(a))
        );
    }
    for a in g.arrows() {
        for b in g.arrows() {
            if let Some(c) = g.try_compose(a, b) {
                let _ = writeln!(out, "compose {} {} {}", g.arrow_name(a), g.arrow_name(b), g.arrow_name(c));
            }
        }
    }
}

// ---- quivers, presentations, complexes ----

struct QuiverLines {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

fn quiver_line(q: &mut QuiverLines, line: &Line<'_>) -> Result<bool, ParseError> {
    match line.key() {
        "vertices" => {
            q.vertices = line.rest(1).iter().map(|s| s.to_string()).collect();
            Ok(true)
        }
        "edge" => {
            line.expect_len(4)?;
            q.edges.push(Edge {
                name: line.toks[1].text.to_string(),
                src: named(&q.vertices, line, 2, "vertex")?,
                tgt: named(&q.vertices, line, 3, "vertex")?,
            });
            Ok(true)
        }
        _ => Ok(false),
    }
}

fn build_quiver(q: QuiverLines, at: &Line<'_>) -> Result<Quiver, ParseError> {
    Quiver::new(q.vertices, q.edges).map_err(|e| at.err(0, e.to_string()))
}

/// Parses `a b^-1 c` or `1@v` against a quiver.
pub fn parse_word(q: &Quiver, toks: &[&str]) -> Result<Word, String> {
    if let [single] = toks {
        if let Some(v) = single.strip_prefix("1@") {
            let v = q.vertex_by_name(v).ok_or_else(|| format!("unknown vertex `{v}`"))?;
            return Ok(Word::empty(v));
        }
    }
    if toks.is_empty() {
        return Err("empty word; write `1@vertex`".into());
    }
    let mut letters = Vec::new();
    for t in toks {
        let (name, inverse) = match t.strip_suffix("^-1") {
            Some(n) => (n, true),
            None => (*t, false),
        };
        let e = q.edge_by_name(name).ok_or_else(|| format!("unknown edge `{name}`"))?;
        letters.push(Letter { edge: e, inverse });
    }
    Word::new(q, None, letters).map_err(|e| e.to_string())
}

fn word_at(q: &Quiver, line: &Line<'_>, from: usize, to: usize) -> Result<Word, ParseError> {
    let toks: Vec<&str> = line.toks[from..to].iter().map(|t| t.text).collect();
    parse_word(q, &toks).map_err(|m| line.err(from.min(line.toks.len() - 1), m))
}

fn write_quiver(out: &mut String, q: &Quiver) {
    let _ = writeln!(out, "vertices {}", q.vertices().join(" "));
    for e in q.edges() {
        let _ = writeln!(out, "edge {} {} {}", e.name, q.vertex_name(e.src), q.vertex_name(e.tgt));
    }
}

fn parse_quiver_body(lines: &[Line<'_>], at: &Line<'_>) -> Result<Quiver, ParseError> {
    let mut q = QuiverLines {
        vertices: Vec::new(),
        edges: Vec::new(),
    };
    for line in lines {
        if !quiver_line(&mut q, line)? {
            return Err(unknown_key(line));
        }
    }
    build_quiver(q, at)
}

fn parse_presentation(lines: &[Line<'_>], at: &Line<'_>) -> Result<GroupoidPresentation, ParseError> {
    let (shape, rels): (Vec<_>, Vec<_>) = lines.iter().cloned().partition(|l| l.key() != "relation");
    let q = parse_quiver_body(&shape, at)?;
    let mut relations = Vec::new();
    for line in &rels {
        let eq = line
            .toks
            .iter()
            .position(|t| t.text == "=")
            .ok_or_else(|| line.err(0, "relation needs `=`"))?;
        let u = word_at(&q, line, 1, eq)?;
        let v = word_at(&q, line, eq + 1, line.toks.len())?;
        relations.push((u, v));
    }
    GroupoidPresentation::new(q, relations).map_err(|e| at.err(0, e.to_string()))
}

fn write_presentation(out: &mut String, p: &GroupoidPresentation) {
    let q = p.quiver();
    write_quiver(out, q);
    for (u, v) in p.relations() {
        let _ = writeln!(out, "relation {} = {}", q.show(u), q.show(v));
    }
}

fn parse_complex(lines: &[Line<'_>], at: &Line<'_>) -> Result<Complex2, ParseError> {
    let (shape, face_lines): (Vec<_>, Vec<_>) = lines.iter().cloned().partition(|l| l.key() != "face");
    let q = parse_quiver_body(&shape, at)?;
    let mut faces = Vec::new();
    for line in &face_lines {
        line.arg(2)?;
        let boundary = word_at(&q, line, 2, line.toks.len())?;
        faces.push(Face {
            name: line.toks[1].text.to_string(),
            boundary,
        });
    }
    Complex2::new(q, faces).map_err(|e| at.err(0, e.to_string()))
}

fn write_complex(out: &mut String, x: &Complex2) {
    let q = x.quiver();
    write_quiver(out, q);
    for f in x.faces() {
        let _ = writeln!(out, "face {} {}", f.name, q.show(&f.boundary));
    }
}

fn cell_names(x: &Complex2, s: &Subcomplex) -> Vec<String> {
    let q = x.quiver();
    let mut out: Vec<String> = Vec::new();
    out.extend((0..q.vertex_count()).filter(|&v| s.vertices[v]).map(|v| q.vertex_name(v).to_string()));
    out.extend((0..q.edge_count()).filter(|&e| s.edges[e]).map(|e| q.edge(e).name.clone()));
    out.extend((0..x.faces().len()).filter(|&f| s.faces[f]).map(|f| x.faces()[f].name.clone()));
    out
}

// ---- crossed modules ----

fn parse_xmod(raw: &Raw<'_>) -> Result<CrossedModule, ParseError> {
    let ps = raw.require("P")?;
    let p = parse_groupoid(&ps.lines, ps.line)?;
    let header_err = |s: &Section<'_>, m: String| ParseError {
        line: s.line,
        column: 1,
        message: m,
    };
    let obj_of = |s: &Section<'_>| -> Result<Obj, ParseError> {
        match &s.arg {
            None if p.object_count() == 1 => Ok(Obj(0)),
            None => Err(header_err(s, format!("[{}] needs an object name", s.name))),
            Some(name) => p
                .object_by_name(name)
                .ok_or_else(|| header_err(s, format!("unknown object `{name}`"))),
        }
    };
    let mut groups: Vec<Option<FiniteGroup>> = vec![None; p.object_count()];
    let mut mu: Vec<Option<Vec<Arrow>>> = vec![None; p.object_count()];
    for s in raw.sections.iter().filter(|s| s.name == "M") {
        let x = obj_of(s)?;
        groups[x.0] = Some(parse_group(&s.lines, s.line)?);
    }
    let groups: Vec<FiniteGroup> = groups
        .into_iter()
        .enumerate()
        .map(|(i, g)| {
            g.ok_or_else(|| {
                header_err(
                    raw.require("P").expect("checked"),
                    format!("missing [M] section for object `{}`", p.object_name(Obj(i))),
                )
            })
        })
        .collect::<Result<_, _>>()?;
    let arrow_names: Vec<String> = p.arrows().map(|a| p.arrow_name(a).to_string()).collect();
    for s in raw.sections.iter().filter(|s| s.name == "mu") {
        let x = obj_of(s)?;
        let g = &groups[x.0];
        let mut map = vec![None; g.order()];
        for line in &s.lines {
            line.expect_len(3)?;
            if line.toks[1].text != "->" {
                return Err(line.err(1, "expected `->`"));
            }
            let m = named(g.names(), line, 0, "element")?;
            map[m] = Some(Arrow(named(&arrow_names, line, 2, "arrow")?));
        }
        let map: Option<Vec<Arrow>> = map.into_iter().collect();
        mu[x.0] = Some(map.ok_or_else(|| header_err(s, "μ must be given for every element".into()))?);
    }
    let mu: Vec<Vec<Arrow>> = mu
        .into_iter()
        .enumerate()
        .map(|(i, m)| {
            m.ok_or_else(|| {
                header_err(
                    raw.require("P").expect("checked"),
                    format!("missing [mu] section for object `{}`", p.object_name(Obj(i))),
                )
            })
        })
        .collect::<Result<_, _>>()?;
    let acts = raw.require("action")?;
    let mut action: Vec<Vec<Option<Elem>>> = p.arrows().map(|a| vec![None; groups[p.src(a).0].order()]).collect();
    for line in &acts.lines {
        match line.key() {
            "trivial" if line.toks.len() == 1 => {
                for a in p.arrows() {
                    let (from, to) = (&groups[p.src(a).0], &groups[p.tgt(a).0]);
                    if from.order() != to.order() {
                        return Err(line.err(0, "trivial action needs equal groups along every arrow"));
                    }
                    action[a.0] = (0..from.order()).map(Some).collect();
                }
            }
            "conjugation" if line.toks.len() == 1 => {
                if p.object_count() != 1 {
                    return Err(line.err(0, "conjugation action needs a one-object base"));
                }
                let g = &groups[0];
                for a in p.arrows() {
                    for m in g.elements() {
                        let as_p = p
                            .arrow_by_name(g.name(m))
                            .ok_or_else(|| line.err(0, format!("`{}` is not an element of P", g.name(m))))?;
                        let c = p.compose_all(&[p.inverse(a), as_p, a]).expect("one object");
                        let img = g
                            .index_of(p.arrow_name(c))
                            .ok_or_else(|| line.err(0, format!("`{}` is not in M", p.arrow_name(c))))?;
                        action[a.0][m] = Some(img);
                    }
                }
            }
            _ => {
                line.expect_len(5)?;
                if line.toks[1].text != "by" || line.toks[3].text != "->" {
                    return Err(line.err(0, "expected `m by p -> m'`"));
                }
                let a = named(&arrow_names, line, 2, "arrow")?;
                let from = &groups[p.src(Arrow(a)).0];
                let to = &groups[p.tgt(Arrow(a)).0];
                let m = named(from.names(), line, 0, "element")?;
                action[a][m] = Some(named(to.names(), line, 4, "element")?);
            }
        }
    }
    let action: Vec<Vec<Elem>> = action
        .into_iter()
        .enumerate()
        .map(|(a, row)| {
            row.into_iter().collect::<Option<Vec<_>>>().ok_or_else(|| ParseError {
                line: acts.line,
                column: 1,
                message: format!("action of `{}` is incomplete", arrow_names[a]),
            })
        })
        .collect::<Result<_, _>>()?;
    CrossedModule::new(p, groups, mu, action).map_err(|e| ParseError {
        line: raw.kind_line.no,
        column: 1,
        message: e.to_string(),
    })
}

fn write_xmod(out: &mut String, xm: &CrossedModule) {
    let p = xm.base();
    out.push_str("[P]\n");
    write_groupoid(out, p);
    let suffix = |x: Obj| {
        if p.object_count() == 1 {
            String::new()
        } else {
            format!(" {}", p.object_name(x))
        }
    };
    for x in p.objects() {
        let _ = writeln!(out, "[M{}]", suffix(x));
        write_group(out, xm.group(x));
    }
    for x in p.objects() {
        let _ = writeln!(out, "[mu{}]", suffix(x));
        let g = xm.group(x);
        for m in g.elements() {
            let _ = writeln!(out, "{} -> {}", g.name(m), p.arrow_name(xm.mu(x, m)));
        }
    }
    out.push_str("[action]\n");
    for a in p.arrows() {
        let (from, to) = (xm.group(p.src(a)), xm.group(p.tgt(a)));
        for m in from.elements() {
            let _ = writeln!(out, "{} by {} -> {}", from.name(m), p.arrow_name(a), to.name(xm.act(m, a)));
        }
    }
}

// ---- squares, cubes, Eckmann-Hilton, morphisms ----

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquareDoc {
    /// Path as written in the document.
    pub xmod_path: String,
    pub xmod: CrossedModule,
    pub squares: Vec<(String, LabeledSquare)>,
    pub rows: Vec<Vec<String>>,
}

impl SquareDoc {
    pub fn square(&self, id: &str) -> Option<LabeledSquare> {
        self.squares.iter().find(|(n, _)| n == id).map(|(_, s)| *s)
    }

    pub fn array(&self) -> Vec<Vec<LabeledSquare>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|id| self.square(id).expect("validated")).collect())
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeDoc {
    pub groupoid: FiniteGroupoid,
    pub cubes: Vec<(String, Cube)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MorphismDoc {
    pub vertices: Vec<(String, String)>,
    /// Edge name and image word tokens.
    pub edges: Vec<(String, Vec<String>)>,
}

impl MorphismDoc {
    pub fn resolve(
        &self,
        from: &GroupoidPresentation,
        to: &GroupoidPresentation,
    ) -> Result<gpdkit::presentation::PresMorphism, String> {
        let (qf, qt) = (from.quiver(), to.quiver());
        let mut vertex_map = vec![None; qf.vertex_count()];
        for (a, b) in &self.vertices {
            let i = qf.vertex_by_name(a).ok_or_else(|| format!("unknown source vertex `{a}`"))?;
            let j = qt.vertex_by_name(b).ok_or_else(|| format!("unknown target vertex `{b}`"))?;
            vertex_map[i] = Some(j);
        }
        let vertex_map = vertex_map
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| format!("vertex `{}` is not mapped", qf.vertex_name(i))))
            .collect::<Result<Vec<_>, _>>()?;
        let mut edge_map = vec![None; qf.edge_count()];
        for (e, toks) in &self.edges {
            let i = qf.edge_by_name(e).ok_or_else(|| format!("unknown source edge `{e}`"))?;
            let toks: Vec<&str> = toks.iter().map(|s| s.as_str()).collect();
            edge_map[i] = Some(parse_word(qt, &toks)?);
        }
        let edge_map = edge_map
            .into_iter()
            .enumerate()
            .map(|(i, w)| w.ok_or_else(|| format!("edge `{}` is not mapped", qf.edge(i).name)))
            .collect::<Result<Vec<_>, _>>()?;
        let m = gpdkit::presentation::PresMorphism { vertex_map, edge_map };
        m.validate(from, to).map_err(|e| e.to_string())?;
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Group(FiniteGroup),
    Groupoid(FiniteGroupoid),
    Quiver(Quiver),
    Presentation(GroupoidPresentation),
    Complex(Complex2),
    Cover(SubcomplexCover),
    XMod(CrossedModule),
    Squares(SquareDoc),
    Cubes(CubeDoc),
    Eh(EhInstance),
    Morphism(MorphismDoc),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Group(_) => "group",
            Document::Groupoid(_) => "groupoid",
            Document::Quiver(_) => "quiver",
            Document::Presentation(_) => "presentation",
            Document::Complex(_) => "complex",
            Document::Cover(_) => "cover",
            Document::XMod(_) => "xmod",
            Document::Squares(_) => "square",
            Document::Cubes(_) => "cube",
            Document::Eh(_) => "eh",
            Document::Morphism(_) => "morphism",
        }
    }
}

/// Loads crossed modules referenced from a document, relative to its
/// directory.
pub trait Resolver {
    fn xmod(&self, path: &str) -> Result<CrossedModule, String>;
}

/// Resolves paths on disk relative to `base`.
pub struct FsResolver {
    pub base: PathBuf,
}

impl Resolver for FsResolver {
    fn xmod(&self, path: &str) -> Result<CrossedModule, String> {
        let full = self.base.join(path);
        let text = std::fs::read_to_string(&full).map_err(|e| format!("{}: {e}", full.display()))?;
        let parent = full.parent().map(Path::to_path_buf).unwrap_or_default();
        match parse(&text, &FsResolver { base: parent }).map_err(|e| format!("{}: {e}", full.display()))? {
            Document::XMod(x) => Ok(x),
            other => Err(format!("{}: expected an xmod document, found {}", full.display(), other.kind())),
        }
    }
}

fn cube_key(key: &str) -> Option<(char, usize, usize)> {
    let mut chars = key.chars();
    let axis = chars.next().filter(|c| matches!(c, 'x' | 'y' | 'z'))?;
    let i = chars.next()?.to_digit(2)? as usize;
    let j = chars.next()?.to_digit(2)? as usize;
    chars.next().is_none().then_some((axis, i, j))
}

pub fn parse(text: &str, resolver: &dyn Resolver) -> Result<Document, ParseError> {
    let raw = split(text)?;
    let at = raw.kind_line.clone();
    let no_sections = |raw: &Raw<'_>| -> Result<(), ParseError> {
        match raw.sections.first() {
            Some(s) => Err(ParseError {
                line: s.line,
                column: 1,
                message: format!("unexpected [{}] section", s.name),
            }),
            None => Ok(()),
        }
    };
    match raw.kind.as_str() {
        "group" => {
            no_sections(&raw)?;
            Ok(Document::Group(parse_group(&raw.main, at.no)?))
        }
        "groupoid" => {
            no_sections(&raw)?;
            Ok(Document::Groupoid(parse_groupoid(&raw.main, at.no)?))
        }
        "quiver" => {
            no_sections(&raw)?;
            Ok(Document::Quiver(parse_quiver_body(&raw.main, &at)?))
        }
        "presentation" => {
            no_sections(&raw)?;
            Ok(Document::Presentation(parse_presentation(&raw.main, &at)?))
        }
        "complex" => {
            no_sections(&raw)?;
            Ok(Document::Complex(parse_complex(&raw.main, &at)?))
        }
        "cover" => {
            if let Some(l) = raw.main.first() {
                return Err(unknown_key(l));
            }
            let cs = raw.require("complex")?;
            let x = parse_complex(&cs.lines, &at)?;
            let piece = |name: &str| -> Result<Subcomplex, ParseError> {
                let s = raw.require(name)?;
                let mut cells = Vec::new();
                for line in &s.lines {
                    if line.key() != "cells" {
                        return Err(unknown_key(line));
                    }
                    cells.extend(line.rest(1));
                }
                x.subcomplex(name, cells).map_err(|e| ParseError {
                    line: s.line,
                    column: 1,
                    message: e.to_string(),
                })
            };
            let (u, v) = (piece("U")?, piece("V")?);
            SubcomplexCover::new(x, u, v)
                .map(Document::Cover)
                .map_err(|e| at.err(0, e.to_string()))
        }
        "xmod" => {
            if let Some(l) = raw.main.first() {
                return Err(unknown_key(l));
            }
            Ok(Document::XMod(parse_xmod(&raw)?))
        }
        "square" => {
            no_sections(&raw)?;
            let mut doc: Option<SquareDoc> = None;
            let mut dg: Option<DoubleGroupoidXM> = None;
            for line in &raw.main {
                match line.key() {
                    "xmod" => {
                        line.expect_len(2)?;
                        if doc.is_some() {
                            return Err(line.err(0, "only one `xmod` line is allowed"));
                        }
                        let path = line.toks[1].text;
                        let xm = resolver.xmod(path).map_err(|m| line.err(1, m))?;
                        dg = Some(DoubleGroupoidXM::from_xmod(&xm).map_err(|e| line.err(1, e.to_string()))?);
                        doc = Some(SquareDoc {
                            xmod_path: path.to_string(),
                            xmod: xm,
                            squares: Vec::new(),
                            rows: Vec::new(),
                        });
                    }
                    "square" => {
                        let (Some(d), Some(dg)) = (doc.as_mut(), dg.as_ref()) else {
                            return Err(line.err(0, "`xmod` must come before squares"));
                        };
                        line.expect_len(7)?;
                        let id = line.toks[1].text.to_string();
                        if d.squares.iter().any(|(n, _)| *n == id) {
                            return Err(line.err(1, format!("duplicate square `{id}`")));
                        }
                        let p = dg.base();
                        let arrows: Vec<String> = p.arrows().map(|a| p.arrow_name(a).to_string()).collect();
                        let mut fields: HashMap<&str, (usize, &str)> = HashMap::new();
                        for (i, t) in line.toks.iter().enumerate().skip(2) {
                            let (k, v) = t.text.split_once('=').ok_or_else(|| line.err(i, "expected key=value"))?;
                            fields.insert(k, (i, v));
                        }
                        let arrow = |k: &str| -> Result<Arrow, ParseError> {
                            let (i, v) = fields.get(k).ok_or_else(|| line.err(0, format!("missing `{k}=`")))?;
                            arrows
                                .iter()
                                .position(|a| a == v)
                                .map(Arrow)
                                .ok_or_else(|| line.err(*i, format!("unknown arrow `{v}`")))
                        };
                        let (top, left, right, bottom) = (arrow("top")?, arrow("left")?, arrow("right")?, arrow("bottom")?);
                        let (li, lv) = fields.get("label").ok_or_else(|| line.err(0, "missing `label=`"))?;
                        let m = dg.xmod().group(p.tgt(right));
                        let label = m
                            .index_of(lv)
                            .ok_or_else(|| line.err(*li, format!("unknown label `{lv}`")))?;
                        let s = dg
                            .square(label, top, left, right, bottom)
                            .map_err(|e| line.err(1, e.to_string()))?;
                        d.squares.push((id, s));
                    }
                    "row" => {
                        let Some(d) = doc.as_mut() else {
                            return Err(line.err(0, "`xmod` must come before rows"));
                        };
                        for (i, t) in line.toks.iter().enumerate().skip(1) {
                            if d.square(t.text).is_none() {
                                return Err(line.err(i, format!("unknown square `{}`", t.text)));
                            }
                        }
                        d.rows.push(line.rest(1).iter().map(|s| s.to_string()).collect());
                    }
                    _ => return Err(unknown_key(line)),
                }
            }
            doc.map(Document::Squares).ok_or_else(|| at.err(0, "missing `xmod` line"))
        }
        "cube" => {
            let gs = raw.require("G")?;
            if let Some(s) = raw.sections.iter().find(|s| s.name != "G") {
                return Err(ParseError {
                    line: s.line,
                    column: 1,
                    message: format!("unexpected [{}] section", s.name),
                });
            }
            let g = parse_groupoid(&gs.lines, gs.line)?;
            let mut cubes: Vec<PendingCube<'_>> = Vec::new();
            for line in &raw.main {
                if line.key() == "cube" {
                    line.expect_len(2)?;
                    let zero = [[Arrow(0); 2]; 2];
                    cubes.push((
                        line.toks[1].text.to_string(),
                        Cube {
                            x: zero,
                            y: zero,
                            z: zero,
                        },
                        [[[false; 2]; 2]; 3],
                        line.clone(),
                    ));
                    continue;
                }
                let (axis, i, j) = cube_key(line.key()).ok_or_else(|| unknown_key(line))?;
                let Some((_, c, seen, _)) = cubes.last_mut() else {
                    return Err(line.err(0, "edge before any `cube` line"));
                };
                line.expect_len(2)?;
                let a = g
                    .arrow_by_name(line.toks[1].text)
                    .ok_or_else(|| line.err(1, format!("unknown arrow `{}`", line.toks[1].text)))?;
                let (slot, k) = match axis {
                    'x' => (&mut c.x, 0),
                    'y' => (&mut c.y, 1),
                    _ => (&mut c.z, 2),
                };
                slot[i][j] = a;
                seen[k][i][j] = true;
            }
            let mut out = Vec::new();
            for (id, c, seen, line) in cubes {
                if seen.iter().flatten().flatten().any(|s| !s) {
                    return Err(line.err(1, format!("cube `{id}` needs all twelve edges")));
                }
                c.check_vertices(&g).map_err(|e| line.err(1, e.to_string()))?;
                out.push((id, c));
            }
            Ok(Document::Cubes(CubeDoc { groupoid: g, cubes: out }))
        }
        "eh" => parse_eh(&raw, resolver),
        "morphism" => {
            no_sections(&raw)?;
            let mut doc = MorphismDoc {
                vertices: Vec::new(),
                edges: Vec::new(),
            };
            for line in &raw.main {
                let arrow_at = line.toks.iter().position(|t| t.text == "->");
                match (line.key(), arrow_at) {
                    ("vertex", Some(2)) => {
                        line.expect_len(4)?;
                        doc.vertices.push((line.toks[1].text.into(), line.toks[3].text.into()));
                    }
                    ("edge", Some(2)) => {
                        line.arg(3)?;
                        doc.edges.push((line.toks[1].text.into(), line.rest(3).iter().map(|s| s.to_string()).collect()));
                    }
                    ("vertex" | "edge", _) => return Err(line.err(0, "expected `<name> -> <image>`")),
                    _ => return Err(unknown_key(line)),
                }
            }
            Ok(Document::Morphism(doc))
        }
        other => Err(at.err(1, format!("unknown kind `{other}`"))),
    }
}

fn parse_eh(raw: &Raw<'_>, resolver: &dyn Resolver) -> Result<Document, ParseError> {
    let at = &raw.kind_line;
    if let Some(gs) = raw.section("G") {
        let g = parse_group(&gs.lines, gs.line)?;
        return Ok(Document::Eh(EhInstance::from_group(&g)));
    }
    let mut names: Vec<String> = Vec::new();
    let mut units = [None, None];
    for line in &raw.main {
        match line.key() {
            "xmod" => {
                line.arg(1)?;
                let xm = resolver.xmod(line.toks[1].text).map_err(|m| line.err(1, m))?;
                let dg = DoubleGroupoidXM::from_xmod(&xm).map_err(|e| line.err(1, e.to_string()))?;
                let x = match line.toks.get(2) {
                    None => Obj(0),
                    Some(t) => dg
                        .base()
                        .object_by_name(t.text)
                        .ok_or_else(|| line.err(2, format!("unknown object `{}`", t.text)))?,
                };
                return Ok(Document::Eh(EhInstance::from_double_groupoid(&dg, x)));
            }
            "elements" => names = line.rest(1).iter().map(|s| s.to_string()).collect(),
            "unit1" | "unit2" => {
                line.expect_len(2)?;
                let k = usize::from(line.key() == "unit2");
                units[k] = Some(named(&names, line, 1, "element")?);
            }
            _ => return Err(unknown_key(line)),
        }
    }
    let table = |name: &str| -> Result<Vec<Vec<usize>>, ParseError> {
        let s = raw.require(name)?;
        s.lines
            .iter()
            .map(|line| {
                if line.key() != "row" {
                    return Err(unknown_key(line));
                }
                (1..line.toks.len()).map(|i| named(&names, line, i, "element")).collect()
            })
            .collect()
    };
    let (op1, op2) = (table("op1")?, table("op2")?);
    let u1 = units[0].ok_or_else(|| at.err(0, "missing `unit1`"))?;
    let u2 = units[1].ok_or_else(|| at.err(0, "missing `unit2`"))?;
    EhInstance::new(names, op1, op2, u1, u2)
        .map(Document::Eh)
        .map_err(|e| at.err(0, e.to_string()))
}

/// Renders a document in canonical form; parsing the result gives back an
/// equal document.
pub fn serialize(doc: &Document) -> String {
    let mut out = format!("kind {}\n", doc.kind());
    match doc {
        Document::Group(g) => write_group(&mut out, g),
        Document::Groupoid(g) => write_groupoid(&mut out, g),
        Document::Quiver(q) => write_quiver(&mut out, q),
        Document::Presentation(p) => write_presentation(&mut out, p),
        Document::Complex(x) => write_complex(&mut out, x),
        Document::Cover(c) => {
            out.push_str("[complex]\n");
            write_complex(&mut out, &c.complex);
            for (name, piece) in [("U", &c.u), ("V", &c.v)] {
                let _ = writeln!(out, "[{name}]\ncells {}", cell_names(&c.complex, piece).join(" "));
            }
        }
        Document::XMod(xm) => write_xmod(&mut out, xm),
        Document::Squares(d) => {
            let _ = writeln!(out, "xmod {}", d.xmod_path);
            let p = d.xmod.base();
            for (id, s) in &d.squares {
                let _ = writeln!(
                    out,
                    "square {id} label={} top={} left={} right={} bottom={}",
                    d.xmod.group(p.tgt(s.right)).name(s.label),
                    p.arrow_name(s.top),
                    p.arrow_name(s.left),
                    p.arrow_name(s.right),
                    p.arrow_name(s.bottom)
                );
            }
            for r in &d.rows {
                let _ = writeln!(out, "row {}", r.join(" "));
            }
        }
        Document::Cubes(d) => {
            let g = &d.groupoid;
            for (id, c) in &d.cubes {
                let _ = writeln!(out, "cube {id}");
                for (axis, edges) in [('x', &c.x), ('y', &c.y), ('z', &c.z)] {
                    for i in 0..2 {
                        for j in 0..2 {
                            let _ = writeln!(out, "{axis}{i}{j} {}", g.arrow_name(edges[i][j]));
                        }
                    }
                }
            }
            out.push_str("[G]\n");
            write_groupoid(&mut out, g);
        }
        Document::Eh(e) => {
            let _ = writeln!(out, "elements {}", e.names.join(" "));
            let _ = writeln!(out, "unit1 {}\nunit2 {}", e.names[e.u1], e.names[e.u2]);
            for (name, t) in [("op1", &e.op1), ("op2", &e.op2)] {
                let _ = writeln!(out, "[{name}]");
                for row in t {
                    let r: Vec<&str> = row.iter().map(|&v| e.names[v].as_str()).collect();
                    let _ = writeln!(out, "row {}", r.join(" "));
                }
            }
        }
        Document::Morphism(m) => {
            for (a, b) in &m.vertices {
                let _ = writeln!(out, "vertex {a} -> {b}");
            }
            for (e, w) in &m.edges {
                let _ = writeln!(out, "edge {e} -> {}", w.join(" "));
            }
        }
    }
    out
}
