//! Named, parameterised component descriptions.
//!
//! Every attack component can describe itself as a [`Component`]. The same
//! tree is rendered as an attack prototype, parsed back from one, and built
//! from command-line tokens of the form `name:key=value[,key=value]`.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub params: Vec<(String, String)>,
    pub children: Vec<Component>,
}

impl Component {
    pub fn new(name: impl Into<String>) -> Self {
        Component {
            name: name.into(),
            ..Component::default()
        }
    }

    /// Appends a parameter rendered in prototype syntax.
    pub fn with(mut self, key: &str, value: impl Render) -> Self {
        self.params.push((key.to_string(), value.render()));
        self
    }

    pub fn with_child(mut self, child: Component) -> Self {
        self.children.push(child);
        self
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.params.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    /// Parses a command-line token such as `beam-search:beam_width=4`.
    ///
    /// Commas inside a value are kept when the next piece has no `=`, so
    /// `input-column:columns_to_ignore=premise,hypothesis` works.
    pub fn from_token(token: &str) -> Result<Self> {
        let (name, rest) = match token.split_once(':') {
            Some((n, r)) => (n.trim(), Some(r)),
            None => (token.trim(), None),
        };
        if name.is_empty() {
            return Err(Error::config(format!("empty component name in `{token}`")));
        }
        let mut c = Component::new(name);
        if let Some(rest) = rest {
            for piece in rest.split(',') {
                match piece.split_once('=') {
                    Some((k, v)) => c.params.push((k.trim().to_string(), v.trim().to_string())),
                    None => match c.params.last_mut() {
                        Some((_, v)) => {
                            v.push(',');
                            v.push_str(piece.trim());
                        }
                        None if piece.trim().is_empty() => {}
                        None => return Err(Error::config(format!("expected key=value in `{token}`, got `{piece}`"))),
                    },
                }
            }
        }
        Ok(c)
    }
}

/// Prototype-syntax rendering of parameter values.
pub trait Render {
    fn render(&self) -> String;
}

impl Render for f64 {
    fn render(&self) -> String {
        py_float(*self)
    }
}

impl Render for bool {
    fn render(&self) -> String {
        if *self { "True" } else { "False" }.to_string()
    }
}

macro_rules! render_display {
    ($($t:ty),*) => {$(
        impl Render for $t {
            fn render(&self) -> String {
                self.to_string()
            }
        }
    )*};
}

render_display!(usize, i64, u64, &str, String);

/// Formats a float the way Python's `repr` does for ordinary values.
pub fn py_float(x: f64) -> String {
    if x.is_infinite() {
        if x > 0.0 { "inf" } else { "-inf" }.to_string()
    } else if x.is_nan() {
        "nan".to_string()
    } else {
        format!("{x:?}")
    }
}

/// `['a', 'b']`
pub fn py_list(items: &[String]) -> String {
    let quoted: Vec<String> = items.iter().map(|s| format!("'{s}'")).collect();
    format!("[{}]", quoted.join(", "))
}

/// `{'a'}`; an empty set renders as `set()`.
pub fn py_set(items: &BTreeSet<String>) -> String {
    if items.is_empty() {
        return "set()".to_string();
    }
    let quoted: Vec<String> = items.iter().map(|s| format!("'{s}'")).collect();
    format!("{{{}}}", quoted.join(", "))
}

/// Parses `['a', 'b']`, `{'a'}`, `set()` or a bare comma/pipe-separated list.
pub fn parse_str_list(value: &str) -> Vec<String> {
    let v = value.trim();
    if v == "set()" || v == "[]" {
        return Vec::new();
    }
    let inner = v
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .or_else(|| v.strip_prefix('{').and_then(|s| s.strip_suffix('}')))
        .unwrap_or(v);
    inner
        .split([',', '|'])
        .map(|s| s.trim().trim_matches(|c| c == '\'' || c == '"').to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// The four parts of an attack plus its constraint list, as descriptions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AttackSpec {
    pub search_method: Component,
    pub goal_function: Component,
    pub transformation: Component,
    pub constraints: Vec<Component>,
}

fn push_params(out: &mut String, c: &Component, indent: usize) {
    for (k, v) in &c.params {
        let _ = writeln!(out, "{:indent$}({k}):  {v}", "");
    }
}

/// Renders a numbered list entry: name at `indent`, parameters four deeper,
/// closing parenthesis two deeper.
fn push_item(out: &mut String, index: usize, c: &Component, indent: usize) {
    let _ = write!(out, "{:indent$}({index}): {}", "", c.name);
    if c.params.is_empty() && c.children.is_empty() {
        out.push('\n');
        return;
    }
    out.push_str("(\n");
    push_params(out, c, indent + 4);
    for (i, child) in c.children.iter().enumerate() {
        push_item(out, i, child, indent + 4);
    }
    let _ = writeln!(out, "{:w$})", "", w = indent + 2);
}

fn push_top(out: &mut String, key: &str, gap: &str, c: &Component) {
    let _ = write!(out, "  ({key}):{gap}{}", c.name);
    if c.params.is_empty() && c.children.is_empty() {
        out.push('\n');
        return;
    }
    out.push_str("(\n");
    push_params(out, c, 4);
    for (i, child) in c.children.iter().enumerate() {
        push_item(out, i, child, 4);
    }
    out.push_str(if c.children.is_empty() { "  )\n" } else { "    )\n" });
}

/// Renders the attack prototype listing.
pub fn render_prototype(spec: &AttackSpec, is_black_box: bool) -> String {
    let mut out = String::from("Attack(\n");
    push_top(&mut out, "search_method", " ", &spec.search_method);
    push_top(&mut out, "goal_function", "  ", &spec.goal_function);
    push_top(&mut out, "transformation", "  ", &spec.transformation);
    out.push_str("  (constraints):\n");
    for (i, c) in spec.constraints.iter().enumerate() {
        push_item(&mut out, i, c, 4);
    }
    let _ = writeln!(out, "  (is_black_box):  {}", is_black_box.render());
    out.push(')');
    out
}

struct Lines<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn peek(&self) -> Option<&'a str> {
        self.lines.get(self.pos).map(|(_, l)| *l)
    }

    fn line_no(&self) -> usize {
        self.lines.get(self.pos).map_or(0, |(n, _)| *n)
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse("<prototype>", self.line_no(), msg)
    }

    /// Splits `(key): rest` into key and trimmed rest.
    fn entry(&self, line: &'a str) -> Result<(&'a str, &'a str)> {
        let body = line.strip_prefix('(').ok_or_else(|| self.err(format!("expected `(key):`, got `{line}`")))?;
        let (key, rest) = body
            .split_once("):")
            .ok_or_else(|| self.err(format!("expected `(key):`, got `{line}`")))?;
        Ok((key.trim(), rest.trim()))
    }

    fn component(&mut self, head: &str) -> Result<Component> {
        let (name, open) = match head.strip_suffix('(') {
            Some(n) => (n.trim(), true),
            None => (head.trim(), false),
        };
        if name.is_empty() {
            return Err(self.err("missing component name"));
        }
        let mut c = Component::new(name);
        if !open {
            return Ok(c);
        }
        loop {
            let line = self.peek().ok_or_else(|| self.err(format!("unclosed `{name}(`")))?;
            self.pos += 1;
            if line == ")" {
                return Ok(c);
            }
            let (key, rest) = self.entry(line)?;
            if key.bytes().all(|b| b.is_ascii_digit()) {
                let child = self.component(rest)?;
                c.children.push(child);
            } else {
                c.params.push((key.to_string(), rest.to_string()));
            }
        }
    }
}

/// Parses a listing produced by [`render_prototype`]. Indentation is not
/// significant. Returns the spec and the recorded black-box flag.
pub fn parse_prototype(text: &str) -> Result<(AttackSpec, bool)> {
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut p = Lines { lines, pos: 0 };
    if p.peek() != Some("Attack(") {
        return Err(p.err("expected `Attack(`"));
    }
    p.pos += 1;
    let (mut search, mut goal, mut transformation, mut black_box) = (None, None, None, None);
    let mut constraints = Vec::new();
    while let Some(line) = p.peek() {
        if line == ")" {
            p.pos += 1;
            break;
        }
        let (key, rest) = p.entry(line)?;
        p.pos += 1;
        match key {
            "search_method" => search = Some(p.component(rest)?),
            "goal_function" => goal = Some(p.component(rest)?),
            "transformation" => transformation = Some(p.component(rest)?),
            "constraints" => {
                while let Some(item) = p.peek() {
                    let (k, r) = p.entry(item)?;
                    if !k.bytes().all(|b| b.is_ascii_digit()) {
                        break;
                    }
                    p.pos += 1;
                    constraints.push(p.component(r)?);
                }
            }
            "is_black_box" => {
                black_box = Some(match rest {
                    "True" => true,
                    "False" => false,
                    other => return Err(p.err(format!("expected True or False, got `{other}`"))),
                })
            }
            other => return Err(p.err(format!("unexpected entry `{other}`"))),
        }
    }
    let missing = |what: &str| Error::parse("<prototype>", 0, format!("missing ({what})"));
    Ok((
        AttackSpec {
            search_method: search.ok_or_else(|| missing("search_method"))?,
            goal_function: goal.ok_or_else(|| missing("goal_function"))?,
            transformation: transformation.ok_or_else(|| missing("transformation"))?,
            constraints,
        },
        black_box.ok_or_else(|| missing("is_black_box"))?,
    ))
}
