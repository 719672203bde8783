//! The job file format.
//!
//! ```text
//! # comments run to the end of the line
//! caps { matrix_size = 3000 }
//! fiset "pairs" {
//!   orbit { m = 2, H = "symmetric", label = "v" }
//! }
//! relation "kneser" {
//!   source = "pairs"
//!   symmetric = true
//!   generator { degree = 4, x = "v:K=[1,2]", y = "v:K=[3,4]" }
//! }
//! job { command = "spectrum", name = "kneser", n_max = 12 }
//! ```
//!
//! Entries are separated by commas or newlines. Strings use `\"` and `\\`
//! escapes, so element literals with cosets read
//! `"T:K=[1,2]:coset=\"(1 2)\""`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use fispec::{Caps, FISetSpec, Identification, InducedOrbitSpec, PermutationGroup, RelationGenerator, RelationSpec};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ConfigError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Int(u64),
    Bool(bool),
    Str(String),
    List(Vec<Value>),
}

impl fmt::Display for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Int(i) => write!(f, "{i}"),
            Value::Bool(b) => write!(f, "{b}"),
            Value::Str(s) => write!(f, "{}", quote(s)),
            Value::List(items) => {
                f.write_str("[")?;
                for (i, v) in items.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{v}")?;
                }
                f.write_str("]")
            }
        }
    }
}

fn quote(s: &str) -> String {
    let mut out = String::from("\"");
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Str(String),
    Int(u64),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Comma,
    Newline,
}

fn tokenize(text: &str) -> Result<Vec<(Token, usize)>, ConfigError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let mut line = 1;
    while let Some(c) = chars.next() {
        match c {
            '\n' => {
                out.push((Token::Newline, line));
                line += 1;
            }
            c if c.is_whitespace() => {}
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    chars.next();
                }
            }
            '{' => out.push((Token::LBrace, line)),
            '}' => out.push((Token::RBrace, line)),
            '[' => out.push((Token::LBracket, line)),
            ']' => out.push((Token::RBracket, line)),
            '=' => out.push((Token::Eq, line)),
            ',' => out.push((Token::Comma, line)),
            '"' => {
                let start = line;
                let mut s = String::new();
                loop {
                    match chars.next() {
                        None => return err(start, "unterminated string"),
                        Some('"') => break,
                        Some('\\') => match chars.next() {
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            Some('n') => s.push('\n'),
                            other => return err(line, format!("unknown escape \\{}", other.unwrap_or(' '))),
                        },
                        Some('\n') => return err(start, "newline inside a string"),
                        Some(c) => s.push(c),
                    }
                }
                out.push((Token::Str(s), start));
            }
            c if c.is_ascii_digit() => {
                let mut s = String::from(c);
                while chars.peek().is_some_and(|c| c.is_ascii_digit() || *c == '_') {
                    s.push(chars.next().unwrap());
                }
                let v = s.replace('_', "").parse().map_err(|_| ConfigError {
                    line,
                    message: format!("integer {s} out of range"),
                })?;
                out.push((Token::Int(v), line));
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut s = String::from(c);
                while chars
                    .peek()
                    .is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_' || *c == '-')
                {
                    s.push(chars.next().unwrap());
                }
                out.push((Token::Ident(s), line));
            }
            c => return err(line, format!("unexpected character {c:?}")),
        }
    }
    Ok(out)
}

/// A parsed `kind "name" { ... }` block before interpretation.
#[derive(Debug, Clone)]
struct Block {
    kind: String,
    name: Option<String>,
    line: usize,
    entries: Vec<(String, Value, usize)>,
    children: Vec<Block>,
}

struct Parser {
    tokens: Vec<(Token, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|t| &t.0)
    }

    fn line(&self) -> usize {
        self.tokens.get(self.pos).or(self.tokens.last()).map_or(1, |t| t.1)
    }

    fn next(&mut self) -> Option<(Token, usize)> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn skip_separators(&mut self) {
        while matches!(self.peek(), Some(Token::Newline | Token::Comma)) {
            self.pos += 1;
        }
    }

    fn skip_newlines(&mut self) {
        while matches!(self.peek(), Some(Token::Newline)) {
            self.pos += 1;
        }
    }

    fn blocks(&mut self) -> Result<Vec<Block>, ConfigError> {
        let mut out = Vec::new();
        loop {
            self.skip_separators();
            match self.next() {
                None => return Ok(out),
                Some((Token::Ident(kind), line)) => out.push(self.block(kind, line)?),
                Some((_, line)) => return err(line, "expected a block name"),
            }
        }
    }

    fn block(&mut self, kind: String, line: usize) -> Result<Block, ConfigError> {
        let name = match self.peek() {
            Some(Token::Str(_)) => match self.next() {
                Some((Token::Str(s), _)) => Some(s),
                _ => unreachable!(),
            },
            _ => None,
        };
        self.skip_newlines();
        match self.next() {
            Some((Token::LBrace, _)) => {}
            _ => return err(line, format!("expected '{{' after {kind}")),
        }
        let mut block = Block {
            kind,
            name,
            line,
            entries: Vec::new(),
            children: Vec::new(),
        };
        loop {
            self.skip_separators();
            match self.next() {
                Some((Token::RBrace, _)) => return Ok(block),
                Some((Token::Ident(key), kline)) => {
                    self.skip_newlines();
                    match self.peek() {
                        Some(Token::Eq) => {
                            self.pos += 1;
                            self.skip_newlines();
                            let v = self.value()?;
                            block.entries.push((key, v, kline));
                        }
                        _ => block.children.push(self.block(key, kline)?),
                    }
                }
                None => return err(block.line, format!("unterminated {} block", block.kind)),
                Some((_, l)) => return err(l, "expected a key or '}'"),
            }
        }
    }

    fn value(&mut self) -> Result<Value, ConfigError> {
        let line = self.line();
        match self.next() {
            Some((Token::Int(i), _)) => Ok(Value::Int(i)),
            Some((Token::Str(s), _)) => Ok(Value::Str(s)),
            Some((Token::Ident(s), _)) if s == "true" => Ok(Value::Bool(true)),
            Some((Token::Ident(s), _)) if s == "false" => Ok(Value::Bool(false)),
            Some((Token::LBracket, _)) => {
                let mut items = Vec::new();
                loop {
                    self.skip_separators();
                    if matches!(self.peek(), Some(Token::RBracket)) {
                        self.pos += 1;
                        return Ok(Value::List(items));
                    }
                    if self.peek().is_none() {
                        return err(line, "unterminated list");
                    }
                    items.push(self.value()?);
                }
            }
            _ => err(line, "expected a value"),
        }
    }
}

/// Line of a declaration, for error messages. Ignored by equality so that a
/// re-parsed config compares equal to the original.
#[derive(Debug, Clone, Copy, Default)]
pub struct SourceLine(pub usize);

impl PartialEq for SourceLine {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Eq for SourceLine {}

/// The subgroup `H ≤ S_m` of an orbit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupDecl {
    Trivial,
    Symmetric,
    Generators(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecl {
    pub m: usize,
    pub h: SubgroupDecl,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentifyDecl {
    pub degree: usize,
    pub a: String,
    pub b: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FISetDecl {
    pub orbits: Vec<OrbitDecl>,
    pub identifications: Vec<IdentifyDecl>,
    pub line: SourceLine,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorDecl {
    pub degree: usize,
    pub x: String,
    pub y: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationDecl {
    pub source: String,
    pub target: Option<String>,
    pub symmetric: bool,
    pub generators: Vec<GeneratorDecl>,
    pub line: SourceLine,
}

/// Defaults for command-line parameters.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JobDecl {
    pub command: Option<String>,
    pub name: Option<String>,
    pub n: Option<usize>,
    pub n_max: Option<usize>,
    pub lambda_cutoff: Option<usize>,
    pub laplacian: bool,
    pub singular: bool,
    pub oracle_check: bool,
    pub workers: Option<usize>,
    pub out: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct JobConfig {
    pub caps: Caps,
    pub fisets: BTreeMap<String, FISetDecl>,
    pub relations: BTreeMap<String, RelationDecl>,
    pub job: JobDecl,
}

struct Entries {
    kind: String,
    line: usize,
    map: BTreeMap<String, (Value, usize)>,
}

impl Entries {
    fn new(block: &Block, allowed: &[&str]) -> Result<Self, ConfigError> {
        let mut map = BTreeMap::new();
        for (k, v, line) in &block.entries {
            if !allowed.contains(&k.as_str()) {
                return err(*line, format!("unknown key {k:?} in {} block", block.kind));
            }
            if map.insert(k.clone(), (v.clone(), *line)).is_some() {
                return err(*line, format!("duplicate key {k:?}"));
            }
        }
        Ok(Entries {
            kind: block.kind.clone(),
            line: block.line,
            map,
        })
    }

    fn int(&self, key: &str) -> Result<Option<usize>, ConfigError> {
        match self.map.get(key) {
            None => Ok(None),
            Some((Value::Int(i), line)) => usize::try_from(*i)
                .map(Some)
                .or_else(|_| err(*line, format!("{key} out of range"))),
            Some((_, line)) => err(*line, format!("{key} must be an integer")),
        }
    }

    fn req_int(&self, key: &str) -> Result<usize, ConfigError> {
        self.int(key)?
            .map_or_else(|| err(self.line, format!("{} block needs {key}", self.kind)), Ok)
    }

    fn positive(&self, key: &str) -> Result<Option<usize>, ConfigError> {
        match self.int(key)? {
            Some(0) => err(self.map[key].1, format!("{key} must be positive")),
            v => Ok(v),
        }
    }

    fn string(&self, key: &str) -> Result<Option<String>, ConfigError> {
        match self.map.get(key) {
            None => Ok(None),
            Some((Value::Str(s), _)) => Ok(Some(s.clone())),
            Some((_, line)) => err(*line, format!("{key} must be a string")),
        }
    }

    fn req_string(&self, key: &str) -> Result<String, ConfigError> {
        self.string(key)?
            .map_or_else(|| err(self.line, format!("{} block needs {key}", self.kind)), Ok)
    }

    fn boolean(&self, key: &str) -> Result<bool, ConfigError> {
        match self.map.get(key) {
            None => Ok(false),
            Some((Value::Bool(b), _)) => Ok(*b),
            Some((_, line)) => err(*line, format!("{key} must be true or false")),
        }
    }
}

fn no_children(block: &Block) -> Result<(), ConfigError> {
    match block.children.first() {
        Some(c) => err(c.line, format!("unexpected {} block inside {}", c.kind, block.kind)),
        None => Ok(()),
    }
}

fn named(block: &Block) -> Result<String, ConfigError> {
    block
        .name
        .clone()
        .map_or_else(|| err(block.line, format!("{} block needs a name", block.kind)), Ok)
}

impl JobConfig {
    pub fn parse(text: &str) -> Result<JobConfig, ConfigError> {
        let mut parser = Parser {
            tokens: tokenize(text)?,
            pos: 0,
        };
        let mut cfg = JobConfig::default();
        let mut seen_caps = false;
        let mut seen_job = false;
        for block in parser.blocks()? {
            match block.kind.as_str() {
                "caps" => {
                    if std::mem::replace(&mut seen_caps, true) {
                        return err(block.line, "duplicate caps block");
                    }
                    no_children(&block)?;
                    cfg.caps = parse_caps(&block)?;
                }
                "job" => {
                    if std::mem::replace(&mut seen_job, true) {
                        return err(block.line, "duplicate job block");
                    }
                    no_children(&block)?;
                    cfg.job = parse_job(&block)?;
                }
                "fiset" => {
                    let name = named(&block)?;
                    let decl = parse_fiset(&block)?;
                    if cfg.fisets.insert(name.clone(), decl).is_some() {
                        return err(block.line, format!("duplicate fiset {name:?}"));
                    }
                }
                "relation" => {
                    let name = named(&block)?;
                    let decl = parse_relation(&block)?;
                    if cfg.relations.insert(name.clone(), decl).is_some() {
                        return err(block.line, format!("duplicate relation {name:?}"));
                    }
                }
                other => return err(block.line, format!("unknown block {other:?}")),
            }
        }
        cfg.check_references()?;
        Ok(cfg)
    }

    fn check_references(&self) -> Result<(), ConfigError> {
        for r in self.relations.values() {
            for s in std::iter::once(&r.source).chain(&r.target) {
                if !self.fisets.contains_key(s) {
                    return err(r.line.0, format!("relation refers to unknown fiset {s:?}"));
                }
            }
        }
        if let Some(name) = &self.job.name {
            if !self.fisets.contains_key(name) && !self.relations.contains_key(name) {
                return err(0, format!("job refers to unknown name {name:?}"));
            }
        }
        Ok(())
    }

    /// Builds the FI-set named `name`.
    pub fn fiset(&self, name: &str) -> Result<FISetSpec, ConfigError> {
        let decl = self
            .fisets
            .get(name)
            .map_or_else(|| err(0, format!("no fiset named {name:?}")), Ok)?;
        let line = decl.line.0;
        let wrap = |e: fispec::Error| ConfigError {
            line,
            message: format!("fiset {name:?}: {e}"),
        };
        let mut orbits = Vec::new();
        for o in &decl.orbits {
            let h = match &o.h {
                SubgroupDecl::Trivial => PermutationGroup::trivial(o.m),
                SubgroupDecl::Symmetric => PermutationGroup::symmetric(o.m),
                SubgroupDecl::Generators(g) => PermutationGroup::from_cycles(o.m, g).map_err(wrap)?,
            };
            orbits.push(InducedOrbitSpec::new(o.m, h, o.label.clone()).map_err(wrap)?);
        }
        let base = FISetSpec::induced(orbits.clone()).map_err(wrap)?;
        let identifications = decl
            .identifications
            .iter()
            .map(|i| {
                Ok(Identification {
                    degree: i.degree,
                    a: base.parse_element(&i.a)?,
                    b: base.parse_element(&i.b)?,
                })
            })
            .collect::<Result<Vec<_>, fispec::Error>>()
            .map_err(wrap)?;
        FISetSpec::new(orbits, identifications).map_err(wrap)
    }

    /// Builds the relation named `name`.
    pub fn relation(&self, name: &str) -> Result<RelationSpec, ConfigError> {
        let decl = self
            .relations
            .get(name)
            .map_or_else(|| err(0, format!("no relation named {name:?}")), Ok)?;
        let line = decl.line.0;
        let wrap = |e: fispec::Error| ConfigError {
            line,
            message: format!("relation {name:?}: {e}"),
        };
        let source = self.fiset(&decl.source)?;
        let target = match &decl.target {
            Some(t) if t != &decl.source => Some(self.fiset(t)?),
            _ => None,
        };
        let y_space = target.as_ref().unwrap_or(&source);
        let gens = decl
            .generators
            .iter()
            .map(|g| {
                Ok(RelationGenerator {
                    degree: g.degree,
                    x: source.parse_element(&g.x)?,
                    y: y_space.parse_element(&g.y)?,
                })
            })
            .collect::<Result<Vec<_>, fispec::Error>>()
            .map_err(wrap)?;
        match target {
            None => RelationSpec::on(source, gens, decl.symmetric).map_err(wrap),
            Some(t) => {
                if decl.symmetric {
                    return err(
                        line,
                        format!("relation {name:?} between different fisets cannot be symmetric"),
                    );
                }
                RelationSpec::between(source, t, gens).map_err(wrap)
            }
        }
    }

    /// Canonical text; parsing it gives back an equal config.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        let c = &self.caps;
        let _ = writeln!(
            out,
            "caps {{ group_order = {}, orbit_size = {}, class_degree = {}, subgroup_degree = {}, set_size = {}, matrix_size = {}, oracle_size = {} }}",
            c.group_order, c.orbit_size, c.class_degree, c.subgroup_degree, c.set_size, c.matrix_size, c.oracle_size
        );
        for (name, f) in &self.fisets {
            let _ = writeln!(out, "\nfiset {} {{", quote(name));
            for o in &f.orbits {
                let h = match &o.h {
                    SubgroupDecl::Trivial => Value::Str("trivial".into()),
                    SubgroupDecl::Symmetric => Value::Str("symmetric".into()),
                    SubgroupDecl::Generators(g) => Value::List(g.iter().cloned().map(Value::Str).collect()),
                };
                let _ = writeln!(out, "  orbit {{ m = {}, H = {h}, label = {} }}", o.m, quote(&o.label));
            }
            for i in &f.identifications {
                let _ = writeln!(
                    out,
                    "  identify {{ degree = {}, a = {}, b = {} }}",
                    i.degree,
                    quote(&i.a),
                    quote(&i.b)
                );
            }
            out.push_str("}\n");
        }
        for (name, r) in &self.relations {
            let _ = writeln!(out, "\nrelation {} {{", quote(name));
            let _ = writeln!(out, "  source = {}", quote(&r.source));
            if let Some(t) = &r.target {
                let _ = writeln!(out, "  target = {}", quote(t));
            }
            let _ = writeln!(out, "  symmetric = {}", r.symmetric);
            for g in &r.generators {
                let _ = writeln!(
                    out,
                    "  generator {{ degree = {}, x = {}, y = {} }}",
                    g.degree,
                    quote(&g.x),
                    quote(&g.y)
                );
            }
            out.push_str("}\n");
        }
        let j = &self.job;
        let mut fields: Vec<String> = Vec::new();
        let mut put = |k: &str, v: Option<Value>| {
            if let Some(v) = v {
                fields.push(format!("{k} = {v}"));
            }
        };
        put("command", j.command.clone().map(Value::Str));
        put("name", j.name.clone().map(Value::Str));
        put("n", j.n.map(|v| Value::Int(v as u64)));
        put("n_max", j.n_max.map(|v| Value::Int(v as u64)));
        put("lambda_cutoff", j.lambda_cutoff.map(|v| Value::Int(v as u64)));
        put("laplacian", j.laplacian.then_some(Value::Bool(true)));
        put("singular", j.singular.then_some(Value::Bool(true)));
        put("oracle_check", j.oracle_check.then_some(Value::Bool(true)));
        put("workers", j.workers.map(|v| Value::Int(v as u64)));
        put("out", j.out.clone().map(Value::Str));
        if !fields.is_empty() {
            let _ = writeln!(out, "\njob {{ {} }}", fields.join(", "));
        }
        out
    }
}

fn parse_caps(block: &Block) -> Result<Caps, ConfigError> {
    const KEYS: &[&str] = &[
        "group_order",
        "orbit_size",
        "class_degree",
        "subgroup_degree",
        "set_size",
        "matrix_size",
        "oracle_size",
    ];
    let e = Entries::new(block, KEYS)?;
    let d = Caps::default();
    Ok(Caps {
        group_order: e.positive("group_order")?.unwrap_or(d.group_order),
        orbit_size: e.positive("orbit_size")?.unwrap_or(d.orbit_size),
        class_degree: e.positive("class_degree")?.unwrap_or(d.class_degree),
        subgroup_degree: e.positive("subgroup_degree")?.unwrap_or(d.subgroup_degree),
        set_size: e.positive("set_size")?.unwrap_or(d.set_size),
        matrix_size: e.positive("matrix_size")?.unwrap_or(d.matrix_size),
        oracle_size: e.positive("oracle_size")?.unwrap_or(d.oracle_size),
    })
}

fn parse_job(block: &Block) -> Result<JobDecl, ConfigError> {
    const KEYS: &[&str] = &[
        "command",
        "name",
        "n",
        "n_max",
        "lambda_cutoff",
        "laplacian",
        "singular",
        "oracle_check",
        "workers",
        "out",
    ];
    let e = Entries::new(block, KEYS)?;
    let command = e.string("command")?;
    if let Some(c) = &command {
        if !crate::COMMANDS.contains(&c.as_str()) {
            return err(e.map["command"].1, format!("unknown command {c:?}"));
        }
    }
    let job = JobDecl {
        command,
        name: e.string("name")?,
        n: e.int("n")?,
        n_max: e.int("n_max")?,
        lambda_cutoff: e.int("lambda_cutoff")?,
        laplacian: e.boolean("laplacian")?,
        singular: e.boolean("singular")?,
        oracle_check: e.boolean("oracle_check")?,
        workers: e.positive("workers")?,
        out: e.string("out")?,
    };
    if let (Some(n), Some(n_max)) = (job.n, job.n_max) {
        if n > n_max {
            return err(block.line, format!("empty degree range {n}..{n_max}"));
        }
    }
    Ok(job)
}

fn parse_fiset(block: &Block) -> Result<FISetDecl, ConfigError> {
    Entries::new(block, &[])?;
    let mut decl = FISetDecl {
        orbits: Vec::new(),
        identifications: Vec::new(),
        line: SourceLine(block.line),
    };
    for child in &block.children {
        no_children(child)?;
        match child.kind.as_str() {
            "orbit" => {
                let e = Entries::new(child, &["m", "H", "label"])?;
                let h = match e.map.get("H") {
                    None => SubgroupDecl::Trivial,
                    Some((Value::Str(s), _)) if s == "trivial" => SubgroupDecl::Trivial,
                    Some((Value::Str(s), _)) if s == "symmetric" => SubgroupDecl::Symmetric,
                    Some((Value::List(items), line)) => SubgroupDecl::Generators(
                        items
                            .iter()
                            .map(|v| match v {
                                Value::Str(s) => Ok(s.clone()),
                                _ => err(*line, "H generators must be strings"),
                            })
                            .collect::<Result<_, _>>()?,
                    ),
                    Some((_, line)) => {
                        return err(*line, "H must be \"trivial\", \"symmetric\" or a list of cycles");
                    }
                };
                decl.orbits.push(OrbitDecl {
                    m: e.req_int("m")?,
                    h,
                    label: e.req_string("label")?,
                });
            }
            "identify" => {
                let e = Entries::new(child, &["degree", "a", "b"])?;
                decl.identifications.push(IdentifyDecl {
                    degree: e.req_int("degree")?,
                    a: e.req_string("a")?,
                    b: e.req_string("b")?,
                });
            }
            other => return err(child.line, format!("unknown block {other:?} in fiset")),
        }
    }
    Ok(decl)
}

fn parse_relation(block: &Block) -> Result<RelationDecl, ConfigError> {
    let e = Entries::new(block, &["source", "target", "symmetric"])?;
    let mut decl = RelationDecl {
        source: e.req_string("source")?,
        target: e.string("target")?,
        symmetric: e.boolean("symmetric")?,
        generators: Vec::new(),
        line: SourceLine(block.line),
    };
    for child in &block.children {
        no_children(child)?;
        if child.kind != "generator" {
            return err(child.line, format!("unknown block {:?} in relation", child.kind));
        }
        let g = Entries::new(child, &["degree", "x", "y"])?;
        decl.generators.push(GeneratorDecl {
            degree: g.req_int("degree")?,
            x: g.req_string("x")?,
            y: g.req_string("y")?,
        });
    }
    Ok(decl)
}
