//! Line-based text formats for algebras, certificates and factor sets.
//!
//! Algebra files:
//!
//! ```text
//! # class 2 (d)
//! field Q
//! dim 3
//! basis a1 a2 a3
//! [1,3] = 1*1
//! ideal a1; a2
//! meta source example
//! ```
//!
//! Relations name basis vectors by 1-based index or by basis name and take
//! integer or `a/b` coefficients. Unstated brackets are zero.

use std::fmt;

use leibniz_core::algebra::{Convention, LeibnizAlgebra, StructureTensor};
use leibniz_core::exactla::{Field, Matrix, Scalar, Subspace, Vector};
use leibniz_core::extension::FactorSetData;
use leibniz_core::isoclinism::Mode;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based; 0 when the error is not tied to a line.
    pub line: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "{}", self.message)
        } else {
            write!(f, "line {}: {}", self.line, self.message)
        }
    }
}

impl std::error::Error for ParseError {}

pub type ParseResult<T> = std::result::Result<T, ParseError>;

fn err<T>(line: usize, message: impl Into<String>) -> ParseResult<T> {
    Err(ParseError {
        line,
        message: message.into(),
    })
}

/// Strips comments and blank lines, keeping 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn parse_field(line: usize, rest: &str) -> ParseResult<Field> {
    let words: Vec<&str> = rest.split_whitespace().collect();
    match words.as_slice() {
        ["Q"] => Ok(Field::Rationals),
        ["GF", p] | ["GF", "(", p, ")"] => {
            let p: u64 = p.parse().or_else(|_| err(line, format!("bad modulus `{p}`")))?;
            Field::prime(p).or_else(|_| err(line, format!("modulus {p} is not a prime below 2^16")))
        }
        _ => {
            if let Some(p) = rest.trim().strip_prefix("GF") {
                return parse_field(line, &format!("GF {}", p.trim()));
            }
            err(line, format!("unknown field `{rest}`"))
        }
    }
}

/// Resolves a basis reference: a 1-based index or a name.
fn parse_ref(line: usize, token: &str, dim: usize, names: Option<&[String]>) -> ParseResult<usize> {
    if let Ok(i) = token.parse::<usize>() {
        if i == 0 || i > dim {
            return err(line, format!("index {i} out of range 1..={dim}"));
        }
        return Ok(i - 1);
    }
    if let Some(pos) = names.and_then(|n| n.iter().position(|b| b == token)) {
        return Ok(pos);
    }
    err(line, format!("unknown basis element `{token}`"))
}

/// Parses `c1*k1 + c2*k2 - k3 ...` into a vector of length `dim`.
pub fn parse_combination(
    line: usize,
    text: &str,
    field: Field,
    dim: usize,
    names: Option<&[String]>,
) -> ParseResult<Vector> {
    let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    if compact.is_empty() {
        return err(line, "empty linear combination");
    }
    let mut out = Vector::zeros(field, dim);
    if compact == "0" {
        return Ok(out);
    }
    let chars: Vec<char> = compact.chars().collect();
    let mut pos = 0;
    while pos < chars.len() {
        let mut negative = false;
        let mut saw_sign = false;
        while pos < chars.len() && (chars[pos] == '+' || chars[pos] == '-') {
            negative ^= chars[pos] == '-';
            saw_sign = true;
            pos += 1;
        }
        if pos > 0 && !saw_sign {
            return err(line, format!("expected `+` or `-` in `{text}`"));
        }
        let start = pos;
        while pos < chars.len() && chars[pos] != '+' && chars[pos] != '-' {
            pos += 1;
        }
        let term: String = chars[start..pos].iter().collect();
        if term.is_empty() {
            return err(line, format!("dangling sign in `{text}`"));
        }
        let (coeff, target) = match term.split_once('*') {
            Some((c, t)) => {
                let c = field
                    .parse_scalar(c)
                    .or_else(|_| err(line, format!("bad coefficient `{c}`")))?;
                (c, t)
            }
            None => (field.one(), term.as_str()),
        };
        let k = parse_ref(line, target, dim, names)?;
        let coeff = if negative { -&coeff } else { coeff };
        let mut unit = Vector::zeros(field, dim);
        unit.add_scaled(&coeff, &Vector::unit(field, dim, k));
        out = out.add(&unit);
    }
    Ok(out)
}

/// `[i,j]` with references resolved against `dim` and `names`.
fn parse_bracket(line: usize, text: &str, dim: usize, names: Option<&[String]>) -> ParseResult<(usize, usize)> {
    let inner = text
        .trim()
        .strip_prefix('[')
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| ParseError {
            line,
            message: format!("expected `[i,j]`, found `{text}`"),
        })?;
    let (a, b) = inner.split_once(',').ok_or_else(|| ParseError {
        line,
        message: format!("expected `[i,j]`, found `{text}`"),
    })?;
    Ok((parse_ref(line, a.trim(), dim, names)?, parse_ref(line, b.trim(), dim, names)?))
}

/// Coefficient rendering that parses back in the same field.
fn write_combination(v: &Vector) -> String {
    let mut out = String::new();
    for (k, c) in v.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = matches!(c, Scalar::Rational(_)) && c.is_negative();
        let abs = if neg { -c } else { c.clone() };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&format!("{abs}*{}", k + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

fn write_field(field: Field) -> String {
    format!("field {field}")
}

/// The semantic content of an algebra file.
#[derive(Debug, Clone)]
pub struct AlgebraFile {
    pub tensor: StructureTensor,
    /// Generators of the distinguished ideal, if one is declared.
    pub ideal: Option<Vec<Vector>>,
    pub meta: Vec<(String, String)>,
}

impl PartialEq for AlgebraFile {
    fn eq(&self, other: &Self) -> bool {
        let span = |f: &AlgebraFile| {
            f.ideal
                .as_ref()
                .map(|g| Subspace::span(f.tensor.field(), f.tensor.dim(), g).expect("shapes agree"))
        };
        self.tensor == other.tensor && span(self) == span(other) && self.meta == other.meta
    }
}

impl AlgebraFile {
    pub fn new(tensor: StructureTensor) -> Self {
        AlgebraFile {
            tensor,
            ideal: None,
            meta: Vec::new(),
        }
    }

    pub fn with_ideal(mut self, generators: Vec<Vector>) -> Self {
        self.ideal = Some(generators);
        self
    }

    pub fn ideal_space(&self) -> Option<Subspace> {
        self.ideal
            .as_ref()
            .map(|g| Subspace::span(self.tensor.field(), self.tensor.dim(), g).expect("shapes agree"))
    }

    pub fn algebra(&self) -> leibniz_core::Result<LeibnizAlgebra> {
        LeibnizAlgebra::new(self.tensor.clone())
    }

    pub fn parse(text: &str) -> ParseResult<AlgebraFile> {
        let mut field = None;
        let mut dim: Option<usize> = None;
        let mut names: Option<Vec<String>> = None;
        let mut convention = Convention::Right;
        let mut products: Vec<(usize, usize, usize, Vector)> = Vec::new();
        let mut ideal_text: Option<(usize, String)> = None;
        let mut meta = Vec::new();
        for (n, line) in content_lines(text) {
            let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            let rest = rest.trim();
            match head {
                "field" => {
                    if field.is_some() {
                        return err(n, "duplicate `field`");
                    }
                    field = Some(parse_field(n, rest)?);
                }
                "dim" => {
                    if dim.is_some() {
                        return err(n, "duplicate `dim`");
                    }
                    dim = Some(rest.parse().or_else(|_| err(n, format!("bad dimension `{rest}`")))?);
                }
                "basis" => {
                    let d = dim.ok_or_else(|| ParseError {
                        line: n,
                        message: "`basis` before `dim`".into(),
                    })?;
                    let list: Vec<String> = rest.split_whitespace().map(str::to_string).collect();
                    if list.len() != d {
                        return err(n, format!("expected {d} basis names, found {}", list.len()));
                    }
                    for (i, name) in list.iter().enumerate() {
                        let valid = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                            && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
                        if !valid {
                            return err(n, format!("bad basis name `{name}`"));
                        }
                        if list[..i].contains(name) {
                            return err(n, format!("repeated basis name `{name}`"));
                        }
                    }
                    names = Some(list);
                }
                "convention" => {
                    convention = match rest {
                        "right" => Convention::Right,
                        "left" => Convention::Left,
                        _ => return err(n, format!("unknown convention `{rest}`")),
                    };
                }
                "ideal" => {
                    if ideal_text.is_some() {
                        return err(n, "duplicate `ideal`");
                    }
                    ideal_text = Some((n, rest.to_string()));
                }
                "meta" => {
                    let (key, value) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                    if key.is_empty() {
                        return err(n, "`meta` needs a key");
                    }
                    meta.push((key.to_string(), value.trim().to_string()));
                }
                _ if line.starts_with('[') => {
                    let (f, d) = match (field, dim) {
                        (Some(f), Some(d)) => (f, d),
                        _ => return err(n, "relation before `field` and `dim`"),
                    };
                    let (lhs, rhs) = line.split_once('=').ok_or_else(|| ParseError {
                        line: n,
                        message: "relation needs `=`".into(),
                    })?;
                    let (i, j) = parse_bracket(n, lhs, d, names.as_deref())?;
                    if products.iter().any(|(_, a, b, _)| (*a, *b) == (i, j)) {
                        return err(n, format!("bracket [{},{}] given twice", i + 1, j + 1));
                    }
                    let v = parse_combination(n, rhs, f, d, names.as_deref())?;
                    products.push((n, i, j, v));
                }
                _ => return err(n, format!("unknown directive `{head}`")),
            }
        }
        let field = field.ok_or_else(|| ParseError {
            line: 0,
            message: "missing `field`".into(),
        })?;
        let dim = dim.ok_or_else(|| ParseError {
            line: 0,
            message: "missing `dim`".into(),
        })?;
        let mut tensor = StructureTensor::zero(field, dim).with_convention(convention);
        if let Some(names) = &names {
            tensor = tensor.with_basis_names(names.clone()).expect("length checked");
        }
        for (n, i, j, v) in products {
            tensor.set_product(i, j, v).or_else(|e| err(n, e.to_string()))?;
        }
        let ideal = match ideal_text {
            None => None,
            Some((n, text)) => {
                let gens = text
                    .split(';')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|g| parse_combination(n, g, field, dim, names.as_deref()))
                    .collect::<ParseResult<Vec<_>>>()?;
                Some(gens)
            }
        };
        Ok(AlgebraFile { tensor, ideal, meta })
    }

    pub fn serialize(&self) -> String {
        let t = &self.tensor;
        let mut out = String::new();
        out.push_str(&write_field(t.field()));
        out.push('\n');
        out.push_str(&format!("dim {}\n", t.dim()));
        if let Some(names) = t.basis_names() {
            out.push_str(&format!("basis {}\n", names.join(" ")));
        }
        if t.convention() == Convention::Left {
            out.push_str("convention left\n");
        }
        for (i, j, v) in t.relations() {
            out.push_str(&format!("[{},{}] = {}\n", i + 1, j + 1, write_combination(v)));
        }
        if let Some(space) = self.ideal_space() {
            let gens: Vec<String> = space.basis_vectors().iter().map(write_combination).collect();
            out.push_str(&format!("ideal {}\n", gens.join("; ")));
        }
        for (k, v) in &self.meta {
            if v.is_empty() {
                out.push_str(&format!("meta {k}\n"));
            } else {
                out.push_str(&format!("meta {k} {v}\n"));
            }
        }
        out
    }
}

/// Matrix blocks of a certificate file, as raw rows.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CertificateFile {
    pub mode: Option<Mode>,
    pub blocks: Vec<(String, usize, Vec<Vec<String>>)>,
}

impl CertificateFile {
    /// Blocks are introduced by `name:` lines and hold one matrix row per
    /// line; `mode strict|linear` is optional.
    pub fn parse(text: &str) -> ParseResult<CertificateFile> {
        let mut file = CertificateFile::default();
        for (n, line) in content_lines(text) {
            if let Some(name) = line.strip_suffix(':') {
                let name = name.trim().to_string();
                if file.blocks.iter().any(|(b, _, _)| *b == name) {
                    return err(n, format!("duplicate block `{name}`"));
                }
                file.blocks.push((name, n, Vec::new()));
            } else if let Some(rest) = line.strip_prefix("mode ") {
                file.mode = Some(match rest.trim() {
                    "strict" => Mode::Strict,
                    "linear" => Mode::Linear,
                    other => return err(n, format!("unknown mode `{other}`")),
                });
            } else {
                match file.blocks.last_mut() {
                    Some((_, _, rows)) => rows.push(line.split_whitespace().map(str::to_string).collect()),
                    None => return err(n, "matrix row outside a block"),
                }
            }
        }
        Ok(file)
    }

    /// The named block as a `rows × cols` matrix over `field`.
    pub fn matrix(&self, name: &str, field: Field, rows: usize, cols: usize) -> ParseResult<Matrix> {
        let (_, line, raw) = self
            .blocks
            .iter()
            .find(|(b, _, _)| b == name)
            .ok_or_else(|| ParseError {
                line: 0,
                message: format!("missing block `{name}:`"),
            })?;
        if raw.len() != rows {
            return err(*line, format!("block `{name}` needs {rows} rows, found {}", raw.len()));
        }
        let mut out = Vec::with_capacity(rows);
        for (r, row) in raw.iter().enumerate() {
            if row.len() != cols {
                return err(
                    line + r + 1,
                    format!("block `{name}` needs {cols} entries per row, found {}", row.len()),
                );
            }
            let parsed = row
                .iter()
                .map(|s| field.parse_scalar(s).or_else(|_| err(line + r + 1, format!("bad entry `{s}`"))))
                .collect::<ParseResult<Vec<_>>>()?;
            out.push(parsed);
        }
        if rows == 0 {
            return Ok(Matrix::zeros(field, 0, cols));
        }
        Matrix::from_rows(field, out).or_else(|e| err(*line, e.to_string()))
    }

    pub fn push(&mut self, name: &str, m: &Matrix) {
        let rows = m
            .row_vectors()
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect();
        self.blocks.push((name.to_string(), 0, rows));
    }

    pub fn serialize(&self) -> String {
        let mut out = String::new();
        if let Some(mode) = self.mode {
            out.push_str(&format!("mode {mode}\n"));
        }
        for (name, _, rows) in &self.blocks {
            out.push_str(&format!("{name}:\n"));
            for row in rows {
                out.push_str(&row.join(" "));
                out.push('\n');
            }
        }
        out
    }
}

/// Renders a matrix as certificate-file rows.
pub fn matrix_block(name: &str, m: &Matrix) -> String {
    let mut f = CertificateFile::default();
    f.push(name, m);
    f.serialize()
}

/// Reads factor-set data:
///
/// ```text
/// field Q
/// kernel_dim 2
/// quotient_dim 3
/// convention left
/// kernel [1,1] = 1*2
/// quotient [1,1] = 1*3
/// f [2,1] = 1*1
/// L 1 2 = 1*1      # L_{x1}(z2) = z1
/// R 3 1 = -1*2     # R_{x3}(z1) = -z2
/// ```
pub fn parse_factor_set(text: &str) -> ParseResult<FactorSetData> {
    let mut field = None;
    let mut k: Option<usize> = None;
    let mut r: Option<usize> = None;
    let mut convention = Convention::Right;
    let mut entries: Vec<(usize, &str, &str)> = Vec::new();
    for (n, line) in content_lines(text) {
        let (head, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match head {
            "field" => field = Some(parse_field(n, rest)?),
            "kernel_dim" => k = Some(rest.parse().or_else(|_| err(n, format!("bad dimension `{rest}`")))?),
            "quotient_dim" => r = Some(rest.parse().or_else(|_| err(n, format!("bad dimension `{rest}`")))?),
            "convention" => {
                convention = match rest {
                    "right" => Convention::Right,
                    "left" => Convention::Left,
                    _ => return err(n, format!("unknown convention `{rest}`")),
                }
            }
            "kernel" | "quotient" | "f" | "L" | "R" => entries.push((n, head, rest)),
            _ => return err(n, format!("unknown directive `{head}`")),
        }
    }
    let missing = |what: &str| ParseError {
        line: 0,
        message: format!("missing `{what}`"),
    };
    let field = field.ok_or_else(|| missing("field"))?;
    let k = k.ok_or_else(|| missing("kernel_dim"))?;
    let r = r.ok_or_else(|| missing("quotient_dim"))?;
    let mut base = StructureTensor::zero(field, k).with_convention(convention);
    let mut quot = StructureTensor::zero(field, r).with_convention(convention);
    let mut f = vec![Vector::zeros(field, k); r * r];
    let mut left = vec![Matrix::zeros(field, k, k); r];
    let mut right = vec![Matrix::zeros(field, k, k); r];
    for (n, head, rest) in entries {
        let (lhs, rhs) = rest.split_once('=').ok_or_else(|| ParseError {
            line: n,
            message: "entry needs `=`".into(),
        })?;
        match head {
            "kernel" => {
                let (i, j) = parse_bracket(n, lhs, k, None)?;
                base.set_product(i, j, parse_combination(n, rhs, field, k, None)?)
                    .or_else(|e| err(n, e.to_string()))?;
            }
            "quotient" => {
                let (i, j) = parse_bracket(n, lhs, r, None)?;
                quot.set_product(i, j, parse_combination(n, rhs, field, r, None)?)
                    .or_else(|e| err(n, e.to_string()))?;
            }
            "f" => {
                let (i, j) = parse_bracket(n, lhs, r, None)?;
                f[i * r + j] = parse_combination(n, rhs, field, k, None)?;
            }
            _ => {
                let idx: Vec<&str> = lhs.split_whitespace().collect();
                let [x, z] = idx.as_slice() else {
                    return err(n, format!("expected `{head} <x> <z> = ...`"));
                };
                let x = parse_ref(n, x, r, None)?;
                let z = parse_ref(n, z, k, None)?;
                let v = parse_combination(n, rhs, field, k, None)?;
                let target = if head == "L" { &mut left[x] } else { &mut right[x] };
                for (row, c) in v.iter().enumerate() {
                    target.set(row, z, c.clone());
                }
            }
        }
    }
    let base = LeibnizAlgebra::new(base).or_else(|e| err(0, format!("kernel bracket: {e}")))?;
    let quot = LeibnizAlgebra::new(quot).or_else(|e| err(0, format!("quotient bracket: {e}")))?;
    FactorSetData::new(base, quot, f, left, right).or_else(|e| err(0, e.to_string()))
}

pub fn serialize_factor_set(d: &FactorSetData) -> String {
    let (k, r) = (d.kernel_dim(), d.quotient_dim());
    let mut out = String::new();
    out.push_str(&write_field(d.field()));
    out.push('\n');
    out.push_str(&format!("kernel_dim {k}\nquotient_dim {r}\n"));
    if d.convention() == Convention::Left {
        out.push_str("convention left\n");
    }
    for (i, j, v) in d.base.relations() {
        out.push_str(&format!("kernel [{},{}] = {}\n", i + 1, j + 1, write_combination(v)));
    }
    for (i, j, v) in d.quotient.relations() {
        out.push_str(&format!("quotient [{},{}] = {}\n", i + 1, j + 1, write_combination(v)));
    }
    for i in 0..r {
        for j in 0..r {
            let v = &d.f[i * r + j];
            if !v.is_zero() {
                out.push_str(&format!("f [{},{}] = {}\n", i + 1, j + 1, write_combination(v)));
            }
        }
    }
    for (tag, mats) in [("L", &d.left), ("R", &d.right)] {
        for (x, m) in mats.iter().enumerate() {
            for (z, col) in m.columns().iter().enumerate() {
                if !col.is_zero() {
                    out.push_str(&format!("{tag} {} {} = {}\n", x + 1, z + 1, write_combination(col)));
                }
            }
        }
    }
    out
}
