use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use leibniz_core::algebra::{LeibnizAlgebra, LeibnizCheck, StructureTensor};
use leibniz_core::catalog::{self, CatalogEntry, Claimed};
use leibniz_core::exactla::{Field, Matrix, Subspace, Vector};
use leibniz_core::extension::{
    build_extension, check_factor_identity, factor_set_from_pair, induced_maps_and_d, lemma2_reconstruct,
    ExtensionAlgebra, FactorCheck, Prop4Check,
};
use leibniz_core::isoclinism::{
    alpha_hom_violations, fingerprint, search_isoclinism, search_pair_isomorphism, theorem3_construct, verify_certificate, CertCheck,
    IsoclinismCertificate, IsomorphismOutcome, Mode, SearchOutcome, Theorem3Outcome, Violation, DEFAULT_BUDGET,
};
use leibniz_core::pairs::{epsilon_condition, stem_reduce, EpsilonMode, EpsilonReport, EpsilonWitness, Pair};
use leibniz_core::Error;

use crate::format::{matrix_block, parse_combination, parse_factor_set, AlgebraFile, CertificateFile};

#[derive(Debug, Parser)]
#[command(name = "leibniz", version, about = "Exact computations with Leibniz algebras and their pairs")]
pub struct Cli {
    /// Field for catalog entries: Q or GF<p>. Files carry their own field.
    #[arg(long, global = true)]
    pub field: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Strict,
    Linear,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Strict => Mode::Strict,
            ModeArg::Linear => Mode::Linear,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EpsilonArg {
    Basis,
    All,
}

impl From<EpsilonArg> for EpsilonMode {
    fn from(m: EpsilonArg) -> EpsilonMode {
        match m {
            EpsilonArg::Basis => EpsilonMode::BasisPairs,
            EpsilonArg::All => EpsilonMode::AllElements,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the Leibniz identity on all basis triples.
    Validate { alg: String },
    /// Lie-center, Lie-commutator and invariant fingerprint of a pair.
    Invariants {
        alg: String,
        /// Ideal generators, `;`-separated, overriding the file's ideal.
        #[arg(long)]
        ideal: Option<String>,
    },
    /// Stem test and reduction to an isoclinic stem pair.
    Stem { pair: String },
    /// Verify or search for isoclinism certificates.
    Isoclinic {
        #[command(subcommand)]
        action: IsoclinicCommand,
    },
    /// Factor set of a pair relative to the deterministic splitting.
    Factorset { pair: String },
    /// Build the extension algebra described by a factor-set file.
    Extend { file: PathBuf },
    /// Rebuild a pair's algebra as an extension and verify the isomorphism.
    Lemma2 { pair: String },
    /// Split an isomorphism of extensions into its induced maps and check it.
    Prop4 {
        ext1: PathBuf,
        ext2: PathBuf,
        #[arg(long)]
        eta: PathBuf,
    },
    /// Build an isomorphism of stem ideals from an isoclinism certificate.
    Theorem3 {
        p1: String,
        p2: String,
        #[arg(long)]
        cert: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        epsilon_mode: EpsilonArg,
    },
    /// Check `[x, y] = ε [y, x]` on the ideal.
    Epsilon {
        alg: String,
        #[arg(long, value_enum, default_value = "all")]
        mode: EpsilonArg,
        #[arg(long)]
        ideal: Option<String>,
    },
    /// List the built-in examples or show one.
    Catalog { name: Option<String> },
}

#[derive(Debug, Subcommand)]
pub enum IsoclinicCommand {
    Verify {
        p1: String,
        p2: String,
        #[arg(long)]
        cert: PathBuf,
        /// Check a single mode; by default strict is tried, then linear.
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    Search {
        p1: String,
        p2: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        #[arg(long, value_enum, default_value = "strict")]
        mode: ModeArg,
        /// Search for an isomorphism of pairs instead.
        #[arg(long)]
        isomorphism: bool,
    },
}

/// What a command printed and its exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

/// Input problems; reported on stderr with exit code 2.
#[derive(Debug)]
struct InputError(String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<crate::format::ParseError> for InputError {
    fn from(e: crate::format::ParseError) -> Self {
        InputError(e.to_string())
    }
}

impl From<std::fmt::Error> for InputError {
    fn from(e: std::fmt::Error) -> Self {
        InputError(e.to_string())
    }
}

type Run = Result<(String, bool), InputError>;

pub fn run(cli: &Cli) -> Outcome {
    match dispatch(cli) {
        Ok((stdout, positive)) => Outcome {
            stdout,
            stderr: String::new(),
            code: if positive { 0 } else { 1 },
        },
        Err(InputError(msg)) => Outcome {
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
            code: 2,
        },
    }
}

fn dispatch(cli: &Cli) -> Run {
    let field = cli.field.as_deref().map(parse_field_arg).transpose()?;
    let ctx = Context { field };
    match &cli.command {
        Command::Validate { alg } => ctx.validate(alg),
        Command::Invariants { alg, ideal } => ctx.invariants(alg, ideal.as_deref()),
        Command::Stem { pair } => ctx.stem(pair),
        Command::Isoclinic { action } => match action {
            IsoclinicCommand::Verify { p1, p2, cert, mode } => ctx.verify(p1, p2, cert, mode.map(Mode::from)),
            IsoclinicCommand::Search {
                p1,
                p2,
                budget,
                mode,
                isomorphism,
            } => ctx.search(p1, p2, *budget, (*mode).into(), *isomorphism),
        },
        Command::Factorset { pair } => ctx.factorset(pair),
        Command::Extend { file } => extend(file),
        Command::Lemma2 { pair } => ctx.lemma2(pair),
        Command::Prop4 { ext1, ext2, eta } => prop4(ext1, ext2, eta),
        Command::Theorem3 {
            p1,
            p2,
            cert,
            epsilon_mode,
        } => ctx.theorem3(p1, p2, cert, (*epsilon_mode).into()),
        Command::Epsilon { alg, mode, ideal } => ctx.epsilon(alg, (*mode).into(), ideal.as_deref()),
        Command::Catalog { name } => ctx.catalog(name.as_deref()),
    }
}

fn parse_field_arg(text: &str) -> Result<Field, InputError> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rationals);
    }
    let digits = t
        .strip_prefix("GF")
        .or_else(|| t.strip_prefix("gf"))
        .map(|d| d.trim().trim_start_matches('(').trim_end_matches(')'))
        .ok_or_else(|| InputError(format!("unknown field `{text}`")))?;
    let p: u64 = digits.parse().map_err(|_| InputError(format!("unknown field `{text}`")))?;
    Ok(Field::prime(p)?)
}

fn read(path: &Path) -> Result<String, InputError> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// The algebra file for a catalog entry, with its claims as metadata.
pub fn catalog_file(entry: &CatalogEntry, field: Field) -> AlgebraFile {
    let mut file = AlgebraFile::new(entry.tensor_over(field));
    if let Some(names) = entry.ideal {
        file = file.with_ideal(entry.span_of(field, names).basis_vectors());
    }
    file.meta.push(("catalog".into(), entry.name.into()));
    for c in entry.claims {
        let mut value = claimed_text(&c.value);
        if let Some(computed) = &c.computed {
            write!(value, " disputed computed {}", claimed_text(computed)).expect("string write");
        }
        file.meta.push((format!("claim.{}", c.key), value));
    }
    file
}

fn claimed_text(c: &Claimed) -> String {
    match c {
        Claimed::Span(names) if names.is_empty() => "0".into(),
        Claimed::Span(names) => format!("span{{{}}}", names.join(", ")),
        Claimed::Holds(b) => b.to_string(),
    }
}

struct Loaded {
    label: String,
    file: AlgebraFile,
}

impl Loaded {
    fn tensor(&self) -> &StructureTensor {
        &self.file.tensor
    }

    fn algebra(&self) -> Result<LeibnizAlgebra, InputError> {
        self.file
            .algebra()
            .map_err(|e| InputError(format!("{}: not a Leibniz algebra ({e})", self.label)))
    }

    fn pair(&self) -> Result<Pair, InputError> {
        let alg = self.algebra()?;
        match self.file.ideal_space() {
            None => Ok(Pair::full(alg)),
            Some(s) => Pair::new(alg, s).map_err(|e| InputError(format!("{}: {e}", self.label))),
        }
    }

    fn header(&self) -> String {
        let t = self.tensor();
        format!(
            "algebra {}: dim {} over {}, {} convention",
            self.label,
            t.dim(),
            t.field(),
            t.convention()
        )
    }
}

struct Context {
    field: Option<Field>,
}

fn span_text(space: &Subspace, t: &StructureTensor) -> String {
    if space.is_zero() {
        return "0".into();
    }
    let gens: Vec<String> = space.basis_vectors().iter().map(|v| t.format_vector(v)).collect();
    format!("span{{{}}}", gens.join(", "))
}

fn compact(text: String) -> String {
    text.chars().filter(|c| !c.is_whitespace()).collect()
}

impl Context {
    fn load(&self, arg: &str) -> Result<Loaded, InputError> {
        let path = Path::new(arg);
        if path.is_file() {
            let file = AlgebraFile::parse(&read(path)?).map_err(|e| InputError(format!("{arg}: {e}")))?;
            if let Some(f) = self.field {
                if f != file.tensor.field() {
                    return Err(InputError(format!(
                        "{arg}: file is over {} but --field {f} was given",
                        file.tensor.field()
                    )));
                }
            }
            return Ok(Loaded {
                label: arg.to_string(),
                file,
            });
        }
        match catalog::lookup(arg) {
            Some(entry) => Ok(Loaded {
                label: entry.name.to_string(),
                file: catalog_file(entry, self.field.unwrap_or(Field::Rationals)),
            }),
            None => Err(InputError(format!("`{arg}` is neither a file nor a catalog entry"))),
        }
    }

    fn load_with_ideal(&self, arg: &str, ideal: Option<&str>) -> Result<Loaded, InputError> {
        let mut loaded = self.load(arg)?;
        if let Some(text) = ideal {
            let t = &loaded.file.tensor;
            let gens = text
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|g| parse_combination(0, g, t.field(), t.dim(), t.basis_names()))
                .collect::<Result<Vec<_>, _>>()?;
            loaded.file.ideal = Some(gens);
        }
        Ok(loaded)
    }

    fn validate(&self, arg: &str) -> Run {
        let loaded = self.load(arg)?;
        let t = loaded.tensor();
        let mut out = loaded.header();
        out.push('\n');
        match t.check_leibniz() {
            LeibnizCheck::Ok => {
                out.push_str("OK\n");
                Ok((out, true))
            }
            LeibnizCheck::Counterexample { i, j, k, lhs, rhs } => {
                writeln!(
                    out,
                    "FAIL Leibniz identity at ({}, {}, {}): left side {}, right side {}",
                    t.name(i),
                    t.name(j),
                    t.name(k),
                    t.format_vector(&lhs),
                    t.format_vector(&rhs)
                )?;
                Ok((out, false))
            }
        }
    }

    fn invariants(&self, arg: &str, ideal: Option<&str>) -> Run {
        let loaded = self.load_with_ideal(arg, ideal)?;
        let p = loaded.pair()?;
        let t = loaded.tensor();
        let mut out = loaded.header();
        out.push('\n');
        writeln!(out, "ideal m: {}", span_text(p.ideal_space(), t))?;
        writeln!(out, "Z_Lie(m,q): {}", span_text(p.lie_center(), t))?;
        writeln!(out, "[m,q]_Lie: {}", span_text(p.lie_commutator().space(), t))?;
        writeln!(out, "stem: {}", if p.is_stem() { "yes" } else { "no" })?;
        writeln!(out, "fingerprint:")?;
        for line in fingerprint(&p).to_string().lines() {
            writeln!(out, "  {line}")?;
        }
        Ok((out, true))
    }

    fn stem(&self, arg: &str) -> Run {
        let loaded = self.load(arg)?;
        let p = loaded.pair()?;
        let t = loaded.tensor();
        let mut out = loaded.header();
        out.push('\n');
        writeln!(out, "Z_Lie(m,q): {}", span_text(p.lie_center(), t))?;
        writeln!(out, "[m,q]_Lie: {}", span_text(p.lie_commutator().space(), t))?;
        let is_stem = p.is_stem();
        writeln!(out, "stem: {}", if is_stem { "yes" } else { "no" })?;
        match stem_reduce(&p) {
            Ok(red) => {
                writeln!(out, "removed ideal: {}", span_text(&red.removed, t))?;
                writeln!(out, "reduced pair:")?;
                let reduced = AlgebraFile::new(red.pair.algebra().tensor().clone())
                    .with_ideal(red.pair.ideal_space().basis_vectors());
                for line in reduced.serialize().lines() {
                    writeln!(out, "  {line}")?;
                }
                writeln!(out, "certificate (input -> reduced):")?;
                let mut cert = CertificateFile {
                    mode: Some(red.certificate.mode),
                    ..Default::default()
                };
                cert.push("alpha", red.certificate.alpha.matrix());
                cert.push("beta", red.certificate.beta.matrix());
                out.push_str(&cert.serialize());
                Ok((out, is_stem))
            }
            Err(Error::StemReductionIncomplete) => {
                writeln!(out, "FAIL {}", Error::StemReductionIncomplete)?;
                Ok((out, false))
            }
            Err(e) => Err(e.into()),
        }
    }

    fn certificate(&self, p1: &Pair, p2: &Pair, path: &Path) -> Result<(CertificateFile, IsoclinismCertificate), InputError> {
        let file = CertificateFile::parse(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        let field = p1.algebra().field();
        let dq = |p: &Pair| p.central_quotient().algebra.dim();
        let dk = |p: &Pair| p.lie_commutator().dim();
        let wrap = |e: crate::format::ParseError| InputError(format!("{}: {e}", path.display()));
        let alpha = file.matrix("alpha", field, dq(p2), dq(p1)).map_err(wrap)?;
        let beta = file.matrix("beta", field, dk(p2), dk(p1)).map_err(wrap)?;
        let mode = file.mode.unwrap_or_default();
        Ok((file, IsoclinismCertificate::new(alpha, beta, mode)))
    }

    fn two_pairs(&self, a: &str, b: &str) -> Result<(Loaded, Pair, Loaded, Pair), InputError> {
        let l1 = self.load(a)?;
        let l2 = self.load(b)?;
        let (p1, p2) = (l1.pair()?, l2.pair()?);
        if p1.algebra().field() != p2.algebra().field() {
            return Err(Error::FieldMismatch(p1.algebra().field(), p2.algebra().field()).into());
        }
        Ok((l1, p1, l2, p2))
    }

    fn verify(&self, a: &str, b: &str, path: &Path, mode: Option<Mode>) -> Run {
        let (_, p1, _, p2) = self.two_pairs(a, b)?;
        let (file, cert) = self.certificate(&p1, &p2, path)?;
        let modes = match mode.or(file.mode) {
            Some(m) => vec![m],
            None => vec![Mode::Strict, Mode::Linear],
        };
        let mut failures = Vec::new();
        for m in modes {
            match verify_certificate(&p1, &p2, &cert.clone().with_mode(m))? {
                CertCheck::Ok => {
                    let mut out = format!("OK ({m})\n");
                    for (fm, v) in &failures {
                        writeln!(out, "{fm} mode fails: {v}")?;
                    }
                    return Ok((out, true));
                }
                CertCheck::Violation(v) => failures.push((m, violation_text(&p1, &p2, &cert, &v)?)),
            }
        }
        let mut out = String::new();
        for (m, v) in failures {
            writeln!(out, "FAIL ({m}): {v}")?;
        }
        Ok((out, false))
    }

    fn search(&self, a: &str, b: &str, budget: u64, mode: Mode, isomorphism: bool) -> Run {
        let (l1, p1, l2, p2) = self.two_pairs(a, b)?;
        let mut out = String::new();
        if isomorphism {
            return match search_pair_isomorphism(&p1, &p2, budget, true)? {
                IsomorphismOutcome::Found(m) => {
                    out.push_str("ISOMORPHIC\n");
                    out.push_str(&matrix_block("phi", &m));
                    Ok((out, true))
                }
                IsomorphismOutcome::NoIsomorphism { field, assignments } => {
                    writeln!(
                        out,
                        "NO ISOMORPHISM over {field} (exhaustive, {assignments} assignments)"
                    )?;
                    Ok((out, false))
                }
                IsomorphismOutcome::FingerprintMismatch => {
                    writeln!(out, "NO ISOMORPHISM (invariants differ)")?;
                    writeln!(out, "{}:", l1.label)?;
                    for line in fingerprint(&p1).to_string().lines() {
                        writeln!(out, "  {line}")?;
                    }
                    writeln!(out, "{}:", l2.label)?;
                    for line in fingerprint(&p2).to_string().lines() {
                        writeln!(out, "  {line}")?;
                    }
                    Ok((out, false))
                }
                IsomorphismOutcome::Inconclusive(why) => {
                    writeln!(out, "INCONCLUSIVE: {why}")?;
                    Ok((out, false))
                }
            };
        }
        match search_isoclinism(&p1, &p2, budget, mode)? {
            SearchOutcome::Found(cert) => {
                writeln!(out, "FOUND ({})", cert.mode)?;
                let mut file = CertificateFile {
                    mode: Some(cert.mode),
                    ..Default::default()
                };
                file.push("alpha", cert.alpha.matrix());
                file.push("beta", cert.beta.matrix());
                out.push_str(&file.serialize());
                Ok((out, true))
            }
            SearchOutcome::NotIsoclinic(why) => {
                writeln!(out, "NOT ISOCLINIC: {why}")?;
                Ok((out, false))
            }
            SearchOutcome::Inconclusive(why) => {
                writeln!(out, "INCONCLUSIVE: {why}")?;
                Ok((out, false))
            }
        }
    }

    fn factorset(&self, arg: &str) -> Run {
        let loaded = self.load(arg)?;
        let p = loaded.pair()?;
        let data = factor_set_from_pair(p.algebra(), p.ideal())?;
        let mut out = crate::format::serialize_factor_set(&data);
        if let Some(rho) = data.splitting.as_ref().filter(|r| r.matrix().cols() > 0) {
            out.push_str(&matrix_block("splitting", rho.matrix()));
        }
        match check_factor_identity(&data) {
            FactorCheck::Ok => {
                out.push_str("factor identity: OK\n");
                Ok((out, true))
            }
            FactorCheck::Violation(i, j, k) => {
                writeln!(out, "factor identity: FAIL at ({}, {}, {})", i + 1, j + 1, k + 1)?;
                Ok((out, false))
            }
        }
    }

    fn lemma2(&self, arg: &str) -> Run {
        let loaded = self.load(arg)?;
        let p = loaded.pair()?;
        match lemma2_reconstruct(p.algebra(), p.ideal()) {
            Ok((ext, iso)) => {
                let mut out = String::from("extension algebra (kernel first):\n");
                for line in AlgebraFile::new(ext.algebra.tensor().clone()).serialize().lines() {
                    writeln!(out, "  {line}")?;
                }
                out.push_str(&matrix_block("iso", iso.matrix()));
                out.push_str("OK reconstruction is an isomorphism\n");
                Ok((out, true))
            }
            Err(e @ (Error::Invalid(_) | Error::FactorIdentityViolated(..) | Error::LeibnizCheckFailed(..))) => {
                Ok((format!("FAIL {e}\n"), false))
            }
            Err(e) => Err(e.into()),
        }
    }

    fn theorem3(&self, a: &str, b: &str, path: &Path, mode: EpsilonMode) -> Run {
        let (l1, p1, _, p2) = self.two_pairs(a, b)?;
        let (_, cert) = self.certificate(&p1, &p2, path)?;
        let mut out = String::new();
        let outcome = match theorem3_construct(&p1, &p2, &cert, mode) {
            Ok(o) => o,
            Err(Error::CertificateInvalid(why)) => {
                writeln!(out, "FAIL certificate does not verify: {why}")?;
                return Ok((out, false));
            }
            Err(e) => return Err(e.into()),
        };
        match outcome {
            Theorem3Outcome::Iso { lambda, iso, epsilon } => {
                out.push_str("ISOMORPHIC\n");
                out.push_str(&epsilon_text(&epsilon, l1.tensor(), p1.ideal_space()));
                out.push_str(&matrix_block("lambda", lambda.matrix()));
                out.push_str(&matrix_block("iso", iso.matrix()));
                Ok((out, true))
            }
            Theorem3Outcome::ConditionFailed(c, eps) => {
                writeln!(out, "CONDITION FAILED ({c})")?;
                if let Some(eps) = eps {
                    out.push_str(&epsilon_text(&eps, l1.tensor(), p1.ideal_space()));
                }
                Ok((out, false))
            }
            Theorem3Outcome::VerificationFailed(why) => {
                writeln!(out, "VERIFICATION FAILED: {why}")?;
                Ok((out, false))
            }
        }
    }

    fn epsilon(&self, arg: &str, mode: EpsilonMode, ideal: Option<&str>) -> Run {
        let loaded = self.load_with_ideal(arg, ideal)?;
        let t = loaded.tensor();
        let space = loaded
            .file
            .ideal_space()
            .unwrap_or_else(|| Subspace::full(t.field(), t.dim()));
        let report = epsilon_condition(t, &space, mode);
        Ok((epsilon_text(&report, t, &space), report.pass))
    }

    fn catalog(&self, name: Option<&str>) -> Run {
        let field = self.field.unwrap_or(Field::Rationals);
        let mut out = String::new();
        let Some(name) = name else {
            for e in catalog::catalog() {
                writeln!(out, "{:<9} dim {}  {}", e.name, e.dim, e.description)?;
            }
            return Ok((out, true));
        };
        let Some(entry) = catalog::lookup(name) else {
            writeln!(out, "not found: {name}")?;
            return Ok((out, false));
        };
        writeln!(out, "# {}: {}", entry.name, entry.description)?;
        out.push_str(&catalog_file(entry, field).serialize());
        for c in entry.claims {
            let mut line = format!("# claim {}: {}", c.key, claimed_text(&c.value));
            if c.disputed {
                let computed = c.computed.as_ref().map(claimed_text).unwrap_or_default();
                write!(line, "  [disputed; computed {computed}]")?;
            }
            writeln!(out, "{line}")?;
        }
        Ok((out, true))
    }
}

/// Names the offending quotient basis pairs when `alpha` fails to respect
/// brackets.
fn violation_text(p1: &Pair, p2: &Pair, cert: &IsoclinismCertificate, v: &Violation) -> Result<String, InputError> {
    let Violation::AlphaNotHomomorphism(..) = v else {
        return Ok(v.to_string());
    };
    let quotient = &p1.central_quotient().algebra;
    let pairs: Vec<String> = alpha_hom_violations(p1, p2, cert.alpha.matrix())?
        .iter()
        .map(|(i, j)| format!("({}, {})", quotient.name(*i), quotient.name(*j)))
        .collect();
    Ok(format!("alpha does not respect brackets at {}", pairs.join(", ")))
}

fn epsilon_text(r: &EpsilonReport, t: &StructureTensor, space: &Subspace) -> String {
    let basis = space.basis_vectors();
    let name = |i: usize| compact(t.format_vector(&basis[i]));
    let mut out = String::new();
    if r.pass {
        let values: Vec<String> = r
            .epsilons
            .iter()
            .map(|(i, j, e)| format!("epsilon({},{}) = {e}", name(*i), name(*j)))
            .collect();
        if values.is_empty() {
            out.push_str("OK all products vanish\n");
        } else {
            out.push_str(&format!("OK {}\n", values.join(", ")));
        }
        if let Some(u) = &r.uniform {
            out.push_str(&format!("uniform epsilon = {u}\n"));
        }
        return out;
    }
    let element = |v: &Vector| {
        let ambient = space.from_coordinates(v);
        compact(t.format_vector(&ambient))
    };
    match &r.witness {
        Some(EpsilonWitness::BasisPair(i, j)) => {
            out.push_str(&format!("FAIL witness x={} y={}\n", name(*i), name(*j)));
        }
        Some(EpsilonWitness::Elements { x, y }) => {
            out.push_str(&format!("FAIL witness x={} y={}\n", element(x), element(y)));
        }
        Some(EpsilonWitness::Polynomial {
            minor,
            x_exponents,
            y_exponents,
            coefficient,
        }) => {
            let mono = |prefix: &str, e: &[u32]| {
                e.iter()
                    .enumerate()
                    .filter(|(_, p)| **p > 0)
                    .map(|(i, p)| format!("{prefix}{}^{p}", i + 1))
                    .collect::<Vec<_>>()
                    .join("*")
            };
            out.push_str(&format!(
                "FAIL minor ({}, {}) has coefficient {coefficient} at {} {}\n",
                minor.0 + 1,
                minor.1 + 1,
                mono("x", x_exponents),
                mono("y", y_exponents)
            ));
        }
        None => out.push_str("FAIL\n"),
    }
    out
}

fn extension_from(path: &Path) -> Result<Result<ExtensionAlgebra, Error>, InputError> {
    let data = parse_factor_set(&read(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Ok(build_extension(&data))
}

fn extend(path: &Path) -> Run {
    match extension_from(path)? {
        Ok(ext) => {
            let mut out = String::from("extension algebra (kernel first):\n");
            for line in AlgebraFile::new(ext.algebra.tensor().clone()).serialize().lines() {
                writeln!(out, "  {line}")?;
            }
            out.push_str("OK Leibniz identity holds\n");
            Ok((out, true))
        }
        Err(e @ (Error::FactorIdentityViolated(..) | Error::LeibnizCheckFailed(..))) => Ok((format!("FAIL {e}\n"), false)),
        Err(e) => Err(e.into()),
    }
}

fn prop4(a: &Path, b: &Path, eta_path: &Path) -> Run {
    let e1 = extension_from(a)?.map_err(|e| InputError(format!("{}: {e}", a.display())))?;
    let e2 = extension_from(b)?.map_err(|e| InputError(format!("{}: {e}", b.display())))?;
    let file = CertificateFile::parse(&read(eta_path)?).map_err(|e| InputError(format!("{}: {e}", eta_path.display())))?;
    let field = e1.data.field();
    let eta: Matrix = file
        .matrix("eta", field, e2.algebra.dim(), e1.algebra.dim())
        .map_err(|e| InputError(format!("{}: {e}", eta_path.display())))?;
    match induced_maps_and_d(&eta, &e1, &e2) {
        Ok(maps) => {
            let mut out = String::new();
            out.push_str(&matrix_block("eta1", maps.eta1.matrix()));
            out.push_str(&matrix_block("eta2", maps.eta2.matrix()));
            out.push_str(&matrix_block("d", maps.d.matrix()));
            match maps.check {
                Prop4Check::Ok => {
                    out.push_str("OK\n");
                    Ok((out, true))
                }
                Prop4Check::Violation(i, j) => {
                    writeln!(out, "FAIL at basis pair ({}, {})", i + 1, j + 1)?;
                    Ok((out, false))
                }
            }
        }
        Err(Error::CenterNotPreserved) => Ok(("FAIL eta does not preserve the kernel\n".into(), false)),
        Err(Error::Singular) => Ok(("FAIL eta is singular\n".into(), false)),
        Err(e) => Err(e.into()),
    }
}
