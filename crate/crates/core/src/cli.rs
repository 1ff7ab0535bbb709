//! Command-line front end.
//!
//! Exit codes: 0 success, 1 validation failure or non-commutative input,
//! 2 usage error, 3 numerical failure.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::constructions::{
    conjugacy_class_hypergroup, double_coset_hypergroup, fusion_realizable_two_element_tol,
    group_hypergroup, two_element,
};
use crate::error::{HyperError, Result};
use crate::fusion::{pf_dimensions, rescale, FusionRing};
use crate::group::CayleyGroup;
use crate::groupoid::Hypergroupoid;
use crate::hypergroup::{HypergroupTable, ValidationReport};
use crate::io::format::{CharacterAnalysis, Document, DualOutcome, StateDocument, StateRecord};
use crate::io::quadratic::recognize;
use crate::io::registry;
use crate::quantize::{enumerate_admissible_tol, AdmissibleIndexSet};
use crate::reprs::{characters_seeded, dual_from_characters, orthogonality_from, CharacterTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

const REALIZABILITY_BOUND: u64 = 64;
const LITERAL_BOUND: i64 = 64;

#[derive(Debug, Parser)]
#[command(name = "hyperkit", version, about = "Finite hypergroups and hypergroupoids")]
pub struct Cli {
    /// Numerical tolerance for axiom checks and comparisons.
    #[arg(long, global = true, env = "HYPERKIT_TOL", default_value_t = 1e-9)]
    pub tol: f64,
    /// Seed for the randomized diagonalization (decimal or 0x-prefixed hex).
    #[arg(long, global = true, value_parser = parse_seed, default_value = "0xC0FFEE")]
    pub seed: u64,
    /// Emit a machine-readable JSON document instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the axioms of a table, fusion ring, group or hypergroupoid.
    Validate(Source),
    /// Construct a hypergroup table.
    #[command(subcommand)]
    Build(Build),
    /// Character table of a commutative hypergroup.
    Characters {
        #[command(flatten)]
        source: Source,
        /// Also construct the dual hypergroup.
        #[arg(long)]
        dual: bool,
    },
    /// Juxtapose a chain of boundary conditions.
    Compose {
        /// Builtin hypergroupoid or hypergroup name.
        #[arg(long, conflicts_with = "groupoid")]
        builtin: Option<String>,
        /// Hypergroupoid or hypergroup document.
        #[arg(long)]
        groupoid: Option<PathBuf>,
        /// Print the mixture after every juxtaposition.
        #[arg(long)]
        steps: bool,
        /// Arrow labels, left to right; `TO<FROM:label` disambiguates.
        #[arg(required = true)]
        chain: Vec<String>,
    },
    /// Enumerate admissible subfactor indices up to a bound.
    Indices {
        #[arg(long, default_value_t = 4.0)]
        bound: f64,
        #[arg(long, default_value_t = crate::quantize::DEFAULT_NMAX)]
        nmax: u32,
    },
}

#[derive(Debug, Args)]
pub struct Source {
    /// Input document.
    #[arg(conflicts_with = "builtin", required_unless_present = "builtin")]
    pub path: Option<PathBuf>,
    /// Name of a builtin object.
    #[arg(long)]
    pub builtin: Option<String>,
}

#[derive(Debug, Args)]
pub struct BuildOutput {
    /// Write the document here instead of stdout.
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Build {
    /// Hypergroup of a finite group.
    Group {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: BuildOutput,
    },
    /// Hypergroup of conjugacy classes.
    Classes {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: BuildOutput,
    },
    /// Hypergroup of double cosets of a subgroup.
    DoubleCosets {
        #[command(flatten)]
        source: Source,
        /// Generators of the subgroup, by element label.
        #[arg(long, value_delimiter = ',', required = true)]
        generators: Vec<String>,
        #[command(flatten)]
        out: BuildOutput,
    },
    /// Rescaled hypergroup of a fusion ring.
    Fusion {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        out: BuildOutput,
    },
    /// Two-element hypergroup `k1^2 = lambda k0 + (1 - lambda) k1`.
    TwoElement {
        #[arg(long)]
        lambda: f64,
        #[command(flatten)]
        out: BuildOutput,
    },
}

fn parse_seed(s: &str) -> std::result::Result<u64, String> {
    let parsed = match s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        Some(hex) => u64::from_str_radix(hex, 16),
        None => s.parse(),
    };
    parsed.map_err(|e| format!("invalid seed {s:?}: {e}"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn exit_code(err: &HyperError) -> i32 {
    match err {
        HyperError::Axiom(_) => EXIT_INVALID,
        HyperError::Numerical(_) => EXIT_NUMERICAL,
        _ => EXIT_USAGE,
    }
}

fn from_error(err: HyperError) -> CommandOutcome {
    CommandOutcome::fail(exit_code(&err), format!("error: {err}\n"))
}

/// Parses arguments (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                CommandOutcome::ok(text)
            } else {
                CommandOutcome::fail(code, text)
            }
        }
    }
}

pub fn execute(cli: &Cli) -> CommandOutcome {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return CommandOutcome::fail(EXIT_USAGE, format!("error: tolerance must be positive, got {}\n", cli.tol));
    }
    let ctx = Context {
        tol: cli.tol,
        seed: cli.seed,
        json: cli.json,
    };
    let result = match &cli.command {
        Command::Validate(source) => ctx.validate(source),
        Command::Build(build) => ctx.build(build),
        Command::Characters { source, dual } => ctx.characters(source, *dual),
        Command::Compose {
            builtin,
            groupoid,
            steps,
            chain,
        } => ctx.compose(builtin.as_deref(), groupoid.as_deref(), *steps, chain),
        Command::Indices { bound, nmax } => ctx.indices(*bound, *nmax),
    };
    result.unwrap_or_else(from_error)
}

struct Context {
    tol: f64,
    seed: u64,
    json: bool,
}

fn read_document(path: &Path, tol: f64) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HyperError::Parse(format!("cannot read {}: {e}", path.display())))?;
    crate::io::parse_document(&text, tol)
}

fn wrong_kind(expected: &str, doc: &Document) -> HyperError {
    HyperError::Mismatch(format!("expected {expected}, found a {} document", doc.kind()))
}

impl Context {
    fn source_label(source: &Source) -> String {
        match (&source.builtin, &source.path) {
            (Some(name), _) => name.clone(),
            (None, Some(path)) => path.display().to_string(),
            (None, None) => String::new(),
        }
    }

    fn load_table(&self, source: &Source) -> Result<HypergroupTable> {
        if let Some(name) = &source.builtin {
            return registry::builtin_table(name);
        }
        let path = source.path.as_deref().expect("clap requires a source");
        match read_document(path, self.tol)? {
            Document::Hypergroup(t) => Ok(t),
            Document::FusionRing(r) => rescale(&r, &pf_dimensions(&r)?),
            Document::Group(g) => Ok(group_hypergroup(&g)),
            other => Err(wrong_kind("a hypergroup, fusion ring or group", &other)),
        }
    }

    fn load_group(&self, source: &Source) -> Result<CayleyGroup> {
        if let Some(name) = &source.builtin {
            return registry::builtin_group(name);
        }
        match read_document(source.path.as_deref().expect("clap requires a source"), self.tol)? {
            Document::Group(g) => Ok(g),
            other => Err(wrong_kind("a group", &other)),
        }
    }

    fn load_ring(&self, source: &Source) -> Result<FusionRing> {
        if let Some(name) = &source.builtin {
            return registry::builtin_fusion_ring(name);
        }
        match read_document(source.path.as_deref().expect("clap requires a source"), self.tol)? {
            Document::FusionRing(r) => Ok(r),
            other => Err(wrong_kind("a fusion ring", &other)),
        }
    }

    fn real(&self, x: f64) -> String {
        let mut s = format!("{x:.10}");
        if (x - x.round()).abs() > self.tol {
            if let Some(q) = recognize(x, LITERAL_BOUND, self.tol) {
                let _ = write!(s, " ({q})");
            }
        }
        s
    }

    fn validate(&self, source: &Source) -> Result<CommandOutcome> {
        let report = match self.validation_report(source) {
            Ok(r) => r,
            Err(HyperError::Axiom(r)) => r,
            Err(e) => return Err(e),
        };
        let code = if report.passed() { EXIT_OK } else { EXIT_INVALID };
        let stdout = if self.json {
            Document::ValidationReport(report).to_canonical_string()
        } else {
            let mut out = format!("{}: ", Self::source_label(source));
            if report.passed() {
                out.push_str("all axioms hold\n");
            } else {
                let _ = writeln!(out, "{} violation(s)", report.violations.len());
            }
            for v in &report.violations {
                let _ = writeln!(out, "  violation: {v}");
            }
            for w in &report.warnings {
                let _ = writeln!(out, "  warning: {w}");
            }
            out
        };
        Ok(CommandOutcome {
            code,
            stdout,
            stderr: String::new(),
        })
    }

    fn validation_report(&self, source: &Source) -> Result<ValidationReport> {
        if let Some(name) = &source.builtin {
            if let Ok(t) = registry::builtin_table(name) {
                return Ok(t.validate(self.tol));
            }
            return registry::builtin_groupoid(name).map(|g| g.validate(self.tol));
        }
        let path = source.path.as_deref().expect("clap requires a source");
        Ok(match read_document(path, self.tol)? {
            Document::Hypergroup(t) => t.validate(self.tol),
            Document::FusionRing(r) => r.validate(),
            Document::Group(g) => g.validate(),
            Document::Hypergroupoid(g) => g.validate(self.tol),
            other => return Err(wrong_kind("a table, ring, group or hypergroupoid", &other)),
        })
    }

    fn build(&self, build: &Build) -> Result<CommandOutcome> {
        let mut notes = String::new();
        let (table, out) = match build {
            Build::Group { source, out } => (group_hypergroup(&self.load_group(source)?), out),
            Build::Classes { source, out } => (conjugacy_class_hypergroup(&self.load_group(source)?), out),
            Build::DoubleCosets {
                source,
                generators,
                out,
            } => {
                let g = self.load_group(source)?;
                let gens = generators
                    .iter()
                    .map(|label| {
                        g.index_of(label.trim())
                            .ok_or_else(|| HyperError::Mismatch(format!("group has no element {label:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let h = g.generated(&gens)?;
                (double_coset_hypergroup(&g, &h)?, out)
            }
            Build::Fusion { source, out } => {
                let ring = self.load_ring(source)?;
                let dims = pf_dimensions(&ring)?;
                let _ = writeln!(
                    notes,
                    "dimensions: {}",
                    dims.dims.iter().map(|&d| self.real(d)).collect::<Vec<_>>().join(", ")
                );
                (rescale(&ring, &dims)?, out)
            }
            Build::TwoElement { lambda, out } => {
                let table = two_element(*lambda)?;
                let _ = match fusion_realizable_two_element_tol(*lambda, REALIZABILITY_BOUND, self.tol) {
                    Some((n0, n1)) => writeln!(
                        notes,
                        "rescaled fusion algebra f1^2 = {n0} f0 + {n1} f1 (searched n <= {REALIZABILITY_BOUND})"
                    ),
                    None => writeln!(
                        notes,
                        "no fusion algebra f1^2 = f0 + n f1 with n <= {REALIZABILITY_BOUND} rescales to this table"
                    ),
                };
                (table, out)
            }
        };
        table.validate(self.tol).into_result()?;
        let weights = table.weights(self.tol)?;
        let haar = table.haar(self.tol)?;
        let mut summary = format!("{} elements: {}\n", table.size(), table.labels().join(", "));
        let _ = writeln!(
            summary,
            "weights: {}",
            weights.iter().map(|&w| self.real(w)).collect::<Vec<_>>().join(", ")
        );
        let _ = writeln!(
            summary,
            "haar: {}",
            haar.coeffs().iter().map(|&w| self.real(w)).collect::<Vec<_>>().join(", ")
        );
        summary.push_str(&notes);

        let document = Document::Hypergroup(table).to_canonical_string();
        let stdout = match &out.output {
            Some(path) => {
                std::fs::write(path, &document)
                    .map_err(|e| HyperError::Parse(format!("cannot write {}: {e}", path.display())))?;
                String::new()
            }
            None => document,
        };
        Ok(CommandOutcome {
            code: EXIT_OK,
            stdout,
            stderr: summary,
        })
    }

    fn characters(&self, source: &Source, want_dual: bool) -> Result<CommandOutcome> {
        let table = self.load_table(source)?;
        if !table.is_commutative(self.tol) {
            return Ok(CommandOutcome::fail(
                EXIT_INVALID,
                format!("{}: not commutative\n", Self::source_label(source)),
            ));
        }
        let ct = characters_seeded(&table, self.tol, self.seed)?;
        let report = orthogonality_from(&ct);
        let dual = if want_dual {
            match dual_from_characters(&ct, self.tol) {
                Ok(d) => DualOutcome::Hypergroup(d),
                Err(HyperError::DualNotHypergroup { triple, value }) => DualOutcome::Failure { triple, value },
                Err(e) => return Err(e),
            }
        } else {
            DualOutcome::NotComputed
        };
        let analysis = CharacterAnalysis {
            characters: ct,
            unitarity_defect: report.unitarity_defect,
            dual,
        };
        let stdout = if self.json {
            Document::CharacterAnalysis(analysis).to_canonical_string()
        } else {
            self.render_characters(&analysis)
        };
        Ok(CommandOutcome::ok(stdout))
    }

    fn complex(&self, z: crate::reprs::C64) -> String {
        if z.im.abs() <= self.tol {
            self.real(z.re)
        } else {
            format!("{:.10}{:+.10}i", z.re, z.im)
        }
    }

    fn render_characters(&self, a: &CharacterAnalysis) -> String {
        let ct: &CharacterTable = &a.characters;
        let mut out = String::new();
        for (m, row) in ct.chars.iter().enumerate() {
            let cells: Vec<String> = row
                .iter()
                .zip(&ct.labels)
                .map(|(&z, label)| format!("{label}: {}", self.complex(z)))
                .collect();
            let _ = writeln!(out, "chi{m}  {}", cells.join("  "));
        }
        let join = |xs: &[f64]| xs.iter().map(|&x| self.real(x)).collect::<Vec<_>>().join(", ");
        let _ = writeln!(out, "haar weights: {}", join(&ct.haar_weights));
        let _ = writeln!(out, "dual weights: {}", join(&ct.dual_weights));
        let _ = writeln!(out, "orthogonality defect: {:.3e}", a.unitarity_defect);
        match &a.dual {
            DualOutcome::NotComputed => {}
            DualOutcome::Failure { triple, value } => {
                let _ = writeln!(
                    out,
                    "dual is not a hypergroup: c[{}][{}][{}] = {value:.3e}",
                    triple.0, triple.1, triple.2
                );
            }
            DualOutcome::Hypergroup(d) => {
                out.push_str("dual hypergroup:\n");
                out.push_str(&self.render_products(d));
            }
        }
        out
    }

    fn render_products(&self, t: &HypergroupTable) -> String {
        let mut out = String::new();
        for i in 0..t.size() {
            for j in i..t.size() {
                let terms: Vec<String> = (0..t.size())
                    .filter(|&l| t.coeff(i, j, l).abs() > self.tol)
                    .map(|l| format!("{} {}", self.real(t.coeff(i, j, l)), t.label(l)))
                    .collect();
                let _ = writeln!(out, "  {} {} = {}", t.label(i), t.label(j), terms.join(" + "));
            }
        }
        out
    }

    fn load_groupoid(&self, builtin: Option<&str>, path: Option<&Path>) -> Result<Hypergroupoid> {
        match (builtin, path) {
            (Some(name), _) => registry::builtin_groupoid(name).or_else(|e| {
                registry::builtin_table(name)
                    .map(|t| Hypergroupoid::from_hypergroup(&t))
                    .map_err(|_| e)
            }),
            (None, Some(path)) => match read_document(path, self.tol)? {
                Document::Hypergroupoid(g) => Ok(g),
                Document::Hypergroup(t) => Ok(Hypergroupoid::from_hypergroup(&t)),
                other => Err(wrong_kind("a hypergroupoid or hypergroup", &other)),
            },
            (None, None) => Err(HyperError::Mismatch("compose needs --builtin or --groupoid".into())),
        }
    }

    fn compose(
        &self,
        builtin: Option<&str>,
        path: Option<&Path>,
        steps: bool,
        chain: &[String],
    ) -> Result<CommandOutcome> {
        let g = self.load_groupoid(builtin, path)?;
        let states = chain
            .iter()
            .map(|spec| g.state_for(spec))
            .collect::<Result<Vec<_>>>()?;
        let partials = g.juxtapose_steps(&states)?;
        let records: Vec<StateRecord> = partials.iter().map(|s| StateRecord::from_state(&g, s)).collect();
        let result = records.last().cloned().expect("chain is nonempty");
        let stdout = if self.json {
            let steps = if steps { records } else { Vec::new() };
            Document::BoundaryState(StateDocument { result, steps }).to_canonical_string()
        } else {
            let mut out = String::new();
            if steps {
                for (k, r) in records.iter().enumerate() {
                    let _ = writeln!(out, "step {}: {}", k + 1, self.render_state(r));
                }
            } else {
                let _ = writeln!(out, "{}", self.render_state(&result));
            }
            out
        };
        Ok(CommandOutcome::ok(stdout))
    }

    fn render_state(&self, r: &StateRecord) -> String {
        let terms: Vec<String> = r
            .arrows
            .iter()
            .zip(&r.coeffs)
            .filter(|(_, &c)| c.abs() > self.tol)
            .map(|(a, &c)| format!("{} {a}", self.real(c)))
            .collect();
        format!("{}<{}: {}", r.to, r.from, terms.join(" + "))
    }

    fn indices(&self, bound: f64, nmax: u32) -> Result<CommandOutcome> {
        let set = enumerate_admissible_tol(bound, nmax, self.tol)?;
        let stdout = if self.json {
            Document::AdmissibleIndices(set).to_canonical_string()
        } else {
            self.render_indices(&set)
        };
        Ok(CommandOutcome::ok(stdout))
    }

    fn render_indices(&self, set: &AdmissibleIndexSet) -> String {
        let mut out = format!(
            "admissible indices up to {}: 1 + sums of Jones indices 4cos^2(pi/n), 3 <= n <= {}\n\
             (every intermediate index is taken to range over the full Jones set)\n",
            set.bound, set.n_max
        );
        for v in &set.values {
            let witness = if v.witness.is_empty() {
                "1".to_string()
            } else {
                let terms: Vec<String> = v.witness.iter().map(|n| format!("4cos^2(pi/{n})")).collect();
                format!("1 + {}", terms.join(" + "))
            };
            let flag = if v.is_integer(self.tol) { " " } else { "*" };
            let _ = writeln!(out, "{flag} {}  = {witness}", self.real(v.value));
        }
        if let Some((lo, hi)) = set.continuum {
            let _ = writeln!(out, "  every value in [{lo}, {hi}] (continuum summands)");
        }
        let below_four: Vec<String> = set
            .non_integers(self.tol)
            .iter()
            .filter(|v| v.value < 4.0)
            .map(|v| self.real(v.value))
            .collect();
        let listed = if below_four.is_empty() {
            "none".to_string()
        } else {
            below_four.join(", ")
        };
        let _ = writeln!(out, "non-integer values below 4: {listed}");
        out
    }
}
