//! The `primal` command line.
//!
//! Machine lines start with an upper-case keyword (`SET`, `TOPOLOGY`,
//! `PROPERTY`, ...) and always print sets as bitstrings. Human-oriented
//! lines start with `#`; `--labels` only changes those.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use primal_core::topology::enumerate_topologies_opt_in;
use primal_core::verify::{replication_as_expected, Quantifier};
use primal_core::{
    base_family, cl_diamond, diamond, diamond_naive, enumerate_primals, enumerate_topologies,
    exhaustive_primal_scan, primal_topology, pushforward_primal, replicate_paper,
    search_counterexample_with, tau_star_membership, verify_all_with, verify_property_with,
    MatchStatus, PointMap, PrimalSpace, PropertyId, ScopeCaps, SubsetCode, Universe,
    VerificationReport, DOCUMENTED_MISMATCH,
};

use crate::parallel::Pool;
use crate::spacefile::{Renderer, SpaceError, SpaceFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest universe `enumerate primals` will list.
pub const PRIMAL_LIST_CAP: u8 = 8;

#[derive(Debug, Parser)]
#[command(
    name = "primal",
    version,
    about = "Primals, primal topological spaces and their diamond operator"
)]
pub struct Cli {
    /// Render sets as label lists in human-readable lines.
    #[arg(long, global = true)]
    pub labels: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate a space file.
    Validate { file: PathBuf },
    /// Print A^⋄.
    Diamond {
        file: PathBuf,
        #[arg(long)]
        set: String,
        /// Quantify over every open neighborhood instead of the minimal one.
        #[arg(long)]
        naive: bool,
    },
    /// Print cl^⋄(A) = A ∪ A^⋄.
    Clstar {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// Print the open sets of τ^⋄.
    Taustar { file: PathBuf },
    /// Print the base {T ∩ Q : T ∈ τ, Q ∉ P}.
    Base { file: PathBuf },
    /// Decide A ∈ τ^⋄ pointwise and print the witnesses.
    Member {
        file: PathBuf,
        #[arg(long)]
        set: String,
    },
    /// List all primals or all topologies on n points.
    Enumerate {
        kind: Enumerable,
        #[arg(long)]
        n: u8,
        /// Cross-check against an independent enumeration.
        #[arg(long)]
        oracle: bool,
        /// Permit topologies on five points.
        #[arg(long = "allow-n5")]
        allow_n5: bool,
    },
    /// Check catalog properties exhaustively up to a universe size.
    Verify {
        #[arg(
            long,
            conflicts_with = "property",
            required_unless_present = "property"
        )]
        all: bool,
        #[arg(long)]
        property: Option<String>,
        #[arg(long = "max-n")]
        max_n: u8,
    },
    /// Print the first failing instance of a property.
    Search {
        id: String,
        #[arg(long = "max-n")]
        max_n: u8,
    },
    /// Recompute the worked examples.
    ReplicatePaper,
    /// Push the file's primal forward along a map.
    Push {
        file: PathBuf,
        /// Comma-separated images of elements 0, 1, ...
        #[arg(long)]
        map: String,
        #[arg(long)]
        codomain: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Enumerable {
    Primals,
    Topologies,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = write!(err, "{}", text);
            } else {
                let _ = write!(out, "{}", text);
            }
            return code;
        }
    };
    let mut ctx = Context {
        out,
        err,
        labels: cli.labels,
    };
    match ctx.dispatch(cli.command) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(ctx.err, "error: {}", msg);
            EXIT_USAGE
        }
        Err(Failure::Violation(msg)) => {
            let _ = writeln!(ctx.out, "INVALID {}", msg);
            EXIT_VIOLATION
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(ctx.err, "error: {}", e);
            EXIT_USAGE
        }
    }
}

enum Failure {
    Usage(String),
    Violation(String),
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

type Outcome = Result<i32, Failure>;

struct Context<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    labels: bool,
}

impl Context<'_> {
    fn dispatch(&mut self, command: Command) -> Outcome {
        match command {
            Command::Validate { file } => self.validate(&file),
            Command::Diamond { file, set, naive } => {
                let (f, s) = self.load(&file)?;
                let a = parse_set(&f, &set)?;
                let d = if naive {
                    diamond_naive(a, &s)
                } else {
                    diamond(a, &s)
                };
                self.set_line("SET", &f.renderer(self.labels), d)?;
                Ok(EXIT_OK)
            }
            Command::Clstar { file, set } => {
                let (f, s) = self.load(&file)?;
                let a = parse_set(&f, &set)?;
                self.set_line("SET", &f.renderer(self.labels), cl_diamond(a, &s))?;
                Ok(EXIT_OK)
            }
            Command::Taustar { file } => {
                let (f, s) = self.load(&file)?;
                let star = primal_topology(&s);
                writeln!(self.out, "TOPOLOGY {}", star.opens().len())?;
                let r = f.renderer(self.labels);
                for a in star.opens().iter() {
                    self.set_line("open", &r, a)?;
                }
                Ok(EXIT_OK)
            }
            Command::Base { file } => {
                let (f, s) = self.load(&file)?;
                let base = base_family(&s);
                writeln!(self.out, "BASE {}", base.len())?;
                let r = f.renderer(self.labels);
                for a in base.iter() {
                    self.set_line("SET", &r, a)?;
                }
                Ok(EXIT_OK)
            }
            Command::Member { file, set } => self.member(&file, &set),
            Command::Enumerate {
                kind,
                n,
                oracle,
                allow_n5,
            } => self.enumerate(kind, n, oracle, allow_n5),
            Command::Verify {
                all,
                property,
                max_n,
            } => self.verify(all, property.as_deref(), max_n),
            Command::Search { id, max_n } => self.search(&id, max_n),
            Command::ReplicatePaper => self.replicate(),
            Command::Push {
                file,
                map,
                codomain,
            } => self.push(&file, &map, codomain),
        }
    }

    fn read(&mut self, path: &PathBuf) -> Result<SpaceFile, Failure> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Failure::Usage(format!("cannot read {}: {}", path.display(), e)))?;
        let file = SpaceFile::parse(&text)
            .map_err(|e| Failure::Usage(format!("{}: {}", path.display(), e)))?;
        for w in &file.warnings {
            writeln!(self.err, "warning: {}", w)?;
        }
        Ok(file)
    }

    fn load(&mut self, path: &PathBuf) -> Result<(SpaceFile, PrimalSpace), Failure> {
        let file = self.read(path)?;
        let space = file.space().map_err(|e| match e {
            SpaceError::Validation(d) => Failure::Violation(violation_text(&d)),
            other => Failure::Usage(other.to_string()),
        })?;
        Ok((file, space))
    }

    fn set_line(&mut self, prefix: &str, r: &Renderer, a: SubsetCode) -> std::io::Result<()> {
        writeln!(self.out, "{} {}", prefix, r.bits(a))?;
        if r.uses_labels() {
            writeln!(self.out, "# {}", r.human(a))?;
        }
        Ok(())
    }

    fn validate(&mut self, path: &PathBuf) -> Outcome {
        let (f, s) = self.load(path)?;
        writeln!(
            self.out,
            "VALID universe {} opens {} primal {}",
            f.universe.size(),
            s.topology().opens().len(),
            s.primal().family().len()
        )?;
        if self.labels {
            let r = f.renderer(true);
            let opens: Vec<String> = s.topology().opens().iter().map(|a| r.human(a)).collect();
            let members: Vec<String> = s.primal().family().iter().map(|a| r.human(a)).collect();
            writeln!(self.out, "# opens {}", opens.join(" "))?;
            writeln!(self.out, "# primal {}", members.join(" "))?;
        }
        Ok(EXIT_OK)
    }

    fn member(&mut self, path: &PathBuf, set: &str) -> Outcome {
        let (f, s) = self.load(path)?;
        let a = parse_set(&f, set)?;
        let m = tau_star_membership(a, &s);
        let r = f.renderer(self.labels);
        writeln!(self.out, "MEMBER {}", if m.member { "yes" } else { "no" })?;
        for (x, open) in &m.witnesses {
            writeln!(self.out, "POINT {} OPEN {}", x, r.bits(*open))?;
            if self.labels {
                writeln!(
                    self.out,
                    "# {} via {}",
                    r.human(SubsetCode(1 << x)),
                    r.human(*open)
                )?;
            }
        }
        if let Some(x) = m.blocking_point {
            writeln!(self.out, "BLOCKED {}", x)?;
        }
        Ok(EXIT_OK)
    }

    fn enumerate(&mut self, kind: Enumerable, n: u8, oracle: bool, allow_n5: bool) -> Outcome {
        let u = Universe::new(n as usize).map_err(|e| Failure::Usage(e.to_string()))?;
        if n == 0 {
            return Err(Failure::Usage("--n must be at least 1".into()));
        }
        match kind {
            Enumerable::Primals => {
                if n > PRIMAL_LIST_CAP {
                    return Err(Failure::Usage(format!(
                        "primal listing is capped at n={}",
                        PRIMAL_LIST_CAP
                    )));
                }
                let primals = enumerate_primals(u);
                for p in &primals {
                    writeln!(self.out, "PRIMAL {}", p.family())?;
                }
                writeln!(self.out, "COUNT {}", primals.len())?;
                if oracle {
                    let scanned =
                        exhaustive_primal_scan(u).map_err(|e| Failure::Usage(e.to_string()))?;
                    return self.oracle_line(scanned.len(), scanned == primals);
                }
            }
            Enumerable::Topologies => {
                let topologies = if n == 5 {
                    if !allow_n5 {
                        return Err(Failure::Usage("n=5 needs --allow-n5".into()));
                    }
                    if oracle {
                        return Err(Failure::Usage("no independent enumeration at n=5".into()));
                    }
                    enumerate_topologies_opt_in(u)
                } else {
                    enumerate_topologies(u)
                }
                .map_err(|e| Failure::Usage(e.to_string()))?;
                for t in &topologies {
                    writeln!(self.out, "TOPOLOGY {}", t.opens())?;
                }
                writeln!(self.out, "COUNT {}", topologies.len())?;
                if oracle {
                    let other = enumerate_topologies_opt_in(u)
                        .map_err(|e| Failure::Usage(e.to_string()))?;
                    return self.oracle_line(other.len(), other == topologies);
                }
            }
        }
        Ok(EXIT_OK)
    }

    fn oracle_line(&mut self, count: usize, agree: bool) -> Outcome {
        writeln!(
            self.out,
            "ORACLE COUNT {} {}",
            count,
            if agree { "AGREE" } else { "DISAGREE" }
        )?;
        Ok(if agree { EXIT_OK } else { EXIT_VIOLATION })
    }

    fn verify(&mut self, all: bool, property: Option<&str>, max_n: u8) -> Outcome {
        let caps = ScopeCaps::default();
        let pool = Pool::from_env();
        let reports = if all {
            verify_all_with(max_n, &caps, &pool)
        } else {
            let id = parse_property(property.unwrap_or_default())?;
            verify_property_with(id, max_n, &caps, &pool).map(|r| vec![r])
        }
        .map_err(|e| Failure::Usage(e.to_string()))?;
        let expected = reports.iter().filter(|r| r.as_expected()).count();
        for r in &reports {
            self.report(r)?;
        }
        writeln!(
            self.out,
            "SUMMARY PROPERTIES {} AS_EXPECTED {}",
            reports.len(),
            expected
        )?;
        Ok(if expected == reports.len() {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        })
    }

    fn report(&mut self, r: &VerificationReport) -> std::io::Result<()> {
        writeln!(self.out, "{}", r)?;
        if r.failure_count > r.failures.len() as u64 {
            writeln!(
                self.out,
                "# {} failures, first {} shown",
                r.failure_count,
                r.failures.len()
            )?;
        }
        Ok(())
    }

    fn search(&mut self, id: &str, max_n: u8) -> Outcome {
        let id = parse_property(id)?;
        let found = search_counterexample_with(id, max_n, &ScopeCaps::default(), &Pool::from_env())
            .map_err(|e| Failure::Usage(e.to_string()))?;
        match &found {
            Some(w) => writeln!(self.out, "WITNESS {}", w)?,
            None => writeln!(self.out, "NONE")?,
        }
        let as_expected = match id.quantifier() {
            Quantifier::Universal => found.is_none(),
            Quantifier::Existential => found.is_some(),
        };
        Ok(if as_expected { EXIT_OK } else { EXIT_VIOLATION })
    }

    fn replicate(&mut self) -> Outcome {
        let rows = replicate_paper();
        for row in &rows {
            writeln!(self.out, "{}", row)?;
        }
        let mismatches = rows
            .iter()
            .filter(|r| r.status == MatchStatus::Mismatch)
            .count();
        writeln!(
            self.out,
            "SUMMARY EXAMPLES {} MISMATCHES {} DOCUMENTED {}",
            rows.len(),
            mismatches,
            DOCUMENTED_MISMATCH
        )?;
        Ok(if replication_as_expected(&rows) {
            EXIT_OK
        } else {
            EXIT_VIOLATION
        })
    }

    fn push(&mut self, path: &PathBuf, map: &str, codomain: usize) -> Outcome {
        let (f, s) = self.load(path)?;
        let cod = Universe::new(codomain).map_err(|e| Failure::Usage(e.to_string()))?;
        if codomain == 0 {
            return Err(Failure::Usage("--codomain must be at least 1".into()));
        }
        let table: Vec<usize> = map
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<_, _>>()
            .map_err(|_| {
                Failure::Usage(format!(
                    "--map expects comma-separated indices, got `{}`",
                    map
                ))
            })?;
        let m =
            PointMap::new(f.universe, cod, &table).map_err(|e| Failure::Usage(e.to_string()))?;
        let image = pushforward_primal(&m, s.primal()).expect("primal lives on the map's domain");
        writeln!(
            self.out,
            "SURJECTIVE {}",
            if m.is_surjective() { "yes" } else { "no" }
        )?;
        writeln!(self.out, "FAMILY {}", image.family)?;
        match &image.validation {
            Ok(()) => {
                writeln!(self.out, "PRIMAL yes")?;
                Ok(EXIT_OK)
            }
            Err(v) => {
                let sets: Vec<String> = v.witnesses.iter().map(|&a| cod.format(a)).collect();
                writeln!(self.out, "PRIMAL no {} [{}]", v.rule, sets.join(" "))?;
                Ok(EXIT_VIOLATION)
            }
        }
    }
}

fn violation_text(d: &crate::spacefile::Diagnostic) -> String {
    let (u, w) = d.witnesses();
    let sets: Vec<String> = w.iter().map(|&a| u.format(a)).collect();
    format!("{} [{}]", d.rule(), sets.join(" "))
}

fn parse_set(f: &SpaceFile, text: &str) -> Result<SubsetCode, Failure> {
    f.universe
        .parse(text)
        .map_err(|e| Failure::Usage(format!("--set {}: {}", text, e)))
}

fn parse_property(id: &str) -> Result<PropertyId, Failure> {
    id.parse().map_err(|_| {
        let known: Vec<&str> = PropertyId::ALL.iter().map(|p| p.as_str()).collect();
        Failure::Usage(format!(
            "unknown property `{}`; known: {}",
            id,
            known.join(" ")
        ))
    })
}
