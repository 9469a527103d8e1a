//! Line-oriented space files.
//!
//! ```text
//! # Sierpinski space with a primal
//! universe 2
//! labels a b
//! open 00
//! open 10
//! open 11
//! primal 00
//! primal 10
//! ```
//!
//! `universe` must come first. `labels` is optional. Omitting every `primal`
//! line gives the empty primal. Repeated `open`/`primal` lines are dropped
//! with a warning.

use std::fmt;

use primal_core::setkit::BitstringError;
use primal_core::structures::StructureViolation;
use primal_core::{
    FiniteTopology, Primal, PrimalSpace, SetFamily, SubsetCode, TopologyViolation, Universe,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceFile {
    pub universe: Universe,
    pub labels: Option<Vec<String>>,
    pub opens: Vec<SubsetCode>,
    pub primal: Vec<SubsetCode>,
    pub warnings: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Diagnostic {
    Topology(Universe, TopologyViolation),
    Primal(Universe, StructureViolation),
}

impl Diagnostic {
    /// Rule name as printed by `validate`.
    pub fn rule(&self) -> &'static str {
        match self {
            Diagnostic::Topology(_, v) => v.rule.as_str(),
            Diagnostic::Primal(_, v) => v.rule.as_str(),
        }
    }

    pub fn witnesses(&self) -> (Universe, &[SubsetCode]) {
        match self {
            Diagnostic::Topology(u, v) => (*u, &v.witnesses),
            Diagnostic::Primal(u, v) => (*u, &v.witnesses),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaceError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{}", render_diagnostic(.0))]
    Validation(Diagnostic),
}

fn render_diagnostic(d: &Diagnostic) -> String {
    let kind = match d {
        Diagnostic::Topology(..) => "topology",
        Diagnostic::Primal(..) => "primal",
    };
    let (u, w) = d.witnesses();
    let sets: Vec<String> = w.iter().map(|&a| u.format(a)).collect();
    format!("{} violation {} [{}]", kind, d.rule(), sets.join(" "))
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> SpaceError {
    SpaceError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into `(column, token)` pairs, columns 1-based.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(byte, tok)| (line[..byte].chars().count() + 1, tok))
        .collect()
}

impl SpaceFile {
    pub fn parse(text: &str) -> Result<Self, SpaceError> {
        let mut file: Option<SpaceFile> = None;
        let mut last_line = 0;
        for (index, raw) in text.lines().enumerate() {
            let lineno = index + 1;
            last_line = lineno;
            let content = raw.split('#').next().unwrap_or("");
            let toks = tokens(content);
            let Some(&(kcol, keyword)) = toks.first() else {
                continue;
            };
            let args = &toks[1..];
            let Some(f) = file.as_mut() else {
                if keyword != "universe" {
                    return Err(syntax(
                        lineno,
                        kcol,
                        format!("expected `universe`, found `{}`", keyword),
                    ));
                }
                let [(col, n)] = args else {
                    return Err(syntax(lineno, kcol, "`universe` takes exactly one size"));
                };
                let size: usize = n
                    .parse()
                    .map_err(|_| syntax(lineno, *col, format!("`{}` is not a size", n)))?;
                let universe =
                    Universe::new(size).map_err(|e| syntax(lineno, *col, e.to_string()))?;
                file = Some(SpaceFile {
                    universe,
                    labels: None,
                    opens: Vec::new(),
                    primal: Vec::new(),
                    warnings: Vec::new(),
                });
                continue;
            };
            match keyword {
                "universe" => return Err(syntax(lineno, kcol, "`universe` given twice")),
                "labels" => {
                    if f.labels.is_some() {
                        return Err(syntax(lineno, kcol, "`labels` given twice"));
                    }
                    let n = f.universe.size() as usize;
                    if args.len() != n {
                        let col = args.get(n).map_or(kcol, |a| a.0);
                        return Err(syntax(
                            lineno,
                            col,
                            format!("expected {} labels, found {}", n, args.len()),
                        ));
                    }
                    let names: Vec<String> = args.iter().map(|(_, t)| t.to_string()).collect();
                    for (i, (col, name)) in args.iter().enumerate() {
                        if names[..i].iter().any(|prev| prev == name) {
                            return Err(syntax(
                                lineno,
                                *col,
                                format!("duplicate label `{}`", name),
                            ));
                        }
                    }
                    f.labels = Some(names);
                }
                "open" | "primal" => {
                    let [(col, bits)] = args else {
                        return Err(syntax(
                            lineno,
                            kcol,
                            format!("`{}` takes exactly one bitstring", keyword),
                        ));
                    };
                    let code = f.universe.parse(bits).map_err(|e| match e {
                        BitstringError::WrongLength { expected, got } => syntax(
                            lineno,
                            *col,
                            format!(
                                "bitstring has length {}, universe has {} elements",
                                got, expected
                            ),
                        ),
                        BitstringError::BadCharacter { column, found } => syntax(
                            lineno,
                            col + column,
                            format!("unexpected character `{}`", found),
                        ),
                    })?;
                    let list = if keyword == "open" {
                        &mut f.opens
                    } else {
                        &mut f.primal
                    };
                    if list.contains(&code) {
                        f.warnings.push(format!(
                            "line {}: duplicate {} {} ignored",
                            lineno, keyword, bits
                        ));
                    } else {
                        list.push(code);
                    }
                }
                other => return Err(syntax(lineno, kcol, format!("unknown keyword `{}`", other))),
            }
        }
        file.ok_or_else(|| syntax(last_line.max(1), 1, "missing `universe` line"))
    }

    pub fn topology(&self) -> Result<FiniteTopology, SpaceError> {
        let opens = SetFamily::from_codes(self.universe, self.opens.iter().copied())
            .expect("codes were parsed against this universe");
        FiniteTopology::new(opens)
            .map_err(|v| SpaceError::Validation(Diagnostic::Topology(self.universe, v)))
    }

    pub fn primal_family(&self) -> SetFamily {
        SetFamily::from_codes(self.universe, self.primal.iter().copied())
            .expect("codes were parsed against this universe")
    }

    /// Validates the topology first, then the primal.
    pub fn space(&self) -> Result<PrimalSpace, SpaceError> {
        let topology = self.topology()?;
        let primal = Primal::new(self.primal_family())
            .map_err(|v| SpaceError::Validation(Diagnostic::Primal(self.universe, v)))?;
        Ok(PrimalSpace::new(topology, primal).expect("both built on the file's universe"))
    }

    pub fn renderer(&self, use_labels: bool) -> Renderer {
        Renderer::new(
            self.universe,
            use_labels.then(|| {
                self.labels
                    .clone()
                    .unwrap_or_else(|| default_labels(self.universe))
            }),
        )
    }
}

/// Parses and validates in one step.
pub fn parse_space(text: &str) -> Result<(SpaceFile, PrimalSpace), SpaceError> {
    let file = SpaceFile::parse(text)?;
    let space = file.space()?;
    Ok((file, space))
}

/// Writes a space back in file syntax, members in ascending code order.
pub fn write_space(space: &PrimalSpace, labels: Option<&[String]>) -> String {
    let u = space.universe();
    let mut out = format!("universe {}\n", u.size());
    if let Some(l) = labels {
        out.push_str(&format!("labels {}\n", l.join(" ")));
    }
    for a in space.topology().opens().iter() {
        out.push_str(&format!("open {}\n", u.display(a)));
    }
    for a in space.primal().family().iter() {
        out.push_str(&format!("primal {}\n", u.display(a)));
    }
    out
}

/// `a b c ...` for small universes, `e0 e1 ...` beyond 26 points.
pub fn default_labels(u: Universe) -> Vec<String> {
    (0..u.size())
        .map(|j| {
            if u.size() <= 26 {
                char::from(b'a' + j).to_string()
            } else {
                format!("e{}", j)
            }
        })
        .collect()
}

/// Renders subsets as bitstrings or as label lists.
#[derive(Debug, Clone)]
pub struct Renderer {
    universe: Universe,
    labels: Option<Vec<String>>,
}

impl Renderer {
    pub fn new(universe: Universe, labels: Option<Vec<String>>) -> Self {
        Renderer { universe, labels }
    }

    pub fn bits(&self, a: SubsetCode) -> String {
        self.universe.format(a)
    }

    /// The human form: a label list when labels are on, else the bitstring.
    pub fn human(&self, a: SubsetCode) -> String {
        match &self.labels {
            None => self.bits(a),
            Some(l) => format!(
                "{{{}}}",
                a.elements()
                    .map(|j| l[j].as_str())
                    .collect::<Vec<_>>()
                    .join(",")
            ),
        }
    }

    pub fn uses_labels(&self) -> bool {
        self.labels.is_some()
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_diagnostic(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use primal_core::structures::Rule;
    use primal_core::topology::TopologyRule;

    const SIERPINSKI: &str = "universe 2\nopen 00\nopen 10\nopen 11\nprimal 00\nprimal 10\n";

    #[test]
    fn parses_two_point_space() {
        let (file, space) = parse_space(SIERPINSKI).unwrap();
        assert_eq!(file.universe.size(), 2);
        assert_eq!(space.topology().opens().len(), 3);
        assert_eq!(space.primal().family().len(), 2);
        assert_eq!(write_space(&space, None), SIERPINSKI);
    }

    #[test]
    fn missing_full_set() {
        let err = parse_space("universe 2\nopen 00\nopen 10\n").unwrap_err();
        match err {
            SpaceError::Validation(Diagnostic::Topology(_, v)) => {
                assert_eq!(v.rule, TopologyRule::MissingFullSet)
            }
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn bad_primal() {
        let err = parse_space("universe 2\nopen 00\nopen 11\nprimal 11\n").unwrap_err();
        match err {
            SpaceError::Validation(Diagnostic::Primal(_, v)) => assert_eq!(v.rule, Rule::ContainsX),
            other => panic!("{:?}", other),
        }
    }

    #[test]
    fn syntax_positions() {
        assert_eq!(
            SpaceFile::parse("universe 2\n\nopen 101\n").unwrap_err(),
            syntax(3, 6, "bitstring has length 3, universe has 2 elements")
        );
        assert!(matches!(
            SpaceFile::parse("universe 3\n  open 1x1").unwrap_err(),
            SpaceError::Syntax {
                line: 2,
                column: 9,
                ..
            }
        ));
        assert!(matches!(
            SpaceFile::parse("open 00").unwrap_err(),
            SpaceError::Syntax {
                line: 1,
                column: 1,
                ..
            }
        ));
        assert!(matches!(
            SpaceFile::parse("# only\n").unwrap_err(),
            SpaceError::Syntax { line: 1, .. }
        ));
        assert!(matches!(
            SpaceFile::parse("universe 2\nclosed 00").unwrap_err(),
            SpaceError::Syntax {
                line: 2,
                column: 1,
                ..
            }
        ));
        assert!(matches!(
            SpaceFile::parse("universe 2\nlabels a").unwrap_err(),
            SpaceError::Syntax { line: 2, .. }
        ));
    }

    #[test]
    fn duplicates_warn() {
        let f = SpaceFile::parse("universe 1\nopen 0\nopen 1 # again\nopen 1\n").unwrap();
        assert_eq!(f.opens.len(), 2);
        assert_eq!(
            f.warnings,
            vec!["line 4: duplicate open 1 ignored".to_string()]
        );
    }

    #[test]
    fn labels_render() {
        let f = SpaceFile::parse("universe 3\nlabels x y z\nopen 000\nopen 111").unwrap();
        let r = f.renderer(true);
        assert_eq!(r.human(SubsetCode(0b101)), "{x,z}");
        assert_eq!(r.bits(SubsetCode(0b101)), "101");
        assert_eq!(f.renderer(false).human(SubsetCode(0b101)), "101");
        let g = SpaceFile::parse("universe 2\nopen 00\nopen 11").unwrap();
        assert_eq!(g.renderer(true).human(SubsetCode(0b10)), "{b}");
    }
}
