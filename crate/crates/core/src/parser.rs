//! Line-oriented parser for scenario files.
//!
//! A scenario file lists project headers, actors, and use cases with
//! numbered scenario steps:
//!
//! ```text
//! project: ATM
//! complexity-level: 3
//! productivity: domain=3 motivation=4 language=3 oo=2 analytical=3
//! legacy-adjustment: 1.0
//!
//! actor Customer average
//!
//! usecase Withdraw Cash base
//!   main:
//!     1. Customer inserts card
//!     2. System validates card
//!   extensions:
//!     2a. Card is rejected
//! ```
//!
//! Only step counts matter for sizing, so the parser counts step lines per
//! section rather than storing their text. Parsing is tolerant: unknown
//! keys and stray lines become warnings, while structural problems (steps
//! outside a use case, invalid kinds, values out of range, duplicate names)
//! become errors. All diagnostics carry 1-based line numbers. The parser
//! never panics, whatever the input.

use std::fmt;

use crate::adjustment::{ProductivityRatings, Rating};
use crate::model::{
    Actor, ActorKind, ComplexityLevel, ProjectSpec, UseCase, UseCaseKind, LEGACY_ADJUSTMENT_MAX,
    LEGACY_ADJUSTMENT_MIN,
};

/// Weight of a diagnostic: warnings allow parsing to succeed, errors fail it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Warning,
    Error,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Warning => "warning",
            Severity::Error => "error",
        }
    }
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// A parser message tied to a 1-based line of the input.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseDiagnostic {
    pub line: usize,
    pub severity: Severity,
    pub message: String,
}

impl fmt::Display for ParseDiagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}: {}", self.line, self.severity, self.message)
    }
}

/// Successful parse: the spec plus any warnings raised along the way.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseOutput {
    pub spec: ProjectSpec,
    pub warnings: Vec<ParseDiagnostic>,
}

/// Failed parse: every diagnostic collected, at least one of them an error.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseFailure {
    pub diagnostics: Vec<ParseDiagnostic>,
}

impl ParseFailure {
    pub fn error_count(&self) -> usize {
        self.diagnostics
            .iter()
            .filter(|d| d.severity == Severity::Error)
            .count()
    }
}

impl fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "scenario file has {} parse error(s)", self.error_count())
    }
}

impl std::error::Error for ParseFailure {}

/// Section of a use case currently receiving step lines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Section {
    None,
    Main,
    Extensions,
}

/// A use case being accumulated, before validation.
struct PendingUseCase {
    name: String,
    kind: UseCaseKind,
    main_steps: u32,
    extension_steps: u32,
    section: Section,
    saw_main: bool,
    saw_extensions: bool,
    warned_unsectioned: bool,
    discard: bool,
}

struct Parser {
    diagnostics: Vec<ParseDiagnostic>,
    project_name: Option<String>,
    complexity_level: Option<ComplexityLevel>,
    ratings: Option<ProductivityRatings>,
    legacy_adjustment: Option<f64>,
    actors: Vec<Actor>,
    use_cases: Vec<UseCase>,
    current: Option<PendingUseCase>,
}

impl Parser {
    fn new() -> Self {
        Parser {
            diagnostics: Vec::new(),
            project_name: None,
            complexity_level: None,
            ratings: None,
            legacy_adjustment: None,
            actors: Vec::new(),
            use_cases: Vec::new(),
            current: None,
        }
    }

    fn warn(&mut self, line: usize, message: impl Into<String>) {
        self.diagnostics.push(ParseDiagnostic {
            line,
            severity: Severity::Warning,
            message: message.into(),
        });
    }

    fn error(&mut self, line: usize, message: impl Into<String>) {
        self.diagnostics.push(ParseDiagnostic {
            line,
            severity: Severity::Error,
            message: message.into(),
        });
    }

    /// Closes the use case under construction, if any.
    fn finish_use_case(&mut self) {
        if let Some(pending) = self.current.take() {
            if pending.discard {
                return;
            }
            match UseCase::new(
                pending.name,
                pending.kind,
                pending.main_steps,
                pending.extension_steps,
            ) {
                Ok(uc) => self.use_cases.push(uc),
                // Name was validated when the header line was read.
                Err(_) => {}
            }
        }
    }

    fn handle_line(&mut self, line_no: usize, raw: &str) {
        // Tolerate CRLF input.
        let raw = raw.strip_suffix('\r').unwrap_or(raw);
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            return;
        }
        if is_step_line(trimmed) {
            self.handle_step(line_no);
            return;
        }
        match trimmed {
            "main:" => return self.handle_section(line_no, Section::Main),
            "extensions:" => return self.handle_section(line_no, Section::Extensions),
            _ => {}
        }
        if let Some(rest) = trimmed.strip_prefix("project:") {
            self.finish_use_case();
            if self.project_name.is_some() {
                self.warn(line_no, "duplicate `project:` header; keeping the first");
            } else {
                self.project_name = Some(rest.trim().to_string());
            }
        } else if let Some(rest) = trimmed.strip_prefix("complexity-level:") {
            self.finish_use_case();
            self.handle_complexity_level(line_no, rest.trim());
        } else if let Some(rest) = trimmed.strip_prefix("productivity:") {
            self.finish_use_case();
            self.handle_productivity(line_no, rest.trim());
        } else if let Some(rest) = trimmed.strip_prefix("legacy-adjustment:") {
            self.finish_use_case();
            self.handle_adjustment(line_no, rest.trim());
        } else if let Some(rest) = trimmed.strip_prefix("actor ") {
            self.finish_use_case();
            self.handle_actor(line_no, rest.trim());
        } else if let Some(rest) = trimmed.strip_prefix("usecase ") {
            self.finish_use_case();
            self.handle_usecase(line_no, rest.trim());
        } else if let Some((key, _)) = trimmed.split_once(':') {
            if !key.trim().contains(char::is_whitespace) {
                self.warn(line_no, format!("unknown key `{}` ignored", key.trim()));
            } else {
                self.warn(line_no, "unrecognized line ignored");
            }
        } else {
            self.warn(line_no, "unrecognized line ignored");
        }
    }

    fn handle_step(&mut self, line_no: usize) {
        let Some(current) = self.current.as_mut() else {
            self.error(line_no, "step outside a use case");
            return;
        };
        match current.section {
            Section::Main => current.main_steps += 1,
            Section::Extensions => current.extension_steps += 1,
            Section::None => {
                current.main_steps += 1;
                if !current.warned_unsectioned {
                    current.warned_unsectioned = true;
                    self.warn(
                        line_no,
                        "step before `main:`; counted toward the main scenario",
                    );
                }
            }
        }
    }

    fn handle_section(&mut self, line_no: usize, section: Section) {
        let label = if section == Section::Main {
            "main:"
        } else {
            "extensions:"
        };
        let Some(current) = self.current.as_mut() else {
            self.error(line_no, format!("`{label}` section outside a use case"));
            return;
        };
        let seen = match section {
            Section::Main => {
                let seen = current.saw_main;
                current.saw_main = true;
                seen
            }
            _ => {
                let seen = current.saw_extensions;
                current.saw_extensions = true;
                seen
            }
        };
        current.section = section;
        if seen {
            self.warn(line_no, format!("duplicate `{label}` section"));
        }
    }

    fn handle_complexity_level(&mut self, line_no: usize, text: &str) {
        let parsed = text.parse::<u8>().ok().and_then(|v| ComplexityLevel::new(v).ok());
        match parsed {
            Some(level) => {
                if self.complexity_level.is_some() {
                    self.warn(
                        line_no,
                        "duplicate `complexity-level:` header; keeping the first",
                    );
                } else {
                    self.complexity_level = Some(level);
                }
            }
            None => self.error(
                line_no,
                format!("complexity level must be an integer in 1..=5, got `{text}`"),
            ),
        }
    }

    fn handle_productivity(&mut self, line_no: usize, text: &str) {
        if self.ratings.is_some() {
            self.warn(line_no, "duplicate `productivity:` header; keeping the first");
            return;
        }
        let mut ratings = ProductivityRatings::default();
        for token in text.split_whitespace() {
            let Some((key, value)) = token.split_once('=') else {
                self.warn(line_no, format!("malformed productivity token `{token}` ignored"));
                continue;
            };
            let rating = match value.parse::<u8>().ok().and_then(|v| Rating::new(v).ok()) {
                Some(r) => r,
                None => {
                    self.error(
                        line_no,
                        format!("productivity rating for `{key}` must be in 1..=5, got `{value}`"),
                    );
                    continue;
                }
            };
            match key {
                "domain" => ratings.domain_experience = rating,
                "motivation" => ratings.motivation = rating,
                "language" => ratings.language_experience = rating,
                "oo" => ratings.oo_experience = rating,
                "analytical" => ratings.analytical_skills = rating,
                _ => self.warn(line_no, format!("unknown productivity factor `{key}` ignored")),
            }
        }
        self.ratings = Some(ratings);
    }

    fn handle_adjustment(&mut self, line_no: usize, text: &str) {
        match text.parse::<f64>() {
            Ok(value)
                if (LEGACY_ADJUSTMENT_MIN..=LEGACY_ADJUSTMENT_MAX).contains(&value) =>
            {
                if self.legacy_adjustment.is_some() {
                    self.warn(
                        line_no,
                        "duplicate `legacy-adjustment:` header; keeping the first",
                    );
                } else {
                    self.legacy_adjustment = Some(value);
                }
            }
            Ok(value) => self.error(
                line_no,
                format!("legacy adjustment must lie in [0.7, 1.3], got {value}"),
            ),
            Err(_) => self.error(
                line_no,
                format!("legacy adjustment must be a number, got `{text}`"),
            ),
        }
    }

    fn handle_actor(&mut self, line_no: usize, rest: &str) {
        let Some((name, kind)) = split_name_and_kind(rest) else {
            self.error(line_no, "actor line needs a name and a kind");
            return;
        };
        let Some(kind) = ActorKind::parse(&kind.to_ascii_lowercase()) else {
            self.error(
                line_no,
                format!("invalid actor kind `{kind}` (expected simple, average, or complex)"),
            );
            return;
        };
        if self.actors.iter().any(|a| a.name() == name) {
            self.error(line_no, format!("duplicate actor name `{name}`"));
            return;
        }
        match Actor::new(name, kind) {
            Ok(actor) => self.actors.push(actor),
            Err(err) => self.error(line_no, err.to_string()),
        }
    }

    fn handle_usecase(&mut self, line_no: usize, rest: &str) {
        let Some((name, kind)) = split_name_and_kind(rest) else {
            self.error(line_no, "usecase line needs a name and a kind");
            return;
        };
        let Some(kind) = UseCaseKind::parse(&kind.to_ascii_lowercase()) else {
            self.error(
                line_no,
                format!("invalid use case kind `{kind}` (expected base, include, or extend)"),
            );
            return;
        };
        let discard = if self.use_cases.iter().any(|uc| uc.name() == name) {
            self.error(line_no, format!("duplicate use case name `{name}`"));
            true
        } else {
            false
        };
        self.current = Some(PendingUseCase {
            name: name.to_string(),
            kind,
            main_steps: 0,
            extension_steps: 0,
            section: Section::None,
            saw_main: false,
            saw_extensions: false,
            warned_unsectioned: false,
            discard,
        });
    }

    fn finish(mut self) -> Result<ParseOutput, ParseFailure> {
        self.finish_use_case();
        if self.project_name.is_none() {
            self.error(1, "missing `project:` header");
        }
        let has_errors = self.diagnostics.iter().any(|d| d.severity == Severity::Error);
        if has_errors {
            self.diagnostics.sort_by_key(|d| d.line);
            return Err(ParseFailure {
                diagnostics: self.diagnostics,
            });
        }
        let spec = ProjectSpec::new(
            self.project_name.unwrap_or_default(),
            self.use_cases,
            self.actors,
            self.complexity_level.unwrap_or_default(),
            self.ratings.unwrap_or_default(),
            self.legacy_adjustment.unwrap_or(1.0),
        );
        match spec {
            Ok(spec) => Ok(ParseOutput {
                spec,
                warnings: self.diagnostics,
            }),
            // Unreachable in practice: duplicates and ranges were checked
            // line by line. Report at line 1 rather than panic.
            Err(err) => {
                self.diagnostics.push(ParseDiagnostic {
                    line: 1,
                    severity: Severity::Error,
                    message: err.to_string(),
                });
                Err(ParseFailure {
                    diagnostics: self.diagnostics,
                })
            }
        }
    }
}

/// Splits "Some Name kind" into the name (all but the last token, with
/// single spaces) and the trailing kind token.
fn split_name_and_kind(rest: &str) -> Option<(String, &str)> {
    let tokens: Vec<&str> = rest.split_whitespace().collect();
    if tokens.len() < 2 {
        return None;
    }
    let (kind, name_tokens) = tokens.split_last()?;
    Some((name_tokens.join(" "), kind))
}

/// A step line is a number, optional letters (for extension labels like
/// `2a.`), a dot, then at least one whitespace and some text.
fn is_step_line(trimmed: &str) -> bool {
    let digits = trimmed.len() - trimmed.trim_start_matches(|c: char| c.is_ascii_digit()).len();
    if digits == 0 {
        return false;
    }
    let rest = &trimmed[digits..];
    let letters = rest.len() - rest.trim_start_matches(|c: char| c.is_ascii_alphabetic()).len();
    let rest = &rest[letters..];
    let Some(rest) = rest.strip_prefix('.') else {
        return false;
    };
    let stripped = rest.trim_start();
    stripped.len() < rest.len() && !stripped.is_empty()
}

/// Parses a scenario file. Returns the spec and accumulated warnings, or a
/// [`ParseFailure`] listing every diagnostic if any error was found.
///
/// Missing `complexity-level:`, `productivity:`, and `legacy-adjustment:`
/// headers default to level 3, all ratings 3, and 1.0 respectively.
pub fn parse_project(source: &str) -> Result<ParseOutput, ParseFailure> {
    let mut parser = Parser::new();
    for (idx, raw) in source.lines().enumerate() {
        parser.handle_line(idx + 1, raw);
    }
    parser.finish()
}

/// Writes a spec back out in canonical form.
///
/// Canonical means: headers first, then actors, then use cases; lowercase
/// kind keywords; steps renumbered `1.`, `2.`, ... with placeholder text
/// (only counts are stored); empty `extensions:` sections omitted. Parsing
/// the output reproduces the spec exactly.
pub fn serialize_project(spec: &ProjectSpec) -> String {
    let mut out = String::new();
    out.push_str(&format!("project: {}\n", spec.name()));
    out.push_str(&format!("complexity-level: {}\n", spec.complexity_level()));
    let r = spec.productivity();
    out.push_str(&format!(
        "productivity: domain={} motivation={} language={} oo={} analytical={}\n",
        r.domain_experience, r.motivation, r.language_experience, r.oo_experience,
        r.analytical_skills
    ));
    out.push_str(&format!("legacy-adjustment: {}\n", spec.legacy_adjustment()));
    if !spec.actors().is_empty() {
        out.push('\n');
        for actor in spec.actors() {
            out.push_str(&format!("actor {} {}\n", actor.name(), actor.kind()));
        }
    }
    for uc in spec.use_cases() {
        out.push('\n');
        out.push_str(&format!("usecase {} {}\n", uc.name(), uc.kind()));
        out.push_str("  main:\n");
        for i in 1..=uc.main_steps() {
            out.push_str(&format!("    {i}. step\n"));
        }
        if uc.extension_steps() > 0 {
            out.push_str("  extensions:\n");
            for i in 1..=uc.extension_steps() {
                out.push_str(&format!("    {i}. step\n"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ATM: &str = "\
# Sample scenario file
project: ATM

complexity-level: 4
productivity: domain=3 motivation=4 language=3 oo=2 analytical=3
legacy-adjustment: 1.1

actor Customer average
actor Bank System complex

usecase Withdraw Cash base
  main:
    1. Customer inserts card
    2. System validates card
    3. Customer enters amount
    4. System dispenses cash
  extensions:
    2a. Card is invalid
    3a. Insufficient funds

usecase Log Transaction include
  main:
    1. System records the event
";

    #[test]
    fn parses_a_complete_file() {
        let out = parse_project(ATM).unwrap();
        assert!(out.warnings.is_empty());
        let spec = out.spec;
        assert_eq!(spec.name(), "ATM");
        assert_eq!(spec.complexity_level().get(), 4);
        assert_eq!(spec.productivity().motivation.get(), 4);
        assert_eq!(spec.productivity().oo_experience.get(), 2);
        assert_eq!(spec.legacy_adjustment(), 1.1);
        assert_eq!(spec.actors().len(), 2);
        assert_eq!(spec.actors()[1].name(), "Bank System");
        assert_eq!(spec.use_cases().len(), 2);
        let withdraw = &spec.use_cases()[0];
        assert_eq!(withdraw.name(), "Withdraw Cash");
        assert_eq!(withdraw.main_steps(), 4);
        assert_eq!(withdraw.extension_steps(), 2);
        let log = &spec.use_cases()[1];
        assert_eq!(log.kind(), UseCaseKind::Include);
        assert_eq!(log.main_steps(), 1);
        assert_eq!(log.extension_steps(), 0);
    }

    #[test]
    fn empty_extensions_section_counts_zero() {
        let src = "project: p\nusecase a base\n  main:\n    1. one\n  extensions:\n";
        let out = parse_project(src).unwrap();
        assert_eq!(out.spec.use_cases()[0].extension_steps(), 0);
    }

    #[test]
    fn missing_headers_default_to_nominal() {
        let src = "project: p\nusecase a base\n  main:\n    1. one\n";
        let spec = parse_project(src).unwrap().spec;
        assert_eq!(spec.complexity_level().get(), 3);
        assert_eq!(spec.productivity(), &ProductivityRatings::default());
        assert_eq!(spec.legacy_adjustment(), 1.0);
    }

    #[test]
    fn step_outside_a_use_case_is_an_error() {
        let src = "project: p\n    1. floating step\n";
        let failure = parse_project(src).unwrap_err();
        let diag = &failure.diagnostics[0];
        assert_eq!(diag.line, 2);
        assert_eq!(diag.severity, Severity::Error);
        assert!(diag.message.contains("outside"));
    }

    #[test]
    fn section_outside_a_use_case_is_an_error() {
        let failure = parse_project("project: p\n  main:\n").unwrap_err();
        assert_eq!(failure.error_count(), 1);
        assert_eq!(failure.diagnostics[0].line, 2);
    }

    #[test]
    fn unknown_key_is_a_warning() {
        let src = "project: p\nteam-size: 4\nusecase a base\n  main:\n    1. one\n";
        let out = parse_project(src).unwrap();
        assert_eq!(out.warnings.len(), 1);
        assert_eq!(out.warnings[0].line, 2);
        assert!(out.warnings[0].message.contains("team-size"));
    }

    #[test]
    fn duplicate_use_case_name_is_an_error() {
        let src = "project: p\nusecase a base\n  main:\n    1. x\nusecase a base\n  main:\n    1. y\n";
        let failure = parse_project(src).unwrap_err();
        assert_eq!(failure.diagnostics[0].line, 5);
        assert!(failure.diagnostics[0].message.contains("duplicate"));
    }

    #[test]
    fn duplicate_actor_name_is_an_error() {
        let src = "project: p\nactor u simple\nactor u complex\n";
        assert!(parse_project(src).is_err());
    }

    #[test]
    fn out_of_range_values_are_errors() {
        assert!(parse_project("project: p\ncomplexity-level: 9\n").is_err());
        assert!(parse_project("project: p\ncomplexity-level: zero\n").is_err());
        assert!(parse_project("project: p\nproductivity: domain=6\n").is_err());
        assert!(parse_project("project: p\nlegacy-adjustment: 1.31\n").is_err());
        assert!(parse_project("project: p\nlegacy-adjustment: 0.69\n").is_err());
        assert!(parse_project("project: p\nlegacy-adjustment: soon\n").is_err());
    }

    #[test]
    fn missing_project_header_is_an_error() {
        let failure = parse_project("usecase a base\n  main:\n    1. x\n").unwrap_err();
        assert!(failure
            .diagnostics
            .iter()
            .any(|d| d.message.contains("project")));
        assert!(parse_project("").is_err());
    }

    #[test]
    fn invalid_kinds_are_errors() {
        assert!(parse_project("project: p\nactor u tiny\n").is_err());
        assert!(parse_project("project: p\nusecase a secondary\n").is_err());
        assert!(parse_project("project: p\nactor simple\n").is_err());
    }

    #[test]
    fn numbering_styles_all_count() {
        let src = "project: p\nusecase a base\n  main:\n    1. x\n    2a. y\n    10. z\n    003. w\n";
        let out = parse_project(src).unwrap();
        assert_eq!(out.spec.use_cases()[0].main_steps(), 4);
    }

    #[test]
    fn non_step_lines_inside_sections_warn() {
        let src = "project: p\nusecase a base\n  main:\n    1. x\n    then it ends\n";
        let out = parse_project(src).unwrap();
        assert_eq!(out.spec.use_cases()[0].main_steps(), 1);
        assert_eq!(out.warnings.len(), 1);
        assert_eq!(out.warnings[0].line, 5);
    }

    #[test]
    fn step_before_main_counts_with_warning() {
        let src = "project: p\nusecase a base\n    1. x\n    2. y\n";
        let out = parse_project(src).unwrap();
        assert_eq!(out.spec.use_cases()[0].main_steps(), 2);
        assert_eq!(out.warnings.len(), 1);
    }

    #[test]
    fn crlf_input_parses() {
        let src = "project: p\r\nusecase a base\r\n  main:\r\n    1. one\r\n";
        let out = parse_project(src).unwrap();
        assert_eq!(out.spec.use_cases()[0].main_steps(), 1);
    }

    #[test]
    fn round_trip_on_a_parsed_file() {
        let spec = parse_project(ATM).unwrap().spec;
        let text = serialize_project(&spec);
        let reparsed = parse_project(&text).unwrap();
        assert!(reparsed.warnings.is_empty());
        assert_eq!(reparsed.spec, spec);
    }

    fn arb_name(prefix: &'static str) -> impl Strategy<Value = String> {
        "[A-Za-z][A-Za-z0-9_-]{0,8}( [A-Za-z0-9_-]{1,8}){0,2}"
            .prop_map(move |s| format!("{prefix}{s}"))
    }

    fn arb_spec() -> impl Strategy<Value = ProjectSpec> {
        let rating = (1u8..=5).prop_map(|v| Rating::new(v).unwrap());
        let ratings = (
            rating.clone(),
            rating.clone(),
            rating.clone(),
            rating.clone(),
            rating,
        )
            .prop_map(|(d, m, l, o, a)| ProductivityRatings::new(d, m, l, o, a));
        let use_cases = proptest::collection::vec(
            (arb_name("U"), 0usize..3, 0u32..20, 0u32..20),
            0..6,
        )
        .prop_map(|raw| {
            raw.into_iter()
                .enumerate()
                .map(|(i, (name, kind, main, ext))| {
                    let kind =
                        [UseCaseKind::Base, UseCaseKind::Include, UseCaseKind::Extend][kind];
                    UseCase::new(format!("{name}{i}"), kind, main, ext).unwrap()
                })
                .collect::<Vec<_>>()
        });
        let actors = proptest::collection::vec((arb_name("A"), 0usize..3), 0..4).prop_map(|raw| {
            raw.into_iter()
                .enumerate()
                .map(|(i, (name, kind))| {
                    let kind = [ActorKind::Simple, ActorKind::Average, ActorKind::Complex][kind];
                    Actor::new(format!("{name}{i}"), kind).unwrap()
                })
                .collect::<Vec<_>>()
        });
        (
            arb_name("P"),
            use_cases,
            actors,
            1u8..=5,
            ratings,
            0.7f64..=1.3,
        )
            .prop_map(|(name, ucs, actors, level, ratings, adj)| {
                ProjectSpec::new(
                    name,
                    ucs,
                    actors,
                    ComplexityLevel::new(level).unwrap(),
                    ratings,
                    adj,
                )
                .unwrap()
            })
    }

    proptest! {
        #[test]
        fn serialize_then_parse_is_identity(spec in arb_spec()) {
            let text = serialize_project(&spec);
            let out = parse_project(&text).unwrap();
            prop_assert!(out.warnings.is_empty(), "warnings: {:?}", out.warnings);
            prop_assert_eq!(out.spec, spec);
        }

        #[test]
        fn parser_never_panics(input in "\\PC{0,400}") {
            let _ = parse_project(&input);
        }

        #[test]
        fn parser_never_panics_on_liney_input(
            lines in proptest::collection::vec(
                proptest::string::string_regex("(project:|usecase|actor|main:|[0-9a-z#=.: -]{0,20})").unwrap(),
                0..30,
            )
        ) {
            let _ = parse_project(&lines.join("\n"));
        }
    }
}
