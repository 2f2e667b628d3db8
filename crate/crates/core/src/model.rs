//! Domain types for use-case scenario models.
//!
//! A [`ProjectSpec`] is the parsed form of a scenario file: a set of use
//! cases with transaction counts, the actors involved, and the project-level
//! adjustment inputs. Use cases are classified on two scales: the
//! transaction-weighted six-class scale used by [`crate::sizing::proposed_size`],
//! and the legacy three-class scale used by the classic UCP computation.

use std::fmt;

use thiserror::Error;

use crate::adjustment::ProductivityRatings;

/// Role a use case plays in the model.
///
/// All three kinds carry transactions and all three count toward the
/// proposed size; only `Base` use cases count toward legacy UUCP.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum UseCaseKind {
    Base,
    Include,
    Extend,
}

impl UseCaseKind {
    pub fn as_str(self) -> &'static str {
        match self {
            UseCaseKind::Base => "base",
            UseCaseKind::Include => "include",
            UseCaseKind::Extend => "extend",
        }
    }

    /// Parses the lowercase keyword used in scenario files.
    pub fn parse(token: &str) -> Option<Self> {
        match token {
            "base" => Some(UseCaseKind::Base),
            "include" => Some(UseCaseKind::Include),
            "extend" => Some(UseCaseKind::Extend),
            _ => None,
        }
    }
}

impl fmt::Display for UseCaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// A use case with its scenario step counts.
///
/// `main_steps` is the number of steps in the main success scenario and
/// `extension_steps` the number of steps across all extensions. Immutable
/// after construction; the name is guaranteed nonempty.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UseCase {
    name: String,
    kind: UseCaseKind,
    main_steps: u32,
    extension_steps: u32,
}

impl UseCase {
    pub fn new(
        name: impl Into<String>,
        kind: UseCaseKind,
        main_steps: u32,
        extension_steps: u32,
    ) -> Result<Self, ModelError> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(ModelError::EmptyName);
        }
        Ok(UseCase {
            name,
            kind,
            main_steps,
            extension_steps,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> UseCaseKind {
        self.kind
    }

    pub fn main_steps(&self) -> u32 {
        self.main_steps
    }

    pub fn extension_steps(&self) -> u32 {
        self.extension_steps
    }

    /// Transaction count used for classification: main steps plus half the
    /// extension steps, reflecting that extensions are exercised less often.
    pub fn total_transactions(&self) -> f64 {
        f64::from(self.main_steps) + f64::from(self.extension_steps) / 2.0
    }

    /// Step count used by the legacy scale, which weighs all steps equally.
    pub fn legacy_transactions(&self) -> u32 {
        self.main_steps + self.extension_steps
    }
}

/// Actor complexity on the legacy scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ActorKind {
    Simple,
    Average,
    Complex,
}

impl ActorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ActorKind::Simple => "simple",
            ActorKind::Average => "average",
            ActorKind::Complex => "complex",
        }
    }

    pub fn parse(token: &str) -> Option<Self> {
        match token {
            "simple" => Some(ActorKind::Simple),
            "average" => Some(ActorKind::Average),
            "complex" => Some(ActorKind::Complex),
            _ => None,
        }
    }
}

impl fmt::Display for ActorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// An actor named in the scenario file. Only used by the legacy UUCP count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Actor {
    name: String,
    kind: ActorKind,
}

impl Actor {
    pub fn new(name: impl Into<String>, kind: ActorKind) -> Result<Self, ModelError> {
        let name = name.into();
        if name.trim().is_empty() {
            return Err(ModelError::EmptyName);
        }
        Ok(Actor { name, kind })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> ActorKind {
        self.kind
    }
}

/// Six-class complexity scale for the transaction-weighted size.
///
/// Ordered from `VeryLow` to `ExtraHigh`; the ordering matches increasing
/// transaction counts and increasing weights.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ComplexityClass {
    VeryLow,
    Low,
    Normal,
    High,
    VeryHigh,
    ExtraHigh,
}

impl ComplexityClass {
    pub const ALL: [ComplexityClass; 6] = [
        ComplexityClass::VeryLow,
        ComplexityClass::Low,
        ComplexityClass::Normal,
        ComplexityClass::High,
        ComplexityClass::VeryHigh,
        ComplexityClass::ExtraHigh,
    ];

    /// Short label used in reports.
    pub fn label(self) -> &'static str {
        match self {
            ComplexityClass::VeryLow => "VL",
            ComplexityClass::Low => "LO",
            ComplexityClass::Normal => "NM",
            ComplexityClass::High => "HI",
            ComplexityClass::VeryHigh => "VH",
            ComplexityClass::ExtraHigh => "XH",
        }
    }

    /// Size weight in use case points.
    pub fn weight(self) -> u32 {
        match self {
            ComplexityClass::VeryLow => 5,
            ComplexityClass::Low => 10,
            ComplexityClass::Normal => 15,
            ComplexityClass::High => 20,
            ComplexityClass::VeryHigh => 25,
            ComplexityClass::ExtraHigh => 30,
        }
    }
}

impl fmt::Display for ComplexityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.label())
    }
}

/// Classifies a transaction count on the six-class scale.
///
/// Band edges are right-inclusive: t <= 4 is `VeryLow`, 4 < t <= 8 is `Low`,
/// then 12, 16, 20, and anything above 20 is `ExtraHigh`. Counts below one
/// transaction still classify as `VeryLow`; [`crate::sizing::proposed_size`]
/// flags them with a warning instead of rejecting them.
pub fn classify_proposed(transactions: f64) -> ComplexityClass {
    if transactions <= 4.0 {
        ComplexityClass::VeryLow
    } else if transactions <= 8.0 {
        ComplexityClass::Low
    } else if transactions <= 12.0 {
        ComplexityClass::Normal
    } else if transactions <= 16.0 {
        ComplexityClass::High
    } else if transactions <= 20.0 {
        ComplexityClass::VeryHigh
    } else {
        ComplexityClass::ExtraHigh
    }
}

/// Legacy three-class use-case scale.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum LegacyUseCaseClass {
    Simple,
    Average,
    Complex,
}

impl LegacyUseCaseClass {
    pub fn label(self) -> &'static str {
        match self {
            LegacyUseCaseClass::Simple => "simple",
            LegacyUseCaseClass::Average => "average",
            LegacyUseCaseClass::Complex => "complex",
        }
    }

    /// Legacy UUCP weight.
    pub fn weight(self) -> u32 {
        match self {
            LegacyUseCaseClass::Simple => 5,
            LegacyUseCaseClass::Average => 10,
            LegacyUseCaseClass::Complex => 15,
        }
    }
}

impl fmt::Display for LegacyUseCaseClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.label())
    }
}

/// Classifies a use case on the legacy scale from its unweighted step count:
/// up to 3 steps is simple, 4 to 7 average, 8 or more complex.
pub fn classify_legacy(use_case: &UseCase) -> LegacyUseCaseClass {
    match use_case.legacy_transactions() {
        0..=3 => LegacyUseCaseClass::Simple,
        4..=7 => LegacyUseCaseClass::Average,
        _ => LegacyUseCaseClass::Complex,
    }
}

/// Project complexity level on a 1..=5 ordinal scale (3 is nominal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComplexityLevel(u8);

impl ComplexityLevel {
    pub const NOMINAL: ComplexityLevel = ComplexityLevel(3);

    pub fn new(level: u8) -> Result<Self, ModelError> {
        if (1..=5).contains(&level) {
            Ok(ComplexityLevel(level))
        } else {
            Err(ModelError::ComplexityLevelOutOfRange(level))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl Default for ComplexityLevel {
    fn default() -> Self {
        ComplexityLevel::NOMINAL
    }
}

impl fmt::Display for ComplexityLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Lower bound of the legacy technical/environmental adjustment factor.
pub const LEGACY_ADJUSTMENT_MIN: f64 = 0.7;
/// Upper bound of the legacy technical/environmental adjustment factor.
pub const LEGACY_ADJUSTMENT_MAX: f64 = 1.3;

/// A parsed scenario file: use cases, actors, and project-level inputs.
///
/// Use case names are unique, actor names are unique, and
/// `legacy_adjustment` lies in `[0.7, 1.3]`. Immutable after construction.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectSpec {
    name: String,
    use_cases: Vec<UseCase>,
    actors: Vec<Actor>,
    complexity_level: ComplexityLevel,
    productivity: ProductivityRatings,
    legacy_adjustment: f64,
}

impl ProjectSpec {
    pub fn new(
        name: impl Into<String>,
        use_cases: Vec<UseCase>,
        actors: Vec<Actor>,
        complexity_level: ComplexityLevel,
        productivity: ProductivityRatings,
        legacy_adjustment: f64,
    ) -> Result<Self, ModelError> {
        for (i, uc) in use_cases.iter().enumerate() {
            if use_cases[..i].iter().any(|other| other.name == uc.name) {
                return Err(ModelError::DuplicateUseCase(uc.name.clone()));
            }
        }
        for (i, actor) in actors.iter().enumerate() {
            if actors[..i].iter().any(|other| other.name == actor.name) {
                return Err(ModelError::DuplicateActor(actor.name.clone()));
            }
        }
        if !(LEGACY_ADJUSTMENT_MIN..=LEGACY_ADJUSTMENT_MAX).contains(&legacy_adjustment) {
            return Err(ModelError::AdjustmentOutOfRange(legacy_adjustment));
        }
        Ok(ProjectSpec {
            name: name.into(),
            use_cases,
            actors,
            complexity_level,
            productivity,
            legacy_adjustment,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn use_cases(&self) -> &[UseCase] {
        &self.use_cases
    }

    pub fn actors(&self) -> &[Actor] {
        &self.actors
    }

    pub fn complexity_level(&self) -> ComplexityLevel {
        self.complexity_level
    }

    pub fn productivity(&self) -> &ProductivityRatings {
        &self.productivity
    }

    pub fn legacy_adjustment(&self) -> f64 {
        self.legacy_adjustment
    }
}

/// Construction errors for domain types.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ModelError {
    #[error("name must not be empty")]
    EmptyName,
    #[error("duplicate use case name `{0}`")]
    DuplicateUseCase(String),
    #[error("duplicate actor name `{0}`")]
    DuplicateActor(String),
    #[error("complexity level must be in 1..=5, got {0}")]
    ComplexityLevelOutOfRange(u8),
    #[error("legacy adjustment must lie in [0.7, 1.3], got {0}")]
    AdjustmentOutOfRange(f64),
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn uc(main: u32, ext: u32) -> UseCase {
        UseCase::new("uc", UseCaseKind::Base, main, ext).unwrap()
    }

    #[test]
    fn total_transactions_halves_extension_steps() {
        assert_eq!(uc(6, 4).total_transactions(), 8.0);
        assert_eq!(uc(4, 1).total_transactions(), 4.5);
        assert_eq!(uc(0, 0).total_transactions(), 0.0);
    }

    #[test]
    fn classify_proposed_matches_band_table() {
        assert_eq!(classify_proposed(4.0), ComplexityClass::VeryLow);
        assert_eq!(classify_proposed(4.5), ComplexityClass::Low);
        assert_eq!(classify_proposed(8.0), ComplexityClass::Low);
        assert_eq!(classify_proposed(20.5), ComplexityClass::ExtraHigh);
    }

    #[test]
    fn classify_proposed_band_edges_are_right_inclusive() {
        for (edge, lower, upper) in [
            (4.0, ComplexityClass::VeryLow, ComplexityClass::Low),
            (8.0, ComplexityClass::Low, ComplexityClass::Normal),
            (12.0, ComplexityClass::Normal, ComplexityClass::High),
            (16.0, ComplexityClass::High, ComplexityClass::VeryHigh),
            (20.0, ComplexityClass::VeryHigh, ComplexityClass::ExtraHigh),
        ] {
            assert_eq!(classify_proposed(edge), lower, "at edge {edge}");
            assert_eq!(classify_proposed(edge + 0.5), upper, "just above {edge}");
        }
    }

    #[test]
    fn classify_legacy_uses_unweighted_step_count() {
        let simple = uc(2, 1);
        assert_eq!(classify_legacy(&simple), LegacyUseCaseClass::Simple);
        let average = uc(4, 3);
        assert_eq!(classify_legacy(&average), LegacyUseCaseClass::Average);
        let complex = uc(8, 0);
        assert_eq!(classify_legacy(&complex), LegacyUseCaseClass::Complex);
    }

    #[test]
    fn class_weights_match_tables() {
        let weights: Vec<u32> = ComplexityClass::ALL.iter().map(|c| c.weight()).collect();
        assert_eq!(weights, vec![5, 10, 15, 20, 25, 30]);
        assert_eq!(LegacyUseCaseClass::Simple.weight(), 5);
        assert_eq!(LegacyUseCaseClass::Average.weight(), 10);
        assert_eq!(LegacyUseCaseClass::Complex.weight(), 15);
    }

    #[test]
    fn complexity_level_bounds() {
        assert!(ComplexityLevel::new(0).is_err());
        assert!(ComplexityLevel::new(6).is_err());
        assert_eq!(ComplexityLevel::new(3).unwrap(), ComplexityLevel::default());
    }

    #[test]
    fn empty_names_are_rejected() {
        assert_eq!(
            UseCase::new("", UseCaseKind::Base, 1, 0),
            Err(ModelError::EmptyName)
        );
        assert_eq!(
            Actor::new("   ", ActorKind::Simple),
            Err(ModelError::EmptyName)
        );
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let ucs = vec![uc(1, 0), uc(2, 0)];
        let err = ProjectSpec::new(
            "p",
            ucs,
            vec![],
            ComplexityLevel::default(),
            ProductivityRatings::default(),
            1.0,
        )
        .unwrap_err();
        assert_eq!(err, ModelError::DuplicateUseCase("uc".into()));

        let actors = vec![
            Actor::new("a", ActorKind::Simple).unwrap(),
            Actor::new("a", ActorKind::Complex).unwrap(),
        ];
        let err = ProjectSpec::new(
            "p",
            vec![],
            actors,
            ComplexityLevel::default(),
            ProductivityRatings::default(),
            1.0,
        )
        .unwrap_err();
        assert_eq!(err, ModelError::DuplicateActor("a".into()));
    }

    #[test]
    fn adjustment_outside_bounds_is_rejected() {
        for bad in [0.69, 1.31, f64::NAN] {
            let err = ProjectSpec::new(
                "p",
                vec![],
                vec![],
                ComplexityLevel::default(),
                ProductivityRatings::default(),
                bad,
            );
            assert!(err.is_err(), "adjustment {bad} should be rejected");
        }
        for good in [0.7, 1.0, 1.3] {
            assert!(ProjectSpec::new(
                "p",
                vec![],
                vec![],
                ComplexityLevel::default(),
                ProductivityRatings::default(),
                good,
            )
            .is_ok());
        }
    }

    proptest! {
        #[test]
        fn classification_is_total_and_monotone(a in 0.0f64..1000.0, b in 0.0f64..1000.0) {
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            prop_assert!(classify_proposed(lo) <= classify_proposed(hi));
        }

        #[test]
        fn every_step_count_classifies(main in 0u32..10_000, ext in 0u32..10_000) {
            let case = uc(main, ext);
            // Both scales accept any step count without panicking.
            let _ = classify_proposed(case.total_transactions());
            let _ = classify_legacy(&case);
        }

        #[test]
        fn two_extra_extension_steps_add_one_transaction(main in 0u32..1000, ext in 0u32..1000) {
            let base = uc(main, ext).total_transactions();
            let bumped = uc(main, ext + 2).total_transactions();
            prop_assert_eq!(bumped, base + 1.0);
        }
    }
}
