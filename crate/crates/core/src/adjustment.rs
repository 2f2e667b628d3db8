//! Complexity and productivity adjustment of curve-based effort estimates.
//!
//! A raw effort value from a fitted size/effort curve reflects the average
//! project in the training data. [`adjusted_effort`] scales it by a project
//! complexity weight (levels 1..=5) and divides it by a team productivity
//! value derived from five weighted ratings, so that harder projects and
//! weaker teams estimate higher.

use std::fmt;

use thiserror::Error;

use crate::model::ComplexityLevel;

/// Ordinal rating on a 1..=5 scale (3 is nominal).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rating(u8);

impl Rating {
    pub const NOMINAL: Rating = Rating(3);

    pub fn new(value: u8) -> Result<Self, AdjustmentError> {
        if (1..=5).contains(&value) {
            Ok(Rating(value))
        } else {
            Err(AdjustmentError::RatingOutOfRange(value))
        }
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl Default for Rating {
    fn default() -> Self {
        Rating::NOMINAL
    }
}

impl fmt::Display for Rating {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The five team productivity factors, each rated 1..=5.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ProductivityRatings {
    pub domain_experience: Rating,
    pub motivation: Rating,
    pub language_experience: Rating,
    pub oo_experience: Rating,
    pub analytical_skills: Rating,
}

impl ProductivityRatings {
    pub fn new(
        domain_experience: Rating,
        motivation: Rating,
        language_experience: Rating,
        oo_experience: Rating,
        analytical_skills: Rating,
    ) -> Self {
        ProductivityRatings {
            domain_experience,
            motivation,
            language_experience,
            oo_experience,
            analytical_skills,
        }
    }

    /// Ratings in factor order (domain, motivation, language, oo, analytical),
    /// aligned with [`PRODUCTIVITY_WEIGHTS`].
    pub fn as_array(&self) -> [Rating; 5] {
        [
            self.domain_experience,
            self.motivation,
            self.language_experience,
            self.oo_experience,
            self.analytical_skills,
        ]
    }
}

/// Factor weights in the order domain experience, motivation, language
/// experience, object-oriented experience, analytical skills.
pub const PRODUCTIVITY_WEIGHTS: [u32; 5] = [2, 1, 2, 2, 1];

/// Smallest reachable weighted rating sum (all factors rated 1).
pub const PRODUCTIVITY_SUM_MIN: u32 = 8;
/// Largest reachable weighted rating sum (all factors rated 5).
pub const PRODUCTIVITY_SUM_MAX: u32 = 40;

/// Effort multiplier for a project complexity level.
pub fn complexity_weight(level: ComplexityLevel) -> f64 {
    match level.get() {
        1 => 0.7,
        2 => 0.85,
        3 => 1.0,
        4 => 1.15,
        _ => 1.3,
    }
}

/// Weighted sum of the five productivity ratings; always in `[8, 40]`.
pub fn productivity_sum(ratings: &ProductivityRatings) -> u32 {
    ratings
        .as_array()
        .iter()
        .zip(PRODUCTIVITY_WEIGHTS)
        .map(|(r, w)| u32::from(r.get()) * w)
        .sum()
}

/// Maps a weighted rating sum to its productivity band value.
///
/// Bands: sum <= 14 gives 0.7, 15..=20 gives 0.85, 21..=27 gives 1.0,
/// 28..=34 gives 1.15, and 35 or more gives 1.3. Sums outside `[8, 40]`
/// cannot arise from valid ratings and are rejected.
pub fn productivity_value(sum: u32) -> Result<f64, AdjustmentError> {
    if !(PRODUCTIVITY_SUM_MIN..=PRODUCTIVITY_SUM_MAX).contains(&sum) {
        return Err(AdjustmentError::SumOutOfRange(sum));
    }
    Ok(match sum {
        0..=14 => 0.7,
        15..=20 => 0.85,
        21..=27 => 1.0,
        28..=34 => 1.15,
        _ => 1.3,
    })
}

/// Productivity value straight from ratings; cannot fail because the
/// weighted sum of valid ratings always lies in `[8, 40]`.
pub fn productivity_value_of(ratings: &ProductivityRatings) -> f64 {
    productivity_value(productivity_sum(ratings)).expect("rating sum is always in range")
}

/// The resolved multipliers for one project, kept together for reporting.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AdjustmentFactors {
    pub complexity_level: ComplexityLevel,
    pub complexity_weight: f64,
    pub productivity_sum: u32,
    pub productivity_value: f64,
}

impl AdjustmentFactors {
    pub fn derive(level: ComplexityLevel, ratings: &ProductivityRatings) -> Self {
        let sum = productivity_sum(ratings);
        AdjustmentFactors {
            complexity_level: level,
            complexity_weight: complexity_weight(level),
            productivity_sum: sum,
            productivity_value: productivity_value(sum).expect("rating sum is always in range"),
        }
    }
}

/// Applies complexity and productivity adjustment to a base effort.
///
/// Computes `base_effort / productivity * complexity`, dividing first so
/// that estimates at different complexity levels but equal productivity
/// differ by exactly the ratio of their complexity weights. Since the
/// nominal weight is 1.0, a level 5 estimate is bit-for-bit `1.3 *` the
/// level 3 estimate.
pub fn adjusted_effort(
    base_effort: f64,
    level: ComplexityLevel,
    ratings: &ProductivityRatings,
) -> f64 {
    base_effort / productivity_value_of(ratings) * complexity_weight(level)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum AdjustmentError {
    #[error("productivity rating must be in 1..=5, got {0}")]
    RatingOutOfRange(u8),
    #[error("productivity sum must be in [8, 40], got {0}")]
    SumOutOfRange(u32),
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn level(n: u8) -> ComplexityLevel {
        ComplexityLevel::new(n).unwrap()
    }

    fn ratings(values: [u8; 5]) -> ProductivityRatings {
        let [d, m, l, o, a] = values.map(|v| Rating::new(v).unwrap());
        ProductivityRatings::new(d, m, l, o, a)
    }

    #[test]
    fn complexity_weights_match_table() {
        let weights: Vec<f64> = (1..=5).map(|n| complexity_weight(level(n))).collect();
        assert_eq!(weights, vec![0.7, 0.85, 1.0, 1.15, 1.3]);
    }

    #[test]
    fn productivity_sum_examples() {
        assert_eq!(productivity_sum(&ratings([3, 3, 3, 3, 3])), 24);
        assert_eq!(productivity_sum(&ratings([5, 1, 4, 2, 3])), 26);
        assert_eq!(productivity_sum(&ratings([1, 1, 1, 1, 1])), 8);
        assert_eq!(productivity_sum(&ratings([5, 5, 5, 5, 5])), 40);
    }

    #[test]
    fn productivity_value_band_edges() {
        for (sum, expected) in [
            (8, 0.7),
            (14, 0.7),
            (15, 0.85),
            (20, 0.85),
            (21, 1.0),
            (24, 1.0),
            (27, 1.0),
            (28, 1.15),
            (34, 1.15),
            (35, 1.3),
            (40, 1.3),
        ] {
            assert_eq!(productivity_value(sum).unwrap(), expected, "sum {sum}");
        }
        assert!(productivity_value(7).is_err());
        assert!(productivity_value(41).is_err());
    }

    #[test]
    fn adjusted_effort_examples() {
        let nominal = ratings([3, 3, 3, 3, 3]);
        assert_eq!(adjusted_effort(1000.0, level(3), &nominal), 1000.0);
        assert_eq!(adjusted_effort(1000.0, level(5), &nominal), 1300.0);
        let strong = ratings([5, 5, 5, 5, 5]);
        assert_abs_diff_eq!(
            adjusted_effort(1000.0, level(3), &strong),
            769.23,
            epsilon = 0.01
        );
    }

    #[test]
    fn rating_bounds() {
        assert!(Rating::new(0).is_err());
        assert!(Rating::new(6).is_err());
        assert_eq!(Rating::default().get(), 3);
    }

    proptest! {
        #[test]
        fn sum_always_in_range(v in proptest::array::uniform5(1u8..=5)) {
            let sum = productivity_sum(&ratings(v));
            prop_assert!((PRODUCTIVITY_SUM_MIN..=PRODUCTIVITY_SUM_MAX).contains(&sum));
        }

        #[test]
        fn value_nondecreasing_in_each_rating(v in proptest::array::uniform5(1u8..=4), idx in 0usize..5) {
            let mut bumped = v;
            bumped[idx] += 1;
            let before = productivity_value_of(&ratings(v));
            let after = productivity_value_of(&ratings(bumped));
            prop_assert!(after >= before);
        }

        #[test]
        fn level5_is_exactly_1_3_times_level3(
            base in 1.0f64..1e6,
            v in proptest::array::uniform5(1u8..=5),
        ) {
            let r = ratings(v);
            let e3 = adjusted_effort(base, level(3), &r);
            let e5 = adjusted_effort(base, level(5), &r);
            prop_assert_eq!(e5.to_bits(), (1.3 * e3).to_bits());
        }

        #[test]
        fn effort_monotone_in_level(base in 1.0f64..1e6, lo in 1u8..=5, hi in 1u8..=5) {
            prop_assume!(lo <= hi);
            let r = ratings([3; 5]);
            prop_assert!(adjusted_effort(base, level(lo), &r) <= adjusted_effort(base, level(hi), &r));
        }
    }
}
