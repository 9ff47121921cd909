use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::alpha::Alpha;
use crate::error::{Error, Result};
use crate::perm::factorial;

use super::permuted::PermutedSet;
use super::seed::admissible_count;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Binary words, no marker constraint.
    Plain,
    /// Every seed word starts with `001` and contains no other `00`.
    Marker,
    /// Marker seeds plus a spacer symbol before every permuted slot.
    Spacer,
}

impl Variant {
    pub fn uses_marker(self) -> bool {
        matches!(self, Variant::Marker | Variant::Spacer)
    }

    pub fn has_spacers(self) -> bool {
        matches!(self, Variant::Spacer)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Variant::Plain => "plain",
            Variant::Marker => "marker",
            Variant::Spacer => "spacer",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "plain" => Ok(Variant::Plain),
            "marker" => Ok(Variant::Marker),
            "spacer" => Ok(Variant::Spacer),
            other => Err(Error::Parse(format!("unknown variant {other:?}"))),
        }
    }
}

/// How the words of each level are numbered.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum OrderingPolicy {
    /// Word `i` is the permutation of lexicographic rank `i - 1`.
    LexUnrank,
    /// Lexicographic, except that permuted slots of the next level are
    /// occupied by entropy-generating representatives.
    EgsOrdered,
}

impl fmt::Display for OrderingPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderingPolicy::LexUnrank => f.write_str("lex-unrank"),
            OrderingPolicy::EgsOrdered => f.write_str("egs-ordered"),
        }
    }
}

impl std::str::FromStr for OrderingPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lex-unrank" | "lex" => Ok(OrderingPolicy::LexUnrank),
            "egs-ordered" | "egs" => Ok(OrderingPolicy::EgsOrdered),
            other => Err(Error::Parse(format!("unknown ordering {other:?}"))),
        }
    }
}

/// Everything needed to determine the subshift.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionParams {
    pub variant: Variant,
    pub alpha: Alpha,
    pub l1: u64,
    pub n1: u64,
    #[serde(default = "default_ordering")]
    pub ordering: OrderingPolicy,
    #[serde(default)]
    pub rng_seed: Option<u64>,
    #[serde(default = "default_max_level")]
    pub max_level: usize,
}

fn default_ordering() -> OrderingPolicy {
    OrderingPolicy::LexUnrank
}

fn default_max_level() -> usize {
    3
}

impl ConstructionParams {
    pub fn new(variant: Variant, alpha: Alpha, l1: u64, n1: u64) -> Self {
        ConstructionParams {
            variant,
            alpha,
            l1,
            n1,
            ordering: OrderingPolicy::LexUnrank,
            rng_seed: None,
            max_level: default_max_level(),
        }
    }

    pub fn with_max_level(mut self, max_level: usize) -> Self {
        self.max_level = max_level;
        self
    }

    pub fn with_ordering(mut self, ordering: OrderingPolicy) -> Self {
        self.ordering = ordering;
        self
    }

    pub fn with_rng_seed(mut self, seed: u64) -> Self {
        self.rng_seed = Some(seed);
        self
    }

    /// The smallest marker instance: six-symbol seeds, four of them.
    pub fn tiny() -> Self {
        ConstructionParams::new(Variant::Marker, Alpha::HALF, 6, 4)
    }

    /// The `l_1 = N_1 = 25` marker instance used throughout the tests.
    pub fn desk() -> Self {
        ConstructionParams::new(Variant::Marker, Alpha::HALF, 25, 25)
    }

    /// Permuted slots for a level with `word_count` words.
    pub fn permuted_set(&self, word_count: &BigUint) -> PermutedSet {
        PermutedSet::for_level(self.alpha, self.variant, word_count)
    }
}

/// Parameters that passed [`validate_params`], together with any
/// non-fatal findings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidatedParams {
    pub params: ConstructionParams,
    pub admissible_seed_words: BigUint,
    pub warnings: Vec<String>,
}

/// Largest `|P_j|` whose factorial we are prepared to compute.
pub const MAX_FACTORIAL_ARG: u64 = 20_000;

pub fn validate_params(params: &ConstructionParams) -> Result<ValidatedParams> {
    let alpha = params.alpha.as_f64();
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::AlphaOutOfRange(params.alpha.to_string()));
    }
    if params.max_level == 0 {
        return Err(Error::InvalidParams("max_level must be at least 1".into()));
    }
    if params.n1 < 4 {
        return Err(Error::InvalidParams(format!(
            "N1 must be at least 4, got {}",
            params.n1
        )));
    }
    if params.l1 == 0 {
        return Err(Error::InvalidParams("l1 must be positive".into()));
    }
    let n1 = BigUint::from(params.n1);
    let m1 = params.alpha.floor_pow(&n1);
    if m1 < BigUint::from(2u32) {
        return Err(Error::DegeneratePermutedSet {
            level: 1,
            detail: format!("floor(N1^alpha) = {m1} < 2"),
        });
    }
    let available = admissible_count(params.variant, params.l1);
    if available < n1 {
        return Err(Error::InfeasibleSeed {
            required: n1,
            available,
            length: params.l1,
        });
    }
    let warnings = degeneracy_warnings(params);
    Ok(ValidatedParams {
        params: params.clone(),
        admissible_seed_words: available,
        warnings,
    })
}

/// Walks the count recurrence and reports fixed or absorbing points.
pub fn degeneracy_warnings(params: &ConstructionParams) -> Vec<String> {
    let mut warnings = Vec::new();
    let mut count = BigUint::from(params.n1);
    for level in 1..params.max_level {
        let slots = params.permuted_set(&count).len();
        let Some(slots) = slots.to_u64().filter(|&s| s <= MAX_FACTORIAL_ARG) else {
            break;
        };
        let next = factorial(slots);
        if count <= BigUint::from(2u32) || next.is_one() {
            warnings.push(format!(
                "Degenerate: N_{level} = {count} is absorbing under the count recurrence; entropy dimension collapses"
            ));
            break;
        }
        if next == count {
            warnings.push(format!(
                "Degenerate: N_{level} = {count} is a fixed point of the count recurrence"
            ));
            break;
        }
        count = next;
    }
    warnings
}
