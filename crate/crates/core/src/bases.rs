//! Base tuples, their digit marks, admissibility validation and frontier
//! constants.
//!
//! A tuple `(β_0, …, β_m)` of bases, each greater than 1, assigns one
//! contraction rate to every digit of the alphabet `{0, …, m}`. Digit `k`
//! applies the affine map `x ↦ β_k·x − k`. Two families of marks control
//! everything downstream:
//!
//! * `lower[k] = k / β_k` — the least point where digit `k` keeps the image
//!   non-negative;
//! * `upper[k] = (k + U) / β_k` with `U = m / (β_m − 1)` — the greatest point
//!   where the image stays below the domain supremum `U`.
//!
//! Digit `k` is usable exactly on `[lower[k], upper[k]]`. A tuple is
//! *admissible* when consecutive windows interleave:
//! `lower[k] < lower[k+1] <= upper[k] < upper[k+1]` for every `k < m`. That
//! interleaving makes the windows cover `[0, U]` with non-trivial overlaps,
//! so every point has at least one usable digit and the greedy/lazy interval
//! partitions below are well defined.

use std::fmt;
use std::sync::OnceLock;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::{Cmp, Mode, Scalar};

/// Per-digit usability windows; index `k` runs over the alphabet.
#[derive(Clone, Debug)]
pub struct Marks {
    /// Least admissible point per digit (`lower[0]` is always 0).
    pub lower: Vec<Scalar>,
    /// Greatest admissible point per digit (`upper[m]` is the domain
    /// supremum).
    pub upper: Vec<Scalar>,
}

/// Images of the partition-defining marks under their branch maps. The
/// greedy pair bounds images of the `lower` marks, the lazy pair images of
/// the `upper` marks; classification against reference expansions starts
/// from these four points.
#[derive(Clone, Debug, Serialize)]
pub struct Frontier {
    pub greedy_max: Scalar,
    pub greedy_min: Scalar,
    pub lazy_max: Scalar,
    pub lazy_min: Scalar,
}

/// Which mark inequality failed during validation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ViolationKind {
    /// `lower[k] < lower[k+1]` fails.
    LowerOrder,
    /// `lower[k+1] <= upper[k]` fails: the windows of digits `k` and `k+1`
    /// leave a gap.
    Overlap,
    /// `upper[k] < upper[k+1]` fails.
    UpperOrder,
}

/// First violated inequality of an inadmissible tuple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Index `k` of the first failing inequality.
    pub k: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.k;
        match self.kind {
            ViolationKind::LowerOrder => write!(f, "lower[{}] < lower[{}] fails", k, k + 1),
            ViolationKind::Overlap => write!(f, "lower[{}] <= upper[{}] fails", k + 1, k),
            ViolationKind::UpperOrder => write!(f, "upper[{}] < upper[{}] fails", k, k + 1),
        }
    }
}

/// Outcome of the admissibility check, computed once per tuple and cached.
// One cached value per tuple; boxing the frontier would buy nothing.
#[allow(clippy::large_enum_variant)]
#[derive(Clone, Debug)]
pub enum Validation {
    Admissible { marks: Marks, frontier: Frontier },
    Inadmissible { marks: Marks, violation: Violation },
}

impl Validation {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Validation::Admissible { .. })
    }

    pub fn marks(&self) -> &Marks {
        match self {
            Validation::Admissible { marks, .. } | Validation::Inadmissible { marks, .. } => marks,
        }
    }
}

/// How the bases are ordered along the digit alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonotoneOrder {
    Constant,
    Ascending,
    Descending,
    Neither,
}

/// A tuple of bases `(β_0, …, β_m)`, all sharing one arithmetic mode and all
/// greater than 1.
#[derive(Debug)]
pub struct BaseTuple {
    betas: Vec<Scalar>,
    mode: Mode,
    validation: OnceLock<Result<Validation>>,
}

impl Clone for BaseTuple {
    fn clone(&self) -> Self {
        BaseTuple {
            betas: self.betas.clone(),
            mode: self.mode,
            validation: self.validation.clone(),
        }
    }
}

impl BaseTuple {
    /// Builds a tuple from `m + 1` bases. Requires at least two entries, a
    /// single shared mode, and every base strictly above 1.
    pub fn new(betas: Vec<Scalar>) -> Result<Self> {
        if betas.len() < 2 {
            return Err(Error::PreconditionFailed(
                "a base tuple needs at least two entries (alphabet {0, …, m} with m >= 1)".into(),
            ));
        }
        let mode = betas[0].mode();
        if betas[1..].iter().any(|b| b.mode() != mode) {
            return Err(Error::ModeMismatch);
        }
        let one = Scalar::one(&mode);
        for beta in &betas {
            if !beta.decide_gt(&one)? {
                return Err(Error::PreconditionFailed(format!(
                    "every base must exceed 1, got {beta}"
                )));
            }
        }
        Ok(BaseTuple {
            betas,
            mode,
            validation: OnceLock::new(),
        })
    }

    /// The constant tuple `(beta, …, beta)` over the alphabet `{0, …, m}`.
    pub fn constant(beta: Scalar, m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::PreconditionFailed(
                "alphabet maximum m must be at least 1".into(),
            ));
        }
        BaseTuple::new(vec![beta; m + 1])
    }

    /// Parses a comma-separated base list such as `"2,3/2"`.
    pub fn parse_list(text: &str, mode: &Mode) -> Result<Self> {
        let betas = text
            .split(',')
            .map(|part| Scalar::parse(part, mode))
            .collect::<Result<Vec<_>>>()?;
        BaseTuple::new(betas)
    }

    /// Alphabet maximum `m` (one less than the number of bases).
    pub fn m(&self) -> usize {
        self.betas.len() - 1
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn betas(&self) -> &[Scalar] {
        &self.betas
    }

    pub fn beta(&self, k: usize) -> Result<&Scalar> {
        self.betas.get(k).ok_or(Error::DigitOutOfRange {
            digit: k as u32,
            max: self.m() as u32,
        })
    }

    /// The branch map of digit `k`: `x ↦ β_k·x − k`.
    pub fn apply(&self, k: usize, x: &Scalar) -> Result<Scalar> {
        let beta = self.beta(k)?;
        let kk = Scalar::integer_in(k as i64, &self.mode);
        Ok(&(beta * x) - &kk)
    }

    /// Domain supremum `U = m / (β_m − 1)`; expansions take values in
    /// `[0, U]`.
    pub fn upper_bound(&self) -> Scalar {
        let m = Scalar::integer_in(self.m() as i64, &self.mode);
        let last = &self.betas[self.m()];
        let one = Scalar::one(&self.mode);
        &m / &(last - &one)
    }

    /// Per-digit usability windows.
    pub fn marks(&self) -> Marks {
        let u = self.upper_bound();
        let mut lower = Vec::with_capacity(self.betas.len());
        let mut upper = Vec::with_capacity(self.betas.len());
        for (k, beta) in self.betas.iter().enumerate() {
            let kk = Scalar::integer_in(k as i64, &self.mode);
            lower.push(&kk / beta);
            upper.push(&(&kk + &u) / beta);
        }
        Marks { lower, upper }
    }

    /// Runs (or returns the cached) admissibility check. The frontier
    /// constants are computed eagerly for admissible tuples and cached with
    /// the report. In float mode a tolerance tie passes the non-strict
    /// overlap requirement (it cannot refute `≤`), while a tie on either
    /// strict ordering requirement makes the whole check fail with
    /// [`Error::BoundaryAmbiguity`].
    pub fn validate(&self) -> Result<&Validation> {
        self.validation
            .get_or_init(|| self.run_validation())
            .as_ref()
            .map_err(Clone::clone)
    }

    fn run_validation(&self) -> Result<Validation> {
        let marks = self.marks();
        for k in 0..self.m() {
            if !marks.lower[k].decide_lt(&marks.lower[k + 1])? {
                return Ok(Validation::Inadmissible {
                    marks,
                    violation: Violation {
                        kind: ViolationKind::LowerOrder,
                        k,
                    },
                });
            }
            if !marks.lower[k + 1].compare(&marks.upper[k])?.permits_le() {
                return Ok(Validation::Inadmissible {
                    marks,
                    violation: Violation {
                        kind: ViolationKind::Overlap,
                        k,
                    },
                });
            }
            if !marks.upper[k].decide_lt(&marks.upper[k + 1])? {
                return Ok(Validation::Inadmissible {
                    marks,
                    violation: Violation {
                        kind: ViolationKind::UpperOrder,
                        k,
                    },
                });
            }
        }
        let frontier = self.compute_frontier(&marks)?;
        Ok(Validation::Admissible { marks, frontier })
    }

    fn compute_frontier(&self, marks: &Marks) -> Result<Frontier> {
        let m = self.m();
        // Greedy side: images of the next digit's lower mark under the
        // current branch, over k = 0..m-1.
        let mut greedy = Vec::with_capacity(m);
        for k in 0..m {
            greedy.push(self.apply(k, &marks.lower[k + 1])?);
        }
        // Lazy side: images of the previous digit's upper mark, k = 1..m.
        let mut lazy = Vec::with_capacity(m);
        for k in 1..=m {
            lazy.push(self.apply(k, &marks.upper[k - 1])?);
        }
        Ok(Frontier {
            greedy_max: extremum(&greedy, Cmp::Greater)?,
            greedy_min: extremum(&greedy, Cmp::Less)?,
            lazy_max: extremum(&lazy, Cmp::Greater)?,
            lazy_min: extremum(&lazy, Cmp::Less)?,
        })
    }

    /// Marks and frontier of an admissible tuple, or [`Error::NotAdmissible`]
    /// carrying the first violated inequality.
    pub fn require_admissible(&self) -> Result<(&Marks, &Frontier)> {
        match self.validate()? {
            Validation::Admissible { marks, frontier } => Ok((marks, frontier)),
            Validation::Inadmissible { violation, .. } => {
                Err(Error::NotAdmissible(violation.clone()))
            }
        }
    }

    /// Frontier constants of an admissible tuple.
    pub fn frontier(&self) -> Result<&Frontier> {
        Ok(self.require_admissible()?.1)
    }

    /// True when all bases are equal (float mode: equal within tolerance).
    pub fn is_constant(&self) -> bool {
        self.betas[1..].iter().all(|b| {
            matches!(
                b.compare(&self.betas[0]).expect("single mode by construction"),
                Cmp::Equal | Cmp::Ambiguous
            )
        })
    }

    /// Classifies the ordering of the bases along the alphabet. Float-mode
    /// comparisons inside the tolerance count as equal.
    pub fn monotone_order(&self) -> MonotoneOrder {
        let mut has_increase = false;
        let mut has_decrease = false;
        for pair in self.betas.windows(2) {
            match pair[0]
                .compare(&pair[1])
                .expect("single mode by construction")
            {
                Cmp::Less => has_increase = true,
                Cmp::Greater => has_decrease = true,
                Cmp::Equal | Cmp::Ambiguous => {}
            }
        }
        match (has_increase, has_decrease) {
            (false, false) => MonotoneOrder::Constant,
            (true, false) => MonotoneOrder::Ascending,
            (false, true) => MonotoneOrder::Descending,
            (true, true) => MonotoneOrder::Neither,
        }
    }
}

/// Max or min of a non-empty slice; float-mode ties inside the tolerance keep
/// the earlier candidate (the results then agree within the tolerance).
fn extremum(values: &[Scalar], keep: Cmp) -> Result<Scalar> {
    let mut best = values[0].clone();
    for v in &values[1..] {
        if v.compare(&best)? == keep {
            best = v.clone();
        }
    }
    Ok(best)
}

impl fmt::Display for BaseTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, beta) in self.betas.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{beta}")?;
        }
        write!(f, ")")
    }
}

impl Serialize for BaseTuple {
    /// `{"m": 1, "betas": ["2", "3/2"]}` — scalars follow their mode's
    /// serialization.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut s = serializer.serialize_struct("BaseTuple", 2)?;
        s.serialize_field("m", &self.m())?;
        s.serialize_field("betas", &self.betas)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for BaseTuple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Shadow {
            m: usize,
            betas: Vec<BetaLit>,
        }
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum BetaLit {
            Text(String),
            Number(f64),
        }
        let shadow = Shadow::deserialize(deserializer)?;
        let all_text = shadow.betas.iter().all(|b| matches!(b, BetaLit::Text(_)));
        let mode = if all_text {
            Mode::Exact
        } else {
            Mode::float_default()
        };
        let betas = shadow
            .betas
            .iter()
            .map(|lit| match lit {
                BetaLit::Text(t) => Scalar::parse(t, &mode),
                BetaLit::Number(v) => Ok(Scalar::from_f64(
                    *v,
                    crate::numerics::DEFAULT_EPSILON,
                )),
            })
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        let tuple = BaseTuple::new(betas).map_err(D::Error::custom)?;
        if tuple.m() != shadow.m {
            return Err(D::Error::custom(format!(
                "declared m = {} does not match {} bases",
                shadow.m,
                shadow.m + 1
            )));
        }
        Ok(tuple)
    }
}
