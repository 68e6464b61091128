//! Piecewise-affine expansion transformations.
//!
//! A [`Transform`] partitions the domain `[0, U]` into `m + 1` consecutive
//! intervals `I_0, …, I_m` separated by cut points, applies digit `k`'s
//! branch map `x ↦ β_k·x − k` on `I_k`, and thereby turns a start value into
//! a digit stream. The four canonical partitions place the cuts at the digit
//! marks:
//!
//! * greedy / quasi-greedy cut at the `lower` marks (largest usable digit
//!   wins); they differ only in which side owns each cut;
//! * lazy / quasi-lazy cut at the `upper` marks (smallest usable digit wins).
//!
//! Custom cut positions are accepted anywhere inside the per-digit slack
//! `[lower[k+1], upper[k]]`, with explicit endpoint ownership validated so
//! the intervals exactly tile the domain.
//!
//! Orbit states are compared exactly in exact mode, so every rational orbit
//! either closes into a cycle (an [`EpWord`]) or is reported truncated. In
//! float mode a state revisit within the tolerance yields a cycle flagged
//! `approximate`, and any digit decision within the tolerance of a cut
//! surfaces [`Error::BoundaryAmbiguity`] instead of guessing a side.

use std::collections::HashMap;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Serialize;

use crate::bases::BaseTuple;
use crate::error::{Error, Result};
use crate::numerics::{Cmp, Mode, Scalar};
use crate::words::{EpWord, Word};

/// The four canonical interval assignments.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Policy {
    Greedy,
    QuasiGreedy,
    Lazy,
    QuasiLazy,
}

impl Policy {
    pub const ALL: [Policy; 4] = [
        Policy::Greedy,
        Policy::QuasiGreedy,
        Policy::Lazy,
        Policy::QuasiLazy,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Policy::Greedy => "greedy",
            Policy::QuasiGreedy => "quasi-greedy",
            Policy::Lazy => "lazy",
            Policy::QuasiLazy => "quasi-lazy",
        }
    }
}

impl FromStr for Policy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "greedy" => Ok(Policy::Greedy),
            "quasi-greedy" | "quasi_greedy" => Ok(Policy::QuasiGreedy),
            "lazy" => Ok(Policy::Lazy),
            "quasi-lazy" | "quasi_lazy" => Ok(Policy::QuasiLazy),
            other => Err(Error::Parse(format!("unknown policy {other:?}"))),
        }
    }
}

/// Endpoint ownership of one partition interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntervalShape {
    pub left_closed: bool,
    pub right_closed: bool,
}

impl IntervalShape {
    pub const fn new(left_closed: bool, right_closed: bool) -> Self {
        IntervalShape {
            left_closed,
            right_closed,
        }
    }
}

/// Result of expanding a start value to a digit stream.
#[derive(Clone, Debug, PartialEq)]
pub enum Expansion {
    /// The orbit closed into a cycle; the digit stream is known in full.
    /// `approximate` marks float-mode cycles detected within the tolerance,
    /// which extrapolate the observed digits rather than certify them.
    Periodic { word: EpWord, approximate: bool },
    /// No cycle within the depth budget; only a prefix of the stream is
    /// known. Not an error: aperiodic orbits are expected for most inputs.
    Truncated { prefix: Word },
}

impl Expansion {
    pub fn as_periodic(&self) -> Option<&EpWord> {
        match self {
            Expansion::Periodic { word, .. } => Some(word),
            Expansion::Truncated { .. } => None,
        }
    }

    /// True only for an exact (non-extrapolated) cycle.
    pub fn is_exact_cycle(&self) -> bool {
        matches!(
            self,
            Expansion::Periodic {
                approximate: false,
                ..
            }
        )
    }

    /// The digit positions known to be correct: all of them for an exact
    /// cycle, the observed prefix otherwise.
    pub fn known_digits(&self) -> usize {
        match self {
            Expansion::Periodic {
                approximate: false,
                ..
            } => usize::MAX,
            Expansion::Periodic { word, .. } => word.distinct_tails(),
            Expansion::Truncated { prefix } => prefix.len(),
        }
    }

    /// Digit at position `i` when `i` is a known position.
    pub fn digit_at(&self, i: usize) -> Option<u8> {
        match self {
            Expansion::Periodic { word, .. } if i < self.known_digits() => Some(word.digit_at(i)),
            Expansion::Periodic { .. } => None,
            Expansion::Truncated { prefix } => prefix.digit(i),
        }
    }

    /// The first `min(n, known digits)` digits.
    pub fn prefix(&self, n: usize) -> Word {
        match self {
            Expansion::Periodic { word, .. } => word.prefix(n.min(self.known_digits())),
            Expansion::Truncated { prefix } => {
                Word::new(prefix.digits()[..n.min(prefix.len())].to_vec(), prefix.m())
                    .expect("digits already validated")
            }
        }
    }
}

/// Orbit of a start value: visited states, emitted digits and the index at
/// which the final state re-entered the state list (if it did).
#[derive(Clone, Debug)]
pub struct Orbit {
    /// `states[0]` is the start value; `states[i+1]` is the image of
    /// `states[i]` under the digit `digits[i]` branch.
    pub states: Vec<Scalar>,
    pub digits: Word,
    /// When set, the last entry of `states` equals `states[cycle_entry]`.
    pub cycle_entry: Option<usize>,
}

/// One branch segment of the transformation graph, for plotting.
#[derive(Clone, Debug, Serialize)]
pub struct Branch {
    pub k: usize,
    pub x0: Scalar,
    pub y0: Scalar,
    pub x1: Scalar,
    pub y1: Scalar,
    /// Whether the left/right endpoint belongs to the branch.
    pub incl: [bool; 2],
    /// Optional evenly spaced interior sample points `[x, y]`.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub samples: Vec<[Scalar; 2]>,
}

/// Serializable graph of a transformation: one segment per digit branch plus
/// the diagonal marker.
#[derive(Clone, Debug, Serialize)]
pub struct PlotSeries {
    pub branches: Vec<Branch>,
    pub diagonal: bool,
}

/// A partition of `[0, U]` with one affine branch per digit.
#[derive(Clone, Debug)]
pub struct Transform {
    tuple: BaseTuple,
    /// `cuts[j]` separates `I_j` from `I_{j+1}`; length `m`.
    cuts: Vec<Scalar>,
    /// Endpoint ownership per interval; length `m + 1`.
    shapes: Vec<IntervalShape>,
    policy: Option<Policy>,
}

impl Transform {
    /// One of the four canonical partitions of an admissible tuple.
    pub fn canonical(tuple: &BaseTuple, policy: Policy) -> Result<Self> {
        let (marks, _) = tuple.require_admissible()?;
        check_alphabet_width(tuple)?;
        let m = tuple.m();
        let closed_tail = |first: IntervalShape| -> Vec<IntervalShape> {
            // First interval as given, middles open-closed, last closed at U.
            let mut shapes = vec![first];
            shapes.extend(vec![IntervalShape::new(false, true); m]);
            shapes
        };
        let half_open = || -> Vec<IntervalShape> {
            // Closed-open everywhere except the last, which closes at U.
            let mut shapes = vec![IntervalShape::new(true, false); m];
            shapes.push(IntervalShape::new(true, true));
            shapes
        };
        let (cuts, shapes) = match policy {
            Policy::Greedy => (marks.lower[1..].to_vec(), half_open()),
            Policy::QuasiGreedy => (
                marks.lower[1..].to_vec(),
                closed_tail(IntervalShape::new(true, true)),
            ),
            Policy::Lazy => (
                marks.upper[..m].to_vec(),
                closed_tail(IntervalShape::new(true, true)),
            ),
            Policy::QuasiLazy => (marks.upper[..m].to_vec(), half_open()),
        };
        Ok(Transform {
            tuple: tuple.clone(),
            cuts,
            shapes,
            policy: Some(policy),
        })
    }

    /// A custom partition. `cuts[j]` must lie in the slack
    /// `[lower[j+1], upper[j]]`, the cuts must be strictly increasing, and at
    /// every cut exactly one adjacent interval must own the point. The outer
    /// endpoints `0` and `U` are always owned.
    pub fn with_cuts(
        tuple: &BaseTuple,
        cuts: Vec<Scalar>,
        shapes: Vec<IntervalShape>,
    ) -> Result<Self> {
        let (marks, _) = tuple.require_admissible()?;
        check_alphabet_width(tuple)?;
        let m = tuple.m();
        if cuts.len() != m || shapes.len() != m + 1 {
            return Err(Error::PreconditionFailed(format!(
                "expected {m} cuts and {} interval shapes, got {} and {}",
                m + 1,
                cuts.len(),
                shapes.len()
            )));
        }
        if !shapes[0].left_closed || !shapes[m].right_closed {
            return Err(Error::PreconditionFailed(
                "the partition must include both domain endpoints".into(),
            ));
        }
        for j in 0..m {
            if shapes[j].right_closed == shapes[j + 1].left_closed {
                return Err(Error::PreconditionFailed(format!(
                    "cut {j} must belong to exactly one adjacent interval"
                )));
            }
            if !(cuts[j].decide_ge(&marks.lower[j + 1])? && cuts[j].decide_le(&marks.upper[j])?) {
                return Err(Error::PreconditionFailed(format!(
                    "cut {j} at {} leaves the slack [{}, {}]",
                    cuts[j],
                    marks.lower[j + 1],
                    marks.upper[j]
                )));
            }
            if j + 1 < m && !cuts[j].decide_lt(&cuts[j + 1])? {
                return Err(Error::PreconditionFailed(
                    "cuts must be strictly increasing".into(),
                ));
            }
        }
        Ok(Transform {
            tuple: tuple.clone(),
            cuts,
            shapes,
            policy: None,
        })
    }

    pub fn tuple(&self) -> &BaseTuple {
        &self.tuple
    }

    pub fn cuts(&self) -> &[Scalar] {
        &self.cuts
    }

    pub fn shapes(&self) -> &[IntervalShape] {
        &self.shapes
    }

    pub fn policy(&self) -> Option<Policy> {
        self.policy
    }

    fn check_domain(&self, x: &Scalar) -> Result<()> {
        let upper = self.tuple.upper_bound();
        // The domain endpoints are closed, so a float-mode tie at either one
        // cannot refute membership.
        let above_zero = x.sign().permits_ge();
        let below_upper = x.compare(&upper)?.permits_le();
        if above_zero && below_upper {
            Ok(())
        } else {
            Err(Error::OutOfDomain {
                value: x.to_string(),
                upper: upper.to_string(),
            })
        }
    }

    /// The digit whose interval contains `x`.
    pub fn digit(&self, x: &Scalar) -> Result<u8> {
        self.check_domain(x)?;
        for (j, cut) in self.cuts.iter().enumerate() {
            match x.compare(cut)? {
                Cmp::Less => return Ok(j as u8),
                Cmp::Equal => {
                    return Ok(if self.shapes[j].right_closed {
                        j as u8
                    } else {
                        j as u8 + 1
                    })
                }
                Cmp::Ambiguous => {
                    return Err(Error::BoundaryAmbiguity(format!(
                        "value {x} is within tolerance of the cut at {cut}"
                    )))
                }
                Cmp::Greater => continue,
            }
        }
        Ok(self.tuple.m() as u8)
    }

    /// One application: the selected digit and the image of `x` under its
    /// branch.
    pub fn step(&self, x: &Scalar) -> Result<(u8, Scalar)> {
        let digit = self.digit(x)?;
        let image = self.tuple.apply(digit as usize, x)?;
        Ok((digit, image))
    }

    /// Iterates the transformation from `x`, emitting digits until the orbit
    /// revisits a state (a cycle: the full digit stream is known) or
    /// `max_depth` digits have been produced (a truncated prefix; not an
    /// error). Exact mode detects revisits by exact state equality; float
    /// mode within the tolerance, flagging the result `approximate`.
    pub fn expand(&self, x: &Scalar, max_depth: usize) -> Result<Expansion> {
        let m = self.tuple.m() as u8;
        let mut digits: Vec<u8> = Vec::new();
        let mut state = x.clone();
        match self.tuple.mode() {
            Mode::Exact => {
                let mut seen: HashMap<BigRational, usize> = HashMap::new();
                loop {
                    let key = state
                        .as_rational()
                        .expect("exact mode carries rationals")
                        .clone();
                    if let Some(&entry) = seen.get(&key) {
                        return Ok(Expansion::Periodic {
                            word: EpWord::new(
                                digits[..entry].to_vec(),
                                digits[entry..].to_vec(),
                                m,
                            )?,
                            approximate: false,
                        });
                    }
                    if digits.len() == max_depth {
                        return Ok(Expansion::Truncated {
                            prefix: Word::new(digits, m)?,
                        });
                    }
                    seen.insert(key, digits.len());
                    let (digit, image) = self.step(&state)?;
                    digits.push(digit);
                    state = image;
                }
            }
            Mode::Float { epsilon } => {
                let mut seen: Vec<f64> = Vec::new();
                loop {
                    let value = state.to_f64();
                    if let Some(entry) = seen.iter().position(|s| (s - value).abs() < epsilon) {
                        return Ok(Expansion::Periodic {
                            word: EpWord::new(
                                digits[..entry].to_vec(),
                                digits[entry..].to_vec(),
                                m,
                            )?,
                            approximate: true,
                        });
                    }
                    if digits.len() == max_depth {
                        return Ok(Expansion::Truncated {
                            prefix: Word::new(digits, m)?,
                        });
                    }
                    seen.push(value);
                    let (digit, image) = self.step(&state)?;
                    digits.push(digit);
                    state = image;
                }
            }
        }
    }

    /// Like [`Transform::expand`] but records the visited states. Stops at a
    /// state revisit or after `steps` digits; on a revisit the repeated state
    /// is appended, so `states[cycle_entry]` equals the last state.
    pub fn orbit(&self, x: &Scalar, steps: usize) -> Result<Orbit> {
        let m = self.tuple.m() as u8;
        let mut states = vec![x.clone()];
        let mut digits: Vec<u8> = Vec::new();
        loop {
            let current = states.last().expect("states never empty");
            let entry = match self.tuple.mode() {
                Mode::Exact => states[..states.len() - 1].iter().position(|s| {
                    s.as_rational() == current.as_rational()
                }),
                Mode::Float { epsilon } => states[..states.len() - 1]
                    .iter()
                    .position(|s| (s.to_f64() - current.to_f64()).abs() < epsilon),
            };
            if entry.is_some() {
                return Ok(Orbit {
                    states,
                    digits: Word::new(digits, m)?,
                    cycle_entry: entry,
                });
            }
            if digits.len() == steps {
                return Ok(Orbit {
                    states,
                    digits: Word::new(digits, m)?,
                    cycle_entry: None,
                });
            }
            let (digit, image) = self.step(current)?;
            digits.push(digit);
            states.push(image);
        }
    }

    /// The branch segments of the transformation graph plus the diagonal,
    /// with `samples_per_branch` evenly spaced interior points per branch
    /// (0 for endpoints only).
    pub fn plot_data(&self, samples_per_branch: usize) -> Result<PlotSeries> {
        let mode = self.tuple.mode();
        let upper = self.tuple.upper_bound();
        let zero = Scalar::zero(&mode);
        let mut branches = Vec::with_capacity(self.tuple.m() + 1);
        for k in 0..=self.tuple.m() {
            let x0 = if k == 0 { &zero } else { &self.cuts[k - 1] }.clone();
            let x1 = if k == self.tuple.m() {
                &upper
            } else {
                &self.cuts[k]
            }
            .clone();
            let y0 = self.tuple.apply(k, &x0)?;
            let y1 = self.tuple.apply(k, &x1)?;
            let mut samples = Vec::with_capacity(samples_per_branch);
            let width = &x1 - &x0;
            let denom = Scalar::integer_in(samples_per_branch as i64 + 1, &mode);
            for i in 1..=samples_per_branch {
                let offset = &(&width * &Scalar::integer_in(i as i64, &mode)) / &denom;
                let x = &x0 + &offset;
                let y = self.tuple.apply(k, &x)?;
                samples.push([x, y]);
            }
            branches.push(Branch {
                k,
                x0,
                y0,
                x1,
                y1,
                incl: [self.shapes[k].left_closed, self.shapes[k].right_closed],
                samples,
            });
        }
        Ok(PlotSeries {
            branches,
            diagonal: true,
        })
    }
}

/// Digit streams are stored as `u8`; wider alphabets have no word
/// representation.
fn check_alphabet_width(tuple: &BaseTuple) -> Result<()> {
    if tuple.m() > u8::MAX as usize {
        return Err(Error::PreconditionFailed(format!(
            "alphabet maximum {} exceeds the supported width {}",
            tuple.m(),
            u8::MAX
        )));
    }
    Ok(())
}
