//! Classification of digit streams and orbit diagnostics.
//!
//! Two families of checks are provided.
//!
//! **Value criteria** ([`is_greedy`], [`is_quasi_greedy`], [`is_lazy`],
//! [`is_quasi_lazy`]) decide whether an eventually periodic word is the
//! output of the corresponding canonical transformation by comparing, at
//! selected positions, the projected value of the tail *starting at* that
//! position against the digit marks. These checks are exact biconditionals
//! in exact mode.
//!
//! **Order criteria** ([`classify_frontier`], [`classify_two_base`],
//! [`classify_monotone`]) compare, at selected positions, the tail *after*
//! that position lexicographically against reference words — quasi-greedy or
//! quasi-lazy expansions of the frontier constants. Because those reference
//! expansions may only be known to a finite depth, order criteria can return
//! [`Verdict::Undecided`] with the depth that was insufficient.
//!
//! The remaining operations derive one expansion from another:
//! quasi-greedy from greedy ([`quasi_from_greedy`]), the lazy/greedy
//! reflection symmetry for constant tuples ([`reflect_greedy`],
//! [`reflect_quasi`]), and the orbit entry indices into the frontier-bounded
//! region ([`entry_indices`]).

use std::cmp::Ordering;

use serde::Serialize;

use crate::bases::{BaseTuple, Frontier, Marks, MonotoneOrder};
use crate::error::{Error, Result};
use crate::numerics::{Cmp, Scalar};
use crate::transforms::{Expansion, Policy, Transform};
use crate::words::EpWord;

/// Outcome of one criterion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum Verdict {
    /// Every required comparison holds.
    Satisfied,
    /// `witness` is the least position (1-based) whose comparison provably
    /// fails.
    Violated { witness: usize },
    /// No comparison provably fails, but at least one could not be decided.
    /// For order criteria `depth` is the length at which the reference
    /// expansion truncated; for value criteria it is the first position
    /// whose float-mode comparison fell within tolerance of a strict bound.
    Undecided { depth: usize },
}

impl Verdict {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, Verdict::Satisfied)
    }

    /// Conjunction: any violation wins (least witness), else any
    /// undecidedness taints the result.
    pub fn and(self, other: Verdict) -> Verdict {
        match (self, other) {
            (Verdict::Violated { witness: a }, Verdict::Violated { witness: b }) => {
                Verdict::Violated { witness: a.min(b) }
            }
            (v @ Verdict::Violated { .. }, _) | (_, v @ Verdict::Violated { .. }) => v,
            (Verdict::Undecided { depth: a }, Verdict::Undecided { depth: b }) => {
                Verdict::Undecided { depth: a.min(b) }
            }
            (v @ Verdict::Undecided { .. }, _) | (_, v @ Verdict::Undecided { .. }) => v,
            (Verdict::Satisfied, Verdict::Satisfied) => Verdict::Satisfied,
        }
    }
}

fn check_alphabet(tuple: &BaseTuple, w: &EpWord) -> Result<()> {
    if usize::from(w.m()) != tuple.m() {
        return Err(Error::AlphabetMismatch {
            word_max: u32::from(w.m()),
            tuple_max: tuple.m() as u32,
        });
    }
    Ok(())
}

/// Applies `requirement` between the projected tail value and a digit mark at
/// every position carrying an eligible digit. Positions beyond
/// `w.distinct_tails()` repeat earlier tails, so scanning stops there.
fn value_criterion(
    tuple: &BaseTuple,
    w: &EpWord,
    eligible: impl Fn(u8) -> bool,
    mark: impl Fn(&Marks, u8) -> Scalar,
    requirement: ValueRequirement,
) -> Result<Verdict> {
    check_alphabet(tuple, w)?;
    let (marks, _) = tuple.require_admissible()?;
    let mut undecided_at: Option<usize> = None;
    for n in 1..=w.distinct_tails() {
        let digit = w.digit_at(n - 1);
        if !eligible(digit) {
            continue;
        }
        let tail_value = w.shift(n - 1).project(tuple)?;
        let bound = mark(marks, digit);
        let cmp = tail_value.compare(&bound)?;
        let outcome = requirement.judge(cmp);
        match outcome {
            ValueOutcome::Holds => {}
            ValueOutcome::Fails => return Ok(Verdict::Violated { witness: n }),
            ValueOutcome::Unknown => {
                undecided_at.get_or_insert(n);
            }
        }
    }
    Ok(match undecided_at {
        Some(depth) => Verdict::Undecided { depth },
        None => Verdict::Satisfied,
    })
}

#[derive(Clone, Copy)]
enum ValueRequirement {
    /// Strict `<`: a tolerance tie cannot be resolved either way.
    StrictlyBelow,
    /// Non-strict `≤`: a tolerance tie cannot refute it.
    AtMost,
    StrictlyAbove,
    AtLeast,
}

enum ValueOutcome {
    Holds,
    Fails,
    Unknown,
}

impl ValueRequirement {
    fn judge(self, cmp: Cmp) -> ValueOutcome {
        match self {
            ValueRequirement::StrictlyBelow => match cmp {
                Cmp::Less => ValueOutcome::Holds,
                Cmp::Ambiguous => ValueOutcome::Unknown,
                _ => ValueOutcome::Fails,
            },
            ValueRequirement::AtMost => {
                if cmp.permits_le() {
                    ValueOutcome::Holds
                } else {
                    ValueOutcome::Fails
                }
            }
            ValueRequirement::StrictlyAbove => match cmp {
                Cmp::Greater => ValueOutcome::Holds,
                Cmp::Ambiguous => ValueOutcome::Unknown,
                _ => ValueOutcome::Fails,
            },
            ValueRequirement::AtLeast => {
                if cmp.permits_ge() {
                    ValueOutcome::Holds
                } else {
                    ValueOutcome::Fails
                }
            }
        }
    }
}

/// Is `w` the greedy expansion of its own projected value? Holds iff at
/// every position with digit below the maximum, the tail value starting
/// there stays strictly below the next digit's lower mark.
pub fn is_greedy(tuple: &BaseTuple, w: &EpWord) -> Result<Verdict> {
    let m = w.m();
    value_criterion(
        tuple,
        w,
        |d| d < m,
        |marks, d| marks.lower[d as usize + 1].clone(),
        ValueRequirement::StrictlyBelow,
    )
}

/// Is `w` the quasi-greedy expansion of its (non-zero) projected value?
/// Requires the word not to end in an all-zeros tail and the tail values to
/// stay at or below the next digit's lower mark.
pub fn is_quasi_greedy(tuple: &BaseTuple, w: &EpWord) -> Result<Verdict> {
    check_alphabet(tuple, w)?;
    tuple.require_admissible()?;
    let x = w.project(tuple)?;
    match x.sign() {
        Cmp::Greater => {}
        Cmp::Equal => {
            return Err(Error::HypothesisNotMet(
                "the projected value must be non-zero".into(),
            ))
        }
        _ => {
            return Err(Error::BoundaryAmbiguity(
                "cannot decide whether the projected value is zero".into(),
            ))
        }
    }
    if w.ends_in_zeros() {
        return Ok(Verdict::Violated {
            witness: w.pre().len() + 1,
        });
    }
    let m = w.m();
    value_criterion(
        tuple,
        w,
        |d| d < m,
        |marks, d| marks.lower[d as usize + 1].clone(),
        ValueRequirement::AtMost,
    )
}

/// Is `w` the lazy expansion of its own projected value? Holds iff at every
/// position with digit above zero, the tail value starting there stays
/// strictly above the previous digit's upper mark.
pub fn is_lazy(tuple: &BaseTuple, w: &EpWord) -> Result<Verdict> {
    value_criterion(
        tuple,
        w,
        |d| d > 0,
        |marks, d| marks.upper[d as usize - 1].clone(),
        ValueRequirement::StrictlyAbove,
    )
}

/// Is `w` the quasi-lazy expansion of its projected value (which must not be
/// the domain supremum)? Requires the word not to end in an all-max tail and
/// the tail values to stay at or above the previous digit's upper mark.
pub fn is_quasi_lazy(tuple: &BaseTuple, w: &EpWord) -> Result<Verdict> {
    check_alphabet(tuple, w)?;
    tuple.require_admissible()?;
    let x = w.project(tuple)?;
    match x.compare(&tuple.upper_bound())? {
        Cmp::Less => {}
        Cmp::Equal => {
            return Err(Error::HypothesisNotMet(
                "the projected value must stay below the domain supremum".into(),
            ))
        }
        _ => {
            return Err(Error::BoundaryAmbiguity(
                "cannot decide whether the projected value is the domain supremum".into(),
            ))
        }
    }
    if w.ends_in_max() {
        return Ok(Verdict::Violated {
            witness: w.pre().len() + 1,
        });
    }
    value_criterion(
        tuple,
        w,
        |d| d > 0,
        |marks, d| marks.upper[d as usize - 1].clone(),
        ValueRequirement::AtLeast,
    )
}

/// Lexicographic comparison of a fully known word against a reference
/// expansion that may only be known to a finite depth.
enum RefCmp {
    Decided(Ordering),
    /// The words agree on every known reference digit.
    Unknown { depth: usize },
}

fn cmp_to_reference(tail: &EpWord, reference: &Expansion) -> RefCmp {
    match reference {
        Expansion::Periodic {
            word,
            approximate: false,
        } => RefCmp::Decided(tail.lex_cmp(word).expect("alphabets are aligned")),
        _ => {
            // Only the observed prefix of the reference is trustworthy.
            let known = match reference {
                Expansion::Periodic { word, .. } => word.distinct_tails(),
                Expansion::Truncated { prefix } => prefix.len(),
            };
            for i in 0..known {
                let r = reference.digit_at(i).expect("within known prefix");
                match tail.digit_at(i).cmp(&r) {
                    Ordering::Equal => continue,
                    decided => return RefCmp::Decided(decided),
                }
            }
            RefCmp::Unknown { depth: known }
        }
    }
}

#[derive(Clone, Copy)]
enum OrderRequirement {
    /// Tail must come strictly before the reference.
    Precedes,
    /// Tail must come strictly after the reference.
    Succeeds,
}

/// Applies `requirement` between the shifted tail *after* each eligible
/// position and a reference expansion.
fn order_criterion(
    w: &EpWord,
    eligible: impl Fn(u8) -> bool,
    reference: &Expansion,
    requirement: OrderRequirement,
) -> Verdict {
    let mut undecided_at: Option<usize> = None;
    for n in 1..=w.distinct_tails() {
        if !eligible(w.digit_at(n - 1)) {
            continue;
        }
        let tail = w.shift(n);
        let holds = match cmp_to_reference(&tail, reference) {
            RefCmp::Decided(ord) => match requirement {
                OrderRequirement::Precedes => ord == Ordering::Less,
                OrderRequirement::Succeeds => ord == Ordering::Greater,
            },
            RefCmp::Unknown { depth } => {
                undecided_at.get_or_insert(depth);
                continue;
            }
        };
        if !holds {
            return Verdict::Violated { witness: n };
        }
    }
    match undecided_at {
        Some(depth) => Verdict::Undecided { depth },
        None => Verdict::Satisfied,
    }
}

/// Expands a reference point under the given canonical policy to at most
/// `depth` digits.
fn reference_expansion(
    tuple: &BaseTuple,
    point: &Scalar,
    policy: Policy,
    depth: usize,
) -> Result<Expansion> {
    Transform::canonical(tuple, policy)?.expand(point, depth)
}

/// Reference words bounding greedy and lazy digit streams from both sides.
struct OrderReferences {
    /// Quasi-greedy expansion of the greedy frontier maximum (necessity).
    greedy_hi: Expansion,
    /// Quasi-greedy expansion of the greedy frontier minimum (sufficiency).
    greedy_lo: Expansion,
    /// Quasi-lazy expansion of the lazy frontier minimum (necessity).
    lazy_lo: Expansion,
    /// Quasi-lazy expansion of the lazy frontier maximum (sufficiency).
    lazy_hi: Expansion,
}

impl OrderReferences {
    fn at_frontier(tuple: &BaseTuple, frontier: &Frontier, depth: usize) -> Result<Self> {
        Ok(OrderReferences {
            greedy_hi: reference_expansion(tuple, &frontier.greedy_max, Policy::QuasiGreedy, depth)?,
            greedy_lo: reference_expansion(tuple, &frontier.greedy_min, Policy::QuasiGreedy, depth)?,
            lazy_lo: reference_expansion(tuple, &frontier.lazy_min, Policy::QuasiLazy, depth)?,
            lazy_hi: reference_expansion(tuple, &frontier.lazy_max, Policy::QuasiLazy, depth)?,
        })
    }
}

/// Order-theoretic classification of a digit stream against the four
/// frontier references.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FrontierReport {
    /// Fails only if `w` is not a greedy output.
    pub greedy_necessary: Verdict,
    /// Holds only if `w` is a greedy output.
    pub greedy_sufficient: Verdict,
    pub lazy_necessary: Verdict,
    pub lazy_sufficient: Verdict,
    pub unique_necessary: Verdict,
    pub unique_sufficient: Verdict,
}

/// Checks the frontier order conditions for `w`: tails after sub-maximal
/// digits must precede the quasi-greedy expansions of the greedy frontier
/// constants, and tails after non-zero digits must succeed the quasi-lazy
/// expansions of the lazy frontier constants. Reference expansions are
/// developed to at most `depth` digits.
pub fn classify_frontier(tuple: &BaseTuple, w: &EpWord, depth: usize) -> Result<FrontierReport> {
    check_alphabet(tuple, w)?;
    let (_, frontier) = tuple.require_admissible()?;
    let refs = OrderReferences::at_frontier(tuple, &frontier.clone(), depth)?;
    Ok(report_from_references(w, &refs))
}

fn report_from_references(w: &EpWord, refs: &OrderReferences) -> FrontierReport {
    let m = w.m();
    let greedy_necessary =
        order_criterion(w, |d| d < m, &refs.greedy_hi, OrderRequirement::Precedes);
    let greedy_sufficient =
        order_criterion(w, |d| d < m, &refs.greedy_lo, OrderRequirement::Precedes);
    let lazy_necessary = order_criterion(w, |d| d > 0, &refs.lazy_lo, OrderRequirement::Succeeds);
    let lazy_sufficient = order_criterion(w, |d| d > 0, &refs.lazy_hi, OrderRequirement::Succeeds);
    FrontierReport {
        greedy_necessary,
        greedy_sufficient,
        lazy_necessary,
        lazy_sufficient,
        unique_necessary: greedy_necessary.and(lazy_necessary),
        unique_sufficient: greedy_sufficient.and(lazy_sufficient),
    }
}

/// Exact characterization available for a pair of bases that both lie in
/// `(1, 2]`: the frontier maxima and minima coincide, so each condition is
/// an if-and-only-if.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TwoBaseReport {
    pub greedy: Verdict,
    pub lazy: Verdict,
    pub unique: Verdict,
}

/// Classifies a binary digit stream over a pair of bases `(β_0, β_1)` with
/// both entries in `(1, 2]`. Every verdict is a full characterization; the
/// references are the quasi-greedy expansion of `β_0/β_1` and the quasi-lazy
/// expansion of `β_1/(β_0·(β_1 − 1)) − 1`.
pub fn classify_two_base(tuple: &BaseTuple, w: &EpWord, depth: usize) -> Result<TwoBaseReport> {
    check_alphabet(tuple, w)?;
    let (_, frontier) = tuple.require_admissible()?;
    if tuple.m() != 1 {
        return Err(Error::PreconditionFailed(
            "the pair classification needs exactly two bases".into(),
        ));
    }
    let two = Scalar::integer_in(2, &tuple.mode());
    for k in 0..=1 {
        if !tuple.beta(k)?.decide_le(&two)? {
            return Err(Error::PreconditionFailed(
                "the pair classification needs both bases in (1, 2]".into(),
            ));
        }
    }
    // With two bases in (1, 2] the frontier maxima and minima coincide, so
    // one reference per side suffices.
    debug_assert!(frontier.greedy_max.decide_eq(&frontier.greedy_min).unwrap_or(true));
    debug_assert!(frontier.lazy_max.decide_eq(&frontier.lazy_min).unwrap_or(true));
    let refs = OrderReferences::at_frontier(tuple, &frontier.clone(), depth)?;
    let report = report_from_references(w, &refs);
    Ok(TwoBaseReport {
        greedy: report.greedy_necessary,
        lazy: report.lazy_necessary,
        unique: report.unique_necessary,
    })
}

/// Direction in which the order conditions bind for a monotone tuple.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConditionRole {
    /// Ascending bases: the conditions are implied by the property.
    Necessary,
    /// Descending bases: the conditions imply the property.
    Sufficient,
    /// Constant base: the conditions characterize the property.
    NecessaryAndSufficient,
}

/// Classification against the fixed reference points available when the
/// bases are monotone along the alphabet.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MonotoneReport {
    pub order: MonotoneOrder,
    pub role: ConditionRole,
    pub greedy: Verdict,
    pub lazy: Verdict,
    pub unique: Verdict,
}

/// Classifies `w` using the reference points `1` (quasi-greedy side) and
/// `U − 1` (quasi-lazy side), which bound the frontier constants whenever
/// the tuple is monotone. Ascending tuples make the conditions necessary,
/// descending ones sufficient, constant ones exact.
pub fn classify_monotone(tuple: &BaseTuple, w: &EpWord, depth: usize) -> Result<MonotoneReport> {
    check_alphabet(tuple, w)?;
    tuple.require_admissible()?;
    let order = tuple.monotone_order();
    let role = match order {
        MonotoneOrder::Ascending => ConditionRole::Necessary,
        MonotoneOrder::Descending => ConditionRole::Sufficient,
        MonotoneOrder::Constant => ConditionRole::NecessaryAndSufficient,
        MonotoneOrder::Neither => {
            return Err(Error::PreconditionFailed(
                "the bases must be monotone along the alphabet".into(),
            ))
        }
    };
    let one = Scalar::one(&tuple.mode());
    let upper = tuple.upper_bound();
    // Both reference points exist iff U ≥ 1; otherwise 1 exceeds the domain
    // and U − 1 undershoots it.
    if !upper.compare(&one)?.permits_ge() {
        return Err(Error::OutOfDomain {
            value: one.to_string(),
            upper: upper.to_string(),
        });
    }
    let m = w.m();
    let greedy_ref = reference_expansion(tuple, &one, Policy::QuasiGreedy, depth)?;
    let lazy_ref = reference_expansion(tuple, &(&upper - &one), Policy::QuasiLazy, depth)?;
    let greedy = order_criterion(w, |d| d < m, &greedy_ref, OrderRequirement::Precedes);
    let lazy = order_criterion(w, |d| d > 0, &lazy_ref, OrderRequirement::Succeeds);
    Ok(MonotoneReport {
        order,
        role,
        greedy,
        lazy,
        unique: greedy.and(lazy),
    })
}

/// Rewrites a greedy expansion into the quasi-greedy expansion of the same
/// value. A greedy output that does not end in zeros is already quasi-greedy
/// and is returned unchanged. One that ends in zeros, with final non-zero
/// digit `g` at position `n`, is rewritten to
/// `prefix · (g − 1) ·` (quasi-greedy digits of the image of `lower[g]`
/// under branch `g − 1`), which may itself truncate at `depth`.
pub fn quasi_from_greedy(tuple: &BaseTuple, greedy: &EpWord, depth: usize) -> Result<Expansion> {
    check_alphabet(tuple, greedy)?;
    let (marks, _) = tuple.require_admissible()?;
    match is_greedy(tuple, greedy)? {
        Verdict::Satisfied => {}
        Verdict::Violated { witness } => {
            return Err(Error::PreconditionFailed(format!(
                "the word is not a greedy output (tail {witness} fails)"
            )))
        }
        Verdict::Undecided { depth } => {
            return Err(Error::PreconditionFailed(format!(
                "cannot certify the word as a greedy output (undecided at position {depth})"
            )))
        }
    }
    if !greedy.ends_in_zeros() {
        return Ok(Expansion::Periodic {
            word: greedy.clone(),
            approximate: false,
        });
    }
    // Canonical form absorbs trailing zeros into the period, so the final
    // non-zero digit is the last digit of the preperiod.
    let Some((&last, head)) = greedy.pre().split_last() else {
        return Err(Error::HypothesisNotMet(
            "the all-zeros word has no final non-zero digit to lower".into(),
        ));
    };
    debug_assert!(last > 0);
    let restart = tuple.apply(usize::from(last) - 1, &marks.lower[usize::from(last)])?;
    let inner = Transform::canonical(tuple, Policy::QuasiGreedy)?.expand(&restart, depth)?;
    let mut stem = head.to_vec();
    stem.push(last - 1);
    Ok(match inner {
        Expansion::Periodic { word, approximate } => {
            let mut pre = stem;
            pre.extend_from_slice(word.pre());
            Expansion::Periodic {
                word: EpWord::new(pre, word.period().to_vec(), greedy.m())?,
                approximate,
            }
        }
        Expansion::Truncated { prefix } => {
            stem.extend_from_slice(prefix.digits());
            Expansion::Truncated {
                prefix: crate::words::Word::new(stem, greedy.m())?,
            }
        }
    })
}

/// The same digit stream computed along two routes that must agree.
#[derive(Clone, Debug, PartialEq)]
pub struct ReflectionPair {
    /// Expansion of the reflected point `U − x` under the mirror policy.
    pub via_reflected: EpWord,
    /// Digit-complement of the expansion of `x` under the original policy.
    pub via_complement: EpWord,
}

impl ReflectionPair {
    pub fn agree(&self) -> bool {
        self.via_reflected == self.via_complement
    }
}

fn reflect(
    tuple: &BaseTuple,
    x: &Scalar,
    forward: Policy,
    mirror: Policy,
    depth: usize,
) -> Result<ReflectionPair> {
    if !tuple.is_constant() {
        return Err(Error::NotConstantBase);
    }
    tuple.require_admissible()?;
    let upper = tuple.upper_bound();
    if !(x.sign().permits_ge() && x.compare(&upper)?.permits_le()) {
        return Err(Error::OutOfDomain {
            value: x.to_string(),
            upper: upper.to_string(),
        });
    }
    let reflected = &upper - x;
    let forward_exp = Transform::canonical(tuple, forward)?.expand(x, depth)?;
    let mirror_exp = Transform::canonical(tuple, mirror)?.expand(&reflected, depth)?;
    let via_complement = match forward_exp {
        Expansion::Periodic { word, .. } => word.complement(),
        Expansion::Truncated { .. } => {
            return Err(Error::PreconditionFailed(format!(
                "the {} orbit did not close into a cycle within {depth} digits",
                forward.name()
            )))
        }
    };
    let via_reflected = match mirror_exp {
        Expansion::Periodic { word, .. } => word,
        Expansion::Truncated { .. } => {
            return Err(Error::PreconditionFailed(format!(
                "the {} orbit did not close into a cycle within {depth} digits",
                mirror.name()
            )))
        }
    };
    Ok(ReflectionPair {
        via_reflected,
        via_complement,
    })
}

/// For a constant tuple, the lazy expansion of `U − x` equals the digit
/// complement of the greedy expansion of `x`. Returns both routes.
pub fn reflect_greedy(tuple: &BaseTuple, x: &Scalar, depth: usize) -> Result<ReflectionPair> {
    reflect(tuple, x, Policy::Greedy, Policy::Lazy, depth)
}

/// Quasi variant of [`reflect_greedy`]: quasi-lazy expansion of `U − x`
/// versus the complement of the quasi-greedy expansion of `x`.
pub fn reflect_quasi(tuple: &BaseTuple, x: &Scalar, depth: usize) -> Result<ReflectionPair> {
    reflect(tuple, x, Policy::QuasiGreedy, Policy::QuasiLazy, depth)
}

/// First times the greedy and lazy orbits of a point enter the frontier-
/// bounded region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct EntryIndices {
    /// Least `i` with the `i`-th greedy iterate strictly below the greedy
    /// frontier maximum; `None` for the domain supremum, whose greedy orbit
    /// never descends.
    pub greedy: Option<usize>,
    /// Least `i` with the `i`-th lazy iterate strictly above the lazy
    /// frontier minimum; `None` for zero, whose lazy orbit never ascends.
    pub lazy: Option<usize>,
}

/// Computes [`EntryIndices`] for `x`, giving up past `max_iter` iterations.
pub fn entry_indices(tuple: &BaseTuple, x: &Scalar, max_iter: usize) -> Result<EntryIndices> {
    let (_, frontier) = tuple.require_admissible()?;
    let frontier = frontier.clone();
    let upper = tuple.upper_bound();
    if !(x.sign().permits_ge() && x.compare(&upper)?.permits_le()) {
        return Err(Error::OutOfDomain {
            value: x.to_string(),
            upper: upper.to_string(),
        });
    }
    let greedy = if x.decide_eq(&upper)? {
        None
    } else {
        let t = Transform::canonical(tuple, Policy::Greedy)?;
        Some(first_entry(&t, x, max_iter, |state| {
            match state.compare(&frontier.greedy_max)? {
                Cmp::Less => Ok(true),
                Cmp::Ambiguous => Err(Error::BoundaryAmbiguity(format!(
                    "iterate {state} is within tolerance of the frontier constant"
                ))),
                _ => Ok(false),
            }
        })?)
    };
    let lazy = if x.sign() == Cmp::Equal {
        None
    } else {
        let t = Transform::canonical(tuple, Policy::Lazy)?;
        Some(first_entry(&t, x, max_iter, |state| {
            match state.compare(&frontier.lazy_min)? {
                Cmp::Greater => Ok(true),
                Cmp::Ambiguous => Err(Error::BoundaryAmbiguity(format!(
                    "iterate {state} is within tolerance of the frontier constant"
                ))),
                _ => Ok(false),
            }
        })?)
    };
    Ok(EntryIndices { greedy, lazy })
}

fn first_entry(
    transform: &Transform,
    x: &Scalar,
    max_iter: usize,
    entered: impl Fn(&Scalar) -> Result<bool>,
) -> Result<usize> {
    let mut state = x.clone();
    for i in 0..=max_iter {
        if entered(&state)? {
            return Ok(i);
        }
        state = transform.step(&state)?.1;
    }
    Err(Error::IterationBudgetExceeded {
        budget: max_iter,
    })
}
