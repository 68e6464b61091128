//! Digit words: finite prefixes and eventually periodic infinite sequences.
//!
//! Infinite digit sequences are restricted to the eventually periodic class
//! `u·v^∞`, which is exactly what exact-arithmetic orbit detection can
//! produce and enough to state every classification this crate performs.
//! [`EpWord`] keeps a canonical form — primitive period, shortest preperiod —
//! so structural equality coincides with equality as infinite sequences, and
//! lexicographic comparison only needs finitely many positions.
//!
//! [`Word::project`] and [`EpWord::project`] evaluate the value a word
//! expands to under a base tuple: digit `d_i` contributes
//! `d_i / (β_{d_1} ⋯ β_{d_i})`. For the periodic tail the geometric series is
//! summed in closed form, so projection of an `EpWord` is exact in exact
//! mode.

use std::fmt;

use num_integer::Integer;
use serde::de::Error as _;
use serde::ser::SerializeStruct;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bases::BaseTuple;
use crate::error::{Error, Result};
use crate::numerics::Scalar;

fn check_digits(digits: &[u8], m: u8) -> Result<()> {
    for &d in digits {
        if d > m {
            return Err(Error::DigitOutOfRange {
                digit: d as u32,
                max: m as u32,
            });
        }
    }
    Ok(())
}

fn check_alphabet(word_m: u8, bt: &BaseTuple) -> Result<()> {
    if word_m as usize != bt.m() {
        return Err(Error::AlphabetMismatch {
            word_max: word_m as u32,
            tuple_max: bt.m() as u32,
        });
    }
    Ok(())
}

/// Running projection state over a digit slice: the partial sum and the
/// product of the bases consumed so far.
fn partial_projection(bt: &BaseTuple, digits: &[u8]) -> Result<(Scalar, Scalar)> {
    let mode = bt.mode();
    let mut sum = Scalar::zero(&mode);
    let mut prod = Scalar::one(&mode);
    for &d in digits {
        prod = &prod * bt.beta(d as usize)?;
        sum = &sum + &(&Scalar::integer_in(d as i64, &mode) / &prod);
    }
    Ok((sum, prod))
}

/// A finite digit word over the alphabet `{0, …, m}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    digits: Vec<u8>,
    m: u8,
}

impl Word {
    pub fn new(digits: Vec<u8>, m: u8) -> Result<Self> {
        check_digits(&digits, m)?;
        Ok(Word { digits, m })
    }

    pub fn empty(m: u8) -> Self {
        Word { digits: Vec::new(), m }
    }

    /// Parses a digit string such as `"101"`. Only single-character digits
    /// (alphabets up to `{0, …, 9}`) have a literal syntax.
    pub fn parse(text: &str, m: u8) -> Result<Self> {
        let digits = parse_digit_run(text)?;
        if digits.is_empty() {
            return Err(Error::Parse("empty word literal".into()));
        }
        Word::new(digits, m)
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digit(&self, i: usize) -> Option<u8> {
        self.digits.get(i).copied()
    }

    /// The word followed by one more digit; used by prefix-tree walkers.
    pub fn child(&self, digit: u8) -> Result<Self> {
        if digit > self.m {
            return Err(Error::DigitOutOfRange {
                digit: digit as u32,
                max: self.m as u32,
            });
        }
        let mut digits = self.digits.clone();
        digits.push(digit);
        Ok(Word { digits, m: self.m })
    }

    /// Value of the finite word under `bt` (the infinite tail of zeros
    /// contributes nothing).
    pub fn project(&self, bt: &BaseTuple) -> Result<Scalar> {
        check_alphabet(self.m, bt)?;
        bt.require_admissible()?;
        Ok(partial_projection(bt, &self.digits)?.0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_digit_run(f, &self.digits)
    }
}

impl Serialize for Word {
    /// Finite words serialize as their digit string (`"011"`).
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

/// An eventually periodic word `pre · period^∞` in canonical form: the period
/// is primitive (not a power of a shorter word) and the preperiod is as short
/// as possible (its last digit differs from the period's last digit).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpWord {
    pre: Vec<u8>,
    period: Vec<u8>,
    m: u8,
}

impl EpWord {
    pub fn new(pre: Vec<u8>, period: Vec<u8>, m: u8) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::PreconditionFailed(
                "the period of an eventually periodic word must be non-empty".into(),
            ));
        }
        check_digits(&pre, m)?;
        check_digits(&period, m)?;
        Ok(Self::canonical(pre, period, m))
    }

    /// The constant word `digit^∞`.
    pub fn constant(digit: u8, m: u8) -> Result<Self> {
        EpWord::new(Vec::new(), vec![digit], m)
    }

    /// A finite word read as `w · 0^∞`.
    pub fn from_finite(word: &Word) -> Self {
        Self::canonical(word.digits().to_vec(), vec![0], word.m())
    }

    fn canonical(mut pre: Vec<u8>, mut period: Vec<u8>, m: u8) -> Self {
        // Reduce the period to its primitive root.
        let p = period.len();
        for d in 1..p {
            if p.is_multiple_of(d) && (d..p).all(|i| period[i] == period[i - d]) {
                period.truncate(d);
                break;
            }
        }
        // Absorb preperiod digits that merely restate the cycle.
        while pre.last() == period.last() {
            pre.pop();
            period.rotate_right(1);
        }
        EpWord { pre, period, m }
    }

    /// Parses `"10(01)"` (preperiod `10`, period `01`) or `"(01)"`.
    pub fn parse(text: &str, m: u8) -> Result<Self> {
        match parse_word_literal(text, m)? {
            Parsed::Periodic(w) => Ok(w),
            Parsed::Finite(_) => Err(Error::Parse(format!(
                "{text:?} has no period; expected a literal like \"10(01)\""
            ))),
        }
    }

    pub fn pre(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.period
    }

    pub fn m(&self) -> u8 {
        self.m
    }

    /// Digit at 0-based position `i`.
    pub fn digit_at(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.period[(i - self.pre.len()) % self.period.len()]
        }
    }

    /// Number of positions after which tails repeat: every tail of the word
    /// equals one of the first `distinct_tails()` tails.
    pub fn distinct_tails(&self) -> usize {
        self.pre.len() + self.period.len()
    }

    /// The first `n` digits as a finite word.
    pub fn prefix(&self, n: usize) -> Word {
        Word {
            digits: (0..n).map(|i| self.digit_at(i)).collect(),
            m: self.m,
        }
    }

    /// The word with its first `n` digits removed.
    pub fn shift(&self, n: usize) -> EpWord {
        if n <= self.pre.len() {
            Self::canonical(self.pre[n..].to_vec(), self.period.clone(), self.m)
        } else {
            let mut period = self.period.clone();
            period.rotate_left((n - self.pre.len()) % self.period.len());
            Self::canonical(Vec::new(), period, self.m)
        }
    }

    /// Digit-wise reflection `d ↦ m − d`.
    pub fn complement(&self) -> EpWord {
        Self::canonical(
            self.pre.iter().map(|d| self.m - d).collect(),
            self.period.iter().map(|d| self.m - d).collect(),
            self.m,
        )
    }

    /// True when the word is eventually the constant zero (canonical period
    /// `(0)`).
    pub fn ends_in_zeros(&self) -> bool {
        self.period == [0]
    }

    /// True when the word is eventually the constant maximal digit.
    pub fn ends_in_max(&self) -> bool {
        self.period == [self.m]
    }

    /// Exact lexicographic comparison. Two eventually periodic words are
    /// compared by inspecting `|pre_a| + |pre_b| + lcm(|per_a|, |per_b|)`
    /// positions: past both preperiods the sequences share the period
    /// `lcm(|per_a|, |per_b|)`, so agreement over one such window implies
    /// equality everywhere.
    pub fn lex_cmp(&self, other: &EpWord) -> Result<std::cmp::Ordering> {
        if self.m != other.m {
            return Err(Error::AlphabetMismatch {
                word_max: self.m as u32,
                tuple_max: other.m as u32,
            });
        }
        let window = self.pre.len()
            + other.pre.len()
            + self.period.len().lcm(&other.period.len());
        for i in 0..window {
            match self.digit_at(i).cmp(&other.digit_at(i)) {
                std::cmp::Ordering::Equal => continue,
                other => return Ok(other),
            }
        }
        Ok(std::cmp::Ordering::Equal)
    }

    /// Exact value of the infinite word under `bt`: the preperiod contributes
    /// a finite sum, and the periodic tail solves
    /// `tail = π(period) + tail / Π(period)`.
    pub fn project(&self, bt: &BaseTuple) -> Result<Scalar> {
        check_alphabet(self.m, bt)?;
        bt.require_admissible()?;
        let (pre_sum, pre_prod) = partial_projection(bt, &self.pre)?;
        let (per_sum, per_prod) = partial_projection(bt, &self.period)?;
        let one = Scalar::one(&bt.mode());
        let tail = per_sum.checked_div(&(&one - &per_prod.recip()?))?;
        Ok(&pre_sum + &(&tail / &pre_prod))
    }
}

impl fmt::Display for EpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_digit_run(f, &self.pre)?;
        write!(f, "(")?;
        fmt_digit_run(f, &self.period)?;
        write!(f, ")")
    }
}

impl Serialize for EpWord {
    /// `{"pre":[1,0],"period":[0,1]}`.
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("EpWord", 2)?;
        s.serialize_field("pre", &self.pre)?;
        s.serialize_field("period", &self.period)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for EpWord {
    /// The JSON form carries no alphabet; the deserialized word uses the
    /// smallest alphabet containing its digits. Re-target with
    /// [`EpWord::with_alphabet`] before combining with a tuple.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Shadow {
            pre: Vec<u8>,
            period: Vec<u8>,
        }
        let shadow = Shadow::deserialize(deserializer)?;
        let m = shadow
            .pre
            .iter()
            .chain(shadow.period.iter())
            .copied()
            .max()
            .unwrap_or(0);
        EpWord::new(shadow.pre, shadow.period, m).map_err(D::Error::custom)
    }
}

impl EpWord {
    /// The same word over the alphabet `{0, …, m}`; fails if a digit exceeds
    /// the new maximum.
    pub fn with_alphabet(&self, m: u8) -> Result<EpWord> {
        EpWord::new(self.pre.clone(), self.period.clone(), m)
    }
}

/// A word literal: either finite (`"101"`) or eventually periodic
/// (`"10(01)"`).
#[derive(Clone, Debug, PartialEq)]
pub enum Parsed {
    Finite(Word),
    Periodic(EpWord),
}

/// Parses either word form. Finite literals must be non-empty; periodic
/// literals need a non-empty period.
pub fn parse_word_literal(text: &str, m: u8) -> Result<Parsed> {
    let text = text.trim();
    match text.split_once('(') {
        None => Ok(Parsed::Finite(Word::parse(text, m)?)),
        Some((pre, rest)) => {
            let period = rest
                .strip_suffix(')')
                .ok_or_else(|| Error::Parse(format!("unclosed period in {text:?}")))?;
            if period.contains('(') {
                return Err(Error::Parse(format!("nested period in {text:?}")));
            }
            let period = parse_digit_run(period)?;
            if period.is_empty() {
                return Err(Error::Parse(format!("empty period in {text:?}")));
            }
            Ok(Parsed::Periodic(EpWord::new(
                parse_digit_run(pre)?,
                period,
                m,
            )?))
        }
    }
}

fn parse_digit_run(text: &str) -> Result<Vec<u8>> {
    text.chars()
        .map(|c| {
            c.to_digit(10)
                .map(|d| d as u8)
                .ok_or_else(|| Error::Parse(format!("invalid digit {c:?}")))
        })
        .collect()
}

fn fmt_digit_run(f: &mut fmt::Formatter<'_>, digits: &[u8]) -> fmt::Result {
    if digits.iter().any(|&d| d > 9) {
        // Alphabets beyond {0..9} have no compact literal; fall back to a
        // comma-separated run.
        for (i, d) in digits.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    } else {
        for d in digits {
            write!(f, "{d}")?;
        }
        Ok(())
    }
}
