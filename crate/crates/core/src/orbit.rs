//! The orbit test: a half-odd integer `(2n+1)/2` in the `G_α`-orbit of `0`
//! or `∞` certifies that `α` is a relation number.
//!
//! The search returns the canonical witness: fewest generator applications,
//! then basepoint `0` before `∞`, then the application sequence that is
//! lexicographically first in the order `A, A⁻¹, B, B⁻¹` (first application
//! most significant). It runs as an iterative-deepening depth-first search,
//! which needs memory linear in the depth and finds the same witness as a
//! breadth-first search over orbit points.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{evaluate_word, Mat2, ProjPoint};
use crate::scalar::{
    half_odd_integer, half_odd_integer_rational, on_field, parse_rational, rational_to_string,
    ExactField, Scalar,
};
use crate::word::{mirror_partner, Generator, ReducedWord, Syllable};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basepoint {
    Zero,
    Infinity,
}

impl Basepoint {
    pub fn point<T: ExactField>(self) -> ProjPoint<T> {
        match self {
            Basepoint::Zero => ProjPoint::zero(),
            Basepoint::Infinity => ProjPoint::Infinity,
        }
    }
}

impl fmt::Display for Basepoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Basepoint::Zero => "0",
            Basepoint::Infinity => "inf",
        })
    }
}

impl std::str::FromStr for Basepoint {
    type Err = Error;
    fn from_str(s: &str) -> Result<Basepoint> {
        match s.trim() {
            "0" => Ok(Basepoint::Zero),
            "inf" | "∞" | "infinity" => Ok(Basepoint::Infinity),
            _ => Err(Error::parse("basepoint", s)),
        }
    }
}

impl Serialize for Basepoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Basepoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// `word·basepoint = value = (2·half_index + 1)/2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub alpha: Scalar,
    pub basepoint: Basepoint,
    pub word: ReducedWord,
    pub value: Scalar,
    #[serde(with = "bigint_text")]
    pub half_index: BigInt,
    /// Generator applications, `Σ|exponents|`.
    pub depth: u64,
}

mod bigint_text {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(n)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

impl Witness {
    /// `A^{-n}·word`, which sends the basepoint to `1/2`.
    pub fn normalized(&self) -> Witness {
        let shift = ReducedWord::generator(Generator::A, -self.half_index.to_i64().unwrap_or(0));
        let word = if self.half_index.is_zero() {
            self.word.clone()
        } else {
            shift.concat(&self.word)
        };
        Witness {
            alpha: self.alpha.clone(),
            basepoint: self.basepoint,
            depth: word.generator_len(),
            word,
            value: Scalar::Rational(BigRational::new(1.into(), 2.into())),
            half_index: BigInt::zero(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchBudget {
    /// Generator applications.
    pub max_depth: usize,
    /// Cap on the bit size of every integer in a visited point.
    pub max_height: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_depth: 14,
            max_height: 256,
        }
    }
}

/// One generator application, in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Step {
    A,
    AInv,
    B,
    BInv,
}

const STEPS: [Step; 4] = [Step::A, Step::AInv, Step::B, Step::BInv];

impl Step {
    fn inverse(self) -> Step {
        match self {
            Step::A => Step::AInv,
            Step::AInv => Step::A,
            Step::B => Step::BInv,
            Step::BInv => Step::B,
        }
    }

    fn syllable(self) -> Syllable {
        match self {
            Step::A => Syllable::new(Generator::A, 1),
            Step::AInv => Syllable::new(Generator::A, -1),
            Step::B => Syllable::new(Generator::B, 1),
            Step::BInv => Syllable::new(Generator::B, -1),
        }
    }
}

enum Moved<P> {
    To(P),
    /// Beyond the height cap; the branch is dropped.
    Pruned,
    /// The fast representation overflowed; the whole search is redone exactly.
    Overflow,
}

trait Orbit {
    type Point: Clone + PartialEq;
    fn start(&self, b: Basepoint) -> Self::Point;
    fn step(&self, p: &Self::Point, s: Step) -> Moved<Self::Point>;
    fn is_half_odd(&self, p: &Self::Point) -> bool;
}

/// Exact action on `ProjPoint<T>`.
struct ExactOrbit<T> {
    mats: [Mat2<T>; 4],
    max_height: u64,
}

impl<T: ExactField> ExactOrbit<T> {
    fn new(alpha: &T, max_height: u64) -> Self {
        ExactOrbit {
            mats: [
                Mat2::gen_a(),
                Mat2::gen_a_pow(-1),
                Mat2::gen_b(alpha),
                Mat2::gen_b_pow(alpha, -1),
            ],
            max_height,
        }
    }
}

impl<T: ExactField> Orbit for ExactOrbit<T> {
    type Point = ProjPoint<T>;

    fn start(&self, b: Basepoint) -> ProjPoint<T> {
        b.point()
    }

    fn step(&self, p: &ProjPoint<T>, s: Step) -> Moved<ProjPoint<T>> {
        let q = self.mats[s as usize].apply(p);
        if q.height_bits() > self.max_height {
            Moved::Pruned
        } else {
            Moved::To(q)
        }
    }

    fn is_half_odd(&self, p: &ProjPoint<T>) -> bool {
        p.finite()
            .and_then(ExactField::to_rational)
            .is_some_and(|q| half_odd_integer_rational(&q).is_some())
    }
}

/// Rational `α = a/b` acting on coprime homogeneous pairs `(x : y)`, `y ≥ 0`,
/// in `i128`.
struct SmallOrbit {
    a: i128,
    b: i128,
    max_height: u64,
}

fn gcd_i128(mut x: i128, mut y: i128) -> i128 {
    x = x.abs();
    y = y.abs();
    while y != 0 {
        (x, y) = (y, x % y);
    }
    x
}

fn bits_i128(x: i128) -> u64 {
    128 - x.unsigned_abs().leading_zeros() as u64
}

impl SmallOrbit {
    fn new(alpha: &BigRational, max_height: u64) -> Option<Self> {
        Some(SmallOrbit {
            a: alpha.numer().to_i128()?,
            b: alpha.denom().to_i128()?,
            max_height,
        })
    }

    fn finish(&self, x: i128, y: i128) -> Moved<(i128, i128)> {
        let g = gcd_i128(x, y);
        let (mut x, mut y) = (x / g, y / g);
        if y < 0 || (y == 0 && x < 0) {
            x = -x;
            y = -y;
        }
        if bits_i128(x).max(bits_i128(y)) > self.max_height {
            Moved::Pruned
        } else {
            Moved::To((x, y))
        }
    }
}

impl Orbit for SmallOrbit {
    type Point = (i128, i128);

    fn start(&self, b: Basepoint) -> (i128, i128) {
        match b {
            Basepoint::Zero => (0, 1),
            Basepoint::Infinity => (1, 0),
        }
    }

    fn step(&self, &(x, y): &(i128, i128), s: Step) -> Moved<(i128, i128)> {
        let moved = match s {
            Step::A => x.checked_add(y).map(|x2| (x2, y)),
            Step::AInv => x.checked_sub(y).map(|x2| (x2, y)),
            // (x : y) ↦ (x : αx + y) = (b·x : a·x + b·y)
            Step::B | Step::BInv => {
                let a = if s == Step::B { self.a } else { -self.a };
                (|| {
                    let bx = self.b.checked_mul(x)?;
                    let y2 = a.checked_mul(x)?.checked_add(self.b.checked_mul(y)?)?;
                    Some((bx, y2))
                })()
            }
        };
        match moved {
            Some((x2, y2)) => self.finish(x2, y2),
            None => Moved::Overflow,
        }
    }

    fn is_half_odd(&self, &(x, y): &(i128, i128)) -> bool {
        y == 2 && x % 2 != 0
    }
}

struct Found {
    basepoint: Basepoint,
    steps: Vec<Step>,
}

/// Iterative deepening: each length is tried from `0`, then from `∞`, so the
/// first hit is the canonical witness. `Err(())` signals overflow.
fn search<O: Orbit>(orbit: &O, max_depth: usize) -> std::result::Result<Option<Found>, ()> {
    let bases = [Basepoint::Zero, Basepoint::Infinity];
    for bp in bases {
        if orbit.is_half_odd(&orbit.start(bp)) {
            return Ok(Some(Found {
                basepoint: bp,
                steps: Vec::new(),
            }));
        }
    }
    for len in 1..=max_depth {
        for bp in bases {
            let mut points = vec![orbit.start(bp)];
            let mut steps = Vec::with_capacity(len);
            if dfs(orbit, &mut points, &mut steps, len)? {
                return Ok(Some(Found {
                    basepoint: bp,
                    steps,
                }));
            }
        }
    }
    Ok(None)
}

/// First hit in lexicographic order using exactly `len` applications; on
/// success `steps` holds it.
fn dfs<O: Orbit>(
    orbit: &O,
    points: &mut Vec<O::Point>,
    steps: &mut Vec<Step>,
    len: usize,
) -> std::result::Result<bool, ()> {
    for s in STEPS {
        if steps.last().is_some_and(|&prev| prev == s.inverse()) {
            continue;
        }
        let next = match orbit.step(points.last().unwrap(), s) {
            Moved::To(p) => p,
            Moved::Pruned => continue,
            Moved::Overflow => return Err(()),
        };
        // a revisit never lies on a shortest sequence
        if points.contains(&next) {
            continue;
        }
        steps.push(s);
        if steps.len() == len {
            if orbit.is_half_odd(&next) {
                return Ok(true);
            }
        } else {
            points.push(next);
            if dfs(orbit, points, steps, len)? {
                return Ok(true);
            }
            points.pop();
        }
        steps.pop();
    }
    Ok(false)
}

fn word_of(steps: &[Step]) -> ReducedWord {
    // the last application is the leftmost factor
    ReducedWord::from_syllables(steps.iter().rev().map(|s| s.syllable()))
}

fn witness_from<T: ExactField>(alpha: &T, found: Found) -> Result<Witness> {
    let word = word_of(&found.steps);
    let value = evaluate_word(&word, alpha).apply(&found.basepoint.point());
    let value = value
        .finite()
        .cloned()
        .ok_or_else(|| Error::InternalInconsistency("witness lands on infinity".into()))?
        .to_scalar();
    let half_index = half_odd_integer(&value).ok_or_else(|| {
        Error::InternalInconsistency(format!("witness value {value} is not half-odd"))
    })?;
    let w = Witness {
        alpha: alpha.to_scalar(),
        basepoint: found.basepoint,
        depth: word.generator_len(),
        word,
        value,
        half_index,
    };
    debug_assert_eq!(w.depth as usize, found.steps.len());
    Ok(w)
}

/// The canonical witness within `budget`, or `None` (inconclusive).
pub fn orbit_search<T: ExactField>(alpha: &T, budget: SearchBudget) -> Result<Option<Witness>> {
    if alpha.is_zero() {
        return Err(Error::DegenerateAlpha);
    }
    if let Some(q) = alpha.to_rational() {
        if let Some(small) = SmallOrbit::new(&q, budget.max_height) {
            if let Ok(found) = search(&small, budget.max_depth) {
                return found.map(|f| witness_from(alpha, f)).transpose();
            }
        }
    }
    let exact = ExactOrbit::new(alpha, budget.max_height);
    let found = search(&exact, budget.max_depth).expect("exact arithmetic does not overflow");
    found.map(|f| witness_from(alpha, f)).transpose()
}

/// [`orbit_search`] on a tagged scalar.
pub fn orbit_bfs(alpha: &Scalar, budget: SearchBudget) -> Result<Option<Witness>> {
    on_field!(alpha, a => orbit_search(a, budget))
}

/// Re-evaluates the word exactly; true iff it reproduces the claimed
/// half-odd value and index.
pub fn verify_witness(w: &Witness) -> bool {
    let Some(hi) = half_odd_integer(&w.value) else {
        return false;
    };
    if hi != w.half_index {
        return false;
    }
    on_field!(&w.alpha, a => {
        let image = evaluate_word(&w.word, a).apply(&w.basepoint.point());
        image.finite().is_some_and(|v| v.to_scalar() == w.value)
    })
}

/// `x1·mirror(x)` for a witness at basepoint `0` with value `1/2`.
pub fn mirror_witness(w: &Witness) -> Witness {
    let word = mirror_partner(&w.word);
    Witness {
        depth: word.generator_len(),
        word,
        ..w.clone()
    }
}

#[derive(Debug, Clone, Deserialize)]
struct TableRowRepr {
    alpha: String,
    word: String,
    basepoint: String,
    value: String,
    #[serde(default)]
    printed_word: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub alpha: String,
    pub word: ReducedWord,
    pub basepoint: Basepoint,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
    /// Set when the bundled word corrects a misprint; the printed word is
    /// evaluated too.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub printed_word: Option<PrintedWord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrintedWord {
    pub word: ReducedWord,
    pub computed: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub rows: Vec<TableRow>,
    pub passed: usize,
    pub total: usize,
}

const TABLE1: &str = include_str!("../data/table1.json");

/// Replays the bundled table of rational relation numbers.
pub fn verify_table() -> Result<TableReport> {
    verify_table_from(TABLE1)
}

pub fn verify_table_from(json: &str) -> Result<TableReport> {
    let rows: Vec<TableRowRepr> = serde_json::from_str(json)
        .map_err(|e| Error::MissingData(format!("table data unreadable: {e}")))?;
    if rows.is_empty() {
        return Err(Error::MissingData("table data has no rows".into()));
    }
    let eval = |alpha: &BigRational, word: &ReducedWord, bp: Basepoint| {
        let image = evaluate_word(word, alpha).apply(&bp.point());
        image
            .finite()
            .map_or_else(|| "inf".to_string(), rational_to_string)
    };
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let alpha = parse_rational(&r.alpha)?;
        let word: ReducedWord = r.word.parse()?;
        let basepoint: Basepoint = r.basepoint.parse()?;
        let expected = parse_rational(&r.value)?;
        let computed = eval(&alpha, &word, basepoint);
        let pass = computed == rational_to_string(&expected)
            && half_odd_integer_rational(&expected).is_some();
        let printed_word = r
            .printed_word
            .map(|text| -> Result<PrintedWord> {
                let word: ReducedWord = text.parse()?;
                let computed = eval(&alpha, &word, basepoint);
                Ok(PrintedWord { word, computed })
            })
            .transpose()?;
        out.push(TableRow {
            alpha: rational_to_string(&alpha),
            word,
            basepoint,
            expected: rational_to_string(&expected),
            computed,
            pass,
            printed_word,
        });
    }
    let passed = out.iter().filter(|r| r.pass).count();
    Ok(TableReport {
        total: out.len(),
        rows: out,
        passed,
    })
}

/// Closed-form witnesses for `α = m/n`, `m ∈ {1, 2, 3}`:
/// `B^{2n}(∞) = 1/2`, `B(∞) = n/2` (n odd), `B^n A⁻¹(0) = 1/2`.
pub fn standard_families(m: i64, n: i64) -> Result<Witness> {
    if n == 0 {
        return Err(Error::DegenerateAlpha);
    }
    let (word, basepoint) = match m {
        1 => (
            ReducedWord::generator(Generator::B, 2 * n),
            Basepoint::Infinity,
        ),
        2 => {
            if n.is_even() {
                return Err(Error::NotHalfOdd(n));
            }
            (ReducedWord::generator(Generator::B, 1), Basepoint::Infinity)
        }
        3 => (
            ReducedWord::from_syllables([
                Syllable::new(Generator::B, n),
                Syllable::new(Generator::A, -1),
            ]),
            Basepoint::Zero,
        ),
        _ => return Err(Error::UnknownFamily(m)),
    };
    let alpha = BigRational::new(m.into(), n.into());
    let image = evaluate_word(&word, &alpha).apply(&basepoint.point());
    let value = image
        .finite()
        .cloned()
        .ok_or_else(|| Error::InternalInconsistency("family word lands on infinity".into()))?;
    let half_index = half_odd_integer_rational(&value).ok_or_else(|| {
        Error::InternalInconsistency(format!("family value {value} is not half-odd"))
    })?;
    let w = Witness {
        alpha: Scalar::Rational(alpha),
        basepoint,
        depth: word.generator_len(),
        word,
        value: Scalar::Rational(value),
        half_index,
    };
    if !verify_witness(&w) {
        return Err(Error::InternalInconsistency(
            "family witness failed re-verification".into(),
        ));
    }
    Ok(w)
}

impl Witness {
    pub fn value_is_one_half(&self) -> bool {
        self.half_index.is_zero()
    }

    pub fn approx_value(&self) -> f64 {
        on_field!(&self.value, v => v.approx_f64())
    }
}
