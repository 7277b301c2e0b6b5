//! Checkered `q`/`1` fillings of Young diagrams and the two routes to their
//! weights: direct box counting, and counting sign changes of a sign vector
//! driven along a reduced word.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schubert::{box_label, canonical_reduced_word, BruhatGraph, Partition, ReducedWord};
use crate::shape::GrassmannShape;

/// Which checkerboard parity is used.
///
/// `Standard` puts `q` on boxes labeled `s_m` with `m ≡ k (mod 2)`, so the
/// first box of the top row carries `q`. `Shifted` is the complement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FillVariant {
    Standard,
    Shifted,
}

impl FillVariant {
    pub const BOTH: [FillVariant; 2] = [FillVariant::Standard, FillVariant::Shifted];

    pub fn name(&self) -> &'static str {
        match self {
            FillVariant::Standard => "standard",
            FillVariant::Shifted => "shifted",
        }
    }

    /// Coefficient system whose coboundary this fill encodes.
    pub fn coefficients(&self) -> &'static str {
        match self {
            FillVariant::Standard => "constant",
            FillVariant::Shifted => "twisted",
        }
    }

    pub fn other(&self) -> FillVariant {
        match self {
            FillVariant::Standard => FillVariant::Shifted,
            FillVariant::Shifted => FillVariant::Standard,
        }
    }
}

impl fmt::Display for FillVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Letter {
    #[serde(rename = "q")]
    Q,
    #[serde(rename = "1")]
    One,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Letter::Q => "q",
            Letter::One => "1",
        })
    }
}

/// Letter carried by a box labeled `s_label`.
pub fn letter_for_label(label: usize, k: usize, variant: FillVariant) -> Letter {
    let same_parity = (label + k).is_multiple_of(2);
    match (variant, same_parity) {
        (FillVariant::Standard, true) | (FillVariant::Shifted, false) => Letter::Q,
        _ => Letter::One,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckeredDiagram {
    pub partition: Partition,
    pub variant: FillVariant,
    /// `letters[r-1][c-1]` for the box in row `r`, column `c`, bottom row first.
    pub letters: Vec<Vec<Letter>>,
    pub eta: usize,
}

impl CheckeredDiagram {
    pub fn letter(&self, row: usize, col: usize) -> Letter {
        self.letters[row - 1][col - 1]
    }
}

pub fn checkered_fill(
    lambda: &Partition,
    shape: GrassmannShape,
    variant: FillVariant,
) -> Result<CheckeredDiagram> {
    let lambda = Partition::new(lambda.rows().to_vec(), shape)?;
    let letters: Vec<Vec<Letter>> = lambda
        .rows()
        .iter()
        .enumerate()
        .map(|(i, &len)| {
            (1..=len)
                .map(|c| letter_for_label(box_label(i + 1, c), shape.k(), variant))
                .collect()
        })
        .collect();
    let eta = letters
        .iter()
        .flatten()
        .filter(|&&l| l == Letter::Q)
        .count();
    Ok(CheckeredDiagram {
        partition: lambda,
        variant,
        letters,
        eta,
    })
}

/// `Σ_j ⌊(λ_j + σ(j)) / 2⌋` with `σ(j) = 1` iff `k - j` is even.
pub fn eta_closed_form(lambda: &Partition, shape: GrassmannShape) -> usize {
    let k = shape.k();
    lambda
        .rows()
        .iter()
        .enumerate()
        .map(|(i, &len)| {
            let sigma = usize::from((k - (i + 1)).is_multiple_of(2));
            (len + sigma) / 2
        })
        .sum()
}

/// Number of `q` boxes in the standard fill, cross-checked against the
/// row-wise closed form.
pub fn eta(lambda: &Partition, shape: GrassmannShape) -> Result<usize> {
    let counted = checkered_fill(lambda, shape, FillVariant::Standard)?.eta;
    let closed = eta_closed_form(lambda, shape);
    if counted != closed {
        return Err(Error::Falsification(format!(
            "eta of {lambda} in {shape}: box count {counted} != closed form {closed}"
        )));
    }
    Ok(counted)
}

pub fn eta_star(lambda: &Partition, shape: GrassmannShape) -> Result<usize> {
    Ok(lambda.size() - eta(lambda, shape)?)
}

/// `eta` for the standard fill, `eta_star` for the shifted one.
pub fn weight(lambda: &Partition, shape: GrassmannShape, variant: FillVariant) -> Result<usize> {
    match variant {
        FillVariant::Standard => eta(lambda, shape),
        FillVariant::Shifted => eta_star(lambda, shape),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

/// Local-system signs `(ε_1, ..., ε_{n-1})`, one per simple reflection.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SignVector(Vec<Sign>);

impl SignVector {
    pub fn new(signs: Vec<Sign>) -> Self {
        Self(signs)
    }

    pub fn all_minus(len: usize) -> Self {
        Self(vec![Sign::Minus; len])
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sign `ε_i`, 1-based.
    pub fn get(&self, i: usize) -> Sign {
        self.0[i - 1]
    }

    /// Whether `s_i` leaves the local system alone, i.e. `ε_i = +`.
    ///
    /// For `n >= 3` this is the same as `sign_action(i, self) == self`. With a
    /// single entry there are no neighbours to flip and the coordinate rule is
    /// always trivial, so the test is made on `ε_i` itself.
    pub fn is_fixed_by(&self, i: usize) -> bool {
        self.get(i) == Sign::Plus
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            f.write_str(match s {
                Sign::Plus => "+",
                Sign::Minus => "-",
            })?;
        }
        write!(f, ")")
    }
}

/// `s_i : ε_j ↦ ε_j ε_i^{-C_{j,i}}` with `C` the Cartan matrix of type `A_{n-1}`:
/// `ε_{i±1}` pick up a factor `ε_i`, everything else is unchanged.
pub fn sign_action(i: usize, eps: &SignVector) -> Result<SignVector> {
    if i == 0 || i > eps.len() {
        return Err(Error::OutOfRange {
            what: "reflection index",
            value: i,
            min: 1,
            max: eps.len(),
        });
    }
    let mut out = eps.clone();
    let ei = eps.get(i);
    if i >= 2 {
        out.0[i - 2] = eps.get(i - 1) * ei;
    }
    if i < eps.len() {
        out.0[i] = eps.get(i + 1) * ei;
    }
    Ok(out)
}

/// `ε_-` (all minus) for the standard fill, `ε_+` (plus at position `k`) for
/// the shifted fill.
pub fn epsilon_start(shape: GrassmannShape, variant: FillVariant) -> SignVector {
    let mut eps = SignVector::all_minus(shape.n() - 1);
    if variant == FillVariant::Shifted {
        eps.0[shape.k() - 1] = Sign::Plus;
    }
    eps
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EtaHatTrace {
    pub word: ReducedWord,
    pub start: SignVector,
    pub end: SignVector,
    pub eta_hat: usize,
}

/// Drives the starting sign vector of `variant` along a reduced word for `λ`
/// and counts the letters that act non-trivially.
pub fn eta_hat(
    lambda: &Partition,
    shape: GrassmannShape,
    variant: FillVariant,
    word: Option<&ReducedWord>,
) -> Result<EtaHatTrace> {
    let word = match word {
        Some(w) => w.clone(),
        None => canonical_reduced_word(lambda, shape)?,
    };
    check_word_reaches(&word, lambda, shape)?;

    let start = epsilon_start(shape, variant);
    let mut eps = start.clone();
    let mut count = 0;
    for i in word.application_order() {
        if !eps.is_fixed_by(i) {
            count += 1;
        }
        eps = sign_action(i, &eps)?;
    }
    Ok(EtaHatTrace {
        word,
        start,
        end: eps,
        eta_hat: count,
    })
}

// Replays the word on pivot sets; every letter must move a pivot up by one.
fn check_word_reaches(word: &ReducedWord, lambda: &Partition, shape: GrassmannShape) -> Result<()> {
    let mut rows = vec![0usize; shape.k()];
    for i in word.application_order() {
        let r = (1..=shape.k()).find(|&r| rows[r - 1] + r == i);
        let ok = r.filter(|&r| {
            let cap = if r == shape.k() {
                shape.width()
            } else {
                rows[r]
            };
            rows[r - 1] < cap
        });
        match ok {
            Some(r) => rows[r - 1] += 1,
            None => {
                return Err(Error::Validation(format!(
                    "word {word} is not a reduced word of a Grassmannian element of {shape}"
                )))
            }
        }
    }
    if rows != lambda.rows() {
        return Err(Error::Validation(format!(
            "word {word} reaches {:?}, not {lambda}",
            rows
        )));
    }
    Ok(())
}

/// Per-cell weights of a whole Bruhat graph, indexed by cell id.
pub fn weights_of(graph: &BruhatGraph, variant: FillVariant) -> Result<Vec<usize>> {
    graph
        .cells()
        .iter()
        .map(|p| weight(p, graph.shape(), variant))
        .collect()
}
