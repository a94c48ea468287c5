//! Letter-induced Lie derivations of `T(X)` and the twisted Dynkin operators
//! `D_δ = S ∗ δ`, in closed (iterated bracket) and convolution form.

use num_traits::Zero;

use crate::algebra::{DiagonalDerivation, GradedEndo, HopfAlgebra};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::tensor::{bracket, letter, Letter, TensorAlgebra, TensorElt, Word};

/// A linear map `f: X → span(X)` and its extension `f̃` to a derivation of
/// `T(X)`. Such derivations also preserve the free Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LetterDerivation {
    images: Vec<TensorElt>,
}

impl LetterDerivation {
    pub fn from_images(images: Vec<TensorElt>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidArgument("empty alphabet".into()));
        }
        let k = images.len();
        for (i, img) in images.iter().enumerate() {
            if img.keys().any(|w| w.len() != 1 || w.letters()[0] as usize >= k) {
                return Err(Error::InvalidArgument(format!(
                    "image of letter {i} must be a combination of letters"
                )));
            }
        }
        Ok(Self { images })
    }

    /// The graduation operator `Y` (`f = Id`).
    pub fn graduation(alphabet_size: usize) -> Self {
        Self::diagonal((0..alphabet_size).map(|_| int(1)))
    }

    /// `δ_{x_i}`: counts occurrences of letter `i`.
    pub fn letter_count(alphabet_size: usize, i: Letter) -> Self {
        Self::diagonal((0..alphabet_size).map(|j| if j == i as usize { int(1) } else { int(0) }))
    }

    pub fn diagonal(weights: impl IntoIterator<Item = Rational>) -> Self {
        let images = weights
            .into_iter()
            .enumerate()
            .map(|(i, w)| letter(i as Letter).scaled(&w))
            .collect();
        Self { images }
    }

    pub fn alphabet_size(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, l: Letter) -> &TensorElt {
        &self.images[l as usize]
    }

    /// The diagonal form, when every letter is an eigenvector.
    pub fn as_diagonal(&self) -> Option<DiagonalDerivation> {
        self.images
            .iter()
            .enumerate()
            .map(|(i, img)| match img.len() {
                0 => Some(Rational::zero()),
                1 => {
                    let (w, c) = img.iter().next()?;
                    (w.letters()[0] as usize == i).then(|| c.clone())
                }
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(DiagonalDerivation::Weights)
    }

    fn apply_word(&self, w: &Word) -> TensorElt {
        let letters = w.letters();
        let mut out = TensorElt::zero();
        for (i, &l) in letters.iter().enumerate() {
            for (img, c) in self.image(l).iter() {
                let mut v = letters.to_vec();
                v[i] = img.letters()[0];
                out.add_term(Word::new(v), c.clone());
            }
        }
        out
    }

    /// Leibniz extension: `f(y_1…y_n) = Σ_i y_1…f(y_i)…y_n`.
    pub fn apply(&self, a: &TensorElt) -> TensorElt {
        a.map_linear(|w| self.apply_word(w))
    }

    pub fn to_endo(&self) -> GradedEndo<Word> {
        let f = self.clone();
        GradedEndo::new(move |w| f.apply_word(w)).with_degree_shift(0)
    }
}

/// Per-letter multiplicities of a word; they sum to its length.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MultiGrading(pub Vec<usize>);

impl MultiGrading {
    pub fn of(w: &Word, alphabet_size: usize) -> Self {
        Self(w.multidegree(alphabet_size))
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }
}

/// `D_δ(y_1…y_n) = [...[[δ(y_1), y_2], y_3]..., y_n]`; zero on the empty word.
pub fn dynkin_bracket(f: &LetterDerivation, w: &Word) -> TensorElt {
    let Some((&first, rest)) = w.letters().split_first() else {
        return TensorElt::zero();
    };
    rest.iter()
        .fold(f.image(first).clone(), |acc, &y| bracket(&acc, &letter(y)))
}

pub fn dynkin_bracket_elt(f: &LetterDerivation, a: &TensorElt) -> TensorElt {
    a.map_linear(|w| dynkin_bracket(f, w))
}

/// `D_δ = S ∗ f̃` evaluated through the unshuffle coproduct.
pub fn dynkin_convolution(f: &LetterDerivation, a: &TensorElt) -> TensorElt {
    let t = TensorAlgebra::new(f.alphabet_size()).expect("nonempty alphabet");
    let antipode = |w: &Word| t.antipode_key(w);
    let derivation = |w: &Word| f.apply_word(w);
    t.convolve_apply(&antipode, &derivation, a)
}

/// The `D_δ = S ∗ δ` operator as a `GradedEndo` built from `convolve`.
pub fn dynkin_endo(f: &LetterDerivation) -> GradedEndo<Word> {
    let t = TensorAlgebra::new(f.alphabet_size()).expect("nonempty alphabet");
    GradedEndo::antipode(&t).convolve(&f.to_endo(), &t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProjectionMode {
    /// `D/n` on length-homogeneous elements.
    Classical,
    /// `D_{x_i}/n` on elements homogeneous in the multiplicity `n` of letter `i`.
    PerLetter(Letter),
}

/// Projection onto the Lie component via a normalized Dynkin operator.
pub fn lie_project(alphabet_size: usize, a: &TensorElt, mode: ProjectionMode) -> Result<TensorElt> {
    if a.is_zero() {
        return Ok(TensorElt::zero());
    }
    let (f, n) = match mode {
        ProjectionMode::Classical => {
            let n = a.homogeneous_degree().ok_or_else(|| {
                Error::InvalidArgument("classical projection needs a length-homogeneous input".into())
            })?;
            (LetterDerivation::graduation(alphabet_size), n)
        }
        ProjectionMode::PerLetter(i) => {
            if i as usize >= alphabet_size {
                return Err(Error::InvalidArgument(format!("letter index {i} outside the alphabet")));
            }
            let mut counts = a.keys().map(|w| w.count(i));
            let n = counts.next().unwrap_or(0);
            if counts.any(|m| m != n) {
                return Err(Error::InvalidArgument(
                    "per-letter projection needs an input homogeneous in the letter".into(),
                ));
            }
            (LetterDerivation::letter_count(alphabet_size, i), n)
        }
    };
    if n == 0 {
        return Err(Error::InvalidArgument(
            "projection undefined in multiplicity 0 (division by zero)".into(),
        ));
    }
    Ok(dynkin_convolution(&f, a).scaled(&Rational::new(1.into(), (n as i64).into())))
}
