//! The tensor algebra `T(X)` over a finite alphabet: concatenation product,
//! unshuffle coproduct, antipode, and free Lie algebra utilities.

use std::cmp::Ordering;
use std::fmt;

use crate::algebra::{Algebra, HopfAlgebra};
use crate::error::{Error, Result};
use crate::lincomb::{Basis, LinComb, Monomial};
use crate::rational::{int, Rational};

/// Index of a letter in the alphabet `{x_1, …, x_n}` (0-based).
pub type Letter = u8;

/// A finite sequence of letters; the empty word is the unit of `T(X)`.
///
/// Words are ordered by length, then lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn new(letters: impl Into<Vec<Letter>>) -> Self {
        Self(letters.into())
    }

    pub fn letter(l: Letter) -> Self {
        Self(vec![l])
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    /// Occurrences of each letter, indexed by letter.
    pub fn multidegree(&self, alphabet_size: usize) -> Vec<usize> {
        let mut out = vec![0; alphabet_size];
        for &l in &self.0 {
            out[l as usize] += 1;
        }
        out
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Basis for Word {
    fn degree(&self) -> usize {
        self.len()
    }

    fn unit() -> Self {
        Word::empty()
    }
}

impl Monomial for Word {
    fn generators(&self) -> Vec<usize> {
        self.0.iter().map(|&l| l as usize).collect()
    }
}

pub fn letter_name(l: Letter) -> String {
    if l < 26 {
        char::from(b'a' + l).to_string()
    } else {
        format!("x{}", l as usize + 1)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &l in &self.0 {
            write!(f, "{}", letter_name(l))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{self}")
        }
    }
}

/// An element of `T(X)`.
pub type TensorElt = LinComb<Word>;
/// An element of `T(X) ⊗ T(X)`.
pub type TensorElt2 = LinComb<(Word, Word)>;

pub fn word(letters: &[Letter]) -> TensorElt {
    LinComb::basis(Word::new(letters))
}

pub fn letter(l: Letter) -> TensorElt {
    LinComb::basis(Word::letter(l))
}

/// Concatenation product, extended bilinearly.
pub fn concat_mul(a: &TensorElt, b: &TensorElt) -> TensorElt {
    a.bilinear(b, None, |u, v| LinComb::basis(u.concat(v)))
}

/// `[a, b] = ab - ba`
pub fn bracket(a: &TensorElt, b: &TensorElt) -> TensorElt {
    concat_mul(a, b) - concat_mul(b, a)
}

/// The unshuffle coproduct of a word: the sum over all splittings of its
/// positions into two complementary increasing subsequences.
pub fn unshuffle(w: &Word) -> TensorElt2 {
    let n = w.len();
    assert!(n < usize::BITS as usize, "word too long to unshuffle");
    let mut out = LinComb::zero();
    for mask in 0usize..(1 << n) {
        let mut left = Vec::with_capacity(mask.count_ones() as usize);
        let mut right = Vec::with_capacity(n - left.capacity());
        for (i, &l) in w.letters().iter().enumerate() {
            if mask >> i & 1 == 1 {
                left.push(l);
            } else {
                right.push(l);
            }
        }
        out.add_term((Word(left), Word(right)), int(1));
    }
    out
}

/// `S(y_1…y_n) = (-1)^n y_n…y_1`, extended linearly.
pub fn antipode(a: &TensorElt) -> TensorElt {
    a.iter()
        .map(|(w, c)| {
            let c = if w.len() % 2 == 0 { c.clone() } else { -c };
            (w.reversed(), c)
        })
        .collect()
}

/// The tensor algebra over an alphabet of fixed size, as a graded connected
/// cocommutative Hopf algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TensorAlgebra {
    alphabet_size: usize,
}

impl TensorAlgebra {
    pub fn new(alphabet_size: usize) -> Result<Self> {
        if alphabet_size == 0 || alphabet_size > Letter::MAX as usize + 1 {
            return Err(Error::InvalidArgument(format!(
                "alphabet size {alphabet_size} out of range"
            )));
        }
        Ok(Self { alphabet_size })
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> {
        (0..self.alphabet_size).map(|l| l as Letter)
    }

    /// All words of the given length, in lexicographic order.
    pub fn words(&self, length: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..length {
            out = out
                .into_iter()
                .flat_map(|w| {
                    self.letters().map(move |l| {
                        let mut v = w.0.clone();
                        v.push(l);
                        Word(v)
                    })
                })
                .collect();
        }
        out
    }

    pub fn words_up_to(&self, max_length: usize) -> Vec<Word> {
        (0..=max_length).flat_map(|n| self.words(n)).collect()
    }
}

impl Algebra for TensorAlgebra {
    type Elem = TensorElt;

    fn zero(&self) -> TensorElt {
        LinComb::zero()
    }

    fn one(&self) -> TensorElt {
        LinComb::unit()
    }

    fn add(&self, a: &TensorElt, b: &TensorElt) -> TensorElt {
        a + b
    }

    fn scale(&self, a: &TensorElt, c: &Rational) -> TensorElt {
        a.scaled(c)
    }

    fn mul(&self, a: &TensorElt, b: &TensorElt) -> TensorElt {
        concat_mul(a, b)
    }

    fn mul_truncated(&self, a: &TensorElt, b: &TensorElt, max_degree: usize) -> TensorElt {
        a.bilinear(b, Some(max_degree), |u, v| LinComb::basis(u.concat(v)))
    }

    fn truncate(&self, a: &TensorElt, max_degree: usize) -> TensorElt {
        a.truncated(max_degree)
    }

    fn homogeneous(&self, a: &TensorElt, degree: usize) -> TensorElt {
        a.homogeneous(degree)
    }

    fn is_zero(&self, a: &TensorElt) -> bool {
        a.is_zero()
    }

    fn probe_elements(&self, degree: usize) -> Vec<TensorElt> {
        self.words(degree).into_iter().map(LinComb::basis).collect()
    }
}

impl HopfAlgebra for TensorAlgebra {
    type Key = Word;

    fn coproduct_key(&self, key: &Word) -> TensorElt2 {
        unshuffle(key)
    }

    fn antipode_key(&self, key: &Word) -> TensorElt {
        antipode(&LinComb::basis(key.clone()))
    }

    fn basis_keys(&self, degree: usize) -> Vec<Word> {
        self.words(degree)
    }
}

/// `true` iff `Δ(a) = a ⊗ 1 + 1 ⊗ a`.
pub fn is_primitive(a: &TensorElt) -> bool {
    let alphabet = a
        .keys()
        .flat_map(|w| w.letters().iter().copied())
        .max()
        .map_or(1, |l| l as usize + 1);
    TensorAlgebra { alphabet_size: alphabet }.is_primitive(a)
}

fn is_lyndon_slice(w: &[Letter]) -> bool {
    let n = w.len();
    n > 0 && (1..n).all(|i| w < &[&w[i..], &w[..i]].concat()[..])
}

pub fn is_lyndon(w: &Word) -> bool {
    is_lyndon_slice(w.letters())
}

/// All Lyndon words of the given length over the first `alphabet_size`
/// letters, in lexicographic order (Duval's generation algorithm).
pub fn lyndon_words(alphabet_size: usize, degree: usize) -> Result<Vec<Word>> {
    if degree < 1 {
        return Err(Error::InvalidArgument("Lyndon word degree must be at least 1".into()));
    }
    if alphabet_size == 0 {
        return Ok(Vec::new());
    }
    let k = alphabet_size as Letter;
    let mut out = Vec::new();
    let mut w: Vec<Letter> = vec![0];
    loop {
        if w.len() == degree {
            out.push(Word(w.clone()));
        }
        let m = w.len();
        while w.len() < degree {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&(k - 1)) {
            w.pop();
        }
        match w.last_mut() {
            Some(last) => *last += 1,
            None => break,
        }
    }
    Ok(out)
}

/// Standard factorization `w = uv` with `v` the longest proper Lyndon suffix.
pub fn standard_factorization(w: &Word) -> Option<(Word, Word)> {
    let letters = w.letters();
    (1..letters.len())
        .find(|&i| is_lyndon_slice(&letters[i..]))
        .map(|i| (Word(letters[..i].to_vec()), Word(letters[i..].to_vec())))
}

/// Bracketing of a Lyndon word along its standard factorization; these form a
/// basis of the free Lie algebra.
pub fn lyndon_bracketing(w: &Word) -> Result<TensorElt> {
    if !is_lyndon(w) {
        return Err(Error::InvalidArgument(format!("{w} is not a Lyndon word")));
    }
    Ok(bracket_lyndon(w))
}

fn bracket_lyndon(w: &Word) -> TensorElt {
    match standard_factorization(w) {
        None => LinComb::basis(w.clone()),
        Some((u, v)) => bracket(&bracket_lyndon(&u), &bracket_lyndon(&v)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GradedEndo;
    use crate::lincomb::rank;
    use crate::rational::rat;

    const A: Letter = 0;
    const B: Letter = 1;
    const C: Letter = 2;

    fn pair(u: &[Letter], v: &[Letter]) -> TensorElt2 {
        LinComb::basis((Word::new(u), Word::new(v)))
    }

    #[test]
    fn concatenation_examples() {
        assert_eq!(concat_mul(&letter(A), &letter(B)), word(&[A, B]));
        let ab_ba = word(&[A, B]) - word(&[B, A]);
        assert_eq!(concat_mul(&LinComb::unit(), &ab_ba), ab_ba);
        let lhs = concat_mul(&(letter(A) + letter(B).scaled(&rat(1, 2))), &letter(B));
        assert_eq!(lhs, word(&[A, B]) + word(&[B, B]).scaled(&rat(1, 2)));
    }

    #[test]
    fn unshuffle_examples() {
        assert_eq!(unshuffle(&Word::empty()), pair(&[], &[]));
        assert_eq!(unshuffle(&Word::letter(A)), pair(&[A], &[]) + pair(&[], &[A]));
        // all four subsets of {1, 2}
        let expected = pair(&[A, B], &[]) + pair(&[A], &[B]) + pair(&[B], &[A]) + pair(&[], &[A, B]);
        assert_eq!(unshuffle(&Word::new([A, B])), expected);
        // repeated letters collect: Δ(aa) = aa⊗1 + 2 a⊗a + 1⊗aa
        let aa = unshuffle(&Word::new([A, A]));
        assert_eq!(aa.coeff(&(Word::letter(A), Word::letter(A))), int(2));
    }

    #[test]
    fn antipode_examples() {
        assert_eq!(antipode(&word(&[A, B])), word(&[B, A]));
        assert_eq!(antipode(&word(&[A, B, C])), -word(&[C, B, A]));
        let l = word(&[A, B]) - word(&[B, A]);
        assert_eq!(antipode(&l), -l);
    }

    #[test]
    fn convolution_examples() {
        let t = TensorAlgebra::new(2).unwrap();
        let s = GradedEndo::antipode(&t);
        let id = GradedEndo::identity();
        let ab = word(&[A, B]);
        assert!(s.convolve(&id, &t).apply(&ab).is_zero());
        assert_eq!(GradedEndo::nu().convolve(&id, &t).apply(&ab), ab);
        let d = s.convolve(&GradedEndo::graduation(), &t);
        assert_eq!(d.apply(&ab), word(&[A, B]) - word(&[B, A]));
    }

    #[test]
    fn bracket_examples() {
        assert_eq!(bracket(&letter(A), &letter(B)), word(&[A, B]) - word(&[B, A]));
        assert!(bracket(&letter(A), &letter(A)).is_zero());
        let abc = bracket(&bracket(&letter(A), &letter(B)), &letter(C));
        let expected = word(&[A, B, C]) - word(&[B, A, C]) - word(&[C, A, B]) + word(&[C, B, A]);
        assert_eq!(abc, expected);
    }

    fn brute_force_lyndon(k: usize, n: usize) -> Vec<Word> {
        let t = TensorAlgebra::new(k).unwrap();
        t.words(n)
            .into_iter()
            .filter(|w| {
                let l = w.letters();
                (1..n).all(|i| {
                    let rot: Vec<Letter> = l[i..].iter().chain(&l[..i]).copied().collect();
                    l < &rot[..]
                })
            })
            .collect()
    }

    #[test]
    fn lyndon_examples() {
        assert_eq!(lyndon_words(2, 1).unwrap(), vec![Word::letter(A), Word::letter(B)]);
        assert_eq!(lyndon_words(2, 2).unwrap(), vec![Word::new([A, B])]);
        assert_eq!(
            lyndon_words(2, 3).unwrap(),
            vec![Word::new([A, A, B]), Word::new([A, B, B])]
        );
        assert!(matches!(lyndon_words(2, 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn lyndon_generation_matches_brute_force() {
        for k in 1..=3 {
            for n in 1..=7 {
                assert_eq!(lyndon_words(k, n).unwrap(), brute_force_lyndon(k, n), "k={k} n={n}");
            }
        }
    }

    #[test]
    fn lyndon_bracketing_examples() {
        assert_eq!(lyndon_bracketing(&Word::new([A, B])).unwrap(), bracket(&letter(A), &letter(B)));
        assert_eq!(
            lyndon_bracketing(&Word::new([A, A, B])).unwrap(),
            bracket(&letter(A), &bracket(&letter(A), &letter(B)))
        );
        assert_eq!(lyndon_bracketing(&Word::letter(A)).unwrap(), letter(A));
        assert!(lyndon_bracketing(&Word::new([B, A])).is_err());
        assert!(lyndon_bracketing(&Word::new([A, A])).is_err());
    }

    #[test]
    fn primitivity_examples() {
        assert!(is_primitive(&(word(&[A, B]) - word(&[B, A]))));
        assert!(!is_primitive(&word(&[A, B])));
        assert!(is_primitive(&TensorElt::zero()));
    }

    #[test]
    fn lyndon_basis_is_primitive_and_independent() {
        for k in 2..=3 {
            for n in 1..=5 {
                let basis: Vec<TensorElt> = lyndon_words(k, n)
                    .unwrap()
                    .iter()
                    .map(|w| lyndon_bracketing(w).unwrap())
                    .collect();
                assert!(basis.iter().all(is_primitive));
                assert_eq!(rank(&basis), basis.len());
            }
        }
    }

    #[test]
    fn word_display_and_order() {
        assert_eq!(Word::new([A, B, C]).to_string(), "abc");
        assert!(Word::new([B]) < Word::new([A, A]));
        let e = word(&[B, A]).scaled(&rat(-1, 2)) + word(&[A, B]) + LinComb::scalar(int(3));
        assert_eq!(e.to_string(), "3 + ab - 1/2 ba");
    }
}
