//! Seeded generators of random test inputs. A seed fully determines the
//! sequence of generated values.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::HopfAlgebra;
use crate::enveloping::{PbwAlgebra, PbwElement};
use crate::lincomb::LinComb;
use crate::rational::{rat, Rational};
use crate::tensor::{lyndon_bracketing, lyndon_words, TensorAlgebra, TensorElt, Word};

pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    /// Small rational `p/q`, `|p| ≤ 3`, `1 ≤ q ≤ 3`; may be zero.
    pub fn rational(&mut self) -> Rational {
        rat(self.rng.gen_range(-3..=3), self.rng.gen_range(1..=3))
    }

    pub fn nonzero_rational(&mut self) -> Rational {
        loop {
            let r = self.rational();
            if r != Rational::from_integer(0.into()) {
                return r;
            }
        }
    }

    /// Integer weights in `1..=4`: eigenvalues of the induced derivation are
    /// positive, hence it is invertible in positive degrees.
    pub fn positive_weights(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| rat(self.rng.gen_range(1..=4), 1)).collect()
    }

    pub fn weights(&mut self, n: usize) -> Vec<Rational> {
        (0..n).map(|_| self.rational()).collect()
    }

    pub fn word(&mut self, alphabet_size: usize, length: usize) -> Word {
        Word::new(
            (0..length)
                .map(|_| self.rng.gen_range(0..alphabet_size) as u8)
                .collect::<Vec<_>>(),
        )
    }

    pub fn tensor_homogeneous(&mut self, alphabet_size: usize, degree: usize, terms: usize) -> TensorElt {
        (0..terms)
            .map(|_| (self.word(alphabet_size, degree), self.nonzero_rational()))
            .collect()
    }

    /// A random element with components in degrees `1..=max_degree`.
    pub fn tensor_positive(&mut self, alphabet_size: usize, max_degree: usize, terms: usize) -> TensorElt {
        (0..terms)
            .map(|_| {
                let d = self.rng.gen_range(1..=max_degree);
                (self.word(alphabet_size, d), self.nonzero_rational())
            })
            .collect()
    }

    /// A random combination of Lyndon bracketings of one degree.
    pub fn lie_homogeneous(&mut self, alphabet_size: usize, degree: usize) -> TensorElt {
        let words = lyndon_words(alphabet_size, degree).expect("degree >= 1");
        let mut out = TensorElt::zero();
        let picks = self.rng.gen_range(1..=words.len().min(3));
        for w in words.choose_multiple(&mut self.rng, picks) {
            out.add_scaled(&lyndon_bracketing(w).expect("Lyndon"), &self.nonzero_rational());
        }
        out
    }

    /// A random Lie element with components in degrees `1..=max_degree`; the
    /// degree-1 component is always nonzero.
    pub fn lie_element(&mut self, alphabet_size: usize, max_degree: usize) -> TensorElt {
        let mut out = self.lie_homogeneous(alphabet_size, 1);
        for d in 2..=max_degree {
            if self.rng.gen_bool(0.7) {
                out += &self.lie_homogeneous(alphabet_size, d);
            }
        }
        out
    }

    pub fn pbw_homogeneous(&mut self, alg: &PbwAlgebra, degree: usize, terms: usize) -> PbwElement {
        let keys = alg.basis_keys(degree);
        if keys.is_empty() {
            return PbwElement::zero();
        }
        (0..terms)
            .map(|_| (keys[self.rng.gen_range(0..keys.len())].clone(), self.nonzero_rational()))
            .collect()
    }

    /// A random element of `L ⊂ U(L)` with components in degrees `1..=max_degree`.
    pub fn pbw_lie(&mut self, alg: &PbwAlgebra, max_degree: usize) -> PbwElement {
        let pres = alg.presentation();
        let mut out = PbwElement::zero();
        for i in 0..pres.dim() {
            if pres.degree(i) <= max_degree && (pres.degree(i) == 1 || self.rng.gen_bool(0.7)) {
                out += &alg.generator(i).scaled(&self.nonzero_rational());
            }
        }
        out
    }

    pub fn pick<'a, T>(&mut self, items: &'a [T]) -> &'a T {
        items.choose(&mut self.rng).expect("nonempty")
    }
}

/// All words of length `≤ max_length` as basis elements.
pub fn all_words(alg: &TensorAlgebra, max_length: usize) -> Vec<TensorElt> {
    alg.words_up_to(max_length).into_iter().map(LinComb::basis).collect()
}
