//! Enveloping algebras `U(L)` of graded Lie algebras given by a basis and
//! structure constants: PBW normal form, Hopf structure, exp/log, and the
//! Witt-type realization by polynomial vector fields `x^{n+1} ∂_x`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::algebra::{exp_series, log_series, Algebra, DiagonalDerivation, HopfAlgebra};
use crate::error::{Error, Result};
use crate::lincomb::{Basis, LinComb, Monomial};
use crate::rational::{format_rational, int, parse_rational, Rational};
use crate::tensor::{bracket as tensor_bracket, lyndon_bracketing, lyndon_words, TensorElt, Word};

/// A sparse combination of basis indices of `L`.
pub type LieVector = Vec<(usize, Rational)>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// A graded Lie algebra by basis `e_i` (with degrees), brackets `[e_i, e_j]`
/// for `i < j`, and a derivation table `δ(e_i)`, truncated above
/// `max_degree`. Validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiePresentation {
    basis: Vec<Generator>,
    brackets: BTreeMap<(usize, usize), LieVector>,
    derivation: Vec<LieVector>,
    max_degree: usize,
}

fn collect_vector(terms: impl IntoIterator<Item = (usize, Rational)>) -> LieVector {
    let mut map: BTreeMap<usize, Rational> = BTreeMap::new();
    for (k, c) in terms {
        *map.entry(k).or_insert_with(Rational::zero) += c;
    }
    map.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

impl LiePresentation {
    /// Builds and validates a presentation. Bracket terms landing above
    /// `max_degree` are dropped; `derivation` may be shorter than the basis
    /// (missing entries are zero).
    pub fn new(
        basis: Vec<Generator>,
        brackets: impl IntoIterator<Item = ((usize, usize), LieVector)>,
        derivation: Vec<LieVector>,
        max_degree: usize,
    ) -> Result<Self> {
        let n = basis.len();
        if let Some(g) = basis.iter().find(|g| g.degree == 0) {
            return Err(Error::InvalidArgument(format!("generator {} has degree 0", g.name)));
        }
        let mut table = BTreeMap::new();
        for ((i, j), v) in brackets {
            if i >= n || j >= n || v.iter().any(|(k, _)| *k >= n) {
                return Err(Error::InvalidArgument(format!("bracket [{i}, {j}] uses an unknown index")));
            }
            if i == j {
                if collect_vector(v).is_empty() {
                    continue;
                }
                return Err(Error::InvalidArgument(format!("[e_{i}, e_{i}] must vanish")));
            }
            let (i, j, v) = if i < j {
                (i, j, v)
            } else {
                (j, i, v.into_iter().map(|(k, c)| (k, -c)).collect())
            };
            let expected = basis[i].degree + basis[j].degree;
            if v.iter().any(|(k, c)| !c.is_zero() && basis[*k].degree != expected) {
                return Err(Error::DegreeMismatch { i, j, expected });
            }
            if expected > max_degree {
                continue;
            }
            let v = collect_vector(v);
            if !v.is_empty() && table.insert((i, j), v).is_some() {
                return Err(Error::InvalidArgument(format!("bracket [{i}, {j}] given twice")));
            }
        }
        let mut der = derivation;
        if der.len() > n {
            return Err(Error::InvalidArgument("derivation table longer than the basis".into()));
        }
        der.resize(n, Vec::new());
        let der: Vec<LieVector> = der.into_iter().map(collect_vector).collect();
        for (i, v) in der.iter().enumerate() {
            if v.iter().any(|(k, _)| *k >= n || basis[*k].degree != basis[i].degree) {
                return Err(Error::InvalidArgument(format!(
                    "derivation image of e_{i} must be homogeneous of degree {}",
                    basis[i].degree
                )));
            }
        }
        let pres = Self {
            basis,
            brackets: table,
            derivation: der,
            max_degree,
        };
        pres.check_jacobi()?;
        pres.check_derivation()?;
        Ok(pres)
    }

    pub fn basis(&self) -> &[Generator] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, i: usize) -> usize {
        self.basis[i].degree
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|g| g.name == name)
    }

    /// `[e_i, e_j]` in `L`.
    pub fn bracket_basis(&self, i: usize, j: usize) -> LieVector {
        use std::cmp::Ordering::*;
        match i.cmp(&j) {
            Equal => Vec::new(),
            Less => self.brackets.get(&(i, j)).cloned().unwrap_or_default(),
            Greater => self
                .brackets
                .get(&(j, i))
                .map(|v| v.iter().map(|(k, c)| (*k, -c)).collect())
                .unwrap_or_default(),
        }
    }

    pub fn bracket(&self, x: &LieVector, y: &LieVector) -> LieVector {
        collect_vector(x.iter().flat_map(|(i, a)| {
            y.iter().flat_map(move |(j, b)| {
                self.bracket_basis(*i, *j)
                    .into_iter()
                    .map(move |(k, c)| (k, c * a * b))
            })
        }))
    }

    pub fn derivation_of(&self, i: usize) -> &LieVector {
        &self.derivation[i]
    }

    pub fn apply_derivation_lie(&self, x: &LieVector) -> LieVector {
        collect_vector(
            x.iter()
                .flat_map(|(i, a)| self.derivation[*i].iter().map(move |(k, c)| (*k, c * a))),
        )
    }

    /// The derivation as a `DiagonalDerivation` when every `e_i` is an eigenvector.
    pub fn diagonal_derivation(&self) -> Option<DiagonalDerivation> {
        self.derivation
            .iter()
            .enumerate()
            .map(|(i, v)| match v.as_slice() {
                [] => Some(Rational::zero()),
                [(k, c)] if *k == i => Some(c.clone()),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(DiagonalDerivation::Weights)
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        let e = |i: usize| vec![(i, Rational::one())];
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    if self.degree(i) + self.degree(j) + self.degree(k) > self.max_degree {
                        continue;
                    }
                    let t1 = self.bracket(&e(i), &self.bracket_basis(j, k));
                    let t2 = self.bracket(&e(j), &self.bracket_basis(k, i));
                    let t3 = self.bracket(&e(k), &self.bracket_basis(i, j));
                    if !collect_vector(t1.into_iter().chain(t2).chain(t3)).is_empty() {
                        return Err(Error::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_derivation(&self) -> Result<()> {
        let n = self.dim();
        let e = |i: usize| vec![(i, Rational::one())];
        for i in 0..n {
            for j in i + 1..n {
                if self.degree(i) + self.degree(j) > self.max_degree {
                    continue;
                }
                let lhs = self.apply_derivation_lie(&self.bracket_basis(i, j));
                let r1 = self.bracket(&self.derivation[i], &e(j));
                let r2 = self.bracket(&e(i), &self.derivation[j]);
                let diff = collect_vector(
                    lhs.into_iter()
                        .chain(r1.into_iter().chain(r2).map(|(k, c)| (k, -c))),
                );
                if !diff.is_empty() {
                    return Err(Error::DerivationRule(i, j));
                }
            }
        }
        Ok(())
    }

    pub fn to_file(&self) -> PresentationFile {
        PresentationFile {
            truncation: self.max_degree,
            basis: self.basis.clone(),
            brackets: self
                .brackets
                .iter()
                .map(|((i, j), v)| {
                    let rhs: Vec<String> = v
                        .iter()
                        .map(|(k, c)| format!("{} {k}", format_rational(c)))
                        .collect();
                    format!("{i} {j} -> {}", rhs.join("; "))
                })
                .collect(),
            derivation: self
                .derivation
                .iter()
                .map(|v| {
                    v.iter()
                        .map(|(k, c)| format!("{} {k}", format_rational(c)))
                        .collect::<Vec<_>>()
                        .join("; ")
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("presentation serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: PresentationFile =
            serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        file.into_presentation()
    }
}

/// On-disk form of a presentation.
///
/// ```json
/// { "truncation": 4,
///   "basis": [{"name": "e1", "degree": 1}, {"name": "e2", "degree": 2}],
///   "brackets": ["0 1 -> 1 2"],
///   "derivation": ["1 0", "2 1"] }
/// ```
///
/// Bracket entries read `i j -> c k; c k; …` meaning `[e_i, e_j] = Σ c e_k`;
/// derivation entry `i` reads `c k; …` meaning `δ(e_i) = Σ c e_k`. Indices
/// are 0-based and coefficients are exact rationals `p` or `p/q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PresentationFile {
    pub truncation: usize,
    pub basis: Vec<Generator>,
    #[serde(default)]
    pub brackets: Vec<String>,
    #[serde(default)]
    pub derivation: Vec<String>,
}

fn parse_vector(text: &str) -> Result<LieVector> {
    let mut out = Vec::new();
    for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (c, k) = part
            .split_once(char::is_whitespace)
            .ok_or_else(|| Error::Format(format!("expected \"coeff index\", got {part:?}")))?;
        let k: usize = k
            .trim()
            .parse()
            .map_err(|_| Error::Format(format!("bad basis index in {part:?}")))?;
        out.push((k, parse_rational(c)?));
    }
    Ok(out)
}

impl PresentationFile {
    pub fn into_presentation(self) -> Result<LiePresentation> {
        let mut brackets = Vec::new();
        for entry in &self.brackets {
            let (lhs, rhs) = entry
                .split_once("->")
                .ok_or_else(|| Error::Format(format!("bracket entry without '->': {entry:?}")))?;
            let idx: Vec<usize> = lhs
                .split_whitespace()
                .map(|s| s.parse().map_err(|_| Error::Format(format!("bad index in {entry:?}"))))
                .collect::<Result<_>>()?;
            let [i, j] = idx[..] else {
                return Err(Error::Format(format!("expected two indices in {entry:?}")));
            };
            brackets.push(((i, j), parse_vector(rhs)?));
        }
        let derivation = self
            .derivation
            .iter()
            .map(|d| parse_vector(d))
            .collect::<Result<Vec<_>>>()?;
        LiePresentation::new(self.basis, brackets, derivation, self.truncation)
    }
}

/// Choice of derivation on the Witt-type algebra of vector fields.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WittDerivation {
    /// `δ(e_n) = n e_n`, the graduation.
    Graduation,
    /// `δ(P ∂_x) = x P' ∂_x`, i.e. `δ(e_n) = (n+1) e_n`.
    EulerShifted,
}

/// Basis `e_n = x^{n+1} ∂_x` for `1 ≤ n ≤ max_degree`, with
/// `[e_n, e_m] = (m - n) e_{n+m}`.
///
/// `EulerShifted` is not a derivation of this bracket, so validation rejects
/// it with the first failing pair.
pub fn witt(max_degree: usize, derivation: WittDerivation) -> Result<LiePresentation> {
    let basis = (1..=max_degree)
        .map(|n| Generator {
            name: format!("e{n}"),
            degree: n,
        })
        .collect();
    let mut brackets = Vec::new();
    for n in 1..=max_degree {
        for m in n + 1..=max_degree {
            if n + m <= max_degree {
                brackets.push(((n - 1, m - 1), vec![(n + m - 1, int(m as i64 - n as i64))]));
            }
        }
    }
    let der = (1..=max_degree)
        .map(|n| {
            let ev = match derivation {
                WittDerivation::Graduation => n,
                WittDerivation::EulerShifted => n + 1,
            };
            vec![(n - 1, int(ev as i64))]
        })
        .collect();
    LiePresentation::new(basis, brackets, der, max_degree)
}

/// Expresses a homogeneous Lie element of `T(X)` in the Lyndon basis, using
/// that each Lyndon bracketing is its word plus lexicographically larger ones.
fn lyndon_coordinates(x: &TensorElt, index: &HashMap<Word, usize>, basis: &[TensorElt]) -> Result<LieVector> {
    let mut x = x.clone();
    let mut out = Vec::new();
    while let Some((w, c)) = x.iter().next().map(|(w, c)| (w.clone(), c.clone())) {
        let &i = index
            .get(&w)
            .ok_or_else(|| Error::InvalidArgument(format!("{w} is not a leading Lyndon word")))?;
        x.add_scaled(&basis[i], &-c.clone());
        out.push((i, c));
    }
    Ok(collect_vector(out))
}

/// The free Lie algebra on `alphabet_size` letters truncated at `max_degree`,
/// presented on its Lyndon basis, with the graduation as derivation. Also
/// returns the embedding of each basis element into `T(X)`.
pub fn free_lie(alphabet_size: usize, max_degree: usize) -> Result<(LiePresentation, Vec<TensorElt>)> {
    let mut words = Vec::new();
    for n in 1..=max_degree {
        words.extend(lyndon_words(alphabet_size, n)?);
    }
    let images: Vec<TensorElt> = words.iter().map(lyndon_bracketing).collect::<Result<_>>()?;
    let index: HashMap<Word, usize> = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
    let basis = words
        .iter()
        .map(|w| Generator {
            name: w.to_string(),
            degree: w.len(),
        })
        .collect();
    let mut brackets = Vec::new();
    for i in 0..words.len() {
        for j in i + 1..words.len() {
            if words[i].len() + words[j].len() > max_degree {
                continue;
            }
            let b = tensor_bracket(&images[i], &images[j]);
            brackets.push(((i, j), lyndon_coordinates(&b, &index, &images)?));
        }
    }
    let der = words.iter().enumerate().map(|(i, w)| vec![(i, int(w.len() as i64))]).collect();
    let pres = LiePresentation::new(basis, brackets, der, max_degree)?;
    Ok((pres, images))
}

/// A PBW monomial `e_{i_1} ⋯ e_{i_k}` with `i_1 ≤ … ≤ i_k`; ordered by
/// degree, then index sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PbwMonomial {
    degree: usize,
    gens: Vec<usize>,
}

impl PbwMonomial {
    pub fn gens(&self) -> &[usize] {
        &self.gens
    }
}

impl Basis for PbwMonomial {
    fn degree(&self) -> usize {
        self.degree
    }

    fn unit() -> Self {
        Self::default()
    }
}

impl Monomial for PbwMonomial {
    fn generators(&self) -> Vec<usize> {
        self.gens.clone()
    }
}

impl fmt::Debug for PbwMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gens.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.gens.iter().map(|g| format!("e[{g}]")).collect();
        write!(f, "{}", parts.join("·"))
    }
}

pub type PbwElement = LinComb<PbwMonomial>;

/// Which out-of-order adjacent pair to rewrite first during straightening.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Straightening {
    FirstDescent,
    LastDescent,
}

/// `U(L)` for a validated presentation, truncated at the presentation's
/// degree bound. Cheap to clone; the straightening cache is shared.
#[derive(Clone)]
pub struct PbwAlgebra {
    pres: Arc<LiePresentation>,
    cache: Arc<Mutex<HashMap<Vec<usize>, PbwElement>>>,
}

impl fmt::Debug for PbwAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PbwAlgebra").field("pres", &self.pres).finish_non_exhaustive()
    }
}

impl PbwAlgebra {
    pub fn new(pres: LiePresentation) -> Self {
        Self {
            pres: Arc::new(pres),
            cache: Arc::default(),
        }
    }

    pub fn presentation(&self) -> &LiePresentation {
        &self.pres
    }

    pub fn max_degree(&self) -> usize {
        self.pres.max_degree
    }

    fn seq_degree(&self, seq: &[usize]) -> usize {
        seq.iter().map(|&i| self.pres.degree(i)).sum()
    }

    pub fn generator(&self, i: usize) -> PbwElement {
        LinComb::basis(PbwMonomial {
            degree: self.pres.degree(i),
            gens: vec![i],
        })
    }

    pub fn lie_element(&self, v: &LieVector) -> PbwElement {
        v.iter()
            .map(|(i, c)| {
                (
                    PbwMonomial {
                        degree: self.pres.degree(*i),
                        gens: vec![*i],
                    },
                    c.clone(),
                )
            })
            .collect()
    }

    /// The `L`-coordinates of an element, if it lies in the span of generators.
    pub fn as_lie_vector(&self, a: &PbwElement) -> Option<LieVector> {
        a.iter()
            .map(|(m, c)| match m.gens.as_slice() {
                [i] => Some((*i, c.clone())),
                _ => None,
            })
            .collect()
    }

    /// Normal form of the product `e_{s_1} ⋯ e_{s_k}` of generators.
    pub fn normalize(&self, seq: &[usize]) -> PbwElement {
        self.normalize_with(seq, Straightening::FirstDescent)
    }

    pub fn normalize_with(&self, seq: &[usize], order: Straightening) -> PbwElement {
        let degree = self.seq_degree(seq);
        if degree > self.pres.max_degree {
            return PbwElement::zero();
        }
        let descent = match order {
            Straightening::FirstDescent => seq.windows(2).position(|p| p[0] > p[1]),
            Straightening::LastDescent => seq.windows(2).rposition(|p| p[0] > p[1]),
        };
        let Some(i) = descent else {
            return LinComb::basis(PbwMonomial {
                degree,
                gens: seq.to_vec(),
            });
        };
        let cached = order == Straightening::FirstDescent;
        if cached {
            if let Some(v) = self.cache.lock().expect("cache poisoned").get(seq) {
                return v.clone();
            }
        }
        // e_j e_i = e_i e_j + [e_j, e_i]
        let mut swapped = seq.to_vec();
        swapped.swap(i, i + 1);
        let mut out = self.normalize_with(&swapped, order);
        for (k, c) in self.pres.bracket_basis(seq[i], seq[i + 1]) {
            let mut shorter = Vec::with_capacity(seq.len() - 1);
            shorter.extend_from_slice(&seq[..i]);
            shorter.push(k);
            shorter.extend_from_slice(&seq[i + 2..]);
            out.add_scaled(&self.normalize_with(&shorter, order), &c);
        }
        if cached {
            self.cache
                .lock()
                .expect("cache poisoned")
                .insert(seq.to_vec(), out.clone());
        }
        out
    }

    pub fn mul_with(&self, a: &PbwElement, b: &PbwElement, order: Straightening) -> PbwElement {
        a.bilinear(b, Some(self.pres.max_degree), |u, v| {
            let seq: Vec<usize> = u.gens.iter().chain(&v.gens).copied().collect();
            self.normalize_with(&seq, order)
        })
    }

    /// Extension of the presentation's derivation to `U(L)` by the Leibniz rule.
    pub fn apply_derivation(&self, a: &PbwElement) -> PbwElement {
        a.map_linear(|m| {
            let mut out = PbwElement::zero();
            for (pos, &g) in m.gens.iter().enumerate() {
                for (k, c) in self.pres.derivation_of(g) {
                    let mut seq = m.gens.clone();
                    seq[pos] = *k;
                    out.add_scaled(&self.normalize(&seq), c);
                }
            }
            out
        })
    }

    fn monomials(&self, degree: usize, min_gen: usize) -> Vec<Vec<usize>> {
        if degree == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for g in min_gen..self.pres.dim() {
            let d = self.pres.degree(g);
            if d > degree {
                continue;
            }
            for mut rest in self.monomials(degree - d, g) {
                rest.insert(0, g);
                out.push(rest);
            }
        }
        out
    }
}

impl Algebra for PbwAlgebra {
    type Elem = PbwElement;

    fn zero(&self) -> PbwElement {
        LinComb::zero()
    }

    fn one(&self) -> PbwElement {
        LinComb::unit()
    }

    fn add(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        a + b
    }

    fn scale(&self, a: &PbwElement, c: &Rational) -> PbwElement {
        a.scaled(c)
    }

    fn mul(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        self.mul_with(a, b, Straightening::FirstDescent)
    }

    fn mul_truncated(&self, a: &PbwElement, b: &PbwElement, max_degree: usize) -> PbwElement {
        a.bilinear(b, Some(max_degree.min(self.pres.max_degree)), |u, v| {
            let seq: Vec<usize> = u.gens.iter().chain(&v.gens).copied().collect();
            self.normalize(&seq)
        })
    }

    fn truncate(&self, a: &PbwElement, max_degree: usize) -> PbwElement {
        a.truncated(max_degree)
    }

    fn homogeneous(&self, a: &PbwElement, degree: usize) -> PbwElement {
        a.homogeneous(degree)
    }

    fn is_zero(&self, a: &PbwElement) -> bool {
        a.is_zero()
    }

    fn probe_elements(&self, degree: usize) -> Vec<PbwElement> {
        self.basis_keys(degree).into_iter().map(LinComb::basis).collect()
    }
}

impl HopfAlgebra for PbwAlgebra {
    type Key = PbwMonomial;

    /// Generators are primitive; subsequences of a nondecreasing monomial stay
    /// nondecreasing, so no straightening is needed.
    fn coproduct_key(&self, key: &PbwMonomial) -> LinComb<(PbwMonomial, PbwMonomial)> {
        let k = key.gens.len();
        let mut out = LinComb::zero();
        for mask in 0usize..(1 << k) {
            let (mut left, mut right) = (Vec::new(), Vec::new());
            for (pos, &g) in key.gens.iter().enumerate() {
                if mask >> pos & 1 == 1 {
                    left.push(g);
                } else {
                    right.push(g);
                }
            }
            let ld = self.seq_degree(&left);
            let rd = self.seq_degree(&right);
            out.add_term(
                (
                    PbwMonomial { degree: ld, gens: left },
                    PbwMonomial { degree: rd, gens: right },
                ),
                Rational::one(),
            );
        }
        out
    }

    /// `S(e_{i_1}…e_{i_k}) = (-1)^k e_{i_k}…e_{i_1}`, straightened.
    fn antipode_key(&self, key: &PbwMonomial) -> PbwElement {
        let rev: Vec<usize> = key.gens.iter().rev().copied().collect();
        let s = self.normalize(&rev);
        if key.gens.len() % 2 == 0 {
            s
        } else {
            -s
        }
    }

    fn basis_keys(&self, degree: usize) -> Vec<PbwMonomial> {
        if degree > self.pres.max_degree {
            return Vec::new();
        }
        self.monomials(degree, 0)
            .into_iter()
            .map(|gens| PbwMonomial { degree, gens })
            .collect()
    }
}

/// `exp(l)` to degree `max_degree`; `l` must have no degree-0 part.
pub fn exp_truncated<H: HopfAlgebra>(alg: &H, l: &H::Elem, max_degree: usize) -> Result<H::Elem> {
    if !l.constant_term().is_zero() {
        return Err(Error::InvalidArgument("exp needs an element without degree-0 part".into()));
    }
    Ok(exp_series(alg, l, max_degree))
}

/// `log(g)` to degree `max_degree`; `g` must have constant term exactly 1.
pub fn log_truncated<H: HopfAlgebra>(alg: &H, g: &H::Elem, max_degree: usize) -> Result<H::Elem> {
    if !g.constant_term().is_one() {
        return Err(Error::InvalidArgument("log needs constant term 1".into()));
    }
    Ok(log_series(alg, g, max_degree))
}
