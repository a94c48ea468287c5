//! Seeded invariant suites. Every check compares two independently computed
//! sides exactly and reports a pass/fail outcome with a short detail line.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_traits::{One, Zero};
use rand::Rng;
use serde::Serialize;

use crate::algebra::{ad_power, exp_series, Algebra, DiagonalDerivation, GradedEndo, HopfAlgebra};
use crate::dynkin::{dynkin_bracket, dynkin_convolution, lie_project, LetterDerivation, MultiGrading, ProjectionMode};
use crate::enveloping::{free_lie, witt, PbwAlgebra, WittDerivation};
use crate::error::{Error, Result};
use crate::lincomb::{rank, Basis, LinComb};
use crate::magnus::{bernoulli, dynkin_inverse, log_derivative, magnus_forward, magnus_solve, BernoulliTable};
use crate::ode::{
    magnus_relation_check, omega_log, picard_matrix, prelie_time, random_lambda_series, random_matrix, LambdaAlgebra,
    LambdaSeries, MatrixPoly,
};
use crate::random::Sampler;
use crate::rational::{binomial, int, Rational};
use crate::rota_baxter::{LinearOp, RbContext, SequenceAlgebra};
use crate::tensor::{bracket, is_primitive, letter, lyndon_bracketing, lyndon_words, TensorAlgebra, TensorElt, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Core,
    Dynkin,
    Rb,
    Magnus,
    Ode,
}

impl Suite {
    pub const ALL: [Suite; 5] = [Suite::Core, Suite::Dynkin, Suite::Rb, Suite::Magnus, Suite::Ode];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Dynkin => "dynkin",
            Suite::Rb => "rb",
            Suite::Magnus => "magnus",
            Suite::Ode => "ode",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub suite: String,
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Result of one check: `Ok(detail)` or `Err(detail)`.
pub type Check = std::result::Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib(e: Error) -> String {
    e.to_string()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_degree: usize,
    pub seed: u64,
}

/// Runs one suite. The seed of each randomized check is derived from
/// `config.seed` and the check's position, so suites are reproducible on
/// their own and inside `all`.
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Vec<CheckOutcome> {
    let n = config.max_degree;
    let sampler = |i: u64| Sampler::new(config.seed.wrapping_mul(1_000_003).wrapping_add(i));
    let checks: Vec<(&str, Box<dyn FnOnce() -> Check>)> = match suite {
        Suite::Core => vec![
            ("tensor coassociativity", Box::new(move || coassociativity(&tensor(2), n))),
            ("tensor multiplicativity", Box::new(move || multiplicativity(&tensor(2), n))),
            ("tensor antipode convolution", Box::new(move || antipode_convolution(&tensor(2), n))),
            ("tensor antipode involution", Box::new(move || antipode_involution(&tensor(2), n))),
            ("witt coassociativity", Box::new(move || with_witt(n, |w| coassociativity(w, n)))),
            ("witt multiplicativity", Box::new(move || with_witt(n, |w| multiplicativity(w, n)))),
            ("witt antipode convolution", Box::new(move || with_witt(n, |w| antipode_convolution(w, n)))),
            ("witt antipode involution", Box::new(move || with_witt(n, |w| antipode_involution(w, n)))),
            ("lyndon basis", Box::new(move || lyndon_basis(&[2, 3], n))),
            ("convolution associativity", Box::new(move || convolution_associativity(&mut sampler(1), n, 10))),
            ("free lie presentation", Box::new(move || free_lie_agreement(&mut sampler(2), n, 10))),
        ],
        Suite::Dynkin => vec![
            ("dynkin specht wever", Box::new(move || specht_wever(&[2, 3], n))),
            ("dynkin per letter", Box::new(move || twisted_specht_wever(&[2, 3], &[0, 1], n))),
            ("bracket equals convolution", Box::new(move || bracket_vs_convolution(&mut sampler(3), n, 100))),
            ("projection idempotent", Box::new(move || projection_idempotent(&mut sampler(4), n, 20))),
            ("dynkin eigenvalue law", Box::new(move || eigenvalue_law(&mut sampler(5), n, 20))),
        ],
        Suite::Rb => vec![
            ("rota baxter identity", Box::new(move || rota_baxter_identity(&mut sampler(6), n, 30))),
            ("atkinson group-like", Box::new(move || atkinson_grouplike(n))),
            ("log derivative theorem", Box::new(move || main_theorem(&mut sampler(7), n))),
            ("derivative of picard terms", Box::new(move || in_proof_identity(&mut sampler(8), n))),
            ("technical lemma", Box::new(move || technical_lemma(&mut sampler(9), n.min(3), n))),
            ("pre-lie solution", Box::new(move || prelie_solution(&mut sampler(10), n))),
            ("pre-lie associator", Box::new(move || prelie_associator(&mut sampler(11), n, 100))),
        ],
        Suite::Magnus => vec![
            ("bernoulli recurrence", Box::new(move || bernoulli_numbers(2 * n + 2))),
            ("magnus forward", Box::new(move || magnus_forward_theorem(&mut sampler(12), n, 50))),
            ("binomial lemma", Box::new(move || binomial_lemma(&mut sampler(13), n.min(5), n))),
            ("magnus round trip", Box::new(move || magnus_round_trip(&mut sampler(14), n, 50))),
            ("dynkin inverse bijection", Box::new(move || dynkin_inverse_bijection(&mut sampler(15), n, 20))),
            ("magnus uniqueness", Box::new(move || magnus_uniqueness(&mut sampler(16), n, 10))),
        ],
        Suite::Ode => vec![
            ("constant generator", Box::new(move || ode_constant(&mut sampler(17), n))),
            ("magnus relation", Box::new(move || ode_relation(&mut sampler(18), n, 3))),
            ("picard fixed point", Box::new(move || ode_fixed_point(&mut sampler(19), n))),
            ("time pre-lie law", Box::new(move || ode_prelie_law(&mut sampler(20), n, 10))),
            ("integral rota baxter", Box::new(move || ode_integral_rb(&mut sampler(21), 10))),
        ],
    };
    checks
        .into_iter()
        .map(|(name, f)| {
            let (passed, detail) = match f() {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            CheckOutcome {
                suite: suite.name().to_string(),
                name: name.to_string(),
                passed,
                detail,
            }
        })
        .collect()
}

pub fn run_suites(suites: &[Suite], config: &VerifyConfig) -> Vec<CheckOutcome> {
    suites.iter().flat_map(|&s| run_suite(s, config)).collect()
}

fn tensor(k: usize) -> TensorAlgebra {
    TensorAlgebra::new(k).expect("alphabet size is positive")
}

pub fn witt_algebra(max_degree: usize) -> Result<PbwAlgebra> {
    Ok(PbwAlgebra::new(witt(max_degree, WittDerivation::Graduation)?))
}

fn with_witt(max_degree: usize, f: impl FnOnce(&PbwAlgebra) -> Check) -> Check {
    f(&witt_algebra(max_degree).map_err(lib)?)
}

fn basis_up_to<H: HopfAlgebra>(alg: &H, max_degree: usize) -> Vec<H::Key> {
    (0..=max_degree).flat_map(|n| alg.basis_keys(n)).collect()
}

// ---- Hopf structure ----

/// `(Δ ⊗ id)Δ = (id ⊗ Δ)Δ` on every basis element of degree `≤ max_degree`.
pub fn coassociativity<H: HopfAlgebra>(alg: &H, max_degree: usize) -> Check {
    let keys = basis_up_to(alg, max_degree);
    for k in &keys {
        let delta = alg.coproduct_key(k);
        let mut left: LinComb<(H::Key, (H::Key, H::Key))> = LinComb::zero();
        let mut right = LinComb::zero();
        for ((u, v), c) in delta.iter() {
            for ((u1, u2), c2) in alg.coproduct_key(u).iter() {
                left.add_term((u1.clone(), (u2.clone(), v.clone())), c * c2);
            }
            for ((v1, v2), c2) in alg.coproduct_key(v).iter() {
                right.add_term((u.clone(), (v1.clone(), v2.clone())), c * c2);
            }
        }
        ensure(left == right, || format!("fails on {k:?}"))?;
    }
    Ok(format!("{} basis elements", keys.len()))
}

/// `Δ(uv) = Δ(u)Δ(v)` on basis pairs of total degree `≤ max_degree`.
pub fn multiplicativity<H: HopfAlgebra>(alg: &H, max_degree: usize) -> Check {
    let keys = basis_up_to(alg, max_degree);
    let mut count = 0;
    for u in &keys {
        for v in &keys {
            if u.degree() + v.degree() > max_degree {
                continue;
            }
            let (a, b) = (LinComb::basis(u.clone()), LinComb::basis(v.clone()));
            let lhs = alg.coproduct(&alg.mul(&a, &b));
            let rhs = alg.tensor_mul(&alg.coproduct(&a), &alg.coproduct(&b), None);
            ensure(lhs == rhs, || format!("fails on {u:?} · {v:?}"))?;
            count += 1;
        }
    }
    Ok(format!("{count} pairs"))
}

/// `S ∗ Id = Id ∗ S = ν` on basis elements of degree `≤ max_degree`.
pub fn antipode_convolution<H: HopfAlgebra>(alg: &H, max_degree: usize) -> Check {
    let keys = basis_up_to(alg, max_degree);
    let s = |k: &H::Key| alg.antipode_key(k);
    let id = |k: &H::Key| LinComb::basis(k.clone());
    for k in &keys {
        let a = LinComb::basis(k.clone());
        let nu = if k.degree() == 0 { a.clone() } else { LinComb::zero() };
        ensure(alg.convolve_apply(&s, &id, &a) == nu, || format!("S*Id fails on {k:?}"))?;
        ensure(alg.convolve_apply(&id, &s, &a) == nu, || format!("Id*S fails on {k:?}"))?;
    }
    Ok(format!("{} basis elements", keys.len()))
}

/// `S² = Id` on basis elements of degree `≤ max_degree`.
pub fn antipode_involution<H: HopfAlgebra>(alg: &H, max_degree: usize) -> Check {
    let keys = basis_up_to(alg, max_degree);
    for k in &keys {
        let a = LinComb::basis(k.clone());
        ensure(alg.antipode(&alg.antipode(&a)) == a, || format!("fails on {k:?}"))?;
    }
    Ok(format!("{} basis elements", keys.len()))
}

fn mobius(n: usize) -> i64 {
    let (mut n, mut sign, mut p) = (n, 1, 2);
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        -sign
    } else {
        sign
    }
}

/// Number of Lyndon words of length `n`: `(1/n) Σ_{d | n} μ(d) k^{n/d}`.
pub fn necklace_count(k: usize, n: usize) -> usize {
    let s: i64 = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| mobius(d) * (k as i64).pow((n / d) as u32))
        .sum();
    (s / n as i64) as usize
}

/// Lyndon counts match the necklace formula and the bracketings are
/// primitive and linearly independent.
pub fn lyndon_basis(alphabet_sizes: &[usize], max_degree: usize) -> Check {
    for &k in alphabet_sizes {
        for n in 1..=max_degree {
            let words = lyndon_words(k, n).map_err(lib)?;
            ensure(words.len() == necklace_count(k, n), || {
                format!("{} Lyndon words of length {n} over {k} letters", words.len())
            })?;
            let brackets: Vec<TensorElt> = words.iter().map(lyndon_bracketing).collect::<Result<_>>().map_err(lib)?;
            ensure(brackets.iter().all(is_primitive), || format!("non-primitive bracketing in degree {n}"))?;
            ensure(rank(&brackets) == brackets.len(), || format!("dependent bracketings in degree {n}"))?;
        }
    }
    Ok(format!("alphabets {alphabet_sizes:?}, degrees ≤ {max_degree}"))
}

fn random_diagonal_endo(s: &mut Sampler) -> GradedEndo<Word> {
    let d = DiagonalDerivation::weights(s.weights(2));
    GradedEndo::new(move |w: &Word| d.apply(&LinComb::basis(w.clone()))).with_degree_shift(0)
}

/// `(f ∗ g) ∗ h = f ∗ (g ∗ h)` for random diagonal maps, the identity and
/// the antipode, on all words of length `≤ max_degree`.
pub fn convolution_associativity(s: &mut Sampler, max_degree: usize, trials: usize) -> Check {
    let t = tensor(2);
    let words = t.words_up_to(max_degree);
    for _ in 0..trials {
        let mut pool = vec![GradedEndo::identity(), GradedEndo::antipode(&t), GradedEndo::graduation()];
        pool.push(random_diagonal_endo(s));
        pool.push(random_diagonal_endo(s));
        let f = s.pick(&pool).clone();
        let g = s.pick(&pool).clone();
        let h = s.pick(&pool).clone();
        let left = f.convolve(&g, &t).convolve(&h, &t);
        let right = f.convolve(&g.convolve(&h, &t), &t);
        for w in &words {
            ensure(left.apply_key(w) == right.apply_key(w), || format!("fails on {w}"))?;
        }
    }
    Ok(format!("{trials} triples"))
}

/// The PBW model of the free Lie algebra on its Lyndon basis reproduces the
/// tensor-algebra Dynkin operator: `D` acts as `n` on degree-`n` Lie
/// elements in both, and the embedding commutes with brackets.
pub fn free_lie_agreement(s: &mut Sampler, max_degree: usize, trials: usize) -> Check {
    let (pres, images) = free_lie(2, max_degree).map_err(lib)?;
    let u = PbwAlgebra::new(pres.clone());
    let embed = |v: &[(usize, Rational)]| {
        let mut out = TensorElt::zero();
        for (i, c) in v {
            out.add_scaled(&images[*i], c);
        }
        out
    };
    for i in 0..pres.dim() {
        for j in 0..pres.dim() {
            if pres.degree(i) + pres.degree(j) > max_degree {
                continue;
            }
            let lhs = embed(&pres.bracket_basis(i, j));
            ensure(lhs == bracket(&images[i], &images[j]), || format!("bracket ({i}, {j}) disagrees"))?;
        }
    }
    for _ in 0..trials {
        let l = s.pbw_lie(&u, max_degree);
        let d = log_derivative(&u, &DiagonalDerivation::Graduation, &l);
        ensure(d == DiagonalDerivation::Graduation.apply(&l), || "D(l) ≠ Y(l) in U(Lie(X))".into())?;
    }
    Ok(format!("{} basis elements, {trials} Lie elements", pres.dim()))
}

// ---- Dynkin operators ----

/// `D(l) = n·l` for every Lyndon bracketing `l` of degree `n ≤ max_degree`.
pub fn specht_wever(alphabet_sizes: &[usize], max_degree: usize) -> Check {
    let mut count = 0;
    for &k in alphabet_sizes {
        let y = LetterDerivation::graduation(k);
        for n in 1..=max_degree {
            for w in lyndon_words(k, n).map_err(lib)? {
                let l = lyndon_bracketing(&w).map_err(lib)?;
                ensure(dynkin_convolution(&y, &l) == l.scaled(&int(n as i64)), || format!("fails on {w}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} Lyndon brackets"))
}

/// `D_{x_i}(l) = mult_i(l)·l` for every Lyndon bracketing of degree `≤ max_degree`.
pub fn twisted_specht_wever(alphabet_sizes: &[usize], letters: &[u8], max_degree: usize) -> Check {
    let mut count = 0;
    for &k in alphabet_sizes {
        for &i in letters {
            let f = LetterDerivation::letter_count(k, i);
            for n in 1..=max_degree {
                for w in lyndon_words(k, n).map_err(lib)? {
                    let l = lyndon_bracketing(&w).map_err(lib)?;
                    let m = w.count(i) as i64;
                    ensure(dynkin_convolution(&f, &l) == l.scaled(&int(m)), || {
                        format!("fails on {w} for letter {i}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} cases"))
}

/// Left-nested bracket form equals the convolution `S ∗ δ` on every word of
/// length `≤ max_degree` over two letters, for `Y`, both letter counts and
/// `random` random diagonal derivations; every output is primitive.
pub fn bracket_vs_convolution(s: &mut Sampler, max_degree: usize, random: usize) -> Check {
    let t = tensor(2);
    let mut derivations = vec![
        LetterDerivation::graduation(2),
        LetterDerivation::letter_count(2, 0),
        LetterDerivation::letter_count(2, 1),
    ];
    derivations.extend((0..random).map(|_| LetterDerivation::diagonal(s.weights(2))));
    let words = t.words_up_to(max_degree);
    for f in &derivations {
        for w in &words {
            let lhs = dynkin_bracket(f, w);
            let rhs = dynkin_convolution(f, &LinComb::basis(w.clone()));
            ensure(lhs == rhs, || format!("fails on {w}"))?;
            ensure(is_primitive(&lhs), || format!("non-primitive output on {w}"))?;
        }
    }
    Ok(format!("{} derivations × {} words", derivations.len(), words.len()))
}

/// Both projections fix Lie elements and are idempotent on random inputs.
pub fn projection_idempotent(s: &mut Sampler, max_degree: usize, trials: usize) -> Check {
    for _ in 0..trials {
        let n = s.rng().gen_range(1..=max_degree);
        let a = s.tensor_homogeneous(2, n, 4);
        let p = lie_project(2, &a, ProjectionMode::Classical).map_err(lib)?;
        ensure(is_primitive(&p), || format!("classical projection of {a} is not Lie"))?;
        ensure(lie_project(2, &p, ProjectionMode::Classical).map_err(lib)? == p, || {
            format!("classical projection not idempotent on {a}")
        })?;
        let l = s.lie_homogeneous(2, n);
        ensure(lie_project(2, &l, ProjectionMode::Classical).map_err(lib)? == l, || {
            format!("classical projection moves {l}")
        })?;
        // per-letter mode on a component homogeneous in the letter a
        let word = s.word(2, n);
        let m = word.count(0);
        if m > 0 {
            let comp: TensorElt = a.filter(|w| w.count(0) == m);
            let p = lie_project(2, &comp, ProjectionMode::PerLetter(0)).map_err(lib)?;
            ensure(is_primitive(&p), || "per-letter projection is not Lie".into())?;
            ensure(lie_project(2, &p, ProjectionMode::PerLetter(0)).map_err(lib)? == p, || {
                "per-letter projection not idempotent".into()
            })?;
        }
    }
    Ok(format!("{trials} inputs"))
}

/// For a diagonal letter derivation, `D_δ(l)` on a multi-homogeneous Lie
/// element is its eigenvalue times `l`.
pub fn eigenvalue_law(s: &mut Sampler, max_degree: usize, trials: usize) -> Check {
    for _ in 0..trials {
        let weights = s.weights(2);
        let f = LetterDerivation::diagonal(weights.clone());
        let n = s.rng().gen_range(1..=max_degree);
        let w = lyndon_words(2, n).map_err(lib)?;
        let w = s.pick(&w).clone();
        let l = lyndon_bracketing(&w).map_err(lib)?;
        let grading = MultiGrading::of(&w, 2);
        let ev: Rational = grading
            .0
            .iter()
            .zip(&weights)
            .map(|(&m, c)| c * int(m as i64))
            .sum();
        ensure(dynkin_convolution(&f, &l) == l.scaled(&ev), || format!("fails on {w}"))?;
    }
    Ok(format!("{trials} cases"))
}

// ---- Rota-Baxter recursions ----

fn y_op() -> LinearOp<TensorElt> {
    Arc::new(|x: &TensorElt| DiagonalDerivation::Graduation.apply(x))
}

fn diag_op(weights: Vec<Rational>) -> LinearOp<TensorElt> {
    let d = DiagonalDerivation::weights(weights);
    Arc::new(move |x: &TensorElt| d.apply(x))
}

/// `R = Y⁻¹` on `T(X)` with derivation `d`, weight 0.
pub fn free_context(d: LinearOp<TensorElt>, order: usize) -> Result<RbContext<TensorAlgebra>> {
    RbContext::graded_inverse(tensor(2), DiagonalDerivation::Graduation, Some(d), order)
}

/// Strict partial sums on `T(X)`-valued sequences with `d = Y` pointwise, weight −1.
pub fn sequence_context(points: usize, order: usize) -> Result<RbContext<SequenceAlgebra<TensorAlgebra>>> {
    RbContext::sequence(tensor(2), points, Some(y_op()), order)
}

fn ab() -> TensorElt {
    bracket(&letter(0), &letter(1))
}

/// Fixed generators `a`, `a + b`, `a + [a,b]` plus one random Lie element.
fn free_generators(s: &mut Sampler, order: usize) -> Vec<TensorElt> {
    vec![
        letter(0),
        letter(0) + letter(1),
        letter(0) + ab(),
        s.lie_element(2, order.min(3)),
    ]
}

fn sequence_generators(s: &mut Sampler, points: usize, order: usize) -> Vec<Vec<TensorElt>> {
    let mut fixed = vec![TensorElt::zero(); points];
    fixed[0] = letter(0);
    if points > 1 {
        fixed[1] = letter(1) + ab();
    }
    if points > 2 {
        fixed[2] = letter(0) + letter(1);
    }
    let random = (0..points).map(|_| s.lie_element(2, order.min(2))).collect();
    vec![fixed, random]
}

/// Every contract checked for each realization: the two weight-0 contexts
/// on `T(X)` and the weight −1 sequence context.
fn for_each_realization(
    s: &mut Sampler,
    order: usize,
    mut free: impl FnMut(&RbContext<TensorAlgebra>, &TensorElt) -> std::result::Result<(), String>,
    mut seq: impl FnMut(&RbContext<SequenceAlgebra<TensorAlgebra>>, &Vec<TensorElt>) -> std::result::Result<(), String>,
) -> Check {
    let mut count = 0;
    for d in [y_op(), diag_op(vec![int(2), int(3)])] {
        let ctx = free_context(d, order).map_err(lib)?;
        for x in free_generators(s, order) {
            free(&ctx, &x).map_err(|e| format!("θ = 0, x = {x}: {e}"))?;
            count += 1;
        }
    }
    let ctx = sequence_context(3, order).map_err(lib)?;
    for x in sequence_generators(s, 3, order) {
        seq(&ctx, &x).map_err(|e| format!("θ = -1: {e}"))?;
        count += 1;
    }
    Ok(format!("{count} generators, order {order}"))
}

/// `φ⁻¹ d(φ) = Σ_{n ≤ order} R_d^[n](x)`, both sides computed independently.
pub fn main_theorem(s: &mut Sampler, order: usize) -> Check {
    fn holds<A: Algebra>(ctx: &RbContext<A>, x: &A::Elem, order: usize) -> std::result::Result<(), String> {
        let sum = ctx.logderiv_sum(x, order).map_err(lib)?;
        let direct = ctx.logderiv_direct(x, order).map_err(lib)?;
        ensure(sum == direct, || "recursion and φ⁻¹dφ differ".into())
    }
    for_each_realization(s, order, |c, x| holds(c, x, order), |c, x| holds(c, x, order))
}

/// `d(R^[p]) = R_d^[p] + Σ_{0<i<p} R^[i] R_d^[p-i]` for `p ≤ order`.
pub fn in_proof_identity(s: &mut Sampler, order: usize) -> Check {
    fn holds<A: Algebra>(ctx: &RbContext<A>, x: &A::Elem, order: usize) -> std::result::Result<(), String> {
        let alg = ctx.algebra();
        let r = ctx.picard_terms(x, order).map_err(lib)?;
        let rd: Vec<A::Elem> = ctx.logderiv_terms(x, order).map_err(lib)?.into_iter().map(|t| t.term).collect();
        for p in 1..=order {
            let lhs = alg.truncate(&ctx.d(&r[p - 1]).map_err(lib)?, order);
            let mut rhs = rd[p - 1].clone();
            for i in 1..p {
                rhs = alg.add(&rhs, &alg.mul_truncated(&r[i - 1], &rd[p - i - 1], order));
            }
            ensure(lhs == alg.truncate(&rhs, order), || format!("fails at p = {p}"))?;
        }
        Ok(())
    }
    for_each_realization(s, order, |c, x| holds(c, x, order), |c, x| holds(c, x, order))
}

/// For `m, n ≤ max_mn` (with `R^[0] = 1` and `I^[n+1] = [R_d^[n], x] + θ x I^[n]`):
/// `R(R^[m] I^[n+1]) = R^[m] R_d^[n+1] - R(R^[m-1] x R_d^[n+1]) + θ R(R^[m-1] x I^[n+1])`.
pub fn technical_lemma(s: &mut Sampler, max_mn: usize, order: usize) -> Check {
    fn holds<A: Algebra>(
        ctx: &RbContext<A>,
        x: &A::Elem,
        max_mn: usize,
        order: usize,
    ) -> std::result::Result<(), String> {
        let alg = ctx.algebra();
        let mul = |a: &A::Elem, b: &A::Elem| alg.mul_truncated(a, b, order);
        let mut r = vec![alg.one()];
        r.extend(ctx.picard_terms(x, order).map_err(lib)?);
        let terms = ctx.logderiv_terms(x, order).map_err(lib)?;
        for m in 1..=max_mn.min(order) {
            for n in 1..=max_mn.min(order - 1) {
                let (rd_n, i_n) = (&terms[n - 1].term, &terms[n - 1].integrand);
                let next = alg.add(&alg.bracket(rd_n, x), &alg.scale(&mul(x, i_n), ctx.theta()));
                let next = alg.truncate(&next, order);
                let rd_next = ctx.rb(&next);
                let lhs = ctx.rb(&mul(&r[m], &next));
                let rm1x = mul(&r[m - 1], x);
                let rhs = alg.add(
                    &alg.sub(&mul(&r[m], &rd_next), &ctx.rb(&mul(&rm1x, &rd_next))),
                    &alg.scale(&ctx.rb(&mul(&rm1x, &next)), ctx.theta()),
                );
                ensure(alg.truncate(&lhs, order) == alg.truncate(&rhs, order), || {
                    format!("fails at m = {m}, n = {n}")
                })?;
                ensure(alg.truncate(&rd_next, order) == alg.truncate(&terms[n].term, order), || {
                    format!("I^[{}] recursion mismatch", n + 1)
                })?;
            }
        }
        Ok(())
    }
    for_each_realization(
        s,
        order,
        |c, x| holds(c, x, max_mn, order),
        |c, x| holds(c, x, max_mn, order),
    )
}

/// `R(y) = Σ R_d^[n](x)` for the solution `y` of `y = d(x) + y ∘ x`.
pub fn prelie_solution(s: &mut Sampler, order: usize) -> Check {
    fn holds<A: Algebra>(ctx: &RbContext<A>, x: &A::Elem, order: usize) -> std::result::Result<(), String> {
        let y = ctx.prelie_solve(x, order).map_err(lib)?;
        let sum = ctx.logderiv_sum(x, order).map_err(lib)?;
        ensure(ctx.algebra().truncate(&ctx.rb(&y), order) == sum, || "R(y) ≠ Σ R_d^[n]".into())?;
        let fixed = ctx.algebra().add(&ctx.d(x).map_err(lib)?, &ctx.prelie(&y, x));
        ensure(ctx.algebra().truncate(&fixed, order) == y, || "y is not a fixed point".into())
    }
    for_each_realization(s, order, |c, x| holds(c, x, order), |c, x| holds(c, x, order))
}

/// `(x∘y)∘z - x∘(y∘z) = (y∘x)∘z - y∘(x∘z)` on random triples in both
/// weights: the associator is symmetric in its first two arguments (a left
/// pre-Lie product). Symmetry in the last two arguments fails in general.
pub fn prelie_associator(s: &mut Sampler, order: usize, triples: usize) -> Check {
    fn symmetric<A: Algebra>(ctx: &RbContext<A>, x: &A::Elem, y: &A::Elem, z: &A::Elem) -> bool {
        let alg = ctx.algebra();
        let assoc = |x: &A::Elem, y: &A::Elem, z: &A::Elem| {
            alg.sub(&ctx.prelie(&ctx.prelie(x, y), z), &ctx.prelie(x, &ctx.prelie(y, z)))
        };
        assoc(x, y, z) == assoc(y, x, z)
    }
    let free = free_context(y_op(), order).map_err(lib)?;
    let seq = sequence_context(3, order).map_err(lib)?;
    let top = (order / 3).max(1);
    for i in 0..triples {
        let mut g = || s.tensor_positive(2, top, 2);
        let (x, y, z) = (g(), g(), g());
        ensure(symmetric(&free, &x, &y, &z), || format!("θ = 0 associator not symmetric on triple {i}"))?;
        let mut g = || (0..3).map(|_| s.tensor_positive(2, top, 2)).collect::<Vec<_>>();
        let (x, y, z) = (g(), g(), g());
        ensure(symmetric(&seq, &x, &y, &z), || format!("θ = -1 associator not symmetric on triple {i}"))?;
    }
    Ok(format!("{triples} triples per weight"))
}

/// Random homogeneous pairs satisfy the Rota-Baxter identity for `Y⁻¹` on
/// `T(X)` and the Witt algebra and for partial sums on sequences.
pub fn rota_baxter_identity(s: &mut Sampler, order: usize, trials: usize) -> Check {
    let free = free_context(y_op(), order).map_err(lib)?;
    let seq = sequence_context(3, order).map_err(lib)?;
    let w = witt_algebra(order).map_err(lib)?;
    let wctx = RbContext::graded_inverse(w.clone(), DiagonalDerivation::Graduation, None, order).map_err(lib)?;
    let half = (order / 2).max(1);
    for _ in 0..trials {
        let (n, m) = (s.rng().gen_range(1..=half), s.rng().gen_range(1..=half));
        let x = s.tensor_homogeneous(2, n, 3);
        let y = s.tensor_homogeneous(2, m, 3);
        ensure(free.check_identity(&x, &y), || "fails on T(X)".into())?;
        let xs: Vec<TensorElt> = (0..3).map(|_| s.tensor_homogeneous(2, n, 2)).collect();
        let ys: Vec<TensorElt> = (0..3).map(|_| s.tensor_homogeneous(2, m, 2)).collect();
        ensure(seq.check_identity(&xs, &ys), || "fails on sequences".into())?;
        let px = s.pbw_homogeneous(&w, n, 2);
        let py = s.pbw_homogeneous(&w, m, 2);
        ensure(wctx.check_identity(&px, &py), || "fails on the Witt algebra".into())?;
    }
    Ok(format!("{trials} pairs per carrier"))
}

/// The Atkinson solution for `R = Y⁻¹` solves `φ = 1 + R(φx)`, is group-like
/// with `S(φ)φ = 1`, and equals `D⁻¹(D(φ))`; for `x ∈ {a, a+b, a+[a,b]}` and
/// `x = e_1 + e_2` in the Witt algebra.
pub fn atkinson_grouplike(order: usize) -> Check {
    fn holds<H>(alg: &H, x: &H::Elem, order: usize) -> std::result::Result<(), String>
    where
        H: HopfAlgebra + Clone + Send + Sync + 'static,
    {
        let ctx = RbContext::graded_inverse(alg.clone(), DiagonalDerivation::Graduation, None, order).map_err(lib)?;
        let phi = ctx.atkinson_solve(x, order).map_err(lib)?.element(alg);
        ensure(ctx.atkinson_residual(&phi, x, order).is_zero(), || "φ ≠ 1 + R(φx)".into())?;
        ensure(alg.is_grouplike(&phi, order), || "φ is not group-like".into())?;
        ensure(alg.mul_truncated(&alg.antipode(&phi), &phi, order) == alg.one(), || "S(φ)φ ≠ 1".into())?;
        let d = log_derivative(alg, &DiagonalDerivation::Graduation, &phi).truncated(order);
        let back = dynkin_inverse(alg, &d, order).map_err(lib)?.element(alg);
        ensure(back == phi, || "D⁻¹(D(φ)) ≠ φ".into())
    }
    let t = tensor(2);
    let xs = [letter(0), letter(0) + letter(1), letter(0) + ab()];
    for x in &xs {
        holds(&t, x, order).map_err(|e| format!("x = {x}: {e}"))?;
    }
    let w = witt_algebra(order.max(2)).map_err(lib)?;
    let x = w.generator(0) + w.generator(1);
    holds(&w, &x, order).map_err(|e| format!("x = e1 + e2: {e}"))?;
    Ok(format!("4 generators, order {order}"))
}

// ---- Magnus ----

/// `Σ_{k≤n} C(n+1,k) B_k = 0` for `1 ≤ n ≤ max`, `B_1 = -1/2`, odd `B_n = 0`
/// for `n ≥ 3`, and `Σ B_k/k! · 1/(n-k+1)! = δ_{n0}` (`u/(e^u-1) · (e^u-1)/u = 1`).
pub fn bernoulli_numbers(max: usize) -> Check {
    let table = BernoulliTable::new(max);
    let b = table.values();
    for n in 1..=max {
        let s: Rational = (0..=n).map(|k| binomial(n + 1, k) * &b[k]).sum();
        ensure(s.is_zero(), || format!("recurrence fails at n = {n}"))?;
        if n >= 3 && n % 2 == 1 {
            ensure(b[n].is_zero(), || format!("B_{n} ≠ 0"))?;
        }
        let cauchy: Rational = (0..=n)
            .map(|k| &b[k] / crate::rational::factorial(k) / crate::rational::factorial(n - k + 1))
            .sum();
        ensure(cauchy.is_zero(), || format!("generating function fails at n = {n}"))?;
    }
    ensure(bernoulli(1).map_err(lib)? == crate::rational::rat(-1, 2), || "B_1 ≠ -1/2".into())?;
    ensure(bernoulli(-1).is_err(), || "negative index accepted".into())?;
    Ok(format!("B_0..B_{max}"))
}

/// `magnus_forward(δ, l) = S(exp l)·δ(exp l)` for `δ ∈ {Y, random diagonal}`
/// on random Lie `l` of degree `≤ order`.
pub fn magnus_forward_theorem(s: &mut Sampler, order: usize, trials: usize) -> Check {
    let t = tensor(2);
    for i in 0..trials {
        let l = s.lie_element(2, order);
        let delta = if i % 2 == 0 {
            DiagonalDerivation::Graduation
        } else {
            DiagonalDerivation::weights(s.positive_weights(2))
        };
        let g = exp_series(&t, &l, order);
        let rhs = t.mul_truncated(&t.antipode(&g), &delta.apply(&g), order);
        let lhs = magnus_forward(&t, &delta, &l, order).map_err(lib)?;
        ensure(lhs == rhs, || format!("fails on l = {l}"))?;
        ensure(lhs == log_derivative(&t, &delta, &g).truncated(order), || {
            format!("convolution disagrees on l = {l}")
        })?;
    }
    let w = witt_algebra(order).map_err(lib)?;
    for _ in 0..trials / 5 {
        let l = s.pbw_lie(&w, order);
        let g = exp_series(&w, &l, order);
        let rhs = w.mul_truncated(&w.antipode(&g), &DiagonalDerivation::Graduation.apply(&g), order);
        let lhs = magnus_forward(&w, &DiagonalDerivation::Graduation, &l, order).map_err(lib)?;
        ensure(lhs == rhs, || "fails in the Witt algebra".into())?;
    }
    Ok(format!("{} Lie elements", trials + trials / 5))
}

/// `x·l^k = Σ_i C(k,i) l^{k-i}·(-ad_l)^i(x)` for `k ≤ max_k` in `T(X)` and
/// the Witt algebra.
pub fn binomial_lemma(s: &mut Sampler, max_k: usize, order: usize) -> Check {
    fn holds<A: Algebra>(alg: &A, x: &A::Elem, l: &A::Elem, k: usize) -> bool {
        let pow = |j: usize| (0..j).fold(alg.one(), |acc, _| alg.mul(&acc, l));
        let neg_l = alg.neg(l);
        let lhs = alg.mul(x, &pow(k));
        let rhs = (0..=k).fold(alg.zero(), |acc, i| {
            let term = alg.mul(&pow(k - i), &ad_power(alg, &neg_l, i, x));
            alg.add(&acc, &alg.scale(&term, &binomial(k, i)))
        });
        lhs == rhs
    }
    let t = tensor(2);
    let w = witt_algebra(order).map_err(lib)?;
    for k in 0..=max_k {
        let d = s.rng().gen_range(1..=2);
        let x = s.tensor_homogeneous(2, d, 2);
        let l = s.lie_element(2, 2);
        ensure(holds(&t, &x, &l, k), || format!("fails in T(X) for k = {k}"))?;
        let d = s.rng().gen_range(1..=order.min(2));
        let x = s.pbw_homogeneous(&w, d, 2);
        let l = s.pbw_lie(&w, order.min(2));
        ensure(holds(&w, &x, &l, k), || format!("fails in the Witt algebra for k = {k}"))?;
    }
    Ok(format!("k ≤ {max_k}"))
}

/// `magnus_forward ∘ magnus_solve = id` on random Lie elements, for `Y` and
/// random positive diagonal derivations on `T(X)` and `Y` on the Witt algebra.
pub fn magnus_round_trip(s: &mut Sampler, order: usize, trials: usize) -> Check {
    let t = tensor(2);
    for i in 0..trials {
        let h = s.lie_element(2, order);
        let delta = if i % 2 == 0 {
            DiagonalDerivation::Graduation
        } else {
            DiagonalDerivation::weights(s.positive_weights(2))
        };
        let l = magnus_solve(&t, &delta, &h, order).map_err(lib)?;
        ensure(t.is_primitive(&l), || format!("solution for h = {h} is not Lie"))?;
        ensure(magnus_forward(&t, &delta, &l, order).map_err(lib)? == h, || {
            format!("round trip fails on h = {h}")
        })?;
    }
    let w = witt_algebra(order).map_err(lib)?;
    for _ in 0..trials / 5 {
        let h = s.pbw_lie(&w, order);
        let l = magnus_solve(&w, &DiagonalDerivation::Graduation, &h, order).map_err(lib)?;
        ensure(magnus_forward(&w, &DiagonalDerivation::Graduation, &l, order).map_err(lib)? == h, || {
            "round trip fails in the Witt algebra".into()
        })?;
    }
    Ok(format!("{} Lie elements", trials + trials / 5))
}

/// `D ∘ D⁻¹ = id` on Lie elements, `D⁻¹ ∘ D = id` on group-like elements,
/// and `D⁻¹(l)` is group-like.
pub fn dynkin_inverse_bijection(s: &mut Sampler, order: usize, trials: usize) -> Check {
    let t = tensor(2);
    let y = DiagonalDerivation::Graduation;
    for _ in 0..trials {
        let l = s.lie_element(2, order);
        let g = dynkin_inverse(&t, &l, order).map_err(lib)?.element(&t);
        ensure(t.is_grouplike(&g, order), || format!("D⁻¹({l}) is not group-like"))?;
        ensure(log_derivative(&t, &y, &g).truncated(order) == l, || format!("D(D⁻¹({l})) ≠ l"))?;
        let g = exp_series(&t, &s.lie_element(2, order), order);
        let d = log_derivative(&t, &y, &g).truncated(order);
        ensure(dynkin_inverse(&t, &d, order).map_err(lib)?.element(&t) == g, || "D⁻¹(D(g)) ≠ g".into())?;
    }
    let w = witt_algebra(order).map_err(lib)?;
    for _ in 0..trials / 4 {
        let l = s.pbw_lie(&w, order);
        let g = dynkin_inverse(&w, &l, order).map_err(lib)?.element(&w);
        ensure(w.is_grouplike(&g, order), || "D⁻¹(l) is not group-like in the Witt algebra".into())?;
        ensure(log_derivative(&w, &y, &g).truncated(order) == l, || "D(D⁻¹(l)) ≠ l in the Witt algebra".into())?;
    }
    Ok(format!("{} Lie elements", trials + trials / 4))
}

/// Perturbing the solution of `magnus_forward(δ, l) = h` in its lowest
/// nonzero degree breaks the equation.
pub fn magnus_uniqueness(s: &mut Sampler, order: usize, trials: usize) -> Check {
    let t = tensor(2);
    let delta = DiagonalDerivation::Graduation;
    for _ in 0..trials {
        let h = s.lie_element(2, order);
        let l = magnus_solve(&t, &delta, &h, order).map_err(lib)?;
        let low = l.min_degree().expect("degree-1 part is nonzero");
        let bump = s.lie_homogeneous(2, low);
        let perturbed = &l + &bump;
        ensure(magnus_forward(&t, &delta, &perturbed, order).map_err(lib)? != h, || {
            format!("perturbation of the solution for {h} still solves the equation")
        })?;
    }
    Ok(format!("{trials} perturbations"))
}

// ---- ODE ----

/// `t·A`
fn t_linear(a: &MatrixPoly) -> MatrixPoly {
    let dim = a.dim();
    let t = (0..dim).fold(MatrixPoly::zero(dim), |acc, i| {
        acc.add(&MatrixPoly::unit(dim, i, i, Rational::one(), 1))
    });
    a.mul(&t)
}

/// For constant `A`: `Ω = λtA`, no higher `λ`-components.
pub fn ode_constant(s: &mut Sampler, order: usize) -> Check {
    for dim in [2, 3] {
        let a = random_matrix(s, dim, 0);
        let omega = omega_log(&picard_matrix(&a, order).map_err(lib)?, order).map_err(lib)?;
        ensure(omega == LambdaSeries::single(1, t_linear(&a)), || format!("Ω ≠ λtA for dimension {dim}"))?;
        ensure(magnus_relation_check(&a, order).map_err(lib)?, || "relation fails".into())?;
    }
    Ok(format!("order {order}"))
}

/// `magnus_relation_check(A, order)` and `exp(Ω) = X` for random `2×2` and
/// `3×3` generators of `t`-degree `≤ 2`.
pub fn ode_relation(s: &mut Sampler, order: usize, per_dim: usize) -> Check {
    for dim in [2, 3] {
        let alg = LambdaAlgebra::new(dim).map_err(lib)?;
        for _ in 0..per_dim {
            let a = random_matrix(s, dim, 2);
            ensure(magnus_relation_check(&a, order).map_err(lib)?, || {
                format!("relation fails for A = {a}")
            })?;
            let x = picard_matrix(&a, order).map_err(lib)?;
            let omega = omega_log(&x, order).map_err(lib)?;
            ensure(exp_series(&alg, &omega, order) == x, || format!("exp(Ω) ≠ X for A = {a}"))?;
        }
    }
    Ok(format!("{} generators, order {order}", 2 * per_dim))
}

/// The Picard series is the Atkinson fixed point for `R = ∫_0^t`, and
/// `X' = X·λA`.
pub fn ode_fixed_point(s: &mut Sampler, order: usize) -> Check {
    for dim in [2, 3] {
        let alg = LambdaAlgebra::new(dim).map_err(lib)?;
        let r: LinearOp<LambdaSeries> = Arc::new(|x: &LambdaSeries| x.integral());
        let ctx = RbContext::new(alg, r, int(0), None, order).map_err(lib)?;
        let a = random_matrix(s, dim, 2);
        let gen = LambdaSeries::single(1, a.clone());
        let x = picard_matrix(&a, order).map_err(lib)?;
        ensure(alg.is_zero(&ctx.atkinson_residual(&x, &gen, order)), || "X ≠ 1 + R(X·λA)".into())?;
        let lhs = alg.truncate(&x.derivative(), order);
        let rhs = alg.mul_truncated(&x, &gen, order);
        ensure(lhs == rhs, || "X' ≠ X·λA".into())?;
    }
    Ok(format!("order {order}"))
}

/// `(M ↶ N)' = [N, M']` on random polynomial pairs.
pub fn ode_prelie_law(s: &mut Sampler, order: usize, trials: usize) -> Check {
    let alg = LambdaAlgebra::new(2).map_err(lib)?;
    let half = (order / 2).max(1);
    for _ in 0..trials {
        let m = random_lambda_series(s, 2, half, 2);
        let n = random_lambda_series(s, 2, half, 2);
        let lhs = prelie_time(&m, &n, order).map_err(lib)?.derivative();
        let rhs = alg.truncate(&alg.bracket(&n, &m.derivative()), order);
        ensure(lhs == rhs, || "derivative law fails".into())?;
    }
    Ok(format!("{trials} pairs"))
}

/// `∫_0^t` is a weight-0 Rota-Baxter operator on polynomial matrices.
pub fn ode_integral_rb(s: &mut Sampler, trials: usize) -> Check {
    let alg = LambdaAlgebra::new(2).map_err(lib)?;
    let r: LinearOp<LambdaSeries> = Arc::new(|x: &LambdaSeries| x.integral());
    let ctx = RbContext::new(alg, r, int(0), None, 4).map_err(lib)?;
    for _ in 0..trials {
        let x = random_lambda_series(s, 2, 2, 2);
        let y = random_lambda_series(s, 2, 2, 2);
        ensure(ctx.check_identity(&x, &y), || "identity fails".into())?;
    }
    Ok(format!("{trials} pairs"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_at_small_degree() {
        let config = VerifyConfig { max_degree: 4, seed: 1 };
        for outcome in run_suites(&Suite::ALL, &config) {
            assert!(outcome.passed, "{} / {}: {}", outcome.suite, outcome.name, outcome.detail);
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("bogus".parse::<Suite>().is_err());
    }

    #[test]
    fn prelie_associator_is_not_right_symmetric() {
        let ctx = free_context(y_op(), 3).unwrap();
        let alg = ctx.algebra();
        let assoc = |x: &TensorElt, y: &TensorElt, z: &TensorElt| {
            alg.sub(&ctx.prelie(&ctx.prelie(x, y), z), &ctx.prelie(x, &ctx.prelie(y, z)))
        };
        let (a, b) = (letter(0), letter(1));
        assert_ne!(assoc(&a, &a, &b), assoc(&a, &b, &a));
        assert_eq!(assoc(&a, &b, &a), assoc(&b, &a, &a));
    }

    #[test]
    fn necklace_counts() {
        let counts: Vec<usize> = (1..=6).map(|n| necklace_count(2, n)).collect();
        assert_eq!(counts, vec![2, 1, 2, 3, 6, 9]);
        assert_eq!(necklace_count(3, 4), 18);
    }

    #[test]
    fn seeded_runs_are_identical() {
        let config = VerifyConfig { max_degree: 3, seed: 9 };
        assert_eq!(run_suite(Suite::Rb, &config), run_suite(Suite::Rb, &config));
    }
}
