//! Acceptance criteria, one PASS/FAIL line each. All comparisons are exact.

use std::process::Command;
use std::time::{Duration, Instant};

use logderiv_cli::expr::parse;
use logderiv_core::random::Sampler;
use logderiv_core::tensor::TensorAlgebra;
use logderiv_core::verify::*;

type Outcome = Result<String, String>;

fn all(parts: Vec<(&str, Outcome)>) -> Outcome {
    let mut details = Vec::new();
    for (name, r) in parts {
        match r {
            Ok(d) => details.push(format!("{name}: {d}")),
            Err(e) => return Err(format!("{name}: {e}")),
        }
    }
    Ok(details.join("; "))
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let r = f()?;
    let elapsed = start.elapsed();
    if elapsed > limit {
        return Err(format!("took {elapsed:?}, limit {limit:?}"));
    }
    Ok(format!("{r} ({elapsed:.2?})"))
}

fn specht_wever_classical() -> Outcome {
    timed(Duration::from_secs(10), || specht_wever(&[2, 3], 6))
}

fn specht_wever_per_letter() -> Outcome {
    twisted_specht_wever(&[2, 3], &[0, 1], 6)
}

fn bracket_form() -> Outcome {
    bracket_vs_convolution(&mut Sampler::new(3), 6, 100)
}

fn hopf_axioms() -> Outcome {
    let t = TensorAlgebra::new(2).map_err(|e| e.to_string())?;
    let w = witt_algebra(6).map_err(|e| e.to_string())?;
    all(vec![
        ("T(X) coassociativity", coassociativity(&t, 6)),
        ("T(X) multiplicativity", multiplicativity(&t, 6)),
        ("T(X) S*Id = Id*S = ν", antipode_convolution(&t, 6)),
        ("T(X) S² = Id", antipode_involution(&t, 6)),
        ("Witt coassociativity", coassociativity(&w, 6)),
        ("Witt multiplicativity", multiplicativity(&w, 6)),
        ("Witt S*Id = Id*S = ν", antipode_convolution(&w, 6)),
        ("Witt S² = Id", antipode_involution(&w, 6)),
    ])
}

fn atkinson_lemma() -> Outcome {
    atkinson_grouplike(6)
}

fn main_theorem_criterion() -> Outcome {
    all(vec![
        ("φ⁻¹dφ = Σ R_d^[n]", main_theorem(&mut Sampler::new(7), 6)),
        ("d(R^[p])", in_proof_identity(&mut Sampler::new(8), 6)),
        ("technical lemma", technical_lemma(&mut Sampler::new(9), 3, 6)),
    ])
}

fn prelie_criterion() -> Outcome {
    all(vec![
        ("R(y) = Σ R_d^[n]", prelie_solution(&mut Sampler::new(10), 6)),
        ("associator", prelie_associator(&mut Sampler::new(11), 6, 100)),
    ])
}

fn magnus_theorem() -> Outcome {
    all(vec![
        ("forward = S(exp l)δ(exp l)", magnus_forward_theorem(&mut Sampler::new(12), 5, 50)),
        ("binomial lemma", binomial_lemma(&mut Sampler::new(13), 5, 6)),
    ])
}

fn inversion_theorem() -> Outcome {
    all(vec![
        ("forward ∘ solve", magnus_round_trip(&mut Sampler::new(14), 5, 50)),
        ("D∘D⁻¹ and D⁻¹∘D", dynkin_inverse_bijection(&mut Sampler::new(15), 6, 20)),
        ("uniqueness", magnus_uniqueness(&mut Sampler::new(16), 5, 10)),
    ])
}

fn ode_demo() -> Outcome {
    all(vec![
        ("constant A", ode_constant(&mut Sampler::new(17), 5)),
        ("relation and exp(Ω) = X", ode_relation(&mut Sampler::new(18), 5, 3)),
        ("(M↶N)' = [N,M']", ode_prelie_law(&mut Sampler::new(20), 5, 10)),
    ])
}

fn round_trip_corpus() -> Vec<&'static str> {
    vec![
        "a", "b", "c", "0", "7", "1/2", "22/7", "a + b", "a - b", "a * b",
        "2 * a", "1/3 * a * b", "[a, b]", "[a,[a,b]]", "[[a,b],b]", "exp(a)", "exp(a + b)", "exp([a,b])",
        "(a)", "((a + b))", "a - (b - c)", "a - b - c", "(a - b) - c", "a * (b + c)", "(a + b) * c",
        "[a + b, a - b]", "[1/2*a, 3*b]", "exp(1/2 * [a, b]) * a", "a*b*c", "a * b + b * a",
        "[a,b] - (a*b - b*a)", "0 - a", "exp(0)", "exp(exp(a) - 1)", "[exp(a) - 1, b]",
        "a + b + c + a", "1/2*[a,[a,b]] - 1/12*[b,[a,b]]", "(((a)))*b", "[a,(b)]", "3/4",
        "a * 5", "[a, b] * [b, c]", "exp(a) * exp(b)", "c - c", "[c,[b,a]]",
        "  a  +  b  ", "10/20 * a", "(a*b)*(b*a)", "exp((a))", "[[a,b],[b,c]] + 1",
    ]
}

fn cli_criterion() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_logderiv");
    let start = Instant::now();
    let out = Command::new(bin)
        .args(["verify", "--suite", "all", "--max-degree", "5", "--seed", "42"])
        .output()
        .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if out.status.code() != Some(0) {
        return Err(format!(
            "verify exited with {:?}: {}",
            out.status.code(),
            String::from_utf8_lossy(&out.stdout)
        ));
    }
    if elapsed > Duration::from_secs(60) {
        return Err(format!("verify took {elapsed:?}"));
    }
    for args in [
        vec!["dinv", "--expr", "a + [a,b]", "--order", "5", "--json"],
        vec!["verify", "--suite", "rb", "--max-degree", "4", "--seed", "42", "--json"],
    ] {
        let runs: Vec<Vec<u8>> = (0..2)
            .map(|_| Command::new(bin).args(&args).output().map(|o| o.stdout))
            .collect::<Result<_, _>>()
            .map_err(|e| e.to_string())?;
        if runs[0] != runs[1] || runs[0].is_empty() {
            return Err(format!("JSON output of {args:?} is not byte-stable"));
        }
    }
    let corpus = round_trip_corpus();
    for s in &corpus {
        let e = parse(s, 3).map_err(|e| format!("{s}: {e}"))?;
        let again = parse(&e.to_string(), 3).map_err(|e| format!("{s}: {e}"))?;
        if again != e {
            return Err(format!("round trip changed {s}"));
        }
    }
    Ok(format!("verify in {elapsed:.2?}; JSON stable; {} expressions round-trip", corpus.len()))
}

#[test]
fn acceptance() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("1 Dynkin-Specht-Wever D(l) = n·l", specht_wever_classical),
        ("2 per-letter D_x_i(l) = mult_i·l", specht_wever_per_letter),
        ("3 bracket form = convolution, primitive outputs", bracket_form),
        ("4 Hopf axioms in T(X) and Witt U(L)", hopf_axioms),
        ("5 Atkinson solution is group-like", atkinson_lemma),
        ("6 logarithmic derivative theorem", main_theorem_criterion),
        ("7 pre-Lie recursion and associator", prelie_criterion),
        ("8 Magnus closed form and binomial lemma", magnus_theorem),
        ("9 inversion and D⁻¹ bijection", inversion_theorem),
        ("10 ODE demo", ode_demo),
        ("11 CLI verify, JSON stability, parse round trip", cli_criterion),
    ];
    assert_eq!(round_trip_corpus().len(), 50);
    let mut failures = Vec::new();
    for (name, f) in criteria {
        match f() {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(e) => {
                println!("FAIL criterion {name}: {e}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
