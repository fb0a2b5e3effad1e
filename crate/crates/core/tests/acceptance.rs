//! Acceptance suite. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any fails.
//!
//! Pinned limits: criterion 1 under 600 s, criterion 3 under 60 s. All
//! comparisons are exact integer comparisons.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use boolcx::comm::{
    build_comm_matrix, check_tree_protocol, exact_cover_number, exact_rank, minterm_cover,
    Composition,
};
use boolcx::extremal::build_dt_via_min_certificates;
use boolcx::measures::{
    alt, alt_profile, block_sensitivity_value, certificate, cmin_value, optimal_tree,
};
use boolcx::spectra::mono_sparsity;
use boolcx::verify::{sweep, SweepSpace, TheoremId};
use boolcx::{Caps, TruthTable};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

const EXHAUSTIVE_4_LIMIT: Duration = Duration::from_secs(600);
const RANK_3_LIMIT: Duration = Duration::from_secs(60);
const RANDOM_FIVE_ARY: usize = 1000;
const RANDOM_SEED: u64 = 0x5EED_0005;

fn all_functions(n: usize) -> impl Iterator<Item = TruthTable> {
    (0..1u64 << (1 << n)).map(move |b| TruthTable::from_u64(n, b).unwrap())
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn sweep_clean(n: usize, theorems: &[TheoremId]) -> Result<boolcx::verify::SweepResult, String> {
    let r = sweep(&SweepSpace::Exhaustive(n), theorems, 0, &Caps::default())
        .map_err(|e| e.to_string())?;
    for s in &r.theorems {
        ensure(s.violations == 0, || {
            format!(
                "{}: {} violations, first {:?}",
                s.theorem,
                s.violations,
                s.violation_examples.first()
            )
        })?;
    }
    Ok(r)
}

/// Criterion 1: Explicit bs bound over all 65,536 four-variable functions.
fn bs_bound_exhaustive() -> Outcome {
    let start = Instant::now();
    let r = sweep_clean(4, &[TheoremId::BsAltExplicit])?;
    let took = start.elapsed();
    ensure(r.functions == 65_536, || {
        format!("{} functions", r.functions)
    })?;
    ensure(r.theorems[0].checked == 65_536, || {
        "not every function checked".into()
    })?;
    ensure(took < EXHAUSTIVE_4_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "65536 functions, 0 violations, {:.1}s",
        took.as_secs_f64()
    ))
}

/// Criterion 2: Extreme-certificate bounds, odd weight, degree/sparsity, dt bounds at
/// n = 4; monotone equalities over the 168 monotone functions.
fn lemma_and_facts_exhaustive() -> Outcome {
    use TheoremId::*;
    let r = sweep_clean(
        4,
        &[
            ExtremeCertSensitivity,
            ExtremeCertDegree,
            OddWeightFullDegree,
            DegreeLogSparsity,
            DtAltDegree,
            DtAltSensitivityDegree,
            MonotoneEqualities,
            MonotoneSensitivityDegree,
        ],
    )?;
    for s in &r.theorems {
        let expected = match s.theorem {
            MonotoneEqualities | MonotoneSensitivityDegree => 168,
            OddWeightFullDegree | DegreeLogSparsity => 65_535,
            _ => 65_536,
        };
        ensure(s.checked == expected, || {
            format!("{}: checked {}", s.theorem, s.checked)
        })?;
    }
    let monotone = all_functions(4).filter(|t| t.is_monotone()).count();
    ensure(monotone == 168, || format!("{monotone} monotone functions"))?;
    Ok("8 checkers, 0 violations, 168 monotone functions".into())
}

/// Criterion 3: Rank identities for all 256 three-variable functions.
fn rank_identities_three() -> Outcome {
    let start = Instant::now();
    for t in all_functions(3) {
        let x = exact_rank(&build_comm_matrix(&t, Composition::Xor).unwrap());
        let a = exact_rank(&build_comm_matrix(&t, Composition::And).unwrap());
        let fs = boolcx::spectra::fourier_sparsity(&t);
        let mono = mono_sparsity(&t);
        ensure(x == fs && a == mono, || {
            format!("{t}: xor {x} vs {fs}, and {a} vs {mono}")
        })?;
    }
    let took = start.elapsed();
    ensure(took < RANK_3_LIMIT, || format!("took {took:?}"))?;
    Ok(format!(
        "256 functions, both compositions, {:.2}s",
        took.as_secs_f64()
    ))
}

/// Criterion 4: mono(OR_n) = 2^n - 1 by transform (n ≤ 4) and by rank (n ≤ 3).
fn or_monomials() -> Outcome {
    for n in 1..=4 {
        let or = TruthTable::from_fn(n, |x| x != 0).unwrap();
        let want = (1 << n) - 1;
        ensure(mono_sparsity(&or) == want, || {
            format!("mono(OR_{n}) != {want}")
        })?;
        if n <= 3 {
            let r = exact_rank(&build_comm_matrix(&or, Composition::And).unwrap());
            ensure(r == want, || format!("rank(OR_{n} and) = {r}"))?;
        }
    }
    Ok("n = 1..4 transform, n = 1..3 rank".into())
}

/// Criterion 5: The XOR protocol chain at n = 4 and tree protocols for every
/// three-variable function.
fn protocol_chain() -> Outcome {
    sweep_clean(4, &[TheoremId::XorLogRank, TheoremId::DegreeLogSparsity])?;
    for t in all_functions(3) {
        let tree = optimal_tree(&t).map_err(|e| e.to_string())?;
        for c in [Composition::And, Composition::Xor] {
            let chk = check_tree_protocol(&tree, &t, c);
            ensure(chk.correct && chk.pairs == 64, || {
                format!("{t} {c}: wrong output")
            })?;
            ensure(chk.max_cost <= 2 * tree.depth(), || {
                format!("{t} {c}: cost {}", chk.max_cost)
            })?;
        }
    }
    Ok("chain holds on 65535 functions; 256 x 2 protocols correct".into())
}

/// Criterion 6: Constructive outputs verify themselves.
fn constructive_outputs() -> Outcome {
    sweep_clean(
        4,
        &[
            TheoremId::ExtremeCertConstructive,
            TheoremId::MinCertTreeDepth,
        ],
    )?;
    for n in 0..=4 {
        for t in all_functions(n) {
            let tree = build_dt_via_min_certificates(&t).map_err(|e| e.to_string())?;
            ensure(tree.computes(&t), || {
                format!("{t}: min-certificate tree wrong")
            })?;
        }
    }
    let mut covers = 0;
    for n in 0..=3 {
        for t in all_functions(n).filter(|t| !t.get(0)) {
            let mc = minterm_cover(&t).map_err(|e| format!("{t}: {e}"))?;
            let m = build_comm_matrix(&t, Composition::And).unwrap();
            ensure(mc.cover.check(&m).valid(), || format!("{t}: invalid cover"))?;
            for node in &mc.nodes {
                ensure(node.min_terms <= node.mono, || {
                    format!("{t}: {} min terms above mono {}", node.min_terms, node.mono)
                })?;
            }
            ensure(mc.max_depth <= mc.alt, || format!("{t}: depth above alt"))?;
            covers += 1;
        }
    }
    Ok(format!(
        "certificates and trees for n <= 4, {covers} min-term covers for n <= 3"
    ))
}

/// Every strictly increasing sequence ending at `x`, by DFS downwards.
fn alt_by_paths(t: &TruthTable, x: usize) -> usize {
    let mut best = 0;
    // Predecessors: every proper subset of x.
    let mut s = x;
    loop {
        if s != x {
            best = best.max(alt_by_paths(t, s) + (t.get(s) != t.get(x)) as usize);
        }
        if s == 0 {
            break;
        }
        s = (s - 1) & x;
    }
    best
}

fn bs_brute(t: &TruthTable) -> usize {
    (0..t.len())
        .map(|x| {
            let blocks: Vec<usize> = (1..t.len()).filter(|&b| t.get(x ^ b) != t.get(x)).collect();
            fn pack(blocks: &[usize], used: usize) -> usize {
                blocks
                    .iter()
                    .enumerate()
                    .filter(|(_, &b)| b & used == 0)
                    .map(|(i, &b)| 1 + pack(&blocks[i + 1..], used | b))
                    .max()
                    .unwrap_or(0)
            }
            pack(&blocks, 0)
        })
        .max()
        .unwrap_or(0)
}

fn cert_brute(t: &TruthTable, x: usize) -> usize {
    let mut sizes: Vec<usize> = (0..t.len()).collect();
    sizes.sort_by_key(|s| s.count_ones());
    sizes
        .into_iter()
        .find(|&s| (0..t.len()).all(|y| (y ^ x) & s != 0 || t.get(y) == t.get(x)))
        .map(|s| s.count_ones() as usize)
        .unwrap()
}

/// Criterion 7: Fast algorithms agree with definitional brute force.
fn oracle_equivalence() -> Outcome {
    for n in 0..=3 {
        for t in all_functions(n) {
            let profile = alt_profile(&t);
            for (x, &fast) in profile.iter().enumerate() {
                let b = alt_by_paths(&t, x);
                ensure(fast == b, || format!("{t}: alt at {x} is {fast} vs {b}"))?;
            }
        }
    }
    let perms = permutations(4);
    for t in all_functions(4) {
        let best = perms
            .iter()
            .map(|p| {
                let mut x = 0;
                let mut changes = 0;
                for &i in p {
                    let y = x | 1 << i;
                    changes += (t.get(x) != t.get(y)) as usize;
                    x = y;
                }
                changes
            })
            .max()
            .unwrap();
        ensure(alt(&t).value == best, || {
            format!("{t}: alt over maximal chains {best}")
        })?;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_SEED);
    for _ in 0..RANDOM_FIVE_ARY {
        let t = TruthTable::from_u64(5, rng.gen::<u32>() as u64).unwrap();
        let bs = block_sensitivity_value(&t).unwrap();
        ensure(bs == bs_brute(&t), || format!("{t}: bs {bs}"))?;
        let certs: Vec<usize> = (0..t.len()).map(|x| cert_brute(&t, x)).collect();
        let c = certificate(&t).unwrap().value;
        ensure(c == *certs.iter().max().unwrap(), || format!("{t}: C {c}"))?;
        let cm = cmin_value(&t).unwrap();
        ensure(cm == *certs.iter().min().unwrap(), || {
            format!("{t}: Cmin {cm}")
        })?;
    }

    for n in 0..=3 {
        for t in all_functions(n).filter(|t| !t.get(0)) {
            let m = build_comm_matrix(&t, Composition::And).unwrap();
            let exact = exact_cover_number(&m, true).unwrap();
            let built = minterm_cover(&t).unwrap().cover.size();
            ensure(exact <= built, || {
                format!("{t}: exact {exact} > constructed {built}")
            })?;
        }
    }
    Ok(format!(
        "alt n <= 3 paths and n = 4 chains; {RANDOM_FIVE_ARY} random 5-ary bs/C/Cmin; covers n <= 3"
    ))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Criterion 8: Sweeps give byte-identical JSON at different thread counts.
fn deterministic_sweeps() -> Outcome {
    let run = |n: usize, theorems: &[TheoremId], jobs: usize| {
        sweep(&SweepSpace::Exhaustive(n), theorems, jobs, &Caps::default())
            .map(|r| r.to_json())
            .map_err(|e| e.to_string())
    };
    let three_a = run(3, TheoremId::ALL, 1)?;
    let three_b = run(3, TheoremId::ALL, 4)?;
    ensure(three_a == three_b, || {
        "exhaustive:3 JSON differs between 1 and 4 jobs".into()
    })?;
    let four = [TheoremId::BsAltExplicit, TheoremId::DtAltDegree];
    let four_a = run(4, &four, 1)?;
    let four_b = run(4, &four, 3)?;
    ensure(four_a == four_b, || {
        "exhaustive:4 JSON differs between 1 and 3 jobs".into()
    })?;
    Ok(format!(
        "{} + {} bytes identical",
        three_a.len(),
        four_a.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "bs <= C_t*s or (C_t+1)*s over all 4-ary functions",
            bs_bound_exhaustive,
        ),
        (
            "extreme-certificate, degree and dt facts at n = 4",
            lemma_and_facts_exhaustive,
        ),
        (
            "rank identities for all 3-ary functions",
            rank_identities_three,
        ),
        ("mono(OR_n) = 2^n - 1", or_monomials),
        ("XOR protocol chain and tree protocols", protocol_chain),
        ("constructive outputs self-verify", constructive_outputs),
        ("oracle equivalence", oracle_equivalence),
        (
            "sweep determinism across thread counts",
            deterministic_sweeps,
        ),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("acceptance {}: PASS  {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("acceptance {}: FAIL  {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
