//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

mod common;

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_traits::Signed;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use freerank::arith::rational::{primes_up_to, rat_frac};
use freerank::arith::{BallComplex, BigRat, Precision};
use freerank::catalog;
use freerank::congruence::{
    ambient_order, certified_word_bound, claim3_certificate, finite_quotient, members_in_ball, quotient_order,
    word_systole_in_ball, CongruenceLevel, QuotientOptions,
};
use freerank::geometry::{ball_volume, classify, translation_length, translation_length_arccosh, IsometryKind};
use freerank::group::bfs_ball;
use freerank::heights::{arch_abs_product, claim2_over_set, finite_abs_product, support_primes};
use freerank::homology::{coset_table, dim_h1_mod_p, rank_mod_p, relator_matrix, rows_mod_p};
use freerank::number_field::NumberField;

const R_MAX: u32 = 8;
const CLAIM3_LEVELS: [(u64, u32); 5] = [(7, 1), (7, 2), (3, 1), (3, 2), (5, 1)];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn random_element(k: &NumberField, rng: &mut ChaCha8Rng) -> freerank::number_field::FieldElement {
    loop {
        let coeffs: Vec<BigRat> = (0..k.degree())
            .map(|_| rat_frac(rng.gen_range(-60..=60), rng.gen_range(1..=40)))
            .collect();
        let x = k.element(coeffs);
        if !x.is_zero() {
            return x;
        }
    }
}

fn product_formula() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    let mut bad = Vec::new();
    for f in [[1i64, -1, 1], [-2, 0, 1]] {
        let k = NumberField::from_coeffs(&f).unwrap();
        for _ in 0..1000 {
            let x = random_element(&k, &mut rng);
            let primes: Vec<u64> = support_primes(&k, &x).into_iter().collect();
            let fin = finite_abs_product(&k, &x, &primes).unwrap();
            let nm = k.norm(&x).abs();
            let arch = arch_abs_product(&k, &x, 128).unwrap();
            if &fin * &nm != BigRat::from_integer(1.into()) || !arch.contains_rat(&nm) {
                bad.push(format!("{x:?}"));
            }
            checked += 1;
        }
    }
    let t = start.elapsed();
    outcome(
        bad.is_empty() && t <= Duration::from_secs(10),
        format!("{checked} elements, {} failures, {:.2}s", bad.len(), t.as_secs_f64()),
    )
}

fn claim2() -> Outcome {
    let g = catalog::figure_eight();
    let ball = bfs_ball(&g, 4, false, None);
    let ms: Vec<_> = ball.entries().iter().map(|e| e.matrix.clone()).collect();
    let t = claim2_over_set(g.field(), &ms, Precision::default()).unwrap();
    outcome(
        t.pairs >= 10_000 && t.holds(),
        format!(
            "{} pairs in the radius-4 ball, {} failures, {} inconclusive",
            t.pairs,
            t.failures.len(),
            t.inconclusive
        ),
    )
}

fn claim3() -> Outcome {
    let g = catalog::figure_eight();
    let ball = bfs_ball(&g, R_MAX, false, None);
    let mut parts = Vec::new();
    let mut failures = 0;
    let mut undecided = 0;
    for (p, i) in CLAIM3_LEVELS {
        let level = CongruenceLevel::new(&g, p, i).unwrap();
        let members = members_in_ball(&level, &ball).unwrap();
        for &k in &members {
            match claim3_certificate(&level, &ball.entries()[k].matrix, Precision::default()) {
                Ok(w) if w.holds => {}
                Ok(_) => undecided += 1,
                Err(e) if e.is_falsification() => failures += 1,
                Err(_) => undecided += 1,
            }
        }
        parts.push(format!("({p},{i}): {}", members.len()));
    }
    outcome(
        failures == 0 && undecided == 0,
        format!("members checked {}; {failures} failures, {undecided} undecided", parts.join(", ")),
    )
}

fn certificate_chain() -> Outcome {
    let start = Instant::now();
    let g = catalog::figure_eight();
    let ball = bfs_ball(&g, R_MAX, false, None);
    let mut ok = true;
    let mut parts = Vec::new();
    let mut last: Vec<(u64, u32, Option<u32>)> = Vec::new();
    for (p, i) in CLAIM3_LEVELS {
        let level = CongruenceLevel::new(&g, p, i).unwrap();
        let bound = certified_word_bound(&g, &level, 128).unwrap().bound;
        let sys = word_systole_in_ball(&g, &level, &ball).unwrap().value;
        if let Some(s) = sys {
            ok &= bound <= s;
        }
        // nondecreasing in i: a member at level i + 1 is a member at level i
        if let Some(&(_, _, prev)) = last.iter().find(|(q, j, _)| *q == p && *j + 1 == i) {
            if let (Some(a), Some(b)) = (prev, sys) {
                ok &= a <= b;
            }
            if prev.is_none() {
                ok &= sys.is_none();
            }
        }
        last.push((p, i, sys));
        let shown = sys.map_or(format!(">{R_MAX}"), |s| s.to_string());
        parts.push(format!("({p},{i}) bound {bound} sys {shown}"));
    }
    let sys71 = last.iter().find(|x| (x.0, x.1) == (7, 1)).and_then(|x| x.2);
    ok &= matches!(sys71, Some(s) if s <= 7);
    let t = start.elapsed();
    ok &= t <= Duration::from_secs(300);
    outcome(ok, format!("{}; {:.1}s", parts.join("; "), t.as_secs_f64()))
}

fn quotient_correctness() -> Outcome {
    let g = catalog::figure_eight();
    let ball = bfs_ball(&g, R_MAX, false, None);
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let mut prev: Option<u128> = None;
        for i in 1..=2u32 {
            let Ok(level) = CongruenceLevel::new(&g, p, i) else { continue };
            let q = quotient_order(&g, &level, QuotientOptions::default()).unwrap();
            ok &= q.divides_ambient == Some(true);
            if let Some(n) = prev {
                ok &= q.order.is_multiple_of(n);
            }
            prev = Some(q.order);
            for e in ball.entries() {
                ok &= level.membership(&e.matrix).unwrap() == level.membership_by_reduction(&e.matrix).unwrap();
            }
            let how = match q.method {
                freerank::congruence::OrderMethod::Closure => "closure",
                freerank::congruence::OrderMethod::Lift { .. } => "lift",
            };
            parts.push(format!("n({p},{i}) = {} [{how}]", q.order));
        }
    }
    let l71 = CongruenceLevel::new(&g, 7, 1).unwrap();
    let n71 = finite_quotient(&g, &l71, QuotientOptions::default()).unwrap().order() as u128;
    ok &= ambient_order(&l71) == Some(336 * 336) && (336u128 * 336).is_multiple_of(n71);
    for (p, i) in [(3, 1), (2, 2), (5, 1)] {
        let l = CongruenceLevel::new(&g, p, i).unwrap();
        let n = finite_quotient(&g, &l, QuotientOptions::default()).unwrap().order();
        ok &= n == common::naive_quotient_order(&g, p, i);
    }
    outcome(ok, format!("{}; membership routes agree on {} ball elements", parts.join(", "), ball.len()))
}

fn homology() -> Outcome {
    let g = catalog::figure_eight();
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let l = CongruenceLevel::trivial(&g, p).unwrap();
        let q = finite_quotient(&g, &l, QuotientOptions::default()).unwrap();
        let t = coset_table(&q, &[]).unwrap();
        let h = dim_h1_mod_p(&g, &t, p, false).unwrap();
        let rows = relator_matrix(&g, &t, false).unwrap();
        let oracle = t.num_schreier_generators() - common::smith_rank_mod_p(&rows, t.num_schreier_generators(), p);
        ok &= h.dim_h1 == 1 && oracle == 1;
    }
    parts.push("index 1: dim 1 for p = 2, 3, 5, 7".to_string());
    let mut instances = 0;
    for (p, i) in [(3u64, 1u32), (2, 2)] {
        let l = CongruenceLevel::new(&g, p, i).unwrap();
        let q = finite_quotient(&g, &l, QuotientOptions::default()).unwrap();
        let t = coset_table(&q, &[]).unwrap();
        let rows = relator_matrix(&g, &t, false).unwrap();
        let cols = t.num_schreier_generators();
        for r in [2u64, 3, 5, 7] {
            let sparse = rank_mod_p(rows_mod_p(&rows, r), cols, r);
            ok &= sparse == common::smith_rank_mod_p(&rows, cols, r);
            instances += 1;
        }
        parts.push(format!("({p},{i}) n = {} dim {}", q.order(), dim_h1_mod_p(&g, &t, p, false).unwrap().dim_h1));
    }
    let s = common::sanov();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mut pool: Vec<(u64, u32)> = primes_up_to(13).into_iter().filter(|&p| p > 2).map(|p| (p, 1)).collect();
    pool.extend([(2, 2), (2, 3), (3, 2)]);
    for _ in 0..5 {
        let (p, i) = pool.swap_remove(rng.gen_range(0..pool.len()));
        let l = CongruenceLevel::new(&s, p, i).unwrap();
        let q = finite_quotient(&s, &l, QuotientOptions::default()).unwrap();
        let t = coset_table(&q, &[]).unwrap();
        let h = dim_h1_mod_p(&s, &t, p, false).unwrap();
        ok &= h.dim_h1 == q.order() + 1;
        if q.order() <= 1000 {
            let rows = relator_matrix(&s, &t, false).unwrap();
            let cols = t.num_schreier_generators();
            ok &= rank_mod_p(rows_mod_p(&rows, p), cols, p) == common::smith_rank_mod_p(&rows, cols, p);
            instances += 1;
        }
        parts.push(format!("free ({p},{i}) n = {} dim {}", q.order(), h.dim_h1));
    }
    outcome(ok, format!("{}; sparse = Smith rank on {instances} instances", parts.join(", ")))
}

fn geometry() -> Outcome {
    let len = translation_length(&BallComplex::from_int(3, 128)).unwrap();
    let alt = translation_length_arccosh(&BallComplex::from_int(3, 128)).unwrap();
    let expect = 2.0 * ((3.0 + 5f64.sqrt()) / 2.0).ln();
    let mut ok = (len.to_f64() - expect).abs() < 1e-9 && (len.to_f64() - 1.924_847_300_238_413_9).abs() < 1e-9;
    ok &= len.overlaps(&alt);
    let v1 = ball_volume(1.0, 128).to_f64();
    ok &= (v1 - std::f64::consts::PI * (2f64.sinh() - 2.0)).abs() < 1e-9;
    let ratio = ball_volume(10.0, 128).to_f64() / (std::f64::consts::FRAC_PI_2 * 20f64.exp());
    ok &= (0.99..=1.0).contains(&ratio);
    let g = catalog::figure_eight();
    let kinds: Vec<IsometryKind> = g
        .generators()
        .iter()
        .map(|m| classify(&g, m, Precision::default()).unwrap().kind)
        .collect();
    ok &= kinds.iter().all(|&k| k == IsometryKind::Parabolic);
    outcome(
        ok,
        format!("length(3) = {:.10}, vol B(1) = {v1:.10}, ratio at r = 10: {ratio:.6}, generators {kinds:?}", len.to_f64()),
    )
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let run = |sub: &str| -> Option<Vec<u8>> {
        let out = dir.path().join(sub);
        let status = Command::new(env!("CARGO_BIN_EXE_freerank"))
            .args(["tower", "--p", "7", "--levels", "1,2", "--r-max", "8", "--out"])
            .arg(&out)
            .output()
            .ok()?;
        if !status.status.success() {
            return None;
        }
        std::fs::read(out.join("tower.json")).ok()
    };
    match (run("a"), run("b")) {
        (Some(a), Some(b)) => outcome(a == b, format!("{} bytes, identical: {}", a.len(), a == b)),
        _ => outcome(false, "tower run failed"),
    }
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 8] = [
        ("product formula", product_formula),
        ("height submultiplicativity over a ball", claim2),
        ("height lower bound for congruence members", claim3),
        ("word bound below word systole", certificate_chain),
        ("quotient orders", quotient_correctness),
        ("homology oracles", homology),
        ("geometry", geometry),
        ("deterministic tower report", determinism),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let o = f();
        println!("{} [{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, k + 1, o.detail);
        failed += usize::from(!o.pass);
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
