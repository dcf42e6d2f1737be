//! Acceptance gate: one line per criterion, non-zero exit if any fails.

use std::time::Instant;

use ginlab::monomial::{count_monomials, monomials_of_degree};
use ginlab::pei::piece_contained;
use ginlab::segment::multiply_by_linear;
use ginlab::*;
use ginlab_cli::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

const SEED: u64 = 1;
const CAP: u32 = 25;

fn field() -> PrimeField {
    PrimeField::new(DEFAULT_PRIME).unwrap()
}

struct Gate {
    results: Vec<(usize, bool, String)>,
    /// Every report produced along the way, for the cross-cutting checks.
    reports: Vec<ExperimentReport>,
}

impl Gate {
    fn record(&mut self, n: usize, ok: bool, detail: String) {
        println!("criterion {n:>2}: {}  {detail}", if ok { "PASS" } else { "FAIL" });
        self.results.push((n, ok, detail));
    }

    fn keep(&mut self, r: Result<ExperimentReport>) -> Option<ExperimentReport> {
        match r {
            Ok(r) => {
                self.reports.push(r.clone());
                Some(r)
            }
            Err(e) => {
                println!("    error: {e}");
                None
            }
        }
    }
}

fn out_u64(r: &ExperimentReport, key: &str) -> Option<u64> {
    r.output_value(key).and_then(|v| v.as_u64())
}

fn curves(gate: &mut Gate) {
    let mut ok1 = true;
    let mut ok2 = true;
    let mut notes1 = Vec::new();
    let mut notes2 = Vec::new();
    for (a, b) in [(2u32, 2u32), (2, 3), (3, 3)] {
        let t = Instant::now();
        let Some(r) = gate.keep(experiment_curve(field(), a, b, SEED, CAP, 2)) else {
            ok1 = false;
            ok2 = false;
            continue;
        };
        let reg = out_u64(&r, "regularity");
        let agreed = r.checks["trials_agree"].passed();
        ok1 &= reg == Some(expected_curve_regularity(a, b) as u64) && agreed;
        notes1.push(format!("({a},{b}) reg {} in {:.2?}", reg.map_or("-".into(), |x| x.to_string()), t.elapsed()));
        let k0 = r.output_value("k0_generator_degrees").cloned().unwrap_or_default();
        let pts = out_u64(&r, "k1_distinct_points");
        ok2 &= k0 == json!([a * b]) && pts == Some((a * b * (a - 1) * (b - 1) / 2) as u64);
        notes2.push(format!("({a},{b}) K0 {k0} K1 points {}", pts.unwrap_or(0)));
    }
    gate.record(1, ok1, notes1.join(", "));
    gate.record(2, ok2, notes2.join(", "));
}

fn nonsmooth(gate: &mut Gate) {
    let t = Instant::now();
    let r = gate.keep(experiment_nonsmooth(field(), SEED, CAP, 2));
    let (ok, detail) = match r {
        Some(r) => {
            let vals = (out_u64(&r, "regularity"), out_u64(&r, "k1_degree"), out_u64(&r, "k1_distinct_points"));
            (
                vals == (Some(16), Some(18), Some(11)),
                format!("reg {:?}, K1 degree {:?}, points {:?} in {:.2?}", vals.0, vals.1, vals.2, t.elapsed()),
            )
        }
        None => (false, "pipeline failed".into()),
    };
    gate.record(3, ok, detail);
}

fn point_grid(gate: &mut Gate) {
    let t = Instant::now();
    let orders = [TermOrder::Lex, TermOrder::RevLex];
    let grid: Vec<(usize, usize)> = (3..=10).map(|s| (s, 2)).chain((3..=8).map(|s| (s, 3))).collect();
    let mut bad = Vec::new();
    for &(s, r) in &grid {
        let seed = 1000 + 17 * s as u64 + r as u64;
        match gate.keep(experiment_points(field(), s, r, &orders, seed, 2, 1)) {
            Some(rep) if rep.passed() => {}
            Some(rep) => bad.push(format!("({s},{r}): {}", rep.failures().join("; "))),
            None => bad.push(format!("({s},{r}): error")),
        }
    }
    let detail = if bad.is_empty() {
        format!("{} instances, gin = Seg for lex and revlex, lex max degree s, in {:.2?}", grid.len(), t.elapsed())
    } else {
        bad.join(" | ")
    };
    gate.record(4, bad.is_empty(), detail);
}

fn fixtures(gate: &mut Gate) {
    let seven = gate.keep(experiment_point_fixture(field(), PointFixture::Seven, SEED, 2));
    let ten = gate.keep(experiment_point_fixture(field(), PointFixture::Ten, SEED, 2));
    let ok = seven.as_ref().is_some_and(ExperimentReport::passed) && ten.as_ref().is_some_and(ExperimentReport::passed);
    let mut detail = String::from("seven points: degree-2 gin part x0*(x0,x1,x2), revlex gin != Seg; ten points: x1^3 in gin_lex, not in Seg_lex");
    for r in seven.iter().chain(ten.iter()) {
        for f in r.failures() {
            detail.push_str(&format!(" [{f}]"));
        }
    }
    if let Some(t) = &ten {
        detail.push_str(&format!(
            " (literal x2^3: in gin {}, in Seg {})",
            t.output_value("lex.x2_cubed_in_gin").unwrap(),
            t.output_value("lex.x2_cubed_in_segment").unwrap()
        ));
    }
    gate.record(5, ok, detail);
}

fn census(gate: &mut Gate) {
    let t = Instant::now();
    let r = gate.keep(experiment_borel_census());
    let ok = r.as_ref().is_some_and(ExperimentReport::passed);
    let detail = match &r {
        Some(r) if ok => format!(
            "{} ideals, segments {}, in {:.2?}",
            r.checks["census_size"].actual,
            r.checks["segments"].actual,
            t.elapsed()
        ),
        Some(r) => r.failures().join("; "),
        None => "error".into(),
    };
    gate.record(6, ok, detail);
}

fn sylvester(gate: &mut Gate) {
    let mut ok7 = true;
    let mut ok8 = true;
    let mut n7 = Vec::new();
    let mut n8 = Vec::new();
    for (a, b, p) in [(2u32, 2u32, 1u32), (2, 3, 1), (3, 3, 1), (3, 3, 2)] {
        let Some(r) = gate.keep(experiment_sylvester(field(), a, b, p, SEED, CAP, 2)) else {
            ok7 = false;
            ok8 = false;
            continue;
        };
        if p == 1 && a == 2 {
            let eq = r.output_value("minors_equal_kp") == Some(&json!(true));
            ok7 &= eq;
            n7.push(format!("({a},{b},{p}) minors = K1: {eq}"));
        }
        if (a, b, p) == (3, 3, 2) {
            let c = r.output_value("codimension").and_then(|v| v.as_i64());
            ok7 &= c == Some(3);
            n7.push(format!("(3,3,2) codim {c:?}"));
        }
        if p == 1 {
            let g = r.output_value("gin_revlex_regularity").cloned().unwrap_or_default();
            let en = r.output_value("en_regularity").cloned().unwrap_or_default();
            let kp = r.output_value("kp_regularity_formula").cloned().unwrap_or_default();
            ok8 &= !g.is_null() && g == en && g == kp;
            n8.push(format!("({a},{b},{p}) gin {g} en {en} formula {kp}"));
        }
    }
    gate.record(7, ok7, n7.join(", "));
    gate.record(8, ok8, n8.join(", "));
}

fn macaulay(gate: &mut Gate) {
    let ring = Ring::new(field(), 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let f = Polynomial::random_form(&ring, 2, &mut rng);
    let g = Polynomial::random_form(&ring, 2, &mut rng);
    let ci = IdealHandle::new(&ring, vec![f, g]).unwrap();
    let hf = ci.hilbert_function(&TermOrder::RevLex, 12).unwrap();
    let (ok, detail) = match lex_ideal_of_hf(&hf, 4, 12) {
        Ok(lex) => {
            let d = lex.max_generator_degree();
            (d == Some(6), format!("lex ideal of the (2,2) complete intersection: max generator degree {d:?}"))
        }
        Err(e) => (false, e.to_string()),
    };
    gate.record(9, ok, detail);
}

fn random_ideal(ring: &std::sync::Arc<Ring<PrimeField>>, seed: u64) -> IdealHandle<PrimeField> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rng.gen_range(1..=3);
    let gens = (0..k)
        .map(|_| {
            let d = rng.gen_range(1..=4);
            let monos = monomials_of_degree(ring.nvars(), d);
            let t = rng.gen_range(1..=monos.len().min(4));
            let terms = monos.choose_multiple(&mut rng, t).map(|m| (*m, rng.gen_range(1..50u32))).collect();
            Polynomial::from_terms(ring, terms)
        })
        .collect();
    IdealHandle::new(ring, gens).unwrap()
}

fn property_suites(gate: &mut Gate) {
    let mut failures: Vec<String> = Vec::new();

    // tower identities on every curve instance
    for r in gate.reports.iter().filter(|r| r.experiment == "curve" || r.experiment == "nonsmooth") {
        for key in ["decomposition", "ascending_chain", "commutes_with_initial_ideal"] {
            if !r.checks[key].passed() {
                failures.push(format!("{} {key}", r.experiment));
            }
        }
    }

    // segments grow into segments
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let n = rng.gen_range(2..=4usize);
        let a = rng.gen_range(1..=6u32);
        let ord = if rng.gen_bool(0.5) { TermOrder::Lex } else { TermOrder::RevLex };
        let total = count_monomials(n, a) as usize;
        let codim = rng.gen_range(0..=(a as usize).min(total));
        let v = segment_space(n, a, total - codim, &ord).unwrap();
        let next = multiply_by_linear(n, &v.monomials);
        if !is_segment(n, a + 1, &next, &ord) || count_monomials(n, a + 1) as usize - next.len() != codim {
            failures.push(format!("segment growth n={n} a={a} {ord}"));
        }
    }

    // every gin produced by the gate is Borel-fixed
    let gins: usize = gate
        .reports
        .iter()
        .flat_map(|r| r.checks.iter())
        .filter(|(k, _)| k.contains("borel_fixed"))
        .map(|(k, c)| {
            if !c.passed() {
                failures.push(format!("not Borel: {k}"));
            }
            1
        })
        .sum();

    // oracle equivalence
    let inner = TermOrder::RevLex;
    for seed in 0..12u64 {
        let ring = Ring::new(field(), 3 + (seed as usize % 2)).unwrap();
        let ideal = random_ideal(&ring, seed);
        let tower = partial_elim_ideals(&ideal, 3, &inner).unwrap();
        for p in 0..=3u32 {
            let level = tower.level(p as usize);
            let gb = level.groebner_basis(&inner).unwrap();
            let hf = level.hilbert_function(&inner, 8).unwrap();
            for (d, piece) in pei_oracle(&ideal, p, 8, &inner).unwrap().iter().enumerate() {
                let dim = count_monomials(ring.nvars() - 1, d as u32) - hf.dims[d];
                if !piece_contained(piece, &gb).unwrap() || piece.len() as u64 != dim {
                    failures.push(format!("oracle seed {seed} p {p} d {d}"));
                }
            }
        }
    }

    // Hilbert function invariance
    let ring = Ring::new(field(), 4).unwrap();
    let ideal = random_ideal(&ring, 99);
    let base = ideal.hilbert_function(&TermOrder::RevLex, 8).unwrap();
    for seed in 0..50 {
        let moved = apply_change(&ideal, &random_coordinate_change(&ring, seed)).unwrap();
        if moved.hilbert_function(&TermOrder::RevLex, 8).unwrap() != base {
            failures.push(format!("HF changed under seed {seed}"));
        }
    }

    let detail = if failures.is_empty() {
        format!("tower identities, 200 segments, {gins} Borel verdicts, oracle on 12 ideals, 50 coordinate changes")
    } else {
        failures.join(", ")
    };
    gate.record(10, failures.is_empty(), detail);
}

fn main() {
    // libtest-style arguments (filters, --nocapture) are ignored
    let mut gate = Gate {
        results: Vec::new(),
        reports: Vec::new(),
    };
    let start = Instant::now();
    curves(&mut gate);
    nonsmooth(&mut gate);
    point_grid(&mut gate);
    fixtures(&mut gate);
    census(&mut gate);
    sylvester(&mut gate);
    macaulay(&mut gate);
    property_suites(&mut gate);
    let failed: Vec<usize> = gate.results.iter().filter(|r| !r.1).map(|r| r.0).collect();
    println!(
        "acceptance: {}/{} criteria passed in {:.2?}",
        gate.results.len() - failed.len(),
        gate.results.len(),
        start.elapsed()
    );
    if !failed.is_empty() {
        println!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}
