//! End-to-end experiment pipelines.

use std::sync::Arc;

use ginlab::fourier_motzkin::{segment_witness, verify_integer_weight};
use ginlab::monomial::Monomial;
use ginlab::pei::monomial_partial_elim;
use ginlab::sylvester::{codimension, random_monic_in_x0};
use ginlab::{
    build_sylp, count_distinct_points, en_regularity, enumerate_borel_by_hf, gin, kp_regularity_formula,
    maximal_minors_ideal, partial_elim_ideals, random_points, segment_ideal_of, seven_special_points, ten_points,
    unit_reduce, vanishing_ideal, x0_profile, Error, Field, HilbertFunction, IdealHandle, MonomialIdeal, PointSet,
    Polynomial, Result, Ring, TermOrder,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::report::ExperimentReport;

fn strings(j: &MonomialIdeal) -> Value {
    json!(j.to_strings())
}

/// Regularity predicted for the lex gin of a general complete intersection
/// curve of type `(a, b)` in `P^3`.
pub fn expected_curve_regularity(a: u32, b: u32) -> u32 {
    if (a, b) == (2, 2) {
        4
    } else {
        1 + a * b * (a - 1) * (b - 1) / 2
    }
}

/// Lex gin, the partial elimination tower of the moved ideal and the
/// data of its first two levels.
struct CurveData {
    regularity: Option<u32>,
    k0_degrees: Vec<u32>,
    k1_degree: u64,
    k1_points: usize,
}

fn curve_pipeline<F: Field>(
    report: &mut ExperimentReport,
    ideal: &IdealHandle<F>,
    trials: usize,
    seed: u64,
) -> Result<CurveData> {
    let res = gin(ideal, &TermOrder::Lex, trials, seed)?;
    report
        .output("gin_lex", strings(&res.gin))
        .output("regularity", json!(res.regularity))
        .output("trials_used", res.trials_used)
        .output("seeds", json!(res.seeds));
    report.verdict("trials_agree", res.agreed).verdict("gin_borel_fixed", res.borel);
    let moved = &res.transformed;
    let monic = moved.generators().iter().all(|g| {
        x0_profile(g).is_ok_and(|p| p.x0_degree == g.homogeneous_degree().unwrap_or(0) && p.initial_coefficient.is_constant())
    });
    report.verdict("generators_monic_in_x0", monic);

    let gb = moved.groebner_basis(&TermOrder::Lex)?;
    let p_max = gb.elements().iter().map(|g| g.degree_in(0).unwrap_or(0)).max().unwrap_or(0);
    let tower = partial_elim_ideals(moved, p_max, &TermOrder::Lex)?;
    let initial = moved.initial_ideal(&tower.order)?;
    let mut commutes = true;
    let mut borel_levels = true;
    let mut levels = Vec::new();
    for (p, level) in tower.levels.iter().enumerate() {
        let init = level.initial_ideal(&TermOrder::Lex)?;
        commutes &= monomial_partial_elim(&initial, p as u32).to_strings() == init.to_strings();
        borel_levels &= init.is_borel_fixed();
        let data = level.hilbert_data(&TermOrder::Lex, 0)?;
        levels.push(json!({
            "p": p,
            "generators": level.generators().len(),
            "initial_ideal": init.to_strings(),
            "dimension": data.dimension,
            "degree": data.degree,
        }));
    }
    report
        .output("tower", Value::Array(levels))
        .verdict("decomposition", tower.decomposition_holds()?)
        .verdict("ascending_chain", tower.is_ascending()?)
        .verdict("commutes_with_initial_ideal", commutes)
        .verdict("levels_borel_fixed", borel_levels);

    let mut k0_degrees: Vec<u32> = tower.levels[0]
        .generators()
        .iter()
        .filter_map(|g| g.homogeneous_degree())
        .collect();
    k0_degrees.sort_unstable();
    let (k1_degree, k1_points) = if tower.levels.len() > 1 {
        let k1 = &tower.levels[1];
        (k1.degree()?, count_distinct_points(k1, seed)?)
    } else {
        (0, 0)
    };
    report
        .output("k0_generator_degrees", json!(k0_degrees))
        .output("k1_degree", k1_degree)
        .output("k1_distinct_points", k1_points);
    Ok(CurveData {
        regularity: res.regularity,
        k0_degrees,
        k1_degree,
        k1_points,
    })
}

/// Lex gin of a general complete intersection of forms of degrees `a <= b`
/// in `P^3`, with its partial elimination tower.
pub fn experiment_curve<F: Field>(
    field: F,
    a: u32,
    b: u32,
    seed: u64,
    degree_cap: u32,
    trials: usize,
) -> Result<ExperimentReport> {
    if a < 2 || a > b {
        return Err(Error::InvalidArgument(format!("need 2 <= a <= b, got ({a}, {b})")));
    }
    let ring = Ring::new(field.clone(), 4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = Polynomial::random_form(&ring, a, &mut rng);
    let g = Polynomial::random_form(&ring, b, &mut rng);
    let ideal = IdealHandle::new(&ring, vec![f, g])?.with_degree_cap(degree_cap);
    let mut report = ExperimentReport::new("curve");
    report
        .input("a", a)
        .input("b", b)
        .input("seed", seed)
        .input("field", field.descriptor())
        .input("degree_cap", degree_cap)
        .input("trials", trials);
    let data = curve_pipeline(&mut report, &ideal, trials, seed)?;
    let nodes = (a * b * (a - 1) * (b - 1) / 2) as usize;
    report
        .check("regularity", expected_curve_regularity(a, b), json!(data.regularity))
        .check("k0_generator_degrees", json!([a * b]), json!(data.k0_degrees))
        .check("k1_distinct_points", nodes, data.k1_points);
    Ok(report)
}

/// The curve `(x^3 - y z^2, y^3 - z^2 t)` with a singular point.
pub fn experiment_nonsmooth<F: Field>(field: F, seed: u64, degree_cap: u32, trials: usize) -> Result<ExperimentReport> {
    let ring = Ring::new(field.clone(), 4)?;
    let ideal = IdealHandle::parse(&ring, "x0^3 - x1*x2^2, x1^3 - x2^2*x3")?.with_degree_cap(degree_cap);
    let mut report = ExperimentReport::new("nonsmooth");
    report
        .input("ideal", json!(["x0^3 - x1*x2^2", "x1^3 - x2^2*x3"]))
        .input("seed", seed)
        .input("field", field.descriptor())
        .input("degree_cap", degree_cap)
        .input("trials", trials);
    let data = curve_pipeline(&mut report, &ideal, trials, seed)?;
    report
        .check("regularity", 16, json!(data.regularity))
        .check("k1_degree", 18, data.k1_degree)
        .check("k1_distinct_points", 11, data.k1_points);
    Ok(report)
}

fn hf_bound_for(points: &PointSet<impl Field>) -> u32 {
    points.len() as u32 + 1
}

/// gin and segment ideal of a point set for each order.
fn points_pipeline<F: Field>(
    report: &mut ExperimentReport,
    points: &PointSet<F>,
    orders: &[TermOrder],
    seed: u64,
    trials: usize,
    jobs: usize,
) -> Result<Vec<(TermOrder, MonomialIdeal, MonomialIdeal, bool)>> {
    let n = points.ambient_vars();
    let ring = Ring::new(points.field.clone(), n)?;
    let ideal = vanishing_ideal(&ring, points, None)?;
    let bound = hf_bound_for(points);
    let hf = ideal.hilbert_function(&TermOrder::RevLex, bound)?;
    let degree = ideal.degree()?;
    report
        .output("hilbert_function", json!(hf.dims))
        .output("degree", degree);
    let run = |ord: &TermOrder| -> Result<(MonomialIdeal, MonomialIdeal, bool, bool, Option<u32>)> {
        let res = gin(&ideal, ord, trials, seed)?;
        let seg = segment_ideal_of(&hf, n, ord, bound)?;
        Ok((res.gin, seg.ideal, seg.is_ideal, res.agreed && res.borel, res.regularity))
    };
    let results: Vec<Result<_>> = if jobs > 1 && orders.len() > 1 {
        std::thread::scope(|s| {
            let handles: Vec<_> = orders.iter().map(|o| s.spawn(|| run(o))).collect();
            handles.into_iter().map(|h| h.join().expect("worker panicked")).collect()
        })
    } else {
        orders.iter().map(run).collect()
    };
    let mut out = Vec::new();
    for (ord, r) in orders.iter().zip(results) {
        let (g, seg, seg_is_ideal, sane, regularity) = r?;
        let key = ord.to_string();
        report.output(
            &format!("{key}.gin"),
            json!({
                "generators": g.to_strings(),
                "borel": g.is_borel_fixed(),
                "regularity": regularity,
                "max_generator_degree": g.max_generator_degree(),
            }),
        );
        report.output(&format!("{key}.segment"), strings(&seg));
        report.output(&format!("{key}.segment_is_ideal"), seg_is_ideal);
        report.verdict(&format!("{key}.gin_borel_fixed_and_agreed"), sane);
        report.verdict(
            &format!("{key}.max_generator_degree_at_most_degree"),
            g.max_generator_degree().unwrap_or(0) as u64 <= degree,
        );
        out.push((ord.clone(), g, seg, seg_is_ideal));
    }
    Ok(out)
}

/// gin versus segment ideal for `s` random points of `P^r`.
pub fn experiment_points<F: Field>(
    field: F,
    s: usize,
    r: usize,
    orders: &[TermOrder],
    seed: u64,
    trials: usize,
    jobs: usize,
) -> Result<ExperimentReport> {
    if s == 0 || r == 0 {
        return Err(Error::InvalidArgument("need at least one point in P^r, r >= 1".into()));
    }
    let points = random_points(field.clone(), s, r, seed);
    let mut report = ExperimentReport::new("points");
    report
        .input("s", s)
        .input("r", r)
        .input("seed", seed)
        .input("field", field.descriptor())
        .input("orders", json!(orders.iter().map(|o| o.to_string()).collect::<Vec<_>>()))
        .input("trials", trials);
    let results = points_pipeline(&mut report, &points, orders, seed, trials, jobs)?;
    for (ord, g, seg, seg_is_ideal) in &results {
        let key = ord.to_string();
        report.verdict(&format!("{key}.segment_is_ideal"), *seg_is_ideal);
        report.check(&format!("{key}.gin_equals_segment"), strings(seg), strings(g));
        if *ord == TermOrder::Lex && r >= 1 {
            report.check(&format!("{key}.max_generator_degree"), s, g.max_generator_degree().unwrap_or(0));
            let power = Monomial::one(r + 1).mul_var(r - 1, s as u32);
            report.verdict(&format!("{key}.power_is_minimal_generator"), g.generators().contains(&power));
        }
    }
    Ok(report)
}

/// gin versus segment ideal for points read from a file.
pub fn points_file_report<F: Field>(
    points: &PointSet<F>,
    orders: &[TermOrder],
    seed: u64,
    trials: usize,
) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new("points");
    report
        .input("points", points.len())
        .input("seed", seed)
        .input("field", points.field.descriptor())
        .input("orders", json!(orders.iter().map(|o| o.to_string()).collect::<Vec<_>>()))
        .input("trials", trials);
    for (ord, g, seg, _) in points_pipeline(&mut report, points, orders, seed, trials, 1)? {
        report.output(&format!("{ord}.gin_equals_segment"), g.to_strings() == seg.to_strings());
    }
    Ok(report)
}

/// The two named point configurations whose Hilbert function is generic
/// but whose gins are not segments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PointFixture {
    /// Seven points of `P^3` whose three quadrics share a linear factor.
    Seven,
    /// The ten points `(a, b, c, 1)`, `a + b + c <= 2`.
    Ten,
}

pub fn experiment_point_fixture<F: Field>(
    field: F,
    fixture: PointFixture,
    seed: u64,
    trials: usize,
) -> Result<ExperimentReport> {
    let (points, name) = match fixture {
        PointFixture::Seven => (seven_special_points(field.clone()), "seven"),
        PointFixture::Ten => (ten_points(field.clone()), "ten"),
    };
    let s = points.len() as u64;
    let mut report = ExperimentReport::new("point-fixture");
    report
        .input("fixture", name)
        .input("seed", seed)
        .input("field", field.descriptor())
        .input("trials", trials);
    let orders = [TermOrder::Lex, TermOrder::RevLex];
    let results = points_pipeline(&mut report, &points, &orders, seed, trials, 1)?;
    let generic = report.output_value("hilbert_function").and_then(Value::as_array).is_some_and(|hf| {
        hf.iter()
            .enumerate()
            .all(|(d, v)| v.as_u64() == Some(ginlab::monomial::count_monomials(4, d as u32).min(s)))
    });
    report.verdict("generic_hilbert_function", generic);
    match fixture {
        PointFixture::Seven => {
            let expected = json!(["x0^2", "x0*x1", "x0*x2"]);
            for (ord, g, seg, _) in &results {
                let key = ord.to_string();
                let part: Vec<String> = g.degree_part(2).iter().map(|m| m.fmt_with(g.names())).collect();
                report.check(&format!("{key}.degree_two_part"), expected.clone(), json!(part));
                if *ord == TermOrder::RevLex {
                    report.verdict("revlex.gin_differs_from_segment_in_degree_two", g.degree_part(2) != seg.degree_part(2));
                }
            }
        }
        PointFixture::Ten => {
            // the plane cubic through a generic projection has lex lead x1^3
            let cube = Monomial::one(4).mul_var(1, 3);
            let (_, g, seg, _) = &results[0];
            report
                .verdict("lex.cube_in_gin", g.contains(&cube))
                .verdict("lex.cube_not_in_segment", !seg.contains(&cube));
            let x2_cube = Monomial::one(4).mul_var(2, 3);
            report
                .output("lex.x2_cubed_in_gin", g.contains(&x2_cube))
                .output("lex.x2_cubed_in_segment", seg.contains(&x2_cube));
        }
    }
    Ok(report)
}

/// The eight Borel-fixed ideals with Hilbert function `(1, 3, 6, 7, 7, ...)`,
/// in the order they are usually listed.
pub const SEVEN_POINT_CENSUS: [&str; 8] = [
    "x^3, x^2*y, x^2*z, x*y^3, x*y^2*z, x*y*z^3, x*z^5, y^7",
    "x^3, x^2*y, x^2*z, x*y^3, x*y^2*z, x*y*z^3, y^6",
    "x^3, x^2*y, x^2*z, x*y^3, x*y^2*z, y^5",
    "x^3, x^2*y, x^2*z, x*y^3, y^4",
    "x^3, x^2*y, x*y^2, x^2*z^2, x*y*z^3, x*z^5, y^7",
    "x^3, x^2*y, x*y^2, x^2*z^2, x*y*z^3, y^6",
    "x^3, x^2*y, x*y^2, x^2*z^2, y^5",
    "x^3, x^2*y, x*y^2, y^4",
];

pub fn census_ideals() -> Vec<MonomialIdeal> {
    let names: Arc<[String]> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
    SEVEN_POINT_CENSUS
        .iter()
        .map(|t| MonomialIdeal::parse(names.clone(), t).expect("census fixtures parse"))
        .collect()
}

pub fn experiment_borel_census() -> Result<ExperimentReport> {
    let hf = HilbertFunction::from_values(vec![1, 3, 6, 7], Some(7));
    let mut report = ExperimentReport::new("borel-census");
    report.input("hilbert_function", "1,3,6,7,7,...").input("variables", "x,y,z");
    let found = enumerate_borel_by_hf(&hf, 3, 10)?;
    let listed = census_ideals();
    let key = |j: &MonomialIdeal| j.generators().iter().map(Monomial::exponents).collect::<Vec<_>>();
    let mut found_keys: Vec<_> = found.iter().map(key).collect();
    let mut listed_keys: Vec<_> = listed.iter().map(key).collect();
    found_keys.sort();
    listed_keys.sort();
    report.check("census_size", 8, found.len());
    report.verdict("census_matches_list", found_keys == listed_keys);
    report.verdict("all_borel_fixed", found.iter().all(MonomialIdeal::is_borel_fixed));

    let mut feasible = Vec::new();
    let mut entries = Vec::new();
    for (k, j) in listed.iter().enumerate() {
        let w = segment_witness(j, None)?;
        if w.is_some() {
            feasible.push(k + 1);
        }
        entries.push(json!({
            "label": k + 1,
            "generators": j.to_strings(),
            "witness": w.as_ref().map(|w| w.integer_weights().iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            "degrees": w.as_ref().map(|w| [w.degrees.0, w.degrees.1]),
        }));
    }
    report.output("ideals", Value::Array(entries));
    report.check("segments", json!([1, 2, 3, 8]), json!(feasible));
    let range = |j: &MonomialIdeal| ginlab::fourier_motzkin::default_degree_range(j);
    report
        .verdict("weight_6_2_1_realizes_ideal_2", verify_integer_weight(&listed[1], &[6, 2, 1], range(&listed[1])))
        .verdict("weight_4_2_1_realizes_ideal_3", verify_integer_weight(&listed[2], &[4, 2, 1], range(&listed[2])));
    Ok(report)
}

/// Truncated Sylvester matrix of general forms monic in `x0`, its minors
/// and the regularity predictions for them.
pub fn experiment_sylvester<F: Field>(
    field: F,
    a: u32,
    b: u32,
    p: u32,
    seed: u64,
    degree_cap: u32,
    trials: usize,
) -> Result<ExperimentReport> {
    let ring = Ring::new(field.clone(), 4)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f = random_monic_in_x0(&ring, a, &mut rng);
    let g = random_monic_in_x0(&ring, b, &mut rng);
    sylvester_report(&f, &g, p, seed, degree_cap, trials)
}

pub fn sylvester_report<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    p: u32,
    seed: u64,
    degree_cap: u32,
    trials: usize,
) -> Result<ExperimentReport> {
    let ring = f.ring().clone();
    let r = ring.nvars() as i64 - 1;
    let (a, b) = (f.homogeneous_degree().unwrap_or(0), g.homogeneous_degree().unwrap_or(0));
    let mut report = ExperimentReport::new("sylvester");
    report
        .input("a", a)
        .input("b", b)
        .input("p", p)
        .input("f", f.to_string())
        .input("g", g.to_string())
        .input("seed", seed)
        .input("field", ring.field().descriptor());
    let syl = build_sylp(f, g, p)?;
    let reduced = unit_reduce(&syl);
    let minors = maximal_minors_ideal(&syl)?;
    let ideal = minors.ideal.clone().with_degree_cap(degree_cap);
    report
        .output("shape", json!([syl.rows(), syl.cols()]))
        .output("reduced_shape", json!([reduced.rows(), reduced.cols()]))
        .output("row_degrees", json!(reduced.row_degrees))
        .output("col_degrees", json!(reduced.col_degrees))
        .output("minors", minors.minors.len())
        .output("zero_minors", minors.zero_minors);
    let codim = codimension(&ideal)?;
    report.output("codimension", codim);
    report.check("codimension", (p as i64 + 1).min(r), codim);

    let regularity = gin(&ideal, &TermOrder::RevLex, trials, seed)?.regularity;
    report.output("gin_revlex_regularity", json!(regularity));
    let en = match (&reduced.row_degrees, &reduced.col_degrees) {
        (Some(rows), Some(cols)) if reduced.rows() > 0 => en_regularity(rows, cols).ok(),
        _ => None,
    };
    let formula = kp_regularity_formula(a as i64, b as i64, p as i64).ok();
    report.output("en_regularity", json!(en)).output("kp_regularity_formula", json!(formula));
    // both predictions assume the minors have the expected codimension p + 1
    if (p as i64) < r && formula.is_some() {
        report
            .check("en_regularity_matches_gin", json!(regularity), json!(en))
            .check("formula_matches_gin", json!(regularity), json!(formula));
    }

    let fg = IdealHandle::new(&ring, vec![f.clone(), g.clone()])?.with_degree_cap(degree_cap);
    let tower = partial_elim_ideals(&fg, p, &TermOrder::RevLex)?;
    let kp = tower.level(p as usize);
    report.verdict("minors_contained_in_kp", kp.contains_ideal(&ideal)?);
    let equal = ideal.ideal_equal(kp, &TermOrder::RevLex)?;
    report.output("minors_equal_kp", equal);
    if p as i64 <= r - 2 {
        report.verdict("minors_equal_kp", equal);
    }
    Ok(report)
}

/// gin of an arbitrary homogeneous ideal.
pub fn gin_report<F: Field>(ideal: &IdealHandle<F>, ord: &TermOrder, trials: usize, seed: u64) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new("gin");
    report
        .input("generators", json!(ideal.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>()))
        .input("order", ord.to_string())
        .input("trials", trials)
        .input("seed", seed)
        .input("degree_cap", ideal.degree_cap());
    let res = gin(ideal, ord, trials, seed)?;
    let data = res.gin.hilbert(0);
    report
        .output("gin", strings(&res.gin))
        .output("borel", res.borel)
        .output("regularity", json!(res.regularity))
        .output("agreed", res.agreed)
        .output("trials_used", res.trials_used)
        .output("seeds", json!(res.seeds))
        .output("dimension", data.dimension)
        .output("degree", data.degree);
    report.verdict("trials_agree", res.agreed);
    Ok(report)
}

/// Partial elimination tower of an arbitrary ideal in its given coordinates.
pub fn pei_report<F: Field>(ideal: &IdealHandle<F>, p_max: u32, inner: &TermOrder) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new("pei");
    report
        .input("generators", json!(ideal.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>()))
        .input("p_max", p_max)
        .input("inner_order", inner.to_string());
    let tower = partial_elim_ideals(ideal, p_max, inner)?;
    let mut levels = Vec::new();
    for (p, level) in tower.levels.iter().enumerate() {
        let data = level.hilbert_data(inner, 0)?;
        levels.push(json!({
            "p": p,
            "generators": level.generators().iter().map(|g| g.to_string()).collect::<Vec<_>>(),
            "initial_ideal": level.initial_ideal(inner)?.to_strings(),
            "dimension": data.dimension,
            "degree": data.degree,
        }));
    }
    report
        .output("levels", Value::Array(levels))
        .output("max_x0_degree", tower.max_x0_degree());
    report
        .verdict("decomposition", tower.decomposition_holds()?)
        .verdict("ascending_chain", tower.is_ascending()?);
    Ok(report)
}

/// Segment ideal for a Hilbert function `h(0), h(1), ...` whose last value
/// repeats forever.
pub fn segment_report(values: &[u64], nvars: usize, ord: &TermOrder, bound: u32) -> Result<ExperimentReport> {
    let hf = HilbertFunction::from_values(values.to_vec(), values.last().copied());
    let seg = segment_ideal_of(&hf, nvars, ord, bound)?;
    let mut report = ExperimentReport::new("segment");
    report
        .input("hilbert_function", json!(values))
        .input("variables", nvars)
        .input("order", ord.to_string())
        .input("bound", bound);
    let spaces: Vec<Value> = seg
        .spaces
        .iter()
        .map(|s| json!({"degree": s.degree, "monomials": s.monomials.iter().map(|m| m.fmt_with(seg.ideal.names())).collect::<Vec<_>>()}))
        .collect();
    report
        .output("spaces", Value::Array(spaces))
        .output("is_ideal", seg.is_ideal)
        .output("ideal", strings(&seg.ideal));
    Ok(report)
}

/// Weight witness (or infeasibility) for a monomial ideal being a segment.
pub fn witness_report(j: &MonomialIdeal, degrees: Option<(u32, u32)>) -> Result<ExperimentReport> {
    let mut report = ExperimentReport::new("segment-witness");
    report.input("ideal", strings(j)).input("degrees", json!(degrees));
    let w = segment_witness(j, degrees)?;
    report.output("feasible", w.is_some()).output(
        "witness",
        json!(w.as_ref().map(|w| w.integer_weights().iter().map(|x| x.to_string()).collect::<Vec<_>>())),
    );
    if let Some(w) = &w {
        report.output("degrees", json!([w.degrees.0, w.degrees.1]));
    }
    Ok(report)
}
