//! End-to-end acceptance run: one PASS/FAIL line per criterion.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command as Proc;
use std::time::{Duration, Instant};

use jvu_core::albert::{jordan_mul_via_matrices, sample_zero_pair, AlbertElement};
use jvu_core::expr::parse_poly;
use jvu_core::freealg::{FreeAlgebra, FreePoly, GeneratorSet, MultiDegree, Word};
use jvu_core::ideal::{
    assoc_ideal_component, outer_ideal_component, MembershipOutcome, OuterIdeal,
};
use jvu_core::jordan::{JordanElement, JordanSpan, Mode, DEFAULT_DEGREE_BOUND};
use jvu_core::linalg::Subspace;
use jvu_core::scalar::{Field, Rational, Scalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

struct Run {
    code: i32,
    report: Value,
    wall: Duration,
}

fn jvu(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Proc::new(env!("CARGO_BIN_EXE_jvu"))
        .args(args)
        .output()
        .expect("binary runs");
    let wall = start.elapsed();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    Run {
        code: out.status.code().unwrap_or(-1),
        report,
        wall,
    }
}

fn claims_hold(r: &Value) -> Check {
    let claims = r["claims"].as_array().ok_or("report has no claims")?;
    ensure!(!claims.is_empty(), "no claims checked");
    for c in claims {
        ensure!(
            c["holds"] == true,
            "claim {} failed: expected {} observed {}",
            c["name"],
            c["expected"],
            c["observed"]
        );
    }
    Ok(())
}

fn confirmed(run: &Run, limit: Duration) -> Check {
    ensure!(run.code == 0, "exit code {}", run.code);
    ensure!(
        run.report["verdict"] == "confirmed",
        "verdict {}",
        run.report["verdict"]
    );
    ensure!(run.wall < limit, "took {:?}, limit {:?}", run.wall, limit);
    claims_hold(&run.report)
}

fn observed(r: &Value, name: &str) -> Value {
    r["claims"]
        .as_array()
        .and_then(|cs| cs.iter().find(|c| c["name"] == name))
        .map(|c| c["observed"].clone())
        .unwrap_or(Value::Null)
}

fn xyz(field: Field) -> std::sync::Arc<FreeAlgebra> {
    FreeAlgebra::new(GeneratorSet::parse_list("x,y,z").unwrap(), field)
}

fn criterion1() -> Check {
    for field in ["q", "gf2", "gf5"] {
        let run = jvu(&["lemma1", "--field", field]);
        confirmed(&run, Duration::from_secs(1)).map_err(|e| format!("{field}: {e}"))?;
        ensure!(
            run.report["certificates"]["residual"] == "0",
            "{field}: residual nonzero"
        );
        // Independent expansion: y(xzx)y − x(yzy)x against the two sides as printed.
        let alg = xyz(jvu_core::report::parse_field(field).unwrap());
        let lhs = parse_poly("y*x*z*x*y - x*y*z*y*x", &alg).unwrap();
        let rhs = parse_poly(run.report["data"]["rhs"].as_str().unwrap(), &alg).unwrap();
        ensure!(
            lhs == rhs,
            "{field}: printed right-hand side disagrees with direct expansion"
        );
    }
    Ok(())
}

/// Orbits of reversal on words of multidegree `d` that give a nonzero `w + w*`.
fn symmetric_orbit_count(d: &MultiDegree, field: Field) -> usize {
    let words = Word::all_of_degree(d);
    let pal = words.iter().filter(|w| w.is_palindrome()).count();
    let pairs = (words.len() - pal) / 2;
    if field.characteristic() == 2 {
        pairs
    } else {
        pairs + pal
    }
}

fn criterion2() -> Check {
    let run = jvu(&[
        "dims",
        "--vars",
        "x,y,z,t",
        "--multidegree",
        "1,1,1,1",
        "--field",
        "gf2",
    ]);
    confirmed(&run, Duration::from_secs(10))?;
    let d = &run.report["data"];
    ensure!(
        d["symmetric"] == 12 && d["jordan"] == 11,
        "dims {} / {}",
        d["symmetric"],
        d["jordan"]
    );
    let md = MultiDegree(vec![1, 1, 1, 1]);
    ensure!(
        symmetric_orbit_count(&md, Field::Prime(2)) == 12,
        "orbit oracle disagrees"
    );
    ensure!(
        d["rationals"]["symmetric"] == symmetric_orbit_count(&md, Field::Rationals),
        "rational symmetric dimension disagrees with orbit count"
    );
    ensure!(
        d["rationals"]["jordan"].is_u64(),
        "rational Jordan dimension missing"
    );
    Ok(())
}

fn criterion3() -> Check {
    let base = [
        "dims",
        "--vars",
        "x,y,z,t",
        "--multidegree",
        "1,1,1,1",
        "--field",
        "gf2",
        "--probe",
    ];
    let run = jvu(&[&base[..], &["sym(t*z*x*y)"]].concat());
    confirmed(&run, Duration::from_secs(10))?;
    ensure!(
        run.report["data"]["probe"]["inside"] == false,
        "tetrad reported inside"
    );
    let alg = FreeAlgebra::new(
        GeneratorSet::parse_list("x,y,z,t").unwrap(),
        Field::Prime(2),
    );
    let residual = run.report["certificates"]["probe"]["residual"]
        .as_str()
        .ok_or("no residual")?;
    ensure!(
        !parse_poly(residual, &alg).unwrap().is_zero(),
        "residual is zero"
    );
    // A genuine Jordan element asserted outside must be refuted.
    let false_claim = jvu(&[&base[..], &["circ(x, circ(y, circ(z, t)))"]].concat());
    ensure!(
        false_claim.code == 2,
        "false non-membership claim exited {}",
        false_claim.code
    );
    Ok(())
}

fn criterion4() -> Check {
    for (field, mode) in [("gf2", "quadratic"), ("q", "linear")] {
        let run = jvu(&["counterexample", "--field", field, "--mode", mode]);
        confirmed(&run, Duration::from_secs(60)).map_err(|e| format!("{field}: {e}"))?;
        for (name, want) in [
            ("k_in_assoc_ideal", true),
            ("k_not_in_outer_ideal", true),
            ("symmetrized_not_in_outer_ideal", true),
            ("u_term_in_outer_ideal", true),
        ] {
            ensure!(observed(&run.report, name) == want, "{field}: {name}");
        }
        let alg = xyz(jvu_core::report::parse_field(field).unwrap());
        let certs = &run.report["certificates"];
        let k = parse_poly("y*x*z*x*y - x*y*z*y*x", &alg).unwrap();
        let k_cert = certs["k"]["assoc"]["certificate"]
            .as_str()
            .ok_or("no k certificate")?;
        ensure!(
            parse_poly(k_cert, &alg).unwrap() == k,
            "{field}: k certificate does not replay"
        );
        let u = parse_poly("(x*y + y*x)*z*(x*y + y*x)", &alg).unwrap();
        let u_cert = certs["u_term"]["outer"]["certificate"]
            .as_str()
            .ok_or("no u certificate")?;
        ensure!(
            parse_poly(u_cert, &alg).unwrap() == u,
            "{field}: zU certificate does not replay"
        );
    }
    Ok(())
}

fn criterion5() -> Check {
    let run = jvu(&["coefficients", "--field", "q"]);
    confirmed(&run, Duration::from_secs(5))?;
    let fam = &run.report["data"]["family"];
    for (k, v) in [
        ("alpha1", "0"),
        ("alpha2", "0"),
        ("alpha3", "λ + 1"),
        ("alpha4", "λ"),
        ("alpha5", "0"),
        ("alpha6", "0"),
        ("alpha7", "-2λ"),
    ] {
        ensure!(fam[k] == v, "{k} = {}", fam[k]);
    }
    // Substitute the family into the printed ansatz for several λ.
    let alg = xyz(Field::Rationals);
    let targets: Vec<FreePoly> = run.report["data"]["targets"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| parse_poly(t.as_str().unwrap(), &alg).unwrap())
        .collect();
    let rhs = parse_poly(run.report["data"]["rhs"].as_str().unwrap(), &alg).unwrap();
    for lam in [-3i64, 0, 1, 7] {
        let coeffs = [0, 0, lam + 1, lam, 0, 0, -2 * lam];
        let mut sum = FreePoly::zero(&alg);
        for (c, t) in coeffs.iter().zip(&targets) {
            sum = &sum + &t.scale(&Field::Rationals.from_i64(*c));
        }
        ensure!(sum == rhs, "family fails at λ = {lam}");
    }
    Ok(())
}

fn albert_run() -> &'static Run {
    static RUN: std::sync::OnceLock<Run> = std::sync::OnceLock::new();
    RUN.get_or_init(|| jvu(&["albert", "--samples", "100", "--seed", "42"]))
}

fn criterion6() -> Check {
    let run = albert_run();
    confirmed(run, Duration::from_secs(30))?;
    for name in ["cubic", "linearized_cubic", "operator_identity"] {
        ensure!(
            observed(&run.report, name) == 100,
            "{name}: {}",
            observed(&run.report, name)
        );
    }
    Ok(())
}

fn u_apply_matrix(a: &AlbertElement, c: &AlbertElement) -> AlbertElement {
    // cU_a = 2(ca)a − c·a², through octonion matrices
    let ca = jordan_mul_via_matrices(c, a);
    let a2 = jordan_mul_via_matrices(a, a);
    &jordan_mul_via_matrices(&ca, a).scale_int(2) - &jordan_mul_via_matrices(c, &a2)
}

fn parse_coords(v: &Value) -> AlbertElement {
    AlbertElement::from_coords(
        v.as_array()
            .unwrap()
            .iter()
            .map(|s| s.as_str().unwrap().parse::<Rational>().unwrap())
            .collect(),
    )
}

fn criterion7() -> Check {
    let run = albert_run();
    confirmed(run, Duration::from_secs(60))?;
    for name in [
        "ra2_rb_commute",
        "ra_rb2_commute",
        "u_via_squares",
        "u_commute",
        "dichotomy",
    ] {
        ensure!(
            observed(&run.report, name) == 100,
            "{name}: {}",
            observed(&run.report, name)
        );
    }
    ensure!(run.report["seed"] == 42, "seed not recorded");
    let log = run.report["data"]["zero_pairs"]
        .as_array()
        .ok_or("no per-sample log")?;
    ensure!(log.len() == 100, "log has {} entries", log.len());
    ensure!(
        log.iter()
            .all(|e| e["s_ab_zero"].is_boolean() && e["a2b_zero"].is_boolean()),
        "dichotomy not logged per sample"
    );
    // Re-sample a few logged pairs and test commutation through the matrix model.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for e in log.iter().take(5) {
        let zp = sample_zero_pair(e["seed"].as_u64().unwrap()).map_err(|e| e.to_string())?;
        ensure!(
            jordan_mul_via_matrices(&zp.a, &zp.b).is_zero(),
            "a·b ≠ 0 in matrix model"
        );
        let c = AlbertElement::random(&mut rng, 5);
        let ab = u_apply_matrix(&zp.b, &u_apply_matrix(&zp.a, &c));
        let ba = u_apply_matrix(&zp.a, &u_apply_matrix(&zp.b, &c));
        ensure!(ab == ba, "U_a, U_b do not commute on a probe");
    }
    let pair = &run.report["certificates"]["noncommuting_pair"];
    ensure!(!pair.is_null(), "no non-commuting pair found");
    let (a, b) = (parse_coords(&pair["a"]), parse_coords(&pair["b"]));
    ensure!(
        !jordan_mul_via_matrices(&a, &b).is_zero(),
        "witness pair has a·b = 0"
    );
    let differs = (0..27).any(|i| {
        let c = AlbertElement::basis(i);
        u_apply_matrix(&b, &u_apply_matrix(&a, &c)) != u_apply_matrix(&a, &u_apply_matrix(&b, &c))
    });
    ensure!(differs, "witness pair commutes in the matrix model");
    // Byte-identical reports apart from timing.
    let strip = |mut v: Value| {
        v["elapsed_ms"] = Value::Null;
        v
    };
    let r1 = jvu(&["albert", "--samples", "3", "--seed", "9"]).report;
    let r2 = jvu(&["albert", "--samples", "3", "--seed", "9"]).report;
    ensure!(strip(r1) == strip(r2), "albert report is not deterministic");
    Ok(())
}

const CASES: usize = 60;

fn random_poly(rng: &mut ChaCha8Rng, alg: &std::sync::Arc<FreeAlgebra>) -> FreePoly {
    let n = alg.gens.len() as u8;
    let terms = (0..rng.gen_range(0..5)).map(|_| {
        let len = rng.gen_range(0..4);
        let w = Word::new((0..len).map(|_| rng.gen_range(0..n)).collect());
        (w, alg.field.from_i64(rng.gen_range(-3..=3)))
    });
    FreePoly::from_terms(alg, terms.collect::<Vec<_>>())
}

fn random_field(rng: &mut ChaCha8Rng) -> Field {
    *[
        Field::Rationals,
        Field::Prime(2),
        Field::Prime(3),
        Field::Prime(7),
    ]
    .choose(rng)
    .unwrap()
}

fn random_jordan(rng: &mut ChaCha8Rng, alg: &std::sync::Arc<FreeAlgebra>) -> JordanElement {
    let n = alg.gens.len() as u8;
    loop {
        let mut g = || JordanElement::generator(alg, rng.gen_range(0..n));
        let (a, b) = (g(), g());
        let e = match rng.gen_range(0..4) {
            0 => a,
            1 => JordanElement::circ(&a, &b),
            2 => JordanElement::u(&a, &b),
            _ => JordanElement::square(&a),
        };
        // circ(x, x) vanishes in characteristic 2
        if !e.value().is_zero() {
            return e;
        }
    }
}

fn involution(rng: &mut ChaCha8Rng) -> Check {
    for i in 0..CASES {
        let alg = FreeAlgebra::new(
            GeneratorSet::parse_list("x,y,z").unwrap(),
            random_field(rng),
        );
        let (p, q) = (random_poly(rng, &alg), random_poly(rng, &alg));
        ensure!(
            (&p * &q).reverse() == &q.reverse() * &p.reverse(),
            "case {i}: (pq)* ≠ q*p*"
        );
        ensure!(
            (&p + &q).reverse() == &p.reverse() + &q.reverse(),
            "case {i}: * not additive"
        );
        ensure!(p.reverse().reverse() == p, "case {i}: ** ≠ id");
        ensure!(
            p.symmetrize().is_symmetric(),
            "case {i}: symmetrizer not symmetric"
        );
        ensure!(
            parse_poly(&p.format(), &alg).unwrap() == p,
            "case {i}: format does not parse back"
        );
    }
    Ok(())
}

fn random_target(rng: &mut ChaCha8Rng, n: usize, max_total: u32) -> MultiDegree {
    loop {
        let d = MultiDegree((0..n).map(|_| rng.gen_range(0..=2)).collect());
        if (1..=max_total).contains(&d.total()) {
            return d;
        }
    }
}

fn span_symmetry(rng: &mut ChaCha8Rng) -> Check {
    for i in 0..CASES {
        let n = rng.gen_range(2..=3);
        let gens = GeneratorSet::parse_list(&["x", "y", "z"][..n].join(",")).unwrap();
        let field = random_field(rng);
        let alg = FreeAlgebra::new(gens, field);
        let d = random_target(rng, n, 4);
        let mode = if rng.gen() {
            Mode::Linear
        } else {
            Mode::Quadratic
        };
        let span = JordanSpan::build(&alg, &d, mode, rng.gen(), DEFAULT_DEGREE_BOUND)
            .map_err(|e| e.to_string())?;
        for (deg, piece) in span.pieces() {
            for e in &piece.elements {
                ensure!(
                    e.value().is_symmetric(),
                    "case {i}: {} at {deg} not reverse-fixed",
                    e.format()
                );
                ensure!(
                    e.replays(),
                    "case {i}: recipe {} does not replay",
                    e.format()
                );
            }
        }
    }
    Ok(())
}

fn echelon_determinism(rng: &mut ChaCha8Rng) -> Check {
    for i in 0..CASES {
        let field = random_field(rng);
        let dim = rng.gen_range(3..9);
        let mut vecs: Vec<Vec<Scalar>> = (0..rng.gen_range(1..8))
            .map(|_| {
                (0..dim)
                    .map(|_| field.from_i64(rng.gen_range(-2..=2)))
                    .collect()
            })
            .collect();
        // dependent combination of the first two
        if vecs.len() >= 2 {
            let v: Vec<Scalar> = vecs[0].iter().zip(&vecs[1]).map(|(a, b)| a + b).collect();
            vecs.push(v);
        }
        let build = |vs: &[Vec<Scalar>]| {
            let mut s = Subspace::new(field, dim);
            for v in vs {
                s.insert(v).unwrap();
            }
            s
        };
        let reference = build(&vecs);
        for _ in 0..3 {
            vecs.shuffle(rng);
            let other = build(&vecs);
            ensure!(
                other.rows() == reference.rows(),
                "case {i}: echelon basis depends on order"
            );
            ensure!(
                other.pivots() == reference.pivots(),
                "case {i}: pivots depend on order"
            );
        }
    }
    Ok(())
}

fn outer_fixed_point(rng: &mut ChaCha8Rng) -> Check {
    for i in 0..CASES {
        let field = random_field(rng);
        let alg = xyz(field);
        let f = random_jordan(rng, &alg);
        let fdeg = f.value().multidegree().unwrap();
        let extra = random_target(rng, 3, 2);
        let target = fdeg.add(&extra);
        let mode = Mode::default_for(field);
        let ideal = OuterIdeal::build(&f, &target, mode, DEFAULT_DEGREE_BOUND)
            .map_err(|e| e.to_string())?;
        ensure!(
            ideal.verify_fixed_point().unwrap(),
            "case {i}: closure of {} not a fixed point",
            f.format()
        );
    }
    Ok(())
}

fn certificate_replay(rng: &mut ChaCha8Rng) -> Check {
    let d = MultiDegree(vec![2, 2, 1]);
    for field in [Field::Prime(2), Field::Rationals] {
        let alg = xyz(field);
        let f = JordanElement::circ(
            &JordanElement::generator(&alg, 0),
            &JordanElement::generator(&alg, 1),
        );
        let outer = outer_ideal_component(&f, &d, Mode::default_for(field), DEFAULT_DEGREE_BOUND)
            .map_err(|e| e.to_string())?;
        let assoc = assoc_ideal_component(f.value(), &d).map_err(|e| e.to_string())?;
        for i in 0..CASES / 2 {
            let mut p = FreePoly::zero(&alg);
            for e in outer.certificates() {
                p = &p + &e.value().scale(&field.from_i64(rng.gen_range(-2..=2)));
            }
            for (which, outcome) in [
                ("outer", outer.membership(&p)),
                ("assoc", assoc.membership(&p)),
            ] {
                let MembershipOutcome::Inside(cert) = outcome.map_err(|e| e.to_string())? else {
                    return Err(format!(
                        "{field} case {i}: {which} membership lost an ideal element"
                    ));
                };
                let replay = parse_poly(&cert.format(), &alg).map_err(|e| e.to_string())?;
                ensure!(
                    replay == p,
                    "{field} case {i}: {which} certificate does not replay"
                );
            }
        }
    }
    Ok(())
}

fn criterion8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    involution(&mut rng).map_err(|e| format!("involution: {e}"))?;
    span_symmetry(&mut rng).map_err(|e| format!("span symmetry: {e}"))?;
    echelon_determinism(&mut rng).map_err(|e| format!("echelon: {e}"))?;
    outer_fixed_point(&mut rng).map_err(|e| format!("outer fixed point: {e}"))?;
    certificate_replay(&mut rng).map_err(|e| format!("certificate replay: {e}"))?;
    Ok(())
}

fn main() {
    let criteria: [Criterion; 8] = [
        (
            "commutator identity residual vanishes over q, gf2, gf5",
            criterion1,
        ),
        (
            "symmetric 12 and Jordan 11 in four variables over gf2",
            criterion2,
        ),
        ("tetrad lies outside the Jordan span over gf2", criterion3),
        (
            "Cohn gap at (2,2,1) over gf2/quadratic and q/linear",
            criterion4,
        ),
        ("coefficient family for the seven-term ansatz", criterion5),
        (
            "Albert cubic, linearized cubic and operator identities on 100 samples",
            criterion6,
        ),
        (
            "zero pairs commute under U, with a non-commuting control",
            criterion7,
        ),
        ("property batches", criterion8),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(()) => println!("criterion {}: PASS  {name} ({secs:.2}s)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: FAIL  {name} ({secs:.2}s): {e}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
