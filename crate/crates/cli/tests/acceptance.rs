//! One line per acceptance criterion, each driven through the `nefmirror` binary.
//! Criteria run concurrently; the process fails if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

struct Run {
    code: i32,
    report: Value,
    elapsed: Duration,
}

fn nefmirror(args: &[&str]) -> Run {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_nefmirror")).args(args).arg("--json").output().expect("binary runs");
    let elapsed = start.elapsed();
    let report = serde_json::from_slice(&out.stdout).unwrap_or(Value::Null);
    Run { code: out.status.code().unwrap_or(-1), report, elapsed }
}

/// Outcome of one criterion: failed checks (empty means pass) and wall time.
struct Outcome {
    failures: Vec<String>,
    elapsed: Duration,
}

struct Checker {
    failures: Vec<String>,
    elapsed: Duration,
}

impl Checker {
    fn new() -> Self {
        Checker { failures: Vec::new(), elapsed: Duration::ZERO }
    }

    fn run(&mut self, args: &[&str], expected_code: i32) -> Value {
        let r = nefmirror(args);
        self.elapsed += r.elapsed;
        if r.code != expected_code {
            self.failures.push(format!("`{}` exited {} (expected {expected_code})", args.join(" "), r.code));
        }
        r.report["results"].clone()
    }

    fn check(&mut self, ok: bool, what: &str) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }

    fn eq(&mut self, got: &Value, want: Value, what: &str) {
        if *got != want {
            self.failures.push(format!("{what}: got {got}, expected {want}"));
        }
    }

    fn within(mut self, limit: Duration) -> Outcome {
        if self.elapsed > limit {
            self.failures.push(format!("took {:.1?}, limit {limit:?}", self.elapsed));
        }
        Outcome { failures: self.failures, elapsed: self.elapsed }
    }
}

fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

fn c01_dual_nef_partition() -> Outcome {
    let mut c = Checker::new();
    let r = c.run(&["nef", "dual", "--builtin", "delta"], 0);
    c.eq(&r["parts_match"], true.into(), "∇₁, ∇₂");
    c.eq(&r["total_matches"], true.into(), "∇ against the listed points");
    c.eq(&r["total_vertices"], 15.into(), "irredundant vertices of ∇");
    let verts = |i: usize| -> BTreeSet<Vec<i64>> { serde_json::from_value(r["parts"][i]["vertices"].clone()).unwrap_or_default() };
    let point = |k: Option<usize>| {
        let mut v = vec![0; 6];
        if let Some(k) = k {
            v[k - 1] = 1;
        }
        v
    };
    // In M the class of e₆ is written −(e₁ + … + e₅).
    let nabla1: BTreeSet<_> = [None, Some(1), Some(2), Some(3)].map(point).into();
    let nabla2: BTreeSet<_> = [point(None), point(Some(4)), point(Some(5)), vec![-1, -1, -1, -1, -1, 0]].into();
    c.check(verts(0) == nabla1, "∇₁ = conv{0, e₁, e₂, e₃}");
    c.check(verts(1) == nabla2, "∇₂ = conv{0, e₄, e₅, e₆}");
    c.within(secs(1))
}

fn c02_fans() -> Outcome {
    let mut c = Checker::new();
    let r = c.run(&["fan", "compare"], 0);
    c.eq(&r["delta_cones"], 6.into(), "cones of Σ_Δ");
    c.eq(&r["delta_matches_sigma"], true.into(), "Σ_Δ against σ₁..σ₆");
    c.eq(&r["nabla_cones"], 15.into(), "cones of Σ_∇");
    c.eq(&r["normal_equals_face_fan"], true.into(), "normal fan of ∇ against face fan of P");
    c.eq(&r["nabla_matches_named_cones"], true.into(), "U/V/C generators");
    c.within(secs(5))
}

fn c03_triangulation() -> Outcome {
    let mut c = Checker::new();
    let r = c.run(&["triangulate", "verify"], 0);
    c.eq(&r["axioms"], true.into(), "triangulation axioms");
    c.eq(&r["star"], true.into(), "star");
    c.eq(&r["maximal"], true.into(), "maximal");
    c.eq(&r["points"], 111.into(), "lattice points used");
    c.eq(&r["volume_simplices"], r["volume_polytope"].clone(), "volume accounting");
    c.eq(&r["facet_mismatches"], Value::Array(vec![]), "facet restrictions");
    c.within(secs(60))
}

fn c04_smooth_pi() -> Outcome {
    let mut c = Checker::new();
    let r = c.run(&["family", "cones"], 0);
    c.eq(&r["cones"], 1458.into(), "maximal cones of Π");
    c.eq(&r["all_unimodular"], true.into(), "|det| = 1");
    c.within(secs(30))
}

fn c05_projectivity() -> Outcome {
    let mut c = Checker::new();
    let r = c.run(&["projectivity", "check"], 0);
    c.eq(&r["regular"], true.into(), "τ(P) regular");
    c.eq(&r["slack_positive"], true.into(), "slack > 0");
    c.eq(&r["certificate_verified"], true.into(), "every wall inequality re-checked");
    let w = c.run(&["projectivity", "check", "--builtin", "nonregular"], 1);
    c.eq(&w["regular"], false.into(), "non-regular example is infeasible");
    c.eq(&w["witness_verified"], true.into(), "infeasibility witness");
    c.within(secs(600))
}

fn c06_pullbacks() -> Outcome {
    let mut c = Checker::new();
    let r = c.run(&["family", "rays"], 0);
    c.eq(&r["d1_ones"], 55.into(), "π*D_∇₁ support");
    c.eq(&r["d2_ones"], 55.into(), "π*D_∇₂ support");
    c.eq(&r["coefficients_binary"], true.into(), "coefficients in {0, 1}");
    c.eq(&r["sum_is_anticanonical"], true.into(), "sum is anticanonical");
    let ok = r["listing"].as_array().into_iter().flatten().all(|ray| {
        let u = ray["label"].as_str().is_some_and(|l| l.starts_with('u'));
        (ray["d1"] == 1) == u && (ray["d2"] == 1) == !u
    });
    c.check(ok, "D₁ on u-rays and D₂ on v-rays");
    c.within(secs(5))
}

fn c07_singular_fibers() -> Outcome {
    let mut c = Checker::new();
    let r = c.run(&["family", "odp"], 0);
    for root in r["roots"].as_array().into_iter().flatten() {
        let psi = root["psi"].as_str().unwrap_or("?");
        c.eq(&root["rank"], 2.into(), &format!("rank at ψ = {psi}"));
        c.eq(&root["residuals"], serde_json::json!(["0", "0", "0"]), &format!("residuals at ψ = {psi}"));
        c.eq(&root["form"]["gram"], r["printed_form"]["gram"].clone(), &format!("Gram matrix at ψ = {psi}"));
        c.eq(&root["form"]["det"], "3".into(), &format!("Gram determinant at ψ = {psi}"));
    }
    c.eq(&Value::from(r["roots"].as_array().map_or(0, Vec::len)), 6.into(), "sixth roots of unity");
    c.eq(&r["witness"]["psi"], "1".into(), "witness fiber");
    c.eq(&r["witness"]["rank"], 3.into(), "smooth witness rank");
    c.within(secs(5))
}

type Mono = BTreeMap<usize, u32>;
type Term = (i64, u32, Mono);
type PatchShape<'a> = (&'a str, [&'a str; 6], (Mono, Mono), [Vec<Term>; 2]);

/// "y1*y3^2" → {1: 1, 3: 2}, renamed through `rename`.
fn monomial(s: &str, rename: &BTreeMap<usize, usize>) -> Mono {
    s.split('*')
        .filter(|f| f.starts_with('y'))
        .map(|f| {
            let (v, e) = f[1..].split_once('^').unwrap_or((&f[1..], "1"));
            (rename[&v.parse::<usize>().unwrap()], e.parse().unwrap())
        })
        .collect()
}

/// Equation "…terms… = 0" as a set of (coefficient, ψ-degree, monomial).
fn equation(s: &str, rename: &BTreeMap<usize, usize>) -> BTreeSet<(i64, u32, Mono)> {
    s.trim_end_matches(" = 0")
        .split(" + ")
        .map(|t| {
            let coef = t[1..t.find(')').unwrap()].parse().unwrap();
            let psi = t.split('*').filter(|f| *f == "psi").count() as u32;
            (coef, psi, monomial(t, rename))
        })
        .collect()
}

fn mono(pairs: &[(usize, u32)]) -> Mono {
    pairs.iter().copied().collect()
}

fn c08_patches() -> Outcome {
    let mut c = Checker::new();
    let r = c.run(&["family", "patch", "--cone", "U1", "--cone", "C3,6"], 0);
    // Reference generators, relation and equations, with 1-based y-indices.
    let expected: [PatchShape; 2] = [
        (
            "U1",
            ["u2*u3*u4*u5*u6", "u2^3", "u3^3", "u4^3", "u5^3", "u6^3"],
            (mono(&[(2, 1), (3, 1), (4, 1), (5, 1), (6, 1)]), mono(&[(1, 3)])),
            [
                vec![(3, 1, mono(&[(1, 1)])), (-1, 0, mono(&[])), (-1, 0, mono(&[(2, 1)])), (-1, 0, mono(&[(3, 1)]))],
                vec![(3, 1, mono(&[])), (-1, 0, mono(&[(4, 1)])), (-1, 0, mono(&[(5, 1)])), (-1, 0, mono(&[(6, 1)]))],
            ],
        ),
        (
            "C3,6",
            ["u1^3*v1^3", "u2^3*v2^3", "u1*u2*u4*u5", "u4^3*v4^3", "u5^3*v5^3", "v1*v2*v4*v5"],
            (mono(&[(1, 1), (2, 1), (4, 1), (5, 1)]), mono(&[(3, 3), (6, 3)])),
            [
                vec![(3, 1, mono(&[(3, 1)])), (-1, 0, mono(&[(1, 1)])), (-1, 0, mono(&[(2, 1)])), (-1, 0, mono(&[]))],
                vec![(3, 1, mono(&[(6, 1)])), (-1, 0, mono(&[(4, 1)])), (-1, 0, mono(&[(5, 1)])), (-1, 0, mono(&[]))],
            ],
        ),
    ];
    for (name, gens, relation, equations) in expected {
        let p = &r["patches"][name];
        let strs = |k: &str| -> Vec<String> {
            p[k].as_array().into_iter().flatten().filter_map(|v| v.as_str().map(String::from)).collect()
        };
        // Our yᵢ = monomial lines, mapped to the reference numbering.
        let mut rename = BTreeMap::new();
        for line in strs("generators") {
            let (y, m) = line.split_once(" = ").unwrap();
            match gens.iter().position(|g| *g == m) {
                Some(k) => {
                    rename.insert(y[1..].parse::<usize>().unwrap(), k + 1);
                }
                None => c.failures.push(format!("{name}: unexpected generator {m}")),
            }
        }
        if rename.len() != 6 {
            c.failures.push(format!("{name}: expected 6 generators"));
            continue;
        }
        let rels: Vec<(Mono, Mono)> = strs("relations")
            .iter()
            .map(|l| {
                let (a, b) = l.split_once(" = ").unwrap();
                (monomial(a, &rename), monomial(b, &rename))
            })
            .collect();
        let flipped = (relation.1.clone(), relation.0.clone());
        c.check(rels.len() == 1 && (rels[0] == relation || rels[0] == flipped), &format!("{name}: binomial relation"));
        let got: BTreeSet<_> = strs("equations").iter().map(|e| equation(e, &rename)).collect();
        let want: BTreeSet<_> = equations.into_iter().map(|t| t.into_iter().collect::<BTreeSet<_>>()).collect();
        c.check(got == want, &format!("{name}: equations"));
    }
    c.within(secs(10))
}

fn c09_picard_fuchs() -> Outcome {
    let mut c = Checker::new();
    let r = c.run(&["pf", "annihilate", "--op", "L", "--order", "50"], 0);
    c.eq(&r["annihilates"], true.into(), "L[Φ₀] = 0 through order 50");
    c.eq(&r["first_coefficients"], serde_json::json!(["1", "36", "8100"]), "c₀, c₁, c₂");
    c.eq(&r["oracle_agrees"], true.into(), "multinomial oracle up to n = 10");
    c.within(secs(1))
}

fn c10_frobenius() -> Outcome {
    let mut c = Checker::new();
    let r = c.run(&["pf", "frobenius", "--op", "R", "--order", "32"], 0);
    c.eq(&r["indicial"], "lambda^4 - 4*lambda^3 + 4*lambda^2".into(), "indicial polynomial of R");
    c.eq(&r["companion_eigenvalues"], serde_json::json!([0, 0, 2, 2]), "companion eigenvalues");
    c.eq(&r["log_solutions"], 2.into(), "log solutions");
    let k = c.run(&["pf", "classify"], 0);
    let expect = serde_json::json!([
        {"operator": "L", "point": "z=0", "indicial": [0, 0, 0, 0], "jordan": [4], "classification": "MUM"},
        {"operator": "R", "point": "psi=0", "indicial": [0, 0, 2, 2], "jordan": [2, 2], "classification": "K"},
    ]);
    c.eq(&k["reports"], expect, "classifications");
    c.within(secs(5))
}

fn c11_diamond() -> Outcome {
    let mut c = Checker::new();
    let r = c.run(&["pf", "diamond"], 0);
    c.eq(&r["count"], 3.into(), "diamonds");
    c.eq(&r["matches_candidates"], true.into(), "the three reference arrays");
    let rhombus = serde_json::json!([[[0], [0, 0], [1, 0, 1], [0, 0, 0, 0], [1, 0, 1], [0, 0], [0]]]);
    c.eq(&r["rank_two"], rhombus, "rank-2 selection");
    c.within(secs(1))
}

fn c12_yukawa() -> Outcome {
    let mut c = Checker::new();
    let r = c.run(&["pf", "yukawa", "--order", "20"], 0);
    c.eq(&r["holds"], true.into(), "identity to order 20");
    c.eq(&r["perturbed_holds"], false.into(), "perturbed constant");
    c.within(secs(1))
}

fn main() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 12] = [
        ("dual nef-partition", c01_dual_nef_partition),
        ("normal and face fans", c02_fans),
        ("triangulation τ(P)", c03_triangulation),
        ("smoothness of Π", c04_smooth_pi),
        ("projectivity", c05_projectivity),
        ("divisor pullbacks", c06_pullbacks),
        ("singular fibers", c07_singular_fibers),
        ("patch presentations", c08_patches),
        ("Picard–Fuchs annihilation", c09_picard_fuchs),
        ("Frobenius and monodromy", c10_frobenius),
        ("Hodge–Deligne diamond", c11_diamond),
        ("Yukawa coupling", c12_yukawa),
    ];
    let outcomes: Vec<Outcome> = std::thread::scope(|s| {
        let handles: Vec<_> = criteria.iter().map(|(_, f)| s.spawn(f)).collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    });
    let mut failed = 0;
    for (i, ((name, _), o)) in criteria.iter().zip(&outcomes).enumerate() {
        let verdict = if o.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("criterion {:>2}: {verdict} {name} ({:.2?})", i + 1, o.elapsed);
        for f in &o.failures {
            println!("              {f}");
        }
        failed += usize::from(!o.failures.is_empty());
    }
    println!("{} of 12 criteria pass", 12 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
