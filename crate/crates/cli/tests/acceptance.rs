//! Acceptance criteria. One line per criterion; nonzero exit if any fails.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::Rng;

use homcalc::algebra::Algebra;
use homcalc::constructs::{cor45_approximation, oracle, thm36_witness, validate_witness, OracleKind};
use homcalc::harness::{corpus, draw_sample, evaluate, sample_rng, scan, CheckConfig, Outcome, ScanVerdict, ROUNDTRIP_ID};
use homcalc::homology::{
    ext_dim, gorenstein_id, gorenstein_pd, inj_dim, is_gorenstein_projective, perp_dim, proj_dim, syzygy,
    transpose, DimensionReport,
};
use homcalc::modrep::{
    direct_sum, exhaustive_search_applies, hom_dim, indecomposable_injective, indecomposable_projective, is_isomorphic, simple_module, Module,
    Projective,
};
use homcalc::{Evidence, Matrix, Verdict};

const CUTOFF: usize = 40;
const LIMIT: Duration = Duration::from_secs(60);

type Criterion = (&'static str, fn() -> Tally);

struct Tally {
    ok: bool,
    detail: String,
}

fn tally(ok: bool, detail: impl Into<String>) -> Tally {
    Tally { ok, detail: detail.into() }
}

fn algebra(name: &str) -> Arc<Algebra> {
    corpus().into_iter().find(|c| c.name == name).unwrap().algebra
}

fn samples(a: &Arc<Algebra>, seed: u64, n: usize) -> Vec<Module> {
    (0..n).map(|i| draw_sample(a, seed, i, 1)[0].module(a).unwrap()).collect()
}

fn regular(a: &Arc<Algebra>) -> Module {
    Projective::basic_regular(a).module().clone()
}

fn finite(r: &DimensionReport) -> Option<usize> {
    match r {
        DimensionReport::Zero => Some(0),
        r => r.exact(),
    }
}

fn closes(e: &Evidence) -> bool {
    match e {
        Evidence::PeriodicClosure { .. } | Evidence::FiniteResolution { .. } => true,
        Evidence::All { parts } => parts.iter().any(closes),
        _ => false,
    }
}

fn c01_linear_algebra() -> Tally {
    let mut bad = Vec::new();
    let mut inconsistent = 0;
    for i in 0..1000 {
        let mut rng = sample_rng(0x11, i);
        let p = if rng.gen_bool(0.5) { 2 } else { 3 };
        let (r, c) = (rng.gen_range(0..=12), rng.gen_range(0..=12));
        let m = Matrix::from_vec(p, r, c, (0..r * c).map(|_| rng.gen_range(0..p)).collect());
        let once = m.rref().reduced;
        let k = m.kernel_basis();
        let b: Vec<u32> = (0..r).map(|_| rng.gen_range(0..p)).collect();
        let solvable = m.hstack(&Matrix::from_vec(p, r, 1, b.clone())).rank() == m.rank();
        let solve_ok = match m.solve(&b).unwrap() {
            Some(x) => solvable && m.mul_vec(&x) == b,
            None => {
                inconsistent += 1;
                !solvable
            }
        };
        let x: Vec<u32> = (0..c).map(|_| rng.gen_range(0..p)).collect();
        let image_ok = m.solve(&m.mul_vec(&x)).unwrap().is_some();
        let ok = once.rref().reduced == once
            && m.rank() + k.cols() == c
            && m.mul(&k).is_zero()
            && k.rank() == k.cols()
            && solve_ok
            && image_ok;
        if !ok {
            bad.push(i);
        }
    }
    tally(bad.is_empty(), format!("1000 matrices, {inconsistent} inconsistent systems, failures at {bad:?}"))
}

/// Simples, indecomposable projectives and injectives, and random samples, all of dim <= 5.
fn small_pool(a: &Arc<Algebra>) -> Vec<Module> {
    let k = a.num_idempotents();
    let mut pool: Vec<Module> = (0..k)
        .flat_map(|i| [simple_module(a, i), indecomposable_projective(a, i), indecomposable_injective(a, i)])
        .collect();
    pool.extend(samples(a, 0x22, 40).into_iter().filter(|m| !m.is_zero()).take(6));
    pool.retain(|m| m.dim() <= 5);
    pool
}

fn c02_ext_balance() -> Tally {
    let (mut checked, mut bad) = (0, Vec::new());
    for c in corpus() {
        let pool = small_pool(&c.algebra);
        for m in &pool {
            for n in &pool {
                let (dn, dm) = (n.k_dual(), m.k_dual());
                for i in 1..=6 {
                    checked += 1;
                    let (x, y) = (ext_dim(m, n, i).unwrap(), ext_dim(&dn, &dm, i).unwrap());
                    if x != y {
                        bad.push(format!("{} i={i}: {x} vs {y}", c.name));
                    }
                }
            }
        }
    }
    tally(bad.is_empty(), format!("{checked} (pair, degree) checks, mismatches {bad:?}"))
}

fn c03_dimension_shift() -> Tally {
    let (mut pairs, mut bad) = (0, Vec::new());
    for c in corpus() {
        let a = &c.algebra;
        for i in 0..50 {
            let s = draw_sample(a, 0x33, i, 2);
            let (m, n) = (s[0].module(a).unwrap(), s[1].module(a).unwrap());
            let om = syzygy(&m, 1).unwrap();
            pairs += 1;
            for d in 1..=4 {
                let (x, y) = (ext_dim(&m, &n, d + 1).unwrap(), ext_dim(&om, &n, d).unwrap());
                if x != y {
                    bad.push(format!("{} sample {i} degree {d}: {x} vs {y}", c.name));
                }
            }
        }
    }
    tally(bad.is_empty() && pairs == 200, format!("{pairs} pairs, degrees 1..4, mismatches {bad:?}"))
}

fn exhaustive_applies(m: &Module, n: &Module) -> bool {
    exhaustive_search_applies(m.characteristic(), hom_dim(m, n).unwrap())
}

fn c04_trtr() -> Tally {
    let (mut checked, mut bad) = (0, Vec::new());
    for c in corpus() {
        let a = &c.algebra;
        for (i, m) in samples(a, 0x44, 50).iter().enumerate() {
            let tt = transpose(&transpose(m).unwrap()).unwrap();
            let tt = Module::new(a.clone(), tt.dim(), tt.actions().to_vec()).unwrap();
            let q: Vec<usize> =
                m.top_multiplicities().iter().zip(tt.top_multiplicities()).map(|(x, y)| x - y).collect();
            let sum = direct_sum(a, &[tt, Projective::from_multiplicities(a, &q).module().clone()]).unwrap().module;
            checked += 1;
            let certified = is_isomorphic(m, &sum).is_true();
            let branch = m.actions() == sum.actions() || exhaustive_applies(m, &sum);
            if !(certified && branch) {
                bad.push(format!("{} sample {i} certified={certified} exhaustive={branch}", c.name));
            }
        }
    }
    tally(bad.is_empty(), format!("{checked} modules, failures {bad:?}"))
}

fn c05_th563() -> Tally {
    let mut notes = Vec::new();
    let mut ok = true;
    let a = algebra("A2PATH");
    for m in samples(&a, 0x55, 50) {
        let id = finite(&inj_dim(&m, CUTOFF));
        let (pd, g) = (finite(&proj_dim(&m, CUTOFF)), finite(&gorenstein_pd(&m, CUTOFF)));
        ok &= id.is_some() && pd.is_some() && pd == g;
    }
    notes.push("A2PATH 50/50".to_string());
    for name in ["DUAL2", "NAK3"] {
        let a = algebra(name);
        let mut kept = 0;
        for m in samples(&a, 0x55, 50) {
            match inj_dim(&m, CUTOFF) {
                DimensionReport::Infinite { .. } => {}
                r if finite(&r).is_some() => {
                    kept += 1;
                    let (pd, g) = (finite(&proj_dim(&m, CUTOFF)), finite(&gorenstein_pd(&m, CUTOFF)));
                    ok &= pd.is_some() && pd == g;
                }
                _ => ok = false,
            }
        }
        notes.push(format!("{name} {kept} with finite id"));
    }
    tally(ok, notes.join(", "))
}

fn c06_th566() -> Tally {
    let (mut applicable, mut bad) = (0, 0);
    for c in corpus() {
        let a = &c.algebra;
        let reg = regular(a);
        for m in samples(a, 0x66, 50) {
            let Some(n) = finite(&gorenstein_pd(&m, CUTOFF)) else { continue };
            applicable += 1;
            if finite(&perp_dim(&m, std::slice::from_ref(&reg), CUTOFF)) != Some(n) {
                bad += 1;
            }
        }
    }
    tally(bad == 0 && applicable >= 150, format!("{applicable} applicable samples, {bad} disagreements"))
}

fn c07_th36() -> Tally {
    let (mut applicable, mut bad) = (0, Vec::new());
    for c in corpus() {
        let a = &c.algebra;
        let gp = oracle(OracleKind::GorensteinProjectives, a, CUTOFF);
        for (i, m) in samples(a, 0x77, 50).iter().enumerate() {
            let Some(n) = finite(&gorenstein_pd(m, CUTOFF)) else { continue };
            applicable += 1;
            let kn = is_gorenstein_projective(&syzygy(m, n).unwrap(), CUTOFF).is_true();
            let w = thm36_witness(m, &gp, CUTOFF).is_ok_and(|w| validate_witness(&w, &[]).is_true());
            if !(kn && w) {
                bad.push(format!("{} sample {i}", c.name));
            }
        }
    }
    tally(bad.is_empty() && applicable > 0, format!("{applicable} samples with finite Gpd, failures {bad:?}"))
}

fn c08_cor59() -> Tally {
    let (mut done, mut findings, mut bad) = (0, 0, Vec::new());
    let cs = corpus();
    let mut index = 0;
    while done < 30 && index < 200 {
        for c in &cs {
            if done == 30 {
                break;
            }
            let a = &c.algebra;
            let m = draw_sample(a, 0x88, index, 1)[0].module(a).unwrap();
            let Some(n) = finite(&gorenstein_pd(&m, CUTOFF)) else { continue };
            done += 1;
            let gp = oracle(OracleKind::GorensteinProjectives, a, CUTOFF);
            let ap = match cor45_approximation(&m, &gp, CUTOFF) {
                Ok(ap) => ap,
                Err(e) => {
                    bad.push(format!("{} sample {index}: {e}", c.name));
                    continue;
                }
            };
            let valid = validate_witness(&ap.sequence, &[]).is_true() && validate_witness(&ap.resolution, &[]).is_true();
            let t_gp = is_gorenstein_projective(&ap.sequence.modules[2], CUTOFF).is_true();
            match finite(&ap.pd_b) {
                Some(v) if v < n => findings += 1,
                Some(v) if v == n && valid && t_gp => {}
                _ => bad.push(format!("{} sample {index}", c.name)),
            }
        }
        index += 1;
    }
    tally(done == 30 && bad.is_empty() && findings == 0, format!("{done} samples, {findings} findings, failures {bad:?}"))
}

fn c09_selfinjective() -> Tally {
    let mut ok = true;
    let mut notes = Vec::new();
    for name in ["DUAL2", "NAK3"] {
        let a = algebra(name);
        let mut periodic = 0;
        for m in samples(&a, 0x99, 50) {
            let v = is_gorenstein_projective(&m, CUTOFF);
            let closed = match &v {
                Verdict::CertifiedTrue { evidence } => closes(evidence) || m.is_zero(),
                _ => false,
            };
            if matches!(&v, Verdict::CertifiedTrue { evidence } if format!("{evidence:?}").contains("PeriodicClosure")) {
                periodic += 1;
            }
            ok &= closed && finite(&gorenstein_pd(&m, CUTOFF)) == Some(0);
        }
        notes.push(format!("{name} 50 GP ({periodic} by periodic closure)"));
    }
    let loc3 = algebra("LOC3");
    let s = simple_module(&loc3, 0);
    let refuted = matches!(
        is_gorenstein_projective(&s, CUTOFF),
        Verdict::CertifiedFalse { evidence: Evidence::ExtNonzero { degree: 1, .. } }
    );
    notes.push(format!("LOC3 simple refuted at degree 1: {refuted}"));
    tally(ok && refuted, notes.join(", "))
}

fn c10_duality() -> Tally {
    let (mut checked, mut bad, mut finite_pd) = (0, Vec::new(), 0);
    for c in corpus() {
        let a = &c.algebra;
        for (i, m) in samples(a, 0xaa, 50).iter().enumerate() {
            checked += 1;
            let x = serde_json::to_value(inj_dim(m, CUTOFF)).unwrap();
            let y = serde_json::to_value(proj_dim(&m.k_dual(), CUTOFF)).unwrap();
            if x != y {
                bad.push(format!("{} sample {i}", c.name));
            }
            if c.name == "A2PATH" && finite(&proj_dim(m, CUTOFF)).is_some() {
                finite_pd += 1;
                let id = finite(&inj_dim(m, CUTOFF));
                if id.is_none() || id != finite(&gorenstein_id(m, CUTOFF)) {
                    bad.push(format!("A2PATH sample {i}: id != Gid"));
                }
            }
        }
    }
    tally(bad.is_empty(), format!("{checked} duality checks, {finite_pd} id = Gid checks, failures {bad:?}"))
}

fn c11_roundtrip() -> Tally {
    let (mut passed, mut unknown, mut bad) = (0, 0, Vec::new());
    for c in corpus() {
        let a = &c.algebra;
        for (i, m) in samples(a, 0xbb, 50).into_iter().enumerate() {
            match evaluate(ROUNDTRIP_ID, a, &[m], CUTOFF) {
                Outcome::Pass => passed += 1,
                Outcome::Unknown(_) => unknown += 1,
                o => bad.push(format!("{} sample {i}: {o:?}", c.name)),
            }
        }
    }
    tally(bad.is_empty(), format!("{passed} passed, {unknown} unknown, failures {bad:?}"))
}

fn c12_prop519() -> Tally {
    let mut notes = Vec::new();
    let mut ok = true;
    for name in ["A2PATH", "LOC3"] {
        let a = algebra(name);
        let (mut pass, mut na, mut unknown) = (0, 0, 0);
        for m in samples(&a, 0xcc, 50) {
            match evaluate("PROP-5.19-FWD", &a, &[m], CUTOFF) {
                Outcome::Pass => pass += 1,
                Outcome::NotApplicable => na += 1,
                Outcome::Unknown(_) => unknown += 1,
                Outcome::Fail(_) => ok = false,
            }
        }
        notes.push(format!("{name}: {pass} projective, {na} outside hypothesis, {unknown} unknown"));
    }
    tally(ok, notes.join("; "))
}

fn c13_scan() -> Tally {
    let mut notes = Vec::new();
    let mut ok = true;
    for c in corpus() {
        let r = scan("CONJ-5.18-2", c.name, &c.algebra, &CheckConfig { samples: 50, cutoff: CUTOFF, seed: 0 }).unwrap();
        let consistent = matches!(r.verdict, ScanVerdict::Consistent { .. });
        ok &= consistent;
        notes.push(format!("{} {}", c.name, if consistent { "consistent" } else { "NOT consistent" }));
    }
    let low = scan("CONJ-5.18-2", "LOC3", &algebra("LOC3"), &CheckConfig { samples: 50, cutoff: 0, seed: 0 }).unwrap();
    let undecided = matches!(low.verdict, ScanVerdict::Undecided { .. });
    notes.push(format!("LOC3 at cutoff 0 undecided: {undecided}"));
    tally(ok && undecided, notes.join(", "))
}

fn c14_cli_determinism() -> Tally {
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_homcalc"))
            .args(["verify", "--suite", "all", "--samples", "20", "--seed", "14", "--report", "json"])
            .output()
            .unwrap()
    };
    let (a, b) = (run(), run());
    let ok = a.status.success() && a.stdout == b.stdout && !a.stdout.is_empty();
    tally(ok, format!("{} bytes, exit {:?}", a.stdout.len(), a.status.code()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 14] = [
        ("exact linear algebra", c01_linear_algebra),
        ("Ext balance", c02_ext_balance),
        ("dimension shifting", c03_dimension_shift),
        ("transpose involution", c04_trtr),
        ("TH-5.6-3 pd = Gpd under finite id", c05_th563),
        ("TH-5.6-6 Gpd = perp dim", c06_th566),
        ("TH-3.6 syzygy in GP", c07_th36),
        ("COR-5.9 approximation", c08_cor59),
        ("self-injective classification", c09_selfinjective),
        ("duality consistency", c10_duality),
        ("construction round trip", c11_roundtrip),
        ("PROP-5.19 forward", c12_prop519),
        ("CONJ-5.18-2 scan", c13_scan),
        ("CLI determinism", c14_cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let t = f();
        let took = start.elapsed();
        let ok = t.ok && took < LIMIT;
        failed += usize::from(!ok);
        println!("{} [{:2}] {name}: {} ({:.1}s)", if ok { "PASS" } else { "FAIL" }, i + 1, t.detail, took.as_secs_f64());
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
