//! End-to-end checks, one line per criterion.  Run with
//! `cargo test --test acceptance`.

use gentle_core::catalog;
use gentle_core::cluster::{bangle, cc_prime, order_coideals, signed_adjacency, verify_bangle_equals_generic, yhat};
use gentle_core::ffgrass::factor_euler_characteristics;
use gentle_core::homological::{
    e_invariant, hom_dim, is_isomorphic, is_projective, standard_homs, tau_dtr, tau_string, DecoratedModule, WordModule,
};
use gentle_core::laurent::LaurentPoly;
use gentle_core::quiver::GentleAlgebra;
use gentle_core::rep::{string_module, Representation};
use gentle_core::schemes::{
    canonical_decomposition, ceh_values, component_dim, components, dim_gl, dim_vectors, is_generically_reduced,
    is_smooth_point, is_tau_reduced, local_dim, tangent_dim,
};
use gentle_core::surface::{build_qt, catalog as surfaces, Curve, LaminationSampler, Surface};
use gentle_core::words::{enumerate_bands, enumerate_strings};
use gentle_core::Q;
use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use std::collections::BTreeMap;
use std::time::{Duration, Instant};

struct Report {
    ok: bool,
    lines: Vec<String>,
}

impl Report {
    fn new() -> Report {
        Report { ok: true, lines: Vec::new() }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) {
        let what = what.into();
        self.lines.push(format!("{} {what}", if cond { "ok  " } else { "FAIL" }));
        self.ok &= cond;
    }
}

fn corpus(path: &str) -> Value {
    let p = format!("{}/../../corpus/{path}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(&p).unwrap_or_else(|e| panic!("{p}: {e}"))).unwrap()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let x = f();
    (x, t.elapsed())
}

const SECOND: Duration = Duration::from_secs(1);

// ---------------------------------------------------------------------------

fn criterion_1() -> Report {
    let mut r = Report::new();
    let alg = catalog::loop_square_zero();
    let ((zs, dim, singular), t) = timed(|| {
        let zs = components(&alg, &[1]).unwrap();
        let dim = component_dim(&alg, &zs[0]).unwrap();
        let zero = Representation::zero(&alg, vec![1]);
        (zs, dim, !is_smooth_point(&alg, &zero))
    });
    r.check(zs.len() == 1 && dim == 0 && singular && t < SECOND, format!("loop d=(1): {} component, dim {dim}, singular {singular} ({t:?})", zs.len()));
    r.check(!is_generically_reduced(&alg, &zs[0]), "loop d=(1): not generically reduced");
    let (z2, t) = timed(|| components(&alg, &[2]).unwrap());
    r.check(z2.iter().all(|z| is_generically_reduced(&alg, z)) && t < SECOND, format!("loop d=(2): generically reduced ({t:?})"));

    let alg = catalog::a3_zero_relation();
    let (n, t) = timed(|| components(&alg, &[1, 1, 1]).unwrap().len());
    r.check(n == 2 && t < SECOND, format!("A3 with ab=0, d=(1,1,1): {n} components ({t:?})"));
    let (n, t) = timed(|| components(&alg, &[1, 2, 1]).unwrap().len());
    r.check(n == 1 && t < SECOND, format!("A3 with ab=0, d=(1,2,1): {n} component ({t:?})"));

    let alg = catalog::loops_and_two_cycle();
    let d = [2, 2, 2, 2];
    let ((zs, info), t) = timed(|| {
        let zs = components(&alg, &d).unwrap();
        let info: Vec<(usize, bool)> = zs
            .iter()
            .map(|z| {
                let dec = canonical_decomposition(&alg, z, 8, 0).unwrap();
                (component_dim(&alg, z).unwrap(), dec.strings.is_empty() && !dec.bands.is_empty())
            })
            .collect();
        (zs, info)
    });
    let all_good = info.iter().all(|&(dim, band)| dim == dim_gl(&d) && band);
    r.check(
        zs.len() == 3 && all_good && t < SECOND,
        format!("loops and 2-cycle, d=(2,2,2,2): {} components, (dim, band only) {info:?}, dim GL_d {} ({t:?})", zs.len(), dim_gl(&d)),
    );
    r
}

fn criterion_2() -> Report {
    let mut r = Report::new();
    let golden = corpus("three_holed_sphere/golden.json");
    let start = Instant::now();
    let s = build_qt(&surfaces::three_holed_sphere()).unwrap();
    let b = signed_adjacency(&s.alg);
    let reference: Vec<Vec<i64>> = serde_json::from_value(golden["reference_matrix"].clone()).unwrap();
    let mismatches: Vec<String> = (0..6)
        .flat_map(|i| (0..6).map(move |j| (i, j)))
        .filter(|&(i, j)| b[i][j] != reference[i][j])
        .map(|(i, j)| format!("({},{}): computed {} vs reference {}", i + 1, j + 1, b[i][j], reference[i][j]))
        .collect();
    r.check(mismatches.is_empty(), format!("B_T identical to the reference matrix; mismatches: {mismatches:?}"));
    let frozen: Vec<Vec<i64>> = serde_json::from_value(golden["signed_adjacency"].clone()).unwrap();
    r.check(b == frozen, "B_T equals the frozen skew-symmetric matrix");

    let sigma = s.loop_curve(&[3, 6, 1, 5, 4, 6, 2], None).unwrap();
    let shear = s.shear(&sigma);
    r.check(shear == vec![0, -1, 1, -1, 1, 0], format!("shear(sigma) = {shear:?}"));

    let x = bangle(&s, &sigma).unwrap();
    let xs = LaurentPoly::monomial(shear.clone(), vec![0; 6], BigInt::from(1));
    let (y2, y4, y6) = (yhat(&b, 2), yhat(&b, 4), yhat(&b, 6));
    for (name, t) in [("y2", xs.mul(&y2)), ("y2 y4", xs.mul(&y2).mul(&y4)), ("y2 y4 y6", xs.mul(&y2).mul(&y4).mul(&y6))] {
        let ((ky, kx), _) = t.terms().next().unwrap();
        let c = x.coefficient(kx, ky);
        r.check(c == BigInt::from(1), format!("coefficient of x^s {name}-hat in bangle(sigma) is {c}"));
    }
    let m = s.curve_module_rep(&sigma, &Q::from_int(5)).unwrap();
    let cc = cc_prime(&s.alg, &DecoratedModule::plain(m.clone()), 7, 0).unwrap();
    r.check(cc == x, format!("bangle(sigma) = CC'(M_sigma) ({} terms)", x.num_terms()));
    let frozen_terms = golden["bangle_terms"].as_array().unwrap();
    let same = frozen_terms.len() == x.num_terms()
        && frozen_terms.iter().all(|t| {
            let xv: Vec<i64> = serde_json::from_value(t["x"].clone()).unwrap();
            let yv: Vec<u32> = serde_json::from_value(t["y"].clone()).unwrap();
            x.coefficient(&xv, &yv).to_string() == t["coeff"].as_str().unwrap()
        });
    r.check(same, "bangle(sigma) equals the golden term list");

    // every subset of the 7 vertices, filtered by the arrows
    let q = s.coefficient_quiver(&sigma).unwrap();
    let brute = (0u32..1 << q.labels.len())
        .filter(|mask| q.arrows.iter().all(|a| !((mask >> a.to) & 1 == 1 && (mask >> a.from) & 1 == 0)))
        .count();
    let recorded = golden["coideal_count"].as_u64().unwrap() as usize;
    let documented = recorded == 27 || golden["coideal_count_note"].as_str().map_or(false, |n| n.contains("27"));
    r.check(
        brute == recorded && order_coideals(&q).len() == brute && documented,
        format!("coideal count {brute} (brute force over 2^7), recorded {recorded}; difference from 27 documented: {documented}"),
    );
    // lambda = 1 stays nonzero modulo every prime used by the point counts
    let m1 = s.curve_module_rep(&sigma, &Q::one()).unwrap();
    let chi = factor_euler_characteristics(&s.alg, &m1).unwrap();
    r.check(chi.values().sum::<i64>() as usize == brute, format!("finite-field Grassmannians of M_sigma: total {}", chi.values().sum::<i64>()));
    let ff = from_euler_characteristics(&s.alg, &m1, &chi);
    r.check(ff == x, format!("bangle(sigma) = polynomial from finite-field counts, term by term: {:?}", ff.first_difference(&x)));
    let t = start.elapsed();
    r.check(t < SECOND, format!("time {t:?}"));
    r
}

/// x^g times the sum over factor dimension vectors e of chi_e yhat^e.
fn from_euler_characteristics(alg: &GentleAlgebra, m: &Representation, chi: &BTreeMap<Vec<usize>, i64>) -> LaurentPoly {
    let n = alg.n();
    let b = signed_adjacency(alg);
    let g = gentle_core::homological::g_vector(alg, &DecoratedModule::plain(m.clone()));
    let mut out = LaurentPoly::zero(n);
    for (e, c) in chi {
        let mut t = LaurentPoly::monomial(g.clone(), vec![0; n], BigInt::from(*c));
        for (j, &k) in e.iter().enumerate() {
            t = t.mul(&yhat(&b, j + 1).pow(k));
        }
        out = out.add(&t);
    }
    out
}

fn modules_of(alg: &GentleAlgebra, max_len: usize) -> Vec<WordModule> {
    let mut out: Vec<WordModule> = enumerate_strings(alg, max_len).into_iter().map(WordModule::Str).collect();
    for b in enumerate_bands(alg, max_len) {
        out.push(WordModule::Band(b.clone(), Q::from_int(2)));
        out.push(WordModule::Band(b, Q::from_int(-3)));
    }
    out
}

fn oracle_algebras() -> Vec<(&'static str, GentleAlgebra)> {
    vec![
        ("torus", catalog::torus()),
        ("A3 with ab=0", catalog::a3_zero_relation()),
        ("three-holed sphere", catalog::three_holed_sphere()),
    ]
}

fn criterion_3() -> Report {
    let mut r = Report::new();
    // a. standard homomorphisms against Hom by linear algebra
    let mut pairs = 0usize;
    let mut bad = Vec::new();
    for (name, alg) in oracle_algebras() {
        let mods = modules_of(&alg, 8);
        let reps: Vec<Representation> = mods.iter().map(|m| m.module(&alg)).collect();
        // all pairs on small algebras; a fixed stride through the rest
        let stride = (mods.len() * mods.len() / 6000).max(1);
        let mut k = 0usize;
        for i in 0..mods.len() {
            for j in 0..mods.len() {
                k += 1;
                if k % stride != 0 {
                    continue;
                }
                pairs += 1;
                let n = standard_homs(&alg, &mods[i], &mods[j]).len();
                let h = hom_dim(&alg, &reps[i], &reps[j]);
                if n != h && bad.len() < 5 {
                    bad.push(format!("{name}: {:?} -> {:?}: {n} vs {h}", mods[i].word(), mods[j].word()));
                }
            }
        }
    }
    r.check(pairs >= 10_000 && bad.is_empty(), format!("3a: standard homs = Hom on {pairs} pairs; mismatches {bad:?}"));

    // b. combinatorial tau against D Tr
    let mut tested = 0;
    let mut bad = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for (name, alg) in oracle_algebras() {
        for c in enumerate_strings(&alg, 8) {
            let m = string_module(&alg, &c);
            if is_projective(&alg, &m) {
                continue;
            }
            tested += 1;
            let ok = match tau_string(&alg, &c) {
                Some(t) => is_isomorphic(&alg, &string_module(&alg, &t), &tau_dtr(&alg, &m), &mut rng),
                None => false,
            };
            if !ok && bad.len() < 5 {
                bad.push(format!("{name}: {}", c.display(&alg)));
            }
        }
    }
    r.check(bad.is_empty(), format!("3b: tau_string = D Tr on {tested} non-projective strings; mismatches {bad:?}"));

    // c. smoothness criterion against tangent dimensions
    let mut tested = 0;
    let mut bad = Vec::new();
    let algs = vec![
        ("loop", catalog::loop_square_zero()),
        ("A3 with ab=0", catalog::a3_zero_relation()),
        ("loops and 2-cycle", catalog::loops_and_two_cycle()),
        ("three-holed sphere", catalog::three_holed_sphere()),
    ];
    for (name, alg) in algs {
        let n = alg.n();
        let small: Vec<Representation> = modules_of(&alg, 8)
            .iter()
            .map(|w| w.module(&alg))
            .filter(|m| m.dims.iter().all(|&d| d <= 3))
            .collect();
        let mut local: BTreeMap<(Vec<usize>, Vec<usize>), usize> = BTreeMap::new();
        let mut test = |m: &Representation| {
            let key = (m.dims.clone(), m.rank_function());
            let ld = *local.entry(key.clone()).or_insert_with(|| local_dim(&alg, &key.0, &key.1).unwrap());
            let oracle = tangent_dim(&alg, m) == ld;
            tested += 1;
            if oracle != is_smooth_point(&alg, m) && bad.len() < 5 {
                bad.push(format!("{name}: d {:?} r {:?}", key.0, key.1));
            }
        };
        // sums of at most three indecomposables with every entry at most 3
        let fits = |d: &[usize]| d.iter().all(|&x| x <= 3);
        for i in 0..small.len() {
            test(&small[i]);
            for j in i..small.len() {
                let d2: Vec<usize> = (0..n).map(|v| small[i].dims[v] + small[j].dims[v]).collect();
                if !fits(&d2) {
                    continue;
                }
                let m2 = small[i].direct_sum(&small[j]);
                test(&m2);
                for k in j..small.len() {
                    let d3: Vec<usize> = (0..n).map(|v| d2[v] + small[k].dims[v]).collect();
                    if fits(&d3) {
                        test(&m2.direct_sum(&small[k]));
                    }
                }
            }
        }
    }
    r.check(bad.is_empty(), format!("3c: smoothness criterion = tangent oracle on {tested} modules; mismatches {bad:?}"));

    // d. the two E-invariant formulas
    let mut tested = 0;
    let mut bad = Vec::new();
    for (name, alg) in oracle_algebras() {
        let mods: Vec<DecoratedModule> = modules_of(&alg, 4)
            .iter()
            .map(|w| DecoratedModule::plain(w.module(&alg)))
            .chain((1..=alg.n()).map(|j| DecoratedModule::negative_simple(&alg, j)))
            .collect();
        let step = (mods.len() / 40).max(1);
        for m in mods.iter().step_by(step) {
            for n in &mods {
                tested += 1;
                if let Err(e) = e_invariant(&alg, m, n) {
                    if bad.len() < 5 {
                        bad.push(format!("{name}: {e}"));
                    }
                }
            }
        }
    }
    r.check(bad.is_empty(), format!("3d: both E-invariant formulas agree on {tested} pairs; mismatches {bad:?}"));
    r
}

fn criterion_4() -> Report {
    let mut r = Report::new();
    let alg = catalog::three_holed_sphere();
    let mut multi = Vec::new();
    let mut disagree = Vec::new();
    let mut bands = 0;
    let mut bad_bands = Vec::new();
    let mut total = 0;
    for d in dim_vectors(alg.n(), 2) {
        let zs = components(&alg, &d).unwrap();
        let mut reduced = 0;
        for z in &zs {
            total += 1;
            let tr = is_tau_reduced(&alg, z).unwrap();
            let ceh = ceh_values(&alg, z, 0).unwrap();
            if tr {
                reduced += 1;
            }
            if tr != (ceh.c == ceh.e && ceh.e == ceh.h) && disagree.len() < 5 {
                disagree.push(format!("d {d:?} r {:?}: block criterion {tr}, ceh {ceh:?}", z.r));
            }
            // generic module a single band: no string summands, and the
            // explicit decomposition finds exactly one band
            if d.iter().sum::<usize>() == z.r.iter().sum::<usize>() {
                let dec = canonical_decomposition(&alg, z, d.iter().sum(), 0).unwrap();
                if dec.strings.is_empty() && dec.bands.len() == 1 {
                    bands += 1;
                    if (ceh.c, ceh.e, ceh.h) != (1, 1, 1) {
                        bad_bands.push(format!("d {d:?}: {ceh:?}"));
                    }
                }
            }
        }
        if reduced > 1 {
            multi.push(d.clone());
        }
    }
    r.check(multi.is_empty(), format!("at most one tau-reduced component per d over {total} components; violations {multi:?}"));
    r.check(disagree.is_empty(), format!("block criterion = (c = e = h); disagreements {disagree:?}"));
    r.check(bands > 0 && bad_bands.is_empty(), format!("{bands} band components, all ceh (1,1,1); exceptions {bad_bands:?}"));
    r
}

fn criterion_5() -> Report {
    let mut r = Report::new();
    let s = build_qt(&surfaces::three_holed_sphere()).unwrap();
    let mut sampler = LaminationSampler::new(&s, 8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let mut seen = std::collections::BTreeSet::new();
    let mut tested = 0;
    let mut bad = Vec::new();
    let mut tries = 0;
    while tested < 60 && tries < 1000 {
        tries += 1;
        let l = sampler.sample(&mut rng, 4, 2).unwrap();
        if l.entries.iter().any(|(_, m)| *m > 2) || !seen.insert(l.clone()) {
            continue;
        }
        tested += 1;
        let shear = s.shear_lamination(&l);
        let outcome = s.eta(&l).and_then(|z| {
            let g = s.g_of_component(&z, 0)?;
            let v = verify_bangle_equals_generic(&s, &l, 0)?;
            Ok((g, v))
        });
        let names: Vec<String> = l.entries.iter().map(|(c, m)| format!("{}x{m}", s.describe(c))).collect();
        match outcome {
            Ok((g, v)) => {
                if g != shear || !v.equal {
                    bad.push(format!("{names:?}: g {g:?} shear {shear:?} verify {:?}", v.difference));
                }
            }
            Err(e) => bad.push(format!("{names:?}: {e}")),
        }
    }
    // every loop that is compatible with itself, once and twice
    let mut fixed = 0;
    for c in sampler.pool.iter().filter(|c| matches!(c, Curve::Loop { .. })) {
        for m in 1..=2 {
            let l = s.lamination(vec![(c.clone(), m)]).unwrap();
            fixed += 1;
            let ok = s.eta(&l).and_then(|z| Ok(s.g_of_component(&z, 0)? == s.shear_lamination(&l) && verify_bangle_equals_generic(&s, &l, 0)?.equal));
            if !matches!(ok, Ok(true)) {
                bad.push(format!("{} x{m}: {ok:?}", s.describe(c)));
            }
        }
    }
    r.check(fixed > 0 && bad.is_empty(), format!("{fixed} laminations of a single loop; failures {bad:?}"));
    let loops = seen.iter().filter(|l| l.entries.iter().any(|(c, _)| matches!(c, Curve::Loop { .. }))).count();
    r.check(
        tested >= 50 && bad.is_empty(),
        format!("{tested} laminations ({loops} with loops): g(eta(L)) = shear(L) and bangle = generic CC'; failures {bad:?}"),
    );
    r
}

fn criterion_6() -> Report {
    let mut r = Report::new();
    let golden = corpus("annulus/golden.json");
    let s: Surface = build_qt(&surfaces::annulus()).unwrap();
    let l = s.loop_curve(&[1, 2], None).unwrap();
    let x = bangle(&s, &l).unwrap().at_y_one();
    // (x1^2 + x2^2 + 1) / (x1 x2)
    let one = |e: Vec<i64>| LaurentPoly::monomial(e, vec![0, 0], BigInt::from(1));
    let expected = one(vec![1, -1]).add(&one(vec![-1, 1])).add(&one(vec![-1, -1]));
    r.check(x == expected && x.num_terms() == 3, format!("primitive loop at y=1: {x}"));

    // the same polynomial from point counts over F_p
    let m = s.curve_module_rep(&l, &Q::one()).unwrap();
    let chi = factor_euler_characteristics(&s.alg, &m).unwrap();
    let ff = from_euler_characteristics(&s.alg, &m, &chi).at_y_one();
    r.check(ff == x, format!("finite-field oracle: {ff}"));
    let frozen: Vec<(Vec<usize>, i64)> = golden["factor_euler_characteristics"]
        .as_array()
        .unwrap()
        .iter()
        .map(|t| (serde_json::from_value(t["e"].clone()).unwrap(), t["chi"].as_i64().unwrap()))
        .collect();
    let got: Vec<(Vec<usize>, i64)> = chi.into_iter().collect();
    r.check(got == frozen, format!("Euler characteristics {got:?}"));
    r
}

fn main() {
    let criteria: Vec<(&str, fn() -> Report)> = vec![
        ("1 component census", criterion_1),
        ("2 three-holed sphere golden example", criterion_2),
        ("3 oracle suites", criterion_3),
        ("4 tau-reduced components", criterion_4),
        ("5 lamination correspondence", criterion_5),
        ("6 annulus", criterion_6),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failed = Vec::new();
    for (name, f) in criteria {
        if !filter.is_empty() && !filter.iter().any(|x| name.starts_with(x.as_str())) {
            continue;
        }
        let (report, t) = timed(f);
        for l in &report.lines {
            println!("    {l}");
        }
        println!("criterion {name}: {} ({t:.2?})", if report.ok { "PASS" } else { "FAIL" });
        if !report.ok {
            failed.push(name);
        }
    }
    if !failed.is_empty() {
        println!("failed: {failed:?}");
        std::process::exit(1);
    }
}
