//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::HashSet;
use std::time::Instant;

use common::{ex1, ex2, ex3, random_lattice, random_matrix, random_signal};
use gabor_core::domains::{nested_domains, verify_packing, verify_tiling, CellComplex};
use gabor_core::frames::{
    bump_signals, density_check, frame_check, realize_fiber_field, synthesize_parseval, FiberField, SynthesisConfig,
};
use gabor_core::group::{build_context, GroupContext, GroupElement};
use gabor_core::induced::{
    commutant_dimension, intertwiner_dimension, max_abs_diff, rep_matrix, unitarity_defect, RepPoint,
};
use gabor_core::ratlin::{frac, int, lattice_intersect, lattice_sum, rat, rat_to_f64, Lattice, Rat, RatMatrix};
use gabor_core::signal::SignalFile;
use gabor_core::zak::{check_intertwining, zak, zak_inverse, zak_point};
use gabor_core::Error;
use num_complex::Complex64;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ALG_TOL: f64 = 1e-12;
const ZAK_TOL: f64 = 1e-10;
const FRAME_LO: f64 = 0.999;
const FRAME_HI: f64 = 1.001;
const VIOLATION_GAP: f64 = 0.05;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn lat(rows: Vec<Vec<Rat>>) -> Lattice {
    Lattice::new(&RatMatrix::from_rows(rows).unwrap()).unwrap()
}

fn ac1() -> Outcome {
    let c1 = build_context(&ex1()).unwrap();
    ensure(c1.b_star() == &RatMatrix::from_rows(vec![vec![rat(3, 2)]]).unwrap(), "Ex1 B*")?;
    ensure(c1.a() == &lat(vec![vec![int(3)]]), "Ex1 A")?;
    ensure(c1.a_star() == &lat(vec![vec![rat(1, 3)]]), "Ex1 A*")?;
    ensure(c1.m() == 3 && c1.ell() == 2 && c1.mu_e() == &rat(1, 6), "Ex1 m, ell, muE")?;
    let c2 = build_context(&ex2()).unwrap();
    ensure(c2.a() == &lat(vec![vec![int(3), int(0)], vec![int(0), int(2)]]), "Ex2 A")?;
    ensure(c2.m() == 6, "Ex2 m")?;
    let c3 = build_context(&ex3()).unwrap();
    let published_bstar = RatMatrix::from_rows(vec![
        vec![int(1), int(1), int(0)],
        vec![int(0), int(5), int(1)],
        vec![int(0), int(0), rat(1, 5)],
    ])
    .unwrap();
    ensure(c3.b_star() == &published_bstar, "Ex3 B*")?;
    let published_a = lat(vec![vec![int(1), int(1), int(0)], vec![int(0), int(5), int(5)], vec![int(0), int(0), int(1)]]);
    ensure(c3.m() == 5, "Ex3 m")?;
    ensure(c3.a() == &published_a, "Ex3 A canonical form")?;
    Ok("Ex1, Ex2, Ex3 constants exact".into())
}

fn ac2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut done, mut rejected) = (0, 0);
    while done < 50 {
        let d = rng.gen_range(1..=3);
        let a = random_lattice(&mut rng, d, 4, 6);
        let b = random_lattice(&mut rng, d, 4, 6);
        let (l1, l2) = if a.covolume() <= b.covolume() { (a, b) } else { (b, a) };
        let order = lattice_intersect(&l1, &l2).unwrap().covolume() / lattice_sum(&l1, &l2).unwrap().covolume();
        if order > int(1 << 16) {
            rejected += 1;
            continue;
        }
        let nd = nested_domains(&l1, &l2).map_err(|e| format!("nested_domains failed: {e}"))?;
        let tag = format!("pair {done} (d={d})");
        ensure(verify_tiling(&nd.sigma1, &l1).unwrap(), format!("{tag}: Σ₁ does not tile by L1"))?;
        ensure(verify_packing(&nd.sigma1, &l2).unwrap(), format!("{tag}: Σ₁ does not pack by L2"))?;
        ensure(verify_tiling(&nd.sigma2, &l2).unwrap(), format!("{tag}: Σ₂ does not tile by L2"))?;
        ensure(nd.sigma1.is_subcomplex_of(&nd.sigma2), format!("{tag}: Σ₁ ⊄ Σ₂"))?;
        ensure(nd.sigma1.measure() == l1.covolume(), format!("{tag}: |Σ₁|"))?;
        ensure(nd.sigma2.measure() == l2.covolume(), format!("{tag}: |Σ₂|"))?;
        done += 1;
    }
    Ok(format!("50 pairs verified ({rejected} oversized pairs resampled)"))
}

fn ac3() -> Outcome {
    let c2 = build_context(&ex2()).unwrap();
    let s1 = CellComplex {
        fine: RatMatrix::diagonal(&[rat(1, 2), rat(1, 3)]),
        offsets: vec![
            vec![int(0), int(0)],
            vec![rat(1, 2), int(0)],
            vec![int(0), rat(1, 3)],
            vec![rat(1, 2), rat(1, 3)],
            vec![int(1), rat(2, 3)],
            vec![rat(-1, 2), rat(-1, 3)],
        ],
    };
    ensure(verify_tiling(&s1, &Lattice::integer(2)).unwrap(), "Ex2 S₁ vs Z²")?;
    ensure(verify_tiling(&s1, c2.b_star_lattice()).unwrap(), "Ex2 S₁ vs B*Z²")?;
    let c3 = build_context(&ex3()).unwrap();
    let m = RatMatrix::from_rows(vec![
        vec![int(0), int(0), int(1)],
        vec![int(0), int(1), int(5)],
        vec![int(1), rat(1, 5), int(0)],
    ])
    .unwrap();
    let cell = CellComplex { fine: m, offsets: vec![vec![int(0); 3]] };
    ensure(verify_tiling(&cell, &Lattice::integer(3)).unwrap(), "Ex3 M[0,1)³ vs Z³")?;
    ensure(verify_tiling(&cell, c3.b_star_lattice()).unwrap(), "Ex3 M[0,1)³ vs B*Z³")?;
    Ok("Ex2 S₁ and Ex3 M[0,1)³ tile both lattices".into())
}

fn random_element<R: Rng>(rng: &mut R, ctx: &GroupContext) -> GroupElement {
    let d = ctx.dim();
    GroupElement::new(
        rng.gen_range(0..ctx.m()),
        (0..d).map(|_| rng.gen_range(-5..=5)).collect(),
        (0..d).map(|_| rng.gen_range(-5..=5)).collect(),
    )
}

fn ac4() -> Outcome {
    let ctx = build_context(&ex1()).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let (mut unit, mut hom) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let p = RepPoint::new(&ctx, &[rng.gen_range(0.0..1.0)], &[rng.gen_range(0.0..1.0 / 3.0)]).unwrap();
        let g1 = random_element(&mut rng, &ctx);
        let g2 = random_element(&mut rng, &ctx);
        let r1 = rep_matrix(&ctx, &p, &g1);
        let r2 = rep_matrix(&ctx, &p, &g2);
        unit = unit.max(unitarity_defect(&r1));
        hom = hom.max(max_abs_diff(&rep_matrix(&ctx, &p, &ctx.multiply(&g1, &g2)), &(&r1 * &r2)));
        let c1 = commutant_dimension(&ctx, &p, 1).map_err(|e| e.to_string())?;
        let c0 = commutant_dimension(&ctx, &p, 0).map_err(|e| e.to_string())?;
        ensure(c1 == 1 && c0 == 3, format!("commutant dims {c1}, {c0} at {p:?}"))?;
    }
    ensure(unit <= ALG_TOL, format!("unitarity defect {unit:.2e}"))?;
    ensure(hom <= ALG_TOL, format!("homomorphism residual {hom:.2e}"))?;
    for _ in 0..20 {
        let (x, w) = (rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0 / 3.0));
        let p1 = RepPoint::new(&ctx, &[x], &[w]).unwrap();
        let on = RepPoint::new(&ctx, &[x + 0.5], &[w]).unwrap();
        let off = loop {
            let x2: f64 = rng.gen_range(0.0..1.0);
            let gap = ((x2 - x) * 2.0).rem_euclid(1.0);
            if gap > 0.02 && gap < 0.98 {
                break RepPoint::new(&ctx, &[x2], &[rng.gen_range(0.0..1.0 / 3.0)]).unwrap();
            }
        };
        let d_on = intertwiner_dimension(&ctx, &p1, &on).map_err(|e| e.to_string())?;
        let d_off = intertwiner_dimension(&ctx, &p1, &off).map_err(|e| e.to_string())?;
        ensure(d_on == 1 && d_off == 0, format!("intertwiner dims {d_on}, {d_off} at x = {x}"))?;
    }
    Ok(format!("unitarity {unit:.1e}, homomorphism {hom:.1e}, commutant 1/3, intertwiner 1/0"))
}

fn zak_suite(ctx: &GroupContext, n: u64, span: i64, seed: u64) -> Result<f64, String> {
    let d = ctx.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    let astar = ctx.a_star().basis().columns();
    for _ in 0..20 {
        let f = random_signal(&mut rng, d, n, -span * n as i64, span * n as i64);
        let z = zak(ctx, &f).map_err(|e| e.to_string())?;
        let iso = (z.norm_sq() - f.norm_sq()).abs() / f.norm_sq();
        worst = worst.max(iso);
        let back = zak_inverse(ctx, &z).map_err(|e| e.to_string())?;
        worst = worst.max(back.distance(&f).map_err(|e| e.to_string())?);
        for g in GroupElement::generators(d) {
            worst = worst.max(check_intertwining(ctx, &f, &g).map_err(|e| e.to_string())?);
        }
        for _ in 0..10 {
            let x: Vec<i64> = (0..d).map(|_| rng.gen_range(0..n as i64)).collect();
            let w: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let j = &ctx.coset_reps()[rng.gen_range(0..ctx.index())];
            let base = zak_point(ctx, &f, &x, &w, j).unwrap();
            // w-periodicity along each A* generator.
            for col in &astar {
                let w2: Vec<f64> = w.iter().zip(col).map(|(a, b)| a + rat_to_f64(b)).collect();
                worst = worst.max((zak_point(ctx, &f, &x, &w2, j).unwrap() - base).norm());
            }
            // x-quasi-periodicity for m' = Ak' + j'.
            let kp: Vec<i64> = (0..d).map(|_| rng.gen_range(-2..=2)).collect();
            let jp = &ctx.coset_reps()[rng.gen_range(0..ctx.index())];
            let akp = ctx.a_hnf().mul_vec(&kp);
            let shifted: Vec<i64> = (0..d).map(|i| x[i] + n as i64 * (akp[i] + jp[i])).collect();
            let lhs = zak_point(ctx, &f, &shifted, &w, j).unwrap();
            let jj: Vec<i64> = j.iter().zip(jp).map(|(a, b)| a + b).collect();
            let phase: f64 = w.iter().zip(&akp).map(|(a, &b)| a * b as f64).sum();
            let rhs = Complex64::from_polar(1.0, -2.0 * std::f64::consts::PI * phase) * zak_point(ctx, &f, &x, &w, &jj).unwrap();
            worst = worst.max((lhs - rhs).norm());
        }
    }
    Ok(worst)
}

fn ac5() -> Outcome {
    let c1 = build_context(&ex1()).unwrap();
    let w1 = zak_suite(&c1, 96, 4, 51)?;
    let c2 = build_context(&ex2()).unwrap();
    let w2 = zak_suite(&c2, 24, 2, 52)?;
    ensure(w1 <= ZAK_TOL && w2 <= ZAK_TOL, format!("worst residual d=1 {w1:.2e}, d=2 {w2:.2e}"))?;
    Ok(format!("worst residual d=1 {w1:.1e}, d=2 {w2:.1e}"))
}

/// |(B*Zᵈ + Zᵈ)/Zᵈ| by enumerating B*n mod 1 for n in [0, S)ᵈ.
fn brute_force_ell(bstar: &RatMatrix, s: i64) -> usize {
    let d = bstar.dim();
    let mut seen = HashSet::new();
    let total = (s as usize).pow(d as u32);
    for idx in 0..total {
        let mut rem = idx;
        let n: Vec<Rat> = (0..d)
            .map(|_| {
                let v = (rem % s as usize) as i64;
                rem /= s as usize;
                int(v)
            })
            .collect();
        let p: Vec<String> = bstar.mul_vec(&n).unwrap().iter().map(|v| frac(v).to_string()).collect();
        seen.insert(p);
    }
    seen.len()
}

fn ac6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut done, mut small) = (0, 0);
    while done < 30 {
        let d = rng.gen_range(1..=2);
        let b = random_matrix(&mut rng, d, 6, 6);
        let ctx = build_context(&b).unwrap();
        let s: i64 = ctx.b_star_lattice().scale().to_string().parse().unwrap();
        if (s as u128).pow(d as u32) > 1_000_000 {
            continue;
        }
        let bf = brute_force_ell(ctx.b_star(), s);
        ensure(bf as u64 == ctx.ell(), format!("B = {:?}: ell {} vs brute force {bf}", b.rows(), ctx.ell()))?;
        let v = density_check(&ctx);
        let small_det = ctx.det_b().abs() <= Rat::one();
        ensure(small_det == (ctx.ell() <= ctx.det_a()) && v.criteria_agree, format!("density mismatch for {:?}", b.rows()))?;
        small += usize::from(small_det);
        done += 1;
    }
    Ok(format!("30 matrices, {small} with |det B| ≤ 1; ell and density criteria agree"))
}

fn flagship(threads: usize) -> Result<(String, Vec<f64>, f64), String> {
    let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
    pool.install(|| {
        let ctx = build_context(&ex1()).unwrap();
        let g = synthesize_parseval(&ctx, &FiberField::Standard, &SynthesisConfig::new(&ctx, 96)).map_err(|e| e.to_string())?;
        let tests = bump_signals(1, 96, 10, 7, (-4.0, 4.0), (1.0, 4.0)).unwrap();
        let rep = frame_check(&ctx, &g, &tests, 64, 64).map_err(|e| e.to_string())?;
        let e0 = {
            let mut v = vec![Complex64::zero(); 3];
            v[0] = Complex64::one();
            v
        };
        let bad = realize_fiber_field(&ctx, &FiberField::Constant(vec![e0.clone(), e0]), &SynthesisConfig::new(&ctx, 96))
            .map_err(|e| e.to_string())?;
        let bad_rep = frame_check(&ctx, &bad, &tests, 64, 64).map_err(|e| e.to_string())?;
        let json = format!(
            "{}\n{}\n{}",
            serde_json::to_string(&SignalFile::from_signal(&g, Some(ctx.b()))).unwrap(),
            serde_json::to_string(&rep).unwrap(),
            serde_json::to_string(&bad_rep).unwrap()
        );
        Ok((json, vec![rep.lower_ratio, rep.upper_ratio], bad_rep.max_deviation))
    })
}

fn ac7() -> Outcome {
    let (_, r, bad) = flagship(4)?;
    ensure(r[0] >= FRAME_LO && r[1] <= FRAME_HI, format!("ratios [{:.6}, {:.6}]", r[0], r[1]))?;
    ensure(bad >= VIOLATION_GAP, format!("violating field deviates only {bad:.4}"))?;
    Ok(format!("ratios [{:.6}, {:.6}]; equal-fiber field deviates by {bad:.3}", r[0], r[1]))
}

fn ac8() -> Outcome {
    let b = RatMatrix::from_rows(vec![vec![rat(3, 2)]]).unwrap();
    let ctx = build_context(&b).unwrap();
    let v = density_check(&ctx);
    ensure(!v.feasible && v.ell == 3 && v.det_a == 2 && v.det_b == "3/2", format!("{v:?}"))?;
    ensure(!v.det_b_at_most_one && !v.ell_at_most_det_a && v.criteria_agree, "criteria disagree")?;
    match synthesize_parseval(&ctx, &FiberField::Standard, &SynthesisConfig::new(&ctx, 12)) {
        Err(e @ Error::DensityObstruction { .. }) => {
            ensure(e.to_string().contains("|det B| > 1"), "message does not quote the criterion")?;
            Ok("DensityObstruction; ell 3 > |det A| 2, |det B| 3/2 > 1".into())
        }
        other => Err(format!("expected DensityObstruction, got {:?}", other.map(|_| ()))),
    }
}

fn ac9() -> Outcome {
    let (a, _, _) = flagship(1)?;
    let (b, _, _) = flagship(4)?;
    ensure(a == b, "frame pipeline JSON differs across runs")?;
    let run = || {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let l1 = random_lattice(&mut rng, 2, 4, 6);
        let l2 = random_lattice(&mut rng, 2, 4, 6);
        let (l1, l2) = if l1.covolume() <= l2.covolume() { (l1, l2) } else { (l2, l1) };
        let ctx = build_context(&ex2()).unwrap();
        format!(
            "{}{}",
            serde_json::to_string(&nested_domains(&l1, &l2).unwrap()).unwrap(),
            serde_json::to_string(&ctx.report()).unwrap()
        )
    };
    ensure(run() == run(), "domain/context JSON differs across runs")?;
    Ok(format!("{} bytes identical across runs and thread counts", a.len() + run().len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("golden contexts", ac1),
        ("nested domains, 50 random pairs", ac2),
        ("published common domains", ac3),
        ("representation suite", ac4),
        ("Zak suite", ac5),
        ("multiplicity oracle", ac6),
        ("Parseval pipeline", ac7),
        ("density obstruction", ac8),
        ("determinism", ac9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match out {
            Ok(msg) => println!("[PASS] AC-{} {name} ({secs:.2}s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("[FAIL] AC-{} {name} ({secs:.2}s): {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
