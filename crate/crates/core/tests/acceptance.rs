//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so the summary is always printed:
//! `cargo test -p confrb --test acceptance`.

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use confrb::ccybe::*;
use confrb::conformal::{ConformalAlgebra, TensorElement};
use confrb::conformal_rb::catalog::{catalog_rank2, match_r1, match_r2, r3_exact};
use confrb::conformal_rb::*;
use confrb::exact::{GaussRat, Poly, Var};
use confrb::lie::{automorphisms, catalog_sl2, check_rb, transform_rb, LieAlgebra, LinearMap, Transform};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn p(s: &str) -> Poly {
    Poly::parse(s).unwrap()
}

fn bind(pairs: &[(&str, Poly)]) -> BTreeMap<Var, Poly> {
    pairs.iter().map(|(n, v)| (Var::named(n), v.clone())).collect()
}

fn within(t: Duration, limit_s: f64, what: &str) -> Result<(), String> {
    if t.as_secs_f64() < limit_s {
        Ok(())
    } else {
        Err(format!("{what} took {:.2}s, limit {limit_s}s", t.as_secs_f64()))
    }
}

fn axioms() -> Outcome {
    for (name, l) in [
        ("Cur(sl2)", ConformalAlgebra::cur_sl2()),
        ("Vir", ConformalAlgebra::virasoro()),
        ("rank-2", ConformalAlgebra::rank2_example()),
    ] {
        let t = Instant::now();
        let rep = l.check_conformal_axioms();
        within(t.elapsed(), 1.0, name)?;
        ensure!(rep.is_empty(), "{name}: {} defects", rep.anticommutativity.len() + rep.jacobi.len());
    }
    Ok("3 algebras, no defects".into())
}

fn catalog() -> Outcome {
    let t = Instant::now();
    let g = LieAlgebra::sl2();
    let mut n = 0;
    for (w, expect) in [(0, ["a", "b", "c", "d", "e"].as_slice()), (1, ["a", "b", "c"].as_slice())] {
        let entries = catalog_sl2(w).unwrap();
        for name in expect {
            let e = entries.iter().find(|e| e.name == *name).ok_or(format!("sl2 {w}/{name} missing"))?;
            ensure!(check_rb(&g, &e.map, &e.weight).unwrap().is_rb(), "sl2 weight {w} ({name})");
            n += 1;
        }
    }
    let l = ConformalAlgebra::cur_sl2();
    for (w, names) in [(0, ["R1", "R2", "R_1", "R_2", "R_3", "R_4"].as_slice()), (1, ["Q1"].as_slice())] {
        let entries = catalog_cur_sl2(w).unwrap();
        for name in names {
            let e = entries.iter().find(|e| e.name == *name).ok_or(format!("{name} missing"))?;
            ensure!(check_conformal_rb(&l, &e.map, &e.weight).unwrap().is_rb(), "{name}");
            n += 1;
        }
    }
    let l = ConformalAlgebra::rank2_example();
    for e in catalog_rank2() {
        ensure!(check_conformal_rb(&l, &e.map, &e.weight).unwrap().is_rb(), "rank-2 form {}", e.name);
        n += 1;
    }
    within(t.elapsed(), 10.0, "catalog")?;
    Ok(format!("{n} operators, symbolic parameters"))
}

fn systems() -> Outcome {
    let t = Instant::now();
    for w in [0, 1] {
        let derived = derive_rb_system(w).unwrap();
        let reference = reference_system(w).unwrap();
        ensure!(derived.len() == 18 && reference.len() == 18, "weight {w}: sizes {} / {}", derived.len(), reference.len());
        let rep = match_system(&derived, &reference);
        ensure!(rep.is_bijection(), "weight {w}: {} unmatched", rep.mismatch_count());
    }
    within(t.elapsed(), 5.0, "derivation")?;
    Ok("18/18 at weight 0 and weight 1".into())
}

fn normalizations() -> Outcome {
    let l = ConformalAlgebra::cur_sl2();
    let entries = catalog_cur_sl2(0).unwrap();
    let get = |name: &str| entries.iter().find(|e| e.name == name).unwrap();

    let psi = get("R_2").normalize(&BTreeMap::new()).map_err(|e| e.to_string())?;
    ensure!(psi == get("R2").map, "ψ⁻¹R₂ψ = {:?}", psi.matrix);

    let xi = get("R_3").normalize(&bind(&[("α", Poly::int(4))])).map_err(|e| e.to_string())?;
    ensure!(match_r2(&xi).is_some(), "ξ⁻¹R₃ξ not in (R2)");
    let printed = r3_exact(&GaussRat::from(4)).unwrap();
    let phi = automorphisms::xi(&GaussRat::from(4)).unwrap();
    let direct = conjugate_conformal(&l, &printed, &phi).unwrap();
    ensure!(match_r2(&direct).is_some(), "ξ⁻¹R₃ξ (printed form) not in (R2)");

    let pi = get("R_4")
        .normalize(&bind(&[("α", Poly::int(-1)), ("β", Poly::int(1))]))
        .map_err(|e| e.to_string())?;
    ensure!(match_r1(&pi).is_some(), "π⁻¹R₄π not in (R1)");

    let th = get("R_4")
        .normalize(&bind(&[("α", Poly::int(3)), ("β", Poly::int(1))]))
        .map_err(|e| e.to_string())?;
    ensure!(match_r2(&th).is_some(), "θ⁻¹R₄θ not in (R2)");

    for m in [&psi, &xi, &direct, &pi, &th] {
        ensure!(check_conformal_rb(&l, m, &Poly::zero()).unwrap().is_rb(), "normal form is not RB");
    }
    Ok("ψ exact; ξ(4), π(−1,1), θ(3,1) land in their families".into())
}

fn instantiate(rng: &mut ChaCha8Rng) -> BTreeMap<Var, Poly> {
    ["α", "β", "t", "q0", "q1", "q2", "q3"]
        .iter()
        .map(|n| {
            let num = rng.gen_range(-5i64..=5);
            let den = rng.gen_range(1i64..=3);
            (Var::named(n), Poly::constant(GaussRat::ratio(num, den)))
        })
        .collect()
}

fn projection_and_extension() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let g = LieAlgebra::sl2();
    let l = ConformalAlgebra::cur_sl2();
    let mut entries = catalog_cur_sl2(0).unwrap();
    entries.extend(catalog_cur_sl2(1).unwrap());
    for i in 0..100 {
        let e = &entries[rng.gen_range(0..entries.len())];
        let params = instantiate(&mut rng);
        let r = e.map.substitute(&params);
        let r0 = project_r0(&r);
        ensure!(check_rb(&g, &r0, &e.weight).unwrap().is_rb(), "draw {i}: ({}){{0}} not RB", e.name);

        let a = rng.gen_range(-4i64..=4);
        let phi = automorphisms::psi(&Poly::int(a));
        let lhs = project_r0(&conjugate_conformal(&l, &r, &phi).unwrap());
        let rhs = transform_rb(&g, &r0, &e.weight, &Transform::Conjugate(phi)).unwrap();
        ensure!(lhs == rhs, "draw {i}: projection does not commute with ψ({a}) on {}", e.name);
    }
    let mut ext = 0;
    for w in [0, 1] {
        for e in catalog_sl2(w).unwrap() {
            let t = Poly::int(rng.gen_range(-5i64..=5));
            let r0 = LinearMap::new(e.map.matrix.map(|x| x.substitute(&bind(&[("t", t.clone())]))));
            ensure!(
                check_conformal_rb(&l, &extend_partial(&r0), &e.weight).unwrap().is_rb(),
                "extension of sl2 {w}/{} not RB",
                e.name
            );
            ext += 1;
        }
    }
    Ok(format!("100 draws projected and conjugated, {ext} extensions"))
}

fn ccybe_to_rb() -> Outcome {
    let t = Instant::now();
    let l = ConformalAlgebra::cur_sl2();
    let form = ConformalForm::killing(&l).unwrap();
    let mut n = 0;
    for f in ["1", "x^2 + c"] {
        for case in [SolutionCase::I, SolutionCase::II] {
            let params = FamilyParams {
                alpha: if case == SolutionCase::I { p("α") } else { Poly::zero() },
                scale: p("s"),
                ..FamilyParams::default()
            };
            let r = cursl2_solution_family(case, &p(f), &params).unwrap();
            ensure!(is_skew(&r), "{case:?}, f = {f}: not skew");
            ensure!(check_ccybe(&l, &r).unwrap(), "{case:?}, f = {f}: CCYBE fails");
            let op = rb_from_solution(&form, &r).unwrap();
            ensure!(check_conformal_rb(&l, &op, &Poly::zero()).unwrap().is_rb(), "{case:?}, f = {f}: P not RB");
            let q = match case {
                SolutionCase::I => match_r1(&op).map(|(q, _)| q),
                _ => match_r2(&op),
            }
            .ok_or(format!("{case:?}, f = {f}: P outside its family"))?;
            let q = q.substitute(&bind(&[("c", Poly::int(3)), ("s", Poly::int(2))]));
            ensure!(q.is_odd_in(Var::D).unwrap(), "{case:?}, f = {f}: q = {q} not odd");
            n += 1;
        }
    }
    let wedge = FamilyParams { alpha: Poly::one(), ..FamilyParams::default() };
    let r = cursl2_solution_family(SolutionCase::III, &Poly::one(), &wedge).unwrap();
    ensure!(is_skew(&r) && check_ccybe(&l, &r).unwrap(), "h∧e fails");
    let op = rb_from_solution(&form, &r).unwrap();
    ensure!(check_conformal_rb(&l, &op, &Poly::zero()).unwrap().is_rb(), "P for h∧e not RB");
    within(t.elapsed(), 30.0, "CCYBE families")?;
    Ok(format!("{n} family instances and h∧e"))
}

fn classical_cybe(g: &LieAlgebra, r: &[Vec<Poly>]) -> TensorElement {
    let n = g.dim();
    let mut out = TensorElement::zero(3);
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let w = &r[a][b] * &r[c][d];
                    if w.is_zero() {
                        continue;
                    }
                    let ac = g.bracket(&g.unit(a), &g.unit(c));
                    let bc = g.bracket(&g.unit(b), &g.unit(c));
                    let bd = g.bracket(&g.unit(b), &g.unit(d));
                    for s in 0..n {
                        out.add_term(vec![s, b, d], &(&w * &ac[s]));
                        out.add_term(vec![a, s, d], &(&w * &bc[s]));
                        out.add_term(vec![a, c, s], &(&w * &bd[s]));
                    }
                }
            }
        }
    }
    out
}

fn constant_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let g = LieAlgebra::sl2();
    let l = ConformalAlgebra::cur_sl2();
    for i in 0..50 {
        let r: Vec<Vec<Poly>> = (0..3)
            .map(|_| (0..3).map(|_| Poly::int(rng.gen_range(-4i64..=4))).collect())
            .collect();
        let t = TensorElement::from_terms(
            2,
            (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).map(|(a, b)| (vec![a, b], r[a][b].clone())),
        )
        .unwrap();
        ensure!(double_bracket(&l, &t).unwrap() == classical_cybe(&g, &r), "tensor {i} differs");
    }
    Ok("50 tensors agree".into())
}

fn virasoro() -> Outcome {
    let t = Instant::now();
    let l = ConformalAlgebra::virasoro();
    let coeffs: Vec<GaussRat> = [-1, 0, 1].map(GaussRat::from).to_vec();
    let out = bounded_search(&l, &GaussRat::from(0), 3, &coeffs, &ZeroPattern::free(1), 10_000_000)
        .map_err(|e| e.to_string())?;
    within(t.elapsed(), 60.0, "search")?;
    ensure!(out.hits.len() == 1, "{} hits", out.hits.len());
    ensure!(out.hits[0] == ConformalMap::zero(1), "hit is not zero");
    Ok(format!("{} candidates, only R = 0", out.candidates))
}

fn negative_controls() -> Outcome {
    let mut cases: Vec<(String, ConformalAlgebra, ConformalCatalogEntry)> = Vec::new();
    for w in [0, 1] {
        for e in catalog_cur_sl2(w).unwrap() {
            cases.push((format!("{}@{w}", e.name), ConformalAlgebra::cur_sl2(), e));
        }
    }
    for e in catalog_rank2() {
        cases.push((format!("rank2-{}", e.name), ConformalAlgebra::rank2_example(), e));
    }
    let d = Poly::var(Var::D);
    for (name, l, e) in &cases {
        let mut m = e.map.matrix.clone();
        m.set(0, 0, m.get(0, 0) + &d);
        let bumped = ConformalMap::new(m).unwrap();
        ensure!(!check_conformal_rb(l, &bumped, &e.weight).unwrap().is_rb(), "{name} + ∂ is still RB");
    }
    let l = ConformalAlgebra::cur_sl2();
    let q1 = catalog_cur_sl2(1).unwrap().into_iter().find(|e| e.name == "Q1").unwrap();
    ensure!(!check_conformal_rb(&l, &q1.map, &Poly::zero()).unwrap().is_rb(), "Q1 passes at weight 0");
    Ok(format!("{} perturbations rejected, Q1 rejected at weight 0", cases.len()))
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("conformal axioms", axioms),
        ("catalog verification", catalog),
        ("system derivation", systems),
        ("normalization identities", normalizations),
        ("projection and extension", projection_and_extension),
        ("CCYBE to RB", ccybe_to_rb),
        ("constant-tensor oracle", constant_oracle),
        ("Virasoro search", virasoro),
        ("negative controls", negative_controls),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = panic::catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|e| Err(e.downcast_ref::<String>().cloned().unwrap_or_else(|| "panic".into())));
        let ms = t.elapsed().as_millis();
        match res {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}) [{ms} ms]", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {why} [{ms} ms]", i + 1);
            }
        }
    }
    println!("{}/{} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
