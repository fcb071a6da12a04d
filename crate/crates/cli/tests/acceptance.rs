//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use polymat::corpus::{
    chain_instance, class_instance, planted_instance, random_matrix, random_nonzero_poly, random_poly, ring3, rng,
};
use polymat::examples::{example1_f, example1_g1, example1_ring, example1_u};
use polymat::factorizer::{classify, factor_chain, substituted, FactorOptions};
use polymat::groebner::{lift, reduced_gb, syzygy, Side};
use polymat::matrix::{combinations, MinorIndex};
use polymat::{Poly, PolyMatrix, Ring};
use polymat_cli::{MatrixDocument, RunReport};
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn example_doc() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data/example1.json")
}

fn polymat(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polymat"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn json_run(args: &[&str]) -> Result<(i32, RunReport), String> {
    let (code, stdout, stderr) = polymat(args);
    let report = RunReport::from_json(&stdout).map_err(|e| format!("bad report ({e}); stderr: {stderr}"))?;
    Ok((code, report))
}

fn p(ring: &Ring, s: &str) -> Poly {
    Poly::parse(s, ring).expect("valid polynomial")
}

fn polys(ring: &Ring, xs: &[String]) -> Vec<Poly> {
    xs.iter().map(|s| p(ring, s)).collect()
}

fn load(path: &Path) -> PolyMatrix {
    let doc = MatrixDocument::from_json(&std::fs::read_to_string(path).unwrap()).unwrap();
    doc.matrix(&doc.ring(None).unwrap()).unwrap()
}

fn within(start: Instant, limit: Duration) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))
}

fn example_analysis() -> Outcome {
    let start = Instant::now();
    let doc = example_doc();
    let (code, r) = json_run(&["analyze", doc.to_str().unwrap(), "--json"])?;
    ensure(code == 0, || format!("exit {code}"))?;
    let a = r.analysis.ok_or("no analysis")?;
    let ring = example1_ring();
    ensure(p(&ring, &a.d_l) == p(&ring, "(z1 - z2)*(z2 + z3)^2"), || {
        format!("d_3 = {}", a.d_l)
    })?;
    ensure(p(&ring, &a.d_l_minus_1) == p(&ring, "z2 + z3"), || {
        format!("d_2 = {}", a.d_l_minus_1)
    })?;
    let s1 = polys(&ring, a.certificates.s1.as_ref().ok_or("no S1 basis")?);
    ensure(s1 == vec![p(&ring, "z1 - z2"), p(&ring, "(z2 + z3)^2")], || {
        format!("GB<d, e1> = {s1:?}")
    })?;
    let gb = polys(&ring, &a.certificates.divisor_and_submaximal_gcd);
    ensure(gb == vec![p(&ring, "z1 + z3"), p(&ring, "z2 + z3")], || {
        format!("GB<d, d_2> = {gb:?}")
    })?;
    let c = &a.classes;
    ensure(c.s3 && !c.s2 && !c.s1, || format!("classes {c:?}"))?;
    within(start, Duration::from_secs(5))?;
    Ok(format!(
        "d_3, d_2, both bases and S3 & !S2 & !S1 match in {:?}",
        start.elapsed()
    ))
}

fn example_factorization() -> Outcome {
    let start = Instant::now();
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().to_str().unwrap();
    let doc = example_doc();
    let doc = doc.to_str().unwrap();
    let (code, r) = json_run(&["factor", doc, "--divisor", "z1 - z2", "--out-dir", out, "--json"])?;
    ensure(code == 0, || format!("factor exit {code}: {:?}", r.error))?;
    let ring = example1_ring();
    let g1 = load(&dir.path().join("G1.json"));
    let f1 = load(&dir.path().join("F1.json"));
    ensure(g1.mul(&f1).map_err(|e| e.to_string())? == example1_f(), || {
        "F != G1 * F1".into()
    })?;
    ensure(
        g1.determinant().map_err(|e| e.to_string())? == p(&ring, "z1 - z2"),
        || "det(G1) != z1 - z2".into(),
    )?;
    ensure(g1 == example1_g1(), || "G1 differs from the published factor".into())?;
    let step = &r.factorization.ok_or("no factorization")?.steps[0];
    let w = polys(&ring, &step.w);
    let expected = [p(&ring, "1"), p(&ring, "0"), p(&ring, "z3 + 1")];
    let c = w[0].constant_value().ok_or("w[0] is not constant")?;
    ensure(w.iter().zip(&expected).all(|(a, b)| *a == b.scale(&c)), || {
        format!("w = {w:?}")
    })?;
    let u = PolyMatrix::parse(&ring, &step.u).map_err(|e| e.to_string())?;
    ensure(u == example1_u(), || "U differs from the published matrix".into())?;
    let g1p = dir.path().join("G1.json");
    let f1p = dir.path().join("F1.json");
    let (code, _, err) = polymat(&[
        "verify",
        doc,
        "--factors",
        g1p.to_str().unwrap(),
        "--residual",
        f1p.to_str().unwrap(),
    ]);
    ensure(code == 0, || format!("verify exit {code}: {err}"))?;
    within(start, Duration::from_secs(10))?;
    Ok(format!(
        "F = G1 F1, det(G1) = z1 - z2, w and U as published, verify passes in {:?}",
        start.elapsed()
    ))
}

fn binet_cauchy() -> Outcome {
    let start = Instant::now();
    let ring = ring3();
    let mut g = rng(31337);
    let mut identities = 0;
    for case in 0..100 {
        let l = g.gen_range(1..=3);
        let m = g.gen_range(l..=4);
        let a = random_matrix(&mut g, &ring, l, l, 2, 0.2);
        let b = random_matrix(&mut g, &ring, l, m, 2, 0.2);
        let ab = a.mul(&b).map_err(|e| e.to_string())?;
        let det = a.determinant().map_err(|e| e.to_string())?;
        let all: Vec<usize> = (0..l).collect();
        for cols in combinations(m, l) {
            let idx = MinorIndex {
                rows: all.clone(),
                cols,
            };
            ensure(ab.minor(&idx) == &det * &b.minor(&idx), || {
                format!("case {case}: maximal minor")
            })?;
            identities += 1;
        }
        if l < 2 {
            continue;
        }
        let r = l - 1;
        for rows in combinations(l, r) {
            for cols in combinations(m, r) {
                let lhs = ab.minor(&MinorIndex {
                    rows: rows.clone(),
                    cols: cols.clone(),
                });
                let rhs = combinations(l, r).into_iter().fold(Poly::zero(&ring), |acc, k| {
                    let x = a.minor(&MinorIndex {
                        rows: rows.clone(),
                        cols: k.clone(),
                    });
                    let y = b.minor(&MinorIndex {
                        rows: k,
                        cols: cols.clone(),
                    });
                    &acc + &(&x * &y)
                });
                ensure(lhs == rhs, || format!("case {case}: submaximal minor"))?;
                identities += 1;
            }
        }
    }
    within(start, Duration::from_secs(60))?;
    Ok(format!(
        "100 instances, {identities} minor identities in {:?}",
        start.elapsed()
    ))
}

fn planted_round_trip() -> Outcome {
    let ring = ring3();
    let mut g = rng(2024);
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (mut accepted, mut rejected) = (0, 0);
    let mut i = 0;
    while accepted < 50 {
        ensure(i < 400, || format!("only {accepted} instances passed the filter"))?;
        let l = 2 + i % 2;
        let (pl, d) = planted_instance(&mut g, &ring, l, l + i % 3 / 2);
        i += 1;
        let Ok(rep) = classify(&pl.f, &d) else { continue };
        let path = dir.path().join("F.json");
        std::fs::write(&path, MatrixDocument::from_matrix(&pl.f, &[(d.clone(), 1)]).to_json()).unwrap();
        let out = dir.path().join(format!("out{i}"));
        let (code, r) = json_run(&[
            "factor",
            path.to_str().unwrap(),
            "--out-dir",
            out.to_str().unwrap(),
            "--json",
        ])?;
        if !rep.in_s3 {
            ensure(code == 1 && r.factorization.is_none(), || {
                format!("instance {i}: rejected case exited {code}")
            })?;
            rejected += 1;
            continue;
        }
        ensure(code == 0, || format!("instance {i}: exit {code}: {:?}", r.error))?;
        let g1 = out.join("G1.json");
        let f1 = out.join("F1.json");
        let (code, _, err) = polymat(&[
            "verify",
            path.to_str().unwrap(),
            "--factors",
            g1.to_str().unwrap(),
            "--residual",
            f1.to_str().unwrap(),
        ]);
        ensure(code == 0, || format!("instance {i}: verify exit {code}: {err}"))?;
        let (gm, fm) = (load(&g1), load(&f1));
        ensure(
            gm.mul(&fm).unwrap() == pl.f && gm.determinant().unwrap() == d.poly(),
            || format!("instance {i}"),
        )?;
        accepted += 1;
    }
    Ok(format!(
        "{accepted} factored and verified, {rejected} rejected with exit 1"
    ))
}

fn certificates() -> Outcome {
    let ring = ring3();
    let all = [0, 1, 2];
    let mut g = rng(5);
    for case in 0..100 {
        let k = g.gen_range(1..=3);
        let gens: Vec<Poly> = (0..k).map(|_| random_nonzero_poly(&mut g, &ring, &all, 2, 3)).collect();
        let target = gens.iter().fold(Poly::zero(&ring), |acc, q| {
            &acc + &(q * &random_poly(&mut g, &ring, &all, 1, 2))
        });
        let cert = lift(&target, &gens).map_err(|e| format!("lift case {case}: {e}"))?;
        ensure(cert.combination() == target, || format!("lift case {case}"))?;
    }
    for case in 0..100 {
        let (l, m) = (g.gen_range(1..=3), g.gen_range(1..=3));
        let a = random_matrix(&mut g, &ring, l, m, 1, 0.3);
        for side in [Side::Left, Side::Right] {
            let syz = syzygy(&a, side).map_err(|e| e.to_string())?;
            for s in &syz.generators {
                let image = match side {
                    Side::Left => a.left_apply(s),
                    Side::Right => a.right_apply(s),
                }
                .map_err(|e| e.to_string())?;
                ensure(image.iter().all(Poly::is_zero), || format!("syzygy case {case}"))?;
            }
        }
    }
    for case in 0..100 {
        let k = g.gen_range(1..=3);
        let gens: Vec<Poly> = (0..k).map(|_| random_poly(&mut g, &ring, &all, 2, 3)).collect();
        let gb = reduced_gb(&ring, &gens).map_err(|e| e.to_string())?;
        ensure(gb.is_reduced() && gens.iter().all(|q| gb.reduce(q).is_zero()), || {
            format!("basis case {case}")
        })?;
    }
    Ok("100 lifts, 100 syzygy modules, 100 reduced bases".into())
}

fn class_chain() -> Outcome {
    let ring = ring3();
    let mut g = rng(777);
    let mut counts = [0usize; 4];
    for case in 0..200 {
        let (f, d) = class_instance(&mut g, &ring);
        let rep = classify(&f, &d).map_err(|e| format!("case {case}: {e}"))?;
        ensure(!rep.in_s1 || rep.in_s2, || format!("case {case}: S1 without S2"))?;
        ensure(!rep.in_s2 || rep.in_s3, || format!("case {case}: S2 without S3"))?;
        ensure(!rep.in_s3 || rep.in_s, || format!("case {case}: S3 without S"))?;
        if rep.in_s {
            let rank = substituted(&f, &d).map_err(|e| e.to_string())?.rank();
            ensure(rank == f.rows() - 1, || format!("case {case}: rank {rank}"))?;
        }
        for (c, b) in counts.iter_mut().zip([rep.in_s, rep.in_s1, rep.in_s2, rep.in_s3]) {
            *c += usize::from(b);
        }
    }
    Ok(format!("200 instances, S/S1/S2/S3 counts {counts:?}"))
}

fn chain_factorization() -> Outcome {
    let ring = ring3();
    let mut g = rng(99);
    let mut done = 0;
    let mut tried = 0;
    while done < 10 {
        ensure(tried < 200, || {
            format!("only {done} chain instances satisfied the hypotheses")
        })?;
        tried += 1;
        let (pl, d0) = chain_instance(&mut g, &ring, 2 + tried % 2, 3);
        let Ok(res) = factor_chain(&pl.f, &d0, &FactorOptions::default()) else {
            continue;
        };
        let g0 = res.combined().map_err(|e| e.to_string())?;
        ensure(g0.determinant().unwrap() == d0.expand(), || {
            format!("instance {tried}: det(G0)")
        })?;
        ensure(g0.mul(&res.residual).unwrap() == pl.f, || {
            format!("instance {tried}: product")
        })?;
        let l = pl.f.rows();
        let before = pl.f.minors_or_unit(l - 1).unwrap().gcd;
        let after = res.residual.minors_or_unit(l - 1).unwrap().gcd;
        ensure(before == after, || format!("instance {tried}: d_(l-1) changed"))?;
        done += 1;
    }
    Ok(format!("{done} chains of two divisors out of {tried} instances"))
}

fn main() {
    let criteria: [Criterion; 7] = [
        ("example analysis", example_analysis),
        ("example factorization", example_factorization),
        ("minors of products", binet_cauchy),
        ("planted round trip", planted_round_trip),
        ("certificates", certificates),
        ("class nesting", class_chain),
        ("chain factorization", chain_factorization),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
