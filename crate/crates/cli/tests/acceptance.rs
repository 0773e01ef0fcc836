//! Acceptance gate: one PASS/FAIL line per criterion, all values exact.

#[path = "../../core/tests/oracle/mod.rs"]
mod oracle;

use std::process::{Command, Output};
use std::time::{Duration, Instant};

use lefschetz_core::catalog;
use lefschetz_core::equivariant::{
    abbv_integrate, canonical_classes, equivariant_symplectic_class, kirwan_reduce, CircleClass,
    EulerData,
};
use lefschetz_core::exact::{rat, Rational, UPoly};
use lefschetz_core::gkm::{restrict_to_circle, GkmDocument, GkmGraph};
use lefschetz_core::lefschetz::{
    hard_lefschetz_check, poincare_pairing, semifree_monotone_analysis, verify_distinct,
    verify_symp_expansion, verify_vanish, verify_zeroclass, DegreeVerdict, Side,
};
use serde_json::Value;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cli(args: &[&str]) -> (Output, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_lefschetz"))
        .args(args)
        .output()
        .expect("binary runs");
    (out, start.elapsed())
}

fn report(args: &[&str]) -> Result<(Value, i32, Duration), String> {
    let (out, took) = cli(args);
    let code = out.status.code().unwrap_or(-1);
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| {
        format!(
            "{args:?}: no JSON report ({e}); stderr {}",
            String::from_utf8_lossy(&out.stderr)
        )
    })?;
    Ok((v, code, took))
}

fn level_constants(r: &Value) -> Vec<String> {
    r["profile"]["levels"]
        .as_array()
        .unwrap()
        .iter()
        .map(|l| l["constant"].as_str().unwrap_or("?").to_string())
        .collect()
}

/// Hypothesis-satisfying catalog inputs with their default circles.
fn hypothesis_inputs() -> Vec<(String, GkmGraph, Vec<i64>)> {
    catalog::entries()
        .into_iter()
        .filter(|e| e.expected.constant_on_levels)
        .map(|e| {
            (
                e.name.clone(),
                GkmGraph::from_document(&e.document).unwrap(),
                e.default_xi.clone(),
            )
        })
        .collect()
}

fn criterion_1() -> Check {
    let (r, code, took) = report(&["analyze", "--example", "su3", "--xi", "-1,1"])?;
    ensure(code == 0, || format!("exit code {code}"))?;
    let c = level_constants(&r);
    ensure(c == ["-2", "-1", "1", "2"], || format!("levels {c:?}"))?;
    let betti: Vec<u64> = r["profile"]["betti"]
        .as_array()
        .unwrap()
        .iter()
        .map(|b| b.as_u64().unwrap())
        .collect();
    ensure(betti == [1, 0, 2, 0, 2, 0, 1], || {
        format!("betti {betti:?}")
    })?;
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))
}

fn criterion_2() -> Check {
    let (r, _, took) = report(&[
        "analyze",
        "--example",
        "so5",
        "--scale",
        "2",
        "--xi",
        "-1,3",
    ])?;
    let nm = &r["profile"]["normalizer"];
    ensure(nm["a"] == "1/2" && nm["b"] == "3", || {
        format!("normalizer {nm}")
    })?;
    ensure(nm["self_indexing"] == true, || "not self-indexing".into())?;
    let c = level_constants(&r);
    ensure(c == ["-6", "-2", "2", "6"], || format!("levels {c:?}"))?;
    for pt in r["profile"]["points"].as_array().unwrap() {
        let id = pt["id"].as_str().unwrap();
        // (mu + 6) / 2 equals the index
        let mu: i64 = pt["moment"].as_str().unwrap().parse().unwrap();
        let index = pt["index"].as_i64().unwrap();
        ensure((mu + 6) / 2 == index && (mu + 6) % 2 == 0, || {
            format!("{id}: mu {mu}, index {index}")
        })?;
        ensure(nm["values"][id] == index.to_string().as_str(), || {
            format!("{id}: normalized {}", nm["values"][id])
        })?;
    }
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))?;
    let (r, _, took) = report(&[
        "analyze",
        "--example",
        "so5",
        "--scale",
        "1",
        "--xi",
        "-1,3",
    ])?;
    let nm = &r["profile"]["normalizer"];
    ensure(nm["a"] == "1" && nm["b"] == "3", || {
        format!("scale 1 normalizer {nm}")
    })?;
    ensure(took < Duration::from_secs(1), || format!("took {took:?}"))
}

fn criterion_3() -> Check {
    let start = Instant::now();
    let names: Vec<String> = hypothesis_inputs().into_iter().map(|(n, _, _)| n).collect();
    for required in [
        "su3",
        "so5",
        "cp1",
        "cp2",
        "cp3",
        "sphere_product1",
        "sphere_product2",
        "sphere_product3",
    ] {
        ensure(names.iter().any(|n| n == required), || {
            format!("{required} missing from the catalog")
        })?;
    }
    for (name, g, xi) in hypothesis_inputs() {
        let p = restrict_to_circle(&g, &xi).map_err(|e| e.to_string())?;
        let basis = canonical_classes(&g, &p).map_err(|e| format!("{name}: {e}"))?;
        let ring = kirwan_reduce(&basis, &p).map_err(|e| e.to_string())?;
        let hl = hard_lefschetz_check(&ring).map_err(|e| e.to_string())?;
        ensure(hl.holds, || format!("{name}: fails"))?;
        for d in &hl.degrees {
            match d.verdict {
                DegreeVerdict::Vacuous => {
                    ensure(d.degree % 2 == 1, || format!("{name}: even degree vacuous"))?
                }
                DegreeVerdict::Isomorphism => {
                    let m = d.matrix.as_ref().unwrap();
                    ensure(m.rows() == m.cols() && m.rank() == m.rows(), || {
                        format!("{name}: degree {}", d.degree)
                    })?
                }
                DegreeVerdict::NotIsomorphism => {
                    return Err(format!("{name}: degree {} not full rank", d.degree))
                }
            }
        }
    }
    let took = start.elapsed();
    ensure(took < Duration::from_secs(10), || format!("took {took:?}"))
}

fn criterion_4() -> Check {
    for (name, g, xi) in hypothesis_inputs() {
        let p = restrict_to_circle(&g, &xi).map_err(|e| e.to_string())?;
        let basis = canonical_classes(&g, &p).map_err(|e| e.to_string())?;
        let n = p.half_dim();
        let e = verify_symp_expansion(&p, &basis).map_err(|e| e.to_string())?;
        ensure(e.passed && e.quantities["a0"] == "0", || {
            format!("{name}: expansion {e:?}")
        })?;
        let c2 = e.quantities["c2"].clone();
        let minus_c2 = if let Some(s) = c2.strip_prefix('-') {
            s.to_string()
        } else {
            format!("-{c2}")
        };
        for (k, v) in &e.quantities {
            if k.starts_with("coefficient") {
                ensure(*v == minus_c2, || format!("{name}: {k} = {v}, c2 = {c2}"))?;
            }
        }
        for k in 0..=n {
            let v = verify_vanish(&p, k).map_err(|e| e.to_string())?;
            ensure(v.passed, || format!("{name}: vanishing on level {}", 2 * k))?;
            for side in [Side::Low, Side::High] {
                let z = verify_zeroclass(&basis, k, side);
                ensure(z.passed, || {
                    format!("{name}: zero class {side:?} degree {}", 2 * k)
                })?;
            }
        }
        let d = verify_distinct(&p).map_err(|e| e.to_string())?;
        ensure(d.passed, || format!("{name}: distinct {d:?}"))?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    for entry in catalog::entries() {
        let g = GkmGraph::from_document(&entry.document).unwrap();
        ensure(g.len() <= 8, || format!("{} too large", entry.name))?;
        let p = restrict_to_circle(&g, &entry.default_xi).unwrap();
        let basis = canonical_classes(&g, &p).map_err(|e| e.to_string())?;
        for f in 0..g.len() {
            let global = oracle::global_alpha(&g, &entry.default_xi, f);
            ensure(basis.alpha(f).coefficients() == global, || {
                format!("{} at {}", entry.name, p.point(f).id)
            })?;
        }
    }
    Ok(())
}

fn criterion_6() -> Check {
    let cp1 = restrict_to_circle(&catalog::cp(1), &[1]).unwrap();
    let moments: Vec<Rational> = cp1.points().iter().map(|f| f.moment.clone()).collect();
    ensure(moments == [rat(0), rat(1)], || {
        format!("cp1 moments {moments:?}")
    })?;
    let area = abbv_integrate(
        &equivariant_symplectic_class(&cp1, &rat(0)),
        &EulerData::new(&cp1),
    )
    .unwrap();
    ensure(area == UPoly::constant(rat(1)), || {
        format!("cp1 area {area}")
    })?;

    for entry in catalog::entries() {
        let g = GkmGraph::from_document(&entry.document).unwrap();
        let p = restrict_to_circle(&g, &entry.default_xi).unwrap();
        let basis = canonical_classes(&g, &p).unwrap();
        let e = EulerData::new(&p);
        let n = p.half_dim();
        // every class of degree below 2n: basis elements, u-multiples, powers of omega
        let omega = equivariant_symplectic_class(&p, &rat(0));
        let mut low: Vec<CircleClass> = (0..n).map(|j| omega.pow(j as u32)).collect();
        for f in 0..basis.len() {
            let b = basis.beta(f);
            for extra in 0..n.saturating_sub(basis.index(f) / 2) {
                low.push(b.times_u_pow(extra));
            }
        }
        for c in &low {
            let v = abbv_integrate(c, &e).map_err(|e| e.to_string())?;
            ensure(v.is_zero(), || {
                format!("{}: degree {} integrates to {v}", entry.name, c.degree())
            })?;
        }
        for k in (0..=n).filter(|k| k % 2 == 0) {
            let m = poincare_pairing(&basis, &p, k).unwrap();
            ensure(m.rows() == m.cols() && m.rank() == m.rows(), || {
                format!("{}: pairing in degree {k} singular", entry.name)
            })?;
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    for n in 1..=3usize {
        let xi: Vec<i64> = (1..=n as i64).collect();
        let p = restrict_to_circle(&catalog::sphere_product(n), &xi).unwrap();
        let s = semifree_monotone_analysis(&p);
        ensure(s.semifree, || format!("n = {n}: not semifree"))?;
        for (f, mu) in p.points().iter().zip(&s.monotone_mu) {
            ensure(mu + rat(n as i64) == rat(f.index as i64), || {
                format!("n = {n}: {} has mu {mu}, index {}", f.id, f.index)
            })?;
        }
        ensure(s.self_indexing, || format!("n = {n}"))?;
    }
    Ok(())
}

fn criterion_8() -> Check {
    let (r, code, _) = report(&["analyze", "--example", "hirzebruch1"])?;
    ensure(code == 2, || format!("exit code {code}"))?;
    ensure(r["hypothesis"]["constant_on_levels"] == false, || {
        "levels reported constant".into()
    })?;
    ensure(r["hypothesis"]["theorem"] == "not applicable", || {
        format!("theorem {}", r["hypothesis"]["theorem"])
    })?;
    ensure(r["hard_lefschetz"]["holds"].is_boolean(), || {
        "no verdict".into()
    })?;
    ensure(
        r["hard_lefschetz"]["degrees"]
            .as_array()
            .map_or(0, Vec::len)
            == 3,
        || "degrees missing".into(),
    )
}

fn criterion_9() -> Check {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    for entry in catalog::entries() {
        let text = entry.document.to_json();
        let again = GkmDocument::from_json(&text)
            .map_err(|e| e.to_string())?
            .to_json();
        ensure(text == again, || {
            format!("{}: document round trip", entry.name)
        })?;
        let g = GkmGraph::from_document(&entry.document).unwrap();
        ensure(
            GkmGraph::from_document(&GkmDocument::from_json(&g.to_json()).unwrap())
                .unwrap()
                .to_json()
                == g.to_json(),
            || format!("{}: graph round trip", entry.name),
        )?;
    }
    for name in ["su3", "so5", "cp3", "sphere_product3", "hirzebruch1"] {
        let path = dir.path().join(format!("{name}.json"));
        let (out, _) = cli(&["emit", "--example", name, "--out", path.to_str().unwrap()]);
        ensure(out.status.success(), || format!("emit {name}"))?;
        let emitted = std::fs::read_to_string(&path).unwrap();
        let reemitted = GkmDocument::from_json(&emitted).unwrap().to_json();
        ensure(emitted == reemitted, || {
            format!("{name}: emit -> parse -> emit")
        })?;

        let xi = catalog::default_xi(name)
            .unwrap()
            .iter()
            .map(i64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let first = cli(&["analyze", "--example", name]).0.stdout;
        let second = cli(&["analyze", "--example", name]).0.stdout;
        let from_file = cli(&["analyze", path.to_str().unwrap(), "--xi", &xi])
            .0
            .stdout;
        ensure(!first.is_empty() && first == second, || {
            format!("{name}: report differs between runs")
        })?;
        ensure(first == from_file, || {
            format!("{name}: file and example reports differ")
        })?;
        let text1 = cli(&["analyze", "--example", name, "--format", "text"])
            .0
            .stdout;
        let text2 = cli(&["analyze", "--example", name, "--format", "text"])
            .0
            .stdout;
        ensure(text1 == text2, || format!("{name}: text report differs"))?;
    }
    let svg = || cli(&["render", "--example", "su3"]).0.stdout;
    ensure(svg() == svg(), || "svg differs".into())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 9] = [
        ("SU(3) levels and Betti numbers", criterion_1),
        ("SO(5) self-indexing normalization", criterion_2),
        ("hard Lefschetz on every hypothesis input", criterion_3),
        ("structural checks", criterion_4),
        ("triangular and global canonical classes agree", criterion_5),
        ("localization consistency", criterion_6),
        ("semifree monotone self-indexing", criterion_7),
        ("negative control", criterion_8),
        ("determinism and round trips", criterion_9),
    ];
    let mut failed = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(()) => println!("PASS criterion {}: {name}", i + 1),
            Err(why) => {
                println!("FAIL criterion {}: {name}: {why}", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
