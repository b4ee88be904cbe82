use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::Value;

use spinlift::catalog::{bundled_catalog, Catalog};
use spinlift::clifford::{rat, Blade, CliffordElement, QSqrt2};
use spinlift::fp::abelianization_mod2_rank;
use spinlift::holonomy::character_tables;
use spinlift::lift::{enumerate_lifts, lift, reduce_params_mod2, sylow_strategy};
use spinlift::spin::{
    lambda, preimage_signed_perm, subgroup_closure, SignedPermMatrix, SpinElement,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn spinlift(args: &[&str]) -> (Option<i32>, String) {
    let o = Command::new(env!("CARGO_BIN_EXE_spinlift"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        o.status.code(),
        String::from_utf8_lossy(&o.stdout).into_owned(),
    )
}

fn verify_report() -> Result<(Value, Duration), String> {
    let start = Instant::now();
    let (code, out) = spinlift(&["verify", "--format", "json"]);
    let elapsed = start.elapsed();
    if code != Some(0) {
        return Err(format!("verify exited with {code:?}"));
    }
    let doc = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    Ok((doc, elapsed))
}

fn table_reproduction() -> Outcome {
    let (doc, elapsed) = verify_report()?;
    let rows = doc["rows"].as_array().ok_or("no rows")?;
    let failing: Vec<String> = rows
        .iter()
        .filter(|r| r["pass"] != true)
        .map(|r| format!("{} {}", r["family"], r["params"]))
        .collect();
    if !failing.is_empty() {
        return Err(format!(
            "{} mismatches: {}",
            failing.len(),
            failing.join(", ")
        ));
    }
    if elapsed > Duration::from_secs(10) {
        return Err(format!("took {elapsed:.1?}"));
    }
    Ok(format!(
        "{} rows match exactly in {elapsed:.2?}",
        rows.len()
    ))
}

fn non_spin_census() -> Outcome {
    let expected: BTreeSet<(String, Vec<i64>)> = [
        ("5", vec![1, 0, 0, 1]),
        ("30", vec![1, 0, 1, 0, 0]),
        ("32", vec![0, 1, 1, 0, 0]),
        ("34", vec![1, 0, 1, 0, 0]),
        ("41", vec![0, 0, 1, 0, 0]),
        ("41", vec![0, 1, 1, 0, 0]),
        ("41", vec![1, 1, 1, 0, 0]),
        ("43", vec![1, 0, 1, 0, 0]),
        ("45", vec![0, 0, 1, 0, 0]),
        ("80", vec![1, 0, 0, 1]),
        ("110", vec![0, 0, 1, 0, 0]),
        ("B3b", vec![1, 1, 0, 0, 1]),
        ("B5", vec![0, 1, 0, 0, 1]),
        ("B5", vec![1, 1, 0, 0, 1]),
        ("B5b", vec![1, 1, 0, 0, 1]),
    ]
    .into_iter()
    .map(|(f, p)| (f.to_string(), p))
    .collect();
    let (doc, _) = verify_report()?;
    let zero: BTreeSet<(String, Vec<i64>)> = doc["rows"]
        .as_array()
        .ok_or("no rows")?
        .iter()
        .filter(|r| r["computed"] == 0)
        .map(|r| {
            let params = r["params"]
                .as_array()
                .unwrap()
                .iter()
                .map(|p| p.as_i64().unwrap())
                .collect();
            (r["family"].as_str().unwrap().to_string(), params)
        })
        .collect();
    if doc["summary"]["zero_rows"] != 15 || zero != expected {
        let extra: Vec<_> = zero.difference(&expected).collect();
        let missing: Vec<_> = expected.difference(&zero).collect();
        return Err(format!(
            "{} zero rows; unexpected {extra:?}, missing {missing:?}",
            zero.len()
        ));
    }
    Ok("exactly the 15 expected rows have no spin structure".into())
}

fn preimage_groups() -> Outcome {
    let cases = [
        ("1", "C2", 1),
        ("4", "C4", 2),
        ("27", "Q8", 4),
        ("75", "C8", 4),
        ("103", "Q16", 8),
        ("143", "C6", 3),
        ("158", "C3⋊C4", 6),
        ("168", "C12", 6),
        ("184", "C3⋊Q8", 12),
    ];
    let mut wrong = Vec::new();
    for (family, name, f) in cases {
        let (code, out) = spinlift(&["lift-group", "--family", family, "--format", "json"]);
        let doc: Value = serde_json::from_str(&out).unwrap_or(Value::Null);
        let ok = code == Some(0)
            && doc["group"] == name
            && doc["order"] == 2 * f
            && doc["holonomy_order"] == f;
        if !ok {
            wrong.push(format!("family {family}: {}", doc["group"]));
        }
    }
    if wrong.is_empty() {
        Ok("nine preimage groups identified with |F~| = 2|F|".into())
    } else {
        Err(wrong.join("; "))
    }
}

fn characters() -> Outcome {
    for t in character_tables() {
        t.check().map_err(|e| e.to_string())?;
    }
    let stated = [
        ("1", "4χ1"),
        ("4", "2χ1+2χ2"),
        ("27", "χ1+χ2+χ3+χ4"),
        ("75", "2χ1+χ3+χ4"),
        ("103", "χ1+χ2+χ5"),
        ("158", "χ1+χ2+χ3"),
        ("168", "2χ1+χ5+χ6"),
        ("184", "χ1+χ2+χ6"),
    ];
    let mut wrong = Vec::new();
    for (family, chi) in stated {
        let (code, out) = spinlift(&["char", "--family", family]);
        let got = out.trim();
        if code != Some(0) || got != chi {
            wrong.push(format!("family {family}: expected {chi}, computed {got}"));
        }
    }
    if wrong.is_empty() {
        Ok("all stated characters reproduced; tables orthogonal".into())
    } else {
        Err(format!("tables orthogonal, but {}", wrong.join("; ")))
    }
}

fn rotor(rng: &mut StdRng) -> SpinElement {
    const TRIPLES: [(i64, i64, i64); 4] = [(3, 4, 5), (5, 12, 13), (8, 15, 17), (0, 1, 1)];
    let p = rng.gen_range(1..=4);
    let q = (p - 1 + rng.gen_range(1..4)) % 4 + 1;
    let (a, b, c) = TRIPLES[rng.gen_range(0..TRIPLES.len())];
    let x = CliffordElement::one(4)
        .unwrap()
        .scale(&QSqrt2::from_rational(rat(a, c)))
        .try_add(
            &CliffordElement::monomial(4, &[p, q])
                .unwrap()
                .scale(&QSqrt2::from_rational(rat(b, c))),
        )
        .unwrap();
    SpinElement::new(x).unwrap()
}

fn random_clifford(rng: &mut StdRng) -> CliffordElement {
    let terms: Vec<(Blade, QSqrt2)> = (0..rng.gen_range(1..6))
        .map(|_| {
            let c = QSqrt2::new(
                rat(rng.gen_range(-5..=5), rng.gen_range(1..=3)),
                rat(rng.gen_range(-3..=3), rng.gen_range(1..=3)),
            );
            (Blade::new(4, rng.gen_range(0..16)).unwrap(), c)
        })
        .collect();
    CliffordElement::from_terms(4, terms).unwrap()
}

fn covering_map(catalog: &Catalog) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    let special = SignedPermMatrix::all_special(4);
    if special.len() != 192 {
        return Err(format!("{} special signed permutations", special.len()));
    }
    let mut lifts = Vec::new();
    for m in &special {
        let x = preimage_signed_perm(m)
            .map_err(|e| e.to_string())?
            .into_canonical();
        if lambda(&x).map_err(|e| e.to_string())? != m.to_orth() {
            return Err(format!("λ(preimage({m})) differs"));
        }
        lifts.push(x);
    }
    let products = 1200;
    for i in 0..products {
        let (x, y) = if i % 2 == 0 {
            (
                lifts[rng.gen_range(0..lifts.len())].clone(),
                lifts[rng.gen_range(0..lifts.len())].clone(),
            )
        } else {
            (
                rotor(&mut rng) * rotor(&mut rng),
                rotor(&mut rng) * lifts[rng.gen_range(0..lifts.len())].clone(),
            )
        };
        let lhs = lambda(&(&x * &y)).map_err(|e| e.to_string())?;
        let rhs = lambda(&x)
            .and_then(|a| a.try_mul(&lambda(&y)?))
            .map_err(|e| e.to_string())?;
        if lhs != rhs {
            return Err(format!("λ({x}·{y}) ≠ λ({x})λ({y})"));
        }
    }
    let mut groups = vec![subgroup_closure(&lifts).map_err(|e| e.to_string())?];
    for r in catalog.records() {
        if let Ok(bases) = spinlift::lift::base_preimages(r) {
            let gens: Vec<SpinElement> = r
                .holonomy_generators()
                .iter()
                .map(|&g| bases[g].clone())
                .collect();
            groups.push(subgroup_closure(&gens).map_err(|e| e.to_string())?);
        }
    }
    for g in &groups {
        let kernel = g.kernel().map_err(|e| e.to_string())?;
        let trivial = kernel.iter().all(|x| x.is_one() || x.is_minus_one());
        let expected = if g.contains(&SpinElement::minus_one(4).unwrap()) {
            2
        } else {
            1
        };
        if !trivial || kernel.len() != expected {
            return Err(format!(
                "kernel of order {} in a group of order {}",
                kernel.len(),
                g.order()
            ));
        }
    }
    let involutions = 500;
    for _ in 0..involutions {
        let (x, y) = (random_clifford(&mut rng), random_clifford(&mut rng));
        let xy = x.try_mul(&y).unwrap();
        let ok = xy.star() == y.star().try_mul(&x.star()).unwrap()
            && xy.grade_involution()
                == x.grade_involution().try_mul(&y.grade_involution()).unwrap()
            && xy.conjugate() == y.conjugate().try_mul(&x.conjugate()).unwrap()
            && x.star().star() == x
            && x.conjugate() == x.grade_involution().star();
        if !ok {
            return Err(format!("involution identity fails on {x}, {y}"));
        }
    }
    Ok(format!(
        "{products} products, {} subgroups, 192 lifts, {involutions} involution checks",
        groups.len()
    ))
}

fn oracles(catalog: &Catalog) -> Outcome {
    let mut rank_rows = 0;
    let mut sylow_rows = 0;
    for r in catalog.records() {
        let two_group = r
            .matrix_group()
            .map_err(|e| e.to_string())?
            .order()
            .is_power_of_two();
        for p in &r.parameter_classes {
            let params = r.params(p).map_err(|e| e.to_string())?;
            let res = lift(r, &params).map_err(|e| e.to_string())?;
            if res.count > 0 {
                let gamma = r.presentation.eval(&params).map_err(|e| e.to_string())?;
                let d = abelianization_mod2_rank(&gamma);
                if res.count != 1 << d {
                    return Err(format!("family {} {p:?}: {} ≠ 2^{d}", r.family, res.count));
                }
                rank_rows += 1;
            }
            if two_group {
                let direct = enumerate_lifts(r, &params).map_err(|e| e.to_string())?;
                let sylow = sylow_strategy(r, &params).map_err(|e| e.to_string())?;
                if !direct.same_outcome(&sylow) {
                    return Err(format!("family {} {p:?}: strategies disagree", r.family));
                }
                sylow_rows += 1;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(6);
    let samples = 300;
    for _ in 0..samples {
        let r = &catalog.records()[rng.gen_range(0..catalog.len())];
        let values: Vec<i64> = r
            .parameters()
            .iter()
            .map(|_| rng.gen_range(-1000..=1000))
            .collect();
        let params = r.params(&values).map_err(|e| e.to_string())?;
        let a = lift(r, &params).map_err(|e| e.to_string())?;
        let b = lift(r, &reduce_params_mod2(&params)).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!(
                "family {} {values:?} changes under reduction",
                r.family
            ));
        }
    }
    Ok(format!(
        "{rank_rows} rank checks, {sylow_rows} strategy checks, {samples} random parameter vectors"
    ))
}

fn main() -> ExitCode {
    let catalog = bundled_catalog().expect("bundled catalog loads");
    let criteria: [Criterion; 6] = [
        ("spin counts", Box::new(table_reproduction)),
        ("non-spin census", Box::new(non_spin_census)),
        ("preimage groups", Box::new(preimage_groups)),
        ("characters", Box::new(characters)),
        ("covering map", Box::new(|| covering_map(&catalog))),
        ("oracle cross-checks", Box::new(|| oracles(&catalog))),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(msg) => println!("PASS {} {name}: {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL {} {name}: {msg}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
