use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use spinlift::catalog::{bundled_catalog, Catalog, RecordSpec};
use spinlift::clifford::{CliffordElement, QSqrt2};
use spinlift::fp::{abelianization_mod2_rank, exponent_sums, ParamValues, Word};
use spinlift::lift::{
    base_preimages, enumerate_lifts, enumerate_lifts_with, evaluate_word, lift, reduce_params_mod2,
    sylow_strategy, SignAssignment, Strategy,
};
use spinlift::record::AlmostBieberbachRecord;
use spinlift::spin::{lambda, preimage_signed_perm, SignedPermMatrix, SpinElement};
use spinlift::Error;

fn catalog() -> &'static Catalog {
    static CATALOG: std::sync::OnceLock<Catalog> = std::sync::OnceLock::new();
    CATALOG.get_or_init(|| bundled_catalog().unwrap())
}

fn record(family: &str) -> &'static AlmostBieberbachRecord {
    catalog().get(family).unwrap()
}

fn rows() -> Vec<(&'static AlmostBieberbachRecord, Vec<i64>)> {
    catalog()
        .records()
        .iter()
        .flat_map(|r| r.parameter_classes.iter().map(move |p| (r, p.clone())))
        .collect()
}

fn spin(x: CliffordElement) -> SpinElement {
    SpinElement::new(x).unwrap()
}

fn blade(idx: &[usize]) -> CliffordElement {
    CliffordElement::monomial(4, idx).unwrap()
}

fn from_json(json: &str) -> Result<AlmostBieberbachRecord, Error> {
    serde_json::from_str::<RecordSpec>(json)
        .unwrap()
        .to_record()
}

/// Every assignment, every relator, full products in the Clifford algebra.
fn brute_force(record: &AlmostBieberbachRecord, params: &ParamValues) -> Vec<SignAssignment> {
    let bases = base_preimages(record).unwrap();
    let names = record.presentation.names();
    let n = names.len();
    let mut valid = Vec::new();
    for mask in 0..1u32 << n {
        let signs: Vec<i8> = (0..n)
            .map(|g| if mask >> g & 1 == 1 { -1 } else { 1 })
            .collect();
        let a = SignAssignment::new(names.clone(), &signs).unwrap();
        let ok = record
            .presentation
            .relators()
            .iter()
            .all(|r| evaluate_word(r, &a, &bases, params).unwrap().is_one());
        if ok {
            valid.push(a);
        }
    }
    valid.sort();
    valid
}

#[test]
fn counts_of_listed_rows() {
    let count = |family: &str, params: &[i64]| {
        let r = record(family);
        lift(r, &r.params(params).unwrap()).unwrap().count
    };
    assert_eq!(count("1", &[0, 0, 0]), 16);
    assert_eq!(count("1", &[1, 0, 0]), 8);
    assert_eq!(count("5", &[1, 0, 0, 1]), 0);
    assert_eq!(count("80", &[1, 0, 0, 1]), 0);
    assert_eq!(count("27", &[0, 0, 0, 1, 0]), 16);
    assert_eq!(count("B5b", &[1, 1, 0, 0, 1]), 0);
    assert_eq!(count("184", &[0, 0, 0, 1, 0]), 4);
}

#[test]
fn strategy_follows_realizability() {
    let r = record("184");
    let res = lift(r, &r.params(&[0, 0, 0, 1, 0]).unwrap()).unwrap();
    assert_eq!(res.strategy, Strategy::Sylow);
    assert_eq!(
        enumerate_lifts(r, &r.params(&[0, 0, 0, 1, 0]).unwrap()),
        Err(Error::UnsupportedScalar)
    );
    let r = record("161");
    let res = lift(r, &r.params(&[0, 0, 0, 0, 0]).unwrap()).unwrap();
    assert_eq!(res.strategy, Strategy::Direct);
}

#[test]
fn direct_enumeration_matches_brute_force() {
    for (r, p) in rows() {
        let Ok(bases) = base_preimages(r) else {
            continue;
        };
        let params = r.params(&p).unwrap();
        let res = enumerate_lifts_with(r, &params, &bases).unwrap();
        assert_eq!(
            res.valid_assignments,
            brute_force(r, &params),
            "{} {p:?}",
            r.family
        );
        assert_eq!(res.count, res.valid_assignments.len() as u64);
        assert_eq!(res.exists, res.count > 0);
        assert!(res.count <= 1 << r.presentation.generators().len());
        assert_eq!(res.parallelizable, res.exists);
    }
}

#[test]
fn relators_evaluate_to_signs() {
    for (r, p) in rows() {
        let Ok(bases) = base_preimages(r) else {
            continue;
        };
        let params = r.params(&p).unwrap();
        let plus = SignAssignment::all_positive(r.presentation.names());
        for w in r.presentation.relators() {
            let v = evaluate_word(w, &plus, &bases, &params).unwrap();
            assert!(v.as_sign().is_some(), "{} {p:?}: {v}", r.family);
        }
    }
}

#[test]
fn base_preimages_cover_the_realization() {
    let bases = base_preimages(record("1")).unwrap();
    assert_eq!(bases.len(), 4);
    assert!(bases.iter().all(SpinElement::is_one));
    for r in catalog().records() {
        let Ok(bases) = base_preimages(r) else {
            continue;
        };
        for (g, x) in bases.iter().enumerate() {
            assert!(x.is_canonical());
            let m = lambda(x).unwrap();
            assert!(m.to_signed_perm().is_ok());
            if !r.holonomy_generators().contains(&g) {
                assert!(x.is_one());
            }
        }
    }
}

#[test]
fn printed_holonomy_preimages() {
    let a = SignedPermMatrix::diag(&[1, 1, -1, -1]).unwrap();
    assert_eq!(
        preimage_signed_perm(&a).unwrap().canonical().value(),
        &blade(&[3, 4])
    );

    let alpha = SignedPermMatrix::from_ints(&[
        vec![1, 0, 0, 0],
        vec![0, 0, -1, 0],
        vec![0, 1, 0, 0],
        vec![0, 0, 0, 1],
    ])
    .unwrap();
    let beta = SignedPermMatrix::diag(&[-1, 1, -1, 1]).unwrap();
    let one = CliffordElement::one(4).unwrap();
    let expected = one
        .try_add(&blade(&[2, 3]))
        .unwrap()
        .scale(&QSqrt2::inv_sqrt2());
    assert_eq!(
        preimage_signed_perm(&alpha).unwrap().canonical().value(),
        &expected
    );
    assert_eq!(
        preimage_signed_perm(&beta).unwrap().canonical().value(),
        &blade(&[1, 3])
    );
}

#[test]
fn word_evaluation() {
    let bases = vec![spin(blade(&[3, 4]))];
    let names = vec!["a".to_string()];
    let params = ParamValues::new();
    let plus = SignAssignment::all_positive(names.clone());
    let minus = SignAssignment::new(names, &[-1]).unwrap();
    assert!(evaluate_word(&Word::identity(), &plus, &bases, &params)
        .unwrap()
        .is_one());
    let square = Word::from_ints(&vec![(0, 2)]);
    assert!(evaluate_word(&square, &minus, &bases, &params)
        .unwrap()
        .is_minus_one());
    assert!(evaluate_word(&square, &plus, &bases, &params)
        .unwrap()
        .is_minus_one());
    let cube = Word::from_ints(&vec![(0, 3)]);
    let x = evaluate_word(&cube, &minus, &bases, &params).unwrap();
    assert_eq!(x.value(), &blade(&[3, 4]));
}

#[test]
fn wrong_preimages_are_inconsistent() {
    let r = record("4");
    let mut bases = base_preimages(r).unwrap();
    let h = r.holonomy_generators()[0];
    let quarter = CliffordElement::one(4)
        .unwrap()
        .try_add(&blade(&[1, 2]))
        .unwrap()
        .scale(&QSqrt2::inv_sqrt2());
    bases[h] = spin(quarter);
    let params = r.params(&r.parameter_classes[0]).unwrap();
    match enumerate_lifts_with(r, &params, &bases) {
        Err(Error::InconsistentRecord { family, detail }) => {
            assert_eq!(family, "4");
            assert!(detail.contains("relator"), "{detail}");
        }
        other => panic!("expected an inconsistent record, got {other:?}"),
    }
}

#[test]
fn torsor_under_base_sign_flips() {
    let mut rng = StdRng::seed_from_u64(7);
    for (r, p) in rows() {
        let Ok(bases) = base_preimages(r) else {
            continue;
        };
        let params = r.params(&p).unwrap();
        let reference = enumerate_lifts_with(r, &params, &bases).unwrap();
        for _ in 0..4 {
            let flips: Vec<i8> = bases
                .iter()
                .map(|_| if rng.gen() { -1 } else { 1 })
                .collect();
            let flipped: Vec<SpinElement> = bases
                .iter()
                .zip(&flips)
                .map(|(x, &s)| if s < 0 { -x } else { x.clone() })
                .collect();
            let res = enumerate_lifts_with(r, &params, &flipped).unwrap();
            assert_eq!(res.count, reference.count, "{} {p:?}", r.family);
            let shift = SignAssignment::new(r.presentation.names(), &flips).unwrap();
            let mut moved: Vec<SignAssignment> = reference
                .valid_assignments
                .iter()
                .map(|a| a.product(&shift))
                .collect();
            moved.sort();
            assert_eq!(res.valid_assignments, moved);
        }
    }
}

#[test]
fn nonzero_counts_are_powers_of_the_mod2_rank() {
    for (r, p) in rows() {
        let params = r.params(&p).unwrap();
        let res = lift(r, &params).unwrap();
        if res.count > 0 {
            let d = abelianization_mod2_rank(&r.presentation.eval(&params).unwrap());
            assert_eq!(res.count, 1 << d, "{} {p:?}", r.family);
        }
    }
}

#[test]
fn valid_assignments_form_a_coset_of_the_sign_characters() {
    for (r, p) in rows() {
        let params = r.params(&p).unwrap();
        let res = lift(r, &params).unwrap();
        if res.valid_assignments.is_empty() {
            continue;
        }
        let gamma = r.presentation.eval(&params).unwrap();
        let sums = exponent_sums(&gamma);
        let names = r.presentation.names();
        let n = names.len();
        let characters: Vec<SignAssignment> = (0..1u32 << n)
            .filter(|&mask| {
                sums.iter().all(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(g, e)| mask >> g & 1 == 1 && e % 2 != 0)
                        .count()
                        % 2
                        == 0
                })
            })
            .map(|mask| {
                let signs: Vec<i8> = (0..n)
                    .map(|g| if mask >> g & 1 == 1 { -1 } else { 1 })
                    .collect();
                SignAssignment::new(names.clone(), &signs).unwrap()
            })
            .collect();
        assert_eq!(
            characters.len(),
            res.valid_assignments.len(),
            "{} {p:?}",
            r.family
        );
        for a in &res.valid_assignments {
            for chi in &characters {
                assert!(res.valid_assignments.contains(&a.product(chi)));
            }
        }
    }
}

#[test]
fn sylow_strategy_agrees_on_two_groups() {
    for (r, p) in rows() {
        if !r.matrix_group().unwrap().order().is_power_of_two() {
            continue;
        }
        let params = r.params(&p).unwrap();
        let direct = enumerate_lifts(r, &params).unwrap();
        let sylow = sylow_strategy(r, &params).unwrap();
        assert_eq!(sylow.strategy, Strategy::Sylow);
        assert!(direct.same_outcome(&sylow), "{} {p:?}", r.family);
    }
}

#[test]
fn sylow_counts_agree_with_direct_for_odd_parts() {
    for family in ["143", "144", "146", "158", "159", "161"] {
        let r = record(family);
        for p in &r.parameter_classes {
            let params = r.params(p).unwrap();
            let direct = enumerate_lifts(r, &params).unwrap();
            let sylow = sylow_strategy(r, &params).unwrap();
            assert_eq!(
                (direct.exists, direct.count),
                (sylow.exists, sylow.count),
                "{family} {p:?}"
            );
        }
    }
}

#[test]
fn param_reduction() {
    let names: Vec<String> = ["k1", "k2", "k3", "k4"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let reduce = |v: &[i64]| {
        let p = ParamValues::from_vector(&names[..v.len()], v).unwrap();
        reduce_params_mod2(&p).vector(&names[..v.len()]).unwrap()
    };
    assert_eq!(reduce(&[2, 3, 0]), [0, 1, 0]);
    assert_eq!(reduce(&[0, 0, 0]), [0, 0, 0]);
    assert_eq!(reduce(&[5, 4, 1, 1]), [1, 0, 1, 1]);
    assert_eq!(reduce(&[-3, -2, 0]), [1, 0, 0]);
}

#[test]
fn trivial_group_has_one_lift() {
    let r = from_json(
        r#"{"family": "pt", "holonomy": "1", "nilpotency_class": 1, "orientable": true,
            "generators": [], "relations": [], "holonomy_matrices": {}}"#,
    )
    .unwrap();
    let res = enumerate_lifts(&r, &ParamValues::new()).unwrap();
    assert!(res.exists);
    assert_eq!(res.count, 1);
    assert_eq!(res.valid_assignments.len(), 1);
    assert!(res.valid_assignments[0].is_empty());
}

#[test]
fn generator_limit() {
    let gens: Vec<String> = (0..25)
        .map(|i| format!(r#"{{"name": "x{i}", "role": "lattice"}}"#))
        .collect();
    let json = format!(
        r#"{{"family": "big", "holonomy": "1", "nilpotency_class": 1, "orientable": true,
            "generators": [{}], "relations": [], "holonomy_matrices": {{}}}}"#,
        gens.join(",")
    );
    let r = from_json(&json).unwrap();
    assert_eq!(
        enumerate_lifts(&r, &ParamValues::new()),
        Err(Error::TooManyGenerators(25))
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn results_depend_on_parameters_mod_2(row in 0usize..127, seed in any::<u64>()) {
        let all = rows();
        let (r, _) = &all[row % all.len()];
        let mut rng = StdRng::seed_from_u64(seed);
        let values: Vec<i64> = r.parameters().iter().map(|_| rng.gen_range(-50..=50)).collect();
        let params = r.params(&values).unwrap();
        let reduced = reduce_params_mod2(&params);
        prop_assert_eq!(lift(r, &params).unwrap(), lift(r, &reduced).unwrap());
    }
}
