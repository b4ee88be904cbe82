use spinlift::catalog::bundled_catalog;
use spinlift::extension::{lift_group, lift_group_abstract, lift_group_concrete, Route};
use spinlift::Error;

const CASES: &[(&str, &str, &str, Route)] = &[
    ("1", "1", "C2", Route::Concrete),
    ("4", "C2", "C4", Route::Concrete),
    ("27", "C2×C2", "Q8", Route::Concrete),
    ("75", "C4", "C8", Route::Concrete),
    ("103", "D8", "Q16", Route::Concrete),
    ("143", "C3", "C6", Route::Concrete),
    ("158", "S3", "C3⋊C4", Route::Concrete),
    ("168", "C6", "C12", Route::Abstract),
    ("184", "D12", "C3⋊Q8", Route::Abstract),
];

#[test]
fn preimage_groups() {
    let catalog = bundled_catalog().unwrap();
    for &(family, holonomy, lifted, route) in CASES {
        let r = catalog.get(family).unwrap();
        assert_eq!(r.holonomy.as_str(), holonomy);
        let g = lift_group(r).unwrap();
        assert_eq!(g.name.as_str(), lifted, "family {family}");
        assert_eq!(g.route, route);
        assert_eq!(g.order, 2 * g.holonomy_order);
        assert_eq!(g.elements.len(), g.order);
    }
}

#[test]
fn routes_agree() {
    let catalog = bundled_catalog().unwrap();
    for r in catalog.records() {
        let abs = lift_group_abstract(r).unwrap();
        match lift_group_concrete(r) {
            Ok(con) => {
                assert_eq!(con.name, abs.name, "family {}", r.family);
                assert_eq!(con.order, abs.order);
            }
            Err(Error::UnsupportedScalar) => {
                assert!(
                    matches!(r.holonomy.as_str(), "C6" | "D12"),
                    "family {}",
                    r.family
                )
            }
            Err(e) => panic!("family {}: {e}", r.family),
        }
    }
}

#[test]
fn concrete_elements_are_rendered_spin_elements() {
    let catalog = bundled_catalog().unwrap();
    let g = lift_group(catalog.get("4").unwrap()).unwrap();
    let mut elements = g.elements.clone();
    elements.sort();
    assert_eq!(elements, ["-1", "-e1e3", "1", "e1e3"]);
}
