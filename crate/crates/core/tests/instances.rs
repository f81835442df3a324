use moncat::finset::{FinSet, FinSetCat, Label, SetProduct};
use moncat::lawcheck::{check_all, check_law, Fault, Faulty, LawId, SampleSpec};
use moncat::linvec::{ComplexMatrix, FinVecCat, VecProduct, C64};
use moncat::{IsoKind, MonoidalInstance, Point, ProductKind};
use proptest::prelude::*;

fn instances() -> Vec<MonoidalInstance> {
    vec![
        MonoidalInstance::finset(SetProduct::Coproduct),
        MonoidalInstance::finset(SetProduct::Product),
        MonoidalInstance::vec(VecProduct::DirectSum),
        MonoidalInstance::vec(VecProduct::Tensor),
    ]
}

fn object(inst: &MonoidalInstance, n: usize) -> moncat::ObjectHandle {
    match inst.product_kind() {
        ProductKind::Coproduct | ProductKind::Product => inst.set_object(FinSet::numbered("x", n)).unwrap(),
        _ => inst.dim_object(n).unwrap(),
    }
}

#[test]
fn units_are_canonical() {
    let sizes: Vec<usize> = instances().iter().map(|i| i.unit().size()).collect();
    assert_eq!(sizes, vec![0, 1, 0, 1]);
    assert_eq!(instances()[1].unit().as_set().unwrap().elements(), &[Label::Star]);
}

#[test]
fn structural_isos_invert_on_every_instance() {
    for inst in instances() {
        for sizes in [[0, 1, 2], [2, 2, 2], [1, 3, 0]] {
            let objs: Vec<_> = sizes.iter().map(|&n| object(&inst, n)).collect();
            let isos = [
                inst.structural_iso(IsoKind::Associator, &objs).unwrap(),
                inst.structural_iso(IsoKind::LeftUnitor, &objs[..1]).unwrap(),
                inst.structural_iso(IsoKind::RightUnitor, &objs[1..2]).unwrap(),
            ];
            for iso in isos {
                let there = inst.compose(&iso.backward, &iso.forward).unwrap();
                let back = inst.compose(&iso.forward, &iso.backward).unwrap();
                assert!(inst.approx_eq(&there, &inst.identity(&iso.forward.dom()).unwrap()).unwrap());
                assert!(inst.approx_eq(&back, &inst.identity(&iso.forward.cod()).unwrap()).unwrap());
            }
        }
    }
}

#[test]
fn cartesian_associator_on_eight_triples() {
    let inst = MonoidalInstance::finset(SetProduct::Product);
    let bit = inst.set_object(FinSet::new(["0", "1"]).unwrap()).unwrap();
    let alpha = inst.structural_iso(IsoKind::Associator, &[bit.clone(), bit.clone(), bit]).unwrap();
    let f = alpha.forward.as_function().unwrap();
    let l = |s: &str| Label::atom(s);
    let mut count = 0;
    for a in ["0", "1"] {
        for b in ["0", "1"] {
            for c in ["0", "1"] {
                let from = Label::pair(Label::pair(l(a), l(b)), l(c));
                let to = Label::pair(l(a), Label::pair(l(b), l(c)));
                assert_eq!(f.apply_label(&from), Some(&to));
                count += 1;
            }
        }
    }
    assert_eq!(count, 8);
}

#[test]
fn law_reports_are_byte_identical_across_runs() {
    let spec = SampleSpec::new(4, (0, 3), 50);
    let a = serde_json::to_string(&check_all(&FinVecCat::new(VecProduct::Tensor), &spec).unwrap()).unwrap();
    let b = serde_json::to_string(&check_all(&FinVecCat::new(VecProduct::Tensor), &spec).unwrap()).unwrap();
    assert_eq!(a, b);
}

#[test]
fn corrupted_composition_yields_a_counterexample() {
    let spec = SampleSpec::new(1, (0, 3), 200);
    let report = check_law(&Faulty::new(FinSetCat::COPRODUCT, Fault::PerturbedCompose), &spec, LawId::Assoc).unwrap();
    assert!(report.failure_count >= 1);
    let first = &report.failures[0];
    assert_ne!(first.left, first.right);
    assert!(first.inputs.contains("f = "));
}

proptest! {
    #[test]
    fn vector_states_round_trip(v in proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 0..8)) {
        let inst = MonoidalInstance::vec(VecProduct::Tensor);
        let v: Vec<C64> = v.into_iter().map(|(a, b)| C64::new(a, b)).collect();
        let a = inst.dim_object(v.len()).unwrap();
        let s = inst.state_embed(&a, &Point::Vector(v.clone())).unwrap();
        prop_assert_eq!(s.as_matrix().unwrap(), &ComplexMatrix::column(&v));
        prop_assert_eq!(inst.state_extract(&s).unwrap(), Point::Vector(v));
    }

    #[test]
    fn set_states_round_trip(n in 1usize..8, k in 0usize..8) {
        let inst = MonoidalInstance::finset(SetProduct::Product);
        let k = k % n;
        let set = FinSet::numbered("p", n);
        let label = set.label(k).clone();
        let a = inst.set_object(set).unwrap();
        let s = inst.state_embed(&a, &Point::Element(label.clone())).unwrap();
        prop_assert_eq!(inst.state_extract(&s).unwrap(), Point::Element(label));
    }
}
