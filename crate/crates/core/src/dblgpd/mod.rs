//! Double groupoids: labeled squares over a crossed module, commutative
//! squares □G with connections, cubes, and the Eckmann-Hilton argument.

pub mod comm;
pub mod cube;
pub mod eckmann_hilton;
pub mod square;

pub use comm::{comm_compose_h, comm_compose_v, row_uniqueness, CommError, CommSquare, RowVerdict};
pub use cube::{
    commutative_cube_check, cube_compose, cube_compose_check, Axis, Cube, CubeError, CubeFace, CubeVerdict, FaceFailure,
    GlueVerdict,
};
pub use eckmann_hilton::{eckmann_hilton_check, EhConclusion, EhError, EhInstance, EhReport, PremiseFailure};
pub use square::{Direction, DoubleGroupoidXM, Interchange, LabeledSquare, SquareError};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::groupoid::{Arrow, FiniteGroupoid, Obj};
    use crate::guard::SizeGuard;
    use crate::xmod::{check_axioms, find_isomorphism, samples};

    fn c2_dg() -> DoubleGroupoidXM {
        DoubleGroupoidXM::from_xmod(&samples::c2_trivial_boundary()).unwrap()
    }

    #[test]
    fn carrier_sizes() {
        assert_eq!(c2_dg().len(), 16);
        assert_eq!(DoubleGroupoidXM::from_xmod(&samples::c2_identity()).unwrap().len(), 16);
        assert_eq!(DoubleGroupoidXM::from_xmod(&samples::a3_in_s3()).unwrap().len(), 648);
        let trivial = DoubleGroupoidXM::from_xmod(&samples::trivial_over_c2()).unwrap();
        // Trivial M: one square per commuting boundary, i.e. per (g, h, a).
        assert_eq!(trivial.len(), 8);
        assert!(matches!(
            DoubleGroupoidXM::from_xmod(&samples::s3_trivial_over_c2()),
            Err(SquareError::Axioms(_))
        ));
    }

    #[test]
    fn horizontal_example() {
        let dg = c2_dg();
        let (one, p) = (Arrow(0), Arrow(1));
        let s1 = dg.square(1, p, one, p, one).unwrap();
        let s2 = dg.square(1, p, p, one, one).unwrap();
        assert_eq!(dg.hcompose(&s1, &s2).unwrap(), dg.double_identity(Obj(0)));
    }

    #[test]
    fn every_operation_respects_the_boundary_law() {
        for xm in [samples::c2_trivial_boundary(), samples::c2_identity(), samples::interval_c2()] {
            let dg = DoubleGroupoidXM::from_xmod(&xm).unwrap();
            let p = dg.base();
            for s in dg.carrier() {
                dg.check(s).unwrap();
                dg.check(&dg.hinverse(s)).unwrap();
                dg.check(&dg.vinverse(s)).unwrap();
                for t in dg.carrier() {
                    if let Ok(c) = dg.hcompose(s, t) {
                        dg.check(&c).unwrap();
                    }
                    if let Ok(c) = dg.vcompose(s, t) {
                        dg.check(&c).unwrap();
                    }
                }
            }
            for a in p.arrows() {
                for s in [
                    dg.hidentity(a),
                    dg.videntity(a),
                    dg.connection_neg(a),
                    dg.connection_pos(a),
                ] {
                    dg.check(&s).unwrap();
                    assert!(dg.is_thin(&s));
                }
            }
        }
    }

    #[test]
    fn groupoid_laws_in_each_direction() {
        let dg = DoubleGroupoidXM::from_xmod(&samples::c2_identity()).unwrap();
        let p = dg.base();
        for s in dg.carrier() {
            assert_eq!(dg.hcompose(&dg.hidentity(s.left), s).unwrap(), *s);
            assert_eq!(dg.hcompose(s, &dg.hidentity(s.right)).unwrap(), *s);
            assert_eq!(dg.vcompose(&dg.videntity(s.top), s).unwrap(), *s);
            assert_eq!(dg.vcompose(s, &dg.videntity(s.bottom)).unwrap(), *s);
            assert_eq!(dg.hcompose(s, &dg.hinverse(s)).unwrap(), dg.hidentity(s.left));
            assert_eq!(dg.hcompose(&dg.hinverse(s), s).unwrap(), dg.hidentity(s.right));
            assert_eq!(dg.vcompose(s, &dg.vinverse(s)).unwrap(), dg.videntity(s.top));
            assert_eq!(dg.vcompose(&dg.vinverse(s), s).unwrap(), dg.videntity(s.bottom));
        }
        for x in p.objects() {
            assert_eq!(dg.connection_neg(p.identity(x)), dg.double_identity(x));
        }
    }

    #[test]
    fn interchange_on_c2_carrier() {
        let dg = c2_dg();
        let c = dg.carrier();
        let mut arrays = 0;
        for a in c {
            for b in c.iter().filter(|b| b.left == a.right) {
                for d in c.iter().filter(|d| d.top == a.bottom) {
                    for e in c.iter().filter(|e| e.top == b.bottom && e.left == d.right) {
                        assert!(dg.interchange_check(a, b, d, e).unwrap().holds());
                        arrays += 1;
                    }
                }
            }
        }
        assert!(arrays > 0);
    }

    #[test]
    fn array_shapes() {
        let dg = c2_dg();
        let s = dg.carrier()[5];
        assert_eq!(dg.compose_array(&[vec![s]]).unwrap(), s);
        let id = dg.double_identity(Obj(0));
        assert_eq!(dg.compose_array(&[vec![id; 4]]).unwrap(), id);
        assert_eq!(dg.compose_array(&[]), Err(SquareError::ArrayShape));
        let p = dg.videntity(Arrow(1));
        assert!(matches!(
            dg.compose_array(&[vec![id, id], vec![id, p]]),
            Err(SquareError::ArrayMismatch { row: 0, col: 1, .. })
        ));
    }

    #[test]
    fn round_trip_recovers_each_crossed_module() {
        let guard = SizeGuard::default();
        for (name, xm) in samples::valid() {
            let dg = DoubleGroupoidXM::from_xmod(&xm).unwrap();
            let back = dg.to_xmod();
            assert!(check_axioms(&back).passed(), "{name}");
            assert!(find_isomorphism(&xm, &back, &guard).unwrap().is_some(), "{name}");
        }
    }

    #[test]
    fn comm_squares_compose() {
        let z = FiniteGroupoid::from_group(&FiniteGroup::cyclic(20));
        let a = |k: usize| Arrow(k);
        let q1 = CommSquare::new(&z, a(1), a(2), a(3), a(2)).unwrap();
        let q2 = CommSquare::new(&z, a(2), a(3), a(5), a(4)).unwrap();
        let c = comm_compose_h(&z, &q1, &q2).unwrap();
        assert!(c.commutes(&z));
        assert_eq!(z.compose(c.left, c.bottom), a(9));
        assert!(CommSquare::new(&z, a(1), a(2), a(3), a(3)).is_err());
        let id = CommSquare::videntity(&z, a(0));
        assert_eq!(comm_compose_v(&z, &id, &id), Some(id));
    }

    #[test]
    fn row_uniqueness_basic() {
        let s3 = FiniteGroupoid::from_group(&FiniteGroup::symmetric(3));
        let e = s3.identity(Obj(0));
        for p in s3.arrows() {
            let r = row_uniqueness(&s3, &[CommSquare::videntity(&s3, p)]).unwrap();
            assert!(r.holds());
        }
        let id_row = vec![CommSquare::videntity(&s3, e); 3];
        assert_eq!(row_uniqueness(&s3, &id_row).unwrap().top, e);
        let q = CommSquare::hidentity(&s3, Arrow(1));
        assert_eq!(row_uniqueness(&s3, &[q]), Err(CommError::OuterNotIdentity));
    }

    #[test]
    fn identity_cube_and_perturbation() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(7));
        let e = Arrow(0);
        let c = Cube::from_potential(&g, [[[e; 2]; 2]; 2]);
        assert!(commutative_cube_check(&g, &c).unwrap().commutative());
        let phi = [[[Arrow(0), Arrow(3)], [Arrow(5), Arrow(1)]], [[Arrow(2), Arrow(6)], [Arrow(4), Arrow(4)]]];
        let c = Cube::from_potential(&g, phi);
        let v = commutative_cube_check(&g, &c).unwrap();
        assert!(v.commutative(), "{v:?}");
        let mut bad = c;
        bad.y[1][0] = Arrow((bad.y[1][0].0 + 1) % 7);
        let v = commutative_cube_check(&g, &bad).unwrap();
        assert!(!v.commutative());
        assert!(v.face_failure.is_some());
    }

    #[test]
    fn degenerate_cubes_are_units() {
        let g = FiniteGroupoid::from_group(&FiniteGroup::cyclic(5));
        let phi = [[[Arrow(1), Arrow(3)], [Arrow(0), Arrow(2)]], [[Arrow(4), Arrow(4)], [Arrow(2), Arrow(1)]]];
        let c = Cube::from_potential(&g, phi);
        for axis in [Axis::X, Axis::Y, Axis::Z] {
            let after = c.degenerate(&g, axis, 1);
            assert_eq!(cube_compose(&g, &c, &after, axis).unwrap(), c);
            let before = c.degenerate(&g, axis, 0);
            assert_eq!(cube_compose(&g, &before, &c, axis).unwrap(), c);
            assert!(cube_compose_check(&g, &c, &after, axis).unwrap().holds());
        }
    }

    #[test]
    fn eckmann_hilton_instances() {
        let c5 = EhInstance::from_group(&FiniteGroup::cyclic(5));
        assert!(eckmann_hilton_check(&c5).passed());
        let s3 = EhInstance::from_group(&FiniteGroup::symmetric(3));
        let r = eckmann_hilton_check(&s3);
        assert!(!r.premises_hold());
        assert!(matches!(r.premise_failures[0], PremiseFailure::Interchange { .. }));
        let dg = c2_dg();
        let inst = EhInstance::from_double_groupoid(&dg, Obj(0));
        assert_eq!(inst.len(), 2);
        assert!(eckmann_hilton_check(&inst).passed());
    }
}
