use hamel::axioms::{check_coordinate_bounds, BoundFamily};
use hamel::operators::thm13_map;
use hamel::witness::{check_not_cauchy, gen_cor22};
use hamel::{Growth, NormSpec, Rational, Vector, Verdict};

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn first_coordinate_violation(m: i64, samples: u64) -> Verdict {
    let t = thm13_map(Growth::Linear, 2);
    let spec = NormSpec::induced(t.clone(), NormSpec::p(1));
    let images: Vec<Vector> = (1..=samples).map(|n| t.apply_seq(&Vector::chi(n)).unwrap()).collect();
    check_coordinate_bounds(&spec, &BoundFamily::constant(q(m, 1)), &images, &[2]).unwrap().verdict
}

#[test]
fn coordinate_bound_breaks_just_past_m() {
    assert_eq!(first_coordinate_violation(10, 200), Verdict::ViolatedAt(11));
    assert_eq!(first_coordinate_violation(100, 200), Verdict::ViolatedAt(101));
}

#[test]
fn coordinate_bound_with_m_one_first_breaks_at_three() {
    // Tχ_1 = χ_1 - χ_2 and Tχ_2 = -χ_2 both have |π_2| = 1 = ‖χ_n‖_1.
    assert_eq!(first_coordinate_violation(1, 2), Verdict::AllHold);
    assert_eq!(first_coordinate_violation(1, 10), Verdict::ViolatedAt(3));
}

#[test]
fn exponential_growth_needs_pivot_one() {
    let v = gen_cor22();
    let d = v.at(2).sub(&v.at(1));
    let pivot_one = thm13_map(Growth::Exponential(4), 1).apply_seq(d.as_seq().unwrap()).unwrap();
    assert_eq!(pivot_one.pnorm_pow(1), q(17, 4));
    // with pivot χ_2 the n = 2 term folds into the pivot: |1/4 - 4| = 15/4
    let pivot_two = thm13_map(Growth::Exponential(4), 2).apply_seq(d.as_seq().unwrap()).unwrap();
    assert_eq!(pivot_two.pnorm_pow(1), q(15, 4));

    let induced = NormSpec::induced(thm13_map(Growth::Exponential(4), 1), NormSpec::p(1));
    assert_eq!(check_not_cauchy(&v, &induced, &q(1, 1), 60).unwrap().verdict, Verdict::AllHold);
}
