use proptest::prelude::*;

use diffalg::construct::{build_three, ThreeParams, ThreeTemplate};
use diffalg::rewrite::{check_triple, is_pbw, normalize, normalize_all_paths, rewrite_pair, DEFAULT_MAX_STATES};
use diffalg::{PbwMonomial, PbwPolynomial, Presentation, Scalar, Word};

fn s(v: i64) -> Scalar {
    Scalar::from_int(v)
}

fn a_one(x: [i64; 3]) -> Presentation {
    let t = ThreeTemplate {
        params: ThreeParams::AI { g: s(1) },
        x: x.map(s),
    };
    build_three(&t).unwrap()
}

fn word(letters: &[usize]) -> Word {
    Word::new(letters.to_vec())
}

fn poly(terms: &[(&[(usize, u32)], i64)]) -> PbwPolynomial {
    let mut out = PbwPolynomial::zero();
    for (runs, c) in terms {
        out.add_term(PbwMonomial::from_runs(runs.to_vec()).unwrap(), &s(*c));
    }
    out
}

#[test]
fn commutator_rule() {
    let p = a_one([1, 2, 3]);
    let expected = poly(&[(&[(2, 1), (1, 1)], 1), (&[(1, 1)], 2), (&[(2, 1)], -1)]);
    assert_eq!(rewrite_pair(&p, 1, 2).unwrap(), expected);
    assert_eq!(normalize(&p, &word(&[1, 2])).unwrap(), expected);
}

#[test]
fn ordered_word_normalizes_to_itself() {
    let p = a_one([1, 2, 3]);
    let nf = normalize(&p, &word(&[3, 3, 1])).unwrap();
    assert_eq!(nf, poly(&[(&[(3, 2), (1, 1)], 1)]));
    assert_eq!(nf.to_string(), "1 * D3^2 D1");
}

#[test]
fn every_path_agrees_on_a_valid_commutator_algebra() {
    let p = a_one([1, 2, 3]);
    let w = word(&[1, 2, 3]);
    let all = normalize_all_paths(&p, &w, DEFAULT_MAX_STATES).unwrap();
    assert_eq!(all, vec![normalize(&p, &w).unwrap()]);
}

#[test]
fn broken_commutator_algebra_has_two_normal_forms() {
    let mut p = a_one([1, 2, 3]);
    p.set_pair(2, 3, s(2), s(2));
    let all = normalize_all_paths(&p, &word(&[1, 2, 3]), DEFAULT_MAX_STATES).unwrap();
    assert!(all.len() >= 2, "{all:?}");
    assert!(!check_triple(&p, 1, 2, 3).unwrap().passed());
    assert!(!is_pbw(&p).passed);
}

#[test]
fn homogeneous_triple_passes() {
    let mut p = Presentation::new(3);
    p.set_pair(1, 2, s(1), s(7));
    p.set_pair(1, 3, s(1), Scalar::ratio(-2, 3));
    p.set_pair(2, 3, s(1), s(5));
    assert!(is_pbw(&p).passed);
    let nf = normalize(&p, &word(&[1, 2, 3])).unwrap();
    assert_eq!(
        nf,
        PbwPolynomial::monomial(
            PbwMonomial::from_runs(vec![(3, 1), (2, 1), (1, 1)]).unwrap(),
            Scalar::ratio(-70, 3)
        )
    );
}

#[test]
fn b1_with_r_in_the_middle_passes() {
    let t = ThreeTemplate {
        params: ThreeParams::B1 {
            r: diffalg::construct::Slot::Beta,
            g: s(2),
            g_r: s(3),
            lambda: s(1),
        },
        x: [s(1), s(0), s(1)],
    };
    assert!(is_pbw(&build_three(&t).unwrap()).passed);
}

#[test]
fn mixed_symmetric_and_antisymmetric_triples_fail() {
    let mut p = Presentation::new(4);
    for a in 1..=4 {
        p.set_x(a, s(a as i64));
    }
    for (a, b) in [(1, 2), (1, 3), (2, 3)] {
        p.set_pair(a, b, s(1), s(1));
    }
    p.set_pair(1, 4, s(1), s(0));
    p.set_pair(2, 4, s(2), s(0));
    p.set_pair(3, 4, s(3), s(0));
    let report = is_pbw(&p);
    assert!(!report.passed);
    assert_eq!(report.triples_checked, 4);
    let failing: Vec<_> = report.failures.iter().map(|f| f.triple).collect();
    assert!(!failing.is_empty());
    assert!(failing.iter().all(|t| t.2 == 4), "{failing:?}");
    assert!(report.failures.iter().all(|f| !f.difference.is_zero()));
}

#[test]
fn degenerate_pair_only_blocks_its_own_triples() {
    let mut p = a_one([1, 2, 3]);
    p.set_pair(1, 2, s(0), s(1));
    let report = is_pbw(&p);
    assert!(!report.passed);
    assert_eq!(report.degenerate, vec![(1, 2)]);
    assert_eq!(report.triples_checked, 0);
    assert!(normalize(&p, &word(&[2, 3])).is_ok());
    assert!(normalize(&p, &word(&[1, 2])).is_err());
}

fn q_presentation() -> impl Strategy<Value = (Presentation, Vec<usize>)> {
    (
        prop::collection::vec((-3i64..=3, 1i64..=3), 6),
        prop::collection::vec(1usize..=4, 0..6),
    )
        .prop_map(|(qs, w)| {
            let mut p = Presentation::new(4);
            let pairs = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
            for ((a, b), (n, d)) in pairs.into_iter().zip(qs) {
                p.set_pair(a, b, s(1), Scalar::ratio(n, d));
            }
            (p, w)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn homogeneous_normal_form_is_one_reordered_monomial((p, letters) in q_presentation()) {
        let w = Word::new(letters.clone());
        let nf = normalize(&p, &w).unwrap();
        let mut sorted = letters;
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        let m = PbwMonomial::from_word(&Word::new(sorted)).unwrap();
        let coeff = nf.coeff(&m);
        prop_assert!(nf.len() <= 1);
        prop_assert_eq!(nf, PbwPolynomial::monomial(m, coeff));
    }

    #[test]
    fn normalize_is_linear_in_concatenation(x in prop::array::uniform3(prop::sample::select(vec![-2i64, -1, 1, 2])), l in prop::collection::vec(1usize..=3, 0..4), r in prop::collection::vec(1usize..=3, 0..4)) {
        // Normal forms of a PBW algebra respect multiplication: nf(uv) = nf(nf(u) nf(v)).
        let p = a_one(x);
        let u = normalize(&p, &Word::new(l.clone())).unwrap();
        let v = normalize(&p, &Word::new(r.clone())).unwrap();
        let mut product = diffalg::poly::WordPolynomial::zero();
        for (mu, cu) in u.terms() {
            for (mv, cv) in v.terms() {
                let mut w = mu.to_word().0;
                w.extend(mv.to_word().0);
                product.add_term(Word::new(w), &(cu * cv));
            }
        }
        let whole: Vec<usize> = l.into_iter().chain(r).collect();
        prop_assert_eq!(normalize(&p, &Word::new(whole)).unwrap(), diffalg::rewrite::normalize_poly(&p, &product).unwrap());
    }
}
