//! Acceptance gate: one test per criterion, each printing a verdict line
//! (visible with `cargo test --test acceptance -- --nocapture`) and
//! enforcing its time budget where one is stated.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use qsign::chareval::{
    epsilon_classical, epsilon_eval, epsilon_eval_chartable, epsilon_eval_immanant,
    epsilon_eval_tableaux, inv_statistic_check, EvalMethod,
};
use qsign::hecke::{classical_product, mask_expansion_defects, product_one_plus_t};
use qsign::perm::{bruhat_leq, reduced_words, weak_leq, OrderedSetPartition};
use qsign::qmatrix::{r_polys, straighten_with, NcMonomial, NcPolynomial, RewriteStrategy};
use qsign::walks::walk_polynomials;
use qsign::wiring::{
    classical_eval, sigma_direct, sigma_dp, sigma_zalgebra, z_coefficient, WiringDiagram,
};
use qsign::{LaurentPoly, Partition, Permutation, Q1Poly, Word};

fn criterion(number: u32, limit: Option<Duration>, description: &str, body: impl FnOnce()) {
    let start = Instant::now();
    body();
    let elapsed = start.elapsed();
    println!("[criterion {number:02}] PASS ({elapsed:.1?})  {description}");
    if let Some(limit) = limit {
        assert!(
            elapsed <= limit,
            "criterion {number} exceeded its {limit:?} budget: took {elapsed:?}"
        );
    }
}

fn p(s: &str) -> Permutation {
    Permutation::parse(s).unwrap()
}

fn word(n: usize, letters: &[u8]) -> Word {
    Word::new(n, letters.to_vec()).unwrap()
}

fn diagram(n: usize, letters: &[u8]) -> WiringDiagram {
    WiringDiagram::new(word(n, letters))
}

fn lp(pairs: &[(i32, i64)]) -> LaurentPoly {
    LaurentPoly::from_pairs(pairs.iter().copied())
}

fn part(parts: &[u8]) -> Partition {
    Partition::new(parts.to_vec()).unwrap()
}

/// The shared random word corpus used by criteria 8, 9, and 12.
fn shared_corpus() -> Vec<Word> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    (0..200)
        .map(|_| {
            let n = rng.gen_range(2..=4usize);
            let m = rng.gen_range(0..=8usize);
            let letters: Vec<u8> = (0..m).map(|_| rng.gen_range(1..n as u8)).collect();
            Word::new(n, letters).unwrap()
        })
        .collect()
}

#[test]
fn criterion_01_hook_character_of_the_three_letter_word() {
    criterion(1, Some(Duration::from_secs(1)), "eps^(2,1)[1,2,1] = q + q^2, 3 methods", || {
        let d = diagram(3, &[1, 2, 1]);
        let lambda = part(&[2, 1]);
        let expect = lp(&[(2, 1), (4, 1)]);
        for method in EvalMethod::ALL {
            assert_eq!(epsilon_eval(&d, &lambda, method).unwrap(), expect, "{}", method.name());
        }
    });
}

#[test]
fn criterion_02_four_strand_words_differ_by_reduced_expression() {
    criterion(2, Some(Duration::from_secs(1)), "eps^(3,1)[3,2,1,2] = q^2, [3,1,2,1] = 0", || {
        let lambda = part(&[3, 1]);
        for method in EvalMethod::ALL {
            assert_eq!(
                epsilon_eval(&diagram(4, &[3, 2, 1, 2]), &lambda, method).unwrap(),
                lp(&[(4, 1)])
            );
            assert!(epsilon_eval(&diagram(4, &[3, 1, 2, 1]), &lambda, method)
                .unwrap()
                .is_zero());
        }
    });
}

#[test]
fn criterion_03_sigma_of_the_diagonal_monomial() {
    criterion(3, Some(Duration::from_secs(1)), "sigma(x22 x11 x33) = q + q^2, 3 ways", || {
        let d = diagram(3, &[1, 2, 1]);
        let u = p("213");
        let expect = lp(&[(2, 1), (4, 1)]);
        assert_eq!(sigma_dp(&d, &u).remove(&u).unwrap(), expect);
        assert_eq!(sigma_direct(&d, &u, &u), expect);
        assert_eq!(sigma_zalgebra(&d, &u, &u), expect);
        // the intermediate basis-coefficient extractions
        assert_eq!(z_coefficient(&d, &p("123")), lp(&[(0, 1), (2, 1)]));
        assert_eq!(z_coefficient(&d, &p("213")), lp(&[(1, 1), (3, 1)]));
    });
}

#[test]
fn criterion_04_classical_functional_and_expansion() {
    criterion(4, Some(Duration::from_secs(1)), "classical eval = 1; six-term expansion", || {
        let d = diagram(3, &[1, 2, 1]);
        let theta = BTreeMap::from([(p("123"), 1), (p("321"), -1)]);
        assert_eq!(classical_eval(&d, &theta), 1);
        let expect = BTreeMap::from([
            (p("123"), 2),
            (p("213"), 2),
            (p("132"), 1),
            (p("312"), 1),
            (p("231"), 1),
            (p("321"), 1),
        ]);
        assert_eq!(classical_product(d.word()), expect);
    });
}

#[test]
fn criterion_05_walks_match_transitions_over_every_reduced_word() {
    criterion(5, Some(Duration::from_secs(120)), "p = r, n <= 4, every reduced word", || {
        for u in Permutation::all(4) {
            for t in Permutation::all(4) {
                if !weak_leq(&t, &u) {
                    continue;
                }
                let target = u.then(&t.inverse());
                for v in Permutation::all(4) {
                    let transitions = r_polys(&u, &v, &t).unwrap();
                    for w in reduced_words(&target) {
                        assert_eq!(
                            walk_polynomials(&u, &v, &t, &w).unwrap(),
                            transitions,
                            "u={u} v={v} t={t} word={w}"
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_06_transition_triangularity() {
    criterion(6, None, "r = 0 below t u^-1 v in Bruhat order, = 1 there", || {
        for u in Permutation::all(4) {
            for t in Permutation::all(4) {
                if !weak_leq(&t, &u) {
                    continue;
                }
                for v in Permutation::all(4) {
                    let bottom = t.then(&u.inverse()).then(&v);
                    let table = r_polys(&u, &v, &t).unwrap();
                    assert_eq!(table.get(&bottom), Some(&Q1Poly::one()));
                    for (w, c) in &table {
                        assert!(
                            c.is_zero() || bruhat_leq(&bottom, w),
                            "u={u} v={v} t={t}: nonzero at {w} below {bottom}"
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_07_transition_special_values() {
    criterion(7, None, "r_(ws,w,e)[s] = r_(w,w,e)[e] = 1; r_(w,w,e)[s] = q1[ws<w]", || {
        let e = Permutation::identity(4);
        for w in Permutation::all(4) {
            for s in 1..4u8 {
                let ws = w.right_mul_gen(s);
                let s_perm = e.right_mul_gen(s);
                let from_ws = r_polys(&ws, &w, &e).unwrap();
                assert_eq!(from_ws.get(&s_perm), Some(&Q1Poly::one()), "w={w} s={s}");
                let from_w = r_polys(&w, &w, &e).unwrap();
                assert_eq!(from_w.get(&e), Some(&Q1Poly::one()), "w={w}");
                let expected_at_s = if ws.length() < w.length() {
                    Some(Q1Poly::gen())
                } else {
                    None
                };
                assert_eq!(from_w.get(&s_perm), expected_at_s.as_ref(), "w={w} s={s}");
            }
        }
    });
}

#[test]
fn criterion_08_defect_expansion_oracle() {
    criterion(8, Some(Duration::from_secs(60)), "mask expansion = Hecke product, 200 words", || {
        for w in shared_corpus() {
            assert_eq!(mask_expansion_defects(&w), product_one_plus_t(&w), "{w}");
        }
    });
}

#[test]
fn criterion_09_sigma_reads_off_hecke_coefficients() {
    criterion(9, None, "sigma_dp(d, e)[w] = q^l(w) a_w, 200 words", || {
        for wd in shared_corpus() {
            let d = WiringDiagram::new(wd.clone());
            let table = sigma_dp(&d, &Permutation::identity(wd.n()));
            let h = product_one_plus_t(&wd);
            assert_eq!(table.len(), h.num_terms(), "{wd}");
            for (w, a) in h.iter() {
                let expect = &LaurentPoly::monomial(w.length() as i32) * a;
                assert_eq!(table.get(w), Some(&expect), "{wd} at {w}");
            }
        }
    });
}

#[test]
fn criterion_10_three_sigma_implementations_agree() {
    criterion(10, Some(Duration::from_secs(120)), "sigma dp/direct/zalgebra, all words n<=3 m<=5", || {
        for n in 2..=3usize {
            let mut words: Vec<Vec<u8>> = vec![vec![]];
            for _ in 0..5 {
                let mut next: Vec<Vec<u8>> = Vec::new();
                for w in &words {
                    if w.len() == 5 {
                        continue;
                    }
                    for letter in 1..n as u8 {
                        let mut ext = w.clone();
                        ext.push(letter);
                        next.push(ext);
                    }
                }
                words.extend(next);
            }
            words.dedup();
            for letters in words {
                let d = diagram(n, &letters);
                for u in Permutation::all(n) {
                    let table = sigma_dp(&d, &u);
                    for w in Permutation::all(n) {
                        let dp = table.get(&w).cloned().unwrap_or_else(LaurentPoly::zero);
                        assert_eq!(sigma_direct(&d, &u, &w), dp, "direct {letters:?} u={u} w={w}");
                        assert_eq!(
                            sigma_zalgebra(&d, &u, &w),
                            dp,
                            "zalgebra {letters:?} u={u} w={w}"
                        );
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_11_classical_specialization() {
    criterion(11, None, "q = 1 equals cycle-labeling values, 100 samples", || {
        assert_eq!(epsilon_classical(&p("234167589"), &part(&[5, 4])).unwrap(), -3);
        let mut rng = ChaCha8Rng::seed_from_u64(0xc1a55);
        for _ in 0..100 {
            let n = rng.gen_range(2..=4usize);
            let m = rng.gen_range(0..=8usize);
            let letters: Vec<u8> = (0..m).map(|_| rng.gen_range(1..n as u8)).collect();
            let wd = word(n, &letters);
            let partitions = Partition::all_of(n);
            let lambda = partitions[rng.gen_range(0..partitions.len())].clone();
            let quantum = epsilon_eval_tableaux(&WiringDiagram::new(wd.clone()), &lambda)
                .unwrap()
                .eval_at_one();
            let classical: i64 = classical_product(&wd)
                .iter()
                .map(|(w, c)| c * epsilon_classical(w, &lambda).unwrap())
                .sum();
            assert_eq!(quantum, classical, "{wd} lambda {lambda}");
        }
    });
}

#[test]
fn criterion_12_signed_methods_land_in_nonnegative_polynomials() {
    criterion(12, None, "immanant and chartable values lie in N[q], 200 words", || {
        let mut tables_checked = 0usize;
        for wd in shared_corpus() {
            let d = WiringDiagram::new(wd.clone());
            for lambda in Partition::all_of(wd.n()) {
                let immanant = epsilon_eval_immanant(&d, &lambda).unwrap();
                let chartable = epsilon_eval_chartable(&d, &lambda).unwrap();
                for value in [&immanant, &chartable] {
                    assert!(
                        value.is_zero() || value.is_nonneg_in_q(),
                        "{wd} lambda {lambda}: {value}"
                    );
                }
                tables_checked += 1;
            }
        }
        assert!(tables_checked > 200);
    });
}

#[test]
fn criterion_13_straightening_confluence_and_idempotence() {
    criterion(13, Some(Duration::from_secs(60)), "leftmost = rightmost on 500 monomials", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x57a1);
        for _ in 0..500 {
            let degree = rng.gen_range(0..=5usize);
            let factors: Vec<(u8, u8)> =
                (0..degree).map(|_| (rng.gen_range(1..=3), rng.gen_range(1..=3))).collect();
            let input = NcPolynomial::monomial(NcMonomial::new(factors).unwrap());
            let left = straighten_with(&input, RewriteStrategy::Leftmost);
            let right = straighten_with(&input, RewriteStrategy::Rightmost);
            assert_eq!(left, right);
            assert_eq!(straighten_with(&left, RewriteStrategy::Leftmost), left);
        }
    });
}

#[test]
fn criterion_14_inverted_pair_statistic_for_fully_commutative_words() {
    criterion(14, None, "cross = 0 and incross = inv on all 321,3412-avoiding w in S4", || {
        let mut checked = 0usize;
        for w in Permutation::all(4) {
            if !w.is_321_and_3412_avoiding() {
                continue;
            }
            for wd in reduced_words(&w) {
                let d = WiringDiagram::new(wd);
                for lambda in Partition::all_of(4) {
                    assert!(inv_statistic_check(&d, &lambda).unwrap(), "w={w} lambda {lambda}");
                    checked += 1;
                }
            }
        }
        assert!(checked >= 13 * 5, "expected every avoiding permutation covered, got {checked}");
    });
}

#[test]
fn acceptance_support_per_block_refinement() {
    // the per-assignment refinement behind the signed/subtraction-free match:
    // for each ordered set partition, the signed inner sum equals the tableau
    // weight sum restricted to that assignment
    let d = diagram(3, &[1, 2, 1]);
    let lambda = part(&[2, 1]);
    let mut per_blocks: Vec<LaurentPoly> = Vec::new();
    for blocks in OrderedSetPartition::enumerate(3, &lambda).unwrap() {
        per_blocks.push(qsign::chareval::immanant_inner_sum(&d, &lambda, &blocks).unwrap());
    }
    let mut displays: Vec<String> = per_blocks.iter().map(|v| v.to_string()).collect();
    displays.sort();
    assert_eq!(displays, vec!["0", "q", "q^2"]);
}
