//! Evaluation of the induced sign characters ε_q^λ of H_n(q) at products
//! (1 + T_{s_{i_1}}) ... (1 + T_{s_{i_m}}), by three independent routes.
//!
//! * [`epsilon_eval_tableaux`] — the subtraction-free formula: a sum of
//!   `q^{incross + cross/2}` over *G-tableaux*, pairs (U, I) of an
//!   identity-type covering path family U of the word's wiring diagram and
//!   an ordered set partition I of {1..n} with block sizes λ, subject to no
//!   meeting of U having both paths in one block.
//! * [`epsilon_eval_immanant`] — for each ordered set partition, a signed
//!   sum of σ_B values over the parabolic subgroup permuting within blocks.
//! * [`epsilon_eval_chartable`] — pair the character table from the quantum
//!   matrix-algebra construction with the coefficients of the expanded
//!   Hecke product.
//!
//! The q = 1 shadow [`epsilon_classical`] counts labelings of a
//! permutation's cycles, and two special-case checks round out the module:
//! [`kl_eval_321hex`] evaluates via reduced words of a 321-hexagon-avoiding
//! permutation (where the result is word-independent), and
//! [`inv_statistic_check`] verifies the collapse of tableau statistics for
//! reduced words of permutations avoiding 321 and 3412.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};
use crate::hecke::product_one_plus_t;
use crate::laurent::LaurentPoly;
use crate::perm::{
    multinomial, reduced_words, young_subgroup, OrderedSetPartition, Partition, Permutation,
};
use crate::qmatrix::epsilon_char_table;
use crate::wiring::{all_masks, PathFamily, WiringDiagram};

/// A G-tableau: an identity-type covering path family together with a
/// compatible ordered set partition.
#[derive(Clone, Debug)]
pub struct GTableau {
    family: PathFamily,
    blocks: OrderedSetPartition,
}

impl GTableau {
    pub fn family(&self) -> &PathFamily {
        &self.family
    }

    pub fn blocks(&self) -> &OrderedSetPartition {
        &self.blocks
    }

    /// Number of crossings of the underlying family.
    pub fn cross(&self) -> usize {
        self.family.cross()
    }

    /// Inverted noncrossings: meetings that bounce with the top path in an
    /// earlier block than the bottom path.
    pub fn incross(&self) -> usize {
        self.family
            .meets()
            .iter()
            .filter(|m| {
                !m.crossing && self.blocks.block_of(m.top) < self.blocks.block_of(m.bot)
            })
            .count()
    }

    /// `q^{incross} q^{cross/2}`.
    pub fn weight(&self) -> LaurentPoly {
        LaurentPoly::monomial(2 * self.incross() as i32 + self.cross() as i32)
    }
}

/// All G-tableaux of the diagram with block sizes λ, grouped family-first:
/// masks in increasing binary order, then set partitions in their
/// enumeration order.
pub fn enumerate_tableaux(d: &WiringDiagram, lambda: &Partition) -> Result<Vec<GTableau>> {
    lambda.check_sum(d.n())?;
    let partitions = OrderedSetPartition::enumerate(d.n(), lambda)?;
    let mut out = Vec::new();
    for mask in all_masks(d) {
        let family = PathFamily::from_mask(d, &mask).expect("mask has the right length");
        if !family.type_perm().is_identity() {
            continue;
        }
        for blocks in &partitions {
            let separated = family
                .meets()
                .iter()
                .all(|m| blocks.block_of(m.top) != blocks.block_of(m.bot));
            if separated {
                out.push(GTableau { family: family.clone(), blocks: blocks.clone() });
            }
        }
    }
    Ok(out)
}

/// ε_q^λ of the word's product, as the weight sum over G-tableaux.
pub fn epsilon_eval_tableaux(d: &WiringDiagram, lambda: &Partition) -> Result<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    for t in enumerate_tableaux(d, lambda)? {
        out = &out + &t.weight();
    }
    Ok(out)
}

/// The signed σ_B sum attached to one ordered set partition: with u the
/// block-wise increasing permutation of I, `Σ_y (-1)^{ℓ(y)} q^{-ℓ(y)/2}
/// σ_B(x^{u, yu})` over y in the parabolic subgroup of shape λ.
pub fn immanant_inner_sum(
    d: &WiringDiagram,
    lambda: &Partition,
    blocks: &OrderedSetPartition,
) -> Result<LaurentPoly> {
    let u = blocks.concat_permutation();
    let table = crate::wiring::sigma_dp(d, &u);
    let mut inner = LaurentPoly::zero();
    for y in young_subgroup(lambda, d.n())? {
        let len = y.length() as i32;
        let sign = if len % 2 == 0 { 1 } else { -1 };
        let sigma = table.get(&y.then(&u)).cloned().unwrap_or_else(LaurentPoly::zero);
        inner = &inner + &(&LaurentPoly::term(-len, sign) * &sigma);
    }
    Ok(inner)
}

/// ε_q^λ of the word's product, as a sum of signed σ_B sums over ordered
/// set partitions.
pub fn epsilon_eval_immanant(d: &WiringDiagram, lambda: &Partition) -> Result<LaurentPoly> {
    lambda.check_sum(d.n())?;
    let mut out = LaurentPoly::zero();
    for blocks in OrderedSetPartition::enumerate(d.n(), lambda)? {
        out = &out + &immanant_inner_sum(d, lambda, &blocks)?;
    }
    Ok(out)
}

/// ε_q^λ of the word's product, by pairing the character table with the
/// expanded Hecke product.
pub fn epsilon_eval_chartable(d: &WiringDiagram, lambda: &Partition) -> Result<LaurentPoly> {
    lambda.check_sum(d.n())?;
    let table = epsilon_char_table(d.n(), lambda)?;
    let product = product_one_plus_t(d.word());
    let mut out = LaurentPoly::zero();
    for (w, a) in product.iter() {
        if let Some(chi) = table.get(w) {
            out = &out + &(a * chi);
        }
    }
    Ok(out)
}

/// Evaluation route selector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum EvalMethod {
    Tableaux,
    Immanant,
    CharTable,
}

impl EvalMethod {
    pub const ALL: [EvalMethod; 3] = [Self::Tableaux, Self::Immanant, Self::CharTable];

    pub fn name(&self) -> &'static str {
        match self {
            Self::Tableaux => "tableaux",
            Self::Immanant => "immanant",
            Self::CharTable => "chartable",
        }
    }
}

/// ε_q^λ of the word's product by the chosen route.
pub fn epsilon_eval(
    d: &WiringDiagram,
    lambda: &Partition,
    method: EvalMethod,
) -> Result<LaurentPoly> {
    match method {
        EvalMethod::Tableaux => epsilon_eval_tableaux(d, lambda),
        EvalMethod::Immanant => epsilon_eval_immanant(d, lambda),
        EvalMethod::CharTable => epsilon_eval_chartable(d, lambda),
    }
}

/// The classical induced sign character ε^λ(w) of the symmetric group:
/// `(-1)^{inv(w)}` times the number of ways to label w's cycles with
/// 1..λ.len() so the cycles labeled i have total length λ_i.
pub fn epsilon_classical(w: &Permutation, lambda: &Partition) -> Result<i64> {
    lambda.check_sum(w.n())?;
    let lengths: Vec<u8> = w.cycles().iter().map(|c| c.len() as u8).collect();
    fn count(
        lengths: &[u8],
        remaining: &mut Vec<u8>,
        memo: &mut HashMap<(usize, Vec<u8>), i64>,
        idx: usize,
    ) -> i64 {
        if idx == lengths.len() {
            return 1;
        }
        let key = (idx, remaining.clone());
        if let Some(&v) = memo.get(&key) {
            return v;
        }
        let mut total = 0;
        for i in 0..remaining.len() {
            if remaining[i] >= lengths[idx] {
                remaining[i] -= lengths[idx];
                total += count(lengths, remaining, memo, idx + 1);
                remaining[i] += lengths[idx];
            }
        }
        memo.insert(key, total);
        total
    }
    let mut remaining = lambda.parts().to_vec();
    let labelings = count(&lengths, &mut remaining, &mut HashMap::new(), 0);
    let sign = if w.length() % 2 == 0 { 1 } else { -1 };
    Ok(sign * labelings)
}

/// ε_q^λ(T_w) for a 321-hexagon-avoiding permutation, where the tableau
/// formula applied to any reduced word of w yields `q^{ℓ(w)} P_w(q^{-1})`
/// times a fixed factor — in particular the same polynomial for every
/// reduced word.  Evaluates over all reduced words (or a spread of 10 when
/// there are more than 1000), checks they agree, and returns the value.
pub fn kl_eval_321hex(w: &Permutation, lambda: &Partition) -> Result<LaurentPoly> {
    lambda.check_sum(w.n())?;
    if !w.is_321_hexagon_avoiding() {
        return Err(Error::PatternPrecondition {
            perm: w.to_string(),
            required: "321-hexagon-avoiding".into(),
        });
    }
    let words = reduced_words(w);
    let chosen: Vec<_> = if words.len() <= 1000 {
        words.iter().collect()
    } else {
        (0..10).map(|k| &words[k * (words.len() - 1) / 9]).collect()
    };
    let mut value: Option<LaurentPoly> = None;
    for word in chosen {
        let v = epsilon_eval_tableaux(&WiringDiagram::new(word.clone()), lambda)?;
        match &value {
            None => value = Some(v),
            Some(prev) => assert_eq!(prev, &v, "reduced word {word} disagrees"),
        }
    }
    Ok(value.unwrap_or_else(|| {
        // the identity has the empty word as its one reduced word
        LaurentPoly::constant(multinomial(w.n(), lambda))
    }))
}

/// For a word reduced for a permutation avoiding 321 and 3412: checks that
/// every G-tableau is crossing-free and its incross equals the number of
/// distinct path pairs that meet with the top path in an earlier block.
pub fn inv_statistic_check(d: &WiringDiagram, lambda: &Partition) -> Result<bool> {
    lambda.check_sum(d.n())?;
    let w = d.word().permutation();
    if !d.word().is_reduced() {
        return Err(Error::NotReduced { word: d.word().to_string(), target: w.to_string() });
    }
    if !w.is_321_and_3412_avoiding() {
        return Err(Error::PatternPrecondition {
            perm: w.to_string(),
            required: "321- and 3412-avoiding".into(),
        });
    }
    for t in enumerate_tableaux(d, lambda)? {
        if t.cross() != 0 {
            return Ok(false);
        }
        let inverted_pairs: BTreeSet<(u8, u8)> = t
            .family()
            .meets()
            .iter()
            .filter(|m| t.blocks().block_of(m.top) < t.blocks().block_of(m.bot))
            .map(|m| (m.top, m.bot))
            .collect();
        if t.incross() != inverted_pairs.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::perm::Word;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn diagram(n: usize, letters: &[u8]) -> WiringDiagram {
        WiringDiagram::new(Word::new(n, letters.to_vec()).unwrap())
    }

    fn lp(pairs: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    fn part(parts: &[u8]) -> Partition {
        Partition::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn headline_evaluation() {
        let d = diagram(3, &[1, 2, 1]);
        let lambda = part(&[2, 1]);
        let tableaux = enumerate_tableaux(&d, &lambda).unwrap();
        assert_eq!(tableaux.len(), 2);
        let mut stats: Vec<(usize, usize)> =
            tableaux.iter().map(|t| (t.incross(), t.cross())).collect();
        stats.sort();
        assert_eq!(stats, vec![(1, 0), (1, 2)]);
        let expect = lp(&[(2, 1), (4, 1)]); // q + q^2
        for method in EvalMethod::ALL {
            assert_eq!(epsilon_eval(&d, &lambda, method).unwrap(), expect, "{}", method.name());
        }
    }

    #[test]
    fn four_strand_values() {
        let lambda = part(&[3, 1]);
        let d = diagram(4, &[3, 2, 1, 2]);
        for method in EvalMethod::ALL {
            assert_eq!(
                epsilon_eval(&d, &lambda, method).unwrap(),
                lp(&[(4, 1)]),
                "{}",
                method.name()
            );
        }
        let d0 = diagram(4, &[3, 1, 2, 1]);
        assert!(enumerate_tableaux(&d0, &lambda).unwrap().is_empty());
        for method in EvalMethod::ALL {
            assert!(epsilon_eval(&d0, &lambda, method).unwrap().is_zero(), "{}", method.name());
        }
    }

    #[test]
    fn empty_word_counts_partitions() {
        let d = diagram(3, &[]);
        let lambda = part(&[2, 1]);
        let tableaux = enumerate_tableaux(&d, &lambda).unwrap();
        assert_eq!(tableaux.len(), 3);
        assert!(tableaux.iter().all(|t| t.weight() == LaurentPoly::one()));
        assert_eq!(
            epsilon_eval_tableaux(&d, &lambda).unwrap(),
            LaurentPoly::constant(multinomial(3, &lambda))
        );
    }

    #[test]
    fn braid_equivalent_word_agrees() {
        let d = diagram(3, &[2, 1, 2]);
        let lambda = part(&[2, 1]);
        for method in EvalMethod::ALL {
            assert_eq!(epsilon_eval(&d, &lambda, method).unwrap(), lp(&[(2, 1), (4, 1)]));
        }
    }

    #[test]
    fn per_partition_inner_sums() {
        // the immanant route refines the tableau sum partition by partition
        let d = diagram(3, &[1, 2, 1]);
        let lambda = part(&[2, 1]);
        let mut by_blocks: BTreeMap<String, LaurentPoly> = BTreeMap::new();
        for t in enumerate_tableaux(&d, &lambda).unwrap() {
            let key = t.blocks().to_string();
            let entry = by_blocks.entry(key).or_insert_with(LaurentPoly::zero);
            *entry = &*entry + &t.weight();
        }
        for blocks in OrderedSetPartition::enumerate(3, &lambda).unwrap() {
            let inner = immanant_inner_sum(&d, &lambda, &blocks).unwrap();
            let from_tableaux = by_blocks
                .get(&blocks.to_string())
                .cloned()
                .unwrap_or_else(LaurentPoly::zero);
            assert_eq!(inner, from_tableaux, "blocks {blocks}");
        }
    }

    #[test]
    fn classical_character_table_for_hook_of_three() {
        let lambda = part(&[2, 1]);
        let expect = [("123", 3), ("132", -1), ("213", -1), ("231", 0), ("312", 0), ("321", -1)];
        for (w, value) in expect {
            assert_eq!(epsilon_classical(&p(w), &lambda).unwrap(), value, "{w}");
        }
    }

    #[test]
    fn classical_value_on_nine_points() {
        let w = p("234167589");
        assert_eq!(epsilon_classical(&w, &part(&[5, 4])).unwrap(), -3);
    }

    #[test]
    fn classical_identity_value_is_multinomial() {
        for lambda in Partition::all_of(4) {
            let e = Permutation::identity(4);
            assert_eq!(
                epsilon_classical(&e, &lambda).unwrap(),
                multinomial(4, &lambda),
                "{lambda:?}"
            );
        }
    }

    #[test]
    fn tableau_values_specialize_classically() {
        let d = diagram(3, &[1, 2, 1]);
        for lambda in Partition::all_of(3) {
            let quantum = epsilon_eval_tableaux(&d, &lambda).unwrap().eval_at_one();
            let classical: i64 = crate::hecke::classical_product(d.word())
                .iter()
                .map(|(w, c)| c * epsilon_classical(w, &lambda).unwrap())
                .sum();
            assert_eq!(quantum, classical, "{lambda:?}");
        }
    }

    #[test]
    fn reduced_word_evaluation_for_pattern_avoiding_permutations() {
        assert_eq!(
            kl_eval_321hex(&p("21"), &part(&[1, 1])).unwrap(),
            lp(&[(0, 1), (2, 1)])
        );
        assert!(matches!(
            kl_eval_321hex(&p("321"), &part(&[2, 1])),
            Err(Error::PatternPrecondition { .. })
        ));
        // identity: no letters, value is the block-count multinomial
        assert_eq!(
            kl_eval_321hex(&p("123"), &part(&[2, 1])).unwrap(),
            LaurentPoly::constant(3)
        );
    }

    #[test]
    fn inv_statistic_collapse() {
        // 2143 avoids both 321 and 3412; its reduced words pass the check
        for letters in [[1u8, 3], [3, 1]] {
            let d = diagram(4, &letters);
            assert_eq!(d.word().permutation(), p("2143"));
            for lambda in Partition::all_of(4) {
                assert!(inv_statistic_check(&d, &lambda).unwrap(), "{lambda:?}");
            }
        }
        assert!(matches!(
            inv_statistic_check(&diagram(3, &[1, 2, 1]), &part(&[2, 1])),
            Err(Error::PatternPrecondition { .. })
        ));
        assert!(matches!(
            inv_statistic_check(&diagram(3, &[1, 1]), &part(&[2, 1])),
            Err(Error::NotReduced { .. })
        ));
    }

    #[test]
    fn rejects_wrong_partition_size() {
        let d = diagram(3, &[1]);
        assert!(epsilon_eval_tableaux(&d, &part(&[2, 1, 1])).is_err());
        assert!(epsilon_classical(&p("123"), &part(&[2])).is_err());
    }
}
