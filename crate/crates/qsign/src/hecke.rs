//! The Iwahori–Hecke algebra H_n(q) of the symmetric group in its standard
//! basis {T_w}, with the products of binomials (1 + T_{s_i}) that this crate
//! evaluates characters against.
//!
//! Multiplication is governed by `T_w T_s = T_{ws}` when the product gets
//! longer and `T_w T_s = (q - 1) T_w + q T_{ws}` when it gets shorter; at
//! q = 1 this collapses to the group algebra Z[S_n].
//!
//! Two independent expansions of `(1 + T_{s_{i_1}}) ... (1 + T_{s_{i_m}})`
//! are provided: the algebraic fold [`product_one_plus_t`], and the
//! combinatorial sum [`mask_expansion_defects`] over covering path families
//! of the word's wiring diagram, weighted by q to the number of defective
//! indices.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::perm::{Permutation, Word};
use crate::wiring::{all_masks, PathFamily, WiringDiagram};

/// An element of H_n(q) written over the standard basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HeckeElement {
    n: usize,
    coords: BTreeMap<Permutation, LaurentPoly>,
}

impl HeckeElement {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, coords: BTreeMap::new() }
    }

    /// The unit T_e.
    pub fn one(n: usize) -> Self {
        Self::from_perm(Permutation::identity(n))
    }

    /// A single basis element T_w.
    pub fn from_perm(w: Permutation) -> Self {
        let n = w.n();
        HeckeElement { n, coords: BTreeMap::from([(w, LaurentPoly::one())]) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn num_terms(&self) -> usize {
        self.coords.len()
    }

    pub fn coeff(&self, w: &Permutation) -> LaurentPoly {
        self.coords.get(w).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Permutation, &LaurentPoly)> {
        self.coords.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Permutation> {
        self.coords.keys()
    }

    fn insert_term(&mut self, w: Permutation, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.coords.entry(w).or_insert_with(LaurentPoly::zero);
        *entry = &*entry + &c;
        if entry.is_zero() {
            // keep the support honest
            self.coords.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, rhs: &HeckeElement) -> Result<HeckeElement> {
        if self.n != rhs.n {
            return Err(Error::SizeMismatch { left: self.n, right: rhs.n });
        }
        let mut out = self.clone();
        for (w, c) in &rhs.coords {
            out.insert_term(w.clone(), c.clone());
        }
        Ok(out)
    }

    /// Right multiplication by the generator T_s.
    pub fn times_gen(&self, s: u8) -> HeckeElement {
        assert!(s >= 1 && (s as usize) < self.n, "generator index out of range");
        let q = LaurentPoly::q();
        let q_minus_one = &q - &LaurentPoly::one();
        let mut out = HeckeElement::zero(self.n);
        for (w, c) in &self.coords {
            let ws = w.right_mul_gen(s);
            if ws.length() > w.length() {
                out.insert_term(ws, c.clone());
            } else {
                out.insert_term(w.clone(), c * &q_minus_one);
                out.insert_term(ws, c * &q);
            }
        }
        out
    }

    /// Right multiplication by (1 + T_s).
    pub fn times_one_plus_gen(&self, s: u8) -> HeckeElement {
        self.add(&self.times_gen(s)).expect("same n by construction")
    }

    /// The q = 1 image in the group algebra Z[S_n], zeros dropped.
    pub fn specialize_at_one(&self) -> BTreeMap<Permutation, i64> {
        self.coords
            .iter()
            .map(|(w, c)| (w.clone(), c.eval_at_one()))
            .filter(|(_, v)| *v != 0)
            .collect()
    }

    /// JSON encoding: `{"n": n, "coords": [{"perm": "...", "poly": [...]}]}`
    /// with coordinates sorted by one-line notation.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "n": self.n,
            "coords": self
                .coords
                .iter()
                .map(|(w, c)| serde_json::json!({"perm": w.to_string(), "poly": c.to_json()}))
                .collect::<Vec<_>>(),
        })
    }

    /// Inverse of [`HeckeElement::to_json`].
    pub fn from_json(v: &serde_json::Value) -> Result<HeckeElement> {
        let n = v
            .get("n")
            .and_then(|x| x.as_u64())
            .ok_or_else(|| Error::Parse("expected integer field \"n\"".into()))?
            as usize;
        let coords = v
            .get("coords")
            .and_then(|x| x.as_array())
            .ok_or_else(|| Error::Parse("expected array field \"coords\"".into()))?;
        let mut out = HeckeElement::zero(n);
        for item in coords {
            let perm = item
                .get("perm")
                .and_then(|x| x.as_str())
                .ok_or_else(|| Error::Parse("expected string field \"perm\"".into()))?;
            let poly = item
                .get("poly")
                .ok_or_else(|| Error::Parse("expected field \"poly\"".into()))?;
            let w = Permutation::parse(perm)?;
            if w.n() != n {
                return Err(Error::SizeMismatch { left: n, right: w.n() });
            }
            out.insert_term(w, LaurentPoly::from_json(poly)?);
        }
        Ok(out)
    }
}

impl fmt::Display for HeckeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coords.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, c) in &self.coords {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) T[{w}]")?;
        }
        Ok(())
    }
}

/// The expanded product `(1 + T_{s_{i_1}}) ... (1 + T_{s_{i_m}})`.
pub fn product_one_plus_t(word: &Word) -> HeckeElement {
    word.letters()
        .iter()
        .fold(HeckeElement::one(word.n()), |h, &s| h.times_one_plus_gen(s))
}

/// The same product in the group algebra at q = 1: for each group element
/// the number of subwords of `word` multiplying to it.
pub fn classical_product(word: &Word) -> BTreeMap<Permutation, i64> {
    let mut counts = BTreeMap::from([(Permutation::identity(word.n()), 1i64)]);
    for &s in word.letters() {
        let mut next = counts.clone();
        for (w, c) in &counts {
            *next.entry(w.right_mul_gen(s)).or_insert(0) += c;
        }
        counts = next;
    }
    counts
}

/// The product expanded combinatorially: summing `q^{dfct(π)} T_{type(π)}`
/// over all covering path families π of the word's wiring diagram.
pub fn mask_expansion_defects(word: &Word) -> HeckeElement {
    let d = WiringDiagram::new(word.clone());
    let mut out = HeckeElement::zero(word.n());
    for mask in all_masks(&d) {
        let fam = PathFamily::from_mask(&d, &mask).expect("mask has the right length");
        let weight = LaurentPoly::monomial(2 * fam.dfct() as i32);
        out.insert_term(fam.type_perm().clone(), weight);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn word(n: usize, letters: &[u8]) -> Word {
        Word::new(n, letters.to_vec()).unwrap()
    }

    fn lp(pairs: &[(i32, i64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(pairs.iter().copied())
    }

    #[test]
    fn quadratic_relation() {
        // T_s^2 = (q - 1) T_s + q T_e
        let t1 = HeckeElement::from_perm(p("213"));
        let square = t1.times_gen(1);
        assert_eq!(square.coeff(&p("213")), lp(&[(2, 1), (0, -1)]));
        assert_eq!(square.coeff(&p("123")), lp(&[(2, 1)]));
        assert_eq!(square.num_terms(), 2);
    }

    #[test]
    fn braid_and_commutation_through_products() {
        // T_1 T_2 T_1 = T_2 T_1 T_2 and T_1 T_3 = T_3 T_1
        let chain = |letters: &[u8]| {
            letters
                .iter()
                .fold(HeckeElement::one(4), |h, &s| h.times_gen(s))
        };
        assert_eq!(chain(&[1, 2, 1]), chain(&[2, 1, 2]));
        assert_eq!(chain(&[1, 3]), chain(&[3, 1]));
    }

    #[test]
    fn product_of_three_binomials() {
        let h = product_one_plus_t(&word(3, &[1, 2, 1]));
        let one_plus_q = lp(&[(0, 1), (2, 1)]);
        let expect = BTreeMap::from([
            (p("123"), one_plus_q.clone()),
            (p("213"), one_plus_q),
            (p("132"), LaurentPoly::one()),
            (p("312"), LaurentPoly::one()),
            (p("231"), LaurentPoly::one()),
            (p("321"), LaurentPoly::one()),
        ]);
        let got: BTreeMap<Permutation, LaurentPoly> =
            h.iter().map(|(w, c)| (w.clone(), c.clone())).collect();
        assert_eq!(got, expect);
    }

    #[test]
    fn classical_product_examples() {
        assert_eq!(
            classical_product(&word(3, &[1, 1])),
            BTreeMap::from([(p("123"), 2), (p("213"), 2)])
        );
        assert_eq!(
            classical_product(&word(3, &[1, 2, 1])),
            BTreeMap::from([
                (p("123"), 2),
                (p("213"), 2),
                (p("132"), 1),
                (p("312"), 1),
                (p("231"), 1),
                (p("321"), 1),
            ])
        );
    }

    #[test]
    fn specialization_matches_classical_product() {
        for letters in [vec![], vec![1u8], vec![1, 1], vec![1, 2, 1], vec![2, 1, 2, 1]] {
            let w = word(3, &letters);
            assert_eq!(product_one_plus_t(&w).specialize_at_one(), classical_product(&w));
        }
    }

    #[test]
    fn mask_expansion_equals_algebraic_product() {
        for letters in [vec![], vec![1u8], vec![1, 1], vec![1, 2, 1], vec![1, 1, 2], vec![2, 1, 2, 1]]
        {
            let w = word(3, &letters);
            assert_eq!(mask_expansion_defects(&w), product_one_plus_t(&w), "{w}");
        }
    }

    #[test]
    fn mask_expansion_identity_coefficient() {
        let h = mask_expansion_defects(&word(3, &[1, 2, 1]));
        assert_eq!(h.coeff(&p("123")), lp(&[(0, 1), (2, 1)]));
    }

    #[test]
    fn reduced_word_support_sits_below_the_target() {
        for letters in [vec![1u8, 2], vec![1, 2, 1], vec![2, 1]] {
            let w = word(3, &letters);
            assert!(w.is_reduced());
            let v = w.permutation();
            let h = product_one_plus_t(&w);
            assert_eq!(h.coeff(&v), LaurentPoly::one());
            for u in h.support() {
                assert!(crate::perm::bruhat_leq(u, &v), "{u} above {v}");
            }
        }
    }

    #[test]
    fn coefficients_live_in_nonnegative_q_polynomials() {
        let h = product_one_plus_t(&word(4, &[3, 2, 1, 2, 3, 1]));
        for (_, c) in h.iter() {
            assert!(c.is_nonneg_in_q());
        }
    }

    #[test]
    fn json_round_trip() {
        let h = product_one_plus_t(&word(3, &[1, 2, 1]));
        let json = h.to_json();
        assert_eq!(HeckeElement::from_json(&json).unwrap(), h);
        // coords are sorted by one-line notation
        let perms: Vec<String> = json["coords"]
            .as_array()
            .unwrap()
            .iter()
            .map(|c| c["perm"].as_str().unwrap().to_string())
            .collect();
        let mut sorted = perms.clone();
        sorted.sort();
        assert_eq!(perms, sorted);
    }

    #[test]
    fn display_lists_terms() {
        let h = product_one_plus_t(&word(3, &[1]));
        assert_eq!(h.to_string(), "(1) T[123] + (1) T[213]");
    }
}
