//! Walks in the left weak order driven by a reduced word.
//!
//! Fix permutations u, v, t with t weakly below u, and a word reduced for
//! `u t^{-1}`.  A walk starts at v and consumes the word letter by letter.
//! At letter s the walk sits at some π and either *moves* to `s π` or
//! *stays* at π; staying is allowed only when `s π < π` (a left descent),
//! and each stay is charged one factor `q1 = q^(1/2) - q^(-1/2)`.  When
//! `s π > π` the move is forced.
//!
//! Summing `q1^stays` over walks from v that end at w yields a polynomial
//! `p[w]` in q1 with nonnegative integer coefficients.  Two independent
//! computations are provided: exhaustive enumeration ([`walk_polynomials`])
//! and a first-letter recursion ([`p_poly_recursive`]) that mirrors the
//! transition-coefficient recursion of [`crate::qmatrix::r_polys`] without
//! touching the walk lists.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::laurent::Q1Poly;
use crate::perm::{weak_leq, Permutation, Word};

/// One complete walk: the visited states plus the stay/move decisions.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct WeakWalk {
    states: Vec<Permutation>,
    letters: Vec<u8>,
    stays: Vec<bool>,
}

impl WeakWalk {
    /// The visited permutations, from start to end (one more than letters).
    pub fn states(&self) -> &[Permutation] {
        &self.states
    }

    pub fn start(&self) -> &Permutation {
        &self.states[0]
    }

    pub fn end(&self) -> &Permutation {
        self.states.last().expect("walks have at least the start state")
    }

    pub fn stay_count(&self) -> usize {
        self.stays.iter().filter(|&&b| b).count()
    }

    /// `q1^stays`.
    pub fn weight(&self) -> Q1Poly {
        Q1Poly::monomial(self.stay_count())
    }
}

impl fmt::Display for WeakWalk {
    /// Moves print as `-s->`, stays as `=s=`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.states[0])?;
        for j in 0..self.letters.len() {
            let s = self.letters[j];
            if self.stays[j] {
                write!(f, " ={s}= {}", self.states[j + 1])?;
            } else {
                write!(f, " -{s}-> {}", self.states[j + 1])?;
            }
        }
        Ok(())
    }
}

fn validate(u: &Permutation, v: &Permutation, t: &Permutation, word: &Word) -> Result<()> {
    if u.n() != v.n() || u.n() != t.n() || u.n() != word.n() {
        return Err(Error::SizeMismatch { left: u.n(), right: v.n().max(t.n()).max(word.n()) });
    }
    if !weak_leq(t, u) {
        return Err(Error::NotWeaklyBelow { t: t.to_string(), u: u.to_string() });
    }
    let target = u.then(&t.inverse());
    if !word.is_reduced() || word.permutation() != target {
        return Err(Error::NotReduced { word: word.to_string(), target: target.to_string() });
    }
    Ok(())
}

/// All walks from v along `word` (which must be reduced for `u t^{-1}`).
pub fn walk_enumerate(
    u: &Permutation,
    v: &Permutation,
    t: &Permutation,
    word: &Word,
) -> Result<Vec<WeakWalk>> {
    validate(u, v, t, word)?;
    let mut done = Vec::new();
    let mut stack: Vec<WeakWalk> = vec![WeakWalk {
        states: vec![v.clone()],
        letters: Vec::new(),
        stays: Vec::new(),
    }];
    while let Some(walk) = stack.pop() {
        let j = walk.letters.len();
        if j == word.len() {
            done.push(walk);
            continue;
        }
        let s = word.letters()[j];
        let here = walk.end().clone();
        let moved = here.left_mul_gen(s);
        let descent = moved.length() < here.length();
        let mut go = walk.clone();
        go.states.push(moved);
        go.letters.push(s);
        go.stays.push(false);
        stack.push(go);
        if descent {
            let mut stay = walk;
            stay.states.push(here);
            stay.letters.push(s);
            stay.stays.push(true);
            stack.push(stay);
        }
    }
    Ok(done)
}

/// Walk-count polynomials binned by endpoint: `p[w] = Σ q1^stays` over walks
/// from v ending at w.
pub fn walk_polynomials(
    u: &Permutation,
    v: &Permutation,
    t: &Permutation,
    word: &Word,
) -> Result<BTreeMap<Permutation, Q1Poly>> {
    let mut out: BTreeMap<Permutation, Q1Poly> = BTreeMap::new();
    for walk in walk_enumerate(u, v, t, word)? {
        let entry = out.entry(walk.end().clone()).or_insert_with(Q1Poly::zero);
        *entry = entry.add(&walk.weight());
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// A single endpoint's walk-count polynomial.
pub fn p_poly(
    u: &Permutation,
    v: &Permutation,
    t: &Permutation,
    word: &Word,
    w: &Permutation,
) -> Result<Q1Poly> {
    Ok(walk_polynomials(u, v, t, word)?.remove(w).unwrap_or_else(Q1Poly::zero))
}

/// Walk-count polynomials by recursion on the first letter, without
/// enumerating walks.  With first letter s: from v the step is forced when
/// `s v > v`, giving `p_{u,v} = p_{s u, s v}` over the rest of the word;
/// at a descent both branches contribute, `p_{u,v} = p_{s u, s v} + q1 p_{s u, v}`.
/// The empty word leaves the indicator of v.
pub fn p_poly_recursive(
    u: &Permutation,
    v: &Permutation,
    t: &Permutation,
    word: &Word,
) -> Result<BTreeMap<Permutation, Q1Poly>> {
    validate(u, v, t, word)?;
    fn rec(v: &Permutation, letters: &[u8]) -> BTreeMap<Permutation, Q1Poly> {
        let Some((&s, rest)) = letters.split_first() else {
            return BTreeMap::from([(v.clone(), Q1Poly::one())]);
        };
        let sv = v.left_mul_gen(s);
        let descent = sv.length() < v.length();
        let mut out = rec(&sv, rest);
        if descent {
            for (w, c) in rec(v, rest) {
                let entry = out.entry(w).or_insert_with(Q1Poly::zero);
                let bumped = entry.add(&c.times_gen());
                *entry = bumped;
            }
        }
        out
    }
    let mut table = rec(v, word.letters());
    table.retain(|_, c| !c.is_zero());
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qmatrix::r_polys;
    use crate::perm::reduced_words;

    fn p(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    fn word(n: usize, letters: &[u8]) -> Word {
        Word::new(n, letters.to_vec()).unwrap()
    }

    #[test]
    fn empty_word_walks() {
        let e = Permutation::identity(3);
        let v = p("231");
        let table = walk_polynomials(&e, &v, &e, &word(3, &[])).unwrap();
        assert_eq!(table, BTreeMap::from([(v, Q1Poly::one())]));
    }

    #[test]
    fn one_letter_from_a_descent() {
        // start 213, letter 1: move to 123 or stay (charged q1)
        let s1 = p("213");
        let e = Permutation::identity(3);
        let walks = walk_enumerate(&s1, &s1, &e, &word(3, &[1])).unwrap();
        assert_eq!(walks.len(), 2);
        let table = walk_polynomials(&s1, &s1, &e, &word(3, &[1])).unwrap();
        assert_eq!(
            table,
            BTreeMap::from([(p("123"), Q1Poly::one()), (p("213"), Q1Poly::gen())])
        );
    }

    #[test]
    fn one_letter_forced_ascent() {
        let s1 = p("213");
        let e = Permutation::identity(3);
        let walks = walk_enumerate(&s1, &e, &e, &word(3, &[1])).unwrap();
        assert_eq!(walks.len(), 1);
        assert_eq!(walks[0].end(), &s1);
        assert_eq!(walks[0].stay_count(), 0);
    }

    #[test]
    fn validation_errors() {
        let e = Permutation::identity(3);
        let s1 = p("213");
        // word not reduced for u t^{-1}
        assert!(matches!(
            walk_enumerate(&s1, &e, &e, &word(3, &[1, 1])),
            Err(Error::NotReduced { .. })
        ));
        assert!(matches!(
            walk_enumerate(&s1, &e, &e, &word(3, &[2])),
            Err(Error::NotReduced { .. })
        ));
        // t must be weakly below u
        assert!(matches!(
            walk_enumerate(&e, &e, &s1, &word(3, &[1])),
            Err(Error::NotWeaklyBelow { .. })
        ));
    }

    #[test]
    fn display_marks_stays() {
        let s1 = p("213");
        let e = Permutation::identity(3);
        let walks = walk_enumerate(&s1, &s1, &e, &word(3, &[1])).unwrap();
        let shown: Vec<String> = walks.iter().map(|w| w.to_string()).collect();
        assert!(shown.contains(&"213 -1-> 123".to_string()), "{shown:?}");
        assert!(shown.contains(&"213 =1= 213".to_string()), "{shown:?}");
    }

    #[test]
    fn recursion_matches_enumeration() {
        for u in Permutation::all(3) {
            for t in Permutation::all(3) {
                if !weak_leq(&t, &u) {
                    continue;
                }
                let target = u.then(&t.inverse());
                for w in reduced_words(&target) {
                    for v in Permutation::all(3) {
                        assert_eq!(
                            walk_polynomials(&u, &v, &t, &w).unwrap(),
                            p_poly_recursive(&u, &v, &t, &w).unwrap(),
                            "u={u} v={v} t={t} word={w}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn walk_counts_equal_transition_coefficients() {
        for u in Permutation::all(3) {
            for t in Permutation::all(3) {
                if !weak_leq(&t, &u) {
                    continue;
                }
                let target = u.then(&t.inverse());
                let w = reduced_words(&target).into_iter().next().unwrap();
                for v in Permutation::all(3) {
                    assert_eq!(
                        walk_polynomials(&u, &v, &t, &w).unwrap(),
                        r_polys(&u, &v, &t).unwrap(),
                        "u={u} v={v} t={t}"
                    );
                }
            }
        }
    }

    #[test]
    fn all_moves_walk_lands_at_the_triangularity_bottom() {
        for u in Permutation::all(3) {
            for t in Permutation::all(3) {
                if !weak_leq(&t, &u) {
                    continue;
                }
                let target = u.then(&t.inverse());
                let w = reduced_words(&target).into_iter().next().unwrap();
                for v in Permutation::all(3) {
                    let bottom = t.then(&u.inverse()).then(&v);
                    let table = walk_polynomials(&u, &v, &t, &w).unwrap();
                    assert_eq!(table.get(&bottom), Some(&Q1Poly::one()));
                }
            }
        }
    }
}
