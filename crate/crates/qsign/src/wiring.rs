//! Wiring diagrams, covering path families, and the evaluation map σ_B.
//!
//! A generator word (i_1, ..., i_m) draws a planar diagram: n wires run left
//! to right at heights 1..n (numbered bottom to top), and column j brings the
//! wires at heights i_j and i_j + 1 together at a central vertex, where the
//! pair either crosses or bounces apart.  A choice of crossing/noncrossing at
//! every column — a binary mask — selects a *covering path family*: n paths
//! using every edge of the diagram exactly once.
//!
//! Statistics of a family π:
//!
//! * `type`: the permutation sending each source to its sink height;
//! * `cross(π)`: the number of crossings;
//! * `dfct(π)`: the number of defective indices — meetings, crossing or
//!   not, whose two paths have already crossed each other an odd number of
//!   times;
//! * `incross_with(u)`: the number of *inverted noncrossings* relative to a
//!   source relabeling u — noncrossings where the path entering on top is
//!   earlier in u's ordering than the path entering below.
//!
//! The functional σ_B sends a zero-weight monomial `x^{u,w}` to a Laurent
//! polynomial in `q^(1/2)`.  Three implementations, sharing no code paths:
//!
//! * [`sigma_dp`] — the one-pass column recursion;
//! * [`sigma_direct`] — the closed-form sum `Σ_π q^{cross/2} q^{incross}`
//!   over families of type `u^{-1}w`;
//! * [`sigma_zalgebra`] — the defining computation: expand `x^{u,w}` over the
//!   sorted basis (module [`crate::qmatrix`]), substitute formal path sums
//!   for the matrix entries, normal-order the resulting words in the
//!   quasicommuting edge variables z, and extract the coefficient of the
//!   full square-free product z_G.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::laurent::LaurentPoly;
use crate::perm::{Permutation, Word};
use crate::qmatrix::zero_weight_expand;

/// The planar diagram of a generator word.
#[derive(Clone, PartialEq, Eq)]
pub struct WiringDiagram {
    word: Word,
}

impl WiringDiagram {
    pub fn new(word: Word) -> Self {
        WiringDiagram { word }
    }

    pub fn n(&self) -> usize {
        self.word.n()
    }

    /// Number of columns.
    pub fn m(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    pub fn letters(&self) -> &[u8] {
        self.word.letters()
    }

    /// A plain-text picture: one row per height (top to bottom), an `X` at
    /// each height a column's meeting touches, `-` elsewhere.
    pub fn ascii_diagram(&self) -> String {
        let mut out = String::new();
        for h in (1..=self.n() as u8).rev() {
            out.push_str(&format!("{h} "));
            let row = self
                .letters()
                .iter()
                .map(|&a| if h == a || h == a + 1 { "X" } else { "-" })
                .join(" ");
            out.push_str(&row);
            out.push('\n');
        }
        out.push_str("  ");
        out.push_str(&self.letters().iter().map(|a| a.to_string()).join(" "));
        out.push('\n');
        out
    }
}

impl fmt::Debug for WiringDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WiringDiagram[{}]", self.word)
    }
}

/// One column's meeting, classified within a particular path family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Meet {
    /// Column index, 0-based.
    pub column: usize,
    /// The word letter: the meeting joins heights `letter` and `letter + 1`.
    pub letter: u8,
    /// Source label of the path entering on top (height `letter + 1`).
    pub top: u8,
    /// Source label of the path entering below (height `letter`).
    pub bot: u8,
    /// Whether the mask crosses the pair here.
    pub crossing: bool,
    /// Whether the two paths had already crossed each other an odd number of
    /// times when they meet here (crossing or not).
    pub defective: bool,
}

/// A covering path family: the mask together with everything derived from it.
#[derive(Clone, PartialEq, Eq)]
pub struct PathFamily {
    mask: Vec<bool>,
    meets: Vec<Meet>,
    type_perm: Permutation,
}

impl PathFamily {
    /// Classifies the family selected by `mask` (entry j = column j crosses).
    ///
    /// Defectiveness is tracked by a running crossing parity per path pair,
    /// flipped at each of the pair's crossings.
    pub fn from_mask(d: &WiringDiagram, mask: &[bool]) -> Result<PathFamily> {
        if mask.len() != d.m() {
            return Err(Error::MaskLength { expected: d.m(), got: mask.len() });
        }
        let n = d.n();
        // pos[h] = source label of the path currently at height h (1-based)
        let mut pos: Vec<u8> = (0..=n as u8).collect();
        let mut parity = vec![vec![false; n + 1]; n + 1];
        let mut meets = Vec::with_capacity(d.m());
        for (column, (&letter, &crossing)) in d.letters().iter().zip(mask).enumerate() {
            let (top, bot) = (pos[letter as usize + 1], pos[letter as usize]);
            let defective = parity[top as usize][bot as usize];
            debug_assert_eq!(defective, top < bot);
            meets.push(Meet { column, letter, top, bot, crossing, defective });
            if crossing {
                parity[top as usize][bot as usize] ^= true;
                parity[bot as usize][top as usize] ^= true;
                pos.swap(letter as usize, letter as usize + 1);
            }
        }
        let height_to_source = Permutation::from_oneline(pos[1..].to_vec())
            .expect("positions stay a permutation");
        Ok(PathFamily { mask: mask.to_vec(), meets, type_perm: height_to_source.inverse() })
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }

    pub fn meets(&self) -> &[Meet] {
        &self.meets
    }

    /// The permutation sending each source to its sink height.
    pub fn type_perm(&self) -> &Permutation {
        &self.type_perm
    }

    /// Number of crossings.
    pub fn cross(&self) -> usize {
        self.meets.iter().filter(|m| m.crossing).count()
    }

    /// Number of defective indices, crossing or not.
    pub fn dfct(&self) -> usize {
        self.meets.iter().filter(|m| m.defective).count()
    }

    /// Number of defective indices that are crossings.
    pub fn defective_crossings(&self) -> usize {
        self.meets.iter().filter(|m| m.defective && m.crossing).count()
    }

    /// Inverted noncrossings relative to the source word u: noncrossings
    /// whose top path precedes the bottom path in u's ordering.
    pub fn incross_with(&self, u: &Permutation) -> usize {
        let ui = u.inverse();
        self.meets
            .iter()
            .filter(|m| !m.crossing && ui.image(m.top) < ui.image(m.bot))
            .count()
    }
}

impl fmt::Debug for PathFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let bits: String = self.mask.iter().map(|&b| if b { '1' } else { '0' }).collect();
        write!(f, "PathFamily({bits}, type {})", self.type_perm)
    }
}

/// Iterates all 2^m masks of a diagram.
pub fn all_masks(d: &WiringDiagram) -> impl Iterator<Item = Vec<bool>> + '_ {
    let m = d.m();
    assert!(m < 64, "mask enumeration capped at 63 columns");
    (0u64..(1u64 << m)).map(move |bits| (0..m).map(|j| bits >> j & 1 == 1).collect())
}

/// Number of covering families of each type, i.e. the q = 1 shadow of the
/// diagram.
pub fn family_type_counts(d: &WiringDiagram) -> BTreeMap<Permutation, i64> {
    let mut out = BTreeMap::new();
    for mask in all_masks(d) {
        let fam = PathFamily::from_mask(d, &mask).expect("mask has the right length");
        *out.entry(fam.type_perm().clone()).or_insert(0) += 1;
    }
    out
}

/// Applies a linear functional θ on permutations to the family count:
/// `Σ_w θ(w) · #{families of type w}`.
pub fn classical_eval(d: &WiringDiagram, theta: &BTreeMap<Permutation, i64>) -> i64 {
    family_type_counts(d)
        .iter()
        .map(|(w, count)| theta.get(w).copied().unwrap_or(0) * count)
        .sum()
}

/// σ_B(x^{u,w}) for all w at once, by the column recursion.
///
/// Appending one column with letter s to the diagram updates the table by
/// `new[w] = q^(1/2) old[w s] + (q if ws < w else 1) old[w]`; the empty
/// diagram's table is the indicator of u.  Each single step is the closed
/// form for one (1 + T_s) factor: starting from u it leaves `1` or `q` at u
/// (ascent or descent) and `q^(1/2)` at `u s`.
pub fn sigma_dp(d: &WiringDiagram, u: &Permutation) -> BTreeMap<Permutation, LaurentPoly> {
    assert_eq!(u.n(), d.n(), "source permutation size differs from diagram");
    let q_half = LaurentPoly::q_half();
    let q = LaurentPoly::q();
    let one = LaurentPoly::one();
    let mut table: BTreeMap<Permutation, LaurentPoly> = BTreeMap::new();
    table.insert(u.clone(), LaurentPoly::one());
    for &s in d.letters() {
        let mut next: BTreeMap<Permutation, LaurentPoly> = BTreeMap::new();
        let mut bump = |w: Permutation, c: LaurentPoly| {
            if c.is_zero() {
                return;
            }
            let entry = next.entry(w).or_insert_with(LaurentPoly::zero);
            *entry = &*entry + &c;
        };
        for (w, c) in &table {
            let ws = w.right_mul_gen(s);
            let stay_weight = if ws.length() < w.length() { &q } else { &one };
            bump(w.clone(), c * stay_weight);
            bump(ws, c * &q_half);
        }
        next.retain(|_, c| !c.is_zero());
        table = next;
    }
    table
}

/// σ_B(x^{u,w}) as the statistic-weighted sum over covering families of type
/// `u^{-1}w`: each contributes `q^{cross/2} q^{incross}` with incross taken
/// relative to u.
pub fn sigma_direct(d: &WiringDiagram, u: &Permutation, w: &Permutation) -> LaurentPoly {
    assert_eq!(u.n(), d.n(), "source permutation size differs from diagram");
    assert_eq!(w.n(), d.n(), "sink permutation size differs from diagram");
    let target = u.inverse().then(w);
    let mut out = LaurentPoly::zero();
    for mask in all_masks(d) {
        let fam = PathFamily::from_mask(d, &mask).expect("mask has the right length");
        if *fam.type_perm() != target {
            continue;
        }
        let units = fam.cross() as i32 + 2 * fam.incross_with(u) as i32;
        out = &out + &LaurentPoly::monomial(units);
    }
    out
}

/// An edge variable of the z-algebra: column j contributes four variables
/// z_{h,j,k}, one per height h ∈ {letter, letter+1} and slot k (1 = entering
/// the central vertex, 2 = leaving it).  Variables of the same column and
/// slot quasicommute — sorting the higher height to the right costs
/// `q^(1/2)` — and all other pairs commute freely.
///
/// The field order (column, slot, height) is the normal-ordering sort key.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct ZVar {
    pub column: u16,
    pub slot: u8,
    pub height: u8,
}

impl ZVar {
    fn quasicommutes_with(&self, other: &ZVar) -> bool {
        self.column == other.column && self.slot == other.slot
    }
}

/// A word in the z variables.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ZMonomial {
    factors: Vec<ZVar>,
}

impl ZMonomial {
    pub fn new(factors: Vec<ZVar>) -> Self {
        ZMonomial { factors }
    }

    pub fn factors(&self) -> &[ZVar] {
        &self.factors
    }

    /// The full product z_G of every variable of the diagram, in normal order.
    pub fn z_g(d: &WiringDiagram) -> ZMonomial {
        let mut factors = Vec::with_capacity(4 * d.m());
        for (j, &a) in d.letters().iter().enumerate() {
            for slot in [1u8, 2] {
                for height in [a, a + 1] {
                    factors.push(ZVar { column: j as u16, slot, height });
                }
            }
        }
        factors.sort();
        ZMonomial { factors }
    }

    /// True when no variable repeats.
    pub fn is_square_free(&self) -> bool {
        let mut sorted = self.factors.clone();
        sorted.sort();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Normal-orders the word by bubble sort, charging `q^(1/2)` for each
    /// swap of a quasicommuting pair; every other swap is free.  Returns the
    /// sorted monomial and the accumulated coefficient.
    pub fn normalize(&self) -> (ZMonomial, LaurentPoly) {
        let mut factors = self.factors.clone();
        let mut half_units = 0i32;
        loop {
            let mut swapped = false;
            for i in 0..factors.len().saturating_sub(1) {
                if factors[i] > factors[i + 1] {
                    if factors[i].quasicommutes_with(&factors[i + 1]) {
                        half_units += 1;
                    }
                    factors.swap(i, i + 1);
                    swapped = true;
                }
            }
            if !swapped {
                break;
            }
        }
        (ZMonomial { factors }, LaurentPoly::monomial(half_units))
    }
}

/// All source-to-sink paths for one source, as z words with a bitmask of the
/// variables used (4 bits per column).
fn z_paths(d: &WiringDiagram, source: u8) -> Vec<(u8, u128, ZMonomial)> {
    assert!(4 * d.m() <= 128, "z evaluation capped at 32 columns");
    let bit = |column: usize, slot: u8, top: bool| -> u128 {
        1u128 << (4 * column + 2 * (slot as usize - 1) + usize::from(top))
    };
    let mut done = Vec::new();
    // (next column, current height, used variables, word so far)
    let mut stack: Vec<(usize, u8, u128, Vec<ZVar>)> = vec![(0, source, 0, Vec::new())];
    while let Some((j, h, used, word)) = stack.pop() {
        if j == d.m() {
            done.push((h, used, ZMonomial::new(word)));
            continue;
        }
        let a = d.letters()[j];
        if h != a && h != a + 1 {
            stack.push((j + 1, h, used, word));
            continue;
        }
        let enter_top = h == a + 1;
        let entered = used | bit(j, 1, enter_top);
        for (exit_top, out_height) in [(false, a), (true, a + 1)] {
            let mut w = word.clone();
            w.push(ZVar { column: j as u16, slot: 1, height: h });
            w.push(ZVar { column: j as u16, slot: 2, height: out_height });
            stack.push((j + 1, out_height, entered | bit(j, 2, exit_top), w));
        }
    }
    done
}

/// The coefficient of z_G in the formal path product
/// `b_{1,v_1} b_{2,v_2} ... b_{n,v_n}`: one path is chosen per source (ending
/// at sink v(source)), the chosen z words are concatenated in source order
/// and normal-ordered, and families that cover every variable exactly once
/// contribute their normal-ordering coefficient.
pub fn z_coefficient(d: &WiringDiagram, v: &Permutation) -> LaurentPoly {
    assert_eq!(v.n(), d.n(), "sink permutation size differs from diagram");
    let full: u128 = if d.m() == 0 { 0 } else { (1u128 << (4 * d.m())) - 1 };
    let paths_per_source: Vec<Vec<(u8, u128, ZMonomial)>> = (1..=d.n() as u8)
        .map(|i| {
            z_paths(d, i)
                .into_iter()
                .filter(|(sink, _, _)| *sink == v.image(i))
                .collect()
        })
        .collect();
    let z_g = ZMonomial::z_g(d);
    let mut out = LaurentPoly::zero();
    // depth-first choice of one path per source, pruning on variable overlap
    let mut choice: Vec<usize> = Vec::with_capacity(d.n());
    fn rec(
        per_source: &[Vec<(u8, u128, ZMonomial)>],
        i: usize,
        used: u128,
        full: u128,
        z_g: &ZMonomial,
        choice: &mut Vec<usize>,
        out: &mut LaurentPoly,
    ) {
        if i == per_source.len() {
            if used != full {
                return;
            }
            let concatenated = ZMonomial::new(
                choice
                    .iter()
                    .enumerate()
                    .flat_map(|(src, &k)| per_source[src][k].2.factors().iter().copied())
                    .collect(),
            );
            debug_assert!(concatenated.is_square_free());
            let (sorted, coeff) = concatenated.normalize();
            debug_assert_eq!(&sorted, z_g);
            *out = &*out + &coeff;
            return;
        }
        for (k, (_, mask, _)) in per_source[i].iter().enumerate() {
            if used & mask != 0 {
                continue;
            }
            choice.push(k);
            rec(per_source, i + 1, used | mask, full, z_g, choice, out);
            choice.pop();
        }
    }
    rec(&paths_per_source, 0, 0, full, &z_g, &mut choice, &mut out);
    out
}

/// σ_B(x^{u,w}) through the defining z-algebra computation: expand `x^{u,w}`
/// over the sorted zero-weight basis and evaluate each basis monomial
/// `x^{e,v}` as the z_G coefficient of its path product.
pub fn sigma_zalgebra(d: &WiringDiagram, u: &Permutation, w: &Permutation) -> LaurentPoly {
    assert_eq!(u.n(), d.n(), "source permutation size differs from diagram");
    assert_eq!(w.n(), d.n(), "sink permutation size differs from diagram");
    let e = Permutation::identity(d.n());
    let coords = zero_weight_expand(u, w, &e).expect("sizes match");
    let mut out = LaurentPoly::zero();
    for (v, c) in coords {
        out = &out + &(&c * &z_coefficient(d, &v));
    }
    out
}
