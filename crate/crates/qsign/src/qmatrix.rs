//! The quantum matrix bialgebra: straightening, quantum determinants, and
//! transition polynomials.
//!
//! We work in the associative algebra generated by symbols `x[a,b]` (row a,
//! column b) subject to the quantum-matrix relations, stated here for a < c
//! and b < d:
//!
//! ```text
//! x[a,d] x[a,b] = q^(1/2) x[a,b] x[a,d]           (same row)
//! x[c,b] x[a,b] = q^(1/2) x[a,b] x[c,b]           (same column)
//! x[c,b] x[a,d] = x[a,d] x[c,b]                   (rows and columns both differ,
//!                                                  larger row holds smaller column)
//! x[c,d] x[a,b] = x[a,b] x[c,d]
//!                 + (q^(1/2) - q^(-1/2)) x[a,d] x[c,b]
//! ```
//!
//! Every monomial is a product of such generators in a definite order, and
//! straightening rewrites an arbitrary element as a combination of monomials
//! whose factors are sorted by (row, column).  The rewriting system is
//! confluent; we expose both leftmost- and rightmost-descent strategies so
//! tests can confirm they agree.
//!
//! A monomial of zero weight uses each row index 1..=n exactly once and each
//! column index exactly once; it is written `x^{u,v} = x[u_1,v_1] ... x[u_n,v_n]`
//! for permutations u, v.  The sorted zero-weight monomials `x^{e,v}` form a
//! basis of the zero-weight component, as do the monomials `x^{t,v}` for any
//! fixed t.  [`zero_weight_expand`] computes coordinates in these bases, and
//! [`r_polys`] computes the same coordinates by a descent recursion that
//! stays inside `Z[q^(1/2) - q^(-1/2)]`.  [`qdet`] and [`epsilon_char_table`]
//! build induced sign characters out of quantum determinants.

use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::laurent::{LaurentPoly, Q1Poly};
use crate::perm::{bruhat_leq, weak_leq, OrderedSetPartition, Partition, Permutation};

/// A product of generators `x[row,col]`, kept in written (noncommutative)
/// order.  The empty product is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NcMonomial {
    factors: Vec<(u8, u8)>,
}

impl NcMonomial {
    pub fn one() -> Self {
        NcMonomial { factors: Vec::new() }
    }

    pub fn new(factors: Vec<(u8, u8)>) -> Result<Self> {
        for &(r, c) in &factors {
            if r == 0 || c == 0 {
                return Err(Error::Invalid(format!("generator x[{r},{c}] has a zero index")));
            }
        }
        Ok(NcMonomial { factors })
    }

    /// The zero-weight monomial `x^{u,v} = x[u_1,v_1] ... x[u_n,v_n]`.
    pub fn zero_weight(u: &Permutation, v: &Permutation) -> Result<Self> {
        if u.n() != v.n() {
            return Err(Error::SizeMismatch { left: u.n(), right: v.n() });
        }
        let factors = (1..=u.n() as u8).map(|i| (u.image(i), v.image(i))).collect();
        Ok(NcMonomial { factors })
    }

    pub fn factors(&self) -> &[(u8, u8)] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// True when the factors are sorted by (row, column).
    pub fn is_sorted(&self) -> bool {
        self.factors.windows(2).all(|w| w[0] <= w[1])
    }

    /// If the monomial is `x^{e,v}` for a permutation v (rows are exactly
    /// 1..=n in order and columns are a permutation), returns v.
    pub fn as_sorted_zero_weight(&self) -> Option<Permutation> {
        let n = self.factors.len();
        if (1..=n).any(|i| self.factors[i - 1].0 as usize != i) {
            return None;
        }
        Permutation::from_oneline(self.factors.iter().map(|&(_, c)| c).collect()).ok()
    }

    /// Concatenation (noncommutative product) of monomials.
    pub fn concat(&self, other: &NcMonomial) -> NcMonomial {
        let mut factors = self.factors.clone();
        factors.extend_from_slice(&other.factors);
        NcMonomial { factors }
    }

    /// Parses the display format, e.g. `"x[2,1] x[1,2]"`; the empty string is
    /// the unit monomial.
    pub fn parse(s: &str) -> Result<NcMonomial> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(NcMonomial::one());
        }
        let mut factors = Vec::new();
        for tok in s.split_whitespace() {
            let inner = tok
                .strip_prefix("x[")
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| Error::Parse(format!("bad generator {tok:?}, want x[r,c]")))?;
            let (r, c) = inner
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad generator {tok:?}, want x[r,c]")))?;
            let r: u8 = r.trim().parse().map_err(|_| Error::Parse(format!("bad row in {tok:?}")))?;
            let c: u8 = c.trim().parse().map_err(|_| Error::Parse(format!("bad column in {tok:?}")))?;
            factors.push((r, c));
        }
        NcMonomial::new(factors)
    }
}

impl fmt::Display for NcMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        write!(f, "{}", self.factors.iter().map(|(r, c)| format!("x[{r},{c}]")).join(" "))
    }
}

impl fmt::Debug for NcMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite combination of monomials with Laurent-polynomial coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct NcPolynomial {
    terms: BTreeMap<NcMonomial, LaurentPoly>,
}

impl NcPolynomial {
    pub fn zero() -> Self {
        NcPolynomial { terms: BTreeMap::new() }
    }

    pub fn monomial(m: NcMonomial) -> Self {
        Self::term(m, LaurentPoly::one())
    }

    pub fn term(m: NcMonomial, c: LaurentPoly) -> Self {
        let mut p = NcPolynomial::zero();
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: &NcMonomial) -> LaurentPoly {
        self.terms.get(m).cloned().unwrap_or_else(LaurentPoly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&NcMonomial, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, m: NcMonomial, c: LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &NcPolynomial) -> NcPolynomial {
        let mut out = self.clone();
        for (m, c) in other.iter() {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &LaurentPoly) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        for (m, a) in self.iter() {
            out.add_term(m.clone(), a * c);
        }
        out
    }

    /// Noncommutative product: concatenates monomials pairwise.
    pub fn mul(&self, other: &NcPolynomial) -> NcPolynomial {
        let mut out = NcPolynomial::zero();
        for (m1, c1) in self.iter() {
            for (m2, c2) in other.iter() {
                out.add_term(m1.concat(m2), c1 * c2);
            }
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms
                .iter()
                .map(|(m, c)| {
                    serde_json::json!([
                        m.factors.iter().map(|&(r, c)| serde_json::json!([r, c])).collect::<Vec<_>>(),
                        c.to_json(),
                    ])
                })
                .collect(),
        )
    }
}

impl fmt::Display for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let rendered = self.terms.iter().map(|(m, c)| format!("({c}) {m}")).join(" + ");
        write!(f, "{rendered}")
    }
}

impl fmt::Debug for NcPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Which out-of-order adjacent pair to rewrite first.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RewriteStrategy {
    Leftmost,
    Rightmost,
}

fn find_descent(m: &NcMonomial, strat: RewriteStrategy) -> Option<usize> {
    let f = m.factors();
    let mut iter = (0..f.len().saturating_sub(1)).filter(|&i| f[i] > f[i + 1]);
    match strat {
        RewriteStrategy::Leftmost => iter.next(),
        RewriteStrategy::Rightmost => iter.last(),
    }
}

/// Straightens with the leftmost-descent strategy.
pub fn straighten(p: &NcPolynomial) -> NcPolynomial {
    straighten_with(p, RewriteStrategy::Leftmost)
}

/// Rewrites `p` as a combination of monomials sorted by (row, column).
///
/// Each step takes an adjacent pair written in decreasing order and applies
/// the matching relation.  Same-row and same-column swaps cost a factor
/// `q^(1/2)`; pairs that disagree in both row and column either commute
/// freely or swap with a correction term carrying `q^(1/2) - q^(-1/2)`.
/// Termination: each step strictly decreases the pair (row inversions,
/// column inversions) of the monomial in lexicographic order.
pub fn straighten_with(p: &NcPolynomial, strat: RewriteStrategy) -> NcPolynomial {
    let q_half = LaurentPoly::q_half();
    let q1 = LaurentPoly::q_half_diff();
    let mut out = NcPolynomial::zero();
    // active terms collapse by monomial as they meet, which keeps the
    // worklist no larger than the number of distinct intermediate monomials
    let mut work: BTreeMap<NcMonomial, LaurentPoly> = BTreeMap::new();
    for (m, c) in p.iter() {
        work.insert(m.clone(), c.clone());
    }
    let push = |work: &mut BTreeMap<NcMonomial, LaurentPoly>, m: NcMonomial, c: LaurentPoly| {
        if c.is_zero() {
            return;
        }
        match work.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = &*o.get() + &c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    };
    while let Some((m, c)) = work.pop_first() {
        let Some(i) = find_descent(&m, strat) else {
            out.add_term(m, c);
            continue;
        };
        let (a, b) = m.factors[i];
        let (cc, dd) = m.factors[i + 1];
        debug_assert!((a, b) > (cc, dd));
        let mut swapped = m.factors.clone();
        swapped.swap(i, i + 1);
        let swapped = NcMonomial { factors: swapped };
        if a == cc || b == dd {
            // same row (b > dd) or same column (a > cc): q^(1/2)-swap
            push(&mut work, swapped, &c * &q_half);
        } else if b < dd {
            // a > cc, b < dd: free commutation
            push(&mut work, swapped, c);
        } else {
            // a > cc, b > dd: swap plus correction exchanging the columns
            let mut corr = m.factors.clone();
            corr[i] = (cc, b);
            corr[i + 1] = (a, dd);
            push(&mut work, NcMonomial { factors: corr }, &c * &q1);
            push(&mut work, swapped, c);
        }
    }
    out
}

/// The quantum determinant of the square submatrix with rows and columns
/// `indices` (strictly increasing): the signed sum over bijections v of
/// `(-q^(-1/2))^{inv(v)} x[v(i_1), i_1] ... x[v(i_k), i_k]`, columns
/// ascending and rows permuted.
pub fn qdet(indices: &[u8]) -> Result<NcPolynomial> {
    if indices.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    if indices.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Invalid(format!("index set {indices:?} is not strictly increasing")));
    }
    let k = indices.len();
    let mut out = NcPolynomial::zero();
    for assignment in (0..k).permutations(k) {
        let inv = count_inversions(&assignment);
        let coeff = LaurentPoly::term(-(inv as i32), if inv % 2 == 0 { 1 } else { -1 });
        let factors: Vec<(u8, u8)> =
            (0..k).map(|i| (indices[assignment[i]], indices[i])).collect();
        out.add_term(NcMonomial { factors }, coeff);
    }
    Ok(out)
}

fn count_inversions(xs: &[usize]) -> usize {
    let mut inv = 0;
    for i in 0..xs.len() {
        for j in i + 1..xs.len() {
            if xs[i] > xs[j] {
                inv += 1;
            }
        }
    }
    inv
}

/// Coordinates of `x^{u,v}` in the basis `{x^{t,w}}` of the zero-weight
/// component: returns the map `w -> c_w` with
/// `x^{u,v} = sum_w c_w x^{t,w}` after straightening.
///
/// For t = e this reads the normal form directly.  For general t the basis
/// is unitriangular over the sorted basis — the normal form of `x^{t,w}` is
/// `x^{e, t^{-1}w}` plus terms at column permutations strictly above
/// `t^{-1}w` in Bruhat order — so the coordinates fall out by eliminating
/// the shortest surviving column permutation first.
pub fn zero_weight_expand(
    u: &Permutation,
    v: &Permutation,
    t: &Permutation,
) -> Result<BTreeMap<Permutation, LaurentPoly>> {
    let n = u.n();
    if v.n() != n {
        return Err(Error::SizeMismatch { left: n, right: v.n() });
    }
    if t.n() != n {
        return Err(Error::SizeMismatch { left: n, right: t.n() });
    }
    let mut residual = sorted_coords(&straighten(&NcPolynomial::monomial(
        NcMonomial::zero_weight(u, v)?,
    )));
    let mut out = BTreeMap::new();
    if t.is_identity() {
        for (p, c) in residual {
            out.insert(p, c);
        }
        return Ok(out);
    }
    while !residual.is_empty() {
        let p = residual
            .keys()
            .min_by_key(|p| p.length())
            .expect("nonempty residual")
            .clone();
        let c = residual.remove(&p).expect("key just found");
        // x^{t, t p} has normal form x^{e,p} + higher Bruhat terms, so the
        // coefficient of x^{e,p} left in the residual belongs to w = t p
        let w = t.then(&p);
        let basis = sorted_coords(&straighten(&NcPolynomial::monomial(NcMonomial::zero_weight(
            t, &w,
        )?)));
        debug_assert!(basis.get(&p).map(|lead| lead.is_one()).unwrap_or(false));
        for (bp, bc) in basis {
            if bp == p {
                continue;
            }
            debug_assert!(bruhat_leq(&p, &bp));
            let prior = residual.get(&bp).cloned().unwrap_or_else(LaurentPoly::zero);
            let updated = &prior - &(&c * &bc);
            if updated.is_zero() {
                residual.remove(&bp);
            } else {
                residual.insert(bp, updated);
            }
        }
        out.insert(w, c);
    }
    Ok(out)
}

/// Reads the coefficients of a straightened zero-weight element off its
/// sorted monomials `x^{e,p}`.
fn sorted_coords(nf: &NcPolynomial) -> BTreeMap<Permutation, LaurentPoly> {
    let mut out = BTreeMap::new();
    for (m, c) in nf.iter() {
        let p = m
            .as_sorted_zero_weight()
            .expect("normal form of a zero-weight element is zero-weight and sorted");
        out.insert(p, c.clone());
    }
    out
}

/// Transition polynomials `r_{u,v}` relative to t, as polynomials in
/// `q_1 = q^(1/2) - q^(-1/2)`: the map `w -> r_{u,v,w}` with
/// `x^{u,v} = sum_w r_{u,v,w}(q_1) x^{t,w}`.  Requires t <= u in left weak
/// order.  Computed by the descent recursion: with s the smallest-index left
/// descent of `u t^{-1}`,
///
/// ```text
/// r_{u,v} = r_{su,sv}                    if sv > v
/// r_{u,v} = r_{su,sv} + q_1 r_{su,v}     if sv < v
/// ```
///
/// grounded at `r_{t,v,w} = [v = w]`.
pub fn r_polys(
    u: &Permutation,
    v: &Permutation,
    t: &Permutation,
) -> Result<BTreeMap<Permutation, Q1Poly>> {
    let n = u.n();
    if v.n() != n {
        return Err(Error::SizeMismatch { left: n, right: v.n() });
    }
    if t.n() != n {
        return Err(Error::SizeMismatch { left: n, right: t.n() });
    }
    if !weak_leq(t, u) {
        return Err(Error::NotWeaklyBelow { t: t.to_string(), u: u.to_string() });
    }
    fn rec(u: &Permutation, v: &Permutation, t: &Permutation) -> BTreeMap<Permutation, Q1Poly> {
        if u == t {
            let mut out = BTreeMap::new();
            out.insert(v.clone(), Q1Poly::one());
            return out;
        }
        let ut = u.then(&t.inverse());
        let s = (1..u.n() as u8)
            .find(|&i| ut.has_left_descent(i))
            .expect("u != t with t weakly below u has a descent toward t");
        let su = u.left_mul_gen(s);
        let sv = v.left_mul_gen(s);
        let mut out = rec(&su, &sv, t);
        if sv.length() < v.length() {
            for (w, r) in rec(&su, v, t) {
                let bumped = r.times_gen();
                let entry = out.entry(w).or_insert_with(Q1Poly::zero);
                *entry = entry.add(&bumped);
            }
        }
        out
    }
    let mut out = rec(u, v, t);
    out.retain(|_, r| !r.is_zero());
    Ok(out)
}

/// The full character table of the sign character induced from the Young
/// subalgebra of shape lambda: the map `w -> eps_q^lambda(T_w)` over S_n,
/// zeros omitted.
///
/// Computed through quantum determinants: summing, over ordered set
/// partitions I of {1..n} with block sizes lambda, the straightened products
/// `qdet(I_1) ... qdet(I_r)`, the value at `T_w` is `q^{len(w)/2}` times the
/// coefficient of the sorted monomial `x^{e,w}`.
pub fn epsilon_char_table(
    n: usize,
    lambda: &Partition,
) -> Result<BTreeMap<Permutation, LaurentPoly>> {
    lambda.check_sum(n)?;
    let mut total = NcPolynomial::zero();
    for i in OrderedSetPartition::enumerate(n, lambda)? {
        let mut prod = NcPolynomial::monomial(NcMonomial::one());
        for block in i.blocks() {
            prod = prod.mul(&qdet(block)?);
        }
        total = total.add(&prod);
    }
    let nf = straighten(&total);
    let mut out = BTreeMap::new();
    for (p, c) in sorted_coords(&nf) {
        let val = &c * &LaurentPoly::monomial(p.length() as i32);
        if !val.is_zero() {
            out.insert(p, val);
        }
    }
    Ok(out)
}
