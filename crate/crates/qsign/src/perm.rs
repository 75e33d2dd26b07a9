//! Permutations, generator words, Coxeter orders, and set partitions.
//!
//! Conventions, fixed once and used everywhere:
//!
//! * One-line notation `w_1 ... w_n` with `w(i) = w_i`.
//! * The product `u * v` means "apply u first, then v":
//!   `(u * v)(i) = v(u(i))`.  Under this rule, multiplying by the adjacent
//!   transposition `s_i` on the *left* swaps positions i, i+1 of the one-line
//!   word, while multiplying on the *right* swaps the values i, i+1.
//! * A word `[i_1, ..., i_m]` denotes the product `s_{i_1} * ... * s_{i_m}`.
//!   Equivalently, the one-line notation of that product is obtained from
//!   `1...n` by applying the letters left to right as value swaps.  This is
//!   exactly the convention under which the all-crossings path family of a
//!   wiring diagram has the word's permutation as its type.
//!
//! The length function is inversion count; the Bruhat order is decided by the
//! prefix-dominance criterion and the left weak order by the length
//! cocycle condition `len(v u^{-1}) + len(u) = len(v)`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A permutation of 1..=n in one-line notation.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    oneline: Vec<u8>,
}

impl Permutation {
    /// The identity permutation of 1..=n.
    pub fn identity(n: usize) -> Self {
        Permutation { oneline: (1..=n as u8).collect() }
    }

    /// Validates and wraps a one-line word.
    pub fn from_oneline(oneline: Vec<u8>) -> Result<Self> {
        let n = oneline.len();
        if n == 0 || n > 255 {
            return Err(Error::InvalidOneline(format!("length {n} out of range 1..=255")));
        }
        let mut seen = vec![false; n + 1];
        for &x in &oneline {
            if x == 0 || x as usize > n || seen[x as usize] {
                return Err(Error::InvalidOneline(format!("{oneline:?}")));
            }
            seen[x as usize] = true;
        }
        Ok(Permutation { oneline })
    }

    pub fn n(&self) -> usize {
        self.oneline.len()
    }

    pub fn oneline(&self) -> &[u8] {
        &self.oneline
    }

    /// The image of i (1-based).
    pub fn image(&self, i: u8) -> u8 {
        self.oneline[i as usize - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.oneline.iter().enumerate().all(|(k, &x)| x as usize == k + 1)
    }

    /// The product "self, then other".
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.n(), other.n(), "permutation sizes differ");
        Permutation { oneline: self.oneline.iter().map(|&x| other.image(x)).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut oneline = vec![0u8; self.n()];
        for (i, &x) in self.oneline.iter().enumerate() {
            oneline[x as usize - 1] = i as u8 + 1;
        }
        Permutation { oneline }
    }

    /// Coxeter length = number of inversions.
    pub fn length(&self) -> usize {
        let w = &self.oneline;
        let mut inv = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// s_i * self: swaps positions i and i+1 (1-based).
    pub fn left_mul_gen(&self, i: u8) -> Permutation {
        let mut oneline = self.oneline.clone();
        oneline.swap(i as usize - 1, i as usize);
        Permutation { oneline }
    }

    /// self * s_i: swaps the values i and i+1.
    pub fn right_mul_gen(&self, i: u8) -> Permutation {
        let mut oneline = self.oneline.clone();
        for x in oneline.iter_mut() {
            if *x == i {
                *x = i + 1;
            } else if *x == i + 1 {
                *x = i;
            }
        }
        Permutation { oneline }
    }

    /// True when s_i * self is shorter than self.
    pub fn has_left_descent(&self, i: u8) -> bool {
        self.oneline[i as usize - 1] > self.oneline[i as usize]
    }

    /// True when self * s_i is shorter than self.
    pub fn has_right_descent(&self, i: u8) -> bool {
        // value i+1 occurs before value i
        let mut pos = [0usize; 2];
        for (k, &x) in self.oneline.iter().enumerate() {
            if x == i {
                pos[0] = k;
            } else if x == i + 1 {
                pos[1] = k;
            }
        }
        pos[1] < pos[0]
    }

    /// All n! permutations of 1..=n in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        (1..=n as u8)
            .permutations(n)
            .map(|oneline| Permutation { oneline })
            .collect()
    }

    /// Cycles of the permutation, each starting at its least element,
    /// ordered by least element.
    pub fn cycles(&self) -> Vec<Vec<u8>> {
        let n = self.n();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n as u8 {
            if seen[start as usize] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cyc.push(x);
                x = self.image(x);
            }
            out.push(cyc);
        }
        out
    }

    /// True when some subsequence of self is order-isomorphic to `pattern`.
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        let k = pattern.n();
        if k > self.n() {
            return false;
        }
        self.oneline
            .iter()
            .combinations(k)
            .any(|sub| is_order_isomorphic(&sub, pattern.oneline()))
    }

    /// True when none of the given patterns occurs.
    pub fn avoids_patterns(&self, patterns: &[Permutation]) -> bool {
        patterns.iter().all(|p| !self.contains_pattern(p))
    }

    /// True when the permutation is 321-hexagon-avoiding: it avoids 321,
    /// 56781234, 56718234, 46781235, and 46718235.
    pub fn is_321_hexagon_avoiding(&self) -> bool {
        self.avoids_patterns(&hexagon_patterns())
    }

    /// True when the permutation avoids both 321 and 3412.
    pub fn is_321_and_3412_avoiding(&self) -> bool {
        self.avoids_patterns(&[
            Permutation::from_oneline(vec![3, 2, 1]).unwrap(),
            Permutation::from_oneline(vec![3, 4, 1, 2]).unwrap(),
        ])
    }

    /// Parses either a comma-free digit string ("213", for n <= 9) or a
    /// comma-separated list ("2,1,3").
    pub fn parse(s: &str) -> Result<Permutation> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::Parse("empty permutation".into()));
        }
        let oneline: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<u8>().map_err(|_| Error::Parse(format!("bad entry in {s:?}"))))
                .collect::<Result<_>>()?
        } else {
            s.chars()
                .map(|c| {
                    c.to_digit(10)
                        .filter(|&d| d > 0)
                        .map(|d| d as u8)
                        .ok_or_else(|| Error::Parse(format!("bad digit in {s:?}")))
                })
                .collect::<Result<_>>()?
        };
        Permutation::from_oneline(oneline)
    }
}

impl fmt::Display for Permutation {
    /// Digits for n <= 9 ("213"), comma-separated otherwise.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &x in &self.oneline {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            write!(f, "{}", self.oneline.iter().map(|x| x.to_string()).join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn is_order_isomorphic(sub: &[&u8], pattern: &[u8]) -> bool {
    debug_assert_eq!(sub.len(), pattern.len());
    for i in 0..sub.len() {
        for j in i + 1..sub.len() {
            if (sub[i] < sub[j]) != (pattern[i] < pattern[j]) {
                return false;
            }
        }
    }
    true
}

fn hexagon_patterns() -> Vec<Permutation> {
    ["321", "56781234", "56718234", "46781235", "46718235"]
        .iter()
        .map(|s| Permutation::parse(s).unwrap())
        .collect()
}

/// A word in the Coxeter generators s_1, ..., s_{n-1} of S_n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Word {
    n: usize,
    letters: Vec<u8>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<u8>) -> Result<Self> {
        if n == 0 || n > 255 {
            return Err(Error::Invalid(format!("ambient size n={n} out of range 1..=255")));
        }
        for &a in &letters {
            if a == 0 || a as usize >= n {
                return Err(Error::LetterOutOfRange { letter: a as usize, n });
            }
        }
        Ok(Word { n, letters })
    }

    pub fn empty(n: usize) -> Self {
        Word { n, letters: Vec::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[u8] {
        &self.letters
    }

    /// The product s_{i_1} * ... * s_{i_m} of the letters.
    pub fn permutation(&self) -> Permutation {
        let mut w = Permutation::identity(self.n);
        for &a in &self.letters {
            w = w.right_mul_gen(a);
        }
        w
    }

    /// True when the word length equals the length of its permutation.
    pub fn is_reduced(&self) -> bool {
        self.permutation().length() == self.len()
    }

    /// The subword at the given index set (for Bruhat subword checks, tests).
    pub fn subword(&self, indices: &[usize]) -> Word {
        Word { n: self.n, letters: indices.iter().map(|&i| self.letters[i]).collect() }
    }

    /// Splits into prefix/suffix words at position k.
    pub fn split_at(&self, k: usize) -> (Word, Word) {
        let (a, b) = self.letters.split_at(k);
        (Word { n: self.n, letters: a.to_vec() }, Word { n: self.n, letters: b.to_vec() })
    }

    /// Parses a comma-separated letter list; the empty string is the empty word.
    pub fn parse(n: usize, s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() {
            return Word::new(n, Vec::new());
        }
        let letters = s
            .split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| Error::Parse(format!("bad letter in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Word::new(n, letters)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letters.iter().map(|a| a.to_string()).join(","))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Bruhat order: u <= v.
///
/// Decided by prefix dominance: for every i, the k-th largest entry among
/// `u_1..u_i` is at most the k-th largest among `v_1..v_i`.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> bool {
    assert_eq!(u.n(), v.n(), "permutation sizes differ");
    let n = u.n();
    let mut up: Vec<u8> = Vec::with_capacity(n);
    let mut vp: Vec<u8> = Vec::with_capacity(n);
    for i in 0..n {
        let (a, b) = (u.oneline()[i], v.oneline()[i]);
        let ka = up.partition_point(|&x| x > a);
        up.insert(ka, a);
        let kb = vp.partition_point(|&x| x > b);
        vp.insert(kb, b);
        if up.iter().zip(vp.iter()).any(|(x, y)| x > y) {
            return false;
        }
    }
    true
}

/// Left weak order: u <= v, i.e. some reduced word for v ends with a reduced
/// word for u.  Equivalent to len(v u^{-1}) + len(u) = len(v).
pub fn weak_leq(u: &Permutation, v: &Permutation) -> bool {
    assert_eq!(u.n(), v.n(), "permutation sizes differ");
    v.then(&u.inverse()).length() + u.length() == v.length()
}

/// All reduced words for w, generated by peeling right descents; the result
/// is deduplicated by construction and sorted lexicographically.
pub fn reduced_words(w: &Permutation) -> Vec<Word> {
    fn rec(w: &Permutation, out: &mut Vec<Vec<u8>>, acc: &mut Vec<u8>) {
        if w.is_identity() {
            let mut word = acc.clone();
            word.reverse();
            out.push(word);
            return;
        }
        for i in 1..w.n() as u8 {
            if w.has_right_descent(i) {
                acc.push(i);
                rec(&w.right_mul_gen(i), out, acc);
                acc.pop();
            }
        }
    }
    let mut raw = Vec::new();
    rec(w, &mut raw, &mut Vec::new());
    raw.sort();
    raw.into_iter().map(|letters| Word { n: w.n(), letters }).collect()
}

/// An integer partition with positive, weakly decreasing parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    parts: Vec<u8>,
}

impl Partition {
    pub fn new(parts: Vec<u8>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidPartition("no parts".into()));
        }
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::InvalidPartition(format!("zero part in {parts:?}")));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("parts not weakly decreasing: {parts:?}")));
        }
        Ok(Partition { parts })
    }

    pub fn parts(&self) -> &[u8] {
        &self.parts
    }

    pub fn sum(&self) -> usize {
        self.parts.iter().map(|&p| p as usize).sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Checks that the partition sums to n.
    pub fn check_sum(&self, n: usize) -> Result<()> {
        if self.sum() != n {
            return Err(Error::InvalidPartition(format!("{self} does not sum to {n}")));
        }
        Ok(())
    }

    /// All partitions of n, in lexicographically decreasing order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn rec(rem: usize, cap: usize, acc: &mut Vec<u8>, out: &mut Vec<Partition>) {
            if rem == 0 {
                out.push(Partition { parts: acc.clone() });
                return;
            }
            for p in (1..=rem.min(cap)).rev() {
                acc.push(p as u8);
                rec(rem - p, p, acc, out);
                acc.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }

    pub fn parse(s: &str) -> Result<Partition> {
        let parts = s
            .trim()
            .split(',')
            .map(|t| t.trim().parse::<u8>().map_err(|_| Error::Parse(format!("bad part in {s:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.parts.iter().map(|p| p.to_string()).join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// n! / (lambda_1! * ... * lambda_r!), computed exactly via binomials.
pub fn multinomial(n: usize, lambda: &Partition) -> i64 {
    assert_eq!(lambda.sum(), n, "partition does not sum to n");
    let mut rem = n as i64;
    let mut acc: i64 = 1;
    for &p in lambda.parts() {
        acc = acc
            .checked_mul(binomial(rem, p as i64))
            .expect("integer overflow in multinomial");
        rem -= p as i64;
    }
    acc
}

fn binomial(n: i64, k: i64) -> i64 {
    let k = k.min(n - k);
    let mut acc: i64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i).expect("integer overflow in binomial") / (i + 1);
    }
    acc
}

/// An ordered set partition (I_1, ..., I_r) of {1, ..., n}; each block is
/// stored sorted ascending.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrderedSetPartition {
    blocks: Vec<Vec<u8>>,
}

impl OrderedSetPartition {
    pub fn new(blocks: Vec<Vec<u8>>) -> Result<Self> {
        let n: usize = blocks.iter().map(|b| b.len()).sum();
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidSetPartition("empty block".into()));
            }
            for &x in b {
                if x == 0 || x as usize > n || seen[x as usize] {
                    return Err(Error::InvalidSetPartition(format!("{blocks:?}")));
                }
                seen[x as usize] = true;
            }
        }
        let mut blocks = blocks;
        for b in blocks.iter_mut() {
            b.sort_unstable();
        }
        Ok(OrderedSetPartition { blocks })
    }

    pub fn n(&self) -> usize {
        self.blocks.iter().map(|b| b.len()).sum()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<u8>] {
        &self.blocks
    }

    pub fn block_sizes(&self) -> Vec<u8> {
        self.blocks.iter().map(|b| b.len() as u8).collect()
    }

    /// 0-based index of the block containing x.
    pub fn block_of(&self, x: u8) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&x))
            .expect("element outside the partitioned set")
    }

    /// The permutation whose one-line notation lists each block in increasing
    /// order, blocks concatenated left to right.  These are the minimal coset
    /// representatives used to index the blocks of an induced character.
    pub fn concat_permutation(&self) -> Permutation {
        let oneline: Vec<u8> = self.blocks.iter().flatten().copied().collect();
        Permutation::from_oneline(oneline).expect("blocks form a permutation")
    }

    /// All ordered set partitions of {1..n} with block sizes lambda.
    pub fn enumerate(n: usize, lambda: &Partition) -> Result<Vec<OrderedSetPartition>> {
        lambda.check_sum(n)?;
        fn rec(
            remaining: &[u8],
            sizes: &[u8],
            acc: &mut Vec<Vec<u8>>,
            out: &mut Vec<OrderedSetPartition>,
        ) {
            match sizes.split_first() {
                None => out.push(OrderedSetPartition { blocks: acc.clone() }),
                Some((&sz, rest)) => {
                    for combo in remaining.iter().copied().combinations(sz as usize) {
                        let next: Vec<u8> =
                            remaining.iter().copied().filter(|x| !combo.contains(x)).collect();
                        acc.push(combo);
                        rec(&next, rest, acc, out);
                        acc.pop();
                    }
                }
            }
        }
        let all: Vec<u8> = (1..=n as u8).collect();
        let mut out = Vec::new();
        rec(&all, lambda.parts(), &mut Vec::new(), &mut out);
        Ok(out)
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered = self
            .blocks
            .iter()
            .map(|b| format!("{{{}}}", b.iter().map(|x| x.to_string()).join(",")))
            .join(", ");
        write!(f, "({rendered})")
    }
}

impl fmt::Debug for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The Young subgroup S_lambda of S_n: all permutations mapping each
/// consecutive block of positions {1..l_1}, {l_1+1..l_1+l_2}, ... to itself.
pub fn young_subgroup(lambda: &Partition, n: usize) -> Result<Vec<Permutation>> {
    lambda.check_sum(n)?;
    let mut segments: Vec<Vec<Vec<u8>>> = Vec::new();
    let mut start = 1u8;
    for &p in lambda.parts() {
        let vals: Vec<u8> = (start..start + p).collect();
        segments.push(vals.iter().copied().permutations(p as usize).collect());
        start += p;
    }
    let mut out = Vec::new();
    for combo in segments.iter().multi_cartesian_product() {
        let oneline: Vec<u8> = combo.into_iter().flatten().copied().collect();
        out.push(Permutation::from_oneline(oneline)?);
    }
    out.sort();
    Ok(out)
}
