//! Free words, braid words, the Artin representation and permutations.
//!
//! Composition convention (used everywhere in the crate):
//! `artin(a·b)(t) = artin(a)(artin(b)(t))`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default cap on the number of syllables of any reduced word we build.
pub const DEFAULT_WORD_CAP: usize = 1_000_000;

/// Appends a syllable to an already reduced syllable stack, merging and cancelling.
fn push_syllable(stack: &mut Vec<(u32, i64)>, g: u32, e: i64) {
    if e == 0 {
        return;
    }
    if let Some(last) = stack.last_mut() {
        if last.0 == g {
            last.1 += e;
            if last.1 == 0 {
                stack.pop();
            }
            return;
        }
    }
    stack.push((g, e));
}

/// Element of the free group on `t_1..t_rank`, stored freely reduced as syllables.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct FreeWord {
    rank: usize,
    syllables: Vec<(u32, i64)>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord { rank, syllables: Vec::new() }
    }

    pub fn generator(rank: usize, i: u32) -> Result<Self> {
        Self::free_reduce(rank, &[(i, 1)])
    }

    /// Freely reduces an arbitrary syllable list.
    pub fn free_reduce(rank: usize, raw: &[(u32, i64)]) -> Result<Self> {
        let mut stack = Vec::with_capacity(raw.len());
        for &(g, e) in raw {
            if g == 0 || g as usize > rank {
                return Err(Error::IndexOutOfRange { index: g as i64, bound: rank });
            }
            push_syllable(&mut stack, g, e);
        }
        Ok(FreeWord { rank, syllables: stack })
    }

    /// Builds a word from signed letters (`-3` is `t3^-1`).
    pub fn from_letters(rank: usize, letters: &[i64]) -> Result<Self> {
        let raw: Vec<(u32, i64)> = letters.iter().map(|&x| (x.unsigned_abs() as u32, x.signum())).collect();
        Self::free_reduce(rank, &raw)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn syllables(&self) -> &[(u32, i64)] {
        &self.syllables
    }

    pub fn is_identity(&self) -> bool {
        self.syllables.is_empty()
    }

    pub fn syllable_len(&self) -> usize {
        self.syllables.len()
    }

    pub fn letter_len(&self) -> u64 {
        self.syllables.iter().map(|s| s.1.unsigned_abs()).sum()
    }

    /// Expands into signed letters.
    pub fn letters(&self) -> Vec<i64> {
        let mut out = Vec::new();
        for &(g, e) in &self.syllables {
            let l = if e > 0 { g as i64 } else { -(g as i64) };
            out.extend(std::iter::repeat_n(l, e.unsigned_abs() as usize));
        }
        out
    }

    pub fn inverse(&self) -> Self {
        FreeWord { rank: self.rank, syllables: self.syllables.iter().rev().map(|&(g, e)| (g, -e)).collect() }
    }

    pub fn mul(&self, other: &FreeWord) -> Result<FreeWord> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch { left: self.rank, right: other.rank });
        }
        let mut stack = self.syllables.clone();
        for &(g, e) in &other.syllables {
            push_syllable(&mut stack, g, e);
        }
        Ok(FreeWord { rank: self.rank, syllables: stack })
    }

    /// Product of several words of equal rank.
    pub fn product<'a, I: IntoIterator<Item = &'a FreeWord>>(rank: usize, ws: I) -> Result<FreeWord> {
        let mut acc = FreeWord::identity(rank);
        for w in ws {
            acc = acc.mul(w)?;
        }
        Ok(acc)
    }

    pub fn pow(&self, e: i64) -> FreeWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut stack = Vec::new();
        for _ in 0..e.unsigned_abs() {
            for &(g, x) in &base.syllables {
                push_syllable(&mut stack, g, x);
            }
        }
        FreeWord { rank: self.rank, syllables: stack }
    }

    /// Removes matching prefix/suffix pairs, producing a cyclically reduced conjugate.
    pub fn cyclic_reduce(&self) -> FreeWord {
        let mut s = self.syllables.clone();
        while s.len() >= 2 && s[0].0 == s[s.len() - 1].0 {
            // conjugate the last syllable round to the front and merge
            let last = s.pop().unwrap();
            let merged = s[0].1 + last.1;
            if merged == 0 {
                s.remove(0);
            } else {
                s[0].1 = merged;
                break;
            }
        }
        FreeWord { rank: self.rank, syllables: s }
    }

    /// Canonical representative of the conjugacy class of `w` together with that of `w⁻¹`:
    /// the lexicographically least letter rotation of the cyclic reduction of either.
    pub fn conjugacy_key(&self) -> Vec<i64> {
        let c = self.cyclic_reduce();
        if c.is_identity() {
            return Vec::new();
        }
        let a = least_rotation(&c.letters());
        let b = least_rotation(&c.inverse().letters());
        a.min(b)
    }

    /// Per-generator exponent sums (the abelianization).
    pub fn exponent_sums(&self) -> Vec<i64> {
        let mut v = vec![0; self.rank];
        for &(g, e) in &self.syllables {
            v[g as usize - 1] += e;
        }
        v
    }

    pub fn parse(rank: usize, s: &str) -> Result<FreeWord> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(FreeWord::identity(rank));
        }
        let mut raw = Vec::new();
        for tok in s.split_whitespace() {
            let body = tok.strip_prefix('t').ok_or_else(|| Error::Parse(format!("bad free-word token {tok:?}")))?;
            let (g, e) = match body.split_once('^') {
                Some((g, e)) => (g, e),
                None => (body, "1"),
            };
            let g: u32 = g.parse().map_err(|_| Error::Parse(format!("bad generator in {tok:?}")))?;
            let e: i64 = e.parse().map_err(|_| Error::Parse(format!("bad exponent in {tok:?}")))?;
            if e == 0 {
                return Err(Error::Parse(format!("zero exponent in {tok:?}")));
            }
            raw.push((g, e));
        }
        FreeWord::free_reduce(rank, &raw)
    }
}

fn least_rotation(v: &[i64]) -> Vec<i64> {
    let n = v.len();
    let mut best: Option<Vec<i64>> = None;
    for r in 0..n {
        let cand: Vec<i64> = v[r..].iter().chain(v[..r].iter()).copied().collect();
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    }
    best.unwrap_or_default()
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.syllables.is_empty() {
            return write!(f, "1");
        }
        for (k, (g, e)) in self.syllables.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "t{g}^{e}")?;
        }
        Ok(())
    }
}

/// Endomorphism of a free group, given by the images of the generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FreeEndo {
    rank: usize,
    images: Vec<FreeWord>,
}

impl FreeEndo {
    pub fn identity(rank: usize) -> Self {
        let images = (1..=rank as u32).map(|i| FreeWord { rank, syllables: vec![(i, 1)] }).collect();
        FreeEndo { rank, images }
    }

    pub fn new(rank: usize, images: Vec<FreeWord>) -> Result<Self> {
        if images.len() != rank {
            return Err(Error::RankMismatch { left: rank, right: images.len() });
        }
        if let Some(w) = images.iter().find(|w| w.rank != rank) {
            return Err(Error::RankMismatch { left: rank, right: w.rank });
        }
        Ok(FreeEndo { rank, images })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[FreeWord] {
        &self.images
    }

    pub fn image(&self, i: usize) -> &FreeWord {
        &self.images[i - 1]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(k, w)| w.syllables == [(k as u32 + 1, 1)])
    }

    /// Substitutes images into `w`. Fails if any reduced prefix exceeds `cap` syllables.
    pub fn apply(&self, w: &FreeWord, cap: usize) -> Result<FreeWord> {
        if w.rank != self.rank {
            return Err(Error::RankMismatch { left: self.rank, right: w.rank });
        }
        let mut stack: Vec<(u32, i64)> = Vec::new();
        for &(g, e) in &w.syllables {
            let img = &self.images[g as usize - 1];
            for _ in 0..e.unsigned_abs() {
                if e > 0 {
                    for &(h, x) in &img.syllables {
                        push_syllable(&mut stack, h, x);
                    }
                } else {
                    for &(h, x) in img.syllables.iter().rev() {
                        push_syllable(&mut stack, h, -x);
                    }
                }
                if stack.len() > cap {
                    return Err(Error::WordLengthOverflow { len: stack.len(), cap });
                }
            }
        }
        Ok(FreeWord { rank: self.rank, syllables: stack })
    }

    /// `(self ⊛ g)(t) = self(g(t))`.
    pub fn compose(&self, g: &FreeEndo, cap: usize) -> Result<FreeEndo> {
        if self.rank != g.rank {
            return Err(Error::RankMismatch { left: self.rank, right: g.rank });
        }
        let images = g.images.iter().map(|w| self.apply(w, cap)).collect::<Result<_>>()?;
        Ok(FreeEndo { rank: self.rank, images })
    }
}

impl fmt::Display for FreeEndo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, w) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "t{} -> {}", k + 1, w)?;
        }
        Ok(())
    }
}

/// Word in the Artin generators of `Br_strands`.
///
/// Letters are signed: `+i` is `σ_i`, `-i` is `σ_i⁻¹`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<i32>,
}

impl BraidWord {
    pub fn identity(strands: usize) -> Self {
        BraidWord { strands, letters: Vec::new() }
    }

    pub fn new(strands: usize, letters: Vec<i32>) -> Result<Self> {
        if strands == 0 {
            return Err(Error::InvalidParameter("braid needs at least one strand".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strands {
                return Err(Error::IndexOutOfRange { index: l.unsigned_abs() as i64, bound: strands - 1 });
            }
        }
        Ok(BraidWord { strands, letters })
    }

    /// Single Artin generator `σ_i` (or its inverse when `i < 0`).
    pub fn sigma(strands: usize, i: i32) -> Result<Self> {
        Self::new(strands, vec![i])
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[i32] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Concatenation `self·other`. Panics on mismatched strand counts, which is a
    /// programming error inside the generator constructors.
    pub fn mul(&self, other: &BraidWord) -> BraidWord {
        assert_eq!(self.strands, other.strands, "strand mismatch in braid product");
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { strands: self.strands, letters }
    }

    pub fn try_mul(&self, other: &BraidWord) -> Result<BraidWord> {
        if self.strands != other.strands {
            return Err(Error::StrandMismatch { left: self.strands, right: other.strands });
        }
        Ok(self.mul(other))
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().map(|l| -l).collect() }
    }

    pub fn pow(&self, e: i64) -> BraidWord {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.letters.len() * e.unsigned_abs() as usize);
        for _ in 0..e.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        BraidWord { strands: self.strands, letters }
    }

    /// `c · self · c⁻¹`.
    pub fn conj_by(&self, c: &BraidWord) -> BraidWord {
        c.mul(self).mul(&c.inverse())
    }

    /// Same letters in reverse order (not inverted).
    pub fn reversed(&self) -> BraidWord {
        BraidWord { strands: self.strands, letters: self.letters.iter().rev().copied().collect() }
    }

    /// Cancels adjacent `σ_i σ_i⁻¹` pairs (a cheap normalisation, not a word-problem solver).
    pub fn free_reduced(&self) -> BraidWord {
        let mut out: Vec<i32> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { strands: self.strands, letters: out }
    }

    /// Same word viewed in a braid group with more strands.
    pub fn widen(&self, strands: usize) -> Result<BraidWord> {
        BraidWord::new(strands, self.letters.clone())
    }

    pub fn exponent_sum(&self) -> i64 {
        self.letters.iter().map(|l| l.signum() as i64).sum()
    }

    pub fn permutation(&self) -> Permutation {
        let mut p = Permutation::identity(self.strands);
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize;
            // perm(ab) = perm(a)∘perm(b): right-multiplying by a transposition swaps positions
            p.images.swap(i - 1, i);
        }
        p
    }

    pub fn parse(strands: usize, s: &str) -> Result<BraidWord> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(BraidWord::identity(strands));
        }
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            let (sign, body) = if let Some(b) = tok.strip_prefix('s') {
                (1, b)
            } else if let Some(b) = tok.strip_prefix('S') {
                (-1, b)
            } else {
                return Err(Error::Parse(format!("bad braid token {tok:?}")));
            };
            let i: i32 = body.parse().map_err(|_| Error::Parse(format!("bad braid token {tok:?}")))?;
            letters.push(sign * i);
        }
        BraidWord::new(strands, letters)
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (k, &l) in self.letters.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if l > 0 {
                write!(f, "s{l}")?;
            } else {
                write!(f, "S{}", -l)?;
            }
        }
        Ok(())
    }
}

/// Artin automorphism of `F_n` for a braid, with the default word cap.
pub fn artin_action(b: &BraidWord) -> Result<FreeEndo> {
    artin_action_capped(b, DEFAULT_WORD_CAP)
}

/// Artin automorphism, evaluated left to right as `F ← F ∘ artin(letter)`.
pub fn artin_action_capped(b: &BraidWord, cap: usize) -> Result<FreeEndo> {
    let n = b.strands;
    let mut f = FreeEndo::identity(n);
    for &l in &b.letters {
        let i = l.unsigned_abs() as usize - 1;
        let x = &f.images[i];
        let y = &f.images[i + 1];
        let (nx, ny) = if l > 0 { (x.mul(y)?.mul(&x.inverse())?, x.clone()) } else { (y.clone(), y.inverse().mul(x)?.mul(y)?) };
        for w in [&nx, &ny] {
            if w.syllable_len() > cap {
                return Err(Error::WordLengthOverflow { len: w.syllable_len(), cap });
            }
        }
        f.images[i] = nx;
        f.images[i + 1] = ny;
    }
    Ok(f)
}

/// Decides equality in `Br_n` by comparing Artin images.
pub fn braids_equal(a: &BraidWord, b: &BraidWord) -> Result<bool> {
    braids_equal_capped(a, b, DEFAULT_WORD_CAP)
}

pub fn braids_equal_capped(a: &BraidWord, b: &BraidWord, cap: usize) -> Result<bool> {
    if a.strands != b.strands {
        return Err(Error::StrandMismatch { left: a.strands, right: b.strands });
    }
    if a.exponent_sum() != b.exponent_sum() || a.permutation() != b.permutation() {
        return Ok(false);
    }
    // a = b iff a·b⁻¹ is trivial; the quotient word tends to stay shorter than either image
    let q = a.mul(&b.inverse()).free_reduced();
    Ok(artin_action_capped(&q, cap)?.is_identity())
}

/// Bijection of `{1..n}`; composition is `(p∘q)(x) = p(q(x))`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>, // 0-based
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n).collect() }
    }

    /// From 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidParameter(format!("not a permutation: {images:?}")));
            }
            seen[x - 1] = true;
        }
        Ok(Permutation { images: images.iter().map(|x| x - 1).collect() })
    }

    pub fn transposition(n: usize, i: usize, j: usize) -> Result<Self> {
        if i == 0 || j == 0 || i > n || j > n {
            return Err(Error::IndexOutOfRange { index: i.max(j) as i64, bound: n });
        }
        let mut p = Self::identity(n);
        p.images.swap(i - 1, j - 1);
        Ok(p)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 1-based image of 1-based `x`.
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] + 1
    }

    pub fn compose(&self, q: &Permutation) -> Permutation {
        Permutation { images: q.images.iter().map(|&x| self.images[x]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut r = vec![0; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            r[v] = k;
        }
        Permutation { images: r }
    }

    /// Nontrivial cycles, each starting at its least element, sorted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            let mut c = vec![s + 1];
            seen[s] = true;
            let mut x = self.images[s];
            while x != s {
                seen[x] = true;
                c.push(x + 1);
                x = self.images[x];
            }
            if c.len() > 1 {
                out.push(c);
            }
        }
        out
    }

    /// Sorted cycle lengths including fixed points.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        let moved: usize = t.iter().sum();
        t.extend(std::iter::repeat_n(1, self.images.len() - moved));
        t.sort_unstable();
        t
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cs = self.cycles();
        if cs.is_empty() {
            return write!(f, "()");
        }
        for c in cs {
            let parts: Vec<String> = c.iter().map(usize::to_string).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl FromStr for Permutation {
    type Err = Error;
    /// Parses `n:(1 2)(3 4)`.
    fn from_str(s: &str) -> Result<Self> {
        let (n, cyc) = s.split_once(':').ok_or_else(|| Error::Parse("permutation must be written n:(a b)...".into()))?;
        let n: usize = n.trim().parse().map_err(|_| Error::Parse(format!("bad degree {n:?}")))?;
        let mut p = Permutation::identity(n);
        for part in cyc.split(')').map(str::trim).filter(|x| !x.is_empty()) {
            let body = part.strip_prefix('(').ok_or_else(|| Error::Parse(format!("bad cycle {part:?}")))?;
            let pts: Vec<usize> = body
                .split_whitespace()
                .map(|x| x.parse().map_err(|_| Error::Parse(format!("bad point {x:?}"))))
                .collect::<Result<_>>()?;
            let mut c = Permutation::identity(n);
            for k in 0..pts.len() {
                let (a, b) = (pts[k], pts[(k + 1) % pts.len()]);
                if a == 0 || a > n || b == 0 || b > n {
                    return Err(Error::IndexOutOfRange { index: a.max(b) as i64, bound: n });
                }
                c.images[a - 1] = b - 1;
            }
            Permutation::from_images(&c.images.iter().map(|x| x + 1).collect::<Vec<_>>())?;
            p = p.compose(&c);
        }
        Ok(p)
    }
}
