//! Named braid elements (bands, cables, extended bands, τ-twists) and the
//! generator families built from them.
//!
//! Positions are 1-based. For an exponent vector `l`, the index `i` sits at
//! puncture `rank(i) + 1`, so the last component varies fastest.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::multiindex::{format_components, is_correlated, is_correlated_pair, ExponentVector, MultiIndex};
use crate::words::BraidWord;

fn check_positions(strands: usize, ps: &[usize]) -> Result<()> {
    for &p in ps {
        if p == 0 || p > strands {
            return Err(Error::IndexOutOfRange { index: p as i64, bound: strands });
        }
    }
    Ok(())
}

/// Descending run `σ_from σ_{from-1} ⋯ σ_to` (empty when `from < to`).
fn run_down(from: usize, to: usize) -> Vec<i32> {
    if from < to {
        return Vec::new();
    }
    (to..=from).rev().map(|x| x as i32).collect()
}

/// Ascending run `σ_from ⋯ σ_to` (empty when `from > to`).
fn run_up(from: usize, to: usize) -> Vec<i32> {
    if from > to {
        return Vec::new();
    }
    (from..=to).map(|x| x as i32).collect()
}

/// Front band `σ_{i,j} = σ_{j-1}⋯σ_{i+1} σ_i σ_{i+1}⁻¹⋯σ_{j-1}⁻¹`; symmetric in `i, j`.
pub fn band(strands: usize, i: usize, j: usize) -> Result<BraidWord> {
    check_positions(strands, &[i, j])?;
    if i == j {
        return Err(Error::InvalidParameter(format!("band needs distinct positions, got {i},{j}")));
    }
    let (i, j) = (i.min(j), i.max(j));
    let pre = BraidWord::new(strands, run_down(j - 1, i + 1))?;
    Ok(BraidWord::sigma(strands, i as i32)?.conj_by(&pre))
}

/// Back band `σ̌_{i,j}`: the half twist along the arc passing behind the intermediate punctures.
pub fn back_band(strands: usize, i: usize, j: usize) -> Result<BraidWord> {
    Ok(band(strands, i, j)?.reversed())
}

/// Band from `i` to `k` passing in front of `i+1..=j` and behind `j+1..k`.
pub fn split_band(strands: usize, i: usize, j: usize, k: usize) -> Result<BraidWord> {
    check_positions(strands, &[i, j, k])?;
    if !(i <= j && j < k) {
        return Err(Error::InvalidParameter(format!("split band needs i <= j < k, got {i},{j},{k}")));
    }
    let front = BraidWord::new(strands, run_down(j, i + 1))?;
    let back = BraidWord::new(strands, run_up(j + 1, k - 1))?;
    Ok(back.inverse().mul(&BraidWord::sigma(strands, i as i32)?.conj_by(&front)).mul(&back))
}

/// Subcable twist `δ_{i,j} = σ_i σ_{i+1} ⋯ σ_{j-1}` on consecutive positions.
pub fn subcable(strands: usize, i: usize, j: usize) -> Result<BraidWord> {
    check_positions(strands, &[i, j])?;
    if i > j {
        return Err(Error::InvalidParameter(format!("subcable needs i <= j, got {i},{j}")));
    }
    BraidWord::new(strands, run_up(i, j - 1))
}

/// Fundamental element `δ_k = σ_1⋯σ_{k-1}` viewed in `Br_strands`.
pub fn fundamental(strands: usize, k: usize) -> Result<BraidWord> {
    subcable(strands, 1, k)
}

/// The `l_n`-band homomorphism `η`: `Br_m → Br_{m·l_n}`, sending `σ_p` to the half twist of
/// two adjacent ribbons of `l_n` strands.
pub fn cable_band(ln: usize, b: &BraidWord) -> Result<BraidWord> {
    if ln == 0 {
        return Err(Error::InvalidParameter("block size must be positive".into()));
    }
    let strands = b.strands() * ln;
    let mut out = Vec::new();
    for &x in b.letters() {
        let p = x.unsigned_abs() as usize;
        let q = (p - 1) * ln + 1;
        let mut img = Vec::new();
        for k in 0..ln {
            img.extend(run_down(q + ln - 1 + k, q + k));
        }
        if x > 0 {
            out.extend(img);
        } else {
            out.extend(img.iter().rev().map(|y| -y));
        }
    }
    BraidWord::new(strands, out)
}

/// Primary homomorphism `φ_{i1}`: `Br_{l_2⋯l_n} → Br_μ`, shifting into block `i1`.
pub fn lift_primary(i1: u32, b: &BraidWord, l: &ExponentVector) -> Result<BraidWord> {
    let m: usize = l.as_slice()[1..].iter().map(|&x| x as usize).product();
    if l.n() < 2 {
        return Err(Error::InvalidParameter("primary lifts need n >= 2".into()));
    }
    if b.strands() != m {
        return Err(Error::StrandMismatch { left: m, right: b.strands() });
    }
    if i1 == 0 || i1 > l.as_slice()[0] {
        return Err(Error::IndexOutOfRange { index: i1 as i64, bound: l.as_slice()[0] as usize });
    }
    let shift = (i1 as usize - 1) * m;
    let letters = b.letters().iter().map(|&x| x.signum() * (x.abs() + shift as i32)).collect();
    BraidWord::new(l.mu(), letters)
}

/// Secondary homomorphism `ψ_{i_n}`: `Br_{l_1⋯l_{n-1}} → Br_μ`, `σ_{i',j'} ↦ σ_{i'i_n, j'i_n}`.
pub fn lift_secondary(i_n: u32, b: &BraidWord, l: &ExponentVector) -> Result<BraidWord> {
    let ln = l.last() as usize;
    let m = l.mu() / ln;
    if l.n() < 2 {
        return Err(Error::InvalidParameter("secondary lifts need n >= 2".into()));
    }
    if b.strands() != m {
        return Err(Error::StrandMismatch { left: m, right: b.strands() });
    }
    if i_n == 0 || i_n as usize > ln {
        return Err(Error::IndexOutOfRange { index: i_n as i64, bound: ln });
    }
    let mut out = BraidWord::identity(l.mu());
    for &x in b.letters() {
        let p = x.unsigned_abs() as usize;
        let w = band(l.mu(), (p - 1) * ln + i_n as usize, p * ln + i_n as usize)?;
        out = out.mul(&if x > 0 { w } else { w.inverse() });
    }
    Ok(out)
}

/// Multiindex whose last component may lie outside `1..=l_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExtIndex {
    pub head: MultiIndex,
    pub last: i64,
}

impl ExtIndex {
    pub fn new(head: MultiIndex, last: i64) -> Self {
        ExtIndex { head, last }
    }

    pub fn from_index(i: &MultiIndex) -> Self {
        ExtIndex { head: i.head(), last: i.last() as i64 }
    }

    pub fn shifted(&self, by: i64) -> Self {
        ExtIndex { head: self.head.clone(), last: self.last + by }
    }

    pub fn label(&self) -> String {
        let mut parts: Vec<String> = self.head.components().iter().map(u32::to_string).collect();
        parts.push(self.last.to_string());
        if self.last >= 1 && self.last <= 9 && self.head.components().iter().all(|&c| c <= 9) {
            parts.concat()
        } else {
            format!("[{}]", parts.join(","))
        }
    }
}

/// Puncture geometry for an exponent vector: blocks of `l_n` consecutive punctures
/// indexed by the reduced multiindex `i'`.
#[derive(Clone, Debug)]
pub struct BpLayout {
    l: ExponentVector,
    reduced: Option<ExponentVector>,
    ln: usize,
}

impl BpLayout {
    pub fn new(l: &ExponentVector) -> Self {
        BpLayout { l: l.clone(), reduced: l.prefix(), ln: l.last() as usize }
    }

    pub fn exponents(&self) -> &ExponentVector {
        &self.l
    }

    pub fn strands(&self) -> usize {
        self.l.mu()
    }

    pub fn ln(&self) -> usize {
        self.ln
    }

    /// Reduced indices `i'` in order (a single empty index when `n = 1`).
    pub fn blocks(&self) -> Vec<MultiIndex> {
        match &self.reduced {
            Some(r) => r.enumerate(),
            None => vec![MultiIndex::new(Vec::new())],
        }
    }

    fn block_rank(&self, head: &MultiIndex) -> Result<usize> {
        match &self.reduced {
            Some(r) => r.rank(head),
            None if head.is_empty() => Ok(0),
            None => Err(Error::InvalidParameter("index has too many components".into())),
        }
    }

    pub fn position(&self, i: &MultiIndex) -> Result<usize> {
        self.l.position(i)
    }

    /// Puncture of `head · r` for an in-range last component `1 ≤ r ≤ l_n`.
    pub fn position_of(&self, head: &MultiIndex, r: i64) -> Result<usize> {
        if r < 1 || r > self.ln as i64 {
            return Err(Error::IndexOutOfRange { index: r, bound: self.ln });
        }
        Ok(self.block_rank(head)? * self.ln + r as usize)
    }

    /// Block cable twist `δ_{i'1, i'l_n}`.
    pub fn block_delta(&self, head: &MultiIndex) -> Result<BraidWord> {
        let p = self.block_rank(head)? * self.ln;
        BraidWord::new(self.strands(), run_up(p + 1, p + self.ln - 1))
    }

    /// Cable twist `δ_φ`: the product of all block cable twists.
    pub fn cable_delta(&self) -> Result<BraidWord> {
        let mut out = BraidWord::identity(self.strands());
        for h in self.blocks() {
            out = out.mul(&self.block_delta(&h)?);
        }
        Ok(out)
    }

    /// In-range representative `r ≡ c (mod l_n)` and shift `m = c − r`.
    fn representative(&self, c: i64) -> (i64, i64) {
        let ln = self.ln as i64;
        let r = (c - 1).rem_euclid(ln) + 1;
        (r, c - r)
    }

    /// Band `σ_{i,j}` on ordinary indices.
    pub fn sigma(&self, i: &MultiIndex, j: &MultiIndex) -> Result<BraidWord> {
        band(self.strands(), self.position(i)?, self.position(j)?)
    }

    /// Extended band: with `c = r + m` split into representative and shift,
    /// `σ_{i,j} = D_j^{m_j} D_i^{m_i} σ_{i_r,j_r} D_i^{-m_i} D_j^{-m_j}` where `D` is the block cable twist.
    pub fn ext_sigma(&self, i: &ExtIndex, j: &ExtIndex) -> Result<BraidWord> {
        let (ri, mi) = self.representative(i.last);
        let (rj, mj) = self.representative(j.last);
        let pi = self.block_rank(&i.head)? * self.ln + ri as usize;
        let pj = self.block_rank(&j.head)? * self.ln + rj as usize;
        let core = band(self.strands(), pi, pj)?;
        let di = self.block_delta(&i.head)?.pow(mi);
        let dj = self.block_delta(&j.head)?.pow(mj);
        Ok(core.conj_by(&dj.mul(&di)))
    }

    /// `τ_{i,j}`: the extended band at level ≤ 1; at higher level the extended band conjugated
    /// by `C = ∏ σ²_{i,p}` over the punctures `p` of the blocks strictly between, `C σ C⁻¹`.
    pub fn tau(&self, i: &ExtIndex, j: &ExtIndex) -> Result<BraidWord> {
        if i.head.is_empty() {
            return Err(Error::InvalidParameter("τ needs n >= 2".into()));
        }
        let (a1, b1) = (i.head.first(), j.head.first());
        let s = self.ext_sigma(i, j)?;
        if b1 <= a1 + 1 {
            return Ok(s);
        }
        let mut c = BraidWord::identity(self.strands());
        for p in self.l.enumerate() {
            if a1 < p.first() && p.first() < b1 {
                c = c.mul(&self.ext_sigma(i, &ExtIndex::from_index(&p))?.pow(2));
            }
        }
        Ok(s.conj_by(&c))
    }

    /// `η` for this layout: the `l_n`-band homomorphism from the reduced braid group.
    pub fn eta(&self, b: &BraidWord) -> Result<BraidWord> {
        cable_band(self.ln, b)
    }

    /// Band between blocks in the reduced braid group, `σ_{i',j'} ∈ Br_{μ/l_n}`.
    pub fn reduced_band(&self, a: &MultiIndex, b: &MultiIndex) -> Result<BraidWord> {
        band(self.strands() / self.ln, self.block_rank(a)? + 1, self.block_rank(b)? + 1)
    }
}

/// `τ_{i, j + shift}` for ordinary indices `i, j` with `i_1 < j_1`.
pub fn tau_generator(i: &MultiIndex, j: &MultiIndex, l: &ExponentVector, shift: i64) -> Result<BraidWord> {
    if l.n() < 2 || i.first() >= j.first() {
        return Err(Error::InvalidParameter("τ needs n >= 2 and i_1 < j_1".into()));
    }
    let lay = BpLayout::new(l);
    lay.tau(&ExtIndex::from_index(i), &ExtIndex::from_index(j).shifted(shift))
}

/// What to build with [`make_generator`].
#[derive(Clone, Debug)]
pub enum GeneratorSpec {
    Band { strands: usize, i: usize, j: usize },
    BackBand { strands: usize, i: usize, j: usize },
    SplitBand { strands: usize, i: usize, j: usize, k: usize },
    Subcable { strands: usize, i: usize, j: usize },
    Fundamental { strands: usize, k: usize },
    Cable { l: ExponentVector },
    Extended { l: ExponentVector, i: ExtIndex, j: ExtIndex },
    Tau { l: ExponentVector, i: MultiIndex, j: MultiIndex, shift: i64 },
}

pub fn make_generator(spec: &GeneratorSpec) -> Result<BraidWord> {
    match spec {
        GeneratorSpec::Band { strands, i, j } => band(*strands, *i, *j),
        GeneratorSpec::BackBand { strands, i, j } => back_band(*strands, *i, *j),
        GeneratorSpec::SplitBand { strands, i, j, k } => split_band(*strands, *i, *j, *k),
        GeneratorSpec::Subcable { strands, i, j } => subcable(*strands, *i, *j),
        GeneratorSpec::Fundamental { strands, k } => fundamental(*strands, *k),
        GeneratorSpec::Cable { l } => BpLayout::new(l).cable_delta(),
        GeneratorSpec::Extended { l, i, j } => BpLayout::new(l).ext_sigma(i, j),
        GeneratorSpec::Tau { l, i, j, shift } => tau_generator(i, j, l, *shift),
    }
}

/// `b = β0 σ_p^e β0⁻¹`, the shape used to read off two relators per generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub beta0: BraidWord,
    pub exponent: i64,
    pub position: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct LabeledBraid {
    pub label: String,
    pub kind: String,
    pub indices: Vec<String>,
    #[serde(serialize_with = "ser_word")]
    pub word: BraidWord,
    #[serde(skip)]
    pub factorization: Option<Factorization>,
}

fn ser_word<S: serde::Serializer>(w: &BraidWord, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&w.to_string())
}

/// Output of [`generator_family`].
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub family: String,
    pub strands: usize,
    pub generators: Vec<LabeledBraid>,
    /// The group lives in the spherical braid group: `(σ_1⋯σ_{n-1})^n = 1` is imposed.
    pub spherical: bool,
}

impl GeneratorSet {
    pub fn words(&self) -> Vec<BraidWord> {
        self.generators.iter().map(|g| g.word.clone()).collect()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(&self.generators).expect("generator json")
    }
}

/// Source element of a companion construction, in indices of the base exponent vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CompanionSource {
    Square(MultiIndex, MultiIndex),
    Cube(MultiIndex, MultiIndex),
    TripleConj(MultiIndex, MultiIndex, MultiIndex),
}

#[derive(Clone, Debug)]
pub enum FamilySpec {
    BpMonodromy(ExponentVector),
    An(usize),
    G(ExponentVector),
    F(ExponentVector),
    CwDelta(usize),
    E {
        l: usize,
        lp: usize,
    },
    ESpherical {
        k: usize,
        l: usize,
    },
    /// `l`-companions over `base`; `None` uses the monodromy generators of `base`.
    Companions {
        base: ExponentVector,
        l: u32,
        sources: Option<Vec<CompanionSource>>,
    },
}

impl FamilySpec {
    /// Parses `bp:2,2`, `an:4`, `g:2,2`, `f:2,3`, `cw:5`, `E:2,3`, `Es:1,0` (`k,l`) or
    /// `comp:2,2/3` (base exponents, then the companion exponent).
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, args) = s.split_once(':').ok_or_else(|| Error::Parse(format!("family spec must be kind:args, got {s:?}")))?;
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| Error::Parse(format!("bad number {x:?} in {s:?}")));
        let pair = || -> Result<(usize, usize)> {
            let (a, b) = args.split_once(',').ok_or_else(|| Error::Parse(format!("{kind} needs two numbers, got {args:?}")))?;
            Ok((num(a)?, num(b)?))
        };
        Ok(match kind {
            "bp" => FamilySpec::BpMonodromy(ExponentVector::parse(args)?),
            "an" => FamilySpec::An(num(args)?),
            "g" => FamilySpec::G(ExponentVector::parse(args)?),
            "f" => FamilySpec::F(ExponentVector::parse(args)?),
            "cw" => FamilySpec::CwDelta(num(args)?),
            "E" => {
                let (l, lp) = pair()?;
                FamilySpec::E { l, lp }
            }
            "Es" => {
                let (k, l) = pair()?;
                FamilySpec::ESpherical { k, l }
            }
            "comp" => {
                let (base, l) = args.split_once('/').ok_or_else(|| Error::Parse(format!("comp needs base/l, got {args:?}")))?;
                FamilySpec::Companions { base: ExponentVector::parse(base)?, l: num(l)? as u32, sources: None }
            }
            _ => return Err(Error::Parse(format!("unknown family {kind:?}"))),
        })
    }
}

fn labeled(kind: &str, indices: Vec<String>, word: BraidWord) -> LabeledBraid {
    LabeledBraid {
        label: format!("{kind}({})", indices.join(",")),
        kind: kind.to_string(),
        indices,
        word: word.free_reduced(),
        factorization: None,
    }
}

/// Monodromy generators: `σ³` on correlated pairs, `σ²` on the others and the conjugated
/// square `σ_{j,k}⁻¹σ²_{i,j}σ_{j,k}` on correlated triples, sorted by index tuple.
pub fn bp_monodromy(l: &ExponentVector) -> Result<GeneratorSet> {
    let idx = l.enumerate();
    let n = l.mu();
    let name = |i: &MultiIndex| l.format_index(i);
    let mut out: Vec<(Vec<usize>, LabeledBraid)> = Vec::new();
    for a in 0..idx.len() {
        for b in a + 1..idx.len() {
            let (pi, pj) = (a + 1, b + 1);
            let corr = is_correlated_pair(&idx[a], &idx[b]);
            let e = if corr { 3 } else { 2 };
            let mut g =
                labeled(if corr { "cube" } else { "square" }, vec![name(&idx[a]), name(&idx[b])], band(n, pi, pj)?.pow(e));
            g.factorization =
                Some(Factorization { beta0: BraidWord::new(n, run_down(pj - 1, pi + 1))?, exponent: e, position: pi });
            out.push((vec![a, b], g));
            for c in b + 1..idx.len() {
                if !is_correlated(&[idx[a].clone(), idx[b].clone(), idx[c].clone()])? {
                    continue;
                }
                let pk = c + 1;
                let sjk = band(n, pj, pk)?;
                let word = band(n, pi, pj)?.pow(2).conj_by(&sjk.inverse());
                let mut g = labeled("conjugated-square", vec![name(&idx[a]), name(&idx[b]), name(&idx[c])], word);
                let beta0 = sjk.inverse().mul(&BraidWord::new(n, run_down(pj - 1, pi + 1))?);
                g.factorization = Some(Factorization { beta0, exponent: 2, position: pi });
                out.push((vec![a, b, c], g));
            }
        }
    }
    out.sort_by(|x, y| x.0.cmp(&y.0));
    Ok(GeneratorSet {
        family: "bp_monodromy".into(),
        strands: n,
        generators: out.into_iter().map(|x| x.1).collect(),
        spherical: false,
    })
}

/// `σ_i³` and `σ²_{i,j}` (`j ≥ i+2`) in `Br_n`.
pub fn an(n: usize) -> Result<GeneratorSet> {
    if n == 0 {
        return Err(Error::InvalidParameter("an needs n >= 1".into()));
    }
    let mut gens = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let e = if j == i + 1 { 3 } else { 2 };
            let kind = if e == 3 { "cube" } else { "square" };
            gens.push(labeled(kind, vec![i.to_string(), j.to_string()], band(n, i, j)?.pow(e)));
        }
    }
    Ok(GeneratorSet { family: "an".into(), strands: n, generators: gens, spherical: false })
}

/// Union over `i_1` of the primary lifts of the monodromy generators of `(l_2..l_n)`.
pub fn g_family(l: &ExponentVector) -> Result<GeneratorSet> {
    let tail = l.suffix().ok_or_else(|| Error::InvalidParameter("g_n needs n >= 2".into()))?;
    let inner = bp_monodromy(&tail)?;
    let mut gens = Vec::new();
    for i1 in 1..=l.as_slice()[0] {
        for g in &inner.generators {
            let indices: Vec<String> = g
                .indices
                .iter()
                .map(|s| {
                    let t = tail.parse_index(s).expect("own label");
                    let mut c = vec![i1];
                    c.extend_from_slice(t.components());
                    format_components(&c, l.compact())
                })
                .collect();
            gens.push(labeled(&g.kind, indices, lift_primary(i1, &g.word, l)?));
        }
    }
    Ok(GeneratorSet { family: "g_n".into(), strands: l.mu(), generators: gens, spherical: false })
}

/// Plane list (`n = 2`) or the general list (`n ≥ 3`) for the `f` family; `n = 1` is `A_l`.
pub fn f_family(l: &ExponentVector) -> Result<GeneratorSet> {
    let n = l.mu();
    let idx = l.enumerate();
    let name = |i: &MultiIndex| l.format_index(i);
    let pos = |i: &MultiIndex| l.position(i).expect("own index");
    let mut gens = Vec::new();
    match l.n() {
        1 => {
            let mut s = an(n)?;
            s.family = "f_n".into();
            return Ok(s);
        }
        2 => {
            for i in &idx {
                for j in &idx {
                    if i.first() >= j.first() {
                        continue;
                    }
                    if i.last() == j.last() {
                        let e = if j.first() == i.first() + 1 { 3 } else { 2 };
                        let kind = if e == 3 { "cube" } else { "square" };
                        gens.push(labeled(kind, vec![name(i), name(j)], band(n, pos(i), pos(j))?.pow(e)));
                    } else if i.last() > j.last() {
                        gens.push(labeled("square", vec![name(i), name(j)], band(n, pos(i), pos(j))?.pow(2)));
                    }
                }
            }
        }
        _ => {
            for i in &idx {
                for k in &idx {
                    if i.first() >= k.first() || i >= k {
                        continue;
                    }
                    let corr = is_correlated_pair(i, k);
                    let s_ik = band(n, pos(i), pos(k))?;
                    if k.first() == i.first() + 1 && i.tail() == k.tail() {
                        gens.push(labeled("cube", vec![name(i), name(k)], s_ik.pow(3)));
                    } else if !corr {
                        gens.push(labeled("square", vec![name(i), name(k)], s_ik.pow(2)));
                    } else if k.first() == i.first() + 1 {
                        let j_up = i.with_component(0, i.first() + 1);
                        let j_tail = k.with_component(0, i.first());
                        for j in [j_up, j_tail] {
                            if &j == i || &j == k {
                                continue;
                            }
                            let w = s_ik.pow(2).conj_by(&band(n, pos(i), pos(&j))?.pow(2));
                            gens.push(labeled("conjugated-square", vec![name(i), name(&j), name(k)], w));
                        }
                    }
                }
            }
        }
    }
    Ok(GeneratorSet { family: "f_n".into(), strands: n, generators: gens, spherical: false })
}

/// Cable generators `δ_k^{k+1}`, `k = 2..n`, in `Br_n`.
pub fn cw_delta(n: usize) -> Result<GeneratorSet> {
    let mut gens = Vec::new();
    for k in 2..=n {
        gens.push(labeled("fundamental-power", vec![k.to_string()], fundamental(n, k)?.pow(k as i64 + 1)));
    }
    Ok(GeneratorSet { family: "cw_delta".into(), strands: n, generators: gens, spherical: false })
}

/// Exponent `m_ij` of the `E_{l,l'}` table.
pub fn e_exponent(l: usize, i: usize, j: usize) -> i64 {
    if j <= l || (i > l && (j - i).is_multiple_of(2)) {
        1
    } else if i <= l {
        2
    } else {
        3
    }
}

/// `σ_{i,j}^{m_ij}` for all `i < j ≤ l + l'`.
pub fn e_family(l: usize, lp: usize) -> Result<GeneratorSet> {
    let n = l + lp;
    if n == 0 {
        return Err(Error::InvalidParameter("E needs l + l' >= 1".into()));
    }
    let mut gens = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let m = e_exponent(l, i, j);
            let kind = ["band", "square", "cube"][m as usize - 1];
            gens.push(labeled(kind, vec![i.to_string(), j.to_string()], band(n, i, j)?.pow(m)));
        }
    }
    Ok(GeneratorSet { family: "E".into(), strands: n, generators: gens, spherical: false })
}

/// The monodromy structure of `base` as companion sources.
pub fn companion_sources_of(base: &ExponentVector) -> Result<Vec<CompanionSource>> {
    let mut out = Vec::new();
    for g in bp_monodromy(base)?.generators {
        let ix: Vec<MultiIndex> = g.indices.iter().map(|s| base.parse_index(s)).collect::<Result<_>>()?;
        out.push(match (g.kind.as_str(), ix.as_slice()) {
            ("cube", [a, b]) => CompanionSource::Cube(a.clone(), b.clone()),
            ("square", [a, b]) => CompanionSource::Square(a.clone(), b.clone()),
            (_, [a, b, c]) => CompanionSource::TripleConj(a.clone(), b.clone(), c.clone()),
            _ => unreachable!("monodromy generators have 2 or 3 indices"),
        });
    }
    Ok(out)
}

/// `l`-companions of the given sources, as braids over `base` extended by `l`.
pub fn companions(base: &ExponentVector, l: u32, sources: &[CompanionSource]) -> Result<GeneratorSet> {
    let ext = base.extend(l);
    let lay = BpLayout::new(&ext);
    let name = |i: &MultiIndex| ext.format_index(i);
    let mut gens = Vec::new();
    for src in sources {
        match src {
            CompanionSource::Square(i, j) => {
                for a in 1..=l {
                    for b in 1..=l {
                        let (x, y) = (i.extend(a), j.extend(b));
                        gens.push(labeled("square", vec![name(&x), name(&y)], lay.sigma(&x, &y)?.pow(2)));
                    }
                }
            }
            CompanionSource::Cube(i, j) => {
                for a in 1..=l {
                    let (x, y) = (i.extend(a), j.extend(a));
                    gens.push(labeled("cube", vec![name(&x), name(&y)], lay.sigma(&x, &y)?.pow(3)));
                }
                for a in 1..=l {
                    for b in 1..a {
                        let (x, y) = (i.extend(a), j.extend(b));
                        gens.push(labeled("square", vec![name(&x), name(&y)], lay.sigma(&x, &y)?.pow(2)));
                    }
                }
            }
            CompanionSource::TripleConj(i, j, k) => {
                let conj = lay.eta(&lay.reduced_band(i, j)?.pow(2))?;
                for a in 1..=l {
                    for c in 1..=l {
                        let (x, z) = (i.extend(a), k.extend(c));
                        let w = lay.sigma(&x, &z)?.pow(2).conj_by(&conj);
                        let indices = vec![name(&x), format!("{}*", base.format_index(j)), name(&z)];
                        gens.push(labeled("cable-conjugated-square", indices, w));
                    }
                }
            }
        }
    }
    Ok(GeneratorSet { family: "companions".into(), strands: ext.mu(), generators: gens, spherical: false })
}

pub fn generator_family(spec: &FamilySpec) -> Result<GeneratorSet> {
    match spec {
        FamilySpec::BpMonodromy(l) => bp_monodromy(l),
        FamilySpec::An(n) => an(*n),
        FamilySpec::G(l) => g_family(l),
        FamilySpec::F(l) => f_family(l),
        FamilySpec::CwDelta(n) => cw_delta(*n),
        FamilySpec::E { l, lp } => e_family(*l, *lp),
        FamilySpec::ESpherical { k, l } => {
            let mut s = e_family(*l, 6 * k)?;
            s.family = "E_spherical".into();
            s.spherical = true;
            Ok(s)
        }
        FamilySpec::Companions { base, l, sources } => {
            let src = match sources {
                Some(s) => s.clone(),
                None => companion_sources_of(base)?,
            };
            companions(base, *l, &src)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::braids_equal;
    use proptest::prelude::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn family_spec_syntax() {
        assert!(matches!(FamilySpec::parse("E:2,3").unwrap(), FamilySpec::E { l: 2, lp: 3 }));
        assert!(matches!(FamilySpec::parse("cw:4").unwrap(), FamilySpec::CwDelta(4)));
        assert!(matches!(FamilySpec::parse("comp:2,2/3").unwrap(), FamilySpec::Companions { l: 3, .. }));
        assert!(FamilySpec::parse("E:2").is_err());
        assert!(FamilySpec::parse("zz:1").is_err());
        assert!(FamilySpec::parse("bp").is_err());
    }
    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }
    fn bw(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }
    fn eq(a: &BraidWord, b: &BraidWord) -> bool {
        braids_equal(a, b).unwrap()
    }

    #[test]
    fn band_words() {
        assert_eq!(band(3, 1, 3).unwrap(), bw(3, &[2, 1, -2]));
        assert_eq!(band(5, 2, 3).unwrap(), bw(5, &[2]));
        assert_eq!(band(3, 3, 1).unwrap(), band(3, 1, 3).unwrap());
        assert!(band(3, 1, 4).is_err());
        assert!(band(3, 2, 2).is_err());
    }

    #[test]
    fn subcable_and_fundamental() {
        assert_eq!(subcable(3, 1, 3).unwrap(), bw(3, &[1, 2]));
        assert_eq!(subcable(6, 2, 6).unwrap().exponent_sum(), 4);
        assert_eq!(fundamental(4, 3).unwrap(), bw(4, &[1, 2]));
    }

    #[test]
    fn split_band_endpoints() {
        assert_eq!(split_band(5, 1, 3, 4).unwrap().free_reduced(), band(5, 1, 4).unwrap());
        assert!(eq(&split_band(5, 1, 1, 4).unwrap(), &back_band(5, 1, 4).unwrap()));
    }

    #[test]
    fn extended_band_example() {
        // target last component 0 at block 2 over (2,2): δ²_{21,22} σ_{11,22} δ⁻²_{21,22} in the
        // reading of the extension used here (m_j = -2 pushes the conjugator to the left inverse)
        let l = ev(&[2, 2]);
        let lay = BpLayout::new(&l);
        let x = lay.ext_sigma(&ExtIndex::new(mi(&[1]), 1), &ExtIndex::new(mi(&[2]), 0)).unwrap();
        let d = lay.block_delta(&mi(&[2])).unwrap();
        let core = lay.sigma(&mi(&[1, 1]), &mi(&[2, 2])).unwrap();
        assert!(eq(&x, &core.conj_by(&d.pow(-2))));
        // in-range extended indices are plain bands
        let y = lay.ext_sigma(&ExtIndex::new(mi(&[1]), 2), &ExtIndex::new(mi(&[2]), 1)).unwrap();
        assert_eq!(y, lay.sigma(&mi(&[1, 2]), &mi(&[2, 1])).unwrap());
    }

    #[test]
    fn primary_and_secondary_lifts() {
        let l = ev(&[2, 2]);
        assert_eq!(lift_primary(2, &bw(2, &[1]), &l).unwrap(), bw(4, &[3]));
        assert!(lift_primary(1, &BraidWord::identity(2), &l).unwrap().is_empty());
        assert_eq!(lift_primary(1, &bw(3, &[1, 2]), &ev(&[2, 3])).unwrap(), bw(6, &[1, 2]));
        assert_eq!(lift_secondary(1, &bw(2, &[1]), &l).unwrap(), band(4, 1, 3).unwrap());
        assert_eq!(lift_secondary(2, &bw(2, &[1]), &l).unwrap(), band(4, 2, 4).unwrap());
        assert!(lift_secondary(1, &BraidWord::identity(2), &l).unwrap().is_empty());
    }

    #[test]
    fn cable_band_examples() {
        let e = cable_band(2, &bw(2, &[1])).unwrap();
        assert_eq!(e, bw(4, &[2, 1, 3, 2]));
        assert_eq!(e.permutation().to_string(), "(1 3)(2 4)");
        assert_eq!(cable_band(1, &bw(3, &[1, -2])).unwrap(), bw(3, &[1, -2]));
        assert!(eq(&cable_band(2, &bw(3, &[1, 2, 1])).unwrap(), &cable_band(2, &bw(3, &[2, 1, 2])).unwrap()));
    }

    #[test]
    fn lifts_are_homomorphisms() {
        for l in [ev(&[2, 2]), ev(&[3, 2]), ev(&[2, 3])] {
            let m1 = l.mu() / l.as_slice()[0] as usize;
            let m2 = l.mu() / l.last() as usize;
            for i1 in 1..=l.as_slice()[0] {
                for i in 1..m1 as i32 - 1 {
                    let (a, b) = (bw(m1, &[i, i + 1, i]), bw(m1, &[i + 1, i, i + 1]));
                    assert!(eq(&lift_primary(i1, &a, &l).unwrap(), &lift_primary(i1, &b, &l).unwrap()));
                }
            }
            for i_n in 1..=l.last() {
                for i in 1..m2 as i32 - 1 {
                    let (a, b) = (bw(m2, &[i, i + 1, i]), bw(m2, &[i + 1, i, i + 1]));
                    assert!(eq(&lift_secondary(i_n, &a, &l).unwrap(), &lift_secondary(i_n, &b, &l).unwrap()));
                }
                for i in 1..m2 as i32 {
                    for j in i + 2..m2 as i32 {
                        let (a, b) = (bw(m2, &[i, j]), bw(m2, &[j, i]));
                        assert!(eq(&lift_secondary(i_n, &a, &l).unwrap(), &lift_secondary(i_n, &b, &l).unwrap()));
                    }
                }
            }
        }
    }

    #[test]
    fn tau_examples() {
        let l = ev(&[2, 2]);
        let t = tau_generator(&mi(&[1, 1]), &mi(&[2, 1]), &l, 0).unwrap();
        assert_eq!(t, BpLayout::new(&l).sigma(&mi(&[1, 1]), &mi(&[2, 1])).unwrap());
        let l3 = ev(&[3, 2]);
        let lay = BpLayout::new(&l3);
        let t = tau_generator(&mi(&[1, 1]), &mi(&[3, 1]), &l3, 0).unwrap();
        let c = lay.sigma(&mi(&[1, 1]), &mi(&[2, 1])).unwrap().pow(2).mul(&lay.sigma(&mi(&[1, 1]), &mi(&[2, 2])).unwrap().pow(2));
        assert!(eq(&t, &lay.sigma(&mi(&[1, 1]), &mi(&[3, 1])).unwrap().conj_by(&c)));
        // shift by -l_2 vs 0: conjugate by the l_2-th power of the block cable twist of block 2
        let a = tau_generator(&mi(&[1, 1]), &mi(&[2, 1]), &l, -2).unwrap();
        let b = tau_generator(&mi(&[1, 1]), &mi(&[2, 1]), &l, 0).unwrap();
        let d = BpLayout::new(&l).block_delta(&mi(&[2])).unwrap();
        assert!(eq(&a, &b.conj_by(&d.pow(-2))));
        assert!(!eq(&a, &b));
    }

    #[test]
    fn bp_monodromy_2_2() {
        let s = bp_monodromy(&ev(&[2, 2])).unwrap();
        let count = |k: &str| s.generators.iter().filter(|g| g.kind == k).count();
        assert_eq!(s.generators.len(), 8);
        assert_eq!((count("cube"), count("square"), count("conjugated-square")), (5, 1, 2));
        let sq = s.generators.iter().find(|g| g.kind == "square").unwrap();
        assert_eq!(sq.indices, ["12", "21"]);
        let tri: Vec<_> = s.generators.iter().filter(|g| g.kind == "conjugated-square").map(|g| g.indices.join(",")).collect();
        assert_eq!(tri, ["11,12,22", "11,21,22"]);
        for g in &s.generators {
            let f = g.factorization.as_ref().unwrap();
            let rebuilt = BraidWord::sigma(4, f.position as i32).unwrap().pow(f.exponent).conj_by(&f.beta0);
            assert!(eq(&rebuilt, &g.word), "{}", g.label);
        }
    }

    #[test]
    fn small_families() {
        let a = an(3).unwrap();
        let words: Vec<BraidWord> = a.words();
        assert_eq!(words, vec![bw(3, &[1, 1, 1]), bw(3, &[2, 1, 1, -2]), bw(3, &[2, 2, 2])]);
        let e = e_family(1, 2).unwrap();
        let ws: Vec<String> = e.generators.iter().map(|g| format!("{}:{}", g.label, g.word)).collect();
        assert_eq!(ws, ["square(1,2):s1 s1", "square(1,3):s2 s1 s1 S2", "cube(2,3):s2 s2 s2"]);
        assert_eq!(cw_delta(3).unwrap().words(), vec![bw(3, &[1, 1, 1]), bw(3, &[1, 2, 1, 2, 1, 2, 1, 2])]);
        let sph = generator_family(&FamilySpec::ESpherical { k: 1, l: 0 }).unwrap();
        assert!(sph.spherical && sph.strands == 6);
    }

    #[test]
    fn g_and_f_families() {
        let g = g_family(&ev(&[2, 3])).unwrap();
        // two copies of the three A_3-type generators
        assert_eq!(g.generators.len(), 2 * bp_monodromy(&ev(&[3])).unwrap().generators.len());
        assert_eq!(g.generators[3].indices, ["21", "22"]);
        let f = f_family(&ev(&[2, 2])).unwrap();
        let labels: Vec<_> = f.generators.iter().map(|g| g.label.clone()).collect();
        assert_eq!(labels, ["cube(11,21)", "square(12,21)", "cube(12,22)"]);
        let f3 = f_family(&ev(&[2, 2, 2])).unwrap();
        assert!(f3.generators.iter().any(|g| g.kind == "conjugated-square"));
    }

    #[test]
    fn companions_of_a2() {
        // 2-companions of the A_2 monodromy (one cube) give the plane list over (2,2)
        let s = generator_family(&FamilySpec::Companions { base: ev(&[2]), l: 2, sources: None }).unwrap();
        let f = f_family(&ev(&[2, 2])).unwrap();
        assert_eq!(s.generators.len(), 3);
        for g in &f.generators {
            assert!(s.generators.iter().any(|h| eq(&h.word, &g.word)), "{}", g.label);
        }
    }

    proptest! {
        #[test]
        fn cable_band_permutation_is_block_inflation(v in prop::collection::vec((1i32..4, any::<bool>()), 0..8), ln in 1usize..4) {
            let b = BraidWord::new(4, v.into_iter().map(|(i, s)| if s { i } else { -i }).collect()).unwrap();
            let p = b.permutation();
            let q = cable_band(ln, &b).unwrap().permutation();
            for x in 1..=4 * ln {
                let blk = (x - 1) / ln + 1;
                let off = (x - 1) % ln;
                prop_assert_eq!(q.apply(x), (p.apply(blk) - 1) * ln + off + 1);
            }
        }

        #[test]
        fn subcable_exponent_sum(i in 1usize..6, d in 0usize..5) {
            prop_assert_eq!(subcable(12, i, i + d).unwrap().exponent_sum(), d as i64);
        }
    }
}
