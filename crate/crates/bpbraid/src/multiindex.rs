//! Index combinatorics: the lexicographically ordered set `I_n(l_1..l_n)`,
//! correlation, level, modulus and the weighted Dynkin diagram.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};

/// Exponent vector `l_1..l_n` of a Brieskorn–Pham polynomial `Σ x_ν^{l_ν+1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ExponentVector(Vec<u32>);

/// Multiindex `i_1..i_n`; the derived order is lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Self {
        MultiIndex(components)
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn first(&self) -> u32 {
        self.0[0]
    }

    pub fn last(&self) -> u32 {
        self.0[self.0.len() - 1]
    }

    /// All components but the last (`i'` in the usual notation).
    pub fn head(&self) -> MultiIndex {
        MultiIndex(self.0[..self.0.len() - 1].to_vec())
    }

    /// All components but the first.
    pub fn tail(&self) -> MultiIndex {
        MultiIndex(self.0[1..].to_vec())
    }

    /// `self` with `c` appended.
    pub fn extend(&self, c: u32) -> MultiIndex {
        let mut v = self.0.clone();
        v.push(c);
        MultiIndex(v)
    }

    /// Component successor: `i_ν + 1` in position `nu` (0-based); may leave the index set.
    pub fn bump_component(&self, nu: usize) -> MultiIndex {
        let mut v = self.0.clone();
        v[nu] += 1;
        MultiIndex(v)
    }

    pub fn with_component(&self, nu: usize, c: u32) -> MultiIndex {
        let mut v = self.0.clone();
        v[nu] = c;
        MultiIndex(v)
    }
}

impl std::fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&format_components(&self.0, true))
    }
}

impl ExponentVector {
    pub fn new(l: Vec<u32>) -> Result<Self> {
        if l.is_empty() {
            return Err(Error::InvalidParameter("exponent vector must be nonempty".into()));
        }
        if l.contains(&0) {
            return Err(Error::InvalidParameter("exponents must be positive".into()));
        }
        Ok(ExponentVector(l))
    }

    /// Parses a comma list such as `2,3,2`.
    pub fn parse(s: &str) -> Result<Self> {
        let v = s
            .split(',')
            .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent {x:?}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(v)
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    pub fn last(&self) -> u32 {
        self.0[self.0.len() - 1]
    }

    /// Milnor number `∏ l_i`.
    pub fn mu(&self) -> usize {
        self.0.iter().map(|&x| x as usize).product()
    }

    /// `l_1..l_{n-1}`; `None` when `n = 1`.
    pub fn prefix(&self) -> Option<ExponentVector> {
        (self.0.len() > 1).then(|| ExponentVector(self.0[..self.0.len() - 1].to_vec()))
    }

    /// `l_2..l_n`; `None` when `n = 1`.
    pub fn suffix(&self) -> Option<ExponentVector> {
        (self.0.len() > 1).then(|| ExponentVector(self.0[1..].to_vec()))
    }

    /// `self` with `l` appended.
    pub fn extend(&self, l: u32) -> ExponentVector {
        let mut v = self.0.clone();
        v.push(l);
        ExponentVector(v)
    }

    pub fn contains(&self, i: &MultiIndex) -> bool {
        i.len() == self.n() && i.0.iter().zip(&self.0).all(|(&c, &l)| c >= 1 && c <= l)
    }

    /// All indices in increasing lexicographic order.
    pub fn enumerate(&self) -> Vec<MultiIndex> {
        (0..self.mu()).map(|r| self.unrank(r)).collect()
    }

    /// 0-based position in the lexicographic order.
    pub fn rank(&self, i: &MultiIndex) -> Result<usize> {
        if !self.contains(i) {
            return Err(Error::InvalidParameter(format!("{} is not an index over {:?}", self.format_index(i), self.0)));
        }
        Ok(i.0.iter().zip(&self.0).fold(0usize, |acc, (&c, &l)| acc * l as usize + (c as usize - 1)))
    }

    /// 1-based puncture position of an index.
    pub fn position(&self, i: &MultiIndex) -> Result<usize> {
        Ok(self.rank(i)? + 1)
    }

    pub fn unrank(&self, mut r: usize) -> MultiIndex {
        let mut v = vec![0; self.n()];
        for k in (0..self.n()).rev() {
            let l = self.0[k] as usize;
            v[k] = (r % l) as u32 + 1;
            r /= l;
        }
        MultiIndex(v)
    }

    /// Lexicographic successor `i⁺` within the index set.
    pub fn successor(&self, i: &MultiIndex) -> Option<MultiIndex> {
        let r = self.rank(i).ok()?;
        (r + 1 < self.mu()).then(|| self.unrank(r + 1))
    }

    /// Compact notation (`12`) when every `l_ν < 10`, bracketed (`[1,2]`) otherwise.
    pub fn compact(&self) -> bool {
        self.0.iter().all(|&l| l < 10)
    }

    pub fn format_index(&self, i: &MultiIndex) -> String {
        format_components(i.components(), self.compact())
    }

    /// Parses `12` (one digit per component) or `[1,2]`.
    pub fn parse_index(&self, tok: &str) -> Result<MultiIndex> {
        let tok = tok.trim();
        let comps: Vec<u32> = if let Some(body) = tok.strip_prefix('[').and_then(|t| t.strip_suffix(']')) {
            body.split(',')
                .map(|x| x.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad component in {tok:?}"))))
                .collect::<Result<_>>()?
        } else {
            if !self.compact() {
                return Err(Error::Parse(format!("use bracketed indices when some l_i >= 10, got {tok:?}")));
            }
            tok.chars()
                .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad index {tok:?}"))))
                .collect::<Result<_>>()?
        };
        let m = MultiIndex(comps);
        if !self.contains(&m) {
            return Err(Error::Parse(format!("{tok:?} is not an index over {:?}", self.0)));
        }
        Ok(m)
    }

    /// Parses a pair token `11-22` or `[1,1]-[2,2]`.
    pub fn parse_pair(&self, tok: &str) -> Result<(MultiIndex, MultiIndex)> {
        let (a, b) = tok.split_once('-').ok_or_else(|| Error::Parse(format!("index pair must look like 11-22, got {tok:?}")))?;
        Ok((self.parse_index(a)?, self.parse_index(b)?))
    }
}

/// Formats components compactly or bracketed; out-of-range (e.g. zero or negative
/// extended) components always use brackets.
pub fn format_components(c: &[u32], compact: bool) -> String {
    if compact && c.iter().all(|&x| (1..10).contains(&x)) {
        c.iter().map(u32::to_string).collect()
    } else {
        let parts: Vec<String> = c.iter().map(u32::to_string).collect();
        format!("[{}]", parts.join(","))
    }
}

/// `i < j` and every `j_ν ∈ {i_ν, i_ν + 1}`.
pub fn is_correlated_pair(i: &MultiIndex, j: &MultiIndex) -> bool {
    i < j && i.0.iter().zip(&j.0).all(|(&a, &b)| b == a || b == a + 1)
}

/// Correlation of 2, 3 or 4 indices given in increasing order: every pair is correlated.
pub fn is_correlated(indices: &[MultiIndex]) -> Result<bool> {
    if !(2..=4).contains(&indices.len()) {
        return Err(Error::InvalidParameter("correlation is defined for 2, 3 or 4 indices".into()));
    }
    for a in 0..indices.len() {
        for b in a + 1..indices.len() {
            if !is_correlated_pair(&indices[a], &indices[b]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Difference of the leading components.
pub fn level_of(i: &MultiIndex, j: &MultiIndex) -> i64 {
    j.first() as i64 - i.first() as i64
}

/// `η₂ |sin(π(i₂−j₂)/l₂) / sin(π(i₁−j₁)/l₁)|`.
pub fn modulus_of(i1: i64, i2: i64, j1: i64, j2: i64, l1: u32, l2: u32, eta2: f64) -> Result<f64> {
    if i1 == j1 {
        return Err(Error::UndefinedModulus);
    }
    if i2 == j2 {
        return Ok(0.0);
    }
    let pi = std::f64::consts::PI;
    let num = (pi * (i2 - j2) as f64 / l2 as f64).sin();
    let den = (pi * (i1 - j1) as f64 / l1 as f64).sin();
    Ok(eta2 * (num / den).abs())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DynkinEdge {
    pub i: MultiIndex,
    pub j: MultiIndex,
    pub weight: i8,
}

/// Vertices are all indices; edges join correlated pairs with weight `(−1)^{1+Σ(j_ν−i_ν)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DynkinDiagram {
    pub exponents: ExponentVector,
    pub vertices: Vec<MultiIndex>,
    pub edges: Vec<DynkinEdge>,
}

pub fn build_dynkin(l: &ExponentVector) -> DynkinDiagram {
    let vertices = l.enumerate();
    let mut edges = Vec::new();
    for (a, i) in vertices.iter().enumerate() {
        for j in &vertices[a + 1..] {
            if is_correlated_pair(i, j) {
                edges.push(DynkinEdge { i: i.clone(), j: j.clone(), weight: pair_weight(i, j) });
            }
        }
    }
    DynkinDiagram { exponents: l.clone(), vertices, edges }
}

fn pair_weight(i: &MultiIndex, j: &MultiIndex) -> i8 {
    let s: i64 = i.0.iter().zip(&j.0).map(|(&a, &b)| b as i64 - a as i64).sum();
    if (1 + s) % 2 == 0 {
        1
    } else {
        -1
    }
}

#[derive(Serialize)]
struct DynkinJson<'a> {
    exponents: &'a [u32],
    vertices: Vec<String>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize)]
struct EdgeJson {
    i: String,
    j: String,
    weight: i8,
}

impl DynkinDiagram {
    pub fn edge_weight(&self, i: &MultiIndex, j: &MultiIndex) -> Option<i8> {
        let (a, b) = if i < j { (i, j) } else { (j, i) };
        self.edges.iter().find(|e| &e.i == a && &e.j == b).map(|e| e.weight)
    }

    /// All triangles `(a, b, c)` with `a < b < c`, with the product of their edge weights.
    pub fn triangles(&self) -> Vec<([MultiIndex; 3], i8)> {
        let v = &self.vertices;
        let mut out = Vec::new();
        for a in 0..v.len() {
            for b in a + 1..v.len() {
                let Some(w1) = self.edge_weight(&v[a], &v[b]) else { continue };
                for c in b + 1..v.len() {
                    if let (Some(w2), Some(w3)) = (self.edge_weight(&v[b], &v[c]), self.edge_weight(&v[a], &v[c])) {
                        out.push(([v[a].clone(), v[b].clone(), v[c].clone()], w1 * w2 * w3));
                    }
                }
            }
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph dynkin {\n");
        for v in &self.vertices {
            let _ = writeln!(s, "  \"{}\";", self.exponents.format_index(v));
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "  \"{}\" -- \"{}\" [label=\"{:+}\"];",
                self.exponents.format_index(&e.i),
                self.exponents.format_index(&e.j),
                e.weight
            );
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        let f = |i: &MultiIndex| self.exponents.format_index(i);
        serde_json::to_value(DynkinJson {
            exponents: self.exponents.as_slice(),
            vertices: self.vertices.iter().map(f).collect(),
            edges: self.edges.iter().map(|e| EdgeJson { i: f(&e.i), j: f(&e.j), weight: e.weight }).collect(),
        })
        .expect("dynkin json")
    }
}
