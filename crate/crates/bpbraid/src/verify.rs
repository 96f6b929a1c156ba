//! Catalogue of explicit braid identities, checked through the exact word problem,
//! and the filtered-generating-set criterion.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::generators::{back_band, band, split_band, subcable, BpLayout, ExtIndex};
use crate::hurwitz::{base_tuple, stabilizes, BaseTuple, GTuple, SL2Matrix};
use crate::multiindex::{is_correlated, is_correlated_pair, ExponentVector, MultiIndex};
use crate::poly::{resultant, IntPoly};
use crate::words::{braids_equal_capped, BraidWord, DEFAULT_WORD_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    /// The identity is displayed with a complete proof; failure is a suite failure.
    Asserted,
    /// The truth value is computed and reported, not asserted.
    RecordedOutcome,
    /// A deliberately perturbed identity; holding is a suite failure.
    NegativeControl,
}

impl fmt::Display for Expectation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Expectation::Asserted => "asserted",
            Expectation::RecordedOutcome => "recorded-outcome",
            Expectation::NegativeControl => "negative-control",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Fails,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerdictReport {
    pub id: String,
    pub params: String,
    pub expectation: Expectation,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerdictReport {
    /// A asserted case that fails, or a negative control that holds.
    pub fn is_problem(&self) -> bool {
        matches!(
            (self.expectation, self.verdict),
            (Expectation::Asserted, Verdict::Fails) | (Expectation::NegativeControl, Verdict::Holds)
        )
    }

    pub fn line(&self) -> String {
        let mut s = format!("{} [{}] {} ({})", self.id, self.params, self.verdict, self.expectation);
        if let Some(w) = &self.witness {
            s.push_str(&format!(" witness: {w}"));
        }
        s
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report json")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCase {
    pub id: String,
    pub params: String,
    pub expected: Expectation,
}

impl IdentityCase {
    pub fn new(id: &str, params: &str, expected: Expectation) -> Self {
        IdentityCase { id: id.into(), params: params.into(), expected }
    }
}

/// Results the artifact cannot establish computationally; listed in every suite report.
pub const OUT_OF_REACH: &[(&str, &str)] = &[
    (
        "stabilizer equality",
        "equality of a monodromy group with a full Hurwitz stabilizer needs a generation argument for a subgroup of infinite index that no finite computation supplies; only containment of the listed generators and bounded orbit exploration are checked",
    ),
    (
        "existential conjugates",
        "the uncoiling statements assert suitably chosen conjugates exist without displaying them; their instances are covered only through recorded-outcome cases with a fixed τ word",
    ),
];

/// Every catalogued case at its minimal parameters, in report order.
pub fn catalogue() -> Vec<IdentityCase> {
    use Expectation::*;
    let mut v = Vec::new();
    let mut add = |id: &str, params: &[&str], e: Expectation| {
        for p in params {
            v.push(IdentityCase::new(id, p, e));
        }
    };
    add("band=prod-1", &["3,2"], Asserted);
    add("band=prod-2", &["3,2"], Asserted);
    add("band=prod-3", &["3,2"], Asserted);
    add("band=prod-3-literal", &["3,2"], RecordedOutcome);
    add("braid/a", &["3", "4"], Asserted);
    add("braid/aa", &["4", "2,2,2"], Asserted);
    add("braid/stab-cube", &["4"], Asserted);
    add("braid/stab-square", &["4"], Asserted);
    add("cable-orb", &["2,2", "2,3"], Asserted);
    add("check-sigma", &["6"], Asserted);
    add("cubic-resultant", &["-"], Asserted);
    add("cw-inverse-rel", &["4"], Asserted);
    add("ff(st)", &["2,2"], Asserted);
    add("ff(st)", &["3,2"], RecordedOutcome);
    add("filt/iso-tri-gen", &["4"], Asserted);
    add("iso/tri/gen-step", &["7"], Asserted);
    add("iso/tri/gen-step-literal", &["7"], RecordedOutcome);
    add("iso/zero/conj", &["2,2", "2,3"], Asserted);
    add("neg/band=prod", &["3,2"], NegativeControl);
    add("neg/braid/a", &["3"], NegativeControl);
    add("neg/filt-wrong-conjugator", &["4"], NegativeControl);
    add("neg/subcable", &["3"], NegativeControl);
    for k in 1..=5 {
        add(&format!("perm/stab-rel-{k}"), &["4"], RecordedOutcome);
    }
    for k in 1..=4 {
        add(&format!("red-gen-rel-{k}"), &["3,3"], Asserted);
    }
    add("sig-remark", &["7"], Asserted);
    add("sl2-central-tau", &["50"], Asserted);
    add("subcable", &["2", "3", "4"], Asserted);
    add("tau/sigma-1", &["2,2", "2,3", "3,3"], RecordedOutcome);
    add("tau/sigma-2", &["2,2", "2,3", "3,3"], RecordedOutcome);
    add("tri/conj", &["4,2", "5,2"], RecordedOutcome);
    add("uncoil-i", &["2,2,2", "3,2,2"], Asserted);
    add("uncoil-k", &["2,2,2", "3,2,2"], Asserted);
    v
}

/// Glob match supporting `*`; an empty pattern matches everything.
pub fn matches_filter(pattern: &str, id: &str) -> bool {
    if pattern.is_empty() {
        return true;
    }
    fn go(p: &[u8], s: &[u8]) -> bool {
        match p.first() {
            None => s.is_empty(),
            Some(b'*') => (0..=s.len()).any(|k| go(&p[1..], &s[k..])),
            Some(c) => s.first() == Some(c) && go(&p[1..], &s[1..]),
        }
    }
    go(pattern.as_bytes(), id.as_bytes())
}

/// Budget for a suite run.
#[derive(Clone, Copy, Debug)]
pub struct Budget {
    pub max_strands: usize,
    pub word_cap: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_strands: 32, word_cap: DEFAULT_WORD_CAP }
    }
}

/// Runs every catalogued case whose id matches `filter`, in catalogue order.
pub fn run_suite(filter: &str, budget: Budget) -> Vec<VerdictReport> {
    catalogue()
        .into_iter()
        .filter(|c| matches_filter(filter, &c.id))
        .map(|c| {
            run_identity_with_budget(&c, budget).unwrap_or_else(|e| VerdictReport {
                id: c.id.clone(),
                params: c.params.clone(),
                expectation: c.expected,
                verdict: Verdict::Fails,
                witness: Some(format!("error: {e}")),
                notes: Vec::new(),
            })
        })
        .collect()
}

pub fn suite_to_json(reports: &[VerdictReport]) -> Value {
    json!({
        "cases": reports.iter().map(VerdictReport::to_json).collect::<Vec<_>>(),
        "out_of_reach": OUT_OF_REACH.iter().map(|(k, v)| json!({"result": k, "reason": v})).collect::<Vec<_>>(),
    })
}

/// Records equalities and keeps the first failing one as witness.
struct Checker {
    cap: usize,
    checked: usize,
    failed: usize,
    witness: Option<String>,
}

impl Checker {
    fn new(cap: usize) -> Self {
        Checker { cap, checked: 0, failed: 0, witness: None }
    }

    fn eq(&mut self, what: impl FnOnce() -> String, lhs: &BraidWord, rhs: &BraidWord) -> Result<()> {
        self.checked += 1;
        if !braids_equal_capped(lhs, rhs, self.cap)? {
            self.failed += 1;
            if self.witness.is_none() {
                self.witness = Some(what());
            }
        }
        Ok(())
    }

    fn truth(&mut self, what: impl FnOnce() -> String, ok: bool) {
        self.checked += 1;
        if !ok {
            self.failed += 1;
            if self.witness.is_none() {
                self.witness = Some(what());
            }
        }
    }

    fn finish(self, case: &IdentityCase) -> Result<VerdictReport> {
        if self.checked == 0 {
            return Err(Error::InvalidParameter(format!("{} has no instances at params {}", case.id, case.params)));
        }
        let mut notes = vec![format!("{} instances, {} failing", self.checked, self.failed)];
        if let (Some(_), Expectation::RecordedOutcome) = (&self.witness, case.expected) {
            notes.push("discrepancy recorded, not asserted".into());
        }
        Ok(VerdictReport {
            id: case.id.clone(),
            params: case.params.clone(),
            expectation: case.expected,
            verdict: if self.failed == 0 { Verdict::Holds } else { Verdict::Fails },
            witness: self.witness,
            notes,
        })
    }
}

fn sq(w: &BraidWord) -> BraidWord {
    w.pow(2)
}

/// `c x c⁻¹`
fn cj(c: &BraidWord, x: &BraidWord) -> BraidWord {
    x.conj_by(c)
}

/// `c⁻¹ x c`
fn cji(c: &BraidWord, x: &BraidWord) -> BraidWord {
    x.conj_by(&c.inverse())
}

fn prod(n: usize, ws: impl IntoIterator<Item = BraidWord>) -> BraidWord {
    ws.into_iter().fold(BraidWord::identity(n), |a, b| a.mul(&b))
}

fn flip_first(w: &BraidWord) -> BraidWord {
    let mut l = w.letters().to_vec();
    if let Some(x) = l.first_mut() {
        *x = -*x;
    }
    BraidWord::new(w.strands(), l).expect("same strands")
}

fn strands_param(p: &str) -> Result<usize> {
    p.trim().parse::<usize>().map_err(|_| Error::Parse(format!("expected a strand count, got {p:?}")))
}

fn ext(head: &MultiIndex, last: i64) -> ExtIndex {
    ExtIndex::new(head.clone(), last)
}

pub fn run_identity(case: &IdentityCase) -> Result<VerdictReport> {
    run_identity_with_budget(case, Budget::default())
}

pub fn run_identity_with_budget(case: &IdentityCase, budget: Budget) -> Result<VerdictReport> {
    let mut ck = Checker::new(budget.word_cap);
    let id = case.id.as_str();
    let p = case.params.as_str();
    let check_strands = |n: usize| -> Result<()> {
        if n > budget.max_strands {
            Err(Error::ResourceExceeded(format!("{n} strands exceeds budget {}", budget.max_strands)))
        } else {
            Ok(())
        }
    };
    let ev = || -> Result<ExponentVector> {
        let l = ExponentVector::parse(p)?;
        check_strands(l.mu())?;
        Ok(l)
    };
    match id {
        "sig-remark" => {
            let top = strands_param(p)?;
            check_strands(top)?;
            for n in 3..=top {
                for i in 1..=n {
                    for k in i + 2..=n {
                        for j in i..k {
                            let pp = prod(n, (j + 1..k).map(|x| sq(&band(n, i, x).unwrap())));
                            ck.eq(|| format!("n={n} ({i},{j},{k})"), &cj(&pp, &band(n, i, k)?), &split_band(n, i, j, k)?)?;
                        }
                    }
                }
            }
        }
        "check-sigma" => {
            let n = strands_param(p)?;
            check_strands(n)?;
            for i in 1..=n {
                for k in i + 2..=n {
                    let pp = prod(n, (i + 1..k).map(|x| sq(&band(n, i, x).unwrap())));
                    ck.eq(|| format!("({i},{k})"), &cj(&pp, &band(n, i, k)?), &back_band(n, i, k)?)?;
                }
            }
        }
        "iso/tri/gen-step" | "iso/tri/gen-step-literal" => {
            let top = strands_param(p)?;
            check_strands(top)?;
            let squared = id == "iso/tri/gen-step";
            for n in 3..=top {
                for i in 1..n {
                    for j in i + 2..=n {
                        let si = BraidWord::sigma(n, i as i32)?;
                        let lhs = cji(&sq(&si), &sq(&back_band(n, i, j)?));
                        let pp = prod(n, (i + 2..j).map(|x| sq(&band(n, i, x).unwrap())));
                        let core = if squared { sq(&band(n, i, j)?) } else { band(n, i, j)? };
                        ck.eq(|| format!("n={n} ({i},{j})"), &lhs, &cj(&pp, &core))?;
                    }
                }
            }
        }
        "braid/a" | "neg/braid/a" => {
            let n = strands_param(p)?;
            check_strands(n)?;
            for i in 1..=n {
                for j in i + 1..=n {
                    for k in j + 1..=n {
                        let (sij, sik, sjk) = (band(n, i, j)?, band(n, i, k)?, band(n, j, k)?);
                        let c = sjk.pow(3).mul(&cj(&sq(&sij), &sq(&sik)));
                        let mut rhs = cj(&c, &sij.pow(3));
                        if id.starts_with("neg/") {
                            rhs = flip_first(&rhs);
                        }
                        ck.eq(|| format!("({i},{j},{k})"), &sik.pow(3), &rhs)?;
                    }
                }
            }
        }
        "braid/aa" => {
            let quads: Vec<(usize, [usize; 4])> = if p.contains(',') {
                let l = ev()?;
                let idx = l.enumerate();
                let mut out = Vec::new();
                let m = idx.len();
                for a in 0..m {
                    for b in a + 1..m {
                        for c in b + 1..m {
                            for d in c + 1..m {
                                if is_correlated(&[idx[a].clone(), idx[b].clone(), idx[c].clone(), idx[d].clone()])? {
                                    out.push((m, [a + 1, b + 1, c + 1, d + 1]));
                                }
                            }
                        }
                    }
                }
                out
            } else {
                let n = strands_param(p)?;
                check_strands(n)?;
                let mut out = Vec::new();
                for a in 1..=n {
                    for b in a + 1..=n {
                        for c in b + 1..=n {
                            for d in c + 1..=n {
                                out.push((n, [a, b, c, d]));
                            }
                        }
                    }
                }
                out
            };
            for (n, [i, j, m, k]) in quads {
                let s = |a, b| sq(&band(n, a, b).unwrap());
                let lhs = cj(&s(i, m), &s(i, k));
                let c = cj(&s(j, m), &s(j, k)).mul(&cj(&s(i, j), &s(i, m)));
                let rhs = cj(&c, &cj(&s(i, j), &s(i, k)));
                ck.eq(|| format!("({i},{j},{m},{k})"), &lhs, &rhs)?;
            }
        }
        "subcable" | "neg/subcable" | "cw-inverse-rel" => {
            let top = strands_param(p)?;
            check_strands(top)?;
            let sizes: Vec<usize> = if id == "cw-inverse-rel" { (2..=top).collect() } else { vec![top] };
            for n in sizes {
                let lhs = subcable(n, 1, n)?.pow(n as i64 + 1);
                let mut rhs = BraidWord::identity(n);
                for k in 1..n {
                    rhs = rhs.mul(&BraidWord::sigma(n, k as i32)?.pow(3));
                    for k2 in k + 2..=n {
                        rhs = rhs.mul(&sq(&band(n, k, k2)?));
                    }
                }
                if id.starts_with("neg/") {
                    rhs = flip_first(&rhs);
                }
                ck.eq(|| format!("size {n}"), &lhs, &rhs)?;
            }
        }
        "perm/stab-rel-1" | "perm/stab-rel-2" | "perm/stab-rel-3" | "perm/stab-rel-4" | "perm/stab-rel-5" => {
            let n = strands_param(p)?;
            check_strands(n)?;
            let d = |i: usize, e: i64| subcable(n, 1, i).unwrap().pow(e);
            let s = |a: usize, b: usize| band(n, a, b).unwrap();
            match id {
                "perm/stab-rel-1" => ck.eq(|| "σ1³ = δ2³".into(), &s(1, 2).pow(3), &d(2, 3))?,
                "perm/stab-rel-2" => {
                    let rhs = d(2, -3).mul(&d(3, 8)).mul(&d(2, -3)).mul(&d(3, -4));
                    ck.eq(|| "σ13²".into(), &sq(&s(1, 3)), &rhs)?;
                }
                "perm/stab-rel-3" => {
                    for i in 2..n {
                        let (a, b) = (i as i64 + 1, i as i64 + 2);
                        let rhs = d(i, -a).mul(&d(i + 1, b)).mul(&d(i + 1, b)).mul(&d(i, -a)).mul(&d(i + 1, -b));
                        ck.eq(|| format!("i={i}"), &sq(&s(1, i + 1)), &rhs)?;
                    }
                }
                "perm/stab-rel-4" => {
                    let full = d(n, n as i64 + 1);
                    for i in 1..n {
                        ck.eq(|| format!("i={i}"), &s(i, i + 1).pow(3), &cj(&full.pow(i as i64), &s(1, 2).pow(3)))?;
                    }
                }
                _ => {
                    let full = d(n, n as i64 + 1);
                    for i in 0..n {
                        for j in i + 3..=n {
                            ck.eq(|| format!("i={i} j={j}"), &sq(&s(i + 1, j)), &cj(&full.pow(i as i64), &sq(&s(1, j - i))))?;
                        }
                    }
                }
            }
        }
        "braid/stab-cube" | "braid/stab-square" => {
            let top = strands_param(p)?;
            check_strands(top + 1)?;
            for n in 1..=top {
                let h = base_tuple(&BaseTuple::BraidH(n))?;
                let gens: Vec<BraidWord> = if id.ends_with("cube") {
                    (1..n).map(|i| BraidWord::sigma(n, i as i32).unwrap().pow(3)).collect()
                } else {
                    (1..=n).flat_map(|i| (i + 2..=n).map(move |j| (i, j))).map(|(i, j)| sq(&band(n, i, j).unwrap())).collect()
                };
                for g in gens {
                    let ok = stabilizes(&g, &h)?;
                    ck.truth(|| format!("n={n} {g}"), ok);
                }
            }
        }
        "sl2-central-tau" => {
            let trials = strands_param(p)?;
            let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
            let pool = [
                SL2Matrix::t(),
                SL2Matrix::u(),
                SL2Matrix::t().inverse(),
                SL2Matrix::u().inverse(),
                SL2Matrix::t().product(&SL2Matrix::u()),
            ];
            for _ in 0..trials {
                let n = rng.gen_range(2..=6usize);
                let l = rng.gen_range(1..=n);
                let entries: Vec<SL2Matrix> = (0..n)
                    .map(|k| if k < l { SL2Matrix::minus_identity() } else { pool[rng.gen_range(0..pool.len())].clone() })
                    .collect();
                let tup = GTuple::Sl2(entries);
                for i in 1..=l {
                    for j in i + 1..=n {
                        let ok = stabilizes(&sq(&band(n, i, j)?), &tup)?;
                        ck.truth(|| format!("{tup} σ²({i},{j})"), ok);
                    }
                }
            }
        }
        "cubic-resultant" => {
            let v = ["p", "q", "y"];
            let (pp, q, y) = (IntPoly::var(&v, 0), IntPoly::var(&v, 1), IntPoly::var(&v, 2));
            let f = y.pow(3).sub(&pp.mul(&y).scale(&3.into())).add(&q.scale(&2.into()));
            let r = resultant(&f, &f.derivative(2), 2)?;
            let expect = pp.pow(3).sub(&q.pow(2)).scale(&(-108).into());
            ck.truth(|| format!("got {r}"), r == expect);
        }
        "band=prod-1" | "band=prod-2" | "band=prod-3" | "band=prod-3-literal" | "neg/band=prod" => {
            let l = ev()?;
            let lay = BpLayout::new(&l);
            let ln = lay.ln() as i64;
            let blocks = lay.blocks();
            for x in 0..blocks.len() {
                for y in x + 1..blocks.len() {
                    for z in y + 1..blocks.len() {
                        let (ip, jp, kp) = (&blocks[x], &blocks[y], &blocks[z]);
                        let e = sq(&lay.eta(&lay.reduced_band(ip, jp)?)?);
                        for a in 1..=ln {
                            for c in 1..=ln {
                                let s = lay.ext_sigma(&ext(ip, a), &ext(kp, c))?;
                                let lhs = cj(&e, &s);
                                let row = |r: std::ops::RangeInclusive<i64>| -> Result<BraidWord> {
                                    let mut w = BraidWord::identity(lay.strands());
                                    for t in r {
                                        w = w.mul(&sq(&lay.ext_sigma(&ext(ip, a), &ext(jp, t))?));
                                    }
                                    Ok(w)
                                };
                                let rhs = match id {
                                    "band=prod-1" => cj(&row(1..=ln)?, &s),
                                    "neg/band=prod" => flip_first(&cj(&row(1..=ln)?, &s)),
                                    "band=prod-2" => cj(&row(a - ln + 1..=a)?, &s),
                                    "band=prod-3" => cj(&row(c..=c + ln - 1)?, &s),
                                    _ => cji(&row(c..=c + ln - 1)?, &s),
                                };
                                ck.eq(|| format!("i'={ip} j'={jp} k'={kp} i_n={a} k_n={c}"), &lhs, &rhs)?;
                            }
                        }
                    }
                }
            }
        }
        "uncoil-i" | "uncoil-k" => {
            let l = ev()?;
            if l.n() < 3 {
                return Err(Error::InvalidParameter("uncoil needs n >= 3".into()));
            }
            let lay = BpLayout::new(&l);
            let ln = lay.ln() as i64;
            let blocks = lay.blocks();
            for ip in &blocks {
                for kp in &blocks {
                    if !(ip < kp && is_correlated_pair(ip, kp)) {
                        continue;
                    }
                    let jp = if id == "uncoil-i" {
                        ip.bump_component(0)
                    } else {
                        MultiIndex::new([&[ip.first()][..], &kp.components()[1..]].concat())
                    };
                    if !(ip < &jp && &jp < kp) || !blocks.contains(&jp) {
                        continue;
                    }
                    let e = sq(&lay.eta(&lay.reduced_band(ip, &jp)?)?);
                    for a in 1..=ln {
                        for c in 1..=ln {
                            let (i, k) = (ext(ip, a), ext(kp, c));
                            let s = lay.ext_sigma(&i, &k)?;
                            let lhs = cj(&e, &s);
                            let t = if id == "uncoil-i" { a } else { c };
                            let jt = ext(&jp, t);
                            let mid = cj(&sq(&lay.ext_sigma(&i, &jt)?), &s);
                            let what = || format!("i={ip}.{a} k={kp}.{c}");
                            if id == "uncoil-i" {
                                let mut pp = BraidWord::identity(lay.strands());
                                for x in a - ln + 1..a {
                                    pp = pp.mul(&sq(&lay.ext_sigma(&i, &ext(&jp, x))?));
                                }
                                ck.eq(what, &lhs, &cj(&pp, &mid))?;
                            } else {
                                let mut xx = BraidWord::identity(lay.strands());
                                for x in c + 1..c + ln {
                                    xx = xx.mul(&sq(&lay.ext_sigma(&ext(&jp, x), &k)?));
                                }
                                ck.eq(what, &lhs, &cji(&xx, &mid))?;
                            }
                            ck.eq(|| format!("immediate i={ip}.{a} k={kp}.{c}"), &mid, &cji(&sq(&lay.ext_sigma(&jt, &k)?), &s))?;
                        }
                    }
                }
            }
        }
        "tau/sigma-1" | "tau/sigma-2" => {
            let l = ev()?;
            let lay = BpLayout::new(&l);
            let ln = lay.ln() as i64;
            let n = lay.strands();
            let blocks = lay.blocks();
            for x in 0..blocks.len() {
                for y in x + 1..blocks.len() {
                    let (ip, jp) = (&blocks[x], &blocks[y]);
                    let sg = |a: &ExtIndex, b: &ExtIndex| lay.ext_sigma(a, b);
                    if id == "tau/sigma-1" {
                        for a in 1..ln {
                            let i = ext(ip, a);
                            let s = |t: i64| sg(&i, &ext(jp, t));
                            let p1 = (1..a).map(|t| s(t).map(|w| sq(&w))).collect::<Result<Vec<_>>>()?;
                            let p2 = (a + 1 - ln..0).map(|t| s(t).map(|w| sq(&w))).collect::<Result<Vec<_>>>()?;
                            let first = cji(&prod(n, p1), &cj(&prod(n, p2), &s(0)?));
                            let d = subcable(n, lay.position_of(jp, a + 1)?, lay.position_of(jp, ln)?)?.pow(ln - a + 1);
                            let second = cji(&d, &cj(&sq(&s(a)?), &s(a + 1)?));
                            ck.eq(|| format!("i={ip}.{a} j={jp}.0"), &first, &second)?;
                        }
                    } else {
                        let a = ln + 1;
                        for b in 2..=ln {
                            let (i, j) = (ext(ip, a), ext(jp, b));
                            let q1 = (b + 1..=ln).map(|k| sg(&ext(ip, k), &j).map(|w| sq(&w))).collect::<Result<Vec<_>>>()?;
                            let q2 =
                                (a + 1..=b - 1 + ln).map(|k| sg(&i, &ext(jp, k)).map(|w| sq(&w))).collect::<Result<Vec<_>>>()?;
                            let first = cj(&prod(n, q1), &cji(&prod(n, q2), &sg(&i, &j)?));
                            let d = if b >= 3 {
                                subcable(n, lay.position_of(ip, 1)?, lay.position_of(ip, b - 1)?)?.pow(b)
                            } else {
                                BraidWord::identity(n)
                            };
                            let inner = cj(&sq(&sg(&ext(ip, b - 1), &ext(ip, b))?), &sg(&ext(ip, b - 1), &j)?);
                            ck.eq(|| format!("i={ip}.{a} j={jp}.{b}"), &first, &cj(&d, &inner))?;
                        }
                    }
                }
            }
        }
        "iso/zero/conj" => {
            let l = ev()?;
            two_factor(&l)?;
            let lay = BpLayout::new(&l);
            let (l1, l2) = (l.as_slice()[0], l.as_slice()[1] as i64);
            for i1 in 1..=l1 {
                for j1 in i1 + 1..=l1 {
                    for i2 in 1..=l2 {
                        let ip = i2 - l2;
                        let (h1, hj) = (MultiIndex::new(vec![i1]), MultiIndex::new(vec![j1]));
                        let mut pp = BraidWord::identity(lay.strands());
                        for j2 in ip + 1..i2 {
                            pp = pp.mul(&sq(&lay.tau(&ext(&h1, ip), &ext(&hj, j2))?));
                        }
                        let lhs = cji(&pp, &lay.tau(&ext(&h1, ip), &ext(&hj, ip))?);
                        ck.eq(|| format!("i1={i1} j1={j1} i2={i2}"), &lhs, &lay.tau(&ext(&h1, ip), &ext(&hj, i2))?)?;
                    }
                }
            }
        }
        "cable-orb" => {
            let l = ev()?;
            two_factor(&l)?;
            let lay = BpLayout::new(&l);
            let dphi = lay.cable_delta()?;
            let (l1, l2) = (l.as_slice()[0], l.as_slice()[1] as i64);
            for i1 in 1..=l1 {
                for j1 in i1 + 1..=l1 {
                    let (h1, hj) = (MultiIndex::new(vec![i1]), MultiIndex::new(vec![j1]));
                    for i2 in 1..=l2 {
                        for j2 in i2 + 1..i2 + l2 {
                            for tau in [true, false] {
                                let f = |a: i64, b: i64| -> Result<BraidWord> {
                                    let (x, y) = (ext(&h1, a), ext(&hj, b));
                                    Ok(sq(&if tau { lay.tau(&x, &y)? } else { lay.ext_sigma(&x, &y)? }))
                                };
                                ck.eq(
                                    || format!("{} ({i1}{i2},{j1}{j2})", if tau { "τ²" } else { "σ²" }),
                                    &cj(&dphi, &f(i2, j2)?),
                                    &f(i2 + 1, j2 + 1)?,
                                )?;
                            }
                        }
                    }
                }
            }
        }
        "ff(st)" => {
            let l = ev()?;
            two_factor(&l)?;
            let lay = BpLayout::new(&l);
            let (l1, l2) = (l.as_slice()[0], l.as_slice()[1] as i64);
            for i1 in 1..=l1 {
                for k1 in i1 + 1..=l1 {
                    for k2 in 1..l2 {
                        let (hi, hk) = (MultiIndex::new(vec![i1]), MultiIndex::new(vec![k1]));
                        // τ label i_2' = i_2 − l_2 sits at σ label i_2
                        let tau = sq(&lay.tau(&ext(&hi, l2), &ext(&hk, k2))?);
                        let sig = sq(&lay.ext_sigma(&ext(&hi, l2), &ext(&hk, k2))?);
                        ck.eq(|| format!("({i1}0,{k1}{k2})"), &tau, &sig)?;
                    }
                }
            }
        }
        "tri/conj" => {
            let l = ev()?;
            two_factor(&l)?;
            let lay = BpLayout::new(&l);
            let (l1, l2) = (l.as_slice()[0], l.as_slice()[1] as i64);
            let h = |x: u32| MultiIndex::new(vec![x]);
            for i1 in 1..=l1 {
                let ip1 = i1 + 1;
                for j1 in ip1 + 1..=l1 {
                    if 2 * (j1 - i1) < l1 + 2 {
                        continue; // only the rows with a displayed conjugation
                    }
                    for i2 in 1..=l2 {
                        let i2p = i2 - l2;
                        let t = |a: u32, b: i64, c: u32, d: i64| lay.tau(&ext(&h(a), b), &ext(&h(c), d));
                        let mid = sq(&t(ip1, i2p, j1, i2)?);
                        let x = cji(&t(i1, i2p, ip1, i2p)?, &mid);
                        let y = cji(&t(i1, i2p, ip1, i2)?, &mid);
                        let mut pp = BraidWord::identity(lay.strands());
                        for j2 in i2p + 1..i2 {
                            pp = pp.mul(&sq(&t(i1, i2p, j1, j2)?));
                        }
                        ck.eq(|| format!("({i1},{ip1},{j1}) i2={i2}"), &cji(&pp, &x), &y)?;
                        ck.eq(|| format!("conjugator commutes ({i1},{ip1},{j1}) i2={i2}"), &cj(&pp, &mid), &mid)?;
                    }
                }
            }
        }
        "red-gen-rel-1" | "red-gen-rel-2" | "red-gen-rel-3" | "red-gen-rel-4" => {
            let (nmax, lmax) = match ExponentVector::parse(p)?.as_slice() {
                [a, b] => (*a as usize, *b as usize),
                _ => return Err(Error::InvalidParameter("red-gen expects n,l".into())),
            };
            check_strands(2 * nmax + lmax)?;
            for nn in 1..=nmax {
                for l in 0..=lmax {
                    let n = 2 * nn + l;
                    red_gen(id, n, l, &mut ck)?;
                }
            }
        }
        "filt/iso-tri-gen" | "neg/filt-wrong-conjugator" => {
            let n = strands_param(p)?;
            check_strands(n)?;
            let inst = iso_tri_gen_filtration(n, id.starts_with("neg/"))?;
            let r = run_filt(&inst, budget.word_cap)?;
            for (what, ok) in r {
                ck.truth(|| what, ok);
            }
        }
        _ => return Err(Error::InvalidParameter(format!("unknown identity case {id:?}"))),
    }
    ck.finish(case)
}

fn two_factor(l: &ExponentVector) -> Result<()> {
    if l.n() != 2 {
        return Err(Error::InvalidParameter("this case needs a two-component exponent vector".into()));
    }
    Ok(())
}

/// Back-band reading `σ_{i,j}` (equal to `σ_i` for adjacent punctures).
fn rg_band(n: usize, i: usize, j: usize) -> Result<BraidWord> {
    if j == i + 1 {
        BraidWord::sigma(n, i as i32)
    } else {
        back_band(n, i, j)
    }
}

/// `σ_{a,a+2} σ_{a+2,a+4} ⋯` up to `b`.
fn rg_chain(n: usize, a: usize, b: usize) -> Result<BraidWord> {
    let mut out = BraidWord::identity(n);
    let mut x = a;
    while x + 2 <= b {
        out = out.mul(&rg_band(n, x, x + 2)?);
        x += 2;
    }
    Ok(out)
}

fn red_gen(id: &str, n: usize, l: usize, ck: &mut Checker) -> Result<()> {
    for i in 1..=n {
        for j in i + 1..=n {
            match id {
                "red-gen-rel-1" if j <= l && j > i + 1 => {
                    let pre = BraidWord::new(n, ((i + 1)..j).map(|x| x as i32).collect())?;
                    let rhs = cji(&pre, &BraidWord::sigma(n, i as i32)?);
                    ck.eq(|| format!("n={n} l={l} ({i},{j})"), &rg_band(n, i, j)?, &rhs)?;
                }
                "red-gen-rel-2" if i > l && (j - i) % 2 == 0 && j > i + 2 => {
                    let c = rg_chain(n, i + 2, j)?;
                    ck.eq(|| format!("n={n} l={l} ({i},{j})"), &rg_band(n, i, j)?, &cji(&c, &rg_band(n, i, i + 2)?))?;
                }
                "red-gen-rel-3" if i > l && (j - i) % 2 == 1 && (i - l) % 2 == 1 && j > i + 1 => {
                    let c = rg_chain(n, i + 1, j)?;
                    let rhs = cji(&c, &BraidWord::sigma(n, i as i32)?.pow(3));
                    ck.eq(|| format!("n={n} l={l} ({i},{j})"), &rg_band(n, i, j)?.pow(3), &rhs)?;
                }
                "red-gen-rel-4" if i > l + 1 && (j - i) % 2 == 1 && (i - l).is_multiple_of(2) && j > i + 1 => {
                    let c = rg_chain(n, i + 1, j)?;
                    let mid = cj(&rg_band(n, i - 1, i + 1)?, &rg_band(n, i - 1, i)?.pow(3));
                    ck.eq(|| format!("n={n} l={l} ({i},{j})"), &rg_band(n, i, j)?.pow(3), &cji(&c, &mid))?;
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// One cross-filtration match `T_k ∋ t = c·s·c⁻¹` with `s ∈ S_k` and `c` built from `S_{k−1}`.
#[derive(Clone, Debug)]
pub struct FiltMatch {
    pub level: usize,
    pub s: usize,
    pub t: usize,
    pub conjugator: BraidWord,
}

/// Filtrations given level by level: `s_levels[k]` are the elements new in `S_{k+1}`.
#[derive(Clone, Debug)]
pub struct FiltInstance {
    pub strands: usize,
    pub s_levels: Vec<Vec<BraidWord>>,
    pub t_levels: Vec<Vec<BraidWord>>,
    pub matches: Vec<FiltMatch>,
}

/// Checks the hypotheses: `S_1 = T_1` up to braid equality, every new element on either side is
/// matched, and every match holds under its conjugator. Returns `(description, ok)` per check.
pub fn run_filt(inst: &FiltInstance, cap: usize) -> Result<Vec<(String, bool)>> {
    let mut out = Vec::new();
    if inst.s_levels.len() != inst.t_levels.len() || inst.s_levels.is_empty() {
        return Err(Error::InvalidParameter("filtrations must have the same positive length".into()));
    }
    let (s1, t1) = (&inst.s_levels[0], &inst.t_levels[0]);
    let contains = |set: &[BraidWord], x: &BraidWord| -> Result<bool> {
        for y in set {
            if braids_equal_capped(x, y, cap)? {
                return Ok(true);
            }
        }
        Ok(false)
    };
    for x in s1 {
        out.push((format!("S_1 element {x} in T_1"), contains(t1, x)?));
    }
    for x in t1 {
        out.push((format!("T_1 element {x} in S_1"), contains(s1, x)?));
    }
    for (lv, (ss, ts)) in inst.s_levels.iter().zip(&inst.t_levels).enumerate().skip(1) {
        for (k, _) in ss.iter().enumerate() {
            let ok = inst.matches.iter().any(|m| m.level == lv && m.s == k);
            out.push((format!("level {} S element {k} matched", lv + 1), ok));
        }
        for (k, _) in ts.iter().enumerate() {
            let ok = inst.matches.iter().any(|m| m.level == lv && m.t == k);
            out.push((format!("level {} T element {k} matched", lv + 1), ok));
        }
    }
    for m in &inst.matches {
        let s = inst.s_levels.get(m.level).and_then(|v| v.get(m.s));
        let t = inst.t_levels.get(m.level).and_then(|v| v.get(m.t));
        let (Some(s), Some(t)) = (s, t) else {
            return Err(Error::InvalidParameter("match refers to a missing element".into()));
        };
        let ok = braids_equal_capped(&cj(&m.conjugator, s), t, cap)?;
        out.push((format!("level {} match: {t} = c·{s}·c⁻¹ with c = {}", m.level + 1, m.conjugator), ok));
    }
    Ok(out)
}

/// The filtration behind the `Br(A_n)` generating-set statement: `S_k` adds `σ²_{i,j}`,
/// `T_k` adds `σ_{i}^{-2} σ̌²_{i,j} σ_i²` for `j − i = k`, matched by `∏_{i+1<j'<j} σ²_{i,j'}`.
pub fn iso_tri_gen_filtration(n: usize, wrong_conjugator: bool) -> Result<FiltInstance> {
    let mut s_levels = vec![(1..n).map(|i| BraidWord::sigma(n, i as i32).unwrap().pow(3)).collect::<Vec<_>>()];
    let mut t_levels = vec![s_levels[0].clone()];
    let mut matches = Vec::new();
    for k in 2..n {
        let lv = s_levels.len();
        let (mut ss, mut ts) = (Vec::new(), Vec::new());
        for i in 1..=n - k {
            let j = i + k;
            ss.push(sq(&band(n, i, j)?));
            let si = BraidWord::sigma(n, i as i32)?;
            ts.push(cji(&sq(&si), &sq(&back_band(n, i, j)?)));
            let mut c = prod(n, (i + 2..j).map(|x| sq(&band(n, i, x).unwrap())));
            if wrong_conjugator && k == n - 1 {
                c = c.mul(&si);
            }
            matches.push(FiltMatch { level: lv, s: ss.len() - 1, t: ts.len() - 1, conjugator: c });
        }
        s_levels.push(ss);
        t_levels.push(ts);
    }
    Ok(FiltInstance { strands: n, s_levels, t_levels, matches })
}
