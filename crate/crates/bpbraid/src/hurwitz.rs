//! Hurwitz action of braids on tuples in SL₂(ℤ), braid groups and symmetric groups.
//!
//! `σ_i · (…, x_i, x_{i+1}, …) = (…, x_i x_{i+1} x_i⁻¹, x_i, …)`. This is a left action, so
//! for a word the rightmost letter acts first.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::words::{artin_action, BraidWord, FreeWord, Permutation};

/// Group operations needed by the action.
pub trait GroupElem: Clone {
    fn mul(&self, other: &Self) -> Result<Self>;
    fn inv(&self) -> Self;
    /// Equality in the group (not of representatives).
    fn same(&self, other: &Self) -> Result<bool>;
    /// Canonical key: equal keys iff equal group elements.
    fn key(&self) -> Result<String>;
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SL2Matrix {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl SL2Matrix {
    pub fn new(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Result<Self> {
        if &a * &d - &b * &c != BigInt::one() {
            return Err(Error::InvalidParameter(format!("determinant of [[{a},{b}],[{c},{d}]] is not 1")));
        }
        Ok(SL2Matrix { a, b, c, d })
    }

    pub fn from_i64(a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn identity() -> Self {
        SL2Matrix { a: BigInt::one(), b: BigInt::zero(), c: BigInt::zero(), d: BigInt::one() }
    }

    pub fn minus_identity() -> Self {
        SL2Matrix { a: -BigInt::one(), b: BigInt::zero(), c: BigInt::zero(), d: -BigInt::one() }
    }

    /// `[[1,1],[0,1]]`
    pub fn t() -> Self {
        SL2Matrix { a: BigInt::one(), b: BigInt::one(), c: BigInt::zero(), d: BigInt::one() }
    }

    /// `[[1,0],[-1,1]]`
    pub fn u() -> Self {
        SL2Matrix { a: BigInt::one(), b: BigInt::zero(), c: -BigInt::one(), d: BigInt::one() }
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn product(&self, o: &SL2Matrix) -> SL2Matrix {
        SL2Matrix {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
        }
    }

    pub fn inverse(&self) -> SL2Matrix {
        SL2Matrix { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    fn to_json(&self) -> Value {
        let n = |x: &BigInt| -> Value {
            match i64::try_from(x) {
                Ok(v) => json!(v),
                Err(_) => json!(x.to_string()),
            }
        };
        json!([[n(&self.a), n(&self.b)], [n(&self.c), n(&self.d)]])
    }
}

impl fmt::Display for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{},{}],[{},{}]]", self.a, self.b, self.c, self.d)
    }
}

impl GroupElem for SL2Matrix {
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self.product(o))
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn same(&self, o: &Self) -> Result<bool> {
        Ok(self == o)
    }
    fn key(&self) -> Result<String> {
        Ok(self.to_string())
    }
}

impl GroupElem for Permutation {
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self.compose(o))
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn same(&self, o: &Self) -> Result<bool> {
        Ok(self == o)
    }
    fn key(&self) -> Result<String> {
        Ok(self.to_string())
    }
}

impl GroupElem for BraidWord {
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(self.try_mul(o)?.free_reduced())
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn same(&self, o: &Self) -> Result<bool> {
        crate::words::braids_equal(self, o)
    }
    fn key(&self) -> Result<String> {
        Ok(artin_action(self)?.to_string())
    }
}

impl GroupElem for FreeWord {
    fn mul(&self, o: &Self) -> Result<Self> {
        FreeWord::mul(self, o)
    }
    fn inv(&self) -> Self {
        self.inverse()
    }
    fn same(&self, o: &Self) -> Result<bool> {
        Ok(self == o)
    }
    fn key(&self) -> Result<String> {
        Ok(self.to_string())
    }
}

/// Applies `b` to `xs` in place.
pub fn act_on_slice<T: GroupElem>(b: &BraidWord, xs: &mut [T]) -> Result<()> {
    if b.strands() != xs.len() {
        return Err(Error::StrandMismatch { left: b.strands(), right: xs.len() });
    }
    for &l in b.letters().iter().rev() {
        let i = l.unsigned_abs() as usize - 1;
        let (x, y) = (xs[i].clone(), xs[i + 1].clone());
        if l > 0 {
            xs[i] = x.mul(&y)?.mul(&x.inv())?;
            xs[i + 1] = x;
        } else {
            xs[i + 1] = y.inv().mul(&x)?.mul(&y)?;
            xs[i] = y;
        }
    }
    Ok(())
}

/// Tuple of elements of one target group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GTuple {
    Sl2(Vec<SL2Matrix>),
    Braid { strands: usize, entries: Vec<BraidWord> },
    Perm { degree: usize, entries: Vec<Permutation> },
}

impl GTuple {
    pub fn len(&self) -> usize {
        match self {
            GTuple::Sl2(v) => v.len(),
            GTuple::Braid { entries, .. } => entries.len(),
            GTuple::Perm { entries, .. } => entries.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn target(&self) -> String {
        match self {
            GTuple::Sl2(_) => "sl2".into(),
            GTuple::Braid { strands, .. } => format!("braid({strands})"),
            GTuple::Perm { degree, .. } => format!("perm({degree})"),
        }
    }

    /// Canonical key of the tuple (braid entries keyed by their Artin images).
    pub fn key(&self) -> Result<String> {
        fn k<T: GroupElem>(v: &[T]) -> Result<String> {
            Ok(v.iter().map(GroupElem::key).collect::<Result<Vec<_>>>()?.join(" | "))
        }
        match self {
            GTuple::Sl2(v) => k(v),
            GTuple::Braid { entries, .. } => k(entries),
            GTuple::Perm { entries, .. } => k(entries),
        }
    }

    /// Entrywise equality in the target group.
    pub fn same(&self, o: &GTuple) -> Result<bool> {
        fn s<T: GroupElem>(a: &[T], b: &[T]) -> Result<bool> {
            if a.len() != b.len() {
                return Ok(false);
            }
            for (x, y) in a.iter().zip(b) {
                if !x.same(y)? {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        match (self, o) {
            (GTuple::Sl2(a), GTuple::Sl2(b)) => s(a, b),
            (GTuple::Braid { entries: a, .. }, GTuple::Braid { entries: b, .. }) => s(a, b),
            (GTuple::Perm { entries: a, .. }, GTuple::Perm { entries: b, .. }) => s(a, b),
            _ => Ok(false),
        }
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = match self {
            GTuple::Sl2(v) => v.iter().map(SL2Matrix::to_json).collect(),
            GTuple::Braid { entries, .. } => entries.iter().map(|w| json!(w.to_string())).collect(),
            GTuple::Perm { entries, .. } => entries.iter().map(|p| json!(p.to_string())).collect(),
        };
        json!({ "target": self.target(), "entries": entries })
    }
}

impl fmt::Display for GTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = match self {
            GTuple::Sl2(v) => v.iter().map(ToString::to_string).collect(),
            GTuple::Braid { entries, .. } => entries.iter().map(ToString::to_string).collect(),
            GTuple::Perm { entries, .. } => entries.iter().map(ToString::to_string).collect(),
        };
        write!(f, "{}: ({})", self.target(), parts.join(", "))
    }
}

pub fn hurwitz_act(b: &BraidWord, t: &GTuple) -> Result<GTuple> {
    let mut out = t.clone();
    match &mut out {
        GTuple::Sl2(v) => act_on_slice(b, v)?,
        GTuple::Braid { entries, .. } => act_on_slice(b, entries)?,
        GTuple::Perm { entries, .. } => act_on_slice(b, entries)?,
    }
    Ok(out)
}

pub fn stabilizes(b: &BraidWord, t: &GTuple) -> Result<bool> {
    hurwitz_act(b, t)?.same(t)
}

/// Named base tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BaseTuple {
    /// `(σ_1, σ_2, σ_1, …)` of length `n` in `Br_3`.
    PhiN(usize),
    /// `l` copies of `−id`, then alternately `[[1,1],[0,1]]`, `[[1,0],[−1,1]]` (`l'` entries).
    Psi(usize, usize),
    /// `((1 2), (2 3), …, (n n+1))` in `Σ_{n+1}`.
    PermH(usize),
    /// `(σ_1, …, σ_n)` in `Br_{n+1}`.
    BraidH(usize),
}

impl BaseTuple {
    /// Parses `phi:4`, `psi:2,3`, `perm:3` or `braid:3`.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, args) = s.split_once(':').ok_or_else(|| Error::Parse(format!("tuple spec must be kind:args, got {s:?}")))?;
        let nums: Vec<usize> = args
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| Error::Parse(format!("bad number {x:?}"))))
            .collect::<Result<_>>()?;
        match (kind, nums.as_slice()) {
            ("phi", [n]) => Ok(BaseTuple::PhiN(*n)),
            ("psi", [l, lp]) => Ok(BaseTuple::Psi(*l, *lp)),
            ("perm", [n]) => Ok(BaseTuple::PermH(*n)),
            ("braid", [n]) => Ok(BaseTuple::BraidH(*n)),
            _ => Err(Error::Parse(format!("unknown tuple spec {s:?}"))),
        }
    }
}

pub fn base_tuple(kind: &BaseTuple) -> Result<GTuple> {
    match *kind {
        BaseTuple::PhiN(n) => {
            let entries = (0..n).map(|k| BraidWord::sigma(3, if k % 2 == 0 { 1 } else { 2 })).collect::<Result<_>>()?;
            Ok(GTuple::Braid { strands: 3, entries })
        }
        BaseTuple::Psi(l, lp) => Ok(GTuple::Sl2(
            (1..=l + lp)
                .map(|i| {
                    if i <= l {
                        SL2Matrix::minus_identity()
                    } else if (i - l) % 2 == 1 {
                        SL2Matrix::t()
                    } else {
                        SL2Matrix::u()
                    }
                })
                .collect(),
        )),
        BaseTuple::PermH(n) => {
            let entries = (1..=n).map(|i| Permutation::transposition(n + 1, i, i + 1)).collect::<Result<_>>()?;
            Ok(GTuple::Perm { degree: n + 1, entries })
        }
        BaseTuple::BraidH(n) => {
            let entries = (1..=n).map(|i| BraidWord::sigma(n + 1, i as i32)).collect::<Result<_>>()?;
            Ok(GTuple::Braid { strands: n + 1, entries })
        }
    }
}

#[derive(Clone, Debug)]
pub enum OrbitOutcome {
    Finite(Vec<GTuple>),
    CapExceeded { explored: usize },
}

/// Breadth-first closure of `t` under `gens` and their inverses, stopping past `cap` states.
pub fn orbit_enumerate(t: &GTuple, gens: &[BraidWord], cap: usize) -> Result<OrbitOutcome> {
    let mut moves: Vec<BraidWord> = Vec::new();
    for g in gens {
        moves.push(g.clone());
        moves.push(g.inverse());
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(t.key()?);
    queue.push_back(t.clone());
    while let Some(x) = queue.pop_front() {
        for g in &moves {
            let y = hurwitz_act(g, &x)?;
            if seen.insert(y.key()?) {
                if seen.len() > cap {
                    return Ok(OrbitOutcome::CapExceeded { explored: seen.len() });
                }
                queue.push_back(y);
            }
        }
        out.push(x);
    }
    Ok(OrbitOutcome::Finite(out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bw(n: usize, l: &[i32]) -> BraidWord {
        BraidWord::new(n, l.to_vec()).unwrap()
    }

    #[test]
    fn generator_rule_on_free_words() {
        let a = FreeWord::generator(2, 1).unwrap();
        let b = FreeWord::generator(2, 2).unwrap();
        let mut xs = vec![a.clone(), b.clone()];
        act_on_slice(&bw(2, &[1]), &mut xs).unwrap();
        assert_eq!(xs[0].to_string(), "t1^1 t2^1 t1^-1");
        assert_eq!(xs[1], a);
        act_on_slice(&bw(2, &[-1]), &mut xs).unwrap();
        assert_eq!(xs, vec![a, b]);
    }

    #[test]
    fn action_on_free_generators_is_artin_of_reversed_word() {
        let b = bw(4, &[1, -3, 2, 2, -1, 3]);
        let mut xs: Vec<FreeWord> = (1..=4).map(|i| FreeWord::generator(4, i).unwrap()).collect();
        act_on_slice(&b, &mut xs).unwrap();
        assert_eq!(xs.as_slice(), artin_action(&b.reversed()).unwrap().images());
    }

    #[test]
    fn base_tuples() {
        let p = base_tuple(&BaseTuple::Psi(0, 2)).unwrap();
        assert_eq!(p.to_string(), "sl2: ([[1,1],[0,1]], [[1,0],[-1,1]])");
        let p = base_tuple(&BaseTuple::Psi(2, 0)).unwrap();
        assert_eq!(p.to_string(), "sl2: ([[-1,0],[0,-1]], [[-1,0],[0,-1]])");
        let h = base_tuple(&BaseTuple::PermH(3)).unwrap();
        assert_eq!(h.to_string(), "perm(4): ((1 2), (2 3), (3 4))");
        assert_eq!(base_tuple(&BaseTuple::PhiN(3)).unwrap().to_string(), "braid(3): (s1, s2, s1)");
        assert_eq!(BaseTuple::parse("psi:2,3").unwrap(), BaseTuple::Psi(2, 3));
        assert!(BaseTuple::parse("psi:2").is_err());
    }

    #[test]
    fn stabilizer_examples() {
        let phi = base_tuple(&BaseTuple::PhiN(2)).unwrap();
        assert!(stabilizes(&bw(2, &[1, 1, 1]), &phi).unwrap());
        assert!(!stabilizes(&bw(2, &[1]), &phi).unwrap());
        let psi = base_tuple(&BaseTuple::Psi(0, 2)).unwrap();
        let moved = hurwitz_act(&bw(2, &[1]), &psi).unwrap();
        let GTuple::Sl2(m) = &moved else { unreachable!() };
        assert_eq!(m[0], SL2Matrix::from_i64(0, 1, -1, 2).unwrap());
        assert_eq!(m[1], SL2Matrix::t());
        assert!(!stabilizes(&bw(2, &[1]), &psi).unwrap());
        let t = GTuple::Sl2(vec![SL2Matrix::minus_identity(), SL2Matrix::u()]);
        assert!(stabilizes(&bw(2, &[1, 1]), &t).unwrap());
        assert!(matches!(stabilizes(&bw(3, &[1]), &t), Err(Error::StrandMismatch { .. })));
    }

    #[test]
    fn orbits() {
        let h = base_tuple(&BaseTuple::PermH(2)).unwrap();
        let OrbitOutcome::Finite(o) = orbit_enumerate(&h, &[bw(2, &[1])], 100).unwrap() else { panic!() };
        assert_eq!(o.len(), 3);
        let id = GTuple::Perm { degree: 3, entries: vec![Permutation::identity(3); 3] };
        let OrbitOutcome::Finite(o) = orbit_enumerate(&id, &[bw(3, &[1]), bw(3, &[2])], 100).unwrap() else { panic!() };
        assert_eq!(o.len(), 1);
        let psi = base_tuple(&BaseTuple::Psi(0, 2)).unwrap();
        let OrbitOutcome::Finite(o) = orbit_enumerate(&psi, &[bw(2, &[1])], 10_000).unwrap() else { panic!() };
        assert_eq!(o.len(), 3);
        let many = base_tuple(&BaseTuple::Psi(0, 4)).unwrap();
        let gens = [bw(4, &[1]), bw(4, &[2]), bw(4, &[3])];
        let OrbitOutcome::Finite(o) = orbit_enumerate(&many, &gens, 1000).unwrap() else { panic!() };
        assert_eq!(o.len(), 27);
        assert!(matches!(orbit_enumerate(&many, &gens, 10).unwrap(), OrbitOutcome::CapExceeded { .. }));
    }

    #[test]
    fn sl2_rejects_bad_determinant() {
        assert!(SL2Matrix::from_i64(1, 1, 1, 1).is_err());
    }

    proptest! {
        #[test]
        fn action_axiom(a in prop::collection::vec((1i32..4, any::<bool>()), 0..8),
                        b in prop::collection::vec((1i32..4, any::<bool>()), 0..8)) {
            let mk = |v: Vec<(i32, bool)>| bw(4, &v.into_iter().map(|(i, s)| if s { i } else { -i }).collect::<Vec<_>>());
            let (a, b) = (mk(a), mk(b));
            let t = base_tuple(&BaseTuple::Psi(1, 3)).unwrap();
            let lhs = hurwitz_act(&a.mul(&b), &t).unwrap();
            let rhs = hurwitz_act(&a, &hurwitz_act(&b, &t).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
