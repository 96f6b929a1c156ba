//! Sparse exact integer polynomials, resultants, and the discriminant / bifurcation
//! polynomials of the linear unfolding `Σ (x_i^{l_i+1} − α_i (l_i+1) x_i)`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::multiindex::ExponentVector;

/// Default refusal thresholds for the Milnor number.
pub const DEFAULT_MAX_MU_DISCRIMINANT: usize = 12;
pub const DEFAULT_MAX_MU_BIFURCATION: usize = 8;

/// Polynomial with integer coefficients in named variables; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntPoly {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl IntPoly {
    pub fn zero(vars: &[&str]) -> Self {
        IntPoly { vars: vars.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    fn zero_like(&self) -> Self {
        IntPoly { vars: self.vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant_like(&self, c: impl Into<BigInt>) -> Self {
        let mut p = self.zero_like();
        p.add_term(vec![0; self.vars.len()], c.into());
        p
    }

    pub fn constant(vars: &[&str], c: impl Into<BigInt>) -> Self {
        Self::zero(vars).constant_like(c)
    }

    /// The `k`-th variable (0-based) as a polynomial.
    pub fn var(vars: &[&str], k: usize) -> Self {
        let mut p = Self::zero(vars);
        let mut e = vec![0; vars.len()];
        e[k] = 1;
        p.add_term(e, BigInt::one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, combining duplicates.
    pub fn from_terms(vars: &[&str], terms: &[(Vec<u32>, i64)]) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::InvalidParameter("exponent vector length differs from variable count".into()));
            }
            p.add_term(e.clone(), BigInt::from(*c));
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn same_vars(&self, o: &IntPoly) {
        assert_eq!(self.vars, o.vars, "polynomial variable sets differ");
    }

    pub fn add(&self, o: &IntPoly) -> IntPoly {
        self.same_vars(o);
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> IntPoly {
        IntPoly { vars: self.vars.clone(), terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, o: &IntPoly) -> IntPoly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &IntPoly) -> IntPoly {
        self.same_vars(o);
        let mut r = self.zero_like();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        let mut r = self.zero_like();
        for (e, x) in &self.terms {
            r.add_term(e.clone(), x * c);
        }
        r
    }

    pub fn pow(&self, k: u32) -> IntPoly {
        let mut r = self.constant_like(1);
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    pub fn degree_in(&self, k: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[k]).max()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Coefficient of `var_k^d`, as a polynomial in the same variables (not involving `var_k`).
    pub fn coeff_in(&self, k: usize, d: u32) -> IntPoly {
        let mut r = self.zero_like();
        for (e, c) in &self.terms {
            if e[k] == d {
                let mut e2 = e.clone();
                e2[k] = 0;
                r.add_term(e2, c.clone());
            }
        }
        r
    }

    /// Coefficients `[c_0, c_1, …]` with respect to `var_k`.
    pub fn as_univariate(&self, k: usize) -> Vec<IntPoly> {
        let d = self.degree_in(k).unwrap_or(0);
        (0..=d).map(|i| self.coeff_in(k, i)).collect()
    }

    pub fn derivative(&self, k: usize) -> IntPoly {
        let mut r = self.zero_like();
        for (e, c) in &self.terms {
            if e[k] > 0 {
                let mut e2 = e.clone();
                e2[k] -= 1;
                r.add_term(e2, c * BigInt::from(e[k]));
            }
        }
        r
    }

    /// Replaces `var_k` by `s` (Horner evaluation).
    pub fn substitute(&self, k: usize, s: &IntPoly) -> IntPoly {
        self.same_vars(s);
        let coeffs = self.as_univariate(k);
        let mut r = self.zero_like();
        for c in coeffs.iter().rev() {
            r = r.mul(s).add(c);
        }
        r
    }

    /// Removes a variable the polynomial does not depend on.
    pub fn drop_var(&self, k: usize) -> Result<IntPoly> {
        if self.degree_in(k).unwrap_or(0) > 0 {
            return Err(Error::InvalidParameter(format!("polynomial still depends on {}", self.vars[k])));
        }
        let mut vars = self.vars.clone();
        vars.remove(k);
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut e2 = e.clone();
                e2.remove(k);
                (e2, c.clone())
            })
            .collect();
        Ok(IntPoly { vars, terms })
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Exact division; fails if `d` does not divide `self`.
    pub fn div_exact(&self, d: &IntPoly) -> Result<IntPoly> {
        self.same_vars(d);
        let (md, cd) = d.terms.iter().next_back().ok_or(Error::ZeroPolynomial)?;
        let mut rem = self.clone();
        let mut q = self.zero_like();
        while let Some((m, c)) = rem.terms.iter().next_back() {
            if m.iter().zip(md).any(|(a, b)| a < b) || !(c % cd).is_zero() {
                return Err(Error::InvalidParameter("inexact polynomial division".into()));
            }
            let e: Vec<u32> = m.iter().zip(md).map(|(a, b)| a - b).collect();
            let t = c / cd;
            let mut mono = self.zero_like();
            mono.add_term(e.clone(), t.clone());
            q.add_term(e, t);
            rem = rem.sub(&mono.mul(d));
        }
        Ok(q)
    }

    /// Terms in descending graded-lex order, variables ranked by position (last is largest).
    pub fn sorted_terms(&self) -> Vec<(&Vec<u32>, &BigInt)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by_key(|t| std::cmp::Reverse(grlex_key(t.0)));
        v
    }

    /// Coefficient of the graded-lex leading monomial.
    pub fn leading_grlex_coeff(&self) -> Option<&BigInt> {
        self.sorted_terms().first().map(|t| t.1)
    }

    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.sorted_terms().into_iter().map(|(e, c)| json!({ "exps": e, "coeff": c.to_string() })).collect();
        json!({ "vars": self.vars, "terms": terms })
    }
}

fn grlex_key(e: &[u32]) -> (u32, Vec<u32>) {
    (e.iter().sum(), e.iter().rev().copied().collect())
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // powers of z first, then graded lex
        let zi = self.var_index("z");
        let mut terms = self.sorted_terms();
        if let Some(zi) = zi {
            terms.sort_by_key(|t| std::cmp::Reverse(t.0[zi]));
        }
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (v, &p) in self.vars.iter().zip(e.iter()) {
                match p {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{p}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

/// Sylvester resultant eliminating `var`, by fraction-free (Bareiss) elimination.
pub fn resultant(p: &IntPoly, q: &IntPoly, var: usize) -> Result<IntPoly> {
    p.same_vars(q);
    if p.is_zero() || q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let a = p.as_univariate(var);
    let b = q.as_univariate(var);
    let (m, n) = (a.len() - 1, b.len() - 1);
    if m == 0 {
        return Ok(a[0].pow(n as u32));
    }
    if n == 0 {
        return Ok(b[0].pow(m as u32));
    }
    let size = m + n;
    let zero = p.zero_like();
    let mut mat = vec![vec![zero.clone(); size]; size];
    for r in 0..n {
        for (k, c) in a.iter().rev().enumerate() {
            mat[r][r + k] = c.clone();
        }
    }
    for r in 0..m {
        for (k, c) in b.iter().rev().enumerate() {
            mat[n + r][r + k] = c.clone();
        }
    }
    bareiss_det(mat)
}

fn bareiss_det(mut m: Vec<Vec<IntPoly>>) -> Result<IntPoly> {
    let size = m.len();
    let one = m[0][0].constant_like(1);
    let mut prev = one;
    let mut negate = false;
    for k in 0..size.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..size).find(|&r| !m[r][k].is_zero()) else {
                return Ok(m[0][0].zero_like());
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = t.div_exact(&prev)?;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[size - 1][size - 1].clone();
    Ok(if negate { d.neg() } else { d })
}

fn hl_vars(n: usize, extra: &[&str]) -> Vec<String> {
    let mut v: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    v.extend(extra.iter().map(|s| s.to_string()));
    v
}

/// `p_Δ ∈ ℤ[α_1..α_n, z]`, monic of degree `μ` in `z`, with the default budget.
pub fn hl_discriminant(l: &ExponentVector) -> Result<IntPoly> {
    hl_discriminant_with_budget(l, DEFAULT_MAX_MU_DISCRIMINANT)
}

/// Iterated resultants `P_k(z) = Res_w(w^{l_k} − l_k^{l_k} α_k^{l_k+1}, P_{k−1}(z − w))`, `P_0 = z`.
/// Its roots are `z = Σ l_i α_i x_i` over all solutions of `x_i^{l_i} = α_i`.
pub fn hl_discriminant_with_budget(l: &ExponentVector, max_mu: usize) -> Result<IntPoly> {
    if l.mu() > max_mu {
        return Err(Error::ResourceExceeded(format!("discriminant for mu = {} exceeds budget {max_mu}", l.mu())));
    }
    let n = l.n();
    let names = hl_vars(n, &["z", "w"]);
    let vars: Vec<&str> = names.iter().map(String::as_str).collect();
    let (zi, wi) = (n, n + 1);
    let z = IntPoly::var(&vars, zi);
    let w = IntPoly::var(&vars, wi);
    let z_minus_w = z.sub(&w);
    let mut p = z.clone();
    for (k, &lk) in l.as_slice().iter().enumerate() {
        let alpha = IntPoly::var(&vars, k);
        let c = alpha.pow(lk + 1).scale(&BigInt::from(lk).pow(lk));
        let binom = w.pow(lk).sub(&c);
        let shifted = p.substitute(zi, &z_minus_w);
        p = resultant(&binom, &shifted, wi)?;
    }
    let p = p.drop_var(wi)?;
    let lead = p.coeff_in(zi, l.mu() as u32);
    if lead == p.constant_like(1) {
        Ok(p)
    } else if lead == p.constant_like(-1) {
        Ok(p.neg())
    } else {
        Err(Error::InvalidParameter(format!("discriminant not monic: leading coefficient {lead}")))
    }
}

/// `p_B` with the default budget.
pub fn hl_bifurcation(l: &ExponentVector) -> Result<IntPoly> {
    hl_bifurcation_with_budget(l, DEFAULT_MAX_MU_BIFURCATION)
}

/// Primitive part of `Res_z(p_Δ, ∂_z p_Δ)`, with positive graded-lex leading coefficient.
pub fn hl_bifurcation_with_budget(l: &ExponentVector, max_mu: usize) -> Result<IntPoly> {
    if l.mu() < 2 {
        return Err(Error::InvalidParameter("bifurcation polynomial needs mu >= 2".into()));
    }
    if l.mu() > max_mu {
        return Err(Error::ResourceExceeded(format!("bifurcation for mu = {} exceeds budget {max_mu}", l.mu())));
    }
    let pd = hl_discriminant_with_budget(l, usize::MAX)?;
    let zi = l.n();
    let r = resultant(&pd, &pd.derivative(zi), zi)?.drop_var(zi)?;
    let mut g = r.content();
    if r.leading_grlex_coeff().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    r.div_exact(&r.constant_like(g))
}

/// Largest `k` with `var^k` dividing `p`.
pub fn vanishing_order(p: &IntPoly, var: usize) -> Result<u32> {
    p.terms.keys().map(|e| e[var]).min().ok_or(Error::ZeroPolynomial)
}

/// Coefficient of the highest power of `var`.
pub fn leading_coefficient(p: &IntPoly, var: usize) -> Result<IntPoly> {
    let d = p.degree_in(var).ok_or(Error::ZeroPolynomial)?;
    Ok(p.coeff_in(var, d))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub deg_z: Option<u32>,
    pub total_degree: u32,
    /// Degree in each variable, in variable order.
    pub per_var_degrees: Vec<(String, u32)>,
    /// Order of vanishing along each `α_i = 0`.
    pub vanishing_orders: Vec<(String, u32)>,
    pub content: BigInt,
}

impl DegreeReport {
    pub fn to_json(&self) -> Value {
        json!({
            "deg_z": self.deg_z,
            "total_degree": self.total_degree,
            "per_var_degrees": self.per_var_degrees.iter().map(|(v, d)| json!([v, d])).collect::<Vec<_>>(),
            "vanishing_orders": self.vanishing_orders.iter().map(|(v, d)| json!([v, d])).collect::<Vec<_>>(),
            "content": self.content.to_string(),
        })
    }
}

pub fn degree_report(p: &IntPoly, l: &ExponentVector) -> Result<DegreeReport> {
    let total_degree = p.total_degree().ok_or(Error::ZeroPolynomial)?;
    let deg_z = p.var_index("z").and_then(|k| p.degree_in(k));
    let per_var_degrees = p.vars.iter().enumerate().map(|(k, v)| (v.clone(), p.degree_in(k).unwrap_or(0))).collect();
    let vanishing_orders =
        (0..l.n().min(p.vars.len())).map(|k| Ok((p.vars[k].clone(), vanishing_order(p, k)?))).collect::<Result<_>>()?;
    Ok(DegreeReport { deg_z, total_degree, per_var_degrees, vanishing_orders, content: p.content() })
}

/// `μ · Σ_i ((l_i² − 1)/l_i) ∏_{j>i} l_j`, the predicted total degree of `p_B`.
pub fn expected_bifurcation_degree(l: &ExponentVector) -> u64 {
    let mu = l.mu() as u64;
    let ls = l.as_slice();
    (0..ls.len())
        .map(|i| {
            let li = ls[i] as u64;
            let tail: u64 = ls[i + 1..].iter().map(|&x| x as u64).product();
            (mu / li) * (li * li - 1) * tail
        })
        .sum()
}

/// Predicted vanishing order `(l_i² − 1) μ / l_i` of `p_B` along `α_i = 0`.
pub fn expected_vanishing_order(l: &ExponentVector, i: usize) -> u64 {
    let li = l.as_slice()[i] as u64;
    (li * li - 1) * (l.mu() as u64 / li)
}

/// Equality up to a nonzero rational constant.
pub fn equal_up_to_unit(p: &IntPoly, q: &IntPoly) -> bool {
    if p.vars != q.vars || p.terms.len() != q.terms.len() {
        return false;
    }
    let Some(((e1, c1), (e2, c2))) = p.terms.iter().next().zip(q.terms.iter().next()) else {
        return p.is_zero() && q.is_zero();
    };
    if e1 != e2 {
        return false;
    }
    // p·c2 == q·c1
    p.scale(c2) == q.scale(c1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(v: &[u32]) -> ExponentVector {
        ExponentVector::new(v.to_vec()).unwrap()
    }

    #[test]
    fn arithmetic_and_display() {
        let v = ["x", "y"];
        let x = IntPoly::var(&v, 0);
        let y = IntPoly::var(&v, 1);
        let p = x.add(&y).pow(2);
        assert_eq!(p.to_string(), "y^2 + 2*x*y + x^2");
        assert_eq!(p.div_exact(&x.add(&y)).unwrap(), x.add(&y));
        assert!(p.div_exact(&x).is_err());
        assert_eq!(p.derivative(0).to_string(), "2*y + 2*x");
        assert_eq!(p.substitute(1, &x.neg()), IntPoly::zero(&v));
        assert_eq!(IntPoly::zero(&v).to_string(), "0");
    }

    #[test]
    fn resultant_examples() {
        let v = ["x", "y"];
        let x = IntPoly::var(&v, 0);
        let y = IntPoly::var(&v, 1);
        let one = IntPoly::constant(&v, 1);
        let r = resultant(&y.pow(2).sub(&x), &y.sub(&one), 1).unwrap();
        assert_eq!(r, one.sub(&x));
        // constant second argument: c^deg
        let c = IntPoly::constant(&v, 3);
        assert_eq!(resultant(&y.pow(4).add(&x), &c, 1).unwrap(), IntPoly::constant(&v, 81));
        assert_eq!(resultant(&IntPoly::zero(&v), &y, 1), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn resultant_antisymmetry() {
        let v = ["x", "y"];
        let x = IntPoly::var(&v, 0);
        let y = IntPoly::var(&v, 1);
        let p = y.pow(3).add(&x.mul(&y)).add(&IntPoly::constant(&v, 2));
        let q = y.pow(2).sub(&x.pow(2));
        let r1 = resultant(&p, &q, 1).unwrap();
        let r2 = resultant(&q, &p, 1).unwrap();
        assert_eq!(r1, r2); // (−1)^{3·2} = 1
        let q1 = y.sub(&x);
        assert_eq!(resultant(&p, &q1, 1).unwrap(), resultant(&q1, &p, 1).unwrap().neg());
    }

    #[test]
    fn cubic_resultant() {
        let v = ["p", "q", "y"];
        let (p, q, y) = (IntPoly::var(&v, 0), IntPoly::var(&v, 1), IntPoly::var(&v, 2));
        let three = BigInt::from(3);
        let f = y.pow(3).sub(&p.mul(&y).scale(&three)).add(&q.scale(&BigInt::from(2)));
        let r = resultant(&f, &f.derivative(2), 2).unwrap();
        let expect = p.pow(3).sub(&q.pow(2)).scale(&BigInt::from(-108));
        assert_eq!(r, expect);
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(hl_discriminant(&ev(&[1])).unwrap().to_string(), "z - a1^2");
        assert_eq!(hl_discriminant(&ev(&[2])).unwrap().to_string(), "z^2 - 4*a1^3");
        assert_eq!(hl_discriminant(&ev(&[3])).unwrap().to_string(), "z^3 - 27*a1^4");
        let d = hl_discriminant(&ev(&[2, 3])).unwrap();
        assert_eq!(d.degree_in(2), Some(6));
        assert!(matches!(hl_discriminant(&ev(&[4, 4])), Err(Error::ResourceExceeded(_))));
    }

    #[test]
    fn small_bifurcations() {
        assert_eq!(hl_bifurcation(&ev(&[2])).unwrap().to_string(), "a1^3");
        assert_eq!(hl_bifurcation(&ev(&[3])).unwrap().to_string(), "a1^8");
        assert!(hl_bifurcation(&ev(&[1])).is_err());
        assert!(matches!(hl_bifurcation(&ev(&[3, 3])), Err(Error::ResourceExceeded(_))));
    }

    #[test]
    fn report_and_lc() {
        let v = ["a1", "a2"];
        let p = IntPoly::from_terms(&v, &[(vec![1, 2], 3), (vec![0, 2], 1)]).unwrap();
        assert_eq!(leading_coefficient(&p, 1).unwrap().to_string(), "3*a1 + 1");
        let q = IntPoly::from_terms(&["a1", "z"], &[(vec![0, 2], 1), (vec![3, 0], -4)]).unwrap();
        assert_eq!(vanishing_order(&q, 0).unwrap(), 0);
        assert_eq!(leading_coefficient(&q, 1).unwrap(), q.constant_like(1));
        let r = degree_report(&q, &ev(&[2])).unwrap();
        assert_eq!((r.deg_z, r.total_degree), (Some(2), 3));
        assert_eq!(expected_bifurcation_degree(&ev(&[2, 2])), 18);
        assert_eq!(expected_bifurcation_degree(&ev(&[2, 3])), 43);
        assert_eq!(expected_vanishing_order(&ev(&[2, 3]), 0), 9);
    }
}
