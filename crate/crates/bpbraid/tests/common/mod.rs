#![allow(dead_code)]

use bpbraid::poly::IntPoly;
use bpbraid::{BraidWord, ExponentVector};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use rand::Rng;

pub fn ev(s: &str) -> ExponentVector {
    ExponentVector::parse(s).unwrap()
}

pub fn random_braid<R: Rng>(rng: &mut R, strands: usize, len: usize) -> BraidWord {
    let letters = (0..len)
        .map(|_| {
            let i = rng.gen_range(1..strands as i32);
            if rng.gen_bool(0.5) {
                i
            } else {
                -i
            }
        })
        .collect();
    BraidWord::new(strands, letters).unwrap()
}

/// Coefficients (lowest degree first) of `p(α, z)` as a polynomial in its last variable.
fn specialize(p: &IntPoly, alpha: &[Complex64]) -> Vec<Complex64> {
    let zi = p.vars().len() - 1;
    let deg = p.degree_in(zi).unwrap_or(0) as usize;
    let mut c = vec![Complex64::new(0.0, 0.0); deg + 1];
    for (e, k) in p.terms() {
        let mut t = Complex64::new(k.to_f64().unwrap(), 0.0);
        for (a, &d) in alpha.iter().zip(e) {
            t *= a.powu(d);
        }
        c[e[zi] as usize] += t;
    }
    c
}

fn horner(c: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let (mut v, mut dv) = (Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0));
    for &a in c.iter().rev() {
        dv = dv * z + v;
        v = v * z + a;
    }
    (v, dv)
}

/// All complex roots by Aberth iteration followed by Newton polishing.
pub fn poly_roots(c: &[Complex64]) -> Vec<Complex64> {
    let n = c.len() - 1;
    let lead = c[n];
    let c: Vec<Complex64> = c.iter().map(|x| x / lead).collect();
    let radius = 1.0 + c[..n].iter().map(|x| x.norm()).fold(0.0, f64::max);
    let mut z: Vec<Complex64> =
        (0..n).map(|k| Complex64::from_polar(radius * 0.5, 0.4 + 2.0 * std::f64::consts::PI * k as f64 / n as f64)).collect();
    for _ in 0..500 {
        let mut moved = 0.0f64;
        for k in 0..n {
            let (v, dv) = horner(&c, z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let ratio = v / dv;
            let s: Complex64 = (0..n).filter(|&m| m != k).map(|m| 1.0 / (z[k] - z[m])).sum();
            let step = ratio / (1.0 - ratio * s);
            z[k] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 * radius {
            break;
        }
    }
    for r in z.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = horner(&c, *r);
            if dv.norm() > 0.0 {
                *r -= v / dv;
            }
        }
    }
    z
}

/// Critical values `Σ (x_i^{l_i+1} − (l_i+1) α_i x_i)` over all `x_i^{l_i} = α_i`.
pub fn critical_values(l: &ExponentVector, alpha: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0)];
    for (&li, &a) in l.as_slice().iter().zip(alpha) {
        let r = a.powf(1.0 / li as f64);
        let mut next = Vec::new();
        for base in &out {
            for k in 0..li {
                let x = r * Complex64::from_polar(1.0, 2.0 * std::f64::consts::PI * k as f64 / li as f64);
                next.push(base + x.powu(li + 1) - (li as f64 + 1.0) * a * x);
            }
        }
        out = next;
    }
    out
}

/// Largest relative distance between the z-roots of `p_Δ(α, ·)` and the negated critical
/// values, matched greedily by nearest neighbour.
pub fn root_mismatch(p: &IntPoly, l: &ExponentVector, alpha: &[Complex64]) -> f64 {
    let mut roots = poly_roots(&specialize(p, alpha));
    let cvs = critical_values(l, alpha);
    assert_eq!(roots.len(), cvs.len());
    let scale = cvs.iter().map(|c| c.norm()).fold(1.0, f64::max);
    let mut worst = 0.0f64;
    for cv in cvs {
        let target = -cv;
        let (k, d) = roots.iter().enumerate().map(|(k, r)| (k, (r - target).norm())).min_by(|a, b| a.1.total_cmp(&b.1)).unwrap();
        roots.swap_remove(k);
        worst = worst.max(d / scale);
    }
    worst
}

pub fn random_alpha<R: Rng>(rng: &mut R, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))).collect()
}
