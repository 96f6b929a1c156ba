//! Browser bindings for three operations: Dynkin diagrams, braid word equality and
//! discriminant polynomials. Every entry point returns a display string; errors come back
//! as `error: …` text so the page never has to catch exceptions.

use bpbraid::multiindex::build_dynkin;
use bpbraid::poly::hl_discriminant_with_budget;
use bpbraid::{braids_equal, BraidWord, ExponentVector};
use wasm_bindgen::prelude::*;

/// Keeps the page responsive: p_Δ for μ = 8 already has dozens of terms.
const PAGE_MAX_MU: usize = 8;

fn report<T: std::fmt::Display>(r: bpbraid::Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// DOT text of the Dynkin diagram of an exponent vector such as `2,3`.
#[wasm_bindgen]
pub fn dynkin_dot(exponents: &str) -> String {
    report(ExponentVector::parse(exponents).map(|l| build_dynkin(&l).to_dot()))
}

/// `equal` or `different`.
#[wasm_bindgen]
pub fn word_eq(strands: usize, a: &str, b: &str) -> String {
    report((|| {
        let eq = braids_equal(&BraidWord::parse(strands, a)?, &BraidWord::parse(strands, b)?)?;
        Ok(if eq { "equal" } else { "different" })
    })())
}

#[wasm_bindgen]
pub fn hl_disc(exponents: &str) -> String {
    report(ExponentVector::parse(exponents).and_then(|l| hl_discriminant_with_budget(&l, PAGE_MAX_MU)))
}
