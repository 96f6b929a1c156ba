use bpbraid_wasm::{dynkin_dot, hl_disc, word_eq};

#[test]
fn dynkin() {
    let dot = dynkin_dot("2,2");
    assert!(dot.starts_with("graph dynkin {"));
    assert_eq!(dot.matches(" -- ").count(), 5);
    assert!(dynkin_dot("2,a").starts_with("error:"));
}

#[test]
fn words() {
    assert_eq!(word_eq(3, "s1 s2 s1", "s2 s1 s2"), "equal");
    assert_eq!(word_eq(3, "s1 s2", "s2 s1"), "different");
    assert!(word_eq(2, "s2", "s1").starts_with("error:"));
}

#[test]
fn discriminant() {
    assert_eq!(hl_disc("2"), "z^2 - 4*a1^3");
    assert!(hl_disc("3,3").contains("resource budget exceeded"));
}
