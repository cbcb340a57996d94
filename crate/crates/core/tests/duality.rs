//! Enumeration and membership duality on three grammars.

mod support {
    pub mod duality;
}

use support::duality::duality;

#[test]
fn lia_example() {
    let (listed, accepted) = duality("examples/ex01_lia.sy");
    assert!(listed >= accepted);
}

#[test]
fn datatype_example() {
    let (listed, accepted) = duality("examples/ex02_dtlia.sy");
    assert!(listed >= accepted);
}

#[test]
fn lia_reference_grammar() {
    let (listed, accepted) = duality("reference/lia.sy");
    assert!(listed >= accepted);
}
