mod common;

use common::{run_property, PROPERTIES};

fn run(name_prefix: &str) {
    let mut ran = 0;
    for (i, p) in PROPERTIES.iter().enumerate().filter(|(_, p)| p.name.starts_with(name_prefix)) {
        run_property(p, i as u8).unwrap();
        ran += 1;
    }
    assert!(ran > 0, "no property named {name_prefix}*");
}

#[test]
fn scalars_properties() {
    run("scalars:");
}

#[test]
fn unipoly_properties() {
    run("unipoly:");
}

#[test]
fn multipoly_properties() {
    run("multipoly:");
}

#[test]
fn symtensor_properties() {
    run("symtensor:");
}

#[test]
fn exactlinalg_properties() {
    run("exactlinalg:");
}

#[test]
fn center_properties() {
    run("center:");
}

#[test]
fn decompose_properties() {
    run("decompose:");
}

#[test]
fn jacobian_properties() {
    run("jacobian:");
}
