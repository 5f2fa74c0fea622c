//! Generates `include/cr_noma.h` from the exported items of this crate.

fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").expect("CARGO_MANIFEST_DIR");

    let mut config = cbindgen::Config::default();
    config.language = cbindgen::Language::C;
    config.cpp_compat = true;
    config.include_guard = Some("CR_NOMA_H".into());
    config.header = Some(
        "/* C interface to the cr-noma cognitive-radio NOMA toolkit.\n\
         * Generated by cbindgen; do not edit by hand. */"
            .into(),
    );
    // Keep enum constants out of the global namespace: CrnStatus_Ok, not Ok.
    config.enumeration.prefix_with_name = true;

    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("cbindgen failed to generate the C header")
        .write_to_file(format!("{crate_dir}/include/cr_noma.h"));

    println!("cargo:rerun-if-changed=src/lib.rs");
}
