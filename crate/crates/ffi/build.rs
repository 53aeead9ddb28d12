fn main() {
    let crate_dir = std::env::var("CARGO_MANIFEST_DIR").unwrap();
    let mut config = cbindgen::Config {
        language: cbindgen::Language::C,
        include_guard: Some("AHOCH_H".to_string()),
        documentation: true,
        cpp_compat: true,
        ..Default::default()
    };
    config.enumeration.prefix_with_name = true;
    cbindgen::Builder::new()
        .with_crate(&crate_dir)
        .with_config(config)
        .generate()
        .expect("unable to generate the C header")
        .write_to_file(format!("{crate_dir}/include/ahoch.h"));
    println!("cargo:rerun-if-changed=src/lib.rs");
}
