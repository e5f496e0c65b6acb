use std::path::Path;
use std::process::Command;

const HEADER: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/include/hychroma.h");

#[test]
fn header_declares_the_api() {
    let text = std::fs::read_to_string(HEADER).expect("build script writes the header");
    for name in [
        "typedef struct HcCertificate HcCertificate;",
        "HC_STATUS_OK = 0",
        "HC_STATUS_VIOLATION = 1",
        "hc_construct_preparata",
        "hc_construct_parity",
        "hc_construct_forbidden_greedy",
        "hc_certificate_parse",
        "hc_certificate_to_string",
        "hc_certificate_free",
        "hc_string_free",
        "hc_verify",
        "hc_last_error",
        "hc_kdp_upper",
    ] {
        assert!(text.contains(name), "header lacks {name}");
    }
}

#[test]
fn header_compiles_as_c() {
    let Ok(cc) = which_cc() else { return };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("use.c");
    std::fs::write(
        &src,
        "#include \"hychroma.h\"\nint main(void) { HcCertificate *c = 0; (void)c; return HC_STATUS_OK; }\n",
    )
    .unwrap();
    let include = Path::new(HEADER).parent().unwrap();
    let status = Command::new(cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(include)
        .arg(&src)
        .status()
        .unwrap();
    assert!(status.success());
}

fn which_cc() -> Result<&'static str, ()> {
    ["cc", "clang", "gcc"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
        .ok_or(())
}
