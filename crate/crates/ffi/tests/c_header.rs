//! Compiles and runs a small C program against the generated header and the
//! static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "cfsl2.h"

int main(void) {
    Cfsl2Expansion *h = NULL;
    if (cfsl2_expand(1, "sqrt(2)", 8, &h) != CFSL2_STATUS_OK) return 10;
    int64_t pa, pb, qa, qb;
    if (cfsl2_expansion_convergent(h, 7, &pa, &pb, &qa, &qb) != CFSL2_STATUS_OK) return 11;
    cfsl2_expansion_free(h);
    Cfsl2Expansion *bad = NULL;
    if (cfsl2_expand(7, "sqrt(", 8, &bad) != CFSL2_STATUS_PARSE) return 12;
    if (strlen(cfsl2_last_error()) == 0) return 13;
    printf("%lld/%lld\n", (long long)pa, (long long)qa);
    return 0;
}
"#;

fn target_dir() -> PathBuf {
    // <target>/<profile>/deps/<this test>
    let exe = std::env::current_exe().unwrap();
    exe.parent().unwrap().parent().unwrap().to_path_buf()
}

#[test]
fn c_program_links_and_runs() {
    let lib = target_dir().join("libcfsl2_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("smoke.c");
    let bin = dir.path().join("smoke");
    std::fs::write(&src, PROGRAM).unwrap();
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    let status = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&bin)
        .status()
        .expect("run the C compiler");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    // the seventh convergent of sqrt(2)
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "577/408\n");
}
