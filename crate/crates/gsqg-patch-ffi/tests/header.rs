//! Compiles and runs a C program against the generated header and the static library.

use std::path::PathBuf;
use std::process::Command;

const PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include <string.h>
#include "gsqg_patch.h"

int main(void) {
    double w = 0.0;
    if (gsqg_w_star(1.0, 1.0, &w) != GSQG_STATUS_OK || w != 0.125) return 1;
    if (gsqg_omega_star(3.0, 1.0, 2, &w) != GSQG_STATUS_DOMAIN) return 2;
    if (strlen(gsqg_last_error_message()) == 0) return 3;
    GsqgMultipliers *t = NULL;
    if (gsqg_multipliers_new(1.0, 4, &t) != GSQG_STATUS_OK) return 4;
    double b = 0.0;
    gsqg_multipliers_beta(t, 1, &b);
    gsqg_multipliers_free(t);
    if (fabs(b - 8.0) > 1e-12) return 5;
    GsqgSolverConfig cfg = gsqg_solver_config_default();
    if (cfg.j < 2 || !cfg.corrected) return 6;
    puts("ok");
    return 0;
}
"#;

#[test]
fn c_program_links_against_header() {
    let manifest = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let header = manifest.join("include/gsqg_patch.h");
    assert!(header.exists());
    // the integration test binary lives in <target>/<profile>/deps
    let exe = std::env::current_exe().unwrap();
    let profile_dir = exe.parent().unwrap().parent().unwrap();
    let lib = profile_dir.join("libgsqg_patch_ffi.a");
    if !lib.exists() {
        eprintln!("static library not found at {}; skipping link", lib.display());
        return;
    }
    let tmp = tempfile::tempdir().unwrap();
    let src = tmp.path().join("main.c");
    let bin = tmp.path().join("main");
    std::fs::write(&src, PROGRAM).unwrap();
    let status = Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-I"])
        .arg(manifest.join("include"))
        .arg(&src)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&bin)
        .status()
        .expect("C compiler");
    assert!(status.success());
    let out = Command::new(&bin).output().unwrap();
    assert!(out.status.success(), "exit {:?}", out.status.code());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "ok");
}
