//! Compiles a small C program against the generated header and, when the
//! static library is present, links and runs it. Skipped without a C
//! compiler.

use std::path::{Path, PathBuf};
use std::process::Command;

const PROGRAM: &str = r#"
#include <stdio.h>
#include <string.h>
#include "tautrel.h"

int main(void) {
    TautrelTables *t = NULL;
    if (tautrel_tables_new(6, &t) != TAUTREL_STATUS_OK) return 10;
    char *s = NULL;
    if (tautrel_relation_json(t, 4, 2, 1, false, &s) != TAUTREL_STATUS_OK) return 11;
    const char *want = "{\"g\":4,\"d\":2,\"b\":1,\"degree\":2,\"terms\":"
        "[{\"monomial\":{\"1\":2},\"coeff\":\"15/4\"},{\"monomial\":{\"2\":1},\"coeff\":\"-40\"}]}";
    int bad = strcmp(s, want) != 0;
    tautrel_string_free(s);
    if (tautrel_relation_json(t, 4, 3, 0, false, &s) != TAUTREL_STATUS_INVALID_ARGUMENT) return 12;
    if (tautrel_last_error() == NULL) return 13;
    tautrel_tables_free(t);
    return bad;
}
"#;

fn compiler() -> Option<String> {
    let cc = std::env::var("CC").unwrap_or_else(|_| "cc".into());
    Command::new(&cc).arg("--version").output().ok()?.status.success().then_some(cc)
}

fn static_lib() -> Option<PathBuf> {
    let manifest = Path::new(env!("CARGO_MANIFEST_DIR"));
    let target = std::env::var_os("CARGO_TARGET_DIR")
        .map(PathBuf::from)
        .unwrap_or_else(|| manifest.join("../../target"));
    let lib = target.join("debug/libtautrel_ffi.a");
    lib.exists().then_some(lib)
}

#[test]
fn c_program_against_header() {
    let Some(cc) = compiler() else {
        eprintln!("no C compiler; skipped");
        return;
    };
    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("main.c");
    std::fs::write(&src, PROGRAM).unwrap();
    let include = Path::new(env!("CARGO_MANIFEST_DIR")).join("include");

    let syntax = Command::new(&cc)
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(&include)
        .arg(&src)
        .status()
        .unwrap();
    assert!(syntax.success(), "header does not compile as C99");

    let Some(lib) = static_lib() else {
        eprintln!("static library not found; link step skipped");
        return;
    };
    let exe = dir.path().join("main");
    let link = Command::new(&cc)
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lpthread", "-ldl", "-lm", "-o"])
        .arg(&exe)
        .status()
        .unwrap();
    assert!(link.success(), "linking against {} failed", lib.display());
    let run = Command::new(&exe).status().unwrap();
    assert_eq!(run.code(), Some(0), "C program reported a mismatch");
}
