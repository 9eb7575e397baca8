//! End-to-end checks of the `scrawl` binary: subcommands, file formats, and
//! exit codes (0 success, 1 i/o error, 2 invalid config/manifest,
//! 3 degenerate image).

use std::path::Path;
use std::process::Command;

use scrawl::imaging::{save_binary_image, BinaryImage};
use scrawl::synth::{synthetic_store, write_store_manifest};

fn scrawl_bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_scrawl"))
}

fn setup_store(dir: &Path) -> std::path::PathBuf {
    write_store_manifest(&synthetic_store(9), &dir.join("store")).unwrap()
}

#[test]
fn render_then_recognize_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = setup_store(dir.path());
    let page = dir.path().join("page.png");
    let out = dir.path().join("out.txt");

    let status = scrawl_bin()
        .args(["render", "--text", "Hi 42\nok go"])
        .arg("--templates")
        .arg(&manifest)
        .arg("--output")
        .arg(&page)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));

    let status = scrawl_bin()
        .arg("recognize")
        .arg("--input")
        .arg(&page)
        .arg("--templates")
        .arg(&manifest)
        .arg("--output")
        .arg(&out)
        .args(["--min-component", "15", "--space-ratio", "0.75", "--connectivity", "8"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "Hi 42\nok go\n");
}

#[test]
fn recognize_blank_bmp_page_writes_empty_file() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = setup_store(dir.path());
    let page = dir.path().join("blank.bmp");
    let out = dir.path().join("out.txt");
    save_binary_image(&BinaryImage::zeros(50, 40), &page).unwrap();

    let status = scrawl_bin()
        .arg("recognize")
        .arg("--input")
        .arg(&page)
        .arg("--templates")
        .arg(&manifest)
        .arg("--output")
        .arg(&out)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    assert_eq!(std::fs::read_to_string(&out).unwrap(), "");
}

#[test]
fn missing_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = setup_store(dir.path());
    let status = scrawl_bin()
        .arg("recognize")
        .arg("--input")
        .arg(dir.path().join("nope.png"))
        .arg("--templates")
        .arg(&manifest)
        .arg("--output")
        .arg(dir.path().join("out.txt"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn incomplete_manifest_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = setup_store(dir.path());
    let kept: String = std::fs::read_to_string(&manifest)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with("Q\t"))
        .map(|l| format!("{l}\n"))
        .collect();
    std::fs::write(&manifest, kept).unwrap();

    let page = dir.path().join("page.png");
    save_binary_image(&BinaryImage::zeros(50, 40), &page).unwrap();
    let output = scrawl_bin()
        .arg("recognize")
        .arg("--input")
        .arg(&page)
        .arg("--templates")
        .arg(&manifest)
        .arg("--output")
        .arg(dir.path().join("out.txt"))
        .output()
        .unwrap();
    assert_eq!(output.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&output.stderr).contains('Q'));
}

#[test]
fn bad_connectivity_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = setup_store(dir.path());
    let page = dir.path().join("page.png");
    save_binary_image(&BinaryImage::zeros(10, 10), &page).unwrap();
    let status = scrawl_bin()
        .arg("recognize")
        .arg("--input")
        .arg(&page)
        .arg("--templates")
        .arg(&manifest)
        .arg("--output")
        .arg(dir.path().join("out.txt"))
        .args(["--connectivity", "6"])
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn render_rejects_unknown_character_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let manifest = setup_store(dir.path());
    let status = scrawl_bin()
        .args(["render", "--text", "a!b"])
        .arg("--templates")
        .arg(&manifest)
        .arg("--output")
        .arg(dir.path().join("page.png"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}
