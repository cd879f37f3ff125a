use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn vtsynth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_vtsynth"))
        .args(args)
        .output()
        .expect("spawn vtsynth")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

struct Fixture {
    dir: tempfile::TempDir,
}

impl Fixture {
    fn new() -> Self {
        Fixture {
            dir: tempfile::tempdir().unwrap(),
        }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.dir.path().join(name)
    }

    fn encode(&self, code: &[&str], payload: &[u8], bits: Option<usize>) -> String {
        let input = self.path("in.bin");
        fs::write(&input, payload).unwrap();
        if let Some(b) = bits {
            fs::write(self.path("in.bin.bits"), format!("bits={b}\n")).unwrap();
        }
        let out = self.path("strand.dna");
        let mut args = vec!["encode"];
        args.extend_from_slice(code);
        args.extend(["--in", p(&input), "--out", p(&out)]);
        let r = vtsynth(&args);
        assert!(r.status.success(), "{}", String::from_utf8_lossy(&r.stderr));
        fs::read_to_string(out).unwrap()
    }

    fn decode(&self, code: &[&str], dna: &str) -> (Option<i32>, Vec<u8>) {
        let input = self.path("rx.dna");
        fs::write(&input, dna).unwrap();
        let _ = fs::remove_file(self.path("rx.dna.bits"));
        fs::copy(self.path("strand.dna.bits"), self.path("rx.dna.bits")).ok();
        let out = self.path("out.bin");
        let _ = fs::remove_file(&out);
        let mut args = vec!["decode"];
        args.extend_from_slice(code);
        args.extend(["--in", p(&input), "--out", p(&out)]);
        let r = vtsynth(&args);
        (r.status.code(), fs::read(&out).unwrap_or_default())
    }
}

fn synthesis_time(dna: &str) -> u64 {
    let w = vtsynth::Word::from_dna(dna.trim()).unwrap();
    vtsynth::word::synthesis_time(&w)
}

#[test]
fn family_b_zero_payload() {
    let f = Fixture::new();
    let code = ["--family", "B", "--n", "20"];
    let dna = f.encode(&code, &[0, 0, 0], Some(22));
    assert!(dna.ends_with('\n'));
    assert_eq!(dna.trim().len(), 20);
    assert!(dna.trim().chars().all(|c| "ACGT".contains(c)));
    assert!(synthesis_time(&dna) <= 50);
    assert_eq!(
        fs::read_to_string(f.path("strand.dna.bits")).unwrap(),
        "bits=22\n"
    );
    assert_eq!(f.decode(&code, &dna), (Some(0), vec![0, 0, 0]));
}

#[test]
fn every_deletion_and_insertion_decodes() {
    let f = Fixture::new();
    let cases: [(&[&str], &[u8], usize); 4] = [
        (
            &["--family", "C", "--n", "8", "--T", "20"],
            &[0b1011_0100],
            6,
        ),
        (
            &["--family", "A", "--n", "32", "--T", "96"],
            &[0xA5, 0x3C],
            16,
        ),
        (&["--family", "B", "--n", "20"], &[0xFF, 0x01, 0x80], 21),
        (&["--family", "H", "--n", "12"], &[0x5A, 0x20], 14),
    ];
    for (code, payload, bits) in cases {
        let dna = f.encode(code, payload, Some(bits));
        let strand = dna.trim().to_string();
        let mask = |b: &[u8]| {
            let mut v = b.to_vec();
            if bits % 8 != 0 {
                let last = v.len() - 1;
                v[last] &= 0xFFu8 << (8 - bits % 8);
            }
            v
        };
        let want = mask(payload);
        for i in 0..strand.len() {
            let mut y = strand.clone();
            y.remove(i);
            let (status, got) = f.decode(code, &format!("{y}\n"));
            assert_eq!(
                (status, got),
                (Some(0), want.clone()),
                "{code:?} deletion at {i}"
            );
        }
        for i in [0, strand.len() / 2, strand.len()] {
            for ch in ['A', 'C', 'G', 'T'] {
                let mut y = strand.clone();
                y.insert(i, ch);
                let (status, got) = f.decode(code, &y);
                assert_eq!(
                    (status, got),
                    (Some(0), want.clone()),
                    "{code:?} insertion at {i}"
                );
            }
        }
    }
}

#[test]
fn validation_errors_exit_with_two() {
    let f = Fixture::new();
    fs::write(f.path("in.bin"), [0u8; 2]).unwrap();
    let input = f.path("in.bin");
    let r = vtsynth(&[
        "encode",
        "--family",
        "B",
        "--n",
        "20",
        "--T",
        "40",
        "--in",
        p(&input),
    ]);
    assert_eq!(r.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&r.stderr).contains("2.5n"));

    let r = vtsynth(&[
        "encode",
        "--family",
        "C",
        "--n",
        "8",
        "--T",
        "20",
        "--in",
        p(&input),
    ]);
    assert_eq!(r.status.code(), Some(2), "16 bits exceed the payload");
    assert!(String::from_utf8_lossy(&r.stderr).contains("capacity"));

    fs::write(f.path("bad.dna"), "ACGN\n").unwrap();
    let bad = f.path("bad.dna");
    let r = vtsynth(&[
        "decode",
        "--family",
        "C",
        "--n",
        "8",
        "--T",
        "20",
        "--in",
        p(&bad),
    ]);
    assert_eq!(r.status.code(), Some(2));

    let r = vtsynth(&["rates", "--n", "127", "--gamma", "0.9"]);
    assert_eq!(r.status.code(), Some(2));
    let r = vtsynth(&[
        "encode",
        "--family",
        "A",
        "--n",
        "32",
        "--T",
        "96",
        "--gamma",
        "3",
        "--in",
        p(&input),
    ]);
    assert_eq!(r.status.code(), Some(2));
}

#[test]
fn undecodable_strand_exits_nonzero() {
    let f = Fixture::new();
    let code = ["--family", "B", "--n", "20"];
    let dna = f.encode(&code, &[0x12, 0x34, 0x56], Some(24));
    let strand = dna.trim();
    // A substitution is not a single indel and fails re-encoding.
    let swapped = if strand.starts_with('A') { "C" } else { "A" };
    let (status, _) = f.decode(&code, &format!("{swapped}{}", &strand[1..]));
    assert_eq!(status, Some(1));
    // Length n - 2 is outside every ball.
    let (status, _) = f.decode(&code, &strand[..strand.len() - 2]);
    assert_eq!(status, Some(2));
}

#[test]
fn rates_table_is_deterministic() {
    let a = vtsynth(&["rates", "--n", "127"]);
    let b = vtsynth(&["rates", "--n", "127"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    let row = text.lines().find(|l| l.starts_with("3.5,")).unwrap();
    let cols: Vec<&str> = row.split(',').collect();
    assert_eq!(&cols[..5], &["3.5", "444", "0.527", "0.532", "0.552"]);
    let row = text.lines().find(|l| l.starts_with("1.5,")).unwrap();
    assert_eq!(row.split(',').nth(3), Some(""));

    let json = vtsynth(&["rates", "--n", "127", "--gamma", "2.7", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(v[0]["rate_b"]["num"], "118");
    assert_eq!(v[0]["rate_b"]["den"], "171");
}

#[test]
fn capacity_curve_output() {
    let r = vtsynth(&["capacity", "--n", "127"]);
    assert!(r.status.success());
    let text = String::from_utf8(r.stdout).unwrap();
    let rows: Vec<(String, f64)> = text
        .lines()
        .skip(1)
        .map(|l| {
            let (g, v) = l.split_once(',').unwrap();
            (g.to_string(), v.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 60);
    assert_eq!(rows.last().unwrap(), &("4".to_string(), 0.5));
    let two = rows.iter().find(|r| r.0 == "2").unwrap().1;
    assert!((0.90..=0.96).contains(&two));
    let values: Vec<f64> = rows.iter().map(|r| r.1).collect();
    assert!(vtsynth::rates::is_unimodal(&values));
}

#[test]
fn verify_command() {
    let r = vtsynth(&["verify", "--family", "H", "--n", "12"]);
    assert_eq!(r.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&r.stdout).contains("failures=0"));
    let f = Fixture::new();
    let report = f.path("report.jsonl");
    let r = vtsynth(&[
        "verify",
        "--family",
        "B",
        "--n",
        "20",
        "--budget",
        "500",
        "--seed",
        "4",
        "--report",
        p(&report),
    ]);
    assert_eq!(r.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&report).unwrap(), "");
    let r = vtsynth(&["verify", "--family", "C", "--n", "8", "--T", "20"]);
    assert_eq!(r.status.code(), Some(0));
}
