//! Acceptance suite. Each test prints one `criterion N ... PASS|FAIL` line
//! to the real stdout, bypassing the harness capture.

use std::collections::BTreeSet;
use std::io::Write;
use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use absnum::padded::{pad, shift, validate_padded};
use absnum::{
    compile, decompose_unary, frobenius_bound, residue_set, verify, y_decompose, Alphabet, Ans,
    Axes, Dfa, Error, Level, NfUnion, NormalForm, OrderedAlphabet, PaddedRelation, Word, YSet,
};
use absnum_cli::oracle::{box_tuples, frobenius_by_table, normal_form_points, radix_enumerate};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

const FLEET: [&str; 4] = ["unary.aut", "ab.aut", "bin.aut", "astarbstar.aut"];

fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fixtures")
        .join(name)
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap()
}

fn fleet() -> Vec<(&'static str, Ans, Dfa)> {
    FLEET
        .iter()
        .map(|&name| {
            let text = fixture(name);
            (name, Ans::parse(&text).unwrap(), Dfa::parse(&text).unwrap())
        })
        .collect()
}

fn criterion(number: u32, title: &str, limit: Duration, body: impl FnOnce()) {
    let start = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(body));
    let elapsed = start.elapsed();
    let pass = outcome.is_ok() && elapsed <= limit;
    let line = format!(
        "criterion {number} {title}: {} ({:.2}s, limit {}s)\n",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    let _ = std::io::stdout().lock().write_all(line.as_bytes());
    if let Err(panic) = outcome {
        resume_unwind(panic);
    }
    assert!(elapsed <= limit, "criterion {number} took {elapsed:?}");
}

/// Random normal-form union with dimension ≤ 4 and constants ≤ 7.
fn random_union(rng: &mut StdRng) -> NfUnion {
    let dim = rng.gen_range(1..=4);
    let count = rng.gen_range(1..=3);
    let forms = (0..count).map(|_| random_form(rng, dim)).collect();
    NfUnion::new(dim, forms).unwrap()
}

fn random_form(rng: &mut StdRng, dim: usize) -> NormalForm {
    let mut axes = Axes(rng.gen_range(1..1u32 << dim));
    let mut levels = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        levels.push(Level {
            axes,
            c: rng.gen_range(0..=7),
            b: rng.gen_range(0..=7),
        });
        let sub = rng.gen_range(0..=axes.0) & axes.0;
        if sub != 0 {
            axes = Axes(sub);
        }
    }
    NormalForm::new(dim, levels).unwrap()
}

/// Padded unary DFA of `{(5n, 6m)}` built as a direct product.
fn five_six_product() -> Dfa {
    let alphabet = Alphabet::new(OrderedAlphabet::new(["a"]).unwrap(), 2).unwrap();
    let both = alphabet.parse_letter("a|a").unwrap();
    let first = alphabet.parse_letter("a|#").unwrap();
    let second = alphabet.parse_letter("#|a").unwrap();
    // State (i, j, phase): lengths mod 5 and 6; phase 0 both running, 1 only
    // the first, 2 only the second.
    let id = |i: usize, j: usize, phase: usize| phase * 30 + i * 6 + j;
    let mut table = vec![vec![None; alphabet.len()]; 90];
    let mut accepting = vec![false; 90];
    for phase in 0..3 {
        for i in 0..5 {
            for j in 0..6 {
                let q = id(i, j, phase);
                accepting[q] = i == 0 && j == 0;
                if phase == 0 {
                    table[q][both] = Some(id((i + 1) % 5, (j + 1) % 6, 0));
                }
                if phase != 2 {
                    table[q][first] = Some(id((i + 1) % 5, j, 1));
                }
                if phase != 1 {
                    table[q][second] = Some(id(i, (j + 1) % 6, 2));
                }
            }
        }
    }
    Dfa::from_table(alphabet, 0, accepting, table).unwrap()
}

#[test]
fn criterion_1_rep_val_bijection() {
    criterion(1, "rep/val bijection", Duration::from_secs(10), || {
        for (name, ans, raw) in fleet() {
            for n in 0u64..10_000 {
                assert_eq!(ans.val_u64(&ans.rep(n)).unwrap(), n, "{name}: n = {n}");
            }
            let words = radix_enumerate(&raw, 10_000);
            assert_eq!(words.len(), 10_000);
            for (rank, w) in words.iter().enumerate() {
                let n = ans.val_u64(w).unwrap();
                assert_eq!(n, rank as u64, "{name}: rank of {w:?}");
                assert_eq!(&ans.rep(n), w, "{name}: rep(val(w))");
            }
        }
    });
}

#[test]
fn criterion_2_successor_and_shifts() {
    criterion(2, "successor and k-shifts", Duration::from_secs(30), || {
        let mut rng = StdRng::seed_from_u64(2);
        for (name, ans, raw) in fleet() {
            let words = radix_enumerate(&raw, 600);
            for k in [1u64, 2, 3, 5] {
                let rel = shift(&ans, k);
                assert!(validate_padded(rel.dfa()));
                for n in 0..500usize {
                    let pair = [words[n].clone(), words[n + k as usize].clone()];
                    assert!(rel.contains(&pair), "{name} k={k}: n = {n}");
                }
                let mut rejected = 0;
                while rejected < 1000 {
                    let m = rng.gen_range(0..600usize);
                    let n = rng.gen_range(0..600usize);
                    if n == m + k as usize {
                        continue;
                    }
                    let pair = [words[m].clone(), words[n].clone()];
                    assert!(!rel.contains(&pair), "{name} k={k}: ({m}, {n})");
                    rejected += 1;
                }
            }
        }
    });
}

#[test]
fn criterion_3_frobenius_and_residues() {
    criterion(3, "Frobenius bounds and residue sets", Duration::from_secs(5), || {
        assert_eq!(frobenius_bound(2, &[4, 6]).unwrap(), 2);
        assert_eq!(residue_set(2, &[4, 6], 2).unwrap(), BTreeSet::from([0]));
        assert_eq!(frobenius_bound(5, &[5]).unwrap(), 0);
        assert!(residue_set(5, &[5], 0).unwrap().is_empty());
        assert_eq!(frobenius_bound(0, &[0]).unwrap(), 0);
        assert!(residue_set(0, &[0], 0).unwrap().is_empty());

        let mut rng = StdRng::seed_from_u64(3);
        for _ in 0..200 {
            let len = rng.gen_range(1..=4);
            let cs: Vec<u64> = (0..len).map(|_| rng.gen_range(0..=30)).collect();
            let r = cs.iter().fold(0, |g, &c| num_gcd(g, c));
            let n = frobenius_bound(r, &cs).unwrap();
            let c = residue_set(r, &cs, n).unwrap();
            assert_eq!((n, c), frobenius_by_table(r, &cs), "r = {r}, cs = {cs:?}");
        }
    });
}

fn num_gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        num_gcd(b, a % b)
    }
}

#[test]
fn criterion_4_normal_form_roundtrip() {
    criterion(4, "normal-form roundtrip", Duration::from_secs(60), || {
        let part1 = Dfa::parse(&fixture("expart1.aut")).unwrap().minimize();
        let nf = NfUnion::parse(&fixture("expart1.nf")).unwrap();
        assert_eq!(nf.to_unary_dfa().unwrap(), part1);
        let back = decompose_unary(&part1).unwrap();
        assert_eq!(back.to_unary_dfa().unwrap(), part1);

        let product = five_six_product().minimize();
        let union = NfUnion::parse(&fixture("five_six.nf")).unwrap();
        assert_eq!(union.to_unary_dfa().unwrap(), product);
        let back = decompose_unary(&product).unwrap();
        assert_eq!(back.to_unary_dfa().unwrap(), product);

        let mut rng = StdRng::seed_from_u64(4);
        for _ in 0..50 {
            let union = random_union(&mut rng);
            let generated = union.to_unary_dfa().unwrap();
            let decomposed = decompose_unary(&generated).unwrap();
            let regenerated = decomposed.to_unary_dfa().unwrap();
            assert_eq!(regenerated, generated, "{union}");
            let again = decompose_unary(&regenerated).unwrap();
            assert_eq!(again.to_unary_dfa().unwrap(), generated, "{union}");
        }
    });
}

#[test]
fn criterion_5_y_decomposition() {
    criterion(5, "Y-decomposition membership", Duration::from_secs(60), || {
        let part1 = NfUnion::parse(&fixture("expart1.nf")).unwrap();
        let y = y_decompose(&part1.forms()[0]).unwrap();
        let y1 = YSet::OnlyJ { j: 0, r: 5, s: 0, n_min: 0 };
        let y2 = YSet::JAndK { j: 1, k: 0, r: 2, s: 1, n_min: 2 };
        let y2p = YSet::JAndKFinite { j: 1, k: 0, r: 2, s: 1, finite: BTreeSet::from([0]) };
        let y3 = YSet::JAndK { j: 2, k: 1, r: 0, s: 2, n_min: 0 };
        let y4 = YSet::JAndK { j: 3, k: 0, r: 0, s: 0, n_min: 0 };
        assert_eq!(y.a, vec![vec![y1.clone(), y2p, y3.clone(), y4.clone()]]);
        assert_eq!(y.b, vec![y1, y2, y3, y4]);

        let mut forms: Vec<NormalForm> = ["expart1.nf", "ex2d.nf", "odd_by_3n1.nf", "five_six.nf"]
            .iter()
            .flat_map(|f| NfUnion::parse(&fixture(f)).unwrap().forms().to_vec())
            .collect();
        let mut rng = StdRng::seed_from_u64(5);
        for _ in 0..40 {
            let dim = rng.gen_range(1..=4);
            forms.push(random_form(&mut rng, dim));
        }
        for nf in forms {
            let d = nf.dim();
            let y = y_decompose(&nf).unwrap();
            let members = normal_form_points(&NfUnion::single(nf.clone()), 25);
            for x in box_tuples(d, 25) {
                assert_eq!(members.contains(&x), y.contains(&x), "{nf:?} at {x:?}");
            }
        }
    });
}

type Definition = Option<fn(&[u64]) -> bool>;

/// Sets compiled end to end, with their displayed definitions where the
/// file is a hand-written encoding.
fn test_sets() -> Vec<(&'static str, Definition)> {
    vec![
        ("ex2d.nf", Some(|x: &[u64]| {
            let (a, b) = (x[0], x[1]);
            (a % 2 == 0 && b % 3 == 1 && a >= b) || (b % 2 == 0 && a < b)
        })),
        ("expart1.nf", None),
        ("diagonal.nf", Some(|x: &[u64]| x[0] == x[1])),
        ("shift2.nf", Some(|x: &[u64]| x[1] == x[0] + 2)),
        ("odd_by_3n1.nf", Some(|x: &[u64]| x[0] % 2 == 1 && x[1] % 3 == 1)),
        ("singleton1.nf", Some(|x: &[u64]| x[0] == 5)),
        ("singleton2.nf", Some(|x: &[u64]| x == [3, 7])),
    ]
}

#[test]
fn criterion_6_end_to_end() {
    criterion(6, "compile and verify for every system", Duration::from_secs(300), || {
        let part1_oracle = |x: &[u64]| {
            // (5n, 5n+4m+6l+1, 5n+4m+6l+3, 5n)
            x[0].is_multiple_of(5)
                && x[3] == x[0]
                && x[2] == x[1] + 2
                && x[1] > x[0]
                && (0..=x[1]).step_by(6).any(|six| {
                    let rest = x[1] - x[0] - 1;
                    six <= rest && (rest - six).is_multiple_of(4)
                })
        };
        for (set_name, definition) in test_sets() {
            let set = NfUnion::parse(&fixture(set_name)).unwrap();
            let bound = if set.dim() == 2 { 40 } else { 25 };
            let members = normal_form_points(&set, bound);
            for x in box_tuples(set.dim(), bound) {
                let expected = match definition {
                    Some(f) => f(&x),
                    None => part1_oracle(&x),
                };
                assert_eq!(members.contains(&x), expected, "{set_name} encoding at {x:?}");
            }
            for (ans_name, ans, raw) in fleet() {
                let compiled = compile(&ans, &set).unwrap();
                assert!(validate_padded(compiled.dfa()));
                let report = verify(&ans, &set, compiled.dfa(), bound).unwrap();
                assert!(report.ok(), "{ans_name} {set_name}:\n{report}");
                if set.dim() == 2 {
                    let words: Vec<Word> = radix_enumerate(&raw, bound as usize + 1);
                    let alphabet = ans.alphabet().with_arity(2).unwrap();
                    for x in box_tuples(2, bound) {
                        let w = pad(&alphabet, &[words[x[0] as usize].clone(), words[x[1] as usize].clone()]).unwrap();
                        assert_eq!(compiled.dfa().accepts(&w), members.contains(&x), "{ans_name} {set_name} {x:?}");
                    }
                }
            }
        }
    });
}

#[test]
fn criterion_7_unary_fixpoint() {
    criterion(7, "unary compilation fixpoint", Duration::from_secs(30), || {
        let unary = Ans::parse(&fixture("unary.aut")).unwrap();
        let mut names: Vec<&str> = test_sets().iter().map(|(n, _)| *n).collect();
        names.extend(["axis.nf", "five_six.nf"]);
        for name in names {
            let set = NfUnion::parse(&fixture(name)).unwrap();
            let compiled = compile(&unary, &set).unwrap();
            let own = set.to_unary_dfa().unwrap();
            assert_eq!(compiled.dfa(), &own, "{name}");
            assert_eq!(compiled.dfa().to_text(), own.to_text(), "{name}");
        }
    });
}

#[test]
fn criterion_8_negative_inputs() {
    criterion(8, "rejection of ill-padded input", Duration::from_secs(30), || {
        let dir = tempfile::tempdir().unwrap();
        let ill = dir.path().join("ill.aut");
        std::fs::write(
            &ill,
            "alphabet a\narity 2\nstates p q r\ninitial p\naccepting r\n\
             trans p #|a q\ntrans q a|a r\n",
        )
        .unwrap();
        let output = Command::new(env!("CARGO_BIN_EXE_absnum"))
            .args(["decompose", "--unary"])
            .arg(&ill)
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(3));
        assert!(String::from_utf8_lossy(&output.stderr).contains("padded"));

        // ((a,a)(#,a))* pairs n letters with 2n letters but interleaves the
        // padding, so it is not an encoding of {(n, 2n)}.
        let text = "alphabet a\narity 2\nstates p q\ninitial p\naccepting p\n\
                    trans p a|a q\ntrans q #|a p\n";
        let approx = Dfa::parse(text).unwrap();
        assert!(!validate_padded(&approx));
        assert_eq!(PaddedRelation::new(&approx).unwrap_err(), Error::IllPadded);
        assert_eq!(decompose_unary(&approx).unwrap_err(), Error::IllPadded);
        let approx_file = dir.path().join("n2n.aut");
        std::fs::write(&approx_file, text).unwrap();
        let output = Command::new(env!("CARGO_BIN_EXE_absnum"))
            .args(["decompose", "--unary"])
            .arg(&approx_file)
            .output()
            .unwrap();
        assert_eq!(output.status.code(), Some(3));
        assert!(String::from_utf8_lossy(&output.stderr).contains("padded"));
    });
}
