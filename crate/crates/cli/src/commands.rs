use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use absnum::{compile, decompose_unary, padded, verify, Ans, Dfa, Error, NfUnion};
use num_bigint::BigUint;

/// Upper limit for `--bound`.
pub const BOUND_CEILING: u64 = 1000;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INVALID: i32 = 3;

/// Printable output plus the exit code it should end with.
#[derive(Debug, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(text: String) -> Self {
        Outcome { text, code: EXIT_OK }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    File { path: String, source: Error },
    #[error("{0}")]
    Core(#[from] Error),
    #[error("{0}")]
    Invalid(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => EXIT_PARSE,
            CliError::File { source, .. } | CliError::Core(source) => match source {
                Error::Parse { .. } => EXIT_PARSE,
                _ => EXIT_INVALID,
            },
            CliError::Invalid(_) => EXIT_INVALID,
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> absnum::Result<T>) -> CliResult<T> {
    parse(&read(path)?).map_err(|source| CliError::File {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_ans(path: &Path) -> CliResult<Ans> {
    load(path, Ans::parse)
}

pub fn load_set(path: &Path) -> CliResult<NfUnion> {
    load(path, NfUnion::parse)
}

pub fn load_dfa(path: &Path) -> CliResult<Dfa> {
    load(path, Dfa::parse)
}

/// Writes to `out` when given, otherwise returns the text for stdout.
fn emit(text: String, out: Option<&Path>) -> CliResult<Outcome> {
    match out {
        None => Ok(Outcome::ok(text)),
        Some(path) => {
            fs::write(path, &text).map_err(|source| CliError::Io {
                path: path.display().to_string(),
                source,
            })?;
            Ok(Outcome::ok(String::new()))
        }
    }
}

const EMPTY_WORD: &str = "ε";

pub fn rep(ans: &Path, n: &str) -> CliResult<Outcome> {
    let ans = load_ans(ans)?;
    let n: BigUint = n
        .parse()
        .map_err(|_| CliError::Invalid(format!("not a natural number: {n:?}")))?;
    let word = ans.rep(n);
    let text = if word.is_empty() {
        EMPTY_WORD.to_string()
    } else {
        ans.order().render(&word)
    };
    Ok(Outcome::ok(format!("{text}\n")))
}

pub fn val(ans: &Path, word: &str) -> CliResult<Outcome> {
    let ans = load_ans(ans)?;
    let word = if word == EMPTY_WORD {
        Vec::new()
    } else {
        ans.order().parse_word(word)?
    };
    Ok(Outcome::ok(format!("{}\n", ans.val(&word)?)))
}

pub fn succ(ans: &Path, k: u64, out: Option<&Path>) -> CliResult<Outcome> {
    let ans = load_ans(ans)?;
    emit(padded::shift(&ans, k).dfa().to_text(), out)
}

pub fn compile_set(ans: &Path, set: &Path, out: Option<&Path>) -> CliResult<Outcome> {
    let ans = load_ans(ans)?;
    let set = load_set(set)?;
    emit(compile(&ans, &set)?.dfa().to_text(), out)
}

pub fn decompose(unary: &Path, out: Option<&Path>) -> CliResult<Outcome> {
    let dfa = load(unary, |text| {
        absnum::Nfa::parse(text).map(|nfa| nfa.determinize())
    })?;
    emit(decompose_unary(&dfa)?.to_text(), out)
}

fn check_bound(bound: u64) -> CliResult<()> {
    if bound > BOUND_CEILING {
        return Err(CliError::Invalid(format!(
            "bound {bound} exceeds the ceiling {BOUND_CEILING}"
        )));
    }
    Ok(())
}

pub fn verify_set(ans: &Path, set: &Path, compiled: &Path, bound: u64) -> CliResult<Outcome> {
    check_bound(bound)?;
    let ans = load_ans(ans)?;
    let set = load_set(set)?;
    let dfa = load_dfa(compiled)?;
    let report = verify(&ans, &set, &dfa, bound)?;
    Ok(Outcome {
        text: report.to_string(),
        code: if report.ok() { EXIT_OK } else { EXIT_VERIFY_FAILED },
    })
}

pub fn enumerate(set: &Path, bound: u64) -> CliResult<Outcome> {
    check_bound(bound)?;
    let set = load_set(set)?;
    let mut text = String::new();
    for x in set.points_in_box(bound) {
        let coords: Vec<String> = x.iter().map(u64::to_string).collect();
        let _ = writeln!(text, "({})", coords.join(","));
    }
    Ok(Outcome::ok(text))
}
