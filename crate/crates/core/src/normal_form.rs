//! Normal forms of 1-recognizable subsets of ℕ^d.
//!
//! A [`NormalForm`] is a chain of levels `A_0 ⊇ A_1 ⊇ … ⊇ A_t` of nonempty
//! axis sets, each with a period `c_ℓ` and an offset `b_ℓ`. It denotes
//!
//! ```text
//! { Σ_ℓ (c_ℓ·n_ℓ + b_ℓ)·χ(A_ℓ) : n_0, …, n_t ∈ ℕ }
//! ```
//!
//! where `χ(A)` is the 0/1 indicator vector of `A`. In the unary padded
//! encoding this is the language `Π_ℓ (x_{A_ℓ}^{c_ℓ})* x_{A_ℓ}^{b_ℓ}`, with
//! `x_A` the letter carrying `a` exactly on the tracks of `A`. A [`NfUnion`]
//! is a finite union of normal forms and is the general set type.
//!
//! Axes are 0-based in the API and 1-based in the text format:
//!
//! ```text
//! dim 4
//! level A={1,2,3,4} c=5 b=(0,0,0,0)
//! level A={2,3}     c=4 b=(0,0,0,0)
//! level A={2,3}     c=6 b=(0,1,1,0)
//! level A={3}       c=0 b=(0,0,2,0)
//! ---
//! level A={1} c=1 b=(7,0,0,0)
//! ```

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use crate::alphabet::{Alphabet, Letter, OrderedAlphabet};
use crate::automaton::{Dfa, Nfa};
use crate::error::{Error, Result};
use crate::format::tokens;
use crate::padded::validate_padded;

/// Largest supported dimension.
pub const MAX_DIM: usize = 16;

/// A set of axes as a bitmask; bit `i` is axis `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Axes(pub u32);

impl Axes {
    pub fn from_axes(axes: impl IntoIterator<Item = usize>) -> Self {
        Axes(axes.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn all(dim: usize) -> Self {
        Axes(((1u64 << dim) - 1) as u32)
    }

    pub fn contains(self, axis: usize) -> bool {
        self.0 >> axis & 1 == 1
    }

    pub fn is_subset(self, other: Axes) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// Nonempty proper subsets.
    fn proper_subsets(self) -> impl Iterator<Item = Axes> {
        let full = self.0;
        let mut sub = full;
        std::iter::from_fn(move || {
            sub = sub.wrapping_sub(1) & full;
            (sub != 0).then_some(Axes(sub))
        })
    }
}

impl fmt::Display for Axes {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Level {
    pub axes: Axes,
    pub c: u64,
    pub b: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NormalForm {
    dim: usize,
    levels: Vec<Level>,
}

impl NormalForm {
    pub fn new(dim: usize, levels: Vec<Level>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidNormalForm(format!("dimension {dim} out of range")));
        }
        if levels.is_empty() {
            return Err(Error::InvalidNormalForm("no levels".into()));
        }
        let mut prev = Axes::all(dim);
        for level in &levels {
            if level.axes.is_empty() || !level.axes.is_subset(Axes::all(dim)) {
                return Err(Error::InvalidNormalForm(format!(
                    "bad axis set {} for dimension {dim}",
                    level.axes
                )));
            }
            if !level.axes.is_subset(prev) {
                return Err(Error::InvalidNormalForm(format!(
                    "{} is not contained in {prev}",
                    level.axes
                )));
            }
            prev = level.axes;
        }
        Ok(NormalForm { dim, levels })
    }

    /// The set `{0}`.
    pub fn zero(dim: usize) -> Result<Self> {
        NormalForm::new(
            dim,
            vec![Level {
                axes: Axes::all(dim),
                c: 0,
                b: 0,
            }],
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    /// Last level containing `axis`, or `None` for axes outside `A_0`.
    pub fn depth(&self, axis: usize) -> Option<usize> {
        self.levels.iter().rposition(|l| l.axes.contains(axis))
    }

    /// Membership by bounded search over the level multipliers.
    pub fn contains(&self, x: &[u64]) -> bool {
        if x.len() != self.dim {
            return false;
        }
        let depths: Vec<Option<usize>> = (0..self.dim).map(|i| self.depth(i)).collect();
        if (0..self.dim).any(|i| depths[i].is_none() && x[i] != 0) {
            return false;
        }
        let mut residual = x.to_vec();
        self.search(0, &depths, &mut residual)
    }

    fn search(&self, at: usize, depths: &[Option<usize>], residual: &mut [u64]) -> bool {
        let Some(level) = self.levels.get(at) else {
            return residual.iter().all(|&v| v == 0);
        };
        let axes: Vec<usize> = level.axes.iter().collect();
        let room = axes.iter().map(|&i| residual[i]).min().unwrap_or(0);
        if room < level.b {
            return false;
        }
        let max_n = (room - level.b).checked_div(level.c).unwrap_or(0);
        for n in 0..=max_n {
            let take = level.c * n + level.b;
            for &i in &axes {
                residual[i] -= take;
            }
            let closed = axes
                .iter()
                .all(|&i| depths[i] != Some(at) || residual[i] == 0);
            let found = closed && self.search(at + 1, depths, residual);
            for &i in &axes {
                residual[i] += take;
            }
            if found {
                return true;
            }
        }
        false
    }

    /// All members with every coordinate at most `bound`.
    pub fn points_in_box(&self, bound: u64) -> BTreeSet<Vec<u64>> {
        let mut out = BTreeSet::new();
        let mut point = vec![0u64; self.dim];
        self.generate(0, bound, &mut point, &mut out);
        out
    }

    fn generate(&self, at: usize, bound: u64, point: &mut [u64], out: &mut BTreeSet<Vec<u64>>) {
        let Some(level) = self.levels.get(at) else {
            out.insert(point.to_vec());
            return;
        };
        let axes: Vec<usize> = level.axes.iter().collect();
        let top = axes.iter().map(|&i| point[i]).max().unwrap_or(0);
        let mut n = 0;
        loop {
            let take = level.c * n + level.b;
            if top + take > bound {
                break;
            }
            for &i in &axes {
                point[i] += take;
            }
            self.generate(at + 1, bound, point, out);
            for &i in &axes {
                point[i] -= take;
            }
            if level.c == 0 {
                break;
            }
            n += 1;
        }
    }

    fn add_to_nfa(&self, nfa: &mut Nfa, letters: &[Letter]) {
        let start = nfa.add_state(false);
        nfa.add_initial(start);
        let mut cur = start;
        for level in &self.levels {
            let x = letters[level.axes.0 as usize];
            let entry = nfa.add_state(false);
            nfa.add_epsilon(cur, entry);
            cur = entry;
            if level.c > 0 {
                let mut p = cur;
                for _ in 1..level.c {
                    let q = nfa.add_state(false);
                    nfa.add_transition(p, x, q);
                    p = q;
                }
                nfa.add_transition(p, x, cur);
            }
            for _ in 0..level.b {
                let q = nfa.add_state(false);
                nfa.add_transition(cur, x, q);
                cur = q;
            }
        }
        nfa.set_accepting(cur, true);
    }

    fn write_text(&self, out: &mut String) {
        for level in &self.levels {
            let b: Vec<String> = (0..self.dim)
                .map(|i| if level.axes.contains(i) { level.b } else { 0 }.to_string())
                .collect();
            let _ = writeln!(out, "level A={} c={} b=({})", level.axes, level.c, b.join(","));
        }
    }
}

/// The unary tuple alphabet `({a} ∪ {#})^dim`.
pub fn unary_alphabet(dim: usize) -> Result<Alphabet> {
    Alphabet::new(OrderedAlphabet::new(["a"])?, dim)
}

/// Letter of the unary tuple alphabet for every axis mask (index 0 unused).
fn support_letters(alphabet: &Alphabet) -> Vec<Letter> {
    let d = alphabet.arity();
    (0..1usize << d)
        .map(|mask| {
            let tracks: Vec<_> = (0..d).map(|i| (mask >> i & 1 == 1).then_some(0)).collect();
            alphabet.encode(&tracks).unwrap_or(usize::MAX)
        })
        .collect()
}

/// A finite union of normal forms of one dimension.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NfUnion {
    dim: usize,
    forms: Vec<NormalForm>,
}

impl NfUnion {
    pub fn new(dim: usize, forms: Vec<NormalForm>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::InvalidNormalForm(format!("dimension {dim} out of range")));
        }
        if let Some(bad) = forms.iter().find(|f| f.dim != dim) {
            return Err(Error::ArityMismatch {
                expected: dim,
                found: bad.dim,
            });
        }
        Ok(NfUnion { dim, forms })
    }

    pub fn single(form: NormalForm) -> Self {
        NfUnion {
            dim: form.dim,
            forms: vec![form],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forms(&self) -> &[NormalForm] {
        &self.forms
    }

    pub fn union(&self, other: &NfUnion) -> Result<NfUnion> {
        let mut forms = self.forms.clone();
        forms.extend(other.forms.iter().cloned());
        NfUnion::new(self.dim, forms)
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.forms.iter().any(|f| f.contains(x))
    }

    pub fn points_in_box(&self, bound: u64) -> BTreeSet<Vec<u64>> {
        let mut out = BTreeSet::new();
        for f in &self.forms {
            out.extend(f.points_in_box(bound));
        }
        out
    }

    /// Canonical DFA over the unary tuple alphabet accepting the padded unary
    /// representations of the set.
    pub fn to_unary_dfa(&self) -> Result<Dfa> {
        let alphabet = unary_alphabet(self.dim)?;
        let letters = support_letters(&alphabet);
        let mut nfa = Nfa::new(alphabet);
        for f in &self.forms {
            f.add_to_nfa(&mut nfa, &letters);
        }
        Ok(nfa.determinize().minimize())
    }

    pub fn parse(text: &str) -> Result<NfUnion> {
        let mut dim: Option<usize> = None;
        let mut forms = Vec::new();
        let mut levels: Vec<Level> = Vec::new();
        let mut block_line = 1;
        let finish = |levels: &mut Vec<Level>, forms: &mut Vec<NormalForm>, dim: usize, line| {
            if levels.is_empty() {
                return Err(Error::parse(line, "empty normal form"));
            }
            let form = NormalForm::new(dim, std::mem::take(levels))
                .map_err(|e| Error::parse(line, e.to_string()))?;
            forms.push(form);
            Ok(())
        };
        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let toks = tokens(line);
            let Some((&head, rest)) = toks.split_first() else {
                continue;
            };
            match head {
                "dim" => {
                    let [value] = rest else {
                        return Err(Error::parse(lineno, "dim takes one number"));
                    };
                    let d: usize = value
                        .parse()
                        .map_err(|_| Error::parse(lineno, format!("bad dimension {value:?}")))?;
                    if d == 0 || d > MAX_DIM {
                        return Err(Error::parse(lineno, format!("dimension {d} out of range")));
                    }
                    if dim.is_some_and(|old| old != d) {
                        return Err(Error::parse(lineno, "conflicting dimensions"));
                    }
                    dim = Some(d);
                }
                "level" => {
                    let d = dim.ok_or_else(|| Error::parse(lineno, "level before dim"))?;
                    if levels.is_empty() {
                        block_line = lineno;
                    }
                    levels.push(parse_level(&rest.join(" "), d).map_err(|m| Error::parse(lineno, m))?);
                }
                "---" => {
                    let d = dim.ok_or_else(|| Error::parse(lineno, "separator before dim"))?;
                    finish(&mut levels, &mut forms, d, block_line)?;
                }
                other => {
                    return Err(Error::parse(lineno, format!("unknown directive {other:?}")));
                }
            }
        }
        let d = dim.ok_or_else(|| Error::parse(1, "missing dim line"))?;
        if !levels.is_empty() {
            finish(&mut levels, &mut forms, d, block_line)?;
        }
        NfUnion::new(d, forms)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("dim {}\n", self.dim);
        for (i, f) in self.forms.iter().enumerate() {
            if i > 0 {
                out.push_str("---\n");
            }
            f.write_text(&mut out);
        }
        out
    }
}

fn parse_level(text: &str, dim: usize) -> std::result::Result<Level, String> {
    let compact: String = text.split_whitespace().collect::<Vec<_>>().join(" ");
    let rest = compact
        .strip_prefix("A={")
        .ok_or("level must start with A={…}")?;
    let (axes_text, rest) = rest.split_once('}').ok_or("unterminated axis set")?;
    let mut axes = Axes(0);
    for part in axes_text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let a: usize = part.parse().map_err(|_| format!("bad axis {part:?}"))?;
        if a == 0 || a > dim {
            return Err(format!("axis {a} out of range 1..={dim}"));
        }
        axes.0 |= 1 << (a - 1);
    }
    if axes.is_empty() {
        return Err("empty axis set".into());
    }
    let rest = rest.trim();
    let rest = rest.strip_prefix("c=").ok_or("expected c=")?;
    let (c_text, rest) = rest.split_once(' ').ok_or("expected b=(…)")?;
    let c: u64 = c_text.parse().map_err(|_| format!("bad period {c_text:?}"))?;
    let rest = rest.trim();
    let b_text = rest
        .strip_prefix("b=(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or("expected b=(…)")?;
    let offsets: Vec<u64> = b_text
        .split(',')
        .map(|p| p.trim().parse().map_err(|_| format!("bad offset {p:?}")))
        .collect::<std::result::Result<_, _>>()?;
    if offsets.len() != dim {
        return Err(format!("expected {dim} offsets, found {}", offsets.len()));
    }
    let mut b = None;
    for (i, &v) in offsets.iter().enumerate() {
        if !axes.contains(i) {
            if v != 0 {
                return Err(format!("nonzero offset on axis {} outside A", i + 1));
            }
        } else if b.is_some_and(|b| b != v) {
            return Err("offsets differ inside A".into());
        } else {
            b = Some(v);
        }
    }
    Ok(Level {
        axes,
        c,
        b: b.unwrap_or(0),
    })
}

impl fmt::Display for NfUnion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Splits a well-padded DFA over a unary tuple alphabet into a union of
/// normal forms denoting the same set.
///
/// Along an accepted word the letter supports form a non-increasing chain.
/// From a state `s` with current support `A`, the `x_A`-path is a tail
/// followed by a cycle; each position on it is a residue class of segment
/// lengths, and from each position the run either stops or switches to a
/// strictly smaller support. Redundant forms are dropped when their language
/// is covered by the forms kept so far.
pub fn decompose_unary(dfa: &Dfa) -> Result<NfUnion> {
    let alphabet = dfa.alphabet();
    if !alphabet.is_unary() {
        return Err(Error::NotUnary);
    }
    if !validate_padded(dfa) {
        return Err(Error::IllPadded);
    }
    let dim = alphabet.arity();
    if dim > MAX_DIM {
        return Err(Error::InvalidNormalForm(format!("dimension {dim} out of range")));
    }
    let trimmed = dfa.trim();
    let letters = support_letters(alphabet);
    let mut walker = Walker {
        dfa: &trimmed,
        letters: &letters,
        memo: HashMap::new(),
    };
    let mut chains: BTreeSet<Vec<Level>> = BTreeSet::new();
    let q0 = trimmed.initial();
    if trimmed.num_states() > 0 && trimmed.is_accepting(q0) {
        chains.insert(NormalForm::zero(dim)?.levels);
    }
    for mask in 1..1u32 << dim {
        chains.extend(walker.segments(q0, Axes(mask)).iter().cloned());
    }
    let mut forms: Vec<NormalForm> = chains
        .into_iter()
        .map(|levels| NormalForm::new(dim, levels))
        .collect::<Result<_>>()?;
    // Forms with more periodic levels and smaller offsets tend to cover the others.
    forms.sort_by_key(|f| {
        let periodic = f.levels.iter().filter(|l| l.c > 0).count();
        let offsets: u64 = f.levels.iter().map(|l| l.b).sum();
        (std::cmp::Reverse(periodic), offsets, f.levels.len())
    });
    let mut kept: Vec<NormalForm> = Vec::new();
    let mut covered = Dfa::empty(unary_alphabet(dim)?);
    for f in forms {
        let lang = NfUnion::single(f.clone()).to_unary_dfa()?;
        if !lang.is_subset(&covered)? {
            covered = covered.union(&lang)?;
            kept.push(f);
        }
    }
    NfUnion::new(dim, kept)
}

struct Walker<'a> {
    dfa: &'a Dfa,
    letters: &'a [Letter],
    memo: HashMap<(usize, Axes), Vec<Vec<Level>>>,
}

impl Walker<'_> {
    /// Level chains for runs that start a segment of support `axes` at `start`.
    fn segments(&mut self, start: usize, axes: Axes) -> Vec<Vec<Level>> {
        if let Some(done) = self.memo.get(&(start, axes)) {
            return done.clone();
        }
        let x = self.letters[axes.0 as usize];
        let mut path = vec![start];
        let mut seen = HashMap::from([(start, 0usize)]);
        let mut cycle_start = None;
        while let Some(next) = self.dfa.step(*path.last().unwrap(), x) {
            if let Some(&j) = seen.get(&next) {
                cycle_start = Some(j);
                break;
            }
            seen.insert(next, path.len());
            path.push(next);
        }
        let mut out = Vec::new();
        for (k, &state) in path.iter().enumerate() {
            let level = match cycle_start {
                Some(tail) if k >= tail => Level {
                    axes,
                    c: (path.len() - tail) as u64,
                    b: k as u64,
                },
                _ if k == 0 => continue,
                _ => Level {
                    axes,
                    c: 0,
                    b: k as u64,
                },
            };
            if self.dfa.is_accepting(state) {
                out.push(vec![level]);
            }
            for sub in axes.proper_subsets() {
                for tail in self.segments(state, sub) {
                    let mut chain = Vec::with_capacity(tail.len() + 1);
                    chain.push(level);
                    chain.extend(tail);
                    out.push(chain);
                }
            }
        }
        self.memo.insert((start, axes), out.clone());
        out
    }
}
