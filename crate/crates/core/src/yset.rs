//! Y-sets: single-coordinate constraints whose intersections and unions
//! rebuild a normal form.
//!
//! Each variant constrains axis `j` and leaves every other coordinate free:
//!
//! | variant        | coordinate `j`          | multiplier      |
//! |----------------|-------------------------|-----------------|
//! | `OnlyJ`        | `r·n + s`               | `n ≥ n_min`     |
//! | `JAndK`        | `x_k + r·n + s`         | `n ≥ n_min`     |
//! | `OnlyJFinite`  | `r·n + s`               | `n ∈ finite`    |
//! | `JAndKFinite`  | `x_k + r·n + s`         | `n ∈ finite`    |

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::frobenius::{frobenius_bound, residue_set};
use crate::normal_form::NormalForm;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum YSet {
    OnlyJ {
        j: usize,
        r: u64,
        s: u64,
        n_min: u64,
    },
    JAndK {
        j: usize,
        k: usize,
        r: u64,
        s: u64,
        n_min: u64,
    },
    OnlyJFinite {
        j: usize,
        r: u64,
        s: u64,
        finite: BTreeSet<u64>,
    },
    JAndKFinite {
        j: usize,
        k: usize,
        r: u64,
        s: u64,
        finite: BTreeSet<u64>,
    },
}

enum Multiplier<'a> {
    AtLeast(u64),
    OneOf(&'a BTreeSet<u64>),
}

impl YSet {
    pub fn axis(&self) -> usize {
        match self {
            YSet::OnlyJ { j, .. }
            | YSet::JAndK { j, .. }
            | YSet::OnlyJFinite { j, .. }
            | YSet::JAndKFinite { j, .. } => *j,
        }
    }

    pub fn reference(&self) -> Option<usize> {
        match self {
            YSet::JAndK { k, .. } | YSet::JAndKFinite { k, .. } => Some(*k),
            _ => None,
        }
    }

    pub fn modulus(&self) -> u64 {
        match self {
            YSet::OnlyJ { r, .. }
            | YSet::JAndK { r, .. }
            | YSet::OnlyJFinite { r, .. }
            | YSet::JAndKFinite { r, .. } => *r,
        }
    }

    pub fn offset(&self) -> u64 {
        match self {
            YSet::OnlyJ { s, .. }
            | YSet::JAndK { s, .. }
            | YSet::OnlyJFinite { s, .. }
            | YSet::JAndKFinite { s, .. } => *s,
        }
    }

    fn multiplier(&self) -> Multiplier<'_> {
        match self {
            YSet::OnlyJ { n_min, .. } | YSet::JAndK { n_min, .. } => Multiplier::AtLeast(*n_min),
            YSet::OnlyJFinite { finite, .. } | YSet::JAndKFinite { finite, .. } => {
                Multiplier::OneOf(finite)
            }
        }
    }

    /// Checks the axes against the dimension.
    pub fn validate(&self, dim: usize) -> Result<()> {
        let j = self.axis();
        if j >= dim {
            return Err(Error::InvalidYSet(format!("axis {} out of range", j + 1)));
        }
        if let Some(k) = self.reference() {
            if k >= dim || k == j {
                return Err(Error::InvalidYSet(format!("bad reference axis {}", k + 1)));
            }
        }
        Ok(())
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        let base = self.reference().map_or(0, |k| x[k]);
        let (r, s) = (self.modulus(), self.offset());
        let Some(diff) = x[self.axis()].checked_sub(base + s) else {
            return false;
        };
        match (r, self.multiplier()) {
            (0, Multiplier::AtLeast(_)) => diff == 0,
            (0, Multiplier::OneOf(c)) => diff == 0 && !c.is_empty(),
            (r, m) => {
                let (n, rem) = diff.div_rem(&r);
                rem == 0
                    && match m {
                        Multiplier::AtLeast(min) => n >= min,
                        Multiplier::OneOf(c) => c.contains(&n),
                    }
            }
        }
    }

    /// True when the set is certainly empty.
    pub fn is_empty(&self) -> bool {
        matches!(self.multiplier(), Multiplier::OneOf(c) if c.is_empty())
    }
}

impl fmt::Display for YSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let j = self.axis() + 1;
        let (r, s) = (self.modulus(), self.offset());
        let base = match self.reference() {
            Some(k) => format!("x{} + ", k + 1),
            None => String::new(),
        };
        match self.multiplier() {
            Multiplier::AtLeast(n) => write!(f, "x{j} = {base}{r}n + {s}, n >= {n}"),
            Multiplier::OneOf(c) => {
                let items: Vec<String> = c.iter().map(u64::to_string).collect();
                write!(f, "x{j} = {base}{r}n + {s}, n in {{{}}}", items.join(","))
            }
        }
    }
}

/// `(⋃_{term ∈ a} ⋂ term) ∪ ⋂ b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct YDecomposition {
    pub dim: usize,
    pub a: Vec<Vec<YSet>>,
    pub b: Vec<YSet>,
}

impl YDecomposition {
    pub fn contains(&self, x: &[u64]) -> bool {
        x.len() == self.dim
            && (self.b.iter().all(|y| y.contains(x))
                || self.a.iter().any(|term| term.iter().all(|y| y.contains(x))))
    }

    /// Every intersection term, `b` first.
    pub fn terms(&self) -> impl Iterator<Item = &[YSet]> {
        std::iter::once(self.b.as_slice()).chain(self.a.iter().map(Vec::as_slice))
    }
}

struct Block {
    leader: usize,
    followers: Vec<usize>,
    r: u64,
    s: u64,
    n_min: u64,
    finite: BTreeSet<u64>,
}

/// Rewrites a normal form as a [`YDecomposition`].
///
/// Axes outside `A_0` are pinned to 0. The remaining axes are grouped by the
/// last level containing them; each group is a block whose least axis (the
/// leader) is constrained against the previous block's leader, while the
/// other axes (followers) equal their predecessor in the block. For a block
/// with coefficients `c` and offsets summing to `s`, the leader increment is
/// `r·n + s` with `r = gcd(c)` and `n ≥ N` or `n ∈ C`. Every choice of blocks
/// taking the finite alternative gives one term of `a`; `b` takes none.
pub fn y_decompose(nf: &NormalForm) -> Result<YDecomposition> {
    let dim = nf.dim();
    let depths: Vec<Option<usize>> = (0..dim).map(|i| nf.depth(i)).collect();
    let mut fixed: Vec<YSet> = (0..dim)
        .filter(|&i| depths[i].is_none())
        .map(|j| YSet::OnlyJ {
            j,
            r: 0,
            s: 0,
            n_min: 0,
        })
        .collect();

    let distinct: BTreeSet<usize> = depths.iter().flatten().copied().collect();
    let mut blocks = Vec::new();
    let mut first_level = 0;
    for &depth in &distinct {
        let axes: Vec<usize> = (0..dim).filter(|&i| depths[i] == Some(depth)).collect();
        let levels = &nf.levels()[first_level..=depth];
        first_level = depth + 1;
        let cs: Vec<u64> = levels.iter().map(|l| l.c).collect();
        let r = cs.iter().fold(0u64, |g, c| g.gcd(c));
        let mut s: u64 = levels.iter().map(|l| l.b).sum();
        let mut n_min = frobenius_bound(r, &cs)?;
        let mut finite = residue_set(r, &cs, n_min)?;
        if r > 0 && s >= r {
            let q = s / r;
            s %= r;
            n_min += q;
            finite = finite.into_iter().map(|n| n + q).collect();
        }
        blocks.push(Block {
            leader: axes[0],
            followers: axes[1..].to_vec(),
            r,
            s,
            n_min,
            finite,
        });
    }

    let mut leaders = Vec::new();
    let mut primed = Vec::new();
    for (p, block) in blocks.iter().enumerate() {
        let (j, r, s) = (block.leader, block.r, block.s);
        let reference = p.checked_sub(1).map(|q| blocks[q].leader);
        let n_min = block.n_min;
        let finite = block.finite.clone();
        let (plain, alt) = match reference {
            None => (
                YSet::OnlyJ { j, r, s, n_min },
                YSet::OnlyJFinite { j, r, s, finite },
            ),
            Some(k) => (
                YSet::JAndK { j, k, r, s, n_min },
                YSet::JAndKFinite { j, k, r, s, finite },
            ),
        };
        leaders.push(plain);
        primed.push((!alt.is_empty()).then_some(alt));
        let mut prev = block.leader;
        for &f in &block.followers {
            fixed.push(YSet::JAndK {
                j: f,
                k: prev,
                r: 0,
                s: 0,
                n_min: 0,
            });
            prev = f;
        }
    }

    let sorted = |mut v: Vec<YSet>| {
        v.sort_by_key(|y| y.axis());
        v
    };
    let b = sorted(fixed.iter().chain(&leaders).cloned().collect());
    let choices: Vec<usize> = (0..blocks.len()).filter(|&p| primed[p].is_some()).collect();
    let mut a = Vec::new();
    for subset in 1u64..1 << choices.len() {
        let mut term = fixed.clone();
        for (p, leader) in leaders.iter().enumerate() {
            let pos = choices.iter().position(|&c| c == p);
            match pos {
                Some(i) if subset >> i & 1 == 1 => term.push(primed[p].clone().unwrap()),
                _ => term.push(leader.clone()),
            }
        }
        a.push(sorted(term));
    }
    Ok(YDecomposition { dim, a, b })
}
