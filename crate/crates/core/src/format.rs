//! Line-based text format for automata.
//!
//! ```text
//! alphabet a b          # base symbols in increasing order
//! arity 1               # letters for arity k>1 are written a|#|b
//! states q0 q1
//! initial q0
//! accepting q1
//! trans q0 a q1
//! trans q1 b q1
//! ```
//!
//! Lines starting with `#` are comments, as is everything after a lone `#`
//! token.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::alphabet::{Alphabet, OrderedAlphabet};
use crate::automaton::{Dfa, Nfa};
use crate::error::{Error, Result};

/// Splits a line into tokens, dropping comments.
pub(crate) fn tokens(line: &str) -> Vec<&str> {
    if line.trim_start().starts_with('#') && !line.trim_start().starts_with("#|") {
        return Vec::new();
    }
    line.split_whitespace().take_while(|t| *t != "#").collect()
}

impl Nfa {
    pub fn parse(text: &str) -> Result<Nfa> {
        let mut base: Option<OrderedAlphabet> = None;
        let mut arity = 1usize;
        let mut names: HashMap<String, usize> = HashMap::new();
        let mut pending_states: Vec<(usize, String)> = Vec::new();
        let mut initial: Vec<(usize, String)> = Vec::new();
        let mut accepting: Vec<(usize, String)> = Vec::new();
        let mut trans: Vec<(usize, String, String, String)> = Vec::new();

        for (i, line) in text.lines().enumerate() {
            let lineno = i + 1;
            let toks = tokens(line);
            let Some((&head, rest)) = toks.split_first() else {
                continue;
            };
            match head {
                "alphabet" => {
                    if base.is_some() {
                        return Err(Error::parse(lineno, "duplicate alphabet line"));
                    }
                    base = Some(
                        OrderedAlphabet::new(rest.iter().copied())
                            .map_err(|e| Error::parse(lineno, e.to_string()))?,
                    );
                }
                "arity" => {
                    let [value] = rest else {
                        return Err(Error::parse(lineno, "arity takes one number"));
                    };
                    arity = value
                        .parse()
                        .map_err(|_| Error::parse(lineno, format!("bad arity {value:?}")))?;
                    if arity == 0 {
                        return Err(Error::parse(lineno, "arity must be positive"));
                    }
                }
                "states" => {
                    pending_states.extend(rest.iter().map(|s| (lineno, s.to_string())));
                }
                "initial" => initial.extend(rest.iter().map(|s| (lineno, s.to_string()))),
                "accepting" => accepting.extend(rest.iter().map(|s| (lineno, s.to_string()))),
                "trans" => {
                    let [from, letter, to] = rest else {
                        return Err(Error::parse(lineno, "trans takes: state letter state"));
                    };
                    trans.push((lineno, from.to_string(), letter.to_string(), to.to_string()));
                }
                other => {
                    return Err(Error::parse(lineno, format!("unknown directive {other:?}")));
                }
            }
        }

        let base = base.ok_or_else(|| Error::parse(1, "missing alphabet line"))?;
        let alphabet = Alphabet::new(base, arity).map_err(|e| Error::parse(1, e.to_string()))?;
        let mut nfa = Nfa::new(alphabet.clone());
        for (lineno, name) in pending_states {
            if names.contains_key(&name) {
                return Err(Error::parse(lineno, format!("duplicate state {name}")));
            }
            let id = nfa.add_state(false);
            names.insert(name, id);
        }
        let lookup = |lineno: usize, name: &str| {
            names
                .get(name)
                .copied()
                .ok_or_else(|| Error::parse(lineno, format!("unknown state {name}")))
        };
        for (lineno, name) in &initial {
            let q = lookup(*lineno, name)?;
            nfa.add_initial(q);
        }
        for (lineno, name) in &accepting {
            let q = lookup(*lineno, name)?;
            nfa.set_accepting(q, true);
        }
        for (lineno, from, letter, to) in &trans {
            let p = lookup(*lineno, from)?;
            let q = lookup(*lineno, to)?;
            let l = alphabet
                .parse_letter(letter)
                .map_err(|e| Error::parse(*lineno, e.to_string()))?;
            nfa.add_transition(p, l, q);
        }
        if nfa.initial().is_empty() {
            return Err(Error::parse(1, "no initial state"));
        }
        Ok(nfa)
    }

    pub fn to_text(&self) -> String {
        let mut out = header(self.alphabet());
        let states: Vec<String> = (0..self.num_states()).map(|q| format!("q{q}")).collect();
        let _ = writeln!(out, "states {}", states.join(" "));
        let init: Vec<String> = self.initial().iter().map(|q| format!("q{q}")).collect();
        let _ = writeln!(out, "initial {}", init.join(" "));
        let acc: Vec<String> = (0..self.num_states())
            .filter(|&q| self.is_accepting(q))
            .map(|q| format!("q{q}"))
            .collect();
        let _ = writeln!(out, "{}", line_with("accepting", &acc));
        for q in 0..self.num_states() {
            let mut ts = self.transitions(q).to_vec();
            ts.sort_unstable();
            for (l, t) in ts {
                let _ = writeln!(out, "trans q{q} {} q{t}", self.alphabet().letter_name(l));
            }
        }
        out
    }
}

fn header(alphabet: &Alphabet) -> String {
    format!(
        "alphabet {}\narity {}\n",
        alphabet.base().symbols().join(" "),
        alphabet.arity()
    )
}

fn line_with(keyword: &str, items: &[String]) -> String {
    if items.is_empty() {
        keyword.to_string()
    } else {
        format!("{keyword} {}", items.join(" "))
    }
}

impl Dfa {
    /// Parses the text format and requires the result to be deterministic.
    pub fn parse(text: &str) -> Result<Dfa> {
        Nfa::parse(text)?.to_dfa()
    }

    /// Serialization; for canonical DFAs identical languages give identical text.
    pub fn to_text(&self) -> String {
        let mut out = header(self.alphabet());
        let states: Vec<String> = (0..self.num_states()).map(|q| format!("q{q}")).collect();
        let _ = writeln!(out, "states {}", states.join(" "));
        let _ = writeln!(out, "initial q{}", self.initial());
        let acc: Vec<String> = (0..self.num_states())
            .filter(|&q| self.is_accepting(q))
            .map(|q| format!("q{q}"))
            .collect();
        let _ = writeln!(out, "{}", line_with("accepting", &acc));
        for q in 0..self.num_states() {
            for l in self.alphabet().letters() {
                if let Some(t) = self.step(q, l) {
                    let _ = writeln!(out, "trans q{q} {} q{t}", self.alphabet().letter_name(l));
                }
            }
        }
        out
    }
}
