//! Plain-text corpus of rings, maps and expected results.
//!
//! ```text
//! name: nodal curve
//! ring: QQ[x,y]/(x*y)
//! map: {x->x, y->0}
//! expect.classification: complete_intersection [worked: hypersurface with a node]
//! expect.betti: (1, 2, 2, 2, 2) [oracle: degreewise kernel count]
//! ```
//!
//! Stanzas start at `name:`. Every expectation ends with a provenance tag:
//! `[worked: citation]` for a value taken from a worked example, `[hand]` or
//! `[hand: note]` for a hand computation, `[oracle: name]` for a value
//! checked by an independent computation. `#` starts a comment line.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use ghostring::ghost::{classify, frobenius_map, ghost_report, ghost_trivialization_check, kunz_report, validate_map, GhostReport, KunzReport};
use ghostring::homalg::residue_field_betti;
use ghostring::koszul::koszul_on_maximal_ideal;
use ghostring::polycore::{parse_map, parse_ring, RingPresentation};
use ghostring::simplicial::{aq_dims, DEFAULT_DEGREE_BOUND, DEFAULT_LEVELS};
use serde::Serialize;

use crate::report::seq;
use crate::CliError;

pub const BUNDLED: &str = include_str!("../corpus/bundled.corpus");

const KUNZ_BOUND: usize = 6;
const GHOST_J_MAX: u32 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Kind {
    Word,
    Count,
    Sequence,
    Flag,
    OptionalFlag,
    OptionalCount,
}

const KEYS: &[(&str, Kind)] = &[
    ("classification", Kind::Word),
    ("embdim", Kind::Count),
    ("dim", Kind::Count),
    ("mu", Kind::Count),
    ("aq", Kind::Sequence),
    ("betti", Kind::Sequence),
    ("koszul_homology", Kind::Sequence),
    ("conormal_zero", Kind::Flag),
    ("ci_koszul_ghost", Kind::OptionalFlag),
    ("contracting", Kind::OptionalCount),
    ("frobenius_conormal_zero", Kind::Flag),
    ("kunz", Kind::Word),
    ("frobenius_tor", Kind::Sequence),
    ("ghost_trivial", Kind::Sequence),
];

const TAGS: &[&str] = &["worked", "hand", "oracle"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Expectation {
    pub key: String,
    /// Canonical form of the expected value.
    pub value: String,
    pub tag: String,
    pub citation: Option<String>,
    pub line: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub ring: String,
    pub map: Option<String>,
    pub levels: Option<usize>,
    pub expectations: Vec<Expectation>,
}

fn bad(line: usize, msg: impl std::fmt::Display) -> CliError {
    CliError::Corpus(format!("line {line}: {msg}"))
}

fn canonical(kind: Kind, raw: &str, line: usize) -> Result<String, CliError> {
    let raw = raw.trim();
    let count = |s: &str| s.trim().parse::<usize>().map_err(|_| bad(line, format!("expected a non-negative integer, found `{s}`")));
    match kind {
        Kind::Word => {
            if raw.is_empty() || raw.contains(char::is_whitespace) {
                return Err(bad(line, format!("expected a single word, found `{raw}`")));
            }
            Ok(raw.to_string())
        }
        Kind::Count => Ok(count(raw)?.to_string()),
        Kind::Sequence => {
            let inner = raw.strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(|| bad(line, format!("expected a tuple like (1, 2), found `{raw}`")))?;
            let v = inner.split(',').map(count).collect::<Result<Vec<_>, _>>()?;
            Ok(seq(&v))
        }
        Kind::Flag => match raw {
            "true" | "false" => Ok(raw.to_string()),
            _ => Err(bad(line, format!("expected true or false, found `{raw}`"))),
        },
        Kind::OptionalFlag => match raw {
            "true" | "false" | "null" => Ok(raw.to_string()),
            _ => Err(bad(line, format!("expected true, false or null, found `{raw}`"))),
        },
        Kind::OptionalCount => match raw {
            "none" => Ok(raw.to_string()),
            _ => Ok(count(raw)?.to_string()),
        },
    }
}

fn parse_expectation(key: &str, rest: &str, line: usize) -> Result<Expectation, CliError> {
    let kind = KEYS.iter().find(|(k, _)| *k == key).map(|(_, t)| *t).ok_or_else(|| bad(line, format!("unknown expectation `{key}`")))?;
    let rest = rest.trim_end();
    // Citations may contain brackets, so the tag opens at the last `[word`
    // that names a known tag, or failing that at the last `[`.
    let open = TAGS
        .iter()
        .filter_map(|t| rest.rfind(&format!("[{t}")))
        .max()
        .or_else(|| rest.rfind('['))
        .filter(|_| rest.ends_with(']'))
        .ok_or_else(|| bad(line, "expectation has no provenance tag"))?;
    let (value, tag) = (&rest[..open], &rest[open + 1..rest.len() - 1]);
    let (tag, citation) = match tag.split_once(':') {
        Some((t, c)) => (t.trim(), Some(c.trim()).filter(|c| !c.is_empty()).map(str::to_owned)),
        None => (tag.trim(), None),
    };
    if !TAGS.contains(&tag) {
        return Err(bad(line, format!("unknown provenance tag `{tag}`")));
    }
    if tag != "hand" && citation.is_none() {
        return Err(bad(line, format!("tag `{tag}` needs a citation")));
    }
    Ok(Expectation { key: key.into(), value: canonical(kind, value, line)?, tag: tag.into(), citation, line })
}

pub fn parse(text: &str) -> Result<Vec<CorpusEntry>, CliError> {
    let mut entries: Vec<CorpusEntry> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let l = raw.trim();
        if l.is_empty() || l.starts_with('#') {
            continue;
        }
        let (key, rest) = l.split_once(':').ok_or_else(|| bad(line, "expected `key: value`"))?;
        let (key, rest) = (key.trim(), rest.trim());
        if key == "name" {
            entries.push(CorpusEntry { name: rest.into(), ring: String::new(), map: None, levels: None, expectations: Vec::new() });
            continue;
        }
        let entry = entries.last_mut().ok_or_else(|| bad(line, "record does not start with `name:`"))?;
        match key {
            "ring" => entry.ring = rest.into(),
            "map" => entry.map = Some(rest.into()),
            "levels" => entry.levels = Some(rest.parse().map_err(|_| bad(line, format!("bad level count `{rest}`")))?),
            _ => match key.strip_prefix("expect.") {
                Some(k) => entry.expectations.push(parse_expectation(k, rest, line)?),
                None => return Err(bad(line, format!("unknown field `{key}`"))),
            },
        }
    }
    if let Some(e) = entries.iter().find(|e| e.ring.is_empty()) {
        return Err(CliError::Corpus(format!("entry `{}` has no ring", e.name)));
    }
    Ok(entries)
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckRow {
    pub entry: String,
    pub key: String,
    pub expected: String,
    pub actual: String,
    pub tag: String,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusSummary {
    pub entries: usize,
    pub rows: Vec<CheckRow>,
}

impl CorpusSummary {
    pub fn failed(&self) -> usize {
        self.rows.iter().filter(|r| !r.pass).count()
    }

    pub fn to_table(&self) -> String {
        let w_entry = self.rows.iter().map(|r| r.entry.chars().count()).max().unwrap_or(5).max(5);
        let w_key = self.rows.iter().map(|r| r.key.len()).max().unwrap_or(3).max(3);
        let mut out = String::new();
        let _ = writeln!(out, "{:<w_entry$}  {:<w_key$}  status  expected", "entry", "key");
        for r in &self.rows {
            let status = if r.pass { "pass" } else { "FAIL" };
            let pad = w_entry.saturating_sub(r.entry.chars().count());
            let _ = write!(out, "{}{}  {:<w_key$}  {status}    {}", r.entry, " ".repeat(pad), r.key, r.expected);
            if !r.pass {
                let _ = write!(out, "  (got {})", r.actual);
            }
            out.push('\n');
        }
        let _ = writeln!(out, "{} entries, {} checks, {} failed", self.entries, self.rows.len(), self.failed());
        out
    }
}

/// Lazily computed reports for one entry.
struct Evaluator<'a> {
    entry: &'a CorpusEntry,
    ring: Result<Arc<RingPresentation>, String>,
    ghost: Option<Result<GhostReport, String>>,
    kunz: BTreeMap<usize, Result<KunzReport, String>>,
}

fn truncated(flags: &[String]) -> Result<(), String> {
    match flags.first() {
        Some(f) => Err(format!("inconclusive: {f}")),
        None => Ok(()),
    }
}

impl<'a> Evaluator<'a> {
    fn new(entry: &'a CorpusEntry) -> Self {
        Evaluator { entry, ring: parse_ring(&entry.ring).map_err(|e| e.to_string()), ghost: None, kunz: BTreeMap::new() }
    }

    fn ghost(&mut self) -> Result<GhostReport, String> {
        if self.ghost.is_none() {
            let r = self.ring.clone()?;
            let map = self.entry.map.as_deref().ok_or("entry has no map")?;
            let g = parse_map(map, &r, &r).and_then(|im| validate_map(im, &r, &r)).and_then(|phi| ghost_report(&phi, GHOST_J_MAX)).map_err(|e| e.to_string());
            self.ghost = Some(g);
        }
        self.ghost.clone().expect("just computed")
    }

    fn kunz(&mut self, n: usize) -> Result<KunzReport, String> {
        let r = self.ring.clone()?;
        self.kunz.entry(n).or_insert_with(|| kunz_report(&r, 1, n).map_err(|e| e.to_string())).clone()
    }

    fn actual(&mut self, key: &str, expected: &str) -> Result<String, String> {
        let r = self.ring.clone()?;
        let len = expected.matches(',').count() + 1;
        Ok(match key {
            "classification" => classify(&r).verdict.to_string(),
            "embdim" => classify(&r).embdim.to_string(),
            "dim" => classify(&r).dim.to_string(),
            "mu" => classify(&r).mu.to_string(),
            "aq" => {
                let a = aq_dims(&r, self.entry.levels.unwrap_or(DEFAULT_LEVELS), DEFAULT_DEGREE_BOUND).map_err(|e| e.to_string())?;
                truncated(&a.truncation.flags)?;
                seq(&a.aq_dims)
            }
            "betti" => {
                let b = residue_field_betti(&r, len - 1).map_err(|e| e.to_string())?;
                truncated(&b.truncation.flags)?;
                seq(&b.totals())
            }
            "koszul_homology" => {
                let k = koszul_on_maximal_ideal(&r);
                let h = k.homology_dims(k.default_degree_bound());
                truncated(&h.flags)?;
                seq(&h.totals())
            }
            "conormal_zero" => self.ghost()?.conormal_zero.to_string(),
            "ci_koszul_ghost" => self.ghost()?.ci_koszul_ghost.map_or("null".into(), |b| b.to_string()),
            "contracting" => self.ghost()?.contracting.map_or("none".into(), |j| j.to_string()),
            "frobenius_conormal_zero" => frobenius_map(&r, 1).map_err(|e| e.to_string())?.conormal_zero().to_string(),
            "kunz" => {
                let k = self.kunz(KUNZ_BOUND)?;
                truncated(&k.tor.truncation.flags)?;
                k.verdict
            }
            "frobenius_tor" => {
                let k = self.kunz(len - 1)?;
                truncated(&k.tor.truncation.flags)?;
                seq(&k.tor.totals())
            }
            "ghost_trivial" => {
                let t = ghost_trivialization_check(&r, 1, len - 1).map_err(|e| e.to_string())?;
                truncated(&t.flags)?;
                if t.equal {
                    seq(&t.lhs)
                } else {
                    format!("lhs {} != rhs {}", seq(&t.lhs), seq(&t.rhs))
                }
            }
            other => return Err(format!("unknown key `{other}`")),
        })
    }
}

pub fn verify(entries: &[CorpusEntry]) -> CorpusSummary {
    let mut rows = Vec::new();
    for entry in entries {
        let mut ev = Evaluator::new(entry);
        for x in &entry.expectations {
            let actual = ev.actual(&x.key, &x.value).unwrap_or_else(|e| format!("error: {e}"));
            rows.push(CheckRow { entry: entry.name.clone(), key: x.key.clone(), pass: actual == x.value, expected: x.value.clone(), actual, tag: x.tag.clone() });
        }
    }
    CorpusSummary { entries: entries.len(), rows }
}
