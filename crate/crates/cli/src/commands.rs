use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use ghostring::ghost::{classify, frobenius_pushforward, ghost_report, ghost_trivialization_check, kunz_report, validate_map};
use ghostring::groebner::{MonomialOrder, OrderKind};
use ghostring::homalg::{default_degree_bound, minimal_resolution, tor_dims, BettiTable, ModuleComplex, PresentedModule};
use ghostring::koszul::{koszul, koszul_on_maximal_ideal, twist, TwistMode};
use ghostring::polycore::{parse_map, parse_polynomial, parse_ring, Polynomial, RingPresentation};
use ghostring::simplicial::{aq_dims, homotopy_dims, simplicial_koszul, DEFAULT_DEGREE_BOUND, DEFAULT_LEVELS};
use serde_json::{json, Map, Value};

use crate::args::{Cli, Command, TorWith};
use crate::corpus;
use crate::report::seq;
use crate::CliError;

pub(crate) const DEFAULT_HOMOLOGICAL_BOUND: usize = 8;
pub(crate) const DEFAULT_TRIVIALIZATION_BOUND: usize = 6;

/// What a command computed, before timing and rendering.
pub(crate) struct Output {
    pub command: &'static str,
    pub inputs: BTreeMap<String, String>,
    pub truncation: Map<String, Value>,
    pub results: Value,
    pub text: String,
    /// Set by `corpus` when some expectation failed.
    pub failed: bool,
}

impl Output {
    fn new(command: &'static str) -> Self {
        Output { command, inputs: BTreeMap::new(), truncation: Map::new(), results: Value::Null, text: String::new(), failed: false }
    }

    fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    fn bound(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.truncation.insert(key.into(), value.into());
        self
    }

    fn flags(mut self, flags: Vec<String>) -> Self {
        self.truncation.insert("flags".into(), json!(flags));
        self
    }
}

pub(crate) fn parse_order(spec: &str, ring: &RingPresentation) -> Result<MonomialOrder, CliError> {
    let (kind, priority) = match spec.split_once(':') {
        Some((k, p)) => (k.trim(), Some(p)),
        None => (spec.trim(), None),
    };
    let kind = match kind {
        "degrevlex" => OrderKind::Degrevlex,
        "deglex" => OrderKind::Deglex,
        other => return Err(CliError::Usage(format!("unknown monomial order `{other}`; expected degrevlex or deglex"))),
    };
    let Some(priority) = priority else {
        return Ok(match kind {
            OrderKind::Degrevlex => MonomialOrder::degrevlex(),
            OrderKind::Deglex => MonomialOrder::deglex(),
        });
    };
    let names = ring.var_names();
    let mut perm = Vec::new();
    for name in priority.split('>').map(str::trim) {
        let i = names.iter().position(|n| n == name).ok_or_else(|| ghostring::Error::UnknownVariable(name.into()))?;
        if perm.contains(&i) {
            return Err(ghostring::Error::DuplicateAssignment(name.into()).into());
        }
        perm.push(i);
    }
    let rest: Vec<usize> = (0..names.len()).filter(|i| !perm.contains(i)).collect();
    perm.extend(rest);
    Ok(MonomialOrder::with_priority(kind, perm)?)
}

fn load_ring(text: &str, cli: &Cli) -> Result<Arc<RingPresentation>, CliError> {
    let ring = parse_ring(text)?;
    match &cli.order {
        Some(o) => Ok(ring.reordered(parse_order(o, &ring)?)?),
        None => Ok(ring),
    }
}

fn parse_sequence(text: &str, ring: &RingPresentation) -> Result<Vec<Polynomial>, CliError> {
    text.split(',').filter(|s| !s.trim().is_empty()).map(|s| parse_polynomial(s, ring.ring()).map_err(CliError::from)).collect()
}

fn betti_json(t: &BettiTable) -> Value {
    json!({ "totals": t.totals(), "rescale": t.rescale, "entries": t.entries })
}

fn betti_output(mut out: Output, title: &str, t: &BettiTable) -> Output {
    let _ = writeln!(out.text, "{title}: {}", seq(&t.totals()));
    out.text.push_str(&t.to_text());
    out.bound("N", t.truncation.homological).bound("D", t.truncation.internal).flags(t.truncation.flags.clone())
}

pub(crate) fn dispatch(cli: &Cli) -> Result<Output, CliError> {
    match &cli.command {
        Command::Classify { ring } => {
            let r = load_ring(ring, cli)?;
            let c = classify(&r);
            let mut out = Output::new("classify").input("ring", ring).flags(Vec::new());
            let _ = writeln!(out.text, "ring: {}", c.ring);
            let _ = writeln!(out.text, "embdim: {}\ndim: {}\nmu: {}\nverdict: {}", c.embdim, c.dim, c.mu, c.verdict);
            out.results = serde_json::to_value(&c)?;
            Ok(out)
        }
        Command::Ghost { ring, map, j_max } => {
            let r = load_ring(ring, cli)?;
            let phi = validate_map(parse_map(map, &r, &r)?, &r, &r)?;
            let g = ghost_report(&phi, *j_max)?;
            let mut out = Output::new("ghost").input("ring", ring).input("map", map).bound("j_max", *j_max).flags(Vec::new());
            let _ = writeln!(out.text, "ring: {}", g.ring);
            let _ = writeln!(out.text, "images: {}", g.images.join(", "));
            let rows: Vec<String> = g.conormal_matrix.iter().map(|r| format!("[{}]", r.join(" "))).collect();
            let _ = writeln!(out.text, "conormal_matrix: {}", rows.join(" "));
            let _ = writeln!(out.text, "conormal_zero: {}", g.conormal_zero);
            let _ = writeln!(out.text, "ghost: {}", g.ghost);
            let _ = writeln!(out.text, "contracting: {}", g.contracting.map_or("none".to_string(), |j| j.to_string()));
            let _ = writeln!(out.text, "classification: {}", g.classification.verdict);
            let _ = writeln!(out.text, "ci_koszul_ghost: {}", g.ci_koszul_ghost.map_or("null".to_string(), |b| b.to_string()));
            if let Some(f) = &g.failing_generator {
                let _ = writeln!(out.text, "failing_generator: {f}");
            }
            let _ = writeln!(out.text, "higher_degrees: {}", g.higher_degrees);
            out.results = serde_json::to_value(&g)?;
            Ok(out)
        }
        Command::Aq { ring } => {
            let r = load_ring(ring, cli)?;
            let l = cli.levels.unwrap_or(DEFAULT_LEVELS);
            let d = cli.degree_bound.unwrap_or(DEFAULT_DEGREE_BOUND);
            let a = aq_dims(&r, l, d)?;
            let mut out = Output::new("aq").input("ring", ring).bound("L", l).bound("D", d).flags(a.truncation.flags.clone());
            let _ = writeln!(out.text, "aq_dims: {}", seq(&a.aq_dims));
            if !a.higher.is_empty() {
                let _ = writeln!(out.text, "higher (i = 3..{}): {}", l - 1, seq(&a.higher));
            }
            out.results = json!({ "aq_dims": a.aq_dims, "higher": a.higher, "table": a.table });
            Ok(out)
        }
        Command::Koszul { ring, sequence, simplicial } => {
            let r = load_ring(ring, cli)?;
            let f = match sequence {
                Some(s) => parse_sequence(s, &r)?,
                None => r.variables(),
            };
            let k = koszul(&r, &f)?;
            let d = cli.degree_bound.unwrap_or_else(|| k.default_degree_bound());
            let h = k.homology_dims(d);
            let names: Vec<String> = f.iter().map(Polynomial::to_string).collect();
            let mut flags = h.flags.clone();
            let mut out = Output::new("koszul").input("ring", ring).input("sequence", names.join(", ")).bound("D", d);
            let _ = writeln!(out.text, "sequence: {}", names.join(", "));
            let _ = writeln!(out.text, "ranks: {}", seq(&k.ranks()));
            let _ = writeln!(out.text, "homology: {}", seq(&h.totals()));
            for i in 0..h.len as i64 {
                let row: Vec<String> = h.row(i).iter().map(|(j, n)| format!("{j}:{n}")).collect();
                if !row.is_empty() {
                    let _ = writeln!(out.text, "  H_{i}: {}", row.join(" "));
                }
            }
            let mut results = json!({ "sequence": names, "ranks": k.ranks(), "totals": h.totals(), "homology": h });
            if *simplicial {
                let l = cli.levels.unwrap_or(DEFAULT_LEVELS);
                let a = simplicial_koszul(&r, &f, l)?;
                let s = homotopy_dims(&a, d);
                let agrees = s.agrees_below(&h, l as i64);
                flags.extend(s.flags.iter().cloned());
                let _ = writeln!(out.text, "simplicial (i < {l}): {}", seq(&s.totals()));
                let _ = writeln!(out.text, "agrees_with_classical: {agrees}");
                results["simplicial"] = json!({ "totals": s.totals(), "homology": s, "agrees_with_classical": agrees });
                out = out.bound("L", l);
            }
            out.results = results;
            Ok(out.flags(flags))
        }
        Command::Betti { ring } => {
            let r = load_ring(ring, cli)?;
            let n = cli.homological_bound.unwrap_or(DEFAULT_HOMOLOGICAL_BOUND);
            let d = cli.degree_bound.unwrap_or_else(|| default_degree_bound(&r, 1, 0, n));
            let res = minimal_resolution(&PresentedModule::residue_field(&r, 1), n, d)?;
            let mut out = betti_output(Output::new("betti").input("ring", ring), "betti", &res.betti);
            out.results = betti_json(&res.betti);
            Ok(out)
        }
        Command::Tor { ring, with, frobenius_power } => {
            let r = load_ring(ring, cli)?;
            let n = cli.homological_bound.unwrap_or(DEFAULT_HOMOLOGICAL_BOUND);
            let e = *frobenius_power;
            let mut extra = Vec::new();
            let (complex, label) = match with {
                TorWith::ResidueField => (ModuleComplex::single(PresentedModule::residue_field(&r, 1)), "residue-field".to_string()),
                TorWith::Frobenius => (ModuleComplex::single(frobenius_pushforward(&r, e)?.module), format!("frobenius^{e}")),
                TorWith::KoszulTrivial => {
                    let kr = koszul_on_maximal_ideal(&r);
                    let t = twist(&kr, TwistMode::Trivial, kr.default_degree_bound())?;
                    extra = t.flags;
                    (t.complex, "koszul-trivial".to_string())
                }
                TorWith::KoszulFrobenius => {
                    let t = twist(&koszul_on_maximal_ideal(&r), TwistMode::Frobenius(e), 0)?;
                    extra = t.flags;
                    (t.complex, format!("koszul-frobenius^{e}"))
                }
            };
            let q = complex.scale();
            let d = cli.degree_bound.unwrap_or_else(|| default_degree_bound(&r, q, complex.max_generator_degree(), n + 1));
            let mut t = tor_dims(&PresentedModule::residue_field(&r, q), &complex, n, d)?;
            t.truncation.flags.extend(extra);
            let mut out = betti_output(Output::new("tor").input("ring", ring).input("with", &label), &format!("tor(k, {label})"), &t);
            out.results = betti_json(&t);
            Ok(out)
        }
        Command::Kunz { ring, frobenius_power } => {
            let r = load_ring(ring, cli)?;
            let n = cli.homological_bound.unwrap_or(DEFAULT_HOMOLOGICAL_BOUND);
            let k = kunz_report(&r, *frobenius_power, n)?;
            let mut flags = k.tor.truncation.flags.clone();
            if !k.consistent {
                flags.push(format!("regularity and vanishing of Tor_1..Tor_{n} disagree at this truncation"));
            }
            let mut out = Output::new("kunz").input("ring", ring).input("frobenius_power", frobenius_power);
            let _ = writeln!(out.text, "classification: {}", k.classification.verdict);
            let _ = writeln!(out.text, "q: {}\npushforward_rank: {}\npushforward_free: {}", k.q, k.pushforward_rank, k.pushforward_free);
            let _ = writeln!(out.text, "frobenius_conormal_zero: {}", k.frobenius_conormal_zero);
            let _ = writeln!(out.text, "tor: {}", seq(&k.tor.totals()));
            let _ = writeln!(out.text, "tor_vanishes: {}\nverdict: {}", k.tor_vanishes, k.verdict);
            out = out.bound("N", n).bound("D", k.tor.truncation.internal).flags(flags);
            out.results = serde_json::to_value(&k)?;
            Ok(out)
        }
        Command::GhostTrivial { ring, frobenius_power } => {
            let r = load_ring(ring, cli)?;
            let n = cli.homological_bound.unwrap_or(DEFAULT_TRIVIALIZATION_BOUND);
            let t = ghost_trivialization_check(&r, *frobenius_power, n)?;
            let mut out = Output::new("ghost-trivial").input("ring", ring).input("frobenius_power", frobenius_power);
            let _ = writeln!(out.text, "q: {}\nembdim: {}\nrequired_e: {}\nbound_satisfied: {}", t.q, t.embdim, t.required_e, t.bound_satisfied);
            let _ = writeln!(out.text, "lhs: {}\nrhs: {}", seq(&t.lhs), seq(&t.rhs));
            let _ = writeln!(out.text, "residue_betti: {}\nkoszul_homology: {}", seq(&t.residue_betti), seq(&t.koszul_homology));
            let _ = writeln!(out.text, "equal: {}", t.equal);
            out = out.bound("N", n).flags(t.flags.clone());
            out.results = serde_json::to_value(&t)?;
            Ok(out)
        }
        Command::Member { ring, poly } => {
            let r = load_ring(ring, cli)?;
            let f = parse_polynomial(poly, r.ring())?;
            let member = r.ideal().member(&f)?;
            let nf = r.normal_form(&f);
            let mut out = Output::new("member").input("ring", ring).input("poly", poly).flags(Vec::new());
            let _ = writeln!(out.text, "member: {member}\nnormal_form: {nf}");
            out.results = json!({ "member": member, "normal_form": nf.to_string() });
            Ok(out)
        }
        Command::Dim { ring } => {
            let r = load_ring(ring, cli)?;
            let dim = r.krull_dim();
            let hilbert: Vec<usize> = (0..=6).map(|d| r.hilbert_function(d)).collect();
            let mut out = Output::new("dim").input("ring", ring).flags(Vec::new());
            let _ = writeln!(out.text, "dim: {dim}\nhilbert_function(0..6): {}", seq(&hilbert));
            out.results = json!({ "dim": dim, "hilbert_function": hilbert });
            Ok(out)
        }
        Command::Corpus { path } => {
            let (source, text) = match path {
                Some(p) => (p.display().to_string(), std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?),
                None => ("bundled".to_string(), corpus::BUNDLED.to_string()),
            };
            let entries = corpus::parse(&text)?;
            let summary = corpus::verify(&entries);
            let mut out = Output::new("corpus").input("path", &source).flags(Vec::new());
            out.text = summary.to_table();
            out.failed = summary.failed() > 0;
            out.results = serde_json::to_value(&summary)?;
            Ok(out)
        }
    }
}
