//! The property-verification runner: executes every structural property of
//! twisted conjugacy over a corpus of groups and emits one record per
//! checked instance.
//!
//! Sampling is deterministic: each group derives its RNG from the corpus
//! seed and the group name, so reports are byte-identical across runs.

use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use reidemeister::chartab::{self, CharacterTable};
use reidemeister::congruence::{self, ArithmeticFunction};
use reidemeister::morphism::{self, Endomorphism};
use reidemeister::twisted::{self, CentralBoundsContext, ReidemeisterMethod};
use reidemeister::FiniteGroup;

use crate::corpus::{Corpus, CorpusEntry};
use crate::report::{summarize, Record, Summary};
use crate::sources::describe_morphism;
use crate::CliError;

/// Property identifiers in execution order.
pub const ALL_PROPERTIES: [&str; 21] = [
    "method-agreement",
    "fixed-class-count",
    "fixed-point-criterion",
    "theta-inner-product",
    "theta-decomposition",
    "character-count",
    "dual-coincidence",
    "dual-fix",
    "regular-representation",
    "fpf-obstruction",
    "symmetry-equalities",
    "class-preserving-invariance",
    "class-sum-formula",
    "transporter-lemma",
    "xi-fixed-points",
    "power-inequality",
    "central-bounds",
    "gap-theorem",
    "parity",
    "gauss-congruence",
    "prime-congruence",
];

/// Hard cap on endomorphism enumeration per group; groups beyond it are
/// skipped with a note on stderr.
const ENUMERATION_GUARD: usize = 200_000;

#[derive(Debug, Clone, Default)]
pub struct VerifyOptions {
    pub properties: Option<Vec<String>>,
    pub group_filter: Option<String>,
    pub seed: Option<u64>,
    pub max_pairs: Option<usize>,
    pub max_order: Option<usize>,
}

pub struct VerifyOutcome {
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl VerifyOutcome {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }
}

struct Ctx<'a> {
    entry: &'a CorpusEntry,
    group: &'a FiniteGroup,
    name: &'a str,
    seed: u64,
    id: Endomorphism,
    /// The morphisms swept: all endomorphisms, or all automorphisms for
    /// aut-only entries.
    endos: Vec<Endomorphism>,
    /// Indices of the bijective entries of `endos`.
    autos: Vec<usize>,
    /// Sampled pair indices into `endos`.
    pairs: Vec<(usize, usize)>,
    /// Sampled single indices into `endos`.
    singles: Vec<usize>,
    table: Arc<CharacterTable>,
}

impl<'a> Ctx<'a> {
    fn spec(&self, idx: usize) -> String {
        describe_morphism(&self.endos[idx])
    }

    fn pair_instance(&self, phi: usize, psi: usize) -> String {
        format!("phi={} psi={}", self.spec(phi), self.spec(psi))
    }

    fn repro_pair(&self, phi: usize, psi: usize) -> Option<String> {
        self.entry.source.as_ref().map(|source| {
            format!(
                "reidemeister reidemeister '{source}' '{}' '{}' --method all",
                self.spec(phi),
                self.spec(psi)
            )
        })
    }

    fn repro_verify(&self, property: &str) -> Option<String> {
        Some(format!(
            "reidemeister verify --seed {} --properties {property} --group {}",
            self.seed_base(),
            self.name
        ))
    }

    fn seed_base(&self) -> u64 {
        self.seed
    }

    fn r_orbit(&self, phi: &Endomorphism, psi: &Endomorphism) -> usize {
        twisted::twisted_classes(phi, psi).expect("same group").count()
    }
}

fn fnv1a(text: &str) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for byte in text.bytes() {
        hash ^= byte as u64;
        hash = hash.wrapping_mul(0x100000001b3);
    }
    hash
}

fn sample_singles(n: usize, cap: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    if n <= cap {
        return (0..n).collect();
    }
    let mut chosen = HashSet::with_capacity(cap);
    while chosen.len() < cap {
        chosen.insert(rng.random_range(0..n));
    }
    let mut out: Vec<usize> = chosen.into_iter().collect();
    out.sort_unstable();
    out
}

fn sample_pairs(n: usize, cap: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    if n.saturating_mul(n) <= cap {
        return (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    }
    let mut chosen = HashSet::with_capacity(cap);
    while chosen.len() < cap {
        let code = rng.random_range(0..(n as u64 * n as u64));
        chosen.insert(code);
    }
    let mut out: Vec<(usize, usize)> = chosen
        .into_iter()
        .map(|code| ((code / n as u64) as usize, (code % n as u64) as usize))
        .collect();
    out.sort_unstable();
    out
}

pub fn run(corpus: &Corpus, opts: &VerifyOptions) -> Result<VerifyOutcome, CliError> {
    let started = Instant::now();
    let seed = opts.seed.unwrap_or(corpus.seed);
    let max_pairs = opts.max_pairs.unwrap_or(corpus.max_pairs);
    let max_order = opts.max_order.or(corpus.max_order);
    let selected: Vec<&str> = match &opts.properties {
        Some(names) => {
            let mut out = Vec::new();
            for name in names {
                let known = ALL_PROPERTIES
                    .iter()
                    .find(|p| **p == name.as_str())
                    .ok_or_else(|| {
                        CliError::load(
                            name,
                            format!("unknown property; known: {}", ALL_PROPERTIES.join(", ")),
                        )
                    })?;
                out.push(*known);
            }
            out
        }
        None => ALL_PROPERTIES.to_vec(),
    };

    let mut records = Vec::new();
    let mut group_names = Vec::new();
    for entry in corpus.entries.iter() {
        if let Some(cap) = max_order {
            if entry.group.order() > cap {
                continue;
            }
        }
        if let Some(filter) = &opts.group_filter {
            if &entry.name != filter {
                continue;
            }
        }
        let Some(ctx) = build_ctx(entry, seed, entry.max_pairs.unwrap_or(max_pairs))? else {
            eprintln!(
                "note: skipping {}: more than {ENUMERATION_GUARD} endomorphisms",
                entry.name
            );
            continue;
        };
        group_names.push(entry.name.clone());
        for property in &selected {
            records.extend(run_property(property, &ctx));
        }
    }
    if group_names.is_empty() {
        return Err(CliError::load(
            "verify",
            "no corpus group matches the requested filters",
        ));
    }
    let elapsed_ms = started.elapsed().as_millis();
    let summary = summarize(&records, group_names, seed, elapsed_ms);
    Ok(VerifyOutcome { records, summary })
}

fn build_ctx(
    entry: &CorpusEntry,
    seed: u64,
    max_pairs: usize,
) -> Result<Option<Ctx<'_>>, CliError> {
    let group = &entry.group;
    let stream: Box<dyn Iterator<Item = Endomorphism>> = if entry.aut_only {
        Box::new(morphism::automorphisms(group))
    } else {
        Box::new(morphism::endomorphisms(group))
    };
    let endos: Vec<Endomorphism> = stream.take(ENUMERATION_GUARD + 1).collect();
    if endos.len() > ENUMERATION_GUARD {
        return Ok(None);
    }
    let autos: Vec<usize> = endos
        .iter()
        .enumerate()
        .filter(|(_, e)| e.is_bijective())
        .map(|(i, _)| i)
        .collect();
    let group_seed = seed ^ fnv1a(&entry.name);
    let mut rng = ChaCha8Rng::seed_from_u64(group_seed);
    let pairs = sample_pairs(endos.len(), max_pairs, &mut rng);
    let singles = sample_singles(endos.len(), max_pairs, &mut rng);
    let table = chartab::character_table(group)?;
    Ok(Some(Ctx {
        entry,
        group,
        name: &entry.name,
        seed,
        id: Endomorphism::identity(group),
        endos,
        autos,
        pairs,
        singles,
        table,
    }))
}

fn run_property(property: &str, ctx: &Ctx) -> Vec<Record> {
    match property {
        "method-agreement" => method_agreement(ctx),
        "fixed-class-count" => fixed_class_count(ctx),
        "fixed-point-criterion" => fixed_point_criterion(ctx),
        "theta-inner-product" => theta_inner_product(ctx),
        "theta-decomposition" => theta_decomposition(ctx),
        "character-count" => character_count(ctx),
        "dual-coincidence" => dual_coincidence(ctx),
        "dual-fix" => dual_fix(ctx),
        "regular-representation" => regular_representation(ctx),
        "fpf-obstruction" => fpf_obstruction(ctx),
        "symmetry-equalities" => symmetry_equalities(ctx),
        "class-preserving-invariance" => class_preserving_invariance(ctx),
        "class-sum-formula" => class_sum_formula(ctx),
        "transporter-lemma" => transporter_lemma(ctx),
        "xi-fixed-points" => xi_fixed_points(ctx),
        "power-inequality" => power_inequality(ctx),
        "central-bounds" => central_bounds(ctx),
        "gap-theorem" => gap_theorem(ctx),
        "parity" => parity(ctx),
        "gauss-congruence" => gauss_congruence(ctx),
        "prime-congruence" => prime_congruence(ctx),
        _ => unreachable!("unknown property {property}"),
    }
}

/// orbits = burnside = class_sum = characters on every sampled pair.
fn method_agreement(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "method-agreement";
    ctx.pairs
        .par_iter()
        .map(|&(pi, qi)| {
            let (phi, psi) = (&ctx.endos[pi], &ctx.endos[qi]);
            let mut values = Vec::new();
            for method in ReidemeisterMethod::ALL {
                match twisted::reidemeister_number(phi, psi, method) {
                    Ok(v) => values.push((method, v)),
                    Err(e) => {
                        return Record::fail(
                            P,
                            ctx.name,
                            ctx.pair_instance(pi, qi),
                            json!({ "error": e.to_string(), "method": format!("{method:?}") }),
                            ctx.repro_pair(pi, qi),
                        )
                    }
                }
            }
            if values.iter().all(|(_, v)| *v == values[0].1) {
                Record::pass(P, ctx.name, ctx.pair_instance(pi, qi))
            } else {
                let witness: serde_json::Value = json!({
                    "orbits": values[0].1,
                    "burnside": values[1].1,
                    "class_sum": values[2].1,
                    "characters": values[3].1,
                    "phi": ctx.spec(pi),
                    "psi": ctx.spec(qi),
                });
                Record::fail(P, ctx.name, ctx.pair_instance(pi, qi), witness, ctx.repro_pair(pi, qi))
            }
        })
        .collect()
}

/// R(psi) equals the number of ordinary classes with [g] = [psi(g)],
/// over every enumerated endomorphism.
fn fixed_class_count(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "fixed-class-count";
    let classes = ctx.group.classes();
    let failure = ctx.endos.par_iter().find_map_first(|psi| {
        let r = ctx.r_orbit(&ctx.id, psi);
        let fixed = classes
            .representatives
            .iter()
            .enumerate()
            .filter(|&(c, &rep)| classes.class_of[psi.apply(rep)] == c)
            .count();
        (r != fixed).then(|| (describe_morphism(psi), r, fixed))
    });
    let instance = format!("all {} endomorphisms", ctx.endos.len());
    match failure {
        None => vec![Record::pass(P, ctx.name, instance)],
        Some((psi, r, fixed)) => vec![Record::fail(
            P,
            ctx.name,
            instance,
            json!({ "psi": psi, "reidemeister": r, "fixed_classes": fixed }),
            ctx.repro_verify(P),
        )],
    }
}

/// R(psi) = 1 iff Fix(psi) is trivial, over every enumerated endomorphism.
fn fixed_point_criterion(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "fixed-point-criterion";
    let failure = ctx.endos.par_iter().find_map_first(|psi| {
        let r = ctx.r_orbit(&ctx.id, psi);
        let fix = psi.fixed_points();
        let agree = (r == 1) == (fix.len() == 1);
        (!agree).then(|| (describe_morphism(psi), r, fix.len()))
    });
    let instance = format!("all {} endomorphisms", ctx.endos.len());
    match failure {
        None => vec![Record::pass(P, ctx.name, instance)],
        Some((psi, r, fix)) => vec![Record::fail(
            P,
            ctx.name,
            instance,
            json!({ "psi": psi, "reidemeister": r, "fixed_points": fix }),
            ctx.repro_verify(P),
        )],
    }
}

/// <theta, chi> computed as an inner product equals the element-wise class
/// sum, for every irreducible chi and every sampled pair. Orders <= 32.
fn theta_inner_product(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "theta-inner-product";
    if ctx.group.order() > 32 {
        return Vec::new();
    }
    ctx.pairs
        .par_iter()
        .map(|&(pi, qi)| {
            let (phi, psi) = (&ctx.endos[pi], &ctx.endos[qi]);
            let theta = match chartab::theta_direct(phi, psi) {
                Ok(t) => t,
                Err(e) => {
                    return Record::fail(
                        P,
                        ctx.name,
                        ctx.pair_instance(pi, qi),
                        json!({ "error": e.to_string() }),
                        ctx.repro_pair(pi, qi),
                    )
                }
            };
            for (row, chi) in ctx.table.rows().iter().enumerate() {
                let lhs = match chartab::inner_product(&theta, chi) {
                    Ok(v) => v,
                    Err(e) => {
                        return Record::fail(
                            P,
                            ctx.name,
                            ctx.pair_instance(pi, qi),
                            json!({ "row": row, "error": e.to_string() }),
                            ctx.repro_pair(pi, qi),
                        )
                    }
                };
                let rhs = chartab::theta_inner_product_class_sum(chi, phi, psi)
                    .expect("same group");
                if rhs.to_rational() != Some(lhs.clone()) {
                    return Record::fail(
                        P,
                        ctx.name,
                        ctx.pair_instance(pi, qi),
                        json!({
                            "row": row,
                            "inner_product": lhs.to_string(),
                            "class_sum": rhs.to_string(),
                        }),
                        ctx.repro_pair(pi, qi),
                    );
                }
            }
            Record::pass(P, ctx.name, ctx.pair_instance(pi, qi))
        })
        .collect()
}

/// theta assembled from the character table equals the closed form,
/// pointwise and exactly. Orders <= 32.
fn theta_decomposition(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "theta-decomposition";
    if ctx.group.order() > 32 {
        return Vec::new();
    }
    ctx.pairs
        .par_iter()
        .map(|&(pi, qi)| {
            let (phi, psi) = (&ctx.endos[pi], &ctx.endos[qi]);
            let direct = chartab::theta_direct(phi, psi).expect("same group");
            let from_chars =
                chartab::theta_from_characters(&ctx.table, phi, psi).expect("same group");
            if direct.values() == from_chars.values() {
                Record::pass(P, ctx.name, ctx.pair_instance(pi, qi))
            } else {
                let diff = direct
                    .values()
                    .iter()
                    .zip(from_chars.values())
                    .position(|(a, b)| a != b);
                Record::fail(
                    P,
                    ctx.name,
                    ctx.pair_instance(pi, qi),
                    json!({ "first_differing_class": diff }),
                    ctx.repro_pair(pi, qi),
                )
            }
        })
        .collect()
}

/// The two character-theoretic expressions agree with the orbit count.
fn character_count(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "character-count";
    ctx.pairs
        .par_iter()
        .map(|&(pi, qi)| {
            let (phi, psi) = (&ctx.endos[pi], &ctx.endos[qi]);
            let oracle = ctx.r_orbit(phi, psi);
            match chartab::reidemeister_via_characters(&ctx.table, phi, psi) {
                Ok(via_chars) if via_chars == oracle => {
                    Record::pass(P, ctx.name, ctx.pair_instance(pi, qi))
                }
                Ok(via_chars) => Record::fail(
                    P,
                    ctx.name,
                    ctx.pair_instance(pi, qi),
                    json!({ "orbits": oracle, "characters": via_chars }),
                    ctx.repro_pair(pi, qi),
                ),
                Err(e) => Record::fail(
                    P,
                    ctx.name,
                    ctx.pair_instance(pi, qi),
                    json!({ "error": e.to_string() }),
                    ctx.repro_pair(pi, qi),
                ),
            }
        })
        .collect()
}

/// |Coin(dual phi, dual psi)| = R(phi, psi) on sampled automorphism pairs.
fn dual_coincidence(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "dual-coincidence";
    let k = ctx.autos.len();
    if k == 0 {
        return Vec::new();
    }
    // Reuse the pair sample pattern, mapped into the automorphism list.
    let pairs: Vec<(usize, usize)> = ctx
        .pairs
        .iter()
        .map(|&(a, b)| (ctx.autos[a % k], ctx.autos[b % k]))
        .collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .collect();
    pairs
        .par_iter()
        .map(|&(pi, qi)| {
            let (phi, psi) = (&ctx.endos[pi], &ctx.endos[qi]);
            let oracle = ctx.r_orbit(phi, psi);
            match chartab::dual_coincidence_count(&ctx.table, phi, psi) {
                Ok(coin) if coin == oracle => {
                    Record::pass(P, ctx.name, ctx.pair_instance(pi, qi))
                }
                Ok(coin) => Record::fail(
                    P,
                    ctx.name,
                    ctx.pair_instance(pi, qi),
                    json!({ "orbits": oracle, "coincidences": coin }),
                    ctx.repro_pair(pi, qi),
                ),
                Err(e) => Record::fail(
                    P,
                    ctx.name,
                    ctx.pair_instance(pi, qi),
                    json!({ "error": e.to_string() }),
                    ctx.repro_pair(pi, qi),
                ),
            }
        })
        .collect()
}

/// R(psi) = |Fix(dual psi)| for every enumerated automorphism.
fn dual_fix(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "dual-fix";
    let failure = ctx.autos.par_iter().find_map_first(|&ai| {
        let psi = &ctx.endos[ai];
        let r = ctx.r_orbit(&ctx.id, psi);
        let perm = match chartab::dual_map(&ctx.table, psi) {
            Ok(p) => p,
            Err(e) => return Some((describe_morphism(psi), 0, 0, Some(e.to_string()))),
        };
        let fixed = perm.iter().enumerate().filter(|&(i, &img)| i == img).count();
        (fixed != r).then(|| (describe_morphism(psi), r, fixed, None))
    });
    let instance = format!("all {} automorphisms", ctx.autos.len());
    match failure {
        None => vec![Record::pass(P, ctx.name, instance)],
        Some((psi, r, fixed, error)) => vec![Record::fail(
            P,
            ctx.name,
            instance,
            json!({ "psi": psi, "reidemeister": r, "fixed_rows": fixed, "error": error }),
            ctx.repro_verify(P),
        )],
    }
}

/// R(psi) = 1 iff the twisted conjugation character is regular, over every
/// enumerated endomorphism.
fn regular_representation(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "regular-representation";
    let failure = ctx.endos.par_iter().find_map_first(|psi| {
        let r = ctx.r_orbit(&ctx.id, psi);
        let theta = chartab::theta_direct(&ctx.id, psi).expect("same group");
        let regular = chartab::is_regular_character(&theta);
        ((r == 1) != regular).then(|| (describe_morphism(psi), r, regular))
    });
    let instance = format!("all {} endomorphisms", ctx.endos.len());
    match failure {
        None => vec![Record::pass(P, ctx.name, instance)],
        Some((psi, r, regular)) => vec![Record::fail(
            P,
            ctx.name,
            instance,
            json!({ "psi": psi, "reidemeister": r, "theta_is_regular": regular }),
            ctx.repro_verify(P),
        )],
    }
}

/// If the degree pattern forbids fixed-point-free automorphisms, none of
/// the enumerated automorphisms is fixed-point free.
fn fpf_obstruction(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "fpf-obstruction";
    let obstructed = chartab::fpf_obstruction(&ctx.table);
    let fpf: Vec<String> = ctx
        .autos
        .iter()
        .map(|&i| &ctx.endos[i])
        .filter(|a| a.is_fixed_point_free())
        .map(describe_morphism)
        .collect();
    let instance = format!("obstruction={obstructed}, {} automorphisms", ctx.autos.len());
    if obstructed && !fpf.is_empty() {
        vec![Record::fail(
            P,
            ctx.name,
            instance,
            json!({ "obstructed": obstructed, "fixed_point_free": fpf }),
            ctx.repro_verify(P),
        )]
    } else {
        vec![Record::pass(P, ctx.name, instance)]
    }
}

/// R(phi,psi) = R(psi,phi) = R(iota phi, psi) = R(xi phi, xi psi).
fn symmetry_equalities(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "symmetry-equalities";
    let n = ctx.group.order();
    let iotas: Vec<Endomorphism> = (0..n.min(3))
        .map(|h| Endomorphism::inner(ctx.group, h))
        .collect();
    let xis: Vec<&Endomorphism> = ctx
        .autos
        .iter()
        .take(3)
        .map(|&i| &ctx.endos[i])
        .collect();
    if xis.is_empty() {
        return Vec::new();
    }
    ctx.pairs
        .par_iter()
        .enumerate()
        .map(|(k, &(pi, qi))| {
            let (phi, psi) = (&ctx.endos[pi], &ctx.endos[qi]);
            let iota = &iotas[k % iotas.len()];
            let xi = xis[k % xis.len()];
            let instance = format!(
                "{} iota=inner:{} xi={}",
                ctx.pair_instance(pi, qi),
                k % iotas.len(),
                describe_morphism(xi)
            );
            match twisted::check_symmetry_equalities(phi, psi, iota, xi) {
                Ok(rep) if rep.all_equal => Record::pass(P, ctx.name, instance),
                Ok(rep) => Record::fail(
                    P,
                    ctx.name,
                    instance,
                    json!({
                        "base": rep.base,
                        "swapped": rep.swapped,
                        "inner_twisted": rep.inner_twisted,
                        "aut_twisted": rep.aut_twisted,
                    }),
                    ctx.repro_pair(pi, qi),
                ),
                Err(e) => Record::fail(
                    P,
                    ctx.name,
                    instance,
                    json!({ "error": e.to_string() }),
                    ctx.repro_pair(pi, qi),
                ),
            }
        })
        .collect()
}

/// Composing with a class-preserving endomorphism on either side of either
/// argument preserves the Reidemeister number.
fn class_preserving_invariance(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "class-preserving-invariance";
    let mut xis: Vec<&Endomorphism> = Vec::new();
    for endo in &ctx.endos {
        if endo.is_class_preserving() {
            xis.push(endo);
            if xis.len() == 4 {
                break;
            }
        }
    }
    // The order-32 example group has a class-preserving automorphism that
    // is not inner; make sure such entries are exercised when present.
    if let Some(exotic) = ctx
        .endos
        .iter()
        .find(|e| e.is_bijective() && e.is_class_preserving() && !e.is_inner())
    {
        if !xis.contains(&exotic) {
            xis.push(exotic);
        }
    }
    if xis.is_empty() {
        return Vec::new();
    }
    ctx.pairs
        .par_iter()
        .enumerate()
        .map(|(k, &(pi, qi))| {
            let (phi, psi) = (&ctx.endos[pi], &ctx.endos[qi]);
            let xi = xis[k % xis.len()];
            let instance =
                format!("{} xi={}", ctx.pair_instance(pi, qi), describe_morphism(xi));
            match twisted::check_class_preserving_invariance(phi, psi, xi) {
                Ok(rep) if rep.all_equal => Record::pass(P, ctx.name, instance),
                Ok(rep) => Record::fail(
                    P,
                    ctx.name,
                    instance,
                    json!({
                        "base": rep.base,
                        "xi_phi": rep.xi_phi,
                        "phi_xi": rep.phi_xi,
                        "xi_psi": rep.xi_psi,
                        "psi_xi": rep.psi_xi,
                    }),
                    ctx.repro_pair(pi, qi),
                ),
                Err(e) => Record::fail(
                    P,
                    ctx.name,
                    instance,
                    json!({ "error": e.to_string() }),
                    ctx.repro_pair(pi, qi),
                ),
            }
        })
        .collect()
}

/// The exact class-sum formula agrees with the orbit count.
fn class_sum_formula(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "class-sum-formula";
    ctx.pairs
        .par_iter()
        .map(|&(pi, qi)| {
            let (phi, psi) = (&ctx.endos[pi], &ctx.endos[qi]);
            let oracle = ctx.r_orbit(phi, psi);
            match twisted::reidemeister_number(phi, psi, ReidemeisterMethod::ClassSum) {
                Ok(v) if v == oracle => Record::pass(P, ctx.name, ctx.pair_instance(pi, qi)),
                Ok(v) => Record::fail(
                    P,
                    ctx.name,
                    ctx.pair_instance(pi, qi),
                    json!({ "orbits": oracle, "class_sum": v }),
                    ctx.repro_pair(pi, qi),
                ),
                Err(e) => Record::fail(
                    P,
                    ctx.name,
                    ctx.pair_instance(pi, qi),
                    json!({ "error": e.to_string() }),
                    ctx.repro_pair(pi, qi),
                ),
            }
        })
        .collect()
}

/// Transporter sizes: |{g : g.x = y}| equals |Stab(x)| inside an orbit
/// (in both directions) and 0 outside.
fn transporter_lemma(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "transporter-lemma";
    ctx.pairs
        .par_iter()
        .map(|&(pi, qi)| {
            let (phi, psi) = (&ctx.endos[pi], &ctx.endos[qi]);
            let group = ctx.group;
            let action = |g: usize, x: usize| {
                group.mul(group.mul(phi.apply(g), x), group.inv(psi.apply(g)))
            };
            let partition = twisted::twisted_classes(phi, psi).expect("same group");
            let mut checked = 0;
            for c in 0..partition.count().min(3) {
                let x = partition.representatives[c];
                let stab = twisted::stabilizer(phi, psi, x).expect("same group").len();
                // A point inside the orbit, preferably distinct from x.
                let y = (0..group.order())
                    .filter(|&y| partition.class_of[y] == c)
                    .max()
                    .unwrap();
                let t_xy = twisted::transporter_count(group, action, x, y);
                let t_yx = twisted::transporter_count(group, action, y, x);
                if t_xy != stab || t_yx != stab {
                    return Record::fail(
                        P,
                        ctx.name,
                        ctx.pair_instance(pi, qi),
                        json!({ "x": x, "y": y, "stab": stab, "to": t_xy, "from": t_yx }),
                        ctx.repro_pair(pi, qi),
                    );
                }
                if let Some(z) = (0..group.order()).find(|&z| partition.class_of[z] != c) {
                    if twisted::transporter_count(group, action, x, z) != 0 {
                        return Record::fail(
                            P,
                            ctx.name,
                            ctx.pair_instance(pi, qi),
                            json!({ "x": x, "outside": z }),
                            ctx.repro_pair(pi, qi),
                        );
                    }
                }
                checked += 1;
            }
            let _ = checked;
            Record::pass(P, ctx.name, ctx.pair_instance(pi, qi))
        })
        .collect()
}

/// |Fix(Xi)| = R(psi) for phi in {id, psi, psi^2, psi^3}.
fn xi_fixed_points(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "xi-fixed-points";
    ctx.singles
        .par_iter()
        .map(|&si| {
            let psi = &ctx.endos[si];
            let r = ctx.r_orbit(&ctx.id, psi);
            let instance = format!("psi={} phi in {{id, psi, psi^2, psi^3}}", ctx.spec(si));
            for k in 0..=3usize {
                let phi = if k == 0 { ctx.id.clone() } else { psi.power(k) };
                match twisted::reidemeister_via_xi(&phi, psi) {
                    Ok(via_xi) if via_xi == r => {}
                    Ok(via_xi) => {
                        return Record::fail(
                            P,
                            ctx.name,
                            instance,
                            json!({ "k": k, "via_xi": via_xi, "orbits": r }),
                            ctx.repro_verify(P),
                        )
                    }
                    Err(e) => {
                        return Record::fail(
                            P,
                            ctx.name,
                            instance,
                            json!({ "k": k, "error": e.to_string() }),
                            ctx.repro_verify(P),
                        )
                    }
                }
            }
            Record::pass(P, ctx.name, instance)
        })
        .collect()
}

/// R(psi^k) >= R(psi) for k <= 12, with equality at exponents coprime to
/// the order of an automorphism.
fn power_inequality(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "power-inequality";
    ctx.singles
        .par_iter()
        .map(|&si| {
            let psi = &ctx.endos[si];
            let instance = format!("psi={} k<=12", ctx.spec(si));
            for k in 0..=12usize {
                match twisted::check_power_inequality(psi, k) {
                    Ok(rep) => {
                        if !rep.inequality_holds || rep.coprime_equality == Some(false) {
                            return Record::fail(
                                P,
                                ctx.name,
                                instance,
                                json!({
                                    "k": k,
                                    "r_psi": rep.r_psi,
                                    "r_power": rep.r_power,
                                    "coprime_equality": rep.coprime_equality,
                                }),
                                ctx.repro_verify(P),
                            );
                        }
                    }
                    Err(e) => {
                        return Record::fail(
                            P,
                            ctx.name,
                            instance,
                            json!({ "k": k, "error": e.to_string() }),
                            ctx.repro_verify(P),
                        )
                    }
                }
            }
            Record::pass(P, ctx.name, instance)
        })
        .collect()
}

/// The central sandwich for every central subgroup (orders <= 16), over
/// the sampled pairs that leave the subgroup invariant.
fn central_bounds(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "central-bounds";
    if ctx.group.order() > 16 {
        return Vec::new();
    }
    let subgroups = ctx.group.central_subgroups();
    subgroups
        .par_iter()
        .map(|c| {
            let instance = format!("C={:?}", c.elements());
            let bounds_ctx = match CentralBoundsContext::new(c) {
                Ok(b) => b,
                Err(e) => {
                    return Record::fail(
                        P,
                        ctx.name,
                        instance,
                        json!({ "error": e.to_string() }),
                        ctx.repro_verify(P),
                    )
                }
            };
            let mut checked = 0usize;
            let mut skipped = 0usize;
            for &(pi, qi) in &ctx.pairs {
                let (phi, psi) = (&ctx.endos[pi], &ctx.endos[qi]);
                match twisted::check_central_bounds_with(&bounds_ctx, phi, psi) {
                    Ok(rep) if rep.lower_holds && rep.upper_holds => checked += 1,
                    Ok(rep) => {
                        return Record::fail(
                            P,
                            ctx.name,
                            instance,
                            json!({
                                "phi": ctx.spec(pi),
                                "psi": ctx.spec(qi),
                                "r_full": rep.r_full,
                                "r_restriction": rep.r_restriction,
                                "r_quotient": rep.r_quotient,
                            }),
                            ctx.repro_pair(pi, qi),
                        )
                    }
                    // Pairs that do not leave C invariant are outside the
                    // hypothesis.
                    Err(reidemeister::Error::NotInvariant) => skipped += 1,
                    Err(e) => {
                        return Record::fail(
                            P,
                            ctx.name,
                            instance,
                            json!({ "error": e.to_string() }),
                            ctx.repro_verify(P),
                        )
                    }
                }
            }
            Record::pass(
                P,
                ctx.name,
                format!("{instance} ({checked} pairs checked, {skipped} not invariant)"),
            )
        })
        .collect()
}

/// The three-way equivalence of the gap conditions, exhaustively over all
/// endomorphism pairs of groups of order <= 12.
fn gap_theorem(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "gap-theorem";
    let n = ctx.group.order();
    if n == 1 || n > 12 {
        return Vec::new();
    }
    let total = ctx.endos.len() * ctx.endos.len();
    let failure = ctx.endos.par_iter().find_map_first(|phi| {
        for psi in &ctx.endos {
            match twisted::check_gap_theorem(phi, psi) {
                Ok(rep) if rep.equivalent => {}
                Ok(rep) => {
                    return Some((
                        describe_morphism(phi),
                        describe_morphism(psi),
                        json!({
                            "r": rep.r,
                            "above_gap": rep.above_gap,
                            "central_equal_pair": rep.central_equal_pair,
                            "maximal": rep.maximal,
                        }),
                    ))
                }
                Err(e) => {
                    return Some((
                        describe_morphism(phi),
                        describe_morphism(psi),
                        json!({ "error": e.to_string() }),
                    ))
                }
            }
        }
        None
    });
    let instance = format!("all {total} endomorphism pairs");
    match failure {
        None => vec![Record::pass(P, ctx.name, instance)],
        Some((phi, psi, witness)) => vec![Record::fail(
            P,
            ctx.name,
            instance,
            json!({ "phi": phi, "psi": psi, "detail": witness }),
            ctx.repro_verify(P),
        )],
    }
}

/// Odd group order forces odd Reidemeister numbers, exhaustively over all
/// endomorphism pairs.
fn parity(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "parity";
    if ctx.group.order().is_multiple_of(2) {
        return Vec::new();
    }
    let total = ctx.endos.len() * ctx.endos.len();
    let failure = ctx.endos.par_iter().find_map_first(|phi| {
        ctx.endos.iter().find_map(|psi| {
            let r = ctx.r_orbit(phi, psi);
            r.is_multiple_of(2).then(|| (describe_morphism(phi), describe_morphism(psi), r))
        })
    });
    let instance = format!("all {total} endomorphism pairs");
    match failure {
        None => vec![Record::pass(P, ctx.name, instance)],
        Some((phi, psi, r)) => vec![Record::fail(
            P,
            ctx.name,
            instance,
            json!({ "phi": phi, "psi": psi, "reidemeister": r }),
            ctx.repro_verify(P),
        )],
    }
}

/// Divisor-sum congruences for R(psi^d), n <= 12, with the Euler, Moebius,
/// and second Jordan functions.
fn gauss_congruence(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "gauss-congruence";
    let thetas = [
        ArithmeticFunction::euler_phi(),
        ArithmeticFunction::moebius(),
        ArithmeticFunction::jordan(2),
    ];
    ctx.singles
        .par_iter()
        .map(|&si| {
            let psi = &ctx.endos[si];
            let instance = format!("psi={} n<=12", ctx.spec(si));
            for theta in &thetas {
                for n in 1..=12u64 {
                    match congruence::gauss_congruence(psi, n, theta) {
                        Ok(rep) if rep.passes => {}
                        Ok(rep) => {
                            return Record::fail(
                                P,
                                ctx.name,
                                instance,
                                json!({
                                    "theta": theta.name(),
                                    "n": n,
                                    "total": rep.total,
                                }),
                                ctx.repro_verify(P),
                            )
                        }
                        Err(e) => {
                            return Record::fail(
                                P,
                                ctx.name,
                                instance,
                                json!({ "theta": theta.name(), "n": n, "error": e.to_string() }),
                                ctx.repro_verify(P),
                            )
                        }
                    }
                }
            }
            Record::pass(P, ctx.name, instance)
        })
        .collect()
}

/// R(psi^p) = R(psi) mod p for p in {2, 3, 5, 7}.
fn prime_congruence(ctx: &Ctx) -> Vec<Record> {
    const P: &str = "prime-congruence";
    ctx.singles
        .par_iter()
        .map(|&si| {
            let psi = &ctx.endos[si];
            let instance = format!("psi={} p in {{2,3,5,7}}", ctx.spec(si));
            for p in [2u64, 3, 5, 7] {
                match congruence::prime_power_congruence(psi, p) {
                    Ok(rep) if rep.passes => {}
                    Ok(rep) => {
                        return Record::fail(
                            P,
                            ctx.name,
                            instance,
                            json!({ "p": p, "r_psi": rep.r_psi, "r_psi_p": rep.r_psi_p }),
                            ctx.repro_verify(P),
                        )
                    }
                    Err(e) => {
                        return Record::fail(
                            P,
                            ctx.name,
                            instance,
                            json!({ "p": p, "error": e.to_string() }),
                            ctx.repro_verify(P),
                        )
                    }
                }
            }
            Record::pass(P, ctx.name, instance)
        })
        .collect()
}
