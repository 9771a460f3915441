//! Structured results for the non-verify subcommands; `main` renders them
//! as text or JSON.

use serde::Serialize;
use serde_json::json;

use reidemeister::chartab::{self, CharacterTableExport};
use reidemeister::congruence::{self, ArithmeticFunction, CongruenceReport, PrimeCongruenceReport};
use reidemeister::morphism::{self, Endomorphism};
use reidemeister::twisted::{self, ReidemeisterMethod, SpectrumScope};
use reidemeister::FiniteGroup;

use crate::corpus::Corpus;
use crate::sources::describe_morphism;
use crate::CliError;

#[derive(Debug, Serialize)]
pub struct GroupSummary {
    pub name: String,
    pub order: usize,
    pub exponent: u64,
    pub abelian: bool,
    pub solvable: bool,
    pub class_count: usize,
    pub class_sizes: Vec<usize>,
    pub center_order: usize,
    pub generating_set: Vec<usize>,
}

pub fn group_summary(group: &FiniteGroup) -> GroupSummary {
    let classes = group.classes();
    GroupSummary {
        name: group.name().to_string(),
        order: group.order(),
        exponent: group.exponent(),
        abelian: group.is_abelian(),
        solvable: group.is_solvable(),
        class_count: classes.count(),
        class_sizes: classes.class_sizes.clone(),
        center_order: group.center().order(),
        generating_set: group.generating_set().to_vec(),
    }
}

#[derive(Debug, Serialize)]
pub struct MethodValue {
    pub method: ReidemeisterMethod,
    pub value: usize,
}

#[derive(Debug, Serialize)]
pub struct ReidemeisterSummary {
    pub group: String,
    pub phi: String,
    pub psi: String,
    pub values: Vec<MethodValue>,
    pub agreement: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<TwistedClassSummary>>,
}

#[derive(Debug, Serialize)]
pub struct TwistedClassSummary {
    pub representative: usize,
    pub representative_name: String,
    pub size: usize,
}

pub fn reidemeister_summary(
    group: &FiniteGroup,
    phi: &Endomorphism,
    psi: &Endomorphism,
    methods: &[ReidemeisterMethod],
    list_classes: bool,
) -> Result<ReidemeisterSummary, CliError> {
    let mut values = Vec::new();
    for &method in methods {
        let value = twisted::reidemeister_number(phi, psi, method)?;
        values.push(MethodValue { method, value });
    }
    let agreement = values.windows(2).all(|w| w[0].value == w[1].value);
    let classes = if list_classes {
        let partition = twisted::twisted_classes(phi, psi)?;
        Some(
            partition
                .representatives
                .iter()
                .zip(&partition.class_sizes)
                .map(|(&rep, &size)| TwistedClassSummary {
                    representative: rep,
                    representative_name: group.element_name(rep),
                    size,
                })
                .collect(),
        )
    } else {
        None
    };
    Ok(ReidemeisterSummary {
        group: group.name().to_string(),
        phi: describe_morphism(phi),
        psi: describe_morphism(psi),
        values,
        agreement,
        classes,
    })
}

pub fn spectrum(
    group: &FiniteGroup,
    scope: SpectrumScope,
    cap: usize,
) -> Result<twisted::SpectrumResult, CliError> {
    Ok(twisted::reidemeister_spectrum(group, scope, cap)?)
}

pub fn chartable(group: &FiniteGroup, check: bool) -> Result<CharacterTableExport, CliError> {
    let table = chartab::character_table(group)?;
    if check {
        table.verify()?;
    }
    Ok(table.export())
}

#[derive(Debug, Serialize)]
pub struct FpfGroupReport {
    pub group: String,
    pub automorphisms: usize,
    pub fixed_point_free: Vec<String>,
    pub obstruction: bool,
    pub solvable: bool,
    pub consistent: bool,
}

#[derive(Debug, Serialize)]
pub struct FpfReport {
    pub groups: Vec<FpfGroupReport>,
    pub consistent: bool,
}

/// Fixed-point-free automorphisms across a corpus, with the solvability
/// and obstruction cross-checks.
pub fn fpf_report(corpus: &Corpus) -> Result<FpfReport, CliError> {
    let mut groups = Vec::new();
    for entry in corpus.active_entries() {
        let group = &entry.group;
        let autos: Vec<Endomorphism> = morphism::automorphisms(group).collect();
        let fpf: Vec<String> = autos
            .iter()
            .filter(|a| a.is_fixed_point_free())
            .map(describe_morphism)
            .collect();
        let table = chartab::character_table(group)?;
        let obstruction = chartab::fpf_obstruction(&table);
        let solvable = group.is_solvable();
        // A group with a fixed-point-free automorphism must be solvable,
        // and an obstructed group must have none.
        let consistent = (fpf.is_empty() || solvable) && !(obstruction && !fpf.is_empty());
        groups.push(FpfGroupReport {
            group: entry.name.clone(),
            automorphisms: autos.len(),
            fixed_point_free: fpf,
            obstruction,
            solvable,
            consistent,
        });
    }
    let consistent = groups.iter().all(|g| g.consistent);
    Ok(FpfReport { groups, consistent })
}

#[derive(Debug, Serialize)]
pub struct CongruenceSummary {
    pub group: String,
    pub psi: String,
    pub gauss: Vec<CongruenceReport>,
    pub prime: Vec<PrimeCongruenceReport>,
    pub all_pass: bool,
}

pub fn congruence_summary(
    group: &FiniteGroup,
    psi: &Endomorphism,
    n_max: u64,
    primes: &[u64],
) -> Result<CongruenceSummary, CliError> {
    let thetas = [
        ArithmeticFunction::euler_phi(),
        ArithmeticFunction::moebius(),
        ArithmeticFunction::jordan(2),
    ];
    let mut gauss = Vec::new();
    for theta in &thetas {
        for n in 1..=n_max {
            gauss.push(congruence::gauss_congruence(psi, n, theta)?);
        }
    }
    let mut prime = Vec::new();
    for &p in primes {
        prime.push(congruence::prime_power_congruence(psi, p)?);
    }
    let all_pass = gauss.iter().all(|r| r.passes) && prime.iter().all(|r| r.passes);
    Ok(CongruenceSummary {
        group: group.name().to_string(),
        psi: describe_morphism(psi),
        gauss,
        prime,
        all_pass,
    })
}

/// Human-readable rendering of a character table export.
pub fn render_chartable(export: &CharacterTableExport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "character table of {} (order {}, conductor {})\n",
        export.group, export.order, export.conductor
    ));
    out.push_str(&format!(
        "classes: representatives {:?}, sizes {:?}\n",
        export.class_representatives, export.class_sizes
    ));
    for (i, row) in export.rows.iter().enumerate() {
        let values: Vec<String> = (0..export.class_sizes.len())
            .map(|c| {
                reidemeister::chartab::Cyclotomic::from_coeff_strings(
                    export.conductor,
                    &row.values[c],
                )
                .map(|v| v.to_string())
                .unwrap_or_else(|| "?".into())
            })
            .collect();
        out.push_str(&format!("chi_{i} (deg {}): {}\n", row.degree, values.join(", ")));
    }
    out
}

pub fn render_fpf(report: &FpfReport) -> String {
    let mut out = String::new();
    for g in &report.groups {
        let status = if g.consistent { "ok" } else { "INCONSISTENT" };
        out.push_str(&format!(
            "{}: {} automorphisms, {} fixed-point-free, obstruction={}, solvable={} [{status}]\n",
            g.group,
            g.automorphisms,
            g.fixed_point_free.len(),
            g.obstruction,
            g.solvable
        ));
        for spec in &g.fixed_point_free {
            out.push_str(&format!("    fpf: {spec}\n"));
        }
    }
    out
}

pub fn to_json_value<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).unwrap_or_else(|e| json!({ "error": e.to_string() }))
}
