use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use wordmap::abelian::run_theorem3;
use wordmap::action::{tuple_orbits, TupleDomain};
use wordmap::catalog::{build, GroupSpec};
use wordmap::imaging::{
    check_closure, compute_image, image_catalog, ClosureVerdict, ImageReport, Strategy,
    WordSource, DEFAULT_TUPLE_CAP,
};
use wordmap::theorem2::{run_theorem2, WORD};
use wordmap::{CatalogGroup, Error, ErrorKind, FiniteGroup, Permutation, Word};

mod render;

use render::{envelope, render, Output};

#[derive(Parser, Debug)]
#[command(name = "wordmap", version, about = "Word maps and their images over finite permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value = "text")]
    output: Output,
    /// Worker threads; 0 lets the thread pool decide.
    #[arg(long, global = true, env = "WORDMAP_WORKERS", default_value_t = 0)]
    workers: usize,
    /// Cap on tuples (or orbit representatives) evaluated.
    #[arg(long, global = true, default_value_t = DEFAULT_TUPLE_CAP)]
    max_tuples: u64,
    /// Seed for randomized word searches.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// No progress lines on stderr.
    #[arg(long, short, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Image of a word map, with order spectrum, classes and closure.
    Image(ImageArgs),
    /// Elements of the image whose inverses are not in the image.
    Chirality(ImageArgs),
    /// The M11 chirality witness, checked step by step.
    Theorem2,
    /// The C12 endomorphism-closed subset that is no word image.
    Theorem3,
    /// Number of automorphism orbits on generating n-tuples.
    Dn {
        #[arg(long, value_parser = parse_group)]
        group: GroupSpec,
        #[arg(short = 'n', default_value_t = 2)]
        n: usize,
    },
    /// Cogenerator search for every nontrivial element.
    Cogen {
        #[arg(long, value_parser = parse_group)]
        group: GroupSpec,
    },
    /// Distinct images of short two-variable words.
    Catalog {
        #[arg(long, value_parser = parse_group)]
        group: GroupSpec,
        /// Longest reduced word enumerated.
        #[arg(long, default_value_t = 3)]
        max_length: usize,
        /// Sample this many random words instead of enumerating.
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 10_000)]
        max_words: usize,
    },
    /// Automorphism and endomorphism closure of a subset.
    Closure {
        #[arg(long, value_parser = parse_group)]
        group: GroupSpec,
        /// Use the image of this word as the subset.
        #[arg(long, conflicts_with = "set", required_unless_present = "set")]
        set_from_image: Option<String>,
        /// Explicit subset: cycle strings separated by ';'.
        #[arg(long)]
        set: Option<String>,
        #[arg(long, value_enum, default_value = "orbit")]
        strategy: StrategyArg,
    },
}

#[derive(Args, Debug)]
struct ImageArgs {
    #[arg(long, value_parser = parse_group)]
    group: GroupSpec,
    #[arg(long)]
    word: String,
    #[arg(long, value_enum, default_value = "brute")]
    strategy: StrategyArg,
    /// Restrict every variable to elements of these orders (comma separated).
    #[arg(long, value_delimiter = ',')]
    restrict_orders: Vec<u64>,
}

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
enum StrategyArg {
    Brute,
    Orbit,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Brute => Strategy::Brute,
            StrategyArg::Orbit => Strategy::Orbit,
        }
    }
}

fn parse_group(s: &str) -> Result<GroupSpec, Error> {
    s.parse()
}

/// Failure modes mapped onto exit codes.
enum Failure {
    /// A checked assertion did not hold; the report is still printed.
    Assertion(Value),
    Library(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Library(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.workers > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.workers).build_global() {
            eprintln!("error: cannot start {} workers: {e}", cli.workers);
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(doc) => {
            print!("{}", render(&doc, cli.output));
            ExitCode::SUCCESS
        }
        Err(Failure::Assertion(doc)) => {
            print!("{}", render(&doc, cli.output));
            ExitCode::from(1)
        }
        Err(Failure::Library(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.kind() {
                ErrorKind::Input => 2,
                ErrorKind::ResourceCap => 3,
            })
        }
    }
}

fn progress(cli: &Cli, msg: impl AsRef<str>) {
    if !cli.quiet {
        eprintln!("wordmap: {}", msg.as_ref());
    }
}

fn load(cli: &Cli, spec: GroupSpec) -> Result<CatalogGroup, Error> {
    progress(cli, format!("building {spec}"));
    build(spec)
}

fn run(cli: &Cli) -> Result<Value, Failure> {
    match &cli.command {
        Command::Image(a) => cmd_image(cli, a, false),
        Command::Chirality(a) => cmd_image(cli, a, true),
        Command::Theorem2 => cmd_theorem2(cli),
        Command::Theorem3 => cmd_theorem3(cli),
        Command::Dn { group, n } => cmd_dn(cli, *group, *n),
        Command::Cogen { group } => cmd_cogen(cli, *group),
        Command::Catalog {
            group,
            max_length,
            samples,
            max_words,
        } => cmd_catalog(cli, *group, *max_length, *samples, *max_words),
        Command::Closure {
            group,
            set_from_image,
            set,
            strategy,
        } => cmd_closure(cli, *group, set_from_image.as_deref(), set.as_deref(), *strategy),
    }
}

fn group_header(g: &FiniteGroup) -> Value {
    let (order, class_sizes) = g.fingerprint();
    json!({
        "name": g.name(),
        "degree": g.degree(),
        "generators": g.generators().iter().map(ToString::to_string).collect::<Vec<_>>(),
        "order": order,
        "class_sizes": class_sizes,
    })
}

/// Sorted cycle strings.
fn element_list(g: &FiniteGroup, set: &[usize]) -> Vec<String> {
    let mut v: Vec<String> = set.iter().map(|&e| g.element(e).to_string()).collect();
    v.sort();
    v
}

fn element_rows(g: &FiniteGroup, set: &[usize]) -> Vec<Value> {
    let classes = g.conjugacy_classes();
    let mut rows: Vec<(String, Value)> = set
        .iter()
        .map(|&e| {
            let s = g.element(e).to_string();
            let rep = classes.representatives[classes.class_of[e]];
            (
                s.clone(),
                json!({
                    "element": s,
                    "order": g.element_order(e),
                    "class_representative": g.element(rep).to_string(),
                }),
            )
        })
        .collect();
    rows.sort_by(|a, b| a.0.cmp(&b.0));
    rows.into_iter().map(|r| r.1).collect()
}

fn big(n: u128) -> Value {
    u64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

fn closure_json(g: &FiniteGroup, c: &ClosureVerdict) -> Value {
    json!({
        "aut_closed": c.aut_closed,
        "endo_closed": c.endo_closed,
        "action_scope": c.action_scope,
        "violation": c.violation.as_ref().map(|v| json!({
            "element": g.element(v.element).to_string(),
            "image": g.element(v.image).to_string(),
            "by": v.by,
        })),
    })
}

fn parse_word(text: &str) -> Result<Word, Error> {
    Word::parse(text)
}

fn cmd_image(cli: &Cli, a: &ImageArgs, chirality_only: bool) -> Result<Value, Failure> {
    let cg = load(cli, a.group)?;
    let g = &cg.group;
    let word = parse_word(&a.word)?;
    let domain = if a.restrict_orders.is_empty() {
        None
    } else {
        let orders = a.restrict_orders.clone();
        Some(TupleDomain::filtered(g, word.arity(), move |p| orders.contains(&p.order())))
    };
    progress(cli, format!("evaluating {word} ({} strategy)", Strategy::from(a.strategy).label()));
    let image = compute_image(&word, &cg.action, domain.as_ref(), a.strategy.into(), cli.max_tuples)?;
    let report = ImageReport::new(&word, &cg.action, &image)?;
    let result = if chirality_only {
        let mut spectrum = std::collections::BTreeMap::new();
        for &e in &report.chirality_witnesses {
            *spectrum.entry(g.element_order(e)).or_insert(0usize) += 1;
        }
        json!({
            "chiral": !report.chirality_witnesses.is_empty(),
            "image_size": report.image.len(),
            "witness_count": report.chirality_witnesses.len(),
            "witness_order_spectrum": spectrum,
            "witnesses": element_list(g, &report.chirality_witnesses),
            "element_rows": element_rows(g, &report.chirality_witnesses),
        })
    } else {
        json!({
            "strategy": report.strategy.label(),
            "domain_filtered": report.domain_filtered,
            "restrict_orders": a.restrict_orders,
            "tuple_space": big(report.tuple_space),
            "tuples_evaluated": report.tuples_evaluated,
            "size": report.image.len(),
            "contains_identity": image.contains(g.identity_index()),
            "order_spectrum": report.order_spectrum,
            "full_classes": element_list(g, &report.class_decomposition),
            "closure": closure_json(g, &report.closure),
            "chirality_witnesses": element_list(g, &report.chirality_witnesses),
            "elements": element_list(g, &report.image),
            "element_rows": element_rows(g, &report.image),
        })
    };
    Ok(envelope(
        if chirality_only { "chirality" } else { "image" },
        Some(group_header(g)),
        Some(word.to_string()),
        result,
    ))
}

fn cmd_theorem2(cli: &Cli) -> Result<Value, Failure> {
    progress(cli, "running the M11 chirality check");
    let m11 = build(GroupSpec::Mathieu11)?;
    let v = run_theorem2()?;
    let passed = v.passed;
    let doc = envelope(
        "theorem2",
        Some(group_header(&m11.group)),
        Some(Word::parse(WORD)?.with_arity(2).to_string()),
        json!({
            "verdict": if passed { "PASS" } else { "FAIL" },
            "details": serde_json::to_value(&v).expect("verdict serializes"),
        }),
    );
    if passed {
        Ok(doc)
    } else {
        Err(Failure::Assertion(doc))
    }
}

fn cmd_theorem3(cli: &Cli) -> Result<Value, Failure> {
    progress(cli, "running the C12 non-realizability check");
    let c12 = build(GroupSpec::Cyclic(12))?;
    let v = run_theorem3()?;
    let passed = v.passed;
    let doc = envelope(
        "theorem3",
        Some(group_header(&c12.group)),
        None,
        json!({
            "verdict": if passed { "PASS" } else { "FAIL" },
            "details": serde_json::to_value(&v).expect("verdict serializes"),
        }),
    );
    if passed {
        Ok(doc)
    } else {
        Err(Failure::Assertion(doc))
    }
}

fn cmd_dn(cli: &Cli, spec: GroupSpec, n: usize) -> Result<Value, Failure> {
    let cg = load(cli, spec)?;
    let g = &cg.group;
    progress(cli, format!("orbits on generating {n}-tuples"));
    let orbits = tuple_orbits(&cg.action, &TupleDomain::full(g, n), true, cli.max_tuples)?;
    let generating: u64 = orbits.orbits.iter().map(|o| o.size).sum();
    let reps: Vec<Vec<String>> = orbits
        .orbits
        .iter()
        .map(|o| o.representative.iter().map(|&e| g.element(e).to_string()).collect())
        .collect();
    Ok(envelope(
        "dn",
        Some(group_header(g)),
        None,
        json!({
            "n": n,
            "d_n": orbits.count(),
            "generating_tuples": generating,
            "ambient": cg.action.ambient().name(),
            "ambient_order": cg.action.ambient().order(),
            "action_scope": cg.action.scope().label(),
            "representatives": reps,
        }),
    ))
}

fn cmd_cogen(cli: &Cli, spec: GroupSpec) -> Result<Value, Failure> {
    let cg = load(cli, spec)?;
    let g = &cg.group;
    progress(cli, format!("cogenerator search over {} elements", g.order() - 1));
    let survey = g.cogenerator_survey();
    let missing: Vec<usize> = survey.iter().filter(|s| s.1.is_none()).map(|s| s.0).collect();
    let found = survey.len() - missing.len();
    let summary = if missing.is_empty() {
        format!("all {found} nontrivial elements have a cogenerator")
    } else {
        format!("{} of {} nontrivial elements have no cogenerator", missing.len(), survey.len())
    };
    let simple = g.is_simple();
    let doc = envelope(
        "cogen",
        Some(group_header(g)),
        None,
        json!({
            "summary": summary,
            "nontrivial_elements": survey.len(),
            "with_cogenerator": found,
            "simple": simple,
            "without_cogenerator": element_list(g, &missing),
        }),
    );
    // every nontrivial element of a finite simple group has a cogenerator
    if simple && !missing.is_empty() {
        Err(Failure::Assertion(doc))
    } else {
        Ok(doc)
    }
}

fn cmd_catalog(
    cli: &Cli,
    spec: GroupSpec,
    max_length: usize,
    samples: Option<usize>,
    max_words: usize,
) -> Result<Value, Failure> {
    let cg = load(cli, spec)?;
    let g = &cg.group;
    let source = match samples {
        Some(samples) => WordSource::Random {
            samples,
            max_length,
            seed: cli.seed,
        },
        None => WordSource::Exhaustive { max_length },
    };
    progress(cli, "cataloguing word images");
    let cat = image_catalog(&cg.action, source, max_words, cli.max_tuples)?;
    let entries: Vec<Value> = cat
        .entries
        .iter()
        .map(|e| {
            let mut spectrum = std::collections::BTreeMap::new();
            for &x in &e.image {
                *spectrum.entry(g.element_order(x)).or_insert(0usize) += 1;
            }
            json!({
                "word": e.word,
                "size": e.image.len(),
                "contains_identity": e.contains_identity,
                "order_spectrum": spectrum,
                "closure": closure_json(g, &e.closure),
            })
        })
        .collect();
    Ok(envelope(
        "catalog",
        Some(group_header(g)),
        None,
        json!({
            "source": if samples.is_some() { "random" } else { "exhaustive" },
            "max_length": max_length,
            "seed": samples.map(|_| cli.seed),
            "words_tried": cat.words_tried,
            "complete": cat.complete,
            "distinct_images": entries.len(),
            "entries": entries,
        }),
    ))
}

fn cmd_closure(
    cli: &Cli,
    spec: GroupSpec,
    from_image: Option<&str>,
    set: Option<&str>,
    strategy: StrategyArg,
) -> Result<Value, Failure> {
    let cg = load(cli, spec)?;
    let g = &cg.group;
    let (word, members) = match (from_image, set) {
        (Some(text), _) => {
            let word = parse_word(text)?;
            progress(cli, format!("evaluating {word}"));
            let image = compute_image(&word, &cg.action, None, strategy.into(), cli.max_tuples)?;
            (Some(word.to_string()), image.members)
        }
        (None, Some(text)) => {
            let mut idx = text
                .split(';')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| g.require(&Permutation::parse_cycles(g.degree(), s)?))
                .collect::<Result<Vec<_>, Error>>()?;
            idx.sort_unstable();
            idx.dedup();
            (None, idx)
        }
        (None, None) => unreachable!("clap requires one of the two"),
    };
    let verdict = check_closure(&members, &cg.action)?;
    Ok(envelope(
        "closure",
        Some(group_header(g)),
        word,
        json!({
            "set_size": members.len(),
            "contains_identity": members.binary_search(&g.identity_index()).is_ok(),
            "closure": closure_json(g, &verdict),
            "elements": element_list(g, &members),
        }),
    ))
}
