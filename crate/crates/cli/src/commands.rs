use std::fmt::{self, Write as _};
use std::fs;
use std::io::Read;
use std::path::Path;
use std::time::Instant;

use cliquemdl::mdl_test::shipped_integer_codes;
use cliquemdl::rng::derive_seed;
use cliquemdl::{
    completion_gains, k_alpha, parse_edge_list, test_best_clique, Bits, CliqueCode,
    CliqueCodeParts, CompletionGain, Graph, SearchConfig, Strategy, TailCheck, TailEstimate,
    TestResult, VertexSubset,
};
use serde::Serialize;

use crate::labels::{parse_labeled_edge_list, Labels};
use crate::report::{
    digest, elapsed_ms, table, Format, RenderText, Report, SCHEMA, SCHEMA_VERSION,
};
use crate::{CodelengthArgs, Command, GraphInput, McVerifyArgs, SampleArgs, SearchKind, TestArgs};

pub const MULTI_MODEL_WARNING: &str =
    "warning: testing multiple null models requires multiple-testing correction; none is applied";

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Input(String),
}

impl Failure {
    pub fn exit_code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Input(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(msg) | Failure::Input(msg) => f.write_str(msg),
        }
    }
}

fn input_error(e: impl fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn usage_error(e: impl fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

pub struct Outcome {
    pub output: String,
    pub gate_failed: bool,
}

impl Outcome {
    fn ok(output: String) -> Self {
        Self {
            output,
            gate_failed: false,
        }
    }
}

pub fn dispatch(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Codelength(args) => codelength(args).map(Outcome::ok),
        Command::Test(args) => test(args).map(Outcome::ok),
        Command::McVerify(args) => mc_verify(args),
        Command::Sample(args) => sample(args).map(Outcome::ok),
        Command::Schema => Ok(Outcome::ok(SCHEMA.to_string())),
    }
}

/// A loaded graph plus what the report needs to know about its source.
struct LoadedGraph {
    graph: Graph,
    labels: Option<Labels>,
    digest: String,
}

impl LoadedGraph {
    fn load(input: &GraphInput) -> Result<Self, Failure> {
        let bytes = if input.file.as_os_str() == "-" {
            let mut buf = Vec::new();
            std::io::stdin()
                .read_to_end(&mut buf)
                .map_err(input_error)?;
            buf
        } else {
            fs::read(&input.file)
                .map_err(|e| Failure::Input(format!("{}: {e}", input.file.display())))?
        };
        let text = std::str::from_utf8(&bytes)
            .map_err(|_| Failure::Input(format!("{}: not UTF-8 text", input.file.display())))?;
        let (graph, labels) = if input.labels {
            let (g, l) = parse_labeled_edge_list(text).map_err(input_error)?;
            (g, Some(l))
        } else {
            (parse_edge_list(text).map_err(input_error)?, None)
        };
        Ok(Self {
            graph,
            labels,
            digest: digest(&bytes),
        })
    }

    /// Parses `--clique`: node indices, or labels with `--labels`.
    fn subset(&self, list: &str) -> Result<VertexSubset, Failure> {
        let members = list
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|token| match &self.labels {
                Some(labels) => labels
                    .get(token)
                    .ok_or_else(|| Failure::Input(format!("unknown node label '{token}'"))),
                None => token.parse::<usize>().map_err(|_| {
                    Failure::Input(format!("malformed node index '{token}' in --clique"))
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        let subset = VertexSubset::from_unsorted(members).map_err(input_error)?;
        self.graph.require_clique(&subset).map_err(input_error)?;
        Ok(subset)
    }

    fn names(&self, subset: &VertexSubset) -> Option<Vec<String>> {
        self.labels.as_ref().map(|l| l.names_of(subset))
    }
}

fn emit<T: Serialize + RenderText>(reports: &[Report<T>], format: Format) -> String {
    match (format, reports) {
        (Format::Json, [single]) => single.render(format) + "\n",
        (Format::Json, many) => {
            serde_json::to_string_pretty(many).expect("reports always serialize") + "\n"
        }
        (Format::Text, many) => many
            .iter()
            .map(|r| r.render(format))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

#[derive(Debug, Serialize)]
struct CompleteCode {
    n_code: String,
    m_code: Option<String>,
    complete_bits: Bits,
}

#[derive(Debug, Serialize)]
struct CliqueBreakdown {
    members: VertexSubset,
    labels: Option<Vec<String>>,
    parts: CliqueCodeParts,
    delta_bits: f64,
}

#[derive(Debug, Serialize)]
struct CodelengthResult {
    n: usize,
    m: usize,
    null_bound_bits: Bits,
    completions: Vec<CompleteCode>,
    clique: Option<CliqueBreakdown>,
}

impl RenderText for CodelengthResult {
    fn render_text(&self, out: &mut String) {
        let _ = writeln!(out, "graph    n = {}, m = {}", self.n, self.m);
        let _ = writeln!(out, "bound    {}", self.null_bound_bits);
        let rows: Vec<Vec<String>> = self
            .completions
            .iter()
            .map(|c| {
                vec![
                    c.n_code.clone(),
                    c.m_code.clone().unwrap_or_else(|| "-".into()),
                    format!("{:.6}", c.complete_bits.0),
                ]
            })
            .collect();
        table(out, &["n code", "m code", "complete bits"], &rows);
        if let Some(c) = &self.clique {
            let _ = writeln!(out, "clique   {:?}", c.members.as_slice());
            let _ = writeln!(out, "  size       {}", c.parts.size_bits);
            let _ = writeln!(out, "  subset     {}", c.parts.subset_bits);
            let _ = writeln!(out, "  remainder  {}", c.parts.remainder_bits);
            let _ = writeln!(out, "  total      {}", c.parts.total);
            let _ = writeln!(out, "  delta      {:.6} bits", c.delta_bits);
        }
    }
}

fn codelength(args: CodelengthArgs) -> Result<String, Failure> {
    let loaded = LoadedGraph::load(&args.input)?;
    let clique = args
        .clique
        .as_deref()
        .map(|list| loaded.subset(list))
        .transpose()?;
    let graph = &loaded.graph;
    let mut reports = Vec::new();
    for model in args.model.0 {
        let start = Instant::now();
        let completions = shipped_integer_codes(graph.n())
            .into_iter()
            .map(|(n_code, m_code)| {
                let m_code = model.uses_edge_count().then_some(m_code);
                let complete_bits = model
                    .complete_codelength(graph, n_code, m_code)
                    .map_err(input_error)?;
                Ok(CompleteCode {
                    n_code: n_code.to_string(),
                    m_code: m_code.map(|c| c.to_string()),
                    complete_bits,
                })
            })
            .collect::<Result<Vec<_>, Failure>>()?;
        let clique = clique
            .as_ref()
            .map(|c| -> Result<CliqueBreakdown, Failure> {
                let code = CliqueCode::new(model);
                Ok(CliqueBreakdown {
                    members: c.clone(),
                    labels: loaded.names(c),
                    parts: code.codelength(graph, c).map_err(input_error)?,
                    delta_bits: code.delta(graph, c).map_err(input_error)?,
                })
            })
            .transpose()?;
        let result = CodelengthResult {
            n: graph.n(),
            m: graph.m(),
            null_bound_bits: model.bound_codelength(graph),
            completions,
            clique,
        };
        reports.push(Report {
            schema_version: SCHEMA_VERSION,
            command: "codelength",
            input_digest: Some(loaded.digest.clone()),
            model: model.to_string(),
            result,
            timing_ms: elapsed_ms(start),
        });
    }
    Ok(emit(&reports, args.format))
}

#[derive(Debug, Serialize)]
struct TestOutcome {
    #[serde(flatten)]
    test: TestResult,
    clique_labels: Option<Vec<String>>,
    search: &'static str,
    seeds: Option<usize>,
    seed: u64,
    candidates: usize,
    completions: Vec<CompletionGain>,
}

impl RenderText for TestOutcome {
    fn render_text(&self, out: &mut String) {
        let t = &self.test;
        let _ = writeln!(
            out,
            "search   {} ({} candidates)",
            self.search, self.candidates
        );
        let _ = writeln!(
            out,
            "clique   {:?} (k = {})",
            t.clique.as_slice(),
            t.clique.len()
        );
        if let Some(labels) = &self.clique_labels {
            let _ = writeln!(out, "labels   {}", labels.join(","));
        }
        let _ = writeln!(out, "bound    {}", t.null_bound_bits);
        let _ = writeln!(out, "code     {}", t.alt_bits);
        let _ = writeln!(out, "delta    {:.6} bits", t.delta_bits);
        let _ = writeln!(out, "k_alpha  {} (alpha = {})", t.k_alpha_bits, t.alpha);
        let _ = writeln!(out, "bound p  {:.6e}", t.significance_bound);
        let _ = writeln!(out, "reject   {}", t.reject);
    }
}

fn test(args: TestArgs) -> Result<String, Failure> {
    k_alpha(args.alpha).map_err(usage_error)?;
    if args.seeds == Some(0) || args.max_exact_n == 0 {
        return Err(Failure::Usage(
            "--seeds and --max-exact-n must be at least 1".into(),
        ));
    }
    if args.model.0.len() > 1 {
        eprintln!("{MULTI_MODEL_WARNING}");
    }
    let loaded = LoadedGraph::load(&args.input)?;
    let graph = &loaded.graph;

    let search_start = Instant::now();
    let config = SearchConfig {
        strategy: match args.search {
            SearchKind::Greedy => Strategy::Greedy,
            SearchKind::Exact => Strategy::Exact,
        },
        seeds: args.seeds.unwrap_or(graph.n().max(1)),
        max_exact_n: args.max_exact_n,
    };
    let candidates = config.candidates(graph, args.seed).map_err(input_error)?;
    let search_ms = elapsed_ms(search_start);

    let mut reports = Vec::new();
    for model in args.model.0 {
        let start = Instant::now();
        let result =
            test_best_clique(graph, &candidates, model, args.alpha).map_err(input_error)?;
        let completions = completion_gains(graph, &result).map_err(input_error)?;
        let outcome = TestOutcome {
            clique_labels: loaded.names(&result.clique),
            test: result,
            search: match args.search {
                SearchKind::Greedy => "greedy",
                SearchKind::Exact => "exact",
            },
            seeds: (args.search == SearchKind::Greedy).then_some(config.seeds),
            seed: args.seed,
            candidates: candidates.len(),
            completions,
        };
        reports.push(Report {
            schema_version: SCHEMA_VERSION,
            command: "test",
            input_digest: Some(loaded.digest.clone()),
            model: model.to_string(),
            result: outcome,
            timing_ms: search_ms + elapsed_ms(start),
        });
    }
    Ok(emit(&reports, args.format))
}

#[derive(Debug, Serialize)]
struct VerifyOutcome {
    n: usize,
    m: Option<u64>,
    samples: usize,
    base_seed: u64,
    greedy_seeds: usize,
    pass: bool,
    rows: Vec<TailEstimate>,
}

impl RenderText for VerifyOutcome {
    fn render_text(&self, out: &mut String) {
        let m = self.m.map(|m| format!(", m = {m}")).unwrap_or_default();
        let _ = writeln!(
            out,
            "samples  {} (n = {}{m}, seed = {})",
            self.samples, self.n, self.base_seed
        );
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| {
                vec![
                    format!("{}", r.k),
                    format!("{:.6}", r.empirical),
                    format!("{:.6}", r.bound),
                    format!("{:.6}", r.std_error),
                    if r.within_bound { "pass" } else { "FAIL" }.to_string(),
                ]
            })
            .collect();
        table(
            out,
            &["k", "empirical", "2^-k", "std_error", "status"],
            &rows,
        );
        let _ = writeln!(out, "gate     {}", if self.pass { "pass" } else { "FAIL" });
    }
}

fn mc_verify(args: McVerifyArgs) -> Result<Outcome, Failure> {
    if args.greedy_seeds == Some(0) {
        return Err(Failure::Usage("--greedy-seeds must be at least 1".into()));
    }
    let mut reports = Vec::new();
    let mut gate_failed = false;
    for model in args.model.0 {
        let start = Instant::now();
        let mut check = TailCheck::new(model, args.n, args.samples, args.ks.0.clone(), args.seed);
        if let Some(m) = args.m {
            if !model.uses_edge_count() {
                return Err(Failure::Usage(format!(
                    "--m does not apply to model {model}"
                )));
            }
            check.m = Some(m);
        }
        if let Some(seeds) = args.greedy_seeds {
            check.greedy_seeds = seeds;
        }
        let rows = check.run().map_err(usage_error)?;
        let pass = gate_passes(&rows);
        gate_failed |= !pass;
        reports.push(Report {
            schema_version: SCHEMA_VERSION,
            command: "mc-verify",
            input_digest: None,
            model: model.to_string(),
            result: VerifyOutcome {
                n: check.n,
                m: check.m,
                samples: check.samples,
                base_seed: check.base_seed,
                greedy_seeds: check.greedy_seeds,
                pass,
                rows,
            },
            timing_ms: elapsed_ms(start),
        });
    }
    Ok(Outcome {
        output: emit(&reports, args.format),
        gate_failed,
    })
}

fn gate_passes(rows: &[TailEstimate]) -> bool {
    rows.iter().all(|r| r.within_bound)
}

#[derive(Debug, Serialize)]
struct SampleFile {
    file: String,
    seed: u64,
    edges: usize,
    digest: String,
}

#[derive(Debug, Serialize)]
struct SampleOutcome {
    n: usize,
    m: Option<u64>,
    count: usize,
    seed: u64,
    files: Vec<SampleFile>,
}

impl RenderText for SampleOutcome {
    fn render_text(&self, out: &mut String) {
        let _ = writeln!(out, "wrote    {} graphs (n = {})", self.count, self.n);
        let rows: Vec<Vec<String>> = self
            .files
            .iter()
            .map(|f| vec![f.file.clone(), f.edges.to_string()])
            .collect();
        table(out, &["file", "edges"], &rows);
    }
}

fn sample(args: SampleArgs) -> Result<String, Failure> {
    let start = Instant::now();
    let pairs = cliquemdl::pair_count(args.n);
    match (args.model.uses_edge_count(), args.m) {
        (true, None) => return Err(Failure::Usage("--m is required for gnm".into())),
        (false, Some(_)) => {
            return Err(Failure::Usage(format!(
                "--m does not apply to model {}",
                args.model
            )))
        }
        (true, Some(m)) if m > pairs => {
            return Err(Failure::Usage(format!(
                "m = {m} exceeds the {pairs} node pairs of n = {}",
                args.n
            )))
        }
        _ => {}
    }
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| Failure::Input(format!("{}: {e}", args.out_dir.display())))?;
    let width = args.count.saturating_sub(1).to_string().len().max(5);
    let mut files = Vec::with_capacity(args.count);
    for i in 0..args.count {
        let seed = derive_seed(args.seed, i as u64);
        let graph = args
            .model
            .sample(args.n, args.m, seed)
            .map_err(usage_error)?;
        let text = graph.to_edge_list();
        let name = format!("sample_{i:0width$}.el");
        write_file(&args.out_dir.join(&name), &text)?;
        files.push(SampleFile {
            file: name,
            seed,
            edges: graph.m(),
            digest: digest(text.as_bytes()),
        });
    }
    let report = Report {
        schema_version: SCHEMA_VERSION,
        command: "sample",
        input_digest: None,
        model: args.model.to_string(),
        result: SampleOutcome {
            n: args.n,
            m: args.m,
            count: args.count,
            seed: args.seed,
            files,
        },
        timing_ms: elapsed_ms(start),
    };
    Ok(emit(std::slice::from_ref(&report), args.format))
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}
