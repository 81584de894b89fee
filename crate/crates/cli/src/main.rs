use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qbundle::complexes::{associahedron, kn_complex, ComplexJson, SimplicialComplex, VertexLabel};
use qbundle::cotangent::{check_normal_form_lemma, lemma_worked_example, matches_n5_pattern, t1_slice, t1_window, JnContext};
use qbundle::grassmann::{
    circular_failures, degree_check, i2n, jn, quadruples, replay_cases, vanishing_oracle, verify, OrderKind,
};
use qbundle::hull::{lower_facets, reflexivity_check, replay_example, triangulation_complex, LatticePolytope};
use qbundle::syzygies::verify_generation;

/// Groebner, syzygy, deformation and polytope checks for the total space of
/// the dual quotient bundle on G(2,n).
#[derive(Parser)]
#[command(name = "qbundle", version)]
struct Cli {
    /// Machine-readable output (no timings).
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build simplicial complexes.
    Complex {
        #[command(subcommand)]
        cmd: ComplexCmd,
    },
    /// Print generators of I_{2,n} or J_n.
    Ideal {
        #[command(subcommand)]
        cmd: IdealCmd,
    },
    /// Groebner basis checks.
    Groebner {
        #[command(subcommand)]
        cmd: GroebnerCmd,
    },
    /// Degree: closed formula, facet count and Hilbert polynomial.
    Degree(NArg),
    /// Syzygy families and generation.
    Syzygy {
        #[command(subcommand)]
        cmd: SyzygyCmd,
    },
    /// Graded pieces of T^1.
    T1 {
        #[command(subcommand)]
        cmd: T1Cmd,
    },
    /// Normal-form lemma.
    Lemma {
        #[command(subcommand)]
        cmd: LemmaCmd,
    },
    /// Lower hulls and reflexive polytopes.
    Hull {
        #[command(subcommand)]
        cmd: HullCmd,
    },
    /// Evaluate J_n at random points of the bundle.
    Oracle {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(Args)]
struct NArg {
    #[arg(long)]
    n: usize,
}

#[derive(Subcommand)]
enum ComplexCmd {
    /// Build a complex.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
}

#[derive(Subcommand)]
enum BuildKind {
    /// Associahedron complex of the n-gon.
    Assoc(NArg),
    /// The complex K_n.
    Kn(NArg),
    /// Join of two complexes read from files.
    Join {
        #[arg(long)]
        left: PathBuf,
        #[arg(long)]
        right: PathBuf,
    },
    /// Stellar subdivision of a complex read from a file.
    Stellar {
        #[arg(long)]
        input: PathBuf,
        /// Face labels, space separated, e.g. "d[1,4] w1".
        #[arg(long)]
        face: String,
        #[arg(long)]
        vertex: String,
    },
}

#[derive(Subcommand)]
enum IdealCmd {
    Emit {
        kind: IdealKindArg,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum IdealKindArg {
    I2n,
    Jn,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderArg {
    Paper,
    Circular,
}

#[derive(Subcommand)]
enum GroebnerCmd {
    /// Buchberger's criterion and the initial ideal against Stanley-Reisner.
    Verify {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "paper")]
        order: OrderArg,
        /// Also run full completion and look for new leading monomials.
        #[arg(long)]
        complete_crosscheck: bool,
    },
    /// Check that the circular order picks the crossing term of every Pfaffian.
    Circular(NArg),
    /// Replay the closed-form S-polynomial reductions.
    Cases(NArg),
}

#[derive(Subcommand)]
enum SyzygyCmd {
    Verify {
        #[arg(long)]
        n: usize,
        /// Skip membership in the trace syzygy module.
        #[arg(long)]
        no_membership: bool,
        /// Compare module dimensions up to this total degree.
        #[arg(long)]
        generation_bound: Option<i64>,
    },
}

#[derive(Subcommand)]
enum T1Cmd {
    Slice {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        delta: (i64, i64),
    },
    Window {
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = parse_pair, default_value = "3,3", allow_hyphen_values = true)]
        max: (i64, i64),
    },
}

#[derive(Subcommand)]
enum LemmaCmd {
    Normalform {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

#[derive(Subcommand)]
enum HullCmd {
    /// The built-in 13-point lift in R^5.
    #[command(name = "example-6-7")]
    Example,
    /// Lower hull of points read from a file (matrix columns or JSON).
    Points {
        #[arg(long)]
        input: PathBuf,
        /// Height coordinate (default: last).
        #[arg(long)]
        height: Option<usize>,
    },
}

fn parse_pair(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(',').ok_or("expected DX,DY")?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok((p(a)?, p(b)?))
}

struct Outcome {
    passed: bool,
    text: String,
    json: Value,
}

fn read_complex(path: &PathBuf) -> Result<SimplicialComplex> {
    let src = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if src.trim_start().starts_with('{') {
        let j: ComplexJson = serde_json::from_str(&src)?;
        Ok(SimplicialComplex::from_json(&j)?)
    } else {
        Ok(SimplicialComplex::from_text(&src)?)
    }
}

fn complex_outcome(k: &SimplicialComplex) -> Outcome {
    let j = k.to_json();
    let text = format!(
        "{}# {} vertices, {} facets, f-vector {:?}\n",
        k.to_text(),
        k.vertices().len(),
        k.num_facets(),
        j.f_vector
    );
    Outcome { passed: true, text, json: serde_json::to_value(j).expect("serializable") }
}

fn run(cli: &Cli) -> Result<Outcome> {
    Ok(match &cli.cmd {
        Cmd::Complex { cmd: ComplexCmd::Build { kind } } => {
            let k = match kind {
                BuildKind::Assoc(a) => associahedron(a.n)?,
                BuildKind::Kn(a) => kn_complex(a.n)?,
                BuildKind::Join { left, right } => read_complex(left)?.join(&read_complex(right)?)?,
                BuildKind::Stellar { input, face, vertex } => {
                    let face: Vec<VertexLabel> = face.split_whitespace().map(str::parse).collect::<Result<_, _>>()?;
                    read_complex(input)?.stellar_subdivision(&face, vertex.parse()?)?
                }
            };
            complex_outcome(&k)
        }
        Cmd::Ideal { cmd: IdealCmd::Emit { kind, n } } => {
            let spec = match kind {
                IdealKindArg::I2n => i2n(*n)?,
                IdealKindArg::Jn => jn(*n)?,
            };
            let gens: Vec<Value> = spec
                .names
                .iter()
                .zip(&spec.generators)
                .map(|(name, g)| json!({"name": name, "polynomial": g.to_string()}))
                .collect();
            Outcome {
                passed: true,
                text: spec.to_text(),
                json: json!({"n": n, "kind": format!("{:?}", spec.kind), "generators": gens}),
            }
        }
        Cmd::Groebner { cmd: GroebnerCmd::Verify { n, order, complete_crosscheck } } => {
            let kind = match order {
                OrderArg::Paper => OrderKind::Composite,
                OrderArg::Circular => OrderKind::Circular,
            };
            let r = verify(*n, kind, *complete_crosscheck)?;
            let mut text = format!(
                "n = {}, order {:?}: Groebner basis {}, {} pairs checked ({} coprime skipped), {} reduction steps\n",
                r.n,
                r.order,
                if r.gb_holds { "holds" } else { "FAILS" },
                r.pair_count,
                r.pairs_skipped_coprime,
                r.reduction_steps
            );
            text += &format!(
                "initial ideal: {} generators, Stanley-Reisner: {} generators, equal: {}\n",
                r.initial_generators.len(),
                r.sr_generators.len(),
                r.matches
            );
            if let Some(p) = r.failing_pair {
                text += &format!("first failing pair: {p:?}\n");
            }
            if let Some(k) = r.crosscheck_new_leads {
                text += &format!("completion cross-check: {k} new leading monomials\n");
            }
            Outcome { passed: r.passed(), text, json: serde_json::to_value(&r)? }
        }
        Cmd::Groebner { cmd: GroebnerCmd::Circular(a) } => {
            let fails = circular_failures(a.n)?;
            let total = quadruples(a.n).len();
            Outcome {
                passed: fails.is_empty(),
                text: format!("n = {}: {} quadruples, {} failures {:?}\n", a.n, total, fails.len(), fails),
                json: json!({"n": a.n, "quadruples": total, "failures": fails}),
            }
        }
        Cmd::Groebner { cmd: GroebnerCmd::Cases(a) } => {
            let r = replay_cases(a.n)?;
            let mut text = format!("n = {}: {} case instances replayed\n", r.n, r.replays.len());
            for w in &r.warnings {
                text += &format!("warning: {w}\n");
            }
            text += &format!("all remainders zero: {}\n", r.all_remainders_zero);
            Outcome { passed: r.all_remainders_zero, text, json: serde_json::to_value(&r)? }
        }
        Cmd::Degree(a) => {
            let r = degree_check(a.n)?;
            Outcome {
                passed: r.agree,
                text: format!(
                    "n = {}: formula {} = facets {} = Hilbert degree {} (Krull dimension {}) : {}\n",
                    r.n,
                    r.formula,
                    r.facet_count,
                    r.hilbert_degree,
                    r.krull_dimension,
                    if r.agree { "agree" } else { "DISAGREE" }
                ),
                json: serde_json::to_value(&r)?,
            }
        }
        Cmd::Syzygy { cmd: SyzygyCmd::Verify { n, no_membership, generation_bound } } => {
            let r = verify_generation(*n, !no_membership, *generation_bound)?;
            let mut text = format!("n = {}: {} trace syzygies\n", r.n, r.trace_syzygies);
            for f in &r.families {
                text += &format!(
                    "{}: {} vectors, expand to zero {}, bihomogeneous {}, in trace module {}\n",
                    f.family,
                    f.count,
                    f.all_expand_to_zero,
                    f.all_bihomogeneous,
                    f.all_in_trace_module.map_or("not checked".to_string(), |b| b.to_string())
                );
            }
            for row in &r.generation {
                text += &format!(
                    "bidegree {:?}: module {} generated {}\n",
                    row.bidegree, row.module_dim, row.generated_dim
                );
            }
            text += &format!("families generate through total degree {}: {}\n", r.generation_bound, r.families_generate);
            Outcome { passed: r.passed(), text, json: serde_json::to_value(&r)? }
        }
        Cmd::T1 { cmd: T1Cmd::Slice { n, delta } } => {
            let ctx = JnContext::new(*n)?;
            let s = t1_slice(&ctx, *delta)?;
            let mut passed = s.basis_verified;
            if *n >= 6 {
                passed &= s.t1_dim == 0;
            }
            if *n == 5 && *delta == (-2, 1) {
                passed &= s.t1_dim == 1 && matches_n5_pattern(&s.basis[0]);
            }
            let mut text = format!(
                "n = {}, delta = {:?}: hom {} der {} t1 {} ({} unknowns in {} blocks)\n",
                s.n, s.delta, s.hom_dim, s.der_dim, s.t1_dim, s.unknowns, s.blocks
            );
            for (k, b) in s.basis.iter().enumerate() {
                let parts: Vec<String> = b.iter().map(|(g, p)| format!("{g} -> {p}")).collect();
                text += &format!("basis[{k}]: {}\n", parts.join(", "));
            }
            Outcome { passed, text, json: serde_json::to_value(&s)? }
        }
        Cmd::T1 { cmd: T1Cmd::Window { n, max } } => {
            let ctx = JnContext::new(*n)?;
            let w = t1_window(&ctx, *max)?;
            let mut passed = w.slices.iter().all(|s| s.basis_verified);
            if *n >= 6 {
                passed &= w.nonzero.is_empty();
            }
            let mut text = format!(
                "n = {}, targets up to {:?} (partial: vanishing only on this window)\n",
                w.n, w.max_target
            );
            for s in &w.slices {
                text += &format!("  delta {:?}: hom {} der {} t1 {}\n", s.delta, s.hom_dim, s.der_dim, s.t1_dim);
            }
            text += &format!("nonzero slices: {:?}\n", w.nonzero);
            Outcome { passed, text, json: serde_json::to_value(&w)? }
        }
        Cmd::Lemma { cmd: LemmaCmd::Normalform { n, trials } } => {
            let ctx = JnContext::new(*n)?;
            let r = check_normal_form_lemma(&ctx, *trials, cli.seed)?;
            let mut passed = r.failures == 0;
            let mut text = format!(
                "n = {}: {} trials (seed {}), {} failures, {} already normal, {} resampled z_D\n",
                r.n, r.trials, r.seed, r.failures, r.already_normal, r.resampled
            );
            for w in &r.witnesses {
                text += &format!("  alpha {} beta {} z_C {} z_D {}: {}\n", w.alpha, w.beta, w.z_c, w.z_d, w.offending);
            }
            let mut j = serde_json::to_value(&r)?;
            if *n == 6 {
                let ex = lemma_worked_example(&ctx)?;
                let expected = qbundle::algebra::parse_polynomial("x[1,6]*x[2,3]*x[4,5] + x[1,6]*x[2,5]*x[3,4]", 6)?;
                passed &= ex == expected;
                text += &format!("worked example: NF(x[2,4]*x[3,5]*x[1,6]) = {ex}\n");
                j["worked_example"] = json!(ex.to_string());
            }
            Outcome { passed, text, json: j }
        }
        Cmd::Hull { cmd: HullCmd::Example } => {
            let r = replay_example()?;
            let mut text = format!(
                "{} points, {} lower facets, unimodular {}, ridges consistent {}\n",
                r.points, r.lower_facets, r.unimodular, r.ridges_ok
            );
            text += &format!("isomorphic to K_6 * Delta_0: {}\n", r.isomorphic);
            if let Some(w) = &r.witness {
                for (a, b) in w {
                    text += &format!("  {a} -> {b}\n");
                }
            }
            text += &format!(
                "origin sent to cone vertex: {}\nprojection reflexive: {} ({} facets, distances {:?})\n",
                r.origin_to_cone, r.reflexivity.reflexive, r.reflexivity.facets, r.reflexivity.distances
            );
            Outcome { passed: r.passed(), text, json: serde_json::to_value(&r)? }
        }
        Cmd::Hull { cmd: HullCmd::Points { input, height } } => {
            let src = fs::read_to_string(input).with_context(|| format!("reading {}", input.display()))?;
            let p = if src.trim_start().starts_with('{') {
                LatticePolytope::from_json(&src)?
            } else {
                LatticePolytope::from_matrix_text(&src)?
            };
            let h = height.unwrap_or(p.dimension - 1);
            let facets = lower_facets(&p.points, h)?;
            let tri = triangulation_complex(&p.points, &facets, h)?;
            let refl = reflexivity_check(&p.project(h)?).ok();
            let text = format!(
                "{} lower facets {:?}\nunimodular {}, ridges consistent {}\nprojection reflexive: {}\n",
                facets.len(),
                facets,
                tri.unimodular,
                tri.ridges_ok,
                refl.as_ref().map_or("origin not interior".to_string(), |r| r.reflexive.to_string())
            );
            Outcome {
                passed: tri.ridges_ok,
                text,
                json: json!({
                    "lower_facets": facets,
                    "volumes": tri.volumes,
                    "unimodular": tri.unimodular,
                    "ridges_ok": tri.ridges_ok,
                    "reflexivity": refl,
                }),
            }
        }
        Cmd::Oracle { n, trials } => {
            let r = vanishing_oracle(*n, *trials, cli.seed)?;
            Outcome {
                passed: r.failures == 0,
                text: format!("n = {}: {} random points (seed {}), {} failures\n", r.n, r.trials, r.seed, r.failures),
                json: serde_json::to_value(&r)?,
            }
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match main_inner(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn main_inner(cli: &Cli) -> Result<bool> {
    if let Some(t) = cli.threads {
        if t == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global()?;
    }
    let start = std::time::Instant::now();
    let outcome = run(cli)?;
    let rendered = if cli.json {
        let mut v = json!({"schema": 1, "passed": outcome.passed});
        if let (Value::Object(dst), Value::Object(src)) = (&mut v, outcome.json) {
            dst.extend(src);
        }
        serde_json::to_string_pretty(&v)? + "\n"
    } else {
        format!(
            "{}{} ({:.2?})\n",
            outcome.text,
            if outcome.passed { "PASS" } else { "FAIL" },
            start.elapsed()
        )
    };
    match &cli.out {
        Some(p) => fs::write(p, rendered).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{rendered}"),
    }
    Ok(outcome.passed)
}
