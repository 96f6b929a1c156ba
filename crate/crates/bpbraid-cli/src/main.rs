use std::fmt::Write as _;
use std::process::ExitCode;

use bpbraid::generators::{generator_family, FamilySpec, GeneratorSet};
use bpbraid::hurwitz::{base_tuple, orbit_enumerate, stabilizes, BaseTuple, OrbitOutcome};
use bpbraid::multiindex::build_dynkin;
use bpbraid::poly::{
    degree_report, expected_bifurcation_degree, expected_vanishing_order, hl_bifurcation_with_budget,
    hl_discriminant_with_budget, DEFAULT_MAX_MU_BIFURCATION, DEFAULT_MAX_MU_DISCRIMINANT,
};
use bpbraid::presentation::bp_presentation;
use bpbraid::verify::{catalogue, run_identity_with_budget, run_suite, suite_to_json, Budget, IdentityCase, OUT_OF_REACH};
use bpbraid::words::{braids_equal_capped, DEFAULT_WORD_CAP};
use bpbraid::{BraidWord, Error, ExponentVector};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "bpbraid", version, about = "Braid monodromy of Brieskorn–Pham singularities")]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Opts {
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Largest Milnor number accepted by the polynomial commands.
    #[arg(long, global = true, env = "BPBRAID_MAX_MU")]
    max_mu: Option<usize>,
    /// Cap on free-word syllable length during Artin evaluation.
    #[arg(long, global = true, env = "BPBRAID_MAX_WORD_LEN", default_value_t = DEFAULT_WORD_CAP)]
    max_word_len: usize,
    /// Largest number of orbit states explored.
    #[arg(long, global = true, env = "BPBRAID_ORBIT_CAP", default_value_t = 10_000)]
    orbit_cap: usize,
}

#[derive(Subcommand)]
enum Cmd {
    /// Monodromy generators of an exponent vector, e.g. `2,3`.
    BpGens { l: String },
    /// The A_n generators σ_i³, σ²_{i,j}.
    AnGens { n: usize },
    /// Any generator family: bp:2,2  an:4  g:2,2  f:2,3  cw:5  E:2,3  Es:1,0  comp:2,2/3.
    Family { spec: String },
    /// Dynkin diagram of an exponent vector.
    Dynkin {
        l: String,
        #[arg(long)]
        dot: bool,
    },
    /// Fundamental-group presentation.
    Presentation {
        l: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Discriminant polynomial p_Δ.
    HlDisc { l: String },
    /// Bifurcation polynomial p_B.
    HlBif {
        l: String,
        /// Degree and vanishing-order audit.
        #[arg(long)]
        report: bool,
    },
    /// Decide equality of two braid words, e.g. `3 "s1 s2 s1" "s2 s1 s2"`.
    WordEq { strands: usize, a: String, b: String },
    /// Check that braids stabilize a tuple (phi:n, psi:l,l', perm:n, braid:n).
    HurwitzStab {
        #[arg(long)]
        tuple: String,
        /// Generator family, as for `family`.
        #[arg(long, required_unless_present = "word")]
        gens: Option<String>,
        /// Explicit braid word; repeatable.
        #[arg(long)]
        word: Vec<String>,
    },
    /// Enumerate a Hurwitz orbit (default generators σ_1..σ_{n-1}).
    HurwitzOrbit {
        #[arg(long)]
        tuple: String,
        #[arg(long)]
        gens: Option<String>,
        /// Print the orbit elements.
        #[arg(long)]
        list: bool,
    },
    /// Run catalogued braid identities.
    Verify {
        #[arg(long, conflicts_with_all = ["id", "filter"])]
        all: bool,
        #[arg(long)]
        id: Option<String>,
        #[arg(long, requires = "id")]
        params: Option<String>,
        /// Glob over case ids, e.g. `braid/*`.
        #[arg(long)]
        filter: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

enum Failure {
    Usage(String),
    Resource(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::ResourceExceeded(_) | Error::WordLengthOverflow { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

/// Text to print and whether every check it reports passed.
struct Output {
    text: String,
    ok: bool,
}

fn done(text: String) -> Result<Output, Failure> {
    Ok(Output { text, ok: true })
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json") + "\n"
}

fn ev(s: &str) -> Result<ExponentVector, Failure> {
    Ok(ExponentVector::parse(s)?)
}

fn family_text(s: &GeneratorSet) -> String {
    let mut out = String::new();
    if s.spherical {
        let _ = writeln!(out, "# spherical: (s1 ... s{})^{} = 1 imposed", s.strands - 1, s.strands);
    }
    for g in &s.generators {
        let _ = writeln!(out, "{}: {}", g.label, g.word);
    }
    out
}

fn family_out(s: &GeneratorSet, o: &Opts) -> Result<Output, Failure> {
    done(if o.json { pretty(&s.to_json()) } else { family_text(s) })
}

fn run(cmd: &Cmd, o: &Opts) -> Result<Output, Failure> {
    match cmd {
        Cmd::BpGens { l } => family_out(&generator_family(&FamilySpec::BpMonodromy(ev(l)?))?, o),
        Cmd::AnGens { n } => family_out(&generator_family(&FamilySpec::An(*n))?, o),
        Cmd::Family { spec } => family_out(&generator_family(&FamilySpec::parse(spec)?)?, o),
        Cmd::Dynkin { l, dot } => {
            let d = build_dynkin(&ev(l)?);
            if *dot {
                return done(d.to_dot());
            }
            if o.json {
                return done(pretty(&d.to_json()));
            }
            let f = |i| d.exponents.format_index(i);
            let mut s = format!("vertices: {}\n", d.vertices.iter().map(f).collect::<Vec<_>>().join(" "));
            for e in &d.edges {
                let _ = writeln!(s, "{} -- {} ({:+})", f(&e.i), f(&e.j), e.weight);
            }
            done(s)
        }
        Cmd::Presentation { l, format } => {
            let p = bp_presentation(&ev(l)?)?;
            done(match (format, o.json) {
                (Format::Json, _) | (_, true) => pretty(&p.to_json()),
                _ => p.to_text(),
            })
        }
        Cmd::HlDisc { l } => {
            let p = hl_discriminant_with_budget(&ev(l)?, o.max_mu.unwrap_or(DEFAULT_MAX_MU_DISCRIMINANT))?;
            done(if o.json { pretty(&p.to_json()) } else { format!("{p}\n") })
        }
        Cmd::HlBif { l, report } => {
            let l = ev(l)?;
            let p = hl_bifurcation_with_budget(&l, o.max_mu.unwrap_or(DEFAULT_MAX_MU_BIFURCATION))?;
            if !report {
                return done(if o.json { pretty(&p.to_json()) } else { format!("{p}\n") });
            }
            let r = degree_report(&p, &l)?;
            let want_total = expected_bifurcation_degree(&l);
            let mut ok = r.total_degree as u64 == want_total;
            if o.json {
                let mut rj = r.to_json();
                rj["expected_total_degree"] = json!(want_total);
                rj["expected_vanishing_orders"] = json!((0..l.n()).map(|i| expected_vanishing_order(&l, i)).collect::<Vec<_>>());
                ok &= r.vanishing_orders.iter().enumerate().all(|(i, (_, d))| *d as u64 == expected_vanishing_order(&l, i));
                return Ok(Output { text: pretty(&json!({ "polynomial": p.to_json(), "report": rj })), ok });
            }
            let mut s = format!("{p}\n");
            let _ = writeln!(s, "total degree: {} (expected {want_total})", r.total_degree);
            for (i, (v, d)) in r.vanishing_orders.iter().enumerate() {
                let want = expected_vanishing_order(&l, i);
                ok &= *d as u64 == want;
                let _ = writeln!(s, "vanishing order along {v}: {d} (expected {want})");
            }
            let degs: Vec<String> = r.per_var_degrees.iter().map(|(v, d)| format!("{v}:{d}")).collect();
            let _ = writeln!(s, "degrees: {}", degs.join(" "));
            let _ = writeln!(s, "content: {}", r.content);
            Ok(Output { text: s, ok })
        }
        Cmd::WordEq { strands, a, b } => {
            let (a, b) = (BraidWord::parse(*strands, a)?, BraidWord::parse(*strands, b)?);
            let eq = braids_equal_capped(&a, &b, o.max_word_len)?;
            done(if o.json { pretty(&json!({ "equal": eq })) } else { format!("{}\n", if eq { "equal" } else { "different" }) })
        }
        Cmd::HurwitzStab { tuple, gens, word } => {
            let t = base_tuple(&BaseTuple::parse(tuple)?)?;
            let mut braids: Vec<(String, BraidWord)> = Vec::new();
            if let Some(g) = gens {
                braids.extend(generator_family(&FamilySpec::parse(g)?)?.generators.into_iter().map(|g| (g.label, g.word)));
            }
            for w in word {
                braids.push((w.clone(), BraidWord::parse(t.len(), w)?));
            }
            let mut rows = Vec::new();
            for (label, b) in &braids {
                rows.push((label, b, stabilizes(b, &t)?));
            }
            let ok = rows.iter().all(|r| r.2);
            let text = if o.json {
                let res: Vec<Value> =
                    rows.iter().map(|(l, b, s)| json!({ "label": l, "word": b.to_string(), "stabilizes": s })).collect();
                pretty(&json!({ "tuple": t.to_json(), "results": res }))
            } else {
                let mut s = format!("{t}\n");
                for (l, _, st) in &rows {
                    let _ = writeln!(s, "{l}: {}", if *st { "stabilizes" } else { "moves" });
                }
                s
            };
            Ok(Output { text, ok })
        }
        Cmd::HurwitzOrbit { tuple, gens, list } => {
            let t = base_tuple(&BaseTuple::parse(tuple)?)?;
            let words = match gens {
                Some(g) => generator_family(&FamilySpec::parse(g)?)?.words(),
                None => (1..t.len() as i32).map(|i| BraidWord::sigma(t.len(), i)).collect::<bpbraid::Result<_>>()?,
            };
            match orbit_enumerate(&t, &words, o.orbit_cap)? {
                OrbitOutcome::CapExceeded { explored } => {
                    Err(Failure::Resource(format!("orbit exceeds cap {} after {explored} states", o.orbit_cap)))
                }
                OrbitOutcome::Finite(states) => done(if o.json {
                    let mut v = json!({ "tuple": t.to_json(), "size": states.len() });
                    if *list {
                        v["states"] = json!(states.iter().map(|s| s.to_json()).collect::<Vec<_>>());
                    }
                    pretty(&v)
                } else {
                    let mut s = format!("orbit size {}\n", states.len());
                    if *list {
                        for st in &states {
                            let _ = writeln!(s, "{st}");
                        }
                    }
                    s
                }),
            }
        }
        Cmd::Verify { all, id, params, filter } => {
            let budget = Budget { word_cap: o.max_word_len, ..Budget::default() };
            let reports = match (id, filter) {
                (Some(id), _) => {
                    let cat = catalogue();
                    let known =
                        cat.iter().find(|c| &c.id == id).ok_or_else(|| Failure::Usage(format!("unknown case id {id:?}")))?;
                    let case = match params {
                        Some(p) => IdentityCase::new(id, p, known.expected),
                        None => known.clone(),
                    };
                    vec![run_identity_with_budget(&case, budget)?]
                }
                (None, Some(f)) => run_suite(f, budget),
                (None, None) if *all => run_suite("", budget),
                (None, None) => return Err(Failure::Usage("verify needs --all, --id or --filter".into())),
            };
            if reports.is_empty() {
                return Err(Failure::Usage("no catalogued case matches".into()));
            }
            let ok = !reports.iter().any(|r| r.is_problem());
            let text = if o.json {
                pretty(&suite_to_json(&reports))
            } else {
                let mut s: String = reports.iter().map(|r| r.line() + "\n").collect();
                if *all {
                    let problems = reports.iter().filter(|r| r.is_problem()).count();
                    let _ = writeln!(s, "{} cases, {problems} problems", reports.len());
                    for (name, why) in OUT_OF_REACH {
                        let _ = writeln!(s, "out of reach: {name}: {why}");
                    }
                }
                s
            };
            Ok(Output { text, ok })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli.cmd, &cli.opts) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("resource limit: {m}");
            ExitCode::from(3)
        }
    }
}
