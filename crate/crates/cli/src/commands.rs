use std::path::PathBuf;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use gradal_core::abelian::{is_in_torsionfree_summand, FgGroup, GroupHom};
use gradal_core::closure::{
    components_integral_check, describe, find_almost_integral_witness, find_integral_equation,
    graded_euclidean_division, lem50_iso, torsion_idempotent, verify_almost_integral_witness,
    verify_integral_witness, AlmostSearch, IntegralSearch, RingPair, SearchBounds,
};
use gradal_core::element::{find_annihilator, Element, Ring};
use gradal_core::harness::{run_check, CheckConfig, CheckId};
use gradal_core::ringexpr::{Base, NormalForm};
use serde_json::{json, Map, Value};

use crate::dsl::ast::{Item, Span};
use crate::dsl::{eval::Env, parser};
use crate::error::CliError;

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "gradal", version, about = "Exact computations in group-graded rings")]
pub struct Cli {
    /// Indented JSON instead of one object per line.
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Entire, simple, noetherian, degree support.
    Classify { ring: String },
    /// Homogeneous components of an element.
    Components {
        ring: String,
        #[arg(allow_hyphen_values = true)]
        elem: String,
    },
    /// Search for a monic equation of `elem ∈ S` over `R`.
    Integrality {
        r: String,
        s: String,
        #[arg(allow_hyphen_values = true)]
        elem: String,
        #[arg(long, default_value_t = 3)]
        max_deg: u32,
        #[arg(long = "box", default_value_t = 1)]
        radius: i64,
        /// Also compare with the components of the finer grading, for a
        /// coarsening given as a matrix literal.
        #[arg(long)]
        coarsen: Option<String>,
    },
    /// Search for a finite R-module containing all powers of `elem`.
    Almost {
        r: String,
        s: String,
        #[arg(allow_hyphen_values = true)]
        elem: String,
        #[arg(long, default_value_t = 2)]
        kmax: u32,
        #[arg(long = "box", default_value_t = 1)]
        radius: i64,
    },
    /// Divide `g` by `f` in `S = K[Z]` coarsely graded.
    Divide {
        s: String,
        #[arg(allow_hyphen_values = true)]
        f: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// The idempotent of `Q[Z/n]` and its monic equation over `Z[Z/n]`.
    Idempotent {
        #[arg(long)]
        n: i64,
    },
    /// `R_[ψ]` as a coarse group algebra, for `G = F ⊕ H` given by
    /// generator lists of `F` and `H`.
    IsoLem50 { r: String, f: String, h: String },
    /// Run a named property check.
    Check {
        id: String,
        #[arg(long)]
        trials: Option<usize>,
        /// Defaults to GRADAL_SEED, then 42.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 2)]
        max_deg: u32,
        #[arg(long = "box", default_value_t = 1)]
        radius: i64,
        /// Include wall time in the report.
        #[arg(long)]
        timing: bool,
    },
    /// Worked examples.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
    /// Execute a script from a file, or stdin when absent or `-`.
    Run { file: Option<PathBuf> },
}

#[derive(Debug, Subcommand)]
pub enum Demo {
    /// The torsion idempotent defeating integral closedness.
    A90 {
        #[arg(long, default_value_t = 2)]
        n: i64,
    },
    /// Torsionfree subgroups outside every torsionfree summand.
    A140,
    /// Coarsening along a torsion kernel destroys entirety.
    P90,
}

/// Result lines plus the exit status to report.
#[derive(Debug, Default)]
pub struct Output {
    pub lines: Vec<Value>,
    pub status: i32,
}

impl Output {
    fn push(&mut self, v: Value) {
        self.lines.push(v);
    }

    pub fn render(&self, pretty: bool) -> String {
        let mut s = String::new();
        for v in &self.lines {
            let line = if pretty {
                serde_json::to_string_pretty(v)
            } else {
                serde_json::to_string(v)
            };
            s.push_str(&line.expect("values serialize"));
            s.push('\n');
        }
        s
    }
}

pub struct Session {
    pub env: Env,
    pub default_seed: u64,
}

/// `GRADAL_SEED` if set and valid.
pub fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var("GRADAL_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("GRADAL_SEED is not an unsigned integer: {s}"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn ring_json(nf: &NormalForm) -> Value {
    json!({
        "elements": nf.e.to_string(),
        "grading": nf.g.to_string(),
        "delta": nf.delta.to_string(),
        "base": nf.base.to_string(),
        "localized": nf.is_fraction(),
    })
}

fn search_json(pair: &RingPair, x: &gradal_core::element::Fraction, s: &IntegralSearch) -> Result<Value, CliError> {
    Ok(match s {
        IntegralSearch::Found(w) => json!({
            "result": "found",
            "degree": w.degree,
            "coefficients": w.coefficients.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
            "verified": verify_integral_witness(pair, x, w)?,
        }),
        IntegralSearch::NoWitnessUpTo(b) => json!({
            "result": "no-witness",
            "max_deg": b.max_deg,
            "box": b.radius,
        }),
    })
}

impl Session {
    pub fn new(default_seed: u64) -> Session {
        Session {
            env: Env::new(),
            default_seed,
        }
    }

    fn pair(&self, r: &str, s: &str) -> Result<RingPair, CliError> {
        let r = self.env.ring_text(r)?;
        let s = self.env.ring_text(s)?;
        Ok(RingPair::new(&r, &s)?)
    }

    pub fn execute(&mut self, command: &Command) -> Result<Output, CliError> {
        let mut out = Output::default();
        match command {
            Command::Classify { ring } => {
                let nf = self.env.ring_text(ring)?;
                let c = nf.classify();
                let mut v = ring_json(&nf);
                let m = v.as_object_mut().expect("object");
                m.insert("command".into(), json!("classify"));
                m.insert("ring".into(), json!(normalized_ring(ring)));
                m.insert("entire".into(), json!(c.entire));
                m.insert("simple".into(), json!(c.simple));
                m.insert("noetherian".into(), json!(c.noetherian));
                m.insert("full_support".into(), json!(c.full_support));
                let support: Vec<String> =
                    c.support.ambient_generators().iter().map(|g| g.to_string()).collect();
                m.insert("support".into(), json!(support));
                out.push(v);
            }
            Command::Components { ring, elem } => {
                let nf = self.env.ring_text(ring)?;
                let x = self.env.element_text(elem, &nf)?;
                let comps: Vec<Value> = x
                    .homogeneous_components()
                    .into_iter()
                    .map(|(d, c)| json!({"degree": d.to_string(), "component": c.to_string()}))
                    .collect();
                out.push(json!({
                    "command": "components",
                    "element": x.to_string(),
                    "homogeneous": x.is_homogeneous(),
                    "components": comps,
                }));
            }
            Command::Integrality {
                r,
                s,
                elem,
                max_deg,
                radius,
                coarsen,
            } => {
                let pair = self.pair(r, s)?;
                let x = self.env.fraction_text(elem, pair.s())?;
                let bounds = SearchBounds {
                    max_deg: *max_deg,
                    radius: *radius,
                };
                match coarsen {
                    None => {
                        let found = find_integral_equation(&pair, &x, bounds)?;
                        let mut v = search_json(&pair, &x, &found)?;
                        v["command"] = json!("integrality");
                        v["element"] = json!(x.to_string());
                        v["summary"] = json!(describe(&found));
                        out.push(v);
                    }
                    Some(h) => {
                        let ast = parser::parse_hom(h)?;
                        let psi = crate::dsl::eval::hom(&ast, &pair.r().g, ast.span)?;
                        let report = components_integral_check(&pair, &psi, &x, bounds)?;
                        let coarse = pair.coarsen(&psi)?;
                        let mut v = search_json(&coarse, &coarse.transport(&x)?, &report.coarse)?;
                        v["command"] = json!("integrality");
                        v["element"] = json!(x.to_string());
                        v["verdict"] = json!(report.verdict.as_str());
                        let comps: Vec<Value> = report
                            .components
                            .iter()
                            .map(|c| {
                                json!({
                                    "degree": c.degree.to_string(),
                                    "component": c.component.to_string(),
                                    "integral": c.search.found(),
                                    "proven_not_integral": c.proven_not_integral,
                                })
                            })
                            .collect();
                        v["components"] = json!(comps);
                        out.push(v);
                    }
                }
            }
            Command::Almost {
                r,
                s,
                elem,
                kmax,
                radius,
            } => {
                let pair = self.pair(r, s)?;
                let x = self.env.fraction_text(elem, pair.s())?;
                let v = match find_almost_integral_witness(&pair, &x, *kmax, *radius)? {
                    AlmostSearch::Found(w) => json!({
                        "command": "almost",
                        "element": x.to_string(),
                        "result": "found",
                        "k": w.k,
                        "generators": w.generators.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                        "membership": w.membership.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                        "verified": verify_almost_integral_witness(&pair, &x, &w)?,
                    }),
                    AlmostSearch::NoWitnessUpTo { k_max, radius } => json!({
                        "command": "almost",
                        "element": x.to_string(),
                        "result": "no-witness",
                        "kmax": k_max,
                        "box": radius,
                    }),
                };
                out.push(v);
            }
            Command::Divide { s, f, g } => {
                let ring = self.env.ring_text(s)?;
                let f = self.env.element_text(f, &ring)?;
                let g = self.env.element_text(g, &ring)?;
                let d = graded_euclidean_division(&ring, &g, &f)?;
                let check = &(&d.quotient * &f) + &d.remainder == g;
                out.push(json!({
                    "command": "divide",
                    "quotient": d.quotient.to_string(),
                    "remainder": d.remainder.to_string(),
                    "verified": check,
                }));
            }
            Command::Idempotent { n } => {
                let t = torsion_idempotent(*n)?;
                out.push(idempotent_json(&t)?);
            }
            Command::IsoLem50 { r, f, h } => {
                let nf = self.env.ring_text(r)?;
                let span = Span::default();
                let fg = crate::dsl::eval::points(&parser::parse_tuples(f)?, &nf.g, span)?;
                let hg = crate::dsl::eval::points(&parser::parse_tuples(h)?, &nf.g, span)?;
                let l = lem50_iso(&nf, &fg, &hg)?;
                let mut ok = true;
                for x in l.q.domain().e.generators() {
                    let b = Element::basis(l.q.domain(), x)?;
                    ok &= l.p.apply(&l.q.apply(&b)?)? == b;
                }
                for y in l.p.domain().e.generators() {
                    let b = Element::basis(l.p.domain(), y)?;
                    ok &= l.q.apply(&l.p.apply(&b)?)? == b;
                }
                out.push(json!({
                    "command": "iso-lem50",
                    "psi": l.psi.to_string(),
                    "basis": l.basis.iter().map(|b| b.to_string()).collect::<Vec<_>>(),
                    "source": l.p.domain().to_string(),
                    "target": l.p.codomain().to_string(),
                    "p": l.p.on_exponents().to_string(),
                    "q": l.q.on_exponents().to_string(),
                    "inverse_on_generators": ok,
                }));
            }
            Command::Check {
                id,
                trials,
                seed,
                max_deg,
                radius,
                timing,
            } => {
                let check: CheckId = id.parse()?;
                let mut cfg = CheckConfig::new(check, seed.unwrap_or(self.default_seed));
                if let Some(t) = trials {
                    cfg.trials = *t;
                }
                cfg.bounds = SearchBounds {
                    max_deg: *max_deg,
                    radius: *radius,
                };
                let r = run_check(&cfg)?;
                let mut m = Map::new();
                m.insert("check_id".into(), json!(r.check_id.as_str()));
                m.insert("seed".into(), json!(r.seed));
                m.insert("trials".into(), json!(r.trials));
                m.insert("passes".into(), json!(r.passes));
                m.insert("fails".into(), json!(r.fails));
                m.insert("inconclusive".into(), json!(r.inconclusive));
                if let Some(c) = &r.counterexample {
                    m.insert("counterexample".into(), json!({"trial": c.trial, "detail": c.detail}));
                }
                if *timing {
                    if let Some(e) = r.elapsed {
                        m.insert("elapsed_ms".into(), json!(e.as_millis() as u64));
                    }
                }
                out.push(Value::Object(m));
                if !r.ok() {
                    out.status = 4;
                }
            }
            Command::Demo { which } => match which {
                Demo::A90 { n } => demo_a90(*n, &mut out)?,
                Demo::A140 => demo_a140(&mut out)?,
                Demo::P90 => demo_p90(&mut out)?,
            },
            Command::Run { file } => {
                let text = match file {
                    Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)?,
                    _ => std::io::read_to_string(std::io::stdin())?,
                };
                return self.run_script(&text);
            }
        }
        Ok(out)
    }

    /// Runs every item in order; stops at the first error. A failed check
    /// does not stop the script but sets the final status.
    pub fn run_script(&mut self, text: &str) -> Result<Output, CliError> {
        let script = parser::parse_script(text)?;
        let mut out = Output::default();
        for item in &script.items {
            match item {
                Item::Let { name, value, .. } => self.env.bind(name, value)?,
                Item::Command { words, span } => {
                    let argv = std::iter::once("gradal".to_string()).chain(words.iter().cloned());
                    let cli = Cli::try_parse_from(argv)
                        .map_err(|e| CliError::Usage(format!("line {}: {}", span.line, e.render())))?;
                    if matches!(cli.command, Command::Run { .. }) {
                        return Err(CliError::Usage(format!("line {}: scripts cannot nest `run`", span.line)));
                    }
                    let o = self.execute(&cli.command)?;
                    out.lines.extend(o.lines);
                    out.status = out.status.max(o.status);
                }
            }
        }
        Ok(out)
    }
}

fn normalized_ring(text: &str) -> String {
    parser::parse_ring(text)
        .map(|r| crate::dsl::print::ring(&r))
        .unwrap_or_else(|_| text.to_string())
}

fn idempotent_json(t: &gradal_core::closure::TorsionIdempotent) -> Result<Value, CliError> {
    let f = t.f.num();
    Ok(json!({
        "n": t.n,
        "f": f.to_string(),
        "c": t.c.to_string(),
        "d": t.d.to_string(),
        "f_squared_is_f": &(f * f) == f,
        "f_has_integer_coefficients": f.has_integer_coefficients(),
        "witness": t.witness.to_string(),
        "witness_verified": verify_integral_witness(&t.pair, &t.f, &t.witness)?,
    }))
}

fn demo_a90(n: i64, out: &mut Output) -> Result<(), CliError> {
    let t = torsion_idempotent(n)?;
    let r = format!("Z[Z/{n}]coarse");
    let s = format!("Q[Z/{n}]coarse");
    let mut v = idempotent_json(&t)?;
    v["demo"] = json!("a90");
    v["ring"] = json!(r);
    v["overring"] = json!(s);
    out.push(v);
    let bounds = SearchBounds {
        max_deg: 2,
        radius: 0,
    };
    let found = find_integral_equation(&t.pair, &t.f, bounds)?;
    let mut v = search_json(&t.pair, &t.f, &found)?;
    v["demo"] = json!("a90");
    v["search"] = json!(describe(&found));
    out.push(v);
    let closed = t.f.num().has_integer_coefficients() || !found.found();
    out.push(json!({
        "demo": "a90",
        "conclusion": if closed { "no counterexample" } else { "NOT integrally closed" },
        "statement": format!("{r} is {}integrally closed in {s}", if closed { "" } else { "NOT " }),
    }));
    Ok(())
}

fn demo_a140(out: &mut Output) -> Result<(), CliError> {
    for n in [2, 3, 4] {
        let (g, _) = FgGroup::from_orders(1, &[n])?;
        let f = [g.reduce(&[n, 1])];
        let sub = g.subgroup_generated_by(&f)?;
        out.push(json!({
            "demo": "a140",
            "n": n,
            "group": g.to_string(),
            "subgroup": f.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            "subgroup_is": sub.group.to_string(),
            "torsionfree": sub.group.is_torsionfree(),
            "in_torsionfree_summand": is_in_torsionfree_summand(&g, &f)?,
        }));
    }
    Ok(())
}

fn demo_p90(out: &mut Output) -> Result<(), CliError> {
    let cases: [(FgGroup, GroupHom, &str, &str); 2] = {
        let z2 = FgGroup::cyclic(2)?;
        let z = FgGroup::free(2);
        let plane = GroupHom::new(
            z.clone(),
            FgGroup::free(1),
            gradal_core::abelian::Matrix::from_rows(vec![vec![1, 1]], 2),
        )?;
        [
            (z2.clone(), GroupHom::zero(&z2, &FgGroup::trivial()), "Q[Z/2]fine", "coarsen(Q[Z/2]fine, [] : Z/2 -> 0)"),
            (z, plane, "Q[Z^2]fine", "coarsen(Q[Z^2]fine, [[1,1]])"),
        ]
    };
    for (g, psi, fine_text, coarse_text) in cases {
        let fine = NormalForm::group_ring(Base::Q, GroupHom::identity(&g));
        let coarse: Ring = Arc::new(fine.coarsen(&psi)?);
        let kernel = psi.kernel();
        let mut v = json!({
            "demo": "p90",
            "ring": fine_text,
            "coarsened": coarse_text,
            "fine_entire": fine.is_entire(),
            "fine_simple": fine.is_simple(),
            "coarse_entire": coarse.is_entire(),
            "coarse_simple": coarse.is_simple(),
            "kernel": kernel.group.to_string(),
        });
        let r = kernel.group.rank();
        if kernel.group.dim() > r {
            let t = kernel.inclusion.apply(&kernel.group.generator(r));
            let one = gradal_core::element::coeff(1);
            let x = Element::from_terms(&coarse, [(g.zero(), one.clone()), (t, -one)])?;
            let w = find_annihilator(&x, 1)?.expect("torsion gives an annihilator");
            v["element"] = json!(x.to_string());
            v["annihilator"] = json!(w.to_string());
            v["product"] = json!((&w * &x).to_string());
        }
        out.push(v);
    }
    Ok(())
}
