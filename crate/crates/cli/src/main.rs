use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use loopalgebra::{
    goldman_bracket_with_budget, parse_word, render_svg, Error, HomologyElement, HomologyVector,
    StringTopology, Word,
};

#[derive(Parser, Debug)]
#[command(name = "loopalgebra", version, about = "String topology of closed surfaces of genus g >= 2")]
struct Cli {
    /// Genus of the surface, at least 2.
    #[arg(long, global = true)]
    genus: Option<usize>,

    /// Starting conjugator budget for Goldman brackets.
    #[arg(long, global = true)]
    budget: Option<usize>,

    /// Tolerance for the hyperbolic representation.
    #[arg(long = "tol", global = true)]
    tolerance: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Output file for `render`; standard output otherwise.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dehn-reduce a word.
    Reduce { word: String },
    /// Decide whether a word is trivial in the surface group.
    Identity { word: String },
    /// Canonical conjugacy class of one word, or whether two are conjugate.
    Conjugate {
        word: String,
        other: Option<String>,
    },
    /// Primitive root and level of a nontrivial class.
    Level { word: String },
    /// Image in H_1 as (a_1..a_g, b_1..b_g) coefficients.
    Abelianize { word: String },
    /// Goldman bracket of two classes.
    Bracket { first: String, second: String },
    /// String product of two homology elements.
    Product { first: String, second: String },
    /// BV operator.
    Delta { element: String },
    /// String coproduct.
    Coproduct { element: String },
    /// Ranks of H_0, H_1, H_2 of the component of a class.
    Homology { word: String },
    /// SVG of the fundamental polygon with the geodesics of the classes.
    Render {
        #[arg(required = true)]
        words: Vec<String>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Syntax { .. } | Error::GeneratorOutOfRange { .. } | Error::Genus(_) | Error::Json(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Domain(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(&cli) {
        Ok(output) => {
            if let Some(output) = output {
                println!("{output}");
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

/// The text to print, if any.
fn run(cli: &Cli) -> Result<Option<String>, Failure> {
    let genus = cli
        .genus
        .ok_or_else(|| Failure::Usage("--genus is required".into()))?;
    let mut st = StringTopology::new(genus)?.with_budget(cli.budget);
    if let Some(tol) = cli.tolerance {
        if tol.is_nan() || tol <= 0.0 {
            return Err(Failure::Usage(format!("--tol must be positive, got {tol}")));
        }
        st = st.with_tolerance(tol);
    }
    let p = st.presentation();
    let word = |s: &str| -> Result<Word, Failure> { Ok(parse_word(s, genus)?) };
    let element = |s: &str| -> Result<HomologyElement, Failure> { Ok(HomologyElement::parse(s, p)?) };
    let json = cli.format == Format::Json;

    let out = match &cli.command {
        Command::Reduce { word: w } => {
            let r = p.dehn_reduce(&word(w)?);
            if json {
                json!({ "word": r.to_string() }).to_string()
            } else {
                r.to_string()
            }
        }
        Command::Identity { word: w } => {
            let b = p.is_identity(&word(w)?);
            if json {
                json!({ "identity": b }).to_string()
            } else {
                b.to_string()
            }
        }
        Command::Conjugate { word: w, other } => match other {
            None => {
                let c = st.class(&word(w)?);
                if json {
                    json!({ "class": c.to_string() }).to_string()
                } else {
                    c.to_string()
                }
            }
            Some(v) => {
                let b = p.are_conjugate(&word(w)?, &word(v)?);
                if json {
                    json!({ "conjugate": b }).to_string()
                } else {
                    b.to_string()
                }
            }
        },
        Command::Level { word: w } => {
            let root = p.primitive_root(&word(w)?)?;
            let class = st.class(&root.root);
            if json {
                json!({ "root": class.to_string(), "level": root.level }).to_string()
            } else {
                format!("root={class} level={}", root.level)
            }
        }
        Command::Abelianize { word: w } => {
            let v = HomologyVector::abelianize(&word(w)?, genus);
            if json {
                json!({ "vector": v.0 }).to_string()
            } else {
                v.0.iter().map(i64::to_string).collect::<Vec<_>>().join(" ")
            }
        }
        Command::Bracket { first, second } => {
            let c1 = st.class(&word(first)?);
            let c2 = st.class(&word(second)?);
            let outcome = goldman_bracket_with_budget(st.representation()?, &c1, &c2, cli.budget)?;
            if json {
                outcome.result.to_json()
            } else {
                outcome.result.to_string()
            }
        }
        Command::Product { first, second } => {
            let x = st.product(&element(first)?, &element(second)?)?;
            if json {
                x.to_json()
            } else {
                x.to_string()
            }
        }
        Command::Delta { element: e } => {
            let x = st.delta(&element(e)?)?;
            if json {
                x.to_json()
            } else {
                x.to_string()
            }
        }
        Command::Coproduct { element: e } => {
            let x = st.coproduct(&element(e)?);
            if json {
                x.to_json()
            } else {
                x.to_string()
            }
        }
        Command::Homology { word: w } => {
            let (r0, r1, r2) = st.component_homology(&st.class(&word(w)?));
            if json {
                json!({ "rank0": r0, "rank1": r1, "rank2": r2 }).to_string()
            } else {
                format!("rank0={r0} rank1={r1} rank2={r2}")
            }
        }
        Command::Render { words } => {
            let classes = words
                .iter()
                .map(|w| Ok(st.class(&word(w)?)))
                .collect::<Result<Vec<_>, Failure>>()?;
            let svg = render_svg(st.representation()?, &classes)?;
            match &cli.out {
                Some(path) => {
                    std::fs::write(path, &svg)
                        .map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display())))?;
                    return Ok(json.then(|| json!({ "out": path.display().to_string() }).to_string()));
                }
                None => svg.trim_end().to_string(),
            }
        }
    };
    Ok(Some(out))
}
