use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sigpoly::sampling::{self, InstanceBounds};
use sigpoly::signature::{required_level, transform_shifted};
use sigpoly::{
    image_path_signature, lambda_b, level_blocks, level_matrix, parse_rational, path_signature,
    signature_defined_path_transport, Error, JsonDocument, LetterMap, PiecewisePolyPath,
    PolynomialMap, Rational, ShuffleMorphism, TensorElem, TruncatedSignature, Word,
};

const DEFAULT_MAX_LEVEL: usize = 12;

#[derive(Parser)]
#[command(
    name = "sigpoly",
    version,
    about = "Exact path signatures and their images under polynomial maps"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Truncated signature of a piecewise polynomial path.
    Sig {
        path_file: PathBuf,
        #[arg(long)]
        level: usize,
    },
    /// Image of a word under M_p~, where p~(y) = p(y + x0) - p(x0).
    Mp {
        map_file: PathBuf,
        word: String,
        #[arg(long)]
        start: Option<String>,
    },
    /// Signature of p(X) up to --level from a signature of X.
    Transform {
        map_file: PathBuf,
        sig_file: PathBuf,
        #[arg(long)]
        level: usize,
        #[arg(long)]
        start: Option<String>,
    },
    /// Coefficient matrix of M_p on words of length --level.
    Matrix {
        map_file: PathBuf,
        #[arg(long)]
        level: usize,
        /// Emit one block per target word length (needed for non-homogeneous maps).
        #[arg(long)]
        blocks: bool,
    },
    /// Half-shuffle extension of a letter map, optionally transported along a path.
    Zinbiel {
        letter_map_file: PathBuf,
        input: String,
        path_file: Option<PathBuf>,
        #[arg(long)]
        level: Option<usize>,
    },
    /// Compare the transform against integrating the image path directly.
    Verify {
        map_file: Option<PathBuf>,
        path_file: Option<PathBuf>,
        #[arg(long, default_value_t = 3)]
        level: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

enum Failure {
    Input(String),
    Io(String),
    Shortfall(String),
    Mismatch(String),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Mismatch(_) => 1,
            Failure::Input(_) => 2,
            Failure::Io(_) => 3,
            Failure::Shortfall(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Input(m) | Failure::Io(m) | Failure::Shortfall(m) | Failure::Mismatch(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TruncationShortfall { .. } => Failure::Shortfall(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Outcome {
    let fmt = cli.format;
    match &cli.command {
        Command::Sig { path_file, level } => {
            check_level(*level)?;
            let path: PiecewisePolyPath = load(path_file)?;
            Ok(render_signature(&path_signature(&path, *level), fmt))
        }
        Command::Mp {
            map_file,
            word,
            start,
        } => {
            let map: PolynomialMap = load(map_file)?;
            let shifted = resolve_shift(&map, start.as_deref(), None)?;
            let word = Word::parse(word, map.codomain_dim())?;
            let image = ShuffleMorphism::new(&shifted)?.image_of_word(&word)?;
            Ok(render_tensor(&image, fmt))
        }
        Command::Transform {
            map_file,
            sig_file,
            level,
            start,
        } => {
            check_level(*level)?;
            let map: PolynomialMap = load(map_file)?;
            let sig: TruncatedSignature = load(sig_file)?;
            let shifted = resolve_shift(&map, start.as_deref(), None)?;
            let need = required_level(&shifted, *level);
            if sig.level() < need {
                return Err(Failure::Shortfall(format!(
                    "input signature is truncated at level {}, but deg(p~)*N = {}*{} = {need} is required",
                    sig.level(),
                    shifted.degree().unwrap_or(0),
                    level
                )));
            }
            Ok(render_signature(
                &transform_shifted(&shifted, &sig, *level)?,
                fmt,
            ))
        }
        Command::Matrix {
            map_file,
            level,
            blocks,
        } => {
            let map: PolynomialMap = load(map_file)?;
            if *blocks {
                let blocks = level_blocks(&map, *level)?;
                return Ok(render_blocks(&blocks, fmt));
            }
            let m = level_matrix(&map, *level).map_err(|e| match e {
                Error::NotHomogeneous => Failure::Input(
                    "map is not homogeneous: a single level matrix needs every component homogeneous of one \
                     degree n, so that M_p sends words of length k to words of length exactly n*k; \
                     use --blocks for one block per target length"
                        .into(),
                ),
                other => other.into(),
            })?;
            Ok(match fmt {
                Format::Json => with_newline(m.to_json()),
                Format::Text => m.to_csv(),
            })
        }
        Command::Zinbiel {
            letter_map_file,
            input,
            path_file,
            level,
        } => {
            let b: LetterMap = load(letter_map_file)?;
            let w = TensorElem::parse_text(input, b.source_dim())?;
            let image = lambda_b(&b, &w)?;
            let Some(path_file) = path_file else {
                return Ok(render_tensor(&image, fmt));
            };
            let path: PiecewisePolyPath = load(path_file)?;
            let level = level.unwrap_or(w.max_level());
            check_level(level)?;
            let tr = signature_defined_path_transport(&b, &path, &w, level)?;
            Ok(match fmt {
                Format::Json => with_newline(
                    serde_json::to_string_pretty(&serde_json::json!({
                        "image": serde_json::from_str::<serde_json::Value>(&image.to_json()).expect("valid json"),
                        "transported": tr.via_lambda.to_string(),
                        "direct": tr.direct.to_string(),
                    }))
                    .expect("plain data"),
                ),
                Format::Text => format!(
                    "Lambda_B(input) = {image}\ntransported: {}\ndirect:      {}\n",
                    tr.via_lambda, tr.direct
                ),
            })
        }
        Command::Verify {
            map_file,
            path_file,
            level,
            seed,
            trials,
        } => {
            check_level(*level)?;
            match (map_file, path_file, seed) {
                (Some(m), Some(p), None) => {
                    let map: PolynomialMap = load(m)?;
                    let path: PiecewisePolyPath = load(p)?;
                    verify_instance(&map, &path, *level, true)
                }
                (None, None, Some(seed)) => verify_random(*seed, *trials, *level),
                _ => Err(Failure::Input(
                    "verify takes either MAP_FILE PATH_FILE or --seed".into(),
                )),
            }
        }
    }
}

fn max_level() -> Result<usize, Failure> {
    match std::env::var("SIGPOLY_MAX_LEVEL") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::Input(format!(
                "SIGPOLY_MAX_LEVEL must be a non-negative integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_LEVEL),
    }
}

fn check_level(level: usize) -> Result<(), Failure> {
    let cap = max_level()?;
    if level > cap {
        return Err(Failure::Input(format!(
            "level {level} exceeds the cap of {cap}; raise SIGPOLY_MAX_LEVEL to allow it"
        )));
    }
    Ok(())
}

fn load<T: JsonDocument>(path: &Path) -> Result<T, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
    T::from_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_point(text: &str, dim: usize) -> Result<Vec<Rational>, Failure> {
    let point = text
        .split(',')
        .map(|s| parse_rational(s.trim()))
        .collect::<Result<Vec<_>, _>>()?;
    if point.len() != dim {
        return Err(Failure::Input(format!(
            "--start has {} coordinates, the map takes {dim}",
            point.len()
        )));
    }
    Ok(point)
}

/// Resolves the base point (explicit, else the path start, else the origin)
/// and reports the shifted map on stderr.
fn resolve_shift(
    map: &PolynomialMap,
    start: Option<&str>,
    path: Option<&PiecewisePolyPath>,
) -> Result<PolynomialMap, Failure> {
    let d = map.domain_dim();
    let x0 = match (start, path) {
        (Some(s), _) => parse_point(s, d)?,
        (None, Some(p)) => p.start(),
        (None, None) => vec![Rational::from_integer(0.into()); d],
    };
    let shifted = map.shift(&x0)?;
    let coords: Vec<String> = x0.iter().map(ToString::to_string).collect();
    eprintln!(
        "p~(y) = p(y + x0) - p(x0), x0 = ({}): {shifted}",
        coords.join(", ")
    );
    Ok(shifted)
}

fn with_newline(mut s: String) -> String {
    s.push('\n');
    s
}

fn render_tensor(t: &TensorElem, fmt: Format) -> String {
    match fmt {
        Format::Json => with_newline(t.to_json()),
        Format::Text => format!("{t}\n"),
    }
}

fn render_signature(sig: &TruncatedSignature, fmt: Format) -> String {
    match fmt {
        Format::Json => with_newline(sig.to_json()),
        Format::Text => {
            let d = sig.dim();
            let rows: Vec<(String, String)> = sig
                .data()
                .iter()
                .map(|(w, c)| (w.to_text(d), c.to_string()))
                .collect();
            let width = rows.iter().map(|(w, _)| w.len()).max().unwrap_or(1);
            let mut out = String::new();
            for (w, c) in rows {
                let _ = writeln!(out, "{w:>width$} → {c}");
            }
            out
        }
    }
}

fn render_blocks(blocks: &[sigpoly::LevelMatrix], fmt: Format) -> String {
    match fmt {
        Format::Json => {
            let docs: Vec<serde_json::Value> = blocks
                .iter()
                .map(|b| {
                    let mut v: serde_json::Value =
                        serde_json::from_str(&b.to_json()).expect("valid json");
                    let len = b.col_words.first().map_or(0, Word::len);
                    v["target_length"] = len.into();
                    v
                })
                .collect();
            with_newline(serde_json::to_string_pretty(&docs).expect("plain data"))
        }
        Format::Text => {
            let mut out = String::new();
            for (n, b) in blocks.iter().enumerate() {
                if n > 0 {
                    out.push('\n');
                }
                let len = b.col_words.first().map_or(0, Word::len);
                let _ = writeln!(out, "# target length {len}");
                out.push_str(&b.to_csv());
            }
            out
        }
    }
}

fn verify_instance(
    map: &PolynomialMap,
    path: &PiecewisePolyPath,
    level: usize,
    echo: bool,
) -> Outcome {
    let shifted = if echo {
        resolve_shift(map, None, Some(path))?
    } else {
        map.shift(&path.start())?
    };
    let sig = path_signature(path, required_level(&shifted, level));
    let via_m = transform_shifted(&shifted, &sig, level)?;
    let oracle = image_path_signature(map, path, level)?;
    let m = map.codomain_dim();
    let differing: Vec<String> = sigpoly::word::words_up_to(m, level)
        .filter(|w| via_m.coeff(w) != oracle.coeff(w))
        .map(|w| {
            format!(
                "{}: transform {} vs direct {}",
                w.to_text(m),
                via_m.coeff(&w),
                oracle.coeff(&w)
            )
        })
        .collect();
    if differing.is_empty() {
        Ok(format!(
            "ok: transform agrees with direct integration up to level {level}\n"
        ))
    } else {
        Err(Failure::Mismatch(format!(
            "{} words differ:\n  {}",
            differing.len(),
            differing.join("\n  ")
        )))
    }
}

fn verify_random(seed: u64, trials: usize, level: usize) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bounds = InstanceBounds {
        max_level: level.max(1),
        ..InstanceBounds::default()
    };
    for n in 0..trials {
        let inst = sampling::transform_instance(&mut rng, &bounds);
        verify_instance(&inst.map, &inst.path, inst.level, false).map_err(|f| match f {
            Failure::Mismatch(m) => Failure::Mismatch(format!("trial {n} (map {}): {m}", inst.map)),
            other => other,
        })?;
    }
    Ok(format!(
        "ok: {trials} random instances agree (seed {seed})\n"
    ))
}
