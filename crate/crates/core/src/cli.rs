//! The `freenil` command line: one JSON job per invocation.
//!
//! Exit codes are `0` on success, `1` when the library rejects the request
//! (the error object names the variant) and `2` for input that cannot be
//! read or parsed.

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Read, Write};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::decompose::{decompose, verify, Decomposition};
use crate::endo::{random_automorphism, GeneratorMap, GeneratorMapRepr, RandomParams};
use crate::error::Error;
use crate::lie::{central_factorize, normal_word};
use crate::ring::{GenSet, GroupContext, GroupElement, Weight, Word};
use crate::serde_util::to_json;

#[derive(Parser, Debug)]
#[command(name = "freenil", version, about = "Free nilpotent group arithmetic and automorphism factorization")]
struct Cli {
    /// Number of generators.
    #[arg(long, global = true)]
    rank: Option<usize>,
    /// Nilpotency class.
    #[arg(long, global = true)]
    class: Option<usize>,
    /// Input file, `-` for standard input.
    #[arg(long = "in", global = true, default_value = "-")]
    input: String,
    /// Output file, `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    out: String,
    /// Indented JSON output.
    #[arg(long, global = true)]
    pretty: bool,
    /// Print the input and output schemas instead of running.
    #[arg(long, global = true)]
    schema: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// Product `a·b` of {"a", "b"}.
    Mul,
    /// Inverse of an element.
    Inv,
    /// Commutator `[a, b] = a⁻¹b⁻¹ab` of {"a", "b"}.
    Comm,
    /// Lower central series weight of an element.
    Weight,
    /// Image of {"a"} under {"map"}.
    Apply,
    /// The composite `left ∘ right` of {"left", "right"}.
    Compose,
    /// Whether a map is an automorphism.
    IsAut,
    /// Inverse of an automorphism.
    InvertAut,
    /// Seeded random automorphism fixing `--fix`.
    RandomAut {
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        fix: Vec<usize>,
    },
    /// Factorization of an automorphism fixing `--fix` pointwise.
    Decompose {
        #[arg(long, value_delimiter = ',')]
        fix: Vec<usize>,
    },
    /// Independent check of a decomposition.
    Verify,
    /// Left-normed commutator expansion of a central element.
    CentralFactorize,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Mul => "mul",
            Command::Inv => "inv",
            Command::Comm => "comm",
            Command::Weight => "weight",
            Command::Apply => "apply",
            Command::Compose => "compose",
            Command::IsAut => "is-aut",
            Command::InvertAut => "invert-aut",
            Command::RandomAut { .. } => "random-aut",
            Command::Decompose { .. } => "decompose",
            Command::Verify => "verify",
            Command::CentralFactorize => "central-factorize",
        }
    }
}

enum Failure {
    Domain(Error),
    Malformed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Malformed(e.to_string())
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

/// An element given either as a bare word or as `{"word": [...]}`.
#[derive(Deserialize)]
#[serde(untagged)]
enum ElementInput {
    Bare(Word),
    Wrapped { word: Word },
}

impl ElementInput {
    fn element(self, ctx: GroupContext) -> Outcome<GroupElement> {
        let word = match self {
            ElementInput::Bare(w) | ElementInput::Wrapped { word: w } => w,
        };
        Ok(GroupElement::from_word(ctx, &word)?)
    }
}

#[derive(Serialize)]
struct ElementOutput {
    word: Word,
}

impl ElementOutput {
    fn of(e: &GroupElement) -> Self {
        ElementOutput { word: normal_word(e) }
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairInput {
    a: ElementInput,
    b: ElementInput,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ApplyInput {
    map: GeneratorMapRepr,
    a: ElementInput,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ComposeInput {
    left: GeneratorMapRepr,
    right: GeneratorMapRepr,
}

#[derive(Serialize)]
struct AutomorphismReport {
    automorphism: bool,
    #[serde(with = "crate::serde_util::bigint_number")]
    determinant: num_bigint::BigInt,
}

/// Runs the command line with the process's arguments and standard streams.
pub fn main() -> i32 {
    let stdin = io::stdin();
    let stdout = io::stdout();
    let stderr = io::stderr();
    run(std::env::args_os(), &mut stdin.lock(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs one invocation against the given streams and returns the exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    if cli.schema {
        let value = schema(cli.command.as_ref().map(Command::name));
        let _ = writeln!(stdout, "{}", to_json(&value, cli.pretty));
        return 0;
    }
    let Some(command) = cli.command.clone() else {
        let _ = writeln!(stderr, "error: a subcommand is required (see --help)");
        return 2;
    };
    match execute(&cli, &command, stdin) {
        Ok(value) => {
            let text = to_json(&value, cli.pretty);
            match write_output(&cli.out, &text, stdout) {
                Ok(()) => 0,
                Err(e) => report(stdout, "Io", &e.to_string(), cli.pretty, 2),
            }
        }
        Err(Failure::Domain(e)) => report(stdout, e.name(), &e.to_string(), cli.pretty, 1),
        Err(Failure::Malformed(msg)) => report(stdout, "MalformedInput", &msg, cli.pretty, 2),
    }
}

fn report(stdout: &mut dyn Write, name: &str, message: &str, pretty: bool, code: i32) -> i32 {
    let value = json!({ "error": name, "message": message });
    let _ = writeln!(stdout, "{}", to_json(&value, pretty));
    code
}

fn write_output(path: &str, text: &str, stdout: &mut dyn Write) -> io::Result<()> {
    if path == "-" {
        writeln!(stdout, "{text}")
    } else {
        fs::write(path, format!("{text}\n"))
    }
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Outcome<String> {
    let mut buf = String::new();
    let result = if path == "-" {
        stdin.read_to_string(&mut buf).map(|_| buf)
    } else {
        fs::read_to_string(path)
    };
    result.map_err(|e| Failure::Malformed(format!("{path}: {e}")))
}

fn parse<T: for<'de> Deserialize<'de>>(cli: &Cli, stdin: &mut dyn Read) -> Outcome<T> {
    Ok(serde_json::from_str(&read_input(&cli.input, stdin)?)?)
}

/// Context from `--rank`/`--class`, both required.
fn flag_context(cli: &Cli) -> Outcome<GroupContext> {
    match (cli.rank, cli.class) {
        (Some(n), Some(c)) => Ok(GroupContext::new(n, c)?),
        _ => Err(Failure::Malformed("--rank and --class are required".into())),
    }
}

/// A map's own context, cross-checked against any `--rank`/`--class` given.
fn map_from(cli: &Cli, repr: GeneratorMapRepr) -> Outcome<GeneratorMap> {
    let map = GeneratorMap::try_from(repr)?;
    let ctx = map.context();
    if cli.rank.is_some_and(|n| n != ctx.rank()) || cli.class.is_some_and(|c| c != ctx.class()) {
        return Err(Error::ContextMismatch.into());
    }
    Ok(map)
}

fn gen_set(fix: &[usize]) -> GenSet {
    fix.iter().copied().collect()
}

fn execute(cli: &Cli, command: &Command, stdin: &mut dyn Read) -> Outcome<Value> {
    let value = match command {
        Command::Mul | Command::Comm => {
            let ctx = flag_context(cli)?;
            let input: PairInput = parse(cli, stdin)?;
            let (a, b) = (input.a.element(ctx)?, input.b.element(ctx)?);
            let r = if matches!(command, Command::Mul) { a.mul(&b)? } else { a.comm(&b)? };
            serde_json::to_value(ElementOutput::of(&r))?
        }
        Command::Inv => {
            let ctx = flag_context(cli)?;
            let a = parse::<ElementInput>(cli, stdin)?.element(ctx)?;
            serde_json::to_value(ElementOutput::of(&a.inv()))?
        }
        Command::Weight => {
            let ctx = flag_context(cli)?;
            let a = parse::<ElementInput>(cli, stdin)?.element(ctx)?;
            match a.lcs_weight() {
                Weight::Finite(k) => json!({ "weight": k }),
                Weight::Infinite => json!({ "weight": "infinity" }),
            }
        }
        Command::Apply => {
            let input: ApplyInput = parse(cli, stdin)?;
            let map = map_from(cli, input.map)?;
            let a = input.a.element(*map.context())?;
            serde_json::to_value(ElementOutput::of(&map.apply(&a)?))?
        }
        Command::Compose => {
            let input: ComposeInput = parse(cli, stdin)?;
            let (left, right) = (map_from(cli, input.left)?, map_from(cli, input.right)?);
            serde_json::to_value(left.compose(&right)?)?
        }
        Command::IsAut => {
            let map = map_from(cli, parse(cli, stdin)?)?;
            let report =
                AutomorphismReport { automorphism: map.is_automorphism(), determinant: map.determinant() };
            serde_json::to_value(report)?
        }
        Command::InvertAut => {
            let map = map_from(cli, parse(cli, stdin)?)?;
            serde_json::to_value(map.invert()?)?
        }
        Command::RandomAut { seed, length, fix } => {
            let ctx = flag_context(cli)?;
            let (Some(seed), Some(length)) = (seed, length) else {
                return Err(Failure::Malformed("random-aut needs --seed and --length".into()));
            };
            let fix = gen_set(fix);
            ctx.check_subset(&fix)?;
            let map = random_automorphism(*seed, ctx, &RandomParams { length: *length, fix });
            serde_json::to_value(map)?
        }
        Command::Decompose { fix } => {
            let map = map_from(cli, parse(cli, stdin)?)?;
            serde_json::to_value(decompose(&map, &gen_set(fix))?)?
        }
        Command::Verify => {
            let dec: Decomposition = parse(cli, stdin)?;
            serde_json::to_value(verify(&dec))?
        }
        Command::CentralFactorize => {
            let ctx = flag_context(cli)?;
            let a = parse::<ElementInput>(cli, stdin)?.element(ctx)?;
            serde_json::to_value(central_factorize(&a)?)?
        }
    };
    Ok(value)
}

fn word_schema() -> Value {
    json!({
        "type": "array",
        "description": "letters [generator, exponent], generator in 1..=rank, exponent a nonzero 64-bit integer",
        "items": { "type": "array", "prefixItems": [{ "type": "integer", "minimum": 1 }, { "type": "integer" }] }
    })
}

fn schemas() -> BTreeMap<&'static str, Value> {
    let word = word_schema();
    let element = json!({ "oneOf": [word, { "type": "object", "properties": { "word": word }, "required": ["word"] }] });
    let element_out = json!({ "type": "object", "properties": { "word": word }, "required": ["word"] });
    let map = json!({
        "type": "object",
        "properties": {
            "rank": { "type": "integer", "minimum": 1 },
            "class": { "type": "integer", "minimum": 1 },
            "images": { "type": "array", "items": word, "description": "one word per generator, in order" }
        },
        "required": ["rank", "class", "images"]
    });
    let gen_set = json!({ "type": "array", "items": { "type": "integer", "minimum": 1 }, "uniqueItems": true });
    let integer = json!({ "oneOf": [{ "type": "integer" }, { "type": "string", "pattern": "^-?[0-9]+$" }] });
    let tag = json!({ "enum": ["elementary_abelian", "shear", "permutation", "sign", "lifted", "central_beta"] });
    let decomposition = json!({
        "type": "object",
        "properties": {
            "input": map,
            "fixed": gen_set,
            "factors": { "type": "array", "items": {
                "type": "object",
                "properties": {
                    "map": map,
                    "certificate": { "type": "object", "properties": { "fixed": gen_set, "preserved": gen_set }, "required": ["fixed", "preserved"] },
                    "tag": tag,
                    "level": { "type": "integer", "minimum": 1 },
                    "part": { "type": "integer", "minimum": 1 },
                    "origin": tag
                },
                "required": ["map", "certificate", "tag", "level"]
            }}
        },
        "required": ["input", "fixed", "factors"]
    });
    let pair = json!({ "type": "object", "properties": { "a": element, "b": element }, "required": ["a", "b"] });
    let none = json!({ "type": "null", "description": "no input is read" });

    let mut out = BTreeMap::new();
    out.insert("mul", json!({ "input": pair, "output": element_out }));
    out.insert("comm", json!({ "input": pair, "output": element_out }));
    out.insert("inv", json!({ "input": element, "output": element_out }));
    out.insert("weight", json!({
        "input": element,
        "output": { "type": "object", "properties": { "weight": { "oneOf": [{ "type": "integer" }, { "const": "infinity" }] } } }
    }));
    out.insert("apply", json!({
        "input": { "type": "object", "properties": { "map": map, "a": element }, "required": ["map", "a"] },
        "output": element_out
    }));
    out.insert("compose", json!({
        "input": { "type": "object", "properties": { "left": map, "right": map }, "required": ["left", "right"] },
        "output": map
    }));
    out.insert("is-aut", json!({
        "input": map,
        "output": { "type": "object", "properties": { "automorphism": { "type": "boolean" }, "determinant": integer } }
    }));
    out.insert("invert-aut", json!({ "input": map, "output": map }));
    out.insert("random-aut", json!({ "input": none, "output": map }));
    out.insert("decompose", json!({ "input": map, "output": decomposition }));
    out.insert("verify", json!({
        "input": decomposition,
        "output": { "type": "object", "properties": {
            "ok": { "type": "boolean" },
            "factor_count": { "type": "integer" },
            "min_fixed_block": { "type": ["integer", "null"] },
            "max_coefficient": integer,
            "failures": { "type": "array", "items": { "type": "string" } }
        }}
    }));
    out.insert("central-factorize", json!({
        "input": element,
        "output": { "type": "array", "items": {
            "type": "object",
            "properties": { "comm": gen_set, "exp": integer },
            "required": ["comm", "exp"]
        }}
    }));
    out
}

fn schema(command: Option<&str>) -> Value {
    let mut all = schemas();
    match command.and_then(|c| all.remove(c)) {
        Some(one) => one,
        None => serde_json::to_value(all).expect("serializable"),
    }
}
