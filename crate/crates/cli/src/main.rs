//! `torelli`: deterministic JSON/CSV tables for the torelli-core computations.
//!
//! Throughout, `n` is the half-dimension: the manifold is `W_g^{2n}`.

use std::collections::BTreeMap;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use torelli_core::arithmetic_groups::{
    gamma_type, is_in_group, quadratic_refinement, sample_group_element, ArithmeticGroup, FormSign,
    GammaType, QuadraticModulus,
};
use torelli_core::borel::{
    borel_constant_rep_with, lform_inequality_check, root_system, stated_lower_bound,
    BorelConstant, ConeReading, RootFamily,
};
use torelli_core::char_classes::{l_hat_polynomial, l_polynomial, p_in_terms_of_l};
use torelli_core::invariants::{
    brute_force_invariant_run, invariant_crosscheck, GradedVCopies, OracleConfig,
};
use torelli_core::mt_cohomology::{
    mt_generators, mt_series, pair_generators, stable_range, theorem_b_series, torelli_generators,
    torelli_invariant_series,
};
use torelli_core::{format_rational, Error, HilbertSeries, WeightedPolynomial};

const N_HELP: &str = "half-dimension n of W_g^{2n} (pass n, not 2n)";

#[derive(Parser, Debug)]
#[command(
    name = "torelli",
    version,
    about = "Exact tables for stable cohomology of W_g^{2n}"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    #[value(name = "C")]
    C,
    #[value(name = "D")]
    D,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Cone {
    Rational,
    Integral,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GroupKind {
    Sp,
    O,
    Theta,
}

impl GroupKind {
    fn gamma(self) -> GammaType {
        match self {
            GroupKind::Sp => GammaType::Symplectic,
            GroupKind::O => GammaType::Orthogonal,
            GroupKind::Theta => GammaType::Theta,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            GroupKind::Sp => "sp",
            GroupKind::O => "o",
            GroupKind::Theta => "theta",
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Stable range constant C_g^{2n}.
    StableRange {
        #[arg(long)]
        g: u32,
        #[arg(long, help = N_HELP)]
        n: u32,
    },
    /// Hirzebruch L-polynomials L_1..L_I in the Pontryagin classes.
    LClass {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=24))]
        upto: u32,
        /// Use the series (x/2)/tanh(x/2) instead.
        #[arg(long)]
        hat: bool,
    },
    /// Pontryagin classes p_1..p_I in terms of L_1..L_I.
    PFromL {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=24))]
        upto: u32,
    },
    /// Hilbert series of the stable cohomology of the diffeomorphism group.
    MtSeries {
        #[arg(long, help = N_HELP, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        maxdeg: u32,
    },
    /// Hilbert series of the Torelli-invariant quotient ring.
    TorelliSeries {
        #[arg(long, help = N_HELP, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        maxdeg: u32,
    },
    /// Hilbert series of the polynomial ring on kappa_{L_a L_b}.
    #[command(name = "theoremB-series")]
    TheoremBSeries {
        #[arg(long, help = N_HELP, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[arg(long)]
        maxdeg: u32,
    },
    /// Borel constant c(G, V^{tensor k}) for G of type C_g or D_g.
    BorelConstant {
        #[arg(long, value_enum, ignore_case = true)]
        family: Family,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        qmax: usize,
        #[arg(long, value_enum, default_value_t = Cone::Rational)]
        cone: Cone,
    },
    /// Sign of the linear-form estimate at a_1 = 2^{10g}, a_j = 2^{-10gj}.
    LformCheck {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        q: usize,
    },
    /// A seeded random word in the generators of an arithmetic group.
    GroupSample {
        #[arg(long = "type", value_enum)]
        kind: GroupKind,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        len: usize,
    },
    /// Quadratic refinement q(v) in Z / Lambda_n.
    QuadRefine {
        #[arg(long, help = N_HELP)]
        n: u32,
        /// Coordinates a_1,..,a_g,b_1,..,b_g.
        #[arg(
            long,
            value_delimiter = ',',
            allow_hyphen_values = true,
            required = true
        )]
        vector: Vec<i64>,
    },
    /// Brute-force invariant dimension of one degree of S[V[d_1] + ... ].
    InvariantOracle {
        #[arg(long = "type", value_enum)]
        kind: GroupKind,
        #[arg(long)]
        g: usize,
        /// Degrees of the graded copies of V.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long)]
        deg: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Largest admissible dimension of the graded piece.
        #[arg(long, default_value_t = 4096)]
        cap: usize,
    },
    /// Stable omega count against the kappa_{L_aL_b} ring, optionally with the oracle.
    #[command(name = "crosscheck-sec6")]
    Crosscheck {
        #[arg(long, help = N_HELP)]
        n: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        maxdeg: u32,
        #[arg(long)]
        oracle: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

struct CommandResult {
    command: &'static str,
    parameters: Map<String, Value>,
    table: Vec<Map<String, Value>>,
    provenance: Vec<&'static str>,
}

impl CommandResult {
    fn new(command: &'static str, parameters: Value, provenance: &[&'static str]) -> Self {
        let Value::Object(parameters) = parameters else {
            unreachable!("parameters are built with json!({{..}})")
        };
        CommandResult {
            command,
            parameters,
            table: Vec::new(),
            provenance: provenance.to_vec(),
        }
    }

    fn row(&mut self, record: Value) {
        let Value::Object(record) = record else {
            unreachable!("records are built with json!({{..}})")
        };
        self.table.push(record);
    }

    fn to_json(&self) -> String {
        let value = json!({
            "command": self.command,
            "parameters": self.parameters,
            "table": self.table,
            "provenance": self.provenance,
        });
        serde_json::to_string_pretty(&value).expect("serializable")
    }

    fn to_csv(&self) -> io::Result<String> {
        let columns: Vec<&String> = {
            let mut keys: Vec<&String> = self.table.iter().flat_map(|r| r.keys()).collect();
            keys.sort();
            keys.dedup();
            keys
        };
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(columns.iter().map(|c| c.as_str()))?;
        for record in &self.table {
            w.write_record(columns.iter().map(|c| match record.get(*c) {
                None | Some(Value::Null) => String::new(),
                Some(Value::String(s)) => s.clone(),
                Some(other) => other.to_string(),
            }))?;
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn bigint_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) => json!(v),
        Err(_) => json!(x.to_string()),
    }
}

fn series_rows(out: &mut CommandResult, series: &HilbertSeries, generator_degrees: &[u32]) {
    let mut per_degree: BTreeMap<u32, u64> = BTreeMap::new();
    for &d in generator_degrees {
        *per_degree.entry(d).or_default() += 1;
    }
    for (d, &c) in series.coefficients().iter().enumerate() {
        out.row(json!({
            "degree": d,
            "dimension": c,
            "generators": per_degree.get(&(d as u32)).copied().unwrap_or(0),
        }));
    }
}

fn polynomial_rows(out: &mut CommandResult, i: u32, poly: &WeightedPolynomial) {
    for (m, c) in poly.terms() {
        out.row(json!({
            "i": i,
            "degree": 4 * i,
            "monomial": m.to_string(),
            "coefficient": format_rational(c),
        }));
    }
}

fn borel_json(c: BorelConstant) -> (Value, &'static str) {
    match c {
        BorelConstant::FailsAtZero => (Value::Null, "fails_at_zero"),
        BorelConstant::Exact(q) => (json!(q), "exact"),
        BorelConstant::AtLeast(q) => (json!(q), "at_least"),
    }
}

fn run(command: &Command) -> Result<CommandResult, Error> {
    let out = match *command {
        Command::StableRange { g, n } => {
            let mut out = CommandResult::new(
                "stable-range",
                json!({"g": g, "n": n}),
                &[
                    "stable-range:homological-stability",
                    "stable-range:pseudoisotopy-disjunction",
                ],
            );
            out.row(json!({"C": stable_range(g, n).value()}));
            out
        }
        Command::LClass { upto, hat } => {
            let mut out = CommandResult::new(
                "l-class",
                json!({"upto": upto, "hat": hat}),
                if hat {
                    &["hirzebruch-l-class", "l-hat-rescaling"][..]
                } else {
                    &["hirzebruch-l-class"][..]
                },
            );
            for i in 1..=upto {
                let poly = if hat {
                    l_hat_polynomial(i)
                } else {
                    l_polynomial(i)
                };
                polynomial_rows(&mut out, i, &poly);
            }
            out
        }
        Command::PFromL { upto } => {
            let mut out = CommandResult::new(
                "p-from-l",
                json!({"upto": upto}),
                &["hirzebruch-l-class", "bso-presentation-in-l-classes"],
            );
            for i in 1..=upto {
                polynomial_rows(&mut out, i, &p_in_terms_of_l(i));
            }
            out
        }
        Command::MtSeries { n, maxdeg } => {
            let mut out = CommandResult::new(
                "mt-series",
                json!({"n": n, "maxdeg": maxdeg}),
                &["madsen-tillmann-cohomology-presentation"],
            );
            let degrees: Vec<u32> = mt_generators(n, maxdeg).iter().map(|g| g.degree).collect();
            series_rows(&mut out, &mt_series(n, maxdeg)?, &degrees);
            out
        }
        Command::TorelliSeries { n, maxdeg } => {
            let mut out = CommandResult::new(
                "torelli-series",
                json!({"n": n, "maxdeg": maxdeg}),
                &["torelli-invariant-quotient-presentation"],
            );
            let degrees: Vec<u32> = torelli_generators(n, maxdeg)
                .iter()
                .map(|g| g.degree)
                .collect();
            series_rows(&mut out, &torelli_invariant_series(n, maxdeg)?, &degrees);
            out
        }
        Command::TheoremBSeries { n, maxdeg } => {
            let mut out = CommandResult::new(
                "theoremB-series",
                json!({"n": n, "maxdeg": maxdeg}),
                &["kappa-LaLb-presentation"],
            );
            let degrees: Vec<u32> = pair_generators(n, maxdeg)
                .iter()
                .map(|p| p.degree)
                .collect();
            series_rows(&mut out, &theorem_b_series(n, maxdeg)?, &degrees);
            out
        }
        Command::BorelConstant {
            family,
            g,
            k,
            qmax,
            cone,
        } => {
            let (family, family_name) = match family {
                Family::C => (RootFamily::C, "C"),
                Family::D => (RootFamily::D, "D"),
            };
            let (reading, cone_name) = match cone {
                Cone::Rational => (ConeReading::Rational, "rational"),
                Cone::Integral => (ConeReading::Integral, "integral"),
            };
            let mut out = CommandResult::new(
                "borel-constant",
                json!({"family": family_name, "g": g, "k": k, "qmax": qmax, "cone": cone_name}),
                &["borel-constant-bound"],
            );
            let rs = root_system(family, g)?;
            let c = borel_constant_rep_with(&rs, k, qmax, reading);
            let bound = stated_lower_bound(family, g, k);
            let (value, status) = borel_json(c);
            out.row(json!({
                "c": value,
                "status": status,
                "bound": bound,
                "bound_met": c.meets(bound),
            }));
            out
        }
        Command::LformCheck { g, k, q } => {
            let mut out = CommandResult::new(
                "lform-check",
                json!({"g": g, "k": k, "q": q}),
                &["borel-constant-bound", "borel-linear-form"],
            );
            let positive = lform_inequality_check(g, k, q)?;
            out.row(json!({
                "leading_coefficient": g as i64 - k as i64 - q as i64 - 1,
                "positive": positive,
            }));
            out
        }
        Command::GroupSample { kind, g, seed, len } => {
            let group = ArithmeticGroup::new(kind.gamma(), g)?;
            let mut out = CommandResult::new(
                "group-sample",
                json!({"type": kind.as_str(), "g": g, "seed": seed, "len": len}),
                &["gamma-case-split", "arithmetic-group-generators"],
            );
            let a = sample_group_element(&group, seed, len)?;
            let in_group = is_in_group(&a, &group.form())?;
            for (i, row) in a.rows().iter().enumerate() {
                out.row(json!({
                    "row": i,
                    "entries": row.iter().map(bigint_value).collect::<Vec<_>>(),
                    "in_group": in_group,
                }));
            }
            out
        }
        Command::QuadRefine { n, ref vector } => {
            let v: Vec<BigInt> = vector.iter().map(|&x| BigInt::from(x)).collect();
            let mut out = CommandResult::new(
                "quad-refine",
                json!({"n": n, "vector": vector}),
                &["quadratic-refinement", "gamma-case-split"],
            );
            let q = quadratic_refinement(&v, n)?;
            let sign = match FormSign::for_n(n) {
                FormSign::Plus => "+",
                FormSign::Minus => "-",
            };
            out.row(json!({
                "q": bigint_value(&q.value),
                "lambda": QuadraticModulus::for_n(n).name(),
                "form_sign": sign,
                "gamma": gamma_type(n).name(),
            }));
            out
        }
        Command::InvariantOracle {
            kind,
            g,
            ref degrees,
            deg,
            seed,
            cap,
        } => {
            let group = ArithmeticGroup::new(kind.gamma(), g)?;
            let copies = GradedVCopies::new(g, degrees.clone())?;
            let config = OracleConfig {
                basis_cap: cap,
                ..OracleConfig::default()
            };
            let mut out = CommandResult::new(
                "invariant-oracle",
                json!({
                    "type": kind.as_str(),
                    "g": g,
                    "degrees": degrees,
                    "deg": deg,
                    "seed": seed,
                    "cap": cap,
                    "word_length": config.word_length,
                    "stable_runs": config.stable_runs,
                }),
                &[
                    "invariant-oracle:zariski-density",
                    "berglund-madsen-description",
                ],
            );
            let run = brute_force_invariant_run(&group, &copies, deg, seed, &config)?;
            out.row(json!({
                "degree": deg,
                "dimension": run.dimension,
                "piece_dimension": run.piece_dimension,
                "zero_weight_dimension": run.zero_weight_dimension,
                "samples": run.history.len(),
                "stabilized": run.stabilized,
            }));
            out
        }
        Command::Crosscheck {
            n,
            g,
            maxdeg,
            oracle,
            seed,
        } => {
            let mut out = CommandResult::new(
                "crosscheck-sec6",
                json!({"n": n, "g": g, "maxdeg": maxdeg, "oracle": oracle, "seed": seed}),
                &[
                    "kappa-LaLb-presentation",
                    "berglund-madsen-description",
                    "stable-omega-invariants",
                ],
            );
            let report = invariant_crosscheck(n, g, maxdeg, oracle, seed)?;
            for r in &report.rows {
                out.row(json!({
                    "degree": r.degree,
                    "stable": r.stable_count,
                    "ring_side": r.ring_side_count,
                    "oracle": r.oracle_count,
                    "ring_agrees": r.ring_agrees,
                    "oracle_agrees": r.oracle_agrees,
                    "bm_range": r.degree < report.bm_valid_below,
                }));
            }
            out
        }
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    let result = match run(&cli.command) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_range_error() { 3 } else { 2 });
        }
    };
    let text = match cli.format {
        Format::Json => result.to_json(),
        Format::Csv => match result.to_csv() {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(1);
            }
        },
    };
    let mut stdout = io::stdout().lock();
    if writeln!(stdout, "{}", text.trim_end()).is_err() {
        return ExitCode::from(1);
    }
    ExitCode::SUCCESS
}
