//! Command-line front end. Exit codes: 0 pass, 1 semantic failure, 2 input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use semiarc::analysis::{analyze, AnalysisRequest, PointSet};
use semiarc::blocking::associate_blocking_set;
use semiarc::constructions::{build, ConstructionName, ConstructionSpec};
use semiarc::directions::{affine_set, directions_of, extend_preserving_directions, trichotomy_class};
use semiarc::field::Field;
use semiarc::io::{read_pointset, read_pointset_for, read_poly, write_pointset};
use semiarc::plane::{LineId, Plane, PointId};
use semiarc::redei::szw_check;
use semiarc::search::scenarios::{verify_scenario, Scenario, ScenarioOptions, Status};
use semiarc::search::{search_semiarcs, SearchSpec};

const SCHEMA: u32 = 1;

#[derive(Parser)]
#[command(name = "semiarc", version, about = "Semiarcs and blocking sets in small projective planes")]
struct Cli {
    /// Seed for every random choice; echoed in the output.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads for searches. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 1)]
    workers: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Analyze a point-set file.
    Verify {
        file: PathBuf,
        /// Expected semiarc parameter; exit 1 on mismatch.
        #[arg(long)]
        t: Option<usize>,
        /// Line for per-line statistics, as an index or `a:b:c`.
        #[arg(long)]
        secant: Option<String>,
        /// Compute A(n) on the secant for each value.
        #[arg(long = "a-n")]
        a_n: Vec<usize>,
    },
    /// Build a catalog construction.
    Construct {
        name: String,
        #[arg(long)]
        q: usize,
        #[arg(long)]
        t: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long)]
        tau: Option<usize>,
        #[arg(long)]
        line: Option<String>,
        #[arg(long)]
        second_line: Option<String>,
        #[arg(long, default_value_t = 0)]
        subgroup_pair: usize,
        /// KM-arc or blocking set the construction starts from.
        #[arg(long)]
        input: Option<PathBuf>,
        /// Write the point set here; otherwise it goes to stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the blocking set associated with a semiarc and one of its secants.
    Blockify {
        file: PathBuf,
        #[arg(long)]
        secant: String,
        #[arg(long)]
        n: usize,
        /// Skip hypothesis checks; the output is marked uncertified.
        #[arg(long)]
        unchecked: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a search described by a JSON spec.
    Search {
        spec: PathBuf,
        /// Run even if the node estimate exceeds the budget.
        #[arg(long)]
        override_budget: bool,
        /// Write each witness as a point-set file in this directory.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Check the gcd-degree inequality for two polynomial files.
    Szw {
        f: PathBuf,
        g: PathBuf,
        /// Only this y0; default is every field element.
        #[arg(long)]
        y0: Option<usize>,
    },
    /// Directions determined by the affine part of a point set.
    Directions {
        file: PathBuf,
        /// Also list the points that extend the set without new directions.
        #[arg(long)]
        extend: bool,
    },
    /// Run a named structural scenario.
    Scenario {
        name: String,
        #[arg(long)]
        q: usize,
        /// Orbit representatives under the secant stabilizer only.
        #[arg(long)]
        reduced: bool,
        /// Restrict the two-line scenario to these t.
        #[arg(long = "t", value_delimiter = ',')]
        t_values: Vec<usize>,
        #[arg(long)]
        budget: Option<f64>,
    },
    /// Print the incidence file of PG(2,q).
    Plane {
        #[arg(long)]
        q: usize,
    },
}

enum Failure {
    Semantic(Value),
    Input(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::Input(e.to_string())
    }
}

type Outcome = Result<Value, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn parse_line(plane: &Plane, s: &str) -> Result<LineId, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b, c] => {
            let n = |x: &str| x.trim().parse::<usize>().map_err(|_| Failure::Input(format!("bad line {s:?}")));
            Ok(plane.line_abc(n(a)?, n(b)?, n(c)?)?)
        }
        [i] => {
            let i: u32 = i.trim().parse().map_err(|_| Failure::Input(format!("bad line {s:?}")))?;
            if i as usize >= plane.num_lines() {
                return Err(Failure::Input(format!("line {i} out of range")));
            }
            Ok(LineId(i))
        }
        _ => Err(Failure::Input(format!("bad line {s:?}, expected an index or a:b:c"))),
    }
}

fn coords(plane: &Plane, pts: &[PointId]) -> Vec<String> {
    pts.iter()
        .map(|&p| match plane.point_coords(p) {
            Ok([x, y, z]) => format!("{}:{}:{}", x.value(), y.value(), z.value()),
            Err(_) => p.0.to_string(),
        })
        .collect()
}

/// Wraps a result with the tool version, schema, field and parameter echo.
fn envelope(command: &str, field: &Field, params: Value, result: Value) -> Value {
    json!({
        "tool": "semiarc",
        "version": env!("CARGO_PKG_VERSION"),
        "schema": SCHEMA,
        "command": command,
        "field": field.header(),
        "params": params,
        "result": result,
    })
}

fn run(cli: Cli) -> Outcome {
    let seed = cli.seed;
    let workers = cli.workers.max(1);
    match cli.command {
        Command::Verify { file, t, secant, a_n } => {
            let (plane, set) = read_pointset(&read(&file)?)?;
            let line = secant.as_deref().map(|s| parse_line(&plane, s)).transpose()?;
            let report = analyze(&plane, &set, &AnalysisRequest { line, t, a_n: a_n.clone() })?;
            let pass = t.map_or(true, |t| report.semiarc_t == Some(t));
            let params = json!({ "file": file, "t": t, "secant": line, "a_n": a_n, "provenance": set.provenance() });
            let mut result = serde_json::to_value(&report)?;
            result["points"] = json!(coords(&plane, set.points()));
            result["pass"] = json!(pass);
            let out = envelope("verify", plane.coord_field()?, params, result);
            if pass {
                Ok(out)
            } else {
                Err(Failure::Semantic(out))
            }
        }
        Command::Construct { name, q, t, r, tau, line, second_line, subgroup_pair, input, out } => {
            let name: ConstructionName = name.parse().map_err(Failure::Input)?;
            let plane = Plane::pg2_order(q)?;
            let mut spec = ConstructionSpec::new(name, q);
            spec.t = t;
            spec.r = r;
            spec.tau = tau;
            spec.line = line.as_deref().map(|s| parse_line(&plane, s)).transpose()?;
            spec.second_line = second_line.as_deref().map(|s| parse_line(&plane, s)).transpose()?;
            spec.subgroup_pair = subgroup_pair;
            spec.seed = seed;
            let input_set = match &input {
                Some(p) => Some(read_pointset_for(&plane, &read(p)?)?),
                None => None,
            };
            let c = build(&plane, &spec, input_set.as_ref())?;
            let text = write_pointset(&plane, &c.set)?;
            let field = plane.coord_field()?;
            match out {
                Some(path) => {
                    write(&path, &text)?;
                    let result = json!({
                        "file": path,
                        "size": c.set.len(),
                        "t": c.t,
                        "k": c.k,
                        "secants": c.secants,
                        "points": coords(&plane, c.set.points()),
                    });
                    Ok(envelope("construct", field, serde_json::to_value(&spec)?, result))
                }
                None => {
                    emit(&text);
                    Ok(Value::Null)
                }
            }
        }
        Command::Blockify { file, secant, n, unchecked, out } => {
            let (plane, set) = read_pointset(&read(&file)?)?;
            let line = parse_line(&plane, &secant)?;
            let assoc = associate_blocking_set(&plane, &set, line, n, !unchecked)?;
            let b = PointSet::new(&plane, assoc.points.clone(), format!("blocking set of {} on line {}, n={n}", file.display(), line.0))?;
            let params = json!({ "file": file, "secant": line, "n": n, "unchecked": unchecked });
            let mut result = serde_json::to_value(&assoc)?;
            result["size"] = json!(b.len());
            result["size_matches"] = json!(b.len() as i64 == assoc.expected_size);
            result["point_coords"] = json!(coords(&plane, b.points()));
            if let Some(path) = &out {
                write(path, &write_pointset(&plane, &b)?)?;
                result["file"] = json!(path);
            }
            Ok(envelope("blockify", plane.coord_field()?, params, result))
        }
        Command::Search { spec, override_budget, out_dir } => {
            let text = read(&spec)?;
            let mut s: SearchSpec = serde_json::from_str(&text)?;
            s.override_budget |= override_budget;
            let plane = Plane::pg2_order(s.q)?;
            let res = search_semiarcs(&plane, &s, workers)?;
            if res.over_budget {
                eprintln!("warning: estimate exceeds the node budget; this run is not certified");
            }
            if let Some(dir) = &out_dir {
                fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
                for (i, w) in res.witnesses.iter().enumerate() {
                    write(&dir.join(format!("witness_{i:04}.pts")), &write_pointset(&plane, w)?)?;
                }
            }
            let mut result = serde_json::to_value(&res)?;
            result["wall_time_s"] = json!(res.wall_time.as_secs_f64());
            let params = json!({ "spec": s, "workers": workers });
            Ok(envelope("search", plane.coord_field()?, params, result))
        }
        Command::Szw { f, g, y0 } => {
            let (field_f, pf) = read_poly(&read(&f)?)?;
            let (field_g, pg) = read_poly(&read(&g)?)?;
            if field_f.header() != field_g.header() {
                return Err(Failure::Input(format!("fields differ: {} and {}", field_f.header(), field_g.header())));
            }
            let ys: Vec<_> = match y0 {
                Some(v) => vec![field_f.try_elem(v)?],
                None => field_f.elements().collect(),
            };
            let outcomes = ys.into_iter().map(|y| szw_check(&field_f, &pf, &pg, y)).collect::<Result<Vec<_>, _>>()?;
            let holds = outcomes.iter().all(|o| o.holds);
            let params = json!({ "f": f, "g": g, "y0": y0 });
            let out = envelope("szw", &field_f, params, json!({ "holds": holds, "checks": outcomes }));
            if holds {
                Ok(out)
            } else {
                Err(Failure::Semantic(out))
            }
        }
        Command::Directions { file, extend } => {
            let (plane, set) = read_pointset(&read(&file)?)?;
            // points at infinity are ignored
            let inf = plane.line_at_infinity()?;
            let finite: Vec<PointId> = set.points().iter().copied().filter(|&p| !plane.incident(p, inf)).collect();
            let u = affine_set(&plane, &finite)?;
            let dirs = directions_of(&plane, &u)?;
            let mut result = json!({
                "affine_points": u.len(),
                "directions": coords(&plane, &dirs),
                "count": dirs.len(),
            });
            if u.len() == plane.order() {
                let class = trichotomy_class(&plane, &u)?;
                result["z"] = json!(class.z);
                result["band"] = serde_json::to_value(class.band)?;
            }
            if extend && u.len() < plane.order() {
                result["extensions"] = json!(coords(&plane, &extend_preserving_directions(&plane, &u)?));
            }
            let params = json!({ "file": file, "extend": extend });
            Ok(envelope("directions", plane.coord_field()?, params, result))
        }
        Command::Scenario { name, q, reduced, t_values, budget } => {
            let scenario: Scenario = name.parse()?;
            let opts = ScenarioOptions { workers, reduced, t_values: (!t_values.is_empty()).then_some(t_values), budget };
            let report = verify_scenario(scenario, q, &opts)?;
            let field = Field::with_order(q)?;
            let pass = report.status == Status::Pass;
            let out = envelope("scenario", &field, serde_json::to_value(&opts)?, serde_json::to_value(&report)?);
            if pass {
                Ok(out)
            } else {
                Err(Failure::Semantic(out))
            }
        }
        Command::Plane { q } => {
            emit(&Plane::pg2_order(q)?.export_incidence());
            Ok(Value::Null)
        }
    }
}

fn emit(text: &str) {
    // a closed pipe is not an error for us
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn print_json(v: &Value) {
    if !v.is_null() {
        emit(&format!("{}\n", serde_json::to_string_pretty(v).expect("JSON values serialize")));
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(v) => {
            print_json(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Semantic(v)) => {
            print_json(&v);
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
