use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::ValueEnum;
use ipset_core::bounds::{
    bound_table, cube_root_check, distance_one_structure_check, hyperbola_count_check,
    replay_theorem_proof, square_container_check, strip_partition_check, BoundParams, Branch,
    Inequality,
};
use ipset_core::constructions::{circular, facher};
use ipset_core::enumeration::{candidate_points, Candidate};
use ipset_core::geometry::DistanceMatrix;
use ipset_core::search::{minimal_diameter_with, SearchOptions};
use ipset_core::{validate, Error, PointSet, PositionClass, ValidationReport};

use crate::cache::{CacheRow, ResultCache};
use crate::error::{CliError, Status};
use crate::setfile::{Metadata, SetFile};

fn timestamp() -> u64 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |t| t.as_secs())
}

fn metadata(set: &PointSet, provenance: String) -> Result<Metadata, CliError> {
    Ok(Metadata {
        n: Some(set.len()),
        diameter: Some(DistanceMatrix::of(set)?.diameter()),
        position: Some(validate(set).position.name().to_string()),
        provenance: Some(provenance),
    })
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> = (0..cols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:<w$}"))
            .collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn search(
    out: &mut dyn Write,
    n: usize,
    constraint: PositionClass,
    d_max: u64,
    all: bool,
    out_dir: &Path,
    cache_path: &Path,
) -> Result<Status, CliError> {
    if n < 3 {
        return Err(CliError::Input(format!("--n must be at least 3, got {n}")));
    }
    let options = SearchOptions {
        all_witnesses: all,
        ..Default::default()
    };
    let cache = ResultCache::new(cache_path);
    let (row, status) = match minimal_diameter_with(n, constraint, d_max, &options) {
        Ok(result) => {
            let mut paths = Vec::new();
            for (i, w) in result.witnesses.iter().enumerate() {
                let path = out_dir.join(format!(
                    "n{n}-{}-d{}-{}.json",
                    constraint.name(),
                    result.d,
                    i + 1
                ));
                let meta = metadata(
                    w,
                    format!("search n={n} position={} d={}", constraint.name(), result.d),
                )?;
                SetFile::from_set(w, Some(meta)).write(&path)?;
                paths.push(path);
            }
            write!(
                out,
                "{}",
                table(&[
                    vec![
                        "n".into(),
                        "position".into(),
                        "d".into(),
                        "witnesses".into(),
                        "exhausted_up_to".into()
                    ],
                    vec![
                        n.to_string(),
                        constraint.name().into(),
                        result.d.to_string(),
                        paths.len().to_string(),
                        result.exhausted_up_to.to_string(),
                    ],
                ])
            )?;
            for p in &paths {
                writeln!(out, "witness: {}", p.display())?;
            }
            let row = CacheRow {
                n,
                constraint,
                d: Some(result.d),
                witness: paths.first().map(|p| p.display().to_string()),
                exhausted_up_to: result.exhausted_up_to,
                timestamp: timestamp(),
            };
            (row, Status::Ok)
        }
        Err(Error::BudgetExceeded {
            exhausted_up_to, ..
        }) => {
            writeln!(
                out,
                "no {n}-point {} set with diameter <= {exhausted_up_to}",
                constraint.name()
            )?;
            writeln!(out, "exhausted_up_to: {exhausted_up_to}")?;
            let row = CacheRow {
                n,
                constraint,
                d: None,
                witness: None,
                exhausted_up_to,
                timestamp: timestamp(),
            };
            (row, Status::BudgetExceeded)
        }
        Err(e) => return Err(e.into()),
    };
    for conflict in cache.append(&row)? {
        eprintln!(
            "warning: cache {} contradicts this run: {conflict}",
            cache.path().display()
        );
    }
    writeln!(out, "cache: {}", cache.path().display())?;
    Ok(status)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Check {
    Container,
    Hyperbola,
    Strips,
    Replay,
    CubeRoot,
    DistanceOne,
}

impl Check {
    fn name(self) -> &'static str {
        match self {
            Check::Container => "container",
            Check::Hyperbola => "hyperbola",
            Check::Strips => "strips",
            Check::Replay => "replay",
            Check::CubeRoot => "cube-root",
            Check::DistanceOne => "distance-one",
        }
    }
}

enum Outcome {
    Pass(Vec<String>),
    Fail(Vec<String>),
    NotApplicable(String),
}

fn judged(pass: bool, lines: Vec<String>) -> Outcome {
    if pass {
        Outcome::Pass(lines)
    } else {
        Outcome::Fail(lines)
    }
}

fn listed(ineqs: &[Inequality]) -> Vec<String> {
    ineqs.iter().map(ToString::to_string).collect()
}

fn run_check(check: Check, set: &PointSet, report: &ValidationReport) -> Result<Outcome, CliError> {
    let needs_semi_general = !matches!(check, Check::Container | Check::DistanceOne);
    if needs_semi_general {
        if set.len() < 4 {
            return Ok(Outcome::NotApplicable("n < 4".into()));
        }
        if report.position < PositionClass::SemiGeneral {
            return Ok(Outcome::NotApplicable("three points are collinear".into()));
        }
    }
    let outcome = match check {
        Check::Container => {
            square_container_check(set).map(|c| judged(c.pass, listed(&c.inequalities)))
        }
        Check::Hyperbola => {
            hyperbola_count_check(set).map(|c| judged(c.pass, listed(&c.inequalities)))
        }
        Check::Strips => strip_partition_check(set).map(|c| {
            let mut lines = vec![format!("q = {}, strip counts {:?}", c.q, c.strip_counts)];
            lines.extend(listed(&c.inequalities));
            judged(c.pass, lines)
        }),
        Check::Replay => replay_theorem_proof(set).map(|t| {
            let branch = match t.branch {
                Branch::Hyperbola => "branch: hyperbola (m^5 <= p^2)".to_string(),
                Branch::Strip => format!(
                    "branch: strip (q = {}, strip counts {:?})",
                    t.q.unwrap_or_default(),
                    t.strip_counts
                ),
            };
            let mut lines = vec![
                format!(
                    "p = {}, |M1M2| = {} at {:?}, m = {} at {:?}",
                    t.p, t.report.closest, t.report.closest_pair, t.report.m, t.report.second_pair
                ),
                branch,
            ];
            lines.extend(listed(&t.inequalities));
            judged(t.pass, lines)
        }),
        Check::CubeRoot => cube_root_check(set).map(|i| judged(i.holds, vec![i.to_string()])),
        Check::DistanceOne => distance_one_structure_check(set).map(|r| {
            let mut lines = Vec::new();
            for s in &r.shapes {
                lines.push(format!(
                    "unit pair {:?}: {} points on its line, off the line {:?}",
                    s.pair, s.on_line, s.off_line
                ));
                lines.extend(s.violations.iter().map(|v| format!("  {v}")));
            }
            judged(r.conforming, lines)
        }),
    };
    match outcome {
        Ok(o) => Ok(o),
        Err(Error::PreconditionViolated(why)) => Ok(Outcome::NotApplicable(why)),
        Err(Error::NoUnitDistance) => Ok(Outcome::NotApplicable("no unit distance".into())),
        Err(e) => Err(e.into()),
    }
}

fn metadata_mismatches(
    meta: &Metadata,
    set: &PointSet,
    diameter: u64,
    position: PositionClass,
) -> Vec<String> {
    let mut out = Vec::new();
    if meta.n.is_some_and(|n| n != set.len()) {
        out.push(format!(
            "metadata n = {:?}, file has {} points",
            meta.n,
            set.len()
        ));
    }
    if meta.diameter.is_some_and(|d| d != diameter) {
        out.push(format!(
            "metadata diameter = {:?}, actual {diameter}",
            meta.diameter
        ));
    }
    if meta
        .position
        .as_deref()
        .is_some_and(|p| p != position.name())
    {
        out.push(format!(
            "metadata position = {:?}, actual {}",
            meta.position,
            position.name()
        ));
    }
    out
}

pub fn verify(out: &mut dyn Write, path: &Path, checks: &[Check]) -> Result<Status, CliError> {
    let file = SetFile::read(path)?;
    let set = file.to_set()?;
    writeln!(
        out,
        "{}: n = {}, k = {}",
        path.display(),
        set.len(),
        set.k()
    )?;
    let report = validate(&set);
    if !report.valid {
        writeln!(out, "validate: FAIL")?;
        for reason in report.failure_reasons() {
            writeln!(out, "  {reason}")?;
        }
        return Ok(Status::CheckFailed);
    }
    let matrix = DistanceMatrix::of(&set)?;
    writeln!(
        out,
        "validate: PASS (diameter {}, min distance {}, position {})",
        matrix.diameter(),
        matrix.min_distance(),
        report.position
    )?;
    let mut failed = false;
    if let Some(meta) = &file.metadata {
        let mismatches = metadata_mismatches(meta, &set, matrix.diameter(), report.position);
        if mismatches.is_empty() {
            writeln!(out, "metadata: PASS")?;
        } else {
            failed = true;
            writeln!(out, "metadata: FAIL")?;
            for m in mismatches {
                writeln!(out, "  {m}")?;
            }
        }
    }
    let selected = if checks.is_empty() {
        Check::value_variants()
    } else {
        checks
    };
    for &check in selected {
        match run_check(check, &set, &report)? {
            Outcome::Pass(lines) => {
                writeln!(out, "{}: PASS", check.name())?;
                for l in &lines {
                    writeln!(out, "  {l}")?;
                }
            }
            Outcome::Fail(lines) => {
                failed = true;
                writeln!(out, "{}: FAIL", check.name())?;
                for l in &lines {
                    writeln!(out, "  {l}")?;
                }
            }
            Outcome::NotApplicable(why) => {
                writeln!(out, "{}: not applicable ({why})", check.name())?
            }
        }
    }
    Ok(if failed {
        Status::CheckFailed
    } else {
        Status::Ok
    })
}

fn announce(out: &mut dyn Write, set: &PointSet, path: &Path) -> Result<(), CliError> {
    let matrix = DistanceMatrix::of(set)?;
    writeln!(
        out,
        "n = {}, diameter = {}, position = {}",
        set.len(),
        matrix.diameter(),
        validate(set).position
    )?;
    writeln!(out, "wrote {}", path.display())?;
    Ok(())
}

pub fn construct_facher(
    out: &mut dyn Write,
    height: u64,
    target: Option<PathBuf>,
) -> Result<Status, CliError> {
    if height == 0 {
        return Err(CliError::Input("--height must be positive".into()));
    }
    let set = facher(height);
    if set.len() < 3 {
        return Err(CliError::Input(format!(
            "the facher set of height {height} has only {} points",
            set.len()
        )));
    }
    let path = target.unwrap_or_else(|| PathBuf::from(format!("facher-h{height}.json")));
    let meta = metadata(&set, format!("construct facher height={height}"))?;
    SetFile::from_set(&set, Some(meta)).write(&path)?;
    announce(out, &set, &path)?;
    Ok(Status::Ok)
}

pub fn construct_circular(
    out: &mut dyn Write,
    n: usize,
    target: Option<PathBuf>,
) -> Result<Status, CliError> {
    let set = circular(n)?;
    let path = target.unwrap_or_else(|| PathBuf::from(format!("circular-n{n}.json")));
    let meta = metadata(&set, format!("construct circular n={n}"))?;
    SetFile::from_set(&set, Some(meta)).write(&path)?;
    announce(out, &set, &path)?;
    Ok(Status::Ok)
}

pub fn bounds(
    out: &mut dyn Write,
    from: u64,
    to: u64,
    params: &BoundParams,
    csv: bool,
) -> Result<Status, CliError> {
    let rows = bound_table(from, to, params)?;
    let header = [
        "n",
        "theorem",
        "linear",
        "min_dist",
        "remark",
        "upper",
        "collinear",
    ];
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| {
            let mut row = vec![r.n.to_string()];
            row.extend(
                [
                    r.theorem_bound,
                    r.linear_bound,
                    r.min_dist_bound,
                    r.remark_bound,
                    r.upper_bound,
                    r.collinear_bound,
                ]
                .iter()
                .map(|v| format!("{v:.9}")),
            );
            row
        })
        .collect();
    if csv {
        writeln!(out, "{}", header.join(","))?;
        for row in &cells {
            writeln!(out, "{}", row.join(","))?;
        }
    } else {
        let mut all = vec![header.iter().map(|s| s.to_string()).collect()];
        all.extend(cells);
        write!(out, "{}", table(&all))?;
    }
    Ok(Status::Ok)
}

fn candidate_fields(c: &Candidate) -> [String; 5] {
    [
        c.point.x.to_string(),
        c.point.r.to_string(),
        c.k.to_string(),
        c.a.to_string(),
        c.b.to_string(),
    ]
}

pub fn candidates(out: &mut dyn Write, d: u64, csv: bool) -> Result<Status, CliError> {
    let pool = candidate_points(d)?;
    if csv {
        writeln!(out, "x,r,k,a,b,on_line")?;
        for c in pool.iter() {
            writeln!(out, "{},{}", candidate_fields(c).join(","), c.on_line)?;
        }
        return Ok(Status::Ok);
    }
    writeln!(
        out,
        "d = {d}: {} on-line, {} off-line candidates in {} classes; entries (x, r, k, a, b)",
        pool.on_line.len(),
        pool.off_line_len(),
        pool.by_characteristic.len()
    )?;
    writeln!(out, "on-line:")?;
    for c in &pool.on_line {
        writeln!(out, "  ({})", candidate_fields(c).join(", "))?;
    }
    for (k, list) in &pool.by_characteristic {
        writeln!(out, "k = {k}:")?;
        for c in list {
            writeln!(out, "  ({})", candidate_fields(c).join(", "))?;
        }
    }
    Ok(Status::Ok)
}
