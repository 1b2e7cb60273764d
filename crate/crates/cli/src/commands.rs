use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use lattice_mobius::families::{Family, FamilyLattice};
use lattice_mobius::fibpoly::{fib_poly, h_poly};
use lattice_mobius::verify::{mobius_summary, run_suite, SuiteConfig};
use serde_json::json;

use crate::Format;

const OUT_OF_RANGE: &str = "out of range (n<3)";

/// Largest degree built without `--force`. `B_10` alone has 16797 elements.
fn safety_bound(family: Family) -> usize {
    match family {
        Family::B => 9,
        Family::A | Family::C => 10,
    }
}

fn check_bound(family: Family, n: usize, force: bool) -> Result<()> {
    let bound = safety_bound(family);
    if n > bound && !force {
        bail!("n = {n} exceeds the safety bound {bound} for family {family}; pass --force to build it anyway");
    }
    Ok(())
}

fn build(family: Family, n: usize, force: bool) -> Result<FamilyLattice> {
    check_bound(family, n, force)?;
    FamilyLattice::build(family, n).with_context(|| format!("building {family}_{n}"))
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn show(v: Option<i64>) -> String {
    v.map_or_else(|| OUT_OF_RANGE.to_string(), |x| x.to_string())
}

pub fn mobius(
    family: Option<Family>,
    range: RangeInclusive<usize>,
    format: Format,
    force: bool,
) -> Result<ExitCode> {
    let families = match family {
        Some(f) => vec![f],
        None => vec![Family::A, Family::B, Family::C],
    };
    for &f in &families {
        check_bound(f, *range.end(), force)?;
    }
    let mut all_agree = true;
    let mut rows = Vec::new();
    for n in range {
        for &f in &families {
            let summary = mobius_summary(&build(f, n, force)?);
            let agree = summary.agrees();
            all_agree &= agree;
            match format {
                Format::Json => rows.push(json!({
                    "family": f,
                    "n": n,
                    "oracle": summary.oracle,
                    "nbb": summary.nbb,
                    "sparse_sum": summary.sparse_sum,
                    "fib_value": summary.fib_value,
                    "agree": agree,
                })),
                _ => println!(
                    "family={f} n={n} oracle={} nbb={} sparse_sum={} F_{{n-2}}(-1)={} {}",
                    summary.oracle,
                    summary.nbb,
                    show(summary.sparse_sum),
                    show(summary.fib_value),
                    if agree { "agree" } else { "MISMATCH" }
                ),
            }
        }
    }
    if format == Format::Json {
        println!("{}", serde_json::to_string_pretty(&json!({ "results": rows }))?);
    }
    Ok(status(all_agree))
}

pub fn nbb_bases(
    family: Family,
    n: usize,
    predict: bool,
    format: Format,
    force: bool,
) -> Result<ExitCode> {
    let fl = build(family, n, force)?;
    let engine = fl.nbb_lattice();
    let order = fl.canonical_order();
    let bases = fl.nbb_bases(&engine, order.clone())?;
    let labels = |xs: &[usize]| -> Vec<String> {
        xs.iter().map(|&x| fl.label(x).to_string()).collect()
    };
    let listed: Vec<Vec<String>> = bases.iter().map(|b| labels(&b.atoms)).collect();

    let predicted: Option<Vec<Vec<String>>> = if predict && n >= 3 {
        Some(fl.predicted_bases()?.iter().map(|b| labels(b)).collect())
    } else {
        None
    };
    let matches = predicted.as_ref().map(|p| {
        let norm = |v: &[Vec<String>]| {
            let mut v: Vec<Vec<String>> = v
                .iter()
                .map(|b| {
                    let mut b = b.clone();
                    b.sort();
                    b
                })
                .collect();
            v.sort();
            v
        };
        norm(p) == norm(&listed)
    });

    let (form, target) = if fl.uses_coatoms() {
        ("coatoms", fl.label(fl.lattice().bottom()))
    } else {
        ("atoms", fl.label(fl.lattice().top()))
    };
    match format {
        Format::Json => {
            let out = json!({
                "family": family,
                "n": n,
                "form": form,
                "target": target,
                "order": labels(&order),
                "bases": listed,
                "predicted": predicted,
                "match": matches,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        _ => {
            println!("family={family} n={n} {form} of {target}, order {}", labels(&order).join(" < "));
            for b in &listed {
                println!("  {{{}}}", b.join(", "));
            }
            println!("{} bases", listed.len());
            if predict {
                match (&predicted, matches) {
                    (Some(p), Some(m)) => {
                        println!("predicted {} bases: {}", p.len(), if m { "match" } else { "MISMATCH" })
                    }
                    _ => println!("prediction unavailable (n<3)"),
                }
            }
        }
    }
    Ok(status(matches.unwrap_or(true)))
}

pub fn verify(
    max_n: usize,
    seed: u64,
    random_orders: usize,
    format: Format,
    force: bool,
) -> Result<ExitCode> {
    check_bound(Family::B, max_n, force)?;
    let report = run_suite(&SuiteConfig {
        max_n,
        seed,
        random_orders,
    });
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
        _ => {
            for c in &report.claims {
                println!(
                    "{} {} {} n={}{}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.id,
                    c.family,
                    c.n,
                    c.witness.as_deref().map(|w| format!(" ({w})")).unwrap_or_default()
                );
            }
            let failed = report.failures().count();
            println!("{} claims, {failed} failed, seed {seed}", report.claims.len());
        }
    }
    Ok(status(report.all_pass()))
}

pub fn hasse(
    family: Family,
    n: usize,
    format: Format,
    output: Option<PathBuf>,
    force: bool,
) -> Result<ExitCode> {
    let fl = build(family, n, force)?;
    let poset = fl.lattice().poset();
    let text = match format {
        Format::Dot => poset.to_dot(&format!("{family}_{n}")),
        Format::Json => serde_json::to_string_pretty(&poset.to_hasse_json())? + "\n",
        Format::Text => bail!("hasse supports --format dot or json"),
    };
    match output {
        Some(path) => fs::write(&path, text)
            .with_context(|| format!("cannot write {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

pub fn fib(n: usize, eval: Option<i64>, format: Format) -> Result<ExitCode> {
    let f = fib_poly(n)?;
    let h = h_poly(n)?;
    let equal = f == h;
    let value = eval.map(|q| (q, f.eval(q)));
    match format {
        Format::Json => {
            let out = json!({
                "n": n,
                "F": f,
                "H": h,
                "equal": equal,
                "eval": value.as_ref().map(|(q, v)| json!({ "q": q, "value": v.to_string() })),
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
        }
        _ => {
            println!("F_{n}(q) = {f}");
            println!("H_{n}(q) = {h}");
            println!("{}", if equal { "H=F" } else { "H!=F" });
            if let Some((q, v)) = value {
                println!("F_{n}({q}) = {v}");
            }
        }
    }
    Ok(status(equal))
}
