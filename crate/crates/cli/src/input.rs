use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use lcsq::f2::{incidence_system, parse_graph, parse_system, BitVec, LinearSystem, SimpleGraph};
use lcsq::fpgroups::DEFAULT_COSET_CAP;
use lcsq::graphs::{build_g, build_gstar, ColorTag, ColoredGraph, Sign};

use crate::{Construction, Source};

pub const CAP_VAR: &str = "LCSQ_COSET_CAP";

pub fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

pub fn write(path: &Path, contents: &str) -> Result<()> {
    let mut text = contents.to_string();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

pub fn bits(text: &str, expected: usize, flag: &str) -> Result<BitVec> {
    let b: BitVec = text.parse().with_context(|| format!("invalid --{flag} {text:?}"))?;
    if b.len() != expected {
        bail!("--{flag} has {} bits, expected {expected}", b.len());
    }
    Ok(b)
}

/// The system named by `source`, with `b` overriding its right-hand side.
/// Also returns the graph `H` when the system is an incidence system.
pub fn system(source: &Source, b: Option<&str>) -> Result<(LinearSystem, Option<SimpleGraph>)> {
    let (sys, h) = match (&source.system, &source.graph) {
        (Some(path), _) => {
            let sys = parse_system(&read(path)?).with_context(|| format!("in {}", path.display()))?;
            (sys, None)
        }
        (None, Some(path)) => {
            let h = parse_graph(&read(path)?).with_context(|| format!("in {}", path.display()))?;
            let sys = incidence_system(&h, &BitVec::zeros(h.vertex_count()))?;
            (sys, Some(h))
        }
        (None, None) => bail!("one of --system or --graph is required"),
    };
    match b {
        Some(text) => {
            let rhs = bits(text, sys.constraints(), "b")?;
            Ok((sys.with_rhs(rhs)?, h))
        }
        None => Ok((sys, h)),
    }
}

pub fn construct(sys: &LinearSystem, construction: Construction) -> Result<ColoredGraph> {
    Ok(match construction {
        Construction::G => build_g(sys)?,
        Construction::Gstar => build_gstar(sys)?,
    })
}

/// The preserved edge color: explicit, else `shared:-1` for `G_*` and the
/// first palette color for `G`.
pub fn c0(g: &ColoredGraph, text: Option<&str>, construction: Construction) -> Result<ColorTag> {
    if let Some(text) = text {
        return Ok(ColorTag::parse(text, g.meta().system.as_ref())?);
    }
    match construction {
        Construction::Gstar => Ok(ColorTag::Shared(Sign::Minus)),
        Construction::G => g
            .palette()
            .edge
            .first()
            .cloned()
            .context("graph has no edge colors; pass --c0"),
    }
}

/// `--cap`, else `LCSQ_COSET_CAP`, else the library default.
pub fn coset_cap(flag: Option<usize>) -> Result<usize> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{CAP_VAR} must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_COSET_CAP),
    }
}
