use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::path::Path;

use clap::Args;
use factorpoly::fugacities::{EntryKind, FugacityConfig, Preset, Quadratic};
use factorpoly::{parse_graph, FugacitySpec, Multigraph, Surd};

use crate::config::{CliError, CliResult};

pub fn read_file(path: &str) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

pub fn load_graph(path: &str) -> CliResult<Multigraph> {
    let text = read_file(path)?;
    parse_graph(&text).map_err(|e| match e {
        factorpoly::Error::Parse { .. } => CliError::Usage(format!("{path}: {e}")),
        other => other.into(),
    })
}

/// Where the per-vertex fugacities come from.
#[derive(Args, Debug, Clone)]
pub struct WeightArgs {
    /// Lower degree bound, the same at every vertex [default: 0].
    #[arg(long)]
    pub f: Option<usize>,
    /// Upper degree bound, lowered to each vertex degree [default: no bound].
    #[arg(long)]
    pub g: Option<usize>,
    /// Fugacity configuration: a JSON file, inline JSON, or a preset
    /// (`binrec`, `ruelle[:Δ]`, `interval:f,g`, `set:a,b,..`, `thm26:f,g[,quad]`, `u:u0,u1,..`).
    #[arg(long, conflicts_with_all = ["f", "g"])]
    pub fugacity: Option<String>,
}

impl WeightArgs {
    pub fn is_fugacity(&self) -> bool {
        self.fugacity.is_some()
    }

    pub fn resolve(&self, graph: &Multigraph) -> CliResult<FugacitySpec> {
        match &self.fugacity {
            Some(text) => Ok(parse_fugacity(text)?.resolve(graph)?),
            None => bounds_spec(graph, self.f.unwrap_or(0), self.g),
        }
    }
}

/// Zero-one fugacities of `f ≤ k ≤ g` with `D(v) = deg(G, v)`. Unlike
/// [`factorpoly::DegreeBounds`] this accepts `f > deg(G, v)`, where every
/// count is zero.
pub fn bounds_spec(graph: &Multigraph, f: usize, g: Option<usize>) -> CliResult<FugacitySpec> {
    let g = g.unwrap_or(usize::MAX);
    if f > g {
        return Err(CliError::Usage(format!("--f {f} exceeds --g {g}")));
    }
    let spec = FugacitySpec::per_vertex(graph, |_, d| {
        Ok((d, (0..=d).map(|k| if (f..=g).contains(&k) { Surd::from_int(1) } else { Surd::from_int(0) }).collect()))
    })?;
    Ok(spec)
}

pub fn parse_fugacity(text: &str) -> CliResult<FugacityConfig> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return Ok(FugacityConfig::from_json(trimmed)?);
    }
    if Path::new(text).is_file() {
        return Ok(FugacityConfig::from_json(&read_file(text)?)?);
    }
    Ok(FugacityConfig::uniform(parse_preset(trimmed)?))
}

fn parse_preset(text: &str) -> CliResult<EntryKind> {
    let (name, rest) = text.split_once(':').unwrap_or((text, ""));
    let bad = || CliError::Usage(format!("unrecognised fugacity {text:?}; expected a file, JSON or preset"));
    let list = || -> CliResult<Vec<&str>> {
        if rest.is_empty() {
            return Err(bad());
        }
        Ok(rest.split(',').map(str::trim).collect())
    };
    let uint = |s: &str| s.parse::<usize>().map_err(|_| bad());
    let kind = match name {
        "binrec" if rest.is_empty() => EntryKind::Preset(Preset::Binrec),
        "ruelle" => EntryKind::Preset(Preset::Ruelle { delta: if rest.is_empty() { None } else { Some(uint(rest)?) } }),
        "interval" => match list()?[..] {
            [f, g] => EntryKind::Preset(Preset::Interval { f: uint(f)?, g: uint(g)? }),
            _ => return Err(bad()),
        },
        "set" => EntryKind::Preset(Preset::Set { s: list()?.into_iter().map(uint).collect::<CliResult<BTreeSet<_>>>()? }),
        "thm26" => {
            let parts = list()?;
            let quad = match parts.get(2) {
                Some(q) => q.parse::<Quadratic>().map_err(CliError::Usage)?,
                None => Quadratic::Sqrt3,
            };
            match parts[..] {
                [f, g] | [f, g, _] => EntryKind::Preset(Preset::Thm26 { f: uint(f)?, g: uint(g)?, quad }),
                _ => return Err(bad()),
            }
        }
        "u" => EntryKind::Explicit { u: parse_surds(rest)? },
        _ => return Err(bad()),
    };
    Ok(kind)
}

/// Comma-separated exact values: integers, `p/q`, decimals or `a+b*sqrt(m)`.
pub fn parse_surds(text: &str) -> CliResult<Vec<Surd>> {
    if text.trim().is_empty() {
        return Err(CliError::Usage("empty coefficient list".into()));
    }
    text.split(',')
        .map(|t| t.trim().parse::<Surd>().map_err(|e| CliError::Usage(format!("coefficient {t:?}: {e}"))))
        .collect()
}

/// `pi`, `2pi/3`, `3*pi/4`, `pi/2` or a plain number of radians.
pub fn parse_angle(text: &str) -> Result<f64, String> {
    let s: String = text.chars().filter(|c| !c.is_whitespace() && *c != '*').collect::<String>().to_lowercase();
    let bad = || format!("bad angle {text:?}");
    let Some((head, tail)) = s.split_once("pi") else {
        return s.parse::<f64>().map_err(|_| bad());
    };
    let coef = if head.is_empty() { 1.0 } else { head.parse::<f64>().map_err(|_| bad())? };
    let den = match tail.strip_prefix('/') {
        Some(d) => d.parse::<f64>().map_err(|_| bad())?,
        None if tail.is_empty() => 1.0,
        None => return Err(bad()),
    };
    Ok(coef * PI / den)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn angles() {
        assert_eq!(parse_angle("pi").unwrap(), PI);
        assert_eq!(parse_angle("2pi/3").unwrap(), 2.0 * PI / 3.0);
        assert_eq!(parse_angle("3 * pi / 4").unwrap(), 3.0 * PI / 4.0);
        assert_eq!(parse_angle("0.5").unwrap(), 0.5);
        assert!(parse_angle("pi/").is_err());
        assert!(parse_angle("tau").is_err());
    }

    #[test]
    fn presets() {
        assert_eq!(parse_preset("binrec").unwrap(), EntryKind::Preset(Preset::Binrec));
        assert_eq!(parse_preset("ruelle:3").unwrap(), EntryKind::Preset(Preset::Ruelle { delta: Some(3) }));
        assert_eq!(
            parse_preset("thm26:0,2,two").unwrap(),
            EntryKind::Preset(Preset::Thm26 { f: 0, g: 2, quad: Quadratic::Two })
        );
        assert_eq!(parse_preset("u:1,sqrt(3),1").unwrap(), EntryKind::Explicit { u: parse_surds("1,sqrt(3),1").unwrap() });
        assert!(parse_preset("interval:1").is_err());
        assert!(parse_preset("binrec:2").is_err());
        assert!(parse_preset("nope").is_err());
    }

    #[test]
    fn bounds_above_a_degree_give_zero_counts() {
        let g = Multigraph::from_edges(2, &[(0, 1)]).unwrap();
        let spec = bounds_spec(&g, 2, None).unwrap();
        assert!((0..2).all(|v| spec.sequence(v).iter().all(|x| *x == Surd::from_int(0))));
    }
}
