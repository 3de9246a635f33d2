//! Structured text format for integral Lie-algebra data.
//!
//! ```text
//! # comment
//! name sl2-congruence-5-1
//! rank 3
//! basis h1 X[1] X[-1]
//! chevalley A1 coroot 5 1        # optional provenance line
//! c 1 2 2 5 1                    # [b1, b2] += (5/1) b2, indices 1-based, i < j
//! ```
//!
//! The Jacobi identity is validated on load; a provenance line lets the
//! verifier rebuild the source Chevalley order and cross-check the data.

use anyhow::{bail, Context, Result};
use num_traits::Zero;
use wedgekernel::chevalley::{LatticeChoice, LieAlgebraData};
use wedgekernel::roots::RootSystemType;
use wedgekernel::{Int, Rat};

#[derive(Debug, Clone)]
pub struct Provenance {
    pub rtype: RootSystemType,
    pub lattice: LatticeChoice,
    pub p: u64,
    pub n: u32,
}

pub struct LieFile {
    pub data: LieAlgebraData,
    pub provenance: Option<Provenance>,
}

pub fn parse(text: &str) -> Result<LieFile> {
    let mut name = String::from("unnamed");
    let mut rank: Option<usize> = None;
    let mut basis: Option<Vec<String>> = None;
    let mut provenance = None;
    let mut constants: Vec<(usize, usize, usize, Rat)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let ctx = || format!("line {}", lineno + 1);
        let mut words = line.split_whitespace();
        let key = words.next().unwrap();
        let rest: Vec<&str> = words.collect();
        match key {
            "name" => name = rest.join(" "),
            "rank" => {
                rank = Some(rest.first().with_context(ctx)?.parse().with_context(ctx)?)
            }
            "basis" => basis = Some(rest.iter().map(|s| s.to_string()).collect()),
            "chevalley" => {
                if rest.len() != 4 {
                    bail!("{}: chevalley needs <type> <coroot|coweight> <p> <n>", ctx());
                }
                let rtype = RootSystemType::parse(rest[0])
                    .map_err(|e| anyhow::anyhow!("{}: {e}", ctx()))?;
                let lattice = match rest[1] {
                    "coroot" => LatticeChoice::Coroot,
                    "coweight" => LatticeChoice::Coweight,
                    other => bail!("{}: unknown lattice {other}", ctx()),
                };
                provenance = Some(Provenance {
                    rtype,
                    lattice,
                    p: rest[2].parse().with_context(ctx)?,
                    n: rest[3].parse().with_context(ctx)?,
                });
            }
            "c" => {
                if rest.len() != 5 {
                    bail!("{}: constant needs i j k num den", ctx());
                }
                let i: usize = rest[0].parse().with_context(ctx)?;
                let j: usize = rest[1].parse().with_context(ctx)?;
                let k: usize = rest[2].parse().with_context(ctx)?;
                let num: Int = rest[3].parse().with_context(ctx)?;
                let den: Int = rest[4].parse().with_context(ctx)?;
                if i == 0 || j == 0 || k == 0 {
                    bail!("{}: indices are 1-based", ctx());
                }
                if i >= j {
                    bail!("{}: need i < j", ctx());
                }
                if den.is_zero() {
                    bail!("{}: zero denominator", ctx());
                }
                constants.push((i - 1, j - 1, k - 1, Rat::new(num, den)));
            }
            other => bail!("{}: unknown directive {other}", ctx()),
        }
    }

    let rank = rank.context("missing rank")?;
    let basis = basis
        .unwrap_or_else(|| (1..=rank).map(|i| format!("b{i}")).collect());
    if basis.len() != rank {
        bail!("basis has {} labels, rank is {rank}", basis.len());
    }
    let mut data = LieAlgebraData::new(name, basis);
    let mut grouped: std::collections::BTreeMap<(usize, usize), Vec<(usize, Rat)>> =
        Default::default();
    for (i, j, k, c) in constants {
        if j >= rank || k >= rank {
            bail!("constant index out of range");
        }
        grouped.entry((i, j)).or_default().push((k, c));
    }
    for ((i, j), v) in grouped {
        data.set_bracket(i, j, v)
            .map_err(|e| anyhow::anyhow!("bad bracket ({},{}): {e}", i + 1, j + 1))?;
    }
    let report = wedgekernel::chevalley::validate(&data);
    if !report.passed() {
        bail!(
            "Jacobi identity fails on load: {} violating triples",
            report.jacobi_violations.len()
        );
    }
    Ok(LieFile { data, provenance })
}

pub fn render(data: &LieAlgebraData, provenance: Option<&Provenance>) -> String {
    let mut out = String::new();
    out.push_str(&format!("name {}\n", data.name));
    out.push_str(&format!("rank {}\n", data.dim()));
    out.push_str(&format!("basis {}\n", data.basis.join(" ")));
    if let Some(p) = provenance {
        let lat = match p.lattice {
            LatticeChoice::Coroot => "coroot",
            LatticeChoice::Coweight => "coweight",
            _ => "coroot",
        };
        out.push_str(&format!("chevalley {} {} {} {}\n", p.rtype, lat, p.p, p.n));
    }
    for (i, j, k, c) in data.constants() {
        out.push_str(&format!(
            "c {} {} {} {} {}\n",
            i + 1,
            j + 1,
            k + 1,
            c.numer(),
            c.denom()
        ));
    }
    out
}
