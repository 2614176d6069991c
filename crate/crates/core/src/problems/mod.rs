//! Problem families, their text formats, generators and exhaustive oracles.

pub mod binary;
pub mod setcover;
pub mod ssuflp;
pub mod text;
pub mod uboflp;

use std::path::Path;

use crate::bnp::BitoptwInstance;
use crate::engine::SearchStats;
use crate::error::{Error, Result};
use crate::geometry::NondominatedArchive;
use crate::model::{Assignment, BiObjectiveModel};

pub use binary::BinaryProgram;
pub use setcover::SetCoveringInstance;
pub use ssuflp::SsuflpInstance;
pub use uboflp::UboflpInstance;

/// Largest number of binary dimensions the exhaustive oracles accept.
pub const BRUTE_FORCE_LIMIT: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrontEntry<S> {
    pub f1: i64,
    pub f2: i64,
    pub solution: S,
}

/// Nondominated points in original units, sorted by the first objective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoFront<S = Assignment> {
    pub entries: Vec<FrontEntry<S>>,
}

impl<S> Default for ParetoFront<S> {
    fn default() -> Self {
        Self { entries: Vec::new() }
    }
}

impl<S> ParetoFront<S> {
    pub fn from_entries(mut entries: Vec<FrontEntry<S>>) -> Self {
        entries.sort_by_key(|e| (e.f1, e.f2));
        Self { entries }
    }

    pub fn points(&self) -> Vec<(i64, i64)> {
        self.entries.iter().map(|e| (e.f1, e.f2)).collect()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn map<T>(self, mut f: impl FnMut(S) -> T) -> ParetoFront<T> {
        ParetoFront {
            entries: self
                .entries
                .into_iter()
                .map(|e| FrontEntry {
                    f1: e.f1,
                    f2: e.f2,
                    solution: f(e.solution),
                })
                .collect(),
        }
    }
}

impl ParetoFront<Assignment> {
    /// Convert an archive of internal points back to original units.
    pub fn from_archive(model: &BiObjectiveModel, archive: NondominatedArchive<Assignment>) -> Self {
        Self::from_entries(
            archive
                .into_entries()
                .into_iter()
                .map(|(z, solution)| {
                    let (f1, f2) = model.to_original(z);
                    FrontEntry { f1, f2, solution }
                })
                .collect(),
        )
    }
}

/// Front and statistics of one solver run.
#[derive(Debug, Clone)]
pub struct SolveOutput<S = Assignment> {
    pub front: ParetoFront<S>,
    pub stats: SearchStats,
    /// False when a time limit stopped the run; the front is then partial.
    pub complete: bool,
}

/// Enumerate every 0/1 assignment of a model whose variables are all binary.
pub fn brute_force_model(model: &BiObjectiveModel) -> Result<ParetoFront> {
    let n = model.num_vars();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimit(format!("{n} binary variables")));
    }
    if model.lp.vars.iter().any(|v| v.lower < 0.0 || v.upper > 1.0) {
        return Err(Error::InvalidInput("exhaustive enumeration needs binary variables".into()));
    }
    let mut archive = NondominatedArchive::new();
    let mut x = vec![0i64; n];
    for mask in 0u64..(1u64 << n) {
        for (j, xj) in x.iter_mut().enumerate() {
            *xj = ((mask >> j) & 1) as i64;
        }
        if model.is_feasible(&x) {
            let xf: Vec<f64> = x.iter().map(|&v| v as f64).collect();
            archive.insert(model.image(&xf), x.clone());
        }
    }
    Ok(ParetoFront::from_archive(model, archive))
}

/// Visit every nonempty subset of `0..k` as a bitmask.
pub(crate) fn subsets(k: usize) -> Result<impl Iterator<Item = u64>> {
    if k > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimit(format!("{k} facilities")));
    }
    Ok(1u64..(1u64 << k))
}

/// Any instance readable from disk, dispatched on file extension.
#[derive(Debug, Clone, PartialEq)]
pub enum Instance {
    Uboflp(UboflpInstance),
    Ssuflp(SsuflpInstance),
    SetCovering(SetCoveringInstance),
    Bitoptw(BitoptwInstance),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Uboflp,
    Ssuflp,
    SetCovering,
    Bitoptw,
}

impl Family {
    pub fn extension(self) -> &'static str {
        match self {
            Family::Uboflp => "ubof",
            Family::Ssuflp => "ssuf",
            Family::SetCovering => "bscp",
            Family::Bitoptw => "btop",
        }
    }

    pub fn from_extension(ext: &str) -> Option<Self> {
        match ext {
            "ubof" => Some(Family::Uboflp),
            "ssuf" => Some(Family::Ssuflp),
            "bscp" => Some(Family::SetCovering),
            "btop" => Some(Family::Bitoptw),
            _ => None,
        }
    }
}

impl Instance {
    pub fn parse(family: Family, text: &str) -> Result<Self> {
        Ok(match family {
            Family::Uboflp => Instance::Uboflp(UboflpInstance::parse(text)?),
            Family::Ssuflp => Instance::Ssuflp(SsuflpInstance::parse(text)?),
            Family::SetCovering => Instance::SetCovering(SetCoveringInstance::parse(text)?),
            Family::Bitoptw => Instance::Bitoptw(BitoptwInstance::parse(text)?),
        })
    }

    pub fn read(path: &Path) -> Result<Self> {
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        let family = Family::from_extension(ext)
            .ok_or_else(|| Error::InvalidInput(format!("unknown instance extension {:?}", path.display())))?;
        let text = std::fs::read_to_string(path)?;
        Self::parse(family, &text)
    }

    pub fn family(&self) -> Family {
        match self {
            Instance::Uboflp(_) => Family::Uboflp,
            Instance::Ssuflp(_) => Family::Ssuflp,
            Instance::SetCovering(_) => Family::SetCovering,
            Instance::Bitoptw(_) => Family::Bitoptw,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            Instance::Uboflp(i) => i.to_text(),
            Instance::Ssuflp(i) => i.to_text(),
            Instance::SetCovering(i) => i.to_text(),
            Instance::Bitoptw(i) => i.to_text(),
        }
    }

    /// Matrix model, for the families that have one.
    pub fn model(&self) -> Option<Result<BiObjectiveModel>> {
        match self {
            Instance::Uboflp(i) => Some(i.build()),
            Instance::Ssuflp(i) => Some(i.build()),
            Instance::SetCovering(i) => Some(i.build()),
            Instance::Bitoptw(_) => None,
        }
    }

    /// Short human-readable description of a model assignment.
    pub fn describe(&self, x: &Assignment) -> String {
        match self {
            Instance::Uboflp(i) => i.describe(x),
            Instance::Ssuflp(i) => i.describe(x),
            Instance::SetCovering(i) => i.describe(x),
            Instance::Bitoptw(_) => String::new(),
        }
    }
}

/// Indices of the entries equal to 1, space separated.
pub(crate) fn ones(x: &[i64]) -> String {
    x.iter()
        .enumerate()
        .filter(|(_, &v)| v == 1)
        .map(|(j, _)| j.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}
