//! Scattering, tangling, package cohesion and package coupling.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{FeatureMap, RemodError};
use crate::code_model::{ClassId, CodeModel};

/// Class-to-package assignment the measures are evaluated against. Lets a
/// search try moves without rebuilding the model.
#[derive(Debug, Clone)]
pub(crate) struct Layout<'a> {
    package_of: BTreeMap<&'a ClassId, &'a str>,
}

impl<'a> Layout<'a> {
    pub(crate) fn of(model: &'a CodeModel) -> Self {
        Self {
            package_of: model.classes().map(|c| (&c.id, c.id.package.as_str())).collect(),
        }
    }

    pub(crate) fn package_of(&self, class: &ClassId) -> Option<&'a str> {
        self.package_of.get(class).copied()
    }

    pub(crate) fn assign(&mut self, class: &'a ClassId, package: &'a str) {
        self.package_of.insert(class, package);
    }

    pub(crate) fn hosts(&self, package: &str) -> bool {
        self.package_of.values().any(|p| *p == package)
    }

    /// Packages holding at least one class.
    fn packages(&self) -> BTreeSet<&'a str> {
        self.package_of.values().copied().collect()
    }

    fn normalized(touched: usize, universe: usize) -> f64 {
        if universe > 1 {
            (touched.saturating_sub(1)) as f64 / (universe - 1) as f64
        } else {
            0.0
        }
    }

    fn feature_packages<'f>(&self, fm: &'f FeatureMap) -> BTreeMap<&'f str, BTreeSet<&'a str>> {
        fm.classes()
            .into_iter()
            .map(|(f, classes)| (f, classes.into_iter().filter_map(|c| self.package_of(c)).collect()))
            .collect()
    }

    /// Per-feature scattering over packages.
    pub(crate) fn scattering(&self, fm: &FeatureMap) -> BTreeMap<String, f64> {
        let universe = self.packages().len();
        self.feature_packages(fm)
            .into_iter()
            .map(|(f, ps)| (f.to_string(), Self::normalized(ps.len(), universe)))
            .collect()
    }

    /// Per-package tangling over features, for packages touched by some feature.
    pub(crate) fn tangling(&self, fm: &FeatureMap) -> BTreeMap<String, f64> {
        let universe = fm.len();
        let mut hosted: BTreeMap<&str, BTreeSet<&str>> = BTreeMap::new();
        for (f, ps) in self.feature_packages(fm) {
            for p in ps {
                hosted.entry(p).or_default().insert(f);
            }
        }
        hosted
            .into_iter()
            .map(|(p, fs)| (p.to_string(), Self::normalized(fs.len(), universe)))
            .collect()
    }

    /// Mean intra-package dependency-pair density; single-class packages score 1.
    pub(crate) fn cohesion(&self, model: &CodeModel) -> Option<f64> {
        let mut sizes: BTreeMap<&str, usize> = BTreeMap::new();
        for p in self.package_of.values() {
            *sizes.entry(p).or_default() += 1;
        }
        if sizes.is_empty() {
            return None;
        }
        let mut linked: BTreeSet<(&ClassId, &ClassId)> = BTreeSet::new();
        for c in model.classes() {
            let Some(pc) = self.package_of(&c.id) else { continue };
            for d in &c.dependencies {
                if self.package_of(d) == Some(pc) {
                    linked.insert(if &c.id < d { (&c.id, d) } else { (d, &c.id) });
                }
            }
        }
        let mut pairs: BTreeMap<&str, usize> = BTreeMap::new();
        for (a, _) in &linked {
            *pairs.entry(self.package_of(a).expect("linked classes are placed")).or_default() += 1;
        }
        let total: f64 = sizes
            .iter()
            .map(|(p, &k)| {
                if k < 2 {
                    1.0
                } else {
                    pairs.get(p).copied().unwrap_or(0) as f64 / (k * (k - 1) / 2) as f64
                }
            })
            .sum();
        Some(total / sizes.len() as f64)
    }

    /// Fraction of class dependency edges that cross package boundaries.
    pub(crate) fn coupling(&self, model: &CodeModel) -> f64 {
        let mut edges = 0usize;
        let mut crossing = 0usize;
        for c in model.classes() {
            let Some(pc) = self.package_of(&c.id) else { continue };
            for d in &c.dependencies {
                if let Some(pd) = self.package_of(d) {
                    edges += 1;
                    if pd != pc {
                        crossing += 1;
                    }
                }
            }
        }
        if edges == 0 {
            0.0
        } else {
            crossing as f64 / edges as f64
        }
    }

    pub(crate) fn objective(&self, fm: &FeatureMap) -> f64 {
        mean(self.scattering(fm).values()) + mean(self.tangling(fm).values())
    }
}

fn mean<'v>(values: impl Iterator<Item = &'v f64>) -> f64 {
    let (sum, n) = values.fold((0.0, 0usize), |(s, n), v| (s + v, n + 1));
    if n == 0 {
        0.0
    } else {
        sum / n as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureMetricsReport {
    pub fsca: f64,
    pub ftang: f64,
    pub pcom: f64,
    pub pcoup: f64,
    pub per_feature_sca: BTreeMap<String, f64>,
    pub per_package_tang: BTreeMap<String, f64>,
}

/// Mean feature scattering.
pub fn fsca(fm: &FeatureMap, model: &CodeModel) -> Result<f64, RemodError> {
    if fm.is_empty() {
        return Err(RemodError::NoFeatures);
    }
    Ok(mean(Layout::of(model).scattering(fm).values()))
}

/// Mean package tangling over packages touched by a feature.
pub fn ftang(fm: &FeatureMap, model: &CodeModel) -> Result<f64, RemodError> {
    if fm.is_empty() {
        return Err(RemodError::NoFeatures);
    }
    Ok(mean(Layout::of(model).tangling(fm).values()))
}

pub fn pcom(model: &CodeModel) -> Result<f64, RemodError> {
    Layout::of(model).cohesion(model).ok_or(RemodError::EmptyModel)
}

pub fn pcoup(model: &CodeModel) -> f64 {
    Layout::of(model).coupling(model)
}

pub fn feature_metrics(model: &CodeModel, fm: &FeatureMap) -> Result<FeatureMetricsReport, RemodError> {
    if fm.is_empty() {
        return Err(RemodError::NoFeatures);
    }
    let layout = Layout::of(model);
    let per_feature_sca = layout.scattering(fm);
    let per_package_tang = layout.tangling(fm);
    Ok(FeatureMetricsReport {
        fsca: mean(per_feature_sca.values()),
        ftang: mean(per_package_tang.values()),
        pcom: layout.cohesion(model).ok_or(RemodError::EmptyModel)?,
        pcoup: layout.coupling(model),
        per_feature_sca,
        per_package_tang,
    })
}

/// The restructuring objective `fsca + ftang`.
pub fn objective(report: &FeatureMetricsReport) -> f64 {
    report.fsca + report.ftang
}
