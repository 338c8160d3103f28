//! Randomized spot checks of the six proven positivity configurations: pairs,
//! line configurations, the full set, the interior, boundary subsets, and
//! unions of those with boundary subsets. Every sampled determinant is exact.

use num_traits::Signed;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::colloc::build_m;
use crate::comb::{compositions, Composition, GammaSet};
use crate::error::{Error, Result};
use crate::report::{VerificationReport, Witness};

const MAX_DEGREE: u32 = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseKind {
    PairOrSingleton,
    LineConfiguration,
    FullSet,
    InteriorSet,
    BoundarySubset,
    UnionWithBoundary,
}

impl CaseKind {
    pub const ALL: [CaseKind; 6] = [
        CaseKind::PairOrSingleton,
        CaseKind::LineConfiguration,
        CaseKind::FullSet,
        CaseKind::InteriorSet,
        CaseKind::BoundarySubset,
        CaseKind::UnionWithBoundary,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            CaseKind::PairOrSingleton => "pair-or-singleton",
            CaseKind::LineConfiguration => "line-configuration",
            CaseKind::FullSet => "full-set",
            CaseKind::InteriorSet => "interior-set",
            CaseKind::BoundarySubset => "boundary-subset",
            CaseKind::UnionWithBoundary => "union-with-boundary",
        }
    }

    /// The full set and the interior have exactly one instance per degree.
    fn deterministic(&self) -> bool {
        matches!(self, CaseKind::FullSet | CaseKind::InteriorSet)
    }
}

fn random_nonempty_subset(
    pool: &[Composition],
    d: u32,
    rng: &mut ChaCha8Rng,
) -> Result<GammaSet> {
    debug_assert!(!pool.is_empty());
    let size = rng.gen_range(1..=pool.len());
    let members = pool.iter().copied().choose_multiple(rng, size);
    GammaSet::new(d, members)
}

fn sample_case(case: CaseKind, d: u32, rng: &mut ChaCha8Rng) -> Result<Option<GammaSet>> {
    let all = compositions(d)?;
    let boundary: Vec<Composition> = all.iter().filter(|c| c.zero_count() >= 1).copied().collect();
    match case {
        CaseKind::PairOrSingleton => {
            let size = rng.gen_range(1..=2.min(all.len()));
            Ok(Some(GammaSet::new(
                d,
                all.iter().copied().choose_multiple(rng, size),
            )?))
        }
        CaseKind::LineConfiguration => {
            let axis = rng.gen_range(0usize..3);
            let value = rng.gen_range(0..=d);
            let pool: Vec<Composition> =
                all.iter().filter(|c| c.parts()[axis] == value).copied().collect();
            Ok(Some(random_nonempty_subset(&pool, d, rng)?))
        }
        CaseKind::FullSet => Ok(Some(GammaSet::full(d)?)),
        CaseKind::InteriorSet => {
            let interior = GammaSet::interior(d)?;
            Ok(if interior.is_empty() {
                None
            } else {
                Some(interior)
            })
        }
        CaseKind::BoundarySubset => Ok(Some(random_nonempty_subset(&boundary, d, rng)?)),
        CaseKind::UnionWithBoundary => {
            let first = match rng.gen_range(0..3) {
                0 => sample_case(CaseKind::PairOrSingleton, d, rng)?,
                1 => sample_case(CaseKind::LineConfiguration, d, rng)?,
                _ => sample_case(CaseKind::InteriorSet, d, rng)?,
            };
            let second = random_nonempty_subset(&boundary, d, rng)?;
            Ok(match first {
                Some(g) => Some(g.union(&second)?),
                None => Some(second),
            })
        }
    }
}

/// Samples `samples` index sets per case at degree `d` (one evaluation for
/// the deterministic cases) and verifies `det M > 0` exactly on each.
pub fn theorem4_check(d: u32, samples: usize, seed: u64) -> Result<VerificationReport> {
    if d == 0 {
        return Err(Error::InvalidDegree(0));
    }
    if d > MAX_DEGREE {
        return Err(Error::EnumerationBudget {
            what: format!("configuration sampling capped at degree {MAX_DEGREE}"),
            subsets: 0,
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(d));
    let mut witnesses = Vec::new();
    let mut checked = 0u64;
    for case in CaseKind::ALL {
        let runs = if case.deterministic() { 1 } else { samples };
        for _ in 0..runs {
            let Some(gamma) = sample_case(case, d, &mut rng)? else {
                continue;
            };
            let det = build_m(&gamma)?.det_rational()?;
            checked += 1;
            if !det.is_positive() {
                witnesses.push(Witness {
                    gamma: gamma.to_triples(),
                    value: format!("{} ({})", det, case.name()),
                });
                if witnesses.len() >= 8 {
                    break;
                }
            }
        }
    }
    let notes = format!(
        "{checked} exact determinants over six configuration families, seed {seed}"
    );
    Ok(if witnesses.is_empty() {
        VerificationReport::pass("theorem4", d, notes)
    } else {
        VerificationReport::fail("theorem4", d, witnesses, notes)
    })
}
