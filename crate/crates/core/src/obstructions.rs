//! Verdicts built from twisted polynomials: nonfibered certificates and the
//! ribbon concordance screen.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::finite::{
    dedupe_by_kernel, enumerate_homs, regular_of_hom, same_kernel, HomAssignment, HomAssignmentJson,
    HomSearchOptions, RepInfo, Representation,
};
use crate::group::Presentation;
use crate::laurent::LaurentPoly;
use crate::twisted::{
    assemble_budgeted, delta1_z, free_rank_independent, report_for_complex, wada_at, TwistedPolyReport,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FiberStatus {
    NonfiberedCertified,
    NoObstructionFound,
    BudgetExhausted,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CertificateReason {
    #[serde(rename = "delta1-zero")]
    Delta1Zero,
    #[serde(rename = "delta1-nonmonic")]
    Delta1Nonmonic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Certificate {
    pub degree: usize,
    pub hom: HomAssignmentJson,
    pub rep: RepInfo,
    pub reason: CertificateReason,
    pub report: TwistedPolyReport,
    /// How the certificate was recomputed before being emitted.
    pub reverified_by: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeLog {
    pub degree: usize,
    /// Homomorphisms to `S_n` up to conjugation.
    pub hom_count: usize,
    /// Representations actually evaluated (new kernels within the size cap).
    pub tested: usize,
    /// New kernels skipped because the image exceeded the size cap.
    pub skipped_over_cap: usize,
    pub reports: Vec<TwistedPolyReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FiberVerdict {
    pub status: FiberStatus,
    pub certificate: Option<Certificate>,
    pub tested: Vec<DegreeLog>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct FiberOptions {
    pub max_degree: usize,
    /// Largest image order (regular representation dimension) evaluated.
    pub max_rep_dim: usize,
    pub budget: Budget,
    /// Worker threads; `None` uses the global pool.
    pub jobs: Option<usize>,
    /// Include every per-representation report in the log.
    pub keep_reports: bool,
}

impl Default for FiberOptions {
    fn default() -> Self {
        FiberOptions { max_degree: 5, max_rep_dim: 120, budget: Budget::unlimited(), jobs: None, keep_reports: true }
    }
}

const SOLID_TORUS_NOTE: &str = "the presentation <x | > is the unknot exterior (a solid torus); \
     the fibering criteria do not apply and no certificate is ever issued";
const NO_FIBERED_CLAIM: &str =
    "no certificate found within the search bounds; this is not evidence that the class is fibered";

/// Searches finite quotients of degree `1..=max_degree` for a representation
/// whose twisted `Delta_1` vanishes or fails to be monic. Either certifies
/// that the class is not fibered.
pub fn fiber_check(p: &Presentation, opts: &FiberOptions) -> Result<FiberVerdict> {
    p.validate().into_result()?;
    match opts.jobs {
        Some(j) => rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build()
            .map_err(|e| Error::Unavailable(e.to_string()))?
            .install(|| fiber_check_inner(p, opts)),
        None => fiber_check_inner(p, opts),
    }
}

fn fiber_check_inner(p: &Presentation, opts: &FiberOptions) -> Result<FiberVerdict> {
    let solid_torus = p.is_trivial_knot_group();
    // the monic criterion needs the complex to compute the manifold invariant
    let monic_branch = p.is_link_exterior() && p.deficiency() == 1 && !solid_torus;
    let mut notes = Vec::new();
    if solid_torus {
        notes.push(SOLID_TORUS_NOTE.to_string());
    } else if !monic_branch {
        notes.push(
            "presentation is not a deficiency-one link exterior presentation: only vanishing certificates are \
             considered and polynomials are presentation invariants"
                .to_string(),
        );
    }

    let mut tested = Vec::new();
    let mut seen: Vec<HomAssignment> = Vec::new();
    for n in 1..=opts.max_degree {
        let search = HomSearchOptions { meridional: p.is_link_exterior(), dedupe: true, budget: opts.budget.clone() };
        let homs = match enumerate_homs(p, n, &search) {
            Ok(h) => h,
            Err(Error::BudgetExhausted) => return Ok(exhausted(tested, notes)),
            Err(e) => return Err(e),
        };
        let fresh: Vec<HomAssignment> =
            dedupe_by_kernel(&homs).into_iter().filter(|h| !seen.iter().any(|s| same_kernel(s, h))).collect();
        seen.extend(fresh.iter().cloned());
        let (todo, over): (Vec<HomAssignment>, Vec<HomAssignment>) =
            fresh.into_iter().partition(|h| h.image_order() <= opts.max_rep_dim);

        let results: Vec<Result<TwistedPolyReport>> = todo
            .par_iter()
            .map(|h| {
                let rep = regular_of_hom(h);
                let tc = assemble_budgeted(p, &rep, &opts.budget)?;
                report_for_complex(p, &tc, &opts.budget)
            })
            .collect();

        let mut reports = Vec::with_capacity(results.len());
        let mut cert = None;
        for (h, r) in todo.iter().zip(results) {
            let r = match r {
                Ok(r) => r,
                Err(Error::BudgetExhausted) => break,
                Err(e) => return Err(e),
            };
            if cert.is_none() && !solid_torus {
                if let Some(reason) = certificate_reason(&r, monic_branch) {
                    cert = Some((h.clone(), reason, r.clone()));
                }
            }
            reports.push(r);
        }
        let complete = reports.len() == todo.len();
        tested.push(DegreeLog {
            degree: n,
            hom_count: homs.len(),
            tested: reports.len(),
            skipped_over_cap: over.len(),
            reports: if opts.keep_reports { reports } else { Vec::new() },
        });
        if let Some((h, reason, report)) = cert {
            let how = match reverify(p, &h, reason, &report, &opts.budget) {
                Ok(how) => how,
                Err(Error::BudgetExhausted) => {
                    notes.push(format!(
                        "a candidate certificate at degree {n} could not be re-verified within the budget and was not issued"
                    ));
                    return Ok(exhausted(tested, notes));
                }
                Err(e) => return Err(e),
            };
            return Ok(FiberVerdict {
                status: FiberStatus::NonfiberedCertified,
                certificate: Some(Certificate {
                    degree: n,
                    hom: h.to_json(p.generators()),
                    rep: report.rep.clone(),
                    reason,
                    report,
                    reverified_by: how,
                }),
                tested,
                notes,
            });
        }
        if !complete {
            return Ok(exhausted(tested, notes));
        }
    }
    notes.push(NO_FIBERED_CLAIM.to_string());
    if tested.iter().any(|d| d.skipped_over_cap > 0) {
        notes.push("some quotients exceeded the representation size cap and were not evaluated".to_string());
    }
    Ok(FiberVerdict { status: FiberStatus::NoObstructionFound, certificate: None, tested, notes })
}

fn exhausted(tested: Vec<DegreeLog>, mut notes: Vec<String>) -> FiberVerdict {
    notes.push("search budget exhausted before the requested degrees were covered".to_string());
    FiberVerdict { status: FiberStatus::BudgetExhausted, certificate: None, tested, notes }
}

fn certificate_reason(r: &TwistedPolyReport, monic_branch: bool) -> Option<CertificateReason> {
    if r.delta1_zero {
        Some(CertificateReason::Delta1Zero)
    } else if monic_branch && r.is_nonmonic_certificate() {
        Some(CertificateReason::Delta1Nonmonic)
    } else {
        None
    }
}

/// Recomputes the certificate from scratch along a different route:
/// fraction-free ranks for a vanishing `Delta_1`, and the order relation at a
/// different pivot for a non-monic one.
fn reverify(
    p: &Presentation,
    h: &HomAssignment,
    reason: CertificateReason,
    report: &TwistedPolyReport,
    budget: &Budget,
) -> Result<String> {
    if !h.satisfies(p) {
        return Err(Error::Inconsistent("certificate homomorphism violates a relator".into()));
    }
    let rep = regular_of_hom(h);
    let tc = assemble_budgeted(p, &rep, budget)?;
    match reason {
        CertificateReason::Delta1Zero => {
            let free = free_rank_independent(&tc, budget)?;
            if free == 0 {
                return Err(Error::Inconsistent("vanishing Delta_1 not confirmed by fraction-free ranks".into()));
            }
            Ok(format!("fraction-free ranks give H_1 free rank {free}"))
        }
        CertificateReason::Delta1Nonmonic => {
            let used = report.wada.as_ref().and_then(|w| p.generator_index(&w.pivot).ok());
            let j = tc.valid_pivots().find(|&j| Some(j) != used).or(used).ok_or(Error::DegeneratePivot)?;
            let w = wada_at(&tc, j, budget)?;
            let d0 = crate::laurent::minors_gcd_budgeted(&tc.d1, tc.k, budget)?.canonical();
            let z = delta1_z(&d0, &w)?;
            if z.anomalous || z.poly.is_monic() || Some(&z.poly) != report.delta1_z.as_ref() {
                return Err(Error::Inconsistent("non-monic Delta_1 not confirmed at an alternate pivot".into()));
            }
            Ok(format!("order relation recomputed at pivot {}", p.generators()[j]))
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct RibbonOptions {
    pub lower_name: Option<String>,
    pub upper_name: Option<String>,
    /// Known fiberedness of the upper knot, e.g. from the catalog.
    pub upper_fibered: Option<bool>,
    /// Settings for the fiber check run on the lower knot when the upper one
    /// is known to be fibered.
    pub fiber: Option<FiberOptions>,
    /// Representation pairs assumed to come from a common representation of
    /// the cobordism. Reported, never used for the verdict.
    pub conditional_pairs: Vec<(Representation, Representation)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum RibbonVerdict {
    Obstructed,
    Consistent,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Divisibility {
    pub holds: bool,
    pub lower_delta: LaurentPoly,
    pub upper_delta: LaurentPoly,
    pub quotient: Option<LaurentPoly>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DegreeComparison {
    pub lower_degree: Option<usize>,
    pub upper_degree: Option<usize>,
    pub holds: bool,
    pub caveat: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct FiberedTransfer {
    pub upper_fibered: bool,
    pub lower_status: Option<FiberStatus>,
    pub fires: bool,
    pub note: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ConditionalCheck {
    pub lower_rep: RepInfo,
    pub upper_rep: RepInfo,
    pub divides: bool,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct RibbonReport {
    pub lower: String,
    pub upper: String,
    pub question: String,
    pub divisibility: Divisibility,
    pub degree_comparison: DegreeComparison,
    pub fibered_transfer: Option<FiberedTransfer>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub conditional: Vec<ConditionalCheck>,
    pub verdict: RibbonVerdict,
    pub reasons: Vec<String>,
}

const DEGREE_CAVEAT: &str = "informational only: the upper polynomial could vanish for other representations, \
     so degree comparison alone does not decide anything";

/// Screens the pair for a ribbon concordance from `lower` to `upper`
/// (`upper >= lower`). Only the trivial representation, which extends over
/// every cobordism, and the fibered transfer can yield OBSTRUCTED.
pub fn ribbon_screen(lower: &Presentation, upper: &Presentation, opts: &RibbonOptions) -> Result<RibbonReport> {
    lower.validate().into_result()?;
    upper.validate().into_result()?;
    let (sl, su) = (lower.phi_signature(), upper.phi_signature());
    if sl.is_none() || sl != su {
        return Err(Error::PhiMismatch(format!(
            "classes differ on the meridians: lower {:?}, upper {:?}",
            lower.phi(),
            upper.phi()
        )));
    }
    let budget = opts.fiber.as_ref().map(|f| f.budget.clone()).unwrap_or_default();
    let dl = crate::twisted::twisted_report(lower, &Representation::trivial(lower.num_generators()), &budget)?;
    let du = crate::twisted::twisted_report(upper, &Representation::trivial(upper.num_generators()), &budget)?;
    let holds = dl.delta1.divides(&du.delta1);
    let quotient = if holds && !dl.delta1.is_zero() { du.delta1.div_exact(&dl.delta1).map(|q| q.canonical()) } else { None };
    let lower_name = opts.lower_name.clone().unwrap_or_else(|| "lower".into());
    let upper_name = opts.upper_name.clone().unwrap_or_else(|| "upper".into());

    let mut reasons = Vec::new();
    let mut obstructed = false;
    if !holds {
        obstructed = true;
        reasons.push(format!(
            "Delta_1({lower_name}) = {} does not divide Delta_1({upper_name}) = {} (trivial representation)",
            dl.delta1, du.delta1
        ));
    }

    let degree_comparison = DegreeComparison {
        lower_degree: dl.degree,
        upper_degree: du.degree,
        holds: match (dl.degree, du.degree) {
            (Some(a), Some(b)) => a <= b,
            _ => true,
        },
        caveat: DEGREE_CAVEAT.to_string(),
    };

    let fibered_transfer = match opts.upper_fibered {
        Some(true) => {
            let fopts = opts.fiber.clone().unwrap_or(FiberOptions { max_degree: 1, ..FiberOptions::default() });
            let v = fiber_check(lower, &fopts)?;
            let fires = v.status == FiberStatus::NonfiberedCertified;
            if fires {
                obstructed = true;
                reasons.push(format!(
                    "{upper_name} is fibered but {lower_name} is certified nonfibered; a ribbon concordance \
                     to a fibered link forces the lower link to be fibered"
                ));
            }
            Some(FiberedTransfer {
                upper_fibered: true,
                lower_status: Some(v.status),
                fires,
                note: "if the upper link is fibered then so is any link it ribbon-concords to".to_string(),
            })
        }
        Some(false) => Some(FiberedTransfer {
            upper_fibered: false,
            lower_status: None,
            fires: false,
            note: "upper link not fibered: no transfer applies".to_string(),
        }),
        None => None,
    };

    let mut conditional = Vec::new();
    for (rl, ru) in &opts.conditional_pairs {
        let a = crate::twisted::twisted_report(lower, rl, &budget)?;
        let b = crate::twisted::twisted_report(upper, ru, &budget)?;
        conditional.push(ConditionalCheck {
            lower_rep: a.rep.clone(),
            upper_rep: b.rep.clone(),
            divides: a.delta1.divides(&b.delta1),
            label: "conditional: assumes the pair is induced from a representation of the cobordism".to_string(),
        });
    }

    if !obstructed {
        reasons.push("no obstruction found; this does not show that a ribbon concordance exists".to_string());
    }
    Ok(RibbonReport {
        question: format!("is a ribbon concordance {upper_name} >= {lower_name} obstructed?"),
        lower: lower_name,
        upper: upper_name,
        divisibility: Divisibility { holds, lower_delta: dl.delta1, upper_delta: du.delta1, quotient },
        degree_comparison,
        fibered_transfer,
        conditional,
        verdict: if obstructed { RibbonVerdict::Obstructed } else { RibbonVerdict::Consistent },
        reasons,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct GenusInfo {
    pub degree: usize,
    /// `genus >= degree / 2`, only for the untwisted knot case.
    pub genus_lower_bound: Option<usize>,
    pub informational: bool,
}

pub fn genus_degree_report(report: &TwistedPolyReport, k: usize) -> Result<GenusInfo> {
    let degree = report.degree.ok_or_else(|| Error::Unavailable("Delta_1 vanishes".into()))?;
    Ok(GenusInfo { degree, genus_lower_bound: (k == 1).then(|| degree.div_ceil(2)), informational: true })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::lookup;

    #[test]
    fn five_two_certified_at_degree_one() {
        let p = lookup("5_2").unwrap().presentation();
        let v = fiber_check(&p, &FiberOptions { max_degree: 2, ..Default::default() }).unwrap();
        assert_eq!(v.status, FiberStatus::NonfiberedCertified);
        let c = v.certificate.unwrap();
        assert_eq!(c.degree, 1);
        assert_eq!(c.reason, CertificateReason::Delta1Nonmonic);
        assert_eq!(c.report.delta1, LaurentPoly::from_ints(0, &[2, -3, 2]));
    }

    #[test]
    fn solid_torus_never_certified() {
        let v = fiber_check(&Presentation::unknot(), &FiberOptions { max_degree: 3, ..Default::default() }).unwrap();
        assert_eq!(v.status, FiberStatus::NoObstructionFound);
        assert!(v.tested.iter().flat_map(|d| &d.reports).all(|r| r.delta1.is_one()));
        assert!(v.notes.iter().any(|n| n.contains("solid torus")));
    }

    #[test]
    fn genus_bounds() {
        let p = lookup("3_1").unwrap().presentation();
        let r = crate::twisted::twisted_report(&p, &Representation::trivial(2), &Budget::unlimited()).unwrap();
        assert_eq!(genus_degree_report(&r, 1).unwrap().genus_lower_bound, Some(1));
    }
}
