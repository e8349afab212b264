//! Command layer shared by the `tafkit` binary and the examples: each
//! function takes textual inputs, runs the engine, and packages the
//! outcome as a [`Report`] with a re-verifiable certificate.

use std::collections::BTreeMap;
use std::time::Instant;

use crate::absorbing::{ta_structure, TaStructureOutcome};
use crate::factorize::{is_taf, ta_factorization, ta_factorization_shortest, TafVerdict};
use crate::finring::{construct, enumerate_ideals, FinIdeal, FiniteRing};
use crate::quadord::classify::{classify_range, classify_taf, TafEvidence, OBSTRUCTION_RING};
use crate::quadord::{
    ideals_above_quad, ta_check_quad, ta_factorization_quad, ta_factorization_quad_shortest,
    QuadElement, QuadIdeal, QuadOrder,
};
use crate::report::{
    elem_repr, ideal_repr, incomparable_repr, quad_elem_repr, quad_ideal_repr,
    structure_certificate, Certificate, ClassifyRow, CriterionRow, IdealInfo, Limits, Report,
    SCHEMA_VERSION,
};
use crate::ringspec::{parse_quad_element, parse_ringspec};
use crate::selftest::{run_all, Status};
use crate::Error;

/// Default enumeration guard: operations that would need to materialize
/// more ring elements than this refuse instead.
pub const DEFAULT_GUARD: u64 = 4096;

fn finish(
    command: &str,
    input: BTreeMap<String, String>,
    verdict: &str,
    certificate: Option<Certificate>,
    started: Instant,
    guard: Option<u64>,
) -> Report {
    Report {
        schema: SCHEMA_VERSION,
        command: command.to_string(),
        input,
        verdict: verdict.to_string(),
        certificate,
        timing_ms: started.elapsed().as_millis() as u64,
        limits: guard.map(|guard| Limits { guard }),
    }
}

fn build_finite(ring_text: &str, gens_text: &str) -> Result<(FiniteRing, FinIdeal), Error> {
    let built = construct(&parse_ringspec(ring_text)?)?;
    let gens = built.parse_gens(gens_text)?;
    let ideal = built.ring.ideal_generate(&gens);
    Ok((built.ring, ideal))
}

/// Number of proper ideals containing `ideal` — the divisor poset an
/// exhausted factorization search covered.
fn proper_divisor_count(ring: &FiniteRing, ideal: &FinIdeal, guard: u64) -> Result<u64, Error> {
    let (quotient, _) = ring.quotient_ring(ideal);
    Ok(enumerate_ideals(&quotient, guard)?.len() as u64 - 1)
}

/// Decides whether an ideal of a finite ring is two-absorbing. Negative
/// verdicts carry the refuting triple; positive verdicts carry the
/// structural certificate (prime square or incomparable prime pair).
pub fn cmd_check_ta(ring_text: &str, gens_text: &str, guard: u64) -> Result<Report, Error> {
    let started = Instant::now();
    let (ring, ideal) = build_finite(ring_text, gens_text)?;
    let input = BTreeMap::from([
        ("ring".to_string(), ring_text.to_string()),
        ("ideal".to_string(), gens_text.to_string()),
    ]);
    let report = match ta_structure(&ring, &ideal, guard)? {
        TaStructureOutcome::NotTwoAbsorbing(w) => {
            let (a, b, c) = w.elements(&ring);
            finish(
                "check-ta",
                input,
                "not-two-absorbing",
                Some(Certificate::NonAbsorbingTriple {
                    a: elem_repr(&ring, &a),
                    b: elem_repr(&ring, &b),
                    c: elem_repr(&ring, &c),
                }),
                started,
                Some(guard),
            )
        }
        TaStructureOutcome::Structure(s) => finish(
            "check-ta",
            input,
            "two-absorbing",
            Some(structure_certificate(&ring, &s)),
            started,
            Some(guard),
        ),
    };
    Ok(report)
}

/// Searches for a factorization of an ideal into proper two-absorbing
/// ideals; `shortest` switches to iterative deepening on factor count.
pub fn cmd_factor(
    ring_text: &str,
    gens_text: &str,
    shortest: bool,
    guard: u64,
) -> Result<Report, Error> {
    let started = Instant::now();
    let (ring, ideal) = build_finite(ring_text, gens_text)?;
    let input = BTreeMap::from([
        ("ring".to_string(), ring_text.to_string()),
        ("ideal".to_string(), gens_text.to_string()),
    ]);
    let found = if shortest {
        ta_factorization_shortest(&ring, &ideal, guard)?
    } else {
        ta_factorization(&ring, &ideal, guard)?
    };
    let report = match found {
        Some(factors) => finish(
            "factor",
            input,
            "factorization-found",
            Some(Certificate::Factorization {
                factors: factors.iter().map(|f| ideal_repr(&ring, f)).collect(),
            }),
            started,
            Some(guard),
        ),
        None => {
            let divisors_searched = proper_divisor_count(&ring, &ideal, guard)?;
            finish(
                "factor",
                input,
                "no-factorization",
                Some(Certificate::ExhaustedSearch {
                    ideal: ideal_repr(&ring, &ideal),
                    divisors_searched,
                }),
                started,
                Some(guard),
            )
        }
    };
    Ok(report)
}

/// Audits a whole ring: does every proper ideal factor into
/// two-absorbing ideals?
pub fn cmd_check_taf(ring_text: &str, guard: u64) -> Result<Report, Error> {
    let started = Instant::now();
    let ring = construct(&parse_ringspec(ring_text)?)?.ring;
    let input = BTreeMap::from([("ring".to_string(), ring_text.to_string())]);
    let report = match is_taf(&ring, guard)? {
        TafVerdict::Taf { factored } => finish(
            "check-taf",
            input,
            "taf",
            Some(Certificate::TafAudit {
                proper_ideals: factored as u64,
            }),
            started,
            Some(guard),
        ),
        TafVerdict::NotTafIncomparable(w) => finish(
            "check-taf",
            input,
            "not-taf",
            Some(Certificate::IncomparableObstruction(incomparable_repr(&ring, &w))),
            started,
            Some(guard),
        ),
        TafVerdict::NotTafExhausted { ideal } => {
            let divisors_searched = proper_divisor_count(&ring, &ideal, guard)?;
            finish(
                "check-taf",
                input,
                "not-taf",
                Some(Certificate::ExhaustedSearch {
                    ideal: ideal_repr(&ring, &ideal),
                    divisors_searched,
                }),
                started,
                Some(guard),
            )
        }
    };
    Ok(report)
}

/// Filters for the ideal listing; flags conjoin.
#[derive(Debug, Clone, Copy, Default)]
pub struct IdealFilter {
    pub ta_only: bool,
    pub prime_only: bool,
    pub maximal_only: bool,
}

/// Lists the full ideal lattice (canonical order) with two-absorbing,
/// prime, and maximal flags per ideal.
pub fn cmd_ideals(ring_text: &str, filter: IdealFilter, guard: u64) -> Result<Report, Error> {
    let started = Instant::now();
    let ring = construct(&parse_ringspec(ring_text)?)?.ring;
    let mut input = BTreeMap::from([("ring".to_string(), ring_text.to_string())]);
    let mut filters = Vec::new();
    if filter.ta_only {
        filters.push("ta-only");
    }
    if filter.prime_only {
        filters.push("prime-only");
    }
    if filter.maximal_only {
        filters.push("maximal-only");
    }
    if !filters.is_empty() {
        input.insert("filters".to_string(), filters.join(","));
    }
    let mut rows = Vec::new();
    for ideal in enumerate_ideals(&ring, guard)? {
        let proper = !ring.is_unit_ideal(&ideal);
        let two_absorbing = proper && crate::absorbing::ta_check(&ring, &ideal, guard)?.is_none();
        let prime = ring.is_prime_ideal(&ideal);
        let maximal = ring.is_maximal_ideal(&ideal);
        if (filter.ta_only && !two_absorbing)
            || (filter.prime_only && !prime)
            || (filter.maximal_only && !maximal)
        {
            continue;
        }
        rows.push(IdealInfo {
            ideal: ideal_repr(&ring, &ideal),
            two_absorbing,
            prime,
            maximal,
        });
    }
    Ok(finish(
        "ideals",
        input,
        "enumerated",
        Some(Certificate::IdealList { ideals: rows }),
        started,
        Some(guard),
    ))
}

/// Parses a comma-separated generator list (`"3+w"`, `"4, 3+w"`) and
/// returns the ideal they generate in the order.
pub fn parse_quad_gens(order: &QuadOrder, text: &str) -> Result<QuadIdeal, Error> {
    let mut gens = Vec::new();
    for part in text.split(',') {
        let (x, y) = parse_quad_element(part)?;
        gens.push(QuadElement::new(x, y));
    }
    order.ideal_from_gens(&gens)
}

fn quad_order(d: i128, half: bool) -> Result<QuadOrder, Error> {
    if half {
        QuadOrder::half_order(d)
    } else {
        QuadOrder::sqrt_order(d)
    }
}

fn quad_input(d: i128, half: bool, ideal_text: &str) -> BTreeMap<String, String> {
    BTreeMap::from([
        ("d".to_string(), d.to_string()),
        ("basis".to_string(), if half { "half" } else { "sqrt" }.to_string()),
        ("ideal".to_string(), ideal_text.to_string()),
    ])
}

/// Decides whether an ideal of `Z[√d]` (or the half-basis order) is
/// two-absorbing, lifting any refuting triple back to the order.
pub fn cmd_quad_ta(d: i128, half: bool, ideal_text: &str, guard: u64) -> Result<Report, Error> {
    let started = Instant::now();
    let order = quad_order(d, half)?;
    let ideal = parse_quad_gens(&order, ideal_text)?;
    let input = quad_input(d, half, ideal_text);
    let report = match ta_check_quad(&order, &ideal, guard)? {
        None => finish("quad-ta", input, "two-absorbing", None, started, Some(guard)),
        Some(w) => finish(
            "quad-ta",
            input,
            "not-two-absorbing",
            Some(Certificate::QuadNonAbsorbingTriple {
                a: quad_elem_repr(&w.a)?,
                b: quad_elem_repr(&w.b)?,
                c: quad_elem_repr(&w.c)?,
            }),
            started,
            Some(guard),
        ),
    };
    Ok(report)
}

/// Searches for a factorization of a quadratic-order ideal into proper
/// two-absorbing ideals; products are exact normal-form equalities.
pub fn cmd_quad_factor(
    d: i128,
    half: bool,
    ideal_text: &str,
    shortest: bool,
    guard: u64,
) -> Result<Report, Error> {
    let started = Instant::now();
    let order = quad_order(d, half)?;
    let ideal = parse_quad_gens(&order, ideal_text)?;
    let input = quad_input(d, half, ideal_text);
    let found = if shortest {
        ta_factorization_quad_shortest(&order, &ideal, guard)?
    } else {
        ta_factorization_quad(&order, &ideal, guard)?
    };
    let report = match found {
        Some(factors) => finish(
            "quad-factor",
            input,
            "factorization-found",
            Some(Certificate::QuadFactorization {
                factors: factors
                    .iter()
                    .map(quad_ideal_repr)
                    .collect::<Result<_, _>>()?,
            }),
            started,
            Some(guard),
        ),
        None => {
            let divisors_searched = ideals_above_quad(&order, &ideal, guard)?
                .into_iter()
                .filter(|j| !j.is_unit())
                .count() as u64;
            finish(
                "quad-factor",
                input,
                "no-factorization",
                Some(Certificate::QuadExhaustedSearch {
                    ideal: quad_ideal_repr(&ideal)?,
                    divisors_searched,
                }),
                started,
                Some(guard),
            )
        }
    };
    Ok(report)
}

fn classify_certificate(evidence: &TafEvidence, d: i128) -> Result<Certificate, Error> {
    Ok(match evidence {
        TafEvidence::InertTwo { minimal_poly_constant, quotient_order } => Certificate::InertTwo {
            minimal_poly_constant: i64::try_from(*minimal_poly_constant)
                .map_err(|_| Error::BadInput("constant out of reportable range".into()))?,
            quotient_order: *quotient_order,
        },
        TafEvidence::NonTafImage { image, witness } => Certificate::NonTafImage {
            image: OBSTRUCTION_RING.to_string(),
            relation: format!("(1+x)^2 = {} = d in the image", d.rem_euclid(8)),
            obstruction: incomparable_repr(image, witness),
        },
    })
}

/// Classifies one `Z[√d]`: does every proper ideal factor into
/// two-absorbing ideals? Scope: square-free `d ≡ 1 (mod 4)`.
pub fn cmd_quad_classify(d: i128) -> Result<Report, Error> {
    let started = Instant::now();
    let c = classify_taf(d)?;
    let input = BTreeMap::from([("d".to_string(), d.to_string())]);
    let certificate = classify_certificate(&c.evidence, d)?;
    Ok(finish(
        "quad-classify",
        input,
        if c.is_taf { "taf" } else { "not-taf" },
        Some(certificate),
        started,
        None,
    ))
}

/// Classifies every eligible `d` in `[d_min, d_max]` and tabulates the
/// verdicts.
pub fn cmd_classify_range(d_min: i128, d_max: i128) -> Result<Report, Error> {
    let started = Instant::now();
    let input = BTreeMap::from([
        ("d-min".to_string(), d_min.to_string()),
        ("d-max".to_string(), d_max.to_string()),
    ]);
    let mut rows = Vec::new();
    for c in classify_range(d_min, d_max)? {
        rows.push(ClassifyRow {
            d: i64::try_from(c.d).map_err(|_| Error::BadInput("d out of range".into()))?,
            residue_mod_8: c.residue_mod_8 as i64,
            taf: c.is_taf,
            certificate_kind: match c.evidence {
                TafEvidence::InertTwo { .. } => "inert-two".to_string(),
                TafEvidence::NonTafImage { .. } => "non-taf-image".to_string(),
            },
        });
    }
    Ok(finish(
        "classify-range",
        input,
        "classified",
        Some(Certificate::ClassificationTable { rows }),
        started,
        None,
    ))
}

/// Runs the built-in verification suite and tabulates per-criterion
/// outcomes. The verdict is `"pass"` only if no criterion failed
/// (skipped criteria do not fail the run).
pub fn cmd_selftest(guard: u64) -> Result<Report, Error> {
    let started = Instant::now();
    let input = BTreeMap::new();
    let outcomes = run_all(guard);
    let mut rows = Vec::new();
    let mut failed = false;
    for o in &outcomes {
        let (status, detail) = match &o.status {
            Status::Pass => ("pass", None),
            Status::Fail(msg) => {
                failed = true;
                ("fail", Some(msg.clone()))
            }
            Status::Skipped(msg) => ("skipped", Some(msg.clone())),
        };
        rows.push(CriterionRow {
            id: o.id,
            name: o.name.to_string(),
            status: status.to_string(),
            detail,
            millis: o.millis,
        });
    }
    Ok(finish(
        "selftest",
        input,
        if failed { "fail" } else { "pass" },
        Some(Certificate::SelftestSummary { criteria: rows }),
        started,
        Some(guard),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::reverify;

    #[test]
    fn check_ta_packages_both_branches() {
        let r = cmd_check_ta("Z/8", "0", DEFAULT_GUARD).unwrap();
        assert_eq!(r.verdict, "not-two-absorbing");
        assert_eq!(r.certificate.as_ref().unwrap().kind(), "non-absorbing-triple");
        assert!(reverify(&r).unwrap());

        let r = cmd_check_ta("Z/8", "4", DEFAULT_GUARD).unwrap();
        assert_eq!(r.verdict, "two-absorbing");
        assert_eq!(r.certificate.as_ref().unwrap().kind(), "prime-square");
        assert!(reverify(&r).unwrap());

        let r = cmd_check_ta("Z/6", "0", DEFAULT_GUARD).unwrap();
        assert_eq!(r.certificate.as_ref().unwrap().kind(), "prime-pair");
        assert!(reverify(&r).unwrap());
    }

    #[test]
    fn factor_finds_a_factorization_of_zero_in_z8() {
        // (0) = (2)·(4) = (2)³ in Z/8; any reported factorization must
        // re-verify, and the shortest has two factors.
        let r = cmd_factor("Z/8", "0", false, DEFAULT_GUARD).unwrap();
        assert_eq!(r.verdict, "factorization-found");
        assert!(reverify(&r).unwrap());

        let r = cmd_factor("Z/8", "0", true, DEFAULT_GUARD).unwrap();
        match r.certificate.as_ref().unwrap() {
            Certificate::Factorization { factors } => {
                assert_eq!(factors.len(), 2);
                let mut sizes: Vec<u64> = factors.iter().map(|f| f.size).collect();
                sizes.sort();
                assert_eq!(sizes, vec![2, 4]); // (4) and (2)
            }
            c => panic!("unexpected certificate {c:?}"),
        }
        assert!(reverify(&r).unwrap());
    }

    #[test]
    fn factor_reports_exhaustion_with_divisor_count() {
        let r = cmd_factor("Z/8[x]/(x^2,2x)", "x", false, DEFAULT_GUARD).unwrap();
        assert_eq!(r.verdict, "no-factorization");
        match r.certificate.as_ref().unwrap() {
            Certificate::ExhaustedSearch { ideal, divisors_searched } => {
                assert_eq!(ideal.size, 2);
                // Divisors of (x): pullbacks of the ideals of the ring
                // modulo (x) ≅ Z/8, minus the unit ideal.
                assert_eq!(*divisors_searched, 3);
            }
            c => panic!("unexpected certificate {c:?}"),
        }
        assert!(reverify(&r).unwrap());
    }

    #[test]
    fn check_taf_verdicts_and_certificates() {
        let r = cmd_check_taf("Z/12", DEFAULT_GUARD).unwrap();
        assert_eq!(r.verdict, "taf");
        assert_eq!(r.certificate.as_ref().unwrap().kind(), "taf-audit");
        assert!(reverify(&r).unwrap());

        let r = cmd_check_taf("Z/8[x]/(x^2,2x)", DEFAULT_GUARD).unwrap();
        assert_eq!(r.verdict, "not-taf");
        assert_eq!(
            r.certificate.as_ref().unwrap().kind(),
            "incomparable-obstruction"
        );
        assert!(reverify(&r).unwrap());
    }

    #[test]
    fn ideal_listing_respects_filters() {
        let all = cmd_ideals("Z/12", IdealFilter::default(), DEFAULT_GUARD).unwrap();
        let Certificate::IdealList { ideals } = all.certificate.as_ref().unwrap() else {
            panic!("expected ideal list");
        };
        assert_eq!(ideals.len(), 6); // (0),(6),(4),(3),(2),R
        assert!(reverify(&all).unwrap());

        let primes = cmd_ideals(
            "Z/12",
            IdealFilter { prime_only: true, ..Default::default() },
            DEFAULT_GUARD,
        )
        .unwrap();
        let Certificate::IdealList { ideals } = primes.certificate.as_ref().unwrap() else {
            panic!("expected ideal list");
        };
        assert_eq!(ideals.len(), 2); // (2) and (3)
        assert!(ideals.iter().all(|i| i.prime && i.maximal));
    }

    #[test]
    fn quad_commands_cover_the_reference_computations() {
        // Non-two-absorbing with lifted triple.
        let r = cmd_quad_ta(-7, false, "3+w", DEFAULT_GUARD).unwrap();
        assert_eq!(r.verdict, "not-two-absorbing");
        match r.certificate.as_ref().unwrap() {
            Certificate::QuadNonAbsorbingTriple { a, b, c } => {
                assert_eq!((a.x, b.x, c.x), (2, 2, 4));
                assert_eq!((a.y, b.y, c.y), (0, 0, 0));
            }
            c => panic!("unexpected certificate {c:?}"),
        }
        assert!(reverify(&r).unwrap());

        // No factorization, exhausted divisors.
        let r = cmd_quad_factor(-7, false, "3+w", false, DEFAULT_GUARD).unwrap();
        assert_eq!(r.verdict, "no-factorization");
        assert!(reverify(&r).unwrap());

        // The worked two-factor case.
        let r = cmd_quad_factor(-11, false, "3+w", false, DEFAULT_GUARD).unwrap();
        assert_eq!(r.verdict, "factorization-found");
        match r.certificate.as_ref().unwrap() {
            Certificate::QuadFactorization { factors } => {
                let norms: Vec<i64> = factors.iter().map(|f| f.norm).collect();
                assert_eq!(norms, vec![4, 5]);
            }
            c => panic!("unexpected certificate {c:?}"),
        }
        assert!(reverify(&r).unwrap());

        // A prime ideal is two-absorbing; positive verdicts have no
        // certificate to re-check.
        let r = cmd_quad_ta(-11, false, "4, 3+w", DEFAULT_GUARD).unwrap();
        assert_eq!(r.verdict, "two-absorbing");
        assert!(r.certificate.is_none());
    }

    #[test]
    fn classification_commands() {
        let r = cmd_quad_classify(-11).unwrap();
        assert_eq!(r.verdict, "taf");
        assert_eq!(r.certificate.as_ref().unwrap().kind(), "inert-two");
        assert!(reverify(&r).unwrap());

        let r = cmd_quad_classify(-7).unwrap();
        assert_eq!(r.verdict, "not-taf");
        assert_eq!(r.certificate.as_ref().unwrap().kind(), "non-taf-image");
        assert!(reverify(&r).unwrap());

        let r = cmd_classify_range(-20, 20).unwrap();
        let Certificate::ClassificationTable { rows } = r.certificate.as_ref().unwrap() else {
            panic!("expected table");
        };
        assert_eq!(rows.len(), 8);
        assert!(rows.iter().all(|row| row.taf == (row.residue_mod_8 == 5)));
        assert!(reverify(&r).unwrap());

        assert!(matches!(
            cmd_quad_classify(3),
            Err(Error::OutsideClassificationScope(3))
        ));
    }

    #[test]
    fn error_paths_surface_as_errors() {
        assert!(matches!(
            cmd_check_ta("Z/8", "1", DEFAULT_GUARD),
            Err(Error::NotProper { .. })
        ));
        assert!(cmd_check_ta("Q/8", "0", DEFAULT_GUARD).is_err());
        assert!(matches!(
            cmd_check_taf("Z/8[x]/(x^2,2x)", 10),
            Err(Error::GuardExceeded { size: 16, guard: 10 })
        ));
    }
}
