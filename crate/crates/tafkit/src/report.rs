//! Versioned, machine-readable run reports.
//!
//! Every command produces a [`Report`]: a schema-tagged JSON document
//! carrying the command name, an echo of the inputs, a short verdict
//! string, and — whenever the verdict makes a claim — a typed
//! [`Certificate`] with enough data to re-check the claim without
//! trusting the run that produced it. [`reverify`] does exactly that: it
//! rebuilds the ring or order from the input echo and re-establishes
//! every assertion the certificate makes (memberships for witness
//! triples, re-multiplication for factorizations, primality and
//! containment for structural claims).
//!
//! Certificates are a tagged union keyed by `"kind"`; numeric fields use
//! plain integers, and elements/ideals carry both machine data
//! (coefficient vectors, normal forms) and display strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::absorbing::{ta_check, ta_structure, TaStructure, TaStructureOutcome};
use crate::factorize::{ta_factorization, verify_factorization};
use crate::finring::{construct, enumerate_ideals, FinIdeal, FiniteRing, RingElement};
use crate::quadord::classify::{classify_taf, TafEvidence};
use crate::quadord::{
    ideals_above_quad, quotient_finite, ta_factorization_quad, verify_factorization_quad,
    QuadElement, QuadIdeal, QuadOrder, QuadTaWitness,
};
use crate::ringspec::parse_ringspec;
use crate::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// One command run: inputs, verdict, certificate, timing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    /// Input echo, keyed by parameter name ("ring", "ideal", "d", ...).
    pub input: BTreeMap<String, String>,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Certificate>,
    pub timing_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub limits: Option<Limits>,
}

/// Engine limits in effect during the run.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Limits {
    pub guard: u64,
}

/// A finite-ring element: reduced coefficient vector plus display form.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ElementRepr {
    pub coeffs: Vec<u64>,
    pub display: String,
}

/// A finite-ring ideal: generators plus its cardinality as a checksum.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct IdealRepr {
    pub gens: Vec<ElementRepr>,
    pub size: u64,
    pub display: String,
}

/// Element `x + y·w` of a quadratic order.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuadElementRepr {
    pub x: i64,
    pub y: i64,
    pub display: String,
}

/// Ideal of a quadratic order in normal form `(a, 0), (b, c)`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct QuadIdealRepr {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub norm: i64,
    pub display: String,
}

/// An ideal `I` whose radical is a maximal ideal `M`, yet `I` and `M²`
/// are incomparable — the standard obstruction to factorization.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct IncomparableRepr {
    pub ideal: IdealRepr,
    pub maximal: IdealRepr,
    pub in_ideal_not_in_square: ElementRepr,
    pub in_square_not_in_ideal: ElementRepr,
}

/// Per-ideal row of an `ideals` listing.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct IdealInfo {
    pub ideal: IdealRepr,
    pub two_absorbing: bool,
    pub prime: bool,
    pub maximal: bool,
}

/// Per-`d` row of a classification table.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct ClassifyRow {
    pub d: i64,
    pub residue_mod_8: i64,
    pub taf: bool,
    pub certificate_kind: String,
}

/// Per-criterion row of a selftest summary.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CriterionRow {
    pub id: u32,
    pub name: String,
    /// "pass", "fail", or "skipped".
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    pub millis: u64,
}

/// Typed certificate union; `kind` tags the variant in JSON.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// Refutation of the two-absorbing property: `abc ∈ I` with all pair
    /// products outside `I`.
    NonAbsorbingTriple {
        a: ElementRepr,
        b: ElementRepr,
        c: ElementRepr,
    },
    /// Structure of a two-absorbing ideal: radical is a prime `P` with
    /// `P² ⊆ I`.
    PrimeSquare { prime: IdealRepr },
    /// Structure of a two-absorbing ideal: radical is `P₁ ∩ P₂` for
    /// incomparable primes with `P₁P₂ ⊆ I`.
    PrimePair { first: IdealRepr, second: IdealRepr },
    /// Factor list whose product is exactly the input ideal, each factor
    /// proper and two-absorbing.
    Factorization { factors: Vec<IdealRepr> },
    /// The exhaustive search over the divisor poset found no
    /// factorization.
    ExhaustedSearch {
        ideal: IdealRepr,
        divisors_searched: u64,
    },
    /// Obstruction disproving the factorization property for the whole
    /// ring.
    IncomparableObstruction(IncomparableRepr),
    /// Positive whole-ring audit: every proper ideal factored.
    TafAudit { proper_ideals: u64 },
    /// Deterministic listing of the ideal lattice.
    IdealList { ideals: Vec<IdealInfo> },
    /// Quadratic-order refutation triple.
    QuadNonAbsorbingTriple {
        a: QuadElementRepr,
        b: QuadElementRepr,
        c: QuadElementRepr,
    },
    /// Quadratic-order factorization (normal-form equality re-checkable).
    QuadFactorization { factors: Vec<QuadIdealRepr> },
    /// Quadratic-order exhausted search over the divisors of the ideal.
    QuadExhaustedSearch {
        ideal: QuadIdealRepr,
        divisors_searched: u64,
    },
    /// `2` is inert in the maximal order: `X² − X + c` (minimal polynomial
    /// of the half generator) is irreducible mod 2 and the quotient by 2
    /// is a field of the stated order.
    InertTwo {
        minimal_poly_constant: i64,
        quotient_order: u64,
    },
    /// `Z[√d]` surjects onto a fixed 16-element ring that carries an
    /// incomparability obstruction, so it cannot have the factorization
    /// property (the property passes to images).
    NonTafImage {
        image: String,
        relation: String,
        obstruction: IncomparableRepr,
    },
    /// Classification verdicts over a range of `d`.
    ClassificationTable { rows: Vec<ClassifyRow> },
    /// Outcome of the built-in verification suite.
    SelftestSummary { criteria: Vec<CriterionRow> },
}

impl Certificate {
    /// The JSON `kind` tag of this certificate.
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::NonAbsorbingTriple { .. } => "non-absorbing-triple",
            Certificate::PrimeSquare { .. } => "prime-square",
            Certificate::PrimePair { .. } => "prime-pair",
            Certificate::Factorization { .. } => "factorization",
            Certificate::ExhaustedSearch { .. } => "exhausted-search",
            Certificate::IncomparableObstruction(_) => "incomparable-obstruction",
            Certificate::TafAudit { .. } => "taf-audit",
            Certificate::IdealList { .. } => "ideal-list",
            Certificate::QuadNonAbsorbingTriple { .. } => "quad-non-absorbing-triple",
            Certificate::QuadFactorization { .. } => "quad-factorization",
            Certificate::QuadExhaustedSearch { .. } => "quad-exhausted-search",
            Certificate::InertTwo { .. } => "inert-two",
            Certificate::NonTafImage { .. } => "non-taf-image",
            Certificate::ClassificationTable { .. } => "classification-table",
            Certificate::SelftestSummary { .. } => "selftest-summary",
        }
    }
}

// ---------------------------------------------------------------------
// Conversions engine → report
// ---------------------------------------------------------------------

pub fn elem_repr(ring: &FiniteRing, e: &RingElement) -> ElementRepr {
    ElementRepr {
        coeffs: e.coeffs().to_vec(),
        display: ring.elem_string(e),
    }
}

pub fn ideal_repr(ring: &FiniteRing, ideal: &FinIdeal) -> IdealRepr {
    let gens: Vec<ElementRepr> = ideal.gens().iter().map(|g| elem_repr(ring, g)).collect();
    let display = if gens.is_empty() {
        "(0)".to_string()
    } else {
        format!(
            "({})",
            gens.iter().map(|g| g.display.clone()).collect::<Vec<_>>().join(", ")
        )
    };
    IdealRepr {
        gens,
        size: ideal.len() as u64,
        display,
    }
}

fn to_i64(v: i128, what: &str) -> Result<i64, Error> {
    i64::try_from(v).map_err(|_| Error::BadInput(format!("{what} out of reportable range: {v}")))
}

pub fn quad_elem_repr(e: &QuadElement) -> Result<QuadElementRepr, Error> {
    Ok(QuadElementRepr {
        x: to_i64(e.x, "element coordinate")?,
        y: to_i64(e.y, "element coordinate")?,
        display: crate::quadord::format_quad(e),
    })
}

pub fn quad_ideal_repr(ideal: &QuadIdeal) -> Result<QuadIdealRepr, Error> {
    Ok(QuadIdealRepr {
        a: to_i64(ideal.a(), "normal form entry")?,
        b: to_i64(ideal.b(), "normal form entry")?,
        c: to_i64(ideal.c(), "normal form entry")?,
        norm: to_i64(ideal.norm(), "ideal norm")?,
        display: ideal.display(),
    })
}

pub fn incomparable_repr(
    ring: &FiniteRing,
    w: &crate::factorize::IncomparabilityWitness,
) -> IncomparableRepr {
    IncomparableRepr {
        ideal: ideal_repr(ring, &w.ideal),
        maximal: ideal_repr(ring, &w.maximal),
        in_ideal_not_in_square: elem_repr(ring, &w.in_i_not_m2),
        in_square_not_in_ideal: elem_repr(ring, &w.in_m2_not_i),
    }
}

pub fn structure_certificate(ring: &FiniteRing, s: &TaStructure) -> Certificate {
    match s {
        TaStructure::PrimeSquare { p } => Certificate::PrimeSquare {
            prime: ideal_repr(ring, p),
        },
        TaStructure::PrimePair { p1, p2 } => Certificate::PrimePair {
            first: ideal_repr(ring, p1),
            second: ideal_repr(ring, p2),
        },
    }
}

// ---------------------------------------------------------------------
// Re-verification
// ---------------------------------------------------------------------

fn rebuild_element(ring: &FiniteRing, repr: &ElementRepr) -> Result<RingElement, Error> {
    if repr.coeffs.len() != ring.rank() {
        return Err(Error::BadElement(format!(
            "coefficient vector has length {}, ring rank is {}",
            repr.coeffs.len(),
            ring.rank()
        )));
    }
    let signed: Vec<i64> = repr
        .coeffs
        .iter()
        .map(|&c| i64::try_from(c).map_err(|_| Error::BadElement(format!("coefficient {c} too large"))))
        .collect::<Result<_, _>>()?;
    Ok(ring.elem(&signed))
}

fn rebuild_ideal(ring: &FiniteRing, repr: &IdealRepr) -> Result<FinIdeal, Error> {
    let gens: Vec<RingElement> = repr
        .gens
        .iter()
        .map(|g| rebuild_element(ring, g))
        .collect::<Result<_, _>>()?;
    let ideal = ring.ideal_generate(&gens);
    if ideal.len() as u64 != repr.size {
        return Err(Error::BadInput(format!(
            "ideal {} regenerates with {} elements, report claims {}",
            repr.display,
            ideal.len(),
            repr.size
        )));
    }
    Ok(ideal)
}

fn verify_incomparable(ring: &FiniteRing, repr: &IncomparableRepr) -> Result<bool, Error> {
    let ideal = rebuild_ideal(ring, &repr.ideal)?;
    let maximal = rebuild_ideal(ring, &repr.maximal)?;
    let x = rebuild_element(ring, &repr.in_ideal_not_in_square)?;
    let y = rebuild_element(ring, &repr.in_square_not_in_ideal)?;
    let w = crate::factorize::IncomparabilityWitness {
        ideal,
        maximal,
        in_i_not_m2: x,
        in_m2_not_i: y,
    };
    Ok(w.verify(ring))
}

fn ring_from_input(input: &BTreeMap<String, String>) -> Result<FiniteRing, Error> {
    let text = input
        .get("ring")
        .ok_or_else(|| Error::BadInput("report input lacks a \"ring\" entry".into()))?;
    Ok(construct(&parse_ringspec(text)?)?.ring)
}

fn finite_ideal_from_input(
    input: &BTreeMap<String, String>,
    ring_text: &str,
) -> Result<(FiniteRing, FinIdeal), Error> {
    let built = construct(&parse_ringspec(ring_text)?)?;
    let gens_text = input
        .get("ideal")
        .ok_or_else(|| Error::BadInput("report input lacks an \"ideal\" entry".into()))?;
    let gens = built.parse_gens(gens_text)?;
    let ideal = built.ring.ideal_generate(&gens);
    Ok((built.ring, ideal))
}

fn order_from_input(input: &BTreeMap<String, String>) -> Result<QuadOrder, Error> {
    let d_text = input
        .get("d")
        .ok_or_else(|| Error::BadInput("report input lacks a \"d\" entry".into()))?;
    let d: i128 = d_text
        .parse()
        .map_err(|_| Error::BadInput(format!("cannot parse d from {d_text:?}")))?;
    match input.get("basis").map(String::as_str) {
        Some("half") => QuadOrder::half_order(d),
        _ => QuadOrder::sqrt_order(d),
    }
}

fn quad_ideal_from_input(
    order: &QuadOrder,
    input: &BTreeMap<String, String>,
) -> Result<QuadIdeal, Error> {
    let text = input
        .get("ideal")
        .ok_or_else(|| Error::BadInput("report input lacks an \"ideal\" entry".into()))?;
    crate::commands::parse_quad_gens(order, text)
}

fn rebuild_quad_ideal(order: &QuadOrder, repr: &QuadIdealRepr) -> Result<QuadIdeal, Error> {
    order.ideal_from_hnf(repr.a as i128, repr.b as i128, repr.c as i128)
}

fn input_guard(report: &Report) -> u64 {
    report
        .limits
        .as_ref()
        .map(|l| l.guard)
        .unwrap_or(crate::commands::DEFAULT_GUARD)
}

/// Re-checks a report's certificate from scratch: rebuilds the ring or
/// order named in the input echo and re-establishes every claim. Returns
/// `Ok(true)` when everything holds, `Ok(false)` when the certificate
/// fails its own claims, and `Err` when the report is malformed.
pub fn reverify(report: &Report) -> Result<bool, Error> {
    if report.schema != SCHEMA_VERSION {
        return Err(Error::BadInput(format!(
            "unsupported report schema {}",
            report.schema
        )));
    }
    let Some(cert) = &report.certificate else {
        return Ok(true);
    };
    let guard = input_guard(report);
    match cert {
        Certificate::NonAbsorbingTriple { a, b, c } => {
            let ring_text = report
                .input
                .get("ring")
                .ok_or_else(|| Error::BadInput("report input lacks a \"ring\" entry".into()))?;
            let (ring, ideal) = finite_ideal_from_input(&report.input, ring_text)?;
            let (a, b, c) = (
                rebuild_element(&ring, a)?,
                rebuild_element(&ring, b)?,
                rebuild_element(&ring, c)?,
            );
            let ab = ring.mul_elem(&a, &b);
            let ac = ring.mul_elem(&a, &c);
            let bc = ring.mul_elem(&b, &c);
            let abc = ring.mul_elem(&ab, &c);
            Ok(ring.ideal_contains(&ideal, &abc)
                && !ring.ideal_contains(&ideal, &ab)
                && !ring.ideal_contains(&ideal, &ac)
                && !ring.ideal_contains(&ideal, &bc))
        }
        Certificate::PrimeSquare { .. } | Certificate::PrimePair { .. } => {
            let ring_text = report
                .input
                .get("ring")
                .ok_or_else(|| Error::BadInput("report input lacks a \"ring\" entry".into()))?;
            let (ring, ideal) = finite_ideal_from_input(&report.input, ring_text)?;
            // The structural claims are exactly what ta_structure
            // re-derives and re-checks; compare shapes.
            match (cert, ta_structure(&ring, &ideal, guard)?) {
                (
                    Certificate::PrimeSquare { prime },
                    TaStructureOutcome::Structure(TaStructure::PrimeSquare { p }),
                ) => Ok(rebuild_ideal(&ring, prime)? == p),
                (
                    Certificate::PrimePair { first, second },
                    TaStructureOutcome::Structure(TaStructure::PrimePair { p1, p2 }),
                ) => Ok(rebuild_ideal(&ring, first)? == p1 && rebuild_ideal(&ring, second)? == p2),
                _ => Ok(false),
            }
        }
        Certificate::Factorization { factors } => {
            let ring_text = report
                .input
                .get("ring")
                .ok_or_else(|| Error::BadInput("report input lacks a \"ring\" entry".into()))?;
            let (ring, ideal) = finite_ideal_from_input(&report.input, ring_text)?;
            let factors: Vec<FinIdeal> = factors
                .iter()
                .map(|f| rebuild_ideal(&ring, f))
                .collect::<Result<_, _>>()?;
            Ok(verify_factorization(&ring, &ideal, &factors, guard))
        }
        Certificate::ExhaustedSearch { ideal, .. } => {
            // The unfactorable ideal is rebuilt from the certificate's own
            // generators (a whole-ring audit names it without an input
            // echo); when the run had an explicit ideal input, it must
            // regenerate to the same ideal.
            let ring = ring_from_input(&report.input)?;
            let claimed = rebuild_ideal(&ring, ideal)?;
            if report.input.contains_key("ideal") {
                let ring_text = report.input.get("ring").unwrap();
                let (_, target) = finite_ideal_from_input(&report.input, ring_text)?;
                if claimed != target {
                    return Ok(false);
                }
            }
            // Honest re-check: run the search again.
            Ok(ta_factorization(&ring, &claimed, guard)?.is_none())
        }
        Certificate::IncomparableObstruction(repr) => {
            let ring = ring_from_input(&report.input)?;
            verify_incomparable(&ring, repr)
        }
        Certificate::TafAudit { proper_ideals } => {
            let ring = ring_from_input(&report.input)?;
            let lattice_size = enumerate_ideals(&ring, guard)?.len() as u64;
            // Count excludes the unit ideal; re-run the audit.
            Ok(lattice_size == proper_ideals + 1
                && crate::factorize::is_taf(&ring, guard)?.is_taf())
        }
        Certificate::IdealList { ideals } => {
            let ring = ring_from_input(&report.input)?;
            for info in ideals {
                let ideal = rebuild_ideal(&ring, &info.ideal)?;
                let ta = !ring.is_unit_ideal(&ideal)
                    && ta_check(&ring, &ideal, guard)?.is_none();
                if ta != info.two_absorbing
                    || ring.is_prime_ideal(&ideal) != info.prime
                    || ring.is_maximal_ideal(&ideal) != info.maximal
                {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Certificate::QuadNonAbsorbingTriple { a, b, c } => {
            let order = order_from_input(&report.input)?;
            let ideal = quad_ideal_from_input(&order, &report.input)?;
            let w = QuadTaWitness {
                a: QuadElement::new(a.x as i128, a.y as i128),
                b: QuadElement::new(b.x as i128, b.y as i128),
                c: QuadElement::new(c.x as i128, c.y as i128),
            };
            Ok(w.verify(&order, &ideal))
        }
        Certificate::QuadFactorization { factors } => {
            let order = order_from_input(&report.input)?;
            let ideal = quad_ideal_from_input(&order, &report.input)?;
            let factors: Vec<QuadIdeal> = factors
                .iter()
                .map(|f| rebuild_quad_ideal(&order, f))
                .collect::<Result<_, _>>()?;
            Ok(verify_factorization_quad(&order, &ideal, &factors, guard))
        }
        Certificate::QuadExhaustedSearch { ideal, divisors_searched } => {
            let order = order_from_input(&report.input)?;
            let target = quad_ideal_from_input(&order, &report.input)?;
            let claimed = rebuild_quad_ideal(&order, ideal)?;
            let proper_divisors = ideals_above_quad(&order, &target, guard)?
                .into_iter()
                .filter(|j| !j.is_unit())
                .count() as u64;
            Ok(claimed == target
                && proper_divisors == *divisors_searched
                && ta_factorization_quad(&order, &target, guard)?.is_none())
        }
        Certificate::InertTwo { minimal_poly_constant, quotient_order } => {
            let d = report
                .input
                .get("d")
                .and_then(|t| t.parse::<i128>().ok())
                .ok_or_else(|| Error::BadInput("report input lacks a parseable \"d\"".into()))?;
            if i128::from(*minimal_poly_constant) != (1 - d) / 4
                || minimal_poly_constant.rem_euclid(2) != 1
            {
                return Ok(false);
            }
            let maximal = QuadOrder::half_order(d)?;
            let two = maximal.principal(&QuadElement::new(2, 0))?;
            let (q, _) = quotient_finite(&maximal, &two, guard.max(4))?;
            Ok(q.size() == *quotient_order && q.is_maximal_ideal(&q.zero_ideal()))
        }
        Certificate::NonTafImage { image, relation: _, obstruction } => {
            let d = report
                .input
                .get("d")
                .and_then(|t| t.parse::<i128>().ok())
                .ok_or_else(|| Error::BadInput("report input lacks a parseable \"d\"".into()))?;
            let ring = construct(&parse_ringspec(image)?)?.ring;
            // The map sending the square root to 1+x must be well
            // defined: (1+x)² = d·1 in the image.
            let u = ring.elem(&[1, 1]);
            let relation_holds =
                ring.mul_elem(&u, &u) == ring.from_int((d.rem_euclid(8)) as i64);
            Ok(relation_holds && verify_incomparable(&ring, obstruction)?)
        }
        Certificate::ClassificationTable { rows } => {
            for row in rows {
                let c = classify_taf(row.d as i128)?;
                let kind_matches = match &c.evidence {
                    TafEvidence::InertTwo { .. } => row.certificate_kind == "inert-two",
                    TafEvidence::NonTafImage { .. } => row.certificate_kind == "non-taf-image",
                };
                if c.is_taf != row.taf
                    || c.residue_mod_8 != row.residue_mod_8 as i128
                    || !kind_matches
                    || !c.verify()
                {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        // A selftest summary reports a past run; there is nothing to
        // re-establish beyond its own consistency.
        Certificate::SelftestSummary { criteria } => Ok(criteria
            .iter()
            .all(|c| matches!(c.status.as_str(), "pass" | "fail" | "skipped"))),
    }
}

// ---------------------------------------------------------------------
// Text rendering
// ---------------------------------------------------------------------

/// Human-readable rendering with the same verdict and certificate
/// content as the JSON form.
pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let mut line = |s: String| {
        out.push_str(&s);
        out.push('\n');
    };
    line(format!("command:  {}", report.command));
    for (k, v) in &report.input {
        line(format!("{k}:{}{v}", " ".repeat(9usize.saturating_sub(k.len()).max(1))));
    }
    line(format!("verdict:  {}", report.verdict));
    if let Some(cert) = &report.certificate {
        line(format!("certificate: {}", cert.kind()));
        match cert {
            Certificate::NonAbsorbingTriple { a, b, c } => {
                line(format!(
                    "  triple: a = {}, b = {}, c = {}  (abc inside, all pair products outside)",
                    a.display, b.display, c.display
                ));
            }
            Certificate::PrimeSquare { prime } => {
                line(format!(
                    "  radical is the prime P = {} and P^2 lies inside the ideal",
                    prime.display
                ));
            }
            Certificate::PrimePair { first, second } => {
                line(format!(
                    "  radical is P1 ∩ P2 for incomparable primes P1 = {}, P2 = {}; P1·P2 inside",
                    first.display, second.display
                ));
            }
            Certificate::Factorization { factors } => {
                let list: Vec<&str> = factors.iter().map(|f| f.display.as_str()).collect();
                line(format!("  factors: {}", list.join(" * ")));
            }
            Certificate::ExhaustedSearch { ideal, divisors_searched } => {
                line(format!(
                    "  no factorization of {}; searched all {} proper divisors",
                    ideal.display, divisors_searched
                ));
            }
            Certificate::IncomparableObstruction(o) => {
                render_incomparable(&mut line, o);
            }
            Certificate::TafAudit { proper_ideals } => {
                line(format!("  all {proper_ideals} proper ideals factored"));
            }
            Certificate::IdealList { ideals } => {
                for info in ideals {
                    let mut flags = Vec::new();
                    if info.two_absorbing {
                        flags.push("two-absorbing");
                    }
                    if info.prime {
                        flags.push("prime");
                    }
                    if info.maximal {
                        flags.push("maximal");
                    }
                    line(format!(
                        "  {} size {} {}",
                        info.ideal.display,
                        info.ideal.size,
                        if flags.is_empty() {
                            String::new()
                        } else {
                            format!("[{}]", flags.join(", "))
                        }
                    ));
                }
            }
            Certificate::QuadNonAbsorbingTriple { a, b, c } => {
                line(format!(
                    "  triple: a = {}, b = {}, c = {}  (abc inside, all pair products outside)",
                    a.display, b.display, c.display
                ));
            }
            Certificate::QuadFactorization { factors } => {
                let list: Vec<&str> = factors.iter().map(|f| f.display.as_str()).collect();
                line(format!("  factors: {}", list.join(" * ")));
            }
            Certificate::QuadExhaustedSearch { ideal, divisors_searched } => {
                line(format!(
                    "  no factorization of {}; searched all {} proper divisors",
                    ideal.display, divisors_searched
                ));
            }
            Certificate::InertTwo { minimal_poly_constant, quotient_order } => {
                line(format!(
                    "  X^2 - X + {minimal_poly_constant} is irreducible mod 2; quotient of the \
                     maximal order by (2) is a field of order {quotient_order}"
                ));
            }
            Certificate::NonTafImage { image, relation, obstruction } => {
                line(format!("  surjects onto {image} ({relation})"));
                render_incomparable(&mut line, obstruction);
            }
            Certificate::ClassificationTable { rows } => {
                line(format!("  {:>6}  {:>7}  {:<8} certificate", "d", "d mod 8", "verdict"));
                for r in rows {
                    line(format!(
                        "  {:>6}  {:>7}  {:<8} {}",
                        r.d,
                        r.residue_mod_8,
                        if r.taf { "factors" } else { "fails" },
                        r.certificate_kind
                    ));
                }
            }
            Certificate::SelftestSummary { criteria } => {
                for c in criteria {
                    line(format!(
                        "  [{}] criterion {:>2} {:<42} {:>4} ms{}",
                        match c.status.as_str() {
                            "pass" => "PASS",
                            "fail" => "FAIL",
                            _ => "SKIP",
                        },
                        c.id,
                        c.name,
                        c.millis,
                        c.detail
                            .as_ref()
                            .map(|d| format!("  ({d})"))
                            .unwrap_or_default()
                    ));
                }
            }
        }
    }
    line(format!("timing:   {} ms", report.timing_ms));
    if let Some(l) = &report.limits {
        line(format!("guard:    {}", l.guard));
    }
    out
}

fn render_incomparable(line: &mut impl FnMut(String), o: &IncomparableRepr) {
    line(format!(
        "  obstruction: I = {} has radical M = {} maximal, but I and M^2 are incomparable:",
        o.ideal.display, o.maximal.display
    ));
    line(format!(
        "    {} lies in I but not in M^2; {} lies in M^2 but not in I",
        o.in_ideal_not_in_square.display, o.in_square_not_in_ideal.display
    ));
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo_report() -> Report {
        // Build a genuine witness in Z/8 against the zero ideal.
        let built = construct(&parse_ringspec("Z/8").unwrap()).unwrap();
        let ring = &built.ring;
        let zero = ring.zero_ideal();
        let w = ta_check(ring, &zero, 4096).unwrap().unwrap();
        let (a, b, c) = w.elements(ring);
        Report {
            schema: SCHEMA_VERSION,
            command: "check-ta".into(),
            input: BTreeMap::from([
                ("ring".to_string(), "Z/8".to_string()),
                ("ideal".to_string(), "0".to_string()),
            ]),
            verdict: "not-two-absorbing".into(),
            certificate: Some(Certificate::NonAbsorbingTriple {
                a: elem_repr(ring, &a),
                b: elem_repr(ring, &b),
                c: elem_repr(ring, &c),
            }),
            timing_ms: 0,
            limits: Some(Limits { guard: 4096 }),
        }
    }

    #[test]
    fn json_round_trip_preserves_the_certificate() {
        let report = demo_report();
        let json = serde_json::to_string_pretty(&report).unwrap();
        assert!(json.contains("\"kind\": \"non-absorbing-triple\""));
        assert!(json.contains("\"schema\": 1"));
        let back: Report = serde_json::from_str(&json).unwrap();
        assert_eq!(back.verdict, "not-two-absorbing");
        assert!(reverify(&back).unwrap());
    }

    #[test]
    fn tampered_witness_fails_reverification() {
        let mut report = demo_report();
        if let Some(Certificate::NonAbsorbingTriple { a, .. }) = &mut report.certificate {
            a.coeffs = vec![1]; // 1·2·2 = 4 ∉ (0), triple no longer refutes
        }
        assert!(!reverify(&report).unwrap());
    }

    #[test]
    fn tampered_factorization_fails_reverification() {
        let built = construct(&parse_ringspec("Z/8").unwrap()).unwrap();
        let ring = built.ring.clone();
        let zero = ring.zero_ideal();
        let factors = ta_factorization(&ring, &zero, 4096).unwrap().unwrap();
        let reprs: Vec<IdealRepr> = factors.iter().map(|f| ideal_repr(&ring, f)).collect();
        let mut report = Report {
            schema: SCHEMA_VERSION,
            command: "factor".into(),
            input: BTreeMap::from([
                ("ring".to_string(), "Z/8".to_string()),
                ("ideal".to_string(), "0".to_string()),
            ]),
            verdict: "factorization-found".into(),
            certificate: Some(Certificate::Factorization { factors: reprs }),
            timing_ms: 0,
            limits: Some(Limits { guard: 4096 }),
        };
        assert!(reverify(&report).unwrap());
        // Drop one factor: the product no longer reaches (0).
        if let Some(Certificate::Factorization { factors }) = &mut report.certificate {
            factors.pop();
        }
        assert!(!reverify(&report).unwrap());
    }

    #[test]
    fn unsupported_schema_is_rejected() {
        let mut report = demo_report();
        report.schema = 2;
        assert!(reverify(&report).is_err());
    }

    #[test]
    fn text_rendering_carries_the_verdict_and_certificate() {
        let report = demo_report();
        let text = render_text(&report);
        assert!(text.contains("verdict:  not-two-absorbing"));
        assert!(text.contains("certificate: non-absorbing-triple"));
        assert!(text.contains("a = 2, b = 2, c = 2"));
    }
}
