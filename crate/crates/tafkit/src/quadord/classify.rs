//! Complete decision procedure for when `Z[√d]` (square-free `d ≡ 1
//! mod 4`) has the two-absorbing factorization property, with
//! machine-checkable evidence on both sides.
//!
//! The split is by `d` modulo 8:
//!
//! * `d ≡ 5 (mod 8)`: every proper ideal factors. The evidence is that
//!   `2` stays prime in the maximal order `Z[(1+√d)/2]`: the minimal
//!   polynomial `X² − X + (1−d)/4` of the half generator has odd
//!   constant term, so it is irreducible mod 2 and the quotient by `2`
//!   is the field with four elements. Both facts are re-checked by the
//!   finite-ring engine, not just asserted from the congruence.
//!
//! * `d ≡ 1 (mod 8)`: the property fails. Here `(1+x)² = d·1` holds in
//!   the sixteen-element ring `Z/8[x]/(x², 2x)`, so sending `√d ↦ 1+x`
//!   defines a surjective homomorphism from `Z[√d]` onto that ring. The
//!   target carries an incomparability obstruction (an ideal whose
//!   radical is maximal yet incomparable with the square of that
//!   maximal ideal), hence is not a factorization ring — and the
//!   property passes to every homomorphic image, so `Z[√d]` cannot have
//!   it either. The evidence bundles the image ring, the verified
//!   relation, and the obstruction witness.

use crate::factorize::{is_taf, IncomparabilityWitness, TafVerdict};
use crate::finring::{construct, FiniteRing};
use crate::quadord::{quotient_finite, QuadElement, QuadOrder};
use crate::ringspec::parse_ringspec;
use crate::Error;

/// Internal rings here have at most 16 elements and 9 ideals; the bound
/// is structural, not input-dependent.
const CLASSIFY_GUARD: u64 = 4096;

/// Presentation of the smallest ring without the factorization property;
/// the negative branch surjects onto it.
pub const OBSTRUCTION_RING: &str = "Z/8[x]/(x^2,2x)";

/// Evidence behind a [`Classification`] verdict.
#[derive(Debug)]
pub enum TafEvidence {
    /// `2` is inert in the maximal order: the minimal polynomial
    /// `X² − X + c` of `(1+√d)/2` has odd `c = (1−d)/4`, and the
    /// quotient of the maximal order by `(2)` is a field of the stated
    /// order (always 4).
    InertTwo { minimal_poly_constant: i128, quotient_order: u64 },
    /// `Z[√d]` surjects onto `image` (`√d ↦ 1+x`, well-defined because
    /// `(1+x)² = d·1` there), and `image` carries an incomparability
    /// obstruction, so neither ring has the factorization property.
    NonTafImage {
        image: FiniteRing,
        witness: IncomparabilityWitness,
    },
}

/// Verdict for one order `Z[√d]`, with re-checkable evidence.
#[derive(Debug)]
pub struct Classification {
    pub d: i128,
    pub residue_mod_8: i128,
    /// Whether every proper ideal of `Z[√d]` is a product of
    /// two-absorbing ideals.
    pub is_taf: bool,
    pub evidence: TafEvidence,
}

impl Classification {
    /// Re-verifies the evidence from scratch.
    pub fn verify(&self) -> bool {
        match &self.evidence {
            TafEvidence::InertTwo { minimal_poly_constant, quotient_order } => {
                self.is_taf
                    && *minimal_poly_constant == (1 - self.d) / 4
                    && minimal_poly_constant.rem_euclid(2) == 1
                    && check_two_inert(self.d)
                        .map(|order| order == *quotient_order)
                        .unwrap_or(false)
            }
            TafEvidence::NonTafImage { image, witness } => {
                !self.is_taf
                    && check_image_relation(image, self.d)
                    && witness.verify(image)
            }
        }
    }
}

/// Checks that the quotient of the maximal order by `(2)` is a field and
/// returns its size.
fn check_two_inert(d: i128) -> Result<u64, Error> {
    let maximal = QuadOrder::half_order(d)?;
    let two = maximal.principal(&QuadElement::new(2, 0))?;
    let (q, _) = quotient_finite(&maximal, &two, CLASSIFY_GUARD)?;
    if q.is_maximal_ideal(&q.zero_ideal()) {
        Ok(q.size())
    } else {
        Err(Error::StructureViolation(format!(
            "quotient by (2) is not a field for d = {d}"
        )))
    }
}

/// `(1+x)² = d·1` in the obstruction ring (basis `{1, x}`).
fn check_image_relation(image: &FiniteRing, d: i128) -> bool {
    let u = image.elem(&[1, 1]);
    let sq = image.mul_elem(&u, &u);
    sq == image.from_int(d.rem_euclid(8) as i64)
}

/// Decides whether `Z[√d]` has the two-absorbing factorization property.
/// Requires square-free `d ∉ {0, 1}` with `d ≡ 1 (mod 4)`; other inputs
/// are outside the decided family.
pub fn classify_taf(d: i128) -> Result<Classification, Error> {
    // Validates square-freeness (and d ∉ {0,1}) as a side effect.
    QuadOrder::sqrt_order(d)?;
    if d.rem_euclid(4) != 1 {
        return Err(Error::OutsideClassificationScope(d));
    }
    let residue = d.rem_euclid(8);
    if residue == 5 {
        let c = (1 - d) / 4;
        if c.rem_euclid(2) != 1 {
            return Err(Error::StructureViolation(format!(
                "d = {d}: residue 5 mod 8 must make (1-d)/4 odd"
            )));
        }
        let quotient_order = check_two_inert(d)?;
        if quotient_order != 4 {
            return Err(Error::StructureViolation(format!(
                "d = {d}: quotient by (2) has order {quotient_order}, expected 4"
            )));
        }
        Ok(Classification {
            d,
            residue_mod_8: residue,
            is_taf: true,
            evidence: TafEvidence::InertTwo {
                minimal_poly_constant: c,
                quotient_order,
            },
        })
    } else {
        debug_assert_eq!(residue, 1);
        let image = construct(&parse_ringspec(OBSTRUCTION_RING)?)?.ring;
        if !check_image_relation(&image, d) {
            return Err(Error::StructureViolation(format!(
                "d = {d}: (1+x)^2 = d fails in the obstruction ring"
            )));
        }
        match is_taf(&image, CLASSIFY_GUARD)? {
            TafVerdict::NotTafIncomparable(witness) => Ok(Classification {
                d,
                residue_mod_8: residue,
                is_taf: false,
                evidence: TafEvidence::NonTafImage { image, witness },
            }),
            other => Err(Error::StructureViolation(format!(
                "obstruction ring audit returned {other:?}, expected an \
                 incomparability witness"
            ))),
        }
    }
}

/// Classifies every eligible `d` in `[d_min, d_max]` (square-free,
/// `≡ 1 mod 4`, not 0 or 1); ineligible values are skipped.
pub fn classify_range(d_min: i128, d_max: i128) -> Result<Vec<Classification>, Error> {
    let mut out = Vec::new();
    for d in d_min..=d_max {
        match classify_taf(d) {
            Ok(c) => out.push(c),
            Err(Error::NotSquareFree(_)) | Err(Error::OutsideClassificationScope(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_five_orders_have_the_property() {
        for d in [-19, -11, -3, 5, 13, 29] {
            let c = classify_taf(d).unwrap();
            assert!(c.is_taf, "d = {d}");
            assert_eq!(c.residue_mod_8, 5);
            assert!(c.verify(), "d = {d}");
            match c.evidence {
                TafEvidence::InertTwo { minimal_poly_constant, quotient_order } => {
                    assert_eq!(minimal_poly_constant, (1 - d) / 4);
                    assert_eq!(minimal_poly_constant.rem_euclid(2), 1);
                    assert_eq!(quotient_order, 4);
                }
                _ => panic!("expected inert-two evidence"),
            }
        }
    }

    #[test]
    fn residue_one_orders_lack_the_property() {
        for d in [-23, -15, -7, 17, 33] {
            let c = classify_taf(d).unwrap();
            assert!(!c.is_taf, "d = {d}");
            assert_eq!(c.residue_mod_8, 1);
            assert!(c.verify(), "d = {d}");
            match &c.evidence {
                TafEvidence::NonTafImage { image, witness } => {
                    assert_eq!(image.size(), 16);
                    assert!(witness.verify(image));
                }
                _ => panic!("expected image evidence"),
            }
        }
    }

    #[test]
    fn minimal_poly_constant_for_minus_eleven() {
        let c = classify_taf(-11).unwrap();
        match c.evidence {
            TafEvidence::InertTwo { minimal_poly_constant, .. } => {
                assert_eq!(minimal_poly_constant, 3); // X² - X + 3
            }
            _ => panic!("expected inert-two evidence"),
        }
    }

    #[test]
    fn scope_is_enforced() {
        assert!(matches!(classify_taf(3), Err(Error::OutsideClassificationScope(3))));
        assert!(matches!(classify_taf(-2), Err(Error::OutsideClassificationScope(-2))));
        assert!(matches!(classify_taf(12), Err(Error::NotSquareFree(12))));
        assert!(matches!(classify_taf(9), Err(Error::NotSquareFree(9))));
        assert!(matches!(classify_taf(0), Err(Error::NotSquareFree(0))));
        assert!(matches!(classify_taf(1), Err(Error::NotSquareFree(1))));
        // 25 ≡ 1 (mod 8) but is not square-free.
        assert!(matches!(classify_taf(25), Err(Error::NotSquareFree(25))));
    }

    #[test]
    fn range_scan_agrees_with_the_residue_rule() {
        let got: Vec<(i128, bool)> = classify_range(-20, 20)
            .unwrap()
            .into_iter()
            .map(|c| (c.d, c.is_taf))
            .collect();
        let want = vec![
            (-19, true),
            (-15, false),
            (-11, true),
            (-7, false),
            (-3, true),
            (5, true),
            (13, true),
            (17, false),
        ];
        assert_eq!(got, want);
    }

    #[test]
    fn image_relation_is_checked_against_d() {
        let image = construct(&parse_ringspec(OBSTRUCTION_RING).unwrap())
            .unwrap()
            .ring;
        assert!(check_image_relation(&image, -7));
        assert!(check_image_relation(&image, 17));
        // The relation needs d ≡ 1 (mod 8): (1+x)² = 1 there.
        assert!(!check_image_relation(&image, 5));
    }
}
