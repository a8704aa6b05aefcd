//! Truncated geometric 4-manifold pieces and their signature calculus.
//!
//! A piece records its Euler characteristic directly; the L2-signature is
//! `orientation · χ/3` for complex-hyperbolic pieces (Hirzebruch
//! proportionality) and zero for every other geometry, whose self-dual and
//! anti-self-dual Weyl norms agree. The topological signature of the compact
//! truncation adds one boundary defect per cusp.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flat_catalog::{BoundaryClass, FlatConvention, FlatLetter, Sign};
use crate::rational::{self, int, rat, Rational};
use crate::sl2_monodromy::{classify_parabolic, PuncturedSurfaceBundle};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryTag {
    RealHyperbolic,
    ComplexHyperbolic,
    F4,
    #[serde(rename = "h3xe1")]
    H3xE1,
    #[serde(rename = "h2xe2")]
    H2xE2,
    #[serde(rename = "h2xh2")]
    H2xH2,
    #[serde(rename = "sltilde_x_e1")]
    SLtildexE1,
}

impl GeometryTag {
    pub const ALL: [GeometryTag; 7] = [
        GeometryTag::RealHyperbolic,
        GeometryTag::ComplexHyperbolic,
        GeometryTag::F4,
        GeometryTag::H3xE1,
        GeometryTag::H2xE2,
        GeometryTag::H2xH2,
        GeometryTag::SLtildexE1,
    ];

    pub fn is_product(self) -> bool {
        matches!(self, GeometryTag::H3xE1 | GeometryTag::H2xE2 | GeometryTag::H2xH2 | GeometryTag::SLtildexE1)
    }

    pub fn name(self) -> &'static str {
        match self {
            GeometryTag::RealHyperbolic => "H4",
            GeometryTag::ComplexHyperbolic => "H2(C)",
            GeometryTag::F4 => "F4",
            GeometryTag::H3xE1 => "H3xE1",
            GeometryTag::H2xE2 => "H2xE2",
            GeometryTag::H2xH2 => "H2xH2",
            GeometryTag::SLtildexE1 => "SLxE1",
        }
    }
}

impl fmt::Display for GeometryTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Piece {
    pub geometry: GeometryTag,
    /// For complex-hyperbolic pieces `+1` is the complex orientation.
    pub orientation: Sign,
    pub chi: i64,
    pub cusps: Vec<BoundaryClass>,
    #[serde(default)]
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PieceViolation {
    NoCusps,
    NegativeChi(i64),
    ChiTooSmall { geometry: GeometryTag, chi: i64 },
    ChiMustVanish { geometry: GeometryTag, chi: i64 },
    CuspNotAdmissible { index: usize, cusp: BoundaryClass, geometry: GeometryTag },
    ComplexOrientationSign { index: usize, cusp: BoundaryClass, orientation: Sign },
    ChiModThree { chi: i64, cusp_sum: i64 },
    NonIntegralSignature(Rational),
}

impl fmt::Display for PieceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PieceViolation::NoCusps => write!(f, "piece has no cusps"),
            PieceViolation::NegativeChi(chi) => write!(f, "negative Euler characteristic {chi}"),
            PieceViolation::ChiTooSmall { geometry, chi } => {
                write!(f, "{geometry} piece needs chi >= 1, got {chi}")
            }
            PieceViolation::ChiMustVanish { geometry, chi } => write!(f, "{geometry} piece needs chi = 0, got {chi}"),
            PieceViolation::CuspNotAdmissible { index, cusp, geometry } => {
                write!(f, "cusp {index} ({cusp}) is not a cusp type of {geometry} pieces")
            }
            PieceViolation::ComplexOrientationSign { index, cusp, orientation } => {
                write!(f, "complex orientation sign: cusp {index} ({cusp}) must have Euler sign {orientation}")
            }
            PieceViolation::ChiModThree { chi, cusp_sum } => {
                write!(f, "chi ≢ Σn (mod 3): chi = {chi}, Σ|n| = {cusp_sum}")
            }
            PieceViolation::NonIntegralSignature(v) => {
                write!(f, "signature {} of the truncated piece is not an integer", rational::display(v))
            }
        }
    }
}

impl Piece {
    pub fn new(
        geometry: GeometryTag,
        orientation: Sign,
        chi: i64,
        cusps: Vec<BoundaryClass>,
        label: impl Into<String>,
    ) -> Piece {
        Piece {
            geometry,
            orientation,
            chi,
            cusps: cusps.into_iter().map(BoundaryClass::normalized).collect(),
            label: label.into(),
        }
    }

    pub fn sigma_l2(&self) -> Rational {
        match self.geometry {
            GeometryTag::ComplexHyperbolic => rat(self.orientation.to_i64() * self.chi, 3),
            _ => int(0),
        }
    }

    pub fn sigma_top(&self) -> Result<Rational> {
        self.sigma_top_with(FlatConvention::Reference)
    }

    pub fn sigma_top_with(&self, convention: FlatConvention) -> Result<Rational> {
        self.cusps.iter().try_fold(self.sigma_l2(), |acc, cusp| {
            cusp.defect_with(convention)
                .map(|d| acc + d)
                .map_err(|e| Error::InvalidPiece { label: self.label.clone(), reason: e.to_string() })
        })
    }

    /// Every broken invariant; empty when the piece is valid.
    pub fn validate(&self) -> Vec<PieceViolation> {
        let mut out = Vec::new();
        if self.cusps.is_empty() {
            out.push(PieceViolation::NoCusps);
        }
        if self.chi < 0 {
            out.push(PieceViolation::NegativeChi(self.chi));
        }
        match self.geometry {
            GeometryTag::RealHyperbolic | GeometryTag::ComplexHyperbolic if self.chi < 1 && self.chi >= 0 => {
                out.push(PieceViolation::ChiTooSmall { geometry: self.geometry, chi: self.chi });
            }
            GeometryTag::F4 | GeometryTag::H3xE1 | GeometryTag::H2xE2 | GeometryTag::SLtildexE1 if self.chi != 0 => {
                out.push(PieceViolation::ChiMustVanish { geometry: self.geometry, chi: self.chi });
            }
            _ => {}
        }
        for (index, cusp) in self.cusps.iter().enumerate() {
            if !cusp_admissible(self.geometry, cusp) {
                out.push(PieceViolation::CuspNotAdmissible { index, cusp: *cusp, geometry: self.geometry });
                continue;
            }
            if self.geometry == GeometryTag::ComplexHyperbolic && cusp.nil_orientation() != Some(self.orientation) {
                out.push(PieceViolation::ComplexOrientationSign { index, cusp: *cusp, orientation: self.orientation });
            }
        }
        if !out.is_empty() {
            return out;
        }
        let has_klein = self.cusps.iter().any(|c| matches!(c, BoundaryClass::NilKlein { .. }));
        if self.geometry == GeometryTag::ComplexHyperbolic {
            if !has_klein {
                let cusp_sum: i64 = self
                    .cusps
                    .iter()
                    .map(|c| match c {
                        BoundaryClass::NilTorus { euler } => euler.abs(),
                        _ => 0,
                    })
                    .sum();
                if (self.chi - cusp_sum).rem_euclid(3) != 0 {
                    out.push(PieceViolation::ChiModThree { chi: self.chi, cusp_sum });
                }
            }
        } else if let Ok(sigma) = self.sigma_top() {
            if !sigma.is_integer() {
                out.push(PieceViolation::NonIntegralSignature(sigma));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    /// Same piece with the opposite orientation; every cusp is reversed.
    pub fn reverse_orientation(&self) -> Piece {
        Piece {
            geometry: self.geometry,
            orientation: -self.orientation,
            chi: self.chi,
            cusps: self.cusps.iter().map(|c| c.reverse()).collect(),
            label: self.label.clone(),
        }
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Piece {
        self.label = label.into();
        self
    }
}

fn cusp_admissible(geometry: GeometryTag, cusp: &BoundaryClass) -> bool {
    match geometry {
        GeometryTag::ComplexHyperbolic => cusp.is_nil(),
        GeometryTag::F4 => match cusp {
            BoundaryClass::Flat { letter, .. } => matches!(letter, FlatLetter::A | FlatLetter::B),
            _ => true,
        },
        GeometryTag::RealHyperbolic
        | GeometryTag::H3xE1
        | GeometryTag::H2xE2
        | GeometryTag::H2xH2
        | GeometryTag::SLtildexE1 => cusp.is_flat(),
    }
}

/// F4 piece over the base of `bundle`, one cusp per boundary: `+(1 k; 0 1)`
/// gives a circle bundle over the torus with Euler number `k`, `-(1 k; 0 1)`
/// a Klein-base bundle (the flat manifold B when `k = 0`).
pub fn f4_piece_from_bundle(bundle: &PuncturedSurfaceBundle, label: impl Into<String>) -> Result<Piece> {
    let label = label.into();
    let mut cusps = Vec::with_capacity(bundle.boundary_monodromies().len());
    for monodromy in bundle.boundary_monodromies() {
        let class = classify_parabolic(monodromy).map_err(|e| Error::InvalidPiece {
            label: label.clone(),
            reason: format!("boundary is not infranil: {e}"),
        })?;
        let k = class.k_i64()?;
        cusps.push(match (class.sign, k) {
            (Sign::Plus, k) => BoundaryClass::nil_torus(k),
            (Sign::Minus, 0) => BoundaryClass::flat(FlatLetter::B, Sign::Plus),
            (Sign::Minus, k) => BoundaryClass::nil_klein(k, Sign::Plus),
        });
    }
    Ok(Piece::new(GeometryTag::F4, Sign::Plus, 0, cusps, label))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2_monodromy::{square_cover, x0_bundle, x0_prime_bundle, x_prime_bundle, SL2Matrix};

    fn complex(chi: i64, eulers: &[i64]) -> Piece {
        let orientation = Sign::of(eulers.first().copied().unwrap_or(1));
        Piece::new(
            GeometryTag::ComplexHyperbolic,
            orientation,
            chi,
            eulers.iter().map(|&e| BoundaryClass::nil_torus(e)).collect(),
            "test",
        )
    }

    #[test]
    fn h12_signatures() {
        let h12 = complex(12, &[12; 4]);
        assert!(h12.is_valid());
        assert_eq!(h12.sigma_l2(), int(4));
        assert_eq!(h12.reverse_orientation().sigma_l2(), int(-4));
        assert_eq!(h12.sigma_top().unwrap(), int(-8));
        // σ(X) + b with σ(X) = (χ + D²)/3
        let compact = rat(12 - 4 * 12, 3);
        assert_eq!(compact + int(4), int(-8));
        assert_eq!(h12.reverse_orientation().sigma_top().unwrap(), int(8));
    }

    #[test]
    fn real_hyperbolic_has_no_l2_signature() {
        let p = Piece::new(
            GeometryTag::RealHyperbolic,
            Sign::Plus,
            2,
            vec![
                BoundaryClass::flat(FlatLetter::C, Sign::Plus),
                BoundaryClass::flat(FlatLetter::C, Sign::Plus),
                BoundaryClass::flat(FlatLetter::E, Sign::Minus),
            ],
            "Y",
        );
        assert_eq!(p.sigma_l2(), int(0));
        assert_eq!(p.sigma_top().unwrap(), rat(-4, 3) + rat(4, 3));
        assert!(p.is_valid());
    }

    #[test]
    fn hirzebruch_two_piece() {
        let y2 = complex(128, &[2; 64]);
        assert!(y2.is_valid());
        assert_eq!(y2.sigma_top().unwrap(), int(64));
    }

    #[test]
    fn reversed_x_piece() {
        let x = f4_piece_from_bundle(&square_cover(&x0_bundle()).unwrap(), "X").unwrap();
        assert_eq!(x.cusps, vec![BoundaryClass::nil_torus(12); 2]);
        let xbar = x.reverse_orientation();
        assert!(xbar.is_valid());
        assert_eq!(xbar.sigma_top().unwrap(), int(6));
    }

    #[test]
    fn x0_has_klein_cusp() {
        let x0 = f4_piece_from_bundle(&x0_bundle(), "X0").unwrap();
        assert_eq!(x0.cusps, vec![BoundaryClass::nil_klein(6, Sign::Plus)]);
        assert!(x0.is_valid());
        assert!(x0.sigma_top().is_err());
    }

    #[test]
    fn x_prime_piece_cusps() {
        let xp = f4_piece_from_bundle(&x_prime_bundle(), "X'").unwrap();
        let mut ks: Vec<i64> = xp
            .cusps
            .iter()
            .map(|c| match c {
                BoundaryClass::NilTorus { euler } => euler.abs(),
                _ => panic!("unexpected cusp {c}"),
            })
            .collect();
        ks.sort();
        assert_eq!(ks, vec![4, 4, 4, 4, 6, 6]);
        assert_eq!(xp.sigma_top().unwrap(), int(2));
        let from_pants = f4_piece_from_bundle(&square_cover(&x0_prime_bundle()).unwrap(), "cover").unwrap();
        assert_eq!(from_pants.cusps.len(), 6);
    }

    #[test]
    fn non_parabolic_boundary_rejected() {
        let hyperbolic = SL2Matrix::from_entries(2, 1, 1, 1);
        let bundle =
            PuncturedSurfaceBundle::new(0, vec![], vec![hyperbolic.clone(), hyperbolic.clone(), hyperbolic]).unwrap();
        assert!(matches!(f4_piece_from_bundle(&bundle, "bad"), Err(Error::InvalidPiece { .. })));
    }

    #[test]
    fn minus_identity_boundary_is_flat_b() {
        let minus = SL2Matrix::from_entries(-1, 0, 0, -1);
        let bundle =
            PuncturedSurfaceBundle::new(0, vec![], vec![minus.clone(), minus.clone(), SL2Matrix::identity()]).unwrap();
        let p = f4_piece_from_bundle(&bundle, "flat").unwrap();
        assert_eq!(p.cusps[0], BoundaryClass::flat(FlatLetter::B, Sign::Plus));
        assert_eq!(p.cusps[2], BoundaryClass::flat(FlatLetter::A, Sign::Plus));
        assert!(p.is_valid());
    }

    #[test]
    fn validate_mod_three() {
        let p = complex(5, &[4]);
        assert_eq!(p.validate(), vec![PieceViolation::ChiModThree { chi: 5, cusp_sum: 4 }]);
        assert!(p.validate()[0].to_string().contains("chi ≢ Σn (mod 3)"));
    }

    #[test]
    fn validate_orientation_sign() {
        let p = Piece::new(GeometryTag::ComplexHyperbolic, Sign::Plus, 3, vec![BoundaryClass::nil_torus(-3)], "p");
        let v = p.validate();
        assert!(matches!(v[0], PieceViolation::ComplexOrientationSign { index: 0, .. }));
        assert!(v[0].to_string().contains("orientation sign"));
    }

    #[test]
    fn validate_f4_and_misc() {
        let f4 = Piece::new(
            GeometryTag::F4,
            Sign::Plus,
            0,
            vec![BoundaryClass::nil_torus(3), BoundaryClass::nil_torus(-3)],
            "f",
        );
        assert!(f4.validate().is_empty());
        let bad_f4 =
            Piece::new(GeometryTag::F4, Sign::Plus, 1, vec![BoundaryClass::flat(FlatLetter::C, Sign::Plus)], "f");
        let v = bad_f4.validate();
        assert!(v.contains(&PieceViolation::ChiMustVanish { geometry: GeometryTag::F4, chi: 1 }));
        assert!(v.iter().any(|x| matches!(x, PieceViolation::CuspNotAdmissible { .. })));
        let empty = Piece::new(GeometryTag::H2xE2, Sign::Plus, 0, vec![], "e");
        assert_eq!(empty.validate(), vec![PieceViolation::NoCusps]);
        let real_nil = Piece::new(GeometryTag::RealHyperbolic, Sign::Plus, 0, vec![BoundaryClass::nil_torus(2)], "r");
        let v = real_nil.validate();
        assert!(v.iter().any(|x| matches!(x, PieceViolation::ChiTooSmall { .. })));
        assert!(v.iter().any(|x| matches!(x, PieceViolation::CuspNotAdmissible { .. })));
        let fractional = Piece::new(
            GeometryTag::RealHyperbolic,
            Sign::Plus,
            1,
            vec![BoundaryClass::flat(FlatLetter::C, Sign::Plus)],
            "r",
        );
        assert_eq!(fractional.validate(), vec![PieceViolation::NonIntegralSignature(rat(-2, 3))]);
    }

    #[test]
    fn double_reversal_is_identity() {
        let p = complex(12, &[12; 4]);
        assert_eq!(p.reverse_orientation().reverse_orientation(), p);
        let rev = p.reverse_orientation();
        assert_eq!(rev.cusps, vec![BoundaryClass::nil_torus(-12); 4]);
        assert_eq!(rev.orientation, Sign::Minus);
        assert!(rev.is_valid());
    }

    #[test]
    fn json_schema_shape() {
        let text = r#"{"geometry":"complex_hyperbolic","orientation":1,"chi":12,"cusps":[{"nil_torus":{"euler":12}},{"nil_torus":{"euler":12}},{"nil_torus":{"euler":12}},{"nil_torus":{"euler":12}}],"label":"H12"}"#;
        let p: Piece = serde_json::from_str(text).unwrap();
        assert_eq!(p, complex(12, &[12; 4]).with_label("H12"));
        assert_eq!(serde_json::to_string(&p).unwrap(), text);
        for g in GeometryTag::ALL {
            let s = serde_json::to_string(&g).unwrap();
            assert_eq!(serde_json::from_str::<GeometryTag>(&s).unwrap(), g);
        }
        assert_eq!(serde_json::to_string(&GeometryTag::SLtildexE1).unwrap(), "\"sltilde_x_e1\"");
    }
}
