//! Cusp cross-sections: the six orientable flat 3-manifolds and the infranil
//! manifolds that bound complex-hyperbolic and F4 pieces.
//!
//! Every boundary class carries an orientation. Flat eta values are stored for
//! one reference orientation per letter and negate under reversal. Two defect
//! normalizations coexist:
//!
//! * flat cusps contribute `defect = ±eta` (no factor of one half), the
//!   normalization of the flat-cusp signature formula for real-hyperbolic
//!   pieces;
//! * circle bundles over the torus with Euler number `e` contribute
//!   `defect = sign(e) - e/3`, calibrated from the toroidal-compactification
//!   signature formula `σ(Y) = χ/3 - Σ (n_i/3 - 1)`. Their eta value is
//!   `-2·defect = sign(e)(2|e|/3 - 2)`, the value consistent with
//!   `σ_top = σ_L2 - η/2`.
//!
//! The two conventions never meet: defects only enter closed-manifold sums in
//! cancelling pairs or through the per-piece formula.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, int, rat, Rational};

/// An orientation sign, serialized as `1` or `-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(value: i64) -> Option<Sign> {
        match value {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn of(value: i64) -> Sign {
        if value < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl std::ops::Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self.flip()
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i64(self.to_i64())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Sign, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_i64(v).ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

/// Hantzsche–Wendt letter of an orientable flat 3-manifold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FlatLetter {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl FlatLetter {
    pub const ALL: [FlatLetter; 6] =
        [FlatLetter::A, FlatLetter::B, FlatLetter::C, FlatLetter::D, FlatLetter::E, FlatLetter::F];

    pub fn flat_type(self) -> &'static FlatType {
        &catalog()[self as usize]
    }

    pub fn eta_reference(self) -> Rational {
        self.flat_type().eta_reference.clone()
    }

    pub fn admits_orientation_reversal(self) -> bool {
        self.flat_type().admits_orientation_reversal
    }
}

impl fmt::Display for FlatLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Seifert invariants `M(g; e; r_1, ..., r_n)`.
///
/// `genus < 0` denotes a non-orientable base whose first mod-2 Betti number is
/// `-genus`. Singular fibre invariants are kept in lowest terms in `(0, 1)`;
/// integer parts are moved into `euler_obstruction` at construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeifertData {
    pub genus: i64,
    pub euler_obstruction: i64,
    #[serde(with = "rational::serde_str::vec")]
    pub singular_fibers: Vec<Rational>,
}

impl SeifertData {
    pub fn new(genus: i64, euler_obstruction: i64, fibers: &[Rational]) -> SeifertData {
        let mut e = euler_obstruction;
        let mut singular_fibers = Vec::new();
        for r in fibers {
            let frac = rational::fract(r);
            let whole = r - &frac;
            e += rational::as_i64(&whole).expect("integer part of a Seifert invariant fits in i64");
            if frac != int(0) {
                singular_fibers.push(frac);
            }
        }
        SeifertData { genus, euler_obstruction: e, singular_fibers }
    }

    /// `e + Σ r_i`; zero exactly for flat Seifert manifolds.
    pub fn euler_number(&self) -> Rational {
        self.singular_fibers.iter().fold(int(self.euler_obstruction), |acc, r| acc + r)
    }

    pub fn base_euler_characteristic(&self) -> i64 {
        if self.genus >= 0 {
            2 - 2 * self.genus
        } else {
            2 + self.genus
        }
    }

    /// `χ_base - Σ (1 - 1/α_i)` where `r_i = β_i/α_i`.
    pub fn orbifold_euler_characteristic(&self) -> Rational {
        self.singular_fibers.iter().fold(int(self.base_euler_characteristic()), |acc, r| {
            let alpha = Rational::from_integer(r.denom().clone());
            acc - (int(1) - alpha.recip())
        })
    }
}

impl fmt::Display for SeifertData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({}; {};", self.genus, self.euler_obstruction)?;
        let fibers: Vec<String> = self.singular_fibers.iter().map(rational::display).collect();
        write!(f, " {})", fibers.join(", "))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FlatType {
    pub letter: FlatLetter,
    pub seifert_presentations: Vec<SeifertData>,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub eta_reference: Rational,
    pub admits_orientation_reversal: bool,
}

/// The six orientable flat 3-manifolds, indexed by letter.
pub fn catalog() -> &'static [FlatType; 6] {
    static CATALOG: OnceLock<[FlatType; 6]> = OnceLock::new();
    CATALOG.get_or_init(|| {
        let half = rat(1, 2);
        let third = rat(1, 3);
        let quarter = rat(1, 4);
        let sixth = rat(1, 6);
        let entry = |letter, presentations, eta: Rational| FlatType {
            letter,
            seifert_presentations: presentations,
            admits_orientation_reversal: eta == int(0),
            eta_reference: eta,
        };
        [
            entry(FlatLetter::A, vec![SeifertData::new(1, 0, &[])], int(0)),
            entry(
                FlatLetter::B,
                vec![
                    SeifertData::new(0, -2, &[half.clone(), half.clone(), half.clone(), half.clone()]),
                    SeifertData::new(-2, 0, &[]),
                ],
                int(0),
            ),
            entry(
                FlatLetter::C,
                vec![SeifertData::new(0, -1, &[third.clone(), third.clone(), third.clone()])],
                rat(-2, 3),
            ),
            entry(FlatLetter::D, vec![SeifertData::new(0, -1, &[half.clone(), quarter.clone(), quarter])], rat(-1, 1)),
            entry(FlatLetter::E, vec![SeifertData::new(0, -1, &[half.clone(), third, sixth])], rat(-4, 3)),
            entry(FlatLetter::F, vec![SeifertData::new(-1, -1, &[half.clone(), half])], int(0)),
        ]
    })
}

/// Global sign convention for flat reference orientations. Closed-manifold
/// invariants do not depend on the choice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FlatConvention {
    #[default]
    Reference,
    Flipped,
}

impl FlatConvention {
    fn sign(self) -> i64 {
        match self {
            FlatConvention::Reference => 1,
            FlatConvention::Flipped => -1,
        }
    }
}

/// Oriented diffeomorphism class of a cusp cross-section.
///
/// Serialized as `{"flat":{"letter":"C","sign":-1}}`,
/// `{"nil_torus":{"euler":12}}` or `{"nil_klein":{"k":6,"sign":1}}`. A torus
/// bundle with Euler number 0 is the 3-torus and deserializes to `flat` A.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", try_from = "BoundaryRepr")]
pub enum BoundaryClass {
    Flat { letter: FlatLetter, sign: Sign },
    NilTorus { euler: i64 },
    NilKlein { k: i64, sign: Sign },
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
enum BoundaryRepr {
    Flat { letter: FlatLetter, sign: Sign },
    NilTorus { euler: i64 },
    NilKlein { k: i64, sign: Sign },
}

impl TryFrom<BoundaryRepr> for BoundaryClass {
    type Error = String;

    fn try_from(repr: BoundaryRepr) -> std::result::Result<Self, String> {
        Ok(match repr {
            BoundaryRepr::Flat { letter, sign } => BoundaryClass::flat(letter, sign),
            BoundaryRepr::NilTorus { euler } => BoundaryClass::nil_torus(euler),
            BoundaryRepr::NilKlein { k, sign } => {
                if k == 0 {
                    return Err("nil_klein invariant k must be nonzero".into());
                }
                BoundaryClass::nil_klein(k, sign)
            }
        })
    }
}

impl BoundaryClass {
    pub fn flat(letter: FlatLetter, sign: Sign) -> BoundaryClass {
        BoundaryClass::Flat { letter, sign }
    }

    /// Circle bundle over the torus with Euler number `euler`; `euler == 0`
    /// normalizes to the positively oriented 3-torus.
    pub fn nil_torus(euler: i64) -> BoundaryClass {
        if euler == 0 {
            BoundaryClass::Flat { letter: FlatLetter::A, sign: Sign::Plus }
        } else {
            BoundaryClass::NilTorus { euler }
        }
    }

    pub fn nil_klein(k: i64, sign: Sign) -> BoundaryClass {
        BoundaryClass::NilKlein { k, sign }
    }

    pub fn normalized(self) -> BoundaryClass {
        match self {
            BoundaryClass::NilTorus { euler: 0 } => BoundaryClass::nil_torus(0),
            other => other,
        }
    }

    pub fn is_flat(&self) -> bool {
        matches!(self.normalized(), BoundaryClass::Flat { .. })
    }

    pub fn is_nil(&self) -> bool {
        !self.is_flat()
    }

    /// Orientation-reversed class.
    pub fn reverse(self) -> BoundaryClass {
        match self.normalized() {
            BoundaryClass::Flat { letter, sign } => BoundaryClass::Flat { letter, sign: -sign },
            BoundaryClass::NilTorus { euler } => BoundaryClass::NilTorus { euler: -euler },
            BoundaryClass::NilKlein { k, sign } => BoundaryClass::NilKlein { k, sign: -sign },
        }
    }

    /// Sign of the fibre orientation relative to the base: the sign of the
    /// Euler number for torus bundles and `sign · sign(k)` for Klein-base
    /// bundles. `None` for flat classes.
    pub fn nil_orientation(&self) -> Option<Sign> {
        match self.normalized() {
            BoundaryClass::Flat { .. } => None,
            BoundaryClass::NilTorus { euler } => Some(Sign::of(euler)),
            BoundaryClass::NilKlein { k, sign } => Some(sign * Sign::of(k)),
        }
    }

    pub fn eta(&self) -> Result<Rational> {
        self.eta_with(FlatConvention::Reference)
    }

    pub fn eta_with(&self, convention: FlatConvention) -> Result<Rational> {
        match self.normalized() {
            BoundaryClass::Flat { letter, sign } => Ok(letter.eta_reference() * int(sign.to_i64() * convention.sign())),
            BoundaryClass::NilTorus { euler } => {
                let s = euler.signum();
                Ok(int(s) * (rat(2 * euler.abs(), 3) - int(2)))
            }
            klein @ BoundaryClass::NilKlein { .. } => Err(Error::UnsupportedEta(klein.to_string())),
        }
    }

    /// Per-cusp signature defect: `σ_top(piece) = σ_L2(piece) + Σ defect`.
    pub fn defect(&self) -> Result<Rational> {
        self.defect_with(FlatConvention::Reference)
    }

    pub fn defect_with(&self, convention: FlatConvention) -> Result<Rational> {
        match self.normalized() {
            flat @ BoundaryClass::Flat { .. } => flat.eta_with(convention),
            BoundaryClass::NilTorus { euler } => Ok(int(euler.signum()) - rat(euler, 3)),
            klein @ BoundaryClass::NilKlein { .. } => Err(Error::UnsupportedEta(klein.to_string())),
        }
    }
}

/// True iff `a` and `b` are orientation-reversing diffeomorphic, i.e. the
/// two cusps may be glued into an oriented manifold.
pub fn glueable(a: BoundaryClass, b: BoundaryClass) -> bool {
    match (a.normalized(), b.normalized()) {
        (BoundaryClass::Flat { letter: la, sign: sa }, BoundaryClass::Flat { letter: lb, sign: sb }) => {
            la == lb && (la.admits_orientation_reversal() || sa != sb)
        }
        (BoundaryClass::NilTorus { euler: ea }, BoundaryClass::NilTorus { euler: eb }) => ea == -eb,
        (BoundaryClass::NilKlein { k: ka, sign: sa }, BoundaryClass::NilKlein { k: kb, sign: sb }) => {
            ka == kb && sa != sb
        }
        _ => false,
    }
}

impl fmt::Display for BoundaryClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryClass::Flat { letter, sign } => write!(f, "flat {letter}({sign})"),
            BoundaryClass::NilTorus { euler } => write!(f, "nil-torus(e={euler})"),
            BoundaryClass::NilKlein { k, sign } => write!(f, "nil-klein(k={k}, {sign})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn flat(letter: FlatLetter, s: i64) -> BoundaryClass {
        BoundaryClass::flat(letter, Sign::from_i64(s).unwrap())
    }

    #[test]
    fn eta_examples() {
        assert_eq!(flat(FlatLetter::C, 1).eta().unwrap(), rat(-2, 3));
        assert_eq!(flat(FlatLetter::C, -1).eta().unwrap(), rat(2, 3));
        assert_eq!(flat(FlatLetter::A, 1).eta().unwrap(), int(0));
        assert_eq!(BoundaryClass::nil_torus(12).eta().unwrap(), int(6));
    }

    #[test]
    fn defect_examples() {
        assert_eq!(BoundaryClass::nil_torus(12).defect().unwrap(), int(-3));
        assert_eq!(BoundaryClass::nil_torus(-12).defect().unwrap(), int(3));
        assert_eq!(flat(FlatLetter::D, -1).defect().unwrap(), int(1));
        // eta = -2 defect on nil torus bundles
        for e in [-7, -1, 1, 2, 5, 30] {
            let b = BoundaryClass::nil_torus(e);
            assert_eq!(b.eta().unwrap(), b.defect().unwrap() * int(-2));
        }
    }

    #[test]
    fn klein_has_no_eta() {
        let b = BoundaryClass::nil_klein(6, Sign::Plus);
        assert!(matches!(b.eta(), Err(Error::UnsupportedEta(_))));
        assert!(matches!(b.defect(), Err(Error::UnsupportedEta(_))));
    }

    #[test]
    fn reverse_examples() {
        assert_eq!(BoundaryClass::nil_torus(4).reverse(), BoundaryClass::nil_torus(-4));
        assert_eq!(flat(FlatLetter::F, 1).reverse(), flat(FlatLetter::F, -1));
        assert_eq!(BoundaryClass::nil_klein(3, Sign::Plus).reverse(), BoundaryClass::nil_klein(3, Sign::Minus));
    }

    #[test]
    fn glueable_examples() {
        assert!(glueable(BoundaryClass::nil_torus(12), BoundaryClass::nil_torus(-12)));
        assert!(!glueable(flat(FlatLetter::C, 1), flat(FlatLetter::C, 1)));
        assert!(glueable(flat(FlatLetter::A, 1), flat(FlatLetter::A, 1)));
        assert!(!glueable(BoundaryClass::nil_torus(12), BoundaryClass::nil_torus(12)));
        assert!(!glueable(flat(FlatLetter::C, 1), flat(FlatLetter::D, -1)));
        assert!(!glueable(BoundaryClass::nil_torus(6), BoundaryClass::nil_klein(6, Sign::Minus)));
        // T^3 is the Euler-number-zero torus bundle
        assert!(glueable(BoundaryClass::NilTorus { euler: 0 }, flat(FlatLetter::A, -1)));
    }

    #[test]
    fn zero_euler_normalizes_to_torus() {
        assert_eq!(BoundaryClass::nil_torus(0), flat(FlatLetter::A, 1));
        let parsed: BoundaryClass = serde_json::from_str(r#"{"nil_torus":{"euler":0}}"#).unwrap();
        assert_eq!(parsed, flat(FlatLetter::A, 1));
    }

    #[test]
    fn json_shapes() {
        let c = flat(FlatLetter::C, -1);
        assert_eq!(serde_json::to_string(&c).unwrap(), r#"{"flat":{"letter":"C","sign":-1}}"#);
        assert_eq!(serde_json::to_string(&BoundaryClass::nil_torus(12)).unwrap(), r#"{"nil_torus":{"euler":12}}"#);
        assert_eq!(
            serde_json::to_string(&BoundaryClass::nil_klein(6, Sign::Plus)).unwrap(),
            r#"{"nil_klein":{"k":6,"sign":1}}"#
        );
        assert!(serde_json::from_str::<BoundaryClass>(r#"{"flat":{"letter":"C","sign":2}}"#).is_err());
        assert!(serde_json::from_str::<BoundaryClass>(r#"{"nil_klein":{"k":0,"sign":1}}"#).is_err());
    }

    #[test]
    fn catalog_shape() {
        for (i, t) in catalog().iter().enumerate() {
            assert_eq!(t.letter, FlatLetter::ALL[i]);
            assert_eq!(t.eta_reference == int(0), t.admits_orientation_reversal);
            let expected = if t.letter == FlatLetter::B { 2 } else { 1 };
            assert_eq!(t.seifert_presentations.len(), expected);
        }
        assert!(FlatLetter::A.admits_orientation_reversal());
        assert!(!FlatLetter::E.admits_orientation_reversal());
    }

    #[test]
    fn seifert_normalization() {
        let s = SeifertData::new(0, -2, &[rat(3, 2), rat(1, 2), int(1)]);
        assert_eq!(s.euler_obstruction, 0);
        assert_eq!(s.singular_fibers, vec![rat(1, 2), rat(1, 2)]);
        assert_eq!(s.euler_number(), int(1));
        assert_eq!(SeifertData::new(0, -1, &[rat(1, 3), rat(1, 3), rat(1, 3)]).to_string(), "M(0; -1; 1/3, 1/3, 1/3)");
    }
}
