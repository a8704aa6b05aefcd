//! Exact `SL(2,Z)` arithmetic for torus-bundle monodromies over punctured
//! surfaces, parabolic conjugacy classes, and the two degree-4 cover recipes
//! that square every boundary monodromy.
//!
//! Surface-relation convention: for a bundle of genus `g` with generator
//! images `a_1, b_1, ..., a_g, b_g` and boundary monodromies `c_1, ..., c_m`,
//!
//! ```text
//! c_1 c_2 ... c_m  =  [a_1, b_1^-1] [a_2, b_2^-1] ... [a_g, b_g^-1]
//! ```
//!
//! with `[x, y] = x y x^-1 y^-1`. The once-punctured torus with generators
//! `X`, `Y` and boundary `[X, Y^-1]` satisfies it. [`relation_check`]
//! exposes the test; it is not enforced at construction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::flat_catalog::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SL2Matrix {
    a: BigInt,
    b: BigInt,
    c: BigInt,
    d: BigInt,
}

impl SL2Matrix {
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        c: impl Into<BigInt>,
        d: impl Into<BigInt>,
    ) -> Result<SL2Matrix> {
        let m = SL2Matrix { a: a.into(), b: b.into(), c: c.into(), d: d.into() };
        let det = &m.a * &m.d - &m.b * &m.c;
        if !det.is_one() {
            return Err(Error::NotUnimodular(m.to_string(), det.to_string()));
        }
        Ok(m)
    }

    /// Panicking constructor for literals known to be unimodular.
    pub fn from_entries(a: i64, b: i64, c: i64, d: i64) -> SL2Matrix {
        SL2Matrix::new(a, b, c, d).expect("literal matrix has determinant 1")
    }

    pub fn identity() -> SL2Matrix {
        SL2Matrix::from_entries(1, 0, 0, 1)
    }

    pub fn entries(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn is_identity(&self) -> bool {
        self.a.is_one() && self.d.is_one() && self.b.is_zero() && self.c.is_zero()
    }

    pub fn mul(&self, rhs: &SL2Matrix) -> SL2Matrix {
        SL2Matrix {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn inverse(&self) -> SL2Matrix {
        SL2Matrix { a: self.d.clone(), b: -&self.b, c: -&self.c, d: self.a.clone() }
    }

    pub fn neg(&self) -> SL2Matrix {
        SL2Matrix { a: -&self.a, b: -&self.b, c: -&self.c, d: -&self.d }
    }

    pub fn pow(&self, exponent: i64) -> SL2Matrix {
        let mut base = if exponent < 0 { self.inverse() } else { self.clone() };
        let mut e = exponent.unsigned_abs();
        let mut acc = SL2Matrix::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// `g · self · g^-1`.
    pub fn conjugate_by(&self, g: &SL2Matrix) -> SL2Matrix {
        g.mul(self).mul(&g.inverse())
    }

    fn determinant(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }
}

impl fmt::Display for SL2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

fn bigint_to_json(v: &BigInt) -> serde_json::Value {
    match v.to_i64() {
        Some(x) => serde_json::Value::from(x),
        None => serde_json::Value::from(v.to_string()),
    }
}

impl Serialize for SL2Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows = serde_json::json!([
            [bigint_to_json(&self.a), bigint_to_json(&self.b)],
            [bigint_to_json(&self.c), bigint_to_json(&self.d)]
        ]);
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SL2Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<SL2Matrix, D::Error> {
        use serde::de::Error as _;
        let rows = <[[serde_json::Value; 2]; 2]>::deserialize(d)?;
        let parse = |v: &serde_json::Value| -> std::result::Result<BigInt, D::Error> {
            match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| D::Error::custom(format!("matrix entry {n} is not an integer"))),
                serde_json::Value::String(t) => {
                    t.parse().map_err(|_| D::Error::custom(format!("matrix entry {t:?} is not an integer")))
                }
                other => Err(D::Error::custom(format!("matrix entry {other} is not an integer"))),
            }
        };
        SL2Matrix::new(parse(&rows[0][0])?, parse(&rows[0][1])?, parse(&rows[1][0])?, parse(&rows[1][1])?)
            .map_err(D::Error::custom)
    }
}

/// `a b a^-1 b^-1`.
pub fn commutator(a: &SL2Matrix, b: &SL2Matrix) -> SL2Matrix {
    a.mul(b).mul(&a.inverse()).mul(&b.inverse())
}

/// `SL(2,Z)` conjugacy class of `sign · (1 k; 0 1)`.
///
/// For `sign = +1`, `k` is the Euler number of the boundary circle bundle over
/// the torus; `sign = -1` classes are Klein-bottle based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ParabolicClass {
    pub sign: Sign,
    #[serde(with = "bigint_json")]
    pub k: BigInt,
}

impl ParabolicClass {
    pub fn k_i64(&self) -> Result<i64> {
        self.k.to_i64().ok_or_else(|| Error::InvalidArgument(format!("parabolic invariant {} exceeds i64", self.k)))
    }

    pub fn normal_form(&self) -> SL2Matrix {
        let m = SL2Matrix { a: BigInt::one(), b: self.k.clone(), c: BigInt::zero(), d: BigInt::one() };
        match self.sign {
            Sign::Plus => m,
            Sign::Minus => m.neg(),
        }
    }
}

impl fmt::Display for ParabolicClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·(1 {}; 0 1)", self.sign, self.k)
    }
}

mod bigint_json {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        super::bigint_to_json(v).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        use serde::de::Error as _;
        match serde_json::Value::deserialize(d)? {
            serde_json::Value::Number(n) => {
                n.as_i64().map(BigInt::from).ok_or_else(|| D::Error::custom("expected an integer"))
            }
            serde_json::Value::String(t) => t.parse().map_err(D::Error::custom),
            _ => Err(D::Error::custom("expected an integer")),
        }
    }
}

/// Classifies a parabolic (or `±I`) matrix up to `SL(2,Z)` conjugacy.
///
/// With `N = sign · M` unipotent, `N - I` has rank at most one. A primitive
/// kernel vector `v` is completed to `G ∈ SL(2,Z)` with first column `v`;
/// then `G^-1 N G = (1 k; 0 1)`. `k` does not depend on the completion.
pub fn classify_parabolic(m: &SL2Matrix) -> Result<ParabolicClass> {
    let trace = m.trace();
    let two = BigInt::from(2);
    let sign = if trace == two {
        Sign::Plus
    } else if trace == -&two {
        Sign::Minus
    } else {
        return Err(Error::NotParabolic(m.to_string(), trace.to_string()));
    };
    let unipotent = match sign {
        Sign::Plus => m.clone(),
        Sign::Minus => m.neg(),
    };
    let (p, q, r, s) =
        (&unipotent.a - BigInt::one(), unipotent.b.clone(), unipotent.c.clone(), &unipotent.d - BigInt::one());
    if p.is_zero() && q.is_zero() && r.is_zero() && s.is_zero() {
        return Ok(ParabolicClass { sign, k: BigInt::zero() });
    }
    // Kernel of the nilpotent part, read off from its first nonzero row.
    let (x, y) = if !(p.is_zero() && q.is_zero()) { (-&q, p.clone()) } else { (s.clone(), -&r) };
    let g = x.gcd(&y);
    let (x, y) = (&x / &g, &y / &g);
    let egcd = x.extended_gcd(&y);
    debug_assert!(egcd.gcd.is_one());
    // x·u + y·w = 1, so G = (x  -w; y  u) has determinant 1.
    let conj = SL2Matrix { a: x, b: -egcd.y, c: y, d: egcd.x };
    debug_assert!(conj.determinant().is_one());
    let normal = conj.inverse().mul(&unipotent).mul(&conj);
    if !(normal.a.is_one() && normal.d.is_one() && normal.c.is_zero()) {
        return Err(Error::Internal(format!("conjugation of {m} produced {normal}")));
    }
    Ok(ParabolicClass { sign, k: normal.b })
}

/// Flat `T^2`-bundle over a punctured orientable surface.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BundleRepr")]
pub struct PuncturedSurfaceBundle {
    genus: u32,
    #[serde(rename = "generators")]
    generator_images: Vec<SL2Matrix>,
    #[serde(rename = "boundaries")]
    boundary_monodromies: Vec<SL2Matrix>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct BundleRepr {
    genus: u32,
    #[serde(default)]
    generators: Vec<SL2Matrix>,
    boundaries: Vec<SL2Matrix>,
}

impl TryFrom<BundleRepr> for PuncturedSurfaceBundle {
    type Error = Error;
    fn try_from(r: BundleRepr) -> Result<Self> {
        PuncturedSurfaceBundle::new(r.genus, r.generators, r.boundaries)
    }
}

impl PuncturedSurfaceBundle {
    pub fn new(genus: u32, generator_images: Vec<SL2Matrix>, boundary_monodromies: Vec<SL2Matrix>) -> Result<Self> {
        if generator_images.len() != 2 * genus as usize {
            return Err(Error::InvalidArgument(format!(
                "genus {genus} needs {} generator images, got {}",
                2 * genus,
                generator_images.len()
            )));
        }
        if boundary_monodromies.is_empty() {
            return Err(Error::InvalidArgument("a punctured surface needs at least one boundary".into()));
        }
        let bundle = PuncturedSurfaceBundle { genus, generator_images, boundary_monodromies };
        if bundle.base_euler_characteristic() >= 0 {
            return Err(Error::InvalidArgument(format!(
                "base of genus {genus} with {} boundaries is not hyperbolic",
                bundle.boundary_monodromies.len()
            )));
        }
        Ok(bundle)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn generator_images(&self) -> &[SL2Matrix] {
        &self.generator_images
    }

    pub fn boundary_monodromies(&self) -> &[SL2Matrix] {
        &self.boundary_monodromies
    }

    pub fn base_euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - self.boundary_monodromies.len() as i64
    }

    pub fn boundary_classes(&self) -> Result<Vec<ParabolicClass>> {
        self.boundary_monodromies.iter().map(classify_parabolic).collect()
    }
}

/// True iff the boundary product equals the commutator product (see module
/// docs for the convention).
pub fn relation_check(bundle: &PuncturedSurfaceBundle) -> bool {
    let boundary = bundle.boundary_monodromies.iter().fold(SL2Matrix::identity(), |acc, m| acc.mul(m));
    let surface = bundle
        .generator_images
        .chunks(2)
        .fold(SL2Matrix::identity(), |acc, pair| acc.mul(&commutator(&pair[0], &pair[1].inverse())));
    boundary == surface
}

/// Degree-4 cover that squares every boundary monodromy and doubles the
/// number of boundaries.
///
/// Two base shapes are supported:
///
/// * once-punctured torus: an unbranched double cover along the first
///   generator, followed by a double cover that is nontrivial on both new
///   punctures. The result is a twice-punctured genus-2 surface; generator
///   images and boundary monodromies are the explicit lifts, so a bundle that
///   satisfies [`relation_check`] yields a cover that does too;
/// * pair of pants: two double covers of the sphere, each branched over two
///   punctures, giving a six-punctured sphere with every boundary squared and
///   doubled (listed as `c_1^2, c_1^2, c_2^2, c_2^2, c_3^2, c_3^2`).
pub fn square_cover(bundle: &PuncturedSurfaceBundle) -> Result<PuncturedSurfaceBundle> {
    let chi = 4 * bundle.base_euler_characteristic();
    let boundaries = 2 * bundle.boundary_monodromies.len() as i64;
    let twice_genus = 2 - boundaries - chi;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(Error::InconsistentCover(format!(
            "Euler characteristic {chi} with {boundaries} boundaries has no surface of nonnegative genus"
        )));
    }
    let genus = (twice_genus / 2) as u32;
    match (bundle.genus, bundle.boundary_monodromies.len()) {
        (1, 1) => {
            let alpha = &bundle.generator_images[0];
            let beta = &bundle.generator_images[1];
            let c = &bundle.boundary_monodromies[0];
            // first double cover: alpha^2, beta; punctures alpha c alpha^-1 and c
            let a1 = alpha.pow(2);
            let b1 = beta.clone();
            let d1 = c.conjugate_by(alpha);
            let d2 = c.clone();
            // second double cover, deck transversal t = d1
            let a2 = a1.conjugate_by(&d1);
            let b2 = b1.conjugate_by(&d1);
            let c1 = d1.pow(2).conjugate_by(&d1.mul(&d2));
            let c2 = d2.pow(2).conjugate_by(&d1);
            debug_assert_eq!(genus, 2);
            PuncturedSurfaceBundle::new(genus, vec![a1, b1, a2, b2], vec![c1, c2])
        }
        (0, 3) => {
            let squared = bundle
                .boundary_monodromies
                .iter()
                .flat_map(|m| {
                    let sq = m.pow(2);
                    [sq.clone(), sq]
                })
                .collect();
            debug_assert_eq!(genus, 0);
            PuncturedSurfaceBundle::new(genus, Vec::new(), squared)
        }
        (g, m) => Err(Error::InconsistentCover(format!(
            "no degree-4 squaring recipe for a genus-{g} base with {m} punctures"
        ))),
    }
}

/// Euler characteristic of a degree-`degree` cover branched over orbits of
/// constant local degree: `degree · χ - Σ count · (degree - degree/local)`.
pub fn riemann_hurwitz_chi(chi_base: i64, degree: i64, branch_points: &[(i64, i64)]) -> Result<i64> {
    if degree < 1 {
        return Err(Error::RiemannHurwitz(format!("degree {degree} must be positive")));
    }
    let mut chi = degree * chi_base;
    for &(count, local) in branch_points {
        if count < 0 {
            return Err(Error::RiemannHurwitz(format!("negative branch point count {count}")));
        }
        if local < 1 || degree % local != 0 {
            return Err(Error::RiemannHurwitz(format!("local degree {local} does not divide degree {degree}")));
        }
        chi -= count * (degree - degree / local);
    }
    Ok(chi)
}

/// Monodromy data of the F4 bundle over the once-punctured torus:
/// generators `X = (2 1; 1 1)`, `Y = (1 1; 1 2)`, boundary `[X, Y^-1]`.
pub fn x0_bundle() -> PuncturedSurfaceBundle {
    let x = SL2Matrix::from_entries(2, 1, 1, 1);
    let y = SL2Matrix::from_entries(1, 1, 1, 2);
    let boundary = commutator(&x, &y.inverse());
    PuncturedSurfaceBundle::new(1, vec![x, y], vec![boundary]).expect("X0 data is well formed")
}

/// Pair-of-pants bundle with boundary monodromies `V = (1 2; 0 1)`,
/// `U = (1 0; -2 1)` and `V·U = (-3 2; -2 1)`.
pub fn x0_prime_bundle() -> PuncturedSurfaceBundle {
    let v = SL2Matrix::from_entries(1, 2, 0, 1);
    let u = SL2Matrix::from_entries(1, 0, -2, 1);
    let vu = v.mul(&u);
    PuncturedSurfaceBundle::new(0, Vec::new(), vec![v, u, vu]).expect("pair of pants data is well formed")
}

/// Boundary data of the six-punctured F4 piece used for the `M'` family:
/// `(1 4; 0 1)`, `(1 -4; 0 1)` and `(1 -6; 0 1)`, each twice.
pub fn x_prime_bundle() -> PuncturedSurfaceBundle {
    let boundaries = [4, 4, -4, -4, -6, -6].into_iter().map(|k| SL2Matrix::from_entries(1, k, 0, 1)).collect();
    PuncturedSurfaceBundle::new(0, Vec::new(), boundaries).expect("six-punctured sphere is hyperbolic")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(a: i64, b: i64, c: i64, d: i64) -> SL2Matrix {
        SL2Matrix::from_entries(a, b, c, d)
    }

    fn class(sign: Sign, k: i64) -> ParabolicClass {
        ParabolicClass { sign, k: BigInt::from(k) }
    }

    #[test]
    fn rejects_non_unimodular() {
        assert!(matches!(SL2Matrix::new(2, 0, 0, 2), Err(Error::NotUnimodular(..))));
    }

    #[test]
    fn commutator_examples() {
        let x = m(2, 1, 1, 1);
        let y = m(1, 1, 1, 2);
        assert_eq!(commutator(&x, &y.inverse()), m(-1, -6, 0, -1));
        assert!(commutator(&x, &x).is_identity());
        assert!(commutator(&SL2Matrix::identity(), &y).is_identity());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_parabolic(&m(-1, -6, 0, -1)).unwrap(), class(Sign::Minus, 6));
        assert_eq!(classify_parabolic(&m(1, 12, 0, 1)).unwrap(), class(Sign::Plus, 12));
        assert_eq!(classify_parabolic(&m(1, 0, -4, 1)).unwrap(), class(Sign::Plus, 4));
        assert_eq!(classify_parabolic(&m(-1, 0, 0, -1)).unwrap(), class(Sign::Minus, 0));
        assert_eq!(classify_parabolic(&SL2Matrix::identity()).unwrap(), class(Sign::Plus, 0));
        assert!(matches!(classify_parabolic(&m(2, 1, 1, 1)), Err(Error::NotParabolic(..))));
    }

    #[test]
    fn lower_unipotent_matches_brute_force_conjugator() {
        // (1 0; -4 1) is conjugate to (1 4; 0 1): search conjugators with entries in [-5, 5].
        let target = m(1, 4, 0, 1);
        let source = m(1, 0, -4, 1);
        let mut found = false;
        for a in -5..=5i64 {
            for b in -5..=5i64 {
                for c in -5..=5i64 {
                    for d in -5..=5i64 {
                        if a * d - b * c != 1 {
                            continue;
                        }
                        if source.conjugate_by(&m(a, b, c, d)) == target {
                            found = true;
                        }
                    }
                }
            }
        }
        assert!(found);
    }

    #[test]
    fn relation_examples() {
        assert!(relation_check(&x0_bundle()));
        let v = m(1, 2, 0, 1);
        let u = m(1, 0, -2, 1);
        let free_identity =
            PuncturedSurfaceBundle::new(0, vec![], vec![v.clone(), u.inverse(), u.mul(&v.inverse())]).unwrap();
        assert!(relation_check(&free_identity));
        let single = PuncturedSurfaceBundle::new(0, vec![], vec![v.clone(), v.clone(), v.clone()]).unwrap();
        assert!(!relation_check(&single));
        // Hillman's triple closes up once the third loop is traversed backwards.
        let triple = PuncturedSurfaceBundle::new(0, vec![], vec![v.clone(), u.clone(), v.mul(&u).inverse()]).unwrap();
        assert!(relation_check(&triple));
        assert!(!relation_check(&x0_prime_bundle()));
    }

    #[test]
    fn square_cover_of_x0() {
        let cover = square_cover(&x0_bundle()).unwrap();
        assert_eq!(cover.genus(), 2);
        assert_eq!(cover.base_euler_characteristic(), -4);
        assert_eq!(cover.boundary_monodromies().len(), 2);
        for b in cover.boundary_classes().unwrap() {
            assert_eq!(b, class(Sign::Plus, 12));
        }
        assert!(relation_check(&cover));
        assert_eq!(m(-1, -6, 0, -1).pow(2), m(1, 12, 0, 1));
    }

    #[test]
    fn square_cover_of_pair_of_pants() {
        let cover = square_cover(&x0_prime_bundle()).unwrap();
        assert_eq!(cover.genus(), 0);
        assert_eq!(cover.base_euler_characteristic(), -4);
        let ks: Vec<i64> = cover
            .boundary_classes()
            .unwrap()
            .iter()
            .map(|c| {
                assert_eq!(c.sign, Sign::Plus);
                c.k_i64().unwrap()
            })
            .collect();
        // V^2 ~ (1 4; 0 1), U^2 ~ (1 4; 0 1), (VU)^2 ~ (1 -4; 0 1): the gcd of the
        // entries of N - I is 2 for each of V, U, -VU, so every square has |k| = 4.
        assert_eq!(ks, vec![4, 4, 4, 4, -4, -4]);
    }

    #[test]
    fn square_cover_with_identity_monodromy() {
        let id = SL2Matrix::identity();
        let bundle = PuncturedSurfaceBundle::new(1, vec![id.clone(), id.clone()], vec![id]).unwrap();
        let cover = square_cover(&bundle).unwrap();
        assert_eq!(cover.boundary_monodromies().len(), 2);
        assert!(cover.boundary_monodromies().iter().all(SL2Matrix::is_identity));
        assert!(relation_check(&cover));
    }

    #[test]
    fn square_cover_unsupported_shape() {
        let id = SL2Matrix::identity();
        let bundle = PuncturedSurfaceBundle::new(2, vec![id.clone(); 4], vec![id]).unwrap();
        assert!(matches!(square_cover(&bundle), Err(Error::InconsistentCover(_))));
    }

    #[test]
    fn riemann_hurwitz_examples() {
        assert_eq!(riemann_hurwitz_chi(-1, 4, &[]).unwrap(), -4);
        assert_eq!(riemann_hurwitz_chi(2, 2, &[(2, 2)]).unwrap(), 2);
        assert_eq!(riemann_hurwitz_chi(0, 8, &[]).unwrap(), 0);
        assert!(riemann_hurwitz_chi(2, 4, &[(1, 3)]).is_err());
        assert!(riemann_hurwitz_chi(2, 0, &[]).is_err());
    }

    #[test]
    fn bundle_validation() {
        let id = SL2Matrix::identity();
        assert!(PuncturedSurfaceBundle::new(1, vec![id.clone()], vec![id.clone()]).is_err());
        assert!(PuncturedSurfaceBundle::new(0, vec![], vec![id.clone(), id.clone()]).is_err());
        assert!(PuncturedSurfaceBundle::new(0, vec![], vec![]).is_err());
    }

    #[test]
    fn json_shapes() {
        let text = serde_json::to_string(&m(-1, -6, 0, -1)).unwrap();
        assert_eq!(text, "[[-1,-6],[0,-1]]");
        let bundle: PuncturedSurfaceBundle = serde_json::from_str(
            r#"{"genus":1,"generators":[[[2,1],[1,1]],[[1,1],[1,2]]],"boundaries":[[[-1,-6],[0,-1]]]}"#,
        )
        .unwrap();
        assert_eq!(bundle, x0_bundle());
        assert!(serde_json::from_str::<SL2Matrix>("[[2,0],[0,2]]").is_err());
    }
}
