//! Named pieces and assemblies, the branched-cover calculator, and seeded
//! random assemblies for property checks.

use std::collections::VecDeque;

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::assembly::{validate_assembly, Assembly, Edge, Violation};
use crate::error::{Error, Result};
use crate::flat_catalog::{BoundaryClass, FlatLetter, Sign};
use crate::pieces::{f4_piece_from_bundle, GeometryTag, Piece};
use crate::rational::{self, rat, Rational};
use crate::sl2_monodromy::{riemann_hurwitz_chi, square_cover, x0_bundle, x_prime_bundle};

fn at_least_two(n: i64, what: &str) -> Result<()> {
    if n < 2 {
        Err(Error::InvalidArgument(format!("{what} needs n >= 2, got {n}")))
    } else {
        Ok(())
    }
}

fn checked_pow(n: i64, e: u32) -> Result<i64> {
    n.checked_pow(e).ok_or_else(|| Error::InvalidArgument(format!("{n}^{e} overflows")))
}

/// Cusped ball quotient with `χ = n⁷` and `4n⁴` cusps of Euler number `n`.
pub fn hirzebruch_cusped(n: i64) -> Result<Piece> {
    at_least_two(n, "hirzebruch_cusped")?;
    let cusps = vec![BoundaryClass::nil_torus(n); checked_pow(n, 4)? as usize * 4];
    Ok(Piece::new(GeometryTag::ComplexHyperbolic, Sign::Plus, checked_pow(n, 7)?, cusps, format!("X_{n}")))
}

/// Ball quotient with `χ = n` and four cusps of Euler number `n`.
pub fn dg_h_piece(n: i64) -> Result<Piece> {
    at_least_two(n, "dg_h_piece")?;
    Ok(Piece::new(
        GeometryTag::ComplexHyperbolic,
        Sign::Plus,
        n,
        vec![BoundaryClass::nil_torus(n); 4],
        format!("H_{n}"),
    ))
}

/// Ball quotient with cusps of self-intersection `-n_i` and `χ = Σn_i/4`.
pub fn holzapfel_piece(cusps: &[i64]) -> Result<Piece> {
    if cusps.is_empty() || cusps.iter().any(|&n| n <= 0) {
        return Err(Error::InvalidArgument(format!("cusp numbers must be positive: {cusps:?}")));
    }
    let total: i64 = cusps.iter().sum();
    if total % 4 != 0 {
        return Err(Error::InvalidArgument(format!("cusp numbers {cusps:?} sum to {total}, not a multiple of 4")));
    }
    let label = format!("Hz({})", cusps.iter().map(i64::to_string).collect::<Vec<_>>().join(","));
    Ok(Piece::new(
        GeometryTag::ComplexHyperbolic,
        Sign::Plus,
        total / 4,
        cusps.iter().map(|&n| BoundaryClass::nil_torus(n)).collect(),
        label,
    ))
}

/// Degree-4 cover of the once-punctured torus bundle, orientation reversed:
/// two cusps of Euler number -12.
pub fn x_bar_piece() -> Piece {
    let cover = square_cover(&x0_bundle()).expect("the punctured torus has a squaring cover");
    f4_piece_from_bundle(&cover, "Xbar").expect("cover boundaries are parabolic").reverse_orientation()
}

/// F4 piece over the six-punctured sphere with cusps `4, 4, -4, -4, -6, -6`.
pub fn x_prime_piece() -> Piece {
    f4_piece_from_bundle(&x_prime_bundle(), "X'").expect("boundaries are parabolic")
}

/// `m` copies of `H_12` glued to `2m` copies of `Xbar`; `χ = 3σ = 12m`.
pub fn build_m(m: usize) -> Result<Assembly> {
    if m == 0 {
        return Err(Error::InvalidArgument("build_M needs m >= 1".into()));
    }
    let h = dg_h_piece(12)?;
    let x = x_bar_piece();
    let mut pieces: Vec<Piece> = (0..m).map(|i| h.clone().with_label(format!("H_12#{i}"))).collect();
    pieces.extend((0..2 * m).map(|j| x.clone().with_label(format!("Xbar#{j}"))));
    let xi = |j: usize| m + j % (2 * m);
    let mut edges = Vec::with_capacity(4 * m);
    for i in 0..m {
        edges.push(Edge::new(i, 0, xi(2 * i), 0));
        edges.push(Edge::new(i, 1, xi(2 * i + 1), 0));
        edges.push(Edge::new(i, 2, xi(2 * i + 1), 1));
        edges.push(Edge::new(i, 3, xi(2 * i + 2), 1));
    }
    Ok(Assembly::new(pieces, edges, format!("M_{m}")))
}

/// `m` copies of `H_6` and `2m` copies of `X'`; the `-6` cusps go to `H_6`,
/// the `±4` cusps pair cyclically among the `X'` copies. `χ = 3σ = 6m`.
pub fn build_mprime(m: usize) -> Result<Assembly> {
    if m == 0 {
        return Err(Error::InvalidArgument("build_Mprime needs m >= 1".into()));
    }
    let h = dg_h_piece(6)?;
    let x = x_prime_piece();
    let mut pieces: Vec<Piece> = (0..m).map(|i| h.clone().with_label(format!("H_6#{i}"))).collect();
    pieces.extend((0..2 * m).map(|j| x.clone().with_label(format!("X'#{j}"))));
    let xi = |j: usize| m + j % (2 * m);
    let mut edges = Vec::with_capacity(8 * m);
    for i in 0..m {
        edges.push(Edge::new(i, 0, xi(2 * i), 4));
        edges.push(Edge::new(i, 1, xi(2 * i), 5));
        edges.push(Edge::new(i, 2, xi(2 * i + 1), 4));
        edges.push(Edge::new(i, 3, xi(2 * i + 1), 5));
    }
    for j in 0..2 * m {
        edges.push(Edge::new(xi(j), 0, xi(j + 1), 2));
        edges.push(Edge::new(xi(j), 1, xi(j + 1), 3));
    }
    Ok(Assembly::new(pieces, edges, format!("M'_{m}")))
}

/// `X_n` with every cusp capped by a reversed `H_n`; `n⁴` caps.
pub fn build_z(n: i64) -> Result<Assembly> {
    let y = hirzebruch_cusped(n)?;
    let cap = dg_h_piece(n)?.reverse_orientation();
    let caps = checked_pow(n, 4)? as usize;
    let mut pieces = Vec::with_capacity(caps + 1);
    pieces.push(y);
    pieces.extend((0..caps).map(|k| cap.clone().with_label(format!("Hbar_{n}#{k}"))));
    let edges = (0..caps).flat_map(|k| (0..4).map(move |j| Edge::new(0, 4 * k + j, k + 1, j))).collect();
    Ok(Assembly::new(pieces, edges, format!("Z_{n}")))
}

/// Divisor bookkeeping of the degree-8 branched cover `Z_n` of `Y_n`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchedCoverReport {
    pub n: i64,
    pub chi: i64,
    pub c1_squared: i64,
    pub l_components: i64,
    pub l_self_intersection: i64,
    /// Euler characteristic of one `L` component.
    pub l_component_chi: i64,
    pub r_components: i64,
    #[serde(with = "rational::serde_str")]
    pub r_self_intersection: Rational,
    pub rl_intersection: i64,
    /// `3c₂ - c₁²`.
    pub logbmy_defect: i64,
    pub minus_l_squared: i64,
}

impl BranchedCoverReport {
    pub fn saturated(&self) -> bool {
        self.logbmy_defect == self.minus_l_squared
    }

    pub fn general_type(&self) -> bool {
        self.c1_squared > 0
    }
}

pub fn branched_cover_invariants(n: i64) -> Result<BranchedCoverReport> {
    if n < 2 || n % 2 != 0 {
        return Err(Error::InvalidArgument(format!("branched cover needs even n >= 2, got {n}")));
    }
    let n2 = checked_pow(n, 2)?;
    let n4 = checked_pow(n, 4)?;
    let chi = 8 * n4;
    let l_components = n4;
    let l_self_intersection = -8;
    // each L component is an unramified degree-8 pull-back of an elliptic curve
    let l_component_chi = riemann_hurwitz_chi(0, 8, &[])?;
    let r_components = 16 * n2;
    let r_self_intersection = rat(-n2, 2);
    let rl_intersection = 16 * n4;
    let l_squared = l_components * l_self_intersection;
    let r_squared = rational::as_i64(&(r_self_intersection.clone() * rat(r_components, 1)))
        .ok_or_else(|| Error::Internal("R² is not an integer".into()))?;
    let c1_squared = l_squared + 2 * rl_intersection + r_squared;
    Ok(BranchedCoverReport {
        n,
        chi,
        c1_squared,
        l_components,
        l_self_intersection,
        l_component_chi,
        r_components,
        r_self_intersection,
        rl_intersection,
        logbmy_defect: 3 * chi - c1_squared,
        minus_l_squared: -l_squared,
    })
}

/// Which random population to draw from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RandomFamily {
    /// Real hyperbolic pieces with flat cusps.
    Real,
    /// Bipartite gluings of `holzapfel_piece` profiles and their reverses.
    Holzapfel,
    /// Complex, F4, real hyperbolic and product pieces.
    Mixed,
    /// Complex hyperbolic pieces only.
    Complex,
}

impl RandomFamily {
    pub const ALL: [RandomFamily; 4] =
        [RandomFamily::Real, RandomFamily::Holzapfel, RandomFamily::Mixed, RandomFamily::Complex];

    pub fn generate(self, seed: u64) -> Assembly {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let label = format!("{}-{seed}", self.name());
        let mut a = match self {
            RandomFamily::Holzapfel => random_holzapfel(&mut rng),
            RandomFamily::Real => random_graph(&mut rng, &[GeometryTag::RealHyperbolic]),
            RandomFamily::Complex => random_graph(&mut rng, &[GeometryTag::ComplexHyperbolic]),
            RandomFamily::Mixed => random_graph(&mut rng, &MIXED),
        };
        a.label = label;
        a
    }

    pub fn name(self) -> &'static str {
        match self {
            RandomFamily::Real => "real",
            RandomFamily::Holzapfel => "holzapfel",
            RandomFamily::Mixed => "mixed",
            RandomFamily::Complex => "complex",
        }
    }
}

const MIXED: [GeometryTag; 7] = [
    GeometryTag::ComplexHyperbolic,
    GeometryTag::F4,
    GeometryTag::RealHyperbolic,
    GeometryTag::H3xE1,
    GeometryTag::H2xE2,
    GeometryTag::H2xH2,
    GeometryTag::SLtildexE1,
];

const MAX_PIECES: usize = 12;
const MAX_EULER: i64 = 30;

fn random_holzapfel(rng: &mut ChaCha8Rng) -> Assembly {
    let k = rng.random_range(2..=MAX_PIECES);
    let mut plus = vec![true];
    let mut cusps: Vec<Vec<i64>> = vec![Vec::new(); k];
    let mut raw: Vec<(usize, usize, i64)> = Vec::new();
    let mut parent = vec![usize::MAX; k];
    for (i, slot) in parent.iter_mut().enumerate().skip(1) {
        let p = rng.random_range(0..i);
        *slot = p;
        plus.push(!plus[p]);
        raw.push((i, p, rng.random_range(1..=MAX_EULER)));
    }
    for _ in 0..rng.random_range(0..=k) {
        let (u, v) = (rng.random_range(0..k), rng.random_range(0..k));
        if plus[u] != plus[v] {
            raw.push((u, v, rng.random_range(1..=MAX_EULER)));
        }
    }
    for &(u, v, n) in &raw {
        cusps[u].push(n);
        cusps[v].push(n);
    }
    // leaves before parents: piece i was attached after its parent
    for i in (1..k).rev() {
        let r = cusps[i].iter().sum::<i64>().rem_euclid(4);
        if r != 0 {
            let n = 4 - r;
            cusps[i].push(n);
            cusps[parent[i]].push(n);
            raw.push((i, parent[i], n));
        }
    }
    let mut slots = vec![0usize; k];
    let mut edges = Vec::with_capacity(raw.len());
    for &(u, v, _) in &raw {
        edges.push(Edge::new(u, slots[u], v, slots[v]));
        slots[u] += 1;
        slots[v] += 1;
    }
    let pieces = (0..k)
        .map(|i| {
            let p = holzapfel_piece(&cusps[i]).expect("residues fixed");
            let p = if plus[i] { p } else { p.reverse_orientation() };
            let label = format!("{}#{i}", p.label);
            p.with_label(label)
        })
        .collect();
    Assembly::new(pieces, edges, "")
}

fn nil_capable(g: GeometryTag) -> bool {
    matches!(g, GeometryTag::ComplexHyperbolic | GeometryTag::F4)
}

fn flat_capable(g: GeometryTag) -> bool {
    g != GeometryTag::ComplexHyperbolic
}

struct Draft {
    geometry: Vec<GeometryTag>,
    orientation: Vec<Sign>,
    cusps: Vec<Vec<BoundaryClass>>,
    edges: Vec<Edge>,
}

impl Draft {
    fn glue(&mut self, u: usize, cu: BoundaryClass, v: usize, cv: BoundaryClass) {
        let (su, sv) = (self.cusps[u].len(), self.cusps[v].len() + usize::from(u == v));
        self.cusps[u].push(cu);
        self.cusps[v].push(cv);
        self.edges.push(Edge::new(u, su, v, sv));
    }

    /// Euler number for the `u` side of a nil edge, or `None` if the
    /// orientations forbid one.
    fn nil_euler(&self, rng: &mut ChaCha8Rng, u: usize, v: usize) -> Option<i64> {
        let n = rng.random_range(1..=MAX_EULER);
        let complex = |i: usize| self.geometry[i] == GeometryTag::ComplexHyperbolic;
        match (complex(u), complex(v)) {
            (true, true) if self.orientation[u] == self.orientation[v] => None,
            (true, _) => Some(self.orientation[u].to_i64() * n),
            (false, true) => Some(-self.orientation[v].to_i64() * n),
            (false, false) => Some(if rng.random_bool(0.5) { n } else { -n }),
        }
    }

    /// Glue `u` to `v` with a random admissible boundary; false if none exists.
    fn glue_random(&mut self, rng: &mut ChaCha8Rng, u: usize, v: usize) -> bool {
        let (gu, gv) = (self.geometry[u], self.geometry[v]);
        let nil = nil_capable(gu) && nil_capable(gv);
        let flat = flat_capable(gu) && flat_capable(gv);
        let use_nil = nil && (!flat || rng.random_bool(0.5));
        if use_nil {
            return match self.nil_euler(rng, u, v) {
                Some(e) => {
                    self.glue(u, BoundaryClass::nil_torus(e), v, BoundaryClass::nil_torus(-e));
                    true
                }
                None => false,
            };
        }
        if !flat {
            return false;
        }
        let letters: &[FlatLetter] = if gu == GeometryTag::F4 || gv == GeometryTag::F4 {
            &[FlatLetter::A, FlatLetter::B]
        } else {
            &FlatLetter::ALL
        };
        let letter = *letters.choose(rng).expect("nonempty");
        let s = if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let t = if letter.admits_orientation_reversal() && rng.random_bool(0.5) { s } else { -s };
        self.glue(u, BoundaryClass::flat(letter, s), v, BoundaryClass::flat(letter, t));
        true
    }

    fn residue(&self, i: usize) -> Rational {
        let total =
            self.cusps[i].iter().map(|c| c.defect().expect("random cusps carry defects")).fold(rat(0, 1), |a, b| a + b);
        rational::fract(&total)
    }

    /// Makes every non-complex piece's truncated signature integral by adding
    /// edges along a spanning forest of the same-world subgraph `member`.
    fn fix_residues(&mut self, rng: &mut ChaCha8Rng, member: impl Fn(GeometryTag) -> bool) {
        let k = self.geometry.len();
        let mut seen = vec![false; k];
        let adjacency: Vec<Vec<usize>> = (0..k)
            .map(|i| {
                self.edges
                    .iter()
                    .filter_map(|e| {
                        if e.0.piece == i {
                            Some(e.1.piece)
                        } else if e.1.piece == i {
                            Some(e.0.piece)
                        } else {
                            None
                        }
                    })
                    .filter(|&j| member(self.geometry[j]))
                    .collect()
            })
            .collect();
        let mut roots: Vec<usize> = (0..k).filter(|&i| member(self.geometry[i])).collect();
        // complex pieces absorb residues, so they make the best roots
        roots.sort_by_key(|&i| self.geometry[i] != GeometryTag::ComplexHyperbolic);
        for root in roots {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut order = Vec::new();
            let mut parent = vec![usize::MAX; k];
            let mut queue = VecDeque::from([root]);
            while let Some(u) = queue.pop_front() {
                order.push(u);
                for &v in &adjacency[u] {
                    if !seen[v] {
                        seen[v] = true;
                        parent[v] = u;
                        queue.push_back(v);
                    }
                }
            }
            for &v in order.iter().skip(1).rev() {
                if self.geometry[v] == GeometryTag::ComplexHyperbolic {
                    continue;
                }
                let r = self.residue(v);
                if r == rat(0, 1) {
                    continue;
                }
                let p = parent[v];
                if self.geometry[v] == GeometryTag::F4 {
                    // e/3 ≡ r (mod 1) clears the residue of sign(e) - e/3
                    let want = rational::as_i64(&(r * rat(3, 1))).expect("thirds");
                    loop {
                        let e = self.nil_euler(rng, v, p).expect("F4 edges always exist");
                        if e.rem_euclid(3) == want {
                            self.glue(v, BoundaryClass::nil_torus(e), p, BoundaryClass::nil_torus(-e));
                            break;
                        }
                    }
                } else {
                    // C with sign + has defect -2/3
                    let s = if r == rat(2, 3) { Sign::Plus } else { Sign::Minus };
                    self.glue(v, BoundaryClass::flat(FlatLetter::C, s), p, BoundaryClass::flat(FlatLetter::C, -s));
                }
            }
        }
    }
}

fn random_graph(rng: &mut ChaCha8Rng, geometries: &[GeometryTag]) -> Assembly {
    loop {
        if let Some(a) = try_random_graph(rng, geometries) {
            return a;
        }
    }
}

fn try_random_graph(rng: &mut ChaCha8Rng, geometries: &[GeometryTag]) -> Option<Assembly> {
    let single = geometries.len() == 1;
    let low = if geometries == [GeometryTag::ComplexHyperbolic] { 2 } else { 1 };
    let k = rng.random_range(low..=MAX_PIECES);
    let mut d = Draft {
        geometry: Vec::with_capacity(k),
        orientation: Vec::with_capacity(k),
        cusps: vec![Vec::new(); k],
        edges: Vec::new(),
    };
    for i in 0..k {
        let mut g = *geometries.choose(rng).expect("nonempty");
        let mut o = if rng.random_bool(0.5) { Sign::Plus } else { Sign::Minus };
        if i == 0 {
            d.geometry.push(g);
            d.orientation.push(o);
            continue;
        }
        let compatible = |g: GeometryTag, d: &Draft| -> Vec<usize> {
            (0..i)
                .filter(|&j| {
                    let h = d.geometry[j];
                    (nil_capable(g) && nil_capable(h)) || (flat_capable(g) && flat_capable(h))
                })
                .collect()
        };
        let mut candidates = compatible(g, &d);
        if candidates.is_empty() && !single {
            g = GeometryTag::F4;
            candidates = compatible(g, &d);
        }
        let p = *candidates.choose(rng)?;
        if g == GeometryTag::ComplexHyperbolic && d.geometry[p] == GeometryTag::ComplexHyperbolic {
            o = -d.orientation[p];
        }
        d.geometry.push(g);
        d.orientation.push(o);
        // a complex child of an F4 parent may still need a flat-free edge
        if !d.glue_random(rng, i, p) {
            return None;
        }
    }
    for _ in 0..rng.random_range(0..=k) {
        let (u, v) = (rng.random_range(0..k), rng.random_range(0..k));
        d.glue_random(rng, u, v);
    }
    d.fix_residues(rng, |g| flat_capable(g) && g != GeometryTag::F4);
    d.fix_residues(rng, nil_capable);

    let mut chis = Vec::with_capacity(k);
    for i in 0..k {
        chis.push(match d.geometry[i] {
            GeometryTag::RealHyperbolic => rng.random_range(1..=MAX_EULER),
            GeometryTag::H2xH2 => rng.random_range(1..=5) * rng.random_range(1..=5),
            GeometryTag::ComplexHyperbolic => {
                let cusp_sum: i64 = d.cusps[i]
                    .iter()
                    .map(|c| match c {
                        BoundaryClass::NilTorus { euler } => euler.abs(),
                        _ => 0,
                    })
                    .sum();
                let chi = rng.random_range(1..=MAX_EULER);
                chi + (cusp_sum - chi).rem_euclid(3)
            }
            _ => 0,
        });
    }
    let build = |chis: &[i64]| {
        let pieces = (0..k)
            .map(|i| {
                let tag = match d.geometry[i] {
                    GeometryTag::ComplexHyperbolic => format!("C{}", d.orientation[i]),
                    g => g.name().to_string(),
                };
                Piece::new(d.geometry[i], d.orientation[i], chis[i], d.cusps[i].clone(), format!("{tag}#{i}"))
            })
            .collect();
        Assembly::new(pieces, d.edges.clone(), "")
    };
    let a = build(&chis);
    match validate_assembly(&a).as_slice() {
        [] => Some(a),
        [Violation::Parity { .. }] => {
            let i = (0..k).find(|&i| d.geometry[i] == GeometryTag::RealHyperbolic)?;
            chis[i] += 1;
            let a = build(&chis);
            validate_assembly(&a).is_empty().then_some(a)
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assembly::{diagnose, Classification};
    use crate::rational::int;

    #[test]
    fn hirzebruch_two() {
        let x = hirzebruch_cusped(2).unwrap();
        assert_eq!(x.chi, 128);
        assert_eq!(x.cusps.len(), 64);
        assert_eq!(x.sigma_top().unwrap(), int(64));
        for n in 2..=6 {
            assert!(hirzebruch_cusped(n).unwrap().is_valid());
        }
        assert!(hirzebruch_cusped(1).is_err());
    }

    #[test]
    fn dg_pieces() {
        assert_eq!(dg_h_piece(12).unwrap().sigma_l2(), int(4));
        assert_eq!(dg_h_piece(6).unwrap().sigma_l2(), int(2));
        assert_eq!(dg_h_piece(2).unwrap().sigma_top().unwrap(), int(2));
    }

    #[test]
    fn holzapfel_profiles() {
        let p = holzapfel_piece(&[4, 4, 4, 4]).unwrap();
        assert_eq!((p.chi, p.sigma_top().unwrap()), (4, int(0)));
        let q = holzapfel_piece(&[8, 8]).unwrap();
        assert_eq!((q.chi, q.sigma_top().unwrap()), (4, int(-2)));
        assert!(holzapfel_piece(&[3, 2]).is_err());
        assert!(holzapfel_piece(&[]).is_err());
        assert!(holzapfel_piece(&[-4, 8]).is_err());
    }

    #[test]
    fn fixed_cusps() {
        assert_eq!(x_bar_piece().cusps, vec![BoundaryClass::nil_torus(-12); 2]);
        let e: Vec<_> = [4, 4, -4, -4, -6, -6].into_iter().map(BoundaryClass::nil_torus).collect();
        assert_eq!(x_prime_piece().cusps, e);
    }

    #[test]
    fn m_family() {
        let d = diagnose(&build_m(1).unwrap()).unwrap();
        assert_eq!((d.chi, d.sigma, d.classification), (12, 4, Classification::EqualityCertified));
        assert!(d.certificate.unwrap().f4_complex_only);
        let d = diagnose(&build_mprime(3).unwrap()).unwrap();
        assert_eq!((d.chi, d.sigma), (18, 6));
        assert!(build_m(0).is_err());
    }

    #[test]
    fn z_two() {
        let z = build_z(2).unwrap();
        assert_eq!(z.edges.len(), 64);
        let d = diagnose(&z).unwrap();
        assert_eq!((d.chi, d.sigma, d.slack, d.classification), (160, 32, 64, Classification::Strict));
    }

    #[test]
    fn branched_cover_two() {
        let r = branched_cover_invariants(2).unwrap();
        assert_eq!((r.chi, r.c1_squared, r.l_components, r.l_self_intersection), (128, 256, 16, -8));
        assert_eq!((r.logbmy_defect, r.minus_l_squared, r.l_component_chi), (128, 128, 0));
        assert_eq!(r.r_self_intersection, rat(-2, 1));
        assert!(branched_cover_invariants(3).is_err());
        assert!(branched_cover_invariants(0).is_err());
    }

    #[test]
    fn random_families_are_valid_and_reproducible() {
        for family in RandomFamily::ALL {
            for seed in 0..40 {
                let a = family.generate(seed);
                assert_eq!(validate_assembly(&a), vec![], "{family:?} {seed}");
                assert_eq!(a, family.generate(seed));
                diagnose(&a).unwrap();
            }
        }
    }
}
