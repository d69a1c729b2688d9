//! Finite subgroups of the unit quaternions (≅ SU(2)).
//!
//! The three exceptional groups are stored as exact quaternions over ℚ(√d).
//! Cyclic and dicyclic elements are stored as exact rotation data
//! `e^{2πi·turn} · j^s`, since `cos(2π/N)` is generally outside any fixed
//! quadratic field.

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactmath::{QuadExt, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("invalid group spec {0:?} (expected lens:N, cyclic:N, dicyclic:N, 2T, 2O or 2I)")]
    Parse(String),
    #[error("group parameter must be at least 1")]
    ZeroOrder,
    #[error("group axiom violated: {0}")]
    Axiom(String),
}

/// One of the five families of finite subgroups Γ ⊂ SU(2).
/// Serializes as its display string (`lens:3`, `2I`, ...).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum GroupSpec {
    Cyclic(u32),
    Dicyclic(u32),
    BinaryTetrahedral,
    BinaryOctahedral,
    BinaryIcosahedral,
}

impl GroupSpec {
    pub fn order(&self) -> u64 {
        match *self {
            GroupSpec::Cyclic(n) => u64::from(n),
            GroupSpec::Dicyclic(n) => 4 * u64::from(n),
            GroupSpec::BinaryTetrahedral => 24,
            GroupSpec::BinaryOctahedral => 48,
            GroupSpec::BinaryIcosahedral => 120,
        }
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(
            self,
            GroupSpec::BinaryTetrahedral | GroupSpec::BinaryOctahedral | GroupSpec::BinaryIcosahedral
        )
    }

    /// Radicand of the coordinate field for the exceptional groups.
    pub fn field(&self) -> u32 {
        match self {
            GroupSpec::BinaryOctahedral => 2,
            GroupSpec::BinaryIcosahedral => 5,
            _ => 1,
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "lens:{n}"),
            GroupSpec::Dicyclic(n) => write!(f, "dicyclic:{n}"),
            GroupSpec::BinaryTetrahedral => write!(f, "2T"),
            GroupSpec::BinaryOctahedral => write!(f, "2O"),
            GroupSpec::BinaryIcosahedral => write!(f, "2I"),
        }
    }
}

impl From<GroupSpec> for String {
    fn from(g: GroupSpec) -> String {
        g.to_string()
    }
}

impl TryFrom<String> for GroupSpec {
    type Error = GroupError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

impl FromStr for GroupSpec {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().to_ascii_lowercase();
        let bad = || GroupError::Parse(s.to_string());
        match t.as_str() {
            "2t" | "binary-tetrahedral" => return Ok(GroupSpec::BinaryTetrahedral),
            "2o" | "binary-octahedral" => return Ok(GroupSpec::BinaryOctahedral),
            "2i" | "binary-icosahedral" | "poincare" => return Ok(GroupSpec::BinaryIcosahedral),
            _ => {}
        }
        let (family, param) = t.split_once(':').ok_or_else(bad)?;
        let n: u32 = param.trim().parse().map_err(|_| bad())?;
        if n == 0 {
            return Err(GroupError::ZeroOrder);
        }
        match family.trim() {
            "lens" | "cyclic" => Ok(GroupSpec::Cyclic(n)),
            "dicyclic" | "binary-dihedral" => Ok(GroupSpec::Dicyclic(n)),
            _ => Err(bad()),
        }
    }
}

/// Unit quaternion `w + x i + y j + z k` with coordinates in one field ℚ(√d).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct UnitQuaternion {
    pub w: QuadExt,
    pub x: QuadExt,
    pub y: QuadExt,
    pub z: QuadExt,
}

impl UnitQuaternion {
    pub fn new(w: QuadExt, x: QuadExt, y: QuadExt, z: QuadExt) -> Self {
        UnitQuaternion { w, x, y, z }
    }

    pub fn identity(d: u32) -> Self {
        let zero = QuadExt::zero(d);
        UnitQuaternion::new(QuadExt::one(d), zero.clone(), zero.clone(), zero)
    }

    pub fn norm_squared(&self) -> QuadExt {
        &(&(&self.w * &self.w) + &(&self.x * &self.x)) + &(&(&self.y * &self.y) + &(&self.z * &self.z))
    }

    pub fn conjugate(&self) -> Self {
        UnitQuaternion::new(self.w.clone(), -&self.x, -&self.y, -&self.z)
    }

    /// Hamilton product.
    pub fn mul(&self, o: &UnitQuaternion) -> Self {
        let (a1, b1, c1, d1) = (&self.w, &self.x, &self.y, &self.z);
        let (a2, b2, c2, d2) = (&o.w, &o.x, &o.y, &o.z);
        UnitQuaternion::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }

    pub fn coords(&self) -> [&QuadExt; 4] {
        [&self.w, &self.x, &self.y, &self.z]
    }
}

/// `e^{2πi·turn} · j^s`, the form of every cyclic and dicyclic element.
///
/// `turn` is reduced into `[0, 1)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RotationElement {
    turn: Rational,
    with_j: bool,
}

fn reduce_turn(t: Rational) -> Rational {
    let floor = t.numer().div_floor(t.denom());
    t - Rational::from(floor)
}

impl RotationElement {
    pub fn new(turn: Rational, with_j: bool) -> Self {
        RotationElement { turn: reduce_turn(turn), with_j }
    }

    pub fn turn(&self) -> &Rational {
        &self.turn
    }

    pub fn with_j(&self) -> bool {
        self.with_j
    }

    /// Uses `j e^{iβ} = e^{−iβ} j` and `j² = −1 = e^{iπ}`.
    pub fn mul(&self, o: &RotationElement) -> Self {
        let mut turn = if self.with_j { &self.turn - &o.turn } else { &self.turn + &o.turn };
        if self.with_j && o.with_j {
            turn += Rational::new(1, 2);
        }
        RotationElement::new(turn, self.with_j ^ o.with_j)
    }

    pub fn inverse(&self) -> Self {
        if self.with_j {
            // (e^{iα} j)^{-1} = −j e^{−iα} = e^{iα} e^{iπ} j
            RotationElement::new(&self.turn + &Rational::new(1, 2), true)
        } else {
            RotationElement::new(-&self.turn, false)
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.with_j && self.turn.is_zero()
    }

    /// `(numerator, denominator)` of the turn, for serialization.
    pub fn angle_pair(&self) -> (u64, u64) {
        (
            self.turn.numer().to_u64().expect("turn numerator"),
            self.turn.denom().to_u64().expect("turn denominator"),
        )
    }

    pub fn real_part(&self) -> RealPart {
        if self.with_j {
            RealPart::Exact(QuadExt::int(0, 1))
        } else {
            RealPart::cos_turn(&self.turn)
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum GroupElement {
    Quaternion(UnitQuaternion),
    Rotation(RotationElement),
}

impl GroupElement {
    pub fn mul(&self, o: &GroupElement) -> Result<GroupElement, GroupError> {
        match (self, o) {
            (GroupElement::Quaternion(a), GroupElement::Quaternion(b)) => {
                Ok(GroupElement::Quaternion(a.mul(b)))
            }
            (GroupElement::Rotation(a), GroupElement::Rotation(b)) => {
                Ok(GroupElement::Rotation(a.mul(b)))
            }
            _ => Err(GroupError::Axiom("mixed element representations".into())),
        }
    }

    pub fn inverse(&self) -> GroupElement {
        match self {
            GroupElement::Quaternion(q) => GroupElement::Quaternion(q.conjugate()),
            GroupElement::Rotation(r) => GroupElement::Rotation(r.inverse()),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            GroupElement::Quaternion(q) => *q == UnitQuaternion::identity(q.w.d()),
            GroupElement::Rotation(r) => r.is_identity(),
        }
    }

    pub fn real_part(&self) -> RealPart {
        match self {
            GroupElement::Quaternion(q) => RealPart::Exact(q.w.clone()),
            GroupElement::Rotation(r) => r.real_part(),
        }
    }
}

/// Exact descriptor of `Re γ`.
///
/// `Cos { turn }` stands for `cos(2π·turn)` and is used only when that value
/// is irrational; `turn = p/q` is reduced with `0 < p < q/2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RealPart {
    Exact(QuadExt),
    Cos { turn: Rational },
}

impl RealPart {
    pub fn cos_turn(turn: &Rational) -> RealPart {
        let t = reduce_turn(turn.clone());
        // cos(2πt) = cos(2π(1 − t))
        let t = if t > Rational::new(1, 2) { Rational::one() - t } else { t };
        let q = t.denom().to_u64().expect("turn denominator");
        let exact = |n: i64, m: i64| RealPart::Exact(QuadExt::rational(Rational::new(n, m), 1));
        match (q, t.numer().to_u64().expect("turn numerator")) {
            (1, _) => exact(1, 1),
            (2, _) => exact(-1, 1),
            (3, _) => exact(-1, 2),
            (4, _) => exact(0, 1),
            (6, _) => exact(1, 2),
            _ => RealPart::Cos { turn: t },
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            RealPart::Exact(x) => x.to_f64(),
            RealPart::Cos { turn } => (2.0 * std::f64::consts::PI * turn.to_f64()).cos(),
        }
    }
}

impl fmt::Display for RealPart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RealPart::Exact(x) => write!(f, "{x}"),
            RealPart::Cos { turn } => write!(f, "cos(2π·{turn})"),
        }
    }
}

/// Multiset `{Re γ : γ ∈ Γ}`.
#[derive(Clone, Debug, PartialEq)]
pub struct Census {
    pub entries: Vec<(RealPart, u64)>,
}

impl Census {
    pub fn from_values(values: impl IntoIterator<Item = RealPart>) -> Self {
        let mut counts: HashMap<RealPart, u64> = HashMap::new();
        for v in values {
            *counts.entry(v).or_default() += 1;
        }
        let mut entries: Vec<(RealPart, u64)> = counts.into_iter().collect();
        entries.sort_by(|a, b| {
            b.0.to_f64().total_cmp(&a.0.to_f64()).then_with(|| a.0.to_string().cmp(&b.0.to_string()))
        });
        Census { entries }
    }

    pub fn total(&self) -> u64 {
        self.entries.iter().map(|(_, c)| c).sum()
    }

    pub fn count_of(&self, value: &RealPart) -> u64 {
        self.entries.iter().find(|(v, _)| v == value).map_or(0, |(_, c)| *c)
    }
}

fn q(a: Rational, d: u32) -> QuadExt {
    QuadExt::rational(a, d)
}

/// The 24 Hurwitz units `±1, ±i, ±j, ±k, ½(±1 ± i ± j ± k)` over ℚ(√d).
fn hurwitz_units(d: u32) -> Vec<UnitQuaternion> {
    let mut out = Vec::with_capacity(24);
    for axis in 0..4 {
        for sign in [1, -1] {
            let mut c = [0i64; 4];
            c[axis] = sign;
            let [w, x, y, z] = c.map(|v| QuadExt::int(v, d));
            out.push(UnitQuaternion::new(w, x, y, z));
        }
    }
    for signs in 0..16u32 {
        let c: [QuadExt; 4] = std::array::from_fn(|i| {
            let s = if signs >> i & 1 == 1 { -1 } else { 1 };
            q(Rational::new(s, 2), d)
        });
        let [w, x, y, z] = c;
        out.push(UnitQuaternion::new(w, x, y, z));
    }
    out
}

fn binary_octahedral() -> Vec<UnitQuaternion> {
    let mut out = hurwitz_units(2);
    let r = QuadExt::new(Rational::zero(), Rational::new(1, 2), 2).expect("√2/2");
    for i in 0..4 {
        for j in (i + 1)..4 {
            for (si, sj) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let mut c: [QuadExt; 4] = std::array::from_fn(|_| QuadExt::zero(2));
                c[i] = if si > 0 { r.clone() } else { -&r };
                c[j] = if sj > 0 { r.clone() } else { -&r };
                let [w, x, y, z] = c;
                out.push(UnitQuaternion::new(w, x, y, z));
            }
        }
    }
    out
}

fn even_permutations_of_4() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| ((i + 1)..4).all(|j| p[i] != p[j]));
                    if !distinct {
                        continue;
                    }
                    let inversions = (0..4)
                        .flat_map(|i| ((i + 1)..4).map(move |j| (i, j)))
                        .filter(|&(i, j)| p[i] > p[j])
                        .count();
                    if inversions % 2 == 0 {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Hurwitz units plus the 96 icosians: even coordinate permutations of
/// `½(±1, ±φ, ±φ⁻¹, 0)`, `φ = (1+√5)/2`.
fn binary_icosahedral() -> Vec<UnitQuaternion> {
    let mut out = hurwitz_units(5);
    let half = q(Rational::new(1, 2), 5);
    let half_phi = QuadExt::new(Rational::new(1, 4), Rational::new(1, 4), 5).expect("φ/2");
    let half_phi_inv = QuadExt::new(Rational::new(-1, 4), Rational::new(1, 4), 5).expect("φ⁻¹/2");
    let base = [half, half_phi, half_phi_inv, QuadExt::zero(5)];
    for perm in even_permutations_of_4() {
        for signs in 0..8u32 {
            let signed: [QuadExt; 4] = std::array::from_fn(|i| {
                if i < 3 && signs >> i & 1 == 1 {
                    -&base[i]
                } else {
                    base[i].clone()
                }
            });
            let c: [QuadExt; 4] = std::array::from_fn(|i| signed[perm[i]].clone());
            let [w, x, y, z] = c;
            out.push(UnitQuaternion::new(w, x, y, z));
        }
    }
    out
}

/// All elements of Γ, exactly `spec.order()` of them.
pub fn enumerate(spec: GroupSpec) -> Vec<GroupElement> {
    match spec {
        GroupSpec::Cyclic(n) => (0..n)
            .map(|t| {
                GroupElement::Rotation(RotationElement::new(Rational::new(t.into(), n.into()), false))
            })
            .collect(),
        GroupSpec::Dicyclic(n) => [false, true]
            .into_iter()
            .flat_map(|j| {
                (0..2 * n).map(move |t| {
                    GroupElement::Rotation(RotationElement::new(
                        Rational::new(t.into(), (2 * n).into()),
                        j,
                    ))
                })
            })
            .collect(),
        GroupSpec::BinaryTetrahedral => {
            hurwitz_units(1).into_iter().map(GroupElement::Quaternion).collect()
        }
        GroupSpec::BinaryOctahedral => {
            binary_octahedral().into_iter().map(GroupElement::Quaternion).collect()
        }
        GroupSpec::BinaryIcosahedral => {
            binary_icosahedral().into_iter().map(GroupElement::Quaternion).collect()
        }
    }
}

pub fn real_part_census(spec: GroupSpec) -> Census {
    Census::from_values(enumerate(spec).iter().map(GroupElement::real_part))
}

/// Exhaustive check of distinctness, unit norm, identity, inverses and closure.
pub fn verify_group_axioms(elements: &[GroupElement]) -> Result<(), GroupError> {
    let set: HashSet<&GroupElement> = elements.iter().collect();
    if set.len() != elements.len() {
        return Err(GroupError::Axiom("duplicate elements".into()));
    }
    if !elements.iter().any(GroupElement::is_identity) {
        return Err(GroupError::Axiom("identity missing".into()));
    }
    for g in elements {
        if let GroupElement::Quaternion(q) = g {
            if q.norm_squared() != QuadExt::one(q.w.d()) {
                return Err(GroupError::Axiom(format!("non-unit element {q:?}")));
            }
        }
        if !set.contains(&g.inverse()) {
            return Err(GroupError::Axiom(format!("inverse of {g:?} missing")));
        }
        for h in elements {
            if !set.contains(&g.mul(h)?) {
                return Err(GroupError::Axiom(format!("product {g:?}·{h:?} escapes")));
            }
        }
    }
    Ok(())
}

/// Multiplicative order of an element (search up to `bound`).
pub fn element_order(g: &GroupElement, bound: u64) -> Option<u64> {
    let mut acc = g.clone();
    for k in 1..=bound {
        if acc.is_identity() {
            return Some(k);
        }
        acc = acc.mul(g).ok()?;
    }
    None
}

impl Serialize for GroupElement {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        match self {
            GroupElement::Quaternion(q) => q.coords().serialize(serializer),
            GroupElement::Rotation(r) => {
                let mut st = serializer.serialize_struct("Rotation", 2)?;
                let (k, n) = r.angle_pair();
                st.serialize_field("angle", &[k, n])?;
                st.serialize_field("j", &r.with_j)?;
                st.end()
            }
        }
    }
}

/// Ramanujan's sum `c_q(e) = Σ_{gcd(p,q)=1, 1≤p≤q} cos(2π p e / q)`, always an integer.
pub fn ramanujan_sum(q: u64, e: i64) -> i64 {
    let g = Integer::gcd(&q, &e.unsigned_abs());
    let mut total = 0i64;
    for d in 1..=g {
        if g.is_multiple_of(d) {
            total += mobius(q / d) * d as i64;
        }
    }
    total
}

pub fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

pub fn euler_phi(n: u64) -> u64 {
    (1..=n).filter(|&k| Integer::gcd(&k, &n) == 1).count() as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(n: i64, m: i64) -> RealPart {
        RealPart::Exact(QuadExt::rational(Rational::new(n, m), 1))
    }

    #[test]
    fn parse_and_display() {
        for s in ["lens:8", "dicyclic:3", "2T", "2O", "2I"] {
            assert_eq!(s.parse::<GroupSpec>().unwrap().to_string(), s);
        }
        assert_eq!("cyclic:5".parse::<GroupSpec>().unwrap(), GroupSpec::Cyclic(5));
        assert!("lens:0".parse::<GroupSpec>().is_err());
        assert!("lens".parse::<GroupSpec>().is_err());
        assert!("torus:3".parse::<GroupSpec>().is_err());
        assert!("lens:x".parse::<GroupSpec>().is_err());
    }

    #[test]
    fn quaternion_group_of_order_eight() {
        let els = enumerate(GroupSpec::Dicyclic(2));
        assert_eq!(els.len(), 8);
        verify_group_axioms(&els).unwrap();
        let census = real_part_census(GroupSpec::Dicyclic(2));
        assert_eq!(census.count_of(&exact(1, 1)), 1);
        assert_eq!(census.count_of(&exact(-1, 1)), 1);
        assert_eq!(census.count_of(&exact(0, 1)), 6);
        // every element has order dividing 4
        for g in &els {
            assert!(4 % element_order(g, 8).unwrap() == 0);
        }
    }

    #[test]
    fn binary_tetrahedral_hurwitz_units() {
        let els = enumerate(GroupSpec::BinaryTetrahedral);
        assert_eq!(els.len(), 24);
        let halves = els
            .iter()
            .filter(|g| match g {
                GroupElement::Quaternion(q) => q.coords().iter().all(|c| {
                    c.as_rational().is_some_and(|r| r.abs() == Rational::new(1, 2))
                }),
                _ => false,
            })
            .count();
        assert_eq!(halves, 16);
        verify_group_axioms(&els).unwrap();
        let census = real_part_census(GroupSpec::BinaryTetrahedral);
        assert_eq!(census.count_of(&exact(1, 1)), 1);
        assert_eq!(census.count_of(&exact(-1, 1)), 1);
        assert_eq!(census.count_of(&exact(0, 1)), 6);
        assert_eq!(census.count_of(&exact(1, 2)), 8);
        assert_eq!(census.count_of(&exact(-1, 2)), 8);
    }

    #[test]
    fn exceptional_groups_satisfy_axioms() {
        for spec in [GroupSpec::BinaryOctahedral, GroupSpec::BinaryIcosahedral] {
            let els = enumerate(spec);
            assert_eq!(els.len() as u64, spec.order());
            verify_group_axioms(&els).unwrap();
        }
    }

    #[test]
    fn trivial_group_census() {
        let census = real_part_census(GroupSpec::Cyclic(1));
        assert_eq!(census.entries, vec![(exact(1, 1), 1)]);
    }

    #[test]
    fn cyclic_and_dicyclic_axioms_and_orders() {
        for n in 1..=12 {
            let els = enumerate(GroupSpec::Cyclic(n));
            assert_eq!(els.len(), n as usize);
            verify_group_axioms(&els).unwrap();
            assert_eq!(real_part_census(GroupSpec::Cyclic(n)).total(), u64::from(n));
        }
        for n in 1..=8 {
            let els = enumerate(GroupSpec::Dicyclic(n));
            assert_eq!(els.len(), 4 * n as usize);
            verify_group_axioms(&els).unwrap();
        }
    }

    #[test]
    fn rotation_subgroup_of_dicyclic_is_cyclic_of_twice_the_parameter() {
        for n in 1..=6u32 {
            let rot: HashSet<GroupElement> = enumerate(GroupSpec::Dicyclic(n))
                .into_iter()
                .filter(|g| matches!(g, GroupElement::Rotation(r) if !r.with_j()))
                .collect();
            let cyc: HashSet<GroupElement> = enumerate(GroupSpec::Cyclic(2 * n)).into_iter().collect();
            assert_eq!(rot, cyc);
            // and it is generated by B = e^{iπ/n}
            let b = GroupElement::Rotation(RotationElement::new(Rational::new(1, 2 * i64::from(n)), false));
            assert_eq!(element_order(&b, 100), Some(2 * u64::from(n)));
        }
    }

    #[test]
    fn irrational_cosines_are_symbolic() {
        let census = real_part_census(GroupSpec::Cyclic(5));
        assert_eq!(census.count_of(&exact(1, 1)), 1);
        assert_eq!(census.count_of(&RealPart::Cos { turn: Rational::new(1, 5) }), 2);
        assert_eq!(census.count_of(&RealPart::Cos { turn: Rational::new(2, 5) }), 2);
        let c6 = real_part_census(GroupSpec::Cyclic(6));
        assert!(c6.entries.iter().all(|(v, _)| matches!(v, RealPart::Exact(_))));
    }

    #[test]
    fn unit_norm_is_exact() {
        for spec in [GroupSpec::BinaryOctahedral, GroupSpec::BinaryIcosahedral] {
            for g in enumerate(spec) {
                let GroupElement::Quaternion(q) = g else { unreachable!() };
                assert_eq!(q.norm_squared(), QuadExt::one(spec.field()));
            }
        }
    }

    #[test]
    fn ramanujan_sums() {
        // c_q(0) = φ(q), c_q(1) = μ(q)
        for q in 1..30u64 {
            assert_eq!(ramanujan_sum(q, 0), euler_phi(q) as i64);
            assert_eq!(ramanujan_sum(q, 1), mobius(q));
            let brute: f64 = (1..=q)
                .filter(|&p| Integer::gcd(&p, &q) == 1)
                .map(|p| (2.0 * std::f64::consts::PI * (p as f64) * 7.0 / q as f64).cos())
                .sum();
            assert!((brute - ramanujan_sum(q, 7) as f64).abs() < 1e-9);
        }
    }
}
