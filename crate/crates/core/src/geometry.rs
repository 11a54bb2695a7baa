//! Points of F_q², quadratic forms, spheres, rotations, and rigid motions.
//!
//! The distance between points is Q(x - y) for a non-degenerate binary
//! quadratic form Q; the Euclidean case is Q(x) = x1² + x2². Rigid motions
//! are x ↦ O(x) + τ with O in the rotation group SO₂(F_q); they preserve
//! every pairwise Euclidean distance, and a triangle's ordered signature of
//! pairwise distances is a complete congruence invariant once the triangle
//! is non-degenerate.

use crate::field::{FieldCtx, FieldElement};
use crate::{Error, Result};

/// A point of F_q².
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Point {
    pub x1: FieldElement,
    pub x2: FieldElement,
}

impl Point {
    pub fn new(x1: FieldElement, x2: FieldElement) -> Self {
        Point { x1, x2 }
    }

    pub fn origin(ctx: &FieldCtx) -> Self {
        Point::new(ctx.zero(), ctx.zero())
    }

    /// Index in the fixed vertex enumeration: lexicographic on (x1, x2).
    #[inline(always)]
    pub fn index(self, ctx: &FieldCtx) -> usize {
        self.x1.index() * ctx.q() as usize + self.x2.index()
    }

    #[inline(always)]
    pub fn from_index(ctx: &FieldCtx, i: usize) -> Self {
        let q = ctx.q() as usize;
        debug_assert!(i < q * q);
        Point::new(ctx.from_index(i / q), ctx.from_index(i % q))
    }

    #[inline(always)]
    pub fn add(self, ctx: &FieldCtx, other: Point) -> Point {
        Point::new(ctx.add(self.x1, other.x1), ctx.add(self.x2, other.x2))
    }

    #[inline(always)]
    pub fn sub(self, ctx: &FieldCtx, other: Point) -> Point {
        Point::new(ctx.sub(self.x1, other.x1), ctx.sub(self.x2, other.x2))
    }

    #[inline(always)]
    pub fn neg(self, ctx: &FieldCtx) -> Point {
        Point::new(ctx.neg(self.x1), ctx.neg(self.x2))
    }
}

/// All q² points in vertex-enumeration order.
pub fn all_points(ctx: &FieldCtx) -> impl Iterator<Item = Point> + '_ {
    let q = ctx.q() as usize;
    (0..q * q).map(move |i| Point::from_index(ctx, i))
}

/// The Euclidean norm ‖x‖ = x1² + x2².
#[inline]
pub fn norm(ctx: &FieldCtx, x: Point) -> FieldElement {
    ctx.add(ctx.mul(x.x1, x.x1), ctx.mul(x.x2, x.x2))
}

/// Binary quadratic form Q(x) = a·x1² + b·x1·x2 + c·x2².
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct QuadraticForm {
    pub a: FieldElement,
    pub b: FieldElement,
    pub c: FieldElement,
}

impl QuadraticForm {
    pub fn new(a: FieldElement, b: FieldElement, c: FieldElement) -> Self {
        QuadraticForm { a, b, c }
    }

    /// The Euclidean norm as a form: a = c = 1, b = 0.
    pub fn euclidean(ctx: &FieldCtx) -> Self {
        QuadraticForm::new(ctx.one(), ctx.zero(), ctx.one())
    }

    pub fn is_euclidean(&self, ctx: &FieldCtx) -> bool {
        *self == Self::euclidean(ctx)
    }

    /// Discriminant b² - 4ac; the form is non-degenerate iff this is nonzero.
    pub fn discriminant(&self, ctx: &FieldCtx) -> FieldElement {
        let b2 = ctx.mul(self.b, self.b);
        let four = ctx.from_int(4);
        ctx.sub(b2, ctx.mul(four, ctx.mul(self.a, self.c)))
    }

    pub fn is_degenerate(&self, ctx: &FieldCtx) -> bool {
        self.discriminant(ctx) == ctx.zero()
    }

    #[inline]
    pub fn eval(&self, ctx: &FieldCtx, x: Point) -> FieldElement {
        let t1 = ctx.mul(self.a, ctx.mul(x.x1, x.x1));
        let t2 = ctx.mul(self.b, ctx.mul(x.x1, x.x2));
        let t3 = ctx.mul(self.c, ctx.mul(x.x2, x.x2));
        ctx.add(ctx.add(t1, t2), t3)
    }
}

/// {x ∈ F_q² : Q(x) = a}, in vertex-enumeration order.
/// Errors on degenerate forms.
pub fn sphere(ctx: &FieldCtx, form: &QuadraticForm, a: FieldElement) -> Result<Vec<Point>> {
    if form.is_degenerate(ctx) {
        return Err(Error::DegenerateForm);
    }
    Ok(all_points(ctx).filter(|&x| form.eval(ctx, x) == a).collect())
}

/// A 2×2 matrix over F_q, used for the rotations of SO₂.
#[derive(Copy, Clone, PartialEq, Eq, Hash, Debug)]
pub struct Rotation {
    pub m11: FieldElement,
    pub m12: FieldElement,
    pub m21: FieldElement,
    pub m22: FieldElement,
}

impl Rotation {
    pub fn identity(ctx: &FieldCtx) -> Self {
        Rotation {
            m11: ctx.one(),
            m12: ctx.zero(),
            m21: ctx.zero(),
            m22: ctx.one(),
        }
    }

    #[inline(always)]
    pub fn apply(&self, ctx: &FieldCtx, x: Point) -> Point {
        Point::new(
            ctx.add(ctx.mul(self.m11, x.x1), ctx.mul(self.m12, x.x2)),
            ctx.add(ctx.mul(self.m21, x.x1), ctx.mul(self.m22, x.x2)),
        )
    }

    pub fn det(&self, ctx: &FieldCtx) -> FieldElement {
        ctx.sub(ctx.mul(self.m11, self.m22), ctx.mul(self.m12, self.m21))
    }

    /// MᵀM = I, checked entrywise.
    pub fn is_orthogonal(&self, ctx: &FieldCtx) -> bool {
        let col1 = ctx.add(ctx.mul(self.m11, self.m11), ctx.mul(self.m21, self.m21));
        let col2 = ctx.add(ctx.mul(self.m12, self.m12), ctx.mul(self.m22, self.m22));
        let cross = ctx.add(ctx.mul(self.m11, self.m12), ctx.mul(self.m21, self.m22));
        col1 == ctx.one() && col2 == ctx.one() && cross == ctx.zero()
    }

    pub fn transpose(&self) -> Self {
        Rotation {
            m11: self.m11,
            m12: self.m21,
            m21: self.m12,
            m22: self.m22,
        }
    }

    pub fn compose(&self, ctx: &FieldCtx, other: &Rotation) -> Rotation {
        Rotation {
            m11: ctx.add(ctx.mul(self.m11, other.m11), ctx.mul(self.m12, other.m21)),
            m12: ctx.add(ctx.mul(self.m11, other.m12), ctx.mul(self.m12, other.m22)),
            m21: ctx.add(ctx.mul(self.m21, other.m11), ctx.mul(self.m22, other.m21)),
            m22: ctx.add(ctx.mul(self.m21, other.m12), ctx.mul(self.m22, other.m22)),
        }
    }
}

/// All rotations of SO₂(F_q), enumerated as ((u, -v), (v, u)) over the circle
/// u² + v² = 1, in (u, v) index order. The group has order q - χ(-1).
/// `so2_exhaustive` is the definition-level reference; equality of the two is
/// checked in tests at small q.
pub fn so2_elements(ctx: &FieldCtx) -> Vec<Rotation> {
    let mut out = Vec::new();
    for u in ctx.elements() {
        for v in ctx.elements() {
            let circ = ctx.add(ctx.mul(u, u), ctx.mul(v, v));
            if circ == ctx.one() {
                out.push(Rotation {
                    m11: u,
                    m12: ctx.neg(v),
                    m21: v,
                    m22: u,
                });
            }
        }
    }
    out
}

/// Brute-force scan of all q⁴ matrices for MᵀM = I and det M = 1.
pub fn so2_exhaustive(ctx: &FieldCtx) -> Vec<Rotation> {
    let mut out = Vec::new();
    for m11 in ctx.elements() {
        for m12 in ctx.elements() {
            for m21 in ctx.elements() {
                for m22 in ctx.elements() {
                    let r = Rotation { m11, m12, m21, m22 };
                    if r.is_orthogonal(ctx) && r.det(ctx) == ctx.one() {
                        out.push(r);
                    }
                }
            }
        }
    }
    out
}

/// The full orthogonal group O₂(F_q): the rotations together with the
/// reflections ((u, v), (v, -u)) over the circle u² + v² = 1. Order
/// 2(q - χ(-1)). Reflections are not rigid motions here; they exist to
/// verify how congruence classes split by orientation.
pub fn orthogonal_elements(ctx: &FieldCtx) -> Vec<Rotation> {
    let mut out = so2_elements(ctx);
    for u in ctx.elements() {
        for v in ctx.elements() {
            let circ = ctx.add(ctx.mul(u, u), ctx.mul(v, v));
            if circ == ctx.one() {
                out.push(Rotation {
                    m11: u,
                    m12: v,
                    m21: v,
                    m22: ctx.neg(u),
                });
            }
        }
    }
    out
}

/// A rigid motion x ↦ O(x) + τ.
#[derive(Copy, Clone, PartialEq, Eq, Debug)]
pub struct RigidMotion {
    pub rotation: Rotation,
    pub translation: Point,
}

impl RigidMotion {
    pub fn identity(ctx: &FieldCtx) -> Self {
        RigidMotion {
            rotation: Rotation::identity(ctx),
            translation: Point::origin(ctx),
        }
    }

    pub fn translation(ctx: &FieldCtx, tau: Point) -> Self {
        RigidMotion {
            rotation: Rotation::identity(ctx),
            translation: tau,
        }
    }

    #[inline(always)]
    pub fn apply(&self, ctx: &FieldCtx, x: Point) -> Point {
        self.rotation.apply(ctx, x).add(ctx, self.translation)
    }

    /// self ∘ other: first `other`, then `self`.
    pub fn compose(&self, ctx: &FieldCtx, other: &RigidMotion) -> RigidMotion {
        RigidMotion {
            rotation: self.rotation.compose(ctx, &other.rotation),
            translation: self
                .rotation
                .apply(ctx, other.translation)
                .add(ctx, self.translation),
        }
    }

    /// Inverse motion x ↦ Oᵀ(x - τ). Rotations are orthogonal, so the
    /// transpose is the inverse rotation.
    pub fn inverse(&self, ctx: &FieldCtx) -> RigidMotion {
        let rt = self.rotation.transpose();
        RigidMotion {
            rotation: rt,
            translation: rt.apply(ctx, self.translation).neg(ctx),
        }
    }
}

/// The whole rigid-motion group, rotations in `so2_elements` order crossed
/// with translations in vertex order. Size q²·(q - χ(-1)).
pub fn rigid_motion_group(ctx: &FieldCtx) -> Vec<RigidMotion> {
    let rotations = so2_elements(ctx);
    let mut out = Vec::with_capacity(rotations.len() * (ctx.q() * ctx.q()) as usize);
    for rot in &rotations {
        for tau in all_points(ctx) {
            out.push(RigidMotion {
                rotation: *rot,
                translation: tau,
            });
        }
    }
    out
}

/// A motion as a permutation of vertex indices; index-triple loops over
/// orbits run much faster on this form.
pub fn motion_permutation(ctx: &FieldCtx, m: &RigidMotion) -> Vec<u32> {
    all_points(ctx)
        .map(|pt| m.apply(ctx, pt).index(ctx) as u32)
        .collect()
}

/// Ordered triple of pairwise Euclidean norms of an ordered point triple.
#[derive(Copy, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct TriangleSignature {
    pub s_xy: FieldElement,
    pub s_xz: FieldElement,
    pub s_yz: FieldElement,
}

impl TriangleSignature {
    /// Flat index in [0, q³), for dense census tables.
    #[inline(always)]
    pub fn flat_index(self, ctx: &FieldCtx) -> usize {
        let q = ctx.q() as usize;
        (self.s_xy.index() * q + self.s_xz.index()) * q + self.s_yz.index()
    }

    pub fn from_flat_index(ctx: &FieldCtx, i: usize) -> Self {
        let q = ctx.q() as usize;
        TriangleSignature {
            s_xy: ctx.from_index(i / (q * q)),
            s_xz: ctx.from_index(i / q % q),
            s_yz: ctx.from_index(i % q),
        }
    }

    /// All three edge norms nonzero.
    pub fn all_nonzero(self, ctx: &FieldCtx) -> bool {
        let z = ctx.zero();
        self.s_xy != z && self.s_xz != z && self.s_yz != z
    }
}

/// (‖x-y‖, ‖x-z‖, ‖y-z‖) of the ordered triple.
#[inline]
pub fn signature(ctx: &FieldCtx, x: Point, y: Point, z: Point) -> TriangleSignature {
    TriangleSignature {
        s_xy: norm(ctx, x.sub(ctx, y)),
        s_xz: norm(ctx, x.sub(ctx, z)),
        s_yz: norm(ctx, y.sub(ctx, z)),
    }
}

/// det(y-x, z-x): the oriented area of the triple. Translations and
/// rotations preserve it exactly (rotations have determinant one);
/// reflections negate it. Together with the signature it is a complete
/// congruence invariant for non-degenerate triples.
#[inline]
pub fn orientation(ctx: &FieldCtx, x: Point, y: Point, z: Point) -> FieldElement {
    let u = y.sub(ctx, x);
    let w = z.sub(ctx, x);
    ctx.sub(ctx.mul(u.x1, w.x2), ctx.mul(u.x2, w.x1))
}

/// A triple is degenerate iff det(y-x, z-x) = 0: collinear, including
/// repeated points.
#[inline]
pub fn is_degenerate(ctx: &FieldCtx, x: Point, y: Point, z: Point) -> bool {
    orientation(ctx, x, y, z) == ctx.zero()
}

/// Searches the rigid-motion group for a motion taking the first ordered
/// triple onto the second, pointwise. Every candidate motion sending
/// t1[0] to t2[0] has its translation determined by the rotation, so
/// looping over SO₂ with τ = t2[0] - O(t1[0]) covers the whole group;
/// tests compare against the literal q²·|SO₂| scan.
pub fn find_rigid_motion(
    ctx: &FieldCtx,
    t1: [Point; 3],
    t2: [Point; 3],
) -> Option<RigidMotion> {
    find_affine_map(ctx, &so2_elements(ctx), t1, t2)
}

/// Same search over the reflection-extended group O₂ ⋉ translations. A
/// non-degenerate triangle is never a rigid-motion image of its mirror, so
/// this wider search is what succeeds across a whole equal-signature class.
pub fn find_isometry(ctx: &FieldCtx, t1: [Point; 3], t2: [Point; 3]) -> Option<RigidMotion> {
    find_affine_map(ctx, &orthogonal_elements(ctx), t1, t2)
}

fn find_affine_map(
    ctx: &FieldCtx,
    linear_parts: &[Rotation],
    t1: [Point; 3],
    t2: [Point; 3],
) -> Option<RigidMotion> {
    for rot in linear_parts {
        let tau = t2[0].sub(ctx, rot.apply(ctx, t1[0]));
        let m = RigidMotion {
            rotation: *rot,
            translation: tau,
        };
        if m.apply(ctx, t1[1]) == t2[1] && m.apply(ctx, t1[2]) == t2[2] {
            debug_assert_eq!(m.apply(ctx, t1[0]), t2[0]);
            return Some(m);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn ctx(q: u64) -> FieldCtx {
        FieldCtx::new(q).unwrap()
    }

    fn pt(ctx: &FieldCtx, a: i64, b: i64) -> Point {
        Point::new(ctx.from_int(a), ctx.from_int(b))
    }

    #[test]
    fn norm_examples() {
        let f5 = ctx(5);
        assert_eq!(norm(&f5, pt(&f5, 1, 2)), f5.zero());
        assert_eq!(norm(&f5, pt(&f5, 0, 0)), f5.zero());
        let f3 = ctx(3);
        assert_eq!(norm(&f3, pt(&f3, 1, 1)), f3.from_int(2));
    }

    #[test]
    fn eval_form_examples() {
        let f5 = ctx(5);
        let e = QuadraticForm::euclidean(&f5);
        let x = pt(&f5, 1, 2);
        assert_eq!(e.eval(&f5, x), norm(&f5, x));

        let f3 = ctx(3);
        let q111 = QuadraticForm::new(f3.one(), f3.one(), f3.one());
        assert_eq!(q111.eval(&f3, pt(&f3, 1, 1)), f3.zero());
    }

    #[test]
    fn form_even_symmetry() {
        let f9 = ctx(9);
        let form = QuadraticForm::new(f9.from_int(1), f9.from_int(1), f9.from_int(2));
        assert!(!form.is_degenerate(&f9));
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let x = Point::from_index(&f9, rng.random_range(0..81));
            assert_eq!(form.eval(&f9, x), form.eval(&f9, x.neg(&f9)));
        }
    }

    #[test]
    fn degenerate_form_rejected() {
        let f5 = ctx(5);
        // b² = 4ac with a=1, b=2, c=1.
        let bad = QuadraticForm::new(f5.one(), f5.from_int(2), f5.one());
        assert!(bad.is_degenerate(&f5));
        assert!(matches!(
            sphere(&f5, &bad, f5.one()),
            Err(Error::DegenerateForm)
        ));
    }

    #[test]
    fn sphere_f3_unit_circle() {
        let f3 = ctx(3);
        let e = QuadraticForm::euclidean(&f3);
        let s = sphere(&f3, &e, f3.one()).unwrap();
        let expect: Vec<Point> = vec![
            pt(&f3, 0, 1),
            pt(&f3, 0, 2),
            pt(&f3, 1, 0),
            pt(&f3, 2, 0),
        ];
        let mut got = s.clone();
        got.sort();
        let mut want = expect.clone();
        want.sort();
        assert_eq!(got, want);
        assert_eq!(s.len(), 4); // q + 1 since χ(-1) = -1
    }

    #[test]
    fn sphere_sizes_match_character_rule() {
        // Nonzero radii have q - χ(-1) points; radius zero has 1 point when
        // -1 is a non-square and 2q - 1 points otherwise. Verified against
        // plain enumeration at q ∈ {3,5,7,9,11}.
        for q in [3u64, 5, 7, 9, 11] {
            let f = ctx(q);
            let e = QuadraticForm::euclidean(&f);
            let chi = f.chi_minus_one() as i64;
            for a in f.units() {
                let s = sphere(&f, &e, a).unwrap();
                assert_eq!(s.len() as i64, q as i64 - chi, "q={q}");
            }
            let s0 = sphere(&f, &e, f.zero()).unwrap();
            let expect = if chi == -1 { 1 } else { 2 * q as i64 - 1 };
            assert_eq!(s0.len() as i64, expect, "q={q} radius 0");
        }
    }

    #[test]
    fn sphere_sizes_partition_the_plane() {
        for q in [3u64, 5, 9] {
            let f = ctx(q);
            for form in [
                QuadraticForm::euclidean(&f),
                QuadraticForm::new(f.one(), f.zero(), f.neg(f.one())),
            ] {
                let total: usize = f
                    .elements()
                    .map(|a| sphere(&f, &form, a).unwrap().len())
                    .sum();
                assert_eq!(total, (q * q) as usize);
            }
        }
    }

    #[test]
    fn so2_matches_exhaustive_scan_and_group_order() {
        for q in [3u64, 5, 7, 9] {
            let f = ctx(q);
            let fast = so2_elements(&f);
            let mut slow = so2_exhaustive(&f);
            let mut fast_sorted: Vec<_> = fast
                .iter()
                .map(|r| (r.m11, r.m12, r.m21, r.m22))
                .collect();
            fast_sorted.sort();
            slow.sort_by_key(|r| (r.m11, r.m12, r.m21, r.m22));
            let slow_keys: Vec<_> = slow.iter().map(|r| (r.m11, r.m12, r.m21, r.m22)).collect();
            assert_eq!(fast_sorted, slow_keys, "q={q}");
            let expect = q as i64 - f.chi_minus_one() as i64;
            assert_eq!(fast.len() as i64, expect, "q={q}");
            assert!(fast.contains(&Rotation::identity(&f)));
        }
    }

    #[test]
    fn motions_are_isometries() {
        let f7 = ctx(7);
        let group = rigid_motion_group(&f7);
        assert_eq!(group.len(), 49 * 8);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let m = group[rng.random_range(0..group.len())];
            let x = Point::from_index(&f7, rng.random_range(0..49));
            let y = Point::from_index(&f7, rng.random_range(0..49));
            assert_eq!(
                norm(&f7, m.apply(&f7, x).sub(&f7, m.apply(&f7, y))),
                norm(&f7, x.sub(&f7, y))
            );
        }
    }

    #[test]
    fn apply_identity_and_translation() {
        let f5 = ctx(5);
        let x = pt(&f5, 3, 1);
        assert_eq!(RigidMotion::identity(&f5).apply(&f5, x), x);
        let tau = pt(&f5, 1, 4);
        assert_eq!(
            RigidMotion::translation(&f5, tau).apply(&f5, x),
            x.add(&f5, tau)
        );
    }

    #[test]
    fn compose_and_inverse_round_trip() {
        let f5 = ctx(5);
        let group = rigid_motion_group(&f5);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let m = group[rng.random_range(0..group.len())];
            let inv = m.inverse(&f5);
            let x = Point::from_index(&f5, rng.random_range(0..25));
            assert_eq!(inv.apply(&f5, m.apply(&f5, x)), x);
            let m2 = group[rng.random_range(0..group.len())];
            let c = m2.compose(&f5, &m);
            assert_eq!(c.apply(&f5, x), m2.apply(&f5, m.apply(&f5, x)));
        }
    }

    #[test]
    fn signature_examples() {
        let f3 = ctx(3);
        let (x, y, z) = (pt(&f3, 0, 0), pt(&f3, 1, 0), pt(&f3, 0, 1));
        let s = signature(&f3, x, y, z);
        assert_eq!(
            (s.s_xy, s.s_xz, s.s_yz),
            (f3.one(), f3.one(), f3.from_int(2))
        );
        let same = signature(&f3, x, x, x);
        assert_eq!(
            (same.s_xy, same.s_xz, same.s_yz),
            (f3.zero(), f3.zero(), f3.zero())
        );
    }

    #[test]
    fn signature_invariant_under_motions() {
        let f5 = ctx(5);
        let group = rigid_motion_group(&f5);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let m = group[rng.random_range(0..group.len())];
            let x = Point::from_index(&f5, rng.random_range(0..25));
            let y = Point::from_index(&f5, rng.random_range(0..25));
            let z = Point::from_index(&f5, rng.random_range(0..25));
            assert_eq!(
                signature(&f5, x, y, z),
                signature(
                    &f5,
                    m.apply(&f5, x),
                    m.apply(&f5, y),
                    m.apply(&f5, z)
                )
            );
        }
    }

    #[test]
    fn degeneracy_examples() {
        let f5 = ctx(5);
        let o = pt(&f5, 0, 0);
        assert!(is_degenerate(&f5, o, o, pt(&f5, 1, 1)));
        assert!(is_degenerate(&f5, o, pt(&f5, 1, 0), pt(&f5, 2, 0)));
        assert!(!is_degenerate(&f5, o, pt(&f5, 1, 0), pt(&f5, 0, 1)));
    }

    #[test]
    fn find_motion_identity_case() {
        let f5 = ctx(5);
        let t = [pt(&f5, 0, 0), pt(&f5, 1, 0), pt(&f5, 0, 1)];
        let m = find_rigid_motion(&f5, t, t).unwrap();
        for p in t {
            assert_eq!(m.apply(&f5, p), p);
        }
    }

    #[test]
    fn find_motion_on_congruent_triples() {
        let f5 = ctx(5);
        let t1 = [pt(&f5, 0, 0), pt(&f5, 1, 0), pt(&f5, 0, 1)];
        // Image of t1 under a known motion must be recovered.
        let group = rigid_motion_group(&f5);
        for m in group.iter().step_by(7) {
            let t2 = [
                m.apply(&f5, t1[0]),
                m.apply(&f5, t1[1]),
                m.apply(&f5, t1[2]),
            ];
            let found = find_rigid_motion(&f5, t1, t2).expect("congruent triples");
            for (a, b) in t1.iter().zip(&t2) {
                assert_eq!(found.apply(&f5, *a), *b);
            }
        }
    }

    #[test]
    fn find_motion_rejects_different_signatures() {
        let f5 = ctx(5);
        let t1 = [pt(&f5, 0, 0), pt(&f5, 1, 0), pt(&f5, 0, 1)];
        let t2 = [pt(&f5, 0, 0), pt(&f5, 2, 0), pt(&f5, 0, 1)];
        assert_ne!(
            signature(&f5, t1[0], t1[1], t1[2]),
            signature(&f5, t2[0], t2[1], t2[2])
        );
        assert!(find_rigid_motion(&f5, t1, t2).is_none());
    }

    #[test]
    fn mirror_triangles_need_a_reflection() {
        // Same signature, opposite orientation: rotations cannot connect a
        // non-degenerate triangle to its mirror image, the extended search
        // can. Verified here at q=3, exhaustively in the acceptance suite.
        let f3 = ctx(3);
        let t = [pt(&f3, 0, 0), pt(&f3, 1, 0), pt(&f3, 0, 1)];
        let mirror = [pt(&f3, 0, 0), pt(&f3, 1, 0), pt(&f3, 0, 2)];
        assert_eq!(
            signature(&f3, t[0], t[1], t[2]),
            signature(&f3, mirror[0], mirror[1], mirror[2])
        );
        assert_eq!(
            orientation(&f3, t[0], t[1], t[2]),
            f3.neg(orientation(&f3, mirror[0], mirror[1], mirror[2]))
        );
        assert!(find_rigid_motion(&f3, t, mirror).is_none());
        let iso = find_isometry(&f3, t, mirror).unwrap();
        for (a, b) in t.iter().zip(&mirror) {
            assert_eq!(iso.apply(&f3, *a), *b);
        }
        assert_eq!(iso.rotation.det(&f3), f3.neg(f3.one()));
    }

    #[test]
    fn orthogonal_group_doubles_the_rotations() {
        for q in [3u64, 5, 9] {
            let f = ctx(q);
            let o2 = orthogonal_elements(&f);
            assert_eq!(o2.len(), 2 * so2_elements(&f).len());
            for m in &o2 {
                assert!(m.is_orthogonal(&f));
                let d = m.det(&f);
                assert!(d == f.one() || d == f.neg(f.one()));
            }
        }
    }

    #[test]
    fn find_motion_agrees_with_literal_group_scan() {
        let f3 = ctx(3);
        let group = rigid_motion_group(&f3);
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..60 {
            let t1 = [
                Point::from_index(&f3, rng.random_range(0..9)),
                Point::from_index(&f3, rng.random_range(0..9)),
                Point::from_index(&f3, rng.random_range(0..9)),
            ];
            let t2 = [
                Point::from_index(&f3, rng.random_range(0..9)),
                Point::from_index(&f3, rng.random_range(0..9)),
                Point::from_index(&f3, rng.random_range(0..9)),
            ];
            let fast = find_rigid_motion(&f3, t1, t2);
            let slow = group.iter().find(|m| {
                m.apply(&f3, t1[0]) == t2[0]
                    && m.apply(&f3, t1[1]) == t2[1]
                    && m.apply(&f3, t1[2]) == t2[2]
            });
            assert_eq!(fast.is_some(), slow.is_some());
        }
    }

    #[test]
    fn motion_permutation_consistency() {
        let f3 = ctx(3);
        for m in rigid_motion_group(&f3) {
            let perm = motion_permutation(&f3, &m);
            let mut seen = vec![false; 9];
            for (i, &img) in perm.iter().enumerate() {
                assert_eq!(
                    img as usize,
                    m.apply(&f3, Point::from_index(&f3, i)).index(&f3)
                );
                seen[img as usize] = true;
            }
            assert!(seen.iter().all(|&s| s));
        }
    }
}
