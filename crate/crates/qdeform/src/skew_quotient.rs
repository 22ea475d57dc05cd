//! The skew polynomial layer: the central quadratic relation g_t, the
//! deformed algebras it cuts out for both group families, the `t = 0`
//! specialization against the group-table oracle, and the simple-component
//! decomposition certificate.
//!
//! An element is `u0 + u1*y` with the twisted law `y*w = eta(w)*y` and the
//! relation `y^2 = z(e_c1 + e_c2)*y + free_term` (characteristic 2).

use crate::certificate::CheckFragment;
use crate::error::{Error, Result};
use crate::finite_field::GfElement;
use crate::group_reference::{GroupKind, StructureTable};
use crate::laurent::LaurentSeries;
use crate::par;
use crate::polyring::{self, Poly};
use crate::quotient_algebra::{
    compute_da, random_element, DaResult, IdempotentSet, QElement, QuotientCtx,
};

#[derive(Clone, Debug)]
pub struct SkewElement {
    pub u0: QElement,
    pub u1: QElement,
}

/// The deformed algebra context for one group family.
#[derive(Clone, Debug)]
pub struct DeformCtx {
    q: QuotientCtx,
    idems: IdempotentSet,
    kind: GroupKind,
    z: LaurentSeries,
    /// z * (e_c1 + e_c2), the y-coefficient of the relation.
    zec: QElement,
    /// Free term of the relation: x^(2^(n-2)) + t^(2^(n-2)-1) x for the
    /// quaternion family, 1 for the dihedral family.
    free_term: QElement,
    /// Per-a data of the dual-route constant, shared by both families.
    da: Vec<(GfElement, DaResult)>,
}

/// z = t^V with V = 1 + max(0, -min coefficient valuation of e_c1 + e_c2),
/// which forces `z*(e_c1 + e_c2)` to vanish at t = 0.
pub fn choose_z(ctx: &QuotientCtx, idems: &IdempotentSet) -> LaurentSeries {
    let e12 = ctx.add(&idems.e_c1, &idems.e_c2);
    let deficit = e12.min_valuation().map_or(0, |v| (-v).max(0));
    LaurentSeries::monomial(ctx.field(), GfElement::ONE, 1 + deficit, ctx.prec())
}

impl DeformCtx {
    pub fn build(q: QuotientCtx, idems: IdempotentSet, kind: GroupKind) -> Result<DeformCtx> {
        let z = choose_z(&q, &idems);
        let zec = q.scale(&q.add(&idems.e_c1, &idems.e_c2), &z);
        if zec.min_valuation().is_some_and(|v| v < 1) {
            return Err(Error::Inconsistent(
                "z(e_c1 + e_c2) does not vanish at t = 0".into(),
            ));
        }
        let free_term = match kind {
            GroupKind::Quaternion => {
                let half_exp = 1usize << (q.n() - 2);
                let shift = LaurentSeries::monomial(
                    q.field(),
                    GfElement::ONE,
                    half_exp as i64 - 1,
                    q.prec(),
                );
                q.add(&q.basis(half_exp), &q.scale(&q.basis(1), &shift))
            }
            GroupKind::Dihedral => q.one(),
        };
        let da = par::try_map_indexed(idems.e_a.len(), |i| {
            let (a, e) = &idems.e_a[i];
            Ok((*a, compute_da(&q, *a, e)?))
        })?;
        Ok(DeformCtx { q, idems, kind, z, zec, free_term, da })
    }

    pub fn quotient(&self) -> &QuotientCtx {
        &self.q
    }

    pub fn idempotents(&self) -> &IdempotentSet {
        &self.idems
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn z(&self) -> &LaurentSeries {
        &self.z
    }

    pub fn zec(&self) -> &QElement {
        &self.zec
    }

    pub fn free_term(&self) -> &QElement {
        &self.free_term
    }

    pub fn da(&self) -> &[(GfElement, DaResult)] {
        &self.da
    }

    /// The relation coefficients `[free_term, zec, 1]` of the monic quadratic
    /// in y.
    pub fn gt_coefficients(&self) -> [QElement; 3] {
        [self.free_term.clone(), self.zec.clone(), self.q.one()]
    }

    pub fn zero(&self) -> SkewElement {
        SkewElement { u0: self.q.zero(), u1: self.q.zero() }
    }

    pub fn one(&self) -> SkewElement {
        SkewElement { u0: self.q.one(), u1: self.q.zero() }
    }

    pub fn y(&self) -> SkewElement {
        SkewElement { u0: self.q.zero(), u1: self.q.one() }
    }

    pub fn sq_add(&self, u: &SkewElement, v: &SkewElement) -> SkewElement {
        SkewElement { u0: self.q.add(&u.u0, &v.u0), u1: self.q.add(&u.u1, &v.u1) }
    }

    /// `(u0 + u1 y)(v0 + v1 y)` with `y w = eta(w) y` and
    /// `y^2 = zec y + free_term`.
    pub fn sq_mul(&self, u: &SkewElement, v: &SkewElement) -> SkewElement {
        let q = &self.q;
        let ev0 = q.eta_apply(&v.u0);
        let ev1 = q.eta_apply(&v.u1);
        let carry = q.mul(&u.u1, &ev1);
        let u0 = q.add(&q.mul(&u.u0, &v.u0), &q.mul(&carry, &self.free_term));
        let u1 = q.add(
            &q.add(&q.mul(&u.u0, &v.u1), &q.mul(&u.u1, &ev0)),
            &q.mul(&carry, &self.zec),
        );
        SkewElement { u0, u1 }
    }

    pub fn residual_precision(&self, u: &SkewElement) -> Option<i64> {
        Some(u.u0.residual_precision()?.min(u.u1.residual_precision()?))
    }

    /// Lower-precision view for sampled checks and benchmarks.
    pub fn truncated(&self, prec: i64) -> DeformCtx {
        DeformCtx {
            q: self.q.truncated(prec),
            idems: IdempotentSet {
                e_c1: self.idems.e_c1.truncate(prec),
                e_c2: self.idems.e_c2.truncate(prec),
                e_a: self
                    .idems
                    .e_a
                    .iter()
                    .map(|(a, e)| (*a, e.truncate(prec)))
                    .collect(),
            },
            kind: self.kind,
            z: self.z.truncate(prec),
            zec: self.zec.truncate(prec),
            free_term: self.free_term.truncate(prec),
            da: self
                .da
                .iter()
                .map(|(a, d)| {
                    (
                        *a,
                        DaResult {
                            value: d.value.truncate(prec),
                            agreement_prec: d.agreement_prec.min(prec),
                            projection_prec: d.projection_prec.min(prec),
                        },
                    )
                })
                .collect(),
        }
    }
}

/// Multiplication in the free skew polynomial ring (no relation imposed):
/// coefficients of powers of y, with `y^j w = eta^j(w) y^j`.
fn skew_poly_mul(q: &QuotientCtx, a: &[QElement], b: &[QElement]) -> Vec<QElement> {
    let mut out = vec![q.zero(); a.len() + b.len() - 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_zero_at_prec() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            let mut twisted = bj.clone();
            for _ in 0..i {
                twisted = q.eta_apply(&twisted);
            }
            out[i + j] = q.add(&out[i + j], &q.mul(ai, &twisted));
        }
    }
    out
}

/// Term-by-term centrality of the relation, executed as commutators in the
/// free skew polynomial ring plus the idempotent-projection facts:
/// the free term is fixed by the twisting map (globally and projection by
/// projection), the y-coefficient annihilates every quadratic component, and
/// the commutators of the full relation with both generators vanish.
pub fn centrality_check(dc: &DeformCtx, floor: i64) -> Result<Vec<CheckFragment>> {
    let q = dc.quotient();
    let mut frags = Vec::new();

    let eta_free = q.eta_apply(&dc.free_term);
    frags.push(CheckFragment::from_residual(
        "free_term_eta_invariant",
        "4.4",
        q.add(&eta_free, &dc.free_term).residual_precision(),
        floor,
    ));

    let mut proj_prec = i64::MAX;
    let mut proj_ok = true;
    for e in dc.idems.all() {
        let fe = q.mul(&dc.free_term, e);
        match q.add(&q.eta_apply(&fe), &fe).residual_precision() {
            Some(p) => proj_prec = proj_prec.min(p),
            None => proj_ok = false,
        }
    }
    frags.push(CheckFragment::new(
        "free_term_projections_eta_invariant",
        "4.4",
        if proj_ok { proj_prec } else { 0 },
        proj_ok && proj_prec >= floor,
    ));

    let mut ann_prec = i64::MAX;
    let mut ann_ok = true;
    for (_, e) in &dc.idems.e_a {
        match q.mul(&dc.zec, e).residual_precision() {
            Some(p) => ann_prec = ann_prec.min(p),
            None => ann_ok = false,
        }
    }
    frags.push(CheckFragment::new(
        "y_term_annihilates_quadratic_components",
        "4.4",
        if ann_ok { ann_prec } else { 0 },
        ann_ok && ann_prec >= floor,
    ));

    // commutators with the two generators of the skew polynomial ring
    let gt = [dc.free_term.clone(), dc.zec.clone(), q.one()];
    for (name, w) in [
        ("relation_commutes_with_x", vec![q.basis(1)]),
        ("relation_commutes_with_y", vec![q.zero(), q.one()]),
    ] {
        let left = skew_poly_mul(q, &gt, &w);
        let right = skew_poly_mul(q, &w, &gt);
        let mut prec = i64::MAX;
        let mut ok = true;
        for k in 0..left.len().max(right.len()) {
            let zero = q.zero();
            let l = left.get(k).unwrap_or(&zero);
            let r = right.get(k).unwrap_or(&zero);
            match q.add(l, r).residual_precision() {
                Some(p) => prec = prec.min(p),
                None => ok = false,
            }
        }
        frags.push(CheckFragment::new(
            name,
            "lemma 2.4",
            if ok { prec } else { 0 },
            ok && prec >= floor,
        ));
    }
    Ok(frags)
}

/// Structure constants of the deformed algebra at `t = 0` on the monomial
/// basis `x^i y^j` (flat index `i + j*2^(n-1)`), for exact comparison with
/// the group algebra. Errors if any structure constant has a pole or is not
/// known through order zero.
pub fn specialize_t0(dc: &DeformCtx) -> Result<StructureTable> {
    specialize_impl(dc, true)
}

/// Always-sequential variant of [`specialize_t0`].
pub fn specialize_t0_seq(dc: &DeformCtx) -> Result<StructureTable> {
    specialize_impl(dc, false)
}

struct SpecializeColumn {
    /// x^i1 * eta(x^i2) for each i1
    m: Vec<QElement>,
    /// x^i1 * (eta(x^i2) * free)
    w: Vec<QElement>,
    /// x^i1 * (eta(x^i2) * zec)
    z: Vec<QElement>,
}

fn specialize_impl(dc: &DeformCtx, parallel: bool) -> Result<StructureTable> {
    let q = dc.quotient();
    let dim = q.dim();
    let order = 2 * dim;

    let column = |i2: usize| -> Result<SpecializeColumn> {
        let h = q.eta_image(i2).clone();
        let seeds = [
            h.clone(),
            q.mul(&h, &dc.free_term),
            q.mul(&h, &dc.zec),
        ];
        let mut cols: Vec<Vec<QElement>> = Vec::with_capacity(3);
        for seed in seeds {
            let mut col = Vec::with_capacity(dim);
            let mut cur = seed;
            for _ in 0..dim {
                col.push(cur.clone());
                cur = q.mul_by_x(&cur);
            }
            cols.push(col);
        }
        let z = cols.pop().unwrap();
        let w = cols.pop().unwrap();
        let m = cols.pop().unwrap();
        Ok(SpecializeColumn { m, w, z })
    };
    let cols = if parallel {
        par::try_map_indexed(dim, column)?
    } else {
        par::try_map_indexed_seq(dim, column)?
    };

    let constants_of = |parts: [Option<&QElement>; 2]| -> Result<Vec<(usize, GfElement)>> {
        let mut out = Vec::new();
        for (j, part) in parts.iter().enumerate() {
            let Some(el) = part else { continue };
            for k in 0..dim {
                let c = el.coeff(k);
                if c.valuation().is_some_and(|v| v < 0) {
                    return Err(Error::SpecializationUndefined(format!(
                        "structure constant at basis slot ({k},{j}) has a pole: {c}"
                    )));
                }
                let c0 = c.coeff_at(0).ok_or_else(|| {
                    Error::InsufficientPrecision(
                        "structure constant not known through order zero".into(),
                    )
                })?;
                if !c0.is_zero() {
                    out.push((k + j * dim, c0));
                }
            }
        }
        Ok(out)
    };

    let mut entries = vec![vec![Vec::new(); order]; order];
    for i1 in 0..dim {
        for j1 in 0..2usize {
            for i2 in 0..dim {
                for j2 in 0..2usize {
                    let row = i1 + j1 * dim;
                    let colidx = i2 + j2 * dim;
                    let value = match (j1, j2) {
                        // x^(i1+i2) y^j2 straight from the power table
                        (0, 0) => constants_of([Some(q.x_power(i1 + i2)), None])?,
                        (0, 1) => constants_of([None, Some(q.x_power(i1 + i2))])?,
                        // x^i1 eta(x^i2) y
                        (1, 0) => constants_of([None, Some(&cols[i2].m[i1])])?,
                        // x^i1 eta(x^i2) y^2 = W + Z y
                        (1, 1) => constants_of([Some(&cols[i2].w[i1]), Some(&cols[i2].z[i1])])?,
                        _ => unreachable!(),
                    };
                    entries[row][colidx] = value;
                }
            }
        }
    }
    Ok(StructureTable { order, entries })
}

/// Verifies associativity of `sq_mul` on seeded random triples. Triples are
/// generated sequentially from the seed (so the sample is identical however
/// the verification is scheduled) and checked independently. Returns overall
/// success and the worst verified precision.
pub fn associativity_sample(dc: &DeformCtx, seed: u64, count: usize) -> (bool, i64) {
    associativity_impl(dc, seed, count, true)
}

/// Always-sequential variant of [`associativity_sample`].
pub fn associativity_sample_seq(dc: &DeformCtx, seed: u64, count: usize) -> (bool, i64) {
    associativity_impl(dc, seed, count, false)
}

fn associativity_impl(dc: &DeformCtx, seed: u64, count: usize, parallel: bool) -> (bool, i64) {
    use rand::SeedableRng;
    let q = dc.quotient();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut rand_skew = || SkewElement {
        u0: random_element(q, &mut rng),
        u1: random_element(q, &mut rng),
    };
    let triples: Vec<[SkewElement; 3]> =
        (0..count).map(|_| [rand_skew(), rand_skew(), rand_skew()]).collect();
    let check = |i: usize| -> Option<i64> {
        let [u, v, w] = &triples[i];
        let left = dc.sq_mul(&dc.sq_mul(u, v), w);
        let right = dc.sq_mul(u, &dc.sq_mul(v, w));
        dc.residual_precision(&dc.sq_add(&left, &right))
    };
    let results = if parallel {
        par::map_indexed(count, check)
    } else {
        par::map_indexed_seq(count, check)
    };
    let mut worst = i64::MAX;
    for r in results {
        match r {
            Some(p) => worst = worst.min(p),
            None => return (false, 0),
        }
    }
    (true, worst)
}

/// Crossed-product data for one quadratic component.
#[derive(Clone, Debug)]
pub struct QuadraticComponent {
    pub a: GfElement,
    /// The nontrivial cocycle value: d_a for the quaternion family, 1 for
    /// the dihedral family.
    pub cocycle_value: LaurentSeries,
    pub field_irreducible: bool,
    pub field_separable: bool,
    pub action_nontrivial: bool,
    pub closure_dimension: u32,
}

/// Data for one rank-one component: the quadratic in y it reduces to.
#[derive(Clone, Debug)]
pub struct LinearComponent {
    /// Constant term of `y^2 + z y + w` on this component.
    pub constant_term: LaurentSeries,
    pub separable: bool,
    pub closure_dimensions: [u32; 2],
}

/// The full component decomposition: per-idempotent records plus the claimed
/// simple-component dimension vector over the algebraic closure.
#[derive(Clone, Debug)]
pub struct ComponentCertificate {
    pub quadratic: Vec<QuadraticComponent>,
    pub linear: Vec<LinearComponent>,
    pub dimension_vector: Vec<u32>,
}

impl ComponentCertificate {
    pub fn component_count(&self) -> usize {
        self.quadratic.len() + 2 * self.linear.len()
    }

    pub fn squared_dimension_sum(&self) -> u32 {
        self.dimension_vector.iter().map(|d| d * d).sum()
    }
}

/// Decomposes the deformed algebra along the central idempotents and
/// verifies, per component, the projected form of the relation. Every
/// quadratic component is an order-2 crossed product of an irreducible
/// separable quadratic field extension with a unit cocycle value (closure
/// dimension 2); every linear component splits into two rank-one pieces via
/// a separable quadratic in y.
pub fn decompose_components(
    dc: &DeformCtx,
    floor: i64,
) -> Result<(ComponentCertificate, Vec<CheckFragment>)> {
    let q = dc.quotient();
    let field = q.field();
    let mut frags = Vec::new();

    // quadratic components, one per subfield unit
    let per_a = par::try_map_indexed(dc.idems.e_a.len(), |i| {
        let (a, e) = &dc.idems.e_a[i];
        let (_, da) = &dc.da[i];
        let cocycle = match dc.kind {
            GroupKind::Quaternion => da.value.clone(),
            GroupKind::Dihedral => LaurentSeries::one(field, q.prec()),
        };
        // g_t e_a = (y^2 + cocycle) e_a: the y-coefficient dies, the free
        // term projects to the cocycle value
        let zec_resid = q.mul(&dc.zec, e).residual_precision();
        let fe = q.mul(&dc.free_term, e);
        let proj_resid = q
            .add(&fe, &q.scale(e, &cocycle))
            .residual_precision();
        let irreducible = !polyring::quadratic_has_root_mod_t2(*a, field);
        let separable = polyring::quadratic_factor(*a, field, q.prec()).is_separable()?;
        // eta moves x e_a to (x + a t) e_a, and a*t*e_a is visibly nonzero
        let xe = q.mul(&q.basis(1), e);
        let at = LaurentSeries::monomial(field, *a, 1, q.prec());
        let moved = q.add(&xe, &q.scale(e, &at));
        let action_resid = q.add(&q.eta_apply(&xe), &moved).residual_precision();
        let action_nontrivial =
            action_resid.is_some() && !q.scale(e, &at).is_zero_at_prec();
        let unit_cocycle = cocycle.valuation().is_some();
        Ok((
            QuadraticComponent {
                a: *a,
                cocycle_value: cocycle,
                field_irreducible: irreducible,
                field_separable: separable,
                action_nontrivial,
                closure_dimension: 2,
            },
            zec_resid,
            proj_resid,
            action_resid,
            unit_cocycle,
        ))
    })?;

    let mut quadratic = Vec::with_capacity(per_a.len());
    let mut proj_prec = i64::MAX;
    let mut proj_ok = true;
    let mut hypotheses_ok = true;
    for (comp, zec_resid, proj_resid, action_resid, unit_cocycle) in per_a {
        for r in [zec_resid, proj_resid, action_resid] {
            match r {
                Some(p) => proj_prec = proj_prec.min(p),
                None => proj_ok = false,
            }
        }
        hypotheses_ok &= comp.field_irreducible
            && comp.field_separable
            && comp.action_nontrivial
            && unit_cocycle;
        quadratic.push(comp);
    }
    frags.push(CheckFragment::new(
        "relation_projects_to_quadratic_components",
        "3",
        if proj_ok { proj_prec } else { 0 },
        proj_ok && proj_prec >= floor,
    ));
    frags.push(CheckFragment::structural(
        "crossed_product_hypotheses",
        "3.2",
        hypotheses_ok,
    ));

    // linear components at the two prescribed roots
    let half_exp = 1u32 << (q.n() - 2);
    let mut linear = Vec::with_capacity(2);
    let mut lin_prec = i64::MAX;
    let mut lin_ok = true;
    let mut lin_separable = true;
    for (c, e) in [(q.c1().clone(), &dc.idems.e_c1), (q.c2().clone(), &dc.idems.e_c2)] {
        // zec e_c = z e_c
        let lhs = q.mul(&dc.zec, e);
        let rhs = q.scale(e, &dc.z);
        match q.add(&lhs, &rhs).residual_precision() {
            Some(p) => lin_prec = lin_prec.min(p),
            None => lin_ok = false,
        }
        // free term projects to c^(2^(n-2)) + t^(2^(n-2)-1) c (or 1)
        let w = match dc.kind {
            GroupKind::Quaternion => {
                let mut pow = LaurentSeries::one(field, q.prec());
                for _ in 0..half_exp {
                    pow = pow.mul(&c);
                }
                let tw = LaurentSeries::monomial(
                    field,
                    GfElement::ONE,
                    half_exp as i64 - 1,
                    q.prec(),
                );
                pow.add(&tw.mul(&c))
            }
            GroupKind::Dihedral => LaurentSeries::one(field, q.prec()),
        };
        let fe = q.mul(&dc.free_term, e);
        match q.add(&fe, &q.scale(e, &w)).residual_precision() {
            Some(p) => lin_prec = lin_prec.min(p),
            None => lin_ok = false,
        }
        // y^2 + z y + w is separable because z != 0
        let quad_in_y = Poly::from_coeffs(vec![
            w.clone(),
            dc.z.clone(),
            LaurentSeries::one(field, q.prec()),
        ]);
        let separable = quad_in_y.is_separable()?;
        lin_separable &= separable && dc.z.valuation().is_some();
        linear.push(LinearComponent {
            constant_term: w,
            separable,
            closure_dimensions: [1, 1],
        });
    }
    frags.push(CheckFragment::new(
        "relation_projects_to_linear_components",
        "3",
        if lin_ok { lin_prec } else { 0 },
        lin_ok && lin_prec >= floor,
    ));
    frags.push(CheckFragment::structural(
        "linear_component_quadratics_separable",
        "3.4",
        lin_separable,
    ));

    let mut dimension_vector = vec![1u32; 4];
    dimension_vector.extend(std::iter::repeat(2).take(quadratic.len()));
    dimension_vector.sort_unstable();
    let cert = ComponentCertificate { quadratic, linear, dimension_vector };

    let expected_twos = (1usize << (q.n() - 2)) - 1;
    let vector_ok = cert.dimension_vector.iter().filter(|&&d| d == 1).count() == 4
        && cert.dimension_vector.iter().filter(|&&d| d == 2).count() == expected_twos
        && cert.dimension_vector.len() == expected_twos + 4;
    frags.push(CheckFragment::structural(
        "dimension_vector_strong_form",
        if dc.kind == GroupKind::Quaternion { "3" } else { "5" },
        vector_ok,
    ));
    frags.push(CheckFragment::structural(
        "squared_dimensions_sum_to_group_order",
        "3",
        cert.squared_dimension_sum() == 1 << q.n(),
    ));
    Ok((cert, frags))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finite_field::GfContext;
    use crate::group_reference::{build_group_table, group_algebra_structure_constants};
    use crate::quotient_algebra::crt_idempotents;

    fn default_prec(n: u32, m: i64) -> i64 {
        8 * m + (1i64 << (n - 1)) + 16
    }

    fn deform_for(n: u32, kind: GroupKind) -> DeformCtx {
        let field = GfContext::for_group_order(n).unwrap();
        let m = 1i64 << (n - 2);
        let q = QuotientCtx::build(
            n,
            m,
            GfElement::ONE,
            field.generator(),
            field,
            default_prec(n, m),
        )
        .unwrap();
        let idems = crt_idempotents(&q).unwrap();
        DeformCtx::build(q, idems, kind).unwrap()
    }

    #[test]
    fn z_choice_clears_poles() {
        for kind in [GroupKind::Quaternion, GroupKind::Dihedral] {
            let dc = deform_for(3, kind);
            assert!(dc.z().valuation().unwrap() >= 1);
            assert!(dc.zec().min_valuation().unwrap() >= 1);
        }
    }

    #[test]
    fn relation_specializes_to_group_relation() {
        // quaternion: free term at t=0 is the basis vector x^(2^(n-2));
        // dihedral: it is 1. The y-coefficient vanishes at t=0 either way.
        for (kind, expect_idx) in [(GroupKind::Quaternion, 2usize), (GroupKind::Dihedral, 0)] {
            let dc = deform_for(3, kind);
            let free = dc.free_term().to_poly().specialize_t0().unwrap();
            for (i, c) in free.iter().enumerate() {
                assert_eq!(!c.is_zero(), i == expect_idx, "{kind} slot {i}");
            }
            let zec0 = dc.zec().to_poly().specialize_t0().unwrap();
            assert!(zec0.iter().all(|c| c.is_zero()));
        }
    }

    #[test]
    fn y_squared_expands_to_relation() {
        let dc = deform_for(3, GroupKind::Quaternion);
        let q = dc.quotient();
        let yy = dc.sq_mul(&dc.y(), &dc.y());
        assert!(q.add(&yy.u0, dc.free_term()).residual_precision().is_some());
        assert!(q.add(&yy.u1, dc.zec()).residual_precision().is_some());
    }

    #[test]
    fn y_twists_x_past_it() {
        let dc = deform_for(3, GroupKind::Quaternion);
        let q = dc.quotient();
        let x = SkewElement { u0: q.basis(1), u1: q.zero() };
        let yx = dc.sq_mul(&dc.y(), &x);
        assert!(yx.u0.is_zero_at_prec());
        assert!(q.add(&yx.u1, q.eta_image(1)).residual_precision().is_some());

        let one_times = dc.sq_mul(&dc.one(), &yx);
        assert!(dc.residual_precision(&dc.sq_add(&one_times, &yx)).is_some());
    }

    #[test]
    fn centrality_fragments_pass() {
        for kind in [GroupKind::Quaternion, GroupKind::Dihedral] {
            let dc = deform_for(4, kind);
            let frags = centrality_check(&dc, 1 << 3).unwrap();
            assert_eq!(frags.len(), 5);
            for f in &frags {
                assert!(f.pass, "{kind}: {} failed at prec {}", f.name, f.verified_to_precision);
            }
        }
    }

    #[test]
    fn associativity_on_seeded_triples() {
        let dc = deform_for(3, GroupKind::Quaternion).truncated(16);
        let (ok, prec) = associativity_sample(&dc, 99, 64);
        assert!(ok);
        assert!(prec >= 8, "worst precision {prec}");
        // sequential path sees the identical sample
        let (ok_seq, prec_seq) = associativity_sample_seq(&dc, 99, 64);
        assert!(ok_seq);
        assert_eq!(prec, prec_seq);
    }

    #[test]
    fn structure_constants_match_group_tables() {
        for n in [3u32, 4] {
            for kind in [GroupKind::Quaternion, GroupKind::Dihedral] {
                let dc = deform_for(n, kind);
                let got = specialize_t0(&dc).unwrap();
                let table = build_group_table(n, kind).unwrap();
                let want = group_algebra_structure_constants(&table, dc.quotient().field());
                assert_eq!(got, want, "t=0 structure constants for {kind}, n={n}");
                // parallel and sequential paths agree
                assert_eq!(got, specialize_t0_seq(&dc).unwrap());
            }
        }
    }

    #[test]
    fn component_certificates() {
        // n=3: one M_2 block; n=4: three of them
        let dc = deform_for(3, GroupKind::Quaternion);
        let (cert, frags) = decompose_components(&dc, 1 << 2).unwrap();
        assert_eq!(cert.dimension_vector, vec![1, 1, 1, 1, 2]);
        assert!(frags.iter().all(|f| f.pass));

        let dc = deform_for(4, GroupKind::Dihedral);
        let (cert, _) = decompose_components(&dc, 1 << 3).unwrap();
        assert_eq!(cert.dimension_vector, vec![1, 1, 1, 1, 2, 2, 2]);
        assert_eq!(cert.squared_dimension_sum(), 16);
        assert_eq!(cert.component_count(), 7);
        // dihedral cocycle values are trivial
        for qc in &cert.quadratic {
            assert!(qc.cocycle_value.is_one_unit());
            assert!(qc.field_irreducible && qc.field_separable && qc.action_nontrivial);
        }
    }
}
