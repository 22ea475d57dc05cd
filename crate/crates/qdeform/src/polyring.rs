//! Univariate polynomials with Laurent-series coefficients, plus the builders
//! for the structured polynomials the construction needs.
//!
//! The coefficient of `x^i` sits at index `i`. Degree is normalized: the
//! stored leading coefficient is nonzero at its tracked precision. Division
//! inverts leading coefficients through the Laurent layer, so divisors with
//! positive-valuation leads work at the cost of precision.

use crate::error::{Error, Result};
use crate::finite_field::{GfContext, GfElement};
use crate::laurent::LaurentSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    coeffs: Vec<LaurentSeries>,
}

impl Poly {
    pub fn zero(ctx: GfContext, prec: i64) -> Self {
        Poly { coeffs: vec![LaurentSeries::zero(ctx, prec)] }
    }

    pub fn one(ctx: GfContext, prec: i64) -> Self {
        Poly::constant(LaurentSeries::one(ctx, prec))
    }

    pub fn constant(c: LaurentSeries) -> Self {
        Poly { coeffs: vec![c] }
    }

    /// The monomial `c * x^deg`.
    pub fn monomial(c: LaurentSeries, deg: usize) -> Self {
        let ctx = c.ctx();
        let prec = c.prec();
        let mut coeffs = vec![LaurentSeries::zero(ctx, prec); deg + 1];
        coeffs[deg] = c;
        Poly { coeffs }.normalized()
    }

    pub fn from_coeffs(coeffs: Vec<LaurentSeries>) -> Self {
        assert!(!coeffs.is_empty(), "a polynomial needs at least one coefficient slot");
        Poly { coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.len() > 1 && self.coeffs.last().unwrap().is_zero_at_prec() {
            self.coeffs.pop();
        }
        self
    }

    pub fn ctx(&self) -> GfContext {
        self.coeffs[0].ctx()
    }

    pub fn coeffs(&self) -> &[LaurentSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> LaurentSeries {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| LaurentSeries::zero(self.ctx(), self.min_prec()))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(LaurentSeries::is_zero_at_prec)
    }

    /// Degree, or `None` when every coefficient vanishes at its precision.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.iter().rposition(|c| !c.is_zero_at_prec())
    }

    pub fn leading(&self) -> Option<&LaurentSeries> {
        self.degree().map(|d| &self.coeffs[d])
    }

    /// Smallest tracked precision over the coefficients.
    pub fn min_prec(&self) -> i64 {
        self.coeffs.iter().map(LaurentSeries::prec).min().unwrap()
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            match (self.coeffs.get(i), other.coeffs.get(i)) {
                (Some(a), Some(b)) => out.push(a.add(b)),
                (Some(a), None) => out.push(a.clone()),
                (None, Some(b)) => out.push(b.clone()),
                (None, None) => unreachable!(),
            }
        }
        Poly { coeffs: out }.normalized()
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let ctx = self.ctx();
        let prec = self.min_prec().min(other.min_prec());
        if self.is_zero() || other.is_zero() {
            return Poly::zero(ctx, prec);
        }
        let n = self.coeffs.len() + other.coeffs.len() - 1;
        let mut out: Vec<Option<LaurentSeries>> = vec![None; n];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                let term = a.mul(b);
                out[i + j] = Some(match out[i + j].take() {
                    None => term,
                    Some(acc) => acc.add(&term),
                });
            }
        }
        Poly { coeffs: out.into_iter().map(Option::unwrap).collect() }.normalized()
    }

    pub fn scale(&self, c: &LaurentSeries) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }.normalized()
    }

    pub fn scale_gf(&self, c: GfElement) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|a| a.scale(c)).collect() }.normalized()
    }

    /// Multiply by `x^k`.
    pub fn shift_x(&self, k: usize) -> Poly {
        let mut coeffs = vec![LaurentSeries::zero(self.ctx(), self.min_prec()); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }.normalized()
    }

    /// Long division: `self = q * g + r` with `deg r < deg g`. The divisor's
    /// leading coefficient is inverted as a Laurent series, so positive
    /// valuation there trades precision rather than failing. With debug
    /// assertions enabled, the identity is re-checked by re-multiplication.
    pub fn divmod(&self, g: &Poly) -> Result<(Poly, Poly)> {
        let gd = g.degree().ok_or_else(|| {
            Error::InsufficientPrecision(
                "division by a polynomial indistinguishable from zero".into(),
            )
        })?;
        let glead_inv = g.coeffs[gd].invert()?;
        let ctx = self.ctx();
        let prec = self.min_prec().min(g.min_prec());
        let mut rem: Vec<LaurentSeries> = self.coeffs.clone();
        let qlen = rem.len().saturating_sub(gd);
        let mut quot = vec![LaurentSeries::zero(ctx, prec); qlen.max(1)];
        loop {
            while rem.len() > 1 && rem.last().unwrap().is_zero_at_prec() {
                rem.pop();
            }
            let rd = rem.len() - 1;
            if rd < gd || rem[rd].is_zero_at_prec() {
                break;
            }
            let c = rem[rd].mul(&glead_inv);
            let shift = rd - gd;
            for (i, gc) in g.coeffs.iter().enumerate().take(gd + 1) {
                rem[shift + i] = rem[shift + i].add(&c.mul(gc));
            }
            debug_assert!(rem[rd].is_zero_at_prec(), "leading term failed to cancel");
            if rem.len() > 1 {
                rem.pop();
            }
            quot[shift] = c;
        }
        let q = Poly { coeffs: quot }.normalized();
        let r = Poly { coeffs: rem }.normalized();
        debug_assert!(
            q.mul(g).add(&r).add(self).is_zero(),
            "divmod round trip failed"
        );
        Ok((q, r))
    }

    pub fn monic(&self) -> Result<Poly> {
        let lead = self
            .leading()
            .ok_or_else(|| Error::InsufficientPrecision("monic of a vanishing polynomial".into()))?;
        Ok(self.scale(&lead.invert()?))
    }

    /// Formal derivative; in characteristic 2 the odd-degree terms shift down
    /// and the even-degree terms vanish.
    pub fn derivative(&self) -> Poly {
        if self.coeffs.len() == 1 {
            return Poly::zero(self.ctx(), self.min_prec());
        }
        let coeffs: Vec<LaurentSeries> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| {
                if i % 2 == 1 {
                    c.clone()
                } else {
                    LaurentSeries::zero(self.ctx(), c.prec())
                }
            })
            .collect();
        Poly { coeffs }.normalized()
    }

    /// Euclidean gcd, monic-normalized after every round so certificates are
    /// deterministic.
    pub fn gcd(&self, other: &Poly) -> Result<Poly> {
        let mut a = self.clone();
        let mut b = other.clone();
        if a.is_zero() {
            return if b.is_zero() { Ok(b) } else { b.monic() };
        }
        a = a.monic()?;
        while !b.is_zero() {
            b = b.monic()?;
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// True iff `gcd(f, f') = 1`.
    pub fn is_separable(&self) -> Result<bool> {
        if self.is_zero() {
            return Err(Error::Precondition("separability of the zero polynomial".into()));
        }
        let g = self.gcd(&self.derivative())?;
        Ok(g.degree() == Some(0))
    }

    /// Horner evaluation.
    pub fn eval(&self, point: &LaurentSeries) -> LaurentSeries {
        let mut acc = LaurentSeries::zero(self.ctx(), self.min_prec());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(point).add(c);
        }
        acc
    }

    /// Constant coefficients at `t = 0`. Errors when a coefficient has a pole
    /// or is not known through order zero.
    pub fn specialize_t0(&self) -> Result<Vec<GfElement>> {
        self.coeffs
            .iter()
            .map(|c| {
                if c.valuation().is_some_and(|v| v < 0) {
                    return Err(Error::SpecializationUndefined(format!(
                        "coefficient {c} has a pole at t = 0"
                    )));
                }
                c.coeff_at(0).ok_or_else(|| {
                    Error::InsufficientPrecision("coefficient unknown at order 0".into())
                })
            })
            .collect()
    }

    pub fn truncate(&self, prec: i64) -> Poly {
        Poly { coeffs: self.coeffs.iter().map(|c| c.truncate(prec)).collect() }.normalized()
    }

    /// Precision at which every coefficient has been verified to vanish, or
    /// `None` if the polynomial is visibly nonzero.
    pub fn residual_precision(&self) -> Option<i64> {
        let mut out = i64::MAX;
        for c in &self.coeffs {
            out = out.min(c.residual_precision()?);
        }
        Some(out)
    }
}

impl std::fmt::Display for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero_at_prec() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({})", c.display_terms(6))?,
                1 => write!(f, "({})*x", c.display_terms(6))?,
                _ => write!(f, "({})*x^{}", c.display_terms(6), i)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `s` such that `s * h = 1 (mod f)`, by the extended Euclidean algorithm.
/// Fails when the inputs are not coprime at the working precision.
pub fn invert_mod(h: &Poly, f: &Poly) -> Result<Poly> {
    let ctx = f.ctx();
    let prec = f.min_prec().min(h.min_prec());
    // invariant: s_i * h = r_i (mod f)
    let mut r0 = f.clone();
    let mut s0 = Poly::zero(ctx, prec);
    let mut r1 = h.divmod(f)?.1;
    let mut s1 = Poly::one(ctx, prec);
    while !r1.is_zero() {
        let (q, r2) = r0.divmod(&r1)?;
        let s2 = s0.add(&q.mul(&s1));
        r0 = r1;
        s0 = s1;
        r1 = r2;
        s1 = s2;
    }
    if r0.degree() != Some(0) {
        return Err(Error::InsufficientPrecision(format!(
            "inputs not coprime at working precision (gcd degree {:?})",
            r0.degree()
        )));
    }
    Ok(s0.scale(&r0.coeff(0).invert()?))
}

/// The factor `x^2 + a*t*x + 1`.
pub fn quadratic_factor(a: GfElement, ctx: GfContext, prec: i64) -> Poly {
    Poly::from_coeffs(vec![
        LaurentSeries::one(ctx, prec),
        LaurentSeries::monomial(ctx, a, 1, prec),
        LaurentSeries::one(ctx, prec),
    ])
}

/// Product of `x^2 + a*t*x + 1` over the nonzero elements `a` of the subfield
/// GF(2^(n-2)). Monic of degree `2*(2^(n-2) - 1)`; at `t = 0` it collapses to
/// `(x^2 + 1)^(2^(n-2) - 1)`.
pub fn build_mu(n: u32, ctx: GfContext, prec: i64) -> Result<Poly> {
    if n < 3 {
        return Err(Error::Precondition(format!("need n >= 3, got {n}")));
    }
    let sub = ctx.subfield_units(n - 2).map_err(|_| {
        Error::Config(format!(
            "GF(2^{}) does not contain GF(2^{})",
            ctx.degree(),
            n - 2
        ))
    })?;
    let mut mu = Poly::one(ctx, prec);
    for a in sub {
        mu = mu.mul(&quadratic_factor(a, ctx, prec));
    }
    Ok(mu)
}

/// `(x + c1)(x + c2) * mu`: monic of degree `2^(n-1)` whose `t = 0`
/// specialization is `x^(2^(n-1)) + 1`.
pub fn build_pi(n: u32, c1: &LaurentSeries, c2: &LaurentSeries) -> Result<Poly> {
    if !c1.is_one_unit() || !c2.is_one_unit() {
        return Err(Error::Precondition("c1 and c2 must be 1-units".into()));
    }
    if c1.add(c2).is_zero_at_prec() {
        return Err(Error::DegenerateInput(
            "c1 and c2 coincide at the working precision".into(),
        ));
    }
    let ctx = c1.ctx();
    let prec = c1.prec().min(c2.prec());
    let mu = build_mu(n, ctx, prec)?;
    let lin1 = Poly::from_coeffs(vec![c1.clone(), LaurentSeries::one(ctx, prec)]);
    let lin2 = Poly::from_coeffs(vec![c2.clone(), LaurentSeries::one(ctx, prec)]);
    Ok(lin1.mul(&lin2).mul(&mu))
}

/// `p = (d*x^2 + b*t*x + 1) * mu` and `f = p + x^2 + 1`.
pub fn build_p_and_f(n: u32, b: &LaurentSeries, d: &LaurentSeries) -> Result<(Poly, Poly)> {
    if !d.is_one_unit() {
        return Err(Error::Precondition("d must be a 1-unit".into()));
    }
    if b.valuation().is_some_and(|v| v < 0) {
        return Err(Error::Precondition("b must have valuation >= 0".into()));
    }
    let ctx = d.ctx();
    let prec = d.prec().min(b.prec());
    let mu = build_mu(n, ctx, prec)?;
    let head = Poly::from_coeffs(vec![
        LaurentSeries::one(ctx, prec),
        b.shift(1),
        d.clone(),
    ]);
    let p = head.mul(&mu);
    let x2_plus_1 = Poly::from_coeffs(vec![
        LaurentSeries::one(ctx, prec),
        LaurentSeries::zero(ctx, prec),
        LaurentSeries::one(ctx, prec),
    ]);
    let f = p.add(&x2_plus_1);
    Ok((p, f))
}

/// Exhaustively checks whether `x^2 + a*t*x + 1` has a root `u0 + u1*t`
/// modulo `t^2` with `u0, u1` in the coefficient field. A `false` answer
/// certifies irreducibility of the quadratic over k((t)).
pub fn quadratic_has_root_mod_t2(a: GfElement, ctx: GfContext) -> bool {
    let quad = quadratic_factor(a, ctx, 2);
    for u0 in 0..ctx.order() as u32 {
        for u1 in 0..ctx.order() as u32 {
            let root = LaurentSeries::from_terms(
                ctx,
                &[(0, ctx.element(u0).unwrap()), (1, ctx.element(u1).unwrap())],
                2,
            );
            if quad.eval(&root).is_zero_at_prec() {
                return true;
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f4() -> GfContext {
        GfContext::with_degree(2).unwrap()
    }

    fn g() -> GfElement {
        f4().element(0b10).unwrap()
    }

    const P: i64 = 24;

    fn one() -> LaurentSeries {
        LaurentSeries::one(f4(), P)
    }

    fn t(exp: i64) -> LaurentSeries {
        LaurentSeries::monomial(f4(), GfElement::ONE, exp, P)
    }

    fn x_plus_one() -> Poly {
        Poly::from_coeffs(vec![one(), one()])
    }

    /// x^2 + a*t*x + 1 reduction oracle for powers of x: represents
    /// x^(2^j) = coef*x + konst via the square-doubling recurrence, fully
    /// independently of `divmod`.
    fn doubling_remainder(a: GfElement, j: u32) -> (LaurentSeries, LaurentSeries) {
        let ctx = f4();
        let mut coef = one();
        let mut konst = LaurentSeries::zero(ctx, P);
        for step in 0..j {
            let at_pow = LaurentSeries::monomial(ctx, ctx.pow(a, 1 << step), 1 << step, P);
            let new_coef = at_pow.mul(&coef);
            let new_konst = at_pow.mul(&konst).add(&one());
            coef = new_coef;
            konst = new_konst;
        }
        (coef, konst)
    }

    #[test]
    fn divmod_char2_square() {
        let x2_plus_1 = Poly::from_coeffs(vec![one(), LaurentSeries::zero(f4(), P), one()]);
        let (q, r) = x2_plus_1.divmod(&x_plus_one()).unwrap();
        assert!(r.is_zero());
        assert_eq!(q.degree(), Some(1));
        assert!(q.add(&x_plus_one()).is_zero(), "quotient should be x + 1");
    }

    #[test]
    fn divmod_direct_subtraction() {
        // (x^2 + t x) / (x^2 + t x + 1) -> quotient 1, remainder 1
        let num = Poly::from_coeffs(vec![LaurentSeries::zero(f4(), P), t(1), one()]);
        let den = Poly::from_coeffs(vec![one(), t(1), one()]);
        let (q, r) = num.divmod(&den).unwrap();
        assert_eq!(q.degree(), Some(0));
        assert!(q.coeff(0).is_one_unit());
        assert_eq!(r.degree(), Some(0));
        assert!(r.coeff(0).is_one_unit());
    }

    #[test]
    fn divmod_matches_doubling_oracle() {
        // remainder of x^4 + t^3 x by x^2 + a t x + 1 equals a^2 t^2 + 1 over F_4
        for abits in 1..4u32 {
            let a = f4().element(abits).unwrap();
            let num = Poly::from_coeffs(vec![
                LaurentSeries::zero(f4(), P),
                t(3),
                LaurentSeries::zero(f4(), P),
                LaurentSeries::zero(f4(), P),
                one(),
            ]);
            let den = quadratic_factor(a, f4(), P);
            let (_, r) = num.divmod(&den).unwrap();

            // oracle: two doubling steps give x^4 = coef*x + konst
            let (coef, konst) = doubling_remainder(a, 2);
            let expect_lin = coef.add(&t(3));
            let expect = Poly::from_coeffs(vec![konst, expect_lin]);
            assert!(r.add(&expect).is_zero(), "a = {abits}: {r} vs {expect}");

            // and the constant is a^2 t^2 + 1
            let a2t2p1 = LaurentSeries::from_terms(
                f4(),
                &[(0, GfElement::ONE), (2, f4().mul(a, a))],
                P,
            );
            assert_eq!(r.degree(), Some(0));
            assert!(r.coeff(0).add(&a2t2p1).is_zero_at_prec());
        }
    }

    #[test]
    fn separability() {
        for abits in 1..4u32 {
            let q = quadratic_factor(f4().element(abits).unwrap(), f4(), P);
            assert!(q.is_separable().unwrap());
        }
        // x^2 + 1 = (x + 1)^2 is not separable
        let sq = Poly::from_coeffs(vec![one(), LaurentSeries::zero(f4(), P), one()]);
        assert!(!sq.is_separable().unwrap());
    }

    #[test]
    fn mu_examples() {
        // n = 3: only a = 1 contributes
        let mu3 = build_mu(3, f4(), P).unwrap();
        let expect = quadratic_factor(GfElement::ONE, f4(), P);
        assert!(mu3.add(&expect).is_zero());
        // evaluation at the 1-unit 1 gives exactly t
        let at_one = mu3.eval(&one());
        assert_eq!(at_one.leading(), Some((1, GfElement::ONE)));
        assert!(at_one.add(&t(1)).is_zero_at_prec());

        // n = 4 at t = 0: (x^2 + 1)^3 = x^6 + x^4 + x^2 + 1
        let mu4 = build_mu(4, f4(), P).unwrap();
        assert_eq!(mu4.degree(), Some(6));
        let consts = mu4.specialize_t0().unwrap();
        let bits: Vec<u32> = consts.iter().map(|c| c.bits()).collect();
        assert_eq!(bits, vec![1, 0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn mu_unit_valuation_property() {
        // mu(u) has valuation exactly 2^(n-2) - 1 with 1-unit cofactor.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for n in [3u32, 4] {
            let mu = build_mu(n, f4(), P).unwrap();
            let want = (1i64 << (n - 2)) - 1;
            for _ in 0..20 {
                let mut terms = vec![(0i64, GfElement::ONE)];
                for e in 1..8 {
                    terms.push((e, f4().element(rng.gen_range(0..4)).unwrap()));
                }
                let u = LaurentSeries::from_terms(f4(), &terms, P);
                let v = mu.eval(&u);
                assert_eq!(v.valuation(), Some(want), "mu(u) valuation for n={n}");
                let cof = v.mul(&t(want).invert().unwrap());
                assert!(cof.is_one_unit());
            }
        }
    }

    #[test]
    fn pi_examples() {
        let alpha2 = g();
        for n in [3u32, 4] {
            let m = 1i64 << (n - 2);
            let c1 = one().add(&t(m));
            let c2 = one().add(&LaurentSeries::monomial(f4(), alpha2, m, P));
            let pi = build_pi(n, &c1, &c2).unwrap();
            assert_eq!(pi.degree(), Some(1 << (n - 1)));
            assert!(pi.leading().unwrap().is_one_unit(), "monic");
            // t = 0 specialization is x^(2^(n-1)) + 1
            let consts = pi.specialize_t0().unwrap();
            for (i, c) in consts.iter().enumerate() {
                let want = i == 0 || i == (1 << (n - 1));
                assert_eq!(!c.is_zero(), want, "n={n} coefficient {i}");
                if want {
                    assert!(c.is_one());
                }
            }
            // constant term is a 1-unit (c1 * c2 * 1)
            assert!(pi.coeff(0).is_one_unit());
            assert!(pi.is_separable().unwrap());
        }
    }

    #[test]
    fn pi_rejects_coinciding_roots() {
        let c = one().add(&t(2));
        assert!(matches!(build_pi(3, &c, &c), Err(Error::DegenerateInput(_))));
        assert!(matches!(build_pi(3, &t(1), &c), Err(Error::Precondition(_))));
    }

    #[test]
    fn p_and_f_examples() {
        let b = t(1);
        let d = one().add(&t(3));
        for n in [3u32, 4] {
            let (p, f) = build_p_and_f(n, &b, &d).unwrap();
            assert_eq!(p.degree(), Some(1 << (n - 1)));
            assert!(p.coeff(0).is_one_unit(), "p(0) = 1");
            // t = 0: p collapses to x^(2^(n-1)) + 1, f to x^(2^(n-1)) + x^2
            let pc = p.specialize_t0().unwrap();
            assert!(pc[0].is_one() && pc[1 << (n - 1)].is_one());
            assert_eq!(pc.iter().filter(|c| !c.is_zero()).count(), 2);
            let fc = f.specialize_t0().unwrap();
            assert!(fc[2].is_one() && fc[1 << (n - 1)].is_one());
            assert_eq!(fc.iter().filter(|c| !c.is_zero()).count(), 2);
        }
        let not_unit = t(1);
        assert!(matches!(build_p_and_f(3, &b, &not_unit), Err(Error::Precondition(_))));
    }

    #[test]
    fn no_root_mod_t2() {
        for abits in 1..4u32 {
            assert!(!quadratic_has_root_mod_t2(f4().element(abits).unwrap(), f4()));
        }
        // sanity: a = 0 degenerates to (x + 1)^2, which does have roots
        assert!(quadratic_has_root_mod_t2(GfElement::ZERO, f4()));
    }

    #[test]
    fn invert_mod_round_trip() {
        let f = quadratic_factor(GfElement::ONE, f4(), P);
        let h = Poly::from_coeffs(vec![t(1).add(&one()), one()]); // x + 1 + t
        let s = invert_mod(&h, &f).unwrap();
        let (_, r) = s.mul(&h).divmod(&f).unwrap();
        assert!(r.add(&Poly::one(f4(), P)).is_zero(), "s*h != 1 mod f: {r}");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly(max_deg: usize, prec: i64) -> impl Strategy<Value = Poly> {
            proptest::collection::vec(
                proptest::collection::vec((0i64..6, 0u32..4), 0..3),
                1..=max_deg + 1,
            )
            .prop_map(move |coeffs| {
                let ctx = f4();
                let series: Vec<LaurentSeries> = coeffs
                    .into_iter()
                    .map(|terms| {
                        let terms: Vec<(i64, GfElement)> = terms
                            .into_iter()
                            .map(|(e, b)| (e, ctx.element(b).unwrap()))
                            .collect();
                        LaurentSeries::from_terms(ctx, &terms, prec)
                    })
                    .collect();
                Poly::from_coeffs(series)
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]
            #[test]
            fn divmod_round_trip(f in arb_poly(5, 16), gt in arb_poly(3, 16)) {
                prop_assume!(gt.degree().is_some());
                let (q, r) = f.divmod(&gt).unwrap();
                if let (Some(rd), Some(gd)) = (r.degree(), gt.degree()) {
                    prop_assert!(rd < gd);
                }
                let back = q.mul(&gt).add(&r);
                prop_assert!(back.add(&f).is_zero(), "q*g + r != f");
            }
        }
    }
}
