//! Truncated formal Laurent series over GF(2^s) with explicit valuation and
//! absolute-precision tracking.
//!
//! A series is known modulo `t^prec`. The coefficient of `t^(val + i)` is
//! `coeffs[i]`; coefficients between the end of `coeffs` and `prec` are
//! exactly zero (the stored window is trimmed at both ends, so `coeffs` is
//! empty or starts and ends with a nonzero element). The zero-at-precision
//! series has empty coefficients and `val == prec`. Every equality check
//! downstream is "residual valuation >= tracked precision", never equality of
//! untruncated objects. The serialized form pads the window back out to
//! `prec - val` coefficients.

use crate::error::{Error, Result};
use crate::finite_field::{GfContext, GfElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentSeries {
    ctx: GfContext,
    val: i64,
    prec: i64,
    coeffs: Vec<GfElement>,
}

fn dense_mul_trunc(ctx: &GfContext, a: &[GfElement], b: &[GfElement], k: usize) -> Vec<GfElement> {
    let len = k.min(a.len() + b.len() - 1);
    let mut out = vec![GfElement::ZERO; len];
    for (i, &x) in a.iter().enumerate() {
        if i >= len || x.is_zero() {
            continue;
        }
        let jmax = (len - i).min(b.len());
        for (j, &y) in b[..jmax].iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += ctx.mul(x, y);
            }
        }
    }
    out
}

impl LaurentSeries {
    pub fn zero(ctx: GfContext, prec: i64) -> Self {
        LaurentSeries { ctx, val: prec, prec, coeffs: Vec::new() }
    }

    pub fn one(ctx: GfContext, prec: i64) -> Self {
        Self::monomial(ctx, GfElement::ONE, 0, prec)
    }

    /// The single-term series `c * t^exp`, known modulo `t^prec`.
    pub fn monomial(ctx: GfContext, c: GfElement, exp: i64, prec: i64) -> Self {
        if c.is_zero() || exp >= prec {
            return Self::zero(ctx, prec);
        }
        LaurentSeries { ctx, val: exp, prec, coeffs: vec![c] }
    }

    /// Build from sparse `(exponent, coefficient)` terms; exponents at or
    /// above `prec` are discarded, repeated exponents accumulate by XOR.
    pub fn from_terms(ctx: GfContext, terms: &[(i64, GfElement)], prec: i64) -> Self {
        let live: Vec<(i64, GfElement)> =
            terms.iter().copied().filter(|&(e, c)| e < prec && !c.is_zero()).collect();
        let Some(lo) = live.iter().map(|&(e, _)| e).min() else {
            return Self::zero(ctx, prec);
        };
        let hi = live.iter().map(|&(e, _)| e).max().unwrap();
        let mut coeffs = vec![GfElement::ZERO; (hi - lo + 1) as usize];
        for (e, c) in live {
            coeffs[(e - lo) as usize] += c;
        }
        (LaurentSeries { ctx, val: lo, prec, coeffs }).normalized()
    }

    fn normalized(mut self) -> Self {
        match self.coeffs.iter().position(|c| !c.is_zero()) {
            None => {
                self.coeffs.clear();
                self.val = self.prec;
            }
            Some(k) => {
                self.coeffs.drain(..k);
                self.val += k as i64;
                let last = self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap();
                self.coeffs.truncate(last + 1);
                debug_assert!(self.coeffs.len() as i64 <= self.prec - self.val);
            }
        }
        self
    }

    pub fn ctx(&self) -> GfContext {
        self.ctx
    }

    pub fn prec(&self) -> i64 {
        self.prec
    }

    /// Valuation of the lowest nonzero term, or `None` when the series is
    /// indistinguishable from zero at its precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn is_zero_at_prec(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one_unit(&self) -> bool {
        !self.coeffs.is_empty() && self.val == 0 && self.coeffs[0].is_one()
    }

    /// Leading `(exponent, coefficient)` pair, if any.
    pub fn leading(&self) -> Option<(i64, GfElement)> {
        self.coeffs.first().map(|&c| (self.val, c))
    }

    /// Coefficient of `t^exp`; `None` when `exp` is beyond the precision.
    pub fn coeff_at(&self, exp: i64) -> Option<GfElement> {
        if exp >= self.prec {
            return None;
        }
        let i = exp - self.val;
        if i < 0 || i >= self.coeffs.len() as i64 {
            return Some(GfElement::ZERO);
        }
        Some(self.coeffs[i as usize])
    }

    pub fn add(&self, other: &LaurentSeries) -> LaurentSeries {
        debug_assert_eq!(self.ctx, other.ctx, "mixed field contexts");
        let prec = self.prec.min(other.prec);
        if self.coeffs.is_empty() && other.coeffs.is_empty() {
            return Self::zero(self.ctx, prec);
        }
        let lo = match (self.coeffs.is_empty(), other.coeffs.is_empty()) {
            (false, false) => self.val.min(other.val),
            (false, true) => self.val,
            (true, false) => other.val,
            (true, true) => unreachable!(),
        };
        if lo >= prec {
            return Self::zero(self.ctx, prec);
        }
        let hi_of = |s: &LaurentSeries| s.val + s.coeffs.len() as i64;
        let hi = hi_of(self).max(hi_of(other)).min(prec);
        let mut coeffs = vec![GfElement::ZERO; (hi - lo) as usize];
        for src in [self, other] {
            for (i, &c) in src.coeffs.iter().enumerate() {
                let e = src.val + i as i64;
                if e < prec {
                    coeffs[(e - lo) as usize] += c;
                }
            }
        }
        (LaurentSeries { ctx: self.ctx, val: lo, prec, coeffs }).normalized()
    }

    /// Cauchy product. Result precision is
    /// `min(a.prec + b.val, b.prec + a.val)`.
    pub fn mul(&self, other: &LaurentSeries) -> LaurentSeries {
        debug_assert_eq!(self.ctx, other.ctx, "mixed field contexts");
        let va = self.val;
        let vb = other.val;
        let prec = (self.prec + vb).min(other.prec + va);
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero(self.ctx, prec);
        }
        let lo = va + vb;
        if lo >= prec {
            return Self::zero(self.ctx, prec);
        }
        let coeffs = dense_mul_trunc(&self.ctx, &self.coeffs, &other.coeffs, (prec - lo) as usize);
        (LaurentSeries { ctx: self.ctx, val: lo, prec, coeffs }).normalized()
    }

    /// Multiply by the scalar `c`.
    pub fn scale(&self, c: GfElement) -> LaurentSeries {
        if c.is_zero() {
            return Self::zero(self.ctx, self.prec);
        }
        let coeffs = self.coeffs.iter().map(|&a| self.ctx.mul(a, c)).collect();
        LaurentSeries { ctx: self.ctx, val: self.val, prec: self.prec, coeffs }
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentSeries {
        LaurentSeries {
            ctx: self.ctx,
            val: self.val + k,
            prec: self.prec + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Forget knowledge beyond `t^new_prec`. Precision can only shrink.
    pub fn truncate(&self, new_prec: i64) -> LaurentSeries {
        let prec = self.prec.min(new_prec);
        if self.coeffs.is_empty() || self.val >= prec {
            return Self::zero(self.ctx, prec);
        }
        let keep = (self.coeffs.len() as i64).min(prec - self.val) as usize;
        let coeffs = self.coeffs[..keep].to_vec();
        (LaurentSeries { ctx: self.ctx, val: self.val, prec, coeffs }).normalized()
    }

    /// Invert a series that is nonzero at its precision. Factoring
    /// `a = t^v * c0 * u` with `u` a 1-unit, the 1-unit part is inverted by
    /// the characteristic-2 Newton step `y <- u * y^2`: the residual
    /// `1 + u*y` squares each round, so the number of correct coefficients
    /// doubles. Result valuation is `-v`, result precision `prec - 2v`.
    pub fn invert(&self) -> Result<LaurentSeries> {
        if self.coeffs.is_empty() {
            return Err(Error::InsufficientPrecision(
                "cannot invert a series indistinguishable from zero".into(),
            ));
        }
        let v = self.val;
        let rel = (self.prec - v) as usize; // >= 1
        let c0_inv = self.ctx.inv(self.coeffs[0])?;
        let unit: Vec<GfElement> = self.coeffs.iter().map(|&c| self.ctx.mul(c, c0_inv)).collect();
        let mut y = vec![GfElement::ONE];
        let mut k = 1usize;
        while k < rel {
            k = (2 * k).min(rel);
            let u_k = &unit[..k.min(unit.len())];
            let y2 = dense_mul_trunc(&self.ctx, &y, &y, k);
            y = dense_mul_trunc(&self.ctx, u_k, &y2, k);
        }
        debug_assert!(y[0].is_one());
        let coeffs: Vec<GfElement> = y.iter().map(|&c| self.ctx.mul(c, c0_inv)).collect();
        let out = LaurentSeries {
            ctx: self.ctx,
            val: -v,
            prec: self.prec - 2 * v,
            coeffs,
        };
        Ok(out.normalized())
    }

    /// Precision at which this series has been verified to vanish, or `None`
    /// if it is visibly nonzero.
    pub fn residual_precision(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            Some(self.prec)
        } else {
            None
        }
    }

    /// Coefficient window padded to the full `prec - val` length used by the
    /// serialized form.
    pub fn dense_coeffs(&self) -> Vec<GfElement> {
        if self.coeffs.is_empty() {
            return Vec::new();
        }
        let mut out = self.coeffs.clone();
        out.resize((self.prec - self.val) as usize, GfElement::ZERO);
        out
    }

    /// Render at most `max_terms` leading terms, with coefficients in hex.
    pub fn display_terms(&self, max_terms: usize) -> String {
        if self.coeffs.is_empty() {
            return format!("O(t^{})", self.prec);
        }
        let mut parts = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if parts.len() == max_terms {
                parts.push("...".to_string());
                break;
            }
            let e = self.val + i as i64;
            let cs = self.ctx.element_to_hex(c);
            parts.push(match e {
                0 => cs,
                1 => format!("{cs}*t"),
                _ => format!("{cs}*t^{e}"),
            });
        }
        format!("{} + O(t^{})", parts.join(" + "), self.prec)
    }
}

impl std::fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.display_terms(usize::MAX))
    }
}
