//! Lazily evaluated products of the curvature tensors of one point.
//!
//! The `(0,6)` tensors (`R·R`, `Q(S,R)`, …) dominate the cost of both the
//! identity suite and the classifier, so each is computed at most once per
//! point and shared.
//!
//! Every accessor returns a [`Term`]: the tensor together with the size it
//! would have if nothing cancelled, built from operand magnitudes. At
//! Einstein or umbilical points many products vanish up to rounding, and
//! residuals are then measured against this natural size instead of noise.

use crate::error::Result;
use crate::model::PointGeometry;
use crate::tensor::{
    derivation_action2, derivation_action4, kn_product, tachibana2, tachibana4, CurvTensor4,
    DenseTensor, SymTensor2, Term, Tensor6,
};
use std::cell::OnceCell;

/// Cancellation-free magnitudes of the basic tensors of a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Magnitudes {
    pub g: f64,
    /// `‖g⁻¹‖`, the factor picked up by every contraction.
    pub g_inv: f64,
    pub h: f64,
    pub h2: f64,
    pub s: f64,
    pub s2: f64,
    pub s3: f64,
    pub r: f64,
    pub weyl: f64,
    pub gauss: f64,
    /// `‖S²‖ + |ρ₁|‖S‖ + |ρ₀|‖g‖`, the size of `A = S² − ρ₁S − ρ₀g`.
    pub a: f64,
}

impl Magnitudes {
    pub fn of(p: &PointGeometry) -> Self {
        let n = p.dim() as f64;
        let g = p.g().norm();
        let g_inv = p.frame.inverse_metric().norm();
        let h = p.h.norm();
        let h2 = p.h2.norm().max(h * h * g_inv);
        let k = ((n - 1.0) * p.c()).abs();
        let s = p.s.norm().max(p.tr_h.abs() * h + h2 + k * g);
        let s2 = p.s2.norm().max(s * s * g_inv);
        let s3 = p.s3.norm().max(s2 * s * g_inv);
        let gauss = p.gauss.norm();
        let r = p.r.norm().max(h * h + p.c().abs() * gauss);
        let weyl = if n >= 4.0 {
            r + 2.0 * g * s / (n - 2.0) + p.kappa.abs() * gauss / ((n - 2.0) * (n - 1.0))
        } else {
            0.0
        };
        let a = s2 + p.rho1.abs() * s + p.rho0.abs() * g;
        Self {
            g,
            g_inv,
            h,
            h2,
            s,
            s2,
            s3,
            r,
            weyl,
            gauss,
            a,
        }
    }
}

macro_rules! cached {
    ($name:ident, $ty:ty, |$s:ident| $body:expr, |$m:ident| $nat:expr) => {
        pub fn $name(&self) -> Term<'_, $ty> {
            let t = self.$name.get_or_init(|| {
                let $s = self;
                $body
            });
            let $m = &self.mag;
            Term::new(t, $nat)
        }
    };
}

macro_rules! cached_weyl {
    ($name:ident, $ty:ty, |$s:ident, $c:ident| $body:expr, |$m:ident| $nat:expr) => {
        pub fn $name(&self) -> Result<Term<'_, $ty>> {
            let $c = self.point.weyl_tensor()?;
            let t = self.$name.get_or_init(|| {
                let $s = self;
                $body
            });
            let $m = &self.mag;
            Ok(Term::new(t, $nat))
        }
    };
}

/// Per-point cache of derived products. Not `Sync`; build one per thread.
pub struct Derived<'a> {
    pub point: &'a PointGeometry,
    pub mag: Magnitudes,
    rr: OnceCell<Tensor6>,
    rc: OnceCell<Tensor6>,
    cr: OnceCell<Tensor6>,
    cc: OnceCell<Tensor6>,
    q_g_r: OnceCell<Tensor6>,
    q_s_r: OnceCell<Tensor6>,
    q_g_c: OnceCell<Tensor6>,
    q_s_g4: OnceCell<Tensor6>,
    q_h_g4: OnceCell<Tensor6>,
    rs: OnceCell<CurvTensor4>,
    cs: OnceCell<CurvTensor4>,
    q_g_s: OnceCell<CurvTensor4>,
    q_g_s2: OnceCell<CurvTensor4>,
    q_g_h: OnceCell<CurvTensor4>,
    q_h_s: OnceCell<CurvTensor4>,
    q_s_s2: OnceCell<CurvTensor4>,
    q_h_h2: OnceCell<CurvTensor4>,
    g_wedge_s: OnceCell<CurvTensor4>,
    g_wedge_h: OnceCell<CurvTensor4>,
    s_wedge_s: OnceCell<CurvTensor4>,
}

impl<'a> Derived<'a> {
    pub fn new(point: &'a PointGeometry) -> Self {
        Self {
            point,
            mag: Magnitudes::of(point),
            rr: OnceCell::new(),
            rc: OnceCell::new(),
            cr: OnceCell::new(),
            cc: OnceCell::new(),
            q_g_r: OnceCell::new(),
            q_s_r: OnceCell::new(),
            q_g_c: OnceCell::new(),
            q_s_g4: OnceCell::new(),
            q_h_g4: OnceCell::new(),
            rs: OnceCell::new(),
            cs: OnceCell::new(),
            q_g_s: OnceCell::new(),
            q_g_s2: OnceCell::new(),
            q_g_h: OnceCell::new(),
            q_h_s: OnceCell::new(),
            q_s_s2: OnceCell::new(),
            q_h_h2: OnceCell::new(),
            g_wedge_s: OnceCell::new(),
            g_wedge_h: OnceCell::new(),
            s_wedge_s: OnceCell::new(),
        }
    }

    fn g(&self) -> &SymTensor2 {
        self.point.g()
    }

    /// `R` with its natural magnitude.
    pub fn r(&self) -> Term<'_, CurvTensor4> {
        Term::new(&self.point.r, self.mag.r)
    }

    pub fn s(&self) -> Term<'_, SymTensor2> {
        Term::new(&self.point.s, self.mag.s)
    }

    pub fn s2(&self) -> Term<'_, SymTensor2> {
        Term::new(&self.point.s2, self.mag.s2)
    }

    pub fn s3(&self) -> Term<'_, SymTensor2> {
        Term::new(&self.point.s3, self.mag.s3)
    }

    pub fn a(&self) -> Term<'_, SymTensor2> {
        Term::new(&self.point.a, self.mag.a)
    }

    pub fn weyl(&self) -> Result<Term<'_, CurvTensor4>> {
        Ok(Term::new(self.point.weyl_tensor()?, self.mag.weyl))
    }

    cached!(rr, Tensor6, |s| act4(&s.point.r, &s.point.r, s), |m| m.r * m.r * m.g_inv);
    cached!(q_g_r, Tensor6, |s| q4(s.g(), &s.point.r), |m| m.g * m.r);
    cached!(q_s_r, Tensor6, |s| q4(&s.point.s, &s.point.r), |m| m.s * m.r);
    cached!(q_s_g4, Tensor6, |s| q4(&s.point.s, &s.point.gauss), |m| m.s * m.gauss);
    cached!(q_h_g4, Tensor6, |s| q4(&s.point.h, &s.point.gauss), |m| m.h * m.gauss);
    cached!(rs, CurvTensor4, |s| act2(&s.point.r, &s.point.s, s), |m| m.r * m.s * m.g_inv);
    cached!(q_g_s, CurvTensor4, |s| q2(s.g(), &s.point.s), |m| m.g * m.s);
    cached!(q_g_s2, CurvTensor4, |s| q2(s.g(), &s.point.s2), |m| m.g * m.s2);
    cached!(q_g_h, CurvTensor4, |s| q2(s.g(), &s.point.h), |m| m.g * m.h);
    cached!(q_h_s, CurvTensor4, |s| q2(&s.point.h, &s.point.s), |m| m.h * m.s);
    cached!(q_s_s2, CurvTensor4, |s| q2(&s.point.s, &s.point.s2), |m| m.s * m.s2);
    cached!(q_h_h2, CurvTensor4, |s| q2(&s.point.h, &s.point.h2), |m| m.h * m.h2);
    cached!(g_wedge_s, CurvTensor4, |s| kn(s.g(), &s.point.s), |m| m.g * m.s);
    cached!(g_wedge_h, CurvTensor4, |s| kn(s.g(), &s.point.h), |m| m.g * m.h);
    cached!(s_wedge_s, CurvTensor4, |s| kn(&s.point.s, &s.point.s), |m| m.s * m.s);

    cached_weyl!(rc, Tensor6, |s, c| act4(&s.point.r, c, s), |m| m.r * m.weyl * m.g_inv);
    cached_weyl!(cr, Tensor6, |s, c| act4(c, &s.point.r, s), |m| m.r * m.weyl * m.g_inv);
    cached_weyl!(cc, Tensor6, |s, c| act4(c, c, s), |m| m.weyl * m.weyl * m.g_inv);
    cached_weyl!(q_g_c, Tensor6, |s, c| q4(s.g(), c), |m| m.g * m.weyl);
    cached_weyl!(cs, CurvTensor4, |s, c| act2(c, &s.point.s, s), |m| m.weyl * m.s * m.g_inv);
}

// Dimensions are consistent by construction inside one point, so the
// products cannot fail here.
fn kn(a: &SymTensor2, b: &SymTensor2) -> CurvTensor4 {
    kn_product(a, b).expect("same-frame tensors")
}

fn q2(a: &SymTensor2, t: &SymTensor2) -> CurvTensor4 {
    tachibana2(a, t).expect("same-frame tensors")
}

fn q4(a: &SymTensor2, t: &CurvTensor4) -> Tensor6 {
    tachibana4(a, t).expect("same-frame tensors")
}

fn act2(b: &CurvTensor4, t: &SymTensor2, d: &Derived<'_>) -> CurvTensor4 {
    derivation_action2(b, t, &d.point.frame).expect("same-frame tensors")
}

fn act4(b: &CurvTensor4, t: &CurvTensor4, d: &Derived<'_>) -> Tensor6 {
    derivation_action4(b, t, &d.point.frame).expect("same-frame tensors")
}
