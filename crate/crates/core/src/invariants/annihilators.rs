//! Cayley–Sylvester–Aronhold operators on polynomials in the coefficients a_0..a_n of a
//! binary n-ic, optionally together with the point variables ξ, η.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Variable layout: a_0..a_n, then ξ and η when `with_point` is set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradientSpace {
    pub n: usize,
    pub with_point: bool,
}

impl GradientSpace {
    pub fn coefficients(n: usize) -> Self {
        GradientSpace { n, with_point: false }
    }

    pub fn with_point(n: usize) -> Self {
        GradientSpace { n, with_point: true }
    }

    pub fn nvars(&self) -> usize {
        self.n + 1 + if self.with_point { 2 } else { 0 }
    }

    pub fn a(&self, k: usize) -> MultiPoly {
        MultiPoly::var(self.nvars(), k)
    }

    fn xi_index(&self) -> Result<usize> {
        if self.with_point {
            Ok(self.n + 1)
        } else {
            Err(Error::arg("the primed operators need the point variables ξ, η"))
        }
    }

    pub fn xi(&self) -> Result<MultiPoly> {
        Ok(MultiPoly::var(self.nvars(), self.xi_index()?))
    }

    pub fn eta(&self) -> Result<MultiPoly> {
        Ok(MultiPoly::var(self.nvars(), self.xi_index()? + 1))
    }

    /// The ground form Σ C(n,r) a_r ξ^{n−r} η^r.
    pub fn ground_form(&self) -> Result<MultiPoly> {
        let (xi, eta) = (self.xi()?, self.eta()?);
        let mut acc = MultiPoly::zero(self.nvars());
        for r in 0..=self.n {
            let mut t = self.a(r).scale(&BigRational::from_integer(crate::numcore::binomial(self.n, r)));
            for _ in 0..self.n - r {
                t = &t * &xi;
            }
            for _ in 0..r {
                t = &t * &eta;
            }
            acc = &acc + &t;
        }
        Ok(acc)
    }

    fn check(&self, f: &MultiPoly) -> Result<()> {
        if f.nvars() != self.nvars() {
            return Err(Error::arg(format!("expected {} variables, got {}", self.nvars(), f.nvars())));
        }
        Ok(())
    }
}

fn int(k: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(k))
}

/// Ω = Σ_k (k+1) a_k ∂/∂a_{k+1}.
pub fn annihilator_omega(f: &MultiPoly, space: GradientSpace) -> Result<MultiPoly> {
    space.check(f)?;
    let mut acc = MultiPoly::zero(space.nvars());
    for k in 0..space.n {
        acc = &acc + &f.derivative(k + 1).mul_var(k).scale(&int(k + 1));
    }
    Ok(acc)
}

/// O = Σ_k (n−k) a_{k+1} ∂/∂a_k.
pub fn annihilator_o(f: &MultiPoly, space: GradientSpace) -> Result<MultiPoly> {
    space.check(f)?;
    let mut acc = MultiPoly::zero(space.nvars());
    for k in 0..space.n {
        acc = &acc + &f.derivative(k).mul_var(k + 1).scale(&int(space.n - k));
    }
    Ok(acc)
}

/// Ω′ = Ω − η ∂/∂ξ.
pub fn annihilator_omega_primed(f: &MultiPoly, space: GradientSpace) -> Result<MultiPoly> {
    let xi = space.xi_index()?;
    Ok(&annihilator_omega(f, space)? - &f.derivative(xi).mul_var(xi + 1))
}

/// O′ = O − ξ ∂/∂η.
pub fn annihilator_o_primed(f: &MultiPoly, space: GradientSpace) -> Result<MultiPoly> {
    let xi = space.xi_index()?;
    Ok(&annihilator_o(f, space)? - &f.derivative(xi + 1).mul_var(xi))
}

/// ½[O, Ω] F, or ½[O′, Ω′] F when the point variables are present.
pub fn weight_operator(f: &MultiPoly, space: GradientSpace) -> Result<MultiPoly> {
    let (o, om): (fn(&MultiPoly, GradientSpace) -> Result<MultiPoly>, fn(&MultiPoly, GradientSpace) -> Result<MultiPoly>) =
        if space.with_point { (annihilator_o_primed, annihilator_omega_primed) } else { (annihilator_o, annihilator_omega) };
    let commutator = &o(&om(f, space)?, space)? - &om(&o(f, space)?, space)?;
    Ok(commutator.scale(&BigRational::new(1.into(), 2.into())))
}

/// Twice the weight of a monomial: Σ e_k (2k − n) + e_ξ − e_η.
pub fn monomial_weight_twice(exps: &[u32], space: GradientSpace) -> i64 {
    let n = space.n as i64;
    let mut w: i64 = (0..=space.n).map(|k| exps[k] as i64 * (2 * k as i64 - n)).sum();
    if space.with_point {
        w += exps[space.n + 1] as i64 - exps[space.n + 2] as i64;
    }
    w
}

/// Twice the common weight of an isobaric polynomial; `None` when the weights differ.
pub fn isobaric_weight_twice(f: &MultiPoly, space: GradientSpace) -> Option<i64> {
    let mut weights = f.terms().map(|(e, _)| monomial_weight_twice(e, space));
    let first = weights.next().unwrap_or(0);
    weights.all(|w| w == first).then_some(first)
}

fn factorial_rational(k: usize) -> BigRational {
    BigRational::from_integer(crate::numcore::factorial(k))
}

/// K = Σ_r (−1)^r O′^r Ω′^r F / (r!(r+1)!), truncated once Ω′^r F vanishes.
pub fn hilbert_project(f: &MultiPoly, space: GradientSpace) -> Result<MultiPoly> {
    space.check(f)?;
    match isobaric_weight_twice(f, space) {
        Some(0) => {}
        Some(w) => return Err(Error::Weight(format!("Hilbert projection needs weight 0, got {}/2", w))),
        None => return Err(Error::Weight("input is not isobaric".into())),
    }
    let (o, om): (fn(&MultiPoly, GradientSpace) -> Result<MultiPoly>, fn(&MultiPoly, GradientSpace) -> Result<MultiPoly>) =
        if space.with_point { (annihilator_o_primed, annihilator_omega_primed) } else { (annihilator_o, annihilator_omega) };
    let mut acc = f.clone();
    let mut lowered = om(f, space)?;
    let mut r = 1;
    while !lowered.is_zero() {
        let mut raised = lowered.clone();
        for _ in 0..r {
            raised = o(&raised, space)?;
        }
        let c = BigRational::from_integer(BigInt::from(1)) / (factorial_rational(r) * factorial_rational(r + 1));
        let term = raised.scale(&c);
        acc = if r % 2 == 0 { &acc + &term } else { &acc - &term };
        lowered = om(&lowered, space)?;
        r += 1;
    }
    Ok(acc)
}

/// Extremal projection Σ_r (−1)^r O^r Ω^r G / (r!(2m+2)_r) onto the Ω-annihilated part of a
/// coefficient polynomial G with ½[O,Ω]G = −mG; `excess` is 2m.
pub fn loewdin_project(g: &MultiPoly, space: GradientSpace, excess: i64) -> Result<MultiPoly> {
    if space.with_point {
        return Err(Error::arg("the extremal projector acts on coefficient polynomials only"));
    }
    space.check(g)?;
    if excess < 0 {
        return Err(Error::arg(format!("excess must be non-negative, got {excess}")));
    }
    let h = weight_operator(g, space)?;
    let expected = g.scale(&BigRational::new(BigInt::from(-excess), 2.into()));
    if h != expected {
        let found = isobaric_weight_twice(g, space).map_or("mixed".to_string(), |w| format!("{}/2", w));
        return Err(Error::Weight(format!("expected weight −{excess}/2, found {found}")));
    }
    let mut acc = g.clone();
    let mut lowered = annihilator_omega(g, space)?;
    let mut pochhammer = BigRational::from_integer(1.into());
    let mut r: usize = 1;
    while !lowered.is_zero() {
        pochhammer *= BigRational::from_integer(BigInt::from(excess + 1 + r as i64));
        let mut raised = lowered.clone();
        for _ in 0..r {
            raised = annihilator_o(&raised, space)?;
        }
        let c = BigRational::from_integer(1.into()) / (factorial_rational(r) * pochhammer.clone());
        let term = raised.scale(&c);
        acc = if r % 2 == 0 { &acc + &term } else { &acc - &term };
        lowered = annihilator_omega(&lowered, space)?;
        r += 1;
    }
    Ok(acc)
}
