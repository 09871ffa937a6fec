//! Changes of generators that map presentations to equivalent ones.

use crate::classify::decompose;
use crate::error::{Error, Result};
use crate::presentation::Presentation;
use crate::scalar::Scalar;

/// Substitutes `D_a -> k_a D_a`: every `g` stays, `x_a` becomes `x_a / k_a`.
pub fn rescale(p: &Presentation, kappa: &[Scalar]) -> Result<Presentation> {
    let n = p.n();
    if kappa.len() != n {
        return Err(Error::Parse {
            line: 0,
            message: format!("expected {n} rescaling factors, got {}", kappa.len()),
        });
    }
    let mut out = p.clone();
    for (a, k) in (1..=n).zip(kappa) {
        let x = p.x(a).checked_div(k).ok_or(Error::ZeroRescale(a))?;
        out.set_x(a, x);
    }
    Ok(out)
}

/// Relabels generator `a` as `sigma[a - 1]`.
pub fn permute(p: &Presentation, sigma: &[usize]) -> Result<Presentation> {
    let n = p.n();
    let mut seen = vec![false; n + 1];
    if sigma.len() != n {
        return Err(Error::NotPermutation(n));
    }
    for &s in sigma {
        if s == 0 || s > n || seen[s] {
            return Err(Error::NotPermutation(n));
        }
        seen[s] = true;
    }
    let mut out = Presentation::new(n);
    for a in 1..=n {
        out.set_x(sigma[a - 1], p.x(a).clone());
        for b in 1..=n {
            if a != b {
                out.set_g(sigma[a - 1], sigma[b - 1], p.g(a, b).clone());
            }
        }
    }
    if let Some((a, b)) = out.pairs().find(|&(a, b)| out.g(a, b).is_zero()) {
        return Err(Error::OrderViolation(a, b));
    }
    Ok(out)
}

/// Reverses products and index order at once: generator `a` becomes
/// `N + 1 - a`, the coefficient of `D_a D_b` becomes the coefficient of the
/// reversed product, and every `x` changes sign.
pub fn mirror(p: &Presentation) -> Presentation {
    let n = p.n();
    let m = |a: usize| n + 1 - a;
    let mut out = Presentation::new(n);
    for a in 1..=n {
        out.set_x(m(a), -p.x(a));
        for b in 1..=n {
            if a != b {
                out.set_g(m(b), m(a), p.g(a, b).clone());
            }
        }
    }
    out
}

/// Substitutes `D_a -> D_a + c_a` and returns the presentation satisfied by
/// the new generators, provided every relation keeps its shape: the
/// constant terms cancel and each pair implies the same new `x`.
pub fn affine_shift(p: &Presentation, c: &[Scalar]) -> Result<Presentation> {
    let n = p.n();
    if c.len() != n {
        return Err(Error::Parse {
            line: 0,
            message: format!("expected {n} shifts, got {}", c.len()),
        });
    }
    let mut new_x: Vec<Option<Scalar>> = vec![None; n + 1];
    let mut agree = |a: usize, v: Scalar| -> Result<()> {
        match &new_x[a] {
            Some(old) if *old != v => Err(Error::NotApplicable(format!(
                "relations imply two different values of x_{a}"
            ))),
            _ => {
                new_x[a] = Some(v);
                Ok(())
            }
        }
    };
    for (a, b) in p.pairs() {
        let lambda = p.lambda(a, b);
        let (ca, cb) = (&c[a - 1], &c[b - 1]);
        let constant = &(&(&lambda * ca) * cb) - &(p.x(b) * ca) + p.x(a) * cb;
        if !constant.is_zero() {
            return Err(Error::NotApplicable(format!(
                "relation ({a},{b}) gains a constant term"
            )));
        }
        agree(a, p.x(a) + &(&lambda * ca))?;
        agree(b, p.x(b) - &(&lambda * cb))?;
    }
    let mut out = p.clone();
    for (a, slot) in new_x.iter().enumerate().skip(1) {
        let x = slot.clone().unwrap_or_else(|| p.x(a).clone());
        out.set_x(a, x);
    }
    Ok(out)
}

/// Removes the inhomogeneous terms of a presentation with a single `x != 0`
/// generator `i` through `D_i -> D_i - x_i / Lambda`. Every component must
/// share the same nonzero `Lambda = g(i,r) - g(r,i)`.
pub fn shift_c_to_d(p: &Presentation) -> Result<Presentation> {
    let d = decompose(p);
    if d.n_i() != 1 {
        return Err(Error::NotApplicable(format!(
            "needs exactly one generator with x != 0, found {}",
            d.n_i()
        )));
    }
    let i = d.i[0];
    let lambda = d
        .components
        .iter()
        .map(|c| p.lambda(i, c[0]))
        .find(|l| !l.is_zero())
        .ok_or_else(|| Error::NotApplicable("every Lambda vanishes".into()))?;
    let mut c = vec![Scalar::zero(); p.n()];
    c[i - 1] = -&(p.x(i) / &lambda);
    let out = affine_shift(p, &c)?;
    if out.xs().iter().any(|x| !x.is_zero()) {
        return Err(Error::NotApplicable("the shift does not remove every x".into()));
    }
    Ok(out)
}
