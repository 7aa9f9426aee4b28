//! Truncated power series in one variable, coefficients `c[0..=K]`.

use crate::Cplx;

pub(crate) fn zero(len: usize) -> Vec<Cplx> {
    vec![Cplx::new(0.0, 0.0); len]
}

pub(crate) fn mul(a: &[Cplx], b: &[Cplx], len: usize) -> Vec<Cplx> {
    let mut out = zero(len);
    for (i, x) in a.iter().enumerate().take(len) {
        if *x == Cplx::new(0.0, 0.0) {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            out[i + j] += x * y;
        }
    }
    out
}

/// `log(1 + u)` for a series with `u[0] = 0`.
pub(crate) fn log1p(u: &[Cplx], len: usize) -> Vec<Cplx> {
    // (1 + u) L′ = u′  ⇒  n L_n = n u_n − Σ_{k=1}^{n−1} k L_k u_{n−k}
    let get = |v: &[Cplx], i: usize| v.get(i).copied().unwrap_or_default();
    let mut l = zero(len);
    for n in 1..len {
        let mut acc = get(u, n) * n as f64;
        for k in 1..n {
            acc -= l[k] * get(u, n - k) * k as f64;
        }
        l[n] = acc / n as f64;
    }
    l
}

/// `exp(g)` for a series with `g[0] = 0`.
pub(crate) fn exp(g: &[Cplx], len: usize) -> Vec<Cplx> {
    // E′ = g′E  ⇒  n E_n = Σ_{k=1}^{n} k g_k E_{n−k}
    let get = |v: &[Cplx], i: usize| v.get(i).copied().unwrap_or_default();
    let mut e = zero(len);
    if len == 0 {
        return e;
    }
    e[0] = Cplx::new(1.0, 0.0);
    for n in 1..len {
        let mut acc = Cplx::new(0.0, 0.0);
        for k in 1..=n {
            acc += get(g, k) * e[n - k] * k as f64;
        }
        e[n] = acc / n as f64;
    }
    e
}

pub(crate) fn eval(c: &[Cplx], x: f64) -> Cplx {
    c.iter().rev().fold(Cplx::new(0.0, 0.0), |acc, &v| acc * x + v)
}
