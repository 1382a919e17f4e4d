//! Exact affine forms `c0 + c1·m + c2·v` in the integer `m` and one free
//! parameter `v` (either `t` or `ξ`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::rational::{fmt_q, Q};

/// Which free parameter an affine form is written in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Param {
    T,
    Xi,
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::T => write!(f, "t"),
            Param::Xi => write!(f, "ξ"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Affine {
    pub constant: Q,
    pub m: Q,
    pub var: Q,
}

impl Affine {
    pub fn new(constant: Q, m: Q, var: Q) -> Self {
        Affine { constant, m, var }
    }

    pub fn zero() -> Self {
        Affine::default()
    }

    pub fn constant(c: Q) -> Self {
        Affine { constant: c, ..Affine::default() }
    }

    /// The form `m`.
    pub fn m() -> Self {
        Affine { m: Q::one(), ..Affine::default() }
    }

    /// The form `v`.
    pub fn var() -> Self {
        Affine { var: Q::one(), ..Affine::default() }
    }

    pub fn eval(&self, m: &Q, v: &Q) -> Q {
        &self.constant + &self.m * m + &self.var * v
    }

    /// Replaces the free parameter by the affine form `sub` (in the new parameter).
    pub fn substitute(&self, sub: &Affine) -> Affine {
        Affine {
            constant: &self.constant + &self.var * &sub.constant,
            m: &self.m + &self.var * &sub.m,
            var: &self.var * &sub.var,
        }
    }

    pub fn scale(&self, k: &Q) -> Affine {
        Affine { constant: &self.constant * k, m: &self.m * k, var: &self.var * k }
    }

    pub fn render(&self, param: Param) -> String {
        let mut parts: Vec<(bool, String)> = Vec::new();
        let mut push = |c: &Q, sym: &str| {
            if c.is_zero() {
                return;
            }
            let neg = c.is_negative();
            let a = c.abs();
            let body = match (a.is_one(), sym.is_empty()) {
                (_, true) => fmt_q(&a),
                (true, false) => sym.to_string(),
                (false, false) if a.is_integer() => format!("{}{}", fmt_q(&a), sym),
                (false, false) => format!("({}){}", fmt_q(&a), sym),
            };
            parts.push((neg, body));
        };
        push(&self.m, "m");
        push(&self.var, &param.to_string());
        push(&self.constant, "");
        if parts.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (neg, body)) in parts.into_iter().enumerate() {
            match (i, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }
}

impl Add for &Affine {
    type Output = Affine;
    fn add(self, o: &Affine) -> Affine {
        Affine { constant: &self.constant + &o.constant, m: &self.m + &o.m, var: &self.var + &o.var }
    }
}

impl Sub for &Affine {
    type Output = Affine;
    fn sub(self, o: &Affine) -> Affine {
        Affine { constant: &self.constant - &o.constant, m: &self.m - &o.m, var: &self.var - &o.var }
    }
}

impl Neg for &Affine {
    type Output = Affine;
    fn neg(self) -> Affine {
        Affine { constant: -&self.constant, m: -&self.m, var: -&self.var }
    }
}

impl Mul<&Q> for &Affine {
    type Output = Affine;
    fn mul(self, k: &Q) -> Affine {
        self.scale(k)
    }
}
