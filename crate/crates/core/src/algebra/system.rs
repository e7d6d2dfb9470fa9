//! The system `x_k' = lambda_k x_k + x_k * sum_q a_q x^{i_q}` and its text format.
//!
//! ```text
//! # comments start with '#'
//! n 2
//! lambda 1 -1
//! param a1_10 eq 1 exp 1 0
//! param a1_m13 eq 1 exp -1 3
//! ```
//!
//! Parameter order in the file is the coordinate order of every multi-index.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_traits::Zero;

use super::{MultiIndex, PhaseExponent, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameter {
    pub name: String,
    /// 0-based equation the parameter belongs to.
    pub equation: usize,
    pub exponent: PhaseExponent,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SystemSpec {
    lambda: Vec<Scalar>,
    params: Vec<Parameter>,
}

impl SystemSpec {
    /// Validates the per-row exponent constraint: only the owning equation's
    /// position may be `-1`, every other entry is `>= 0`, and `|i| >= 1`.
    pub fn new(lambda: Vec<Scalar>, params: Vec<Parameter>) -> Result<Self> {
        let n = lambda.len();
        if n == 0 {
            return Err(Error::InvalidSystem("dimension must be at least 1".into()));
        }
        let mut seen = HashSet::new();
        for p in &params {
            check_parameter(n, p).map_err(Error::InvalidSystem)?;
            if !seen.insert(p.name.as_str()) {
                return Err(Error::InvalidSystem(format!(
                    "duplicate parameter name `{}`",
                    p.name
                )));
            }
        }
        Ok(Self { lambda, params })
    }

    pub fn n(&self) -> usize {
        self.lambda.len()
    }

    pub fn ell(&self) -> usize {
        self.params.len()
    }

    pub fn lambda(&self) -> &[Scalar] {
        &self.lambda
    }

    pub fn params(&self) -> &[Parameter] {
        &self.params
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p.name == name)
    }

    /// Rows of the exponent matrix, one per parameter.
    pub fn exponent_matrix(&self) -> Vec<Vec<i64>> {
        self.params
            .iter()
            .map(|p| p.exponent.entries().to_vec())
            .collect()
    }

    /// `L(mu) = mu * L~`.
    pub fn exponent_map(&self, mu: &MultiIndex) -> PhaseExponent {
        debug_assert_eq!(mu.len(), self.ell());
        let mut out = PhaseExponent::zero(self.n());
        for (p, &k) in self.params.iter().zip(mu.entries()) {
            if k != 0 {
                out.add_scaled(&p.exponent, k);
            }
        }
        out
    }

    /// `<L(mu), lambda>`; zero exactly when terms at `mu` are resonant.
    pub fn resonance_weight(&self, mu: &MultiIndex) -> Scalar {
        self.exponent_map(mu).dot(&self.lambda)
    }

    pub fn is_resonant(&self, mu: &MultiIndex) -> bool {
        self.resonance_weight(mu).is_zero()
    }

    /// All parameters share one `|i|`, so level and phase degree grade alike.
    pub fn is_homogeneous(&self) -> bool {
        let mut totals = self.params.iter().map(|p| p.exponent.total());
        match totals.next() {
            None => true,
            Some(first) => totals.all(|t| t == first),
        }
    }

    /// The same system with parameter `q` deleted.
    pub fn without_param(&self, q: usize) -> SystemSpec {
        let mut params = self.params.clone();
        params.remove(q);
        SystemSpec {
            lambda: self.lambda.clone(),
            params,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        parse_system(text)
    }

    /// Canonical text rendering, accepted back by [`parse_system`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "n {}", self.n());
        out.push_str("lambda");
        for l in &self.lambda {
            let _ = write!(out, " {l}");
        }
        out.push('\n');
        for p in &self.params {
            let _ = write!(out, "param {} eq {} exp", p.name, p.equation + 1);
            for e in p.exponent.entries() {
                let _ = write!(out, " {e}");
            }
            out.push('\n');
        }
        out
    }
}

fn check_parameter(n: usize, p: &Parameter) -> std::result::Result<(), String> {
    if p.equation >= n {
        return Err(format!(
            "parameter `{}` belongs to equation {} but n = {n}",
            p.name,
            p.equation + 1
        ));
    }
    if p.exponent.len() != n {
        return Err(format!(
            "parameter `{}` has {} exponents, expected {n}",
            p.name,
            p.exponent.len()
        ));
    }
    for (j, &e) in p.exponent.entries().iter().enumerate() {
        let floor = if j == p.equation { -1 } else { 0 };
        if e < floor {
            return Err(format!(
                "parameter `{}`: exponent {e} not allowed at position {}",
                p.name,
                j + 1
            ));
        }
    }
    if p.exponent.total() < 1 {
        return Err(format!(
            "parameter `{}`: exponent sum must be at least 1",
            p.name
        ));
    }
    Ok(())
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Parses the line-oriented system format. Errors carry the 1-based line.
pub fn parse_system(text: &str) -> Result<SystemSpec> {
    let err = |line: usize, msg: String| Error::Parse { line, msg };

    let mut n: Option<usize> = None;
    let mut lambda: Option<Vec<Scalar>> = None;
    let mut params: Vec<Parameter> = Vec::new();
    let mut names = HashSet::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens[0] {
            "n" => {
                if n.is_some() {
                    return Err(err(line_no, "duplicate `n` line".into()));
                }
                if tokens.len() != 2 {
                    return Err(err(line_no, "expected `n <int>`".into()));
                }
                let v: usize = tokens[1]
                    .parse()
                    .map_err(|_| err(line_no, format!("invalid dimension `{}`", tokens[1])))?;
                if v == 0 {
                    return Err(err(line_no, "dimension must be at least 1".into()));
                }
                n = Some(v);
            }
            "lambda" => {
                let Some(n) = n else {
                    return Err(err(line_no, "`lambda` before `n`".into()));
                };
                if lambda.is_some() {
                    return Err(err(line_no, "duplicate `lambda` line".into()));
                }
                if tokens.len() - 1 != n {
                    return Err(err(
                        line_no,
                        format!("expected {n} eigenvalues, found {}", tokens.len() - 1),
                    ));
                }
                let vals = tokens[1..]
                    .iter()
                    .map(|t| t.parse::<Scalar>().map_err(|e| err(line_no, e.to_string())))
                    .collect::<Result<Vec<_>>>()?;
                lambda = Some(vals);
            }
            "param" => {
                let (Some(n), Some(_)) = (n, lambda.as_ref()) else {
                    return Err(err(line_no, "`param` before `n` and `lambda`".into()));
                };
                if tokens.len() != 5 + n || tokens[2] != "eq" || tokens[4] != "exp" {
                    return Err(err(
                        line_no,
                        format!("expected `param <name> eq <k> exp` followed by {n} integers"),
                    ));
                }
                let name = tokens[1];
                if !is_identifier(name) {
                    return Err(err(line_no, format!("invalid parameter name `{name}`")));
                }
                if !names.insert(name.to_string()) {
                    return Err(err(line_no, format!("duplicate parameter name `{name}`")));
                }
                let k: usize = tokens[3]
                    .parse()
                    .map_err(|_| err(line_no, format!("invalid equation `{}`", tokens[3])))?;
                if k == 0 || k > n {
                    return Err(err(line_no, format!("equation {k} out of range 1..={n}")));
                }
                let exps = tokens[5..]
                    .iter()
                    .map(|t| {
                        t.parse::<i64>()
                            .map_err(|_| err(line_no, format!("invalid exponent `{t}`")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                let p = Parameter {
                    name: name.to_string(),
                    equation: k - 1,
                    exponent: PhaseExponent::new(exps),
                };
                check_parameter(n, &p).map_err(|m| err(line_no, m))?;
                params.push(p);
            }
            other => return Err(err(line_no, format!("unknown directive `{other}`"))),
        }
    }

    if n.is_none() {
        return Err(err(last_line.max(1), "missing `n` line".into()));
    }
    let Some(lambda) = lambda else {
        return Err(err(last_line.max(1), "missing `lambda` line".into()));
    };
    SystemSpec::new(lambda, params)
}
