//! Lie algebras given by structure constants `[x_mu, x_nu] = C^lam_{mu nu} x_lam`.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::Deserialize;

use crate::arith::{fmt_rational, parse_rational, Rational};
use crate::{Error, Result};

pub const DEFAULT_MAX_DIM: usize = 6;

#[derive(Clone)]
pub struct LieAlgebra {
    n: usize,
    // c[(mu * n + nu) * n + lam] = C^lam_{mu nu}
    c: Vec<Rational>,
    names: Vec<String>,
    label: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// `C^lam_{mu nu} + C^lam_{nu mu} != 0`, reported at `(mu, nu, lam)`.
    Antisymmetry { mu: usize, nu: usize, lam: usize, residual: Rational },
    /// Jacobi sum with free indices `(mu, nu, lam)` and output index `rho`.
    Jacobi { mu: usize, nu: usize, lam: usize, rho: usize, residual: Rational },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Antisymmetry { mu, nu, lam, residual } => write!(
                f,
                "antisymmetry fails at (mu,nu,lam)=({},{},{}): residual {}",
                mu + 1,
                nu + 1,
                lam + 1,
                fmt_rational(residual)
            ),
            Violation::Jacobi { mu, nu, lam, rho, residual } => write!(
                f,
                "Jacobi fails at (mu,nu,lam)=({},{},{}), component {}: residual {}",
                mu + 1,
                nu + 1,
                lam + 1,
                rho + 1,
                fmt_rational(residual)
            ),
        }
    }
}

impl LieAlgebra {
    /// Builds an algebra from explicit entries `(mu, nu, lam, C^lam_{mu nu})`,
    /// 0-based. No completion is applied; see [`LieAlgebra::from_brackets`].
    pub fn from_entries(n: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::Invalid("dimension must be at least 1".into()));
        }
        let mut c = vec![Rational::zero(); n * n * n];
        for (mu, nu, lam, v) in entries {
            if *mu >= n || *nu >= n || *lam >= n {
                return Err(Error::Invalid(format!(
                    "index ({},{},{}) out of range for dimension {n}",
                    mu + 1,
                    nu + 1,
                    lam + 1
                )));
            }
            c[(mu * n + nu) * n + lam] = v.clone();
        }
        Ok(LieAlgebra { n, c, names: default_names(n), label: format!("custom:{n}") })
    }

    /// Builds an algebra from listed brackets, filling every unlisted
    /// `C^lam_{nu mu}` whose partner `C^lam_{mu nu}` is listed with the negative.
    /// A key listed twice with different values is rejected.
    pub fn from_brackets(n: usize, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let mut listed: BTreeMap<(usize, usize, usize), Rational> = BTreeMap::new();
        for (mu, nu, lam, v) in entries {
            if let Some(prev) = listed.get(&(*mu, *nu, *lam)) {
                if prev != v {
                    return Err(Error::Invalid(format!(
                        "contradictory duplicate entry for ({},{},{}): {} vs {}",
                        mu + 1,
                        nu + 1,
                        lam + 1,
                        fmt_rational(prev),
                        fmt_rational(v)
                    )));
                }
            }
            listed.insert((*mu, *nu, *lam), v.clone());
        }
        let mut all = listed.clone();
        for ((mu, nu, lam), v) in &listed {
            all.entry((*nu, *mu, *lam)).or_insert_with(|| -v.clone());
        }
        let flat: Vec<_> = all.into_iter().map(|((a, b, l), v)| (a, b, l, v)).collect();
        Self::from_entries(n, &flat)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn with_label(mut self, label: &str) -> Self {
        self.label = label.to_string();
        self
    }

    pub fn with_names(mut self, names: Vec<String>) -> Self {
        if names.len() == self.n {
            self.names = names;
        }
        self
    }

    /// `C^lam_{mu nu}`.
    pub fn c(&self, mu: usize, nu: usize, lam: usize) -> &Rational {
        &self.c[(mu * self.n + nu) * self.n + lam]
    }

    /// Nonzero `(lam, C^lam_{mu nu})` for a fixed pair.
    pub fn bracket(&self, mu: usize, nu: usize) -> Vec<(usize, Rational)> {
        (0..self.n)
            .filter_map(|lam| {
                let v = self.c(mu, nu, lam);
                (!v.is_zero()).then(|| (lam, v.clone()))
            })
            .collect()
    }

    /// All nonzero entries `(mu, nu, lam, C^lam_{mu nu})`.
    pub fn entries(&self) -> Vec<(usize, usize, usize, Rational)> {
        let n = self.n;
        let mut out = Vec::new();
        for mu in 0..n {
            for nu in 0..n {
                for lam in 0..n {
                    let v = self.c(mu, nu, lam);
                    if !v.is_zero() {
                        out.push((mu, nu, lam, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|v| v.is_zero())
    }

    pub fn validate(&self) -> std::result::Result<(), Violation> {
        let n = self.n;
        for mu in 0..n {
            for nu in 0..=mu {
                for lam in 0..n {
                    let r = self.c(mu, nu, lam) + self.c(nu, mu, lam);
                    if !r.is_zero() {
                        return Err(Violation::Antisymmetry { mu, nu, lam, residual: r });
                    }
                }
            }
        }
        for mu in 0..n {
            for nu in 0..n {
                for lam in 0..n {
                    for rho in 0..n {
                        let mut s = Rational::zero();
                        for sig in 0..n {
                            s += self.c(mu, nu, sig) * self.c(sig, lam, rho)
                                + self.c(nu, lam, sig) * self.c(sig, mu, rho)
                                + self.c(lam, mu, sig) * self.c(sig, nu, rho);
                        }
                        if !s.is_zero() {
                            return Err(Violation::Jacobi { mu, nu, lam, rho, residual: s });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The opposite algebra, with constants `-C^lam_{mu nu}`.
    pub fn opposite(&self) -> Self {
        LieAlgebra {
            n: self.n,
            c: self.c.iter().map(|v| -v.clone()).collect(),
            names: self.names.clone(),
            label: match self.label.strip_suffix("^op") {
                Some(s) => s.to_string(),
                None => format!("{}^op", self.label),
            },
        }
    }

    /// `t_mu = sum_lam C^lam_{mu lam}`.
    pub fn trace_vector(&self) -> Vec<Rational> {
        (0..self.n)
            .map(|mu| (0..self.n).fold(Rational::zero(), |acc, lam| acc + self.c(mu, lam, lam)))
            .collect()
    }

    pub fn abelian(n: usize) -> Self {
        Self::from_entries(n, &[]).expect("valid").with_label(&format!("abelian:{n}"))
    }

    pub fn heisenberg3() -> Self {
        Self::from_brackets(3, &[(0, 1, 2, Rational::one())])
            .expect("valid")
            .with_label("heisenberg3")
    }

    pub fn sl2() -> Self {
        let one = Rational::one();
        Self::from_brackets(3, &[(0, 1, 2, one.clone()), (1, 2, 0, one.clone()), (2, 0, 1, one)])
            .expect("valid")
            .with_label("sl2")
    }

    pub fn solvable2() -> Self {
        Self::from_brackets(2, &[(0, 1, 1, Rational::one())])
            .expect("valid")
            .with_label("solvable2")
    }

    pub fn kappa(n: usize) -> Self {
        let entries: Vec<_> = (1..n).map(|i| (0, i, i, Rational::one())).collect();
        Self::from_brackets(n, &entries).expect("valid").with_label(&format!("kappa:{n}"))
    }

    /// Parses names like `sl2`, `heisenberg3`, `abelian:3`, `abelian(3)`, `kappa:4`.
    pub fn builtin(name: &str) -> Result<Self> {
        Self::builtin_bounded(name, DEFAULT_MAX_DIM)
    }

    pub fn builtin_bounded(name: &str, max_dim: usize) -> Result<Self> {
        let s = name.trim().to_ascii_lowercase();
        let (base, arg) = match s.find([':', '(']) {
            Some(i) => {
                let arg = s[i + 1..].trim_end_matches(')').trim();
                (&s[..i], Some(arg.to_string()))
            }
            None => (s.as_str(), None),
        };
        let dim = |default: Option<usize>| -> Result<usize> {
            let n = match &arg {
                Some(a) => a
                    .parse::<usize>()
                    .map_err(|_| Error::Domain(format!("bad dimension in `{name}`")))?,
                None => default.ok_or_else(|| Error::Domain(format!("`{name}` needs a dimension")))?,
            };
            if n == 0 || n > max_dim {
                return Err(Error::Domain(format!("dimension {n} outside 1..={max_dim}")));
            }
            Ok(n)
        };
        let alg = match base {
            "abelian" => Self::abelian(dim(None)?),
            "kappa" => Self::kappa(dim(None)?),
            "heisenberg3" | "heisenberg" if arg.is_none() => Self::heisenberg3(),
            "sl2" if arg.is_none() => Self::sl2(),
            "solvable2" if arg.is_none() => Self::solvable2(),
            _ => return Err(Error::Domain(format!("unknown built-in Lie algebra `{name}`"))),
        };
        Ok(alg)
    }

    /// The algebras exercised by the test and acceptance suites.
    pub fn builtins() -> Vec<Self> {
        vec![
            Self::abelian(2),
            Self::abelian(3),
            Self::heisenberg3(),
            Self::sl2(),
            Self::solvable2(),
            Self::kappa(3),
        ]
    }

    /// Reads a definition file (TOML, or JSON if it starts with `{`).
    pub fn from_file(path: &std::path::Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let label = path
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| "file".into());
        Ok(Self::from_definition(&text)?.with_label(&label))
    }

    pub fn from_definition(text: &str) -> Result<Self> {
        let def: LieFile = if text.trim_start().starts_with('{') {
            serde_json::from_str(text).map_err(|e| Error::Parse {
                line: e.line(),
                col: e.column(),
                msg: e.to_string(),
            })?
        } else {
            toml::from_str(text).map_err(|e| {
                let (line, col) = e
                    .span()
                    .map(|sp| line_col(text, sp.start))
                    .unwrap_or((0, 0));
                Error::Parse { line, col, msg: e.message().to_string() }
            })?
        };
        def.build()
    }

    /// Canonical TOML definition that [`LieAlgebra::from_definition`] reads back.
    pub fn to_definition(&self) -> String {
        let mut s = format!("dim = {}\nbasis = [", self.n);
        for (i, nm) in self.names.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            s.push_str(&format!("\"{nm}\""));
        }
        s.push_str("]\nbrackets = [\n");
        for (mu, nu, lam, v) in self.entries() {
            s.push_str(&format!(
                "  [\"{}\", \"{}\", \"{}\", \"{}\"],\n",
                self.names[mu],
                self.names[nu],
                self.names[lam],
                fmt_rational(&v)
            ));
        }
        s.push_str("]\n");
        s
    }
}

/// Equality of structure constants; labels and basis names are ignored.
impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.c == other.c
    }
}

impl Eq for LieAlgebra {}

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra({}, n={})", self.label, self.n)
    }
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("x{i}")).collect()
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let col = before.rfind('\n').map(|p| offset - p).unwrap_or(offset + 1);
    (line, col)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LieFile {
    dim: usize,
    #[serde(default)]
    basis: Option<Vec<String>>,
    #[serde(default)]
    brackets: Vec<(Slot, Slot, Slot, Coef)>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Slot {
    Pos(usize),
    Name(String),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Coef {
    Int(i64),
    Text(String),
}

impl LieFile {
    fn build(self) -> Result<LieAlgebra> {
        let n = self.dim;
        let names = match self.basis {
            Some(b) => {
                if b.len() != n {
                    return Err(Error::Invalid(format!(
                        "basis has {} names but dim = {n}",
                        b.len()
                    )));
                }
                b
            }
            None => default_names(n),
        };
        let index = |s: &Slot| -> Result<usize> {
            match s {
                Slot::Pos(i) if *i >= 1 && *i <= n => Ok(i - 1),
                Slot::Pos(i) => Err(Error::Invalid(format!("index {i} outside 1..={n}"))),
                Slot::Name(nm) => names
                    .iter()
                    .position(|b| b == nm)
                    .ok_or_else(|| Error::Invalid(format!("unknown basis name `{nm}`"))),
            }
        };
        let mut entries = Vec::new();
        for (a, b, l, v) in &self.brackets {
            let value = match v {
                Coef::Int(i) => Rational::from_integer((*i).into()),
                Coef::Text(t) => parse_rational(t)
                    .ok_or_else(|| Error::Invalid(format!("bad rational `{t}`")))?,
            };
            entries.push((index(a)?, index(b)?, index(l)?, value));
        }
        Ok(LieAlgebra::from_brackets(n, &entries)?.with_names(names))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;

    #[test]
    fn builtins_validate() {
        for l in LieAlgebra::builtins() {
            assert!(l.validate().is_ok(), "{l:?}");
            assert_eq!(l.opposite().opposite(), l);
        }
    }

    #[test]
    fn missing_partner_is_reported() {
        let l = LieAlgebra::from_entries(2, &[(0, 1, 0, int(1))]).unwrap();
        match l.validate() {
            Err(Violation::Antisymmetry { mu, nu, lam, .. }) => assert_eq!((mu, nu, lam), (1, 0, 0)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn traces() {
        assert_eq!(LieAlgebra::solvable2().trace_vector(), vec![int(1), int(0)]);
        assert_eq!(LieAlgebra::heisenberg3().trace_vector(), vec![int(0); 3]);
        assert_eq!(LieAlgebra::kappa(2), LieAlgebra::solvable2());
        assert_eq!(LieAlgebra::kappa(4).trace_vector()[0], int(3));
    }

    #[test]
    fn builtin_names() {
        assert_eq!(LieAlgebra::builtin("abelian:3").unwrap().dim(), 3);
        assert_eq!(LieAlgebra::builtin("abelian(2)").unwrap().dim(), 2);
        assert!(LieAlgebra::builtin("e8").is_err());
        assert!(LieAlgebra::builtin("abelian:9").is_err());
    }

    #[test]
    fn definition_round_trip() {
        for l in LieAlgebra::builtins() {
            let back = LieAlgebra::from_definition(&l.to_definition()).unwrap();
            assert_eq!(back.entries(), l.entries());
        }
        let json = r#"{"dim": 2, "basis": ["a", "b"], "brackets": [["a", "b", "b", "1"]]}"#;
        let l = LieAlgebra::from_definition(json).unwrap();
        assert_eq!(l.entries(), LieAlgebra::solvable2().entries());
    }

    #[test]
    fn duplicates_rejected() {
        let t = "dim = 2\nbrackets = [[1, 2, 2, \"1\"], [1, 2, 2, \"2\"]]\n";
        assert!(LieAlgebra::from_definition(t).is_err());
        let t = "dim = 2\nbrackets = [[1, 2, 2, \"1\"], [1, 2, 2, 1]]\n";
        assert!(LieAlgebra::from_definition(t).is_ok());
    }

    #[test]
    fn parse_error_position() {
        match LieAlgebra::from_definition("dim = 2\nbrackets = [[1, 2\n") {
            Err(Error::Parse { line, .. }) => assert!(line >= 2),
            other => panic!("{other:?}"),
        }
    }
}
