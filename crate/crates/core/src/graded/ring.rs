//! Even-graded free polynomial rings over `Z` and their monomial bases.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Monomial = Vec<u32>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
}

/// `Z[g₁, …, g_m]` with every generator in positive even degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RingRepr", into = "RingRepr")]
pub struct GradedRing {
    generators: Vec<Generator>,
}

#[derive(Serialize, Deserialize)]
struct RingRepr {
    generators: Vec<Generator>,
}

impl TryFrom<RingRepr> for GradedRing {
    type Error = Error;
    fn try_from(r: RingRepr) -> Result<Self> {
        GradedRing::from_generators(r.generators)
    }
}

impl From<GradedRing> for RingRepr {
    fn from(r: GradedRing) -> Self {
        RingRepr { generators: r.generators }
    }
}

impl GradedRing {
    pub fn new(gens: &[(&str, u32)]) -> Result<Self> {
        Self::from_generators(gens.iter().map(|&(n, d)| Generator { name: n.to_string(), degree: d }).collect())
    }

    pub fn from_generators(generators: Vec<Generator>) -> Result<Self> {
        for (i, g) in generators.iter().enumerate() {
            if g.degree == 0 || g.degree % 2 == 1 {
                return Err(Error::InvalidParameter(format!("generator {} has degree {}", g.name, g.degree)));
            }
            if generators[..i].iter().any(|h| h.name == g.name) {
                return Err(Error::InvalidParameter(format!("duplicate generator {}", g.name)));
            }
        }
        Ok(Self { generators })
    }

    /// Generators `prefix1 … prefixN`, all in degree `degree`.
    pub fn uniform(prefix: &str, count: usize, degree: u32) -> Result<Self> {
        let gens = (1..=count).map(|i| Generator { name: format!("{prefix}{i}"), degree }).collect();
        Self::from_generators(gens)
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn monomial_degree(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.generators).map(|(e, g)| e * g.degree).sum()
    }

    /// Monomials of total degree `n`, lexicographically descending in the
    /// exponent vectors.
    pub fn monomial_basis(&self, n: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0; self.len()];
        self.fill(0, n, &mut cur, &mut out);
        out
    }

    fn fill(&self, i: usize, left: u32, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == self.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let d = self.generators[i].degree;
        for e in (0..=left / d).rev() {
            cur[i] = e;
            self.fill(i + 1, left - e * d, cur, out);
        }
        cur[i] = 0;
    }

    /// Rank of the degree-`n` piece.
    pub fn hilbert(&self, n: u32) -> u64 {
        let n = n as usize;
        let mut ways = vec![0u64; n + 1];
        ways[0] = 1;
        for g in &self.generators {
            let d = g.degree as usize;
            for k in d..=n {
                ways[k] += ways[k - d];
            }
        }
        ways[n]
    }

    pub fn display_monomial(&self, m: &[u32]) -> String {
        let parts: Vec<String> = m
            .iter()
            .zip(&self.generators)
            .filter(|(e, _)| **e > 0)
            .map(|(e, g)| if *e == 1 { g.name.clone() } else { format!("{}^{e}", g.name) })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }
}

/// Integer polynomial in the generators of some ring, keyed by exponent vector.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(from = "Vec<Term>", into = "Vec<Term>")]
pub struct Polynomial {
    terms: BTreeMap<Monomial, i64>,
}

#[derive(Serialize, Deserialize)]
struct Term {
    coeff: i64,
    exponents: Monomial,
}

impl From<Vec<Term>> for Polynomial {
    fn from(ts: Vec<Term>) -> Self {
        let mut p = Polynomial::default();
        for t in ts {
            p.add_term(t.exponents, t.coeff);
        }
        p
    }
}

impl From<Polynomial> for Vec<Term> {
    fn from(p: Polynomial) -> Self {
        p.terms.into_iter().map(|(exponents, coeff)| Term { coeff, exponents }).collect()
    }
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(m: Monomial, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(m, coeff);
        p
    }

    pub fn add_term(&mut self, m: Monomial, coeff: i64) {
        let e = self.terms.entry(m).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.terms.retain(|_, c| *c != 0);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &i64)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Common degree of all terms; `Ok(None)` for the zero polynomial.
    pub fn homogeneous_degree(&self, ring: &GradedRing) -> Result<Option<u32>> {
        let mut degs = self.terms.keys().map(|m| ring.monomial_degree(m));
        let Some(d) = degs.next() else { return Ok(None) };
        if degs.any(|e| e != d) {
            return Err(Error::DegreeMismatch(format!("polynomial {} is not homogeneous", self.display(ring))));
        }
        Ok(Some(d))
    }

    /// Parses sums of products such as `2*x1^2*y - z + 3` over the ring's
    /// generator names.
    pub fn parse(s: &str, ring: &GradedRing) -> Result<Self> {
        let mut p = Self::zero();
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        for t in terms {
            let (sign, body) = match t.strip_prefix('-') {
                Some(b) => (-1, b),
                None => (1, t.strip_prefix('+').unwrap_or(t)),
            };
            let mut coeff = sign;
            let mut m = vec![0; ring.len()];
            for f in body.split('*') {
                if let Ok(c) = f.parse::<i64>() {
                    coeff *= c;
                    continue;
                }
                let (name, exp) = match f.split_once('^') {
                    Some((n, e)) => (n, e.parse::<u32>().map_err(|_| Error::Parse(format!("bad exponent in {f}")))?),
                    None => (f, 1),
                };
                let i = ring.index_of(name).ok_or_else(|| Error::Parse(format!("unknown generator {name:?}")))?;
                m[i] += exp;
            }
            p.add_term(m, coeff);
        }
        Ok(p)
    }

    pub fn display(&self, ring: &GradedRing) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in self.terms.iter().rev() {
            let mono = ring.display_monomial(m);
            let body = match (c.abs(), mono.as_str()) {
                (a, "1") => a.to_string(),
                (1, _) => mono.clone(),
                (a, _) => format!("{a}*{mono}"),
            };
            if out.is_empty() {
                out = if *c < 0 { format!("-{body}") } else { body };
            } else {
                out += if *c < 0 { " - " } else { " + " };
                out += &body;
            }
        }
        out
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| format!("{}({})", g.name, g.degree)).collect();
        write!(f, "Z[{}]", gens.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basis_of_bu2() {
        let r = GradedRing::new(&[("a1", 2), ("a2", 4)]).unwrap();
        assert_eq!(r.monomial_basis(8), vec![vec![4, 0], vec![2, 1], vec![0, 2]]);
        assert!(r.monomial_basis(7).is_empty());
        assert_eq!(r.hilbert(8), 3);
    }

    #[test]
    fn four_degree_two_generators() {
        let r = GradedRing::uniform("x", 4, 2).unwrap();
        assert_eq!(r.monomial_basis(4).len(), 10);
        for n in 0..20 {
            assert_eq!(r.monomial_basis(n).len() as u64, r.hilbert(n));
        }
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(GradedRing::new(&[("a", 3)]).is_err());
        assert!(GradedRing::new(&[("a", 2), ("a", 4)]).is_err());
        assert!(GradedRing::new(&[("a", 0)]).is_err());
    }

    #[test]
    fn parse_and_display() {
        let r = GradedRing::new(&[("x", 2), ("y", 2), ("z", 4)]).unwrap();
        let p = Polynomial::parse("2*x^2 - y*x + z - z", &r).unwrap();
        assert_eq!(p.display(&r), "2*x^2 - x*y");
        assert_eq!(p.homogeneous_degree(&r).unwrap(), Some(4));
        assert!(Polynomial::parse("x + z", &r).unwrap().homogeneous_degree(&r).is_err());
        assert!(Polynomial::parse("w", &r).is_err());
        assert!(Polynomial::parse("0", &r).unwrap().is_zero());
    }

    #[test]
    fn json_round_trip() {
        let r = GradedRing::new(&[("x", 2), ("y", 4)]).unwrap();
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<GradedRing>(&s).unwrap(), r);
        assert!(serde_json::from_str::<GradedRing>(r#"{"generators":[{"name":"x","degree":3}]}"#).is_err());
        let p = Polynomial::parse("x^2 - 3*y", &r).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<Polynomial>(&s).unwrap(), p);
    }
}
