use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::arith::{parse_rational, BigRational};
use crate::fan::{FanError, UnimodularFan};

use super::IntersectionTable;

/// A polynomial over `Q` in variables `c_0, c_1, …`. Terms are keyed by the sorted
/// multiset of their variable indices, so `c_0² c_3` is `[0, 0, 3]`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Polynomial {
    terms: BTreeMap<Vec<usize>, BigRational>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial::default()
    }

    pub fn add_term(&mut self, mut monomial: Vec<usize>, coeff: BigRational) {
        monomial.sort_unstable();
        let slot = self.terms.entry(monomial.clone()).or_insert_with(BigRational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&monomial);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[usize], &BigRational)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, monomial: &[usize]) -> BigRational {
        let mut key = monomial.to_vec();
        key.sort_unstable();
        self.terms.get(&key).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn derivative(&self, var: usize) -> Polynomial {
        let mut out = Polynomial::zero();
        for (mono, coeff) in &self.terms {
            let e = mono.iter().filter(|&&v| v == var).count();
            if e == 0 {
                continue;
            }
            let pos = mono.iter().position(|&v| v == var).unwrap();
            let mut rest = mono.clone();
            rest.remove(pos);
            out.add_term(rest, coeff * BigRational::from_integer(BigInt::from(e)));
        }
        out
    }

    /// `Σ_i d_i ∂_i P`.
    pub fn directional_derivative(&self, d: &[BigRational]) -> Polynomial {
        let mut out = Polynomial::zero();
        for (i, di) in d.iter().enumerate() {
            if di.is_zero() {
                continue;
            }
            for (mono, coeff) in self.derivative(i).terms {
                out.add_term(mono, coeff * di);
            }
        }
        out
    }

    /// Panics if a variable index is out of range of `point`.
    pub fn evaluate(&self, point: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(mono, coeff)| mono.iter().fold(coeff.clone(), |acc, &v| acc * &point[v]))
            .sum()
    }
}

/// One line per term, `<coeff> : i^e j^e …`, in lexicographic order of the sorted
/// multidegree. The constant term is written `<coeff> :`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (mono, coeff) in &self.terms {
            write!(f, "{coeff} :")?;
            let mut k = 0;
            while k < mono.len() {
                let v = mono[k];
                let e = mono[k..].iter().take_while(|&&x| x == v).count();
                write!(f, " {v}^{e}")?;
                k += e;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl std::str::FromStr for Polynomial {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let mut p = Polynomial::zero();
        for (no, line) in s.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let bad = |what: &str| format!("line {}: {what}", no + 1);
            let (coeff, mono) = line.split_once(':').ok_or_else(|| bad("missing ':'"))?;
            let coeff = parse_rational(coeff.trim()).ok_or_else(|| bad("bad coefficient"))?;
            let mut vars = Vec::new();
            for factor in mono.split_whitespace() {
                let (v, e) = factor.split_once('^').ok_or_else(|| bad("expected i^e"))?;
                let v: usize = v.parse().map_err(|_| bad("bad variable"))?;
                let e: usize = e.parse().map_err(|_| bad("bad exponent"))?;
                vars.extend(std::iter::repeat_n(v, e));
            }
            p.add_term(vars, coeff);
        }
        Ok(p)
    }
}

/// `V(c) = (1/6) ∫ (Σ_i c_i v_i)³`, the volume of `{x : ⟨λ(i), x⟩ ≤ c_i}` for support
/// parameters inside the chamber of the fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumePolynomial {
    m: usize,
    poly: Polynomial,
}

impl VolumePolynomial {
    /// Expands the cube: a monomial with multiplicities `(e_1, e_2, …)` occurs with
    /// multinomial weight `3!/Π e!`, so the coefficient is `table / Π e!`.
    pub fn from_table(table: &IntersectionTable) -> Self {
        let mut poly = Polynomial::zero();
        for (mono, value) in table.entries() {
            let denom: i64 = match (mono[0] == mono[1], mono[1] == mono[2]) {
                (true, true) => 6,
                (false, false) => 1,
                _ => 2,
            };
            poly.add_term(mono.to_vec(), BigRational::new(value.clone(), BigInt::from(denom)));
        }
        VolumePolynomial { m: table.vertex_count(), poly }
    }

    pub fn for_fan(fan: &UnimodularFan) -> Self {
        Self::from_table(&IntersectionTable::for_fan(fan))
    }

    pub fn variable_count(&self) -> usize {
        self.m
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.poly
    }

    pub fn evaluate(&self, c: &[BigRational]) -> BigRational {
        self.poly.evaluate(c)
    }

    /// `(1/6) (Σ c_i ∂_i)³ V`, which equals `V(c)` for a homogeneous cubic.
    pub fn euler_value(&self, c: &[BigRational]) -> BigRational {
        let d3 = self.poly.directional_derivative(c).directional_derivative(c).directional_derivative(c);
        d3.coefficient(&[]) / BigRational::from_integer(BigInt::from(6))
    }
}

impl fmt::Display for VolumePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

/// `∂_{i1} ∂_{i2} V` at `c`: the length of the polytope edge dual to the wall.
pub fn edge_functional(volume: &VolumePolynomial, wall: [usize; 2], c: &[BigRational]) -> BigRational {
    volume.poly.derivative(wall[0]).derivative(wall[1]).evaluate(c)
}

/// `V(c)` after checking that every edge functional is positive.
pub fn evaluate_volume(fan: &UnimodularFan, c: &[BigRational]) -> Result<BigRational, FanError> {
    let m = fan.ray_count();
    if c.len() != m {
        return Err(FanError::SupportLength { expected: m, got: c.len() });
    }
    let volume = VolumePolynomial::for_fan(fan);
    let bad: Vec<([usize; 2], BigRational)> = fan
        .walls()
        .iter()
        .map(|w| {
            let key = w.key();
            (key, edge_functional(&volume, key, c))
        })
        .filter(|(_, len)| !len.is_positive())
        .collect();
    if !bad.is_empty() {
        return Err(FanError::SupportInvalid(bad));
    }
    Ok(volume.evaluate(c))
}
