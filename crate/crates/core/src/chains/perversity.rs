use std::collections::BTreeMap;
use std::fmt;

use super::ChainError;
use crate::complex::FilteredComplex;
use crate::extint::ExtInt;

/// How a perversity assigns values to singular strata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PerversityKind {
    /// `values[k - 1]` is the value on strata of codimension `k`.
    Codim(Vec<ExtInt>),
    /// Values keyed by `(level, index within level)` of a stratum.
    Table(BTreeMap<(usize, usize), ExtInt>),
}

/// A map from singular strata to extended integers; zero on regular strata.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Perversity {
    pub name: String,
    pub kind: PerversityKind,
}

impl Perversity {
    pub fn codim(name: impl Into<String>, values: Vec<ExtInt>) -> Self {
        Perversity { name: name.into(), kind: PerversityKind::Codim(values) }
    }

    pub fn table(name: impl Into<String>, values: BTreeMap<(usize, usize), ExtInt>) -> Self {
        Perversity { name: name.into(), kind: PerversityKind::Table(values) }
    }

    fn from_fn(name: &str, n: usize, f: impl Fn(i64) -> i64) -> Self {
        Self::codim(name, (1..=n as i64).map(|k| ExtInt::Finite(f(k))).collect())
    }

    /// The zero perversity `0̄`.
    pub fn zero(n: usize) -> Self {
        Self::from_fn("zero", n, |_| 0)
    }

    /// The top perversity `t̄(k) = k - 2`.
    pub fn top(n: usize) -> Self {
        Self::from_fn("top", n, |k| k - 2)
    }

    /// The lower-middle perversity `m̄(k) = ⌊(k - 2)/2⌋`.
    pub fn lower_middle(n: usize) -> Self {
        Self::from_fn("lower-middle", n, |k| (k - 2).div_euclid(2))
    }

    /// The upper-middle perversity `n̄(k) = ⌈(k - 2)/2⌉`.
    pub fn upper_middle(n: usize) -> Self {
        Self::from_fn("upper-middle", n, |k| -(2 - k).div_euclid(2))
    }

    /// The same value on every singular stratum.
    pub fn constant(name: &str, n: usize, v: ExtInt) -> Self {
        Self::codim(name, vec![v; n])
    }

    /// Presets by name.
    pub fn preset(name: &str, n: usize) -> Option<Self> {
        match name {
            "zero" | "0" => Some(Self::zero(n)),
            "top" | "t" => Some(Self::top(n)),
            "lower-middle" | "m" => Some(Self::lower_middle(n)),
            "upper-middle" | "n" => Some(Self::upper_middle(n)),
            "inf" => Some(Self::constant("inf", n, ExtInt::PosInf)),
            "-inf" => Some(Self::constant("-inf", n, ExtInt::NegInf)),
            _ => None,
        }
    }

    /// Value on each stratum of `k`, in stratum order.
    pub fn values_on(&self, k: &FilteredComplex) -> Result<Vec<ExtInt>, ChainError> {
        k.strata()
            .iter()
            .map(|s| {
                if s.regular {
                    if let PerversityKind::Table(t) = &self.kind {
                        if let Some(v) = t.get(&(s.level, s.index)) {
                            if *v != ExtInt::ZERO {
                                return Err(ChainError::Perversity(format!(
                                    "{}: nonzero value on the regular stratum ({}, {})",
                                    self.name, s.level, s.index
                                )));
                            }
                        }
                    }
                    return Ok(ExtInt::ZERO);
                }
                match &self.kind {
                    PerversityKind::Codim(v) => v.get(s.codim(k.n()) - 1).copied().ok_or_else(|| {
                        ChainError::Perversity(format!("{}: no value for codimension {}", self.name, s.codim(k.n())))
                    }),
                    PerversityKind::Table(t) => t.get(&(s.level, s.index)).copied().ok_or_else(|| {
                        ChainError::Perversity(format!("{}: no value for stratum ({}, {})", self.name, s.level, s.index))
                    }),
                }
            })
            .collect()
    }

    /// Checks that table keys name singular strata of `k`.
    pub fn validate_on(&self, k: &FilteredComplex) -> Result<(), ChainError> {
        if let PerversityKind::Table(t) = &self.kind {
            for &(level, index) in t.keys() {
                if k.stratum_by_key(level, index).is_none() {
                    return Err(ChainError::Perversity(format!("{}: unknown stratum ({level}, {index})", self.name)));
                }
            }
        }
        self.values_on(k).map(|_| ())
    }

    /// The dual `Dp̄(S) = codim S - 2 - p̄(S)`.
    pub fn dual(&self, k: &FilteredComplex) -> Result<Perversity, ChainError> {
        let name = format!("D{}", self.name);
        match &self.kind {
            PerversityKind::Codim(v) => Ok(Perversity::codim(
                name,
                v.iter().enumerate().map(|(i, p)| ExtInt::from(i as i64 + 1 - 2) - *p).collect(),
            )),
            PerversityKind::Table(_) => {
                let vals = self.values_on(k)?;
                let mut t = BTreeMap::new();
                for (s, p) in k.strata().iter().zip(vals) {
                    if !s.regular {
                        t.insert((s.level, s.index), ExtInt::from(s.codim(k.n()) as i64 - 2) - p);
                    }
                }
                Ok(Perversity::table(name, t))
            }
        }
    }

    /// The perversity induced on a subcomplex `sub` of `ambient`: each
    /// stratum of `sub` takes the value of the ambient stratum containing it.
    pub fn restrict(&self, ambient: &FilteredComplex, sub: &FilteredComplex) -> Result<Perversity, ChainError> {
        match &self.kind {
            PerversityKind::Codim(_) => Ok(self.clone()),
            PerversityKind::Table(_) => {
                let vals = self.values_on(ambient)?;
                let mut t = BTreeMap::new();
                for s in sub.strata() {
                    if s.regular {
                        continue;
                    }
                    let simplex = sub.simplex(s.simplices[0]);
                    let ai = ambient.index_of(simplex).ok_or_else(|| ChainError::NotSubcomplex(simplex.to_string()))?;
                    t.insert((s.level, s.index), vals[ambient.stratum_of(ai)]);
                }
                Ok(Perversity::table(self.name.clone(), t))
            }
        }
    }

    /// The perversity induced on `target` when the interior of each of its
    /// simplices `i` lies in the stratum of simplex `origin[i]` of `ambient`,
    /// as for a subdivision and its carriers.
    pub fn pullback(&self, ambient: &FilteredComplex, target: &FilteredComplex, origin: &[usize]) -> Result<Perversity, ChainError> {
        match &self.kind {
            PerversityKind::Codim(_) => Ok(self.clone()),
            PerversityKind::Table(_) => {
                let vals = self.values_on(ambient)?;
                let mut t = BTreeMap::new();
                for s in target.strata() {
                    if !s.regular {
                        t.insert((s.level, s.index), vals[ambient.stratum_of(origin[s.simplices[0]])]);
                    }
                }
                Ok(Perversity::table(self.name.clone(), t))
            }
        }
    }

    /// Pointwise `self <= other` on the strata of `k`.
    pub fn le_on(&self, other: &Perversity, k: &FilteredComplex) -> Result<bool, ChainError> {
        let (a, b) = (self.values_on(k)?, other.values_on(k)?);
        Ok(a.iter().zip(&b).all(|(x, y)| x <= y))
    }
}

impl fmt::Display for Perversity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Simplex;

    #[test]
    fn presets() {
        let m = Perversity::lower_middle(4);
        assert_eq!(m.kind, PerversityKind::Codim(vec![ExtInt::from(-1i64), 0.into(), 0.into(), 1.into()]));
        let n = Perversity::upper_middle(4);
        assert_eq!(n.kind, PerversityKind::Codim(vec![ExtInt::ZERO, 0.into(), 1.into(), 1.into()]));
        let t = Perversity::top(3);
        assert_eq!(t.kind, PerversityKind::Codim(vec![ExtInt::from(-1i64), 0.into(), 1.into()]));
    }

    #[test]
    fn dual_is_involutive_on_finite_values() {
        let k = FilteredComplex::from_vertex_levels(3, &[Simplex::from_ids(&[0, 1, 2, 3]).unwrap()], |v| v.0 as usize).unwrap();
        for p in [Perversity::zero(3), Perversity::top(3), Perversity::lower_middle(3)] {
            let dd = p.dual(&k).unwrap().dual(&k).unwrap();
            assert_eq!(dd.values_on(&k).unwrap(), p.values_on(&k).unwrap());
        }
        // top and zero are dual
        assert_eq!(Perversity::zero(3).dual(&k).unwrap().values_on(&k).unwrap(), Perversity::top(3).values_on(&k).unwrap());
    }

    #[test]
    fn table_missing_stratum_is_an_error() {
        let k = FilteredComplex::from_vertex_levels(1, &[Simplex::from_ids(&[0, 1]).unwrap()], |v| v.0 as usize).unwrap();
        let p = Perversity::table("t", BTreeMap::new());
        assert!(p.values_on(&k).is_err());
        let mut t = BTreeMap::new();
        t.insert((0, 0), ExtInt::from(3i64));
        assert_eq!(Perversity::table("t", t).values_on(&k).unwrap(), vec![ExtInt::from(3i64), ExtInt::ZERO]);
    }
}
