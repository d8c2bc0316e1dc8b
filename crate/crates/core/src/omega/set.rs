use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A point of `ω⁺ = ω ∪ {ω}`. The limit point is its own variant, never a
/// large natural.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Point {
    Nat(u32),
    Omega,
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Point::Nat(n) => write!(f, "{n}"),
            Point::Omega => f.write_str("ω"),
        }
    }
}

/// An eventually periodic subset of `ω`, plus the membership bit of `ω`.
///
/// `n < offset` is read from `prefix`, larger `n` from
/// `pattern[(n - offset) % pattern.len()]`. The form is canonical: the
/// pattern has minimal period and the offset is minimal, so derived equality
/// is set equality. Finite and cofinite traces are the period-1 cases.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OmegaPlusSet {
    prefix: Vec<bool>,
    pattern: Vec<bool>,
    omega: bool,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Largest period accepted when combining sets.
pub const MAX_PERIOD: usize = 1 << 12;

impl OmegaPlusSet {
    fn canonical(mut prefix: Vec<bool>, mut pattern: Vec<bool>, omega: bool) -> Self {
        assert!(!pattern.is_empty());
        let p = pattern.len();
        if let Some(d) = (1..=p).filter(|d| p.is_multiple_of(*d)).find(|&d| (d..p).all(|i| pattern[i] == pattern[i - d])) {
            pattern.truncate(d);
        }
        while let Some(&last) = prefix.last() {
            if last != *pattern.last().unwrap() {
                break;
            }
            prefix.pop();
            pattern.rotate_right(1);
        }
        OmegaPlusSet { prefix, pattern, omega }
    }

    /// Tabulate `f` on `0..offset + period`; `f` must be periodic beyond `offset`.
    pub fn tabulate(offset: usize, period: usize, omega: bool, f: impl Fn(u32) -> bool) -> Self {
        assert!(period >= 1);
        let prefix = (0..offset).map(|n| f(n as u32)).collect();
        let pattern = (offset..offset + period).map(|n| f(n as u32)).collect();
        Self::canonical(prefix, pattern, omega)
    }

    pub fn empty() -> Self {
        Self::canonical(vec![], vec![false], false)
    }

    /// `ω⁺`.
    pub fn full() -> Self {
        Self::canonical(vec![], vec![true], true)
    }

    pub fn omega_only() -> Self {
        Self::canonical(vec![], vec![false], true)
    }

    pub fn from_point(p: Point) -> Self {
        match p {
            Point::Nat(n) => Self::finite([n], false),
            Point::Omega => Self::omega_only(),
        }
    }

    pub fn finite(members: impl IntoIterator<Item = u32>, omega: bool) -> Self {
        let members: Vec<u32> = members.into_iter().collect();
        let top = members.iter().map(|&m| m as usize + 1).max().unwrap_or(0);
        let mut prefix = vec![false; top];
        for m in members {
            prefix[m as usize] = true;
        }
        Self::canonical(prefix, vec![false], omega)
    }

    /// `ω` minus the exceptions, plus `ω` if asked.
    pub fn cofinite(exceptions: impl IntoIterator<Item = u32>, omega: bool) -> Self {
        let mut s = Self::finite(exceptions, false).complement();
        s.omega = omega;
        s
    }

    /// `{n ≥ offset | (n - offset) mod period ∈ residues} ∪ head`.
    pub fn periodic(head: &[u32], offset: u32, period: u32, residues: &[u32], omega: bool) -> Result<Self> {
        if period == 0 || period as usize > MAX_PERIOD {
            return Err(Error::IllFormed(format!("period {period} out of range")));
        }
        if let Some(r) = residues.iter().find(|&&r| r >= period) {
            return Err(Error::IllFormed(format!("residue {r} not below period {period}")));
        }
        if let Some(h) = head.iter().find(|&&h| h >= offset) {
            return Err(Error::IllFormed(format!("head point {h} not below offset {offset}")));
        }
        Ok(Self::tabulate(offset as usize, period as usize, omega, |n| {
            if n < offset {
                head.contains(&n)
            } else {
                residues.contains(&((n - offset) % period))
            }
        }))
    }

    pub fn evens() -> Self {
        Self::tabulate(0, 2, false, |n| n % 2 == 0)
    }

    pub fn offset(&self) -> usize {
        self.prefix.len()
    }

    pub fn period(&self) -> usize {
        self.pattern.len()
    }

    pub fn contains_nat(&self, n: u32) -> bool {
        let n = n as usize;
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.pattern[(n - self.prefix.len()) % self.pattern.len()]
        }
    }

    pub fn contains_omega(&self) -> bool {
        self.omega
    }

    pub fn contains(&self, p: Point) -> bool {
        match p {
            Point::Nat(n) => self.contains_nat(n),
            Point::Omega => self.omega,
        }
    }

    pub fn with_omega(&self, omega: bool) -> Self {
        OmegaPlusSet { omega, ..self.clone() }
    }

    pub fn is_empty(&self) -> bool {
        *self == Self::empty()
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full()
    }

    /// Finitely many naturals.
    pub fn finite_trace(&self) -> bool {
        self.pattern == [false]
    }

    /// Cofinitely many naturals.
    pub fn cofinite_trace(&self) -> bool {
        self.pattern == [true]
    }

    pub fn is_open(&self) -> bool {
        !self.omega || self.cofinite_trace()
    }

    pub fn is_closed(&self) -> bool {
        self.omega || self.finite_trace()
    }

    pub fn is_clopen(&self) -> bool {
        self.is_open() && self.is_closed()
    }

    /// Adds `ω` to sets with infinitely many naturals.
    pub fn closure(&self) -> Self {
        self.with_omega(self.omega || !self.finite_trace())
    }

    /// Drops `ω` from sets missing infinitely many naturals.
    pub fn interior(&self) -> Self {
        self.with_omega(self.omega && self.cofinite_trace())
    }

    fn zip(&self, other: &Self, f: impl Fn(bool, bool) -> bool) -> Self {
        let offset = self.offset().max(other.offset());
        let period = lcm(self.period(), other.period());
        assert!(period <= MAX_PERIOD, "period {period} exceeds {MAX_PERIOD}");
        Self::tabulate(offset, period, f(self.omega, other.omega), |n| f(self.contains_nat(n), other.contains_nat(n)))
    }

    pub fn meet(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a && b)
    }

    pub fn join(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a || b)
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        OmegaPlusSet {
            prefix: self.prefix.iter().map(|b| !b).collect(),
            pattern: self.pattern.iter().map(|b| !b).collect(),
            omega: !self.omega,
        }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.minus(other).is_empty()
    }

    /// Least member, naturals before `ω`.
    pub fn min_point(&self) -> Option<Point> {
        let bound = (self.offset() + self.period()) as u32;
        (0..bound).find(|&n| self.contains_nat(n)).map(Point::Nat).or(self.omega.then_some(Point::Omega))
    }

    /// Members below `bound`, in order.
    pub fn naturals_below(&self, bound: u32) -> impl Iterator<Item = u32> + '_ {
        (0..bound).filter(move |&n| self.contains_nat(n))
    }

    /// Members of a finite trace, or the missing naturals of a cofinite one.
    pub fn exceptions(&self) -> Option<Vec<u32>> {
        if self.finite_trace() {
            Some(self.naturals_below(self.offset() as u32).collect())
        } else if self.cofinite_trace() {
            Some((0..self.offset() as u32).filter(|&n| !self.contains_nat(n)).collect())
        } else {
            None
        }
    }

    /// Head members below the offset and the residues of the periodic tail.
    pub fn periodic_parts(&self) -> (Vec<u32>, Vec<u32>) {
        let head = self.naturals_below(self.offset() as u32).collect();
        let residues = (0..self.period() as u32).filter(|&r| self.pattern[r as usize]).collect();
        (head, residues)
    }
}

impl std::fmt::Display for OmegaPlusSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let list = |v: &[u32]| v.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(",");
        let omega = if self.omega { "ω" } else { "" };
        if self.finite_trace() {
            let mut parts: Vec<String> = self.exceptions().unwrap().iter().map(|n| n.to_string()).collect();
            if self.omega {
                parts.push("ω".into());
            }
            write!(f, "{{{}}}", parts.join(","))
        } else if self.cofinite_trace() {
            let ex = self.exceptions().unwrap();
            let base = if self.omega { "ω⁺" } else { "ω" };
            let mut extra = Vec::new();
            if !ex.is_empty() {
                extra.push(format!("∖{{{}}}", list(&ex)));
            }
            write!(f, "{base}{}", extra.concat())
        } else {
            let (head, residues) = self.periodic_parts();
            write!(
                f,
                "{{{}}}∪{{n≥{} | (n-{}) mod {} ∈ {{{}}}}}{}",
                list(&head),
                self.offset(),
                self.offset(),
                self.period(),
                list(&residues),
                if omega.is_empty() { String::new() } else { "∪{ω}".into() }
            )
        }
    }
}

impl std::fmt::Debug for OmegaPlusSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

/// Wire form: `{"kind": "finite" | "cofinite" | "periodic", ...}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OmegaSetJson {
    Finite {
        exceptions: Vec<u32>,
        omega: bool,
    },
    Cofinite {
        exceptions: Vec<u32>,
        omega: bool,
    },
    Periodic {
        #[serde(default)]
        head: Vec<u32>,
        offset: u32,
        period: u32,
        residues: Vec<u32>,
        omega: bool,
    },
}

impl From<&OmegaPlusSet> for OmegaSetJson {
    fn from(s: &OmegaPlusSet) -> Self {
        if s.finite_trace() {
            OmegaSetJson::Finite { exceptions: s.exceptions().unwrap(), omega: s.omega }
        } else if s.cofinite_trace() {
            OmegaSetJson::Cofinite { exceptions: s.exceptions().unwrap(), omega: s.omega }
        } else {
            let (head, residues) = s.periodic_parts();
            OmegaSetJson::Periodic {
                head,
                offset: s.offset() as u32,
                period: s.period() as u32,
                residues,
                omega: s.omega,
            }
        }
    }
}

impl TryFrom<OmegaSetJson> for OmegaPlusSet {
    type Error = Error;

    fn try_from(j: OmegaSetJson) -> Result<Self> {
        match j {
            OmegaSetJson::Finite { exceptions, omega } => Ok(OmegaPlusSet::finite(exceptions, omega)),
            OmegaSetJson::Cofinite { exceptions, omega } => Ok(OmegaPlusSet::cofinite(exceptions, omega)),
            OmegaSetJson::Periodic { head, offset, period, residues, omega } => {
                OmegaPlusSet::periodic(&head, offset, period, &residues, omega)
            }
        }
    }
}

impl Serialize for OmegaPlusSet {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        OmegaSetJson::from(self).serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OmegaPlusSet {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        OmegaSetJson::deserialize(deserializer)?.try_into().map_err(serde::de::Error::custom)
    }
}
