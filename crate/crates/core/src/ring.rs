//! The graded Stanley–Reisner ring `SR(K, φ)` at the level of monomials and
//! graded dimensions.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::complex::{ComplexError, ComplexWithDegrees, Simplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("degree {0} is not a positive even integer")]
pub struct BadDegree(pub u32);

/// Sorted multiset of positive even degrees.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct DegreeMultiset(Vec<u32>);

impl DegreeMultiset {
    pub fn from_degrees<I: IntoIterator<Item = u32>>(degrees: I) -> Result<Self, BadDegree> {
        let mut v: Vec<u32> = degrees.into_iter().collect();
        if let Some(&d) = v.iter().find(|&&d| d < 2 || d % 2 != 0) {
            return Err(BadDegree(d));
        }
        v.sort_unstable();
        Ok(DegreeMultiset(v))
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, degree: u32) -> usize {
        self.0.iter().filter(|&&d| d == degree).count()
    }

    pub fn twos(&self) -> usize {
        self.count(2)
    }

    pub fn without_twos(&self) -> DegreeMultiset {
        DegreeMultiset(self.0.iter().copied().filter(|&d| d != 2).collect())
    }

    pub fn with_twos(&self, k: usize) -> DegreeMultiset {
        let mut v = self.0.clone();
        v.extend(std::iter::repeat_n(2, k));
        v.sort_unstable();
        DegreeMultiset(v)
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&d| d as u64).sum()
    }

    /// Sub-multiset test.
    pub fn contains_all(&self, other: &DegreeMultiset) -> bool {
        let mut mine = self.0.iter().peekable();
        'outer: for d in &other.0 {
            while let Some(&&m) = mine.peek() {
                mine.next();
                if m == *d {
                    continue 'outer;
                }
                if m > *d {
                    return false;
                }
            }
            return false;
        }
        true
    }

    /// Removes one copy of each entry of `other`; `None` unless `other ⊆ self`.
    pub fn minus(&self, other: &DegreeMultiset) -> Option<DegreeMultiset> {
        let mut rest = self.0.clone();
        for d in &other.0 {
            let pos = rest.iter().position(|x| x == d)?;
            rest.remove(pos);
        }
        Some(DegreeMultiset(rest))
    }

    pub fn union(&self, other: &DegreeMultiset) -> DegreeMultiset {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        v.sort_unstable();
        DegreeMultiset(v)
    }
}

impl<'de> Deserialize<'de> for DegreeMultiset {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(de)?;
        DegreeMultiset::from_degrees(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for DegreeMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, d) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, "}}")
    }
}

/// A monomial in the vertex generators; zero exponents are dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<String, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn new<I, S>(exponents: I) -> Self
    where
        I: IntoIterator<Item = (S, u32)>,
        S: Into<String>,
    {
        Monomial(
            exponents
                .into_iter()
                .filter(|(_, e)| *e > 0)
                .map(|(id, e)| (id.into(), e))
                .collect(),
        )
    }

    pub fn support(&self) -> Simplex {
        Simplex::new(self.0.keys().cloned())
    }

    pub fn exponent(&self, id: &str) -> u32 {
        self.0.get(id).copied().unwrap_or(0)
    }

    /// `Σ exponent · φ(vertex)`; `None` if some vertex is undeclared.
    pub fn degree(&self, complex: &ComplexWithDegrees) -> Option<u64> {
        self.0
            .iter()
            .map(|(id, &e)| complex.degree(id).map(|d| d as u64 * e as u64))
            .sum()
    }
}

/// A monomial vanishes in `SR(K, φ)` exactly when its support is not a face.
pub fn monomial_is_zero(complex: &ComplexWithDegrees, m: &Monomial) -> Result<bool, ComplexError> {
    Ok(!complex.is_face(&m.support())?)
}

/// Graded dimensions of an evenly graded ring in degrees `0, 2, …, D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HilbertFunction {
    max_degree: u32,
    dims: Vec<BigUint>,
}

impl HilbertFunction {
    pub fn zero(max_degree: u32) -> Self {
        assert!(
            max_degree.is_multiple_of(2),
            "truncation degree must be even"
        );
        HilbertFunction {
            max_degree,
            dims: vec![BigUint::zero(); (max_degree / 2 + 1) as usize],
        }
    }

    /// From dimensions in degrees `0, 2, …, D`.
    pub fn from_dims(max_degree: u32, dims: Vec<BigUint>) -> Option<Self> {
        (max_degree.is_multiple_of(2) && dims.len() == (max_degree / 2 + 1) as usize)
            .then_some(HilbertFunction { max_degree, dims })
    }

    pub fn max_degree(&self) -> u32 {
        self.max_degree
    }

    /// Dimension in degree `d`; zero in odd degrees. Panics above `D`.
    pub fn dim(&self, d: u32) -> BigUint {
        assert!(
            d <= self.max_degree,
            "degree {d} above truncation {}",
            self.max_degree
        );
        if d % 2 == 1 {
            BigUint::zero()
        } else {
            self.dims[(d / 2) as usize].clone()
        }
    }

    /// `(degree, dimension)` for every even degree up to `D`.
    pub fn iter(&self) -> impl Iterator<Item = (u32, &BigUint)> + '_ {
        self.dims.iter().enumerate().map(|(i, v)| (2 * i as u32, v))
    }

    /// First even degree at which the two functions differ.
    pub fn first_difference(&self, other: &HilbertFunction) -> Option<u32> {
        let top = self.max_degree.min(other.max_degree);
        (0..=top)
            .step_by(2)
            .find(|&d| self.dims[(d / 2) as usize] != other.dims[(d / 2) as usize])
    }

    fn slot(&mut self, d: u32) -> &mut BigUint {
        &mut self.dims[(d / 2) as usize]
    }
}

/// Dimension counts on the wire: a JSON number when it fits in `u64`,
/// otherwise a decimal string.
pub(crate) mod count {
    use num_bigint::BigUint;
    use num_traits::ToPrimitive;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    pub(crate) enum Wire {
        Small(u64),
        Big(String),
    }

    impl From<&BigUint> for Wire {
        fn from(v: &BigUint) -> Self {
            match v.to_u64() {
                Some(n) => Wire::Small(n),
                None => Wire::Big(v.to_string()),
            }
        }
    }

    impl Wire {
        pub(crate) fn into_big(self) -> Result<BigUint, num_bigint::ParseBigIntError> {
            match self {
                Wire::Small(n) => Ok(BigUint::from(n)),
                Wire::Big(s) => s.parse(),
            }
        }
    }

    pub(crate) fn serialize<S: Serializer>(v: &BigUint, ser: S) -> Result<S::Ok, S::Error> {
        Wire::from(v).serialize(ser)
    }

    pub(crate) fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<BigUint, D::Error> {
        Wire::deserialize(de)?
            .into_big()
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for HilbertFunction {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        struct Dims<'a>(&'a [BigUint]);
        impl Serialize for Dims<'_> {
            fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
                let mut map = ser.serialize_map(Some(self.0.len()))?;
                for (i, v) in self.0.iter().enumerate() {
                    map.serialize_entry(&(2 * i).to_string(), &count::Wire::from(v))?;
                }
                map.end()
            }
        }
        let mut map = ser.serialize_map(Some(2))?;
        map.serialize_entry("D", &self.max_degree)?;
        map.serialize_entry("dims", &Dims(&self.dims))?;
        map.end()
    }
}

impl<'de> Deserialize<'de> for HilbertFunction {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        use serde::de::Error;

        #[derive(Deserialize)]
        #[serde(deny_unknown_fields)]
        struct Wire {
            #[serde(rename = "D")]
            max_degree: u32,
            dims: BTreeMap<String, count::Wire>,
        }
        let wire = Wire::deserialize(de)?;
        if wire.max_degree % 2 != 0 {
            return Err(D::Error::custom("truncation degree must be even"));
        }
        let mut h = HilbertFunction::zero(wire.max_degree);
        let mut seen = BTreeSet::new();
        for (k, v) in wire.dims {
            let d: u32 = k.parse().map_err(D::Error::custom)?;
            if !d.is_multiple_of(2) || d > wire.max_degree {
                return Err(D::Error::custom(format!("unexpected degree key {k}")));
            }
            *h.slot(d) = v.into_big().map_err(D::Error::custom)?;
            seen.insert(d);
        }
        if seen.len() != h.dims.len() {
            return Err(D::Error::custom("missing degrees in dims"));
        }
        Ok(h)
    }
}

/// Hilbert function of the free polynomial ring on generators of the given
/// degrees.
pub fn free_hilbert(ms: &DegreeMultiset, max_degree: u32) -> HilbertFunction {
    let mut h = HilbertFunction::zero(max_degree);
    *h.slot(0) = BigUint::from(1u32);
    for &g in ms.as_slice() {
        let mut d = g;
        while d <= max_degree {
            let prev = h.dims[((d - g) / 2) as usize].clone();
            *h.slot(d) += prev;
            d += 2;
        }
    }
    h
}

/// Hilbert function of `SR(K, φ)` for the complex generated by `facets`.
///
/// Faces are grouped by degree multiset; monomials with support exactly a
/// face `F` in degree `d` are the free monomials on `F` in degree
/// `d − Σφ(F)`. An empty facet list, or `[∅]`, is the one-point complex
/// whose ring is `ℤ` in degree 0.
pub fn facet_hilbert(
    facets: &[Simplex],
    degrees: &BTreeMap<String, u32>,
    max_degree: u32,
) -> HilbertFunction {
    let faces: BTreeSet<Simplex> = facets.iter().flat_map(|f| f.subsets()).collect();
    let mut by_multiset: HashMap<DegreeMultiset, u64> = HashMap::new();
    for face in &faces {
        let ms = DegreeMultiset::from_degrees(face.iter().map(|id| degrees[id]))
            .expect("degrees are even and positive");
        *by_multiset.entry(ms).or_default() += 1;
    }
    let mut h = HilbertFunction::zero(max_degree);
    *h.slot(0) = BigUint::from(1u32);
    for (ms, count) in by_multiset {
        let shift = ms.total();
        if ms.is_empty() || shift > max_degree as u64 {
            continue;
        }
        let shift = shift as u32;
        let free = free_hilbert(&ms, max_degree - shift);
        for (d, v) in free.iter() {
            *h.slot(d + shift) += v * count;
        }
    }
    h
}

pub fn sr_hilbert(complex: &ComplexWithDegrees, max_degree: u32) -> HilbertFunction {
    facet_hilbert(complex.facets(), complex.degree_map(), max_degree)
}

/// `SR(K, φ)/(V ∖ σ) ≅ ℤ[σ]`, returned as the generator degrees of `ℤ[σ]`.
pub fn restrict_to_simplex(
    complex: &ComplexWithDegrees,
    s: &Simplex,
) -> Result<DegreeMultiset, ComplexError> {
    complex.degree_multiset(s)
}
