//! Free abelian groups over totally ordered generator keys, kept in canonical form.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// A finite integer combination of generators.
///
/// Keys are strictly increasing and no stored coefficient is zero, so two
/// equal elements always have identical representations.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeAbelian<K: Ord> {
    terms: Vec<(K, BigInt)>,
}

impl<K: Ord> Default for FreeAbelian<K> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<K: Ord> FreeAbelian<K> {
    pub fn zero() -> Self {
        FreeAbelian { terms: Vec::new() }
    }

    pub fn generator(key: K) -> Self {
        FreeAbelian {
            terms: vec![(key, BigInt::one())],
        }
    }

    /// Sums coefficients of equal keys, drops zeros and sorts.
    pub fn normalize<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (K, C)>,
        C: Into<BigInt>,
    {
        let mut acc: BTreeMap<K, BigInt> = BTreeMap::new();
        for (k, c) in pairs {
            let c = c.into();
            if c.is_zero() {
                continue;
            }
            *acc.entry(k).or_insert_with(BigInt::zero) += c;
        }
        FreeAbelian {
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[(K, BigInt)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(K, BigInt)> {
        self.terms
    }

    pub fn coefficient(&self, key: &K) -> BigInt {
        match self.terms.binary_search_by(|(k, _)| k.cmp(key)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.iter().map(|(k, _)| k)
    }
}

impl<K: Ord + Clone> FreeAbelian<K> {
    pub fn add(&self, other: &Self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ka, ca) = &self.terms[i];
            let (kb, cb) = &other.terms[j];
            match ka.cmp(kb) {
                std::cmp::Ordering::Less => {
                    out.push((ka.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push((kb.clone(), cb.clone()));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((ka.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().cloned());
        FreeAbelian { terms: out }
    }

    pub fn neg(&self) -> Self {
        FreeAbelian {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, n: &BigInt) -> Self {
        if n.is_zero() {
            return Self::zero();
        }
        FreeAbelian {
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c * n)).collect(),
        }
    }

    /// Applies a linear map defined on generators. The images are summed and
    /// renormalized, so `f` may return non-canonical keys.
    pub fn map_linear<L, F, E>(&self, mut f: F) -> Result<FreeAbelian<L>, E>
    where
        L: Ord,
        F: FnMut(&K) -> Result<Vec<(L, BigInt)>, E>,
    {
        let mut pairs = Vec::new();
        for (k, c) in &self.terms {
            for (l, d) in f(k)? {
                pairs.push((l, c * d));
            }
        }
        Ok(FreeAbelian::normalize(pairs))
    }
}

impl<K: Ord> FreeAbelian<K> {
    /// Renders `c1*[k1] + c2*[k2] - c3*[k3]` with `0` for the zero element.
    /// `key` renders a whole bracketed key.
    pub fn render_with<F>(&self, mut key: F) -> String
    where
        F: FnMut(&K) -> String,
    {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i == 0 {
                if c.is_negative() {
                    s.push('-');
                }
            } else if c.is_negative() {
                s.push_str(" - ");
            } else {
                s.push_str(" + ");
            }
            s.push_str(&format!("{}*{}", c.abs(), key(k)));
        }
        s
    }
}

impl<K: Ord + fmt::Display> fmt::Display for FreeAbelian<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_with(|k| format!("[{k}]")))
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for FreeAbelian<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (k, c.to_string())))
            .finish()
    }
}
