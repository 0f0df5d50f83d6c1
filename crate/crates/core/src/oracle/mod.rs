//! Brute-force ground truth from explicit state vectors.
//!
//! Amplitudes are exact Gaussian rationals and need not be normalized; every
//! purity is divided by the squared norm twice, so states such as GHZ stay exact.

pub mod corpus;

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerators::{ShadowEnumerator, WeightEnumerator};
use crate::error::{Error, Result};
use crate::exact::{serde_rat, GaussRat, Rat};
use crate::hetero::DimensionProfile;

/// Limits for the brute-force routines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest total Hilbert-space dimension accepted.
    pub cap_dim: u128,
    /// Largest `N` for the double subset sum of [`direct_shadow`].
    pub shadow_max_n: usize,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            cap_dim: 4096,
            shadow_max_n: 12,
        }
    }
}

/// Unnormalized pure state with sparse amplitudes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PureState {
    profile: DimensionProfile,
    amps: BTreeMap<Vec<u32>, GaussRat>,
}

impl PureState {
    /// Repeated kets are summed; zero amplitudes are dropped.
    pub fn new(profile: DimensionProfile, amps: Vec<(Vec<u32>, GaussRat)>) -> Result<Self> {
        let mut map: BTreeMap<Vec<u32>, GaussRat> = BTreeMap::new();
        for (ket, a) in amps {
            if ket.len() != profile.n_parties() {
                return Err(Error::Invalid(format!(
                    "ket {ket:?} has {} labels, expected {}",
                    ket.len(),
                    profile.n_parties()
                )));
            }
            if let Some(i) = (0..ket.len()).find(|&i| ket[i] >= profile.dims()[i]) {
                return Err(Error::Invalid(format!(
                    "ket {ket:?}: label {} out of range for dimension {}",
                    ket[i],
                    profile.dims()[i]
                )));
            }
            *map.entry(ket).or_insert_with(GaussRat::zero) += &a;
        }
        map.retain(|_, a| !a.is_zero());
        if map.is_empty() {
            return Err(Error::Invalid("state has no nonzero amplitude".into()));
        }
        Ok(PureState { profile, amps: map })
    }

    /// Real integer amplitudes, for building test states.
    pub fn from_real(dims: Vec<u32>, amps: &[(&[u32], i64)]) -> Result<Self> {
        PureState::new(
            DimensionProfile::new(dims)?,
            amps.iter()
                .map(|(k, a)| (k.to_vec(), GaussRat::real(Rat::from_integer((*a).into()))))
                .collect(),
        )
    }

    pub fn profile(&self) -> &DimensionProfile {
        &self.profile
    }

    pub fn n_parties(&self) -> usize {
        self.profile.n_parties()
    }

    pub fn amplitudes(&self) -> impl Iterator<Item = (&[u32], &GaussRat)> {
        self.amps.iter().map(|(k, a)| (k.as_slice(), a))
    }

    /// `Σ |a_u|²`.
    pub fn norm_sqr(&self) -> Rat {
        self.amps.values().map(GaussRat::norm_sqr).sum()
    }

    fn check_capacity(&self, config: &OracleConfig) -> Result<()> {
        let total = self.profile.total_dim();
        let needed = total.to_u128().unwrap_or(u128::MAX);
        if needed > config.cap_dim {
            return Err(Error::Capacity {
                what: "Hilbert-space dimension",
                needed,
                cap: config.cap_dim,
            });
        }
        Ok(())
    }
}

/// Wire form: `{"dims": [...], "amps": [{"ket": [...], "re": "p/q", "im": "p/q"}]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StateFile {
    pub dims: Vec<u32>,
    pub amps: Vec<AmplitudeEntry>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AmplitudeEntry {
    pub ket: Vec<u32>,
    #[serde(with = "serde_rat")]
    pub re: Rat,
    #[serde(with = "serde_rat", default = "Rat::zero")]
    pub im: Rat,
}

impl TryFrom<StateFile> for PureState {
    type Error = Error;
    fn try_from(f: StateFile) -> Result<Self> {
        PureState::new(
            DimensionProfile::new(f.dims)?,
            f.amps
                .into_iter()
                .map(|e| (e.ket, GaussRat::new(e.re, e.im)))
                .collect(),
        )
    }
}

impl From<&PureState> for StateFile {
    fn from(s: &PureState) -> Self {
        StateFile {
            dims: s.profile.dims().to_vec(),
            amps: s
                .amps
                .iter()
                .map(|(k, a)| AmplitudeEntry {
                    ket: k.clone(),
                    re: a.re.clone(),
                    im: a.im.clone(),
                })
                .collect(),
        }
    }
}

impl PureState {
    pub fn from_json(text: &str) -> Result<Self> {
        let f: StateFile =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("state file: {e}")))?;
        f.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&StateFile::from(self)).expect("state serializes")
    }
}

fn subset_from_mask(n: usize, mask: u64) -> Vec<usize> {
    (0..n).filter(|i| mask >> i & 1 == 1).collect()
}

fn mask_from_subset(n: usize, subset: &[usize]) -> Result<u64> {
    let mut mask = 0u64;
    for &i in subset {
        if i >= n {
            return Err(Error::range("party index", i, format!("0..{n}")));
        }
        mask |= 1 << i;
    }
    Ok(mask)
}

/// `Tr ρ_S²` of the unnormalized state, before dividing by `norm⁴`.
fn raw_purity(state: &PureState, mask: u64) -> Rat {
    // split each ket into its S part and its complement part
    let mut by_inside: HashMap<Vec<u32>, Vec<(Vec<u32>, &GaussRat)>> = HashMap::new();
    let mut by_outside: HashMap<Vec<u32>, Vec<(Vec<u32>, &GaussRat)>> = HashMap::new();
    for (ket, a) in &state.amps {
        let (mut ins, mut out) = (Vec::new(), Vec::new());
        for (i, &l) in ket.iter().enumerate() {
            if mask >> i & 1 == 1 {
                ins.push(l);
            } else {
                out.push(l);
            }
        }
        by_inside
            .entry(ins.clone())
            .or_default()
            .push((out.clone(), a));
        by_outside.entry(out).or_default().push((ins, a));
    }
    let pairs = |g: &HashMap<Vec<u32>, Vec<(Vec<u32>, &GaussRat)>>| -> usize {
        g.values().map(|v| v.len() * v.len()).sum()
    };
    // Gram matrix over whichever side needs fewer products; both give the same trace
    let groups = if pairs(&by_outside) <= pairs(&by_inside) {
        by_outside
    } else {
        by_inside
    };
    let mut gram: HashMap<(&[u32], &[u32]), GaussRat> = HashMap::new();
    for v in groups.values() {
        for (x, ax) in v {
            for (y, ay) in v {
                *gram
                    .entry((x.as_slice(), y.as_slice()))
                    .or_insert_with(GaussRat::zero) += &ax.conj_mul(ay);
            }
        }
    }
    gram.values().map(GaussRat::norm_sqr).sum()
}

/// Purity `Tr ρ_S²` of the normalized state's reduction to `S`.
pub fn purity(state: &PureState, subset: &[usize], config: &OracleConfig) -> Result<Rat> {
    state.check_capacity(config)?;
    let mask = mask_from_subset(state.n_parties(), subset)?;
    let norm = state.norm_sqr();
    Ok(raw_purity(state, mask) / (&norm * &norm))
}

/// Purities of every subset, indexed by bitmask.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuritySet {
    pub n_parties: usize,
    pub values: Vec<Rat>,
}

impl PuritySet {
    pub fn get(&self, subset: &[usize]) -> Result<&Rat> {
        Ok(&self.values[mask_from_subset(self.n_parties, subset)? as usize])
    }
}

pub fn purities(state: &PureState, config: &OracleConfig) -> Result<PuritySet> {
    state.check_capacity(config)?;
    let n = state.n_parties();
    let norm = state.norm_sqr();
    let norm4 = &norm * &norm;
    let values = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| raw_purity(state, mask) / &norm4)
        .collect();
    Ok(PuritySet {
        n_parties: n,
        values,
    })
}

/// Every `k`-party reduction is maximally mixed.
pub fn is_k_uniform(state: &PureState, k: usize, config: &OracleConfig) -> Result<bool> {
    state.check_capacity(config)?;
    let n = state.n_parties();
    if k > n / 2 {
        return Err(Error::range("k", k, format!("0..={}", n / 2)));
    }
    let norm = state.norm_sqr();
    let norm4 = &norm * &norm;
    let masks: Vec<u64> = (0..1u64 << n)
        .filter(|m| m.count_ones() as usize == k)
        .collect();
    Ok(masks.par_iter().all(|&mask| {
        let dim = state.profile.subset_dim(&subset_from_mask(n, mask));
        raw_purity(state, mask) / &norm4 == Rat::new(BigInt::one(), dim)
    }))
}

fn require_homogeneous(state: &PureState) -> Result<u32> {
    if !state.profile.is_homogeneous() {
        return Err(Error::NotApplicable(
            "weight enumerators need equal local dimensions".into(),
        ));
    }
    Ok(state.profile.dims()[0])
}

/// `a_j` from purities by inclusion–exclusion over subsets.
pub fn direct_enumerator(state: &PureState, config: &OracleConfig) -> Result<WeightEnumerator> {
    let d = require_homogeneous(state)?;
    let p = purities(state, config)?;
    let n = state.n_parties();
    // f(U) = d^{|U|} Tr ρ_U², then Möbius inversion over the subset lattice
    let mut f: Vec<Rat> = p
        .values
        .into_iter()
        .enumerate()
        .map(|(mask, v)| v * Rat::from_integer(crate::exact::ipow(d as i64, mask.count_ones())))
        .collect();
    for bit in 0..n {
        for mask in 0..f.len() {
            if mask >> bit & 1 == 1 {
                let lower = f[mask ^ (1 << bit)].clone();
                f[mask] -= lower;
            }
        }
    }
    let mut a = vec![Rat::zero(); n + 1];
    for (mask, v) in f.into_iter().enumerate() {
        a[mask.count_ones() as usize] += v;
    }
    WeightEnumerator::new(n, d, a)
}

/// `s_j = Σ_{|T|=j} Σ_S (-1)^{|S∩T^c|} P(S)` for purities `P` indexed by
/// bitmask. The inner sum is a Walsh–Hadamard transform.
pub fn shadow_from_purities(n: usize, purities: &[Rat]) -> Result<Vec<Rat>> {
    if purities.len() != 1 << n {
        return Err(Error::Invalid(format!(
            "expected {} purities, got {}",
            1usize << n,
            purities.len()
        )));
    }
    let mut w = purities.to_vec();
    let mut h = 1;
    while h < w.len() {
        for block in (0..w.len()).step_by(2 * h) {
            for i in block..block + h {
                let (x, y) = (w[i].clone(), w[i + h].clone());
                w[i] = &x + &y;
                w[i + h] = x - y;
            }
        }
        h *= 2;
    }
    let full = (1usize << n) - 1;
    let mut s = vec![Rat::zero(); n + 1];
    for (t, v) in w.into_iter().enumerate() {
        // w[X] pairs with T = complement of X
        s[(full ^ t).count_ones() as usize] += v;
    }
    Ok(s)
}

/// Shadow coefficients straight from the purities.
pub fn direct_shadow(state: &PureState, config: &OracleConfig) -> Result<ShadowEnumerator> {
    let d = require_homogeneous(state)?;
    let n = state.n_parties();
    if n > config.shadow_max_n {
        return Err(Error::Capacity {
            what: "party count for the shadow sum",
            needed: n as u128,
            cap: config.shadow_max_n as u128,
        });
    }
    let p = purities(state, config)?;
    ShadowEnumerator::new(n, d, shadow_from_purities(n, &p.values)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn cfg() -> OracleConfig {
        OracleConfig::default()
    }

    fn bell() -> PureState {
        PureState::from_real(vec![2, 2], &[(&[0, 0], 1), (&[1, 1], 1)]).unwrap()
    }

    fn ghz3() -> PureState {
        PureState::from_real(vec![2, 2, 2], &[(&[0, 0, 0], 1), (&[1, 1, 1], 1)]).unwrap()
    }

    fn product00() -> PureState {
        PureState::from_real(vec![2, 2], &[(&[0, 0], 1)]).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| rat(x, 1)).collect()
    }

    #[test]
    fn purity_examples() {
        assert_eq!(purity(&bell(), &[0], &cfg()).unwrap(), rat(1, 2));
        assert_eq!(purity(&product00(), &[0], &cfg()).unwrap(), rat(1, 1));
        assert_eq!(purity(&ghz3(), &[0, 1], &cfg()).unwrap(), rat(1, 2));
        assert!(purity(&ghz3(), &[5], &cfg()).is_err());
    }

    #[test]
    fn uniformity_examples() {
        assert!(is_k_uniform(&bell(), 1, &cfg()).unwrap());
        assert!(is_k_uniform(&ghz3(), 1, &cfg()).unwrap());
        assert!(!is_k_uniform(&product00(), 1, &cfg()).unwrap());
        assert!(is_k_uniform(&bell(), 2, &cfg()).is_err());
    }

    #[test]
    fn enumerator_examples() {
        assert_eq!(
            direct_enumerator(&bell(), &cfg()).unwrap().coeffs(),
            ints(&[1, 0, 3])
        );
        assert_eq!(
            direct_enumerator(&ghz3(), &cfg()).unwrap().coeffs(),
            ints(&[1, 0, 3, 4])
        );
        assert_eq!(
            direct_enumerator(&product00(), &cfg()).unwrap().coeffs(),
            ints(&[1, 2, 1])
        );
        assert_eq!(
            direct_shadow(&bell(), &cfg()).unwrap().coeffs(),
            ints(&[1, 0, 3])
        );
        assert_eq!(
            direct_shadow(&ghz3(), &cfg()).unwrap().coeffs(),
            ints(&[0, 3, 0, 5])
        );
    }

    #[test]
    fn walsh_hadamard_matches_double_sum() {
        let n = 4;
        let p: Vec<Rat> = (0..16).map(|m| rat(m * m - 3 * m + 1, m + 2)).collect();
        let mut naive = vec![Rat::zero(); n + 1];
        for t in 0..16usize {
            let tc = 15 ^ t;
            for (s, v) in p.iter().enumerate() {
                if (s & tc).count_ones() % 2 == 1 {
                    naive[t.count_ones() as usize] -= v;
                } else {
                    naive[t.count_ones() as usize] += v;
                }
            }
        }
        assert_eq!(shadow_from_purities(n, &p).unwrap(), naive);
        assert!(shadow_from_purities(3, &p).is_err());
    }

    #[test]
    fn caps_and_validation() {
        let small = OracleConfig {
            cap_dim: 4,
            shadow_max_n: 2,
        };
        assert!(matches!(
            purity(&ghz3(), &[0], &small),
            Err(Error::Capacity { .. })
        ));
        let shadow_cap = OracleConfig {
            cap_dim: 4096,
            shadow_max_n: 2,
        };
        assert!(matches!(
            direct_shadow(&ghz3(), &shadow_cap),
            Err(Error::Capacity { .. })
        ));
        assert!(PureState::from_real(vec![2, 2], &[(&[0, 2], 1)]).is_err());
        assert!(PureState::from_real(vec![2, 2], &[(&[0], 1)]).is_err());
        assert!(PureState::from_real(vec![2, 2], &[(&[0, 0], 1), (&[0, 0], -1)]).is_err());
        let mixed = PureState::from_real(vec![2, 3], &[(&[0, 0], 1), (&[1, 1], 1)]).unwrap();
        assert!(matches!(
            direct_enumerator(&mixed, &cfg()),
            Err(Error::NotApplicable(_))
        ));
        assert_eq!(purity(&mixed, &[1], &cfg()).unwrap(), rat(1, 2));
    }

    #[test]
    fn unnormalized_amplitudes() {
        let s = PureState::from_real(vec![2, 2], &[(&[0, 0], 2), (&[1, 1], 1)]).unwrap();
        // eigenvalues 4/5, 1/5
        assert_eq!(purity(&s, &[0], &cfg()).unwrap(), rat(17, 25));
    }

    #[test]
    fn state_file_round_trip() {
        let text = r#"{"dims":[2,2],"amps":[{"ket":[0,0],"re":"1/1","im":"0/1"},
                      {"ket":[1,1],"re":"0","im":"1/1"}]}"#;
        let s = PureState::from_json(text).unwrap();
        assert_eq!(PureState::from_json(&s.to_json()).unwrap(), s);
        assert_eq!(purity(&s, &[1], &cfg()).unwrap(), rat(1, 2));
        assert!(PureState::from_json(r#"{"dims":[2,2],"amps":[]}"#).is_err());
        assert!(PureState::from_json("{").is_err());
    }
}
