//! Witness certificates: an explicit word in `F_m` that is not in `[G, G]`.

use num_traits::{ToPrimitive, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::{iterate, CanonicalKernel, PVector};
use crate::error::{Error, Result};
use crate::magnus::{in_lcs, lcs_weight, Weight};
use crate::stallings::{KernelMap, SchreierSystem, SubgroupGraph};
use crate::word::{omega, Alphabet, Word};

/// `"fglab <version>"`, recorded in every certificate.
pub const TOOL: &str = concat!("fglab ", env!("CARGO_PKG_VERSION"));

/// Magnus weight as recorded in a certificate. `value` is the exact weight,
/// or `"at_least"` when the expansion vanished up to `cap`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    pub cap: usize,
    #[serde(serialize_with = "ser_value", deserialize_with = "de_value")]
    pub value: Option<usize>,
}

fn ser_value<S: Serializer>(v: &Option<usize>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(k) => s.serialize_u64(*k as u64),
        None => s.serialize_str("at_least"),
    }
}

fn de_value<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<usize>, D::Error> {
    match serde_json::Value::deserialize(d)? {
        serde_json::Value::Number(n) => n
            .as_u64()
            .map(|k| Some(k as usize))
            .ok_or_else(|| de::Error::custom("weight must be a nonnegative integer")),
        serde_json::Value::String(s) if s == "at_least" => Ok(None),
        other => Err(de::Error::custom(format!("unexpected weight value {other}"))),
    }
}

impl WeightReport {
    pub fn weight(&self) -> Weight {
        match self.value {
            Some(k) => Weight::Exact(k),
            None => Weight::AtLeast(self.cap + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdicts {
    #[serde(rename = "in_Fm")]
    pub in_fm: bool,
    #[serde(rename = "in_G2")]
    pub in_g2: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub d: u64,
    pub m: usize,
    pub witness: String,
    pub p_vector: Vec<i64>,
    pub a_sum: i64,
    pub lcs_weight: WeightReport,
    pub basis: Vec<String>,
    pub transversal: Vec<String>,
    pub verdicts: Verdicts,
    pub tool: String,
}

fn small(x: &num_bigint::BigInt) -> Result<i64> {
    x.to_i64()
        .ok_or_else(|| Error::InvalidArgument(format!("exponent sum {x} does not fit in 64 bits")))
}

/// Issues the certificate that `ω_{m−2} ∈ F_m \ G_2` for the index-`d`
/// kernel. The Magnus expansion is truncated at `cap` (default `m`, enough
/// to certify the exact weight).
pub fn witness(d: u64, m: usize, cap: Option<usize>) -> Result<WitnessCertificate> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!(
            "m must be at least 2 (G_1 = G), got {m}"
        )));
    }
    let cap = cap.unwrap_or(m);
    if cap < m {
        return Err(Error::InvalidArgument(format!("magnus cap {cap} is below m = {m}")));
    }
    let kernel = CanonicalKernel::new(d)?;
    let w = omega(m - 2);
    let report = kernel.p_vector(&w)?;
    let weight = lcs_weight(&w, cap)?;
    let in_fm = weight.reaches(m);
    let in_g2 = report.p.is_zero() && report.a_sum.is_zero();
    if !in_fm || in_g2 {
        return Err(Error::Verification(format!(
            "d = {d}, m = {m}: weight {weight}, p-vector {}",
            report.p
        )));
    }
    let value = match weight {
        Weight::Exact(k) => Some(k),
        Weight::AtLeast(_) => None,
        Weight::Identity => unreachable!("omega words are nontrivial"),
    };
    Ok(WitnessCertificate {
        d,
        m,
        witness: w.to_string(),
        p_vector: report.p.0.iter().map(small).collect::<Result<_>>()?,
        a_sum: small(&report.a_sum)?,
        lcs_weight: WeightReport { cap, value },
        basis: kernel.basis().words().iter().map(ToString::to_string).collect(),
        transversal: kernel
            .system()
            .transversal
            .representatives()
            .iter()
            .map(ToString::to_string)
            .collect(),
        verdicts: Verdicts { in_fm, in_g2 },
        tool: TOOL.to_string(),
    })
}

impl WitnessCertificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    /// Re-derives every claim without going through [`witness`]: parses the
    /// witness, checks it is `ω_{m−2}`, recomputes Magnus membership at cap
    /// `m + 1`, rebuilds the kernel's Schreier system from its recorded
    /// transversal shape, and compares the `P`-vector against the matrix
    /// power `A^{m−2} v_0`.
    pub fn verify(&self) -> Result<()> {
        let fail = |what: String| Err(Error::Verification(format!("d = {}, m = {}: {what}", self.d, self.m)));
        if self.m < 2 {
            return fail("m below 2".into());
        }
        let xy = Alphabet::xy();
        let w = Word::parse(&self.witness, &xy)?;
        if w != omega(self.m - 2) {
            return fail("witness is not the expected left-normed commutator".into());
        }
        if !in_lcs(&w, self.m, self.m + 1)? {
            return fail("witness is not in F_m".into());
        }

        let graph = SubgroupGraph::kernel(&KernelMap::canonical(self.d)?)?;
        let system = SchreierSystem::new(graph, Some(0))?;
        let reps: Vec<String> = system
            .transversal
            .representatives()
            .iter()
            .map(ToString::to_string)
            .collect();
        let basis: Vec<String> = system.basis.words().iter().map(ToString::to_string).collect();
        if reps != self.transversal || basis != self.basis {
            return fail("recorded transversal or basis does not match".into());
        }
        if system.in_derived_subgroup(&w)? {
            return fail("witness lies in G_2".into());
        }
        let expected = iterate(self.d, (self.m - 2) as u64)?;
        if PVector::from_i64(&self.p_vector) != expected || self.a_sum != 0 {
            return fail(format!(
                "recorded p-vector {:?} differs from A^n v_0 = {expected}",
                self.p_vector
            ));
        }
        if !self.verdicts.in_fm || self.verdicts.in_g2 {
            return fail("verdicts do not certify the claim".into());
        }
        if let Some(k) = self.lcs_weight.value {
            if k < self.m {
                return fail(format!("recorded weight {k} is below m"));
            }
        }
        Ok(())
    }
}
