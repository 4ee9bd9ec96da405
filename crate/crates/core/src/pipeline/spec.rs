use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exactmath::FiniteField;
use crate::jordan::hall_degree_bound;
use crate::rootdata::{
    build_graph, g_dim, nu_map, x_dim, DynkinGraph, Family, GPrimeWeight, IVec, Partition,
    WeightJson,
};

/// Labeling, sign and field conventions baked into every cache key.
pub const CONVENTIONS: &str = "labels=bourbaki-0based;eps=+1 on 2k,-1 on 2k+1;\
moment=p_i q_i=sum_{t(h)=i} eps x_h x_hbar;modulus=F4:111,F8:1101,F9:101,F16:11001,F25:301,F27:1201";

pub const CODE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    Hall,
    Quiver,
    CrossCheck,
}

/// The JSON experiment description.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExperimentSpec {
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<Family>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub xi: Option<WeightJson>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub etas: Vec<WeightJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub mus: Vec<Vec<i64>>,
    #[serde(default)]
    pub q: Vec<u32>,
    #[serde(default)]
    pub holdout: Vec<u32>,
}

/// What a validated spec counts.
#[derive(Clone, Debug)]
pub enum Problem {
    Hall {
        lambda: Partition,
        mus: Vec<Partition>,
    },
    Quiver {
        graph: Arc<DynkinGraph>,
        xi: GPrimeWeight,
        etas: Vec<GPrimeWeight>,
    },
}

impl Problem {
    /// The theorem's degree prediction; rejects specs whose half-sum is not integral.
    pub fn expected_degree(&self) -> Result<usize> {
        match self {
            Problem::Hall { lambda, mus } => hall_degree_bound(lambda, mus),
            Problem::Quiver { xi, etas, .. } => {
                let deltas: Vec<IVec> = etas.iter().map(GPrimeWeight::delta).collect();
                let twice = 2 * g_dim(&deltas) + x_dim(xi) + etas.iter().map(x_dim).sum::<i64>();
                if twice < 0 || twice % 2 != 0 {
                    return Err(Error::InvalidSpec(format!(
                        "degree {twice}/2 is not a nonnegative integer"
                    )));
                }
                Ok((twice / 2) as usize)
            }
        }
    }

    /// A stable, human-readable label.
    pub fn label(&self) -> String {
        match self {
            Problem::Hall { lambda, mus } => {
                let mus: Vec<String> = mus.iter().map(|m| format!("{m:?}")).collect();
                format!("hall lambda={lambda:?} mus=[{}]", mus.join(","))
            }
            Problem::Quiver { graph, xi, etas } => {
                let etas: Vec<String> = etas.iter().map(short_weight).collect();
                format!(
                    "quiver {graph:?} xi={} etas=[{}]",
                    short_weight(xi),
                    etas.join(",")
                )
            }
        }
    }

    /// SHA-256 over the canonical problem JSON and the conventions string.
    pub fn fingerprint(&self) -> String {
        let body = match self {
            Problem::Hall { lambda, mus } => {
                serde_json::json!({"kind": "hall", "lambda": lambda, "mus": mus})
            }
            Problem::Quiver { graph, xi, etas } => serde_json::json!({
                "kind": "quiver",
                "family": graph.family(),
                "rank": graph.rank(),
                "xi": [xi.u().as_slice(), xi.v().as_slice()],
                "etas": etas.iter().map(|e| [e.u().as_slice(), e.v().as_slice()]).collect::<Vec<_>>(),
            }),
        };
        let mut h = Sha256::new();
        h.update(body.to_string().as_bytes());
        h.update(b"\n");
        h.update(CONVENTIONS.as_bytes());
        hex::encode(h.finalize())
    }
}

fn short_weight(w: &GPrimeWeight) -> String {
    format!("d{:?}v{:?}", w.delta().as_slice(), w.v().as_slice())
}

/// A spec after every precondition has been checked.
#[derive(Clone, Debug)]
pub struct Resolved {
    pub kind: Kind,
    /// The counted problem; for a cross-check this is the quiver side.
    pub problem: Problem,
    /// The classical side of a cross-check.
    pub partner: Option<Problem>,
    pub q: Vec<u32>,
    pub holdout: Vec<u32>,
}

impl Resolved {
    pub fn all_q(&self) -> impl Iterator<Item = u32> + '_ {
        self.q.iter().chain(&self.holdout).copied()
    }
}

fn check_qs(q: &[u32], holdout: &[u32]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for &x in q.iter().chain(holdout) {
        FiniteField::from_order(x)
            .map_err(|e| Error::InvalidSpec(format!("unsupported q={x}: {e}")))?;
        if !seen.insert(x) {
            return Err(Error::InvalidSpec(format!("q={x} listed twice")));
        }
    }
    Ok(())
}

fn partition(parts: &[i64]) -> Result<Partition> {
    Partition::new(parts.to_vec())
}

fn check_quiver(xi: &GPrimeWeight, etas: &[GPrimeWeight]) -> Result<()> {
    if etas.is_empty() {
        return Err(Error::InvalidSpec("empty eta list".into()));
    }
    for w in std::iter::once(xi).chain(etas) {
        if !w.is_positive_integrable() {
            return Err(Error::NotPositiveIntegrable);
        }
    }
    let total = xi.delta();
    let parts = etas
        .iter()
        .fold(IVec::zeros(total.len()), |acc, e| &acc + &e.delta());
    if total != parts {
        return Err(Error::SizeMismatch {
            total: format!("{total:?}"),
            parts: format!("{parts:?}"),
        });
    }
    Ok(())
}

fn check_hall(lambda: &Partition, mus: &[Partition]) -> Result<()> {
    if mus.is_empty() {
        return Err(Error::InvalidSpec("empty mu list".into()));
    }
    let parts: usize = mus.iter().map(Partition::size).sum();
    if lambda.size() != parts {
        return Err(Error::SizeMismatch {
            total: lambda.size().to_string(),
            parts: parts.to_string(),
        });
    }
    Ok(())
}

impl ExperimentSpec {
    pub fn hall(lambda: &[i64], mus: &[&[i64]], q: &[u32], holdout: &[u32]) -> ExperimentSpec {
        ExperimentSpec {
            kind: Kind::Hall,
            family: None,
            rank: None,
            xi: None,
            etas: Vec::new(),
            lambda: Some(lambda.to_vec()),
            mus: mus.iter().map(|m| m.to_vec()).collect(),
            q: q.to_vec(),
            holdout: holdout.to_vec(),
        }
    }

    /// A quiver spec from `(d, v)` pairs, converted to `(u, v)`.
    pub fn quiver_dv(
        family: Family,
        rank: usize,
        xi: (&[i64], &[i64]),
        etas: &[(&[i64], &[i64])],
        q: &[u32],
        holdout: &[u32],
    ) -> Result<ExperimentSpec> {
        let graph = Arc::new(build_graph(family, rank)?);
        let w = |(d, v): (&[i64], &[i64])| -> Result<WeightJson> {
            let w = crate::rootdata::type_from_dv(&graph, &IVec(d.to_vec()), &IVec(v.to_vec()))?;
            Ok(WeightJson {
                family: None,
                rank: None,
                u: w.u().0.clone(),
                v: w.v().0.clone(),
            })
        };
        Ok(ExperimentSpec {
            kind: Kind::Quiver,
            family: Some(family),
            rank: Some(rank),
            xi: Some(w(xi)?),
            etas: etas.iter().map(|&e| w(e)).collect::<Result<_>>()?,
            lambda: None,
            mus: Vec::new(),
            q: q.to_vec(),
            holdout: holdout.to_vec(),
        })
    }

    pub fn parse(json: &str) -> Result<ExperimentSpec> {
        serde_json::from_str(json).map_err(|e| Error::InvalidSpec(e.to_string()))
    }

    /// Checks every precondition, including the degree parity, before any counting.
    pub fn resolve(&self) -> Result<Resolved> {
        check_qs(&self.q, &self.holdout)?;
        let (problem, partner) = match self.kind {
            Kind::Hall => {
                let lambda = partition(self.lambda.as_deref().ok_or_else(|| missing("lambda"))?)?;
                let mus = self
                    .mus
                    .iter()
                    .map(|m| partition(m))
                    .collect::<Result<Vec<_>>>()?;
                check_hall(&lambda, &mus)?;
                (Problem::Hall { lambda, mus }, None)
            }
            Kind::Quiver | Kind::CrossCheck => {
                let family = match (self.kind, self.family) {
                    (_, Some(f)) => f,
                    (Kind::CrossCheck, None) => Family::A,
                    _ => return Err(missing("family")),
                };
                let rank = self.rank.ok_or_else(|| missing("rank"))?;
                let graph = Arc::new(build_graph(family, rank)?);
                let xi = self
                    .xi
                    .as_ref()
                    .ok_or_else(|| missing("xi"))?
                    .resolve(&graph)?;
                let etas = self
                    .etas
                    .iter()
                    .map(|e| e.resolve(&graph))
                    .collect::<Result<Vec<_>>>()?;
                check_quiver(&xi, &etas)?;
                let partner = if self.kind == Kind::CrossCheck {
                    let lambda = nu_map(&xi)?;
                    let mus = etas.iter().map(nu_map).collect::<Result<Vec<_>>>()?;
                    Some(Problem::Hall { lambda, mus })
                } else {
                    None
                };
                (Problem::Quiver { graph, xi, etas }, partner)
            }
        };
        problem.expected_degree()?;
        Ok(Resolved {
            kind: self.kind,
            problem,
            partner,
            q: self.q.clone(),
            holdout: self.holdout.clone(),
        })
    }
}

fn missing(field: &str) -> Error {
    Error::InvalidSpec(format!("missing field {field:?}"))
}
