//! Fixed-point data for spheres, their products and complex projective
//! spaces, plus the JSON file format for user-supplied data.

use serde::{Deserialize, Serialize};

use crate::classes::{eval_class, CharClass, OrientedRep};
use crate::localization::{ChartFrame, FixedPoint, TorusManifold};
use crate::Error;

/// Builders refuse ranks above this; `Π e_j` grows quickly with the rank.
pub const MAX_BUILTIN_RANK: usize = 6;

fn check_rank(n: usize) -> Result<(), Error> {
    if n == 0 || n > MAX_BUILTIN_RANK {
        return Err(Error::InvalidManifold(format!(
            "rank {n} outside 1..={MAX_BUILTIN_RANK}"
        )));
    }
    Ok(())
}

/// `S^{2k}` with the standard `T^k ≤ SO(2k)` action, fixing `0` and `∞`.
pub fn sphere(k: usize) -> Result<TorusManifold, Error> {
    check_rank(k)?;
    let std = OrientedRep::standard(k);
    TorusManifold::new(
        format!("S^{}", 2 * k),
        k,
        vec![
            FixedPoint::new("0", std.clone()),
            FixedPoint::new("inf", std.reversed()),
        ],
        0,
        Some(1),
    )
}

/// Product action; `B`'s torus variables follow `A`'s.
pub fn product(a: &TorusManifold, b: &TorusManifold) -> Result<TorusManifold, Error> {
    let (na, nb) = (a.rank(), b.rank());
    check_rank(na + nb)?;
    let mut points = Vec::with_capacity(a.fixed_points().len() * b.fixed_points().len());
    for pa in a.fixed_points() {
        for pb in b.fixed_points() {
            let mut weights = Vec::with_capacity(na + nb);
            for w in &pa.rep.weights {
                let mut v = w.clone();
                v.resize(na + nb, 0);
                weights.push(v);
            }
            for w in &pb.rep.weights {
                let mut v = vec![0; na];
                v.extend_from_slice(w);
                weights.push(v);
            }
            points.push(FixedPoint::new(
                format!("({},{})", pa.label, pb.label),
                OrientedRep::new(weights, pa.rep.sign * pb.rep.sign),
            ));
        }
    }
    let nb_points = b.fixed_points().len();
    let m0 = a.m0() * nb_points + b.m0();
    let m1 = b.m1().map(|j| a.m0() * nb_points + j);
    TorusManifold::new(
        format!("{} x {}", a.name(), b.name()),
        na + nb,
        points,
        m0,
        m1,
    )
}

/// `CP^n` with `[z_0 : … : z_n] ↦ [z_0 : ξ_1 z_1 : … : ξ_n z_n]`. At the
/// `i`-th coordinate point the weights are `x_j − x_i` (`j ≠ i`, `x_0 = 0`).
pub fn projective_space(n: usize) -> Result<TorusManifold, Error> {
    check_rank(n)?;
    let coord = |j: usize| -> Vec<i64> {
        let mut v = vec![0; n];
        if j > 0 {
            v[j - 1] = 1;
        }
        v
    };
    let points = (0..=n)
        .map(|i| {
            let weights = (0..=n)
                .filter(|&j| j != i)
                .map(|j| coord(j).iter().zip(coord(i)).map(|(a, b)| a - b).collect())
                .collect();
            let label = (0..=n)
                .map(|j| if j == i { "1" } else { "0" })
                .collect::<Vec<_>>()
                .join(":");
            FixedPoint::new(format!("[{label}]"), OrientedRep::new(weights, 1))
        })
        .collect();
    TorusManifold::new(format!("CP^{n}"), n, points, 0, Some(1))
}

/// Resolves `s<2k>`, `s<2a>xs<2b>` and `cp<n>`.
pub fn builtin(name: &str) -> Result<TorusManifold, Error> {
    let unknown = || Error::InvalidManifold(format!("unknown builtin {name:?}"));
    let sphere_dim = |s: &str| -> Result<usize, Error> {
        let d: usize = s
            .strip_prefix('s')
            .and_then(|d| d.parse().ok())
            .ok_or_else(unknown)?;
        if d == 0 || d % 2 == 1 {
            return Err(unknown());
        }
        Ok(d / 2)
    };
    let lower = name.to_ascii_lowercase();
    if let Some(n) = lower.strip_prefix("cp") {
        let n: usize = n.parse().map_err(|_| unknown())?;
        return projective_space(n);
    }
    if let Some((a, b)) = lower.split_once('x') {
        return product(&sphere(sphere_dim(a)?)?, &sphere(sphere_dim(b)?)?);
    }
    sphere(sphere_dim(&lower)?)
}

/// `Ok` iff every weight at `m0` is nonzero, i.e. `m0` is isolated and the
/// torus maps onto a maximal torus of `SO(2n)`.
pub fn validate_maximal_torus(m: &TorusManifold) -> Result<(), Error> {
    match m.chart_point().rep.zero_weight() {
        Some(weight) => Err(Error::NotMaximal { weight }),
        None => Ok(()),
    }
}

/// The class `r_c` with `r_c` evaluated on the orientation-reversed chart
/// representation equal to `c` restricted to `m1`.
pub fn point_class_transport(m: &TorusManifold, c: &CharClass) -> Result<CharClass, Error> {
    let retained = m.retained_point().ok_or(Error::MissingM1)?;
    if let Some(weight) = retained.rep.zero_weight() {
        return Err(Error::NonIsolatedFixedPoint {
            label: retained.label.clone(),
            weight,
        });
    }
    let restricted = eval_class(c, &retained.rep);
    let frame = ChartFrame::new(&m.chart_point().rep)?;
    match frame.rewrite(&restricted) {
        // the chart identification goes through the reversed representation
        Ok(r) => Ok(r.conjugate()),
        Err(Error::NotInvariant { witness }) => Err(Error::PointClassUnavailable {
            class: c.to_string(),
            reason: format!(
                "{} restricted to {} is {}, not invariant under {}; it cannot be expressed through the classes at {}",
                c,
                retained.label,
                restricted,
                witness,
                m.chart_point().label
            ),
        }),
        Err(e) => Err(e),
    }
}

/// On-disk form of [`TorusManifold`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ManifoldFile {
    pub name: String,
    pub rank: usize,
    pub fixed_points: Vec<FixedPointFile>,
    pub m0: usize,
    pub m1: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedPointFile {
    pub label: String,
    pub weights: Vec<Vec<i64>>,
    pub sign: i8,
}

impl From<&TorusManifold> for ManifoldFile {
    fn from(m: &TorusManifold) -> Self {
        ManifoldFile {
            name: m.name().to_string(),
            rank: m.rank(),
            fixed_points: m
                .fixed_points()
                .iter()
                .map(|fp| FixedPointFile {
                    label: fp.label.clone(),
                    weights: fp.rep.weights.clone(),
                    sign: fp.rep.sign,
                })
                .collect(),
            m0: m.m0(),
            m1: m.m1(),
        }
    }
}

impl TryFrom<ManifoldFile> for TorusManifold {
    type Error = Error;

    fn try_from(f: ManifoldFile) -> Result<Self, Error> {
        let mut points = Vec::with_capacity(f.fixed_points.len());
        for fp in f.fixed_points {
            if fp.sign != 1 && fp.sign != -1 {
                return Err(Error::InvalidManifold(format!(
                    "fixed point {}: sign must be 1 or -1",
                    fp.label
                )));
            }
            points.push(FixedPoint::new(
                fp.label,
                OrientedRep::new(fp.weights, fp.sign),
            ));
        }
        TorusManifold::new(f.name, f.rank, points, f.m0, f.m1)
    }
}

pub fn to_json(m: &TorusManifold) -> String {
    serde_json::to_string_pretty(&ManifoldFile::from(m)).expect("manifold serializes")
}

pub fn from_json(s: &str) -> Result<TorusManifold, Error> {
    let file: ManifoldFile =
        serde_json::from_str(s).map_err(|e| Error::InvalidManifold(e.to_string()))?;
    file.try_into()
}
