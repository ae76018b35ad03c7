//! The full classification record of a Lissajous type.

use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::{dilatation, FriezeWord, Psl2Mat};
use crate::classify::{level_slope_of, type_of, LevelSlope};
use crate::error::{Error, Result};
use crate::lissajous::{
    build_h, build_w_frieze, is_collision_free, normalize, reduce_to_p0, NormalizedType, TypeMN,
};
use crate::surd::{cf_expand, far_endpoint, CfExpansion, QuadSurd};
use crate::syzygy::{omega, syzygy_sequence, SignWord, SyzygySeq};
use crate::words::Slope;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Dilatation {
    pub approx: f64,
    pub exact: QuadSurd,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub input: TypeMN,
    pub normalized: NormalizedType,
    pub collision_free: bool,
    pub p0: TypeMN,
    pub level: u32,
    pub slope: Slope,
    #[serde(rename = "friezeH")]
    pub frieze_h: FriezeWord,
    #[serde(rename = "friezeW")]
    pub frieze_w: FriezeWord,
    pub matrix: Psl2Mat,
    #[serde(serialize_with = "ser_bigint")]
    pub trace: num_bigint::BigInt,
    pub dilatation: Dilatation,
    pub far_endpoint: QuadSurd,
    pub cf: CfExpansion,
    pub omega: SignWord,
    pub syzygy: SyzygySeq,
}

fn ser_bigint<S: serde::Serializer>(
    x: &num_bigint::BigInt,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let n: serde_json::Number = x.to_string().parse().expect("integer literal");
    n.serialize(s)
}

impl Report {
    /// Classifies a type. Collision types give `CollisionType`.
    pub fn for_type(t: TypeMN) -> Result<Report> {
        let nt = normalize(t)?;
        if !is_collision_free(t) {
            return Err(Error::CollisionType { m: t.m, n: t.n });
        }
        let p0 = reduce_to_p0(&nt)?;
        let label = level_slope_of(p0)?;
        let frieze_h = build_h(&nt)?;
        let frieze_w = build_w_frieze(&nt)?;
        let matrix = frieze_w.matrix();
        let dil = dilatation(&matrix)?;
        let far = far_endpoint(&matrix)?;
        Ok(Report {
            input: t,
            normalized: nt,
            collision_free: true,
            p0,
            level: label.level,
            slope: label.slope,
            frieze_h,
            frieze_w,
            trace: matrix.abs_trace(),
            matrix,
            dilatation: Dilatation {
                approx: dil.approx(),
                exact: dil,
            },
            cf: cf_expand(&far),
            far_endpoint: far,
            omega: omega(label)?,
            syzygy: syzygy_sequence(p0, 1)?,
        })
    }

    /// Classifies the primitive type carrying a label.
    pub fn for_label(ls: LevelSlope) -> Result<Report> {
        Self::for_type(type_of(ls)?)
    }

    pub fn label(&self) -> LevelSlope {
        LevelSlope {
            level: self.level,
            slope: self.slope,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }

    /// `key: value` lines carrying the same values as the JSON form.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let json = self.to_json();
        if let serde_json::Value::Object(map) = json {
            for (k, v) in map {
                let rendered = match v {
                    serde_json::Value::String(s) => s,
                    other => other.to_string(),
                };
                let _ = writeln!(out, "{k}: {rendered}");
            }
        }
        out
    }
}
