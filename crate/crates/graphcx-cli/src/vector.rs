//! Reading serialized vectors, dispatching on the header word.

use std::fmt;

use graphcx::cohomology::{AmbientVec, ComplexKind, Key};
use graphcx::complexes::{
    conv_bracket, conv_diff, conv_mus, fgc_bracket, fgc_diff, orbit_bracket, orbit_diff, tw_diff_gra, ConvElem,
};
use graphcx::gra::{fgc_degree, gra_degree, BiVec, FgcVec, GraVec};
use graphcx::ger::GerVec;
use graphcx::qlinalg::{primitive_integer_vector, Rational};

use crate::error::CliError;

/// Any serialized vector the tool reads or writes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Vector {
    Fgc(FgcVec),
    Gra(GraVec),
    Conv(ConvElem),
    Bi(BiVec),
    Ger(GerVec),
}

impl Vector {
    pub fn parse(text: &str) -> Result<Vector, CliError> {
        let head = text.lines().map(str::trim).find(|l| !l.is_empty()).ok_or_else(|| CliError::Parse("empty input".into()))?;
        let tag = head.split_whitespace().next().unwrap_or_default();
        Ok(match tag {
            "fgcvec" => Vector::Fgc(text.parse()?),
            "gravec" => Vector::Gra(text.parse()?),
            "conv" => Vector::Conv(text.parse()?),
            "bivec" => Vector::Bi(text.parse()?),
            "gervec" => Vector::Ger(text.parse()?),
            _ => return Err(CliError::Parse(format!("unknown vector header {head:?}"))),
        })
    }

    fn kind_name(&self) -> &'static str {
        match self {
            Vector::Fgc(_) => "fgcvec",
            Vector::Gra(_) => "gravec",
            Vector::Conv(_) => "conv",
            Vector::Bi(_) => "bivec",
            Vector::Ger(_) => "gervec",
        }
    }

    /// The differential of the complex the vector lives in.
    pub fn diff(&self) -> Result<Vector, CliError> {
        Ok(match self {
            Vector::Fgc(x) => Vector::Fgc(fgc_diff(x)),
            Vector::Gra(x) => Vector::Gra(tw_diff_gra(x)),
            Vector::Conv(x) => Vector::Conv(conv_diff(x)),
            Vector::Bi(x) => Vector::Bi(orbit_diff(x, &conv_mus())),
            Vector::Ger(_) => return Err(CliError::Profile("a gervec carries no differential".into())),
        })
    }

    pub fn bracket(&self, other: &Vector) -> Result<Vector, CliError> {
        Ok(match (self, other) {
            (Vector::Fgc(x), Vector::Fgc(y)) => Vector::Fgc(fgc_bracket(x, y)),
            (Vector::Bi(x), Vector::Bi(y)) => Vector::Bi(orbit_bracket(x, y)),
            (Vector::Conv(x), Vector::Conv(y)) if x.kind() == y.kind() => Vector::Conv(conv_bracket(x, y)),
            (a, b) => {
                return Err(CliError::Profile(format!("no bracket between a {} and a {}", a.kind_name(), b.kind_name())))
            }
        })
    }
}

impl fmt::Display for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vector::Fgc(x) => write!(f, "{x}"),
            Vector::Gra(x) => write!(f, "{x}"),
            Vector::Conv(x) => write!(f, "{x}"),
            Vector::Bi(x) => write!(f, "{x}"),
            Vector::Ger(x) => write!(f, "{x}"),
        }
    }
}

/// Converts a slice vector in orbit coordinates to the serialized vector of
/// its complex, rescaled to a primitive integer vector.
pub fn from_ambient(kind: ComplexKind, degree: i64, v: &AmbientVec) -> Result<Vector, CliError> {
    let coeffs: Vec<Rational> = v.values().cloned().collect();
    let coeffs = primitive_integer_vector(&coeffs);
    let terms = v.keys().zip(coeffs);
    let bad = |k: &Key| CliError::Consistency(format!("key {k} does not belong to {kind}"));
    Ok(match kind {
        ComplexKind::TwGra(n) => {
            let mut x: Option<GraVec> = None;
            for (k, c) in terms {
                let Key::Graph(g) = k else { return Err(bad(k)) };
                let x = x.get_or_insert_with(|| GraVec::zero(g.r_neutral(), n, gra_degree(g.r_neutral(), g.num_edges())));
                x.add_orbit(g, &c);
            }
            Vector::Gra(x.unwrap_or_else(|| GraVec::zero(0, n, degree)))
        }
        k if k.is_conv() => {
            let mut x = BiVec::zero(degree);
            for (k, c) in terms {
                let Key::Bi(g) = k else { return Err(bad(k)) };
                x.add_orbit(g, &c);
            }
            Vector::Bi(x)
        }
        _ => {
            let mut x = FgcVec::zero(degree);
            for (k, c) in terms {
                let Key::Graph(g) = k else { return Err(bad(k)) };
                if fgc_degree(g.num_vertices(), g.num_edges()) != degree {
                    return Err(bad(k));
                }
                x.add_orbit(g, &c);
            }
            Vector::Fgc(x)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use graphcx::complexes::{conv_mc, conv_to_bivec, fgc_mc, ConvKind};
    use graphcx::ger::{GerMono, Grading};
    use graphcx::gra::av;
    use graphcx::graphs::cable;

    #[test]
    fn round_trip_every_kind() {
        let xs = [
            Vector::Fgc(av(&cable(4))),
            Vector::Conv(conv_mc(ConvKind::Ger)),
            Vector::Conv(conv_mc(ConvKind::Gra)),
            Vector::Bi(conv_to_bivec(&conv_mc(ConvKind::Gra))),
            Vector::Ger(GerVec::basis_element("{1,2}".parse::<GerMono>().unwrap(), Grading::Ger)),
        ];
        for x in xs {
            assert_eq!(Vector::parse(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn dispatch_errors() {
        assert!(matches!(Vector::parse("matrix 2 2"), Err(CliError::Parse(_))));
        let e = Vector::Fgc(fgc_mc());
        let c = Vector::Conv(conv_mc(ConvKind::Ger));
        assert!(matches!(e.bracket(&c), Err(CliError::Profile(_))));
        assert!(matches!(Vector::Conv(conv_mc(ConvKind::Gra)).bracket(&c), Err(CliError::Profile(_))));
    }
}
