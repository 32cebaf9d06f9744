use num_complex::Complex64;

use crate::bases::{self, exotic_d};
use crate::error::{Error, Result};
use crate::family::{Family, FamilySpec, Vertex8Normalization};
use crate::tensor::{c, re, ComplexMatrix};

/// `e^{∓2η} = (1 ∓ (1 − 4d²)^{1/2})/(1 ± (1 − 4d²)^{1/2})` for `sign = ±1`.
pub fn exotic_exp_2eta(n: usize, eps: i32, q: f64, sign: i32) -> f64 {
    let d = exotic_d(n, eps, q);
    let r = (1.0 - 4.0 * d * d).sqrt();
    let s = sign.signum() as f64;
    (1.0 - s * r) / (1.0 + s * r)
}

/// `lim_{θ → sign·∞} R̂(θ)` assembled from closed forms.
pub fn limit(spec: &FamilySpec, sign: i32) -> Result<ComplexMatrix> {
    if sign != 1 && sign != -1 {
        return Err(Error::InvalidParameters(format!(
            "sign must be ±1, got {sign}"
        )));
    }
    spec.validate()?;
    let s = sign as f64;
    let q = spec.q;
    let nf = spec.n as f64;
    let basis = bases::basis_for(spec)?;
    let coeffs: Vec<Complex64> = match spec.family {
        Family::GLq => vec![re(-q.powf(-2.0 * s)), re(1.0)],
        Family::SOq => vec![re(q.powf(-s * nf)), re(-q.powf(-2.0 * s)), re(1.0)],
        Family::Spq => vec![re(-q.powf(-s * (nf + 2.0))), re(-q.powf(-2.0 * s)), re(1.0)],
        Family::ExoticSO | Family::ExoticSp => {
            vec![
                re(-exotic_exp_2eta(spec.n, spec.epsilon(), q, sign)),
                re(1.0),
            ]
        }
        Family::S03 => {
            let w = c(1.0, s) / 2f64.sqrt();
            vec![w, w.conj()]
        }
        Family::S14 => {
            if !(q > 0.0) {
                return Err(Error::Unsupported(
                    "S14 limit needs the default v with q > 0".into(),
                ));
            }
            vec![re(1.0), re(q.powf(s)), re(-q.powf(s))]
        }
        Family::AffineSl2 => vec![re(1.0), re(1.0), re(-q.powf(-2.0 * s))],
        Family::Vertex6 => {
            let e = (-s * spec.gamma).exp();
            vec![re(1.0), re(e), re(-e)]
        }
        Family::Vertex8 => {
            // a' = 1, b' = q^{∓1}, c' = d' = 0; raw weights carry q^{∓2k} on top.
            let scale = match spec.normalization {
                Vertex8Normalization::None => q.powf(-2.0 * s * spec.truncation as f64),
                _ => 1.0,
            };
            let b = q.powf(-s);
            vec![re(scale), re(scale), re(scale * b), re(-scale * b)]
        }
        Family::Nested => {
            return Err(Error::Unsupported(
                "no closed-form limit for the nested basis".into(),
            ))
        }
    };
    Ok(basis.combine(&coeffs))
}
