//! Test functions for fitting and convergence demos.
//!
//! Specs are `name` or `name:param`:
//!
//! | spec               | function                                              |
//! |--------------------|-------------------------------------------------------|
//! | `constant[:c]`     | `c` (default 1)                                       |
//! | `sum`              | `sum_k x_k`                                           |
//! | `product`          | `prod_k x_k`                                          |
//! | `sum-squares`      | `sum_k x_k^2`                                         |
//! | `poly[:deg]`       | fixed pseudo-random polynomial of total degree `deg`  |
//! | `oscillatory[:c]`  | Genz oscillatory `cos(2 pi w + sum_k c_k u_k)`        |
//! | `product-peak[:c]` | Genz product peak `prod_k 1/(c_k^-2 + (u_k - w_k)^2)` |
//!
//! `u_k` is `x_k` mapped from the domain to `[0, 1]`.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::index_set::SimplexIndexSet;

#[derive(Clone, Debug)]
enum Kind {
    Constant(f64),
    Sum,
    Product,
    SumSquares,
    /// exponents (zero-based) with coefficients
    Poly(Vec<(Vec<usize>, f64)>),
    Oscillatory {
        shift: f64,
        c: Vec<f64>,
    },
    ProductPeak {
        c: Vec<f64>,
        w: Vec<f64>,
    },
}

#[derive(Clone, Debug)]
pub struct Builtin {
    kind: Kind,
    dim: usize,
    lo: f64,
    hi: f64,
}

fn param(name: &str, p: Option<&str>, default: f64) -> Result<f64> {
    match p {
        None => Ok(default),
        Some(s) => s
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad parameter {s:?} for {name}"))),
    }
}

impl Builtin {
    pub fn parse(spec: &str, dim: usize, domain: (f64, f64)) -> Result<Self> {
        let (name, p) = match spec.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (spec, None),
        };
        let d = dim as f64;
        let kind = match name {
            "constant" => Kind::Constant(param(name, p, 1.0)?),
            "sum" => Kind::Sum,
            "product" => Kind::Product,
            "sum-squares" => Kind::SumSquares,
            "poly" => {
                let deg = param(name, p, 3.0)?;
                if deg < 0.0 || deg.fract() != 0.0 {
                    return Err(Error::InvalidArgument(format!(
                        "poly degree must be a whole number: {deg}"
                    )));
                }
                let set = SimplexIndexSet::new(dim, deg as usize)?;
                let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
                Kind::Poly(
                    set.iter()
                        .map(|i| {
                            (
                                i.iter().map(|&e| e - 1).collect(),
                                rng.random_range(-1.0..1.0),
                            )
                        })
                        .collect(),
                )
            }
            "oscillatory" => {
                let scale = param(name, p, 4.5)?;
                Kind::Oscillatory {
                    shift: 0.3,
                    c: (0..dim)
                        .map(|k| scale * (k as f64 + 1.0) / (d * (d + 1.0) / 2.0))
                        .collect(),
                }
            }
            "product-peak" => {
                let scale = param(name, p, 2.0)?;
                Kind::ProductPeak {
                    c: vec![scale; dim],
                    w: (0..dim)
                        .map(|k| 0.3 + 0.4 * k as f64 / d.max(1.0))
                        .collect(),
                }
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "unknown builtin function {other:?}"
                )));
            }
        };
        Ok(Self {
            kind,
            dim,
            lo: domain.0,
            hi: domain.1,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        debug_assert_eq!(x.len(), self.dim);
        let unit = |v: f64| (v - self.lo) / (self.hi - self.lo);
        match &self.kind {
            Kind::Constant(c) => *c,
            Kind::Sum => x.iter().sum(),
            Kind::Product => x.iter().product(),
            Kind::SumSquares => x.iter().map(|v| v * v).sum(),
            Kind::Poly(terms) => terms
                .iter()
                .map(|(e, c)| {
                    c * e
                        .iter()
                        .zip(x)
                        .map(|(&p, v)| v.powi(p as i32))
                        .product::<f64>()
                })
                .sum(),
            Kind::Oscillatory { shift, c } => {
                (2.0 * PI * shift + c.iter().zip(x).map(|(c, &v)| c * unit(v)).sum::<f64>()).cos()
            }
            Kind::ProductPeak { c, w } => c
                .iter()
                .zip(w)
                .zip(x)
                .map(|((c, w), &v)| 1.0 / (c.powi(-2) + (unit(v) - w).powi(2)))
                .product(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_builtins() {
        let dom = (-1.0, 1.0);
        assert_eq!(
            Builtin::parse("constant:2.5", 3, dom)
                .unwrap()
                .eval(&[0.1, 0.2, 0.3]),
            2.5
        );
        assert_eq!(
            Builtin::parse("sum", 2, dom).unwrap().eval(&[0.25, 0.5]),
            0.75
        );
        assert_eq!(
            Builtin::parse("product", 2, dom)
                .unwrap()
                .eval(&[0.25, 0.5]),
            0.125
        );
        assert_eq!(
            Builtin::parse("sum-squares", 1, dom).unwrap().eval(&[0.5]),
            0.25
        );
        assert!(Builtin::parse("legendre", 1, dom).is_err());
        assert!(Builtin::parse("poly:1.5", 1, dom).is_err());
    }

    #[test]
    fn genz_families_are_smooth_and_bounded() {
        let dom = (-1.0, 1.0);
        let osc = Builtin::parse("oscillatory", 4, dom).unwrap();
        let peak = Builtin::parse("product-peak", 4, dom).unwrap();
        for t in 0..50 {
            let x: Vec<f64> = (0..4).map(|k| ((t * (k + 3)) as f64 * 0.1).sin()).collect();
            assert!(osc.eval(&x).abs() <= 1.0);
            let p = peak.eval(&x);
            assert!(p > 0.0 && p <= 4.0_f64.powi(4));
        }
    }

    #[test]
    fn poly_is_deterministic() {
        let a = Builtin::parse("poly:3", 2, (-1.0, 1.0)).unwrap();
        let b = Builtin::parse("poly:3", 2, (-1.0, 1.0)).unwrap();
        assert_eq!(a.eval(&[0.3, -0.7]), b.eval(&[0.3, -0.7]));
    }
}
