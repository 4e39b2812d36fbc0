//! Evaluating the sparse interpolant, plus the difference-operator form of the
//! same interpolant built from separate tensor-product grids.

use crate::basis1d::Zappl1D;
use crate::error::{Error, Result};
use crate::index_set::SimplexIndexSet;
use crate::transform::{check_axes, hierarchize, CoeffVector, MultCounter, ValueVector};

fn check_point(axes: &[Zappl1D], x: &[f64]) -> Result<()> {
    if x.len() != axes.len() {
        return Err(Error::DimensionMismatch {
            expected: axes.len(),
            got: x.len(),
        });
    }
    for (k, (&xk, z)) in x.iter().zip(axes).enumerate() {
        let (lo, hi) = z.family().domain();
        if !(xk >= lo && xk <= hi) {
            return Err(Error::OutsideDomain {
                axis: k,
                value: xk,
                lo,
                hi,
            });
        }
    }
    Ok(())
}

/// `sum_i C_i prod_k zphi_(i_k)(x_k)` over the simplex.
#[derive(Clone, Debug)]
pub struct Interpolant {
    coeffs: CoeffVector,
    axes: Vec<Zappl1D>,
    set: SimplexIndexSet,
}

impl Interpolant {
    pub fn new(coeffs: CoeffVector, axes: Vec<Zappl1D>, set: SimplexIndexSet) -> Result<Self> {
        check_axes(&axes, set.dim(), set.budget())?;
        if coeffs.len() != set.len() {
            return Err(Error::LengthMismatch {
                expected: set.len(),
                got: coeffs.len(),
            });
        }
        Ok(Self { coeffs, axes, set })
    }

    /// Hierarchizes grid values and wraps the result.
    pub fn fit(
        values: &ValueVector,
        axes: Vec<Zappl1D>,
        set: SimplexIndexSet,
        counter: Option<&mut MultCounter>,
    ) -> Result<Self> {
        let coeffs = hierarchize(values, &axes, &set, counter)?;
        Self::new(coeffs, axes, set)
    }

    pub fn coeffs(&self) -> &CoeffVector {
        &self.coeffs
    }

    pub fn axes(&self) -> &[Zappl1D] {
        &self.axes
    }

    pub fn set(&self) -> &SimplexIndexSet {
        &self.set
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        check_point(&self.axes, x)?;
        let n = self.set.budget() + 1;
        // 1-D values, computed once per call
        let mut table = vec![0.0; n * x.len()];
        for (k, (z, &xk)) in self.axes.iter().zip(x).enumerate() {
            z.eval_all(xk, &mut table[k * n..(k + 1) * n]);
        }
        Ok(self
            .set
            .iter()
            .zip(&self.coeffs.0)
            .map(|(idx, c)| {
                idx.iter()
                    .enumerate()
                    .fold(*c, |acc, (k, &i)| acc * table[k * n + i - 1])
            })
            .sum())
    }
}

/// Sparse interpolant written as `sum_l (Delta^l1 x ... x Delta^lD)`, with
/// `Delta^l = U^l - U^(l-1)` and `U^m` the 1-D interpolant on the first `m`
/// nested points. Each difference product expands into `2^D` signed
/// tensor-product interpolants; with cardinal basis functions their
/// coefficients are simply nodal values.
#[derive(Clone, Debug)]
pub struct DeltaBaseline {
    axes: Vec<Zappl1D>,
    set: SimplexIndexSet,
    values: ValueVector,
}

impl DeltaBaseline {
    pub fn new(axes: Vec<Zappl1D>, set: SimplexIndexSet, values: ValueVector) -> Result<Self> {
        check_axes(&axes, set.dim(), set.budget())?;
        if values.len() < set.len() {
            return Err(Error::MissingSample(values.len()));
        }
        if values.len() > set.len() {
            return Err(Error::LengthMismatch {
                expected: set.len(),
                got: values.len(),
            });
        }
        Ok(Self { axes, set, values })
    }

    pub fn eval(&self, x: &[f64]) -> Result<f64> {
        check_point(&self.axes, x)?;
        let d = self.set.dim();
        let n = self.set.budget() + 1;
        // card[k][m][a]: cardinal function of point a on the first m+1 points.
        let card: Vec<Vec<Vec<f64>>> = self
            .axes
            .iter()
            .zip(x)
            .map(|(z, &xk)| {
                (1..=n)
                    .map(|m| {
                        (1..=m)
                            .map(|a| z.lagrange_type_level(m, a, xk))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<_>>()?;

        let mut total = 0.0;
        let mut levels = vec![0usize; d];
        let mut a = vec![0usize; d];
        for l in self.set.iter() {
            for z in 0u32..(1 << d) {
                let mut sign = 1.0;
                let mut dead = false;
                for k in 0..d {
                    let drop = (z >> k) & 1;
                    if drop == 1 {
                        sign = -sign;
                    }
                    if l[k] <= drop as usize {
                        dead = true;
                    }
                    levels[k] = l[k] - drop as usize;
                }
                if dead {
                    continue;
                }
                total += sign * self.tensor_interp(&levels, &card, &mut a)?;
            }
        }
        Ok(total)
    }

    /// `(U^m1 x ... x U^mD) f` at the point encoded in `card`.
    fn tensor_interp(
        &self,
        levels: &[usize],
        card: &[Vec<Vec<f64>>],
        a: &mut [usize],
    ) -> Result<f64> {
        let d = levels.len();
        a.iter_mut().for_each(|v| *v = 1);
        let mut s = 0.0;
        loop {
            let offset = self
                .set
                .rank(a)
                .map_err(|_| Error::MissingSample(usize::MAX))?;
            let w: f64 = (0..d).map(|k| card[k][levels[k] - 1][a[k] - 1]).product();
            s += w * self.values.0[offset];
            // odometer over a <= levels
            let mut k = 0;
            loop {
                if k == d {
                    return Ok(s);
                }
                if a[k] < levels[k] {
                    a[k] += 1;
                    break;
                }
                a[k] = 1;
                k += 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::basis1d::{build_zappl, make_leja_points, BasisFamily, PointSequence};

    fn mono_axis(points: &[f64]) -> Zappl1D {
        let fam = BasisFamily::monomial();
        let pts = PointSequence::user_supplied(points.to_vec(), &fam).unwrap();
        build_zappl(&fam, &pts, points.len()).unwrap()
    }

    fn leja_axis(n: usize) -> Zappl1D {
        let fam = BasisFamily::chebyshev();
        build_zappl(&fam, &make_leja_points(&fam, n, 0.0).unwrap(), n).unwrap()
    }

    #[test]
    fn linear_example() {
        let ax = mono_axis(&[0.0, 1.0]);
        let itp = Interpolant::new(
            CoeffVector(vec![0.0, 1.0, 1.0]),
            vec![ax.clone(), ax],
            SimplexIndexSet::new(2, 1).unwrap(),
        )
        .unwrap();
        assert!((itp.eval(&[0.3, 0.4]).unwrap() - 0.7).abs() < 1e-15);
    }

    #[test]
    fn constant_interpolant() {
        let ax = mono_axis(&[0.0, 1.0, -1.0]);
        let set = SimplexIndexSet::new(3, 2).unwrap();
        let mut c = vec![0.0; set.len()];
        c[0] = -1.75;
        let itp = Interpolant::new(CoeffVector(c), vec![ax; 3], set).unwrap();
        for x in [[0.1, -0.5, 0.9], [-1.0, 1.0, 0.0]] {
            assert_eq!(itp.eval(&x).unwrap(), -1.75);
        }
    }

    #[test]
    fn domain_and_dimension_errors() {
        let ax = leja_axis(3);
        let set = SimplexIndexSet::new(2, 2).unwrap();
        let itp =
            Interpolant::new(CoeffVector(vec![0.0; set.len()]), vec![ax.clone(), ax], set).unwrap();
        assert!(matches!(
            itp.eval(&[0.0, 1.5]),
            Err(Error::OutsideDomain { axis: 1, .. })
        ));
        assert!(matches!(
            itp.eval(&[0.0]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn baseline_one_dim_is_plain_interpolant() {
        let ax = leja_axis(5);
        let set = SimplexIndexSet::new(1, 4).unwrap();
        let vals = ValueVector(vec![0.3, -1.0, 2.0, 0.5, 0.25]);
        let base = DeltaBaseline::new(vec![ax.clone()], set, vals.clone()).unwrap();
        let r = ax.points().points();
        for &x in &[-0.8, 0.05, 0.66] {
            let lagrange: f64 = (0..5)
                .map(|a| {
                    vals.0[a]
                        * (0..5)
                            .filter(|&j| j != a)
                            .map(|j| (x - r[j]) / (r[a] - r[j]))
                            .product::<f64>()
                })
                .sum();
            assert!((base.eval(&[x]).unwrap() - lagrange).abs() < 1e-12);
        }
    }

    #[test]
    fn baseline_budget_zero_is_constant() {
        let ax = leja_axis(1);
        let set = SimplexIndexSet::new(3, 0).unwrap();
        let base = DeltaBaseline::new(vec![ax; 3], set, ValueVector(vec![1.25])).unwrap();
        assert_eq!(base.eval(&[0.2, -0.9, 0.4]).unwrap(), 1.25);
    }

    #[test]
    fn baseline_agrees_with_interpolant() {
        let ax = leja_axis(5);
        let set = SimplexIndexSet::new(3, 4).unwrap();
        let vals = ValueVector(
            (0..set.len())
                .map(|o| ((o * 13 % 7) as f64) * 0.3 - 1.0)
                .collect(),
        );
        let axes = vec![ax; 3];
        let itp = Interpolant::fit(&vals, axes.clone(), set.clone(), None).unwrap();
        let base = DeltaBaseline::new(axes, set, vals).unwrap();
        for t in 0..20 {
            let x = [
                (t as f64 * 0.173).sin(),
                (t as f64 * 0.311).cos(),
                (t as f64 * 0.057 - 0.5).sin(),
            ];
            let (a, b) = (itp.eval(&x).unwrap(), base.eval(&x).unwrap());
            assert!((a - b).abs() < 1e-9 * b.abs().max(1.0), "{a} vs {b}");
        }
    }

    #[test]
    fn baseline_missing_samples() {
        let ax = leja_axis(3);
        let set = SimplexIndexSet::new(2, 2).unwrap();
        let r = DeltaBaseline::new(vec![ax.clone(), ax], set, ValueVector(vec![0.0; 4]));
        assert!(matches!(r, Err(Error::MissingSample(_))));
    }
}
