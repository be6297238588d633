//! Dense least squares via Householder QR at arbitrary precision.

use rug::Float;

use super::HpReal;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct LeastSquares {
    pub coefficients: Vec<HpReal>,
    /// Residual sum of squares.
    pub rss: HpReal,
    /// Diagonal of (AᵀA)⁻¹, for standard errors.
    pub inverse_gram_diag: Vec<HpReal>,
}

/// Minimizes ‖A c − y‖₂ for a tall matrix `a` given as rows.
pub fn least_squares(a: &[Vec<HpReal>], y: &[HpReal], prec: u32) -> Result<LeastSquares> {
    let m = a.len();
    let n = a.first().map_or(0, |r| r.len());
    if n == 0 || m < n {
        return Err(Error::SingularFit(format!(
            "{m} equations for {n} unknowns"
        )));
    }
    if y.len() != m || a.iter().any(|r| r.len() != n) {
        return Err(Error::InvalidArgument("ragged least-squares system".into()));
    }
    let wp = prec + 32;
    // column-major working copy
    let mut cols: Vec<Vec<Float>> = (0..n)
        .map(|j| (0..m).map(|i| Float::with_val(wp, &a[i][j])).collect())
        .collect();
    let mut rhs: Vec<Float> = y.iter().map(|v| Float::with_val(wp, v)).collect();
    let scale = cols
        .iter()
        .flat_map(|c| c.iter())
        .fold(Float::new(wp), |acc, v| {
            acc.max(&Float::with_val(wp, v.abs_ref()))
        });
    let tiny = Float::with_val(wp, &scale * super::pow2(wp, -(prec as i32) / 2));

    for k in 0..n {
        let mut norm = Float::new(wp);
        for v in &cols[k][k..] {
            norm += Float::with_val(wp, v.square_ref());
        }
        let norm = norm.sqrt();
        if norm <= tiny {
            return Err(Error::SingularFit(format!(
                "column {k} is numerically dependent"
            )));
        }
        let alpha = if cols[k][k] > 0 { -norm } else { norm };
        // v = x - alpha e1
        let mut v: Vec<Float> = cols[k][k..].to_vec();
        v[0] -= &alpha;
        let mut vnorm2 = Float::new(wp);
        for e in &v {
            vnorm2 += Float::with_val(wp, e.square_ref());
        }
        if vnorm2.is_zero() {
            continue;
        }
        let apply = |col: &mut [Float]| {
            let mut dot = Float::new(wp);
            for (c, e) in col.iter().zip(&v) {
                dot += Float::with_val(wp, c * e);
            }
            let f = Float::with_val(wp, &dot * 2u32) / &vnorm2;
            for (c, e) in col.iter_mut().zip(&v) {
                *c -= Float::with_val(wp, e * &f);
            }
        };
        for col in cols.iter_mut().skip(k) {
            apply(&mut col[k..]);
        }
        apply(&mut rhs[k..]);
    }

    // back substitution on R c = Qᵀy
    let mut c = vec![Float::new(wp); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i].clone();
        for j in i + 1..n {
            acc -= Float::with_val(wp, &cols[j][i] * &c[j]);
        }
        c[i] = acc / &cols[i][i];
    }
    let mut rss = Float::new(wp);
    for v in &rhs[n..] {
        rss += Float::with_val(wp, v.square_ref());
    }

    // R⁻¹ (upper triangular), then diag((AᵀA)⁻¹) = row norms² of R⁻¹
    let mut rinv = vec![vec![Float::new(wp); n]; n];
    for j in 0..n {
        rinv[j][j] = Float::with_val(wp, 1) / &cols[j][j];
        for i in (0..j).rev() {
            let mut acc = Float::new(wp);
            for l in i + 1..=j {
                acc += Float::with_val(wp, &cols[l][i] * &rinv[l][j]);
            }
            rinv[i][j] = -acc / &cols[i][i];
        }
    }
    let inverse_gram_diag = (0..n)
        .map(|i| {
            let mut s = Float::new(wp);
            for v in &rinv[i][i..] {
                s += Float::with_val(wp, v.square_ref());
            }
            Float::with_val(prec, s)
        })
        .collect();

    Ok(LeastSquares {
        coefficients: c.into_iter().map(|v| Float::with_val(prec, v)).collect(),
        rss: Float::with_val(prec, rss),
        inverse_gram_diag,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::pow2;

    #[test]
    fn exact_quadratic_recovered() {
        let p = 256;
        let xs: Vec<f64> = (0..8).map(|i| i as f64 * 0.5).collect();
        let a: Vec<Vec<Float>> = xs
            .iter()
            .map(|&x| {
                vec![
                    Float::with_val(p, 1),
                    Float::with_val(p, x),
                    Float::with_val(p, x * x),
                ]
            })
            .collect();
        let y: Vec<Float> = xs
            .iter()
            .map(|&x| Float::with_val(p, 3.0 - 2.0 * x + 0.25 * x * x))
            .collect();
        let fit = least_squares(&a, &y, p).unwrap();
        let expect = [3.0, -2.0, 0.25];
        for (c, e) in fit.coefficients.iter().zip(expect) {
            assert!(Float::with_val(p, c - e).abs() < pow2(p, -200));
        }
        assert!(fit.rss < pow2(p, -400));
    }

    #[test]
    fn inverse_gram_matches_simple_regression() {
        // for A = [1, x], (AᵀA)⁻¹_00 = Σx² / (n Σx² - (Σx)²)
        let p = 128;
        let xs = [1.0, 2.0, 4.0, 7.0];
        let a: Vec<Vec<Float>> = xs
            .iter()
            .map(|&x| vec![Float::with_val(p, 1), Float::with_val(p, x)])
            .collect();
        let y: Vec<Float> = xs.iter().map(|&x| Float::with_val(p, x)).collect();
        let fit = least_squares(&a, &y, p).unwrap();
        let sx: f64 = xs.iter().sum();
        let sxx: f64 = xs.iter().map(|x| x * x).sum();
        let expect = sxx / (4.0 * sxx - sx * sx);
        assert!((fit.inverse_gram_diag[0].to_f64() - expect).abs() < 1e-12);
    }

    #[test]
    fn underdetermined_rejected() {
        let p = 64;
        let a = vec![vec![Float::with_val(p, 1), Float::with_val(p, 2)]];
        let y = vec![Float::with_val(p, 1)];
        assert!(matches!(
            least_squares(&a, &y, p),
            Err(Error::SingularFit(_))
        ));
    }

    #[test]
    fn dependent_columns_rejected() {
        let p = 64;
        let a: Vec<Vec<Float>> = (0..4)
            .map(|i| vec![Float::with_val(p, i), Float::with_val(p, 2 * i)])
            .collect();
        let y: Vec<Float> = (0..4).map(|i| Float::with_val(p, i)).collect();
        assert!(matches!(
            least_squares(&a, &y, p),
            Err(Error::SingularFit(_))
        ));
    }
}
