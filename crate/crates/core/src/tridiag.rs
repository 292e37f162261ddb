//! Eigenvalues of real symmetric tridiagonal matrices by the implicit-shift
//! QL algorithm, together with the first component of each normalized
//! eigenvector (all that Golub-Welsch needs).

/// Relative size below which an off-diagonal entry is treated as zero.
pub const DEFLATION_TOL: f64 = 1e-14;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Eigenpairs of a symmetric tridiagonal matrix, sorted by ascending eigenvalue.
#[derive(Debug, Clone, PartialEq)]
pub struct TridiagEigen {
    pub values: Vec<f64>,
    /// First component of the unit eigenvector belonging to `values[i]`.
    pub first_components: Vec<f64>,
}

/// Diagonalizes the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `offdiag` (`offdiag.len() == diag.len() - 1`).
///
/// Returns `None` when some eigenvalue needs more than 60 QL sweeps.
pub fn symmetric_tridiagonal_eigen(diag: &[f64], offdiag: &[f64]) -> Option<TridiagEigen> {
    let n = diag.len();
    assert!(n == 0 || offdiag.len() + 1 == n, "off-diagonal must have n - 1 entries");
    if n == 0 {
        return Some(TridiagEigen { values: vec![], first_components: vec![] });
    }

    let mut d = diag.to_vec();
    let mut e = offdiag.to_vec();
    e.push(0.0);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= DEFLATION_TOL * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_SWEEPS_PER_EIGENVALUE {
                return None;
            }

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0_f64, 1.0_f64, 0.0_f64);
            let mut deflated_early = false;

            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated_early = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated_early {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut pairs: Vec<(f64, f64)> = d.into_iter().zip(z).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (values, first_components) = pairs.into_iter().unzip();
    Some(TridiagEigen { values, first_components })
}
