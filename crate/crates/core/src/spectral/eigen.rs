//! Eigenvalues of a dense real symmetric matrix: Householder reduction to
//! tridiagonal form followed by the implicit QL iteration with Wilkinson-style
//! shifts.

/// Off-diagonal entries below this fraction of the neighbouring diagonal
/// magnitudes are treated as zero.
const DEFLATION_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 64;

/// Eigenvalues of the symmetric row-major `n x n` matrix, sorted descending.
/// Only the lower triangle is read.
pub fn symmetric_eigenvalues(matrix: &[f64], n: usize) -> Vec<f64> {
    assert_eq!(matrix.len(), n * n, "matrix must be n x n");
    if n == 0 {
        return Vec::new();
    }
    let mut a = matrix.to_vec();
    let (mut d, mut e) = tridiagonalize(&mut a, n);
    tridiagonal_ql(&mut d, &mut e);
    d.sort_by(|x, y| y.total_cmp(x));
    d
}

/// Returns the diagonal and the subdiagonal (`e[i]` couples `i-1` and `i`).
fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let at = |i: usize, j: usize| i * n + j;
    for i in (1..n).rev() {
        let l = i - 1;
        if l == 0 {
            e[i] = a[at(i, l)];
            continue;
        }
        let scale: f64 = (0..=l).map(|k| a[at(i, k)].abs()).sum();
        if scale == 0.0 {
            e[i] = a[at(i, l)];
            continue;
        }
        let mut h = 0.0;
        for k in 0..=l {
            a[at(i, k)] /= scale;
            h += a[at(i, k)] * a[at(i, k)];
        }
        let f = a[at(i, l)];
        let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
        e[i] = scale * g;
        h -= f * g;
        a[at(i, l)] = f - g;
        let mut f = 0.0;
        for j in 0..=l {
            let mut g = 0.0;
            for k in 0..=j {
                g += a[at(j, k)] * a[at(i, k)];
            }
            for k in j + 1..=l {
                g += a[at(k, j)] * a[at(i, k)];
            }
            e[j] = g / h;
            f += e[j] * a[at(i, j)];
        }
        let hh = f / (h + h);
        for j in 0..=l {
            let f = a[at(i, j)];
            let g = e[j] - hh * f;
            e[j] = g;
            for k in 0..=j {
                a[at(j, k)] -= f * e[k] + g * a[at(i, k)];
            }
        }
    }
    for (i, di) in d.iter_mut().enumerate() {
        *di = a[at(i, i)];
    }
    (d, e)
}

fn tridiagonal_ql(d: &mut [f64], e: &mut [f64]) {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= DEFLATION_TOL * dd || e[m].abs() + dd == dd {
                    break;
                }
                m += 1;
            }
            if m == l || sweeps == MAX_SWEEPS {
                break;
            }
            sweeps += 1;
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, SymmetricEigen};
    use proptest::prelude::*;

    fn oracle(m: &[f64], n: usize) -> Vec<f64> {
        let mat = DMatrix::from_row_slice(n, n, m);
        let mut v: Vec<f64> = SymmetricEigen::new(mat).eigenvalues.iter().copied().collect();
        v.sort_by(|x, y| y.total_cmp(x));
        v
    }

    #[test]
    fn diagonal_and_small_cases() {
        assert_eq!(symmetric_eigenvalues(&[3.0], 1), vec![3.0]);
        let ev = symmetric_eigenvalues(&[2.0, 0.0, 0.0, -1.0], 2);
        assert_eq!(ev, vec![2.0, -1.0]);
        let ev = symmetric_eigenvalues(&[0.0, 1.0, 1.0, 0.0], 2);
        assert!((ev[0] - 1.0).abs() < 1e-14 && (ev[1] + 1.0).abs() < 1e-14);
        assert!(symmetric_eigenvalues(&[], 0).is_empty());
    }

    #[test]
    fn complete_graph_spectrum() {
        let n = 7;
        let m: Vec<f64> = (0..n * n)
            .map(|x| if x / n == x % n { 0.0 } else { 1.0 })
            .collect();
        let ev = symmetric_eigenvalues(&m, n);
        assert!((ev[0] - 6.0).abs() < 1e-12);
        assert!(ev[1..].iter().all(|&l| (l + 1.0).abs() < 1e-12));
    }

    proptest! {
        #[test]
        fn agrees_with_nalgebra(n in 1usize..40, seed in any::<u64>()) {
            use rand::Rng;
            let mut rng = crate::rng::rng_from_seed(seed);
            let mut m = vec![0.0; n * n];
            for i in 0..n {
                for j in 0..=i {
                    let v = rng.random_range(-1.0..1.0);
                    m[i * n + j] = v;
                    m[j * n + i] = v;
                }
            }
            let ours = symmetric_eigenvalues(&m, n);
            let theirs = oracle(&m, n);
            for (a, b) in ours.iter().zip(&theirs) {
                prop_assert!((a - b).abs() < 1e-10, "{} vs {}", a, b);
            }
        }

        #[test]
        fn handles_repeated_eigenvalues(n in 2usize..30, k in 1usize..5) {
            // circulant-like 0/1 matrices from cyclic shifts have heavy multiplicities
            let mut m = vec![0.0; n * n];
            for i in 0..n {
                for s in 1..=k.min(n - 1) {
                    let j = (i + s) % n;
                    m[i * n + j] += 1.0;
                    m[j * n + i] += 1.0;
                }
            }
            let ours = symmetric_eigenvalues(&m, n);
            let theirs = oracle(&m, n);
            for (a, b) in ours.iter().zip(&theirs) {
                prop_assert!((a - b).abs() < 1e-9, "{} vs {}", a, b);
            }
        }
    }
}
