//! Brute-force reference pipeline. Every step is computed a different
//! way from the library: Kronecker-product operators, a truncated Taylor
//! series for the exponential, a full index-summed partial trace and a
//! cyclic Jacobi eigensolver.

#![allow(dead_code)]

use nalgebra::{Complex, DMatrix};
use rand::Rng;

use xxz_ring::RingSpec;

pub type CMatrix = DMatrix<Complex<f64>>;

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

/// Single-site operators in the ordering (index 0 = down, index 1 = up).
pub fn pauli(which: char) -> CMatrix {
    let z = c(0.0, 0.0);
    let o = c(1.0, 0.0);
    let i = c(0.0, 1.0);
    match which {
        'I' => CMatrix::from_row_slice(2, 2, &[o, z, z, o]),
        'X' => CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
        // Standard Y conjugated by the up/down swap.
        'Y' => CMatrix::from_row_slice(2, 2, &[z, i, -i, z]),
        'Z' => CMatrix::from_row_slice(2, 2, &[-o, z, z, o]),
        _ => panic!("unknown Pauli {which}"),
    }
}

/// `op` on site `site` (1-based) of `n`. Site 1 is the least significant
/// factor, matching little-endian basis indices.
pub fn site_operator(op: &CMatrix, site: usize, n: usize) -> CMatrix {
    let mut out = CMatrix::identity(1, 1);
    for s in (1..=n).rev() {
        let factor = if s == site { op.clone() } else { pauli('I') };
        out = out.kronecker(&factor);
    }
    out
}

/// Ring Hamiltonian written directly from its operator form, with impurity
/// scales chosen by endpoint membership.
pub fn brute_hamiltonian(spec: &RingSpec) -> DMatrix<f64> {
    let n = spec.n;
    let dim = 1 << n;
    let mut h = CMatrix::zeros(dim, dim);
    let imp = |s: usize| spec.impurities.contains(&s);
    for i in 1..=n {
        let k = if i == n { 1 } else { i + 1 };
        let scale = match (imp(i), imp(k)) {
            (true, true) => spec.beta,
            (false, false) => 1.0,
            _ => spec.alpha,
        };
        let pair = |p: char| site_operator(&pauli(p), i, n) * site_operator(&pauli(p), k, n);
        h += (pair('X') + pair('Y')) * c(0.5 * scale * spec.j, 0.0);
        h += pair('Z') * c(0.5 * scale * spec.jz, 0.0);
        // Field written as 1/2 B (Z_i + Z_{i+1}) per bond.
        h += (site_operator(&pauli('Z'), i, n) + site_operator(&pauli('Z'), k, n)) * c(0.5 * spec.b, 0.0);
    }
    assert!(h.iter().all(|z| z.im.abs() < 1e-15), "XXZ Hamiltonian must be real");
    h.map(|z| z.re)
}

fn one_norm(m: &DMatrix<f64>) -> f64 {
    m.column_iter()
        .map(|col| col.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(a)` by scaling, a 30-term Taylor series, and repeated squaring.
pub fn expm_series(a: &DMatrix<f64>) -> DMatrix<f64> {
    let norm = one_norm(a);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scaled = a / 2f64.powi(squarings as i32);
    let dim = a.nrows();
    let mut term = DMatrix::<f64>::identity(dim, dim);
    let mut sum = term.clone();
    for k in 1..=30 {
        term = &term * &scaled / k as f64;
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `exp(-H / T) / Z`, shifted by the smallest diagonal entry to keep the
/// exponential in range.
pub fn brute_gibbs(h: &DMatrix<f64>, temperature: f64) -> DMatrix<f64> {
    let dim = h.nrows();
    let shift = h.diagonal().min();
    let a = -(h - DMatrix::<f64>::identity(dim, dim) * shift) / temperature;
    let e = expm_series(&a);
    let z = e.trace();
    let rho = e / z;
    (&rho + rho.transpose()) * 0.5
}

/// Reduced state of sites `(i, j)`, local index `2 * bit_i + bit_j`, by
/// summing over every pair of full basis states.
pub fn brute_partial_trace(rho: &DMatrix<f64>, n: usize, i: usize, j: usize) -> DMatrix<f64> {
    let bit = |k: usize, s: usize| (k >> (s - 1)) & 1;
    let others: Vec<usize> = (1..=n).filter(|&s| s != i && s != j).collect();
    let mut out = DMatrix::zeros(4, 4);
    for r in 0..rho.nrows() {
        for col in 0..rho.ncols() {
            if others.iter().all(|&s| bit(r, s) == bit(col, s)) {
                let a = 2 * bit(r, i) + bit(r, j);
                let b = 2 * bit(col, i) + bit(col, j);
                out[(a, b)] += rho[(r, col)];
            }
        }
    }
    out
}

/// Cyclic Jacobi rotations; returns (eigenvalues, eigenvectors as columns).
pub fn jacobi_eigen(m: &DMatrix<f64>) -> (Vec<f64>, DMatrix<f64>) {
    let n = m.nrows();
    let mut a = m.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|p| (0..n).filter(move |&q| q != p).map(move |q| (p, q)))
            .map(|(p, q)| a[(p, q)] * a[(p, q)])
            .sum();
        if off.sqrt() < 1e-300 {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let cs = 1.0 / (t * t + 1.0).sqrt();
                let sn = t * cs;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = cs * akp - sn * akq;
                    a[(k, q)] = sn * akp + cs * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = cs * apk - sn * aqk;
                    a[(q, k)] = sn * apk + cs * aqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = cs * vkp - sn * vkq;
                    v[(k, q)] = sn * vkp + cs * vkq;
                }
            }
        }
    }
    ((0..n).map(|k| a[(k, k)]).collect(), v)
}

/// `(Y ⊗ Y) rho* (Y ⊗ Y)` by explicit complex matrix products.
pub fn explicit_spin_flip(rho: &DMatrix<f64>) -> DMatrix<f64> {
    let yy = pauli('Y').kronecker(&pauli('Y'));
    let rc = rho.map(|x| c(x, 0.0)).map(|z| z.conj());
    let out = &yy * rc * &yy;
    assert!(out.iter().all(|z| z.im.abs() < 1e-15));
    out.map(|z| z.re)
}

/// Concurrence from the spectrum of `sqrt(rho) rho_tilde sqrt(rho)`.
pub fn brute_concurrence(rho4: &DMatrix<f64>) -> f64 {
    let (vals, vecs) = jacobi_eigen(rho4);
    let root = DMatrix::from_diagonal(&nalgebra::DVector::from_iterator(
        4,
        vals.iter().map(|&x| x.max(0.0).sqrt()),
    ));
    let sqrt_rho = &vecs * root * vecs.transpose();
    let m = &sqrt_rho * explicit_spin_flip(rho4) * &sqrt_rho;
    let m = (&m + m.transpose()) * 0.5;
    let (mu, _) = jacobi_eigen(&m);
    let mut lambdas: Vec<f64> = mu.iter().map(|&x| x.max(0.0).sqrt()).collect();
    lambdas.sort_by(|a, b| b.total_cmp(a));
    (lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0)
}

/// Thermal concurrence of `(i, j)` through the reference pipeline.
pub fn brute_pair_concurrence(spec: &RingSpec, i: usize, j: usize) -> f64 {
    let h = brute_hamiltonian(spec);
    let rho = brute_gibbs(&h, spec.temperature);
    brute_concurrence(&brute_partial_trace(&rho, spec.n, i, j))
}

/// A valid ring with randomized couplings, field, temperature and impurities.
pub fn random_spec<R: Rng>(rng: &mut R, n: usize) -> RingSpec {
    let impurities: Vec<usize> = (1..=n).filter(|_| rng.random_bool(0.35)).collect();
    RingSpec {
        n,
        j: rng.random_range(-1.5..1.5),
        jz: rng.random_range(-1.5..1.5),
        b: rng.random_range(0.0..1.0),
        temperature: rng.random_range(0.5..3.0),
        impurities,
        alpha: rng.random_range(0.0..3.0),
        beta: rng.random_range(0.0..3.0),
    }
}

/// Random real symmetric positive semidefinite unit-trace 4x4 matrix.
pub fn random_density4<R: Rng>(rng: &mut R) -> DMatrix<f64> {
    let a = DMatrix::from_fn(4, 4, |_, _| rng.random_range(-1.0..1.0));
    let m = &a * a.transpose();
    let t = m.trace();
    m / t
}
