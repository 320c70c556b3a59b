use super::{CsrMatrix, DenseMatrix, SpmmProblem};

/// Plain `A * B` with fp32 accumulation, rows in order and columns of each
/// row ascending.
pub fn reference_product(a: &CsrMatrix, b: &DenseMatrix) -> DenseMatrix {
    assert_eq!(a.num_cols(), b.num_rows(), "inner dimensions differ");
    let n = b.num_cols();
    let mut out = DenseMatrix::zeros(a.num_rows(), n);
    for r in 0..a.num_rows() {
        let (cols, vals) = a.row(r);
        let acc = out.row_mut(r);
        for (&c, &v) in cols.iter().zip(vals) {
            for (dst, &bv) in acc.iter_mut().zip(b.row(c)) {
                *dst += v * bv;
            }
        }
    }
    out
}

/// Ground-truth `alpha * A * B + beta * C_in`.
///
/// Accumulates each output row in ascending column order, then applies
/// `alpha * acc + beta * c_in` element by element. Every emulated result is
/// compared against this.
pub fn reference_spmm(p: &SpmmProblem) -> DenseMatrix {
    let mut out = reference_product(p.a(), p.b());
    let (alpha, beta) = (p.alpha(), p.beta());
    for (o, &c) in out.values_mut().iter_mut().zip(p.c_in().values()) {
        *o = alpha * *o + beta * c;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sparse::{random_dense, random_problem};

    #[test]
    fn identity_returns_b() {
        let b = random_dense(16, 8, 3);
        let p = SpmmProblem::new(
            CsrMatrix::identity(16),
            b.clone(),
            random_dense(16, 8, 4),
            1.0,
            0.0,
        )
        .unwrap();
        assert_eq!(reference_spmm(&p), b);
    }

    #[test]
    fn alpha_zero_beta_one_returns_c_in() {
        let p = random_problem(30, 20, 6, 0.3, 9).unwrap();
        let p = SpmmProblem::new(p.a().clone(), p.b().clone(), p.c_in().clone(), 0.0, 1.0)
            .unwrap();
        assert_eq!(&reference_spmm(&p), p.c_in());
    }

    #[test]
    fn power_of_two_alpha_is_exactly_linear() {
        let p = random_problem(40, 30, 5, 0.2, 21).unwrap();
        let zeros = DenseMatrix::zeros(40, 5);
        let base =
            SpmmProblem::new(p.a().clone(), p.b().clone(), zeros.clone(), 1.0, 0.0).unwrap();
        let scaled =
            SpmmProblem::new(p.a().scaled(4.0), p.b().clone(), zeros, 1.0, 0.0).unwrap();
        let lhs = reference_spmm(&scaled);
        let rhs = reference_spmm(&base);
        for (l, r) in lhs.values().iter().zip(rhs.values()) {
            assert_eq!(l.to_bits(), (4.0 * r).to_bits());
        }
    }

    #[test]
    fn recomposes_from_unit_product() {
        let p = random_problem(25, 25, 4, 0.25, 5).unwrap();
        let p = SpmmProblem::new(p.a().clone(), p.b().clone(), p.c_in().clone(), 1.5, -0.75)
            .unwrap();
        let ab = reference_product(p.a(), p.b());
        let full = reference_spmm(&p);
        for ((f, ab), c) in full.values().iter().zip(ab.values()).zip(p.c_in().values()) {
            let recomposed = 1.5 * ab + -0.75 * c;
            assert!((f - recomposed).abs() <= f32::EPSILON * f.abs().max(recomposed.abs()));
        }
    }
}
