//! Dense routines generic over a [`Field`] context: Horner evaluation,
//! Newton interpolation, Gaussian determinants and numeric Sylvester
//! matrices. Coefficient slices are ordered from the constant term up.

use crate::ff::Field;

pub fn eval<F: Field>(ctx: &F, coeffs: &[F::Elem], x: &F::Elem) -> F::Elem {
    coeffs
        .iter()
        .rev()
        .fold(ctx.zero(), |acc, c| ctx.add(&ctx.mul(&acc, x), c))
}

/// Evaluate a polynomial with base-field coefficients at `x`.
pub fn eval_base<F: Field>(ctx: &F, coeffs: &[u64], x: &F::Elem) -> F::Elem {
    coeffs.iter().rev().fold(ctx.zero(), |acc, &c| {
        ctx.add(&ctx.mul(&acc, x), &ctx.from_base(c))
    })
}

pub fn trim<F: Field>(ctx: &F, coeffs: &mut Vec<F::Elem>) {
    while coeffs.last().is_some_and(|c| ctx.is_zero(c)) {
        coeffs.pop();
    }
}

/// Newton divided differences. Returns `None` when two abscissae coincide.
pub fn interpolate<F: Field>(ctx: &F, points: &[(F::Elem, F::Elem)]) -> Option<Vec<F::Elem>> {
    let n = points.len();
    let mut table: Vec<F::Elem> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let dx = ctx.sub(&points[i].0, &points[i - level].0);
            let inv = ctx.inv(&dx)?;
            let dy = ctx.sub(&table[i], &table[i - 1]);
            table[i] = ctx.mul(&dy, &inv);
        }
    }
    // Horner on the Newton basis: c_{n-1}, then multiply by (x - x_i).
    let mut poly: Vec<F::Elem> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        // poly = poly * (x - x_i) + table[i]
        let xi = &points[i].0;
        let mut next = vec![ctx.zero(); poly.len() + 1];
        for (k, c) in poly.iter().enumerate() {
            next[k + 1] = ctx.add(&next[k + 1], c);
            next[k] = ctx.sub(&next[k], &ctx.mul(c, xi));
        }
        next[0] = ctx.add(&next[0], &table[i]);
        poly = next;
    }
    trim(ctx, &mut poly);
    Some(poly)
}

/// Determinant by Gaussian elimination with row pivoting.
pub fn determinant<F: Field>(ctx: &F, mut rows: Vec<Vec<F::Elem>>) -> F::Elem {
    let n = rows.len();
    let mut det = ctx.one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !ctx.is_zero(&rows[r][col])) else {
            return ctx.zero();
        };
        if pivot != col {
            rows.swap(pivot, col);
            det = ctx.neg(&det);
        }
        let pv = rows[col][col].clone();
        det = ctx.mul(&det, &pv);
        let inv = ctx.inv(&pv).expect("nonzero pivot");
        for r in col + 1..n {
            if ctx.is_zero(&rows[r][col]) {
                continue;
            }
            let factor = ctx.mul(&rows[r][col], &inv);
            for c in col..n {
                let t = ctx.mul(&factor, &rows[col][c]);
                rows[r][c] = ctx.sub(&rows[r][c], &t);
            }
        }
    }
    det
}

/// Sylvester matrix of `a` and `b` at their formal degrees
/// `a.len() - 1` and `b.len() - 1`. The first `deg b` rows carry `a` from
/// its highest coefficient down, shifted right by the row index; the next
/// `deg a` rows carry `b` likewise.
pub fn sylvester<F: Field>(ctx: &F, a: &[F::Elem], b: &[F::Elem]) -> Vec<Vec<F::Elem>> {
    let da = a.len() - 1;
    let db = b.len() - 1;
    let dim = da + db;
    let mut rows = Vec::with_capacity(dim);
    for (src, shifts) in [(a, db), (b, da)] {
        for i in 0..shifts {
            let mut row = vec![ctx.zero(); dim];
            for (j, c) in src.iter().rev().enumerate() {
                row[i + j] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Determinant of the formal-degree Sylvester matrix.
pub fn sylvester_det<F: Field>(ctx: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    determinant(ctx, sylvester(ctx, a, b))
}
