use crate::exactnum::Cyclotomic8;

/// Solves `Σ cⱼ columns[j] = target` over ℚ(ζ₈) by Gaussian elimination.
/// Free variables are set to zero.
pub fn solve_exact(target: &[Cyclotomic8], columns: &[Vec<Cyclotomic8>]) -> Option<Vec<Cyclotomic8>> {
    let rows = target.len();
    let cols = columns.len();
    // Augmented matrix, row-major: rows × (cols + 1).
    let mut a: Vec<Vec<Cyclotomic8>> = (0..rows)
        .map(|x| {
            let mut row: Vec<Cyclotomic8> = columns.iter().map(|c| c[x].clone()).collect();
            row.push(target[x].clone());
            row
        })
        .filter(|row| row.iter().any(|v| !v.is_zero()))
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][c].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for v in a[r].iter_mut().skip(c) {
                *v = &*v * &inv;
            }
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let f = a[i][c].clone();
                for j in c..=cols {
                    if !a[r][j].is_zero() {
                        let d = &f * &a[r][j];
                        a[i][j] -= &d;
                    }
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| !row[cols].is_zero()) {
        return None;
    }
    let mut coeffs = vec![Cyclotomic8::zero(); cols];
    for (i, &c) in pivot_cols.iter().enumerate() {
        coeffs[c] = a[i][cols].clone();
    }
    Some(coeffs)
}

/// Exact rank of a set of vectors.
pub fn exact_rank(vectors: &[Vec<Cyclotomic8>]) -> usize {
    let mut basis: Vec<(usize, Vec<Cyclotomic8>)> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for (p, b) in &basis {
            if !w[*p].is_zero() {
                let f = w[*p].clone();
                for (x, bx) in w.iter_mut().zip(b) {
                    if !bx.is_zero() {
                        *x -= &(&f * bx);
                    }
                }
            }
        }
        if let Some(p) = w.iter().position(|x| !x.is_zero()) {
            let inv = w[p].inv().unwrap();
            for x in w.iter_mut() {
                *x = &*x * &inv;
            }
            basis.push((p, w));
        }
    }
    basis.len()
}
