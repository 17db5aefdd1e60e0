//! Exact linear algebra: division-free determinants over any commutative
//! ring, rational kernels, integer diagonalization and Hermite reduction.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::{Ring, Value};

/// Determinant over a commutative ring by the Samuelson–Berkowitz
/// recurrence (no divisions, `O(n^4)` ring operations).
pub fn determinant(ring: &Ring, m: &[Vec<Value>]) -> Value {
    let n = m.len();
    // characteristic polynomial det(xI - A) of the trailing principal
    // submatrix, highest degree first
    let mut p = vec![ring.one()];
    for k in (0..n).rev() {
        let r = n - 1 - k;
        let mut c = Vec::with_capacity(r + 2);
        c.push(ring.one());
        c.push(ring.neg(&m[k][k]));
        let mut v: Vec<Value> = (k + 1..n).map(|i| m[i][k].clone()).collect();
        for j in 0..r {
            c.push(ring.neg(&dot(ring, &m[k][k + 1..], &v)));
            if j + 1 < r {
                v = (k + 1..n).map(|i| dot(ring, &m[i][k + 1..], &v)).collect();
            }
        }
        let mut q = vec![ring.zero(); r + 2];
        for (i, qi) in q.iter_mut().enumerate() {
            for j in 0..=i.min(r) {
                *qi = ring.add(qi, &ring.mul(&c[i - j], &p[j]));
            }
        }
        p = q;
    }
    if n % 2 == 0 {
        p[n].clone()
    } else {
        ring.neg(&p[n])
    }
}

fn dot(ring: &Ring, a: &[Value], b: &[Value]) -> Value {
    a.iter().zip(b).fold(ring.zero(), |acc, (x, y)| ring.add(&acc, &ring.mul(x, y)))
}

/// Classical adjugate over a commutative ring: `adj(A) * A = det(A) * I`.
pub fn adjugate(ring: &Ring, m: &[Vec<Value>]) -> Vec<Vec<Value>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![ring.one()]];
    }
    let minor = |skip_r: usize, skip_c: usize| -> Vec<Vec<Value>> {
        (0..n)
            .filter(|&i| i != skip_r)
            .map(|i| (0..n).filter(|&j| j != skip_c).map(|j| m[i][j].clone()).collect())
            .collect()
    };
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let d = determinant(ring, &minor(j, i));
                    if (i + j) % 2 == 0 {
                        d
                    } else {
                        ring.neg(&d)
                    }
                })
                .collect()
        })
        .collect()
}

/// Basis of `{x : A x = 0}` over Q from the reduced row echelon form; one
/// vector per free column, with a 1 in that column.
pub fn rational_kernel(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][col].is_zero() {
                let f = a[i][col].clone();
                for j in 0..ncols {
                    let t = &a[r][j] * &f;
                    a[i][j] = &a[i][j] - t;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![BigRational::zero(); ncols];
            v[f] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][f].clone();
            }
            v
        })
        .collect()
}

/// Diagonal form of an integer matrix under unimodular row and column
/// operations: returns `(d, v)` with `U A V = diag(d)` for some unimodular
/// `U`, where `v` is the column transform (`ncols x ncols`).
///
/// The diagonal has `min(nrows, ncols)` entries. No divisibility chain is
/// enforced; solving `A x = 0` (over Z or modulo n) only needs diagonality.
pub fn diagonalize(mut a: Vec<Vec<BigInt>>, ncols: usize) -> (Vec<BigInt>, Vec<Vec<BigInt>>) {
    let nrows = a.len();
    let mut v: Vec<Vec<BigInt>> = (0..ncols)
        .map(|i| (0..ncols).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let steps = nrows.min(ncols);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..nrows {
                for j in t..ncols {
                    if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (finish_diag(&a, steps), v);
            };
            a.swap(t, bi);
            if bj != t {
                for row in a.iter_mut() {
                    row.swap(t, bj);
                }
                for row in v.iter_mut() {
                    row.swap(t, bj);
                }
            }
            let mut clean = true;
            for i in t + 1..nrows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                for j in t..ncols {
                    let s = &q * &a[t][j];
                    a[i][j] -= s;
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..ncols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for i in t..nrows {
                    let s = &q * &a[i][t];
                    a[i][j] -= s;
                }
                for row in v.iter_mut() {
                    let s = &q * &row[t];
                    row[j] -= s;
                }
                clean &= a[t][j].is_zero();
            }
            if clean {
                break;
            }
        }
    }
    (finish_diag(&a, steps), v)
}

fn finish_diag(a: &[Vec<BigInt>], steps: usize) -> Vec<BigInt> {
    (0..steps).map(|t| a[t][t].abs()).collect()
}

/// Integer kernel `{x in Z^n : A x = 0}` as a saturated lattice basis in
/// row Hermite normal form.
pub fn integer_kernel(a: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let (d, v) = diagonalize(a, ncols);
    let free = (0..ncols).filter(|&i| i >= d.len() || d[i].is_zero());
    let basis = free.map(|i| v.iter().map(|row| row[i].clone()).collect()).collect();
    hermite_rows(basis)
}

/// Row Hermite normal form of a lattice basis: echelon, positive pivots,
/// entries above each pivot reduced into `[0, pivot)`; zero rows dropped.
pub fn hermite_rows(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pr = 0;
    for col in 0..ncols {
        if pr == rows.len() {
            break;
        }
        loop {
            let best = (pr..rows.len())
                .filter(|&i| !rows[i][col].is_zero())
                .min_by_key(|&i| rows[i][col].abs());
            let Some(best) = best else { break };
            rows.swap(pr, best);
            let mut again = false;
            for i in pr + 1..rows.len() {
                if rows[i][col].is_zero() {
                    continue;
                }
                let q = rows[i][col].div_floor(&rows[pr][col]);
                for j in 0..ncols {
                    let s = &q * &rows[pr][j];
                    rows[i][j] -= s;
                }
                again |= !rows[i][col].is_zero();
            }
            if !again {
                break;
            }
        }
        if rows[pr][col].is_zero() {
            continue;
        }
        if rows[pr][col].is_negative() {
            for x in rows[pr].iter_mut() {
                *x = -&*x;
            }
        }
        for i in 0..pr {
            let q = rows[i][col].div_floor(&rows[pr][col]);
            if q.is_zero() {
                continue;
            }
            for j in 0..ncols {
                let s = &q * &rows[pr][j];
                rows[i][j] -= s;
            }
        }
        pr += 1;
    }
    rows.truncate(pr);
    rows
}
