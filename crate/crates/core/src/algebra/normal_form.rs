//! Integer lattice reductions used to present subquotients of
//! `Z/d_1 ⊕ … ⊕ Z/d_k` as direct sums of cyclic groups.
//!
//! For `B ≤ A ≤ G` we lift to `B' ≤ A' ≤ Z^k` (both containing `dZ^k`),
//! take a triangular basis `H` of `A'`, express `B'` in that basis as the
//! columns of `C`, and diagonalize `C` by unimodular row and column
//! operations `U·C·V = diag(s)`. Then `A/B ≅ ⊕ Z/s_t` via `a ↦ U·H⁻¹·a`.

use crate::error::{Error, Result};

type Mat = Vec<Vec<i128>>;

pub(crate) struct Subquotient {
    basis: Mat,
    transform: Mat,
    /// Rows of the diagonal form kept as quotient coordinates.
    kept: Vec<usize>,
    /// Order of each kept coordinate.
    pub orders: Vec<u32>,
    /// Lift of each quotient generator, as signed coordinates in `Z^k`.
    pub generator_lifts: Vec<Vec<i128>>,
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - (a.div_euclid(b)) * y)
    }
}

/// Lower-triangular basis (as columns) of the lattice spanned by `cols`,
/// which must have full rank `k`.
fn column_echelon(k: usize, mut cols: Vec<Vec<i128>>) -> Result<Mat> {
    for row in 0..k {
        // gather the gcd of row `row` over columns `row..` into column `row`
        for j in row + 1..cols.len() {
            let a = cols[row][row];
            let b = cols[j][row];
            if b == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(a, b);
            let (p, q) = (a / g, b / g);
            let ci = cols[row].clone();
            let cj = cols[j].clone();
            for r in 0..k {
                cols[row][r] = x * ci[r] + y * cj[r];
                cols[j][r] = -q * ci[r] + p * cj[r];
            }
        }
        if cols.len() <= row || cols[row][row] == 0 {
            return Err(Error::InternalInconsistency(
                "lattice lift is not of full rank".into(),
            ));
        }
        if cols[row][row] < 0 {
            for r in 0..k {
                cols[row][r] = -cols[row][r];
            }
        }
    }
    cols.truncate(k);
    Ok(cols)
}

/// Solves `H·y = b` for lower-triangular column basis `H`.
fn solve_lower(basis: &Mat, b: &[i128]) -> Option<Vec<i128>> {
    let k = b.len();
    let mut y = vec![0i128; k];
    for i in 0..k {
        let mut rhs = b[i];
        for j in 0..i {
            rhs -= basis[j][i] * y[j];
        }
        let piv = basis[i][i];
        if rhs % piv != 0 {
            return None;
        }
        y[i] = rhs / piv;
    }
    Some(y)
}

impl Subquotient {
    /// `orders` are the ambient cyclic orders; `a_gens` generate `A`,
    /// `b_gens` generate `B ≤ A`.
    pub fn new(orders: &[u32], a_gens: &[Vec<u32>], b_gens: &[Vec<u32>]) -> Result<Self> {
        let k = orders.len();
        let unit = |i: usize| -> Vec<i128> {
            (0..k)
                .map(|r| if r == i { orders[i] as i128 } else { 0 })
                .collect()
        };
        let lift = |v: &Vec<u32>| -> Vec<i128> { v.iter().map(|&c| c as i128).collect() };

        let mut a_cols: Vec<Vec<i128>> = a_gens.iter().map(lift).collect();
        a_cols.extend((0..k).map(unit));
        // the gcd gathering expects the pivot candidates first
        a_cols.rotate_left(a_gens.len());
        let basis = column_echelon(k, a_cols)?;

        let mut c_cols: Vec<Vec<i128>> = Vec::new();
        for b in b_gens.iter().map(lift).chain((0..k).map(unit)) {
            let y = solve_lower(&basis, &b).ok_or_else(|| {
                Error::InvalidSubmodule("quotient generator outside the submodule".into())
            })?;
            c_cols.push(y);
        }
        // c as rows × cols
        let m = c_cols.len();
        let mut c: Mat = (0..k).map(|r| (0..m).map(|j| c_cols[j][r]).collect()).collect();
        let mut u: Mat = identity(k);
        let mut u_inv: Mat = identity(k);

        for t in 0..k {
            loop {
                // smallest nonzero entry in the lower-right block
                let mut best: Option<(i128, usize, usize)> = None;
                for r in t..k {
                    for j in t..m {
                        let v = c[r][j].abs();
                        if v != 0 && best.is_none_or(|(bv, _, _)| v < bv) {
                            best = Some((v, r, j));
                        }
                    }
                }
                let Some((_, pr, pc)) = best else {
                    return Err(Error::InternalInconsistency(
                        "relation lattice is not of full rank".into(),
                    ));
                };
                if pr != t {
                    c.swap(pr, t);
                    u.swap(pr, t);
                    for row in u_inv.iter_mut() {
                        row.swap(pr, t);
                    }
                }
                if pc != t {
                    for row in c.iter_mut() {
                        row.swap(pc, t);
                    }
                }
                let piv = c[t][t];
                let mut clean = true;
                for r in t + 1..k {
                    let q = c[r][t].div_euclid(piv);
                    if q != 0 {
                        for j in 0..m {
                            c[r][j] -= q * c[t][j];
                        }
                        for j in 0..k {
                            u[r][j] -= q * u[t][j];
                        }
                        for row in u_inv.iter_mut() {
                            row[t] += q * row[r];
                        }
                    }
                    if c[r][t] != 0 {
                        clean = false;
                    }
                }
                for j in t + 1..m {
                    let q = c[t][j].div_euclid(piv);
                    if q != 0 {
                        for row in c.iter_mut() {
                            row[j] -= q * row[t];
                        }
                    }
                    if c[t][j] != 0 {
                        clean = false;
                    }
                }
                if clean {
                    break;
                }
            }
        }

        let mut kept = Vec::new();
        let mut out_orders = Vec::new();
        let mut generator_lifts = Vec::new();
        for t in 0..k {
            let s = c[t][t].abs();
            if s > 1 {
                kept.push(t);
                out_orders.push(u32::try_from(s).map_err(|_| {
                    Error::InternalInconsistency("invariant factor overflow".into())
                })?);
                let y: Vec<i128> = (0..k).map(|r| u_inv[r][t]).collect();
                let a: Vec<i128> = (0..k)
                    .map(|r| (0..k).map(|j| basis[j][r] * y[j]).sum())
                    .collect();
                generator_lifts.push(a);
            }
        }
        Ok(Subquotient {
            basis,
            transform: u,
            kept,
            orders: out_orders,
            generator_lifts,
        })
    }

    /// Quotient coordinates of an element of `A`, or `None` if it lies
    /// outside `A`.
    pub fn coordinates(&self, a: &[u32]) -> Option<Vec<u32>> {
        let lifted: Vec<i128> = a.iter().map(|&c| c as i128).collect();
        let y = solve_lower(&self.basis, &lifted)?;
        Some(
            self.kept
                .iter()
                .zip(&self.orders)
                .map(|(&t, &s)| {
                    let z: i128 = self.transform[t].iter().zip(&y).map(|(u, y)| u * y).sum();
                    z.rem_euclid(s as i128) as u32
                })
                .collect(),
        )
    }
}

fn identity(k: usize) -> Mat {
    (0..k)
        .map(|r| (0..k).map(|c| i128::from(r == c)).collect())
        .collect()
}
