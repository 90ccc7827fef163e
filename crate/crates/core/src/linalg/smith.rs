use super::int::Int;
use super::matrix::IntMatrix;

/// Which transformation matrices to accumulate during reduction.
#[derive(Clone, Copy, Debug, Default)]
pub struct Track {
    pub u: bool,
    pub v: bool,
    pub v_inv: bool,
}

impl Track {
    pub const ALL: Track = Track { u: true, v: true, v_inv: true };
    pub const V: Track = Track { u: false, v: true, v_inv: false };
    pub const V_BOTH: Track = Track { u: false, v: true, v_inv: true };
    pub const UV: Track = Track { u: true, v: true, v_inv: false };
}

/// Result of a Smith reduction `U·M·V = D`.
#[derive(Clone, Debug)]
pub struct Smith {
    /// Diagonal of `D`, length `min(rows, cols)`, non-negative, each dividing the next nonzero one.
    pub diag: Vec<Int>,
    pub rank: usize,
    pub u: Option<IntMatrix>,
    pub v: Option<IntMatrix>,
    pub v_inv: Option<IntMatrix>,
}

impl Smith {
    pub fn d_matrix(&self, rows: usize, cols: usize) -> IntMatrix {
        let mut d = IntMatrix::zeros(rows, cols);
        for (i, x) in self.diag.iter().enumerate() {
            d[(i, i)] = x.clone();
        }
        d
    }
}

/// Quotient `q` minimizing `|a − q·p|`.
fn nearest_quotient(a: &Int, p: &Int) -> Int {
    let (mut q, r) = a.div_mod_floor(p);
    let twice = &r + &r;
    if twice.abs() > p.abs() {
        q = q + Int::ONE;
    }
    q
}

struct Work {
    a: IntMatrix,
    u: Option<IntMatrix>,
    v: Option<IntMatrix>,
    v_inv: Option<IntMatrix>,
}

impl Work {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        if let Some(u) = &mut self.u {
            u.swap_rows(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        if let Some(v) = &mut self.v {
            v.swap_cols(i, j);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.swap_rows(i, j);
        }
    }

    /// row[dst] += c · row[src]
    fn row_op(&mut self, dst: usize, src: usize, c: &Int) {
        self.a.add_row_multiple(dst, src, c);
        if let Some(u) = &mut self.u {
            u.add_row_multiple(dst, src, c);
        }
    }

    /// col[dst] += c · col[src]
    fn col_op(&mut self, dst: usize, src: usize, c: &Int) {
        self.a.add_col_multiple(dst, src, c);
        if let Some(v) = &mut self.v {
            v.add_col_multiple(dst, src, c);
        }
        if let Some(vi) = &mut self.v_inv {
            vi.add_row_multiple(src, dst, &-c);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(u) = &mut self.u {
            u.negate_row(i);
        }
    }
}

/// Smith normal form with smallest-nonzero-entry pivoting.
pub fn smith(m: &IntMatrix, track: Track) -> Smith {
    let (rows, cols) = (m.rows(), m.cols());
    let mut w = Work {
        a: m.clone(),
        u: track.u.then(|| IntMatrix::identity(rows)),
        v: track.v.then(|| IntMatrix::identity(cols)),
        v_inv: track.v_inv.then(|| IntMatrix::identity(cols)),
    };
    let n = rows.min(cols);
    let mut rank = 0;
    for t in 0..n {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = &w.a[(i, j)];
                if !x.is_zero() && best.is_none_or(|(bi, bj)| x.abs() < w.a[(bi, bj)].abs()) {
                    best = Some((i, j));
                    if x.is_unit() {
                        break;
                    }
                }
            }
            if best.is_some_and(|(bi, bj)| w.a[(bi, bj)].is_unit()) {
                break;
            }
        }
        let Some((pi, pj)) = best else { break };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let p = w.a[(t, t)].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if !w.a[(i, t)].is_zero() {
                    let q = nearest_quotient(&w.a[(i, t)], &p);
                    w.row_op(i, t, &-q);
                    if !w.a[(i, t)].is_zero() {
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if !w.a[(t, j)].is_zero() {
                    let q = nearest_quotient(&w.a[(t, j)], &p);
                    w.col_op(j, t, &-q);
                    if !w.a[(t, j)].is_zero() {
                        clean = false;
                    }
                }
            }
            if !clean {
                let mut bi = t;
                let mut bj = t;
                for i in t + 1..rows {
                    let x = &w.a[(i, t)];
                    if !x.is_zero() && x.abs() < w.a[(bi, bj)].abs() {
                        bi = i;
                        bj = t;
                    }
                }
                for j in t + 1..cols {
                    let x = &w.a[(t, j)];
                    if !x.is_zero() && x.abs() < w.a[(bi, bj)].abs() {
                        bi = t;
                        bj = j;
                    }
                }
                w.swap_rows(t, bi);
                w.swap_cols(t, bj);
                continue;
            }
            let mut offender = None;
            if !p.is_unit() {
                'scan: for i in t + 1..rows {
                    for j in t + 1..cols {
                        if !p.divides(&w.a[(i, j)]) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
            }
            match offender {
                Some(i) => w.row_op(t, i, &Int::ONE),
                None => break,
            }
        }
        if w.a[(t, t)].is_negative() {
            w.negate_row(t);
        }
        rank = t + 1;
    }
    let diag = (0..n).map(|i| w.a[(i, i)].clone()).collect();
    Smith { diag, rank, u: w.u, v: w.v, v_inv: w.v_inv }
}

/// `(U, D, V)` with `U·M·V = D`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let s = smith(m, Track::UV);
    let d = s.d_matrix(m.rows(), m.cols());
    (s.u.unwrap(), d, s.v.unwrap())
}

/// Nonzero diagonal entries of the Smith form that differ from one, and the rank.
pub fn invariant_factors(m: &IntMatrix) -> (Vec<Int>, usize) {
    let s = smith(m, Track::default());
    let inv = s.diag.iter().filter(|d| !d.is_zero() && !d.is_one()).cloned().collect();
    (inv, s.rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn check(m: &IntMatrix) {
        let s = smith(m, Track::ALL);
        let (u, v, vi) = (s.u.clone().unwrap(), s.v.clone().unwrap(), s.v_inv.clone().unwrap());
        let d = s.d_matrix(m.rows(), m.cols());
        assert_eq!(u.mul(m).mul(&v), d);
        assert!(u.determinant().is_unit());
        assert!(v.determinant().is_unit());
        assert_eq!(v.mul(&vi), IntMatrix::identity(m.cols()));
        for w in s.diag.windows(2) {
            if !w[1].is_zero() {
                assert!(w[0].divides(&w[1]));
            } else {
                assert!(w[0].is_zero() || !w[0].is_negative());
            }
        }
        assert!(s.diag.iter().all(|x| !x.is_negative()));
        let nz = s.diag.iter().filter(|x| !x.is_zero()).count();
        assert_eq!(nz, s.rank);
        assert!(s.diag[..s.rank].iter().all(|x| !x.is_zero()));
    }

    #[test]
    fn diag_two_three() {
        let m = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]);
        let (u, d, v) = smith_normal_form(&m);
        assert_eq!(d, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]));
        assert_eq!(u.mul(&m).mul(&v), d);
        assert!(u.determinant().is_unit() && v.determinant().is_unit());
    }

    #[test]
    fn identity_and_zero() {
        let (_, d, _) = smith_normal_form(&IntMatrix::identity(3));
        assert_eq!(d, IntMatrix::identity(3));
        let (_, d, _) = smith_normal_form(&IntMatrix::zeros(2, 2));
        assert!(d.is_zero());
        check(&IntMatrix::zeros(0, 3));
        check(&IntMatrix::zeros(3, 0));
    }

    #[test]
    fn large_entries() {
        let m = IntMatrix::from_i64(&[
            &[i64::MAX, 3, 7],
            &[5, i64::MAX - 1, 11],
            &[13, 17, i64::MIN + 5],
        ]);
        check(&m);
    }

    proptest! {
        #[test]
        fn random_small_matrices(rows in 0usize..6, cols in 0usize..6, seed in proptest::collection::vec(-9i64..10, 36)) {
            let mut m = IntMatrix::zeros(rows, cols);
            for i in 0..rows {
                for j in 0..cols {
                    m[(i, j)] = Int::from(seed[i * 6 + j]);
                }
            }
            check(&m);
        }
    }
}
