//! Dense linear algebra over a prime field and over the integers.

/// Arithmetic in `F_p` for a prime `p < 2^31`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        Self { p }
    }

    pub fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    pub fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.p - b % self.p) % self.p
    }

    pub fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn neg(self, a: u64) -> u64 {
        (self.p - a % self.p) % self.p
    }

    pub fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    pub fn inv(self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// From a signed integer.
    pub fn of(self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    /// The smallest generator of `F_p^×`.
    pub fn primitive_root(self) -> u64 {
        let order = self.p - 1;
        let factors: Vec<u64> = (2..=order).filter(|&d| order % d == 0 && is_prime(d)).collect();
        (1..self.p)
            .find(|&g| factors.iter().all(|&f| self.pow(g, order / f) != 1))
            .expect("cyclic group has a generator")
    }
}

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

pub fn next_prime(mut p: u64) -> u64 {
    p += 1;
    while !is_prime(p) {
        p += 1;
    }
    p
}

pub type Mat = Vec<Vec<u64>>;

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(f: Fp, a: &mut Mat) -> Vec<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, pr);
        let inv = f.inv(a[r][c]);
        for x in a[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows {
            if i != r && a[i][c] != 0 {
                let k = a[i][c];
                for j in 0..cols {
                    let t = f.mul(k, a[r][j]);
                    a[i][j] = f.sub(a[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank(f: Fp, a: &Mat) -> usize {
    let mut b = a.clone();
    rref(f, &mut b).len()
}

/// A basis of `{x : A x = 0}` for an `rows × cols` matrix.
pub fn nullspace(f: Fp, a: &Mat, cols: usize) -> Vec<Vec<u64>> {
    let mut b = a.clone();
    if b.is_empty() {
        return (0..cols).map(|c| (0..cols).map(|j| u64::from(j == c)).collect()).collect();
    }
    let pivots = rref(f, &mut b);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(b[r][fc]);
            }
            v
        })
        .collect()
}

pub fn mat_mul(f: Fp, a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(0, |acc, k| f.add(acc, f.mul(row[k], b[k][j]))))
                .collect()
        })
        .collect()
}

pub fn identity(k: usize) -> Mat {
    (0..k).map(|i| (0..k).map(|j| u64::from(i == j)).collect()).collect()
}

/// Inverse of a square matrix, `None` if singular.
pub fn mat_inverse(f: Fp, a: &Mat) -> Option<Mat> {
    let k = a.len();
    if k == 0 {
        return Some(Vec::new());
    }
    let mut aug: Mat = a.iter().enumerate().map(|(i, row)| {
        let mut r = row.clone();
        r.extend((0..k).map(|j| u64::from(i == j)));
        r
    }).collect();
    let pivots = rref(f, &mut aug);
    if pivots.len() < k || pivots[k - 1] != k - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[k..].to_vec()).collect())
}

/// Exact integer matrices.
pub type IMat = Vec<Vec<i64>>;

pub fn imat_mul(a: &IMat, b: &IMat) -> IMat {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(0i64, |acc, k| {
                        acc.checked_add(row[k].checked_mul(b[k][j]).expect("overflow")).expect("overflow")
                    })
                })
                .collect()
        })
        .collect()
}

pub fn imat_identity(k: usize) -> IMat {
    (0..k).map(|i| (0..k).map(|j| i64::from(i == j)).collect()).collect()
}

/// Inverse of an upper unitriangular integer matrix by back substitution.
pub fn unitriangular_inverse(a: &IMat) -> IMat {
    let n = a.len();
    let mut inv = imat_identity(n);
    for col in 0..n {
        for row in (0..col).rev() {
            let s: i64 = (row + 1..=col).map(|k| a[row][k] * inv[k][col]).sum();
            inv[row][col] = -s;
        }
    }
    inv
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(10007));
        assert_eq!(next_prime(10007), 10009);
        assert_eq!(Fp::new(7).primitive_root(), 3);
        assert_eq!(Fp::new(5).primitive_root(), 2);
    }

    #[test]
    fn nullspace_and_rank() {
        let f = Fp::new(5);
        let a: Mat = vec![vec![1, 2, 3], vec![2, 4, 2]];
        assert_eq!(rank(f, &a), 2);
        let ns = nullspace(f, &a, 3);
        assert_eq!(ns.len(), 1);
        for v in &ns {
            for row in &a {
                let dot = row.iter().zip(v).fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)));
                assert_eq!(dot, 0);
            }
        }
        assert_eq!(nullspace(f, &Vec::new(), 2).len(), 2);
    }

    #[test]
    fn unitriangular() {
        let a: IMat = vec![vec![1, 2, 3], vec![0, 1, 4], vec![0, 0, 1]];
        assert_eq!(imat_mul(&a, &unitriangular_inverse(&a)), imat_identity(3));
    }
}
