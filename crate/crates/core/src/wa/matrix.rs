use crate::scalar::Rat;
use num_traits::Zero;

/// Square sparse matrix in row-major compressed form. Rows keep their
/// entries sorted by column and never store explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMat {
    n: usize,
    rows: Vec<Vec<(usize, Rat)>>,
}

impl SparseMat {
    pub fn zeros(n: usize) -> Self {
        SparseMat { n, rows: vec![Vec::new(); n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.rows[i].push((i, Rat::from_integer(1.into())));
        }
        m
    }

    pub fn from_dense(d: &[Vec<Rat>]) -> Self {
        let n = d.len();
        let rows = d
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(|(j, v)| (j, v.clone()))
                    .collect()
            })
            .collect();
        SparseMat { n, rows }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rat>> {
        let mut d = vec![vec![Rat::zero(); self.n]; self.n];
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row {
                d[i][*j] = v.clone();
            }
        }
        d
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn row(&self, i: usize) -> &[(usize, Rat)] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Rat {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => self.rows[i][k].1.clone(),
            Err(_) => Rat::zero(),
        }
    }

    /// Adds `v` to entry (i, j).
    pub fn add_at(&mut self, i: usize, j: usize, v: Rat) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[i];
        match row.binary_search_by_key(&j, |(c, _)| *c) {
            Ok(k) => {
                row[k].1 += v;
                if row[k].1.is_zero() {
                    row.remove(k);
                }
            }
            Err(k) => row.insert(k, (j, v)),
        }
    }

    pub fn scaled(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zeros(self.n);
        }
        SparseMat {
            n: self.n,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect())
                .collect(),
        }
    }

    /// `self += other` (same dimension).
    pub fn add_assign(&mut self, other: &SparseMat) {
        assert_eq!(self.n, other.n, "dimension mismatch");
        for (i, row) in other.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            if self.rows[i].is_empty() {
                self.rows[i] = row.clone();
                continue;
            }
            let mine = std::mem::take(&mut self.rows[i]);
            self.rows[i] = merge_rows(mine, row);
        }
    }

    /// Block-diagonal `diag(self, other)`.
    pub fn direct_sum(&self, other: &SparseMat) -> Self {
        let mut rows = self.rows.clone();
        for r in &other.rows {
            rows.push(r.iter().map(|(j, v)| (j + self.n, v.clone())).collect());
        }
        SparseMat { n: self.n + other.n, rows }
    }

    /// Kronecker product; index (a, b) maps to `a * dim(other) + b`.
    pub fn kron(&self, other: &SparseMat) -> Self {
        let m = other.n;
        let mut rows = Vec::with_capacity(self.n * m);
        for ra in &self.rows {
            for rb in &other.rows {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, va) in ra {
                    for (jb, vb) in rb {
                        row.push((ja * m + jb, va * vb));
                    }
                }
                rows.push(row);
            }
        }
        SparseMat { n: self.n * m, rows }
    }

    /// Row vector times matrix: `vᵀ · self`.
    pub fn vec_mul(&self, v: &[Rat]) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); self.n];
        self.vec_mul_into(v, &Rat::from_integer(1.into()), &mut out);
        out
    }

    /// `out += c · (vᵀ · self)`.
    pub fn vec_mul_into(&self, v: &[Rat], c: &Rat, out: &mut [Rat]) {
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() || self.rows[i].is_empty() {
                continue;
            }
            let s = vi * c;
            for (j, a) in &self.rows[i] {
                out[*j] += &s * a;
            }
        }
    }

    /// Matrix times column vector: `self · v`.
    pub fn mul_vec(&self, v: &[Rat]) -> Vec<Rat> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .fold(Rat::zero(), |acc, (j, a)| if v[*j].is_zero() { acc } else { acc + a * &v[*j] })
            })
            .collect()
    }
}

fn merge_rows(a: Vec<(usize, Rat)>, b: &[(usize, Rat)]) -> Vec<(usize, Rat)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut ia = a.into_iter().peekable();
    let mut ib = b.iter().peekable();
    loop {
        match (ia.peek(), ib.peek()) {
            (Some((ja, _)), Some((jb, _))) if ja == jb => {
                let (j, va) = ia.next().unwrap();
                let (_, vb) = ib.next().unwrap();
                let s = va + vb;
                if !s.is_zero() {
                    out.push((j, s));
                }
            }
            (Some((ja, _)), Some((jb, _))) => {
                if ja < jb {
                    out.push(ia.next().unwrap());
                } else {
                    out.push(ib.next().unwrap().clone());
                }
            }
            (Some(_), None) => out.push(ia.next().unwrap()),
            (None, Some(_)) => out.push(ib.next().unwrap().clone()),
            (None, None) => break,
        }
    }
    out
}
