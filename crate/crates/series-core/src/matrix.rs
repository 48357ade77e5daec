//! Square matrices of series.

use num_traits::Zero;

use crate::poly::Poly;
use crate::rational::{rat, Rational};
use crate::series::Series;
use crate::symbol::Symbol;
use crate::trunc::TruncationSpec;
use crate::SeriesError;

/// `r x r` matrix of series sharing one truncation box.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesMatrix {
    r: usize,
    trunc: TruncationSpec,
    entries: Vec<Series>,
}

impl SeriesMatrix {
    pub fn from_fn(r: usize, trunc: TruncationSpec, mut f: impl FnMut(usize, usize) -> Series) -> Result<Self, SeriesError> {
        let mut entries = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                let e = f(i, j);
                if e.trunc() != trunc {
                    return Err(SeriesError::TruncMismatch(e.trunc(), trunc));
                }
                entries.push(e);
            }
        }
        Ok(SeriesMatrix { r, trunc, entries })
    }

    pub fn zero(r: usize, trunc: TruncationSpec) -> Self {
        SeriesMatrix { r, trunc, entries: vec![Series::zero(trunc); r * r] }
    }

    pub fn identity(r: usize, trunc: TruncationSpec) -> Self {
        let mut m = Self::zero(r, trunc);
        for i in 0..r {
            m.entries[i * r + i] = Series::one(trunc);
        }
        m
    }

    /// The symmetric matrix `S = (s_ij)`.
    pub fn s_matrix(r: usize, trunc: TruncationSpec) -> Self {
        Self::from_fn(r, trunc, |i, j| Series::var(Symbol::s(i, j), trunc)).expect("uniform trunc")
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn trunc(&self) -> TruncationSpec {
        self.trunc
    }

    pub fn get(&self, i: usize, j: usize) -> &Series {
        &self.entries[i * self.r + j]
    }

    pub fn entries(&self) -> &[Series] {
        &self.entries
    }

    fn check(&self, other: &SeriesMatrix) -> Result<(), SeriesError> {
        if self.r != other.r {
            return Err(SeriesError::Shape(format!("{}x{} vs {}x{}", self.r, self.r, other.r, other.r)));
        }
        if self.trunc != other.trunc {
            return Err(SeriesError::TruncMismatch(self.trunc, other.trunc));
        }
        Ok(())
    }

    pub fn add(&self, other: &SeriesMatrix) -> Result<SeriesMatrix, SeriesError> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.add(b)).collect::<Result<_, _>>()?;
        Ok(SeriesMatrix { r: self.r, trunc: self.trunc, entries })
    }

    pub fn sub(&self, other: &SeriesMatrix) -> Result<SeriesMatrix, SeriesError> {
        self.check(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a.sub(b)).collect::<Result<_, _>>()?;
        Ok(SeriesMatrix { r: self.r, trunc: self.trunc, entries })
    }

    pub fn scale(&self, c: &Rational) -> SeriesMatrix {
        SeriesMatrix { r: self.r, trunc: self.trunc, entries: self.entries.iter().map(|e| e.scale(c)).collect() }
    }

    pub fn mul(&self, other: &SeriesMatrix) -> Result<SeriesMatrix, SeriesError> {
        self.check(other)?;
        let r = self.r;
        let t = self.trunc;
        let keep = |m: &crate::monomial::Monomial| t.admits(m);
        let mut entries = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                let mut acc = Poly::zero();
                for k in 0..r {
                    acc.add_assign(&self.get(i, k).poly().mul_filtered(other.get(k, j).poly(), &keep));
                }
                entries.push(Series::new(acc, t)?);
            }
        }
        if self.entries.iter().chain(&other.entries).any(|e| e.poly().min_hbar().is_some_and(|h| h < 0)) {
            return Err(SeriesError::InsufficientPrecision("matrix product of Laurent entries".into()));
        }
        Ok(SeriesMatrix { r, trunc: t, entries })
    }

    pub fn trace(&self) -> Series {
        let mut acc = Poly::zero();
        for i in 0..self.r {
            acc.add_assign(self.get(i, i).poly());
        }
        Series::new(acc, self.trunc).expect("entries admitted")
    }

    pub fn transpose(&self) -> SeriesMatrix {
        let r = self.r;
        let mut entries = Vec::with_capacity(r * r);
        for i in 0..r {
            for j in 0..r {
                entries.push(self.get(j, i).clone());
            }
        }
        SeriesMatrix { r, trunc: self.trunc, entries }
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.transpose()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Series::is_zero)
    }

    pub fn restrict(&self, t: TruncationSpec) -> Result<SeriesMatrix, SeriesError> {
        let entries = self.entries.iter().map(|e| e.restrict(t)).collect::<Result<_, _>>()?;
        Ok(SeriesMatrix { r: self.r, trunc: t, entries })
    }

    fn require_no_constant(&self, op: &str) -> Result<(), SeriesError> {
        for e in &self.entries {
            if !e.poly().constant_term().is_zero() {
                return Err(SeriesError::ConstantTerm(op.into()));
            }
            for (m, _) in e.poly().terms() {
                if m.x_degree() + m.s_degree() == 0 {
                    return Err(SeriesError::NonTerminating { op: op.into(), monomial: m.to_string() });
                }
            }
        }
        Ok(())
    }

    /// Powers `M, M^2, ...` until they vanish in the box.
    fn powers(&self, op: &str) -> Result<Vec<SeriesMatrix>, SeriesError> {
        self.require_no_constant(op)?;
        let mut out = Vec::new();
        let mut p = self.clone();
        while !p.is_zero() {
            let next = p.mul(self)?;
            out.push(p);
            p = next;
        }
        Ok(out)
    }

    /// `(E - M)^{-1} = E + M + M^2 + ...`, verified against `(E - M) X = E`.
    pub fn geom_inverse(&self) -> Result<SeriesMatrix, SeriesError> {
        let e = SeriesMatrix::identity(self.r, self.trunc);
        let mut acc = e.clone();
        for p in self.powers("matrix_geom_inverse")? {
            acc = acc.add(&p)?;
        }
        let check = e.sub(self)?.mul(&acc)?;
        if check != e {
            return Err(SeriesError::Shape("geometric inverse failed its own check".into()));
        }
        Ok(acc)
    }

    /// `tr ln(E - M) = -sum_k tr(M^k)/k`.
    pub fn trace_log(&self) -> Result<Series, SeriesError> {
        let mut acc = Series::zero(self.trunc);
        for (k, p) in self.powers("trace_log")?.iter().enumerate() {
            acc = acc.sub(&p.trace().scale(&rat(1, k as i64 + 1)))?;
        }
        Ok(acc)
    }

    /// Determinant by cofactor expansion (small r only).
    pub fn det(&self) -> Result<Series, SeriesError> {
        let r = self.r;
        if r == 0 {
            return Ok(Series::one(self.trunc));
        }
        let idx: Vec<usize> = (0..r).collect();
        det_rec(self, &idx, &idx)
    }
}

fn det_rec(m: &SeriesMatrix, rows: &[usize], cols: &[usize]) -> Result<Series, SeriesError> {
    if rows.len() == 1 {
        return Ok(m.get(rows[0], cols[0]).clone());
    }
    let mut acc = Series::zero(m.trunc);
    for (k, &c) in cols.iter().enumerate() {
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = det_rec(m, &rows[1..], &sub_cols)?;
        let term = m.get(rows[0], c).mul(&minor)?;
        acc = if k % 2 == 0 { acc.add(&term)? } else { acc.sub(&term)? };
    }
    Ok(acc)
}

/// Vector of series sharing a box.
pub type SeriesVector = Vec<Series>;

/// `M v` for a matrix and a vector.
pub fn mat_vec(m: &SeriesMatrix, v: &[Series]) -> Result<SeriesVector, SeriesError> {
    let r = m.r();
    if v.len() != r {
        return Err(SeriesError::Shape(format!("matrix {r}x{r} times vector of length {}", v.len())));
    }
    let t = m.trunc();
    let keep = |mm: &crate::monomial::Monomial| t.admits(mm);
    (0..r)
        .map(|i| {
            let mut acc = Poly::zero();
            for (k, vk) in v.iter().enumerate() {
                if vk.trunc() != t {
                    return Err(SeriesError::TruncMismatch(vk.trunc(), t));
                }
                acc.add_assign(&m.get(i, k).poly().mul_filtered(vk.poly(), &keep));
            }
            Series::new(acc, t)
        })
        .collect()
}
