//! Almost alternating matrices `rho = [X Y]`, the bordered alternating
//! matrix `T = [[X, Y], [-Y^t, 0]]`, and the ideal `J(rho)` generated by the
//! Pfaffians of the principal submatrices of `T` that contain `X`.

use std::collections::HashMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::MultiPoly;
use crate::series::ProblemShape;

/// Largest matrix size the subset-memoized Pfaffian accepts.
pub const MAX_PFAFFIAN_SIZE: usize = 63;

/// Coefficient range for random instances.
pub const RANDOM_COEFF_RANGE: std::ops::RangeInclusive<i64> = -3..=3;

/// Commutative ring element usable as a matrix entry.
pub trait RingEntry:
    Clone
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + for<'a> Add<&'a Self, Output = Self>
    + for<'a> Sub<&'a Self, Output = Self>
    + for<'a> Mul<&'a Self, Output = Self>
{
}

impl<T> RingEntry for T where
    T: Clone
        + PartialEq
        + Zero
        + One
        + Neg<Output = T>
        + for<'a> Add<&'a T, Output = T>
        + for<'a> Sub<&'a T, Output = T>
        + for<'a> Mul<&'a T, Output = T>
{
}

/// Checks that `m` is square with zero diagonal and `m[i][j] = -m[j][i]`.
pub fn check_alternating<T: RingEntry>(m: &[Vec<T>]) -> Result<()> {
    let size = m.len();
    for (i, row) in m.iter().enumerate() {
        if row.len() != size {
            return Err(Error::MalformedMatrix(format!(
                "row {} has {} entries, expected {size}",
                i + 1,
                row.len()
            )));
        }
    }
    for i in 0..size {
        if !m[i][i].is_zero() {
            return Err(Error::NotAlternating {
                row: i + 1,
                col: i + 1,
                detail: "diagonal entry is nonzero".into(),
            });
        }
        for j in i + 1..size {
            if m[i][j] != -m[j][i].clone() {
                return Err(Error::NotAlternating {
                    row: j + 1,
                    col: i + 1,
                    detail: format!("entry is not the negative of entry ({}, {})", i + 1, j + 1),
                });
            }
        }
    }
    Ok(())
}

/// Pfaffian of an alternating matrix of even size, expanding along the
/// first row: `Pf(m) = sum_{j>=2} (-1)^j m[1][j] Pf(m minus rows/cols 1, j)`,
/// `Pf([]) = 1`.
pub fn pfaffian<T: RingEntry>(m: &[Vec<T>]) -> Result<T> {
    check_alternating(m)?;
    let size = m.len();
    if size % 2 == 1 {
        return Err(Error::OddSize(size));
    }
    if size > MAX_PFAFFIAN_SIZE {
        return Err(Error::Budget(format!("Pfaffian of size {size}")));
    }
    let full = if size == 0 {
        0
    } else {
        u64::MAX >> (64 - size)
    };
    Ok(PfaffianMemo::new(m).pfaffian_of(full))
}

/// Pfaffians of principal submatrices of one fixed alternating matrix,
/// memoized on the index subset.
pub struct PfaffianMemo<'a, T> {
    m: &'a [Vec<T>],
    memo: HashMap<u64, T>,
}

impl<'a, T: RingEntry> PfaffianMemo<'a, T> {
    /// `m` must already be alternating.
    pub fn new(m: &'a [Vec<T>]) -> Self {
        PfaffianMemo {
            m,
            memo: HashMap::new(),
        }
    }

    /// Pfaffian of the principal submatrix on the rows/columns set in `mask`.
    pub fn pfaffian_of(&mut self, mask: u64) -> T {
        if mask == 0 {
            return T::one();
        }
        if mask.count_ones() % 2 == 1 {
            return T::zero();
        }
        if let Some(v) = self.memo.get(&mask) {
            return v.clone();
        }
        let first = mask.trailing_zeros() as usize;
        let rest = mask & !(1u64 << first);
        let mut acc = T::zero();
        let mut bits = rest;
        let mut position = 1;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            position += 1;
            let entry = &self.m[first][j];
            if entry.is_zero() {
                continue;
            }
            let minor = self.pfaffian_of(rest & !(1u64 << j));
            let term = entry.clone() * &minor;
            acc = if position % 2 == 0 {
                acc + &term
            } else {
                acc - &term
            };
        }
        self.memo.insert(mask, acc.clone());
        acc
    }
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let size = m.len();
    if size == 0 {
        return BigInt::one();
    }
    let mut a: Vec<Vec<BigInt>> = m.to_vec();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..size - 1 {
        if a[k][k].is_zero() {
            let Some(p) = (k + 1..size).find(|&r| !a[r][k].is_zero()) else {
                return BigInt::zero();
            };
            a.swap(k, p);
            negate = !negate;
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let d = a[size - 1][size - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Homogeneous linear form `sum c_i x_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    coeffs: Vec<BigRational>,
}

impl LinearForm {
    pub fn new(coeffs: Vec<BigRational>) -> Self {
        LinearForm { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(
            coeffs
                .iter()
                .map(|&c| BigRational::from_integer(c.into()))
                .collect(),
        )
    }

    pub fn zero(nvars: usize) -> Self {
        LinearForm {
            coeffs: vec![BigRational::zero(); nvars],
        }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn to_poly(&self) -> MultiPoly {
        MultiPoly::linear(&self.coeffs)
    }
}

impl Neg for &LinearForm {
    type Output = LinearForm;
    fn neg(self) -> LinearForm {
        LinearForm {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// `n x (n + t)` matrix of linear forms whose left `n x n` block is alternating.
#[derive(Clone, Debug, PartialEq)]
pub struct AlmostAlternatingMatrix {
    shape: ProblemShape,
    var_names: Vec<String>,
    entries: Vec<Vec<LinearForm>>,
}

impl AlmostAlternatingMatrix {
    pub fn new(
        shape: ProblemShape,
        var_names: Vec<String>,
        entries: Vec<Vec<LinearForm>>,
    ) -> Result<Self> {
        let (n, t) = (shape.n() as usize, shape.t() as usize);
        let d = var_names.len();
        if d == 0 {
            return Err(Error::MalformedMatrix("no variables".into()));
        }
        if entries.len() != n {
            return Err(Error::MalformedMatrix(format!(
                "expected {n} rows, found {}",
                entries.len()
            )));
        }
        for (i, row) in entries.iter().enumerate() {
            if row.len() != n + t {
                return Err(Error::MalformedMatrix(format!(
                    "row {} has {} entries, expected {}",
                    i + 1,
                    row.len(),
                    n + t
                )));
            }
            for (j, e) in row.iter().enumerate() {
                if e.coeffs.len() != d {
                    return Err(Error::MalformedMatrix(format!(
                        "entry ({}, {}) has {} coefficients for {d} variables",
                        i + 1,
                        j + 1,
                        e.coeffs.len()
                    )));
                }
            }
        }
        for i in 0..n {
            if !entries[i][i].is_zero() {
                return Err(Error::NotAlternating {
                    row: i + 1,
                    col: i + 1,
                    detail: "diagonal entry of X is nonzero".into(),
                });
            }
            for j in i + 1..n {
                if entries[j][i] != -&entries[i][j] {
                    return Err(Error::NotAlternating {
                        row: j + 1,
                        col: i + 1,
                        detail: format!(
                            "X entry is not the negative of entry ({}, {})",
                            i + 1,
                            j + 1
                        ),
                    });
                }
            }
        }
        Ok(AlmostAlternatingMatrix {
            shape,
            var_names,
            entries,
        })
    }

    pub fn shape(&self) -> ProblemShape {
        self.shape
    }

    pub fn nvars(&self) -> usize {
        self.var_names.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn entry(&self, row: usize, col: usize) -> &LinearForm {
        &self.entries[row][col]
    }

    pub fn rows(&self) -> &[Vec<LinearForm>] {
        &self.entries
    }

    /// The alternating block `X`.
    pub fn x_block(&self) -> Vec<Vec<LinearForm>> {
        let n = self.shape.n() as usize;
        self.entries.iter().map(|r| r[..n].to_vec()).collect()
    }

    /// The `n x t` block `Y`.
    pub fn y_block(&self) -> Vec<Vec<LinearForm>> {
        let n = self.shape.n() as usize;
        self.entries.iter().map(|r| r[n..].to_vec()).collect()
    }
}

/// `T = [[X, Y], [-Y^t, 0]]`.
#[derive(Clone, Debug, PartialEq)]
pub struct AssociatedAlternating {
    entries: Vec<Vec<LinearForm>>,
}

impl AssociatedAlternating {
    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> &LinearForm {
        &self.entries[row][col]
    }

    pub fn to_polys(&self) -> Vec<Vec<MultiPoly>> {
        self.entries
            .iter()
            .map(|r| r.iter().map(LinearForm::to_poly).collect())
            .collect()
    }
}

pub fn build_t(rho: &AlmostAlternatingMatrix) -> Result<AssociatedAlternating> {
    let n = rho.shape.n() as usize;
    let size = n + rho.shape.t() as usize;
    let d = rho.nvars();
    let mut entries = vec![vec![LinearForm::zero(d); size]; size];
    for i in 0..n {
        for j in 0..size {
            entries[i][j] = rho.entries[i][j].clone();
        }
        for j in n..size {
            entries[j][i] = -&rho.entries[i][j];
        }
    }
    let t = AssociatedAlternating { entries };
    check_alternating(&t.to_polys())?;
    Ok(t)
}

/// One Pfaffian generator of `J(rho)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    /// 1-based columns of `T` beyond `X`, a subset of `n+1..=n+t`.
    pub column_subset: Vec<usize>,
    pub pfaffian: MultiPoly,
    /// `(n + |S|) / 2`.
    pub degree: u32,
    /// Set when the Pfaffian vanishes identically (non-generic instance).
    pub is_zero: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct IdealGenerators {
    pub gens: Vec<Generator>,
}

impl IdealGenerators {
    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn has_zero(&self) -> bool {
        self.gens.iter().any(|g| g.is_zero)
    }

    pub fn polys(&self) -> Vec<MultiPoly> {
        self.gens.iter().map(|g| g.pfaffian.clone()).collect()
    }

    /// Generator degrees in ascending order.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.gens.iter().map(|g| g.degree).collect();
        d.sort_unstable();
        d
    }
}

/// Pfaffians of the principal submatrices of `T` on `{1..n} ∪ S` for every
/// `S ⊆ {n+1..n+t}` with `n + |S|` even and `|S| <= n`, ordered by `|S|`
/// then lexicographically. Subsets with `|S| > n` are skipped: their
/// submatrix has a zero block larger than half its size, so the Pfaffian
/// vanishes for every `rho`.
pub fn ideal_generators(rho: &AlmostAlternatingMatrix) -> Result<IdealGenerators> {
    let t_mat = build_t(rho)?;
    let n = rho.shape.n() as usize;
    let t = rho.shape.t() as usize;
    if n + t > MAX_PFAFFIAN_SIZE {
        return Err(Error::Budget(format!("bordered matrix of size {}", n + t)));
    }
    let polys = t_mat.to_polys();
    let mut memo = PfaffianMemo::new(&polys);
    let x_mask: u64 = if n == 0 { 0 } else { u64::MAX >> (64 - n) };

    let mut subsets: Vec<Vec<usize>> = (0u64..(1u64 << t))
        .filter(|s| {
            let k = s.count_ones() as usize;
            k <= n && (n + k).is_multiple_of(2)
        })
        .map(|s| (0..t).filter(|k| s & (1 << k) != 0).collect())
        .collect();
    subsets.sort_by(|a: &Vec<usize>, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));

    let gens = subsets
        .into_iter()
        .map(|s| {
            let mask = s.iter().fold(x_mask, |m, &k| m | (1u64 << (n + k)));
            let pf = memo.pfaffian_of(mask);
            Generator {
                column_subset: s.iter().map(|k| n + k + 1).collect(),
                degree: ((n + s.len()) / 2) as u32,
                is_zero: pf.is_zero(),
                pfaffian: pf,
            }
        })
        .collect();
    Ok(IdealGenerators { gens })
}

/// Seeded random instance: linear forms in `x1..xd` with integer
/// coefficients uniform in `[-3, 3]`. The upper triangle of `X` is drawn
/// row by row, then `Y` row by row.
pub fn random_generic_instance(
    shape: ProblemShape,
    ambient_dim: usize,
    seed: u64,
) -> Result<AlmostAlternatingMatrix> {
    if ambient_dim == 0 {
        return Err(Error::OutOfRange(
            "ambient dimension must be positive".into(),
        ));
    }
    let (n, t) = (shape.n() as usize, shape.t() as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let draw = |rng: &mut ChaCha8Rng| {
        LinearForm::new(
            (0..ambient_dim)
                .map(|_| BigRational::from_integer(rng.gen_range(RANDOM_COEFF_RANGE).into()))
                .collect(),
        )
    };
    let mut entries = vec![vec![LinearForm::zero(ambient_dim); n + t]; n];
    for i in 0..n {
        for j in i + 1..n {
            let f = draw(&mut rng);
            entries[j][i] = -&f;
            entries[i][j] = f;
        }
    }
    for row in entries.iter_mut() {
        for e in row[n..].iter_mut() {
            *e = draw(&mut rng);
        }
    }
    let names = (1..=ambient_dim).map(|i| format!("x{i}")).collect();
    AlmostAlternatingMatrix::new(shape, names, entries)
}

/// On-disk matrix format.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: i64,
    pub t: i64,
    pub vars: Vec<String>,
    /// `entries[i][j][k]` is the coefficient of `vars[k]` in `rho[i][j]`:
    /// a JSON integer or a string such as `"-3/2"`.
    pub entries: Vec<Vec<Vec<serde_json::Value>>>,
}

fn parse_coeff(v: &serde_json::Value, at: (usize, usize)) -> Result<BigRational> {
    let text = match v {
        serde_json::Value::Number(n) => n.to_string(),
        serde_json::Value::String(s) => s.trim().to_string(),
        other => {
            return Err(Error::MalformedMatrix(format!(
                "entry ({}, {}): coefficient {other} is not a number",
                at.0 + 1,
                at.1 + 1
            )))
        }
    };
    let bad = || {
        Error::MalformedMatrix(format!(
            "entry ({}, {}): cannot parse coefficient {text:?}",
            at.0 + 1,
            at.1 + 1
        ))
    };
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => Ok(BigRational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

fn render_coeff(c: &BigRational) -> serde_json::Value {
    if c.is_integer() {
        serde_json::Value::Number(c.to_integer().to_string().parse().expect("integer literal"))
    } else {
        serde_json::Value::String(format!("{}/{}", c.numer(), c.denom()))
    }
}

impl MatrixFile {
    pub fn into_matrix(self) -> Result<AlmostAlternatingMatrix> {
        let shape = ProblemShape::new(self.n, self.t)?;
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, cs)| {
                        cs.iter()
                            .map(|c| parse_coeff(c, (i, j)))
                            .collect::<Result<Vec<_>>>()
                            .map(LinearForm::new)
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        AlmostAlternatingMatrix::new(shape, self.vars, entries)
    }

    pub fn from_matrix(rho: &AlmostAlternatingMatrix) -> Self {
        MatrixFile {
            n: rho.shape.n() as i64,
            t: rho.shape.t() as i64,
            vars: rho.var_names.clone(),
            entries: rho
                .entries
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|e| e.coeffs.iter().map(render_coeff).collect())
                        .collect()
                })
                .collect(),
        }
    }
}

pub fn parse_matrix_json(text: &str) -> Result<AlmostAlternatingMatrix> {
    let file: MatrixFile = serde_json::from_str(text)?;
    file.into_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(n: i64, t: i64) -> ProblemShape {
        ProblemShape::new(n, t).unwrap()
    }

    fn bi(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn var(i: usize, d: usize) -> MultiPoly {
        MultiPoly::var(i, d)
    }

    /// Fully generic alternating matrix: entry (i, j), i < j, is its own variable.
    type Indexed = (Vec<Vec<MultiPoly>>, HashMap<(usize, usize), usize>);

    fn generic_alternating(size: usize) -> Indexed {
        let mut index = HashMap::new();
        for i in 0..size {
            for j in i + 1..size {
                let k = index.len();
                index.insert((i, j), k);
            }
        }
        let d = index.len();
        let mut m = vec![vec![MultiPoly::zero_in(d); size]; size];
        for (&(i, j), &k) in &index {
            m[i][j] = var(k, d);
            m[j][i] = -var(k, d);
        }
        (m, index)
    }

    #[test]
    fn two_by_two() {
        let a = var(0, 1);
        let m = vec![
            vec![MultiPoly::zero_in(1), a.clone()],
            vec![-a.clone(), MultiPoly::zero_in(1)],
        ];
        assert_eq!(pfaffian(&m).unwrap(), a);
    }

    #[test]
    fn four_by_four_expansion() {
        let (m, idx) = generic_alternating(4);
        let d = idx.len();
        let e = |i: usize, j: usize| var(idx[&(i, j)], d);
        let expected = &(&(&e(0, 1) * &e(2, 3)) - &(&e(0, 2) * &e(1, 3))) + &(&e(0, 3) * &e(1, 2));
        assert_eq!(pfaffian(&m).unwrap(), expected);
    }

    #[test]
    fn zero_and_empty() {
        let z = vec![vec![BigInt::zero(); 6]; 6];
        assert!(pfaffian(&z).unwrap().is_zero());
        let empty: Vec<Vec<BigInt>> = Vec::new();
        assert_eq!(pfaffian(&empty).unwrap(), bi(1));
    }

    #[test]
    fn rejects_odd_and_non_alternating() {
        let z = vec![vec![BigInt::zero(); 3]; 3];
        assert!(matches!(pfaffian(&z), Err(Error::OddSize(3))));
        let bad = vec![vec![bi(0), bi(1)], vec![bi(1), bi(0)]];
        assert!(matches!(
            pfaffian(&bad),
            Err(Error::NotAlternating { row: 2, col: 1, .. })
        ));
        let diag = vec![vec![bi(1), bi(0)], vec![bi(0), bi(0)]];
        assert!(matches!(
            pfaffian(&diag),
            Err(Error::NotAlternating { row: 1, col: 1, .. })
        ));
    }

    #[test]
    fn determinant_small() {
        let m = vec![vec![bi(2), bi(1)], vec![bi(7), bi(4)]];
        assert_eq!(determinant(&m), bi(1));
        let m = vec![
            vec![bi(0), bi(1), bi(2)],
            vec![bi(3), bi(0), bi(4)],
            vec![bi(5), bi(6), bi(0)],
        ];
        // 0 - 1*(0 - 20) + 2*(18 - 0) = 56
        assert_eq!(determinant(&m), bi(56));
        let sing = vec![vec![bi(1), bi(2)], vec![bi(2), bi(4)]];
        assert_eq!(determinant(&sing), bi(0));
    }

    fn matrix_2x1() -> AlmostAlternatingMatrix {
        // vars x, y1, y2
        let x = LinearForm::from_i64s(&[1, 0, 0]);
        let y1 = LinearForm::from_i64s(&[0, 1, 0]);
        let y2 = LinearForm::from_i64s(&[0, 0, 1]);
        let z = LinearForm::zero(3);
        AlmostAlternatingMatrix::new(
            shape(2, 1),
            vec!["x".into(), "y1".into(), "y2".into()],
            vec![vec![z.clone(), x.clone(), y1], vec![-&x, z, y2]],
        )
        .unwrap()
    }

    #[test]
    fn build_t_blocks() {
        let rho = matrix_2x1();
        let t = build_t(&rho).unwrap();
        assert_eq!(t.size(), 3);
        assert_eq!(t.entry(0, 2), &LinearForm::from_i64s(&[0, 1, 0]));
        assert_eq!(t.entry(1, 2), &LinearForm::from_i64s(&[0, 0, 1]));
        assert_eq!(t.entry(2, 0), &LinearForm::from_i64s(&[0, -1, 0]));
        assert!(t.entry(2, 2).is_zero());
    }

    #[test]
    fn build_t_zero_y() {
        let x = LinearForm::from_i64s(&[1]);
        let z = LinearForm::zero(1);
        let rho = AlmostAlternatingMatrix::new(
            shape(2, 2),
            vec!["x".into()],
            vec![
                vec![z.clone(), x.clone(), z.clone(), z.clone()],
                vec![-&x, z.clone(), z.clone(), z.clone()],
            ],
        )
        .unwrap();
        let t = build_t(&rho).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                let inside_x = i < 2 && j < 2;
                assert_eq!(t.entry(i, j), if inside_x { rho.entry(i, j) } else { &z });
            }
        }
    }

    #[test]
    fn generators_2x1() {
        let rho = matrix_2x1();
        let g = ideal_generators(&rho).unwrap();
        assert_eq!(g.len(), 1);
        assert!(g.gens[0].column_subset.is_empty());
        assert_eq!(g.gens[0].pfaffian, var(0, 3));
        assert_eq!(g.gens[0].degree, 1);
    }

    #[test]
    fn generators_2x2() {
        // vars x, y11, y12, y21, y22
        let d = 5;
        let lf = |k: usize| {
            let mut c = vec![0; d];
            c[k] = 1;
            LinearForm::from_i64s(&c)
        };
        let z = LinearForm::zero(d);
        let rho = AlmostAlternatingMatrix::new(
            shape(2, 2),
            ["x", "y11", "y12", "y21", "y22"].map(String::from).to_vec(),
            vec![
                vec![z.clone(), lf(0), lf(1), lf(2)],
                vec![-&lf(0), z.clone(), lf(3), lf(4)],
            ],
        )
        .unwrap();
        let g = ideal_generators(&rho).unwrap();
        assert_eq!(g.len(), 2);
        assert_eq!(g.gens[0].pfaffian, var(0, d));
        assert_eq!(g.gens[1].column_subset, vec![3, 4]);
        let expected = &(&var(2, d) * &var(3, d)) - &(&var(1, d) * &var(4, d));
        assert_eq!(g.gens[1].pfaffian, expected);
        assert_eq!(g.degrees(), vec![1, 2]);
    }

    #[test]
    fn generators_3x3_census() {
        let rho = random_generic_instance(shape(3, 3), 5, 11).unwrap();
        let g = ideal_generators(&rho).unwrap();
        assert_eq!(g.degrees(), vec![2, 2, 2, 3]);
        assert!(!g.has_zero());
        for gen in &g.gens {
            assert_eq!(gen.pfaffian.homogeneous_degree(), Some(gen.degree));
        }
    }

    #[test]
    fn oversized_subsets_vanish_and_are_skipped() {
        let rho = random_generic_instance(shape(1, 3), 4, 2).unwrap();
        let polys = build_t(&rho).unwrap().to_polys();
        // {1, 2, 3, 4}: a 3x3 zero block inside a 4x4 matrix
        assert!(PfaffianMemo::new(&polys).pfaffian_of(0b1111).is_zero());
        let g = ideal_generators(&rho).unwrap();
        assert_eq!(g.degrees(), vec![1, 1, 1]);
        assert!(!g.has_zero());
    }

    #[test]
    fn random_instance_contract() {
        let a = random_generic_instance(shape(3, 2), 4, 99).unwrap();
        let b = random_generic_instance(shape(3, 2), 4, 99).unwrap();
        assert_eq!(a, b);
        let c = random_generic_instance(shape(3, 2), 4, 100).unwrap();
        assert_ne!(a, c);

        let r = random_generic_instance(shape(2, 1), 2, 5).unwrap();
        assert!(r.entry(0, 0).is_zero() && r.entry(1, 1).is_zero());
        assert_eq!(r.entry(1, 0), &-r.entry(0, 1));
        for row in r.rows() {
            for e in row {
                for c in e.coeffs() {
                    let v = c.to_integer();
                    assert!(v >= bi(-3) && v <= bi(3));
                }
            }
        }
    }

    #[test]
    fn matrix_json_round_trip_and_errors() {
        let rho = random_generic_instance(shape(2, 2), 3, 1).unwrap();
        let text = serde_json::to_string(&MatrixFile::from_matrix(&rho)).unwrap();
        assert_eq!(parse_matrix_json(&text).unwrap(), rho);

        let bad = r#"{"n":2,"t":1,"vars":["x"],"entries":[[[0],[1],[0]],[[1],[0],[0]]]}"#;
        match parse_matrix_json(bad) {
            Err(Error::NotAlternating { row, col, .. }) => assert_eq!((row, col), (2, 1)),
            other => panic!("unexpected {other:?}"),
        }
        let frac = r#"{"n":2,"t":1,"vars":["x"],"entries":[[[0],["1/2"],[3]],[["-1/2"],[0],[1]]]}"#;
        let m = parse_matrix_json(frac).unwrap();
        assert_eq!(m.entry(0, 1).coeffs()[0], BigRational::new(bi(1), bi(2)));
        let short = r#"{"n":2,"t":1,"vars":["x"],"entries":[[[0],[1],[0]]]}"#;
        assert!(matches!(
            parse_matrix_json(short),
            Err(Error::MalformedMatrix(_))
        ));
    }
}
