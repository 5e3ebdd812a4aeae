//! Contravariant form on `V(k,i)` and reduction modulo its radical, which is
//! the maximal proper submodule. Equality in the simple module `L(k,i)` is
//! decided degree by degree.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::Basis;
use crate::error::{Error, Result};
use crate::fock::{add_scaled, FockSpace, FockVector, ModuleId, Monomial, Terms};
use crate::linalg::{self, Matrix};
use crate::scalar::{binomial_int, fmt_scalar, Scalar};

/// Pairing matrix on one graded piece.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramBlock {
    pub ctx: ModuleId,
    pub degree: u32,
    pub basis: Vec<Monomial>,
    pub matrix: Matrix,
}

#[derive(Serialize)]
struct GramJson {
    k: u32,
    i: u32,
    degree: u32,
    basis: Vec<String>,
    matrix: Vec<Vec<String>>,
    rank: usize,
}

impl GramBlock {
    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.basis.len();
        (0..n).all(|a| (0..a).all(|b| self.matrix[a][b] == self.matrix[b][a]))
    }

    pub fn to_json(&self) -> serde_json::Value {
        let g = GramJson {
            k: self.ctx.k,
            i: self.ctx.i,
            degree: self.degree,
            basis: self
                .basis
                .iter()
                .map(|m| {
                    let word = crate::literal::render_monomial(m, Basis::Chevalley);
                    format!("{word}|{},{}>", self.ctx.i, m.top_index())
                })
                .collect(),
            matrix: self
                .matrix
                .iter()
                .map(|r| r.iter().map(fmt_scalar).collect())
                .collect(),
            rank: self.rank(),
        };
        serde_json::to_value(g).expect("gram block serializes")
    }
}

/// Radical of one `(degree, h-weight)` block in reduced echelon form.
#[derive(Debug)]
struct RadicalBlock {
    basis: Vec<Monomial>,
    rows: Matrix,
    pivots: Vec<usize>,
}

/// The simple quotient `L(k,i)` of `V(k,i)`, represented by canonical coset
/// representatives in the Chevalley basis.
#[derive(Debug)]
pub struct SimpleQuotient {
    space: FockSpace,
    pair_cache: HashMap<(Monomial, Monomial), Scalar>,
    radicals: HashMap<(u32, i64), Rc<RadicalBlock>>,
}

impl SimpleQuotient {
    pub fn new(ctx: ModuleId) -> Self {
        SimpleQuotient::from_space(FockSpace::new(ctx, Basis::Chevalley))
    }

    pub fn from_space(space: FockSpace) -> Self {
        assert_eq!(
            space.basis(),
            Basis::Chevalley,
            "quotient works in the Chevalley basis"
        );
        SimpleQuotient {
            space,
            pair_cache: HashMap::new(),
            radicals: HashMap::new(),
        }
    }

    pub fn ctx(&self) -> ModuleId {
        self.space.ctx()
    }

    pub fn space(&mut self) -> &mut FockSpace {
        &mut self.space
    }

    fn pair_mono(&mut self, u: &Monomial, v: &Monomial) -> Result<Scalar> {
        let i = self.ctx().i;
        if u.degree() != v.degree() || u.h_weight(i) != v.h_weight(i) {
            return Ok(Scalar::zero());
        }
        let Some((first, rest)) = u.split_first() else {
            // both on the top level with equal weight, so equal index
            return Ok(binomial_int(i as i64, u.top_index()));
        };
        let key = (u.clone(), v.clone());
        if let Some(hit) = self.pair_cache.get(&key) {
            return Ok(hit.clone());
        }
        let moved = self
            .space
            .apply_mono(first.role.adjoint(), -first.mode, v)?;
        let mut acc = Scalar::zero();
        for (m, c) in moved.iter() {
            acc += c * self.pair_mono(&rest, m)?;
        }
        self.pair_cache.insert(key, acc.clone());
        Ok(acc)
    }

    /// `<u, v>` with `<v^{i,j}, v^{i,j}> = binom(i, j)`; either basis accepted.
    pub fn contravariant_pairing(&mut self, u: &FockVector, v: &FockVector) -> Result<Scalar> {
        if u.ctx() != self.ctx() || v.ctx() != self.ctx() {
            return Err(Error::ContextMismatch);
        }
        let u = self.space.convert(u)?;
        let v = self.space.convert(v)?;
        let mut acc = Scalar::zero();
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                let p = self.pair_mono(a, b)?;
                if !p.is_zero() {
                    acc += ca * cb * p;
                }
            }
        }
        Ok(acc)
    }

    fn matrix_on(&mut self, basis: &[Monomial]) -> Result<Matrix> {
        let n = basis.len();
        let mut m = vec![vec![Scalar::zero(); n]; n];
        for a in 0..n {
            for b in a..n {
                let p = self.pair_mono(&basis[a], &basis[b])?;
                m[b][a] = p.clone();
                m[a][b] = p;
            }
        }
        Ok(m)
    }

    fn check_cap(&self, d: u32) -> Result<()> {
        if d > self.space.cap() {
            return Err(Error::CapExceeded {
                cap: self.space.cap(),
                needed: d,
            });
        }
        Ok(())
    }

    /// Full pairing matrix on all canonical monomials of degree `d`.
    pub fn gram_block(&mut self, d: u32) -> Result<GramBlock> {
        self.check_cap(d)?;
        let basis = self.space.monomials_of_degree(d);
        let matrix = self.matrix_on(&basis)?;
        Ok(GramBlock {
            ctx: self.ctx(),
            degree: d,
            basis,
            matrix,
        })
    }

    fn weight_bases(&self, d: u32) -> BTreeMap<i64, Vec<Monomial>> {
        let i = self.ctx().i;
        let mut out: BTreeMap<i64, Vec<Monomial>> = BTreeMap::new();
        for m in self.space.monomials_of_degree(d) {
            out.entry(m.h_weight(i)).or_default().push(m);
        }
        out
    }

    fn radical_block(&mut self, d: u32, weight: i64) -> Result<Rc<RadicalBlock>> {
        if let Some(hit) = self.radicals.get(&(d, weight)) {
            return Ok(hit.clone());
        }
        self.check_cap(d)?;
        let basis = self.weight_bases(d).remove(&weight).unwrap_or_default();
        let gram = self.matrix_on(&basis)?;
        let null = linalg::nullspace(&gram, basis.len());
        let (rows, pivots) = if null.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            linalg::rref(&null)
        };
        let block = Rc::new(RadicalBlock {
            basis,
            rows,
            pivots,
        });
        self.radicals.insert((d, weight), block.clone());
        Ok(block)
    }

    /// Basis of the radical of the form in degree `d`.
    pub fn radical_basis(&mut self, d: u32) -> Result<Vec<FockVector>> {
        self.check_cap(d)?;
        let mut out = Vec::new();
        for w in self.weight_bases(d).into_keys() {
            let block = self.radical_block(d, w)?;
            for row in &block.rows {
                let mut t = Terms::new();
                for (m, c) in block.basis.iter().zip(linalg::primitive(row.clone())) {
                    if !c.is_zero() {
                        t.insert(m.clone(), c);
                    }
                }
                out.push(FockVector::from_terms(self.ctx(), Basis::Chevalley, t));
            }
        }
        Ok(out)
    }

    fn reduce_terms(&mut self, v: &Terms, d: u32) -> Result<Terms> {
        let i = self.ctx().i;
        let mut by_weight: BTreeMap<i64, Terms> = BTreeMap::new();
        for (m, c) in v {
            by_weight
                .entry(m.h_weight(i))
                .or_default()
                .insert(m.clone(), c.clone());
        }
        let mut out = Terms::new();
        for (w, mut part) in by_weight {
            let block = self.radical_block(d, w)?;
            for (row, &p) in block.rows.iter().zip(&block.pivots) {
                let c = part
                    .get(&block.basis[p])
                    .cloned()
                    .unwrap_or_else(Scalar::zero);
                if c.is_zero() {
                    continue;
                }
                let mut r = Terms::new();
                for (m, x) in block.basis.iter().zip(row) {
                    if !x.is_zero() {
                        r.insert(m.clone(), x.clone());
                    }
                }
                add_scaled(&mut part, &r, &-c);
            }
            out.extend(part);
        }
        Ok(out)
    }

    /// Canonical coset representative of a homogeneous vector.
    pub fn reduce_mod_max(&mut self, v: &FockVector) -> Result<FockVector> {
        if v.ctx() != self.ctx() {
            return Err(Error::ContextMismatch);
        }
        if v.is_zero() {
            return Ok(self.space.zero());
        }
        let v = self.space.convert(v)?;
        let d = v.grade().ok_or(Error::Inhomogeneous)?;
        let t = self.reduce_terms(v.terms_map(), d)?;
        Ok(FockVector::from_terms(self.ctx(), Basis::Chevalley, t))
    }

    /// Degree-wise reduction of an arbitrary vector.
    pub fn reduce_graded(&mut self, v: &FockVector) -> Result<FockVector> {
        let v = self.space.convert(v)?;
        let mut out = self.space.zero();
        for part in v.split_by_degree().into_values() {
            let r = self.reduce_mod_max(&part)?;
            out.add_scaled(&r, &Scalar::from_integer(1.into()))?;
        }
        Ok(out)
    }

    pub fn is_zero_in_simple(&mut self, v: &FockVector) -> Result<bool> {
        Ok(self.reduce_mod_max(v)?.is_zero())
    }

    /// Like [`Self::is_zero_in_simple`] but accepts inhomogeneous vectors.
    pub fn is_zero_graded(&mut self, v: &FockVector) -> Result<bool> {
        Ok(self.reduce_graded(v)?.is_zero())
    }
}
