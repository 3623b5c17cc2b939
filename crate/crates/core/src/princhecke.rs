//! Iwahori-fixed vectors in unramified principal series and the operators
//! U_{p,r} computed as explicit coset sums.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::Result;
use crate::padic::{bruhat_cell, PadicMatrix};
use crate::perm::Perm;
use crate::refine::SatakeParameter;
use crate::rootspin::delta_b_half;
use crate::symring::{q_int, SymElem};

/// f = Σ_w c_w f_w^σ in Ind_B^G θ^σ, where f_w^σ is the Iw-invariant vector
/// supported on B·w·Iw with f_w^σ(w) = 1.
#[derive(Clone, Debug)]
pub struct PSVector {
    pub satake: SatakeParameter,
    pub sigma: Perm,
    pub coeffs: BTreeMap<Perm, SymElem>,
}

impl PSVector {
    pub fn zero(satake: SatakeParameter, sigma: Perm) -> Self {
        PSVector { satake, sigma, coeffs: BTreeMap::new() }
    }

    /// f_w^σ.
    pub fn cell_indicator(satake: SatakeParameter, sigma: Perm, w: Perm) -> Self {
        let mut v = PSVector::zero(satake, sigma);
        v.coeffs.insert(w, SymElem::one());
        v
    }

    /// f^σ = f_{w_{2n}}^σ, the big-cell vector.
    pub fn big_cell(satake: SatakeParameter, sigma: Perm) -> Self {
        let m = 2 * satake.n;
        PSVector::cell_indicator(satake, sigma, Perm::longest(m))
    }

    pub fn coeff(&self, w: &Perm) -> SymElem {
        self.coeffs.get(w).cloned().unwrap_or_else(SymElem::zero)
    }

    pub fn p(&self) -> u64 {
        self.satake.p
    }

    pub fn size(&self) -> usize {
        2 * self.satake.n
    }

    fn set(&mut self, w: Perm, c: SymElem) {
        if c.is_zero() {
            self.coeffs.remove(&w);
        } else {
            self.coeffs.insert(w, c);
        }
    }

    pub fn add(&self, o: &PSVector) -> PSVector {
        let mut out = self.clone();
        for (w, c) in &o.coeffs {
            let s = &out.coeff(w) + c;
            out.set(w.clone(), s);
        }
        out
    }

    pub fn scale(&self, c: &SymElem) -> PSVector {
        let mut out = PSVector::zero(self.satake.clone(), self.sigma.clone());
        for (w, x) in &self.coeffs {
            out.set(w.clone(), x * c);
        }
        out
    }

    /// Coefficientwise equality (both are determined by their Weyl values).
    pub fn same_as(&self, o: &PSVector) -> bool {
        let keys: std::collections::BTreeSet<&Perm> = self.coeffs.keys().chain(o.coeffs.keys()).collect();
        keys.into_iter().all(|w| self.coeff(w) == o.coeff(w))
    }

    /// δ_B^{1/2}θ^σ(diag(p^{a_i})).
    pub fn torus_character(&self, a: &[i64]) -> Result<SymElem> {
        let mut v = delta_b_half(self.p(), a);
        for (i, e) in a.iter().enumerate() {
            if *e != 0 {
                v = &v * &self.satake.theta[self.sigma.apply(i)].pow(*e)?;
            }
        }
        Ok(v)
    }
}

/// f(g) = δ_B^{1/2}θ^σ(t)·c_w for g ∈ b·w·Iw with torus part t.
pub fn ps_evaluate(f: &PSVector, g: &PadicMatrix) -> Result<SymElem> {
    let cell = bruhat_cell(g, f.p())?;
    match f.coeffs.get(&cell.w) {
        None => Ok(SymElem::zero()),
        Some(c) => Ok(c * &f.torus_character(&cell.torus)?),
    }
}

/// For each Weyl representative ρ, the multiset of (cell, torus) reached by
/// ρ·(1 m; 0 1)·t_{p,r} as m runs over M_{r,2n−r}(Z_p)/p.
#[derive(Debug)]
pub struct HeckeTable {
    pub n: usize,
    pub p: u64,
    pub r: usize,
    pub rows: Vec<(Perm, Vec<(Perm, Vec<i64>, u64)>)>,
}

type TableKey = (usize, u64, usize);

fn table_cache() -> &'static Mutex<HashMap<TableKey, Arc<HeckeTable>>> {
    static CACHE: OnceLock<Mutex<HashMap<TableKey, Arc<HeckeTable>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Matrices (1_r m; 0 1)·t_{p,r} for all residue representatives m.
pub fn single_cosets(m: usize, r: usize, p: u64) -> Vec<PadicMatrix> {
    let cols = m - r;
    let count = (p as usize).pow((r * cols) as u32);
    let mut texp = vec![0; m];
    texp[..r].iter_mut().for_each(|x| *x = 1);
    let t = PadicMatrix::diag_ppow(p, &texp);
    (0..count)
        .map(|mut idx| {
            let mut g = PadicMatrix::identity(m);
            for i in 0..r {
                for j in 0..cols {
                    g[(i, r + j)] = q_int((idx % p as usize) as i64);
                    idx /= p as usize;
                }
            }
            g.mul(&t)
        })
        .collect()
}

impl HeckeTable {
    pub fn get(n: usize, p: u64, r: usize) -> Result<Arc<HeckeTable>> {
        let key = (n, p, r);
        if let Some(t) = table_cache().lock().unwrap().get(&key) {
            return Ok(t.clone());
        }
        let t = Arc::new(HeckeTable::build(n, p, r)?);
        table_cache().lock().unwrap().insert(key, t.clone());
        Ok(t)
    }

    pub fn build(n: usize, p: u64, r: usize) -> Result<HeckeTable> {
        let m = 2 * n;
        let cosets = single_cosets(m, r, p);
        let rows = Perm::all(m)
            .into_par_iter()
            .map(|rho| {
                let pm = PadicMatrix::perm(&rho);
                let mut acc: BTreeMap<(Perm, Vec<i64>), u64> = BTreeMap::new();
                for c in &cosets {
                    let cell = bruhat_cell(&pm.mul(c), p)?;
                    *acc.entry((cell.w, cell.torus)).or_insert(0) += 1;
                }
                Ok((rho, acc.into_iter().map(|((w, t), k)| (w, t, k)).collect()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(HeckeTable { n, p, r, rows })
    }
}

/// U_{p,r}f, reassembled from its values at the Weyl representatives.
pub fn hecke_apply(f: &PSVector, r: usize) -> Result<PSVector> {
    let table = HeckeTable::get(f.satake.n, f.p(), r)?;
    let mut out = PSVector::zero(f.satake.clone(), f.sigma.clone());
    for (rho, entries) in &table.rows {
        let mut v = SymElem::zero();
        for (w, t, k) in entries {
            if let Some(c) = f.coeffs.get(w) {
                let term = &(c * &f.torus_character(t)?) * &SymElem::int(*k as i64);
                v = &v + &term;
            }
        }
        out.set(rho.clone(), v);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::refine::Refinement;
    use crate::symring::Gen;

    #[test]
    fn big_cell_normalisation() {
        let s = SatakeParameter::generic_ag(1, 3);
        let f = PSVector::big_cell(s, Perm::identity(2));
        let w = PadicMatrix::perm(&Perm::longest(2));
        assert!(ps_evaluate(&f, &w).unwrap().is_one());
        assert!(ps_evaluate(&f, &PadicMatrix::identity(2)).unwrap().is_zero());
    }

    #[test]
    fn torus_translate() {
        // f^σ(t'·w) with t' = w t_{p,1} w = diag(1, p)
        let p = 2;
        let s = SatakeParameter::generic_ag(1, p);
        let sigma = Perm(vec![1, 0]);
        let f = PSVector::big_cell(s.clone(), sigma.clone());
        let g = PadicMatrix::diag_ppow(p, &[0, 1]).mul(&PadicMatrix::perm(&Perm::longest(2)));
        let expect = &SymElem::y_pow(p, 1) * &s.theta[sigma.apply(1)];
        assert_eq!(ps_evaluate(&f, &g).unwrap(), expect);
    }

    #[test]
    fn n1_eigen() {
        for p in [2, 3] {
            let s = SatakeParameter::generic_ag(1, p);
            for sigma in Perm::all(2) {
                let f = PSVector::big_cell(s.clone(), sigma.clone());
                let uf = hecke_apply(&f, 1).unwrap();
                let a = Refinement::new(s.clone(), sigma).hecke_eigenvalue(1);
                assert!(uf.same_as(&f.scale(&a)));
            }
        }
    }

    #[test]
    fn n2_eigen_p2() {
        let s = SatakeParameter::generic_ag(2, 2);
        for sigma in Perm::all(4) {
            let f = PSVector::big_cell(s.clone(), sigma.clone());
            let rf = Refinement::new(s.clone(), sigma);
            for r in 1..4 {
                let uf = hecke_apply(&f, r).unwrap();
                assert!(uf.same_as(&f.scale(&rf.hecke_eigenvalue(r))));
            }
        }
    }

    #[test]
    fn linear() {
        let s = SatakeParameter::generic_ag(1, 3);
        let sig = Perm::identity(2);
        let a = PSVector::cell_indicator(s.clone(), sig.clone(), Perm::identity(2))
            .scale(&SymElem::gen(Gen::X(1)));
        let b = PSVector::big_cell(s, sig);
        let lhs = hecke_apply(&a.add(&b), 1).unwrap();
        let rhs = hecke_apply(&a, 1).unwrap().add(&hecke_apply(&b, 1).unwrap());
        assert!(lhs.same_as(&rhs));
    }
}
