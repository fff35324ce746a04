//! Koszul complexes `K(x^n; M)`, their homology as presented modules, and
//! the chain maps `K(x^m; M) -> K(x^n; M)` that multiply the wedge basis
//! vector `e_S` by `prod_{s in S} x_s^(m-n)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{buchberger, kernel, FreeModuleElement, GroebnerBasis};
use crate::modpres::{subquotient, ModulePresentation, RingSequence};
use crate::poly::{PolyMatrix, Polynomial};

/// Subsets of `0..l` of size `k`, lexicographically ordered.
pub fn subsets(l: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, l: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for s in start..l {
            if l - s < k - cur.len() {
                break;
            }
            cur.push(s);
            rec(s + 1, l, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, l, k, &mut Vec::new(), &mut out);
    out
}

#[derive(Default)]
struct DegreeCache {
    cycles: OnceLock<Vec<FreeModuleElement>>,
    boundaries: OnceLock<GroebnerBasis>,
}

/// `K(x^n; M)`: in degree `i` the module `M^(C(l,i))`, basis vectors
/// `e_S (x) e_j` at position `subset_index * g + j`.
pub struct ChainComplex {
    module: ModulePresentation,
    base: RingSequence,
    power: u32,
    subsets: Vec<Vec<Vec<usize>>>,
    differentials: Vec<Vec<FreeModuleElement>>,
    cache: Vec<DegreeCache>,
}

impl std::fmt::Debug for ChainComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "K({}^{}; M) ranks {:?}", self.base, self.power, (0..=self.length()).map(|i| self.rank(i)).collect::<Vec<_>>())
    }
}

/// Builds `K(x^n; M)`.
pub fn koszul_complex(x: &RingSequence, m: &ModulePresentation, n: u32) -> Result<ChainComplex> {
    if n == 0 {
        return Err(Error::InvalidArgument("Koszul power must be positive".into()));
    }
    if **x.ring() != **m.ring() {
        return Err(Error::RingMismatch { left: m.ring().to_string(), right: x.ring().to_string() });
    }
    let l = x.len();
    let g = m.gens();
    let poly = m.poly_ring();
    let ring = m.ring();
    let ys = x.power(n);
    let subsets: Vec<Vec<Vec<usize>>> = (0..=l).map(|k| subsets(l, k)).collect();
    let mut differentials = Vec::with_capacity(l);
    for i in 1..=l {
        let index: HashMap<&Vec<usize>, usize> = subsets[i - 1].iter().enumerate().map(|(k, s)| (s, k)).collect();
        let target_rank = subsets[i - 1].len() * g;
        let mut cols = Vec::with_capacity(subsets[i].len() * g);
        for s in &subsets[i] {
            for j in 0..g {
                let mut col = FreeModuleElement::zero(poly, target_rank);
                for (k, &sk) in s.iter().enumerate() {
                    let mut rest = s.clone();
                    rest.remove(k);
                    let mut coef = ys.elements()[sk].clone();
                    if k % 2 == 1 {
                        coef = coef.neg();
                    }
                    let pos = index[&rest] * g + j;
                    col = col.add(&FreeModuleElement::from_poly_at(ring.reduce(&coef), target_rank, pos))?;
                }
                cols.push(col);
            }
        }
        differentials.push(cols);
    }
    let cache = (0..=l).map(|_| DegreeCache::default()).collect();
    Ok(ChainComplex { module: m.clone(), base: x.clone(), power: n, subsets, differentials, cache })
}

impl ChainComplex {
    pub fn length(&self) -> usize {
        self.base.len()
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn module(&self) -> &ModulePresentation {
        &self.module
    }

    pub fn sequence(&self) -> &RingSequence {
        &self.base
    }

    /// Free rank in degree `i`.
    pub fn rank(&self, i: usize) -> usize {
        self.subsets[i].len() * self.module.gens()
    }

    /// Columns of `d_i`, `1 <= i <= l`.
    pub fn differential_columns(&self, i: usize) -> &[FreeModuleElement] {
        &self.differentials[i - 1]
    }

    /// `d_i` as a matrix, `rank(i-1) x rank(i)`.
    pub fn differential(&self, i: usize) -> PolyMatrix {
        let cols: Vec<Vec<Polynomial>> = self.differentials[i - 1].iter().map(|c| c.components()).collect();
        PolyMatrix::from_columns(self.module.poly_ring(), self.rank(i - 1), &cols).expect("shape")
    }

    /// Whether `d_i d_(i+1)` vanishes modulo `J` for every `i`.
    pub fn d_squared_zero(&self) -> bool {
        let ring = self.module.ring();
        (1..self.length()).all(|i| {
            let prod = self.differential(i).mul(&self.differential(i + 1)).expect("shapes");
            prod.map(|p| ring.reduce(p)).is_zero()
        })
    }

    /// Relations of `M^(C(l,i))`: the relation basis repeated in each block.
    fn block_relations(&self, i: usize) -> Vec<FreeModuleElement> {
        let g = self.module.gens();
        let total = self.rank(i);
        let mut out = Vec::new();
        for b in 0..self.subsets[i].len() {
            for r in self.module.rel_gb().elements() {
                out.push(r.shift(b * g, total));
            }
        }
        out
    }

    fn check_degree(&self, i: usize) -> Result<()> {
        if i > self.length() {
            return Err(Error::IndexOutOfRange { index: i, max: self.length() });
        }
        Ok(())
    }

    /// Generators of `ker d_i` (modulo the block relations), reduced.
    pub fn cycles(&self, i: usize) -> Result<&[FreeModuleElement]> {
        self.check_degree(i)?;
        if let Some(c) = self.cache[i].cycles.get() {
            return Ok(c);
        }
        let poly = self.module.poly_ring();
        let r = self.rank(i);
        let raw = if i == 0 {
            (0..r).map(|j| FreeModuleElement::unit(poly, r, j)).collect()
        } else {
            kernel(poly, self.rank(i - 1), &self.differentials[i - 1], &self.block_relations(i - 1))?
        };
        let rel = buchberger(poly, r, &self.block_relations(i))?;
        let mut out: Vec<FreeModuleElement> = Vec::new();
        for z in raw {
            let z = rel.reduce(&z);
            if !z.is_zero() && !out.contains(&z) {
                out.push(z);
            }
        }
        Ok(self.cache[i].cycles.get_or_init(|| out))
    }

    /// Basis of `im d_(i+1)` plus the block relations in degree `i`.
    pub fn boundaries(&self, i: usize) -> Result<&GroebnerBasis> {
        self.check_degree(i)?;
        if let Some(b) = self.cache[i].boundaries.get() {
            return Ok(b);
        }
        let mut gens = self.block_relations(i);
        if i < self.length() {
            gens.extend(self.differentials[i].iter().cloned());
        }
        let gb = buchberger(self.module.poly_ring(), self.rank(i), &gens)?;
        Ok(self.cache[i].boundaries.get_or_init(|| gb))
    }

    /// Whether `H_i` vanishes.
    pub fn homology_is_zero(&self, i: usize) -> Result<bool> {
        let b = self.boundaries(i)?;
        Ok(self.cycles(i)?.iter().all(|z| b.contains(z)))
    }

    /// Cycles that survive in `H_i`.
    pub fn homology_witnesses(&self, i: usize) -> Result<Vec<FreeModuleElement>> {
        let b = self.boundaries(i)?;
        Ok(self.cycles(i)?.iter().map(|z| b.reduce(z)).filter(|z| !z.is_zero()).collect())
    }

    /// `H_i(x^n; M)` presented as a cokernel.
    pub fn homology(&self, i: usize) -> Result<ModulePresentation> {
        self.check_degree(i)?;
        if i == 0 {
            let mut rels = self.module.relations().to_vec();
            if self.length() > 0 {
                rels.extend(self.differentials[0].iter().cloned());
            }
            return ModulePresentation::new(self.module.ring(), self.module.gens(), rels);
        }
        let gens = self.cycles(i)?.to_vec();
        Ok(subquotient(self.module.ring(), &gens, self.boundaries(i)?)?.0)
    }

    /// Koszul cohomology `H^i = H_(l-i)`.
    pub fn cohomology(&self, i: usize) -> Result<ModulePresentation> {
        self.check_degree(i)?;
        self.homology(self.length() - i)
    }

    /// Largest `i` with `H_i != 0`, if any.
    pub fn top_nonvanishing(&self) -> Result<Option<usize>> {
        for i in (0..=self.length()).rev() {
            if !self.homology_is_zero(i)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }
}

/// Builds the complexes `K(x^n; M)` on demand and keeps them.
pub struct KoszulFamily {
    base: RingSequence,
    module: ModulePresentation,
    complexes: Mutex<HashMap<u32, Arc<ChainComplex>>>,
}

impl KoszulFamily {
    pub fn new(x: &RingSequence, m: &ModulePresentation) -> Self {
        KoszulFamily { base: x.clone(), module: m.clone(), complexes: Mutex::new(HashMap::new()) }
    }

    pub fn sequence(&self) -> &RingSequence {
        &self.base
    }

    pub fn complex(&self, n: u32) -> Result<Arc<ChainComplex>> {
        if let Some(c) = self.complexes.lock().expect("lock").get(&n) {
            return Ok(c.clone());
        }
        let c = Arc::new(koszul_complex(&self.base, &self.module, n)?);
        Ok(self.complexes.lock().expect("lock").entry(n).or_insert(c).clone())
    }

    pub fn tower_map(&self, m: u32, n: u32) -> Result<KoszulTowerMap> {
        if m < n {
            return Err(Error::TowerOrder { source_power: m, target_power: n });
        }
        let source = self.complex(m)?;
        let target = self.complex(n)?;
        let ring = self.module.ring();
        let step = self.base.power(m - n);
        let factors = target
            .subsets
            .iter()
            .map(|level| {
                level
                    .iter()
                    .map(|s| s.iter().fold(ring.poly_ring().one(), |acc, &k| ring.reduce(&(&acc * &step.elements()[k]))))
                    .collect()
            })
            .collect();
        Ok(KoszulTowerMap { source, target, factors })
    }
}

/// `phi_n^m : K(x^m; M) -> K(x^n; M)`.
pub struct KoszulTowerMap {
    source: Arc<ChainComplex>,
    target: Arc<ChainComplex>,
    factors: Vec<Vec<Polynomial>>,
}

/// `phi_n^m` for a sequence and module, `m >= n >= 1`.
pub fn tower_map(x: &RingSequence, module: &ModulePresentation, m: u32, n: u32) -> Result<KoszulTowerMap> {
    KoszulFamily::new(x, module).tower_map(m, n)
}

impl KoszulTowerMap {
    pub fn source_power(&self) -> u32 {
        self.source.power
    }

    pub fn target_power(&self) -> u32 {
        self.target.power
    }

    /// Block multipliers in degree `i`, one per wedge basis vector.
    pub fn factors(&self, i: usize) -> &[Polynomial] {
        &self.factors[i]
    }

    /// `phi_i` as a diagonal matrix.
    pub fn matrix(&self, i: usize) -> PolyMatrix {
        let g = self.source.module.gens();
        let r = self.source.rank(i);
        let mut out = PolyMatrix::zeros(self.source.module.poly_ring(), r, r);
        for (b, f) in self.factors[i].iter().enumerate() {
            for j in 0..g {
                out.set(b * g + j, b * g + j, f.clone());
            }
        }
        out
    }

    pub fn apply(&self, i: usize, v: &FreeModuleElement) -> FreeModuleElement {
        let g = self.source.module.gens();
        let ring = self.source.module.ring();
        let comps: Vec<Polynomial> =
            v.components().iter().enumerate().map(|(p, c)| ring.reduce(&(c * &self.factors[i][p / g]))).collect();
        FreeModuleElement::from_components(v.ring(), &comps).expect("same ring")
    }

    /// `d_i(n) phi_i = phi_(i-1) d_i(m)` modulo `J` in every degree.
    pub fn commutes(&self) -> bool {
        let ring = self.source.module.ring();
        (1..=self.source.length()).all(|i| {
            let left = self.target.differential(i).mul(&self.matrix(i)).expect("shape");
            let right = self.matrix(i - 1).mul(&self.source.differential(i)).expect("shape");
            left.map(|p| ring.reduce(p)) == right.map(|p| ring.reduce(p))
        })
    }

    /// Whether the induced map `H_i(x^m; M) -> H_i(x^n; M)` is zero.
    pub fn induced_zero(&self, i: usize) -> Result<bool> {
        let b = self.target.boundaries(i)?;
        Ok(self.source.cycles(i)?.iter().all(|z| b.contains(&self.apply(i, z))))
    }
}

/// Whether `phi` induces the zero map on `H_i`.
pub fn induced_homology_map_is_zero(phi: &KoszulTowerMap, i: usize) -> Result<bool> {
    phi.induced_zero(i)
}
