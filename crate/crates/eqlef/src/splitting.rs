//! Type filtration of equivariant module data and its splitting.
//!
//! The chain modules of an equivariant map carry a filtration by isotropy
//! type: a basis element (cell) has type (H) when its isotropy group lies in
//! the class (H), and every geometric endomorphism is block upper-triangular
//! for the subconjugacy order (images can only gain isotropy). Splitting
//! extracts the diagonal type-blocks, extension reassembles them, and the
//! trace of the whole matrix equals the sum of the block traces. The module
//! also decomposes a map's component-orbit dynamics into recurrent cycles
//! (with their twisted closing maps) and transients.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::complex::{GComplex, Simplex};
use crate::error::{Error, Result};
use crate::fundcat::{Analysis, ComponentStatus};
use crate::group::SubgroupClasses;
use crate::linalg::{IMat, QMat};
use crate::perm::sort_sign;
use crate::subdivision::MapModel;
use crate::twisted::Rng;

/// A free module with a type label per basis element, a partial order on the
/// types, and a square endomorphism in column convention
/// (`m(e_j) = sum_i m[(i,j)] e_i`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilteredModule {
    pub labels: Vec<usize>,
    /// order[a][b] holds iff type a <= type b.
    pub order: Vec<Vec<bool>>,
    pub endo: QMat,
}

impl FilteredModule {
    pub fn new(labels: Vec<usize>, order: Vec<Vec<bool>>, endo: QMat) -> Result<FilteredModule> {
        let m = FilteredModule { labels, order, endo };
        m.check_state()?;
        Ok(m)
    }

    fn check_state(&self) -> Result<()> {
        let n = self.labels.len();
        if self.endo.rows != n || self.endo.cols != n {
            return Err(Error::InvalidInput(format!(
                "endomorphism is {}x{} on {} basis elements",
                self.endo.rows, self.endo.cols, n
            )));
        }
        let t = self.order.len();
        if self.order.iter().any(|row| row.len() != t) {
            return Err(Error::InvalidInput("ragged type order".into()));
        }
        if let Some(&bad) = self.labels.iter().find(|&&l| l >= t) {
            return Err(Error::InvalidInput(format!("type label {bad} out of range")));
        }
        Ok(())
    }

    /// The first entry violating block upper-triangularity: a nonzero entry
    /// (i, j) whose target type is not >= its source type.
    pub fn triangularity_violation(&self) -> Option<(usize, usize)> {
        for i in 0..self.endo.rows {
            for j in 0..self.endo.cols {
                if !self.endo[(i, j)].is_zero() && !self.order[self.labels[j]][self.labels[i]] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn check_triangular(&self) -> Result<()> {
        match self.triangularity_violation() {
            None => Ok(()),
            Some((i, j)) => Err(Error::InvalidInput(format!(
                "entry ({i}, {j}) maps type {} outside types above {}",
                self.labels[j], self.labels[i]
            ))),
        }
    }

    pub fn trace(&self) -> BigRational {
        self.endo.trace()
    }

    /// Split off the diagonal block of one type (the part of the
    /// endomorphism both starting and landing in that type).
    pub fn split_type(&self, typ: usize) -> SplitBlock {
        let indices: Vec<usize> =
            (0..self.labels.len()).filter(|&i| self.labels[i] == typ).collect();
        let mut endo = QMat::zero(indices.len(), indices.len());
        for (a, &i) in indices.iter().enumerate() {
            for (b, &j) in indices.iter().enumerate() {
                endo[(a, b)] = self.endo[(i, j)].clone();
            }
        }
        SplitBlock { typ, indices, endo }
    }

    /// All diagonal type-blocks, in ascending type order (types without
    /// basis elements are skipped).
    pub fn split(&self) -> Vec<SplitBlock> {
        let mut types: Vec<usize> = self.labels.clone();
        types.sort_unstable();
        types.dedup();
        types.into_iter().map(|t| self.split_type(t)).collect()
    }
}

/// One diagonal type-block of a filtered module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitBlock {
    pub typ: usize,
    /// Positions of the block's basis elements in the original module.
    pub indices: Vec<usize>,
    pub endo: QMat,
}

impl SplitBlock {
    pub fn trace(&self) -> BigRational {
        self.endo.trace()
    }
}

/// Reassemble blocks into one filtered module: the direct sum in ascending
/// type order, with zero maps between blocks.
pub fn extend(blocks: &[SplitBlock], order: Vec<Vec<bool>>) -> FilteredModule {
    let mut sorted: Vec<&SplitBlock> = blocks.iter().collect();
    sorted.sort_by_key(|b| b.typ);
    let n: usize = sorted.iter().map(|b| b.indices.len()).sum();
    let mut labels = Vec::with_capacity(n);
    let mut endo = QMat::zero(n, n);
    let mut off = 0;
    for b in &sorted {
        let k = b.indices.len();
        for i in 0..k {
            labels.push(b.typ);
            for j in 0..k {
                endo[(off + i, off + j)] = b.endo[(i, j)].clone();
            }
        }
        off += k;
    }
    FilteredModule { labels, order, endo }
}

/// Verify the splitting/extension pair on one module: splitting after
/// extension returns the same blocks, and (when the module is triangular)
/// the total trace equals the sum of the block traces.
pub fn splitting_roundtrip(m: &FilteredModule) -> Result<()> {
    let blocks = m.split();
    let assembled = extend(&blocks, m.order.clone());
    let again = assembled.split();
    if blocks.len() != again.len()
        || blocks
            .iter()
            .zip(&again)
            .any(|(a, b)| a.typ != b.typ || a.endo != b.endo)
    {
        return Err(Error::InvalidInput("splitting does not invert extension".into()));
    }
    if m.triangularity_violation().is_none() {
        let total: BigRational = blocks.iter().map(|b| b.trace()).sum();
        if total != m.trace() {
            return Err(Error::InvalidInput(format!(
                "block traces sum to {total}, total trace is {}",
                m.trace()
            )));
        }
    }
    Ok(())
}

/// The chain endomorphism of an equivariant self-map as filtered modules,
/// one per dimension: basis elements are the cells, typed by the conjugacy
/// class of their isotropy group, ordered by subconjugacy.
pub fn geometric_modules(
    x: &GComplex,
    f: &MapModel,
    classes: &SubgroupClasses,
) -> Result<Vec<FilteredModule>> {
    let cc = x.full_chain_complex();
    let endos = f.chain_endo();
    let mut out = Vec::new();
    for d in 0..cc.basis.len() {
        let labels: Vec<usize> = cc.basis[d]
            .iter()
            .map(|e| {
                classes
                    .class_of(&x.isotropy_of_simplex(e))
                    .ok_or_else(|| Error::InvalidInput("isotropy outside class list".into()))
            })
            .collect::<Result<_>>()?;
        out.push(FilteredModule::new(labels, classes.leq.clone(), endos[d].to_rational())?);
    }
    Ok(out)
}

/// A random filtered module over a random poset, triangular with probability
/// controlled by the caller (non-triangular entries are only placed when
/// `allow_violations` is set).
pub fn random_filtered_module(rng: &mut Rng, allow_violations: bool) -> FilteredModule {
    let ntypes = 1 + rng.below(4);
    // Random poset: start from the linear order and drop some relations
    // between distinct types while keeping transitivity (we drop whole
    // "columns": a type may become incomparable to every smaller one).
    let mut order = vec![vec![false; ntypes]; ntypes];
    for a in 0..ntypes {
        order[a][a] = true;
    }
    let mut chain: Vec<bool> = (0..ntypes).map(|_| rng.below(2) == 0).collect();
    chain[0] = true;
    for a in 0..ntypes {
        for b in (a + 1)..ntypes {
            order[a][b] = ((a + 1)..=b).all(|k| chain[k]);
        }
    }
    let n = 1 + rng.below(6);
    let labels: Vec<usize> = (0..n).map(|_| rng.below(ntypes)).collect();
    let mut endo = QMat::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            let ok = order[labels[j]][labels[i]];
            if (ok || allow_violations) && rng.below(2) == 0 {
                endo[(i, j)] = BigRational::new(
                    BigInt::from(rng.int_in(-4, 4)),
                    BigInt::from(rng.int_in(1, 3)),
                );
            }
        }
    }
    FilteredModule { labels, order, endo }
}

/// The recurrent cycle of one component orbit: the chain maps (relative to
/// the more-singular part) between consecutive components along the map,
/// with the last step translated back to the starting component by the
/// returning Weyl element.
#[derive(Clone, Debug)]
pub struct PhiStructure {
    pub class_index: usize,
    pub orbit_rep: usize,
    pub length: usize,
    /// Components visited by the cycle, starting at the orbit representative.
    pub components: Vec<usize>,
    /// Weyl element carrying the final component back to the representative.
    pub returning: usize,
    /// steps[i][d]: dimension-d chain map from component i to the next
    /// (cyclically); the last one includes the returning translation.
    pub steps: Vec<Vec<IMat>>,
}

impl PhiStructure {
    /// Alternating trace of the full cycle composite (a relative chain
    /// endomorphism of the representative component).
    pub fn closing_trace(&self) -> BigInt {
        let dims = self.steps[0].len();
        let mut total = BigInt::zero();
        for d in 0..dims {
            let mut m = self.steps[0][d].clone();
            for step in &self.steps[1..] {
                m = step[d].mul(&m);
            }
            assert_eq!(m.rows, m.cols);
            let mut tr = BigInt::zero();
            for i in 0..m.rows {
                tr += &m[(i, i)];
            }
            if d % 2 == 0 {
                total += tr;
            } else {
                total -= tr;
            }
        }
        total
    }
}

/// Dynamics summary of one Weyl orbit of fixed-set components.
#[derive(Clone, Debug)]
pub enum ComponentSummary {
    Recurrent(PhiStructure),
    /// A component orbit that never returns: only the ranks of its relative
    /// chain complex are recorded (its endomorphism summand is zero).
    Transient { class_index: usize, orbit_rep: usize, height: usize, ranks: Vec<usize> },
}

/// Exact (non-singular) cells of one component, per dimension, padded to the
/// dimension range of the whole fixed set.
fn exact_cells(
    fixed: &crate::complex::FixedSubcomplex,
    component: usize,
    dims: usize,
) -> Vec<Vec<Simplex>> {
    let comp = fixed.component_simplices(component);
    let sing = fixed.component_singular(component);
    let empty: Vec<Simplex> = Vec::new();
    (0..dims)
        .map(|d| {
            let sing_d = sing.get(d).unwrap_or(&empty);
            comp.get(d)
                .unwrap_or(&empty)
                .iter()
                .filter(|e| sing_d.binary_search(e).is_err())
                .cloned()
                .collect()
        })
        .collect()
}

/// Decompose the analyzed map into per-class, per-component-orbit dynamics:
/// recurrent orbits yield their cyclic chain-map tuple, transient orbits
/// only their rank data.
pub fn split_components(an: &Analysis) -> Vec<ComponentSummary> {
    let x = an.complex;
    let cc = x.full_chain_complex();
    let endos = an.map.chain_endo();
    let mut out = Vec::new();
    for (ci, status) in an.dynamics.iter().enumerate() {
        let cd = &an.class_data[ci];
        let dims = cd.fixed.simplices.len();
        let mut reps: Vec<usize> = status.keys().copied().collect();
        reps.sort_unstable();
        for r in reps {
            match status[&r] {
                ComponentStatus::Transient { height } => {
                    let ranks =
                        exact_cells(&cd.fixed, r, dims).iter().map(|b| b.len()).collect();
                    out.push(ComponentSummary::Transient {
                        class_index: ci,
                        orbit_rep: r,
                        height,
                        ranks,
                    });
                }
                ComponentStatus::Recurrent { length, returning } => {
                    let mut components = vec![r];
                    for _ in 1..length {
                        components.push(cd.fmap[*components.last().unwrap()]);
                    }
                    let landing = cd.fmap[*components.last().unwrap()];
                    let bases: Vec<Vec<Vec<Simplex>>> = components
                        .iter()
                        .map(|&c| exact_cells(&cd.fixed, c, dims))
                        .collect();
                    let landing_basis = exact_cells(&cd.fixed, landing, dims);
                    let mut steps = Vec::new();
                    for i in 0..length {
                        let src = &bases[i];
                        let tgt = if i + 1 < length { &bases[i + 1] } else { &landing_basis };
                        let mut step = Vec::new();
                        for d in 0..dims {
                            let mut m = IMat::zero(tgt[d].len(), src[d].len());
                            for (j, e) in src[d].iter().enumerate() {
                                let col = cc.index_of(e).expect("cell of the base complex");
                                for (row, t) in tgt[d].iter().enumerate() {
                                    let gi = cc.index_of(t).expect("cell of the base complex");
                                    m[(row, j)] = endos[d][(gi, col)].clone();
                                }
                            }
                            step.push(m);
                        }
                        steps.push(step);
                    }
                    // Close the cycle: translate the landing component back
                    // to the representative by the returning Weyl element.
                    let n = cd.weyl.section[returning];
                    for d in 0..dims {
                        let mut t = IMat::zero(bases[0][d].len(), landing_basis[d].len());
                        for (j, e) in landing_basis[d].iter().enumerate() {
                            let moved: Vec<usize> =
                                e.iter().map(|&v| x.act_on_vertex(n, v)).collect();
                            let sign = sort_sign(&moved).expect("group action is injective");
                            let mut img = moved;
                            img.sort_unstable();
                            let row = bases[0][d]
                                .binary_search(&img)
                                .expect("translation lands in the representative component");
                            t[(row, j)] = BigInt::from(sign);
                        }
                        let last = steps.last_mut().unwrap();
                        last[d] = t.mul(&last[d]);
                    }
                    out.push(ComponentSummary::Recurrent(PhiStructure {
                        class_index: ci,
                        orbit_rep: r,
                        length,
                        components,
                        returning,
                        steps,
                    }));
                }
            }
        }
    }
    out
}
