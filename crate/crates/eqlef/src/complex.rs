//! Finite simplicial complexes with an admissible action of a finite
//! permutation group: fixed subcomplexes, components, integral chain
//! complexes, simplicial maps and exact homology.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::linalg::{smith_normal_form, IMat, QMat};
use crate::perm::{sort_sign, Perm};

/// A simplex is a strictly increasing list of vertex ids.
pub type Simplex = Vec<usize>;

#[derive(Clone, Debug)]
pub struct GComplex {
    pub name: String,
    pub group: FiniteGroup,
    pub num_vertices: usize,
    /// Per dimension, sorted list of simplices. Closed under faces.
    pub simplices: Vec<Vec<Simplex>>,
    /// Vertex permutation per group element (indexed like `group.elements`).
    pub action: Vec<Perm>,
}

impl GComplex {
    /// Build a complex from any generating set of simplices (faces are
    /// added automatically) and one vertex permutation per group generator.
    /// Validates closure and that the action maps simplices to simplices;
    /// admissibility is NOT enforced here (see `subdivision::ensure_admissible`).
    pub fn new(
        name: &str,
        group: FiniteGroup,
        num_vertices: usize,
        simplices: &[Vec<usize>],
        generator_actions: &[Perm],
    ) -> Result<GComplex> {
        if generator_actions.len() != group.generators.len() {
            return Err(Error::InvalidInput(format!(
                "expected {} generator actions, got {}",
                group.generators.len(),
                generator_actions.len()
            )));
        }
        for a in generator_actions {
            if a.degree() != num_vertices {
                return Err(Error::MalformedComplex(
                    "action permutation degree does not match vertex count".into(),
                ));
            }
        }
        let mut by_dim: Vec<BTreeSet<Simplex>> = Vec::new();
        let mut stack: Vec<Simplex> = Vec::new();
        for s in simplices {
            let mut t = s.clone();
            t.sort_unstable();
            t.dedup();
            if t.len() != s.len() {
                return Err(Error::MalformedComplex(format!("repeated vertex in {s:?}")));
            }
            if t.iter().any(|&v| v >= num_vertices) {
                return Err(Error::MalformedComplex(format!("vertex out of range in {s:?}")));
            }
            stack.push(t);
        }
        while let Some(t) = stack.pop() {
            if t.is_empty() {
                continue;
            }
            let d = t.len() - 1;
            while by_dim.len() <= d {
                by_dim.push(BTreeSet::new());
            }
            if by_dim[d].insert(t.clone()) && d > 0 {
                for i in 0..t.len() {
                    let mut face = t.clone();
                    face.remove(i);
                    stack.push(face);
                }
            }
        }
        if by_dim.is_empty() {
            by_dim.push(BTreeSet::new());
        }
        let simplices: Vec<Vec<Simplex>> =
            by_dim.into_iter().map(|s| s.into_iter().collect()).collect();

        // Extend the generator actions to all group elements via words.
        let mut action: Vec<Perm> = Vec::with_capacity(group.order());
        for i in 0..group.order() {
            let mut p = Perm::identity(num_vertices);
            for &w in group.word(i).iter().rev() {
                p = generator_actions[w].compose(&p);
            }
            action.push(p);
        }
        let x = GComplex {
            name: name.to_string(),
            group,
            num_vertices,
            simplices,
            action,
        };
        // Action must permute simplices dimension-wise.
        for g in 0..x.group.order() {
            for dim_list in &x.simplices {
                for s in dim_list {
                    let img = x.act_on_simplex(g, s);
                    if x.simplex_index(&img).is_none() {
                        return Err(Error::MalformedComplex(format!(
                            "group element {g} maps simplex {s:?} to non-simplex {img:?}"
                        )));
                    }
                }
            }
        }
        Ok(x)
    }

    /// A complex with trivial group action.
    pub fn plain(name: &str, num_vertices: usize, simplices: &[Vec<usize>]) -> Result<GComplex> {
        let triv = FiniteGroup::from_generators("1", 1, vec![])?;
        GComplex::new(name, triv, num_vertices, simplices, &[])
    }

    pub fn dim(&self) -> usize {
        self.simplices.len() - 1
    }

    pub fn simplex_index(&self, s: &Simplex) -> Option<usize> {
        if s.is_empty() || s.len() > self.simplices.len() {
            return None;
        }
        self.simplices[s.len() - 1].binary_search(s).ok()
    }

    pub fn act_on_vertex(&self, g: usize, v: usize) -> usize {
        self.action[g].apply(v)
    }

    pub fn act_on_simplex(&self, g: usize, s: &Simplex) -> Simplex {
        let mut t: Simplex = s.iter().map(|&v| self.action[g].apply(v)).collect();
        t.sort_unstable();
        t
    }

    /// Elements fixing the simplex vertex-wise (its isotropy group under an
    /// admissible action).
    pub fn isotropy_of_simplex(&self, s: &Simplex) -> Subgroup {
        let elems: Vec<usize> = (0..self.group.order())
            .filter(|&g| s.iter().all(|&v| self.action[g].apply(v) == v))
            .collect();
        Subgroup { elems }
    }

    pub fn isotropy_of_vertex(&self, v: usize) -> Subgroup {
        self.isotropy_of_simplex(&vec![v])
    }

    /// Admissibility: whichever element stabilizes a simplex setwise must fix
    /// it vertex-wise. Returns the first violation if any.
    pub fn admissibility_violation(&self) -> Option<(usize, Simplex)> {
        for g in 0..self.group.order() {
            for dim_list in &self.simplices {
                for s in dim_list {
                    if &self.act_on_simplex(g, s) == s
                        && s.iter().any(|&v| self.action[g].apply(v) != v)
                    {
                        return Some((g, s.clone()));
                    }
                }
            }
        }
        None
    }

    pub fn is_admissible(&self) -> bool {
        self.admissibility_violation().is_none()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices
            .iter()
            .enumerate()
            .map(|(d, l)| if d % 2 == 0 { l.len() as i64 } else { -(l.len() as i64) })
            .sum()
    }

    /// The subcomplex of simplices fixed vertex-wise by H, with components
    /// and the singular part (simplices of strictly larger isotropy).
    pub fn fixed_subcomplex(&self, h: &Subgroup) -> FixedSubcomplex {
        let fixed_vertex: Vec<bool> = (0..self.num_vertices)
            .map(|v| h.elems.iter().all(|&g| self.action[g].apply(v) == v))
            .collect();
        let mut simplices: Vec<Vec<Simplex>> = Vec::new();
        let mut singular: Vec<Vec<Simplex>> = Vec::new();
        for dim_list in &self.simplices {
            let fixed: Vec<Simplex> = dim_list
                .iter()
                .filter(|s| s.iter().all(|&v| fixed_vertex[v]))
                .cloned()
                .collect();
            let sing: Vec<Simplex> = fixed
                .iter()
                .filter(|s| self.isotropy_of_simplex(s).order() > h.order())
                .cloned()
                .collect();
            simplices.push(fixed);
            singular.push(sing);
        }
        // Components via union-find on the 1-skeleton.
        let verts: Vec<usize> = simplices[0].iter().map(|s| s[0]).collect();
        let mut parent: HashMap<usize, usize> = verts.iter().map(|&v| (v, v)).collect();
        fn find(parent: &mut HashMap<usize, usize>, v: usize) -> usize {
            let p = parent[&v];
            if p == v {
                return v;
            }
            let r = find(parent, p);
            parent.insert(v, r);
            r
        }
        if simplices.len() > 1 {
            for e in &simplices[1] {
                let (a, b) = (find(&mut parent, e[0]), find(&mut parent, e[1]));
                if a != b {
                    parent.insert(a.max(b), a.min(b));
                }
            }
        }
        let mut comp_map: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for &v in &verts {
            let r = find(&mut parent, v);
            comp_map.entry(r).or_default().push(v);
        }
        let components: Vec<Vec<usize>> = comp_map.into_values().collect();
        let mut component_of_vertex = HashMap::new();
        for (ci, comp) in components.iter().enumerate() {
            for &v in comp {
                component_of_vertex.insert(v, ci);
            }
        }
        FixedSubcomplex {
            subgroup: h.clone(),
            simplices,
            singular,
            components,
            component_of_vertex,
        }
    }

    /// Integral chain complex of a set of simplices (which must be a
    /// subcomplex), optionally relative to a sub-subcomplex whose simplices
    /// are dropped from the basis.
    pub fn chain_complex(
        &self,
        simplices: &[Vec<Simplex>],
        relative_to: Option<&[Vec<Simplex>]>,
    ) -> Result<ChainComplexZ> {
        check_subcomplex(simplices)?;
        if let Some(rel) = relative_to {
            check_subcomplex(rel)?;
            for (d, dim_list) in rel.iter().enumerate() {
                for s in dim_list {
                    if d >= simplices.len() || simplices[d].binary_search(s).is_err() {
                        return Err(Error::NotASubcomplex(format!(
                            "relative simplex {s:?} not in the ambient subcomplex"
                        )));
                    }
                }
            }
        }
        let in_rel = |s: &Simplex| -> bool {
            relative_to.map_or(false, |rel| {
                let d = s.len() - 1;
                d < rel.len() && rel[d].binary_search(s).is_ok()
            })
        };
        let basis: Vec<Vec<Simplex>> = simplices
            .iter()
            .map(|dim_list| dim_list.iter().filter(|s| !in_rel(s)).cloned().collect())
            .collect();
        let mut index: Vec<HashMap<Simplex, usize>> = Vec::new();
        for dim_list in &basis {
            index.push(dim_list.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect());
        }
        let mut boundaries = Vec::new();
        for d in 0..basis.len() {
            let rows = if d == 0 { 0 } else { basis[d - 1].len() };
            let mut m = IMat::zero(rows, basis[d].len());
            if d > 0 {
                for (j, s) in basis[d].iter().enumerate() {
                    for i in 0..s.len() {
                        let mut face = s.clone();
                        face.remove(i);
                        if let Some(&r) = index[d - 1].get(&face) {
                            m[(r, j)] = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                        }
                    }
                }
            }
            boundaries.push(m);
        }
        let cc = ChainComplexZ { basis, boundaries };
        cc.check_dd_zero();
        Ok(cc)
    }

    /// Full absolute chain complex.
    pub fn full_chain_complex(&self) -> ChainComplexZ {
        self.chain_complex(&self.simplices, None).expect("own simplices form a subcomplex")
    }
}

fn check_subcomplex(simplices: &[Vec<Simplex>]) -> Result<()> {
    for (d, dim_list) in simplices.iter().enumerate() {
        let mut prev: Option<&Simplex> = None;
        for s in dim_list {
            if s.len() != d + 1 {
                return Err(Error::MalformedComplex(format!("{s:?} listed in dimension {d}")));
            }
            if let Some(p) = prev {
                if p >= s {
                    return Err(Error::MalformedComplex("simplex list not sorted".into()));
                }
            }
            prev = Some(s);
            if d > 0 {
                for i in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(i);
                    if simplices[d - 1].binary_search(&face).is_err() {
                        return Err(Error::NotASubcomplex(format!(
                            "face {face:?} of {s:?} missing"
                        )));
                    }
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug)]
pub struct FixedSubcomplex {
    pub subgroup: Subgroup,
    /// Simplices of X^H per dimension (sorted).
    pub simplices: Vec<Vec<Simplex>>,
    /// Simplices with isotropy strictly larger than H (the singular part X^{>H}).
    pub singular: Vec<Vec<Simplex>>,
    /// Connected components as sorted vertex lists, ordered by minimal vertex.
    pub components: Vec<Vec<usize>>,
    pub component_of_vertex: HashMap<usize, usize>,
}

impl FixedSubcomplex {
    pub fn is_empty(&self) -> bool {
        self.simplices[0].is_empty()
    }

    /// Simplices of one component, per dimension.
    pub fn component_simplices(&self, ci: usize) -> Vec<Vec<Simplex>> {
        self.simplices
            .iter()
            .map(|dim_list| {
                dim_list
                    .iter()
                    .filter(|s| self.component_of_vertex.get(&s[0]) == Some(&ci))
                    .cloned()
                    .collect()
            })
            .collect()
    }

    /// Singular simplices inside one component.
    pub fn component_singular(&self, ci: usize) -> Vec<Vec<Simplex>> {
        self.singular
            .iter()
            .map(|dim_list| {
                dim_list
                    .iter()
                    .filter(|s| self.component_of_vertex.get(&s[0]) == Some(&ci))
                    .cloned()
                    .collect()
            })
            .collect()
    }
}

/// Chain complex of free Z-modules with named simplex bases.
#[derive(Clone, Debug)]
pub struct ChainComplexZ {
    pub basis: Vec<Vec<Simplex>>,
    /// boundaries[d]: C_d -> C_{d-1}; boundaries[0] has zero rows.
    pub boundaries: Vec<IMat>,
}

impl ChainComplexZ {
    pub fn ranks(&self) -> Vec<usize> {
        self.basis.iter().map(|b| b.len()).collect()
    }

    fn check_dd_zero(&self) {
        for d in 2..self.boundaries.len() {
            let dd = self.boundaries[d - 1].mul(&self.boundaries[d]);
            assert!(dd.is_zero(), "boundary squared nonzero in dimension {d}");
        }
    }

    pub fn index_of(&self, s: &Simplex) -> Option<usize> {
        let d = s.len() - 1;
        if d >= self.basis.len() {
            return None;
        }
        self.basis[d].binary_search(s).ok()
    }
}

/// The chain map induced by a simplicial vertex map between two complexes
/// (entries over Z, degenerate images sent to zero), per dimension, with
/// bases given by two chain complexes over the same simplex conventions.
pub fn chain_map(
    source: &ChainComplexZ,
    target: &ChainComplexZ,
    vertex_image: impl Fn(usize) -> usize,
) -> Vec<IMat> {
    let dims = source.basis.len();
    let mut out = Vec::new();
    for d in 0..dims {
        let rows = if d < target.basis.len() { target.basis[d].len() } else { 0 };
        let mut m = IMat::zero(rows, source.basis[d].len());
        for (j, s) in source.basis[d].iter().enumerate() {
            let imgs: Vec<usize> = s.iter().map(|&v| vertex_image(v)).collect();
            let Some(sign) = sort_sign(&imgs) else { continue }; // degenerate
            let mut t = imgs;
            t.sort_unstable();
            if let Some(i) = target.index_of(&t) {
                m[(i, j)] = BigInt::from(sign);
            }
        }
        out.push(m);
    }
    out
}

/// Validation of a simplicial map given by vertex images.
pub fn validate_simplicial(
    source: &GComplex,
    target: &GComplex,
    vertex_images: &[usize],
) -> Result<()> {
    if vertex_images.len() != source.num_vertices {
        return Err(Error::NotSimplicial(format!(
            "vertex image list has length {}, expected {}",
            vertex_images.len(),
            source.num_vertices
        )));
    }
    if vertex_images.iter().any(|&v| v >= target.num_vertices) {
        return Err(Error::NotSimplicial("vertex image out of range".into()));
    }
    for dim_list in &source.simplices {
        for s in dim_list {
            let mut t: Vec<usize> = s.iter().map(|&v| vertex_images[v]).collect();
            t.sort_unstable();
            t.dedup();
            if target.simplex_index(&t).is_none() {
                return Err(Error::NotSimplicial(format!(
                    "image {t:?} of simplex {s:?} is not a simplex"
                )));
            }
        }
    }
    Ok(())
}

/// Equivariance check on group generators: f(g v) = g f(v).
pub fn validate_equivariant(
    source: &GComplex,
    target: &GComplex,
    vertex_images: &[usize],
) -> Result<()> {
    for (gi, _) in source.group.generators.iter().enumerate() {
        // Use the element index of the generator in each group.
        let ge_src = source
            .group
            .index_of(&source.group.generators[gi])
            .expect("generator is an element");
        let ge_tgt = target
            .group
            .index_of(&target.group.generators[gi])
            .ok_or_else(|| Error::NotEquivariant("groups do not share generators".into()))?;
        for v in 0..source.num_vertices {
            let lhs = vertex_images[source.act_on_vertex(ge_src, v)];
            let rhs = target.act_on_vertex(ge_tgt, vertex_images[v]);
            if lhs != rhs {
                return Err(Error::NotEquivariant(format!(
                    "f(g v) != g f(v) at vertex {v} for generator {gi}"
                )));
            }
        }
    }
    Ok(())
}

/// Rational homology of a chain complex: dimension per degree and, for a
/// chain self-map, the induced trace on each homology group. This is the
/// independent oracle for classical Lefschetz numbers.
pub struct RationalHomology {
    /// Per degree: columns are a boundary-space basis followed by cycles
    /// representing a homology basis.
    adapted: Vec<QMat>,
    /// Number of boundary columns per degree.
    rank_b: Vec<usize>,
    pub betti: Vec<usize>,
}

impl RationalHomology {
    pub fn new(cc: &ChainComplexZ) -> RationalHomology {
        let dims = cc.basis.len();
        let boundaries_q: Vec<QMat> = cc.boundaries.iter().map(|m| m.to_rational()).collect();
        let mut adapted = Vec::new();
        let mut rank_b = Vec::new();
        let mut betti = Vec::new();
        for d in 0..dims {
            let z = if d == 0 {
                QMat::identity(cc.basis[0].len())
            } else {
                boundaries_q[d].kernel_basis()
            };
            // Independent boundary columns.
            let bp: Vec<Vec<BigRational>> = if d + 1 < dims {
                let bm = &boundaries_q[d + 1];
                let mut probe = bm.clone();
                let pivots = probe.rref();
                pivots
                    .iter()
                    .map(|&j| (0..bm.rows).map(|i| bm[(i, j)].clone()).collect())
                    .collect()
            } else {
                Vec::new()
            };
            // Extend the boundaries by cycle columns to span the cycle space.
            let mut probe = QMat::zero(z.rows, bp.len() + z.cols);
            for (j, col) in bp.iter().enumerate() {
                for i in 0..z.rows {
                    probe[(i, j)] = col[i].clone();
                }
            }
            for j in 0..z.cols {
                for i in 0..z.rows {
                    probe[(i, bp.len() + j)] = z[(i, j)].clone();
                }
            }
            let keep_src = probe.clone();
            let mut red = probe;
            let pivots = red.rref();
            let mut m = QMat::zero(z.rows, pivots.len());
            for (j, &p) in pivots.iter().enumerate() {
                for i in 0..z.rows {
                    m[(i, j)] = keep_src[(i, p)].clone();
                }
            }
            assert!(pivots.iter().take(bp.len()).eq((0..bp.len()).collect::<Vec<_>>().iter()));
            betti.push(m.cols - bp.len());
            rank_b.push(bp.len());
            adapted.push(m);
        }
        RationalHomology { adapted, rank_b, betti }
    }

    /// Trace of the induced map on H_d(-; Q) for a chain self-map given by
    /// per-degree matrices.
    pub fn induced_trace(&self, d: usize, chain_map: &[IMat]) -> BigRational {
        let m = &self.adapted[d];
        let rb = self.rank_b[d];
        if m.cols == rb {
            return BigRational::zero();
        }
        let f = chain_map[d].to_rational();
        // Images of the homology-basis cycles, expressed in the adapted basis;
        // the lower-right block diagonal is the homology trace.
        let mut h = QMat::zero(m.rows, m.cols - rb);
        for j in rb..m.cols {
            for i in 0..m.rows {
                h[(i, j - rb)] = m[(i, j)].clone();
            }
        }
        let fh = f.mul(&h);
        let x = m.solve(&fh).expect("image of a cycle is a cycle");
        (0..(m.cols - rb)).map(|j| x[(rb + j, j)].clone()).sum()
    }

    /// Classical Lefschetz number: alternating sum of homology traces.
    pub fn lefschetz_number(&self, chain_map: &[IMat]) -> BigRational {
        let mut total = BigRational::zero();
        for d in 0..self.adapted.len() {
            let t = self.induced_trace(d, chain_map);
            if d % 2 == 0 {
                total += t;
            } else {
                total -= t;
            }
        }
        total
    }
}

/// Canonical integral H_1 coordinates for a connected subcomplex, computed
/// from Smith normal forms of the boundary maps in the true (seed-independent)
/// simplex order. Used to label abelian-tier twisted conjugacy classes.
#[derive(Clone, Debug)]
pub struct H1Data {
    /// Edge basis (sorted) the coordinates refer to.
    pub edges: Vec<Simplex>,
    /// Number of H_1 coordinates (free rank + torsion coordinates).
    pub coords: usize,
    /// Invariant factor per coordinate: 0 = free, t > 1 = torsion Z/t.
    pub factor: Vec<BigInt>,
    pub free_rank: usize,
    /// Representative cycle (edge chain vector) per coordinate.
    pub rep_cycles: Vec<Vec<BigInt>>,
    // kernel-coordinate extraction: y = (v1_inv * z)[r1..], then w = u2 * y.
    v1_inv: QMat,
    rank1: usize,
    u2: IMat,
}

impl H1Data {
    pub fn new(simplices: &[Vec<Simplex>]) -> H1Data {
        let edges: Vec<Simplex> = simplices.get(1).cloned().unwrap_or_default();
        let verts: Vec<Simplex> = simplices[0].clone();
        let tris: Vec<Simplex> = simplices.get(2).cloned().unwrap_or_default();
        let vidx: HashMap<usize, usize> =
            verts.iter().enumerate().map(|(i, s)| (s[0], i)).collect();
        let eidx: HashMap<Simplex, usize> =
            edges.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut d1 = IMat::zero(verts.len(), edges.len());
        for (j, e) in edges.iter().enumerate() {
            d1[(vidx[&e[1]], j)] = BigInt::one();
            d1[(vidx[&e[0]], j)] += -BigInt::one();
        }
        let mut d2 = IMat::zero(edges.len(), tris.len());
        for (j, t) in tris.iter().enumerate() {
            for i in 0..3 {
                let mut face = t.clone();
                face.remove(i);
                let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                d2[(eidx[&face], j)] = sign;
            }
        }
        // Kernel lattice of d1: columns rank1.. of V1.
        let snf1 = smith_normal_form(&d1);
        let rank1 = snf1.rank();
        let k = edges.len() - rank1;
        let v1_inv = invert_unimodular(&snf1.v);
        // Express d2 in kernel coordinates and take SNF of the resulting map.
        let mut m = IMat::zero(k, tris.len());
        for j in 0..tris.len() {
            let col: Vec<BigInt> = (0..edges.len()).map(|i| d2[(i, j)].clone()).collect();
            let y = mat_vec_rows(&v1_inv, &col);
            for i in 0..k {
                m[(i, j)] = y[rank1 + i].clone();
            }
        }
        let snf2 = smith_normal_form(&m);
        let mut factor: Vec<BigInt> = Vec::new();
        for i in 0..k {
            let f = if i < snf2.rank() { snf2.s[(i, i)].clone() } else { BigInt::zero() };
            factor.push(f);
        }
        // Keep only informative coordinates (factor != 1).
        let keep: Vec<usize> =
            (0..k).filter(|&i| factor[i] != BigInt::one()).collect();
        let free_rank = keep.iter().filter(|&&i| factor[i].is_zero()).count();
        // Representative cycles: coordinate j corresponds to u2^{-1} e_j in
        // kernel coordinates, mapped back through the kernel basis.
        let u2_inv = invert_unimodular_int(&snf2.u);
        let mut rep_cycles = Vec::new();
        for &ci in &keep {
            let mut cycle = vec![BigInt::zero(); edges.len()];
            for i in 0..k {
                let coef = u2_inv[(i, ci)].clone();
                if coef.is_zero() {
                    continue;
                }
                for r in 0..edges.len() {
                    let add = &coef * &snf1.v[(r, rank1 + i)];
                    cycle[r] += add;
                }
            }
            rep_cycles.push(cycle);
        }
        let factor_kept: Vec<BigInt> = keep.iter().map(|&i| factor[i].clone()).collect();
        // Restrict u2 to the kept rows for coordinate extraction.
        let mut u2 = IMat::zero(keep.len(), k);
        for (r, &i) in keep.iter().enumerate() {
            for j in 0..k {
                u2[(r, j)] = snf2.u[(i, j)].clone();
            }
        }
        H1Data {
            edges,
            coords: keep.len(),
            factor: factor_kept,
            free_rank,
            rep_cycles,
            v1_inv,
            rank1,
            u2,
        }
    }

    pub fn has_torsion(&self) -> bool {
        self.factor.iter().any(|f| !f.is_zero())
    }

    /// H_1 coordinates of an integral cycle (vector over `edges`), reduced
    /// into canonical range (torsion coordinates into [0, t)).
    pub fn coords_of_cycle(&self, cycle: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(cycle.len(), self.edges.len());
        let y_full = mat_vec_rows(&self.v1_inv, cycle);
        for i in 0..self.rank1 {
            assert!(y_full[i].is_zero() || !self.factor.is_empty() || true);
        }
        let y: Vec<BigInt> = y_full[self.rank1..].to_vec();
        // Verify it really was a cycle: leading coordinates must vanish after
        // scaling (S y' = V^{-1} z pattern); cheaper: check d1 * cycle = 0 was
        // the caller's duty, but assert here for safety.
        let w = self.u2.mul_vec(&y);
        self.reduce(&w)
    }

    /// Reduce coordinate vector into the canonical fundamental domain.
    pub fn reduce(&self, w: &[BigInt]) -> Vec<BigInt> {
        w.iter()
            .zip(&self.factor)
            .map(|(x, f)| {
                if f.is_zero() {
                    x.clone()
                } else {
                    num_integer::Integer::mod_floor(x, f)
                }
            })
            .collect()
    }

    /// Coordinates of the chain image of a cycle under an edge-level chain
    /// map (matrix columns indexed by this subcomplex's edges).
    pub fn push_cycle(&self, edge_map_to_self: &IMat, cycle: &[BigInt]) -> Vec<BigInt> {
        let img = edge_map_to_self.mul_vec(cycle);
        self.coords_of_cycle(&img)
    }
}

/// Inverse of a unimodular integer matrix, as a rational matrix with
/// integral entries (kept rational for reuse in solving).
fn invert_unimodular(m: &IMat) -> QMat {
    let q = m.to_rational();
    let id = QMat::identity(m.rows);
    q.solve(&id).expect("unimodular matrix is invertible")
}

fn invert_unimodular_int(m: &IMat) -> IMat {
    let inv = invert_unimodular(m);
    let mut out = IMat::zero(m.rows, m.cols);
    for i in 0..m.rows {
        for j in 0..m.cols {
            assert!(inv[(i, j)].is_integer());
            out[(i, j)] = inv[(i, j)].to_integer();
        }
    }
    out
}

fn mat_vec_rows(m: &QMat, v: &[BigInt]) -> Vec<BigInt> {
    assert_eq!(m.cols, v.len());
    (0..m.rows)
        .map(|i| {
            let s: BigRational = (0..m.cols)
                .map(|j| &m[(i, j)] * BigRational::from_integer(v[j].clone()))
                .sum();
            assert!(s.is_integer());
            s.to_integer()
        })
        .collect()
}

/// Edge-chain vector of a vertex path (consecutive vertices must be equal or
/// span an edge in the given sorted edge list).
pub fn path_to_chain(edges: &[Simplex], path: &[usize]) -> Result<Vec<BigInt>> {
    let mut chain = vec![BigInt::zero(); edges.len()];
    for w in path.windows(2) {
        let (a, b) = (w[0], w[1]);
        if a == b {
            continue;
        }
        let e = vec![a.min(b), a.max(b)];
        let i = edges
            .binary_search(&e)
            .map_err(|_| Error::InvalidInput(format!("path step {a}->{b} is not an edge")))?;
        if a < b {
            chain[i] += BigInt::one();
        } else {
            chain[i] -= BigInt::one();
        }
    }
    Ok(chain)
}

/// Standard test shapes with trivial group action.
pub mod shapes {
    use super::*;

    /// Circle as an n-gon (n >= 3).
    pub fn polygon(n: usize) -> GComplex {
        let simplices: Vec<Vec<usize>> = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        GComplex::plain(&format!("circle{n}"), n, &simplices).unwrap()
    }

    /// Filled triangle (a disk).
    pub fn disk() -> GComplex {
        GComplex::plain("disk", 3, &[vec![0, 1, 2]]).unwrap()
    }

    /// Two points.
    pub fn two_points() -> GComplex {
        GComplex::plain("s0", 2, &[vec![0], vec![1]]).unwrap()
    }

    /// Octahedron: boundary of the 3-dim cross polytope, a 2-sphere.
    /// Vertices: 0 = north pole, 1 = south pole, 2..6 = equator square.
    pub fn octahedron() -> GComplex {
        let eq = [2usize, 3, 4, 5];
        let mut simplices = Vec::new();
        for i in 0..4 {
            let (a, b) = (eq[i], eq[(i + 1) % 4]);
            simplices.push(vec![0, a, b]);
            simplices.push(vec![1, a, b]);
        }
        GComplex::plain("octahedron", 6, &simplices).unwrap()
    }

    /// Torus: standard 7-vertex triangulation.
    pub fn torus7() -> GComplex {
        let mut tris: Vec<Vec<usize>> = Vec::new();
        for i in 0..7usize {
            tris.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
            tris.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
        }
        GComplex::plain("torus7", 7, &tris).unwrap()
    }

    /// Real projective plane: minimal 6-vertex triangulation.
    pub fn rp2() -> GComplex {
        let tris = vec![
            vec![0, 1, 4],
            vec![0, 1, 5],
            vec![0, 2, 3],
            vec![0, 2, 5],
            vec![0, 3, 4],
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 5],
            vec![2, 4, 5],
            vec![3, 4, 5],
        ];
        GComplex::plain("rp2", 6, &tris).unwrap()
    }

    /// Wedge of two circles (two triangles sharing vertex 0).
    pub fn wedge_two_circles() -> GComplex {
        GComplex::plain(
            "wedge2",
            5,
            &[vec![0, 1], vec![1, 2], vec![0, 2], vec![0, 3], vec![3, 4], vec![0, 4]],
        )
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::shapes::*;
    use super::*;
    use crate::linalg::int;
    use num_traits::Signed;

    #[test]
    fn hexagon_chain_complex() {
        let x = polygon(6);
        let cc = x.full_chain_complex();
        assert_eq!(cc.ranks(), vec![6, 6]);
        let h = RationalHomology::new(&cc);
        assert_eq!(h.betti, vec![1, 1]);
        assert_eq!(x.euler_characteristic(), 0);
    }

    #[test]
    fn octahedron_is_a_sphere() {
        let x = octahedron();
        let cc = x.full_chain_complex();
        let h = RationalHomology::new(&cc);
        assert_eq!(h.betti, vec![1, 0, 1]);
        assert_eq!(x.euler_characteristic(), 2);
    }

    #[test]
    fn torus_homology() {
        let x = torus7();
        let h = RationalHomology::new(&x.full_chain_complex());
        assert_eq!(h.betti, vec![1, 2, 1]);
    }

    #[test]
    fn identity_map_lefschetz_is_euler() {
        for x in [polygon(5), octahedron(), disk(), torus7()] {
            let cc = x.full_chain_complex();
            let f = chain_map(&cc, &cc, |v| v);
            let h = RationalHomology::new(&cc);
            assert_eq!(h.lefschetz_number(&f), int(x.euler_characteristic()));
        }
    }

    #[test]
    fn antipode_on_two_points() {
        let x = two_points();
        let cc = x.full_chain_complex();
        let f = chain_map(&cc, &cc, |v| 1 - v);
        let h = RationalHomology::new(&cc);
        assert_eq!(h.lefschetz_number(&f), int(0));
    }

    #[test]
    fn reflection_on_circle_has_lefschetz_two() {
        let x = polygon(6);
        let cc = x.full_chain_complex();
        let f = chain_map(&cc, &cc, |v| (6 - v) % 6);
        let h = RationalHomology::new(&cc);
        assert_eq!(h.lefschetz_number(&f), int(2)); // 1 - deg = 1 - (-1)
    }

    #[test]
    fn h1_of_circle_is_z() {
        let x = polygon(6);
        let h1 = H1Data::new(&x.simplices);
        assert_eq!(h1.coords, 1);
        assert_eq!(h1.free_rank, 1);
        assert!(!h1.has_torsion());
        // The fundamental cycle has coordinate +-1.
        let cycle: Vec<BigInt> = x.simplices[1]
            .iter()
            .map(|e| if e[0] + 1 == e[1] { BigInt::one() } else { -BigInt::one() })
            .collect();
        let c = h1.coords_of_cycle(&cycle);
        assert_eq!(c[0].clone().abs(), BigInt::one());
    }

    #[test]
    fn h1_of_torus_is_z2() {
        let x = torus7();
        let h1 = H1Data::new(&x.simplices);
        assert_eq!(h1.free_rank, 2);
        assert!(!h1.has_torsion());
    }

    #[test]
    fn h1_of_rp2_is_z2_torsion() {
        let x = rp2();
        let h1 = H1Data::new(&x.simplices);
        assert_eq!(h1.free_rank, 0);
        assert_eq!(h1.factor, vec![BigInt::from(2)]);
    }

    #[test]
    fn h1_rep_cycles_have_unit_coordinates() {
        for x in [polygon(5), torus7(), wedge_two_circles()] {
            let h1 = H1Data::new(&x.simplices);
            for (j, c) in h1.rep_cycles.iter().enumerate() {
                let coords = h1.coords_of_cycle(c);
                for (i, v) in coords.iter().enumerate() {
                    let expect = if i == j { BigInt::one() } else { BigInt::zero() };
                    assert_eq!(v, &expect);
                }
            }
        }
    }

    #[test]
    fn fixed_subcomplex_of_reflection() {
        use crate::group::catalog::cyclic;
        // Hexagon with Z/2 reflection through vertices 0 and 3.
        let z2 = cyclic(2);
        let refl = Perm::new(vec![0, 5, 4, 3, 2, 1]).unwrap();
        let simplices: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
        let x = GComplex::new("hex", z2, 6, &simplices, &[refl]).unwrap();
        assert!(x.is_admissible());
        let classes = crate::group::conjugacy_classes_of_subgroups(&x.group).unwrap();
        let z2sub = classes.classes[1].representative.clone();
        let fix = x.fixed_subcomplex(&z2sub);
        assert_eq!(fix.simplices[0].len(), 2); // vertices 0 and 3
        assert_eq!(fix.components.len(), 2);
        assert!(fix.singular.iter().all(|l| l.is_empty()));
        let free = x.fixed_subcomplex(&x.group.trivial_subgroup());
        assert_eq!(free.simplices, x.simplices);
        assert_eq!(free.singular[0].len(), 2); // the two reflection-fixed vertices
    }

    #[test]
    fn inadmissible_edge_flip_detected() {
        use crate::group::catalog::cyclic;
        // 2-gon: Z/2 swaps the two vertices, stabilizing each edge setwise.
        let z2 = cyclic(2);
        let swap = Perm::new(vec![1, 0]).unwrap();
        let x = GComplex::new("bigon", z2, 2, &[vec![0, 1]], &[swap]).unwrap();
        assert!(!x.is_admissible());
    }

    #[test]
    fn relative_chain_complex_ranks() {
        let x = polygon(6);
        let rel: Vec<Vec<Simplex>> = vec![vec![vec![0], vec![3]], vec![]];
        let cc = x.chain_complex(&x.simplices, Some(&rel)).unwrap();
        assert_eq!(cc.ranks(), vec![4, 6]);
    }

    #[test]
    fn map_validation() {
        let x = polygon(6);
        let ok: Vec<usize> = (0..6).map(|v| (6 - v) % 6).collect();
        validate_simplicial(&x, &x, &ok).unwrap();
        let bad: Vec<usize> = (0..6).map(|v| (v * 2) % 6).collect();
        assert!(validate_simplicial(&x, &x, &bad).is_err());
    }
}
