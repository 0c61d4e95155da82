//! The generalized equivariant Lefschetz invariant.
//!
//! For each preserved object of the fundamental category the cellular chains
//! of the universal cover of its component form a free module over the
//! twisted group ring of Aut(x); the self-map lifts to a twisted endomorphism
//! whose graded trace is the object's component of `lambda_G(f)`. This module
//! builds those chain data, assembles the local invariant `lambda_G^loc(f)`
//! from isolated fixed-point data, relates both through the character map
//! (with two independent evaluation routes), and computes the coarser
//! Burnside-ring Lefschetz class.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::burnside::{BurnsideElement, LinearSphereMap};
use crate::complex::{path_to_chain, ChainComplexZ, GComplex, Simplex};
use crate::error::{Error, Result};
use crate::fundcat::{Analysis, AutExtension, MorOrbit, Pi1Model, Pi1Presentation, PiElt};
use crate::group::{conjugacy_classes_of_subgroups, FiniteGroup, Subgroup, SubgroupClasses};
use crate::linalg::{smith_normal_form, IMat, QMat};
use crate::perm::{sort_sign, Perm};
use crate::subdivision::MapModel;
use crate::twisted::{
    twisted_classes, AutElt, ClassSum, GroupRingElement, RMat, TwistedChainEndo, TwistedClassSet,
};

fn concat_paths(parts: &[&[usize]]) -> Vec<usize> {
    let mut out: Vec<usize> = Vec::new();
    for part in parts {
        for &v in *part {
            if out.last() != Some(&v) {
                out.push(v);
            }
        }
    }
    out
}

fn reverse_path(p: &[usize]) -> Vec<usize> {
    let mut q = p.to_vec();
    q.reverse();
    q
}

fn is_subset(a: &Simplex, b: &Simplex) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

/// Subdivision data shared by every per-cell image expansion: the composite
/// subdivision chain map, carriers and the fine 1-skeleton.
struct SdData {
    sd: Vec<IMat>,
    base_cc: ChainComplexZ,
    top_cc: ChainComplexZ,
    carrier: Vec<Simplex>,
    adj: Vec<Vec<usize>>,
}

/// One signed simplex of the image chain of a cell, together with a base
/// vertex path from the image of the cell's anchor to a vertex of `img`
/// (the f-image of a fine walk inside the cell, so the path tracks the sheet
/// of the lifted image).
struct Piece {
    img: Simplex,
    coeff: BigInt,
    tail: Vec<usize>,
}

impl SdData {
    fn new(map: &MapModel) -> SdData {
        let base_cc = map.base().full_chain_complex();
        let top = map.tower.top();
        let top_cc = top.full_chain_complex();
        let sd = map.tower.chain_map_to_top();
        let carrier: Vec<Simplex> =
            (0..top.num_vertices).map(|v| map.tower.carrier_in_base(v)).collect();
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); top.num_vertices];
        if top.simplices.len() > 1 {
            for e in &top.simplices[1] {
                adj[e[0]].push(e[1]);
                adj[e[1]].push(e[0]);
            }
        }
        SdData { sd, base_cc, top_cc, carrier, adj }
    }

    /// Expand the image chain of a cell into signed simplices with sheet
    /// paths, anchored at the given vertex of the cell.
    fn pieces(&self, map: &MapModel, e: &Simplex, anchor: usize) -> Vec<Piece> {
        let d = e.len() - 1;
        let j = self.base_cc.index_of(e).expect("cell of the base complex");
        // Breadth-first parents over the fine vertices carried by e, rooted
        // at the lift of the anchor.
        let start = map.tower.lift_vertex(anchor);
        let mut parent: HashMap<usize, usize> = HashMap::new();
        parent.insert(start, start);
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if !parent.contains_key(&w) && is_subset(&self.carrier[w], e) {
                    parent.insert(w, v);
                    queue.push_back(w);
                }
            }
        }
        let mut out = Vec::new();
        for (i, sigma) in self.top_cc.basis[d].iter().enumerate() {
            let c = &self.sd[d][(i, j)];
            if c.is_zero() {
                continue;
            }
            let imgs: Vec<usize> = sigma.iter().map(|&v| map.vertex_images[v]).collect();
            let mut img = imgs.clone();
            img.sort_unstable();
            img.dedup();
            if img.len() != d + 1 {
                continue; // degenerate piece
            }
            let sf = sort_sign(&imgs).expect("non-degenerate image is injective");
            let mut walk = vec![sigma[0]];
            let mut cur = sigma[0];
            while parent[&cur] != cur {
                cur = parent[&cur];
                walk.push(cur);
            }
            walk.reverse();
            let mut tail: Vec<usize> = Vec::new();
            for v in walk {
                let w = map.vertex_images[v];
                if tail.last() != Some(&w) {
                    tail.push(w);
                }
            }
            out.push(Piece { img, coeff: c * BigInt::from(sf), tail });
        }
        out
    }
}

/// The deck element (w, a) carrying the canonical lift of a representative
/// cell (lift path `rep_path`) to the lift described by `q`, a path from the
/// basepoint ending at w applied to the representative's anchor.
fn recover(host: &AutExtension, w: usize, rep_path: &[usize], q: &[usize]) -> PiElt {
    let pw = &host.p_w[&w];
    let moved = host.weyl_path(w, rep_path);
    let lp = concat_paths(&[&reverse_path(pw), &moved, &reverse_path(q)]);
    host.eval_loop(&lp)
}

/// Orientation sign of a Weyl element on a sorted cell.
fn weyl_sign(host: &AutExtension, w: usize, cell: &Simplex) -> i64 {
    let moved: Vec<usize> = cell.iter().map(|&v| host.weyl_vertex(w, v)).collect();
    sort_sign(&moved).expect("group elements act injectively")
}

/// Cells of one component organized into Weyl orbits with canonical lifts.
/// In relative mode the singular cells are dropped and the orbits are free;
/// in absolute mode every cell is kept and stabilizers are recorded.
struct OrbitCells {
    basis: Vec<Vec<Simplex>>,
    anchor: Vec<Vec<usize>>,
    rep_path: Vec<Vec<Vec<usize>>>,
    /// Cell -> (representative row, Weyl elements moving the representative
    /// onto the cell).
    locate: Vec<HashMap<Simplex, (usize, Vec<usize>)>>,
    /// Stabilizer of each representative's canonical lift inside Aut(x).
    stab: Vec<Vec<Vec<AutElt>>>,
}

fn orbit_cells(an: &Analysis, oi: usize, host: &AutExtension, relative: bool) -> OrbitCells {
    let o = &an.objects[oi].object;
    let cd = &an.class_data[o.class_index];
    let comp = cd.fixed.component_simplices(o.component);
    let sing = cd.fixed.component_singular(o.component);
    let weyl = &host.weyl.group;
    let mut basis: Vec<Vec<Simplex>> = Vec::new();
    let mut anchor: Vec<Vec<usize>> = Vec::new();
    let mut rep_path: Vec<Vec<Vec<usize>>> = Vec::new();
    let mut locate: Vec<HashMap<Simplex, (usize, Vec<usize>)>> = Vec::new();
    let mut stab: Vec<Vec<Vec<AutElt>>> = Vec::new();
    for d in 0..comp.len() {
        let empty: Vec<Simplex> = Vec::new();
        let sing_d = sing.get(d).unwrap_or(&empty);
        let mut reps: Vec<Simplex> = Vec::new();
        let mut anc: Vec<usize> = Vec::new();
        let mut paths: Vec<Vec<usize>> = Vec::new();
        let mut loc: HashMap<Simplex, (usize, Vec<usize>)> = HashMap::new();
        let mut stabs: Vec<Vec<AutElt>> = Vec::new();
        for cell in &comp[d] {
            if relative && sing_d.binary_search(cell).is_ok() {
                continue;
            }
            if loc.contains_key(cell) {
                continue;
            }
            // Orbit of the cell under the component-preserving Weyl elements.
            let images: Vec<(usize, Simplex)> = host
                .weyl_x
                .iter()
                .map(|&w| {
                    let mut s: Simplex =
                        cell.iter().map(|&v| host.weyl_vertex(w, v)).collect();
                    s.sort_unstable();
                    (w, s)
                })
                .collect();
            let rep = images.iter().map(|(_, s)| s).min().unwrap().clone();
            let w0 = images.iter().find(|(_, s)| *s == rep).unwrap().0;
            let w0_inv = weyl.inv(w0);
            let row = reps.len();
            for (w, s) in &images {
                let w_rel = weyl.mul(*w, w0_inv);
                let entry = loc.entry(s.clone()).or_insert((row, Vec::new()));
                if !entry.1.contains(&w_rel) {
                    entry.1.push(w_rel);
                }
            }
            let a = *rep
                .iter()
                .min_by_key(|&&v| (an.priority[v], v))
                .expect("cells are non-empty");
            let p = host.pres.geodesic(a);
            reps.push(rep);
            anc.push(a);
            paths.push(p);
        }
        if relative {
            for (s, (_, ws)) in &loc {
                assert_eq!(ws.len(), 1, "Weyl action not free on cell {s:?}");
            }
        }
        // Lift stabilizers of the representatives.
        for (ri, rep) in reps.iter().enumerate() {
            let ws = &loc[rep].1;
            let mut elems = Vec::new();
            for &w in ws {
                let ta = host.weyl_vertex(w, anc[ri]);
                let q = concat_paths(&[&paths[ri], &[ta]]);
                let a = recover(host, w, &paths[ri], &q);
                elems.push((w, a));
            }
            stabs.push(elems);
        }
        basis.push(reps);
        anchor.push(anc);
        rep_path.push(paths);
        locate.push(loc);
        stab.push(stabs);
    }
    OrbitCells { basis, anchor, rep_path, locate, stab }
}

/// The equivariant cellular chain complex of the cover of one object's
/// component (relative to the more-singular part) together with the lifted
/// chain endomorphism of the self-map, as a twisted endomorphism over the
/// group ring of Aut(x).
pub struct CoverChain {
    pub object: usize,
    /// Orbit representative cells per dimension (the module basis).
    pub basis: Vec<Vec<Simplex>>,
    pub endo: TwistedChainEndo,
}

pub fn cover_chain(an: &Analysis, oi: usize) -> Result<CoverChain> {
    let sd = SdData::new(an.map);
    cover_chain_with(an, oi, &sd)
}

fn cover_chain_with(an: &Analysis, oi: usize, sd: &SdData) -> Result<CoverChain> {
    let host = an.objects[oi].aut.as_ref().ok_or_else(|| {
        Error::ComponentNotPreserved(format!(
            "object {} is not preserved by the map",
            an.object_label(oi)
        ))
    })?;
    let cells = orbit_cells(an, oi, host, true);
    let ranks: Vec<usize> = cells.basis.iter().map(|b| b.len()).collect();
    let mut boundaries = Vec::new();
    let mut endos = Vec::new();
    for d in 0..ranks.len() {
        let rows_b = if d == 0 { 0 } else { ranks[d - 1] };
        let mut bmat = RMat::zero(rows_b, ranks[d]);
        let mut umat = RMat::zero(ranks[d], ranks[d]);
        for (cj, e) in cells.basis[d].iter().enumerate() {
            let anchor = cells.anchor[d][cj];
            let p = &cells.rep_path[d][cj];
            if d > 0 {
                for k in 0..e.len() {
                    let mut face = e.clone();
                    face.remove(k);
                    // Faces missing from the basis lie in the singular part.
                    let Some((ri, ws)) = cells.locate[d - 1].get(&face) else { continue };
                    let w = ws[0];
                    let ta = host.weyl_vertex(w, cells.anchor[d - 1][*ri]);
                    let q = concat_paths(&[p, &[ta]]);
                    let a = recover(host, w, &cells.rep_path[d - 1][*ri], &q);
                    let sw = weyl_sign(host, w, &cells.basis[d - 1][*ri]);
                    let sign = if k % 2 == 0 { sw } else { -sw };
                    bmat.entries[*ri][cj]
                        .add_term((w, a), BigRational::from_integer(BigInt::from(sign)));
                }
            }
            let fp = an.map.image_path(p);
            for piece in sd.pieces(an.map, e, anchor) {
                let Some((ri, ws)) = cells.locate[d].get(&piece.img) else { continue };
                let w = ws[0];
                let ta = host.weyl_vertex(w, cells.anchor[d][*ri]);
                let q =
                    concat_paths(&[&reverse_path(&host.w_path), &fp, &piece.tail, &[ta]]);
                let a = recover(host, w, &cells.rep_path[d][*ri], &q);
                let sw = weyl_sign(host, w, &cells.basis[d][*ri]);
                umat.entries[*ri][cj].add_term(
                    (w, a),
                    BigRational::from_integer(&piece.coeff * BigInt::from(sw)),
                );
            }
        }
        boundaries.push(bmat);
        endos.push(umat);
    }
    let endo = TwistedChainEndo { ranks, boundaries, endos };
    endo.check(host)?;
    Ok(CoverChain { object: oi, basis: cells.basis, endo })
}

/// The generalized Lefschetz invariant: one twisted class sum per object of
/// the fundamental category. Only nonzero components are stored (objects not
/// preserved by the map contribute zero).
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LambdaElement {
    pub terms: BTreeMap<usize, ClassSum>,
}

impl LambdaElement {
    pub fn zero() -> LambdaElement {
        LambdaElement::default()
    }

    pub fn set(&mut self, oi: usize, sum: ClassSum) {
        if sum.is_zero() {
            self.terms.remove(&oi);
        } else {
            self.terms.insert(oi, sum);
        }
    }

    pub fn add_term(&mut self, oi: usize, class: PiElt, c: BigRational) {
        let mut s = self.terms.remove(&oi).unwrap_or_else(ClassSum::zero);
        s.add_term(class, c);
        self.set(oi, s);
    }

    pub fn get(&self, oi: usize) -> ClassSum {
        self.terms.get(&oi).cloned().unwrap_or_else(ClassSum::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &LambdaElement) -> LambdaElement {
        let mut out = self.clone();
        for (&oi, s) in &other.terms {
            out.set(oi, out.get(oi).add(s));
        }
        out
    }

    pub fn neg(&self) -> LambdaElement {
        LambdaElement { terms: self.terms.iter().map(|(&k, s)| (k, s.neg())).collect() }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|s| s.is_integral())
    }

    /// Collapse each object component to its coefficient total.
    pub fn augmentation(&self) -> BTreeMap<usize, BigRational> {
        self.terms.iter().map(|(&k, s)| (k, s.augmentation())).collect()
    }
}

/// The generalized equivariant Lefschetz invariant of the analyzed self-map:
/// the graded trace of the lifted chain endomorphism on every preserved
/// object.
pub fn lambda(an: &Analysis) -> Result<LambdaElement> {
    let sd = SdData::new(an.map);
    let mut out = LambdaElement::zero();
    for oi in 0..an.objects.len() {
        if !an.objects[oi].object.preserved {
            continue;
        }
        let host = an.objects[oi].aut.as_ref().expect("preserved object has an extension");
        let cc = cover_chain_with(an, oi, &sd)?;
        let classes = twisted_classes(host)?;
        out.set(oi, cc.endo.refined_lefschetz(host, &classes));
    }
    Ok(out)
}

/// An independent evaluation of one object's invariant from per-cell refined
/// incidence numbers: every exact cell of the component (not just orbit
/// representatives) is compared against its own canonical lift, and the
/// alternating sum is averaged over the Weyl orbit size.
pub fn incidence_lefschetz(an: &Analysis, oi: usize) -> Result<ClassSum> {
    let host = an.objects[oi].aut.as_ref().ok_or_else(|| {
        Error::ComponentNotPreserved(format!(
            "object {} is not preserved by the map",
            an.object_label(oi)
        ))
    })?;
    let classes = twisted_classes(host)?;
    let sd = SdData::new(an.map);
    let o = &an.objects[oi].object;
    let cd = &an.class_data[o.class_index];
    let comp = cd.fixed.component_simplices(o.component);
    let sing = cd.fixed.component_singular(o.component);
    let ident = host.weyl.group.identity;
    let mut total = ClassSum::zero();
    for (d, cells) in comp.iter().enumerate() {
        let empty: Vec<Simplex> = Vec::new();
        let sing_d = sing.get(d).unwrap_or(&empty);
        for e in cells {
            if sing_d.binary_search(e).is_ok() {
                continue;
            }
            let anchor = *e.iter().min_by_key(|&&v| (an.priority[v], v)).unwrap();
            let p = host.pres.geodesic(anchor);
            let fp = an.map.image_path(&p);
            for piece in sd.pieces(an.map, e, anchor) {
                if piece.img != *e {
                    continue;
                }
                let q = concat_paths(&[
                    &reverse_path(&host.w_path),
                    &fp,
                    &piece.tail,
                    &[anchor],
                ]);
                let a = recover(host, ident, &p, &q);
                let c = if d % 2 == 0 { piece.coeff } else { -piece.coeff };
                total.add_term(classes.canon(&a), BigRational::from_integer(c));
            }
        }
    }
    let w = BigRational::new(BigInt::one(), BigInt::from(host.weyl_x.len() as i64));
    Ok(total.scale(&w))
}

/// The Burnside-ring Lefschetz class: its coefficient at a subgroup class
/// (H) is the Lefschetz number of the induced map on the H-fixed set,
/// relative to the more-singular part, over the group ring of the Weyl group
/// (the trace keeps only cells mapped onto themselves).
pub fn lefschetz_burnside_class(
    x: &GComplex,
    f: &MapModel,
    classes: &SubgroupClasses,
) -> Result<BurnsideElement> {
    let sd = SdData::new(f);
    let mut coeffs = Vec::new();
    for cls in &classes.classes {
        let h = &cls.representative;
        let fixed = x.fixed_subcomplex(h);
        let weyl = x.group.weyl_group(h);
        let mut total = BigInt::zero();
        for d in 0..fixed.simplices.len() {
            let empty: Vec<Simplex> = Vec::new();
            let sing_d = fixed.singular.get(d).unwrap_or(&empty);
            let mut seen: HashSet<Simplex> = HashSet::new();
            for e in &fixed.simplices[d] {
                if sing_d.binary_search(e).is_ok() || seen.contains(e) {
                    continue;
                }
                for w in 0..weyl.group.order() {
                    seen.insert(x.act_on_simplex(weyl.section[w], e));
                }
                let diag: BigInt = sd
                    .pieces(f, e, e[0])
                    .into_iter()
                    .filter(|p| p.img == *e)
                    .map(|p| p.coeff)
                    .sum();
                if d % 2 == 0 {
                    total += diag;
                } else {
                    total -= diag;
                }
            }
        }
        coeffs.push(total);
    }
    Ok(BurnsideElement { coeffs })
}

/// Chain-level Lefschetz number of the induced self-map of a fixed set X^H
/// (the Hopf trace over all cells, not just orbit representatives). Used as
/// the mark-vector oracle for the Burnside-ring Lefschetz class.
pub fn fixed_set_lefschetz(x: &GComplex, f: &MapModel, h: &Subgroup) -> BigInt {
    let sd = SdData::new(f);
    let fixed = x.fixed_subcomplex(h);
    let mut total = BigInt::zero();
    for d in 0..fixed.simplices.len() {
        for e in &fixed.simplices[d] {
            let diag: BigInt = sd
                .pieces(f, e, e[0])
                .into_iter()
                .filter(|p| p.img == *e)
                .map(|p| p.coeff)
                .sum();
            if d % 2 == 0 {
                total += diag;
            } else {
                total -= diag;
            }
        }
    }
    total
}

/// Data of one G-orbit of isolated fixed vertices: the vertex, generators of
/// its isotropy group (as vertex permutations), the tangent representation of
/// those generators, and the tangent map id - T_x f.
#[derive(Clone, Debug)]
pub struct FixedPointDatum {
    pub vertex: usize,
    pub isotropy_gens: Vec<Perm>,
    pub rep_action: Vec<QMat>,
    pub id_minus_df: QMat,
}

/// Validated local data: one linear sphere map per datum plus the covering
/// map from fixed vertices to datum indices.
struct DatumContext {
    to_g: Vec<usize>,
    g_to_sub: HashMap<usize, usize>,
    classes: SubgroupClasses,
    lsm: LinearSphereMap,
}

fn prepare_local(
    an: &Analysis,
    data: &[FixedPointDatum],
) -> Result<(Vec<DatumContext>, HashMap<usize, usize>)> {
    let g = &an.complex.group;
    let mut covered: HashMap<usize, usize> = HashMap::new();
    for (di, datum) in data.iter().enumerate() {
        if an.map.image_vertex(datum.vertex) != datum.vertex {
            return Err(Error::InvalidInput(format!(
                "datum vertex {} is not fixed by the map",
                datum.vertex
            )));
        }
        for gi in 0..g.order() {
            let u = an.complex.act_on_vertex(gi, datum.vertex);
            if covered.get(&u).is_some_and(|&other| other != di) {
                return Err(Error::InvalidInput(format!(
                    "data cover the orbit of vertex {u} twice"
                )));
            }
            covered.insert(u, di);
        }
    }
    let fixed: Vec<usize> = (0..an.complex.num_vertices)
        .filter(|&v| an.map.image_vertex(v) == v)
        .collect();
    for &v in &fixed {
        if !covered.contains_key(&v) {
            return Err(Error::InvalidInput(format!(
                "fixed vertex {v} is not covered by the fixed-point data"
            )));
        }
    }
    // Isolation within each orbit: two fixed vertices of one orbit must not
    // span an edge (fixed points must be isolated in their own stratum).
    if an.complex.simplices.len() > 1 {
        for e in &an.complex.simplices[1] {
            let (u, v) = (e[0], e[1]);
            if fixed.contains(&u) && fixed.contains(&v) && covered[&u] == covered[&v] {
                return Err(Error::InvalidInput(format!(
                    "fixed vertices {u} and {v} of one orbit share a simplex"
                )));
            }
        }
    }
    let mut ctxs = Vec::new();
    for datum in data {
        let gv = an.complex.isotropy_of_vertex(datum.vertex);
        let sub = FiniteGroup::from_generators(
            "isotropy",
            an.complex.num_vertices,
            datum.isotropy_gens.clone(),
        )?;
        let mut to_g = Vec::new();
        let mut g_to_sub = HashMap::new();
        for (si, p) in sub.elements.iter().enumerate() {
            let gi = an.complex.action.iter().position(|q| q == p).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "isotropy generators of vertex {} act outside the group",
                    datum.vertex
                ))
            })?;
            if !gv.contains(gi) {
                return Err(Error::InvalidInput(format!(
                    "generator does not fix vertex {}",
                    datum.vertex
                )));
            }
            to_g.push(gi);
            g_to_sub.insert(gi, si);
        }
        if sub.order() != gv.order() {
            return Err(Error::InvalidInput(format!(
                "generators span {} of {} isotropy elements at vertex {}",
                sub.order(),
                gv.order(),
                datum.vertex
            )));
        }
        let classes = conjugacy_classes_of_subgroups(&sub)?;
        let lsm =
            LinearSphereMap::new(sub.clone(), &datum.rep_action, datum.id_minus_df.clone())?;
        ctxs.push(DatumContext { to_g, g_to_sub, classes, lsm });
    }
    Ok((ctxs, covered))
}

/// Resolve the object hosting the pair (subgroup L, fixed vertex v): conjugate
/// L onto its class representative and move the vertex into the Weyl-orbit
/// representative component. Returns the object index and the moved vertex.
fn resolve_fixed_point(an: &Analysis, l: &Subgroup, v: usize) -> (usize, usize) {
    let g = &an.complex.group;
    let ci = an.classes.class_of(l).expect("every subgroup belongs to a class");
    let rep = &an.classes.classes[ci].representative;
    let sigma = (0..g.order())
        .find(|&s| {
            let si = g.inv(s);
            let mut conj: Vec<usize> =
                l.elems.iter().map(|&e| g.mul(g.mul(s, e), si)).collect();
            conj.sort_unstable();
            conj == rep.elems
        })
        .expect("class member is conjugate to the representative");
    let p1 = an.complex.act_on_vertex(sigma, v);
    let cd = &an.class_data[ci];
    let c1 = cd.fixed.component_of_vertex[&p1];
    let r = cd.orbit_rep[c1];
    let n = cd.weyl.section[cd.to_rep[c1]];
    let p2 = an.complex.act_on_vertex(n, p1);
    debug_assert_eq!(cd.fixed.component_of_vertex[&p2], r);
    let oi = an.find_object(ci, r).expect("objects cover every orbit representative");
    (oi, p2)
}

/// The fixed point class of a fixed vertex inside an object's component: the
/// class of the loop t * f(t reversed) * w_path at the basepoint.
fn fixed_point_class(an: &Analysis, host: &AutExtension, v: usize) -> PiElt {
    let t = host.pres.geodesic(v);
    let ft = an.map.image_path(&reverse_path(&t));
    host.eval_loop(&concat_paths(&[&t, &ft, &host.w_path]))
}

/// The local equivariant Lefschetz invariant assembled from fixed-point data:
/// each orbit contributes its tangent-map equivariant degree, pushed from the
/// Burnside ring of the isotropy group to the objects through the fixed point
/// classes of the vertex.
pub fn lambda_local(an: &Analysis, data: &[FixedPointDatum]) -> Result<LambdaElement> {
    let (ctxs, _covered) = prepare_local(an, data)?;
    let mut cache: HashMap<usize, TwistedClassSet> = HashMap::new();
    let mut out = LambdaElement::zero();
    for (di, datum) in data.iter().enumerate() {
        let ctx = &ctxs[di];
        let deg = match ctx.lsm.equivariant_degree(&ctx.classes) {
            Err(Error::SingularOnStratum(lbl)) => {
                return Err(Error::SingularFixedPoint(format!(
                    "vertex {}, stratum {lbl}",
                    datum.vertex
                )))
            }
            r => r?,
        };
        for (si, c) in deg.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut elems: Vec<usize> = ctx.classes.classes[si]
                .representative
                .elems
                .iter()
                .map(|&e| ctx.to_g[e])
                .collect();
            elems.sort_unstable();
            let (oi, p2) = resolve_fixed_point(an, &Subgroup { elems }, datum.vertex);
            let host = an.objects[oi].aut.as_ref().ok_or_else(|| {
                Error::ComponentNotPreserved(format!(
                    "fixed vertex {} lies in an unpreserved component",
                    datum.vertex
                ))
            })?;
            if !cache.contains_key(&oi) {
                cache.insert(oi, twisted_classes(host)?);
            }
            let alpha = cache[&oi].canon(&fixed_point_class(an, host, p2));
            out.add_term(oi, alpha, BigRational::from_integer(c.clone()));
        }
    }
    Ok(out)
}

/// Realize a pi1 element as a loop at the presentation basepoint.
fn loop_of_pi(pres: &Pi1Presentation, pi1: &Pi1Model, a: &PiElt) -> Vec<usize> {
    let mut path = vec![pres.basepoint];
    let append_gen = |path: &mut Vec<usize>, gen: usize, count: i64| {
        let lp = pres.loop_of_generator(gen);
        let seg = if count > 0 { lp } else { reverse_path(&lp) };
        for _ in 0..count.unsigned_abs() {
            *path = concat_paths(&[path, &seg]);
        }
    };
    match (pi1, a) {
        (Pi1Model::Trivial, PiElt::Unit) => {}
        (Pi1Model::Finite(p), PiElt::Fin(c)) => {
            for &(gen, s) in &p.rep_words[*c] {
                append_gen(&mut path, gen, s);
            }
        }
        (Pi1Model::FreeAbelian { rank, h1 }, PiElt::Ab(coords)) => {
            // Solve for a word in the generators with the given homology
            // coordinates (the generators span H1, so a solution exists).
            let gens = pres.generators.len();
            let mut m = IMat::zero(*rank, gens);
            for j in 0..gens {
                let lp = pres.loop_of_generator(j);
                let chain =
                    path_to_chain(&h1.edges, &lp).expect("generator loop stays in the component");
                let col = h1.coords_of_cycle(&chain);
                for i in 0..*rank {
                    m[(i, j)] = col[i].clone();
                }
            }
            let sm = smith_normal_form(&m);
            let ut = sm.u.mul_vec(coords);
            let mut y = vec![BigInt::zero(); gens];
            for (i, f) in sm.factors.iter().enumerate() {
                let q = &ut[i] / f;
                assert!((&ut[i] - &q * f).is_zero(), "pi1 element outside the generator span");
                y[i] = q;
            }
            for entry in ut.iter().skip(sm.factors.len()) {
                assert!(entry.is_zero(), "pi1 element outside the generator span");
            }
            let n = sm.v.mul_vec(&y);
            for (j, k) in n.iter().enumerate() {
                let k = k.to_i64().expect("loop multiplicity fits in i64");
                if k != 0 {
                    append_gen(&mut path, j, k);
                }
            }
        }
        _ => panic!("pi1 element does not match model"),
    }
    path
}

/// Transport a class sum of object x along a morphism-orbit representative
/// (g, t) in Mor(y, x): alpha maps to the class of
/// t * g.alpha * g.(w_path_x reversed) * f(t reversed) * w_path_y.
fn transport(
    an: &Analysis,
    yi: usize,
    xi: usize,
    orbit: &MorOrbit,
    sum: &ClassSum,
    classes_y: &TwistedClassSet,
) -> ClassSum {
    let hx = an.objects[xi].aut.as_ref().expect("source object preserved");
    let hy = an.objects[yi].aut.as_ref().expect("target object preserved");
    let act = |p: &[usize]| -> Vec<usize> {
        p.iter().map(|&v| an.complex.act_on_vertex(orbit.g, v)).collect()
    };
    let t = &orbit.path_t;
    let f_rev_t = an.map.image_path(&reverse_path(t));
    let mut out = ClassSum::zero();
    for (alpha, c) in &sum.terms {
        let la = loop_of_pi(&hx.pres, &hx.pi1, alpha);
        let lp = concat_paths(&[
            t,
            &act(&la),
            &act(&reverse_path(&hx.w_path)),
            &f_rev_t,
            &hy.w_path,
        ]);
        out.add_term(classes_y.canon(&hy.eval_loop(&lp)), c.clone());
    }
    out
}

/// The character of an invariant: for each preserved object y, the sum over
/// Aut(y)-orbits of morphisms y -> x of the transported x-component, weighted
/// by the inverse orbit-stabilizer order.
pub fn character(an: &Analysis, lam: &LambdaElement) -> Result<BTreeMap<usize, ClassSum>> {
    let mut out = BTreeMap::new();
    for yi in 0..an.objects.len() {
        if !an.objects[yi].object.preserved {
            continue;
        }
        let hy = an.objects[yi].aut.as_ref().unwrap();
        let classes_y = twisted_classes(hy)?;
        let mut total = ClassSum::zero();
        for (&xi, sum) in &lam.terms {
            if !an.objects[xi].object.preserved {
                continue;
            }
            for orbit in an.morphism_orbits(yi, xi) {
                let tsum = transport(an, yi, xi, &orbit, sum, &classes_y);
                let w = BigRational::new(BigInt::one(), BigInt::from(orbit.stab as i64));
                total = total.add(&tsum.scale(&w));
            }
        }
        out.insert(yi, total);
    }
    Ok(out)
}

/// Invert the character by triangular elimination: morphisms only point from
/// smaller to larger isotropy classes, and the diagonal orbit transports
/// identically, so components can be recovered in descending class order.
pub fn character_preimage(
    an: &Analysis,
    ch: &BTreeMap<usize, ClassSum>,
) -> Result<LambdaElement> {
    let mut lam = LambdaElement::zero();
    for yi in (0..an.objects.len()).rev() {
        if !an.objects[yi].object.preserved {
            continue;
        }
        let hy = an.objects[yi].aut.as_ref().unwrap();
        let classes_y = twisted_classes(hy)?;
        let mut residual = ch.get(&yi).cloned().unwrap_or_else(ClassSum::zero);
        for xi in (yi + 1)..an.objects.len() {
            if !an.objects[xi].object.preserved {
                continue;
            }
            let sum = lam.get(xi);
            if sum.is_zero() {
                continue;
            }
            for orbit in an.morphism_orbits(yi, xi) {
                let tsum = transport(an, yi, xi, &orbit, &sum, &classes_y);
                let w = BigRational::new(-BigInt::one(), BigInt::from(orbit.stab as i64));
                residual = residual.add(&tsum.scale(&w));
            }
        }
        lam.set(yi, residual);
    }
    Ok(lam)
}

/// Independent evaluation of the character at one object: the rational
/// Lefschetz class of the lifted map on the cover of the whole component
/// (all cells, including singular ones), with each orbit traced through the
/// stabilizer-averaged projection of its possibly non-free module.
pub fn absolute_cover_lefschetz(an: &Analysis, yi: usize) -> Result<ClassSum> {
    let host = an.objects[yi].aut.as_ref().ok_or_else(|| {
        Error::ComponentNotPreserved(format!(
            "object {} is not preserved by the map",
            an.object_label(yi)
        ))
    })?;
    let classes = twisted_classes(host)?;
    let sd = SdData::new(an.map);
    let cells = orbit_cells(an, yi, host, false);
    let ident = host.weyl.group.identity;
    let mut total = ClassSum::zero();
    for d in 0..cells.basis.len() {
        for (ri, e) in cells.basis[d].iter().enumerate() {
            let anchor = cells.anchor[d][ri];
            let p = &cells.rep_path[d][ri];
            let fp = an.map.image_path(p);
            let mut diag = GroupRingElement::zero();
            for piece in sd.pieces(an.map, e, anchor) {
                let (rj, ws) = &cells.locate[d][&piece.img];
                if rj != &ri {
                    continue;
                }
                let w = ws[0];
                let ta = host.weyl_vertex(w, anchor);
                let q =
                    concat_paths(&[&reverse_path(&host.w_path), &fp, &piece.tail, &[ta]]);
                let a = recover(host, w, p, &q);
                let sw = weyl_sign(host, w, e);
                diag.add_term((w, a), BigRational::from_integer(&piece.coeff * BigInt::from(sw)));
            }
            let stab = &cells.stab[d][ri];
            let inv = BigRational::new(
                if d % 2 == 0 { BigInt::one() } else { -BigInt::one() },
                BigInt::from(stab.len() as i64),
            );
            for s in stab {
                let xs = GroupRingElement::mul(
                    host,
                    &diag,
                    &GroupRingElement::single(s.clone(), BigRational::one()),
                );
                for ((w, a), c) in &xs.terms {
                    if *w == ident {
                        total.add_term(classes.canon(a), c * &inv);
                    }
                }
            }
        }
    }
    Ok(total)
}

/// Evaluate the character directly from the fixed-point data: each fixed
/// vertex of the component contributes its tangent sign on the K-stratum and
/// its fixed point class, averaged over the Weyl action (a free orbit of
/// fixed vertices counts once, a fully symmetric vertex 1/|W|).
pub fn character_direct(
    an: &Analysis,
    data: &[FixedPointDatum],
) -> Result<BTreeMap<usize, ClassSum>> {
    let (ctxs, covered) = prepare_local(an, data)?;
    let g = &an.complex.group;
    let mut out = BTreeMap::new();
    for yi in 0..an.objects.len() {
        let y = &an.objects[yi];
        if !y.object.preserved {
            continue;
        }
        let hy = y.aut.as_ref().unwrap();
        let classes_y = twisted_classes(hy)?;
        let cd = &an.class_data[y.object.class_index];
        let mut total = ClassSum::zero();
        for v in 0..an.complex.num_vertices {
            if an.map.image_vertex(v) != v
                || cd.fixed.component_of_vertex.get(&v) != Some(&y.object.component)
            {
                continue;
            }
            let di = covered[&v];
            let ctx = &ctxs[di];
            let gd = (0..g.order())
                .find(|&gg| an.complex.act_on_vertex(gg, data[di].vertex) == v)
                .expect("covered vertex lies in the datum orbit");
            let gdi = g.inv(gd);
            let mut elems: Vec<usize> = y
                .object
                .subgroup
                .elems
                .iter()
                .map(|&k| {
                    let e = g.mul(g.mul(gdi, k), gd);
                    *ctx.g_to_sub
                        .get(&e)
                        .expect("conjugated isotropy lies in the datum group")
                })
                .collect();
            elems.sort_unstable();
            let sign = match ctx.lsm.stratum_sign(&Subgroup { elems }, &format!("vertex {v}")) {
                Err(Error::SingularOnStratum(lbl)) => {
                    return Err(Error::SingularFixedPoint(lbl))
                }
                r => r?,
            };
            let alpha = classes_y.canon(&fixed_point_class(an, hy, v));
            total.add_term(
                alpha,
                BigRational::new(sign, BigInt::from(hy.weyl_x.len() as i64)),
            );
        }
        out.insert(yi, total);
    }
    Ok(out)
}

/// Full cross-check of the fixed point theorem on one analyzed map: the
/// chain-level invariant against the local one, and the character of both
/// against two independent evaluations (whole-cover traces and the direct
/// fixed-point formula).
pub struct VerifyReport {
    pub lambda: LambdaElement,
    pub lambda_loc: LambdaElement,
    /// Per-object equality of the two invariants (object label, match).
    pub per_object: Vec<(String, bool)>,
    pub lambda_match: bool,
    pub character_match: bool,
    pub cover_match: bool,
    pub direct_match: bool,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.lambda_match && self.character_match && self.cover_match && self.direct_match
    }
}

pub fn verify_fixed_point_theorem(
    an: &Analysis,
    data: &[FixedPointDatum],
) -> Result<VerifyReport> {
    let lam = lambda(an)?;
    let loc = lambda_local(an, data)?;
    let per_object: Vec<(String, bool)> = (0..an.objects.len())
        .map(|oi| (an.object_label(oi), lam.get(oi) == loc.get(oi)))
        .collect();
    let lambda_match = per_object.iter().all(|(_, ok)| *ok);
    let ch_lam = character(an, &lam)?;
    let ch_loc = character(an, &loc)?;
    let character_match = ch_lam == ch_loc;
    let mut cover_match = true;
    for (&yi, sum) in &ch_lam {
        cover_match &= *sum == absolute_cover_lefschetz(an, yi)?;
    }
    let direct_match = character_direct(an, data)? == ch_lam;
    Ok(VerifyReport {
        lambda: lam,
        lambda_loc: loc,
        per_object,
        lambda_match,
        character_match,
        cover_match,
        direct_match,
    })
}

/// Worked equivariant self-maps with isolated fixed points and full tangent
/// data, used as integration cases for the fixed point theorem.
pub mod flagship {
    use super::*;
    use crate::complex::shapes;
    use crate::group::catalog::cyclic;
    use crate::linalg::rat;
    use crate::subdivision::SdTower;

    fn qmat(rows: &[&[i64]]) -> QMat {
        let mut m = QMat::zero(rows.len(), rows[0].len());
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                m[(i, j)] = rat(v, 1);
            }
        }
        m
    }

    fn octagon_reflection() -> (GComplex, Perm) {
        let edges: Vec<Vec<usize>> = (0..8).map(|i| vec![i, (i + 1) % 8]).collect();
        let refl = Perm::new((0..8).map(|v| (8 - v) % 8).collect()).unwrap();
        let x = GComplex::new("octagon-reflection", cyclic(2), 8, &edges, &[refl.clone()])
            .unwrap();
        (x, refl)
    }

    /// The reflection of an octagon as a self-map of the octagon with the
    /// same reflection as group action: two fully symmetric fixed vertices.
    pub fn reflection_selfmap() -> (GComplex, MapModel, Vec<FixedPointDatum>) {
        let (x, refl) = octagon_reflection();
        let map = MapModel::new(&x, 0, refl.images.clone()).unwrap();
        let data = vec![
            FixedPointDatum {
                vertex: 0,
                isotropy_gens: vec![refl.clone()],
                rep_action: vec![qmat(&[&[-1]])],
                id_minus_df: qmat(&[&[2]]),
            },
            FixedPointDatum {
                vertex: 4,
                isotropy_gens: vec![refl],
                rep_action: vec![qmat(&[&[-1]])],
                id_minus_df: qmat(&[&[2]]),
            },
        ];
        (x, map, data)
    }

    /// A north-south flow on the reflection-symmetric octagon: the source
    /// vertex 0 repels (tangent slope 2), the sink vertex 4 attracts, and the
    /// map is simplicial on one barycentric subdivision.
    pub fn north_south_flow() -> (GComplex, MapModel, Vec<FixedPointDatum>) {
        let (x, refl) = octagon_reflection();
        // Positions around the subdivided circle: p = 0..16, vertex k at 2k,
        // edge midpoints at odd p. The flow target of position p:
        let t = |p: usize| -> usize {
            let q = if p <= 8 { p } else { 16 - p };
            let tv = match q {
                0 => 0,
                7 | 8 => 4,
                q => q / 2 + 1,
            };
            if p <= 8 {
                tv
            } else {
                (8 - tv) % 8
            }
        };
        let tower = SdTower::new(&x, 1).unwrap();
        let fine = tower.top().num_vertices;
        let mut images = vec![0usize; fine];
        for p in 0..16usize {
            let id = if p % 2 == 0 {
                tower.levels[0].fine_vertex(&vec![p / 2])
            } else {
                let (a, b) = (p / 2, (p / 2 + 1) % 8);
                tower.levels[0].fine_vertex(&vec![a.min(b), a.max(b)])
            };
            images[id] = t(p);
        }
        let map = MapModel::new(&x, 1, images).unwrap();
        let data = vec![
            FixedPointDatum {
                vertex: 0,
                isotropy_gens: vec![refl.clone()],
                rep_action: vec![qmat(&[&[-1]])],
                id_minus_df: qmat(&[&[-1]]),
            },
            FixedPointDatum {
                vertex: 4,
                isotropy_gens: vec![refl],
                rep_action: vec![qmat(&[&[-1]])],
                id_minus_df: qmat(&[&[1]]),
            },
        ];
        (x, map, data)
    }

    /// A quarter turn of the octahedron about the polar axis, equivariant for
    /// the pole swap: the two poles form one free orbit of fixed points.
    pub fn octahedron_quarter_turn() -> (GComplex, MapModel, Vec<FixedPointDatum>) {
        let oct = shapes::octahedron();
        let swap = Perm::new(vec![1, 0, 2, 3, 4, 5]).unwrap();
        let x =
            GComplex::new("octahedron-swap", cyclic(2), 6, &oct.simplices[2], &[swap]).unwrap();
        let map = MapModel::new(&x, 0, vec![0, 1, 3, 4, 5, 2]).unwrap();
        let data = vec![FixedPointDatum {
            vertex: 0,
            isotropy_gens: vec![],
            rep_action: vec![],
            // id minus a quarter turn of the tangent plane.
            id_minus_df: qmat(&[&[1, 1], &[-1, 1]]),
        }];
        (x, map, data)
    }

    /// A one-step rotation of the hexagon with the free antipodal action:
    /// no fixed points, and the invariant vanishes identically.
    pub fn free_hexagon_rotation() -> (GComplex, MapModel, Vec<FixedPointDatum>) {
        let edges: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
        let anti = Perm::new(vec![3, 4, 5, 0, 1, 2]).unwrap();
        let x = GComplex::new("hexagon-antipodal", cyclic(2), 6, &edges, &[anti]).unwrap();
        let map = MapModel::new(&x, 0, vec![1, 2, 3, 4, 5, 0]).unwrap();
        (x, map, Vec::new())
    }

    pub fn all() -> Vec<(GComplex, MapModel, Vec<FixedPointDatum>)> {
        vec![
            reflection_selfmap(),
            north_south_flow(),
            octahedron_quarter_turn(),
            free_hexagon_rotation(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burnside::ch0;
    use crate::complex::shapes;
    use crate::fundcat::AnalysisOptions;
    use crate::group::catalog::cyclic;
    use crate::subdivision::circle_degree_map;
    use crate::twisted::{random_pi_elt, Rng};

    fn analyze<'a>(x: &'a GComplex, map: &'a MapModel) -> Analysis<'a> {
        Analysis::new(x, map, &AnalysisOptions::default()).unwrap()
    }

    #[test]
    fn circle_degree_maps_have_expected_classes() {
        for d in [-1i64, 0, 2, 3] {
            let map = circle_degree_map(8, d).unwrap();
            let an = analyze(map.base(), &map);
            let lam = lambda(&an).unwrap();
            assert_eq!(an.objects.len(), 1);
            let sum = lam.get(0);
            assert_eq!(sum.terms.len(), (d - 1).unsigned_abs() as usize, "degree {d}");
            assert_eq!(
                sum.augmentation(),
                BigRational::from_integer(BigInt::from(1 - d)),
                "degree {d}"
            );
            // Independent per-cell incidence route.
            assert_eq!(sum, incidence_lefschetz(&an, 0).unwrap(), "degree {d}");
        }
    }

    #[test]
    fn identity_on_circle_has_zero_invariant() {
        let map = circle_degree_map(8, 1).unwrap();
        let an = analyze(map.base(), &map);
        assert!(lambda(&an).unwrap().is_zero());
    }

    #[test]
    fn hexagon_reflection_identity_invariant() {
        let edges: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
        let refl = Perm::new(vec![0, 5, 4, 3, 2, 1]).unwrap();
        let x = GComplex::new("hex-refl", cyclic(2), 6, &edges, &[refl]).unwrap();
        let map = MapModel::new(&x, 0, (0..6).collect()).unwrap();
        let an = analyze(&x, &map);
        let lam = lambda(&an).unwrap();
        // The free stratum is an open arc (relative Euler characteristic -1);
        // the two fixed vertices contribute +1 each.
        let mut free_total = BigRational::zero();
        let mut point_total = BigRational::zero();
        for (&oi, sum) in &lam.terms {
            if an.objects[oi].object.subgroup.order() == 1 {
                free_total += sum.augmentation();
            } else {
                point_total += sum.augmentation();
            }
        }
        assert_eq!(free_total, BigRational::from_integer(BigInt::from(-1)));
        assert_eq!(point_total, BigRational::from_integer(BigInt::from(2)));
        // Burnside-ring class of the identity: -1 on the free class, 2 on the
        // fixed class; marks are the Euler characteristics 0 and 2.
        let l0 = lefschetz_burnside_class(&x, &map, &an.classes).unwrap();
        assert_eq!(l0.coeffs, vec![BigInt::from(-1), BigInt::from(2)]);
        let marks = ch0(&x.group, &an.classes, &l0);
        assert_eq!(marks.marks, vec![BigInt::zero(), BigInt::from(2)]);
    }

    #[test]
    fn burnside_class_examples() {
        // Identity on a single fixed point of Z/2.
        let pt = GComplex::new("pt", cyclic(2), 1, &[vec![0]], &[Perm::new(vec![0]).unwrap()])
            .unwrap();
        let id = MapModel::new(&pt, 0, vec![0]).unwrap();
        let classes = conjugacy_classes_of_subgroups(&pt.group).unwrap();
        let l = lefschetz_burnside_class(&pt, &id, &classes).unwrap();
        assert_eq!(l.coeffs, vec![BigInt::zero(), BigInt::one()]); // [K/K]

        // Identity on the two-point sphere with the swap action.
        let s0 = GComplex::new(
            "s0-swap",
            cyclic(2),
            2,
            &[vec![0], vec![1]],
            &[Perm::new(vec![1, 0]).unwrap()],
        )
        .unwrap();
        let id = MapModel::new(&s0, 0, vec![0, 1]).unwrap();
        let classes = conjugacy_classes_of_subgroups(&s0.group).unwrap();
        let l = lefschetz_burnside_class(&s0, &id, &classes).unwrap();
        assert_eq!(l.coeffs, vec![BigInt::one(), BigInt::zero()]); // [K/1]

        // The antipode on the two-point sphere with the trivial action.
        let s0t = GComplex::new(
            "s0-trivial",
            cyclic(2),
            2,
            &[vec![0], vec![1]],
            &[Perm::new(vec![0, 1]).unwrap()],
        )
        .unwrap();
        let anti = MapModel::new(&s0t, 0, vec![1, 0]).unwrap();
        let classes = conjugacy_classes_of_subgroups(&s0t.group).unwrap();
        let l = lefschetz_burnside_class(&s0t, &anti, &classes).unwrap();
        assert!(l.is_zero());
    }

    #[test]
    fn burnside_class_marks_equal_fixed_set_lefschetz_numbers() {
        let mut cases: Vec<(GComplex, MapModel)> = Vec::new();
        for (x, map, _) in flagship::all() {
            cases.push((x, map));
        }
        let rp2 = shapes::rp2();
        let id = MapModel::new(&rp2, 0, (0..6).collect()).unwrap();
        cases.push((rp2, id));
        for (x, map) in &cases {
            let classes = conjugacy_classes_of_subgroups(&x.group).unwrap();
            let l0 = lefschetz_burnside_class(x, map, &classes).unwrap();
            let marks = ch0(&x.group, &classes, &l0);
            for (i, cls) in classes.classes.iter().enumerate() {
                assert_eq!(
                    marks.marks[i],
                    fixed_set_lefschetz(x, map, &cls.representative),
                    "{} at {}",
                    x.name,
                    classes.labels[i]
                );
            }
        }
    }

    #[test]
    fn flagships_verify_the_fixed_point_theorem() {
        for (x, map, data) in flagship::all() {
            let an = analyze(&x, &map);
            let report = verify_fixed_point_theorem(&an, &data).unwrap();
            assert!(report.lambda_match, "{}: lambda != lambda_loc", x.name);
            assert!(report.character_match, "{}: character mismatch", x.name);
            assert!(report.cover_match, "{}: cover trace mismatch", x.name);
            assert!(report.direct_match, "{}: direct formula mismatch", x.name);
        }
    }

    #[test]
    fn north_south_flow_has_expected_components() {
        let (x, map, data) = flagship::north_south_flow();
        let an = analyze(&x, &map);
        let loc = lambda_local(&an, &data).unwrap();
        let mut free = Vec::new();
        let mut fixed = Vec::new();
        for (&oi, sum) in &loc.terms {
            if an.objects[oi].object.subgroup.order() == 1 {
                free.push(sum.clone());
            } else {
                fixed.push(sum.clone());
            }
        }
        // Both poles contribute +1 on their own object; the source pole also
        // contributes -1 on the free stratum.
        assert_eq!(fixed.len(), 2);
        for s in &fixed {
            assert_eq!(s.augmentation(), BigRational::one());
        }
        assert_eq!(free.len(), 1);
        assert_eq!(free[0].terms.len(), 1);
        assert_eq!(free[0].augmentation(), BigRational::from_integer(BigInt::from(-1)));
    }

    #[test]
    fn incidence_route_agrees_on_flagships() {
        for (x, map, _) in flagship::all() {
            let an = analyze(&x, &map);
            let lam = lambda(&an).unwrap();
            for oi in 0..an.objects.len() {
                if !an.objects[oi].object.preserved {
                    continue;
                }
                assert_eq!(
                    lam.get(oi),
                    incidence_lefschetz(&an, oi).unwrap(),
                    "{} object {}",
                    x.name,
                    an.object_label(oi)
                );
            }
        }
    }

    #[test]
    fn character_roundtrips_on_random_elements() {
        let (x, map, _) = flagship::north_south_flow();
        let an = analyze(&x, &map);
        let mut rng = Rng::new(0x1ef5);
        for _ in 0..10 {
            let mut lam = LambdaElement::zero();
            for oi in 0..an.objects.len() {
                if !an.objects[oi].object.preserved {
                    continue;
                }
                let host = an.objects[oi].aut.as_ref().unwrap();
                let classes = twisted_classes(host).unwrap();
                for _ in 0..rng.below(3) {
                    let a = classes.canon(&random_pi_elt(host, &mut rng));
                    lam.add_term(
                        oi,
                        a,
                        BigRational::from_integer(BigInt::from(rng.int_in(-3, 3))),
                    );
                }
            }
            let ch = character(&an, &lam).unwrap();
            let back = character_preimage(&an, &ch).unwrap();
            assert_eq!(back, lam);
        }
        // Injectivity on the zero element.
        let ch0map = character(&an, &LambdaElement::zero()).unwrap();
        assert!(ch0map.values().all(|s| s.is_zero()));
        assert!(character_preimage(&an, &ch0map).unwrap().is_zero());
    }
}
