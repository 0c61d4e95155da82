//! The fundamental category of a G-complex: object classes (isotropy class +
//! Weyl orbit of fixed component), fundamental groups of fixed components,
//! the automorphism extension 1 -> pi1 -> Aut(x) -> WH_x -> 1 with its
//! twisted endomorphism, component dynamics under the self-map, and
//! morphism-orbit enumeration.

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_traits::Zero;

use crate::complex::{path_to_chain, FixedSubcomplex, GComplex, H1Data, Simplex};
use crate::error::{Error, Result};
use crate::group::{Subgroup, SubgroupClasses, WeylGroup};
use crate::linalg::IMat;
use crate::subdivision::MapModel;

/// Maximum number of cosets Todd-Coxeter may allocate before giving up.
pub const COSET_LIMIT: usize = 10_000;

/// An element of a pi1 model.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PiElt {
    Unit,
    Fin(usize),
    Ab(Vec<BigInt>),
}

/// Deterministic vertex priorities from a seed (0 = natural order). Used for
/// basepoint and spanning-tree tie-breaking; final invariants must not
/// depend on it.
pub fn vertex_priority(n: usize, seed: u64) -> Vec<usize> {
    let mut order: Vec<usize> = (0..n).collect();
    if seed != 0 {
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = s;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        };
        for i in (1..n).rev() {
            let j = (next() % (i as u64 + 1)) as usize;
            order.swap(i, j);
        }
    }
    let mut priority = vec![0usize; n];
    for (rank, &v) in order.iter().enumerate() {
        priority[v] = rank;
    }
    priority
}

/// Edge-path presentation of the fundamental group of a connected subcomplex:
/// BFS spanning tree, generators = non-tree edges, relators = triangles.
#[derive(Clone, Debug)]
pub struct Pi1Presentation {
    pub vertices: Vec<usize>,
    pub edges: Vec<Simplex>,
    pub basepoint: usize,
    pub parent: HashMap<usize, usize>,
    pub generators: Vec<Simplex>,
    pub gen_index: HashMap<Simplex, usize>,
    pub relators: Vec<Vec<(usize, i64)>>,
    tree_edges: HashSet<Simplex>,
}

impl Pi1Presentation {
    pub fn new(simplices: &[Vec<Simplex>], basepoint: usize, priority: &[usize]) -> Pi1Presentation {
        let vertices: Vec<usize> = simplices[0].iter().map(|s| s[0]).collect();
        let edges: Vec<Simplex> = simplices.get(1).cloned().unwrap_or_default();
        let mut nbrs: HashMap<usize, Vec<usize>> = HashMap::new();
        for e in &edges {
            nbrs.entry(e[0]).or_default().push(e[1]);
            nbrs.entry(e[1]).or_default().push(e[0]);
        }
        for l in nbrs.values_mut() {
            l.sort_by_key(|&v| (priority[v], v));
        }
        let mut parent = HashMap::new();
        let mut tree_edges = HashSet::new();
        parent.insert(basepoint, basepoint);
        let mut queue = VecDeque::from([basepoint]);
        while let Some(u) = queue.pop_front() {
            if let Some(list) = nbrs.get(&u) {
                for &v in list {
                    if !parent.contains_key(&v) {
                        parent.insert(v, u);
                        tree_edges.insert(vec![u.min(v), u.max(v)]);
                        queue.push_back(v);
                    }
                }
            }
        }
        assert_eq!(parent.len(), vertices.len(), "component not connected");
        let generators: Vec<Simplex> = edges
            .iter()
            .filter(|e| !tree_edges.contains(*e))
            .cloned()
            .collect();
        let gen_index: HashMap<Simplex, usize> =
            generators.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let mut pres = Pi1Presentation {
            vertices,
            edges,
            basepoint,
            parent,
            generators,
            gen_index,
            relators: Vec::new(),
            tree_edges,
        };
        let mut relators = Vec::new();
        for t in simplices.get(2).cloned().unwrap_or_default() {
            let w = pres.word_of_path(&[t[0], t[1], t[2], t[0]]);
            if !w.is_empty() {
                relators.push(w);
            }
        }
        pres.relators = relators;
        pres
    }

    /// Tree path from the basepoint to v (vertex list).
    pub fn geodesic(&self, v: usize) -> Vec<usize> {
        let mut path = vec![v];
        let mut cur = v;
        while cur != self.basepoint {
            cur = self.parent[&cur];
            path.push(cur);
        }
        path.reverse();
        path
    }

    /// Free word over the generators corresponding to an edge path.
    pub fn word_of_path(&self, path: &[usize]) -> Vec<(usize, i64)> {
        let mut word = Vec::new();
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a == b {
                continue;
            }
            let e = vec![a.min(b), a.max(b)];
            if self.tree_edges.contains(&e) {
                continue;
            }
            let gi = *self
                .gen_index
                .get(&e)
                .unwrap_or_else(|| panic!("path step {a}->{b} is not an edge of the component"));
            let sign = if a < b { 1 } else { -1 };
            if let Some(&(lg, ls)) = word.last() {
                if lg == gi && ls == -sign {
                    word.pop();
                    continue;
                }
            }
            word.push((gi, sign));
        }
        word
    }

    /// The loop at the basepoint represented by generator i.
    pub fn loop_of_generator(&self, i: usize) -> Vec<usize> {
        let e = &self.generators[i];
        let mut p = self.geodesic(e[0]);
        p.push(e[1]);
        let mut back = self.geodesic(e[1]);
        back.reverse();
        p.extend(back.into_iter().skip(1));
        p
    }
}

/// Finite pi1 realized by a completed coset table.
#[derive(Clone, Debug)]
pub struct FinitePi1 {
    pub order: usize,
    /// gen_fwd[g][c] = c * x_g ; gen_bwd[g][c] = c * x_g^{-1}.
    pub gen_fwd: Vec<Vec<usize>>,
    pub gen_bwd: Vec<Vec<usize>>,
    pub rep_words: Vec<Vec<(usize, i64)>>,
    mul_t: Vec<usize>,
    inv_t: Vec<usize>,
}

impl FinitePi1 {
    pub fn trace(&self, from: usize, word: &[(usize, i64)]) -> usize {
        let mut c = from;
        for &(g, s) in word {
            c = if s > 0 { self.gen_fwd[g][c] } else { self.gen_bwd[g][c] };
        }
        c
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_t[a * self.order + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv_t[a]
    }
}

/// Todd-Coxeter coset enumeration over the trivial subgroup. Returns None
/// when the limit is exhausted (presumed infinite group at this scale).
pub fn coset_enumeration(
    ngens: usize,
    relators: &[Vec<(usize, i64)>],
    limit: usize,
) -> Option<FinitePi1> {
    let ncols = 2 * ngens;
    let col = |g: usize, s: i64| -> usize { 2 * g + usize::from(s < 0) };
    let inv_col = |c: usize| -> usize { c ^ 1 };
    let rel_cols: Vec<Vec<usize>> = relators
        .iter()
        .map(|r| r.iter().map(|&(g, s)| col(g, s)).collect())
        .collect();

    let mut table: Vec<Vec<Option<usize>>> = vec![vec![None; ncols]];
    let mut parent: Vec<usize> = vec![0];
    fn find(parent: &mut Vec<usize>, mut c: usize) -> usize {
        while parent[c] != c {
            parent[c] = parent[parent[c]];
            c = parent[c];
        }
        c
    }
    // Merge queue processing: identify cosets forced equal.
    fn process(
        table: &mut Vec<Vec<Option<usize>>>,
        parent: &mut Vec<usize>,
        mut pairs: Vec<(usize, usize)>,
    ) {
        while let Some((x, y)) = pairs.pop() {
            let (x, y) = (find(parent, x), find(parent, y));
            if x == y {
                continue;
            }
            let (a, b) = (x.min(y), x.max(y));
            parent[b] = a;
            let row = std::mem::take(&mut table[b]);
            for (c, entry) in row.into_iter().enumerate() {
                if let Some(t) = entry {
                    let t = find(parent, t);
                    match table[a][c] {
                        Some(s) => pairs.push((find(parent, s), t)),
                        None => {
                            table[a][c] = Some(t);
                            let ic = c ^ 1;
                            match table[t][ic] {
                                Some(u) => pairs.push((find(parent, u), a)),
                                None => table[t][ic] = Some(a),
                            }
                        }
                    }
                }
            }
        }
    }

    let mut defined = 1usize;
    loop {
        let before = (
            table.len(),
            table.iter().map(|r| r.iter().flatten().count()).sum::<usize>(),
        );
        // Relator scans with HLT-style filling.
        for c0 in 0..table.len() {
            if find(&mut parent, c0) != c0 {
                continue;
            }
            'rel: for rel in &rel_cols {
                let start = find(&mut parent, c0);
                let mut cur = start;
                for (i, &cc) in rel.iter().enumerate() {
                    cur = find(&mut parent, cur);
                    let entry = table[cur][cc].map(|t| find(&mut parent, t));
                    match entry {
                        Some(t) => {
                            if i + 1 == rel.len() {
                                let s = find(&mut parent, start);
                                if t != s {
                                    process(&mut table, &mut parent, vec![(t, s)]);
                                }
                                continue 'rel;
                            }
                            cur = t;
                        }
                        None => {
                            if i + 1 == rel.len() {
                                // Deduction: close the cycle.
                                let s = find(&mut parent, start);
                                table[cur][cc] = Some(s);
                                let ic = inv_col(cc);
                                match table[s][ic] {
                                    Some(u) => {
                                        let u = find(&mut parent, u);
                                        if u != cur {
                                            process(&mut table, &mut parent, vec![(u, cur)]);
                                        }
                                    }
                                    None => table[s][ic] = Some(cur),
                                }
                                continue 'rel;
                            }
                            if defined >= limit {
                                return None;
                            }
                            let id = table.len();
                            table.push(vec![None; ncols]);
                            parent.push(id);
                            defined += 1;
                            table[cur][cc] = Some(id);
                            table[id][inv_col(cc)] = Some(cur);
                            cur = id;
                        }
                    }
                }
            }
        }
        // Fill any remaining undefined entries.
        for c0 in 0..table.len() {
            if find(&mut parent, c0) != c0 {
                continue;
            }
            for cc in 0..ncols {
                let c = find(&mut parent, c0);
                if table[c][cc].is_none() {
                    if defined >= limit {
                        return None;
                    }
                    let id = table.len();
                    table.push(vec![None; ncols]);
                    parent.push(id);
                    defined += 1;
                    table[c][cc] = Some(id);
                    table[id][inv_col(cc)] = Some(c);
                }
            }
        }
        let after = (
            table.len(),
            table.iter().map(|r| r.iter().flatten().count()).sum::<usize>(),
        );
        if after == before {
            break;
        }
    }

    // Compact live cosets.
    let mut live: Vec<usize> = (0..table.len()).filter(|&c| find(&mut parent, c) == c).collect();
    live.sort_unstable();
    let index: HashMap<usize, usize> = live.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let order = live.len();
    let mut gen_fwd = vec![vec![0usize; order]; ngens];
    let mut gen_bwd = vec![vec![0usize; order]; ngens];
    for (i, &c) in live.iter().enumerate() {
        for g in 0..ngens {
            let t = find(&mut parent, table[c][2 * g].expect("complete table"));
            gen_fwd[g][i] = index[&t];
            let t = find(&mut parent, table[c][2 * g + 1].expect("complete table"));
            gen_bwd[g][i] = index[&t];
        }
    }
    // Representative words by BFS from coset 0.
    let mut rep_words: Vec<Option<Vec<(usize, i64)>>> = vec![None; order];
    rep_words[0] = Some(Vec::new());
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for g in 0..ngens {
            for (s, t) in [(1i64, gen_fwd[g][c]), (-1, gen_bwd[g][c])] {
                if rep_words[t].is_none() {
                    let mut w = rep_words[c].clone().unwrap();
                    w.push((g, s));
                    rep_words[t] = Some(w);
                    queue.push_back(t);
                }
            }
        }
    }
    let rep_words: Vec<Vec<(usize, i64)>> = rep_words.into_iter().map(|w| w.unwrap()).collect();
    let mut pi = FinitePi1 { order, gen_fwd, gen_bwd, rep_words, mul_t: Vec::new(), inv_t: Vec::new() };
    let mut mul_t = vec![0usize; order * order];
    for a in 0..order {
        for b in 0..order {
            mul_t[a * order + b] = pi.trace(a, &pi.rep_words[b]);
        }
    }
    let mut inv_t = vec![0usize; order];
    for a in 0..order {
        inv_t[a] = (0..order).find(|&b| mul_t[a * order + b] == 0).expect("group inverse");
    }
    pi.mul_t = mul_t;
    pi.inv_t = inv_t;
    Some(pi)
}

/// Supported pi1 model tiers.
#[derive(Clone, Debug)]
pub enum Pi1Model {
    Trivial,
    Finite(FinitePi1),
    FreeAbelian { rank: usize, h1: H1Data },
}

impl Pi1Model {
    pub fn one(&self) -> PiElt {
        match self {
            Pi1Model::Trivial => PiElt::Unit,
            Pi1Model::Finite(_) => PiElt::Fin(0),
            Pi1Model::FreeAbelian { rank, .. } => PiElt::Ab(vec![BigInt::zero(); *rank]),
        }
    }

    pub fn mul(&self, a: &PiElt, b: &PiElt) -> PiElt {
        match (self, a, b) {
            (Pi1Model::Trivial, PiElt::Unit, PiElt::Unit) => PiElt::Unit,
            (Pi1Model::Finite(p), PiElt::Fin(x), PiElt::Fin(y)) => PiElt::Fin(p.mul(*x, *y)),
            (Pi1Model::FreeAbelian { .. }, PiElt::Ab(x), PiElt::Ab(y)) => {
                PiElt::Ab(x.iter().zip(y).map(|(u, v)| u + v).collect())
            }
            _ => panic!("pi1 element does not match model"),
        }
    }

    pub fn inv(&self, a: &PiElt) -> PiElt {
        match (self, a) {
            (Pi1Model::Trivial, PiElt::Unit) => PiElt::Unit,
            (Pi1Model::Finite(p), PiElt::Fin(x)) => PiElt::Fin(p.inv(*x)),
            (Pi1Model::FreeAbelian { .. }, PiElt::Ab(x)) => {
                PiElt::Ab(x.iter().map(|u| -u).collect())
            }
            _ => panic!("pi1 element does not match model"),
        }
    }

    /// All elements (finite tiers only).
    pub fn elements(&self) -> Option<Vec<PiElt>> {
        match self {
            Pi1Model::Trivial => Some(vec![PiElt::Unit]),
            Pi1Model::Finite(p) => Some((0..p.order).map(PiElt::Fin).collect()),
            Pi1Model::FreeAbelian { .. } => None,
        }
    }

    /// Class of a loop at the presentation basepoint.
    pub fn eval_loop(&self, pres: &Pi1Presentation, path: &[usize]) -> PiElt {
        assert!(!path.is_empty());
        assert_eq!(path[0], pres.basepoint, "loop must start at the basepoint");
        assert_eq!(*path.last().unwrap(), pres.basepoint, "loop must end at the basepoint");
        match self {
            Pi1Model::Trivial => PiElt::Unit,
            Pi1Model::Finite(p) => PiElt::Fin(p.trace(0, &pres.word_of_path(path))),
            Pi1Model::FreeAbelian { h1, .. } => {
                let chain = path_to_chain(&h1.edges, path).expect("path inside the component");
                PiElt::Ab(h1.coords_of_cycle(&chain))
            }
        }
    }
}

/// Classify pi1 of a component: Trivial / Finite by coset enumeration /
/// FreeAbelian by auto-certification (<= 1 generator) or user assertion.
pub fn classify_pi1(
    pres: &Pi1Presentation,
    component_simplices: &[Vec<Simplex>],
    asserted_free_abelian: Option<usize>,
) -> Result<Pi1Model> {
    if pres.generators.is_empty() {
        return Ok(Pi1Model::Trivial);
    }
    // Fast path: a free group on one generator is Z; skip the (divergent)
    // coset enumeration.
    let free_rank_one = pres.generators.len() == 1 && pres.relators.iter().all(|r| r.is_empty());
    if !free_rank_one {
        if let Some(p) = coset_enumeration(pres.generators.len(), &pres.relators, COSET_LIMIT) {
            if p.order == 1 {
                return Ok(Pi1Model::Trivial);
            }
            return Ok(Pi1Model::Finite(p));
        }
    }
    if free_rank_one || asserted_free_abelian.is_some() {
        let h1 = H1Data::new(component_simplices);
        if h1.has_torsion() {
            return Err(Error::Pi1Unsupported(
                "abelianization has torsion; free-abelian assertion inconsistent".into(),
            ));
        }
        if let Some(r) = asserted_free_abelian {
            if r != h1.free_rank {
                return Err(Error::InvalidInput(format!(
                    "asserted pi1 rank {r} but abelianization has rank {}",
                    h1.free_rank
                )));
            }
        }
        let rank = h1.free_rank;
        return Ok(Pi1Model::FreeAbelian { rank, h1 });
    }
    Err(Error::Pi1Unsupported(format!(
        "pi1 not finite within {COSET_LIMIT} cosets and no free-abelian assertion given"
    )))
}

/// An object of the fundamental category: an isotropy class representative H
/// together with a component of X^H (one per Weyl orbit).
#[derive(Clone, Debug)]
pub struct FcObject {
    pub class_index: usize,
    pub subgroup: Subgroup,
    pub component: usize,
    pub base_vertex: usize,
    /// Literal component preservation: f maps the component into itself.
    pub preserved: bool,
}

/// Per-subgroup-class fixed-set data.
pub struct ClassData {
    pub fixed: FixedSubcomplex,
    pub weyl: WeylGroup,
    /// comp_perm[w][c] = image component of c under the Weyl element w.
    pub comp_perm: Vec<Vec<usize>>,
    /// Weyl-orbit representative per component and an element moving the
    /// component to its representative.
    pub orbit_rep: Vec<usize>,
    pub to_rep: Vec<usize>,
    /// Component-level image under f.
    pub fmap: Vec<usize>,
}

/// Dynamics status of a Weyl orbit of components.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComponentStatus {
    Recurrent { length: usize, returning: usize },
    Transient { height: usize },
}

/// Element maps on a pi1 model (homomorphism data).
#[derive(Clone, Debug)]
pub enum EltMap {
    Id,
    Fin(Vec<usize>),
    Ab(IMat),
}

impl EltMap {
    pub fn apply(&self, a: &PiElt) -> PiElt {
        match (self, a) {
            (EltMap::Id, x) => x.clone(),
            (EltMap::Fin(t), PiElt::Fin(x)) => PiElt::Fin(t[*x]),
            (EltMap::Ab(m), PiElt::Ab(x)) => PiElt::Ab(m.mul_vec(x)),
            _ => panic!("pi1 element does not match map"),
        }
    }

    pub fn matrix(&self) -> Option<&IMat> {
        match self {
            EltMap::Ab(m) => Some(m),
            _ => None,
        }
    }
}

/// The automorphism group of an object x with a self-map twist:
/// elements (w, a) with w in WH_x and a in pi1; composition, inverse and the
/// twisted endomorphism phi.
pub struct AutExtension {
    pub pres: Pi1Presentation,
    pub pi1: Pi1Model,
    pub weyl: WeylGroup,
    /// Component-preserving Weyl elements (element ids of weyl.group).
    pub weyl_x: Vec<usize>,
    /// Path from f(basepoint) to the basepoint (tree geodesic).
    pub w_path: Vec<usize>,
    /// phi restricted to pi1.
    pub phi_map: EltMap,
    /// Offsets delta_w: the pi1 part of phi((w, 1)).
    pub delta: HashMap<usize, PiElt>,
    /// Conjugation c_w on pi1 per Weyl element.
    pub conj: HashMap<usize, EltMap>,
    /// Section 2-cocycle kappa(w1, w2).
    pub kappa: HashMap<(usize, usize), PiElt>,
    /// p_w: the chosen path from w*basepoint to the basepoint.
    pub p_w: HashMap<usize, Vec<usize>>,
    /// Vertex action of each Weyl element (on all of X).
    weyl_vertex: HashMap<usize, Vec<usize>>,
}

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

impl AutExtension {
    pub fn new(
        x: &GComplex,
        f: &MapModel,
        object: &FcObject,
        pres: Pi1Presentation,
        pi1: Pi1Model,
        weyl: &WeylGroup,
        weyl_x: Vec<usize>,
        component_edges: &[Simplex],
    ) -> Result<AutExtension> {
        let b = object.base_vertex;
        let fb = f.image_vertex(b);
        // f must preserve the component (callers check; re-assert via the
        // presentation's vertex set).
        if !pres.parent.contains_key(&fb) {
            return Err(Error::ComponentNotPreserved(format!(
                "f({b}) = {fb} is outside the component"
            )));
        }
        let w_path = pres.geodesic(fb); // f(b) -> b after reversal
        let w_path = reverse_path(&w_path);

        let mut weyl_vertex = HashMap::new();
        for &w in &weyl_x {
            let n = weyl.section[w];
            let images: Vec<usize> = (0..x.num_vertices).map(|v| x.act_on_vertex(n, v)).collect();
            weyl_vertex.insert(w, images);
        }
        let act_path = |w: usize, p: &[usize]| -> Vec<usize> {
            let img = &weyl_vertex[&w];
            p.iter().map(|&v| img[v]).collect()
        };

        let mut p_w: HashMap<usize, Vec<usize>> = HashMap::new();
        for &w in &weyl_x {
            let wb = weyl_vertex[&w][b];
            p_w.insert(w, reverse_path(&pres.geodesic(wb)));
        }

        // phi on pi1.
        let phi_map = match &pi1 {
            Pi1Model::Trivial => EltMap::Id,
            Pi1Model::Finite(p) => {
                let mut gen_img = Vec::new();
                for i in 0..pres.generators.len() {
                    let lp = pres.loop_of_generator(i);
                    let img = f.image_path(&lp);
                    let full = concat_paths(&[&reverse_path(&w_path), &img, &w_path]);
                    let e = pi1.eval_loop(&pres, &full);
                    let PiElt::Fin(e) = e else { unreachable!() };
                    gen_img.push(e);
                }
                let mut t = vec![0usize; p.order];
                for (c, tc) in t.iter_mut().enumerate() {
                    let mut acc = 0usize;
                    for &(g, s) in &p.rep_words[c] {
                        let e = if s > 0 { gen_img[g] } else { p.inv(gen_img[g]) };
                        acc = p.mul(acc, e);
                    }
                    *tc = acc;
                }
                EltMap::Fin(t)
            }
            Pi1Model::FreeAbelian { rank, h1 } => {
                // Edge-level chain map of f on the component, pushed to H1.
                let edge_map = edge_chain_map(component_edges, |a, bb| f.image_path(&[a, bb]));
                let mut m = IMat::zero(*rank, *rank);
                for (j, cyc) in h1.rep_cycles.iter().enumerate() {
                    let col = h1.push_cycle(&edge_map, cyc);
                    for i in 0..*rank {
                        m[(i, j)] = col[i].clone();
                    }
                }
                EltMap::Ab(m)
            }
        };

        // Conjugation c_w per Weyl element.
        let mut conj: HashMap<usize, EltMap> = HashMap::new();
        for &w in &weyl_x {
            let map = match &pi1 {
                Pi1Model::Trivial => EltMap::Id,
                Pi1Model::Finite(p) => {
                    let pw = &p_w[&w];
                    let mut gen_img = Vec::new();
                    for i in 0..pres.generators.len() {
                        let lp = pres.loop_of_generator(i);
                        let moved = act_path(w, &lp);
                        let full = concat_paths(&[&reverse_path(pw), &moved, pw]);
                        let e = pi1.eval_loop(&pres, &full);
                        let PiElt::Fin(e) = e else { unreachable!() };
                        gen_img.push(e);
                    }
                    let mut t = vec![0usize; p.order];
                    for (c, tc) in t.iter_mut().enumerate() {
                        let mut acc = 0usize;
                        for &(g, s) in &p.rep_words[c] {
                            let e = if s > 0 { gen_img[g] } else { p.inv(gen_img[g]) };
                            acc = p.mul(acc, e);
                        }
                        *tc = acc;
                    }
                    EltMap::Fin(t)
                }
                Pi1Model::FreeAbelian { rank, h1 } => {
                    let img = &weyl_vertex[&w];
                    let edge_map =
                        edge_chain_map(component_edges, |a, bb| vec![img[a], img[bb]]);
                    let mut m = IMat::zero(*rank, *rank);
                    for (j, cyc) in h1.rep_cycles.iter().enumerate() {
                        let col = h1.push_cycle(&edge_map, cyc);
                        for i in 0..*rank {
                            m[(i, j)] = col[i].clone();
                        }
                    }
                    EltMap::Ab(m)
                }
            };
            conj.insert(w, map);
        }

        // Offsets delta_w = pi1 part of phi((w, 1)):
        // delta_w = [rev(p_w) * (w . rev(w_path)) * f(p_w) * w_path].
        let mut delta = HashMap::new();
        for &w in &weyl_x {
            let pw = &p_w[&w];
            let moved = act_path(w, &reverse_path(&w_path));
            let fpw = f.image_path(pw);
            let full = concat_paths(&[&reverse_path(pw), &moved, &fpw, &w_path]);
            delta.insert(w, pi1.eval_loop(&pres, &full));
        }

        // kappa(w1, w2) = [rev(p_{w1 w2}) * (w1 . p_{w2}) * p_{w1}].
        let mut kappa = HashMap::new();
        for &w1 in &weyl_x {
            for &w2 in &weyl_x {
                let w12 = weyl.group.mul(w1, w2);
                let moved = act_path(w1, &p_w[&w2]);
                let full = concat_paths(&[&reverse_path(&p_w[&w12]), &moved, &p_w[&w1]]);
                kappa.insert((w1, w2), pi1.eval_loop(&pres, &full));
            }
        }

        Ok(AutExtension {
            pres,
            pi1,
            weyl: weyl.clone(),
            weyl_x,
            w_path,
            phi_map,
            delta,
            conj,
            kappa,
            p_w,
            weyl_vertex,
        })
    }

    pub fn one(&self) -> (usize, PiElt) {
        (self.weyl.group.identity, self.pi1.one())
    }

    pub fn conj_pi(&self, w: usize, a: &PiElt) -> PiElt {
        self.conj[&w].apply(a)
    }

    /// Group law: (w1, a1) o (w2, a2) = (w1 w2, kappa(w1,w2) c_{w1}(a2) a1).
    pub fn mul(&self, g1: &(usize, PiElt), g2: &(usize, PiElt)) -> (usize, PiElt) {
        let w = self.weyl.group.mul(g1.0, g2.0);
        let mut a = self.kappa[&(g1.0, g2.0)].clone();
        a = self.pi1.mul(&a, &self.conj_pi(g1.0, &g2.1));
        a = self.pi1.mul(&a, &g1.1);
        (w, a)
    }

    pub fn inv(&self, g: &(usize, PiElt)) -> (usize, PiElt) {
        let wi = self.weyl.group.inv(g.0);
        let mut a = self.pi1.inv(&self.conj_pi(wi, &g.1));
        a = self.pi1.mul(&a, &self.pi1.inv(&self.kappa[&(wi, g.0)]));
        (wi, a)
    }

    /// The twisted endomorphism: phi((w, a)) = (w, delta_w phi(a)).
    pub fn phi(&self, g: &(usize, PiElt)) -> (usize, PiElt) {
        let a = self.pi1.mul(&self.delta[&g.0], &self.phi_map.apply(&g.1));
        (g.0, a)
    }

    pub fn phi_pi(&self, a: &PiElt) -> PiElt {
        self.phi_map.apply(a)
    }

    /// Vertex action of a component-preserving Weyl element.
    pub fn weyl_vertex(&self, w: usize, v: usize) -> usize {
        self.weyl_vertex[&w][v]
    }

    pub fn weyl_path(&self, w: usize, p: &[usize]) -> Vec<usize> {
        p.iter().map(|&v| self.weyl_vertex[&w][v]).collect()
    }

    /// Class of a loop at the basepoint.
    pub fn eval_loop(&self, path: &[usize]) -> PiElt {
        self.pi1.eval_loop(&self.pres, path)
    }

    /// Order of WH_x times |pi1| when finite.
    pub fn finite_order(&self) -> Option<usize> {
        self.pi1.elements().map(|e| e.len() * self.weyl_x.len())
    }
}

/// Column j = chain image of edge j under a vertex-path-valued edge map.
fn edge_chain_map(edges: &[Simplex], image: impl Fn(usize, usize) -> Vec<usize>) -> IMat {
    let mut m = IMat::zero(edges.len(), edges.len());
    for (j, e) in edges.iter().enumerate() {
        let p = image(e[0], e[1]);
        let chain = path_to_chain(edges, &p).expect("edge image stays in the component");
        for i in 0..edges.len() {
            m[(i, j)] = chain[i].clone();
        }
    }
    m
}

/// A morphism orbit representative from y to x: a coset g G_x-side datum and
/// the geometric point g * base(x) inside y's component.
#[derive(Clone, Debug)]
pub struct MorOrbit {
    /// Group element: the morphism sends base(y) context via the coset g H.
    pub g: usize,
    /// The point g * base_vertex(x), lying in y's component.
    pub point: usize,
    /// Tree geodesic from base(y) to the point, inside y's component.
    pub path_t: Vec<usize>,
    /// Stabilizer order |Aut(y)_{(sigma, [t])}|.
    pub stab: usize,
}

/// A free-abelian pi1 assertion for a specific object.
#[derive(Clone, Debug)]
pub struct Pi1Assertion {
    pub class_index: usize,
    pub component: usize,
    pub rank: usize,
}

#[derive(Clone, Debug, Default)]
pub struct AnalysisOptions {
    pub seed: u64,
    pub assertions: Vec<Pi1Assertion>,
}

/// Everything about one object iso class.
pub struct ObjectData {
    pub object: FcObject,
    pub pres: Pi1Presentation,
    pub pi1: Pi1Model,
    pub weyl_x: Vec<usize>,
    pub aut: Option<AutExtension>,
}

/// Full fundamental-category analysis of (X, f).
pub struct Analysis<'a> {
    pub complex: &'a GComplex,
    pub map: &'a MapModel,
    pub classes: SubgroupClasses,
    pub class_data: Vec<ClassData>,
    pub objects: Vec<ObjectData>,
    pub dynamics: Vec<HashMap<usize, ComponentStatus>>,
    pub priority: Vec<usize>,
}

impl<'a> Analysis<'a> {
    pub fn new(complex: &'a GComplex, map: &'a MapModel, opts: &AnalysisOptions) -> Result<Analysis<'a>> {
        if !std::ptr::eq(complex, map.base()) {
            // Allow distinct instances but require identical structure.
            assert_eq!(complex.simplices, map.base().simplices);
        }
        let priority = vertex_priority(complex.num_vertices, opts.seed);
        let classes = crate::group::conjugacy_classes_of_subgroups(&complex.group)?;
        let mut class_data = Vec::new();
        let mut objects = Vec::new();
        let mut dynamics = Vec::new();
        for (ci, cls) in classes.classes.iter().enumerate() {
            let h = &cls.representative;
            let fixed = complex.fixed_subcomplex(h);
            let weyl = complex.group.weyl_group(h);
            let ncomp = fixed.components.len();
            let mut comp_perm = vec![vec![0usize; ncomp]; weyl.group.order()];
            for w in 0..weyl.group.order() {
                let n = weyl.section[w];
                for c in 0..ncomp {
                    let v = fixed.components[c][0];
                    comp_perm[w][c] = fixed.component_of_vertex[&complex.act_on_vertex(n, v)];
                }
            }
            // Weyl orbits of components.
            let mut orbit_rep = vec![usize::MAX; ncomp];
            let mut to_rep = vec![0usize; ncomp];
            for c in 0..ncomp {
                let mut best = c;
                let mut best_w = weyl.group.identity;
                for w in 0..weyl.group.order() {
                    let img = comp_perm[w][c];
                    if img < best {
                        best = img;
                        best_w = w;
                    }
                }
                orbit_rep[c] = best;
                to_rep[c] = best_w;
            }
            // Component-level image under f.
            let mut fmap = vec![0usize; ncomp];
            for c in 0..ncomp {
                let v = fixed.components[c][0];
                fmap[c] = fixed.component_of_vertex[&map.image_vertex(v)];
            }

            // Objects: one per orbit representative.
            for c in 0..ncomp {
                if orbit_rep[c] != c {
                    continue;
                }
                let base_vertex = *fixed.components[c]
                    .iter()
                    .min_by_key(|&&v| (priority[v], v))
                    .unwrap();
                let preserved = fmap[c] == c;
                let object = FcObject {
                    class_index: ci,
                    subgroup: h.clone(),
                    component: c,
                    base_vertex,
                    preserved,
                };
                let comp_simplices = fixed.component_simplices(c);
                let pres = Pi1Presentation::new(&comp_simplices, base_vertex, &priority);
                let asserted = opts
                    .assertions
                    .iter()
                    .find(|a| a.class_index == ci && a.component == c)
                    .map(|a| a.rank);
                let pi1 = classify_pi1(&pres, &comp_simplices, asserted)?;
                let weyl_x: Vec<usize> =
                    (0..weyl.group.order()).filter(|&w| comp_perm[w][c] == c).collect();
                let no_edges: Vec<Simplex> = Vec::new();
                let comp_edges = comp_simplices.get(1).unwrap_or(&no_edges);
                let aut = if preserved {
                    Some(AutExtension::new(
                        complex,
                        map,
                        &object,
                        pres.clone(),
                        pi1.clone(),
                        &weyl,
                        weyl_x.clone(),
                        comp_edges,
                    )?)
                } else {
                    None
                };
                objects.push(ObjectData { object, pres, pi1, weyl_x, aut });
            }

            // Dynamics of the orbit-level functional graph.
            let mut status: HashMap<usize, ComponentStatus> = HashMap::new();
            let reps: Vec<usize> = (0..ncomp).filter(|&c| orbit_rep[c] == c).collect();
            let step = |r: usize| -> usize { orbit_rep[fmap[r]] };
            for &r in &reps {
                let mut cur = r;
                let mut n = 0usize;
                let mut recurrent_len = None;
                for _ in 0..=reps.len() {
                    cur = step(cur);
                    n += 1;
                    if cur == r {
                        recurrent_len = Some(n);
                        break;
                    }
                }
                if let Some(l) = recurrent_len {
                    // Component-level return: f^l maps component r to a
                    // component in its orbit; pick a Weyl element pulling it back.
                    let mut comp = r;
                    for _ in 0..l {
                        comp = fmap[comp];
                    }
                    let ret = (0..weyl.group.order())
                        .find(|&w| comp_perm[w][comp] == r)
                        .expect("return element exists");
                    status.insert(r, ComponentStatus::Recurrent { length: l, returning: ret });
                }
            }
            for &r in &reps {
                if status.contains_key(&r) {
                    continue;
                }
                let mut cur = r;
                let mut n = 0usize;
                while !status.contains_key(&cur)
                    || matches!(status.get(&cur), Some(ComponentStatus::Transient { .. }))
                {
                    cur = step(cur);
                    n += 1;
                    if matches!(status.get(&cur), Some(ComponentStatus::Recurrent { .. })) {
                        break;
                    }
                    assert!(n <= reps.len() + 1, "height computation diverged");
                }
                status.insert(r, ComponentStatus::Transient { height: n });
            }

            class_data.push(ClassData { fixed, weyl, comp_perm, orbit_rep, to_rep, fmap });
            dynamics.push(status);
        }
        Ok(Analysis { complex, map, classes, class_data, objects, dynamics, priority })
    }

    pub fn object_label(&self, oi: usize) -> String {
        let o = &self.objects[oi].object;
        format!("{}|c{}", self.classes.labels[o.class_index], o.component)
    }

    pub fn find_object(&self, class_index: usize, component: usize) -> Option<usize> {
        self.objects
            .iter()
            .position(|o| o.object.class_index == class_index && o.object.component == component)
    }

    /// Aut(y)-orbits of Mor(y, x) via the geometric model: cosets gH with
    /// g^{-1} K g <= H and g * base(x) in y's component, modulo WK_y.
    pub fn morphism_orbits(&self, yi: usize, xi: usize) -> Vec<MorOrbit> {
        let g = &self.complex.group;
        let y = &self.objects[yi];
        let x = &self.objects[xi];
        let k = &y.object.subgroup;
        let h = &x.object.subgroup;
        let ycd = &self.class_data[y.object.class_index];
        let cosets = g.left_cosets(h);
        let mut coset_of: HashMap<usize, usize> = HashMap::new();
        for (i, c) in cosets.iter().enumerate() {
            for &e in c {
                coset_of.insert(e, i);
            }
        }
        let mut valid: Vec<usize> = Vec::new();
        for (i, c) in cosets.iter().enumerate() {
            let rep = c[0];
            let rep_inv = g.inv(rep);
            if !k.elems.iter().all(|&e| h.contains(g.mul(g.mul(rep_inv, e), rep))) {
                continue;
            }
            let pt = self.complex.act_on_vertex(rep, x.object.base_vertex);
            if ycd.fixed.component_of_vertex.get(&pt) == Some(&y.object.component) {
                valid.push(i);
            }
        }
        let valid_set: HashSet<usize> = valid.iter().copied().collect();
        let mut seen: HashSet<usize> = HashSet::new();
        let mut out = Vec::new();
        for &i in &valid {
            if seen.contains(&i) {
                continue;
            }
            // WK_y orbit of this coset.
            let mut orbit: Vec<usize> = Vec::new();
            let mut stab = 0usize;
            for &w in &y.weyl_x {
                let n = ycd.weyl.section[w];
                let j = coset_of[&g.mul(n, cosets[i][0])];
                debug_assert!(valid_set.contains(&j));
                if j == i {
                    stab += 1;
                }
                if !orbit.contains(&j) {
                    orbit.push(j);
                }
            }
            for &j in &orbit {
                seen.insert(j);
            }
            let rep_coset = *orbit.iter().min().unwrap();
            let rep_g = cosets[rep_coset][0];
            let point = self.complex.act_on_vertex(rep_g, x.object.base_vertex);
            let path_t = y.pres.geodesic(point);
            // Stabilizer sizes agree along the orbit.
            out.push(MorOrbit { g: rep_g, point, path_t, stab });
        }
        out.sort_by_key(|m| m.g);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::shapes::*;
    use num_traits::One;
    use crate::group::catalog::cyclic;
    use crate::perm::Perm;
    use crate::subdivision::circle_degree_map;

    fn identity_map(x: &GComplex) -> MapModel {
        MapModel::new(x, 0, (0..x.num_vertices).collect()).unwrap()
    }

    fn hexagon_reflection() -> GComplex {
        let z2 = cyclic(2);
        let refl = Perm::new(vec![0, 5, 4, 3, 2, 1]).unwrap();
        let simplices: Vec<Vec<usize>> = (0..6).map(|i| vec![i, (i + 1) % 6]).collect();
        GComplex::new("hex-refl", z2, 6, &simplices, &[refl]).unwrap()
    }

    #[test]
    fn coset_enumeration_small_groups() {
        // <a | a^5> = Z/5.
        let p = coset_enumeration(1, &[vec![(0, 1); 5]], 1000).unwrap();
        assert_eq!(p.order, 5);
        // <a, b | a^2, b^2, (ab)^2> = Klein four group.
        let rels = vec![
            vec![(0, 1), (0, 1)],
            vec![(1, 1), (1, 1)],
            vec![(0, 1), (1, 1), (0, 1), (1, 1)],
        ];
        let p = coset_enumeration(2, &rels, 1000).unwrap();
        assert_eq!(p.order, 4);
        // Z diverges.
        assert!(coset_enumeration(1, &[], 100).is_none());
        // S3 = <a,b | a^2, b^3, (ab)^2>.
        let rels = vec![
            vec![(0, 1), (0, 1)],
            vec![(1, 1), (1, 1), (1, 1)],
            vec![(0, 1), (1, 1), (0, 1), (1, 1)],
        ];
        let p = coset_enumeration(2, &rels, 1000).unwrap();
        assert_eq!(p.order, 6);
        // Group axioms on the built tables.
        for a in 0..p.order {
            assert_eq!(p.mul(a, p.inv(a)), 0);
            for b in 0..p.order {
                for c in 0..p.order {
                    assert_eq!(p.mul(p.mul(a, b), c), p.mul(a, p.mul(b, c)));
                }
            }
        }
    }

    #[test]
    fn pi1_tiers() {
        let prio = vertex_priority(16, 0);
        let d = disk();
        let pres = Pi1Presentation::new(&d.simplices, 0, &prio);
        assert!(matches!(classify_pi1(&pres, &d.simplices, None).unwrap(), Pi1Model::Trivial));

        let c = polygon(6);
        let pres = Pi1Presentation::new(&c.simplices, 0, &prio);
        let m = classify_pi1(&pres, &c.simplices, None).unwrap();
        assert!(matches!(m, Pi1Model::FreeAbelian { rank: 1, .. }));

        let r = rp2();
        let pres = Pi1Presentation::new(&r.simplices, 0, &prio);
        let m = classify_pi1(&pres, &r.simplices, None).unwrap();
        match m {
            Pi1Model::Finite(p) => assert_eq!(p.order, 2),
            _ => panic!("rp2 pi1 should be finite of order 2"),
        }

        let w = wedge_two_circles();
        let pres = Pi1Presentation::new(&w.simplices, 0, &prio);
        assert!(matches!(
            classify_pi1(&pres, &w.simplices, None),
            Err(Error::Pi1Unsupported(_))
        ));
        // With an assertion it is accepted (soundness is the user's duty).
        let m = classify_pi1(&pres, &w.simplices, Some(2)).unwrap();
        assert!(matches!(m, Pi1Model::FreeAbelian { rank: 2, .. }));

        let s = octahedron();
        let pres = Pi1Presentation::new(&s.simplices, 0, &prio);
        assert!(matches!(classify_pi1(&pres, &s.simplices, None).unwrap(), Pi1Model::Trivial));
    }

    #[test]
    fn object_counts() {
        let x = hexagon_reflection();
        let f = identity_map(&x);
        let a = Analysis::new(&x, &f, &AnalysisOptions::default()).unwrap();
        assert_eq!(a.objects.len(), 3);
        assert!(a.objects.iter().all(|o| o.object.preserved));

        // Free Z/2 on two points: one object.
        let z2 = cyclic(2);
        let swap = Perm::new(vec![1, 0]).unwrap();
        let two = GComplex::new("s0-free", z2, 2, &[vec![0], vec![1]], &[swap]).unwrap();
        let f = identity_map(&two);
        let a = Analysis::new(&two, &f, &AnalysisOptions::default()).unwrap();
        assert_eq!(a.objects.len(), 1);

        // Point with trivial group: one object.
        let p = GComplex::plain("pt", 1, &[vec![0]]).unwrap();
        let f = identity_map(&p);
        let a = Analysis::new(&p, &f, &AnalysisOptions::default()).unwrap();
        assert_eq!(a.objects.len(), 1);
    }

    #[test]
    fn hexagon_reflection_free_object_extension() {
        let x = hexagon_reflection();
        let f = identity_map(&x);
        let a = Analysis::new(&x, &f, &AnalysisOptions::default()).unwrap();
        let free = a.find_object(0, 0).unwrap();
        let aut = a.objects[free].aut.as_ref().unwrap();
        assert_eq!(aut.weyl_x.len(), 2);
        let w = *aut.weyl_x.iter().find(|&&w| w != aut.weyl.group.identity).unwrap();
        // Reflection inverts the fundamental loop.
        let gen = PiElt::Ab(vec![BigInt::one()]);
        assert_eq!(aut.conj_pi(w, &gen), PiElt::Ab(vec![-BigInt::one()]));
        // Identity map: phi on pi1 is the identity, all offsets vanish.
        assert_eq!(aut.phi_pi(&gen), gen);
        for &wx in &aut.weyl_x {
            assert_eq!(aut.delta[&wx], aut.pi1.one());
        }
    }

    #[test]
    fn aut_group_axioms_on_hexagon_reflection() {
        let x = hexagon_reflection();
        let f = identity_map(&x);
        let a = Analysis::new(&x, &f, &AnalysisOptions { seed: 3, ..Default::default() }).unwrap();
        let free = a.find_object(0, 0).unwrap();
        let aut = a.objects[free].aut.as_ref().unwrap();
        let mut elems = Vec::new();
        for &w in &aut.weyl_x {
            for k in -2i64..=2 {
                elems.push((w, PiElt::Ab(vec![BigInt::from(k)])));
            }
        }
        for g1 in &elems {
            assert_eq!(aut.mul(&aut.inv(g1), g1), aut.one());
            assert_eq!(aut.mul(g1, &aut.one()), *g1);
            assert_eq!(aut.mul(&aut.one(), g1), *g1);
            for g2 in &elems {
                // phi is a homomorphism.
                assert_eq!(aut.phi(&aut.mul(g1, g2)), aut.mul(&aut.phi(g1), &aut.phi(g2)));
                for g3 in &elems {
                    assert_eq!(
                        aut.mul(&aut.mul(g1, g2), g3),
                        aut.mul(g1, &aut.mul(g2, g3))
                    );
                }
            }
        }
    }

    #[test]
    fn degree_map_phi_is_multiplication_by_d() {
        for d in [-1i64, 0, 2, 3] {
            let f = circle_degree_map(8, d).unwrap();
            let x = f.base().clone();
            let a = Analysis::new(&x, &f, &AnalysisOptions::default()).unwrap();
            assert_eq!(a.objects.len(), 1);
            let aut = a.objects[0].aut.as_ref().unwrap();
            match &aut.phi_map {
                EltMap::Ab(m) => assert_eq!(m[(0, 0)], BigInt::from(d)),
                _ => panic!("expected abelian phi"),
            }
        }
    }

    #[test]
    fn dynamics_statuses() {
        // Identity: all recurrent with length 1 and identity return element.
        let x = hexagon_reflection();
        let f = identity_map(&x);
        let a = Analysis::new(&x, &f, &AnalysisOptions::default()).unwrap();
        for (ci, st) in a.dynamics.iter().enumerate() {
            for s in st.values() {
                assert_eq!(
                    s,
                    &ComponentStatus::Recurrent {
                        length: 1,
                        returning: a.class_data[ci].weyl.group.identity
                    }
                );
            }
        }

        // Two disjoint triangles swapped: recurrent with length 2.
        let two_tri = GComplex::plain(
            "2tri",
            6,
            &[vec![0, 1], vec![1, 2], vec![0, 2], vec![3, 4], vec![4, 5], vec![3, 5]],
        )
        .unwrap();
        let f = MapModel::new(&two_tri, 0, vec![3, 4, 5, 0, 1, 2]).unwrap();
        let a = Analysis::new(&two_tri, &f, &AnalysisOptions::default()).unwrap();
        let st = &a.dynamics[0];
        assert!(st
            .values()
            .all(|s| matches!(s, ComponentStatus::Recurrent { length: 2, .. })));
        // Neither component is literally preserved: no lambda support.
        assert!(a.objects.iter().all(|o| !o.object.preserved));

        // Transient: point 0 mapped into fixed point 1.
        let s0 = two_points();
        let f = MapModel::new(&s0, 0, vec![1, 1]).unwrap();
        let a = Analysis::new(&s0, &f, &AnalysisOptions::default()).unwrap();
        let st = &a.dynamics[0];
        assert_eq!(st[&0], ComponentStatus::Transient { height: 1 });
        assert!(matches!(st[&1], ComponentStatus::Recurrent { length: 1, .. }));
    }

    #[test]
    fn morphism_orbits_hexagon_reflection() {
        let x = hexagon_reflection();
        let f = identity_map(&x);
        let a = Analysis::new(&x, &f, &AnalysisOptions::default()).unwrap();
        let free = a.find_object(0, 0).unwrap();
        let v0 = a.find_object(1, 0).unwrap();
        let orbs = a.morphism_orbits(free, v0);
        assert_eq!(orbs.len(), 1);
        assert_eq!(orbs[0].stab, 2);
        // No morphism from a fixed-vertex object to the free object class
        // with larger isotropy than target: Mor(v0-object, free-object)
        // requires K <= conjugates of the trivial group: empty.
        let back = a.morphism_orbits(v0, free);
        assert!(back.is_empty());
        // Diagonal: identity orbit with stabilizer 1 per Weyl-free object.
        let diag = a.morphism_orbits(v0, v0);
        assert_eq!(diag.len(), 1);
        assert_eq!(diag[0].stab, 1);
    }

    #[test]
    fn seed_changes_choices_not_structure() {
        let x = hexagon_reflection();
        let f = identity_map(&x);
        for seed in [0u64, 1, 17, 123] {
            let a = Analysis::new(&x, &f, &AnalysisOptions { seed, ..Default::default() }).unwrap();
            assert_eq!(a.objects.len(), 3);
            let free = a.find_object(0, 0).unwrap();
            let aut = a.objects[free].aut.as_ref().unwrap();
            let w = *aut.weyl_x.iter().find(|&&w| w != aut.weyl.group.identity).unwrap();
            let gen = PiElt::Ab(vec![BigInt::one()]);
            assert_eq!(aut.conj_pi(w, &gen), PiElt::Ab(vec![-BigInt::one()]));
            assert_eq!(aut.delta[&w], aut.pi1.one());
        }
    }
}
