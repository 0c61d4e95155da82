//! Barycentric subdivision with provenance data, the subdivision chain
//! equivalence, and self-maps modelled as simplicial maps Sd^r(X) -> X.


use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;

use crate::complex::{chain_map, validate_equivariant, validate_simplicial, ChainComplexZ, GComplex, RationalHomology, Simplex};
use crate::error::{Error, Result};
use crate::linalg::IMat;
use crate::perm::{sort_sign, Perm};

/// One round of barycentric subdivision. Fine vertices are the simplices of
/// the coarse complex, ordered by (dimension, position); fine simplices are
/// the flags of proper faces.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub coarse: GComplex,
    pub fine: GComplex,
    /// First fine vertex id per coarse dimension.
    pub offsets: Vec<usize>,
    /// Coarse simplex each fine vertex is the barycenter of.
    pub vertex_simplex: Vec<Simplex>,
}

impl Subdivision {
    pub fn new(coarse: &GComplex) -> Result<Subdivision> {
        let mut offsets = Vec::new();
        let mut vertex_simplex = Vec::new();
        let mut acc = 0;
        for dim_list in &coarse.simplices {
            offsets.push(acc);
            acc += dim_list.len();
            for s in dim_list {
                vertex_simplex.push(s.clone());
            }
        }
        let num_fine = acc;
        // Fine simplices: one full flag per (simplex, vertex order).
        let mut fine_simplices: Vec<Vec<usize>> = Vec::new();
        for dim_list in &coarse.simplices {
            for s in dim_list {
                for perm in s.iter().permutations(s.len()) {
                    let mut prefix: Simplex = Vec::new();
                    let mut flag = Vec::new();
                    for &&v in &perm {
                        prefix.push(v);
                        prefix.sort_unstable();
                        flag.push(
                            offsets[prefix.len() - 1]
                                + coarse.simplex_index(&prefix).expect("face of a simplex"),
                        );
                    }
                    fine_simplices.push(flag);
                }
            }
        }
        // Generator actions on fine vertices.
        let mut gen_actions = Vec::new();
        for (gi, _) in coarse.group.generators.iter().enumerate() {
            let ge = coarse
                .group
                .index_of(&coarse.group.generators[gi])
                .expect("generator is an element");
            let images: Vec<usize> = vertex_simplex
                .iter()
                .map(|s| {
                    let t = coarse.act_on_simplex(ge, s);
                    offsets[t.len() - 1] + coarse.simplex_index(&t).expect("action preserves simplices")
                })
                .collect();
            gen_actions.push(Perm::new(images)?);
        }
        let fine = GComplex::new(
            &format!("sd({})", coarse.name),
            coarse.group.clone(),
            num_fine,
            &fine_simplices,
            &gen_actions,
        )?;
        Ok(Subdivision { coarse: coarse.clone(), fine, offsets, vertex_simplex })
    }

    /// Fine vertex at the barycenter of a coarse simplex.
    pub fn fine_vertex(&self, s: &Simplex) -> usize {
        self.offsets[s.len() - 1] + self.coarse.simplex_index(s).expect("simplex of the coarse complex")
    }

    /// The subdivision chain map C(X) -> C(Sd X): a simplex goes to the
    /// signed sum of flags through its faces.
    pub fn chain_map(&self, coarse_cc: &ChainComplexZ, fine_cc: &ChainComplexZ) -> Vec<IMat> {
        let dims = coarse_cc.basis.len();
        let mut out = Vec::new();
        for d in 0..dims {
            let mut m = IMat::zero(fine_cc.basis[d].len(), coarse_cc.basis[d].len());
            for (j, s) in coarse_cc.basis[d].iter().enumerate() {
                for perm in s.iter().permutations(s.len()) {
                    let ordered: Vec<usize> = perm.iter().map(|&&v| v).collect();
                    let sign = sort_sign(&ordered).expect("distinct vertices");
                    let mut prefix: Simplex = Vec::new();
                    let mut flag = Vec::new();
                    for &v in &ordered {
                        prefix.push(v);
                        prefix.sort_unstable();
                        flag.push(self.fine_vertex(&prefix));
                    }
                    // Flag vertex ids increase with dimension, so `flag` is sorted.
                    let i = fine_cc.index_of(&flag).expect("flag is a fine simplex");
                    m[(i, j)] += BigInt::from(sign);
                }
            }
            out.push(m);
        }
        out
    }

    /// Refine a vertex path of the coarse complex into the fine complex,
    /// inserting edge barycenters.
    pub fn refine_path(&self, path: &[usize]) -> Vec<usize> {
        if path.is_empty() {
            return Vec::new();
        }
        let mut out = vec![self.fine_vertex(&vec![path[0]])];
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            if a == b {
                continue;
            }
            out.push(self.fine_vertex(&vec![a.min(b), a.max(b)]));
            out.push(self.fine_vertex(&vec![b]));
        }
        out
    }

    /// Positions of fine vertices given coarse vertex positions (barycenters).
    pub fn positions(&self, coarse_pos: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
        self.vertex_simplex
            .iter()
            .map(|s| {
                let k = BigRational::from_integer(BigInt::from(s.len() as i64));
                let d = coarse_pos[s[0]].len();
                (0..d)
                    .map(|c| {
                        let sum: BigRational = s.iter().map(|&v| coarse_pos[v][c].clone()).sum();
                        sum / k.clone()
                    })
                    .collect()
            })
            .collect()
    }
}

/// Return an admissible model of the complex: the complex itself when its
/// action is already admissible, else its barycentric subdivision (which is
/// always admissible for a simplicial action). The flag reports whether a
/// subdivision happened.
pub fn ensure_admissible(x: &GComplex) -> Result<(GComplex, bool)> {
    if x.is_admissible() {
        return Ok((x.clone(), false));
    }
    let sd = Subdivision::new(x)?;
    if let Some((g, s)) = sd.fine.admissibility_violation() {
        return Err(Error::MalformedComplex(format!(
            "subdivision still inadmissible at element {g}, simplex {s:?}"
        )));
    }
    Ok((sd.fine, true))
}

/// A tower of barycentric subdivisions Sd^r(X).
pub struct SdTower {
    pub base: GComplex,
    pub levels: Vec<Subdivision>,
}

impl SdTower {
    pub fn new(base: &GComplex, rounds: usize) -> Result<SdTower> {
        let mut levels = Vec::new();
        let mut current = base.clone();
        for _ in 0..rounds {
            let sd = Subdivision::new(&current)?;
            current = sd.fine.clone();
            levels.push(sd);
        }
        Ok(SdTower { base: base.clone(), levels })
    }

    pub fn top(&self) -> &GComplex {
        self.levels.last().map(|l| &l.fine).unwrap_or(&self.base)
    }

    /// Composite subdivision chain map C(X) -> C(Sd^r X).
    pub fn chain_map_to_top(&self) -> Vec<IMat> {
        let base_cc = self.base.full_chain_complex();
        let dims = base_cc.basis.len();
        let mut acc: Vec<IMat> = (0..dims)
            .map(|d| IMat::identity(base_cc.basis[d].len()))
            .collect();
        let mut coarse_cc = base_cc;
        for level in &self.levels {
            let fine_cc = level.fine.full_chain_complex();
            let s = level.chain_map(&coarse_cc, &fine_cc);
            acc = (0..dims).map(|d| s[d].mul(&acc[d])).collect();
            coarse_cc = fine_cc;
        }
        acc
    }

    /// Top-level vertex id of a base vertex.
    pub fn lift_vertex(&self, v: usize) -> usize {
        let mut path = vec![v];
        path = self.path_to_top(&path);
        path[0]
    }

    /// Refine a base vertex path through all subdivision levels.
    pub fn path_to_top(&self, path: &[usize]) -> Vec<usize> {
        let mut p = path.to_vec();
        for level in &self.levels {
            p = level.refine_path(&p);
        }
        p
    }

    /// Carrier of a top-level vertex in the base complex.
    pub fn carrier_in_base(&self, v: usize) -> Simplex {
        let mut verts = vec![v];
        for level in self.levels.iter().rev() {
            let mut coarse: Vec<usize> = Vec::new();
            for fv in verts {
                coarse.extend(level.vertex_simplex[fv].iter().copied());
            }
            coarse.sort_unstable();
            coarse.dedup();
            verts = coarse;
        }
        verts
    }

    /// Positions of top-level vertices from base vertex positions.
    pub fn positions(&self, base_pos: &[Vec<BigRational>]) -> Vec<Vec<BigRational>> {
        let mut pos = base_pos.to_vec();
        for level in &self.levels {
            pos = level.positions(&pos);
        }
        pos
    }
}

/// A cellular self-map of X, given simplicially on an iterated barycentric
/// subdivision of the source: f maps vertices of Sd^r(X) to vertices of X.
pub struct MapModel {
    pub tower: SdTower,
    pub vertex_images: Vec<usize>,
}

impl MapModel {
    pub fn new(base: &GComplex, rounds: usize, vertex_images: Vec<usize>) -> Result<MapModel> {
        let tower = SdTower::new(base, rounds)?;
        validate_simplicial(tower.top(), base, &vertex_images)?;
        validate_equivariant(tower.top(), base, &vertex_images)?;
        Ok(MapModel { tower, vertex_images })
    }

    pub fn base(&self) -> &GComplex {
        &self.tower.base
    }

    /// Image of a base vertex (which is also a vertex of the subdivision).
    pub fn image_vertex(&self, v: usize) -> usize {
        self.vertex_images[self.tower.lift_vertex(v)]
    }

    /// Image of a base vertex path: refine into the subdivision, map, and
    /// drop repeated stops. Consecutive outputs are equal or adjacent.
    pub fn image_path(&self, path: &[usize]) -> Vec<usize> {
        let fine = self.tower.path_to_top(path);
        let mut out: Vec<usize> = Vec::new();
        for fv in fine {
            let w = self.vertex_images[fv];
            if out.last() != Some(&w) {
                out.push(w);
            }
        }
        out
    }

    /// The induced chain self-map of C(X): the simplicial chain map of f
    /// composed with the subdivision chain equivalence.
    pub fn chain_endo(&self) -> Vec<IMat> {
        let base_cc = self.base().full_chain_complex();
        let top_cc = self.tower.top().full_chain_complex();
        let s = self.tower.chain_map_to_top();
        let f = chain_map(&top_cc, &base_cc, |v| self.vertex_images[v]);
        (0..base_cc.basis.len()).map(|d| f[d].mul(&s[d])).collect()
    }

    /// Classical Lefschetz number of the self-map via rational homology.
    pub fn classical_lefschetz(&self) -> BigRational {
        let cc = self.base().full_chain_complex();
        let h = RationalHomology::new(&cc);
        h.lefschetz_number(&self.chain_endo())
    }
}

/// Standard circle self-maps of an n-gon as map models: degree d, realized
/// on Sd^r with 2^r >= |d| (r minimal), by evenly winding around the target.
pub fn circle_degree_map(n: usize, degree: i64) -> Result<MapModel> {
    let x = crate::complex::shapes::polygon(n);
    let mut rounds = 0usize;
    while (1usize << rounds) < degree.unsigned_abs() as usize {
        rounds += 1;
    }
    let tower = SdTower::new(&x, rounds)?;
    let m = n << rounds; // vertices around the subdivided circle
    // Order top vertices by angle: walk the subdivided cycle graph starting
    // at vertex 0, first stepping into the base edge [0, 1].
    let top = tower.top();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); m];
    for e in &top.simplices[1] {
        nbrs[e[0]].push(e[1]);
        nbrs[e[1]].push(e[0]);
    }
    let start = tower.lift_vertex(0);
    let mut order = vec![start];
    let mut current = start;
    let mut prev;
    if rounds > 0 {
        // Pick the neighbor lying inside base edge [0, 1].
        let next = *nbrs[start]
            .iter()
            .find(|&&u| tower.carrier_in_base(u) == vec![0, 1])
            .expect("a neighbor inside the first base edge");
        order.push(next);
        prev = current;
        current = next;
    } else {
        order.push(1);
        prev = 0;
        current = 1;
    }
    while order.len() < m {
        let next = *nbrs[current].iter().find(|&&u| u != prev).expect("cycle graph");
        order.push(next);
        prev = current;
        current = next;
    }
    // Winding schedule: vertex at angular index j goes to base vertex
    // ceil(d*n*j / m) mod n (non-decreasing steps of 0 or 1 per edge for
    // d > 0; mirrored for d < 0; constant 0 for d = 0).
    let mut vertex_images = vec![0usize; m];
    for (j, &v) in order.iter().enumerate() {
        let t = degree * (n as i64) * (j as i64); // target angle * m
        let q = t.div_euclid(m as i64) + if t.rem_euclid(m as i64) != 0 { 1 } else { 0 };
        vertex_images[v] = q.rem_euclid(n as i64) as usize;
    }
    MapModel::new(&x, rounds, vertex_images)
}
