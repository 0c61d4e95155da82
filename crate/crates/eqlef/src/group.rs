//! Finite permutation groups, subgroup lattices, conjugacy classes of
//! subgroups, Weyl groups and orbit-map enumeration.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// Default bound on the group order for subgroup enumeration.
pub const DEFAULT_ORDER_BOUND: usize = 512;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Perm>,
    /// All elements, sorted lexicographically by image array. Deterministic.
    pub elements: Vec<Perm>,
    pub identity: usize,
    mul_table: Vec<usize>, // mul_table[a * n + b] = index of elements[a] o elements[b]
    inv_table: Vec<usize>,
    index_of: HashMap<Perm, usize>,
    /// Generator word per element: elements[i] = gens[w0] o gens[w1] o ... .
    words: Vec<Vec<usize>>,
}

impl FiniteGroup {
    pub fn from_generators(name: &str, degree: usize, generators: Vec<Perm>) -> Result<FiniteGroup> {
        Self::from_generators_bounded(name, degree, generators, DEFAULT_ORDER_BOUND)
    }

    pub fn from_generators_bounded(
        name: &str,
        degree: usize,
        generators: Vec<Perm>,
        bound: usize,
    ) -> Result<FiniteGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::InvalidInput(format!(
                    "generator degree {} does not match group degree {degree}",
                    g.degree()
                )));
            }
        }
        // BFS closure, recording a generator word for each element.
        let id = Perm::identity(degree);
        let mut words: HashMap<Perm, Vec<usize>> = HashMap::new();
        words.insert(id.clone(), vec![]);
        let mut queue = VecDeque::from([id]);
        while let Some(cur) = queue.pop_front() {
            let cur_word = words[&cur].clone();
            for (gi, g) in generators.iter().enumerate() {
                let next = g.compose(&cur); // prepend generator
                if !words.contains_key(&next) {
                    if words.len() >= bound {
                        return Err(Error::GroupTooLarge(bound));
                    }
                    let mut w = vec![gi];
                    w.extend_from_slice(&cur_word);
                    words.insert(next.clone(), w);
                    queue.push_back(next);
                }
            }
        }
        let mut elements: Vec<Perm> = words.keys().cloned().collect();
        elements.sort();
        let index_of: HashMap<Perm, usize> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let n = elements.len();
        let mut mul_table = vec![0usize; n * n];
        for a in 0..n {
            for b in 0..n {
                mul_table[a * n + b] = index_of[&elements[a].compose(&elements[b])];
            }
        }
        let inv_table: Vec<usize> = elements.iter().map(|p| index_of[&p.inverse()]).collect();
        let identity = index_of[&Perm::identity(degree)];
        let word_list: Vec<Vec<usize>> = elements.iter().map(|p| words[p].clone()).collect();
        Ok(FiniteGroup {
            name: name.to_string(),
            degree,
            generators,
            elements,
            identity,
            mul_table,
            inv_table,
            index_of,
            words: word_list,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_table[a * self.order() + b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv_table[a]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index_of.get(p).copied()
    }

    /// Generator word of an element (empty for the identity):
    /// elements[i] = gens[w[0]] o gens[w[1]] o ... o gens[w[k-1]].
    pub fn word(&self, i: usize) -> &[usize] {
        &self.words[i]
    }

    pub fn conjugate_elem(&self, g: usize, x: usize) -> usize {
        // g x g^-1
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// The whole group as a subgroup of itself.
    pub fn full_subgroup(&self) -> Subgroup {
        Subgroup { elems: (0..self.order()).collect() }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elems: vec![self.identity] }
    }

    /// Smallest subgroup containing the given elements.
    pub fn subgroup_closure(&self, seed: &[usize]) -> Subgroup {
        let mut in_set = vec![false; self.order()];
        in_set[self.identity] = true;
        let mut members = vec![self.identity];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in seed {
            if !in_set[s] {
                in_set[s] = true;
                members.push(s);
                queue.push_back(s);
            }
            let si = self.inv(s);
            if !in_set[si] {
                in_set[si] = true;
                members.push(si);
                queue.push_back(si);
            }
        }
        // Products of known members; frontier-based closure.
        while let Some(x) = queue.pop_front() {
            let snapshot: Vec<usize> = members.clone();
            for &y in &snapshot {
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !in_set[p] {
                        in_set[p] = true;
                        members.push(p);
                        queue.push_back(p);
                    }
                }
            }
        }
        members.sort_unstable();
        Subgroup { elems: members }
    }

    /// Every subgroup, exactly once, sorted canonically (by order, then by
    /// element list). Found by saturating one-generator extensions, which
    /// reaches every subgroup.
    pub fn all_subgroups(&self) -> Result<Vec<Subgroup>> {
        if self.order() > DEFAULT_ORDER_BOUND {
            return Err(Error::GroupTooLarge(DEFAULT_ORDER_BOUND));
        }
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
        let trivial = self.trivial_subgroup();
        found.insert(trivial.elems.clone());
        let mut frontier = vec![trivial];
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for s in &frontier {
                for g in 0..self.order() {
                    if s.contains(g) {
                        continue;
                    }
                    let mut seed = s.elems.clone();
                    seed.push(g);
                    let t = self.subgroup_closure(&seed);
                    if found.insert(t.elems.clone()) {
                        next.push(t);
                    }
                }
            }
            frontier = next;
        }
        let mut subs: Vec<Subgroup> = found.into_iter().map(|elems| Subgroup { elems }).collect();
        subs.sort_by_key(|s| (s.elems.len(), s.elems.clone()));
        Ok(subs)
    }

    pub fn conjugate_subgroup(&self, g: usize, h: &Subgroup) -> Subgroup {
        let mut elems: Vec<usize> = h.elems.iter().map(|&x| self.conjugate_elem(g, x)).collect();
        elems.sort_unstable();
        Subgroup { elems }
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let elems: Vec<usize> = (0..self.order())
            .filter(|&g| self.conjugate_subgroup(g, h).elems == h.elems)
            .collect();
        Subgroup { elems }
    }

    /// All G-maps G/H -> G/K, i.e. cosets gK with g^-1 H g <= K,
    /// deduplicated by coset.
    pub fn gset_morphisms(&self, h: &Subgroup, k: &Subgroup) -> Vec<GSetMap> {
        let mut seen_cosets: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for g in 0..self.order() {
            let gi = self.inv(g);
            let ok = h.elems.iter().all(|&x| k.contains(self.mul(self.mul(gi, x), g)));
            if !ok {
                continue;
            }
            let mut coset: Vec<usize> = k.elems.iter().map(|&x| self.mul(g, x)).collect();
            coset.sort_unstable();
            if seen_cosets.insert(coset.clone()) {
                out.push(GSetMap { g: coset[0], coset });
            }
        }
        out
    }

    /// Left cosets of a subgroup, each sorted, ordered by minimal element.
    pub fn left_cosets(&self, h: &Subgroup) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.order()];
        let mut cosets = Vec::new();
        for g in 0..self.order() {
            if seen[g] {
                continue;
            }
            let mut coset: Vec<usize> = h.elems.iter().map(|&x| self.mul(g, x)).collect();
            coset.sort_unstable();
            for &c in &coset {
                seen[c] = true;
            }
            cosets.push(coset);
        }
        cosets.sort();
        cosets
    }

    /// The Weyl group WH = N_G(H)/H as a concrete permutation group on the
    /// cosets of H in its normalizer, with projection and a section.
    pub fn weyl_group(&self, h: &Subgroup) -> WeylGroup {
        let n = self.normalizer(h);
        // Cosets of H inside N, ordered by minimal element.
        let mut coset_of = HashMap::new();
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for &g in &n.elems {
            if coset_of.contains_key(&g) {
                continue;
            }
            let mut coset: Vec<usize> = h.elems.iter().map(|&x| self.mul(g, x)).collect();
            coset.sort_unstable();
            let ci = cosets.len();
            for &c in &coset {
                coset_of.insert(c, ci);
            }
            cosets.push(coset);
        }
        // Left-multiplication permutation of each n in N on the cosets.
        let degree = cosets.len();
        let mut perm_of_n: HashMap<usize, Perm> = HashMap::new();
        let mut perms: Vec<Perm> = Vec::new();
        for &g in &n.elems {
            let images: Vec<usize> = cosets.iter().map(|c| coset_of[&self.mul(g, c[0])]).collect();
            let p = Perm { images };
            if !perms.contains(&p) {
                perms.push(p.clone());
            }
            perm_of_n.insert(g, p);
        }
        let group = FiniteGroup::from_generators(
            &format!("W({})", self.name),
            degree.max(1),
            perms
                .iter()
                .map(|p| {
                    if degree == 0 {
                        Perm::identity(1)
                    } else {
                        p.clone()
                    }
                })
                .collect(),
        )
        .expect("Weyl group closure cannot exceed bound");
        let mut proj = HashMap::new();
        for &g in &n.elems {
            let p = if degree == 0 { Perm::identity(1) } else { perm_of_n[&g].clone() };
            proj.insert(g, group.index_of(&p).unwrap());
        }
        // Section: minimal G-element mapping to each W element.
        let mut section = vec![usize::MAX; group.order()];
        for &g in &n.elems {
            let w = proj[&g];
            if g < section[w] {
                section[w] = g;
            }
        }
        WeylGroup { group, normalizer: n, proj, section }
    }
}

/// Subgroup of some parent group, stored as a sorted list of element indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subgroup {
    pub elems: Vec<usize>,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elems.binary_search(&g).is_ok()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.elems.iter().all(|&x| other.contains(x))
    }

    pub fn check_state(&self, parent: &FiniteGroup) -> Result<()> {
        if !self.contains(parent.identity) {
            return Err(Error::InvalidInput("subgroup missing identity".into()));
        }
        for &a in &self.elems {
            if !self.contains(parent.inv(a)) {
                return Err(Error::InvalidInput("subgroup not closed under inverse".into()));
            }
            for &b in &self.elems {
                if !self.contains(parent.mul(a, b)) {
                    return Err(Error::InvalidInput("subgroup not closed under product".into()));
                }
            }
        }
        Ok(())
    }
}

/// A G-map G/H -> G/K, determined by the coset gK with g^-1 H g <= K.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GSetMap {
    /// Minimal representative of the coset.
    pub g: usize,
    /// The full coset gK, sorted.
    pub coset: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub group: FiniteGroup,
    pub normalizer: Subgroup,
    /// Projection N_G(H) -> WH by element index.
    pub proj: HashMap<usize, usize>,
    /// Chosen coset representative per WH element (minimal element index).
    pub section: Vec<usize>,
}

/// A conjugacy class of subgroups; the representative is the
/// lexicographically minimal member.
#[derive(Clone, Debug)]
pub struct SubgroupConjClass {
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

/// The full set of conjugacy classes of subgroups, sorted by subgroup order
/// then lexicographically (which linearizes the subconjugacy partial order),
/// together with that partial order and lookup/label data.
#[derive(Clone, Debug)]
pub struct SubgroupClasses {
    pub classes: Vec<SubgroupConjClass>,
    /// leq[i][j] holds iff some conjugate of classes[i].rep is contained in
    /// classes[j].rep (the partial order (H) <= (K)).
    pub leq: Vec<Vec<bool>>,
    /// Canonical class labels, usable as serialization keys.
    pub labels: Vec<String>,
    class_of: BTreeMap<Vec<usize>, usize>,
}

impl SubgroupClasses {
    pub fn class_of(&self, h: &Subgroup) -> Option<usize> {
        self.class_of.get(&h.elems).copied()
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }
}

pub fn conjugacy_classes_of_subgroups(g: &FiniteGroup) -> Result<SubgroupClasses> {
    let subs = g.all_subgroups()?;
    let mut assigned: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut classes: Vec<SubgroupConjClass> = Vec::new();
    for s in &subs {
        if assigned.contains_key(&s.elems) {
            continue;
        }
        let ci = classes.len();
        let mut members: BTreeSet<Vec<usize>> = BTreeSet::new();
        for x in 0..g.order() {
            members.insert(g.conjugate_subgroup(x, s).elems);
        }
        let members: Vec<Subgroup> =
            members.into_iter().map(|elems| Subgroup { elems }).collect();
        for m in &members {
            assigned.insert(m.elems.clone(), ci);
        }
        // subs is sorted, so the first-seen member is lexicographically
        // minimal within its order; all conjugates share the same order.
        classes.push(SubgroupConjClass { representative: s.clone(), members });
    }
    // Sorting by (order, elems) of the representative linearizes the
    // subconjugacy order since (H) < (K) strictly implies |H| < |K|.
    let mut order: Vec<usize> = (0..classes.len()).collect();
    order.sort_by_key(|&i| {
        (classes[i].representative.order(), classes[i].representative.elems.clone())
    });
    let classes: Vec<SubgroupConjClass> = order.into_iter().map(|i| classes[i].clone()).collect();
    let mut class_of = BTreeMap::new();
    for (ci, c) in classes.iter().enumerate() {
        for m in &c.members {
            class_of.insert(m.elems.clone(), ci);
        }
    }
    let n = classes.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            let hi = &classes[i].representative;
            let kj = &classes[j].representative;
            leq[i][j] = !g.gset_morphisms(hi, kj).is_empty();
        }
    }
    let labels = (0..n).map(|i| format!("(H{i}:{})", classes[i].representative.order())).collect();
    Ok(SubgroupClasses { classes, leq, labels, class_of })
}

/// Constructors for the small-group catalog used by tests and examples.
pub mod catalog {
    use super::*;

    pub fn cyclic(n: usize) -> FiniteGroup {
        let gen = Perm { images: (0..n).map(|i| (i + 1) % n).collect() };
        FiniteGroup::from_generators(&format!("C{n}"), n.max(1), if n <= 1 { vec![] } else { vec![gen] })
            .unwrap()
    }

    pub fn trivial() -> FiniteGroup {
        FiniteGroup::from_generators("1", 1, vec![]).unwrap()
    }

    pub fn symmetric(n: usize) -> FiniteGroup {
        let mut gens = Vec::new();
        if n >= 2 {
            let mut t = Perm::identity(n);
            t.images.swap(0, 1);
            gens.push(t);
            let c = Perm { images: (0..n).map(|i| (i + 1) % n).collect() };
            gens.push(c);
        }
        FiniteGroup::from_generators(&format!("S{n}"), n.max(1), gens).unwrap()
    }

    pub fn alternating4() -> FiniteGroup {
        let a = Perm::new(vec![1, 2, 0, 3]).unwrap(); // (0 1 2)
        let b = Perm::new(vec![1, 0, 3, 2]).unwrap(); // (0 1)(2 3)
        FiniteGroup::from_generators("A4", 4, vec![a, b]).unwrap()
    }

    pub fn dihedral(n: usize) -> FiniteGroup {
        // Symmetries of the n-gon on vertices 0..n.
        let r = Perm { images: (0..n).map(|i| (i + 1) % n).collect() };
        let s = Perm { images: (0..n).map(|i| (n - i) % n).collect() };
        FiniteGroup::from_generators(&format!("D{n}"), n, vec![r, s]).unwrap()
    }

    /// Direct product, acting on the disjoint union of the two point sets.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let degree = a.degree + b.degree;
        let mut gens = Vec::new();
        for g in &a.generators {
            let mut im: Vec<usize> = g.images.clone();
            im.extend(a.degree..degree);
            gens.push(Perm { images: im });
        }
        for g in &b.generators {
            let mut im: Vec<usize> = (0..a.degree).collect();
            im.extend(g.images.iter().map(|&x| x + a.degree));
            gens.push(Perm { images: im });
        }
        FiniteGroup::from_generators(&format!("{}x{}", a.name, b.name), degree, gens).unwrap()
    }

    /// Regular permutation representation from a multiplication function on
    /// {0,..,n-1} with identity `id`; generators are the left translations
    /// of `gen_elems`.
    pub fn from_mul_fn(
        name: &str,
        n: usize,
        id: usize,
        gen_elems: &[usize],
        mul: impl Fn(usize, usize) -> usize,
    ) -> FiniteGroup {
        assert!((0..n).all(|x| mul(id, x) == x && mul(x, id) == x));
        let gens: Vec<Perm> =
            gen_elems.iter().map(|&g| Perm { images: (0..n).map(|x| mul(g, x)).collect() }).collect();
        let grp = FiniteGroup::from_generators(name, n, gens).unwrap();
        assert_eq!(grp.order(), n, "generators must generate the whole table");
        grp
    }

    /// Quaternion group of order 8: elements coded as sign * basis with
    /// basis in (1, i, j, k); code = basis + 4 * sign_bit.
    pub fn quaternion8() -> FiniteGroup {
        fn mul(a: usize, b: usize) -> usize {
            let (sa, ba) = (a / 4, a % 4);
            let (sb, bb) = (b / 4, b % 4);
            // basis multiplication table for (1, i, j, k): (sign, basis)
            const TBL: [[(usize, usize); 4]; 4] = [
                [(0, 0), (0, 1), (0, 2), (0, 3)],
                [(0, 1), (1, 0), (0, 3), (1, 2)],
                [(0, 2), (1, 3), (1, 0), (0, 1)],
                [(0, 3), (0, 2), (1, 1), (1, 0)],
            ];
            let (s, bas) = TBL[ba][bb];
            ((sa + sb + s) % 2) * 4 + bas
        }
        from_mul_fn("Q8", 8, 0, &[1, 2], mul)
    }

    /// Dicyclic group of order 12: <a, b | a^6 = 1, b^2 = a^3, b a b^-1 = a^-1>,
    /// elements coded as a^i b^j with i < 6, j < 2: code = i + 6 j.
    pub fn dicyclic12() -> FiniteGroup {
        fn mul(x: usize, y: usize) -> usize {
            let (i1, j1) = (x % 6, x / 6);
            let (i2, j2) = (y % 6, y / 6);
            // (a^i1 b^j1)(a^i2 b^j2): move b^j1 across a^i2.
            let i2t = if j1 == 1 { (6 - i2) % 6 } else { i2 };
            let mut i = (i1 + i2t) % 6;
            let mut j = j1 + j2;
            if j == 2 {
                // b^2 = a^3
                i = (i + 3) % 6;
                j = 0;
            }
            i + 6 * j
        }
        from_mul_fn("Dic3", 12, 0, &[1, 6], mul)
    }

    /// All isomorphism types of groups of order 1 through 12 (24 groups),
    /// as permutation groups.
    pub fn groups_of_order_up_to_12() -> Vec<FiniteGroup> {
        let c = cyclic;
        vec![
            trivial(),
            c(2),
            c(3),
            c(4),
            direct_product(&c(2), &c(2)),
            c(5),
            c(6),
            symmetric(3),
            c(7),
            c(8),
            direct_product(&c(4), &c(2)),
            direct_product(&direct_product(&c(2), &c(2)), &c(2)),
            dihedral(4),
            quaternion8(),
            c(9),
            direct_product(&c(3), &c(3)),
            c(10),
            dihedral(5),
            c(11),
            c(12),
            direct_product(&c(6), &c(2)),
            dihedral(6),
            alternating4(),
            dicyclic12(),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    #[test]
    fn s3_subgroups_and_classes() {
        let g = symmetric(3);
        assert_eq!(g.order(), 6);
        let subs = g.all_subgroups().unwrap();
        assert_eq!(subs.len(), 6); // {e}, 3 x C2, C3, S3
        let classes = conjugacy_classes_of_subgroups(&g).unwrap();
        assert_eq!(classes.len(), 4);
        let orders: Vec<usize> =
            classes.classes.iter().map(|c| c.representative.order()).collect();
        assert_eq!(orders, vec![1, 2, 3, 6]);
        assert_eq!(classes.classes[1].members.len(), 3);
    }

    #[test]
    fn subgroup_counts_oracle() {
        // Brute-force oracle values for standard groups.
        for (grp, count) in [
            (cyclic(12), 6),
            (cyclic(13), 2),
            (symmetric(4), 30),
            (dihedral(6), 16),
            (quaternion8(), 6),
            (alternating4(), 10),
        ] {
            assert_eq!(grp.all_subgroups().unwrap().len(), count, "{}", grp.name);
        }
    }

    #[test]
    fn klein_four_has_five_normal_classes() {
        let g = direct_product(&cyclic(2), &cyclic(2));
        let classes = conjugacy_classes_of_subgroups(&g).unwrap();
        assert_eq!(classes.len(), 5);
        for c in &classes.classes {
            assert_eq!(c.members.len(), 1); // all subgroups normal
        }
    }

    #[test]
    fn lagrange_on_enumeration() {
        for g in groups_of_order_up_to_12() {
            for s in g.all_subgroups().unwrap() {
                s.check_state(&g).unwrap();
                assert_eq!(g.order() % s.order(), 0, "{}", g.name);
                assert_eq!(g.left_cosets(&s).len(), g.order() / s.order());
            }
        }
    }

    #[test]
    fn weyl_group_of_trivial_subgroup_is_g() {
        for g in [symmetric(3), cyclic(6), quaternion8()] {
            let w = g.weyl_group(&g.trivial_subgroup());
            assert_eq!(w.group.order(), g.order());
            // proj is an isomorphism: check it preserves multiplication.
            for a in 0..g.order() {
                for b in 0..g.order() {
                    assert_eq!(
                        w.proj[&g.mul(a, b)],
                        w.group.mul(w.proj[&a], w.proj[&b])
                    );
                }
            }
        }
    }

    #[test]
    fn weyl_group_of_full_group_is_trivial() {
        let g = symmetric(3);
        let w = g.weyl_group(&g.full_subgroup());
        assert_eq!(w.group.order(), 1);
    }

    #[test]
    fn weyl_of_c2_in_s3_is_trivial() {
        let g = symmetric(3);
        let classes = conjugacy_classes_of_subgroups(&g).unwrap();
        let c2 = &classes.classes[1].representative;
        assert_eq!(c2.order(), 2);
        let w = g.weyl_group(c2);
        assert_eq!(w.group.order(), 1); // N(C2) = C2 in S3
    }

    #[test]
    fn gset_morphisms_examples() {
        let g = symmetric(3);
        let full = g.full_subgroup();
        assert_eq!(g.gset_morphisms(&full, &full).len(), 1);
        let classes = conjugacy_classes_of_subgroups(&g).unwrap();
        let c2 = classes.classes[1].representative.clone();
        let c3 = classes.classes[2].representative.clone();
        assert!(g.gset_morphisms(&c3, &c2).is_empty());
        // Z/2 free orbit: 2 translations
        let z2 = cyclic(2);
        let triv = z2.trivial_subgroup();
        assert_eq!(z2.gset_morphisms(&triv, &triv).len(), 2);
    }

    #[test]
    fn morphisms_match_partial_order() {
        let g = dihedral(4);
        let classes = conjugacy_classes_of_subgroups(&g).unwrap();
        for i in 0..classes.len() {
            for j in 0..classes.len() {
                let nonempty = !g
                    .gset_morphisms(
                        &classes.classes[i].representative,
                        &classes.classes[j].representative,
                    )
                    .is_empty();
                assert_eq!(nonempty, classes.leq[i][j]);
            }
        }
    }

    #[test]
    fn classes_cover_all_subgroups_once() {
        for g in [symmetric(4), dihedral(6)] {
            let subs = g.all_subgroups().unwrap();
            let classes = conjugacy_classes_of_subgroups(&g).unwrap();
            let total: usize = classes.classes.iter().map(|c| c.members.len()).sum();
            assert_eq!(total, subs.len());
            for s in &subs {
                assert!(classes.class_of(s).is_some());
            }
        }
    }

    #[test]
    fn word_reconstruction() {
        let g = symmetric(4);
        for i in 0..g.order() {
            let mut p = Perm::identity(g.degree);
            for &w in g.word(i).iter().rev() {
                p = g.generators[w].compose(&p);
            }
            assert_eq!(p, g.elements[i]);
        }
    }

    #[test]
    fn catalog_orders() {
        let orders: Vec<usize> =
            groups_of_order_up_to_12().iter().map(|g| g.order()).collect();
        assert_eq!(
            orders,
            vec![1, 2, 3, 4, 4, 5, 6, 6, 7, 8, 8, 8, 8, 8, 9, 9, 10, 10, 11, 12, 12, 12, 12, 12]
        );
    }
}
