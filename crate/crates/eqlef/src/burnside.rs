//! The Burnside ring of a finite group: elements as integer vectors over
//! conjugacy classes of subgroups, the marks homomorphism ch0 and its exact
//! inverse, multiplication via marks, and equivariant degrees of linear
//! self-maps of representation spheres.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup, SubgroupClasses};
use crate::linalg::QMat;

/// An element of the Burnside ring A(G): integer coefficients over the
/// basis of orbit types [G/H], indexed like `SubgroupClasses::classes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BurnsideElement {
    pub coeffs: Vec<BigInt>,
}

impl BurnsideElement {
    pub fn zero(classes: &SubgroupClasses) -> BurnsideElement {
        BurnsideElement { coeffs: vec![BigInt::zero(); classes.classes.len()] }
    }

    /// The basis element [G/H] for the class of `h`.
    pub fn orbit(classes: &SubgroupClasses, h: &Subgroup) -> BurnsideElement {
        let mut e = BurnsideElement::zero(classes);
        e.coeffs[classes.class_of(h).expect("subgroup of the same group")] += BigInt::one();
        e
    }

    /// The multiplicative unit [G/G].
    pub fn unit(classes: &SubgroupClasses) -> BurnsideElement {
        let n = classes.classes.len();
        let mut e = BurnsideElement::zero(classes);
        e.coeffs[n - 1] += BigInt::one(); // classes sorted by order: G is last
        e
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &BurnsideElement) -> BurnsideElement {
        BurnsideElement {
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn neg(&self) -> BurnsideElement {
        BurnsideElement { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> BurnsideElement {
        BurnsideElement { coeffs: self.coeffs.iter().map(|a| a * k).collect() }
    }

    /// Human-readable form using the class labels.
    pub fn display(&self, classes: &SubgroupClasses) -> String {
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                parts.push(format!("{}*[G/{}]", c, classes.labels[i]));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }
}

/// Marks vector: the fixed-point count of each subgroup class on a virtual
/// G-set, indexed like `SubgroupClasses::classes`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkVector {
    pub marks: Vec<BigInt>,
}

/// Number of H-fixed points of G/K: cosets gK with g^{-1} H g contained in K.
pub fn mark_count(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> BigInt {
    let mut count = 0u64;
    for coset in g.left_cosets(k) {
        let rep = coset[0];
        let rep_inv = g.inv(rep);
        if h.elems.iter().all(|&x| k.contains(g.mul(g.mul(rep_inv, x), rep))) {
            count += 1;
        }
    }
    BigInt::from(count)
}

/// Table of marks: entry (i, j) = number of H_i-fixed points of G/K_j.
/// Upper triangular in the class order with nonzero diagonal |W K_i|.
pub fn table_of_marks(g: &FiniteGroup, classes: &SubgroupClasses) -> Vec<Vec<BigInt>> {
    let n = classes.classes.len();
    let mut t = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            t[i][j] = mark_count(
                g,
                &classes.classes[i].representative,
                &classes.classes[j].representative,
            );
        }
    }
    t
}

/// The marks homomorphism.
pub fn ch0(g: &FiniteGroup, classes: &SubgroupClasses, e: &BurnsideElement) -> MarkVector {
    let t = table_of_marks(g, classes);
    let n = classes.classes.len();
    let marks = (0..n)
        .map(|i| (0..n).map(|j| &t[i][j] * &e.coeffs[j]).sum())
        .collect();
    MarkVector { marks }
}

/// Exact inverse of ch0 by back-substitution through the triangular table of
/// marks. Fails with `NotInImage` when the solution is not integral.
pub fn ch0_inverse(
    g: &FiniteGroup,
    classes: &SubgroupClasses,
    m: &MarkVector,
) -> Result<BurnsideElement> {
    let n = classes.classes.len();
    if m.marks.len() != n {
        return Err(Error::InvalidInput(format!(
            "mark vector has length {}, expected {}",
            m.marks.len(),
            n
        )));
    }
    let t = table_of_marks(g, classes);
    let mut coeffs = vec![BigInt::zero(); n];
    for i in (0..n).rev() {
        let mut rhs = m.marks[i].clone();
        for j in (i + 1)..n {
            rhs -= &t[i][j] * &coeffs[j];
        }
        let d = &t[i][i];
        if (&rhs % d).is_zero() {
            coeffs[i] = rhs / d;
        } else {
            return Err(Error::NotInImage(format!(
                "mark residue {} not divisible by {} at class {}",
                rhs, d, classes.labels[i]
            )));
        }
    }
    Ok(BurnsideElement { coeffs })
}

/// Ring multiplication: pointwise product of marks pulled back through ch0.
pub fn product(
    g: &FiniteGroup,
    classes: &SubgroupClasses,
    a: &BurnsideElement,
    b: &BurnsideElement,
) -> BurnsideElement {
    let ma = ch0(g, classes, a);
    let mb = ch0(g, classes, b);
    let marks = MarkVector {
        marks: ma.marks.iter().zip(&mb.marks).map(|(x, y)| x * y).collect(),
    };
    ch0_inverse(g, classes, &marks).expect("Burnside ring is closed under multiplication")
}

/// An equivariant linear self-map of a real representation V of G, used to
/// compute the local equivariant degree of the induced self-map of the
/// one-point compactification sphere S^V.
pub struct LinearSphereMap {
    pub group: FiniteGroup,
    pub dim: usize,
    /// Representation matrix per group element (indexed like `group.elements`).
    pub rep: Vec<QMat>,
    pub map: QMat,
}

impl LinearSphereMap {
    /// Build from one matrix per group generator; the representation property
    /// and the equivariance of `map` are verified.
    pub fn new(group: FiniteGroup, generator_matrices: &[QMat], map: QMat) -> Result<LinearSphereMap> {
        if generator_matrices.len() != group.generators.len() {
            return Err(Error::InvalidInput("one matrix per group generator required".into()));
        }
        let dim = map.rows;
        if map.cols != dim || generator_matrices.iter().any(|m| m.rows != dim || m.cols != dim) {
            return Err(Error::InvalidInput("representation matrices must be square of equal size".into()));
        }
        let mut rep = Vec::with_capacity(group.order());
        for i in 0..group.order() {
            let mut m = QMat::identity(dim);
            for &w in group.word(i).iter().rev() {
                m = generator_matrices[w].mul(&m);
            }
            rep.push(m);
        }
        // Homomorphism check: rho(g_i) rho(b) = rho(g_i b) for all generators
        // and elements (this propagates to all products).
        for (gi, gp) in group.generators.iter().enumerate() {
            let ge = group.index_of(gp).expect("generator is an element");
            for b in 0..group.order() {
                let lhs = generator_matrices[gi].mul(&rep[b]);
                let rhs = &rep[group.mul(ge, b)];
                if &lhs != rhs {
                    return Err(Error::InvalidInput(
                        "generator matrices do not define a representation".into(),
                    ));
                }
            }
        }
        for (gi, _) in group.generators.iter().enumerate() {
            let ge = group.index_of(&group.generators[gi]).unwrap();
            if map.mul(&rep[ge]) != rep[ge].mul(&map) {
                return Err(Error::NotEquivariant(format!(
                    "map does not commute with generator {gi}"
                )));
            }
        }
        Ok(LinearSphereMap { group, dim, rep, map })
    }

    /// Basis (columns) of the fixed subspace V^H.
    pub fn fixed_subspace(&self, h: &Subgroup) -> QMat {
        if h.elems.len() == 1 {
            return QMat::identity(self.dim);
        }
        // Stack rho(h) - I for the non-identity elements of H.
        let k = h.elems.len() - 1;
        let mut stacked = QMat::zero(k * self.dim, self.dim);
        let mut row = 0;
        for &x in &h.elems {
            if x == self.group.identity {
                continue;
            }
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let mut v = self.rep[x][(i, j)].clone();
                    if i == j {
                        v -= BigRational::one();
                    }
                    stacked[(row + i, j)] = v;
                }
            }
            row += self.dim;
        }
        stacked.kernel_basis()
    }

    /// Sign of det of `map` restricted to V^H; +1 on a zero-dimensional
    /// stratum; error when the restriction is singular.
    pub fn stratum_sign(&self, h: &Subgroup, label: &str) -> Result<BigInt> {
        let b = self.fixed_subspace(h);
        if b.cols == 0 {
            return Ok(BigInt::one());
        }
        let fb = self.map.mul(&b);
        let x = b.solve(&fb).ok_or_else(|| {
            Error::InvalidInput("map does not preserve a fixed subspace".into())
        })?;
        let d = x.det();
        if d.is_zero() {
            return Err(Error::SingularOnStratum(label.to_string()));
        }
        Ok(if d.is_positive() { BigInt::one() } else { -BigInt::one() })
    }

    /// The equivariant degree in the Burnside ring: the unique preimage under
    /// ch0 of the vector of stratum signs.
    pub fn equivariant_degree(&self, classes: &SubgroupClasses) -> Result<BurnsideElement> {
        let mut marks = Vec::new();
        for (i, c) in classes.classes.iter().enumerate() {
            marks.push(self.stratum_sign(&c.representative, &classes.labels[i])?);
        }
        ch0_inverse(&self.group, classes, &MarkVector { marks })
    }
}
