//! Path algebras of finite acyclic quivers and their indecomposable
//! projective right modules.
//!
//! Conventions: a path is written right to left like a composite of
//! functions, so for an arrow `a: 1 → 2` we have `a = e_2 · a · e_1`.
//! The projective `P_v = e_v · A` has as basis the paths ending at `v`,
//! and `Hom(P_i, P_j) ≅ e_j · A · e_i` acting by left multiplication.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::exact_linear::{prints_negative, Field, Matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("invalid label `{0}`")]
    InvalidLabel(String),
    #[error("quiver has a directed cycle through vertex `{0}`")]
    Cyclic(String),
    #[error("element is not supported in e_{to}·A·e_{from}")]
    WrongSupport { from: String, to: String },
    #[error("cannot parse algebra element `{0}`: {1}")]
    Parse(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

fn valid_label(s: &str) -> bool {
    !s.is_empty()
        && s.chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl Quiver {
    /// Builds a quiver from vertex labels and `(label, source, target)` arrows,
    /// rejecting duplicate labels and directed cycles.
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
    ) -> Result<Self, AlgebraError> {
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if !valid_label(v) {
                return Err(AlgebraError::InvalidLabel(v.clone()));
            }
            if index.insert(v.clone(), i).is_some() {
                return Err(AlgebraError::DuplicateLabel(v.clone()));
            }
        }
        let mut seen = HashMap::new();
        let mut out = Vec::with_capacity(arrows.len());
        for (label, s, t) in arrows {
            // Arrow labels must not look like trivial paths or coefficients.
            let starts_alpha = label
                .chars()
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic());
            if !valid_label(&label) || !starts_alpha || label.starts_with("e_") {
                return Err(AlgebraError::InvalidLabel(label));
            }
            if seen.insert(label.clone(), ()).is_some() {
                return Err(AlgebraError::DuplicateLabel(label));
            }
            let source = *index.get(&s).ok_or(AlgebraError::UnknownVertex(s))?;
            let target = *index.get(&t).ok_or(AlgebraError::UnknownVertex(t))?;
            out.push(Arrow {
                label,
                source,
                target,
            });
        }
        let q = Quiver {
            vertices,
            arrows: out,
        };
        q.check_acyclic()?;
        Ok(q)
    }

    /// One vertex, no arrows. Its path algebra is the base field.
    pub fn trivial() -> Self {
        Quiver {
            vertices: vec!["1".into()],
            arrows: Vec::new(),
        }
    }

    /// The linearly oriented `A_n` quiver `1 → 2 → … → n` with arrows `a1, a2, …`.
    pub fn linear(n: usize) -> Self {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = (1..n)
            .map(|i| (format!("a{i}"), i.to_string(), (i + 1).to_string()))
            .collect();
        Quiver::new(vertices, arrows).expect("linear quiver is valid")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == label)
    }

    fn check_acyclic(&self) -> Result<(), AlgebraError> {
        // Kahn's algorithm; leftover vertices lie on or behind a cycle.
        let n = self.vertices.len();
        let mut indeg = vec![0usize; n];
        for a in &self.arrows {
            indeg[a.target] += 1;
        }
        let mut queue: VecDeque<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut done = 0;
        while let Some(v) = queue.pop_front() {
            done += 1;
            for a in self.arrows.iter().filter(|a| a.source == v) {
                indeg[a.target] -= 1;
                if indeg[a.target] == 0 {
                    queue.push_back(a.target);
                }
            }
        }
        if done == n {
            Ok(())
        } else {
            let v = (0..n).find(|&v| indeg[v] > 0).unwrap();
            Err(AlgebraError::Cyclic(self.vertices[v].clone()))
        }
    }
}

/// A directed path; `arrows` lists arrow indices in traversal order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Path {
    pub source: usize,
    pub target: usize,
    pub arrows: Vec<usize>,
}

/// The path algebra `kQ` of an acyclic quiver. Scalar-free: the basis and the
/// multiplication table are combinatorial, coefficients live in [`AlgebraElement`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PathAlgebra {
    quiver: Quiver,
    paths: Vec<Path>,
    /// `between[i][j]`: indices of paths from `i` to `j`, in basis order.
    between: Vec<Vec<Vec<usize>>>,
    /// Position of each path inside its `between` list.
    slot: Vec<usize>,
    /// Position of each path inside the basis of `P_target`.
    proj_slot: Vec<usize>,
    /// `ending_at[v]`: basis of `P_v`.
    ending_at: Vec<Vec<usize>>,
    /// `mul[p][q]` = index of `p · q` (q first, then p), if composable.
    mul: Vec<Vec<Option<usize>>>,
}

impl PathAlgebra {
    pub fn new(quiver: Quiver) -> Self {
        let n = quiver.vertices.len();
        let mut paths = Vec::new();
        // Breadth-first from each vertex; outgoing arrows taken in label order.
        for v in 0..n {
            let mut queue = VecDeque::new();
            queue.push_back(Path {
                source: v,
                target: v,
                arrows: Vec::new(),
            });
            while let Some(p) = queue.pop_front() {
                let mut out: Vec<usize> = (0..quiver.arrows.len())
                    .filter(|&a| quiver.arrows[a].source == p.target)
                    .collect();
                out.sort_by(|&a, &b| quiver.arrows[a].label.cmp(&quiver.arrows[b].label));
                for a in out {
                    let mut arrows = p.arrows.clone();
                    arrows.push(a);
                    queue.push_back(Path {
                        source: p.source,
                        target: quiver.arrows[a].target,
                        arrows,
                    });
                }
                paths.push(p);
            }
        }
        let lookup: HashMap<(usize, Vec<usize>), usize> = paths
            .iter()
            .enumerate()
            .map(|(i, p)| ((p.source, p.arrows.clone()), i))
            .collect();
        let mut between = vec![vec![Vec::new(); n]; n];
        let mut slot = vec![0; paths.len()];
        let mut ending_at = vec![Vec::new(); n];
        let mut proj_slot = vec![0; paths.len()];
        for (i, p) in paths.iter().enumerate() {
            slot[i] = between[p.source][p.target].len();
            between[p.source][p.target].push(i);
            proj_slot[i] = ending_at[p.target].len();
            ending_at[p.target].push(i);
        }
        let mul = paths
            .iter()
            .map(|p| {
                paths
                    .iter()
                    .map(|q| {
                        if q.target != p.source {
                            return None;
                        }
                        let mut arrows = q.arrows.clone();
                        arrows.extend_from_slice(&p.arrows);
                        Some(lookup[&(q.source, arrows)])
                    })
                    .collect()
            })
            .collect();
        PathAlgebra {
            quiver,
            paths,
            between,
            slot,
            proj_slot,
            ending_at,
            mul,
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn vertex_label(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }

    /// Total dimension, which is the number of paths.
    pub fn dimension(&self) -> usize {
        self.paths.len()
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path(&self, p: usize) -> &Path {
        &self.paths[p]
    }

    /// Index of the trivial path `e_v`.
    pub fn idempotent(&self, v: usize) -> usize {
        self.between[v][v][0]
    }

    /// Paths from `i` to `j`, i.e. a basis of `e_j·A·e_i`.
    pub fn paths_between(&self, i: usize, j: usize) -> &[usize] {
        &self.between[i][j]
    }

    /// Position of `p` inside `paths_between(source(p), target(p))`.
    pub fn slot(&self, p: usize) -> usize {
        self.slot[p]
    }

    /// Basis of `P_v = e_v·A`: all paths ending at `v`.
    pub fn projective_basis(&self, v: usize) -> &[usize] {
        &self.ending_at[v]
    }

    pub fn projective_dimension(&self, v: usize) -> usize {
        self.ending_at[v].len()
    }

    /// `p · q` on basis paths: traverse `q`, then `p`.
    pub fn path_product(&self, p: usize, q: usize) -> Option<usize> {
        self.mul[p][q]
    }

    /// Parses `e_v` or a composite of arrows `c.b.a` (`a` traversed first).
    pub fn parse_path(&self, s: &str) -> Option<usize> {
        let s = s.trim();
        if let Some(v) = s.strip_prefix("e_") {
            let v = self.quiver.vertex_index(v)?;
            return Some(self.idempotent(v));
        }
        let mut arrows = Vec::new();
        for label in s.split('.').rev() {
            let label = label.trim();
            arrows.push(self.quiver.arrows.iter().position(|a| a.label == label)?);
        }
        let first = self.quiver.arrows[*arrows.first()?].source;
        self.paths
            .iter()
            .position(|p| p.source == first && p.arrows == arrows)
    }

    pub fn path_name(&self, p: usize) -> String {
        let path = &self.paths[p];
        if path.arrows.is_empty() {
            format!("e_{}", self.quiver.vertices[path.source])
        } else {
            path.arrows
                .iter()
                .rev()
                .map(|&a| self.quiver.arrows[a].label.as_str())
                .collect::<Vec<_>>()
                .join(".")
        }
    }

    /// Basis of `Hom(P_i, P_j) ≅ e_j·A·e_i`.
    pub fn hom_projectives<F: Field>(&self, i: usize, j: usize) -> Vec<AlgebraElement<F>> {
        self.between[i][j]
            .iter()
            .map(|&p| AlgebraElement::basis(p))
            .collect()
    }

    pub fn multiply<F: Field>(
        &self,
        x: &AlgebraElement<F>,
        y: &AlgebraElement<F>,
    ) -> AlgebraElement<F> {
        let mut out = AlgebraElement::zero();
        for (&p, a) in &x.terms {
            for (&q, b) in &y.terms {
                if let Some(r) = self.mul[p][q] {
                    out.add_term(r, a.clone() * b.clone());
                }
            }
        }
        out
    }

    /// The identity `Σ_v e_v`.
    pub fn one<F: Field>(&self) -> AlgebraElement<F> {
        let mut out = AlgebraElement::zero();
        for v in 0..self.vertex_count() {
            out.add_term(self.idempotent(v), F::one());
        }
        out
    }

    /// True when every path in the support of `x` runs from `i` to `j`.
    pub fn supported_in<F: Field>(&self, x: &AlgebraElement<F>, i: usize, j: usize) -> bool {
        x.terms
            .keys()
            .all(|&p| self.paths[p].source == i && self.paths[p].target == j)
    }

    /// Matrix of `a ↦ x·a` from the path basis of `P_i` to that of `P_j`.
    pub fn element_to_matrix<F: Field>(
        &self,
        x: &AlgebraElement<F>,
        i: usize,
        j: usize,
    ) -> Result<Matrix<F>, AlgebraError> {
        if !self.supported_in(x, i, j) {
            return Err(AlgebraError::WrongSupport {
                from: self.vertex_label(i).to_string(),
                to: self.vertex_label(j).to_string(),
            });
        }
        let src = &self.ending_at[i];
        let mut m = Matrix::<F>::zeros(self.ending_at[j].len(), src.len());
        for (col, &a) in src.iter().enumerate() {
            for (&p, c) in &x.terms {
                let r = self.mul[p][a].expect("p starts where a ends");
                let row = self.proj_slot[r];
                m[(row, col)] = m[(row, col)].clone() + c.clone();
            }
        }
        Ok(m)
    }

    /// Parses a formal sum such as `2*b.a + -1*e_1 - c`. Coefficients may be
    /// integers or fractions; a bare `0` is the zero element.
    pub fn parse_element<F: Field>(&self, s: &str) -> Result<AlgebraElement<F>, AlgebraError> {
        let err = |m: &str| AlgebraError::Parse(s.to_string(), m.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty expression"));
        }
        // Split on top-level '+' and '-' while keeping the sign with the term.
        let mut terms = Vec::new();
        let mut current = String::new();
        for (k, ch) in compact.char_indices() {
            let after_operator = compact[..k].ends_with(['*', '+', '-']);
            if (ch == '+' || ch == '-') && k > 0 && !after_operator {
                terms.push(std::mem::take(&mut current));
            }
            current.push(ch);
        }
        terms.push(current);
        let mut out = AlgebraElement::zero();
        for raw in terms {
            let (sign, body) = match raw.strip_prefix('+') {
                Some(rest) => (F::one(), rest),
                None => match raw.strip_prefix('-') {
                    Some(rest) => (-F::one(), rest),
                    None => (F::one(), raw.as_str()),
                },
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let (coef, path) = match body.split_once('*') {
                Some((c, p)) => (F::parse(c).ok_or_else(|| err("bad coefficient"))?, Some(p)),
                None => match F::parse(body) {
                    Some(c) if c.is_zero() => (c, None),
                    Some(_) => return Err(err("a nonzero scalar needs a path")),
                    None => (F::one(), Some(body)),
                },
            };
            if let Some(p) = path {
                let idx = self
                    .parse_path(p)
                    .ok_or_else(|| err(&format!("unknown path `{p}`")))?;
                out.add_term(idx, sign * coef);
            }
        }
        Ok(out)
    }

    /// Canonical text form, inverse to [`PathAlgebra::parse_element`].
    pub fn format_element<F: Field>(&self, x: &AlgebraElement<F>) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (&p, c)) in x.terms.iter().enumerate() {
            let name = self.path_name(p);
            let negative = prints_negative(c);
            let magnitude = if negative { -c.clone() } else { c.clone() };
            if k > 0 {
                out.push_str(if negative { " - " } else { " + " });
            } else if negative {
                out.push('-');
            }
            if magnitude.is_one() {
                out.push_str(&name);
            } else {
                out.push_str(&format!("{magnitude}*{name}"));
            }
        }
        out
    }
}

/// Element of a path algebra as a sparse combination of basis paths.
/// Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct AlgebraElement<F> {
    terms: BTreeMap<usize, F>,
}

impl<F: Field> AlgebraElement<F> {
    pub fn zero() -> Self {
        AlgebraElement {
            terms: BTreeMap::new(),
        }
    }

    pub fn basis(p: usize) -> Self {
        Self::term(p, F::one())
    }

    pub fn term(p: usize, c: F) -> Self {
        let mut x = Self::zero();
        x.add_term(p, c);
        x
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &F)> {
        self.terms.iter().map(|(&p, c)| (p, c))
    }

    pub fn coefficient(&self, p: usize) -> F {
        self.terms.get(&p).cloned().unwrap_or_else(F::zero)
    }

    pub fn add_term(&mut self, p: usize, c: F) {
        if c.is_zero() {
            return;
        }
        let sum = self.coefficient(p) + c;
        if sum.is_zero() {
            self.terms.remove(&p);
        } else {
            self.terms.insert(p, sum);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&p, c) in &other.terms {
            out.add_term(p, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .map(|(&p, x)| (p, x.clone() * c.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-F::one())
    }
}

impl<F: fmt::Debug> fmt::Debug for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(p, c)| format!("{c:?}*p{p}"))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_linear::{BigRational, Fp};

    type F5 = Fp<5>;

    fn a2() -> PathAlgebra {
        PathAlgebra::new(Quiver::linear(2))
    }

    #[test]
    fn rejects_cycles_and_duplicates() {
        let v = vec!["1".to_string(), "2".to_string()];
        let cyc = Quiver::new(
            v.clone(),
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("b".into(), "2".into(), "1".into()),
            ],
        );
        assert!(matches!(cyc, Err(AlgebraError::Cyclic(_))));
        let dup = Quiver::new(
            v.clone(),
            vec![
                ("a".into(), "1".into(), "2".into()),
                ("a".into(), "1".into(), "2".into()),
            ],
        );
        assert!(matches!(dup, Err(AlgebraError::DuplicateLabel(_))));
        let bad = Quiver::new(v, vec![("e_x".into(), "1".into(), "2".into())]);
        assert!(matches!(bad, Err(AlgebraError::InvalidLabel(_))));
    }

    #[test]
    fn idempotents() {
        let alg = a2();
        let e1 = AlgebraElement::<F5>::basis(alg.idempotent(0));
        let e2 = AlgebraElement::<F5>::basis(alg.idempotent(1));
        assert_eq!(alg.multiply(&e1, &e1), e1);
        assert!(alg.multiply(&e1, &e2).is_zero());
        assert!(alg.multiply(&e2, &e1).is_zero());
        let one = alg.one::<F5>();
        let a = alg.parse_element::<F5>("a1").unwrap();
        assert_eq!(alg.multiply(&one, &a), a);
        assert_eq!(alg.multiply(&a, &one), a);
    }

    #[test]
    fn target_idempotent_acts_on_the_left() {
        let alg = a2();
        let a = alg.parse_element::<F5>("a1").unwrap();
        let e1 = alg.parse_element::<F5>("e_1").unwrap();
        let e2 = alg.parse_element::<F5>("e_2").unwrap();
        assert_eq!(alg.multiply(&e2, &a), a);
        assert_eq!(alg.multiply(&a, &e1), a);
        assert!(alg.multiply(&a, &e2).is_zero());
        assert!(alg.multiply(&e1, &a).is_zero());
    }

    #[test]
    fn hom_projective_dimensions() {
        let triv = PathAlgebra::new(Quiver::trivial());
        assert_eq!(triv.hom_projectives::<F5>(0, 0).len(), 1);
        let alg = a2();
        assert_eq!(
            alg.hom_projectives::<F5>(0, 1),
            vec![alg.parse_element("a1").unwrap()]
        );
        assert!(alg.hom_projectives::<F5>(1, 0).is_empty());
        assert_eq!(alg.dimension(), 3);
    }

    #[test]
    fn path_order_is_breadth_first_by_label() {
        let q = Quiver::new(
            vec!["1".into(), "2".into(), "3".into()],
            vec![
                ("b".into(), "1".into(), "2".into()),
                ("a".into(), "1".into(), "2".into()),
                ("c".into(), "2".into(), "3".into()),
            ],
        )
        .unwrap();
        let alg = PathAlgebra::new(q);
        let names: Vec<String> = (0..alg.dimension()).map(|p| alg.path_name(p)).collect();
        assert_eq!(names, ["e_1", "a", "b", "c.a", "c.b", "e_2", "c", "e_3"]);
    }

    #[test]
    fn element_matrices() {
        let alg = a2();
        // P_1 = span{e_1}, P_2 = span{a1, e_2} in path order; x = a1 sends e_1 to a1.
        let a = alg.parse_element::<F5>("a1").unwrap();
        let m = alg.element_to_matrix(&a, 0, 1).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 1);
        assert_eq!(m.column(0), vec![F5::new(1), F5::new(0)]);
        let e2 = alg.parse_element::<F5>("e_2").unwrap();
        assert_eq!(
            alg.element_to_matrix(&e2, 1, 1).unwrap(),
            Matrix::identity(2)
        );
        let z = AlgebraElement::<F5>::zero();
        assert!(alg.element_to_matrix(&z, 1, 0).unwrap().is_zero());
        assert!(alg.element_to_matrix(&a, 1, 0).is_err());
    }

    #[test]
    fn element_matrices_are_functorial() {
        let alg = PathAlgebra::new(Quiver::linear(3));
        let n = alg.vertex_count();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for x in alg.hom_projectives::<F5>(j, k) {
                        for y in alg.hom_projectives::<F5>(i, j) {
                            let xy = alg.multiply(&x, &y);
                            let lhs = alg.element_to_matrix(&xy, i, k).unwrap();
                            let rhs = alg
                                .element_to_matrix(&x, j, k)
                                .unwrap()
                                .mul(&alg.element_to_matrix(&y, i, j).unwrap())
                                .unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn multiplication_is_associative() {
        let alg = PathAlgebra::new(Quiver::linear(4));
        let d = alg.dimension();
        for p in 0..d {
            for q in 0..d {
                for r in 0..d {
                    let x = AlgebraElement::<F5>::basis(p);
                    let y = AlgebraElement::basis(q);
                    let z = AlgebraElement::basis(r);
                    assert_eq!(
                        alg.multiply(&alg.multiply(&x, &y), &z),
                        alg.multiply(&x, &alg.multiply(&y, &z))
                    );
                }
            }
        }
    }

    #[test]
    fn formal_sums_round_trip() {
        let alg = PathAlgebra::new(Quiver::linear(3));
        let x = alg
            .parse_element::<F5>("2*a2.a1 + -1*a2.a1 - 3*a2.a1")
            .unwrap();
        assert_eq!(alg.format_element(&x), "3*a2.a1");
        assert_eq!(
            alg.parse_element::<F5>("0").unwrap(),
            AlgebraElement::zero()
        );
        let q = alg
            .parse_element::<BigRational>("1/2*e_1 - a1 + -2/3*a2.a1")
            .unwrap();
        let s = alg.format_element(&q);
        assert_eq!(s, "1/2*e_1 - a1 - 2/3*a2.a1");
        assert_eq!(alg.parse_element::<BigRational>(&s).unwrap(), q);
        assert!(alg.parse_element::<F5>("2*zz").is_err());
        assert!(alg.parse_element::<F5>("3").is_err());
    }
}
