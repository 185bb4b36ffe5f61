use std::collections::{HashMap, VecDeque};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::small::Kernel;
use super::Distance;
use crate::arith::is_prime;
use crate::error::{Error, Result};
use crate::field::{Field, PrimeField};
use crate::matrix::Matrix;

/// Resource limits for exhaustive runs. Exceeding them is a refusal, never an
/// approximation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Ceiling on `p^{n²}`, the number of matrices enumerated.
    pub max_matrices: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_matrices: 1 << 20 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSummary {
    /// Smallest vertex index in the component.
    pub first_vertex: u32,
    pub vertex_count: u64,
    pub class_count: usize,
    pub clique: bool,
    pub diameter: u32,
}

/// Exact structure of `Γ(F_p, n)`.
///
/// `wall_time` is not serialized so the JSON form is identical across runs and
/// thread counts.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CommutingGraphSummary {
    pub p: u64,
    pub n: usize,
    pub vertex_count: u64,
    pub class_count: usize,
    pub component_count: usize,
    pub all_components_cliques: bool,
    pub diameter: Distance,
    pub components: Vec<ComponentSummary>,
    #[serde(skip)]
    pub wall_time: f64,
}

/// One commutant class: nonscalar matrices sharing a commutant subspace.
/// Members of a class commute with each other and have identical neighbourhoods.
#[derive(Clone, Debug)]
struct Class {
    first_vertex: u32,
    size: u64,
    key: Vec<u32>,
}

/// `Γ(F_p, n)` quotiented by the commutant-class relation.
#[derive(Clone, Debug)]
pub struct CommutingGraph {
    p: u64,
    n: usize,
    kernel: Kernel,
    class_of: Vec<u32>,
    classes: Vec<Class>,
    adjacency: Vec<Vec<u32>>,
    component_of: Vec<u32>,
    component_count: usize,
}

const SCALAR: u32 = u32::MAX;

impl CommutingGraph {
    pub fn build(p: u64, n: usize, budget: Budget) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidArgument(format!("{p} is not prime")));
        }
        if n < 2 {
            return Err(Error::InvalidArgument("the commuting graph needs n ≥ 2".into()));
        }
        let total = (p as u128).checked_pow((n * n) as u32).filter(|&t| t <= budget.max_matrices as u128);
        let Some(total) = total else {
            return Err(Error::BudgetExceeded(format!(
                "Γ(F_{p},{n}) has {p}^{} matrices, above the ceiling of {}",
                n * n,
                budget.max_matrices
            )));
        };
        let total = total as u32;
        let kernel = Kernel::new(p as u32, n);

        let keys: Vec<Option<Vec<u32>>> =
            (0..total).into_par_iter().map(|v| (!kernel.is_scalar(v)).then(|| kernel.commutant_key(v))).collect();

        let mut class_of = vec![SCALAR; total as usize];
        let mut classes: Vec<Class> = Vec::new();
        let mut lookup: HashMap<Vec<u32>, u32> = HashMap::new();
        for (v, key) in keys.into_iter().enumerate() {
            let Some(key) = key else { continue };
            let id = *lookup.entry(key.clone()).or_insert_with(|| {
                classes.push(Class { first_vertex: v as u32, size: 0, key });
                (classes.len() - 1) as u32
            });
            classes[id as usize].size += 1;
            class_of[v] = id;
        }

        let adjacency: Vec<Vec<u32>> = classes
            .par_iter()
            .enumerate()
            .map(|(id, c)| {
                let mut nbrs = Vec::new();
                kernel.for_each_in_span(&c.key, |w| {
                    let cw = class_of[w as usize];
                    if cw != SCALAR && cw as usize != id {
                        nbrs.push(cw);
                    }
                });
                nbrs.sort_unstable();
                nbrs.dedup();
                nbrs
            })
            .collect();

        let mut component_of = vec![u32::MAX; classes.len()];
        let mut component_count = 0;
        for start in 0..classes.len() {
            if component_of[start] != u32::MAX {
                continue;
            }
            let mut queue = VecDeque::from([start]);
            component_of[start] = component_count;
            while let Some(c) = queue.pop_front() {
                for &d in &adjacency[c] {
                    if component_of[d as usize] == u32::MAX {
                        component_of[d as usize] = component_count;
                        queue.push_back(d as usize);
                    }
                }
            }
            component_count += 1;
        }

        Ok(CommutingGraph {
            p,
            n,
            kernel,
            class_of,
            classes,
            adjacency,
            component_of,
            component_count: component_count as usize,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> u64 {
        self.classes.iter().map(|c| c.size).sum()
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn component_count(&self) -> usize {
        self.component_count
    }

    /// All nonscalar matrices in enumeration order, as vertex indices.
    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.class_of.len() as u32).filter(|&v| self.class_of[v as usize] != SCALAR)
    }

    pub fn class_of(&self, v: u32) -> Option<usize> {
        self.class_of.get(v as usize).copied().filter(|&c| c != SCALAR).map(|c| c as usize)
    }

    pub fn commute(&self, a: u32, b: u32) -> bool {
        self.kernel.commute(a, b)
    }

    /// BFS distances in the class graph from one class.
    pub fn class_distances_from(&self, source: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.classes.len()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(c) = queue.pop_front() {
            let d = dist[c].unwrap();
            for &e in &self.adjacency[c] {
                if dist[e as usize].is_none() {
                    dist[e as usize] = Some(d + 1);
                    queue.push_back(e as usize);
                }
            }
        }
        dist
    }

    /// Exact commuting distance between two vertex indices.
    pub fn distance(&self, a: u32, b: u32) -> Result<Distance> {
        let ca = self.class_of(a).ok_or(Error::ScalarInput)?;
        let cb = self.class_of(b).ok_or(Error::ScalarInput)?;
        Ok(self.distance_between_classes(a, b, ca, cb, &self.class_distances_from(ca)))
    }

    /// Distance given precomputed class distances from `class_of(a)`.
    pub fn distance_between_classes(&self, a: u32, b: u32, ca: usize, cb: usize, from_a: &[Option<u32>]) -> Distance {
        if a == b {
            Distance::Finite(0)
        } else if ca == cb {
            Distance::Finite(1)
        } else {
            from_a[cb].map_or(Distance::Infinite, Distance::Finite)
        }
    }

    pub fn vertex_index(&self, m: &Matrix<PrimeField>) -> Result<u32> {
        if m.field().modulus() != self.p || m.n() != self.n {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} over {} is not a vertex of Γ(F_{},{})",
                m.n(),
                m.n(),
                m.field().descriptor(),
                self.p,
                self.n
            )));
        }
        Ok(m.entries().iter().fold(0u64, |acc, &x| acc * self.p + x) as u32)
    }

    pub fn vertex_matrix(&self, v: u32) -> Matrix<PrimeField> {
        let f = PrimeField::new(self.p).expect("prime");
        let nn = self.n * self.n;
        let mut digits = vec![0u64; nn];
        let mut x = v as u64;
        for k in (0..nn).rev() {
            digits[k] = x % self.p;
            x /= self.p;
        }
        Matrix::from_vec(f, self.n, digits).expect("n*n digits")
    }

    /// Per-class eccentricity within its component (class-graph distances).
    pub fn class_eccentricities(&self) -> Vec<u32> {
        let count = self.classes.len();
        let mut offsets = Vec::with_capacity(count + 1);
        offsets.push(0usize);
        for a in &self.adjacency {
            offsets.push(offsets.last().unwrap() + a.len());
        }
        let targets: Vec<u32> = self.adjacency.iter().flatten().copied().collect();
        (0..count)
            .into_par_iter()
            .map_init(
                || (vec![u16::MAX; count], Vec::with_capacity(count)),
                |(dist, queue), source| {
                    dist.fill(u16::MAX);
                    queue.clear();
                    dist[source] = 0;
                    queue.push(source as u32);
                    let mut head = 0;
                    let mut ecc = 0u16;
                    while head < queue.len() {
                        let c = queue[head] as usize;
                        head += 1;
                        let d = dist[c];
                        ecc = d;
                        for &e in &targets[offsets[c]..offsets[c + 1]] {
                            if dist[e as usize] == u16::MAX {
                                dist[e as usize] = d + 1;
                                queue.push(e);
                            }
                        }
                    }
                    ecc as u32
                },
            )
            .collect()
    }

    pub fn summary(&self) -> CommutingGraphSummary {
        let ecc = self.class_eccentricities();
        let mut components: Vec<ComponentSummary> = Vec::with_capacity(self.component_count);
        for (c, class) in self.classes.iter().enumerate() {
            let k = self.component_of[c] as usize;
            if k == components.len() {
                components.push(ComponentSummary {
                    first_vertex: class.first_vertex,
                    vertex_count: 0,
                    class_count: 0,
                    clique: true,
                    diameter: 0,
                });
            }
            let comp = &mut components[k];
            comp.vertex_count += class.size;
            comp.class_count += 1;
            // distinct members of one class are adjacent, so every vertex pair
            // is at distance max(1, class distance)
            comp.diameter = comp.diameter.max(ecc[c]).max(1);
            comp.clique &= ecc[c] <= 1;
        }
        let diameter =
            if self.component_count == 1 { Distance::Finite(components[0].diameter) } else { Distance::Infinite };
        CommutingGraphSummary {
            p: self.p,
            n: self.n,
            vertex_count: self.vertex_count(),
            class_count: self.classes.len(),
            component_count: self.component_count,
            all_components_cliques: components.iter().all(|c| c.clique),
            diameter,
            components,
            wall_time: 0.0,
        }
    }
}

/// Exhaustive connectivity, clique structure and diameter of `Γ(F_p, n)`.
pub fn ff_graph_summary(p: u64, n: usize, budget: Budget) -> Result<CommutingGraphSummary> {
    let start = Instant::now();
    let graph = CommutingGraph::build(p, n, budget)?;
    let mut summary = graph.summary();
    summary.wall_time = start.elapsed().as_secs_f64();
    Ok(summary)
}

/// Exact commuting distance of two nonscalar matrices over F_p.
pub fn ff_distance(a: &Matrix<PrimeField>, b: &Matrix<PrimeField>) -> Result<Distance> {
    ff_distance_with_budget(a, b, Budget::default())
}

pub fn ff_distance_with_budget(a: &Matrix<PrimeField>, b: &Matrix<PrimeField>, budget: Budget) -> Result<Distance> {
    if a.field() != b.field() || a.n() != b.n() {
        return Err(Error::ShapeMismatch("matrices must share field and size".into()));
    }
    if a.is_scalar() || b.is_scalar() {
        return Err(Error::ScalarInput);
    }
    let g = CommutingGraph::build(a.field().modulus(), a.n(), budget)?;
    g.distance(g.vertex_index(a)?, g.vertex_index(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn budget_refusal() {
        assert!(matches!(ff_graph_summary(2, 5, Budget::default()), Err(Error::BudgetExceeded(_))));
        assert!(matches!(ff_graph_summary(2, 15, Budget::default()), Err(Error::BudgetExceeded(_))));
        assert!(matches!(ff_graph_summary(4, 2, Budget::default()), Err(Error::InvalidArgument(_))));
        assert!(matches!(ff_graph_summary(2, 1, Budget::default()), Err(Error::InvalidArgument(_))));
        let tight = Budget { max_matrices: 15 };
        assert!(matches!(ff_graph_summary(2, 2, tight), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn gamma_f2_2() {
        let s = ff_graph_summary(2, 2, Budget::default()).unwrap();
        assert_eq!(s.vertex_count, 14);
        assert_eq!(s.component_count, 7);
        assert!(s.all_components_cliques);
        assert!(s.components.iter().all(|c| c.vertex_count == 2 && c.diameter == 1));
        assert_eq!(s.diameter, Distance::Infinite);
    }

    #[test]
    fn distance_basics() {
        let f = PrimeField::new(3).unwrap();
        let a = Matrix::from_i64_rows(f, &[&[0, 1, 0], &[0, 0, 1], &[1, 2, 0]]).unwrap();
        assert_eq!(ff_distance(&a, &a).unwrap(), Distance::Finite(0));
        let a2 = a.mul(&a);
        assert!(!a2.is_scalar());
        assert_eq!(ff_distance(&a, &a2).unwrap(), Distance::Finite(1));
        assert!(matches!(ff_distance(&a, &Matrix::identity(f, 3)), Err(Error::ScalarInput)));
    }
}
