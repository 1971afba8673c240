use std::collections::{BTreeMap, HashMap, VecDeque};

use super::IndexSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SphereError {
    #[error("no triangles")]
    Empty,
    #[error("triangle {triangle} refers to vertex {vertex} but there are only {m} vertices")]
    VertexOutOfRange { triangle: usize, vertex: usize, m: usize },
    #[error("triangle {0} repeats a vertex")]
    DegenerateTriangle(usize),
    #[error("triangle {} appears more than once", IndexSet(.0))]
    DuplicateTriangle([usize; 3]),
    #[error("vertex {0} lies in no triangle")]
    UnusedVertex(usize),
    #[error("wall {} lies in {count} triangle(s), expected 2", IndexSet(.wall))]
    WallNotInTwoTriangles { wall: [usize; 2], count: usize },
    #[error("link of vertex {0} is not a single cycle")]
    LinkNotCycle(usize),
    #[error("complex is not connected")]
    Disconnected,
    #[error("Euler characteristic is {0}, expected 2")]
    EulerCharacteristic(i64),
    #[error("complex is not orientable")]
    NonOrientable,
}

/// A simplicial 2-sphere on the vertex set `0..m`, with a fixed global orientation.
///
/// Triangles are stored oriented and rotated so that the smallest vertex comes first.
/// Adjacent triangles induce opposite directions on their common wall.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSphere2 {
    m: usize,
    triangles: Vec<[usize; 3]>,
    walls: Vec<[usize; 2]>,
    index: HashMap<[usize; 3], usize>,
    links: Vec<Vec<usize>>,
}

fn sorted3(t: [usize; 3]) -> [usize; 3] {
    let mut s = t;
    s.sort_unstable();
    s
}

fn sorted2(a: usize, b: usize) -> [usize; 2] {
    if a < b { [a, b] } else { [b, a] }
}

fn rotate_min_first(t: [usize; 3]) -> [usize; 3] {
    let k = (0..3).min_by_key(|&k| t[k]).unwrap();
    [t[k], t[(k + 1) % 3], t[(k + 2) % 3]]
}

/// Sign of the permutation taking `reference` to `t` (both orderings of the same set).
fn permutation_sign(reference: [usize; 3], t: [usize; 3]) -> i8 {
    let r = rotate_min_first(t);
    let s = rotate_min_first(reference);
    if r == s { 1 } else { -1 }
}

impl SimplicialSphere2 {
    /// Validates `triangles` as a simplicial 2-sphere on `0..m`.
    ///
    /// The orientation of the first triangle is kept and propagated, so a consistently
    /// oriented input comes back unchanged up to rotation and ordering.
    pub fn new(m: usize, triangles: &[[usize; 3]]) -> Result<Self, SphereError> {
        if triangles.is_empty() {
            return Err(SphereError::Empty);
        }
        let mut used = vec![false; m];
        let mut seen = HashMap::new();
        for (k, t) in triangles.iter().enumerate() {
            for &v in t {
                if v >= m {
                    return Err(SphereError::VertexOutOfRange { triangle: k, vertex: v, m });
                }
                used[v] = true;
            }
            if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return Err(SphereError::DegenerateTriangle(k));
            }
            if seen.insert(sorted3(*t), k).is_some() {
                return Err(SphereError::DuplicateTriangle(sorted3(*t)));
            }
        }
        if let Some(v) = used.iter().position(|u| !u) {
            return Err(SphereError::UnusedVertex(v));
        }

        // wall -> triangles containing it
        let mut wall_map: BTreeMap<[usize; 2], Vec<usize>> = BTreeMap::new();
        for (k, t) in triangles.iter().enumerate() {
            for e in 0..3 {
                wall_map.entry(sorted2(t[e], t[(e + 1) % 3])).or_default().push(k);
            }
        }
        for (wall, ts) in &wall_map {
            if ts.len() != 2 {
                return Err(SphereError::WallNotInTwoTriangles { wall: *wall, count: ts.len() });
            }
        }

        // unoriented link check: each link is a graph of degree 2, it must be connected
        let mut link_adj: Vec<HashMap<usize, Vec<usize>>> = vec![HashMap::new(); m];
        for t in triangles {
            for r in 0..3 {
                let (v, a, b) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
                link_adj[v].entry(a).or_default().push(b);
                link_adj[v].entry(b).or_default().push(a);
            }
        }
        for (v, adj) in link_adj.iter().enumerate() {
            let start = *adj.keys().min().unwrap();
            let (mut prev, mut cur, mut len) = (usize::MAX, start, 0);
            loop {
                let nbrs = &adj[&cur];
                let next = if nbrs[0] != prev { nbrs[0] } else { nbrs[1] };
                prev = cur;
                cur = next;
                len += 1;
                if cur == start || len > adj.len() {
                    break;
                }
            }
            if len != adj.len() || adj.len() < 3 {
                return Err(SphereError::LinkNotCycle(v));
            }
        }

        // connectivity and orientation propagation over the dual graph
        let mut oriented: Vec<Option<[usize; 3]>> = vec![None; triangles.len()];
        oriented[0] = Some(triangles[0]);
        let mut queue = VecDeque::from([0usize]);
        let mut reached = 1;
        while let Some(k) = queue.pop_front() {
            let t = oriented[k].unwrap();
            for e in 0..3 {
                let (a, b) = (t[e], t[(e + 1) % 3]);
                let ts = &wall_map[&sorted2(a, b)];
                let other = if ts[0] == k { ts[1] } else { ts[0] };
                // the neighbour must run b -> a
                let o = triangles[other];
                let third = o.iter().copied().find(|&x| x != a && x != b).unwrap();
                let want = [b, a, third];
                match oriented[other] {
                    None => {
                        oriented[other] = Some(want);
                        reached += 1;
                        queue.push_back(other);
                    }
                    Some(existing) => {
                        if permutation_sign(existing, want) != 1 {
                            return Err(SphereError::NonOrientable);
                        }
                    }
                }
            }
        }
        if reached != triangles.len() {
            return Err(SphereError::Disconnected);
        }

        let mut tris: Vec<[usize; 3]> =
            oriented.into_iter().map(|t| rotate_min_first(t.unwrap())).collect();
        tris.sort_unstable();
        let index = tris.iter().enumerate().map(|(k, t)| (sorted3(*t), k)).collect();
        let walls: Vec<[usize; 2]> = wall_map.keys().copied().collect();

        // links: in an oriented triangle (v, a, b) the link of v contains a -> b
        let mut succ: Vec<HashMap<usize, usize>> = vec![HashMap::new(); m];
        for t in &tris {
            for r in 0..3 {
                let (v, a, b) = (t[r], t[(r + 1) % 3], t[(r + 2) % 3]);
                succ[v].insert(a, b);
            }
        }
        let mut links = Vec::with_capacity(m);
        for (v, s) in succ.iter().enumerate() {
            let start = *s.keys().min().unwrap();
            let mut cycle = vec![start];
            let mut cur = start;
            loop {
                let next = *s.get(&cur).ok_or(SphereError::LinkNotCycle(v))?;
                if next == start {
                    break;
                }
                if cycle.len() > s.len() {
                    return Err(SphereError::LinkNotCycle(v));
                }
                cycle.push(next);
                cur = next;
            }
            if cycle.len() != s.len() || cycle.len() < 3 {
                return Err(SphereError::LinkNotCycle(v));
            }
            links.push(cycle);
        }

        let chi = m as i64 - walls.len() as i64 + tris.len() as i64;
        if chi != 2 {
            return Err(SphereError::EulerCharacteristic(chi));
        }

        Ok(SimplicialSphere2 { m, triangles: tris, walls, index, links })
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    /// Oriented triangles, each rotated to start at its smallest vertex, in lexicographic order.
    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    /// Walls (edges of the sphere) as sorted pairs in lexicographic order.
    pub fn walls(&self) -> &[[usize; 2]] {
        &self.walls
    }

    /// `(f0, f1, f2)`.
    pub fn f_vector(&self) -> (usize, usize, usize) {
        (self.m, self.walls.len(), self.triangles.len())
    }

    pub fn contains_triangle(&self, i: usize, j: usize, k: usize) -> bool {
        self.index.contains_key(&sorted3([i, j, k]))
    }

    pub fn contains_wall(&self, i: usize, j: usize) -> bool {
        i != j && i < self.m && j < self.m && self.links[i].contains(&j)
    }

    /// `+1` if `(i, j, k)` is a positively oriented triangle, `-1` if negatively
    /// oriented, `0` if `{i, j, k}` is not a triangle.
    pub fn orientation(&self, i: usize, j: usize, k: usize) -> i8 {
        match self.index.get(&sorted3([i, j, k])) {
            Some(&t) => permutation_sign(self.triangles[t], [i, j, k]),
            None => 0,
        }
    }

    /// Neighbours of `v` in cyclic order compatible with the orientation.
    pub fn link(&self, v: usize) -> &[usize] {
        &self.links[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.links[v].len()
    }

    /// The two vertices completing the wall `{i, j}` to a triangle: the first one
    /// closes the positively oriented triangle `(i, j, x)`, the second `(j, i, y)`.
    pub fn apexes(&self, i: usize, j: usize) -> Option<(usize, usize)> {
        let link = &self.links[i];
        let pos = link.iter().position(|&x| x == j)?;
        // in the link of i, successor of j is x with (i, j, x) positive
        let x = link[(pos + 1) % link.len()];
        let y = link[(pos + link.len() - 1) % link.len()];
        Some((x, y))
    }

    /// h-vector `(h0, h1, h2, h3)` from the f-vector.
    pub fn h_vector(&self) -> [i64; 4] {
        let (f0, f1, f2) = self.f_vector();
        let (f0, f1, f2) = (f0 as i64, f1 as i64, f2 as i64);
        [1, f0 - 3, f1 - 2 * f0 + 3, f2 - f1 + f0 - 1]
    }

    /// Ranks of `H^0, H^2, H^4, H^6` of any toric space over this sphere: the h-vector.
    pub fn betti_numbers(&self) -> [i64; 4] {
        self.h_vector()
    }

    /// Sphere with every triangle orientation reversed.
    pub fn reversed(&self) -> SimplicialSphere2 {
        let flipped: Vec<[usize; 3]> = self.triangles.iter().map(|t| [t[0], t[2], t[1]]).collect();
        SimplicialSphere2::new(self.m, &flipped).expect("reversal preserves validity")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tetra() -> SimplicialSphere2 {
        SimplicialSphere2::new(4, &[[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]]).unwrap()
    }

    fn octahedron() -> SimplicialSphere2 {
        // vertices 0/1 = +-x, 2/3 = +-y, 4/5 = +-z
        let mut tris = Vec::new();
        for &x in &[0, 1] {
            for &y in &[2, 3] {
                for &z in &[4, 5] {
                    let parity = (x + (y - 2) + (z - 4)) % 2;
                    tris.push(if parity == 0 { [x, y, z] } else { [x, z, y] });
                }
            }
        }
        SimplicialSphere2::new(6, &tris).unwrap()
    }

    #[test]
    fn boundary_of_simplex() {
        let s = tetra();
        assert_eq!(s.f_vector(), (4, 6, 4));
        assert_eq!(s.betti_numbers(), [1, 1, 1, 1]);
        for v in 0..4 {
            assert_eq!(s.degree(v), 3);
        }
    }

    #[test]
    fn octahedron_counts() {
        let s = octahedron();
        assert_eq!(s.f_vector(), (6, 12, 8));
        assert_eq!(s.betti_numbers(), [1, 3, 3, 1]);
        assert!(!s.contains_wall(0, 1));
        assert!(s.contains_wall(0, 2));
    }

    #[test]
    fn orientation_is_consistent_across_walls() {
        let s = octahedron();
        for w in s.walls() {
            let (x, y) = s.apexes(w[0], w[1]).unwrap();
            assert_eq!(s.orientation(w[0], w[1], x), 1);
            assert_eq!(s.orientation(w[1], w[0], y), 1);
            assert_eq!(s.orientation(w[0], w[1], y), -1);
        }
    }

    #[test]
    fn inconsistent_input_orientation_is_repaired() {
        let s = SimplicialSphere2::new(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]).unwrap();
        assert_eq!(s.orientation(0, 1, 2), 1);
        assert_eq!(s.orientation(0, 3, 1), 1);
    }

    #[test]
    fn missing_triangle_is_rejected() {
        let err = SimplicialSphere2::new(4, &[[0, 1, 2], [0, 1, 3], [0, 2, 3]]).unwrap_err();
        assert!(matches!(err, SphereError::WallNotInTwoTriangles { count: 1, .. }));
    }

    #[test]
    fn duplicate_triangle_is_rejected() {
        let err = SimplicialSphere2::new(4, &[[0, 1, 2], [0, 2, 1], [0, 2, 3], [1, 2, 3]])
            .unwrap_err();
        assert_eq!(err, SphereError::DuplicateTriangle([0, 1, 2]));
    }

    #[test]
    fn two_disjoint_spheres_are_rejected() {
        let mut tris = vec![[0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2]];
        tris.extend([[4, 5, 6], [4, 7, 5], [4, 6, 7], [5, 7, 6]]);
        let err = SimplicialSphere2::new(8, &tris).unwrap_err();
        assert_eq!(err, SphereError::Disconnected);
    }

    #[test]
    fn pinched_vertex_is_rejected() {
        // two tetrahedra boundaries glued at vertex 0
        let tris = vec![
            [0, 1, 2], [0, 3, 1], [0, 2, 3], [1, 3, 2],
            [0, 4, 5], [0, 6, 4], [0, 5, 6], [4, 6, 5],
        ];
        let err = SimplicialSphere2::new(7, &tris).unwrap_err();
        assert_eq!(err, SphereError::LinkNotCycle(0));
    }
}
