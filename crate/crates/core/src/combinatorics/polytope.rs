use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt::Write as _;

use super::{content_lines, header, parse_count, split_record, ParseError, SimplicialSphere2};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolytopeError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("polytope has no facets")]
    NoFacets,
    #[error("facet {0} has fewer than 3 vertices")]
    ShortFacet(usize),
    #[error("facet {facet} repeats vertex {vertex}")]
    RepeatedVertex { facet: usize, vertex: usize },
    #[error("vertex ids are not contiguous: vertex {0} is missing")]
    MissingVertex(usize),
    #[error("vertex {vertex} lies in {count} facets")]
    NotSimple { vertex: usize, count: usize },
    #[error("edge {{{0},{1}}} lies in {2} facet(s), expected 2")]
    EdgeMultiplicity(usize, usize, usize),
    #[error("facets {0} and {1} share more than one edge")]
    MultiAdjacent(usize, usize),
    #[error("facet {0} is adjacent to itself")]
    SelfAdjacent(usize),
    #[error("facet cycles cannot be oriented consistently")]
    NonOrientable,
    #[error("facet adjacency graph is disconnected")]
    Disconnected,
    #[error("Euler characteristic v - e + f = {0}, expected 2")]
    Euler(i64),
    #[error("dual complex is not a sphere: {0}")]
    DualNotSphere(#[from] super::SphereError),
}

/// Number of facets by cycle length.
pub type FaceHistogram = BTreeMap<usize, usize>;

/// A combinatorial simple 3-polytope given by the vertex cycles of its facets.
///
/// Facet cycles are normalized to a single global orientation: the first facet keeps
/// the direction it was given in, which is taken to be counterclockwise seen from
/// outside, and every other facet runs each shared edge in the opposite direction to
/// its neighbour.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePolytope3 {
    name: String,
    facets: Vec<Vec<usize>>,
    vertex_count: usize,
    edge_count: usize,
}

impl SimplePolytope3 {
    pub fn new(name: impl Into<String>, facets: Vec<Vec<usize>>) -> Result<Self, PolytopeError> {
        let m = facets.len();
        if m == 0 {
            return Err(PolytopeError::NoFacets);
        }
        let mut vertex_facets: BTreeMap<usize, usize> = BTreeMap::new();
        for (f, cycle) in facets.iter().enumerate() {
            if cycle.len() < 3 {
                return Err(PolytopeError::ShortFacet(f));
            }
            let mut sorted = cycle.clone();
            sorted.sort_unstable();
            if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
                return Err(PolytopeError::RepeatedVertex { facet: f, vertex: w[0] });
            }
            for &v in cycle {
                *vertex_facets.entry(v).or_default() += 1;
            }
        }
        let vertex_count = vertex_facets.keys().next_back().map_or(0, |v| v + 1);
        for v in 0..vertex_count {
            match vertex_facets.get(&v) {
                None => return Err(PolytopeError::MissingVertex(v)),
                Some(&3) => {}
                Some(&count) => return Err(PolytopeError::NotSimple { vertex: v, count }),
            }
        }

        // undirected edge -> list of (facet, runs forward as min -> max)
        let mut edges: BTreeMap<(usize, usize), Vec<(usize, bool)>> = BTreeMap::new();
        for (f, cycle) in facets.iter().enumerate() {
            for k in 0..cycle.len() {
                let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
                edges.entry((a.min(b), a.max(b))).or_default().push((f, a < b));
            }
        }
        let mut adjacency: Vec<Vec<(usize, bool)>> = vec![Vec::new(); m];
        let mut pairs: HashMap<(usize, usize), usize> = HashMap::new();
        for (&(a, b), uses) in &edges {
            if uses.len() != 2 {
                return Err(PolytopeError::EdgeMultiplicity(a, b, uses.len()));
            }
            let ((f, df), (g, dg)) = (uses[0], uses[1]);
            if f == g {
                return Err(PolytopeError::SelfAdjacent(f));
            }
            let count = pairs.entry((f.min(g), f.max(g))).or_default();
            *count += 1;
            if *count > 1 {
                return Err(PolytopeError::MultiAdjacent(f.min(g), f.max(g)));
            }
            // neighbours need opposite traversal; `same` records whether they currently agree
            let same = df == dg;
            adjacency[f].push((g, same));
            adjacency[g].push((f, same));
        }

        // orientation: flip[f] says whether facet f must be reversed
        let mut flip: Vec<Option<bool>> = vec![None; m];
        flip[0] = Some(false);
        let mut queue = VecDeque::from([0]);
        let mut reached = 1;
        while let Some(f) = queue.pop_front() {
            let ff = flip[f].unwrap();
            for &(g, same) in &adjacency[f] {
                let want = ff ^ same;
                match flip[g] {
                    None => {
                        flip[g] = Some(want);
                        reached += 1;
                        queue.push_back(g);
                    }
                    Some(x) if x != want => return Err(PolytopeError::NonOrientable),
                    Some(_) => {}
                }
            }
        }
        if reached != m {
            return Err(PolytopeError::Disconnected);
        }

        let edge_count = edges.len();
        let chi = vertex_count as i64 - edge_count as i64 + m as i64;
        if chi != 2 {
            return Err(PolytopeError::Euler(chi));
        }

        let facets = facets
            .into_iter()
            .zip(flip)
            .map(|(cycle, fl)| {
                if fl.unwrap() {
                    // reverse keeping the first vertex in place
                    let mut r = vec![cycle[0]];
                    r.extend(cycle[1..].iter().rev());
                    r
                } else {
                    cycle
                }
            })
            .collect();
        let polytope = SimplePolytope3 { name: name.into(), facets, vertex_count, edge_count };
        polytope.dual_sphere_checked()?;
        Ok(polytope)
    }

    /// Parses and validates a POLY3 document.
    pub fn parse(text: &str) -> Result<Self, PolytopeError> {
        let mut lines = content_lines(text);
        let (_, name) = header(lines.next(), "poly3")?;
        let (no, count) = header(lines.next(), "facets")?;
        let m = parse_count(no, count)?;
        let mut facets = Vec::with_capacity(m);
        for expected in 0..m {
            let (no, line) = lines
                .next()
                .ok_or_else(|| ParseError::new(no, format!("expected {m} facet lines")))?;
            let (id, rest) = split_record(no, line, "F")?;
            if id != Some(expected) {
                return Err(ParseError::new(no, format!("expected facet id {expected}")).into());
            }
            let cycle = rest
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|_| ParseError::new(no, format!("bad vertex id `{tok}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            facets.push(cycle);
        }
        if let Some((no, _)) = lines.next() {
            return Err(ParseError::new(no, "trailing content after facet list").into());
        }
        SimplePolytope3::new(name, facets)
    }

    /// POLY3 serialization of the normalized polytope.
    pub fn to_poly3(&self) -> String {
        let mut out = format!("poly3 {}\nfacets {}\n", self.name, self.facets.len());
        for (f, cycle) in self.facets.iter().enumerate() {
            let _ = write!(out, "F {f}:");
            for v in cycle {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn facet_count(&self) -> usize {
        self.facets.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// `(v, e, f)`.
    pub fn f_vector(&self) -> (usize, usize, usize) {
        (self.vertex_count, self.edge_count, self.facets.len())
    }

    pub fn face_histogram(&self) -> FaceHistogram {
        let mut h = FaceHistogram::new();
        for cycle in &self.facets {
            *h.entry(cycle.len()).or_default() += 1;
        }
        h
    }

    pub fn is_fullerene(&self) -> bool {
        self.facets.iter().all(|c| c.len() == 5 || c.len() == 6)
    }

    pub fn min_face_size(&self) -> usize {
        self.facets.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// The dual simplicial sphere: vertex `i` is facet `i`, and every polytope vertex
    /// contributes the triangle of the three facets meeting there.
    ///
    /// With facets counterclockwise seen from outside, the triangle at a vertex is
    /// oriented so that for an actual Delzant realization the outward normals
    /// `(λ(i), λ(j), λ(k))` of a positively oriented triangle have determinant `+1`.
    pub fn dual_sphere(&self) -> SimplicialSphere2 {
        self.dual_sphere_checked().expect("validated polytope has a dual sphere")
    }

    fn dual_sphere_checked(&self) -> Result<SimplicialSphere2, PolytopeError> {
        // directed edge (a -> b) -> facet traversing it
        let mut owner: HashMap<(usize, usize), usize> = HashMap::new();
        // vertex -> facets containing it with the successor of the vertex in that facet
        let mut around: Vec<Vec<(usize, usize)>> = vec![Vec::new(); self.vertex_count];
        for (f, cycle) in self.facets.iter().enumerate() {
            for k in 0..cycle.len() {
                let (a, b) = (cycle[k], cycle[(k + 1) % cycle.len()]);
                owner.insert((a, b), f);
                around[a].push((f, b));
            }
        }
        let mut triangles = Vec::with_capacity(self.vertex_count);
        for (v, facets) in around.iter().enumerate() {
            let (f, succ) = facets[0];
            // the facet across the outgoing edge of v in f is the next one around v
            let g = owner[&(succ, v)];
            let succ_g = facets.iter().find(|(x, _)| *x == g).map(|(_, s)| *s).unwrap();
            let h = owner[&(succ_g, v)];
            triangles.push([f, h, g]);
        }
        Ok(SimplicialSphere2::new(self.facets.len(), &triangles)?)
    }
}
