//! Graph states, local complementation and single-qubit Clifford frames.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{check_cap, Error, Result};
use crate::pauli::{PauliElement, PauliLetter};
use crate::subgroup::StabiliserGroup;
use crate::triples::AvnTriple;

/// Default vertex cap for [`Graph::lc_orbit`].
pub const DEFAULT_ORBIT_CAP: usize = 8;
const MAX_VERTICES: usize = 64;

/// Simple undirected graph on vertices `0..n`, one adjacency bitset per vertex.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "at most {MAX_VERTICES} vertices");
        Graph { n, adj: vec![0; n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::SizeCap {
                what: "vertex count",
                value: n,
                cap: MAX_VERTICES,
            });
        }
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.toggle_edge(u, v);
            }
        }
        g
    }

    pub fn star(n: usize, center: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in (0..n).filter(|&v| v != center) {
            g.toggle_edge(center, v);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.toggle_edge(v - 1, v);
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::path(n);
        if n > 2 {
            g.toggle_edge(n - 1, 0);
        }
        g
    }

    /// Graph whose edge set is given by the bits of `mask` over the pairs
    /// `(u, v)`, `u < v`, in lexicographic order.
    pub fn from_edge_mask(n: usize, mask: u64) -> Self {
        let mut g = Graph::empty(n);
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                if (mask >> bit) & 1 == 1 {
                    g.toggle_edge(u, v);
                }
                bit += 1;
            }
        }
        g
    }

    pub fn num_vertices(&self) -> usize {
        self.n
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::Parse(format!("loop at vertex {u}")));
        }
        self.adj[u] |= 1 << v;
        self.adj[v] |= 1 << u;
        Ok(())
    }

    fn toggle_edge(&mut self, u: usize, v: usize) {
        self.adj[u] ^= 1 << v;
        self.adj[v] ^= 1 << u;
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && (self.adj[u] >> v) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.adj[v];
        (0..self.n).filter(move |&u| (row >> u) & 1 == 1)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| {
                self.neighbors(u)
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    /// Subgraph induced by `vertices`, relabelled `0..k` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len());
        for (i, &a) in vertices.iter().enumerate() {
            for (j, &b) in vertices.iter().enumerate().skip(i + 1) {
                if self.has_edge(a, b) {
                    g.toggle_edge(i, j);
                }
            }
        }
        g
    }

    /// Stabiliser generators `g^(u)`: `X` at `u`, `Z` on its neighbours.
    pub fn generators(&self) -> Vec<PauliElement> {
        (0..self.n)
            .map(|u| {
                let mut p = PauliElement::identity(self.n);
                p.set_letter(u, PauliLetter::X);
                for v in self.neighbors(u) {
                    p.set_letter(v, PauliLetter::Z);
                }
                p
            })
            .collect()
    }

    pub fn stabiliser_group(&self) -> StabiliserGroup {
        StabiliserGroup::new(self.n, self.generators())
            .expect("graph generators always form a maximal stabiliser group")
    }

    /// `G ⋆ v`: toggles every edge inside the neighbourhood of `v`.
    pub fn local_complement(&self, v: usize) -> Result<Graph> {
        self.check_vertex(v)?;
        let nb = self.adj[v];
        let mut g = self.clone();
        for u in self.neighbors(v) {
            // complement within N(v), no loops
            g.adj[u] ^= nb & !(1 << u);
        }
        Ok(g)
    }

    /// Closure of `self` under local complementation at every vertex (labelled graphs).
    pub fn lc_orbit(&self, cap: usize) -> Result<BTreeSet<Graph>> {
        check_cap("vertex count", self.n, cap)?;
        let mut seen = BTreeSet::from([self.clone()]);
        let mut queue = VecDeque::from([self.clone()]);
        while let Some(g) = queue.pop_front() {
            for v in 0..g.n {
                let h = g.local_complement(v)?;
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        Ok(seen)
    }

    /// Triple from the constructive proof: the smallest vertex `u` of degree
    /// at least 2 and its two smallest neighbours `v < w`.
    pub fn extract_avn_triple(&self) -> Option<TripleExtraction> {
        let u = (0..self.n).find(|&u| self.degree(u) >= 2)?;
        let mut nb = self.neighbors(u);
        let (v, w) = (nb.next()?, nb.next()?);
        let gens = self.generators();
        let (case, triple) = if self.has_edge(v, w) {
            (
                ExtractionCase::Triangle,
                [gens[u].clone(), gens[v].clone(), gens[w].clone()],
            )
        } else {
            (
                ExtractionCase::Star,
                [
                    gens[u].clone(),
                    gens[u].mul_unchecked(&gens[v]),
                    gens[u].mul_unchecked(&gens[w]),
                ],
            )
        };
        let [e, f, g] = triple;
        Some(TripleExtraction {
            vertices: (u, v, w),
            triple: AvnTriple::new(e, f, g).expect("graph generators have phase +1"),
            case,
        })
    }

    /// Vertex of degree at least 2, the witness for AvN.
    pub fn avn_witness(&self) -> Option<usize> {
        (0..self.n).find(|&u| self.degree(u) >= 2)
    }

    pub fn has_avn(&self) -> bool {
        self.max_degree() >= 2
    }

    /// Symmetric 0/1 adjacency matrix rows.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u8>> {
        (0..self.n)
            .map(|u| (0..self.n).map(|v| self.has_edge(u, v) as u8).collect())
            .collect()
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({})", self.edges_string())
    }
}

impl Graph {
    fn edges_string(&self) -> String {
        self.edges()
            .iter()
            .map(|(u, v)| format!("{u}-{v}"))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Two-line text form: `n=<int>` then `edges=u-v,…`.
impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n={}", self.n)?;
        write!(f, "edges={}", self.edges_string())
    }
}

/// Accepts the `n=`/`edges=` form or a square block of 0/1 rows.
impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lines: Vec<&str> = s
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let first = lines
            .first()
            .ok_or_else(|| Error::Parse("empty graph description".into()))?;
        if let Some(n) = first.strip_prefix("n=") {
            let n: usize = n
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad vertex count {n:?}")))?;
            let mut edges = Vec::new();
            if let Some(line) = lines.get(1) {
                let list = line
                    .strip_prefix("edges=")
                    .ok_or_else(|| Error::Parse(format!("expected edges=..., got {line:?}")))?;
                for item in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                    let (a, b) = item
                        .split_once('-')
                        .ok_or_else(|| Error::Parse(format!("bad edge {item:?}")))?;
                    let parse = |t: &str| {
                        t.trim()
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad vertex {t:?}")))
                    };
                    edges.push((parse(a)?, parse(b)?));
                }
            }
            if lines.len() > 2 {
                return Err(Error::Parse("unexpected trailing lines".into()));
            }
            return Graph::from_edges(n, &edges);
        }
        let rows: Vec<Vec<u8>> = lines
            .iter()
            .map(|l| {
                l.chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        _ => Err(Error::Parse(format!("bad adjacency entry {c:?}"))),
                    })
                    .collect::<Result<Vec<u8>>>()
            })
            .collect::<Result<_>>()?;
        let n = rows.len();
        let mut g = Graph::from_edges(n, &[])?;
        for (u, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::Parse(format!(
                    "adjacency row {u} has {} entries, expected {n}",
                    row.len()
                )));
            }
            for v in 0..n {
                if row[v] != rows[v][u] {
                    return Err(Error::Parse(format!(
                        "adjacency matrix not symmetric at ({u},{v})"
                    )));
                }
                if row[v] == 1 {
                    if u == v {
                        return Err(Error::Parse(format!("loop at vertex {u}")));
                    }
                    if u < v {
                        g.add_edge(u, v)?;
                    }
                }
            }
        }
        Ok(g)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtractionCase {
    /// `v` and `w` adjacent: `⟨g^u, g^v, g^w⟩`.
    Triangle,
    /// `v` and `w` not adjacent: `⟨g^u, g^u g^v, g^u g^w⟩`.
    Star,
}

impl ExtractionCase {
    pub fn number(self) -> u8 {
        match self {
            ExtractionCase::Triangle => 1,
            ExtractionCase::Star => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TripleExtraction {
    pub vertices: (usize, usize, usize),
    pub triple: AvnTriple,
    pub case: ExtractionCase,
}

/// Image of a Pauli letter under conjugation: `i^phase · letter`, phase ∈ {0, 2}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignedLetter {
    pub phase: u8,
    pub letter: PauliLetter,
}

impl SignedLetter {
    pub fn plus(letter: PauliLetter) -> Self {
        SignedLetter { phase: 0, letter }
    }

    pub fn minus(letter: PauliLetter) -> Self {
        SignedLetter { phase: 2, letter }
    }
}

/// A single-qubit Clifford, given by the images of `X` and `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SiteClifford {
    x_image: SignedLetter,
    z_image: SignedLetter,
}

impl SiteClifford {
    pub fn new(
        x_image: SignedLetter,
        z_image: SignedLetter,
    ) -> std::result::Result<Self, &'static str> {
        if x_image.phase & 1 == 1 || z_image.phase & 1 == 1 {
            return Err("images must carry a real sign");
        }
        if x_image.letter == PauliLetter::I || z_image.letter == PauliLetter::I {
            return Err("images must be non-identity");
        }
        if x_image.letter == z_image.letter {
            return Err("images of X and Z must anticommute");
        }
        Ok(SiteClifford { x_image, z_image })
    }

    pub fn identity() -> Self {
        Self::new(
            SignedLetter::plus(PauliLetter::X),
            SignedLetter::plus(PauliLetter::Z),
        )
        .unwrap()
    }

    pub fn hadamard() -> Self {
        Self::new(
            SignedLetter::plus(PauliLetter::Z),
            SignedLetter::plus(PauliLetter::X),
        )
        .unwrap()
    }

    /// `S = diag(1, i)`.
    pub fn phase_gate() -> Self {
        Self::new(
            SignedLetter::plus(PauliLetter::Y),
            SignedLetter::plus(PauliLetter::Z),
        )
        .unwrap()
    }

    /// All 24 single-qubit Cliffords modulo phase.
    pub fn all() -> Vec<SiteClifford> {
        let mut out = Vec::with_capacity(24);
        for xl in PauliLetter::NON_IDENTITY {
            for zl in PauliLetter::NON_IDENTITY {
                for xp in [0, 2] {
                    for zp in [0, 2] {
                        if let Ok(c) = Self::new(
                            SignedLetter {
                                phase: xp,
                                letter: xl,
                            },
                            SignedLetter {
                                phase: zp,
                                letter: zl,
                            },
                        ) {
                            out.push(c);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn x_image(&self) -> SignedLetter {
        self.x_image
    }

    pub fn z_image(&self) -> SignedLetter {
        self.z_image
    }

    /// Derived from `Y = iXZ`.
    pub fn y_image(&self) -> SignedLetter {
        let (k, letter) = self.x_image.letter.mul(self.z_image.letter);
        let phase = (1 + k + self.x_image.phase + self.z_image.phase) % 4;
        debug_assert!(phase % 2 == 0);
        SignedLetter { phase, letter }
    }

    pub fn image(&self, l: PauliLetter) -> SignedLetter {
        match l {
            PauliLetter::I => SignedLetter::plus(PauliLetter::I),
            PauliLetter::X => self.x_image,
            PauliLetter::Y => self.y_image(),
            PauliLetter::Z => self.z_image,
        }
    }
}

/// Tensor product of single-qubit Cliffords, acting by conjugation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LocalCliffordFrame {
    sites: Vec<SiteClifford>,
}

impl LocalCliffordFrame {
    pub fn new(sites: Vec<SiteClifford>) -> Self {
        LocalCliffordFrame { sites }
    }

    /// Builds a frame from raw `(X image, Z image)` pairs, validating each site.
    pub fn from_images(images: &[(SignedLetter, SignedLetter)]) -> Result<Self> {
        images
            .iter()
            .enumerate()
            .map(|(site, &(x, z))| {
                SiteClifford::new(x, z).map_err(|reason| Error::InvalidFrame { site, reason })
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn identity(n: usize) -> Self {
        Self::new(vec![SiteClifford::identity(); n])
    }

    pub fn num_qubits(&self) -> usize {
        self.sites.len()
    }

    pub fn sites(&self) -> &[SiteClifford] {
        &self.sites
    }

    pub fn conjugate(&self, p: &PauliElement) -> Result<PauliElement> {
        if p.num_qubits() != self.sites.len() {
            return Err(Error::LengthMismatch {
                left: self.sites.len(),
                right: p.num_qubits(),
            });
        }
        let mut out = PauliElement::identity(p.num_qubits());
        let mut phase = p.phase_exp();
        for (q, site) in self.sites.iter().enumerate() {
            let img = site.image(p.letter(q));
            phase = (phase + img.phase) % 4;
            out.set_letter(q, img.letter);
        }
        Ok(out.with_phase(phase))
    }

    pub fn conjugate_triple(&self, t: &AvnTriple) -> Result<AvnTriple> {
        AvnTriple::new(
            self.conjugate(&t.e)?,
            self.conjugate(&t.f)?,
            self.conjugate(&t.g)?,
        )
    }
}

pub fn conjugate(frame: &LocalCliffordFrame, p: &PauliElement) -> Result<PauliElement> {
    frame.conjugate(p)
}
