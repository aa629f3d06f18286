use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;
use std::io::{self, Write};
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::mesh::RP2Mesh;
use super::SystoleError;
use crate::conformal::ProjectiveFactor;
use crate::geometry::{slerp, UnitVec3};

pub const DEFAULT_SAMPLES_PER_EDGE: usize = 5;
/// Graph neighbourhood radius for arcs: 1 keeps only mesh edges.
pub const DEFAULT_REACH: usize = 3;
/// Arcs longer than this are never added; their minor arc is too close to
/// undefined near π.
const MAX_ARC_ANGLE: f64 = 0.9 * std::f64::consts::PI;

/// A great-circle arc between two mesh vertices with its g-length ∫ f ds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Arc {
    pub a: usize,
    pub b: usize,
    pub angle: f64,
    pub weight: f64,
}

/// Options for [`weight_edges_with`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArcOptions {
    /// Odd number of Simpson nodes along each arc, endpoints included.
    pub samples: usize,
    /// Every pair of vertices at graph distance ≤ reach on the mesh is joined
    /// by its great-circle arc. Reach 1 is the bare edge graph.
    pub reach: usize,
}

impl Default for ArcOptions {
    fn default() -> Self {
        ArcOptions {
            samples: DEFAULT_SAMPLES_PER_EDGE,
            reach: DEFAULT_REACH,
        }
    }
}

/// A mesh together with f-weighted arcs, stored as a CSR adjacency.
///
/// The first `mesh.edges().len()` arcs are the mesh edges in mesh order.
#[derive(Clone, Debug)]
pub struct WeightedMesh {
    mesh: RP2Mesh,
    options: ArcOptions,
    arcs: Vec<Arc>,
    offsets: Vec<usize>,
    targets: Vec<usize>,
    weights: Vec<f64>,
}

/// Composite Simpson weights on [0, 1] for `samples` equally spaced nodes.
fn simpson_weights(samples: usize) -> Vec<f64> {
    let intervals = samples - 1;
    let h = 1.0 / intervals as f64;
    (0..samples)
        .map(|i| {
            let c = if i == 0 || i == intervals {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * h / 3.0
        })
        .collect()
}

/// ∫ f ds along the minor arc from `a` to `b`.
pub fn arc_length<F: Fn(UnitVec3) -> f64>(f: F, a: UnitVec3, b: UnitVec3, samples: usize) -> f64 {
    let angle = a.angle_to(b);
    if angle == 0.0 {
        return 0.0;
    }
    let w = simpson_weights(samples);
    let n = samples - 1;
    let mut acc = 0.0;
    for (i, wi) in w.iter().enumerate() {
        let p = if i == 0 {
            a
        } else if i == n {
            b
        } else {
            slerp(a, b, angle, i as f64 / n as f64)
        };
        acc += wi * f(p);
    }
    angle * acc
}

/// Vertex pairs (s, t), s < t, within `reach` mesh hops, sorted.
fn arc_pairs(mesh: &RP2Mesh, reach: usize) -> Vec<(usize, usize)> {
    let adj = mesh.neighbors();
    let n = mesh.vertices().len();
    let mut seen = vec![usize::MAX; n];
    let mut pairs = Vec::new();
    let mut frontier = Vec::new();
    let mut next = Vec::new();
    for s in 0..n {
        seen[s] = s;
        frontier.clear();
        frontier.push(s);
        for _ in 0..reach {
            next.clear();
            for &u in &frontier {
                for &t in &adj[u] {
                    if seen[t] != s {
                        seen[t] = s;
                        next.push(t);
                        if t > s {
                            pairs.push((s, t));
                        }
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
        }
    }
    pairs.sort_unstable();
    pairs
}

pub fn weight_edges(
    mesh: RP2Mesh,
    f: &ProjectiveFactor,
    samples: usize,
) -> Result<WeightedMesh, SystoleError> {
    weight_edges_with(
        mesh,
        f,
        ArcOptions {
            samples,
            ..ArcOptions::default()
        },
    )
}

/// Weights every arc by Simpson quadrature of f along it times its angle.
pub fn weight_edges_with(
    mesh: RP2Mesh,
    f: &ProjectiveFactor,
    options: ArcOptions,
) -> Result<WeightedMesh, SystoleError> {
    if options.samples < 3 || options.samples.is_multiple_of(2) {
        return Err(SystoleError::BadSamples {
            samples: options.samples,
        });
    }
    if options.reach == 0 {
        return Err(SystoleError::BadReach);
    }
    let verts = mesh.vertices();
    let mut pairs: Vec<(usize, usize)> = mesh.edges().iter().map(|e| (e.a, e.b)).collect();
    if options.reach > 1 {
        pairs.extend(
            arc_pairs(&mesh, options.reach)
                .into_iter()
                .filter(|&(a, b)| mesh.edge_index(a, b).is_none())
                .filter(|&(a, b)| verts[a].angle_to(verts[b]) < MAX_ARC_ANGLE),
        );
    }
    let arcs: Vec<Arc> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let weight = arc_length(|v| f.value(v), verts[a], verts[b], options.samples);
            Arc {
                a,
                b,
                angle: verts[a].angle_to(verts[b]),
                weight,
            }
        })
        .collect();
    if let Some(bad) = arcs.iter().find(|arc| !(arc.weight > 0.0)) {
        return Err(SystoleError::NonPositiveWeight {
            a: bad.a,
            b: bad.b,
            weight: bad.weight,
        });
    }

    let n = verts.len();
    let mut degree = vec![0usize; n];
    for arc in &arcs {
        degree[arc.a] += 1;
        degree[arc.b] += 1;
    }
    let mut offsets = vec![0usize; n + 1];
    for i in 0..n {
        offsets[i + 1] = offsets[i] + degree[i];
    }
    let mut fill = offsets.clone();
    let mut targets = vec![0usize; offsets[n]];
    let mut weights = vec![0.0; offsets[n]];
    for arc in &arcs {
        for (u, v) in [(arc.a, arc.b), (arc.b, arc.a)] {
            targets[fill[u]] = v;
            weights[fill[u]] = arc.weight;
            fill[u] += 1;
        }
    }
    Ok(WeightedMesh {
        mesh,
        options,
        arcs,
        offsets,
        targets,
        weights,
    })
}

impl WeightedMesh {
    pub fn mesh(&self) -> &RP2Mesh {
        &self.mesh
    }

    pub fn options(&self) -> ArcOptions {
        self.options
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Weights of the mesh edges, in mesh edge order.
    pub fn edge_weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.arcs[..self.mesh.edges().len()]
            .iter()
            .map(|a| a.weight)
    }

    fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, f64)> + '_ {
        let range = self.offsets[u]..self.offsets[u + 1];
        self.targets[range.clone()]
            .iter()
            .copied()
            .zip(self.weights[range].iter().copied())
    }

    /// Weight of the arc joining `a` and `b`, if present.
    pub fn arc_weight(&self, a: usize, b: usize) -> Option<f64> {
        self.neighbors(a).find(|&(t, _)| t == b).map(|(_, w)| w)
    }

    /// Representatives of antipodal pairs that every noncontractible loop
    /// must pass through.
    ///
    /// A loop on RP² lifts to a path from x to −x, which crosses the plane
    /// z = 0. The crossing happens at a vertex on the plane or along an arc
    /// whose endpoints lie strictly on opposite sides; either way the loop
    /// visits one of the vertices collected here, and restarting the loop at
    /// that vertex does not change its length.
    pub fn cut_sources(&self) -> Vec<usize> {
        let verts = self.mesh.vertices();
        let side = |i: usize| verts[i].z().partial_cmp(&0.0).unwrap_or(Ordering::Equal);
        let mut mark = vec![false; verts.len()];
        for (i, m) in mark.iter_mut().enumerate() {
            if side(i) == Ordering::Equal {
                *m = true;
            }
        }
        for arc in &self.arcs {
            let (sa, sb) = (side(arc.a), side(arc.b));
            if sa != Ordering::Equal && sb != Ordering::Equal && sa != sb {
                mark[arc.a] = true;
                mark[arc.b] = true;
            }
        }
        (0..verts.len())
            .filter(|&i| mark[i] || mark[self.mesh.antipode(i)])
            .filter(|&i| i < self.mesh.antipode(i))
            .collect()
    }

    /// Writes `v x y z` lines for vertices and `e i j weight` lines for mesh edges.
    pub fn write_dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        for v in self.mesh.vertices() {
            writeln!(out, "v {} {} {}", v.x(), v.y(), v.z())?;
        }
        for (e, w) in self.mesh.edges().iter().zip(self.edge_weights()) {
            writeln!(out, "e {} {} {}", e.a, e.b, w)?;
        }
        Ok(())
    }
}

/// Shortest noncontractible loop on the weighted mesh.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystoleResult {
    /// g-length of the loop.
    pub length: f64,
    /// Start vertex x; the path ends at its antipode.
    pub base: usize,
    pub path: Vec<usize>,
    pub level: usize,
    /// Largest mesh edge angle h.
    pub mesh_size: f64,
    pub sources_scanned: usize,
}

impl SystoleResult {
    /// Sum of arc weights along the path, in path order.
    pub fn path_weight(&self, wm: &WeightedMesh) -> Option<f64> {
        self.path
            .windows(2)
            .try_fold(0.0, |acc, w| wm.arc_weight(w[0], w[1]).map(|x| acc + x))
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Dist(f64);

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

struct Scratch {
    dist: Vec<f64>,
    pred: Vec<usize>,
    heap: BinaryHeap<Reverse<(Dist, usize)>>,
}

impl Scratch {
    fn new(n: usize) -> Self {
        Scratch {
            dist: vec![f64::INFINITY; n],
            pred: vec![usize::MAX; n],
            heap: BinaryHeap::new(),
        }
    }
}

/// Label-setting search from `source` to `target`. Returns None when the
/// search is abandoned because every remaining label exceeds `bound`.
fn shortest_path(
    wm: &WeightedMesh,
    source: usize,
    target: usize,
    bound: f64,
    scratch: &mut Scratch,
) -> Option<(f64, Vec<usize>)> {
    let Scratch { dist, pred, heap } = scratch;
    dist.fill(f64::INFINITY);
    pred.fill(usize::MAX);
    heap.clear();
    dist[source] = 0.0;
    heap.push(Reverse((Dist(0.0), source)));
    while let Some(Reverse((Dist(d), u))) = heap.pop() {
        if d > dist[u] {
            continue;
        }
        if d > bound {
            return None;
        }
        if u == target {
            let mut path = vec![target];
            let mut cur = target;
            while cur != source {
                cur = pred[cur];
                path.push(cur);
            }
            path.reverse();
            return Some((d, path));
        }
        for (v, w) in wm.neighbors(u) {
            let nd = d + w;
            // Equal labels keep the smaller predecessor index.
            if nd < dist[v] || (nd == dist[v] && u < pred[v]) {
                dist[v] = nd;
                pred[v] = u;
                heap.push(Reverse((Dist(nd), v)));
            }
        }
    }
    None
}

/// L = min over sources x of d(x, −x) on the weighted graph.
///
/// Ties go to the smallest base index. The search from each source stops as
/// soon as its labels exceed the best length found so far, which never
/// affects the result.
pub fn compute_systole(wm: &WeightedMesh) -> Result<SystoleResult, SystoleError> {
    let sources = wm.cut_sources();
    let n = wm.mesh.vertices().len();
    let best = AtomicU64::new(f64::INFINITY.to_bits());
    let found: Vec<(f64, usize, Vec<usize>)> = sources
        .par_iter()
        .map_init(
            || Scratch::new(n),
            |scratch, &s| {
                let bound = f64::from_bits(best.load(AtomicOrdering::Relaxed));
                let result = shortest_path(wm, s, wm.mesh.antipode(s), bound, scratch)?;
                // Positive floats order like their bit patterns.
                best.fetch_min(result.0.to_bits(), AtomicOrdering::Relaxed);
                Some((result.0, s, result.1))
            },
        )
        .flatten()
        .collect();
    let (length, base, path) = found
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)))
        .ok_or(SystoleError::Disconnected)?;
    Ok(SystoleResult {
        length,
        base,
        path,
        level: wm.mesh.level(),
        mesh_size: wm.mesh.max_edge_angle(),
        sources_scanned: sources.len(),
    })
}

/// Reference search from every antipodal representative, without the cut
/// restriction or pruning. Quadratic in the vertex count; for tests.
pub fn compute_systole_exhaustive(wm: &WeightedMesh) -> Result<SystoleResult, SystoleError> {
    let n = wm.mesh.vertices().len();
    let mut scratch = Scratch::new(n);
    let mut best: Option<(f64, usize, Vec<usize>)> = None;
    let mut scanned = 0;
    for s in (0..n).filter(|&i| i < wm.mesh.antipode(i)) {
        scanned += 1;
        if let Some((d, path)) =
            shortest_path(wm, s, wm.mesh.antipode(s), f64::INFINITY, &mut scratch)
        {
            if best.as_ref().is_none_or(|b| d < b.0) {
                best = Some((d, s, path));
            }
        }
    }
    let (length, base, path) = best.ok_or(SystoleError::Disconnected)?;
    Ok(SystoleResult {
        length,
        base,
        path,
        level: wm.mesh.level(),
        mesh_size: wm.mesh.max_edge_angle(),
        sources_scanned: scanned,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::Preset;
    use crate::systole::build_mesh;
    use std::f64::consts::PI;

    fn projective(p: Preset) -> ProjectiveFactor {
        ProjectiveFactor::new(p.build().unwrap()).unwrap()
    }

    #[test]
    fn simpson_weights_sum_to_one() {
        for s in [3, 5, 9] {
            let w = simpson_weights(s);
            assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-15);
        }
        assert_eq!(
            simpson_weights(5),
            vec![1.0 / 12.0, 4.0 / 12.0, 2.0 / 12.0, 4.0 / 12.0, 1.0 / 12.0]
        );
    }

    #[test]
    fn unit_factor_weights_are_angles() {
        let wm = weight_edges(
            build_mesh(2).unwrap(),
            &projective(Preset::Constant(1.0)),
            5,
        )
        .unwrap();
        for arc in wm.arcs() {
            assert!((arc.weight - arc.angle).abs() < 1e-15);
        }
        assert!(wm.arcs().len() > wm.mesh().edges().len());
    }

    #[test]
    fn weights_scale_linearly() {
        let f = projective(Preset::P2(0.3));
        let a = weight_edges(build_mesh(2).unwrap(), &f, 5).unwrap();
        let b = weight_edges(build_mesh(2).unwrap(), &f.scaled(2.0).unwrap(), 5).unwrap();
        for (x, y) in a.arcs().iter().zip(b.arcs()) {
            assert!((y.weight - 2.0 * x.weight).abs() < 1e-15 * y.weight);
        }
    }

    #[test]
    fn antipodal_arcs_share_weights() {
        let wm = weight_edges(build_mesh(3).unwrap(), &projective(Preset::P2(0.3)), 5).unwrap();
        let m = wm.mesh();
        for arc in wm.arcs() {
            let w = wm.arc_weight(m.antipode(arc.a), m.antipode(arc.b)).unwrap();
            assert!((w - arc.weight).abs() < 1e-12);
        }
    }

    #[test]
    fn arc_length_matches_closed_form() {
        // Along the equator from x̂ to ŷ, f = 1 + 0.3(z² − 1/3) is 0.9.
        let f = |v: UnitVec3| 1.0 + 0.3 * (v.z() * v.z() - 1.0 / 3.0);
        let l = arc_length(f, UnitVec3::X, UnitVec3::Y, 5);
        assert!((l - 0.9 * PI / 2.0).abs() < 1e-14);
        // Meridian from ẑ to x̂: ∫ 1 + 0.3(cos²t − 1/3) dt over [0, π/2] = π/2 (1 + 0.3/6).
        let m = arc_length(f, UnitVec3::Z, UnitVec3::X, 33);
        assert!((m - PI / 2.0 * (1.0 + 0.05)).abs() < 1e-7);
    }

    #[test]
    fn constant_systole_is_pi() {
        for level in 1..=3 {
            let wm = weight_edges(
                build_mesh(level).unwrap(),
                &projective(Preset::Constant(1.0)),
                5,
            )
            .unwrap();
            let s = compute_systole(&wm).unwrap();
            assert!((s.length - PI).abs() < 1e-12, "level {level}: {}", s.length);
        }
    }

    #[test]
    fn cut_search_agrees_with_exhaustive_search() {
        for (preset, level, reach) in [
            (Preset::P2(0.3), 2, 1),
            (Preset::P2(0.3), 3, 2),
            (Preset::Mixed(5), 2, 3),
            (Preset::P4(0.5), 3, 1),
            (Preset::Mixed(11), 3, 2),
        ] {
            let wm = weight_edges_with(
                build_mesh(level).unwrap(),
                &projective(preset),
                ArcOptions { samples: 5, reach },
            )
            .unwrap();
            let fast = compute_systole(&wm).unwrap();
            let slow = compute_systole_exhaustive(&wm).unwrap();
            // Loops found from different base points sum their arcs in a different order.
            assert!(
                (fast.length - slow.length).abs() <= 1e-12 * slow.length,
                "{preset} level {level} reach {reach}: {} vs {}",
                fast.length,
                slow.length
            );
            assert!(fast.sources_scanned < slow.sources_scanned);
        }
    }

    #[test]
    fn path_is_valid_and_sums_to_length() {
        let wm = weight_edges(build_mesh(3).unwrap(), &projective(Preset::Mixed(2)), 5).unwrap();
        let s = compute_systole(&wm).unwrap();
        assert_eq!(s.path.first(), Some(&s.base));
        assert_eq!(*s.path.last().unwrap(), wm.mesh().antipode(s.base));
        let total = s
            .path_weight(&wm)
            .expect("consecutive vertices share an arc");
        assert!((total - s.length).abs() < 1e-12);
        // The antipodal image of the reversed path realizes the same length.
        let mirrored: Vec<usize> = s
            .path
            .iter()
            .rev()
            .map(|&i| wm.mesh().antipode(i))
            .collect();
        let image = SystoleResult {
            path: mirrored,
            ..s.clone()
        };
        assert!((image.path_weight(&wm).unwrap() - s.length).abs() < 1e-12);
    }

    #[test]
    fn doubling_the_factor_doubles_length() {
        let f = projective(Preset::P4(0.4));
        let a = compute_systole(&weight_edges(build_mesh(3).unwrap(), &f, 5).unwrap()).unwrap();
        let b = compute_systole(
            &weight_edges(build_mesh(3).unwrap(), &f.scaled(2.0).unwrap(), 5).unwrap(),
        )
        .unwrap();
        assert_eq!(b.length, 2.0 * a.length);
    }

    #[test]
    fn bad_options_are_rejected() {
        let f = projective(Preset::Constant(1.0));
        assert!(matches!(
            weight_edges(build_mesh(1).unwrap(), &f, 4),
            Err(SystoleError::BadSamples { samples: 4 })
        ));
        assert!(matches!(
            weight_edges_with(
                build_mesh(1).unwrap(),
                &f,
                ArcOptions {
                    samples: 5,
                    reach: 0
                }
            ),
            Err(SystoleError::BadReach)
        ));
    }

    #[test]
    fn dump_format() {
        let wm = weight_edges(
            build_mesh(0).unwrap(),
            &projective(Preset::Constant(1.0)),
            3,
        )
        .unwrap();
        let mut buf = Vec::new();
        wm.write_dump(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("v ")).count(), 12);
        assert_eq!(text.lines().filter(|l| l.starts_with("e ")).count(), 30);
    }
}
