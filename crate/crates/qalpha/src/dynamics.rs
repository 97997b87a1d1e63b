//! The functional graph of theta_alpha over P^1(F_{2^s}).
//!
//! Every vertex has exactly one outgoing edge (to its theta image), so each
//! connected component is a cycle carrying trees hung off the cycle
//! vertices. The graph is materialized for s <= 20, components are
//! classified by (cycle length, tree depth, vertex census), and the result
//! can be exported as DOT or a JSON report.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::factorize::is_irreducible;
use crate::field::{ensure_same_spec, FieldElement, FieldSpec, ProjectivePoint};
use crate::poly::Polynomial;

/// Enumeration cap: the full vertex set 2^s + 1 must be materialized.
pub const GRAPH_MAX_S: u32 = 20;
/// Cap (s * deg f) for periodic-root tests, which realize F_{2^(s n)}.
pub const PERIODIC_ROOTS_MAX_BITS: u32 = 16;

/// Shape summary of one connected component.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ComponentSignature {
    pub cycle_length: usize,
    pub tree_depth: usize,
    pub vertex_count: usize,
    pub contains_infinity: bool,
}

/// The complete functional graph of theta_alpha.
///
/// Vertices are indexed by element bits, with the extra index 2^s for the
/// point at infinity.
pub struct DynamicsGraph {
    spec: FieldSpec,
    alpha: FieldElement,
    succ: Vec<u32>,
    on_cycle: Vec<bool>,
    comp_of: Vec<u32>,
    depth_to_cycle: Vec<u32>,
    components: Vec<ComponentSignature>,
    /// Per component: the depth of the tree rooted at each cycle vertex,
    /// cycle vertices in index order.
    tree_depths: Vec<Vec<usize>>,
}

impl DynamicsGraph {
    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn alpha(&self) -> &FieldElement {
        &self.alpha
    }

    /// 2^s + 1.
    pub fn vertex_count(&self) -> usize {
        self.succ.len()
    }

    /// Components ordered by their smallest vertex (bits order, inf last).
    pub fn components(&self) -> &[ComponentSignature] {
        &self.components
    }

    /// Depths of the trees rooted at the component's cycle vertices.
    pub fn tree_depths(&self, component: usize) -> &[usize] {
        &self.tree_depths[component]
    }

    fn infinity_index(&self) -> usize {
        self.succ.len() - 1
    }

    fn index_of(&self, p: &ProjectivePoint) -> Result<usize> {
        match p {
            ProjectivePoint::Infinity => Ok(self.infinity_index()),
            ProjectivePoint::Finite(e) => {
                ensure_same_spec(e.spec(), &self.spec)?;
                Ok(e.bits() as usize)
            }
        }
    }

    fn point_at(&self, idx: usize) -> ProjectivePoint {
        if idx == self.infinity_index() {
            ProjectivePoint::Infinity
        } else {
            ProjectivePoint::Finite(
                self.spec
                    .element_from_bits(idx as u64)
                    .expect("vertex index is in range"),
            )
        }
    }

    pub fn successor(&self, p: &ProjectivePoint) -> Result<ProjectivePoint> {
        let idx = self.index_of(p)?;
        Ok(self.point_at(self.succ[idx] as usize))
    }

    pub fn predecessors(&self, p: &ProjectivePoint) -> Result<Vec<ProjectivePoint>> {
        let idx = self.index_of(p)? as u32;
        Ok((0..self.succ.len())
            .filter(|&v| self.succ[v] == idx)
            .map(|v| self.point_at(v))
            .collect())
    }

    pub fn component_of(&self, p: &ProjectivePoint) -> Result<usize> {
        Ok(self.comp_of[self.index_of(p)?] as usize)
    }

    /// Distance from a vertex to its component's cycle (0 on the cycle).
    pub fn depth_of(&self, p: &ProjectivePoint) -> Result<usize> {
        Ok(self.depth_to_cycle[self.index_of(p)?] as usize)
    }
}

/// True iff the point lies on its component's cycle.
pub fn is_periodic(p: &ProjectivePoint, g: &DynamicsGraph) -> Result<bool> {
    Ok(g.on_cycle[g.index_of(p)?])
}

/// Build the full graph of theta_alpha over P^1(F_{2^s}).
pub fn build_graph(spec: &FieldSpec, alpha: &FieldElement) -> Result<DynamicsGraph> {
    ensure_same_spec(spec, alpha.spec())?;
    if alpha.is_zero() {
        return Err(Error::ZeroParameter { name: "alpha" });
    }
    if spec.s() > GRAPH_MAX_S {
        return Err(Error::ScaleCap {
            what: "build_graph (s)",
            value: spec.s() as u64,
            limit: GRAPH_MAX_S as u64,
        });
    }

    let n_finite = spec.element_count() as usize;
    let inf = n_finite;
    let n = n_finite + 1;
    let ab = alpha.bits();

    let mut succ = vec![0u32; n];
    succ[inf] = inf as u32;
    succ[0] = inf as u32;
    for x in 1..n_finite as u64 {
        let image = x ^ spec.mul_bits(ab, spec.inv_bits(x));
        succ[x as usize] = image as u32;
    }

    // Three-color walk: every path either runs into explored territory or
    // closes a new cycle.
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; n];
    let mut on_cycle = vec![false; n];
    for start in 0..n {
        if color[start] != WHITE {
            continue;
        }
        let mut path = Vec::new();
        let mut v = start;
        while color[v] == WHITE {
            color[v] = GRAY;
            path.push(v);
            v = succ[v] as usize;
        }
        if color[v] == GRAY {
            // new cycle: the tail of the path from v onward
            let cut = path.iter().position(|&u| u == v).expect("v is on the path");
            for &u in &path[cut..] {
                on_cycle[u] = true;
            }
        }
        for &u in &path {
            color[u] = BLACK;
        }
    }

    // Reverse edges, then BFS outward from every cycle so each vertex gets
    // its component, its distance to the cycle, and the cycle vertex whose
    // tree it hangs from.
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in 0..n {
        preds[succ[v] as usize].push(v as u32);
    }

    let mut comp_of = vec![u32::MAX; n];
    let mut depth = vec![0u32; n];
    let mut tree_root = vec![u32::MAX; n];
    let mut comp_count = 0u32;
    let mut queue = std::collections::VecDeque::new();
    for v in 0..n {
        if !on_cycle[v] || comp_of[v] != u32::MAX {
            continue;
        }
        // walk the whole cycle first
        let comp = comp_count;
        comp_count += 1;
        let mut c = v;
        loop {
            comp_of[c] = comp;
            tree_root[c] = c as u32;
            c = succ[c] as usize;
            if c == v {
                break;
            }
        }
        // then grow the trees
        let mut c = v;
        loop {
            queue.push_back(c);
            c = succ[c] as usize;
            if c == v {
                break;
            }
        }
        while let Some(u) = queue.pop_front() {
            for &p in &preds[u] {
                let p = p as usize;
                if on_cycle[p] {
                    continue;
                }
                comp_of[p] = comp;
                depth[p] = depth[u] + 1;
                tree_root[p] = if on_cycle[u] { u as u32 } else { tree_root[u] };
                queue.push_back(p);
            }
        }
    }
    debug_assert!(comp_of.iter().all(|&c| c != u32::MAX));

    // Renumber components by smallest vertex for a deterministic ordering.
    let mut first_vertex = vec![usize::MAX; comp_count as usize];
    for v in 0..n {
        let c = comp_of[v] as usize;
        if first_vertex[c] == usize::MAX {
            first_vertex[c] = v;
        }
    }
    let mut order: Vec<u32> = (0..comp_count).collect();
    order.sort_by_key(|&c| first_vertex[c as usize]);
    let mut renumber = vec![0u32; comp_count as usize];
    for (new, &old) in order.iter().enumerate() {
        renumber[old as usize] = new as u32;
    }
    for c in comp_of.iter_mut() {
        *c = renumber[*c as usize];
    }

    let mut signatures = vec![
        ComponentSignature {
            cycle_length: 0,
            tree_depth: 0,
            vertex_count: 0,
            contains_infinity: false,
        };
        comp_count as usize
    ];
    let mut per_root_depth: Vec<std::collections::BTreeMap<u32, usize>> =
        vec![Default::default(); comp_count as usize];
    for v in 0..n {
        let c = comp_of[v] as usize;
        signatures[c].vertex_count += 1;
        if on_cycle[v] {
            signatures[c].cycle_length += 1;
            per_root_depth[c].entry(v as u32).or_insert(0);
        } else {
            let entry = per_root_depth[c].entry(tree_root[v]).or_insert(0);
            *entry = (*entry).max(depth[v] as usize);
        }
        signatures[c].tree_depth = signatures[c].tree_depth.max(depth[v] as usize);
        if v == inf {
            signatures[c].contains_infinity = true;
        }
    }
    let tree_depths: Vec<Vec<usize>> = per_root_depth
        .into_iter()
        .map(|m| m.into_values().collect())
        .collect();

    Ok(DynamicsGraph {
        spec: spec.clone(),
        alpha: alpha.clone(),
        succ,
        on_cycle,
        comp_of,
        depth_to_cycle: depth,
        components: signatures,
        tree_depths,
    })
}

/// Whether the roots of an irreducible f over F_{2^s} are theta_alpha
/// periodic in the graph over F_{2^(s n)}. By the Frobenius argument all
/// roots of f share the answer, so one root is enough.
pub fn has_periodic_roots(f: &Polynomial, alpha: &FieldElement) -> Result<bool> {
    ensure_same_spec(f.spec(), alpha.spec())?;
    if alpha.is_zero() {
        return Err(Error::ZeroParameter { name: "alpha" });
    }
    let n = match f.degree() {
        None | Some(0) => {
            return Err(Error::InvalidInput(
                "has_periodic_roots needs a nonconstant polynomial".to_string(),
            ))
        }
        Some(n) => n,
    };
    let spec = f.spec();
    let m = spec.s() as usize * n;
    if m > PERIODIC_ROOTS_MAX_BITS as usize {
        return Err(Error::ScaleCap {
            what: "has_periodic_roots (s * deg)",
            value: m as u64,
            limit: PERIODIC_ROOTS_MAX_BITS as u64,
        });
    }
    if !is_irreducible(f)? {
        return Err(Error::ReducibleInput {
            context: "has_periodic_roots needs an irreducible input".to_string(),
        });
    }

    // Realize F_{2^(s n)} and embed the base field by sending the residue
    // class of x to a root of the base modulus found by search.
    let big = if m == spec.s() as usize {
        spec.clone()
    } else {
        FieldSpec::conway(m as u32)?
    };
    let base_root = find_subfield_root(spec, &big)?;
    let embed = |bits: u64| -> u64 {
        let mut acc = 0u64;
        for i in 0..spec.s() as u64 {
            if (bits >> i) & 1 == 1 {
                acc ^= big.pow_bits(base_root, i);
            }
        }
        acc
    };

    let alpha_big = embed(alpha.bits());
    let coeffs: Vec<u64> = (0..=n).map(|u| embed(f.coeff_bits(u))).collect();
    let f_big = Polynomial::from_coeff_bits(&big, coeffs)?;

    // First root of f in the big field, by bits order.
    let mut root = None;
    for bits in 0..big.element_count() {
        let e = big.element_from_bits(bits)?;
        if f_big.eval(&e)?.is_zero() {
            root = Some(bits);
            break;
        }
    }
    let root = root.ok_or_else(|| Error::ContractViolation {
        context: "irreducible polynomial has no root in its splitting field".to_string(),
    })?;

    // Walk the orbit; the point is periodic iff the walk returns to it
    // within the vertex count.
    let inf = u64::MAX;
    let theta_bits = |x: u64| -> u64 {
        if x == inf || x == 0 {
            inf
        } else {
            x ^ big.mul_bits(alpha_big, big.inv_bits(x))
        }
    };
    let mut cur = theta_bits(root);
    for _ in 0..=big.element_count() {
        if cur == root {
            return Ok(true);
        }
        cur = theta_bits(cur);
    }
    Ok(false)
}

/// Locate the image of the base field's generator-of-definition (the residue
/// class of x) inside the big field: the first root of the base modulus.
fn find_subfield_root(base: &FieldSpec, big: &FieldSpec) -> Result<u64> {
    debug_assert_eq!(big.s() % base.s(), 0);
    let modulus = base.modulus();
    let s = base.s() as u64;
    for cand in 0..big.element_count() {
        // evaluate the GF(2) modulus at cand via Horner
        let mut acc = 0u64;
        for i in (0..=s).rev() {
            acc = big.mul_bits(acc, cand);
            if (modulus >> i) & 1 == 1 {
                acc ^= 1;
            }
        }
        if acc == 0 {
            return Ok(cand);
        }
    }
    Err(Error::ContractViolation {
        context: "base modulus has no root in the extension".to_string(),
    })
}

/// Vertex label: discrete-log exponent when the spec has a generator
/// ("zero" and "inf" spelled out), lowercase hex otherwise.
fn vertex_label(g: &DynamicsGraph, idx: usize) -> String {
    if idx == g.infinity_index() {
        return "inf".to_string();
    }
    if idx == 0 {
        return "zero".to_string();
    }
    match g.spec.dlog_bits(idx as u64) {
        Some(e) => format!("{e}"),
        None => format!("{idx:x}"),
    }
}

fn dot_id(label: &str) -> String {
    // numerals and plain words are valid bare DOT ids; hex like "1d" is not
    if label.chars().all(|c| c.is_ascii_digit())
        || label.chars().all(|c| c.is_ascii_alphabetic())
    {
        label.to_string()
    } else {
        format!("\"{label}\"")
    }
}

/// Deterministic DOT rendering: one node line per vertex, one edge line per
/// vertex, both in canonical label order (zero, exponents ascending, inf).
pub fn export_dot(g: &DynamicsGraph) -> String {
    let n = g.vertex_count();
    let labeled = g.spec.generator().is_some();
    let mut order: Vec<usize> = (0..n).collect();
    if labeled {
        // zero, then by exponent, then inf
        order.sort_by_key(|&v| {
            if v == g.infinity_index() {
                (2, 0)
            } else if v == 0 {
                (0, 0)
            } else {
                (1, g.spec.dlog_bits(v as u64).expect("labeled spec"))
            }
        });
    }
    let mut out = String::new();
    out.push_str("digraph theta {\n");
    for &v in &order {
        out.push_str(&format!("  {};\n", dot_id(&vertex_label(g, v))));
    }
    for &v in &order {
        let w = g.succ[v] as usize;
        out.push_str(&format!(
            "  {} -> {};\n",
            dot_id(&vertex_label(g, v)),
            dot_id(&vertex_label(g, w))
        ));
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct ComponentRecord {
    cycle: usize,
    depth: usize,
    vertices: usize,
    infinity: bool,
}

#[derive(Serialize)]
struct GraphRecord {
    s: u32,
    alpha: String,
    components: Vec<ComponentRecord>,
}

fn sorted_component_records(g: &DynamicsGraph) -> Vec<ComponentRecord> {
    let mut sigs = g.components.to_vec();
    sigs.sort_by(|a, b| {
        (b.cycle_length, b.tree_depth, b.vertex_count).cmp(&(
            a.cycle_length,
            a.tree_depth,
            a.vertex_count,
        ))
    });
    sigs.into_iter()
        .map(|c| ComponentRecord {
            cycle: c.cycle_length,
            depth: c.tree_depth,
            vertices: c.vertex_count,
            infinity: c.contains_infinity,
        })
        .collect()
}

/// JSON report with components sorted by (cycle, depth, vertices) descending.
pub fn export_json(g: &DynamicsGraph) -> String {
    let record = GraphRecord {
        s: g.spec.s(),
        alpha: g.alpha.to_hex(),
        components: sorted_component_records(g),
    };
    serde_json::to_string_pretty(&record).expect("graph record serializes")
}

/// CSV companion of the JSON report, same ordering.
pub fn export_csv(g: &DynamicsGraph) -> String {
    let mut out = String::from("cycle,depth,vertices,infinity\n");
    for c in sorted_component_records(g) {
        out.push_str(&format!(
            "{},{},{},{}\n",
            c.cycle, c.depth, c.vertices, c.infinity
        ));
    }
    out
}
