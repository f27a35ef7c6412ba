//! Exact 3D convex hull on integer coordinates.
//!
//! Incremental construction in the quickhull style: every unprocessed point
//! sits in the outside set of one facet it sees, the farthest point of a
//! facet is inserted next, and the visible region is replaced by a cone of new
//! facets over its horizon. All predicates are evaluated exactly in `i128`, so
//! inputs must satisfy |coord| <= 2^40.

use std::collections::HashMap;

use crate::error::{Error, Result};

pub(crate) type P3 = [i64; 3];

#[derive(Debug, Clone)]
pub(crate) struct RawFacet {
    pub verts: [u32; 3],
    /// Outward normal `(b - a) x (c - a)`, not reduced.
    pub normal: [i128; 3],
}

struct Face {
    verts: [u32; 3],
    normal: [i128; 3],
    offset: i128,
    outside: Vec<u32>,
    alive: bool,
}

fn sub(a: P3, b: P3) -> [i128; 3] {
    [
        a[0] as i128 - b[0] as i128,
        a[1] as i128 - b[1] as i128,
        a[2] as i128 - b[2] as i128,
    ]
}

fn cross(u: [i128; 3], v: [i128; 3]) -> [i128; 3] {
    [
        u[1] * v[2] - u[2] * v[1],
        u[2] * v[0] - u[0] * v[2],
        u[0] * v[1] - u[1] * v[0],
    ]
}

fn dot(n: [i128; 3], p: P3) -> i128 {
    n[0] * p[0] as i128 + n[1] * p[1] as i128 + n[2] * p[2] as i128
}

/// Sign of the volume of `(a, b, c, d)`; positive when `d` lies on the side
/// `(b - a) x (c - a)` points to.
pub(crate) fn orient3d(a: P3, b: P3, c: P3, d: P3) -> i128 {
    let (u, v, w) = (sub(b, a), sub(c, a), sub(d, a));
    let n = cross(u, v);
    n[0] * w[0] + n[1] * w[1] + n[2] * w[2]
}

fn make_face(pts: &[P3], verts: [u32; 3]) -> Face {
    let [a, b, c] = verts.map(|i| pts[i as usize]);
    let normal = cross(sub(b, a), sub(c, a));
    Face {
        verts,
        normal,
        offset: dot(normal, a),
        outside: Vec::new(),
        alive: true,
    }
}

fn initial_simplex(pts: &[P3]) -> Result<[usize; 4]> {
    let i0 = (0..pts.len()).min_by_key(|&i| pts[i]).expect("nonempty");
    let norm2 = |v: [i128; 3]| v[0] * v[0] + v[1] * v[1] + v[2] * v[2];
    let i1 = (0..pts.len())
        .max_by_key(|&i| norm2(sub(pts[i], pts[i0])))
        .expect("nonempty");
    if pts[i1] == pts[i0] {
        return Err(Error::DegenerateHull("all points coincide".into()));
    }
    let e = sub(pts[i1], pts[i0]);
    let i2 = (0..pts.len())
        .max_by_key(|&i| norm2(cross(e, sub(pts[i], pts[i0]))))
        .expect("nonempty");
    if norm2(cross(e, sub(pts[i2], pts[i0]))) == 0 {
        return Err(Error::DegenerateHull("points are collinear".into()));
    }
    let i3 = (0..pts.len())
        .max_by_key(|&i| orient3d(pts[i0], pts[i1], pts[i2], pts[i]).abs())
        .expect("nonempty");
    if orient3d(pts[i0], pts[i1], pts[i2], pts[i3]) == 0 {
        return Err(Error::DegenerateHull("points are coplanar".into()));
    }
    Ok([i0, i1, i2, i3])
}

/// Triangulated hull facets of `pts`, with outward orientation. Vertices
/// are indices into `pts`. Points lying on the boundary are never inserted,
/// but a vertex inserted early may end up in the relative interior of a
/// coplanar face or collinear edge; see [`hull3`] for the cleanup.
fn quickhull_pass(pts: &[P3]) -> Result<Vec<RawFacet>> {
    let s = initial_simplex(pts)?;
    let mut faces: Vec<Face> = Vec::new();
    let mut edges: HashMap<(u32, u32), usize> = HashMap::new();

    let tri = [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 3, 1], [1, 2, 3, 0]];
    for t in tri {
        let (mut a, mut b, c, d) = (s[t[0]], s[t[1]], s[t[2]], s[t[3]]);
        if orient3d(pts[a], pts[b], pts[c], pts[d]) > 0 {
            std::mem::swap(&mut a, &mut b);
        }
        let face = make_face(pts, [a as u32, b as u32, c as u32]);
        let id = faces.len();
        for k in 0..3 {
            edges.insert((face.verts[k], face.verts[(k + 1) % 3]), id);
        }
        faces.push(face);
    }

    for (i, &p) in pts.iter().enumerate() {
        if s.contains(&i) {
            continue;
        }
        if let Some(f) = faces.iter_mut().find(|f| dot(f.normal, p) > f.offset) {
            f.outside.push(i as u32);
        }
    }

    let mut pending: Vec<usize> = (0..faces.len()).filter(|&f| !faces[f].outside.is_empty()).collect();
    let mut visible: Vec<usize> = Vec::new();
    let mut horizon: Vec<(u32, u32)> = Vec::new();
    let mut orphans: Vec<u32> = Vec::new();

    while let Some(fid) = pending.pop() {
        if !faces[fid].alive || faces[fid].outside.is_empty() {
            continue;
        }
        let eye = {
            let f = &faces[fid];
            *f.outside
                .iter()
                .max_by_key(|&&i| dot(f.normal, pts[i as usize]) - f.offset)
                .expect("nonempty outside set")
        };
        let ep = pts[eye as usize];

        visible.clear();
        horizon.clear();
        orphans.clear();
        faces[fid].alive = false;
        visible.push(fid);
        let mut head = 0;
        while head < visible.len() {
            let f = visible[head];
            head += 1;
            let verts = faces[f].verts;
            for k in 0..3 {
                let (a, b) = (verts[k], verts[(k + 1) % 3]);
                let n = edges[&(b, a)];
                if !faces[n].alive {
                    continue;
                }
                if dot(faces[n].normal, ep) > faces[n].offset {
                    faces[n].alive = false;
                    visible.push(n);
                } else {
                    horizon.push((a, b));
                }
            }
        }
        for &f in &visible {
            let verts = faces[f].verts;
            for k in 0..3 {
                edges.remove(&(verts[k], verts[(k + 1) % 3]));
            }
            orphans.extend(faces[f].outside.drain(..).filter(|&i| i != eye));
        }

        let first_new = faces.len();
        for &(a, b) in &horizon {
            let face = make_face(pts, [a, b, eye]);
            let id = faces.len();
            for k in 0..3 {
                edges.insert((face.verts[k], face.verts[(k + 1) % 3]), id);
            }
            faces.push(face);
        }
        for &i in &orphans {
            let p = pts[i as usize];
            if let Some(f) = faces[first_new..]
                .iter_mut()
                .find(|f| dot(f.normal, p) > f.offset)
            {
                f.outside.push(i);
            }
        }
        pending.extend((first_new..faces.len()).filter(|&f| !faces[f].outside.is_empty()));
    }

    Ok(faces
        .into_iter()
        .filter(|f| f.alive)
        .map(|f| RawFacet {
            verts: f.verts,
            normal: f.normal,
        })
        .collect())
}

fn primitive_normal(n: [i128; 3]) -> [i128; 3] {
    let g = crate::point::gcd128(crate::point::gcd128(n[0], n[1]), n[2]);
    n.map(|c| c / g)
}

/// Vertices whose incident facets carry at least three distinct normals,
/// i.e. the true extreme points of the hull.
fn extreme_vertices(facets: &[RawFacet]) -> Vec<u32> {
    let mut normals: HashMap<u32, Vec<[i128; 3]>> = HashMap::new();
    for f in facets {
        let n = primitive_normal(f.normal);
        for &v in &f.verts {
            let e = normals.entry(v).or_default();
            if !e.contains(&n) {
                e.push(n);
            }
        }
    }
    let mut out: Vec<u32> = normals
        .into_iter()
        .filter(|(_, ns)| ns.len() >= 3)
        .map(|(v, _)| v)
        .collect();
    out.sort_unstable();
    out
}

/// Exact hull of `pts`: returns the extreme point indices (ascending) and
/// the triangulated facets indexing into `pts`. Every facet vertex is an
/// extreme point.
pub(crate) fn hull3(pts: &[P3]) -> Result<(Vec<u32>, Vec<RawFacet>)> {
    let facets = quickhull_pass(pts)?;
    let extreme = extreme_vertices(&facets);
    let used: usize = {
        let mut u: Vec<u32> = facets.iter().flat_map(|f| f.verts).collect();
        u.sort_unstable();
        u.dedup();
        u.len()
    };
    if used == extreme.len() {
        return Ok((extreme, facets));
    }
    let sub_pts: Vec<P3> = extreme.iter().map(|&i| pts[i as usize]).collect();
    let facets = quickhull_pass(&sub_pts)?
        .into_iter()
        .map(|f| RawFacet {
            verts: f.verts.map(|v| extreme[v as usize]),
            normal: f.normal,
        })
        .collect::<Vec<_>>();
    debug_assert_eq!(extreme_vertices(&facets), extreme);
    Ok((extreme, facets))
}
