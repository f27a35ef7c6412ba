//! Antipodal vertex pairs and the cones of projection directions for which
//! each pair stays antipodal.
//!
//! In 2D the cones come from rotating calipers: the critical directions are
//! the primitive outward edge normals and their negations, and between two
//! consecutive critical directions the maximizing vertex `p` and minimizing
//! vertex `q` do not change. Only half of the full turn is reported; the
//! other half is the negation of it.
//!
//! In 3D the same partition is the normal fan of the difference body
//! `conv{p - q}`: a direction `v` is maximized on the difference body at
//! `p - q` exactly when `p` maximizes and `q` minimizes `v` over the hull. Each
//! vertex cone is fan-triangulated into simplicial cones.

use std::cmp::Ordering;
use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::quickhull::{self, P3};
use super::Hull;
use crate::error::{Error, Result};
use crate::point::{narrow, IntPoint};

/// A cone of directions over which `p` maximizes and `q` minimizes the
/// projection onto the hull. Directions strictly inside
/// `cone(generators)` all satisfy `v . diff > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AntipodalCone {
    pub p: IntPoint,
    pub q: IntPoint,
    pub diff: IntPoint,
    pub generators: Vec<IntPoint>,
}

impl AntipodalCone {
    /// Node extent of the projection onto `v`, valid for any `v` in the
    /// closed cone.
    pub fn extent_of(&self, v: &IntPoint) -> i128 {
        v.dot(&self.diff) + 1
    }
}

/// Antipodal cones of a hull; see the module docs for the 2D/3D conventions.
pub fn antipodal_cones(hull: &Hull) -> Result<Vec<AntipodalCone>> {
    match hull.dimension() {
        2 => Ok(calipers(hull)),
        3 => difference_body_cones(hull),
        d => Err(Error::DegenerateHull(format!("unsupported dimension {d}"))),
    }
}

fn half(v: &IntPoint) -> u8 {
    // 0 for the half-plane {x > 0} U {x = 0, y > 0}, 1 otherwise
    if v[0] > 0 || (v[0] == 0 && v[1] > 0) {
        0
    } else {
        1
    }
}

/// Counterclockwise angular order starting at angle just above -90 degrees.
fn angle_cmp(a: &IntPoint, b: &IntPoint) -> Ordering {
    half(a).cmp(&half(b)).then_with(|| {
        let c = a[0] as i128 * b[1] as i128 - a[1] as i128 * b[0] as i128;
        0.cmp(&c)
    })
}

fn calipers(hull: &Hull) -> Vec<AntipodalCone> {
    let verts = hull.vertices();
    let n = verts.len();
    let mut dirs: Vec<IntPoint> = Vec::with_capacity(2 * n);
    for i in 0..n {
        let e = &verts[(i + 1) % n] - &verts[i];
        let normal = IntPoint::from([e[1], -e[0]]).primitive();
        dirs.push(-&normal);
        dirs.push(normal);
    }
    dirs.sort_by(angle_cmp);
    dirs.dedup();

    // Cone j spans dirs[j] .. dirs[j+1] counterclockwise; list generators
    // clockwise so the sweep order reads (g1 -> g2) as the calipers turn.
    let m = dirs.len();
    let mut cones: Vec<(IntPoint, IntPoint)> = (0..m)
        .map(|j| (dirs[(j + 1) % m].clone(), dirs[j].clone()))
        .filter(|(_, g2)| half(g2) == 0)
        .collect();
    cones.sort_by(|a, b| angle_cmp(&b.1, &a.1));

    cones
        .into_iter()
        .map(|(g1, g2)| {
            let inside = &g1 + &g2;
            let key = |x: &IntPoint| inside.dot(x);
            let p = verts.iter().max_by_key(|x| key(x)).expect("nonempty hull").clone();
            let q = verts.iter().min_by_key(|x| key(x)).expect("nonempty hull").clone();
            AntipodalCone {
                diff: &p - &q,
                p,
                q,
                generators: vec![g1, g2],
            }
        })
        .collect()
}

fn difference_body_cones(hull: &Hull) -> Result<Vec<AntipodalCone>> {
    let verts: Vec<P3> = hull.vertices().iter().map(|v| [v[0], v[1], v[2]]).collect();
    let mut seen: HashMap<P3, usize> = HashMap::new();
    let mut pts: Vec<P3> = Vec::with_capacity(verts.len() * verts.len());
    let mut pairs: Vec<(u32, u32)> = Vec::with_capacity(verts.len() * verts.len());
    for (i, a) in verts.iter().enumerate() {
        for (j, b) in verts.iter().enumerate() {
            if i == j {
                continue;
            }
            let w = [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
            if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(w) {
                e.insert(pts.len());
                pts.push(w);
                pairs.push((i as u32, j as u32));
            }
        }
    }
    drop(seen);

    let (extreme, facets) = quickhull::hull3(&pts)?;
    let normals: Vec<IntPoint> = facets
        .iter()
        .map(|f| {
            f.normal
                .iter()
                .map(|&c| narrow(c, "difference body normal"))
                .collect::<Result<Vec<_>>>()
                .map(|v| IntPoint::from(v).primitive())
        })
        .collect::<Result<_>>()?;
    let mut owner: HashMap<(u32, u32), usize> = HashMap::with_capacity(3 * facets.len());
    let mut incident: HashMap<u32, usize> = HashMap::new();
    for (fi, f) in facets.iter().enumerate() {
        for k in 0..3 {
            owner.insert((f.verts[k], f.verts[(k + 1) % 3]), fi);
            incident.entry(f.verts[k]).or_insert(fi);
        }
    }

    let mut cones = Vec::new();
    for &w in &extreme {
        let wp = IntPoint::new(&pts[w as usize]);
        if !wp.is_sign_canonical() {
            continue;
        }
        // walk the facets around w: from (w, x, y) step to the owner of (w, y)
        let start = incident[&w];
        let mut ring: Vec<IntPoint> = Vec::new();
        let mut f = start;
        loop {
            let v = facets[f].verts;
            let k = v.iter().position(|&u| u == w).expect("incident facet");
            let y = v[(k + 2) % 3];
            if ring.last() != Some(&normals[f]) {
                ring.push(normals[f].clone());
            }
            f = owner[&(w, y)];
            if f == start {
                break;
            }
        }
        if ring.len() > 1 && ring.first() == ring.last() {
            ring.pop();
        }
        debug_assert!(ring.len() >= 3, "extreme vertex with {} normals", ring.len());
        let (i, j) = pairs[w as usize];
        let (p, q) = (hull.vertices()[i as usize].clone(), hull.vertices()[j as usize].clone());
        for t in 1..ring.len() - 1 {
            cones.push(AntipodalCone {
                p: p.clone(),
                q: q.clone(),
                diff: wp.clone(),
                generators: vec![ring[0].clone(), ring[t].clone(), ring[t + 1].clone()],
            });
        }
    }
    Ok(cones)
}
