use std::collections::HashMap;
use std::f64::consts::PI;

use crate::error::{Error, Result};

/// Deepest icosphere subdivision accepted by [`mesh_sphere`].
pub const MAX_SPHERE_LEVEL: u32 = 8;

/// One flat element of a discretized hypersurface.
#[derive(Debug, Clone, PartialEq)]
pub struct SurfaceElement {
    pub centroid: Vec<f64>,
    pub area: f64,
    pub normal: Vec<f64>,
    pub density: f64,
    /// Radius of a ball around the centroid containing the element.
    pub extent: f64,
}

/// An oriented, discretized `(n-1)`-surface in `R^n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Hypersurface {
    dim: usize,
    elements: Vec<SurfaceElement>,
    closed: bool,
    refinement_level: u32,
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

impl Hypersurface {
    pub fn new(dim: usize, elements: Vec<SurfaceElement>, closed: bool, refinement_level: u32) -> Result<Self> {
        if dim < 2 {
            return Err(Error::InvalidGeometry(format!("hypersurfaces need dim >= 2, got {dim}")));
        }
        if elements.is_empty() {
            return Err(Error::InvalidGeometry("surface has no elements".into()));
        }
        for (k, e) in elements.iter().enumerate() {
            if e.centroid.len() != dim || e.normal.len() != dim {
                return Err(Error::InvalidGeometry(format!("element {k} has wrong dimension")));
            }
            if (norm(&e.normal) - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidGeometry(format!("element {k} normal is not unit length")));
            }
            if !(e.area > 0.0) || !(e.density > 0.0) {
                return Err(Error::InvalidGeometry(format!(
                    "element {k} needs positive area and density"
                )));
            }
        }
        Ok(Self {
            dim,
            elements,
            closed,
            refinement_level,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn elements(&self) -> &[SurfaceElement] {
        &self.elements
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn refinement_level(&self) -> u32 {
        self.refinement_level
    }

    pub fn total_area(&self) -> f64 {
        self.elements.iter().map(|e| e.area).sum()
    }

    /// Centroid-rule estimate of the solid angle subtended at `point`; about
    /// `4π` for an interior point of a closed surface in `R^3` and `0` outside.
    pub fn solid_angle(&self, point: &[f64]) -> f64 {
        self.elements
            .iter()
            .map(|e| {
                let d = sub(&e.centroid, point);
                let r = norm(&d);
                e.area * dot(&e.normal, &d) / r.powi(self.dim as i32)
            })
            .sum()
    }

    /// Diagonal of the bounding box of the element balls.
    pub fn diameter(&self) -> f64 {
        let mut lo = vec![f64::INFINITY; self.dim];
        let mut hi = vec![f64::NEG_INFINITY; self.dim];
        for e in &self.elements {
            for j in 0..self.dim {
                lo[j] = lo[j].min(e.centroid[j] - e.extent);
                hi[j] = hi[j].max(e.centroid[j] + e.extent);
            }
        }
        norm(&sub(&hi, &lo))
    }

    /// Lower bound on the distance from `x` to the surface: each element lies
    /// in its own hyperplane and inside a ball of radius `extent`.
    pub fn distance_lower_bound(&self, x: &[f64]) -> f64 {
        self.elements
            .iter()
            .map(|e| {
                let d = sub(x, &e.centroid);
                let plane = dot(&d, &e.normal).abs();
                plane.max(norm(&d) - e.extent)
            })
            .fold(f64::INFINITY, f64::min)
    }
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn triangle_element(v: [[f64; 3]; 3], inside: [f64; 3], density: f64) -> SurfaceElement {
    let centroid: Vec<f64> = (0..3).map(|j| (v[0][j] + v[1][j] + v[2][j]) / 3.0).collect();
    let e1 = [v[1][0] - v[0][0], v[1][1] - v[0][1], v[1][2] - v[0][2]];
    let e2 = [v[2][0] - v[0][0], v[2][1] - v[0][1], v[2][2] - v[0][2]];
    let n = cross(e1, e2);
    let len = norm(&n);
    let mut normal: Vec<f64> = n.iter().map(|x| x / len).collect();
    if dot(&normal, &sub(&centroid, &inside)) < 0.0 {
        normal.iter_mut().for_each(|x| *x = -*x);
    }
    let extent = v
        .iter()
        .map(|p| norm(&sub(p, &centroid)))
        .fold(0.0, f64::max);
    SurfaceElement {
        centroid,
        area: 0.5 * len,
        normal,
        density,
        extent,
    }
}

/// Outward-oriented icosphere: the icosahedron subdivided `level` times with
/// new vertices projected onto the sphere. Has `20 * 4^level` flat triangles.
pub fn mesh_sphere(center: [f64; 3], radius: f64, level: u32) -> Result<Hypersurface> {
    if !(radius > 0.0 && radius.is_finite()) {
        return Err(Error::InvalidGeometry(format!("sphere radius must be positive, got {radius}")));
    }
    if level > MAX_SPHERE_LEVEL {
        return Err(Error::ResourceLimit {
            level,
            max: MAX_SPHERE_LEVEL,
        });
    }
    let t = (1.0 + 5f64.sqrt()) / 2.0;
    let mut verts: Vec<[f64; 3]> = [
        [-1.0, t, 0.0],
        [1.0, t, 0.0],
        [-1.0, -t, 0.0],
        [1.0, -t, 0.0],
        [0.0, -1.0, t],
        [0.0, 1.0, t],
        [0.0, -1.0, -t],
        [0.0, 1.0, -t],
        [t, 0.0, -1.0],
        [t, 0.0, 1.0],
        [-t, 0.0, -1.0],
        [-t, 0.0, 1.0],
    ]
    .iter()
    .map(|v| {
        let n = norm(v);
        [v[0] / n, v[1] / n, v[2] / n]
    })
    .collect();
    let mut faces: Vec<[usize; 3]> = vec![
        [0, 11, 5],
        [0, 5, 1],
        [0, 1, 7],
        [0, 7, 10],
        [0, 10, 11],
        [1, 5, 9],
        [5, 11, 4],
        [11, 10, 2],
        [10, 7, 6],
        [7, 1, 8],
        [3, 9, 4],
        [3, 4, 2],
        [3, 2, 6],
        [3, 6, 8],
        [3, 8, 9],
        [4, 9, 5],
        [2, 4, 11],
        [6, 2, 10],
        [8, 6, 7],
        [9, 8, 1],
    ];

    for _ in 0..level {
        let mut midpoints: HashMap<(usize, usize), usize> = HashMap::new();
        let mut midpoint = |i: usize, j: usize, verts: &mut Vec<[f64; 3]>| -> usize {
            let key = (i.min(j), i.max(j));
            *midpoints.entry(key).or_insert_with(|| {
                let m = [
                    verts[i][0] + verts[j][0],
                    verts[i][1] + verts[j][1],
                    verts[i][2] + verts[j][2],
                ];
                let n = norm(&m);
                verts.push([m[0] / n, m[1] / n, m[2] / n]);
                verts.len() - 1
            })
        };
        let mut next = Vec::with_capacity(faces.len() * 4);
        for [a, b, c] in faces {
            let ab = midpoint(a, b, &mut verts);
            let bc = midpoint(b, c, &mut verts);
            let ca = midpoint(c, a, &mut verts);
            next.extend([[a, ab, ca], [b, bc, ab], [c, ca, bc], [ab, bc, ca]]);
        }
        faces = next;
    }

    let place = |v: [f64; 3]| {
        [
            center[0] + radius * v[0],
            center[1] + radius * v[1],
            center[2] + radius * v[2],
        ]
    };
    let elements = faces
        .iter()
        .map(|f| triangle_element([place(verts[f[0]]), place(verts[f[1]]), place(verts[f[2]])], center, 1.0))
        .collect();
    Hypersurface::new(3, elements, true, level)
}

/// The truncated hyperplane `{x_axis = 0, |x_j| <= extent}` in `R^dim`, tiled
/// into `cells^(dim-1)` cubes with normal `e_{axis+1}` and constant density.
/// `axis` is 0-based.
pub fn mesh_flat_patch(dim: usize, axis: usize, extent: f64, cells: usize, density: f64) -> Result<Hypersurface> {
    if dim < 2 || axis >= dim {
        return Err(Error::InvalidGeometry(format!("bad patch axis {axis} for dim {dim}")));
    }
    if !(extent > 0.0) || cells == 0 {
        return Err(Error::InvalidGeometry("patch needs extent > 0 and at least one cell".into()));
    }
    let h = 2.0 * extent / cells as f64;
    let tangential: Vec<usize> = (0..dim).filter(|&j| j != axis).collect();
    let count = cells.pow(tangential.len() as u32);
    let mut normal = vec![0.0; dim];
    normal[axis] = 1.0;
    let extent_ball = 0.5 * h * (tangential.len() as f64).sqrt();
    let elements = (0..count)
        .map(|mut idx| {
            let mut centroid = vec![0.0; dim];
            for &j in &tangential {
                let k = idx % cells;
                idx /= cells;
                centroid[j] = -extent + (k as f64 + 0.5) * h;
            }
            SurfaceElement {
                centroid,
                area: h.powi(tangential.len() as i32),
                normal: normal.clone(),
                density,
                extent: extent_ball,
            }
        })
        .collect();
    Hypersurface::new(dim, elements, false, 0)
}

/// Outward-oriented boundary of the axis-aligned box `[lo, hi]` in `R^3`, each
/// face split into `cells x cells` rectangles.
pub fn mesh_box(lo: [f64; 3], hi: [f64; 3], cells: usize) -> Result<Hypersurface> {
    if cells == 0 || (0..3).any(|j| !(hi[j] > lo[j])) {
        return Err(Error::InvalidGeometry("box needs hi > lo and at least one cell".into()));
    }
    let mut elements = Vec::with_capacity(6 * cells * cells);
    for axis in 0..3 {
        let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
        let hu = (hi[u] - lo[u]) / cells as f64;
        let hv = (hi[v] - lo[v]) / cells as f64;
        for (side, sign) in [(lo[axis], -1.0), (hi[axis], 1.0)] {
            for i in 0..cells {
                for k in 0..cells {
                    let mut centroid = vec![0.0; 3];
                    centroid[axis] = side;
                    centroid[u] = lo[u] + (i as f64 + 0.5) * hu;
                    centroid[v] = lo[v] + (k as f64 + 0.5) * hv;
                    let mut normal = vec![0.0; 3];
                    normal[axis] = sign;
                    elements.push(SurfaceElement {
                        centroid,
                        area: hu * hv,
                        normal,
                        density: 1.0,
                        extent: 0.5 * (hu * hu + hv * hv).sqrt(),
                    });
                }
            }
        }
    }
    Hypersurface::new(3, elements, true, 0)
}

/// Area of the regular icosahedron inscribed in the unit sphere.
pub fn unit_icosahedron_area() -> f64 {
    let s = 4.0 / (10.0 + 2.0 * 5f64.sqrt()).sqrt();
    20.0 * (3f64.sqrt() / 4.0) * s * s
}

/// `4π r^2`.
pub fn sphere_area(radius: f64) -> f64 {
    4.0 * PI * radius * radius
}
