#![allow(dead_code)]

use diagcheb::poly::{Monomial, MultiPoly};
use diagcheb::sets::BoundingBox;

pub fn poly(dim: usize, terms: &[(&[u32], f64)]) -> MultiPoly {
    MultiPoly::from_terms(dim, terms.iter().map(|(e, c)| (Monomial::new(e.to_vec()), *c))).unwrap()
}

fn unit(dim: usize, i: usize, e: u32) -> Vec<u32> {
    let mut v = vec![0; dim];
    v[i] = e;
    v
}

/// `1 − x_j²` for each coordinate.
pub fn box_constraints(dim: usize) -> Vec<MultiPoly> {
    (0..dim).map(|i| poly(dim, &[(&vec![0; dim], 1.0), (&unit(dim, i, 2), -1.0)])).collect()
}

/// `r² − Σ (x_i − c_i)²`
pub fn ball(center: &[f64], r: f64) -> MultiPoly {
    let d = center.len();
    let mut p = MultiPoly::constant(d, r * r);
    for (i, c) in center.iter().enumerate() {
        let t = &MultiPoly::var(d, i) - &MultiPoly::constant(d, *c);
        p = &p - &(&t * &t);
    }
    p
}

/// `1 − Σ (x_i / s_i)²`
pub fn ellipse(semi: &[f64]) -> MultiPoly {
    let d = semi.len();
    let mut terms = vec![(vec![0; d], 1.0)];
    for (i, s) in semi.iter().enumerate() {
        terms.push((unit(d, i, 2), -1.0 / (s * s)));
    }
    MultiPoly::from_terms(d, terms.into_iter().map(|(e, c)| (Monomial::new(e), c))).unwrap()
}

/// `c + ⟨w, x⟩`
pub fn affine(w: &[f64], c: f64) -> MultiPoly {
    let d = w.len();
    let mut terms = vec![(vec![0; d], c)];
    for (i, wi) in w.iter().enumerate() {
        terms.push((unit(d, i, 1), *wi));
    }
    MultiPoly::from_terms(d, terms.into_iter().map(|(e, c)| (Monomial::new(e), c))).unwrap()
}

pub fn bbox(lo: f64, hi: f64, dim: usize) -> BoundingBox {
    BoundingBox { lo: vec![lo; dim], hi: vec![hi; dim] }
}

pub struct Instance {
    pub name: &'static str,
    pub g: Vec<MultiPoly>,
    pub bbox: BoundingBox,
}

/// Compact semi-algebraic sets for hierarchy properties.
pub fn corpus() -> Vec<Instance> {
    vec![
        Instance { name: "box d=2", g: box_constraints(2), bbox: bbox(-1.0, 1.0, 2) },
        Instance { name: "box d=3", g: box_constraints(3), bbox: bbox(-1.0, 1.0, 3) },
        Instance { name: "disk", g: vec![ball(&[0.0, 0.0], 1.0)], bbox: bbox(-1.0, 1.0, 2) },
        Instance { name: "ball d=3", g: vec![ball(&[0.0; 3], 1.0)], bbox: bbox(-1.0, 1.0, 3) },
        Instance { name: "off-center disk", g: vec![ball(&[0.5, -0.5], 1.0)], bbox: bbox(-1.5, 1.5, 2) },
        Instance { name: "translated disk", g: vec![ball(&[1.0, 1.0], 1.0)], bbox: bbox(0.0, 2.0, 2) },
        Instance { name: "ellipse", g: vec![ellipse(&[2.0, 1.0])], bbox: bbox(-2.0, 2.0, 2) },
        Instance {
            name: "triangle",
            g: vec![affine(&[1.0, 0.0], 1.0), affine(&[0.0, 1.0], 1.0), affine(&[-1.0, -1.0], 1.0)],
            bbox: bbox(-1.0, 2.0, 2),
        },
        Instance {
            name: "cross-polytope",
            g: vec![
                affine(&[-1.0, -1.0], 1.0),
                affine(&[1.0, -1.0], 1.0),
                affine(&[-1.0, 1.0], 1.0),
                affine(&[1.0, 1.0], 1.0),
            ],
            bbox: bbox(-1.0, 1.0, 2),
        },
        Instance {
            name: "half disk",
            g: vec![ball(&[0.0, 0.0], 1.0), affine(&[1.0, 0.0], 0.0)],
            bbox: bbox(-1.0, 1.0, 2),
        },
    ]
}
