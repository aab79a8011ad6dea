//! Čech complexes of finite subsets of the circle, the transform `T_r`, the
//! projection `π_r` and the lift `η`.

use alloc::format;
use alloc::vec::Vec;

use num_traits::One;

use crate::circle::{clockwise_distance, CirclePoint, PointConfiguration};
use crate::classify::{cech_to_vr_scale, BettiProfile};
use crate::cyclic_graph::{check_radius, CyclicGraph};
use crate::homology::{clique_complex, homology, SimplicialComplex, DEFAULT_CAP};
use crate::rational::{int, Rational};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CechParameters {
    x: PointConfiguration,
    r: Rational,
    strict: bool,
}

impl CechParameters {
    pub fn new(x: PointConfiguration, r: Rational, strict: bool) -> Result<Self> {
        check_radius(&r)?;
        Ok(CechParameters { x, r, strict })
    }

    pub fn points(&self) -> &PointConfiguration {
        &self.x
    }

    pub fn r(&self) -> &Rational {
        &self.r
    }

    pub fn strict(&self) -> bool {
        self.strict
    }
}

/// Whether the points of `sigma` (indices into `X`) fit in a closed arc of
/// length `2r` (open arc when strict): `1 - largest gap <= 2r`.
pub fn cech_face(p: &CechParameters, sigma: &[usize]) -> Result<bool> {
    if sigma.is_empty() {
        return Err(Error::EmptySimplex);
    }
    let mut pts: Vec<&CirclePoint> = Vec::with_capacity(sigma.len());
    for &i in sigma {
        if i >= p.x.len() {
            return Err(Error::OutOfRange(format!("vertex {i} not in X")));
        }
        pts.push(p.x.get(i));
    }
    Ok(fits_in_arc(pts, &p.r, p.strict))
}

fn fits_in_arc(mut pts: Vec<&CirclePoint>, r: &Rational, strict: bool) -> bool {
    pts.sort();
    pts.dedup();
    if pts.len() == 1 {
        return true;
    }
    let k = pts.len();
    let gap = (0..k).map(|i| clockwise_distance(pts[i], pts[(i + 1) % k])).max().unwrap();
    let span = Rational::one() - gap;
    let width = r * int(2);
    if strict {
        span < width
    } else {
        span <= width
    }
}

/// The nerve `Č(X; r)`.
pub fn cech_complex(p: &CechParameters) -> Result<SimplicialComplex> {
    let pts = p.x.points();
    SimplicialComplex::hereditary(pts.len(), DEFAULT_CAP, |face, v| {
        let sigma: Vec<&CirclePoint> = face.iter().map(|&u| &pts[u]).chain([&pts[v]]).collect();
        fits_in_arc(sigma, &p.r, p.strict)
    })
}

/// `T_r(X) = s X ∪ (s (X ∩ [0, 2r)) + s)` with `s = 1/(1+2r)`.
pub fn transform_t(x: &PointConfiguration, r: &Rational) -> Result<PointConfiguration> {
    check_radius(r)?;
    let two_r = r * int(2);
    let s = Rational::one() / (Rational::one() + &two_r);
    let mut out: Vec<CirclePoint> = Vec::with_capacity(2 * x.len());
    for p in x {
        out.push(CirclePoint::new(p.value() * &s)?);
        if *p.value() < two_r {
            out.push(CirclePoint::new(p.value() * &s + &s)?);
        }
    }
    out.sort();
    out.dedup();
    PointConfiguration::new(out)
}

/// `π_r(y) = (1+2r) y mod 1`.
pub fn project_pi(y: &CirclePoint, r: &Rational) -> Result<CirclePoint> {
    check_radius(r)?;
    Ok(CirclePoint::wrap(y.value() * (Rational::one() + r * int(2))))
}

/// `η(y) = ((1+2r)/(1+2r₂)) y` for `r <= r₂`.
pub fn lift_eta(y: &CirclePoint, r: &Rational, r2: &Rational) -> Result<CirclePoint> {
    check_radius(r)?;
    check_radius(r2)?;
    if r > r2 {
        return Err(Error::OutOfRange("lift needs r <= r2".into()));
    }
    let f = (Rational::one() + r * int(2)) / (Rational::one() + r2 * int(2));
    CirclePoint::new(y.value() * f)
}

/// A face of the Čech complex and a cone apex for its preimage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberWitness {
    /// Face of `Č_≤(X; r)` as indices into `X`.
    pub face: Vec<usize>,
    /// Its preimage as indices into `T_r(X)`.
    pub preimage: Vec<usize>,
    /// A preimage vertex adjacent to all the others, if any.
    pub apex: Option<usize>,
}

/// Outcome of [`verify_pi_simplicial`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiReport {
    pub transformed: PointConfiguration,
    pub vr_scale: Rational,
    /// `π_r` on vertices, as indices from `T_r(X)` into `X`.
    pub projection: Vec<usize>,
    /// Faces of the Vietoris–Rips side whose image is not a Čech face.
    pub face_violations: Vec<Vec<usize>>,
    pub fibers: Vec<FiberWitness>,
    pub vr_homology: BettiProfile,
    pub cech_homology: BettiProfile,
}

impl PiReport {
    pub fn faces_map_to_faces(&self) -> bool {
        self.face_violations.is_empty()
    }

    pub fn fibers_are_cones(&self) -> bool {
        self.fibers.iter().all(|f| f.apex.is_some())
    }

    pub fn homology_agrees(&self) -> bool {
        self.vr_homology == self.cech_homology
    }

    pub fn passed(&self) -> bool {
        self.faces_map_to_faces() && self.fibers_are_cones() && self.homology_agrees()
    }
}

/// Checks that `π_r : VR_≤(T_r(X); 2r/(1+2r)) → Č_≤(X; r)` is simplicial,
/// that every face preimage is a cone, and that both sides have the same
/// homology.
pub fn verify_pi_simplicial(x: &PointConfiguration, r: &Rational) -> Result<PiReport> {
    check_radius(r)?;
    if x.is_empty() {
        return Err(Error::EmptyConfiguration);
    }
    let t = transform_t(x, r)?;
    if t.len() > DEFAULT_CAP {
        return Err(Error::OverCap { size: t.len(), cap: DEFAULT_CAP });
    }
    let rho = cech_to_vr_scale(r);
    let g = CyclicGraph::vr_digraph(&t, &rho, false)?;
    let k = clique_complex(&g)?;
    let params = CechParameters::new(x.clone(), r.clone(), false)?;
    let l = cech_complex(&params)?;

    let projection: Vec<usize> = t
        .iter()
        .map(|y| {
            let img = project_pi(y, r)?;
            x.position(&img).ok_or_else(|| Error::Invariant(format!("π_r({y}) = {img} is not in X")))
        })
        .collect::<Result<_>>()?;

    let mut face_violations = Vec::new();
    for f in k.iter_faces() {
        let mut img: Vec<usize> = f.iter().map(|&v| projection[v]).collect();
        img.sort_unstable();
        img.dedup();
        if !l.contains(&img) {
            face_violations.push(f.clone());
        }
    }

    let fibers = l
        .iter_faces()
        .map(|tau| {
            let preimage: Vec<usize> = (0..t.len()).filter(|&v| tau.contains(&projection[v])).collect();
            let apex = preimage.iter().copied().find(|&a| preimage.iter().all(|&b| a == b || g.adjacent(a, b)));
            FiberWitness { face: tau.clone(), preimage, apex }
        })
        .collect();

    Ok(PiReport {
        transformed: t,
        vr_scale: rho,
        projection,
        face_violations,
        fibers,
        vr_homology: homology(&k)?,
        cech_homology: homology(&l)?,
    })
}
