//! Seeded random cones, functionals and separation instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::io::{Instance, SeminormSpec};
use crate::numerics::{Functional, Scalar, Vector};
use crate::polyhedra::{ConeUnion, ConvexConePiece, MAX_DIM, MAX_GENERATORS};
use crate::separation::{check_hypotheses, SeparationProblem, Variant};

pub type InstanceRng = ChaCha8Rng;

pub fn rng(seed: u64) -> InstanceRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Coordinates in `-bound..=bound`.
pub fn int_vector<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> Vector {
    Vector::from_ints(&(0..dim).map(|_| rng.gen_range(-bound..=bound)).collect::<Vec<_>>())
}

pub fn nonzero_vector<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> Vector {
    loop {
        let v = int_vector(rng, dim, bound);
        if !v.is_zero() {
            return v;
        }
    }
}

/// `p/q` with `|p| ≤ bound`, `1 ≤ q ≤ bound`.
pub fn rational<R: Rng>(rng: &mut R, bound: i64) -> Scalar {
    Scalar::ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}

pub fn rational_vector<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> Vector {
    Vector::new((0..dim).map(|_| rational(rng, bound)).collect())
}

pub fn functional<R: Rng>(rng: &mut R, dim: usize, bound: i64) -> Functional {
    Functional::new(nonzero_vector(rng, dim, bound))
}

/// A nonzero vector `v` with `d·v > 0`.
pub fn vector_in_halfspace<R: Rng>(rng: &mut R, d: &Vector, bound: i64) -> Vector {
    loop {
        let v = int_vector(rng, d.dim(), bound);
        if d.dot(&v).is_positive() {
            return v;
        }
    }
}

pub fn piece<R: Rng>(rng: &mut R, dim: usize, generators: usize, bound: i64) -> Result<ConvexConePiece> {
    let gens: Vec<Vector> = (0..generators).map(|_| nonzero_vector(rng, dim, bound)).collect();
    ConvexConePiece::from_generators(&gens, dim)
}

/// Pointed piece with generators strictly on the positive side of `d`.
pub fn pointed_piece<R: Rng>(rng: &mut R, d: &Vector, generators: usize, bound: i64) -> Result<ConvexConePiece> {
    let gens: Vec<Vector> = (0..generators).map(|_| vector_in_halfspace(rng, d, bound)).collect();
    ConvexConePiece::from_generators(&gens, d.dim())
}

/// Solid pointed piece: `dim` generators around `d` plus extras, redrawn
/// until full-dimensional.
pub fn solid_pointed_piece<R: Rng>(rng: &mut R, d: &Vector, generators: usize, bound: i64) -> Result<ConvexConePiece> {
    let count = generators.max(d.dim());
    loop {
        let p = pointed_piece(rng, d, count, bound)?;
        if p.is_full_dim() {
            return Ok(p);
        }
    }
}

/// Union of `pieces` random pieces, each with up to `generators` generators.
pub fn cone<R: Rng>(rng: &mut R, dim: usize, pieces: usize, generators: usize, bound: i64) -> Result<ConeUnion> {
    let mut out = Vec::with_capacity(pieces);
    for _ in 0..pieces {
        let g = rng.gen_range(1..=generators);
        out.push(piece(rng, dim, g, bound)?);
    }
    ConeUnion::new(out)
}

/// Union of pieces all inside the open halfspace `d > 0`, hence pointed.
pub fn pointed_cone<R: Rng>(rng: &mut R, d: &Vector, pieces: usize, generators: usize, bound: i64) -> Result<ConeUnion> {
    let mut out = Vec::with_capacity(pieces);
    for _ in 0..pieces {
        let g = rng.gen_range(1..=generators);
        out.push(pointed_piece(rng, d, g, bound)?);
    }
    ConeUnion::new(out)
}

/// A random cone with a nontrivial lineality space: a pointed piece plus a
/// line, or a piece together with its negative.
pub fn non_pointed_cone<R: Rng>(rng: &mut R, dim: usize, generators: usize, bound: i64) -> Result<ConeUnion> {
    loop {
        let d = nonzero_vector(rng, dim, bound);
        let p = pointed_piece(rng, &d, generators.max(1), bound)?;
        let u = if rng.gen_bool(0.5) {
            let mut gens = p.generators();
            let line = nonzero_vector(rng, dim, bound);
            gens.push(line.neg());
            gens.push(line);
            ConeUnion::convex(ConvexConePiece::from_generators(&gens, dim)?)
        } else {
            ConeUnion::new(vec![p.clone(), p.neg()])?
        };
        if u.check_nontrivial("K").is_ok() && !u.is_pointed()? {
            return Ok(u);
        }
    }
}

/// Parameters of `random_instance`.
#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub dim: usize,
    pub pieces: usize,
    pub generators: usize,
    pub seed: u64,
    /// Rejection-sample until this variant's hypotheses hold.
    pub request: Option<Variant>,
    pub seminorm: SeminormSpec,
    pub max_attempts: usize,
}

impl RandomSpec {
    pub fn new(dim: usize, seed: u64) -> Self {
        RandomSpec {
            dim,
            pieces: 2,
            generators: 3,
            seed,
            request: None,
            seminorm: SeminormSpec::Linf,
            max_attempts: 200,
        }
    }

    pub fn check(&self) -> Result<()> {
        if !(2..=MAX_DIM).contains(&self.dim) {
            return Err(Error::parse("n", format!("dimension must lie in 2..={MAX_DIM}, got {}", self.dim)));
        }
        if !(1..=4).contains(&self.pieces) {
            return Err(Error::parse("pieces", format!("pieces must lie in 1..=4, got {}", self.pieces)));
        }
        if !(1..=MAX_GENERATORS).contains(&self.generators) {
            return Err(Error::parse(
                "generators",
                format!("generators must lie in 1..={MAX_GENERATORS}, got {}", self.generators),
            ));
        }
        Ok(())
    }
}

const BOUND: i64 = 4;

fn candidate(rng: &mut InstanceRng, spec: &RandomSpec, psi: &crate::seminorms::PolyhedralSeminorm) -> Result<SeparationProblem> {
    let variant = spec.request.unwrap_or(Variant::Strict);
    let n = spec.dim;
    let d = nonzero_vector(rng, n, BOUND);
    // Sampling both cones on the positive side of `d` makes -K and A
    // separable; otherwise the cones are unconstrained.
    let biased = spec.request.is_some() && rng.gen_bool(0.8);
    let (k, a) = if biased {
        let mut k_pieces = Vec::new();
        for _ in 0..rng.gen_range(1..=spec.pieces) {
            let g = rng.gen_range(1..=spec.generators);
            k_pieces.push(if variant == Variant::Proper {
                solid_pointed_piece(rng, &d, g, BOUND)?
            } else {
                pointed_piece(rng, &d, g, BOUND)?
            });
        }
        let mut a_pieces = Vec::new();
        for _ in 0..rng.gen_range(1..=spec.pieces) {
            let g = rng.gen_range(1..=spec.generators);
            if variant == Variant::StrictBoundary {
                a_pieces.push(solid_pointed_piece(rng, &d, g, BOUND)?);
            } else {
                a_pieces.push(pointed_piece(rng, &d, g, BOUND)?);
            }
        }
        (ConeUnion::new(k_pieces)?, ConeUnion::new(a_pieces)?)
    } else {
        let kp = rng.gen_range(1..=spec.pieces);
        let ap = rng.gen_range(1..=spec.pieces);
        (
            cone(rng, n, kp, spec.generators, BOUND)?,
            cone(rng, n, ap, spec.generators, BOUND)?,
        )
    };
    SeparationProblem::new(k, a, psi.clone(), variant)
}

/// Deterministic in `spec`. Candidates that are trivial, not normlike, or
/// (with a request) fail the requested hypotheses are rejected.
pub fn random_instance(spec: &RandomSpec) -> Result<Instance> {
    spec.check()?;
    let psi = spec.seminorm.build(spec.dim)?;
    let mut rng = rng(spec.seed);
    for _ in 0..spec.max_attempts {
        let problem = match candidate(&mut rng, spec, &psi) {
            Ok(p) => p,
            Err(_) => continue,
        };
        if let Some(v) = spec.request {
            match check_hypotheses(&problem.with_variant(v)) {
                Ok(r) if r.holds => {}
                _ => continue,
            }
        }
        return Ok(Instance {
            name: None,
            seminorm: spec.seminorm.clone(),
            problem,
            seed: Some(spec.seed),
        });
    }
    Err(Error::RejectionLimit(spec.max_attempts))
}

/// Shuffled copy, for order-independence checks.
pub fn shuffled<T: Clone, R: Rng>(rng: &mut R, items: &[T]) -> Vec<T> {
    let mut v = items.to_vec();
    v.shuffle(rng);
    v
}
