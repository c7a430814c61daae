//! Operators and states on the qubit ⊗ cavity space.
//!
//! Basis index `q·N + n` for qubit level `q ∈ {0 = ground, 1 = excited}` and
//! Fock level `n < N`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use super::QmeSpec;

pub type CMatrix = DMatrix<Complex64>;

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// Ladder and projector operators for a cavity truncated at `N` levels.
#[derive(Debug, Clone)]
pub struct Operators {
    pub n_levels: usize,
    pub a: CMatrix,
    pub a_dag: CMatrix,
    pub sigma: CMatrix,
    pub sigma_dag: CMatrix,
    /// `a†a`.
    pub number: CMatrix,
    /// `σ†σ`.
    pub qubit_pop: CMatrix,
}

/// Kronecker product `A ⊗ B`.
pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn annihilation(n: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    for k in 1..n {
        m[(k - 1, k)] = Complex64::from((k as f64).sqrt());
    }
    m
}

pub fn build_operators(n: usize) -> Operators {
    let id2 = CMatrix::identity(2, 2);
    let idn = CMatrix::identity(n, n);
    let mut lower = CMatrix::zeros(2, 2);
    lower[(0, 1)] = ONE;
    let a = kron(&id2, &annihilation(n));
    let sigma = kron(&lower, &idn);
    let a_dag = a.adjoint();
    let sigma_dag = sigma.adjoint();
    Operators {
        n_levels: n,
        number: &a_dag * &a,
        qubit_pop: &sigma_dag * &sigma,
        a,
        a_dag,
        sigma,
        sigma_dag,
    }
}

impl Operators {
    pub fn dim(&self) -> usize {
        2 * self.n_levels
    }

    /// `−g(σ†a + a†σ)`: the time-independent part of the Hamiltonian.
    pub fn coupling(&self, g: f64) -> CMatrix {
        (&self.sigma_dag * &self.a + &self.a_dag * &self.sigma) * Complex64::from(-g)
    }

    /// `−(σ† + σ)`: the drive operator, multiplied by `A·sin((t/e)²)`.
    pub fn drive(&self) -> CMatrix {
        -(&self.sigma_dag + &self.sigma)
    }
}

/// Drive envelope `A·sin((t/e)²)`.
pub fn drive_amplitude(t: f64, spec: &QmeSpec) -> f64 {
    spec.a_drive * (t / spec.e).powi(2).sin()
}

/// `H(t) = −g(σ†a + a†σ) − A(σ† + σ)·sin((t/e)²)`.
pub fn hamiltonian(t: f64, spec: &QmeSpec) -> CMatrix {
    let ops = build_operators(spec.n_levels);
    ops.coupling(spec.g) + ops.drive() * Complex64::from(drive_amplitude(t, spec))
}

/// Cached pieces of the Liouvillian for one spec.
#[derive(Debug, Clone)]
pub struct Liouvillian {
    pub ops: Operators,
    h0: CMatrix,
    h1: CMatrix,
    collapse: Vec<CMatrix>,
    /// `½ Σ C†C`.
    half_loss: CMatrix,
    spec: QmeSpec,
}

impl Liouvillian {
    pub fn new(spec: &QmeSpec) -> Self {
        let ops = build_operators(spec.n_levels);
        let collapse: Vec<CMatrix> = spec
            .decay_rates
            .iter()
            .filter(|d| d.rate > 0.0)
            .map(|d| {
                let op = match d.operator {
                    super::DecayChannel::CavityA => &ops.a,
                    super::DecayChannel::QubitSigma => &ops.sigma,
                };
                op * Complex64::from(d.rate.sqrt())
            })
            .collect();
        let dim = ops.dim();
        let mut half_loss = CMatrix::zeros(dim, dim);
        for c in &collapse {
            half_loss += c.adjoint() * c;
        }
        half_loss *= Complex64::from(0.5);
        Liouvillian {
            h0: ops.coupling(spec.g),
            h1: ops.drive(),
            ops,
            collapse,
            half_loss,
            spec: spec.clone(),
        }
    }

    pub fn hamiltonian(&self, t: f64) -> CMatrix {
        &self.h0 + &self.h1 * Complex64::from(drive_amplitude(t, &self.spec))
    }

    pub fn collapse_operators(&self) -> &[CMatrix] {
        &self.collapse
    }

    /// `dρ/dt` with the Hamiltonian `h`.
    pub fn apply_with(&self, h: &CMatrix, rho: &CMatrix) -> CMatrix {
        // −i(Hρ − ρH) − ½{ΣC†C, ρ} + ΣCρC† with H_eff = H − (i/2)ΣC†C.
        let h_eff = h - &self.half_loss * I;
        let mut out = (&h_eff * rho - rho * h_eff.adjoint()) * (-I);
        for c in &self.collapse {
            out += c * rho * c.adjoint();
        }
        out
    }

    /// `dρ/dt` at time `t`.
    pub fn apply(&self, t: f64, rho: &CMatrix) -> CMatrix {
        self.apply_with(&self.hamiltonian(t), rho)
    }
}

/// `dρ/dt` of the master equation at time `t`.
pub fn lindblad_rhs(rho: &CMatrix, t: f64, spec: &QmeSpec) -> CMatrix {
    Liouvillian::new(spec).apply(t, rho)
}

/// `Tr(A·B)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            s += a[(i, k)] * b[(k, i)];
        }
    }
    s
}

/// `|ψ⟩⟨ψ|`.
pub fn projector(psi: &[Complex64]) -> CMatrix {
    let n = psi.len();
    CMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj())
}

/// Qubit in its ground state, cavity in `cavity` (a density matrix on the
/// `N`-level Fock space).
pub fn with_ground_qubit(cavity: &CMatrix) -> CMatrix {
    let mut g = CMatrix::zeros(2, 2);
    g[(0, 0)] = ONE;
    kron(&g, cavity)
}

/// Ground ⊗ vacuum.
pub fn ground_state(n: usize) -> CMatrix {
    with_ground_qubit(&fock_dm(n, 0))
}

pub fn fock_dm(n: usize, k: usize) -> CMatrix {
    let mut m = CMatrix::zeros(n, n);
    m[(k, k)] = ONE;
    m
}

/// Truncated, renormalised coherent state with amplitude `alpha`.
pub fn coherent_dm(n: usize, alpha: Complex64) -> CMatrix {
    let mut psi = Vec::with_capacity(n);
    let mut c = Complex64::from((-0.5 * alpha.norm_sqr()).exp());
    for k in 0..n {
        if k > 0 {
            c *= alpha / (k as f64).sqrt();
        }
        psi.push(c);
    }
    let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let psi: Vec<Complex64> = psi.iter().map(|z| z / norm).collect();
    projector(&psi)
}

/// Truncated, renormalised thermal state with mean occupation `nbar`
/// (before truncation).
pub fn thermal_dm(n: usize, nbar: f64) -> CMatrix {
    let q = nbar / (1.0 + nbar);
    let weights: Vec<f64> = (0..n).map(|k| q.powi(k as i32)).collect();
    let z: f64 = weights.iter().sum();
    let mut m = CMatrix::zeros(n, n);
    for (k, w) in weights.iter().enumerate() {
        m[(k, k)] = Complex64::from(w / z);
    }
    m
}
