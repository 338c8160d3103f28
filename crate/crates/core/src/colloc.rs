//! Construction of the Bézier collocation matrix on triangle domain points,
//! its integer companion, the univariate edge blocks, and the block
//! factorization induced by the blocked ordering.
//!
//! A rational matrix is stored as an integer matrix together with a power of
//! the degree as a uniform denominator: the collocation matrix `M_Γ` is kept
//! as the integer matrix `d^d·M_Γ`, the companion `N_Γ` needs no denominator.
//! This keeps every determinant fraction-free and exact.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::comb::{edge_interior, Composition, Edge, GammaSet};
use crate::error::{Error, Result};
use crate::linalg::{bareiss_det, IntMatrix};

/// Square matrix of arbitrary-precision integers scaled by `degree^denom_exp`:
/// the represented rational matrix is `entries / degree^denom_exp`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    degree: u32,
    denom_exp: u32,
    mat: IntMatrix,
}

impl ExactMatrix {
    pub fn new(degree: u32, denom_exp: u32, mat: IntMatrix) -> Self {
        ExactMatrix {
            degree,
            denom_exp,
            mat,
        }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn denom_exp(&self) -> u32 {
        self.denom_exp
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    pub fn integer_matrix(&self) -> &IntMatrix {
        &self.mat
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigInt {
        self.mat.get(r, c)
    }

    /// The common denominator `degree^denom_exp`.
    pub fn denominator(&self) -> BigInt {
        BigInt::from(self.degree).pow(self.denom_exp)
    }

    pub fn rational_entry(&self, r: usize, c: usize) -> BigRational {
        BigRational::new(self.entry(r, c).clone(), self.denominator())
    }

    /// Exact determinant of the represented rational matrix.
    pub fn det_rational(&self) -> Result<BigRational> {
        let scaled = bareiss_det(&self.mat)?;
        let denom = self.denominator().pow(self.dim() as u32);
        Ok(BigRational::new(scaled, denom))
    }

    /// Exact determinant of the stored integer matrix.
    pub fn det_scaled(&self) -> Result<BigInt> {
        bareiss_det(&self.mat)
    }

    /// `self + selfᵀ` over the common denominator.
    pub fn plus_transpose(&self) -> ExactMatrix {
        ExactMatrix {
            degree: self.degree,
            denom_exp: self.denom_exp,
            mat: self.mat.plus_transpose(),
        }
    }

    /// Exact trace of the represented rational matrix.
    pub fn trace_rational(&self) -> BigRational {
        let sum: BigInt = (0..self.dim()).map(|r| self.entry(r, r).clone()).sum();
        BigRational::new(sum, self.denominator())
    }
}

/// Exact multinomial coefficient `d! / (i!·j!·k!)` for a composition of `d`.
pub fn multinomial(c: &Composition) -> BigInt {
    let mut acc = BigInt::one();
    let mut upper = 0u32;
    // Product of binom(upper, part) over the parts telescopes to d!/(i!j!k!).
    for part in c.parts() {
        for t in 1..=part {
            upper += 1;
            acc = acc * BigInt::from(upper) / BigInt::from(t);
        }
    }
    acc
}

/// `base^exp` componentwise with the `0^0 = 1` convention.
pub fn multi_power(base: &Composition, exp: &Composition) -> BigInt {
    let mut acc = BigInt::one();
    for (b, e) in base.parts().into_iter().zip(exp.parts()) {
        if e > 0 {
            acc *= BigInt::from(b).pow(e);
        }
    }
    acc
}

fn require_nonempty(gamma: &GammaSet, what: &str) -> Result<()> {
    if gamma.is_empty() {
        return Err(Error::EmptySet(format!("{what} needs a nonempty index set")));
    }
    Ok(())
}

/// The integer companion `N_Γ` with entries `row^column`.
pub fn build_n(gamma: &GammaSet) -> Result<ExactMatrix> {
    require_nonempty(gamma, "N matrix")?;
    let members = gamma.members();
    let mat = IntMatrix::from_fn(members.len(), |r, c| multi_power(&members[r], &members[c]));
    Ok(ExactMatrix::new(gamma.degree(), 0, mat))
}

/// The collocation matrix `M_Γ`, stored as the integer matrix `d^d·M_Γ` with
/// entries `binom(d, column)·row^column`.
pub fn build_m(gamma: &GammaSet) -> Result<ExactMatrix> {
    require_nonempty(gamma, "M matrix")?;
    let members = gamma.members();
    let binoms: Vec<BigInt> = members.iter().map(multinomial).collect();
    let mat = IntMatrix::from_fn(members.len(), |r, c| {
        &binoms[c] * multi_power(&members[r], &members[c])
    });
    Ok(ExactMatrix::new(gamma.degree(), gamma.degree(), mat))
}

/// Recovers the exact `det M_Γ` from `det N_Γ` via the scaling identity
/// `det N_Γ · ∏ binom(d, i) = d^(d·|Γ|) · det M_Γ`.
pub fn det_m_from_n(gamma: &GammaSet, det_n: &BigInt) -> BigRational {
    let d = gamma.degree();
    let binom_prod: BigInt = gamma.members().iter().map(multinomial).product();
    let denom = BigInt::from(d).pow(d * gamma.len() as u32);
    BigRational::new(det_n * binom_prod, denom)
}

/// Exact value of the Bernstein basis polynomial indexed by `index` at a
/// rational barycentric point. Independent of the matrix builders.
pub fn eval_bernstein(index: &Composition, point: &[BigRational; 3]) -> BigRational {
    let mut acc = BigRational::from_integer(multinomial(index));
    for (coord, e) in point.iter().zip(index.parts()) {
        for _ in 0..e {
            acc *= coord;
        }
    }
    acc
}

/// Barycentric coordinates of the domain point `c / d`.
pub fn domain_point_coords(c: &Composition, d: u32) -> [BigRational; 3] {
    let den = BigInt::from(d);
    c.parts()
        .map(|p| BigRational::new(BigInt::from(p), den.clone()))
}

/// The blocked-order partition of an index set and the diagonal blocks of the
/// corresponding block lower triangular collocation matrix.
#[derive(Debug, Clone)]
pub struct BlockFactorization {
    /// Vertex members (two zero components).
    pub gamma2: GammaSet,
    /// Members on each edge interior, ordered uv, uw, vw.
    pub gamma1_edges: [GammaSet; 3],
    /// Interior members (no zero component).
    pub gamma0: GammaSet,
    /// Diagonal blocks in blocked order: one 1x1 block per vertex member,
    /// one block per nonempty edge part, one interior block.
    pub diagonal_blocks: Vec<ExactMatrix>,
}

impl BlockFactorization {
    /// Sizes of the diagonal blocks in order.
    pub fn block_sizes(&self) -> Vec<usize> {
        self.diagonal_blocks.iter().map(|b| b.dim()).collect()
    }

    /// Exact product of the diagonal block determinants; equals `det M_Γ`.
    pub fn det_product(&self) -> Result<BigRational> {
        let mut acc = BigRational::one();
        for b in &self.diagonal_blocks {
            acc *= b.det_rational()?;
        }
        Ok(acc)
    }
}

/// Splits `Γ` by zero class (and the one-zero class by edge) and builds the
/// diagonal blocks. The collocation matrix in blocked order is block lower
/// triangular, so `det M_Γ` is the product of the block determinants.
pub fn block_factorize(gamma: &GammaSet) -> Result<BlockFactorization> {
    require_nonempty(gamma, "block factorization")?;
    let d = gamma.degree();
    let by_class = |z: u8| -> Vec<Composition> {
        gamma
            .members()
            .iter()
            .filter(|m| m.zero_count() == z)
            .copied()
            .collect()
    };
    let gamma2 = GammaSet::new(d, by_class(2))?;
    let gamma0 = GammaSet::new(d, by_class(0))?;
    let ones = by_class(1);
    let edge_part = |e: Edge| -> Result<GammaSet> {
        GammaSet::new(
            d,
            ones.iter()
                .filter(|m| m.parts()[e.zero_axis()] == 0)
                .copied()
                .collect(),
        )
    };
    let gamma1_edges = [
        edge_part(Edge::Uv)?,
        edge_part(Edge::Uw)?,
        edge_part(Edge::Vw)?,
    ];

    let mut diagonal_blocks = Vec::new();
    for v in gamma2.members() {
        diagonal_blocks.push(build_m(&GammaSet::new(d, vec![*v])?)?);
    }
    for part in &gamma1_edges {
        if !part.is_empty() {
            diagonal_blocks.push(build_m(part)?);
        }
    }
    if !gamma0.is_empty() {
        diagonal_blocks.push(build_m(&gamma0)?);
    }
    Ok(BlockFactorization {
        gamma2,
        gamma1_edges,
        gamma0,
        diagonal_blocks,
    })
}

/// The `(d−1)×(d−1)` univariate Bézier collocation block shared by the three
/// edges, in the `uv` labeling. Identical for the other edges after
/// coordinate relabeling; `edge_blocks_coincide` checks that, exactly.
pub fn univariate_collocation(d: u32) -> Result<ExactMatrix> {
    build_m(&edge_interior(d, Edge::Uv)?)
}

/// Exact equality of the three edge blocks under coordinate relabeling.
pub fn edge_blocks_coincide(d: u32) -> Result<bool> {
    let reference = build_n(&edge_interior(d, Edge::Uv)?)?;
    for e in [Edge::Uw, Edge::Vw] {
        let block = build_n(&edge_interior(d, e)?)?;
        if block.integer_matrix() != reference.integer_matrix() {
            return Ok(false);
        }
        let m_block = build_m(&edge_interior(d, e)?)?;
        let m_ref = univariate_collocation(d)?;
        if m_block.integer_matrix() != m_ref.integer_matrix() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Reduction of a line configuration (one coordinate fixed at `value` across
/// `Γ`) to a univariate collocation companion: every entry of `N_Γ` carries
/// the factor `value^value`, and dividing it out leaves the integer companion
/// of a univariate problem of degree `d − value`. The determinant of the
/// result has the same sign as `det M_Γ`.
pub fn line_config_reduce(gamma: &GammaSet, axis: usize, value: u32) -> Result<ExactMatrix> {
    require_nonempty(gamma, "line configuration")?;
    if axis > 2 {
        return Err(Error::InvalidArgument(format!("axis {axis} out of range")));
    }
    for m in gamma.members() {
        if m.parts()[axis] != value {
            return Err(Error::InvalidConfiguration(format!(
                "member {m} does not have coordinate {axis} fixed at {value}"
            )));
        }
    }
    let n = build_n(gamma)?;
    let divisor = if value == 0 {
        BigInt::one()
    } else {
        BigInt::from(value).pow(value)
    };
    let size = gamma.len();
    let mat = IntMatrix::from_fn(size, |r, c| n.entry(r, c) / &divisor);
    let reduced_degree = gamma.degree() - value;
    Ok(ExactMatrix::new(reduced_degree.max(1), 0, mat))
}
