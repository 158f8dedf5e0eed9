use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::exactpoly::{linear_form, RatMat2, RatPoly2, Rational};

/// Rank-2 simple Lie algebra type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AlgebraId {
    A2,
    B2,
    G2,
}

impl AlgebraId {
    pub const ALL: [AlgebraId; 3] = [AlgebraId::A2, AlgebraId::B2, AlgebraId::G2];

    pub fn name(self) -> &'static str {
        match self {
            AlgebraId::A2 => "A2",
            AlgebraId::B2 => "B2",
            AlgebraId::G2 => "G2",
        }
    }

    /// Order of the Weyl group.
    pub fn weyl_order(self) -> usize {
        match self {
            AlgebraId::A2 => 6,
            AlgebraId::B2 => 8,
            AlgebraId::G2 => 12,
        }
    }
}

impl fmt::Display for AlgebraId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AlgebraId {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "A2" => Ok(AlgebraId::A2),
            "B2" => Ok(AlgebraId::B2),
            "G2" => Ok(AlgebraId::G2),
            _ => Err(format!("unknown algebra '{s}' (expected A2, B2 or G2)")),
        }
    }
}

/// Root length class. A2 has a single class, `Uniform`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
    Uniform,
}

impl LengthClass {
    pub fn name(self) -> &'static str {
        match self {
            LengthClass::Short => "short",
            LengthClass::Long => "long",
            LengthClass::Uniform => "uniform",
        }
    }
}

impl fmt::Display for LengthClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A positive root `m1*α1 + m2*α2`, read on the Cartan as the linear form `m1*x1 + m2*x2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PositiveRoot {
    pub coeffs: [i64; 2],
    pub class: LengthClass,
}

impl PositiveRoot {
    pub fn form(&self) -> RatPoly2 {
        linear_form(self.coeffs[0], self.coeffs[1])
    }

    pub fn label(&self) -> String {
        let name = |m: i64, i: usize| match m {
            0 => None,
            1 => Some(format!("a{i}")),
            _ => Some(format!("{m}a{i}")),
        };
        [name(self.coeffs[0], 1), name(self.coeffs[1], 2)]
            .into_iter()
            .flatten()
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Per-length-class discriminant data and aggregate coefficients.
///
/// `disc_b(I1, I2) = disc_alpha`. The explicit forms satisfy
/// `d(disc_b) = num_scale * explicit_num` and `disc_b = den_scale * explicit_den`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassData {
    pub class: LengthClass,
    /// `±Π α²` over the roots of this class, in Cartan coordinates.
    pub disc_alpha: RatPoly2,
    /// The same factor as a polynomial in `(b1, b2)`.
    pub disc_b: RatPoly2,
    /// Coefficients of `u1`, `u2` in the numerator of the explicit formula.
    pub explicit_num: [RatPoly2; 2],
    /// Denominator section of the explicit formula.
    pub explicit_den: RatPoly2,
    pub num_scale: Rational,
    pub den_scale: Rational,
    /// κ-square of the ∇λ direction for roots of this class.
    pub killing_square: Rational,
    /// `c` with `(disc/L²)|_{L=0} = b1^p / c` on the hyperplane of a root `L` of the class.
    pub reduced_prefactor: Rational,
    /// Residue at one ramification point, against the explicit form.
    pub per_point_residue_coeff: Rational,
    pub aggregate_coeff_explicit: Rational,
    pub aggregate_coeff_fancy: Rational,
}

/// The G2 Langlands involution at Cartan and base level.
///
/// On the Cartan, `τ = T / √3` with rational `T`; since both invariant degrees
/// are even, `τ*I = 3^{-d/2} · (I ∘ T)` stays rational.
#[derive(Clone, Debug, PartialEq)]
pub struct TauData {
    pub cartan: RatMat2,
    /// `√cartan_scale_sq` is the divisor turning `cartan` into `τ`.
    pub cartan_scale_sq: Rational,
    /// `τ(b1, b2)` as polynomials in `(b1, b2)`.
    pub base: [RatPoly2; 2],
    /// `dτ_b` as a matrix of polynomials in `(b1, b2)`.
    pub differential: [[RatPoly2; 2]; 2],
}

/// Exact root-system tables for one algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSystemData {
    pub id: AlgebraId,
    pub positive_roots: Vec<PositiveRoot>,
    /// Simple reflections acting on coordinates `(x1, x2) = (α1(h), α2(h))`.
    pub weyl_generators: [RatMat2; 2],
    /// Inner products of simple roots, `∝ κ⁻¹`.
    pub simple_gram: RatMat2,
    pub killing: RatMat2,
    pub degrees: (u32, u32),
    pub inv1: RatPoly2,
    pub inv2: RatPoly2,
    /// `D𝐈[i][j] = ∂I_{i+1}/∂x_{j+1}`.
    pub jacobian: [[RatPoly2; 2]; 2],
    /// Published Jacobian values on each root hyperplane, parallel to `positive_roots`.
    pub jacobian_tables: Vec<[[RatPoly2; 2]; 2]>,
    pub classes: Vec<ClassData>,
    pub b1_power: u32,
    /// ∇λ direction at a ramification point of each root, parallel to `positive_roots`.
    pub nabla_table: Vec<[Rational; 2]>,
    pub tau: Option<TauData>,
}

impl RootSystemData {
    pub fn class(&self, c: LengthClass) -> Option<&ClassData> {
        self.classes.iter().find(|d| d.class == c)
    }

    pub fn class_names(&self) -> Vec<LengthClass> {
        self.classes.iter().map(|c| c.class).collect()
    }

    pub fn roots_in_class(&self, c: LengthClass) -> Vec<usize> {
        (0..self.positive_roots.len()).filter(|&i| self.positive_roots[i].class == c).collect()
    }

    pub fn weyl_order(&self) -> usize {
        self.id.weyl_order()
    }
}
