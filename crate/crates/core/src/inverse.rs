//! Inverse systems: finitely generated `R`-submodules `M` of `S` given by
//! homogeneous generators, their graded pieces `M_i`, the h-vector, the
//! annihilator ideal degree by degree, and the type of level presentations.

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{Arithmetic, Computation};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::hvector::HVector;
use crate::matrix::{Echelon, ExactMatrix, Rref};
use crate::poly::{differentiate, format_rational, parse_rational, Form, Monomial, MonomialBasis, PartialsTable};

/// `M = <g_1, ..., g_n>` inside `k[y_1..y_r]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "InverseSystemJson", into = "InverseSystemJson")]
pub struct InverseSystem {
    ambient: usize,
    generators: Vec<Form>,
}

/// A basis of `M_i`, in reduced echelon form over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub degree: u32,
    pub forms: Vec<Form>,
}

impl GradedBasis {
    pub fn dim(&self) -> usize {
        self.forms.len()
    }
}

impl InverseSystem {
    pub fn new(ambient: usize, generators: Vec<Form>) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::Invalid("an inverse system needs at least one variable".into()));
        }
        if generators.is_empty() {
            return Err(Error::Invalid("an inverse system needs at least one generator".into()));
        }
        for (k, g) in generators.iter().enumerate() {
            if g.ambient() != ambient {
                return Err(Error::AmbientMismatch { expected: ambient, found: g.ambient() });
            }
            if g.is_zero() {
                return Err(Error::Invalid(format!("generator {k} is zero")));
            }
        }
        Ok(InverseSystem { ambient, generators })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn generators(&self) -> &[Form] {
        &self.generators
    }

    /// Largest generator degree.
    pub fn socle_degree(&self) -> u32 {
        self.generators.iter().map(Form::degree).max().expect("nonempty")
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().map(Form::degree).collect()
    }

    /// All generators share one degree.
    pub fn is_equigenerated(&self) -> bool {
        self.generators.windows(2).all(|w| w[0].degree() == w[1].degree())
    }

    pub fn with_generator(&self, f: Form) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.push(f);
        InverseSystem::new(self.ambient, gens)
    }

    pub fn with_generators(&self, fs: impl IntoIterator<Item = Form>) -> Result<Self> {
        let mut gens = self.generators.clone();
        gens.extend(fs);
        InverseSystem::new(self.ambient, gens)
    }

    /// The same generators viewed in `r_new >= r` variables.
    pub fn embed(&self, r_new: usize) -> Result<Self> {
        if r_new < self.ambient {
            return Err(Error::Invalid(format!("cannot embed {} variables into {r_new}", self.ambient)));
        }
        InverseSystem::new(r_new, self.generators.iter().map(|g| g.embed(r_new)).collect())
    }

    /// Every graded piece `M_0, ..., M_e` over `field`.
    pub fn spaces<F: Field>(&self, field: &F) -> Result<DerivativeSpaces<F>> {
        DerivativeSpaces::compute(self, field)
    }

    /// Canonical basis of `M_i`; empty above the socle degree.
    pub fn derivative_space(&self, i: u32) -> Result<GradedBasis> {
        if i > self.socle_degree() {
            return Ok(GradedBasis { degree: i, forms: Vec::new() });
        }
        let spaces = self.spaces(&Rationals)?;
        let rref = spaces.rref(i as usize);
        let basis = spaces.monomial_basis(i as usize);
        Ok(GradedBasis { degree: i, forms: rref.rows().iter().map(|row| Form::from_coords(basis, row)).collect() })
    }

    /// `h_i = dim M_i` for `i = 0..=e`, using the default arithmetic.
    pub fn h_vector(&self) -> Result<HVector> {
        self.h_vector_with(Arithmetic::default())
    }

    pub fn h_vector_with(&self, arith: Arithmetic) -> Result<HVector> {
        HVector::new(arith.evaluate(&HVectorOf(self))?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("inverse systems serialize")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("inverse systems serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// The h-vector as a field-generic computation.
pub struct HVectorOf<'a>(pub &'a InverseSystem);

impl Computation for HVectorOf<'_> {
    type Output = Vec<u64>;
    fn run<F: Field>(&self, field: &F) -> Result<Vec<u64>> {
        Ok(self.0.spaces(field)?.dims())
    }
}

/// Row spaces of `M_0, ..., M_e` in the monomial bases of each degree.
#[derive(Clone, Debug)]
pub struct DerivativeSpaces<F: Field> {
    field: F,
    bases: Vec<MonomialBasis>,
    echelons: Vec<Echelon<F>>,
    // every degree <= full_floor is the whole monomial space
    full_floor: Option<usize>,
}

impl<F: Field> DerivativeSpaces<F> {
    fn compute(m: &InverseSystem, field: &F) -> Result<Self> {
        let e = m.socle_degree() as usize;
        let r = m.ambient;
        let bases: Vec<MonomialBasis> = (0..=e).map(|i| MonomialBasis::new(r, i as u32)).collect();
        let tables: Vec<PartialsTable> = (1..=e).map(|d| PartialsTable::new(&bases[d], &bases[d - 1])).collect();
        let mut echelons: Vec<Echelon<F>> = bases.iter().map(|b| Echelon::new(field.clone(), b.len())).collect();
        let mut full_floor: Option<usize> = None;
        let covered = |floor: Option<usize>, i: usize| floor.is_some_and(|f| i <= f);

        // Each generator's own derivatives are followed down degree by degree;
        // its space in degree i is spanned by first partials of its space in
        // degree i + 1. A full space forces every lower degree to be full.
        for g in &m.generators {
            let d = g.degree() as usize;
            let mut own: Vec<Vec<F::Elem>> = vec![g.coords(field, &bases[d])?];
            for i in (0..=d).rev() {
                if covered(full_floor, i) {
                    break;
                }
                if i < d {
                    let mut local = Echelon::new(field.clone(), bases[i].len());
                    'outer: for v in &own {
                        for p in tables[i].apply_all(field, v) {
                            local.insert(p);
                            if local.is_full() {
                                break 'outer;
                            }
                        }
                    }
                    if local.is_full() {
                        full_floor = full_floor.max(Some(i));
                        break;
                    }
                    own = local.rows().to_vec();
                }
                let union = &mut echelons[i];
                for v in &own {
                    union.insert(v.clone());
                    if union.is_full() {
                        break;
                    }
                }
                if union.is_full() {
                    full_floor = full_floor.max(Some(i));
                    break;
                }
            }
        }
        Ok(DerivativeSpaces { field: field.clone(), bases, echelons, full_floor })
    }

    pub fn socle_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn is_full(&self, i: usize) -> bool {
        self.full_floor.is_some_and(|f| i <= f) || self.echelons[i].is_full()
    }

    pub fn dim(&self, i: usize) -> usize {
        if i >= self.bases.len() {
            0
        } else if self.is_full(i) {
            self.bases[i].len()
        } else {
            self.echelons[i].rank()
        }
    }

    pub fn dims(&self) -> Vec<u64> {
        (0..self.bases.len()).map(|i| self.dim(i) as u64).collect()
    }

    pub fn monomial_basis(&self, i: usize) -> &MonomialBasis {
        &self.bases[i]
    }

    /// Reduced echelon basis of `M_i`, canonical for the subspace.
    pub fn rref(&self, i: usize) -> Rref<F> {
        if self.is_full(i) {
            Echelon::full(self.field.clone(), self.bases[i].len()).into_rref()
        } else {
            self.echelons[i].clone().into_rref()
        }
    }
}

/// Matrix of `g -> g o f` from `R_d` to `S_{e-d}`: rows are the monomials of
/// degree `e - d`, columns the operator monomials of degree `d`, both in
/// canonical order.
pub fn catalecticant_in<F: Field>(field: &F, f: &Form, d: u32) -> Result<ExactMatrix<F>> {
    let e = f.degree();
    if d > e {
        return Err(Error::OrderExceedsDegree { order: d, degree: e });
    }
    let r = f.ambient();
    let rows = MonomialBasis::new(r, e - d);
    let cols = MonomialBasis::new(r, d);
    let mut m = ExactMatrix::zeros(field.clone(), rows.len(), cols.len());
    for (j, mu) in cols.monomials().iter().enumerate() {
        let image = differentiate(f, mu)?;
        for (mono, c) in image.terms() {
            let i = rows.index_of(mono).expect("image has degree e - d");
            m.set(i, j, field.from_rational(c)?);
        }
    }
    Ok(m)
}

pub fn catalecticant(f: &Form, d: u32) -> Result<ExactMatrix<Rationals>> {
    catalecticant_in(&Rationals, f, d)
}

/// Basis of `Ann(M)_d`, as forms in the operator variables (printed with
/// `x`). Above the socle degree this is every monomial.
pub fn annihilator_component(m: &InverseSystem, d: u32) -> Result<Vec<Form>> {
    let r = m.ambient;
    let cols = MonomialBasis::new(r, d);
    let mut stacked: Vec<Vec<BigRational>> = Vec::new();
    for g in m.generators.iter().filter(|g| g.degree() >= d) {
        stacked.extend(catalecticant(g, d)?.row_vecs());
    }
    let kernel = if stacked.is_empty() {
        ExactMatrix::identity(Rationals, cols.len()).row_vecs()
    } else {
        ExactMatrix::from_rows(Rationals, cols.len(), stacked)?.kernel_basis()
    };
    Ok(kernel.iter().map(|v| Form::from_coords(&cols, v)).collect())
}

/// Number of minimal generators of `Ann(M)` in degree `d`:
/// `dim I_d - dim (R_1 I_{d-1})`.
pub fn minimal_generator_count(m: &InverseSystem, d: u32) -> Result<usize> {
    let top = annihilator_component(m, d)?;
    if d == 0 {
        return Ok(top.len());
    }
    let below = annihilator_component(m, d - 1)?;
    let basis = MonomialBasis::new(m.ambient, d);
    let mut ech = Echelon::new(Rationals, basis.len());
    for g in &below {
        for j in 0..m.ambient {
            let x = Monomial::var(m.ambient, j);
            let prod = Form::from_terms(m.ambient, d, g.terms().map(|(mono, c)| (mono.mul(&x), c.clone())))?;
            ech.insert(prod.coords(&Rationals, &basis)?);
        }
    }
    Ok(top.len() - ech.rank())
}

/// Type `t = dim M_e` of an equigenerated presentation whose generators are
/// linearly independent.
pub fn level_type(m: &InverseSystem) -> Result<usize> {
    if !m.is_equigenerated() {
        return Err(Error::NotLevel(m.degrees()));
    }
    let e = m.socle_degree();
    let basis = MonomialBasis::new(m.ambient, e);
    let rows = m.generators.iter().map(|g| g.coords(&Rationals, &basis)).collect::<Result<Vec<_>>>()?;
    let t = ExactMatrix::from_rows(Rationals, basis.len(), rows)?.rank();
    if t < m.generators.len() {
        return Err(Error::NonMinimal { generators: m.generators.len(), dimension: t });
    }
    Ok(t)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct TermJson {
    exps: Vec<u32>,
    coeff: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
struct GeneratorJson {
    degree: u32,
    terms: Vec<TermJson>,
}

/// On-disk layout: `{"r": 3, "generators": [{"degree": 9, "terms":
/// [{"exps": [2,0,7], "coeff": "437"}, ...]}, ...]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InverseSystemJson {
    r: usize,
    generators: Vec<GeneratorJson>,
}

impl TryFrom<InverseSystemJson> for InverseSystem {
    type Error = Error;
    fn try_from(j: InverseSystemJson) -> Result<Self> {
        let mut gens = Vec::with_capacity(j.generators.len());
        for g in j.generators {
            let terms = g
                .terms
                .into_iter()
                .map(|t| {
                    if t.exps.len() != j.r {
                        return Err(Error::AmbientMismatch { expected: j.r, found: t.exps.len() });
                    }
                    Ok((Monomial::new(t.exps), parse_rational(&t.coeff)?))
                })
                .collect::<Result<Vec<_>>>()?;
            if terms.iter().any(|(_, c)| c.is_zero()) {
                return Err(Error::Parse("zero coefficient in generator".into()));
            }
            gens.push(Form::from_terms(j.r, g.degree, terms)?);
        }
        InverseSystem::new(j.r, gens)
    }
}

impl From<InverseSystem> for InverseSystemJson {
    fn from(m: InverseSystem) -> Self {
        InverseSystemJson {
            r: m.ambient,
            generators: m
                .generators
                .iter()
                .map(|g| GeneratorJson {
                    degree: g.degree(),
                    terms: g.terms().map(|(mono, c)| TermJson { exps: mono.exps().to_vec(), coeff: format_rational(c) }).collect(),
                })
                .collect(),
        }
    }
}
