//! Built-in models: the three-dimensional generalized symmetric space, the
//! four-dimensional type B space, and flat references, each with its known
//! soliton vector field.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_rational::Rational64;

use crate::error::CatalogError;
use crate::expr::{ExpPoly, ParamScalar};
use crate::geometry::{ParamDecl, SpaceModel, VectorField};
use crate::soliton::verify;

/// A shipped soliton: `(X, λ)` with the indices of its free-constant
/// parameters.
#[derive(Clone, Debug)]
pub struct KnownSolution {
    pub name: String,
    pub field: VectorField,
    pub lambda: ParamScalar,
    pub free_constants: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: &'static str,
    pub summary: &'static str,
    /// Documentation only; nothing branches on it.
    pub signature: &'static str,
    pub model: SpaceModel,
    pub solutions: Vec<KnownSolution>,
}

impl CatalogEntry {
    pub fn solution(&self, name: &str) -> Option<&KnownSolution> {
        self.solutions.iter().find(|s| s.name == name)
    }
}

pub const IDS: [&str; 4] = ["gs3d", "typeB", "flat3", "flat4"];

/// Ids with one-line summaries, in catalog order.
pub fn list() -> Vec<(&'static str, &'static str)> {
    IDS.iter().map(|id| (*id, summary(id))).collect()
}

fn summary(id: &str) -> &'static str {
    match id {
        "gs3d" => "3D proper generalized symmetric space, diag(eps e^{2t}, eps e^{-2t}, mu)",
        "typeB" => "4D generalized symmetric space of type B, neutral signature",
        "flat3" => "Euclidean R^3",
        "flat4" => "Euclidean R^4",
        _ => "",
    }
}

/// Builds an entry and checks that every known solution has zero residual.
pub fn get(id: &str) -> Result<CatalogEntry, CatalogError> {
    let entry = match id {
        "gs3d" => gs3d(),
        "typeB" => type_b(),
        "flat3" => flat(3),
        "flat4" => flat(4),
        _ => return Err(CatalogError::UnknownEntry(id.to_string())),
    };
    for s in &entry.solutions {
        if !verify(&entry.model, &s.field, &s.lambda)?.holds {
            return Err(CatalogError::SelfTestFailed(s.name.clone()));
        }
    }
    Ok(entry)
}

/// The primary known solution of an entry.
pub fn known_solution(id: &str) -> Result<(VectorField, ParamScalar), CatalogError> {
    let e = get(id)?;
    let s = &e.solutions[0];
    Ok((s.field.clone(), s.lambda.clone()))
}

fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn freq(v: &[i64]) -> Vec<Rational64> {
    v.iter().map(|&n| Rational64::from_integer(n)).collect()
}

struct Ctx {
    n: usize,
    np: usize,
}

impl Ctx {
    fn q(&self, a: i64, b: i64) -> ParamScalar {
        ParamScalar::from_ratio(self.np, a, b)
    }
    fn p(&self, i: usize) -> ParamScalar {
        ParamScalar::param(self.np, i)
    }
    fn c(&self, s: ParamScalar) -> ExpPoly {
        ExpPoly::constant(self.n, s)
    }
    fn x(&self, i: usize) -> ExpPoly {
        ExpPoly::coord(self.n, self.np, i)
    }
    fn e(&self, f: &[i64]) -> ExpPoly {
        ExpPoly::exp(self.np, freq(f))
    }
}

/// `g = diag(ε e^{2t}, ε e^{−2t}, μ)` on `(x, y, t)`, with free constants
/// `A1, A2, A3` declared as parameters for the known solution.
fn gs3d() -> CatalogEntry {
    let k = Ctx { n: 3, np: 4 };
    let (mu, a1, a2, a3) = (k.p(0), k.p(1), k.p(2), k.p(3));
    let eps = ParamScalar::eps(k.np);
    let z = ExpPoly::zero(3, 4);
    let metric = vec![
        vec![k.e(&[0, 0, 2]).scale(&eps), z.clone(), z.clone()],
        vec![z.clone(), k.e(&[0, 0, -2]).scale(&eps), z.clone()],
        vec![z.clone(), z, k.c(mu.clone())],
    ];
    let params = vec![
        ParamDecl::new("mu", true),
        ParamDecl::new("A1", false),
        ParamDecl::new("A2", false),
        ParamDecl::new("A3", false),
    ];
    let model = SpaceModel::new(names(&["x", "y", "t"]), params, true, metric).expect("gs3d metric is well formed");
    let inv_mu = mu.inv().expect("mu is a unit");
    // X = (A1 − (A3 + 1/μ) x) ∂x + (A2 + (A3 − 1/μ) y) ∂y + A3 ∂t
    let field = VectorField(vec![
        &k.c(a1) - &k.x(0).scale(&(&a3 + &inv_mu)),
        &k.c(a2) + &k.x(1).scale(&(&a3 - &inv_mu)),
        k.c(a3),
    ]);
    let lambda = &k.q(-2, 1) * &inv_mu;
    CatalogEntry {
        id: "gs3d",
        summary: summary("gs3d"),
        signature: "any of (3,0), (0,3), (2,1), (1,2) depending on eps and mu",
        model,
        solutions: vec![KnownSolution { name: "X3D".to_string(), field, lambda, free_constants: vec![1, 2, 3] }],
    }
}

/// `g = μ(dx² + dy² + dx dy) + e^{−y}(2dx + dy) dv + e^{−x}(dx + 2dy) du` on
/// `(x, y, u, v)`, cross terms read as symmetric products (`dx du` puts ½ in
/// both off-diagonal slots).
fn type_b() -> CatalogEntry {
    let k = Ctx { n: 4, np: 4 };
    let (mu, w1, w2, w3) = (k.p(0), k.p(1), k.p(2), k.p(3));
    let half = k.q(1, 2);
    let z = ExpPoly::zero(4, 4);
    let m = k.c(mu.clone());
    let ex = k.e(&[-1, 0, 0, 0]);
    let ey = k.e(&[0, -1, 0, 0]);
    let metric = vec![
        vec![m.clone(), m.scale(&half), ex.scale(&half), ey.clone()],
        vec![m.scale(&half), m.clone(), ex.clone(), ey.scale(&half)],
        vec![ex.scale(&half), ex, z.clone(), z.clone()],
        vec![ey.clone(), ey.scale(&half), z.clone(), z],
    ];
    let params = vec![
        ParamDecl::new("mu", true),
        ParamDecl::new("W1", false),
        ParamDecl::new("W2", false),
        ParamDecl::new("W3", false),
    ];
    let model =
        SpaceModel::new(names(&["x", "y", "u", "v"]), params, false, metric).expect("typeB metric is well formed");
    let inv_mu = mu.inv().expect("mu is a unit");
    let third = k.q(1, 3);
    let a = &(&w2 * &k.q(2, 1)) - &w1; // −W1 + 2W2
    let b = &(&w1 * &k.q(2, 1)) - &w2; // 2W1 − W2
    let four_over_mu = &k.q(4, 1) * &inv_mu;
    let field = VectorField(vec![
        k.c(&a * &third),
        k.c(&b * &third),
        k.x(2).scale(&(&(&a - &four_over_mu) * &third)),
        &k.x(3).scale(&(&(&b - &four_over_mu) * &third)) + &k.c(&w3 * &third),
    ]);
    let lambda = &k.q(-4, 3) * &inv_mu;
    CatalogEntry {
        id: "typeB",
        summary: summary("typeB"),
        signature: "(2,2)",
        model,
        solutions: vec![KnownSolution { name: "X4D".to_string(), field, lambda, free_constants: vec![1, 2, 3] }],
    }
}

fn flat(n: usize) -> CatalogEntry {
    let coords: Vec<String> = (1..=n).map(|i| alloc::format!("x{i}")).collect();
    let metric = (0..n)
        .map(|i| (0..n).map(|j| if i == j { ExpPoly::one(n, 0) } else { ExpPoly::zero(n, 0) }).collect())
        .collect();
    let model = SpaceModel::new(coords, Vec::new(), false, metric).expect("identity metric is well formed");
    let (id, signature) = if n == 3 { ("flat3", "(3,0)") } else { ("flat4", "(4,0)") };
    let field = VectorField::zero(&model);
    CatalogEntry {
        id,
        summary: summary(id),
        signature,
        model,
        solutions: vec![KnownSolution {
            name: "zero".to_string(),
            field,
            lambda: ParamScalar::zero(0),
            free_constants: Vec::new(),
        }],
    }
}
