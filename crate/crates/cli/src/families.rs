//! Family dispatch: recipe → built object, with the claim each family
//! is expected to satisfy.

use anyhow::{anyhow, bail, Result};

use exotic4_core::assemble::{AssembledManifold, KeepNames};
use exotic4_core::blocks::{
    build_gurtas, build_hyperelliptic_metadata, build_korkmaz, build_luttinger_family_a,
    build_luttinger_family_b, BlockDescriptor,
};
use exotic4_core::constructions::{
    build_x, build_x0, build_x_cyclic, build_x_free, build_x_m, free_rank_parameters,
};

use crate::manifest::Recipe;

/// What the family's fundamental-group claim is, for exit-code purposes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpectedClaim {
    Trivial,
    InfiniteCyclic,
    FreeOfRank(usize),
    /// Only an H₁ report is promised.
    HomologyOnly,
}

pub enum Built {
    Manifold {
        manifold: Box<AssembledManifold>,
        keep: KeepNames,
        claim: ExpectedClaim,
    },
    Block(Box<BlockDescriptor>),
}

#[derive(Debug, Clone, Default)]
pub struct Params {
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub m: Option<i64>,
    pub g: Option<usize>,
    pub p: Vec<i64>,
    pub q: Vec<i64>,
}

impl Params {
    fn n(&self) -> Result<usize> {
        self.n.ok_or_else(|| anyhow!("--n is required"))
    }
    fn k(&self) -> Result<usize> {
        self.k.ok_or_else(|| anyhow!("--k is required"))
    }
}

pub fn known_families() -> &'static [&'static str] {
    &[
        "X",
        "Xm",
        "X0",
        "Xfree",
        "Xcyclic",
        "block:korkmaz",
        "block:gurtas",
        "block:hyperelliptic",
        "block:lutA",
        "block:lutB",
    ]
}

/// Builds the object named by `family`, and the recipe that rebuilds it.
pub fn build_family(family: &str, params: &Params) -> Result<(Recipe, Built)> {
    let mut recipe = Recipe {
        family: family.to_string(),
        n: None,
        k: None,
        m: None,
        g: None,
        p: None,
        q: None,
    };
    let built = match family {
        "X" => {
            let (n, k) = (params.n()?, params.k()?);
            recipe.n = Some(n);
            recipe.k = Some(k);
            Built::Manifold {
                manifold: Box::new(build_x(n, k)?),
                keep: KeepNames::A,
                claim: ExpectedClaim::Trivial,
            }
        }
        "Xm" => {
            let (n, k) = (params.n()?, params.k()?);
            let m = params.m.ok_or_else(|| anyhow!("--m is required for Xm"))?;
            recipe.n = Some(n);
            recipe.k = Some(k);
            recipe.m = Some(m);
            Built::Manifold {
                manifold: Box::new(build_x_m(n, k, m)?),
                keep: KeepNames::A,
                claim: ExpectedClaim::Trivial,
            }
        }
        "X0" => {
            let (n, k) = (params.n()?, params.k()?);
            recipe.n = Some(n);
            recipe.k = Some(k);
            Built::Manifold {
                manifold: Box::new(build_x0(n, k)?),
                keep: KeepNames::A,
                claim: ExpectedClaim::InfiniteCyclic,
            }
        }
        "Xfree" => {
            let (n, k) = (params.n()?, params.k()?);
            let (p, q) = default_pq(n, k, params);
            recipe.n = Some(n);
            recipe.k = Some(k);
            recipe.p = Some(p.clone());
            recipe.q = Some(q.clone());
            Built::Manifold {
                manifold: Box::new(build_x_free(n, k, &p, &q)?),
                keep: KeepNames::B,
                claim: if k >= 3 && is_free_pattern(n, k, &p, &q) {
                    ExpectedClaim::FreeOfRank(k - 2)
                } else {
                    ExpectedClaim::HomologyOnly
                },
            }
        }
        "Xcyclic" => {
            let (n, k) = (params.n()?, params.k()?);
            let q = if params.q.is_empty() {
                free_rank_parameters(n, k).1
            } else {
                params.q.clone()
            };
            recipe.n = Some(n);
            recipe.k = Some(k);
            recipe.q = Some(q.clone());
            Built::Manifold {
                manifold: Box::new(build_x_cyclic(n, k, &q)?),
                keep: KeepNames::B,
                claim: ExpectedClaim::HomologyOnly,
            }
        }
        "block:korkmaz" => {
            let k = params.k()?;
            recipe.k = Some(k);
            Built::Block(Box::new(build_korkmaz(k)?))
        }
        "block:gurtas" => {
            let (n, k) = (params.n()?, params.k()?);
            recipe.n = Some(n);
            recipe.k = Some(k);
            Built::Block(Box::new(build_gurtas(n, k)?))
        }
        "block:hyperelliptic" => {
            let g = params
                .g
                .ok_or_else(|| anyhow!("--g is required for block:hyperelliptic"))?;
            recipe.g = Some(g);
            Built::Block(Box::new(build_hyperelliptic_metadata(g)?))
        }
        "block:lutA" => {
            let n = params.n()?;
            if params.p.len() != n || params.q.len() != n {
                bail!("block:lutA needs --p and --q repeated exactly n times");
            }
            recipe.n = Some(n);
            recipe.p = Some(params.p.clone());
            recipe.q = Some(params.q.clone());
            Built::Block(Box::new(build_luttinger_family_a(n, &params.p, &params.q)?))
        }
        "block:lutB" => {
            let n = params.n()?;
            let p = params.p.first().copied().unwrap_or(1);
            let q = params.q.first().copied().unwrap_or(1);
            let m = params.m.unwrap_or(1);
            recipe.n = Some(n);
            recipe.m = Some(m);
            recipe.p = Some(vec![p]);
            recipe.q = Some(vec![q]);
            Built::Block(Box::new(build_luttinger_family_b(n, p, m, q)?))
        }
        other => bail!(
            "unknown family `{other}`; expected one of {:?}",
            known_families()
        ),
    };
    Ok((recipe, built))
}

/// Rebuilds from a stored recipe.
pub fn build_from_recipe(recipe: &Recipe) -> Result<(Recipe, Built)> {
    let params = Params {
        n: recipe.n,
        k: recipe.k,
        m: recipe.m,
        g: recipe.g,
        p: recipe.p.clone().unwrap_or_default(),
        q: recipe.q.clone().unwrap_or_default(),
    };
    build_family(&recipe.family, &params)
}

fn default_pq(n: usize, k: usize, params: &Params) -> (Vec<i64>, Vec<i64>) {
    let (dp, dq) = free_rank_parameters(n, k);
    let p = if params.p.is_empty() {
        dp
    } else {
        params.p.clone()
    };
    let q = if params.q.is_empty() {
        dq
    } else {
        params.q.clone()
    };
    (p, q)
}

fn is_free_pattern(n: usize, k: usize, p: &[i64], q: &[i64]) -> bool {
    let (dp, dq) = free_rank_parameters(n, k);
    *p == dp && *q == dq
}
