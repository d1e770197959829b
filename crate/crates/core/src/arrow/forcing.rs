//! Staged satisfaction for the two-stage world. The earlier stage is
//! terminal, so formulas there evaluate classically. At the later stage
//! a statement must survive the passage of time: implications and
//! universals are checked both on the spot and after restricting every
//! parameter to the earlier stage, while existentials and disjunctions
//! are witnessed on the spot.
//!
//! This evaluator is deliberately structural — one clause per connective,
//! no shortcuts — so closed-form computations elsewhere in the crate can
//! be validated against it rather than against themselves.

use super::chains::{ChainObjectOfP, StageSet};
use super::poset::ArrowPoset;
use crate::element::ElementId;
use crate::order::OrderError;
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    Later,
    Earlier,
}

/// What a variable can denote at a stage. Carrier elements restrict
/// along the carrier's restriction map; chain pairs restrict to their
/// earlier half.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    El(ElementId),
    ChainPair(StageSet, StageSet),
    ChainSet(StageSet),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sort {
    Carrier,
    Chains,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    Le(String, String),
    Eq(String, String),
    MemberOf(String, String),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    ForAll(String, Sort, Box<Formula>),
    Exists(String, Sort, Box<Formula>),
}

pub struct ForcingContext<'a> {
    pub poset: &'a ArrowPoset,
    pub chains: &'a ChainObjectOfP,
}

type Env = BTreeMap<String, Value>;

fn restrict_value(p: &ArrowPoset, v: &Value) -> Result<Value, OrderError> {
    Ok(match v {
        Value::El(a) => Value::El(p.restrict(a)?.clone()),
        Value::ChainPair(_, t) => Value::ChainSet(t.clone()),
        Value::ChainSet(_) => {
            return Err(OrderError::InvalidWitness(
                "an earlier-stage value cannot be restricted further".into(),
            ))
        }
    })
}

fn restrict_env(p: &ArrowPoset, env: &Env) -> Result<Env, OrderError> {
    env.iter()
        .map(|(k, v)| Ok((k.clone(), restrict_value(p, v)?)))
        .collect()
}

fn lookup<'e>(env: &'e Env, var: &str) -> Result<&'e Value, OrderError> {
    env.get(var)
        .ok_or_else(|| OrderError::UnknownElement(format!("unbound variable {var}")))
}

/// Does `formula` hold at `stage` under `env`?
pub fn force(
    ctx: &ForcingContext<'_>,
    stage: Stage,
    env: &Env,
    formula: &Formula,
) -> Result<bool, OrderError> {
    let p = ctx.poset;
    match formula {
        Formula::Le(x, y) => {
            let (a, b) = (lookup(env, x)?, lookup(env, y)?);
            match (stage, a, b) {
                (Stage::Later, Value::El(a), Value::El(b)) => {
                    Ok(p.stage1().le(a, b)? && p.stage0().le(p.restrict(a)?, p.restrict(b)?)?)
                }
                (Stage::Earlier, Value::El(a), Value::El(b)) => p.stage0().le(a, b),
                _ => Err(OrderError::InvalidWitness(
                    "order atoms apply to carrier values".into(),
                )),
            }
        }
        Formula::Eq(x, y) => Ok(lookup(env, x)? == lookup(env, y)?),
        Formula::MemberOf(x, c) => {
            let (a, cv) = (lookup(env, x)?, lookup(env, c)?);
            match (stage, a, cv) {
                (Stage::Later, Value::El(a), Value::ChainPair(s, t)) => {
                    Ok(s.contains(a) && t.contains(p.restrict(a)?))
                }
                (Stage::Earlier, Value::El(a), Value::ChainSet(t)) => Ok(t.contains(a)),
                _ => Err(OrderError::InvalidWitness(
                    "membership atoms apply to a carrier value and a chain value".into(),
                )),
            }
        }
        Formula::And(f, g) => Ok(force(ctx, stage, env, f)? && force(ctx, stage, env, g)?),
        Formula::Or(f, g) => Ok(force(ctx, stage, env, f)? || force(ctx, stage, env, g)?),
        Formula::Implies(f, g) => {
            let here = !force(ctx, stage, env, f)? || force(ctx, stage, env, g)?;
            if !here {
                return Ok(false);
            }
            if stage == Stage::Later {
                let env0 = restrict_env(p, env)?;
                return Ok(!force(ctx, Stage::Earlier, &env0, f)?
                    || force(ctx, Stage::Earlier, &env0, g)?);
            }
            Ok(true)
        }
        Formula::Not(f) => {
            if force(ctx, stage, env, f)? {
                return Ok(false);
            }
            if stage == Stage::Later {
                let env0 = restrict_env(p, env)?;
                return Ok(!force(ctx, Stage::Earlier, &env0, f)?);
            }
            Ok(true)
        }
        Formula::ForAll(var, sort, body) => {
            for v in sort_values(ctx, stage, *sort) {
                let mut inner = env.clone();
                inner.insert(var.clone(), v);
                if !force(ctx, stage, &inner, body)? {
                    return Ok(false);
                }
            }
            if stage == Stage::Later {
                let env0 = restrict_env(p, env)?;
                for v in sort_values(ctx, Stage::Earlier, *sort) {
                    let mut inner = env0.clone();
                    inner.insert(var.clone(), v);
                    if !force(ctx, Stage::Earlier, &inner, body)? {
                        return Ok(false);
                    }
                }
            }
            Ok(true)
        }
        Formula::Exists(var, sort, body) => {
            for v in sort_values(ctx, stage, *sort) {
                let mut inner = env.clone();
                inner.insert(var.clone(), v);
                if force(ctx, stage, &inner, body)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

fn sort_values(ctx: &ForcingContext<'_>, stage: Stage, sort: Sort) -> Vec<Value> {
    match (sort, stage) {
        (Sort::Carrier, Stage::Later) => ctx
            .poset
            .stage1()
            .elements()
            .iter()
            .map(|e| Value::El(e.clone()))
            .collect(),
        (Sort::Carrier, Stage::Earlier) => ctx
            .poset
            .stage0()
            .elements()
            .iter()
            .map(|e| Value::El(e.clone()))
            .collect(),
        (Sort::Chains, Stage::Later) => ctx
            .chains
            .stage1
            .iter()
            .map(|(s, t)| Value::ChainPair(s.clone(), t.clone()))
            .collect(),
        (Sort::Chains, Stage::Earlier) => {
            ctx.chains.stage0.iter().map(|t| Value::ChainSet(t.clone())).collect()
        }
    }
}

/// `every member of <chain_var> lies below <bound_var>`.
pub fn upper_bound_formula(bound_var: &str, chain_var: &str) -> Formula {
    Formula::ForAll(
        "y".into(),
        Sort::Carrier,
        Box::new(Formula::Implies(
            Box::new(Formula::MemberOf("y".into(), chain_var.into())),
            Box::new(Formula::Le("y".into(), bound_var.into())),
        )),
    )
}

/// `<bound_var> bounds <chain_var> and lies below every bound of it`.
pub fn is_least_upper_bound_formula(bound_var: &str, chain_var: &str) -> Formula {
    Formula::And(
        Box::new(upper_bound_formula(bound_var, chain_var)),
        Box::new(Formula::ForAll(
            "z".into(),
            Sort::Carrier,
            Box::new(Formula::Implies(
                Box::new(upper_bound_formula("z", chain_var)),
                Box::new(Formula::Le(bound_var.into(), "z".into())),
            )),
        )),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arrow::chains::internal_chain_object;
    use crate::caps::Caps;

    fn ctx_parts() -> (ArrowPoset, ChainObjectOfP) {
        let p = ArrowPoset::collapsed_chain(2);
        let ch = internal_chain_object(&p, &Caps::default()).unwrap();
        (p, ch)
    }

    fn set(names: &[&str]) -> StageSet {
        names.iter().map(|n| ElementId::new(*n)).collect()
    }

    #[test]
    fn later_order_atoms_require_both_stages() {
        let (p, ch) = ctx_parts();
        let ctx = ForcingContext { poset: &p, chains: &ch };
        let mut env = Env::new();
        env.insert("a".into(), Value::El(ElementId::new("s0")));
        env.insert("b".into(), Value::El(ElementId::new("s1")));
        assert!(force(&ctx, Stage::Later, &env, &Formula::Le("a".into(), "b".into())).unwrap());
        assert!(!force(&ctx, Stage::Later, &env, &Formula::Le("b".into(), "a".into())).unwrap());
    }

    #[test]
    fn universals_at_the_later_stage_cover_the_earlier_one() {
        let (p, ch) = ctx_parts();
        let ctx = ForcingContext { poset: &p, chains: &ch };
        // The later pass ranges over s0..s2; the extra earlier pass
        // ranges over pt0 against the restricted bound.
        let mut env = Env::new();
        env.insert("top".into(), Value::El(ElementId::new("s2")));
        let all_below = Formula::ForAll(
            "x".into(),
            Sort::Carrier,
            Box::new(Formula::Le("x".into(), "top".into())),
        );
        assert!(force(&ctx, Stage::Later, &env, &all_below).unwrap());
        // With a non-maximal bound the later instance already fails.
        env.insert("top".into(), Value::El(ElementId::new("s1")));
        assert!(!force(&ctx, Stage::Later, &env, &all_below).unwrap());
    }

    #[test]
    fn membership_checks_both_halves_of_a_pair() {
        let (p, ch) = ctx_parts();
        let ctx = ForcingContext { poset: &p, chains: &ch };
        let mut env = Env::new();
        env.insert("x".into(), Value::El(ElementId::new("s1")));
        env.insert("c".into(), Value::ChainPair(set(&["s0", "s1"]), set(&["pt0"])));
        assert!(force(&ctx, Stage::Later, &env, &Formula::MemberOf("x".into(), "c".into()))
            .unwrap());
        env.insert("x".into(), Value::El(ElementId::new("s2")));
        assert!(!force(&ctx, Stage::Later, &env, &Formula::MemberOf("x".into(), "c".into()))
            .unwrap());
    }

    #[test]
    fn least_upper_bound_formula_picks_the_maximum() {
        let (p, ch) = ctx_parts();
        let ctx = ForcingContext { poset: &p, chains: &ch };
        let phi = is_least_upper_bound_formula("b", "c");
        let mut env = Env::new();
        env.insert("c".into(), Value::ChainPair(set(&["s0", "s1"]), set(&["pt0"])));
        env.insert("b".into(), Value::El(ElementId::new("s1")));
        assert!(force(&ctx, Stage::Later, &env, &phi).unwrap());
        // s2 bounds the chain but is not least among bounds.
        env.insert("b".into(), Value::El(ElementId::new("s2")));
        assert!(!force(&ctx, Stage::Later, &env, &phi).unwrap());
        // s0 fails to bound it at all.
        env.insert("b".into(), Value::El(ElementId::new("s0")));
        assert!(!force(&ctx, Stage::Later, &env, &phi).unwrap());
    }

    #[test]
    fn empty_pair_forces_its_bound_to_cover_the_earlier_half() {
        let (p, ch) = ctx_parts();
        let ctx = ForcingContext { poset: &p, chains: &ch };
        let phi = is_least_upper_bound_formula("b", "c");
        // The empty later half with an inhabited earlier half: any later
        // element bounds it, and all of them restrict to pt0, so the
        // least bound is the bottom s0.
        let mut env = Env::new();
        env.insert("c".into(), Value::ChainPair(set(&[]), set(&["pt0"])));
        env.insert("b".into(), Value::El(ElementId::new("s0")));
        assert!(force(&ctx, Stage::Later, &env, &phi).unwrap());
        env.insert("b".into(), Value::El(ElementId::new("s1")));
        assert!(!force(&ctx, Stage::Later, &env, &phi).unwrap());
    }
}
