//! Random family specifications for property tests and sweeps.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;

use super::family::{build_family, gap_of, Family, FamilyParams, FamilySpec, SetLayout};
use super::three::small_rational;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    S,
    Circle,
    Bullet,
    R,
}

/// Draws a valid specification of `family` on `n` generators with small
/// rational parameters and random intra-component edges.
///
/// # Panics
/// If `family` needs more generators than `n` provides.
pub fn random_spec<R: Rng + ?Sized>(rng: &mut R, n: usize, family: Family) -> FamilySpec {
    let min_i = match family {
        Family::AI | Family::AII => 3,
        Family::B => 2,
        Family::C => 1,
        Family::D => 0,
    };
    assert!(n >= min_i.max(1), "family {family} needs at least {min_i} generators");
    loop {
        let spec = draw(rng, n, family);
        if build_family(&spec).is_ok() {
            return spec;
        }
    }
}

fn draw<R: Rng + ?Sized>(rng: &mut R, n: usize, family: Family) -> FamilySpec {
    let ni = match family {
        Family::AI | Family::AII => rng.gen_range(3..=n),
        Family::B => 2,
        Family::C => 1,
        Family::D => 0,
    };
    let all: Vec<usize> = (1..=n).collect();
    let mut i_set: Vec<usize> = all.choose_multiple(rng, ni).copied().collect();
    i_set.sort_unstable();
    let rest: Vec<usize> = all.iter().copied().filter(|a| !i_set.contains(a)).collect();

    let mut comps: Vec<Vec<usize>> = Vec::new();
    for r in rest {
        if !comps.is_empty() && rng.gen_bool(0.5) {
            let k = rng.gen_range(0..comps.len());
            comps[k].push(r);
        } else {
            comps.push(vec![r]);
        }
    }
    let allow_s = matches!(family, Family::AI | Family::B);
    let roles: Vec<Role> = comps
        .iter()
        .map(|c| {
            if ni < 2 {
                return Role::R;
            }
            let t = if gap_of(&i_set, c).is_some() {
                Role::Bullet
            } else {
                Role::Circle
            };
            if allow_s && rng.gen_bool(0.5) {
                Role::S
            } else {
                t
            }
        })
        .collect();

    let x: BTreeMap<usize, Scalar> = i_set.iter().map(|&i| (i, small_rational(rng, true))).collect();

    let mut sets = SetLayout {
        i: i_set.clone(),
        ..SetLayout::default()
    };
    let mut circle_vals = Vec::new();
    let mut bullet_vals = Vec::new();
    let mut lambda_a = Vec::new();
    let mut g_s = BTreeMap::new();
    let mut g_r = BTreeMap::new();
    for (c, role) in comps.iter().zip(&roles) {
        match role {
            Role::S => {
                sets.s.extend(c);
                for &s in c {
                    g_s.insert(s, small_rational(rng, true));
                }
            }
            Role::Circle => {
                sets.circle.push(c.clone());
                circle_vals.push(small_rational(rng, true));
            }
            Role::Bullet => {
                sets.bullet.push(c.clone());
                bullet_vals.push((small_rational(rng, true), small_rational(rng, true)));
            }
            Role::R => {
                sets.r.push(c.clone());
                lambda_a.push(small_rational(rng, false));
                for &r in c {
                    g_r.insert(r, small_rational(rng, false));
                }
            }
        }
    }
    sets.s.sort_unstable();

    let mut redges = BTreeMap::new();
    for (c, role) in comps.iter().zip(&roles) {
        for (k, &a) in c.iter().enumerate() {
            for &b in &c[k + 1..] {
                redges.insert((a, b), (small_rational(rng, true), small_rational(rng, false)));
            }
        }
        for k in 1..c.len() {
            let a = c[rng.gen_range(0..k)];
            let b = c[k];
            redges.insert(
                (a.min(b), a.max(b)),
                (small_rational(rng, true), small_rational(rng, true)),
            );
        }
        if *role == Role::S {
            for &a in c {
                for &b in &sets.s {
                    if !c.contains(&b) && a < b {
                        redges.insert((a, b), (Scalar::one(), Scalar::zero()));
                    }
                }
            }
        }
    }

    let params = match family {
        Family::AI => FamilyParams::AI {
            g: small_rational(rng, true),
            g_s,
            circle: circle_vals,
            bullet: bullet_vals,
        },
        Family::AII => {
            let g_i = i_set.iter().map(|&i| (i, small_rational(rng, false))).collect();
            FamilyParams::AII {
                g_i,
                circle: circle_vals,
                bullet: bullet_vals,
            }
        }
        Family::B => FamilyParams::B {
            g: small_rational(rng, true),
            lambda: small_rational(rng, false),
            g_s,
            circle: circle_vals,
            bullet: bullet_vals,
        },
        Family::C => FamilyParams::C { lambda_a, g_r },
        Family::D => FamilyParams::D,
    };
    FamilySpec {
        n,
        sets,
        x,
        params,
        redges,
    }
}
