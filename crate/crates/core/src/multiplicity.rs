//! Multiplicities of the Specht modules `𝕊(λ[n])` in the permutation
//! representation `kX_n`.
//!
//! Two independent routes: the Pieri rule applied to the induced-orbit data
//! (stable values, pure induced specs only), and the character inner product
//! with the permutation character of `X_n` (any spec, any `n`).

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::caps::Caps;
use crate::character::mn_character;
use crate::error::{Error, Result};
use crate::fiset::FISetSpec;
use crate::group::{conjugacy_classes, ConjugacyClassDatum, PermutationGroup};
use crate::partition::{factorial, horizontal_strip, stable_strip, Partition};

/// Degrees scanned after the declared degree when a quotient spec needs its
/// stable range.
const STABILITY_WINDOW: usize = 3;

/// `c_ν` with `Ind_H^{S_m} 1 = ⊕ c_ν 𝕊(ν)`, as `(1/|H|) Σ_h χ_ν(h)`.
pub fn decompose_trivial_induction(h: &PermutationGroup, caps: &Caps) -> Result<BTreeMap<Partition, u64>> {
    let elements = h.enumerate(caps)?;
    let mut by_type: BTreeMap<Partition, i64> = BTreeMap::new();
    for g in elements {
        *by_type.entry(g.cycle_type()).or_default() += 1;
    }
    let order = elements.len() as i64;
    let mut out = BTreeMap::new();
    for nu in Partition::all(h.degree()) {
        let mut sum = 0i64;
        for (rho, count) in &by_type {
            sum += count * mn_character(&nu, rho)?;
        }
        let (c, rem) = sum.div_rem(&order);
        if rem != 0 || c < 0 {
            return Err(Error::Internal(format!(
                "non-integral multiplicity {sum}/{order} for {nu}"
            )));
        }
        if c > 0 {
            out.insert(nu, c as u64);
        }
    }
    Ok(out)
}

/// Eventual multiplicity of `𝕊(λ[n])` in `kX_n`.
///
/// Pure induced specs use the interlacing form of the Pieri rule. Specs with
/// identifications are evaluated by characters at two consecutive degrees of
/// the detected stable range, which must agree.
pub fn stable_multiplicity(spec: &FISetSpec, lambda: &Partition, caps: &Caps) -> Result<u64> {
    if spec.is_pure_induced() {
        let mut total = 0;
        for orbit in spec.orbits() {
            for (nu, c) in decompose_trivial_induction(&orbit.h, caps)? {
                if stable_strip(lambda, &nu) {
                    total += c;
                }
            }
        }
        return Ok(total);
    }
    let n = stable_from(spec, lambda, caps)?;
    let a = per_n_multiplicity(spec, n, lambda, caps)?;
    let b = per_n_multiplicity(spec, n + 1, lambda, caps)?;
    if a != b {
        return Err(Error::Unstable(n + 1));
    }
    Ok(a)
}

/// Multiplicity at a single degree by the Pieri rule, without the
/// large-`n` simplification. Pure induced specs only.
pub fn pieri_multiplicity(spec: &FISetSpec, n: usize, lambda: &Partition, caps: &Caps) -> Result<u64> {
    if !spec.is_pure_induced() {
        return Err(Error::InvalidSpec("the Pieri route needs a pure induced spec".into()));
    }
    let Some(padded) = lambda.pad(n) else {
        return Ok(0);
    };
    let mu = padded.to_partition();
    let mut total = 0;
    for orbit in spec.orbits().iter().filter(|o| o.m <= n) {
        for (nu, c) in decompose_trivial_induction(&orbit.h, caps)? {
            if horizontal_strip(&nu, &mu) {
                total += c;
            }
        }
    }
    Ok(total)
}

/// First degree from which `per_n_multiplicity(λ)` equals the stable value:
/// `λ[n]` must exist, `n - |λ|` must dominate every generation degree, and
/// quotient specs must be inside their detected stable range.
pub fn stable_from(spec: &FISetSpec, lambda: &Partition, caps: &Caps) -> Result<usize> {
    let mut n = lambda.padding_start().max(lambda.size() + spec.generation_degree());
    if !spec.is_pure_induced() {
        let n_max = spec.declared_degree() + 2 * STABILITY_WINDOW;
        let range = spec.detect_stable_range(n_max, STABILITY_WINDOW, caps)?;
        n = n.max(range.start.ok_or(Error::Unstable(n_max))?);
    }
    Ok(n)
}

/// The permutation character of `X_n`: each class of `S_n` with its number
/// of fixed points.
pub fn permutation_character(spec: &FISetSpec, n: usize, caps: &Caps) -> Result<Vec<(ConjugacyClassDatum, usize)>> {
    let ev = spec.evaluate(n, caps)?;
    Ok(conjugacy_classes(n, caps)?
        .into_iter()
        .map(|c| {
            let fix = ev.fixed_points(spec, &c.representative);
            (c, fix)
        })
        .collect())
}

/// `⟨χ_{λ[n]}, π⟩` for a permutation character `π` of `S_n`.
pub fn multiplicity_in(character: &[(ConjugacyClassDatum, usize)], n: usize, lambda: &Partition) -> Result<u64> {
    let Some(padded) = lambda.pad(n) else {
        return Ok(0);
    };
    let mu = padded.to_partition();
    let mut sum = BigInt::zero();
    for (class, fix) in character {
        if *fix == 0 {
            continue;
        }
        let chi = mn_character(&mu, &class.cycle_type)?;
        sum += BigInt::from(class.class_size.clone()) * BigInt::from(*fix) * BigInt::from(chi);
    }
    let order = BigInt::from(factorial(n));
    let (q, r) = sum.div_rem(&order);
    if !r.is_zero() {
        return Err(Error::Internal(format!(
            "non-integral multiplicity of {mu} at degree {n}"
        )));
    }
    q.to_u64()
        .ok_or_else(|| Error::Internal(format!("negative multiplicity of {mu} at degree {n}")))
}

/// Multiplicity of `𝕊(λ[n])` in `kX_n` by characters:
/// `Σ_classes (|class| / n!) · fix(g) · χ_{λ[n]}(g)`.
pub fn per_n_multiplicity(spec: &FISetSpec, n: usize, lambda: &Partition, caps: &Caps) -> Result<u64> {
    if lambda.pad(n).is_none() {
        return Err(Error::InvalidPartition(format!("{lambda}[{n}] is not a partition")));
    }
    multiplicity_in(&permutation_character(spec, n, caps)?, n, lambda)
}

/// All `λ` with `|λ| ≤ cutoff` and nonzero stable multiplicity.
pub fn stable_multiplicities(spec: &FISetSpec, cutoff: usize, caps: &Caps) -> Result<Vec<(Partition, u64)>> {
    let mut out = Vec::new();
    for lambda in Partition::up_to(cutoff) {
        let m = stable_multiplicity(spec, &lambda, caps)?;
        if m > 0 {
            out.push((lambda, m));
        }
    }
    Ok(out)
}

/// `Σ_λ m_λ dim 𝕊(λ[n])`, which must equal `|X_n|` once every relevant
/// `λ` is included.
pub fn total_dimension(multiplicities: &[(Partition, u64)], n: usize) -> Option<BigUint> {
    let mut total = BigUint::zero();
    for (lambda, m) in multiplicities {
        total += lambda.pad(n)?.to_partition().hook_dimension() * BigUint::from(*m);
    }
    Some(total)
}
