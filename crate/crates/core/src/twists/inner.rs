use crate::arith::EchelonBasis;
use crate::numfield::{subfield_from_generators, verify_automorphism, FieldAutomorphism, FieldEmbedding, NFElement, NumberField};
use crate::numfield::NumfieldError;

use super::packet::NewformPacket;
use super::{TwistError, TwistOptions};

/// `F = Q({a_p²})` with its embedding into E.
pub fn compute_center_field(packet: &NewformPacket, max_coeff: u32) -> Result<(NumberField, FieldEmbedding), TwistError> {
    if packet.table().is_empty() {
        return Err(TwistError::EmptyTable);
    }
    let squares: Vec<NFElement> = packet.table().iter().map(|t| t.ap.square()).collect();
    let (f, emb) = subfield_from_generators(packet.hecke_field(), &squares, max_coeff)?;
    if let Some(t) = packet.table().iter().zip(&squares).find(|(_, s)| !emb.contains(s)) {
        return Err(TwistError::InvariantViolation(format!("a_p^2 at {} is outside the center field", t.0.prime)));
    }
    Ok((f, emb))
}

/// The inner-twist group Γ = Aut(E/F) with its characters on table primes.
#[derive(Clone, Debug)]
pub struct InnerTwists {
    pub center: NumberField,
    pub embedding: FieldEmbedding,
    /// Table indices whose eigenvalues generate E over F.
    pub generators: Vec<usize>,
    /// Identity first; element `s` negates generator `j` iff bit `j` of `s` is set.
    pub gamma: Vec<FieldAutomorphism>,
    /// `chars[s][i] = σ_s(a_p)/a_p` for table entry `i`, or 0 when `a_p = 0`.
    pub chars: Vec<Vec<i8>>,
}

impl InnerTwists {
    pub fn order(&self) -> usize {
        self.gamma.len()
    }
}

/// Dimension of the Q-algebra generated by `gens`.
fn algebra_dim(e: &NumberField, gens: &[NFElement]) -> usize {
    let mut span = EchelonBasis::new(e.degree());
    let mut basis = vec![e.one()];
    span.insert(e.one().coords());
    let mut i = 0;
    while i < basis.len() {
        for g in gens {
            let x = &basis[i] * g;
            if span.insert(x.coords()) {
                basis.push(x);
            }
        }
        i += 1;
    }
    basis.len()
}

pub fn detect_inner_twists(
    packet: &NewformPacket,
    center: &(NumberField, FieldEmbedding),
    opts: &TwistOptions,
) -> Result<InnerTwists, TwistError> {
    let (f, emb) = center;
    let e = packet.hecke_field();
    let table = packet.table();
    let nonzero = packet.nonzero_count();
    if nonzero < opts.min_primes {
        return Err(TwistError::TooFewPrimes { found: nonzero, required: opts.min_primes });
    }
    let fgen = emb.image_of_generator().clone();
    let mut gens = vec![fgen.clone()];
    let mut generators = Vec::new();
    let mut dim = algebra_dim(e, &gens);
    for (i, t) in table.iter().enumerate() {
        if dim == e.degree() {
            break;
        }
        if t.ap.is_zero() || emb.contains(&t.ap) {
            continue;
        }
        gens.push(t.ap.clone());
        let d = algebra_dim(e, &gens);
        if d > dim {
            dim = d;
            generators.push(i);
        } else {
            gens.pop();
        }
    }
    if dim != e.degree() {
        return Err(TwistError::TableDoesNotGenerateHeckeField);
    }
    let k = generators.len();
    let mut gamma = Vec::with_capacity(1 << k);
    for s in 0..(1usize << k) {
        let mut images = vec![(fgen.clone(), fgen.clone())];
        for (j, &i) in generators.iter().enumerate() {
            let a = &table[i].ap;
            images.push((a.clone(), if s >> j & 1 == 1 { -a } else { a.clone() }));
        }
        let sigma = verify_automorphism(e, emb, &images).map_err(|err| match err {
            NumfieldError::NotRingHomomorphism => {
                TwistError::InconsistentTwist(format!("sign pattern {s:b} is not multiplicative"))
            }
            other => TwistError::Numfield(other),
        })?;
        if !sigma.compose(&sigma).is_identity() {
            return Err(TwistError::NonTwoTorsionGroup(format!("{s:b}")));
        }
        gamma.push(sigma);
    }
    let mut chars = Vec::with_capacity(gamma.len());
    for sigma in &gamma {
        let row = table
            .iter()
            .map(|t| {
                if t.ap.is_zero() {
                    return Ok(0);
                }
                let img = sigma.apply(&t.ap);
                if img == t.ap {
                    Ok(1)
                } else if img == -&t.ap {
                    Ok(-1)
                } else {
                    Err(TwistError::InconsistentTwist(format!("σ(a_p)/a_p is not ±1 at {}", t.prime)))
                }
            })
            .collect::<Result<Vec<i8>, _>>()?;
        chars.push(row);
    }
    let twists = InnerTwists { center: f.clone(), embedding: emb.clone(), generators, gamma, chars };
    check_group_invariants(packet, &twists)?;
    Ok(twists)
}

/// Closure under composition, multiplicativity of characters, and
/// `a_p ∈ F ⟺ every χ_σ(p) = +1`.
pub fn check_group_invariants(packet: &NewformPacket, tw: &InnerTwists) -> Result<(), TwistError> {
    let bad = |m: String| Err(TwistError::InvariantViolation(m));
    if !tw.order().is_power_of_two() {
        return bad(format!("|Γ| = {} is not a power of two", tw.order()));
    }
    for (s, a) in tw.gamma.iter().enumerate() {
        for (t, b) in tw.gamma.iter().enumerate() {
            let c = a.compose(b);
            let Some(u) = tw.gamma.iter().position(|g| g.image_of_generator() == c.image_of_generator()) else {
                return bad("Γ is not closed under composition".into());
            };
            if (0..tw.chars[s].len()).any(|i| tw.chars[s][i] * tw.chars[t][i] != tw.chars[u][i]) {
                return bad("χ_σ χ_τ ≠ χ_στ".into());
            }
        }
    }
    for (i, t) in packet.table().iter().enumerate() {
        if t.ap.is_zero() {
            continue;
        }
        let in_f = tw.embedding.contains(&t.ap);
        let all_trivial = tw.chars.iter().all(|row| row[i] == 1);
        if in_f != all_trivial {
            return bad(format!("a_p ∈ F disagrees with the characters at {}", t.prime));
        }
    }
    Ok(())
}
