//! Named test objects shared by the verification suite, the CLI (`builtin:`
//! references) and the tests, plus a seeded generator of small random categories.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{Matrix, SparseVec};
use crate::lincat::{from_algebra, incidence_category, Algebra, BasisElem, FinLinCat};
use crate::scalar::ScalarKind;
use crate::sites::{FiniteSpace, Poset, RingPresheaf};

fn strings(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn pairs(xs: &[(&str, &str)]) -> Vec<(String, String)> {
    xs.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect()
}

/// Four points `a, b` (open) and `c, d` (closed), each closed point in the
/// closure of both open ones. Weakly equivalent to a circle.
pub fn pseudocircle() -> FiniteSpace {
    FiniteSpace::from_specialization(strings(&["a", "b", "c", "d"]), &pairs(&[("a", "c"), ("b", "c"), ("a", "d"), ("b", "d")]))
        .expect("pseudocircle is a finite space")
}

/// `{a}` open, `b` closed.
pub fn sierpinski() -> FiniteSpace {
    FiniteSpace::from_specialization(strings(&["a", "b"]), &pairs(&[("a", "b")])).expect("Sierpiński space")
}

pub fn discrete(n: usize) -> FiniteSpace {
    FiniteSpace::from_specialization((0..n).map(|i| format!("p{i}")).collect(), &[]).expect("discrete space")
}

pub fn spaces() -> Vec<(&'static str, FiniteSpace)> {
    vec![("pseudocircle", pseudocircle()), ("sierpinski", sierpinski()), ("discrete2", discrete(2))]
}

/// `x, y ≤ z`.
pub fn vee() -> Poset {
    Poset::new(strings(&["x", "y", "z"]), &pairs(&[("x", "z"), ("y", "z")])).expect("vee poset")
}

/// The 2-chain `U < V` with `O(V) = k[ε]`, `O(U) = k` and the augmentation as restriction.
pub fn dual_over_chain(kind: ScalarKind) -> Result<RingPresheaf> {
    RingPresheaf::new(Poset::chain(2), vec![Algebra::ground(kind), Algebra::dual_numbers(kind)], vec![(0, 1, Matrix::from_i64(kind, &[&[1, 0]]))])
}

/// Constant-sheaf coefficients on the pseudocircle's minimal basis.
pub fn pseudocircle_sheaf(kind: ScalarKind) -> Result<RingPresheaf> {
    let x = pseudocircle();
    x.minimal_basis().constant_sheaf(&x, kind)
}

pub const PRESHEAF_NAMES: &[&str] = &["point_dual", "chain2", "chain3", "dual_over_chain", "vee", "pseudocircle"];

pub fn presheaf(name: &str, kind: ScalarKind) -> Result<RingPresheaf> {
    Ok(match name {
        "point_dual" => RingPresheaf::constant(Poset::chain(1), Algebra::dual_numbers(kind)),
        "chain2" => RingPresheaf::constant(Poset::chain(2), Algebra::ground(kind)),
        "chain3" => RingPresheaf::constant(Poset::chain(3), Algebra::ground(kind)),
        "dual_over_chain" => dual_over_chain(kind)?,
        "vee" => RingPresheaf::constant(vee(), Algebra::ground(kind)),
        "pseudocircle" => pseudocircle_sheaf(kind)?,
        _ => return Err(Error::UnknownObject(name.to_string())),
    })
}

pub fn presheaves(kind: ScalarKind) -> Result<Vec<(&'static str, RingPresheaf)>> {
    PRESHEAF_NAMES.iter().map(|&n| Ok((n, presheaf(n, kind)?))).collect()
}

pub const CATEGORY_NAMES: &[&str] = &[
    "ground",
    "dual_numbers",
    "truncated3",
    "split2",
    "upper_triangular",
    "matrix2",
    "A2",
    "A3",
    "vee",
    "dual_over_chain",
    "pseudocircle",
];

pub fn category(name: &str, kind: ScalarKind) -> Result<FinLinCat> {
    let alg = |a: Algebra| from_algebra(&a);
    match name {
        "ground" => alg(Algebra::ground(kind)),
        "dual_numbers" => alg(Algebra::dual_numbers(kind)),
        "truncated3" => alg(Algebra::truncated_polynomial(kind, 3)),
        "split2" => alg(Algebra::split(kind, 2)),
        "upper_triangular" => alg(Algebra::upper_triangular(kind)),
        "matrix2" => alg(Algebra::matrix(kind, 2)),
        "A2" => incidence_category(&presheaf("chain2", kind)?),
        "A3" => incidence_category(&presheaf("chain3", kind)?),
        "vee" => incidence_category(&presheaf("vee", kind)?),
        "dual_over_chain" => incidence_category(&dual_over_chain(kind)?),
        "pseudocircle" => incidence_category(&pseudocircle_sheaf(kind)?),
        _ => Err(Error::UnknownObject(name.to_string())),
    }
}

pub fn categories(kind: ScalarKind) -> Result<Vec<(&'static str, FinLinCat)>> {
    CATEGORY_NAMES.iter().map(|&n| Ok((n, category(n, kind)?))).collect()
}

fn random_poset<R: Rng>(rng: &mut R, n: usize) -> Result<Poset> {
    let labels: Vec<String> = (0..n).map(|i| format!("o{i}")).collect();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            leq[i][j] = rng.gen_bool(0.5);
        }
    }
    Poset::from_relation(labels, leq)
}

/// A random invertible change of basis of every hom space: a unitriangular
/// matrix with small entries, columns shuffled.
fn scramble<R: Rng>(rng: &mut R, c: &FinLinCat) -> Result<FinLinCat> {
    let n = c.num_objects();
    let kind = c.kind();
    let mut bases = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let d = c.hom_dim(a, b);
            if d == 0 {
                bases.push(None);
                continue;
            }
            let mut vecs: Vec<SparseVec> = (0..d)
                .map(|j| {
                    let mut entries = vec![(j, kind.one())];
                    for i in 0..j {
                        entries.push((i, kind.from_i64(rng.gen_range(-2..=2))));
                    }
                    SparseVec::from_entries(entries)
                })
                .collect();
            vecs.shuffle(rng);
            let elems = (0..d).map(|k| BasisElem::new(format!("{}{}_{k}", c.objects()[a], c.objects()[b]), 0)).collect();
            bases.push(Some((elems, vecs)));
        }
    }
    c.change_basis(&bases)
}

/// A random ordinary category of total dimension at most 6: an algebra, the
/// incidence category of a random poset, or a non-constant 2-chain, presented
/// in a random basis.
pub fn random_category<R: Rng>(rng: &mut R, kind: ScalarKind) -> Result<FinLinCat> {
    let base = match rng.gen_range(0..4) {
        0 => {
            let algebras = [
                Algebra::ground(kind),
                Algebra::dual_numbers(kind),
                Algebra::truncated_polynomial(kind, 3),
                Algebra::truncated_polynomial(kind, 4),
                Algebra::split(kind, 2),
                Algebra::split(kind, 3),
                Algebra::upper_triangular(kind),
                Algebra::matrix(kind, 2),
            ];
            from_algebra(algebras.choose(rng).expect("nonempty"))?
        }
        1 => {
            let n = rng.gen_range(2..=3);
            incidence_category(&RingPresheaf::constant(random_poset(rng, n)?, Algebra::ground(kind)))?
        }
        2 => {
            let a = if rng.gen_bool(0.5) { Algebra::dual_numbers(kind) } else { Algebra::split(kind, 2) };
            incidence_category(&RingPresheaf::constant(Poset::chain(2), a))?
        }
        _ => {
            let top = if rng.gen_bool(0.5) { Algebra::dual_numbers(kind) } else { Algebra::truncated_polynomial(kind, 3) };
            let mut aug = vec![0; top.dim()];
            aug[0] = 1;
            let r = Matrix::from_i64(kind, &[&aug]);
            incidence_category(&RingPresheaf::new(Poset::chain(2), vec![Algebra::ground(kind), top], vec![(0, 1, r)])?)?
        }
    };
    scramble(rng, &base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const Q: ScalarKind = ScalarKind::Rational;

    #[test]
    fn corpus_is_valid() {
        for (name, c) in categories(Q).unwrap() {
            assert!(c.validate().is_ok(), "{name}");
        }
        for (name, o) in presheaves(Q).unwrap() {
            assert!(o.validate().is_ok(), "{name}");
        }
    }

    #[test]
    fn random_categories_are_valid_and_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let c = random_category(&mut rng, Q).unwrap();
            assert!(c.total_dim() <= 6);
            assert!(c.validate().is_ok());
        }
    }
}
