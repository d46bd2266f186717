//! Automorphisms of a free group given by generator images.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{push_reduced, Word};

/// On-disk automorphism definition, using the letter encoding of [`Word::parse`].
///
/// ```json
/// {"rank": 2, "images": ["a", "ba"], "inverse_images": ["a", "bA"]}
/// ```
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismFile {
    pub rank: usize,
    pub images: Vec<String>,
    pub inverse_images: Vec<String>,
}

/// An automorphism of the free group of rank `rank`, stored with its inverse.
///
/// Construction checks that `images` and `inverse_images` compose to the
/// identity in both orders, so every value of this type is a genuine
/// automorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Automorphism {
    rank: usize,
    images: Vec<Word>,
    inverse_images: Vec<Word>,
}

/// Orbit of a word under iteration, cut short when a length budget is hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// `w, f(w), …, f^m(w)`, each freely reduced.
    pub words: Vec<Word>,
    /// True when iteration stopped before `n` because the next image would
    /// have exceeded the budget.
    pub budget_hit: bool,
}

impl Automorphism {
    pub fn new(rank: usize, images: Vec<Word>, inverse_images: Vec<Word>) -> Result<Automorphism> {
        if rank < 2 {
            return Err(Error::RankTooSmall { rank, min: 2 });
        }
        for (what, list) in [("images", &images), ("inverse images", &inverse_images)] {
            if list.len() != rank {
                return Err(Error::ImageCount {
                    what,
                    rank,
                    found: list.len(),
                });
            }
            if let Some(w) = list.iter().find(|w| w.max_index() > rank) {
                return Err(Error::RankMismatch {
                    expected: rank,
                    found: w.max_index(),
                });
            }
        }
        let f = Automorphism {
            rank,
            images: images.iter().map(Word::reduce).collect(),
            inverse_images: inverse_images.iter().map(Word::reduce).collect(),
        };
        f.validate()?;
        Ok(f)
    }

    fn validate(&self) -> Result<()> {
        let inv = self.inverse();
        for i in 1..=self.rank {
            let g = Word::generator(i);
            for (side, image) in [
                ("f∘f⁻¹", self.apply(&inv.apply(&g))),
                ("f⁻¹∘f", inv.apply(&self.apply(&g))),
            ] {
                if image != g {
                    return Err(Error::InvalidInverse {
                        side,
                        generator: g.to_string(),
                        image: image.to_string(),
                    });
                }
            }
        }
        Ok(())
    }

    pub fn identity(rank: usize) -> Automorphism {
        let gens: Vec<Word> = (1..=rank).map(Word::generator).collect();
        Automorphism {
            rank,
            images: gens.clone(),
            inverse_images: gens,
        }
    }

    /// Inner automorphism `w ↦ u w u⁻¹`.
    pub fn inner(rank: usize, u: &Word) -> Result<Automorphism> {
        let images = (1..=rank)
            .map(|i| Word::generator(i).conjugate(u))
            .collect();
        let u_inv = u.inverse();
        let inverse_images = (1..=rank)
            .map(|i| Word::generator(i).conjugate(&u_inv))
            .collect();
        Automorphism::new(rank, images, inverse_images)
    }

    pub fn from_file(file: &AutomorphismFile) -> Result<Automorphism> {
        let parse_all = |list: &[String]| -> Result<Vec<Word>> {
            list.iter().map(|s| Word::parse(s, file.rank)).collect()
        };
        Automorphism::new(
            file.rank,
            parse_all(&file.images)?,
            parse_all(&file.inverse_images)?,
        )
    }

    pub fn from_json(text: &str) -> Result<Automorphism> {
        let file: AutomorphismFile = serde_json::from_str(text)?;
        Automorphism::from_file(&file)
    }

    pub fn to_file(&self) -> AutomorphismFile {
        AutomorphismFile {
            rank: self.rank,
            images: self.images.iter().map(Word::to_string).collect(),
            inverse_images: self.inverse_images.iter().map(Word::to_string).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_file()).expect("automorphism file serializes")
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn inverse_images(&self) -> &[Word] {
        &self.inverse_images
    }

    pub fn inverse(&self) -> Automorphism {
        Automorphism {
            rank: self.rank,
            images: self.inverse_images.clone(),
            inverse_images: self.images.clone(),
        }
    }

    /// Freely reduced image of `w` under generator substitution.
    ///
    /// # Panics
    ///
    /// If `w` uses a generator beyond the rank of `self`.
    pub fn apply(&self, w: &Word) -> Word {
        apply_images(&self.images, w)
    }

    /// `self ∘ g`: apply `g` first, then `self`.
    pub fn compose(&self, g: &Automorphism) -> Result<Automorphism> {
        if self.rank != g.rank {
            return Err(Error::RankMismatch {
                expected: self.rank,
                found: g.rank,
            });
        }
        Ok(Automorphism {
            rank: self.rank,
            images: g.images.iter().map(|w| self.apply(w)).collect(),
            inverse_images: self
                .inverse_images
                .iter()
                .map(|w| apply_images(&g.inverse_images, w))
                .collect(),
        })
    }

    /// `selfⁿ` by repeated composition.
    pub fn pow(&self, n: usize) -> Automorphism {
        let mut acc = Automorphism::identity(self.rank);
        for _ in 0..n {
            acc = self.compose(&acc).expect("equal ranks");
        }
        acc
    }

    /// `φ⁻¹ ∘ self ∘ φ`: the same automorphism expressed in the basis
    /// `φ(x₁), …, φ(x_n)`.
    pub fn conjugate_by(&self, phi: &Automorphism) -> Result<Automorphism> {
        phi.inverse().compose(&self.compose(phi)?)
    }

    /// `w, f(w), …, fⁿ(w)`, stopping early before any iterate whose reduced
    /// length exceeds `length_budget`.
    pub fn iterate_image(&self, w: &Word, n: usize, length_budget: usize) -> Orbit {
        let mut words = vec![w.reduce()];
        let mut budget_hit = false;
        for _ in 0..n {
            let next = self.apply(words.last().expect("non-empty orbit"));
            if next.len() > length_budget {
                budget_hit = true;
                break;
            }
            words.push(next);
        }
        Orbit { words, budget_hit }
    }
}

fn apply_images(images: &[Word], w: &Word) -> Word {
    let mut out = Vec::with_capacity(w.len());
    for &g in w.letters() {
        let image = images
            .get(g.index() - 1)
            .unwrap_or_else(|| panic!("letter {g:?} exceeds rank {}", images.len()));
        if g.is_inverse() {
            push_reduced(&mut out, image.letters().iter().rev().map(|h| h.inverse()));
        } else {
            push_reduced(&mut out, image.letters().iter().copied());
        }
    }
    Word::from_reduced(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn w(s: &str) -> Word {
        Word::parse(s, 2).unwrap()
    }

    #[test]
    fn twist_examples() {
        let tx = fixtures::dehn_twist_x();
        assert_eq!(tx.apply(&w("b")), w("ba"));
        assert_eq!(tx.apply(&w("a")), w("a"));
        let twice = tx.apply(&tx.apply(&w("b")));
        assert_eq!(twice, w("baa"));
        assert_eq!(twice.len(), 3);
    }

    #[test]
    fn compose_examples() {
        let tx = fixtures::dehn_twist_x();
        assert_eq!(tx.compose(&Automorphism::identity(2)).unwrap(), tx);
        assert_eq!(
            tx.compose(&tx.inverse()).unwrap(),
            Automorphism::identity(2)
        );
        assert_eq!(tx.compose(&tx).unwrap().images()[1], w("baa"));
        assert!(matches!(
            tx.compose(&Automorphism::identity(3)),
            Err(Error::RankMismatch { .. })
        ));
    }

    #[test]
    fn iterate_examples() {
        let id = Automorphism::identity(2);
        let orbit = id.iterate_image(&w("a"), 5, 1_000_000);
        assert_eq!(orbit.words, vec![w("a"); 6]);
        assert!(!orbit.budget_hit);

        let orbit = fixtures::dehn_twist_x().iterate_image(&w("b"), 3, 1_000_000);
        let expected: Vec<Word> = ["b", "ba", "baa", "baaa"].iter().map(|s| w(s)).collect();
        assert_eq!(orbit.words, expected);

        let orbit = fixtures::pseudo_anosov().iterate_image(&w("a"), 50, 100);
        assert!(orbit.budget_hit);
        assert!(orbit.words.iter().all(|x| x.len() <= 100));
        let last = orbit.words.last().unwrap();
        assert!(fixtures::pseudo_anosov().apply(last).len() > 100);
    }

    #[test]
    fn validation_rejects_bad_inverse() {
        let err = Automorphism::new(2, vec![w("a"), w("ba")], vec![w("a"), w("ba")]);
        assert!(matches!(err, Err(Error::InvalidInverse { .. })));
        let err = Automorphism::new(2, vec![w("a")], vec![w("a")]);
        assert!(matches!(err, Err(Error::ImageCount { .. })));
        let err = Automorphism::new(1, vec![w("a")], vec![w("a")]);
        assert!(matches!(err, Err(Error::RankTooSmall { .. })));
    }

    #[test]
    fn json_round_trip() {
        let f = fixtures::pseudo_anosov();
        let back = Automorphism::from_json(&f.to_json()).unwrap();
        assert_eq!(back, f);
        let text = r#"{"rank": 2, "images": ["a", "ba"], "inverse_images": ["a", "bA"]}"#;
        assert_eq!(
            Automorphism::from_json(text).unwrap(),
            fixtures::dehn_twist_x()
        );
        let bad = r#"{"rank": 2, "images": ["a", "bz"], "inverse_images": ["a", "bA"]}"#;
        assert!(matches!(
            Automorphism::from_json(bad),
            Err(Error::IndexExceedsRank { .. })
        ));
    }

    #[test]
    fn inner_automorphism() {
        let u = w("ab");
        let inner = Automorphism::inner(2, &u).unwrap();
        assert_eq!(inner.apply(&w("a")), w("abaBA"));
        assert_eq!(inner.apply(&w("abAB")).cyclic_length(), 4);
    }
}
