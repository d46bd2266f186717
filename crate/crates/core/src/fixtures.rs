//! Named automorphisms of F₂ = ⟨X, Y⟩ (letters `a`, `b`) used throughout the
//! tests, the acceptance suite and the CLI fixture files.

use crate::automorphism::Automorphism;
use crate::word::Word;

fn aut(images: [&str; 2], inverse_images: [&str; 2]) -> Automorphism {
    let parse = |s: &&str| Word::parse(s, 2).expect("fixture word");
    Automorphism::new(
        2,
        images.iter().map(parse).collect(),
        inverse_images.iter().map(parse).collect(),
    )
    .expect("fixture automorphism")
}

/// Dehn twist about X: `X ↦ X, Y ↦ YX`.
pub fn dehn_twist_x() -> Automorphism {
    aut(["a", "ba"], ["a", "bA"])
}

/// The twist `X ↦ XY, Y ↦ Y`, whose abelianization is lower unitriangular.
pub fn transvection_y() -> Automorphism {
    aut(["ab", "b"], ["aB", "b"])
}

/// `T_X ∘ (X ↦ XY)`: `X ↦ XYX, Y ↦ YX`, abelianization `[[2,1],[1,1]]`.
pub fn pseudo_anosov() -> Automorphism {
    dehn_twist_x().compose(&transvection_y()).expect("rank 2")
}

/// `T_X ∘ (X ↦ XY)²`: `X ↦ XYXYX, Y ↦ YX`, abelianization `[[3,1],[2,1]]`.
pub fn pseudo_anosov_trace4() -> Automorphism {
    dehn_twist_x()
        .compose(&transvection_y().pow(2))
        .expect("rank 2")
}

/// Change of basis `X ↦ X, Y ↦ XY`, taking the generating set `{X, Y}` to `{X, XY}`.
pub fn basis_x_xy() -> Automorphism {
    aut(["a", "ab"], ["a", "Ab"])
}

/// `log((3 + √5)/2)`, the logarithm of the larger eigenvalue of `[[2,1],[1,1]]`.
pub fn pseudo_anosov_entropy() -> f64 {
    ((3.0 + 5f64.sqrt()) / 2.0).ln()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_images() {
        let f = pseudo_anosov();
        assert_eq!(f.images()[0].to_string(), "aba");
        assert_eq!(f.images()[1].to_string(), "ba");
        assert_eq!(f.inverse_images()[0].to_string(), "aB");
        assert_eq!(f.inverse_images()[1].to_string(), "bbA");
        let g = pseudo_anosov_trace4();
        assert_eq!(g.images()[0].to_string(), "ababa");
        assert_eq!(g.images()[1].to_string(), "ba");
    }
}
