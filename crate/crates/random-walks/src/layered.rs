use discrete_heisenberg::{HeisenbergSpace, H};
use euclidean::Lattice;
use metric_core::GroupSpace;

/// A finitely generated nilpotent group with a lower central series
/// `G = G₁ ⊇ G₂ ⊇ …` whose successive quotients are free abelian, so that
/// `G_n/G_{n+1} ≅ ℤᵏ` has integer coordinates.
pub trait Layered: GroupSpace {
    /// The largest `n` with `g ∈ G_n`, or `None` for the identity.
    fn layer_of(&self, g: &Self::Point) -> Option<usize>;

    /// Coordinates of `g G_{n+1}` for `g ∈ G_n`.
    fn layer_coords(&self, g: &Self::Point, n: usize) -> Vec<i64>;

    /// An element of `G_n` with the given coordinates.
    fn layer_element(&self, n: usize, coords: &[i64]) -> Self::Point;

    /// Whether the norm of `p` was measured by a fallback metric.
    fn norm_uses_fallback(&self, _p: &Self::Point) -> bool {
        false
    }
}

impl Layered for Lattice {
    fn layer_of(&self, g: &Vec<i64>) -> Option<usize> {
        g.iter().any(|&x| x != 0).then_some(1)
    }

    fn layer_coords(&self, g: &Vec<i64>, _n: usize) -> Vec<i64> {
        g.clone()
    }

    fn layer_element(&self, _n: usize, coords: &[i64]) -> Vec<i64> {
        coords.to_vec()
    }
}

impl Layered for HeisenbergSpace {
    fn layer_of(&self, g: &H) -> Option<usize> {
        if g.a != 0 || g.b != 0 {
            Some(1)
        } else if g.c != 0 {
            Some(2)
        } else {
            None
        }
    }

    fn layer_coords(&self, g: &H, n: usize) -> Vec<i64> {
        match n {
            1 => vec![g.a, g.b],
            _ => vec![g.c],
        }
    }

    fn layer_element(&self, n: usize, coords: &[i64]) -> H {
        match n {
            1 => H::new(coords[0], coords[1], 0),
            _ => H::new(0, 0, coords[0]),
        }
    }

    fn norm_uses_fallback(&self, p: &H) -> bool {
        self.uses_fallback(&self.reference, p)
    }
}
