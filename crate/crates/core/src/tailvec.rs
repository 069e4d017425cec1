//! Elements of `ℓ_∞` that are eventually constant, held exactly.

use crate::dyadic::Dyadic;

/// `(head_1, …, head_k, tail, tail, …)` with dyadic entries.
///
/// The head never ends in an entry equal to the tail, so two tail vectors
/// are equal as sequences iff they are equal as values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailVec {
    head: Vec<Dyadic>,
    tail: Dyadic,
}

impl TailVec {
    pub fn new(head: Vec<Dyadic>, tail: Dyadic) -> Self {
        let mut v = TailVec { head, tail };
        v.trim();
        v
    }

    pub fn zero() -> Self {
        Self::constant(Dyadic::ZERO)
    }

    /// The constant sequence; `constant(1)` is `𝟙`.
    pub fn constant(c: Dyadic) -> Self {
        TailVec {
            head: Vec::new(),
            tail: c,
        }
    }

    /// The coordinate functional `e_k*`, 1-based.
    pub fn coordinate(k: usize) -> Self {
        assert!(k >= 1, "coordinates are 1-based");
        let mut head = vec![Dyadic::ZERO; k];
        head[k - 1] = Dyadic::ONE;
        TailVec::new(head, Dyadic::ZERO)
    }

    pub fn head(&self) -> &[Dyadic] {
        &self.head
    }

    pub fn tail(&self) -> Dyadic {
        self.tail
    }

    /// Coordinate `i`, 1-based.
    pub fn get(&self, i: usize) -> Dyadic {
        assert!(i >= 1, "coordinates are 1-based");
        self.head.get(i - 1).copied().unwrap_or(self.tail)
    }

    /// `max(max|head_i|, |tail|)`.
    pub fn sup_norm(&self) -> Dyadic {
        self.head
            .iter()
            .fold(self.tail.abs(), |m, v| m.max(v.abs()))
    }

    /// `Σ_i self_i x_i` for a finitely supported `x` (`x[0]` is coordinate 1).
    pub fn pair(&self, x: &[Dyadic]) -> Dyadic {
        x.iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(|(i, v)| self.get(i + 1) * *v)
            .sum()
    }

    pub fn scale(&self, c: Dyadic) -> Self {
        TailVec::new(self.head.iter().map(|v| *v * c).collect(), self.tail * c)
    }

    pub fn add(&self, other: &TailVec) -> Self {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &TailVec) -> Self {
        self.zip_with(other, |a, b| a - b)
    }

    /// The first `n` coordinates as floats.
    pub fn truncate_f64(&self, n: usize) -> Vec<f64> {
        (1..=n).map(|i| self.get(i).to_f64()).collect()
    }

    fn zip_with(&self, other: &TailVec, f: impl Fn(Dyadic, Dyadic) -> Dyadic) -> Self {
        let len = self.head.len().max(other.head.len());
        let head = (1..=len).map(|i| f(self.get(i), other.get(i))).collect();
        TailVec::new(head, f(self.tail, other.tail))
    }

    fn trim(&mut self) {
        while self.head.last() == Some(&self.tail) {
            self.head.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sup_norm_sees_tail() {
        let one = TailVec::constant(Dyadic::ONE);
        let e2 = TailVec::coordinate(2);
        assert_eq!(one.sup_norm(), Dyadic::ONE);
        assert_eq!(one.sub(&e2).sup_norm(), Dyadic::ONE);
        let v = TailVec::new(vec![Dyadic::from_int(-3)], Dyadic::ONE);
        assert_eq!(v.sup_norm(), Dyadic::from_int(3));
    }

    #[test]
    fn arithmetic_is_coordinatewise() {
        let one = TailVec::constant(Dyadic::ONE);
        let e1 = TailVec::coordinate(1);
        let f2 = e1.sub(&one);
        assert_eq!(f2.get(1), Dyadic::ZERO);
        assert_eq!(f2.get(7), -Dyadic::ONE);
        assert_eq!(f2.add(&one), e1);
        let half = Dyadic::recip_pow2(1);
        assert_eq!(one.scale(half).get(100), half);
    }

    #[test]
    fn trims_redundant_head() {
        let v = TailVec::new(vec![Dyadic::ONE, Dyadic::ZERO, Dyadic::ZERO], Dyadic::ZERO);
        assert_eq!(v, TailVec::coordinate(1));
    }

    #[test]
    fn pairing_with_finite_vectors() {
        let one = TailVec::constant(Dyadic::ONE);
        let x = [Dyadic::ONE, Dyadic::from_int(2), Dyadic::ZERO, Dyadic::from_int(-5)];
        assert_eq!(one.pair(&x), Dyadic::from_int(-2));
        assert_eq!(TailVec::coordinate(2).pair(&x), Dyadic::from_int(2));
    }
}
