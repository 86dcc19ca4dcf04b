//! Random strings for property tests and the demo.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::presentation::StringAlgebra;
use crate::words::{Side, Word};

/// A string of length at most `max_len`: a uniform target length, then a
/// random walk that stops early when no letter extends it.
pub fn random_word<R: Rng + ?Sized>(alg: &StringAlgebra, rng: &mut R, max_len: usize) -> Word {
    let target = rng.gen_range(0..=max_len);
    if target == 0 || alg.letters().is_empty() {
        let v = rng.gen_range(0..alg.num_vertices());
        let side = if rng.gen_bool(0.5) { Side::Plus } else { Side::Minus };
        return Word::empty(v, side);
    }
    let mut w = vec![*alg.letters().choose(rng).unwrap()];
    while w.len() < target {
        let next: Vec<_> =
            alg.letters().iter().filter(|&&l| alg.append_violation(&w, l).is_none()).collect();
        match next.choose(rng) {
            Some(&&l) => w.push(l),
            None => break,
        }
    }
    Word::from_valid(alg, w)
}
