#![allow(dead_code)]

use graphsep::rational::{self, Rational};
use graphsep::{Graph, GraphDiagonalState};
use rand::Rng;

/// Random exact-rational state with small integer weights, a random number
/// of zeros and one boosted label, so both verdicts occur often.
pub fn random_state<R: Rng>(rng: &mut R, g: &Graph) -> GraphDiagonalState {
    let dim = g.dim();
    let density: f64 = rng.gen_range(0.2..=1.0);
    let mut w: Vec<i64> = (0..dim)
        .map(|_| if rng.gen_bool(density) { rng.gen_range(0..=12) } else { 0 })
        .collect();
    let boost = rng.gen_range(0..dim);
    w[boost] += rng.gen_range(0..=(4 * dim as i64));
    if w.iter().all(|&x| x == 0) {
        w[boost] = 1;
    }
    let total: i64 = w.iter().sum();
    let weights: Vec<Rational> = w.iter().map(|&x| rational::rat(x, total)).collect();
    GraphDiagonalState::new(g.clone(), weights).expect("normalized")
}

pub fn builtin(name: &str) -> Graph {
    Graph::builtin(name).expect("builtin graph")
}
