pub mod graph;
pub mod markov;
pub mod mixture;
pub mod spectral;
pub mod system;

pub use graph::{finite_orbit, successor_matrix, Edge, OrbitGraph, OrbitLimits};
pub use markov::{markov_partition, MarkovPartition};
pub use mixture::{concatenate_mixtures, fibonacci, fibonacci_mixture, fibonacci_words, FibonacciMixture, MixtureGraph};
pub use spectral::{
    characteristic_polynomial, generation_count, growth_rate, local_dimension, min_growth_bound,
    strongly_connected_components, supercritical_exact, supercritical_test, Enclosure, Growth, GrowthMethod, Verdict,
};
pub use system::Bernoulli;
