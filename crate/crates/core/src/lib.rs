//! Virtual-action actor-critic exploration for continuous control, from scratch.
//!
//! The crate bundles everything needed to train and compare three off-policy
//! agents on a continuous 4-room maze without any external ML framework:
//!
//! - [`nn`] — a minimal multilayer-perceptron engine: exact backpropagation,
//!   Adam, Polyak target averaging, and finite-difference gradient checking.
//! - [`dist`] — squashed diagonal Gaussian action distributions with
//!   reparameterized sampling and exact log-densities.
//! - [`maze`] / [`visits`] — the deterministic 4-room maze and its
//!   visit-count instrumentation (unique-cells metric, histogram export).
//! - [`anrm`] — anticipated novelty: a learned dynamics model composed with a
//!   random-network-distillation novelty head, differentiable in the action.
//! - [`agents`] — the VAAC learner (virtual actor + virtual-entropy-penalized
//!   Bellman backup) plus SAC and RND baselines sharing one skeleton.
//! - [`harness`] — seeded runs, multi-seed sweeps, evaluation, CSV metrics.
//!
//! All core math is generic over the scalar type via [`Real`] (`f32` or
//! `f64`); the harness instantiates everything at `f64`. Concrete aliases for
//! the common instantiations live at the crate root ([`Mlp64`], [`Agent64`],
//! ...).

pub mod agents;
pub mod anrm;
pub mod checkpoint;
pub mod config;
pub mod dist;
pub mod error;
pub mod harness;
pub mod maze;
pub mod metrics;
pub mod nn;
pub mod obs;
pub mod replay;
pub mod rng;
pub mod scalar;
pub mod visits;

pub use error::{Error, Result};
pub use scalar::Real;

/// `f64` multilayer perceptron, the instantiation used by the harness.
pub type Mlp64 = nn::Mlp<f64>;
/// `f32` multilayer perceptron.
pub type Mlp32 = nn::Mlp<f32>;
/// `f64` Adam state.
pub type Adam64 = nn::AdamState<f64>;
/// `f64` Gaussian policy head.
pub type GaussianHead64 = dist::GaussianHead<f64>;
/// `f64` maze environment.
pub type MazeEnv64 = maze::MazeEnv<f64>;
/// `f64` replay buffer.
pub type ReplayBuffer64 = replay::ReplayBuffer<f64>;
/// `f64` anticipated-novelty module.
pub type Anrm64 = anrm::Anrm<f64>;
/// `f64` agent, the instantiation used by the harness.
pub type Agent64 = agents::Agent<f64>;
