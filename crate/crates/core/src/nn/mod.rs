//! Minimal differentiable MLP engine.
//!
//! The contract is per-vector: `forward` maps one input to one output,
//! `backward` accumulates exact analytic gradients for one sample. Batching
//! is the caller's loop. Activations from the forward pass are cached in an
//! explicit [`Trace`] so frozen networks can be evaluated from any thread
//! while training code reuses one trace buffer per network.
//!
//! Shape mismatches are programmer error and panic via `assert!`;
//! configuration problems (bad dimensions in a spec) surface as
//! `Error::Config`.

mod adam;
pub mod gradcheck;

pub use adam::AdamState;

use rand::Rng;

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Elementwise nonlinearity of hidden layers. Output layers are linear.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Activation {
    Relu,
    Tanh,
}

impl Activation {
    #[inline]
    fn forward<R: Real>(self, z: R) -> R {
        match self {
            Activation::Relu => {
                if z > R::zero() {
                    z
                } else {
                    R::zero()
                }
            }
            Activation::Tanh => z.tanh(),
        }
    }

    /// Derivative expressed through the post-activation value.
    #[inline]
    fn grad_from_output<R: Real>(self, y: R) -> R {
        match self {
            Activation::Relu => {
                if y > R::zero() {
                    R::one()
                } else {
                    R::zero()
                }
            }
            Activation::Tanh => R::one() - y * y,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Activation::Relu => "relu",
            Activation::Tanh => "tanh",
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "relu" => Ok(Activation::Relu),
            "tanh" => Ok(Activation::Tanh),
            other => Err(Error::config(format!("unknown activation `{other}`"))),
        }
    }
}

/// Architecture of one MLP. The output layer is always linear.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MlpSpec {
    pub input_dim: usize,
    pub hidden_dims: Vec<usize>,
    pub output_dim: usize,
    pub hidden_activation: Activation,
}

impl MlpSpec {
    pub fn new(
        input_dim: usize,
        hidden_dims: Vec<usize>,
        output_dim: usize,
        hidden_activation: Activation,
    ) -> Result<Self> {
        let spec = MlpSpec {
            input_dim,
            hidden_dims,
            output_dim,
            hidden_activation,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.input_dim == 0 || self.output_dim == 0 {
            return Err(Error::config("mlp dims must be >= 1"));
        }
        if self.hidden_dims.is_empty() {
            return Err(Error::config("mlp needs at least one hidden layer"));
        }
        if self.hidden_dims.iter().any(|&d| d == 0) {
            return Err(Error::config("mlp hidden dims must be >= 1"));
        }
        Ok(())
    }

    /// `(in_dim, out_dim)` of every layer, first to last.
    pub fn layer_dims(&self) -> Vec<(usize, usize)> {
        let mut dims = Vec::with_capacity(self.hidden_dims.len() + 1);
        let mut prev = self.input_dim;
        for &h in &self.hidden_dims {
            dims.push((prev, h));
            prev = h;
        }
        dims.push((prev, self.output_dim));
        dims
    }

    /// Total number of weights and biases, derivable from the spec alone.
    pub fn param_count(&self) -> usize {
        self.layer_dims()
            .iter()
            .map(|&(i, o)| i * o + o)
            .sum()
    }

    fn activation_of_layer(&self, layer: usize) -> Option<Activation> {
        if layer + 1 == self.hidden_dims.len() + 1 {
            None // linear output
        } else {
            Some(self.hidden_activation)
        }
    }
}

/// Weights and biases of one dense layer, with mirrored gradient buffers.
/// Weights are row-major with shape `(out_dim, in_dim)`.
#[derive(Clone, Debug)]
pub struct LayerParams<R> {
    pub in_dim: usize,
    pub out_dim: usize,
    pub weight: Vec<R>,
    pub bias: Vec<R>,
    pub weight_grad: Vec<R>,
    pub bias_grad: Vec<R>,
}

/// All parameters of one MLP, in layer order.
#[derive(Clone, Debug)]
pub struct ParamSet<R> {
    pub layers: Vec<LayerParams<R>>,
}

impl<R: Real> ParamSet<R> {
    pub fn zeros(spec: &MlpSpec) -> Self {
        let layers = spec
            .layer_dims()
            .into_iter()
            .map(|(i, o)| LayerParams {
                in_dim: i,
                out_dim: o,
                weight: vec![R::zero(); i * o],
                bias: vec![R::zero(); o],
                weight_grad: vec![R::zero(); i * o],
                bias_grad: vec![R::zero(); o],
            })
            .collect();
        ParamSet { layers }
    }

    pub fn param_count(&self) -> usize {
        self.layers
            .iter()
            .map(|l| l.weight.len() + l.bias.len())
            .sum()
    }

    pub fn zero_grads(&mut self) {
        for l in &mut self.layers {
            l.weight_grad.fill(R::zero());
            l.bias_grad.fill(R::zero());
        }
    }

    /// Parameters in canonical order: per layer, weights row-major then bias.
    pub fn flat_params(&self) -> Vec<R> {
        let mut out = Vec::with_capacity(self.param_count());
        for l in &self.layers {
            out.extend_from_slice(&l.weight);
            out.extend_from_slice(&l.bias);
        }
        out
    }

    /// Gradients in the same canonical order as [`flat_params`].
    ///
    /// [`flat_params`]: ParamSet::flat_params
    pub fn flat_grads(&self) -> Vec<R> {
        let mut out = Vec::with_capacity(self.param_count());
        for l in &self.layers {
            out.extend_from_slice(&l.weight_grad);
            out.extend_from_slice(&l.bias_grad);
        }
        out
    }

    pub fn set_flat_params(&mut self, values: &[R]) {
        assert_eq!(values.len(), self.param_count(), "flat param length mismatch");
        let mut k = 0;
        for l in &mut self.layers {
            l.weight.copy_from_slice(&values[k..k + l.weight.len()]);
            k += l.weight.len();
            l.bias.copy_from_slice(&values[k..k + l.bias.len()]);
            k += l.bias.len();
        }
    }

    pub fn all_finite(&self) -> bool {
        self.layers.iter().all(|l| {
            l.weight.iter().all(|w| w.is_finite()) && l.bias.iter().all(|b| b.is_finite())
        })
    }

    /// Order-sensitive hash of the parameter bits; used by tests to prove a
    /// network was not touched.
    pub fn bits_hash(&self) -> u64 {
        use std::hash::{Hash, Hasher};
        let mut h = std::hash::DefaultHasher::new();
        for l in &self.layers {
            for w in l.weight.iter().chain(l.bias.iter()) {
                w.to_f64().to_bits().hash(&mut h);
            }
        }
        h.finish()
    }

    pub fn max_abs_diff(&self, other: &Self) -> R {
        let a = self.flat_params();
        let b = other.flat_params();
        assert_eq!(a.len(), b.len(), "param shape mismatch");
        a.iter()
            .zip(&b)
            .map(|(x, y)| (*x - *y).abs())
            .fold(R::zero(), |m, d| if d > m { d } else { m })
    }

    fn shapes_match(&self, other: &Self) -> bool {
        self.layers.len() == other.layers.len()
            && self
                .layers
                .iter()
                .zip(&other.layers)
                .all(|(a, b)| a.in_dim == b.in_dim && a.out_dim == b.out_dim)
    }
}

/// Soft target update: `target <- tau * online + (1 - tau) * target`.
pub fn polyak_update<R: Real>(target: &mut ParamSet<R>, online: &ParamSet<R>, tau: R) {
    assert!(target.shapes_match(online), "polyak shape mismatch");
    let keep = R::one() - tau;
    for (t, o) in target.layers.iter_mut().zip(&online.layers) {
        for (tw, ow) in t.weight.iter_mut().zip(&o.weight) {
            *tw = tau * *ow + keep * *tw;
        }
        for (tb, ob) in t.bias.iter_mut().zip(&o.bias) {
            *tb = tau * *ob + keep * *tb;
        }
    }
}

/// Weight initialization options.
///
/// Hidden layers use uniform fan-in scaling (He-style for relu, Xavier for
/// tanh). The linear output layer uses Xavier uniform, optionally rescaled:
/// policy heads shrink their output weights so initial means sit near zero,
/// and may pin output biases (e.g. the log-std head).
#[derive(Clone, Debug)]
pub struct InitOptions {
    pub output_weight_scale: f64,
    pub output_bias: Option<Vec<f64>>,
}

impl Default for InitOptions {
    fn default() -> Self {
        InitOptions {
            output_weight_scale: 1.0,
            output_bias: None,
        }
    }
}

/// Cached activations of one forward pass, consumed by `backward`.
#[derive(Clone, Debug, Default)]
pub struct Trace<R> {
    input: Vec<R>,
    outputs: Vec<Vec<R>>,
    primed: bool,
}

impl<R: Real> Trace<R> {
    pub fn new() -> Self {
        Trace {
            input: Vec::new(),
            outputs: Vec::new(),
            primed: false,
        }
    }

    /// Output of the traced forward pass.
    pub fn output(&self) -> &[R] {
        assert!(self.primed, "trace holds no forward pass");
        self.outputs.last().expect("traced network has layers")
    }
}

/// A feed-forward MLP: spec plus parameters.
#[derive(Clone, Debug)]
pub struct Mlp<R> {
    spec: MlpSpec,
    params: ParamSet<R>,
}

impl<R: Real> Mlp<R> {
    /// All-zero parameters (useful for fixtures and residual models).
    pub fn zeros(spec: MlpSpec) -> Result<Self> {
        spec.validate()?;
        let params = ParamSet::zeros(&spec);
        Ok(Mlp { spec, params })
    }

    /// Random initialization; draws weights layer by layer in row-major
    /// order, so a seeded rng reproduces the network bit-for-bit.
    pub fn init<G: Rng + ?Sized>(spec: MlpSpec, opts: &InitOptions, rng: &mut G) -> Result<Self> {
        let mut net = Mlp::zeros(spec)?;
        let n_layers = net.params.layers.len();
        for (li, layer) in net.params.layers.iter_mut().enumerate() {
            let is_output = li + 1 == n_layers;
            let fan_in = layer.in_dim as f64;
            let fan_out = layer.out_dim as f64;
            let limit = if is_output || net.spec.hidden_activation == Activation::Tanh {
                (6.0 / (fan_in + fan_out)).sqrt()
            } else {
                (6.0 / fan_in).sqrt()
            };
            let scale = if is_output {
                opts.output_weight_scale
            } else {
                1.0
            };
            let bound = R::from_f64(limit);
            let scale = R::from_f64(scale);
            for w in &mut layer.weight {
                *w = R::uniform_symmetric(rng, bound) * scale;
            }
            if is_output {
                if let Some(bias) = &opts.output_bias {
                    assert_eq!(bias.len(), layer.out_dim, "output bias length mismatch");
                    for (b, v) in layer.bias.iter_mut().zip(bias) {
                        *b = R::from_f64(*v);
                    }
                }
            }
        }
        Ok(net)
    }

    pub fn from_parts(spec: MlpSpec, params: ParamSet<R>) -> Result<Self> {
        spec.validate()?;
        let expect = ParamSet::<R>::zeros(&spec);
        if !expect.shapes_match(&params) {
            return Err(Error::config("params do not match spec"));
        }
        Ok(Mlp { spec, params })
    }

    pub fn spec(&self) -> &MlpSpec {
        &self.spec
    }

    pub fn params(&self) -> &ParamSet<R> {
        &self.params
    }

    pub fn params_mut(&mut self) -> &mut ParamSet<R> {
        &mut self.params
    }

    pub fn input_dim(&self) -> usize {
        self.spec.input_dim
    }

    pub fn output_dim(&self) -> usize {
        self.spec.output_dim
    }

    /// Pure forward pass.
    pub fn forward(&self, input: &[R]) -> Vec<R> {
        let mut trace = Trace::new();
        self.forward_traced(input, &mut trace);
        trace.outputs.pop().expect("traced network has layers")
    }

    /// Forward pass that caches per-layer activations into `trace`.
    pub fn forward_traced(&self, input: &[R], trace: &mut Trace<R>) {
        assert_eq!(input.len(), self.spec.input_dim, "forward input dim mismatch");
        trace.input.clear();
        trace.input.extend_from_slice(input);
        trace.outputs.resize_with(self.params.layers.len(), Vec::new);

        let n_layers = self.params.layers.len();
        for (li, layer) in self.params.layers.iter().enumerate() {
            let activation = self.spec.activation_of_layer(li);
            let (done, rest) = trace.outputs.split_at_mut(li);
            let prev: &[R] = if li == 0 { &trace.input } else { &done[li - 1] };
            let out = &mut rest[0];
            out.resize(layer.out_dim, R::zero());
            debug_assert_eq!(li + 1 <= n_layers, true);
            for (o, y) in out.iter_mut().enumerate() {
                let row = &layer.weight[o * layer.in_dim..(o + 1) * layer.in_dim];
                let mut z = layer.bias[o];
                for (w, x) in row.iter().zip(prev) {
                    z = w.mul_add(*x, z);
                }
                *y = match activation {
                    Some(act) => act.forward(z),
                    None => z,
                };
            }
        }
        trace.primed = true;
    }

    /// Exact backpropagation for one sample. Accumulates parameter gradients
    /// (additively, until [`ParamSet::zero_grads`]) and returns the gradient
    /// with respect to the input.
    pub fn backward(&mut self, trace: &Trace<R>, output_grad: &[R]) -> Vec<R> {
        self.check_trace(trace, output_grad);
        let mut delta = output_grad.to_vec();
        let mut prev_delta: Vec<R> = Vec::new();

        for li in (0..self.params.layers.len()).rev() {
            fold_activation(self.spec.activation_of_layer(li), &mut delta, &trace.outputs[li]);
            let prev: &[R] = if li == 0 {
                &trace.input
            } else {
                &trace.outputs[li - 1]
            };
            let layer = &mut self.params.layers[li];
            assert_eq!(prev.len(), layer.in_dim, "trace layer width mismatch");

            prev_delta.clear();
            prev_delta.resize(layer.in_dim, R::zero());
            for (o, d) in delta.iter().enumerate() {
                let row_start = o * layer.in_dim;
                layer.bias_grad[o] += *d;
                let grad_row = &mut layer.weight_grad[row_start..row_start + layer.in_dim];
                for (g, x) in grad_row.iter_mut().zip(prev) {
                    *g = d.mul_add(*x, *g);
                }
                let row = &layer.weight[row_start..row_start + layer.in_dim];
                for (pd, w) in prev_delta.iter_mut().zip(row) {
                    *pd = d.mul_add(*w, *pd);
                }
            }
            std::mem::swap(&mut delta, &mut prev_delta);
        }
        delta
    }

    /// Backward pass that only propagates to the input, leaving parameter
    /// gradients untouched. This is how gradients are blocked from frozen
    /// networks (critics during actor updates, ANRM during virtual-actor
    /// updates) while still flowing into the action.
    pub fn backward_input_only(&self, trace: &Trace<R>, output_grad: &[R]) -> Vec<R> {
        self.check_trace(trace, output_grad);
        let mut delta = output_grad.to_vec();
        let mut prev_delta: Vec<R> = Vec::new();

        for li in (0..self.params.layers.len()).rev() {
            fold_activation(self.spec.activation_of_layer(li), &mut delta, &trace.outputs[li]);
            let layer = &self.params.layers[li];
            prev_delta.clear();
            prev_delta.resize(layer.in_dim, R::zero());
            for (o, d) in delta.iter().enumerate() {
                let row = &layer.weight[o * layer.in_dim..(o + 1) * layer.in_dim];
                for (pd, w) in prev_delta.iter_mut().zip(row) {
                    *pd = d.mul_add(*w, *pd);
                }
            }
            std::mem::swap(&mut delta, &mut prev_delta);
        }
        delta
    }

    fn check_trace(&self, trace: &Trace<R>, output_grad: &[R]) {
        assert!(trace.primed, "backward called without a forward trace");
        assert_eq!(
            trace.input.len(),
            self.spec.input_dim,
            "trace does not match network input dim"
        );
        assert_eq!(
            trace.outputs.len(),
            self.params.layers.len(),
            "trace does not match network depth"
        );
        assert_eq!(
            output_grad.len(),
            self.spec.output_dim,
            "output grad dim mismatch"
        );
    }

    pub fn zero_grads(&mut self) {
        self.params.zero_grads();
    }

    /// One Adam step on the accumulated gradients; grads are left untouched
    /// (the caller zeroes them). Fails if the update produced non-finite
    /// parameters.
    pub fn adam_step(&mut self, state: &mut AdamState<R>) -> Result<()> {
        adam::adam_step(&mut self.params, state)
    }

    pub fn polyak_from(&mut self, online: &Mlp<R>, tau: R) {
        polyak_update(&mut self.params, &online.params, tau);
    }
}

#[cfg(test)]
mod tests;
