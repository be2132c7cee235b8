//! Multilayer geometry.
//!
//! A [`Stack`] is an ordered list of lossless dielectric layers between two
//! vacuum half-spaces. Positions are measured in nanometers from the entry
//! face; the stack occupies `[0, total_length]`.

use crate::error::{invalid, Error, Result};

/// Which of the two constituent materials a layer is made of.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LayerKind {
    A,
    B,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Layer {
    refractive_index: f64,
    thickness: f64,
    kind: LayerKind,
}

impl Layer {
    /// `refractive_index` must be finite and ≥ 1, `thickness` (nm) finite and > 0.
    pub fn new(refractive_index: f64, thickness: f64, kind: LayerKind) -> Result<Self> {
        if !(refractive_index.is_finite() && refractive_index >= 1.0) {
            return Err(invalid(
                "refractive_index",
                format!("must be a finite value >= 1, got {refractive_index}"),
            ));
        }
        if !(thickness.is_finite() && thickness > 0.0) {
            return Err(invalid(
                "thickness",
                format!("must be a finite value > 0 nm, got {thickness}"),
            ));
        }
        Ok(Layer {
            refractive_index,
            thickness,
            kind,
        })
    }

    pub fn refractive_index(&self) -> f64 {
        self.refractive_index
    }

    /// Thickness in nanometers.
    pub fn thickness(&self) -> f64 {
        self.thickness
    }

    pub fn kind(&self) -> LayerKind {
        self.kind
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Stack {
    layers: Vec<Layer>,
    /// `starts[i]` is the entry coordinate of layer `i`; one extra entry holds
    /// the total length.
    starts: Vec<f64>,
}

impl Stack {
    pub fn new(layers: Vec<Layer>) -> Self {
        let mut starts = Vec::with_capacity(layers.len() + 1);
        let mut acc = 0.0;
        starts.push(acc);
        for layer in &layers {
            acc += layer.thickness;
            starts.push(acc);
        }
        Stack { layers, starts }
    }

    pub fn empty() -> Self {
        Stack::new(Vec::new())
    }

    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    pub fn len(&self) -> usize {
        self.layers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.layers.is_empty()
    }

    /// Sum of layer thicknesses in nm.
    pub fn total_length(&self) -> f64 {
        *self.starts.last().unwrap_or(&0.0)
    }

    /// Entry coordinate of layer `index`.
    pub fn layer_start(&self, index: usize) -> f64 {
        self.starts[index]
    }

    /// Positions of the internal interfaces (excludes 0 and the exit face).
    pub fn interfaces(&self) -> &[f64] {
        if self.layers.len() < 2 {
            &[]
        } else {
            &self.starts[1..self.layers.len()]
        }
    }

    /// Same layers in opposite order.
    pub fn reversed(&self) -> Stack {
        Stack::new(self.layers.iter().rev().copied().collect())
    }

    /// Copy with every thickness multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Stack> {
        let layers = self
            .layers
            .iter()
            .map(|l| Layer::new(l.refractive_index, l.thickness * factor, l.kind))
            .collect::<Result<Vec<_>>>()?;
        Ok(Stack::new(layers))
    }

    /// Map a global position to `(layer index, local coordinate)`.
    ///
    /// A point on an internal interface belongs to the layer on its right; the
    /// exit face belongs to the last layer.
    pub fn locate(&self, x: f64) -> Result<(usize, f64)> {
        let total = self.total_length();
        if self.layers.is_empty() || !(0.0..=total).contains(&x) {
            return Err(Error::OutOfRange { x, total });
        }
        // number of starts <= x, minus one, is the containing layer
        let idx = self.starts[..self.layers.len()].partition_point(|&s| s <= x) - 1;
        Ok((idx, x - self.starts[idx]))
    }
}

/// `(AB)^periods`: `2 * periods` layers alternating A, B.
pub fn make_periodic_stack(n_a: f64, n_b: f64, a: f64, b: f64, periods: usize) -> Result<Stack> {
    let layer_a = Layer::new(n_a, a, LayerKind::A)?;
    let layer_b = Layer::new(n_b, b, LayerKind::B)?;
    let mut layers = Vec::with_capacity(2 * periods);
    for _ in 0..periods {
        layers.push(layer_a);
        layers.push(layer_b);
    }
    Ok(Stack::new(layers))
}

/// `(AB)^m (BA)^m`, a palindromic layer sequence.
pub fn make_mirror_stack(n_a: f64, n_b: f64, a: f64, b: f64, m: usize) -> Result<Stack> {
    let half = make_periodic_stack(n_a, n_b, a, b, m)?;
    let mut layers = half.layers().to_vec();
    layers.extend(half.layers().iter().rev().copied());
    Ok(Stack::new(layers))
}
