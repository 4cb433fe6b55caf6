//! Forward-mode jets used by the evaluator. Arrays are fixed at [`MAX_DIM`]
//! so evaluation never allocates.

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 8;

pub(crate) trait Jet: Copy {
    const ORDER: u8;

    fn constant(c: f64) -> Self;
    fn coord(x: &[f64], i: usize) -> Self;
    /// Euclidean norm of `x[start..]`. Callers reject the zero norm for order >= 1.
    fn tail_norm(x: &[f64], start: usize, r: f64) -> Self;
    fn value(&self) -> f64;
    fn add(self, o: Self) -> Self;
    fn scale(self, c: f64) -> Self;
    fn mul(self, o: Self) -> Self;
    /// Composition g(self), given g, g' and g'' at `self.value()`.
    fn chain(self, g0: f64, g1: f64, g2: f64) -> Self;
}

impl Jet for f64 {
    const ORDER: u8 = 0;

    #[inline]
    fn constant(c: f64) -> Self {
        c
    }
    #[inline]
    fn coord(x: &[f64], i: usize) -> Self {
        x[i]
    }
    #[inline]
    fn tail_norm(_x: &[f64], _start: usize, r: f64) -> Self {
        r
    }
    #[inline]
    fn value(&self) -> f64 {
        *self
    }
    #[inline]
    fn add(self, o: Self) -> Self {
        self + o
    }
    #[inline]
    fn scale(self, c: f64) -> Self {
        self * c
    }
    #[inline]
    fn mul(self, o: Self) -> Self {
        self * o
    }
    #[inline]
    fn chain(self, g0: f64, _g1: f64, _g2: f64) -> Self {
        g0
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Jet1 {
    pub v: f64,
    pub g: [f64; MAX_DIM],
}

impl Jet for Jet1 {
    const ORDER: u8 = 1;

    #[inline]
    fn constant(c: f64) -> Self {
        Jet1 { v: c, g: [0.0; MAX_DIM] }
    }
    #[inline]
    fn coord(x: &[f64], i: usize) -> Self {
        let mut g = [0.0; MAX_DIM];
        g[i] = 1.0;
        Jet1 { v: x[i], g }
    }
    #[inline]
    fn tail_norm(x: &[f64], start: usize, r: f64) -> Self {
        let mut g = [0.0; MAX_DIM];
        for i in start..x.len() {
            g[i] = x[i] / r;
        }
        Jet1 { v: r, g }
    }
    #[inline]
    fn value(&self) -> f64 {
        self.v
    }
    #[inline]
    fn add(mut self, o: Self) -> Self {
        self.v += o.v;
        for i in 0..MAX_DIM {
            self.g[i] += o.g[i];
        }
        self
    }
    #[inline]
    fn scale(mut self, c: f64) -> Self {
        self.v *= c;
        for gi in &mut self.g {
            *gi *= c;
        }
        self
    }
    #[inline]
    fn mul(self, o: Self) -> Self {
        let mut g = [0.0; MAX_DIM];
        for i in 0..MAX_DIM {
            g[i] = self.v * o.g[i] + o.v * self.g[i];
        }
        Jet1 { v: self.v * o.v, g }
    }
    #[inline]
    fn chain(self, g0: f64, g1: f64, _g2: f64) -> Self {
        let mut g = self.g;
        for gi in &mut g {
            *gi *= g1;
        }
        Jet1 { v: g0, g }
    }
}

#[derive(Clone, Copy, Debug)]
pub(crate) struct Jet2 {
    pub v: f64,
    pub g: [f64; MAX_DIM],
    pub h: [[f64; MAX_DIM]; MAX_DIM],
}

impl Jet for Jet2 {
    const ORDER: u8 = 2;

    fn constant(c: f64) -> Self {
        Jet2 { v: c, g: [0.0; MAX_DIM], h: [[0.0; MAX_DIM]; MAX_DIM] }
    }
    fn coord(x: &[f64], i: usize) -> Self {
        let mut j = Self::constant(x[i]);
        j.g[i] = 1.0;
        j
    }
    fn tail_norm(x: &[f64], start: usize, r: f64) -> Self {
        let mut j = Self::constant(r);
        for i in start..x.len() {
            j.g[i] = x[i] / r;
            for k in start..x.len() {
                let delta = if i == k { 1.0 } else { 0.0 };
                j.h[i][k] = (delta - x[i] * x[k] / (r * r)) / r;
            }
        }
        j
    }
    fn value(&self) -> f64 {
        self.v
    }
    fn add(mut self, o: Self) -> Self {
        self.v += o.v;
        for i in 0..MAX_DIM {
            self.g[i] += o.g[i];
            for k in 0..MAX_DIM {
                self.h[i][k] += o.h[i][k];
            }
        }
        self
    }
    fn scale(mut self, c: f64) -> Self {
        self.v *= c;
        for i in 0..MAX_DIM {
            self.g[i] *= c;
            for k in 0..MAX_DIM {
                self.h[i][k] *= c;
            }
        }
        self
    }
    fn mul(self, o: Self) -> Self {
        let mut out = Self::constant(self.v * o.v);
        for i in 0..MAX_DIM {
            out.g[i] = self.v * o.g[i] + o.v * self.g[i];
            for k in 0..MAX_DIM {
                out.h[i][k] = self.v * o.h[i][k]
                    + o.v * self.h[i][k]
                    + self.g[i] * o.g[k]
                    + o.g[i] * self.g[k];
            }
        }
        out
    }
    fn chain(self, g0: f64, g1: f64, g2: f64) -> Self {
        let mut out = Self::constant(g0);
        for i in 0..MAX_DIM {
            out.g[i] = g1 * self.g[i];
            for k in 0..MAX_DIM {
                out.h[i][k] = g1 * self.h[i][k] + g2 * self.g[i] * self.g[k];
            }
        }
        out
    }
}
